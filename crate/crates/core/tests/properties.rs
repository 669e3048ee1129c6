//! Invariants of the portability metric over random efficiency vectors.

use ppmetric::{pp, EfficiencyKind, EfficiencyRecord, PlatformId, UnsupportedReason};
use proptest::prelude::*;

fn records(values: &[f64]) -> Vec<EfficiencyRecord> {
    values
        .iter()
        .enumerate()
        .map(|(i, &v)| {
            EfficiencyRecord::from_value(
                PlatformId::new(format!("p{i}")).unwrap(),
                EfficiencyKind::Application,
                v,
            )
        })
        .collect()
}

fn value(values: &[f64]) -> f64 {
    pp(&records(values)).unwrap()
}

/// Straight transcription of |H| / Σ 1/e_i.
fn oracle(values: &[f64]) -> f64 {
    let mut denom = 0.0;
    for v in values {
        denom += 1.0 / v;
    }
    values.len() as f64 / denom
}

fn ulps(a: f64, b: f64) -> u64 {
    (a.to_bits() as i64 - b.to_bits() as i64).unsigned_abs()
}

fn efficiencies() -> impl Strategy<Value = Vec<f64>> {
    // (0, 1]: draw from (0, 1) and occasionally hit 1 exactly
    proptest::collection::vec(prop_oneof![9 => 1e-6f64..1.0, 1 => Just(1.0)], 1..=16)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn matches_direct_formula(e in efficiencies()) {
        let got = value(&e);
        let want = oracle(&e);
        prop_assert!(((got - want) / want).abs() <= 1e-12, "{got} vs {want}");
    }

    #[test]
    fn bounded_by_min_max_and_mean(e in efficiencies()) {
        let v = value(&e);
        let min = e.iter().cloned().fold(f64::INFINITY, f64::min);
        let max = e.iter().cloned().fold(0.0, f64::max);
        let mean = e.iter().sum::<f64>() / e.len() as f64;
        prop_assert!(v >= min || ulps(v, min) <= 4);
        prop_assert!(v <= max || ulps(v, max) <= 4);
        prop_assert!(v <= mean || ulps(v, mean) <= 4);
    }

    #[test]
    fn zero_iff_unsupported(e in efficiencies(), hole in any::<prop::sample::Index>(), declared in any::<bool>()) {
        prop_assert!(value(&e) > 0.0);
        let mut recs = records(&e);
        let i = hole.index(recs.len());
        let reason = if declared { UnsupportedReason::Declared } else { UnsupportedReason::NoData };
        recs[i] = EfficiencyRecord::unsupported(recs[i].platform.clone(), EfficiencyKind::Application, reason);
        prop_assert_eq!(pp(&recs).unwrap(), 0.0);
    }

    #[test]
    fn strictly_monotone(e in efficiencies(), which in any::<prop::sample::Index>(), t in 0.01f64..1.0) {
        let i = which.index(e.len());
        prop_assume!(e[i] < 0.99);
        let before = value(&e);
        let mut raised = e.clone();
        // move a fraction t of the way towards 1
        raised[i] = e[i] + t * (1.0 - e[i]);
        prop_assert!(value(&raised) > before);
    }

    #[test]
    fn permutation_invariant(e in efficiencies(), seed in any::<u64>()) {
        let mut shuffled = e.clone();
        let mut s = seed;
        for i in (1..shuffled.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            shuffled.swap(i, (s >> 33) as usize % (i + 1));
        }
        prop_assert!(ulps(value(&e), value(&shuffled)) <= 4);
    }

    #[test]
    fn fixed_point_extension(e in efficiencies()) {
        let v = value(&e);
        let mut extended = e.clone();
        extended.push(v);
        prop_assert!(ulps(value(&extended), v) <= 4);
    }

    #[test]
    fn homogeneous(e in efficiencies(), c in prop_oneof![1e-3f64..=1.0, Just(1.0), Just(0.5)]) {
        let scaled: Vec<f64> = e.iter().map(|x| x * c).collect();
        prop_assert!(ulps(value(&scaled), c * value(&e)) <= 4);
    }

    #[test]
    fn equal_efficiencies(x in 1e-6f64..=1.0, n in 1usize..=16) {
        prop_assert!(ulps(value(&vec![x; n]), x) <= 4);
    }
}

#[test]
fn vanishing_efficiency_drives_towards_zero() {
    let mut last = f64::INFINITY;
    for k in 1..12 {
        let tiny = 10f64.powi(-k);
        let v = value(&[1.0, 0.9, tiny]);
        assert!(v < last);
        last = v;
    }
    assert!(last < 1e-10);
}
