use proptest::prelude::*;

use mixmin::bounds::{geometric_bound_closed_form, trivial_lower_bound};
use mixmin::entropy::{mutual_information, mutual_information_any_p, noise_pmf, MixingScheme};
use mixmin::optimizers::{
    brute_force_optimal, for_each_canonical, greedy_search, DEFAULT_MAX_K_GUARD,
};
use mixmin::relaxation::{numeric_relaxation_solve, perturbation_bound};
use mixmin::schemes::{scheme_mi, BluParams, Method, SchemeName};
use mixmin::ModelParams;

fn h(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        0.0
    } else {
        -p * p.log2() - (1.0 - p) * (1.0 - p).log2()
    }
}

fn tail() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=12, 1..=7)
}

fn mi(alpha: Vec<u64>, p: f64) -> f64 {
    let k = alpha.len() - 1;
    mutual_information(
        &MixingScheme::new(alpha).unwrap(),
        &ModelParams::new(p, k).unwrap(),
    )
    .unwrap()
    .value()
}

/// MI by walking all 2^(K+1) outcomes of (X, Z₁ … Z_K).
fn enumerated_mi(alpha: &[u64], p: f64) -> f64 {
    use std::collections::BTreeMap;
    let mut joint: BTreeMap<u64, [f64; 2]> = BTreeMap::new();
    for bits in 0u32..(1 << alpha.len()) {
        let mut y = 0;
        let mut prob = 1.0;
        for (i, &a) in alpha.iter().enumerate() {
            if bits >> i & 1 == 1 {
                y += a;
                prob *= p;
            } else {
                prob *= 1.0 - p;
            }
        }
        joint.entry(y).or_default()[(bits & 1) as usize] += prob;
    }
    let hc: f64 = joint
        .values()
        .map(|[a, b]| {
            let py = a + b;
            if py <= 0.0 {
                0.0
            } else {
                py * h(a / py)
            }
        })
        .sum();
    h(p) - hc
}

fn with_alpha0(a0: u64, tail: &[u64]) -> Vec<u64> {
    let mut v = vec![a0];
    v.extend_from_slice(tail);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn noise_pmf_is_normalized(t in tail(), p in 0.0f64..=0.5) {
        let alpha = with_alpha0(1, &t);
        let params = ModelParams::new(p, t.len()).unwrap();
        let q = noise_pmf(&MixingScheme::new(alpha).unwrap(), &params).unwrap();
        prop_assert!((q.total_mass() - 1.0).abs() < 1e-12);
        prop_assert!(q.iter().all(|(_, m)| m >= 0.0));
    }

    #[test]
    fn mi_lies_between_zero_and_source_entropy(a0 in 1u64..=4, t in tail(), p in 0.0f64..=0.5) {
        let v = mi(with_alpha0(a0, &t), p);
        prop_assert!((0.0..=h(p) + 1e-12).contains(&v));
    }

    #[test]
    fn mi_ignores_order_of_noise_coefficients(t in tail(), p in 0.01f64..=0.5, seed in any::<u64>()) {
        let mut shuffled = t.clone();
        let n = shuffled.len();
        for i in (1..n).rev() {
            shuffled.swap(i, (seed.rotate_left(i as u32) as usize) % (i + 1));
        }
        let a = mi(with_alpha0(1, &t), p);
        let b = mi(with_alpha0(1, &shuffled), p);
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn mi_is_scale_invariant(a0 in 1u64..=3, t in tail(), c in 2u64..=5, p in 0.01f64..=0.5) {
        let s = MixingScheme::new(with_alpha0(a0, &t)).unwrap();
        let params = ModelParams::new(p, t.len()).unwrap();
        let a = mutual_information(&s, &params).unwrap().value();
        let b = mutual_information(&s.scaled(c).unwrap(), &params).unwrap().value();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn mi_is_symmetric_in_p(a0 in 1u64..=3, t in tail(), p in 0.0f64..=0.5) {
        let s = MixingScheme::new(with_alpha0(a0, &t)).unwrap();
        let a = mutual_information_any_p(&s, p).unwrap().value();
        let b = mutual_information_any_p(&s, 1.0 - p).unwrap().value();
        prop_assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn separated_signal_is_fully_revealed(k in 1usize..=6, p in 0.0f64..=0.5) {
        // α₀ exceeds the largest possible noise sum, so Y determines X.
        let alpha = with_alpha0(k as u64 + 1, &vec![1; k]);
        prop_assert!((mi(alpha, p) - h(p)).abs() < 1e-12);
    }

    #[test]
    fn geometric_bound_holds_for_any_scheme(t in tail(), p in 0.01f64..=0.5) {
        let params = ModelParams::new(p, t.len()).unwrap();
        let bound = geometric_bound_closed_form(&params).unwrap().value();
        prop_assert!(mi(with_alpha0(1, &t), p) >= bound - 1e-9);
    }

    #[test]
    fn geometric_bound_holds_for_larger_signal_coefficient(a0 in 2u64..=3, t in tail(), p in 0.01f64..=0.5) {
        let params = ModelParams::new(p, t.len()).unwrap();
        let bound = geometric_bound_closed_form(&params).unwrap().value();
        prop_assert!(mi(with_alpha0(a0, &t), p) >= bound - 1e-9);
    }

    #[test]
    fn trivial_bound_holds_for_any_scheme(a0 in 1u64..=3, t in tail(), p in 0.01f64..=0.5) {
        let params = ModelParams::new(p, t.len()).unwrap();
        let bound = trivial_lower_bound(&params).unwrap().value();
        prop_assert!(mi(with_alpha0(a0, &t), p) >= bound - 1e-9);
    }

    #[test]
    fn bounds_lie_below_source_entropy(k in 1usize..=30, p in 0.001f64..=0.5) {
        let params = ModelParams::new(p, k).unwrap();
        let g = geometric_bound_closed_form(&params).unwrap().value();
        let t = trivial_lower_bound(&params).unwrap().value();
        prop_assert!(g >= -1e-12 && g <= h(p) + 1e-12);
        prop_assert!(t <= h(p) + 1e-12);
    }

    #[test]
    fn even_tail_reveals_signal(t in prop::collection::vec(1u64..=6, 1..=6), p in 0.0f64..=0.5) {
        // The parity of Y is X.
        let even: Vec<u64> = t.iter().map(|a| 2 * a).collect();
        prop_assert!((mi(with_alpha0(1, &even), p) - h(p)).abs() < 1e-12);
    }

    #[test]
    fn odd_tail_coefficient_can_hide_signal(a in 1u64..=4, p in 0.01f64..=0.5) {
        prop_assert!(mi(vec![1, 2 * a, 2 * a + 1], p) < h(p) - 1e-6);
    }

    #[test]
    fn engine_matches_outcome_enumeration(
        alpha in prop::collection::vec(1u64..=3, 2..=4),
        p in 0.0f64..=0.5,
    ) {
        prop_assert!((mi(alpha.clone(), p) - enumerated_mi(&alpha, p)).abs() < 1e-12);
    }

    #[test]
    fn optimizers_are_ordered(k in 1usize..=6, p in 0.01f64..=0.5) {
        let params = ModelParams::new(p, k).unwrap();
        let best = brute_force_optimal(&params, DEFAULT_MAX_K_GUARD).unwrap().mi.value();
        let greedy = greedy_search(&params).unwrap().mi.value();
        prop_assert!(best <= greedy + 1e-12 && greedy <= h(p) + 1e-12);
        for name in [SchemeName::Uniform, SchemeName::Binary, SchemeName::Linear] {
            prop_assert!(best <= scheme_mi(name, &params, Method::Direct).unwrap().value() + 1e-12);
        }
    }

    #[test]
    fn relaxation_bound_lies_below_canonical_schemes(k in 1usize..=4, p in 0.02f64..=0.5, n in 1usize..=60) {
        let params = ModelParams::new(p, k).unwrap();
        let bound = h(p) + perturbation_bound(&params, n).unwrap();
        let mut worst = f64::INFINITY;
        for_each_canonical(k, |a| worst = worst.min(mi(a.to_vec(), p)));
        prop_assert!(bound <= worst + 1e-8);
    }

    #[test]
    fn larger_signal_coefficient_stays_above_relaxation(
        a0 in 2u64..=3,
        t in prop::collection::vec(1u64..=4, 1..=3),
        p in 0.02f64..=0.5,
    ) {
        let params = ModelParams::new(p, t.len()).unwrap();
        let n = t.iter().sum::<u64>() as usize;
        let relaxed = h(p) + numeric_relaxation_solve(&params, n, 1e-10).unwrap().objective;
        prop_assert!(mi(with_alpha0(a0, &t), p) >= relaxed - 1e-8);
    }

    #[test]
    fn recursion_matches_direct(k in 1usize..=12, u_frac in 0.0f64..=1.0, l_frac in 0.0f64..=1.0, p in 0.01f64..=0.5) {
        let u = (u_frac * k as f64) as usize;
        let l = (l_frac * (k - u) as f64) as usize;
        BluParams::new(k, u, l).unwrap();
        let params = ModelParams::new(p, k).unwrap();
        let name = SchemeName::Blu { u, l };
        let direct = scheme_mi(name, &params, Method::Direct).unwrap().value();
        let fast = scheme_mi(name, &params, Method::Recursion).unwrap().value();
        prop_assert!((direct - fast).abs() < 1e-10, "u={u} l={l}: {direct} vs {fast}");
    }
}
