use proptest::prelude::*;

use coopmac::conferencing::macce_from_maccm;
use coopmac::discrete::{
    joint_distribution, maccm_c_pentagon, maccm_nc_pentagon, mutual_information, AuxScheme,
    DmcState, Var,
};
use coopmac::gaussian::{
    macce_c_bounds, maccm_c_bounds, maccm_nc_bounds, sweep_region_multi, Abscissas,
    GaussianMacParams, PowerSplit, Scenario, SweepGrid,
};
use coopmac::geometry::frontier_gap;

fn normalize(v: Vec<f64>, chunk: usize) -> Vec<f64> {
    v.chunks(chunk)
        .flat_map(|r| {
            let s: f64 = r.iter().sum();
            r.iter().map(move |x| x / s).collect::<Vec<_>>()
        })
        .collect()
}

fn weights(n: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.01f64..1.0, n)
}

/// Random channel with two states, binary inputs and a ternary output.
fn channel() -> impl Strategy<Value = DmcState> {
    (weights(2), weights(2 * 2 * 2 * 3)).prop_map(|(ps, t)| {
        DmcState::new(2, 2, 2, 3, normalize(ps, 2), normalize(t, 3)).unwrap()
    })
}

/// Random causal scheme with |U| = |V1| = |V2| = 2 for two states.
fn causal_scheme() -> impl Strategy<Value = AuxScheme> {
    (
        weights(2),
        weights(4),
        weights(4),
        prop::collection::vec(0usize..2, 8),
        prop::collection::vec(0usize..2, 8),
    )
        .prop_map(|(pu, pv1, pv2, f1, f2)| {
            AuxScheme::causal(2, 2, 2, 2, normalize(pu, 2), normalize(pv1, 2), normalize(pv2, 2), f1, f2)
                .unwrap()
        })
}

fn non_causal_scheme() -> impl Strategy<Value = AuxScheme> {
    (
        weights(4),
        weights(8),
        weights(8),
        prop::collection::vec(0usize..2, 8),
        prop::collection::vec(0usize..2, 8),
    )
        .prop_map(|(pu, pv1, pv2, f1, f2)| {
            AuxScheme::non_causal(2, 2, 2, 2, normalize(pu, 2), normalize(pv1, 2), normalize(pv2, 2), f1, f2)
                .unwrap()
        })
}

fn gaussian() -> impl Strategy<Value = GaussianMacParams> {
    (0.0f64..50.0, 0.0f64..50.0, 0.0f64..50.0, 0.1f64..10.0, 0.0f64..4.0, 0.0f64..4.0)
        .prop_map(|(p1, p2, ps, pz, c12, c21)| GaussianMacParams::new(p1, p2, ps, pz, c12, c21).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lifted_causal_scheme_gives_identical_pentagon(ch in channel(), s in causal_scheme()) {
        let c = maccm_c_pentagon(&ch, &s).unwrap();
        let nc = maccm_nc_pentagon(&ch, &s.lift_to_non_causal()).unwrap();
        for (a, b) in c.as_array().into_iter().zip(nc.as_array()) {
            prop_assert!((a - b).abs() <= 1e-12, "{c:?} vs {nc:?}");
        }
    }

    #[test]
    fn discrete_bounds_stay_in_range(ch in channel(), s in non_causal_scheme()) {
        let b = maccm_nc_pentagon(&ch, &s).unwrap();
        let top = (ch.ny as f64).log2() + 1e-12;
        for x in b.as_array() {
            prop_assert!((0.0..=top).contains(&x));
        }
    }

    #[test]
    fn mutual_information_is_bounded_by_entropies(ch in channel(), s in non_causal_scheme()) {
        let j = joint_distribution(&ch, &s).unwrap();
        let pairs = [(Var::V1, Var::Y), (Var::U, Var::S), (Var::X1, Var::Y), (Var::V2, Var::S)];
        for (a, b) in pairs {
            let i = mutual_information(&j, &[a], &[b], &[]).unwrap();
            prop_assert!(i >= 0.0);
            prop_assert!(i <= j.entropy(&[a]).min(j.entropy(&[b])) + 1e-12);
        }
        prop_assert!((j.total_mass() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn causal_caps_never_exceed_non_causal(p in gaussian(), b1 in 0.0f64..=1.0, b2 in 0.0f64..=1.0,
                                           t1 in 0.0f64..=1.0, t2 in 0.0f64..=1.0) {
        let (lo1, hi1) = p.alpha_range(1);
        let (lo2, hi2) = p.alpha_range(2);
        let s = PowerSplit::new(b1, b2, lo1 + t1 * (hi1 - lo1), lo2 + t2 * (hi2 - lo2));
        let c = maccm_c_bounds(&p, &s).unwrap().as_array();
        let nc = maccm_nc_bounds(&p, b1, b2).unwrap().as_array();
        for i in 0..4 {
            prop_assert!(c[i] <= nc[i] + 1e-12);
        }
    }

    #[test]
    fn causal_reduction_is_exact(p in gaussian(), b1 in 0.0f64..=1.0, b2 in 0.0f64..=1.0, t in 0.0f64..=1.0) {
        let (lo, hi) = p.alpha_range(1);
        let s = PowerSplit::new(b1, b2, lo + t * (hi - lo), 0.0);
        let m = maccm_c_bounds(&p, &s).unwrap();
        prop_assert_eq!(macce_from_maccm(&m, p.c12, p.c21), macce_c_bounds(&p, &s).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn larger_conference_never_shrinks_region(p in gaussian(), c in 0.0f64..3.0, extra in 0.0f64..3.0) {
        let grid = SweepGrid { beta: 11, alpha: 7, resolution: 33 };
        let caps = [(c, c), (c + extra, c), (c + extra, c + extra)];
        let fs = sweep_region_multi(Scenario::MacceC, &p, &caps, grid, 0.0, Abscissas::Shared).unwrap();
        for w in fs.windows(2) {
            prop_assert!(frontier_gap(&w[0], &w[1]) <= 1e-12);
        }
    }
}
