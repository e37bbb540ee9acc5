mod common;

use common::*;
use proptest::prelude::*;
use su2su2::entanglement::*;
use su2su2::hamiltonian::CoefficientSet;
use su2su2::linalg::*;
use su2su2::oracle::{eig_hermitian, wootters_concurrence};
use su2su2::solver::{solve_entangled, LABELS};

const TOL: f64 = 1e-7;

fn gapped(c: &CoefficientSet) -> bool {
    relative_gap(&eig_hermitian(&c.hamiltonian()).unwrap().values) >= 1e-2
}

// solve() picks the closed form only in the canonical frame; solve_entangled
// keeps the (m, n) labels for rotated sets too.
proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn routes_agree(c in constrained_set()) {
        prop_assume!(gapped(&c));
        let es = solve_entangled(&c).unwrap();
        for (m, n) in LABELS {
            let rho = es.state(m, n);
            let closed = eigenstate_concurrence_closed_form(&c, m, n).unwrap();
            let pure = pure_concurrence(rho).unwrap();
            let w = wootters_concurrence(rho).unwrap();
            prop_assert!((closed - pure).abs() <= TOL, "{m}{n}: {closed} {pure}");
            prop_assert!((closed - w).abs() <= TOL, "{m}{n}: {closed} {w}");
        }
    }

    #[test]
    fn reduced_bloch_lengths_equal(c in constrained_set()) {
        prop_assume!(gapped(&c));
        let es = solve_entangled(&c).unwrap();
        for rho in &es.states {
            let bp = bloch_vectors(rho);
            prop_assert!((norm3(&bp.a_bloch) - norm3(&bp.b_bloch)).abs() <= 1e-9);
        }
    }

    #[test]
    fn bloch_vectors_rotate_covariantly(c in canonical_set(), r1 in rotation(), r2 in rotation()) {
        prop_assume!(gapped(&c));
        let rotated = c.rotated(&r1, &r2);
        let es = solve_entangled(&rotated).unwrap();
        for (m, n) in LABELS {
            let Ok(bp) = eigenstate_bloch_closed_form(&c, m, n) else { continue };
            let got = bloch_vectors(es.state(m, n));
            prop_assert!(norm3(&sub3(&got.a_bloch, &mat3_vec(&r1, &bp.a_bloch))) <= 1e-9);
            prop_assert!(norm3(&sub3(&got.b_bloch, &mat3_vec(&r2, &bp.b_bloch))) <= 1e-9);
        }
    }

    #[test]
    fn concurrence_invariant_under_local_rotations(c in canonical_set(), r1 in rotation(), r2 in rotation()) {
        prop_assume!(gapped(&c));
        let rotated = c.rotated(&r1, &r2);
        for (m, n) in LABELS {
            let a = eigenstate_concurrence_closed_form(&c, m, n).unwrap();
            let b = eigenstate_concurrence_closed_form(&rotated, m, n).unwrap();
            prop_assert!((a - b).abs() <= 1e-9, "{m}{n}: {a} {b}");
        }
    }
}
