mod common;

use common::*;
use proptest::prelude::*;
use su2su2::hamiltonian::*;
use su2su2::linalg::*;
use su2su2::verify::cayley_hamilton_deviation;

proptest! {
    #[test]
    fn v_is_quarter_trace_of_square(c in any_set()) {
        let h = traceless(&c);
        let d = derive(&c);
        prop_assert!(((h * h).trace().re / 4.0 - d.v_quad).abs() <= 1e-10);
    }

    #[test]
    fn theta_is_quarter_trace_of_o_squared(c in any_set()) {
        let o = o_operator(&c);
        let d = derive(&c);
        prop_assert!(((o * o).trace().re / 4.0 - d.theta).abs() <= 1e-10);
    }

    #[test]
    fn phi_reduced_form_on_canonical_sets(c in canonical_set()) {
        let d = derive(&c);
        let det_b = d.det_omega_b.unwrap();
        let x = cross(&c.alpha, &c.beta);
        let reduced = 4.0 * ((dot(&c.alpha, &c.beta) - det_b).powi(2) + dot(&x, &x));
        prop_assert!((d.phi - reduced).abs() <= 1e-10);
    }

    #[test]
    fn cayley_hamilton_on_constrained_sets(c in constrained_set()) {
        prop_assert!(cayley_hamilton_deviation(&c) <= 1e-9);
    }

    #[test]
    fn odd_traces_vanish_on_constrained_sets(c in constrained_set()) {
        let d = derive(&c);
        let h = traceless(&c);
        let h3 = h * h * h;
        let h5 = h3 * h * h;
        let tol = 1e-9 * (1.0 + d.v_quad.powf(2.5));
        prop_assert!(h.trace().norm() <= tol);
        prop_assert!(h3.trace().norm() <= tol);
        prop_assert!(h5.trace().norm() <= tol);
    }

    #[test]
    fn classify_scale_equivariant(c in prop_oneof![any_set(), canonical_set()]) {
        let base = classify(&c, DEFAULT_TOL).case;
        for s in [1e-6, 1.0, 1e6] {
            prop_assert_eq!(classify(&c.scaled(s), DEFAULT_TOL).case, base);
        }
    }

    #[test]
    fn canonical_sets_classify_as_constrained(c in canonical_set()) {
        prop_assume!(c.alpha[2].abs() > 1e-3 && norm3(&c.beta) > 1e-3);
        prop_assume!(c.beta[0].abs() + c.beta[1].abs() > 1e-3);
        let case = classify(&c, DEFAULT_TOL).case;
        prop_assert!(matches!(case, Case::EntangledConstrained(_)), "{:?}", case);
    }

    #[test]
    fn frame_reduce_is_orthogonal_change(c in constrained_set()) {
        let red = frame_reduce(&c, DEFAULT_TOL).unwrap();
        prop_assert!((derive(&red.set).v_quad - derive(&c).v_quad).abs() <= 1e-10);
        let back = c.rotated(&red.r1, &red.r2);
        let dev = (back.hamiltonian() - red.set.hamiltonian()).max_norm();
        prop_assert!(dev <= 1e-10);
    }
}
