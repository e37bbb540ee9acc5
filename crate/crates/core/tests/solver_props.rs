mod common;

use common::*;
use proptest::prelude::*;
use su2su2::hamiltonian::*;
use su2su2::oracle::eig_hermitian;
use su2su2::quartic::solve_quartic;
use su2su2::solver::*;

const TOL: f64 = 1e-9;

fn diagonal_omega_set() -> impl Strategy<Value = CoefficientSet> {
    (unit(), vec3(), vec3(), vec3()).prop_map(|(upsilon, alpha, beta, d)| CoefficientSet {
        upsilon,
        alpha,
        beta,
        omega: [[d[0], 0.0, 0.0], [0.0, d[1], 0.0], [0.0, 0.0, d[2]]],
    })
}

fn ascending(c: &CoefficientSet) -> [f64; 4] {
    let mut v = eig_hermitian(&c.hamiltonian()).unwrap().values;
    v.sort_by(f64::total_cmp);
    v
}

fn gapped(c: &CoefficientSet) -> bool {
    let v = eig_hermitian(&c.hamiltonian()).unwrap().values;
    relative_gap(&v) >= 1e-2
}

proptest! {
    #[test]
    fn states_are_orthogonal_projectors(c in constrained_set()) {
        prop_assume!(gapped(&c));
        let es = solve(&c).unwrap();
        let r = es.check(&c.hamiltonian());
        prop_assert!(r.orthonormality <= TOL, "{r:?}");
        prop_assert!(r.completeness <= TOL, "{r:?}");
        prop_assert!(r.trace <= TOL, "{r:?}");
        for s in &es.states {
            prop_assert!((*s * *s).max_dev(s) <= TOL);
        }
    }

    #[test]
    fn states_commute_with_h(c in constrained_set()) {
        prop_assume!(gapped(&c));
        let h = c.hamiltonian();
        let es = solve(&c).unwrap();
        for s in &es.states {
            prop_assert!(h.commutator(s).max_norm() <= TOL * (1.0 + c.scale()));
        }
    }

    #[test]
    fn closed_form_matches_oracle(c in prop_oneof![constrained_set(), any_set()]) {
        prop_assume!(gapped(&c));
        let es = solve(&c).unwrap();
        let want = ascending(&c);
        let mut got = es.sorted_values();
        got.sort_by(f64::total_cmp);
        for i in 0..4 {
            prop_assert!((got[i] - want[i]).abs() <= TOL * (1.0 + c.scale()), "{:?} vs {:?}", got, want);
        }
    }

    #[test]
    fn secular_quartic_roots_are_the_spectrum(c in any_set()) {
        prop_assume!(gapped(&c));
        let d = derive(&c);
        let [a, b, cc, e, f] = secular_coefficients(&d);
        let mut roots: Vec<f64> = solve_quartic(a, b, cc, e, f).unwrap().iter().map(|z| z.re + c.upsilon).collect();
        roots.sort_by(f64::total_cmp);
        let want = ascending(&c);
        for i in 0..4 {
            prop_assert!((roots[i] - want[i]).abs() <= 1e-7, "{:?} vs {:?}", roots, want);
        }
    }

    #[test]
    fn diagonal_omega_quartic_roots(c in diagonal_omega_set()) {
        prop_assume!(gapped(&c));
        prop_assert_eq!(classify(&c, DEFAULT_TOL).case, Case::DiagonalOmega);
        let es = solve(&c).unwrap();
        prop_assert_eq!(es.method, Method::QuarticPlusOracleVectors);
        let [a, b, cc, e, f] = secular_coefficients(&derive(&c));
        let mut roots: Vec<f64> = solve_quartic(a, b, cc, e, f).unwrap().iter().map(|z| z.re).collect();
        roots.sort_by(f64::total_cmp);
        let mut shifted: Vec<f64> = es.eigenvalues.iter().map(|p| p.value - c.upsilon).collect();
        shifted.sort_by(f64::total_cmp);
        for i in 0..4 {
            prop_assert!((roots[i] - shifted[i]).abs() <= 1e-9, "{:?} vs {:?}", roots, shifted);
        }
    }

    #[test]
    fn separable_spectrum_is_sum(a0 in unit(), a in vec3(), b0 in unit(), b in vec3()) {
        let (f1, f2) = (Su2Factor::new(a0, a), Su2Factor::new(b0, b));
        let es = solve_separable(&f1, &f2);
        let comp = compose_separable(&f1, &f2);
        let oracle = ascending(&comp);
        let mut got = es.sorted_values();
        got.sort_by(f64::total_cmp);
        for i in 0..4 {
            prop_assert!((got[i] - oracle[i]).abs() <= 1e-12);
        }
        for (k, &(m, n)) in LABELS.iter().enumerate() {
            let sg = |x: u8| if x == 1 { -1.0 } else { 1.0 };
            let want = (a0 + sg(m) * f1.norm()) * (b0 + sg(n) * f2.norm());
            prop_assert!((es.eigenvalues[k].value - want).abs() <= 1e-14);
        }
    }
}

proptest! {
    #[test]
    fn rotated_constrained_sets_keep_closed_form_labels(c in constrained_set()) {
        prop_assume!(gapped(&c));
        let a = solve(&c).unwrap();
        let b = solve_entangled(&c).unwrap();
        for k in 0..4 {
            prop_assert_eq!((a.eigenvalues[k].m, a.eigenvalues[k].n), (b.eigenvalues[k].m, b.eigenvalues[k].n));
            prop_assert!((a.eigenvalues[k].value - b.eigenvalues[k].value).abs() <= TOL * (1.0 + c.scale()));
            prop_assert!(a.states[k].max_dev(&b.states[k]) <= 1e-8);
        }
    }
}
