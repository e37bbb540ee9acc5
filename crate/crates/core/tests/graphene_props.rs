use proptest::prelude::*;
use su2su2::graphene::*;
use su2su2::hamiltonian::derive;
use su2su2::oracle::eig_hermitian;
use su2su2::pauli::fano_compose;

fn params() -> impl Strategy<Value = GrapheneParams> {
    (0.1f64..2.0, -1.0f64..1.0, 0.0f64..2.0, -1.0f64..1.0, -2.0f64..2.0, 0.5f64..3.0)
        .prop_map(|(t, t3, tperp, m, lambda_bias, lattice)| GrapheneParams { t, t3, tperp, m, lambda_bias, lattice })
}

fn kpoint() -> impl Strategy<Value = KPoint> {
    (-6.0f64..6.0, -6.0f64..6.0).prop_map(|(kx, ky)| KPoint::new(kx, ky))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn matrix_route_equals_pauli_route(p in params(), k in kpoint()) {
        let a = build_ab_hamiltonian(&p, k);
        let b = fano_compose(&map_to_su2su2(&p, k));
        prop_assert!(a.max_dev(&b) <= 1e-12);
    }

    #[test]
    fn derived_quantities(p in params(), k in kpoint()) {
        let d = derive(&map_to_su2su2(&p, k));
        let g2 = structure_factor(&p, k).norm_sqr();
        prop_assert!((graphene_v(&p, k) - d.v_quad).abs() <= 1e-10 * (1.0 + d.v_quad));
        prop_assert!((graphene_phi(&p, k) - d.phi).abs() <= 1e-9 * (1.0 + d.phi));
        prop_assert!((d.det_omega_b.unwrap() - (p.tperp * p.tperp - p.t3 * p.t3 * g2) / 4.0).abs() <= 1e-12);
    }

    #[test]
    fn bands_are_particle_hole_symmetric(p in params(), k in kpoint()) {
        let bp = band_point(&p, k);
        let mut v = eig_hermitian(&build_ab_hamiltonian(&p, k)).unwrap().values;
        v.sort_by(f64::total_cmp);
        let want = [-bp.e2, -bp.e1, bp.e1, bp.e2];
        for i in 0..4 {
            prop_assert!((v[i] - want[i]).abs() <= 1e-9, "{v:?} {want:?}");
        }
    }

    #[test]
    fn periodic_and_conjugate(p in params(), k in kpoint(), i in -2i32..3, j in -2i32..3) {
        let [g1, g2] = reciprocal_vectors(p.lattice);
        let (fi, fj) = (i as f64, j as f64);
        let shifted = KPoint::new(k.kx + fi * g1[0] + fj * g2[0], k.ky + fi * g1[1] + fj * g2[1]);
        let g = structure_factor(&p, k);
        prop_assert!((structure_factor(&p, shifted) - g).norm() <= 1e-12);
        prop_assert!((structure_factor(&p, KPoint::new(-k.kx, -k.ky)) - g.conj()).norm() <= 1e-12);
        let (a, b) = (band_point(&p, k), band_point(&p, KPoint::new(-k.kx, -k.ky)));
        prop_assert!((a.e1 - b.e1).abs() <= 1e-9 && (a.e2 - b.e2).abs() <= 1e-9);
    }
}
