//! Property tests for the invariants the rest of the crate leans on.

use std::f64::consts::PI;

use proptest::prelude::*;
use stgrf::bounds::{error_bound, truncation_p, truncation_q};
use stgrf::kernel::{kernel_eval, KernelModel};
use stgrf::specfun::{
    cos_angle, gegenbauer_c, geodesic_distance, hermite_h, legendre_p, quadrature, sph_harm_real,
    QuadratureKind, SphereTimePoint,
};
use stgrf::spectra::{family_polyproduct, family_polysum, SpectrumDocument};
use stgrf::temporal::TemporalBasis;

fn point() -> impl Strategy<Value = SphereTimePoint> {
    (0.0..PI, 0.0..2.0 * PI, -3.0..3.0f64)
        .prop_map(|(b1, b2, t)| SphereTimePoint::new(b1, b2, t).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn addition_formula(j in 0usize..80, p in point(), q in point()) {
        let lhs: f64 = (-(j as i64)..=j as i64)
            .map(|m| {
                sph_harm_real(j, m, p.colatitude(), p.longitude()).unwrap()
                    * sph_harm_real(j, m, q.colatitude(), q.longitude()).unwrap()
            })
            .sum();
        let rhs = (2 * j + 1) as f64 / (4.0 * PI) * legendre_p(j, cos_angle(&p, &q)).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (2 * j + 1) as f64, "{lhs} vs {rhs}");
    }

    #[test]
    fn legendre_and_gegenbauer_are_bounded(j in 0usize..200, d in 2usize..6, x in -1.0..1.0f64) {
        prop_assert!(legendre_p(j, x).unwrap().abs() <= 1.0 + 1e-12);
        prop_assert!(gegenbauer_c(j, d, x).unwrap().abs() <= 1.0 + 1e-12);
        prop_assert!((gegenbauer_c(j, d, 1.0).unwrap() - 1.0).abs() <= 1e-12);
    }

    #[test]
    fn gegenbauer_on_the_two_sphere_is_legendre(j in 0usize..150, x in -1.0..1.0f64) {
        let a = gegenbauer_c(j, 2, x).unwrap();
        let b = legendre_p(j, x).unwrap();
        prop_assert!((a - b).abs() <= 1e-13, "{a} vs {b}");
    }

    #[test]
    fn hermite_pairs_are_orthonormal(a in 0usize..40, b in 0usize..40) {
        let gh = quadrature(QuadratureKind::GaussHermite, 48).unwrap();
        let g = gh.integrate(|u| hermite_h(a, u) * hermite_h(b, u));
        let want = if a == b { 1.0 } else { 0.0 };
        prop_assert!((g - want).abs() <= 1e-10, "<H{a},H{b}> = {g}");
    }

    #[test]
    fn distance_obeys_triangle_inequality(p in point(), q in point(), r in point()) {
        let pq = geodesic_distance(&p, &q);
        let qr = geodesic_distance(&q, &r);
        let pr = geodesic_distance(&p, &r);
        prop_assert!(pr.theta <= pq.theta + qr.theta + 1e-12);
        prop_assert!(pr.rho <= pq.rho + qr.rho + 1e-12);
        prop_assert_eq!(pq.rho, geodesic_distance(&q, &p).rho);
        prop_assert_eq!(geodesic_distance(&p, &p).rho, 0.0);
    }

    #[test]
    fn kernel_is_dominated_by_its_variance(
        nu1 in 1.6..5.0f64, nu2 in 1.6..5.0f64, theta in 0.0..PI, u in -2.0..2.0f64
    ) {
        let s = family_polyproduct(1.0, nu1, nu2).unwrap();
        let m = KernelModel::angular(s, TemporalBasis::quarter_wave(1.0).unwrap(), 12, 12).unwrap();
        let c0 = kernel_eval(&m, 0.0, 0.0);
        prop_assert!(kernel_eval(&m, theta, u).abs() <= c0 * (1.0 + 1e-12));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn bounds_shrink_with_truncation(
        nu1 in 1.5..4.0f64, nu2 in 1.5..4.0f64, j in 5usize..60, k in 5usize..60, dj in 1usize..40, dk in 1usize..40
    ) {
        let s = family_polyproduct(1.0, nu1, nu2).unwrap();
        let p = truncation_p(&s, j, k).unwrap();
        let p2 = truncation_p(&s, j + dj, k + dk).unwrap();
        prop_assert!(p2.hi <= p.lo * (1.0 + 1e-9), "{p2:?} vs {p:?}");
        let q = truncation_q(&s, j, k).unwrap();
        let q2 = truncation_q(&s, j + dj, k).unwrap();
        prop_assert!(q2.value <= q.value * (1.0 + 1e-9));
        let b = error_bound(&s, j, k, 8.2).unwrap();
        prop_assert!(b.exceedance_probability > 0.0 && b.exceedance_probability < 1.0);
        prop_assert!(b.bound_sq >= p.lo);
    }

    #[test]
    fn spectrum_documents_round_trip(
        nu1 in 1.1..6.0f64, nu2 in 1.1..6.0f64, xi in 0.01..10.0f64, tau in 1.5..3.0f64
    ) {
        for s in [family_polyproduct(xi, nu1, nu2).unwrap(), family_polysum(xi, nu1, nu2, tau).unwrap()] {
            let doc = SpectrumDocument::new(s.clone());
            let back = SpectrumDocument::from_text(&doc.to_text()).unwrap();
            for (k, j) in [(0, 0), (1, 3), (7, 2), (40, 40)] {
                prop_assert_eq!(back.spectrum.coeff(k, j), s.coeff(k, j));
            }
        }
    }
}
