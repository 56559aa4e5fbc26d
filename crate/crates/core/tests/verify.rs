use std::f64::consts::PI;
use std::sync::Arc;

use stgrf::specfun::{quadrature, QuadratureKind, SphereTimePoint};
use stgrf::spectra::{
    family_polyproduct, normalize_unit_variance, CoefficientMatrix, PowerSpectrum,
    SchoenbergFunction, SchoenbergFunctionSet, VarianceConvention,
};
use stgrf::verify::{
    cholesky_oracle_check, empirical_covariance, holder_ladder, holder_moment_check,
    schoenberg_roundtrip, MonteCarlo,
};

fn pt(b1: f64, b2: f64, t: f64) -> SphereTimePoint {
    SphereTimePoint::new(b1, b2, t).unwrap()
}

fn single_mode(k: usize, j: usize) -> PowerSpectrum {
    let mut v = vec![0.0; (k + 1) * (j + 1)];
    v[k * (j + 1) + j] = 1.0;
    PowerSpectrum::explicit(CoefficientMatrix::new(k, j, v).unwrap())
}

#[test]
fn antipodal_pair_of_first_degree_mode_is_anticorrelated() {
    let s = single_mode(0, 1);
    let pairs = [
        (pt(0.3, 0.0, 0.5), pt(PI - 0.3, PI, 0.5)),
        (pt(1.0, 2.0, 0.0), pt(1.0, 2.0, 0.0)),
    ];
    let mc = MonteCarlo::new(1, 0, 2000, 17);
    let r = empirical_covariance(&s, &pairs, &mc, 4.0).unwrap();
    assert_eq!(r.statistics[0].reference, -1.0);
    assert_eq!(r.statistics[1].reference, 1.0);
    assert!(r.pass(), "{}", r.to_key_value());
}

#[test]
fn too_few_replications_rejected() {
    let s = single_mode(0, 0);
    let mc = MonteCarlo::new(0, 0, 50, 1);
    assert!(empirical_covariance(&s, &[(pt(0.1, 0.0, 0.0), pt(0.2, 0.0, 0.0))], &mc, 4.0).is_err());
}

#[test]
fn covariance_of_unit_variance_family() {
    let s = normalize_unit_variance(
        &family_polyproduct(1.0, 3.0, 2.0).unwrap(),
        VarianceConvention::mean_field(),
    )
    .unwrap()
    .spectrum;
    let pairs = [
        (pt(0.5, 0.0, 0.0), pt(0.5, 0.0, 0.0)),
        (pt(0.5, 0.0, 0.0), pt(0.9, 0.4, 0.3)),
        (pt(2.0, 5.0, 1.0), pt(1.0, 1.0, 0.2)),
    ];
    let mc = MonteCarlo::new(8, 8, 3000, 5);
    let r = empirical_covariance(&s, &pairs, &mc, 4.0).unwrap();
    assert!(r.pass(), "{}", r.to_csv());
    // same seed, same report
    assert_eq!(r, empirical_covariance(&s, &pairs, &mc, 4.0).unwrap());
}

#[test]
fn dense_oracle_on_two_points() {
    let s = single_mode(1, 2);
    let points = [pt(0.4, 0.1, 0.0), pt(1.3, 2.0, 0.7)];
    let mc = MonteCarlo::new(2, 1, 3000, 9);
    let r = cholesky_oracle_check(&s, &points, &mc, 4.0).unwrap();
    assert!(r.pass(), "{}", r.to_key_value());
    assert!(cholesky_oracle_check(&s, &vec![points[0]; 61], &mc, 4.0).is_err());
}

#[test]
fn constant_field_has_zero_increments() {
    let s = single_mode(0, 0);
    let ladder = holder_ladder(1.0, 0.0, &[0.5, 0.25]).unwrap();
    let mc = MonteCarlo::new(4, 2, 200, 3);
    let r = holder_moment_check(&s, 1, 1.0, &ladder, &mc, 4.0, 5.0, 0.3).unwrap();
    assert!(r.statistics.iter().all(|x| x.estimate == 0.0));
    assert!(r.pass());
}

#[test]
fn second_moment_of_increments_matches_kernel() {
    let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
    let ladder = holder_ladder(1.0, 0.0, &[0.5, 0.25, 0.125]).unwrap();
    let mc = MonteCarlo::new(10, 10, 2000, 8);
    let r = holder_moment_check(&s, 2, 1.0, &ladder, &mc, 4.0, 5.0, 0.3).unwrap();
    assert_eq!(r.tally("ratio.").1, 3);
    assert!(r.tally("moment.").0 >= 2, "{}", r.to_csv());
    assert!(r.tally("ratio.").0 >= 2, "{}", r.to_csv());
}

#[test]
fn roundtrip_of_known_schoenberg_functions() {
    let functions: Vec<SchoenbergFunction> = (0..=5)
        .map(|j| {
            let scale = 1.0 / (1.0 + j as f64).powi(2);
            SchoenbergFunction::Analytic(Arc::new(move |u: f64| {
                scale * (-(1.0 + j as f64) * u * u).exp()
            }))
        })
        .collect();
    let set = SchoenbergFunctionSet::new(2, functions).unwrap();
    let rule = quadrature(QuadratureKind::GaussLegendre, 32).unwrap();
    let r = schoenberg_roundtrip(&set, 5, &rule, &[0.0, 0.3, 1.7]).unwrap();
    assert_eq!(r.statistics.len(), 18);
    assert!(r.pass(), "{}", r.to_key_value());
}
