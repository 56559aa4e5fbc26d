use std::f64::consts::PI;

use stgrf::simulator::{
    draw_coefficients, read_binary, simulate, synthesize, synthesize_serial, write_binary,
    write_csv, write_provenance, ColatitudeRule, SphereTimeGrid,
};
use stgrf::specfun::sph_harm_real;
use stgrf::spectra::{family_polyproduct, family_polysum, CoefficientMatrix, PowerSpectrum};
use stgrf::temporal::{BasisMode, TemporalBasis};

/// Direct triple loop over `(k, j, m)` with the harmonic evaluated from
/// scratch at every term.
fn naive_value(
    draw: &stgrf::simulator::CoefficientDraw,
    basis: &TemporalBasis,
    b1: f64,
    b2: f64,
    t: f64,
) -> f64 {
    let mut z = 0.0;
    for k in 0..=draw.k_max() {
        let (tc, ts) = basis.eval_unchecked(k, t);
        for j in 0..=draw.j_max() {
            let a = draw.spectrum().coeff(k, j);
            let cj = (4.0 * PI / (2 * j + 1) as f64).sqrt();
            for m in 0..=j as i64 {
                let yc = sph_harm_real(j, m, b1, b2).unwrap();
                let mu = m as usize;
                let mut term = draw.a1(k, j, mu) * tc * yc;
                if k >= 1 {
                    term += draw.a2(k, j, mu) * ts * yc;
                }
                if m >= 1 {
                    let ys = sph_harm_real(j, -m, b1, b2).unwrap();
                    term += draw.b1(k, j, mu) * tc * ys;
                    if k >= 1 {
                        term += draw.b2(k, j, mu) * ts * ys;
                    }
                }
                z += a.sqrt() * cj * term;
            }
        }
    }
    z
}

fn small_grid() -> SphereTimeGrid {
    SphereTimeGrid::lat_lon(6, 9, ColatitudeRule::Equiangular, vec![0.0, 0.4, 1.0], 1.0).unwrap()
}

#[test]
fn synthesis_matches_naive_triple_loop() {
    let s = family_polysum(1.0, 2.5, 2.0, 1.5).unwrap();
    let draw = draw_coefficients(&s, 12, 7, 99).unwrap();
    let grid = small_grid();
    for mode in [BasisMode::QuarterWave, BasisMode::Orthonormal] {
        let r = synthesize(&draw, &grid, mode).unwrap();
        let basis = TemporalBasis::new(mode, grid.horizon()).unwrap();
        for (ti, &t) in grid.times().iter().enumerate() {
            for i in 0..grid.n_points() {
                let (b1, b2) = grid.point(i);
                let want = naive_value(&draw, &basis, b1, b2, t);
                let got = r.value(i, ti);
                assert!(
                    (got - want).abs() < 1e-12 * want.abs().max(1.0),
                    "{got} vs {want}"
                );
            }
        }
    }
}

#[test]
fn point_list_layout_agrees_with_raster() {
    let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
    let draw = draw_coefficients(&s, 15, 5, 3).unwrap();
    let raster = small_grid();
    let points =
        SphereTimeGrid::points(raster.spatial_points(), raster.times().to_vec(), 1.0).unwrap();
    let a = synthesize(&draw, &raster, BasisMode::QuarterWave).unwrap();
    let b = synthesize(&draw, &points, BasisMode::QuarterWave).unwrap();
    for (x, y) in a.values.iter().zip(&b.values) {
        assert!((x - y).abs() < 1e-13, "{x} vs {y}");
    }
}

#[test]
fn degree_zero_spectrum_gives_constant_field() {
    let m = CoefficientMatrix::new(0, 0, vec![2.0]).unwrap();
    let s = PowerSpectrum::explicit(m);
    let grid = SphereTimeGrid::lat_lon(11, 17, ColatitudeRule::Gauss, vec![0.0, 0.5], 1.0).unwrap();
    let r = simulate(&s, &grid, 20, 3, 5, BasisMode::QuarterWave).unwrap();
    for t in 0..2 {
        let slice = r.at_time(t);
        for v in slice {
            assert!((v - slice[0]).abs() < 1e-12);
        }
    }
}

#[test]
fn values_scale_linearly_with_coefficient_scale() {
    let s = family_polyproduct(0.7, 3.0, 2.0).unwrap();
    let grid = small_grid();
    let a = simulate(&s, &grid, 20, 10, 11, BasisMode::QuarterWave).unwrap();
    let b = simulate(
        &s.scaled(4.0).unwrap(),
        &grid,
        20,
        10,
        11,
        BasisMode::QuarterWave,
    )
    .unwrap();
    for (x, y) in a.values.iter().zip(&b.values) {
        assert_eq!(2.0 * x, *y);
    }
}

#[test]
fn parallel_equals_serial_bitwise() {
    let s = family_polysum(1.0, 2.0, 2.0, 1.5).unwrap();
    let draw = draw_coefficients(&s, 30, 12, 2024).unwrap();
    let raster =
        SphereTimeGrid::lat_lon(20, 32, ColatitudeRule::Gauss, vec![0.1, 0.9], 1.0).unwrap();
    let points = SphereTimeGrid::points(
        (0..301)
            .map(|i| {
                (
                    0.01 + 3.1 * i as f64 / 301.0,
                    (0.37 * i as f64).rem_euclid(2.0 * PI),
                )
            })
            .collect(),
        vec![0.0, 0.25, 1.0],
        1.0,
    )
    .unwrap();
    for grid in [raster, points] {
        let p = synthesize(&draw, &grid, BasisMode::QuarterWave).unwrap();
        let q = synthesize_serial(&draw, &grid, BasisMode::QuarterWave).unwrap();
        let bits = |v: &[f64]| v.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
        assert_eq!(bits(&p.values), bits(&q.values));
    }
}

#[test]
fn same_inputs_same_values() {
    let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
    let grid = small_grid();
    let a = simulate(&s, &grid, 10, 10, 1, BasisMode::QuarterWave).unwrap();
    let b = simulate(&s, &grid, 10, 10, 1, BasisMode::QuarterWave).unwrap();
    let c = simulate(&s, &grid, 10, 10, 2, BasisMode::QuarterWave).unwrap();
    assert_eq!(a.values, b.values);
    assert_ne!(a.values, c.values);
    assert!(a.values.iter().all(|v| v.is_finite()));
    assert!(a.provenance.duration_seconds >= 0.0);
}

#[test]
fn exports_round_trip() {
    let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
    let grid = small_grid();
    let r = simulate(&s, &grid, 8, 4, 42, BasisMode::Orthonormal).unwrap();

    let mut csv = Vec::new();
    write_csv(&r, &mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "colatitude_rad,longitude_rad,time,value"
    );
    let parsed: Vec<f64> = lines
        .map(|l| l.rsplit(',').next().unwrap().parse().unwrap())
        .collect();
    assert_eq!(parsed, r.values);

    let mut prov = Vec::new();
    write_provenance(&r, &mut prov).unwrap();
    let prov = String::from_utf8(prov).unwrap();
    for key in [
        "seed = 42",
        "J = 8",
        "K = 4",
        "basis_mode = orthonormal",
        "duration_seconds = ",
        "[spectrum]",
        "family = coef",
    ] {
        assert!(prov.contains(key), "missing {key} in\n{prov}");
    }

    let mut bin = Vec::new();
    write_binary(&r, &mut bin).unwrap();
    assert_eq!(bin.len(), 64 + 8 * r.values.len());
    let back = read_binary(&mut bin.as_slice()).unwrap();
    assert_eq!((back.n_times, back.n_lat, back.n_lon), (3, 6, 9));
    assert_eq!((back.j_max, back.k_max, back.seed), (8, 4, 42));
    assert_eq!(back.values, r.values);
    bin[0] = b'X';
    assert!(read_binary(&mut bin.as_slice()).is_err());
}
