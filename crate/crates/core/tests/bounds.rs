use std::f64::consts::PI;

use proptest::prelude::*;
use stgrf::bounds::{error_bound, truncation_p, truncation_q};
use stgrf::series::hurwitz_zeta;
use stgrf::spectra::{family_polyproduct, family_polysum};

/// `sum_{n = a}^{b - 1} (1 + n)^{-s}` from the small terms up.
fn partial(s: f64, a: usize, b: usize) -> f64 {
    (a..b).rev().map(|n| (1.0 + n as f64).powf(-s)).sum()
}

#[test]
fn product_family_p_against_million_term_sums() {
    let (nu1, nu2, n) = (3.0, 2.0, 1_000_000);
    let s = family_polyproduct(1.0, nu1, nu2).unwrap();
    let (jj, kk) = (50, 50);
    // sum_{m >= n} (1 + m)^{-s} <= int_{n-1}^{inf} (1 + x)^{-s} dx
    let rem = |e: f64| (n as f64).powf(1.0 - e) / (e - 1.0);
    let j_tail = partial(nu1, jj + 1, n);
    let k_all = partial(nu2, 0, n);
    let j_head = partial(nu1, 0, jj + 1);
    let k_tail = partial(nu2, kk + 1, n);
    let lo = 4.0 * PI * (j_tail * k_all + j_head * k_tail);
    let hi = 4.0 * PI * ((j_tail + rem(nu1)) * (k_all + rem(nu2)) + j_head * (k_tail + rem(nu2)));
    let p = truncation_p(&s, jj, kk).unwrap();
    assert!(p.lo <= hi && lo <= p.hi, "{p:?} vs [{lo}, {hi}]");
    assert!(hi - lo < 1e-4 * p.value);
}

#[test]
fn product_family_q_against_direct_sums() {
    let s = family_polyproduct(1.0, 3.0, 2.0).unwrap();
    let n = 20_000;
    let mut direct = 0.0;
    for j in 0..n {
        let cj2 = 4.0 * PI / (2 * j + 1) as f64;
        let aj = (1.0 + j as f64).powi(-6);
        let ks = if j > 10 {
            partial(4.0, 0, n)
        } else {
            partial(4.0, 11, n)
        };
        direct += cj2 * aj * ks;
    }
    let q = truncation_q(&s, 10, 10).unwrap();
    let want = 4.0 * PI * direct.sqrt();
    assert!(
        (q.value - want).abs() < 1e-9 * want,
        "{} vs {want}",
        q.value
    );
}

#[test]
#[allow(clippy::needless_range_loop)] // indexes both axes of the grid
fn bounds_shrink_with_truncation() {
    let s = family_polyproduct(0.5, 3.0, 2.0).unwrap();
    let levels = [25usize, 50, 100];
    let b: Vec<Vec<_>> = levels
        .iter()
        .map(|&j| {
            levels
                .iter()
                .map(|&k| error_bound(&s, j, k, 8.2).unwrap())
                .collect()
        })
        .collect();
    for a in 0..3 {
        for c in 0..2 {
            assert!(
                b[a][c + 1].p.value <= b[a][c].p.value && b[a][c + 1].q.value <= b[a][c].q.value
            );
            assert!(
                b[c + 1][a].p.value <= b[c][a].p.value && b[c + 1][a].q.value <= b[c][a].q.value
            );
            assert!(b[a][c + 1].bound <= b[a][c].bound && b[c + 1][a].bound <= b[c][a].bound);
        }
    }
}

/// Brute-force sum of `w_j a^power` over the tail regions inside the box
/// `j, k < n`, and a rigorous bound on what lies outside.
///
/// With `r = power tau / (1/nu1 + 1/nu2)`, AM-GM gives
/// `(1 + j^nu1 + k^nu2)^{-power tau} <= m(j)^{-r} m(k)^{-r}` where
/// `m(i) = max(i, 1)`, so the outside mass is at most
/// `w_max * 2 (1 + zeta(r)) zeta(r, n)`.
fn sum_family_oracle(
    nu1: f64,
    nu2: f64,
    tau: f64,
    jj: usize,
    kk: usize,
    power: i32,
    n: usize,
) -> (f64, f64) {
    let mut inside = 0.0;
    for k in 0..n {
        for j in 0..n {
            if j > jj || k > kk {
                let a = (1.0 + (j as f64).powf(nu1) + (k as f64).powf(nu2)).powf(-tau);
                let w = if power == 2 {
                    4.0 * PI / (2 * j + 1) as f64
                } else {
                    1.0
                };
                inside += w * a.powi(power);
            }
        }
    }
    let r = power as f64 * tau / (1.0 / nu1 + 1.0 / nu2);
    let w_max = if power == 2 { 4.0 * PI } else { 1.0 };
    let z = 1.0 + hurwitz_zeta(r, 1.0).unwrap();
    let outside = w_max * 2.0 * z * hurwitz_zeta(r, n as f64).unwrap();
    (inside, outside)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn sum_family_brackets_are_sound(
        nu1 in 1.5f64..4.0,
        nu2 in 1.5f64..4.0,
        excess in 1.8f64..3.5,
        jj in 0usize..40,
        kk in 0usize..40,
    ) {
        // r = tau / (1/nu1 + 1/nu2) = excess > 1
        let tau = excess * (1.0 / nu1 + 1.0 / nu2);
        prop_assume!(tau > 1.0);
        let s = family_polysum(1.0, nu1, nu2, tau).unwrap();
        let p = truncation_p(&s, jj, kk).unwrap().scale(1.0 / (4.0 * PI));
        let (inside, outside) = sum_family_oracle(nu1, nu2, tau, jj, kk, 1, 1200);
        let tol = 1e-12 * inside;
        prop_assert!(inside <= p.hi + tol, "P: {p:?} vs partial {inside}");
        prop_assert!(p.lo <= inside + outside + tol, "P: {p:?} vs partial {inside} + {outside}");

        let q = truncation_q(&s, jj, kk).unwrap().scale(1.0 / (4.0 * PI));
        let (q_in, q_out) = sum_family_oracle(nu1, nu2, tau, jj, kk, 2, 400);
        let (qlo, qhi) = (q.lo * q.lo, q.hi * q.hi);
        prop_assert!(q_in <= qhi * (1.0 + 1e-12), "Q^2: [{qlo}, {qhi}] vs {q_in}");
        prop_assert!(qlo <= (q_in + q_out) * (1.0 + 1e-12), "Q^2: [{qlo}, {qhi}] vs {q_in} + {q_out}");
    }
}
