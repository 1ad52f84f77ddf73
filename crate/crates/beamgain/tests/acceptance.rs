//! Acceptance suite: every analytic claim the library is built on, checked
//! at its stated tolerance on full parameter grids. One test per criterion;
//! each prints a `PASS` line with its runtime (run with `--nocapture` to see
//! them), and the timed criteria assert their runtime budgets.

use std::time::Instant;

use beamgain::beams::ArrayConfig;
use beamgain::dist::{
    antenna_selection_cdf, beam_selection_cdf, bound_q, bound_q_quantile, selection_quantile,
    theta0_bounds, GainCdf, RicianParams,
};
use beamgain::mc::{ks_distance, SimConfig};
use beamgain::perf::{
    ergodic_capacity, ergodic_capacity_approx, expected_gain, expected_gain_approx,
    growth_diagnostics, ExtremeAngle,
};
use beamgain::specfun::{log_ncx2_cdf_ddelta, NoncentralChiSq2};

fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (la, lb) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (la + (lb - la) * i as f64 / (n - 1) as f64).exp())
        .collect()
}

fn lin_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
        .collect()
}

fn pass(id: u32, name: &str, started: Instant) -> f64 {
    let secs = started.elapsed().as_secs_f64();
    println!("acceptance {id:02} {name}: PASS ({secs:.2} s)");
    secs
}

#[test]
fn criterion_01_special_function_cross_oracle() {
    let start = Instant::now();
    let xs = log_grid(1e-3, 1e3, 50);
    let deltas = lin_grid(0.0, 200.0, 50);
    for &d in &deltas {
        let dist = NoncentralChiSq2::new(d).unwrap();
        for &x in &xs {
            let mixture = dist.cdf_mixture(x).unwrap();
            let marcum = dist.cdf_via_marcum(x).unwrap();
            assert!(
                (mixture - marcum).abs() <= 1e-10,
                "x={x} delta={d}: {mixture} vs {marcum}"
            );
        }
    }
    let secs = pass(1, "special-function cross-oracle", start);
    assert!(secs < 5.0, "runtime budget exceeded: {secs:.2} s");
}

#[test]
fn criterion_02_log_cdf_monotone_concave_in_noncentrality() {
    let start = Instant::now();
    let xs = log_grid(1e-3, 1e3, 50);
    let deltas = lin_grid(0.0, 200.0, 50);
    let spacing = deltas[1] - deltas[0];
    let ln_f = |x: f64, d: f64| {
        NoncentralChiSq2::new(d)
            .unwrap()
            .cdf_mixture(x)
            .unwrap()
            .ln()
    };
    for &x in &xs {
        for (i, &d) in deltas.iter().enumerate() {
            // strictly negative derivative everywhere on the grid
            let deriv = log_ncx2_cdf_ddelta(x, d).unwrap();
            assert!(deriv < 0.0, "x={x} delta={d}: derivative {deriv}");

            // derivative matches the central finite difference
            if i > 0 {
                let h = 1e-5;
                let fd = (ln_f(x, d + h) - ln_f(x, d - h)) / (2.0 * h);
                assert!(
                    (deriv - fd).abs() <= 1e-6,
                    "x={x} delta={d}: {deriv} vs fd {fd}"
                );
            }

            // concavity: second central difference at the grid spacing
            if i > 0 && i + 1 < deltas.len() {
                let dd = (ln_f(x, d + spacing) - 2.0 * ln_f(x, d) + ln_f(x, d - spacing))
                    / (spacing * spacing);
                assert!(dd <= 1e-12, "x={x} delta={d}: second difference {dd}");
            }
        }
    }
    pass(
        2,
        "log-CDF monotone and concave in the noncentrality",
        start,
    );
}

#[test]
fn criterion_03_gain_stochastically_increasing_in_azimuth() {
    let start = Instant::now();
    let xs = log_grid(1e-2, 1e2, 50);
    for &k in &[0.1, 1.0, 10.0] {
        let rician = RicianParams::new(k).unwrap();
        for &m in &[2usize, 4, 8, 16] {
            let cfg = ArrayConfig::new(m, 0.5).unwrap();
            let nu = cfg.first_beam_direction();
            let thetas = lin_grid(0.0, nu, 11);

            // CDF strictly decreasing in theta, tolerance 1e-12
            let mut strict_seen = false;
            for &x in &xs {
                let fs: Vec<f64> = thetas
                    .iter()
                    .map(|&t| beam_selection_cdf(x, t, &cfg, &rician).unwrap())
                    .collect();
                for w in fs.windows(2) {
                    assert!(
                        w[0] - w[1] >= -1e-12,
                        "K={k} M={m} x={x}: {} then {}",
                        w[0],
                        w[1]
                    );
                }
                if fs[0] > 0.05 && fs[0] < 0.95 {
                    strict_seen = true;
                    for w in fs.windows(2) {
                        assert!(w[0] > w[1], "K={k} M={m} x={x}: not strict");
                    }
                }
            }
            assert!(
                strict_seen,
                "K={k} M={m}: no mid-range x exercised strictness"
            );

            // majorization diagnostics: every proper partial sum strictly
            // decreasing in theta
            for w in thetas.windows(2) {
                let s1 = cfg.sorted_partial_sums(w[0]).unwrap();
                let s2 = cfg.sorted_partial_sums(w[1]).unwrap();
                for j in 0..m - 1 {
                    assert!(
                        s1[j] > s2[j] - 1e-12,
                        "K={k} M={m} theta {} -> {}: partial sum {j}",
                        w[0],
                        w[1]
                    );
                }
                assert!(
                    (0..m - 1).any(|j| s1[j] > s2[j]),
                    "K={k} M={m}: partial sums not strictly ordered"
                );
            }
        }
    }
    let secs = pass(3, "stochastic ordering in azimuth", start);
    assert!(secs < 60.0, "runtime budget exceeded: {secs:.2} s");
}

#[test]
fn criterion_04_beam_selection_dominates_antenna_selection() {
    let start = Instant::now();
    let xs = log_grid(1e-2, 1e2, 50);
    for &k in &[0.1, 1.0, 10.0] {
        let rician = RicianParams::new(k).unwrap();
        for &m in &[2usize, 4, 8, 16] {
            let cfg = ArrayConfig::new(m, 0.5).unwrap();
            let nu = cfg.first_beam_direction();
            let mut thetas = lin_grid(0.0, nu, 11);
            for f in [0.13, 0.37, 0.52, 0.77, 0.94] {
                thetas.push(nu * f);
            }
            for &theta in &thetas {
                for &x in &xs {
                    let g = antenna_selection_cdf(x, &cfg, &rician).unwrap();
                    let f = beam_selection_cdf(x, theta, &cfg, &rician).unwrap();
                    assert!(
                        g - f >= -1e-12,
                        "K={k} M={m} theta={theta} x={x}: {g} < {f}"
                    );
                }
            }
        }
    }
    pass(4, "beam vs antenna selection dominance", start);
}

#[test]
fn criterion_05_bound_sandwiches_and_tightness() {
    let start = Instant::now();
    for &k in &[0.1, 1.0, 10.0] {
        let rician = RicianParams::new(k).unwrap();

        // pointwise orderings on the grids
        for &m in &[4usize, 8, 16] {
            let cfg = ArrayConfig::new(m, 0.5).unwrap();
            let nu = cfg.first_beam_direction();
            for &x in &log_grid(1e-2, 1e2, 50) {
                let f_nu = beam_selection_cdf(x, nu, &cfg, &rician).unwrap();
                let q_m = bound_q(x, m as f64, &rician).unwrap();
                assert!(f_nu <= q_m + 1e-12, "K={k} M={m} x={x}");
                let f_0 = beam_selection_cdf(x, 0.0, &cfg, &rician).unwrap();
                let (upper, lower) = theta0_bounds(x, &cfg, &rician).unwrap();
                assert!(
                    upper >= f_0 - 1e-12 && f_0 >= lower - 1e-12,
                    "K={k} M={m} x={x}: {upper} {f_0} {lower}"
                );
            }
        }

        // tightness trend: sup-norm gaps shrink from M=8 to M=64
        let sup_gap_nu = |m: usize| -> f64 {
            let cfg = ArrayConfig::new(m, 0.5).unwrap();
            let nu = cfg.first_beam_direction();
            let lo = bound_q_quantile(1e-3, m as f64, &rician).unwrap();
            let hi = bound_q_quantile(1.0 - 1e-3, m as f64, &rician).unwrap();
            lin_grid(lo, hi, 200)
                .iter()
                .map(|&x| {
                    (beam_selection_cdf(x, nu, &cfg, &rician).unwrap()
                        - bound_q(x, m as f64, &rician).unwrap())
                    .abs()
                })
                .fold(0.0, f64::max)
        };
        let sup_gap_zero = |m: usize| -> f64 {
            let cfg = ArrayConfig::new(m, 0.5).unwrap();
            let (a, _) = cfg.majorizing_vector();
            let lo = bound_q_quantile((1e-3f64).sqrt(), a, &rician).unwrap();
            let hi = bound_q_quantile((1.0 - 1e-3f64).sqrt(), a, &rician).unwrap();
            lin_grid(lo, hi, 200)
                .iter()
                .map(|&x| {
                    (beam_selection_cdf(x, 0.0, &cfg, &rician).unwrap()
                        - theta0_bounds(x, &cfg, &rician).unwrap().0)
                        .abs()
                })
                .fold(0.0, f64::max)
        };
        // at K = 10 the beam-direction gap is already below f64 resolution
        // for M = 8 (W^{M-1} is 1 - O(e^{-80}) across the transition), so the
        // shrink comparison carries a 1e-12 noise floor
        let (g8, g64) = (sup_gap_nu(8), sup_gap_nu(64));
        assert!(
            g64 < g8.max(1e-12),
            "K={k}: beam-direction gap did not shrink ({g8} -> {g64})"
        );
        let (g8, g64) = (sup_gap_zero(8), sup_gap_zero(64));
        assert!(
            g64 < g8.max(1e-12),
            "K={k}: between-beams gap did not shrink ({g8} -> {g64})"
        );
    }
    pass(5, "stochastic bound sandwiches and tightness", start);
}

#[test]
fn criterion_06_bound_quantile_tightness() {
    let start = Instant::now();
    let rician = RicianParams::new(1.0).unwrap();
    for &p in &[0.1, 0.5, 0.9] {
        let gaps = |m: usize| -> (f64, f64) {
            let cfg = ArrayConfig::new(m, 0.5).unwrap();
            let nu = cfg.first_beam_direction();
            let (a, _) = cfg.majorizing_vector();
            let gap_nu = (selection_quantile(p, nu, &cfg, &rician).unwrap()
                - bound_q_quantile(p, m as f64, &rician).unwrap())
            .abs();
            let gap_zero = (selection_quantile(p, 0.0, &cfg, &rician).unwrap()
                - bound_q_quantile(p.sqrt(), a, &rician).unwrap())
            .abs();
            (gap_nu, gap_zero)
        };
        let (nu8, zero8) = gaps(8);
        let (nu64, zero64) = gaps(64);
        assert!(
            nu64 < nu8,
            "p={p}: beam-direction quantile gap {nu64} !< {nu8}"
        );
        assert!(
            zero64 < zero8,
            "p={p}: between-beams quantile gap {zero64} !< {zero8}"
        );
    }
    pass(6, "bound quantile tightness", start);
}

#[test]
fn criterion_07_expected_gain_reproduction() {
    let start = Instant::now();
    let rician = RicianParams::new(1.0).unwrap();
    let cfg = ArrayConfig::new(64, 0.5).unwrap();
    let nu = cfg.first_beam_direction();

    // theta = nu: quadrature vs (KM+1)/(K+1), relative gap below 2%
    let exact = expected_gain(nu, &cfg, &rician).unwrap();
    let formula = expected_gain_approx(ExtremeAngle::BeamDirection, &cfg, &rician)
        .unwrap()
        .approx;
    let rel = (exact - formula).abs() / formula;
    assert!(rel < 0.02, "relative gap {rel}");

    // theta = 0: the quadrature mean of Q_{a_M}^2 lies inside the brackets
    let (a, _) = cfg.majorizing_vector();
    let q2 = GainCdf::BoundQ { rician, gamma: a };
    let hint = q2.quantile(1.0 - 1e-9).unwrap();
    let mean = {
        // int (1 - Q^2) dx with the same tail rule as the perf layer
        let cdf = |x: f64| bound_q(x, a, &rician).map(|q| q * q);
        let mut hi = hint.max(1.0);
        while 1.0 - cdf(hi).unwrap() >= 1e-12 {
            hi *= 1.25;
        }
        beamgain_quad(&|x| Ok(1.0 - cdf(x)?), 0.0, hi)
    };
    let (lo, hi) = expected_gain_approx(ExtremeAngle::Zero, &cfg, &rician)
        .unwrap()
        .brackets
        .unwrap();
    assert!(lo <= mean && mean <= hi, "{lo} <= {mean} <= {hi} violated");
    pass(7, "expected-gain reproduction", start);
}

// Simpson integrator local to the acceptance suite so criterion 7 does not
// depend on the perf layer's internal quadrature for its own verdict.
fn beamgain_quad(f: &dyn Fn(f64) -> beamgain::Result<f64>, a: f64, b: f64) -> f64 {
    let n = 200_000;
    let h = (b - a) / n as f64;
    let mut s = f(a).unwrap() + f(b).unwrap();
    for i in 1..n {
        s += f(a + i as f64 * h).unwrap() * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    s * h / 3.0
}

#[test]
fn criterion_08_ergodic_capacity_figure() {
    let start = Instant::now();
    let rician = RicianParams::new(1.0).unwrap(); // K = 0 dB
    let rho = 10.0f64.powf(0.5); // 5 dB
    let ms = [2usize, 4, 8, 16, 32, 64];
    let mut rows = Vec::new();
    for &m in &ms {
        let cfg = ArrayConfig::new(m, 0.5).unwrap();
        let nu = cfg.first_beam_direction();
        let exact_nu = ergodic_capacity(nu, &cfg, &rician, rho).unwrap();
        let approx_nu =
            ergodic_capacity_approx(ExtremeAngle::BeamDirection, &cfg, &rician, rho).unwrap();
        let exact_0 = ergodic_capacity(0.0, &cfg, &rician, rho).unwrap();
        let approx_0 = ergodic_capacity_approx(ExtremeAngle::Zero, &cfg, &rician, rho).unwrap();
        assert!(
            exact_nu >= exact_0 - 1e-9,
            "M={m}: capacity at nu below capacity at 0"
        );
        rows.push((m, (exact_nu - approx_nu).abs(), (exact_0 - approx_0).abs()));
    }
    for w in rows.windows(2) {
        let (m0, gap_nu0, gap_00) = w[0];
        let (m1, gap_nu1, gap_01) = w[1];
        if m0 >= 8 {
            assert!(
                gap_nu1 <= gap_nu0 + 1e-9,
                "beam-direction gap grew from M={m0} to M={m1}: {gap_nu0} -> {gap_nu1}"
            );
            assert!(
                gap_01 <= gap_00 + 1e-9,
                "between-beams gap grew from M={m0} to M={m1}: {gap_00} -> {gap_01}"
            );
        }
    }
    let secs = pass(8, "ergodic capacity versus M convergence", start);
    assert!(secs < 120.0, "runtime budget exceeded: {secs:.2} s");
}

#[test]
fn criterion_09_monte_carlo_validation() {
    let start = Instant::now();
    let cfg = ArrayConfig::new(4, 0.5).unwrap();
    let rician = RicianParams::new(1.0).unwrap();
    let nu = cfg.first_beam_direction();
    for &theta in &[0.0, nu] {
        let sim = SimConfig::new(1_000_000, 42, theta, cfg, rician).unwrap();
        let (beam, antenna) = sim.run().unwrap();
        let f = GainCdf::BeamSelection { cfg, rician, theta };
        let g = GainCdf::AntennaSelection { cfg, rician };
        let ks_beam = ks_distance(&beam, &f).unwrap();
        let ks_antenna = ks_distance(&antenna, &g).unwrap();
        assert!(ks_beam <= 0.002, "theta={theta}: beam KS {ks_beam}");
        assert!(
            ks_antenna <= 0.002,
            "theta={theta}: antenna KS {ks_antenna}"
        );

        // repeat run is bit-identical
        let (beam2, antenna2) = sim.run().unwrap();
        assert_eq!(beam.samples(), beam2.samples());
        assert_eq!(antenna.samples(), antenna2.samples());
    }
    let secs = pass(9, "Monte Carlo validation", start);
    assert!(secs < 60.0, "runtime budget exceeded: {secs:.2} s");
}

#[test]
fn criterion_10_growth_diagnostics() {
    let start = Instant::now();

    // K = 1: beam ratio approaches K/(K+1) = 0.5
    let k1 = RicianParams::new(1.0).unwrap();
    let rows = growth_diagnostics(&[8, 16, 32, 64, 128], 0.5, &k1, 2.0).unwrap();
    let last = rows.last().unwrap();
    assert_eq!(last.m, 128);
    assert!(
        (last.beam_mean_nu_over_m - 0.5).abs() / 0.5 < 0.05,
        "beam ratio at M=128: {}",
        last.beam_mean_nu_over_m
    );
    // antenna E / ln M bounded, increments shrinking (the noncentral tail
    // carries a sqrt(ln M) correction, so the ratio converges slowly)
    let ratios: Vec<f64> = rows.iter().map(|r| r.antenna_mean_over_ln_m).collect();
    for &r in &ratios {
        assert!(r > 0.0 && r < 5.0, "antenna ratio unbounded: {r}");
    }
    for w in ratios.windows(3) {
        assert!(
            (w[2] - w[1]).abs() <= (w[1] - w[0]).abs() + 1e-9,
            "antenna ratio not stabilizing: {ratios:?}"
        );
    }

    // K = 0: antenna selection means are harmonic numbers, to 1e-9, and the
    // ratio column settles (spread under 5% across the last three rows)
    let k0 = RicianParams::new(0.0).unwrap();
    let rows = growth_diagnostics(&[2, 4, 8, 16, 32, 64, 128], 0.5, &k0, 2.0).unwrap();
    for row in &rows {
        let harmonic: f64 = (1..=row.m).map(|i| 1.0 / i as f64).sum();
        assert!(
            (row.antenna_mean - harmonic).abs() <= 1e-9,
            "M={}: {} vs H_M={harmonic}",
            row.m,
            row.antenna_mean
        );
    }
    let tail: Vec<f64> = rows[rows.len() - 3..]
        .iter()
        .map(|r| r.antenna_mean_over_ln_m)
        .collect();
    let spread = (tail.iter().cloned().fold(f64::MIN, f64::max)
        - tail.iter().cloned().fold(f64::MAX, f64::min))
        / tail[2];
    assert!(
        spread < 0.05,
        "Rayleigh antenna ratio not settling: {tail:?}"
    );
    pass(10, "growth diagnostics", start);
}
