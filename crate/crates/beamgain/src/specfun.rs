//! Scalar special functions underpinning the gain distributions: modified
//! Bessel I0, the first-order Marcum Q-function with its analytic bounds,
//! central and noncentral chi-square CDFs and quantiles, the Gaussian CDF and
//! inverse, and the derivative series of the log noncentral chi-square CDF.
//!
//! The noncentral chi-square CDF (two degrees of freedom, noncentrality
//! `delta`) is evaluated two independent ways: as a Poisson-weighted mixture
//! of even-degree central chi-square CDFs, and as `1 - Psi(sqrt(delta),
//! sqrt(x))` through the Marcum Q series. Both series are summed outward from
//! the Poisson mode until the untouched probability mass drops below
//! `POISSON_TAIL_MASS`, then extended on the dominant-tail side until the
//! remaining terms are relatively negligible.

use crate::error::{Error, Result};

/// Untouched Poisson mass at which mixture windows are truncated.
const POISSON_TAIL_MASS: f64 = 1e-15;

/// Relative cutoff for extending a mixture walk past its mass window.
const REL_TERM_CUTOFF: f64 = 1e-17;

const SQRT_2PI: f64 = 2.5066282746310002;

// ── Compensated summation ────────────────────────────────────────────────────

/// Kahan accumulator for the long positive-term series below.
#[derive(Clone, Copy, Default)]
struct Kahan {
    sum: f64,
    carry: f64,
}

impl Kahan {
    fn from(v: f64) -> Self {
        Kahan { sum: v, carry: 0.0 }
    }

    #[inline]
    fn add(&mut self, v: f64) {
        let y = v - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }

    #[inline]
    fn sum(&self) -> f64 {
        self.sum
    }
}

// ── Factorials and the Poisson pmf ───────────────────────────────────────────

/// ln(k!) exact from u128 factorials up to 34, Stirling series beyond.
fn ln_factorial(k: u64) -> f64 {
    if k <= 34 {
        let mut f: u128 = 1;
        for j in 2..=k as u128 {
            f *= j;
        }
        (f as f64).ln()
    } else {
        let kf = k as f64;
        0.5 * (2.0 * std::f64::consts::PI * kf).ln() + kf * (kf.ln() - 1.0) + stirlerr_series(kf)
    }
}

/// Stirling series tail 1/(12k) - 1/(360k^3) + 1/(1260k^5) - 1/(1680k^7).
#[inline]
fn stirlerr_series(kf: f64) -> f64 {
    let k2 = kf * kf;
    (1.0 / 12.0 - (1.0 / 360.0 - (1.0 / 1260.0 - 1.0 / (1680.0 * k2)) / k2) / k2) / kf
}

/// stirlerr(k) = ln k! - [0.5 ln(2 pi k) + k ln k - k].
fn stirlerr(k: u64) -> f64 {
    let kf = k as f64;
    if k <= 34 {
        ln_factorial(k) - 0.5 * (2.0 * std::f64::consts::PI * kf).ln() - kf * (kf.ln() - 1.0)
    } else {
        stirlerr_series(kf)
    }
}

/// Binomial deviance bd0(k, lam) = k ln(k/lam) + lam - k, evaluated by the
/// expansion in (k - lam)/(k + lam) when the arguments are close (Loader's
/// saddle-point method, as in R's dpois).
fn bd0(k: f64, lam: f64) -> f64 {
    if (k - lam).abs() < 0.1 * (k + lam) {
        let v = (k - lam) / (k + lam);
        let mut s = (k - lam) * v;
        let mut ej = 2.0 * k * v;
        let v2 = v * v;
        let mut j = 1u32;
        loop {
            ej *= v2;
            let s1 = s + ej / (2 * j + 1) as f64;
            if s1 == s {
                return s1;
            }
            s = s1;
            j += 1;
        }
    } else {
        k * (k / lam).ln() + lam - k
    }
}

/// Poisson pmf with relative accuracy near machine precision across the whole
/// range (saddle-point form rather than exp(-lam + k ln lam - ln k!)).
fn poisson_pmf(k: u64, lam: f64) -> f64 {
    if lam == 0.0 {
        return if k == 0 { 1.0 } else { 0.0 };
    }
    if k == 0 {
        return (-lam).exp();
    }
    let kf = k as f64;
    let ln_p = -stirlerr(k) - bd0(kf, lam) - 0.5 * (2.0 * std::f64::consts::PI * kf).ln();
    if ln_p < -745.0 {
        0.0
    } else {
        ln_p.exp()
    }
}

/// Left tail P(N <= k), summed downward from k. Intended for k below the
/// mode, where the terms decrease monotonically and the sum is dominated by
/// its first summands (so recurrence drift cannot touch the result).
fn poisson_left_tail(k: u64, lam: f64) -> f64 {
    let mut j = k;
    let mut t = poisson_pmf(j, lam);
    let mut acc = Kahan::from(t);
    while j > 0 && t > 0.0 {
        t *= j as f64 / lam;
        j -= 1;
        acc.add(t);
        if t <= acc.sum() * 1e-18 {
            break;
        }
    }
    acc.sum().min(1.0)
}

/// Right tail P(N > k), summed upward from k + 1. Intended for k at or above
/// the mode, where the terms decrease monotonically.
fn poisson_right_tail(k: u64, lam: f64) -> f64 {
    let mut j = k + 1;
    let mut t = poisson_pmf(j, lam);
    let mut acc = Kahan::from(t);
    loop {
        j += 1;
        t *= lam / j as f64;
        acc.add(t);
        if t == 0.0 || t <= acc.sum() * 1e-18 {
            break;
        }
    }
    acc.sum().min(1.0)
}

/// P(N > k) for N ~ Poisson(lam): the smaller-side tail is summed directly
/// (monotone terms, no pass through the mode), the other side by complement.
fn poisson_sf(k: u64, lam: f64) -> f64 {
    if lam <= 0.0 {
        return 0.0;
    }
    if (k + 1) as f64 <= lam {
        (1.0 - poisson_left_tail(k, lam)).max(0.0)
    } else {
        poisson_right_tail(k, lam)
    }
}

/// P(N <= k) for N ~ Poisson(lam); complement policy as in [`poisson_sf`].
fn poisson_cdf(k: u64, lam: f64) -> f64 {
    if lam <= 0.0 {
        return 1.0;
    }
    if (k + 1) as f64 <= lam {
        poisson_left_tail(k, lam)
    } else {
        (1.0 - poisson_right_tail(k, lam)).max(0.0)
    }
}

/// Index window `[lo, hi]` around the mode of Poisson(lam) whose complement
/// carries mass below `POISSON_TAIL_MASS`. Grown one index at a time toward
/// whichever side holds the larger next term.
fn poisson_window(lam: f64) -> (u64, u64) {
    let mode = lam.floor() as u64;
    let p_mode = poisson_pmf(mode, lam);
    let (mut lo, mut hi) = (mode, mode);
    let (mut p_lo, mut p_hi) = (p_mode, p_mode);
    let mut mass = Kahan::from(p_mode);
    while 1.0 - mass.sum() >= POISSON_TAIL_MASS {
        let next_lo = if lo > 0 { p_lo * lo as f64 / lam } else { 0.0 };
        let next_hi = p_hi * lam / (hi + 1) as f64;
        if next_lo == 0.0 && next_hi == 0.0 {
            break;
        }
        if lo > 0 && next_lo >= next_hi {
            lo -= 1;
            p_lo = next_lo;
            mass.add(next_lo);
        } else {
            hi += 1;
            p_hi = next_hi;
            mass.add(next_hi);
        }
    }
    (lo, hi)
}

// ── Modified Bessel function I0 ──────────────────────────────────────────────

/// Modified Bessel function of the first kind, order zero, by its power
/// series `sum_k (x/2)^{2k} / (k!)^2`. All terms are positive, so the series
/// is stable for every finite argument; the value overflows to infinity for
/// x above roughly 713.
pub fn bessel_i0(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::invalid(format!(
            "bessel_i0 requires finite x >= 0, got {x}"
        )));
    }
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut acc = Kahan::from(1.0);
    for k in 1..40_000u64 {
        term *= q / ((k * k) as f64);
        acc.add(term);
        if !term.is_finite() || term <= acc.sum() * 1e-17 {
            break;
        }
    }
    Ok(acc.sum())
}

/// ln I0(x): series for moderate x, asymptotic expansion
/// `x - ln(2 pi x)/2 + ln(1 + 1/(8x) + 9/(2!(8x)^2) + ...)` beyond.
fn ln_bessel_i0(x: f64) -> f64 {
    if x < 500.0 {
        bessel_i0(x).expect("validated argument").ln()
    } else {
        let mut mu = 1.0f64;
        let mut s = 0.0f64;
        for k in 1..=10u32 {
            let odd = (2 * k - 1) as f64;
            mu *= odd * odd / (8.0 * x * k as f64);
            s += mu;
        }
        x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + s.ln_1p()
    }
}

// ── Marcum Q-function ────────────────────────────────────────────────────────

fn validate_nonneg(v: f64, name: &str) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::invalid(format!(
            "{name} must be finite and nonnegative, got {v}"
        )));
    }
    Ok(())
}

/// Series core shared by `marcum_q`: Psi(a, b) as the Poisson(a^2/2) mixture
/// of Poisson(b^2/2) left tails, walked upward so the running tail updates
/// are pure additions.
fn marcum_series(a: f64, b: f64) -> f64 {
    let la = 0.5 * a * a;
    let lb = 0.5 * b * b;
    if lb == 0.0 {
        return 1.0;
    }
    if la == 0.0 {
        return (-lb).exp();
    }
    let (lo, hi) = poisson_window(la);
    let mut d = Kahan::from(poisson_cdf(lo, lb));
    let mut acc = Kahan::default();
    let mut i = lo;
    loop {
        let w = poisson_pmf(i, la);
        acc.add(w * d.sum());
        if i >= hi {
            // above the window the weights decay geometrically and the inner
            // tails are bounded by one
            let rho = la / (i as f64 + 1.0);
            if w == 0.0 || (rho < 0.99 && w * rho / (1.0 - rho) <= acc.sum() * REL_TERM_CUTOFF) {
                break;
            }
        }
        i += 1;
        d.add(poisson_pmf(i, lb));
    }
    acc.sum().min(1.0)
}

/// First-order Marcum Q-function `Psi(a, b)`, the survival function at `b` of
/// a Rice variable with parameter `a`.
pub fn marcum_q(a: f64, b: f64) -> Result<f64> {
    validate_nonneg(a, "marcum_q a")?;
    validate_nonneg(b, "marcum_q b")?;
    Ok(marcum_series(a, b))
}

/// Analytic bracket for the Marcum Q-function: for a > b the lower bound
/// `1 - a/(a-b) exp(-(a-b)^2/2)` applies (upper side 1); for a < b the upper
/// bound `b/(b-a) exp(-(b-a)^2/2)` applies (lower side 0). The bounds are
/// undefined at a = b.
pub fn marcum_q_bounds(a: f64, b: f64) -> Result<(f64, f64)> {
    validate_nonneg(a, "marcum_q_bounds a")?;
    validate_nonneg(b, "marcum_q_bounds b")?;
    if a == b {
        return Err(Error::invalid(
            "marcum_q_bounds is unavailable at a = b".to_string(),
        ));
    }
    if a > b {
        let lower = 1.0 - a / (a - b) * (-0.5 * (a - b) * (a - b)).exp();
        Ok((lower.max(0.0), 1.0))
    } else {
        let upper = b / (b - a) * (-0.5 * (b - a) * (b - a)).exp();
        Ok((0.0, upper.min(1.0)))
    }
}

// ── Chi-square CDFs ──────────────────────────────────────────────────────────

/// Central chi-square CDF for even degrees of freedom q:
/// `1 - exp(-x/2) sum_{k=0}^{q/2-1} (x/2)^k / k!`, evaluated as the
/// equivalent Poisson survival sum with compensated summation.
pub fn chi2_cdf_even(x: f64, q: u32) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::invalid(format!(
            "chi2_cdf_even requires finite x >= 0, got {x}"
        )));
    }
    if q < 2 || !q.is_multiple_of(2) {
        return Err(Error::invalid(format!(
            "chi2_cdf_even requires even q >= 2, got {q}"
        )));
    }
    Ok(poisson_sf(u64::from(q / 2) - 1, 0.5 * x))
}

// ── Noncentral chi-square with two degrees of freedom ────────────────────────

/// Mixture walk shared by the CDF and the log-CDF derivative: returns
/// (sum_i w_i c_i, sum_i w_i t_{i+1}) where w_i is the Poisson(delta/2) pmf,
/// c_i = F_chi2(x | 2 + 2i) and t_j is the Poisson(x/2) pmf. The walk runs
/// downward from the top of the mass window so tail updates are additions,
/// and keeps descending below the window while the geometric bound on the
/// untouched terms is still relatively significant.
fn ncx2_mixture_walk(x: f64, delta: f64) -> (f64, f64) {
    let lam = 0.5 * delta;
    let xh = 0.5 * x;
    if x <= 0.0 {
        return (0.0, 0.0);
    }
    if lam == 0.0 {
        return (poisson_sf(0, xh), poisson_pmf(1, xh));
    }
    let (lo, hi) = poisson_window(lam);
    let mut c = Kahan::from(poisson_sf(hi, xh));
    let mut t_next = poisson_pmf(hi + 1, xh);
    let mut den = Kahan::default();
    let mut num = Kahan::default();
    let mut i = hi;
    loop {
        let w = poisson_pmf(i, lam);
        den.add(w * c.sum());
        num.add(w * t_next);
        if i == 0 {
            break;
        }
        if i <= lo {
            let r = i as f64 / lam;
            if r < 0.99 && w * r / (1.0 - r) <= den.sum() * REL_TERM_CUTOFF {
                break;
            }
        }
        t_next = poisson_pmf(i, xh);
        c.add(t_next);
        i -= 1;
    }
    (den.sum().min(1.0), num.sum())
}

/// Noncentral chi-square distribution with two degrees of freedom and
/// noncentrality parameter `delta >= 0`. At `delta = 0` it reduces to the
/// central chi-square distribution with two degrees of freedom.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NoncentralChiSq2 {
    delta: f64,
}

impl NoncentralChiSq2 {
    pub fn new(delta: f64) -> Result<Self> {
        if !delta.is_finite() || delta < 0.0 {
            return Err(Error::invalid(format!(
                "noncentrality must be finite and nonnegative, got {delta}"
            )));
        }
        Ok(NoncentralChiSq2 { delta })
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// CDF via the Poisson-weighted mixture of even-degree central
    /// chi-square CDFs.
    pub fn cdf_mixture(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::invalid(format!(
                "ncx2 cdf requires finite x >= 0, got {x}"
            )));
        }
        Ok(ncx2_mixture_walk(x, self.delta).0)
    }

    /// CDF via the Marcum Q identity `1 - Psi(sqrt(delta), sqrt(x))`.
    pub fn cdf_via_marcum(&self, x: f64) -> Result<f64> {
        if !x.is_finite() || x < 0.0 {
            return Err(Error::invalid(format!(
                "ncx2 cdf requires finite x >= 0, got {x}"
            )));
        }
        Ok((1.0 - marcum_series(self.delta.sqrt(), x.sqrt())).max(0.0))
    }

    /// CDF evaluated both ways; the two routes must agree within 1e-10 or the
    /// evaluation is reported as a numerical failure. Returns the mixture
    /// value, which keeps relative accuracy in the left tail.
    pub fn cdf(&self, x: f64) -> Result<f64> {
        let m = self.cdf_mixture(x)?;
        let q = self.cdf_via_marcum(x)?;
        if (m - q).abs() > 1e-10 {
            return Err(Error::numerical(format!(
                "ncx2 cdf cross-check failed at x={x}, delta={}: mixture={m}, marcum={q}",
                self.delta
            )));
        }
        Ok(m)
    }

    /// Density, used only to polish quantiles:
    /// `f(x) = exp(-(x+delta)/2) I0(sqrt(delta x)) / 2` in log form.
    fn pdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return if self.delta == 0.0 && x == 0.0 {
                0.5
            } else {
                0.0
            };
        }
        let ln_f = -0.5 * (x + self.delta) + ln_bessel_i0((self.delta * x).sqrt())
            - std::f64::consts::LN_2;
        if ln_f < -745.0 {
            0.0
        } else {
            ln_f.exp()
        }
    }

    /// Quantile: Sankaran's normal approximation seeds a bracket, bisection
    /// narrows it to unit width, then safeguarded Newton polishes until
    /// `|cdf(x) - p| <= 1e-12`.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::invalid(format!(
                "quantile requires 0 <= p < 1, got {p}"
            )));
        }
        if p == 0.0 {
            return Ok(0.0);
        }
        let cdf = |x: f64| ncx2_mixture_walk(x, self.delta).0;

        let guess = sankaran_quantile_guess(p, self.delta)?;
        let mut lo = 0.0f64;
        let mut hi = 4.0 * guess + 10.0;
        while cdf(hi) < p {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::numerical(format!(
                    "ncx2 quantile bracket expansion failed for p={p}, delta={}",
                    self.delta
                )));
            }
        }
        while hi - lo > 1.0 {
            let mid = 0.5 * (lo + hi);
            if cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut x = 0.5 * (lo + hi);
        for _ in 0..200 {
            let f = cdf(x);
            if (f - p).abs() <= 1e-12 {
                return Ok(x);
            }
            if f < p {
                lo = x;
            } else {
                hi = x;
            }
            let d = self.pdf(x);
            let newton = x - (f - p) / d;
            x = if d > 0.0 && newton.is_finite() && newton > lo && newton < hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            if hi - lo <= f64::EPSILON * hi.abs().max(1.0) {
                break;
            }
        }
        let f = cdf(x);
        if (f - p).abs() <= 1e-12 {
            Ok(x)
        } else {
            Err(Error::numerical(format!(
                "ncx2 quantile did not converge for p={p}, delta={}: residual {}",
                self.delta,
                f - p
            )))
        }
    }
}

/// Sankaran's normal-approximation quantile for two degrees of freedom:
/// `sqrt(X - 1/2) - sqrt(delta + 1/2)` is treated as standard normal, so
/// `X ~ (sqrt(delta + 1/2) + z_p)^2 + 1/2`.
pub fn sankaran_quantile_guess(p: f64, delta: f64) -> Result<f64> {
    if !(0.0 < p && p < 1.0) {
        return Err(Error::invalid(format!(
            "sankaran guess requires 0 < p < 1, got {p}"
        )));
    }
    let z = gaussian_quantile(p)?;
    let y = (delta + 0.5).sqrt() + z;
    Ok(y.max(0.0) * y.max(0.0) + 0.5)
}

/// Derivative of `log F_ncx2(x | 2, delta)` with respect to `delta`, by the
/// ratio of mixture series
/// `sum_i (d/2)^i/i! (a_{i+1} - a_i) / (2 sum_i (d/2)^i/i! a_i)` with
/// `a_i = F_chi2(x | 2 + 2i)`. Since `a_{i+1} - a_i` is minus a Poisson pmf
/// the numerator terms are all negative and the result is strictly negative.
pub fn log_ncx2_cdf_ddelta(x: f64, delta: f64) -> Result<f64> {
    if !x.is_finite() || x <= 0.0 {
        return Err(Error::invalid(format!(
            "log_ncx2_cdf_ddelta requires finite x > 0, got {x}"
        )));
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::invalid(format!(
            "noncentrality must be finite and nonnegative, got {delta}"
        )));
    }
    let (den, num) = ncx2_mixture_walk(x, delta);
    if den <= 0.0 {
        return Err(Error::numerical(format!(
            "ncx2 cdf underflows at x={x}, delta={delta}; log-derivative unavailable"
        )));
    }
    Ok(-num / (2.0 * den))
}

// ── Gaussian CDF and quantile ────────────────────────────────────────────────

/// erf(t) for 0 <= t < 2.5 by the positive-term confluent series
/// `(2/sqrt(pi)) t exp(-t^2) sum_k (2t^2)^k / (2k+1)!!`.
fn erf_series(t: f64) -> f64 {
    let t2 = 2.0 * t * t;
    let mut term = 1.0f64;
    let mut acc = Kahan::from(1.0);
    let mut k = 0u32;
    loop {
        k += 1;
        term *= t2 / (2 * k + 1) as f64;
        acc.add(term);
        if term <= acc.sum() * 1e-17 || k > 300 {
            break;
        }
    }
    std::f64::consts::FRAC_2_SQRT_PI * t * (-t * t).exp() * acc.sum()
}

/// erfc(t) for t >= 2.5 by the Laplace continued fraction
/// `exp(-t^2)/sqrt(pi) / (t + (1/2)/(t + 1/(t + (3/2)/(t + ...))))`,
/// evaluated with the modified Lentz algorithm.
fn erfc_cf(t: f64) -> f64 {
    let tiny = 1e-300;
    let mut f = tiny;
    let mut c = f;
    let mut d = 0.0f64;
    for n in 1..500u32 {
        let a = if n == 1 { 1.0 } else { (n - 1) as f64 * 0.5 };
        let b = t;
        d = b + a * d;
        if d == 0.0 {
            d = tiny;
        }
        c = b + a / c;
        if c == 0.0 {
            c = tiny;
        }
        d = 1.0 / d;
        let delta = c * d;
        f *= delta;
        if (delta - 1.0).abs() < 1e-17 {
            break;
        }
    }
    (-t * t).exp() * (0.5 * std::f64::consts::FRAC_2_SQRT_PI) * f
}

fn erfc(t: f64) -> f64 {
    if t < 2.5 {
        1.0 - erf_series(t)
    } else {
        erfc_cf(t)
    }
}

/// Standard normal CDF, accurate to machine precision in both tails.
pub fn gaussian_cdf(x: f64) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x == f64::INFINITY {
        return 1.0;
    }
    if x == f64::NEG_INFINITY {
        return 0.0;
    }
    let t = x / std::f64::consts::SQRT_2;
    if x >= 0.0 {
        1.0 - 0.5 * erfc(t)
    } else {
        0.5 * erfc(-t)
    }
}

/// Standard normal quantile: Acklam's rational approximation refined by two
/// Newton steps on `gaussian_cdf`.
pub fn gaussian_quantile(p: f64) -> Result<f64> {
    if !(p > 0.0 && p < 1.0) {
        return Err(Error::invalid(format!(
            "gaussian_quantile requires 0 < p < 1, got {p}"
        )));
    }
    const A: [f64; 6] = [
        -3.969683028665376e+01,
        2.209460984245205e+02,
        -2.759285104469687e+02,
        1.38357751867269e+02,
        -3.066479806614716e+01,
        2.506628277459239e+00,
    ];
    const B: [f64; 5] = [
        -5.447609879822406e+01,
        1.615858368580409e+02,
        -1.556989798598866e+02,
        6.680131188771972e+01,
        -1.328068155288572e+01,
    ];
    const C: [f64; 6] = [
        -7.784894002430293e-03,
        -3.223964580411365e-01,
        -2.400758277161838e+00,
        -2.549732539343734e+00,
        4.374664141464968e+00,
        2.938163982698783e+00,
    ];
    const D: [f64; 4] = [
        7.784695709041462e-03,
        3.224671290700398e-01,
        2.445134137142996e+00,
        3.754408661907416e+00,
    ];
    const P_LOW: f64 = 0.02425;

    let mut z = if p < P_LOW {
        let q = (-2.0 * p.ln()).sqrt();
        (((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    } else if p <= 1.0 - P_LOW {
        let q = p - 0.5;
        let r = q * q;
        (((((A[0] * r + A[1]) * r + A[2]) * r + A[3]) * r + A[4]) * r + A[5]) * q
            / (((((B[0] * r + B[1]) * r + B[2]) * r + B[3]) * r + B[4]) * r + 1.0)
    } else {
        let q = (-2.0 * (1.0 - p).ln()).sqrt();
        -(((((C[0] * q + C[1]) * q + C[2]) * q + C[3]) * q + C[4]) * q + C[5])
            / ((((D[0] * q + D[1]) * q + D[2]) * q + D[3]) * q + 1.0)
    };
    for _ in 0..2 {
        let pdf = (-0.5 * z * z).exp() / SQRT_2PI;
        if pdf <= f64::MIN_POSITIVE {
            break;
        }
        z -= (gaussian_cdf(z) - p) / pdf;
    }
    Ok(z)
}
