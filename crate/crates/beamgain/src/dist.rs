//! Exact and bounding CDFs of the beam selection gain and the antenna
//! selection gain, with quantiles.
//!
//! Every branch gain is noncentral chi-square: the gain of beam `m` at
//! azimuth `theta` has CDF `F_m(x) = F_ncx2(2(K+1)x | 2, 2K gamma_m(theta))`
//! and the selection gain is the maximum over branches, so selection CDFs are
//! products of branch CDFs. Products are accumulated in log space and
//! exponentiated at the boundary so large `M` cannot underflow.

use crate::beams::ArrayConfig;
use crate::error::{Error, Result};
use crate::specfun::NoncentralChiSq2;

/// Rician K-factor (linear). `K = 0` is Rayleigh fading; the ideal
/// deterministic channel `K = infinity` is a dedicated flag so no overflowing
/// noncentrality `2 K gamma` is ever formed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RicianParams {
    k: KFactor,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum KFactor {
    Finite(f64),
    Deterministic,
}

impl RicianParams {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() || k < 0.0 {
            return Err(Error::invalid(format!(
                "Rician K-factor must be finite and nonnegative, got {k}"
            )));
        }
        Ok(RicianParams {
            k: KFactor::Finite(k),
        })
    }

    /// The ideal LOS channel, `K = infinity`.
    pub fn deterministic() -> Self {
        RicianParams {
            k: KFactor::Deterministic,
        }
    }

    /// The K-factor, or `None` for the deterministic channel.
    pub fn k(&self) -> Option<f64> {
        match self.k {
            KFactor::Finite(k) => Some(k),
            KFactor::Deterministic => None,
        }
    }

    pub fn is_deterministic(&self) -> bool {
        matches!(self.k, KFactor::Deterministic)
    }
}

fn validate_x(x: f64) -> Result<f64> {
    if !x.is_finite() || x < 0.0 {
        return Err(Error::invalid(format!(
            "gain argument must be finite and nonnegative, got {x}"
        )));
    }
    Ok(x)
}

/// Step CDF of a point mass at `at`, the deterministic-channel limit.
fn step_cdf(x: f64, at: f64) -> f64 {
    if x >= at {
        1.0
    } else {
        0.0
    }
}

/// `ln Q_gamma(x)` for finite K: the log branch CDF with LOS gain `gamma`.
fn ln_branch_cdf(x: f64, gamma: f64, k: f64) -> Result<f64> {
    let dist = NoncentralChiSq2::new(2.0 * k * gamma)?;
    Ok(dist.cdf(2.0 * (k + 1.0) * x)?.ln())
}

/// CDF of the gain of a single beam: `F_m(x | theta)`.
pub fn single_beam_cdf(
    x: f64,
    beam: usize,
    theta: f64,
    cfg: &ArrayConfig,
    rician: &RicianParams,
) -> Result<f64> {
    let x = validate_x(x)?;
    let gamma = cfg.beam_gain(beam, theta)?;
    match rician.k() {
        None => Ok(step_cdf(x, gamma)),
        Some(k) => Ok(ln_branch_cdf(x, gamma, k)?.exp()),
    }
}

/// CDF of the beam selection gain: the product of all `M` single-beam CDFs,
/// accumulated in log space.
pub fn beam_selection_cdf(
    x: f64,
    theta: f64,
    cfg: &ArrayConfig,
    rician: &RicianParams,
) -> Result<f64> {
    let x = validate_x(x)?;
    let pattern = cfg.beam_pattern(theta)?;
    match rician.k() {
        None => Ok(step_cdf(x, pattern.max_gain())),
        Some(k) => {
            let mut ln_f = 0.0;
            for &gamma in pattern.gammas() {
                ln_f += ln_branch_cdf(x, gamma, k)?;
                if ln_f == f64::NEG_INFINITY {
                    return Ok(0.0);
                }
            }
            Ok(ln_f.exp())
        }
    }
}

/// CDF of the antenna selection gain `G_(M)(x) = G(x)^M` with
/// `G(x) = F_ncx2(2(K+1)x | 2, 2K)`. Independent of azimuth.
pub fn antenna_selection_cdf(x: f64, cfg: &ArrayConfig, rician: &RicianParams) -> Result<f64> {
    let x = validate_x(x)?;
    match rician.k() {
        None => Ok(step_cdf(x, 1.0)),
        Some(k) => Ok((cfg.m() as f64 * ln_branch_cdf(x, 1.0, k)?).exp()),
    }
}

/// The bounding CDF `Q_gamma(x) = F_ncx2(2(K+1)x | 2, 2K gamma)`.
pub fn bound_q(x: f64, gamma: f64, rician: &RicianParams) -> Result<f64> {
    let x = validate_x(x)?;
    if !gamma.is_finite() || gamma < 0.0 {
        return Err(Error::invalid(format!(
            "bound_q gamma must be finite and nonnegative, got {gamma}"
        )));
    }
    match rician.k() {
        None => Ok(step_cdf(x, gamma)),
        Some(k) => Ok(ln_branch_cdf(x, gamma, k)?.exp()),
    }
}

/// The central bounding CDF `W(x) = F_chi2(2(K+1)x | 2) = 1 - e^{-(K+1)x}`.
pub fn bound_w(x: f64, rician: &RicianParams) -> Result<f64> {
    let x = validate_x(x)?;
    match rician.k() {
        None => Ok(if x > 0.0 { 1.0 } else { 0.0 }),
        Some(k) => Ok(-(-(k + 1.0) * x).exp_m1()),
    }
}

/// Quantile of `Q_gamma`: `Q_gamma^{-1}(p)`.
pub fn bound_q_quantile(p: f64, gamma: f64, rician: &RicianParams) -> Result<f64> {
    if !(0.0..1.0).contains(&p) {
        return Err(Error::invalid(format!(
            "quantile requires 0 <= p < 1, got {p}"
        )));
    }
    match rician.k() {
        None => Ok(if p == 0.0 { 0.0 } else { gamma }),
        Some(k) => {
            let dist = NoncentralChiSq2::new(2.0 * k * gamma)?;
            Ok(dist.quantile(p)? / (2.0 * (k + 1.0)))
        }
    }
}

/// Stochastic sandwich for the beam selection gain of a user exactly between
/// beams: `upper_cdf = Q_{a_M}^2(x)` and
/// `lower_cdf = Q_{a_M}^2(x) Q_{b_M}^2(x) W^{M-4}(x)`, with
/// `upper_cdf >= F_(M)(x | 0) >= lower_cdf`. Requires `M >= 4`; the
/// majorizing construction needs four nonzero slots.
pub fn theta0_bounds(x: f64, cfg: &ArrayConfig, rician: &RicianParams) -> Result<(f64, f64)> {
    let x = validate_x(x)?;
    if cfg.m() < 4 {
        return Err(Error::invalid(format!(
            "theta0_bounds requires M >= 4, got {}",
            cfg.m()
        )));
    }
    let (a, b) = cfg.majorizing_vector();
    match rician.k() {
        None => {
            let upper = step_cdf(x, a) * step_cdf(x, a);
            let lower = upper
                * step_cdf(x, b)
                * step_cdf(x, b)
                * if x > 0.0 || cfg.m() == 4 { 1.0 } else { 0.0 };
            Ok((upper, lower))
        }
        Some(k) => {
            if x == 0.0 {
                return Ok((0.0, 0.0));
            }
            let ln_qa = ln_branch_cdf(x, a, k)?;
            let ln_qb = ln_branch_cdf(x, b, k)?;
            let ln_w = bound_w(x, rician)?.ln();
            let upper = (2.0 * ln_qa).exp();
            let lower = (2.0 * ln_qa + 2.0 * ln_qb + (cfg.m() - 4) as f64 * ln_w).exp();
            Ok((upper, lower))
        }
    }
}

/// Quantile of the beam selection gain at azimuth `theta`: the `x` with
/// `|F_(M)(x | theta) - p| <= 1e-10`, found by an expanding bracket and
/// bisection (the CDF is monotone and cheap to evaluate).
pub fn selection_quantile(
    p: f64,
    theta: f64,
    cfg: &ArrayConfig,
    rician: &RicianParams,
) -> Result<f64> {
    GainCdf::BeamSelection {
        cfg: *cfg,
        rician: *rician,
        theta,
    }
    .quantile(p)
}

/// An evaluable CDF over a selection gain: exact, bound, or approximation.
/// Each variant is a nondecreasing right-continuous function from
/// `[0, infinity)` onto `[0, 1)` with `F(0) = 0` (step variants excepted at
/// their atoms).
#[derive(Debug, Clone, Copy)]
pub enum GainCdf {
    /// `F_m(x | theta)` for one beam.
    SingleBeam {
        cfg: ArrayConfig,
        rician: RicianParams,
        theta: f64,
        beam: usize,
    },
    /// `F_(M)(x | theta)`, the beam selection gain CDF.
    BeamSelection {
        cfg: ArrayConfig,
        rician: RicianParams,
        theta: f64,
    },
    /// `G(x)`, a single antenna branch.
    Antenna { rician: RicianParams },
    /// `G_(M)(x)`, the antenna selection gain CDF.
    AntennaSelection {
        cfg: ArrayConfig,
        rician: RicianParams,
    },
    /// The bound `Q_gamma(x)`.
    BoundQ { rician: RicianParams, gamma: f64 },
    /// The bound `W(x)^exponent`.
    BoundWPow { rician: RicianParams, exponent: u32 },
    /// The product bound `Q_{a_M}^2 Q_{b_M}^2 W^{M-4}` at `theta = 0`.
    Theta0Lower {
        cfg: ArrayConfig,
        rician: RicianParams,
    },
}

impl GainCdf {
    pub fn eval(&self, x: f64) -> Result<f64> {
        match self {
            GainCdf::SingleBeam {
                cfg,
                rician,
                theta,
                beam,
            } => single_beam_cdf(x, *beam, *theta, cfg, rician),
            GainCdf::BeamSelection { cfg, rician, theta } => {
                beam_selection_cdf(x, *theta, cfg, rician)
            }
            GainCdf::Antenna { rician } => bound_q(x, 1.0, rician),
            GainCdf::AntennaSelection { cfg, rician } => antenna_selection_cdf(x, cfg, rician),
            GainCdf::BoundQ { rician, gamma } => bound_q(x, *gamma, rician),
            GainCdf::BoundWPow { rician, exponent } => {
                let x = validate_x(x)?;
                if *exponent == 0 {
                    return Ok(1.0);
                }
                Ok((f64::from(*exponent) * bound_w(x, rician)?.ln()).exp())
            }
            GainCdf::Theta0Lower { cfg, rician } => Ok(theta0_bounds(x, cfg, rician)?.1),
        }
    }

    /// Generic quantile by expanding bracket `[0, 2^k]` then bisection until
    /// the residual `|F(x) - p|` drops below 1e-10.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(0.0..1.0).contains(&p) {
            return Err(Error::invalid(format!(
                "quantile requires 0 <= p < 1, got {p}"
            )));
        }
        if p == 0.0 {
            return Ok(0.0);
        }
        let mut hi = 1.0f64;
        while self.eval(hi)? < p {
            hi *= 2.0;
            if hi > 1e300 {
                return Err(Error::numerical(format!(
                    "quantile bracket expansion failed at p={p}"
                )));
            }
        }
        let mut lo = 0.0f64;
        for _ in 0..400 {
            let mid = 0.5 * (lo + hi);
            let f = self.eval(mid)?;
            if (f - p).abs() <= 1e-10 {
                return Ok(mid);
            }
            if f < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= f64::EPSILON * hi.max(1.0) {
                break;
            }
        }
        // step CDFs (deterministic channel) land here: the bracket collapses
        // onto the atom
        let f = self.eval(hi)?;
        if f >= p {
            Ok(hi)
        } else {
            Err(Error::numerical(format!(
                "quantile bisection did not converge at p={p}"
            )))
        }
    }
}
