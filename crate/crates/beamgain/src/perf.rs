//! Scalar performance measures of the selection gains: expected gain,
//! ergodic capacity, outage probability and outage capacity. Each comes
//! exact by tail integration of the CDFs and approximate by the closed forms
//! that the stochastic bounds yield for a user at the beam direction
//! (`theta = nu`) and exactly between beams (`theta = 0`).
//!
//! Expectations are computed as `int_0^inf (1 - F(x)) dx` (and its
//! integration-by-parts analogue for capacity) because the analysis works
//! entirely with CDFs; no density is ever formed. Quadrature is adaptive
//! Simpson with interval splitting, domain truncated where `1 - F < 1e-12`.

use crate::beams::ArrayConfig;
use crate::dist::{
    antenna_selection_cdf, beam_selection_cdf, bound_q, bound_q_quantile, selection_quantile,
    GainCdf, RicianParams,
};
use crate::error::{Error, Result};

const QUAD_TOL: f64 = 1e-10;
const TAIL_CUT: f64 = 1e-12;
const LN_2: f64 = std::f64::consts::LN_2;

/// The two azimuths with closed-form approximations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremeAngle {
    /// Exactly between beams, `theta = 0`.
    Zero,
    /// The first beam direction, `theta = nu`.
    BeamDirection,
}

impl ExtremeAngle {
    pub fn angle(&self, cfg: &ArrayConfig) -> f64 {
        match self {
            ExtremeAngle::Zero => 0.0,
            ExtremeAngle::BeamDirection => cfg.first_beam_direction(),
        }
    }
}

/// One evaluated performance figure: closed-form approximation, optional
/// analytic brackets, and the parameters it was computed at.
#[derive(Debug, Clone, Copy)]
pub struct PerfResult {
    /// Numerically integrated value, when the caller computed one.
    pub exact: Option<f64>,
    /// Closed-form approximation.
    pub approx: f64,
    /// Analytic (lower, upper) bracket when one exists.
    pub brackets: Option<(f64, f64)>,
    pub m: usize,
    pub k: Option<f64>,
    pub rho: Option<f64>,
    pub theta: f64,
}

// ── Adaptive Simpson quadrature ──────────────────────────────────────────────

fn simpson_panel<F>(f: &F, a: f64, fa: f64, b: f64, fb: f64) -> Result<(f64, f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mid = 0.5 * (a + b);
    let fm = f(mid)?;
    Ok((mid, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb)))
}

#[allow(clippy::too_many_arguments)]
fn adapt<F>(
    f: &F,
    a: f64,
    fa: f64,
    m: f64,
    fm: f64,
    b: f64,
    fb: f64,
    whole: f64,
    eps: f64,
    depth: u32,
) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let (ml, fml, left) = simpson_panel(f, a, fa, m, fm)?;
    let (mr, fmr, right) = simpson_panel(f, m, fm, b, fb)?;
    let delta = left + right - whole;
    if delta.abs() <= 15.0 * eps {
        return Ok(left + right + delta / 15.0);
    }
    if depth == 0 {
        return Err(Error::numerical(format!(
            "quadrature refinement did not converge on [{a}, {b}]"
        )));
    }
    Ok(adapt(f, a, fa, ml, fml, m, fm, left, 0.5 * eps, depth - 1)?
        + adapt(f, m, fm, mr, fmr, b, fb, right, 0.5 * eps, depth - 1)?)
}

/// Adaptive Simpson on `[a, b]` with total error budget `tol`, seeded with 16
/// equal panels so narrow features are not stepped over.
pub(crate) fn integrate<F>(f: &F, a: f64, b: f64, tol: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if b <= a {
        return Ok(0.0);
    }
    const PANELS: usize = 16;
    let h = (b - a) / PANELS as f64;
    let mut total = 0.0;
    let mut x0 = a;
    let mut f0 = f(a)?;
    for i in 1..=PANELS {
        let x1 = a + h * i as f64;
        let f1 = f(x1)?;
        let (m, fm, whole) = simpson_panel(f, x0, f0, x1, f1)?;
        total += adapt(f, x0, f0, m, fm, x1, f1, whole, tol / PANELS as f64, 48)?;
        x0 = x1;
        f0 = f1;
    }
    Ok(total)
}

/// Smallest convenient `x` with `1 - cdf(x) < 1e-12`, starting from a
/// quantile estimate and extending multiplicatively.
fn tail_cut<F>(cdf: &F, start: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut x = start.max(1e-3);
    for _ in 0..200 {
        if 1.0 - cdf(x)? < TAIL_CUT {
            return Ok(x);
        }
        x *= 1.25;
    }
    Err(Error::numerical(
        "tail cut search failed to reach 1 - F < 1e-12".to_string(),
    ))
}

/// Mean of the distribution `cdf` on `[0, inf)` by tail integration.
fn mean_by_tail<F>(cdf: &F, quantile_hint: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let hi = tail_cut(cdf, quantile_hint)?;
    integrate(&|x| Ok(1.0 - cdf(x)?), 0.0, hi, QUAD_TOL)
}

/// `E[log2(1 + rho X)]` for `X ~ cdf`, by parts:
/// `int_0^inf rho / ((1 + rho x) ln 2) (1 - F(x)) dx`.
fn capacity_by_tail<F>(cdf: &F, rho: f64, quantile_hint: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let hi = tail_cut(cdf, quantile_hint)?;
    integrate(
        &|x| Ok(rho / ((1.0 + rho * x) * LN_2) * (1.0 - cdf(x)?)),
        0.0,
        hi,
        QUAD_TOL,
    )
}

fn validate_rho(rho: f64) -> Result<()> {
    if !rho.is_finite() || rho <= 0.0 {
        return Err(Error::invalid(format!(
            "SNR rho must be finite and positive, got {rho}"
        )));
    }
    Ok(())
}

fn require_finite_k(rician: &RicianParams, what: &str) -> Result<f64> {
    rician
        .k()
        .ok_or_else(|| Error::invalid(format!("{what} requires a finite K-factor")))
}

// ── Expected selection gain ──────────────────────────────────────────────────

/// Exact expected beam selection gain `E[Gamma_(M)(theta)]` by quadrature.
pub fn expected_gain(theta: f64, cfg: &ArrayConfig, rician: &RicianParams) -> Result<f64> {
    if rician.is_deterministic() {
        return Ok(cfg.beam_pattern(theta)?.max_gain());
    }
    let cdf = move |x: f64| beam_selection_cdf(x, theta, cfg, rician);
    let hint = selection_quantile(1.0 - 1e-9, theta, cfg, rician)?;
    mean_by_tail(&cdf, hint)
}

/// Closed-form approximation of the expected gain at an extreme azimuth:
/// `(KM + 1)/(K + 1)` at the beam direction; between beams the mean of
/// `Q_{a_M}^2`, bracketed by
/// `[(K a_M + 1)/(K+1), (K a_M + 1)/(K+1) + sqrt(2 K a_M + 1)/(sqrt 3 (K+1))]`
/// with the lower endpoint (the dominant term) reported as the approximation.
pub fn expected_gain_approx(
    at: ExtremeAngle,
    cfg: &ArrayConfig,
    rician: &RicianParams,
) -> Result<PerfResult> {
    let k = require_finite_k(rician, "expected_gain_approx")?;
    let theta = at.angle(cfg);
    let (approx, brackets) = match at {
        ExtremeAngle::BeamDirection => ((k * cfg.m() as f64 + 1.0) / (k + 1.0), None),
        ExtremeAngle::Zero => {
            let (a, _) = cfg.majorizing_vector();
            let lower = (k * a + 1.0) / (k + 1.0);
            let upper = lower + (2.0 * k * a + 1.0).sqrt() / (3.0f64.sqrt() * (k + 1.0));
            (lower, Some((lower, upper)))
        }
    };
    Ok(PerfResult {
        exact: None,
        approx,
        brackets,
        m: cfg.m(),
        k: Some(k),
        rho: None,
        theta,
    })
}

/// Exact expected antenna selection gain `E[H_(M)]` by the same quadrature
/// on `G_(M)`.
pub fn antenna_expected_gain(cfg: &ArrayConfig, rician: &RicianParams) -> Result<f64> {
    if rician.is_deterministic() {
        return Ok(1.0);
    }
    let cdf = move |x: f64| antenna_selection_cdf(x, cfg, rician);
    let hint = GainCdf::AntennaSelection {
        cfg: *cfg,
        rician: *rician,
    }
    .quantile(1.0 - 1e-9)?;
    mean_by_tail(&cdf, hint)
}

// ── Ergodic capacity ─────────────────────────────────────────────────────────

/// Exact ergodic capacity `E[log2(1 + rho Gamma_(M)(theta))]` by quadrature.
pub fn ergodic_capacity(
    theta: f64,
    cfg: &ArrayConfig,
    rician: &RicianParams,
    rho: f64,
) -> Result<f64> {
    validate_rho(rho)?;
    if rician.is_deterministic() {
        return Ok((1.0 + rho * cfg.beam_pattern(theta)?.max_gain()).log2());
    }
    let cdf = move |x: f64| beam_selection_cdf(x, theta, cfg, rician);
    let hint = selection_quantile(1.0 - 1e-9, theta, cfg, rician)?;
    capacity_by_tail(&cdf, rho, hint)
}

/// Closed-form capacity approximations:
/// `log2(1 + rho (KM+1)/(K+1))` at the beam direction and
/// `log2(1 + rho (K a_M + 1)/(K+1))` between beams.
pub fn ergodic_capacity_approx(
    at: ExtremeAngle,
    cfg: &ArrayConfig,
    rician: &RicianParams,
    rho: f64,
) -> Result<f64> {
    validate_rho(rho)?;
    let k = require_finite_k(rician, "ergodic_capacity_approx")?;
    let gain = match at {
        ExtremeAngle::BeamDirection => (k * cfg.m() as f64 + 1.0) / (k + 1.0),
        ExtremeAngle::Zero => {
            let (a, _) = cfg.majorizing_vector();
            (k * a + 1.0) / (k + 1.0)
        }
    };
    Ok((1.0 + rho * gain).log2())
}

/// Exact ergodic capacity of antenna selection, by quadrature on `G_(M)`.
pub fn antenna_ergodic_capacity(cfg: &ArrayConfig, rician: &RicianParams, rho: f64) -> Result<f64> {
    validate_rho(rho)?;
    if rician.is_deterministic() {
        return Ok((1.0 + rho).log2());
    }
    let cdf = move |x: f64| antenna_selection_cdf(x, cfg, rician);
    let hint = GainCdf::AntennaSelection {
        cfg: *cfg,
        rician: *rician,
    }
    .quantile(1.0 - 1e-9)?;
    capacity_by_tail(&cdf, rho, hint)
}

// ── Outage probability and outage capacity ───────────────────────────────────

/// Exact outage probability of rate `c0` at SNR `rho`:
/// `F_(M)((2^{c0} - 1)/rho | theta)`.
pub fn outage_probability(
    c0: f64,
    theta: f64,
    cfg: &ArrayConfig,
    rician: &RicianParams,
    rho: f64,
) -> Result<f64> {
    validate_rho(rho)?;
    if !c0.is_finite() || c0 < 0.0 {
        return Err(Error::invalid(format!(
            "rate must be finite and nonnegative, got {c0}"
        )));
    }
    beam_selection_cdf((2.0f64.powf(c0) - 1.0) / rho, theta, cfg, rician)
}

/// Large-M approximation of the outage probability at the extreme azimuths:
/// `Q_M` at the beam direction, `Q_{a_M}^2` between beams.
pub fn outage_probability_approx(
    c0: f64,
    at: ExtremeAngle,
    cfg: &ArrayConfig,
    rician: &RicianParams,
    rho: f64,
) -> Result<f64> {
    validate_rho(rho)?;
    if !c0.is_finite() || c0 < 0.0 {
        return Err(Error::invalid(format!(
            "rate must be finite and nonnegative, got {c0}"
        )));
    }
    let x = (2.0f64.powf(c0) - 1.0) / rho;
    match at {
        ExtremeAngle::BeamDirection => bound_q(x, cfg.m() as f64, rician),
        ExtremeAngle::Zero => {
            let (a, _) = cfg.majorizing_vector();
            Ok(bound_q(x, a, rician)?.powi(2))
        }
    }
}

fn validate_p0(p0: f64) -> Result<()> {
    if !(p0 > 0.0 && p0 < 1.0) {
        return Err(Error::invalid(format!(
            "outage target must satisfy 0 < P0 < 1, got {p0}"
        )));
    }
    Ok(())
}

/// Exact outage capacity: `log2(1 + rho F_(M)^{-1}(P0 | theta))`.
pub fn outage_capacity(
    p0: f64,
    theta: f64,
    cfg: &ArrayConfig,
    rician: &RicianParams,
    rho: f64,
) -> Result<f64> {
    validate_rho(rho)?;
    validate_p0(p0)?;
    Ok((1.0 + rho * selection_quantile(p0, theta, cfg, rician)?).log2())
}

/// Large-M approximation of the outage capacity:
/// `log2(1 + rho Q_M^{-1}(P0))` at the beam direction and
/// `log2(1 + rho Q_{a_M}^{-1}(sqrt P0))` between beams.
pub fn outage_capacity_approx(
    p0: f64,
    at: ExtremeAngle,
    cfg: &ArrayConfig,
    rician: &RicianParams,
    rho: f64,
) -> Result<f64> {
    validate_rho(rho)?;
    validate_p0(p0)?;
    let x = match at {
        ExtremeAngle::BeamDirection => bound_q_quantile(p0, cfg.m() as f64, rician)?,
        ExtremeAngle::Zero => {
            let (a, _) = cfg.majorizing_vector();
            bound_q_quantile(p0.sqrt(), a, rician)?
        }
    };
    Ok((1.0 + rho * x).log2())
}

// ── Order-of-growth diagnostics ──────────────────────────────────────────────

/// One row of the growth table: raw means/capacities and their normalized
/// ratios. The beam ratios should stabilize (linear growth), the antenna
/// mean grows like `ln M`.
#[derive(Debug, Clone, Copy)]
pub struct GrowthRow {
    pub m: usize,
    pub beam_mean_nu: f64,
    pub beam_mean_zero: f64,
    pub antenna_mean: f64,
    pub beam_mean_nu_over_m: f64,
    pub beam_mean_zero_over_m: f64,
    pub antenna_mean_over_ln_m: f64,
    pub beam_cap_nu: f64,
    pub beam_cap_zero: f64,
    pub antenna_cap: f64,
    pub beam_cap_nu_over_log2_m: f64,
    pub beam_cap_zero_over_log2_m: f64,
    pub antenna_cap_over_log2_m: f64,
}

/// Evaluate means and capacities over an ascending list of array sizes and
/// report the normalized growth ratios. Ratios are reported, never asserted:
/// the growth claims are asymptotic.
pub fn growth_diagnostics(
    ms: &[usize],
    spacing: f64,
    rician: &RicianParams,
    rho: f64,
) -> Result<Vec<GrowthRow>> {
    validate_rho(rho)?;
    if ms.is_empty() || ms.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::invalid(
            "growth_diagnostics requires a strictly ascending, nonempty list of M".to_string(),
        ));
    }
    let mut rows = Vec::with_capacity(ms.len());
    for &m in ms {
        let cfg = ArrayConfig::new(m, spacing)?;
        let nu = cfg.first_beam_direction();
        let mf = m as f64;
        let beam_mean_nu = expected_gain(nu, &cfg, rician)?;
        let beam_mean_zero = expected_gain(0.0, &cfg, rician)?;
        let antenna_mean = antenna_expected_gain(&cfg, rician)?;
        let beam_cap_nu = ergodic_capacity(nu, &cfg, rician, rho)?;
        let beam_cap_zero = ergodic_capacity(0.0, &cfg, rician, rho)?;
        let antenna_cap = antenna_ergodic_capacity(&cfg, rician, rho)?;
        rows.push(GrowthRow {
            m,
            beam_mean_nu,
            beam_mean_zero,
            antenna_mean,
            beam_mean_nu_over_m: beam_mean_nu / mf,
            beam_mean_zero_over_m: beam_mean_zero / mf,
            antenna_mean_over_ln_m: antenna_mean / mf.ln(),
            beam_cap_nu,
            beam_cap_zero,
            antenna_cap,
            beam_cap_nu_over_log2_m: beam_cap_nu / mf.log2(),
            beam_cap_zero_over_log2_m: beam_cap_zero / mf.log2(),
            antenna_cap_over_log2_m: antenna_cap / mf.log2(),
        });
    }
    Ok(rows)
}
