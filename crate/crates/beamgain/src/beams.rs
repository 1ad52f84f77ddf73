//! Butler fixed-beamforming-network geometry: Butler matrix rows, per-beam
//! line-of-sight gains, beam directions, and the majorization diagnostics of
//! the sorted beam pattern.
//!
//! Angles are radians everywhere in the library; degree conversion belongs to
//! the CLI boundary. The arbitrary common phase of the LOS steering vector is
//! fixed to zero since it cancels in every squared magnitude consumed
//! downstream.

use num_complex::Complex64;

use crate::error::{Error, Result};

const TWO_PI: f64 = 2.0 * std::f64::consts::PI;

/// Distance from `phi` to the nearest multiple of 2 pi below which the
/// removable singularity of the gain formula is replaced by its limit M.
const SINGULARITY_EPS: f64 = 1e-8;

/// Antenna/beam count `M` and normalized element spacing `d / lambda_c` of a
/// uniform linear array behind an `M x M` Butler network.
///
/// Construction enforces `M >= 2` and `(M - 1) / (2M) < d/lambda_c`, the
/// minimum spacing for every beam to own at least one main lobe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArrayConfig {
    m: usize,
    spacing: f64,
}

impl ArrayConfig {
    pub fn new(m: usize, spacing: f64) -> Result<Self> {
        if m < 2 {
            return Err(Error::invalid(format!(
                "antenna count must be >= 2, got {m}"
            )));
        }
        if !spacing.is_finite() || spacing <= 0.0 {
            return Err(Error::invalid(format!(
                "normalized spacing must be finite and positive, got {spacing}"
            )));
        }
        let min = (m as f64 - 1.0) / (2.0 * m as f64);
        if spacing <= min {
            return Err(Error::invalid(format!(
                "normalized spacing {spacing} must exceed (M-1)/(2M) = {min} for M = {m}"
            )));
        }
        Ok(ArrayConfig { m, spacing })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    /// The `m`-th row of the Butler matrix (1-indexed): entries
    /// `(1/sqrt(M)) exp(j (2 pi / M)(m - 1/2) k)` for `k = 1..=M`.
    pub fn butler_row(&self, beam: usize) -> Result<Vec<Complex64>> {
        self.check_beam_index(beam)?;
        let mf = self.m as f64;
        let base = TWO_PI / mf * (beam as f64 - 0.5);
        let scale = 1.0 / mf.sqrt();
        Ok((1..=self.m)
            .map(|k| scale * Complex64::from_polar(1.0, base * k as f64))
            .collect())
    }

    /// LOS steering vector at azimuth `theta`: entries
    /// `exp(-j 2 pi (k-1) (d/lambda_c) sin theta)`, `k = 1..=M`.
    pub fn los_vector(&self, theta: f64) -> Result<Vec<Complex64>> {
        if !theta.is_finite() {
            return Err(Error::invalid(format!("theta must be finite, got {theta}")));
        }
        let step = -TWO_PI * self.spacing * theta.sin();
        Ok((0..self.m)
            .map(|k| Complex64::from_polar(1.0, step * k as f64))
            .collect())
    }

    /// Electrical angle of beam `m` at azimuth `theta`:
    /// `phi_m = 2 pi [ (m - 1/2)/M - (d/lambda_c) sin theta ]`.
    fn phi(&self, beam: usize, theta: f64) -> f64 {
        TWO_PI * ((beam as f64 - 0.5) / self.m as f64 - self.spacing * theta.sin())
    }

    /// Deterministic SNR gain of beam `m` at azimuth `theta`:
    /// `M` at the removable singularity `phi_m = 2 pi n`, otherwise
    /// `sin^2(M phi_m / 2) / (M sin^2(phi_m / 2))`.
    pub fn beam_gain(&self, beam: usize, theta: f64) -> Result<f64> {
        self.check_beam_index(beam)?;
        if !theta.is_finite() {
            return Err(Error::invalid(format!("theta must be finite, got {theta}")));
        }
        Ok(self.beam_gain_unchecked(beam, theta))
    }

    fn beam_gain_unchecked(&self, beam: usize, theta: f64) -> f64 {
        let phi = self.phi(beam, theta);
        let turns = phi / TWO_PI;
        let dist = (turns - turns.round()).abs() * TWO_PI;
        if dist < SINGULARITY_EPS {
            return self.m as f64;
        }
        let mf = self.m as f64;
        let num = (0.5 * mf * phi).sin();
        let den = (0.5 * phi).sin();
        num * num / (mf * den * den)
    }

    /// The full beam pattern `{gamma_m(theta)}` at one azimuth.
    pub fn beam_pattern(&self, theta: f64) -> Result<BeamPattern> {
        if !theta.is_finite() {
            return Err(Error::invalid(format!("theta must be finite, got {theta}")));
        }
        let gammas: Vec<f64> = (1..=self.m)
            .map(|b| self.beam_gain_unchecked(b, theta))
            .collect();
        debug_assert!(
            (gammas.iter().sum::<f64>() - self.m as f64).abs() < 1e-9,
            "beam pattern must sum to M"
        );
        Ok(BeamPattern { theta, gammas })
    }

    /// First beam direction `nu = arcsin( (1 / 2M) (lambda_c / d) )`. The
    /// spacing bound enforced at construction keeps the arcsine argument
    /// strictly below one, so this cannot fail.
    pub fn first_beam_direction(&self) -> f64 {
        (1.0 / (2.0 * self.m as f64 * self.spacing)).asin()
    }

    /// Cumulative sums of the nondecreasingly sorted beam pattern, the
    /// partial-sum diagnostics of the majorization ordering. Restricted to
    /// `theta` in `[0, nu]`; other azimuths fold onto this interval via
    /// [`ArrayConfig::fold_to_first_interval`].
    pub fn sorted_partial_sums(&self, theta: f64) -> Result<Vec<f64>> {
        let nu = self.first_beam_direction();
        if !theta.is_finite() || !(0.0..=nu).contains(&theta) {
            return Err(Error::invalid(format!(
                "sorted_partial_sums requires theta in [0, {nu}], got {theta}"
            )));
        }
        let mut gammas = self.beam_pattern(theta)?.gammas;
        gammas.sort_by(|a, b| a.partial_cmp(b).expect("gains are finite"));
        let mut acc = 0.0;
        Ok(gammas
            .iter()
            .map(|g| {
                acc += g;
                acc
            })
            .collect())
    }

    /// The two distinct nonzero levels `(a_M, b_M)` of the vector that
    /// majorizes the `theta = 0` beam pattern:
    /// `a_M = 1 / (M sin^2(pi / 2M))`, `b_M = M/2 - a_M`.
    pub fn majorizing_vector(&self) -> (f64, f64) {
        let mf = self.m as f64;
        let s = (std::f64::consts::PI / (2.0 * mf)).sin();
        let a = 1.0 / (mf * s * s);
        (a, 0.5 * mf - a)
    }

    /// Map an arbitrary azimuth to the angle in `[0, nu]` whose beam pattern
    /// is the same multiset. The pattern depends on `theta` only through
    /// `u = (d/lambda_c) sin theta`, is periodic in `u` with period `1/M`,
    /// and mirror-symmetric inside each period.
    pub fn fold_to_first_interval(&self, theta: f64) -> Result<f64> {
        if !theta.is_finite() {
            return Err(Error::invalid(format!("theta must be finite, got {theta}")));
        }
        let period = 1.0 / self.m as f64;
        let v = (self.spacing * theta.sin()).rem_euclid(period);
        let tau = v.min(period - v);
        Ok((tau / self.spacing).asin())
    }

    fn check_beam_index(&self, beam: usize) -> Result<()> {
        if beam == 0 || beam > self.m {
            return Err(Error::invalid(format!(
                "beam index must be in 1..={}, got {beam}",
                self.m
            )));
        }
        Ok(())
    }
}

/// The deterministic per-beam gains at one azimuth.
#[derive(Debug, Clone, PartialEq)]
pub struct BeamPattern {
    theta: f64,
    gammas: Vec<f64>,
}

impl BeamPattern {
    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Gains `gamma_1 ..= gamma_M`, in beam order.
    pub fn gammas(&self) -> &[f64] {
        &self.gammas
    }

    pub fn max_gain(&self) -> f64 {
        self.gammas.iter().cloned().fold(0.0, f64::max)
    }
}
