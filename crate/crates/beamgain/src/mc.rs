//! Seeded Monte Carlo validation of the analytic layer: sample Rician
//! channel vectors, form beam and antenna selection gains, build empirical
//! CDFs, and measure agreement with the analytic CDFs.
//!
//! Randomness comes from a counter-based SplitMix64 generator with fixed
//! constants, so any stream position can be generated independently and the
//! integer stream is bit-identical across platforms. Samples are produced in
//! fixed-size chunks; chunk `i` reseeds with `seed ^ mix64(i)`, so serial and
//! chunk-parallel runs yield the same multiset of samples.

use std::io::{Read, Write};
use std::sync::mpsc;

use num_complex::Complex64;

use crate::beams::ArrayConfig;
use crate::dist::{GainCdf, RicianParams};
use crate::error::{Error, Result};

/// Samples per reseeded chunk.
const CHUNK_SAMPLES: u64 = 1 << 16;

const GOLDEN_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

/// SplitMix64 finalizer with the standard constants.
pub fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based SplitMix64 stream: draw `i` of key `k` is
/// `mix64(k + (i + 1) * 0x9E3779B97F4A7C15)`. Pure integer arithmetic, so
/// the stream is reproducible bit-for-bit anywhere, and any position can be
/// addressed directly, which is what makes chunked parallel sampling
/// deterministic.
#[derive(Debug, Clone, Copy)]
pub struct CounterRng {
    key: u64,
    counter: u64,
}

impl CounterRng {
    pub fn new(key: u64) -> Self {
        CounterRng { key, counter: 0 }
    }

    /// A stream positioned at an absolute counter.
    pub fn at(key: u64, counter: u64) -> Self {
        CounterRng { key, counter }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.counter += 1;
        mix64(
            self.key
                .wrapping_add(self.counter.wrapping_mul(GOLDEN_GAMMA)),
        )
    }

    /// Uniform draw in `(0, 1]` from the top 53 bits (never zero, so it is
    /// safe under a logarithm).
    #[inline]
    pub fn next_uniform(&mut self) -> f64 {
        ((self.next_u64() >> 11) + 1) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// A pair of independent standard normal draws by Box-Muller on paired
    /// uniforms.
    #[inline]
    pub fn next_normal_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_uniform();
        let u2 = self.next_uniform();
        let r = (-2.0 * u1.ln()).sqrt();
        let phase = 2.0 * std::f64::consts::PI * u2;
        (r * phase.cos(), r * phase.sin())
    }
}

/// A reproducible simulation: `n_samples` channel draws at one azimuth.
/// Identical configurations produce bit-identical sample streams.
#[derive(Debug, Clone, Copy)]
pub struct SimConfig {
    pub n_samples: u64,
    pub seed: u64,
    pub theta: f64,
    pub cfg: ArrayConfig,
    pub rician: RicianParams,
}

impl SimConfig {
    pub fn new(
        n_samples: u64,
        seed: u64,
        theta: f64,
        cfg: ArrayConfig,
        rician: RicianParams,
    ) -> Result<Self> {
        if n_samples == 0 {
            return Err(Error::invalid("n_samples must be at least 1".to_string()));
        }
        if !theta.is_finite() {
            return Err(Error::invalid(format!("theta must be finite, got {theta}")));
        }
        Ok(SimConfig {
            n_samples,
            seed,
            theta,
            cfg,
            rician,
        })
    }

    /// Channel vector of sample `index`:
    /// `h = sqrt(K/(K+1)) h_L(theta) + sqrt(1/(K+1)) h_N` with `h_N`
    /// i.i.d. circularly symmetric complex Gaussian of unit variance.
    /// Addressed positionally, so any sample can be regenerated alone.
    pub fn sample_channel(&self, index: u64) -> Vec<Complex64> {
        let los = self
            .cfg
            .los_vector(self.theta)
            .expect("theta validated at construction");
        self.sample_channel_with_los(index, &los)
    }

    fn sample_channel_with_los(&self, index: u64, los: &[Complex64]) -> Vec<Complex64> {
        match self.rician.k() {
            None => los.to_vec(),
            Some(k) => {
                let w_los = (k / (k + 1.0)).sqrt();
                let w_nlos = (0.5 / (k + 1.0)).sqrt(); // per real component
                let chunk = index / CHUNK_SAMPLES;
                let within = index % CHUNK_SAMPLES;
                let key = self.seed ^ mix64(chunk);
                let mut rng = CounterRng::at(key, within * 2 * self.cfg.m() as u64);
                los.iter()
                    .map(|l| {
                        let (z0, z1) = rng.next_normal_pair();
                        w_los * l + Complex64::new(w_nlos * z0, w_nlos * z1)
                    })
                    .collect()
            }
        }
    }

    /// Run the simulation and return the empirical CDFs of the beam and
    /// antenna selection gains. Chunks are processed in parallel; per-chunk
    /// seeding makes the resulting multiset identical to a serial run.
    pub fn run(&self) -> Result<(EmpiricalCdf, EmpiricalCdf)> {
        let threads = std::thread::available_parallelism()
            .map(|n| n.get())
            .unwrap_or(1);
        self.run_with_threads(threads)
    }

    fn run_with_threads(&self, threads: usize) -> Result<(EmpiricalCdf, EmpiricalCdf)> {
        let n = self.n_samples;
        let chunk_count = n.div_ceil(CHUNK_SAMPLES);
        let workers = threads.max(1).min(chunk_count as usize);
        let rows: Vec<Vec<Complex64>> = (1..=self.cfg.m())
            .map(|b| self.cfg.butler_row(b).expect("valid index"))
            .collect();
        let los = self
            .cfg
            .los_vector(self.theta)
            .expect("theta validated at construction");

        let mut beam = Vec::new();
        let mut antenna = Vec::new();
        beam.try_reserve_exact(n as usize)
            .map_err(|e| Error::numerical(format!("sample buffer allocation failed: {e}")))?;
        antenna
            .try_reserve_exact(n as usize)
            .map_err(|e| Error::numerical(format!("sample buffer allocation failed: {e}")))?;

        std::thread::scope(|s| {
            let (tx, rx) = mpsc::channel::<Vec<(f64, f64)>>();
            for worker in 0..workers {
                let tx = tx.clone();
                let rows = &rows;
                let los = &los;
                s.spawn(move || {
                    for chunk in (worker as u64..chunk_count).step_by(workers) {
                        let start = chunk * CHUNK_SAMPLES;
                        let count = CHUNK_SAMPLES.min(n - start);
                        let mut out = Vec::with_capacity(count as usize);
                        for i in 0..count {
                            let h = self.sample_channel_with_los(start + i, los);
                            out.push(gains_with_rows(&h, rows));
                        }
                        if tx.send(out).is_err() {
                            return;
                        }
                    }
                });
            }
            drop(tx);
            for batch in rx {
                for (b, a) in batch {
                    beam.push(b);
                    antenna.push(a);
                }
            }
        });

        Ok((
            EmpiricalCdf::from_samples(beam, self.seed)?,
            EmpiricalCdf::from_samples(antenna, self.seed)?,
        ))
    }
}

fn gains_with_rows(h: &[Complex64], rows: &[Vec<Complex64>]) -> (f64, f64) {
    let beam = rows
        .iter()
        .map(|row| {
            let ip: Complex64 = row.iter().zip(h).map(|(r, x)| r * x).sum();
            ip.norm_sqr()
        })
        .fold(0.0, f64::max);
    let antenna = h.iter().map(|z| z.norm_sqr()).fold(0.0, f64::max);
    (beam, antenna)
}

/// Beam and antenna selection gains of one channel realization:
/// `max_m |b_m^T h|^2` and `max_m |h_m|^2`.
pub fn selection_gains(h: &[Complex64], cfg: &ArrayConfig) -> Result<(f64, f64)> {
    if h.len() != cfg.m() {
        return Err(Error::invalid(format!(
            "channel vector length {} does not match M = {}",
            h.len(),
            cfg.m()
        )));
    }
    let rows: Vec<Vec<Complex64>> = (1..=cfg.m())
        .map(|b| cfg.butler_row(b).expect("valid index"))
        .collect();
    Ok(gains_with_rows(h, &rows))
}

/// Sorted Monte Carlo samples of a selection gain, with seed provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct EmpiricalCdf {
    samples: Vec<f64>,
    seed: u64,
}

impl EmpiricalCdf {
    pub fn from_samples(mut samples: Vec<f64>, seed: u64) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::invalid(
                "empirical CDF needs at least one sample".to_string(),
            ));
        }
        if samples.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("samples must be finite".to_string()));
        }
        samples.sort_by(|a, b| a.partial_cmp(b).expect("finite samples"));
        Ok(EmpiricalCdf { samples, seed })
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// `(#samples <= x) / n`.
    pub fn eval(&self, x: f64) -> f64 {
        let count = self.samples.partition_point(|&s| s <= x);
        count as f64 / self.samples.len() as f64
    }

    /// Sample mean, accumulated in sorted order so it is reproducible.
    pub fn mean(&self) -> f64 {
        self.samples.iter().sum::<f64>() / self.samples.len() as f64
    }

    /// Sample standard error of the mean.
    pub fn standard_error(&self) -> f64 {
        let n = self.samples.len() as f64;
        let mean = self.mean();
        let var = self
            .samples
            .iter()
            .map(|&s| (s - mean) * (s - mean))
            .sum::<f64>()
            / (n - 1.0).max(1.0);
        (var / n).sqrt()
    }

    /// Write the samples as a binary dump: magic, metadata header, then the
    /// sorted samples as little-endian f64.
    pub fn write_dump<W: Write>(&self, w: &mut W, meta: &DumpMeta) -> Result<()> {
        w.write_all(DUMP_MAGIC)?;
        w.write_all(&meta.kind.code().to_le_bytes())?;
        w.write_all(&(meta.m as u32).to_le_bytes())?;
        w.write_all(&meta.spacing.to_le_bytes())?;
        w.write_all(&meta.k.to_le_bytes())?;
        w.write_all(&meta.theta.to_le_bytes())?;
        w.write_all(&self.seed.to_le_bytes())?;
        w.write_all(&(self.samples.len() as u64).to_le_bytes())?;
        for s in &self.samples {
            w.write_all(&s.to_le_bytes())?;
        }
        Ok(())
    }

    /// Read a dump produced by [`EmpiricalCdf::write_dump`].
    pub fn read_dump<R: Read>(r: &mut R) -> Result<(Self, DumpMeta)> {
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != DUMP_MAGIC {
            return Err(Error::invalid("not a beamgain sample dump".to_string()));
        }
        let kind = GainKind::from_code(read_u32(r)?)?;
        let m = read_u32(r)? as usize;
        let spacing = f64::from_le_bytes(read_8(r)?);
        let k = f64::from_le_bytes(read_8(r)?);
        let theta = f64::from_le_bytes(read_8(r)?);
        let seed = u64::from_le_bytes(read_8(r)?);
        let n = u64::from_le_bytes(read_8(r)?);
        let mut samples = Vec::new();
        samples
            .try_reserve_exact(n as usize)
            .map_err(|e| Error::numerical(format!("dump allocation failed: {e}")))?;
        for _ in 0..n {
            samples.push(f64::from_le_bytes(read_8(r)?));
        }
        Ok((
            EmpiricalCdf::from_samples(samples, seed)?,
            DumpMeta {
                kind,
                m,
                spacing,
                k,
                theta,
            },
        ))
    }
}

const DUMP_MAGIC: &[u8; 8] = b"BGDUMP1\0";

/// Which selection gain a dump holds.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GainKind {
    Beam,
    Antenna,
}

impl GainKind {
    fn code(self) -> u32 {
        match self {
            GainKind::Beam => 0,
            GainKind::Antenna => 1,
        }
    }

    fn from_code(c: u32) -> Result<Self> {
        match c {
            0 => Ok(GainKind::Beam),
            1 => Ok(GainKind::Antenna),
            other => Err(Error::invalid(format!("unknown gain kind code {other}"))),
        }
    }
}

/// Dump metadata: which gain, and the parameters it was simulated at.
/// `k` is `f64::INFINITY` for the deterministic channel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DumpMeta {
    pub kind: GainKind,
    pub m: usize,
    pub spacing: f64,
    pub k: f64,
    pub theta: f64,
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_8<R: Read>(r: &mut R) -> Result<[u8; 8]> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(b)
}

/// Kolmogorov-Smirnov distance between an empirical CDF and an analytic CDF,
/// the supremum over both one-sided gaps at every sample point. The scan is
/// split across threads; each sample's gaps depend only on its rank, so the
/// result is independent of the split.
pub fn ks_distance(emp: &EmpiricalCdf, analytic: &GainCdf) -> Result<f64> {
    let samples = emp.samples();
    let n = samples.len() as f64;
    let workers = std::thread::available_parallelism()
        .map(|p| p.get())
        .unwrap_or(1)
        .min(samples.len());
    let span = samples.len().div_ceil(workers);
    let partials: Vec<Result<f64>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = w * span;
                let hi = ((w + 1) * span).min(samples.len());
                s.spawn(move || -> Result<f64> {
                    let mut d = 0.0f64;
                    for (i, &x) in samples.iter().enumerate().take(hi).skip(lo) {
                        let f = analytic.eval(x.max(0.0))?;
                        d = d.max(f - i as f64 / n).max((i + 1) as f64 / n - f);
                    }
                    Ok(d)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("ks worker panicked"))
            .collect()
    });
    let mut d = 0.0f64;
    for p in partials {
        d = d.max(p?);
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b} (tol {tol})");
    }

    fn cfg(m: usize) -> ArrayConfig {
        ArrayConfig::new(m, 0.5).unwrap()
    }

    fn sim(n: u64, seed: u64, theta: f64, m: usize, k: f64) -> SimConfig {
        SimConfig::new(n, seed, theta, cfg(m), RicianParams::new(k).unwrap()).unwrap()
    }

    #[test]
    fn counter_rng_is_positional() {
        let mut seq = CounterRng::new(42);
        let a: Vec<u64> = (0..10).map(|_| seq.next_u64()).collect();
        let mut jumped = CounterRng::at(42, 5);
        assert_eq!(jumped.next_u64(), a[5]);
        let mut again = CounterRng::new(42);
        let b: Vec<u64> = (0..10).map(|_| again.next_u64()).collect();
        assert_eq!(a, b);
    }

    #[test]
    fn uniform_in_half_open_interval() {
        let mut rng = CounterRng::new(7);
        for _ in 0..10_000 {
            let u = rng.next_uniform();
            assert!(u > 0.0 && u <= 1.0);
        }
    }

    #[test]
    fn channel_normalization() {
        // E[|h_i|^2] = 1 for any K
        for k in [0.0, 1.0, 7.0] {
            let s = sim(250_000, 11, 0.2, 4, k);
            let mut acc = 0.0;
            for i in 0..s.n_samples {
                let h = s.sample_channel(i);
                acc += h.iter().map(|z| z.norm_sqr()).sum::<f64>() / 4.0;
            }
            let mean = acc / s.n_samples as f64;
            close(mean, 1.0, 0.005);
        }
    }

    #[test]
    fn deterministic_channel_is_los() {
        let s = SimConfig::new(10, 3, 0.1, cfg(4), RicianParams::deterministic()).unwrap();
        let los = cfg(4).los_vector(0.1).unwrap();
        for i in 0..10 {
            assert_eq!(s.sample_channel(i), los);
        }
    }

    #[test]
    fn gains_at_beam_direction() {
        let c = cfg(4);
        let nu = c.first_beam_direction();
        let h = c.los_vector(nu).unwrap();
        let (beam, antenna) = selection_gains(&h, &c).unwrap();
        close(beam, 4.0, 1e-9);
        close(antenna, 1.0, 1e-12);
        assert!(selection_gains(&h[..2], &c).is_err());
    }

    #[test]
    fn beam_energies_sum_to_channel_norm() {
        let c = cfg(8);
        let s = sim(1, 5, 0.3, 8, 1.0);
        let h = s.sample_channel(0);
        let hn: f64 = h.iter().map(|z| z.norm_sqr()).sum();
        let total: f64 = (1..=8)
            .map(|b| {
                let row = c.butler_row(b).unwrap();
                let ip: Complex64 = row.iter().zip(&h).map(|(r, x)| r * x).sum();
                ip.norm_sqr()
            })
            .sum();
        close(total, hn, 1e-9);
    }

    #[test]
    fn runs_are_deterministic_and_thread_invariant() {
        let s = sim(70_000, 99, 0.1, 4, 1.0);
        let (b1, a1) = s.run_with_threads(1).unwrap();
        let (b2, a2) = s.run_with_threads(4).unwrap();
        assert_eq!(b1.samples(), b2.samples());
        assert_eq!(a1.samples(), a2.samples());
        let (b3, _) = s.run().unwrap();
        assert_eq!(b1.samples(), b3.samples());
        // a different seed must give a different stream
        let s2 = sim(70_000, 100, 0.1, 4, 1.0);
        let (b4, _) = s2.run().unwrap();
        assert_ne!(b1.samples(), b4.samples());
    }

    #[test]
    fn empirical_cdf_eval() {
        let e = EmpiricalCdf::from_samples(vec![3.0, 1.0, 2.0], 0).unwrap();
        assert_eq!(e.samples(), &[1.0, 2.0, 3.0]);
        assert_eq!(e.eval(0.5), 0.0);
        close(e.eval(1.0), 1.0 / 3.0, 1e-15);
        close(e.eval(2.5), 2.0 / 3.0, 1e-15);
        assert_eq!(e.eval(3.0), 1.0);
        assert!(EmpiricalCdf::from_samples(vec![], 0).is_err());
        assert!(EmpiricalCdf::from_samples(vec![f64::NAN], 0).is_err());
    }

    #[test]
    fn ks_from_own_quantiles_is_half_step() {
        let k0 = RicianParams::new(0.0).unwrap();
        let analytic = GainCdf::BeamSelection {
            cfg: cfg(2),
            rician: k0,
            theta: 0.0,
        };
        let n = 500;
        let samples: Vec<f64> = (1..=n)
            .map(|i| analytic.quantile((i as f64 - 0.5) / n as f64).unwrap())
            .collect();
        let emp = EmpiricalCdf::from_samples(samples, 0).unwrap();
        let d = ks_distance(&emp, &analytic).unwrap();
        assert!(d <= 0.5 / n as f64 + 1e-9, "d = {d}");
    }

    #[test]
    fn ks_of_shifted_exponential() {
        // unit exponential samples shifted by +1 against the unshifted CDF:
        // the gap approaches 1 - e^{-1}
        let k0 = RicianParams::new(0.0).unwrap();
        let unit_exp = GainCdf::BoundWPow {
            rician: k0,
            exponent: 1,
        };
        let n = 4000usize;
        let samples: Vec<f64> = (1..=n)
            .map(|i| {
                let p = (i as f64 - 0.5) / n as f64;
                -(1.0 - p).ln() + 1.0
            })
            .collect();
        let emp = EmpiricalCdf::from_samples(samples.clone(), 0).unwrap();
        let d = ks_distance(&emp, &unit_exp).unwrap();
        // brute-force enumeration oracle over the same gap definition
        let mut brute = 0.0f64;
        let mut sorted = samples;
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (i, &x) in sorted.iter().enumerate() {
            let f = 1.0 - (-x).exp();
            brute = brute
                .max(f - i as f64 / n as f64)
                .max((i + 1) as f64 / n as f64 - f);
        }
        close(d, brute, 1e-12);
        close(d, 1.0 - (-1.0f64).exp(), 2.0 / n as f64);
        assert!((0.0..=1.0).contains(&d));
    }

    #[test]
    fn simulation_matches_analytic_cdf() {
        let n = 20_000u64;
        let tol = 1.5 * 1.36 / (n as f64).sqrt();
        let s = sim(n, 2024, 0.0, 4, 1.0);
        let (beam, antenna) = s.run().unwrap();
        let f = GainCdf::BeamSelection {
            cfg: s.cfg,
            rician: s.rician,
            theta: 0.0,
        };
        let g = GainCdf::AntennaSelection {
            cfg: s.cfg,
            rician: s.rician,
        };
        assert!(ks_distance(&beam, &f).unwrap() <= tol);
        assert!(ks_distance(&antenna, &g).unwrap() <= tol);

        // sample-level stochastic dominance (antenna CDF above beam CDF)
        for i in 1..40 {
            let x = i as f64 * 0.25;
            assert!(antenna.eval(x) >= beam.eval(x) - 2.0 * tol);
        }
    }

    #[test]
    fn empirical_dominance_across_parameter_grid() {
        // antenna empirical CDF sits above the beam empirical CDF up to KS
        // noise for every (M, K, theta) combination
        let n = 10_000u64;
        let tol = 1.36 / (n as f64).sqrt();
        for m in [4usize, 8] {
            for k in [0.5, 2.0] {
                let nu = cfg(m).first_beam_direction();
                for theta in [0.0, 0.5 * nu] {
                    let s = SimConfig::new(n, 9090, theta, cfg(m), RicianParams::new(k).unwrap())
                        .unwrap();
                    let (beam, antenna) = s.run().unwrap();
                    for i in 1..30 {
                        let x = i as f64 * 0.3;
                        assert!(
                            antenna.eval(x) >= beam.eval(x) - 2.0 * tol,
                            "M={m} K={k} theta={theta} x={x}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn mirror_angle_same_distribution() {
        let n = 20_000u64;
        let tol = 1.5 * 1.36 / (n as f64).sqrt();
        let c = cfg(4);
        let theta = 0.9; // outside [0, nu]
        let folded = c.fold_to_first_interval(theta).unwrap();
        let s = sim(n, 31337, theta, 4, 1.0);
        let (beam, _) = s.run().unwrap();
        let f_folded = GainCdf::BeamSelection {
            cfg: c,
            rician: s.rician,
            theta: folded,
        };
        assert!(ks_distance(&beam, &f_folded).unwrap() <= tol);
    }

    #[test]
    fn simulated_mean_matches_quadrature() {
        let n = 40_000u64;
        let s = sim(n, 808, 0.0, 4, 1.0);
        let (beam, _) = s.run().unwrap();
        let analytic = crate::perf::expected_gain(0.0, &s.cfg, &s.rician).unwrap();
        let se = beam.standard_error();
        assert!(
            (beam.mean() - analytic).abs() <= 3.0 * se,
            "mean {} vs {} (se {se})",
            beam.mean(),
            analytic
        );
    }

    #[test]
    fn dump_round_trip() {
        let s = sim(1000, 5150, 0.05, 4, 2.0);
        let (beam, _) = s.run().unwrap();
        let meta = DumpMeta {
            kind: GainKind::Beam,
            m: 4,
            spacing: 0.5,
            k: 2.0,
            theta: 0.05,
        };
        let mut buf = Vec::new();
        beam.write_dump(&mut buf, &meta).unwrap();
        let (back, meta_back) = EmpiricalCdf::read_dump(&mut buf.as_slice()).unwrap();
        assert_eq!(back, beam);
        assert_eq!(meta_back, meta);
        assert!(EmpiricalCdf::read_dump(&mut &b"not a dump"[..]).is_err());
    }
}
