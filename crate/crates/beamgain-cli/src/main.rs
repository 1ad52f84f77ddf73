//! `beamgain`: beam selection gain analysis over Rician fading, as CSV
//! tables.
//!
//! Every subcommand is deterministic given its full flag set (including the
//! seed). Output schema: line one is a provenance comment
//! `# beamgain v1 <subcommand> <flags>`, line two the column headers, then
//! data rows with floats at 12 significant digits. Angles are accepted in
//! degrees or as the symbols `zero` / `nu`; K-factors and SNR in dB
//! (`--K-db -inf` gives Rayleigh fading, `--K-db inf` the deterministic
//! channel).
//!
//! Exit codes: 0 success, 2 usage error, 3 numerical failure.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};

use beamgain::beams::ArrayConfig;
use beamgain::dist::{
    antenna_selection_cdf, beam_selection_cdf, bound_q, bound_w, selection_quantile, theta0_bounds,
    GainCdf, RicianParams,
};
use beamgain::mc::{ks_distance, DumpMeta, GainKind, SimConfig};
use beamgain::perf::{
    antenna_expected_gain, ergodic_capacity, ergodic_capacity_approx, expected_gain,
    growth_diagnostics, ExtremeAngle,
};
use beamgain::Error;

#[derive(Parser)]
#[command(
    name = "beamgain",
    version,
    about = "Beam selection gain analysis for Butler beamforming over Rician fading"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Per-beam LOS gains swept over azimuth.
    BeamPattern(BeamPatternArgs),
    /// Exact selection-gain CDFs with their stochastic bounds.
    Cdf(CdfArgs),
    /// Ergodic capacity versus M: quadrature-exact and closed-form columns.
    Capacity(CapacityArgs),
    /// Seeded Monte Carlo simulation against the analytic CDFs.
    Simulate(SimulateArgs),
    /// Order-of-growth diagnostics of means and capacities.
    Growth(GrowthArgs),
}

/// Azimuth argument: degrees, or the symbols `zero` / `nu`.
#[derive(Clone, Copy, Debug)]
enum ThetaArg {
    Zero,
    Nu,
    Degrees(f64),
}

impl FromStr for ThetaArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "zero" => Ok(ThetaArg::Zero),
            "nu" => Ok(ThetaArg::Nu),
            other => other
                .parse::<f64>()
                .map(ThetaArg::Degrees)
                .map_err(|_| format!("expected degrees or one of `zero`, `nu`, got `{other}`")),
        }
    }
}

impl std::fmt::Display for ThetaArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ThetaArg::Zero => write!(f, "zero"),
            ThetaArg::Nu => write!(f, "nu"),
            ThetaArg::Degrees(d) => write!(f, "{d}"),
        }
    }
}

impl ThetaArg {
    fn radians(&self, cfg: &ArrayConfig) -> f64 {
        match self {
            ThetaArg::Zero => 0.0,
            ThetaArg::Nu => cfg.first_beam_direction(),
            ThetaArg::Degrees(d) => d.to_radians(),
        }
    }
}

/// K-factor in dB; `-inf` is Rayleigh, `inf` the deterministic channel.
#[derive(Clone, Copy, Debug)]
struct KArg(f64);

impl FromStr for KArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.parse::<f64>()
            .map(KArg)
            .map_err(|_| format!("expected a K-factor in dB (or inf/-inf), got `{s}`"))
    }
}

impl std::fmt::Display for KArg {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl KArg {
    fn rician(&self) -> beamgain::Result<RicianParams> {
        if self.0 == f64::INFINITY {
            Ok(RicianParams::deterministic())
        } else {
            RicianParams::new(10.0f64.powf(self.0 / 10.0))
        }
    }
}

#[derive(Args)]
struct BeamPatternArgs {
    /// Antenna/beam count.
    #[arg(long = "M", default_value_t = 4)]
    m: usize,
    /// Normalized element spacing d/lambda_c.
    #[arg(long, default_value_t = 0.5)]
    spacing: f64,
    /// Number of azimuth grid points over [0, nu].
    #[arg(long = "grid-points", default_value_t = 181)]
    grid_points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CdfArgs {
    #[arg(long = "M", default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 0.5)]
    spacing: f64,
    /// Rician K-factor in dB.
    #[arg(long = "K-db", default_value_t = KArg(0.0), allow_hyphen_values = true)]
    k_db: KArg,
    /// Azimuth: degrees or `zero` / `nu`.
    #[arg(long, default_value_t = ThetaArg::Nu, allow_hyphen_values = true)]
    theta: ThetaArg,
    #[arg(long = "grid-points", default_value_t = 200)]
    grid_points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CapacityArgs {
    /// Ascending list of antenna counts.
    #[arg(
        long = "M-list",
        value_delimiter = ',',
        default_value = "2,4,8,16,32,64"
    )]
    m_list: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    spacing: f64,
    #[arg(long = "K-db", default_value_t = KArg(0.0), allow_hyphen_values = true)]
    k_db: KArg,
    /// Average SNR in dB.
    #[arg(long = "rho-db", default_value_t = 5.0, allow_hyphen_values = true)]
    rho_db: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long = "M", default_value_t = 4)]
    m: usize,
    #[arg(long, default_value_t = 0.5)]
    spacing: f64,
    #[arg(long = "K-db", default_value_t = KArg(0.0), allow_hyphen_values = true)]
    k_db: KArg,
    #[arg(long, default_value_t = ThetaArg::Zero, allow_hyphen_values = true)]
    theta: ThetaArg,
    /// Number of channel samples (at least 1000).
    #[arg(long, default_value_t = 1_000_000)]
    n: u64,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long = "grid-points", default_value_t = 200)]
    grid_points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Write binary sample dumps to `<base>.beam.bin` / `<base>.antenna.bin`.
    #[arg(long)]
    dump: Option<PathBuf>,
}

#[derive(Args)]
struct GrowthArgs {
    #[arg(
        long = "M-list",
        value_delimiter = ',',
        default_value = "2,4,8,16,32,64,128"
    )]
    m_list: Vec<usize>,
    #[arg(long, default_value_t = 0.5)]
    spacing: f64,
    #[arg(long = "K-db", default_value_t = KArg(0.0), allow_hyphen_values = true)]
    k_db: KArg,
    #[arg(long = "rho-db", default_value_t = 5.0, allow_hyphen_values = true)]
    rho_db: f64,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::InvalidParameter(_) => 2,
                _ => 3,
            })
        }
    }
}

fn run(cli: Cli) -> beamgain::Result<()> {
    match cli.cmd {
        Cmd::BeamPattern(args) => cmd_beam_pattern(args),
        Cmd::Cdf(args) => cmd_cdf(args),
        Cmd::Capacity(args) => cmd_capacity(args),
        Cmd::Simulate(args) => cmd_simulate(args),
        Cmd::Growth(args) => cmd_growth(args),
    }
}

// ── CSV output ───────────────────────────────────────────────────────────────

struct CsvOut {
    sink: Box<dyn Write>,
}

impl CsvOut {
    fn open(out: &Option<PathBuf>, provenance: &str, headers: &[&str]) -> beamgain::Result<Self> {
        let sink: Box<dyn Write> = match out {
            Some(path) => Box::new(BufWriter::new(File::create(path)?)),
            None => Box::new(std::io::stdout().lock()),
        };
        let mut this = CsvOut { sink };
        writeln!(this.sink, "# beamgain v1 {provenance}")?;
        let header_line: Vec<String> = headers.iter().map(|h| csv_field(h)).collect();
        writeln!(this.sink, "{}", header_line.join(","))?;
        Ok(this)
    }

    fn row(&mut self, fields: &[String]) -> beamgain::Result<()> {
        let escaped: Vec<String> = fields.iter().map(|f| csv_field(f)).collect();
        writeln!(self.sink, "{}", escaped.join(","))?;
        Ok(())
    }

    fn comment(&mut self, line: &str) -> beamgain::Result<()> {
        writeln!(self.sink, "# {line}")?;
        Ok(())
    }

    fn finish(mut self) -> beamgain::Result<()> {
        self.sink.flush()?;
        Ok(())
    }
}

/// RFC 4180 quoting: only fields containing a comma, quote, or newline are
/// wrapped (never the numeric payload).
fn csv_field(raw: &str) -> String {
    if raw.contains(',') || raw.contains('"') || raw.contains('\n') {
        format!("\"{}\"", raw.replace('"', "\"\""))
    } else {
        raw.to_string()
    }
}

/// Floats at 12 significant digits.
fn num(v: f64) -> String {
    format!("{v:.11e}")
}

fn require(cond: bool, msg: &str) -> beamgain::Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidParameter(msg.to_string()))
    }
}

// ── Subcommands ──────────────────────────────────────────────────────────────

fn cmd_beam_pattern(args: BeamPatternArgs) -> beamgain::Result<()> {
    require(args.grid_points >= 2, "grid-points must be at least 2")?;
    let cfg = ArrayConfig::new(args.m, args.spacing)?;
    let nu_deg = cfg.first_beam_direction().to_degrees();
    let provenance = format!(
        "beam-pattern --M {} --spacing {} --grid-points {}",
        args.m, args.spacing, args.grid_points
    );
    let mut headers = vec!["theta_deg".to_string()];
    headers.extend((1..=args.m).map(|b| format!("gamma_{b}")));
    let header_refs: Vec<&str> = headers.iter().map(|s| s.as_str()).collect();
    let mut out = CsvOut::open(&args.out, &provenance, &header_refs)?;
    for i in 0..args.grid_points {
        let theta_deg = nu_deg * i as f64 / (args.grid_points - 1) as f64;
        let pattern = cfg.beam_pattern(theta_deg.to_radians())?;
        let mut fields = vec![num(theta_deg)];
        fields.extend(pattern.gammas().iter().map(|&g| num(g)));
        out.row(&fields)?;
    }
    out.finish()
}

fn cmd_cdf(args: CdfArgs) -> beamgain::Result<()> {
    require(args.grid_points >= 2, "grid-points must be at least 2")?;
    let cfg = ArrayConfig::new(args.m, args.spacing)?;
    let rician = args.k_db.rician()?;
    let theta = args.theta.radians(&cfg);
    let nu = cfg.first_beam_direction();
    let with_theta0 = args.m >= 4;
    let provenance = format!(
        "cdf --M {} --spacing {} --K-db {} --theta {} --grid-points {}",
        args.m, args.spacing, args.k_db, args.theta, args.grid_points
    );
    let mut headers = vec!["x", "f_beam", "f_antenna", "q_m", "q_m_w_pow"];
    if with_theta0 {
        headers.push("q2_am");
        headers.push("theta0_lower");
    }
    let mut out = CsvOut::open(&args.out, &provenance, &headers)?;

    let x_max = match rician.k() {
        Some(_) => selection_quantile(0.999, nu, &cfg, &rician)?,
        None => 1.05 * args.m as f64,
    };
    for i in 0..args.grid_points {
        let x = x_max * i as f64 / (args.grid_points - 1) as f64;
        let mut fields = vec![
            num(x),
            num(beam_selection_cdf(x, theta, &cfg, &rician)?),
            num(antenna_selection_cdf(x, &cfg, &rician)?),
            num(bound_q(x, args.m as f64, &rician)?),
            num(bound_q(x, args.m as f64, &rician)? * bound_w(x, &rician)?.powi(args.m as i32 - 1)),
        ];
        if with_theta0 {
            let (upper, lower) = theta0_bounds(x, &cfg, &rician)?;
            fields.push(num(upper));
            fields.push(num(lower));
        }
        out.row(&fields)?;
    }
    out.finish()
}

fn cmd_capacity(args: CapacityArgs) -> beamgain::Result<()> {
    let rician = args.k_db.rician()?;
    let rho = 10.0f64.powf(args.rho_db / 10.0);
    let m_csv = args
        .m_list
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let provenance = format!(
        "capacity --M-list {} --spacing {} --K-db {} --rho-db {}",
        m_csv, args.spacing, args.k_db, args.rho_db
    );
    require(
        !args.m_list.is_empty() && args.m_list.windows(2).all(|w| w[0] < w[1]),
        "M-list must be strictly ascending and nonempty",
    )?;
    let mut out = CsvOut::open(
        &args.out,
        &provenance,
        &[
            "M",
            "exact_nu",
            "approx_nu",
            "exact_0",
            "approx_0",
            "gap_nu",
            "gap_0",
        ],
    )?;
    for &m in &args.m_list {
        let cfg = ArrayConfig::new(m, args.spacing)?;
        let nu = cfg.first_beam_direction();
        let exact_nu = ergodic_capacity(nu, &cfg, &rician, rho)?;
        let approx_nu = ergodic_capacity_approx(ExtremeAngle::BeamDirection, &cfg, &rician, rho)?;
        let exact_0 = ergodic_capacity(0.0, &cfg, &rician, rho)?;
        let approx_0 = ergodic_capacity_approx(ExtremeAngle::Zero, &cfg, &rician, rho)?;
        out.row(&[
            m.to_string(),
            num(exact_nu),
            num(approx_nu),
            num(exact_0),
            num(approx_0),
            num((exact_nu - approx_nu).abs()),
            num((exact_0 - approx_0).abs()),
        ])?;
    }
    out.finish()
}

fn cmd_simulate(args: SimulateArgs) -> beamgain::Result<()> {
    require(args.n >= 1000, "simulate requires --n of at least 1000")?;
    require(args.grid_points >= 2, "grid-points must be at least 2")?;
    let cfg = ArrayConfig::new(args.m, args.spacing)?;
    let rician = args.k_db.rician()?;
    let theta = args.theta.radians(&cfg);
    let sim = SimConfig::new(args.n, args.seed, theta, cfg, rician)?;
    let (beam, antenna) = sim.run()?;

    let f_beam = GainCdf::BeamSelection { cfg, rician, theta };
    let g_ant = GainCdf::AntennaSelection { cfg, rician };
    let ks_beam = ks_distance(&beam, &f_beam)?;
    let ks_antenna = ks_distance(&antenna, &g_ant)?;
    let mean_beam_analytic = expected_gain(theta, &cfg, &rician)?;
    let mean_antenna_analytic = antenna_expected_gain(&cfg, &rician)?;

    let provenance = format!(
        "simulate --M {} --spacing {} --K-db {} --theta {} --n {} --seed {} --grid-points {}",
        args.m, args.spacing, args.k_db, args.theta, args.n, args.seed, args.grid_points
    );
    let mut out = CsvOut::open(
        &args.out,
        &provenance,
        &[
            "x",
            "empirical_beam",
            "analytic_beam",
            "empirical_antenna",
            "analytic_antenna",
        ],
    )?;
    let x_max = beam
        .samples()
        .last()
        .copied()
        .unwrap_or(1.0)
        .max(antenna.samples().last().copied().unwrap_or(1.0));
    for i in 0..args.grid_points {
        let x = x_max * i as f64 / (args.grid_points - 1) as f64;
        out.row(&[
            num(x),
            num(beam.eval(x)),
            num(f_beam.eval(x)?),
            num(antenna.eval(x)),
            num(g_ant.eval(x)?),
        ])?;
    }
    let mut summary = String::new();
    let _ = writeln!(summary, "ks_beam {}", num(ks_beam));
    let _ = writeln!(summary, "ks_antenna {}", num(ks_antenna));
    let _ = writeln!(summary, "mean_beam_empirical {}", num(beam.mean()));
    let _ = writeln!(summary, "mean_beam_analytic {}", num(mean_beam_analytic));
    let _ = writeln!(summary, "se_beam {}", num(beam.standard_error()));
    let _ = writeln!(summary, "mean_antenna_empirical {}", num(antenna.mean()));
    let _ = writeln!(
        summary,
        "mean_antenna_analytic {}",
        num(mean_antenna_analytic)
    );
    let _ = writeln!(summary, "se_antenna {}", num(antenna.standard_error()));
    for line in summary.lines() {
        out.comment(line)?;
    }
    out.finish()?;
    eprint!("{summary}");

    if let Some(base) = &args.dump {
        let k = rician.k().unwrap_or(f64::INFINITY);
        for (ecdf, kind, ext) in [
            (&beam, GainKind::Beam, "beam.bin"),
            (&antenna, GainKind::Antenna, "antenna.bin"),
        ] {
            let meta = DumpMeta {
                kind,
                m: args.m,
                spacing: args.spacing,
                k,
                theta,
            };
            let mut path = base.as_os_str().to_owned();
            path.push(".");
            path.push(ext);
            let mut file = BufWriter::new(File::create(PathBuf::from(path))?);
            ecdf.write_dump(&mut file, &meta)?;
            file.flush()?;
        }
    }
    Ok(())
}

fn cmd_growth(args: GrowthArgs) -> beamgain::Result<()> {
    let rician = args.k_db.rician()?;
    let rho = 10.0f64.powf(args.rho_db / 10.0);
    let m_csv = args
        .m_list
        .iter()
        .map(|m| m.to_string())
        .collect::<Vec<_>>()
        .join(",");
    let provenance = format!(
        "growth --M-list {} --spacing {} --K-db {} --rho-db {}",
        m_csv, args.spacing, args.k_db, args.rho_db
    );
    let rows = growth_diagnostics(&args.m_list, args.spacing, &rician, rho)?;
    let mut out = CsvOut::open(
        &args.out,
        &provenance,
        &[
            "M",
            "beam_mean_nu",
            "beam_mean_zero",
            "antenna_mean",
            "beam_mean_nu_over_m",
            "beam_mean_zero_over_m",
            "antenna_mean_over_ln_m",
            "beam_cap_nu",
            "beam_cap_zero",
            "antenna_cap",
            "beam_cap_nu_over_log2_m",
            "beam_cap_zero_over_log2_m",
            "antenna_cap_over_log2_m",
        ],
    )?;
    for r in &rows {
        out.row(&[
            r.m.to_string(),
            num(r.beam_mean_nu),
            num(r.beam_mean_zero),
            num(r.antenna_mean),
            num(r.beam_mean_nu_over_m),
            num(r.beam_mean_zero_over_m),
            num(r.antenna_mean_over_ln_m),
            num(r.beam_cap_nu),
            num(r.beam_cap_zero),
            num(r.antenna_cap),
            num(r.beam_cap_nu_over_log2_m),
            num(r.beam_cap_zero_over_log2_m),
            num(r.antenna_cap_over_log2_m),
        ])?;
    }
    out.finish()
}
