//! Command-line surface: every computation as a reproducible CSV/JSON
//! artifact. Exit codes: 0 success, 2 invalid input, 3 verification defect
//! over tolerance.

use clap::{Args, Parser, Subcommand, ValueEnum};
use ewalk::cmv::{self, PairSequence, VerblunskyPair};
use ewalk::dynamics;
use ewalk::floquet::{self, hat_dispersion, DispersionProfile};
use ewalk::sieve;
use ewalk::{CoinSequence, RationalField, SU2Coin, UnitaryCoin, WalkKind, WalkSpec, WaveFunction};
use num_complex::Complex64 as C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::f64::consts::TAU;
use std::io::Write;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "ewalk",
    about = "Discrete-time quantum walks in rational electric fields: \
             transport, revivals, spectra, sieving, CMV matrices",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum KindArg {
    U,
    W,
}

impl From<KindArg> for WalkKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::U => WalkKind::ShiftCoin,
            KindArg::W => WalkKind::SplitStep,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct OutputArgs {
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<std::path::PathBuf>,
    /// Output format (defaults to JSON for scalar results, CSV for tables).
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

#[derive(Args)]
struct ModelArgs {
    /// Walk family: U (shift-coin) or W (split-step).
    #[arg(long, value_enum, ignore_case = true)]
    kind: KindArg,
    /// Coin: `hadamard`, `abs=A[,arg=P]`, or `a=RE+IMi,b=RE+IMi`.
    #[arg(long, default_value = "hadamard")]
    coin: String,
    /// Field as n/m in units of 2*pi (`--field 1/5` means Phi/(2*pi) = 1/5).
    #[arg(long)]
    field: String,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve walks and emit label,t,mean,sigma,revival_error rows.
    Evolve {
        /// Coin specification.
        #[arg(long, default_value = "hadamard")]
        coin: String,
        /// One or more fields n/m; each is run for the requested kinds.
        #[arg(long, required = true)]
        field: Vec<String>,
        /// Restrict to one walk family (default: both).
        #[arg(long, value_enum, ignore_case = true)]
        kind: Option<KindArg>,
        /// Number of time steps.
        #[arg(long, default_value_t = 100)]
        steps: u64,
        /// Initial spinor at the origin: `symmetric` = (1, i)/sqrt2, `plus`, `minus`.
        #[arg(long, default_value = "symmetric")]
        state: String,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Dispersion table theta, omega_plus, omega_minus, |d omega/d theta|.
    Dispersion {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 256)]
        theta_samples: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Maximal group velocity: closed form, numeric maximization, legacy bound.
    Velocity {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Revival defect: numeric sup vs closed form, with phase and period.
    Revival {
        #[command(flatten)]
        model: ModelArgs,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Spectral bands as arcs start,end,multiplicity on the unit circle.
    Spectrum {
        #[command(flatten)]
        model: ModelArgs,
        #[arg(long, default_value_t = 256)]
        theta_samples: usize,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify U^2 = W (+) W~ (and its electric version) on rings.
    SieveCheck {
        /// Coin for the constant-coin and electric checks.
        #[arg(long, default_value = "hadamard")]
        coin: String,
        /// Optional field n/m for the electric identity.
        #[arg(long)]
        field: Option<String>,
        /// Ring size in cells (default 16; lcm(2m, 4) for the electric check).
        #[arg(long)]
        cells: Option<usize>,
        /// Number of random position-dependent coin configurations.
        #[arg(long, default_value_t = 10)]
        random: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Verify the GECMV stencil and the split-step correspondence.
    CmvCheck {
        /// Scalar ring size (even).
        #[arg(long, default_value_t = 64)]
        sites: usize,
        /// Number of random Verblunsky sequences.
        #[arg(long, default_value_t = 10)]
        random: usize,
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Continued fraction of p/q with convergents.
    Cf {
        /// Fraction p/q.
        fraction: String,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn parse_complex(s: &str) -> Result<C64, String> {
    // forms: "0.5", "0.5+0.3i", "-0.5-0.3i", "0.3i"
    let s = s.trim().replace(' ', "");
    if let Ok(re) = s.parse::<f64>() {
        return Ok(C64::new(re, 0.0));
    }
    let body = s
        .strip_suffix('i')
        .ok_or_else(|| format!("cannot parse complex number `{s}`"))?;
    let bytes = body.as_bytes();
    for i in (1..bytes.len()).rev() {
        let c = bytes[i] as char;
        if (c == '+' || c == '-') && !matches!(bytes[i - 1] as char, 'e' | 'E') {
            let re: f64 = body[..i].parse().map_err(|_| format!("bad real part in `{s}`"))?;
            let imtxt = &body[i..];
            let im: f64 = match imtxt {
                "+" => 1.0,
                "-" => -1.0,
                _ => imtxt.parse().map_err(|_| format!("bad imaginary part in `{s}`"))?,
            };
            return Ok(C64::new(re, im));
        }
    }
    let im: f64 = body.parse().map_err(|_| format!("cannot parse complex number `{s}`"))?;
    Ok(C64::new(0.0, im))
}

fn parse_coin(s: &str) -> Result<SU2Coin, String> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("hadamard") {
        return Ok(SU2Coin::hadamard());
    }
    let mut abs_a = None;
    let mut arg_a = None;
    let mut a = None;
    let mut b = None;
    for part in s.split(',') {
        let (key, val) = part
            .split_once('=')
            .ok_or_else(|| format!("coin component `{part}` is not key=value"))?;
        match key.trim() {
            "abs" => abs_a = Some(val.parse::<f64>().map_err(|e| e.to_string())?),
            "arg" => arg_a = Some(val.parse::<f64>().map_err(|e| e.to_string())?),
            "a" => a = Some(parse_complex(val)?),
            "b" => b = Some(parse_complex(val)?),
            other => return Err(format!("unknown coin component `{other}`")),
        }
    }
    match (abs_a, arg_a, a, b) {
        (Some(abs), arg, None, None) => {
            SU2Coin::from_modulus_phase(abs, arg.unwrap_or(0.0)).map_err(|e| e.to_string())
        }
        (None, None, Some(a), Some(b)) => SU2Coin::new(a, b).map_err(|e| e.to_string()),
        _ => Err(format!(
            "coin `{s}` must be `hadamard`, `abs=A[,arg=P]`, or `a=..,b=..`"
        )),
    }
}

fn parse_field(s: &str) -> Result<RationalField, String> {
    let (n, m) = s
        .trim()
        .split_once('/')
        .ok_or_else(|| format!("field `{s}` is not of the form n/m"))?;
    let n: i64 = n.trim().parse().map_err(|_| format!("bad numerator in `{s}`"))?;
    let m: i64 = m.trim().parse().map_err(|_| format!("bad denominator in `{s}`"))?;
    RationalField::plain(n, m).map_err(|e| e.to_string())
}

fn parse_state(s: &str) -> Result<WaveFunction, String> {
    let sq = std::f64::consts::FRAC_1_SQRT_2;
    match s {
        "symmetric" => Ok(WaveFunction::localized(0, [C64::new(sq, 0.0), C64::new(0.0, sq)])),
        "plus" => Ok(WaveFunction::localized(0, [C64::new(1.0, 0.0), C64::new(0.0, 0.0)])),
        "minus" => Ok(WaveFunction::localized(0, [C64::new(0.0, 0.0), C64::new(1.0, 0.0)])),
        other => Err(format!("unknown state `{other}` (symmetric, plus, minus)")),
    }
}

/// Full double precision: 17 significant digits, bit-stable fixtures.
fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

fn write_out(out: &OutputArgs, text: &str) -> Result<(), String> {
    match &out.output {
        Some(path) => std::fs::write(path, text).map_err(|e| e.to_string()),
        None => std::io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| e.to_string()),
    }
}

fn emit<T: Serialize>(
    out: &OutputArgs,
    value: &T,
    csv: Option<String>,
    default_csv: bool,
) -> Result<(), String> {
    let format = out
        .format
        .unwrap_or(if default_csv { FormatArg::Csv } else { FormatArg::Json });
    match format {
        FormatArg::Json => {
            let mut text = serde_json::to_string_pretty(value).map_err(|e| e.to_string())?;
            text.push('\n');
            write_out(out, &text)
        }
        FormatArg::Csv => {
            let text = csv.ok_or("this result has no CSV form; use --format json")?;
            write_out(out, &text)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode, String> {
    match cmd {
        Command::Velocity { model, out } => {
            let coin = parse_coin(&model.coin)?;
            let field = parse_field(&model.field)?;
            let report = floquet::max_velocity(model.kind.into(), coin, field);
            emit(&out, &report, None, false)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Revival { model, out } => {
            let coin = parse_coin(&model.coin)?;
            let field = parse_field(&model.field)?;
            let report = floquet::revival_defect(model.kind.into(), coin, field);
            emit(&out, &report, None, false)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Spectrum { model, theta_samples, out } => {
            let coin = parse_coin(&model.coin)?;
            let field = parse_field(&model.field)?;
            if theta_samples < 64 {
                return Err("need --theta-samples >= 64".into());
            }
            let bands = floquet::spectrum_bands(model.kind.into(), coin, field, theta_samples);
            let mut csv = String::from("start,end,multiplicity\n");
            for arc in bands.arcs() {
                csv.push_str(&format!(
                    "{},{},{}\n",
                    fmt_f64(arc.start),
                    fmt_f64(arc.end),
                    arc.multiplicity
                ));
            }
            emit(&out, &bands, Some(csv), true)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Dispersion { model, theta_samples, out } => {
            let coin = parse_coin(&model.coin)?;
            let field = parse_field(&model.field)?;
            if theta_samples < 2 {
                return Err("need --theta-samples >= 2".into());
            }
            let kind: WalkKind = model.kind.into();
            // for the split-step walk the emitted eigenphases are the m-step
            // regrouped ones entering the band formula
            let (profile, scale) = match kind {
                WalkKind::ShiftCoin => (DispersionProfile::for_shift_coin(coin, field), 1u32),
                WalkKind::SplitStep => hat_dispersion(coin, field),
            };
            let mut csv = String::from("theta,omega_plus,omega_minus,abs_velocity\n");
            let mut rows = Vec::with_capacity(theta_samples);
            for k in 0..theta_samples {
                let theta = TAU * k as f64 / theta_samples as f64;
                let (wp, wm) = profile.omega(theta);
                let v = profile.group_velocity_abs(theta);
                let (wp, wm, v) = (scale as f64 * wp, scale as f64 * wm, scale as f64 * v);
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    fmt_f64(theta),
                    fmt_f64(wp),
                    fmt_f64(wm),
                    fmt_f64(v)
                ));
                rows.push((theta, wp, wm, v));
            }
            #[derive(Serialize)]
            struct DispersionTable {
                rows: Vec<(f64, f64, f64, f64)>,
            }
            emit(&out, &DispersionTable { rows }, Some(csv), true)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Evolve { coin, field, kind, steps, state, out } => {
            let coin = parse_coin(&coin)?;
            let psi0 = parse_state(&state)?;
            if steps == 0 {
                return Err("need --steps >= 1".into());
            }
            let fields: Vec<RationalField> =
                field.iter().map(|f| parse_field(f)).collect::<Result<_, _>>()?;
            let kinds: Vec<WalkKind> = match kind {
                Some(k) => vec![k.into()],
                None => vec![WalkKind::ShiftCoin, WalkKind::SplitStep],
            };
            let mut rows = Vec::new();
            for &f in &fields {
                for &k in &kinds {
                    let spec = WalkSpec::electric(k, coin, f);
                    let report = floquet::revival_defect(k, coin, f);
                    let traj = dynamics::evolve_trace(
                        &spec,
                        &psi0,
                        steps,
                        Some(report.period as u64),
                        Some(C64::new(report.phase, 0.0)),
                    );
                    let label = format!(
                        "{}_{}",
                        match k {
                            WalkKind::ShiftCoin => "U",
                            WalkKind::SplitStep => "W",
                        },
                        f
                    );
                    for p in traj.points {
                        rows.push(dynamics::DatasetRow {
                            label: label.clone(),
                            t: p.t,
                            mean: p.mean,
                            sigma: p.sigma,
                            revival_error: p.revival_error,
                        });
                    }
                }
            }
            let mut csv = String::from("label,t,mean,sigma,revival_error\n");
            for r in &rows {
                csv.push_str(&format!(
                    "{},{},{},{},{}\n",
                    r.label,
                    r.t,
                    fmt_f64(r.mean),
                    fmt_f64(r.sigma),
                    fmt_opt(r.revival_error)
                ));
            }
            emit(&out, &rows, Some(csv), true)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::SieveCheck { coin, field, cells, random, seed, out } => {
            let coin = parse_coin(&coin)?;
            const TOL: f64 = 1e-13;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let ring = cells.unwrap_or(16).max(4) & !1;
            let mut random_defects = Vec::new();
            for _ in 0..random {
                let coins: Vec<UnitaryCoin> = (0..ring)
                    .map(|_| {
                        let su2 = SU2Coin::new(
                            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                            C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                        )
                        .unwrap();
                        let phase = C64::from_polar(1.0, rng.gen::<f64>() * TAU);
                        UnitaryCoin::from_matrix(su2.matrix().scale(phase)).unwrap()
                    })
                    .collect();
                let d = sieve::verify_sieving(&CoinSequence::periodic(coins), ring)
                    .map_err(|e| e.to_string())?;
                random_defects.push(d);
            }
            let constant_defect = sieve::verify_sieving(&CoinSequence::constant(coin.into()), ring)
                .map_err(|e| e.to_string())?;
            let electric_defect = match field {
                Some(f) => {
                    let f = parse_field(&f)?;
                    let n = cells.unwrap_or_else(|| sieve::default_electric_ring(f));
                    Some(sieve::electric_sieve_check(coin, f, n).map_err(|e| e.to_string())?)
                }
                None => None,
            };
            #[derive(Serialize)]
            struct SieveReport {
                constant_defect: f64,
                random_defects: Vec<f64>,
                electric_defect: Option<f64>,
                tolerance: f64,
                pass: bool,
            }
            let worst = random_defects
                .iter()
                .chain(electric_defect.iter())
                .chain(std::iter::once(&constant_defect))
                .fold(0f64, |acc, &d| acc.max(d));
            let report = SieveReport {
                constant_defect,
                random_defects,
                electric_defect,
                tolerance: TOL,
                pass: worst <= TOL,
            };
            let pass = report.pass;
            emit(&out, &report, None, false)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::CmvCheck { sites, random, seed, out } => {
            const TOL: f64 = 1e-13;
            if sites < 4 || sites % 2 != 0 {
                return Err("need an even --sites >= 4".into());
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rand_pair = |rng: &mut ChaCha8Rng| {
                VerblunskyPair::normalized(
                    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                )
                .unwrap()
            };
            let mut stencil = 0f64;
            let mut corr = 0f64;
            let mut boxed = 0f64;
            for _ in 0..random.max(1) {
                let pairs =
                    PairSequence::Periodic((0..sites).map(|_| rand_pair(&mut rng)).collect());
                let e = cmv::gecmv_operator(&pairs, sites).map_err(|e| e.to_string())?;
                let s = cmv::gecmv_stencil(&pairs, sites).map_err(|e| e.to_string())?;
                stencil = stencil.max(ewalk::linalg::max_entry_diff(&e.to_dense(), &s));
                corr = corr
                    .max(cmv::correspondence_defect(&pairs, sites).map_err(|e| e.to_string())?);
                let expected = -pairs.pair_at(0).alpha().conj() * pairs.pair_at(-1).alpha();
                boxed = boxed.max((e.entry(0, 0) - expected).norm());
            }
            // round trip coin -> pairs -> walk -> pairs
            let mut roundtrip = 0f64;
            for _ in 0..random.max(1) {
                let coin = SU2Coin::new(
                    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                    C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5),
                )
                .unwrap();
                let data = cmv::walk_to_cmv(coin).map_err(|e| e.to_string())?;
                let spec = cmv::cmv_to_walk(&data.split_step);
                let back = cmv::spec_to_cmv(&spec).map_err(|e| e.to_string())?;
                let d = (back.pair_at(0).alpha() - data.split_step.pair_at(0).alpha()).norm()
                    + (back.pair_at(0).rho() - data.split_step.pair_at(0).rho()).norm();
                roundtrip = roundtrip.max(d);
            }
            #[derive(Serialize)]
            struct CmvReport {
                stencil_defect: f64,
                correspondence_defect: f64,
                boxed_entry_defect: f64,
                roundtrip_defect: f64,
                tolerance: f64,
                pass: bool,
            }
            let report = CmvReport {
                stencil_defect: stencil,
                correspondence_defect: corr,
                boxed_entry_defect: boxed,
                roundtrip_defect: roundtrip,
                tolerance: TOL,
                pass: stencil <= TOL && corr <= TOL && boxed <= 1e-15 && roundtrip <= TOL,
            };
            let pass = report.pass;
            emit(&out, &report, None, false)?;
            Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(3) })
        }
        Command::Cf { fraction, out } => {
            let (p, q) = fraction
                .trim()
                .split_once('/')
                .ok_or_else(|| format!("`{fraction}` is not of the form p/q"))?;
            let p: i64 = p.trim().parse().map_err(|_| "bad numerator".to_string())?;
            let q: i64 = q.trim().parse().map_err(|_| "bad denominator".to_string())?;
            if q < 1 {
                return Err("denominator must be >= 1".into());
            }
            let cf = dynamics::continued_fraction(p, q);
            emit(&out, &cf, None, false)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
