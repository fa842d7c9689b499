use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use qportrait::bell::{bell_report, semigroup_separability_check};
use qportrait::demo::run_demo;
use qportrait::io::StateFile;
use qportrait::portrait::{qutrit_portraits, reduce_bipartite};
use qportrait::quantum::{bipartite_tomogram, builtin_unitary, states, tomogram};
use qportrait::search::{maximize_bell, SearchConfig};
use qportrait::{random, DensityMatrix, Direction, Quadruple};

#[derive(Parser, Debug)]
#[command(name = "qportrait", version)]
#[command(about = "Spin tomograms, qubit portraits and CHSH entanglement screening")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Joint tomogram (and marginals) along two directions
    Tomogram {
        #[command(flatten)]
        state: StateArg,
        #[command(flatten)]
        angles: PairAngles,
        /// Also write the distribution as CSV
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// Binned 4-outcome distribution (or the three portraits of a single qutrit)
    Portrait {
        #[command(flatten)]
        state: StateArg,
        #[command(flatten)]
        angles: PairAngles,
        #[arg(long, value_name = "PATH")]
        csv: Option<PathBuf>,
    },
    /// CHSH value at one direction quadruple
    Chsh {
        #[command(flatten)]
        state: StateArg,
        #[command(flatten)]
        quad: QuadArgs,
    },
    /// Search directions for the largest CHSH value
    Maximize {
        #[command(flatten)]
        state: StateArg,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// CHSH values of tomographic matrices and all their pairwise products
    SemigroupCheck {
        #[command(flatten)]
        state: StateArg,
        #[command(flatten)]
        quad: QuadArgs,
        /// Number of random quadruples
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run one of the worked examples
    Demo {
        #[arg(value_enum)]
        name: DemoName,
        #[command(flatten)]
        search: SearchArgs,
    },
    /// Print a built-in state as a state file
    ExportState {
        #[arg(value_enum)]
        name: DemoName,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum DemoName {
    Bell,
    QubitQutrit,
    TwoQutrit,
}

impl DemoName {
    fn as_str(self) -> &'static str {
        match self {
            DemoName::Bell => "bell",
            DemoName::QubitQutrit => "qubit-qutrit",
            DemoName::TwoQutrit => "two-qutrit",
        }
    }
}

#[derive(Args, Debug)]
struct StateArg {
    /// JSON state file: {"dims": [dA, dB], "entries": [[[re, im], ...], ...]}
    #[arg(long, value_name = "PATH")]
    state: PathBuf,
}

#[derive(Args, Debug)]
struct PairAngles {
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi1: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    theta2: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    phi2: f64,
    /// Angles are given in degrees
    #[arg(long)]
    degrees: bool,
}

#[derive(Args, Debug)]
struct QuadArgs {
    /// First-party direction "θ,φ"
    #[arg(long, value_parser = parse_angle_pair, allow_hyphen_values = true)]
    a: Option<(f64, f64)>,
    /// Second-party direction "θ,φ"
    #[arg(long, value_parser = parse_angle_pair, allow_hyphen_values = true)]
    b: Option<(f64, f64)>,
    /// Second-party direction "θ,φ"
    #[arg(long, value_parser = parse_angle_pair, allow_hyphen_values = true)]
    c: Option<(f64, f64)>,
    /// First-party direction "θ,φ"
    #[arg(long, value_parser = parse_angle_pair, allow_hyphen_values = true)]
    d: Option<(f64, f64)>,
    #[arg(long)]
    degrees: bool,
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Grid points per angle axis
    #[arg(long, default_value_t = 8)]
    grid: usize,
    #[arg(long, default_value_t = 200)]
    iterations: usize,
    #[arg(long, default_value_t = 1e-7)]
    tolerance: f64,
}

impl SearchArgs {
    fn config(&self) -> SearchConfig {
        SearchConfig {
            grid_resolution: self.grid,
            refine_iterations: self.iterations,
            seed: self.seed,
            tolerance: self.tolerance,
        }
    }
}

fn parse_angle_pair(s: &str) -> Result<(f64, f64), String> {
    let (t, p) = s
        .split_once(',')
        .ok_or_else(|| format!("expected \"theta,phi\", got {s:?}"))?;
    let num = |x: &str| {
        x.trim()
            .parse::<f64>()
            .map_err(|e| format!("bad angle {x:?}: {e}"))
    };
    Ok((num(t)?, num(p)?))
}

fn direction(theta: f64, phi: f64, degrees: bool) -> Direction {
    if degrees {
        Direction::from_degrees(theta, phi)
    } else {
        Direction::new(theta, phi)
    }
}

enum Failure {
    /// Malformed input: bad file, bad JSON, missing flags.
    Usage(String),
    /// Well-formed input that violates an invariant.
    Invalid(qportrait::Error),
}

impl From<qportrait::Error> for Failure {
    fn from(e: qportrait::Error) -> Self {
        Failure::Invalid(e)
    }
}

type CmdResult = Result<serde_json::Value, Failure>;

fn to_json<T: Serialize>(value: &T) -> CmdResult {
    serde_json::to_value(value).map_err(|e| Failure::Usage(format!("serialization failed: {e}")))
}

fn load_state(path: &Path) -> Result<(StateFile, DensityMatrix), Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    let file = StateFile::from_json(&text)
        .map_err(|e| Failure::Usage(format!("malformed state file {}: {e}", path.display())))?;
    let rho = file.to_density()?;
    log::info!("loaded {}-dimensional state with dims {:?}", rho.dim(), file.dims);
    Ok((file, rho))
}

fn write_csv(path: &Path, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let fail = |e: csv::Error| Failure::Usage(format!("cannot write {}: {e}", path.display()));
    let mut w = csv::Writer::from_path(path).map_err(fail)?;
    w.write_record(header).map_err(fail)?;
    for r in rows {
        w.write_record(r).map_err(fail)?;
    }
    w.flush()
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn cmd_tomogram(state: &StateArg, ang: &PairAngles, csv: Option<&Path>) -> CmdResult {
    let (file, rho) = load_state(&state.state)?;
    let d1 = direction(ang.theta1, ang.phi1, ang.degrees);
    if let [d] = file.dims[..] {
        let w = tomogram(&rho, &builtin_unitary(d, &d1)?)?;
        if let Some(path) = csv {
            let rows: Vec<_> = w.iter().enumerate().map(|(m, p)| vec![m.to_string(), p.to_string()]).collect();
            write_csv(path, &["m", "probability"], &rows)?;
        }
        return to_json(&serde_json::json!({
            "dims": file.dims,
            "directions": [d1],
            "probabilities": w,
        }));
    }
    let dims = file.bipartite_dims()?;
    let d2 = direction(ang.theta2, ang.phi2, ang.degrees);
    let t = bipartite_tomogram(&rho, &d1, &d2, dims)?;
    if let Some(path) = csv {
        let mut rows = Vec::new();
        for m1 in 0..dims.0 {
            for m2 in 0..dims.1 {
                rows.push(vec![m1.to_string(), m2.to_string(), t.joint(m1, m2).to_string()]);
            }
        }
        write_csv(path, &["m1", "m2", "probability"], &rows)?;
    }
    to_json(&serde_json::json!({
        "dims": file.dims,
        "directions": t.directions(),
        "probabilities": t.probabilities(),
        "marginals": [t.marginal(0), t.marginal(1)],
    }))
}

fn cmd_portrait(state: &StateArg, ang: &PairAngles, csv: Option<&Path>) -> CmdResult {
    let (file, rho) = load_state(&state.state)?;
    let d1 = direction(ang.theta1, ang.phi1, ang.degrees);
    if let [d] = file.dims[..] {
        let w = tomogram(&rho, &builtin_unitary(d, &d1)?)?;
        let portraits = qutrit_portraits(&w)?;
        if let Some(path) = csv {
            let rows: Vec<_> = portraits
                .pairs()
                .iter()
                .enumerate()
                .map(|(k, p)| vec![(k + 1).to_string(), p[0].to_string(), p[1].to_string()])
                .collect();
            write_csv(path, &["pair", "first", "second"], &rows)?;
        }
        return to_json(&serde_json::json!({
            "dims": file.dims,
            "directions": [d1],
            "tomogram": w,
            "portraits": portraits,
        }));
    }
    let dims = file.bipartite_dims()?;
    let d2 = direction(ang.theta2, ang.phi2, ang.degrees);
    let reduced = reduce_bipartite(&bipartite_tomogram(&rho, &d1, &d2, dims)?)?;
    if let Some(path) = csv {
        let rows: Vec<_> = reduced
            .probabilities
            .iter()
            .enumerate()
            .map(|(k, p)| vec![k.to_string(), p.to_string()])
            .collect();
        write_csv(path, &["bin", "probability"], &rows)?;
    }
    to_json(&serde_json::json!({
        "dims": file.dims,
        "directions": reduced.directions,
        "probabilities": reduced.probabilities,
    }))
}

fn explicit_quadruple(q: &QuadArgs) -> Result<Option<Quadruple>, Failure> {
    match (q.a, q.b, q.c, q.d) {
        (None, None, None, None) => Ok(None),
        (Some(a), Some(b), Some(c), Some(d)) => {
            let dir = |(t, p): (f64, f64)| direction(t, p, q.degrees);
            Ok(Some(Quadruple::new(dir(a), dir(b), dir(c), dir(d))))
        }
        _ => Err(Failure::Usage("--a, --b, --c and --d must be given together".into())),
    }
}

fn cmd_chsh(state: &StateArg, quad: &QuadArgs) -> CmdResult {
    let q = explicit_quadruple(quad)?
        .ok_or_else(|| Failure::Usage("chsh needs --a, --b, --c and --d".into()))?;
    let (file, rho) = load_state(&state.state)?;
    to_json(&bell_report(&rho, file.bipartite_dims()?, &q)?)
}

fn cmd_maximize(state: &StateArg, search: &SearchArgs) -> CmdResult {
    let (file, rho) = load_state(&state.state)?;
    to_json(&maximize_bell(&rho, file.bipartite_dims()?, &search.config())?)
}

fn cmd_semigroup(state: &StateArg, quad: &QuadArgs, count: usize, seed: u64) -> CmdResult {
    let (file, rho) = load_state(&state.state)?;
    let mut quads: Vec<Quadruple> = explicit_quadruple(quad)?.into_iter().collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    quads.extend((0..count).map(|_| random::quadruple(&mut rng)));
    to_json(&semigroup_separability_check(&rho, file.bipartite_dims()?, &quads)?)
}

fn cmd_export(name: DemoName) -> CmdResult {
    let (rho, dims): (DensityMatrix, _) = match name {
        DemoName::Bell => (states::bell_state(), [2, 2]),
        DemoName::QubitQutrit => (states::qubit_qutrit_state(), [2, 3]),
        DemoName::TwoQutrit => (states::two_qutrit_state(), [3, 3]),
    };
    to_json(&StateFile::from_density(&rho, &dims)?)
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Tomogram { state, angles, csv } => cmd_tomogram(state, angles, csv.as_deref()),
        Command::Portrait { state, angles, csv } => cmd_portrait(state, angles, csv.as_deref()),
        Command::Chsh { state, quad } => cmd_chsh(state, quad),
        Command::Maximize { state, search } => cmd_maximize(state, search),
        Command::SemigroupCheck {
            state,
            quad,
            count,
            seed,
        } => cmd_semigroup(state, quad, *count, *seed),
        Command::Demo { name, search } => to_json(&run_demo(name.as_str(), &search.config())?),
        Command::ExportState { name } => cmd_export(*name),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .target(env_logger::Target::Stderr)
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(doc) => {
            let mut out = std::io::stdout().lock();
            let text = serde_json::to_string_pretty(&doc).expect("JSON values serialize");
            if writeln!(out, "{text}").is_err() {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("error: validation failed: {e}");
            ExitCode::from(3)
        }
    }
}
