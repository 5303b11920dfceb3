//! `chernlab`: reproducible batch experiments with CSV/JSON output.
//!
//! Exit codes: 0 success, 2 invalid usage or configuration, 3 numerical
//! failure (a tolerance check failed or a solver broke down).

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use chernlab_core::report::{self, Command, OutputFormat, Report, RunConfig, SweepAxis};
use chernlab_core::Error;
use clap::{Args, Parser, Subcommand};

/// Environment variable naming the default output directory.
const OUT_ENV: &str = "CHERNLAB_OUT";

#[derive(Parser, Debug)]
#[command(name = "chernlab", version, about = "Operator laboratory experiments on finite Fourier truncations")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Iterated renormalization flow with per-step commutator norms.
    Flow(Opts),
    /// Cocycle relation residual on an interior window.
    Cocycle(Opts),
    /// Circle index form against the Fredholm index.
    #[command(name = "index-s1")]
    IndexS1(Opts),
    /// Winding number of an SU(2) loop family over the three-sphere.
    #[command(name = "winding-s3")]
    WindingS3(Opts),
    /// Connection form checks on random su(2) fields.
    Connection(Opts),
    /// Face-sum pairing on a two-chart sphere.
    Descent(Opts),
    /// Circle trace formula constant.
    #[command(name = "trace-id")]
    TraceId(Opts),
    /// Invariance under regularization and base-point changes.
    Invariance(Opts),
}

impl Cmd {
    fn split(&self) -> (Command, &Opts) {
        match self {
            Cmd::Flow(o) => (Command::Flow, o),
            Cmd::Cocycle(o) => (Command::Cocycle, o),
            Cmd::IndexS1(o) => (Command::IndexS1, o),
            Cmd::WindingS3(o) => (Command::WindingS3, o),
            Cmd::Connection(o) => (Command::Connection, o),
            Cmd::Descent(o) => (Command::Descent, o),
            Cmd::TraceId(o) => (Command::TraceId, o),
            Cmd::Invariance(o) => (Command::Invariance, o),
        }
    }
}

#[derive(Args, Debug)]
struct Opts {
    /// Flat `key=value` config file; flags override its values.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Mode cutoff N (fiber dimension for `descent` and sphere invariance).
    #[arg(long)]
    modes: Option<String>,
    #[arg(long)]
    band: Option<String>,
    #[arg(long)]
    depth: Option<String>,
    #[arg(long)]
    lambda: Option<String>,
    /// Grid size, or `AxBxC` for `winding-s3`.
    #[arg(long)]
    grid: Option<String>,
    #[arg(long)]
    window: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    /// `half-integer` or `integer`.
    #[arg(long)]
    convention: Option<String>,
    /// `csv` or `json`.
    #[arg(long)]
    format: Option<String>,
    /// Primary output file or directory.
    #[arg(long)]
    output: Option<String>,
    /// Winding number.
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    /// Transition degree (alias of `--n`).
    #[arg(long, allow_hyphen_values = true, conflicts_with = "n")]
    m: Option<String>,
    /// Roughness exponent.
    #[arg(long)]
    s: Option<String>,
    /// `rough` or `smooth`.
    #[arg(long)]
    profile: Option<String>,
    /// `standard` or `odd`.
    #[arg(long)]
    variant: Option<String>,
    #[arg(long)]
    samples: Option<String>,
    #[arg(long)]
    amplitude: Option<String>,
    /// `circle` or `sphere`.
    #[arg(long)]
    target: Option<String>,
    /// Sweep one axis: `modes=64,128,256`, `depth=0,1,2` or `grid=32x32x64,64x64x128`.
    #[arg(long)]
    sweep: Vec<String>,
    /// Worker threads for internal parallelism; results do not depend on it.
    #[arg(long)]
    threads: Option<usize>,
}

impl Opts {
    fn pairs(&self) -> Vec<(&'static str, &str)> {
        let fields: [(&'static str, &Option<String>); 19] = [
            ("modes", &self.modes),
            ("band", &self.band),
            ("depth", &self.depth),
            ("lambda", &self.lambda),
            ("grid", &self.grid),
            ("window", &self.window),
            ("seed", &self.seed),
            ("convention", &self.convention),
            ("format", &self.format),
            ("output", &self.output),
            ("n", &self.n),
            ("n", &self.m),
            ("s", &self.s),
            ("profile", &self.profile),
            ("variant", &self.variant),
            ("samples", &self.samples),
            ("amplitude", &self.amplitude),
            ("target", &self.target),
            ("command", &None),
        ];
        fields.iter().filter_map(|(k, v)| v.as_deref().map(|v| (*k, v))).collect()
    }
}

enum Failure {
    Usage(String),
    Numerical(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Numerical(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numerical(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NonFinite
            | Error::NotHermitian(_)
            | Error::NotUnitary(_)
            | Error::SingularBase
            | Error::Singular
            | Error::IllConditioned
            | Error::ConnectionSolve(_)
            | Error::Linalg(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn build_config(command: Command, opts: &Opts) -> Result<RunConfig, Failure> {
    let mut cfg = match &opts.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("cannot read config {}: {e}", path.display())))?;
            let cfg = RunConfig::from_config_text(&text, Some(command))?;
            if cfg.command != command {
                return Err(Failure::Usage(format!("config is for `{}`, not `{command}`", cfg.command)));
            }
            cfg
        }
        None => RunConfig::new(command),
    };
    for (k, v) in opts.pairs() {
        cfg.set(k, v)?;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_sweep(specs: &[String]) -> Result<Option<(SweepAxis, Vec<String>)>, Failure> {
    match specs {
        [] => Ok(None),
        [one] => {
            let (axis, values) =
                one.split_once('=').ok_or_else(|| Failure::Usage(format!("sweep `{one}`: expected axis=v1,v2,...")))?;
            let values: Vec<String> = values.split(',').map(|v| v.trim().to_string()).filter(|v| !v.is_empty()).collect();
            Ok(Some((axis.trim().parse()?, values)))
        }
        _ => Err(Failure::Usage("only one sweep axis may be given".into())),
    }
}

/// Primary table path and its sidecar.
fn output_paths(cfg: &RunConfig, sweeping: bool) -> (PathBuf, PathBuf) {
    let ext = cfg.format.extension();
    let stem = if sweeping { format!("{}-sweep", cfg.command) } else { cfg.command.to_string() };
    let default_dir = || std::env::var_os(OUT_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from("."));
    let primary = match &cfg.output {
        Some(p) if p.is_dir() => p.join(format!("{stem}.{ext}")),
        Some(p) => p.clone(),
        None => default_dir().join(format!("{stem}.{ext}")),
    };
    let sidecar = match cfg.format {
        OutputFormat::Csv => primary.with_extension("json"),
        OutputFormat::Json => primary.with_extension("meta.json"),
    };
    (primary, sidecar)
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Usage(format!("cannot create {}: {e}", dir.display())))?;
    }
    std::fs::write(path, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn execute(cli: &Cli) -> Result<Report, Failure> {
    let (command, opts) = cli.command.split();
    if let Some(t) = opts.threads {
        if t == 0 {
            return Err(Failure::Usage("threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Usage(format!("thread pool: {e}")))?;
    }
    let cfg = build_config(command, opts)?;
    let sweep = parse_sweep(&opts.sweep)?;
    let start = Instant::now();
    let rep = match &sweep {
        None => report::run(&cfg)?,
        Some((axis, values)) => report::sweep(&cfg, *axis, values)?,
    };
    let (primary, sidecar) = output_paths(&cfg, sweep.is_some());
    write(&primary, &rep.primary(cfg.format))?;
    write(&sidecar, &rep.sidecar(&cfg))?;
    let summary = serde_json::to_string_pretty(&serde_json::Value::Object(rep.summary())).expect("summary serializes");
    println!("{summary}");
    eprintln!("wrote {} and {} in {:.2?}", primary.display(), sidecar.display(), start.elapsed());
    for c in rep.checks.iter().filter(|c| !c.pass) {
        eprintln!("check failed: {} (value {:e}, tolerance {:e})", c.name, c.value, c.tolerance);
    }
    Ok(rep)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(rep) if rep.passed() => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(3),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
