mod commands;
mod error;
mod output;
mod settings;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use ambiquant::SystemConfig;
use clap::{Args, Parser, Subcommand};

use error::{CliError, CliResult};
use output::Format;
use settings::{load_config, split_override, Settings};

/// Classical flows, Legendre checks, alpha-series and quantum spectra of the
/// dissipative oscillator `m x'' = -U'(x)(1 - alpha x'^2)`.
#[derive(Parser, Debug)]
#[command(name = "ambiquant", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Subcommand, Debug, Clone, Copy, PartialEq, Eq)]
enum Command {
    /// Trajectory of one flow as `t,x,v` or `t,x,p,variant`
    Simulate,
    /// K1, K2 and their relative drift along the Newtonian flow
    Conserve,
    /// Largest (x, v) deviation between the three flows
    Equivalence,
    /// Coefficients of H(x, p) in powers of alpha next to the printed c1
    Expand,
    /// First-order and exact energies of level n under both quantizations
    Perturb,
    /// First-order and exact energies of levels 0..=n_max
    Ambiguity,
    /// Run the invariant suite; exit 0 iff every check passes
    Selftest,
}

#[derive(Args, Debug)]
struct Common {
    /// System config (JSON): {"m", "alpha", "hbar", "potential": {"kind", ...}}
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Override any key, applied after the config file (repeatable)
    #[arg(long = "set", value_name = "KEY=VALUE", global = true)]
    set: Vec<String>,
    #[arg(long, value_enum, default_value = "csv", global = true)]
    format: Format,
    /// Write the report here instead of standard output
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long, global = true)]
    m: Option<String>,
    #[arg(long, global = true)]
    omega: Option<String>,
    #[arg(long, global = true)]
    hbar: Option<String>,
    /// Polynomial potential, ascending comma-separated coefficients
    #[arg(long, global = true, allow_hyphen_values = true)]
    coeffs: Option<String>,
    /// rk4 or rk45
    #[arg(long, global = true)]
    integrator: Option<String>,
    #[arg(long, global = true)]
    dt: Option<String>,
    #[arg(long, global = true)]
    rtol: Option<String>,
    #[arg(long, global = true)]
    atol: Option<String>,
    #[arg(long = "t-end", global = true)]
    t_end: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x0: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    v0: Option<String>,
    /// newtonian, hamiltonian1 or hamiltonian2
    #[arg(long, global = true)]
    flow: Option<String>,
    #[arg(long = "n-basis", global = true)]
    n_basis: Option<String>,
    #[arg(long = "n-max", global = true)]
    n_max: Option<String>,
    #[arg(long, global = true)]
    n: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    p: Option<String>,
    /// 1 or 2
    #[arg(long, global = true)]
    variant: Option<String>,
    #[arg(long, global = true)]
    order: Option<String>,
}

impl Common {
    fn flags(&self) -> Vec<(&'static str, &Option<String>)> {
        vec![
            ("m", &self.m),
            ("alpha", &self.alpha),
            ("hbar", &self.hbar),
            ("omega", &self.omega),
            ("coeffs", &self.coeffs),
            ("integrator", &self.integrator),
            ("dt", &self.dt),
            ("rtol", &self.rtol),
            ("atol", &self.atol),
            ("t_end", &self.t_end),
            ("x0", &self.x0),
            ("v0", &self.v0),
            ("flow", &self.flow),
            ("n_basis", &self.n_basis),
            ("n_max", &self.n_max),
            ("n", &self.n),
            ("x", &self.x),
            ("p", &self.p),
            ("variant", &self.variant),
            ("order", &self.order),
        ]
    }
}

/// Config file, then `--set` in order, then dedicated flags. Without a file
/// the quantum commands start from alpha = 1e-3, everything else from 0.
fn resolve(cli: &Cli) -> CliResult<Settings> {
    let system = match &cli.common.config {
        Some(path) => load_config(path)?,
        None if matches!(cli.command, Command::Perturb | Command::Ambiguity) => {
            SystemConfig { alpha: 1e-3, ..SystemConfig::default() }
        }
        None => SystemConfig::default(),
    };
    let mut s = Settings::new(system);
    for raw in &cli.common.set {
        let (k, v) = split_override(raw)?;
        s.apply(k, v)?;
    }
    for (key, value) in cli.common.flags() {
        if let Some(v) = value {
            s.apply(key, v)?;
        }
    }
    s.system.validate()?;
    Ok(s)
}

fn emit(text: &str, out: Option<&PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| match e.kind() {
                std::io::ErrorKind::BrokenPipe => CliError::Pipe,
                _ => CliError::Io(e.to_string()),
            })
        }
    }
}

fn run(cli: &Cli) -> CliResult<()> {
    let format = cli.common.format;
    let out = cli.common.out.as_ref();
    if cli.command == Command::Selftest {
        let (text, failure) = commands::selftest(format);
        emit(&text?, out)?;
        return failure.map_or(Ok(()), Err);
    }
    let s = resolve(cli)?;
    let text = match cli.command {
        Command::Simulate => commands::simulate(&s, format),
        Command::Conserve => commands::conserve(&s, format),
        Command::Equivalence => commands::equivalence(&s, format),
        Command::Expand => commands::expand(&s, format),
        Command::Perturb => commands::perturb(&s, format),
        Command::Ambiguity => commands::ambiguity(&s, format),
        Command::Selftest => unreachable!(),
    }?;
    emit(&text, out)
}

fn fail(err: &CliError, context: &str) -> ExitCode {
    let record = serde_json::to_string(&err.record(context)).unwrap_or_else(|_| err.to_string());
    eprintln!("{record}");
    ExitCode::from(err.exit_code())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => return fail(&CliError::Config(e.render().to_string().trim().to_string()), "arguments"),
    };
    let context = format!("{:?}", cli.command).to_lowercase();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        // downstream closed early, e.g. `| head`
        Err(CliError::Pipe) => ExitCode::SUCCESS,
        Err(e) => fail(&e, &context),
    }
}
