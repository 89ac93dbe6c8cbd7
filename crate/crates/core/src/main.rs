use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use vicsim::cli::{self, Overrides, Reduce, Scale, SimConfig, SweepParam, SweepSpec};
use vicsim::Error;

/// Two radiatively coupled V-type atoms: couplings, dynamics and sweeps.
#[derive(Parser, Debug)]
#[command(name = "vicsim", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Integrate one configuration and write the requested observables.
    Run(RunArgs),
    /// Sweep one parameter and write coefficients, peaks or full trajectories.
    Sweep(SweepArgs),
    /// Regenerate a figure's data from its fixed parameter bundle.
    Preset(PresetArgs),
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// key=value configuration file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Polar angle of the separation, in units of π
    #[arg(long)]
    theta: Option<f64>,
    /// Azimuth of the separation, in units of π
    #[arg(long)]
    phi: Option<f64>,
    /// Separation in wavelengths
    #[arg(long)]
    r: Option<f64>,
    /// Excited-level splitting in units of γ
    #[arg(long)]
    delta: Option<f64>,
    /// Dipole model: real | spherical
    #[arg(long)]
    model: Option<String>,
    /// Step size in 1/γ
    #[arg(long)]
    dt: Option<f64>,
    /// Final time in 1/γ
    #[arg(long)]
    tmax: Option<f64>,
    /// Store every n-th step
    #[arg(long)]
    sample_every: Option<usize>,
    /// Initial basis state, e.g. 1A3B
    #[arg(long)]
    init: Option<String>,
    /// Integration frame: interaction | rotating
    #[arg(long)]
    frame: Option<String>,
    /// Couplings included: full | no_cross | off
    #[arg(long)]
    couplings: Option<String>,
    /// Comma-separated observables (p_ij, rho12A, coeffs)
    #[arg(long)]
    observables: Option<String>,
    /// Output CSV path (standard output when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

impl ConfigArgs {
    fn resolve(&self) -> Result<SimConfig, Error> {
        let base = match &self.config {
            Some(p) => SimConfig::from_file(p)?,
            None => SimConfig::default(),
        };
        base.with_overrides(&Overrides {
            theta: self.theta,
            phi: self.phi,
            r: self.r,
            delta: self.delta,
            model: self.model.clone(),
            dt: self.dt,
            tmax: self.tmax,
            sample_every: self.sample_every,
            init: self.init.clone(),
            frame: self.frame.clone(),
            couplings: self.couplings.clone(),
            observables: self.observables.clone(),
            out: self.out.clone(),
        })
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    #[command(flatten)]
    config: ConfigArgs,
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// r_over_lambda | theta | phi | delta
    #[arg(long)]
    param: String,
    #[arg(long)]
    from: f64,
    #[arg(long)]
    to: f64,
    #[arg(long)]
    count: usize,
    /// Geometric spacing instead of linear
    #[arg(long)]
    log: bool,
    /// coefficients | peak_value | full
    #[arg(long)]
    reduce: String,
    /// Observable reduced by peak_value (default p_32)
    #[arg(long)]
    observable: Option<String>,
    /// Concurrent sweep points (overrides VICSIM_WORKERS)
    #[arg(long)]
    workers: Option<usize>,
}

#[derive(Args, Debug)]
struct PresetArgs {
    /// fig3 | fig4 | fig5 | fig6a | fig6b | fig7 | fig8
    name: String,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Print the parameter bundle instead of running it
    #[arg(long)]
    show: bool,
    #[arg(long)]
    workers: Option<usize>,
}

fn execute(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Run(args) => {
            let config = args.config.resolve()?;
            cli::run_single(&config)?;
        }
        Command::Sweep(args) => {
            let config = args.config.resolve()?;
            let scale = if args.log { Scale::Log } else { Scale::Linear };
            let spec = SweepSpec::new(args.param.parse::<SweepParam>()?, args.from, args.to, args.count, scale)?;
            let reduce = Reduce::parse(&args.reduce, args.observable.as_deref())?;
            let table = cli::run_sweep(&config, &spec, reduce, cli::worker_count(args.workers))?;
            table.write_to(config.output_path.as_deref())?;
        }
        Command::Preset(args) => {
            let p = cli::preset(args.name.parse()?);
            if args.show {
                print!("{}", p.describe());
                return Ok(());
            }
            let table = cli::run_preset(&p, cli::worker_count(args.workers))?;
            table.write_to(args.out.as_deref())?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match execute(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("vicsim: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
