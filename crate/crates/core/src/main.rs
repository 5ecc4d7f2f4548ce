use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use microinject::cli::{
    cmd_free_response, cmd_simulate, cmd_verify, exit_code, FreeResponseOptions, SimulateOptions,
};
use microinject::dynamics::InitialConditions;
use microinject::verify::Suite;

#[derive(Parser)]
#[command(
    name = "microinject",
    version,
    about = "Cell-injection stage model: verification suites and simulations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a seeded randomized property suite.
    Verify {
        /// frames, dynamics, implication, discrepancy or all
        #[arg(long, value_parser = clap::value_parser!(Suite))]
        suite: Suite,
        /// Ensemble size (defaults: 1000 for dynamics, 10000 otherwise)
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Simulate the configured controller variants in closed loop.
    Simulate {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Also write plot_<variant>.svg charts
        #[arg(long)]
        svg: bool,
    },
    /// Compare the closed-form free response against RK4.
    FreeResponse {
        #[arg(long, default_value_t = 1.0)]
        mx: f64,
        #[arg(long, default_value_t = 1.0)]
        my: f64,
        #[arg(long, default_value_t = 1.0)]
        mp: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        x0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        y0: f64,
        #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
        xd0: f64,
        #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
        yd0: f64,
        #[arg(long, default_value_t = 10.0)]
        t_end: f64,
        #[arg(long, default_value_t = 1e-3, allow_hyphen_values = true)]
        dt: f64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("MICROINJECT_LOG", "error"))
        .init();

    let cli = Cli::parse();
    let mut stdout = io::stdout().lock();
    let result = match cli.command {
        Command::Verify {
            suite,
            trials,
            seed,
        } => cmd_verify(&mut stdout, suite, seed, trials),
        Command::Simulate { config, out, svg } => cmd_simulate(
            &mut stdout,
            &SimulateOptions {
                config,
                out_dir: out,
                svg,
            },
        ),
        Command::FreeResponse {
            mx,
            my,
            mp,
            x0,
            y0,
            xd0,
            yd0,
            t_end,
            dt,
            out,
        } => cmd_free_response(
            &mut stdout,
            &FreeResponseOptions {
                mx,
                my,
                mp,
                initial: InitialConditions { x0, y0, xd0, yd0 },
                t_end,
                dt,
                out,
            },
        ),
    };
    if let Err(e) = &result {
        eprintln!("error: {e}");
    }
    ExitCode::from(exit_code(&result))
}
