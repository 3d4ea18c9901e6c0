mod expr;
mod output;
mod run;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use run::{CliError, CoinFlags};
use triwalk::SpinVector;

#[derive(Parser)]
#[command(
    name = "triwalk",
    version,
    about = "Simulate 3-state coined quantum walks on the line and compare them \
             with their closed-form limit laws"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CoinArgs {
    /// Coin angle theta in radians; expressions like pi/4 are accepted
    #[arg(long, value_name = "EXPR", group = "coin")]
    theta: Option<String>,
    /// Use the Grover coin (c = -1/3, s = 2sqrt2/3)
    #[arg(long, group = "coin")]
    grover: bool,
    /// Give cos theta and sin theta directly, e.g. --c-s 1/3,2sqrt2/3
    #[arg(long = "c-s", value_name = "C,S", group = "coin")]
    c_s: Option<String>,
}

impl CoinArgs {
    fn flags(&self) -> CoinFlags<'_> {
        CoinFlags {
            theta: self.theta.as_deref(),
            grover: self.grover,
            c_s: self.c_s.as_deref(),
        }
    }
}

#[derive(Args)]
struct OutputArgs {
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file; stdout when omitted
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum ExampleId {
    /// Spin (0, 0, 1): A = 0, a 2n-point uniform measure
    Ex1,
    /// Spin (1, 0, 0): B = 0, a 2n-point uniform measure
    Ex2,
    /// Spin (1/sqrt2, 0, -1/sqrt2): B = -A, a 2n+1-point uniform measure
    Ex3,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve the walk and emit the position distribution
    Simulate {
        #[command(flatten)]
        coin: CoinArgs,
        /// Initial coin state: 3 expressions (real) or 6 (re,im pairs)
        #[arg(long, value_name = "SPIN")]
        spin: String,
        /// Number of steps
        #[arg(long)]
        time: u32,
        /// Half-width of the emitted x-range (defaults to time)
        #[arg(long)]
        window: Option<i64>,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Closed-form limit measure for an origin start
    Limit {
        #[command(flatten)]
        coin: CoinArgs,
        #[arg(long, value_name = "SPIN")]
        spin: String,
        /// Half-width of the emitted x-range
        #[arg(long, default_value_t = 20)]
        window: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Simulated distribution against the limit measure
    Compare {
        #[command(flatten)]
        coin: CoinArgs,
        #[arg(long, value_name = "SPIN")]
        spin: String,
        #[arg(long)]
        time: u32,
        #[arg(long, default_value_t = 30)]
        window: i64,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Empirical CDF of X_t/t against the weak-limit CDF
    Rescaled {
        #[command(flatten)]
        coin: CoinArgs,
        #[arg(long, value_name = "SPIN")]
        spin: String,
        #[arg(long)]
        time: u32,
        #[command(flatten)]
        out: OutputArgs,
    },
    /// Comb-envelope walks whose limit measures are discrete uniform
    Uniform {
        /// Reference configuration; picks the default spin
        #[arg(long, value_enum)]
        example: ExampleId,
        /// Number of comb teeth
        #[arg(long)]
        n: u32,
        #[command(flatten)]
        coin: CoinArgs,
        /// Overrides the example's default spin
        #[arg(long, value_name = "SPIN")]
        spin: Option<String>,
        #[arg(long, default_value_t = 5000)]
        time: u32,
        /// Extra positions emitted around the limit support
        #[arg(long)]
        window: Option<i64>,
        #[command(flatten)]
        out: OutputArgs,
    },
}

fn example_spin(example: ExampleId) -> SpinVector {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let spin = match example {
        ExampleId::Ex1 => SpinVector::from_reals(0.0, 0.0, 1.0),
        ExampleId::Ex2 => SpinVector::from_reals(1.0, 0.0, 0.0),
        ExampleId::Ex3 => SpinVector::from_reals(r, 0.0, -r),
    };
    spin.expect("reference spins are normalized")
}

fn example_name(example: ExampleId) -> &'static str {
    match example {
        ExampleId::Ex1 => "ex1",
        ExampleId::Ex2 => "ex2",
        ExampleId::Ex3 => "ex3",
    }
}

fn build_report(command: &Command) -> run::Result<output::Report> {
    match command {
        Command::Simulate {
            coin,
            spin,
            time,
            window,
            ..
        } => {
            let params = run::require_coin(&coin.flags())?;
            let spin = run::resolve_spin(spin)?;
            run::cmd_simulate(&params, &spin, *time, *window)
        }
        Command::Limit {
            coin, spin, window, ..
        } => {
            let params = run::require_coin(&coin.flags())?;
            let spin = run::resolve_spin(spin)?;
            run::cmd_limit(&params, &spin, *window)
        }
        Command::Compare {
            coin,
            spin,
            time,
            window,
            ..
        } => {
            let params = run::require_coin(&coin.flags())?;
            let spin = run::resolve_spin(spin)?;
            run::cmd_compare(&params, &spin, *time, *window)
        }
        Command::Rescaled {
            coin, spin, time, ..
        } => {
            let params = run::require_coin(&coin.flags())?;
            let spin = run::resolve_spin(spin)?;
            run::cmd_rescaled(&params, &spin, *time)
        }
        Command::Uniform {
            example,
            n,
            coin,
            spin,
            time,
            window,
            ..
        } => {
            // The reference configurations fix (c, s) = (1/3, 2sqrt2/3)
            // rather than an angle, so that is the default coin here.
            let params = match run::resolve_coin(&coin.flags())? {
                Some(params) => params,
                None => triwalk::CoinParameters::from_cos_sin(
                    1.0 / 3.0,
                    2.0 * std::f64::consts::SQRT_2 / 3.0,
                )
                .expect("reference coin is on the unit circle"),
            };
            let spin = match spin {
                Some(text) => run::resolve_spin(text)?,
                None => example_spin(*example),
            };
            run::cmd_uniform(&params, &spin, example_name(*example), *n, *time, *window)
        }
    }
}

fn output_args(command: &Command) -> &OutputArgs {
    match command {
        Command::Simulate { out, .. }
        | Command::Limit { out, .. }
        | Command::Compare { out, .. }
        | Command::Rescaled { out, .. }
        | Command::Uniform { out, .. } => out,
    }
}

fn write_report(report: &output::Report, out: &OutputArgs) -> run::Result<()> {
    let render = |mut w: &mut dyn Write| -> std::io::Result<()> {
        match out.format {
            Format::Csv => report.write_csv(&mut w),
            Format::Json => report.write_json(&mut w),
        }
    };
    let result = match &out.output {
        Some(path) => std::fs::File::create(path)
            .map(std::io::BufWriter::new)
            .and_then(|mut file| render(&mut file).and_then(|()| file.flush())),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            render(&mut lock)
        }
    };
    result.map_err(|e| CliError::Config(format!("cannot write output: {e}")))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = output_args(&cli.command);
    match build_report(&cli.command).and_then(|report| write_report(&report, out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
        Err(CliError::Internal(message)) => {
            eprintln!("internal error: {message}");
            ExitCode::from(3)
        }
    }
}
