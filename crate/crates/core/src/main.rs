use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use logsine::cli::{self, Command, OutputFormat, TableName, UpsilonMode};
use logsine::logsine::{IntegralSpec, Kernel};
use logsine::Angle;

#[derive(Parser)]
#[command(
    name = "logsine",
    version,
    about = "Log-sine integrals and Newman's repeated integrals"
)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum KernelArg {
    /// log|sin t|
    Logsin,
    /// log(2 sin(t/2))
    Ls,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Latex,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableArg {
    Newman,
    Familiar,
    Identities,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Closed,
    Oracle,
    Nested,
}

#[derive(clap::Args)]
struct IntegralArgs {
    #[arg(long, value_enum, default_value = "logsin")]
    kernel: KernelArg,
    #[arg(long, default_value_t = 0)]
    moment: u32,
    /// e.g. pi/2, 2pi/3, 1.25
    #[arg(long, value_parser = angle)]
    upper: Angle,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a closed form numerically (JSON)
    Eval(IntegralArgs),
    /// Print the exact closed form
    Closed {
        #[command(flatten)]
        integral: IntegralArgs,
        #[arg(long, value_enum, default_value = "latex")]
        format: FormatArg,
    },
    /// Compare I(M, x) with quadrature over a grid
    Verify {
        #[arg(long = "max-M", default_value_t = 6)]
        max_m: u32,
        /// comma-separated angles
        #[arg(long, default_value = "pi/6,pi/4,pi/3,pi/2,2pi/3,5pi/6,pi")]
        grid: String,
        #[arg(long, default_value_t = 1e-7)]
        tol: f64,
    },
    /// Print a reference table
    Table {
        #[arg(value_enum)]
        name: TableArg,
    },
    /// Evaluate Y^n(x)
    Upsilon {
        #[arg(long)]
        n: u32,
        #[arg(long, value_parser = angle)]
        x: Angle,
        #[arg(long, value_enum, default_value = "closed")]
        mode: ModeArg,
    },
}

fn angle(s: &str) -> Result<Angle, String> {
    cli::parse_angle(s).map_err(|e| e.to_string())
}

fn spec(a: IntegralArgs) -> Result<IntegralSpec, logsine::Error> {
    let kernel = match a.kernel {
        KernelArg::Logsin => Kernel::LogAbsSin,
        KernelArg::Ls => Kernel::LogTwoSinHalf,
    };
    IntegralSpec::new(kernel, a.moment, a.upper)
}

fn build(cmd: Cmd) -> Result<Command, logsine::Error> {
    Ok(match cmd {
        Cmd::Eval(a) => Command::Eval(spec(a)?),
        Cmd::Closed { integral, format } => Command::Closed(
            spec(integral)?,
            match format {
                FormatArg::Latex => OutputFormat::Latex,
                FormatArg::Json => OutputFormat::Json,
            },
        ),
        Cmd::Verify { max_m, grid, tol } => Command::Verify {
            max_moment: max_m,
            grid: cli::parse_grid(&grid)?,
            tol,
        },
        Cmd::Table { name } => Command::Table(match name {
            TableArg::Newman => TableName::Newman,
            TableArg::Familiar => TableName::Familiar,
            TableArg::Identities => TableName::Identities,
        }),
        Cmd::Upsilon { n, x, mode } => Command::Upsilon {
            n,
            x,
            mode: match mode {
                ModeArg::Closed => UpsilonMode::Closed,
                ModeArg::Oracle => UpsilonMode::Oracle,
                ModeArg::Nested => UpsilonMode::Nested,
            },
        },
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = match build(args.command) {
        Ok(cmd) => cli::run(&cmd),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(cli::EXIT_USAGE as u8);
        }
    };
    if outcome.exit_code == cli::EXIT_USAGE {
        eprintln!("{}", outcome.output);
    } else {
        println!("{}", outcome.output);
    }
    ExitCode::from(outcome.exit_code as u8)
}
