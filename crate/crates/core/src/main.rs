use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use discdisp::cli::{compare, example_report, load, qcurve_csv, CensorPolicy, CompareOptions, DatasetSpec, LoadOptions};
use discdisp::{Error, MeasureOptions, NuRobVariant, QuantileType, TailBudget, DEFAULT_MAX_SUPPORT};

#[derive(Parser)]
#[command(name = "discdisp", version, about = "Dispersion orders and concentration measures for discrete data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum QuantileArg {
    Interp,
    InverseCdf,
}

#[derive(Clone, Copy, ValueEnum)]
enum NuRobArg {
    Raw,
    Sqrt,
}

#[derive(Clone, Copy, ValueEnum)]
enum CensorArg {
    LowerBound,
    Reject,
}

#[derive(clap::Args)]
struct InputArgs {
    /// Tail mass left out when truncating infinite supports.
    #[arg(long, default_value_t = 1e-12)]
    tail_budget: f64,
    /// Largest support size a truncated or convolved distribution may have.
    #[arg(long, default_value_t = DEFAULT_MAX_SUPPORT)]
    max_support: usize,
    /// Treatment of `>=v` rows in counts files.
    #[arg(long, value_enum, default_value = "lower-bound")]
    censor: CensorArg,
}

impl InputArgs {
    fn load_options(&self) -> Result<LoadOptions, Error> {
        Ok(LoadOptions { tail_budget: TailBudget::new(self.tail_budget)?, max_support: self.max_support })
    }

    fn spec(&self, s: &str) -> Result<DatasetSpec, Error> {
        let mut spec: DatasetSpec = s.parse()?;
        spec.censor_policy = match self.censor {
            CensorArg::LowerBound => CensorPolicy::LowerBound,
            CensorArg::Reject => CensorPolicy::Reject,
        };
        Ok(spec)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compare two datasets under all orders and print a JSON report.
    Compare {
        /// counts:FILE, sample:FILE, fixture:<1-4><a|b> or a family such as poisson(2)
        a: String,
        b: String,
        /// Largest m of the d_m sequence (default: combined range).
        #[arg(long)]
        mmax: Option<u64>,
        #[arg(long, value_enum, default_value = "interp")]
        quantile_type: QuantileArg,
        #[arg(long, value_enum, default_value = "raw")]
        nu_rob: NuRobArg,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Print the concentration function as `eps,q` CSV.
    Qcurve {
        spec: String,
        #[command(flatten)]
        input: InputArgs,
    },
    /// Reproduce the measure table of a bundled example (1-4).
    Report {
        example: u32,
        #[arg(long, value_enum, default_value = "interp")]
        quantile_type: QuantileArg,
        /// Print JSON instead of a text table.
        #[arg(long)]
        json: bool,
    },
}

fn quantile_type(q: QuantileArg) -> QuantileType {
    match q {
        QuantileArg::Interp => QuantileType::Interp,
        QuantileArg::InverseCdf => QuantileType::InverseCdf,
    }
}

fn run(cli: Cli) -> Result<String, Error> {
    match cli.command {
        Command::Compare { a, b, mmax, quantile_type: qt, nu_rob, input } => {
            let opts = input.load_options()?;
            let da = load(&input.spec(&a)?, &opts)?;
            let db = load(&input.spec(&b)?, &opts)?;
            let nu_rob = match nu_rob {
                NuRobArg::Raw => NuRobVariant::Raw,
                NuRobArg::Sqrt => NuRobVariant::Sqrt,
            };
            let copts = CompareOptions { mmax, measures: MeasureOptions { quantile_type: quantile_type(qt), nu_rob } };
            let report = compare(&da, &db, &copts)?;
            serde_json::to_string_pretty(&report).map_err(|e| Error::Io(e.to_string()))
        }
        Command::Qcurve { spec, input } => {
            let d = load(&input.spec(&spec)?, &input.load_options()?)?;
            Ok(qcurve_csv(&d.distribution))
        }
        Command::Report { example, quantile_type: qt, json } => {
            let r = example_report(example, quantile_type(qt))?;
            if json {
                serde_json::to_string_pretty(&r).map_err(|e| Error::Io(e.to_string()))
            } else {
                Ok(r.render())
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match std::panic::catch_unwind(|| run(cli)) {
        Ok(Ok(mut out)) => {
            if !out.ends_with('\n') {
                out.push('\n');
            }
            // a closed pipe downstream is not an error
            let _ = std::io::stdout().lock().write_all(out.as_bytes());
            ExitCode::SUCCESS
        }
        Ok(Err(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(_) => ExitCode::from(1),
    }
}
