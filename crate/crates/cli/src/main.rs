mod io;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use curstat::simulation::MODEL4_RATE;
use curstat::{
    estimate_cdf, monte_carlo, BasisFamily, Contender, Error, EstimatorConfig, Method,
    MonteCarloConfig, SimModel,
};

const EXIT_USAGE: u8 = 1;
const EXIT_DATA: u8 = 2;
const EXIT_NUMERICAL: u8 = 3;

#[derive(Parser)]
#[command(
    name = "curstat",
    version,
    about = "Estimate a distribution function from current-status data"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Estimate F from a `u,delta` file and print it on a grid.
    Estimate {
        /// Input file, one `u,delta` observation per line.
        input: PathBuf,
        #[command(flatten)]
        est: EstimatorArgs,
        /// Output file; standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw a sample from a simulation model and estimate F from it.
    Simulate {
        /// Model id, 1 to 5.
        #[arg(long)]
        model: u8,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[command(flatten)]
        est: EstimatorArgs,
        /// Rate of model 4; 0.5 gives the literal reading of its parameter.
        #[arg(long, default_value_t = MODEL4_RATE)]
        model4_rate: f64,
        /// Directory receiving `sample.csv` and `estimate.txt`.
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo MSE comparison of the estimators.
    Bench {
        /// Model ids (default: all five).
        #[arg(long, value_delimiter = ',')]
        model: Vec<u8>,
        /// Sample sizes (default: 60,200,500,1000).
        #[arg(long, value_delimiter = ',')]
        n: Vec<usize>,
        /// Methods (default: all four).
        #[arg(long, value_delimiter = ',')]
        method: Vec<Method>,
        #[arg(long, default_value_t = 100)]
        reps: usize,
        #[arg(long, default_value_t = 20_100_501)]
        seed: u64,
        #[arg(long)]
        threads: Option<usize>,
        /// Rate of model 4; 0.5 gives the literal reading of its parameter.
        #[arg(long, default_value_t = MODEL4_RATE)]
        model4_rate: f64,
        #[command(flatten)]
        penalties: PenaltyArgs,
        /// Directory receiving `mse.csv` and `table.txt`; the table goes to
        /// standard output when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct PenaltyArgs {
    #[arg(long, default_value = "dyadic")]
    family: BasisFamily,
    /// Penalty constant of the density estimators.
    #[arg(long, default_value_t = 4.0)]
    kappa: f64,
    /// Penalty constant of the regression estimator.
    #[arg(long, default_value_t = 4.0)]
    kappa0: f64,
    /// Largest polynomial degree of the piecewise families.
    #[arg(long, default_value_t = 9)]
    rmax: usize,
    /// Clamp the regression estimate to [0, 1].
    #[arg(long)]
    clamp: bool,
}

#[derive(Args)]
struct EstimatorArgs {
    #[arg(long, default_value = "quotient")]
    method: Method,
    #[arg(long, default_value_t = 512)]
    grid: usize,
    #[command(flatten)]
    penalties: PenaltyArgs,
}

enum Failure {
    Usage(String),
    Data(String),
    Numerical(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidConfig(_) => Failure::Usage(e.to_string()),
            Error::Numerical(_) => Failure::Numerical(e.to_string()),
            _ => Failure::Data(e.to_string()),
        }
    }
}

impl PenaltyArgs {
    fn config(&self) -> Result<EstimatorConfig, Failure> {
        let mut cfg = EstimatorConfig {
            family: self.family.with_max_degree(self.rmax),
            ..EstimatorConfig::default()
        };
        cfg.density.kappa = self.kappa;
        cfg.regression.kappa0 = self.kappa0;
        cfg.regression.clamp = self.clamp;
        cfg.validate()?;
        Ok(cfg)
    }
}

fn sim_model(id: u8, model4_rate: f64) -> Result<SimModel, Failure> {
    if !(model4_rate.is_finite() && model4_rate > 0.0) {
        return Err(Failure::Usage(format!(
            "model 4 rate must be positive, got {model4_rate}"
        )));
    }
    match SimModel::from_id(id)? {
        SimModel::Exponential { .. } => Ok(SimModel::Exponential { rate: model4_rate }),
        m => Ok(m),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| Failure::Data(format!("{}: {e}", path.display())))
}

fn estimate_document(
    est: &EstimatorArgs,
    sample: &curstat::ObservationSample,
) -> Result<String, Failure> {
    if est.grid == 0 {
        return Err(Failure::Usage("grid needs at least one point".into()));
    }
    let cfg = est.penalties.config()?;
    let estimate = estimate_cdf(est.method, sample, &cfg)?;
    Ok(io::format_estimate(&estimate, sample.len(), est.grid))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Estimate { input, est, out } => {
            let text = fs::read_to_string(&input)
                .map_err(|e| Failure::Data(format!("{}: {e}", input.display())))?;
            let sample = io::parse_sample(&text)
                .map_err(|e| Failure::Data(format!("{}: {e}", input.display())))?;
            let doc = estimate_document(&est, &sample)?;
            match out {
                Some(path) => write_file(&path, &doc),
                None => {
                    print!("{doc}");
                    Ok(())
                }
            }
        }
        Command::Simulate {
            model,
            n,
            seed,
            est,
            model4_rate,
            out,
        } => {
            let model = sim_model(model, model4_rate)?;
            let sample = model.generate(n, seed)?;
            let doc = estimate_document(&est, &sample)?;
            fs::create_dir_all(&out)
                .map_err(|e| Failure::Data(format!("{}: {e}", out.display())))?;
            write_file(&out.join("sample.csv"), &io::format_sample(&sample))?;
            write_file(&out.join("estimate.txt"), &doc)
        }
        Command::Bench {
            model,
            n,
            method,
            reps,
            seed,
            threads,
            model4_rate,
            penalties,
            out,
        } => {
            let defaults = MonteCarloConfig::default();
            let ids = if model.is_empty() {
                defaults.models.iter().map(SimModel::id).collect()
            } else {
                model
            };
            let models = ids
                .into_iter()
                .map(|id| sim_model(id, model4_rate))
                .collect::<Result<_, _>>()?;
            let cfg = MonteCarloConfig {
                models,
                contenders: if method.is_empty() {
                    defaults.contenders.clone()
                } else {
                    method.into_iter().map(Contender::from).collect()
                },
                sample_sizes: if n.is_empty() {
                    defaults.sample_sizes.clone()
                } else {
                    n
                },
                replications: reps,
                seed,
                estimators: penalties.config()?,
                threads,
            };
            let report = monte_carlo(&cfg)?;
            match out {
                Some(dir) => {
                    fs::create_dir_all(&dir)
                        .map_err(|e| Failure::Data(format!("{}: {e}", dir.display())))?;
                    write_file(&dir.join("mse.csv"), &report.to_csv())?;
                    write_file(&dir.join("table.txt"), &report.to_table())
                }
                None => {
                    print!("{}", report.to_table());
                    Ok(())
                }
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Data(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_DATA)
        }
        Err(Failure::Numerical(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_NUMERICAL)
        }
    }
}
