//! `pql`: run named checks and suites, or calibrate the geometry layer.
//!
//! Exit codes: 0 all checks passed, 1 a mathematical check failed,
//! 2 usage or configuration error.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use pql_core::checks::{self, CheckRequest};
use pql_core::geom::{calibrate, Calibration};
use pql_core::report::CheckStatus;

#[derive(Parser)]
#[command(name = "pql", version, about = "Power-quotient certificate checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CheckParams {
    /// Modulus of the witness ring / periodicity exponent
    #[arg(long)]
    n: Option<u64>,

    /// Surface genus
    #[arg(long)]
    genus: Option<u64>,

    /// Curve or twist spec: `nonsep`, `sep:I`, `twist:aJ`, `twist:sep:I`
    #[arg(long)]
    spec: Option<String>,

    /// Second twist spec for the commuting-twists check
    #[arg(long)]
    spec2: Option<String>,

    /// Witness for twist-power checks: `qn` or `h1`
    #[arg(long)]
    witness: Option<String>,

    /// Sample count for sampled checks
    #[arg(long)]
    samples: Option<u64>,

    /// Trial count for the metabelian check
    #[arg(long)]
    trials: Option<u64>,

    /// Matrix / configuration count for geometry checks
    #[arg(long)]
    count: Option<u64>,

    /// Grid resolution for energy searches
    #[arg(long)]
    resolution: Option<u64>,

    /// RNG seed (echoed in the report)
    #[arg(long)]
    seed: Option<u64>,
}

impl CheckParams {
    fn to_map(&self) -> BTreeMap<String, String> {
        let mut map = BTreeMap::new();
        let mut put = |k: &str, v: Option<String>| {
            if let Some(v) = v {
                map.insert(k.to_string(), v);
            }
        };
        put("n", self.n.map(|v| v.to_string()));
        put("genus", self.genus.map(|v| v.to_string()));
        put("spec", self.spec.clone());
        put("spec2", self.spec2.clone());
        put("witness", self.witness.clone());
        put("samples", self.samples.map(|v| v.to_string()));
        put("trials", self.trials.map(|v| v.to_string()));
        put("count", self.count.map(|v| v.to_string()));
        put("grid", self.resolution.map(|v| v.to_string()));
        put("seed", self.seed.map(|v| v.to_string()));
        map
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run one named check and print its JSON report
    Check {
        /// Check id; see `pql check list`
        check_id: String,

        #[command(flatten)]
        params: CheckParams,

        /// Calibration file for geometry checks
        #[arg(long, default_value = "calibration.json")]
        calibration: PathBuf,

        /// Also write the report to this path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a check suite: `algebra`, `geometry`, or `all`
    Suite {
        name: String,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        /// Directory receiving one JSON report per cell plus a summary
        #[arg(long)]
        report_dir: Option<PathBuf>,

        #[arg(long, default_value = "calibration.json")]
        calibration: PathBuf,
    },
    /// Measure the four-point constant and freeze the octagon data
    Calibrate {
        #[arg(long, default_value_t = 1_000_000)]
        samples: u64,

        #[arg(long, default_value_t = 0)]
        seed: u64,

        #[arg(long, default_value = "calibration.json")]
        out: PathBuf,
    },
}

fn load_calibration(path: &Path, required: bool) -> Result<Option<Calibration>, String> {
    if !path.exists() {
        if required {
            return Err(format!(
                "calibration file `{}` not found; run `pql calibrate` first",
                path.display()
            ));
        }
        return Ok(None);
    }
    Calibration::load(path).map(Some).map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Check { check_id, params, calibration, out } => {
            if check_id == "list" {
                for id in checks::CHECK_IDS {
                    println!("{id}");
                }
                return ExitCode::SUCCESS;
            }
            let required = checks::requires_calibration(&check_id);
            let cal = match load_calibration(&calibration, required) {
                Ok(cal) => cal,
                Err(message) => {
                    eprintln!("error: {message}");
                    return ExitCode::from(2);
                }
            };
            let mut req = CheckRequest::new(&check_id, params.to_map());
            req.output_path = out;
            let report = checks::run_check(&req, cal.as_ref());
            println!("{}", report.to_json());
            match report.status {
                CheckStatus::Pass => ExitCode::SUCCESS,
                CheckStatus::Fail => ExitCode::from(1),
                CheckStatus::Error => ExitCode::from(2),
            }
        }
        Command::Suite { name, seed, report_dir, calibration } => {
            let required = matches!(name.as_str(), "geometry" | "all");
            let cal = match load_calibration(&calibration, required) {
                Ok(cal) => cal,
                Err(message) => {
                    eprintln!("error: {message}");
                    return ExitCode::from(2);
                }
            };
            match checks::run_suite(&name, seed, cal.as_ref(), report_dir.as_deref()) {
                Ok(outcome) => {
                    println!("{}", outcome.summary());
                    ExitCode::from(outcome.exit_code() as u8)
                }
                Err(e) => {
                    eprintln!("error: {e}");
                    ExitCode::from(2)
                }
            }
        }
        Command::Calibrate { samples, seed, out } => {
            let cal = calibrate(samples, seed);
            if let Err(e) = cal.save(&out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            println!(
                "delta_hat = {:.9} ({} samples, seed {}), octagon length {:.9} -> {}",
                cal.delta_hat,
                cal.samples,
                cal.seed,
                cal.generator_length,
                out.display()
            );
            ExitCode::SUCCESS
        }
    }
}
