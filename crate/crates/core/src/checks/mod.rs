//! Named check catalogue, parameter parsing, and suite running.
//!
//! Every check is identified by a string id and a key-value parameter
//! map, runs deterministically from its seed, and produces a
//! [`CheckReport`]. Mathematical failures are reported, never raised;
//! errors are reserved for unusable requests (unknown id, bad
//! parameters, missing calibration).

pub mod algebra;
pub mod geometry;

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::geom::Calibration;
use crate::par::{hash_str, mix_seed};
use crate::report::{CheckReport, CheckStatus};
use crate::surface::SccSpec;
use crate::twist::{TwistSpec, TwistWitness};
use crate::CheckError;

/// One suite cell: a check id plus its parameter pairs.
pub type SuiteCell = (String, Vec<(String, String)>);

pub const CHECK_IDS: &[&str] = &[
    "cyclotomic",
    "metabelian",
    "scc-order",
    "twist-validity",
    "twist-power",
    "commuting-twists",
    "four-point",
    "triangle",
    "length-relations",
    "cone",
    "energy-chain",
    "fuchsian",
    "thinness",
];

pub fn requires_calibration(check_id: &str) -> bool {
    matches!(check_id, "four-point" | "length-relations" | "fuchsian" | "thinness")
}

#[derive(Debug, Clone)]
pub struct CheckRequest {
    pub check_id: String,
    pub params: BTreeMap<String, String>,
    pub output_path: Option<PathBuf>,
}

impl CheckRequest {
    pub fn new(check_id: &str, params: BTreeMap<String, String>) -> CheckRequest {
        CheckRequest { check_id: check_id.to_string(), params, output_path: None }
    }
}

struct Params<'a>(&'a BTreeMap<String, String>);

impl Params<'_> {
    fn u64(&self, key: &str, default: u64) -> Result<u64, CheckError> {
        match self.0.get(key) {
            None => Ok(default),
            Some(v) => {
                v.parse().map_err(|_| CheckError::BadParam(key.into(), v.clone()))
            }
        }
    }

    fn required_u64(&self, key: &str) -> Result<u64, CheckError> {
        self.0
            .get(key)
            .ok_or_else(|| CheckError::MissingParam(key.into()))?
            .parse()
            .map_err(|_| CheckError::BadParam(key.into(), self.0[key].clone()))
    }

    fn usize(&self, key: &str, default: usize) -> Result<usize, CheckError> {
        Ok(self.u64(key, default as u64)? as usize)
    }

    fn required_usize(&self, key: &str) -> Result<usize, CheckError> {
        Ok(self.required_u64(key)? as usize)
    }

    fn str(&self, key: &str) -> Result<&str, CheckError> {
        self.0
            .get(key)
            .map(String::as_str)
            .ok_or_else(|| CheckError::MissingParam(key.into()))
    }
}

fn dispatch(
    req: &CheckRequest,
    calibration: Option<&Calibration>,
) -> Result<CheckReport, CheckError> {
    let p = Params(&req.params);
    let seed = p.u64("seed", 0)?;
    let need_cal = || {
        calibration.ok_or(CheckError::MissingCalibration)
    };
    match req.check_id.as_str() {
        "cyclotomic" => algebra::cyclotomic(
            p.u64("product_max", 200)?,
            p.u64("chi_max", 32)?,
            p.u64("order_max", 64)?,
        ),
        "metabelian" => {
            algebra::metabelian(p.required_u64("n")?, p.u64("trials", 1000)?, seed)
        }
        "scc-order" => {
            let spec: SccSpec = p.str("spec")?.parse()?;
            algebra::scc_order(p.required_usize("genus")?, p.required_u64("n")?, spec)
        }
        "twist-validity" => {
            let spec: TwistSpec = p.str("spec")?.parse()?;
            algebra::twist_validity(p.required_usize("genus")?, spec)
        }
        "twist-power" => {
            let spec: TwistSpec = p.str("spec")?.parse()?;
            let witness: TwistWitness = p.str("witness")?.parse()?;
            algebra::twist_power(p.required_usize("genus")?, p.required_u64("n")?, spec, witness)
        }
        "commuting-twists" => {
            let s1: TwistSpec = p.str("spec")?.parse()?;
            let s2: TwistSpec = p.str("spec2")?.parse()?;
            let (TwistSpec::AlongA(j1), TwistSpec::AlongA(j2)) = (s1, s2) else {
                return Err(CheckError::BadParam(
                    "spec".into(),
                    "commuting twists run along a-curves".into(),
                ));
            };
            algebra::commuting_twists(p.required_usize("genus")?, p.required_u64("n")?, j1, j2)
        }
        "four-point" => geometry::four_point(need_cal()?, p.u64("samples", 100_000)?, seed),
        "triangle" => geometry::triangle(p.u64("samples", 100_000)?, seed),
        "length-relations" => {
            geometry::length_relations(need_cal()?, p.u64("count", 50)?, seed)
        }
        "cone" => geometry::cone(p.u64("samples", 10_000)?, seed),
        "energy-chain" => {
            geometry::energy_chain(p.u64("configs", 100)?, seed, p.usize("grid", 32)?)
        }
        "fuchsian" => geometry::fuchsian(need_cal()?),
        "thinness" => geometry::thinness(need_cal()?, p.u64("count", 20)?, seed),
        other => Err(CheckError::UnknownCheck(other.to_string())),
    }
}

/// Runs a request; usage problems come back as error-status reports with
/// the message in the counterexample slot.
pub fn run_check(req: &CheckRequest, calibration: Option<&Calibration>) -> CheckReport {
    let mut report = match dispatch(req, calibration) {
        Ok(report) => report,
        Err(e) => {
            return CheckReport::usage_error(&req.check_id, req.params.clone(), &e.to_string())
        }
    };
    if let Some(path) = &req.output_path {
        if let Err(e) = fs::write(path, report.to_json()) {
            report = CheckReport::usage_error(
                &req.check_id,
                req.params.clone(),
                &format!("cannot write report: {e}"),
            );
        }
    }
    report
}

/// Seed stream for one suite cell, derived from the suite seed, the
/// check id, and the parameter map.
pub fn cell_seed(suite_seed: u64, check_id: &str, params: &BTreeMap<String, String>) -> u64 {
    let mut h = hash_str(check_id);
    for (k, v) in params {
        h = mix_seed(h, hash_str(k));
        h = mix_seed(h, hash_str(v));
    }
    mix_seed(suite_seed, h)
}

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub reports: Vec<CheckReport>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.reports.iter().all(|r| r.status == CheckStatus::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.status == CheckStatus::Error) {
            2
        } else if self.reports.iter().any(|r| r.status == CheckStatus::Fail) {
            1
        } else {
            0
        }
    }

    pub fn summary(&self) -> String {
        let mut lines: Vec<String> =
            self.reports.iter().map(CheckReport::summary_line).collect();
        let passed = self.reports.iter().filter(|r| r.passed()).count();
        lines.push(format!("{passed}/{} cells passed", self.reports.len()));
        lines.join("\n")
    }
}

fn suite_cells(name: &str) -> Result<Vec<SuiteCell>, CheckError> {
    match name {
        "algebra" => Ok(algebra::algebra_cells()),
        "geometry" => Ok(geometry::geometry_cells()),
        "all" => {
            let mut cells = algebra::algebra_cells();
            cells.extend(geometry::geometry_cells());
            Ok(cells)
        }
        other => Err(CheckError::UnknownSuite(other.to_string())),
    }
}

/// Runs a named suite. Cells execute independently (in parallel when the
/// feature is on); report writing stays sequential. Geometry cells
/// require a calibration.
pub fn run_suite(
    name: &str,
    seed: u64,
    calibration: Option<&Calibration>,
    report_dir: Option<&Path>,
) -> Result<SuiteOutcome, CheckError> {
    let cells = suite_cells(name)?;
    if matches!(name, "geometry" | "all") && calibration.is_none() {
        return Err(CheckError::MissingCalibration);
    }
    let requests: Vec<CheckRequest> = cells
        .into_iter()
        .map(|(check_id, params)| {
            let mut params: BTreeMap<String, String> = params.into_iter().collect();
            params.insert(
                "seed".to_string(),
                cell_seed(seed, &check_id, &params).to_string(),
            );
            CheckRequest::new(&check_id, params)
        })
        .collect();

    #[cfg(feature = "parallel")]
    let reports: Vec<CheckReport> =
        requests.par_iter().map(|req| run_check(req, calibration)).collect();
    #[cfg(not(feature = "parallel"))]
    let reports: Vec<CheckReport> =
        requests.iter().map(|req| run_check(req, calibration)).collect();

    if let Some(dir) = report_dir {
        fs::create_dir_all(dir).map_err(|e| CheckError::Io(e.to_string()))?;
        for (i, report) in reports.iter().enumerate() {
            let file = dir.join(format!("{:04}-{}.json", i, report.check_id));
            fs::write(file, report.to_json()).map_err(|e| CheckError::Io(e.to_string()))?;
        }
        let summary: String = reports
            .iter()
            .map(|r| serde_json::to_string(r).expect("report serializes"))
            .collect::<Vec<_>>()
            .join("\n");
        fs::write(dir.join("summary.ndjson"), summary)
            .map_err(|e| CheckError::Io(e.to_string()))?;
    }
    Ok(SuiteOutcome { reports })
}
