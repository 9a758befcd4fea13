//! Command implementations behind the `fluidcell` binary.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::config::Association;
use crate::error::{Error, Result};
use crate::fluid::{cell_average_throughput, cell_edge_throughput, FluidParams};
use crate::montecarlo::{
    cdf_horizontal_shift_db, empirical_cdf, outage_probability, run_campaign, EmpiricalCdf,
};
use crate::report::{read_cdf_csv, write_cdf_csv, write_json, QuantileTable};
use crate::scenario::Scenario;

/// Summary JSON written by `simulate`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimulateSummary {
    pub scenario: Scenario,
    pub combos: Vec<ComboSummary>,
    /// Horizontal shifts of each sigma > 0 CDF against the sigma = 0
    /// baseline of the same (eta, association), when a baseline exists.
    pub shifts_vs_no_shadowing: Vec<ShiftSummary>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComboSummary {
    pub eta: f64,
    pub sigma_db: f64,
    pub association: Association,
    pub file: String,
    pub n_samples: usize,
    pub n_skipped: u64,
    pub outage: Vec<OutageEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct OutageEntry {
    pub threshold_db: f64,
    pub probability: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ShiftSummary {
    pub eta: f64,
    pub sigma_db: f64,
    pub association: Association,
    pub p_lo: f64,
    pub p_hi: f64,
    pub max_shift_db: f64,
    pub argmax_p: f64,
}

/// Summary JSON written by `fluid`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FluidSummary {
    pub entries: Vec<FluidEntry>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FluidEntry {
    pub eta: f64,
    pub params: FluidParams,
    pub correction_db: f64,
    pub cell_edge_throughput_bps_hz: f64,
    pub cell_average_throughput_bps_hz: f64,
    pub unmodified_file: String,
    pub modified_file: String,
}

/// Report produced by `compare`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CompareReport {
    pub file_a: String,
    pub file_b: String,
    pub p_lo: f64,
    pub p_hi: f64,
    pub max_shift_db: f64,
    pub argmax_p: f64,
    pub profile: Vec<ProfileRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub threshold_db: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProfileRow {
    pub p: f64,
    pub shift_db: f64,
}

fn format_float(v: f64) -> String {
    // keeps file names stable: 3 -> "3", 2.6 -> "2.6"
    let s = format!("{v}");
    s.replace('.', "p")
}

fn cdf_file_name(eta: f64, sigma_db: f64, association: Association) -> String {
    format!(
        "cdf_eta{}_sigma{}_{}.csv",
        format_float(eta),
        format_float(sigma_db),
        association.label()
    )
}

/// Runs every (eta, sigma, association) combination of the scenario,
/// writing one CDF CSV each plus `summary.json`.
pub fn cmd_simulate(scenario: &Scenario, out_dir: &Path) -> Result<SimulateSummary> {
    scenario.validate()?;
    std::fs::create_dir_all(out_dir)?;

    let etas = scenario.eta_list();
    let sigmas = scenario.sigma_list();
    let thresholds = &scenario.output.outage_thresholds_db;

    let mut combos = Vec::new();
    let mut shifts = Vec::new();
    for &association in &scenario.sweep.associations {
        for &eta in &etas {
            let mut baseline: Option<EmpiricalCdf> = None;
            let mut shadowed: Vec<(f64, EmpiricalCdf)> = Vec::new();
            for &sigma in &sigmas {
                let config = scenario.network_config(eta, sigma)?;
                let set = run_campaign(&config, association, sigma > 0.0)?;
                let cdf = empirical_cdf(&set)?;
                let file = cdf_file_name(eta, sigma, association);
                write_cdf_csv(&out_dir.join(&file), &QuantileTable::from_empirical(&cdf))?;
                combos.push(ComboSummary {
                    eta,
                    sigma_db: sigma,
                    association,
                    file,
                    n_samples: set.samples_db.len(),
                    n_skipped: set.n_skipped,
                    outage: thresholds
                        .iter()
                        .map(|&t| OutageEntry {
                            threshold_db: t,
                            probability: outage_probability(&cdf, t),
                        })
                        .collect(),
                });
                if sigma == 0.0 {
                    baseline = Some(cdf);
                } else {
                    shadowed.push((sigma, cdf));
                }
            }
            if let Some(base) = baseline {
                for (sigma, cdf) in &shadowed {
                    let profile = cdf_horizontal_shift_db(
                        cdf,
                        &base,
                        scenario.compare.p_lo,
                        scenario.compare.p_hi,
                    )?;
                    shifts.push(ShiftSummary {
                        eta,
                        sigma_db: *sigma,
                        association,
                        p_lo: scenario.compare.p_lo,
                        p_hi: scenario.compare.p_hi,
                        max_shift_db: profile.max_abs_db,
                        argmax_p: profile.argmax_p,
                    });
                }
            }
        }
    }

    let summary = SimulateSummary {
        scenario: scenario.clone(),
        combos,
        shifts_vs_no_shadowing: shifts,
    };
    write_json(&out_dir.join("summary.json"), &summary)?;
    Ok(summary)
}

/// Writes the analytic CDFs (modified and unmodified) and the throughput
/// summary for every eta of the scenario.
pub fn cmd_fluid(scenario: &Scenario, out_dir: &Path) -> Result<FluidSummary> {
    scenario.validate()?;
    std::fs::create_dir_all(out_dir)?;
    let mut entries = Vec::new();
    for &eta in &scenario.eta_list() {
        let params = scenario.fluid_params(eta)?;
        let unmodified_file = format!("fluid_cdf_eta{}_unmodified.csv", format_float(eta));
        let modified_file = format!("fluid_cdf_eta{}_modified.csv", format_float(eta));
        write_cdf_csv(
            &out_dir.join(&unmodified_file),
            &QuantileTable::from_fluid(&params, false)?,
        )?;
        write_cdf_csv(
            &out_dir.join(&modified_file),
            &QuantileTable::from_fluid(&params, true)?,
        )?;
        entries.push(FluidEntry {
            eta,
            params,
            correction_db: params.correction_db(),
            cell_edge_throughput_bps_hz: cell_edge_throughput(&params)?,
            cell_average_throughput_bps_hz: cell_average_throughput(&params)?,
            unmodified_file,
            modified_file,
        });
    }
    let summary = FluidSummary { entries };
    write_json(&out_dir.join("fluid_summary.json"), &summary)?;
    Ok(summary)
}

/// Compares two CDF CSV files at matched probability levels.
pub fn cmd_compare(
    file_a: &Path,
    file_b: &Path,
    p_lo: f64,
    p_hi: f64,
    threshold_db: Option<f64>,
) -> Result<CompareReport> {
    let table_a = read_cdf_csv(file_a)?;
    let table_b = read_cdf_csv(file_b)?;
    let profile = cdf_horizontal_shift_db(&table_a, &table_b, p_lo, p_hi)?;
    let pass = threshold_db.map(|t| profile.max_abs_db <= t);
    Ok(CompareReport {
        file_a: file_a.display().to_string(),
        file_b: file_b.display().to_string(),
        p_lo,
        p_hi,
        max_shift_db: profile.max_abs_db,
        argmax_p: profile.argmax_p,
        profile: profile
            .probs
            .iter()
            .zip(&profile.shifts_db)
            .map(|(&p, &shift_db)| ProfileRow { p, shift_db })
            .collect(),
        threshold_db,
        pass,
    })
}

/// Output directory resolution: flag wins, then the environment variable,
/// then the scenario's own setting.
pub fn resolve_out_dir(flag: Option<&Path>, scenario: &Scenario) -> PathBuf {
    if let Some(dir) = flag {
        return dir.to_path_buf();
    }
    if let Ok(dir) = std::env::var("FLUIDCELL_OUT_DIR") {
        if !dir.is_empty() {
            return PathBuf::from(dir);
        }
    }
    PathBuf::from(&scenario.output.dir)
}

/// Maps an error to the documented process exit code.
pub fn exit_code_for(err: &Error) -> i32 {
    err.exit_code()
}
