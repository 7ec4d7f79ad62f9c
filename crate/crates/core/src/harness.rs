//! Scenario and campaign configuration, execution, and report output.
//!
//! Configs are JSON documents; complex numbers are `[re, im]` pairs. The
//! schema is documented in `docs/config.md`.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::attack::AttackChannel;
use crate::bounds::{audit_attack, compute_report, BoundsReport};
use crate::error::Error;
use crate::linalg::{tol, ComplexMatrix, StateVector, C64};
use crate::rng::derive_seed;
use crate::symmetrize::{purification_vectors, sigma_matrix, symmetrize, SigmaAnalysis};
use crate::zoo::{make_attack, random_attack, AttackKind, AttackSpec};

/// Exact CSV header for report rows.
pub const CSV_HEADER: &str = "attack_id,n,eve_dim,delta,h_xor,chi_orig,chi_sym,i_lower,boykin_rhs,corollary_rhs,slack_main,slack_measured,spectrum_deviation";

/// Sub-stream tag separating measurement-search seeds from attack seeds.
const POVM_STREAM: u64 = 0x504f_564d;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid `{field}`: {message}")]
    Validation { field: String, message: String },
    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] Error),
}

impl HarnessError {
    /// Process exit status: 2 validation, 3 theorem violation, 4 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Parse { .. } | HarnessError::Validation { .. } => 2,
            HarnessError::Core(Error::TheoremViolation(_)) => 3,
            HarnessError::Core(_) => 2,
            HarnessError::Io { .. } => 4,
        }
    }

    fn validation(field: &str, message: impl Into<String>) -> Self {
        HarnessError::Validation {
            field: field.to_string(),
            message: message.into(),
        }
    }

    fn io(path: &Path, source: std::io::Error) -> Self {
        HarnessError::Io {
            path: path.to_path_buf(),
            source,
        }
    }
}

impl From<serde_json::Error> for HarnessError {
    fn from(e: serde_json::Error) -> Self {
        HarnessError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        }
    }
}

pub type HarnessResult<T> = std::result::Result<T, HarnessError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Analysis {
    Audit,
    SigmaSpectrum,
    Sweep,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AttackSource {
    Builtin(AttackSpec),
    Explicit {
        unitary: ComplexMatrix,
        ancilla: StateVector,
    },
}

#[derive(Clone, Debug, PartialEq)]
pub struct ScenarioConfig {
    pub n_qubits: usize,
    pub attack: AttackSource,
    pub povm_samples: usize,
    pub seed: u64,
    pub analyses: Vec<Analysis>,
    pub sweep_values: Vec<f64>,
}

impl ScenarioConfig {
    pub fn has(&self, a: Analysis) -> bool {
        self.analyses.contains(&a)
    }

    fn check_sweep(&self) -> HarnessResult<()> {
        match &self.attack {
            AttackSource::Builtin(spec) if spec.params.len() == 1 => Ok(()),
            _ => Err(HarnessError::validation(
                "analyses",
                "sweep needs a built-in attack with one parameter",
            )),
        }
    }

    /// Adds the sweep analysis if the attack supports it.
    pub fn enable_sweep(&mut self) -> HarnessResult<()> {
        self.check_sweep()?;
        if !self.has(Analysis::Sweep) {
            self.analyses.push(Analysis::Sweep);
        }
        Ok(())
    }

    pub fn attack_id(&self) -> String {
        match &self.attack {
            AttackSource::Builtin(spec) => spec.kind.name().to_string(),
            AttackSource::Explicit { .. } => "explicit".to_string(),
        }
    }

    pub fn build_attack(&self) -> HarnessResult<AttackChannel> {
        match &self.attack {
            AttackSource::Builtin(spec) => Ok(make_attack(spec)?),
            AttackSource::Explicit { unitary, ancilla } => {
                AttackChannel::from_unitary(unitary, ancilla, self.n_qubits)
                    .map_err(|e| HarnessError::validation("attack.unitary", e.to_string()))
            }
        }
    }
}

type RawComplex = [f64; 2];

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawAttack {
    kind: String,
    #[serde(default)]
    params: Vec<f64>,
    eve_dim: Option<i64>,
    seed: Option<u64>,
    unitary: Option<Vec<Vec<RawComplex>>>,
    ancilla: Option<Vec<RawComplex>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSweep {
    values: Vec<f64>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawScenario {
    n_qubits: i64,
    attack: RawAttack,
    #[serde(default = "default_samples")]
    povm_samples: i64,
    #[serde(default)]
    seed: u64,
    #[serde(default = "default_analyses")]
    analyses: Vec<Analysis>,
    sweep: Option<RawSweep>,
}

fn default_samples() -> i64 {
    64
}

fn default_analyses() -> Vec<Analysis> {
    vec![Analysis::Audit]
}

/// θ = kπ/12 for k = 0..6.
pub fn default_sweep_values() -> Vec<f64> {
    (0..=6)
        .map(|k| k as f64 * std::f64::consts::PI / 12.0)
        .collect()
}

fn complex(z: &RawComplex) -> C64 {
    C64::new(z[0], z[1])
}

fn check_qubits(field: &str, n: i64) -> HarnessResult<usize> {
    if n < 1 || n as usize > tol::N_MAX {
        return Err(HarnessError::validation(
            field,
            format!("must be in 1..={}, got {n}", tol::N_MAX),
        ));
    }
    Ok(n as usize)
}

pub fn parse_scenario(text: &[u8]) -> HarnessResult<ScenarioConfig> {
    let text = std::str::from_utf8(text).map_err(|e| HarnessError::Parse {
        line: 0,
        column: 0,
        message: format!("not UTF-8: {e}"),
    })?;
    let raw: RawScenario = serde_json::from_str(text)?;

    let n = check_qubits("n_qubits", raw.n_qubits)?;
    if raw.povm_samples < 0 {
        return Err(HarnessError::validation(
            "povm_samples",
            format!("must be non-negative, got {}", raw.povm_samples),
        ));
    }
    if raw.analyses.is_empty() {
        return Err(HarnessError::validation(
            "analyses",
            "at least one analysis is required",
        ));
    }

    let a = raw.attack;
    let attack = if a.kind == "explicit" {
        if !a.params.is_empty() || a.eve_dim.is_some() || a.seed.is_some() {
            return Err(HarnessError::validation(
                "attack",
                "explicit attacks take only `unitary` and `ancilla`",
            ));
        }
        let rows = a
            .unitary
            .ok_or_else(|| HarnessError::validation("attack.unitary", "missing"))?;
        let ancilla = a
            .ancilla
            .ok_or_else(|| HarnessError::validation("attack.ancilla", "missing"))?;
        let dim = rows.len();
        if dim == 0 || rows.iter().any(|r| r.len() != dim) {
            return Err(HarnessError::validation(
                "attack.unitary",
                "must be a non-empty square matrix",
            ));
        }
        let unitary =
            ComplexMatrix::from_vec(dim, dim, rows.iter().flatten().map(complex).collect())
                .map_err(|e| HarnessError::validation("attack.unitary", e.to_string()))?;
        let ancilla = StateVector::new(ancilla.iter().map(complex).collect());
        if ancilla.dim() == 0 || ancilla.dim() << n != dim {
            return Err(HarnessError::validation(
                "attack.ancilla",
                format!(
                    "ancilla dimension {} times 2^{n} does not match the {dim}-dimensional unitary",
                    ancilla.dim()
                ),
            ));
        }
        if !ancilla.is_normalized(tol::UNIT) {
            return Err(HarnessError::validation(
                "attack.ancilla",
                "must be normalized",
            ));
        }
        let residual = unitary.unitarity_residual();
        if residual > tol::UNIT {
            return Err(HarnessError::validation(
                "attack.unitary",
                format!("not unitary (residual {residual:e})"),
            ));
        }
        AttackSource::Explicit { unitary, ancilla }
    } else {
        if a.unitary.is_some() || a.ancilla.is_some() {
            return Err(HarnessError::validation(
                "attack",
                "`unitary` and `ancilla` require kind \"explicit\"",
            ));
        }
        let kind: AttackKind = a
            .kind
            .parse()
            .map_err(|e: Error| HarnessError::validation("attack.kind", e.to_string()))?;
        let eve_dim = match a.eve_dim {
            Some(d) if d < 1 => {
                return Err(HarnessError::validation(
                    "attack.eve_dim",
                    format!("must be positive, got {d}"),
                ))
            }
            d => d.map(|d| d as usize),
        };
        let spec = AttackSpec {
            kind,
            n,
            params: a.params,
            eve_dim,
            seed: a.seed,
        };
        spec.validate()
            .map_err(|e| HarnessError::validation("attack", e.to_string()))?;
        if kind == AttackKind::RandomUnitary {
            let joint = eve_dim.unwrap_or(1).saturating_mul(1 << n);
            if joint > tol::MAX_JOINT_DIM {
                return Err(HarnessError::validation(
                    "attack.eve_dim",
                    format!("joint dimension {joint} exceeds {}", tol::MAX_JOINT_DIM),
                ));
            }
        }
        AttackSource::Builtin(spec)
    };

    let sweep_values = match raw.sweep {
        Some(s) => {
            if s.values.iter().any(|v| !v.is_finite()) {
                return Err(HarnessError::validation("sweep.values", "must be finite"));
            }
            s.values
        }
        None => default_sweep_values(),
    };
    let cfg = ScenarioConfig {
        n_qubits: n,
        attack,
        povm_samples: raw.povm_samples as usize,
        seed: raw.seed,
        analyses: raw.analyses,
        sweep_values,
    };
    if cfg.has(Analysis::Sweep) {
        cfg.check_sweep()?;
    }
    Ok(cfg)
}

/// One line of a report, in CSV column order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReportRow {
    pub attack_id: String,
    pub n: usize,
    pub eve_dim: usize,
    pub delta: f64,
    pub h_xor: f64,
    pub chi_orig: f64,
    pub chi_sym: f64,
    pub i_lower: f64,
    pub boykin_rhs: f64,
    pub corollary_rhs: f64,
    pub slack_main: f64,
    pub slack_measured: f64,
    pub spectrum_deviation: f64,
}

impl ReportRow {
    pub fn from_report(attack_id: impl Into<String>, r: &BoundsReport) -> Self {
        Self {
            attack_id: attack_id.into(),
            n: r.n,
            eve_dim: r.eve_dim,
            delta: r.delta,
            h_xor: r.h_xor,
            chi_orig: r.chi_orig,
            chi_sym: r.chi_sym,
            i_lower: r.i_lower,
            boykin_rhs: r.boykin_rhs,
            corollary_rhs: r.corollary_rhs,
            slack_main: r.slack_main,
            slack_measured: r.slack_measured,
            spectrum_deviation: r.spectrum_deviation,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

/// 17 significant digits; negative zero prints as zero.
fn real(x: f64) -> String {
    format!("{:.16e}", x + 0.0)
}

pub fn write_report_csv(rows: &[ReportRow]) -> String {
    let mut out = String::with_capacity(64 + rows.len() * 256);
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let _ = write!(out, "{},{},{}", r.attack_id, r.n, r.eve_dim);
        for x in [
            r.delta,
            r.h_xor,
            r.chi_orig,
            r.chi_sym,
            r.i_lower,
            r.boykin_rhs,
            r.corollary_rhs,
            r.slack_main,
            r.slack_measured,
            r.spectrum_deviation,
        ] {
            out.push(',');
            out.push_str(&real(x));
        }
        out.push('\n');
    }
    out
}

pub fn write_report_json(rows: &[ReportRow]) -> String {
    let mut s = serde_json::to_string_pretty(rows).expect("rows serialize");
    s.push('\n');
    s
}

pub fn write_report(rows: &[ReportRow], format: ReportFormat) -> String {
    match format {
        ReportFormat::Csv => write_report_csv(rows),
        ReportFormat::Json => write_report_json(rows),
    }
}

/// Path of the JSON mirror written next to a CSV report.
pub fn json_mirror_path(csv_path: &Path) -> PathBuf {
    if csv_path.extension().is_some_and(|e| e == "json") {
        let mut p = csv_path.as_os_str().to_owned();
        p.push(".mirror.json");
        PathBuf::from(p)
    } else {
        csv_path.with_extension("json")
    }
}

/// Writes the CSV report to `path` and its JSON mirror beside it.
pub fn write_report_files(rows: &[ReportRow], path: &Path) -> HarnessResult<PathBuf> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;
    }
    fs::write(path, write_report_csv(rows)).map_err(|e| HarnessError::io(path, e))?;
    let mirror = json_mirror_path(path);
    fs::write(&mirror, write_report_json(rows)).map_err(|e| HarnessError::io(&mirror, e))?;
    Ok(mirror)
}

#[derive(Clone, Debug)]
pub struct ScenarioOutcome {
    pub report: BoundsReport,
    pub row: ReportRow,
    pub sigma: Option<SigmaAnalysis>,
    pub sweep: Vec<ReportRow>,
}

impl ScenarioOutcome {
    /// The audit row followed by any sweep rows.
    pub fn rows(&self) -> Vec<ReportRow> {
        std::iter::once(self.row.clone())
            .chain(self.sweep.iter().cloned())
            .collect()
    }
}

fn povm_seed(seed: u64) -> u64 {
    derive_seed(seed, &[POVM_STREAM])
}

/// Audits the configured attack; fails with `TheoremViolation` if any
/// audited attack breaks the inequalities.
pub fn run_scenario(cfg: &ScenarioConfig) -> HarnessResult<ScenarioOutcome> {
    let ch = cfg.build_attack()?;
    let report = audit_attack(&ch, cfg.povm_samples, povm_seed(cfg.seed))?;
    let row = ReportRow::from_report(cfg.attack_id(), &report);

    let sigma = if cfg.has(Analysis::SigmaSpectrum) {
        Some(sigma_matrix(&purification_vectors(&symmetrize(&ch)))?)
    } else {
        None
    };

    let sweep = if cfg.has(Analysis::Sweep) {
        let AttackSource::Builtin(base) = &cfg.attack else {
            return Err(HarnessError::validation(
                "analyses",
                "sweep needs a built-in attack",
            ));
        };
        cfg.sweep_values
            .iter()
            .map(|&v| {
                let spec = AttackSpec {
                    params: vec![v],
                    ..base.clone()
                };
                let report =
                    audit_attack(&make_attack(&spec)?, cfg.povm_samples, povm_seed(cfg.seed))?;
                Ok(ReportRow::from_report(
                    format!("{}:theta={v}", base.kind),
                    &report,
                ))
            })
            .collect::<HarnessResult<Vec<_>>>()?
    } else {
        Vec::new()
    };

    Ok(ScenarioOutcome {
        report,
        row,
        sigma,
        sweep,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GridCell {
    pub n: usize,
    pub eve_dim: usize,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CampaignConfig {
    pub grid: Vec<GridCell>,
    pub master_seed: u64,
    pub output: PathBuf,
    pub povm_samples: usize,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCampaign {
    grid: Vec<Vec<i64>>,
    count: i64,
    master_seed: u64,
    output: PathBuf,
    #[serde(default = "default_samples")]
    povm_samples: i64,
}

pub fn parse_campaign(text: &[u8]) -> HarnessResult<CampaignConfig> {
    let raw: RawCampaign = serde_json::from_slice(text)?;
    if raw.count < 0 {
        return Err(HarnessError::validation("count", "must be non-negative"));
    }
    let mut grid = Vec::with_capacity(raw.grid.len());
    for (k, cell) in raw.grid.iter().enumerate() {
        let field = format!("grid[{k}]");
        let (n, d, count) = match cell[..] {
            [n, d] => (n, d, raw.count),
            [n, d, c] if c >= 0 => (n, d, c),
            _ => {
                return Err(HarnessError::validation(
                    &field,
                    "expected [n, eve_dim] or [n, eve_dim, count] with count >= 0",
                ))
            }
        };
        let n = check_qubits(&field, n)?;
        if d < 1 || (d as usize).saturating_mul(1 << n) > tol::MAX_JOINT_DIM {
            return Err(HarnessError::validation(
                &field,
                format!(
                    "eve_dim {d} with n={n} is outside 1..=joint dimension {}",
                    tol::MAX_JOINT_DIM
                ),
            ));
        }
        grid.push(GridCell {
            n,
            eve_dim: d as usize,
            count: count as usize,
        });
    }
    if raw.povm_samples < 0 {
        return Err(HarnessError::validation(
            "povm_samples",
            "must be non-negative",
        ));
    }
    Ok(CampaignConfig {
        grid,
        master_seed: raw.master_seed,
        output: raw.output,
        povm_samples: raw.povm_samples as usize,
    })
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct CampaignSummary {
    pub attacks: usize,
    pub violations: usize,
    pub min_slack_main: f64,
    pub min_slack_measured: f64,
    pub max_spectrum_deviation: f64,
    pub worst_attack_id: Option<String>,
    pub worst_attack_seed: Option<u64>,
}

impl CampaignSummary {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }
}

/// Seed for attack `k` of cell (n, eve_dim).
pub fn campaign_seed(master_seed: u64, n: usize, eve_dim: usize, k: usize) -> u64 {
    derive_seed(master_seed, &[n as u64, eve_dim as u64, k as u64])
}

/// Audits every attack of the campaign in memory. Rows are ordered by
/// (cell, index) whatever the execution order.
pub fn campaign_rows(cfg: &CampaignConfig) -> HarnessResult<(Vec<ReportRow>, CampaignSummary)> {
    let jobs: Vec<(usize, usize, usize)> = cfg
        .grid
        .iter()
        .flat_map(|c| (0..c.count).map(move |k| (c.n, c.eve_dim, k)))
        .collect();
    let results: Vec<(ReportRow, u64)> = jobs
        .par_iter()
        .map(|&(n, d, k)| {
            let seed = campaign_seed(cfg.master_seed, n, d, k);
            let ch = random_attack(n, d, seed)?;
            let report = compute_report(&ch, cfg.povm_samples, povm_seed(seed))?;
            Ok((
                ReportRow::from_report(format!("random-n{n}-d{d}-k{k}"), &report),
                seed,
            ))
        })
        .collect::<Result<_, Error>>()?;

    let mut summary = CampaignSummary::default();
    for (idx, (row, seed)) in results.iter().enumerate() {
        let ok = row.slack_main >= -tol::THEOREM
            && row.slack_measured >= -tol::THEOREM
            && row.spectrum_deviation <= tol::THEOREM;
        summary.violations += usize::from(!ok);
        if idx == 0 || row.slack_main < summary.min_slack_main {
            summary.min_slack_main = row.slack_main;
            summary.worst_attack_id = Some(row.attack_id.clone());
            summary.worst_attack_seed = Some(*seed);
        }
        summary.min_slack_measured = if idx == 0 {
            row.slack_measured
        } else {
            summary.min_slack_measured.min(row.slack_measured)
        };
        summary.max_spectrum_deviation = summary.max_spectrum_deviation.max(row.spectrum_deviation);
    }
    summary.attacks = results.len();
    Ok((results.into_iter().map(|(r, _)| r).collect(), summary))
}

/// Runs the campaign and writes the CSV report (plus JSON mirror) to the
/// configured output path.
pub fn run_campaign(cfg: &CampaignConfig) -> HarnessResult<CampaignSummary> {
    let (rows, summary) = campaign_rows(cfg)?;
    write_report_files(&rows, &cfg.output)?;
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;

    const PHASE: &str =
        r#"{"n_qubits": 1, "attack": {"kind": "phase_conversion"}, "povm_samples": 8, "seed": 1}"#;

    fn validation_field(r: HarnessResult<ScenarioConfig>) -> String {
        match r {
            Err(HarnessError::Validation { field, .. }) => field,
            other => panic!("expected validation error, got {other:?}"),
        }
    }

    #[test]
    fn minimal_scenario() {
        let cfg = parse_scenario(PHASE.as_bytes()).unwrap();
        assert_eq!(cfg.n_qubits, 1);
        assert_eq!(cfg.povm_samples, 8);
        assert_eq!(cfg.analyses, vec![Analysis::Audit]);
        assert!(
            matches!(cfg.attack, AttackSource::Builtin(ref s) if s.kind == AttackKind::PhaseConversion)
        );
    }

    #[test]
    fn explicit_non_unitary_rejected() {
        let doc = r#"{"n_qubits": 1, "attack": {"kind": "explicit",
            "unitary": [[[1,0],[0,0]],[[0,0],[0.5,0]]], "ancilla": [[1,0]]}}"#;
        assert_eq!(
            validation_field(parse_scenario(doc.as_bytes())),
            "attack.unitary"
        );
    }

    #[test]
    fn explicit_unitary_accepted() {
        let doc = r#"{"n_qubits": 1, "attack": {"kind": "explicit",
            "unitary": [[[0,0],[1,0]],[[1,0],[0,0]]], "ancilla": [[1,0]]}, "povm_samples": 0}"#;
        let cfg = parse_scenario(doc.as_bytes()).unwrap();
        let out = run_scenario(&cfg).unwrap();
        // A bit flip acts as a phase on the conjugate basis: no errors there.
        assert_eq!(out.row.attack_id, "explicit");
        assert!(out.report.h_xor.abs() < 1e-12);
    }

    #[test]
    fn negative_samples_rejected() {
        let doc = PHASE.replace("\"povm_samples\": 8", "\"povm_samples\": -1");
        assert_eq!(
            validation_field(parse_scenario(doc.as_bytes())),
            "povm_samples"
        );
    }

    #[test]
    fn parse_errors_carry_location() {
        match parse_scenario(b"{\n  \"n_qubits\": 1,\n  oops\n}") {
            Err(HarnessError::Parse { line, .. }) => assert_eq!(line, 3),
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_scenario(br#"{"n_qubits": 1, "attack": {"kind": "identity"}, "extra": 1}"#),
            Err(HarnessError::Parse { .. })
        ));
    }

    #[test]
    fn bad_fields_name_themselves() {
        let doc = r#"{"n_qubits": 9, "attack": {"kind": "identity"}}"#;
        assert_eq!(validation_field(parse_scenario(doc.as_bytes())), "n_qubits");
        let doc = r#"{"n_qubits": 1, "attack": {"kind": "nope"}}"#;
        assert_eq!(
            validation_field(parse_scenario(doc.as_bytes())),
            "attack.kind"
        );
        let doc = r#"{"n_qubits": 2, "attack": {"kind": "probe_overlap", "params": [0.1]}}"#;
        assert_eq!(validation_field(parse_scenario(doc.as_bytes())), "attack");
        let doc = r#"{"n_qubits": 1, "attack": {"kind": "identity"}, "analyses": ["sweep"]}"#;
        assert_eq!(validation_field(parse_scenario(doc.as_bytes())), "analyses");
        let doc =
            r#"{"n_qubits": 4, "attack": {"kind": "random_unitary", "eve_dim": 64, "seed": 1}}"#;
        assert_eq!(
            validation_field(parse_scenario(doc.as_bytes())),
            "attack.eve_dim"
        );
    }

    #[test]
    fn exit_codes() {
        assert_eq!(HarnessError::validation("x", "y").exit_code(), 2);
        assert_eq!(parse_scenario(b"{").unwrap_err().exit_code(), 2);
        let report = compute_report(
            &make_attack(&AttackSpec::new(AttackKind::Identity, 1)).unwrap(),
            0,
            0,
        )
        .unwrap();
        assert_eq!(
            HarnessError::Core(Error::TheoremViolation(Box::new(report))).exit_code(),
            3
        );
        let io = HarnessError::io(Path::new("x"), std::io::Error::other("boom"));
        assert_eq!(io.exit_code(), 4);
    }

    #[test]
    fn csv_layout() {
        let cfg = parse_scenario(PHASE.as_bytes()).unwrap();
        let out = run_scenario(&cfg).unwrap();
        let csv = write_report_csv(std::slice::from_ref(&out.row));
        let mut lines = csv.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let fields: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(fields.len(), 13);
        assert_eq!(fields[0], "phase_conversion");
        assert_eq!(fields[3], "1.0000000000000000e0");
        assert_eq!(fields[4], "0.0000000000000000e0");
        assert_eq!(fields[8], "4.0000000000000000e0");
    }

    #[test]
    fn json_mirror_has_same_fields() {
        let cfg = parse_scenario(PHASE.as_bytes()).unwrap();
        let row = run_scenario(&cfg).unwrap().row;
        let json = write_report_json(std::slice::from_ref(&row));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        let keys: Vec<&str> = value[0]
            .as_object()
            .unwrap()
            .keys()
            .map(|k| k.as_str())
            .collect();
        let mut header: Vec<&str> = CSV_HEADER.split(',').collect();
        let mut sorted = keys.clone();
        sorted.sort_unstable();
        header.sort_unstable();
        assert_eq!(sorted, header);
        let back: Vec<ReportRow> = serde_json::from_str(&json).unwrap();
        assert_eq!(back[0], row);
    }

    #[test]
    fn empty_campaign() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = CampaignConfig {
            grid: vec![],
            master_seed: 1,
            output: dir.path().join("out.csv"),
            povm_samples: 4,
        };
        let summary = run_campaign(&cfg).unwrap();
        assert_eq!(summary, CampaignSummary::default());
        let csv = fs::read_to_string(&cfg.output).unwrap();
        assert_eq!(csv, format!("{CSV_HEADER}\n"));
        assert!(json_mirror_path(&cfg.output).exists());
    }

    #[test]
    fn campaign_config_validation() {
        let ok = br#"{"grid": [[1, 2]], "count": 3, "master_seed": 9, "output": "x.csv"}"#;
        let cell = GridCell {
            n: 1,
            eve_dim: 2,
            count: 3,
        };
        assert_eq!(parse_campaign(ok).unwrap().grid, vec![cell]);
        let ovr =
            br#"{"grid": [[1, 2, 5], [2, 1]], "count": 3, "master_seed": 9, "output": "x.csv"}"#;
        let counts: Vec<usize> = parse_campaign(ovr)
            .unwrap()
            .grid
            .iter()
            .map(|c| c.count)
            .collect();
        assert_eq!(counts, vec![5, 3]);
        let bad = br#"{"grid": [[1]], "count": 3, "master_seed": 9, "output": "x.csv"}"#;
        assert!(
            matches!(parse_campaign(bad), Err(HarnessError::Validation { field, .. }) if field == "grid[0]")
        );
        let big = br#"{"grid": [[4, 64]], "count": 3, "master_seed": 9, "output": "x.csv"}"#;
        assert!(
            matches!(parse_campaign(big), Err(HarnessError::Validation { field, .. }) if field == "grid[0]")
        );
        let neg = br#"{"grid": [], "count": -3, "master_seed": 9, "output": "x.csv"}"#;
        assert!(
            matches!(parse_campaign(neg), Err(HarnessError::Validation { field, .. }) if field == "count")
        );
    }

    #[test]
    fn mirror_paths() {
        assert_eq!(
            json_mirror_path(Path::new("a/b.csv")),
            PathBuf::from("a/b.json")
        );
        assert_eq!(
            json_mirror_path(Path::new("b.json")),
            PathBuf::from("b.json.mirror.json")
        );
    }
}
