//! Run reports and their CSV schema.
//!
//! A report row is fully numeric/enumerated, so the CSV needs no quoting.
//! Floats are written with 17 significant digits and parse back bit-exact;
//! multi-species runs emit one row per species with the run metadata
//! repeated. Wall-clock duration is intentionally kept out of the CSV so
//! that two runs of the same config produce identical bytes.

use std::time::Duration;

use crate::diagnostics::ErrorNorms;

pub const REPORT_HEADER: &str = "preset,model,d,rho,alpha,beta,a,b,n_cells,scheme,epsilon,cfl,\
t_final,status,blowup_t,steps,species,l1,l2,linf,front_x,front_speed";

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RunStatus {
    Ok,
    BlowUp { t: f64 },
}

impl RunStatus {
    pub fn is_ok(&self) -> bool {
        matches!(self, RunStatus::Ok)
    }

    pub fn label(&self) -> &'static str {
        match self {
            RunStatus::Ok => "ok",
            RunStatus::BlowUp { .. } => "blowup",
        }
    }

    pub fn blowup_time(&self) -> Option<f64> {
        match self {
            RunStatus::Ok => None,
            RunStatus::BlowUp { t } => Some(*t),
        }
    }
}

/// Per-species observables. Norms are absent (never zero-filled) when the
/// run blew up before the final time.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct SpeciesRecord {
    pub norms: Option<ErrorNorms>,
    pub front_x: Option<f64>,
    pub front_speed: Option<f64>,
}

/// Everything a run reports, minus wall-clock time.
#[derive(Debug, Clone, PartialEq)]
pub struct RunRecord {
    pub preset: Option<String>,
    pub model_kind: String,
    pub d: f64,
    pub rho: f64,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub a: f64,
    pub b: f64,
    pub n_cells: usize,
    pub scheme: String,
    pub epsilon: f64,
    pub cfl: f64,
    pub t_final: f64,
    pub status: RunStatus,
    pub steps: u64,
    pub species: Vec<SpeciesRecord>,
}

/// A record plus the wall-clock time of the run.
#[derive(Debug, Clone)]
pub struct RunReport {
    pub record: RunRecord,
    pub duration: Duration,
}

/// 17-significant-digit scientific notation; round-trips f64 exactly.
pub fn fmt_full(x: f64) -> String {
    format!("{x:.16e}")
}

/// 6-significant-digit scientific notation for presentation tables.
pub fn fmt_table(x: f64) -> String {
    format!("{x:.5e}")
}

fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_full).unwrap_or_default()
}

/// Report CSV: header plus one row per species, LF line endings.
pub fn emit_csv(record: &RunRecord) -> String {
    let mut out = String::new();
    out.push_str(REPORT_HEADER);
    out.push('\n');
    for (s, sp) in record.species.iter().enumerate() {
        let fields = [
            record.preset.clone().unwrap_or_default(),
            record.model_kind.clone(),
            fmt_full(record.d),
            fmt_full(record.rho),
            fmt_opt(record.alpha),
            fmt_opt(record.beta),
            fmt_full(record.a),
            fmt_full(record.b),
            record.n_cells.to_string(),
            record.scheme.clone(),
            fmt_full(record.epsilon),
            fmt_full(record.cfl),
            fmt_full(record.t_final),
            record.status.label().to_string(),
            fmt_opt(record.status.blowup_time()),
            record.steps.to_string(),
            s.to_string(),
            fmt_opt(sp.norms.map(|n| n.l1)),
            fmt_opt(sp.norms.map(|n| n.l2)),
            fmt_opt(sp.norms.map(|n| n.linf)),
            fmt_opt(sp.front_x),
            fmt_opt(sp.front_speed),
        ];
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

/// Parse a report CSV produced by [`emit_csv`].
pub fn parse_csv(text: &str) -> Result<RunRecord, String> {
    let mut lines = text.lines();
    let header = lines.next().ok_or("empty report")?;
    if header != REPORT_HEADER {
        return Err(format!("unexpected header: {header}"));
    }

    fn opt_f64(field: &str) -> Result<Option<f64>, String> {
        if field.is_empty() {
            Ok(None)
        } else {
            field
                .parse::<f64>()
                .map(Some)
                .map_err(|e| format!("bad float `{field}`: {e}"))
        }
    }
    fn req_f64(field: &str) -> Result<f64, String> {
        opt_f64(field)?.ok_or_else(|| "missing required float".to_string())
    }

    let mut record: Option<RunRecord> = None;
    for line in lines {
        if line.is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split(',').collect();
        if f.len() != 22 {
            return Err(format!("expected 22 fields, got {}", f.len()));
        }
        let status = match f[13] {
            "ok" => RunStatus::Ok,
            "blowup" => RunStatus::BlowUp {
                t: req_f64(f[14])?,
            },
            other => return Err(format!("unknown status `{other}`")),
        };
        let norms = match (opt_f64(f[17])?, opt_f64(f[18])?, opt_f64(f[19])?) {
            (Some(l1), Some(l2), Some(linf)) => Some(ErrorNorms { l1, l2, linf }),
            (None, None, None) => None,
            _ => return Err("partial norm triple".to_string()),
        };
        let species = SpeciesRecord {
            norms,
            front_x: opt_f64(f[20])?,
            front_speed: opt_f64(f[21])?,
        };
        match &mut record {
            None => {
                record = Some(RunRecord {
                    preset: (!f[0].is_empty()).then(|| f[0].to_string()),
                    model_kind: f[1].to_string(),
                    d: req_f64(f[2])?,
                    rho: req_f64(f[3])?,
                    alpha: opt_f64(f[4])?,
                    beta: opt_f64(f[5])?,
                    a: req_f64(f[6])?,
                    b: req_f64(f[7])?,
                    n_cells: f[8].parse().map_err(|e| format!("n_cells: {e}"))?,
                    scheme: f[9].to_string(),
                    epsilon: req_f64(f[10])?,
                    cfl: req_f64(f[11])?,
                    t_final: req_f64(f[12])?,
                    status,
                    steps: f[15].parse().map_err(|e| format!("steps: {e}"))?,
                    species: vec![species],
                });
            }
            Some(rec) => rec.species.push(species),
        }
    }
    record.ok_or_else(|| "report has no rows".to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample_record() -> RunRecord {
        RunRecord {
            preset: Some("fisher-table1".into()),
            model_kind: "fisher".into(),
            d: 1.0,
            rho: 1e4,
            alpha: None,
            beta: None,
            a: -1.0,
            b: 5.0,
            n_cells: 1200,
            scheme: "cweno".into(),
            epsilon: 1e-40,
            cfl: 0.4,
            t_final: 0.02,
            status: RunStatus::Ok,
            steps: 2000,
            species: vec![SpeciesRecord {
                norms: Some(ErrorNorms {
                    l1: 1.072318e-4,
                    l2: 7.512542e-4,
                    linf: 7.795743e-3,
                }),
                front_x: Some(4.06070462),
                front_speed: Some(204.05),
            }],
        }
    }

    #[test]
    fn csv_round_trips() {
        let record = sample_record();
        let csv = emit_csv(&record);
        assert_eq!(parse_csv(&csv).unwrap(), record);
    }

    #[test]
    fn blowup_reports_omit_norms() {
        let mut record = sample_record();
        record.status = RunStatus::BlowUp { t: 0.00248 };
        record.species[0].norms = None;
        record.species[0].front_speed = None;
        let csv = emit_csv(&record);
        assert_eq!(parse_csv(&csv).unwrap(), record);
        let row = csv.lines().nth(1).unwrap();
        assert!(row.contains("blowup"));
    }

    #[test]
    fn two_species_emit_two_rows() {
        let mut record = sample_record();
        record.model_kind = "lotka-volterra".into();
        record.species.push(SpeciesRecord::default());
        let csv = emit_csv(&record);
        assert_eq!(csv.lines().count(), 3);
        assert_eq!(parse_csv(&csv).unwrap(), record);
    }

    #[test]
    fn emission_is_deterministic() {
        let record = sample_record();
        assert_eq!(emit_csv(&record), emit_csv(&record));
    }

    #[test]
    fn full_format_round_trips_awkward_floats() {
        for &x in &[0.02, 1.0 / 3.0, 1.853247e-6, -7.2e-18, 1e10, 0.1 + 0.2] {
            let parsed: f64 = fmt_full(x).parse().unwrap();
            assert_eq!(parsed.to_bits(), x.to_bits(), "{x}");
        }
    }
}
