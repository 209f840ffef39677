//! Report rendering: pretty JSON, aligned text columns, or CSV.

use serde::Serialize;
use serde_json::Value;
use sumsets::maxconv::{ContinuousPlReport, PlReport, Star1Report};
use sumsets::verifier::{ProofTrace, ScanSummary, SearchResult};
use sumsets::{PointSet, WeightFn, Witness};

use crate::{CliError, Membership};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Text,
    Csv,
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn csv_err(e: csv::Error) -> CliError {
    CliError::Usage(format!("csv output: {e}"))
}

fn csv_rows<R: AsRef<[String]>>(header: &[&str], rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(csv_err)?;
    for r in rows {
        w.write_record(r.as_ref()).map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

/// Header plus one row, for structs whose fields are all scalars.
pub fn csv_record<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.serialize(value).map_err(csv_err)?;
    let bytes = w.into_inner().map_err(|e| CliError::Usage(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("utf8"))
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Array(a) => Some(format!("[{} items]", a.len())),
        Value::Object(_) => {
            let s = v.to_string();
            (s.len() <= 72).then_some(s)
        }
    }
}

/// Two aligned columns, one line per top-level scalar field.
fn table<T: Serialize>(value: &T) -> String {
    let Value::Object(map) = serde_json::to_value(value).expect("reports serialize") else {
        return json(value);
    };
    let rows: Vec<(String, String)> = map.iter().filter_map(|(k, v)| scalar(v).map(|s| (k.clone(), s))).collect();
    aligned(&rows)
}

fn aligned(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

pub fn record<T: Serialize>(value: &T, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => json(value),
        Format::Text => table(value),
        Format::Csv => csv_record(value)?,
    })
}

pub fn point_set(s: &PointSet, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => json(s),
        Format::Text => s.to_text(),
        Format::Csv => {
            let header: Vec<String> = (0..s.dim()).map(|i| format!("x{i}")).collect();
            let header: Vec<&str> = header.iter().map(String::as_str).collect();
            let rows: Vec<Vec<String>> = s.iter().map(|p| p.coords().iter().map(i64::to_string).collect()).collect();
            csv_rows(&header, &rows)?
        }
    })
}

pub fn weight(w: &WeightFn, format: Format) -> Result<String, CliError> {
    let rows: Vec<Vec<String>> = w.iter().map(|(n, v)| vec![n.to_string(), v.to_string()]).collect();
    Ok(match format {
        Format::Json => json(w),
        Format::Text => aligned(&rows.iter().map(|r| (r[0].clone(), r[1].clone())).collect::<Vec<_>>()),
        Format::Csv => csv_rows(&["n", "value"], &rows)?,
    })
}

#[derive(Serialize)]
struct Continuous<'a> {
    prop21: &'a PlReport,
    star1: &'a Star1Report,
    pl: &'a ContinuousPlReport,
}

pub fn continuous(
    prop21: &PlReport,
    star1: &Star1Report,
    pl: &ContinuousPlReport,
    format: Format,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => json(&Continuous { prop21, star1, pl }),
        Format::Text => format!(
            "[weighted sum]\n{}\n[star-1 bound]\n{}\n[continuous PL]\n{}",
            table(prop21),
            table(star1),
            table(pl)
        ),
        Format::Csv => {
            let rows = [
                ["prop21", ">=", &prop21.lhs.to_string(), &prop21.rhs.to_string(), &prop21.holds.to_string()],
                ["star1", "<=", &star1.integral.to_string(), &star1.bound.to_string(), &star1.holds.to_string()],
                ["pl", ">=", &pl.lhs.to_string(), &pl.rhs.to_string(), &pl.holds.to_string()],
            ]
            .map(|r| r.map(str::to_string));
            csv_rows(&["check", "relation", "lhs", "rhs", "holds"], &rows)?
        }
    })
}

fn trace_rows(t: &ProofTrace, path: &str, rows: &mut Vec<[String; 6]>) {
    for s in &t.steps {
        rows.push([
            path.to_string(),
            s.label.clone(),
            s.lhs.clone(),
            s.relation.to_string(),
            s.rhs.clone(),
            s.holds.to_string(),
        ]);
    }
    for (i, c) in t.children.iter().enumerate() {
        trace_rows(&c.trace, &format!("{path}.{i}"), rows);
    }
}

pub fn trace(t: &ProofTrace, depth: usize, format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => json(t),
        Format::Text => t.render_text(depth),
        Format::Csv => {
            let mut rows = Vec::new();
            trace_rows(t, "0", &mut rows);
            csv_rows(&["node", "step", "lhs", "relation", "rhs", "holds"], &rows)?
        }
    })
}

#[derive(Serialize)]
struct ScanRow {
    dim: usize,
    estimate: u128,
    a_candidates: usize,
    b_candidates: usize,
    u_candidates: usize,
    instances: u64,
    violations: u64,
    equalities: u64,
    min_ratio_sq: Option<String>,
    min_ratio_count: u64,
    clean: bool,
}

pub fn scan(s: &ScanSummary, format: Format) -> Result<String, CliError> {
    let row = ScanRow {
        dim: s.dim,
        estimate: s.estimate,
        a_candidates: s.a_candidates,
        b_candidates: s.b_candidates,
        u_candidates: s.u_candidates,
        instances: s.instances,
        violations: s.violations,
        equalities: s.equalities,
        min_ratio_sq: s.min_ratio_sq.as_ref().map(ToString::to_string),
        min_ratio_count: s.min_ratio_count,
        clean: s.is_clean(),
    };
    Ok(match format {
        Format::Json => json(s),
        Format::Csv => csv_record(&row)?,
        Format::Text => {
            let mut out = table(&row);
            for (title, list) in
                [("violations", &s.violation_instances), ("minimum-ratio instances", &s.min_ratio_instances)]
            {
                if !list.is_empty() {
                    out.push_str(&format!("\n{title} (first {} recorded):\n", list.len().min(10)));
                    for i in list.iter().take(10) {
                        out.push_str(&format!(
                            "  A={} B={} U={} |A+B+U|={} ratio^2={}\n",
                            i.a, i.b, i.u, i.lhs, i.ratio_sq
                        ));
                    }
                }
            }
            out
        }
    })
}

pub fn search(r: &SearchResult, format: Format) -> Result<String, CliError> {
    let rows: Vec<[String; 3]> =
        r.trajectory.iter().map(|t| [t.restart.to_string(), t.step.to_string(), t.ratio_sq.to_string()]).collect();
    Ok(match format {
        Format::Json => json(r),
        Format::Csv => csv_rows(&["restart", "step", "ratio_sq"], &rows)?,
        Format::Text => {
            let b = &r.best;
            let mut out = aligned(&[
                ("seed".into(), r.seed.to_string()),
                ("steps".into(), r.steps.to_string()),
                ("restarts".into(), r.restarts.to_string()),
                ("accepted_moves".into(), r.accepted_moves.to_string()),
                ("best_restart".into(), r.best_restart.to_string()),
                ("best_ratio_sq".into(), b.ratio_sq.to_string()),
                ("below_one".into(), r.below_one.to_string()),
            ]);
            out.push_str(&format!("best: A={} B={} U={} |A+B+U|={}\n\ntrajectory:\n", b.a, b.b, b.u, b.lhs));
            for [restart, step, ratio] in &rows {
                out.push_str(&format!("  {restart:>3} {step:>8}  {ratio}\n"));
            }
            out
        }
    })
}

pub fn membership(m: &Membership, format: Format) -> Result<String, CliError> {
    let witness = m.witness.as_ref().map(|w| serde_json::to_string(w).expect("witness serializes"));
    let perm = m.perm.as_ref().map(|p| format!("{p:?}"));
    Ok(match format {
        Format::Json => json(m),
        Format::Text => {
            let mut out = format!("{}\n", m.result);
            if let Some(p) = &perm {
                out.push_str(&format!("perm     {p}\n"));
            }
            if let Some(w) = &witness {
                out.push_str(&format!("witness  {w}\n"));
            }
            out
        }
        Format::Csv => csv_rows(
            &["query", "result", "perm", "witness"],
            &[[m.query.to_string(), m.result.to_string(), perm.unwrap_or_default(), witness.unwrap_or_default()]],
        )?,
    })
}

#[derive(Serialize)]
struct WitnessList<'a> {
    count: usize,
    witnesses: &'a [Witness],
}

pub fn witnesses(list: &[Witness], format: Format) -> Result<String, CliError> {
    Ok(match format {
        Format::Json => json(&WitnessList { count: list.len(), witnesses: list }),
        Format::Text => list.iter().map(|w| format!("{}\n", w.materialize())).collect(),
        Format::Csv => {
            let rows: Vec<[String; 2]> = list
                .iter()
                .enumerate()
                .map(|(i, w)| [i.to_string(), serde_json::to_string(w).expect("witness serializes")])
                .collect();
            csv_rows(&["index", "witness"], &rows)?
        }
    })
}
