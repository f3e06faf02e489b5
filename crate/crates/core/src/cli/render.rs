//! JSON, CSV and text renderings. JSON documents share the top-level keys
//! `tool_version`, `scheme`, `orderings` and `reports`; floats carry 12
//! significant digits and exact rationals are `"p/q"` strings.

use std::fmt::Write as _;

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde_json::{json, Map, Value};

use super::{Failure, Format};
use crate::scheme::Scheme;
use crate::spectra::{eigensystem, krein_parameters, krein_residual, p_polynomial_orderings, q_polynomial_orderings};
use crate::spectra::{PStructure, QStructure};
use crate::terwilliger::{decompose, BasePoints, Decomposition, TModuleSummary, TerwilligerConfig};
use crate::theorems::{Analysis, CheckReport, Verdict};
use crate::tolerance::Tolerances;

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// `x` rounded to 12 significant digits (`-0` folded to `0`).
fn sig12(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    json!(if rounded == 0.0 { 0.0 } else { rounded })
}

fn floats(v: &[f64]) -> Value {
    Value::Array(v.iter().map(|&x| sig12(x)).collect())
}

fn matrix(m: &DMatrix<f64>) -> Value {
    Value::Array((0..m.nrows()).map(|r| Value::Array((0..m.ncols()).map(|c| sig12(m[(r, c)])).collect())).collect())
}

fn scheme_json(s: &Scheme) -> Value {
    json!({ "label": s.label(), "n": s.n(), "classes": s.classes(), "valencies": s.valencies() })
}

fn p_json(p: &PStructure) -> Value {
    json!({ "kind": "P", "ordering": p.ordering, "valencies": p.valencies, "a": p.a, "b": p.b, "c": p.c })
}

fn q_json(q: &QStructure) -> Value {
    json!({
        "kind": "Q",
        "ordering": q.ordering,
        "multiplicities": q.multiplicities,
        "dual_a": floats(&q.dual_a),
        "dual_b": floats(&q.dual_b),
        "dual_c": floats(&q.dual_c),
    })
}

fn document(scheme: Value, orderings: Vec<Value>, reports: &[CheckReport], extra: Vec<(&str, Value)>) -> Result<String, Failure> {
    let mut top = Map::new();
    top.insert("tool_version".into(), json!(TOOL_VERSION));
    top.insert("scheme".into(), scheme);
    top.insert("orderings".into(), Value::Array(orderings));
    top.insert("reports".into(), serde_json::to_value(reports).expect("reports serialize"));
    for (key, value) in extra {
        top.insert(key.into(), value);
    }
    let mut text = serde_json::to_string_pretty(&Value::Object(top)).expect("json serializes");
    text.push('\n');
    Ok(text)
}

fn csv_table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, Failure> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    let wrap = |e: csv::Error| Failure::Usage(format!("csv output: {e}"));
    writer.write_record(header).map_err(wrap)?;
    for row in rows {
        writer.write_record(&row).map_err(wrap)?;
    }
    let bytes = writer.into_inner().map_err(|e| Failure::Usage(format!("csv output: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn joined<T: ToString>(v: &[T]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn text_matrix(out: &mut String, m: &DMatrix<f64>) {
    for r in 0..m.nrows() {
        let row: Vec<String> = (0..m.ncols())
            .map(|c| {
                let v = m[(r, c)];
                format!("{:>12.6}", if v.abs() < 5e-7 { 0.0 } else { v })
            })
            .collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
}

pub(super) fn info(s: &Scheme, format: Format) -> Result<String, Failure> {
    let size = s.classes() + 1;
    let ps = p_polynomial_orderings(s);
    match format {
        Format::Json => {
            let numbers: Vec<Vec<Vec<u64>>> =
                (0..size).map(|k| (0..size).map(|i| (0..size).map(|j| s.p(i, j, k)).collect()).collect()).collect();
            document(scheme_json(s), ps.iter().map(p_json).collect(), &[], vec![("intersection_numbers", json!(numbers))])
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for k in 0..size {
                for i in 0..size {
                    for j in 0..size {
                        rows.push(vec![k.to_string(), i.to_string(), j.to_string(), s.p(i, j, k).to_string()]);
                    }
                }
            }
            csv_table(&["k", "i", "j", "p"], rows)
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "scheme     {}", s.label());
            let _ = writeln!(out, "vertices   {}", s.n());
            let _ = writeln!(out, "classes    {}", s.classes());
            let _ = writeln!(out, "valencies  {}", joined(s.valencies()));
            for p in &ps {
                let _ = writeln!(out, "P-polynomial ordering {:?}: b = {:?}, c = {:?}", p.ordering, p.b, p.c);
            }
            if ps.is_empty() {
                let _ = writeln!(out, "not P-polynomial");
            }
            for k in 0..size {
                let _ = writeln!(out, "p^{k}_ij:");
                for i in 0..size {
                    let row: Vec<String> = (0..size).map(|j| format!("{:>5}", s.p(i, j, k))).collect();
                    let _ = writeln!(out, "  {}", row.join(""));
                }
            }
            Ok(out)
        }
    }
}

pub(super) fn spectra(s: &Scheme, tol: &Tolerances, format: Format) -> Result<String, Failure> {
    let lib = |e: crate::spectra::SpectraError| Failure::Lib(e.into());
    let eigen = eigensystem(s, tol).map_err(lib)?;
    let krein = krein_parameters(&eigen, tol).map_err(lib)?;
    let qs = q_polynomial_orderings(&eigen, tol).map_err(lib)?;
    let ps = p_polynomial_orderings(s);
    let size = eigen.classes() + 1;
    let (products, sum) = eigen.idempotent_residuals();
    match format {
        Format::Json => {
            let tensor: Vec<Vec<Vec<Value>>> = (0..size)
                .map(|k| (0..size).map(|i| (0..size).map(|j| sig12(krein.get(i, j, k))).collect()).collect())
                .collect();
            let spectra = json!({
                "P": matrix(&eigen.p),
                "Q": matrix(&eigen.q),
                "multiplicities": eigen.multiplicities,
                "valencies": eigen.valencies,
                "krein": tensor,
                "certificates": {
                    "idempotent_products": sig12(products),
                    "idempotent_sum": sig12(sum),
                    "pq_minus_nI": sig12(eigen.pq_residual()),
                    "krein_expansion": sig12(krein_residual(&eigen, &krein)),
                    "min_krein": sig12(krein.min()),
                },
            });
            let orderings = ps.iter().map(p_json).chain(qs.iter().map(q_json)).collect();
            document(scheme_json(s), orderings, &[], vec![("spectra", spectra)])
        }
        Format::Csv => {
            let mut rows = Vec::new();
            for (name, m) in [("P", &eigen.p), ("Q", &eigen.q)] {
                for r in 0..size {
                    for c in 0..size {
                        rows.push(vec![name.into(), r.to_string(), c.to_string(), String::new(), sig12(m[(r, c)]).to_string()]);
                    }
                }
            }
            for k in 0..size {
                for i in 0..size {
                    for j in 0..size {
                        let v = sig12(krein.get(i, j, k)).to_string();
                        rows.push(vec!["krein".into(), i.to_string(), j.to_string(), k.to_string(), v]);
                    }
                }
            }
            csv_table(&["table", "i", "j", "k", "value"], rows)
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "scheme          {}", s.label());
            let _ = writeln!(out, "multiplicities  {}", joined(&eigen.multiplicities));
            let _ = writeln!(out, "P (rows: idempotents, columns: relations):");
            text_matrix(&mut out, &eigen.p);
            let _ = writeln!(out, "Q (rows: relations, columns: idempotents):");
            text_matrix(&mut out, &eigen.q);
            let _ = writeln!(out, "min Krein parameter  {:.3e}", krein.min());
            let _ = writeln!(out, "certificates  |E_iE_j - d_ij E_i| = {products:.3e}  |sum E_i - I| = {sum:.3e}  |PQ - nI| = {:.3e}", eigen.pq_residual());
            for q in &qs {
                let _ = writeln!(out, "Q-polynomial ordering {:?}: m = {:?}", q.ordering, q.multiplicities);
            }
            if qs.is_empty() {
                let _ = writeln!(out, "not Q-polynomial");
            }
            for p in &ps {
                let _ = writeln!(out, "P-polynomial ordering {:?}", p.ordering);
            }
            Ok(out)
        }
    }
}

fn profile_json(w: &TModuleSummary, qs: &[QStructure]) -> Value {
    let by_ordering: Vec<usize> = qs.iter().map(|q| w.reindexed(&q.ordering).dual_endpoint).collect();
    json!({
        "dim": w.dim,
        "endpoint": w.endpoint,
        "diameter": w.diameter,
        "dual_endpoint": w.dual_endpoint,
        "dual_diameter": w.dual_diameter,
        "thin": w.thin,
        "dual_thin": w.dual_thin,
        "e_ranks": w.e_ranks,
        "e_star_ranks": w.e_star_ranks,
        "dual_endpoint_by_q_ordering": by_ordering,
    })
}

pub(super) fn modules(s: &Scheme, config: &TerwilligerConfig, base_point: Option<usize>, format: Format) -> Result<String, Failure> {
    let lib = |e: crate::spectra::SpectraError| Failure::Lib(e.into());
    let eigen = eigensystem(s, &config.tol).map_err(lib)?;
    let qs = q_polynomial_orderings(&eigen, &config.tol).map_err(lib)?;
    let points: Vec<usize> = match (base_point, config.base_points) {
        (Some(x), _) => vec![x],
        (None, BasePoints::All) => (0..s.n()).collect(),
        (None, BasePoints::AssumeTransitive) => vec![0],
    };
    let decs: Vec<Decomposition> = points
        .into_par_iter()
        .map(|x| decompose(s, &eigen, x, config))
        .collect::<Result<_, _>>()
        .map_err(|e| Failure::Lib(e.into()))?;
    match format {
        Format::Json => {
            let per_point: Vec<Value> = decs
                .iter()
                .map(|d| {
                    json!({
                        "base_point": d.base_point,
                        "algebra_dim": d.algebra_dim,
                        "center_dim": d.center_dim,
                        "residual": sig12(d.residual),
                        "isotypic": d.isotypic.iter().map(|t| json!({ "module_dim": t.module_dim, "multiplicity": t.multiplicity })).collect::<Vec<_>>(),
                        "modules": d.modules.iter().map(|w| profile_json(w, &qs)).collect::<Vec<_>>(),
                    })
                })
                .collect();
            document(scheme_json(s), qs.iter().map(q_json).collect(), &[], vec![("decompositions", Value::Array(per_point))])
        }
        Format::Csv => {
            let rows = decs.iter().flat_map(|d| {
                d.modules.iter().enumerate().map(move |(idx, w)| {
                    vec![
                        d.base_point.to_string(),
                        idx.to_string(),
                        w.dim.to_string(),
                        w.endpoint.to_string(),
                        w.diameter.to_string(),
                        w.dual_endpoint.to_string(),
                        w.dual_diameter.to_string(),
                        w.thin.to_string(),
                        w.dual_thin.to_string(),
                        joined(&w.e_ranks),
                        joined(&w.e_star_ranks),
                    ]
                })
            });
            csv_table(
                &["base_point", "module", "dim", "endpoint", "diameter", "dual_endpoint", "dual_diameter", "thin", "dual_thin", "e_ranks", "e_star_ranks"],
                rows,
            )
        }
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "scheme {} (idempotents in eigen labels)", s.label());
            for d in &decs {
                let _ = writeln!(
                    out,
                    "x = {}: dim T = {}, {} modules, residual {:.2e}",
                    d.base_point,
                    d.algebra_dim,
                    d.modules.len(),
                    d.residual
                );
                for (idx, w) in d.modules.iter().enumerate() {
                    let _ = writeln!(
                        out,
                        "  W{idx:<3} dim {:<3} r {} d {} t {} d* {}  thin {:<5} dual thin {:<5} dim E_iW [{}]",
                        w.dim,
                        w.endpoint,
                        w.diameter,
                        w.dual_endpoint,
                        w.dual_diameter,
                        w.thin,
                        w.dual_thin,
                        joined(&w.e_ranks)
                    );
                }
            }
            Ok(out)
        }
    }
}

fn report_rows(reports: &[CheckReport]) -> impl Iterator<Item = Vec<String>> + '_ {
    reports.iter().map(|r| {
        vec![
            r.scheme_label.clone(),
            r.check_id.to_string(),
            joined(&r.ordering),
            r.verdict.to_string(),
            r.critical.to_string(),
            r.notes.clone(),
            r.witness.to_string(),
        ]
    })
}

const REPORT_HEADER: [&str; 7] = ["scheme", "check_id", "ordering", "verdict", "critical", "notes", "witness"];

fn report_lines(out: &mut String, reports: &[CheckReport]) {
    for r in reports {
        let flag = if r.critical { "  CRITICAL" } else { "" };
        let notes = if r.notes.is_empty() { String::new() } else { format!("  ({})", r.notes) };
        let _ = writeln!(out, "{:<13} {:<15} ordering {:?}{notes}{flag}", r.check_id.as_str(), r.verdict.to_string(), r.ordering);
        if r.verdict == Verdict::Fails {
            let _ = writeln!(out, "    witness {}", r.witness);
        }
    }
}

pub(super) fn check(s: &Scheme, analysis: &Analysis, reports: &[CheckReport], format: Format) -> Result<String, Failure> {
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let summary = json!({
        "holds": count(Verdict::Holds),
        "fails": count(Verdict::Fails),
        "not_applicable": count(Verdict::NotApplicable),
        "critical": reports.iter().filter(|r| r.critical).count(),
        "dual_thin": analysis.dual_thin.as_ref().map(|d| d.dual_thin),
    });
    match format {
        Format::Json => {
            let orderings = analysis.p_structures.iter().map(p_json).chain(analysis.q_structures.iter().map(q_json)).collect();
            document(scheme_json(s), orderings, reports, vec![("summary", summary)])
        }
        Format::Csv => csv_table(&REPORT_HEADER, report_rows(reports)),
        Format::Text => {
            let mut out = String::new();
            let _ = writeln!(out, "scheme {} ({} vertices, {} classes)", s.label(), s.n(), s.classes());
            report_lines(&mut out, reports);
            let _ = writeln!(
                out,
                "{} holds, {} fails, {} not applicable",
                summary["holds"], summary["fails"], summary["not_applicable"]
            );
            Ok(out)
        }
    }
}

pub(super) fn johnson(report: &CheckReport, format: Format) -> Result<String, Failure> {
    let k = report.ordering.len() - 1;
    let values = if report.verdict == Verdict::NotApplicable { &report.witness["recorded"] } else { &report.witness };
    match format {
        Format::Json => {
            let n = crate::scheme::binomial(k * k, k).map(|n| n.to_string());
            let scheme = json!({ "label": report.scheme_label, "n": n, "classes": k });
            let orderings = vec![json!({ "kind": "Q", "ordering": report.ordering })];
            document(scheme, orderings, std::slice::from_ref(report), Vec::new())
        }
        Format::Csv => csv_table(&REPORT_HEADER, report_rows(std::slice::from_ref(report))),
        Format::Text => {
            let text = |key: &str| values[key].as_str().unwrap_or("?").to_string();
            let mut out = String::new();
            let _ = writeln!(out, "{}", report.scheme_label);
            let _ = writeln!(out, "c*_{} = {}", k - 1, text("c_star_k_minus_1"));
            let _ = writeln!(out, "c*_{k} = {}", text("c_star_k"));
            let _ = writeln!(out, "c*_{} is {} than c*_{k}", k - 1, match values["comparison"].as_str() {
                Some("greater") => "greater",
                Some("less") => "less",
                _ => "not different",
            });
            let _ = writeln!(out, "verdict {}{}", report.verdict, if report.notes.is_empty() { String::new() } else { format!(" ({})", report.notes) });
            Ok(out)
        }
    }
}
