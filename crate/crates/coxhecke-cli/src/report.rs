use coxhecke::coxgroup::{CoxeterGroup, ElementTable};
use coxhecke::leading::{
    check_cell_orthogonality, check_conj42, check_cspec, check_distinguished, check_orthogonality, check_regular, ClassInfo,
    CheckReport, HeckeTable, LeadingAnalysis,
};
use coxhecke::leading::ordinary_table;
use coxhecke::relcells::pstar_from_identity;
use coxhecke::ring::{Cyc, WeightFunction};
use serde_json::{json, Value};

use crate::codec::{cyc_to_json, laurent_from_json, laurent_to_json, word_from_json, word_to_json};
use crate::error::CliError;

pub fn word_text(word: &[usize]) -> String {
    let letters: Vec<String> = word.iter().map(|s| s.to_string()).collect();
    format!("[{}]", letters.join(","))
}

pub fn hecke_to_json(group: &CoxeterGroup, h: &HeckeTable) -> Value {
    let classes: Vec<Value> =
        h.class_words.iter().zip(&h.class_sizes).map(|(w, n)| json!({"rep": word_to_json(w), "size": n})).collect();
    let irreducibles: Vec<Value> = (0..h.labels.len())
        .map(|e| {
            json!({
                "label": h.labels[e],
                "dim": h.dims[e],
                "values": h.values[e].iter().map(laurent_to_json).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({
        "group": group.cartanname(),
        "weights": h.weights.as_slice(),
        "classes": classes,
        "irreducibles": irreducibles,
    })
}

/// Reorders a table file into the group's class and character order.
pub fn hecke_from_json(group: &CoxeterGroup, weights: &WeightFunction, v: &Value) -> Result<HeckeTable, CliError> {
    let input = |m: &str| CliError::Input(format!("Hecke table: {m}"));
    if v.get("group").and_then(Value::as_str) != Some(group.cartanname()) {
        return Err(input("group does not match"));
    }
    if v.get("weights") != Some(&json!(weights.as_slice())) {
        return Err(input("weights do not match"));
    }
    let table = group.elements()?;
    let info = ClassInfo::new(group)?;
    let ordinary = ordinary_table(group, &info)?;
    let classes = v.get("classes").and_then(Value::as_array).ok_or_else(|| input("missing classes"))?;
    if classes.len() != info.len() {
        return Err(input("wrong number of classes"));
    }
    // column j of the file is class column_of[j] of the group
    let mut column_of = Vec::with_capacity(classes.len());
    for c in classes {
        let rep = word_from_json(c.get("rep").ok_or_else(|| input("class without rep"))?)?;
        if rep.iter().any(|&s| s >= group.rank()) {
            return Err(input("class representative uses an unknown generator"));
        }
        column_of.push(info.class_of(table.from_word(&rep)));
    }
    let mut seen = column_of.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != info.len() {
        return Err(input("two representatives lie in the same class"));
    }
    let irr = v.get("irreducibles").and_then(Value::as_array).ok_or_else(|| input("missing irreducibles"))?;
    let mut values = vec![Vec::new(); ordinary.len()];
    for row in irr {
        let label = row.get("label").and_then(Value::as_str).ok_or_else(|| input("irreducible without label"))?;
        let e = ordinary.index_of(label).ok_or_else(|| input(&format!("unknown label {label:?}")))?;
        let cells = row.get("values").and_then(Value::as_array).ok_or_else(|| input("irreducible without values"))?;
        if cells.len() != info.len() || !values[e].is_empty() {
            return Err(input(&format!("bad row for {label}")));
        }
        let mut ordered = vec![coxhecke::ring::Laurent::zero(); info.len()];
        for (j, x) in cells.iter().enumerate() {
            ordered[column_of[j]] = laurent_from_json(x)?;
        }
        values[e] = ordered;
    }
    if values.iter().any(Vec::is_empty) {
        return Err(input("some irreducible characters are missing"));
    }
    let at_one: Vec<Vec<_>> = values.iter().map(|r| r.iter().map(|v| v.at_one()).collect()).collect();
    if at_one != ordinary.values {
        return Err(input("values at ε = 1 are not the group's character table"));
    }
    Ok(HeckeTable {
        weights: weights.clone(),
        class_words: (0..info.len()).map(|c| table.word(info.rep(c))).collect(),
        class_sizes: info.sizes(),
        labels: ordinary.labels.clone(),
        dims: (0..ordinary.len()).map(|e| ordinary.dim(e) as usize).collect(),
        values,
    })
}

pub fn leading_to_json(group: &CoxeterGroup, weights: &WeightFunction, an: &LeadingAnalysis) -> Result<Value, CliError> {
    let table = group.elements()?;
    let d = &an.data;
    let irreducibles: Vec<Value> = (0..d.labels.len())
        .map(|e| json!({"label": d.labels[e], "dim": d.dims[e], "a": d.a[e], "f": cyc_to_json(&d.f[e])}))
        .collect();
    let dtilde: Vec<Value> =
        d.d_tilde.iter().map(|&w| json!({"word": word_to_json(&table.word(w)), "n": cyc_to_json(&d.n[w as usize])})).collect();
    let cells: Vec<Value> = an
        .tables
        .iter()
        .enumerate()
        .map(|(i, t)| {
            let size = an.cells[i].len();
            match t {
                Ok(t) => json!({
                    "cell": i,
                    "size": size,
                    "distinguished": word_to_json(&table.word(t.distinguished)),
                    "n": cyc_to_json(&t.n_d),
                    "rows": t.rows.iter().map(|&e| d.labels[e].as_str()).collect::<Vec<_>>(),
                    "columns": t.columns.iter().map(|&w| word_to_json(&table.word(w))).collect::<Vec<_>>(),
                    "entries": t.entries.iter().map(|r| r.iter().map(cyc_to_json).collect::<Vec<_>>()).collect::<Vec<_>>(),
                }),
                Err(msg) => json!({"cell": i, "size": size, "error": msg}),
            }
        })
        .collect();
    Ok(json!({
        "group": group.cartanname(),
        "weights": weights.as_slice(),
        "irreducibles": irreducibles,
        "dtilde": dtilde,
        "tables": cells,
    }))
}

/// First column left-aligned, the others right-aligned.
pub fn aligned(rows: &[Vec<String>]) -> String {
    let width = rows.iter().map(Vec::len).max().unwrap_or(0);
    let widths: Vec<usize> =
        (0..width).map(|j| rows.iter().filter_map(|r| r.get(j)).map(|s| s.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> =
            r.iter().zip(&widths).enumerate().map(|(j, (s, &w))| if j == 0 { format!("{s:<w$}") } else { format!("{s:>w$}") }).collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn leading_to_text(group: &CoxeterGroup, weights: &WeightFunction, an: &LeadingAnalysis) -> Result<String, CliError> {
    let table = group.elements()?;
    let d = &an.data;
    let mut out = format!("{} with weights {:?}\n\n", group.cartanname(), weights.as_slice());
    let mut irr = vec![vec![String::from("E"), String::from("dim"), String::from("a"), String::from("f")]];
    for e in 0..d.labels.len() {
        irr.push(vec![d.labels[e].clone(), d.dims[e].to_string(), d.a[e].to_string(), d.f[e].to_string()]);
    }
    out.push_str(&aligned(&irr));
    let dt: Vec<String> =
        d.d_tilde.iter().map(|&w| format!("{}:{}", word_text(&table.word(w)), d.n[w as usize])).collect();
    out.push_str(&format!("\nD̃ ({}): {}\n", dt.len(), dt.join(" ")));
    for (i, t) in an.tables.iter().enumerate() {
        out.push_str(&format!("\ncell {i} ({} elements)", an.cells[i].len()));
        let t = match t {
            Ok(t) => t,
            Err(msg) => {
                out.push_str(&format!(": {msg}\n"));
                continue;
            }
        };
        out.push_str(&format!(", d = {}, ñ_d = {}\n", word_text(&table.word(t.distinguished)), t.n_d));
        let mut rows = vec![std::iter::once(String::new()).chain(t.columns.iter().map(|&w| word_text(&table.word(w)))).collect()];
        for (r, &e) in t.rows.iter().enumerate() {
            rows.push(std::iter::once(d.labels[e].clone()).chain(t.entries[r].iter().map(Cyc::to_string)).collect());
        }
        out.push_str(&aligned(&rows));
    }
    Ok(out)
}

/// All conjecture checks; `gating` is false for reports that are informational only.
pub struct CheckSummary {
    pub reports: Vec<(CheckReport, bool)>,
    pub special: Vec<usize>,
}

impl CheckSummary {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(|(r, gating)| r.passed() || !gating)
    }
}

pub fn run_checks(group: &CoxeterGroup, weights: &WeightFunction, an: &LeadingAnalysis) -> Result<CheckSummary, CliError> {
    let table: &ElementTable = group.elements()?;
    let (cspec, special) = check_cspec(an);
    let mut reports = vec![
        (check_conj42(an, table), true),
        (check_orthogonality(an, table), true),
        (check_cell_orthogonality(an, table), true),
        (check_regular(an), true),
        (cspec, true),
    ];
    // whether the two sets agree is open for unequal parameters, so it is only reported there
    let pstar = pstar_from_identity(group, weights)?;
    reports.push((check_distinguished(an, table, &pstar), weights.is_equal_parameter()));
    Ok(CheckSummary { reports, special })
}

pub fn checks_to_json(group: &CoxeterGroup, weights: &WeightFunction, an: &LeadingAnalysis, s: &CheckSummary) -> Value {
    let checks: Vec<Value> = s
        .reports
        .iter()
        .map(|(r, gating)| json!({"name": r.name, "passed": r.passed(), "gating": gating, "violations": r.violations}))
        .collect();
    let special: Vec<&str> = s.special.iter().map(|&e| an.data.labels[e].as_str()).collect();
    let dim_sum: usize = s.special.iter().map(|&e| an.data.dims[e]).sum();
    json!({
        "group": group.cartanname(),
        "weights": weights.as_slice(),
        "passed": s.passed(),
        "checks": checks,
        "special": special,
        "specialDimSum": dim_sum,
        "cells": an.cells.len(),
    })
}

pub fn checks_to_text(group: &CoxeterGroup, weights: &WeightFunction, an: &LeadingAnalysis, s: &CheckSummary) -> String {
    let mut out = format!("{} with weights {:?}\n", group.cartanname(), weights.as_slice());
    for (r, gating) in &s.reports {
        let status = match (r.passed(), gating) {
            (true, _) => "pass",
            (false, true) => "FAIL",
            (false, false) => "reported",
        };
        out.push_str(&format!("{:<20} {status}\n", r.name));
        for v in &r.violations {
            out.push_str(&format!("    {v}\n"));
        }
    }
    let special: Vec<&str> = s.special.iter().map(|&e| an.data.labels[e].as_str()).collect();
    let dim_sum: usize = s.special.iter().map(|&e| an.data.dims[e]).sum();
    out.push_str(&format!("S_L: {}\n", special.join(" ")));
    out.push_str(&format!("Σ dim over S_L = {dim_sum}, left cells = {}\n", an.cells.len()));
    out
}
