//! JSON and plain-text rendering. Numbers are printed exactly: rationals as
//! `num/den`, integers in decimal.

use std::collections::BTreeSet;

use catalog::{KacTable, Sector};
use characters::CharKind;
use fusion::FusionResult;
use series_core::{fmt_rat, Rational, Series2};

use crate::suites::SuiteOutcome;
use crate::Format;

fn json(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

/// Left-aligned grid with a header row.
fn grid(rows: &[Vec<String>]) -> String {
    let cols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> =
        (0..cols).map(|c| rows.iter().filter_map(|r| r.get(c)).map(|x| x.chars().count()).max().unwrap_or(0)).collect();
    let mut out = String::new();
    for row in rows {
        let cells: Vec<String> =
            row.iter().enumerate().map(|(c, x)| format!("{x:<w$}", w = width[c])).collect();
        out.push_str(cells.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// Rows r, columns p. Full cells read `±;j;Δ` with Ramond cells starred;
/// reduced cells read `j;Δ`.
pub fn kac(table: &KacTable, reduced: bool, format: Format) -> String {
    if format == Format::Json {
        let mut v = table.to_json_value();
        let drop = if reduced { "full" } else { "reduced" };
        v.as_object_mut().expect("table is an object").remove(drop);
        return json(&v);
    }
    let u = table.u;
    let top = if reduced { u - 2 } else { 2 * u - 2 };
    let ps: Vec<i64> = (-(u - 1)..=top).collect();
    let mut rows = vec![std::iter::once("r\\p".to_string()).chain(ps.iter().map(i64::to_string)).collect::<Vec<_>>()];
    for r in 1..u {
        let mut row = vec![r.to_string()];
        for &p in &ps {
            let cell = if reduced { table.reduced_cell(r, p) } else { table.cell(r, p) };
            row.push(match cell {
                None => String::new(),
                Some(c) if reduced => {
                    let full = c.data.cell();
                    full.split_once(';').map(|(_, rest)| rest.to_string()).unwrap_or(full)
                }
                Some(c) if c.data.sector == Sector::R => format!("{}*", c.data.cell()),
                Some(c) => c.data.cell(),
            });
        }
        rows.push(row);
    }
    let mut out = grid(&rows);
    if !reduced {
        out.push_str("* Ramond sector\n");
    }
    out
}

/// q-levels down, z-exponents across.
fn series_grid(s: &Series2) -> String {
    let zs: BTreeSet<Rational> = s.terms().map(|(_, z, _)| z).collect();
    let zs: Vec<Rational> = zs.into_iter().collect();
    let mut rows = vec![std::iter::once("q\\z".to_string()).chain(zs.iter().map(fmt_rat)).collect::<Vec<_>>()];
    for q in s.q_levels() {
        let mut row = vec![fmt_rat(&q)];
        for z in &zs {
            let c = s.coeff(z, &q);
            row.push(if c == 0.into() { String::new() } else { c.to_string() });
        }
        rows.push(row);
    }
    let mut out = format!("q_order {}\n", fmt_rat(s.q_order()));
    out.push_str(&grid(&rows));
    out
}

pub fn character(ch: &CharKind, format: Format) -> String {
    match (ch, format) {
        (CharKind::OrdinarySeries(s), Format::Json) => json(&serde_json::to_value(s.to_json_value()).expect("series")),
        (CharKind::OrdinarySeries(s), Format::Table) => series_grid(s),
        (CharKind::DeltaDistribution(d), Format::Json) => json(&serde_json::json!({
            "kind": "delta",
            "z_prefactor_exp": fmt_rat(&d.z_prefactor_exp),
            "z_coset_base": fmt_rat(&d.z_coset_base),
            "z_coset_step": fmt_rat(&d.z_coset_step),
            "qseries": serde_json::to_value(d.qseries.to_json_value()).expect("series"),
        })),
        (CharKind::DeltaDistribution(d), Format::Table) => {
            let mut out = format!(
                "comb z^({} + {} + {}n), each tooth carrying\n",
                fmt_rat(&d.z_prefactor_exp),
                fmt_rat(&d.z_coset_base),
                fmt_rat(&d.z_coset_step)
            );
            out.push_str(&series_grid(&d.qseries));
            out
        }
    }
}

pub fn fusion(res: &FusionResult, format: Format) -> String {
    if format == Format::Json {
        return json(&res.to_json_value());
    }
    let mut out = String::new();
    match &res.exact {
        Some(e) => out.push_str(&format!("exact:        {e}\n")),
        None => out.push_str("exact:        (none)\n"),
    }
    out.push_str(&format!("grothendieck: {}\n", res.grothendieck));
    if res.conjectural {
        out.push_str("conjectural\n");
    }
    out
}

pub fn suite(s: &SuiteOutcome, format: Format) -> String {
    if format == Format::Json {
        return json(&s.to_json_value());
    }
    let mut rows = vec![vec!["status".to_string(), "check".into(), "q_order".into(), "labels".into()]];
    for r in &s.reports {
        rows.push(vec![r.status.clone(), r.check.clone(), r.q_order.clone(), r.labels.join(" ")]);
    }
    let mut out = grid(&rows);
    for r in s.reports.iter().filter(|r| !r.passed()) {
        if let Some(d) = &r.first_discrepancy {
            out.push_str(&format!("{} {}: {d}\n", r.check, r.labels.join(" ")));
        }
    }
    let pass = s.reports.iter().filter(|r| r.passed()).count();
    out.push_str(&format!(
        "suite {} on M({},{}): {}/{} passed, {}\n",
        s.suite.name(),
        s.model.0,
        s.model.1,
        pass,
        s.reports.len(),
        if s.passed() { "pass" } else { "fail" }
    ));
    out
}
