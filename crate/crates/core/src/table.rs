//! The table of certified bounds on `γ_m` of the cross-polytope.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::assign::{best_lower_bound, certify_lower_bound};
use crate::configs::{catalog, derived_catalog, CatalogEntry, Verification};
use crate::error::{Error, Result};
use crate::linalg::zero;
use crate::rational::Rational;
use crate::witness::{Generator, WitnessSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableOptions {
    /// Search nodes per first-level branch of each lower-bound run.
    pub node_budget: u64,
    pub cell_budget: u64,
}

impl Default for TableOptions {
    fn default() -> Self {
        TableOptions {
            node_budget: crate::assign::DEFAULT_NODE_BUDGET,
            cell_budget: crate::cover::DEFAULT_CELL_BUDGET,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerStatus {
    /// The witness set refutes every split at the target ratio.
    Certified,
    /// Target not reached; the min-max value of the witness set is certified instead.
    MinMax,
    /// Taken from a larger `m`, since `γ_m` is non-increasing.
    Propagated,
    /// Nothing certified within budget.
    None,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GammaTableRow {
    pub m: usize,
    pub lower: Rational,
    pub upper: Rational,
    pub tight: bool,
    pub lower_method: String,
    pub lower_status: LowerStatus,
    pub upper_config_id: String,
    /// The upper configuration has fewer than `m` copies.
    pub upper_reused: bool,
    pub lower_ms: f64,
    pub upper_ms: f64,
}

/// Witness generators and target ratio tried first for `m` copies.
pub fn lower_plan(m: usize) -> (Vec<Generator>, Rational) {
    let q = Rational::new;
    match m {
        0..=5 => (vec![Generator::Vertices], q(1, 1)),
        6..=9 => (vec![Generator::Vertices, Generator::FacetCenters], q(2, 3)),
        10..=13 => (vec![Generator::Vertices, Generator::NodePoints(q(3, 5))], q(3, 5)),
        _ => (
            vec![Generator::Vertices, Generator::NodePoints(q(4, 7)), Generator::NodeMidpoints(q(4, 7))],
            q(4, 7),
        ),
    }
}

fn describe(gens: &[Generator]) -> String {
    gens.iter()
        .map(|g| match g {
            Generator::Vertices => "vertices".to_string(),
            Generator::FacetCenters => "centers".to_string(),
            Generator::NodePoints(l) => format!("nodes({l})"),
            Generator::NodeMidpoints(l) => format!("midpoints({l})"),
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Certified coverings available to the table, smallest first.
pub fn upper_configs(cell_budget: u64) -> Result<Vec<CatalogEntry>> {
    let mut entries = vec![CatalogEntry {
        id: "m1-whole".into(),
        m: 1,
        lambda: Rational::one(),
        translations: vec![zero()],
        provenance: "the body itself".into(),
        flags: vec![],
        verified: Verification::Unchecked,
    }];
    entries.extend(catalog().into_iter().chain(derived_catalog()));
    let mut out = Vec::new();
    for mut e in entries {
        e.verify(cell_budget)?;
        if e.is_covered() {
            out.push(e);
        }
    }
    Ok(out)
}

struct Lower {
    value: Rational,
    method: String,
    status: LowerStatus,
}

fn lower_for(m: usize, opts: &TableOptions) -> Result<Lower> {
    let (gens, target) = lower_plan(m);
    let w = WitnessSet::build(&gens)?;
    let name = describe(&gens);
    if certify_lower_bound(m, &target, &w, opts.node_budget)?.is_certified() {
        return Ok(Lower { value: target.clone(), method: format!("{name} at {target}"), status: LowerStatus::Certified });
    }
    Ok(match best_lower_bound(m, &w, opts.node_budget)? {
        Some((value, _)) => Lower { method: format!("min-max of {name}"), value, status: LowerStatus::MinMax },
        None => Lower { value: Rational::zero(), method: "none".into(), status: LowerStatus::None },
    })
}

pub fn gamma_table(m_min: usize, m_max: usize, opts: &TableOptions) -> Result<Vec<GammaTableRow>> {
    if m_min == 0 || m_min > m_max {
        return Err(Error::Precondition(format!("invalid range {m_min}..{m_max}")));
    }
    let t = Instant::now();
    let configs = upper_configs(opts.cell_budget)?;
    let config_ms = t.elapsed().as_secs_f64() * 1e3;
    let mut rows: Vec<GammaTableRow> = (m_min..=m_max)
        .into_par_iter()
        .map(|m| -> Result<GammaTableRow> {
            let t = Instant::now();
            let best = configs
                .iter()
                .filter(|c| c.translations.len() <= m)
                .min_by(|a, b| a.lambda.cmp(&b.lambda))
                .expect("the whole body covers itself");
            let upper_ms = config_ms + t.elapsed().as_secs_f64() * 1e3;
            let t = Instant::now();
            let lower = lower_for(m, opts)?;
            let lower_ms = t.elapsed().as_secs_f64() * 1e3;
            Ok(GammaTableRow {
                m,
                tight: false,
                upper: best.lambda.clone(),
                upper_config_id: best.id.clone(),
                upper_reused: best.translations.len() < m,
                lower: lower.value,
                lower_method: lower.method,
                lower_status: lower.status,
                lower_ms,
                upper_ms,
            })
        })
        .collect::<Result<_>>()?;
    for k in (0..rows.len().saturating_sub(1)).rev() {
        if rows[k + 1].lower > rows[k].lower {
            rows[k].lower = rows[k + 1].lower.clone();
            rows[k].lower_method = format!("from m = {}", rows[k + 1].m);
            rows[k].lower_status = LowerStatus::Propagated;
        }
    }
    for r in &mut rows {
        assert!(r.lower <= r.upper, "lower bound above upper bound at m = {}", r.m);
        r.tight = r.lower == r.upper;
    }
    Ok(rows)
}

pub fn write_csv<W: std::io::Write>(rows: &[GammaTableRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let io = |e: csv::Error| Error::Precondition(format!("csv: {e}"));
    w.write_record([
        "m", "lower", "upper", "tight", "lower_method", "lower_status", "upper_config_id", "upper_reused", "lower_ms", "upper_ms",
    ])
    .map_err(io)?;
    for r in rows {
        let status = serde_json::to_value(r.lower_status).expect("status").as_str().unwrap_or_default().to_string();
        w.write_record([
            r.m.to_string(),
            r.lower.to_string(),
            r.upper.to_string(),
            r.tight.to_string(),
            r.lower_method.clone(),
            status,
            r.upper_config_id.clone(),
            r.upper_reused.to_string(),
            format!("{:.1}", r.lower_ms),
            format!("{:.1}", r.upper_ms),
        ])
        .map_err(io)?;
    }
    w.flush().map_err(|e| Error::Precondition(format!("csv: {e}")))?;
    Ok(())
}
