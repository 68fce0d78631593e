//! Known covering configurations of the cross-polytope and their completion
//! by symmetry.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cover::{verify_covering_with_budget, CoverageStatus, CoveringConfig, DEFAULT_CELL_BUDGET};
use crate::error::{Error, Result};
use crate::linalg::{neg, v3, Vec3};
use crate::polytope::{subgroups, SymmetryOp};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "state")]
pub enum Verification {
    Unchecked,
    Covered,
    NotCovered { witness: Vec<Rational> },
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub id: String,
    pub m: usize,
    pub lambda: Rational,
    pub translations: Vec<Vec3>,
    pub provenance: String,
    #[serde(default)]
    pub flags: Vec<String>,
    pub verified: Verification,
}

impl CatalogEntry {
    pub fn config(&self) -> CoveringConfig {
        CoveringConfig::cross(self.lambda.clone(), &self.translations).expect("catalog entries are well-formed")
    }

    /// Runs the certifier and records its verdict.
    pub fn verify(&mut self, budget: u64) -> Result<CoverageStatus> {
        let r = verify_covering_with_budget(&self.config(), budget)?;
        self.verified = match r.status {
            CoverageStatus::Covered => Verification::Covered,
            CoverageStatus::NotCovered => Verification::NotCovered { witness: r.witness.expect("witness") },
            CoverageStatus::Inconclusive => Verification::Inconclusive,
        };
        Ok(r.status)
    }

    pub fn is_covered(&self) -> bool {
        self.verified == Verification::Covered
    }
}

fn pm(v: Vec3) -> [Vec3; 2] {
    let n = neg(&v);
    [v, n]
}

fn axes(n: i64, d: i64) -> Vec<Vec3> {
    [v3((n, d), (0, 1), (0, 1)), v3((0, 1), (n, d), (0, 1)), v3((0, 1), (0, 1), (n, d))]
        .into_iter()
        .flat_map(pm)
        .collect()
}

fn entry(id: &str, lambda: Rational, translations: Vec<Vec3>, provenance: &str, flags: &[&str]) -> CatalogEntry {
    CatalogEntry {
        id: id.to_string(),
        m: translations.len(),
        lambda,
        translations,
        provenance: provenance.to_string(),
        flags: flags.iter().map(|s| s.to_string()).collect(),
        verified: Verification::Unchecked,
    }
}

/// The three published constructions, exactly as listed.
pub fn catalog() -> Vec<CatalogEntry> {
    let mut m10 = axes(2, 5);
    m10.extend(pm(v3((2, 5), (2, 5), (0, 1))));
    m10.extend(pm(v3((0, 1), (2, 5), (2, 5))));
    let mut m14 = axes(3, 7);
    m14.extend(pm(v3((2, 7), (1, 7), (0, 1))));
    m14.extend(pm(v3((1, 7), (2, 7), (0, 1))));
    let mut out = vec![
        entry("m6", Rational::new(2, 3), axes(1, 3), "published construction, six axis copies", &[]),
        entry("m10", Rational::new(3, 5), m10, "published construction, literal list", &[]),
        entry("m14", Rational::new(4, 7), m14, "published construction, literal list", &["lists 10 of 14"]),
    ];
    out[2].m = 14;
    out
}

/// Symmetric completions found by [`complete_by_symmetry`], stored so that
/// tables and examples do not redo the search.
pub fn derived_catalog() -> Vec<CatalogEntry> {
    let mut m10 = axes(2, 5);
    m10.extend(pm(v3((2, 5), (2, 5), (0, 1))));
    m10.extend(pm(v3((2, 5), (-2, 5), (0, 1))));
    let mut m14 = axes(3, 7);
    for (a, b) in [(2, 1), (1, 2)] {
        m14.extend(pm(v3((a, 7), (b, 7), (0, 1))));
        m14.extend(pm(v3((a, 7), (-b, 7), (0, 1))));
    }
    vec![
        entry("m10-sym", Rational::new(3, 5), m10, "symmetric repair of m10: drops ±(0,2/5,2/5), adds ±(2/5,-2/5,0)", &[]),
        entry("m14-sym", Rational::new(4, 7), m14, "symmetric completion of m14 under x₂ ↦ −x₂", &[]),
    ]
}

pub fn find_entry(id: &str) -> Option<CatalogEntry> {
    catalog().into_iter().chain(derived_catalog()).find(|e| e.id == id)
}

fn orbit(v: &Vec3, group: &[SymmetryOp]) -> BTreeSet<Vec3> {
    group.iter().map(|g| g.apply(v)).collect()
}

fn describe(group: &[SymmetryOp]) -> String {
    let gens: Vec<String> = group
        .iter()
        .filter(|g| !g.is_identity())
        .take(3)
        .map(|g| format!("{:?}", g.matrix()))
        .collect();
    format!("subgroup of order {} ({}{})", group.len(), gens.join(", "), if group.len() > 4 { ", …" } else { "" })
}

/// Candidate completions of `entry` to exactly `target` translations,
/// each run through the certifier.
///
/// Seeds are the listed set and, for repairs, the listed set minus one `±v`
/// pair. From each seed `S` and each subgroup `H` of the symmetry group, the
/// candidates are `H·S` and `S ∪ H·v` for listed `v`, kept when they have
/// exactly `target` elements. When the list already has `target` elements and
/// covers, it is the only candidate.
pub fn complete_by_symmetry(entry: &CatalogEntry, target: usize, budget: u64) -> Result<Vec<CatalogEntry>> {
    let listed: BTreeSet<Vec3> = entry.translations.iter().cloned().collect();
    if target < listed.len() {
        return Err(Error::Precondition(format!(
            "target {target} is below the {} listed translations",
            listed.len()
        )));
    }
    let mut identity = CatalogEntry { id: format!("{}-as-listed", entry.id), m: target, ..entry.clone() };
    if listed.len() == target {
        identity.verify(budget)?;
        if identity.is_covered() {
            return Ok(vec![identity]);
        }
    }
    let mut seeds: Vec<(String, BTreeSet<Vec3>)> = vec![("listed".into(), listed.clone())];
    for v in &listed {
        let n = neg(v);
        if v > &n && listed.contains(&n) {
            let mut s = listed.clone();
            s.remove(v);
            s.remove(&n);
            seeds.push((format!("listed without ±{}", fmt(v)), s));
        }
    }
    let groups = subgroups();
    let mut seen: BTreeSet<Vec<Vec3>> = BTreeSet::new();
    let mut raw: Vec<(String, Vec<Vec3>)> = Vec::new();
    let mut offer = |why: String, set: BTreeSet<Vec3>| {
        if set.len() == target {
            let v: Vec<Vec3> = set.into_iter().collect();
            if seen.insert(v.clone()) {
                raw.push((why, v));
            }
        }
    };
    for (seed_name, seed) in &seeds {
        for h in &groups {
            let closed: BTreeSet<Vec3> = seed.iter().flat_map(|v| orbit(v, h)).collect();
            offer(format!("{seed_name}, closed under {}", describe(h)), closed);
            for v in &listed {
                let mut s = seed.clone();
                s.extend(orbit(v, h));
                offer(format!("{seed_name}, plus orbit of {} under {}", fmt(v), describe(h)), s);
            }
        }
    }
    let mut out: Vec<CatalogEntry> = raw
        .into_par_iter()
        .enumerate()
        .map(|(k, (why, translations))| {
            let mut c = CatalogEntry {
                id: format!("{}-c{k}", entry.id),
                m: target,
                lambda: entry.lambda.clone(),
                translations,
                provenance: format!("completion of {}: {why}", entry.id),
                flags: vec![],
                verified: Verification::Unchecked,
            };
            c.verify(budget).map(|_| c)
        })
        .collect::<Result<_>>()?;
    if listed.len() == target {
        out.insert(0, identity);
    }
    Ok(out)
}

/// Default-budget form of [`complete_by_symmetry`].
pub fn complete(entry: &CatalogEntry, target: usize) -> Result<Vec<CatalogEntry>> {
    complete_by_symmetry(entry, target, DEFAULT_CELL_BUDGET)
}

fn fmt(v: &Vec3) -> String {
    format!("({},{},{})", v[0], v[1], v[2])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn literal_entries() {
        let c = catalog();
        assert_eq!(c[0].translations.len(), 6);
        assert!(c[0].translations.contains(&v3((-1, 3), (0, 1), (0, 1))));
        assert_eq!(c[1].translations.len(), 10);
        assert!(c[1].translations.contains(&v3((0, 1), (-2, 5), (-2, 5))));
        assert_eq!(c[2].translations.len(), 10);
        assert_eq!(c[2].m, 14);
        assert_eq!(c[2].flags, vec!["lists 10 of 14".to_string()]);
        assert!(c.iter().all(|e| e.verified == Verification::Unchecked));
    }

    #[test]
    fn catalog_verdicts() {
        let mut c = catalog();
        assert_eq!(c[0].verify(DEFAULT_CELL_BUDGET).unwrap(), CoverageStatus::Covered);
        assert_eq!(c[1].verify(DEFAULT_CELL_BUDGET).unwrap(), CoverageStatus::NotCovered);
        assert_eq!(c[2].verify(DEFAULT_CELL_BUDGET).unwrap(), CoverageStatus::NotCovered);
        for mut e in derived_catalog() {
            assert_eq!(e.verify(DEFAULT_CELL_BUDGET).unwrap(), CoverageStatus::Covered, "{}", e.id);
            // still covered a little above
            let mut up = e.clone();
            up.lambda = &up.lambda + q(1, 100);
            assert_eq!(up.verify(DEFAULT_CELL_BUDGET).unwrap(), CoverageStatus::Covered);
        }
    }

    #[test]
    fn complete_entry_is_its_own_completion() {
        let c = complete(&catalog()[0], 6).unwrap();
        assert_eq!(c.len(), 1);
        assert!(c[0].is_covered());
        assert!(complete(&catalog()[0], 5).is_err());
    }

    #[test]
    fn completions_reproduce_derived_entries() {
        let derived = derived_catalog();
        for (src, target, want) in [(1usize, 10usize, &derived[0]), (2, 14, &derived[1])] {
            let cands = complete(&catalog()[src], target).unwrap();
            let mut want_set = want.translations.clone();
            want_set.sort();
            let hit = cands.iter().find(|c| {
                let mut s = c.translations.clone();
                s.sort();
                s == want_set
            });
            let hit = hit.expect("derived entry among candidates");
            assert!(hit.is_covered());
            assert!(cands.iter().all(|c| c.translations.len() == target));
        }
    }

    #[test]
    fn coordinate_swap_completion_of_m14_does_not_cover() {
        let mut e = catalog()[2].clone();
        e.translations.extend(pm(v3((0, 1), (2, 7), (1, 7))));
        e.translations.extend(pm(v3((0, 1), (1, 7), (2, 7))));
        assert_eq!(e.translations.len(), 14);
        assert_eq!(e.verify(DEFAULT_CELL_BUDGET).unwrap(), CoverageStatus::NotCovered);
    }
}
