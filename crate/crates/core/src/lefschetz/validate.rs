//! Dataset lints.
//!
//! Errors: schema and consistency violations (torus factors that disagree
//! with the split part of a class, classes that are not elliptic modulo
//! `A_P`). Warnings: nonzero `chi_c` on a Levi with no compact maximal torus
//! modulo centre, and neutral pairs `P < Q` whose torus factors disagree.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::One;
use serde::Serialize;

use super::dataset::{FixedPointDataset, TorusFactor, SCHEMA};
use super::classify_roots;
use crate::rootdata::RootDatum;
use crate::subset::Subset;
use crate::weyl::has_minus_one;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub path: String,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.severity {
            Severity::Error => "error",
            Severity::Warning => "warning",
        };
        write!(f, "{tag}: {}: {}", self.path, self.message)
    }
}

struct Lints(Vec<Diagnostic>);

impl Lints {
    fn error(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(Diagnostic {
            severity: Severity::Error,
            path: path.into(),
            message: message.into(),
        });
    }

    fn warn(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.0.push(Diagnostic {
            severity: Severity::Warning,
            path: path.into(),
            message: message.into(),
        });
    }
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(|d| d.severity == Severity::Error)
}

/// All diagnostics for a dataset, in document order.
pub fn validate_dataset(ds: &FixedPointDataset) -> Vec<Diagnostic> {
    let mut lints = Lints(Vec::new());
    if ds.schema != SCHEMA {
        lints.error("schema", format!("expected \"{SCHEMA}\", found \"{}\"", ds.schema));
    }
    let rd = match ds.root_datum() {
        Ok(rd) => rd,
        Err(e) => {
            lints.error("group", e.to_string());
            return lints.0;
        }
    };
    let n = rd.rank();
    if ds.lambda.len() != n {
        lints.error("lambda", format!("expected {n} fundamental coordinates, found {}", ds.lambda.len()));
    } else if ds.lambda.iter().any(|&c| c < 0) {
        lints.error("lambda", "highest weight is not dominant");
    }
    if let Err(e) = ds.nu.to_profile(n) {
        lints.error("nu", e.to_string());
    }

    let mut levis: Vec<Option<Subset>> = Vec::new();
    let mut seen_levis = BTreeSet::new();
    for (si, stratum) in ds.strata.iter().enumerate() {
        let spath = format!("strata[{si}]");
        let idx: BTreeSet<usize> = stratum.levi_subset.iter().copied().collect();
        if idx.len() != stratum.levi_subset.len() || idx.iter().any(|&i| i == 0 || i > n) {
            lints.error(
                format!("{spath}.levi_subset"),
                format!("levi subset {:?} is not a set of indices in 1..={n}", stratum.levi_subset),
            );
            levis.push(None);
            continue;
        }
        let levi = stratum.levi();
        levis.push(Some(levi));
        if !seen_levis.insert(levi) {
            lints.error(format!("{spath}.levi_subset"), format!("duplicate stratum {levi}"));
        }
        lint_stratum(&rd, ds, si, levi, &mut lints);
    }
    lint_neutral_pairs(&rd, ds, &levis, &mut lints);
    lints.0
}

fn lint_stratum(rd: &RootDatum, ds: &FixedPointDataset, si: usize, levi: Subset, lints: &mut Lints) {
    let n = rd.rank();
    let spath = format!("strata[{si}]");
    let stratum = &ds.strata[si];
    let delta_p = rd.all_simple().difference(levi);
    let mut coset_labels = BTreeSet::new();
    let mut nonzero_chi_c = false;
    for (ci, coset) in stratum.double_cosets.iter().enumerate() {
        let cpath = format!("{spath}.double_cosets[{ci}]");
        if !coset_labels.insert(coset.label.as_str()) {
            lints.error(format!("{cpath}.label"), format!("duplicate coset label '{}'", coset.label));
        }
        if coset.r == 0 {
            lints.error(format!("{cpath}.r"), "covering index r must be at least 1");
        }
        let factor = match TorusFactor::from_entry(&coset.torus_factor) {
            Ok(t) => {
                let keys: Subset = Subset::from_indices(t.0.keys().copied().filter(|&k| k < 64));
                let extra = keys.difference(delta_p);
                let missing = delta_p.difference(keys);
                if t.0.keys().any(|&k| k >= n) || !extra.is_empty() {
                    lints.error(
                        format!("{cpath}.torus_factor"),
                        format!("keys must be the roots of Delta_P = {delta_p}"),
                    );
                    None
                } else if !missing.is_empty() {
                    lints.error(
                        format!("{cpath}.torus_factor"),
                        format!("missing values for roots {missing}"),
                    );
                    None
                } else {
                    Some(t)
                }
            }
            Err(e) => {
                lints.error(format!("{cpath}.torus_factor"), e.to_string());
                None
            }
        };
        let mut class_labels = BTreeSet::new();
        for (ki, class) in coset.classes.iter().enumerate() {
            let kpath = format!("{cpath}.classes[{ki}]");
            if !class_labels.insert(class.label.as_str()) {
                lints.error(format!("{kpath}.label"), format!("duplicate class label '{}'", class.label));
            }
            nonzero_chi_c |= class.chi_c != 0;
            let rep = &class.torus_rep;
            if rep.magnitudes.len() != n || rep.phases.len() != n {
                lints.error(
                    format!("{kpath}.torus_rep"),
                    format!(
                        "expected {n} magnitudes and phases, found {} and {}",
                        rep.magnitudes.len(),
                        rep.phases.len()
                    ),
                );
                continue;
            }
            let e = match rep.to_element() {
                Ok(e) => e,
                Err(err) => {
                    lints.error(format!("{kpath}.torus_rep"), err.to_string());
                    continue;
                }
            };
            let mut mismatches = Vec::new();
            for i in 0..n {
                let value = match e.simple_root_magnitude(rd, i) {
                    Ok(v) => v,
                    Err(err) => {
                        lints.error(format!("{kpath}.torus_rep"), err.to_string());
                        continue;
                    }
                };
                if levi.contains(i) {
                    if !value.is_one() {
                        lints.error(
                            format!("{kpath}.torus_rep"),
                            format!(
                                "class '{}' is not elliptic modulo A_P: |alpha_{}(e)| = {value}",
                                class.label,
                                i + 1
                            ),
                        );
                    }
                } else if let Some(expected) = factor.as_ref().and_then(|t| t.get(i)) {
                    if *expected != value {
                        mismatches.push(format!("alpha_{}(a_e) = {value} but the coset has {expected}", i + 1));
                    }
                }
            }
            if !mismatches.is_empty() {
                lints.error(
                    format!("{kpath}.torus_rep"),
                    format!("torus factor mismatch in class '{}': {}", class.label, mismatches.join("; ")),
                );
            }
        }
    }
    if nonzero_chi_c {
        if let Ok(false) = has_minus_one(rd, levi) {
            lints.warn(
                spath,
                format!(
                    "Levi {levi} has no compact maximal torus modulo centre, yet carries classes with nonzero chi_c"
                ),
            );
        }
    }
}

fn lint_neutral_pairs(rd: &RootDatum, ds: &FixedPointDataset, levis: &[Option<Subset>], lints: &mut Lints) {
    let full = rd.all_simple();
    for (pi, p) in levis.iter().enumerate() {
        let Some(p) = *p else { continue };
        for (qi, q) in levis.iter().enumerate() {
            let Some(q) = *q else { continue };
            if pi == qi || !p.is_subset(q) || p == q {
                continue;
            }
            let j = q.difference(p);
            let delta_q = full.difference(q);
            for (ci, cp) in ds.strata[pi].double_cosets.iter().enumerate() {
                let Ok(ap) = TorusFactor::from_entry(&cp.torus_factor) else { continue };
                let Ok(cls) = classify_roots(rd, p, &ap) else { continue };
                if !j.is_subset(cls.neutral) {
                    continue;
                }
                for cq in ds.strata[qi].double_cosets.iter().filter(|c| c.label == cp.label) {
                    let Ok(aq) = TorusFactor::from_entry(&cq.torus_factor) else { continue };
                    if ap.restrict(delta_q) != aq {
                        lints.warn(
                            format!("strata[{pi}].double_cosets[{ci}].torus_factor"),
                            format!(
                                "coset '{}' is neutral along {j} but its torus factor differs from stratum {q}",
                                cp.label
                            ),
                        );
                    }
                }
            }
        }
    }
}

/// Diagnostics summarised as a single error, if any error-level entry exists.
pub(crate) fn ensure_valid(ds: &FixedPointDataset) -> crate::error::Result<()> {
    let diags = validate_dataset(ds);
    if has_errors(&diags) {
        return Err(crate::error::Error::InvalidDataset(
            diags
                .iter()
                .filter(|d| d.severity == Severity::Error)
                .map(|d| format!("{}: {}", d.path, d.message))
                .collect(),
        ));
    }
    Ok(())
}
