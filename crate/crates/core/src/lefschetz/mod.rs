//! Fixed-point datasets and the assembly of the Lefschetz number.
//!
//! A class `e` in a double coset with covering index `r` on the stratum of
//! the standard parabolic `P` contributes
//!
//! ```text
//! r chi_c (-1)^{|D+|} sum_{w in W^P, I_nu(w) = D+} (-1)^{l(w)} Tr(e^{-1}; V^L_{w(lambda+rho)-rho})
//! ```
//!
//! where `D+` is the set of simple roots of `Delta_P` with `alpha(a_e) < 1`.
//! The alternate formula gates on `D+ u D0` and uses the ordinary Euler
//! characteristic.

mod dataset;
mod validate;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::One;

pub use dataset::{
    DoubleCosetEntry, EllipticClassEntry, FixedPointDataset, GroupSpec, NuKind, NuSpec, PhaseEntry,
    Rat, Stratum, TorusFactor, TorusRep, SCHEMA,
};
pub use validate::{has_errors, validate_dataset, Diagnostic, Severity};

use crate::characters::{character_value, nilradical_det_factor, CycValue, ToralElement};
use crate::error::{Error, Result};
use crate::nilcoh::{finite_proxy, kostant_decomposition, KostantModule, WeightProfile};
use crate::rootdata::{RootDatum, Weight};
use crate::subset::Subset;
use crate::weyl::WeylGroup;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// Gate `I_nu(w) = D+`, compactly supported Euler characteristic.
    Main,
    /// Gate `I_nu(w) = D+ u D0`, ordinary Euler characteristic.
    Alternate,
    /// Closed forms for `nu = +-infinity`; the main formula otherwise.
    AutoInfinite,
}

impl FromStr for Formula {
    type Err = Error;

    fn from_str(s: &str) -> Result<Formula> {
        match s {
            "main" => Ok(Formula::Main),
            "alternate" => Ok(Formula::Alternate),
            "auto-infinite" => Ok(Formula::AutoInfinite),
            other => Err(Error::InvalidInput(format!(
                "unknown formula '{other}' (expected main, alternate or auto-infinite)"
            ))),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Formula::Main => "main",
            Formula::Alternate => "alternate",
            Formula::AutoInfinite => "auto-infinite",
        })
    }
}

/// Expanding/contracting/neutral split of `Delta_P` under a torus factor.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RootClassification {
    /// `alpha(a) < 1`.
    pub plus: Subset,
    /// `alpha(a) > 1`.
    pub minus: Subset,
    /// `alpha(a) = 1`.
    pub neutral: Subset,
}

pub fn classify_roots(rd: &RootDatum, levi: Subset, a: &TorusFactor) -> Result<RootClassification> {
    rd.check_subset(levi)?;
    let one = BigRational::one();
    let mut out = RootClassification {
        plus: Subset::EMPTY,
        minus: Subset::EMPTY,
        neutral: Subset::EMPTY,
    };
    for i in rd.all_simple().difference(levi).iter() {
        let v = a.get(i).ok_or_else(|| {
            Error::InvalidInput(format!("torus factor has no value for simple root {}", i + 1))
        })?;
        match v.cmp(&one) {
            std::cmp::Ordering::Less => out.plus.insert(i),
            std::cmp::Ordering::Greater => out.minus.insert(i),
            std::cmp::Ordering::Equal => out.neutral.insert(i),
        }
    }
    Ok(out)
}

/// Levi subset of the greatest neutral parabolic containing `P`: `I u D0`.
pub fn maximal_neutral_parabolic(rd: &RootDatum, levi: Subset, a: &TorusFactor) -> Result<Subset> {
    Ok(levi.union(classify_roots(rd, levi, a)?.neutral))
}

fn sign(k: usize) -> i64 {
    if k % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Per-stratum values of one evaluation, strata in subset order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Evaluation {
    pub formula: Formula,
    pub total: CycValue,
    pub strata: Vec<(Subset, CycValue)>,
}

/// Evaluates contributions for one group, weight and profile, caching the
/// Kostant decomposition of every Levi it meets.
pub struct Evaluator {
    group: WeylGroup,
    lambda: Weight,
    nu: WeightProfile,
    modules: RwLock<BTreeMap<Subset, Arc<Vec<KostantModule>>>>,
}

impl Evaluator {
    pub fn new(rd: RootDatum, lambda: &Weight, nu: WeightProfile) -> Result<Evaluator> {
        let lambda = rd.to_root_basis(lambda);
        if !rd.is_integral(&lambda) {
            return Err(Error::NotIntegral(lambda.to_string()));
        }
        if !rd.is_dominant(&lambda) {
            return Err(Error::NotDominant(lambda.to_string()));
        }
        Ok(Evaluator {
            group: WeylGroup::new(rd)?,
            lambda,
            nu,
            modules: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn for_dataset(ds: &FixedPointDataset) -> Result<Evaluator> {
        validate::ensure_valid(ds)?;
        Evaluator::new(ds.root_datum()?, &ds.lambda_weight(), ds.profile()?)
    }

    pub fn root_datum(&self) -> &RootDatum {
        self.group.root_datum()
    }

    pub fn profile(&self) -> &WeightProfile {
        &self.nu
    }

    pub fn modules(&self, levi: Subset) -> Result<Arc<Vec<KostantModule>>> {
        if let Some(m) = self.modules.read().unwrap().get(&levi) {
            return Ok(Arc::clone(m));
        }
        let m = Arc::new(kostant_decomposition(&self.group, levi, &self.lambda, &self.nu)?);
        self.modules.write().unwrap().insert(levi, Arc::clone(&m));
        Ok(m)
    }

    /// `sum over I_nu(w) = gate of (-1)^{l(w)} Tr(e^{-1}; V^L_{w.lambda})`.
    pub fn gated_sum(&self, levi: Subset, gate: Subset, e: &ToralElement) -> Result<CycValue> {
        let rd = self.root_datum();
        let inv = e.inverse();
        let mut acc = CycValue::zero();
        for m in self.modules(levi)?.iter().filter(|m| m.quadrant == gate) {
            let t = character_value(rd, levi, &m.highest_weight, &inv)?;
            acc += &t.scale_int(sign(m.degree));
        }
        Ok(acc)
    }

    /// `Tr(e^{-1}; E)`.
    pub fn trace_on_e(&self, e: &ToralElement) -> Result<CycValue> {
        let rd = self.root_datum();
        character_value(rd, rd.all_simple(), &self.lambda, &e.inverse())
    }

    fn checked_class(
        &self,
        levi: Subset,
        coset: &DoubleCosetEntry,
        class: &EllipticClassEntry,
    ) -> Result<(ToralElement, RootClassification)> {
        let rd = self.root_datum();
        let mismatch = |reason: String| Error::TorusFactorMismatch {
            label: class.label.clone(),
            reason,
        };
        let e = class.torus_rep.to_element()?;
        if e.rank() != rd.rank() {
            return Err(mismatch(format!("torus representative has rank {}", e.rank())));
        }
        let factor = TorusFactor::from_entry(&coset.torus_factor)?;
        for i in rd.all_simple().difference(levi).iter() {
            let value = e.simple_root_magnitude(rd, i)?;
            match factor.get(i) {
                Some(v) if *v == value => {}
                Some(v) => {
                    return Err(mismatch(format!(
                        "alpha_{}(a_e) = {value} but the coset torus factor is {v}",
                        i + 1
                    )))
                }
                None => return Err(mismatch(format!("no torus factor for alpha_{}", i + 1))),
            }
        }
        let cls = classify_roots(rd, levi, &factor)?;
        Ok((e, cls))
    }

    pub fn local_contribution(
        &self,
        levi: Subset,
        coset: &DoubleCosetEntry,
        class: &EllipticClassEntry,
        formula: Formula,
    ) -> Result<CycValue> {
        let rd = self.root_datum();
        let (e, cls) = self.checked_class(levi, coset, class)?;
        let r = coset.r as i64;
        let (gate, euler) = match formula {
            Formula::AutoInfinite if self.nu.is_infinite() => {
                return self.infinite_contribution(levi, r * class.chi_c, &e, &cls)
            }
            Formula::Main | Formula::AutoInfinite => (cls.plus, class.chi_c),
            Formula::Alternate => {
                let chi = class.chi.ok_or_else(|| {
                    Error::InvalidDataset(vec![format!(
                        "class '{}': the alternate formula needs chi",
                        class.label
                    )])
                })?;
                (cls.plus.union(cls.neutral), chi)
            }
        };
        debug_assert!(gate.is_subset(rd.all_simple().difference(levi)));
        if euler == 0 {
            return Ok(CycValue::zero());
        }
        Ok(self
            .gated_sum(levi, gate, &e)?
            .scale_int(r * euler * sign(gate.len())))
    }

    /// Closed form at `nu = -infinity` (needs `D+` empty) or `+infinity`
    /// (needs `D+ = Delta_P`): `Tr(e^{-1}; E) det(1 - Ad(e); n_P)`.
    fn infinite_contribution(
        &self,
        levi: Subset,
        weight: i64,
        e: &ToralElement,
        cls: &RootClassification,
    ) -> Result<CycValue> {
        let rd = self.root_datum();
        let delta_p = rd.all_simple().difference(levi);
        let gate_open = match self.nu {
            WeightProfile::MinusInfinity => cls.plus.is_empty(),
            WeightProfile::PlusInfinity => cls.plus == delta_p,
            _ => {
                return Err(Error::InvalidInput(
                    "closed form requires an infinite weight profile".into(),
                ))
            }
        };
        if !gate_open || weight == 0 {
            return Ok(CycValue::zero());
        }
        let value = &self.trace_on_e(e)? * &nilradical_det_factor(rd, levi, e)?;
        Ok(value.scale_int(weight * sign(cls.plus.len())))
    }

    pub fn stratum_contribution(&self, stratum: &Stratum, formula: Formula) -> Result<CycValue> {
        let levi = stratum.levi();
        let mut cosets: Vec<&DoubleCosetEntry> = stratum.double_cosets.iter().collect();
        cosets.sort_by(|a, b| a.label.cmp(&b.label));
        let mut acc = CycValue::zero();
        for coset in cosets {
            let mut classes: Vec<&EllipticClassEntry> = coset.classes.iter().collect();
            classes.sort_by(|a, b| a.label.cmp(&b.label));
            for class in classes {
                acc += &self.local_contribution(levi, coset, class, formula)?;
            }
        }
        Ok(acc)
    }
}

fn missing_chi(ds: &FixedPointDataset) -> Vec<String> {
    let mut out = Vec::new();
    for (si, s) in ds.strata.iter().enumerate() {
        for (ci, c) in s.double_cosets.iter().enumerate() {
            for (ki, k) in c.classes.iter().enumerate() {
                if k.chi.is_none() {
                    out.push(format!(
                        "strata[{si}].double_cosets[{ci}].classes[{ki}].chi: missing (class '{}')",
                        k.label
                    ));
                }
            }
        }
    }
    out
}

/// Evaluates a dataset, keeping the per-stratum breakdown.
pub fn evaluate(ds: &FixedPointDataset, formula: Formula) -> Result<Evaluation> {
    if formula == Formula::Alternate {
        let missing = missing_chi(ds);
        if !missing.is_empty() {
            return Err(Error::InvalidDataset(missing));
        }
    }
    let ev = Evaluator::for_dataset(ds)?;
    let mut strata: Vec<&Stratum> = ds.strata.iter().collect();
    strata.sort_by_key(|s| s.levi());
    let mut out = Evaluation {
        formula,
        total: CycValue::zero(),
        strata: Vec::with_capacity(strata.len()),
    };
    for s in strata {
        let v = ev.stratum_contribution(s, formula)?;
        out.total += &v;
        out.strata.push((s.levi(), v));
    }
    Ok(out)
}

/// The global Lefschetz number.
pub fn lefschetz_number(ds: &FixedPointDataset) -> Result<CycValue> {
    evaluate(ds, Formula::Main).map(|e| e.total)
}

pub fn alternate_lefschetz(ds: &FixedPointDataset) -> Result<CycValue> {
    evaluate(ds, Formula::Alternate).map(|e| e.total)
}

/// Closed-form value for `nu = +-infinity`.
pub fn infinite_weight_value(ds: &FixedPointDataset) -> Result<CycValue> {
    if !ds.profile()?.is_infinite() {
        return Err(Error::InvalidInput(
            "infinite_weight_value needs nu = plus_infinity or minus_infinity".into(),
        ));
    }
    evaluate(ds, Formula::AutoInfinite).map(|e| e.total)
}

/// The dataset with an infinite profile replaced by its finite proxy
/// `-+M rho`, `M` exceeding every Kostant weight met on its strata.
pub fn with_finite_proxy(ds: &FixedPointDataset) -> Result<FixedPointDataset> {
    let nu = ds.profile()?;
    if !nu.is_infinite() {
        return Ok(ds.clone());
    }
    let ev = Evaluator::for_dataset(ds)?;
    let rd = ev.root_datum();
    let mut weights = Vec::new();
    for s in &ds.strata {
        weights.extend(ev.modules(s.levi())?.iter().map(|m| m.highest_weight.clone()));
    }
    let proxy = finite_proxy(rd, &nu, weights.iter());
    let mut out = ds.clone();
    out.nu = NuSpec::from_profile(rd, &proxy);
    Ok(out)
}
