//! Kostant's decomposition of `H^*(n_P, E)` into irreducible Levi modules,
//! the quadrant label `I_nu(w)` of each summand, and the stalks of weighted
//! cohomology with supports.
//!
//! The pairing `<gamma, t_alpha>` with the cocharacter dual to `alpha` in
//! `Delta_P` is the coefficient of `alpha` in the root-basis expansion of
//! `gamma`.

use std::fmt;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::characters::weyl_dimension;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootdata::{ParabolicType, RootDatum, Weight};
use crate::subset::Subset;
use crate::weyl::{WeylElement, WeylGroup};

/// Weight profile `nu` selecting a weight truncation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightProfile {
    Finite(Weight),
    /// `nu = -rho`.
    Middle,
    PlusInfinity,
    MinusInfinity,
}

impl WeightProfile {
    pub fn is_infinite(&self) -> bool {
        matches!(self, WeightProfile::PlusInfinity | WeightProfile::MinusInfinity)
    }

    /// Root-basis coordinates of a finite profile (`Middle` expands to `-rho`).
    pub fn finite_weight(&self, rd: &RootDatum) -> Option<Weight> {
        match self {
            WeightProfile::Finite(w) => Some(rd.to_root_basis(w)),
            WeightProfile::Middle => Some(-rd.rho()),
            _ => None,
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            WeightProfile::Finite(_) => "finite",
            WeightProfile::Middle => "middle",
            WeightProfile::PlusInfinity => "plus_infinity",
            WeightProfile::MinusInfinity => "minus_infinity",
        }
    }
}

impl fmt::Display for WeightProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightProfile::Finite(w) => write!(f, "finite {w}"),
            other => f.write_str(other.kind_name()),
        }
    }
}

/// One irreducible summand `V^L_{w(lambda+rho)-rho}[-l(w)]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KostantModule {
    pub w: WeylElement,
    pub degree: usize,
    /// Root-basis coordinates.
    pub highest_weight: Weight,
    pub quadrant: Subset,
}

/// `I_nu(gamma)`: the `alpha` in `Delta_P` whose coefficient in `gamma - nu` is negative.
pub fn i_nu_of_weight(rd: &RootDatum, levi: Subset, gamma: &Weight, nu: &WeightProfile) -> Subset {
    let delta_p = rd.all_simple().difference(levi);
    match nu {
        WeightProfile::MinusInfinity => Subset::EMPTY,
        WeightProfile::PlusInfinity => delta_p,
        finite => {
            let diff = &rd.to_root_basis(gamma) - &finite.finite_weight(rd).unwrap();
            Subset::from_indices(delta_p.iter().filter(|&a| diff.coords[a].is_negative()))
        }
    }
}

/// `I_nu(w)` for the Kostant summand indexed by `w`.
pub fn i_nu(
    rd: &RootDatum,
    levi: Subset,
    w: &WeylElement,
    lambda: &Weight,
    nu: &WeightProfile,
) -> Subset {
    i_nu_of_weight(rd, levi, &w.dot(rd, lambda), nu)
}

fn require_finite(rd: &RootDatum, nu: &WeightProfile) -> Result<Weight> {
    nu.finite_weight(rd).ok_or_else(|| {
        Error::InvalidInput("quadrant membership requires a finite weight profile".into())
    })
}

/// Whether `gamma` lies in the quadrant of type `J`.
pub fn quadrant_membership(
    rd: &RootDatum,
    levi: Subset,
    gamma: &Weight,
    nu: &WeightProfile,
    j: Subset,
) -> Result<bool> {
    require_finite(rd, nu)?;
    Ok(i_nu_of_weight(rd, levi, gamma, nu) == j)
}

/// Membership in the cone `{gamma : <gamma - nu, t_alpha> >= 0 for alpha in Delta_P \ J}`.
pub fn in_cone(rd: &RootDatum, levi: Subset, gamma: &Weight, nu: &WeightProfile, j: Subset) -> Result<bool> {
    let nu_w = require_finite(rd, nu)?;
    let diff = &rd.to_root_basis(gamma) - &nu_w;
    let delta_p = rd.all_simple().difference(levi);
    Ok(delta_p.difference(j).iter().all(|a| !diff.coords[a].is_negative()))
}

/// Quadrant membership through cone differences: in the `J` cone and in no
/// `K` cone for `K` a proper subset of `J` (or, with `refined`, only those
/// with `|K| = |J| - 1`).
pub fn quadrant_membership_by_cones(
    rd: &RootDatum,
    levi: Subset,
    gamma: &Weight,
    nu: &WeightProfile,
    j: Subset,
    refined: bool,
) -> Result<bool> {
    if !in_cone(rd, levi, gamma, nu, j)? {
        return Ok(false);
    }
    for k in j.subsets() {
        if k == j || (refined && k.len() + 1 != j.len()) {
            continue;
        }
        if in_cone(rd, levi, gamma, nu, k)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_lambda(rd: &RootDatum, lambda: &Weight) -> Result<()> {
    if !rd.is_integral(lambda) {
        return Err(Error::NotIntegral(lambda.to_string()));
    }
    if !rd.is_dominant(lambda) {
        return Err(Error::NotDominant(lambda.to_string()));
    }
    Ok(())
}

/// One module per Kostant representative, ordered by (length, word).
pub fn kostant_decomposition(
    group: &WeylGroup,
    levi: Subset,
    lambda: &Weight,
    nu: &WeightProfile,
) -> Result<Vec<KostantModule>> {
    let rd = group.root_datum();
    check_lambda(rd, lambda)?;
    let reps = group.kostant_representatives(levi)?;
    Ok(reps
        .representatives
        .into_iter()
        .map(|w| {
            let highest_weight = w.dot(rd, lambda);
            let quadrant = i_nu_of_weight(rd, levi, &highest_weight, nu);
            KostantModule {
                degree: w.length(),
                highest_weight,
                quadrant,
                w,
            }
        })
        .collect())
}

/// Kostant modules with `I_nu(w) = J`, placed in degree `l(w) + |J|`.
#[derive(Clone, Debug)]
pub struct StalkTable {
    pub parabolic: ParabolicType,
    pub support: Subset,
    pub entries: Vec<(usize, KostantModule)>,
}

pub fn stalk_with_supports(
    group: &WeylGroup,
    levi: Subset,
    support: Subset,
    lambda: &Weight,
    nu: &WeightProfile,
) -> Result<StalkTable> {
    let rd = group.root_datum();
    rd.check_subset(levi)?;
    let parabolic = rd.nilradical(levi);
    if !support.is_subset(parabolic.delta_p) {
        return Err(Error::InvalidInput(format!(
            "support set {support} is not contained in Delta_P = {}",
            parabolic.delta_p
        )));
    }
    let entries = kostant_decomposition(group, levi, lambda, nu)?
        .into_iter()
        .filter(|m| m.quadrant == support)
        .map(|m| (m.degree + support.len(), m))
        .collect();
    Ok(StalkTable {
        parabolic,
        support,
        entries,
    })
}

/// Finite stand-in for `nu = -infinity` (`-M rho`) or `+infinity` (`+M rho`),
/// with `M` large enough that every listed weight lands strictly inside the
/// all-positive (resp. all-negative) quadrant.
pub fn finite_proxy<'a>(
    rd: &RootDatum,
    nu: &WeightProfile,
    weights: impl IntoIterator<Item = &'a Weight>,
) -> WeightProfile {
    let sign = match nu {
        WeightProfile::MinusInfinity => -1,
        WeightProfile::PlusInfinity => 1,
        other => return other.clone(),
    };
    let rho = rd.rho();
    let mut bound = Q::zero();
    for w in weights {
        let w = rd.to_root_basis(w);
        for (c, r) in w.coords.iter().zip(&rho.coords) {
            bound = bound.max(c.abs() / r);
        }
    }
    let m = bound.floor().to_integer() + 1;
    WeightProfile::Finite(rho.scale(qi(sign * m)))
}

/// One row of an emitted Kostant table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KostantRow {
    pub word: String,
    pub length: usize,
    /// Highest weight in fundamental coordinates.
    pub highest_weight: Vec<i64>,
    pub quadrant: Vec<usize>,
    pub shifted_degree: usize,
    pub weyl_dimension: u64,
}

pub fn kostant_table(
    group: &WeylGroup,
    levi: Subset,
    lambda: &Weight,
    nu: &WeightProfile,
) -> Result<Vec<KostantRow>> {
    let rd = group.root_datum();
    kostant_decomposition(group, levi, lambda, nu)?
        .into_iter()
        .map(|m| {
            let highest_weight = rd
                .fundamental_coords(&m.highest_weight)
                .iter()
                .map(|c| c.to_integer().to_i64().unwrap())
                .collect();
            Ok(KostantRow {
                word: m.w.word_string(),
                length: m.degree,
                highest_weight,
                quadrant: m.quadrant.one_based(),
                shifted_degree: m.degree + m.quadrant.len(),
                weyl_dimension: weyl_dimension(rd, levi, &m.highest_weight)?,
            })
        })
        .collect()
}
