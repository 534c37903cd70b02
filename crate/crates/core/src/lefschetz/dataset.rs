//! The `tff-dataset/1` JSON format.
//!
//! Every rational is a decimal-free `"p/q"` string; serialisation writes the
//! reduced form, so `parse -> write -> parse -> write` is byte-stable.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::characters::{PhaseCoord, ToralElement};
use crate::error::{Error, Result};
use crate::nilcoh::WeightProfile;
use crate::rational::{fmt_big, parse_big, to_big, to_small};
use crate::rootdata::{CartanType, RootDatum, Weight};
use crate::subset::Subset;

pub const SCHEMA: &str = "tff-dataset/1";

/// Exact rational carried as a `"p/q"` string.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Rat(pub BigRational);

impl Rat {
    pub fn parse(s: &str) -> Result<Rat> {
        parse_big(s).map(Rat)
    }
}

impl fmt::Display for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_big(&self.0))
    }
}

impl From<BigRational> for Rat {
    fn from(x: BigRational) -> Rat {
        Rat(x)
    }
}

impl Serialize for Rat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_big(&self.0))
    }
}

impl<'de> Deserialize<'de> for Rat {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        struct RatVisitor;
        impl Visitor<'_> for RatVisitor {
            type Value = Rat;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a rational number as a \"p/q\" string")
            }
            fn visit_str<E: de::Error>(self, v: &str) -> std::result::Result<Rat, E> {
                Rat::parse(v).map_err(E::custom)
            }
        }
        d.deserialize_str(RatVisitor)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupSpec {
    #[serde(rename = "type")]
    pub cartan_type: CartanType,
    pub rank: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NuKind {
    Finite,
    Middle,
    PlusInfinity,
    MinusInfinity,
}

/// Weight profile; `coords` (fundamental-weight basis) only for `finite`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NuSpec {
    pub kind: NuKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coords: Option<Vec<Rat>>,
}

impl NuSpec {
    pub fn from_profile(rd: &RootDatum, nu: &WeightProfile) -> NuSpec {
        let (kind, coords) = match nu {
            WeightProfile::Finite(w) => (
                NuKind::Finite,
                Some(rd.fundamental_coords(w).iter().map(|c| Rat(to_big(c))).collect()),
            ),
            WeightProfile::Middle => (NuKind::Middle, None),
            WeightProfile::PlusInfinity => (NuKind::PlusInfinity, None),
            WeightProfile::MinusInfinity => (NuKind::MinusInfinity, None),
        };
        NuSpec { kind, coords }
    }

    pub fn to_profile(&self, rank: usize) -> Result<WeightProfile> {
        match (self.kind, &self.coords) {
            (NuKind::Finite, Some(c)) if c.len() == rank => {
                let coords = c
                    .iter()
                    .map(|x| {
                        to_small(&x.0).ok_or_else(|| {
                            Error::InvalidInput(format!("nu coordinate {x} out of range"))
                        })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(WeightProfile::Finite(Weight::fundamental(coords)))
            }
            (NuKind::Finite, Some(c)) => Err(Error::InvalidInput(format!(
                "finite nu has {} coordinates, expected {rank}",
                c.len()
            ))),
            (NuKind::Finite, None) => {
                Err(Error::InvalidInput("finite nu requires coords".into()))
            }
            (_, Some(_)) => Err(Error::InvalidInput(
                "only a finite nu carries coords".into(),
            )),
            (NuKind::Middle, None) => Ok(WeightProfile::Middle),
            (NuKind::PlusInfinity, None) => Ok(WeightProfile::PlusInfinity),
            (NuKind::MinusInfinity, None) => Ok(WeightProfile::MinusInfinity),
        }
    }
}

/// A phase coordinate: a `"p/q"` string or an algebraic phase given by the
/// polynomial its exponential satisfies.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PhaseEntry {
    Rational(Rat),
    Algebraic { min_poly: Vec<i64> },
}

fn default_root() -> u32 {
    1
}

fn is_default_root(r: &u32) -> bool {
    *r == 1
}

/// Torus representative: value at `varpi_i` is `magnitudes[i]^(1/root) e(phases[i])`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TorusRep {
    pub magnitudes: Vec<Rat>,
    #[serde(default = "default_root", skip_serializing_if = "is_default_root")]
    pub root: u32,
    pub phases: Vec<PhaseEntry>,
}

impl TorusRep {
    pub fn from_element(e: &ToralElement) -> TorusRep {
        TorusRep {
            magnitudes: e.magnitudes().iter().cloned().map(Rat).collect(),
            root: e.root(),
            phases: e
                .phases()
                .iter()
                .map(|p| match p {
                    PhaseCoord::Rational(q) => PhaseEntry::Rational(Rat(to_big(q))),
                    PhaseCoord::Algebraic { min_poly } => PhaseEntry::Algebraic {
                        min_poly: min_poly.clone(),
                    },
                })
                .collect(),
        }
    }

    pub fn to_element(&self) -> Result<ToralElement> {
        let phases = self
            .phases
            .iter()
            .map(|p| match p {
                PhaseEntry::Rational(r) => to_small(&r.0)
                    .map(PhaseCoord::Rational)
                    .ok_or_else(|| Error::InvalidInput(format!("phase {r} out of range"))),
                PhaseEntry::Algebraic { min_poly } => Ok(PhaseCoord::Algebraic {
                    min_poly: min_poly.clone(),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        ToralElement::with_root(
            self.magnitudes.iter().map(|m| m.0.clone()).collect(),
            self.root,
            phases,
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EllipticClassEntry {
    pub label: String,
    pub chi_c: i64,
    /// Ordinary Euler characteristic, needed only by the alternate formula.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    pub torus_rep: TorusRep,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DoubleCosetEntry {
    pub label: String,
    pub r: u64,
    /// `alpha(a_P)` keyed by the 1-based index of `alpha` in `Delta_P`.
    #[serde(default)]
    pub torus_factor: BTreeMap<String, Rat>,
    #[serde(default)]
    pub classes: Vec<EllipticClassEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Stratum {
    /// 1-based indices of the Levi simple roots `I`.
    pub levi_subset: Vec<usize>,
    #[serde(default)]
    pub double_cosets: Vec<DoubleCosetEntry>,
}

impl Stratum {
    pub fn levi(&self) -> Subset {
        Subset::from_indices(self.levi_subset.iter().map(|i| i.wrapping_sub(1)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FixedPointDataset {
    pub schema: String,
    pub group: GroupSpec,
    /// Highest weight of `E` in fundamental coordinates.
    pub lambda: Vec<i64>,
    pub nu: NuSpec,
    #[serde(default)]
    pub strata: Vec<Stratum>,
}

impl FixedPointDataset {
    pub fn new(rd: &RootDatum, lambda: &[i64], nu: &WeightProfile) -> FixedPointDataset {
        FixedPointDataset {
            schema: SCHEMA.to_string(),
            group: GroupSpec {
                cartan_type: rd.cartan_type(),
                rank: rd.rank(),
            },
            lambda: lambda.to_vec(),
            nu: NuSpec::from_profile(rd, nu),
            strata: Vec::new(),
        }
    }

    pub fn from_json_str(s: &str) -> Result<FixedPointDataset> {
        let de = &mut serde_json::Deserializer::from_str(s);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::Parse {
                path: if path == "." { "$".into() } else { path },
                reason: e.into_inner().to_string(),
            }
        })
    }

    pub fn from_path(path: impl AsRef<Path>) -> Result<FixedPointDataset> {
        let p = path.as_ref();
        let text = std::fs::read_to_string(p).map_err(|e| Error::Parse {
            path: p.display().to_string(),
            reason: e.to_string(),
        })?;
        Self::from_json_str(&text)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(self).expect("dataset serialises")
    }

    pub fn root_datum(&self) -> Result<RootDatum> {
        RootDatum::new(self.group.cartan_type, self.group.rank)
    }

    pub fn profile(&self) -> Result<WeightProfile> {
        self.nu.to_profile(self.group.rank)
    }

    pub fn lambda_weight(&self) -> Weight {
        Weight::fundamental_int(&self.lambda)
    }

    /// Adds a coset to the stratum with the given Levi, creating it if needed.
    pub fn push_coset(&mut self, levi: Subset, coset: DoubleCosetEntry) {
        let key = levi.one_based();
        match self.strata.iter_mut().find(|s| s.levi_subset == key) {
            Some(s) => s.double_cosets.push(coset),
            None => self.strata.push(Stratum {
                levi_subset: key,
                double_cosets: vec![coset],
            }),
        }
    }

    /// Disjoint union of the fixed-point data of two datasets on the same
    /// group, weight and profile.
    pub fn concat(&self, other: &FixedPointDataset) -> Result<FixedPointDataset> {
        if self.group != other.group || self.lambda != other.lambda || self.nu != other.nu {
            return Err(Error::InvalidInput(
                "datasets differ in group, lambda or nu".into(),
            ));
        }
        let mut out = self.clone();
        for s in &other.strata {
            if s.double_cosets.is_empty() && !out.strata.iter().any(|t| t.levi_subset == s.levi_subset) {
                out.strata.push(s.clone());
            }
            for c in &s.double_cosets {
                out.push_coset(s.levi(), c.clone());
            }
        }
        Ok(out)
    }

    /// Every `chi_c` multiplied by `k`.
    pub fn scale_chi_c(&self, k: i64) -> FixedPointDataset {
        let mut out = self.clone();
        for s in &mut out.strata {
            for c in &mut s.double_cosets {
                for cl in &mut c.classes {
                    cl.chi_c *= k;
                }
            }
        }
        out
    }

    pub fn class_count(&self) -> usize {
        self.strata
            .iter()
            .flat_map(|s| &s.double_cosets)
            .map(|c| c.classes.len())
            .sum()
    }
}

/// `alpha(a_P)` for `alpha` in `Delta_P`, keyed by 0-based simple-root index.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TorusFactor(pub BTreeMap<usize, BigRational>);

impl TorusFactor {
    pub fn new(values: impl IntoIterator<Item = (usize, BigRational)>) -> TorusFactor {
        TorusFactor(values.into_iter().collect())
    }

    /// Parses the 1-based string-keyed map of a dataset entry.
    pub fn from_entry(map: &BTreeMap<String, Rat>) -> Result<TorusFactor> {
        let mut out = BTreeMap::new();
        for (k, v) in map {
            let idx: usize = k
                .trim()
                .parse()
                .ok()
                .filter(|&i: &usize| i >= 1)
                .ok_or_else(|| Error::InvalidInput(format!("torus factor key '{k}' is not a root index")))?;
            if !v.0.is_positive() {
                return Err(Error::InvalidInput(format!(
                    "torus factor value {v} at root {k} is not positive"
                )));
            }
            out.insert(idx - 1, v.0.clone());
        }
        Ok(TorusFactor(out))
    }

    pub fn to_entry(&self) -> BTreeMap<String, Rat> {
        self.0
            .iter()
            .map(|(k, v)| ((k + 1).to_string(), Rat(v.clone())))
            .collect()
    }

    pub fn get(&self, i: usize) -> Option<&BigRational> {
        self.0.get(&i)
    }

    pub fn restrict(&self, s: Subset) -> TorusFactor {
        TorusFactor(
            self.0
                .iter()
                .filter(|(k, _)| s.contains(**k))
                .map(|(k, v)| (*k, v.clone()))
                .collect(),
        )
    }

    pub fn trivial(s: Subset) -> TorusFactor {
        TorusFactor(s.iter().map(|i| (i, BigRational::one())).collect())
    }
}
