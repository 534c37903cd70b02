//! Exact semisimple torus elements of the simply connected split group.
//!
//! An element is recorded by its values on the fundamental weights:
//! magnitude `R_i^(1/root)` with `R_i` a positive rational, and phase
//! `theta_i` (value `e(theta_i)`). The `root` index lets central
//! normalisations such as `sqrt(p)` be stored without loss. Phases that are
//! not rational are carried by the minimal polynomial of the corresponding
//! root value; evaluating on a weight that pairs nontrivially with such a
//! coordinate reports that a field extension is needed.

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::cyclotomic::{normalize_phase, CycValue};
use crate::error::{Error, Result};
use crate::rational::{exact_root, pow_int, Q};
use crate::rootdata::{RootDatum, Weight};
use crate::weyl::WeylElement;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PhaseCoord {
    Rational(Q),
    /// Phase known only algebraically; integer coefficients, constant term first.
    Algebraic { min_poly: Vec<i64> },
}

impl PhaseCoord {
    fn rational(&self) -> Option<Q> {
        match self {
            PhaseCoord::Rational(q) => Some(*q),
            PhaseCoord::Algebraic { .. } => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ToralElement {
    magnitudes: Vec<BigRational>,
    root: u32,
    phases: Vec<PhaseCoord>,
}

impl ToralElement {
    pub fn identity(rank: usize) -> ToralElement {
        ToralElement {
            magnitudes: vec![BigRational::one(); rank],
            root: 1,
            phases: vec![PhaseCoord::Rational(Q::zero()); rank],
        }
    }

    /// Magnitudes `m_i` and rational phases `theta_i` per fundamental weight.
    pub fn new(magnitudes: Vec<BigRational>, phases: Vec<Q>) -> Result<ToralElement> {
        Self::with_root(magnitudes, 1, phases.into_iter().map(PhaseCoord::Rational).collect())
    }

    /// Magnitudes given as `root`-th powers.
    pub fn with_root(
        magnitudes: Vec<BigRational>,
        root: u32,
        phases: Vec<PhaseCoord>,
    ) -> Result<ToralElement> {
        if magnitudes.len() != phases.len() {
            return Err(Error::InvalidInput(format!(
                "torus element has {} magnitudes but {} phases",
                magnitudes.len(),
                phases.len()
            )));
        }
        if root == 0 {
            return Err(Error::InvalidInput("magnitude root index must be positive".into()));
        }
        if let Some(m) = magnitudes.iter().find(|m| !m.is_positive()) {
            return Err(Error::InvalidInput(format!("magnitude {m} is not positive")));
        }
        let phases = phases
            .into_iter()
            .map(|p| match p {
                PhaseCoord::Rational(q) => PhaseCoord::Rational(normalize_phase(q)),
                other => other,
            })
            .collect();
        Ok(ToralElement {
            magnitudes,
            root,
            phases,
        })
    }

    pub fn rank(&self) -> usize {
        self.magnitudes.len()
    }

    pub fn magnitudes(&self) -> &[BigRational] {
        &self.magnitudes
    }

    pub fn root(&self) -> u32 {
        self.root
    }

    pub fn phases(&self) -> &[PhaseCoord] {
        &self.phases
    }

    pub fn has_algebraic_phase(&self) -> bool {
        self.phases.iter().any(|p| p.rational().is_none())
    }

    /// Value at an integral weight given by integer fundamental coordinates.
    pub fn evaluate_fundamental(&self, coords: &[i64]) -> Result<CycValue> {
        assert_eq!(coords.len(), self.rank(), "rank mismatch");
        let mut mag = BigRational::one();
        let mut phase = Q::zero();
        for (i, &f) in coords.iter().enumerate() {
            if f == 0 {
                continue;
            }
            mag *= pow_int(&self.magnitudes[i], f);
            match &self.phases[i] {
                PhaseCoord::Rational(t) => phase += *t * f,
                PhaseCoord::Algebraic { min_poly } => {
                    return Err(Error::NeedsExtension(format!(
                        "phase of fundamental weight {} is algebraic (minimal polynomial {:?})",
                        i + 1,
                        min_poly
                    )))
                }
            }
        }
        let mag = exact_root(&mag, self.root).ok_or_else(|| {
            Error::NeedsExtension(format!("{mag} has no rational {}-th root", self.root))
        })?;
        Ok(CycValue::monomial(mag, phase))
    }

    pub fn evaluate(&self, rd: &RootDatum, lambda: &Weight) -> Result<CycValue> {
        self.evaluate_fundamental(&integral_coords(rd, lambda)?)
    }

    /// Value at a root given in root coordinates.
    pub fn evaluate_root(&self, rd: &RootDatum, root: &[i64]) -> Result<CycValue> {
        self.evaluate(rd, &rd.root_weight(root))
    }

    /// Magnitude of `alpha_i(e)` for the simple root `alpha_i`.
    pub fn simple_root_magnitude(&self, rd: &RootDatum, i: usize) -> Result<BigRational> {
        let coords: Vec<i64> = (0..rd.rank()).map(|j| rd.cartan_matrix()[j][i]).collect();
        self.split_part().evaluate_fundamental(&coords).map(|v| {
            v.as_rational()
                .expect("split part evaluates to a positive rational")
        })
    }

    pub fn inverse(&self) -> ToralElement {
        ToralElement {
            magnitudes: self.magnitudes.iter().map(|m| m.recip()).collect(),
            root: self.root,
            phases: self
                .phases
                .iter()
                .map(|p| match p {
                    PhaseCoord::Rational(q) => PhaseCoord::Rational(normalize_phase(-*q)),
                    PhaseCoord::Algebraic { min_poly } => PhaseCoord::Algebraic {
                        // roots of the reciprocal polynomial are the inverses
                        min_poly: min_poly.iter().rev().copied().collect(),
                    },
                })
                .collect(),
        }
    }

    /// Phases zeroed.
    pub fn split_part(&self) -> ToralElement {
        ToralElement {
            magnitudes: self.magnitudes.clone(),
            root: self.root,
            phases: vec![PhaseCoord::Rational(Q::zero()); self.rank()],
        }
    }

    /// Magnitudes normalised to 1.
    pub fn elliptic_part(&self) -> ToralElement {
        ToralElement {
            magnitudes: vec![BigRational::one(); self.rank()],
            root: 1,
            phases: self.phases.clone(),
        }
    }

    /// Pointwise product; both factors are homomorphisms on the weight lattice.
    pub fn multiply(&self, other: &ToralElement) -> Result<ToralElement> {
        if self.rank() != other.rank() {
            return Err(Error::InvalidInput("torus elements of different rank".into()));
        }
        let root = num_integer::lcm(self.root, other.root);
        let (ka, kb) = ((root / self.root) as usize, (root / other.root) as usize);
        let magnitudes = self
            .magnitudes
            .iter()
            .zip(&other.magnitudes)
            .map(|(a, b)| num_traits::pow(a.clone(), ka) * num_traits::pow(b.clone(), kb))
            .collect();
        let phases = self
            .phases
            .iter()
            .zip(&other.phases)
            .map(|(a, b)| match (a, b) {
                (PhaseCoord::Rational(x), PhaseCoord::Rational(y)) => {
                    Ok(PhaseCoord::Rational(normalize_phase(x + y)))
                }
                (PhaseCoord::Rational(x), alg) | (alg, PhaseCoord::Rational(x)) if x.is_zero() => {
                    Ok(alg.clone())
                }
                _ => Err(Error::NeedsExtension(
                    "product of algebraic phases".to_string(),
                )),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ToralElement {
            magnitudes,
            root,
            phases,
        })
    }

    /// `w . e`, defined by `(w . e)(mu) = e(w^{-1} mu)`.
    pub fn weyl_act(&self, rd: &RootDatum, w: &WeylElement) -> Result<ToralElement> {
        let n = rd.rank();
        let mut magnitudes = Vec::with_capacity(n);
        let mut phases = Vec::with_capacity(n);
        for i in 0..n {
            let image = w.apply_inverse(rd, &rd.fundamental_weights()[i]);
            let f = integral_coords(rd, &image)?;
            let mut m = BigRational::one();
            let mut ph = Q::zero();
            for (j, &c) in f.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                m *= pow_int(&self.magnitudes[j], c);
                match &self.phases[j] {
                    PhaseCoord::Rational(t) => ph += *t * c,
                    PhaseCoord::Algebraic { .. } => {
                        return Err(Error::NeedsExtension(
                            "Weyl action on an algebraic phase".into(),
                        ))
                    }
                }
            }
            magnitudes.push(m);
            phases.push(PhaseCoord::Rational(normalize_phase(ph)));
        }
        Ok(ToralElement {
            magnitudes,
            root: self.root,
            phases,
        })
    }
}

pub(crate) fn integral_coords(rd: &RootDatum, lambda: &Weight) -> Result<Vec<i64>> {
    rd.fundamental_coords(lambda)
        .iter()
        .map(|c| {
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::NotIntegral(lambda.to_string()))
            }
        })
        .collect()
}

#[cfg(test)]
fn big_int(n: i64) -> BigRational {
    BigRational::from_integer(num_bigint::BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_big, q};
    use crate::rootdata::CartanType;

    fn a1() -> RootDatum {
        RootDatum::new(CartanType::A, 1).unwrap()
    }

    #[test]
    fn evaluation_examples() {
        let rd = a1();
        let id = ToralElement::identity(1);
        assert_eq!(id.evaluate(&rd, &Weight::fundamental_int(&[5])).unwrap(), CycValue::one());

        let e = ToralElement::new(vec![big_int(1)], vec![q(1, 4)]).unwrap();
        assert_eq!(
            e.evaluate(&rd, &Weight::fundamental_int(&[2])).unwrap(),
            CycValue::from_int(-1)
        );

        let e = ToralElement::new(vec![parse_big("3/2").unwrap()], vec![Q::zero()]).unwrap();
        assert_eq!(
            e.evaluate_root(&rd, &[1]).unwrap(),
            CycValue::from_rational(parse_big("9/4").unwrap())
        );
        assert!(matches!(
            e.evaluate(&rd, &Weight::fundamental(vec![q(1, 2)])),
            Err(Error::NotIntegral(_))
        ));
    }

    #[test]
    fn root_index_magnitudes() {
        let rd = a1();
        // fundamental weight value sqrt(3): alpha = 2 varpi evaluates to 3
        let e = ToralElement::with_root(vec![big_int(3)], 2, vec![PhaseCoord::Rational(Q::zero())])
            .unwrap();
        assert_eq!(e.evaluate_root(&rd, &[1]).unwrap(), CycValue::from_int(3));
        assert!(matches!(
            e.evaluate(&rd, &Weight::fundamental_int(&[1])),
            Err(Error::NeedsExtension(_))
        ));
        assert_eq!(e.simple_root_magnitude(&rd, 0).unwrap(), big_int(3));
    }

    #[test]
    fn algebraic_phase_needs_extension_only_when_paired() {
        let rd = a1();
        let e = ToralElement::with_root(
            vec![big_int(1)],
            1,
            vec![PhaseCoord::Algebraic {
                min_poly: vec![2, 3, 2],
            }],
        )
        .unwrap();
        assert_eq!(e.evaluate(&rd, &Weight::zero(1)).unwrap(), CycValue::one());
        assert!(matches!(
            e.evaluate_root(&rd, &[1]),
            Err(Error::NeedsExtension(_))
        ));
    }

    #[test]
    fn multiplicative_and_split_elliptic_factorisation() {
        let rd = RootDatum::new(CartanType::C, 2).unwrap();
        let e = ToralElement::new(
            vec![parse_big("2/3").unwrap(), parse_big("5").unwrap()],
            vec![q(1, 3), q(3, 4)],
        )
        .unwrap();
        let a = Weight::fundamental_int(&[2, -1]);
        let b = Weight::fundamental_int(&[-3, 4]);
        assert_eq!(
            e.evaluate(&rd, &(&a + &b)).unwrap(),
            &e.evaluate(&rd, &a).unwrap() * &e.evaluate(&rd, &b).unwrap()
        );
        assert_eq!(e.evaluate(&rd, &Weight::zero(2)).unwrap(), CycValue::one());
        let back = e.split_part().multiply(&e.elliptic_part()).unwrap();
        assert_eq!(back, e);
        let swapped = e.elliptic_part().multiply(&e.split_part()).unwrap();
        assert_eq!(swapped, e);
        let inv = e.inverse();
        assert_eq!(
            &e.evaluate(&rd, &a).unwrap() * &inv.evaluate(&rd, &a).unwrap(),
            CycValue::one()
        );
    }
}
