//! Characters of Levi subgroups evaluated at exact torus elements.
//!
//! Weight multiplicities come from Freudenthal's recursion inside the Levi,
//! so no Weyl denominator is ever divided and torsion elements need no
//! special treatment.

mod cyclotomic;
mod torus;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_traits::{Signed, ToPrimitive, Zero};

pub use cyclotomic::{cyclotomic_polynomial, normalize_phase, CycValue};
pub use torus::{PhaseCoord, ToralElement};

use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootdata::{CartanType, RootDatum, Weight};
use crate::subset::Subset;


/// Weight multiplicities keyed by root-basis weight.
pub type Multiplicities = BTreeMap<Weight, u64>;

type CacheKey = (CartanType, usize, Subset, Weight);

/// Read-mostly cache of multiplicity tables keyed by `(type, rank, I, beta)`.
#[derive(Default)]
pub struct MultiplicityCache {
    tables: RwLock<HashMap<CacheKey, Arc<Multiplicities>>>,
}

impl MultiplicityCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn global() -> &'static MultiplicityCache {
        static CACHE: OnceLock<MultiplicityCache> = OnceLock::new();
        CACHE.get_or_init(MultiplicityCache::new)
    }

    pub fn get(&self, rd: &RootDatum, levi: Subset, beta: &Weight) -> Result<Arc<Multiplicities>> {
        let beta = rd.to_root_basis(beta);
        let key = (rd.cartan_type(), rd.rank(), levi, beta.clone());
        if let Some(t) = self.tables.read().unwrap().get(&key) {
            return Ok(Arc::clone(t));
        }
        let table = Arc::new(freudenthal(rd, levi, &beta)?);
        self.tables
            .write()
            .unwrap()
            .entry(key)
            .or_insert_with(|| Arc::clone(&table));
        Ok(table)
    }

    pub fn len(&self) -> usize {
        self.tables.read().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

fn check_levi_weight(rd: &RootDatum, levi: Subset, beta: &Weight) -> Result<()> {
    rd.check_subset(levi)?;
    if !rd.is_integral(beta) {
        return Err(Error::NotIntegral(beta.to_string()));
    }
    if !rd.is_levi_dominant(beta, levi) {
        return Err(Error::NotDominant(format!(
            "{beta} is not dominant for the Levi {levi}"
        )));
    }
    Ok(())
}

/// Multiplicities of the irreducible `L_I`-module with highest weight `beta`.
pub fn weight_multiplicities(rd: &RootDatum, levi: Subset, beta: &Weight) -> Result<Arc<Multiplicities>> {
    MultiplicityCache::global().get(rd, levi, beta)
}

fn freudenthal(rd: &RootDatum, levi: Subset, beta: &Weight) -> Result<Multiplicities> {
    check_levi_weight(rd, levi, beta)?;
    let n = rd.rank();
    let rho = rd.levi_rho(levi);
    let roots: Vec<(Weight, i64)> = rd
        .levi_roots(levi)
        .iter()
        .map(|r| (rd.root_weight(r), r.iter().sum()))
        .collect();
    let norm = |w: &Weight| rd.inner(w, w);
    let top = norm(&(beta + &rho));

    let mut mult: Multiplicities = BTreeMap::new();
    mult.insert(beta.clone(), 1);
    let mut layer = vec![beta.clone()];
    let mut depth = 0i64;
    while !layer.is_empty() {
        depth += 1;
        let mut candidates: Vec<Weight> = Vec::new();
        for mu in &layer {
            for i in levi.iter() {
                let mut c = mu.coords.clone();
                c[i] -= 1;
                let nu = Weight::root(c);
                if !candidates.contains(&nu) {
                    candidates.push(nu);
                }
            }
        }
        candidates.sort();
        let mut next = Vec::new();
        for mu in candidates {
            let denom = top - norm(&(&mu + &rho));
            if denom.is_zero() {
                continue;
            }
            let mut rhs = Q::zero();
            for (alpha, height) in &roots {
                let mut k = 1;
                while k * height <= depth {
                    let shifted = &mu + &alpha.scale(qi(k));
                    if let Some(&m) = mult.get(&shifted) {
                        rhs += qi(m as i64) * rd.inner(&shifted, alpha);
                    }
                    k += 1;
                }
            }
            let m = qi(2) * rhs / denom;
            debug_assert!(m.is_integer() && !m.is_negative(), "Freudenthal produced {m}");
            let m = m.to_integer();
            if m > 0 {
                mult.insert(mu.clone(), m as u64);
                next.push(mu);
            }
        }
        layer = next;
        debug_assert!(depth < 10_000, "runaway Freudenthal recursion in rank {n}");
    }
    Ok(mult)
}

/// Weyl dimension formula for the Levi `L_I`, independent of Freudenthal.
pub fn weyl_dimension(rd: &RootDatum, levi: Subset, beta: &Weight) -> Result<u64> {
    check_levi_weight(rd, levi, beta)?;
    let rho = rd.levi_rho(levi);
    let shifted = &rd.to_root_basis(beta) + &rho;
    let mut d = Q::from_integer(1);
    for r in rd.levi_roots(levi) {
        let a = rd.root_weight(&r);
        d *= rd.inner(&shifted, &a) / rd.inner(&rho, &a);
    }
    debug_assert!(d.is_integer());
    d.to_integer()
        .to_u64()
        .ok_or_else(|| Error::Resource(format!("dimension {d} overflows")))
}

/// `Tr(e; V^L_beta)`.
pub fn character_value(rd: &RootDatum, levi: Subset, beta: &Weight, e: &ToralElement) -> Result<CycValue> {
    let mults = weight_multiplicities(rd, levi, beta)?;
    let mut acc = CycValue::zero();
    for (mu, &m) in mults.iter() {
        acc += &e.evaluate(rd, mu)?.scale_int(m as i64);
    }
    Ok(acc)
}

/// `det(1 - Ad(e); n_P) = prod over alpha in Phi(n_P) of (1 - alpha(e))`.
pub fn nilradical_det_factor(rd: &RootDatum, levi: Subset, e: &ToralElement) -> Result<CycValue> {
    let mut acc = CycValue::one();
    for r in rd.nilradical(levi).nilradical_roots {
        acc = &acc * &(CycValue::one() - e.evaluate_root(rd, &r)?);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{parse_big, q};
    use crate::weyl::WeylGroup;
    use num_bigint::BigInt;
    use num_rational::BigRational;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn rd(t: CartanType, n: usize) -> RootDatum {
        RootDatum::new(t, n).unwrap()
    }

    fn big(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn torus_levi_has_single_weight() {
        let r = rd(CartanType::C, 2);
        let beta = Weight::fundamental_int(&[3, -5]);
        let m = weight_multiplicities(&r, Subset::EMPTY, &beta).unwrap();
        assert_eq!(m.len(), 1);
        assert_eq!(m[&r.to_root_basis(&beta)], 1);
    }

    /// sl2 module with highest weight n: weights n, n-2, ..., -n, each once.
    #[test]
    fn sl2_multiplicities_match_explicit_module() {
        let r = rd(CartanType::A, 1);
        for n in 0..8i64 {
            let m = weight_multiplicities(&r, Subset::full(1), &Weight::fundamental_int(&[n])).unwrap();
            let expected: Multiplicities = (0..=n)
                .map(|k| (r.to_root_basis(&Weight::fundamental_int(&[n - 2 * k])), 1))
                .collect();
            assert_eq!(*m, expected);
        }
    }

    #[test]
    fn a2_adjoint_has_double_zero_weight() {
        let r = rd(CartanType::A, 2);
        let m = weight_multiplicities(&r, Subset::full(2), &Weight::fundamental_int(&[1, 1])).unwrap();
        assert_eq!(m.values().sum::<u64>(), 8);
        assert_eq!(m[&Weight::zero(2)], 2);
        assert_eq!(m.values().filter(|&&v| v == 1).count(), 6);
    }

    #[test]
    fn g2_seven_dimensional() {
        let r = rd(CartanType::G, 2);
        let mut found = false;
        for f in [[1, 0], [0, 1]] {
            let beta = Weight::fundamental_int(&f);
            if weyl_dimension(&r, Subset::full(2), &beta).unwrap() == 7 {
                let m = weight_multiplicities(&r, Subset::full(2), &beta).unwrap();
                assert_eq!(m[&Weight::zero(2)], 1);
                assert_eq!(m.values().sum::<u64>(), 7);
                found = true;
            }
        }
        assert!(found);
    }

    #[test]
    fn dimension_matches_total_multiplicity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for (t, n) in [(CartanType::A, 2), (CartanType::C, 2), (CartanType::B, 2), (CartanType::G, 2), (CartanType::A, 3)] {
            let r = rd(t, n);
            let full = Subset::full(n);
            for _ in 0..20 {
                let f: Vec<i64> = (0..n).map(|_| rng.gen_range(0..3)).collect();
                let beta = Weight::fundamental_int(&f);
                let m = weight_multiplicities(&r, full, &beta).unwrap();
                let dim = weyl_dimension(&r, full, &beta).unwrap();
                assert_eq!(m.values().sum::<u64>(), dim, "{t}{n} {f:?}");
                assert_eq!(m[&r.to_root_basis(&beta)], 1);
                assert_eq!(
                    character_value(&r, full, &beta, &ToralElement::identity(n)).unwrap(),
                    CycValue::from_int(dim as i64)
                );
            }
        }
    }

    #[test]
    fn support_is_levi_weyl_invariant() {
        let r = rd(CartanType::C, 2);
        let beta = Weight::fundamental_int(&[2, 1]);
        let m = weight_multiplicities(&r, Subset::full(2), &beta).unwrap();
        for (mu, &k) in m.iter() {
            for i in 0..2 {
                assert_eq!(m.get(&r.simple_reflection(i, mu)), Some(&k));
            }
        }
    }

    #[test]
    fn rejects_non_dominant() {
        let r = rd(CartanType::A, 2);
        assert!(matches!(
            weight_multiplicities(&r, Subset::full(2), &Weight::fundamental_int(&[-1, 0])),
            Err(Error::NotDominant(_))
        ));
        // only the Levi directions matter
        assert!(weight_multiplicities(&r, Subset::from_indices([1]), &Weight::fundamental_int(&[-1, 0])).is_ok());
    }

    #[test]
    fn character_examples() {
        let r = rd(CartanType::A, 1);
        let beta = Weight::fundamental_int(&[2]);
        let e = ToralElement::new(vec![big(1)], vec![q(1, 4)]).unwrap();
        assert_eq!(character_value(&r, Subset::full(1), &beta, &e).unwrap(), CycValue::from_int(-1));
        assert_eq!(
            character_value(&r, Subset::EMPTY, &beta, &e).unwrap(),
            e.evaluate(&r, &beta).unwrap()
        );
    }

    #[test]
    fn levi_weyl_invariance_of_characters() {
        let r = rd(CartanType::A, 2);
        let g = WeylGroup::new(r.clone()).unwrap();
        let e = ToralElement::new(vec![parse_big("2/3").unwrap(), big(5)], vec![q(1, 5), q(2, 3)]).unwrap();
        let beta = Weight::fundamental_int(&[1, 2]);
        let base = character_value(&r, Subset::full(2), &beta, &e).unwrap();
        for w in g.elements() {
            let we = e.weyl_act(&r, w).unwrap();
            assert_eq!(character_value(&r, Subset::full(2), &beta, &we).unwrap(), base);
        }
    }

    #[test]
    fn det_factor_examples_and_exterior_expansion() {
        let r = rd(CartanType::A, 1);
        let e = ToralElement::new(vec![big(2)], vec![Q::zero()]).unwrap();
        assert_eq!(nilradical_det_factor(&r, Subset::EMPTY, &e).unwrap(), CycValue::from_int(-3));
        assert_eq!(nilradical_det_factor(&r, Subset::full(1), &e).unwrap(), CycValue::one());
        assert!(nilradical_det_factor(&r, Subset::EMPTY, &ToralElement::identity(1)).unwrap().is_zero());

        // alternating trace of e^{-1} on the exterior powers of n_P^*
        let r = rd(CartanType::C, 2);
        let e = ToralElement::new(vec![parse_big("3/2").unwrap(), big(2)], vec![q(1, 3), q(1, 4)]).unwrap();
        let inv = e.inverse();
        for levi in Subset::full(2).subsets() {
            let roots = r.nilradical(levi).nilradical_roots;
            let mut alt = CycValue::zero();
            for s in Subset::full(roots.len()).subsets() {
                let mut wt = Weight::zero(2);
                for i in s.iter() {
                    wt = &wt - &r.root_weight(&roots[i]);
                }
                let term = inv.evaluate(&r, &wt).unwrap();
                alt += &if s.len() % 2 == 0 { term } else { -term };
            }
            assert_eq!(alt, nilradical_det_factor(&r, levi, &e).unwrap());
        }
    }

    /// Both orientations of the Euler factorisation on A1; only
    /// `sum (-1)^l Tr(e^{-1}; V_{w.lambda}) = Tr(e^{-1}; E) det(1 - Ad(e); n)` holds.
    #[test]
    fn euler_factorisation_orientation_frozen_on_a1() {
        let r = rd(CartanType::A, 1);
        let g = WeylGroup::new(r.clone()).unwrap();
        let reps = g.kostant_representatives(Subset::EMPTY).unwrap().representatives;
        let e = ToralElement::new(vec![parse_big("3/2").unwrap()], vec![q(1, 5)]).unwrap();
        let inv = e.inverse();
        let mut adopted_holds = true;
        let mut other_holds = true;
        for n in 0..5 {
            let lambda = Weight::fundamental_int(&[n]);
            let mut lhs = CycValue::zero();
            for w in &reps {
                let t = character_value(&r, Subset::EMPTY, &w.dot(&r, &lambda), &inv).unwrap();
                lhs += &if w.length() % 2 == 0 { t } else { -t };
            }
            let tr = character_value(&r, Subset::full(1), &lambda, &inv).unwrap();
            let adopted = &tr * &nilradical_det_factor(&r, Subset::EMPTY, &e).unwrap();
            let other = &tr * &nilradical_det_factor(&r, Subset::EMPTY, &inv).unwrap();
            adopted_holds &= lhs == adopted;
            other_holds &= lhs == other;
        }
        assert!(adopted_holds);
        assert!(!other_holds);
    }

    #[test]
    fn cache_reuses_tables() {
        let cache = MultiplicityCache::new();
        let r = rd(CartanType::A, 2);
        let beta = Weight::fundamental_int(&[1, 1]);
        let a = cache.get(&r, Subset::full(2), &beta).unwrap();
        let b = cache.get(&r, Subset::full(2), &r.to_root_basis(&beta)).unwrap();
        assert!(Arc::ptr_eq(&a, &b));
        assert_eq!(cache.len(), 1);
    }
}
