//! Weyl groups as sets of integer matrices acting on root coordinates.
//!
//! Elements are canonicalised by their action matrix; the reduced word kept
//! alongside is the lexicographically smallest one. Every enumeration is
//! ordered by (length, word).

use std::collections::{HashMap, VecDeque};
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootdata::{RootDatum, Weight};
use crate::subset::Subset;

/// Default cap on the number of group elements generated.
pub const DEFAULT_GROUP_ORDER_CAP: usize = 1_000_000;

/// Environment variable overriding [`DEFAULT_GROUP_ORDER_CAP`].
pub const GROUP_ORDER_CAP_ENV: &str = "TFF_GROUP_ORDER_CAP";

pub fn group_order_cap() -> usize {
    std::env::var(GROUP_ORDER_CAP_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_GROUP_ORDER_CAP)
}

type Matrix = Vec<Vec<i64>>;

fn mat_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WeylElement {
    /// Action on root-basis coordinates: `w(c) = matrix * c`.
    matrix: Matrix,
    inverse: Matrix,
    word: Vec<usize>,
    length: usize,
}

impl WeylElement {
    pub fn identity(rank: usize) -> WeylElement {
        WeylElement {
            matrix: identity(rank),
            inverse: identity(rank),
            word: Vec::new(),
            length: 0,
        }
    }

    /// Builds the element `s_{w[0]} s_{w[1]} ...` (not necessarily reduced).
    pub fn from_word(rd: &RootDatum, word: &[usize]) -> WeylElement {
        let n = rd.rank();
        let mut m = identity(n);
        let mut inv = identity(n);
        for &i in word {
            let s = rd.simple_reflection_matrix(i);
            m = mat_mul(&m, &s);
            inv = mat_mul(&s, &inv);
        }
        let mut w = WeylElement {
            matrix: m,
            inverse: inv,
            word: Vec::new(),
            length: 0,
        };
        w.length = w.inversion_count(rd);
        w.word = w.reduced_word(rd);
        w
    }

    pub fn matrix(&self) -> &[Vec<i64>] {
        &self.matrix
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_identity(&self) -> bool {
        self.length == 0
    }

    pub fn apply_root(&self, v: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply_inverse_root(&self, v: &[i64]) -> Vec<i64> {
        self.inverse
            .iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn apply(&self, rd: &RootDatum, w: &Weight) -> Weight {
        let c = rd.to_root_basis(w).coords;
        Weight::root(
            self.matrix
                .iter()
                .map(|row| row.iter().zip(&c).map(|(&a, b)| qi(a) * b).sum())
                .collect(),
        )
    }

    pub fn apply_inverse(&self, rd: &RootDatum, w: &Weight) -> Weight {
        let c = rd.to_root_basis(w).coords;
        Weight::root(
            self.inverse
                .iter()
                .map(|row| row.iter().zip(&c).map(|(&a, b)| qi(a) * b).sum())
                .collect(),
        )
    }

    pub fn inverse(&self, rd: &RootDatum) -> WeylElement {
        let mut w = WeylElement {
            matrix: self.inverse.clone(),
            inverse: self.matrix.clone(),
            word: Vec::new(),
            length: self.length,
        };
        w.word = w.reduced_word(rd);
        w
    }

    pub fn compose(&self, rd: &RootDatum, other: &WeylElement) -> WeylElement {
        let mut w = WeylElement {
            matrix: mat_mul(&self.matrix, &other.matrix),
            inverse: mat_mul(&other.inverse, &self.inverse),
            word: Vec::new(),
            length: 0,
        };
        w.length = w.inversion_count(rd);
        w.word = w.reduced_word(rd);
        w
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversion_count(&self, rd: &RootDatum) -> usize {
        rd.positive_roots()
            .iter()
            .filter(|r| self.apply_root(r).iter().any(|&c| c < 0))
            .count()
    }

    /// `s_i` is a left descent iff `w^{-1}(alpha_i) < 0`.
    pub fn has_left_descent(&self, i: usize) -> bool {
        self.inverse.iter().any(|row| row[i] < 0)
    }

    /// Lexicographically smallest reduced word, by peeling the smallest left descent.
    fn reduced_word(&self, rd: &RootDatum) -> Vec<usize> {
        let mut word = Vec::new();
        let mut cur = self.matrix.clone();
        let mut cur_inv = self.inverse.clone();
        loop {
            let Some(i) = (0..rd.rank()).find(|&i| cur_inv.iter().any(|row| row[i] < 0)) else {
                break;
            };
            word.push(i);
            let s = rd.simple_reflection_matrix(i);
            cur = mat_mul(&s, &cur);
            cur_inv = mat_mul(&cur_inv, &s);
        }
        debug_assert_eq!(cur, identity(rd.rank()));
        word
    }

    /// `w(lambda + rho) - rho`.
    pub fn dot(&self, rd: &RootDatum, lambda: &Weight) -> Weight {
        let shifted = &rd.to_root_basis(lambda) + rd.rho();
        &self.apply(rd, &shifted) - rd.rho()
    }

    pub fn word_string(&self) -> String {
        if self.word.is_empty() {
            "e".to_string()
        } else {
            self.word.iter().map(|i| format!("s{}", i + 1)).collect()
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.word_string())
    }
}

fn sort_elements(elements: &mut [WeylElement]) {
    elements.sort_by(|a, b| a.length.cmp(&b.length).then_with(|| a.word.cmp(&b.word)));
}

/// The subgroup generated by the simple reflections in `gens`, by BFS closure.
pub fn generate_subgroup(rd: &RootDatum, gens: Subset, cap: usize) -> Result<Vec<WeylElement>> {
    let n = rd.rank();
    let reflections: Vec<(usize, Matrix)> = gens
        .iter()
        .map(|i| (i, rd.simple_reflection_matrix(i)))
        .collect();
    let mut index: HashMap<Matrix, usize> = HashMap::new();
    let mut elements: Vec<(Matrix, Matrix)> = vec![(identity(n), identity(n))];
    index.insert(identity(n), 0);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for (_, s) in &reflections {
            let m = mat_mul(s, &elements[k].0);
            if index.contains_key(&m) {
                continue;
            }
            if elements.len() >= cap {
                return Err(Error::GroupOrderCap {
                    order: elements.len() as u128 + 1,
                    cap,
                });
            }
            let inv = mat_mul(&elements[k].1, s);
            index.insert(m.clone(), elements.len());
            elements.push((m, inv));
            queue.push_back(elements.len() - 1);
        }
    }
    let mut out: Vec<WeylElement> = elements
        .into_iter()
        .map(|(matrix, inverse)| {
            let mut w = WeylElement {
                matrix,
                inverse,
                word: Vec::new(),
                length: 0,
            };
            w.length = w.inversion_count(rd);
            w.word = w.reduced_word(rd);
            w
        })
        .collect();
    sort_elements(&mut out);
    Ok(out)
}

/// All of `W_G`, ordered by (length, word). Fails loudly when the classical
/// order exceeds `cap`.
pub fn generate_weyl_group(rd: &RootDatum, cap: usize) -> Result<Vec<WeylElement>> {
    let order = rd.weyl_group_order();
    if order > cap as u128 {
        return Err(Error::GroupOrderCap { order, cap });
    }
    generate_subgroup(rd, rd.all_simple(), cap)
}

/// A root datum together with its generated Weyl group.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    rd: RootDatum,
    elements: Vec<WeylElement>,
}

impl WeylGroup {
    pub fn new(rd: RootDatum) -> Result<WeylGroup> {
        Self::with_cap(rd, group_order_cap())
    }

    pub fn with_cap(rd: RootDatum, cap: usize) -> Result<WeylGroup> {
        let elements = generate_weyl_group(&rd, cap)?;
        Ok(WeylGroup { rd, elements })
    }

    pub fn root_datum(&self) -> &RootDatum {
        &self.rd
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn longest(&self) -> &WeylElement {
        self.elements.last().expect("group is nonempty")
    }

    /// Kostant representatives `W^1_P`: the minimal-length element of each
    /// coset `W_I w`, characterised by `w^{-1}(alpha_i) > 0` for `i` in `levi`.
    pub fn kostant_representatives(&self, levi: Subset) -> Result<KostantSet> {
        self.rd.check_subset(levi)?;
        let representatives = self
            .elements
            .iter()
            .filter(|w| levi.iter().all(|i| !w.has_left_descent(i)))
            .cloned()
            .collect();
        Ok(KostantSet {
            levi,
            representatives,
        })
    }
}

#[derive(Clone, Debug)]
pub struct KostantSet {
    pub levi: Subset,
    pub representatives: Vec<WeylElement>,
}

/// `w(lambda + rho) - rho`, in the root basis.
pub fn dot_action(rd: &RootDatum, w: &WeylElement, lambda: &Weight) -> Weight {
    w.dot(rd, lambda)
}

/// Whether the longest element of `W_I` acts as `-1` on the span of `I`.
pub fn has_minus_one(rd: &RootDatum, levi: Subset) -> Result<bool> {
    rd.check_subset(levi)?;
    if levi.is_empty() {
        return Ok(true);
    }
    let sub = generate_subgroup(rd, levi, group_order_cap())?;
    let longest = sub.last().expect("nonempty subgroup");
    Ok(levi.iter().all(|i| {
        let img = longest.apply_root(&{
            let mut e = vec![0i64; rd.rank()];
            e[i] = 1;
            e
        });
        img.iter()
            .enumerate()
            .all(|(j, &c)| if j == i { c == -1 } else { c == 0 })
    }))
}

/// Checks the Kostant dominance `<w(lambda+rho)-rho, alpha^vee> >= 0` for `alpha` in `levi`.
pub fn is_kostant_dominant(rd: &RootDatum, levi: Subset, weight: &Weight) -> bool {
    levi.iter().all(|i| rd.coroot_pairing(weight, i) >= Q::zero())
}
