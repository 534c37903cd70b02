//! Split reduced root systems of types A, B, C, D and G, their weight
//! lattices and standard parabolic subsets.
//!
//! Conventions: `cartan[i][j] = <alpha_j, alpha_i^vee>`, so the fundamental
//! coordinates of a weight with root coordinates `c` are `cartan * c`.
//! Weights are stored canonically in the root basis.

use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::subset::Subset;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    G,
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CartanType::A => "A",
            CartanType::B => "B",
            CartanType::C => "C",
            CartanType::D => "D",
            CartanType::G => "G",
        };
        f.write_str(s)
    }
}

impl FromStr for CartanType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "A" | "a" => Ok(CartanType::A),
            "B" | "b" => Ok(CartanType::B),
            "C" | "c" => Ok(CartanType::C),
            "D" | "d" => Ok(CartanType::D),
            "G" | "g" => Ok(CartanType::G),
            other => Err(Error::InvalidInput(format!("unknown Cartan type '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Basis {
    Root,
    Fundamental,
}

/// A rational weight together with the basis its coordinates refer to.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight {
    pub coords: Vec<Q>,
    pub basis: Basis,
}

impl Weight {
    pub fn root(coords: Vec<Q>) -> Weight {
        Weight {
            coords,
            basis: Basis::Root,
        }
    }

    pub fn fundamental(coords: Vec<Q>) -> Weight {
        Weight {
            coords,
            basis: Basis::Fundamental,
        }
    }

    pub fn fundamental_int(coords: &[i64]) -> Weight {
        Weight::fundamental(coords.iter().map(|&c| qi(c)).collect())
    }

    pub fn root_int(coords: &[i64]) -> Weight {
        Weight::root(coords.iter().map(|&c| qi(c)).collect())
    }

    pub fn zero(rank: usize) -> Weight {
        Weight::root(vec![Q::zero(); rank])
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, k: Q) -> Weight {
        Weight {
            coords: self.coords.iter().map(|c| c * k).collect(),
            basis: self.basis,
        }
    }

    fn zip_with(&self, other: &Weight, f: impl Fn(Q, Q) -> Q) -> Weight {
        assert_eq!(self.basis, other.basis, "weights in different bases");
        assert_eq!(self.coords.len(), other.coords.len(), "rank mismatch");
        Weight {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| f(*a, *b))
                .collect(),
            basis: self.basis,
        }
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, rhs: &Weight) -> Weight {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-Q::one())
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = match self.basis {
            Basis::Root => "root",
            Basis::Fundamental => "fund",
        };
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "{tag}({})", parts.join(","))
    }
}

/// Standard parabolic `P_0(I)` attached to a Levi subset `I` of the simple roots.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicType {
    pub levi: Subset,
    /// `Delta_P`, the simple roots outside the Levi.
    pub delta_p: Subset,
    /// Roots of the nilradical, root-basis coordinates.
    pub nilradical_roots: Vec<Vec<i64>>,
    /// Positive roots of the Levi (supported on `levi`).
    pub levi_roots: Vec<Vec<i64>>,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    cartan_type: CartanType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    cartan_inv: Vec<Vec<Q>>,
    form: Vec<Vec<Q>>,
    positive_roots: Vec<Vec<i64>>,
    rho: Weight,
    fundamental_weights: Vec<Weight>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.cartan_type == other.cartan_type && self.rank == other.rank
    }
}

impl Eq for RootDatum {}

fn cartan_matrix(kind: CartanType, n: usize) -> Result<Vec<Vec<i64>>> {
    let invalid = |reason: &str| Error::InvalidRootDatum {
        kind: kind.to_string(),
        rank: n,
        reason: reason.to_string(),
    };
    let min = match kind {
        CartanType::A => 1,
        CartanType::B | CartanType::C => 2,
        CartanType::D => 3,
        CartanType::G => 2,
    };
    if n < min {
        return Err(invalid(&format!("rank must be at least {min}")));
    }
    if kind == CartanType::G && n != 2 {
        return Err(invalid("type G exists only in rank 2"));
    }
    if n > 16 {
        return Err(invalid("rank above 16 is not supported"));
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let chain = |a: &mut Vec<Vec<i64>>, upto: usize| {
        for i in 0..upto.saturating_sub(1) {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    };
    match kind {
        CartanType::A => chain(&mut a, n),
        CartanType::B => {
            chain(&mut a, n);
            // last root short
            a[n - 1][n - 2] = -2;
        }
        CartanType::C => {
            chain(&mut a, n);
            // last root long
            a[n - 2][n - 1] = -2;
        }
        CartanType::D => {
            chain(&mut a, n - 1);
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        CartanType::G => {
            a[0][1] = -3;
            a[1][0] = -1;
        }
    }
    Ok(a)
}

pub(crate) fn invert(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let p = a[col][col];
        for x in a[col].iter_mut() {
            *x /= p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                let pivot_row = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot_row) {
                    *x -= f * y;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

impl RootDatum {
    pub fn new(cartan_type: CartanType, rank: usize) -> Result<RootDatum> {
        let cartan = cartan_matrix(cartan_type, rank)?;
        let as_q: Vec<Vec<Q>> = cartan
            .iter()
            .map(|r| r.iter().map(|&x| qi(x)).collect())
            .collect();
        let cartan_inv = invert(&as_q).expect("Cartan matrices are invertible");

        // symmetrising factors d_i with d_i a_ij = d_j a_ji
        let mut d: Vec<Option<Q>> = vec![None; rank];
        d[0] = Some(Q::one());
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for j in 0..rank {
                if d[j].is_none() && cartan[i][j] != 0 {
                    d[j] = Some(d[i].unwrap() * qi(cartan[i][j]) / qi(cartan[j][i]));
                    queue.push_back(j);
                }
            }
        }
        let d: Vec<Q> = d.into_iter().map(|x| x.expect("connected diagram")).collect();
        let dmin = d.iter().copied().min().unwrap();
        let form: Vec<Vec<Q>> = (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| d[i] / dmin * qi(cartan[i][j]))
                    .collect()
            })
            .collect();

        let positive_roots = Self::close_roots(&cartan);
        let mut rho = vec![Q::zero(); rank];
        for r in &positive_roots {
            for (acc, &c) in rho.iter_mut().zip(r) {
                *acc += qi(c);
            }
        }
        let rho = Weight::root(rho.into_iter().map(|x| x / 2).collect());
        let fundamental_weights = (0..rank)
            .map(|j| Weight::root((0..rank).map(|i| cartan_inv[i][j]).collect()))
            .collect();

        Ok(RootDatum {
            cartan_type,
            rank,
            cartan,
            cartan_inv,
            form,
            positive_roots,
            rho,
            fundamental_weights,
        })
    }

    /// Orbit closure of the simple roots under simple reflections.
    fn close_roots(cartan: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = cartan.len();
        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue = VecDeque::new();
        for i in 0..n {
            let mut e = vec![0i64; n];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(beta) = queue.pop_front() {
            for i in 0..n {
                let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
                let mut image = beta.clone();
                image[i] -= pairing;
                if seen.insert(image.clone()) {
                    queue.push_back(image);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        pos.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        pos
    }

    pub fn cartan_type(&self) -> CartanType {
        self.cartan_type
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.cartan_type, self.rank)
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn all_simple(&self) -> Subset {
        Subset::full(self.rank)
    }

    /// Positive roots in root-basis coordinates, ordered by height then
    /// reverse-lexicographically (so simple roots come first, `alpha_1` leading).
    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive_roots
    }

    pub fn rho(&self) -> &Weight {
        &self.rho
    }

    pub fn fundamental_weights(&self) -> &[Weight] {
        &self.fundamental_weights
    }

    pub fn simple_root(&self, i: usize) -> Weight {
        let mut c = vec![Q::zero(); self.rank];
        c[i] = Q::one();
        Weight::root(c)
    }

    pub fn root_weight(&self, root: &[i64]) -> Weight {
        Weight::root(root.iter().map(|&c| qi(c)).collect())
    }

    /// Classical order of the Weyl group.
    pub fn weyl_group_order(&self) -> u128 {
        let n = self.rank as u128;
        let fact = |k: u128| (1..=k).product::<u128>();
        match self.cartan_type {
            CartanType::A => fact(n + 1),
            CartanType::B | CartanType::C => (1u128 << n) * fact(n),
            CartanType::D => (1u128 << (n - 1)) * fact(n),
            CartanType::G => 12,
        }
    }

    pub fn to_root_basis(&self, w: &Weight) -> Weight {
        self.convert_basis(w, Basis::Root)
    }

    /// Exact change of basis through the Cartan matrix.
    pub fn convert_basis(&self, w: &Weight, target: Basis) -> Weight {
        assert_eq!(w.coords.len(), self.rank, "weight rank mismatch");
        match (w.basis, target) {
            (a, b) if a == b => w.clone(),
            (Basis::Root, Basis::Fundamental) => Weight::fundamental(
                (0..self.rank)
                    .map(|i| {
                        (0..self.rank)
                            .map(|j| qi(self.cartan[i][j]) * w.coords[j])
                            .sum()
                    })
                    .collect(),
            ),
            (Basis::Fundamental, Basis::Root) => Weight::root(
                (0..self.rank)
                    .map(|i| {
                        (0..self.rank)
                            .map(|j| self.cartan_inv[i][j] * w.coords[j])
                            .sum()
                    })
                    .collect(),
            ),
            _ => unreachable!(),
        }
    }

    pub fn fundamental_coords(&self, w: &Weight) -> Vec<Q> {
        self.convert_basis(w, Basis::Fundamental).coords
    }

    /// `<lambda, alpha_i^vee>`.
    pub fn coroot_pairing(&self, w: &Weight, i: usize) -> Q {
        let w = self.to_root_basis(w);
        (0..self.rank)
            .map(|j| qi(self.cartan[i][j]) * w.coords[j])
            .sum()
    }

    /// Invariant form, normalised so that short roots have squared length 2.
    pub fn inner(&self, a: &Weight, b: &Weight) -> Q {
        let a = self.to_root_basis(a);
        let b = self.to_root_basis(b);
        let mut s = Q::zero();
        for i in 0..self.rank {
            if a.coords[i].is_zero() {
                continue;
            }
            for j in 0..self.rank {
                s += a.coords[i] * self.form[i][j] * b.coords[j];
            }
        }
        s
    }

    /// `<lambda, beta^vee>` for an arbitrary root `beta`.
    pub fn coroot_pairing_root(&self, w: &Weight, beta: &[i64]) -> Q {
        let b = self.root_weight(beta);
        qi(2) * self.inner(w, &b) / self.inner(&b, &b)
    }

    pub fn is_integral(&self, w: &Weight) -> bool {
        self.fundamental_coords(w).iter().all(|c| c.is_integer())
    }

    pub fn is_dominant(&self, w: &Weight) -> bool {
        self.fundamental_coords(w).iter().all(|c| !c.is_negative())
    }

    /// Dominant for the Levi `L_I`: nonnegative pairing with every `alpha_i^vee`, `i` in `levi`.
    pub fn is_levi_dominant(&self, w: &Weight, levi: Subset) -> bool {
        let f = self.fundamental_coords(w);
        levi.iter().all(|i| !f[i].is_negative())
    }

    pub fn simple_reflection(&self, i: usize, w: &Weight) -> Weight {
        let w = self.to_root_basis(w);
        let p = self.coroot_pairing(&w, i);
        let mut c = w.coords;
        c[i] -= p;
        Weight::root(c)
    }

    /// Integer matrix of `s_i` acting on root coordinates.
    pub fn simple_reflection_matrix(&self, i: usize) -> Vec<Vec<i64>> {
        let n = self.rank;
        let mut m: Vec<Vec<i64>> = (0..n)
            .map(|r| (0..n).map(|c| i64::from(r == c)).collect())
            .collect();
        for j in 0..n {
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        let neg: Vec<i64> = v.iter().map(|x| -x).collect();
        self.positive_roots.iter().any(|r| r == v || *r == neg)
    }

    pub fn positive_root_index(&self, v: &[i64]) -> Option<usize> {
        self.positive_roots.iter().position(|r| r == v)
    }

    /// Positive roots supported on `levi`.
    pub fn levi_roots(&self, levi: Subset) -> Vec<Vec<i64>> {
        self.positive_roots
            .iter()
            .filter(|r| r.iter().enumerate().all(|(i, &c)| c == 0 || levi.contains(i)))
            .cloned()
            .collect()
    }

    pub fn nilradical(&self, levi: Subset) -> ParabolicType {
        let full = self.all_simple();
        assert!(levi.is_subset(full), "levi subset outside the simple roots");
        let nilradical_roots = self
            .positive_roots
            .iter()
            .filter(|r| r.iter().enumerate().any(|(i, &c)| c != 0 && !levi.contains(i)))
            .cloned()
            .collect();
        ParabolicType {
            levi,
            delta_p: full.difference(levi),
            nilradical_roots,
            levi_roots: self.levi_roots(levi),
        }
    }

    /// Half-sum of the positive roots of the Levi.
    pub fn levi_rho(&self, levi: Subset) -> Weight {
        let mut acc = Weight::zero(self.rank);
        for r in self.levi_roots(levi) {
            acc = &acc + &self.root_weight(&r);
        }
        acc.scale(Q::new(1, 2))
    }

    pub fn check_subset(&self, s: Subset) -> Result<()> {
        if s.is_subset(self.all_simple()) {
            Ok(())
        } else {
            Err(Error::InvalidInput(format!(
                "subset {s} is not contained in the simple roots of {}",
                self.label()
            )))
        }
    }

    /// Convenience: the set of all roots (both signs).
    pub fn all_roots(&self) -> BTreeSet<Vec<i64>> {
        let mut s: BTreeSet<Vec<i64>> = self.positive_roots.iter().cloned().collect();
        s.extend(
            self.positive_roots
                .iter()
                .map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()),
        );
        s
    }

    /// Highest root (the unique positive root of maximal height).
    pub fn highest_root(&self) -> Vec<i64> {
        self.positive_roots.last().cloned().unwrap()
    }
}
