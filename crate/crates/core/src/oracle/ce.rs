//! Brute-force Lie algebra cohomology `H^*(n_P, E)` from the
//! Chevalley-Eilenberg complex, independent of Kostant's theorem.
//!
//! Structure constants and module actions come from explicit matrix
//! realisations (`sl_{n+1}` and `sp_{2n}`), so nothing here reads the Weyl
//! group or the quadrant code. Torus weights are read off from commutators
//! with the coroot matrices.

use std::collections::BTreeMap;
use std::fmt;

use super::linalg::rank;
use crate::characters::weight_multiplicities;
use crate::error::{Error, Result};
use crate::rational::{qi, Q};
use crate::rootdata::{CartanType, RootDatum, Weight};
use crate::subset::Subset;
use crate::weyl::WeylGroup;

type Mat = Vec<Vec<i64>>;

fn zeros(n: usize) -> Mat {
    vec![vec![0; n]; n]
}

fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = zeros(n);
    m[i][j] = 1;
    m
}

fn add(a: &Mat, b: &Mat, s: i64) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, q)| r.iter().zip(q).map(|(x, y)| x + s * y).collect())
        .collect()
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![0; m]; n];
    for i in 0..n {
        for k in 0..b.len() {
            if a[i][k] == 0 {
                continue;
            }
            for j in 0..m {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

fn bracket(a: &Mat, b: &Mat) -> Mat {
    add(&mul(a, b), &mul(b, a), -1)
}

fn is_zero(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(|&x| x == 0))
}

/// `c` with `a = c b`, when `a` is a rational multiple of `b != 0`.
fn ratio(a: &Mat, b: &Mat) -> Option<Q> {
    let (i, j) = (0..b.len())
        .flat_map(|i| (0..b[i].len()).map(move |j| (i, j)))
        .find(|&(i, j)| b[i][j] != 0)?;
    let c = Q::new(a[i][j], b[i][j]);
    let ok = a
        .iter()
        .zip(b)
        .all(|(r, q)| r.iter().zip(q).all(|(x, y)| qi(*x) == c * qi(*y)));
    ok.then_some(c)
}

/// Coordinates of `m` in the span of `basis`, by exact elimination.
fn coordinates(basis: &[Mat], m: &Mat) -> Option<Vec<Q>> {
    let k = basis.len();
    let flat = |x: &Mat| -> Vec<Q> { x.iter().flatten().map(|&v| qi(v)).collect() };
    let cols: Vec<Vec<Q>> = basis.iter().map(flat).collect();
    let rhs = flat(m);
    let rows = rhs.len();
    let mut a: Vec<Vec<Q>> = (0..rows)
        .map(|r| {
            let mut row: Vec<Q> = cols.iter().map(|c| c[r]).collect();
            row.push(rhs[r]);
            row
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..k {
        let Some(p) = (r..rows).find(|&i| a[i][c] != Q::from_integer(0)) else {
            continue;
        };
        a.swap(r, p);
        let inv = Q::from_integer(1) / a[r][c];
        for x in a[r].iter_mut() {
            *x *= inv;
        }
        for i in 0..rows {
            if i != r && a[i][c] != Q::from_integer(0) {
                let f = a[i][c];
                for j in 0..=k {
                    let d = f * a[r][j];
                    a[i][j] -= d;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    if a[r..].iter().any(|row| row[k] != Q::from_integer(0)) {
        return None;
    }
    let mut out = vec![Q::from_integer(0); k];
    for (row, &c) in pivots.iter().enumerate() {
        out[c] = a[row][k];
    }
    Some(out)
}

/// Matrix realisation of a split simple Lie algebra: one matrix per root and
/// the coroot matrices `h_i = alpha_i^vee`.
#[derive(Clone, Debug)]
pub struct MatrixModel {
    pub size: usize,
    /// `(root in root coordinates, root vector)`.
    pub root_vectors: Vec<(Vec<i64>, Mat)>,
    pub coroots: Vec<Mat>,
}

impl MatrixModel {
    /// `sl_{n+1}` for type A and `sp_{2n}` for type C.
    pub fn for_root_datum(rd: &RootDatum) -> Result<MatrixModel> {
        let n = rd.rank();
        let (size, vectors, coroots) = match rd.cartan_type() {
            CartanType::A => {
                let size = n + 1;
                let vectors: Vec<Mat> = (0..size)
                    .flat_map(|i| (0..size).filter(move |&j| j != i).map(move |j| unit(size, i, j)))
                    .collect();
                let coroots = (0..n)
                    .map(|k| add(&unit(size, k, k), &unit(size, k + 1, k + 1), -1))
                    .collect();
                (size, vectors, coroots)
            }
            CartanType::C => {
                let size = 2 * n;
                let mut vectors = Vec::new();
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            vectors.push(add(&unit(size, i, j), &unit(size, n + j, n + i), -1));
                        }
                    }
                    for j in i..n {
                        if i == j {
                            vectors.push(unit(size, i, n + i));
                            vectors.push(unit(size, n + i, i));
                        } else {
                            vectors.push(add(&unit(size, i, n + j), &unit(size, j, n + i), 1));
                            vectors.push(add(&unit(size, n + i, j), &unit(size, n + j, i), 1));
                        }
                    }
                }
                let eps = |k: usize| add(&unit(size, k, k), &unit(size, n + k, n + k), -1);
                let coroots = (0..n)
                    .map(|k| if k + 1 < n { add(&eps(k), &eps(k + 1), -1) } else { eps(k) })
                    .collect();
                (size, vectors, coroots)
            }
            other => {
                return Err(Error::Unsupported(format!(
                    "no matrix model for type {other}{n} (types A and C only)"
                )))
            }
        };
        let mut model = MatrixModel {
            size,
            root_vectors: Vec::with_capacity(vectors.len()),
            coroots,
        };
        for x in vectors {
            let w = model.weight_of(rd, &x)?;
            let root: Vec<i64> = w
                .coords
                .iter()
                .map(|c| {
                    if c.is_integer() {
                        Ok(c.to_integer())
                    } else {
                        Err(Error::Unsupported("matrix model produced a non-root weight".into()))
                    }
                })
                .collect::<Result<_>>()?;
            model.root_vectors.push((root, x));
        }
        let found: std::collections::BTreeSet<Vec<i64>> =
            model.root_vectors.iter().map(|(r, _)| r.clone()).collect();
        if found != rd.all_roots() || found.len() != model.root_vectors.len() {
            return Err(Error::Unsupported(format!(
                "matrix model roots disagree with the root datum {}",
                rd.label()
            )));
        }
        Ok(model)
    }

    /// Torus weight (root basis) of an eigenvector of `ad h_i`.
    fn weight_of(&self, rd: &RootDatum, x: &Mat) -> Result<Weight> {
        let f = self
            .coroots
            .iter()
            .map(|h| {
                ratio(&bracket(h, x), x)
                    .ok_or_else(|| Error::Unsupported("matrix is not a weight vector".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(rd.to_root_basis(&Weight::fundamental(f)))
    }

    fn vector(&self, root: &[i64]) -> Option<&Mat> {
        self.root_vectors.iter().find(|(r, _)| r == root).map(|(_, m)| m)
    }
}

/// The nilradical `n_P` with its bracket in a root-vector basis.
#[derive(Clone, Debug)]
pub struct NilpotentLieModel {
    /// Root of each basis vector.
    pub roots: Vec<Vec<i64>>,
    matrices: Vec<Mat>,
    /// `[x_a, x_b] = n x_c` for `a < b`.
    structure: BTreeMap<(usize, usize), (usize, i64)>,
}

impl NilpotentLieModel {
    pub fn nilradical(rd: &RootDatum, model: &MatrixModel, levi: Subset) -> Result<NilpotentLieModel> {
        let roots = rd.nilradical(levi).nilradical_roots;
        let matrices: Vec<Mat> = roots
            .iter()
            .map(|r| model.vector(r).cloned().expect("model covers every root"))
            .collect();
        let mut structure = BTreeMap::new();
        for a in 0..roots.len() {
            for b in a + 1..roots.len() {
                let m = bracket(&matrices[a], &matrices[b]);
                if is_zero(&m) {
                    continue;
                }
                let sum: Vec<i64> = roots[a].iter().zip(&roots[b]).map(|(x, y)| x + y).collect();
                let c = roots.iter().position(|r| *r == sum).ok_or_else(|| {
                    Error::Unsupported("bracket leaves the nilradical".into())
                })?;
                let k = ratio(&m, &matrices[c])
                    .filter(|k| k.is_integer())
                    .ok_or_else(|| Error::Unsupported("non-integral structure constant".into()))?;
                structure.insert((a, b), (c, k.to_integer()));
            }
        }
        let out = NilpotentLieModel {
            roots,
            matrices,
            structure,
        };
        out.check_jacobi()?;
        Ok(out)
    }

    pub fn dim(&self) -> usize {
        self.roots.len()
    }

    /// `[x_a, x_b]` as `(c, n)` meaning `n x_c`.
    pub fn bracket(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        match a.cmp(&b) {
            std::cmp::Ordering::Less => self.structure.get(&(a, b)).copied(),
            std::cmp::Ordering::Greater => self.structure.get(&(b, a)).map(|&(c, n)| (c, -n)),
            std::cmp::Ordering::Equal => None,
        }
    }

    fn bracket_vec(&self, v: &BTreeMap<usize, i64>, b: usize) -> BTreeMap<usize, i64> {
        let mut out = BTreeMap::new();
        for (&a, &x) in v {
            if let Some((c, n)) = self.bracket(a, b) {
                *out.entry(c).or_insert(0) += x * n;
            }
        }
        out.retain(|_, v| *v != 0);
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        let single = |a: usize| BTreeMap::from([(a, 1i64)]);
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let mut total = BTreeMap::new();
                    for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
                        let inner = self.bracket_vec(&single(x), y);
                        for (k, v) in self.bracket_vec(&inner, z) {
                            *total.entry(k).or_insert(0) += v;
                        }
                    }
                    if total.values().any(|&v| v != 0) {
                        return Err(Error::NotARepresentation(format!(
                            "Jacobi identity fails on basis triple ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite-dimensional `n_P`-module with a weight basis.
#[derive(Clone, Debug)]
pub struct CoefficientModule {
    pub name: String,
    /// Root-basis weight of each basis vector.
    pub weights: Vec<Weight>,
    /// `action[a][i][j]`: coefficient of `v_i` in `x_a v_j`.
    pub action: Vec<Mat>,
}

impl CoefficientModule {
    pub fn dim(&self) -> usize {
        self.weights.len()
    }

    pub fn trivial(rd: &RootDatum, nil: &NilpotentLieModel) -> CoefficientModule {
        CoefficientModule {
            name: "trivial".into(),
            weights: vec![Weight::zero(rd.rank())],
            action: vec![zeros(1); nil.dim()],
        }
    }

    /// `(n+1)`-dimensional module of `sl_2` restricted to its nilradical: a
    /// single nilpotent Jordan block.
    pub fn sl2_irreducible(rd: &RootDatum, nil: &NilpotentLieModel, n: i64) -> Result<CoefficientModule> {
        if rd.cartan_type() != CartanType::A || rd.rank() != 1 {
            return Err(Error::Unsupported("Jordan-block module is for A1".into()));
        }
        let d = (n + 1) as usize;
        let weights = (0..=n)
            .map(|k| rd.to_root_basis(&Weight::fundamental_int(&[n - 2 * k])))
            .collect();
        let mut jordan = zeros(d);
        for k in 1..d {
            jordan[k - 1][k] = 1;
        }
        Ok(CoefficientModule {
            name: format!("V({n})"),
            weights,
            action: vec![jordan; nil.dim()],
        })
    }

    /// The defining representation of the matrix model.
    pub fn natural(rd: &RootDatum, model: &MatrixModel, nil: &NilpotentLieModel) -> CoefficientModule {
        let weights = (0..model.size)
            .map(|i| {
                let f = model.coroots.iter().map(|h| qi(h[i][i])).collect();
                rd.to_root_basis(&Weight::fundamental(f))
            })
            .collect();
        CoefficientModule {
            name: "natural".into(),
            weights,
            action: nil.matrices.clone(),
        }
    }

    /// The adjoint representation of the whole algebra restricted to `n_P`.
    pub fn adjoint(rd: &RootDatum, model: &MatrixModel, nil: &NilpotentLieModel) -> Result<CoefficientModule> {
        let mut basis: Vec<Mat> = model.root_vectors.iter().map(|(_, m)| m.clone()).collect();
        basis.extend(model.coroots.iter().cloned());
        let mut weights: Vec<Weight> = model.root_vectors.iter().map(|(r, _)| rd.root_weight(r)).collect();
        weights.extend((0..model.coroots.len()).map(|_| Weight::zero(rd.rank())));
        let d = basis.len();
        let mut action = Vec::with_capacity(nil.dim());
        for x in &nil.matrices {
            let mut m = zeros(d);
            for (j, b) in basis.iter().enumerate() {
                let c = coordinates(&basis, &bracket(x, b))
                    .ok_or_else(|| Error::Unsupported("adjoint action leaves the span".into()))?;
                for (i, v) in c.into_iter().enumerate() {
                    if !v.is_integer() {
                        return Err(Error::Unsupported("non-integral adjoint action".into()));
                    }
                    m[i][j] = v.to_integer();
                }
            }
            action.push(m);
        }
        Ok(CoefficientModule {
            name: "adjoint".into(),
            weights,
            action,
        })
    }

    /// Module with highest weight `lambda` (fundamental coordinates), for the
    /// cases the oracle knows how to build explicitly.
    pub fn for_highest_weight(
        rd: &RootDatum,
        model: &MatrixModel,
        nil: &NilpotentLieModel,
        lambda: &[i64],
    ) -> Result<CoefficientModule> {
        let f = |w: &Weight| -> Vec<i64> {
            rd.fundamental_coords(w).iter().map(|c| c.to_integer()).collect()
        };
        if lambda.iter().all(|&c| c == 0) {
            return Ok(Self::trivial(rd, nil));
        }
        if rd.cartan_type() == CartanType::A && rd.rank() == 1 {
            return Self::sl2_irreducible(rd, nil, lambda[0]);
        }
        if lambda == f(&rd.root_weight(&rd.highest_root())).as_slice() {
            return Self::adjoint(rd, model, nil);
        }
        if lambda == f(&rd.fundamental_weights()[0]).as_slice() {
            return Ok(Self::natural(rd, model, nil));
        }
        Err(Error::Unsupported(format!(
            "no explicit module with highest weight {lambda:?} (trivial, natural, adjoint and A1 only)"
        )))
    }

    /// Checks `rho([x_a, x_b]) = [rho(x_a), rho(x_b)]` and weight grading.
    pub fn check(&self, rd: &RootDatum, nil: &NilpotentLieModel) -> Result<()> {
        if self.action.len() != nil.dim() {
            return Err(Error::NotARepresentation(format!(
                "{} action matrices for a {}-dimensional algebra",
                self.action.len(),
                nil.dim()
            )));
        }
        for a in 0..nil.dim() {
            for b in 0..nil.dim() {
                let lhs = bracket(&self.action[a], &self.action[b]);
                let rhs = match nil.bracket(a, b) {
                    Some((c, n)) => add(&zeros(self.dim()), &self.action[c], n),
                    None => zeros(self.dim()),
                };
                if lhs != rhs {
                    return Err(Error::NotARepresentation(format!(
                        "module '{}' fails on the bracket of basis elements {a} and {b}",
                        self.name
                    )));
                }
            }
            let root = rd.root_weight(&nil.roots[a]);
            for (i, row) in self.action[a].iter().enumerate() {
                for (j, &x) in row.iter().enumerate() {
                    if x != 0 && self.weights[i] != &self.weights[j] + &root {
                        return Err(Error::NotARepresentation(format!(
                            "module '{}' is not weight graded at ({i},{j})",
                            self.name
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Dimension and torus-weight multiset of one cohomology degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: usize,
    pub dimension: usize,
    /// Root-basis weight to multiplicity.
    pub weights: BTreeMap<Weight, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedCohomologyReport {
    pub degrees: Vec<DegreeReport>,
}

impl GradedCohomologyReport {
    pub fn dimensions(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.dimension).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|d| if d.degree % 2 == 0 { d.dimension as i64 } else { -(d.dimension as i64) })
            .sum()
    }
}

fn subsets_of_size(n: usize, k: usize) -> Vec<u64> {
    (0u64..1 << n).filter(|m| m.count_ones() as usize == k).collect()
}

fn bits(mask: u64) -> Vec<usize> {
    (0..64).filter(|i| mask >> i & 1 == 1).collect()
}

/// `phi(x_{l_0} ^ ... ^ x_{l_k})` for the basis cochain `(s, i)` as a sign.
fn wedge_sign(list: &[usize], s: u64) -> i64 {
    let mut mask = 0u64;
    for &l in list {
        if mask >> l & 1 == 1 {
            return 0;
        }
        mask |= 1 << l;
    }
    if mask != s {
        return 0;
    }
    // parity of the permutation sorting `list`
    let mut inv = 0;
    for a in 0..list.len() {
        for b in a + 1..list.len() {
            if list[a] > list[b] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// `(d phi)(x_T)` component `m` for the basis cochain `phi = (s, i)`.
fn differential_entry(nil: &NilpotentLieModel, e: &CoefficientModule, s: u64, i: usize, t: u64, m: usize) -> i64 {
    let tl = bits(t);
    let mut acc = 0;
    for (j, &x) in tl.iter().enumerate() {
        let rest: Vec<usize> = tl.iter().copied().filter(|&y| y != x).collect();
        let sgn = wedge_sign(&rest, s);
        if sgn != 0 {
            let sj = if j % 2 == 0 { 1 } else { -1 };
            acc += sj * sgn * e.action[x][m][i];
        }
    }
    if m == i {
        for j in 0..tl.len() {
            for l in j + 1..tl.len() {
                let Some((c, n)) = nil.bracket(tl[j], tl[l]) else { continue };
                let mut list = vec![c];
                list.extend(tl.iter().copied().filter(|&y| y != tl[j] && y != tl[l]));
                let sgn = wedge_sign(&list, s);
                if sgn != 0 {
                    let sjl = if (j + l) % 2 == 0 { 1 } else { -1 };
                    acc += sjl * n * sgn;
                }
            }
        }
    }
    acc
}

type Block = BTreeMap<Weight, Vec<(u64, usize)>>;

fn cochain_blocks(nil: &NilpotentLieModel, e: &CoefficientModule, rd: &RootDatum, k: usize) -> Block {
    let mut blocks: Block = BTreeMap::new();
    for s in subsets_of_size(nil.dim(), k) {
        let mut shift = Weight::zero(rd.rank());
        for a in bits(s) {
            shift = &shift - &rd.root_weight(&nil.roots[a]);
        }
        for (i, w) in e.weights.iter().enumerate() {
            blocks.entry(w + &shift).or_default().push((s, i));
        }
    }
    blocks
}

fn differential_rank(
    nil: &NilpotentLieModel,
    e: &CoefficientModule,
    from: &[(u64, usize)],
    to: &[(u64, usize)],
) -> usize {
    let rows: Vec<Vec<i64>> = to
        .iter()
        .map(|&(t, m)| from.iter().map(|&(s, i)| differential_entry(nil, e, s, i, t, m)).collect())
        .collect();
    rank(&rows)
}

/// Cohomology of `Hom(wedge^* n_P, E)` degree by degree, blocked by torus weight.
pub fn ce_cohomology(rd: &RootDatum, nil: &NilpotentLieModel, e: &CoefficientModule) -> Result<GradedCohomologyReport> {
    e.check(rd, nil)?;
    let n = nil.dim();
    let blocks: Vec<Block> = (0..=n).map(|k| cochain_blocks(nil, e, rd, k)).collect();
    // rank of d^k restricted to weight mu, k = 0..n-1
    let mut ranks: Vec<BTreeMap<Weight, usize>> = Vec::with_capacity(n);
    for k in 0..n {
        let mut r = BTreeMap::new();
        for (mu, from) in &blocks[k] {
            let to = blocks[k + 1].get(mu).map(Vec::as_slice).unwrap_or(&[]);
            r.insert(mu.clone(), differential_rank(nil, e, from, to));
        }
        ranks.push(r);
    }
    let mut degrees = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut weights = BTreeMap::new();
        for (mu, basis) in &blocks[k] {
            let out = if k < n { ranks[k].get(mu).copied().unwrap_or(0) } else { 0 };
            let inc = if k > 0 { ranks[k - 1].get(mu).copied().unwrap_or(0) } else { 0 };
            let h = basis.len() - out - inc;
            if h > 0 {
                weights.insert(mu.clone(), h);
            }
        }
        degrees.push(DegreeReport {
            degree: k,
            dimension: weights.values().sum(),
            weights,
        });
    }
    Ok(GradedCohomologyReport { degrees })
}

/// Outcome of comparing a cohomology report with Kostant's prediction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Comparison {
    pub matches: bool,
    pub dimensions: Vec<usize>,
    /// First disagreement, naming the degree.
    pub diff: Option<String>,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.dimensions.iter().map(|d| d.to_string()).collect();
        if self.matches {
            write!(f, "MATCH ({})", dims.join(","))
        } else {
            write!(f, "MISMATCH: {}", self.diff.as_deref().unwrap_or("unknown"))
        }
    }
}

/// Kostant's prediction: per degree, the weights of `V^L_{w.lambda}` over `l(w) = k`.
pub fn kostant_prediction(group: &WeylGroup, levi: Subset, lambda: &Weight) -> Result<Vec<BTreeMap<Weight, usize>>> {
    let rd = group.root_datum();
    let n = rd.nilradical(levi).nilradical_roots.len();
    let mut out = vec![BTreeMap::new(); n + 1];
    for w in group.kostant_representatives(levi)?.representatives {
        for (mu, &m) in weight_multiplicities(rd, levi, &w.dot(rd, lambda))?.iter() {
            *out[w.length()].entry(mu.clone()).or_insert(0) += m as usize;
        }
    }
    Ok(out)
}

pub fn compare_with_kostant(
    group: &WeylGroup,
    levi: Subset,
    lambda: &Weight,
    report: &GradedCohomologyReport,
) -> Result<Comparison> {
    let predicted = kostant_prediction(group, levi, lambda)?;
    let dims = report.dimensions();
    let top = predicted.len().max(report.degrees.len());
    for k in 0..top {
        let empty = BTreeMap::new();
        let p = predicted.get(k).unwrap_or(&empty);
        let c = report.degrees.get(k).map(|d| &d.weights).unwrap_or(&empty);
        let pd: usize = p.values().sum();
        let cd: usize = c.values().sum();
        let diff = if pd != cd {
            Some(format!("degree {k}: dimension {cd} (cochains) vs {pd} (Kostant)"))
        } else {
            p.keys()
                .chain(c.keys())
                .find(|mu| p.get(*mu) != c.get(*mu))
                .map(|mu| {
                    format!(
                        "degree {k}: weight {mu} has multiplicity {} (cochains) vs {} (Kostant)",
                        c.get(mu).copied().unwrap_or(0),
                        p.get(mu).copied().unwrap_or(0)
                    )
                })
        };
        if diff.is_some() {
            return Ok(Comparison {
                matches: false,
                dimensions: dims,
                diff,
            });
        }
    }
    Ok(Comparison {
        matches: true,
        dimensions: dims,
        diff: None,
    })
}

/// Builds the model and module for `(rd, levi, lambda)` and runs both sides.
pub fn run_ce_check(group: &WeylGroup, levi: Subset, lambda: &[i64]) -> Result<(GradedCohomologyReport, Comparison)> {
    let rd = group.root_datum();
    rd.check_subset(levi)?;
    let model = MatrixModel::for_root_datum(rd)?;
    let nil = NilpotentLieModel::nilradical(rd, &model, levi)?;
    let e = CoefficientModule::for_highest_weight(rd, &model, &nil, lambda)?;
    let report = ce_cohomology(rd, &nil, &e)?;
    let cmp = compare_with_kostant(group, levi, &Weight::fundamental_int(lambda), &report)?;
    Ok((report, cmp))
}
