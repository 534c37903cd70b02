//! Reduced binary quadratic forms and conjugacy classes of integral 2x2
//! matrices with fixed trace and determinant.
//!
//! A matrix `(a b; c d)` corresponds to the form `c x^2 + (d-a) xy - b y^2`
//! of discriminant `t^2 - 4 det`. The two counts below are computed by
//! unrelated means and compared.

use std::fmt;

use num_integer::Roots;
use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadraticFormClass {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadraticFormClass {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_reduced(&self) -> bool {
        let QuadraticFormClass { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn is_primitive(&self) -> bool {
        num_integer::gcd(num_integer::gcd(self.a, self.b), self.c) == 1
    }
}

impl fmt::Display for QuadraticFormClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// All reduced positive definite forms of discriminant `d`, primitive or not,
/// sorted by `(a, b, c)`.
pub fn reduced_forms(d: i64) -> Result<Vec<QuadraticFormClass>> {
    if d >= 0 || d.rem_euclid(4) > 1 {
        return Err(Error::InvalidInput(format!(
            "discriminant {d} must be negative and congruent to 0 or 1 mod 4"
        )));
    }
    let mut out = Vec::new();
    // a <= sqrt(|d|/3) for reduced forms
    let amax = (-d / 3).sqrt() + 1;
    for a in 1..=amax {
        for b in -a..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadraticFormClass { a, b, c: num / (4 * a) };
            if f.is_reduced() {
                out.push(f);
            }
        }
    }
    out.sort();
    Ok(out)
}

type M2 = [[i64; 2]; 2];

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|k| k * k <= p).all(|k| p % k != 0)
}

/// Matrices with trace `t`, determinant `p` and all entries in `[-bound, bound]`.
fn matrices(t: i64, p: i64, bound: i64) -> Vec<M2> {
    let mut out = Vec::new();
    for a in -bound..=bound {
        let d = t - a;
        if d.abs() > bound {
            continue;
        }
        let bc = a * d - p;
        if bc == 0 {
            // a rational eigenvalue; impossible for t^2 < 4p
            continue;
        }
        for b in (-bound..=bound).filter(|&b| b != 0 && bc % b == 0) {
            let c = bc / b;
            if c.abs() <= bound {
                out.push([[a, b], [c, d]]);
            }
        }
    }
    out
}

/// Whether `g m g^-1 = n` for some `g` in `GL_2(Z)`.
///
/// Any such `g` sends `e1` to some `u` and is then forced to be
/// `[u, n u] [e1, m e1]^-1`; `det g = f_n(u) / c_m` where `f_n` is the
/// definite form of `n`, so `u` ranges over a bounded ellipse.
fn conjugate(m: &M2, n: &M2) -> bool {
    let [[am, _], [cm, _]] = *m;
    let [[an, bn], [cn, dn]] = *n;
    let disc = (dn - an) * (dn - an) + 4 * bn * cn;
    debug_assert!(disc < 0);
    let f = |x: i64, y: i64| cn * x * x + (dn - an) * x * y - bn * y * y;
    // 4 cn f = (2 cn x + (dn-an) y)^2 + |disc| y^2 and |f| = |cm|
    let lim = 4 * (cn * cm).abs();
    let ymax = (lim / -disc).sqrt() + 1;
    for y in -ymax..=ymax {
        let s = lim.sqrt() + 1;
        let lo = (-s - (dn - an) * y).div_euclid(2 * cn.abs()) - 1;
        let hi = (s - (dn - an) * y).div_euclid(2 * cn.abs()) + 1;
        for x in lo.min(-hi)..=hi.max(-lo) {
            if f(x, y).abs() != cm.abs() {
                continue;
            }
            // second column (n - am) u / cm must be integral
            let v0 = (an - am) * x + bn * y;
            let v1 = cn * x + (dn - am) * y;
            if v0 % cm == 0 && v1 % cm == 0 {
                return true;
            }
        }
    }
    false
}

fn count_classes(t: i64, p: i64, bound: i64) -> usize {
    let mut reps: Vec<M2> = Vec::new();
    for m in matrices(t, p, bound) {
        if !reps.iter().any(|r| conjugate(&m, r)) {
            reps.push(m);
        }
    }
    reps.len()
}

/// Number of `GL_2(Z)`-conjugacy classes of integral matrices with
/// determinant `p` and trace `t`, by exhaustive search. Cross-checked against
/// a search with twice the entry bound and against [`reduced_forms`].
pub fn count_elliptic_classes(p: u64, t: i64) -> Result<usize> {
    if !is_prime(p) {
        return Err(Error::InvalidInput(format!("{p} is not prime")));
    }
    let p = p as i64;
    let d = t * t - 4 * p;
    if d >= 0 {
        return Err(Error::InvalidInput(format!("t = {t} is not elliptic for p = {p} (need t^2 < 4p)")));
    }
    // every class contains the matrix of a reduced form, whose entries are at most this
    let bound = -d + t.abs() + 1;
    let n = count_classes(t, p, bound);
    let wide = count_classes(t, p, 2 * bound);
    if n != wide {
        return Err(Error::Resource(format!(
            "entry bound {bound} insufficient for p = {p}, t = {t}: {n} classes vs {wide} at {}",
            2 * bound
        )));
    }
    let forms = reduced_forms(d)?.len();
    if n != forms {
        return Err(Error::Resource(format!(
            "matrix search found {n} classes for p = {p}, t = {t} but there are {forms} reduced forms"
        )));
    }
    Ok(n)
}

/// Traces `t` with `t^2 < 4p`, ascending.
pub fn elliptic_traces(p: u64) -> Vec<i64> {
    let p = p as i64;
    (-(2 * p)..=2 * p).filter(|t| t * t < 4 * p).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn forms(d: i64) -> Vec<(i64, i64, i64)> {
        reduced_forms(d).unwrap().iter().map(|f| (f.a, f.b, f.c)).collect()
    }

    #[test]
    fn small_discriminants() {
        assert_eq!(forms(-3), vec![(1, 1, 1)]);
        assert_eq!(forms(-4), vec![(1, 0, 1)]);
        assert_eq!(forms(-7), vec![(1, 1, 2)]);
        assert_eq!(forms(-12), vec![(1, 0, 3), (2, 2, 2)]);
        assert_eq!(forms(-23), vec![(1, 1, 6), (2, -1, 3), (2, 1, 3)]);
        assert_eq!(forms(-20), vec![(1, 0, 5), (2, 2, 3)]);
    }

    #[test]
    fn invalid_discriminants_are_rejected() {
        for d in [0, 5, -1, -2, -5, -6] {
            assert!(reduced_forms(d).is_err(), "{d}");
        }
    }

    #[test]
    fn class_counts_for_small_primes() {
        assert_eq!(count_elliptic_classes(2, 0).unwrap(), 1);
        assert_eq!(count_elliptic_classes(2, 1).unwrap(), 1);
        assert_eq!(count_elliptic_classes(3, 2).unwrap(), 1);
        for t in elliptic_traces(2) {
            assert_eq!(count_elliptic_classes(2, t).unwrap(), 1);
        }
        assert_eq!(elliptic_traces(2), vec![-2, -1, 0, 1, 2]);
    }

    #[test]
    fn both_paths_agree_up_to_13() {
        for p in [2, 3, 5, 7, 11, 13] {
            for t in elliptic_traces(p) {
                count_elliptic_classes(p, t).unwrap();
            }
        }
    }

    #[test]
    fn bad_arguments() {
        assert!(count_elliptic_classes(4, 0).is_err());
        assert!(count_elliptic_classes(2, 3).is_err());
    }

    #[test]
    fn conjugacy_sees_orientation_flip() {
        let m = [[0, -2], [1, 0]];
        let n = [[0, 2], [-1, 0]];
        assert!(conjugate(&m, &n));
        assert!(!conjugate(&[[0, -6], [1, 0]], &[[0, -3], [2, 0]]));
    }

    proptest! {
        #[test]
        fn reduced_forms_have_the_discriminant(d in -400i64..0) {
            prop_assume!(d.rem_euclid(4) <= 1);
            for f in reduced_forms(d).unwrap() {
                prop_assert_eq!(f.discriminant(), d);
                prop_assert!(f.is_reduced());
            }
        }

        #[test]
        fn conjugating_by_unimodular_matrices_keeps_the_class(word in proptest::collection::vec(0usize..3, 0..8)) {
            let mul = |x: &M2, y: &M2| -> M2 {
                let mut z = [[0; 2]; 2];
                for i in 0..2 {
                    for j in 0..2 {
                        z[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
                    }
                }
                z
            };
            // generators of GL_2(Z) with their inverses
            let gens: [(M2, M2); 3] = [
                ([[0, -1], [1, 0]], [[0, 1], [-1, 0]]),
                ([[1, 1], [0, 1]], [[1, -1], [0, 1]]),
                ([[1, 0], [0, -1]], [[1, 0], [0, -1]]),
            ];
            let m = [[1, -3], [1, 1]];
            let mut n = m;
            for k in word {
                n = mul(&mul(&gens[k].0, &n), &gens[k].1);
            }
            prop_assert!(conjugate(&m, &n));
            prop_assert!(conjugate(&n, &m));
        }
    }
}
