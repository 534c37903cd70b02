//! Exact values in `Q(zeta_infinity)`: finite sums `sum c_q e(q)` with
//! `e(q) = exp(2 pi i q)`, rational `c_q` and phases `q` in `[0, 1)`.
//!
//! Arithmetic stays in this group-algebra form. Reduction modulo the
//! cyclotomic polynomial happens only for equality tests and rendering.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::rational::Q;

/// Reduces a phase into `[0, 1)`.
pub fn normalize_phase(q: Q) -> Q {
    q - q.floor()
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Vec<i64>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<i64>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Integer coefficients of the `n`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(n: u64) -> Vec<i64> {
    assert!(n >= 1);
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&n) {
        return p.clone();
    }
    // x^n - 1 divided by every Phi_d with d | n, d < n
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n % d == 0) {
        let div = cyclotomic_polynomial(d);
        num = exact_div_monic(&num, &div);
    }
    cyclotomic_cache().lock().unwrap().insert(n, num.clone());
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut quo = vec![0i64; num.len() - dn];
    for k in (0..quo.len()).rev() {
        let c = rem[k + dn];
        quo[k] = c;
        for (i, &d) in den.iter().enumerate() {
            rem[k + i] -= c * d;
        }
    }
    debug_assert!(rem.iter().all(|&x| x == 0));
    quo
}

#[derive(Clone, Debug, Default)]
pub struct CycValue {
    terms: BTreeMap<Q, BigRational>,
}

impl CycValue {
    pub fn zero() -> CycValue {
        CycValue::default()
    }

    pub fn one() -> CycValue {
        CycValue::from_rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> CycValue {
        CycValue::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_rational(c: BigRational) -> CycValue {
        CycValue::monomial(c, Q::zero())
    }

    /// `c * e(phase)`.
    pub fn monomial(c: BigRational, phase: Q) -> CycValue {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(normalize_phase(phase), c);
        }
        CycValue { terms }
    }

    pub fn root_of_unity(phase: Q) -> CycValue {
        CycValue::monomial(BigRational::one(), phase)
    }

    /// Raw group-algebra terms `(phase, coefficient)`; not canonical.
    pub fn raw_terms(&self) -> impl Iterator<Item = (&Q, &BigRational)> {
        self.terms.iter()
    }

    fn add_term(&mut self, phase: Q, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let phase = normalize_phase(phase);
        let entry = self.terms.entry(phase).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&phase);
        }
    }

    pub fn scale(&self, k: &BigRational) -> CycValue {
        if k.is_zero() {
            return CycValue::zero();
        }
        CycValue {
            terms: self.terms.iter().map(|(p, c)| (*p, c * k)).collect(),
        }
    }

    pub fn scale_int(&self, k: i64) -> CycValue {
        self.scale(&BigRational::from_integer(BigInt::from(k)))
    }

    /// Inverse of a unit monomial `c e(q)`; `None` for anything else.
    pub fn inv_monomial(&self) -> Option<CycValue> {
        if self.terms.len() != 1 {
            return None;
        }
        let (p, c) = self.terms.iter().next().unwrap();
        Some(CycValue::monomial(c.recip(), -*p))
    }

    /// Least common denominator of the phases carrying nonzero coefficients.
    pub fn conductor(&self) -> u64 {
        self.terms
            .keys()
            .fold(1u64, |acc, p| acc.lcm(&(*p.denom() as u64)))
    }

    /// Canonical form: the remainder modulo `Phi_n`, recomputed until the
    /// conductor stops shrinking.
    pub fn reduced(&self) -> CycValue {
        let mut cur = self.clone();
        loop {
            let n = cur.conductor();
            if n <= 2 {
                // Phi_1 and Phi_2 are linear; e(1/2) = -1.
                let mut out = CycValue::zero();
                for (p, c) in &cur.terms {
                    let sign = if p.is_zero() { c.clone() } else { -c.clone() };
                    out.add_term(Q::zero(), sign);
                }
                return out;
            }
            let phi = cyclotomic_polynomial(n);
            let deg = phi.len() - 1;
            let mut poly = vec![BigRational::zero(); n as usize];
            for (p, c) in &cur.terms {
                let k = (p * Q::from_integer(n as i64)).to_integer() as usize;
                poly[k] += c;
            }
            for k in (deg..n as usize).rev() {
                if poly[k].is_zero() {
                    continue;
                }
                let c = poly[k].clone();
                let shift = k - deg;
                for (i, &d) in phi.iter().enumerate() {
                    if d != 0 {
                        poly[shift + i] -= &c * BigRational::from_integer(BigInt::from(d));
                    }
                }
            }
            let mut next = CycValue::zero();
            for (k, c) in poly.into_iter().enumerate().take(deg) {
                next.add_term(Q::new(k as i64, n as i64), c);
            }
            if next.conductor() == n {
                return next;
            }
            cur = next;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty() || self.reduced().terms.is_empty()
    }

    /// The value as a rational number, if it is one.
    pub fn as_rational(&self) -> Option<BigRational> {
        let r = self.reduced();
        match r.terms.len() {
            0 => Some(BigRational::zero()),
            1 => r.terms.get(&Q::zero()).cloned(),
            _ => None,
        }
    }

    pub fn to_complex(&self) -> Complex64 {
        self.terms.iter().fold(Complex64::new(0.0, 0.0), |acc, (p, c)| {
            let angle = 2.0 * std::f64::consts::PI * p.to_f64().unwrap();
            let mag = c.to_f64().unwrap_or(f64::NAN);
            acc + Complex64::from_polar(mag, angle)
        })
    }

    /// Canonical terms sorted by (phase denominator, phase).
    pub fn canonical_terms(&self) -> Vec<(Q, BigRational)> {
        let mut v: Vec<(Q, BigRational)> = self.reduced().terms.into_iter().collect();
        v.sort_by(|a, b| a.0.denom().cmp(b.0.denom()).then_with(|| a.0.cmp(&b.0)));
        v
    }

    /// Float rendering rounded to 1e-12.
    pub fn render_float(&self) -> String {
        let z = self.to_complex();
        let round = |x: f64| {
            let r = (x * 1e12).round() / 1e12;
            if r == 0.0 {
                0.0
            } else {
                r
            }
        };
        let (re, im) = (round(z.re), round(z.im));
        if im == 0.0 {
            format!("{re}")
        } else if im < 0.0 {
            format!("{re}-{}i", -im)
        } else {
            format!("{re}+{im}i")
        }
    }
}

impl PartialEq for CycValue {
    fn eq(&self, other: &Self) -> bool {
        (self - other).is_zero()
    }
}

impl Eq for CycValue {}

/// Canonical exact rendering, e.g. `1/4`, `-2 + 3*e(1/3)`, `0`.
impl fmt::Display for CycValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.canonical_terms();
        if terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (p, c)) in terms.iter().enumerate() {
            let (neg, mag) = (c.is_negative(), c.abs());
            match (i, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if p.is_zero() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "e({p})")?;
            } else {
                write!(f, "{mag}*e({p})")?;
            }
        }
        Ok(())
    }
}

impl Add for &CycValue {
    type Output = CycValue;
    fn add(self, rhs: &CycValue) -> CycValue {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for CycValue {
    type Output = CycValue;
    fn add(mut self, rhs: CycValue) -> CycValue {
        self += &rhs;
        self
    }
}

impl AddAssign<&CycValue> for CycValue {
    fn add_assign(&mut self, rhs: &CycValue) {
        for (p, c) in &rhs.terms {
            self.add_term(*p, c.clone());
        }
    }
}

impl Neg for &CycValue {
    type Output = CycValue;
    fn neg(self) -> CycValue {
        CycValue {
            terms: self.terms.iter().map(|(p, c)| (*p, -c.clone())).collect(),
        }
    }
}

impl Neg for CycValue {
    type Output = CycValue;
    fn neg(self) -> CycValue {
        -&self
    }
}

impl Sub for &CycValue {
    type Output = CycValue;
    fn sub(self, rhs: &CycValue) -> CycValue {
        self + &(-rhs)
    }
}

impl Sub for CycValue {
    type Output = CycValue;
    fn sub(self, rhs: CycValue) -> CycValue {
        &self - &rhs
    }
}

impl Mul for &CycValue {
    type Output = CycValue;
    fn mul(self, rhs: &CycValue) -> CycValue {
        let mut out = CycValue::zero();
        for (p, c) in &self.terms {
            for (q, d) in &rhs.terms {
                out.add_term(p + q, c * d);
            }
        }
        out
    }
}

impl Mul for CycValue {
    type Output = CycValue;
    fn mul(self, rhs: CycValue) -> CycValue {
        &self * &rhs
    }
}

impl std::iter::Sum for CycValue {
    fn sum<I: Iterator<Item = CycValue>>(iter: I) -> CycValue {
        iter.fold(CycValue::zero(), |acc, x| acc + x)
    }
}
