//! Demonstration fixed-point data for the Hecke operator `T_p` on `GL_2`,
//! represented on the `A_1` root datum after central normalisation.
//!
//! Interior stratum: one class per `GL_2(Z)`-conjugacy class of integral
//! matrices with determinant `p` and elliptic trace `t`. The torus
//! representative is `lambda_1 / sqrt(p)`, of modulus one with
//! `cos theta = t / (2 sqrt p)`.
//!
//! Borel stratum: the two diagonal cosets `diag(1, p)` and `diag(p, 1)`,
//! with `alpha = 1/p` and `alpha = p` respectively.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::forms::{count_elliptic_classes, elliptic_traces};
use crate::characters::{PhaseCoord, ToralElement};
use crate::error::Result;
use crate::lefschetz::{DoubleCosetEntry, EllipticClassEntry, FixedPointDataset, TorusFactor, TorusRep};
use crate::nilcoh::WeightProfile;
use crate::rational::Q;
use crate::rootdata::{CartanType, RootDatum};
use crate::subset::Subset;

/// Argument of `lambda_1 / sqrt(p)` as a fraction of a turn, when it is
/// rational; otherwise the polynomial `p z^4 + (2p - t^2) z^2 + p`.
pub fn eigenvalue_phase(p: u64, t: i64) -> PhaseCoord {
    let p = p as i64;
    let sq = t * t;
    let turn = |n: i64, d: i64| PhaseCoord::Rational(Q::new(n, d));
    if sq == 0 {
        return turn(1, 4);
    }
    let pos = t > 0;
    match (sq % p == 0).then(|| sq / p) {
        Some(1) => if pos { turn(1, 6) } else { turn(1, 3) },
        Some(2) => if pos { turn(1, 8) } else { turn(3, 8) },
        Some(3) => if pos { turn(1, 12) } else { turn(5, 12) },
        _ => PhaseCoord::Algebraic {
            min_poly: vec![p, 0, 2 * p - sq, 0, p],
        },
    }
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Label of the `k`-th class of trace `t`.
pub fn class_label(t: i64, k: usize) -> String {
    format!("t={t}/{k}")
}

/// Builds the `T_p` dataset with `lambda = 0` and `nu` in the middle chamber.
///
/// `chi_c` is called with each class label (`t=<t>/<k>`, `diag(1,p)/e`,
/// `diag(p,1)/e`) and must return its compactly supported Euler
/// characteristic; computing those is out of scope here. Every coset gets
/// `r = 1`.
pub fn build_gl2_dataset(p: u64, mut chi_c: impl FnMut(&str) -> i64) -> Result<FixedPointDataset> {
    let rd = RootDatum::new(CartanType::A, 1)?;
    let mut ds = FixedPointDataset::new(&rd, &[0], &WeightProfile::Middle);

    let mut interior = Vec::new();
    for t in elliptic_traces(p) {
        let n = count_elliptic_classes(p, t)?;
        for k in 0..n {
            let label = class_label(t, k);
            let e = ToralElement::with_root(vec![rat(1, 1)], 1, vec![eigenvalue_phase(p, t)])?;
            interior.push(EllipticClassEntry {
                chi_c: chi_c(&label),
                chi: None,
                label,
                torus_rep: TorusRep::from_element(&e),
            });
        }
    }
    ds.push_coset(
        rd.all_simple(),
        DoubleCosetEntry {
            label: "interior".into(),
            r: 1,
            torus_factor: BTreeMap::new(),
            classes: interior,
        },
    );

    let pi = p as i64;
    for (label, alpha) in [("diag(1,p)", rat(1, pi)), ("diag(p,1)", rat(pi, 1))] {
        // varpi = alpha / 2, so varpi(e) = sqrt(alpha(e))
        let e = ToralElement::with_root(vec![alpha.clone()], 2, vec![PhaseCoord::Rational(Q::from_integer(0))])?;
        let class = format!("{label}/e");
        ds.push_coset(
            Subset::EMPTY,
            DoubleCosetEntry {
                label: label.into(),
                r: 1,
                torus_factor: TorusFactor::new([(0, alpha)]).to_entry(),
                classes: vec![EllipticClassEntry {
                    chi_c: chi_c(&class),
                    chi: None,
                    label: "e".into(),
                    torus_rep: TorusRep::from_element(&e),
                }],
            },
        );
    }
    Ok(ds)
}
