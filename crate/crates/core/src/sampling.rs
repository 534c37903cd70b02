//! Seeded generators for randomized checks. Every generator takes an
//! explicit RNG so that a seed fixes the whole stream.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use crate::characters::ToralElement;
use crate::lefschetz::{DoubleCosetEntry, EllipticClassEntry, FixedPointDataset, TorusFactor, TorusRep};
use crate::nilcoh::WeightProfile;
use crate::rational::{pow_int, Q};
use crate::rootdata::{CartanType, RootDatum, Weight};
use crate::subset::Subset;

pub const DEFAULT_SEED: u64 = 0x7ff_2024;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> Q {
    Q::new(rng.gen_range(-num..=num), rng.gen_range(1..=den))
}

/// Rational weight in the root basis with small numerators and denominators.
pub fn random_rational_weight<R: Rng>(rng: &mut R, rank: usize) -> Weight {
    Weight::root((0..rank).map(|_| small_rational(rng, 12, 6)).collect())
}

/// Dominant integral weight with fundamental coordinates in `0..=max`.
pub fn random_dominant<R: Rng>(rng: &mut R, rank: usize, max: i64) -> Vec<i64> {
    (0..rank).map(|_| rng.gen_range(0..=max)).collect()
}

fn phase<R: Rng>(rng: &mut R, max_den: i64) -> Q {
    let d = rng.gen_range(1..=max_den);
    Q::new(rng.gen_range(0..d), d)
}

const MAGNITUDES: [(i64, i64); 7] = [(1, 1), (2, 1), (1, 2), (3, 2), (2, 3), (3, 1), (1, 3)];

fn magnitude<R: Rng>(rng: &mut R) -> BigRational {
    let (n, d) = *MAGNITUDES.choose(rng).unwrap();
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Torus element with small magnitudes and phases of denominator at most `max_den`.
pub fn random_torus_element<R: Rng>(rng: &mut R, rank: usize, max_den: i64) -> ToralElement {
    ToralElement::new(
        (0..rank).map(|_| magnitude(rng)).collect(),
        (0..rank).map(|_| phase(rng, max_den)).collect(),
    )
    .expect("positive magnitudes")
}

/// Common denominator of the root coordinates of the fundamental weights.
fn weight_denominator(rd: &RootDatum) -> i64 {
    rd.fundamental_weights()
        .iter()
        .flat_map(|w| w.coords.iter().map(|c| *c.denom()))
        .fold(1, |a, b| a.lcm(&b))
}

/// A class elliptic modulo `A_P`: its split part lies in `A_P`, with
/// `alpha_k(a) = y_k^D` for `k` in `Delta_P`, and its phases are arbitrary.
pub fn random_elliptic_class<R: Rng>(
    rng: &mut R,
    rd: &RootDatum,
    levi: Subset,
    neutral_bias: f64,
) -> (TorusFactor, ToralElement) {
    let n = rd.rank();
    let d = weight_denominator(rd);
    let delta_p = rd.all_simple().difference(levi);
    let ys: Vec<(usize, BigRational)> = delta_p
        .iter()
        .map(|k| {
            let y = if rng.gen_bool(neutral_bias) {
                BigRational::one()
            } else {
                magnitude(rng)
            };
            (k, y)
        })
        .collect();
    let magnitudes: Vec<BigRational> = (0..n)
        .map(|i| {
            let varpi = &rd.fundamental_weights()[i].coords;
            ys.iter().fold(BigRational::one(), |acc, (k, y)| {
                let exp = varpi[*k] * d;
                debug_assert!(exp.is_integer());
                acc * pow_int(y, exp.to_integer())
            })
        })
        .collect();
    let factor = TorusFactor::new(ys.iter().map(|(k, y)| (*k, pow_int(y, d))));
    let phases = (0..n).map(|_| phase(rng, 6)).collect();
    let e = ToralElement::new(magnitudes, phases).expect("positive magnitudes");
    (factor, e)
}

/// Knobs for [`random_dataset`].
#[derive(Clone, Debug)]
pub struct DatasetShape {
    pub groups: Vec<(CartanType, usize)>,
    pub max_lambda: i64,
    pub max_strata: usize,
    pub max_cosets: usize,
    pub max_classes: usize,
    pub nu: Option<WeightProfile>,
    pub neutral_bias: f64,
}

impl Default for DatasetShape {
    fn default() -> Self {
        DatasetShape {
            groups: vec![(CartanType::A, 1), (CartanType::A, 2), (CartanType::C, 2)],
            max_lambda: 2,
            max_strata: 3,
            max_cosets: 2,
            max_classes: 2,
            nu: None,
            neutral_bias: 0.25,
        }
    }
}

fn random_profile<R: Rng>(rng: &mut R, rd: &RootDatum) -> WeightProfile {
    match rng.gen_range(0..4) {
        0 => WeightProfile::Middle,
        1 => WeightProfile::PlusInfinity,
        2 => WeightProfile::MinusInfinity,
        _ => WeightProfile::Finite(Weight::fundamental(
            (0..rd.rank()).map(|_| small_rational(rng, 4, 2)).collect(),
        )),
    }
}

fn random_coset<R: Rng>(
    rng: &mut R,
    rd: &RootDatum,
    levi: Subset,
    label: String,
    shape: &DatasetShape,
) -> DoubleCosetEntry {
    let n_classes = rng.gen_range(1..=shape.max_classes.max(1));
    let (factor, first) = random_elliptic_class(rng, rd, levi, shape.neutral_bias);
    let split = first.split_part();
    let classes = (0..n_classes)
        .map(|k| {
            // all classes of a coset share the torus factor
            let e = split
                .multiply(&random_torus_element(rng, rd.rank(), 6).elliptic_part())
                .expect("same rank");
            let chi_c = rng.gen_range(-3..=3);
            EllipticClassEntry {
                label: format!("e{k}"),
                chi_c,
                chi: Some(if rng.gen_bool(0.5) { chi_c } else { rng.gen_range(-3..=3) }),
                torus_rep: TorusRep::from_element(&e),
            }
        })
        .collect();
    DoubleCosetEntry {
        label,
        r: rng.gen_range(1..=3),
        torus_factor: factor.to_entry(),
        classes,
    }
}

/// A schema-valid dataset with random strata, cosets and classes.
pub fn random_dataset<R: Rng>(rng: &mut R, shape: &DatasetShape) -> FixedPointDataset {
    let (t, n) = *shape.groups.choose(rng).expect("at least one group");
    let rd = RootDatum::new(t, n).expect("valid group");
    let lambda = random_dominant(rng, n, shape.max_lambda);
    let nu = shape.nu.clone().unwrap_or_else(|| random_profile(rng, &rd));
    let mut ds = FixedPointDataset::new(&rd, &lambda, &nu);
    let mut levis: Vec<Subset> = rd.all_simple().subsets().collect();
    levis.shuffle(rng);
    let k = rng.gen_range(1..=shape.max_strata.min(levis.len()));
    for &levi in &levis[..k] {
        for c in 0..rng.gen_range(1..=shape.max_cosets.max(1)) {
            let coset = random_coset(rng, &rd, levi, format!("g{c}"), shape);
            ds.push_coset(levi, coset);
        }
    }
    ds
}

/// Dataset supported on the interior stratum only.
pub fn random_interior_dataset<R: Rng>(rng: &mut R, rd: &RootDatum, lambda: &[i64], classes: usize) -> FixedPointDataset {
    let mut ds = FixedPointDataset::new(rd, lambda, &WeightProfile::Middle);
    let full = rd.all_simple();
    let entries = (0..classes)
        .map(|k| EllipticClassEntry {
            label: format!("e{k}"),
            chi_c: rng.gen_range(-3..=3),
            chi: None,
            torus_rep: TorusRep::from_element(&random_torus_element(rng, rd.rank(), 6).elliptic_part()),
        })
        .collect();
    ds.push_coset(
        full,
        DoubleCosetEntry {
            label: "g".into(),
            r: 1,
            torus_factor: Default::default(),
            classes: entries,
        },
    );
    ds
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lefschetz::validate_dataset;

    #[test]
    fn generated_datasets_are_valid_and_reproducible() {
        let shape = DatasetShape::default();
        for seed in 0..30 {
            let a = random_dataset(&mut rng(seed), &shape);
            let b = random_dataset(&mut rng(seed), &shape);
            assert_eq!(a, b);
            let diags = validate_dataset(&a);
            assert!(
                diags.iter().all(|d| d.severity != crate::lefschetz::Severity::Error),
                "seed {seed}: {diags:?}"
            );
        }
    }

    #[test]
    fn elliptic_classes_have_the_requested_factor() {
        let rd = RootDatum::new(CartanType::A, 2).unwrap();
        let mut r = rng(5);
        for levi in rd.all_simple().subsets() {
            let (factor, e) = random_elliptic_class(&mut r, &rd, levi, 0.0);
            for i in 0..2 {
                let v = e.simple_root_magnitude(&rd, i).unwrap();
                match factor.get(i) {
                    Some(f) => assert_eq!(*f, v),
                    None => assert!(v.is_one()),
                }
            }
        }
    }
}
