//! Fixed workloads shared by the benchmarks.

use tff_core::sampling::{self, DatasetShape};
use tff_core::{CartanType, FixedPointDataset, RootDatum, WeightProfile, WeylGroup};

pub fn group(t: CartanType, n: usize) -> WeylGroup {
    WeylGroup::new(RootDatum::new(t, n).expect("valid root datum")).expect("within the group cap")
}

/// `count` random datasets at a finite weight, reproducible from `seed`.
pub fn datasets(seed: u64, count: usize) -> Vec<FixedPointDataset> {
    let mut rng = sampling::rng(seed);
    let shape = DatasetShape {
        nu: Some(WeightProfile::Middle),
        ..DatasetShape::default()
    };
    (0..count).map(|_| sampling::random_dataset(&mut rng, &shape)).collect()
}
