//! Subsets of the simple roots, stored as bitmasks over 0-based indices.

use std::fmt;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(u64);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(rank: usize) -> Subset {
        assert!(rank < 64);
        Subset((1u64 << rank) - 1)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Subset {
        Subset(it.into_iter().fold(0, |m, i| m | (1u64 << i)))
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> Subset {
        Subset(bits)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 64 && self.0 & (1u64 << i) != 0
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u64 << i;
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |&i| self.contains(i))
    }

    /// All subsets of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let mask = self.0;
        let mut cur = Some(0u64);
        std::iter::from_fn(move || {
            let out = cur?;
            cur = if out == mask {
                None
            } else {
                Some(((out | !mask).wrapping_add(1)) & mask)
            };
            Some(Subset(out))
        })
    }

    /// Parses a 1-based comma separated list, e.g. `"1,3"`; the empty string is the empty set.
    pub fn parse_one_based(s: &str, rank: usize) -> Result<Subset, String> {
        let mut out = Subset::EMPTY;
        for tok in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let i: usize = tok
                .parse()
                .map_err(|_| format!("'{tok}' is not a simple root index"))?;
            if i == 0 || i > rank {
                return Err(format!("simple root index {i} outside 1..={rank}"));
            }
            out.insert(i - 1);
        }
        Ok(out)
    }

    pub fn one_based(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }
}

/// Renders as `{1,2}` with 1-based indices; the empty set renders as `{}`.
impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}
