//! Bit-vector subsets of a finite universe and the enumeration orders used by
//! every sweep in the crate.
//!
//! Subsets of domains with at most 64 points are handled as raw `u64` masks in
//! the hot loops; [`SubsetMask`] is the owned, universe-aware form used at API
//! boundaries and for sets over family members, which may exceed 64 points.

use std::cmp::Ordering;
use std::fmt;

/// Largest domain that sweeps can represent as a single `u64` mask.
pub const MAX_SWEEP_DOMAIN: usize = 64;

/// A subset of `{0, .., universe_size - 1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetMask {
    words: Vec<u64>,
    universe_size: usize,
}

impl SubsetMask {
    pub fn empty(universe_size: usize) -> Self {
        Self {
            words: vec![0; universe_size.div_ceil(64)],
            universe_size,
        }
    }

    pub fn full(universe_size: usize) -> Self {
        let mut s = Self::empty(universe_size);
        for i in 0..universe_size {
            s.insert(i);
        }
        s
    }

    /// Builds a mask from a `u64`. Bits at or above `universe_size` must be clear.
    pub fn from_bits(bits: u64, universe_size: usize) -> Option<Self> {
        if universe_size < 64 && bits >> universe_size != 0 {
            return None;
        }
        let mut s = Self::empty(universe_size);
        if let Some(w) = s.words.first_mut() {
            *w = bits;
        }
        Some(s)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(universe_size: usize, indices: I) -> Option<Self> {
        let mut s = Self::empty(universe_size);
        for i in indices {
            if i >= universe_size {
                return None;
            }
            s.insert(i);
        }
        Some(s)
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn insert(&mut self, i: usize) {
        assert!(i < self.universe_size, "index {i} outside universe {}", self.universe_size);
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        i < self.universe_size && self.words[i / 64] >> (i % 64) & 1 == 1
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn is_subset(&self, other: &SubsetMask) -> bool {
        self.universe_size == other.universe_size
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// The mask as a single word, when the universe fits in 64 points.
    pub fn as_u64(&self) -> Option<u64> {
        match self.words.len() {
            0 => Some(0),
            1 => Some(self.words[0]),
            _ => None,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * 64 + b))
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl fmt::Display for SubsetMask {
    /// Renders as a 0/1 word, position 0 first.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.universe_size {
            f.write_str(if self.contains(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Iterator over the set bit positions of a word, ascending.
#[derive(Clone, Copy, Debug)]
pub struct BitIter(pub u64);

impl Iterator for BitIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let b = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(b)
    }
}

/// Mask with the low `n` bits set.
pub fn low_bits(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Canonical subset order: cardinality ascending, then lexicographic on the
/// ascending element lists.
pub fn canonical_cmp(a: u64, b: u64) -> Ordering {
    match a.count_ones().cmp(&b.count_ones()) {
        Ordering::Equal if a == b => Ordering::Equal,
        Ordering::Equal => {
            // the smallest element in the symmetric difference decides
            let low = (a ^ b).trailing_zeros();
            if a >> low & 1 == 1 {
                Ordering::Less
            } else {
                Ordering::Greater
            }
        }
        ord => ord,
    }
}

/// All `k`-element subsets of `{0, .., n - 1}` in lexicographic order.
#[derive(Clone, Debug)]
pub struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(n: usize, k: usize) -> Self {
        assert!(n <= MAX_SWEEP_DOMAIN);
        Self {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u64, |m, &i| m | 1 << i);
        let k = self.idx.len();
        // advance to the next combination
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(mask)
    }
}

/// Every subset of `{0, .., n - 1}` in canonical order.
pub fn canonical_subsets(n: usize) -> impl Iterator<Item = u64> {
    (0..=n).flat_map(move |k| Combinations::new(n, k))
}

/// Number of subsets of an `n`-point domain, if it fits in a `u64`.
pub fn subset_count(n: usize) -> Option<u64> {
    1u64.checked_shl(n as u32).filter(|_| n < 64)
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return None;
        }
    }
    Some(acc as u64)
}

/// Keeps only the inclusion-minimal masks, sorted and deduplicated.
pub fn minimal_masks(mut sets: Vec<u64>) -> Vec<u64> {
    sets.sort_by_key(|s| (s.count_ones(), *s));
    sets.dedup();
    let mut out: Vec<u64> = Vec::with_capacity(sets.len());
    for s in sets {
        if !out.iter().any(|&m| m & !s == 0) {
            out.push(s);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn combinations_are_lexicographic() {
        let got: Vec<Vec<usize>> = Combinations::new(4, 2).map(|m| BitIter(m).collect()).collect();
        assert_eq!(
            got,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert_eq!(Combinations::new(3, 0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(Combinations::new(2, 3).count(), 0);
    }

    #[test]
    fn canonical_order_matches_sort() {
        let mut by_cmp: Vec<u64> = (0..1u64 << 5).collect();
        by_cmp.sort_by(|&a, &b| canonical_cmp(a, b));
        let swept: Vec<u64> = canonical_subsets(5).collect();
        assert_eq!(by_cmp, swept);
        assert_eq!(swept.len(), 32);
    }

    #[test]
    fn mask_roundtrip_and_display() {
        let s = SubsetMask::from_indices(8, [0, 2]).unwrap();
        assert_eq!(s.to_string(), "10100000");
        assert_eq!(s.as_u64(), Some(0b101));
        assert_eq!(s.len(), 2);
        assert!(SubsetMask::from_bits(0b1000, 3).is_none());
        let wide = SubsetMask::from_indices(130, [1, 129]).unwrap();
        assert_eq!(wide.iter().collect::<Vec<_>>(), vec![1, 129]);
        assert_eq!(wide.as_u64(), None);
        assert!(SubsetMask::from_indices(3, [3]).is_none());
    }

    #[test]
    fn minimal_masks_drops_supersets() {
        assert_eq!(minimal_masks(vec![0b111, 0b011, 0b100, 0b011, 0b110]), vec![0b100, 0b011]);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(3, 3), Some(1));
        assert_eq!(binomial(2, 3), Some(0));
        assert_eq!(subset_count(22), Some(1 << 22));
        assert_eq!(subset_count(64), None);
    }
}
