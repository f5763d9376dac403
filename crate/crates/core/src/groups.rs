//! Finite groups as verified Cayley tables.
//!
//! Element orderings are fixed per constructor:
//! - `Zk`: `0, 1, .., k-1`
//! - `Dk`: `e, r, .., r^(k-1), s, rs, .., r^(k-1)s`
//! - `Sk`, `Ak`: permutations in lexicographic order of one-line notation
//! - `Q8`: `1, -1, i, -i, j, -j, k, -k`
//! - `Dick`: `e, a, .., a^(2k-1), x, ax, .., a^(2k-1)x`
//! - products: lexicographic pairs
//!
//! Subgroups are `u64` masks over element indices, which caps group order at 64.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{FiniteFunction, FunctionFamily, OrderKind, PosetError};
use crate::subset::{canonical_cmp, BitIter, SubsetMask};

pub const DEFAULT_ORDER_CAP: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed group spec {0:?}")]
    Malformed(String),
    #[error("group term {0:?} needs a parameter of at least 1")]
    ZeroParameter(String),
    #[error("{spec} has order {order}, above the cap of {cap}")]
    OrderTooLarge { spec: String, order: u128, cap: usize },
    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),
    #[error("mask {0:#x} is not a subgroup")]
    NotASubgroup(u64),
}

pub type Result<T> = std::result::Result<T, GroupError>;

/// A set of group elements closed under the group law.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SubgroupMask(pub u64);

impl SubgroupMask {
    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn order(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, x: usize) -> bool {
        self.0 >> x & 1 == 1
    }

    pub fn is_subset(self, other: SubgroupMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn elements(self) -> impl Iterator<Item = usize> {
        BitIter(self.0)
    }

    /// The characteristic vector as a 0/1 word over `n` elements.
    pub fn to_word(self, n: usize) -> String {
        (0..n).map(|i| if self.contains(i) { '1' } else { '0' }).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from a row-major Cayley table, verifying the group axioms.
    pub fn from_table(name: impl Into<String>, order: usize, table: Vec<usize>, labels: Vec<String>) -> Result<Self> {
        if order == 0 || order > 64 {
            return Err(GroupError::InvalidTable(format!("order {order} outside 1..=64")));
        }
        if table.len() != order * order || labels.len() != order {
            return Err(GroupError::InvalidTable("table or labels have the wrong size".into()));
        }
        let full = if order == 64 { u64::MAX } else { (1u64 << order) - 1 };
        for a in 0..order {
            let row = (0..order).fold(0u64, |m, b| m | 1u64.checked_shl(table[a * order + b] as u32).unwrap_or(0));
            let col = (0..order).fold(0u64, |m, b| m | 1u64.checked_shl(table[b * order + a] as u32).unwrap_or(0));
            if row != full || col != full {
                return Err(GroupError::InvalidTable(format!("row or column {a} is not a permutation")));
            }
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
            .ok_or_else(|| GroupError::InvalidTable("no identity element".into()))?;
        for a in 0..order {
            for b in 0..order {
                let ab = table[a * order + b];
                for c in 0..order {
                    if table[ab * order + c] != table[a * order + table[b * order + c]] {
                        return Err(GroupError::InvalidTable(format!("({a}{b}){c} != {a}({b}{c})")));
                    }
                }
            }
        }
        // Latin rows guarantee a unique inverse
        let inverses = (0..order)
            .map(|a| (0..order).find(|&b| table[a * order + b] == identity).expect("latin row"))
            .collect();
        Ok(Self { name: name.into(), order, table, identity, inverses, labels })
    }

    fn from_law(name: impl Into<String>, labels: Vec<String>, law: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = labels.len();
        let table = (0..n * n).map(|k| law(k / n, k % n)).collect();
        Self::from_table(name, n, table, labels)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::from_law(format!("Z{n}"), (0..n).map(|i| i.to_string()).collect(), |a, b| (a + b) % n)
    }

    /// Dihedral group of order `2n`.
    pub fn dihedral(n: usize) -> Result<Self> {
        let mut labels: Vec<String> = (0..n).map(|i| rotation_label("r", i, "e")).collect();
        labels.extend((0..n).map(|i| format!("{}s", rotation_label("r", i, ""))));
        Self::from_law(format!("D{n}"), labels, |x, y| {
            let (i, a) = (x % n, x / n);
            let (j, b) = (y % n, y / n);
            let k = if a == 0 { (i + j) % n } else { (i + n - j) % n };
            ((a + b) % 2) * n + k
        })
    }

    /// Dicyclic group of order `4n`: `a^(2n) = 1`, `x^2 = a^n`, `x a x^-1 = a^-1`.
    pub fn dicyclic(n: usize) -> Result<Self> {
        let m = 2 * n;
        let mut labels: Vec<String> = (0..m).map(|i| rotation_label("a", i, "e")).collect();
        labels.extend((0..m).map(|i| format!("{}x", rotation_label("a", i, ""))));
        Self::from_law(format!("Dic{n}"), labels, |p, q| {
            let (i, b) = (p % m, p / m);
            let (j, c) = (q % m, q / m);
            match (b, c) {
                (0, _) => c * m + (i + j) % m,
                (_, 0) => m + (i + m - j) % m,
                _ => (i + m - j + n) % m,
            }
        })
    }

    pub fn quaternion() -> Result<Self> {
        // unit quaternions as (sign, axis) with axis 0 = 1, 1 = i, 2 = j, 3 = k
        let labels = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"].map(String::from).to_vec();
        let mul_axis = |p: usize, q: usize| -> (bool, usize) {
            match (p, q) {
                (0, q) => (false, q),
                (p, 0) => (false, p),
                (p, q) if p == q => (true, 0),
                (1, 2) => (false, 3),
                (2, 3) => (false, 1),
                (3, 1) => (false, 2),
                (2, 1) => (true, 3),
                (3, 2) => (true, 1),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        Self::from_law("Q8", labels, |x, y| {
            let (neg, axis) = mul_axis(x / 2, y / 2);
            let sign = (x % 2) ^ (y % 2) ^ neg as usize;
            axis * 2 + sign
        })
    }

    pub fn symmetric(n: usize) -> Result<Self> {
        Self::permutation_group(format!("S{n}"), permutations(n))
    }

    pub fn alternating(n: usize) -> Result<Self> {
        let even = permutations(n).into_iter().filter(|p| is_even(p)).collect();
        Self::permutation_group(format!("A{n}"), even)
    }

    fn permutation_group(name: String, perms: Vec<Vec<usize>>) -> Result<Self> {
        let labels: Vec<String> = perms.iter().map(|p| p.iter().map(|i| (i + 1).to_string()).collect()).collect();
        let index: std::collections::HashMap<&Vec<usize>, usize> = perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let table = perms
            .iter()
            .flat_map(|p| {
                perms.iter().map(|q| {
                    let pq: Vec<usize> = q.iter().map(|&i| p[i]).collect();
                    index[&pq]
                })
            })
            .collect::<Vec<_>>();
        Self::from_table(name, perms.len(), table, labels)
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<Self> {
        let nb = b.order;
        let labels = a
            .labels
            .iter()
            .flat_map(|x| b.labels.iter().map(move |y| format!("({x},{y})")))
            .collect();
        Self::from_law(format!("{}x{}", a.name, b.name), labels, |p, q| {
            a.mul(p / nb, q / nb) * nb + b.mul(p % nb, q % nb)
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn full(&self) -> SubgroupMask {
        SubgroupMask(if self.order == 64 { u64::MAX } else { (1u64 << self.order) - 1 })
    }

    pub fn trivial(&self) -> SubgroupMask {
        SubgroupMask(1 << self.identity)
    }

    /// Smallest subgroup containing every element of `seed`.
    pub fn closure(&self, seed: u64) -> SubgroupMask {
        let gens: Vec<usize> = BitIter(seed).collect();
        let mut set = 1u64 << self.identity;
        let mut frontier = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in &gens {
                let b = self.mul(a, g);
                if set >> b & 1 == 0 {
                    set |= 1 << b;
                    frontier.push(b);
                }
            }
        }
        SubgroupMask(set)
    }

    pub fn is_subgroup(&self, mask: u64) -> bool {
        if mask >> self.identity & 1 == 0 || mask & !self.full().0 != 0 {
            return false;
        }
        BitIter(mask).all(|a| BitIter(mask).all(|b| mask >> self.mul(a, b) & 1 == 1))
    }

    /// Validates a mask as a subgroup of this group.
    pub fn subgroup(&self, mask: u64) -> Result<SubgroupMask> {
        if self.is_subgroup(mask) {
            Ok(SubgroupMask(mask))
        } else {
            Err(GroupError::NotASubgroup(mask))
        }
    }

    /// All subgroups, ordered by size and then lexicographically on element lists.
    ///
    /// Every subgroup arises as `<H, x>` for a smaller subgroup `H` along some
    /// chain from the trivial subgroup, so extending each found subgroup by one
    /// element at a time reaches all of them.
    pub fn subgroups(&self) -> Vec<SubgroupMask> {
        let mut found: HashSet<u64> = HashSet::new();
        let start = self.trivial();
        found.insert(start.0);
        let mut todo = vec![(start, Vec::<usize>::new())];
        while let Some((h, gens)) = todo.pop() {
            for x in 0..self.order {
                if h.contains(x) {
                    continue;
                }
                let mut next_gens = gens.clone();
                next_gens.push(x);
                let seed = next_gens.iter().fold(0u64, |m, &g| m | 1 << g);
                let k = self.closure(seed);
                if found.insert(k.0) {
                    todo.push((k, next_gens));
                }
            }
        }
        let mut out: Vec<SubgroupMask> = found.into_iter().map(SubgroupMask).collect();
        out.sort_by(|a, b| canonical_cmp(a.0, b.0));
        out
    }

    /// Nontrivial subgroups containing no smaller nontrivial subgroup. They are
    /// exactly the cyclic subgroups of prime order.
    pub fn minimal_subgroups(&self) -> Vec<SubgroupMask> {
        let mut out: Vec<SubgroupMask> = (0..self.order)
            .filter(|&x| x != self.identity)
            .map(|x| self.closure(1 << x))
            .filter(|h| is_prime(h.order()))
            .collect();
        out.sort_by(|a, b| canonical_cmp(a.0, b.0));
        out.dedup();
        out
    }

    /// Minimum size of a generating set, with a witness.
    ///
    /// Level `k` holds every subgroup generated by at most `k` elements; level
    /// `k + 1` is obtained by adjoining one element to each member of level `k`.
    pub fn rank_with_witness(&self) -> (usize, Vec<usize>) {
        let full = self.full();
        let mut frontier: Vec<(SubgroupMask, Vec<usize>)> = vec![(self.trivial(), Vec::new())];
        let mut seen: HashSet<u64> = HashSet::from([self.trivial().0]);
        for k in 0..=self.order {
            if let Some((_, gens)) = frontier.iter().find(|(h, _)| *h == full) {
                return (k, gens.clone());
            }
            // subgroups first reached at an earlier level were extended there
            let mut next = Vec::new();
            for (h, gens) in &frontier {
                for x in 0..self.order {
                    if h.contains(x) {
                        continue;
                    }
                    let k = self.closure(h.0 | 1 << x);
                    if seen.insert(k.0) {
                        let mut g = gens.clone();
                        g.push(x);
                        next.push((k, g));
                    }
                }
            }
            frontier = next;
        }
        unreachable!("the whole group generates itself")
    }

    pub fn rank(&self) -> usize {
        self.rank_with_witness().0
    }

    /// The family `A_G` of characteristic functions of all subgroups, in
    /// canonical subgroup order.
    pub fn characteristic_family(&self, order: OrderKind) -> std::result::Result<FunctionFamily, PosetError> {
        let functions = self
            .subgroups()
            .into_iter()
            .map(|h| {
                let values = (0..self.order).map(|x| h.contains(x) as u32).collect();
                FiniteFunction::new(values, 2)
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        FunctionFamily::new(self.order, 2, functions, order)
    }

    /// A subgroup as a group in its own right, elements reindexed in ascending order.
    pub fn subgroup_as_group(&self, h: SubgroupMask) -> Result<FiniteGroup> {
        let h = self.subgroup(h.0)?;
        let elems: Vec<usize> = h.elements().collect();
        let mut pos = vec![usize::MAX; self.order];
        for (i, &e) in elems.iter().enumerate() {
            pos[e] = i;
        }
        let labels = elems.iter().map(|&e| self.labels[e].clone()).collect();
        let name = format!("{}[{}]", self.name, h.to_word(self.order));
        Self::from_law(name, labels, |a, b| pos[self.mul(elems[a], elems[b])])
    }

    /// Converts a subgroup mask to a [`SubsetMask`] over the elements.
    pub fn as_subset(&self, h: SubgroupMask) -> SubsetMask {
        SubsetMask::from_bits(h.0, self.order).expect("mask within group")
    }
}

impl fmt::Display for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (order {})", self.name, self.order)
    }
}

fn rotation_label(base: &str, i: usize, zero: &str) -> String {
    match i {
        0 => zero.to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{i}"),
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn is_even(p: &[usize]) -> bool {
    let inversions = (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    inversions % 2 == 0
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..n).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Term {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    Dicyclic(usize),
}

impl Term {
    fn order(self) -> u128 {
        let fact = |k: usize| (1..=k as u128).product::<u128>();
        match self {
            Term::Cyclic(k) => k as u128,
            Term::Dihedral(k) => 2 * k as u128,
            Term::Symmetric(k) => fact(k),
            Term::Alternating(k) => (fact(k) / 2).max(1),
            Term::Quaternion => 8,
            Term::Dicyclic(k) => 4 * k as u128,
        }
    }

    fn build(self) -> Result<FiniteGroup> {
        match self {
            Term::Cyclic(k) => FiniteGroup::cyclic(k),
            Term::Dihedral(k) => FiniteGroup::dihedral(k),
            Term::Symmetric(k) => FiniteGroup::symmetric(k),
            Term::Alternating(k) => FiniteGroup::alternating(k),
            Term::Quaternion => FiniteGroup::quaternion(),
            Term::Dicyclic(k) => FiniteGroup::dicyclic(k),
        }
    }
}

fn parse_term(s: &str) -> Result<Term> {
    if s == "Q8" {
        return Ok(Term::Quaternion);
    }
    let (ctor, digits): (fn(usize) -> Term, &str) = if let Some(d) = s.strip_prefix("Dic") {
        (Term::Dicyclic, d)
    } else if let Some(d) = s.strip_prefix('Z') {
        (Term::Cyclic, d)
    } else if let Some(d) = s.strip_prefix('D') {
        (Term::Dihedral, d)
    } else if let Some(d) = s.strip_prefix('S') {
        (Term::Symmetric, d)
    } else if let Some(d) = s.strip_prefix('A') {
        (Term::Alternating, d)
    } else {
        return Err(GroupError::Malformed(s.to_string()));
    };
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) || digits.len() > 6 {
        return Err(GroupError::Malformed(s.to_string()));
    }
    let k: usize = digits.parse().map_err(|_| GroupError::Malformed(s.to_string()))?;
    if k == 0 {
        return Err(GroupError::ZeroParameter(s.to_string()));
    }
    Ok(ctor(k))
}

/// Builds a group from an expression such as `D4`, `Z2xZ6` or `Dic3`.
pub fn make_group(spec: &str) -> Result<FiniteGroup> {
    make_group_with_cap(spec, DEFAULT_ORDER_CAP)
}

pub fn make_group_with_cap(spec: &str, cap: usize) -> Result<FiniteGroup> {
    let cap = cap.min(64);
    if spec.is_empty() {
        return Err(GroupError::Malformed(spec.to_string()));
    }
    let terms = spec.split('x').map(parse_term).collect::<Result<Vec<_>>>()?;
    let order = terms.iter().fold(1u128, |acc, t| acc.saturating_mul(t.order()));
    if order > cap as u128 {
        return Err(GroupError::OrderTooLarge { spec: spec.to_string(), order, cap });
    }
    let mut group = terms[0].build()?;
    for t in &terms[1..] {
        group = FiniteGroup::direct_product(&group, &t.build()?)?;
    }
    group.name = spec.to_string();
    Ok(group)
}

/// Group expressions of order at most 16 used for catalog-wide checks.
pub const CATALOG: &[&str] = &[
    "Z1", "Z2", "Z3", "Z4", "Z2xZ2", "Z5", "Z6", "S3", "Z7", "Z8", "Z2xZ4", "Z2xZ2xZ2", "D4", "Q8", "Z9",
    "Z3xZ3", "Z10", "D5", "Z11", "Z12", "Z2xZ6", "A4", "D6", "Dic3", "Z13", "Z14", "D7", "Z15", "Z16",
    "Z4xZ4", "Z2xZ8", "Z2xZ2xZ4", "Z2xZ2xZ2xZ2", "D8", "Dic4", "Z2xD4", "Z2xQ8",
];

/// Catalog groups of order at most `max_order`.
pub fn catalog(max_order: usize) -> Vec<FiniteGroup> {
    CATALOG
        .iter()
        .map(|s| make_group(s).expect("catalog entries are valid"))
        .filter(|g| g.order() <= max_order)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_subgroups(g: &FiniteGroup) -> Vec<SubgroupMask> {
        let mut out: Vec<SubgroupMask> = (0..1u64 << g.order()).filter(|&m| g.is_subgroup(m)).map(SubgroupMask).collect();
        out.sort_by(|a, b| canonical_cmp(a.0, b.0));
        out
    }

    #[test]
    fn catalog_orders() {
        for (spec, order) in [("D4", 8), ("Z2xZ6", 12), ("Dic3", 12), ("Q8", 8), ("S4", 24), ("A5", 60), ("A4", 12), ("D1", 2), ("A2", 1)] {
            assert_eq!(make_group(spec).unwrap().order(), order, "{spec}");
        }
    }

    #[test]
    fn spec_errors() {
        assert_eq!(make_group("Z0"), Err(GroupError::ZeroParameter("Z0".into())));
        assert!(matches!(make_group("Y3"), Err(GroupError::Malformed(_))));
        assert!(matches!(make_group("Z2x"), Err(GroupError::Malformed(_))));
        assert!(matches!(make_group(""), Err(GroupError::Malformed(_))));
        assert!(matches!(make_group("z4"), Err(GroupError::Malformed(_))));
        assert!(matches!(make_group("Z2 xZ2"), Err(GroupError::Malformed(_))));
        assert!(matches!(make_group("S5"), Err(GroupError::OrderTooLarge { order: 120, .. })));
        assert!(matches!(make_group("Z8xZ9"), Err(GroupError::OrderTooLarge { .. })));
        assert!(matches!(make_group_with_cap("Z9", 8), Err(GroupError::OrderTooLarge { .. })));
    }

    #[test]
    fn closure_examples() {
        let z6 = make_group("Z6").unwrap();
        assert_eq!(z6.closure(1 << 2), SubgroupMask(0b010101));
        assert_eq!(z6.closure(0), z6.trivial());
        let d4 = make_group("D4").unwrap();
        assert_eq!(d4.closure(1 << 1 | 1 << 4), d4.full());
    }

    #[test]
    fn subgroup_counts() {
        for (spec, count) in [("D4", 10), ("Z4", 3), ("Z5", 2), ("Q8", 6), ("A4", 10), ("S3", 6), ("Z2xZ2xZ2", 16), ("S4", 30)] {
            assert_eq!(make_group(spec).unwrap().subgroups().len(), count, "{spec}");
        }
    }

    #[test]
    fn subgroups_match_brute_force_up_to_order_8() {
        for g in catalog(8) {
            assert_eq!(g.subgroups(), brute_subgroups(&g), "{}", g.name());
        }
    }

    #[test]
    fn d4_characteristic_vectors() {
        let d4 = make_group("D4").unwrap();
        let mut words: Vec<String> = d4.subgroups().iter().map(|h| h.to_word(8)).collect();
        words.sort();
        let mut expected = vec![
            "11111111", "10000000", "10001000", "10000100", "10000010", "10000001", "10100000", "11110000", "10101010",
            "10100101",
        ];
        expected.sort();
        assert_eq!(words, expected);
    }

    #[test]
    fn ranks() {
        for (spec, rank) in [("Z6", 1), ("D4", 2), ("Z1", 0), ("Q8", 2), ("Z2xZ2xZ2", 3), ("A4", 2), ("Z2xZ6", 2), ("S4", 2)] {
            let g = make_group(spec).unwrap();
            let (r, witness) = g.rank_with_witness();
            assert_eq!(r, rank, "{spec}");
            assert_eq!(g.closure(witness.iter().fold(0, |m, &x| m | 1 << x)), g.full());
        }
    }

    #[test]
    fn quaternion_matches_dicyclic() {
        let q = make_group("Q8").unwrap();
        let d = make_group("Dic2").unwrap();
        assert_eq!(q.subgroups().len(), d.subgroups().len());
        assert_eq!(q.rank(), d.rank());
        assert_eq!(q.minimal_subgroups().len(), 1);
        assert_eq!(d.minimal_subgroups().len(), 1);
    }

    #[test]
    fn subgroup_as_group_reindexes() {
        let d4 = make_group("D4").unwrap();
        let klein = d4.subgroup(0b1010_0101).unwrap();
        let h = d4.subgroup_as_group(klein).unwrap();
        assert_eq!(h.order(), 4);
        assert_eq!(h.rank(), 2);
        assert!(d4.subgroup_as_group(SubgroupMask(0b11)).is_err());
    }

    #[test]
    fn bad_tables_are_rejected() {
        // not associative: a latin square with identity 0 that is not a group
        let t = vec![0, 1, 2, 3, 4, 1, 0, 3, 4, 2, 2, 4, 0, 1, 3, 3, 2, 4, 0, 1, 4, 3, 1, 2, 0];
        let labels = (0..5).map(|i| i.to_string()).collect();
        assert!(matches!(FiniteGroup::from_table("bad", 5, t, labels), Err(GroupError::InvalidTable(_))));
        let labels = (0..2).map(|i| i.to_string()).collect();
        assert!(FiniteGroup::from_table("bad", 2, vec![0, 1, 0, 1], labels).is_err());
    }
}
