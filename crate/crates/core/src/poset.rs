//! Posets of functions on finite sets.
//!
//! A [`FunctionFamily`] is a set of distinct functions `X -> Y` between finite
//! sets together with a partial order. A member `f` is *Occam* on `S ⊆ X` when
//! it is the least element of the members agreeing with it on `S`.
//!
//! Every member `g` with `f ≰ g` must be separated from `f` by `S`, so the
//! Occam sets of `f` are exactly the hitting sets of the disagreement sets
//! `{x : f(x) != g(x)}` over those `g`. The radius search and the fusion
//! number branch-and-bound both work on that reformulation; the literal
//! agreeing-set check is kept as [`FunctionFamily::is_occam`] and the
//! `*_by_sweep` functions, which serve as oracles.

use std::collections::HashMap;
use std::fmt;

use rayon::prelude::*;
use rustc_hash::FxHashMap;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::subset::{canonical_cmp, canonical_subsets, low_bits, minimal_masks, subset_count, BitIter, SubsetMask, MAX_SWEEP_DOMAIN};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PosetError {
    #[error("value {value} at position {position} is outside a codomain of size {codomain}")]
    ValueOutOfRange { position: usize, value: u32, codomain: usize },
    #[error("function has {got} values but the domain has {expected} points")]
    DomainMismatch { expected: usize, got: usize },
    #[error("functions {first} and {second} are identical")]
    DuplicateFunction { first: usize, second: usize },
    #[error("member index {index} out of range for a family of {len}")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("subset over {got} points used with a domain of {expected} points")]
    SubsetMismatch { expected: usize, got: usize },
    #[error("relation is not a partial order: {0}")]
    InvalidRelation(String),
    #[error("domain of {0} points exceeds the {MAX_SWEEP_DOMAIN}-point sweep limit")]
    DomainTooLarge(usize),
}

pub type Result<T> = std::result::Result<T, PosetError>;

/// Upper bound on the number of subsets a single sweep or search may visit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Budget(pub u64);

impl Budget {
    pub const DEFAULT_LOG2: u32 = 22;

    pub fn from_log2(log2: u32) -> Self {
        Budget(1u64.checked_shl(log2).unwrap_or(u64::MAX))
    }

    /// Whether a full sweep over the subsets of an `n`-point domain fits.
    pub fn allows_sweep(self, n: usize) -> bool {
        subset_count(n).is_some_and(|c| c <= self.0)
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::from_log2(Self::DEFAULT_LOG2)
    }
}

/// Result of a budgeted computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome<T> {
    Computed(T),
    BudgetExceeded,
}

impl<T> Outcome<T> {
    pub fn computed(self) -> Option<T> {
        match self {
            Outcome::Computed(v) => Some(v),
            Outcome::BudgetExceeded => None,
        }
    }

    pub fn is_computed(&self) -> bool {
        matches!(self, Outcome::Computed(_))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TermStatus {
    Computed,
    BudgetExceeded,
    NoMaximum,
}

/// One entry of a fusion sequence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Term {
    pub value: Option<u64>,
    pub status: TermStatus,
}

impl Term {
    pub fn computed(value: u64) -> Self {
        Term { value: Some(value), status: TermStatus::Computed }
    }

    pub fn exceeded() -> Self {
        Term { value: None, status: TermStatus::BudgetExceeded }
    }

    pub fn no_maximum() -> Self {
        Term { value: None, status: TermStatus::NoMaximum }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.value, self.status) {
            (Some(v), _) => write!(f, "{v}"),
            (None, TermStatus::NoMaximum) => f.write_str("-"),
            (None, _) => f.write_str("?"),
        }
    }
}

/// A function between finite sets, stored as its list of codomain indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteFunction {
    values: Vec<u32>,
    codomain_size: usize,
}

impl FiniteFunction {
    pub fn new(values: Vec<u32>, codomain_size: usize) -> Result<Self> {
        if let Some((position, &value)) = values.iter().enumerate().find(|(_, &v)| v as usize >= codomain_size) {
            return Err(PosetError::ValueOutOfRange { position, value, codomain: codomain_size });
        }
        Ok(Self { values, codomain_size })
    }

    /// The 0/1 characteristic function of a subset.
    pub fn indicator(set: &SubsetMask) -> Self {
        let values = (0..set.universe_size()).map(|i| set.contains(i) as u32).collect();
        Self { values, codomain_size: 2 }
    }

    /// Parses a word over the letters `a, b, c, ..` (letter `k` is value `k`).
    pub fn from_letters(word: &str, codomain_size: usize) -> Result<Self> {
        let values = word.bytes().map(|b| b.wrapping_sub(b'a') as u32).collect();
        Self::new(values, codomain_size)
    }

    pub fn domain_size(&self) -> usize {
        self.values.len()
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    pub fn value(&self, x: usize) -> u32 {
        self.values[x]
    }

    /// The word over `a, b, c, ..`.
    pub fn to_letters(&self) -> String {
        self.values.iter().map(|&v| char::from(b'a' + (v % 26) as u8)).collect()
    }

    /// Renders with the given symbols; symbols are concatenated when all are
    /// single characters and comma-separated otherwise.
    pub fn render(&self, alphabet: &[String]) -> String {
        let sep = if alphabet.iter().all(|s| s.chars().count() == 1) { "" } else { "," };
        self.values.iter().map(|&v| alphabet[v as usize].as_str()).collect::<Vec<_>>().join(sep)
    }

    fn as_bits(&self) -> Option<u64> {
        if self.codomain_size > 2 || self.values.len() > 64 {
            return None;
        }
        Some(self.values.iter().enumerate().fold(0u64, |m, (i, &v)| m | (v as u64) << i))
    }
}

impl fmt::Display for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.codomain_size <= 10 {
            for v in &self.values {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.values.iter().map(u32::to_string).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// True iff `f` and `g` take the same value at every point of `s`.
pub fn restriction_agrees(f: &FiniteFunction, g: &FiniteFunction, s: &SubsetMask) -> Result<bool> {
    if f.domain_size() != g.domain_size() {
        return Err(PosetError::DomainMismatch { expected: f.domain_size(), got: g.domain_size() });
    }
    if s.universe_size() != f.domain_size() {
        return Err(PosetError::SubsetMismatch { expected: f.domain_size(), got: s.universe_size() });
    }
    Ok(s.iter().all(|x| f.values[x] == g.values[x]))
}

/// An explicit partial order on family indices; `leq(i, j)` means `i ≤ j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Relation {
    size: usize,
    leq: Vec<bool>,
}

impl Relation {
    /// Builds from a square matrix, verifying the partial order axioms.
    pub fn from_matrix(matrix: Vec<Vec<bool>>) -> Result<Self> {
        let size = matrix.len();
        if matrix.iter().any(|row| row.len() != size) {
            return Err(PosetError::InvalidRelation("matrix is not square".into()));
        }
        let rel = Relation { size, leq: matrix.into_iter().flatten().collect() };
        rel.verify()?;
        Ok(rel)
    }

    /// Builds from `(lesser, greater)` pairs; reflexive pairs are implied.
    pub fn from_pairs(size: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; size * size];
        for i in 0..size {
            leq[i * size + i] = true;
        }
        for &(a, b) in pairs {
            if a >= size || b >= size {
                return Err(PosetError::IndexOutOfRange { index: a.max(b), len: size });
            }
            leq[a * size + b] = true;
        }
        let rel = Relation { size, leq };
        rel.verify()?;
        Ok(rel)
    }

    fn verify(&self) -> Result<()> {
        let n = self.size;
        for a in 0..n {
            if !self.leq(a, a) {
                return Err(PosetError::InvalidRelation(format!("not reflexive at {a}")));
            }
            for b in 0..n {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(PosetError::InvalidRelation(format!("{a} and {b} violate antisymmetry")));
                }
                if !self.leq(a, b) {
                    continue;
                }
                for c in 0..n {
                    if self.leq(b, c) && !self.leq(a, c) {
                        return Err(PosetError::InvalidRelation(format!("{a} ≤ {b} ≤ {c} is not transitive")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    /// All `(a, b)` pairs with `a ≤ b` and `a != b`.
    pub fn strict_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.size;
        (0..n).flat_map(|a| (0..n).map(move |b| (a, b))).filter(|&(a, b)| a != b && self.leq(a, b)).collect()
    }

    fn permuted(&self, perm: &[usize]) -> Relation {
        // new index i holds old member perm[i]
        let n = self.size;
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(perm[i], perm[j]);
            }
        }
        Relation { size: n, leq }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrderKind {
    Equality,
    /// Pointwise comparison of codomain indices; inclusion for 0/1 families.
    Pointwise,
    Explicit(Relation),
}

/// Radius of a member together with the lexicographically least minimum Occam set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Radius {
    pub value: usize,
    pub witness: SubsetMask,
}

/// A set of distinct functions on a common finite domain, partially ordered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionFamily {
    functions: Vec<FiniteFunction>,
    order: OrderKind,
    domain_size: usize,
    codomain_size: usize,
    // 0/1 members on at most 64 points, one bit per domain point
    packed: Option<Vec<u64>>,
}

impl FunctionFamily {
    pub fn new(domain_size: usize, codomain_size: usize, functions: Vec<FiniteFunction>, order: OrderKind) -> Result<Self> {
        let mut seen: HashMap<&[u32], usize> = HashMap::with_capacity(functions.len());
        for (i, f) in functions.iter().enumerate() {
            if f.domain_size() != domain_size {
                return Err(PosetError::DomainMismatch { expected: domain_size, got: f.domain_size() });
            }
            if f.codomain_size() > codomain_size {
                if let Some((position, &value)) = f.values.iter().enumerate().find(|(_, &v)| v as usize >= codomain_size) {
                    return Err(PosetError::ValueOutOfRange { position, value, codomain: codomain_size });
                }
            }
            if let Some(first) = seen.insert(f.values(), i) {
                return Err(PosetError::DuplicateFunction { first, second: i });
            }
        }
        drop(seen);
        if let OrderKind::Explicit(rel) = &order {
            if rel.size() != functions.len() {
                return Err(PosetError::InvalidRelation(format!(
                    "relation over {} members used with a family of {}",
                    rel.size(),
                    functions.len()
                )));
            }
        }
        let functions: Vec<FiniteFunction> = functions
            .into_iter()
            .map(|f| FiniteFunction { codomain_size, ..f })
            .collect();
        let packed = if codomain_size <= 2 && domain_size <= MAX_SWEEP_DOMAIN {
            functions.iter().map(FiniteFunction::as_bits).collect()
        } else {
            None
        };
        Ok(Self { functions, order, domain_size, codomain_size, packed })
    }

    /// Family of 0/1 functions given as masks over `domain_size` points.
    pub fn from_masks(domain_size: usize, masks: &[SubsetMask], order: OrderKind) -> Result<Self> {
        let functions = masks
            .iter()
            .map(|m| {
                if m.universe_size() != domain_size {
                    return Err(PosetError::SubsetMismatch { expected: domain_size, got: m.universe_size() });
                }
                Ok(FiniteFunction::indicator(m))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(domain_size, 2, functions, order)
    }

    /// Parses words over `a, b, ..`; all words must have the same length.
    pub fn from_letter_words(codomain_size: usize, words: &[&str], order: OrderKind) -> Result<Self> {
        let domain = words.first().map_or(0, |w| w.len());
        let functions = words.iter().map(|w| FiniteFunction::from_letters(w, codomain_size)).collect::<Result<Vec<_>>>()?;
        Self::new(domain, codomain_size, functions, order)
    }

    pub fn len(&self) -> usize {
        self.functions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.functions.is_empty()
    }

    pub fn functions(&self) -> &[FiniteFunction] {
        &self.functions
    }

    pub fn function(&self, i: usize) -> &FiniteFunction {
        &self.functions[i]
    }

    pub fn order(&self) -> &OrderKind {
        &self.order
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn index_of(&self, f: &FiniteFunction) -> Option<usize> {
        self.functions.iter().position(|g| g.values == f.values)
    }

    /// Same members under a different order.
    pub fn with_order(&self, order: OrderKind) -> Result<Self> {
        Self::new(self.domain_size, self.codomain_size, self.functions.clone(), order)
    }

    /// Members reordered so that new index `i` holds old member `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Result<Self> {
        let mut check = perm.to_vec();
        check.sort_unstable();
        if check != (0..self.len()).collect::<Vec<_>>() {
            return Err(PosetError::InvalidRelation("not a permutation of the members".into()));
        }
        let order = match &self.order {
            OrderKind::Explicit(rel) => OrderKind::Explicit(rel.permuted(perm)),
            o => o.clone(),
        };
        let functions = perm.iter().map(|&i| self.functions[i].clone()).collect();
        Self::new(self.domain_size, self.codomain_size, functions, order)
    }

    fn check_index(&self, f: usize) -> Result<()> {
        if f >= self.len() {
            return Err(PosetError::IndexOutOfRange { index: f, len: self.len() });
        }
        Ok(())
    }

    fn check_subset(&self, s: &SubsetMask) -> Result<()> {
        if s.universe_size() != self.domain_size {
            return Err(PosetError::SubsetMismatch { expected: self.domain_size, got: s.universe_size() });
        }
        Ok(())
    }

    fn check_sweepable(&self) -> Result<()> {
        if self.domain_size > MAX_SWEEP_DOMAIN {
            return Err(PosetError::DomainTooLarge(self.domain_size));
        }
        Ok(())
    }

    /// `functions[i] ≤ functions[j]` in the family order.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        match &self.order {
            OrderKind::Equality => i == j,
            OrderKind::Pointwise => match &self.packed {
                Some(p) => p[i] & !p[j] == 0,
                None => self.functions[i].values.iter().zip(&self.functions[j].values).all(|(a, b)| a <= b),
            },
            OrderKind::Explicit(rel) => rel.leq(i, j),
        }
    }

    fn extreme(&self, below: bool) -> Option<usize> {
        let mut members = 0..self.len();
        let mut cand = members.next()?;
        for g in members {
            let better = if below { self.leq(g, cand) } else { self.leq(cand, g) };
            if better {
                cand = g;
            }
        }
        let ok = (0..self.len()).all(|g| if below { self.leq(cand, g) } else { self.leq(g, cand) });
        ok.then_some(cand)
    }

    /// The least member, if one exists.
    pub fn least(&self) -> Option<usize> {
        self.extreme(true)
    }

    /// The greatest member, if one exists.
    pub fn maximum(&self) -> Option<usize> {
        self.extreme(false)
    }

    /// Points where members `i` and `j` differ.
    fn disagreement(&self, i: usize, j: usize) -> u64 {
        match &self.packed {
            Some(p) => p[i] ^ p[j],
            None => {
                let (a, b) = (&self.functions[i].values, &self.functions[j].values);
                (0..self.domain_size).filter(|&x| a[x] != b[x]).fold(0, |m, x| m | 1 << x)
            }
        }
    }

    /// Inclusion-minimal sets that every Occam set of `f` must hit.
    pub fn occam_constraints(&self, f: usize) -> Result<Vec<u64>> {
        self.check_index(f)?;
        self.check_sweepable()?;
        let sets = (0..self.len()).filter(|&g| g != f && !self.leq(f, g)).map(|g| self.disagreement(f, g)).collect();
        Ok(minimal_masks(sets))
    }

    /// Literal check: `f` is the least element of the members agreeing with it on `s`.
    pub fn is_occam(&self, f: usize, s: &SubsetMask) -> Result<bool> {
        self.check_index(f)?;
        self.check_subset(s)?;
        let target = &self.functions[f];
        for (g, other) in self.functions.iter().enumerate() {
            if restriction_agrees(target, other, s)? && !self.leq(f, g) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Minimum size of an Occam set for `f`, with the lexicographically least
    /// witness of that size.
    pub fn radius(&self, f: usize) -> Result<Radius> {
        let constraints = self.occam_constraints(f)?;
        let bits = min_hitting_set_lex(&constraints, self.domain_size);
        Ok(Radius {
            value: bits.count_ones() as usize,
            witness: SubsetMask::from_bits(bits, self.domain_size).expect("witness inside domain"),
        })
    }

    /// Radius by sweeping subsets in canonical order with the literal Occam check.
    pub fn radius_by_sweep(&self, f: usize, budget: Budget) -> Result<Outcome<Radius>> {
        self.check_index(f)?;
        self.check_sweepable()?;
        for (visited, bits) in canonical_subsets(self.domain_size).enumerate() {
            if visited as u64 >= budget.0 {
                return Ok(Outcome::BudgetExceeded);
            }
            let s = SubsetMask::from_bits(bits, self.domain_size).expect("subset inside domain");
            if self.is_occam(f, &s)? {
                return Ok(Outcome::Computed(Radius { value: s.len(), witness: s }));
            }
        }
        unreachable!("the full domain is Occam for every member of a family of distinct functions")
    }

    /// Members that are Occam on `s`, as a set over member indices.
    pub fn fusion_set(&self, s: &SubsetMask) -> Result<SubsetMask> {
        self.check_subset(s)?;
        match s.as_u64() {
            Some(bits) if self.domain_size <= MAX_SWEEP_DOMAIN => {
                let mut out = SubsetMask::empty(self.len());
                Classifier::new(self).fusion_into(bits, &mut out);
                Ok(out)
            }
            _ => {
                let mut out = SubsetMask::empty(self.len());
                for f in 0..self.len() {
                    if self.is_occam(f, s)? {
                        out.insert(f);
                    }
                }
                Ok(out)
            }
        }
    }

    /// Minimum `|F_S|` over all `S` whose fusion set contains `f`.
    ///
    /// Branch and bound over hitting sets of the Occam constraints of `f`;
    /// `|F_S|` only grows as `S` grows, so a partial `S` whose fusion set is
    /// already no smaller than the best complete one is cut. Every search node
    /// counts against the budget.
    pub fn fusion_number(&self, f: usize, budget: Budget) -> Result<Outcome<usize>> {
        self.check_index(f)?;
        if self.domain_size > MAX_SWEEP_DOMAIN {
            return Ok(Outcome::BudgetExceeded);
        }
        let constraints = self.occam_constraints(f)?;
        let mut search = FusionSearch {
            classifier: Classifier::new(self),
            constraints,
            best: usize::MAX,
            visited: 0,
            budget: budget.0,
            exceeded: false,
        };
        search.descend(0, 0);
        if search.exceeded {
            Ok(Outcome::BudgetExceeded)
        } else {
            Ok(Outcome::Computed(search.best))
        }
    }

    /// Fusion number by evaluating `F_S` for every subset of the domain.
    pub fn fusion_number_by_sweep(&self, f: usize, budget: Budget) -> Result<Outcome<usize>> {
        self.check_index(f)?;
        if !budget.allows_sweep(self.domain_size) {
            return Ok(Outcome::BudgetExceeded);
        }
        let total = 1u64 << self.domain_size;
        let best = chunk_ranges(total)
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut classifier = Classifier::new(self);
                let mut best = usize::MAX;
                for s in lo..hi {
                    if let Some(n) = classifier.fusion_count_if_member(s, f) {
                        best = best.min(n);
                    }
                }
                best
            })
            .min()
            .unwrap_or(usize::MAX);
        Ok(Outcome::Computed(best))
    }

    /// The first ascendent: the distinct fusion sets `F_S`, `S ⊆ X`, as 0/1
    /// functions on the member list, ordered by inclusion. Members appear in
    /// the order their first `S` occurs in the canonical subset order.
    pub fn ascendent(&self, budget: Budget) -> Result<Outcome<FunctionFamily>> {
        if !budget.allows_sweep(self.domain_size) {
            return Ok(Outcome::BudgetExceeded);
        }
        let sets = self.distinct_fusion_sets();
        let masks: Vec<SubsetMask> = sets.into_iter().map(|(_, m)| m).collect();
        Ok(Outcome::Computed(FunctionFamily::from_masks(self.len(), &masks, OrderKind::Pointwise)?))
    }

    /// Distinct fusion sets with the first subset producing each, in canonical order.
    pub fn distinct_fusion_sets(&self) -> Vec<(u64, SubsetMask)> {
        assert!(self.domain_size < 64);
        let total = 1u64 << self.domain_size;
        let merged = chunk_ranges(total)
            .into_par_iter()
            .map(|(lo, hi)| {
                let mut classifier = Classifier::new(self);
                let mut local: FxHashMap<SubsetMask, u64> = FxHashMap::default();
                let mut scratch = SubsetMask::empty(self.len());
                for s in lo..hi {
                    classifier.fusion_into(s, &mut scratch);
                    match local.get_mut(&scratch) {
                        Some(first) => {
                            if canonical_cmp(s, *first).is_lt() {
                                *first = s;
                            }
                        }
                        None => {
                            local.insert(scratch.clone(), s);
                        }
                    }
                }
                local
            })
            .reduce(FxHashMap::default, |mut a, b| {
                for (set, s) in b {
                    a.entry(set).and_modify(|first| {
                        if canonical_cmp(s, *first).is_lt() {
                            *first = s;
                        }
                    }).or_insert(s);
                }
                a
            });
        let mut out: Vec<(u64, SubsetMask)> = merged.into_iter().map(|(set, s)| (s, set)).collect();
        out.sort_by(|a, b| canonical_cmp(a.0, b.0));
        out
    }

    /// `F_0` (when a maximum exists) followed by `F_1 ..= F_k`, each the fusion
    /// number of the maximum of the corresponding ascendent.
    ///
    /// An ascendent that does not fit the budget makes its term and all later
    /// terms `budget_exceeded`; a fusion-number search that does not fit only
    /// affects its own term.
    pub fn fusion_sequence(&self, k: usize, budget: Budget) -> Result<Vec<Term>> {
        let mut terms = Vec::with_capacity(k + 1);
        terms.push(match self.maximum() {
            Some(top) => term_of(self.fusion_number(top, budget)?),
            None => Term::no_maximum(),
        });
        let mut current = self.clone();
        for _ in 1..=k {
            match current.ascendent(budget)? {
                Outcome::Computed(next) => {
                    let top = next.maximum().expect("every ascendent contains the all-ones function");
                    terms.push(term_of(next.fusion_number(top, budget)?));
                    current = next;
                }
                Outcome::BudgetExceeded => break,
            }
        }
        terms.resize(k + 1, Term::exceeded());
        Ok(terms)
    }
}

pub(crate) fn term_of(outcome: Outcome<usize>) -> Term {
    match outcome {
        Outcome::Computed(v) => Term::computed(v as u64),
        Outcome::BudgetExceeded => Term::exceeded(),
    }
}

fn chunk_ranges(total: u64) -> Vec<(u64, u64)> {
    const CHUNK: u64 = 1 << 12;
    (0..total.div_ceil(CHUNK)).map(|c| (c * CHUNK, ((c + 1) * CHUNK).min(total))).collect()
}

/// Computes fusion sets by partitioning members on their restriction to `S`.
/// A member is Occam on `S` iff it is the least element of its class.
struct Classifier<'a> {
    family: &'a FunctionFamily,
    meet: FxHashMap<u64, u64>,
    count: FxHashMap<u64, u32>,
    classes: HashMap<Vec<u32>, Vec<usize>>,
}

impl<'a> Classifier<'a> {
    fn new(family: &'a FunctionFamily) -> Self {
        Self {
            family,
            meet: FxHashMap::default(),
            count: FxHashMap::default(),
            classes: HashMap::new(),
        }
    }

    /// Calls `emit` on each member that is Occam on `s`.
    fn for_each_occam(&mut self, s: u64, mut emit: impl FnMut(usize)) {
        let fam = self.family;
        match (&fam.order, &fam.packed) {
            (OrderKind::Pointwise, Some(p)) => {
                // least element of a 0/1 class exists iff the class meet is a member
                self.meet.clear();
                for &m in p {
                    self.meet.entry(m & s).and_modify(|a| *a &= m).or_insert(m);
                }
                for (i, &m) in p.iter().enumerate() {
                    if self.meet[&(m & s)] == m {
                        emit(i);
                    }
                }
            }
            (OrderKind::Equality, Some(p)) => {
                self.count.clear();
                for &m in p {
                    *self.count.entry(m & s).or_insert(0) += 1;
                }
                for (i, &m) in p.iter().enumerate() {
                    if self.count[&(m & s)] == 1 {
                        emit(i);
                    }
                }
            }
            _ => {
                self.classes.clear();
                for (i, f) in fam.functions.iter().enumerate() {
                    let key: Vec<u32> = BitIter(s).map(|x| f.values[x]).collect();
                    self.classes.entry(key).or_default().push(i);
                }
                let mut hits = Vec::new();
                for class in self.classes.values() {
                    let mut cand = class[0];
                    for &g in &class[1..] {
                        if fam.leq(g, cand) {
                            cand = g;
                        }
                    }
                    if class.iter().all(|&g| fam.leq(cand, g)) {
                        hits.push(cand);
                    }
                }
                hits.sort_unstable();
                hits.into_iter().for_each(emit);
            }
        }
    }

    fn fusion_into(&mut self, s: u64, out: &mut SubsetMask) {
        *out = SubsetMask::empty(self.family.len());
        self.for_each_occam(s, |i| out.insert(i));
    }

    fn fusion_count(&mut self, s: u64) -> usize {
        let mut n = 0;
        self.for_each_occam(s, |_| n += 1);
        n
    }

    fn fusion_count_if_member(&mut self, s: u64, f: usize) -> Option<usize> {
        let mut n = 0;
        let mut member = false;
        self.for_each_occam(s, |i| {
            n += 1;
            member |= i == f;
        });
        member.then_some(n)
    }
}

struct FusionSearch<'a> {
    classifier: Classifier<'a>,
    constraints: Vec<u64>,
    best: usize,
    visited: u64,
    budget: u64,
    exceeded: bool,
}

impl FusionSearch<'_> {
    fn descend(&mut self, s: u64, excluded: u64) {
        if self.exceeded {
            return;
        }
        self.visited += 1;
        if self.visited > self.budget {
            self.exceeded = true;
            return;
        }
        let size = self.classifier.fusion_count(s);
        if size >= self.best {
            return;
        }
        // branch on the unhit constraint with the fewest admissible points
        let mut pick: Option<u64> = None;
        for &c in &self.constraints {
            if c & s != 0 {
                continue;
            }
            let avail = c & !excluded;
            if avail == 0 {
                return;
            }
            if pick.is_none_or(|p| avail.count_ones() < p.count_ones()) {
                pick = Some(avail);
            }
        }
        match pick {
            None => self.best = size,
            Some(avail) => {
                let mut ex = excluded;
                for x in BitIter(avail) {
                    self.descend(s | 1 << x, ex);
                    ex |= 1 << x;
                }
            }
        }
    }
}

/// Lexicographically least among the minimum-size sets hitting every constraint.
/// Constraints must be nonempty masks over `{0, .., n - 1}`.
pub fn min_hitting_set_lex(constraints: &[u64], n: usize) -> u64 {
    if constraints.is_empty() {
        return 0;
    }
    debug_assert!(constraints.iter().all(|&c| c != 0 && c & !low_bits(n) == 0));
    let start = disjoint_lower_bound(constraints.iter().copied()).max(1);
    for k in start..=n {
        if let Some(s) = hitting_dfs(constraints, n, 0, 0, k) {
            return s;
        }
    }
    unreachable!("the full domain hits every nonempty constraint")
}

/// Greedy count of pairwise disjoint constraints.
fn disjoint_lower_bound(sets: impl Iterator<Item = u64>) -> usize {
    let mut used = 0u64;
    let mut count = 0;
    let mut sets: Vec<u64> = sets.collect();
    sets.sort_by_key(|s| s.count_ones());
    for s in sets {
        if s & used == 0 {
            used |= s;
            count += 1;
        }
    }
    count
}

fn hitting_dfs(constraints: &[u64], n: usize, chosen: u64, next: usize, k_left: usize) -> Option<u64> {
    let allowed = !low_bits(next) & low_bits(n);
    let mut unhit = Vec::new();
    let mut limit = n;
    for &c in constraints {
        if c & chosen != 0 {
            continue;
        }
        let avail = c & allowed;
        if avail == 0 {
            return None;
        }
        // points are chosen in increasing order, so the next one must not
        // pass the largest admissible point of any unhit constraint
        limit = limit.min(63 - avail.leading_zeros() as usize);
        unhit.push(avail);
    }
    if unhit.is_empty() {
        return Some(chosen);
    }
    if k_left == 0 || disjoint_lower_bound(unhit.iter().copied()) > k_left {
        return None;
    }
    let useful = unhit.iter().fold(0u64, |m, &c| m | c);
    for x in next..=limit {
        if useful >> x & 1 == 0 {
            continue;
        }
        if let Some(s) = hitting_dfs(constraints, n, chosen | 1 << x, x + 1, k_left - 1) {
            return Some(s);
        }
    }
    None
}
