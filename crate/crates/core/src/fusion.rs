//! Fusion sequences of the subgroup family ordered by inclusion.
//!
//! A set `S` of elements fuses exactly the subgroups generated by subsets of
//! `S`, so the first ascendent is obtained from closures alone; later terms
//! run through the generic machinery in [`crate::poset`].

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Deserialize, Serialize};

use crate::groups::{FiniteGroup, SubgroupMask};
use crate::poset::{term_of, Budget, FunctionFamily, OrderKind, Outcome, PosetError, Term, TermStatus};
use crate::subset::{canonical_cmp, canonical_subsets, BitIter, SubsetMask};

/// Subsets of `s` at or below this size are swept directly.
const SWEEP_LIMIT: usize = 16;

fn sorted(mut subs: Vec<SubgroupMask>) -> Vec<SubgroupMask> {
    subs.sort_by(|a, b| canonical_cmp(a.bits(), b.bits()));
    subs.dedup();
    subs
}

/// `{⟨R⟩ : R ⊆ s}` by closing every subset of `s`.
pub fn group_fusion_set_by_sweep(g: &FiniteGroup, s: u64) -> Vec<SubgroupMask> {
    let elems: Vec<usize> = BitIter(s).collect();
    let mut seen = FxHashSet::default();
    for r in 0..1u64 << elems.len() {
        let seed = BitIter(r).fold(0u64, |m, i| m | 1 << elems[i]);
        seen.insert(g.closure(seed));
    }
    sorted(seen.into_iter().collect())
}

/// `{⟨R⟩ : R ⊆ s}` by adjoining elements of `s` to known subgroups until
/// nothing new appears.
pub fn group_fusion_set_by_fixpoint(g: &FiniteGroup, s: u64) -> Vec<SubgroupMask> {
    let mut found: FxHashSet<SubgroupMask> = FxHashSet::default();
    let mut frontier = vec![g.trivial()];
    found.insert(g.trivial());
    while let Some(h) = frontier.pop() {
        for x in BitIter(s & !h.bits()) {
            let k = g.closure(h.bits() | 1 << x);
            if found.insert(k) {
                frontier.push(k);
            }
        }
    }
    sorted(found.into_iter().collect())
}

/// The subgroups generated by subsets of `s`, in canonical order.
pub fn group_fusion_set(g: &FiniteGroup, s: &SubsetMask) -> Vec<SubgroupMask> {
    let bits = s.as_u64().expect("group elements fit one word");
    if s.len() <= SWEEP_LIMIT {
        group_fusion_set_by_sweep(g, bits)
    } else {
        group_fusion_set_by_fixpoint(g, bits)
    }
}

/// `2^rank(G)`.
pub fn f0_via_rank(g: &FiniteGroup) -> u64 {
    1u64 << g.rank()
}

/// The first ascendent of the subgroup family under inclusion, built from
/// closures. Member order matches [`FunctionFamily::ascendent`].
pub fn first_ascendent(g: &FiniteGroup, budget: Budget) -> Result<Outcome<FunctionFamily>, PosetError> {
    let n = g.order();
    if !budget.allows_sweep(n) {
        return Ok(Outcome::BudgetExceeded);
    }
    let subs = g.subgroups();
    let index: FxHashMap<u64, usize> = subs.iter().enumerate().map(|(i, h)| (h.bits(), i)).collect();
    // join[h * n + x]: index of the subgroup generated by subgroup h and x
    let join: Vec<usize> = subs
        .iter()
        .flat_map(|h| (0..n).map(move |x| (h, x)))
        .map(|(h, x)| index[&g.closure(h.bits() | 1 << x).bits()])
        .collect();
    let words = subs.len().div_ceil(64);
    let trivial = index[&g.trivial().bits()];
    // fused[s]: the fusion set of s over subgroup indices, built from s minus its top element
    let mut fused = vec![0u64; (1usize << n) * words];
    fused[trivial / 64] |= 1 << (trivial % 64);
    for s in 1usize..1 << n {
        let x = usize::BITS as usize - 1 - s.leading_zeros() as usize;
        let parent = s ^ 1 << x;
        let (head, tail) = fused.split_at_mut(s * words);
        let src = &head[parent * words..(parent + 1) * words];
        let dst = &mut tail[..words];
        dst.copy_from_slice(src);
        for (wi, &w) in src.iter().enumerate() {
            for b in BitIter(w) {
                let k = join[(wi * 64 + b) * n + x];
                dst[k / 64] |= 1 << (k % 64);
            }
        }
    }
    let mut seen: FxHashSet<&[u64]> = FxHashSet::default();
    let mut masks = Vec::new();
    for s in canonical_subsets(n) {
        let set = &fused[s as usize * words..(s as usize + 1) * words];
        if seen.insert(set) {
            let members = set.iter().enumerate().flat_map(|(wi, &w)| BitIter(w).map(move |b| wi * 64 + b));
            let mask = SubsetMask::from_indices(subs.len(), members).expect("indices within family");
            masks.push(mask);
        }
    }
    Ok(Outcome::Computed(FunctionFamily::from_masks(subs.len(), &masks, OrderKind::Pointwise)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTerm {
    pub index: usize,
    pub value: Option<u64>,
    pub status: TermStatus,
}

impl FusionTerm {
    pub fn term(&self) -> Term {
        Term { value: self.value, status: self.status }
    }
}

/// `F_0 ..= F_k` for one group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionReport {
    pub group: String,
    pub terms: Vec<FusionTerm>,
    pub budget: u64,
    pub f0_via_rank: u64,
    /// Whether the direct `F_0` equals `2^rank`; absent when `F_0` was not
    /// computed directly.
    pub f0_agrees: Option<bool>,
}

impl FusionReport {
    pub fn values(&self) -> Vec<Option<u64>> {
        self.terms.iter().map(|t| t.value).collect()
    }

    pub fn any_exceeded(&self) -> bool {
        self.terms.iter().any(|t| t.status == TermStatus::BudgetExceeded)
    }

    /// Terms joined by ", " with `?` for budget-exceeded cells.
    pub fn row(&self) -> String {
        self.terms.iter().map(|t| t.term().to_string()).collect::<Vec<_>>().join(", ")
    }
}

/// `F_0 ..= F_k` of the subgroup family under inclusion.
pub fn fusion_sequence_group(g: &FiniteGroup, k: usize, budget: Budget) -> Result<FusionReport, PosetError> {
    let base = g.characteristic_family(OrderKind::Pointwise)?;
    let top = base.maximum().expect("the whole group is the largest subgroup");
    let via_rank = f0_via_rank(g);
    let (f0, agrees) = match base.fusion_number(top, budget)? {
        Outcome::Computed(v) => (Term::computed(v as u64), Some(v as u64 == via_rank)),
        Outcome::BudgetExceeded => (Term::computed(via_rank), None),
    };
    let mut terms = vec![f0];
    if k >= 1 {
        if let Outcome::Computed(mut current) = first_ascendent(g, budget)? {
            loop {
                let top = current.maximum().expect("every ascendent contains the all-ones function");
                terms.push(term_of(current.fusion_number(top, budget)?));
                if terms.len() > k {
                    break;
                }
                match current.ascendent(budget)? {
                    Outcome::Computed(next) => current = next,
                    Outcome::BudgetExceeded => break,
                }
            }
        }
    }
    terms.resize(k + 1, Term::exceeded());
    Ok(FusionReport {
        group: g.name().to_string(),
        terms: terms.into_iter().enumerate().map(|(index, t)| FusionTerm { index, value: t.value, status: t.status }).collect(),
        budget: budget.0,
        f0_via_rank: via_rank,
        f0_agrees: agrees,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodicityReport {
    pub group: String,
    pub prefix: Vec<u64>,
    /// Shortest period seen at least twice in the prefix.
    pub period: Option<usize>,
}

/// Shortest `p` with `2p <= prefix.len()` and `prefix[i] = prefix[i + p]` throughout.
pub fn shortest_period(prefix: &[u64]) -> Option<usize> {
    (1..=prefix.len() / 2).find(|&p| (0..prefix.len() - p).all(|i| prefix[i] == prefix[i + p]))
}

/// Computes `F_0 ..= F_k` and reports the shortest period of the computed prefix.
pub fn periodicity_probe(g: &FiniteGroup, k: usize, budget: Budget) -> Result<PeriodicityReport, PosetError> {
    let report = fusion_sequence_group(g, k, budget)?;
    let prefix: Vec<u64> = report.terms.iter().map_while(|t| t.value).collect();
    Ok(PeriodicityReport { group: report.group, period: shortest_period(&prefix), prefix })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;

    fn words(subs: &[SubgroupMask], n: usize) -> Vec<String> {
        subs.iter().map(|h| h.to_word(n)).collect()
    }

    #[test]
    fn z4_fusion_sets() {
        let g = make_group("Z4").unwrap();
        let s = |bits: u64| SubsetMask::from_bits(bits, 4).unwrap();
        assert_eq!(words(&group_fusion_set(&g, &s(0)), 4), ["1000"]);
        assert_eq!(words(&group_fusion_set(&g, &s(0b0010)), 4), ["1000", "1111"]);
        assert_eq!(words(&group_fusion_set(&g, &s(0b1100)), 4), ["1000", "1010", "1111"]);
    }

    #[test]
    fn first_ascendent_matches_generic() {
        for spec in ["Z4", "Z6", "S3", "Z2xZ2", "D4"] {
            let g = make_group(spec).unwrap();
            let fast = first_ascendent(&g, Budget::default()).unwrap();
            let slow = g.characteristic_family(OrderKind::Pointwise).unwrap().ascendent(Budget::default()).unwrap();
            assert_eq!(fast, slow, "{spec}");
        }
    }

    #[test]
    fn small_sequences() {
        let seq = |spec: &str| fusion_sequence_group(&make_group(spec).unwrap(), 3, Budget::default()).unwrap().values();
        assert_eq!(seq("Z4"), [Some(2), Some(4), Some(2), Some(4)]);
        assert_eq!(seq("Z6"), [Some(2), Some(4), Some(4), Some(8)]);
        assert_eq!(seq("Z5"), [Some(2), Some(2), Some(2), Some(2)]);
        let z1 = fusion_sequence_group(&make_group("Z1").unwrap(), 2, Budget::default()).unwrap();
        assert_eq!(z1.values(), [Some(1), Some(1), Some(1)]);
        assert_eq!(z1.f0_agrees, Some(true));
    }

    #[test]
    fn over_budget_terms() {
        let g = make_group("Z4").unwrap();
        let r = fusion_sequence_group(&g, 2, Budget::from_log2(3)).unwrap();
        assert_eq!(r.values(), [Some(2), None, None]);
        assert!(r.any_exceeded());
        assert_eq!(r.row(), "2, ?, ?");
    }

    #[test]
    fn periods() {
        assert_eq!(shortest_period(&[2, 4, 2, 4]), Some(2));
        assert_eq!(shortest_period(&[2, 2, 2, 2]), Some(1));
        assert_eq!(shortest_period(&[2, 4, 4, 8]), None);
        assert_eq!(shortest_period(&[2, 4, 2]), None);
        let p = periodicity_probe(&make_group("Z8").unwrap(), 3, Budget::default()).unwrap();
        assert_eq!((p.prefix, p.period), (vec![2, 8, 2, 8], Some(2)));
    }
}
