//! Subgroup radii in the family of characteristic functions under equality,
//! `Occ(G)`, and the non-embedding test that follows from its monotonicity.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::groups::{FiniteGroup, GroupError, SubgroupMask};
use crate::poset::{min_hitting_set_lex, Budget, FunctionFamily, OrderKind, Outcome, PosetError};
use crate::subset::SubsetMask;

#[derive(Debug, thiserror::Error)]
pub enum RadiusError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

pub type Result<T> = std::result::Result<T, RadiusError>;

/// A subgroup radius with the lexicographically least minimum Occam set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubgroupRadius {
    pub value: usize,
    pub witness: SubsetMask,
}

fn equality_family(g: &FiniteGroup) -> Result<(Vec<SubgroupMask>, FunctionFamily)> {
    let subs = g.subgroups();
    let family = g.characteristic_family(OrderKind::Equality)?;
    Ok((subs, family))
}

/// Radius of `χ_H`: the least `|S|` such that `H` is the only subgroup `K`
/// with `K ∩ S = H ∩ S`.
pub fn subgroup_radius(g: &FiniteGroup, h: SubgroupMask) -> Result<SubgroupRadius> {
    let h = g.subgroup(h.bits())?;
    let (subs, family) = equality_family(g)?;
    let idx = subs.iter().position(|&k| k == h).expect("enumeration contains every subgroup");
    let r = family.radius(idx)?;
    Ok(SubgroupRadius { value: r.value, witness: r.witness })
}

/// The same radius by sweeping subsets in canonical order with the literal
/// Occam test.
pub fn subgroup_radius_by_sweep(g: &FiniteGroup, h: SubgroupMask, budget: Budget) -> Result<Outcome<SubgroupRadius>> {
    let h = g.subgroup(h.bits())?;
    let (subs, family) = equality_family(g)?;
    let idx = subs.iter().position(|&k| k == h).expect("enumeration contains every subgroup");
    Ok(match family.radius_by_sweep(idx, budget)? {
        Outcome::Computed(r) => Outcome::Computed(SubgroupRadius { value: r.value, witness: r.witness }),
        Outcome::BudgetExceeded => Outcome::BudgetExceeded,
    })
}

/// `Occ(G)`, the radius of the trivial subgroup, as a minimum set meeting the
/// non-identity part of every minimal subgroup.
pub fn occ_of_group(g: &FiniteGroup) -> SubgroupRadius {
    let e = 1u64 << g.identity();
    let constraints: Vec<u64> = g.minimal_subgroups().iter().map(|h| h.bits() & !e).collect();
    let bits = min_hitting_set_lex(&constraints, g.order());
    SubgroupRadius {
        value: bits.count_ones() as usize,
        witness: SubsetMask::from_bits(bits, g.order()).expect("witness inside group"),
    }
}

/// `Occ(G)` straight from the definition.
pub fn occ_of_group_by_sweep(g: &FiniteGroup, budget: Budget) -> Result<Outcome<SubgroupRadius>> {
    subgroup_radius_by_sweep(g, g.trivial(), budget)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusEntry {
    pub mask: u64,
    pub chi: String,
    pub radius: usize,
    pub witness: String,
    pub witness_elements: Vec<String>,
}

/// Radii of every subgroup, in canonical subgroup order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RadiusReport {
    pub group: String,
    pub order: usize,
    pub entries: Vec<RadiusEntry>,
}

impl RadiusReport {
    pub fn radii(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.radius).collect()
    }
}

pub fn radius_report(g: &FiniteGroup) -> Result<RadiusReport> {
    let (subs, family) = equality_family(g)?;
    let entries = subs
        .par_iter()
        .enumerate()
        .map(|(i, &h)| {
            let r = family.radius(i)?;
            Ok(RadiusEntry {
                mask: h.bits(),
                chi: h.to_word(g.order()),
                radius: r.value,
                witness: r.witness.to_string(),
                witness_elements: r.witness.iter().map(|x| g.label(x).to_string()).collect(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(RadiusReport { group: g.name().to_string(), order: g.order(), entries })
}

/// Whether the radius of the whole group equals its rank.
pub fn check_rank_theorem(g: &FiniteGroup) -> Result<bool> {
    Ok(subgroup_radius(g, g.full())?.value == g.rank())
}

/// Whether `Occ(H) <= Occ(G)` for every subgroup `H`, each taken as a group
/// in its own right.
pub fn check_monotonicity(g: &FiniteGroup) -> Result<bool> {
    let top = occ_of_group(g).value;
    for h in g.subgroups() {
        let sub = g.subgroup_as_group(h)?;
        if occ_of_group(&sub).value > top {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True when `Occ(h) > Occ(g)`, which rules out `h` embedding in `g`; false
/// means no conclusion.
pub fn rule_out_embedding(h: &FiniteGroup, g: &FiniteGroup) -> bool {
    occ_of_group(h).value > occ_of_group(g).value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::make_group;

    #[test]
    fn d4_radii() {
        let g = make_group("D4").unwrap();
        let report = radius_report(&g).unwrap();
        let mut radii = report.radii();
        radii.sort();
        assert_eq!(radii, [2, 2, 2, 2, 2, 2, 3, 3, 4, 5]);
        assert_eq!(subgroup_radius(&g, g.full()).unwrap().value, 2);
        let center = g.subgroup(0b101).unwrap();
        assert_eq!(subgroup_radius(&g, center).unwrap().value, 4);
        assert_eq!(occ_of_group(&g).value, 5);
    }

    #[test]
    fn small_occ_values() {
        for (spec, occ) in [("Z1", 0), ("Z2", 1), ("Q8", 1), ("Z6", 2), ("S3", 4), ("Dic3", 2), ("A4", 7), ("D6", 8)] {
            let g = make_group(spec).unwrap();
            assert_eq!(occ_of_group(&g).value, occ, "{spec}");
        }
    }

    #[test]
    fn sweep_agrees_with_hitting_set() {
        for spec in ["Z6", "Z2xZ2", "D4", "Q8", "Z1"] {
            let g = make_group(spec).unwrap();
            let swept = occ_of_group_by_sweep(&g, Budget::default()).unwrap().computed().unwrap();
            assert_eq!(swept, occ_of_group(&g), "{spec}");
        }
    }

    #[test]
    fn rejects_non_subgroups() {
        let g = make_group("Z4").unwrap();
        assert!(subgroup_radius(&g, SubgroupMask(0b0011)).is_err());
    }

    #[test]
    fn theorems_and_embeddings() {
        for spec in ["Z1", "Z7", "D4", "A4"] {
            let g = make_group(spec).unwrap();
            assert!(check_rank_theorem(&g).unwrap(), "{spec}");
            assert!(check_monotonicity(&g).unwrap(), "{spec}");
        }
        let g = |s: &str| make_group(s).unwrap();
        assert!(rule_out_embedding(&g("Z2xZ2"), &g("Q8")));
        assert!(rule_out_embedding(&g("S3"), &g("Dic3")));
        assert!(!rule_out_embedding(&g("Z2"), &g("Z4")));
    }
}
