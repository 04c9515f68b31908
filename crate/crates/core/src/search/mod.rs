//! Exhaustive structure search by orienting every `k`-efficient separation.
//!
//! Each unordered separation `{A, X ∖ A}` of order `<= k` contributes `A`,
//! `X ∖ A`, or both to the family (every kind requires at least one
//! orientation). Separations are processed in ascending order of their
//! smaller side and partial assignments are cut as soon as a compiled
//! axiom pattern is violated. Every emitted family is re-checked by
//! [`check_structure`](crate::structures::check_structure).

mod constraints;
pub mod hunt;
pub mod random;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::connectivity::ConnectivitySystem;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::separation::SeparationFamily;
use crate::structures::{passes, StructureKind, Variant};

use constraints::{compile, Membership, Patterns};

pub use hunt::{hunt, Counterexample, HuntCorpus, HuntStatus, HuntVerdict, Problem};
pub use random::{generate_random_system, random_corpus};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_ground: usize,
    /// Cap on unordered `k`-efficient separations.
    pub max_separations: usize,
    /// Cap on orientation choices tried.
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_ground: 8, max_separations: 128, max_nodes: 20_000_000, max_time: None }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Complete,
    BudgetExhausted,
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    /// Canonically ordered, duplicate free.
    pub families: Vec<SeparationFamily>,
    pub status: SearchStatus,
    pub nodes: u64,
    /// Leaves that satisfied every compiled pattern but failed the literal
    /// check. Always zero unless the compiled encoding is wrong.
    pub leaf_rejections: u64,
}

impl SearchOutcome {
    pub fn is_complete(&self) -> bool {
        self.status == SearchStatus::Complete
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Pruning {
    Enabled,
    /// Brute force over every orientation assignment.
    Disabled,
}

struct Search<'a> {
    system: &'a ConnectivitySystem,
    kind: StructureKind,
    variant: Variant,
    k: u32,
    pairs: Vec<(u32, u32)>,
    patterns: Option<Patterns>,
    state: Vec<Membership>,
    budget: &'a SearchBudget,
    started: Instant,
    nodes: u64,
    exhausted: bool,
    stop_after: Option<usize>,
    found: Vec<SeparationFamily>,
    leaf_rejections: u64,
}

impl Search<'_> {
    fn out_of_budget(&mut self) -> bool {
        if self.nodes >= self.budget.max_nodes
            || self.budget.max_time.is_some_and(|t| self.started.elapsed() > t)
        {
            self.exhausted = true;
        }
        self.exhausted
    }

    fn consistent(&self, masks: [u32; 2]) -> bool {
        let Some(patterns) = &self.patterns else { return true };
        masks
            .iter()
            .all(|&m| patterns.watching(m).all(|p| !p.violated(&self.state)))
    }

    fn done(&self) -> bool {
        self.exhausted || self.stop_after.is_some_and(|cap| self.found.len() >= cap)
    }

    fn descend(&mut self, depth: usize) -> Result<()> {
        if depth == self.pairs.len() {
            return self.leaf();
        }
        let (a, b) = self.pairs[depth];
        let options = [
            (Membership::In, Membership::Out),
            (Membership::Out, Membership::In),
            (Membership::In, Membership::In),
        ];
        for (sa, sb) in options {
            if self.done() || self.out_of_budget() {
                break;
            }
            self.nodes += 1;
            self.state[a as usize] = sa;
            self.state[b as usize] = sb;
            if self.consistent([a, b]) {
                self.descend(depth + 1)?;
            }
        }
        self.state[a as usize] = Membership::Unknown;
        self.state[b as usize] = Membership::Unknown;
        Ok(())
    }

    fn leaf(&mut self) -> Result<()> {
        let sides = (0..self.state.len() as u32)
            .filter(|&m| self.state[m as usize] == Membership::In)
            .map(SubsetMask);
        let family = SeparationFamily::from_sides(self.system, self.k, sides)?;
        if passes(self.system, self.k, &family, self.kind, self.variant)? {
            self.found.push(family);
        } else if self.patterns.is_some() {
            self.leaf_rejections += 1;
        }
        Ok(())
    }
}

fn run(
    kind: StructureKind,
    variant: Variant,
    system: &ConnectivitySystem,
    k: u32,
    budget: &SearchBudget,
    pruning: Pruning,
    stop_after: Option<usize>,
) -> Result<SearchOutcome> {
    if kind == StructureKind::FilterBase {
        return Err(Error::InvalidParameter(
            "filter bases are validated, not enumerated".into(),
        ));
    }
    let n = system.n();
    if n > budget.max_ground {
        return Err(Error::LimitExceeded { n, limit: budget.max_ground, what: "structure search" });
    }
    let orders = system.order_table()?;
    let full = system.full().bits();
    let pairs: Vec<(u32, u32)> = (0..=full)
        .filter(|&a| a < full ^ a && orders[a as usize] <= k)
        .map(|a| (a, full ^ a))
        .collect();
    if pairs.len() > budget.max_separations {
        return Err(Error::LimitExceeded {
            n: pairs.len(),
            limit: budget.max_separations,
            what: "unordered separations in structure search",
        });
    }
    let patterns = match pruning {
        Pruning::Enabled => Some(compile(kind, variant, n, k, orders)),
        Pruning::Disabled => None,
    };
    let mut state = vec![Membership::Unknown; 1 << n];
    for (a, s) in state.iter_mut().enumerate() {
        if orders[a] > k {
            *s = Membership::Out;
        }
    }
    let mut search = Search {
        system,
        kind,
        variant,
        k,
        pairs,
        patterns,
        state,
        budget,
        started: Instant::now(),
        nodes: 0,
        exhausted: false,
        stop_after,
        found: Vec::new(),
        leaf_rejections: 0,
    };
    search.descend(0)?;
    let mut families = search.found;
    families.sort_by_key(SeparationFamily::key);
    families.dedup();
    Ok(SearchOutcome {
        families,
        status: if search.exhausted { SearchStatus::BudgetExhausted } else { SearchStatus::Complete },
        nodes: search.nodes,
        leaf_rejections: search.leaf_rejections,
    })
}

/// Every family of `kind` and order `k + 1` on `system`.
pub fn enumerate_all(
    kind: StructureKind,
    variant: Variant,
    system: &ConnectivitySystem,
    k: u32,
    budget: &SearchBudget,
) -> Result<SearchOutcome> {
    run(kind, variant, system, k, budget, Pruning::Enabled, None)
}

/// [`enumerate_all`] with an explicit pruning switch.
pub fn enumerate_with(
    kind: StructureKind,
    variant: Variant,
    system: &ConnectivitySystem,
    k: u32,
    budget: &SearchBudget,
    pruning: Pruning,
) -> Result<SearchOutcome> {
    run(kind, variant, system, k, budget, pruning, None)
}

/// The first family in search order, if any. `None` is definitive only
/// when the returned status is complete.
pub fn find_one(
    kind: StructureKind,
    variant: Variant,
    system: &ConnectivitySystem,
    k: u32,
    budget: &SearchBudget,
) -> Result<(Option<SeparationFamily>, SearchStatus)> {
    let outcome = run(kind, variant, system, k, budget, Pruning::Enabled, Some(1))?;
    Ok((outcome.families.into_iter().next(), outcome.status))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::structures::check_structure;

    fn keys(outcome: &SearchOutcome) -> Vec<Vec<u32>> {
        outcome.families.iter().map(SeparationFamily::key).collect()
    }

    #[test]
    fn min3_examples() {
        let s = corpus::sys_min3();
        let b = SearchBudget::default();
        let c = Variant::Corrected;
        let t0 = enumerate_all(StructureKind::Tangle, c, &s, 0, &b).unwrap();
        assert_eq!(keys(&t0), vec![vec![0]]);
        assert!(t0.is_complete());
        let t1 = enumerate_all(StructureKind::Tangle, c, &s, 1, &b).unwrap();
        assert!(t1.families.is_empty() && t1.is_complete());
        let u0 = enumerate_all(StructureKind::Ultrafilter, c, &s, 0, &b).unwrap();
        assert_eq!(keys(&u0), vec![vec![7]]);
    }

    #[test]
    fn find_one_examples() {
        let b = SearchBudget::default();
        let c = Variant::Corrected;
        let k4 = corpus::sys_k4();
        let (found, status) = find_one(StructureKind::Tangle, c, &k4, 2, &b).unwrap();
        let found = found.expect("order-3 tangle on K4");
        assert_eq!(status, SearchStatus::Complete);
        assert!(check_structure(&k4, 2, &found, StructureKind::Tangle, c).unwrap().pass);
        let p3 = corpus::sys_p3();
        let (none, status) = find_one(StructureKind::Tangle, c, &p3, 1, &b).unwrap();
        assert!(none.is_none());
        assert_eq!(status, SearchStatus::Complete);
        let (one, _) = find_one(StructureKind::Tangle, c, &corpus::sys_min3(), 0, &b).unwrap();
        assert_eq!(one.unwrap().key(), vec![0]);
    }

    #[test]
    fn pruning_is_sound_on_small_systems() {
        let b = SearchBudget::default();
        let mut systems = vec![corpus::sys_min3(), corpus::sys_p3(), corpus::sys_c4()];
        systems.push(corpus::min_cardinality(4));
        systems.push(generate_random_system(4, 3, 3, 11).unwrap());
        for s in &systems {
            for k in 0..=s.max_order() {
                for kind in StructureKind::ALL {
                    if kind == StructureKind::FilterBase {
                        continue;
                    }
                    for variant in [Variant::Literal, Variant::Corrected] {
                        let pruned = enumerate_with(kind, variant, s, k, &b, Pruning::Enabled).unwrap();
                        let brute = enumerate_with(kind, variant, s, k, &b, Pruning::Disabled).unwrap();
                        assert_eq!(keys(&pruned), keys(&brute), "{} k={k} {kind}", s.label());
                        assert_eq!(pruned.leaf_rejections, 0, "{} k={k} {kind}", s.label());
                    }
                }
            }
        }
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let budget = SearchBudget { max_nodes: 3, ..SearchBudget::default() };
        let s = corpus::sys_k4();
        let out = enumerate_all(StructureKind::WeakUltrafilter, Variant::Corrected, &s, 4, &budget).unwrap();
        assert_eq!(out.status, SearchStatus::BudgetExhausted);
    }

    #[test]
    fn limits_are_errors() {
        let s = corpus::min_cardinality(9);
        let err = enumerate_all(StructureKind::Tangle, Variant::Corrected, &s, 1, &SearchBudget::default());
        assert!(matches!(err, Err(Error::LimitExceeded { .. })));
        let fb = enumerate_all(
            StructureKind::FilterBase,
            Variant::Corrected,
            &corpus::sys_min3(),
            0,
            &SearchBudget::default(),
        );
        assert!(matches!(fb, Err(Error::InvalidParameter(_))));
    }
}
