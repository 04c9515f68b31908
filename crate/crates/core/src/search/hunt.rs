//! Counterexample hunters for the two weak-ultrafilter conjectures:
//!
//! * problem 9: every weak ultrafilter has non-empty triple intersections (F6);
//! * problem 10: `T` is a tangle iff its dual is a weak ultrafilter.
//!
//! A hunt that finds nothing is evidence with recorded coverage, not proof.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{enumerate_all, SearchBudget, SearchStatus};
use crate::connectivity::{build_system, ConnectivitySystem, Descriptor};
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::separation::{make_separation, SeparationFamily};
use crate::structures::{
    check_axiom, check_structure, witness_refails, AxiomId, AxiomResult, StructureKind, Variant,
};

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "u32", try_from = "u32")]
pub enum Problem {
    TripleIntersection,
    TangleDuality,
}

impl From<Problem> for u32 {
    fn from(p: Problem) -> u32 {
        match p {
            Problem::TripleIntersection => 9,
            Problem::TangleDuality => 10,
        }
    }
}

impl TryFrom<u32> for Problem {
    type Error = Error;

    fn try_from(v: u32) -> Result<Self> {
        match v {
            9 => Ok(Problem::TripleIntersection),
            10 => Ok(Problem::TangleDuality),
            _ => Err(Error::InvalidParameter(format!("unknown problem {}", v))),
        }
    }
}

impl fmt::Display for Problem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", u32::from(*self))
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HuntStatus {
    NoCounterexampleFound,
    CounterexampleFound,
    BudgetExhausted,
}

/// The systems a hunt runs over.
#[derive(Clone, Debug)]
pub struct HuntCorpus {
    pub label: String,
    pub seed: Option<u64>,
    pub systems: Vec<ConnectivitySystem>,
    /// Highest `k` examined; each system is also capped at its maximum order.
    pub k_max: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusInfo {
    pub label: String,
    pub seed: Option<u64>,
    pub systems: usize,
    pub k_max: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrderCoverage {
    pub k: u32,
    pub weak_ultrafilters: usize,
    pub tangles: Option<usize>,
    pub status: SearchStatus,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SystemCoverage {
    pub label: String,
    pub system: Descriptor,
    pub orders: Vec<OrderCoverage>,
}

/// A family on a concrete system together with the axiom it violates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counterexample {
    pub claim: String,
    pub system_label: String,
    pub system: Descriptor,
    pub k: u32,
    /// First sides of the offending family.
    pub sides: Vec<Vec<usize>>,
    pub axiom: AxiomId,
    pub witness: Vec<Vec<usize>>,
    pub element: Option<usize>,
}

impl Counterexample {
    fn new(
        claim: &str,
        system: &ConnectivitySystem,
        family: &SeparationFamily,
        failure: &AxiomResult,
    ) -> Self {
        Counterexample {
            claim: claim.to_string(),
            system_label: system.label().to_string(),
            system: system.descriptor().clone(),
            k: family.k(),
            sides: family.sides().map(SubsetMask::to_vec).collect(),
            axiom: failure.axiom,
            witness: failure.witness.iter().map(|s| s.first().to_vec()).collect(),
            element: failure.element,
        }
    }

    /// Rebuilds the system and family from the stored payload and confirms
    /// with the literal checkers that the axiom fails on the stored witness.
    pub fn refails(&self) -> Result<bool> {
        let system = build_system(self.system.clone())?;
        let n = system.n();
        let masks = |sides: &[Vec<usize>]| -> Result<Vec<SubsetMask>> {
            sides.iter().map(|s| SubsetMask::from_elements(n, s.iter().copied())).collect()
        };
        let family = SeparationFamily::from_sides(&system, self.k, masks(&self.sides)?)?;
        let fresh = check_axiom(&system, self.k, &family, self.axiom)?;
        let stored = AxiomResult {
            axiom: self.axiom,
            pass: false,
            witness: masks(&self.witness)?
                .into_iter()
                .map(|a| make_separation(&system, a))
                .collect::<Result<_>>()?,
            element: self.element,
        };
        Ok(!fresh.pass && witness_refails(&system, self.k, &family, &stored)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HuntVerdict {
    pub problem: Problem,
    pub corpus: CorpusInfo,
    pub systems_examined: usize,
    pub structures_examined: u64,
    pub per_system: Vec<SystemCoverage>,
    pub counterexamples: Vec<Counterexample>,
    pub status: HuntStatus,
}

fn first_failure(report: &crate::structures::StructureReport) -> AxiomResult {
    report.failures().next().cloned().expect("report failed, so some axiom failed")
}

pub fn hunt(problem: Problem, corpus: &HuntCorpus, budget: &SearchBudget) -> Result<HuntVerdict> {
    let variant = Variant::Corrected;
    let mut per_system = Vec::new();
    let mut counterexamples = Vec::new();
    let mut structures_examined = 0u64;
    let mut exhausted = false;

    for system in &corpus.systems {
        let top = corpus.k_max.map_or(system.max_order(), |k| k.min(system.max_order()));
        let mut orders = Vec::new();
        for k in 0..=top {
            let weak = enumerate_all(StructureKind::WeakUltrafilter, variant, system, k, budget)?;
            let mut status = weak.status;
            structures_examined += weak.families.len() as u64;
            for w in &weak.families {
                let report = check_structure(system, k, w, StructureKind::WeakUltrafilter, variant)?;
                if !report.pass {
                    return Err(Error::InvalidParameter(format!(
                        "search emitted a family failing the weak ultrafilter check on {} k={}",
                        system.label(),
                        k
                    )));
                }
            }
            let mut tangle_count = None;
            match problem {
                Problem::TripleIntersection => {
                    for w in &weak.families {
                        let f6 = check_axiom(system, k, w, AxiomId::F6)?;
                        if !f6.pass {
                            counterexamples.push(Counterexample::new(
                                "weak ultrafilter with empty triple intersection",
                                system,
                                w,
                                &f6,
                            ));
                        }
                    }
                }
                Problem::TangleDuality => {
                    let tangles = enumerate_all(StructureKind::Tangle, variant, system, k, budget)?;
                    if tangles.status == SearchStatus::BudgetExhausted {
                        status = SearchStatus::BudgetExhausted;
                    }
                    structures_examined += tangles.families.len() as u64;
                    tangle_count = Some(tangles.families.len());
                    let weak_keys: BTreeSet<Vec<u32>> =
                        weak.families.iter().map(SeparationFamily::key).collect();
                    let tangle_keys: BTreeSet<Vec<u32>> =
                        tangles.families.iter().map(SeparationFamily::key).collect();
                    for w in &weak.families {
                        let candidate = w.dual();
                        if !tangle_keys.contains(&candidate.key()) {
                            let report =
                                check_structure(system, k, &candidate, StructureKind::Tangle, variant)?;
                            if !report.pass {
                                counterexamples.push(Counterexample::new(
                                    "dual of a weak ultrafilter is not a tangle",
                                    system,
                                    &candidate,
                                    &first_failure(&report),
                                ));
                            }
                        }
                    }
                    for t in &tangles.families {
                        let candidate = t.dual();
                        if !weak_keys.contains(&candidate.key()) {
                            let report = check_structure(
                                system,
                                k,
                                &candidate,
                                StructureKind::WeakUltrafilter,
                                variant,
                            )?;
                            if !report.pass {
                                counterexamples.push(Counterexample::new(
                                    "dual of a tangle is not a weak ultrafilter",
                                    system,
                                    &candidate,
                                    &first_failure(&report),
                                ));
                            }
                        }
                    }
                }
            }
            exhausted |= status == SearchStatus::BudgetExhausted;
            orders.push(OrderCoverage {
                k,
                weak_ultrafilters: weak.families.len(),
                tangles: tangle_count,
                status,
            });
        }
        per_system.push(SystemCoverage {
            label: system.label().to_string(),
            system: system.descriptor().clone(),
            orders,
        });
    }

    let status = if !counterexamples.is_empty() {
        HuntStatus::CounterexampleFound
    } else if exhausted {
        HuntStatus::BudgetExhausted
    } else {
        HuntStatus::NoCounterexampleFound
    };
    Ok(HuntVerdict {
        problem,
        corpus: CorpusInfo {
            label: corpus.label.clone(),
            seed: corpus.seed,
            systems: corpus.systems.len(),
            k_max: corpus.k_max,
        },
        systems_examined: corpus.systems.len(),
        structures_examined,
        per_system,
        counterexamples,
        status,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn small_corpus() -> HuntCorpus {
        HuntCorpus {
            label: "reference".into(),
            seed: None,
            systems: vec![corpus::sys_min3(), corpus::sys_p3(), corpus::sys_c4()],
            k_max: None,
        }
    }

    #[test]
    fn empty_corpus_finds_nothing() {
        let corpus = HuntCorpus { label: "empty".into(), seed: None, systems: vec![], k_max: None };
        let v = hunt(Problem::TripleIntersection, &corpus, &SearchBudget::default()).unwrap();
        assert_eq!(v.status, HuntStatus::NoCounterexampleFound);
        assert_eq!(v.systems_examined, 0);
    }

    #[test]
    fn triple_intersection_counterexample_on_min3() {
        // {01, 02, 12, X} is a weak ultrafilter of order 2 with 01 ∩ 02 ∩ 12 = ∅
        let v = hunt(Problem::TripleIntersection, &small_corpus(), &SearchBudget::default()).unwrap();
        assert_eq!(v.status, HuntStatus::CounterexampleFound);
        let cx = v
            .counterexamples
            .iter()
            .find(|c| c.system_label == "SYS-MIN3" && c.k == 1)
            .expect("SYS-MIN3 k=1 counterexample");
        assert_eq!(cx.sides, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]);
        for c in &v.counterexamples {
            assert!(c.refails().unwrap());
        }
    }

    #[test]
    fn tangle_duality_hunt_counterexamples_refail() {
        let v = hunt(Problem::TangleDuality, &small_corpus(), &SearchBudget::default()).unwrap();
        assert!(!v.counterexamples.is_empty());
        for c in &v.counterexamples {
            assert!(c.refails().unwrap(), "{c:?}");
        }
    }
}
