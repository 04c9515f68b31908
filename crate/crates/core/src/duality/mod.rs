//! The complementation dual between tangle-side and ultrafilter-side
//! families, exhaustive equivalence checks on small systems, and the
//! comparison of maximum tangle order with exact branch-width.

pub mod branch;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::connectivity::ConnectivitySystem;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::search::{enumerate_all, SearchBudget, SearchStatus};
use crate::separation::SeparationFamily;
use crate::structures::{StructureKind, Variant};

pub use branch::{branch_width, BranchDecomposition, BranchWidth, Nested, BRANCH_WIDTH_LIMIT};

/// `{(B, A) : (A, B) ∈ family}`.
pub fn dual_family(family: &SeparationFamily) -> SeparationFamily {
    family.dual()
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(into = "u32", try_from = "u32")]
pub enum Theorem {
    /// Tangles and ultrafilters correspond under the dual.
    TangleUltrafilter,
    /// Linear tangles and single ultrafilters correspond under the dual.
    LinearTangleSingleUltrafilter,
    /// A non-principal profile, a tangle and an ultrafilter exist together.
    ProfileExistence,
    /// The linear analogue of [`Theorem::ProfileExistence`].
    LinearProfileExistence,
}

impl Theorem {
    pub const ALL: [Theorem; 4] = [
        Theorem::TangleUltrafilter,
        Theorem::LinearTangleSingleUltrafilter,
        Theorem::ProfileExistence,
        Theorem::LinearProfileExistence,
    ];

    pub fn number(self) -> u32 {
        match self {
            Theorem::TangleUltrafilter => 11,
            Theorem::LinearTangleSingleUltrafilter => 12,
            Theorem::ProfileExistence => 15,
            Theorem::LinearProfileExistence => 16,
        }
    }

    /// Kinds compared by this theorem; for bijections, the first maps onto the second.
    pub fn kinds(self) -> &'static [StructureKind] {
        use StructureKind::*;
        match self {
            Theorem::TangleUltrafilter => &[Tangle, Ultrafilter],
            Theorem::LinearTangleSingleUltrafilter => &[LinearTangle, SingleUltrafilter],
            Theorem::ProfileExistence => &[NonPrincipalProfile, Tangle, Ultrafilter],
            Theorem::LinearProfileExistence => &[NonPrincipalLinearProfile, LinearTangle, SingleUltrafilter],
        }
    }

    pub fn is_bijection(self) -> bool {
        matches!(self, Theorem::TangleUltrafilter | Theorem::LinearTangleSingleUltrafilter)
    }
}

impl From<Theorem> for u32 {
    fn from(t: Theorem) -> u32 {
        t.number()
    }
}

impl TryFrom<u32> for Theorem {
    type Error = Error;

    fn try_from(v: u32) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.number() == v)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown theorem {}", v)))
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.number())
    }
}

/// A family of one kind whose dual is not among the families of the other.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Unmatched {
    pub kind: StructureKind,
    pub sides: Vec<Vec<usize>>,
}

/// Existence bits under the literal profile clauses, kept for comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LiteralRun {
    pub exists: BTreeMap<String, bool>,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquivalenceVerdict {
    pub theorem: Theorem,
    pub system: String,
    pub k: u32,
    pub pass: bool,
    /// False when a search ran out of budget; `pass` is then not conclusive.
    pub complete: bool,
    pub counts: BTreeMap<String, usize>,
    pub exists: BTreeMap<String, bool>,
    pub unmatched: Vec<Unmatched>,
    pub literal: Option<LiteralRun>,
    pub bw: Option<u32>,
}

fn family_sides(family: &SeparationFamily) -> Vec<Vec<usize>> {
    family.sides().map(SubsetMask::to_vec).collect()
}

struct Enumerated {
    families: Vec<SeparationFamily>,
    complete: bool,
}

fn enumerate(
    kind: StructureKind,
    variant: Variant,
    system: &ConnectivitySystem,
    k: u32,
    budget: &SearchBudget,
) -> Result<Enumerated> {
    let out = enumerate_all(kind, variant, system, k, budget)?;
    Ok(Enumerated { complete: out.status == SearchStatus::Complete, families: out.families })
}

fn unmatched_duals(
    from: StructureKind,
    families: &[SeparationFamily],
    targets: &[SeparationFamily],
) -> Vec<Unmatched> {
    let keys: BTreeSet<Vec<u32>> = targets.iter().map(SeparationFamily::key).collect();
    families
        .iter()
        .filter(|f| !keys.contains(&f.dual().key()))
        .map(|f| Unmatched { kind: from, sides: family_sides(f) })
        .collect()
}

/// Exhaustively checks one theorem at order `k + 1` on `system`.
///
/// For the bijection theorems the verdict passes iff the dual maps the
/// first kind's families onto the second's. For the existence theorems it
/// passes iff the corrected-clause existence bits agree; the literal-clause
/// bits are attached but never affect `pass`.
pub fn verify_theorem(
    theorem: Theorem,
    system: &ConnectivitySystem,
    k: u32,
    budget: &SearchBudget,
) -> Result<EquivalenceVerdict> {
    let mut counts = BTreeMap::new();
    let mut exists = BTreeMap::new();
    let mut complete = true;
    let mut runs = Vec::new();
    for &kind in theorem.kinds() {
        let run = enumerate(kind, Variant::Corrected, system, k, budget)?;
        complete &= run.complete;
        counts.insert(kind.name().to_string(), run.families.len());
        exists.insert(kind.name().to_string(), !run.families.is_empty());
        runs.push(run);
    }

    let mut unmatched = Vec::new();
    let mut literal = None;
    let pass = if theorem.is_bijection() {
        let (a, b) = (theorem.kinds()[0], theorem.kinds()[1]);
        unmatched.extend(unmatched_duals(a, &runs[0].families, &runs[1].families));
        unmatched.extend(unmatched_duals(b, &runs[1].families, &runs[0].families));
        unmatched.is_empty() && runs[0].families.len() == runs[1].families.len()
    } else {
        let mut lit = BTreeMap::new();
        for &kind in theorem.kinds() {
            let found = if kind.has_variant() {
                let run = enumerate(kind, Variant::Literal, system, k, budget)?;
                complete &= run.complete;
                !run.families.is_empty()
            } else {
                exists[kind.name()]
            };
            lit.insert(kind.name().to_string(), found);
        }
        let agree = all_equal(lit.values());
        literal = Some(LiteralRun { exists: lit, agree });
        all_equal(exists.values())
    };

    Ok(EquivalenceVerdict {
        theorem,
        system: system.label().to_string(),
        k,
        pass,
        complete,
        counts,
        exists,
        unmatched,
        literal,
        bw: None,
    })
}

fn all_equal<'a>(mut bits: impl Iterator<Item = &'a bool>) -> bool {
    match bits.next() {
        Some(first) => bits.all(|b| b == first),
        None => true,
    }
}

/// [`verify_theorem`] for several theorems, with branch-width attached when
/// the oracle applies.
pub fn verify_theorems(
    theorems: &[Theorem],
    system: &ConnectivitySystem,
    k: u32,
    budget: &SearchBudget,
) -> Result<Vec<EquivalenceVerdict>> {
    let bw = if system.n() <= BRANCH_WIDTH_LIMIT {
        Some(branch_width(system)?.width)
    } else {
        None
    };
    theorems
        .iter()
        .map(|&t| {
            let mut v = verify_theorem(t, system, k, budget)?;
            v.bw = bw;
            Ok(v)
        })
        .collect()
}

pub const DUALITY_LIMIT: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TangleExistence {
    pub k: u32,
    pub exists: bool,
    pub complete: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DualityReport {
    pub system: String,
    pub bw: u32,
    pub witness: Nested,
    pub per_k: Vec<TangleExistence>,
    /// Largest `k + 1` with a tangle of order `k + 1`, or 0 if none exists.
    /// `None` when a tangle exists at the maximum order, so every larger
    /// order has one too.
    pub max_tangle_order: Option<u32>,
    /// Ground set of at most two elements, where no convention is settled.
    pub degenerate: bool,
    pub complete: bool,
    /// Human-readable description of each disagreement.
    pub mismatches: Vec<String>,
    pub pass: bool,
}

/// Compares the maximum order of a tangle with the branch-width of `system`,
/// for `k` up to `k_max` (default: the maximum order).
pub fn verify_branchwidth_duality(
    system: &ConnectivitySystem,
    k_max: Option<u32>,
    budget: &SearchBudget,
) -> Result<DualityReport> {
    let n = system.n();
    if n > DUALITY_LIMIT {
        return Err(Error::LimitExceeded { n, limit: DUALITY_LIMIT, what: "branch-width duality" });
    }
    let bw = branch_width(system)?;
    let top = system.max_order();
    let last = k_max.map_or(top, |k| k.min(top));
    let mut per_k = Vec::new();
    for k in 0..=last {
        let run = enumerate(StructureKind::Tangle, Variant::Corrected, system, k, budget)?;
        per_k.push(TangleExistence { k, exists: !run.families.is_empty(), complete: run.complete });
    }
    let complete = per_k.iter().all(|e| e.complete);
    let mut mismatches = Vec::new();

    // tangle existence is monotone: an order-(k+1) tangle restricts to every lower order
    for pair in per_k.windows(2) {
        if pair[1].exists && !pair[0].exists {
            mismatches.push(format!("tangle exists at k={} but not at k={}", pair[1].k, pair[0].k));
        }
    }
    let unbounded = per_k.last().is_some_and(|e| e.exists && e.k == top);
    let max_tangle_order = if unbounded {
        mismatches.push(format!("tangle exists at the maximum order k={}, so at every order", top));
        None
    } else {
        Some(per_k.iter().filter(|e| e.exists).map(|e| e.k + 1).max().unwrap_or(0))
    };
    if last == top {
        if let Some(order) = max_tangle_order {
            if order != bw.width {
                mismatches.push(format!(
                    "maximum tangle order {} differs from branch-width {}",
                    order, bw.width
                ));
            }
        }
    } else if let Some(e) = per_k.iter().find(|e| e.exists == (e.k + 1 > bw.width)) {
        mismatches.push(format!(
            "k={}: tangle {} but branch-width is {}",
            e.k,
            if e.exists { "exists" } else { "missing" },
            bw.width
        ));
    }

    Ok(DualityReport {
        system: system.label().to_string(),
        bw: bw.width,
        witness: bw.witness.encoding(),
        per_k,
        max_tangle_order,
        degenerate: n <= 2,
        complete,
        pass: mismatches.is_empty() && complete,
        mismatches,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::structures::check_structure;

    #[test]
    fn dual_examples() {
        let s = corpus::sys_min3();
        let t = SeparationFamily::from_sides(&s, 0, [SubsetMask::EMPTY]).unwrap();
        let u = dual_family(&t);
        assert_eq!(u.key(), vec![7]);
        assert_eq!(dual_family(&u), t);
        assert!(check_structure(&s, 0, &t, StructureKind::Tangle, Variant::Corrected).unwrap().pass);
        assert!(check_structure(&s, 0, &u, StructureKind::Ultrafilter, Variant::Corrected).unwrap().pass);
    }

    #[test]
    fn theorem_examples() {
        let b = SearchBudget::default();
        let s = corpus::sys_min3();
        let v = verify_theorem(Theorem::TangleUltrafilter, &s, 0, &b).unwrap();
        assert!(v.pass && v.complete);
        assert_eq!(v.counts["tangle"], 1);
        assert_eq!(v.counts["ultrafilter"], 1);
        let v = verify_theorem(Theorem::TangleUltrafilter, &s, 1, &b).unwrap();
        assert!(v.pass);
        assert_eq!(v.counts["tangle"], 0);
        assert_eq!(v.counts["ultrafilter"], 0);
        let v = verify_theorem(Theorem::ProfileExistence, &corpus::sys_k4(), 2, &b).unwrap();
        assert!(v.pass);
        assert!(v.exists.values().all(|&e| e));
    }

    #[test]
    fn theorem_numbers_round_trip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::try_from(t.number()).unwrap(), t);
        }
        assert!(Theorem::try_from(13).is_err());
    }

    #[test]
    fn duality_examples() {
        let b = SearchBudget::default();
        for (s, bw) in [(corpus::sys_p3(), 1), (corpus::sys_c4(), 2), (corpus::sys_min3(), 1)] {
            let r = verify_branchwidth_duality(&s, None, &b).unwrap();
            assert_eq!(r.bw, bw);
            assert_eq!(r.max_tangle_order, Some(bw), "{}", s.label());
            assert!(r.pass, "{r:?}");
        }
    }

    #[test]
    fn bw_attached_by_plural_form() {
        let v = verify_theorems(
            &[Theorem::TangleUltrafilter],
            &corpus::sys_c4(),
            1,
            &SearchBudget::default(),
        )
        .unwrap();
        assert_eq!(v[0].bw, Some(2));
    }
}
