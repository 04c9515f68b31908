//! Connectivity systems `(X, f)`: a finite ground set together with a
//! symmetric submodular function into the non-negative integers.

use std::fmt;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mask::{SubsetMask, MAX_GROUND};

/// Largest ground set for which order tables and separation enumeration are built.
pub const ENUMERATION_LIMIT: usize = 16;

/// Largest ground set for the pairwise (`4^n`) verification mode.
pub const EXHAUSTIVE_LIMIT: usize = 12;

/// Concrete families a connectivity function can be instantiated from.
///
/// Serialises as the system file payload, tagged by `"kind"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum Descriptor {
    /// `values[A]` is `f(A)`, indexed by the bitmask of `A`.
    Explicit { n: usize, values: Vec<u32> },
    /// Ground set = vertices; `f(A)` counts edges with exactly one endpoint in `A`.
    GraphCut { vertices: Vec<String>, edges: Vec<(usize, usize)> },
    /// Ground set = edges in list order; `f(A)` counts vertices incident to an
    /// edge in `A` and an edge outside `A`.
    GraphBoundary { vertices: Vec<String>, edges: Vec<(usize, usize)> },
    /// `f(A)` counts hyperedges meeting both `A` and `X ∖ A`.
    HyperedgeBoundary { n: usize, hyperedges: Vec<Vec<usize>> },
    /// `f(A) = min(|A|, n - |A|)`.
    MinCardinality { n: usize },
}

impl Descriptor {
    pub fn kind_name(&self) -> &'static str {
        match self {
            Descriptor::Explicit { .. } => "explicit",
            Descriptor::GraphCut { .. } => "graph_cut",
            Descriptor::GraphBoundary { .. } => "graph_boundary",
            Descriptor::HyperedgeBoundary { .. } => "hyperedge_boundary",
            Descriptor::MinCardinality { .. } => "min_cardinality",
        }
    }

    /// Ground-set size implied by the payload.
    pub fn ground_size(&self) -> usize {
        match self {
            Descriptor::Explicit { n, .. }
            | Descriptor::HyperedgeBoundary { n, .. }
            | Descriptor::MinCardinality { n } => *n,
            Descriptor::GraphCut { vertices, .. } => vertices.len(),
            Descriptor::GraphBoundary { edges, .. } => edges.len(),
        }
    }
}

#[derive(Clone, Debug)]
enum Evaluator {
    Table,
    /// Counts the masks that meet both `A` and its complement.
    Crossing(Vec<u32>),
    MinCardinality,
}

/// The individual contracts checked by [`ConnectivitySystem::verify_axioms`].
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash)]
pub enum SystemCheck {
    /// `f(A) = f(X ∖ A)`
    Symmetry,
    /// `f(A) + f(B) >= f(A ∩ B) + f(A ∪ B)`
    Submodularity,
    /// `f(A) >= f(∅) = f(X)`
    Floor,
    /// `f(A) + f(B) >= f(A ∖ B) + f(B ∖ A)`
    Posimodularity,
}

impl SystemCheck {
    pub const ALL: [SystemCheck; 4] = [
        SystemCheck::Symmetry,
        SystemCheck::Submodularity,
        SystemCheck::Floor,
        SystemCheck::Posimodularity,
    ];
}

impl fmt::Display for SystemCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SystemCheck::Symmetry => "symmetry",
            SystemCheck::Submodularity => "submodularity",
            SystemCheck::Floor => "floor",
            SystemCheck::Posimodularity => "posimodularity",
        })
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum VerifyMode {
    /// Every pair `(A, B)`; requires `n <= 12`.
    Exhaustive,
    /// `count` pseudorandom pairs drawn from `seed`.
    Sampled { count: usize, seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub check: SystemCheck,
    pub pass: bool,
    /// First failing pair in the order the pairs were visited.
    pub witness: Option<(SubsetMask, SubsetMask)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub mode: VerifyMode,
    pub pairs_checked: u64,
    pub checks: Vec<CheckOutcome>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn outcome(&self, check: SystemCheck) -> &CheckOutcome {
        self.checks.iter().find(|c| c.check == check).expect("all checks are reported")
    }
}

/// A ground set `X = {0, .., n-1}` with a symmetric submodular function `f`.
///
/// Immutable once built apart from the `verified` flag, which only an
/// exhaustive [`verify_axioms`](Self::verify_axioms) run may set.
#[derive(Clone, Debug)]
pub struct ConnectivitySystem {
    n: usize,
    descriptor: Descriptor,
    evaluator: Evaluator,
    verified: bool,
    label: String,
    table: OnceLock<Vec<u32>>,
}

impl PartialEq for ConnectivitySystem {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor == other.descriptor
    }
}

impl Eq for ConnectivitySystem {}

/// Validates a descriptor and instantiates the system.
///
/// Explicit tables are verified exhaustively (symmetry over every subset and
/// the local exchange form of submodularity, which is equivalent to the
/// pairwise form); structured kinds are spot-checked on sampled pairs.
pub fn build_system(descriptor: Descriptor) -> Result<ConnectivitySystem> {
    let n = descriptor.ground_size();
    if n == 0 {
        return Err(Error::Descriptor("ground set must be non-empty".into()));
    }
    if n > MAX_GROUND {
        return Err(Error::LimitExceeded { n, limit: MAX_GROUND, what: "connectivity systems" });
    }
    let evaluator = match &descriptor {
        Descriptor::Explicit { values, .. } => {
            let expected = 1usize << n;
            if values.len() != expected {
                return Err(Error::TableLength { expected, found: values.len() });
            }
            Evaluator::Table
        }
        Descriptor::GraphCut { vertices, edges } => {
            check_graph(vertices, edges)?;
            Evaluator::Crossing(edges.iter().map(|&(u, v)| (1 << u) | (1 << v)).collect())
        }
        Descriptor::GraphBoundary { vertices, edges } => {
            check_graph(vertices, edges)?;
            let mut incidence = vec![0u32; vertices.len()];
            for (i, &(u, v)) in edges.iter().enumerate() {
                incidence[u] |= 1 << i;
                incidence[v] |= 1 << i;
            }
            Evaluator::Crossing(incidence)
        }
        Descriptor::HyperedgeBoundary { hyperedges, .. } => {
            let mut masks = Vec::with_capacity(hyperedges.len());
            for h in hyperedges {
                let mask = SubsetMask::from_elements(n, h.iter().copied())?;
                if mask.len() != h.len() {
                    return Err(Error::Descriptor(format!("hyperedge {:?} repeats an element", h)));
                }
                masks.push(mask.bits());
            }
            Evaluator::Crossing(masks)
        }
        Descriptor::MinCardinality { .. } => Evaluator::MinCardinality,
    };
    let label = default_label(&descriptor);
    let mut system = ConnectivitySystem {
        n,
        descriptor,
        evaluator,
        verified: false,
        label,
        table: OnceLock::new(),
    };
    if matches!(system.evaluator, Evaluator::Table) {
        system.verify_table()?;
        system.verified = true;
    } else {
        let report = system.run_checks(VerifyMode::Sampled { count: 256, seed: 0 });
        if let Some(c) = report.checks.iter().find(|c| !c.pass) {
            let (a, b) = c.witness.expect("failing checks carry a witness");
            return Err(Error::NotSymmetricSubmodular { check: c.check, a, b });
        }
    }
    Ok(system)
}

fn check_graph(vertices: &[String], edges: &[(usize, usize)]) -> Result<()> {
    for (i, v) in vertices.iter().enumerate() {
        if vertices[..i].contains(v) {
            return Err(Error::Descriptor(format!("duplicate vertex {:?}", v)));
        }
    }
    if vertices.len() > MAX_GROUND {
        return Err(Error::LimitExceeded { n: vertices.len(), limit: MAX_GROUND, what: "graph vertices" });
    }
    for &(u, v) in edges {
        if u >= vertices.len() || v >= vertices.len() {
            return Err(Error::Descriptor(format!("edge ({}, {}) references a missing vertex", u, v)));
        }
    }
    Ok(())
}

fn default_label(descriptor: &Descriptor) -> String {
    match descriptor {
        Descriptor::Explicit { n, .. } => format!("explicit(n={})", n),
        Descriptor::GraphCut { vertices, edges } => {
            format!("graph_cut(v={},e={})", vertices.len(), edges.len())
        }
        Descriptor::GraphBoundary { vertices, edges } => {
            format!("graph_boundary(v={},e={})", vertices.len(), edges.len())
        }
        Descriptor::HyperedgeBoundary { n, hyperedges } => {
            format!("hyperedge_boundary(n={},h={})", n, hyperedges.len())
        }
        Descriptor::MinCardinality { n } => format!("min_cardinality(n={})", n),
    }
}

impl ConnectivitySystem {
    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.n)
    }

    pub fn descriptor(&self) -> &Descriptor {
        &self.descriptor
    }

    pub fn kind_name(&self) -> &'static str {
        self.descriptor.kind_name()
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// `f(A)`, rejecting masks with bits outside the ground set.
    pub fn evaluate(&self, a: SubsetMask) -> Result<u32> {
        a.check(self.n)?;
        Ok(self.order(a))
    }

    /// `f(A)` without the range check.
    #[inline]
    pub fn order(&self, a: SubsetMask) -> u32 {
        debug_assert!(a.fits(self.n));
        match &self.evaluator {
            Evaluator::Table => match &self.descriptor {
                Descriptor::Explicit { values, .. } => values[a.bits() as usize],
                _ => unreachable!(),
            },
            Evaluator::Crossing(masks) => {
                let inside = a.bits();
                let outside = self.full().bits() ^ inside;
                masks.iter().filter(|&&m| m & inside != 0 && m & outside != 0).count() as u32
            }
            Evaluator::MinCardinality => {
                let size = a.len();
                size.min(self.n - size) as u32
            }
        }
    }

    /// `f` tabulated over every subset, indexed by mask. Cached.
    pub fn order_table(&self) -> Result<&[u32]> {
        if self.n > ENUMERATION_LIMIT {
            return Err(Error::LimitExceeded {
                n: self.n,
                limit: ENUMERATION_LIMIT,
                what: "order tables",
            });
        }
        Ok(self.table.get_or_init(|| SubsetMask::all(self.n).map(|a| self.order(a)).collect()))
    }

    /// `max_A f(A)`.
    pub fn max_order(&self) -> u32 {
        SubsetMask::all(self.n).map(|a| self.order(a)).max().unwrap_or(0)
    }

    /// Exports the function as an explicit value table.
    pub fn to_explicit(&self) -> Result<ConnectivitySystem> {
        let values = SubsetMask::all(self.n).map(|a| self.order(a)).collect();
        Ok(build_system(Descriptor::Explicit { n: self.n, values })?.with_label(self.label.clone()))
    }

    /// Checks symmetry, submodularity and the two derived inequalities.
    ///
    /// Failures are report content; the only error is asking for exhaustive
    /// mode above [`EXHAUSTIVE_LIMIT`].
    pub fn verify_axioms(&mut self, mode: VerifyMode) -> Result<VerificationReport> {
        if mode == VerifyMode::Exhaustive && self.n > EXHAUSTIVE_LIMIT {
            return Err(Error::LimitExceeded {
                n: self.n,
                limit: EXHAUSTIVE_LIMIT,
                what: "exhaustive verification",
            });
        }
        let report = self.run_checks(mode);
        if mode == VerifyMode::Exhaustive && report.passed() {
            self.verified = true;
        }
        Ok(report)
    }

    fn run_checks(&self, mode: VerifyMode) -> VerificationReport {
        let mut tracker = Tracker::new(self);
        match mode {
            VerifyMode::Exhaustive => {
                for a in SubsetMask::all(self.n) {
                    for b in SubsetMask::all(self.n) {
                        tracker.visit(a, b);
                    }
                }
            }
            VerifyMode::Sampled { count, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let full = self.full().bits();
                for _ in 0..count {
                    let a = SubsetMask(rng.gen::<u32>() & full);
                    let b = SubsetMask(rng.gen::<u32>() & full);
                    tracker.visit(a, b);
                }
            }
        }
        tracker.finish(mode)
    }

    /// Symmetry over every subset plus the local exchange inequality
    /// `f(A+i) + f(A+j) >= f(A) + f(A+i+j)`, which characterises submodularity.
    fn verify_table(&self) -> Result<()> {
        let n = self.n;
        let empty = self.order(SubsetMask::EMPTY);
        for a in SubsetMask::all(n) {
            let fa = self.order(a);
            let c = a.complement(n);
            if fa != self.order(c) {
                return Err(Error::NotSymmetricSubmodular { check: SystemCheck::Symmetry, a, b: c });
            }
            if fa < empty {
                return Err(Error::NotSymmetricSubmodular {
                    check: SystemCheck::Floor,
                    a,
                    b: SubsetMask::EMPTY,
                });
            }
            let free: Vec<usize> = c.elements().collect();
            for (x, &i) in free.iter().enumerate() {
                let ai = a | SubsetMask::singleton(i);
                let fai = self.order(ai);
                for &j in &free[x + 1..] {
                    let aj = a | SubsetMask::singleton(j);
                    if fai + self.order(aj) < fa + self.order(ai | aj) {
                        return Err(Error::NotSymmetricSubmodular {
                            check: SystemCheck::Submodularity,
                            a: ai,
                            b: aj,
                        });
                    }
                }
            }
        }
        Ok(())
    }
}

struct Tracker<'a> {
    system: &'a ConnectivitySystem,
    f_empty: u32,
    pairs: u64,
    witnesses: [Option<(SubsetMask, SubsetMask)>; 4],
}

impl<'a> Tracker<'a> {
    fn new(system: &'a ConnectivitySystem) -> Self {
        let f_empty = system.order(SubsetMask::EMPTY);
        let mut witnesses = [None; 4];
        if f_empty != system.order(system.full()) {
            witnesses[2] = Some((SubsetMask::EMPTY, system.full()));
        }
        Tracker { system, f_empty, pairs: 0, witnesses }
    }

    fn visit(&mut self, a: SubsetMask, b: SubsetMask) {
        let s = self.system;
        let n = s.n;
        self.pairs += 1;
        let fa = s.order(a);
        let fb = s.order(b);
        if self.witnesses[0].is_none() && fa != s.order(a.complement(n)) {
            self.witnesses[0] = Some((a, a.complement(n)));
        }
        if self.witnesses[1].is_none() && fa + fb < s.order(a & b) + s.order(a | b) {
            self.witnesses[1] = Some((a, b));
        }
        if self.witnesses[2].is_none() && fa < self.f_empty {
            self.witnesses[2] = Some((a, SubsetMask::EMPTY));
        }
        if self.witnesses[3].is_none() && fa + fb < s.order(a.difference(b)) + s.order(b.difference(a)) {
            self.witnesses[3] = Some((a, b));
        }
    }

    fn finish(self, mode: VerifyMode) -> VerificationReport {
        let checks = SystemCheck::ALL
            .iter()
            .zip(self.witnesses)
            .map(|(&check, witness)| CheckOutcome { check, pass: witness.is_none(), witness })
            .collect();
        VerificationReport { mode, pairs_checked: self.pairs, checks }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn explicit_unchecked(n: usize, values: Vec<u32>) -> ConnectivitySystem {
        ConnectivitySystem {
            n,
            label: "test".into(),
            descriptor: Descriptor::Explicit { n, values },
            evaluator: Evaluator::Table,
            verified: false,
            table: OnceLock::new(),
        }
    }

    #[test]
    fn evaluate_min3() {
        let s = corpus::sys_min3();
        assert_eq!(s.evaluate(SubsetMask(0b001)).unwrap(), 1);
        assert_eq!(s.evaluate(SubsetMask::EMPTY).unwrap(), 0);
        assert!(matches!(s.evaluate(SubsetMask(0b1000)), Err(Error::MaskOutOfRange { .. })));
    }

    #[test]
    fn evaluate_p3_boundary() {
        let s = corpus::sys_p3();
        assert_eq!(s.evaluate(SubsetMask(0b01)).unwrap(), 1);
        assert_eq!(s.evaluate(SubsetMask::EMPTY).unwrap(), 0);
    }

    #[test]
    fn exhaustive_verification_passes_on_corpus() {
        for mut s in [corpus::sys_min3(), corpus::sys_p3(), corpus::sys_c4(), corpus::sys_k4()] {
            let report = s.verify_axioms(VerifyMode::Exhaustive).unwrap();
            assert!(report.passed(), "{}: {:?}", s.label(), report);
            assert!(s.is_verified());
            assert_eq!(report.pairs_checked, 1 << (2 * s.n()));
        }
    }

    #[test]
    fn planted_symmetry_violation_is_witnessed() {
        let mut s = explicit_unchecked(3, vec![0, 5, 1, 1, 1, 1, 1, 0]);
        let report = s.verify_axioms(VerifyMode::Exhaustive).unwrap();
        let sym = report.outcome(SystemCheck::Symmetry);
        assert!(!sym.pass);
        assert_eq!(sym.witness.unwrap().0, SubsetMask(0b001));
        assert!(!s.is_verified());
        let err = build_system(Descriptor::Explicit { n: 3, values: vec![0, 5, 1, 1, 1, 1, 1, 0] })
            .unwrap_err();
        assert!(matches!(
            err,
            Error::NotSymmetricSubmodular { check: SystemCheck::Symmetry, a: SubsetMask(1), .. }
        ));
    }

    #[test]
    fn symmetric_but_not_submodular_is_rejected() {
        // f({0}) = f({1,2}) = 5 keeps symmetry but breaks submodularity
        let values = vec![0, 5, 1, 1, 1, 1, 5, 0];
        let mut s = explicit_unchecked(3, values.clone());
        let report = s.verify_axioms(VerifyMode::Exhaustive).unwrap();
        assert!(report.outcome(SystemCheck::Symmetry).pass);
        let sub = report.outcome(SystemCheck::Submodularity);
        let (a, b) = sub.witness.unwrap();
        assert!(s.order(a) + s.order(b) < s.order(a & b) + s.order(a | b));
        match build_system(Descriptor::Explicit { n: 3, values }).unwrap_err() {
            Error::NotSymmetricSubmodular { check: SystemCheck::Submodularity, a, b } => {
                assert!(s.order(a) + s.order(b) < s.order(a & b) + s.order(a | b));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn explicit_table_matches_min_cardinality() {
        let table = build_system(Descriptor::Explicit { n: 3, values: vec![0, 1, 1, 1, 1, 1, 1, 0] })
            .unwrap();
        let min3 = corpus::sys_min3();
        for a in SubsetMask::all(3) {
            assert_eq!(table.order(a), min3.order(a));
        }
        assert!(table.is_verified());
    }

    #[test]
    fn descriptor_errors() {
        assert!(matches!(
            build_system(Descriptor::Explicit { n: 3, values: vec![0; 7] }),
            Err(Error::TableLength { expected: 8, found: 7 })
        ));
        assert!(build_system(Descriptor::MinCardinality { n: 0 }).is_err());
        assert!(matches!(
            build_system(Descriptor::MinCardinality { n: 25 }),
            Err(Error::LimitExceeded { .. })
        ));
        assert!(build_system(Descriptor::HyperedgeBoundary { n: 3, hyperedges: vec![vec![0, 3]] })
            .is_err());
        assert!(build_system(Descriptor::HyperedgeBoundary { n: 3, hyperedges: vec![vec![0, 0]] })
            .is_err());
        assert!(build_system(Descriptor::GraphCut {
            vertices: vec!["a".into(), "a".into()],
            edges: vec![(0, 1)]
        })
        .is_err());
        assert!(build_system(Descriptor::GraphBoundary {
            vertices: vec!["a".into(), "b".into()],
            edges: vec![(0, 2)]
        })
        .is_err());
    }

    #[test]
    fn graph_cut_counts_crossing_edges() {
        let s = build_system(Descriptor::GraphCut {
            vertices: vec!["a".into(), "b".into(), "c".into()],
            edges: vec![(0, 1), (1, 2), (0, 2)],
        })
        .unwrap();
        assert_eq!(s.order(SubsetMask(0b001)), 2);
        assert_eq!(s.order(SubsetMask(0b111)), 0);
    }

    #[test]
    fn exhaustive_mode_refuses_large_ground_sets() {
        let mut s = build_system(Descriptor::MinCardinality { n: 13 }).unwrap();
        assert!(matches!(s.verify_axioms(VerifyMode::Exhaustive), Err(Error::LimitExceeded { .. })));
        let report = s.verify_axioms(VerifyMode::Sampled { count: 1000, seed: 7 }).unwrap();
        assert!(report.passed());
        assert_eq!(report.pairs_checked, 1000);
        assert!(!s.is_verified());
    }
}
