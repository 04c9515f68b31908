//! Witness-producing predicates for every axiom on families of separations,
//! and the composite checkers for tangles, ultrafilters, profiles and filter
//! bases built from them.
//!
//! Every predicate is a literal evaluation of its clause. On failure the
//! first failing instance in canonical order (ascending first-side masks,
//! then ascending elements) is returned as the witness.

use std::fmt;
use std::str::FromStr;

use crate::connectivity::ConnectivitySystem;
use crate::error::{Error, Result};
use crate::mask::SubsetMask;
use crate::separation::{make_separation, Separation, SeparationFamily};

/// One axiom clause.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AxiomId {
    /// Every separation of order `<= k` has an orientation in the family.
    T1,
    /// `({e}, X ∖ {e})` is a member for every `e` with `f({e}) <= k`.
    T2,
    /// No three members have first sides covering `X`.
    T3,
    /// `(∅, X)` is a member.
    T4,
    /// No two members together with a `k`-efficient singleton cover `X`.
    LT3,
    F1,
    /// `(∅, X)` is not a member.
    F2,
    /// `({e}, X ∖ {e})` is not a member for `f({e}) <= k`.
    F3,
    /// Closed upwards under `≤` within order `<= k`.
    F4,
    /// Closed under `(A1 ∩ A2, B1 ∪ B2)` when that has order `<= k`.
    F5,
    /// Any three members have first sides with non-empty common intersection.
    F6,
    /// Closed under deleting a `k`-efficient singleton when the result has order `<= k`.
    SF5,
    /// Two members whose meet has order `<= k` have intersecting first sides.
    WF5,
    /// `(C, D) ≤ (A, B) ∈ P` implies `(D, C) ∉ P`.
    Consistent,
    /// Every member has order `<= k`.
    P0,
    P1,
    /// Closed downwards under `≤` within order `<= k`.
    P2,
    /// `(A1 ∩ A2, B1 ∪ B2) ∉ P`, exactly as written.
    P3aLiteral,
    /// `(B1 ∩ B2, A1 ∪ A2) ∉ P`.
    P3aCorrected,
    /// Closed under `(A1 ∪ A2, B1 ∩ B2)` when that has order `<= k`.
    P3b,
    /// `({e}, X ∖ {e}) ∈ P` for every `e` with `f({e}) <= k`.
    P4,
    /// `(A1 ∖ {e}, B1 ∪ {e}) ∉ P`, exactly as written.
    SP3Literal,
    /// `(B1 ∖ {e}, A1 ∪ {e}) ∉ P`.
    SP3Corrected,
    /// The family is non-empty.
    FB1,
    /// Any two members dominate a common member.
    FB2,
}

impl AxiomId {
    pub const ALL: [AxiomId; 25] = [
        AxiomId::T1,
        AxiomId::T2,
        AxiomId::T3,
        AxiomId::T4,
        AxiomId::LT3,
        AxiomId::F1,
        AxiomId::F2,
        AxiomId::F3,
        AxiomId::F4,
        AxiomId::F5,
        AxiomId::F6,
        AxiomId::SF5,
        AxiomId::WF5,
        AxiomId::Consistent,
        AxiomId::P0,
        AxiomId::P1,
        AxiomId::P2,
        AxiomId::P3aLiteral,
        AxiomId::P3aCorrected,
        AxiomId::P3b,
        AxiomId::P4,
        AxiomId::SP3Literal,
        AxiomId::SP3Corrected,
        AxiomId::FB1,
        AxiomId::FB2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            AxiomId::T1 => "T1",
            AxiomId::T2 => "T2",
            AxiomId::T3 => "T3",
            AxiomId::T4 => "T4",
            AxiomId::LT3 => "LT3",
            AxiomId::F1 => "F1",
            AxiomId::F2 => "F2",
            AxiomId::F3 => "F3",
            AxiomId::F4 => "F4",
            AxiomId::F5 => "F5",
            AxiomId::F6 => "F6",
            AxiomId::SF5 => "SF5",
            AxiomId::WF5 => "WF5",
            AxiomId::Consistent => "CONSISTENT",
            AxiomId::P0 => "P0",
            AxiomId::P1 => "P1",
            AxiomId::P2 => "P2",
            AxiomId::P3aLiteral => "P3a_literal",
            AxiomId::P3aCorrected => "P3a_corrected",
            AxiomId::P3b => "P3b",
            AxiomId::P4 => "P4",
            AxiomId::SP3Literal => "SP3_literal",
            AxiomId::SP3Corrected => "SP3_corrected",
            AxiomId::FB1 => "FB1",
            AxiomId::FB2 => "FB2",
        }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AxiomId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        AxiomId::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Schema(format!("unknown axiom id {:?}", s)))
    }
}

/// Which reading of P3a / SP3 a profile check uses.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash)]
pub enum Variant {
    Literal,
    #[default]
    Corrected,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Literal => "literal",
            Variant::Corrected => "corrected",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "literal" => Ok(Variant::Literal),
            "corrected" => Ok(Variant::Corrected),
            _ => Err(Error::Schema(format!("unknown variant {:?}", s))),
        }
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum StructureKind {
    Tangle,
    LinearTangle,
    Ultrafilter,
    SingleUltrafilter,
    WeakUltrafilter,
    Profile,
    NonPrincipalProfile,
    LinearProfile,
    NonPrincipalLinearProfile,
    FilterBase,
}

impl StructureKind {
    pub const ALL: [StructureKind; 10] = [
        StructureKind::Tangle,
        StructureKind::LinearTangle,
        StructureKind::Ultrafilter,
        StructureKind::SingleUltrafilter,
        StructureKind::WeakUltrafilter,
        StructureKind::Profile,
        StructureKind::NonPrincipalProfile,
        StructureKind::LinearProfile,
        StructureKind::NonPrincipalLinearProfile,
        StructureKind::FilterBase,
    ];

    pub fn name(self) -> &'static str {
        match self {
            StructureKind::Tangle => "tangle",
            StructureKind::LinearTangle => "linear_tangle",
            StructureKind::Ultrafilter => "ultrafilter",
            StructureKind::SingleUltrafilter => "single_ultrafilter",
            StructureKind::WeakUltrafilter => "weak_ultrafilter",
            StructureKind::Profile => "profile",
            StructureKind::NonPrincipalProfile => "non_principal_profile",
            StructureKind::LinearProfile => "linear_profile",
            StructureKind::NonPrincipalLinearProfile => "non_principal_linear_profile",
            StructureKind::FilterBase => "filter_base",
        }
    }

    /// The kind's axioms, led by the order-`<= k` membership precondition.
    pub fn axioms(self, variant: Variant) -> Vec<AxiomId> {
        use AxiomId::*;
        let p3a = match variant {
            Variant::Literal => P3aLiteral,
            Variant::Corrected => P3aCorrected,
        };
        let sp3 = match variant {
            Variant::Literal => SP3Literal,
            Variant::Corrected => SP3Corrected,
        };
        match self {
            StructureKind::Tangle => vec![P0, T1, T2, T3],
            StructureKind::LinearTangle => vec![P0, T1, T2, LT3],
            StructureKind::Ultrafilter => vec![P0, F1, F2, F3, F4, F5],
            StructureKind::SingleUltrafilter => vec![P0, F1, F2, F3, F4, SF5],
            StructureKind::WeakUltrafilter => vec![P0, F1, F2, F3, F4, WF5],
            StructureKind::Profile => vec![P0, P1, P2, p3a, P3b],
            StructureKind::NonPrincipalProfile => vec![P0, P1, P2, p3a, P3b, P4],
            StructureKind::LinearProfile => vec![P0, P1, P2, sp3],
            StructureKind::NonPrincipalLinearProfile => vec![P0, P1, P2, sp3, P4],
            StructureKind::FilterBase => vec![P0, FB1, FB2],
        }
    }

    /// Derived properties reported alongside the axioms without affecting the verdict.
    pub fn diagnostics(self) -> &'static [AxiomId] {
        match self {
            StructureKind::Tangle => &[AxiomId::T4],
            StructureKind::Ultrafilter | StructureKind::WeakUltrafilter => &[AxiomId::F6],
            _ => &[],
        }
    }

    /// Whether the kind's verdict depends on the literal/corrected switch.
    pub fn has_variant(self) -> bool {
        self.axioms(Variant::Literal) != self.axioms(Variant::Corrected)
    }
}

impl fmt::Display for StructureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StructureKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm = s.replace('-', "_").to_ascii_lowercase();
        StructureKind::ALL
            .into_iter()
            .find(|k| k.name() == norm)
            .ok_or_else(|| Error::InvalidParameter(format!("unknown structure kind {:?}", s)))
    }
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomResult {
    pub axiom: AxiomId,
    pub pass: bool,
    /// Up to three separations demonstrating the failure; empty on pass.
    pub witness: Vec<Separation>,
    pub element: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub kind: StructureKind,
    pub variant: Variant,
    pub k: u32,
    pub axioms: Vec<AxiomResult>,
    /// Informational entries; never part of `pass`.
    pub diagnostics: Vec<AxiomResult>,
    pub pass: bool,
}

impl StructureReport {
    pub fn failures(&self) -> impl Iterator<Item = &AxiomResult> {
        self.axioms.iter().filter(|a| !a.pass)
    }
}

/// A failing instance: first sides of the witness separations plus an element.
type Failure = (Vec<u32>, Option<usize>);

/// Evaluation context shared by all clauses of one `(system, k, family)`.
struct Clauses<'a> {
    n: usize,
    full: u32,
    k: u32,
    orders: &'a [u32],
    member: Vec<bool>,
    members: Vec<u32>,
    singletons: Vec<usize>,
}

impl<'a> Clauses<'a> {
    fn new(system: &'a ConnectivitySystem, k: u32, family: &SeparationFamily) -> Result<Self> {
        if family.n() != system.n() {
            return Err(Error::MismatchedSystems);
        }
        let orders = system.order_table()?;
        let n = system.n();
        let mut member = vec![false; 1 << n];
        let members: Vec<u32> = family.sides().map(SubsetMask::bits).collect();
        for &a in &members {
            member[a as usize] = true;
        }
        let singletons = (0..n).filter(|&e| orders[1 << e] <= k).collect();
        Ok(Clauses { n, full: SubsetMask::full(n).bits(), k, orders, member, members, singletons })
    }

    #[inline]
    fn eff(&self, a: u32) -> bool {
        self.orders[a as usize] <= self.k
    }

    #[inline]
    fn has(&self, a: u32) -> bool {
        self.member[a as usize]
    }

    fn ordered_pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let m = &self.members;
        (0..m.len()).flat_map(move |i| (i..m.len()).map(move |j| (m[i], m[j])))
    }

    fn ordered_triples(&self) -> impl Iterator<Item = (u32, u32, u32)> + '_ {
        let m = &self.members;
        (0..m.len()).flat_map(move |i| {
            (i..m.len()).flat_map(move |j| (j..m.len()).map(move |l| (m[i], m[j], m[l])))
        })
    }

    fn first_failure(&self, axiom: AxiomId) -> Option<Failure> {
        use AxiomId::*;
        let full = self.full;
        let none = |w: Vec<u32>| Some((w, None));
        match axiom {
            T1 | F1 | P1 => (0..=full)
                .find(|&a| self.eff(a) && !self.has(a) && !self.has(full ^ a))
                .and_then(|a| none(vec![a])),
            T2 | P4 => self
                .singletons
                .iter()
                .find(|&&e| !self.has(1 << e))
                .map(|&e| (vec![1 << e], Some(e))),
            T3 => self
                .ordered_triples()
                .find(|&(a, b, c)| a | b | c == full)
                .and_then(|(a, b, c)| none(vec![a, b, c])),
            T4 => (!self.has(0)).then(|| (vec![0], None)),
            LT3 => self.ordered_pairs().find_map(|(a, b)| {
                self.singletons
                    .iter()
                    .find(|&&e| a | b | (1 << e) == full)
                    .map(|&e| (vec![a, b], Some(e)))
            }),
            F2 => self.has(0).then(|| (vec![0], None)),
            F3 => self
                .singletons
                .iter()
                .find(|&&e| self.has(1 << e))
                .map(|&e| (vec![1 << e], Some(e))),
            F4 => self.members.iter().find_map(|&a| {
                SubsetMask(a)
                    .supersets(self.n)
                    .map(SubsetMask::bits)
                    .find(|&b| self.eff(b) && !self.has(b))
                    .map(|b| (vec![a, b], None))
            }),
            F5 => self
                .ordered_pairs()
                .find(|&(a, b)| self.eff(a & b) && !self.has(a & b))
                .and_then(|(a, b)| none(vec![a, b, a & b])),
            F6 => self
                .ordered_triples()
                .find(|&(a, b, c)| a & b & c == 0)
                .and_then(|(a, b, c)| none(vec![a, b, c])),
            SF5 => self.members.iter().find_map(|&a| {
                self.singletons.iter().find_map(|&e| {
                    let c = a & !(1 << e);
                    (self.eff(c) && !self.has(c)).then(|| (vec![a, c], Some(e)))
                })
            }),
            WF5 => self
                .ordered_pairs()
                .find(|&(a, b)| self.eff(a & b) && a & b == 0)
                .and_then(|(a, b)| none(vec![a, b])),
            Consistent => self.members.iter().find_map(|&a| {
                SubsetMask(a)
                    .subsets()
                    .map(SubsetMask::bits)
                    .find(|&c| self.has(full ^ c))
                    .map(|c| (vec![a, c], None))
            }),
            P0 => self.members.iter().find(|&&a| !self.eff(a)).and_then(|&a| none(vec![a])),
            P2 => self.members.iter().find_map(|&b| {
                SubsetMask(b)
                    .subsets()
                    .map(SubsetMask::bits)
                    .find(|&a| self.eff(a) && !self.has(a))
                    .map(|a| (vec![b, a], None))
            }),
            P3aLiteral => self
                .ordered_pairs()
                .find(|&(a, b)| self.has(a & b))
                .and_then(|(a, b)| none(vec![a, b, a & b])),
            P3aCorrected => self
                .ordered_pairs()
                .find(|&(a, b)| self.has(full & !(a | b)))
                .and_then(|(a, b)| none(vec![a, b, full & !(a | b)])),
            P3b => self
                .ordered_pairs()
                .find(|&(a, b)| self.eff(a | b) && !self.has(a | b))
                .and_then(|(a, b)| none(vec![a, b, a | b])),
            SP3Literal => self.members.iter().find_map(|&a| {
                self.singletons.iter().find_map(|&e| {
                    let c = a & !(1 << e);
                    self.has(c).then(|| (vec![a, c], Some(e)))
                })
            }),
            SP3Corrected => self.members.iter().find_map(|&a| {
                self.singletons.iter().find_map(|&e| {
                    let c = full & !(a | (1 << e));
                    self.has(c).then(|| (vec![a, c], Some(e)))
                })
            }),
            FB1 => self.members.is_empty().then(|| (Vec::new(), None)),
            FB2 => self
                .ordered_pairs()
                .find(|&(a, b)| {
                    !SubsetMask(a & b).subsets().any(|c| self.has(c.bits()) && self.eff(c.bits()))
                })
                .and_then(|(a, b)| none(vec![a, b])),
        }
    }

    /// Re-evaluates the clause on one specific instance.
    fn instance_fails(&self, axiom: AxiomId, w: &[u32], e: Option<usize>) -> bool {
        use AxiomId::*;
        let full = self.full;
        let single = |e: Option<usize>| e.filter(|&e| e < self.n && self.eff(1 << e));
        match (axiom, w) {
            (T1 | F1 | P1, &[a]) => self.eff(a) && !self.has(a) && !self.has(full ^ a),
            (T2 | P4, &[s]) => single(e).is_some_and(|e| s == 1 << e && !self.has(s)),
            (T3, &[a, b, c]) => self.has(a) && self.has(b) && self.has(c) && a | b | c == full,
            (T4, &[z]) => z == 0 && !self.has(0),
            (LT3, &[a, b]) => {
                single(e).is_some_and(|e| self.has(a) && self.has(b) && a | b | (1 << e) == full)
            }
            (F2, &[z]) => z == 0 && self.has(0),
            (F3, &[s]) => single(e).is_some_and(|e| s == 1 << e && self.has(s)),
            (F4, &[a, b]) => self.has(a) && a & !b == 0 && self.eff(b) && !self.has(b),
            (F5, &[a, b, c]) => {
                self.has(a) && self.has(b) && c == a & b && self.eff(c) && !self.has(c)
            }
            (F6, &[a, b, c]) => self.has(a) && self.has(b) && self.has(c) && a & b & c == 0,
            (SF5, &[a, c]) => single(e).is_some_and(|e| {
                self.has(a) && c == a & !(1 << e) && self.eff(c) && !self.has(c)
            }),
            (WF5, &[a, b]) => self.has(a) && self.has(b) && self.eff(a & b) && a & b == 0,
            (Consistent, &[a, c]) => self.has(a) && c & !a == 0 && self.has(full ^ c),
            (P0, &[a]) => self.has(a) && !self.eff(a),
            (P2, &[b, a]) => self.has(b) && a & !b == 0 && self.eff(a) && !self.has(a),
            (P3aLiteral, &[a, b, c]) => self.has(a) && self.has(b) && c == a & b && self.has(c),
            (P3aCorrected, &[a, b, c]) => {
                self.has(a) && self.has(b) && c == full & !(a | b) && self.has(c)
            }
            (P3b, &[a, b, c]) => {
                self.has(a) && self.has(b) && c == a | b && self.eff(c) && !self.has(c)
            }
            (SP3Literal, &[a, c]) => {
                single(e).is_some_and(|e| self.has(a) && c == a & !(1 << e) && self.has(c))
            }
            (SP3Corrected, &[a, c]) => single(e)
                .is_some_and(|e| self.has(a) && c == full & !(a | (1 << e)) && self.has(c)),
            (FB1, &[]) => self.members.is_empty(),
            (FB2, &[a, b]) => {
                self.has(a)
                    && self.has(b)
                    && !SubsetMask(a & b).subsets().any(|c| self.has(c.bits()) && self.eff(c.bits()))
            }
            _ => false,
        }
    }
}

fn to_result(system: &ConnectivitySystem, axiom: AxiomId, failure: Option<Failure>) -> AxiomResult {
    match failure {
        None => AxiomResult { axiom, pass: true, witness: Vec::new(), element: None },
        Some((sides, element)) => AxiomResult {
            axiom,
            pass: false,
            witness: sides
                .into_iter()
                .map(|a| make_separation(system, SubsetMask(a)).expect("witness sides lie in X"))
                .collect(),
            element,
        },
    }
}

/// Evaluates one axiom clause literally on `family`, against order bound `k`.
pub fn check_axiom(
    system: &ConnectivitySystem,
    k: u32,
    family: &SeparationFamily,
    axiom: AxiomId,
) -> Result<AxiomResult> {
    let clauses = Clauses::new(system, k, family)?;
    Ok(to_result(system, axiom, clauses.first_failure(axiom)))
}

/// Re-evaluates a reported failure on its witness alone. True iff the
/// witness instance really violates the clause.
pub fn witness_refails(
    system: &ConnectivitySystem,
    k: u32,
    family: &SeparationFamily,
    result: &AxiomResult,
) -> Result<bool> {
    let clauses = Clauses::new(system, k, family)?;
    let sides: Vec<u32> = result.witness.iter().map(|s| s.first().bits()).collect();
    Ok(clauses.instance_fails(result.axiom, &sides, result.element))
}

/// Runs every axiom of `kind` (plus its informational diagnostics).
pub fn check_structure(
    system: &ConnectivitySystem,
    k: u32,
    family: &SeparationFamily,
    kind: StructureKind,
    variant: Variant,
) -> Result<StructureReport> {
    let clauses = Clauses::new(system, k, family)?;
    let run = |axiom| to_result(system, axiom, clauses.first_failure(axiom));
    let axioms: Vec<AxiomResult> = kind.axioms(variant).into_iter().map(run).collect();
    let diagnostics = kind.diagnostics().iter().copied().map(run).collect();
    let pass = axioms.iter().all(|a| a.pass);
    Ok(StructureReport { kind, variant, k, axioms, diagnostics, pass })
}

/// Quick pass/fail form of [`check_structure`] that stops at the first failing axiom.
pub fn passes(
    system: &ConnectivitySystem,
    k: u32,
    family: &SeparationFamily,
    kind: StructureKind,
    variant: Variant,
) -> Result<bool> {
    let clauses = Clauses::new(system, k, family)?;
    Ok(kind.axioms(variant).into_iter().all(|a| clauses.first_failure(a).is_none()))
}

/// Upward closure of a filter base among separations of order `<= k`.
pub fn check_filter_base_generates(
    system: &ConnectivitySystem,
    k: u32,
    base: &SeparationFamily,
) -> Result<SeparationFamily> {
    let clauses = Clauses::new(system, k, base)?;
    for axiom in [AxiomId::FB1, AxiomId::FB2] {
        if let Some(failure) = clauses.first_failure(axiom) {
            return Err(Error::NotAFilterBase(Box::new(to_result(system, axiom, Some(failure)))));
        }
    }
    let closure = SubsetMask::all(system.n())
        .filter(|a| clauses.eff(a.bits()) && base.sides().any(|b| b.is_subset_of(*a)));
    SeparationFamily::from_sides(system, k, closure)
}
