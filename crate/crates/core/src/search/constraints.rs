//! Compilation of a structure kind's axioms into forbidden membership
//! patterns over the `k`-efficient sides, used to prune the orientation
//! search. Leaves are still confirmed by the literal checkers in
//! [`crate::structures`]; this encoding only decides where to stop early.

use crate::structures::{AxiomId, StructureKind, Variant};

/// Violated iff every `yes` side is a member and the `no` side (if any) is not.
#[derive(Clone, Debug)]
pub(crate) struct Pattern {
    yes: [u32; 3],
    len: u8,
    no: Option<u32>,
}

impl Pattern {
    fn new(yes: &[u32], no: Option<u32>) -> Self {
        let mut sorted = [0u32; 3];
        let mut len = 0;
        for &a in yes {
            if !sorted[..len].contains(&a) {
                sorted[len] = a;
                len += 1;
            }
        }
        Pattern { yes: sorted, len: len as u8, no }
    }

    fn masks(&self) -> impl Iterator<Item = u32> + '_ {
        self.yes[..self.len as usize].iter().copied().chain(self.no)
    }

    #[inline]
    pub(crate) fn violated(&self, state: &[Membership]) -> bool {
        self.yes[..self.len as usize].iter().all(|&a| state[a as usize] == Membership::In)
            && self.no.is_none_or(|b| state[b as usize] == Membership::Out)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub(crate) enum Membership {
    Unknown,
    In,
    Out,
}

pub(crate) struct Patterns {
    patterns: Vec<Pattern>,
    watch: Vec<Vec<u32>>,
}

impl Patterns {
    /// Patterns mentioning `mask`.
    pub(crate) fn watching(&self, mask: u32) -> impl Iterator<Item = &Pattern> {
        self.watch[mask as usize].iter().map(move |&i| &self.patterns[i as usize])
    }
}

struct Builder<'a> {
    n: usize,
    full: u32,
    k: u32,
    orders: &'a [u32],
    eff: Vec<u32>,
    singletons: Vec<u32>,
    out: Vec<Pattern>,
}

impl Builder<'_> {
    fn eff(&self, a: u32) -> bool {
        self.orders[a as usize] <= self.k
    }

    fn pairs(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        let e = &self.eff;
        (0..e.len()).flat_map(move |i| (i..e.len()).map(move |j| (e[i], e[j])))
    }

    fn forbid(&mut self, yes: &[u32]) {
        self.out.push(Pattern::new(yes, None));
    }

    fn require(&mut self, yes: &[u32], then: u32) {
        // trivially satisfied when the conclusion is one of the premises
        if !yes.contains(&then) {
            self.out.push(Pattern::new(yes, Some(then)));
        }
    }

    fn add(&mut self, axiom: AxiomId) {
        use AxiomId::*;
        let full = self.full;
        match axiom {
            // guaranteed by the search shape
            P0 | T1 | F1 | P1 => {}
            T2 | P4 => {
                for s in self.singletons.clone() {
                    self.require(&[], s);
                }
            }
            T3 => {
                let e = self.eff.clone();
                for i in 0..e.len() {
                    for j in i..e.len() {
                        let ab = e[i] | e[j];
                        for &c in &e[j..] {
                            if ab | c == full {
                                self.forbid(&[e[i], e[j], c]);
                            }
                        }
                    }
                }
            }
            T4 => {
                if self.eff(0) {
                    self.require(&[], 0);
                }
            }
            LT3 => {
                let found: Vec<_> = self
                    .pairs()
                    .filter(|&(a, b)| self.singletons.iter().any(|&s| a | b | s == full))
                    .collect();
                for (a, b) in found {
                    self.forbid(&[a, b]);
                }
            }
            F2 => {
                if self.eff(0) {
                    self.forbid(&[0]);
                }
            }
            F3 => {
                for s in self.singletons.clone() {
                    self.forbid(&[s]);
                }
            }
            F4 => {
                for a in self.eff.clone() {
                    for b in self.eff.clone() {
                        if a & !b == 0 {
                            self.require(&[a], b);
                        }
                    }
                }
            }
            F5 => {
                let found: Vec<_> = self.pairs().filter(|&(a, b)| self.eff(a & b)).collect();
                for (a, b) in found {
                    self.require(&[a, b], a & b);
                }
            }
            F6 => {
                let e = self.eff.clone();
                for i in 0..e.len() {
                    for j in i..e.len() {
                        for &c in &e[j..] {
                            if e[i] & e[j] & c == 0 {
                                self.forbid(&[e[i], e[j], c]);
                            }
                        }
                    }
                }
            }
            SF5 => {
                for a in self.eff.clone() {
                    for s in self.singletons.clone() {
                        let c = a & !s;
                        if self.eff(c) {
                            self.require(&[a], c);
                        }
                    }
                }
            }
            WF5 => {
                let found: Vec<_> =
                    self.pairs().filter(|&(a, b)| a & b == 0 && self.eff(0)).collect();
                for (a, b) in found {
                    self.forbid(&[a, b]);
                }
            }
            Consistent => {
                let found: Vec<_> = self.pairs().filter(|&(a, b)| a | b == full).collect();
                for (a, b) in found {
                    self.forbid(&[a, b]);
                }
            }
            P2 => {
                for b in self.eff.clone() {
                    for a in self.eff.clone() {
                        if a & !b == 0 {
                            self.require(&[b], a);
                        }
                    }
                }
            }
            P3aLiteral => {
                let found: Vec<_> = self.pairs().filter(|&(a, b)| self.eff(a & b)).collect();
                for (a, b) in found {
                    self.forbid(&[a, b, a & b]);
                }
            }
            P3aCorrected => {
                let found: Vec<_> =
                    self.pairs().filter(|&(a, b)| self.eff(full & !(a | b))).collect();
                for (a, b) in found {
                    self.forbid(&[a, b, full & !(a | b)]);
                }
            }
            P3b => {
                let found: Vec<_> = self.pairs().filter(|&(a, b)| self.eff(a | b)).collect();
                for (a, b) in found {
                    self.require(&[a, b], a | b);
                }
            }
            SP3Literal => {
                for a in self.eff.clone() {
                    for s in self.singletons.clone() {
                        if self.eff(a & !s) {
                            self.forbid(&[a, a & !s]);
                        }
                    }
                }
            }
            SP3Corrected => {
                for a in self.eff.clone() {
                    for s in self.singletons.clone() {
                        let c = full & !(a | s);
                        if self.eff(c) {
                            self.forbid(&[a, c]);
                        }
                    }
                }
            }
            FB1 | FB2 => unreachable!("filter bases are not searched"),
        }
    }
}

/// Forbidden patterns for `kind` over members drawn from the `k`-efficient sides.
pub(crate) fn compile(
    kind: StructureKind,
    variant: Variant,
    n: usize,
    k: u32,
    orders: &[u32],
) -> Patterns {
    let full = ((1u64 << n) - 1) as u32;
    let eff: Vec<u32> = (0..=full).filter(|&a| orders[a as usize] <= k).collect();
    let singletons = (0..n).map(|e| 1u32 << e).filter(|&s| orders[s as usize] <= k).collect();
    let mut builder = Builder { n, full, k, orders, eff, singletons, out: Vec::new() };
    for axiom in kind.axioms(variant) {
        builder.add(axiom);
    }
    let mut watch = vec![Vec::new(); 1 << builder.n];
    for (i, p) in builder.out.iter().enumerate() {
        let mut seen = [u32::MAX; 4];
        for (slot, m) in p.masks().enumerate() {
            if !seen.contains(&m) {
                watch[m as usize].push(i as u32);
            }
            seen[slot] = m;
        }
    }
    Patterns { patterns: builder.out, watch }
}
