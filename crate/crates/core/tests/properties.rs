use proptest::prelude::*;

use tangles::connectivity::{ConnectivitySystem, VerifyMode};
use tangles::io::{self, FamilyDoc};
use tangles::search::{
    enumerate_all, generate_random_system, hunt, HuntCorpus, HuntVerdict, Problem, SearchBudget,
};
use tangles::separation::make_separation;
use tangles::structures::witness_refails;
use tangles::{
    check_axiom, check_structure, corpus, dual_family, AxiomId, Descriptor, SeparationFamily,
    StructureKind, SubsetMask, Variant,
};

fn system() -> impl Strategy<Value = ConnectivitySystem> {
    (2usize..=6, 0usize..=7, 2usize..=4, any::<u64>())
        .prop_map(|(n, h, r, seed)| generate_random_system(n, h, r, seed).unwrap())
}

/// A system, a bound `k` within its order range, and an arbitrary family.
fn instance() -> impl Strategy<Value = (ConnectivitySystem, u32, SeparationFamily)> {
    system().prop_flat_map(|s| {
        let n = s.n();
        let top = s.max_order();
        (Just(s), 0..=top, proptest::collection::vec(any::<bool>(), 1 << n)).prop_map(|(s, k, pick)| {
            let sides = (0..pick.len() as u32).filter(|&a| pick[a as usize]).map(SubsetMask);
            let f = SeparationFamily::from_sides(&s, k, sides).unwrap();
            (s, k, f)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hyperedge_systems_are_symmetric_submodular(mut s in system()) {
        let report = s.verify_axioms(VerifyMode::Exhaustive).unwrap();
        prop_assert!(report.passed());
        prop_assert!(s.is_verified());
    }

    #[test]
    fn dual_is_an_order_preserving_involution((_s, _k, f) in instance()) {
        let d = dual_family(&f);
        prop_assert_eq!(dual_family(&d), f.clone());
        prop_assert_eq!(d.len(), f.len());
        let mut a: Vec<u32> = f.members().iter().map(|m| m.order()).collect();
        let mut b: Vec<u32> = d.members().iter().map(|m| m.order()).collect();
        a.sort_unstable();
        b.sort_unstable();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn failing_axioms_carry_witnesses_that_refail((s, k, f) in instance()) {
        for axiom in AxiomId::ALL {
            let r = check_axiom(&s, k, &f, axiom).unwrap();
            if r.pass {
                prop_assert!(r.witness.is_empty() && r.element.is_none(), "{} {:?}", axiom, r);
            } else {
                prop_assert!(witness_refails(&s, k, &f, &r).unwrap(), "{} {:?}", axiom, r);
            }
        }
    }

    #[test]
    fn reversal_reverses_the_order(a in 0u32..64, c in 0u32..64) {
        let s = corpus::min_cardinality(6);
        let x = make_separation(&s, SubsetMask(a)).unwrap();
        let y = make_separation(&s, SubsetMask(c)).unwrap();
        prop_assert_eq!(x.leq(&y).unwrap(), y.reverse().leq(&x.reverse()).unwrap());
    }

    #[test]
    fn family_documents_are_canonical((s, _k, f) in instance()) {
        let text = io::to_canonical_string(&FamilyDoc::from_family(&f)).unwrap();
        let doc: FamilyDoc = io::from_document_str(&text).unwrap();
        prop_assert_eq!(doc.to_family(&s).unwrap(), f);
        prop_assert_eq!(io::to_canonical_string(&doc).unwrap(), text);
    }

    #[test]
    fn system_documents_are_canonical(s in system()) {
        let text = io::to_canonical_string(s.descriptor()).unwrap();
        let back: Descriptor = io::from_document_str(&text).unwrap();
        prop_assert_eq!(&back, s.descriptor());
        prop_assert_eq!(io::to_canonical_string(&back).unwrap(), text);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn searched_families_pass_their_checks(s in system()) {
        let budget = SearchBudget::default();
        for k in 0..=s.max_order() {
            for kind in [StructureKind::Tangle, StructureKind::Ultrafilter, StructureKind::WeakUltrafilter, StructureKind::NonPrincipalProfile] {
                let out = enumerate_all(kind, Variant::Corrected, &s, k, &budget).unwrap();
                prop_assert!(out.is_complete());
                for f in &out.families {
                    prop_assert!(check_structure(&s, k, f, kind, Variant::Corrected).unwrap().pass);
                }
            }
        }
    }
}

#[test]
fn hunt_verdict_survives_a_file_round_trip() {
    let corpus = HuntCorpus {
        label: "min3".into(),
        seed: None,
        systems: vec![corpus::sys_min3()],
        k_max: Some(1),
    };
    let verdict = hunt(Problem::TripleIntersection, &corpus, &SearchBudget::default()).unwrap();
    assert_eq!(verdict.counterexamples.len(), 1);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("verdict.json");
    io::save(&verdict, &path).unwrap();
    let back: HuntVerdict = io::load(&path).unwrap();
    assert_eq!(back, verdict);
    assert!(back.counterexamples[0].refails().unwrap());
    let again = dir.path().join("again.json");
    io::save(&back, &again).unwrap();
    assert_eq!(std::fs::read(&path).unwrap(), std::fs::read(&again).unwrap());
}
