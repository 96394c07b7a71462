//! Semantic identities checked over all interpretations of a small
//! signature, for randomly generated expressions.

mod common;

use std::ops::ControlFlow;

use proptest::prelude::*;

use common::{concept_strategy, role_strategy, MODEL_POOLS};
use dlkit_core::ast::{Axiom, ConceptExpr, NameKind, RoleExpr, Signature};
use dlkit_core::reasoner::for_each_interpretation;
use dlkit_core::semantics::{eval_concept, eval_role, satisfies_axiom, ElemSet, Interpretation};

fn pool_signature() -> Signature {
    let mut sig = Signature::new();
    for n in MODEL_POOLS.inds {
        sig.insert(n, NameKind::Individual).unwrap();
    }
    for n in MODEL_POOLS.concepts {
        sig.insert(n, NameKind::Concept).unwrap();
    }
    for n in MODEL_POOLS.roles {
        sig.insert(n, NameKind::Role).unwrap();
    }
    sig
}

fn for_all_pool_interps(max_size: usize, mut f: impl FnMut(&Interpretation)) {
    let sig = pool_signature();
    for size in 1..=max_size {
        for_each_interpretation(&sig, size, |interp| {
            f(interp);
            ControlFlow::Continue(())
        })
        .unwrap();
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn forall_is_dual_to_exists(
        c in concept_strategy(MODEL_POOLS, 3),
        role in role_strategy(MODEL_POOLS),
    ) {
        let forall = ConceptExpr::forall(role.clone(), c.clone());
        let dual = ConceptExpr::not(ConceptExpr::exists(role, ConceptExpr::not(c)));
        for_all_pool_interps(2, |interp| {
            assert_eq!(
                eval_concept(&forall, interp).unwrap(),
                eval_concept(&dual, interp).unwrap(),
            );
        });
    }

    #[test]
    fn excluded_middle_and_contradiction(c in concept_strategy(MODEL_POOLS, 3)) {
        let lem = ConceptExpr::or(c.clone(), ConceptExpr::not(c.clone()));
        let contradiction = ConceptExpr::and(c.clone(), ConceptExpr::not(c));
        for_all_pool_interps(2, |interp| {
            let n = interp.domain_size();
            assert_eq!(eval_concept(&lem, interp).unwrap(), ElemSet::full(n));
            assert_eq!(eval_concept(&contradiction, interp).unwrap(), ElemSet::EMPTY);
            assert_eq!(eval_concept(&ConceptExpr::Top, interp).unwrap(), ElemSet::full(n));
            assert_eq!(eval_concept(&ConceptExpr::Bottom, interp).unwrap(), ElemSet::EMPTY);
        });
    }

    #[test]
    fn at_least_zero_is_top_and_no_successors_satisfy_at_most(
        c in concept_strategy(MODEL_POOLS, 2),
        role in role_strategy(MODEL_POOLS),
        k in 0u32..=2,
    ) {
        let at_least0 = ConceptExpr::at_least(0, role.clone(), c.clone());
        let at_most = ConceptExpr::at_most(k, role.clone(), c);
        for_all_pool_interps(2, |interp| {
            let n = interp.domain_size();
            assert_eq!(eval_concept(&at_least0, interp).unwrap(), ElemSet::full(n));
            let rel = eval_role(&role, interp).unwrap();
            let result = eval_concept(&at_most, interp).unwrap();
            for x in 0..n {
                if rel.successors(x).is_empty() {
                    assert!(result.contains(x));
                }
            }
        });
    }

    #[test]
    fn equivalence_is_mutual_inclusion(
        l in concept_strategy(MODEL_POOLS, 3),
        r in concept_strategy(MODEL_POOLS, 3),
    ) {
        let equiv = Axiom::ConceptEquiv(l.clone(), r.clone());
        let fwd = Axiom::ConceptIncl(l.clone(), r.clone());
        let back = Axiom::ConceptIncl(r, l);
        for_all_pool_interps(2, |interp| {
            let both = satisfies_axiom(&fwd, interp).unwrap() && satisfies_axiom(&back, interp).unwrap();
            assert_eq!(satisfies_axiom(&equiv, interp).unwrap(), both);
        });
    }

    #[test]
    fn role_equivalence_is_mutual_inclusion(
        l in role_strategy(MODEL_POOLS),
        r in role_strategy(MODEL_POOLS),
    ) {
        let equiv = Axiom::RoleEquiv(l.clone(), r.clone());
        let fwd = Axiom::RoleIncl(l.clone(), r.clone());
        let back = Axiom::RoleIncl(r, l);
        for_all_pool_interps(2, |interp| {
            let both = satisfies_axiom(&fwd, interp).unwrap() && satisfies_axiom(&back, interp).unwrap();
            assert_eq!(satisfies_axiom(&equiv, interp).unwrap(), both);
        });
    }
}

#[test]
fn empty_role_pattern_characterizes_empty_relations() {
    // Top SubClassOf not exists r.Top holds exactly when r is empty.
    let pattern = Axiom::ConceptIncl(
        ConceptExpr::Top,
        ConceptExpr::not(ConceptExpr::exists(RoleExpr::named("r"), ConceptExpr::Top)),
    );
    for_all_pool_interps(2, |interp| {
        let empty = interp.role_relation("r").unwrap().is_empty();
        assert_eq!(satisfies_axiom(&pattern, interp).unwrap(), empty);
    });
}

#[test]
fn evaluation_ignores_unrelated_names() {
    // Justifies checking concept identities over the sub-signature of the
    // names that actually occur.
    let c = ConceptExpr::forall(
        RoleExpr::named("r"),
        ConceptExpr::and(ConceptExpr::named("A"), ConceptExpr::nominal("a")),
    );
    for_all_pool_interps(2, |interp| {
        let base = eval_concept(&c, interp).unwrap();
        let mut extended = interp.clone();
        extended.set_concept("Unrelated", ElemSet::full(interp.domain_size())).unwrap();
        extended.set_role("unrelatedRole", &[(0, 0)]).unwrap();
        extended.set_individual("unrelatedInd", 0).unwrap();
        assert_eq!(eval_concept(&c, &extended).unwrap(), base);
    });
}
