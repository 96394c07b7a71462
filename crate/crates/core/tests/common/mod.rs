//! Proptest strategies for random expressions, axioms and ontologies over
//! small fixed name pools.

use proptest::prelude::*;

use dlkit_core::ast::{build_ontology, Axiom, CharacteristicKind, ConceptExpr, Ontology, RoleExpr};

#[derive(Clone, Copy)]
pub struct Pools {
    pub inds: &'static [&'static str],
    pub concepts: &'static [&'static str],
    pub roles: &'static [&'static str],
}

/// Rich pools for syntax-level properties.
pub const SYNTAX_POOLS: Pools = Pools {
    inds: &["a", "b", "julia", "john"],
    concepts: &["A", "B", "Mother", "Parent"],
    roles: &["r", "s", "parentOf", "childOf"],
};

/// Tiny pools for model-enumeration properties, where every extra role name
/// multiplies the interpretation space by 2^(n²).
pub const MODEL_POOLS: Pools = Pools {
    inds: &["a", "b"],
    concepts: &["A"],
    roles: &["r"],
};

pub fn role_strategy(pools: Pools) -> impl Strategy<Value = RoleExpr> {
    prop_oneof![
        6 => proptest::sample::select(pools.roles.to_vec()).prop_map(RoleExpr::named),
        2 => proptest::sample::select(pools.roles.to_vec()).prop_map(RoleExpr::inverse_of),
        1 => Just(RoleExpr::Universal),
    ]
}

pub fn concept_strategy(pools: Pools, depth: u32) -> BoxedStrategy<ConceptExpr> {
    let leaf = prop_oneof![
        4 => proptest::sample::select(pools.concepts.to_vec()).prop_map(ConceptExpr::named),
        1 => Just(ConceptExpr::Top),
        1 => Just(ConceptExpr::Bottom),
        1 => proptest::sample::select(pools.inds.to_vec()).prop_map(ConceptExpr::nominal),
        1 => role_strategy(pools).prop_map(ConceptExpr::HasSelf),
    ];
    leaf.prop_recursive(depth, 16, 2, move |inner| {
        prop_oneof![
            2 => (inner.clone(), inner.clone()).prop_map(|(l, r)| ConceptExpr::and(l, r)),
            2 => (inner.clone(), inner.clone()).prop_map(|(l, r)| ConceptExpr::or(l, r)),
            2 => inner.clone().prop_map(ConceptExpr::not),
            2 => (role_strategy(pools), inner.clone())
                .prop_map(|(role, f)| ConceptExpr::exists(role, f)),
            2 => (role_strategy(pools), inner.clone())
                .prop_map(|(role, f)| ConceptExpr::forall(role, f)),
            1 => (0u32..=3, role_strategy(pools), inner.clone())
                .prop_map(|(n, role, f)| ConceptExpr::at_least(n, role, f)),
            1 => (0u32..=3, role_strategy(pools), inner)
                .prop_map(|(n, role, f)| ConceptExpr::at_most(n, role, f)),
        ]
    })
    .boxed()
}

pub fn characteristic_strategy() -> impl Strategy<Value = CharacteristicKind> {
    prop_oneof![
        Just(CharacteristicKind::Transitive),
        Just(CharacteristicKind::Symmetric),
        Just(CharacteristicKind::Asymmetric),
        Just(CharacteristicKind::Reflexive),
        Just(CharacteristicKind::Irreflexive),
    ]
}

pub fn axiom_strategy(pools: Pools, depth: u32) -> BoxedStrategy<Axiom> {
    let ind = || proptest::sample::select(pools.inds.to_vec());
    let concept = move || concept_strategy(pools, depth);
    // Named roles only for characteristics keeps desugaring total.
    let named_role = proptest::sample::select(pools.roles.to_vec()).prop_map(RoleExpr::named);
    prop_oneof![
        3 => (concept(), ind()).prop_map(|(c, a)| Axiom::ConceptAssertion(c, a.to_string())),
        3 => (role_strategy(pools), ind(), ind())
            .prop_map(|(r, a, b)| Axiom::RoleAssertion(r, a.to_string(), b.to_string())),
        1 => (ind(), ind()).prop_map(|(a, b)| Axiom::Equal(a.to_string(), b.to_string())),
        1 => (ind(), ind()).prop_map(|(a, b)| Axiom::NotEqual(a.to_string(), b.to_string())),
        4 => (concept(), concept()).prop_map(|(l, r)| Axiom::ConceptIncl(l, r)),
        2 => (concept(), concept()).prop_map(|(l, r)| Axiom::ConceptEquiv(l, r)),
        2 => (role_strategy(pools), role_strategy(pools)).prop_map(|(l, r)| Axiom::RoleIncl(l, r)),
        1 => (role_strategy(pools), role_strategy(pools)).prop_map(|(l, r)| Axiom::RoleEquiv(l, r)),
        1 => (role_strategy(pools), role_strategy(pools), role_strategy(pools))
            .prop_map(|(r1, r2, s)| Axiom::ComplexRoleIncl(r1, r2, s)),
        1 => (role_strategy(pools), role_strategy(pools))
            .prop_map(|(l, r)| Axiom::RoleDisjoint(l, r)),
        1 => (characteristic_strategy(), named_role)
            .prop_map(|(kind, r)| Axiom::Characteristic(kind, r)),
    ]
    .boxed()
}

pub fn ontology_strategy(pools: Pools, depth: u32, max_axioms: usize) -> BoxedStrategy<Ontology> {
    proptest::collection::vec(axiom_strategy(pools, depth), 0..=max_axioms)
        .prop_map(|axioms| build_ontology(axioms).expect("pools are kind-disjoint"))
        .boxed()
}
