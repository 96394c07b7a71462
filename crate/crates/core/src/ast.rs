//! Core data model for SROIQ ontologies: signatures, role and concept
//! expressions, axioms and ontologies.
//!
//! Name kinds (individual, concept, role) are never declared up front; they
//! are inferred from the syntactic position in which a name is used. Using
//! the same name in two different positions is a hard error.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// The three kinds of names an ontology can use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NameKind {
    Individual,
    Concept,
    Role,
}

impl fmt::Display for NameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NameKind::Individual => write!(f, "individual"),
            NameKind::Concept => write!(f, "concept"),
            NameKind::Role => write!(f, "role"),
        }
    }
}

/// The signature of an ontology: three pairwise disjoint finite name sets.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Signature {
    pub individuals: BTreeSet<String>,
    pub concepts: BTreeSet<String>,
    pub roles: BTreeSet<String>,
}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    /// Kind under which `name` is registered, if any.
    pub fn kind_of(&self, name: &str) -> Option<NameKind> {
        if self.individuals.contains(name) {
            Some(NameKind::Individual)
        } else if self.concepts.contains(name) {
            Some(NameKind::Concept)
        } else if self.roles.contains(name) {
            Some(NameKind::Role)
        } else {
            None
        }
    }

    /// Registers `name` as `kind`, failing if it already has another kind.
    pub fn insert(&mut self, name: &str, kind: NameKind) -> Result<(), AstError> {
        match self.kind_of(name) {
            Some(existing) if existing != kind => Err(AstError::NameKindConflict {
                name: name.to_string(),
                first: existing,
                second: kind,
            }),
            _ => {
                let set = match kind {
                    NameKind::Individual => &mut self.individuals,
                    NameKind::Concept => &mut self.concepts,
                    NameKind::Role => &mut self.roles,
                };
                set.insert(name.to_string());
                Ok(())
            }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty() && self.concepts.is_empty() && self.roles.is_empty()
    }
}

/// A role expression: the universal role, a role name, or the inverse of a
/// role name. Inverses of inverses are unrepresentable by construction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RoleExpr {
    Universal,
    Named(String),
    Inverse(String),
}

impl RoleExpr {
    pub fn named(name: &str) -> Self {
        RoleExpr::Named(name.to_string())
    }

    pub fn inverse_of(name: &str) -> Self {
        RoleExpr::Inverse(name.to_string())
    }

    /// The inverse role expression, reading the inverse of an inverse as the
    /// underlying named role. The universal role is its own inverse.
    pub fn inverse(&self) -> RoleExpr {
        match self {
            RoleExpr::Universal => RoleExpr::Universal,
            RoleExpr::Named(r) => RoleExpr::Inverse(r.clone()),
            RoleExpr::Inverse(r) => RoleExpr::Named(r.clone()),
        }
    }

    /// The role name this expression is built from, if it is not universal.
    pub fn name(&self) -> Option<&str> {
        match self {
            RoleExpr::Universal => None,
            RoleExpr::Named(r) | RoleExpr::Inverse(r) => Some(r),
        }
    }
}

/// A concept expression.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ConceptExpr {
    /// Named (atomic) concept.
    Named(String),
    /// Intersection of two concepts.
    And(Box<ConceptExpr>, Box<ConceptExpr>),
    /// Union of two concepts.
    Or(Box<ConceptExpr>, Box<ConceptExpr>),
    /// Complement.
    Not(Box<ConceptExpr>),
    /// Top concept: every individual.
    Top,
    /// Bottom concept: no individuals.
    Bottom,
    /// Existential restriction: elements with some successor in the filler.
    Exists(RoleExpr, Box<ConceptExpr>),
    /// Universal restriction: elements all of whose successors are in the filler.
    Forall(RoleExpr, Box<ConceptExpr>),
    /// At-least restriction: elements with at least `n` distinct successors in the filler.
    AtLeast(u32, RoleExpr, Box<ConceptExpr>),
    /// At-most restriction: elements with at most `n` distinct successors in the filler.
    AtMost(u32, RoleExpr, Box<ConceptExpr>),
    /// Local reflexivity: elements related to themselves.
    HasSelf(RoleExpr),
    /// Nominal: the concept with exactly the named individual as instance.
    Nominal(String),
}

impl ConceptExpr {
    pub fn named(name: &str) -> Self {
        ConceptExpr::Named(name.to_string())
    }

    pub fn and(l: ConceptExpr, r: ConceptExpr) -> Self {
        ConceptExpr::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: ConceptExpr, r: ConceptExpr) -> Self {
        ConceptExpr::Or(Box::new(l), Box::new(r))
    }

    pub fn not(c: ConceptExpr) -> Self {
        ConceptExpr::Not(Box::new(c))
    }

    pub fn exists(role: RoleExpr, filler: ConceptExpr) -> Self {
        ConceptExpr::Exists(role, Box::new(filler))
    }

    pub fn forall(role: RoleExpr, filler: ConceptExpr) -> Self {
        ConceptExpr::Forall(role, Box::new(filler))
    }

    pub fn at_least(n: u32, role: RoleExpr, filler: ConceptExpr) -> Self {
        ConceptExpr::AtLeast(n, role, Box::new(filler))
    }

    pub fn at_most(n: u32, role: RoleExpr, filler: ConceptExpr) -> Self {
        ConceptExpr::AtMost(n, role, Box::new(filler))
    }

    pub fn nominal(ind: &str) -> Self {
        ConceptExpr::Nominal(ind.to_string())
    }
}

/// Role characteristics expressible as syntactic sugar over core axioms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CharacteristicKind {
    Transitive,
    Symmetric,
    Asymmetric,
    Reflexive,
    Irreflexive,
}

impl fmt::Display for CharacteristicKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CharacteristicKind::Transitive => write!(f, "Transitive"),
            CharacteristicKind::Symmetric => write!(f, "Symmetric"),
            CharacteristicKind::Asymmetric => write!(f, "Asymmetric"),
            CharacteristicKind::Reflexive => write!(f, "Reflexive"),
            CharacteristicKind::Irreflexive => write!(f, "Irreflexive"),
        }
    }
}

/// An axiom: ABox (assertions, equalities), TBox (concept inclusions and
/// equivalences) or RBox (role inclusions, equivalences, binary compositions,
/// disjointness, characteristics).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// `a : C` — the individual is an instance of the concept.
    ConceptAssertion(ConceptExpr, String),
    /// `(a, b) : R` — the pair is in the role.
    RoleAssertion(RoleExpr, String, String),
    /// `a = b` — two names denote the same element.
    Equal(String, String),
    /// `a != b` — two names denote distinct elements.
    NotEqual(String, String),
    /// `C SubClassOf D`.
    ConceptIncl(ConceptExpr, ConceptExpr),
    /// `C EquivalentTo D`.
    ConceptEquiv(ConceptExpr, ConceptExpr),
    /// `R SubRoleOf S`.
    RoleIncl(RoleExpr, RoleExpr),
    /// `R EquivalentRole S`.
    RoleEquiv(RoleExpr, RoleExpr),
    /// `R1 o R2 SubRoleOf S` — composition only ever appears on the left,
    /// with exactly two roles.
    ComplexRoleIncl(RoleExpr, RoleExpr, RoleExpr),
    /// `Disjoint(R, S)`.
    RoleDisjoint(RoleExpr, RoleExpr),
    /// Sugar form, e.g. `Transitive(R)`; eliminated by desugaring.
    Characteristic(CharacteristicKind, RoleExpr),
}

/// An ontology: a signature plus an ordered list of axioms. Axiom order is
/// preserved for printing; the logic treats the list as a set.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Ontology {
    pub signature: Signature,
    pub axioms: Vec<Axiom>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AstError {
    #[error("name '{name}' is used both as a {first} and as a {second}")]
    NameKindConflict {
        name: String,
        first: NameKind,
        second: NameKind,
    },
}

fn walk_role(r: &RoleExpr, out: &mut Vec<(String, NameKind)>) {
    if let Some(name) = r.name() {
        out.push((name.to_string(), NameKind::Role));
    }
}

fn walk_concept(c: &ConceptExpr, out: &mut Vec<(String, NameKind)>) {
    match c {
        ConceptExpr::Named(n) => out.push((n.clone(), NameKind::Concept)),
        ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) => {
            walk_concept(l, out);
            walk_concept(r, out);
        }
        ConceptExpr::Not(inner) => walk_concept(inner, out),
        ConceptExpr::Top | ConceptExpr::Bottom => {}
        ConceptExpr::Exists(role, f) | ConceptExpr::Forall(role, f) => {
            walk_role(role, out);
            walk_concept(f, out);
        }
        ConceptExpr::AtLeast(_, role, f) | ConceptExpr::AtMost(_, role, f) => {
            walk_role(role, out);
            walk_concept(f, out);
        }
        ConceptExpr::HasSelf(role) => walk_role(role, out),
        ConceptExpr::Nominal(a) => out.push((a.clone(), NameKind::Individual)),
    }
}

/// Every name used in the axiom together with the kind its position implies,
/// in left-to-right syntactic order. Names may repeat.
pub fn named_uses(axiom: &Axiom) -> Vec<(String, NameKind)> {
    let mut out = Vec::new();
    match axiom {
        Axiom::ConceptAssertion(c, a) => {
            out.push((a.clone(), NameKind::Individual));
            walk_concept(c, &mut out);
        }
        Axiom::RoleAssertion(r, a, b) => {
            out.push((a.clone(), NameKind::Individual));
            out.push((b.clone(), NameKind::Individual));
            walk_role(r, &mut out);
        }
        Axiom::Equal(a, b) | Axiom::NotEqual(a, b) => {
            out.push((a.clone(), NameKind::Individual));
            out.push((b.clone(), NameKind::Individual));
        }
        Axiom::ConceptIncl(l, r) | Axiom::ConceptEquiv(l, r) => {
            walk_concept(l, &mut out);
            walk_concept(r, &mut out);
        }
        Axiom::RoleIncl(l, r) | Axiom::RoleEquiv(l, r) | Axiom::RoleDisjoint(l, r) => {
            walk_role(l, &mut out);
            walk_role(r, &mut out);
        }
        Axiom::ComplexRoleIncl(r1, r2, s) => {
            walk_role(r1, &mut out);
            walk_role(r2, &mut out);
            walk_role(s, &mut out);
        }
        Axiom::Characteristic(_, r) => walk_role(r, &mut out),
    }
    out
}

/// The names occurring in the axiom, partitioned by the kind their syntactic
/// position implies: (individuals, concepts, roles).
pub fn free_names(axiom: &Axiom) -> (BTreeSet<String>, BTreeSet<String>, BTreeSet<String>) {
    let mut inds = BTreeSet::new();
    let mut concepts = BTreeSet::new();
    let mut roles = BTreeSet::new();
    for (name, kind) in named_uses(axiom) {
        match kind {
            NameKind::Individual => inds.insert(name),
            NameKind::Concept => concepts.insert(name),
            NameKind::Role => roles.insert(name),
        };
    }
    (inds, concepts, roles)
}

/// Builds an ontology from axioms, computing the signature from the names
/// used. Fails if some name is used in two different kinds of position.
pub fn build_ontology(axioms: Vec<Axiom>) -> Result<Ontology, AstError> {
    let mut signature = Signature::new();
    for axiom in &axioms {
        for (name, kind) in named_uses(axiom) {
            signature.insert(&name, kind)?;
        }
    }
    Ok(Ontology { signature, axioms })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(names: &[&str]) -> BTreeSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn free_names_concept_inclusion() {
        let ax = Axiom::ConceptIncl(ConceptExpr::named("Mother"), ConceptExpr::named("Parent"));
        assert_eq!(
            free_names(&ax),
            (set(&[]), set(&["Mother", "Parent"]), set(&[]))
        );
    }

    #[test]
    fn free_names_role_assertion() {
        let ax = Axiom::RoleAssertion(RoleExpr::named("parentOf"), "julia".into(), "john".into());
        assert_eq!(
            free_names(&ax),
            (set(&["julia", "john"]), set(&[]), set(&["parentOf"]))
        );
    }

    #[test]
    fn free_names_nominalized_role_assertion() {
        // {julia} SubClassOf exists parentOf.{john}
        let ax = Axiom::ConceptIncl(
            ConceptExpr::nominal("julia"),
            ConceptExpr::exists(RoleExpr::named("parentOf"), ConceptExpr::nominal("john")),
        );
        assert_eq!(
            free_names(&ax),
            (set(&["julia", "john"]), set(&[]), set(&["parentOf"]))
        );
    }

    #[test]
    fn build_ontology_collects_signature() {
        let o = build_ontology(vec![Axiom::ConceptAssertion(
            ConceptExpr::named("Mother"),
            "julia".into(),
        )])
        .unwrap();
        assert_eq!(o.signature.individuals, set(&["julia"]));
        assert_eq!(o.signature.concepts, set(&["Mother"]));
        assert!(o.signature.roles.is_empty());
    }

    #[test]
    fn build_ontology_empty() {
        let o = build_ontology(vec![]).unwrap();
        assert!(o.signature.is_empty());
        assert!(o.axioms.is_empty());
    }

    #[test]
    fn build_ontology_kind_conflict() {
        let err = build_ontology(vec![
            Axiom::ConceptAssertion(ConceptExpr::named("Mother"), "julia".into()),
            Axiom::RoleAssertion(RoleExpr::named("Mother"), "a".into(), "b".into()),
        ])
        .unwrap_err();
        assert_eq!(
            err,
            AstError::NameKindConflict {
                name: "Mother".into(),
                first: NameKind::Concept,
                second: NameKind::Role,
            }
        );
    }

    #[test]
    fn inverse_of_inverse_is_named() {
        let r = RoleExpr::inverse_of("childOf");
        assert_eq!(r.inverse(), RoleExpr::named("childOf"));
        assert_eq!(RoleExpr::Universal.inverse(), RoleExpr::Universal);
    }

    #[test]
    fn signature_union_of_free_names() {
        let axioms = vec![
            Axiom::ConceptAssertion(ConceptExpr::named("Mother"), "julia".into()),
            Axiom::RoleAssertion(RoleExpr::named("parentOf"), "julia".into(), "john".into()),
            Axiom::ConceptIncl(ConceptExpr::named("Mother"), ConceptExpr::named("Parent")),
        ];
        let o = build_ontology(axioms.clone()).unwrap();
        let mut inds = BTreeSet::new();
        let mut cons = BTreeSet::new();
        let mut roles = BTreeSet::new();
        for ax in &axioms {
            let (i, c, r) = free_names(ax);
            inds.extend(i);
            cons.extend(c);
            roles.extend(r);
        }
        assert_eq!(o.signature.individuals, inds);
        assert_eq!(o.signature.concepts, cons);
        assert_eq!(o.signature.roles, roles);
    }
}
