//! OWL 2 Functional-Style Syntax export.
//!
//! Each axiom maps to one OWL axiom line inside an `Ontology( ... )`
//! wrapper, with a `Declaration` line per signature name. Names are emitted
//! with a `:` prefix; an optional `Prefix` declaration binds it. Role
//! characteristics are exported with their native OWL operators rather than
//! desugared, preserving the author's intent.

use thiserror::Error;

use crate::ast::{Axiom, CharacteristicKind, ConceptExpr, Ontology, RoleExpr};

/// Export options.
#[derive(Debug, Clone, Default)]
pub struct ExportConfig {
    /// Ontology IRI, emitted inside `Ontology(...)` when present.
    pub ontology_iri: Option<String>,
    /// IRI the `:` prefix abbreviates; emitted as a `Prefix` declaration
    /// when present.
    pub prefix_iri: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExportError {
    #[error("cannot export {kind}(Universal): OWL role characteristics need a property name")]
    UniversalCharacteristic { kind: CharacteristicKind },
    #[error("'{0}' is not a valid IRI")]
    InvalidIri(String),
}

/// Minimal IRI well-formedness: a scheme followed by non-space characters.
fn check_iri(iri: &str) -> Result<(), ExportError> {
    let valid = iri.split_once(':').is_some_and(|(scheme, rest)| {
        !scheme.is_empty()
            && scheme.chars().next().is_some_and(|c| c.is_ascii_alphabetic())
            && scheme.chars().all(|c| c.is_ascii_alphanumeric() || "+-.".contains(c))
            && !rest.is_empty()
    }) && !iri.chars().any(|c| c.is_whitespace() || "<>\"{}|\\^`".contains(c));
    if valid {
        Ok(())
    } else {
        Err(ExportError::InvalidIri(iri.to_string()))
    }
}

fn owl_role(r: &RoleExpr) -> String {
    match r {
        RoleExpr::Universal => "owl:topObjectProperty".to_string(),
        RoleExpr::Named(n) => format!(":{n}"),
        RoleExpr::Inverse(n) => format!("ObjectInverseOf( :{n} )"),
    }
}

fn owl_concept(c: &ConceptExpr) -> String {
    match c {
        ConceptExpr::Named(n) => format!(":{n}"),
        ConceptExpr::And(l, r) => {
            format!("ObjectIntersectionOf( {} {} )", owl_concept(l), owl_concept(r))
        }
        ConceptExpr::Or(l, r) => {
            format!("ObjectUnionOf( {} {} )", owl_concept(l), owl_concept(r))
        }
        ConceptExpr::Not(inner) => format!("ObjectComplementOf( {} )", owl_concept(inner)),
        ConceptExpr::Top => "owl:Thing".to_string(),
        ConceptExpr::Bottom => "owl:Nothing".to_string(),
        ConceptExpr::Exists(role, f) => {
            format!("ObjectSomeValuesFrom( {} {} )", owl_role(role), owl_concept(f))
        }
        ConceptExpr::Forall(role, f) => {
            format!("ObjectAllValuesFrom( {} {} )", owl_role(role), owl_concept(f))
        }
        ConceptExpr::AtLeast(n, role, f) => {
            format!("ObjectMinCardinality( {n} {} {} )", owl_role(role), owl_concept(f))
        }
        ConceptExpr::AtMost(n, role, f) => {
            format!("ObjectMaxCardinality( {n} {} {} )", owl_role(role), owl_concept(f))
        }
        ConceptExpr::HasSelf(role) => format!("ObjectHasSelf( {} )", owl_role(role)),
        ConceptExpr::Nominal(a) => format!("ObjectOneOf( :{a} )"),
    }
}

fn owl_axiom(ax: &Axiom) -> Result<String, ExportError> {
    Ok(match ax {
        Axiom::ConceptAssertion(c, a) => format!("ClassAssertion( {} :{a} )", owl_concept(c)),
        Axiom::RoleAssertion(r, a, b) => {
            format!("ObjectPropertyAssertion( {} :{a} :{b} )", owl_role(r))
        }
        Axiom::Equal(a, b) => format!("SameIndividual( :{a} :{b} )"),
        Axiom::NotEqual(a, b) => format!("DifferentIndividuals( :{a} :{b} )"),
        Axiom::ConceptIncl(l, r) => format!("SubClassOf( {} {} )", owl_concept(l), owl_concept(r)),
        Axiom::ConceptEquiv(l, r) => {
            format!("EquivalentClasses( {} {} )", owl_concept(l), owl_concept(r))
        }
        Axiom::RoleIncl(l, r) => format!("SubObjectPropertyOf( {} {} )", owl_role(l), owl_role(r)),
        Axiom::RoleEquiv(l, r) => {
            format!("EquivalentObjectProperties( {} {} )", owl_role(l), owl_role(r))
        }
        Axiom::ComplexRoleIncl(r1, r2, s) => format!(
            "SubObjectPropertyOf( ObjectPropertyChain( {} {} ) {} )",
            owl_role(r1),
            owl_role(r2),
            owl_role(s)
        ),
        Axiom::RoleDisjoint(l, r) => {
            format!("DisjointObjectProperties( {} {} )", owl_role(l), owl_role(r))
        }
        Axiom::Characteristic(kind, role) => {
            if *role == RoleExpr::Universal {
                return Err(ExportError::UniversalCharacteristic { kind: *kind });
            }
            let op = match kind {
                CharacteristicKind::Transitive => "TransitiveObjectProperty",
                CharacteristicKind::Symmetric => "SymmetricObjectProperty",
                CharacteristicKind::Asymmetric => "AsymmetricObjectProperty",
                CharacteristicKind::Reflexive => "ReflexiveObjectProperty",
                CharacteristicKind::Irreflexive => "IrreflexiveObjectProperty",
            };
            format!("{op}( {} )", owl_role(role))
        }
    })
}

/// Serializes the ontology to OWL 2 Functional-Style Syntax. Output is
/// deterministic: declarations for classes, then object properties, then
/// named individuals, each sorted by name, followed by the axioms in order.
pub fn export_functional(o: &Ontology, cfg: &ExportConfig) -> Result<String, ExportError> {
    if let Some(iri) = &cfg.ontology_iri {
        check_iri(iri)?;
    }
    if let Some(iri) = &cfg.prefix_iri {
        check_iri(iri)?;
    }

    let mut out = String::new();
    if let Some(prefix) = &cfg.prefix_iri {
        out.push_str(&format!("Prefix( :=<{prefix}> )\n"));
    }
    match &cfg.ontology_iri {
        Some(iri) => out.push_str(&format!("Ontology( <{iri}>\n")),
        None => out.push_str("Ontology(\n"),
    }
    for name in &o.signature.concepts {
        out.push_str(&format!("Declaration( Class( :{name} ) )\n"));
    }
    for name in &o.signature.roles {
        out.push_str(&format!("Declaration( ObjectProperty( :{name} ) )\n"));
    }
    for name in &o.signature.individuals {
        out.push_str(&format!("Declaration( NamedIndividual( :{name} ) )\n"));
    }
    for ax in &o.axioms {
        out.push_str(&owl_axiom(ax)?);
        out.push('\n');
    }
    out.push_str(")\n");
    Ok(out)
}
