//! Syntactic rewrites that preserve the model set: role-characteristic
//! desugaring, splitting equivalences into mutual inclusions, turning ABox
//! assertions into nominal-based concept inclusions, and rewriting universal
//! restrictions through the existential dual.

use thiserror::Error;

use crate::ast::{Axiom, CharacteristicKind, ConceptExpr, Ontology, RoleExpr};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    /// Symmetry and asymmetry of the universal role would need its inverse,
    /// which role expressions cannot form.
    #[error("cannot desugar {kind}(Universal): the universal role has no inverse expression")]
    InverseOfUniversal { kind: CharacteristicKind },
}

fn desugar_characteristic(kind: CharacteristicKind, role: &RoleExpr) -> Result<Axiom, RewriteError> {
    Ok(match kind {
        CharacteristicKind::Transitive => {
            Axiom::ComplexRoleIncl(role.clone(), role.clone(), role.clone())
        }
        CharacteristicKind::Symmetric => {
            if *role == RoleExpr::Universal {
                return Err(RewriteError::InverseOfUniversal { kind });
            }
            Axiom::RoleEquiv(role.clone(), role.inverse())
        }
        CharacteristicKind::Asymmetric => {
            if *role == RoleExpr::Universal {
                return Err(RewriteError::InverseOfUniversal { kind });
            }
            Axiom::RoleDisjoint(role.clone(), role.inverse())
        }
        CharacteristicKind::Reflexive => {
            Axiom::ConceptIncl(ConceptExpr::Top, ConceptExpr::HasSelf(role.clone()))
        }
        CharacteristicKind::Irreflexive => Axiom::ConceptIncl(
            ConceptExpr::Top,
            ConceptExpr::not(ConceptExpr::HasSelf(role.clone())),
        ),
    })
}

/// Replaces every role-characteristic axiom by its core encoding:
/// transitivity by a composition axiom, symmetry by equivalence with the
/// inverse, asymmetry by disjointness with the inverse, reflexivity and
/// irreflexivity by Self restrictions on the top concept. Other axioms and
/// their order are unchanged.
pub fn desugar(o: &Ontology) -> Result<Ontology, RewriteError> {
    let mut axioms = Vec::with_capacity(o.axioms.len());
    for ax in &o.axioms {
        match ax {
            Axiom::Characteristic(kind, role) => axioms.push(desugar_characteristic(*kind, role)?),
            other => axioms.push(other.clone()),
        }
    }
    Ok(Ontology { signature: o.signature.clone(), axioms })
}

/// Replaces each equivalence by the two inclusions it abbreviates.
pub fn split_equivalences(o: &Ontology) -> Ontology {
    let mut axioms = Vec::with_capacity(o.axioms.len());
    for ax in &o.axioms {
        match ax {
            Axiom::ConceptEquiv(l, r) => {
                axioms.push(Axiom::ConceptIncl(l.clone(), r.clone()));
                axioms.push(Axiom::ConceptIncl(r.clone(), l.clone()));
            }
            Axiom::RoleEquiv(l, r) => {
                axioms.push(Axiom::RoleIncl(l.clone(), r.clone()));
                axioms.push(Axiom::RoleIncl(r.clone(), l.clone()));
            }
            other => axioms.push(other.clone()),
        }
    }
    Ontology { signature: o.signature.clone(), axioms }
}

/// Turns concept and role assertions into concept inclusions over nominals:
/// `a : C` becomes `{a} SubClassOf C` and `(a, b) : R` becomes
/// `{a} SubClassOf exists R.{b}`. Equality assertions are left unchanged.
pub fn nominalize_abox(o: &Ontology) -> Ontology {
    let mut axioms = Vec::with_capacity(o.axioms.len());
    for ax in &o.axioms {
        match ax {
            Axiom::ConceptAssertion(c, a) => {
                axioms.push(Axiom::ConceptIncl(ConceptExpr::nominal(a), c.clone()));
            }
            Axiom::RoleAssertion(r, a, b) => {
                axioms.push(Axiom::ConceptIncl(
                    ConceptExpr::nominal(a),
                    ConceptExpr::exists(r.clone(), ConceptExpr::nominal(b)),
                ));
            }
            other => axioms.push(other.clone()),
        }
    }
    Ontology { signature: o.signature.clone(), axioms }
}

/// Recursively replaces every universal restriction by its existential dual:
/// `forall R.C` becomes `not exists R.not C`.
pub fn eliminate_forall(c: &ConceptExpr) -> ConceptExpr {
    match c {
        ConceptExpr::Named(_) | ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Nominal(_) => {
            c.clone()
        }
        ConceptExpr::HasSelf(_) => c.clone(),
        ConceptExpr::And(l, r) => ConceptExpr::and(eliminate_forall(l), eliminate_forall(r)),
        ConceptExpr::Or(l, r) => ConceptExpr::or(eliminate_forall(l), eliminate_forall(r)),
        ConceptExpr::Not(inner) => ConceptExpr::not(eliminate_forall(inner)),
        ConceptExpr::Exists(role, f) => ConceptExpr::exists(role.clone(), eliminate_forall(f)),
        ConceptExpr::Forall(role, f) => ConceptExpr::not(ConceptExpr::exists(
            role.clone(),
            ConceptExpr::not(eliminate_forall(f)),
        )),
        ConceptExpr::AtLeast(n, role, f) => {
            ConceptExpr::at_least(*n, role.clone(), eliminate_forall(f))
        }
        ConceptExpr::AtMost(n, role, f) => {
            ConceptExpr::at_most(*n, role.clone(), eliminate_forall(f))
        }
    }
}
