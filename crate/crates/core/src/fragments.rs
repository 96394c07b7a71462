//! Feature detection and fragment naming.
//!
//! Description logics are named by the constructors and axiom kinds they
//! use: base `ALC` (booleans plus both quantifiers), `S` for ALC with
//! transitive roles, then `R` or `H`, `O`, `I`, `Q` appended in that order.
//! The letter `R` covers role composition beyond transitivity, Self, the
//! universal role, role disjointness and the non-transitivity role
//! characteristics; plain role inclusions alone earn `H`.

use std::collections::BTreeSet;

use crate::ast::{Axiom, CharacteristicKind, ConceptExpr, Ontology, RoleExpr};

/// The constructors and axiom kinds an ontology uses, from one syntactic
/// pass. Flags record occurrences only; nothing is inferred semantically.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FeatureSet {
    pub uses_union: bool,
    pub uses_complement: bool,
    pub uses_forall: bool,
    pub uses_exists: bool,
    pub uses_intersection: bool,
    pub uses_top: bool,
    pub uses_bottom: bool,
    pub uses_nominals: bool,
    pub uses_self: bool,
    pub uses_universal_role: bool,
    pub uses_inverse: bool,
    pub uses_number_restrictions: bool,
    pub uses_role_hierarchy: bool,
    pub uses_role_equiv: bool,
    pub uses_role_composition: bool,
    /// Some composition axiom of the exact shape `R o R SubRoleOf R`.
    pub uses_transitivity_pattern: bool,
    /// Some composition axiom not of that shape.
    pub uses_nontransitive_composition: bool,
    pub uses_role_disjoint: bool,
    pub characteristics: BTreeSet<CharacteristicKind>,
    pub has_abox: bool,
}

impl FeatureSet {
    /// Transitive roles are present, via the composition pattern or an
    /// undesugared transitivity axiom.
    pub fn has_transitivity(&self) -> bool {
        self.uses_transitivity_pattern
            || self.characteristics.contains(&CharacteristicKind::Transitive)
    }

    /// Features covered by the letter R.
    pub fn has_r_features(&self) -> bool {
        self.uses_nontransitive_composition
            || self.uses_self
            || self.uses_universal_role
            || self.uses_role_disjoint
            || self
                .characteristics
                .iter()
                .any(|k| *k != CharacteristicKind::Transitive)
    }
}

fn scan_role(r: &RoleExpr, f: &mut FeatureSet) {
    match r {
        RoleExpr::Universal => f.uses_universal_role = true,
        RoleExpr::Named(_) => {}
        RoleExpr::Inverse(_) => f.uses_inverse = true,
    }
}

fn scan_concept(c: &ConceptExpr, f: &mut FeatureSet) {
    match c {
        ConceptExpr::Named(_) => {}
        ConceptExpr::And(l, r) => {
            f.uses_intersection = true;
            scan_concept(l, f);
            scan_concept(r, f);
        }
        ConceptExpr::Or(l, r) => {
            f.uses_union = true;
            scan_concept(l, f);
            scan_concept(r, f);
        }
        ConceptExpr::Not(inner) => {
            f.uses_complement = true;
            scan_concept(inner, f);
        }
        ConceptExpr::Top => f.uses_top = true,
        ConceptExpr::Bottom => f.uses_bottom = true,
        ConceptExpr::Exists(role, filler) => {
            f.uses_exists = true;
            scan_role(role, f);
            scan_concept(filler, f);
        }
        ConceptExpr::Forall(role, filler) => {
            f.uses_forall = true;
            scan_role(role, f);
            scan_concept(filler, f);
        }
        ConceptExpr::AtLeast(_, role, filler) | ConceptExpr::AtMost(_, role, filler) => {
            f.uses_number_restrictions = true;
            scan_role(role, f);
            scan_concept(filler, f);
        }
        ConceptExpr::HasSelf(role) => {
            f.uses_self = true;
            scan_role(role, f);
        }
        ConceptExpr::Nominal(_) => f.uses_nominals = true,
    }
}

/// Collects the feature set in one pass over all axioms and subexpressions.
pub fn detect_features(o: &Ontology) -> FeatureSet {
    let mut f = FeatureSet::default();
    for ax in &o.axioms {
        match ax {
            Axiom::ConceptAssertion(c, _) => {
                f.has_abox = true;
                scan_concept(c, &mut f);
            }
            Axiom::RoleAssertion(r, _, _) => {
                f.has_abox = true;
                scan_role(r, &mut f);
            }
            Axiom::Equal(_, _) | Axiom::NotEqual(_, _) => f.has_abox = true,
            Axiom::ConceptIncl(l, r) | Axiom::ConceptEquiv(l, r) => {
                scan_concept(l, &mut f);
                scan_concept(r, &mut f);
            }
            Axiom::RoleIncl(l, r) => {
                f.uses_role_hierarchy = true;
                scan_role(l, &mut f);
                scan_role(r, &mut f);
            }
            Axiom::RoleEquiv(l, r) => {
                f.uses_role_equiv = true;
                scan_role(l, &mut f);
                scan_role(r, &mut f);
            }
            Axiom::ComplexRoleIncl(r1, r2, s) => {
                f.uses_role_composition = true;
                if r1 == r2 && r2 == s {
                    f.uses_transitivity_pattern = true;
                } else {
                    f.uses_nontransitive_composition = true;
                }
                scan_role(r1, &mut f);
                scan_role(r2, &mut f);
                scan_role(s, &mut f);
            }
            Axiom::RoleDisjoint(l, r) => {
                f.uses_role_disjoint = true;
                scan_role(l, &mut f);
                scan_role(r, &mut f);
            }
            Axiom::Characteristic(kind, r) => {
                f.characteristics.insert(*kind);
                scan_role(r, &mut f);
            }
        }
    }
    f
}

/// The fragment name: `S` when transitive roles are present, else `ALC`;
/// then `R` (or `H` when only plain role inclusions occur), `O` for
/// nominals, `I` for inverse roles, `Q` for number restrictions.
pub fn dl_name(f: &FeatureSet) -> String {
    let mut name = String::new();
    name.push_str(if f.has_transitivity() { "S" } else { "ALC" });
    if f.has_r_features() {
        name.push('R');
    } else if f.uses_role_hierarchy || f.uses_role_equiv {
        name.push('H');
    }
    if f.uses_nominals {
        name.push('O');
    }
    if f.uses_inverse {
        name.push('I');
    }
    if f.uses_number_restrictions {
        name.push('Q');
    }
    name
}

fn concept_is_el(c: &ConceptExpr) -> bool {
    match c {
        ConceptExpr::Named(_) | ConceptExpr::Top => true,
        ConceptExpr::And(l, r) => concept_is_el(l) && concept_is_el(r),
        ConceptExpr::Exists(role, filler) => {
            matches!(role, RoleExpr::Named(_)) && concept_is_el(filler)
        }
        _ => false,
    }
}

/// EL membership: concepts built from intersection, existential
/// restriction, the top concept and concept names only (over named roles),
/// and no RBox axioms at all.
pub fn is_el(o: &Ontology) -> bool {
    o.axioms.iter().all(|ax| match ax {
        Axiom::ConceptAssertion(c, _) => concept_is_el(c),
        Axiom::RoleAssertion(r, _, _) => matches!(r, RoleExpr::Named(_)),
        Axiom::Equal(_, _) | Axiom::NotEqual(_, _) => true,
        Axiom::ConceptIncl(l, r) | Axiom::ConceptEquiv(l, r) => {
            concept_is_el(l) && concept_is_el(r)
        }
        Axiom::RoleIncl(..)
        | Axiom::RoleEquiv(..)
        | Axiom::ComplexRoleIncl(..)
        | Axiom::RoleDisjoint(..)
        | Axiom::Characteristic(..) => false,
    })
}

fn role_is_elpp(r: &RoleExpr) -> bool {
    !matches!(r, RoleExpr::Inverse(_))
}

fn concept_is_elpp(c: &ConceptExpr) -> bool {
    match c {
        ConceptExpr::Named(_) | ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Nominal(_) => {
            true
        }
        ConceptExpr::And(l, r) => concept_is_elpp(l) && concept_is_elpp(r),
        ConceptExpr::Exists(role, filler) => role_is_elpp(role) && concept_is_elpp(filler),
        ConceptExpr::HasSelf(role) => role_is_elpp(role),
        _ => false,
    }
}

/// EL++ membership, checked before desugaring so symmetry, asymmetry and
/// irreflexivity are visible as characteristic axioms: concepts may use
/// intersection, top, bottom, existential restriction, Self, nominals and
/// the universal role; inverse roles may not occur anywhere; every axiom
/// kind is allowed except those three characteristics.
pub fn is_elpp(o: &Ontology) -> bool {
    o.axioms.iter().all(|ax| match ax {
        Axiom::ConceptAssertion(c, _) => concept_is_elpp(c),
        Axiom::RoleAssertion(r, _, _) => role_is_elpp(r),
        Axiom::Equal(_, _) | Axiom::NotEqual(_, _) => true,
        Axiom::ConceptIncl(l, r) | Axiom::ConceptEquiv(l, r) => {
            concept_is_elpp(l) && concept_is_elpp(r)
        }
        Axiom::RoleIncl(l, r) | Axiom::RoleEquiv(l, r) | Axiom::RoleDisjoint(l, r) => {
            role_is_elpp(l) && role_is_elpp(r)
        }
        Axiom::ComplexRoleIncl(r1, r2, s) => {
            role_is_elpp(r1) && role_is_elpp(r2) && role_is_elpp(s)
        }
        Axiom::Characteristic(kind, r) => match kind {
            CharacteristicKind::Transitive | CharacteristicKind::Reflexive => role_is_elpp(r),
            CharacteristicKind::Symmetric
            | CharacteristicKind::Asymmetric
            | CharacteristicKind::Irreflexive => false,
        },
    })
}
