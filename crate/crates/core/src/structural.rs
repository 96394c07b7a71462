//! Non-simple role computation and validation of the positions that admit
//! simple roles only.
//!
//! A role is non-simple when it is (directly or via inclusions and inverses)
//! implied by a role composition. Role disjointness axioms, Self restrictions
//! and number restrictions must use simple roles. Regularity of the RBox is
//! not checked; callers should warn when composition axioms are present.

use std::collections::BTreeSet;
use std::fmt;

use crate::ast::{Axiom, CharacteristicKind, ConceptExpr, Ontology, RoleExpr};

/// Options for the simplicity computation.
#[derive(Debug, Clone)]
pub struct StructuralConfig {
    /// Treat the universal role as simple. Defaults to `false`: the
    /// universal role counts as non-simple wherever it occurs, matching the
    /// OWL 2 convention.
    pub universal_role_simple: bool,
}

impl Default for StructuralConfig {
    fn default() -> Self {
        StructuralConfig { universal_role_simple: false }
    }
}

/// Where a simplicity violation occurred.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationPlace {
    RoleDisjointness,
    AsymmetricCharacteristic,
    SelfRestriction,
    AtLeastRestriction,
    AtMostRestriction,
}

impl fmt::Display for ViolationPlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ViolationPlace::RoleDisjointness => write!(f, "role disjointness axiom"),
            ViolationPlace::AsymmetricCharacteristic => write!(f, "asymmetry axiom"),
            ViolationPlace::SelfRestriction => write!(f, "Self restriction"),
            ViolationPlace::AtLeastRestriction => write!(f, "at-least restriction"),
            ViolationPlace::AtMostRestriction => write!(f, "at-most restriction"),
        }
    }
}

/// A restricted position occupied by a non-simple role.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    /// Index into `Ontology::axioms`.
    pub axiom_index: usize,
    pub place: ViolationPlace,
    pub role: RoleExpr,
}

/// Result of simplicity validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityReport {
    pub non_simple: BTreeSet<RoleExpr>,
    pub violations: Vec<Violation>,
}

impl SimplicityReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn role_occurs_in_concept(c: &ConceptExpr, target: &RoleExpr) -> bool {
    match c {
        ConceptExpr::Named(_) | ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Nominal(_) => {
            false
        }
        ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) => {
            role_occurs_in_concept(l, target) || role_occurs_in_concept(r, target)
        }
        ConceptExpr::Not(inner) => role_occurs_in_concept(inner, target),
        ConceptExpr::Exists(role, f)
        | ConceptExpr::Forall(role, f)
        | ConceptExpr::AtLeast(_, role, f)
        | ConceptExpr::AtMost(_, role, f) => role == target || role_occurs_in_concept(f, target),
        ConceptExpr::HasSelf(role) => role == target,
    }
}

fn role_occurs(o: &Ontology, target: &RoleExpr) -> bool {
    o.axioms.iter().any(|ax| match ax {
        Axiom::ConceptAssertion(c, _) => role_occurs_in_concept(c, target),
        Axiom::RoleAssertion(r, _, _) => r == target,
        Axiom::Equal(_, _) | Axiom::NotEqual(_, _) => false,
        Axiom::ConceptIncl(l, r) | Axiom::ConceptEquiv(l, r) => {
            role_occurs_in_concept(l, target) || role_occurs_in_concept(r, target)
        }
        Axiom::RoleIncl(l, r) | Axiom::RoleEquiv(l, r) | Axiom::RoleDisjoint(l, r) => {
            l == target || r == target
        }
        Axiom::ComplexRoleIncl(r1, r2, s) => r1 == target || r2 == target || s == target,
        Axiom::Characteristic(_, r) => r == target,
    })
}

/// The least set of role expressions closed under: heads of composition
/// axioms are non-simple; the inverse of a non-simple role is non-simple
/// (the inverse of an inverse being the named role); and inclusion or
/// equivalence with a non-simple role on the subrole side makes the
/// superrole non-simple. Whether equivalences propagate in one step or two
/// does not matter: the fixpoint is direction-insensitive.
pub fn compute_nonsimple(o: &Ontology, cfg: &StructuralConfig) -> BTreeSet<RoleExpr> {
    let mut non_simple: BTreeSet<RoleExpr> = BTreeSet::new();
    for ax in &o.axioms {
        if let Axiom::ComplexRoleIncl(_, _, head) = ax {
            non_simple.insert(head.clone());
        }
    }
    if !cfg.universal_role_simple && role_occurs(o, &RoleExpr::Universal) {
        non_simple.insert(RoleExpr::Universal);
    }

    loop {
        let mut added = Vec::new();
        for r in &non_simple {
            let inv = r.inverse();
            if !non_simple.contains(&inv) {
                added.push(inv);
            }
            for ax in &o.axioms {
                match ax {
                    Axiom::RoleIncl(sub, sup) if sub == r && !non_simple.contains(sup) => {
                        added.push(sup.clone());
                    }
                    Axiom::RoleEquiv(a, b) => {
                        if a == r && !non_simple.contains(b) {
                            added.push(b.clone());
                        }
                        if b == r && !non_simple.contains(a) {
                            added.push(a.clone());
                        }
                    }
                    _ => {}
                }
            }
        }
        if added.is_empty() {
            break;
        }
        non_simple.extend(added);
    }
    non_simple
}

fn check_concept(
    c: &ConceptExpr,
    axiom_index: usize,
    non_simple: &BTreeSet<RoleExpr>,
    out: &mut Vec<Violation>,
) {
    match c {
        ConceptExpr::Named(_) | ConceptExpr::Top | ConceptExpr::Bottom | ConceptExpr::Nominal(_) => {}
        ConceptExpr::And(l, r) | ConceptExpr::Or(l, r) => {
            check_concept(l, axiom_index, non_simple, out);
            check_concept(r, axiom_index, non_simple, out);
        }
        ConceptExpr::Not(inner) => check_concept(inner, axiom_index, non_simple, out),
        ConceptExpr::Exists(_, f) | ConceptExpr::Forall(_, f) => {
            check_concept(f, axiom_index, non_simple, out);
        }
        ConceptExpr::AtLeast(_, role, f) => {
            if non_simple.contains(role) {
                out.push(Violation {
                    axiom_index,
                    place: ViolationPlace::AtLeastRestriction,
                    role: role.clone(),
                });
            }
            check_concept(f, axiom_index, non_simple, out);
        }
        ConceptExpr::AtMost(_, role, f) => {
            if non_simple.contains(role) {
                out.push(Violation {
                    axiom_index,
                    place: ViolationPlace::AtMostRestriction,
                    role: role.clone(),
                });
            }
            check_concept(f, axiom_index, non_simple, out);
        }
        ConceptExpr::HasSelf(role) => {
            if non_simple.contains(role) {
                out.push(Violation {
                    axiom_index,
                    place: ViolationPlace::SelfRestriction,
                    role: role.clone(),
                });
            }
        }
    }
}

/// Flags every role disjointness axiom, every Self / at-least / at-most
/// subexpression whose role is non-simple, and every asymmetry axiom on a
/// non-simple role (it desugars to a role disjointness).
pub fn validate_simplicity(o: &Ontology, cfg: &StructuralConfig) -> SimplicityReport {
    let non_simple = compute_nonsimple(o, cfg);
    let mut violations = Vec::new();
    for (i, ax) in o.axioms.iter().enumerate() {
        match ax {
            Axiom::RoleDisjoint(r, s) => {
                for role in [r, s] {
                    if non_simple.contains(role) {
                        violations.push(Violation {
                            axiom_index: i,
                            place: ViolationPlace::RoleDisjointness,
                            role: role.clone(),
                        });
                    }
                }
            }
            Axiom::Characteristic(CharacteristicKind::Asymmetric, r) => {
                if non_simple.contains(r) {
                    violations.push(Violation {
                        axiom_index: i,
                        place: ViolationPlace::AsymmetricCharacteristic,
                        role: r.clone(),
                    });
                }
            }
            Axiom::ConceptAssertion(c, _) => check_concept(c, i, &non_simple, &mut violations),
            Axiom::ConceptIncl(l, r) | Axiom::ConceptEquiv(l, r) => {
                check_concept(l, i, &non_simple, &mut violations);
                check_concept(r, i, &non_simple, &mut violations);
            }
            _ => {}
        }
    }
    SimplicityReport { non_simple, violations }
}

/// Whether the ontology contains any complex role inclusion axiom. When it
/// does, regularity would also have to hold for SROIQ reasoning to be
/// decidable; this toolkit does not check regularity.
pub fn has_complex_role_inclusions(o: &Ontology) -> bool {
    o.axioms.iter().any(|ax| matches!(ax, Axiom::ComplexRoleIncl(..)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::{build_ontology, ConceptExpr as C};
    use crate::parser::parse_ontology;

    fn nonsimple_of(text: &str) -> BTreeSet<RoleExpr> {
        let o = parse_ontology(text).unwrap();
        compute_nonsimple(&o, &StructuralConfig::default())
    }

    fn roles(items: &[RoleExpr]) -> BTreeSet<RoleExpr> {
        items.iter().cloned().collect()
    }

    #[test]
    fn composition_head_and_its_inverse_are_nonsimple() {
        assert_eq!(
            nonsimple_of("brotherOf o parentOf SubRoleOf uncleOf\n"),
            roles(&[RoleExpr::named("uncleOf"), RoleExpr::inverse_of("uncleOf")])
        );
    }

    #[test]
    fn no_composition_means_all_simple() {
        assert_eq!(nonsimple_of("parentOf SubRoleOf ancestorOf\n"), BTreeSet::new());
    }

    #[test]
    fn fixpoint_propagates_through_inclusions() {
        // Derived by running the closure rules by hand.
        assert_eq!(
            nonsimple_of("r o r SubRoleOf r\nr SubRoleOf s\ns SubRoleOf t\n"),
            roles(&[
                RoleExpr::named("r"),
                RoleExpr::inverse_of("r"),
                RoleExpr::named("s"),
                RoleExpr::inverse_of("s"),
                RoleExpr::named("t"),
                RoleExpr::inverse_of("t"),
            ])
        );
    }

    #[test]
    fn equivalence_propagates_both_ways() {
        assert_eq!(
            nonsimple_of("r o r SubRoleOf r\ns EquivalentRole r\n"),
            roles(&[
                RoleExpr::named("r"),
                RoleExpr::inverse_of("r"),
                RoleExpr::named("s"),
                RoleExpr::inverse_of("s"),
            ])
        );
    }

    #[test]
    fn universal_role_nonsimple_by_default_when_used() {
        let o = parse_ontology("A SubClassOf exists Universal.B\n").unwrap();
        let ns = compute_nonsimple(&o, &StructuralConfig::default());
        assert!(ns.contains(&RoleExpr::Universal));
        let ns = compute_nonsimple(&o, &StructuralConfig { universal_role_simple: true });
        assert!(ns.is_empty());
        // Unused universal role does not show up at all.
        let o = parse_ontology("A SubClassOf B\n").unwrap();
        assert!(compute_nonsimple(&o, &StructuralConfig::default()).is_empty());
    }

    #[test]
    fn disjointness_on_nonsimple_role_is_flagged() {
        let o = parse_ontology(
            "brotherOf o parentOf SubRoleOf uncleOf\nDisjoint(uncleOf, auntOf)\n",
        )
        .unwrap();
        let report = validate_simplicity(&o, &StructuralConfig::default());
        assert_eq!(
            report.violations,
            vec![Violation {
                axiom_index: 1,
                place: ViolationPlace::RoleDisjointness,
                role: RoleExpr::named("uncleOf"),
            }]
        );
    }

    #[test]
    fn number_restriction_on_nonsimple_role_is_flagged() {
        let o = parse_ontology(
            "brotherOf o parentOf SubRoleOf uncleOf\nPerson SubClassOf <= 2 uncleOf.Top\n",
        )
        .unwrap();
        let report = validate_simplicity(&o, &StructuralConfig::default());
        assert_eq!(
            report.violations,
            vec![Violation {
                axiom_index: 1,
                place: ViolationPlace::AtMostRestriction,
                role: RoleExpr::named("uncleOf"),
            }]
        );
    }

    #[test]
    fn family_ontology_without_composition_is_clean() {
        let o = parse_ontology(
            "julia : Mother\n\
             (julia, john) : parentOf\n\
             Mother SubClassOf Parent\n\
             Mother EquivalentTo (Female and Parent)\n\
             parentOf SubRoleOf ancestorOf\n\
             Person SubClassOf >= 2 childOf.Parent\n",
        )
        .unwrap();
        let report = validate_simplicity(&o, &StructuralConfig::default());
        assert!(report.is_ok());
        assert!(report.non_simple.is_empty());
    }

    #[test]
    fn asymmetric_sugar_on_nonsimple_role_is_flagged() {
        let o = parse_ontology("r o r SubRoleOf r\nAsymmetric(r)\n").unwrap();
        let report = validate_simplicity(&o, &StructuralConfig::default());
        assert_eq!(report.violations.len(), 1);
        assert_eq!(report.violations[0].place, ViolationPlace::AsymmetricCharacteristic);
    }

    #[test]
    fn self_restriction_on_nonsimple_inverse_is_flagged() {
        let o = build_ontology(vec![
            Axiom::ComplexRoleIncl(RoleExpr::named("r"), RoleExpr::named("r"), RoleExpr::named("u")),
            Axiom::ConceptIncl(C::named("A"), ConceptExpr::HasSelf(RoleExpr::inverse_of("u"))),
        ])
        .unwrap();
        let report = validate_simplicity(&o, &StructuralConfig::default());
        assert_eq!(
            report.violations,
            vec![Violation {
                axiom_index: 1,
                place: ViolationPlace::SelfRestriction,
                role: RoleExpr::inverse_of("u"),
            }]
        );
    }

    #[test]
    fn monotone_under_added_axioms() {
        let base = "r o r SubRoleOf r\n";
        let extended = "r o r SubRoleOf r\nr SubRoleOf s\n";
        let a = nonsimple_of(base);
        let b = nonsimple_of(extended);
        assert!(a.is_subset(&b));
    }

    #[test]
    fn fixpoint_is_minimal_closed_set() {
        // Removing any single element breaks closure or loses a seed.
        let o = parse_ontology("r o r SubRoleOf r\nr SubRoleOf s\n").unwrap();
        let cfg = StructuralConfig::default();
        let ns = compute_nonsimple(&o, &cfg);
        let closed_and_seeded = |set: &BTreeSet<RoleExpr>| -> bool {
            let seeds_ok = o.axioms.iter().all(|ax| match ax {
                Axiom::ComplexRoleIncl(_, _, head) => set.contains(head),
                _ => true,
            });
            let closure_ok = set.iter().all(|r| {
                set.contains(&r.inverse())
                    && o.axioms.iter().all(|ax| match ax {
                        Axiom::RoleIncl(sub, sup) if sub == r => set.contains(sup),
                        Axiom::RoleEquiv(a, b) if a == r => set.contains(b),
                        Axiom::RoleEquiv(a, b) if b == r => set.contains(a),
                        _ => true,
                    })
            });
            seeds_ok && closure_ok
        };
        assert!(closed_and_seeded(&ns));
        for r in &ns {
            let mut smaller = ns.clone();
            smaller.remove(r);
            assert!(!closed_and_seeded(&smaller), "removing {r:?} kept the set closed");
        }
    }
}
