//! Finite interpretations and the satisfaction relation.
//!
//! An interpretation fixes a finite non-empty domain, a subset of the domain
//! per concept name, a binary relation per role name, and one element per
//! individual name. Evaluation follows the standard set-theoretic semantics;
//! successor counting in number restrictions counts distinct elements.
//!
//! Element sets and relations are stored as bitmasks over domain indices,
//! which caps explicit domains at 64 elements — far beyond anything bounded
//! model search can enumerate, and plenty for hand-written interpretations.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::ast::{Axiom, CharacteristicKind, ConceptExpr, NameKind, Ontology, RoleExpr};

/// Hard cap on explicit domain size, from the bitmask representation.
pub const MAX_DOMAIN: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemanticsError {
    #[error("{kind} name '{name}' is not mapped by the interpretation")]
    UnmappedName { name: String, kind: NameKind },
    #[error("domain must be non-empty")]
    EmptyDomain,
    #[error("domain has {0} elements, more than the supported maximum of {MAX_DOMAIN}")]
    DomainTooLarge(usize),
    #[error("duplicate domain element '{0}'")]
    DuplicateElement(String),
    #[error("unknown domain element '{0}'")]
    UnknownElement(String),
    #[error("element index {0} is out of range for the domain")]
    IndexOutOfRange(usize),
}

/// A set of domain elements, as indices into the interpretation's domain.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct ElemSet {
    bits: u64,
}

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet { bits: 0 };

    /// All elements of a domain with `n` elements.
    pub fn full(n: usize) -> ElemSet {
        debug_assert!(n <= MAX_DOMAIN);
        if n == 64 {
            ElemSet { bits: u64::MAX }
        } else {
            ElemSet { bits: (1u64 << n) - 1 }
        }
    }

    pub fn singleton(idx: usize) -> ElemSet {
        ElemSet { bits: 1u64 << idx }
    }

    pub fn from_bits(bits: u64) -> ElemSet {
        ElemSet { bits }
    }

    pub fn bits(self) -> u64 {
        self.bits
    }

    pub fn contains(self, idx: usize) -> bool {
        idx < MAX_DOMAIN && self.bits & (1u64 << idx) != 0
    }

    pub fn insert(&mut self, idx: usize) {
        self.bits |= 1u64 << idx;
    }

    pub fn remove(&mut self, idx: usize) {
        self.bits &= !(1u64 << idx);
    }

    pub fn len(self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.bits == 0
    }

    pub fn union(self, other: ElemSet) -> ElemSet {
        ElemSet { bits: self.bits | other.bits }
    }

    pub fn intersection(self, other: ElemSet) -> ElemSet {
        ElemSet { bits: self.bits & other.bits }
    }

    pub fn complement_in(self, n: usize) -> ElemSet {
        ElemSet { bits: ElemSet::full(n).bits & !self.bits }
    }

    pub fn is_subset(self, other: ElemSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..MAX_DOMAIN).filter(move |&i| self.bits & (1u64 << i) != 0)
    }
}

impl FromIterator<usize> for ElemSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        let mut s = ElemSet::EMPTY;
        for i in iter {
            s.insert(i);
        }
        s
    }
}

/// A binary relation over domain indices, stored as one successor mask per
/// source element.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct PairSet {
    rows: Vec<u64>,
}

impl PairSet {
    pub fn empty(n: usize) -> PairSet {
        PairSet { rows: vec![0; n] }
    }

    /// The full relation, domain × domain.
    pub fn full(n: usize) -> PairSet {
        PairSet { rows: vec![ElemSet::full(n).bits(); n] }
    }

    pub fn domain_size(&self) -> usize {
        self.rows.len()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        x < self.rows.len() && self.rows[x] & (1u64 << y) != 0
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x] |= 1u64 << y;
    }

    pub fn remove(&mut self, x: usize, y: usize) {
        self.rows[x] &= !(1u64 << y);
    }

    /// Successors of `x`.
    pub fn successors(&self, x: usize) -> ElemSet {
        ElemSet::from_bits(self.rows[x])
    }

    pub fn transpose(&self) -> PairSet {
        let n = self.rows.len();
        let mut out = PairSet::empty(n);
        for x in 0..n {
            for y in ElemSet::from_bits(self.rows[x]).iter().take_while(|&y| y < n) {
                out.insert(y, x);
            }
        }
        out
    }

    /// Relation composition: pairs (x, z) with some y where (x, y) is here
    /// and (y, z) in `other`.
    pub fn compose(&self, other: &PairSet) -> PairSet {
        let n = self.rows.len();
        let mut out = PairSet::empty(n);
        for x in 0..n {
            let mut row = 0u64;
            for y in ElemSet::from_bits(self.rows[x]).iter().take_while(|&y| y < n) {
                row |= other.rows[y];
            }
            out.rows[x] = row;
        }
        out
    }

    pub fn is_subset(&self, other: &PairSet) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn intersection_empty(&self, other: &PairSet) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & b == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn iter_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.rows.len();
        self.rows.iter().enumerate().flat_map(move |(x, &row)| {
            ElemSet::from_bits(row).iter().take_while(move |&y| y < n).map(move |y| (x, y))
        })
    }
}

/// An explicit finite interpretation.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Interpretation {
    domain: Vec<String>,
    concepts: BTreeMap<String, ElemSet>,
    roles: BTreeMap<String, PairSet>,
    individuals: BTreeMap<String, usize>,
}

impl Interpretation {
    /// Creates an interpretation over the given non-empty domain with all
    /// maps empty.
    pub fn new(domain: Vec<String>) -> Result<Interpretation, SemanticsError> {
        if domain.is_empty() {
            return Err(SemanticsError::EmptyDomain);
        }
        if domain.len() > MAX_DOMAIN {
            return Err(SemanticsError::DomainTooLarge(domain.len()));
        }
        for (i, e) in domain.iter().enumerate() {
            if domain[..i].contains(e) {
                return Err(SemanticsError::DuplicateElement(e.clone()));
            }
        }
        Ok(Interpretation {
            domain,
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
            individuals: BTreeMap::new(),
        })
    }

    /// A domain of `n` elements named `e0`, `e1`, ...
    pub fn with_default_domain(n: usize) -> Result<Interpretation, SemanticsError> {
        Interpretation::new((0..n).map(|i| format!("e{i}")).collect())
    }

    pub fn domain(&self) -> &[String] {
        &self.domain
    }

    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn element_index(&self, id: &str) -> Option<usize> {
        self.domain.iter().position(|e| e == id)
    }

    pub fn set_concept(&mut self, name: &str, elems: ElemSet) -> Result<(), SemanticsError> {
        let n = self.domain.len();
        if !elems.is_subset(ElemSet::full(n)) {
            let bad = elems.iter().find(|&i| i >= n).unwrap();
            return Err(SemanticsError::IndexOutOfRange(bad));
        }
        self.concepts.insert(name.to_string(), elems);
        Ok(())
    }

    pub fn set_role(&mut self, name: &str, pairs: &[(usize, usize)]) -> Result<(), SemanticsError> {
        let n = self.domain.len();
        let mut rel = PairSet::empty(n);
        for &(x, y) in pairs {
            if x >= n {
                return Err(SemanticsError::IndexOutOfRange(x));
            }
            if y >= n {
                return Err(SemanticsError::IndexOutOfRange(y));
            }
            rel.insert(x, y);
        }
        self.roles.insert(name.to_string(), rel);
        Ok(())
    }

    pub fn set_role_relation(&mut self, name: &str, rel: PairSet) {
        debug_assert_eq!(rel.domain_size(), self.domain.len());
        self.roles.insert(name.to_string(), rel);
    }

    pub fn set_individual(&mut self, name: &str, elem: usize) -> Result<(), SemanticsError> {
        if elem >= self.domain.len() {
            return Err(SemanticsError::IndexOutOfRange(elem));
        }
        self.individuals.insert(name.to_string(), elem);
        Ok(())
    }

    pub fn concept_names(&self) -> impl Iterator<Item = &str> {
        self.concepts.keys().map(|s| s.as_str())
    }

    pub fn role_names(&self) -> impl Iterator<Item = &str> {
        self.roles.keys().map(|s| s.as_str())
    }

    pub fn individual_names(&self) -> impl Iterator<Item = &str> {
        self.individuals.keys().map(|s| s.as_str())
    }

    pub fn concept_set(&self, name: &str) -> Result<ElemSet, SemanticsError> {
        self.concepts.get(name).copied().ok_or_else(|| SemanticsError::UnmappedName {
            name: name.to_string(),
            kind: NameKind::Concept,
        })
    }

    pub fn role_relation(&self, name: &str) -> Result<&PairSet, SemanticsError> {
        self.roles.get(name).ok_or_else(|| SemanticsError::UnmappedName {
            name: name.to_string(),
            kind: NameKind::Role,
        })
    }

    pub fn individual_elem(&self, name: &str) -> Result<usize, SemanticsError> {
        self.individuals.get(name).copied().ok_or_else(|| SemanticsError::UnmappedName {
            name: name.to_string(),
            kind: NameKind::Individual,
        })
    }

    pub(crate) fn concepts_mut(&mut self) -> &mut BTreeMap<String, ElemSet> {
        &mut self.concepts
    }

    pub(crate) fn roles_mut(&mut self) -> &mut BTreeMap<String, PairSet> {
        &mut self.roles
    }

    pub(crate) fn individuals_mut(&mut self) -> &mut BTreeMap<String, usize> {
        &mut self.individuals
    }
}

/// JSON document form of an interpretation.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct InterpretationDoc {
    domain: Vec<String>,
    #[serde(default)]
    concepts: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    roles: BTreeMap<String, Vec<(String, String)>>,
    #[serde(default)]
    individuals: BTreeMap<String, String>,
}

#[derive(Debug, Error)]
pub enum InterpretationIoError {
    #[error("invalid interpretation JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
}

impl Interpretation {
    /// Parses the JSON interchange format. Unknown top-level keys are
    /// rejected; `concepts`, `roles` and `individuals` may be omitted.
    pub fn from_json(text: &str) -> Result<Interpretation, InterpretationIoError> {
        let doc: InterpretationDoc = serde_json::from_str(text)?;
        let mut interp = Interpretation::new(doc.domain)?;
        let resolve = |interp: &Interpretation, id: &str| {
            interp
                .element_index(id)
                .ok_or_else(|| SemanticsError::UnknownElement(id.to_string()))
        };
        for (name, elems) in &doc.concepts {
            let mut set = ElemSet::EMPTY;
            for id in elems {
                set.insert(resolve(&interp, id)?);
            }
            interp.concepts.insert(name.clone(), set);
        }
        for (name, pairs) in &doc.roles {
            let mut rel = PairSet::empty(interp.domain_size());
            for (a, b) in pairs {
                rel.insert(resolve(&interp, a)?, resolve(&interp, b)?);
            }
            interp.roles.insert(name.clone(), rel);
        }
        for (name, id) in &doc.individuals {
            let elem = resolve(&interp, id)?;
            interp.individuals.insert(name.clone(), elem);
        }
        Ok(interp)
    }

    pub fn to_json(&self) -> String {
        let doc = InterpretationDoc {
            domain: self.domain.clone(),
            concepts: self
                .concepts
                .iter()
                .map(|(name, set)| {
                    (
                        name.clone(),
                        set.iter()
                            .take_while(|&i| i < self.domain.len())
                            .map(|i| self.domain[i].clone())
                            .collect(),
                    )
                })
                .collect(),
            roles: self
                .roles
                .iter()
                .map(|(name, rel)| {
                    (
                        name.clone(),
                        rel.iter_pairs()
                            .map(|(x, y)| (self.domain[x].clone(), self.domain[y].clone()))
                            .collect(),
                    )
                })
                .collect(),
            individuals: self
                .individuals
                .iter()
                .map(|(name, &elem)| (name.clone(), self.domain[elem].clone()))
                .collect(),
        };
        serde_json::to_string_pretty(&doc).expect("interpretation serializes")
    }
}

/// Evaluates a role expression to its relation.
pub fn eval_role(r: &RoleExpr, interp: &Interpretation) -> Result<PairSet, SemanticsError> {
    match r {
        RoleExpr::Universal => Ok(PairSet::full(interp.domain_size())),
        RoleExpr::Named(name) => interp.role_relation(name).cloned(),
        RoleExpr::Inverse(name) => Ok(interp.role_relation(name)?.transpose()),
    }
}

/// Evaluates a concept expression to the set of elements it denotes.
pub fn eval_concept(c: &ConceptExpr, interp: &Interpretation) -> Result<ElemSet, SemanticsError> {
    let n = interp.domain_size();
    Ok(match c {
        ConceptExpr::Named(name) => interp.concept_set(name)?,
        ConceptExpr::And(l, r) => eval_concept(l, interp)?.intersection(eval_concept(r, interp)?),
        ConceptExpr::Or(l, r) => eval_concept(l, interp)?.union(eval_concept(r, interp)?),
        ConceptExpr::Not(inner) => eval_concept(inner, interp)?.complement_in(n),
        ConceptExpr::Top => ElemSet::full(n),
        ConceptExpr::Bottom => ElemSet::EMPTY,
        ConceptExpr::Exists(role, filler) => {
            let rel = eval_role(role, interp)?;
            let f = eval_concept(filler, interp)?;
            (0..n).filter(|&x| !rel.successors(x).intersection(f).is_empty()).collect()
        }
        ConceptExpr::Forall(role, filler) => {
            let rel = eval_role(role, interp)?;
            let f = eval_concept(filler, interp)?;
            (0..n).filter(|&x| rel.successors(x).is_subset(f)).collect()
        }
        ConceptExpr::AtLeast(k, role, filler) => {
            let rel = eval_role(role, interp)?;
            let f = eval_concept(filler, interp)?;
            (0..n)
                .filter(|&x| rel.successors(x).intersection(f).len() >= *k as usize)
                .collect()
        }
        ConceptExpr::AtMost(k, role, filler) => {
            let rel = eval_role(role, interp)?;
            let f = eval_concept(filler, interp)?;
            (0..n)
                .filter(|&x| rel.successors(x).intersection(f).len() <= *k as usize)
                .collect()
        }
        ConceptExpr::HasSelf(role) => {
            let rel = eval_role(role, interp)?;
            (0..n).filter(|&x| rel.contains(x, x)).collect()
        }
        ConceptExpr::Nominal(ind) => ElemSet::singleton(interp.individual_elem(ind)?),
    })
}

/// Whether the interpretation satisfies the axiom.
///
/// Role characteristics are evaluated by their direct relational condition
/// (transitivity, symmetry, ... in the usual sense), which lets desugaring
/// be tested for model preservation instead of assumed.
pub fn satisfies_axiom(a: &Axiom, interp: &Interpretation) -> Result<bool, SemanticsError> {
    Ok(match a {
        Axiom::ConceptAssertion(c, ind) => {
            let set = eval_concept(c, interp)?;
            set.contains(interp.individual_elem(ind)?)
        }
        Axiom::RoleAssertion(r, a, b) => {
            let rel = eval_role(r, interp)?;
            rel.contains(interp.individual_elem(a)?, interp.individual_elem(b)?)
        }
        Axiom::Equal(a, b) => interp.individual_elem(a)? == interp.individual_elem(b)?,
        Axiom::NotEqual(a, b) => interp.individual_elem(a)? != interp.individual_elem(b)?,
        Axiom::ConceptIncl(l, r) => eval_concept(l, interp)?.is_subset(eval_concept(r, interp)?),
        Axiom::ConceptEquiv(l, r) => eval_concept(l, interp)? == eval_concept(r, interp)?,
        Axiom::RoleIncl(l, r) => eval_role(l, interp)?.is_subset(&eval_role(r, interp)?),
        Axiom::RoleEquiv(l, r) => eval_role(l, interp)? == eval_role(r, interp)?,
        Axiom::ComplexRoleIncl(r1, r2, s) => {
            let composed = eval_role(r1, interp)?.compose(&eval_role(r2, interp)?);
            composed.is_subset(&eval_role(s, interp)?)
        }
        Axiom::RoleDisjoint(r, s) => {
            eval_role(r, interp)?.intersection_empty(&eval_role(s, interp)?)
        }
        Axiom::Characteristic(kind, role) => {
            let rel = eval_role(role, interp)?;
            let n = interp.domain_size();
            match kind {
                CharacteristicKind::Transitive => rel.compose(&rel).is_subset(&rel),
                CharacteristicKind::Symmetric => rel == rel.transpose(),
                CharacteristicKind::Asymmetric => rel.intersection_empty(&rel.transpose()),
                CharacteristicKind::Reflexive => (0..n).all(|x| rel.contains(x, x)),
                CharacteristicKind::Irreflexive => (0..n).all(|x| !rel.contains(x, x)),
            }
        }
    })
}

/// Whether the interpretation is a model of the ontology: it must map every
/// signature name and satisfy every axiom.
pub fn is_model(o: &Ontology, interp: &Interpretation) -> Result<bool, SemanticsError> {
    for name in &o.signature.individuals {
        interp.individual_elem(name)?;
    }
    for name in &o.signature.concepts {
        interp.concept_set(name)?;
    }
    for name in &o.signature.roles {
        interp.role_relation(name)?;
    }
    for axiom in &o.axioms {
        if !satisfies_axiom(axiom, interp)? {
            return Ok(false);
        }
    }
    Ok(true)
}
