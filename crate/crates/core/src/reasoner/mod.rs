//! Consistency and entailment by bounded enumeration of finite
//! interpretations, directly against the satisfaction semantics.
//!
//! `enumerate_interpretations` yields every interpretation over a signature
//! with a fixed domain size, exactly once, in a fixed order; it is the
//! trivially correct oracle that `all_models` and the test suites build on.
//! `check_consistency` and `check_entailment` explore the same space in the
//! same order through a backtracking search that prunes branches only when
//! a constraint is already violated, so they return the same verdicts and
//! the same (first, minimal) witnesses as plain enumeration, at a fraction
//! of the cost.
//!
//! ## Enumeration order
//!
//! The domain of size `n` is `e0 .. e{n-1}`. Individual names (sorted) are
//! assigned elements, concept names (sorted) subsets, role names (sorted)
//! pair sets. Subsets count in binary with element `e0` as the least
//! significant bit; relations count in binary over pairs with `(x, y)`
//! at bit `x*n + y`. The full map tuple is ordered lexicographically:
//! individual assignments first, then concept subsets, then role relations,
//! with later components varying fastest. Searches try domain sizes in
//! increasing order, so reported witnesses have minimal domains.

mod search;

use std::ops::ControlFlow;

use thiserror::Error;

use crate::ast::{build_ontology, Axiom, AstError, Ontology, Signature};
use crate::semantics::{is_model, ElemSet, Interpretation, PairSet, SemanticsError};

use search::{Constraint, Search};

/// Largest domain the enumerator supports: relations are packed into 64-bit
/// counters, so `size * size` must stay within 64.
pub const MAX_ENUM_DOMAIN: usize = 8;

#[derive(Debug, Error)]
pub enum ReasonerError {
    #[error("exceeded the cap of {cap} candidate interpretations")]
    CapExceeded { cap: u64 },
    #[error("domain size must be at least 1")]
    ZeroDomain,
    #[error("domain size {size} exceeds the enumerable maximum of {MAX_ENUM_DOMAIN}")]
    DomainTooLarge { size: usize },
    #[error(transparent)]
    Semantics(#[from] SemanticsError),
    #[error(transparent)]
    Names(#[from] AstError),
}

/// Limits for bounded model search.
#[derive(Debug, Clone)]
pub struct SearchConfig {
    /// Largest domain size to try (searches start at 1).
    pub max_domain_size: usize,
    /// Cap on candidate interpretations examined, across all sizes of one
    /// search. Candidates skipped by pruning do not count.
    pub max_interpretations: Option<u64>,
    /// Reserved for parallel partitioning of the search space. The current
    /// implementation is single-threaded and deterministic either way.
    pub deterministic: bool,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            max_domain_size: 3,
            max_interpretations: None,
            deterministic: true,
        }
    }
}

/// Outcome of a bounded search: a definitive witness, or exhaustion of all
/// domain sizes up to the bound, which is inconclusive in general because
/// some ontologies only have larger or infinite models.
#[derive(Debug, Clone, PartialEq)]
pub enum BoundedVerdict {
    Witness(Interpretation),
    NoneUpTo(usize),
}

impl BoundedVerdict {
    pub fn witness(&self) -> Option<&Interpretation> {
        match self {
            BoundedVerdict::Witness(i) => Some(i),
            BoundedVerdict::NoneUpTo(_) => None,
        }
    }
}

fn check_size(size: usize) -> Result<(), ReasonerError> {
    if size == 0 {
        return Err(ReasonerError::ZeroDomain);
    }
    if size > MAX_ENUM_DOMAIN {
        return Err(ReasonerError::DomainTooLarge { size });
    }
    Ok(())
}

/// Odometer over all interpretations of a signature at a fixed domain size.
struct RawEnumerator {
    n: usize,
    inds: Vec<String>,
    concepts: Vec<String>,
    roles: Vec<String>,
    ind_vals: Vec<usize>,
    concept_masks: Vec<u64>,
    role_masks: Vec<u64>,
}

impl RawEnumerator {
    fn new(sig: &Signature, n: usize) -> RawEnumerator {
        RawEnumerator {
            n,
            inds: sig.individuals.iter().cloned().collect(),
            concepts: sig.concepts.iter().cloned().collect(),
            roles: sig.roles.iter().cloned().collect(),
            ind_vals: vec![0; sig.individuals.len()],
            concept_masks: vec![0; sig.concepts.len()],
            role_masks: vec![0; sig.roles.len()],
        }
    }

    fn first_interpretation(&self) -> Interpretation {
        let mut interp = Interpretation::with_default_domain(self.n).expect("size checked");
        for name in &self.inds {
            interp.individuals_mut().insert(name.clone(), 0);
        }
        for name in &self.concepts {
            interp.concepts_mut().insert(name.clone(), ElemSet::EMPTY);
        }
        for name in &self.roles {
            interp.roles_mut().insert(name.clone(), PairSet::empty(self.n));
        }
        interp
    }

    /// Advances to the next tuple. Returns the index of the least
    /// significant digit group that changed (0 = individuals, 1 = concepts,
    /// 2 = roles refer to `write_into` granularity), or `None` after the
    /// last tuple.
    fn advance(&mut self) -> Option<()> {
        let n = self.n as u64;
        let role_max = if n * n == 64 { u64::MAX } else { (1u64 << (n * n)) - 1 };
        for m in self.role_masks.iter_mut().rev() {
            if *m < role_max {
                *m += 1;
                return Some(());
            }
            *m = 0;
        }
        let concept_max = (1u64 << n) - 1;
        for m in self.concept_masks.iter_mut().rev() {
            if *m < concept_max {
                *m += 1;
                return Some(());
            }
            *m = 0;
        }
        for v in self.ind_vals.iter_mut().rev() {
            if *v + 1 < self.n {
                *v += 1;
                return Some(());
            }
            *v = 0;
        }
        None
    }

    /// Writes the current tuple into `interp` (which must have been created
    /// by `first_interpretation`).
    fn write_into(&self, interp: &mut Interpretation) {
        for (name, &v) in self.inds.iter().zip(&self.ind_vals) {
            *interp.individuals_mut().get_mut(name).expect("initialized") = v;
        }
        for (name, &mask) in self.concepts.iter().zip(&self.concept_masks) {
            *interp.concepts_mut().get_mut(name).expect("initialized") = ElemSet::from_bits(mask);
        }
        for (name, &packed) in self.roles.iter().zip(&self.role_masks) {
            let rel = interp.roles_mut().get_mut(name).expect("initialized");
            let row_mask = ElemSet::full(self.n).bits();
            let mut unpacked = PairSet::empty(self.n);
            for x in 0..self.n {
                let row = (packed >> (x * self.n)) & row_mask;
                for y in ElemSet::from_bits(row).iter().take_while(|&y| y < self.n) {
                    unpacked.insert(x, y);
                }
            }
            *rel = unpacked;
        }
    }
}

/// Visits every interpretation of the signature with domain
/// `e0 .. e{size-1}` exactly once, in enumeration order, reusing one
/// interpretation value. Break from `f` to stop early.
pub fn for_each_interpretation<F>(sig: &Signature, size: usize, mut f: F) -> Result<(), ReasonerError>
where
    F: FnMut(&Interpretation) -> ControlFlow<()>,
{
    check_size(size)?;
    let mut raw = RawEnumerator::new(sig, size);
    let mut interp = raw.first_interpretation();
    loop {
        raw.write_into(&mut interp);
        if f(&interp).is_break() {
            return Ok(());
        }
        if raw.advance().is_none() {
            return Ok(());
        }
    }
}

/// Iterator over all interpretations of a signature at a fixed domain size,
/// in enumeration order.
pub struct InterpretationIter {
    raw: RawEnumerator,
    current: Interpretation,
    done: bool,
}

impl Iterator for InterpretationIter {
    type Item = Interpretation;

    fn next(&mut self) -> Option<Interpretation> {
        if self.done {
            return None;
        }
        self.raw.write_into(&mut self.current);
        let out = self.current.clone();
        if self.raw.advance().is_none() {
            self.done = true;
        }
        Some(out)
    }
}

/// All interpretations with domain `e0 .. e{size-1}` over the signature:
/// `size^|individuals| * 2^(size*|concepts|) * 2^(size²*|roles|)` of them,
/// each exactly once, in enumeration order.
pub fn enumerate_interpretations(
    sig: &Signature,
    size: usize,
) -> Result<InterpretationIter, ReasonerError> {
    check_size(size)?;
    let raw = RawEnumerator::new(sig, size);
    let current = raw.first_interpretation();
    Ok(InterpretationIter { raw, current, done: false })
}

/// All models of the ontology with domain exactly `e0 .. e{size-1}`, in
/// enumeration order, by plain enumeration. Errors with `CapExceeded` once
/// more than `cfg.max_interpretations` candidates have been examined.
pub fn all_models(
    o: &Ontology,
    size: usize,
    cfg: &SearchConfig,
) -> Result<Vec<Interpretation>, ReasonerError> {
    let mut models = Vec::new();
    let mut examined: u64 = 0;
    let mut error = None;
    for_each_interpretation(&o.signature, size, |interp| {
        examined += 1;
        if let Some(cap) = cfg.max_interpretations {
            if examined > cap {
                error = Some(ReasonerError::CapExceeded { cap });
                return ControlFlow::Break(());
            }
        }
        match is_model(o, interp) {
            Ok(true) => {
                models.push(interp.clone());
                ControlFlow::Continue(())
            }
            Ok(false) => ControlFlow::Continue(()),
            Err(e) => {
                error = Some(e.into());
                ControlFlow::Break(())
            }
        }
    })?;
    match error {
        Some(e) => Err(e),
        None => Ok(models),
    }
}

/// Searches for a model, trying domain sizes 1 up to the bound in order.
/// `Witness` holds the first model (in enumeration order) of the smallest
/// satisfiable domain size; `NoneUpTo` means no model up to the bound
/// exists, which does not rule out larger or infinite models.
pub fn check_consistency(o: &Ontology, cfg: &SearchConfig) -> Result<BoundedVerdict, ReasonerError> {
    let constraints: Vec<Constraint> =
        o.axioms.iter().map(|ax| Constraint::holds(ax.clone())).collect();
    bounded_search(&o.signature, constraints, cfg)
}

/// Searches for a countermodel: a model of the ontology falsifying the
/// query. `Witness` refutes the entailment definitively; `NoneUpTo` means
/// the entailment was not refuted at any size up to the bound.
pub fn check_entailment(
    o: &Ontology,
    query: &Axiom,
    cfg: &SearchConfig,
) -> Result<BoundedVerdict, ReasonerError> {
    // The countermodel must interpret query names too.
    let mut axioms = o.axioms.clone();
    axioms.push(query.clone());
    let signature = build_ontology(axioms)?.signature;

    let mut constraints: Vec<Constraint> =
        o.axioms.iter().map(|ax| Constraint::holds(ax.clone())).collect();
    constraints.push(Constraint::fails(query.clone()));
    bounded_search(&signature, constraints, cfg)
}

fn bounded_search(
    sig: &Signature,
    constraints: Vec<Constraint>,
    cfg: &SearchConfig,
) -> Result<BoundedVerdict, ReasonerError> {
    if cfg.max_domain_size == 0 {
        return Err(ReasonerError::ZeroDomain);
    }
    check_size(cfg.max_domain_size)?;
    let mut examined: u64 = 0;
    for size in 1..=cfg.max_domain_size {
        let mut search = Search::new(sig, size, &constraints, cfg.max_interpretations, examined);
        if let Some(witness) = search.run()? {
            return Ok(BoundedVerdict::Witness(witness));
        }
        examined = search.examined();
    }
    Ok(BoundedVerdict::NoneUpTo(cfg.max_domain_size))
}
