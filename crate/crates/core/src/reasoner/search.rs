//! Backtracking search over the interpretation space.
//!
//! The search assigns the same digits in the same order as plain
//! enumeration (individuals, then concept membership bits, then role pair
//! bits), visiting leaves in enumeration order. Branches are cut only when
//! some constraint is certainly violated by the assignment so far:
//!
//! * every constraint is evaluated exactly once per path, at the depth
//!   where all names it mentions have been assigned (this alone makes the
//!   search complete and sound);
//! * role assertions required true or false pin their pair bit per
//!   individual assignment, so conflicting branches never open;
//! * role inclusion, equivalence, disjointness and composition constraints
//!   check for completed violation witnesses at every pair bit they touch,
//!   reading assigned bits and pinned bits only.
//!
//! Pruned subtrees therefore contain no solutions, and the first solution
//! found is the first in enumeration order.

use crate::ast::{Axiom, CharacteristicKind, NameKind, RoleExpr, Signature};
use crate::semantics::{satisfies_axiom, ElemSet, Interpretation, PairSet};

use super::ReasonerError;

/// An axiom that every solution must satisfy or must falsify.
#[derive(Debug, Clone)]
pub(super) struct Constraint {
    pub axiom: Axiom,
    pub must_hold: bool,
}

impl Constraint {
    pub fn holds(axiom: Axiom) -> Constraint {
        Constraint { axiom, must_hold: true }
    }

    pub fn fails(axiom: Axiom) -> Constraint {
        Constraint { axiom, must_hold: false }
    }
}

/// A role expression with its name resolved to a role index.
#[derive(Debug, Clone, Copy)]
enum RoleRef {
    Universal,
    Named(usize),
    Inverse(usize),
}

impl RoleRef {
    fn name_idx(self) -> Option<usize> {
        match self {
            RoleRef::Universal => None,
            RoleRef::Named(i) | RoleRef::Inverse(i) => Some(i),
        }
    }

    /// The pair this expression gains/loses when raw pair `(x, y)` of its
    /// underlying name changes.
    fn orient(self, x: usize, y: usize) -> (usize, usize) {
        match self {
            RoleRef::Universal | RoleRef::Named(_) => (x, y),
            RoleRef::Inverse(_) => (y, x),
        }
    }
}

/// Early violation checks attached to one role name's pair bits.
#[derive(Debug, Clone, Copy)]
enum Trigger {
    /// `this ⊆ other` required; fires when `this` gains a pair.
    SubsetGain { this: RoleRef, other: RoleRef },
    /// `other ⊆ this` required; fires when `this` loses a pair.
    SubsetLose { this: RoleRef, other: RoleRef },
    /// `Universal ⊆ this` required; any cleared bit violates.
    FullLose,
    /// `this ∩ other = ∅` required; fires when `this` gains a pair.
    DisjointGain { this: RoleRef, other: RoleRef },
    /// `r1 ∘ r2 ⊆ s`; fires when `s` loses a pair.
    CompositionLose { r1: RoleRef, r2: RoleRef, s: RoleRef },
    /// `r1 ∘ r2 ⊆ s`; fires when `r1` gains a pair.
    CompositionGainLeft { r1: RoleRef, r2: RoleRef, s: RoleRef },
    /// `r1 ∘ r2 ⊆ s`; fires when `r2` gains a pair.
    CompositionGainRight { r1: RoleRef, r2: RoleRef, s: RoleRef },
}

pub(super) struct Search<'a> {
    n: usize,
    inds: Vec<&'a str>,
    concepts: Vec<&'a str>,
    roles: Vec<&'a str>,
    constraints: &'a [Constraint],
    /// Constraint ids to evaluate on reaching each depth.
    due_at: Vec<Vec<usize>>,
    triggers: Vec<Vec<Trigger>>,
    /// Role assertions compiled to (role, subject, object, required value);
    /// pinned per individual assignment.
    pin_sources: Vec<(RoleRef, usize, usize, bool)>,
    /// Per role: packed mask of pinned pairs and their values.
    pins: Vec<(u64, u64)>,
    ind_vals: Vec<usize>,
    /// Per role: packed mask of currently assigned-true pairs.
    role_packed: Vec<u64>,
    interp: Interpretation,
    total_depth: usize,
    concept_base: usize,
    role_base: usize,
    examined: u64,
    cap: Option<u64>,
}

impl<'a> Search<'a> {
    pub fn new(
        sig: &'a Signature,
        n: usize,
        constraints: &'a [Constraint],
        cap: Option<u64>,
        examined: u64,
    ) -> Search<'a> {
        let inds: Vec<&str> = sig.individuals.iter().map(|s| s.as_str()).collect();
        let concepts: Vec<&str> = sig.concepts.iter().map(|s| s.as_str()).collect();
        let roles: Vec<&str> = sig.roles.iter().map(|s| s.as_str()).collect();

        let concept_base = inds.len();
        let role_base = concept_base + concepts.len() * n;
        let total_depth = role_base + roles.len() * n * n;

        let ind_idx = |name: &str| inds.binary_search(&name).expect("name in signature");
        let concept_idx = |name: &str| concepts.binary_search(&name).expect("name in signature");
        let role_idx = |name: &str| roles.binary_search(&name).expect("name in signature");
        let resolve = |r: &RoleExpr| match r {
            RoleExpr::Universal => RoleRef::Universal,
            RoleExpr::Named(name) => RoleRef::Named(role_idx(name)),
            RoleExpr::Inverse(name) => RoleRef::Inverse(role_idx(name)),
        };

        let mut due_at = vec![Vec::new(); total_depth + 1];
        for (cid, c) in constraints.iter().enumerate() {
            let mut depth = 0;
            for (name, kind) in crate::ast::named_uses(&c.axiom) {
                let d = match kind {
                    NameKind::Individual => ind_idx(&name) + 1,
                    NameKind::Concept => concept_base + (concept_idx(&name) + 1) * n,
                    NameKind::Role => role_base + (role_idx(&name) + 1) * n * n,
                };
                depth = depth.max(d);
            }
            due_at[depth].push(cid);
        }

        let mut triggers = vec![Vec::new(); roles.len()];
        let mut pin_sources = Vec::new();
        let register_incl = |triggers: &mut Vec<Vec<Trigger>>, sub: RoleRef, sup: RoleRef| {
            if matches!(sup, RoleRef::Universal) {
                return; // trivially satisfied
            }
            match sub {
                RoleRef::Universal => {
                    triggers[sup.name_idx().unwrap()].push(Trigger::FullLose);
                }
                _ => {
                    triggers[sub.name_idx().unwrap()]
                        .push(Trigger::SubsetGain { this: sub, other: sup });
                    triggers[sup.name_idx().unwrap()]
                        .push(Trigger::SubsetLose { this: sup, other: sub });
                }
            }
        };
        let register_disjoint = |triggers: &mut Vec<Vec<Trigger>>, l: RoleRef, r: RoleRef| {
            if let Some(i) = l.name_idx() {
                triggers[i].push(Trigger::DisjointGain { this: l, other: r });
            }
            if let Some(i) = r.name_idx() {
                triggers[i].push(Trigger::DisjointGain { this: r, other: l });
            }
        };
        let register_cri =
            |triggers: &mut Vec<Vec<Trigger>>, r1: RoleRef, r2: RoleRef, s: RoleRef| {
                if matches!(s, RoleRef::Universal) {
                    return; // supersets of anything
                }
                triggers[s.name_idx().unwrap()].push(Trigger::CompositionLose { r1, r2, s });
                if let Some(i) = r1.name_idx() {
                    triggers[i].push(Trigger::CompositionGainLeft { r1, r2, s });
                }
                if let Some(i) = r2.name_idx() {
                    triggers[i].push(Trigger::CompositionGainRight { r1, r2, s });
                }
            };

        for c in constraints {
            match (&c.axiom, c.must_hold) {
                (Axiom::RoleAssertion(r, a, b), want) => {
                    if !matches!(r, RoleExpr::Universal) {
                        pin_sources.push((resolve(r), ind_idx(a), ind_idx(b), want));
                    }
                }
                (Axiom::RoleIncl(l, r), true) => register_incl(&mut triggers, resolve(l), resolve(r)),
                (Axiom::RoleEquiv(l, r), true) => {
                    register_incl(&mut triggers, resolve(l), resolve(r));
                    register_incl(&mut triggers, resolve(r), resolve(l));
                }
                (Axiom::RoleDisjoint(l, r), true) => {
                    register_disjoint(&mut triggers, resolve(l), resolve(r));
                }
                (Axiom::ComplexRoleIncl(r1, r2, s), true) => {
                    register_cri(&mut triggers, resolve(r1), resolve(r2), resolve(s));
                }
                (Axiom::Characteristic(kind, r), true) if !matches!(r, RoleExpr::Universal) => {
                    // Early checks via the core encodings; the exact
                    // evaluation still happens at the due depth.
                    let rr = resolve(r);
                    let inv = resolve(&r.inverse());
                    match kind {
                        CharacteristicKind::Transitive => register_cri(&mut triggers, rr, rr, rr),
                        CharacteristicKind::Symmetric => {
                            register_incl(&mut triggers, rr, inv);
                            register_incl(&mut triggers, inv, rr);
                        }
                        CharacteristicKind::Asymmetric => {
                            register_disjoint(&mut triggers, rr, inv);
                        }
                        CharacteristicKind::Reflexive | CharacteristicKind::Irreflexive => {}
                    }
                }
                _ => {}
            }
        }

        let mut interp = Interpretation::with_default_domain(n).expect("size checked by caller");
        for name in &inds {
            interp.individuals_mut().insert(name.to_string(), 0);
        }
        for name in &concepts {
            interp.concepts_mut().insert(name.to_string(), ElemSet::EMPTY);
        }
        for name in &roles {
            interp.roles_mut().insert(name.to_string(), PairSet::empty(n));
        }

        let role_count = roles.len();
        let ind_count = inds.len();
        Search {
            n,
            inds,
            concepts,
            roles,
            constraints,
            due_at,
            triggers,
            pin_sources,
            pins: vec![(0, 0); role_count],
            ind_vals: vec![0; ind_count],
            role_packed: vec![0; role_count],
            interp,
            total_depth,
            concept_base,
            role_base,
            examined,
            cap,
        }
    }

    pub fn examined(&self) -> u64 {
        self.examined
    }

    pub fn run(&mut self) -> Result<Option<Interpretation>, ReasonerError> {
        self.dfs(0)
    }

    fn known_raw(&self, role: usize, packed: u64, depth: usize) -> Option<bool> {
        let (pin_mask, pin_vals) = self.pins[role];
        if pin_mask & (1u64 << packed) != 0 {
            return Some(pin_vals & (1u64 << packed) != 0);
        }
        let nn = self.n * self.n;
        let digit = self.role_base + role * nn + (nn - 1 - packed as usize);
        if digit < depth {
            Some(self.role_packed[role] & (1u64 << packed) != 0)
        } else {
            None
        }
    }

    /// Whether pair `(x, y)` is in the relation of `r`, if decided by
    /// assigned or pinned bits.
    fn known(&self, r: RoleRef, x: usize, y: usize, depth: usize) -> Option<bool> {
        match r {
            RoleRef::Universal => Some(true),
            RoleRef::Named(i) => self.known_raw(i, (x * self.n + y) as u64, depth),
            RoleRef::Inverse(i) => self.known_raw(i, (y * self.n + x) as u64, depth),
        }
    }

    /// Derives pinned pair bits from role assertion constraints under the
    /// current individual assignment. False on contradictory pins.
    fn compute_pins(&mut self) -> bool {
        for p in self.pins.iter_mut() {
            *p = (0, 0);
        }
        for &(role, a, b, want) in &self.pin_sources {
            let (x, y) = role.orient(self.ind_vals[a], self.ind_vals[b]);
            let i = role.name_idx().expect("universal assertions are not pinned");
            let bit = 1u64 << (x * self.n + y);
            let (mask, vals) = &mut self.pins[i];
            if *mask & bit != 0 {
                if (*vals & bit != 0) != want {
                    return false;
                }
            } else {
                *mask |= bit;
                if want {
                    *vals |= bit;
                }
            }
        }
        true
    }

    /// Runs the early checks for an assignment of raw pair bit `packed` of
    /// role `role` to `value`. False means some constraint is violated.
    fn triggers_pass(&self, role: usize, packed: usize, value: bool, depth: usize) -> bool {
        let n = self.n;
        let (rx, ry) = (packed / n, packed % n);
        for trigger in &self.triggers[role] {
            let violated = match *trigger {
                Trigger::SubsetGain { this, other } => {
                    value && {
                        let (x, y) = this.orient(rx, ry);
                        self.known(other, x, y, depth) == Some(false)
                    }
                }
                Trigger::SubsetLose { this, other } => {
                    !value && {
                        let (x, y) = this.orient(rx, ry);
                        self.known(other, x, y, depth) == Some(true)
                    }
                }
                Trigger::FullLose => !value,
                Trigger::DisjointGain { this, other } => {
                    value && {
                        let (x, y) = this.orient(rx, ry);
                        self.known(other, x, y, depth) == Some(true)
                    }
                }
                Trigger::CompositionLose { r1, r2, s } => {
                    !value && {
                        let (x, z) = s.orient(rx, ry);
                        (0..n).any(|y| {
                            self.known(r1, x, y, depth) == Some(true)
                                && self.known(r2, y, z, depth) == Some(true)
                        })
                    }
                }
                Trigger::CompositionGainLeft { r1, r2, s } => {
                    value && {
                        let (x, y) = r1.orient(rx, ry);
                        (0..n).any(|z| {
                            self.known(r2, y, z, depth) == Some(true)
                                && self.known(s, x, z, depth) == Some(false)
                        })
                    }
                }
                Trigger::CompositionGainRight { r1, r2, s } => {
                    value && {
                        let (y, z) = r2.orient(rx, ry);
                        (0..n).any(|x| {
                            self.known(r1, x, y, depth) == Some(true)
                                && self.known(s, x, z, depth) == Some(false)
                        })
                    }
                }
            };
            if violated {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, depth: usize) -> Result<Option<Interpretation>, ReasonerError> {
        if depth == self.concept_base && !self.compute_pins() {
            return Ok(None);
        }
        for i in 0..self.due_at[depth].len() {
            let cid = self.due_at[depth][i];
            let c = &self.constraints[cid];
            if satisfies_axiom(&c.axiom, &self.interp)? != c.must_hold {
                return Ok(None);
            }
        }
        if depth == self.total_depth {
            self.examined += 1;
            if let Some(cap) = self.cap {
                if self.examined > cap {
                    return Err(ReasonerError::CapExceeded { cap });
                }
            }
            return Ok(Some(self.interp.clone()));
        }

        if depth < self.concept_base {
            // Individual digit.
            let name = self.inds[depth];
            for v in 0..self.n {
                self.ind_vals[depth] = v;
                *self.interp.individuals_mut().get_mut(name).expect("initialized") = v;
                if let Some(w) = self.dfs(depth + 1)? {
                    return Ok(Some(w));
                }
            }
        } else if depth < self.role_base {
            // Concept membership bit, most significant element first.
            let j = depth - self.concept_base;
            let (c, elem) = (j / self.n, self.n - 1 - (j % self.n));
            let name = self.concepts[c];
            for value in [false, true] {
                let set = self.interp.concepts_mut().get_mut(name).expect("initialized");
                if value {
                    set.insert(elem);
                } else {
                    set.remove(elem);
                }
                if let Some(w) = self.dfs(depth + 1)? {
                    return Ok(Some(w));
                }
            }
        } else {
            // Role pair bit, most significant pair first.
            let nn = self.n * self.n;
            let j = depth - self.role_base;
            let (r, packed) = (j / nn, nn - 1 - (j % nn));
            let (x, y) = (packed / self.n, packed % self.n);
            let name = self.roles[r];
            let (pin_mask, pin_vals) = self.pins[r];
            let pinned = if pin_mask & (1u64 << packed) != 0 {
                Some(pin_vals & (1u64 << packed) != 0)
            } else {
                None
            };
            for value in [false, true] {
                if pinned.is_some_and(|p| p != value) {
                    continue;
                }
                if value {
                    self.role_packed[r] |= 1u64 << packed;
                } else {
                    self.role_packed[r] &= !(1u64 << packed);
                }
                let rel = self.interp.roles_mut().get_mut(name).expect("initialized");
                if value {
                    rel.insert(x, y);
                } else {
                    rel.remove(x, y);
                }
                if !self.triggers_pass(r, packed, value, depth + 1) {
                    continue;
                }
                if let Some(w) = self.dfs(depth + 1)? {
                    return Ok(Some(w));
                }
            }
        }
        Ok(None)
    }
}
