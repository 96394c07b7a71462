//! A toolkit for the description logic SROIQ: ontology parsing and
//! printing, structural validation of role simplicity, model-theoretic
//! semantics over explicit finite interpretations, consistency and
//! entailment by bounded model enumeration, syntactic rewrites, fragment
//! detection (ALC..SROIQ letters, EL, EL++) and OWL 2 Functional-Style
//! Syntax export.
//!
//! Reasoning here is deliberately the brute-force kind: interpretations up
//! to a domain-size bound are searched exhaustively against the semantics.
//! Witnesses (models, countermodels) are definitive; exhaustion without a
//! witness is reported as inconclusive-up-to-bound, since SROIQ ontologies
//! may only have models larger than the bound, or only infinite ones.

pub mod ast;
pub mod fragments;
pub mod owl;
pub mod parser;
pub mod reasoner;
pub mod rewrite;
pub mod semantics;
pub mod structural;

pub use ast::{
    build_ontology, free_names, Axiom, CharacteristicKind, ConceptExpr, NameKind, Ontology,
    RoleExpr, Signature,
};
pub use parser::{parse_axiom, parse_ontology, render, ParseError};
pub use reasoner::{BoundedVerdict, SearchConfig};
pub use semantics::{eval_concept, eval_role, is_model, satisfies_axiom, Interpretation};
