//! Command-line interface over the SROIQ toolkit.
//!
//! Exit codes: 0 for success or an affirmative verdict, 1 for a failed
//! check or a negative/inconclusive verdict, 2 for parse, input or usage
//! errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use dlkit_core::ast::{Axiom, Ontology};
use dlkit_core::fragments::{detect_features, dl_name, is_el, is_elpp};
use dlkit_core::owl::{export_functional, ExportConfig};
use dlkit_core::parser::{parse_axiom, parse_ontology_spanned, render, render_axiom, render_role};
use dlkit_core::reasoner::{check_consistency, check_entailment, BoundedVerdict, SearchConfig};
use dlkit_core::rewrite::{desugar, nominalize_abox};
use dlkit_core::semantics::{satisfies_axiom, Interpretation};
use dlkit_core::structural::{has_complex_role_inclusions, validate_simplicity, StructuralConfig};

const DEFAULT_CANDIDATE_CAP: u64 = 100_000_000;

#[derive(Parser)]
#[command(
    name = "dlkit",
    about = "Parse, check, reason about and export SROIQ ontologies",
    version
)]
struct Cli {
    /// Emit a structured JSON report instead of plain text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BoundArgs {
    /// Largest domain size searched (sizes are tried smallest first).
    #[arg(long = "max-domain", default_value_t = 3, value_name = "N")]
    max_domain: usize,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an ontology and echo its canonical rendering.
    Parse { file: PathBuf },
    /// Compute non-simple roles and validate the simplicity restrictions.
    ///
    /// Exits 0 when there are no violations, 1 otherwise. Regularity of
    /// complex role inclusions is not checked; a warning is printed when
    /// such axioms are present.
    Check {
        file: PathBuf,
        /// Treat the universal role as simple (default: non-simple).
        #[arg(long = "universal-simple")]
        universal_simple: bool,
    },
    /// Search for a model of the ontology up to a domain-size bound.
    ///
    /// Exits 0 when a model is found (consistent). Exits 1 when no model
    /// up to the bound exists, which is inconclusive: larger or infinite
    /// models may still exist.
    Consistent {
        file: PathBuf,
        #[command(flatten)]
        bound: BoundArgs,
        /// Write the found model as JSON to this path.
        #[arg(long = "emit-model", value_name = "PATH")]
        emit_model: Option<PathBuf>,
    },
    /// Search for a countermodel of an axiom against the ontology.
    ///
    /// Exits 0 when no countermodel up to the bound exists (the entailment
    /// was not refuted; this is inconclusive in general). Exits 1 when a
    /// countermodel was found (the entailment definitively fails).
    Entails {
        file: PathBuf,
        /// The queried axiom, in the ontology text syntax.
        #[arg(long, value_name = "TEXT")]
        axiom: String,
        #[command(flatten)]
        bound: BoundArgs,
    },
    /// Evaluate every axiom against an explicit interpretation.
    ///
    /// Exits 0 when every axiom holds, 1 otherwise.
    ModelCheck {
        file: PathBuf,
        /// Interpretation JSON file.
        #[arg(long, value_name = "PATH")]
        interpretation: PathBuf,
        /// Treat signature concepts and roles missing from the
        /// interpretation as empty. Individuals must always be mapped.
        #[arg(long = "partial-as-empty")]
        partial_as_empty: bool,
    },
    /// Replace role-characteristic axioms by their core encodings.
    Desugar { file: PathBuf },
    /// Turn concept and role assertions into nominal-based inclusions.
    Nominalize { file: PathBuf },
    /// Report the fragment name and EL / EL++ membership.
    Fragment { file: PathBuf },
    /// Export to OWL 2 Functional-Style Syntax.
    ExportOwl {
        file: PathBuf,
        /// Ontology IRI.
        #[arg(long, value_name = "IRI")]
        iri: Option<String>,
    },
}

struct Failure {
    message: String,
    code: u8,
}

impl Failure {
    fn input(message: impl Into<String>) -> Failure {
        Failure { message: message.into(), code: 2 }
    }
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Failure {
        Failure::input(e.to_string())
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load_ontology(path: &Path) -> Result<(Ontology, Vec<u32>), Failure> {
    let text = read_file(path)?;
    Ok(parse_ontology_spanned(&text)?)
}

fn candidate_cap() -> Result<u64, Failure> {
    match std::env::var("DLKIT_MAX_INTERPRETATIONS") {
        Ok(v) => v.trim().parse().map_err(|_| {
            Failure::input(format!("DLKIT_MAX_INTERPRETATIONS is not a valid count: '{v}'"))
        }),
        Err(_) => Ok(DEFAULT_CANDIDATE_CAP),
    }
}

fn search_config(bound: &BoundArgs) -> Result<SearchConfig, Failure> {
    if bound.max_domain == 0 {
        return Err(Failure::input("--max-domain must be at least 1"));
    }
    Ok(SearchConfig {
        max_domain_size: bound.max_domain,
        max_interpretations: Some(candidate_cap()?),
        deterministic: true,
    })
}

fn model_json(interp: &Interpretation) -> serde_json::Value {
    serde_json::from_str(&interp.to_json()).expect("valid interpretation JSON")
}

fn cmd_parse(file: &Path, json: bool) -> Result<u8, Failure> {
    let (ontology, _) = load_ontology(file)?;
    if json {
        let axioms: Vec<String> = ontology.axioms.iter().map(render_axiom).collect();
        println!("{}", json!({ "command": "parse", "axioms": axioms }));
    } else {
        print!("{}", render(&ontology));
    }
    Ok(0)
}

fn cmd_check(file: &Path, universal_simple: bool, json: bool) -> Result<u8, Failure> {
    let (ontology, lines) = load_ontology(file)?;
    let cfg = StructuralConfig { universal_role_simple: universal_simple };
    let report = validate_simplicity(&ontology, &cfg);
    let regularity_unchecked = has_complex_role_inclusions(&ontology);
    if regularity_unchecked {
        eprintln!("warning: complex role inclusions present; regularity is not checked");
    }
    if json {
        let non_simple: Vec<String> = report.non_simple.iter().map(render_role).collect();
        let violations: Vec<_> = report
            .violations
            .iter()
            .map(|v| {
                json!({
                    "axiom": v.axiom_index,
                    "line": lines[v.axiom_index],
                    "place": v.place.to_string(),
                    "role": render_role(&v.role),
                })
            })
            .collect();
        println!(
            "{}",
            json!({
                "command": "check",
                "nonSimple": non_simple,
                "violations": violations,
                "regularityUnchecked": regularity_unchecked,
            })
        );
    } else {
        if report.non_simple.is_empty() {
            println!("non-simple roles: (none)");
        } else {
            let names: Vec<String> = report.non_simple.iter().map(render_role).collect();
            println!("non-simple roles: {}", names.join(", "));
        }
        println!("violations: {}", report.violations.len());
        for v in &report.violations {
            println!(
                "axiom {} (line {}): {} on non-simple role {}",
                v.axiom_index,
                lines[v.axiom_index],
                v.place,
                render_role(&v.role)
            );
        }
    }
    Ok(if report.is_ok() { 0 } else { 1 })
}

fn cmd_consistent(
    file: &Path,
    bound: &BoundArgs,
    emit_model: Option<&Path>,
    json: bool,
) -> Result<u8, Failure> {
    let (ontology, _) = load_ontology(file)?;
    let ontology = desugar(&ontology)?;
    let cfg = search_config(bound)?;
    match check_consistency(&ontology, &cfg)? {
        BoundedVerdict::Witness(model) => {
            if let Some(path) = emit_model {
                fs::write(path, model.to_json()).map_err(|e| {
                    Failure::input(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "consistent",
                        "verdict": "model-found",
                        "domainSize": model.domain_size(),
                        "model": model_json(&model),
                    })
                );
            } else {
                println!("model found at domain size {}", model.domain_size());
            }
            Ok(0)
        }
        BoundedVerdict::NoneUpTo(bound) => {
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "consistent",
                        "verdict": "no-model-up-to-bound",
                        "bound": bound,
                    })
                );
            } else {
                println!("no model up to size {bound}");
            }
            Ok(1)
        }
    }
}

fn cmd_entails(file: &Path, axiom_text: &str, bound: &BoundArgs, json: bool) -> Result<u8, Failure> {
    let (ontology, _) = load_ontology(file)?;
    let ontology = desugar(&ontology)?;
    let query = parse_axiom(axiom_text, &ontology.signature)?;
    let cfg = search_config(bound)?;
    match check_entailment(&ontology, &query, &cfg)? {
        BoundedVerdict::NoneUpTo(bound) => {
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "entails",
                        "verdict": "not-refuted",
                        "bound": bound,
                    })
                );
            } else {
                println!("no countermodel up to size {bound}");
            }
            Ok(0)
        }
        BoundedVerdict::Witness(counter) => {
            if json {
                println!(
                    "{}",
                    json!({
                        "command": "entails",
                        "verdict": "refuted",
                        "domainSize": counter.domain_size(),
                        "countermodel": model_json(&counter),
                    })
                );
            } else {
                println!("countermodel found at domain size {}", counter.domain_size());
            }
            Ok(1)
        }
    }
}

fn cmd_model_check(
    file: &Path,
    interp_path: &Path,
    partial_as_empty: bool,
    json: bool,
) -> Result<u8, Failure> {
    let (ontology, _) = load_ontology(file)?;
    let mut interp = Interpretation::from_json(&read_file(interp_path)?)?;
    if partial_as_empty {
        let n = interp.domain_size();
        for name in &ontology.signature.concepts {
            if interp.concept_set(name).is_err() {
                interp.set_concept(name, dlkit_core::semantics::ElemSet::EMPTY)?;
            }
        }
        for name in &ontology.signature.roles {
            if interp.role_relation(name).is_err() {
                interp.set_role_relation(name, dlkit_core::semantics::PairSet::empty(n));
            }
        }
    }
    let mut results = Vec::new();
    let mut all_hold = true;
    for axiom in &ontology.axioms {
        let holds = satisfies_axiom(axiom, &interp)?;
        all_hold &= holds;
        results.push((render_axiom(axiom), holds));
    }
    if json {
        let rows: Vec<_> = results
            .iter()
            .map(|(ax, holds)| json!({ "axiom": ax, "holds": holds }))
            .collect();
        println!(
            "{}",
            json!({ "command": "model-check", "results": rows, "allHold": all_hold })
        );
    } else {
        for (i, (ax, holds)) in results.iter().enumerate() {
            println!("{i}\t{}\t{ax}", if *holds { "holds" } else { "fails" });
        }
    }
    Ok(if all_hold { 0 } else { 1 })
}

fn cmd_transform(
    file: &Path,
    transform: impl Fn(&Ontology) -> Result<Ontology, Failure>,
    command: &str,
    json: bool,
) -> Result<u8, Failure> {
    let (ontology, _) = load_ontology(file)?;
    let out = transform(&ontology)?;
    if json {
        let axioms: Vec<String> = out.axioms.iter().map(render_axiom).collect();
        println!("{}", json!({ "command": command, "axioms": axioms }));
    } else {
        print!("{}", render(&out));
    }
    Ok(0)
}

fn cmd_fragment(file: &Path, json: bool) -> Result<u8, Failure> {
    let (ontology, _) = load_ontology(file)?;
    let features = detect_features(&ontology);
    let name = dl_name(&features);
    let el = is_el(&ontology);
    let elpp = is_elpp(&ontology);
    let only_abox = !ontology.axioms.is_empty()
        && ontology.axioms.iter().all(|ax| {
            matches!(
                ax,
                Axiom::ConceptAssertion(..)
                    | Axiom::RoleAssertion(..)
                    | Axiom::Equal(..)
                    | Axiom::NotEqual(..)
            )
        });
    let note = only_abox
        .then_some("assertions alone do not affect the constructor-based name");
    if json {
        println!(
            "{}",
            json!({
                "command": "fragment",
                "name": name,
                "el": el,
                "elpp": elpp,
                "note": note,
            })
        );
    } else {
        if let Some(note) = note {
            eprintln!("note: {note}");
        }
        println!("name: {name}");
        println!("EL: {}", if el { "yes" } else { "no" });
        println!("EL++: {}", if elpp { "yes" } else { "no" });
    }
    Ok(0)
}

fn cmd_export_owl(file: &Path, iri: Option<&str>, json: bool) -> Result<u8, Failure> {
    let (ontology, _) = load_ontology(file)?;
    let cfg = ExportConfig { ontology_iri: iri.map(str::to_string), prefix_iri: None };
    let text = export_functional(&ontology, &cfg)?;
    if json {
        println!("{}", json!({ "command": "export-owl", "text": text }));
    } else {
        print!("{text}");
    }
    Ok(0)
}

fn run(cli: &Cli) -> Result<u8, Failure> {
    match &cli.command {
        Command::Parse { file } => cmd_parse(file, cli.json),
        Command::Check { file, universal_simple } => cmd_check(file, *universal_simple, cli.json),
        Command::Consistent { file, bound, emit_model } => {
            cmd_consistent(file, bound, emit_model.as_deref(), cli.json)
        }
        Command::Entails { file, axiom, bound } => cmd_entails(file, axiom, bound, cli.json),
        Command::ModelCheck { file, interpretation, partial_as_empty } => {
            cmd_model_check(file, interpretation, *partial_as_empty, cli.json)
        }
        Command::Desugar { file } => {
            cmd_transform(file, |o| Ok(desugar(o)?), "desugar", cli.json)
        }
        Command::Nominalize { file } => {
            cmd_transform(file, |o| Ok(nominalize_abox(o)), "nominalize", cli.json)
        }
        Command::Fragment { file } => cmd_fragment(file, cli.json),
        Command::ExportOwl { file, iri } => cmd_export_owl(file, iri.as_deref(), cli.json),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
