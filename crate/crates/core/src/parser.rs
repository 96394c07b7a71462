//! Text format for ontologies: parsing and canonical pretty-printing.
//!
//! The format is line oriented: one axiom per line, `#` starts a comment,
//! blank lines are ignored. Concept expressions use the keywords `and`,
//! `or`, `not`, `exists`, `forall`, `>=`, `<=`, `Top`, `Bottom`, `Self`,
//! `{a}` for nominals; roles are names, `inv(name)` or `Universal`.
//! Precedence is `not`/quantifiers over `and` over `or`, and quantifiers
//! bind a single unary concept, so `exists r.A and B` reads as
//! `(exists r.A) and B`.
//!
//! `render` produces canonical text that parses back to a structurally equal
//! ontology. Mixed `and`/`or` is always re-parenthesized even where
//! precedence alone would disambiguate.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::ast::{
    build_ontology, Axiom, CharacteristicKind, ConceptExpr, NameKind, Ontology, RoleExpr,
    Signature,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    NameKindConflict,
}

/// A parse failure, with a 1-based position inside the offending input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: u32,
    pub column: u32,
    pub message: String,
    pub kind: ParseErrorKind,
}

impl ParseError {
    fn new(kind: ParseErrorKind, line: u32, column: u32, message: impl Into<String>) -> Self {
        ParseError {
            line,
            column,
            message: message.into(),
            kind,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Name(String),
    Num(u32),
    Colon,
    Comma,
    Eq,
    Neq,
    LParen,
    RParen,
    Dot,
    LBrace,
    RBrace,
    Geq,
    Leq,
    And,
    Or,
    Not,
    Exists,
    Forall,
    Top,
    Bottom,
    SelfKw,
    Inv,
    Universal,
    SubClassOf,
    EquivalentTo,
    SubRoleOf,
    EquivalentRole,
    Disjoint,
    Transitive,
    Symmetric,
    Asymmetric,
    Reflexive,
    Irreflexive,
    Comp,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Name(n) => write!(f, "'{n}'"),
            Tok::Num(n) => write!(f, "'{n}'"),
            Tok::Colon => write!(f, "':'"),
            Tok::Comma => write!(f, "','"),
            Tok::Eq => write!(f, "'='"),
            Tok::Neq => write!(f, "'!='"),
            Tok::LParen => write!(f, "'('"),
            Tok::RParen => write!(f, "')'"),
            Tok::Dot => write!(f, "'.'"),
            Tok::LBrace => write!(f, "'{{'"),
            Tok::RBrace => write!(f, "'}}'"),
            Tok::Geq => write!(f, "'>='"),
            Tok::Leq => write!(f, "'<='"),
            Tok::And => write!(f, "'and'"),
            Tok::Or => write!(f, "'or'"),
            Tok::Not => write!(f, "'not'"),
            Tok::Exists => write!(f, "'exists'"),
            Tok::Forall => write!(f, "'forall'"),
            Tok::Top => write!(f, "'Top'"),
            Tok::Bottom => write!(f, "'Bottom'"),
            Tok::SelfKw => write!(f, "'Self'"),
            Tok::Inv => write!(f, "'inv'"),
            Tok::Universal => write!(f, "'Universal'"),
            Tok::SubClassOf => write!(f, "'SubClassOf'"),
            Tok::EquivalentTo => write!(f, "'EquivalentTo'"),
            Tok::SubRoleOf => write!(f, "'SubRoleOf'"),
            Tok::EquivalentRole => write!(f, "'EquivalentRole'"),
            Tok::Disjoint => write!(f, "'Disjoint'"),
            Tok::Transitive => write!(f, "'Transitive'"),
            Tok::Symmetric => write!(f, "'Symmetric'"),
            Tok::Asymmetric => write!(f, "'Asymmetric'"),
            Tok::Reflexive => write!(f, "'Reflexive'"),
            Tok::Irreflexive => write!(f, "'Irreflexive'"),
            Tok::Comp => write!(f, "'o'"),
        }
    }
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: u32,
    col: u32,
    /// First column after the token.
    end: u32,
}

fn keyword(word: &str) -> Option<Tok> {
    Some(match word {
        "and" => Tok::And,
        "or" => Tok::Or,
        "not" => Tok::Not,
        "exists" => Tok::Exists,
        "forall" => Tok::Forall,
        "Top" => Tok::Top,
        "Bottom" => Tok::Bottom,
        "Self" => Tok::SelfKw,
        "inv" => Tok::Inv,
        "Universal" => Tok::Universal,
        "SubClassOf" => Tok::SubClassOf,
        "EquivalentTo" => Tok::EquivalentTo,
        "SubRoleOf" => Tok::SubRoleOf,
        "EquivalentRole" => Tok::EquivalentRole,
        "Disjoint" => Tok::Disjoint,
        "Transitive" => Tok::Transitive,
        "Symmetric" => Tok::Symmetric,
        "Asymmetric" => Tok::Asymmetric,
        "Reflexive" => Tok::Reflexive,
        "Irreflexive" => Tok::Irreflexive,
        "o" => Tok::Comp,
        _ => return None,
    })
}

fn lex_line(line_no: u32, line: &str) -> Result<Vec<Token>, ParseError> {
    let mut toks = Vec::new();
    let chars: Vec<char> = line.chars().collect();
    let mut i = 0;
    let mut push = |tok: Tok, start: usize, end: usize| {
        toks.push(Token {
            tok,
            line: line_no,
            col: (start + 1) as u32,
            end: (end + 1) as u32,
        });
    };
    while i < chars.len() {
        let c = chars[i];
        let col = (i + 1) as u32;
        match c {
            ' ' | '\t' => {
                i += 1;
            }
            '#' => break,
            ':' | ',' | '=' | '(' | ')' | '.' | '{' | '}' => {
                let tok = match c {
                    ':' => Tok::Colon,
                    ',' => Tok::Comma,
                    '=' => Tok::Eq,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '.' => Tok::Dot,
                    '{' => Tok::LBrace,
                    _ => Tok::RBrace,
                };
                push(tok, i, i + 1);
                i += 1;
            }
            '!' | '>' | '<' => {
                if i + 1 < chars.len() && chars[i + 1] == '=' {
                    let tok = match c {
                        '!' => Tok::Neq,
                        '>' => Tok::Geq,
                        _ => Tok::Leq,
                    };
                    push(tok, i, i + 2);
                    i += 2;
                } else {
                    return Err(ParseError::new(
                        ParseErrorKind::Lexical,
                        line_no,
                        col,
                        format!("expected '=' after '{c}'"),
                    ));
                }
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n: u32 = text.parse().map_err(|_| {
                    ParseError::new(
                        ParseErrorKind::Lexical,
                        line_no,
                        col,
                        format!("number '{text}' is too large"),
                    )
                })?;
                push(Tok::Num(n), start, i);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                let tok = keyword(&word).unwrap_or(Tok::Name(word));
                push(tok, start, i);
            }
            other => {
                return Err(ParseError::new(
                    ParseErrorKind::Lexical,
                    line_no,
                    col,
                    format!("unexpected character '{other}'"),
                ));
            }
        }
    }
    Ok(toks)
}

/// Tracks which kind each name has been used with, for conflict reporting
/// at a precise source position.
struct KindChecker {
    kinds: BTreeMap<String, NameKind>,
}

impl KindChecker {
    fn new() -> Self {
        KindChecker { kinds: BTreeMap::new() }
    }

    fn seeded(sig: &Signature) -> Self {
        let mut kinds = BTreeMap::new();
        for n in &sig.individuals {
            kinds.insert(n.clone(), NameKind::Individual);
        }
        for n in &sig.concepts {
            kinds.insert(n.clone(), NameKind::Concept);
        }
        for n in &sig.roles {
            kinds.insert(n.clone(), NameKind::Role);
        }
        KindChecker { kinds }
    }

    fn record(&mut self, name: &str, kind: NameKind, line: u32, col: u32) -> Result<(), ParseError> {
        match self.kinds.get(name) {
            Some(&existing) if existing != kind => Err(ParseError::new(
                ParseErrorKind::NameKindConflict,
                line,
                col,
                format!("name '{name}' is used both as a {existing} and as a {kind}"),
            )),
            _ => {
                self.kinds.insert(name.to_string(), kind);
                Ok(())
            }
        }
    }
}

struct AxiomParser<'a> {
    toks: &'a [Token],
    pos: usize,
    line: u32,
    end_col: u32,
    checker: &'a mut KindChecker,
}

impl<'a> AxiomParser<'a> {
    fn new(toks: &'a [Token], checker: &'a mut KindChecker) -> Self {
        Self::with_fallback(toks, checker, (1, 1))
    }

    /// `fallback` positions errors when `toks` is empty (e.g. a missing
    /// right-hand side after an axiom operator).
    fn with_fallback(toks: &'a [Token], checker: &'a mut KindChecker, fallback: (u32, u32)) -> Self {
        let line = toks.first().map(|t| t.line).unwrap_or(fallback.0);
        let end_col = toks.last().map(|t| t.end).unwrap_or(fallback.1);
        AxiomParser { toks, pos: 0, line, end_col, checker }
    }

    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (u32, u32) {
        match self.toks.get(self.pos) {
            Some(t) => (t.line, t.col),
            None => (self.line, self.end_col),
        }
    }

    fn syntax(&self, message: impl Into<String>) -> ParseError {
        let (line, col) = self.here();
        ParseError::new(ParseErrorKind::Syntax, line, col, message)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.peek() {
            Some(t) if *t == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.syntax(format!("expected {what}, found {t}"))),
            None => Err(self.syntax(format!("expected {what}, found end of line"))),
        }
    }

    fn expect_name(&mut self, kind: NameKind, what: &str) -> Result<String, ParseError> {
        match self.toks.get(self.pos) {
            Some(Token { tok: Tok::Name(n), line, col, .. }) => {
                let (name, line, col) = (n.clone(), *line, *col);
                self.pos += 1;
                self.checker.record(&name, kind, line, col)?;
                Ok(name)
            }
            Some(t) => Err(ParseError::new(
                ParseErrorKind::Syntax,
                t.line,
                t.col,
                format!("expected {what}, found {}", t.tok),
            )),
            None => Err(ParseError::new(
                ParseErrorKind::Syntax,
                self.line,
                self.end_col,
                format!("expected {what}, found end of line"),
            )),
        }
    }

    fn expect_end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(t) => Err(self.syntax(format!("unexpected {t} after axiom"))),
        }
    }

    fn parse_role(&mut self) -> Result<RoleExpr, ParseError> {
        match self.peek() {
            Some(Tok::Universal) => {
                self.pos += 1;
                Ok(RoleExpr::Universal)
            }
            Some(Tok::Inv) => {
                self.pos += 1;
                self.expect(Tok::LParen, "'(' after 'inv'")?;
                let name = self.expect_name(NameKind::Role, "a role name")?;
                self.expect(Tok::RParen, "')'")?;
                Ok(RoleExpr::Inverse(name))
            }
            Some(Tok::Name(_)) => {
                let name = self.expect_name(NameKind::Role, "a role name")?;
                Ok(RoleExpr::Named(name))
            }
            Some(t) => Err(self.syntax(format!("expected a role, found {t}"))),
            None => Err(self.syntax("expected a role, found end of line")),
        }
    }

    fn parse_concept(&mut self) -> Result<ConceptExpr, ParseError> {
        let mut c = self.parse_inter()?;
        while self.peek() == Some(&Tok::Or) {
            self.pos += 1;
            let rhs = self.parse_inter()?;
            c = ConceptExpr::or(c, rhs);
        }
        Ok(c)
    }

    fn parse_inter(&mut self) -> Result<ConceptExpr, ParseError> {
        let mut c = self.parse_unary()?;
        while self.peek() == Some(&Tok::And) {
            self.pos += 1;
            let rhs = self.parse_unary()?;
            c = ConceptExpr::and(c, rhs);
        }
        Ok(c)
    }

    fn parse_unary(&mut self) -> Result<ConceptExpr, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                self.pos += 1;
                let inner = self.parse_unary()?;
                Ok(ConceptExpr::not(inner))
            }
            Some(Tok::Exists) => {
                self.pos += 1;
                let role = self.parse_role()?;
                self.expect(Tok::Dot, "'.' after the role of 'exists'")?;
                let filler = self.parse_unary()?;
                Ok(ConceptExpr::exists(role, filler))
            }
            Some(Tok::Forall) => {
                self.pos += 1;
                let role = self.parse_role()?;
                self.expect(Tok::Dot, "'.' after the role of 'forall'")?;
                let filler = self.parse_unary()?;
                Ok(ConceptExpr::forall(role, filler))
            }
            Some(Tok::Geq) | Some(Tok::Leq) => {
                let at_least = self.peek() == Some(&Tok::Geq);
                self.pos += 1;
                let n = match self.peek() {
                    Some(Tok::Num(n)) => {
                        let n = *n;
                        self.pos += 1;
                        n
                    }
                    _ => return Err(self.syntax("expected a number after '>=' or '<='")),
                };
                let role = self.parse_role()?;
                self.expect(Tok::Dot, "'.' after the role of a number restriction")?;
                let filler = self.parse_unary()?;
                Ok(if at_least {
                    ConceptExpr::at_least(n, role, filler)
                } else {
                    ConceptExpr::at_most(n, role, filler)
                })
            }
            _ => self.parse_atom(),
        }
    }

    fn parse_atom(&mut self) -> Result<ConceptExpr, ParseError> {
        match self.peek() {
            Some(Tok::Top) => {
                self.pos += 1;
                Ok(ConceptExpr::Top)
            }
            Some(Tok::Bottom) => {
                self.pos += 1;
                Ok(ConceptExpr::Bottom)
            }
            Some(Tok::Name(_)) => {
                let name = self.expect_name(NameKind::Concept, "a concept name")?;
                Ok(ConceptExpr::Named(name))
            }
            Some(Tok::LBrace) => {
                self.pos += 1;
                let ind = self.expect_name(NameKind::Individual, "an individual name")?;
                self.expect(Tok::RBrace, "'}'")?;
                Ok(ConceptExpr::Nominal(ind))
            }
            Some(Tok::SelfKw) => {
                self.pos += 1;
                self.expect(Tok::LParen, "'(' after 'Self'")?;
                let role = self.parse_role()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(ConceptExpr::HasSelf(role))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let c = self.parse_concept()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(c)
            }
            Some(t) => Err(self.syntax(format!("expected a concept, found {t}"))),
            None => Err(self.syntax("expected a concept, found end of line")),
        }
    }
}

/// Index of the first token at paren/brace depth zero matching `pred`.
fn find_top_level(toks: &[Token], pred: impl Fn(&Tok) -> bool) -> Option<usize> {
    let mut depth = 0i32;
    for (i, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::LParen | Tok::LBrace => depth += 1,
            Tok::RParen | Tok::RBrace => depth -= 1,
            _ => {
                if depth == 0 && pred(&t.tok) {
                    return Some(i);
                }
            }
        }
    }
    None
}

fn parse_axiom_tokens(toks: &[Token], checker: &mut KindChecker) -> Result<Axiom, ParseError> {
    let characteristic = match toks.first().map(|t| &t.tok) {
        Some(Tok::Transitive) => Some(CharacteristicKind::Transitive),
        Some(Tok::Symmetric) => Some(CharacteristicKind::Symmetric),
        Some(Tok::Asymmetric) => Some(CharacteristicKind::Asymmetric),
        Some(Tok::Reflexive) => Some(CharacteristicKind::Reflexive),
        Some(Tok::Irreflexive) => Some(CharacteristicKind::Irreflexive),
        _ => None,
    };
    if let Some(kind) = characteristic {
        let mut p = AxiomParser::new(toks, checker);
        p.pos = 1;
        p.expect(Tok::LParen, "'('")?;
        let role = p.parse_role()?;
        p.expect(Tok::RParen, "')'")?;
        p.expect_end()?;
        return Ok(Axiom::Characteristic(kind, role));
    }
    if toks.first().map(|t| &t.tok) == Some(&Tok::Disjoint) {
        let mut p = AxiomParser::new(toks, checker);
        p.pos = 1;
        p.expect(Tok::LParen, "'('")?;
        let r = p.parse_role()?;
        p.expect(Tok::Comma, "','")?;
        let s = p.parse_role()?;
        p.expect(Tok::RParen, "')'")?;
        p.expect_end()?;
        return Ok(Axiom::RoleDisjoint(r, s));
    }

    let op = find_top_level(toks, |t| {
        matches!(
            t,
            Tok::Colon
                | Tok::Eq
                | Tok::Neq
                | Tok::SubClassOf
                | Tok::EquivalentTo
                | Tok::SubRoleOf
                | Tok::EquivalentRole
        )
    });
    let Some(idx) = op else {
        let mut p = AxiomParser::new(toks, checker);
        p.pos = toks.len();
        return Err(p.syntax(
            "expected an axiom (':', '=', '!=', 'SubClassOf', 'EquivalentTo', \
             'SubRoleOf', 'EquivalentRole', 'Disjoint' or a role characteristic)",
        ));
    };

    match toks[idx].tok {
        Tok::Colon => {
            if idx == 1 && matches!(toks[0].tok, Tok::Name(_)) {
                // ind : concept
                let mut p = AxiomParser::new(toks, checker);
                let ind = p.expect_name(NameKind::Individual, "an individual name")?;
                p.pos += 1; // the colon
                let c = p.parse_concept()?;
                p.expect_end()?;
                Ok(Axiom::ConceptAssertion(c, ind))
            } else {
                // (a, b) : role
                let mut p = AxiomParser::new(toks, checker);
                p.expect(Tok::LParen, "'('")?;
                let a = p.expect_name(NameKind::Individual, "an individual name")?;
                p.expect(Tok::Comma, "','")?;
                let b = p.expect_name(NameKind::Individual, "an individual name")?;
                p.expect(Tok::RParen, "')'")?;
                p.expect(Tok::Colon, "':'")?;
                let role = p.parse_role()?;
                p.expect_end()?;
                Ok(Axiom::RoleAssertion(role, a, b))
            }
        }
        Tok::Eq | Tok::Neq => {
            let not_equal = toks[idx].tok == Tok::Neq;
            if idx != 1 {
                let t = &toks[idx];
                return Err(ParseError::new(
                    ParseErrorKind::Syntax,
                    t.line,
                    t.col,
                    "equality takes single individual names",
                ));
            }
            let mut p = AxiomParser::new(toks, checker);
            let a = p.expect_name(NameKind::Individual, "an individual name")?;
            p.pos += 1; // the operator
            let b = p.expect_name(NameKind::Individual, "an individual name")?;
            p.expect_end()?;
            Ok(if not_equal { Axiom::NotEqual(a, b) } else { Axiom::Equal(a, b) })
        }
        Tok::SubClassOf | Tok::EquivalentTo => {
            let equiv = toks[idx].tok == Tok::EquivalentTo;
            let after_op = (toks[idx].line, toks[idx].end);
            let lhs = {
                let mut lp = AxiomParser::with_fallback(&toks[..idx], checker, (toks[idx].line, toks[idx].col));
                let lhs = lp.parse_concept()?;
                lp.expect_end()?;
                lhs
            };
            let mut rp = AxiomParser::with_fallback(&toks[idx + 1..], checker, after_op);
            let rhs = rp.parse_concept()?;
            rp.expect_end()?;
            Ok(if equiv {
                Axiom::ConceptEquiv(lhs, rhs)
            } else {
                Axiom::ConceptIncl(lhs, rhs)
            })
        }
        Tok::EquivalentRole => {
            let after_op = (toks[idx].line, toks[idx].end);
            let lhs = {
                let mut lp = AxiomParser::with_fallback(&toks[..idx], checker, (toks[idx].line, toks[idx].col));
                let lhs = lp.parse_role()?;
                lp.expect_end()?;
                lhs
            };
            let mut rp = AxiomParser::with_fallback(&toks[idx + 1..], checker, after_op);
            let rhs = rp.parse_role()?;
            rp.expect_end()?;
            Ok(Axiom::RoleEquiv(lhs, rhs))
        }
        Tok::SubRoleOf => {
            let op_pos = (toks[idx].line, toks[idx].col);
            let after_op = (toks[idx].line, toks[idx].end);
            let lhs_toks = &toks[..idx];
            let rhs_toks = &toks[idx + 1..];
            let comp = find_top_level(lhs_toks, |t| *t == Tok::Comp);
            if let Some(q) = comp {
                let comp_pos = (lhs_toks[q].line, lhs_toks[q].col);
                let after_comp = (lhs_toks[q].line, lhs_toks[q].end);
                let r1 = {
                    let mut p1 = AxiomParser::with_fallback(&lhs_toks[..q], checker, comp_pos);
                    let r1 = p1.parse_role()?;
                    p1.expect_end()?;
                    r1
                };
                let r2 = {
                    let mut p2 = AxiomParser::with_fallback(&lhs_toks[q + 1..], checker, after_comp);
                    let r2 = p2.parse_role()?;
                    p2.expect_end()?;
                    r2
                };
                let mut ps = AxiomParser::with_fallback(rhs_toks, checker, after_op);
                let s = ps.parse_role()?;
                ps.expect_end()?;
                Ok(Axiom::ComplexRoleIncl(r1, r2, s))
            } else {
                let lhs = {
                    let mut lp = AxiomParser::with_fallback(lhs_toks, checker, op_pos);
                    let lhs = lp.parse_role()?;
                    lp.expect_end()?;
                    lhs
                };
                let mut rp = AxiomParser::with_fallback(rhs_toks, checker, after_op);
                let rhs = rp.parse_role()?;
                rp.expect_end()?;
                Ok(Axiom::RoleIncl(lhs, rhs))
            }
        }
        _ => unreachable!(),
    }
}

fn lex_axiom_lines(text: &str) -> Result<Vec<(u32, Vec<Token>)>, ParseError> {
    let mut lines = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = (i + 1) as u32;
        let toks = lex_line(line_no, raw.trim_end_matches('\r'))?;
        if !toks.is_empty() {
            lines.push((line_no, toks));
        }
    }
    Ok(lines)
}

/// Parses an ontology, additionally returning the 1-based source line of
/// each axiom (parallel to `Ontology::axioms`).
pub fn parse_ontology_spanned(text: &str) -> Result<(Ontology, Vec<u32>), ParseError> {
    let mut checker = KindChecker::new();
    let mut axioms = Vec::new();
    let mut lines = Vec::new();
    for (line_no, toks) in lex_axiom_lines(text)? {
        let axiom = parse_axiom_tokens(&toks, &mut checker)?;
        axioms.push(axiom);
        lines.push(line_no);
    }
    // Incremental kind checking guarantees this cannot fail.
    let ontology = build_ontology(axioms).expect("kind conflicts caught during parsing");
    Ok((ontology, lines))
}

/// Parses an ontology from its text format.
pub fn parse_ontology(text: &str) -> Result<Ontology, ParseError> {
    parse_ontology_spanned(text).map(|(o, _)| o)
}

/// Parses a single axiom. Names already present in `signature` must be used
/// with the same kind; new names get the kind their position implies.
pub fn parse_axiom(text: &str, signature: &Signature) -> Result<Axiom, ParseError> {
    let lines = lex_axiom_lines(text)?;
    match lines.as_slice() {
        [] => Err(ParseError::new(
            ParseErrorKind::Syntax,
            1,
            1,
            "expected an axiom, found no input",
        )),
        [(_, toks)] => {
            let mut checker = KindChecker::seeded(signature);
            parse_axiom_tokens(toks, &mut checker)
        }
        [_, (line, toks), ..] => Err(ParseError::new(
            ParseErrorKind::Syntax,
            *line,
            toks[0].col,
            "expected a single axiom, found more than one line",
        )),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Ctx {
    AxiomSide,
    OrLeft,
    OrRight,
    AndLeft,
    AndRight,
    UnaryBody,
    Standalone,
}

fn needs_parens(c: &ConceptExpr, ctx: Ctx) -> bool {
    match c {
        // Mixed and/or is always parenthesized; nesting on the right of the
        // same operator is parenthesized to keep left associativity visible.
        ConceptExpr::And(..) => matches!(
            ctx,
            Ctx::AxiomSide | Ctx::OrLeft | Ctx::OrRight | Ctx::AndRight | Ctx::UnaryBody
        ),
        ConceptExpr::Or(..) => matches!(
            ctx,
            Ctx::AxiomSide | Ctx::OrRight | Ctx::AndLeft | Ctx::AndRight | Ctx::UnaryBody
        ),
        _ => false,
    }
}

fn fmt_concept(c: &ConceptExpr, ctx: Ctx, out: &mut String) {
    if needs_parens(c, ctx) {
        out.push('(');
        fmt_concept(c, Ctx::Standalone, out);
        out.push(')');
        return;
    }
    match c {
        ConceptExpr::Named(n) => out.push_str(n),
        ConceptExpr::And(l, r) => {
            fmt_concept(l, Ctx::AndLeft, out);
            out.push_str(" and ");
            fmt_concept(r, Ctx::AndRight, out);
        }
        ConceptExpr::Or(l, r) => {
            fmt_concept(l, Ctx::OrLeft, out);
            out.push_str(" or ");
            fmt_concept(r, Ctx::OrRight, out);
        }
        ConceptExpr::Not(inner) => {
            out.push_str("not ");
            fmt_concept(inner, Ctx::UnaryBody, out);
        }
        ConceptExpr::Top => out.push_str("Top"),
        ConceptExpr::Bottom => out.push_str("Bottom"),
        ConceptExpr::Exists(role, f) => {
            out.push_str("exists ");
            out.push_str(&render_role(role));
            out.push('.');
            fmt_concept(f, Ctx::UnaryBody, out);
        }
        ConceptExpr::Forall(role, f) => {
            out.push_str("forall ");
            out.push_str(&render_role(role));
            out.push('.');
            fmt_concept(f, Ctx::UnaryBody, out);
        }
        ConceptExpr::AtLeast(n, role, f) => {
            out.push_str(&format!(">= {n} {}", render_role(role)));
            out.push('.');
            fmt_concept(f, Ctx::UnaryBody, out);
        }
        ConceptExpr::AtMost(n, role, f) => {
            out.push_str(&format!("<= {n} {}", render_role(role)));
            out.push('.');
            fmt_concept(f, Ctx::UnaryBody, out);
        }
        ConceptExpr::HasSelf(role) => {
            out.push_str(&format!("Self({})", render_role(role)));
        }
        ConceptExpr::Nominal(a) => {
            out.push('{');
            out.push_str(a);
            out.push('}');
        }
    }
}

/// Canonical text of a role expression.
pub fn render_role(r: &RoleExpr) -> String {
    match r {
        RoleExpr::Universal => "Universal".to_string(),
        RoleExpr::Named(n) => n.clone(),
        RoleExpr::Inverse(n) => format!("inv({n})"),
    }
}

/// Canonical text of a concept expression.
pub fn render_concept(c: &ConceptExpr) -> String {
    let mut out = String::new();
    fmt_concept(c, Ctx::Standalone, &mut out);
    out
}

fn fmt_axiom_side(c: &ConceptExpr) -> String {
    let mut out = String::new();
    fmt_concept(c, Ctx::AxiomSide, &mut out);
    out
}

/// Canonical text of a single axiom (no trailing newline).
pub fn render_axiom(a: &Axiom) -> String {
    match a {
        Axiom::ConceptAssertion(c, ind) => format!("{ind} : {}", fmt_axiom_side(c)),
        Axiom::RoleAssertion(r, a, b) => format!("({a}, {b}) : {}", render_role(r)),
        Axiom::Equal(a, b) => format!("{a} = {b}"),
        Axiom::NotEqual(a, b) => format!("{a} != {b}"),
        Axiom::ConceptIncl(l, r) => {
            format!("{} SubClassOf {}", fmt_axiom_side(l), fmt_axiom_side(r))
        }
        Axiom::ConceptEquiv(l, r) => {
            format!("{} EquivalentTo {}", fmt_axiom_side(l), fmt_axiom_side(r))
        }
        Axiom::RoleIncl(l, r) => format!("{} SubRoleOf {}", render_role(l), render_role(r)),
        Axiom::RoleEquiv(l, r) => format!("{} EquivalentRole {}", render_role(l), render_role(r)),
        Axiom::ComplexRoleIncl(r1, r2, s) => format!(
            "{} o {} SubRoleOf {}",
            render_role(r1),
            render_role(r2),
            render_role(s)
        ),
        Axiom::RoleDisjoint(r, s) => format!("Disjoint({}, {})", render_role(r), render_role(s)),
        Axiom::Characteristic(kind, r) => format!("{kind}({})", render_role(r)),
    }
}

/// Canonical text of an ontology: one axiom per line. The empty ontology
/// renders as the empty string; `parse_ontology(render(o))` is structurally
/// equal to `o` for ontologies built via `build_ontology`.
pub fn render(o: &Ontology) -> String {
    if o.axioms.is_empty() {
        return String::new();
    }
    let mut out = String::new();
    for ax in &o.axioms {
        out.push_str(&render_axiom(ax));
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ast::ConceptExpr as C;

    fn parse1(text: &str) -> Axiom {
        let o = parse_ontology(text).unwrap();
        assert_eq!(o.axioms.len(), 1);
        o.axioms.into_iter().next().unwrap()
    }

    #[test]
    fn parses_concept_inclusion() {
        assert_eq!(
            parse1("Mother SubClassOf Parent"),
            Axiom::ConceptIncl(C::named("Mother"), C::named("Parent"))
        );
    }

    #[test]
    fn parses_abox_assertions() {
        let o = parse_ontology("julia : Mother\n(julia, john) : parentOf\n").unwrap();
        assert_eq!(
            o.axioms,
            vec![
                Axiom::ConceptAssertion(C::named("Mother"), "julia".into()),
                Axiom::RoleAssertion(RoleExpr::named("parentOf"), "julia".into(), "john".into()),
            ]
        );
    }

    #[test]
    fn parses_equivalence_with_intersection() {
        assert_eq!(
            parse1("Mother EquivalentTo (Female and Parent)"),
            Axiom::ConceptEquiv(
                C::named("Mother"),
                C::and(C::named("Female"), C::named("Parent"))
            )
        );
    }

    #[test]
    fn parses_domain_restriction() {
        assert_eq!(
            parse1("exists sonOf.Top SubClassOf Male"),
            Axiom::ConceptIncl(
                C::exists(RoleExpr::named("sonOf"), C::Top),
                C::named("Male")
            )
        );
    }

    #[test]
    fn incomplete_negation_is_a_syntax_error() {
        let err = parse_ontology("A SubClassOf not not").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::Syntax);
    }

    #[test]
    fn parse_axiom_examples() {
        let sig = Signature::new();
        assert_eq!(
            parse_axiom("julia : Parent", &sig).unwrap(),
            Axiom::ConceptAssertion(C::named("Parent"), "julia".into())
        );
        assert_eq!(
            parse_axiom("julia = julia", &sig).unwrap(),
            Axiom::Equal("julia".into(), "julia".into())
        );
        assert_eq!(
            parse_axiom("(charles, john) : uncleOf", &sig).unwrap(),
            Axiom::RoleAssertion(RoleExpr::named("uncleOf"), "charles".into(), "john".into())
        );
    }

    #[test]
    fn parse_axiom_checks_signature_kinds() {
        let mut sig = Signature::new();
        sig.insert("Mother", NameKind::Concept).unwrap();
        let err = parse_axiom("(a, b) : Mother", &sig).unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NameKindConflict);
        assert_eq!(err.line, 1);
    }

    #[test]
    fn precedence_and_binds_tighter_than_or() {
        assert_eq!(
            parse1("A and B or CC SubClassOf Top"),
            Axiom::ConceptIncl(
                C::or(C::and(C::named("A"), C::named("B")), C::named("CC")),
                C::Top
            )
        );
    }

    #[test]
    fn precedence_not_binds_tighter_than_and() {
        assert_eq!(
            parse1("not A and B SubClassOf Top"),
            Axiom::ConceptIncl(C::and(C::not(C::named("A")), C::named("B")), C::Top)
        );
    }

    #[test]
    fn quantifier_binds_single_unary() {
        assert_eq!(
            parse1("exists r.A and B SubClassOf Top"),
            Axiom::ConceptIncl(
                C::and(C::exists(RoleExpr::named("r"), C::named("A")), C::named("B")),
                C::Top
            )
        );
    }

    #[test]
    fn renders_intersection_inclusion() {
        let ax = Axiom::ConceptIncl(C::and(C::named("Male"), C::named("Female")), C::Bottom);
        assert_eq!(render_axiom(&ax), "(Male and Female) SubClassOf Bottom");
    }

    #[test]
    fn renders_empty_ontology() {
        assert_eq!(render(&Ontology::default()), "");
        assert_eq!(parse_ontology("").unwrap(), Ontology::default());
    }

    #[test]
    fn renders_not_forall_without_parens() {
        let c = C::not(C::forall(RoleExpr::named("parentOf"), C::named("Female")));
        let rendered = render_concept(&c);
        assert_eq!(rendered, "not forall parentOf.Female");
        // Confirm by parsing it back inside an axiom.
        let ax = parse1(&format!("X SubClassOf {rendered}"));
        assert_eq!(ax, Axiom::ConceptIncl(C::named("X"), c));
    }

    #[test]
    fn parses_rbox_forms() {
        assert_eq!(
            parse1("brotherOf o parentOf SubRoleOf uncleOf"),
            Axiom::ComplexRoleIncl(
                RoleExpr::named("brotherOf"),
                RoleExpr::named("parentOf"),
                RoleExpr::named("uncleOf")
            )
        );
        assert_eq!(
            parse1("Disjoint(parentOf, childOf)"),
            Axiom::RoleDisjoint(RoleExpr::named("parentOf"), RoleExpr::named("childOf"))
        );
        assert_eq!(
            parse1("Transitive(ancestorOf)"),
            Axiom::Characteristic(CharacteristicKind::Transitive, RoleExpr::named("ancestorOf"))
        );
        assert_eq!(
            parse1("parentOf EquivalentRole inv(childOf)"),
            Axiom::RoleEquiv(RoleExpr::named("parentOf"), RoleExpr::inverse_of("childOf"))
        );
    }

    #[test]
    fn parses_number_restrictions_and_nominals() {
        assert_eq!(
            parse1("Person SubClassOf >= 2 childOf.Parent and <= 2 childOf.Parent"),
            Axiom::ConceptIncl(
                C::named("Person"),
                C::and(
                    C::at_least(2, RoleExpr::named("childOf"), C::named("Parent")),
                    C::at_most(2, RoleExpr::named("childOf"), C::named("Parent"))
                )
            )
        );
        assert_eq!(
            parse1("Beatle EquivalentTo ({john} or {paul})"),
            Axiom::ConceptEquiv(
                C::named("Beatle"),
                C::or(C::nominal("john"), C::nominal("paul"))
            )
        );
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let o = parse_ontology("# a comment\n\nA SubClassOf B # trailing\n").unwrap();
        assert_eq!(o.axioms.len(), 1);
    }

    #[test]
    fn kind_conflict_reports_position() {
        let err = parse_ontology("julia : Mother\n(a, b) : Mother\n").unwrap_err();
        assert_eq!(err.kind, ParseErrorKind::NameKindConflict);
        assert_eq!(err.line, 2);
        assert_eq!(err.column, 10);
    }

    #[test]
    fn spanned_parse_reports_axiom_lines() {
        let (o, lines) = parse_ontology_spanned("# c\nA SubClassOf B\n\nB SubClassOf CC\n").unwrap();
        assert_eq!(o.axioms.len(), 2);
        assert_eq!(lines, vec![2, 4]);
    }

    #[test]
    fn render_parse_round_trip_spot_checks() {
        let texts = [
            "julia : Mother\n",
            "(julia, john) : parentOf\n",
            "julia != john\n",
            "john = johnny\n",
            "Mother EquivalentTo (Female and Parent)\n",
            "(Male and Female) SubClassOf Bottom\n",
            "Top SubClassOf (Male or Female)\n",
            "Parent EquivalentTo exists parentOf.Top\n",
            "Top SubClassOf forall sonOf.Parent\n",
            "X SubClassOf not exists parentOf.not Female\n",
            "NarcissistA EquivalentTo Self(talksTo)\n",
            "parentOf SubRoleOf ancestorOf\n",
            "brotherOf o parentOf SubRoleOf uncleOf\n",
            "Disjoint(parentOf, childOf)\n",
            "Irreflexive(marriedTo)\n",
            "A SubClassOf >= 0 r.Top\n",
            "B SubClassOf exists Universal.{a}\n",
        ];
        for text in texts {
            let o = parse_ontology(text).unwrap();
            assert_eq!(render(&o), *text, "canonical form differs");
            assert_eq!(parse_ontology(&render(&o)).unwrap(), o);
        }
    }
}
