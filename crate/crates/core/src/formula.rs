//! Formula syntax shared by every evaluator.
//!
//! One AST covers both modal languages: the relational language (belief `[ij]`,
//! assumption `Hij`, and `<ij>` over a Kripke frame or a membership graph) and
//! the topological language (belief `Bi`, assumption `Xi`, `Ei`, and the
//! closure-of-complement negation `~`). Each evaluator rejects the connectives
//! that belong to the other language, see [`Formula::check_language`].
//!
//! Concrete syntax, loosest binding first:
//!
//! ```text
//! formula := imp ( "<->" formula )?
//! imp     := or ( "->" imp )?
//! or      := and ( "|" and )*
//! and     := unary ( "&" unary )*
//! unary   := ( "!" | "~" | modality ) unary | "(" formula ")" | constant | atom
//! ```

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Direction of a relational modality: `Ab` is player a looking at player b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dir {
    Ab,
    Ba,
}

impl Dir {
    pub const ALL: [Dir; 2] = [Dir::Ab, Dir::Ba];

    /// The player whose state carries the modality.
    pub fn source(self) -> Agent {
        match self {
            Dir::Ab => Agent::A,
            Dir::Ba => Agent::B,
        }
    }

    /// The player whose states are looked at.
    pub fn target(self) -> Agent {
        self.source().other()
    }
}

impl fmt::Display for Dir {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Dir::Ab => "ab",
            Dir::Ba => "ba",
        })
    }
}

/// Owner of a topological modality.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Agent {
    A,
    B,
}

impl Agent {
    pub const ALL: [Agent; 2] = [Agent::A, Agent::B];

    pub fn other(self) -> Agent {
        match self {
            Agent::A => Agent::B,
            Agent::B => Agent::A,
        }
    }

    /// The relational direction from this player to the other one.
    pub fn dir(self) -> Dir {
        match self {
            Agent::A => Dir::Ab,
            Agent::B => Dir::Ba,
        }
    }
}

impl fmt::Display for Agent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Agent::A => "a",
            Agent::B => "b",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom(String),
    Top,
    Bot,
    /// Holds exactly at player a's states.
    Ua,
    /// Holds exactly at player b's states.
    Ub,
    /// Diagonal set of a Kripke frame (`D`).
    Dclass,
    /// Diagonal set of a membership graph (`D+`).
    Dplus,
    /// Diagonal set of a topological belief model (`Dt`).
    Dtopo,
    /// Classical negation `!`.
    Not(Box<Formula>),
    /// Paraconsistent negation `~`: closure of the complement.
    Pneg(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// Relational belief `[ij]`.
    Box(Dir, Box<Formula>),
    /// Relational assumption `Hij`.
    Heart(Dir, Box<Formula>),
    /// Relational possibility `<ij>`.
    Diamond(Dir, Box<Formula>),
    /// Topological belief `Ba` / `Bb`.
    TBel(Agent, Box<Formula>),
    /// Topological assumption `Xa` / `Xb`.
    TAsm(Agent, Box<Formula>),
    /// Topological possibility `Ea` / `Eb`.
    TDia(Agent, Box<Formula>),
}

/// The two modal languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Language {
    /// Kripke frames and membership graphs.
    Relational,
    /// Paraconsistent closed-set topological belief models.
    Topological,
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Language::Relational => f.write_str("relational"),
            Language::Topological => f.write_str("topological"),
        }
    }
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn pneg(f: Formula) -> Self {
        Formula::Pneg(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Self {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Self {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn imp(l: Formula, r: Formula) -> Self {
        Formula::Imp(Box::new(l), Box::new(r))
    }

    pub fn iff(l: Formula, r: Formula) -> Self {
        Formula::Iff(Box::new(l), Box::new(r))
    }

    pub fn boxed(dir: Dir, f: Formula) -> Self {
        Formula::Box(dir, Box::new(f))
    }

    pub fn heart(dir: Dir, f: Formula) -> Self {
        Formula::Heart(dir, Box::new(f))
    }

    pub fn diamond(dir: Dir, f: Formula) -> Self {
        Formula::Diamond(dir, Box::new(f))
    }

    pub fn tbel(agent: Agent, f: Formula) -> Self {
        Formula::TBel(agent, Box::new(f))
    }

    pub fn tasm(agent: Agent, f: Formula) -> Self {
        Formula::TAsm(agent, Box::new(f))
    }

    pub fn tdia(agent: Agent, f: Formula) -> Self {
        Formula::TDia(agent, Box::new(f))
    }

    /// Nesting depth of modal constructors.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_)
            | Formula::Top
            | Formula::Bot
            | Formula::Ua
            | Formula::Ub
            | Formula::Dclass
            | Formula::Dplus
            | Formula::Dtopo => 0,
            Formula::Not(f) | Formula::Pneg(f) => f.modal_depth(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
                l.modal_depth().max(r.modal_depth())
            }
            Formula::Box(_, f)
            | Formula::Heart(_, f)
            | Formula::Diamond(_, f)
            | Formula::TBel(_, f)
            | Formula::TAsm(_, f)
            | Formula::TDia(_, f) => 1 + f.modal_depth(),
        }
    }

    /// Names of the user atoms occurring in the formula.
    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(name) => {
                out.insert(name.as_str());
            }
            Formula::Top
            | Formula::Bot
            | Formula::Ua
            | Formula::Ub
            | Formula::Dclass
            | Formula::Dplus
            | Formula::Dtopo => {}
            Formula::Not(f)
            | Formula::Pneg(f)
            | Formula::Box(_, f)
            | Formula::Heart(_, f)
            | Formula::Diamond(_, f)
            | Formula::TBel(_, f)
            | Formula::TAsm(_, f)
            | Formula::TDia(_, f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// Returns the first sub-formula that does not belong to `lang`.
    pub fn foreign_connective(&self, lang: Language) -> Option<&Formula> {
        let foreign = matches!(
            (lang, self),
            (
                Language::Relational,
                Formula::Pneg(_)
                    | Formula::TBel(..)
                    | Formula::TAsm(..)
                    | Formula::TDia(..)
                    | Formula::Dtopo,
            ) | (
                Language::Topological,
                Formula::Box(..)
                    | Formula::Heart(..)
                    | Formula::Diamond(..)
                    | Formula::Dclass
                    | Formula::Dplus,
            )
        );
        if foreign {
            return Some(self);
        }
        match self {
            Formula::Not(f)
            | Formula::Pneg(f)
            | Formula::Box(_, f)
            | Formula::Heart(_, f)
            | Formula::Diamond(_, f)
            | Formula::TBel(_, f)
            | Formula::TAsm(_, f)
            | Formula::TDia(_, f) => f.foreign_connective(lang),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Imp(l, r) | Formula::Iff(l, r) => l
                .foreign_connective(lang)
                .or_else(|| r.foreign_connective(lang)),
            _ => None,
        }
    }

    /// Checks that every connective of the formula belongs to `lang`.
    pub fn check_language(&self, lang: Language) -> Result<(), LanguageError> {
        match self.foreign_connective(lang) {
            None => Ok(()),
            Some(f) => Err(LanguageError {
                language: lang,
                connective: f.head_name(),
            }),
        }
    }

    fn head_name(&self) -> &'static str {
        match self {
            Formula::Atom(_) => "atom",
            Formula::Top => "true",
            Formula::Bot => "false",
            Formula::Ua => "Ua",
            Formula::Ub => "Ub",
            Formula::Dclass => "D",
            Formula::Dplus => "D+",
            Formula::Dtopo => "Dt",
            Formula::Not(_) => "!",
            Formula::Pneg(_) => "~",
            Formula::And(..) => "&",
            Formula::Or(..) => "|",
            Formula::Imp(..) => "->",
            Formula::Iff(..) => "<->",
            Formula::Box(Dir::Ab, _) => "[ab]",
            Formula::Box(Dir::Ba, _) => "[ba]",
            Formula::Heart(Dir::Ab, _) => "Hab",
            Formula::Heart(Dir::Ba, _) => "Hba",
            Formula::Diamond(Dir::Ab, _) => "<ab>",
            Formula::Diamond(Dir::Ba, _) => "<ba>",
            Formula::TBel(Agent::A, _) => "Ba",
            Formula::TBel(Agent::B, _) => "Bb",
            Formula::TAsm(Agent::A, _) => "Xa",
            Formula::TAsm(Agent::B, _) => "Xb",
            Formula::TDia(Agent::A, _) => "Ea",
            Formula::TDia(Agent::B, _) => "Eb",
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Imp(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            _ => 5,
        }
    }

    fn write_prec(&self, out: &mut String, min: u8) {
        let parens = self.precedence() < min;
        if parens {
            out.push('(');
        }
        match self {
            Formula::Atom(name) => out.push_str(name),
            Formula::Not(f) => {
                out.push('!');
                f.write_prec(out, 5);
            }
            Formula::Pneg(f) => {
                out.push('~');
                f.write_prec(out, 5);
            }
            Formula::And(l, r) => write_binary(out, l, " & ", r, 4, 5),
            Formula::Or(l, r) => write_binary(out, l, " | ", r, 3, 4),
            Formula::Imp(l, r) => write_binary(out, l, " -> ", r, 3, 2),
            Formula::Iff(l, r) => write_binary(out, l, " <-> ", r, 2, 1),
            Formula::Box(_, f)
            | Formula::Heart(_, f)
            | Formula::Diamond(_, f)
            | Formula::TBel(_, f)
            | Formula::TAsm(_, f)
            | Formula::TDia(_, f) => {
                out.push_str(self.head_name());
                out.push(' ');
                f.write_prec(out, 5);
            }
            constant => out.push_str(constant.head_name()),
        }
        if parens {
            out.push(')');
        }
    }
}

fn write_binary(out: &mut String, l: &Formula, op: &str, r: &Formula, lmin: u8, rmin: u8) {
    l.write_prec(out, lmin);
    out.push_str(op);
    r.write_prec(out, rmin);
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        self.write_prec(&mut out, 1);
        f.write_str(&out)
    }
}

/// Renders a formula in the concrete syntax accepted by [`parse`].
pub fn print(f: &Formula) -> String {
    f.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("connective `{connective}` is not part of the {language} language")]
pub struct LanguageError {
    pub language: Language,
    pub connective: &'static str,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("syntax error at byte {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError {
            position,
            message: message.into(),
        }
    }
}

/// Names that can never be user atoms, neither in formulas nor in model files.
pub const RESERVED: &[&str] = &[
    "true", "false", "Ua", "Ub", "D", "D+", "Dt", "Hab", "Hba", "Ba", "Bb", "Xa", "Xb", "Ea", "Eb",
];

pub fn is_reserved(name: &str) -> bool {
    RESERVED.contains(&name)
}

/// True when `name` is usable as a user atom.
pub fn is_atom_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'') && !is_reserved(name)
}

#[derive(Debug, Clone)]
enum Tok {
    Ident(String),
    Const(Formula),
    Not,
    Pneg,
    And,
    Or,
    Imp,
    Iff,
    LParen,
    RParen,
    Prefix(fn(Box<Formula>) -> Formula, &'static str),
}

fn prefix_for(word: &str) -> Option<Tok> {
    let tok = match word {
        "Hab" => Tok::Prefix(|f| Formula::Heart(Dir::Ab, f), "Hab"),
        "Hba" => Tok::Prefix(|f| Formula::Heart(Dir::Ba, f), "Hba"),
        "Ba" => Tok::Prefix(|f| Formula::TBel(Agent::A, f), "Ba"),
        "Bb" => Tok::Prefix(|f| Formula::TBel(Agent::B, f), "Bb"),
        "Xa" => Tok::Prefix(|f| Formula::TAsm(Agent::A, f), "Xa"),
        "Xb" => Tok::Prefix(|f| Formula::TAsm(Agent::B, f), "Xb"),
        "Ea" => Tok::Prefix(|f| Formula::TDia(Agent::A, f), "Ea"),
        "Eb" => Tok::Prefix(|f| Formula::TDia(Agent::B, f), "Eb"),
        _ => return None,
    };
    Some(tok)
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let rest = &text[i..];
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'(' => {
                toks.push((start, Tok::LParen));
                i += 1;
            }
            b')' => {
                toks.push((start, Tok::RParen));
                i += 1;
            }
            b'!' => {
                toks.push((start, Tok::Not));
                i += 1;
            }
            b'~' => {
                toks.push((start, Tok::Pneg));
                i += 1;
            }
            b'&' => {
                toks.push((start, Tok::And));
                i += 1;
            }
            b'|' => {
                toks.push((start, Tok::Or));
                i += 1;
            }
            b'-' if rest.starts_with("->") => {
                toks.push((start, Tok::Imp));
                i += 2;
            }
            b'<' if rest.starts_with("<->") => {
                toks.push((start, Tok::Iff));
                i += 3;
            }
            b'<' if rest.starts_with("<ab>") => {
                toks.push((start, Tok::Prefix(|f| Formula::Diamond(Dir::Ab, f), "<ab>")));
                i += 4;
            }
            b'<' if rest.starts_with("<ba>") => {
                toks.push((start, Tok::Prefix(|f| Formula::Diamond(Dir::Ba, f), "<ba>")));
                i += 4;
            }
            b'[' if rest.starts_with("[ab]") => {
                toks.push((start, Tok::Prefix(|f| Formula::Box(Dir::Ab, f), "[ab]")));
                i += 4;
            }
            b'[' if rest.starts_with("[ba]") => {
                toks.push((start, Tok::Prefix(|f| Formula::Box(Dir::Ba, f), "[ba]")));
                i += 4;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len()
                    && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_' || bytes[i] == b'\'')
                {
                    i += 1;
                }
                let word = &text[start..i];
                let tok = match word {
                    "true" => Tok::Const(Formula::Top),
                    "false" => Tok::Const(Formula::Bot),
                    "Ua" => Tok::Const(Formula::Ua),
                    "Ub" => Tok::Const(Formula::Ub),
                    "Dt" => Tok::Const(Formula::Dtopo),
                    "D" if bytes.get(i) == Some(&b'+') => {
                        i += 1;
                        Tok::Const(Formula::Dplus)
                    }
                    "D" => Tok::Const(Formula::Dclass),
                    _ => match prefix_for(word) {
                        Some(tok) => tok,
                        None => Tok::Ident(word.to_string()),
                    },
                };
                toks.push((start, tok));
            }
            _ => {
                let ch = rest.chars().next().unwrap_or('?');
                return Err(ParseError::new(
                    start,
                    format!("unexpected character `{ch}`"),
                ));
            }
        }
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, tok: &Tok) -> bool {
        if self
            .peek()
            .is_some_and(|t| std::mem::discriminant(t) == std::mem::discriminant(tok))
        {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp()?;
        if self.eat(&Tok::Iff) {
            let rhs = self.formula()?;
            return Ok(Formula::iff(lhs, rhs));
        }
        Ok(lhs)
    }

    fn imp(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or()?;
        if self.eat(&Tok::Imp) {
            let rhs = self.imp()?;
            return Ok(Formula::imp(lhs, rhs));
        }
        Ok(lhs)
    }

    fn or(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and()?;
        while self.eat(&Tok::Or) {
            let rhs = self.and()?;
            lhs = Formula::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while self.eat(&Tok::And) {
            let rhs = self.unary()?;
            lhs = Formula::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        let at = self.offset();
        let Some((_, tok)) = self.toks.get(self.pos).cloned() else {
            return Err(ParseError::new(
                at,
                "expected a formula, found end of input",
            ));
        };
        self.pos += 1;
        match tok {
            Tok::Not => Ok(Formula::not(self.operand("!")?)),
            Tok::Pneg => Ok(Formula::pneg(self.operand("~")?)),
            Tok::Prefix(build, name) => Ok(build(Box::new(self.operand(name)?))),
            Tok::Const(f) => Ok(f),
            Tok::Ident(name) => Ok(Formula::Atom(name)),
            Tok::LParen => {
                let inner = self.formula()?;
                if !self.eat(&Tok::RParen) {
                    return Err(ParseError::new(self.offset(), "expected `)`"));
                }
                Ok(inner)
            }
            Tok::RParen => Err(ParseError::new(at, "unexpected `)`")),
            Tok::And | Tok::Or | Tok::Imp | Tok::Iff => Err(ParseError::new(
                at,
                "expected a formula, found a binary connective",
            )),
        }
    }

    fn operand(&mut self, op: &str) -> Result<Formula, ParseError> {
        if self.peek().is_none() {
            return Err(ParseError::new(
                self.offset(),
                format!("operator `{op}` needs an operand"),
            ));
        }
        self.unary()
    }
}

/// Parses a formula from its concrete syntax.
pub fn parse(text: &str) -> Result<Formula, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(ParseError::new(0, "empty formula"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
    };
    let f = p.formula()?;
    if p.pos != p.toks.len() {
        return Err(ParseError::new(p.offset(), "unexpected trailing input"));
    }
    Ok(f)
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Formula {
        parse(s).unwrap_or_else(|e| panic!("{s}: {e}"))
    }

    #[test]
    fn parses_big_hole_formula() {
        let expected = Formula::boxed(
            Dir::Ab,
            Formula::heart(Dir::Ba, Formula::and(Formula::Ua, Formula::Dclass)),
        );
        assert_eq!(p("[ab] Hba (Ua & D)"), expected);
    }

    #[test]
    fn parses_constants() {
        assert_eq!(p("true"), Formula::Top);
        assert_eq!(p("false"), Formula::Bot);
        assert_eq!(p("D+"), Formula::Dplus);
        assert_eq!(p("Dt"), Formula::Dtopo);
    }

    #[test]
    fn parses_topological_bk_sentence() {
        let expected = Formula::and(
            Formula::tbel(Agent::A, Formula::tasm(Agent::B, Formula::Dtopo)),
            Formula::tdia(Agent::A, Formula::Top),
        );
        assert_eq!(p("Ba Xb Dt & Ea true"), expected);
    }

    #[test]
    fn precedence_and_associativity() {
        let (a, b, c) = (Formula::atom("a"), Formula::atom("b"), Formula::atom("c"));
        assert_eq!(
            p("a | b & c"),
            Formula::or(a.clone(), Formula::and(b.clone(), c.clone()))
        );
        assert_eq!(
            p("a -> b -> c"),
            Formula::imp(a.clone(), Formula::imp(b.clone(), c.clone()))
        );
        assert_eq!(
            p("a & b & c"),
            Formula::and(Formula::and(a.clone(), b.clone()), c.clone())
        );
        assert_eq!(
            p("a <-> b -> c"),
            Formula::iff(a.clone(), Formula::imp(b.clone(), c.clone()))
        );
        assert_eq!(p("!a & b"), Formula::and(Formula::not(a), b));
        assert_eq!(p("<ab> Ub"), Formula::diamond(Dir::Ab, Formula::Ub));
    }

    #[test]
    fn prints_directly() {
        assert_eq!(print(&Formula::boxed(Dir::Ab, Formula::Ua)), "[ab] Ua");
        assert_eq!(print(&Formula::and(Formula::Ua, Formula::Dclass)), "Ua & D");
        let nested = Formula::and(
            Formula::atom("a"),
            Formula::and(Formula::atom("b"), Formula::Top),
        );
        assert_eq!(print(&nested), "a & (b & true)");
        assert_eq!(
            print(&Formula::not(Formula::or(Formula::Ua, Formula::Ub))),
            "!(Ua | Ub)"
        );
    }

    #[test]
    fn modal_depth_counts_nesting() {
        assert_eq!(Formula::Ua.modal_depth(), 0);
        assert_eq!(p("[ab] Hba Ua").modal_depth(), 2);
        assert_eq!(p("[ab] [ba] [ab] Hba Ua").modal_depth(), 4);
        assert_eq!(p("[ab] [ba] [ab] Hba Ua -> D").modal_depth(), 4);
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse("Ua & ").unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse("Ua $ Ub").unwrap_err();
        assert_eq!(e.position, 3);
        let e = parse("(Ua").unwrap_err();
        assert_eq!(e.position, 3);
        assert!(parse("").is_err());
        assert!(parse("Ua Ub").is_err());
    }

    #[test]
    fn modality_without_operand_is_rejected() {
        let e = parse("Hab").unwrap_err();
        assert!(e.message.contains("Hab"), "{e}");
        assert!(parse("[ab]").is_err());
        assert!(parse("[ac] Ua").is_err());
    }

    #[test]
    fn language_separation() {
        assert!(p("Ba Dt").check_language(Language::Relational).is_err());
        assert!(p("~p").check_language(Language::Relational).is_err());
        assert!(p("[ab] D").check_language(Language::Topological).is_err());
        assert!(p("D+").check_language(Language::Topological).is_err());
        assert!(p("Hab Ua & D+")
            .check_language(Language::Relational)
            .is_ok());
        assert!(p("Xa ~Dt & Eb true")
            .check_language(Language::Topological)
            .is_ok());
    }

    #[test]
    fn reserved_names() {
        assert!(!is_atom_name("D"));
        assert!(!is_atom_name("Hab"));
        assert!(!is_atom_name("1x"));
        assert!(is_atom_name("p"));
        assert!(is_atom_name("Dx"));
    }
}
