//! Line-oriented model files.
//!
//! ```text
//! # comment
//! <header>
//! key: value ...
//! flag
//! ```
//!
//! The header selects the model kind (`kripke`, `nwf`, `paratopo`). Every key
//! and flag may appear at most once; identifiers are whitespace separated.

use std::collections::{BTreeMap, HashMap};

use thiserror::Error;

use crate::formula::is_atom_name;
use crate::hyperset::HypersetModel;
use crate::kripke::KripkeModel;
use crate::paratopo::ParaTopoModel;
use crate::set::{StateSet, MAX_STATES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    /// Malformed line.
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    /// A key or flag given twice.
    #[error("line {line}: duplicate declaration `{key}`")]
    Duplicate { line: usize, key: String },
    /// Required key absent.
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
    #[error("expected header `{expected}`, found `{found}`")]
    Header { expected: String, found: String },
    #[error("unknown state `{0}`")]
    UnknownState(String),
    #[error("state `{0}` declared twice")]
    DuplicateState(String),
    #[error("`{0}` is not a valid state name")]
    BadStateName(String),
    #[error("{0} states exceed the limit of {MAX_STATES}")]
    TooLarge(usize),
    /// Reserved words (`D`, `Ua`, ...) and malformed identifiers cannot be atoms.
    #[error("`{0}` cannot be used as an atom name")]
    BadAtomName(String),
    /// The declarations parse but violate a structural invariant.
    #[error("invalid model: {0}")]
    Invalid(String),
}

#[derive(Debug)]
pub(crate) struct Decl<'a> {
    pub line: usize,
    pub key: String,
    pub value: Option<&'a str>,
}

/// Splits a model file into its header and declarations.
pub(crate) fn split<'a>(text: &'a str, header: &str) -> Result<Vec<Decl<'a>>, ModelError> {
    let mut lines = text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("").trim();
        (!body.is_empty()).then_some((i + 1, body))
    });
    match lines.next() {
        Some((_, h)) if h == header => {}
        Some((_, h)) => {
            return Err(ModelError::Header {
                expected: header.to_string(),
                found: h.to_string(),
            })
        }
        None => {
            return Err(ModelError::Header {
                expected: header.to_string(),
                found: String::new(),
            })
        }
    }
    let mut decls: Vec<Decl<'a>> = Vec::new();
    for (line, body) in lines {
        let (key, value) = match body.split_once(':') {
            Some((k, v)) => (k, Some(v.trim())),
            None => (body, None),
        };
        let key = key.split_whitespace().collect::<Vec<_>>().join(" ");
        if key.is_empty() {
            return Err(ModelError::Syntax {
                line,
                message: "declaration without a key".into(),
            });
        }
        if decls.iter().any(|d| d.key == key) {
            return Err(ModelError::Duplicate { line, key });
        }
        decls.push(Decl { line, key, value });
    }
    Ok(decls)
}

/// Header of a model file, i.e. its first non-comment line.
pub fn header(text: &str) -> Option<&str> {
    text.lines()
        .map(|raw| raw.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
}

/// Ordered state names with lookup.
#[derive(Debug, Clone, Default)]
pub(crate) struct Names {
    pub names: Vec<String>,
    index: HashMap<String, usize>,
}

impl Names {
    pub fn new(list: &str) -> Result<Self, ModelError> {
        let mut names = Names::default();
        for name in list.split_whitespace() {
            names.push(name)?;
        }
        Ok(names)
    }

    pub fn push(&mut self, name: &str) -> Result<usize, ModelError> {
        if !valid_state_name(name) {
            return Err(ModelError::BadStateName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(ModelError::DuplicateState(name.to_string()));
        }
        if self.names.len() == MAX_STATES {
            return Err(ModelError::TooLarge(self.names.len() + 1));
        }
        self.index.insert(name.to_string(), self.names.len());
        self.names.push(name.to_string());
        Ok(self.names.len() - 1)
    }

    pub fn get(&self, name: &str) -> Result<usize, ModelError> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| ModelError::UnknownState(name.to_string()))
    }

    pub fn set(&self, list: &str) -> Result<StateSet, ModelError> {
        list.split_whitespace().map(|n| self.get(n)).collect()
    }
}

fn valid_state_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'' || c == '.')
}

/// Parses `w->v x->y` into index pairs.
pub(crate) fn edges(
    names: &Names,
    value: &str,
    line: usize,
) -> Result<Vec<(usize, usize)>, ModelError> {
    value
        .split_whitespace()
        .map(|tok| {
            let (a, b) = tok.split_once("->").ok_or_else(|| ModelError::Syntax {
                line,
                message: format!("expected `from->to`, found `{tok}`"),
            })?;
            Ok((names.get(a)?, names.get(b)?))
        })
        .collect()
}

/// Parses `{} {a} {a b}` into raw name groups.
pub(crate) fn braced_groups(value: &str, line: usize) -> Result<Vec<Vec<&str>>, ModelError> {
    let mut out = Vec::new();
    let mut rest = value.trim_start();
    while !rest.is_empty() {
        let Some(body) = rest.strip_prefix('{') else {
            return Err(ModelError::Syntax {
                line,
                message: format!("expected `{{`, found `{rest}`"),
            });
        };
        let close = body.find('}').ok_or_else(|| ModelError::Syntax {
            line,
            message: "unterminated `{`".into(),
        })?;
        out.push(body[..close].split_whitespace().collect());
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

/// Parses `a1->{b1} a2->{b1 b2}` into raw `(source, targets)` pairs.
pub(crate) fn images(value: &str, line: usize) -> Result<Vec<(&str, Vec<&str>)>, ModelError> {
    let mut out = Vec::new();
    let mut rest = value.trim_start();
    let err = |message: String| ModelError::Syntax { line, message };
    while !rest.is_empty() {
        let arrow = rest
            .find("->")
            .ok_or_else(|| err(format!("expected `state->{{...}}`, found `{rest}`")))?;
        let source = rest[..arrow].trim();
        if source.is_empty() || source.contains(char::is_whitespace) {
            return Err(err(format!("malformed image source `{source}`")));
        }
        let after = rest[arrow + 2..].trim_start();
        let body = after
            .strip_prefix('{')
            .ok_or_else(|| err(format!("expected `{{` after `{source}->`")))?;
        let close = body
            .find('}')
            .ok_or_else(|| err("unterminated `{`".into()))?;
        out.push((source, body[..close].split_whitespace().collect()));
        rest = body[close + 1..].trim_start();
    }
    Ok(out)
}

/// Parses a `val <atom>` key into the atom name.
pub(crate) fn val_key(key: &str) -> Option<Result<String, ModelError>> {
    let atom = key.strip_prefix("val ")?.trim();
    Some(if is_atom_name(atom) {
        Ok(atom.to_string())
    } else {
        Err(ModelError::BadAtomName(atom.to_string()))
    })
}

pub(crate) fn required<'a>(
    value: Option<&'a str>,
    line: usize,
    key: &str,
) -> Result<&'a str, ModelError> {
    value.ok_or_else(|| ModelError::Syntax {
        line,
        message: format!("`{key}` needs a value"),
    })
}

pub(crate) fn unknown_key(d: &Decl<'_>) -> ModelError {
    ModelError::Syntax {
        line: d.line,
        message: format!("unknown declaration `{}`", d.key),
    }
}

pub(crate) fn write_set(out: &mut String, key: &str, set: StateSet, names: &[String]) {
    out.push_str(key);
    out.push(':');
    for i in set {
        out.push(' ');
        out.push_str(&names[i]);
    }
    out.push('\n');
}

pub(crate) fn write_vals(out: &mut String, val: &BTreeMap<String, StateSet>, names: &[String]) {
    for (atom, set) in val {
        write_set(out, &format!("val {atom}"), *set, names);
    }
}

/// Any model file, dispatched on its header.
#[derive(Debug, Clone)]
pub enum AnyModel {
    Kripke(KripkeModel),
    Nwf(HypersetModel),
    ParaTopo(ParaTopoModel),
}

impl AnyModel {
    pub fn parse(text: &str) -> Result<Self, ModelError> {
        match header(text) {
            Some("kripke") => Ok(AnyModel::Kripke(KripkeModel::parse(text)?)),
            Some("nwf") => Ok(AnyModel::Nwf(HypersetModel::parse(text)?)),
            Some("paratopo") => Ok(AnyModel::ParaTopo(ParaTopoModel::parse(text)?)),
            other => Err(ModelError::Header {
                expected: "kripke, nwf or paratopo".into(),
                found: other.unwrap_or("").to_string(),
            }),
        }
    }
}
