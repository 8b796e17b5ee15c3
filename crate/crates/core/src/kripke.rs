//! Interactive belief frames `(W, P, Ua, Ub)` with a valuation.

use std::collections::BTreeMap;
use std::fmt;

use crate::eval::{relational_diagonal, EvalError, HeartRange, RelationalSemantics};
use crate::formula::{Agent, Formula};
use crate::holes::{self, HoleReport, LemmaReport};
use crate::modelfile::{self, ModelError, Names};
use crate::set::{StateSet, MAX_STATES};

/// Range of the assumption biconditional in a frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum HeartScope {
    /// `x |= Hab phi` iff `x` in Ua and for every `y` in W:
    /// `(P(x,y) and y in Ub) <-> y |= phi`.
    #[default]
    Frame,
    /// Belief-model reading: the biconditional ranges over Ub only.
    Local,
}

impl fmt::Display for HeartScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeartScope::Frame => "heart-frame",
            HeartScope::Local => "heart-local",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KripkeModel {
    names: Vec<String>,
    succ: Vec<StateSet>,
    ua: StateSet,
    ub: StateSet,
    val: BTreeMap<String, StateSet>,
    strict: bool,
}

impl KripkeModel {
    /// Builds and validates a frame over `names.len()` states.
    ///
    /// `succ[x]` is the set of `P`-successors of `x`. With `strict` every edge
    /// must cross between the two players.
    pub fn new(
        names: Vec<String>,
        succ: Vec<StateSet>,
        ua: StateSet,
        ub: StateSet,
        val: BTreeMap<String, StateSet>,
        strict: bool,
    ) -> Result<Self, ModelError> {
        let n = names.len();
        if n > MAX_STATES {
            return Err(ModelError::TooLarge(n));
        }
        if succ.len() != n {
            return Err(ModelError::Invalid(format!(
                "{} successor sets for {n} states",
                succ.len()
            )));
        }
        let all = StateSet::full(n);
        if !ua.is_disjoint(ub) || ua | ub != all {
            return Err(ModelError::Invalid(
                "Ua and Ub must partition the states".into(),
            ));
        }
        for (x, s) in succ.iter().enumerate() {
            if !s.is_subset(all) {
                return Err(ModelError::Invalid(format!(
                    "edge from {} leaves W",
                    names[x]
                )));
            }
            if strict {
                let other = if ua.contains(x) { ub } else { ua };
                if let Some(y) = (*s - other).first() {
                    return Err(ModelError::Invalid(format!(
                        "edge {}->{} stays inside one player's states (declare `non-strict` to allow it)",
                        names[x], names[y]
                    )));
                }
            }
        }
        for (atom, s) in &val {
            if !crate::formula::is_atom_name(atom) {
                return Err(ModelError::BadAtomName(atom.clone()));
            }
            if !s.is_subset(all) {
                return Err(ModelError::Invalid(format!("valuation of {atom} leaves W")));
            }
        }
        Ok(KripkeModel {
            names,
            succ,
            ua,
            ub,
            val,
            strict,
        })
    }

    /// Frame with generated state names `s0, s1, ...` and no valuation.
    pub fn from_relation(
        succ: Vec<StateSet>,
        ua: StateSet,
        strict: bool,
    ) -> Result<Self, ModelError> {
        let n = succ.len();
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let ub = ua.complement(n);
        Self::new(names, succ, ua, ub, BTreeMap::new(), strict)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn successors(&self, x: usize) -> StateSet {
        self.succ[x]
    }

    pub fn ua(&self) -> StateSet {
        self.ua
    }

    pub fn ub(&self) -> StateSet {
        self.ub
    }

    pub fn valuation(&self) -> &BTreeMap<String, StateSet> {
        &self.val
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    /// Every state has a successor among the other player's states.
    pub fn is_serial(&self) -> bool {
        (0..self.len()).all(|x| {
            let other = if self.ua.contains(x) {
                self.ub
            } else {
                self.ua
            };
            !(self.succ[x] & other).is_empty()
        })
    }

    /// `D = {w : for all z, P(w,z) -> not P(z,w)}`.
    pub fn diagonal_d(&self) -> StateSet {
        relational_diagonal(&self.succ)
    }

    pub fn eval(&self, heart: HeartScope) -> KripkeEval<'_> {
        KripkeEval { model: self, heart }
    }

    /// Satisfaction set under the default (frame) assumption semantics.
    pub fn extension(&self, f: &Formula) -> Result<StateSet, EvalError> {
        self.eval(HeartScope::default()).extension(f)
    }

    pub fn is_satisfiable(&self, f: &Formula) -> Result<bool, EvalError> {
        self.eval(HeartScope::default()).is_satisfiable(f)
    }

    pub fn is_valid(&self, f: &Formula) -> Result<bool, EvalError> {
        self.eval(HeartScope::default()).is_valid(f)
    }

    /// Scans the seven slots of the impossibility theorem (with `D`).
    pub fn find_holes(&self, heart: HeartScope) -> HoleReport {
        holes::find_holes(&self.eval(heart), &Formula::Dclass)
            .expect("slot formulas are relational and atom-free")
    }

    /// Evaluates both parts of the diagonal lemma (with `D`).
    pub fn check_lemma_1(&self, heart: HeartScope) -> LemmaReport {
        holes::check_lemma(&self.eval(heart), &Formula::Dclass)
            .expect("lemma formulas are relational and atom-free")
    }

    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let decls = modelfile::split(text, "kripke")?;
        let states = decls
            .iter()
            .find(|d| d.key == "states")
            .ok_or(ModelError::Missing("states"))?;
        let names = Names::new(modelfile::required(states.value, states.line, "states")?)?;
        let n = names.names.len();
        let mut succ = vec![StateSet::EMPTY; n];
        let (mut ua, mut ub) = (StateSet::EMPTY, StateSet::EMPTY);
        let mut val = BTreeMap::new();
        let mut strict = true;
        for d in &decls {
            match (d.key.as_str(), d.value) {
                ("states", _) => {}
                ("Ua", Some(v)) => ua = names.set(v)?,
                ("Ub", Some(v)) => ub = names.set(v)?,
                ("P", Some(v)) => {
                    for (x, y) in modelfile::edges(&names, v, d.line)? {
                        succ[x].insert(y);
                    }
                }
                ("non-strict", None) => strict = false,
                (key, Some(v)) if key.starts_with("val ") => {
                    let atom = modelfile::val_key(key).expect("prefix checked")?;
                    val.insert(atom, names.set(v)?);
                }
                _ => return Err(modelfile::unknown_key(d)),
            }
        }
        Self::new(names.names, succ, ua, ub, val, strict)
    }

    /// Model file text; [`KripkeModel::parse`] reads it back unchanged.
    pub fn to_text(&self) -> String {
        let mut out = String::from("kripke\n");
        out.push_str(&format!("states: {}\n", self.names.join(" ")));
        modelfile::write_set(&mut out, "Ua", self.ua, &self.names);
        modelfile::write_set(&mut out, "Ub", self.ub, &self.names);
        out.push_str("P:");
        for (x, s) in self.succ.iter().enumerate() {
            for y in *s {
                out.push_str(&format!(" {}->{}", self.names[x], self.names[y]));
            }
        }
        out.push('\n');
        modelfile::write_vals(&mut out, &self.val, &self.names);
        if !self.strict {
            out.push_str("non-strict\n");
        }
        out
    }
}

/// A frame paired with an assumption semantics.
#[derive(Debug, Clone, Copy)]
pub struct KripkeEval<'a> {
    model: &'a KripkeModel,
    heart: HeartScope,
}

impl RelationalSemantics for KripkeEval<'_> {
    fn size(&self) -> usize {
        self.model.len()
    }

    fn successors(&self, x: usize) -> StateSet {
        self.model.succ[x]
    }

    fn type_set(&self, agent: Agent) -> StateSet {
        match agent {
            Agent::A => self.model.ua,
            Agent::B => self.model.ub,
        }
    }

    fn atom(&self, name: &str) -> Result<StateSet, EvalError> {
        self.model
            .val
            .get(name)
            .copied()
            .ok_or_else(|| EvalError::UnknownAtom(name.to_string()))
    }

    fn diagonal(&self, which: &Formula) -> Result<StateSet, EvalError> {
        match which {
            Formula::Dclass => Ok(self.model.diagonal_d()),
            _ => Err(EvalError::Unsupported("D+", "Kripke frames")),
        }
    }

    fn heart_range(&self) -> HeartRange {
        match self.heart {
            HeartScope::Frame => HeartRange::All,
            HeartScope::Local => HeartRange::Target,
        }
    }
}
