//! Evaluation of the relational language, shared by Kripke frames and
//! membership graphs.
//!
//! Both model kinds are a finite successor relation plus the two type sets;
//! they differ only in the range over which the assumption biconditional is
//! checked and in which diagonal atom they understand.

use thiserror::Error;

use crate::formula::{Agent, Dir, Formula, Language, LanguageError};
use crate::set::StateSet;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// The formula uses a connective of the other language.
    #[error(transparent)]
    Language(#[from] LanguageError),
    /// The formula mentions an atom without a valuation in the model.
    #[error("atom `{0}` has no valuation in this model")]
    UnknownAtom(String),
    /// The connective belongs to the language but not to this model kind.
    #[error("`{0}` is not defined for {1}")]
    Unsupported(&'static str, &'static str),
}

/// Which states the assumption biconditional `Hij` ranges over at a state `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HeartRange {
    /// Every state of the model.
    All,
    /// Every state of the looked-at player.
    Target,
    /// Successors of `x`.
    Successors,
    /// Successors of `x` together with `x` itself.
    SelfAndSuccessors,
}

/// A finite structure that interprets the relational language.
pub trait RelationalSemantics {
    /// Number of states.
    fn size(&self) -> usize;

    /// Successors of `x` (accessible states, or members).
    fn successors(&self, x: usize) -> StateSet;

    /// States of player `agent`.
    fn type_set(&self, agent: Agent) -> StateSet;

    /// Valuation of a user atom.
    fn atom(&self, name: &str) -> Result<StateSet, EvalError>;

    /// Valuation of `D` or `D+`.
    fn diagonal(&self, which: &Formula) -> Result<StateSet, EvalError>;

    #[doc(hidden)]
    fn heart_range(&self) -> HeartRange;

    /// Whether `[dir] S` holds at `x`.
    fn box_at(&self, dir: Dir, x: usize, s: StateSet) -> bool {
        self.type_set(dir.source()).contains(x)
            && (self.successors(x) & self.type_set(dir.target())).is_subset(s)
    }

    /// Whether `<dir> S` holds at `x`.
    fn diamond_at(&self, dir: Dir, x: usize, s: StateSet) -> bool {
        self.type_set(dir.source()).contains(x)
            && !(self.successors(x) & self.type_set(dir.target()) & s).is_empty()
    }

    /// Whether `H<dir> S` holds at `x`.
    fn heart_at(&self, dir: Dir, x: usize, s: StateSet) -> bool {
        if !self.type_set(dir.source()).contains(x) {
            return false;
        }
        let target = self.type_set(dir.target());
        let succ = self.successors(x);
        let range = match self.heart_range() {
            HeartRange::All => StateSet::full(self.size()),
            HeartRange::Target => target,
            HeartRange::Successors => succ,
            HeartRange::SelfAndSuccessors => succ | StateSet::singleton(x),
        };
        succ & target & range == s & range
    }

    /// States where `[dir] S` holds.
    fn box_op(&self, dir: Dir, s: StateSet) -> StateSet {
        self.type_set(dir.source())
            .iter()
            .filter(|&x| self.box_at(dir, x, s))
            .collect()
    }

    /// States where `<dir> S` holds.
    fn diamond_op(&self, dir: Dir, s: StateSet) -> StateSet {
        self.type_set(dir.source())
            .iter()
            .filter(|&x| self.diamond_at(dir, x, s))
            .collect()
    }

    /// States where `H<dir> S` holds.
    fn heart_op(&self, dir: Dir, s: StateSet) -> StateSet {
        self.type_set(dir.source())
            .iter()
            .filter(|&x| self.heart_at(dir, x, s))
            .collect()
    }

    /// Exact satisfaction set of `f`.
    fn extension(&self, f: &Formula) -> Result<StateSet, EvalError> {
        f.check_language(Language::Relational)?;
        self.extension_unchecked(f)
    }

    #[doc(hidden)]
    fn extension_unchecked(&self, f: &Formula) -> Result<StateSet, EvalError> {
        let n = self.size();
        let set = match f {
            Formula::Atom(name) => self.atom(name)?,
            Formula::Top => StateSet::full(n),
            Formula::Bot => StateSet::EMPTY,
            Formula::Ua => self.type_set(Agent::A),
            Formula::Ub => self.type_set(Agent::B),
            Formula::Dclass | Formula::Dplus => self.diagonal(f)?,
            Formula::Not(g) => self.extension_unchecked(g)?.complement(n),
            Formula::And(l, r) => self.extension_unchecked(l)? & self.extension_unchecked(r)?,
            Formula::Or(l, r) => self.extension_unchecked(l)? | self.extension_unchecked(r)?,
            Formula::Imp(l, r) => {
                self.extension_unchecked(l)?.complement(n) | self.extension_unchecked(r)?
            }
            Formula::Iff(l, r) => {
                let (a, b) = (self.extension_unchecked(l)?, self.extension_unchecked(r)?);
                (a & b) | (a.complement(n) & b.complement(n))
            }
            Formula::Box(dir, g) => self.box_op(*dir, self.extension_unchecked(g)?),
            Formula::Heart(dir, g) => self.heart_op(*dir, self.extension_unchecked(g)?),
            Formula::Diamond(dir, g) => self.diamond_op(*dir, self.extension_unchecked(g)?),
            Formula::Dtopo
            | Formula::Pneg(_)
            | Formula::TBel(..)
            | Formula::TAsm(..)
            | Formula::TDia(..) => {
                unreachable!("language check admits only relational connectives")
            }
        };
        Ok(set)
    }

    fn is_satisfiable(&self, f: &Formula) -> Result<bool, EvalError> {
        Ok(!self.extension(f)?.is_empty())
    }

    fn is_valid(&self, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.extension(f)? == StateSet::full(self.size()))
    }

    /// Whether `x` satisfies `f`.
    fn satisfies(&self, x: usize, f: &Formula) -> Result<bool, EvalError> {
        Ok(self.extension(f)?.contains(x))
    }
}

/// `{w : for all z, w -> z implies not z -> w}` over a successor relation.
pub(crate) fn relational_diagonal(succ: &[StateSet]) -> StateSet {
    (0..succ.len())
        .filter(|&w| succ[w].iter().all(|z| !succ[z].contains(w)))
        .collect()
}
