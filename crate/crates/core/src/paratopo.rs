//! Paraconsistent topological belief models.
//!
//! Two disjoint type spaces `A` and `B`, each with a closed-set topology, and
//! two image maps `tA: A -> closed(B)`, `tB: B -> closed(A)`. Negation `~` is
//! the closure of the complement inside each space, so a formula and its
//! negation can share boundary points.
//!
//! Extensions are sets over the combined index space: `A` occupies
//! `0..|A|` and `B` occupies `|A|..|A|+|B|`.

use std::collections::BTreeMap;

use crate::formula::{Agent, Formula, Language, LanguageError};
use crate::modelfile::{self, ModelError, Names};
use crate::set::{render_set, StateSet, MAX_STATES};
use crate::topology::{rectangle, ClosedTopology};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParaTopoError {
    #[error(transparent)]
    Language(#[from] LanguageError),
    #[error("atom `{0}` has no valuation in this model")]
    UnknownAtom(String),
    /// Exhaustive product checks are limited to small carriers.
    #[error("|A x B| = {0} exceeds the exhaustive limit of {1}")]
    TooLarge(usize, usize),
}

/// Largest `|A| * |B|` accepted by [`ParaTopoModel::is_weak_assumption_complete`].
pub const WEAK_COMPLETENESS_LIMIT: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParaTopoModel {
    names_a: Vec<String>,
    names_b: Vec<String>,
    tau_a: ClosedTopology,
    tau_b: ClosedTopology,
    /// `ta[x]` is a set of local `B` indices.
    ta: Vec<StateSet>,
    /// `tb[y]` is a set of local `A` indices.
    tb: Vec<StateSet>,
    val: BTreeMap<String, StateSet>,
}

/// Nonempty subsets of each space that no state of the other player assumes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompletenessReport {
    /// Local `B` sets that are no `tA(x)`.
    pub missing_b: Vec<StateSet>,
    /// Local `A` sets that are no `tB(y)`.
    pub missing_a: Vec<StateSet>,
}

impl CompletenessReport {
    pub fn complete(&self) -> bool {
        self.missing_a.is_empty() && self.missing_b.is_empty()
    }
}

/// Result of the exhaustive product-closedness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakCompletenessReport {
    /// Every `S` of `A x B` is horizontally and vertically closed.
    pub premise_holds: bool,
    /// First subset (product index, `a * |B| + b`) that is not.
    pub failing_set: Option<StateSet>,
    /// Weak assumption-completeness, which is the same condition on every `S`.
    pub weak_complete: bool,
}

impl ParaTopoModel {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        names_a: Vec<String>,
        names_b: Vec<String>,
        tau_a: ClosedTopology,
        tau_b: ClosedTopology,
        ta: Vec<StateSet>,
        tb: Vec<StateSet>,
        val: BTreeMap<String, StateSet>,
    ) -> Result<Self, ModelError> {
        let (na, nb) = (names_a.len(), names_b.len());
        if na + nb > MAX_STATES {
            return Err(ModelError::TooLarge(na + nb));
        }
        if tau_a.size() != na || tau_b.size() != nb || ta.len() != na || tb.len() != nb {
            return Err(ModelError::Invalid("carrier sizes disagree".into()));
        }
        for (which, t) in [("A", &tau_a), ("B", &tau_b)] {
            if let Some(v) = t.validate().first() {
                return Err(ModelError::Invalid(format!(
                    "closed{which} is not a topology: {v}"
                )));
            }
        }
        for (x, img) in ta.iter().enumerate() {
            if !tau_b.is_closed(*img) {
                return Err(ModelError::Invalid(format!(
                    "tA({}) = {} is not closed in B",
                    names_a[x],
                    render_set(*img, &names_b)
                )));
            }
        }
        for (y, img) in tb.iter().enumerate() {
            if !tau_a.is_closed(*img) {
                return Err(ModelError::Invalid(format!(
                    "tB({}) = {} is not closed in A",
                    names_b[y],
                    render_set(*img, &names_a)
                )));
            }
        }
        let mut model = ParaTopoModel {
            names_a,
            names_b,
            tau_a,
            tau_b,
            ta,
            tb,
            val: BTreeMap::new(),
        };
        let all = StateSet::full(na + nb);
        for (atom, s) in &val {
            if !crate::formula::is_atom_name(atom) {
                return Err(ModelError::BadAtomName(atom.clone()));
            }
            if !s.is_subset(all) {
                return Err(ModelError::Invalid(format!(
                    "valuation of {atom} leaves A and B"
                )));
            }
            let (sa, sb) = model.split(*s);
            if !model.tau_a.is_closed(sa) || !model.tau_b.is_closed(sb) {
                return Err(ModelError::Invalid(format!(
                    "valuation of {atom} is not closed"
                )));
            }
        }
        model.val = val;
        Ok(model)
    }

    pub fn size_a(&self) -> usize {
        self.names_a.len()
    }

    pub fn size_b(&self) -> usize {
        self.names_b.len()
    }

    /// All names, `A` first.
    pub fn names(&self) -> Vec<String> {
        self.names_a.iter().chain(&self.names_b).cloned().collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names().iter().position(|n| n == name)
    }

    pub fn tau_a(&self) -> &ClosedTopology {
        &self.tau_a
    }

    pub fn tau_b(&self) -> &ClosedTopology {
        &self.tau_b
    }

    /// `tA(x)` as local `B` indices.
    pub fn image_a(&self, x: usize) -> StateSet {
        self.ta[x]
    }

    /// `tB(y)` as local `A` indices.
    pub fn image_b(&self, y: usize) -> StateSet {
        self.tb[y]
    }

    /// The `A` part of the combined space.
    pub fn part_a(&self) -> StateSet {
        StateSet::full(self.size_a())
    }

    pub fn part_b(&self) -> StateSet {
        StateSet::full(self.size_a() + self.size_b()) - self.part_a()
    }

    /// Combined set into its local `A` and `B` parts.
    pub fn split(&self, s: StateSet) -> (StateSet, StateSet) {
        let na = self.size_a();
        (
            s & self.part_a(),
            StateSet::from_bits(s.bits().checked_shr(na as u32).unwrap_or(0)),
        )
    }

    /// Local parts into a combined set.
    pub fn join(&self, a: StateSet, b: StateSet) -> StateSet {
        a | StateSet::from_bits(b.bits().checked_shl(self.size_a() as u32).unwrap_or(0))
    }

    /// Same carriers, images and valuation with every subset closed.
    pub fn discrete_counterpart(&self) -> Self {
        ParaTopoModel {
            tau_a: ClosedTopology::discrete(self.size_a()),
            tau_b: ClosedTopology::discrete(self.size_b()),
            ..self.clone()
        }
    }

    /// `{x in A : for all y, y in tA(x) implies x in ~tB(y)}` as local indices.
    pub fn diagonal(&self) -> StateSet {
        (0..self.size_a())
            .filter(|&x| {
                self.ta[x]
                    .iter()
                    .all(|y| self.tau_a.pneg(self.tb[y]).contains(x))
            })
            .collect()
    }

    /// Per-carrier paraconsistent negation of a combined set.
    pub fn pneg(&self, s: StateSet) -> StateSet {
        let (a, b) = self.split(s);
        self.join(self.tau_a.pneg(a), self.tau_b.pneg(b))
    }

    /// Exact satisfaction set of a topological-language formula.
    pub fn evaluate(&self, f: &Formula) -> Result<StateSet, ParaTopoError> {
        f.check_language(Language::Topological)?;
        self.eval(f)
    }

    fn eval(&self, f: &Formula) -> Result<StateSet, ParaTopoError> {
        let n = self.size_a() + self.size_b();
        Ok(match f {
            Formula::Atom(a) => *self
                .val
                .get(a)
                .ok_or_else(|| ParaTopoError::UnknownAtom(a.clone()))?,
            Formula::Top => StateSet::full(n),
            Formula::Bot => StateSet::EMPTY,
            Formula::Ua => self.part_a(),
            Formula::Ub => self.part_b(),
            Formula::Dtopo => self.diagonal(),
            Formula::Not(g) => self.eval(g)?.complement(n),
            Formula::Pneg(g) => self.pneg(self.eval(g)?),
            Formula::And(l, r) => self.eval(l)? & self.eval(r)?,
            Formula::Or(l, r) => self.eval(l)? | self.eval(r)?,
            Formula::Imp(l, r) => self.eval(l)?.complement(n) | self.eval(r)?,
            Formula::Iff(l, r) => {
                let (a, b) = (self.eval(l)?, self.eval(r)?);
                (a & b) | (a.complement(n) & b.complement(n))
            }
            Formula::TBel(agent, g) => self.modal(*agent, self.eval(g)?, |img, s| img.is_subset(s)),
            Formula::TAsm(agent, g) => self.modal(*agent, self.eval(g)?, |img, s| img == s),
            Formula::TDia(agent, g) => {
                self.modal(*agent, self.eval(g)?, |img, s| !img.is_disjoint(s))
            }
            Formula::Dclass
            | Formula::Dplus
            | Formula::Box(..)
            | Formula::Heart(..)
            | Formula::Diamond(..) => {
                unreachable!("language check admits only topological connectives")
            }
        })
    }

    /// States of `agent` whose image and the other-side part of `s` satisfy `test`.
    fn modal(
        &self,
        agent: Agent,
        s: StateSet,
        test: impl Fn(StateSet, StateSet) -> bool,
    ) -> StateSet {
        let (sa, sb) = self.split(s);
        match agent {
            Agent::A => (0..self.size_a())
                .filter(|&x| test(self.ta[x], sb))
                .collect(),
            Agent::B => {
                let hits: StateSet = (0..self.size_b())
                    .filter(|&y| test(self.tb[y], sa))
                    .collect();
                self.join(StateSet::EMPTY, hits)
            }
        }
    }

    /// The sentence `Ba Xb Dt & Ea true`.
    pub fn bk_sentence() -> Formula {
        Formula::and(
            Formula::tbel(Agent::A, Formula::tasm(Agent::B, Formula::Dtopo)),
            Formula::tdia(Agent::A, Formula::Top),
        )
    }

    /// States of `A` satisfying [`ParaTopoModel::bk_sentence`].
    pub fn bk_witnesses(&self) -> StateSet {
        self.evaluate(&Self::bk_sentence())
            .expect("the sentence is topological and atom-free")
    }

    /// `S` (product indices) is horizontally closed.
    pub fn horizontally_closed(&self, s: StateSet) -> bool {
        let nb = self.size_b();
        product_points(s, nb).all(|(x, y)| {
            self.tau_a
                .closed_sets()
                .iter()
                .any(|&c| c.contains(x) && rectangle(c, StateSet::singleton(y), nb).is_subset(s))
        })
    }

    /// `S` (product indices) is vertically closed.
    pub fn vertically_closed(&self, s: StateSet) -> bool {
        let nb = self.size_b();
        product_points(s, nb).all(|(x, y)| {
            self.tau_b
                .closed_sets()
                .iter()
                .any(|&c| c.contains(y) && rectangle(StateSet::singleton(x), c, nb).is_subset(s))
        })
    }

    /// Whether every nonempty subset of each space is some image of the other.
    pub fn is_assumption_complete(&self) -> CompletenessReport {
        let missing = |n: usize, images: &[StateSet]| {
            StateSet::all_subsets(n)
                .filter(|s| !s.is_empty() && !images.contains(s))
                .collect()
        };
        CompletenessReport {
            missing_b: missing(self.size_b(), &self.ta),
            missing_a: missing(self.size_a(), &self.tb),
        }
    }

    /// Checks every subset of `A x B` for horizontal and vertical closedness.
    pub fn is_weak_assumption_complete(&self) -> Result<WeakCompletenessReport, ParaTopoError> {
        let n = self.size_a() * self.size_b();
        if n > WEAK_COMPLETENESS_LIMIT {
            return Err(ParaTopoError::TooLarge(n, WEAK_COMPLETENESS_LIMIT));
        }
        let failing_set = StateSet::all_subsets(n)
            .find(|&s| !(self.horizontally_closed(s) && self.vertically_closed(s)));
        Ok(WeakCompletenessReport {
            premise_holds: failing_set.is_none(),
            failing_set,
            weak_complete: failing_set.is_none(),
        })
    }

    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let decls = modelfile::split(text, "paratopo")?;
        let find = |key: &'static str| {
            decls
                .iter()
                .find(|d| d.key == key)
                .ok_or(ModelError::Missing(key))
        };
        let a = find("A")?;
        let b = find("B")?;
        let names_a = Names::new(modelfile::required(a.value, a.line, "A")?)?;
        let names_b = Names::new(modelfile::required(b.value, b.line, "B")?)?;
        let mut all = names_a.clone();
        for n in &names_b.names {
            all.push(n)?;
        }
        let (na, nb) = (names_a.names.len(), names_b.names.len());
        let mut closed_a = None;
        let mut closed_b = None;
        let mut ta = vec![StateSet::EMPTY; na];
        let mut tb = vec![StateSet::EMPTY; nb];
        let mut val = BTreeMap::new();
        for d in &decls {
            match (d.key.as_str(), d.value) {
                ("A" | "B", _) => {}
                ("closedA", Some(v)) => closed_a = Some(family(&names_a, v, d.line)?),
                ("closedB", Some(v)) => closed_b = Some(family(&names_b, v, d.line)?),
                ("tA", Some(v)) => {
                    for (src, dst) in modelfile::images(v, d.line)? {
                        ta[names_a.get(src)?] = dst
                            .iter()
                            .map(|n| names_b.get(n))
                            .collect::<Result<_, _>>()?;
                    }
                }
                ("tB", Some(v)) => {
                    for (src, dst) in modelfile::images(v, d.line)? {
                        tb[names_b.get(src)?] = dst
                            .iter()
                            .map(|n| names_a.get(n))
                            .collect::<Result<_, _>>()?;
                    }
                }
                (key, Some(v)) if key.starts_with("val ") => {
                    let atom = modelfile::val_key(key).expect("prefix checked")?;
                    val.insert(atom, all.set(v)?);
                }
                _ => return Err(modelfile::unknown_key(d)),
            }
        }
        let tau_a = ClosedTopology::new(na, closed_a.ok_or(ModelError::Missing("closedA"))?)
            .map_err(|e| ModelError::Invalid(e.to_string()))?;
        let tau_b = ClosedTopology::new(nb, closed_b.ok_or(ModelError::Missing("closedB"))?)
            .map_err(|e| ModelError::Invalid(e.to_string()))?;
        Self::new(names_a.names, names_b.names, tau_a, tau_b, ta, tb, val)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("paratopo\n");
        out.push_str(&format!("A: {}\n", self.names_a.join(" ")));
        out.push_str(&format!("B: {}\n", self.names_b.join(" ")));
        out.push_str(&format!("closedA: {}\n", self.tau_a.render(&self.names_a)));
        out.push_str(&format!("closedB: {}\n", self.tau_b.render(&self.names_b)));
        let images = |imgs: &[StateSet], src: &[String], dst: &[String]| {
            imgs.iter()
                .enumerate()
                .filter(|(_, s)| !s.is_empty())
                .map(|(i, &s)| format!(" {}->{}", src[i], render_set(s, dst)))
                .collect::<String>()
        };
        out.push_str(&format!(
            "tA:{}\n",
            images(&self.ta, &self.names_a, &self.names_b)
        ));
        out.push_str(&format!(
            "tB:{}\n",
            images(&self.tb, &self.names_b, &self.names_a)
        ));
        modelfile::write_vals(&mut out, &self.val, &self.names());
        out
    }
}

fn family(names: &Names, value: &str, line: usize) -> Result<Vec<StateSet>, ModelError> {
    modelfile::braced_groups(value, line)?
        .into_iter()
        .map(|g| g.into_iter().map(|n| names.get(n)).collect())
        .collect()
}

fn product_points(s: StateSet, width: usize) -> impl Iterator<Item = (usize, usize)> {
    s.iter().map(move |p| (p / width, p % width))
}
