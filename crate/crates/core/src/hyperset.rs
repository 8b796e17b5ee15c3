//! Non-well-founded belief models as finite membership graphs.
//!
//! A node is either a set, whose members are its outgoing edges, or an
//! urelement, which has no members and is not the empty set. An edge `w -> v`
//! means `v` is a member of `w`. Two nodes denote the same hyperset exactly
//! when they are bisimilar, so [`HypersetModel::canonicalize`] computes the
//! quotient by the largest label-respecting bisimulation.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::eval::{relational_diagonal, EvalError, HeartRange, RelationalSemantics};
use crate::family::FormulaFamily;
use crate::formula::{Agent, Dir, Formula};
use crate::holes::{self, HoleReport, LemmaReport};
use crate::modelfile::{self, ModelError, Names};
use crate::set::{StateSet, MAX_STATES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeKind {
    Set,
    Urelement,
}

/// Range of the assumption biconditional at a node `w`.
///
/// The default is the only reading under which every worked computation on
/// membership graphs (Quine states, urelements, the two-Quine example and the
/// counter-models) comes out as claimed; the other two are kept for
/// comparison.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NwfHeartScope {
    /// `v` ranges over the members of `w` and `w` itself.
    #[default]
    SelfAndMembers,
    /// `v` ranges over the members of `w`.
    Members,
    /// `v` ranges over every node.
    Global,
}

impl fmt::Display for NwfHeartScope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NwfHeartScope::SelfAndMembers => "self-and-members",
            NwfHeartScope::Members => "members",
            NwfHeartScope::Global => "global",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypersetModel {
    names: Vec<String>,
    kinds: Vec<NodeKind>,
    members: Vec<StateSet>,
    ua: StateSet,
    ub: StateSet,
    val: BTreeMap<String, StateSet>,
    allow_overlap: bool,
}

/// Set-theoretic shape of one node.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StateClass {
    /// `w = {w}`.
    pub is_quine: bool,
    pub is_urelement: bool,
    /// Members of members of `w` are members of `w` (sets only).
    pub is_transitive: bool,
}

/// Canonical model together with the map from original nodes to its nodes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quotient {
    pub model: HypersetModel,
    pub map: Vec<usize>,
}

impl Quotient {
    /// Original nodes mapped into `s`.
    pub fn preimage(&self, s: StateSet) -> StateSet {
        (0..self.map.len())
            .filter(|&x| s.contains(self.map[x]))
            .collect()
    }
}

impl HypersetModel {
    pub fn new(
        names: Vec<String>,
        kinds: Vec<NodeKind>,
        members: Vec<StateSet>,
        ua: StateSet,
        ub: StateSet,
        val: BTreeMap<String, StateSet>,
        allow_overlap: bool,
    ) -> Result<Self, ModelError> {
        let n = names.len();
        if n > MAX_STATES {
            return Err(ModelError::TooLarge(n));
        }
        if kinds.len() != n || members.len() != n {
            return Err(ModelError::Invalid("node tables disagree in length".into()));
        }
        if n == 0 {
            return Err(ModelError::Invalid(
                "a model needs at least one node".into(),
            ));
        }
        let all = StateSet::full(n);
        for x in 0..n {
            if !members[x].is_subset(all) {
                return Err(ModelError::Invalid(format!(
                    "member of {} outside W",
                    names[x]
                )));
            }
            if kinds[x] == NodeKind::Urelement && !members[x].is_empty() {
                return Err(ModelError::Invalid(format!(
                    "urelement {} cannot have members",
                    names[x]
                )));
            }
        }
        if !(ua | ub).is_subset(all) || ua | ub != all {
            return Err(ModelError::Invalid(
                "every node needs a type in Ua or Ub".into(),
            ));
        }
        if !allow_overlap && !ua.is_disjoint(ub) {
            return Err(ModelError::Invalid(
                "Ua and Ub overlap (declare `allow-overlap` to permit it)".into(),
            ));
        }
        for (atom, s) in &val {
            if !crate::formula::is_atom_name(atom) {
                return Err(ModelError::BadAtomName(atom.clone()));
            }
            if !s.is_subset(all) {
                return Err(ModelError::Invalid(format!("valuation of {atom} leaves W")));
            }
        }
        Ok(HypersetModel {
            names,
            kinds,
            members,
            ua,
            ub,
            val,
            allow_overlap,
        })
    }

    /// Model with generated names `s0, s1, ...` and no valuation.
    pub fn from_parts(
        kinds: Vec<NodeKind>,
        members: Vec<StateSet>,
        ua: StateSet,
        ub: StateSet,
        allow_overlap: bool,
    ) -> Result<Self, ModelError> {
        let names = (0..kinds.len()).map(|i| format!("s{i}")).collect();
        Self::new(
            names,
            kinds,
            members,
            ua,
            ub,
            BTreeMap::new(),
            allow_overlap,
        )
    }

    /// Same structure with `atom` valued at `set`.
    pub fn with_atom(mut self, atom: &str, set: StateSet) -> Result<Self, ModelError> {
        if !crate::formula::is_atom_name(atom) {
            return Err(ModelError::BadAtomName(atom.to_string()));
        }
        if !set.is_subset(StateSet::full(self.len())) {
            return Err(ModelError::Invalid(format!("valuation of {atom} leaves W")));
        }
        self.val.insert(atom.to_string(), set);
        Ok(self)
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

    pub fn kind(&self, x: usize) -> NodeKind {
        self.kinds[x]
    }

    pub fn members(&self, x: usize) -> StateSet {
        self.members[x]
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

    pub fn allows_overlap(&self) -> bool {
        self.allow_overlap
    }

    /// Types are actually disjoint (whatever the flag says).
    pub fn types_disjoint(&self) -> bool {
        self.ua.is_disjoint(self.ub)
    }

    pub fn classify(&self, w: usize) -> StateClass {
        let members = self.members[w];
        let is_urelement = self.kinds[w] == NodeKind::Urelement;
        StateClass {
            is_quine: !is_urelement && members == StateSet::singleton(w),
            is_urelement,
            is_transitive: !is_urelement
                && members.iter().all(|v| self.members[v].is_subset(members)),
        }
    }

    /// [`HypersetModel::classify`] by node name.
    pub fn classify_state(&self, name: &str) -> Result<StateClass, ModelError> {
        let w = self
            .index_of(name)
            .ok_or_else(|| ModelError::UnknownState(name.to_string()))?;
        Ok(self.classify(w))
    }

    /// `D+ = {w : for all v, v in w -> w not in v}`.
    pub fn diagonal_dplus(&self) -> StateSet {
        relational_diagonal(&self.members)
    }

    pub fn eval(&self, heart: NwfHeartScope) -> NwfEval<'_> {
        NwfEval { model: self, heart }
    }

    /// Satisfaction set under the default assumption semantics.
    pub fn nwf_extension(&self, f: &Formula) -> Result<StateSet, EvalError> {
        self.eval(NwfHeartScope::default()).extension(f)
    }

    /// Seven-slot scan with `D+` in place of `D`.
    pub fn nwf_find_holes(&self, heart: NwfHeartScope) -> HoleReport {
        holes::find_holes(&self.eval(heart), &Formula::Dplus)
            .expect("slot formulas are relational and atom-free")
    }

    /// The diagonal lemma evaluated with `D+`.
    pub fn check_lemma(&self, heart: NwfHeartScope) -> LemmaReport {
        holes::check_lemma(&self.eval(heart), &Formula::Dplus)
            .expect("lemma formulas are relational and atom-free")
    }

    fn labels(&self, atoms: &[&str]) -> Vec<Label> {
        (0..self.len())
            .map(|x| Label {
                kind: self.kinds[x],
                urelement: (self.kinds[x] == NodeKind::Urelement).then(|| self.names[x].clone()),
                in_ua: self.ua.contains(x),
                in_ub: self.ub.contains(x),
                atoms: atoms
                    .iter()
                    .map(|a| self.val.get(*a).is_some_and(|s| s.contains(x)))
                    .collect(),
            })
            .collect()
    }

    /// Quotient by the coarsest bisimulation that respects kinds, types and
    /// atoms and never identifies two distinct urelements.
    ///
    /// Canonical nodes are numbered by their least original node and keep its
    /// name, which makes the operation idempotent.
    pub fn canonicalize(&self) -> Quotient {
        let atoms: Vec<&str> = self.val.keys().map(String::as_str).collect();
        let labels = self.labels(&atoms);
        let block = refine(&labels, &self.members);
        let count = block.iter().max().map_or(0, |b| b + 1);
        let mut rep = vec![usize::MAX; count];
        for (x, &b) in block.iter().enumerate() {
            if rep[b] == usize::MAX {
                rep[b] = x;
            }
        }
        let lift = |s: StateSet| -> StateSet { s.iter().map(|x| block[x]).collect() };
        let members = rep.iter().map(|&r| lift(self.members[r])).collect();
        let pick =
            |s: StateSet| -> StateSet { (0..count).filter(|&b| s.contains(rep[b])).collect() };
        let model = HypersetModel {
            names: rep.iter().map(|&r| self.names[r].clone()).collect(),
            kinds: rep.iter().map(|&r| self.kinds[r]).collect(),
            members,
            ua: pick(self.ua),
            ub: pick(self.ub),
            val: self
                .val
                .iter()
                .map(|(a, s)| (a.clone(), pick(*s)))
                .collect(),
            allow_overlap: self.allow_overlap,
        };
        Quotient { model, map: block }
    }

    /// Whether no two distinct nodes are bisimilar.
    pub fn is_canonical(&self) -> bool {
        self.canonicalize().model.len() == self.len()
    }

    /// Evaluates the claimed validities and non-validities for `[ij] U` formulas.
    pub fn check_validity_lists(&self) -> ValidityListReport {
        let sem = self.eval(NwfHeartScope::default());
        let valid = |f: &Formula| sem.is_valid(f).expect("atom-free relational formula");
        let claimed_valid = validity_list_claimed_valid()
            .into_iter()
            .map(|f| {
                let v = valid(&f);
                (f, v)
            })
            .collect();
        let claimed_invalid = validity_list_claimed_invalid()
            .into_iter()
            .map(|f| {
                let v = valid(&f);
                (f, v)
            })
            .collect();
        let top = Formula::iff(Formula::boxed(Dir::Ab, Formula::Ua), Formula::Top);
        ValidityListReport {
            claimed_valid,
            claimed_invalid,
            box_ab_ua_iff_top_satisfiable: sem.is_satisfiable(&top).expect("atom-free"),
        }
    }

    /// Checks, at every Quine state and urelement `w` of type `i`, that `i`
    /// assumes `f` at `w` exactly when `w` falsifies `f`, and that `i` believes
    /// `f` at `w`.
    ///
    /// `f` ranges over `family` and, when the model is small enough, over every
    /// subset of nodes taken as an extension.
    pub fn check_theorem_2_2(
        &self,
        family: &FormulaFamily,
        heart: NwfHeartScope,
    ) -> Result<Vec<Theorem22Violation>, EvalError> {
        if !self.types_disjoint() {
            return Ok(Vec::new());
        }
        let sem = self.eval(heart);
        let exts = family.evaluate(&sem)?;
        let mut out = Vec::new();
        let subjects = (0..self.len()).filter(|&w| {
            let c = self.classify(w);
            c.is_quine || c.is_urelement
        });
        for w in subjects {
            let dir = if self.ua.contains(w) {
                Dir::Ab
            } else {
                Dir::Ba
            };
            let mut check = |s: StateSet, subject: &dyn Fn() -> Subject| {
                if sem.heart_at(dir, w, s) == s.contains(w) {
                    out.push(Theorem22Violation {
                        state: w,
                        dir,
                        subject: subject(),
                        failure: Theorem22Failure::Assumption,
                    });
                }
                if !sem.box_at(dir, w, s) {
                    out.push(Theorem22Violation {
                        state: w,
                        dir,
                        subject: subject(),
                        failure: Theorem22Failure::Belief,
                    });
                }
            };
            for (i, &s) in exts.iter().enumerate() {
                check(s, &|| Subject::Formula(family.formula(i)));
            }
            if self.len() <= 12 {
                for s in StateSet::all_subsets(self.len()) {
                    check(s, &|| Subject::Extension(s));
                }
            }
        }
        Ok(out)
    }

    /// For every Quine state `w` with `w |= Hij true`, checks `w` in Ua and Ub.
    pub fn check_theorem_2_3(&self, heart: NwfHeartScope) -> Vec<Theorem23Violation> {
        let sem = self.eval(heart);
        let all = StateSet::full(self.len());
        let both = self.ua & self.ub;
        let mut out = Vec::new();
        for w in (0..self.len()).filter(|&w| self.classify(w).is_quine) {
            for dir in Dir::ALL {
                if sem.heart_at(dir, w, all) && !both.contains(w) {
                    out.push(Theorem23Violation { state: w, dir });
                }
            }
        }
        out
    }

    pub fn parse(text: &str) -> Result<Self, ModelError> {
        let decls = modelfile::split(text, "nwf")?;
        let states = decls
            .iter()
            .find(|d| d.key == "states")
            .ok_or(ModelError::Missing("states"))?;
        let names = Names::new(modelfile::required(states.value, states.line, "states")?)?;
        let n = names.names.len();
        let mut kinds = vec![NodeKind::Set; n];
        let mut members = vec![StateSet::EMPTY; n];
        let (mut ua, mut ub) = (StateSet::EMPTY, StateSet::EMPTY);
        let mut val = BTreeMap::new();
        let mut allow_overlap = false;
        for d in &decls {
            match (d.key.as_str(), d.value) {
                ("states", _) => {}
                ("urelements", Some(v)) => {
                    for x in names.set(v)? {
                        kinds[x] = NodeKind::Urelement;
                    }
                }
                ("mem", Some(v)) => {
                    for (w, x) in modelfile::edges(&names, v, d.line)? {
                        members[w].insert(x);
                    }
                }
                ("Ua", Some(v)) => ua = names.set(v)?,
                ("Ub", Some(v)) => ub = names.set(v)?,
                ("allow-overlap", None) => allow_overlap = true,
                (key, Some(v)) if key.starts_with("val ") => {
                    let atom = modelfile::val_key(key).expect("prefix checked")?;
                    val.insert(atom, names.set(v)?);
                }
                _ => return Err(modelfile::unknown_key(d)),
            }
        }
        Self::new(names.names, kinds, members, ua, ub, val, allow_overlap)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::from("nwf\n");
        out.push_str(&format!("states: {}\n", self.names.join(" ")));
        let urelements: StateSet = (0..self.len())
            .filter(|&x| self.kinds[x] == NodeKind::Urelement)
            .collect();
        modelfile::write_set(&mut out, "urelements", urelements, &self.names);
        out.push_str("mem:");
        for (w, s) in self.members.iter().enumerate() {
            for v in *s {
                out.push_str(&format!(" {}->{}", self.names[w], self.names[v]));
            }
        }
        out.push('\n');
        modelfile::write_set(&mut out, "Ua", self.ua, &self.names);
        modelfile::write_set(&mut out, "Ub", self.ub, &self.names);
        modelfile::write_vals(&mut out, &self.val, &self.names);
        if self.allow_overlap {
            out.push_str("allow-overlap\n");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Label {
    kind: NodeKind,
    urelement: Option<String>,
    in_ua: bool,
    in_ub: bool,
    atoms: Vec<bool>,
}

/// Signature-based partition refinement. Returns block ids numbered in order
/// of first occurrence.
fn refine(labels: &[Label], members: &[StateSet]) -> Vec<usize> {
    let n = labels.len();
    let mut block = number_by_first_occurrence(labels.iter().cloned());
    loop {
        let signatures = (0..n).map(|x| {
            let succ: BTreeSet<usize> = members[x].iter().map(|v| block[v]).collect();
            (block[x], succ)
        });
        let next = number_by_first_occurrence(signatures);
        if next.iter().max() == block.iter().max() {
            return next;
        }
        block = next;
    }
}

fn number_by_first_occurrence<K: Eq + std::hash::Hash>(
    keys: impl Iterator<Item = K>,
) -> Vec<usize> {
    let mut ids: HashMap<K, usize> = HashMap::new();
    keys.map(|k| {
        let next = ids.len();
        *ids.entry(k).or_insert(next)
    })
    .collect()
}

/// Whether node `x` of `m1` and node `y` of `m2` are bisimilar.
///
/// Urelements are identified by name across the two models; an atom missing
/// from one model counts as false everywhere in it.
pub fn bisimilar(m1: &HypersetModel, x: usize, m2: &HypersetModel, y: usize) -> bool {
    let atoms: BTreeSet<&str> = m1
        .val
        .keys()
        .chain(m2.val.keys())
        .map(String::as_str)
        .collect();
    let atoms: Vec<&str> = atoms.into_iter().collect();
    let mut labels = m1.labels(&atoms);
    labels.extend(m2.labels(&atoms));
    let offset = m1.len();
    let members: Vec<StateSet> = m1
        .members
        .iter()
        .copied()
        .chain(
            m2.members
                .iter()
                .map(|s| StateSet::from_bits(s.bits() << offset)),
        )
        .collect();
    if offset + m2.len() > MAX_STATES {
        // Fall back to pairwise refinement on the explicit relation.
        return bisimilar_pairs(m1, x, m2, y, &atoms);
    }
    let block = refine(&labels, &members);
    block[x] == block[offset + y]
}

fn bisimilar_pairs(
    m1: &HypersetModel,
    x: usize,
    m2: &HypersetModel,
    y: usize,
    atoms: &[&str],
) -> bool {
    let (l1, l2) = (m1.labels(atoms), m2.labels(atoms));
    let mut rel: Vec<Vec<bool>> = (0..m1.len())
        .map(|a| (0..m2.len()).map(|b| l1[a] == l2[b]).collect())
        .collect();
    loop {
        let mut changed = false;
        for a in 0..m1.len() {
            for b in 0..m2.len() {
                if !rel[a][b] {
                    continue;
                }
                let forth = m1.members[a]
                    .iter()
                    .all(|a2| m2.members[b].iter().any(|b2| rel[a2][b2]));
                let back = m2.members[b]
                    .iter()
                    .all(|b2| m1.members[a].iter().any(|a2| rel[a2][b2]));
                if !(forth && back) {
                    rel[a][b] = false;
                    changed = true;
                }
            }
        }
        if !changed {
            return rel[x][y];
        }
    }
}

/// A membership graph evaluated under a chosen assumption range.
#[derive(Debug, Clone, Copy)]
pub struct NwfEval<'a> {
    model: &'a HypersetModel,
    heart: NwfHeartScope,
}

impl RelationalSemantics for NwfEval<'_> {
    fn size(&self) -> usize {
        self.model.len()
    }

    fn successors(&self, x: usize) -> StateSet {
        self.model.members[x]
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

    /// `D` and `D+` coincide on membership graphs.
    fn diagonal(&self, _which: &Formula) -> Result<StateSet, EvalError> {
        Ok(self.model.diagonal_dplus())
    }

    fn heart_range(&self) -> HeartRange {
        match self.heart {
            NwfHeartScope::SelfAndMembers => HeartRange::SelfAndSuccessors,
            NwfHeartScope::Members => HeartRange::Successors,
            NwfHeartScope::Global => HeartRange::All,
        }
    }
}

/// Results of the `[ij] U` validity lists on one model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidityListReport {
    /// The four formulas claimed valid, each with whether it is valid here.
    pub claimed_valid: Vec<(Formula, bool)>,
    /// The three formulas claimed not valid, each with whether it is valid here.
    pub claimed_invalid: Vec<(Formula, bool)>,
    /// `[ab] Ua <-> true` holds somewhere.
    pub box_ab_ua_iff_top_satisfiable: bool,
}

impl ValidityListReport {
    pub fn all_claimed_valid_hold(&self) -> bool {
        self.claimed_valid.iter().all(|(_, v)| *v)
    }
}

pub fn validity_list_claimed_valid() -> Vec<Formula> {
    let b = |d, f| Formula::boxed(d, f);
    vec![
        Formula::iff(b(Dir::Ab, Formula::Ub), Formula::Ua),
        Formula::iff(b(Dir::Ba, Formula::Ua), Formula::Ub),
        Formula::iff(b(Dir::Ab, Formula::Ua), Formula::Bot),
        Formula::iff(b(Dir::Ba, Formula::Ub), Formula::Bot),
    ]
}

pub fn validity_list_claimed_invalid() -> Vec<Formula> {
    let b = |d, f| Formula::boxed(d, f);
    let ab_ub = b(Dir::Ab, Formula::Ub);
    vec![
        Formula::imp(ab_ub.clone(), Formula::Ub),
        Formula::imp(ab_ub.clone(), b(Dir::Ba, ab_ub.clone())),
        Formula::imp(ab_ub.clone(), b(Dir::Ab, ab_ub)),
    ]
}

/// What a quine-and-urelement assumption check quantified over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Subject {
    Formula(Formula),
    /// An arbitrary set of nodes used directly as the extension.
    Extension(StateSet),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theorem22Failure {
    /// Assumption did not coincide with falsity at the state.
    Assumption,
    /// The state does not believe the formula.
    Belief,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem22Violation {
    pub state: usize,
    pub dir: Dir,
    pub subject: Subject,
    pub failure: Theorem22Failure,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Theorem23Violation {
    pub state: usize,
    pub dir: Dir,
}

/// A rooted directed graph with optional edge labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedGraph {
    pub names: Vec<String>,
    pub edges: Vec<(usize, usize, Option<String>)>,
    pub root: usize,
}

/// How childless graph nodes are decorated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LeafKind {
    /// Terminal positions become urelements.
    #[default]
    Urelement,
    EmptySet,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("node `{0}` is not reachable from the root")]
    Disconnected(String),
    #[error("graph has {nodes} nodes but {types} type assignments")]
    TypeCount { nodes: usize, types: usize },
    #[error("edge or root refers to node {0}, which does not exist")]
    BadNode(usize),
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Decorates a rooted graph as a two-player membership structure: each edge
/// becomes membership of the child in the parent, and `types[i]` places node
/// `i` with player a or b. Edge labels are not part of the structure.
pub fn graph_to_structure(
    g: &RootedGraph,
    types: &[Agent],
    leaves: LeafKind,
) -> Result<HypersetModel, GraphError> {
    let n = g.names.len();
    if types.len() != n {
        return Err(GraphError::TypeCount {
            nodes: n,
            types: types.len(),
        });
    }
    if n > MAX_STATES {
        return Err(ModelError::TooLarge(n).into());
    }
    if g.root >= n {
        return Err(GraphError::BadNode(g.root));
    }
    let mut members = vec![StateSet::EMPTY; n];
    for &(from, to, _) in &g.edges {
        if from >= n || to >= n {
            return Err(GraphError::BadNode(from.max(to)));
        }
        members[from].insert(to);
    }
    let mut seen = StateSet::singleton(g.root);
    let mut stack = vec![g.root];
    while let Some(x) = stack.pop() {
        for y in members[x] - seen {
            seen.insert(y);
            stack.push(y);
        }
    }
    if let Some(lost) = StateSet::full(n).difference(seen).first() {
        return Err(GraphError::Disconnected(g.names[lost].clone()));
    }
    let kinds = members
        .iter()
        .map(|m| match (m.is_empty(), leaves) {
            (true, LeafKind::Urelement) => NodeKind::Urelement,
            _ => NodeKind::Set,
        })
        .collect();
    let ua = (0..n).filter(|&i| types[i] == Agent::A).collect();
    let ub = (0..n).filter(|&i| types[i] == Agent::B).collect();
    Ok(HypersetModel::new(
        g.names.clone(),
        kinds,
        members,
        ua,
        ub,
        BTreeMap::new(),
        false,
    )?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn nwf(text: &str) -> HypersetModel {
        HypersetModel::parse(text).unwrap_or_else(|e| panic!("{e}"))
    }

    fn at(m: &HypersetModel, name: &str, f: &str) -> bool {
        let x = m.index_of(name).unwrap();
        m.nwf_extension(&parse(f).unwrap()).unwrap().contains(x)
    }

    const QUINE_PAIR: &str = "nwf\nstates: w v\nmem: w->w v->v\nUa: w\nUb: v\nval p: w\nval q: v\n";

    #[test]
    fn quine_pair_assumptions() {
        let m = nwf(QUINE_PAIR);
        assert!(at(&m, "w", "Hab q"));
        assert!(!at(&m, "w", "Hab p"));
        assert_eq!(
            m.nwf_extension(&parse("true").unwrap()).unwrap(),
            StateSet::full(2)
        );
    }

    #[test]
    fn heart_scopes_differ_on_quine_pair() {
        let m = nwf(QUINE_PAIR);
        let f = parse("Hab q").unwrap();
        let w = m.index_of("w").unwrap();
        assert!(m
            .eval(NwfHeartScope::Members)
            .extension(&f)
            .unwrap()
            .contains(w));
        // `v |= q` but `v` is not a member of `w`: the global reading fails.
        assert!(!m
            .eval(NwfHeartScope::Global)
            .extension(&f)
            .unwrap()
            .contains(w));
    }

    #[test]
    fn classification() {
        let m = nwf(
            "nwf\nstates: w v u t\nurelements: t\nmem: w->v w->w v->u u->t\nUa: w u\nUb: v t\n",
        );
        let w = m.classify_state("w").unwrap();
        assert!(!w.is_quine && !w.is_urelement && !w.is_transitive);
        assert!(m.classify_state("t").unwrap().is_urelement);
        assert!(!m.classify_state("t").unwrap().is_quine);
        assert!(m.classify_state("zz").is_err());
        let q = nwf("nwf\nstates: w\nmem: w->w\nUa: w\nUb:\n");
        let c = q.classify(0);
        assert!(c.is_quine && c.is_transitive && !c.is_urelement);
    }

    #[test]
    fn dplus_examples() {
        let prop24 = nwf("nwf\nstates: w v\nmem: w->v v->w\nUa: w\nUb: v\n");
        assert_eq!(prop24.diagonal_dplus(), StateSet::EMPTY);
        let ur = nwf("nwf\nstates: a b\nurelements: a b\nUa: a\nUb: b\n");
        assert_eq!(ur.diagonal_dplus(), StateSet::full(2));
    }

    #[test]
    fn urelement_is_not_empty_set() {
        let m = nwf("nwf\nstates: e u\nurelements: u\nUa: e\nUb: u\n");
        assert!(!bisimilar(&m, 0, &m, 1));
        assert!(bisimilar(&m, 0, &m, 0));
        assert!(bisimilar(&m, 1, &m, 1));
        assert!(
            HypersetModel::parse("nwf\nstates: u v\nurelements: u\nmem: u->v\nUa: u\nUb: v\n")
                .is_err()
        );
    }

    #[test]
    fn quine_collapses_two_cycle() {
        let pair = nwf("nwf\nstates: x y\nmem: x->y y->x\nUa: x y\nUb:\n");
        let quine = nwf("nwf\nstates: q\nmem: q->q\nUa: q\nUb:\n");
        assert!(bisimilar(&quine, 0, &pair, 0));
        let c = pair.canonicalize();
        assert_eq!(c.model.len(), 1);
        assert!(c.model.classify(0).is_quine);
        assert_eq!(c.map, vec![0, 0]);
    }

    #[test]
    fn distinct_urelements_never_merge() {
        let m = nwf("nwf\nstates: s t u\nurelements: t u\nmem: s->t s->u\nUa: s\nUb: t u\n");
        assert_eq!(m.canonicalize().model.len(), 3);
    }

    #[test]
    fn self_loops_merge() {
        let m = nwf("nwf\nstates: a b\nmem: a->a b->b\nUa: a b\nUb:\n");
        let c = m.canonicalize();
        assert_eq!(c.model.len(), 1);
        assert_eq!(
            c.model.canonicalize(),
            Quotient {
                map: vec![0],
                model: c.model.clone()
            }
        );
    }

    #[test]
    fn overlap_needs_flag() {
        assert!(HypersetModel::parse("nwf\nstates: w\nmem: w->w\nUa: w\nUb: w\n").is_err());
        assert!(
            HypersetModel::parse("nwf\nstates: w\nmem: w->w\nUa: w\nUb: w\nallow-overlap\n")
                .is_ok()
        );
    }

    #[test]
    fn theorem_2_3_singleton() {
        let m = nwf("nwf\nstates: w\nmem: w->w\nUa: w\nUb: w\nallow-overlap\n");
        assert!(at(&m, "w", "Hab true"));
        assert!(m.check_theorem_2_3(NwfHeartScope::default()).is_empty());
        let lone = nwf("nwf\nstates: w\nmem: w->w\nUa: w\nUb:\n");
        assert!(!at(&lone, "w", "Hab true"));
        assert!(lone.check_theorem_2_3(NwfHeartScope::default()).is_empty());
    }

    #[test]
    fn theorem_2_2_on_quine_and_urelement() {
        let m =
            nwf("nwf\nstates: w u v\nurelements: u\nmem: w->w v->u\nUa: w u\nUb: v\nval p: v\n");
        assert!(at(&m, "w", "Hab false"));
        assert!(!at(&m, "w", "Hab true"));
        assert!(at(&m, "u", "Hab Ub"));
        let fam = FormulaFamily::bounded(&["p"], 2);
        assert!(m
            .check_theorem_2_2(&fam, NwfHeartScope::default())
            .unwrap()
            .is_empty());
    }

    #[test]
    fn theorem_2_2_fails_for_urelements_when_only_members_count() {
        // An urelement has no members, so the members-only reading makes it
        // assume everything, including formulas true at it.
        let m = nwf("nwf\nstates: u v\nurelements: u\nmem: v->u\nUa: u\nUb: v\n");
        let fam = FormulaFamily::bounded(&[], 0);
        let v = m.check_theorem_2_2(&fam, NwfHeartScope::Members).unwrap();
        assert!(v.iter().any(|v| v.failure == Theorem22Failure::Assumption));
    }

    #[test]
    fn validity_lists_on_two_cycle() {
        let m = nwf("nwf\nstates: w v\nmem: w->v v->w\nUa: w\nUb: v\n");
        let r = m.check_validity_lists();
        assert!(r.all_claimed_valid_hold());
        assert!(r.claimed_invalid.iter().any(|(_, valid)| !valid));
    }

    #[test]
    fn validity_lists_need_members_of_the_other_type() {
        // Urelements believe everything, so `[ab] Ua <-> false` fails.
        let m = nwf("nwf\nstates: x y\nurelements: x y\nUa: x\nUb: y\n");
        let r = m.check_validity_lists();
        assert!(r.claimed_valid[0].1 && r.claimed_valid[1].1);
        assert!(!r.claimed_valid[2].1 && !r.claimed_valid[3].1);
    }

    #[test]
    fn dplus_is_not_bisimulation_invariant() {
        // w and u both have exactly {v} as members and equal labels, but only
        // w is a member of v.
        let m = nwf("nwf\nstates: w u v\nmem: w->v u->v v->w\nUa: w u\nUb: v\n");
        let q = m.canonicalize();
        assert_eq!(q.model.len(), 2);
        let d = m.diagonal_dplus();
        assert!(!d.contains(0) && d.contains(2 - 1));
        assert_ne!(q.preimage(q.model.diagonal_dplus()), d);
    }

    #[test]
    fn graph_decoration() {
        let g = RootedGraph {
            names: vec!["w".into(), "u".into(), "v".into()],
            edges: vec![
                (0, 1, Some("L".into())),
                (0, 2, Some("R".into())),
                (1, 0, None),
            ],
            root: 0,
        };
        let m =
            graph_to_structure(&g, &[Agent::A, Agent::B, Agent::B], LeafKind::Urelement).unwrap();
        assert_eq!(m.members(0), [1, 2].into_iter().collect());
        assert_eq!(m.members(1), StateSet::singleton(0));
        assert_eq!(m.kind(2), NodeKind::Urelement);
        let bad = RootedGraph {
            names: vec!["a".into(), "b".into()],
            edges: vec![],
            root: 0,
        };
        assert!(matches!(
            graph_to_structure(&bad, &[Agent::A, Agent::B], LeafKind::Urelement),
            Err(GraphError::Disconnected(_))
        ));
        let single = RootedGraph {
            names: vec!["r".into()],
            edges: vec![],
            root: 0,
        };
        let e = graph_to_structure(&single, &[Agent::A], LeafKind::EmptySet).unwrap();
        assert_eq!(e.kind(0), NodeKind::Set);
        let u = graph_to_structure(&single, &[Agent::A], LeafKind::Urelement).unwrap();
        assert_eq!(u.kind(0), NodeKind::Urelement);
    }

    #[test]
    fn text_round_trip() {
        let m = nwf("nwf\nstates: w v t\nurelements: t\nmem: w->v v->w v->t\nUa: w t\nUb: v t\nval p: w\nallow-overlap\n");
        assert_eq!(HypersetModel::parse(&m.to_text()).unwrap(), m);
    }
}
