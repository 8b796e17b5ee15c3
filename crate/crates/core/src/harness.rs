//! Model enumeration and verification campaigns.
//!
//! A campaign runs one claim over every small model of the relevant kind and
//! writes a plain-text report: fail records (each with a model file that
//! reproduces the failure), verdict records, then a `[summary]` block of
//! `key=value` lines. Enumeration is split into shards checked in parallel;
//! results are merged in enumeration order, so reports are byte-identical
//! across runs.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use thiserror::Error;

use crate::family::FormulaFamily;
use crate::hyperset::{HypersetModel, NodeKind, NwfHeartScope, Subject, Theorem22Failure};
use crate::kripke::{HeartScope, KripkeModel};
use crate::lawvere::{search_wps, SEARCH_LIMIT};
use crate::modelfile::ModelError;
use crate::set::StateSet;
use crate::topology::{check_laws, enumerate_topologies, ClosedTopology};

pub const KRIPKE_LIMIT: usize = 5;
pub const HYPERSET_LIMIT: usize = 4;
pub const TOPOLOGY_LIMIT: usize = 4;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    /// A size bound beyond what the enumerators support.
    #[error("{what} enumeration is limited to {limit} states, {requested} requested")]
    Bound {
        what: &'static str,
        limit: usize,
        requested: usize,
    },
    /// The target name is not one of the known campaigns.
    #[error("unknown campaign target `{0}`")]
    UnknownTarget(String),
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn bound(what: &'static str, limit: usize, requested: usize) -> Result<(), HarnessError> {
    if requested > limit {
        Err(HarnessError::Bound {
            what,
            limit,
            requested,
        })
    } else {
        Ok(())
    }
}

// Kripke enumeration -------------------------------------------------------

/// Options for [`enumerate_kripke`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct KripkeEnumFlags {
    /// Only edges between the two types.
    pub strict: bool,
    /// Only models where every state has a successor of the other type.
    pub serial: bool,
    /// Keep one model per isomorphism class.
    pub dedup_isomorphic: bool,
}

/// One partition of one size; models differ only in the relation.
#[derive(Debug, Clone)]
struct KripkeShard {
    size: usize,
    ua: StateSet,
    edges: Vec<(usize, usize)>,
    flags: KripkeEnumFlags,
}

impl KripkeShard {
    fn models(&self) -> impl Iterator<Item = KripkeModel> + '_ {
        let count = 1u64 << self.edges.len();
        (0..count).filter_map(move |r| {
            let mut succ = vec![StateSet::EMPTY; self.size];
            for (bit, &(x, y)) in self.edges.iter().enumerate() {
                if r >> bit & 1 == 1 {
                    succ[x].insert(y);
                }
            }
            if self.flags.dedup_isomorphic && !is_least_labeling(self.size, self.ua, &succ) {
                return None;
            }
            let m = KripkeModel::from_relation(succ, self.ua, self.flags.strict)
                .expect("enumerated models are valid");
            (!self.flags.serial || m.is_serial()).then_some(m)
        })
    }
}

fn kripke_shards(max: usize, flags: KripkeEnumFlags) -> Result<Vec<KripkeShard>, HarnessError> {
    bound("Kripke", KRIPKE_LIMIT, max)?;
    let mut shards = Vec::new();
    for size in 1..=max {
        for ua in StateSet::all_subsets(size) {
            let edges = (0..size)
                .flat_map(|x| (0..size).map(move |y| (x, y)))
                .filter(|&(x, y)| !flags.strict || ua.contains(x) != ua.contains(y))
                .collect();
            shards.push(KripkeShard {
                size,
                ua,
                edges,
                flags,
            });
        }
    }
    Ok(shards)
}

/// Every belief frame with 1 to `max` states, without valuation.
///
/// Order: by size, then by the bit mask of `Ua`, then by relation bits.
pub fn enumerate_kripke(
    max: usize,
    flags: KripkeEnumFlags,
) -> Result<impl Iterator<Item = KripkeModel>, HarnessError> {
    let shards = kripke_shards(max, flags)?;
    Ok(shards
        .into_iter()
        .flat_map(|s| s.models().collect::<Vec<_>>()))
}

fn encode(size: usize, ua: StateSet, succ: &[StateSet], perm: &[usize]) -> u64 {
    // perm[old] = new
    let mut ua_bits = 0u64;
    let mut rel = 0u64;
    for x in 0..size {
        if ua.contains(x) {
            ua_bits |= 1 << perm[x];
        }
        for y in succ[x] {
            rel |= 1 << (perm[x] * size + perm[y]);
        }
    }
    (ua_bits << (size * size)) | rel
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_least_labeling(size: usize, ua: StateSet, succ: &[StateSet]) -> bool {
    let identity: Vec<usize> = (0..size).collect();
    let own = encode(size, ua, succ, &identity);
    permutations(size)
        .iter()
        .all(|p| encode(size, ua, succ, p) >= own)
}

// Hyperset enumeration -----------------------------------------------------

/// Options for [`enumerate_hypersets`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct HypersetEnumFlags {
    /// Let nodes belong to both types.
    pub allow_overlap: bool,
    /// Also enumerate every valuation of this atom.
    pub atom: Option<String>,
    /// Drop models in which two distinct nodes are bisimilar.
    pub canonical_only: bool,
}

#[derive(Debug, Clone)]
struct HypersetShard {
    size: usize,
    kinds: Vec<NodeKind>,
    ua: StateSet,
    ub: StateSet,
    flags: HypersetEnumFlags,
}

impl HypersetShard {
    fn models(&self) -> impl Iterator<Item = HypersetModel> + '_ {
        let n = self.size;
        let sets: Vec<usize> = (0..n).filter(|&x| self.kinds[x] == NodeKind::Set).collect();
        let count = 1u64 << (n * sets.len());
        let vals = if self.flags.atom.is_some() {
            1u64 << n
        } else {
            1
        };
        (0..count).flat_map(move |r| {
            let mut members = vec![StateSet::EMPTY; n];
            for (i, &x) in sets.iter().enumerate() {
                members[x] = StateSet::from_bits((r >> (i * n)) & ((1 << n) - 1));
            }
            let base = HypersetModel::from_parts(
                self.kinds.clone(),
                members,
                self.ua,
                self.ub,
                self.flags.allow_overlap,
            )
            .expect("enumerated models are valid");
            (0..vals).filter_map(move |v| {
                let m = match &self.flags.atom {
                    Some(a) => base
                        .clone()
                        .with_atom(a, StateSet::from_bits(v))
                        .expect("enumerated valuations are valid"),
                    None => base.clone(),
                };
                (!self.flags.canonical_only || m.is_canonical()).then_some(m)
            })
        })
    }
}

fn hyperset_shards(
    max: usize,
    flags: &HypersetEnumFlags,
) -> Result<Vec<HypersetShard>, HarnessError> {
    bound("hyperset", HYPERSET_LIMIT, max)?;
    let mut shards = Vec::new();
    for size in 1..=max {
        let types: Vec<(StateSet, StateSet)> = if flags.allow_overlap {
            // Each node in Ua only, Ub only, or both.
            (0..3u64.pow(size as u32))
                .map(|mut code| {
                    let (mut ua, mut ub) = (StateSet::EMPTY, StateSet::EMPTY);
                    for x in 0..size {
                        match code % 3 {
                            0 => ua.insert(x),
                            1 => ub.insert(x),
                            _ => {
                                ua.insert(x);
                                ub.insert(x);
                            }
                        }
                        code /= 3;
                    }
                    (ua, ub)
                })
                .collect()
        } else {
            StateSet::all_subsets(size)
                .map(|ua| (ua, ua.complement(size)))
                .collect()
        };
        for urelements in StateSet::all_subsets(size) {
            let kinds: Vec<NodeKind> = (0..size)
                .map(|x| {
                    if urelements.contains(x) {
                        NodeKind::Urelement
                    } else {
                        NodeKind::Set
                    }
                })
                .collect();
            for &(ua, ub) in &types {
                shards.push(HypersetShard {
                    size,
                    kinds: kinds.clone(),
                    ua,
                    ub,
                    flags: flags.clone(),
                });
            }
        }
    }
    Ok(shards)
}

/// Every membership graph with 1 to `max` nodes, with every choice of node
/// kinds and types (and valuations, if asked).
pub fn enumerate_hypersets(
    max: usize,
    flags: &HypersetEnumFlags,
) -> Result<impl Iterator<Item = HypersetModel>, HarnessError> {
    let shards = hyperset_shards(max, flags)?;
    Ok(shards
        .into_iter()
        .flat_map(|s| s.models().collect::<Vec<_>>()))
}

// Campaigns ----------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Lemma1,
    Theorem12,
    Theorem22,
    Theorem23,
    ValidityLists,
    Adjunction,
    BoundaryLaw,
    LawvereScan,
}

impl Target {
    pub const ALL: [Target; 8] = [
        Target::Lemma1,
        Target::Theorem12,
        Target::Theorem22,
        Target::Theorem23,
        Target::ValidityLists,
        Target::Adjunction,
        Target::BoundaryLaw,
        Target::LawvereScan,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Lemma1 => "lemma1",
            Target::Theorem12 => "theorem12",
            Target::Theorem22 => "theorem22",
            Target::Theorem23 => "theorem23",
            Target::ValidityLists => "validity_lists",
            Target::Adjunction => "adjunction",
            Target::BoundaryLaw => "boundary_law",
            Target::LawvereScan => "lawvere_scan",
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Target {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Target::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| HarnessError::UnknownTarget(s.to_string()))
    }
}

/// Semantic toggles. Kripke targets read `strict`, `heart` and `serial`;
/// hyperset targets read `nwf_heart`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CampaignFlags {
    pub strict: bool,
    pub heart: HeartScope,
    pub serial: bool,
    pub nwf_heart: NwfHeartScope,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Campaign {
    pub target: Target,
    pub max_states: usize,
    pub flags: CampaignFlags,
    /// Fail records written in full; the rest are only counted.
    pub record_limit: usize,
}

impl Campaign {
    pub fn new(target: Target, max_states: usize) -> Self {
        Campaign {
            target,
            max_states,
            flags: CampaignFlags::default(),
            record_limit: 20,
        }
    }

    pub fn with_flags(mut self, flags: CampaignFlags) -> Self {
        self.flags = flags;
        self
    }
}

/// Per-model outcome.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Holds,
    /// The claim holds only vacuously or the model is outside its intended scope.
    Degenerate(String),
    Fails(String),
}

/// A failing model with the text that reproduces it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailRecord {
    /// Position in the enumeration.
    pub index: usize,
    pub reason: String,
    pub model_text: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Summary {
    pub models: usize,
    pub claim_holds: usize,
    pub claim_fails: usize,
    pub degenerate: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CampaignReport {
    pub campaign: Campaign,
    pub summary: Summary,
    /// At most `record_limit` records.
    pub fails: Vec<FailRecord>,
    /// Extra findings, one line each.
    pub notes: Vec<String>,
    /// Named verdict records, such as the two-cycle frame.
    pub verdicts: Vec<String>,
}

impl CampaignReport {
    pub fn render(&self) -> String {
        let c = &self.campaign;
        let mut out = String::new();
        let _ = writeln!(out, "campaign {} max_states={}", c.target, c.max_states);
        for f in &self.fails {
            let _ = writeln!(out, "--- fail #{}: {}", f.index, f.reason);
            out.push_str(&f.model_text);
            let _ = writeln!(out, "--- end");
        }
        let omitted = self.summary.claim_fails.saturating_sub(self.fails.len());
        if omitted > 0 {
            let _ = writeln!(out, "({omitted} further fail records omitted)");
        }
        for v in &self.verdicts {
            let _ = writeln!(out, "verdict {v}");
        }
        for n in &self.notes {
            let _ = writeln!(out, "note {n}");
        }
        let _ = writeln!(out, "[summary]");
        let _ = writeln!(out, "target={}", c.target);
        let _ = writeln!(out, "max_states={}", c.max_states);
        match c.target {
            Target::Lemma1 | Target::Theorem12 => {
                let _ = writeln!(out, "strict={}", c.flags.strict);
                let _ = writeln!(out, "heart={}", c.flags.heart);
                let _ = writeln!(out, "serial={}", c.flags.serial);
            }
            Target::Theorem22 | Target::Theorem23 | Target::ValidityLists => {
                let _ = writeln!(out, "nwf_heart={}", c.flags.nwf_heart);
            }
            _ => {}
        }
        let s = &self.summary;
        let _ = writeln!(out, "models={}", s.models);
        let _ = writeln!(out, "claim_holds={}", s.claim_holds);
        let _ = writeln!(out, "claim_fails={}", s.claim_fails);
        let _ = writeln!(out, "degenerate={}", s.degenerate);
        out
    }
}

/// Merges ordered outcomes into a report body.
fn tally(
    campaign: &Campaign,
    outcomes: impl IntoIterator<Item = (Outcome, Option<String>)>,
) -> (Summary, Vec<FailRecord>) {
    let mut s = Summary::default();
    let mut fails = Vec::new();
    for (index, (outcome, text)) in outcomes.into_iter().enumerate() {
        s.models += 1;
        match outcome {
            Outcome::Holds => s.claim_holds += 1,
            Outcome::Degenerate(_) => s.degenerate += 1,
            Outcome::Fails(reason) => {
                s.claim_fails += 1;
                if fails.len() < campaign.record_limit {
                    fails.push(FailRecord {
                        index,
                        reason,
                        model_text: text.unwrap_or_default(),
                    });
                }
            }
        }
    }
    (s, fails)
}

/// The lemma claim on one frame.
pub fn lemma1_outcome(m: &KripkeModel, heart: HeartScope) -> Outcome {
    let r = m.check_lemma_1(heart);
    let names = m.names();
    if !r.claim_holds() {
        let mut why = Vec::new();
        if r.premise_holds && !r.part1_valid {
            why.push(format!(
                "part 1 fails at {}",
                crate::set::render_set(r.part1_counterwitnesses, names)
            ));
        }
        if !r.part2_valid {
            why.push(format!(
                "part 2 fails at {}",
                crate::set::render_set(r.part2_counterwitnesses, names)
            ));
        }
        Outcome::Fails(why.join("; "))
    } else if !r.premise_holds {
        Outcome::Degenerate("premise Hab Ub unsatisfiable".into())
    } else {
        Outcome::Holds
    }
}

/// The seven-slot claim on one frame: some slot must be a hole.
pub fn theorem12_outcome(m: &KripkeModel, heart: HeartScope) -> Outcome {
    let r = m.find_holes(heart);
    if !r.any_hole() {
        Outcome::Fails("no hole in any of the seven slots".into())
    } else if m.ua().is_empty() || m.ub().is_empty() {
        Outcome::Degenerate("one type is empty".into())
    } else {
        Outcome::Holds
    }
}

fn describe_subject(s: &Subject, names: &[String]) -> String {
    match s {
        Subject::Formula(f) => f.to_string(),
        Subject::Extension(e) => format!("extension {}", crate::set::render_set(*e, names)),
    }
}

pub fn theorem22_outcome(
    m: &HypersetModel,
    family: &FormulaFamily,
    heart: NwfHeartScope,
) -> Outcome {
    let subjects = (0..m.len()).any(|w| {
        let c = m.classify(w);
        c.is_quine || c.is_urelement
    });
    let v = m
        .check_theorem_2_2(family, heart)
        .expect("family atoms are valued by the enumeration");
    match v.first() {
        Some(first) => Outcome::Fails(format!(
            "{} at {} for {} ({} violations)",
            match first.failure {
                Theorem22Failure::Assumption => format!("H{} is not falsity", first.dir),
                Theorem22Failure::Belief => format!("[{}] fails", first.dir),
            },
            m.names()[first.state],
            describe_subject(&first.subject, m.names()),
            v.len()
        )),
        None if !subjects => Outcome::Degenerate("no Quine state or urelement".into()),
        None => Outcome::Holds,
    }
}

pub fn theorem23_outcome(m: &HypersetModel, heart: NwfHeartScope) -> Outcome {
    let v = m.check_theorem_2_3(heart);
    match v.first() {
        Some(first) => Outcome::Fails(format!(
            "{} satisfies H{} true outside Ua & Ub",
            m.names()[first.state],
            first.dir
        )),
        None if !(0..m.len()).any(|w| m.classify(w).is_quine) => {
            Outcome::Degenerate("no Quine state".into())
        }
        None => Outcome::Holds,
    }
}

pub fn validity_lists_outcome(m: &HypersetModel) -> Outcome {
    let r = m.check_validity_lists();
    let failing: Vec<String> = r
        .claimed_valid
        .iter()
        .filter(|(_, v)| !v)
        .map(|(f, _)| f.to_string())
        .collect();
    if failing.is_empty() {
        Outcome::Holds
    } else {
        Outcome::Fails(format!("not valid: {}", failing.join(", ")))
    }
}

/// Every node has a member of the other type.
fn cross_serial(m: &HypersetModel) -> bool {
    (0..m.len()).all(|x| {
        let other = if m.ua().contains(x) { m.ub() } else { m.ua() };
        !(m.members(x) & other).is_empty()
    })
}

/// Model family used by the `theorem22` target: depth 2 over `Ua`, `Ub`, `p`.
pub fn theorem22_family() -> FormulaFamily {
    FormulaFamily::bounded(&["p"], 2)
}

fn topology_text(t: &ClosedTopology) -> String {
    let names: Vec<String> = (0..t.size()).map(|i| format!("x{i}")).collect();
    format!(
        "carrier: {}\nclosed: {}\n",
        names.join(" "),
        t.render(&names)
    )
}

pub fn run_campaign(c: &Campaign) -> Result<CampaignReport, HarnessError> {
    let mut notes = Vec::new();
    let mut verdicts = Vec::new();
    let (summary, fails) = match c.target {
        Target::Lemma1 | Target::Theorem12 => {
            let flags = KripkeEnumFlags {
                strict: c.flags.strict,
                serial: c.flags.serial,
                dedup_isomorphic: false,
            };
            let shards = kripke_shards(c.max_states, flags)?;
            let heart = c.flags.heart;
            let target = c.target;
            let outcomes: Vec<(Outcome, Option<String>)> = shards
                .par_iter()
                .flat_map_iter(|s| {
                    s.models()
                        .map(|m| {
                            let o = match target {
                                Target::Lemma1 => lemma1_outcome(&m, heart),
                                _ => theorem12_outcome(&m, heart),
                            };
                            let text = matches!(o, Outcome::Fails(_)).then(|| m.to_text());
                            (o, text)
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            verdicts.push(two_cycle_verdict(c.target, c.flags));
            tally(c, outcomes)
        }
        Target::Theorem22 | Target::Theorem23 | Target::ValidityLists => {
            let flags = HypersetEnumFlags {
                allow_overlap: c.target == Target::Theorem23,
                atom: (c.target == Target::Theorem22).then(|| "p".to_string()),
                canonical_only: false,
            };
            let shards = hyperset_shards(c.max_states, &flags)?;
            let family = theorem22_family();
            let heart = c.flags.nwf_heart;
            let target = c.target;
            let outcomes: Vec<(Outcome, Option<String>, bool)> = shards
                .par_iter()
                .flat_map_iter(|s| {
                    s.models()
                        .map(|m| {
                            let o = match target {
                                Target::Theorem22 => theorem22_outcome(&m, &family, heart),
                                Target::Theorem23 => theorem23_outcome(&m, heart),
                                _ => validity_lists_outcome(&m),
                            };
                            let failed = matches!(o, Outcome::Fails(_));
                            let text = failed.then(|| m.to_text());
                            (o, text, failed && cross_serial(&m))
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            if target == Target::ValidityLists {
                let serial_fails = outcomes.iter().filter(|o| o.2).count();
                notes.push(format!(
                    "fails among models where every node has a member of the other type: {serial_fails}"
                ));
            }
            if target == Target::Theorem22 {
                notes.push(format!(
                    "formulas per model: {} plus every subset of nodes as an extension",
                    family.len()
                ));
            }
            tally(c, outcomes.into_iter().map(|(o, t, _)| (o, t)))
        }
        Target::Adjunction | Target::BoundaryLaw => {
            bound("topology", TOPOLOGY_LIMIT, c.max_states)?;
            let tops: Vec<ClosedTopology> =
                (0..=c.max_states).flat_map(enumerate_topologies).collect();
            let target = c.target;
            let outcomes: Vec<(Outcome, Option<String>, usize)> = tops
                .par_iter()
                .map(|t| {
                    let r = check_laws(t);
                    let o = match target {
                        Target::Adjunction if !r.adjunction.is_empty() => {
                            Outcome::Fails(format!("{} adjunction violations", r.adjunction.len()))
                        }
                        Target::BoundaryLaw
                            if !(r.join.is_empty()
                                && r.boundary_overlap.is_empty()
                                && r.pneg_minimality.is_empty()) =>
                        {
                            Outcome::Fails(format!(
                                "join {}, boundary overlap {}, minimality {}",
                                r.join.len(),
                                r.boundary_overlap.len(),
                                r.pneg_minimality.len()
                            ))
                        }
                        _ => Outcome::Holds,
                    };
                    let boundary_mismatch = t
                        .closed_sets()
                        .iter()
                        .filter(|&&x| t.boundary(x) != t.boundary(t.pneg(x)))
                        .count();
                    let text = matches!(o, Outcome::Fails(_)).then(|| topology_text(t));
                    (o, text, boundary_mismatch)
                })
                .collect();
            if target == Target::BoundaryLaw {
                let mismatched_sets: usize = outcomes.iter().map(|o| o.2).sum();
                let mismatched_tops = outcomes.iter().filter(|o| o.2 > 0).count();
                notes.push(format!(
                    "closed sets X with boundary(X) != boundary(~X): {mismatched_sets} in {mismatched_tops} topologies"
                ));
            }
            tally(c, outcomes.into_iter().map(|(o, t, _)| (o, t)))
        }
        Target::LawvereScan => {
            let mut outcomes = Vec::new();
            for a in 1..=c.max_states {
                for y in 1..=c.max_states {
                    if a * y > SEARCH_LIMIT {
                        continue;
                    }
                    let r = search_wps(a, y).expect("within limit");
                    let fixed_ok = r
                        .instances
                        .iter()
                        .all(|s| s.check_fixed_point_property().holds());
                    let o = if y >= 2 && !r.exhausted() {
                        Outcome::Fails(format!("|A|={a} |Y|={y}: point-surjective map found"))
                    } else if y == 1 && r.exhausted() {
                        Outcome::Fails(format!("|A|={a} |Y|=1: no point-surjective map"))
                    } else if !fixed_ok {
                        Outcome::Fails(format!("|A|={a} |Y|={y}: diagonal point not fixed"))
                    } else {
                        Outcome::Holds
                    };
                    notes.push(format!(
                        "|A|={a} |Y|={y}: {} maps, {} point-surjective",
                        r.candidates,
                        r.instances.len()
                    ));
                    let text =
                        matches!(o, Outcome::Fails(_)).then(|| format!("sizeA: {a}\nsizeY: {y}\n"));
                    outcomes.push((o, text));
                }
            }
            tally(c, outcomes)
        }
    };
    Ok(CampaignReport {
        campaign: c.clone(),
        summary,
        fails,
        notes,
        verdicts,
    })
}

/// The frame `x -> y -> x` with `x` in Ua and `y` in Ub.
pub fn two_cycle() -> KripkeModel {
    KripkeModel::parse(crate::fixtures::TWO_CYCLE).expect("bundled fixture")
}

fn two_cycle_verdict(target: Target, flags: CampaignFlags) -> String {
    let m = two_cycle();
    let outcome = match target {
        Target::Lemma1 => lemma1_outcome(&m, flags.heart),
        _ => theorem12_outcome(&m, flags.heart),
    };
    let detail = match target {
        Target::Lemma1 => {
            let r = m.check_lemma_1(flags.heart);
            format!(
                "premise={} part1_valid={} part2_valid={} D={}",
                r.premise_holds,
                r.part1_valid,
                r.part2_valid,
                crate::set::render_set(m.diagonal_d(), m.names())
            )
        }
        _ => {
            let r = m.find_holes(flags.heart);
            let present: Vec<String> = r
                .slots
                .iter()
                .filter(|s| s.present())
                .map(|s| format!("{} at {}", s.kind, s.formula))
                .collect();
            format!("holes=[{}]", present.join(", "))
        }
    };
    let word = match outcome {
        Outcome::Holds => "claim holds".to_string(),
        Outcome::Degenerate(why) => format!("degenerate ({why})"),
        Outcome::Fails(why) => format!("claim FAILS ({why})"),
    };
    format!("two-cycle {target} {}: {word}; {detail}", flags.heart)
}

/// Re-checks a dumped fail record. Returns whether the model still fails.
pub fn recheck_fail(c: &Campaign, model_text: &str) -> Result<bool, HarnessError> {
    let failed = |o: Outcome| matches!(o, Outcome::Fails(_));
    Ok(match c.target {
        Target::Lemma1 => failed(lemma1_outcome(
            &KripkeModel::parse(model_text)?,
            c.flags.heart,
        )),
        Target::Theorem12 => failed(theorem12_outcome(
            &KripkeModel::parse(model_text)?,
            c.flags.heart,
        )),
        Target::Theorem22 => failed(theorem22_outcome(
            &HypersetModel::parse(model_text)?,
            &theorem22_family(),
            c.flags.nwf_heart,
        )),
        Target::Theorem23 => failed(theorem23_outcome(
            &HypersetModel::parse(model_text)?,
            c.flags.nwf_heart,
        )),
        Target::ValidityLists => failed(validity_lists_outcome(&HypersetModel::parse(model_text)?)),
        Target::Adjunction | Target::BoundaryLaw | Target::LawvereScan => {
            return Err(HarnessError::UnknownTarget(format!(
                "{} records do not carry model files",
                c.target
            )))
        }
    })
}
