//! Hole scanning and the two diagonal lemmas, for any relational structure.
//!
//! A structure has a hole at `phi` when `Ub & phi` is satisfiable but
//! `Hab phi` is not, or `Ua & phi` is satisfiable but `Hba phi` is not. A big
//! hole is the same with `[ij]` in place of `Hij`. The seven slots scanned here
//! are the ones the impossibility theorem says cannot all be filled.

use std::fmt;

use crate::eval::{EvalError, RelationalSemantics};
use crate::formula::{Dir, Formula};
use crate::set::StateSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HoleKind {
    /// Missing assumption.
    Hole,
    /// Missing belief.
    BigHole,
}

impl fmt::Display for HoleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HoleKind::Hole => "hole",
            HoleKind::BigHole => "big hole",
        })
    }
}

/// Evidence for one slot of the scan.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotReport {
    pub kind: HoleKind,
    pub formula: Formula,
    /// A state satisfying `Ub & phi`.
    pub ub_witness: Option<usize>,
    /// A state satisfying `Hab phi` (or `[ab] phi` for a big hole).
    pub ab_witness: Option<usize>,
    /// A state satisfying `Ua & phi`.
    pub ua_witness: Option<usize>,
    /// A state satisfying `Hba phi` (or `[ba] phi`).
    pub ba_witness: Option<usize>,
}

impl SlotReport {
    pub fn present(&self) -> bool {
        (self.ub_witness.is_some() && self.ab_witness.is_none())
            || (self.ua_witness.is_some() && self.ba_witness.is_none())
    }

    pub fn describe(&self, names: &[String]) -> String {
        let name = |w: Option<usize>| w.map_or("-".to_string(), |i| names[i].clone());
        let op = match self.kind {
            HoleKind::Hole => "H",
            HoleKind::BigHole => "[]",
        };
        format!(
            "{} at {}: {} (Ub&phi: {}, {op}ab: {}, Ua&phi: {}, {op}ba: {})",
            self.kind,
            self.formula,
            if self.present() { "PRESENT" } else { "absent" },
            name(self.ub_witness),
            name(self.ab_witness),
            name(self.ua_witness),
            name(self.ba_witness),
        )
    }
}

/// The seven slots, in the theorem's order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HoleReport {
    pub slots: Vec<SlotReport>,
}

impl HoleReport {
    pub fn any_hole(&self) -> bool {
        self.slots.iter().any(SlotReport::present)
    }

    pub fn render(&self, names: &[String]) -> String {
        let mut out = String::new();
        for slot in &self.slots {
            out.push_str(&slot.describe(names));
            out.push('\n');
        }
        out.push_str(&format!("any_hole: {}\n", self.any_hole()));
        out
    }
}

/// The seven formulas with their kinds; `diag` is `D` or `D+`.
pub fn theorem_slots(diag: &Formula) -> Vec<(HoleKind, Formula)> {
    let heart_ba_ua = Formula::heart(Dir::Ba, Formula::Ua);
    let ua_diag = Formula::and(Formula::Ua, diag.clone());
    vec![
        (HoleKind::Hole, Formula::Ua),
        (HoleKind::Hole, Formula::Ub),
        (HoleKind::BigHole, heart_ba_ua.clone()),
        (
            HoleKind::BigHole,
            Formula::boxed(Dir::Ab, heart_ba_ua.clone()),
        ),
        (
            HoleKind::BigHole,
            Formula::boxed(Dir::Ba, Formula::boxed(Dir::Ab, heart_ba_ua)),
        ),
        (HoleKind::Hole, ua_diag.clone()),
        (HoleKind::BigHole, Formula::heart(Dir::Ba, ua_diag)),
    ]
}

pub fn scan_slot<S: RelationalSemantics + ?Sized>(
    sem: &S,
    kind: HoleKind,
    formula: Formula,
) -> Result<SlotReport, EvalError> {
    let phi = sem.extension(&formula)?;
    let op = |dir: Dir| match kind {
        HoleKind::Hole => sem.heart_op(dir, phi),
        HoleKind::BigHole => sem.box_op(dir, phi),
    };
    let ua = sem.type_set(crate::formula::Agent::A);
    let ub = sem.type_set(crate::formula::Agent::B);
    Ok(SlotReport {
        kind,
        ub_witness: (ub & phi).first(),
        ab_witness: op(Dir::Ab).first(),
        ua_witness: (ua & phi).first(),
        ba_witness: op(Dir::Ba).first(),
        formula,
    })
}

/// Scans the seven slots of the impossibility theorem.
pub fn find_holes<S: RelationalSemantics + ?Sized>(
    sem: &S,
    diag: &Formula,
) -> Result<HoleReport, EvalError> {
    let slots = theorem_slots(diag)
        .into_iter()
        .map(|(kind, f)| scan_slot(sem, kind, f))
        .collect::<Result<_, _>>()?;
    Ok(HoleReport { slots })
}

/// Outcome of evaluating both parts of the diagonal lemma on one structure.
///
/// Reports only; nothing here asserts that the lemma holds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    /// `Hab Ub` is satisfiable.
    pub premise_holds: bool,
    /// `[ab] [ba] [ab] Hba Ua -> D` is valid.
    pub part1_valid: bool,
    /// `![ab] Hba (Ua & D)` is valid.
    pub part2_valid: bool,
    /// States falsifying the part 1 implication.
    pub part1_counterwitnesses: StateSet,
    /// States falsifying the part 2 formula.
    pub part2_counterwitnesses: StateSet,
}

impl LemmaReport {
    /// Part 1 under its premise, and part 2.
    pub fn claim_holds(&self) -> bool {
        (!self.premise_holds || self.part1_valid) && self.part2_valid
    }
}

pub fn lemma_formulas(diag: &Formula) -> (Formula, Formula, Formula) {
    let premise = Formula::heart(Dir::Ab, Formula::Ub);
    let chain = Formula::boxed(
        Dir::Ab,
        Formula::boxed(
            Dir::Ba,
            Formula::boxed(Dir::Ab, Formula::heart(Dir::Ba, Formula::Ua)),
        ),
    );
    let part1 = Formula::imp(chain, diag.clone());
    let part2 = Formula::not(Formula::boxed(
        Dir::Ab,
        Formula::heart(Dir::Ba, Formula::and(Formula::Ua, diag.clone())),
    ));
    (premise, part1, part2)
}

pub fn check_lemma<S: RelationalSemantics + ?Sized>(
    sem: &S,
    diag: &Formula,
) -> Result<LemmaReport, EvalError> {
    let (premise, part1, part2) = lemma_formulas(diag);
    let all = StateSet::full(sem.size());
    let p1 = sem.extension(&part1)?;
    let p2 = sem.extension(&part2)?;
    Ok(LemmaReport {
        premise_holds: sem.is_satisfiable(&premise)?,
        part1_valid: p1 == all,
        part2_valid: p2 == all,
        part1_counterwitnesses: all - p1,
        part2_counterwitnesses: all - p2,
    })
}
