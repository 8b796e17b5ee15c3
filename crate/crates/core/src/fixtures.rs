//! Named reference models and the claims each must reproduce exactly.

use std::fmt;

use thiserror::Error;

use crate::eval::RelationalSemantics;
use crate::formula::{parse, Agent};
use crate::hyperset::{graph_to_structure, HypersetModel, LeafKind, NwfHeartScope, RootedGraph};
use crate::paratopo::ParaTopoModel;
use crate::set::{render_set, StateSet};

pub const PROP24: &str = include_str!("../fixtures/prop24.nwf");
pub const PROP25: &str = include_str!("../fixtures/prop25.nwf");
pub const NINESTATE: &str = include_str!("../fixtures/ninestate.nwf");
pub const QUINE_PAIR: &str = include_str!("../fixtures/quine_pair.nwf");
pub const SINGLETON_QUINE: &str = include_str!("../fixtures/singleton_quine.nwf");
pub const EXAMPLE27: &str = include_str!("../fixtures/example27.nwf");
pub const BK_TOPO: &str = include_str!("../fixtures/bk_topo.paratopo");
pub const TWO_CYCLE: &str = include_str!("../fixtures/two_cycle.kripke");

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimResult {
    pub claim: String,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureResult {
    pub name: &'static str,
    pub claims: Vec<ClaimResult>,
}

impl FixtureResult {
    pub fn passed(&self) -> bool {
        self.claims.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub fixtures: Vec<FixtureResult>,
}

impl FixtureReport {
    pub fn all_passed(&self) -> bool {
        self.fixtures.iter().all(FixtureResult::passed)
    }

    pub fn get(&self, name: &str) -> Option<&FixtureResult> {
        self.fixtures.iter().find(|f| f.name == name)
    }
}

impl fmt::Display for FixtureReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for fx in &self.fixtures {
            writeln!(
                f,
                "{} {}",
                if fx.passed() { "PASS" } else { "FAIL" },
                fx.name
            )?;
            for c in &fx.claims {
                writeln!(
                    f,
                    "  [{}] {}",
                    if c.passed { "ok" } else { "FAILED" },
                    c.claim
                )?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FixtureError {
    /// At least one claim did not reproduce; the full report is attached.
    #[error("fixture claims failed:\n{0}")]
    ClaimsFailed(FixtureReport),
    /// A bundled fixture did not load.
    #[error("fixture `{name}` does not load: {message}")]
    Load { name: &'static str, message: String },
}

/// A named model with its claim list.
pub struct Fixture {
    pub name: &'static str,
    pub source: &'static str,
    check: fn() -> Result<Vec<ClaimResult>, String>,
}

impl Fixture {
    pub fn check(&self) -> Result<FixtureResult, FixtureError> {
        let claims = (self.check)().map_err(|message| FixtureError::Load {
            name: self.name,
            message,
        })?;
        Ok(FixtureResult {
            name: self.name,
            claims,
        })
    }
}

pub struct FixtureRegistry {
    fixtures: Vec<Fixture>,
}

impl Default for FixtureRegistry {
    fn default() -> Self {
        Self::standard()
    }
}

impl FixtureRegistry {
    pub fn standard() -> Self {
        let fx = |name, source, check| Fixture {
            name,
            source,
            check,
        };
        FixtureRegistry {
            fixtures: vec![
                fx("prop24", PROP24, check_prop24),
                fx("prop25", PROP25, check_prop25),
                fx("ninestate", NINESTATE, check_ninestate),
                fx("quine_pair", QUINE_PAIR, check_quine_pair),
                fx("singleton_quine", SINGLETON_QUINE, check_singleton_quine),
                fx("example27", EXAMPLE27, check_example27),
                fx("bk_topo", BK_TOPO, check_bk_topo),
            ],
        }
    }

    pub fn fixtures(&self) -> &[Fixture] {
        &self.fixtures
    }

    pub fn get(&self, name: &str) -> Option<&Fixture> {
        self.fixtures.iter().find(|f| f.name == name)
    }

    pub fn run(&self) -> Result<FixtureReport, FixtureError> {
        let fixtures = self
            .fixtures
            .iter()
            .map(Fixture::check)
            .collect::<Result<_, _>>()?;
        Ok(FixtureReport { fixtures })
    }
}

/// Runs every standard fixture; any failed claim is an error.
pub fn verify_fixtures() -> Result<FixtureReport, FixtureError> {
    let report = FixtureRegistry::standard().run()?;
    if report.all_passed() {
        Ok(report)
    } else {
        Err(FixtureError::ClaimsFailed(report))
    }
}

fn load(text: &str) -> Result<HypersetModel, String> {
    HypersetModel::parse(text).map_err(|e| e.to_string())
}

/// `state |= formula` (or its negation) under the default semantics.
fn sat(
    m: &HypersetModel,
    state: &str,
    formula: &str,
    expected: bool,
) -> Result<ClaimResult, String> {
    let f = parse(formula).map_err(|e| e.to_string())?;
    let x = m
        .index_of(state)
        .ok_or_else(|| format!("no state {state}"))?;
    let got = m.nwf_extension(&f).map_err(|e| e.to_string())?.contains(x);
    Ok(ClaimResult {
        claim: format!("{state} {} {formula}", if expected { "|=" } else { "|/=" }),
        passed: got == expected,
    })
}

fn extension_is(m: &HypersetModel, formula: &str, states: &[&str]) -> Result<ClaimResult, String> {
    let f = parse(formula).map_err(|e| e.to_string())?;
    let want: StateSet = states
        .iter()
        .map(|s| m.index_of(s).ok_or_else(|| format!("no state {s}")))
        .collect::<Result<_, _>>()?;
    let got = m.nwf_extension(&f).map_err(|e| e.to_string())?;
    Ok(ClaimResult {
        claim: format!(
            "[{formula}] = {} (got {})",
            render_set(want, m.names()),
            render_set(got, m.names())
        ),
        passed: got == want,
    })
}

/// Slot `slot` of the seven is absent and `witness` fills it.
fn slot_filled(
    m: &HypersetModel,
    slot: usize,
    witness: &str,
    filler: &str,
) -> Result<ClaimResult, String> {
    let report = m.nwf_find_holes(NwfHeartScope::default());
    let s = &report.slots[slot];
    let inner = sat(m, witness, filler, true)?;
    Ok(ClaimResult {
        claim: format!("no {} at {} ({})", s.kind, s.formula, inner.claim),
        passed: !s.present() && inner.passed,
    })
}

fn check_prop24() -> Result<Vec<ClaimResult>, String> {
    let m = load(PROP24)?;
    Ok(vec![
        sat(&m, "w", "Hab Ub", true)?,
        sat(&m, "w", "[ab] [ba] [ab] Hba Ua", true)?,
        sat(&m, "w", "!D+", true)?,
    ])
}

fn check_prop25() -> Result<Vec<ClaimResult>, String> {
    let m = load(PROP25)?;
    Ok(vec![
        extension_is(&m, "Ua & D+", &["u"])?,
        sat(&m, "v", "Hba (Ua & D+)", true)?,
        sat(&m, "w", "[ab] Hba (Ua & D+)", true)?,
    ])
}

fn check_ninestate() -> Result<Vec<ClaimResult>, String> {
    let m = load(NINESTATE)?;
    Ok(vec![
        extension_is(&m, "Ua & D+", &["u"])?,
        slot_filled(&m, 0, "s", "Hba Ua")?,
        slot_filled(&m, 1, "r", "Hab Ub")?,
        slot_filled(&m, 2, "x", "[ab] Hba Ua")?,
        slot_filled(&m, 3, "y", "[ba] [ab] Hba Ua")?,
        slot_filled(&m, 4, "z", "[ab] [ba] [ab] Hba Ua")?,
        slot_filled(&m, 5, "v", "Hba (Ua & D+)")?,
        slot_filled(&m, 6, "w", "[ab] Hba (Ua & D+)")?,
    ])
}

fn check_quine_pair() -> Result<Vec<ClaimResult>, String> {
    let m = load(QUINE_PAIR)?;
    Ok(vec![
        sat(&m, "w", "Hab q", true)?,
        sat(&m, "w", "Hab p", false)?,
        sat(&m, "w", "[ab] p & [ab] q", true)?,
    ])
}

fn check_singleton_quine() -> Result<Vec<ClaimResult>, String> {
    let m = load(SINGLETON_QUINE)?;
    let sem = m.eval(NwfHeartScope::default());
    let valid = |f: &str| {
        sem.is_valid(&parse(f).expect("fixed formula"))
            .expect("atom-free")
    };
    let mut claims = vec![
        sat(&m, "w", "[ab] Ua <-> true", true)?,
        ClaimResult {
            claim: "[ab] Ua <-> false is not valid".into(),
            passed: !valid("[ab] Ua <-> false"),
        },
        sat(&m, "w", "[ab] Ub -> Ub", true)?,
        sat(&m, "w", "[ab] Ub -> [ba] [ab] Ub", true)?,
        sat(&m, "w", "[ab] Ub -> [ab] [ab] Ub", true)?,
    ];
    let w = m.index_of("w").ok_or("no state w")?;
    claims.push(ClaimResult {
        claim: "Quine state assuming true lies in Ua & Ub".into(),
        passed: m.check_theorem_2_3(NwfHeartScope::default()).is_empty()
            && (m.ua() & m.ub()).contains(w),
    });
    Ok(claims)
}

/// The three-node game graph `w -L-> u`, `w -R-> v`, `u -> w`.
pub fn example27_graph() -> RootedGraph {
    RootedGraph {
        names: vec!["w".into(), "u".into(), "v".into()],
        edges: vec![
            (0, 1, Some("L".into())),
            (0, 2, Some("R".into())),
            (1, 0, None),
        ],
        root: 0,
    }
}

fn check_example27() -> Result<Vec<ClaimResult>, String> {
    let expected = load(EXAMPLE27)?;
    let built = graph_to_structure(
        &example27_graph(),
        &[Agent::A, Agent::B, Agent::B],
        LeafKind::Urelement,
    )
    .map_err(|e| e.to_string())?;
    let idx = |m: &HypersetModel, s: &str| m.index_of(s).expect("fixed names");
    let members = |m: &HypersetModel, s: &str| -> Vec<String> {
        let names = m.names();
        let mut v: Vec<String> = m
            .members(idx(m, s))
            .iter()
            .map(|i| names[i].clone())
            .collect();
        v.sort_unstable();
        v
    };
    Ok(vec![
        ClaimResult {
            claim: "w = {u, v}".into(),
            passed: members(&built, "w") == ["u", "v"],
        },
        ClaimResult {
            claim: "u = {w}".into(),
            passed: members(&built, "u") == ["w"],
        },
        ClaimResult {
            claim: "decoration equals the expected model file".into(),
            passed: built == expected,
        },
    ])
}

fn check_bk_topo() -> Result<Vec<ClaimResult>, String> {
    let m = ParaTopoModel::parse(BK_TOPO).map_err(|e| e.to_string())?;
    let names = m.names();
    let a1 = StateSet::singleton(m.index_of("a1").ok_or("no a1")?);
    let w = m.bk_witnesses();
    let d = m.discrete_counterpart().bk_witnesses();
    Ok(vec![
        ClaimResult {
            claim: format!(
                "diagonal = {{a1}} (got {})",
                render_set(m.diagonal(), &names)
            ),
            passed: m.diagonal() == a1,
        },
        ClaimResult {
            claim: format!("witnesses = {{a1}} (got {})", render_set(w, &names)),
            passed: w == a1,
        },
        ClaimResult {
            claim: format!(
                "discrete counterpart witnesses = {{}} (got {})",
                render_set(d, &names)
            ),
            passed: d.is_empty(),
        },
    ])
}
