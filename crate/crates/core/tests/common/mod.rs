//! Generators shared by the integration tests.
#![allow(dead_code)]

use bkw_core::formula::{Agent, Dir, Formula, Language};
use bkw_core::hyperset::{HypersetModel, NodeKind};
use bkw_core::StateSet;
use bkw_core::{NwfHeartScope, RelationalSemantics};
use proptest::prelude::*;
use rand::Rng;

pub const ATOMS: [&str; 3] = ["p", "q", "r1"];

fn leaves(lang: Option<Language>) -> Vec<Formula> {
    let mut v = vec![Formula::Top, Formula::Bot, Formula::Ua, Formula::Ub];
    v.extend(ATOMS.iter().map(|a| Formula::atom(*a)));
    match lang {
        Some(Language::Relational) => v.extend([Formula::Dclass, Formula::Dplus]),
        Some(Language::Topological) => v.push(Formula::Dtopo),
        None => v.extend([Formula::Dclass, Formula::Dplus, Formula::Dtopo]),
    }
    v
}

/// Random AST of modal and boolean depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, depth: usize, lang: Option<Language>) -> Formula {
    let leaves = leaves(lang);
    if depth == 0 || rng.gen_bool(0.25) {
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    let sub = |rng: &mut R| random_formula(rng, depth - 1, lang);
    let dir = if rng.gen_bool(0.5) { Dir::Ab } else { Dir::Ba };
    let agent = if rng.gen_bool(0.5) {
        Agent::A
    } else {
        Agent::B
    };
    let relational = lang != Some(Language::Topological);
    let topological = lang != Some(Language::Relational);
    loop {
        let pick = rng.gen_range(0..11);
        return match pick {
            0 => Formula::not(sub(rng)),
            1 => Formula::and(sub(rng), sub(rng)),
            2 => Formula::or(sub(rng), sub(rng)),
            3 => Formula::imp(sub(rng), sub(rng)),
            4 => Formula::iff(sub(rng), sub(rng)),
            5 if relational => Formula::boxed(dir, sub(rng)),
            6 if relational => Formula::heart(dir, sub(rng)),
            7 if relational => Formula::diamond(dir, sub(rng)),
            8 if topological => Formula::pneg(sub(rng)),
            9 if topological => Formula::tbel(agent, sub(rng)),
            10 if topological => {
                if rng.gen_bool(0.5) {
                    Formula::tasm(agent, sub(rng))
                } else {
                    Formula::tdia(agent, sub(rng))
                }
            }
            _ => continue,
        };
    }
}

/// Proptest strategy over formulas of one language (or both when `None`).
pub fn arb_formula(lang: Option<Language>) -> impl Strategy<Value = Formula> {
    let leaf = prop::sample::select(leaves(lang));
    let relational = lang != Some(Language::Topological);
    let topological = lang != Some(Language::Relational);
    leaf.prop_recursive(4, 48, 2, move |inner| {
        let dir = prop_oneof![Just(Dir::Ab), Just(Dir::Ba)];
        let agent = prop_oneof![Just(Agent::A), Just(Agent::B)];
        let mut options: Vec<BoxedStrategy<Formula>> = vec![
            inner.clone().prop_map(Formula::not).boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Formula::and(l, r))
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Formula::or(l, r))
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Formula::imp(l, r))
                .boxed(),
            (inner.clone(), inner.clone())
                .prop_map(|(l, r)| Formula::iff(l, r))
                .boxed(),
        ];
        if relational {
            options.push(
                (dir.clone(), inner.clone())
                    .prop_map(|(d, f)| Formula::boxed(d, f))
                    .boxed(),
            );
            options.push(
                (dir.clone(), inner.clone())
                    .prop_map(|(d, f)| Formula::heart(d, f))
                    .boxed(),
            );
            options.push(
                (dir, inner.clone())
                    .prop_map(|(d, f)| Formula::diamond(d, f))
                    .boxed(),
            );
        }
        if topological {
            options.push(inner.clone().prop_map(Formula::pneg).boxed());
            options.push(
                (agent.clone(), inner.clone())
                    .prop_map(|(a, f)| Formula::tbel(a, f))
                    .boxed(),
            );
            options.push(
                (agent.clone(), inner.clone())
                    .prop_map(|(a, f)| Formula::tasm(a, f))
                    .boxed(),
            );
            options.push(
                (agent, inner)
                    .prop_map(|(a, f)| Formula::tdia(a, f))
                    .boxed(),
            );
        }
        prop::strategy::Union::new(options)
    })
}

/// Random membership graph with disjoint types and every atom of [`ATOMS`] valued.
pub fn random_hyperset<R: Rng>(rng: &mut R, n: usize, edge_p: f64) -> HypersetModel {
    let kinds: Vec<NodeKind> = (0..n)
        .map(|_| {
            if rng.gen_bool(0.2) {
                NodeKind::Urelement
            } else {
                NodeKind::Set
            }
        })
        .collect();
    let members = kinds
        .iter()
        .map(|k| match k {
            NodeKind::Urelement => StateSet::EMPTY,
            NodeKind::Set => (0..n).filter(|_| rng.gen_bool(edge_p)).collect(),
        })
        .collect();
    let ua: StateSet = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    let mut m = HypersetModel::from_parts(kinds, members, ua, ua.complement(n), false).unwrap();
    for a in ATOMS {
        let s = StateSet::from_bits(rng.gen::<u64>() & StateSet::full(n).bits());
        m = m.with_atom(a, s).unwrap();
    }
    m
}

/// Proptest strategy over membership graphs with `lo..=hi` nodes.
pub fn arb_hyperset(lo: usize, hi: usize) -> impl Strategy<Value = HypersetModel> {
    (lo..=hi, any::<u64>()).prop_map(|(n, seed)| {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        random_hyperset(&mut rng, n, 0.35)
    })
}

/// Assumption ranges under which extensions are bisimulation-invariant.
pub const INVARIANT_SCOPES: [NwfHeartScope; 2] =
    [NwfHeartScope::SelfAndMembers, NwfHeartScope::Members];

/// Checks that every operator commutes with pulling sets back along the
/// quotient map, on every union of classes. Together with types and atoms
/// being preserved this gives invariance for formulas of any depth without
/// the diagonal constant. Returns the number of failed comparisons.
pub fn operator_violations(m: &HypersetModel) -> usize {
    let q = m.canonicalize();
    let mut bad = 0;
    bad += usize::from(q.preimage(q.model.ua()) != m.ua());
    bad += usize::from(q.preimage(q.model.ub()) != m.ub());
    for (atom, &s) in m.valuation() {
        bad += usize::from(q.preimage(q.model.valuation()[atom]) != s);
    }
    for heart in INVARIANT_SCOPES {
        let (big, small) = (m.eval(heart), q.model.eval(heart));
        for s in StateSet::all_subsets(q.model.len()) {
            let t = q.preimage(s);
            for d in Dir::ALL {
                bad += usize::from(q.preimage(small.box_op(d, s)) != big.box_op(d, t));
                bad += usize::from(q.preimage(small.diamond_op(d, s)) != big.diamond_op(d, t));
                bad += usize::from(q.preimage(small.heart_op(d, s)) != big.heart_op(d, t));
            }
        }
    }
    bad
}
