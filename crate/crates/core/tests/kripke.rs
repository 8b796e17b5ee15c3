mod common;

use std::collections::BTreeMap;

use bkw_core::formula::{Agent, Dir, Formula, Language};
use bkw_core::{HeartScope, KripkeModel, RelationalSemantics, StateSet};
use common::{arb_formula, ATOMS};
use proptest::prelude::*;

/// Direct quantifier reading of every connective, one state at a time.
fn oracle(m: &KripkeModel, heart: HeartScope, f: &Formula) -> Vec<bool> {
    let n = m.len();
    let p = |x: usize, y: usize| m.successors(x).contains(y);
    let ty = |a: Agent, x: usize| match a {
        Agent::A => m.ua().contains(x),
        Agent::B => m.ub().contains(x),
    };
    let sub = |g: &Formula| oracle(m, heart, g);
    match f {
        Formula::Atom(a) => (0..n).map(|x| m.valuation()[a].contains(x)).collect(),
        Formula::Top => vec![true; n],
        Formula::Bot => vec![false; n],
        Formula::Ua => (0..n).map(|x| ty(Agent::A, x)).collect(),
        Formula::Ub => (0..n).map(|x| ty(Agent::B, x)).collect(),
        Formula::Dclass => (0..n)
            .map(|w| (0..n).all(|z| !p(w, z) || !p(z, w)))
            .collect(),
        Formula::Not(g) => sub(g).into_iter().map(|b| !b).collect(),
        Formula::And(l, r) => sub(l).iter().zip(sub(r)).map(|(a, b)| *a && b).collect(),
        Formula::Or(l, r) => sub(l).iter().zip(sub(r)).map(|(a, b)| *a || b).collect(),
        Formula::Imp(l, r) => sub(l).iter().zip(sub(r)).map(|(a, b)| !*a || b).collect(),
        Formula::Iff(l, r) => sub(l).iter().zip(sub(r)).map(|(a, b)| *a == b).collect(),
        Formula::Box(d, g) => {
            let e = sub(g);
            (0..n)
                .map(|x| {
                    ty(d.source(), x) && (0..n).all(|y| !(p(x, y) && ty(d.target(), y)) || e[y])
                })
                .collect()
        }
        Formula::Diamond(d, g) => {
            let e = sub(g);
            (0..n)
                .map(|x| ty(d.source(), x) && (0..n).any(|y| p(x, y) && ty(d.target(), y) && e[y]))
                .collect()
        }
        Formula::Heart(d, g) => {
            let e = sub(g);
            (0..n)
                .map(|x| {
                    ty(d.source(), x)
                        && (0..n).all(|y| match heart {
                            HeartScope::Frame => (p(x, y) && ty(d.target(), y)) == e[y],
                            HeartScope::Local => !ty(d.target(), y) || p(x, y) == e[y],
                        })
                })
                .collect()
        }
        other => panic!("not generated: {other}"),
    }
}

fn no_dplus(f: &Formula) -> bool {
    !bkw_core::formula::print(f).contains("D+")
}

fn arb_kripke() -> impl Strategy<Value = KripkeModel> {
    (
        1usize..=6,
        any::<u64>(),
        any::<u64>(),
        any::<bool>(),
        any::<[u64; 3]>(),
    )
        .prop_map(|(n, ua, edges, strict, vals)| {
            let ua = StateSet::from_bits(ua) & StateSet::full(n);
            let ub = ua.complement(n);
            let succ = (0..n)
                .map(|x| {
                    let row = StateSet::from_bits(edges >> (x * n)) & StateSet::full(n);
                    if strict {
                        row & if ua.contains(x) { ub } else { ua }
                    } else {
                        row
                    }
                })
                .collect();
            let val: BTreeMap<String, StateSet> = ATOMS
                .iter()
                .zip(vals)
                .map(|(a, v)| (a.to_string(), StateSet::from_bits(v) & StateSet::full(n)))
                .collect();
            let names = (0..n).map(|i| format!("w{i}")).collect();
            KripkeModel::new(names, succ, ua, ub, val, strict).unwrap()
        })
}

fn to_set(v: &[bool]) -> StateSet {
    v.iter()
        .enumerate()
        .filter(|(_, b)| **b)
        .map(|(i, _)| i)
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn evaluator_matches_quantifier_oracle(
        m in arb_kripke(),
        f in arb_formula(Some(Language::Relational)).prop_filter("D+ is for membership graphs", no_dplus),
    ) {
        for heart in [HeartScope::Frame, HeartScope::Local] {
            let got = m.eval(heart).extension(&f).unwrap();
            prop_assert_eq!(got, to_set(&oracle(&m, heart, &f)), "{} under {}", f, heart);
        }
    }

    #[test]
    fn model_files_round_trip(m in arb_kripke()) {
        prop_assert_eq!(KripkeModel::parse(&m.to_text()).unwrap(), m);
    }

    #[test]
    fn modalities_live_in_their_source_type(m in arb_kripke(), f in arb_formula(Some(Language::Relational)).prop_filter("", no_dplus)) {

        let sem = m.eval(HeartScope::Frame);
        let inner = sem.extension(&f).unwrap();
        for d in Dir::ALL {
            let src = match d.source() { Agent::A => m.ua(), Agent::B => m.ub() };
            prop_assert!(sem.box_op(d, inner).is_subset(src));
            prop_assert!(sem.heart_op(d, inner).is_subset(src));
            // Assuming implies believing.
            prop_assert!(sem.heart_op(d, inner).is_subset(sem.box_op(d, inner)));
        }
    }
}

fn two_cycle() -> KripkeModel {
    KripkeModel::parse(bkw_core::fixtures::TWO_CYCLE).unwrap()
}

#[test]
fn two_cycle_lemma_part_one_fails() {
    let m = two_cycle();
    assert_eq!(m.diagonal_d(), StateSet::EMPTY);
    for heart in [HeartScope::Frame, HeartScope::Local] {
        let r = m.check_lemma_1(heart);
        assert!(r.premise_holds);
        assert!(!r.part1_valid);
        assert_eq!(r.part1_counterwitnesses, StateSet::singleton(0));
        assert!(r.part2_valid);
    }
}

#[test]
fn two_cycle_has_no_hole_in_the_seven_slots() {
    for heart in [HeartScope::Frame, HeartScope::Local] {
        assert!(!two_cycle().find_holes(heart).any_hole());
    }
}

#[test]
fn relational_diagonal_plus_is_not_a_kripke_atom() {
    assert!(two_cycle().extension(&Formula::Dplus).is_err());
}

proptest! {
    #[test]
    fn strict_frames_believe_the_other_type(m in arb_kripke().prop_filter("strict", KripkeModel::is_strict)) {
        let ext = |f: &str| m.extension(&bkw_core::parse(f).unwrap()).unwrap();
        prop_assert_eq!(ext("[ab] Ub"), m.ua());
        prop_assert_eq!(ext("[ba] Ua"), m.ub());
        let ua_serial = m.ua().iter().all(|x| !m.successors(x).is_empty());
        if ua_serial {
            prop_assert_eq!(ext("[ab] Ua"), StateSet::EMPTY);
        }
    }
}
