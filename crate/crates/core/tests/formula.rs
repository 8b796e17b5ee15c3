mod common;

use bkw_core::formula::{is_atom_name, print, Formula, Language};
use bkw_core::parse;
use common::arb_formula;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn print_then_parse_is_identity(f in arb_formula(None)) {
        let text = print(&f);
        prop_assert_eq!(parse(&text).unwrap(), f, "{}", text);
    }

    #[test]
    fn printing_is_a_fixed_point(f in arb_formula(None)) {
        let once = print(&f);
        prop_assert_eq!(print(&parse(&once).unwrap()), once);
    }

    #[test]
    fn generated_formulas_stay_in_their_language(
        r in arb_formula(Some(Language::Relational)),
        t in arb_formula(Some(Language::Topological)),
    ) {
        prop_assert!(r.check_language(Language::Relational).is_ok());
        prop_assert!(t.check_language(Language::Topological).is_ok());
    }

    #[test]
    fn mixing_connectives_is_rejected(
        r in arb_formula(Some(Language::Relational)),
        t in arb_formula(Some(Language::Topological)),
    ) {
        let mixed = Formula::and(Formula::boxed(bkw_core::Dir::Ab, r), Formula::pneg(t));
        prop_assert!(mixed.check_language(Language::Relational).is_err());
        prop_assert!(mixed.check_language(Language::Topological).is_err());
    }

    #[test]
    fn depth_survives_round_trip(f in arb_formula(None)) {
        prop_assert_eq!(parse(&print(&f)).unwrap().modal_depth(), f.modal_depth());
    }
}

#[test]
fn whitespace_and_redundant_parentheses_are_ignored() {
    let a = parse("((p))&(q|r1)").unwrap();
    let b = parse("  p &   (q | r1) ").unwrap();
    assert_eq!(a, b);
    assert_eq!(print(&a), "p & (q | r1)");
}

#[test]
fn generator_atoms_are_legal() {
    assert!(common::ATOMS.iter().all(|a| is_atom_name(a)));
}
