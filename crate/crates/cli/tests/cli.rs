use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "core", "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn bkw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkw"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn parse_prints_the_normal_form() {
    let o = bkw(&["parse", &fixture("prop24.nwf")]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.starts_with("nwf\n"), "{text}");
    // Printing is stable: the output parses to the same text again.
    let tmp = std::env::temp_dir().join(format!("bkw-cli-{}.nwf", std::process::id()));
    std::fs::write(&tmp, &text).unwrap();
    let again = bkw(&["parse", tmp.to_str().unwrap()]);
    std::fs::remove_file(&tmp).unwrap();
    assert_eq!(stdout(&again), text);
}

#[test]
fn check_prints_the_extension() {
    let o = bkw(&["check", &fixture("two_cycle.kripke"), "[ab] Ub"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{x}\n");
    let o = bkw(&["check", &fixture("prop24.nwf"), "Hab Ub"]);
    assert_eq!(stdout(&o), "{w}\n");
    let o = bkw(&["check", &fixture("bk_topo.paratopo"), "Ba Xb Dt & Ea true"]);
    assert_eq!(stdout(&o), "{a1}\n");
}

#[test]
fn assumption_range_flags_change_the_answer() {
    let ut = "nwf\nstates: t\nurelements: t\nUa: t\nUb:\n";
    let tmp = std::env::temp_dir().join(format!("bkw-cli-u-{}.nwf", std::process::id()));
    std::fs::write(&tmp, ut).unwrap();
    let path = tmp.to_str().unwrap();
    let default = bkw(&["check", path, "Hab true"]);
    let members = bkw(&["check", path, "Hab true", "--nwf-heart", "members"]);
    std::fs::remove_file(&tmp).unwrap();
    assert_eq!(stdout(&default), "{}\n");
    assert_eq!(stdout(&members), "{t}\n");
}

#[test]
fn holes_reports_slots_and_witnesses() {
    let o = bkw(&["holes", &fixture("two_cycle.kripke"), "--heart-local"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("any_hole: false"));
    let o = bkw(&["holes", &fixture("bk_topo.paratopo")]);
    let text = stdout(&o);
    assert!(text.contains("witnesses: {a1}"), "{text}");
    assert!(text.contains("discrete witnesses: {}"), "{text}");
}

#[test]
fn fixtures_pass() {
    let o = bkw(&["fixtures"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for name in [
        "prop24",
        "prop25",
        "ninestate",
        "quine_pair",
        "singleton_quine",
        "example27",
        "bk_topo",
    ] {
        assert!(text.contains(&format!("PASS {name}\n")), "{text}");
    }
    assert!(!text.contains("FAIL"));
}

#[test]
fn campaign_ends_with_a_summary() {
    let o = bkw(&[
        "campaign",
        "lemma1",
        "--max-states",
        "2",
        "--strict",
        "--heart-local",
        "--records",
        "1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("verdict two-cycle lemma1 heart-local"),
        "{text}"
    );
    let summary = &text[text.find("[summary]").expect("summary block")..];
    for key in [
        "target=lemma1",
        "max_states=2",
        "strict=true",
        "heart=heart-local",
        "serial=false",
        "models=",
    ] {
        assert!(summary.contains(key), "{summary}");
    }
    assert_eq!(text.matches("--- fail #").count(), 1);
}

#[test]
fn lawvere_search() {
    let o = bkw(&["lawvere", "--sizeA", "2", "--sizeY", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("exhausted: no weakly point-surjective map"));
    let o = bkw(&["lawvere", "--sizeA", "2", "--sizeY", "1"]);
    assert!(stdout(&o).contains("point-surjective maps: 1"));
}

#[test]
fn bad_input_exits_with_two() {
    let cases: [&[&str]; 6] = [
        &["check", &fixture("two_cycle.kripke"), "[ab"],
        &["check", &fixture("two_cycle.kripke"), "Ba true"],
        &["parse", "/nonexistent/model.nwf"],
        &["campaign", "nonsense", "--max-states", "2"],
        &["campaign", "lemma1", "--max-states", "9"],
        &["lawvere", "--sizeA", "5", "--sizeY", "2"],
    ];
    for args in cases {
        let o = bkw(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(
            String::from_utf8_lossy(&o.stderr).starts_with("error: "),
            "{args:?}"
        );
    }
}
