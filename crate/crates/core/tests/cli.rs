use std::process::Command;

use comodcontra::cli::fuzz::{instance_seed, shrink, Tally};
use comodcontra::cli::{self, Defaults, Family, Outcome, Report};
use comodcontra::exactlin::Field;
use comodcontra::group::FiniteGroup;
use comodcontra::smoothg::rep_family;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn run_text(text: &str) -> Report {
    let s = cli::parse(text).unwrap();
    let o = cli::validate(&s).unwrap();
    cli::run(&s, &o, Defaults::default())
}

fn diagnostics(text: &str) -> Vec<String> {
    let s = cli::parse(text).unwrap();
    cli::validate(&s).err().unwrap_or_default().iter().map(|e| e.to_string()).collect()
}

fn json(r: &Report) -> Value {
    serde_json::from_str(&r.structured()).unwrap()
}

// ---- validate ----

#[test]
fn empty_scenario_is_valid_and_runs_to_an_empty_report() {
    assert!(diagnostics("").is_empty());
    let r = run_text("");
    assert!(r.tasks.is_empty());
    assert_eq!(r.exit_code(), 0);
    assert_eq!(r.structured(), run_text("").structured());
}

#[test]
fn dangling_reference_is_named() {
    let d = diagnostics(
        r#"
        [[tasks]]
        op = "check_coalgebra"
        args = ["nowhere"]
        "#,
    );
    assert_eq!(d.len(), 1);
    assert!(d[0].contains("tasks[0].args[0]") && d[0].contains("nowhere"), "{d:?}");
    let d = diagnostics(
        r#"
        [coalgebras.c]
        group = "missing"
        "#,
    );
    assert!(d[0].contains("coalgebras.c.group") && d[0].contains("missing"), "{d:?}");
}

#[test]
fn broken_coassociativity_is_reported_with_witness() {
    // k(Z/2) over F_3 with Δ(δ0) gaining a δ0⊗δ1 term.
    let d = diagnostics(
        r#"
        field = 3
        [coalgebras.bad]
        comult = [[1, 0], [1, 0], [0, 1], [0, 0]]
        counit = [[1, 1]]
        "#,
    );
    assert_eq!(d.len(), 1);
    assert!(d[0].contains("coalgebras.bad") && d[0].contains("coassociativity"), "{d:?}");
}

#[test]
fn comodule_coefficients_are_validated() {
    let d = diagnostics(
        r#"
        [groups.z2]
        builtin = "cyclic:2"
        [coalgebras.c]
        group = "z2"
        [comodules.m]
        coalgebra = "c"
        dim = 1
        coefficients = [[[1]], [[0]]]
        "#,
    );
    // Coefficients B_g need B_b B_a = B_{ab}; here B_1 B_1 = 0 ≠ B_0.
    assert!(d.iter().any(|x| x.contains("comodules.m")), "{d:?}");
}

#[test]
fn invalid_subgroup_is_rejected() {
    let d = diagnostics(
        r#"
        [groups.s3]
        builtin = "symmetric:3"
        [[tasks]]
        op = "sandbox_equivalence"
        args = ["s3"]
        subgroup = [0, 1, 2]
        "#,
    );
    assert!(d.iter().any(|x| x.contains("tasks[0].subgroup")), "{d:?}");
}

// ---- run ----

#[test]
fn single_check_coalgebra_task_passes() {
    let r = run_text(
        r#"
        [groups.q8]
        builtin = "quaternion:8"
        [coalgebras.c]
        group = "q8"
        [[tasks]]
        op = "check_coalgebra"
        args = ["c"]
        "#,
    );
    assert_eq!(r.tasks.len(), 1);
    assert_eq!(r.tasks[0].outcome, Outcome::Pass);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn ktt_two_term_scenario_has_the_torsion_tables() {
    let r = cli::run_source("ktt-two-term", Defaults::default());
    assert_eq!(r.exit_code(), 0, "{}", r.human());
    let v = json(&r);
    let tasks = v["tasks"].as_array().unwrap();
    // R/t^e ← R ← R gives C --t^e--> C, whose kernel is R/t^e in degree −1.
    assert_eq!(tasks[0]["value"]["homology"], serde_json::json!({ "-1": [1] }));
    assert_eq!(tasks[1]["value"]["homology"], serde_json::json!({ "-1": [3] }));
    assert_eq!(tasks[2]["value"]["homology"], serde_json::json!({ "-1": [1, 2, 4] }));
    // The free summand contributes one divisible copy of C in degree 0 and no torsion homology.
    assert_eq!(tasks[3]["value"]["divisible_rank"], 1);
    assert_eq!(tasks[3]["value"]["homology"], serde_json::json!({}));
    for t in tasks {
        assert_eq!(t["outcome"], "pass");
    }
}

#[test]
fn sandbox_s3_adjunction_table_matches_intertwiner_counts() {
    let r = cli::run_source("sandbox-s3", Defaults::default());
    assert_eq!(r.exit_code(), 0, "{}", r.human());
    let v = json(&r);
    let table = v["tasks"][1]["certificates"].as_array().unwrap();
    let g = FiniteGroup::symmetric(3);
    let fam = rep_family(&g, Field::fp(2), 4, 7);
    assert_eq!(table.len(), 16);
    for row in table {
        let (i, j) = (row["p"].as_u64().unwrap() as usize, row["m"].as_u64().unwrap() as usize);
        assert_eq!(row["lhs_dim"], row["rhs_dim"]);
        assert_eq!(row["lhs_dim"].as_u64().unwrap() as usize, fam[i].hom(&fam[j]).len());
    }
}

#[test]
fn task_errors_are_recorded_and_set_the_exit_code() {
    let r = run_text(
        r#"
        field = 3
        [towers.t]
        kind = "zp"
        depth = 2
        twist = "inversion"
        [[tasks]]
        op = "derived_equivalence_g"
        args = ["t"]
        window = 1
        "#,
    );
    assert_eq!(r.tasks[0].outcome, Outcome::Error);
    assert_eq!(r.exit_code(), 1);
}

#[test]
fn group_level_tasks() {
    let r = run_text(
        r#"
        [towers.zp]
        kind = "zp"
        depth = 4
        [[tasks]]
        op = "derived_equivalence_g"
        args = ["zp"]
        object = "trivial-contra"
        depth = 4
        [[tasks]]
        op = "derived_equivalence_g"
        args = ["zp"]
        object = "trivial-smooth"
        depth = 4
        [[tasks]]
        op = "ext_tor_vanishing"
        args = ["zp"]
        object = "s-window"
        level = 2
        "#,
    );
    assert_eq!(r.exit_code(), 0, "{}", r.human());
    let v = json(&r);
    assert_eq!(v["tasks"][0]["value"]["homology"], serde_json::json!({ "-1": [1] }));
    assert_eq!(v["tasks"][1]["value"]["homology"], serde_json::json!({ "1": [1] }));
    assert_eq!(v["tasks"][2]["value"]["values"], serde_json::json!({ "1": 0, "2": 0, "3": 0 }));
}

// ---- reports ----

#[test]
fn structured_reports_are_byte_identical_across_runs() {
    for (name, _) in cli::BUNDLED {
        let a = cli::run_source(name, Defaults::default()).structured();
        let b = cli::run_source(name, Defaults::default()).structured();
        assert_eq!(a, b, "{name}");
    }
    assert_eq!(cli::fuzz("adjunction", 3, 10).structured(), cli::fuzz("adjunction", 3, 10).structured());
}

#[test]
fn version_bump_changes_only_the_header() {
    let a = cli::run_source("sandbox-s3", Defaults::default());
    let mut b = a.clone();
    b.version = "9.9.9";
    let (sa, sb) = (a.structured(), b.structured());
    let diff: Vec<(&str, &str)> = sa.lines().zip(sb.lines()).filter(|(x, y)| x != y).collect();
    assert_eq!(diff, vec![(r#"  "version": "0.1.0","#, r#"  "version": "9.9.9","#)]);
}

#[test]
fn human_rendering_orders_homology_by_degree() {
    let mut r = Report::new("t", 0, comodcontra::smoothg::Orientation::Inverse);
    let mut t = comodcontra::cli::TaskReport::new(0, "x", &[]);
    // String keys sort "-1" < "-2" < "0" < "10"; the table must not.
    t.value = serde_json::json!({ "homology": { "10": [1], "-1": [2], "0": [3], "-2": [4] } });
    r.push(t);
    let h = r.human();
    let at = |k: &str| h.find(k).unwrap();
    assert!(at("H^-2") < at("H^-1") && at("H^-1") < at("H^0 ") && at("H^0 ") < at("H^10"), "{h}");
    let empty = || Report::new("", 0, comodcontra::smoothg::Orientation::Inverse);
    assert_eq!(empty().structured(), empty().structured());
    assert_eq!(empty().exit_code(), 0);
}

// ---- fuzz ----

#[test]
fn adjunction_campaign_passes() {
    let r = cli::fuzz("adjunction", 1, 100);
    let v = json(&r);
    assert_eq!(v["tasks"][0]["value"]["passed"], 100);
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn zero_count_gives_an_empty_pass_report() {
    let r = cli::fuzz("theorem1", 1, 0);
    assert!(r.tasks.is_empty());
    assert_eq!(r.exit_code(), 0);
}

#[test]
fn unknown_family_is_an_error_entry() {
    let r = cli::fuzz("nonsense", 1, 5);
    assert_eq!(r.tasks[0].outcome, Outcome::Error);
}

#[test]
fn every_expected_mutation_failure_is_detected() {
    let v = json(&cli::fuzz("coalgebra-axioms", 5, 40));
    let tally = &v["tasks"][0]["value"]["tally"];
    assert!(tally["expected_failures"].as_u64().unwrap() > 100);
    assert_eq!(tally["detected"], tally["expected_failures"]);
    assert_eq!(v["tasks"][0]["outcome"], "pass");
}

fn fails_from_three(_: &mut ChaCha8Rng, size: &[usize], _: &mut Tally) -> Result<(), String> {
    if size[0] >= 3 {
        Err(format!("size {}", size[0]))
    } else {
        Ok(())
    }
}

#[test]
fn shrinking_stops_at_the_smallest_failing_bound() {
    let fam = Family { name: "synthetic", size: &[9, 4], floor: &[0, 0], property: fails_from_three };
    let (shrunk, msg) = shrink(&fam, instance_seed(1, 0), fam.size);
    assert_eq!(shrunk, vec![3, 0]);
    assert_eq!(msg, "size 3");
}

// ---- binary ----

#[test]
fn binary_verbs() {
    let bin = env!("CARGO_BIN_EXE_comodcontra");
    let out = Command::new(bin).arg("formats").output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("sandbox-s3"));
    let out = Command::new(bin).args(["run", "sandbox-s3", "--format", "structured"]).output().unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    let out = Command::new(bin).args(["validate", "/nonexistent.toml"]).output().unwrap();
    assert!(!out.status.success());
    let out = Command::new(bin).args(["fuzz", "contratensor", "--seed", "2", "--count", "5"]).output().unwrap();
    assert!(out.status.success());
}
