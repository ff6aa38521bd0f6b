use std::fs;
use std::path::PathBuf;

use frontroute::cli::{run, ExitStatus};
use serde_json::Value;

struct Run {
    status: ExitStatus,
    out: String,
    err: String,
}

fn cli(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let status = run(
        std::iter::once("frontroute").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        status,
        out: String::from_utf8(out).unwrap(),
        err: String::from_utf8(err).unwrap(),
    }
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("frontroute-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn data(name: &str) -> String {
    format!("{}/data/{name}", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn solve_embedded_instance_reports_both_conventions() {
    let r = cli(&["solve", "--paper"]);
    assert_eq!(r.status, ExitStatus::Success, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["vehicles"], 2);
    assert_eq!(v["routes"].as_array().unwrap().len(), 2);
    assert_eq!(v["totals"]["loop"], 107.5);
    assert_eq!(v["totals"]["mixed"], 107.5);
    assert_eq!(v["trace"]["accepted_savings"], 321.7);

    let r = cli(&["solve", "--paper", "--convention", "mixed"]);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["convention"], "mixed");
    assert!(v["totals"].get("loop").is_none());
}

#[test]
fn solve_then_verify_round_trips() {
    let path = scratch("solution.json");
    let p = path.to_str().unwrap();
    let r = cli(&["solve", "--paper", "-o", p]);
    assert_eq!(r.status, ExitStatus::Success);
    assert!(r.out.is_empty());

    let r = cli(&["verify", "--paper", "--solution", p]);
    assert_eq!(r.status, ExitStatus::Success, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["feasible"], true);
    assert_eq!(v["loop_total"], 107.5);
    assert_eq!(v["optimality"]["optimum"], 105.2);
    assert_eq!(v["optimality"]["gap"], 2.3);

    let tampered = fs::read_to_string(&path)
        .unwrap()
        .replacen("\"C\"", "\"A\"", 1);
    let bad = scratch("tampered.json");
    fs::write(&bad, tampered).unwrap();
    let r = cli(&["verify", "--paper", "--solution", bad.to_str().unwrap()]);
    assert_eq!(r.status, ExitStatus::Infeasible);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    assert_eq!(v["feasible"], false);
}

#[test]
fn verify_generated_instances_round_trip() {
    for seed in 0..10u64 {
        let inst = scratch(&format!("gen-{seed}.inst"));
        let sol = scratch(&format!("gen-{seed}.json"));
        let seed = seed.to_string();
        let r = cli(&[
            "gen",
            "--seed",
            &seed,
            "-n",
            "8",
            "-o",
            inst.to_str().unwrap(),
        ]);
        assert_eq!(r.status, ExitStatus::Success, "{}", r.err);
        let i = inst.to_str().unwrap();
        assert_eq!(
            cli(&["solve", "--instance", i, "-o", sol.to_str().unwrap()]).status,
            ExitStatus::Success
        );
        let r = cli(&[
            "verify",
            "--instance",
            i,
            "--solution",
            sol.to_str().unwrap(),
        ]);
        assert_eq!(r.status, ExitStatus::Success, "{}", r.out);
    }
}

#[test]
fn errata_on_embedded_instance() {
    let r = cli(&["errata", "--paper"]);
    assert_eq!(r.status, ExitStatus::Success);
    assert!(r
        .out
        .contains("# savings cells: 31 match, 5 discrepant, 0 irreproducible"));
    assert!(r
        .out
        .contains("Fig. 4-5 total (loop, best visiting order)\t122.9\t126.8\t3.9\tIrreproducible"));
    assert!(r
        .out
        .contains("Fig. 4-4 total (mixed)\t146.5\t145.6\t-0.9\tDiscrepant"));
}

#[test]
fn errata_refuses_other_instances() {
    let path = scratch("other.inst");
    cli(&[
        "gen",
        "--seed",
        "3",
        "-n",
        "5",
        "-o",
        path.to_str().unwrap(),
    ]);
    let r = cli(&["errata", "--instance", path.to_str().unwrap()]);
    assert_eq!(r.status, ExitStatus::InputError);
    assert!(r.err.starts_with("error:"));
}

#[test]
fn replay_with_stage_two_expectation() {
    let path = scratch("stage2.ms");
    fs::write(&path, "connect B F\nconnect B A\nexpect 190.6 mixed\n").unwrap();
    let r = cli(&["replay", "--paper", "--script", path.to_str().unwrap()]);
    assert_eq!(r.status, ExitStatus::Success, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    let expected = &v["stages"][0]["expected"];
    assert_eq!(expected["status"], "match");
    assert_eq!(expected["recomputed"], 190.6);
    assert_eq!(v["final"]["vehicles"], 7);
}

#[test]
fn replay_bundled_script_file() {
    let r = cli(&["replay", "--paper", "--script", &data("paper_stages.ms")]);
    assert_eq!(r.status, ExitStatus::Success, "{}", r.err);
    let v: Value = serde_json::from_str(&r.out).unwrap();
    let statuses: Vec<&str> = v["stages"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["expected"]["status"].as_str().unwrap())
        .collect();
    assert_eq!(statuses, ["match", "match", "discrepant"]);
    assert_eq!(cli(&["replay", "--paper"]).out, r.out);
}

#[test]
fn replay_halt_exits_two() {
    let path = scratch("halt.ms");
    fs::write(&path, "connect A B\nconnect B F\nconnect B G\n").unwrap();
    let r = cli(&["replay", "--paper", "--script", path.to_str().unwrap()]);
    assert_eq!(r.status, ExitStatus::Infeasible);
    assert!(r.err.contains("interior_node"), "{}", r.err);
}

#[test]
fn input_errors_exit_one() {
    assert_eq!(cli(&["solve"]).status, ExitStatus::InputError);
    assert_eq!(
        cli(&["solve", "--paper", "--bogus"]).status,
        ExitStatus::InputError
    );
    assert_eq!(cli(&["frobnicate"]).status, ExitStatus::InputError);
    let with_both = cli(&["solve", "--paper", "--instance", &data("paper.inst")]);
    assert_eq!(with_both.status, ExitStatus::InputError);

    let bad = scratch("bad.inst");
    fs::write(
        &bad,
        fs::read_to_string(data("paper.inst"))
            .unwrap()
            .replace("A 1.3", "A 1.33"),
    )
    .unwrap();
    let r = cli(&["solve", "--instance", bad.to_str().unwrap()]);
    assert_eq!(r.status, ExitStatus::InputError);
    assert!(r.err.contains("at line 7"), "{}", r.err);

    let script = scratch("depot.ms");
    fs::write(&script, "connect P A\n").unwrap();
    assert_eq!(
        cli(&["replay", "--paper", "--script", script.to_str().unwrap()]).status,
        ExitStatus::InputError
    );
    assert_eq!(
        cli(&["solve", "--instance", "/nonexistent/x.inst"]).status,
        ExitStatus::InputError
    );
}

#[test]
fn instance_file_and_embedded_copy_agree() {
    let a = cli(&["solve", "--paper"]).out;
    let b = cli(&["solve", "--instance", &data("paper.inst")]).out;
    assert_eq!(a, b);
}

#[test]
fn render_variants() {
    let r = cli(&["render", "--paper", "--initial"]);
    assert_eq!(r.status, ExitStatus::Success);
    assert_eq!(r.out.lines().filter(|l| l.contains(" -- ")).count(), 9);
    let r = cli(&["render", "--paper"]);
    assert!(r.out.starts_with("graph \"front-warehouse-9\" {"));
    assert_eq!(r.out.lines().filter(|l| l.contains(" -- ")).count(), 11);
    let r = cli(&["render", "--paper", "--script", &data("paper_stages.ms")]);
    assert_eq!(r.status, ExitStatus::Success);
    assert_eq!(
        cli(&["render", "--paper", "--initial", "--script", "x"]).status,
        ExitStatus::InputError
    );
}

#[test]
fn savings_table_output() {
    let r = cli(&["savings", "--paper"]);
    assert_eq!(r.status, ExitStatus::Success);
    assert!(r.out.contains("1\tG-I\t60.0"));
}

#[test]
fn help_is_not_an_error() {
    let r = cli(&["--help"]);
    assert_eq!(r.status, ExitStatus::Success);
    assert!(r.out.contains("errata"));
}
