use std::fs;
use std::process::{Command, Output};

use cohcat::catalyst::{grid_search_catalyst, qubit_interval_d4, self_catalysis_order};
use cohcat::kraus::KrausSet;
use cohcat::renyi::{self, AlphaGrid};
use cohcat::{ent_assist, majorize, stochastic, ProbVector};
use cohcat_cli::num;
use cohcat_cli::report::{ConversionReport, Outcome, Settings};
use tempfile::TempDir;

fn cohcat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cohcat")).args(args).env_remove("COHCAT_TOL").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

fn pv(w: &[f64]) -> ProbVector {
    ProbVector::from_weights(w).unwrap()
}

const CATALYZABLE: (&str, &str) = ("0.4,0.4,0.1,0.1", "0.5,0.25,0.25,0");
const BLOCKED: (&str, &str) = ("0.5,0.4,0.1", "0.6,0.25,0.15");

#[test]
fn prob_prints_four_decimals() {
    let o = cohcat(&["prob", "--from", "0.4,0.4,0.2", "--to", "0.5,0.25,0.25"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "0.8000\n");
}

#[test]
fn precision_flag() {
    let o = cohcat(&["prob", "--precision", "8", "--from", "0.5,0.25,0.25", "--to", "0.4,0.4,0.2"]);
    assert_eq!(stdout(&o), "0.83333333\n");
    let o = cohcat(&[
        "prob",
        "--from",
        "0.5,0.25,0.25",
        "--to",
        "0.4,0.4,0.2",
        "--catalyst",
        "0.6,0.4",
        "--precision",
        "6",
    ]);
    assert_eq!(stdout(&o), format!("{:.6}\n", 35.0 / 38.0));
}

#[test]
fn catalytic_infeasible_exits_one() {
    let o = cohcat(&["catalytic", "--from", BLOCKED.0, "--to", BLOCKED.1]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("decision: Infeasible\nwitness_alpha: -"), "{out}");
}

#[test]
fn check_equal_exits_zero() {
    let o = cohcat(&["check", "--from", "0.5,0.4,0.1", "--to", "0.5,0.4,0.1"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "Equal\n");
}

#[test]
fn check_incomparable_exits_one() {
    let o = cohcat(&["check", "--from", "0.4,0.4,0.2", "--to", "0.5,0.25,0.25"]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("Incomparable\n"));
}

#[test]
fn bad_input_exits_two() {
    for args in [
        vec!["prob", "--from", "0.4,abc", "--to", "1"],
        vec!["prob", "--from", "-1,2", "--to", "1"],
        vec!["prob", "--from", "@/no/such/file.json", "--to", "1"],
        vec!["catalytic", "--from", "0.5,0.5,0", "--to", "0.6,0.4"],
        vec!["catalytic", "--from", "0.5,0.5", "--to", "0.6,0.4", "--mode", "shortcut", "--eps", "2"],
        vec!["frobnicate"],
    ] {
        let o = cohcat(&args);
        assert_eq!(code(&o), 2, "{args:?}");
        assert!(!o.stderr.is_empty());
    }
}

#[test]
fn tolerance_env_var() {
    let run = |tol: &str| {
        Command::new(env!("CARGO_BIN_EXE_cohcat"))
            .args(["check", "--from", "0.5,0.5", "--to", "0.5000000001,0.4999999999"])
            .env("COHCAT_TOL", tol)
            .output()
            .unwrap()
    };
    // 1e-10 apart: within the default tolerance, outside a 1e-3 scaled one.
    assert_eq!(stdout(&run("1")), "Equal\n");
    assert!(stdout(&run("1e-3")).starts_with("FirstMajorized\n"));
    assert_eq!(code(&run("nope")), 2);
    assert_eq!(code(&run("-1")), 2);
}

#[test]
fn golden_verdicts_match_library() {
    let grid = AlphaGrid::default();
    let pairs = [CATALYZABLE, BLOCKED, ("0.4,0.4,0.2", "0.45,0.3,0.25"), ("0.9,0.088,0.006,0.006", "0.95,0.03,0.02")];
    for (f, t) in pairs {
        let p = cohcat_cli::parse_state(f).unwrap();
        let q = cohcat_cli::parse_state(t).unwrap();

        let o = cohcat(&["check", "--from", f, "--to", t]);
        let cmp = majorize::compare(&p, &q);
        assert!(stdout(&o).starts_with(&format!("{:?}\n", cmp.tag)));
        assert_eq!(code(&o) == 0, cmp.convertible());

        let o = cohcat(&["prob", "--precision", "12", "--from", f, "--to", t]);
        assert_eq!(stdout(&o), format!("{}\n", num(stochastic::optimal_probability(&p, &q), 12)));

        for (mode, v) in [
            ("strict", renyi::catalytic_feasible_strict(&p, &q, &grid).unwrap()),
            ("closure", renyi::catalytic_feasible_closure(&p, &q, &grid)),
            ("nonneg", renyi::catalytic_feasible_nonneg(&p, &q, &grid)),
            ("shortcut", renyi::shortcut_check(&p, &q, 1e-3).unwrap()),
        ] {
            let o = cohcat(&["catalytic", "--mode", mode, "--from", f, "--to", t]);
            assert!(stdout(&o).starts_with(&format!("decision: {:?}\n", v.decision)), "{mode} {f} {t}");
            assert_eq!(code(&o) == 0, v.is_feasible());
        }

        let o = cohcat(&["ent-assist", "--from", f, "--to", t]);
        let ea = ent_assist::ent_assisted_feasible(&p, &q);
        assert!(stdout(&o).starts_with(&format!("feasible: {}\n", ea.feasible)));
        assert_eq!(code(&o) == 0, ea.feasible);
    }
}

#[test]
fn find_catalyst_reports_interval_and_witness() {
    let o = cohcat(&["find-catalyst", "--from", CATALYZABLE.0, "--to", CATALYZABLE.1]);
    assert_eq!(code(&o), 0);
    let (p, q) = (pv(&[0.4, 0.4, 0.1, 0.1]), pv(&[0.5, 0.25, 0.25, 0.0]));
    let iv = qubit_interval_d4(&p, &q).unwrap();
    let w = grid_search_catalyst(&p, &q, 3, 200).unwrap().unwrap();
    assert_eq!(stdout(&o), format!("interval: [{}, {}]\nwitness: {w:.4}\n", num(iv.lower, 4), num(iv.upper, 4)));

    let o = cohcat(&["find-catalyst", "--from", BLOCKED.0, "--to", BLOCKED.1, "--max-dim", "2", "--resolution", "50"]);
    assert_eq!(code(&o), 1);
    let out = stdout(&o);
    assert!(out.starts_with("interval: empty ("), "{out}");
    assert!(out.ends_with("witness: none\n"));
}

#[test]
fn self_cat_orders() {
    let q = "0.95,0.03,0.02";
    for (f, n) in [("0.9,0.081,0.01,0.009", 1), ("0.9,0.088,0.006,0.006", 2)] {
        let o = cohcat(&["self-cat", "--from", f, "--to", q]);
        assert_eq!(code(&o), 0);
        assert_eq!(stdout(&o), format!("order: {n}\n"));
        let lib = self_catalysis_order(&cohcat_cli::parse_state(f).unwrap(), &pv(&[0.95, 0.03, 0.02]), 3).unwrap();
        assert_eq!(lib.order, Some(n));
    }
    let o = cohcat(&["self-cat", "--from", "0.9,0.088,0.006,0.006", "--to", q, "--n-max", "1"]);
    assert_eq!(code(&o), 1);
    assert_eq!(stdout(&o), "order: none (searched up to 1)\n");
}

#[test]
fn curve_csv() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("blocked.csv");
    let o = cohcat(&["curve", "--from", BLOCKED.0, "--to", BLOCKED.1, "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let csv = fs::read_to_string(&path).unwrap();
    let want =
        renyi::curve_to_csv(&renyi::delta_curve(&pv(&[0.5, 0.4, 0.1]), &pv(&[0.6, 0.25, 0.15]), &AlphaGrid::default()));
    assert_eq!(csv, want);
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "alpha,delta");
    assert!(lines[1].starts_with("-inf,"));
    assert!(lines.last().unwrap().starts_with("+inf,"));
    assert_eq!(lines.len(), 1 + AlphaGrid::default().orders().len());

    // Without --out the same text goes to stdout.
    let o = cohcat(&["curve", "--from", BLOCKED.0, "--to", BLOCKED.1]);
    assert_eq!(stdout(&o), want);
}

#[test]
fn kraus_build_then_verify() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("chan.json");
    let file = path.to_str().unwrap();
    let o = cohcat(&["kraus-build", "--from", "0.4,0.3,0.2,0.1", "--to", "0.7,0.2,0.1", "--out", file]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let ks = KrausSet::from_json(&fs::read_to_string(&path).unwrap()).unwrap();
    assert!(ks.verify().valid);

    let o = cohcat(&["kraus-verify", "--file", file, "--apply", "0.4,0.3,0.2,0.1", "--target", "0.7,0.2,0.1,0"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.starts_with("valid: true\n"), "{out}");
    assert!(out.ends_with("target_probability: 1.0000\n"), "{out}");

    let o = cohcat(&["kraus-build", "--from", "0.7,0.2,0.1", "--to", "0.4,0.3,0.2,0.1", "--out", file]);
    assert_eq!(code(&o), 1);
}

#[test]
fn kraus_verify_fixture_and_broken_file() {
    let dir = TempDir::new().unwrap();
    let good = dir.path().join("k8.json");
    fs::write(&good, cohcat::kraus::fixture_k8().to_json()).unwrap();
    let o = cohcat(&["kraus-verify", "--file", good.to_str().unwrap(), "--apply", "1,1,1"]);
    assert_eq!(code(&o), 0);
    let out = stdout(&o);
    assert!(out.contains("operators: 8\n"));
    assert!(out.contains("branch 0: 0.3750\n"));
    assert!(out.contains("branch 7: 0.0417\n"));

    // Scaling every operator breaks completeness.
    let ks = cohcat::kraus::fixture_k8();
    let scaled: Vec<_> = ks.operators().iter().map(|m| m * num_complex::Complex64::new(1.1, 0.0)).collect();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, KrausSet::new(3, 3, scaled).unwrap().to_json()).unwrap();
    let o = cohcat(&["kraus-verify", "--file", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 1);
    assert!(stdout(&o).starts_with("valid: false\n"));

    let junk = dir.path().join("junk.json");
    fs::write(&junk, "{").unwrap();
    assert_eq!(code(&cohcat(&["kraus-verify", "--file", junk.to_str().unwrap()])), 2);
}

#[test]
fn state_from_json_file() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("p.json");
    fs::write(&path, r#"{"weights": [0.2, 0.4, 0.4], "labels": ["a", "b", "c"]}"#).unwrap();
    let arg = format!("@{}", path.display());
    let o = cohcat(&["prob", "--from", &arg, "--to", "0.5,0.25,0.25"]);
    assert_eq!(stdout(&o), "0.8000\n");
}

fn roundtrip(text: &str) {
    let parsed = ConversionReport::from_json(text).unwrap();
    assert_eq!(parsed.to_json(), text);
}

#[test]
fn report_round_trips_byte_identical() {
    let dir = TempDir::new().unwrap();
    for (i, (f, t)) in [CATALYZABLE, BLOCKED, ("0.5,0.5", "0.5,0.5")].into_iter().enumerate() {
        let path = dir.path().join(format!("r{i}.json"));
        let o = cohcat(&["report", "--from", f, "--to", t, "--json", path.to_str().unwrap(), "--resolution", "60"]);
        assert_eq!(code(&o), 0);
        roundtrip(&fs::read_to_string(&path).unwrap());
    }
}

#[test]
fn report_contents() {
    let from = "0.5,0.4,0.1".parse().unwrap();
    let to = "0.6,0.25,0.15".parse().unwrap();
    let settings = Settings { resolution: 40, ..Settings::default() };
    let r = ConversionReport::build(from, to, settings).unwrap();
    assert_eq!(r.settings.eps, 1e-3);
    assert_eq!(r.settings.n_max, 3);
    assert_eq!(r.settings.grid, AlphaGrid::default());
    assert!(matches!(r.catalytic.strict, Outcome::Ok(ref v) if v.decision == cohcat::Decision::Infeasible));
    assert!(r.ent_assist.feasible);
    let iv = r.catalyst.qubit_interval.as_ref().unwrap();
    assert!(!iv.nonempty && iv.lower > iv.upper);
    roundtrip(&r.to_json());
    for key in ["deterministic", "probability", "catalytic", "catalyst", "self_catalysis", "ent_assist"] {
        assert!(r.timings_ms.contains_key(key), "{key}");
    }
}

#[test]
fn report_with_failed_gate_keeps_nan_bounds() {
    // p already majorizes q at the top entry, so the first gate fails.
    let from = "0.6,0.2,0.1,0.1".parse().unwrap();
    let to = "0.5,0.3,0.2".parse().unwrap();
    let r = ConversionReport::build(from, to, Settings { resolution: 40, ..Settings::default() }).unwrap();
    let iv = r.catalyst.qubit_interval.as_ref().unwrap();
    assert!(iv.gate_failure.is_some() && iv.upper.is_nan());
    let text = r.to_json();
    assert!(text.contains("\"NaN\""));
    roundtrip(&text);
}

#[test]
fn report_records_refusals() {
    let from = "0.5,0.5,0".parse().unwrap();
    let to = "0.6,0.4".parse().unwrap();
    let r = ConversionReport::build(from, to, Settings::default()).unwrap();
    assert!(matches!(r.catalytic.strict, Outcome::Error(_)));
    assert!(matches!(r.self_catalysis, Outcome::Error(_)));
    roundtrip(&r.to_json());
}
