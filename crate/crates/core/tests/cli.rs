use std::process::Command;

use closedwalk::cli::{run, Output, EXIT_DOMAIN, EXIT_OK, EXIT_USAGE};
use closedwalk::constructions::{named_graph, NAMED_GRAPHS};
use serde_json::Value;

fn cli(args: &str) -> Output {
    run(std::iter::once("closedwalk").chain(args.split_whitespace()))
}

fn json(args: &str) -> Value {
    let out = cli(args);
    assert_eq!(out.status, EXIT_OK, "{args}: {out:?}");
    serde_json::from_str(&out.stdout).unwrap()
}

fn golden_path(name: &str) -> String {
    format!("{}/tests/golden/{name}.edges", env!("CARGO_MANIFEST_DIR"))
}

#[test]
fn named_graphs_match_golden_files() {
    for name in NAMED_GRAPHS {
        let golden = std::fs::read_to_string(golden_path(name)).unwrap();
        assert_eq!(named_graph(name).unwrap().to_edge_list(), golden, "{name}");
        let out = cli(&format!("construct --named {name} --format edge-list"));
        assert_eq!(out.stdout, golden, "{name}");
    }
}

#[test]
fn complexity_output_is_exact() {
    let out = cli("complexity --named petersen --complement");
    assert_eq!(out.status, EXIT_OK);
    assert_eq!(out.stdout, "{\"spanning_trees\":\"2048000\"}\n");

    let path = golden_path("paper-h");
    assert_eq!(
        json(&format!("complexity --edges {path} --complement"))["spanning_trees"],
        "2080524"
    );
    assert_eq!(
        json("complexity --named paper-bipartite --complement")["spanning_trees"],
        "2034010"
    );
}

#[test]
fn identify_reports_diagnostics() {
    let v = json("series --named petersen --identify");
    assert_eq!(v["t_complement"], "2048000");
    assert!(v["terms_used"].as_u64().unwrap() >= 2);
    assert!(v["bracket_width"].as_f64().unwrap() < 1.0);
    assert_eq!(v["precision_bits"], 64);

    let v = json("series --named petersen --identify --precision-bits 8");
    assert_eq!(v["t_complement"], "2048000");
    assert!(v["precision_bits"].as_u64().unwrap() >= 8);
}

#[test]
fn precision_comes_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_closedwalk"))
        .args(["series", "--named", "petersen", "--identify"])
        .env("CLOSEDWALK_PRECISION_BITS", "128")
        .output()
        .unwrap();
    assert!(out.status.success());
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision_bits"], 128);

    let out = Command::new(env!("CARGO_BIN_EXE_closedwalk"))
        .args(["series", "--named", "petersen", "--identify", "--precision-bits", "96"])
        .env("CLOSEDWALK_PRECISION_BITS", "128")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["precision_bits"], 96);
}

#[test]
fn series_eval_lists_partials() {
    let v = json("series --named petersen --eval --max-k 6");
    let partials = v["partials"].as_array().unwrap();
    assert_eq!(partials.len(), 6);
    assert!((partials[3].as_f64().unwrap() - 14.53219).abs() < 1e-4);
    assert_eq!(v["terms"][0]["k"], 2);
}

#[test]
fn reals_carry_seventeen_digits() {
    let out = cli("bounds thm2 --named paper-h --m 3");
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    let text = v["log_value"].to_string();
    let mantissa = text.split('e').next().unwrap().replace(['.', '-'], "");
    assert_eq!(mantissa.len(), 17, "{text}");
    assert!((v["log_value"].as_f64().unwrap() - 14.31436).abs() < 1e-4);
}

#[test]
fn walks_are_decimal_strings() {
    let v = json("walks --named petersen --max-k 4");
    assert_eq!(v["walks"], serde_json::json!(["0", "30", "0", "150"]));
}

#[test]
fn thm3_pair_and_table() {
    let v = json("bounds thm3 --named paper-bipartite --m 6 --k 6");
    let a = v["lower"]["linear_value"].as_f64().unwrap();
    let b = v["upper"]["linear_value"].as_f64().unwrap();
    assert!((a - 2_034_010.0).abs() <= 2.0 && (b - 2_034_012.0).abs() <= 2.0);

    let out = cli("bounds thm3 --named paper-bipartite --m 6 --k 6 --format csv");
    assert_eq!(out.status, EXIT_OK);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines[0], "m,k,lower,upper");
    assert_eq!(lines.len(), 7);
    assert!(lines[6].starts_with("6,6,"));
}

#[test]
fn degree_bounds_from_parameters() {
    let v = json("bounds prop1 --n 10 --d 9");
    assert_eq!(v["preconditions_ok"], true);
    assert_eq!(v["parameters"]["d"], 9);

    let v = json("bounds prop2 --n 10 --d 6 --delta 27");
    assert!((v["parameters"]["s"].as_f64().unwrap() - 0.8051748).abs() < 1e-6);
}

#[test]
fn failed_preconditions_exit_two() {
    let out = cli("bounds thm2 --named petersen --m 2");
    assert_eq!(out.status, EXIT_DOMAIN);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "precondition_failed");
    assert_eq!(v["preconditions_ok"], false);

    for (args, code) in [
        ("series --named paper-bipartite --eval --max-k 3 --complement", ""),
        ("series --graph6 Cr --identify", "convergence_domain"),
        ("bounds thm3 --named petersen --m 2 --k 2", "bipartite_required"),
        ("complexity --named nope", "unknown_graph"),
        ("construct --random 5 3 1", "invalid_parameter"),
        ("synchrony --named petersen --t 2 --k 30", "invalid_parameter"),
    ] {
        let out = cli(args);
        if code.is_empty() {
            assert_eq!(out.status, EXIT_USAGE, "{args}");
            continue;
        }
        assert_eq!(out.status, EXIT_DOMAIN, "{args}: {out:?}");
        let v: Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["error"]["code"], code, "{args}");
    }
}

#[test]
fn usage_errors_exit_sixty_four() {
    for args in [
        "",
        "frobnicate",
        "complexity",
        "complexity --named petersen --graph6 Cr",
        "walks --named petersen",
        "series --named petersen",
        "series --named petersen --eval --identify --max-k 3",
        "synchrony --named petersen --t 2 --k 3 --mode mc",
        "synchrony --named petersen --t 2 --k 3 --samples 5",
        "walks --named petersen --max-k 3 --format csv",
        "complexity --edges /nonexistent/file",
    ] {
        assert_eq!(cli(args).status, EXIT_USAGE, "{args:?}");
    }
    assert_eq!(cli("--help").status, EXIT_OK);
    assert_eq!(cli("--version").status, EXIT_OK);
}

#[test]
fn parse_errors_name_the_line() {
    let dir = std::env::temp_dir().join(format!("closedwalk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("loop.edges");
    std::fs::write(&path, "3\n0 1\n1 1\n").unwrap();
    let out = cli(&format!("graph info --edges {}", path.display()));
    assert_eq!(out.status, EXIT_DOMAIN);
    let v: Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["error"]["code"], "parse_error");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 3"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn synchrony_outputs() {
    let v = json("synchrony --named petersen --t 2 --k 3 --mode exhaustive");
    assert_eq!(v["samples"], 120);
    assert!(v["p_k"]["exact"].is_string());
    assert!(v["e_k"]["exact"].is_string());

    let v = json("synchrony --graph6 Cr --t 2 --k 2");
    assert_eq!(v["p_k"]["exact"], "1/3");
    let v = json("synchrony --graph6 EhEG --t 2 --k 2");
    assert_eq!(v["p_k"]["exact"], "0");

    let out = cli("synchrony --named petersen --t 2 --k 3 --format csv");
    assert!(out.stdout.starts_with("i_star,count\n"));
    assert!(out.stdout.lines().last().unwrap().starts_with("inf,"));

    let v = json("synchrony --named petersen --t 2 --k 4 --mode mc --samples 500 --seed 9");
    assert!(v["p_k"]["std_error"].is_number());
}

#[test]
fn directed_input_only_for_synchrony() {
    let dir = std::env::temp_dir().join(format!("closedwalk-arcs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cycle.arcs");
    std::fs::write(&path, "3\n0 1\n1 2\n2 0\n").unwrap();
    let v = json(&format!("synchrony --edges {} --directed --t 1 --k 1", path.display()));
    assert_eq!(v["p_k"]["exact"], "1");
    assert_eq!(cli(&format!("complexity --edges {} --directed", path.display())).status, EXIT_USAGE);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn output_is_deterministic() {
    for args in [
        "synchrony --random 12 3 4 --t 2 --k 4 --mode mc --samples 300 --seed 5",
        "synchrony --random 12 3 4 --t 2 --k 4 --mode mc --samples 300 --seed 5 --threads 4",
        "construct --random 14 4 99",
        "series --g-family 2 1 --format json --eval --max-k 5",
    ] {
        assert_eq!(cli(args), cli(args), "{args}");
    }
    let one = cli("synchrony --random 12 3 4 --t 2 --k 4 --mode mc --samples 300 --seed 5");
    let four = cli("synchrony --random 12 3 4 --t 2 --k 4 --mode mc --samples 300 --seed 5 --threads 4");
    assert_eq!(one, four);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_closedwalk");
    let ok = Command::new(bin).args(["complexity", "--named", "petersen"]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "{\"spanning_trees\":\"2000\"}\n");
    let usage = Command::new(bin).arg("bogus").output().unwrap();
    assert_eq!(usage.status.code(), Some(64));
    let domain = Command::new(bin).args(["walks", "--named", "x", "--max-k", "2"]).output().unwrap();
    assert_eq!(domain.status.code(), Some(2));
}
