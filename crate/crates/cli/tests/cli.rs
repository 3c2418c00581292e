// SPDX-License-Identifier: Apache-2.0

use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn fixture(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "fixtures", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn og10lat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_og10lat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut a = args.to_vec();
    a.push("--json");
    let o = og10lat(&a);
    (
        o.status.code().unwrap(),
        serde_json::from_str(&stdout(&o)).unwrap(),
    )
}

/// `key: value` lines of a text report.
fn field(text: &str, key: &str) -> Option<String> {
    text.lines()
        .find_map(|l| l.strip_prefix(&format!("{key}:")))
        .map(|v| v.trim().to_string())
}

fn joined(v: &Value) -> String {
    match v {
        Value::Array(xs) => xs.iter().map(joined).collect::<Vec<_>>().join(" "),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

#[test]
fn info_og10() {
    let o = og10lat(&["info", "U^3 + E8(-1)^2 + A2(-1)"]);
    assert_eq!(o.status.code(), Some(0));
    let t = stdout(&o);
    assert_eq!(field(&t, "rank").as_deref(), Some("24"));
    assert_eq!(field(&t, "signature").as_deref(), Some("(3,21)"));
    assert_eq!(field(&t, "abs_det").as_deref(), Some("3"));
    assert_eq!(field(&t, "even").as_deref(), Some("true"));
    assert_eq!(field(&t, "disc").as_deref(), Some("Z/3"));
}

#[test]
fn nms_exit_codes() {
    let cases = [
        (vec!["nms", "x1.lattice"], 0, "yes"),
        (vec!["nms", "definite.lattice"], 1, "no"),
        (
            vec!["nms", "twisted.lattice"],
            2,
            "inconclusive at radius 3",
        ),
        (vec!["nms-twisted", "twisted.lattice"], 0, "yes"),
        (vec!["nms-twisted", "definite.lattice"], 1, "no"),
    ];
    for (args, code, outcome) in cases {
        let path = fixture(args[1]);
        let (c, v) = json(&[args[0], &path]);
        assert_eq!(c, code, "{args:?}");
        assert_eq!(v["outcome"], outcome, "{args:?}");
    }
}

#[test]
fn supplied_sigma_gives_definitive_no() {
    let sigma = "0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 -1";
    let (c, v) = json(&["nms", &fixture("twisted.lattice"), "--sigma", sigma]);
    assert_eq!(c, 1);
    assert!(v["reason"].as_str().unwrap().contains("even"));
}

#[test]
fn twisted_report_carries_b_field() {
    let (c, v) = json(&["nms-twisted", &fixture("twisted.lattice")]);
    assert_eq!(c, 0);
    assert_eq!(v["twisted"]["n"], 2);
    let b = &v["twisted"]["b_field"];
    assert_eq!(b[2], "-1/2");
    assert_eq!(v["mode"], "direct-summand");
}

#[test]
fn json_and_text_agree() {
    for (verb, file) in [
        ("nms", "x1.lattice"),
        ("nms-twisted", "twisted.lattice"),
        ("involution", "e8_swap.lattice"),
    ] {
        let path = fixture(file);
        let text = stdout(&og10lat(&[verb, &path, "--radius", "2"]));
        let (_, v) = json(&[verb, &path, "--radius", "2"]);
        let mut checked = 0;
        for section in ["certificate", "twisted", "mukai_w"] {
            if let Some(Value::Object(m)) = v.get(section) {
                for (k, x) in m {
                    let t = field(&text, &format!("{section}.{k}")).unwrap();
                    assert_eq!(t, joined(x), "{verb} {section}.{k}");
                    checked += 1;
                }
            }
        }
        for key in ["sigma", "w", "outcome", "class"] {
            if let Some(x) = v.get(key) {
                assert_eq!(field(&text, key).unwrap(), joined(x), "{verb} {key}");
                checked += 1;
            }
        }
        assert!(checked >= 5, "{verb}");
    }
}

#[test]
fn hassett_table() {
    let (c, v) = json(&["hassett", "--range", "8..50"]);
    assert_eq!(c, 0);
    let rows = v["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 43);
    let row = |d: u64| rows.iter().find(|r| r["d"] == d).unwrap();
    assert_eq!(
        (row(14)["star"].clone(), row(14)["star_prime"].clone()),
        (true.into(), true.into())
    );
    assert_eq!(
        (row(8)["star"].clone(), row(8)["star_prime"].clone()),
        (false.into(), true.into())
    );
    assert_eq!(
        (row(12)["star"].clone(), row(12)["star_prime"].clone()),
        (false.into(), false.into())
    );
    assert_eq!(row(14)["witness"], 2);
}

#[test]
fn build_ld_outcomes() {
    let (c, v) = json(&[
        "build-ld",
        "--vd-square",
        "-42",
        "--glue",
        "order3",
        "--radius",
        "4",
    ]);
    assert_eq!((c, v["d"].as_u64()), (0, Some(14)));
    let (c, v) = json(&["build-ld", "--vd-square", "-4", "--radius", "4"]);
    assert_eq!((c, v["d"].as_u64()), (1, Some(12)));
    let o = og10lat(&["build-ld", "--vd-square", "-4", "--glue", "0 0 1/2"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn involution_fixture() {
    let (c, v) = json(&["involution", &fixture("e8_swap.lattice"), "--radius", "2"]);
    assert_eq!(c, 0);
    assert_eq!(v["class"], "INDUCED_TYPE");
    assert_eq!(v["disc_action_trivial"], true);
    assert_eq!(v["coinvariant_rank"], 8);
}

#[test]
fn extend_isometry_document() {
    let (c, v) = json(&["extend-isometry", &fixture("a2_negation.lattice")]);
    assert_eq!(c, 0);
    assert_eq!(v["extends"], true);
}

#[test]
fn gamma_v_and_glue() {
    let (c, v) = json(&["gamma-v", "U^3 + E8(-1)^2 + [-2]"]);
    assert_eq!(c, 0);
    assert_eq!(v["genus_matches_og10"], true);
    assert_eq!(v["e_square"], -6);
    assert_eq!(v["e_divisibility"], 3);
    let (c, v) = json(&["glue", "A2", "A2(-1)", "--glue", "1/3 2/3 1/3 2/3"]);
    assert_eq!(c, 0);
    assert_eq!(v["index"], 3);
    assert_eq!(v["det"], 1);
}

#[test]
fn lattice_verbs() {
    let (_, v) = json(&["complement", "U + [2]", "--vectors", "1 0 0"]);
    assert_eq!(v["rank"], 2);
    let (_, v) = json(&["saturate", "U + [2]", "--vectors", "2 0 0; 0 2 0"]);
    assert_eq!(v["index"], 4);
    let (_, v) = json(&["enumerate", "E8", "--square", "2"]);
    assert_eq!(v["count"], 240);
    let (_, v) = json(&["disc", "A2(-1)"]);
    assert_eq!(v["q"][0], "4/3");
}

#[test]
fn syntax_errors_exit_three_with_line_and_token() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "lattice L rank 2\n0 1\n1 x\nvectors ns count 0\n").unwrap();
    let o = og10lat(&["nms", f.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("line 3") && err.contains("`x`"), "{err}");
    let o = og10lat(&["info", "U + Q7"]);
    assert_eq!(o.status.code(), Some(3));
    let o = og10lat(&["hassett", "--range", "9-3"]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn lattice_file_argument() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, "lattice X rank 2\n2 1\n1 2\n").unwrap();
    let (c, v) = json(&["info", f.path().to_str().unwrap()]);
    assert_eq!(c, 0);
    assert_eq!(v["det"], 3);
}
