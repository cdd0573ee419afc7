use std::process::{Command, Output};

use serde_json::Value;

fn lgmk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lgmk"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let mut all = args.to_vec();
    all.push("--json");
    let out = lgmk(&all);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(args: &[&str]) -> i32 {
    lgmk(args).status.code().expect("exit code")
}

#[test]
fn weights_command() {
    let v = json(&["weights", "x^4+y^4+x^3*y"]);
    assert_eq!(v["command"], "weights");
    assert_eq!(v["payload"]["weights"], serde_json::json!(["1/4", "1/4"]));
    assert_eq!(v["payload"]["classification"], "Noninvertible");
    let v = json(&["weights", "x^3+y^3"]);
    assert_eq!(v["payload"]["weights"], serde_json::json!(["1/3", "1/3"]));
    assert_eq!(v["payload"]["classification"], "Invertible");
    let v = json(&["weights", "x^2*y"]);
    assert_eq!(v["payload"]["classification"], "NotAdmissible");
    assert!(v["payload"]["detail"]
        .as_str()
        .unwrap()
        .contains("not unique"));
}

#[test]
fn gmax_command() {
    let v = json(&["gmax", "x^5+y^5+x^4*y"]);
    assert_eq!(v["payload"]["order"], 5);
    assert_eq!(
        v["payload"]["generators"],
        serde_json::json!([["1/5", "1/5"]])
    );
    assert_eq!(json(&["gmax", "x^3+y^3"])["payload"]["order"], 9);
    let v = json(&["gmax", "x^6+y^6+x^4*y^2", "--elements"]);
    assert_eq!(v["payload"]["order"], 12);
    assert_eq!(v["payload"]["elements"].as_array().unwrap().len(), 12);
}

#[test]
fn amodel_command() {
    let v = json(&["amodel", "x^5+y^5+x^4*y", "J"]);
    assert_eq!(v["payload"]["dimension"], 8);
    assert_eq!(v["payload"]["top_degree"], "12/5");
    assert_eq!(json(&["amodel", "x^3", "max"])["payload"]["dimension"], 2);
    let v = json(&["amodel", "x^3+y^3", "1/3,1/3"]);
    assert_eq!(v["payload"]["group_order"], 3);
    assert_eq!(code(&["amodel", "x^3+y^3", "0"]), 4);
    assert_eq!(code(&["amodel", "x^3+y^3", "1/2,0"]), 4);
    assert_eq!(code(&["amodel", "x^3+y^3", "1/3"]), 2);
}

#[test]
fn bmodel_command() {
    let v = json(&["bmodel", "x^9"]);
    assert_eq!(v["payload"]["dimension"], 8);
    assert_eq!(v["payload"]["top_degree"], "14/9");
    assert_eq!(v["payload"]["top_degree_formula"], "14/9");
    assert_eq!(json(&["bmodel", "x^3+y^3"])["payload"]["dimension"], 4);
    assert_eq!(json(&["bmodel", "x^2"])["payload"]["dimension"], 1);
    assert_eq!(code(&["bmodel", "x^2*y"]), 3);
}

#[test]
fn mirror_check_command() {
    let v = json(&["mirror-check", "x^3+x*y^2"]);
    assert_eq!(v["payload"]["mirror"], true);
    assert_eq!(v["payload"]["transpose"], "x^3*y + y^2");
    assert_eq!(json(&["mirror-check", "x^5"])["payload"]["mirror"], true);
    let out = lgmk(&["mirror-check", "x^4+y^4+x^3*y"]);
    assert_eq!(out.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not invertible"));
}

#[test]
fn search_command() {
    let v = json(&["search", "--dim", "8", "--top", "12/5", "--vars", "2"]);
    let s = &v["payload"]["search"];
    assert_eq!(s["status"], "NoneExact");
    assert_eq!(s["target_dim"], serde_json::json!([8, 1]));
    assert_eq!(s["target_top"], serde_json::json!([12, 5]));
    assert_eq!(v["payload"]["discriminant"], "-224");
    let keys: Vec<&String> = s.as_object().unwrap().keys().collect();
    assert_eq!(
        keys,
        [
            "target_dim",
            "target_top",
            "vars",
            "bound",
            "status",
            "solutions"
        ]
    );

    let v = json(&["search", "--dim", "4", "--top", "4/3", "--vars", "2"]);
    assert_eq!(
        v["payload"]["search"]["solutions"],
        serde_json::json!([[[1, 3], [1, 3]]])
    );

    let v = json(&[
        "search", "--dim", "8", "--top", "12/5", "--vars", "3", "--bound", "60",
    ]);
    assert_eq!(v["payload"]["search"]["status"], "NoneWithinBound");
    assert_eq!(v["payload"]["search"]["bound"], 60);
    assert_eq!(v["payload"]["discriminant_boundary"], "1/9");
}

#[test]
fn search_output_is_thread_independent() {
    let args = [
        "search", "--dim", "4", "--top", "4/3", "--vars", "4", "--bound", "8",
    ];
    let one = lgmk(&[&args[..], &["--threads", "1"]].concat()).stdout;
    let eight = lgmk(&[&args[..], &["--threads", "8"]].concat()).stdout;
    assert_eq!(one, eight);
}

#[test]
fn paper_tables_command() {
    let v = json(&["paper-tables"]);
    let rows = v["payload"]["conclusion"].as_array().unwrap();
    let n5 = rows.iter().find(|r| r["n"] == 5).unwrap();
    assert_eq!(
        (&n5["m1"], &n5["m2"], &n5["m3"]),
        (&"X".into(), &"X".into(), &"X".into())
    );
    let n4 = rows.iter().find(|r| r["n"] == 4).unwrap();
    assert_eq!(n4["m2"], "X");
    let dimensions = v["payload"]["dimensions"].as_array().unwrap();
    let n6 = dimensions.iter().find(|r| r["n"] == 6).unwrap();
    assert_eq!(n6["dim"], 10);
    assert_eq!(n6["top"], "8/3");
}

#[test]
fn parse_errors_exit_with_two() {
    assert_eq!(code(&["weights", "x^"]), 2);
    assert_eq!(code(&["weights", "x + + y"]), 2);
    assert_eq!(
        code(&["search", "--dim", "8/0", "--top", "1", "--vars", "2"]),
        2
    );
}

#[test]
fn pair_budget_is_read_from_the_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_lgmk"))
        .args(["bmodel", "x^5+y^5+x^4*y"])
        .env("LGMK_PAIR_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(6));
}

#[test]
fn text_output_agrees_with_json() {
    let out = lgmk(&["amodel", "x^5+y^5+x^4*y", "J"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("dimension: 8"));
    assert!(text.contains("top_degree: 12/5"));
    assert!(text.contains("[x^2*y; (0, 0)]"));
}
