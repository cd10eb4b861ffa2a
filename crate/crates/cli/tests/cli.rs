use std::process::{Command, Output};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_t3m-units")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn structure_t39() {
    let o = bin(&["structure", "--m", "13", "--t", "3", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "C3^2 x C2 x GL(3,F3)^4\n");
}

#[test]
fn structure_json_schema() {
    let o = bin(&["structure", "--m", "7", "--t", "2", "--n", "2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"], "9");
    let f = v["factors"].as_array().unwrap();
    assert_eq!(f.len(), 3);
    assert_eq!(f[0]["kind"], "C");
    assert_eq!(f[0]["order"], "3");
    assert_eq!(f[0]["multiplicity"], 4);
    assert_eq!(f[1]["order"], "8");
    assert_eq!(f[2]["kind"], "GL");
    assert_eq!(f[2]["field_order"], "9");
    assert_eq!(f[2]["multiplicity"], 2);
    assert!(v["total_order"].as_str().unwrap().parse::<u128>().is_ok());
}

#[test]
fn invalid_parameters_name_the_hypothesis() {
    let o = bin(&["structure", "--m", "9", "--t", "4", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("m must be 3k+1"));
    let o = bin(&["structure", "--m", "91", "--t", "22", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gcd"));
    let o = bin(&["structure", "--m", "13", "--t", "4", "--n", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = bin(&["bogus"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_order_21() {
    let o = bin(&["verify", "--m", "7", "--t", "2", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).ends_with("all checks passed\n"));
    let o = bin(&["verify", "--m", "7", "--t", "2", "--n", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 8);
}

#[test]
fn density_is_reproducible() {
    let args = ["density", "--m", "7", "--t", "2", "--n", "1", "--samples", "2000", "--seed", "5"];
    let a = bin(&args);
    let b = bin(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).contains("predicted: 0.584474"));
    let o = bin(&["density", "--m", "7", "--t", "2", "--n", "1", "--samples", "10"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classes_radical_table() {
    let o = bin(&["classes", "--m", "13", "--t", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("m=13 t=3 k=4 classes=7\n"));
    let o = bin(&["radical", "--m", "13", "--t", "3", "--n", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["dim"], 2);
    assert_eq!(v["nilpotency_index"], 3);
    let o = bin(&["table", "--m", "13", "--t", "3", "--max-n", "3"]);
    assert_eq!(
        stdout(&o),
        "m=13 t=3 k=4\nn=1: C3^2 x C2 x GL(3,F3)^4\nn=2: C3^4 x C8 x GL(3,F9)^4\nn=3: C3^6 x C26 x GL(3,F27)^4\n"
    );
}
