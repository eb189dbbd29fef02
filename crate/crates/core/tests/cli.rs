use std::process::Command;

fn hoconv(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hoconv"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn exit_code_matrix() {
    let cases: &[(&[&str], i32)] = &[
        (&["rules", "build", "--family", "gauss", "--points", "2", "--weight", "legendre", "--interval", "-1", "1"], 0),
        (&["rules", "build", "--family", "lobatto", "--points", "4"], 0),
        (&["rules", "build", "--family", "radau-l", "--points", "3", "--weight", "poly:1,0,1"], 0),
        (&["rules", "build", "--family", "fixed:blend"], 0),
        (&["rules", "build", "--family", "lobatto", "--points", "2"], 2),
        (&["rules", "build", "--family", "gauss", "--points", "2", "--weight", "poly:-1"], 2),
        (&["rules", "build", "--family", "gauss", "--points", "2", "--weight", "jacobi"], 2),
        (&["rules", "build", "--family", "gauss"], 2),
        (&["verify", "--chain", "fiveconv", "--f", "x^6", "--interval", "-1", "1"], 0),
        (&["verify", "--chain", "gauss-lobatto", "--n", "3", "--f", "exp(x)"], 0),
        (&["verify", "--chain", "radau", "--n", "1", "--f", "x^3 + x^4", "--interval", "0", "1"], 0),
        (&["verify", "--chain", "hh", "--f", "x^2", "--interval", "0", "1"], 0),
        (&["verify", "--chain", "hh", "--f", "-x^2", "--interval", "0", "1"], 2),
        (&["verify", "--chain", "hh", "--f", "-x^2", "--interval", "0", "1", "--unchecked"], 1),
        (&["verify", "--chain", "cheb", "--f", "-x^4", "--unchecked"], 1),
        (&["verify", "--chain", "nope", "--f", "x"], 2),
        (&["verify", "--chain", "hh", "--f", "log(x)"], 2),
        (&["support", "--f", "exp(x)", "--order", "3", "--nodes", "0", "--mults", "4"], 0),
        (&["support", "--f", "exp(x)", "--order", "3", "--nodes", "-0.5,0.5", "--mults", "2,2", "--method", "eps"], 0),
        (&["support", "--f", "x^6", "--order", "5", "--nodes", "0.5", "--mults", "6", "--method", "eps"], 1),
        (&["support", "--f", "-exp(x)", "--order", "1", "--nodes", "0", "--mults", "2"], 1),
        (&["support", "--f", "exp(x)", "--order", "3", "--nodes", "0", "--mults", "3"], 2),
        (&["support", "--f", "abs(x)", "--order", "1", "--nodes", "0.5", "--mults", "2", "--method", "confluent"], 2),
        (&["convexity", "--f", "exp(x)", "--order", "4", "--grid", "32"], 0),
        (&["convexity", "--f", "x^3", "--order", "1"], 1),
        (&["convexity", "--f", "2*+x", "--order", "1"], 2),
        (&["convexity", "--f", "1/x", "--order", "1"], 2),
        (&["convexity", "--f", "x^4", "--order", "3", "--grid", "3"], 2),
        (&["bound", "--op", "blend", "--k", "6", "--M", "720"], 0),
        (&["bound", "--op", "blend", "--k", "6", "--M", "1", "--f", "cos(x)"], 0),
        (&["bound", "--op", "blend", "--k", "6", "--M", "0.5", "--f", "cos(x)"], 1),
        (&["bound", "--op", "blend", "--k", "4", "--M", "1"], 2),
        (&["bound", "--op", "blend", "--k", "6", "--M", "-1"], 2),
        (&["--format", "csv", "verify", "--chain", "hh", "--f", "x^2"], 2),
        (&["no-such-command"], 2),
        (&[], 2),
        (&["--help"], 0),
    ];
    for (args, expected) in cases {
        let (code, stdout, stderr) = hoconv(args);
        assert_eq!(code, *expected, "hoconv {args:?}\nstdout: {stdout}\nstderr: {stderr}");
    }
}

#[test]
fn gauss_table_and_json() {
    let (code, text, _) = hoconv(&["rules", "build", "--family", "gauss", "--points", "2"]);
    assert_eq!(code, 0);
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().map(|v| v.parse().unwrap()).collect())
        .collect();
    let s = 3f64.sqrt() / 3.0;
    assert_eq!(rows.len(), 2);
    assert!((rows[0][0] + s).abs() < 1e-11 && (rows[1][0] - s).abs() < 1e-11);
    assert!(rows.iter().all(|r| (r[1] - 1.0).abs() < 1e-11));

    let (code, json, _) = hoconv(&["--format", "json", "rules", "build", "--family", "gauss", "--points", "2"]);
    assert_eq!(code, 0);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let nodes: Vec<f64> = doc["nodes"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    assert!((nodes[1] - s).abs() < 1e-15);
}

#[test]
fn fiveconv_values_are_rational() {
    let (_, json, _) = hoconv(&["--format", "json", "verify", "--chain", "fiveconv", "--f", "x^6"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let values: Vec<f64> = doc["values"].as_array().unwrap().iter().map(|v| v.as_f64().unwrap()).collect();
    for (v, e) in values.iter().zip([2.0 / 7.0, 14.0 / 45.0, 26.0 / 75.0]) {
        assert!((v - e).abs() < 1e-10);
    }
    assert_eq!(doc["pass"], true);
}

#[test]
fn blend_bound_is_eight_over_315() {
    let (_, json, _) = hoconv(&["--format", "json", "bound", "--op", "blend", "--k", "6", "--M", "720"]);
    let doc: serde_json::Value = serde_json::from_str(&json).unwrap();
    let bound = doc["bound"].as_f64().unwrap();
    assert!((bound - 8.0 / 315.0).abs() <= 1e-12 * bound);
    assert_eq!(doc["M"].as_f64(), Some(720.0));
}

#[test]
fn plotdata_writes_csv() {
    let dir = std::env::temp_dir().join(format!("hoconv-plot-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("support.csv");
    let (code, stdout, stderr) = hoconv(&[
        "plotdata", "--f", "exp(x)", "--order", "3", "--nodes", "0", "--mults", "4", "--samples", "11",
        "--out", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{stderr}");
    assert!(stdout.is_empty());
    let csv = std::fs::read_to_string(&path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("x,f,p"));
    let rows: Vec<Vec<f64>> = lines.map(|l| l.split(',').map(|v| v.parse().unwrap()).collect()).collect();
    assert_eq!(rows.len(), 11);
    for r in &rows {
        assert!((r[1] - r[0].exp()).abs() < 1e-15);
        assert!(r[1] >= r[2]);
    }
    assert!(!csv.contains('\r'));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn parse_errors_report_the_offset() {
    let (code, _, stderr) = hoconv(&["convexity", "--f", "2*+x", "--order", "1"]);
    assert_eq!(code, 2);
    assert!(stderr.contains("at offset 2"), "{stderr}");
}
