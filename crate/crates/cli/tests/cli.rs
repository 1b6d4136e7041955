use std::process::{Command, Output};

use serde_json::Value;

fn spf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spf")).args(args).output().expect("spf runs")
}

fn json(args: &[&str]) -> Value {
    let out = spf(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn schur_dimensions() {
    assert_eq!(json(&["schur", "dim"])["dim"], 10);
    assert_eq!(json(&["--n", "1", "schur", "dim"])["dim"], 1);
    assert_eq!(json(&["--n", "3", "--d", "3", "schur", "dim"])["dim"], 165);
    let basis = json(&["schur", "basis"]);
    assert_eq!(basis["basis"].as_array().unwrap().len(), 10);
}

#[test]
fn unit_of_the_multiplication_table() {
    let t = json(&["schur", "mult-table"]);
    let unit: Vec<usize> = t["unit"]
        .as_array()
        .unwrap()
        .iter()
        .enumerate()
        .filter(|(_, c)| c.as_str() != Some("0"))
        .map(|(k, _)| k)
        .collect();
    let table = t["table"].as_array().unwrap();
    // the unit is a sum of idempotents: summing its rows gives the identity on basis elements
    for b in 0..table.len() {
        let mut hits = Vec::new();
        for &u in &unit {
            for term in table[u][b].as_array().unwrap() {
                hits.push(term[0].as_u64().unwrap() as usize);
            }
        }
        assert_eq!(hits, vec![b]);
    }
}

#[test]
fn modules() {
    assert_eq!(json(&["module", "gamma:2,0"])["rank"], 3);
    assert_eq!(json(&["module", "weyl:1,1"])["rank"], 1);
    assert_eq!(json(&["--n", "3", "module", "tensorpower"])["rank"], 9);
    assert_eq!(json(&["--d", "3", "module", "lambda:1,1,1"])["rank"], 27);
    let m = json(&["module", "sym:2"]);
    assert_eq!(m["weight_dims"], serde_json::json!([1, 1, 1]));
    assert_eq!(m["check"], "ok");
}

#[test]
fn golden_table() {
    let out = spf(&["tensor-table", "--out", "md"]);
    assert_eq!(out.status.code(), Some(0));
    let md = String::from_utf8(out.stdout).unwrap();
    assert!(md.contains("[ω/α/ω] ⊕ [ω/α/ω]"));
    assert_eq!(json(&["tensor-table"])["pass"], true);
}

#[test]
fn resolutions() {
    let r = json(&["resolve", "lambda"]);
    assert_eq!(r["augmented_ranks"], serde_json::json!([3, 4, 1]));
    assert!(r["convention"].as_str().unwrap().contains("p-d"));
    let s = json(&["resolve", "symmetric", "--check-exact"]);
    assert_eq!(s["augmented_ranks"], serde_json::json!([1, 4, 3]));
    let z = json(&["--ring", "Z", "--d", "3", "resolve", "lambda", "--check-exact"]);
    assert_eq!(z["exact"], true);
    assert_eq!(z["degrees"], serde_json::json!([-2, 0]));
    let small = json(&["--ring", "Q", "--n", "2", "--d", "3", "resolve", "symmetric"]);
    assert_eq!(small["augmented_ranks"].as_array().unwrap().last().unwrap(), 4);
}

#[test]
fn koszul_of_a_weyl_module() {
    let k = json(&["koszul", "weyl:2"]);
    let h = k["homology"].as_array().unwrap();
    let nonzero: Vec<&Value> = h.iter().filter(|x| x["free_rank"] != 0).collect();
    assert_eq!(nonzero.len(), 1);
    assert_eq!(nonzero[0]["degree"], 0);
    // S_(1,1) = Λ^2 in two variables
    assert_eq!(nonzero[0]["free_rank"], 1);
    assert!(k["identified"].as_str().unwrap().ends_with("in degree 0"));
}

#[test]
fn inverse_round_trip_through_a_file() {
    let k = spf(&["koszul", "gamma:1,1"]);
    assert_eq!(k.status.code(), Some(0));
    let dir = std::env::temp_dir().join(format!("spf-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("k.json");
    std::fs::write(&path, &k.stdout).unwrap();
    let back = json(&["koszul", "--inverse", path.to_str().unwrap()]);
    // Γ^(1,1) = ⊗^2, reported under the first matching name
    assert_eq!(back["identified"], "⊗^d in degree 0");
    let h0 = back["homology"].as_array().unwrap().iter().find(|h| h["degree"] == 0).unwrap().clone();
    assert_eq!(h0["free_rank"], 4);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn square_is_the_serre_functor() {
    let s = json(&["koszul", "--square", "gamma:2,0"]);
    assert_eq!(s["agrees_with_serre"], true);
    assert_eq!(s["identified"], "S^(2,0) in degree 0");
}

#[test]
fn ext_out_of_the_regular_module() {
    let e = json(&["--max-degree", "3", "ext", "regular", "gamma:1,1"]);
    let rows = e["ext"].as_array().unwrap();
    assert_eq!(rows.len(), 4);
    assert_eq!(rows[0]["free_rank"], 4);
    assert!(rows[1..].iter().all(|r| r["free_rank"] == 0));
}

#[test]
fn verification_suites() {
    let t = json(&["verify", "table"]);
    assert_eq!(t["pass"], true);
    let z = json(&["--ring", "Z", "verify", "serre"]);
    assert!(z["checks"].as_array().unwrap().iter().all(|c| c["outcome"] == "skipped"));
}

#[test]
fn usage_errors() {
    for args in [
        &["--ring", "F4", "schur", "dim"][..],
        &["module", "foo:1"],
        &["module", "gamma:1,1,1"],
        &["--d", "4", "schur", "dim"],
        &["verify", "nonsense"],
        &["--n", "0", "schur", "dim"],
    ] {
        let out = spf(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}
