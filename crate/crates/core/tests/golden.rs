use serde_json::Value;

use tstruct_core::repcat::Algebra;
use tstruct_core::tstr::{enumerate_smc, enumerate_tstructures, semisimple_tstructures};
use tstruct_core::verify::{self, golden_smc_count, VerifyConfig};

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn smc_counts() {
    for n in 1..=3 {
        for w in 0..=3 {
            let alg = Algebra::linear(n);
            let count = enumerate_smc(&alg, -w, 0).len() as u64;
            assert_eq!(Some(count), golden_smc_count(n, w), "n={n} w={w}");
            assert_eq!(enumerate_tstructures(&alg, -w, 0).len() as u64, count);
        }
    }
}

#[test]
fn a2_table() {
    let r = verify::run("a2-classification", &VerifyConfig { n: 2, lo: -3, hi: 0, seed: 0 }).unwrap();
    assert_eq!(serde_json::to_value(&r[0].counts).unwrap(), golden("a2_classification.json"));
}

#[test]
fn semisimple_counts() {
    let pinned = golden("semisimple_counts.json");
    for s in 1..=3usize {
        for w in 0..=3i64 {
            let vs = semisimple_tstructures(s, 0, w);
            let bounded = vs.iter().filter(|v| v.iter().all(|c| c.is_finite())).count();
            let expect = &pinned[s.to_string()][w.to_string()];
            assert_eq!(vs.len() as u64, expect["all"].as_u64().unwrap());
            assert_eq!(bounded as u64, expect["bounded"].as_u64().unwrap());
        }
    }
}
