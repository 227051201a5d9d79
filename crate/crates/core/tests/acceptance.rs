//! One line per acceptance criterion. Exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;
use tstruct_core::verify::{self, golden_smc_count, Report, VerifyConfig};

fn suite(name: &str, n: usize, lo: i64, hi: i64) -> Report {
    let mut reports = verify::run(name, &VerifyConfig { n, lo, hi, seed: 20 }).expect("known suite");
    reports.pop().expect("one report")
}

fn summary(r: &Report) -> String {
    r.checks
        .iter()
        .map(|c| format!("{}={:?}/{}", c.claim, c.status, c.checked).to_lowercase())
        .collect::<Vec<_>>()
        .join(" ")
}

struct Criterion {
    id: usize,
    title: &'static str,
    budget: Duration,
    run: fn() -> (bool, String),
}

fn from_report(r: Report) -> (bool, String) {
    let detail = summary(&r);
    (r.passed() && r.checks.iter().all(|c| c.checked > 0), detail)
}

fn golden(name: &str) -> Value {
    let path = format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"));
    serde_json::from_str(&std::fs::read_to_string(path).expect("golden file")).expect("golden JSON")
}

fn c3() -> (bool, String) {
    let r = suite("a2-classification", 2, -3, 0);
    let pinned = golden("a2_classification.json");
    let counts = serde_json::to_value(&r.counts).expect("counts");
    let same = counts == pinned;
    let (ok, detail) = from_report(r);
    (ok && same, format!("{detail} golden={same}"))
}

fn c7() -> (bool, String) {
    let mut ok = true;
    let mut details = Vec::new();
    for w in 0..=3 {
        let r = suite("ky-bijection", 3, -w, 0);
        for n in 1..=3 {
            let found = r.counts.get(&format!("smc n={n}")).copied();
            ok &= found.is_some() && found == golden_smc_count(n, w);
        }
        let (pass, d) = from_report(r);
        ok &= pass;
        details.push(format!("w={w}: {d}"));
    }
    (ok, details.join("; "))
}

fn c11() -> (bool, String) {
    let pinned = golden("semisimple_counts.json");
    let mut ok = true;
    let mut details = Vec::new();
    for w in 0..=3i64 {
        let r = suite("semisimple", 3, -w, 0);
        for s in 1..=3 {
            let all = r.counts.get(&format!("s={s}")).copied();
            let bounded = r.counts.get(&format!("s={s} bounded")).copied();
            let expect = &pinned[s.to_string()][w.to_string()];
            ok &= all == expect["all"].as_u64() && bounded == expect["bounded"].as_u64();
        }
        let (pass, d) = from_report(r);
        ok &= pass;
        details.push(format!("w={w}: {d}"));
    }
    (ok, details.join("; "))
}

const CRITERIA: &[Criterion] = &[
    Criterion { id: 1, title: "Hom/Ext closed form agrees with the oracle, n <= 5", budget: Duration::from_secs(10), run: || from_report(suite("hom-oracle", 5, -3, 3)) },
    Criterion { id: 2, title: "Serre duality validates τ, n <= 4", budget: Duration::from_secs(10), run: || from_report(suite("serre", 4, -3, 0)) },
    Criterion { id: 3, title: "A_2 classification and compatibility columns", budget: Duration::from_secs(30), run: c3 },
    Criterion { id: 4, title: "compatible idempotent for every bounded t-structure, n <= 4", budget: Duration::from_secs(300), run: || from_report(suite("theorem-a_n", 4, -3, 0)) },
    Criterion { id: 5, title: "induction and restriction are inverse, n <= 3", budget: Duration::from_secs(120), run: || from_report(suite("ind-res", 3, -3, 0)) },
    Criterion { id: 6, title: "boundedness is preserved both ways", budget: Duration::from_secs(120), run: || from_report(suite("boundedness", 3, -3, 0)) },
    Criterion { id: 7, title: "SMC / bounded t-structure bijection with golden counts", budget: Duration::from_secs(120), run: c7 },
    Criterion { id: 8, title: "simples of induced hearts", budget: Duration::from_secs(120), run: || from_report(suite("heart-quotient", 3, -3, 0)) },
    Criterion { id: 9, title: "heart Ext^1 between simples equals Hom(X, Y[1])", budget: Duration::from_secs(120), run: || from_report(suite("heart-ext", 3, -3, 0)) },
    Criterion { id: 10, title: "SMC classes have determinant ±1", budget: Duration::from_secs(120), run: || from_report(suite("grothendieck", 3, -3, 0)) },
    Criterion { id: 11, title: "semisimple indexing by extended integer vectors", budget: Duration::from_secs(120), run: c11 },
    Criterion { id: 12, title: "AR component count is an orbit invariant on A_2", budget: Duration::from_secs(120), run: || from_report(suite("orbits", 2, -3, 0)) },
    Criterion { id: 13, title: "compatibility survives simultaneous twisting, 20 seeded triples", budget: Duration::from_secs(120), run: || from_report(suite("twist", 3, -3, 0)) },
];

fn main() -> ExitCode {
    let mut failed = 0;
    for c in CRITERIA {
        let start = Instant::now();
        let (ok, detail) = (c.run)();
        let elapsed = start.elapsed();
        let pass = ok && elapsed <= c.budget;
        failed += usize::from(!pass);
        println!(
            "criterion {:>2}: {} | {} | {:.2}s of {}s | {}",
            c.id,
            if pass { "PASS" } else { "FAIL" },
            c.title,
            elapsed.as_secs_f64(),
            c.budget.as_secs(),
            detail
        );
    }
    println!("{} of {} criteria passed", CRITERIA.len() - failed, CRITERIA.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
