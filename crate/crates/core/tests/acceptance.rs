use std::time::Instant;

use oddclass::suites::{run_suite, SuiteReport};

const SEED: u64 = 20240917;

/// (criterion, title, suite, cases, time budget in seconds)
type Criterion = (u32, &'static str, &'static str, usize, f64);

#[rustfmt::skip]
const CRITERIA: &[Criterion] = &[
    (1, "residue vanishes on odd-class symbols, n = 1 and 3", "residue-vanishing", 500, 30.0),
    (2, "residue of commutators vanishes", "residue-tracial", 100, 60.0),
    (3, "boundary term vanishes, witness gives 4*pi/3", "stokes", 200, 30.0),
    (4, "derivative decomposition round trip", "decomposition", 200, 60.0),
    (5, "odd-class closure and parametrix parity", "odd-closure", 200, 60.0),
    (6, "cut-off integral extends the convergent integral", "cutoff-convergent", 50, 60.0),
    (7, "radial finite-part fit", "radial-fit", 50, 120.0),
    (8, "four-bracket identity", "four-bracket", 100, 60.0),
    (9, "exp/log round trip and determinant multiplicativity", "exp-log-det", 100, 120.0),
    (10, "path determinant consistency and derivative", "path-det", 100, 120.0),
    (11, "mode-matrix commutator traces decay", "mode-commutator", 20, 60.0),
];

fn line(id: u32, title: &str, ok: bool, detail: &str) -> bool {
    println!("[{}] criterion {id:>2}: {title} ({detail})", if ok { "PASS" } else { "FAIL" });
    ok
}

fn check(&(id, title, suite, cases, budget): &Criterion) -> (bool, SuiteReport) {
    let r = run_suite(suite, SEED, cases).expect("known suite");
    let ok = r.passed() && r.cases == cases && r.wall_time_s < budget;
    let mut detail = format!("{} cases, {} failures, {:.2} s of {budget} s", r.cases, r.failures.len(), r.wall_time_s);
    if let Some(f) = r.failures.first() {
        detail.push_str(&format!("; first: case {} {}: {}", f.case, f.message, f.counterexample));
    }
    (line(id, title, ok, &detail), r)
}

fn main() {
    let start = Instant::now();
    let mut all = true;
    let mut first = Vec::new();
    for c in CRITERIA {
        let (ok, r) = check(c);
        all &= ok;
        first.push(r.fingerprint());
    }

    let again: Vec<_> = CRITERIA.iter().map(|c| run_suite(c.2, SEED, c.3).unwrap().fingerprint()).collect();
    let total = start.elapsed().as_secs_f64();
    let same = first == again;
    all &= line(
        12,
        "full suite deterministic under fixed seeds",
        same && total < 600.0,
        &format!("fingerprints {}, two full runs in {total:.1} s of 600 s", if same { "identical" } else { "differ" }),
    );
    if !all {
        eprintln!("acceptance criteria failed");
        std::process::exit(1);
    }
}
