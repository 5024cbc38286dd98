//! Acceptance harness: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::time::{Duration, Instant};

use gauduchon::check::{all_passed, Check};
use gauduchon::fixtures::{find, sweep_grid, FIXTURES};
use gauduchon::formal::{fixture_checks, verify_lemmas};
use gauduchon::geometry::{chern_torsion, curvature, gauduchon, ricci_first};
use gauduchon::report::{build_report, Verdict};
use gauduchon::scalar::rational;
use gauduchon::system::{
    coefficient_identities, determinant, expected_singular_set, factored_determinant, format_roots, singular_set, system_matrix,
    system_matrix_with, verify_system, Tamper,
};

type Criterion = (u32, &'static str, Duration, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome { passed, detail: detail.into() }
}

fn failures(checks: &[Check]) -> String {
    checks.iter().filter(|c| !c.passed).map(|c| format!("{}: {}", c.name, c.detail)).collect::<Vec<_>>().join("; ")
}

fn determinant_reproduction() -> Outcome {
    let det = determinant();
    let target = factored_determinant();
    let deg = det.degree().unwrap_or(0);
    if det == target {
        outcome(true, format!("exact coefficientwise equality, degree {deg}"))
    } else {
        outcome(false, format!("difference {}", &det - &target))
    }
}

fn singular_set_and_ranks() -> Outcome {
    let checks = verify_system(&Tamper::NONE);
    let roots = singular_set();
    let relevant: Vec<&Check> = checks.iter().filter(|c| c.name.starts_with("singular set") || c.name.starts_with("reduced rank")).collect();
    let ok = relevant.len() == 3 && relevant.iter().all(|c| c.passed) && roots.as_ref().ok() == Some(&expected_singular_set());
    let shown = roots.map(|r| format_roots(&r)).unwrap_or_else(|rest| format!("remainder {rest}"));
    let ranks: Vec<String> = relevant.iter().skip(1).map(|c| format!("{} [{}]", c.name, c.detail)).collect();
    outcome(ok, format!("roots {shown}; {}", ranks.join("; ")))
}

fn coefficient_identity() -> Outcome {
    let checks = coefficient_identities(&Tamper::NONE);
    if all_passed(&checks) {
        outcome(true, format!("{} exact identities (norm-derivative coefficient and all 16 entries)", checks.len()))
    } else {
        outcome(false, failures(&checks))
    }
}

fn formal_lemma_suite() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for n in 2..=4 {
        let start = Instant::now();
        match verify_lemmas(n, 100, 0xC0FFEE + n as u64, &Tamper::NONE) {
            Ok(checks) => {
                ok &= all_passed(&checks);
                if !all_passed(&checks) {
                    notes.push(format!("n={n}: {}", failures(&checks)));
                } else {
                    notes.push(format!("n={n}: {} items exact on 100 draws ({:.1?})", checks.len(), start.elapsed()));
                }
            }
            Err(e) => {
                ok = false;
                notes.push(format!("n={n}: {e}"));
            }
        }
    }
    outcome(ok, notes.join("; "))
}

fn fixture_flatness() -> Outcome {
    const TOL: f64 = 1e-10;
    let iw = find("iwasawa").expect("bundled").load().model;
    let r0 = curvature(&iw, &gauduchon(&iw, &rational(0, 1))).max_abs();
    let (t, eta) = chern_torsion(&iw);
    // T^3_12 in zero-based slots
    let t312 = *t.get(&[2, 0, 1]);
    let others = t.data().iter().enumerate().filter(|(q, _)| *q != 2 * 9 + 1 && *q != 2 * 9 + 3).map(|(_, z)| z.norm()).fold(0.0, f64::max);
    let iw_ok = r0 <= TOL && (t312.norm() - 0.5).abs() <= TOL && others <= TOL && eta.max_abs() <= TOL;

    let hopf = find("hopf").expect("bundled").load().model;
    let bismut = gauduchon(&hopf, &rational(2, 1));
    let r2 = curvature(&hopf, &bismut).max_abs();
    let torsion = bismut.torsion(&hopf);
    let skew = torsion.skew_defect();
    let hopf_ok = r2 <= TOL && skew <= TOL && torsion.max_abs() > TOL;
    outcome(
        iw_ok && hopf_ok,
        format!(
            "iwasawa |R^0| = {r0:.1e}, T^3_12 = {:.3}{:+.3}i, |η| = {:.1e}; hopf |R^2| = {r2:.1e}, skew defect {skew:.1e}, |T^2| = {:.3}",
            t312.re,
            t312.im,
            eta.max_abs(),
            torsion.max_abs()
        ),
    )
}

fn consistency_sweep() -> Outcome {
    let grid = sweep_grid();
    let mut violations = Vec::new();
    let mut torus_ok = true;
    let mut rows = 0;
    for f in &FIXTURES {
        let doc = build_report(&f.load(), &grid, 1e-9);
        rows += doc.rows.len();
        if doc.verdict == Verdict::Violation {
            violations.extend(doc.rows.iter().filter(|r| r.violation).map(|r| format!("{} at s={}", f.name, r.s)));
        }
        if f.name.starts_with("torus") {
            torus_ok &= doc.torsion.kahler && doc.rows.iter().all(|r| r.kahler_like);
        }
    }
    outcome(
        violations.is_empty() && torus_ok && grid.len() == 12,
        format!("{} fixtures × {} s-values = {rows} rows, {} violations, torus Kähler-like everywhere: {torus_ok}", FIXTURES.len(), grid.len(), violations.len()),
    )
}

fn balanced_ricci() -> Outcome {
    let iw = find("iwasawa").expect("bundled").load().model;
    let worst = sweep_grid().iter().map(|s| ricci_first(&iw, s).max_abs()).fold(0.0, f64::max);
    outcome(worst <= 1e-10, format!("max over grid |Ric(∇^s)| = {worst:.1e}"))
}

fn structural_identities() -> Outcome {
    let hopf = find("hopf").expect("bundled").load().model;
    let checks = fixture_checks(&hopf, &rational(2, 1), 1e-10);
    let named = ["torsion identity 1", "torsion identity 2", "torsion identity 3", "eta corollary 4", "second-derivative commutation", "system rows vanish"];
    let present = named.iter().all(|n| checks.iter().any(|c| c.name == *n));
    if all_passed(&checks) && present {
        outcome(true, format!("{} identities hold to 1e-10 at s=2", checks.len()))
    } else {
        outcome(false, format!("missing items: {}; {}", !present, failures(&checks)))
    }
}

/// Which of suites 1–4 reject the mutated system.
fn killers(tamper: &Tamper) -> Vec<&'static str> {
    let mut out = Vec::new();
    let matrix = system_matrix_with(tamper);
    let det = matrix.determinant_bareiss();
    if det != factored_determinant() {
        out.push("1");
    }
    let checks = verify_system(tamper);
    if checks.iter().any(|c| !c.passed && (c.name.starts_with("singular") || c.name.starts_with("reduced"))) {
        out.push("2");
    }
    if !all_passed(&coefficient_identities(tamper)) {
        out.push("3");
    }
    let lemmas = (2..=3).any(|n| verify_lemmas(n, 3, 7, tamper).map_or(true, |c| !all_passed(&c)));
    if lemmas {
        out.push("4");
    }
    out
}

fn mutation_sensitivity() -> Outcome {
    let mut mutants: Vec<(String, Tamper)> = vec![
        ("a".into(), Tamper { flip_a: true, ..Tamper::NONE }),
        ("b".into(), Tamper { flip_b: true, ..Tamper::NONE }),
        ("c".into(), Tamper { flip_c: true, ..Tamper::NONE }),
    ];
    for r in 0..4 {
        for c in 0..4 {
            mutants.push((format!("entry ({},{})", r + 1, c + 1), Tamper { flip_entry: Some((r, c)), ..Tamper::NONE }));
        }
    }
    let genuine = system_matrix();
    let mut survivors = Vec::new();
    let mut equivalent = Vec::new();
    let mut killed = Vec::new();
    for (name, tamper) in &mutants {
        // negating an identically zero entry leaves the system unchanged
        if tamper.flip_entry.is_some() && system_matrix_with(tamper) == genuine {
            equivalent.push(name.clone());
            continue;
        }
        let k = killers(tamper);
        if k.is_empty() {
            survivors.push(name.clone());
        } else {
            killed.push(format!("{name}→{}", k.join("")));
        }
    }
    let mut detail = format!("{}/{} non-equivalent mutants killed by suites [{}]", killed.len(), mutants.len() - equivalent.len(), killed.join(" "));
    if !equivalent.is_empty() {
        detail.push_str(&format!("; equivalent (entry ≡ 0, sign flip is a no-op): {}", equivalent.join(", ")));
    }
    if !survivors.is_empty() {
        detail.push_str(&format!("; SURVIVED: {}", survivors.join(", ")));
    }
    outcome(survivors.is_empty(), detail)
}

fn main() {
    let criteria: [Criterion; 9] = [
        (1, "determinant reproduction", Duration::from_secs(1), determinant_reproduction),
        (2, "singular set and reduced ranks", Duration::from_secs(1), singular_set_and_ranks),
        (3, "coefficient identities", Duration::from_secs(1), coefficient_identity),
        (4, "formal lemma suite", Duration::from_secs(120), formal_lemma_suite),
        (5, "fixture flatness", Duration::from_secs(10), fixture_flatness),
        (6, "rigidity consistency sweep", Duration::from_secs(30), consistency_sweep),
        (7, "balanced Ricci vanishing", Duration::from_secs(10), balanced_ricci),
        (8, "structural identities on Kähler-like data", Duration::from_secs(10), structural_identities),
        (9, "mutation sensitivity", Duration::from_secs(120), mutation_sensitivity),
    ];
    let mut all = true;
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let o = run();
        let elapsed = start.elapsed();
        let in_time = elapsed <= budget;
        let passed = o.passed && in_time;
        all &= passed;
        let timing = if in_time { format!("{elapsed:.2?}") } else { format!("{elapsed:.2?} exceeds {budget:?}") };
        println!("{} criterion {id}: {name} ({timing}) {}", if passed { "PASS" } else { "FAIL" }, o.detail);
    }
    if !all {
        std::process::exit(1);
    }
}
