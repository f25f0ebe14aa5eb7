//! One pass/fail line per acceptance criterion. Exits nonzero if any fails.

use std::process::ExitCode;
use std::time::Instant;

use char2forms::examples::run_example;
use char2forms::report::{Report, Verdict};
use char2forms::suites::{self, Suite};
use char2forms::Options;

struct Outcome {
    ok: bool,
    detail: String,
}

fn example(name: &str) -> Report {
    run_example(name, &Options::default()).expect("built-in example")
}

fn mismatches(r: &Report) -> Vec<String> {
    r.checks.iter().filter(|c| !c.matches()).map(|c| format!("{}:{}", r.name, c.id)).collect()
}

/// All claims match, the named checks exist, and `prefix` checks number at least `count`.
fn examine(r: &Report, required: &[&str], counted: &[(&str, usize)]) -> Outcome {
    let mut problems = mismatches(r);
    for id in required {
        match r.check(id) {
            Some(_) => {}
            None => problems.push(format!("{}: missing {id}", r.name)),
        }
    }
    for (prefix, count) in counted {
        let n = r.checks_with_prefix(prefix).filter(|c| !c.id.ends_with("-residue")).count();
        if n < *count {
            problems.push(format!("{}: {n} {prefix}* checks, want {count}", r.name));
        }
    }
    let ok = problems.is_empty();
    let detail = if ok {
        format!("{}: {}/{} claims", r.name, r.checks.len(), r.checks.len())
    } else {
        problems.join("; ")
    };
    Outcome { ok, detail }
}

fn combine(parts: Vec<Outcome>) -> Outcome {
    let ok = parts.iter().all(|p| p.ok);
    Outcome { ok, detail: parts.into_iter().map(|p| p.detail).collect::<Vec<_>>().join(", ") }
}

fn suites_outcome(list: Vec<Suite>) -> Outcome {
    let ok = list.iter().all(Suite::passed);
    let mut detail: Vec<String> = list.iter().map(Suite::line).collect();
    for s in &list {
        detail.extend(s.failures.iter().take(3).map(|f| format!("  {}: {f}", s.name)));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn criterion1() -> Outcome {
    let r = example("ex3_2");
    let mut o = examine(
        &r,
        &["session-01-anisotropic", "session-02-isotropic", "explicit-vector", "generic"],
        &[("binary-", 7), ("sample-", 50)],
    );
    let vector = r.check("explicit-vector").is_some_and(|c| c.claim.contains("1·sqrt(xz+y)^2 + x·sqrt(z)^2 + y·1^2 = 0"));
    if !vector {
        o.ok = false;
        o.detail.push_str("; explicit vector claim missing");
    }
    o
}

fn criterion2() -> Outcome {
    examine(&example("ex3_3"), &["degree", "exponent", "socle", "nonmodular", "sqrt-z-independent", "aniso-L"], &[])
}

fn criterion3() -> Outcome {
    examine(&example("ex4_5"), &["residue-slots", "aniso-L", "aniso-L-direct", "iso-M", "generic"], &[("sample-", 30)])
}

fn criterion4() -> Outcome {
    examine(&example("ex4_11"), &["filtration", "aniso-F", "aniso-E'", "aniso-E'-direct", "iso-E"], &[])
}

fn criterion5() -> Outcome {
    combine(vec![
        examine(&example("ex4_6"), &["aniso-L", "iso-M", "M-degree", "M-exponent"], &[]),
        examine(&example("ex4_7"), &["aniso-L'", "aniso-L", "iso-M", "M-degree", "M-exponent"], &[]),
        examine(
            &example("ex4_8"),
            &["M-degree", "M-exponent", "M-socle", "independent", "aniso-L(sqrt z)", "iso-M"],
            &[("sample-", 20)],
        ),
        examine(&example("ex4_12"), &["M-degree", "M-exponent", "aniso-F'(sqrt T)", "iso-M"], &[]),
    ])
}

fn criterion6() -> Outcome {
    suites_outcome(vec![suites::composition(0, 200)])
}

fn criterion7() -> Outcome {
    let r = example("cor5_1");
    let mut o = examine(&r, &["O-division-L", "O-split-M"], &[("O-sample-", 10)]);
    let split = r.check("O-split-M").is_some_and(|c| c.verdict == Verdict::Split && c.certificate.verify());
    if !split {
        o.ok = false;
        o.detail.push_str("; no verified zero-divisor pair over M");
    }
    o
}

fn criterion8() -> Outcome {
    suites_outcome(suites::property_suites(0))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("ex3_2: bilinear Pfister form over F, E and quadratic subextensions", criterion1),
        ("ex3_3: Sweedler extension structure and anisotropy over F(sqrt z)", criterion2),
        ("ex4_5: residue criterion over L, isotropy over M, sampled L(a)", criterion3),
        ("ex4_11: filtration, Arf rewrite over E', isotropy over E", criterion4),
        ("ex4_6, ex4_7, ex4_8, ex4_12 at smallest parameters", criterion5),
        ("composition algebras: tables, 200 composition pairs, norm forms", criterion6),
        ("cor5_1: octonion division over L, split over M, sampled L(a)", criterion7),
        ("property suites", criterion8),
    ];
    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run();
        let secs = start.elapsed().as_secs_f64();
        println!("criterion {}: {} [{label}] ({secs:.1}s) {}", k + 1, if o.ok { "PASS" } else { "FAIL" }, o.detail);
        if !o.ok {
            failed += 1;
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
