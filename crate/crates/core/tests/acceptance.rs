//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs without the libtest harness so the lines come out in order. Exits
//! nonzero if a criterion fails that is not listed in `KNOWN_FAILURES`.

use std::process::ExitCode;
use std::time::Instant;

use sl2char::charvariety::Triple;
use sl2char::classify::{
    classify, finite_image, is_special_dihedral, theorem_verdict, unitarizable_numeric,
    ClassifyConfig, FiniteImage, SpecialDihedral, Unitarizable,
};
use sl2char::corpus::{acceptance_corpus, finite_triples};
use sl2char::mcgdyn::{dm_triples, is_admissible, orbit_bfs_set, GeneratingSet, OrbitStatus};
use sl2char::numfield::FieldElem;
use sl2char::sl2core::{closure, is_torsion, BinaryGroup, Mat2};
use sl2char::surface::{monodromy_survey, special_dihedral_rep, SurfaceSig};
use sl2char::verify::{run_suite, Suite, VerifyConfig};

const CAP: usize = 100_000;
const CLOSURE_CAP: usize = 10_000;
/// Orbit cap for the corpus comparison, matching the classifier's closure cap.
const CORPUS_ORBIT_CAP: usize = 10_000;
const TOL: f64 = 1e-9;
const K_MAX: u32 = 120;

/// ⟨β₁, β₂⟩-orbit sizes of the five finite representatives, from an
/// independent exact BFS.
const DM_ORBIT_SIZES: [usize; 5] = [16, 36, 40, 40, 72];

/// (1,1,1) lies in the orbit of (0,−1,−1) up to signs and has a finite orbit
/// of size 16, so criterion 2 cannot hold as stated.
const KNOWN_FAILURES: &[u32] = &[2];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn criterion_1() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (t, &golden) in dm_triples().iter().zip(&DM_ORBIT_SIZES) {
        let r = orbit_bfs_set(t, GeneratingSet::Beta, CAP);
        let all = r.orbit.iter().flatten().all(is_admissible);
        let good = is_admissible(t) && r.status == OrbitStatus::Finite && r.size == golden && all;
        ok &= good;
        notes.push(format!("{t}:{}", r.size));
    }
    outcome(ok, notes.join(" "))
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for s in ["0,-1,-3", "1,1,1", "3,3,3"] {
        let t: Triple = s.parse().expect("triple");
        ok &= is_admissible(&t);
        for set in [GeneratingSet::Beta, GeneratingSet::Twists] {
            let r = orbit_bfs_set(&t, set, CAP);
            ok &= r.status == OrbitStatus::CapExceeded;
            notes.push(format!("({s}) {}: {:?} {}", set.name(), r.status, r.size));
        }
    }
    outcome(ok, notes.join("; "))
}

fn criterion_3() -> Outcome {
    let expected = [
        BinaryGroup::BA4,
        BinaryGroup::BS4,
        BinaryGroup::BA5,
        BinaryGroup::BA5,
        BinaryGroup::BA5,
    ];
    let mut ok = true;
    let mut notes = Vec::new();
    for (ft, (rep, group)) in finite_triples()
        .iter()
        .zip(dm_triples().iter().zip(expected))
    {
        ok &= ft.traces == *rep && Triple::of_pair(&ft.a, &ft.b) == *rep;
        ok &= &ft.a * &ft.b == ft.c;
        let g = closure(&[ft.a.clone(), ft.b.clone(), ft.c.clone()], CLOSURE_CAP);
        ok &= g.is_finite() && g.elements.iter().flatten().all(|x| group.contains(x));
        notes.push(format!("{group}:{}", g.order));
    }
    outcome(ok, notes.join(" "))
}

fn criterion_4() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for (g, order) in BinaryGroup::ALL.into_iter().zip([24, 48, 120]) {
        let els = g.elements();
        ok &= els.len() == order;
        for x in els {
            ok &= g.contains(&x.inverse());
            ok &= els.iter().all(|y| g.contains(&(x * y)));
            ok &= is_torsion(x, K_MAX)
                .order()
                .is_some_and(|k| order % k as usize == 0);
        }
        notes.push(format!("{g}:{}", els.len()));
    }
    outcome(ok, notes.join(" "))
}

fn suite_outcome(suite: Suite) -> Outcome {
    let r = run_suite(suite, &VerifyConfig::default());
    let failed: Vec<String> = r
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| format!("{} ({} of {})", c.name, c.failures, c.samples))
        .collect();
    let total: usize = r.checks.iter().map(|c| c.samples).sum();
    if failed.is_empty() {
        outcome(true, format!("{} checks, {total} samples", r.checks.len()))
    } else {
        outcome(false, failed.join(", "))
    }
}

fn criterion_7() -> Outcome {
    let mut ok = true;
    let mut notes = Vec::new();
    for s in ["3", "1/2", "sqrt2"] {
        let lambda: FieldElem = s.parse().expect("literal");
        let rep = special_dihedral_rep(0, &lambda, &[]).expect("rep");
        let sig = SurfaceSig::one_one();
        let t = rep.fricke_triple().expect("genus one");
        let y = &lambda + &lambda.inv().expect("nonzero");
        ok &= t == Triple::new(FieldElem::zero(), y, FieldElem::zero());
        let r = orbit_bfs_set(&t, GeneratingSet::Twists, CAP);
        ok &= r.status == OrbitStatus::Finite && (r.size == 6 || r.size == 4);
        ok &= is_special_dihedral(&rep, sig) == SpecialDihedral::Value(true);
        let image = finite_image(&rep, CLOSURE_CAP);
        if s == "3" {
            ok &= matches!(image, FiniteImage::CapExceeded { .. });
        }
        notes.push(format!("lambda={s}: orbit {}", r.size));
    }
    outcome(ok, notes.join(", "))
}

fn criterion_8() -> Outcome {
    let config = ClassifyConfig::default();
    let sig = SurfaceSig::one_one();
    let corpus = acceptance_corpus();
    let mut disagreements = Vec::new();
    for e in &corpus {
        let verdict = theorem_verdict(&e.rep, sig, &config);
        let t = e.rep.fricke_triple().expect("genus one");
        let orbit = orbit_bfs_set(&t, GeneratingSet::Twists, CORPUS_ORBIT_CAP);
        if verdict.finite_orbit != orbit.is_finite() {
            disagreements.push(e.name.clone());
        }
    }
    outcome(
        corpus.len() >= 20 && disagreements.is_empty(),
        format!(
            "{} representations, {} disagreements {:?}",
            corpus.len(),
            disagreements.len(),
            disagreements
        ),
    )
}

fn criterion_9() -> Outcome {
    let mut ok = true;
    for ft in finite_triples() {
        let rep = sl2char::charvariety::Representation::free(vec![ft.a, ft.b]).expect("rep");
        ok &= unitarizable_numeric(&rep, 53, TOL) == Unitarizable::Yes;
    }
    let d = Mat2::diag(&FieldElem::from_int(3)).expect("diag");
    for other in [Mat2::identity(), d.clone(), finite_triples()[0].a.clone()] {
        let rep = sl2char::charvariety::Representation::free(vec![d.clone(), other]).expect("rep");
        ok &= unitarizable_numeric(&rep, 53, TOL) == Unitarizable::No;
    }
    let config = ClassifyConfig::default();
    let sig = SurfaceSig::one_one();
    let inconclusive: Vec<String> = acceptance_corpus()
        .iter()
        .filter(|e| {
            classify(&e.rep, sig, &config)
                .expect("classify")
                .unitarizable_numeric
                == Unitarizable::Inconclusive
        })
        .map(|e| e.name.clone())
        .collect();
    ok &= inconclusive.is_empty();
    outcome(ok, format!("inconclusive {inconclusive:?}"))
}

fn criterion_10() -> Outcome {
    let sig = SurfaceSig::one_one();
    let mut ok = true;
    let mut checked = 0;
    for e in acceptance_corpus() {
        let in_ba5 = e
            .rep
            .generator_images()
            .iter()
            .all(|g| BinaryGroup::BA5.contains(g));
        if !in_ba5 {
            continue;
        }
        checked += 1;
        let r = monodromy_survey(&e.rep, sig, 3, K_MAX).expect("survey");
        ok &= r.summary.all_torsion;
    }
    let rep = special_dihedral_rep(0, &FieldElem::from_int(3), &[]).expect("rep");
    let r = monodromy_survey(&rep, sig, 3, K_MAX).expect("survey");
    ok &= !r.summary.all_torsion && r.summary.non_torsion_witnesses.iter().any(|w| w == "b1");
    outcome(
        ok && checked >= 3,
        format!(
            "{checked} BA5 reps all torsion; witnesses {:?}",
            r.summary.non_torsion_witnesses
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Outcome); 10] = [
        (1, "finite beta orbits of the five triples", criterion_1),
        (2, "admissible seeds escape the orbit cap", criterion_2),
        (3, "explicit matrix triples", criterion_3),
        (4, "binary polyhedral groups", criterion_4),
        (5, "trace identities and skein rewriting", || {
            suite_outcome(Suite::Identities)
        }),
        (6, "kappa invariance and inverse maps", || {
            suite_outcome(Suite::Invariants)
        }),
        (
            7,
            "special dihedral finite orbit, infinite image",
            criterion_7,
        ),
        (
            8,
            "verdict agrees with orbit BFS on the corpus",
            criterion_8,
        ),
        (9, "numeric unitarizability", criterion_9),
        (10, "monodromy survey split", criterion_10),
    ];
    let mut unexpected = Vec::new();
    for (n, title, run) in criteria {
        let start = Instant::now();
        let o = run();
        let mark = if o.passed { "PASS" } else { "FAIL" };
        let known = !o.passed && KNOWN_FAILURES.contains(&n);
        println!(
            "criterion {n:>2} {mark} {title}: {}{} [{:.1}s]",
            o.detail,
            if known { " (known failure)" } else { "" },
            start.elapsed().as_secs_f64()
        );
        if !o.passed && !known {
            unexpected.push(n);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
