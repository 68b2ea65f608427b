//! Plain-text tables for the `--format table` output.

use serde::Serialize;

use sl2char::classify::ClassificationReport;
use sl2char::classify::{FiniteImage, RestrictionPair};
use sl2char::corpus::CorpusEntry;
use sl2char::mcgdyn::OrbitResult;
use sl2char::sl2core::{NeverTorsionReason, TorsionStatus};
use sl2char::surface::SurveyReport;
use sl2char::verify::VerifyReport;

/// Compact text for a serializable value: bare strings, compact JSON otherwise.
fn cell<T: Serialize>(value: &T) -> String {
    match serde_json::to_value(value).expect("serializable") {
        serde_json::Value::String(s) => s,
        serde_json::Value::Null => "-".to_string(),
        v => v.to_string(),
    }
}

fn table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: Vec<&str>| -> String {
        let mut s = String::new();
        for (k, (c, w)) in cells.iter().zip(&widths).enumerate() {
            if k + 1 == cells.len() {
                s.push_str(c);
            } else {
                s.push_str(c);
                s.push_str(&" ".repeat(w - c.chars().count() + 2));
            }
        }
        s.trim_end().to_string()
    };
    let mut out = vec![line(headers.to_vec())];
    out.push(
        widths
            .iter()
            .map(|w| "-".repeat(*w))
            .collect::<Vec<_>>()
            .join("  "),
    );
    for row in rows {
        out.push(line(row.iter().map(String::as_str).collect()));
    }
    out.join("\n")
}

fn pairs(rows: Vec<(&str, String)>) -> String {
    let rows: Vec<Vec<String>> = rows
        .into_iter()
        .map(|(k, v)| vec![k.to_string(), v])
        .collect();
    table(&["field", "value"], &rows)
}

pub fn orbit_table(r: &OrbitResult) -> String {
    let gens: Vec<&str> = r.generating_set_used.iter().map(|t| t.name()).collect();
    let mut out = pairs(vec![
        ("seed", r.seed.to_string()),
        ("status", cell(&r.status)),
        ("size", r.size.to_string()),
        ("cap", r.cap.to_string()),
        ("generators", gens.join(",")),
    ]);
    if let Some(orbit) = &r.orbit {
        out.push_str("\n\n");
        let rows: Vec<Vec<String>> = orbit
            .iter()
            .enumerate()
            .map(|(k, t)| vec![k.to_string(), t.to_string()])
            .collect();
        out.push_str(&table(&["#", "triple"], &rows));
    }
    out
}

pub fn classify_table(r: &ClassificationReport) -> String {
    let v = &r.theorem_verdict;
    pairs(vec![
        ("signature", r.signature.to_string()),
        (
            "fricke_triple",
            r.fricke_triple
                .as_ref()
                .map_or("-".to_string(), |t| t.to_string()),
        ),
        (
            "irreducible",
            format!(
                "{} ({})",
                r.irreducible.irreducible,
                cell(&r.irreducible.method)
            ),
        ),
        (
            "restriction_pair",
            match &r.restriction_pair {
                RestrictionPair::Found { first, second } => format!("({first}, {second})"),
                RestrictionPair::NotFound { max_factors } => {
                    format!("none with at most {max_factors} factors")
                }
                RestrictionPair::Reducible => "-".to_string(),
            },
        ),
        (
            "diagonal_up_to_conj",
            r.diagonal_up_to_conj.diagonal.to_string(),
        ),
        (
            "dihedral_up_to_conj",
            r.dihedral_up_to_conj.dihedral.to_string(),
        ),
        ("special_dihedral", cell(&r.special_dihedral)),
        (
            "finite_image",
            match r.finite_image {
                FiniteImage::Finite { order } => format!("finite, order {order}"),
                FiniteImage::CapExceeded { cap } => format!("more than {cap} elements"),
            },
        ),
        ("binary_tag", cell(&r.binary_tag)),
        ("literal_membership", cell(&r.literal_membership)),
        ("unitarizable_numeric", cell(&r.unitarizable_numeric)),
        (
            "finite_orbit",
            format!("{} ({})", v.finite_orbit, cell(&v.finite_orbit_clause)),
        ),
        (
            "bounded_orbit",
            format!("{} ({})", v.bounded_orbit, cell(&v.bounded_orbit_clause)),
        ),
    ])
}

pub fn verify_table(r: &VerifyReport) -> String {
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.samples.to_string(),
                c.failures.to_string(),
                if c.passed { "PASS" } else { "FAIL" }.to_string(),
            ]
        })
        .collect();
    format!(
        "{}\n\nsuite {} seed {}: {}",
        table(&["check", "samples", "failures", "result"], &rows),
        r.suite,
        r.seed,
        if r.passed { "PASS" } else { "FAIL" }
    )
}

fn torsion_text(t: &TorsionStatus) -> String {
    match t {
        TorsionStatus::Torsion { order } => format!("order {order}"),
        TorsionStatus::NotTorsionUpTo { bound } => format!("no order <= {bound}"),
        TorsionStatus::NeverTorsion { reason } => match reason {
            NeverTorsionReason::GaloisImageOutsideInterval { galois_index } => {
                format!("infinite (conjugate {galois_index} of the trace outside [-2, 2])")
            }
            other => format!("infinite ({})", cell(other)),
        },
    }
}

pub fn survey_table(r: &SurveyReport) -> String {
    let rows: Vec<Vec<String>> = r
        .entries
        .iter()
        .map(|e| {
            vec![
                e.word.clone(),
                e.trace.to_string(),
                torsion_text(&e.torsion),
            ]
        })
        .collect();
    let s = &r.summary;
    let mut out = table(&["loop", "trace", "torsion"], &rows);
    out.push_str(&format!(
        "\n\nall torsion: {}  distinct traces: {}  order lcm: {}",
        s.all_torsion,
        s.distinct_traces,
        s.order_lcm.map_or("-".to_string(), |n| n.to_string())
    ));
    if !s.non_torsion_witnesses.is_empty() {
        out.push_str(&format!(
            "\nnon-torsion: {}",
            s.non_torsion_witnesses.join(", ")
        ));
    }
    if !s.undetermined.is_empty() {
        out.push_str(&format!("\nundetermined: {}", s.undetermined.join(", ")));
    }
    out
}

pub fn corpus_table(corpus: &[CorpusEntry]) -> String {
    let rows: Vec<Vec<String>> = corpus
        .iter()
        .map(|e| vec![e.name.clone(), cell(&e.kind)])
        .collect();
    table(&["name", "kind"], &rows)
}
