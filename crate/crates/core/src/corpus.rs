//! Named representations used by the test suites and the CLI.

use serde::Serialize;

use crate::charvariety::{Representation, Triple};
use crate::mcgdyn::dm_triples;
use crate::numfield::FieldElem;
use crate::sl2core::{BinaryGroup, Mat2};
use crate::surface::{special_dihedral_rep, SurfaceSig};

fn m(entries: [&str; 4]) -> Mat2 {
    let [a, b, c, d] = entries.map(|s| s.parse::<FieldElem>().expect("valid literal"));
    Mat2::new(a, b, c, d).expect("determinant 1")
}

/// An explicit SU(2) triple (A, B, C = AB) with the given trace triple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FiniteTriple {
    pub traces: Triple,
    pub group: BinaryGroup,
    pub a: Mat2,
    pub b: Mat2,
    pub c: Mat2,
}

/// Matrix triples in BA₄, BS₄, BA₅, BA₅, BA₅ whose traces are the five
/// representatives of the finite ⟨β₁, β₂⟩-orbits.
pub fn finite_triples() -> Vec<FiniteTriple> {
    let j = ["0", "1", "-1", "0"];
    let [t1, t2, t3, t4, t5] = dm_triples();
    let b1 = m(["-(1+i)/2", "(1-i)/2", "-(1+i)/2", "-(1-i)/2"]);
    vec![
        FiniteTriple {
            traces: t1,
            group: BinaryGroup::BA4,
            a: m(j),
            b: b1.clone(),
            c: m(["-(1+i)/2", "-(1-i)/2", "(1+i)/2", "-(1-i)/2"]),
        },
        FiniteTriple {
            traces: t2,
            group: BinaryGroup::BS4,
            a: m(["0", "(1-i)/sqrt2", "-(1+i)/sqrt2", "0"]),
            b: b1,
            c: m(["-1/sqrt2", "i/sqrt2", "i/sqrt2", "-1/sqrt2"]),
        },
        FiniteTriple {
            traces: t3,
            group: BinaryGroup::BA5,
            a: m(j),
            b: m(["-1/2", "(phi + i/phi)/2", "-(phi - i/phi)/2", "-1/2"]),
            c: m(["-(phi - i/phi)/2", "-1/2", "1/2", "-(phi + i/phi)/2"]),
        },
        FiniteTriple {
            traces: t4,
            group: BinaryGroup::BA5,
            a: m(j),
            b: m([
                "-(1 - phi i)/2",
                "1/(2 phi)",
                "-1/(2 phi)",
                "-(1 + phi i)/2",
            ]),
            c: m([
                "-1/(2 phi)",
                "-(1 + phi i)/2",
                "(1 - phi i)/2",
                "-1/(2 phi)",
            ]),
        },
        FiniteTriple {
            traces: t5,
            group: BinaryGroup::BA5,
            a: m(j),
            b: m(["-phi/2", "1/(2 phi) + i/2", "-1/(2 phi) + i/2", "-phi/2"]),
            c: m(["-1/(2 phi) + i/2", "-phi/2", "phi/2", "-1/(2 phi) - i/2"]),
        },
    ]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CorpusKind {
    BinaryPolyhedral,
    DiagonalFinite,
    DiagonalInfinite,
    SpecialDihedral,
    IrreducibleInfinite,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorpusEntry {
    pub name: String,
    pub kind: CorpusKind,
    pub rep: Representation,
}

fn one_one(images: Vec<Mat2>) -> Representation {
    Representation::surface(SurfaceSig::one_one(), images).expect("two images")
}

fn diag(s: &str) -> Mat2 {
    Mat2::diag(&s.parse().expect("valid literal")).expect("nonzero")
}

fn realized(s: &str) -> Representation {
    let t: Triple = s.parse().expect("valid triple");
    let (a, b) = t.realize().expect("realizable over the field");
    one_one(vec![a, b])
}

/// Representations of the once-punctured torus covering every structural
/// case of the classifier.
pub fn acceptance_corpus() -> Vec<CorpusEntry> {
    let mut out = Vec::new();
    let mut push = |name: &str, kind: CorpusKind, rep: Representation| {
        out.push(CorpusEntry {
            name: name.to_string(),
            kind,
            rep,
        })
    };
    for (k, t) in finite_triples().into_iter().enumerate() {
        push(
            &format!("finite-triple-{}-{}", k + 1, t.group),
            CorpusKind::BinaryPolyhedral,
            one_one(vec![t.a, t.b]),
        );
    }
    let ba5 = BinaryGroup::BA5.elements();
    push(
        "ba5-extra-pair",
        CorpusKind::BinaryPolyhedral,
        one_one(vec![ba5[7].clone(), ba5[60].clone()]),
    );
    push(
        "quaternion-pair",
        CorpusKind::BinaryPolyhedral,
        one_one(vec![diag("i"), m(["0", "1", "-1", "0"])]),
    );

    push(
        "identity",
        CorpusKind::DiagonalFinite,
        one_one(vec![Mat2::identity(), Mat2::identity()]),
    );
    push(
        "diagonal-i-i",
        CorpusKind::DiagonalFinite,
        one_one(vec![diag("i"), diag("i")]),
    );
    push(
        "diagonal-zeta8-i",
        CorpusKind::DiagonalFinite,
        one_one(vec![diag("(1+i)/sqrt2"), diag("i")]),
    );
    push(
        "diagonal-minus-one",
        CorpusKind::DiagonalFinite,
        one_one(vec![Mat2::neg_identity(), diag("(1+i)/sqrt2")]),
    );

    push(
        "diagonal-3-2",
        CorpusKind::DiagonalInfinite,
        one_one(vec![diag("3"), diag("2")]),
    );
    push(
        "diagonal-phi-i",
        CorpusKind::DiagonalInfinite,
        one_one(vec![diag("phi"), diag("i")]),
    );
    push(
        "diagonal-sqrt2-one",
        CorpusKind::DiagonalInfinite,
        one_one(vec![diag("sqrt2"), Mat2::identity()]),
    );

    for (name, lambda) in [
        ("special-dihedral-3", "3"),
        ("special-dihedral-half", "1/2"),
        ("special-dihedral-sqrt2", "sqrt2"),
        ("special-dihedral-phi", "phi"),
    ] {
        let rep = special_dihedral_rep(0, &lambda.parse().expect("valid literal"), &[])
            .expect("nonzero parameter");
        push(name, CorpusKind::SpecialDihedral, rep);
    }

    for (name, t) in [
        ("irreducible-3-3-3", "3,3,3"),
        ("irreducible-0-m1-m3", "0,-1,-3"),
        ("irreducible-3-3-4", "3,3,4"),
    ] {
        push(name, CorpusKind::IrreducibleInfinite, realized(t));
    }
    out
}
