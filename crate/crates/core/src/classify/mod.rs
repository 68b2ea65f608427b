//! Classification of surface-group representations: irreducibility,
//! diagonal and dihedral structure, finiteness, unitarity, and the
//! predicted finiteness of the mapping class group orbit.
//!
//! Dihedrality is decided from traces. An irreducible ρ is conjugate into
//! D∞ iff ρ ≅ ρ ⊗ χ for a nontrivial character χ: π → {±1}, and the
//! characters of ρ and ρ ⊗ χ agree iff they agree on the products of at
//! most three distinct generators in increasing order, since those traces
//! generate the coordinate ring. So ρ is dihedral iff some nonzero
//! ε: generators → ℤ/2 makes every such product of odd ε-weight traceless.
//! A reducible ρ is dihedral iff it is diagonalizable, since a reducible
//! subgroup of D∞ has central diagonal part.
//!
//! In genus one, special dihedral reps are those dihedral reps whose ε can
//! be chosen to vanish on every puncture loop c_i. The nonzero choices of
//! (ε(a₁), ε(b₁)) are (1,0), (0,1) and (1,1); they correspond to the
//! antidiagonal generator being a₁, b₁ or a₁b₁ (the generator changes
//! a₁ ↔ b₁ and a₁ ↦ a₁b₁), and the curve whose complement is diagonal is
//! the simple loop dual to ε.

mod unitary;

use serde::Serialize;

use crate::charvariety::{fricke_commutator_trace, CharError, Representation, Triple};
use crate::numfield::FieldElem;
use crate::sl2core::{
    closure, is_torsion, BinaryGroup, ClosureResult, Mat2, DEFAULT_CLOSURE_CAP,
    DEFAULT_TORSION_BOUND,
};
use crate::surface::{cyclic_order_simple_words, SurfaceSig};

pub use unitary::{unitarizable_numeric, Unitarizable, DEFAULT_UNITARY_TOL};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IrreducibilityMethod {
    CommutatorTrace,
    SpanTest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub method: IrreducibilityMethod,
}

/// For two generators, tr[A, B] ≠ 2; otherwise the span test.
pub fn irreducibility(rep: &Representation) -> Irreducibility {
    let images = rep.images();
    if images.len() == 2 {
        let t = Triple::of_pair(&images[0], &images[1]);
        return Irreducibility {
            irreducible: fricke_commutator_trace(&t) != FieldElem::from_int(2),
            method: IrreducibilityMethod::CommutatorTrace,
        };
    }
    Irreducibility {
        irreducible: span_test(images),
        method: IrreducibilityMethod::SpanTest,
    }
}

pub fn is_irreducible(rep: &Representation) -> bool {
    irreducibility(rep).irreducible
}

/// True iff the images of all positive words of length ≤ 4 span the
/// 4-dimensional space of 2×2 matrices.
///
/// Inverses are not needed: A⁻¹ = tr A · I − A in SL₂.
pub fn span_test(images: &[Mat2]) -> bool {
    let mut basis: Vec<[FieldElem; 4]> = Vec::new();
    let mut layer = vec![Mat2::identity()];
    insert_vector(&mut basis, Mat2::identity().entries().clone());
    for _ in 0..4 {
        let mut next = Vec::new();
        for w in &layer {
            for g in images {
                let m = w * g;
                insert_vector(&mut basis, m.entries().clone());
                next.push(m);
            }
        }
        if basis.len() == 4 {
            return true;
        }
        layer = next;
    }
    basis.len() == 4
}

/// Adds `v` to an echelon basis if it is independent; basis rows keep
/// their pivot at the first nonzero coordinate.
fn insert_vector(basis: &mut Vec<[FieldElem; 4]>, mut v: [FieldElem; 4]) -> bool {
    for row in basis.iter() {
        let pivot = row.iter().position(|x| !x.is_zero()).expect("nonzero row");
        if !v[pivot].is_zero() {
            // Fraction-free: v ← row[p]·v − v[p]·row keeps coefficients small.
            let (r, f) = (row[pivot].clone(), v[pivot].clone());
            for j in 0..4 {
                v[j] = &(&r * &v[j]) - &(&f * &row[j]);
            }
        }
    }
    if v.iter().all(|x| x.is_zero()) {
        return false;
    }
    basis.push(v);
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Diagonality {
    pub diagonal: bool,
    /// `Q` with `Q g Q⁻¹` diagonal for every generator, when it can be
    /// written over the field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Mat2>,
}

/// Whether all generators commute and are diagonalizable.
pub fn is_diagonal_up_to_conj(rep: &Representation) -> Diagonality {
    let images = rep.images();
    let commuting = images.iter().enumerate().all(|(k, a)| {
        images[k + 1..]
            .iter()
            .all(|b| a.commutator(b).is_identity())
    });
    let diagonalizable = images.iter().all(is_diagonalizable);
    let diagonal = commuting && diagonalizable;
    let witness = if !diagonal {
        None
    } else {
        match images.iter().find(|g| !g.is_central()) {
            None => Some(Mat2::identity()),
            Some(g) => eigenframe(g).map(|p| p.inverse()),
        }
    };
    Diagonality { diagonal, witness }
}

fn is_diagonalizable(m: &Mat2) -> bool {
    let t = m.trace();
    let two = FieldElem::from_int(2);
    m.is_central() || (t != two && t != -two)
}

/// `P` of determinant 1 whose columns are eigenvectors of `g`, when the
/// eigenvalues of `g` are distinct and lie in the field.
fn eigenframe(g: &Mat2) -> Option<Mat2> {
    let t = g.trace();
    let root = (&t.square() - &FieldElem::from_int(4)).sqrt()?;
    if root.is_zero() {
        return None;
    }
    let half = FieldElem::frac(1, 2);
    let lambdas = [&(&t + &root) * &half, &(&t - &root) * &half];
    let vector = |l: &FieldElem| -> [FieldElem; 2] {
        if !g.a12().is_zero() {
            [g.a12().clone(), l - g.a11()]
        } else if !g.a21().is_zero() {
            [l - g.a22(), g.a21().clone()]
        } else if l == g.a11() {
            [FieldElem::one(), FieldElem::zero()]
        } else {
            [FieldElem::zero(), FieldElem::one()]
        }
    };
    let [u, v] = lambdas.map(|l| vector(&l));
    let det = &(&u[0] * &v[1]) - &(&v[0] * &u[1]);
    let inv = det.inv().ok()?;
    Mat2::new(u[0].clone(), &v[0] * &inv, u[1].clone(), &v[1] * &inv).ok()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dihedrality {
    pub dihedral: bool,
    /// ε(g) = 1 for generators sent to the antidiagonal part, when irreducible.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<Vec<u8>>,
    /// `Q` with every `Q g Q⁻¹` diagonal or antidiagonal, when it can be
    /// written over the field.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Mat2>,
}

/// Traces of the products of at most three distinct generators in
/// increasing order, keyed by the generator bitmask.
fn small_product_traces(images: &[Mat2]) -> Vec<(u32, FieldElem)> {
    let m = images.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << m) {
        if mask.count_ones() > 3 {
            continue;
        }
        let mut acc = Mat2::identity();
        for k in 0..m {
            if mask >> k & 1 == 1 {
                acc = &acc * &images[k];
            }
        }
        out.push((mask, acc.trace()));
    }
    out
}

/// All nonzero ε (as bitmasks over generators) such that every small
/// product of odd ε-weight is traceless.
fn dihedral_characters(images: &[Mat2]) -> Vec<u32> {
    let traces = small_product_traces(images);
    (1u32..(1u32 << images.len()))
        .filter(|eps| {
            traces
                .iter()
                .all(|(mask, t)| (mask & eps).count_ones() % 2 == 0 || t.is_zero())
        })
        .collect()
}

fn mask_to_vec(mask: u32, m: usize) -> Vec<u8> {
    (0..m).map(|k| (mask >> k & 1) as u8).collect()
}

/// Looks for a frame, from the eigenlines of some generator, in which every
/// generator is diagonal or antidiagonal.
fn dihedral_frame(images: &[Mat2]) -> Option<Mat2> {
    if images
        .iter()
        .all(|g| g.is_diagonal() || g.is_antidiagonal())
    {
        return Some(Mat2::identity());
    }
    images.iter().filter(|g| !g.is_central()).find_map(|g| {
        let q = eigenframe(g)?.inverse();
        images
            .iter()
            .all(|h| {
                let c = h.conjugate_by(&q);
                c.is_diagonal() || c.is_antidiagonal()
            })
            .then_some(q)
    })
}

pub fn is_dihedral_up_to_conj(rep: &Representation) -> Dihedrality {
    let images = rep.images();
    if !is_irreducible(rep) {
        let d = is_diagonal_up_to_conj(rep);
        return Dihedrality {
            dihedral: d.diagonal,
            epsilon: None,
            witness: d.witness,
        };
    }
    match dihedral_characters(images).first() {
        None => Dihedrality {
            dihedral: false,
            epsilon: None,
            witness: None,
        },
        Some(&eps) => Dihedrality {
            dihedral: true,
            epsilon: Some(mask_to_vec(eps, images.len())),
            witness: dihedral_frame(images),
        },
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case", untagged)]
pub enum SpecialDihedral {
    Value(bool),
    #[serde(serialize_with = "not_applicable")]
    NotApplicable,
}

fn not_applicable<S: serde::Serializer>(s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str("not-applicable")
}

impl SpecialDihedral {
    pub fn is_true(self) -> bool {
        self == SpecialDihedral::Value(true)
    }
}

/// Genus one only: irreducible, and dihedral with the puncture loops in the
/// diagonal part.
pub fn is_special_dihedral(rep: &Representation, sig: SurfaceSig) -> SpecialDihedral {
    if sig.genus() != 1 {
        return SpecialDihedral::NotApplicable;
    }
    if !is_irreducible(rep) {
        return SpecialDihedral::Value(false);
    }
    // Stored generators are a₁, b₁, c₁, …, c_{n−1}; c_n follows from the relation.
    let found = dihedral_characters(rep.images())
        .into_iter()
        .any(|eps| eps & !0b11 == 0);
    SpecialDihedral::Value(found)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum FiniteImage {
    Finite { order: usize },
    CapExceeded { cap: usize },
}

impl FiniteImage {
    pub fn is_finite(self) -> bool {
        matches!(self, FiniteImage::Finite { .. })
    }
}

pub fn finite_image(rep: &Representation, cap: usize) -> FiniteImage {
    let r = closure(rep.images(), cap);
    if r.is_finite() {
        FiniteImage::Finite { order: r.order }
    } else {
        FiniteImage::CapExceeded { cap }
    }
}

/// Isomorphism type of a finite image among the binary polyhedral groups.
///
/// Finite subgroups of SL₂ are cyclic, binary dihedral (both with an element
/// of order at least |G|/2), or binary tetrahedral, octahedral or
/// icosahedral, of orders 24, 48 and 120.
pub fn binary_tag(group: &ClosureResult) -> Option<BinaryGroup> {
    let elements = group.elements.as_ref()?;
    let n = elements.len();
    let max_order = elements
        .iter()
        .filter_map(|g| is_torsion(g, DEFAULT_TORSION_BOUND).order())
        .max()
        .unwrap_or(1) as usize;
    if 2 * max_order >= n {
        return None;
    }
    match n {
        24 => Some(BinaryGroup::BA4),
        48 => Some(BinaryGroup::BS4),
        120 => Some(BinaryGroup::BA5),
        _ => None,
    }
}

/// Outcome of the search for two loops on which ρ restricts irreducibly.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum RestrictionPair {
    Found {
        first: String,
        second: String,
    },
    /// ρ is irreducible but no pair within the bound certifies it.
    NotFound {
        max_factors: usize,
    },
    Reducible,
}

pub const DEFAULT_PAIR_FACTORS: usize = 3;

/// First pair (u, v) of cyclic-order words with at most `max_factors`
/// factors, shortest first and then in canonical order, with tr[ρ(u), ρ(v)] ≠ 2. Whether the pair
/// actually bounds a one-holed torus is not checked.
pub fn irreducible_restriction(
    rep: &Representation,
    sig: SurfaceSig,
    max_factors: usize,
) -> RestrictionPair {
    if !is_irreducible(rep) {
        return RestrictionPair::Reducible;
    }
    let names = sig.generator_names();
    let words = cyclic_order_simple_words(sig, max_factors);
    let images: Vec<Mat2> = words
        .iter()
        .map(|w| rep.evaluate(w).expect("words use the surface generators"))
        .collect();
    let mut pairs: Vec<(usize, usize)> = (0..words.len())
        .flat_map(|i| (i + 1..words.len()).map(move |j| (i, j)))
        .collect();
    pairs.sort_by_key(|&(i, j)| words[i].len() + words[j].len());
    let two = FieldElem::from_int(2);
    for (i, j) in pairs {
        if images[i].commutator(&images[j]).trace() != two {
            return RestrictionPair::Found {
                first: words[i].display_with(&names),
                second: words[j].display_with(&names),
            };
        }
    }
    RestrictionPair::NotFound { max_factors }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum VerdictClause {
    /// The image is finite.
    FiniteImage,
    /// Genus one, special dihedral with infinite (or unexplored) image.
    SpecialDihedral,
    /// Neither finite image nor the genus-one special dihedral exception.
    InfiniteImage,
    /// Conjugate into SU(2).
    Unitary,
    NotUnitary,
    /// The numeric unitarity test could not decide.
    UnitarityUndecided,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct TheoremVerdict {
    /// Predicted finiteness of the mapping class group orbit.
    pub finite_orbit: bool,
    pub finite_orbit_clause: VerdictClause,
    /// Predicted boundedness of the orbit.
    pub bounded_orbit: bool,
    pub bounded_orbit_clause: VerdictClause,
}

fn verdict_from(
    sig: SurfaceSig,
    finite: FiniteImage,
    special: SpecialDihedral,
    unitary: Unitarizable,
) -> TheoremVerdict {
    let genus_one_special = sig.genus() == 1 && special.is_true();
    let (finite_orbit, finite_orbit_clause) = if finite.is_finite() {
        (true, VerdictClause::FiniteImage)
    } else if genus_one_special {
        (true, VerdictClause::SpecialDihedral)
    } else {
        (false, VerdictClause::InfiniteImage)
    };
    let (bounded_orbit, bounded_orbit_clause) = match unitary {
        Unitarizable::Yes => (true, VerdictClause::Unitary),
        _ if genus_one_special => (true, VerdictClause::SpecialDihedral),
        Unitarizable::No => (false, VerdictClause::NotUnitary),
        Unitarizable::Inconclusive => (false, VerdictClause::UnitarityUndecided),
    };
    TheoremVerdict {
        finite_orbit,
        finite_orbit_clause,
        bounded_orbit,
        bounded_orbit_clause,
    }
}

/// Predicted orbit behaviour, computing the ingredients with `config`.
pub fn theorem_verdict(
    rep: &Representation,
    sig: SurfaceSig,
    config: &ClassifyConfig,
) -> TheoremVerdict {
    verdict_from(
        sig,
        finite_image(rep, config.closure_cap),
        is_special_dihedral(rep, sig),
        unitarizable_numeric(rep, config.precision, config.tol),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassifyConfig {
    pub closure_cap: usize,
    /// Word bound for [`irreducible_restriction`].
    pub pair_factors: usize,
    pub precision: u32,
    pub tol: f64,
}

impl Default for ClassifyConfig {
    fn default() -> Self {
        ClassifyConfig {
            closure_cap: DEFAULT_CLOSURE_CAP,
            pair_factors: DEFAULT_PAIR_FACTORS,
            precision: 53,
            tol: DEFAULT_UNITARY_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ClassificationReport {
    pub signature: SurfaceSig,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fricke_triple: Option<Triple>,
    pub irreducible: Irreducibility,
    pub restriction_pair: RestrictionPair,
    pub diagonal_up_to_conj: Diagonality,
    pub dihedral_up_to_conj: Dihedrality,
    pub special_dihedral: SpecialDihedral,
    pub finite_image: FiniteImage,
    pub binary_tag: Option<BinaryGroup>,
    /// Whether every element of a finite image lies in the standard
    /// quaternion realization of `binary_tag`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub literal_membership: Option<bool>,
    pub unitarizable_numeric: Unitarizable,
    pub theorem_verdict: TheoremVerdict,
}

impl ClassificationReport {
    /// True when some field is inconclusive.
    pub fn undecided(&self) -> bool {
        self.unitarizable_numeric == Unitarizable::Inconclusive
    }
}

/// Reinterprets `rep` on the surface `sig`, accepting free representations
/// of the matching rank.
pub fn on_surface(rep: &Representation, sig: SurfaceSig) -> Result<Representation, CharError> {
    match rep.signature() {
        Some(s) if s == sig => Ok(rep.clone()),
        Some(s) => Err(CharError::WrongGeneratorCount {
            sig,
            expected: sig.free_rank(),
            got: s.free_rank(),
        }),
        None => Representation::surface(sig, rep.images().to_vec()),
    }
}

pub fn classify(
    rep: &Representation,
    sig: SurfaceSig,
    config: &ClassifyConfig,
) -> Result<ClassificationReport, CharError> {
    let rep = on_surface(rep, sig)?;
    let group = closure(rep.images(), config.closure_cap);
    let finite = if group.is_finite() {
        FiniteImage::Finite { order: group.order }
    } else {
        FiniteImage::CapExceeded {
            cap: config.closure_cap,
        }
    };
    let tag = binary_tag(&group);
    let literal_membership = tag.map(|t| group.elements.iter().flatten().all(|g| t.contains(g)));
    let special = is_special_dihedral(&rep, sig);
    let unitary = unitarizable_numeric(&rep, config.precision, config.tol);
    Ok(ClassificationReport {
        signature: sig,
        fricke_triple: rep.fricke_triple(),
        irreducible: irreducibility(&rep),
        restriction_pair: irreducible_restriction(&rep, sig, config.pair_factors),
        diagonal_up_to_conj: is_diagonal_up_to_conj(&rep),
        dihedral_up_to_conj: is_dihedral_up_to_conj(&rep),
        special_dihedral: special,
        finite_image: finite,
        binary_tag: tag,
        literal_membership,
        unitarizable_numeric: unitary,
        theorem_verdict: verdict_from(sig, finite, special, unitary),
    })
}
