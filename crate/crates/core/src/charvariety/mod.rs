//! Trace coordinates on SL₂ character varieties of free and surface groups.

mod skein;
mod word;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numfield::{FieldElem, FieldError};
use crate::sl2core::Mat2;
use crate::surface::SurfaceSig;

pub use skein::{skein_polynomial, SkeinEngine, TracePolynomial};
pub use word::{free_generator_names, Letter, Word, WordParseError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CharError {
    #[error("generator index {index} out of range for rank {rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("a representation needs at least one generator")]
    NoGenerators,
    #[error("signature {sig} expects {expected} matrices, got {got}")]
    WrongGeneratorCount {
        sig: SurfaceSig,
        expected: usize,
        got: usize,
    },
    #[error("images do not satisfy the closed-surface relation")]
    RelationFails,
    #[error("bad triple: {0}")]
    BadTriple(String),
}

/// A homomorphism from a free group, or from a surface group through its
/// free generators, given by matrix images.
///
/// For a surface of signature (g, n) with n ≥ 1 the stored images are those
/// of a₁, b₁, …, a_g, b_g, c₁, …, c_{n−1}; the image of c_n is determined by
/// the relation [a₁,d₁]⋯[a_g,d_g]c₁⋯c_n = 1 with d_i = b_i⁻¹. For n = 0 all
/// 2g images are stored and must satisfy the relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Representation {
    signature: Option<SurfaceSig>,
    images: Vec<Mat2>,
    full: Vec<Mat2>,
}

impl Representation {
    pub fn free(images: Vec<Mat2>) -> Result<Representation, CharError> {
        if images.is_empty() {
            return Err(CharError::NoGenerators);
        }
        Ok(Representation {
            signature: None,
            full: images.clone(),
            images,
        })
    }

    pub fn surface(sig: SurfaceSig, images: Vec<Mat2>) -> Result<Representation, CharError> {
        let expected = sig.free_rank();
        if images.len() != expected {
            return Err(CharError::WrongGeneratorCount {
                sig,
                expected,
                got: images.len(),
            });
        }
        let product = commutator_product(sig.genus(), &images);
        let mut full = images.clone();
        if sig.punctures() == 0 {
            if !product.is_identity() {
                return Err(CharError::RelationFails);
            }
        } else {
            let mut head = product;
            for c in &images[2 * sig.genus()..] {
                head = &head * c;
            }
            full.push(head.inverse());
        }
        Ok(Representation {
            signature: Some(sig),
            images,
            full,
        })
    }

    pub fn signature(&self) -> Option<SurfaceSig> {
        self.signature
    }

    /// The stored (free) generator images.
    pub fn images(&self) -> &[Mat2] {
        &self.images
    }

    /// Images of every named generator, including a derived c_n.
    pub fn generator_images(&self) -> &[Mat2] {
        &self.full
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn generator_names(&self) -> Vec<String> {
        match self.signature {
            Some(sig) => sig.generator_names(),
            None => free_generator_names(self.images.len()),
        }
    }

    pub fn parse_word(&self, s: &str) -> Result<Word, WordParseError> {
        Word::parse_with(s, &self.generator_names())
    }

    pub fn display_word(&self, w: &Word) -> String {
        w.display_with(&self.generator_names())
    }

    pub fn evaluate(&self, w: &Word) -> Result<Mat2, CharError> {
        let mut acc = Mat2::identity();
        for l in w.letters() {
            let m = self
                .full
                .get(l.generator - 1)
                .ok_or(CharError::IndexOutOfRange {
                    index: l.generator,
                    rank: self.full.len(),
                })?;
            acc = if l.inverse {
                &acc * &m.inverse()
            } else {
                &acc * m
            };
        }
        Ok(acc)
    }

    /// `(tr ρ(g₁), tr ρ(g₂), tr ρ(g₁g₂))` for the first two generators.
    pub fn fricke_triple(&self) -> Option<Triple> {
        match &self.full[..] {
            [a, b, ..] => Some(Triple::of_pair(a, b)),
            _ => None,
        }
    }
}

fn commutator_product(genus: usize, images: &[Mat2]) -> Mat2 {
    let mut acc = Mat2::identity();
    for k in 0..genus {
        let a = &images[2 * k];
        let d = images[2 * k + 1].inverse();
        acc = &acc * &a.commutator(&d);
    }
    acc
}

#[derive(Serialize, Deserialize)]
struct RepresentationJson {
    #[serde(default)]
    signature: Option<SurfaceSig>,
    images: Vec<Mat2>,
}

impl Serialize for Representation {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RepresentationJson {
            signature: self.signature,
            images: self.images.clone(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Representation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = RepresentationJson::deserialize(deserializer)?;
        match raw.signature {
            Some(sig) => Representation::surface(sig, raw.images),
            None => Representation::free(raw.images),
        }
        .map_err(serde::de::Error::custom)
    }
}

/// Fricke coordinates `(x₁, x₂, x₃) = (tr a, tr b, tr ab)`.
///
/// Ordering compares coordinates left to right by their rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    x: [FieldElem; 3],
}

impl Triple {
    pub fn new(x1: FieldElem, x2: FieldElem, x3: FieldElem) -> Triple {
        Triple { x: [x1, x2, x3] }
    }

    pub fn from_ints(x1: i64, x2: i64, x3: i64) -> Triple {
        Triple::new(x1.into(), x2.into(), x3.into())
    }

    pub fn of_pair(a: &Mat2, b: &Mat2) -> Triple {
        Triple::new(a.trace(), b.trace(), (a * b).trace())
    }

    pub fn x1(&self) -> &FieldElem {
        &self.x[0]
    }
    pub fn x2(&self) -> &FieldElem {
        &self.x[1]
    }
    pub fn x3(&self) -> &FieldElem {
        &self.x[2]
    }

    pub fn coords(&self) -> &[FieldElem; 3] {
        &self.x
    }

    pub fn into_coords(self) -> [FieldElem; 3] {
        self.x
    }

    /// κ = x₁² + x₂² + x₃² − x₁x₂x₃.
    pub fn kappa(&self) -> FieldElem {
        let [a, b, c] = &self.x;
        &(&(&a.square() + &b.square()) + &c.square()) - &(&(a * b) * c)
    }

    pub fn zero_count(&self) -> usize {
        self.x.iter().filter(|c| c.is_zero()).count()
    }

    /// Finds `(A, B)` over the field with `(tr A, tr B, tr AB)` equal to `self`.
    ///
    /// Puts one of a, b, ab in diagonal (or upper-triangular, at trace ±2)
    /// form, which needs √(x² − 4) in the field; returns `None` when no
    /// coordinate allows this.
    pub fn realize(&self) -> Option<(Mat2, Mat2)> {
        let [x1, x2, x3] = self.x.clone();
        if let Some(p) = realize_with_first(&x1, &x2, &x3) {
            return Some(p);
        }
        if let Some((b, a)) = realize_with_first(&x2, &x1, &x3) {
            return Some((a, b));
        }
        // C = AB and A realize (x₃, x₁, x₁x₃ − x₂); then B = A⁻¹C.
        let z = &(&x1 * &x3) - &x2;
        realize_with_first(&x3, &x1, &z).map(|(c, a)| {
            let b = &a.inverse() * &c;
            (a, b)
        })
    }
}

/// `A` diagonal or parabolic with trace `x`, `B` with trace `y` and `tr AB = z`.
fn realize_with_first(x: &FieldElem, y: &FieldElem, z: &FieldElem) -> Option<(Mat2, Mat2)> {
    let two = FieldElem::from_int(2);
    let one = FieldElem::one();
    let zero = FieldElem::zero();
    if *x == two || *x == -&two {
        let eps = if *x == two { one.clone() } else { -&one };
        let a = Mat2::new(eps.clone(), one.clone(), zero.clone(), eps.clone()).ok()?;
        let r = z - &(&eps * y);
        if r.is_zero() {
            // tr AB = ε tr B: any B diagonal in the same basis works.
            let b = if *y == two || *y == -&two {
                Mat2::diag(&(y * &FieldElem::frac(1, 2))).ok()?
            } else {
                let root = (&y.square() - &FieldElem::from_int(4)).sqrt()?;
                Mat2::diag(&(&(y + &root) * &FieldElem::frac(1, 2))).ok()?
            };
            return Some((a, b));
        }
        let q = -r.inv().ok()?;
        let b = Mat2::new(y.clone(), q, r, zero).ok()?;
        return Some((a, b));
    }
    let disc = &x.square() - &FieldElem::from_int(4);
    let root = disc.sqrt()?;
    let lambda = &(x + &root) * &FieldElem::frac(1, 2);
    let lambda_inv = lambda.inv().ok()?;
    let a = Mat2::diag(&lambda).ok()?;
    // p + s = y and λp + s/λ = z.
    let p = (z - &(&lambda_inv * y)) * (&lambda - &lambda_inv).inv().ok()?;
    let s = y - &p;
    let r = &(&p * &s) - &one;
    let b = Mat2::new(p, one, r, s).ok()?;
    Some((a, b))
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x[0], self.x[1], self.x[2])
    }
}

impl fmt::Debug for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Triple{self}")
    }
}

/// Parses `"x1, x2, x3"`, optionally parenthesized, each coordinate an exact
/// field expression such as `-phi` or `3/2*sqrt2`.
impl FromStr for Triple {
    type Err = CharError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let inner = s.trim();
        let inner = inner
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .unwrap_or(inner);
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(CharError::BadTriple(format!(
                "expected three comma-separated coordinates in `{s}`"
            )));
        }
        let parse = |p: &str| {
            p.parse::<FieldElem>()
                .map_err(|e: FieldError| CharError::BadTriple(e.to_string()))
        };
        Ok(Triple::new(
            parse(parts[0])?,
            parse(parts[1])?,
            parse(parts[2])?,
        ))
    }
}

impl Serialize for Triple {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        self.x.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Triple {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [a, b, c] = <[FieldElem; 3]>::deserialize(deserializer)?;
        Ok(Triple::new(a, b, c))
    }
}

/// Trace of the image of `w`; the empty word has trace 2.
pub fn trace_of_word(rep: &Representation, w: &Word) -> Result<FieldElem, CharError> {
    Ok(rep.evaluate(w)?.trace())
}

/// tr[a, b] = x₁² + x₂² + x₃² − x₁x₂x₃ − 2.
pub fn fricke_commutator_trace(t: &Triple) -> FieldElem {
    t.kappa() - FieldElem::from_int(2)
}

/// A pair with these traces has a common eigenvector iff tr[a, b] = 2.
pub fn reducible_test(t: &Triple) -> bool {
    fricke_commutator_trace(t) == FieldElem::from_int(2)
}

/// LHS − RHS of the four-word trace identity
///
/// 2 tr(a₁a₂a₃a₄) = t₁t₂t₃t₄ + t₁t₂₃₄ + t₂t₃₄₁ + t₃t₄₁₂ + t₄t₁₂₃ + t₁₂t₃₄
///   + t₄₁t₂₃ − t₁₃t₂₄ − t₁t₂t₃₄ − t₃t₄t₁₂ − t₄t₁t₂₃ − t₂t₃t₄₁.
pub fn vogt_residual(
    rep: &Representation,
    a1: &Word,
    a2: &Word,
    a3: &Word,
    a4: &Word,
) -> Result<FieldElem, CharError> {
    let m = [a1, a2, a3, a4]
        .map(|w| rep.evaluate(w))
        .into_iter()
        .collect::<Result<Vec<_>, _>>()?;
    let tr = |idx: &[usize]| -> FieldElem {
        let mut acc = Mat2::identity();
        for &k in idx {
            acc = &acc * &m[k - 1];
        }
        acc.trace()
    };
    let (t1, t2, t3, t4) = (tr(&[1]), tr(&[2]), tr(&[3]), tr(&[4]));
    let lhs = FieldElem::from_int(2) * tr(&[1, 2, 3, 4]);
    let mut rhs = &(&(&t1 * &t2) * &t3) * &t4;
    for (coef, prod) in [
        (&t1, tr(&[2, 3, 4])),
        (&t2, tr(&[3, 4, 1])),
        (&t3, tr(&[4, 1, 2])),
        (&t4, tr(&[1, 2, 3])),
    ] {
        rhs += &(coef * &prod);
    }
    rhs += &(tr(&[1, 2]) * tr(&[3, 4]));
    rhs += &(tr(&[4, 1]) * tr(&[2, 3]));
    rhs -= &(tr(&[1, 3]) * tr(&[2, 4]));
    rhs -= &(&(&t1 * &t2) * &tr(&[3, 4]));
    rhs -= &(&(&t3 * &t4) * &tr(&[1, 2]));
    rhs -= &(&(&t4 * &t1) * &tr(&[2, 3]));
    rhs -= &(&(&t2 * &t3) * &tr(&[4, 1]));
    Ok(lhs - rhs)
}

/// The two defining relations of the rank-3 character variety, evaluated
/// at `(rep(a₁), rep(a₂), rep(a₃))`: the linear relation in
/// t₁₂₃ + t₁₃₂ and the quadratic relation in t₁₂₃·t₁₃₂.
pub fn f3_residuals(
    rep: &Representation,
    a1: &Word,
    a2: &Word,
    a3: &Word,
) -> Result<(FieldElem, FieldElem), CharError> {
    let [m1, m2, m3] = [a1, a2, a3].map(|w| rep.evaluate(w));
    let (m1, m2, m3) = (m1?, m2?, m3?);
    let (t1, t2, t3) = (m1.trace(), m2.trace(), m3.trace());
    let t12 = (&m1 * &m2).trace();
    let t13 = (&m1 * &m3).trace();
    let t23 = (&m2 * &m3).trace();
    let t123 = (&(&m1 * &m2) * &m3).trace();
    let t132 = (&(&m1 * &m3) * &m2).trace();

    let linear = &(&t123 + &t132)
        - &(&(&(&(&t12 * &t3) + &(&t13 * &t2)) + &(&t23 * &t1)) - &(&(&t1 * &t2) * &t3));

    let squares = [&t1, &t2, &t3, &t12, &t23, &t13]
        .iter()
        .map(|t| t.square())
        .sum::<FieldElem>();
    let cubics = &(&(&(&t1 * &t2) * &t12) + &(&(&t2 * &t3) * &t23)) + &(&(&t1 * &t3) * &t13);
    let braces = &(&(&squares - &cubics) + &(&(&t12 * &t23) * &t13)) - &FieldElem::from_int(4);
    let quadratic = &(&t123 * &t132) - &braces;
    Ok((linear, quadratic))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    #[test]
    fn word_traces() {
        let s = Mat2::from_ints(0, 1, -1, 0).unwrap();
        let rep = Representation::free(vec![s]).unwrap();
        let aa: Word = "a^2".parse().unwrap();
        assert_eq!(trace_of_word(&rep, &aa).unwrap(), FieldElem::from_int(-2));
        assert_eq!(
            trace_of_word(&rep, &Word::empty()).unwrap(),
            FieldElem::from_int(2)
        );
        assert_eq!(
            trace_of_word(&rep, &"b".parse().unwrap()),
            Err(CharError::IndexOutOfRange { index: 2, rank: 1 })
        );
    }

    #[test]
    fn fricke_and_reducibility() {
        let t = Triple::from_ints(2, 2, 2);
        assert_eq!(fricke_commutator_trace(&t), FieldElem::from_int(2));
        assert!(reducible_test(&t));
        let t = Triple::new(0.into(), (-1).into(), (-1).into());
        assert!(fricke_commutator_trace(&t).is_zero());
        assert!(!reducible_test(&t));
        assert_eq!(
            fricke_commutator_trace(&Triple::from_ints(0, 0, 0)),
            FieldElem::from_int(-2)
        );
        let (l, m) = (FieldElem::from_int(3), FieldElem::from_int(2));
        let tr = |x: &FieldElem| x + &x.inv().unwrap();
        let t = Triple::new(tr(&l), tr(&m), tr(&(&l * &m)));
        assert!(reducible_test(&t));
    }

    #[test]
    fn surface_representation_eliminates_last_puncture() {
        let sig = SurfaceSig::new(1, 1).unwrap();
        let a = Mat2::from_ints(2, 1, 1, 1).unwrap();
        let b = Mat2::from_ints(1, 1, 0, 1).unwrap();
        let rep = Representation::surface(sig, vec![a.clone(), b.clone()]).unwrap();
        let c = &rep.generator_images()[2];
        // c₁ = [a₁, d₁]⁻¹ with d₁ = b₁⁻¹.
        assert!((&a.commutator(&b.inverse()) * c).is_identity());
        assert_eq!(
            c.trace(),
            fricke_commutator_trace(&rep.fricke_triple().unwrap())
        );
        let w = rep.parse_word("a1 c1").unwrap();
        assert_eq!(rep.display_word(&w), "a1 c1");
        assert!(Representation::surface(sig, vec![a]).is_err());
    }

    #[test]
    fn closed_surface_needs_relation() {
        let sig = SurfaceSig::new(1, 0).unwrap();
        let d = Mat2::diag(&FieldElem::from_int(2)).unwrap();
        let e = Mat2::diag(&FieldElem::from_int(3)).unwrap();
        assert!(Representation::surface(sig, vec![d.clone(), e]).is_ok());
        let u = Mat2::from_ints(1, 1, 0, 1).unwrap();
        assert_eq!(
            Representation::surface(sig, vec![d, u]),
            Err(CharError::RelationFails)
        );
    }

    #[test]
    fn triple_parsing_and_json() {
        let t: Triple = "0,-1,-phi".parse().unwrap();
        assert_eq!(t.x3(), &-FieldElem::phi());
        assert_eq!(
            "(0, -1, -1)".parse::<Triple>().unwrap(),
            Triple::from_ints(0, -1, -1)
        );
        assert!("0,1".parse::<Triple>().is_err());
        let v = serde_json::to_value(&t).unwrap();
        assert_eq!(serde_json::from_value::<Triple>(v).unwrap(), t);
    }

    #[test]
    fn realization() {
        for s in [
            "0,-1,-1",
            "3,3,3",
            "2,2,2",
            "0,-phi,-1/phi",
            "0,-1,-sqrt2",
            "0,10/3,0",
            "2,3,3",
            "-2,2,-4",
        ] {
            let t: Triple = s.parse().unwrap();
            let (a, b) = t.realize().unwrap_or_else(|| panic!("cannot realize {s}"));
            assert_eq!(Triple::of_pair(&a, &b), t, "{s}");
        }
        // 1² − 4 = −3 has no square root in the field.
        assert!("1,1,1".parse::<Triple>().unwrap().realize().is_none());
        let t = Triple::new(fe("sqrt2"), fe("sqrt5"), fe("1/3"));
        if let Some((a, b)) = t.realize() {
            assert_eq!(Triple::of_pair(&a, &b), t);
        }
    }

    #[test]
    fn identities_on_a_fixed_example() {
        let a = Mat2::from_ints(2, 1, 1, 1).unwrap();
        let b = Mat2::from_ints(1, 2, 0, 1).unwrap();
        let c = Mat2::new(fe("i"), fe("1"), fe("0"), fe("-i")).unwrap();
        let rep = Representation::free(vec![a, b, c]).unwrap();
        let w = |s: &str| s.parse::<Word>().unwrap();
        let r = vogt_residual(&rep, &w("a"), &w("b"), &w("c"), &w("a b")).unwrap();
        assert!(r.is_zero());
        let (l, q) = f3_residuals(&rep, &w("a"), &w("b"), &w("c")).unwrap();
        assert!(l.is_zero() && q.is_zero());
    }
}
