//! Exact arithmetic in the degree-8 field Q(i, √2, √5).
//!
//! Elements are stored as eight rational coordinates over the basis
//!
//! ```text
//! index:  0   1    2    3     4   5     6     7
//! basis:  1   √2   √5   √10   i   i√2   i√5   i√10
//! ```
//!
//! Bit 0 of an index marks a factor √2, bit 1 a factor √5 and bit 2 a
//! factor i, so the product of two basis vectors is the basis vector at
//! the XOR of their indices times 2, 5 and −1 for each shared bit.
//!
//! The complex embedding is the one with √2, √5 positive reals and i the
//! usual imaginary unit. "Real" below always refers to that embedding.

mod parse;
mod rational;

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use rational::{format_rational, parse_rational, rational_sqrt, Rational};

/// Errors raised by field arithmetic and parsing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FieldError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
}

pub const DIM: usize = 8;
const SQRT2_BIT: usize = 1;
const SQRT5_BIT: usize = 2;
const I_BIT: usize = 4;

/// Human-readable names of the basis vectors, in storage order.
pub const BASIS_NAMES: [&str; DIM] = ["1", "√2", "√5", "√10", "i", "i√2", "i√5", "i√10"];

/// Exact element of Q(i, √2, √5).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    coeffs: [Rational; DIM],
}

fn basis_product(u: usize, v: usize) -> (usize, i64) {
    let shared = u & v;
    let mut scale = 1i64;
    if shared & SQRT2_BIT != 0 {
        scale *= 2;
    }
    if shared & SQRT5_BIT != 0 {
        scale *= 5;
    }
    if shared & I_BIT != 0 {
        scale = -scale;
    }
    (u ^ v, scale)
}

impl FieldElem {
    pub fn zero() -> Self {
        FieldElem {
            coeffs: std::array::from_fn(|_| Rational::zero()),
        }
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    /// `p/q` as a field element. Panics if `q == 0`.
    pub fn frac(p: i64, q: i64) -> Self {
        Self::from_rational(Rational::new(p.into(), q.into()))
    }

    pub fn from_rational(r: Rational) -> Self {
        let mut e = Self::zero();
        e.coeffs[0] = r;
        e
    }

    /// Builds an element from its eight coordinates in canonical basis order.
    pub fn from_coeffs(coeffs: [Rational; DIM]) -> Self {
        FieldElem { coeffs }
    }

    fn basis(index: usize) -> Self {
        let mut e = Self::zero();
        e.coeffs[index] = Rational::one();
        e
    }

    pub fn i() -> Self {
        Self::basis(I_BIT)
    }

    pub fn sqrt2() -> Self {
        Self::basis(SQRT2_BIT)
    }

    pub fn sqrt5() -> Self {
        Self::basis(SQRT5_BIT)
    }

    pub fn sqrt10() -> Self {
        Self::basis(SQRT2_BIT | SQRT5_BIT)
    }

    /// The golden ratio (1 + √5)/2.
    pub fn phi() -> Self {
        let mut e = Self::frac(1, 2);
        e.coeffs[SQRT5_BIT] = Rational::new(1.into(), 2.into());
        e
    }

    /// 1/φ = φ − 1 = (√5 − 1)/2.
    pub fn phi_inv() -> Self {
        Self::phi() - Self::one()
    }

    pub fn coeffs(&self) -> &[Rational; DIM] {
        &self.coeffs
    }

    pub fn coeff(&self, index: usize) -> &Rational {
        &self.coeffs[index]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// True iff the element lies in Q.
    pub fn is_rational(&self) -> bool {
        self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.coeffs[0])
    }

    /// True iff the element lies in the real subfield Q(√2, √5).
    pub fn is_real(&self) -> bool {
        self.coeffs[I_BIT..].iter().all(Zero::is_zero)
    }

    /// Real part under the standard embedding.
    pub fn re(&self) -> Self {
        let mut e = self.clone();
        for c in &mut e.coeffs[I_BIT..] {
            *c = Rational::zero();
        }
        e
    }

    /// Imaginary part under the standard embedding (a real element).
    pub fn im(&self) -> Self {
        let mut e = Self::zero();
        for k in 0..I_BIT {
            e.coeffs[k] = self.coeffs[k | I_BIT].clone();
        }
        e
    }

    /// Complex conjugation, i ↦ −i.
    pub fn conj(&self) -> Self {
        self.galois(I_BIT)
    }

    /// Square of the complex absolute value, `self · conj(self)`.
    pub fn norm_sqr(&self) -> Self {
        self * &self.conj()
    }

    /// Applies the automorphism with sign pattern `index`: bit 0 sends
    /// √2 ↦ −√2, bit 1 sends √5 ↦ −√5, bit 2 sends i ↦ −i.
    pub fn galois(&self, index: usize) -> Self {
        assert!(index < DIM, "galois index out of range");
        let mut e = self.clone();
        for (k, c) in e.coeffs.iter_mut().enumerate() {
            if (k & index).count_ones() % 2 == 1 {
                *c = -c.clone();
            }
        }
        e
    }

    /// All eight automorphic images, ordered by [`FieldElem::galois`] index
    /// 0..8; index 0 is the identity.
    pub fn galois_images(&self) -> [FieldElem; DIM] {
        std::array::from_fn(|k| self.galois(k))
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut exp: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            exp >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, by solving the 8×8 rational linear system of
    /// multiplication by `self` for the preimage of 1.
    pub fn inv(&self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if let Some(r) = self.as_rational() {
            return Ok(Self::from_rational(r.recip()));
        }
        // Column v of `m` holds the coordinates of self · e_v; augmented with e_0.
        let mut m: Vec<Vec<Rational>> = vec![vec![Rational::zero(); DIM + 1]; DIM];
        for (u, cu) in self.coeffs.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for v in 0..DIM {
                let (w, scale) = basis_product(u, v);
                m[w][v] = rational::add(&m[w][v], &rational::mul_int(cu, scale));
            }
        }
        m[0][DIM] = Rational::one();
        let solution = solve_augmented(m).ok_or(FieldError::DivisionByZero)?;
        Ok(FieldElem {
            coeffs: solution.try_into().expect("dimension 8"),
        })
    }

    pub fn checked_div(&self, other: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self * &other.inv()?)
    }

    /// Exact sign of a real element; `None` if the element is not real.
    pub fn real_sign(&self) -> Option<Ordering> {
        if !self.is_real() {
            return None;
        }
        let c = &self.coeffs;
        // self = u + v√5 with u, v ∈ Q(√2).
        let u = QuadSqrt2(c[0].clone(), c[SQRT2_BIT].clone());
        let v = QuadSqrt2(c[SQRT5_BIT].clone(), c[SQRT2_BIT | SQRT5_BIT].clone());
        let (su, sv) = (u.sign(), v.sign());
        Some(match (su, sv) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            _ => {
                let diff = u
                    .square()
                    .sub(&v.square().scale(&Rational::from_integer(5.into())));
                if diff.sign() == Ordering::Greater {
                    su
                } else {
                    sv
                }
            }
        })
    }

    /// Exact comparison of real elements; `None` unless both are real.
    pub fn cmp_real(&self, other: &FieldElem) -> Option<Ordering> {
        (self - other).real_sign()
    }

    /// Square root inside the field, if one exists.
    ///
    /// Works down the tower Q ⊂ Q(√2) ⊂ Q(√2,√5) ⊂ Q(√2,√5,i): writing
    /// z = u + v·g over the previous level, a root p + q·g has
    /// p² = (u ± √(u² − d v²))/2 and q = v/(2p).
    pub fn sqrt(&self) -> Option<FieldElem> {
        sqrt_at_level(self, 3)
    }

    /// Numeric value under the standard complex embedding.
    ///
    /// The exact value is first approximated in fixed point with
    /// `max(precision, 53) + 32` fractional bits; the only further error is
    /// the final rounding of each part to `f64`.
    pub fn embed(&self, precision: u32) -> Complex64 {
        let shift = precision.max(53) as u64 + 32;
        let one_scaled = BigInt::one() << shift;
        let radicals: [BigInt; 4] = [1u32, 2, 5, 10].map(|m| {
            let scaled: BigInt = BigInt::from(m) * &one_scaled * &one_scaled;
            scaled.sqrt()
        });
        let mut parts = [BigInt::zero(), BigInt::zero()];
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let value = (c.numer() * &radicals[k & 3]) / c.denom();
            parts[k >> 2] += value;
        }
        Complex64::new(
            scaled_to_f64(&parts[0], shift),
            scaled_to_f64(&parts[1], shift),
        )
    }

    /// JSON-facing form: eight `p/q` strings in canonical basis order.
    pub fn to_strings(&self) -> [String; DIM] {
        std::array::from_fn(|k| format_rational(&self.coeffs[k]))
    }

    pub fn from_strings<S: AsRef<str>>(parts: &[S]) -> Result<FieldElem, FieldError> {
        if parts.len() != DIM {
            return Err(FieldError::Parse(format!(
                "expected {DIM} coordinates, got {}",
                parts.len()
            )));
        }
        let mut e = Self::zero();
        for (c, s) in e.coeffs.iter_mut().zip(parts) {
            *c = parse_rational(s.as_ref())?;
        }
        Ok(e)
    }
}

fn scaled_to_f64(n: &BigInt, shift: u64) -> f64 {
    let bits = n.bits();
    let (mantissa, exp) = if bits > 64 {
        let drop = bits - 64;
        (
            (n >> drop).to_f64().unwrap_or(0.0),
            drop as i64 - shift as i64,
        )
    } else {
        (n.to_f64().unwrap_or(0.0), -(shift as i64))
    };
    mantissa * 2f64.powi(exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
}

/// Solves an n×(n+1) augmented system by Gauss–Jordan elimination.
fn solve_augmented(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let n = m.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut().skip(col) {
            *x = rational::mul(x, &inv);
        }
        for r in 0..n {
            if r == col || m[r][col].is_zero() {
                continue;
            }
            let factor = m[r][col].clone();
            for c in col..=n {
                let delta = rational::mul(&factor, &m[col][c]);
                m[r][c] = rational::sub(&m[r][c], &delta);
            }
        }
    }
    Some(m.into_iter().map(|row| row[n].clone()).collect())
}

/// a + b√2, used only for exact sign determination.
struct QuadSqrt2(Rational, Rational);

impl QuadSqrt2 {
    fn sign(&self) -> Ordering {
        let sa = self.0.cmp(&Rational::zero());
        let sb = self.1.cmp(&Rational::zero());
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (a, b) if a == b => a,
            _ => {
                let a2 = &self.0 * &self.0;
                let b2 = &self.1 * &self.1 * Rational::from_integer(2.into());
                if a2 > b2 {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    fn square(&self) -> QuadSqrt2 {
        let two = Rational::from_integer(2.into());
        QuadSqrt2(
            &self.0 * &self.0 + &self.1 * &self.1 * &two,
            &self.0 * &self.1 * &two,
        )
    }

    fn scale(&self, k: &Rational) -> QuadSqrt2 {
        QuadSqrt2(&self.0 * k, &self.1 * k)
    }

    fn sub(&self, other: &QuadSqrt2) -> QuadSqrt2 {
        QuadSqrt2(&self.0 - &other.0, &self.1 - &other.1)
    }
}

// Level k uses the first k generators of (√2, √5, i).
const LEVEL_BITS: [usize; 3] = [SQRT2_BIT, SQRT5_BIT, I_BIT];
const LEVEL_SQUARES: [i64; 3] = [2, 5, -1];

fn split_at_level(z: &FieldElem, bit: usize) -> (FieldElem, FieldElem) {
    let mut u = FieldElem::zero();
    let mut v = FieldElem::zero();
    for (k, c) in z.coeffs.iter().enumerate() {
        if k & bit == 0 {
            u.coeffs[k] = c.clone();
        } else {
            v.coeffs[k ^ bit] = c.clone();
        }
    }
    (u, v)
}

fn sqrt_at_level(z: &FieldElem, level: usize) -> Option<FieldElem> {
    if level == 0 {
        return rational_sqrt(z.as_rational()?).map(FieldElem::from_rational);
    }
    let bit = LEVEL_BITS[level - 1];
    let d = FieldElem::from_int(LEVEL_SQUARES[level - 1]);
    let g = FieldElem::basis(bit);
    let (u, v) = split_at_level(z, bit);
    if v.is_zero() {
        if let Some(p) = sqrt_at_level(&u, level - 1) {
            return Some(p);
        }
        let q = sqrt_at_level(&u.checked_div(&d).ok()?, level - 1)?;
        return Some(&q * &g);
    }
    let norm = &u.square() - &(&d * &v.square());
    let s = sqrt_at_level(&norm, level - 1)?;
    let half = FieldElem::frac(1, 2);
    for root in [s.clone(), -s] {
        let t = &(&u + &root) * &half;
        if let Some(p) = sqrt_at_level(&t, level - 1) {
            if p.is_zero() {
                continue;
            }
            let q = v.checked_div(&(&p * &FieldElem::from_int(2))).ok()?;
            return Some(&p + &(&q * &g));
        }
    }
    None
}

impl Default for FieldElem {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<i64> for FieldElem {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl From<Rational> for FieldElem {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl<'a> Add<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn add(self, rhs: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: std::array::from_fn(|k| rational::add(&self.coeffs[k], &rhs.coeffs[k])),
        }
    }
}

impl<'a> Sub<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn sub(self, rhs: &FieldElem) -> FieldElem {
        FieldElem {
            coeffs: std::array::from_fn(|k| rational::sub(&self.coeffs[k], &rhs.coeffs[k])),
        }
    }
}

impl<'a> Mul<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn mul(self, rhs: &FieldElem) -> FieldElem {
        let mut out = FieldElem::zero();
        for (u, cu) in self.coeffs.iter().enumerate() {
            if cu.is_zero() {
                continue;
            }
            for (v, cv) in rhs.coeffs.iter().enumerate() {
                if cv.is_zero() {
                    continue;
                }
                let (w, scale) = basis_product(u, v);
                let term = rational::mul(cu, cv);
                let term = match scale {
                    1 => term,
                    s => rational::mul_int(&term, s),
                };
                out.coeffs[w] = rational::add(&out.coeffs[w], &term);
            }
        }
        out
    }
}

/// Panics on division by zero, like integer division; see
/// [`FieldElem::checked_div`] for the fallible form.
impl<'a> Div<&'a FieldElem> for &'a FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &FieldElem) -> FieldElem {
        self.checked_div(rhs).expect("FieldElem division by zero")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        FieldElem {
            coeffs: std::array::from_fn(|k| -self.coeffs[k].clone()),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(mut self) -> FieldElem {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $method:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a FieldElem> for FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: &FieldElem) -> FieldElem {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<FieldElem> for &'a FieldElem {
            type Output = FieldElem;
            fn $method(self, rhs: FieldElem) -> FieldElem {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&FieldElem> for FieldElem {
    fn add_assign(&mut self, rhs: &FieldElem) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = rational::add(a, b);
        }
    }
}

impl SubAssign<&FieldElem> for FieldElem {
    fn sub_assign(&mut self, rhs: &FieldElem) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a = rational::sub(a, b);
        }
    }
}

impl MulAssign<&FieldElem> for FieldElem {
    fn mul_assign(&mut self, rhs: &FieldElem) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for FieldElem {
    fn sum<I: Iterator<Item = FieldElem>>(iter: I) -> Self {
        iter.fold(FieldElem::zero(), |acc, x| acc + x)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if wrote {
                f.write_str(if negative { " - " } else { " + " })?;
            } else if negative {
                f.write_str("-")?;
            }
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(BASIS_NAMES[k])?,
                (_, false) => write!(f, "{mag}·{}", BASIS_NAMES[k])?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldElem({self})")
    }
}

impl FromStr for FieldElem {
    type Err = FieldError;

    /// Parses expressions such as `-1/2*phi + 3 sqrt2 - i`, see [`parse`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse::parse_expr(s)
    }
}

impl Serialize for FieldElem {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(DIM))?;
        for c in &self.coeffs {
            seq.serialize_element(&format_rational(c))?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for FieldElem {
    /// Accepts the canonical array of eight `p/q` strings, or a single
    /// symbolic expression string.
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ElemVisitor;

        impl<'de> Visitor<'de> for ElemVisitor {
            type Value = FieldElem;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an array of 8 rational strings or an expression string")
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<FieldElem, E> {
                v.parse().map_err(E::custom)
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<FieldElem, E> {
                Ok(FieldElem::from_int(v))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<FieldElem, E> {
                i64::try_from(v)
                    .map(FieldElem::from_int)
                    .map_err(|_| E::custom("integer out of range"))
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<FieldElem, A::Error> {
                let mut parts: Vec<String> = Vec::with_capacity(DIM);
                while let Some(s) = seq.next_element::<String>()? {
                    parts.push(s);
                }
                FieldElem::from_strings(&parts).map_err(de::Error::custom)
            }
        }

        deserializer.deserialize_any(ElemVisitor)
    }
}
