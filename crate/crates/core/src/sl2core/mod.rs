//! Exact SL₂ matrix algebra over Q(i, √2, √5).

mod binary;
mod closure;
mod quaternion;
mod torsion;

use std::fmt;
use std::ops::Mul;

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::numfield::FieldElem;

pub use binary::{binary_group, membership, BinaryGroup};
pub use closure::{closure, ClosureResult, ClosureStatus, DEFAULT_CLOSURE_CAP};
pub use quaternion::{mat_to_quaternion, quaternion_to_mat, Quaternion};
pub use torsion::{is_torsion, NeverTorsionReason, TorsionStatus, DEFAULT_TORSION_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Sl2Error {
    #[error("determinant is {0}, expected 1")]
    BadDeterminant(FieldElem),
    #[error("matrix is not of unit quaternion form")]
    NotUnitForm,
    #[error("parameter must be nonzero")]
    ZeroParameter,
}

/// A 2×2 matrix of determinant exactly 1.
///
/// Ordering is lexicographic on the entries in row-major order, each entry
/// compared by its rational coordinates.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat2 {
    e: [FieldElem; 4],
}

impl Mat2 {
    /// Builds `[[a11, a12], [a21, a22]]`, rejecting determinants other than 1.
    pub fn new(
        a11: FieldElem,
        a12: FieldElem,
        a21: FieldElem,
        a22: FieldElem,
    ) -> Result<Mat2, Sl2Error> {
        let det = &(&a11 * &a22) - &(&a12 * &a21);
        if !det.is_one() {
            return Err(Sl2Error::BadDeterminant(det));
        }
        Ok(Mat2 {
            e: [a11, a12, a21, a22],
        })
    }

    /// Integer convenience constructor for tests and fixtures.
    pub fn from_ints(a11: i64, a12: i64, a21: i64, a22: i64) -> Result<Mat2, Sl2Error> {
        Mat2::new(a11.into(), a12.into(), a21.into(), a22.into())
    }

    fn unchecked(e: [FieldElem; 4]) -> Mat2 {
        Mat2 { e }
    }

    pub fn identity() -> Mat2 {
        Self::scalar(FieldElem::one())
    }

    pub fn neg_identity() -> Mat2 {
        Self::scalar(FieldElem::from_int(-1))
    }

    fn scalar(s: FieldElem) -> Mat2 {
        Mat2::unchecked([s.clone(), FieldElem::zero(), FieldElem::zero(), s])
    }

    /// `diag(λ, λ⁻¹)`.
    pub fn diag(lambda: &FieldElem) -> Result<Mat2, Sl2Error> {
        let inv = lambda.inv().map_err(|_| Sl2Error::ZeroParameter)?;
        Ok(Mat2::unchecked([
            lambda.clone(),
            FieldElem::zero(),
            FieldElem::zero(),
            inv,
        ]))
    }

    /// `[[0, c], [−c⁻¹, 0]]`, the antidiagonal half of D∞.
    pub fn antidiag(c: &FieldElem) -> Result<Mat2, Sl2Error> {
        let inv = c.inv().map_err(|_| Sl2Error::ZeroParameter)?;
        Ok(Mat2::unchecked([
            FieldElem::zero(),
            c.clone(),
            -inv,
            FieldElem::zero(),
        ]))
    }

    pub fn a11(&self) -> &FieldElem {
        &self.e[0]
    }
    pub fn a12(&self) -> &FieldElem {
        &self.e[1]
    }
    pub fn a21(&self) -> &FieldElem {
        &self.e[2]
    }
    pub fn a22(&self) -> &FieldElem {
        &self.e[3]
    }

    pub fn entries(&self) -> &[FieldElem; 4] {
        &self.e
    }

    pub fn trace(&self) -> FieldElem {
        &self.e[0] + &self.e[3]
    }

    /// Inverse via the adjugate, valid because det = 1.
    pub fn inverse(&self) -> Mat2 {
        let [a, b, c, d] = &self.e;
        Mat2::unchecked([d.clone(), -b, -c, a.clone()])
    }

    /// `A B A⁻¹ B⁻¹`.
    pub fn commutator(&self, other: &Mat2) -> Mat2 {
        &(&(self * other) * &self.inverse()) * &other.inverse()
    }

    /// `Aⁿ` for any integer n.
    pub fn pow(&self, n: i64) -> Mat2 {
        let mut base = if n < 0 { self.inverse() } else { self.clone() };
        let mut exp = n.unsigned_abs();
        let mut acc = Mat2::identity();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    /// `P A P⁻¹`.
    pub fn conjugate_by(&self, p: &Mat2) -> Mat2 {
        &(p * self) * &p.inverse()
    }

    pub fn is_identity(&self) -> bool {
        self.e[0].is_one() && self.e[1].is_zero() && self.e[2].is_zero() && self.e[3].is_one()
    }

    /// True for ±I.
    pub fn is_central(&self) -> bool {
        self.e[1].is_zero() && self.e[2].is_zero() && self.e[0] == self.e[3]
    }

    pub fn is_diagonal(&self) -> bool {
        self.e[1].is_zero() && self.e[2].is_zero()
    }

    pub fn is_antidiagonal(&self) -> bool {
        self.e[0].is_zero() && self.e[3].is_zero()
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[FieldElem; 2]) -> [FieldElem; 2] {
        let [a, b, c, d] = &self.e;
        [&(a * &v[0]) + &(b * &v[1]), &(c * &v[0]) + &(d * &v[1])]
    }

    /// Numeric embedding of the entries, row-major.
    pub fn embed(&self, precision: u32) -> [[Complex64; 2]; 2] {
        [
            [self.e[0].embed(precision), self.e[1].embed(precision)],
            [self.e[2].embed(precision), self.e[3].embed(precision)],
        ]
    }
}

impl<'a> Mul<&'a Mat2> for &'a Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: &Mat2) -> Mat2 {
        let [a, b, c, d] = &self.e;
        let [p, q, r, s] = &rhs.e;
        Mat2::unchecked([
            &(a * p) + &(b * r),
            &(a * q) + &(b * s),
            &(c * p) + &(d * r),
            &(c * q) + &(d * s),
        ])
    }
}

impl Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, rhs: Mat2) -> Mat2 {
        &self * &rhs
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[[{}, {}], [{}, {}]]",
            self.e[0], self.e[1], self.e[2], self.e[3]
        )
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl Serialize for Mat2 {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows = [[&self.e[0], &self.e[1]], [&self.e[2], &self.e[3]]];
        rows.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Mat2 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let [[a11, a12], [a21, a22]] = <[[FieldElem; 2]; 2]>::deserialize(deserializer)?;
        Mat2::new(a11, a12, a21, a22).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fe(s: &str) -> FieldElem {
        s.parse().unwrap()
    }

    #[test]
    fn rejects_bad_determinant() {
        assert!(matches!(
            Mat2::from_ints(1, 1, 1, 1),
            Err(Sl2Error::BadDeterminant(_))
        ));
        assert!(Mat2::diag(&FieldElem::zero()).is_err());
    }

    #[test]
    fn traces_and_commutators() {
        let s = Mat2::from_ints(0, 1, -1, 0).unwrap();
        assert!(s.trace().is_zero());
        let b = Mat2::from_ints(2, 1, 1, 1).unwrap();
        assert!(Mat2::identity().commutator(&b).is_identity());
        let d = Mat2::diag(&FieldElem::phi()).unwrap();
        assert_eq!(d.trace(), FieldElem::sqrt5());
    }

    #[test]
    fn inverse_and_powers() {
        let a = Mat2::new(fe("1+i"), fe("1"), fe("i"), fe("1")).unwrap();
        assert!((&a * &a.inverse()).is_identity());
        assert_eq!(a.pow(3), &(&a * &a) * &a);
        assert!((&a.pow(-2) * &a.pow(2)).is_identity());
        assert!(Mat2::from_ints(0, 1, -1, 0).unwrap().pow(4).is_identity());
    }

    #[test]
    fn json_shape() {
        let s = Mat2::from_ints(0, 1, -1, 0).unwrap();
        let v = serde_json::to_value(&s).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert_eq!(v[0][1][0], "1/1");
        let back: Mat2 = serde_json::from_value(v).unwrap();
        assert_eq!(back, s);
        let bad = r#"[["2","0"],["0","2"]]"#;
        assert!(serde_json::from_str::<Mat2>(bad).is_err());
    }
}
