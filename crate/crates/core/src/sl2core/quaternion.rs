use std::ops::Mul;

use serde::{Deserialize, Serialize};

use super::{Mat2, Sl2Error};
use crate::numfield::FieldElem;

/// `a + b i + c j + d k` with real coordinates in Q(√2, √5).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quaternion {
    pub a: FieldElem,
    pub b: FieldElem,
    pub c: FieldElem,
    pub d: FieldElem,
}

impl Quaternion {
    pub fn new(a: FieldElem, b: FieldElem, c: FieldElem, d: FieldElem) -> Quaternion {
        Quaternion { a, b, c, d }
    }

    pub fn from_coords(coords: [FieldElem; 4]) -> Quaternion {
        let [a, b, c, d] = coords;
        Quaternion { a, b, c, d }
    }

    pub fn one() -> Quaternion {
        Quaternion::from_coords([
            FieldElem::one(),
            FieldElem::zero(),
            FieldElem::zero(),
            FieldElem::zero(),
        ])
    }

    pub fn coords(&self) -> [&FieldElem; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    /// `a² + b² + c² + d²`.
    pub fn norm(&self) -> FieldElem {
        self.coords().iter().map(|x| x.square()).sum()
    }

    pub fn conj(&self) -> Quaternion {
        Quaternion::new(self.a.clone(), -&self.b, -&self.c, -&self.d)
    }
}

impl<'a> Mul<&'a Quaternion> for &'a Quaternion {
    type Output = Quaternion;
    fn mul(self, q: &Quaternion) -> Quaternion {
        let p = self;
        Quaternion {
            a: &(&p.a * &q.a) - &(&(&p.b * &q.b) + &(&(&p.c * &q.c) + &(&p.d * &q.d))),
            b: &(&(&p.a * &q.b) + &(&p.b * &q.a)) + &(&(&p.c * &q.d) - &(&p.d * &q.c)),
            c: &(&(&p.a * &q.c) - &(&p.b * &q.d)) + &(&(&p.c * &q.a) + &(&p.d * &q.b)),
            d: &(&(&p.a * &q.d) + &(&p.b * &q.c)) - &(&(&p.c * &q.b) - &(&p.d * &q.a)),
        }
    }
}

/// `(a, b, c, d) ↦ [[a + bi, c + di], [−c + di, a − bi]]`.
///
/// Fails with `BadDeterminant` unless the quaternion has unit norm.
pub fn quaternion_to_mat(q: &Quaternion) -> Result<Mat2, Sl2Error> {
    let i = FieldElem::i();
    if !q.coords().iter().all(|x| x.is_real()) {
        return Err(Sl2Error::NotUnitForm);
    }
    Mat2::new(
        &q.a + &(&q.b * &i),
        &q.c + &(&q.d * &i),
        &(-&q.c) + &(&q.d * &i),
        &q.a - &(&q.b * &i),
    )
}

/// Inverse of [`quaternion_to_mat`]: requires `a22 = conj(a11)` and
/// `a21 = −conj(a12)` exactly.
pub fn mat_to_quaternion(m: &Mat2) -> Result<Quaternion, Sl2Error> {
    if *m.a22() != m.a11().conj() || *m.a21() != -m.a12().conj() {
        return Err(Sl2Error::NotUnitForm);
    }
    Ok(Quaternion::new(
        m.a11().re(),
        m.a11().im(),
        m.a12().re(),
        m.a12().im(),
    ))
}
