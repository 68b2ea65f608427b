use std::cmp::Ordering;

use serde::Serialize;

use super::Mat2;
use crate::numfield::FieldElem;

/// Largest element order among the binary polyhedral groups.
pub const DEFAULT_TORSION_BOUND: u32 = 120;

/// Why a matrix can be certified to have infinite order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NeverTorsionReason {
    /// Trace ±2 but not ±I.
    NonCentralUnipotent,
    /// Finite-order elements have trace 2cos θ, which is real.
    NonRealTrace,
    /// Some Galois image of the (real) trace has absolute value above 2;
    /// torsion traces are sums of roots of unity whose conjugates are all in [−2, 2].
    GaloisImageOutsideInterval { galois_index: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum TorsionStatus {
    Torsion { order: u32 },
    NotTorsionUpTo { bound: u32 },
    NeverTorsion { reason: NeverTorsionReason },
}

impl TorsionStatus {
    pub fn is_torsion(&self) -> bool {
        matches!(self, TorsionStatus::Torsion { .. })
    }

    pub fn order(&self) -> Option<u32> {
        match self {
            TorsionStatus::Torsion { order } => Some(*order),
            _ => None,
        }
    }
}

fn never_torsion_certificate(m: &Mat2) -> Option<NeverTorsionReason> {
    let t = m.trace();
    let two = FieldElem::from_int(2);
    if (t == two || t == -two.clone()) && !m.is_central() {
        return Some(NeverTorsionReason::NonCentralUnipotent);
    }
    if !t.is_real() {
        return Some(NeverTorsionReason::NonRealTrace);
    }
    t.galois_images().iter().enumerate().find_map(|(k, image)| {
        let above = image.cmp_real(&two) == Some(Ordering::Greater);
        let below = image.cmp_real(&-two.clone()) == Some(Ordering::Less);
        (above || below)
            .then_some(NeverTorsionReason::GaloisImageOutsideInterval { galois_index: k })
    })
}

/// Decides whether `m` has finite order, searching orders up to `k_max`.
///
/// Certificates of infinite order are checked first; otherwise powers are
/// computed exactly and the minimal `k ≤ k_max` with `mᵏ = I` is returned.
pub fn is_torsion(m: &Mat2, k_max: u32) -> TorsionStatus {
    assert!(k_max >= 1, "k_max must be positive");
    if let Some(reason) = never_torsion_certificate(m) {
        return TorsionStatus::NeverTorsion { reason };
    }
    let mut power = m.clone();
    for k in 1..=k_max {
        if power.is_identity() {
            return TorsionStatus::Torsion { order: k };
        }
        power = &power * m;
    }
    TorsionStatus::NotTorsionUpTo { bound: k_max }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let s = Mat2::from_ints(0, 1, -1, 0).unwrap();
        assert_eq!(is_torsion(&s, 120), TorsionStatus::Torsion { order: 4 });
        let u = Mat2::from_ints(1, 1, 0, 1).unwrap();
        assert_eq!(
            is_torsion(&u, 120),
            TorsionStatus::NeverTorsion {
                reason: NeverTorsionReason::NonCentralUnipotent
            }
        );
        let h = Mat2::diag(&FieldElem::phi()).unwrap();
        assert!(matches!(
            is_torsion(&h, 120),
            TorsionStatus::NeverTorsion {
                reason: NeverTorsionReason::GaloisImageOutsideInterval { .. }
            }
        ));
        assert_eq!(
            is_torsion(&Mat2::identity(), 1),
            TorsionStatus::Torsion { order: 1 }
        );
        assert_eq!(
            is_torsion(&Mat2::neg_identity(), 5),
            TorsionStatus::Torsion { order: 2 }
        );
    }

    #[test]
    fn galois_conjugate_certificate() {
        // Trace √5 − 1 ≈ 1.236 is inside [−2, 2], but its conjugate −√5 − 1 is not.
        let t: FieldElem = "sqrt5 - 1".parse().unwrap();
        let m = Mat2::new(
            t,
            FieldElem::from_int(-1),
            FieldElem::one(),
            FieldElem::zero(),
        )
        .unwrap();
        assert_eq!(
            is_torsion(&m, 120),
            TorsionStatus::NeverTorsion {
                reason: NeverTorsionReason::GaloisImageOutsideInterval { galois_index: 2 }
            }
        );
    }

    #[test]
    fn bound_is_respected() {
        // Order-8 rotation: diag(ζ₈, ζ₈⁻¹) with ζ₈ = (1+i)/√2.
        let z: FieldElem = "(1+i)/sqrt2".parse().unwrap();
        let m = Mat2::diag(&z).unwrap();
        assert_eq!(is_torsion(&m, 120), TorsionStatus::Torsion { order: 8 });
        assert_eq!(
            is_torsion(&m, 7),
            TorsionStatus::NotTorsionUpTo { bound: 7 }
        );
        let m = Mat2::diag(&FieldElem::i()).unwrap();
        assert!(matches!(
            is_torsion(&m, 3),
            TorsionStatus::NotTorsionUpTo { bound: 3 }
        ));
    }

    #[test]
    fn non_real_trace() {
        let m = Mat2::diag(&"2i".parse().unwrap()).unwrap();
        assert_eq!(
            is_torsion(&m, 120),
            TorsionStatus::NeverTorsion {
                reason: NeverTorsionReason::NonRealTrace
            }
        );
    }
}
