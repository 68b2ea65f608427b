//! The binary tetrahedral, octahedral and icosahedral groups as unit quaternions.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::{quaternion_to_mat, Mat2, Quaternion};
use crate::numfield::FieldElem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BinaryGroup {
    BA4,
    BS4,
    BA5,
}

impl BinaryGroup {
    pub const ALL: [BinaryGroup; 3] = [BinaryGroup::BA4, BinaryGroup::BS4, BinaryGroup::BA5];

    /// The defining quaternions, deduplicated and sorted.
    pub fn quaternions(self) -> Vec<Quaternion> {
        let mut set: HashSet<Quaternion> = ba4_quaternions().into_iter().collect();
        match self {
            BinaryGroup::BA4 => {}
            BinaryGroup::BS4 => set.extend(octahedral_extra()),
            BinaryGroup::BA5 => set.extend(icosahedral_extra()),
        }
        let mut out: Vec<Quaternion> = set.into_iter().collect();
        out.sort();
        out
    }

    /// Group elements as matrices in canonical order.
    pub fn elements(self) -> &'static [Mat2] {
        &self.table().0
    }

    pub fn order(self) -> usize {
        self.elements().len()
    }

    pub fn contains(self, m: &Mat2) -> bool {
        self.table().1.contains(m)
    }

    fn table(self) -> &'static (Vec<Mat2>, HashSet<Mat2>) {
        static TABLES: [OnceLock<(Vec<Mat2>, HashSet<Mat2>)>; 3] =
            [OnceLock::new(), OnceLock::new(), OnceLock::new()];
        TABLES[self as usize].get_or_init(|| {
            let mut elements: Vec<Mat2> = self
                .quaternions()
                .iter()
                .map(|q| quaternion_to_mat(q).expect("unit quaternion"))
                .collect();
            elements.sort();
            let set: HashSet<Mat2> = elements.iter().cloned().collect();
            for x in &elements {
                for y in &elements {
                    assert!(
                        set.contains(&(x * y)),
                        "{self} is not closed under products"
                    );
                }
            }
            (elements, set)
        })
    }
}

impl fmt::Display for BinaryGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BinaryGroup::BA4 => "BA4",
            BinaryGroup::BS4 => "BS4",
            BinaryGroup::BA5 => "BA5",
        })
    }
}

impl FromStr for BinaryGroup {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_uppercase().as_str() {
            "BA4" => Ok(BinaryGroup::BA4),
            "BS4" => Ok(BinaryGroup::BS4),
            "BA5" => Ok(BinaryGroup::BA5),
            _ => Err(format!("unknown binary group `{s}`")),
        }
    }
}

/// Full element set of `which`, as matrices in canonical order.
pub fn binary_group(which: BinaryGroup) -> Vec<Mat2> {
    which.elements().to_vec()
}

/// Literal membership; no conjugation is attempted.
pub fn membership(m: &Mat2, which: BinaryGroup) -> bool {
    which.contains(m)
}

const SIGNS: [i64; 2] = [1, -1];

fn unit(k: usize, sign: i64) -> Quaternion {
    let mut coords: [FieldElem; 4] = std::array::from_fn(|_| FieldElem::zero());
    coords[k] = FieldElem::from_int(sign);
    Quaternion::from_coords(coords)
}

/// ±1, ±i, ±j, ±k and (±1 ± i ± j ± k)/2.
fn ba4_quaternions() -> Vec<Quaternion> {
    let mut out = Vec::new();
    for k in 0..4 {
        for s in SIGNS {
            out.push(unit(k, s));
        }
    }
    for mask in 0..16u32 {
        let coords =
            std::array::from_fn(|k| FieldElem::frac(if mask >> k & 1 == 1 { -1 } else { 1 }, 2));
        out.push(Quaternion::from_coords(coords));
    }
    out
}

/// All permutations and signs of (±1, ±1, 0, 0)/√2.
fn octahedral_extra() -> Vec<Quaternion> {
    let h = FieldElem::sqrt2().inv().expect("nonzero");
    let mut out = Vec::new();
    for p in 0..4 {
        for q in (p + 1)..4 {
            for sp in SIGNS {
                for sq in SIGNS {
                    let mut coords: [FieldElem; 4] = std::array::from_fn(|_| FieldElem::zero());
                    coords[p] = &h * &FieldElem::from_int(sp);
                    coords[q] = &h * &FieldElem::from_int(sq);
                    out.push(Quaternion::from_coords(coords));
                }
            }
        }
    }
    out
}

fn even_permutations() -> Vec<[usize; 4]> {
    let mut out = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|x| p.contains(&x));
                    if distinct && inversions(&p).is_multiple_of(2) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

fn inversions(p: &[usize; 4]) -> usize {
    (0..4)
        .flat_map(|i| ((i + 1)..4).map(move |j| (i, j)))
        .filter(|&(i, j)| p[i] > p[j])
        .count()
}

/// Even permutations and all signs of (0, ±1, ±φ⁻¹, ±φ)/2.
fn icosahedral_extra() -> Vec<Quaternion> {
    let half = FieldElem::frac(1, 2);
    let base = [
        FieldElem::zero(),
        half.clone(),
        &FieldElem::phi_inv() * &half,
        &FieldElem::phi() * &half,
    ];
    let mut out = Vec::new();
    for perm in even_permutations() {
        for mask in 0..8u32 {
            let signed: [FieldElem; 4] = std::array::from_fn(|k| {
                if k > 0 && mask >> (k - 1) & 1 == 1 {
                    -&base[k]
                } else {
                    base[k].clone()
                }
            });
            let coords = std::array::from_fn(|k| signed[perm[k]].clone());
            out.push(Quaternion::from_coords(coords));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_even_permutations() {
        assert_eq!(even_permutations().len(), 12);
    }

    #[test]
    fn membership_examples() {
        let i = Mat2::diag(&FieldElem::i()).unwrap();
        assert!(membership(&i, BinaryGroup::BA4));
        let d = Mat2::diag(&FieldElem::phi()).unwrap();
        assert!(!membership(&d, BinaryGroup::BA5));
        assert!(membership(&Mat2::identity(), BinaryGroup::BS4));
    }

    #[test]
    fn parse_and_display() {
        for g in BinaryGroup::ALL {
            assert_eq!(g.to_string().parse::<BinaryGroup>().unwrap(), g);
        }
        assert!("BA6".parse::<BinaryGroup>().is_err());
    }
}
