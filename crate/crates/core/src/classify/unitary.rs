//! Numeric search for an invariant positive-definite Hermitian form.

use nalgebra::{DMatrix, Matrix2};
use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use crate::charvariety::Representation;
use crate::numfield::FieldElem;
use crate::random::seeded_rng;
use crate::sl2core::Mat2;

pub const DEFAULT_UNITARY_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Unitarizable {
    Yes,
    No,
    Inconclusive,
}

/// Exact reasons a single matrix cannot lie in a conjugate of SU(2).
fn exact_obstruction(m: &Mat2) -> bool {
    let t = m.trace();
    let two = FieldElem::from_int(2);
    if !t.is_real() {
        return true;
    }
    if (t == two || t == -two.clone()) && !m.is_central() {
        return true;
    }
    let above = t.cmp_real(&two) == Some(std::cmp::Ordering::Greater);
    let below = t.cmp_real(&-two) == Some(std::cmp::Ordering::Less);
    above || below
}

/// Hermitian form `[[p, q + ir], [q − ir, s]]`.
fn hermitian(v: &[f64; 4]) -> Matrix2<Complex64> {
    let [p, q, r, s] = *v;
    Matrix2::new(
        Complex64::new(p, 0.0),
        Complex64::new(q, r),
        Complex64::new(q, -r),
        Complex64::new(s, 0.0),
    )
}

/// Smallest eigenvalue of the form, after scaling it to unit Frobenius norm.
fn normalized_min_eigenvalue(v: &[f64; 4]) -> f64 {
    let [p, q, r, s] = *v;
    let norm = (p * p + s * s + 2.0 * (q * q + r * r)).sqrt();
    if norm == 0.0 {
        return f64::NEG_INFINITY;
    }
    let mean = (p + s) / 2.0;
    let radius = (((p - s) / 2.0).powi(2) + q * q + r * r).sqrt();
    (mean - radius) / norm
}

fn to_complex(m: &Mat2, precision: u32) -> Matrix2<Complex64> {
    let e = m.embed(precision);
    Matrix2::new(e[0][0], e[0][1], e[1][0], e[1][1])
}

/// One real row block per generator: the coordinates of g†Hg − H.
fn fixed_point_system(gens: &[Matrix2<Complex64>]) -> DMatrix<f64> {
    let mut a = DMatrix::<f64>::zeros(4 * gens.len(), 4);
    for (block, g) in gens.iter().enumerate() {
        let gd = g.adjoint();
        for j in 0..4 {
            let mut basis = [0.0; 4];
            basis[j] = 1.0;
            let h = hermitian(&basis);
            let f = gd * h * g - h;
            let row = 4 * block;
            a[(row, j)] = f[(0, 0)].re;
            a[(row + 1, j)] = f[(0, 1)].re;
            a[(row + 2, j)] = f[(0, 1)].im;
            a[(row + 3, j)] = f[(1, 1)].re;
        }
    }
    a
}

/// Maximizes the normalized smallest eigenvalue over unit vectors of the
/// span of `basis`, by deterministic sampling followed by local refinement.
fn best_form(basis: &[[f64; 4]]) -> f64 {
    let combine = |c: &[f64]| -> [f64; 4] {
        let mut v = [0.0; 4];
        for (k, b) in basis.iter().enumerate() {
            for j in 0..4 {
                v[j] += c[k] * b[j];
            }
        }
        v
    };
    if basis.len() == 1 {
        let v = basis[0];
        let w = v.map(|x| -x);
        return normalized_min_eigenvalue(&v).max(normalized_min_eigenvalue(&w));
    }
    let dim = basis.len();
    let mut rng = seeded_rng(0x00F0_AA11);
    let mut best_c = vec![0.0; dim];
    let mut best = f64::NEG_INFINITY;
    for _ in 0..4000 {
        let c: Vec<f64> = (0..dim).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let val = normalized_min_eigenvalue(&combine(&c));
        if val > best {
            best = val;
            best_c = c;
        }
    }
    let mut step = 0.25;
    while step > 1e-12 {
        let mut improved = false;
        for k in 0..dim {
            for sign in [1.0, -1.0] {
                let mut c = best_c.clone();
                c[k] += sign * step;
                let val = normalized_min_eigenvalue(&combine(&c));
                if val > best {
                    best = val;
                    best_c = c;
                    improved = true;
                }
            }
        }
        if !improved {
            step /= 2.0;
        }
    }
    best
}

/// Whether the image is conjugate into SU(2), decided numerically except
/// for exact obstructions (non-real trace, real trace outside [−2, 2],
/// non-central parabolic generator).
pub fn unitarizable_numeric(rep: &Representation, precision: u32, tol: f64) -> Unitarizable {
    if rep.images().iter().any(exact_obstruction) {
        return Unitarizable::No;
    }
    let gens: Vec<Matrix2<Complex64>> = rep
        .images()
        .iter()
        .map(|m| to_complex(m, precision))
        .collect();
    let system = fixed_point_system(&gens);
    let svd = system.svd(false, true);
    let v_t = svd.v_t.expect("requested right singular vectors");
    let scale = svd.singular_values.max().max(1.0);
    let threshold = tol.max(f64::EPSILON * 16.0) * scale;
    let null: Vec<[f64; 4]> = svd
        .singular_values
        .iter()
        .enumerate()
        .filter(|(_, &s)| s <= threshold)
        .map(|(k, _)| std::array::from_fn(|j| v_t[(k, j)]))
        .collect();
    if null.is_empty() {
        return Unitarizable::No;
    }
    let best = best_form(&null);
    if best > tol {
        Unitarizable::Yes
    } else if best < -tol {
        Unitarizable::No
    } else {
        Unitarizable::Inconclusive
    }
}
