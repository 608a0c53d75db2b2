//! Up, down and full Laplacians on `i`-cochains.
//!
//! Entries are assembled face by face from the weighted incidence formulas.
//! The same assembly runs over `f64` for spectra and over exact rationals for
//! identity checks. Rows and columns follow `Complex::faces(i)`.

use num_rational::BigRational;
use num_traits::Num;
use serde::Serialize;

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::orientation::{boundary_sign, Orientation};
use crate::weights::{Regime, WeightFunction};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LaplacianKind {
    Up,
    Down,
    Full,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianMatrix {
    pub kind: LaplacianKind,
    pub dim: isize,
    pub regime: Regime,
    pub matrix: Matrix<f64>,
}

impl LaplacianMatrix {
    pub fn order(&self) -> usize {
        self.matrix.rows()
    }
}

/// Whether the empty face takes part in the down Laplacian at dimension 0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum EmptyFace {
    #[default]
    Keep,
    Drop,
}

fn check_range(i: isize, min: isize, max: isize) -> Result<()> {
    if i < min || i > max {
        return Err(Error::DimensionOutOfRange { dim: i, min, max });
    }
    Ok(())
}

fn check_weights(k: &Complex, w: &WeightFunction, dims: &[isize]) -> Result<()> {
    for &d in dims {
        if w.layer(d).len() != k.num_faces(d) {
            return Err(Error::MalformedInput("weight function does not match the complex".into()));
        }
    }
    Ok(())
}

fn up_entries<T>(k: &Complex, i: isize, orientation: &Orientation, w: impl Fn(isize, usize) -> T) -> Result<Matrix<T>>
where
    T: Num + Clone + std::ops::Neg<Output = T>,
{
    let n = k.num_faces(i);
    let mut m: Matrix<T> = Matrix::zeros(n, n);
    for (u, top) in k.faces(i + 1).iter().enumerate() {
        let w_top = w(i + 1, u);
        let mut incident = Vec::with_capacity(top.len());
        for sub in top.boundary() {
            let idx = k.face_index(&sub).expect("downward closed");
            incident.push((idx, boundary_sign(&sub, top, orientation)?));
        }
        for &(a, sa) in &incident {
            let ratio = w_top.clone() / w(i, a);
            for &(b, sb) in &incident {
                let term = if a == b || sa * sb > 0 { ratio.clone() } else { -ratio.clone() };
                m[(a, b)] = m[(a, b)].clone() + term;
            }
        }
    }
    Ok(m)
}

fn down_entries<T>(k: &Complex, i: isize, orientation: &Orientation, w: impl Fn(isize, usize) -> T) -> Result<Matrix<T>>
where
    T: Num + Clone + std::ops::Neg<Output = T>,
{
    let n = k.num_faces(i);
    let mut m: Matrix<T> = Matrix::zeros(n, n);
    for (e, low) in k.faces(i - 1).iter().enumerate() {
        let w_low = w(i - 1, e);
        let mut incident = Vec::new();
        for &c in k.coface_indices(i - 1, e) {
            let face = &k.faces(i)[c];
            incident.push((c, boundary_sign(low, face, orientation)?));
        }
        for &(a, sa) in &incident {
            for &(b, sb) in &incident {
                let ratio = w(i, b) / w_low.clone();
                let term = if a == b || sa * sb > 0 { ratio } else { -ratio };
                m[(a, b)] = m[(a, b)].clone() + term;
            }
        }
    }
    Ok(m)
}

/// `L_i^up = δ_i^* δ_i` for `-1 <= i <= dim K - 1`.
pub fn up_laplacian(k: &Complex, i: isize, orientation: &Orientation, w: &WeightFunction) -> Result<LaplacianMatrix> {
    check_range(i, -1, k.dim() - 1)?;
    check_weights(k, w, &[i, i + 1])?;
    let matrix = up_entries(k, i, orientation, |d, idx| w.value(d, idx))?;
    Ok(LaplacianMatrix { kind: LaplacianKind::Up, dim: i, regime: w.regime(), matrix })
}

/// `L_i^down = δ_{i-1} δ_{i-1}^*` for `0 <= i <= dim K`.
pub fn down_laplacian(k: &Complex, i: isize, orientation: &Orientation, w: &WeightFunction) -> Result<LaplacianMatrix> {
    down_laplacian_with(k, i, orientation, w, EmptyFace::Keep)
}

pub fn down_laplacian_with(
    k: &Complex,
    i: isize,
    orientation: &Orientation,
    w: &WeightFunction,
    empty: EmptyFace,
) -> Result<LaplacianMatrix> {
    check_range(i, 0, k.dim())?;
    check_weights(k, w, &[i - 1, i])?;
    let matrix = if i == 0 && empty == EmptyFace::Drop {
        Matrix::zeros(k.num_faces(0), k.num_faces(0))
    } else {
        down_entries(k, i, orientation, |d, idx| w.value(d, idx))?
    };
    Ok(LaplacianMatrix { kind: LaplacianKind::Down, dim: i, regime: w.regime(), matrix })
}

/// `L_i = L_i^up + L_i^down` for `0 <= i <= dim K`; the up part vanishes at the top dimension.
pub fn full_laplacian(k: &Complex, i: isize, orientation: &Orientation, w: &WeightFunction) -> Result<LaplacianMatrix> {
    full_laplacian_with(k, i, orientation, w, EmptyFace::Keep)
}

pub fn full_laplacian_with(
    k: &Complex,
    i: isize,
    orientation: &Orientation,
    w: &WeightFunction,
    empty: EmptyFace,
) -> Result<LaplacianMatrix> {
    let down = down_laplacian_with(k, i, orientation, w, empty)?;
    let up = up_entries(k, i, orientation, |d, idx| w.value(d, idx))?;
    Ok(LaplacianMatrix { kind: LaplacianKind::Full, dim: i, regime: w.regime(), matrix: up.add(&down.matrix) })
}

/// Exact rational `L_i^up`.
pub fn up_laplacian_exact(
    k: &Complex,
    i: isize,
    orientation: &Orientation,
    w: &WeightFunction,
) -> Result<Matrix<BigRational>> {
    check_range(i, -1, k.dim() - 1)?;
    check_weights(k, w, &[i, i + 1])?;
    up_entries(k, i, orientation, |d, idx| w.exact(d, idx).clone())
}

/// Exact rational `L_i^down`.
pub fn down_laplacian_exact(
    k: &Complex,
    i: isize,
    orientation: &Orientation,
    w: &WeightFunction,
) -> Result<Matrix<BigRational>> {
    check_range(i, 0, k.dim())?;
    check_weights(k, w, &[i - 1, i])?;
    down_entries(k, i, orientation, |d, idx| w.exact(d, idx).clone())
}

/// Entrywise symmetry tolerance of [`symmetric_form`], relative to entry size.
pub const SYMMETRY_TOL: f64 = 1e-13;

/// `W^{1/2} L W^{-1/2}`, symmetric and with the same spectrum as `L`.
pub fn symmetric_form(l: &LaplacianMatrix, w: &WeightFunction) -> Result<Matrix<f64>> {
    let weights = w.layer(l.dim);
    if weights.len() != l.order() {
        return Err(Error::MalformedInput("weights do not index the Laplacian".into()));
    }
    let roots: Vec<f64> = weights.iter().map(|x| x.sqrt()).collect();
    let mut s = Matrix::from_fn(l.order(), l.order(), |r, c| roots[r] * l.matrix[(r, c)] / roots[c]);
    for r in 0..s.rows() {
        for c in r + 1..s.cols() {
            let (a, b) = (s[(r, c)], s[(c, r)]);
            if (a - b).abs() > SYMMETRY_TOL * a.abs().max(b.abs()).max(1.0) {
                return Err(Error::InternalConsistency(format!(
                    "symmetrized Laplacian entry ({r},{c}) differs from its transpose by {:e}",
                    (a - b).abs()
                )));
            }
            let mean = 0.5 * (a + b);
            s[(r, c)] = mean;
            s[(c, r)] = mean;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orientation::boundary_matrix;
    use crate::weights::{normalized_weights, uniform_weights};
    use num_bigint::BigInt;
    use num_traits::{One, Zero};

    fn cx(facets: &[&[&str]]) -> Complex {
        let v: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
        Complex::from_facets(&v).unwrap()
    }

    fn rat(x: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(x))
    }

    /// `W_i^{-1} D_{i+1} W_{i+1} D_{i+1}^T`, built from matrix products.
    fn up_by_products(k: &Complex, i: isize, s: &Orientation, w: &WeightFunction) -> Matrix<BigRational> {
        let d = boundary_matrix(k, i + 1, s).unwrap().matrix.map(|x| rat(*x));
        let n_lo = k.num_faces(i);
        let n_hi = k.num_faces(i + 1);
        let w_inv = Matrix::from_fn(n_lo, n_lo, |r, c| {
            if r == c { BigRational::one() / w.exact(i, r) } else { BigRational::zero() }
        });
        let w_hi = Matrix::from_fn(n_hi, n_hi, |r, c| if r == c { w.exact(i + 1, r).clone() } else { BigRational::zero() });
        w_inv.matmul(&d).matmul(&w_hi).matmul(&d.transpose())
    }

    #[test]
    fn lone_edge_up() {
        let k = cx(&[&["a", "b"]]);
        let l = up_laplacian(&k, 0, &Orientation::canonical(), &normalized_weights(&k)).unwrap();
        assert_eq!(l.matrix.to_rows(), vec![vec![1.0, -1.0], vec![-1.0, 1.0]]);
    }

    #[test]
    fn lone_edge_down() {
        let k = cx(&[&["a", "b"]]);
        let w = normalized_weights(&k);
        let l = down_laplacian(&k, 1, &Orientation::canonical(), &w).unwrap();
        assert_eq!(l.matrix.to_rows(), vec![vec![2.0]]);
        // Dimension 0 down Laplacian: diagonal w(v)/w(∅) = 1/2, off-diagonal w(v')/w(∅).
        let l0 = down_laplacian(&k, 0, &Orientation::canonical(), &w).unwrap();
        assert_eq!(l0.matrix.to_rows(), vec![vec![0.5, 0.5], vec![0.5, 0.5]]);
        let dropped = down_laplacian_with(&k, 0, &Orientation::canonical(), &w, EmptyFace::Drop).unwrap();
        assert_eq!(dropped.matrix.max_abs(), 0.0);
    }

    #[test]
    fn isolated_face_row_is_zero() {
        let k = cx(&[&["a", "b"], &["z"]]);
        let l = up_laplacian(&k, 0, &Orientation::canonical(), &normalized_weights(&k)).unwrap();
        let z = k.face_index(&k.face(&["z"]).unwrap()).unwrap();
        assert!(l.matrix.row(z).iter().all(|x| *x == 0.0));
    }

    #[test]
    fn up_matches_matrix_product_exactly() {
        let k = cx(&[&["a", "b", "c", "d"], &["c", "e"], &["d", "e", "f"], &["a", "f"]]);
        let mut s = Orientation::canonical();
        s.flip(&k.face(&["b", "d"]).unwrap());
        s.flip(&k.face(&["a", "c", "d"]).unwrap());
        for w in [normalized_weights(&k), uniform_weights(&k)] {
            for i in -1..k.dim() {
                let direct = up_laplacian_exact(&k, i, &s, &w).unwrap();
                assert_eq!(direct, up_by_products(&k, i, &s, &w), "dim {i}");
            }
        }
    }

    #[test]
    fn normalized_up_diagonal_is_one_or_zero() {
        let k = cx(&[&["a", "b", "c"], &["c", "d"], &["e"]]);
        let w = normalized_weights(&k);
        for i in 0..k.dim() {
            let l = up_laplacian(&k, i, &Orientation::canonical(), &w).unwrap();
            for idx in 0..k.num_faces(i) {
                let expected = if k.coface_indices(i, idx).is_empty() { 0.0 } else { 1.0 };
                assert_eq!(l.matrix[(idx, idx)], expected);
            }
        }
    }

    #[test]
    fn uniform_weights_give_combinatorial_laplacian() {
        let k = cx(&[&["a", "b"], &["b", "c"], &["a", "c"]]);
        let l = up_laplacian(&k, 0, &Orientation::canonical(), &uniform_weights(&k)).unwrap();
        // Graph Laplacian of C_3.
        assert_eq!(
            l.matrix.to_rows(),
            vec![vec![2.0, -1.0, -1.0], vec![-1.0, 2.0, -1.0], vec![-1.0, -1.0, 2.0]]
        );
    }

    #[test]
    fn full_is_up_plus_down() {
        let k = cx(&[&["a", "b", "c"], &["c", "d"]]);
        let w = normalized_weights(&k);
        let s = Orientation::canonical();
        for i in 0..k.dim() {
            let up = up_laplacian(&k, i, &s, &w).unwrap();
            let down = down_laplacian(&k, i, &s, &w).unwrap();
            let full = full_laplacian(&k, i, &s, &w).unwrap();
            assert_eq!(full.matrix, up.matrix.add(&down.matrix));
        }
        let top = full_laplacian(&k, 2, &s, &w).unwrap();
        assert_eq!(top.matrix, down_laplacian(&k, 2, &s, &w).unwrap().matrix);
    }

    #[test]
    fn range_errors() {
        let k = cx(&[&["a", "b"]]);
        let w = normalized_weights(&k);
        let s = Orientation::canonical();
        assert!(up_laplacian(&k, 1, &s, &w).is_err());
        assert!(down_laplacian(&k, -1, &s, &w).is_err());
        assert!(down_laplacian(&k, 2, &s, &w).is_err());
    }

    #[test]
    fn symmetric_form_of_symmetric_input_is_unchanged() {
        let k = cx(&[&["a", "b"]]);
        let w = normalized_weights(&k);
        let l = up_laplacian(&k, 0, &Orientation::canonical(), &w).unwrap();
        assert_eq!(symmetric_form(&l, &w).unwrap(), l.matrix);
    }

    #[test]
    fn symmetric_form_is_symmetric() {
        let k = cx(&[&["a", "b", "c"], &["c", "d"], &["b", "d"], &["d", "e", "f", "g"]]);
        let w = normalized_weights(&k);
        for i in 0..=k.dim() {
            let l = full_laplacian(&k, i, &Orientation::canonical(), &w).unwrap();
            let s = symmetric_form(&l, &w).unwrap();
            assert!(s.symmetry_defect() <= 1e-13);
        }
    }
}
