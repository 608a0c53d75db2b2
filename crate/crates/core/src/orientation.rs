//! Orientations, incidence signs and boundary matrices.
//!
//! An [`Orientation`] records which faces are oriented against their sorted
//! vertex order. Only the parity class of a vertex ordering matters, so a
//! single flip bit per face is enough.

use std::collections::BTreeSet;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Per-face orientation as flips against the canonical sorted ordering.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Orientation {
    flipped: BTreeSet<Face>,
}

impl Orientation {
    /// Every face oriented by its sorted vertex sequence.
    pub fn canonical() -> Self {
        Self::default()
    }

    /// `+1` if `face` carries the canonical orientation, `-1` otherwise.
    pub fn sign(&self, face: &Face) -> i8 {
        if self.flipped.contains(face) {
            -1
        } else {
            1
        }
    }

    /// A copy with the orientation of `face` reversed. The empty face has a
    /// single orientation and is left untouched.
    pub fn reorient(&self, face: &Face) -> Orientation {
        let mut out = self.clone();
        out.flip(face);
        out
    }

    pub fn flip(&mut self, face: &Face) {
        if face.is_empty() {
            return;
        }
        if !self.flipped.remove(face) {
            self.flipped.insert(face.clone());
        }
    }

    pub fn flipped_faces(&self) -> impl Iterator<Item = &Face> {
        self.flipped.iter()
    }

    /// Whether every flipped face belongs to `k`.
    pub fn is_defined_on(&self, k: &Complex) -> bool {
        self.flipped.iter().all(|f| k.contains(f))
    }
}

/// `sgn([face], ∂[coface])` under `orientation`: `(-1)^j` for the omitted
/// position `j`, times the two orientation signs; `0` when `face ⊄ coface`.
pub fn boundary_sign(face: &Face, coface: &Face, orientation: &Orientation) -> Result<i8> {
    if coface.dim() != face.dim() + 1 {
        return Err(Error::DimensionMismatch { expected: face.dim() + 1, found: coface.dim() });
    }
    Ok(match coface.omitted_position(face) {
        None => 0,
        Some(j) => {
            let parity = if j % 2 == 0 { 1 } else { -1 };
            parity * orientation.sign(face) * orientation.sign(coface)
        }
    })
}

/// Matrix of `∂_i`: rows are the `(i-1)`-faces, columns the `i`-faces.
#[derive(Clone, Debug, PartialEq)]
pub struct BoundaryMatrix {
    pub dim: isize,
    pub matrix: Matrix<i64>,
}

impl BoundaryMatrix {
    pub fn rows(&self) -> usize {
        self.matrix.rows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.cols()
    }
}

/// `∂_i` for `i >= 0`. Dimensions above `dim K` give a matrix with no columns.
pub fn boundary_matrix(k: &Complex, i: isize, orientation: &Orientation) -> Result<BoundaryMatrix> {
    if i < 0 {
        return Err(Error::DimensionOutOfRange { dim: i, min: 0, max: k.dim() });
    }
    let rows = k.faces(i - 1);
    let cols = k.faces(i);
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (c, upper) in cols.iter().enumerate() {
        for sub in upper.boundary() {
            let r = k.face_index(&sub).expect("complex is downward closed");
            m[(r, c)] = boundary_sign(&sub, upper, orientation)? as i64;
        }
    }
    Ok(BoundaryMatrix { dim: i, matrix: m })
}

/// A real-valued function on the `i`-faces, stored in `faces(i)` order.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    pub dim: isize,
    pub values: Vec<f64>,
}

impl Cochain {
    pub fn zero(k: &Complex, dim: isize) -> Self {
        Cochain { dim, values: vec![0.0; k.num_faces(dim)] }
    }

    /// The elementary cochain `[F]^*`.
    pub fn elementary(k: &Complex, face: &Face) -> Result<Self> {
        let idx = k
            .face_index(face)
            .ok_or_else(|| Error::UnknownFace(k.face_label(face)))?;
        let mut c = Self::zero(k, face.dim());
        c.values[idx] = 1.0;
        Ok(c)
    }

    /// `δ f = f ∘ ∂`, an `(i+1)`-cochain.
    pub fn coboundary(&self, k: &Complex, orientation: &Orientation) -> Result<Cochain> {
        if self.values.len() != k.num_faces(self.dim) {
            return Err(Error::MalformedInput("cochain is not keyed by the faces of the complex".into()));
        }
        let d = boundary_matrix(k, self.dim + 1, orientation)?;
        let values = (0..d.cols())
            .map(|c| (0..d.rows()).map(|r| d.matrix[(r, c)] as f64 * self.values[r]).sum())
            .collect();
        Ok(Cochain { dim: self.dim + 1, values })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&[&str]]) -> Complex {
        let v: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
        Complex::from_facets(&v).unwrap()
    }

    #[test]
    fn edge_signs() {
        let k = cx(&[&["a", "b"]]);
        let (a, b, ab) = (k.face(&["a"]).unwrap(), k.face(&["b"]).unwrap(), k.face(&["a", "b"]).unwrap());
        let s = Orientation::canonical();
        assert_eq!(boundary_sign(&a, &ab, &s).unwrap(), -1);
        assert_eq!(boundary_sign(&b, &ab, &s).unwrap(), 1);
        let far = Face::new(vec![7]).unwrap();
        assert_eq!(boundary_sign(&far, &ab, &s).unwrap(), 0);
        assert!(matches!(
            boundary_sign(&a, &b, &s),
            Err(Error::DimensionMismatch { .. })
        ));
        let t = s.reorient(&ab);
        assert_eq!(boundary_sign(&a, &ab, &t).unwrap(), 1);
    }

    #[test]
    fn reorient_is_an_involution() {
        let f = Face::new(vec![0, 2]).unwrap();
        let s = Orientation::canonical();
        assert_eq!(s.reorient(&f).reorient(&f), s);
        assert_eq!(s.reorient(&Face::empty()), s);
    }

    #[test]
    fn lone_edge_boundary() {
        let k = cx(&[&["a", "b"]]);
        let d1 = boundary_matrix(&k, 1, &Orientation::canonical()).unwrap();
        assert_eq!(d1.matrix.to_rows(), vec![vec![-1], vec![1]]);
        let d0 = boundary_matrix(&k, 0, &Orientation::canonical()).unwrap();
        assert_eq!(d0.matrix.to_rows(), vec![vec![1, 1]]);
    }

    #[test]
    fn boundary_of_boundary_vanishes() {
        let k = cx(&[&["a", "b", "c", "d"], &["c", "e"], &["d", "e", "f"]]);
        let mut s = Orientation::canonical();
        s.flip(&k.face(&["a", "c"]).unwrap());
        s.flip(&k.face(&["b", "c", "d"]).unwrap());
        for i in 0..=k.dim() {
            let lo = boundary_matrix(&k, i, &s).unwrap();
            let hi = boundary_matrix(&k, i + 1, &s).unwrap();
            let prod = lo.matrix.matmul(&hi.matrix);
            assert!(prod.to_rows().iter().flatten().all(|x| *x == 0), "dim {i}");
        }
    }

    #[test]
    fn columns_have_i_plus_one_nonzeros() {
        let k = cx(&[&["a", "b", "c", "d"]]);
        for i in 0..=3 {
            let d = boundary_matrix(&k, i, &Orientation::canonical()).unwrap();
            for c in 0..d.cols() {
                let nz = (0..d.rows()).filter(|r| d.matrix[(*r, c)] != 0).count();
                assert_eq!(nz as isize, i + 1);
            }
        }
    }

    #[test]
    fn coboundary_of_elementary_vertex() {
        let k = cx(&[&["a", "b"], &["a", "c"]]);
        let a = k.face(&["a"]).unwrap();
        let f = Cochain::elementary(&k, &a).unwrap();
        let df = f.coboundary(&k, &Orientation::canonical()).unwrap();
        // ∂[a,b] = [b] - [a], ∂[a,c] = [c] - [a]
        assert_eq!(df.values, vec![-1.0, -1.0]);
    }
}
