//! Closure, star, link and motif predicates.
//!
//! Stars are taken with respect to the nonempty faces of a set: every face
//! contains the empty face, so counting it would make `St Cl S` the whole
//! complex and every link empty.

use std::collections::BTreeSet;

use super::{Complex, Face};
use crate::error::{Error, Result};

impl Complex {
    /// Smallest downward-closed face set containing `set` (always contains `∅`).
    pub fn closure_set<'a, I>(&self, set: I) -> BTreeSet<Face>
    where
        I: IntoIterator<Item = &'a Face>,
    {
        let mut out = BTreeSet::new();
        out.insert(Face::empty());
        for f in set {
            if out.contains(f) {
                continue;
            }
            out.extend(f.subsets());
        }
        out
    }

    /// `Cl S` as a complex in its own right.
    pub fn closure(&self, set: &[Face]) -> Complex {
        let cl = self.closure_set(set);
        self.from_face_set(&cl)
    }

    /// `St S`: faces of the complex containing some nonempty face of `set`.
    pub fn star<'a, I>(&self, set: I) -> BTreeSet<Face>
    where
        I: IntoIterator<Item = &'a Face>,
    {
        let seeds: Vec<&Face> = set.into_iter().filter(|f| !f.is_empty()).collect();
        self.all_faces()
            .filter(|g| seeds.iter().any(|h| h.is_subset_of(g)))
            .cloned()
            .collect()
    }

    /// `Lk S = Cl St S − St Cl S`.
    pub fn link<'a, I>(&self, set: I) -> BTreeSet<Face>
    where
        I: IntoIterator<Item = &'a Face>,
    {
        let s: Vec<&Face> = set.into_iter().collect();
        let st = self.star(s.iter().copied());
        let cl_st = self.closure_set(&st);
        let cl = self.closure_set(s.iter().copied());
        let st_cl = self.star(&cl);
        cl_st.difference(&st_cl).cloned().collect()
    }

    /// Whether a face set is closed under taking subsets.
    pub fn is_downward_closed(set: &BTreeSet<Face>) -> bool {
        set.iter().all(|f| f.boundary().all(|g| set.contains(&g)))
    }

    /// Largest dimension in a face set, `None` for the empty set.
    pub fn set_dim(set: &BTreeSet<Face>) -> Option<isize> {
        set.iter().map(Face::dim).max()
    }

    /// Faces of `sub` re-expressed in this complex's vertex indexing.
    pub fn embed(&self, sub: &Complex) -> Result<BTreeSet<Face>> {
        sub.all_faces()
            .map(|f| {
                self.face(&sub.labels_of(f))
                    .map_err(|_| Error::NotSubcomplex(format!("{{{}}}", sub.face_label(f))))
            })
            .collect()
    }

    /// All faces of this complex whose vertices lie in `vertices`.
    pub fn induced_subcomplex<S: AsRef<str>>(&self, vertices: &[S]) -> Result<Complex> {
        let mut ids = BTreeSet::new();
        for v in vertices {
            let v = v.as_ref();
            ids.insert(self.vertex_index(v).ok_or_else(|| Error::UnknownFace(format!("vertex {v:?}")))?);
        }
        let set: BTreeSet<Face> = self
            .all_faces()
            .filter(|f| f.vertices().iter().all(|v| ids.contains(v)))
            .cloned()
            .collect();
        Ok(self.from_face_set(&set))
    }

    /// Vertex indices used by a face set.
    pub fn vertex_support(set: &BTreeSet<Face>) -> BTreeSet<usize> {
        set.iter().flat_map(|f| f.vertices().iter().copied()).collect()
    }

    /// `sigma` contains every face of this complex spanned by its own vertices.
    pub fn is_motif(&self, sigma: &Complex) -> Result<bool> {
        let emb = self.embed(sigma)?;
        let verts = Self::vertex_support(&emb);
        Ok(self
            .all_faces()
            .filter(|f| f.vertices().iter().all(|v| verts.contains(v)))
            .all(|f| emb.contains(f)))
    }

    /// Any face of the complex containing two distinct nonempty faces of
    /// `sigma` belongs to `sigma`.
    pub fn satisfies_two_face_condition(&self, sigma: &Complex) -> Result<bool> {
        let emb = self.embed(sigma)?;
        let verts = Self::vertex_support(&emb);
        // Two distinct nonempty faces of a subcomplex inside F exist exactly
        // when F meets sigma's vertex set in at least two vertices, or F
        // contains a face of sigma of dimension >= 1 (which itself contains
        // two vertices). Both reduce to |F ∩ V(sigma)| >= 2.
        Ok(self.all_faces().all(|f| {
            let hits = f.vertices().iter().filter(|v| verts.contains(v)).count();
            hits < 2 || emb.contains(f)
        }))
    }

    /// The two-face condition holds and `dim Lk sigma = i`.
    pub fn is_i_motif(&self, sigma: &Complex, i: isize) -> Result<bool> {
        if !self.satisfies_two_face_condition(sigma)? {
            return Ok(false);
        }
        let emb = self.embed(sigma)?;
        Ok(Self::set_dim(&self.link(&emb)) == Some(i))
    }
}
