//! Abstract simplicial complexes over string-labelled vertices.
//!
//! A [`Complex`] stores every face, including the empty face, grouped by
//! dimension. Vertices are kept in lexicographic label order and a [`Face`]
//! is a strictly increasing list of vertex indices into that order, so the
//! canonical orientation of a face is simply its stored vertex sequence.

mod calculus;

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// A face as a strictly increasing sequence of vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face(Vec<usize>);

impl Face {
    /// The empty face, of dimension -1.
    pub fn empty() -> Self {
        Face(Vec::new())
    }

    /// Builds a face from vertex indices, sorting them. Fails on repeated vertices.
    pub fn new(mut vertices: Vec<usize>) -> Result<Self> {
        vertices.sort_unstable();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::MalformedInput(format!("repeated vertex in face {vertices:?}")));
        }
        Ok(Face(vertices))
    }

    pub(crate) fn from_sorted(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    pub fn dim(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn is_subset_of(&self, other: &Face) -> bool {
        self.0.iter().all(|v| other.contains_vertex(*v))
    }

    /// The face with the vertex at sorted position `j` removed.
    pub fn omit(&self, j: usize) -> Face {
        let mut v = self.0.clone();
        v.remove(j);
        Face(v)
    }

    /// Codimension-one faces in omitted-position order `j = 0, 1, ...`.
    pub fn boundary(&self) -> impl Iterator<Item = Face> + '_ {
        (0..self.0.len()).map(move |j| self.omit(j))
    }

    /// Position of the single vertex of `self` missing from `sub`, if `sub` is a
    /// codimension-one face of `self`.
    pub fn omitted_position(&self, sub: &Face) -> Option<usize> {
        if sub.0.len() + 1 != self.0.len() {
            return None;
        }
        let mut j = 0;
        while j < sub.0.len() && sub.0[j] == self.0[j] {
            j += 1;
        }
        (self.0[j + 1..] == sub.0[j..]).then_some(j)
    }

    pub fn union(&self, other: &Face) -> Face {
        let set: BTreeSet<usize> = self.0.iter().chain(other.0.iter()).copied().collect();
        Face(set.into_iter().collect())
    }

    pub fn intersection(&self, other: &Face) -> Face {
        Face(self.0.iter().copied().filter(|v| other.contains_vertex(*v)).collect())
    }

    /// All subsets, in no particular order.
    pub(crate) fn subsets(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        (0u64..(1u64 << n)).map(move |mask| {
            Face((0..n).filter(|b| mask & (1 << b) != 0).map(|b| self.0[b]).collect())
        })
    }
}

/// An abstract simplicial complex. Immutable once built.
#[derive(Clone, Debug)]
pub struct Complex {
    labels: Vec<String>,
    /// `faces[d + 1]` holds the sorted `d`-faces.
    faces: Vec<Vec<Face>>,
    index: Vec<HashMap<Face, usize>>,
    /// `cofaces[d + 1][k]` are indices into `faces[d + 2]` of the cofaces of `faces[d + 1][k]`.
    cofaces: Vec<Vec<Vec<usize>>>,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.faces == other.faces
    }
}

impl Eq for Complex {}

impl Complex {
    /// The complex `{∅}`.
    pub fn void() -> Self {
        Self::from_label_faces(std::iter::empty::<Vec<String>>()).expect("void complex")
    }

    /// Smallest complex containing every listed facet.
    pub fn from_facets<S: AsRef<str>>(facets: &[Vec<S>]) -> Result<Self> {
        for f in facets {
            if f.is_empty() {
                return Err(Error::MalformedInput("empty facet".into()));
            }
            let set: BTreeSet<&str> = f.iter().map(AsRef::as_ref).collect();
            if set.len() != f.len() {
                let names: Vec<&str> = f.iter().map(AsRef::as_ref).collect();
                return Err(Error::MalformedInput(format!("duplicate vertex in facet {names:?}")));
            }
        }
        Self::from_label_faces(
            facets.iter().map(|f| f.iter().map(|s| s.as_ref().to_string()).collect::<Vec<_>>()),
        )
    }

    /// Downward closure of arbitrary label sets. Repeated labels inside a set collapse.
    pub fn from_label_faces<I>(faces: I) -> Result<Self>
    where
        I: IntoIterator<Item = Vec<String>>,
    {
        let generators: Vec<BTreeSet<String>> =
            faces.into_iter().map(|f| f.into_iter().collect()).collect();
        let labels: Vec<String> = generators
            .iter()
            .flat_map(|g| g.iter().cloned())
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let lookup: HashMap<&str, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect();

        let mut all: BTreeSet<Face> = BTreeSet::new();
        all.insert(Face::empty());
        for g in &generators {
            let face = Face::from_sorted(g.iter().map(|l| lookup[l.as_str()]).collect());
            if all.contains(&face) {
                continue;
            }
            for s in face.subsets() {
                all.insert(s);
            }
        }
        Ok(Self::from_closed_set(labels, all))
    }

    /// Builds from a face set already known to be downward closed and to use
    /// every vertex in `labels`.
    pub(crate) fn from_closed_set(labels: Vec<String>, all: BTreeSet<Face>) -> Self {
        let top = all.iter().map(|f| f.len()).max().unwrap_or(0);
        let mut faces: Vec<Vec<Face>> = vec![Vec::new(); top + 1];
        for f in all {
            faces[f.len()].push(f);
        }
        for layer in &mut faces {
            layer.sort();
        }
        let index: Vec<HashMap<Face, usize>> = faces
            .iter()
            .map(|layer| layer.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect())
            .collect();
        let mut cofaces: Vec<Vec<Vec<usize>>> =
            faces.iter().map(|layer| vec![Vec::new(); layer.len()]).collect();
        for d in 1..faces.len() {
            for (ci, upper) in faces[d].iter().enumerate() {
                for sub in upper.boundary() {
                    let k = index[d - 1][&sub];
                    cofaces[d - 1][k].push(ci);
                }
            }
        }
        Complex { labels, faces, index, cofaces }
    }

    /// Builds the complex on `labels` whose faces are given by label sets,
    /// keeping only the vertices that actually occur.
    pub(crate) fn from_face_set(&self, set: &BTreeSet<Face>) -> Complex {
        Complex::from_label_faces(set.iter().map(|f| self.labels_of(f).into_iter().map(String::from).collect()))
            .expect("face sets of a complex are well formed")
    }

    pub fn dim(&self) -> isize {
        self.faces.len() as isize - 2
    }

    pub fn vertex_labels(&self) -> &[String] {
        &self.labels
    }

    pub fn num_vertices(&self) -> usize {
        self.labels.len()
    }

    pub fn vertex_index(&self, label: &str) -> Option<usize> {
        self.labels.binary_search_by(|l| l.as_str().cmp(label)).ok()
    }

    /// The `i`-faces in canonical order; empty outside `-1..=dim`.
    pub fn faces(&self, i: isize) -> &[Face] {
        if i < -1 {
            return &[];
        }
        self.faces.get((i + 1) as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn num_faces(&self, i: isize) -> usize {
        self.faces(i).len()
    }

    /// Every face of every dimension, lowest dimension first.
    pub fn all_faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter().flatten()
    }

    pub fn face_index(&self, face: &Face) -> Option<usize> {
        self.index.get(face.len())?.get(face).copied()
    }

    pub fn contains(&self, face: &Face) -> bool {
        self.face_index(face).is_some()
    }

    /// Looks up a face by vertex labels (any order).
    pub fn face<S: AsRef<str>>(&self, labels: &[S]) -> Result<Face> {
        let mut ids = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            ids.push(self.vertex_index(l).ok_or_else(|| Error::UnknownFace(format!("vertex {l:?}")))?);
        }
        let face = Face::new(ids)?;
        if !self.contains(&face) {
            let names: Vec<&str> = labels.iter().map(AsRef::as_ref).collect();
            return Err(Error::UnknownFace(format!("{{{}}}", names.join(","))));
        }
        Ok(face)
    }

    pub fn labels_of(&self, face: &Face) -> Vec<&str> {
        face.vertices().iter().map(|v| self.labels[*v].as_str()).collect()
    }

    /// Comma-joined vertex labels; the empty face renders as the empty string.
    pub fn face_label(&self, face: &Face) -> String {
        self.labels_of(face).join(",")
    }

    /// The face set as label sets, independent of vertex indexing.
    pub fn label_faces(&self) -> BTreeSet<Vec<String>> {
        self.all_faces()
            .map(|f| self.labels_of(f).into_iter().map(String::from).collect())
            .collect()
    }

    pub fn facets(&self) -> Vec<Face> {
        let mut out = Vec::new();
        for (d, layer) in self.faces.iter().enumerate() {
            for (k, f) in layer.iter().enumerate() {
                if self.cofaces[d][k].is_empty() {
                    out.push(f.clone());
                }
            }
        }
        out
    }

    /// Facets as label lists; `{∅}` has the single facet `[]` which is dropped.
    pub fn facet_labels(&self) -> Vec<Vec<String>> {
        self.facets()
            .iter()
            .filter(|f| !f.is_empty())
            .map(|f| self.labels_of(f).into_iter().map(String::from).collect())
            .collect()
    }

    pub fn is_pure(&self) -> bool {
        let dims: BTreeSet<isize> = self.facets().iter().map(Face::dim).collect();
        dims.len() <= 1
    }

    /// Number of `(dim F + 1)`-faces containing `face`.
    pub fn degree(&self, face: &Face) -> Result<usize> {
        let k = self
            .face_index(face)
            .ok_or_else(|| Error::UnknownFace(format!("{:?}", face.vertices())))?;
        Ok(self.cofaces[face.len()][k].len())
    }

    /// Indices (into `faces(i + 1)`) of the cofaces of the `k`-th `i`-face.
    pub fn coface_indices(&self, i: isize, k: usize) -> &[usize] {
        &self.cofaces[(i + 1) as usize][k]
    }

    /// Partition of the `j`-faces into walk-connected classes, where two `j`-faces
    /// are adjacent when they share a `(j-1)`-face. Isolated faces form singleton
    /// classes. Classes are listed by their smallest face.
    pub fn path_components(&self, j: isize) -> Vec<Vec<Face>> {
        let top = self.faces(j);
        if j < 0 || top.is_empty() {
            return Vec::new();
        }
        let mut uf = UnionFind::new(top.len());
        for (k, _) in self.faces(j - 1).iter().enumerate() {
            let co = self.coface_indices(j - 1, k);
            for w in co.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut groups: Vec<Vec<Face>> = Vec::new();
        let mut slot: HashMap<usize, usize> = HashMap::new();
        for (k, f) in top.iter().enumerate() {
            let root = uf.find(k);
            let g = *slot.entry(root).or_insert_with(|| {
                groups.push(Vec::new());
                groups.len() - 1
            });
            groups[g].push(f.clone());
        }
        groups
    }

    /// True when all `j`-faces lie in one path component (and at least one exists).
    pub fn is_path_connected(&self, j: isize) -> bool {
        self.path_components(j).len() == 1
    }

    /// The closure of each `(i+1)`-path component, i.e. the subcomplexes whose
    /// incidence graphs are the components of `B_i` carrying an `(i+1)`-face.
    pub fn path_component_complexes(&self, j: isize) -> Vec<Complex> {
        self.path_components(j)
            .iter()
            .map(|comp| self.closure(comp))
            .collect()
    }

    /// The subcomplex of all faces of dimension at most `p`.
    pub fn skeleton(&self, p: isize) -> Complex {
        let set: BTreeSet<Face> = self.all_faces().filter(|f| f.dim() <= p).cloned().collect();
        self.from_face_set(&set)
    }

    /// True when every face of `self` is a face of `other` (compared by labels).
    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.all_faces().all(|f| other.face(&self.labels_of(f)).is_ok())
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let facets: Vec<String> = self
            .facet_labels()
            .iter()
            .map(|x| format!("{{{}}}", x.join(",")))
            .collect();
        write!(f, "[{}]", facets.join(" "))
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
