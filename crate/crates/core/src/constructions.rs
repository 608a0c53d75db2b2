//! Complex-building operations: wedge sums, Cartesian products, motif
//! duplication and the iterated-wedge family of simplices.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::orientation::Orientation;
use crate::signed_graph::SignedIncidenceGraph;

/// Vertex bijection `φ: F_1 → F_2` between two faces of equal dimension.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceBijection {
    pairs: BTreeMap<String, String>,
}

impl FaceBijection {
    pub fn new(pairs: BTreeMap<String, String>) -> Self {
        FaceBijection { pairs }
    }

    /// Pairs the sorted vertices of `f1` with the sorted vertices of `f2`.
    pub fn in_order<S: AsRef<str>>(f1: &[S], f2: &[S]) -> Result<Self> {
        if f1.len() != f2.len() {
            return Err(Error::InvalidBijection(format!("faces have {} and {} vertices", f1.len(), f2.len())));
        }
        let a: BTreeSet<&str> = f1.iter().map(AsRef::as_ref).collect();
        let b: BTreeSet<&str> = f2.iter().map(AsRef::as_ref).collect();
        Ok(FaceBijection { pairs: a.into_iter().zip(b).map(|(x, y)| (x.into(), y.into())).collect() })
    }

    /// Parses `"a:x,b:y"`.
    pub fn parse(spec: &str) -> Result<Self> {
        let mut pairs = BTreeMap::new();
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (from, to) = item
                .split_once(':')
                .ok_or_else(|| Error::InvalidBijection(format!("expected from:to, got {item:?}")))?;
            if pairs.insert(from.trim().to_string(), to.trim().to_string()).is_some() {
                return Err(Error::InvalidBijection(format!("{from:?} mapped twice")));
            }
        }
        Ok(FaceBijection { pairs })
    }

    pub fn pairs(&self) -> &BTreeMap<String, String> {
        &self.pairs
    }

    fn check<S: AsRef<str>>(&self, f1: &[S], f2: &[S]) -> Result<()> {
        let dom: BTreeSet<&str> = self.pairs.keys().map(String::as_str).collect();
        let img: BTreeSet<&str> = self.pairs.values().map(String::as_str).collect();
        let a: BTreeSet<&str> = f1.iter().map(AsRef::as_ref).collect();
        let b: BTreeSet<&str> = f2.iter().map(AsRef::as_ref).collect();
        if dom != a {
            return Err(Error::InvalidBijection("domain is not the first face".into()));
        }
        if img != b || img.len() != self.pairs.len() {
            return Err(Error::InvalidBijection("map is not onto the second face".into()));
        }
        Ok(())
    }
}

/// Relabels vertices through `map`; unmapped labels are kept.
pub fn relabel(k: &Complex, map: &HashMap<String, String>) -> Complex {
    Complex::from_label_faces(k.label_faces().into_iter().map(|f| {
        f.into_iter().map(|v| map.get(&v).cloned().unwrap_or(v)).collect::<Vec<_>>()
    }))
    .expect("relabelled faces are well formed")
}

/// A fresh label derived from `base` that avoids every label in `taken`.
fn fresh_label(base: &str, suffix: &str, taken: &BTreeSet<String>) -> String {
    let mut out = format!("{base}{suffix}");
    while taken.contains(&out) {
        out.push_str(suffix);
    }
    out
}

/// `K_1 ∨_k K_2`: the union with each `v ∈ F_1` identified with `φ(v) ∈ F_2`.
/// The result keeps `K_1`'s labels on the glued face.
pub fn wedge_sum<S: AsRef<str>>(k1: &Complex, k2: &Complex, f1: &[S], f2: &[S], phi: &FaceBijection) -> Result<Complex> {
    let face1 = k1.face(f1)?;
    let face2 = k2.face(f2)?;
    if face1.dim() != face2.dim() {
        return Err(Error::DimensionMismatch { expected: face1.dim(), found: face2.dim() });
    }
    let v1: BTreeSet<&String> = k1.vertex_labels().iter().collect();
    if let Some(shared) = k2.vertex_labels().iter().find(|v| v1.contains(v)) {
        return Err(Error::OverlappingVertices(shared.clone()));
    }
    phi.check(f1, f2)?;
    let inverse: HashMap<String, String> = phi.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
    let renamed = relabel(k2, &inverse);
    let out = Complex::from_label_faces(k1.label_faces().into_iter().chain(renamed.label_faces()))?;
    if !(k1.is_subcomplex_of(&out) && renamed.is_subcomplex_of(&out)) {
        return Err(Error::InternalConsistency("wedge sum lost a face".into()));
    }
    Ok(out)
}

/// Like [`wedge_sum`], but first renames any of `K_2`'s labels that collide
/// with `K_1` by appending `~`. `f2` and `φ` refer to `K_2`'s original labels.
pub fn wedge_sum_renaming<S: AsRef<str>>(
    k1: &Complex,
    k2: &Complex,
    f1: &[S],
    f2: &[S],
    phi: &FaceBijection,
) -> Result<Complex> {
    let mut taken: BTreeSet<String> = k1.vertex_labels().iter().cloned().collect();
    taken.extend(k2.vertex_labels().iter().cloned());
    let v1: BTreeSet<&String> = k1.vertex_labels().iter().collect();
    let mut rename = HashMap::new();
    for v in k2.vertex_labels() {
        if v1.contains(v) {
            let fresh = fresh_label(v, "~", &taken);
            taken.insert(fresh.clone());
            rename.insert(v.clone(), fresh);
        }
    }
    let lookup = |v: &str| rename.get(v).cloned().unwrap_or_else(|| v.to_string());
    let k2r = relabel(k2, &rename);
    let f2r: Vec<String> = f2.iter().map(|v| lookup(v.as_ref())).collect();
    let phir = FaceBijection::new(phi.pairs.iter().map(|(a, b)| (a.clone(), lookup(b))).collect());
    let f1s: Vec<String> = f1.iter().map(|v| v.as_ref().to_string()).collect();
    wedge_sum(k1, &k2r, &f1s, &f2r, &phir)
}

/// Vertex label of `(u, v)` in a Cartesian product.
pub fn product_label(u: &str, v: &str) -> String {
    format!("({u},{v})")
}

/// `K_1 □ K_2`: faces `F × v` for `F ∈ K_1, v ∈ V(K_2)` and `u × F'` for `u ∈ V(K_1), F' ∈ K_2`.
pub fn cartesian_product(k1: &Complex, k2: &Complex) -> Complex {
    let mut gens: Vec<Vec<String>> = Vec::new();
    for f in k1.facet_labels() {
        for v in k2.vertex_labels() {
            gens.push(f.iter().map(|u| product_label(u, v)).collect());
        }
    }
    for u in k1.vertex_labels() {
        for f in k2.facet_labels() {
            gens.push(f.iter().map(|v| product_label(u, v)).collect());
        }
    }
    Complex::from_label_faces(gens).expect("product faces are well formed")
}

/// Parity union-find used to compare two signings of one graph up to switching.
struct ParityUnionFind {
    parent: Vec<usize>,
    parity: Vec<i8>,
}

impl ParityUnionFind {
    fn new(n: usize) -> Self {
        ParityUnionFind { parent: (0..n).collect(), parity: vec![1; n] }
    }

    fn find(&mut self, x: usize) -> (usize, i8) {
        if self.parent[x] == x {
            return (x, 1);
        }
        let (root, p) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.parity[x] *= p;
        (root, self.parity[x])
    }

    /// Records `s(a) s(b) = sign`; false on contradiction.
    fn relate(&mut self, a: usize, b: usize, sign: i8) -> bool {
        let (ra, pa) = self.find(a);
        let (rb, pb) = self.find(b);
        if ra == rb {
            return pa * pb == sign;
        }
        self.parent[ra] = rb;
        self.parity[ra] = pa * pb * sign;
        true
    }
}

/// Checks that `B_i(K_1 □ K_2)` is the disjoint union of `|V(K_2)|` copies of
/// `B_i(K_1)` (via `F ↦ F × v`) and `|V(K_1)|` copies of `B_i(K_2)` (via
/// `F' ↦ u × F'`), with signs agreeing up to switching. Meaningful for `i >= 1`.
pub fn product_incidence_decomposes(k1: &Complex, k2: &Complex, i: isize) -> Result<bool> {
    let prod = cartesian_product(k1, k2);
    let s = Orientation::canonical();
    let g = SignedIncidenceGraph::new(&prod, i, &s)?;
    let g1 = SignedIncidenceGraph::new(k1, i, &s)?;
    let g2 = SignedIncidenceGraph::new(k2, i, &s)?;

    let expected_nodes = k2.num_vertices() * g1.num_nodes() + k1.num_vertices() * g2.num_nodes();
    let expected_edges = k2.num_vertices() * g1.edges().len() + k1.num_vertices() * g2.edges().len();
    if expected_nodes != g.num_nodes() || expected_edges != g.edges().len() {
        return Ok(false);
    }

    let mut covered = vec![false; g.num_nodes()];
    let mut puf = ParityUnionFind::new(g.num_nodes());
    let mut embed = |factor: &Complex, fg: &SignedIncidenceGraph, lift: &dyn Fn(&str) -> String| -> Result<bool> {
        let mut image = vec![usize::MAX; fg.num_nodes()];
        for (n, slot) in image.iter_mut().enumerate() {
            let labels: Vec<String> = factor.labels_of(fg.node_face(n)).into_iter().map(lift).collect();
            let Ok(face) = prod.face(&labels) else { return Ok(false) };
            let Some(m) = g.node_of(&face) else { return Ok(false) };
            if covered[m] {
                return Ok(false);
            }
            covered[m] = true;
            *slot = m;
        }
        for e in fg.edges() {
            let (a, b) = (image[e.lower], image[e.upper + fg.lower_faces().len()]);
            let Some(sign) = g.edge_sign(a, b) else { return Ok(false) };
            if !puf.relate(a, b, sign * e.sign) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    for v in k2.vertex_labels() {
        if !embed(k1, &g1, &|u| product_label(u, v))? {
            return Ok(false);
        }
    }
    for u in k1.vertex_labels() {
        if !embed(k2, &g2, &|v| product_label(u, v))? {
            return Ok(false);
        }
    }
    Ok(covered.into_iter().all(|c| c))
}

/// Result of duplicating an `i`-motif `Σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct MotifDuplication {
    pub complex: Complex,
    /// `v ↦ v'` on `V(Σ)`.
    pub primes: BTreeMap<String, String>,
    /// `V(Lk Σ)`.
    pub link_vertices: BTreeSet<String>,
}

/// `K^Σ`: adds `{v'_.., u_..}` for every face `{v_.., u_..} ∈ K` with the `v`s
/// in `V(Σ)` (at least one) and the `u`s in `V(Lk Σ)`.
pub fn duplicate_motif(k: &Complex, sigma: &Complex, i: isize) -> Result<MotifDuplication> {
    if !k.is_i_motif(sigma, i)? {
        return Err(Error::NotAMotif { dim: i, reason: "two-face condition or link dimension fails".into() });
    }
    let emb = k.embed(sigma)?;
    let sigma_vertices = Complex::vertex_support(&emb);
    let link = k.link(&emb);
    let link_vertices = Complex::vertex_support(&link);

    let mut taken: BTreeSet<String> = k.vertex_labels().iter().cloned().collect();
    let mut primes = BTreeMap::new();
    for &v in &sigma_vertices {
        let label = &k.vertex_labels()[v];
        let p = fresh_label(label, "'", &taken);
        taken.insert(p.clone());
        primes.insert(label.clone(), p);
    }

    let mut gens: Vec<Vec<String>> = k.label_faces().into_iter().collect();
    for f in k.all_faces() {
        let (mine, rest): (Vec<usize>, Vec<usize>) = f.vertices().iter().partition(|v| sigma_vertices.contains(v));
        if mine.is_empty() || !rest.iter().all(|v| link_vertices.contains(v)) {
            continue;
        }
        let mut g: Vec<String> = mine.iter().map(|&v| primes[&k.vertex_labels()[v]].clone()).collect();
        g.extend(rest.iter().map(|&v| k.vertex_labels()[v].clone()));
        gens.push(g);
    }
    let complex = Complex::from_label_faces(gens)?;
    let link_vertices = link_vertices.iter().map(|&v| k.vertex_labels()[v].clone()).collect();
    Ok(MotifDuplication { complex, primes, link_vertices })
}

impl MotifDuplication {
    /// `K_Σ' = (K \ St Σ) ∪ St Σ'` inside `K^Σ`.
    pub fn embedded_copy(&self, k: &Complex) -> Complex {
        let big = &self.complex;
        let sigma_labels: BTreeSet<&str> = self.primes.keys().map(String::as_str).collect();
        let primed: BTreeSet<&str> = self.primes.values().map(String::as_str).collect();
        let keep: BTreeSet<Face> = big
            .all_faces()
            .filter(|f| {
                let labels = big.labels_of(f);
                let outside_star_sigma = labels.iter().all(|l| !sigma_labels.contains(l));
                let in_star_primed = labels.iter().any(|l| primed.contains(l));
                let in_k = k.face(&labels).is_ok();
                (in_k && outside_star_sigma) || in_star_primed
            })
            .cloned()
            .collect();
        Complex::from_label_faces(keep.iter().map(|f| big.labels_of(f).into_iter().map(String::from).collect()))
            .expect("subset of a complex")
    }

    /// Whether `K_Σ'` is the image of `K` under `v ↦ v'` on `V(Σ)` and the identity elsewhere.
    pub fn copy_is_isomorphic(&self, k: &Complex) -> bool {
        let map: HashMap<String, String> = self.primes.iter().map(|(a, b)| (a.clone(), b.clone())).collect();
        relabel(k, &map).label_faces() == self.embedded_copy(k).label_faces()
    }
}

/// `K_0` is an `(i+1)`-simplex and `K_p = K_{p-1} ∨_i K_0`, glued along the
/// lexicographically first `i`-face of the most recently added simplex with
/// the order-preserving bijection.
pub fn wedge_family(i: usize, p: usize) -> Complex {
    // Copy q is labelled with index p - q so that newer vertices sort first
    // and consecutive simplices are glued along fresh faces.
    let simplex = |q: usize| -> Vec<String> { (0..=i + 1).map(|v| format!("s{:03}_{v}", p - q)).collect() };
    let mut k = Complex::from_facets(&[simplex(0)]).expect("simplex");
    let mut last: Vec<String> = simplex(0);
    for q in 1..=p {
        let copy_labels = simplex(q);
        let copy = Complex::from_facets(std::slice::from_ref(&copy_labels)).expect("simplex");
        let mut last_sorted = last.clone();
        last_sorted.sort();
        let f1: Vec<String> = last_sorted[..=i].to_vec();
        let f2: Vec<String> = copy_labels[..=i].to_vec();
        let phi = FaceBijection::in_order(&f1, &f2).expect("equal sizes");
        k = wedge_sum(&k, &copy, &f1, &f2, &phi).expect("disjoint labels");
        last = f1.into_iter().chain(std::iter::once(copy_labels[i + 1].clone())).collect();
    }
    k
}
