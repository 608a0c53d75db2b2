//! Strict `(i+1)`-circuits and their orientability.
//!
//! A circuit is a cyclic sequence of distinct `(i+1)`-faces in which two
//! members share an `i`-face exactly when they are cyclically consecutive.
//! Its sign `s = ∏_j sgn([F_j], ∂[F̄_j]) · sgn([F_j], ∂[F̄_{j+1}])` does not depend
//! on the orientation, and the circuit is orientable iff `s = (-1)^t`.

use std::collections::HashSet;

use serde::Serialize;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::orientation::{boundary_sign, Orientation};

pub const DEFAULT_MAX_LEN: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientability {
    Orientable,
    NonOrientable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    /// `F̄_1, ..., F̄_t`, the `(i+1)`-faces in cyclic order.
    pub top_faces: Vec<Face>,
    /// `F_j = F̄_j ∩ F̄_{j+1}`, indices taken cyclically.
    pub shared_faces: Vec<Face>,
}

impl Circuit {
    pub fn len(&self) -> usize {
        self.top_faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.top_faces.is_empty()
    }

    /// Dimension `i` of the shared faces.
    pub fn dim(&self) -> isize {
        self.top_faces.first().map_or(-1, |f| f.dim() - 1)
    }

    /// Builds a circuit from its top faces, checking the strict intersection condition in `k`.
    pub fn new(k: &Complex, top_faces: Vec<Face>) -> Result<Self> {
        let t = top_faces.len();
        if t < 2 {
            return Err(Error::InvalidCircuit("a circuit needs at least two faces".into()));
        }
        let d = top_faces[0].dim();
        if d < 0 {
            return Err(Error::InvalidCircuit("top faces must be nonempty".into()));
        }
        for f in &top_faces {
            if f.dim() != d {
                return Err(Error::InvalidCircuit("top faces differ in dimension".into()));
            }
            if !k.contains(f) {
                return Err(Error::InvalidCircuit(format!("{{{}}} is not a face", k.face_label(f))));
            }
        }
        if top_faces.iter().collect::<HashSet<_>>().len() != t {
            return Err(Error::InvalidCircuit("repeated top face".into()));
        }
        for a in 0..t {
            for b in a + 1..t {
                let consecutive = b == a + 1 || (a == 0 && b == t - 1);
                if shares_ridge(&top_faces[a], &top_faces[b]) != consecutive {
                    return Err(Error::InvalidCircuit(format!(
                        "faces at positions {a} and {b} violate the circuit intersection condition"
                    )));
                }
            }
        }
        let shared_faces = (0..t).map(|j| top_faces[j].intersection(&top_faces[(j + 1) % t])).collect();
        Ok(Circuit { top_faces, shared_faces })
    }

    /// The orientation-independent sign product.
    pub fn sign(&self, orientation: &Orientation) -> Result<i8> {
        let t = self.len();
        let mut s = 1i8;
        for j in 0..t {
            let f = &self.shared_faces[j];
            s *= boundary_sign(f, &self.top_faces[j], orientation)?;
            s *= boundary_sign(f, &self.top_faces[(j + 1) % t], orientation)?;
        }
        Ok(s)
    }

    /// Orientable with odd length, or non-orientable with even length.
    pub fn is_forbidden(&self, orientation: &Orientation) -> Result<bool> {
        let c = classify_circuit_unchecked(self, orientation)?;
        let odd = self.len() % 2 == 1;
        Ok(match c {
            Orientability::Orientable => odd,
            Orientability::NonOrientable => !odd,
        })
    }
}

/// Two faces of equal dimension `d` share a `(d-1)`-face.
fn shares_ridge(a: &Face, b: &Face) -> bool {
    a.intersection(b).len() + 1 == a.len()
}

fn classify_circuit_unchecked(c: &Circuit, orientation: &Orientation) -> Result<Orientability> {
    let s = c.sign(orientation)?;
    let parity: i8 = if c.len().is_multiple_of(2) { 1 } else { -1 };
    Ok(if s == parity { Orientability::Orientable } else { Orientability::NonOrientable })
}

/// Orientable iff the sign product equals `(-1)^t`. Revalidates the circuit against `k`.
pub fn classify_circuit(k: &Complex, c: &Circuit, orientation: &Orientation) -> Result<Orientability> {
    let checked = Circuit::new(k, c.top_faces.clone())?;
    if checked.shared_faces != c.shared_faces {
        return Err(Error::InvalidCircuit("shared faces do not match the top faces".into()));
    }
    classify_circuit_unchecked(&checked, orientation)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircuitEnumeration {
    pub circuits: Vec<Circuit>,
    /// False when some path could have been extended past `max_len`.
    pub complete: bool,
}

/// All strict circuits of `(i+1)`-faces up to rotation and reflection, of length at most `max_len`.
pub fn enumerate_circuits(k: &Complex, i: isize, max_len: usize) -> CircuitEnumeration {
    let tops = k.faces(i + 1);
    let n = tops.len();
    // ridge-adjacency between (i+1)-faces
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for r in 0..k.num_faces(i) {
        let co = k.coface_indices(i, r);
        for (x, &a) in co.iter().enumerate() {
            for &b in &co[x + 1..] {
                adj[a].push(b);
                adj[b].push(a);
            }
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    let adjacent = |a: usize, b: usize| adj[a].binary_search(&b).is_ok();

    let mut found: Vec<Vec<usize>> = Vec::new();
    let mut complete = true;
    let mut path: Vec<usize> = Vec::new();
    let mut on_path = vec![false; n];

    // DFS over paths whose first element is the minimum of the circuit.
    fn extend(
        path: &mut Vec<usize>,
        on_path: &mut [bool],
        adj: &[Vec<usize>],
        adjacent: &dyn Fn(usize, usize) -> bool,
        max_len: usize,
        found: &mut Vec<Vec<usize>>,
        complete: &mut bool,
    ) {
        let start = path[0];
        let last = *path.last().expect("nonempty path");
        for &x in &adj[last] {
            if x <= start || on_path[x] {
                continue;
            }
            // x may not touch any earlier member except its predecessor and, when closing, the start.
            let p = path.len();
            let interior_clash = p > 2 && path[1..p - 1].iter().any(|&y| adjacent(x, y));
            if interior_clash {
                continue;
            }
            if path.len() == max_len {
                *complete = false;
                continue;
            }
            path.push(x);
            on_path[x] = true;
            if p == 1 {
                // t = 2: every ridge-adjacent pair, found once from its smaller member.
                found.push(path.clone());
                extend(path, on_path, adj, adjacent, max_len, found, complete);
            } else if adjacent(x, start) {
                // Reflection deduplication: keep the direction with the smaller second element.
                if path[1] < path[path.len() - 1] {
                    found.push(path.clone());
                }
            } else {
                extend(path, on_path, adj, adjacent, max_len, found, complete);
            }
            on_path[x] = false;
            path.pop();
        }
    }

    for s in 0..n {
        path.push(s);
        on_path[s] = true;
        extend(&mut path, &mut on_path, &adj, &adjacent, max_len, &mut found, &mut complete);
        on_path[s] = false;
        path.pop();
    }

    let circuits = found
        .into_iter()
        .map(|idx| {
            let faces = idx.iter().map(|&x| tops[x].clone()).collect();
            Circuit::new(k, faces).expect("enumerated circuits satisfy the strict condition")
        })
        .collect();
    CircuitEnumeration { circuits, complete }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForbiddenCircuitReport {
    pub forbidden: bool,
    pub complete: bool,
    pub witness: Option<Circuit>,
}

/// Whether some circuit of length at most `max_len` is orientable of odd
/// length or non-orientable of even length.
pub fn has_forbidden_circuit(k: &Complex, i: isize, max_len: usize) -> Result<ForbiddenCircuitReport> {
    let s = Orientation::canonical();
    let e = enumerate_circuits(k, i, max_len);
    for c in e.circuits {
        if c.is_forbidden(&s)? {
            return Ok(ForbiddenCircuitReport { forbidden: true, complete: e.complete, witness: Some(c) });
        }
    }
    Ok(ForbiddenCircuitReport { forbidden: false, complete: e.complete, witness: None })
}
