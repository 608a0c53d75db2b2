//! JSON interchange: complexes, weight files, matrix exports and digests.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};
use crate::laplacian::LaplacianMatrix;
use crate::weights::WeightFunction;

/// `{"facets": [["a", "b"], ["c"]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub facets: Vec<Vec<String>>,
}

impl From<&Complex> for ComplexJson {
    fn from(k: &Complex) -> Self {
        ComplexJson { facets: k.facet_labels() }
    }
}

impl ComplexJson {
    pub fn to_complex(&self) -> Result<Complex> {
        Complex::from_facets(&self.facets)
    }
}

pub fn parse_complex(text: &str) -> Result<Complex> {
    let raw: ComplexJson = serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    raw.to_complex()
}

pub fn complex_to_json(k: &Complex) -> String {
    serde_json::to_string(&ComplexJson::from(k)).expect("plain data serializes")
}

/// One entry of a weights file. `face` is a comma-separated label list; `""` is the empty face.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WeightEntry {
    pub face: String,
    pub w: f64,
}

fn split_face(label: &str) -> Vec<&str> {
    label.split(',').map(str::trim).filter(|s| !s.is_empty()).collect()
}

/// Reads custom weights. Every nonempty face needs an entry; a missing empty
/// face gets the sum of the vertex weights.
pub fn parse_weights(k: &Complex, text: &str) -> Result<WeightFunction> {
    let entries: Vec<WeightEntry> = serde_json::from_str(text).map_err(|e| Error::MalformedInput(e.to_string()))?;
    let mut map: HashMap<Face, f64> = HashMap::new();
    for e in &entries {
        let face = k.face(&split_face(&e.face))?;
        if map.insert(face, e.w).is_some() {
            return Err(Error::MalformedInput(format!("face {:?} weighted twice", e.face)));
        }
    }
    if !map.contains_key(&Face::empty()) && k.num_faces(0) > 0 {
        let mut total = 0.0;
        for v in k.faces(0) {
            total += map.get(v).copied().unwrap_or(f64::NAN);
        }
        if total.is_finite() {
            map.insert(Face::empty(), total);
        }
    }
    WeightFunction::custom(k, &map)
}

/// Matrix with its row/column face labels.
#[derive(Clone, Debug, Serialize)]
pub struct MatrixExport {
    pub dim: isize,
    pub kind: crate::laplacian::LaplacianKind,
    pub regime: crate::weights::Regime,
    pub faces: Vec<String>,
    pub matrix: Vec<Vec<f64>>,
}

pub fn export_matrix(k: &Complex, l: &LaplacianMatrix) -> MatrixExport {
    MatrixExport {
        dim: l.dim,
        kind: l.kind,
        regime: l.regime,
        faces: k.faces(l.dim).iter().map(|f| k.face_label(f)).collect(),
        matrix: l.matrix.to_rows(),
    }
}

/// Short SHA-256 digest of the canonical facet list.
pub fn digest(k: &Complex) -> String {
    let hash = Sha256::digest(complex_to_json(k).as_bytes());
    hex::encode(&hash[..8])
}
