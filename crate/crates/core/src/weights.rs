//! Face weights: the uniform regime (combinatorial Laplacian), the normalized
//! regime (facets weigh 1 and every other face weighs the sum of its
//! cofaces), and validated custom weights.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::complex::{Complex, Face};
use crate::error::{Error, Result};

/// Relative tolerance of the normalizing-condition check.
pub const NORMALIZING_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Regime {
    Uniform,
    Normalized,
    Custom,
}

/// Strictly positive weight per face, stored by dimension in `faces(d)` order.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightFunction {
    regime: Regime,
    exact: Vec<Vec<BigRational>>,
    values: Vec<Vec<f64>>,
}

impl WeightFunction {
    fn from_exact(regime: Regime, exact: Vec<Vec<BigRational>>) -> Self {
        let values = exact
            .iter()
            .map(|layer| layer.iter().map(|w| w.to_f64().unwrap_or(f64::NAN)).collect())
            .collect();
        WeightFunction { regime, exact, values }
    }

    /// Custom weights for every face of `k`, including the empty face.
    pub fn custom(k: &Complex, weights: &HashMap<Face, f64>) -> Result<Self> {
        let mut exact = Vec::new();
        for d in -1..=k.dim() {
            let mut layer = Vec::new();
            for f in k.faces(d) {
                let w = *weights
                    .get(f)
                    .ok_or_else(|| Error::MalformedInput(format!("no weight for face {{{}}}", k.face_label(f))))?;
                if !(w > 0.0 && w.is_finite()) {
                    return Err(Error::NonPositiveWeight { face: k.face_label(f), value: w });
                }
                layer.push(BigRational::from_float(w).expect("finite weight"));
            }
            exact.push(layer);
        }
        Ok(Self::from_exact(Regime::Custom, exact))
    }

    pub fn regime(&self) -> Regime {
        self.regime
    }

    /// Weight of the `idx`-th `d`-face.
    pub fn value(&self, d: isize, idx: usize) -> f64 {
        self.values[(d + 1) as usize][idx]
    }

    pub fn exact(&self, d: isize, idx: usize) -> &BigRational {
        &self.exact[(d + 1) as usize][idx]
    }

    pub fn layer(&self, d: isize) -> &[f64] {
        self.values.get((d + 1) as usize).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn get(&self, k: &Complex, face: &Face) -> Option<f64> {
        k.face_index(face).map(|i| self.value(face.dim(), i))
    }

    fn matches(&self, k: &Complex) -> bool {
        self.values.len() == (k.dim() + 2) as usize
            && (-1..=k.dim()).all(|d| self.layer(d).len() == k.num_faces(d))
    }

    /// Relabels validated weights as normalized; fails if the normalizing
    /// condition does not hold.
    pub fn into_normalized(self, k: &Complex) -> Result<Self> {
        if validate_weights(k, &self)? {
            Ok(WeightFunction { regime: Regime::Normalized, ..self })
        } else {
            Err(Error::NotNormalized)
        }
    }
}

/// Facets weigh 1; every other face weighs the sum of its cofaces' weights.
/// Computed top-down in exact integer arithmetic.
pub fn normalized_weights(k: &Complex) -> WeightFunction {
    let top = k.dim();
    let mut exact: Vec<Vec<BigRational>> = vec![Vec::new(); (top + 2) as usize];
    for d in (-1..=top).rev() {
        let layer: Vec<BigRational> = (0..k.num_faces(d))
            .map(|idx| {
                let co = k.coface_indices(d, idx);
                if co.is_empty() {
                    BigRational::one()
                } else {
                    let above = &exact[(d + 2) as usize];
                    co.iter().fold(BigRational::zero(), |acc, &c| acc + &above[c])
                }
            })
            .collect();
        exact[(d + 1) as usize] = layer;
    }
    WeightFunction::from_exact(Regime::Normalized, exact)
}

/// Weight 1 on every face.
pub fn uniform_weights(k: &Complex) -> WeightFunction {
    let exact = (-1..=k.dim())
        .map(|d| vec![BigRational::from_integer(BigInt::one()); k.num_faces(d)])
        .collect();
    WeightFunction::from_exact(Regime::Uniform, exact)
}

fn close(a: f64, b: f64) -> bool {
    (a - b).abs() <= NORMALIZING_TOL * a.abs().max(b.abs())
}

/// Whether `w` satisfies the normalizing condition on `k`: facets weigh 1 and
/// each non-facet weighs the sum of its cofaces, up to relative tolerance.
pub fn validate_weights(k: &Complex, w: &WeightFunction) -> Result<bool> {
    if !w.matches(k) {
        return Err(Error::MalformedInput("weight function does not match the complex".into()));
    }
    for d in -1..=k.dim() {
        for (idx, f) in k.faces(d).iter().enumerate() {
            let v = w.value(d, idx);
            if !(v > 0.0) {
                return Err(Error::NonPositiveWeight { face: k.face_label(f), value: v });
            }
        }
    }
    for d in -1..=k.dim() {
        for idx in 0..k.num_faces(d) {
            let co = k.coface_indices(d, idx);
            let expected = if co.is_empty() { 1.0 } else { co.iter().map(|&c| w.value(d + 1, c)).sum() };
            if !close(w.value(d, idx), expected) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cx(facets: &[&[&str]]) -> Complex {
        let v: Vec<Vec<&str>> = facets.iter().map(|f| f.to_vec()).collect();
        Complex::from_facets(&v).unwrap()
    }

    #[test]
    fn full_triangle_weights() {
        let k = cx(&[&["a", "b", "c"]]);
        let w = normalized_weights(&k);
        assert_eq!(w.layer(2), &[1.0]);
        assert_eq!(w.layer(1), &[1.0, 1.0, 1.0]);
        assert_eq!(w.layer(0), &[2.0, 2.0, 2.0]);
        assert_eq!(w.layer(-1), &[6.0]);
        assert!(validate_weights(&k, &w).unwrap());
    }

    #[test]
    fn lone_edge_weights() {
        let k = cx(&[&["a", "b"]]);
        let w = normalized_weights(&k);
        assert_eq!(w.layer(1), &[1.0]);
        assert_eq!(w.layer(0), &[1.0, 1.0]);
        assert_eq!(w.layer(-1), &[2.0]);
    }

    #[test]
    fn facets_weigh_one_in_mixed_complex() {
        let k = cx(&[&["a", "b", "c"], &["c", "d"], &["e"]]);
        let w = normalized_weights(&k);
        for f in k.facets() {
            assert_eq!(w.get(&k, &f), Some(1.0));
        }
        // c lies in ac, bc (weight 1 each) and cd (facet).
        assert_eq!(w.get(&k, &k.face(&["c"]).unwrap()), Some(3.0));
        assert!(validate_weights(&k, &w).unwrap());
    }

    #[test]
    fn uniform_weights_fail_the_normalizing_condition() {
        let k = cx(&[&["a", "b", "c"]]);
        let u = uniform_weights(&k);
        assert_eq!(u.regime(), Regime::Uniform);
        assert!(!validate_weights(&k, &u).unwrap());
        assert!(matches!(u.into_normalized(&k), Err(Error::NotNormalized)));
    }

    #[test]
    fn perturbed_and_nonpositive_custom_weights() {
        let k = cx(&[&["a", "b"]]);
        let w = normalized_weights(&k);
        let mut map: HashMap<Face, f64> =
            k.all_faces().map(|f| (f.clone(), w.get(&k, f).unwrap())).collect();
        let ok = WeightFunction::custom(&k, &map).unwrap();
        assert!(validate_weights(&k, &ok).unwrap());
        assert_eq!(ok.into_normalized(&k).unwrap().regime(), Regime::Normalized);

        map.insert(k.face(&["a"]).unwrap(), 1.0 + 1e-9);
        assert!(!validate_weights(&k, &WeightFunction::custom(&k, &map).unwrap()).unwrap());

        map.insert(k.face(&["a"]).unwrap(), 0.0);
        assert!(matches!(WeightFunction::custom(&k, &map), Err(Error::NonPositiveWeight { .. })));

        map.remove(&k.face(&["a"]).unwrap());
        assert!(matches!(WeightFunction::custom(&k, &map), Err(Error::MalformedInput(_))));
    }
}
