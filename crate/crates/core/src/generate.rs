//! Seeded random complexes.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::complex::Complex;
use crate::error::{Error, Result};

/// Largest vertex count the facet sampler enumerates over.
pub const MAX_RANDOM_VERTICES: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RandomParams {
    pub max_vertices: usize,
    pub max_dim: usize,
    /// Expected number of sampled facets of each size, per vertex.
    pub density: f64,
}

impl Default for RandomParams {
    fn default() -> Self {
        RandomParams { max_vertices: 8, max_dim: 3, density: 0.5 }
    }
}

/// The generator behind every seeded command.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn vertex_label(v: usize) -> String {
    format!("v{v}")
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

/// Lexicographic `k`-subsets of `0..n`.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let Some(pos) = (0..k).rev().find(|&p| cur[p] != p + n - k) else { break };
        cur[pos] += 1;
        for q in pos + 1..k {
            cur[q] = cur[q - 1] + 1;
        }
    }
    out
}

/// Picks `n` uniformly in `1..=max_vertices`, keeps each candidate facet with
/// `s` vertices (`1 <= s <= max_dim + 1`) independently with probability
/// `min(1, density * n / C(n, s))`, and closes downward. Never returns the
/// void complex.
pub fn random_complex<R: Rng>(rng: &mut R, params: &RandomParams) -> Result<Complex> {
    if params.max_vertices == 0 || params.max_vertices > MAX_RANDOM_VERTICES {
        return Err(Error::MalformedInput(format!(
            "max_vertices must lie in 1..={MAX_RANDOM_VERTICES}, got {}",
            params.max_vertices
        )));
    }
    if !(params.density > 0.0 && params.density.is_finite()) {
        return Err(Error::MalformedInput(format!("density must be positive, got {}", params.density)));
    }
    let n = rng.gen_range(1..=params.max_vertices);
    let mut facets: Vec<Vec<String>> = Vec::new();
    for size in 1..=(params.max_dim + 1).min(n) {
        let p = (params.density * n as f64 / binomial(n, size)).min(1.0);
        for s in subsets(n, size) {
            if rng.gen_bool(p) {
                facets.push(s.into_iter().map(vertex_label).collect());
            }
        }
    }
    if facets.is_empty() {
        facets.push(vec![vertex_label(rng.gen_range(0..n))]);
    }
    Complex::from_facets(&facets)
}

/// A pure `dim`-dimensional, `dim`-path connected complex grown from one
/// simplex by attaching `extra` further `dim`-simplices, each along a
/// `(dim-1)`-face of an existing one. The apex is a fresh vertex or, with
/// probability `reuse`, an existing one, which is how cycles arise.
pub fn random_pure_connected<R: Rng>(rng: &mut R, dim: usize, extra: usize, reuse: f64, prefix: &str) -> Complex {
    let label = |v: usize| format!("{prefix}{v}");
    let mut facets: Vec<Vec<usize>> = vec![(0..=dim).collect()];
    let mut next = dim + 1;
    for _ in 0..extra {
        let base = facets.choose(rng).expect("nonempty").clone();
        let drop = rng.gen_range(0..base.len());
        let ridge: Vec<usize> = base.iter().enumerate().filter(|&(j, _)| j != drop).map(|(_, &v)| v).collect();
        let candidates: Vec<usize> = (0..next).filter(|v| !base.contains(v)).collect();
        let apex = if !candidates.is_empty() && rng.gen_bool(reuse) {
            *candidates.choose(rng).expect("nonempty")
        } else {
            next += 1;
            next - 1
        };
        let mut f = ridge;
        f.push(apex);
        f.sort_unstable();
        if !facets.contains(&f) {
            facets.push(f);
        }
    }
    let labelled: Vec<Vec<String>> = facets.iter().map(|f| f.iter().map(|&v| label(v)).collect()).collect();
    Complex::from_facets(&labelled).expect("distinct vertices")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerate_binomially() {
        assert_eq!(subsets(5, 2).len(), 10);
        assert_eq!(subsets(4, 4), vec![vec![0, 1, 2, 3]]);
        assert_eq!(subsets(3, 0), vec![Vec::<usize>::new()]);
        assert!(subsets(2, 3).is_empty());
        assert_eq!(binomial(8, 3), 56.0);
    }

    #[test]
    fn deterministic_under_seed() {
        let p = RandomParams::default();
        let a: Vec<Complex> = {
            let mut rng = ChaCha8Rng::seed_from_u64(1);
            (0..10).map(|_| random_complex(&mut rng, &p).unwrap()).collect()
        };
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for k in &a {
            assert_eq!(&random_complex(&mut rng, &p).unwrap(), k);
        }
    }

    #[test]
    fn respects_caps() {
        let p = RandomParams { max_vertices: 6, max_dim: 2, density: 1.0 };
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            let k = random_complex(&mut rng, &p).unwrap();
            assert!(k.num_vertices() <= 6 && k.num_vertices() >= 1);
            assert!(k.dim() <= 2);
        }
    }

    #[test]
    fn rejects_bad_params() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        assert!(random_complex(&mut rng, &RandomParams { max_vertices: 0, ..Default::default() }).is_err());
        assert!(random_complex(&mut rng, &RandomParams { density: 0.0, ..Default::default() }).is_err());
    }

    #[test]
    fn grown_complexes_are_pure_and_connected() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for dim in 1..=3 {
            for _ in 0..10 {
                let k = random_pure_connected(&mut rng, dim, 4, 0.5, "x");
                assert!(k.is_pure());
                assert_eq!(k.dim(), dim as isize);
                assert!(k.is_path_connected(dim as isize));
            }
        }
    }
}
