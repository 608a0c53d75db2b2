//! Randomized cross-checks of the top-eigenvalue characterization and the
//! construction results, one report per (instance, dimension).

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::circuits::{has_forbidden_circuit, DEFAULT_MAX_LEN};
use crate::complex::Complex;
use crate::constructions::{
    cartesian_product, duplicate_motif, product_incidence_decomposes, wedge_sum, FaceBijection,
};
use crate::error::{Error, Result};
use crate::generate::{random_complex, random_pure_connected, RandomParams};
use crate::io::{digest, ComplexJson};
use crate::orientation::Orientation;
use crate::signed_graph::balanced_components;
use crate::spectra::{up_spectrum, MULTIPLICITY_TOL, TOP_TOL};
use crate::weights::normalized_weights;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Theorem {
    /// Top eigenvalue attained iff some path component is balanced.
    T31,
    /// Multiplicity of the top eigenvalue equals the number of balanced components.
    C32,
    /// Forbidden circuits iff unbalanced, on connected instances.
    Circuits,
    /// Wedge sums.
    T42,
    /// Cartesian products.
    T44,
    /// Motif duplication.
    T49,
}

impl Theorem {
    pub const ALL: [Theorem; 6] =
        [Theorem::T31, Theorem::C32, Theorem::Circuits, Theorem::T42, Theorem::T44, Theorem::T49];

    pub fn name(self) -> &'static str {
        match self {
            Theorem::T31 => "t31",
            Theorem::C32 => "c32",
            Theorem::Circuits => "circuits",
            Theorem::T42 => "t42",
            Theorem::T44 => "t44",
            Theorem::T49 => "t49",
        }
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Theorem {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Theorem::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::MalformedInput(format!("unknown theorem {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VerifyConfig {
    pub theorem: Theorem,
    pub trials: usize,
    pub seed: u64,
    pub max_vertices: usize,
    pub max_dim: usize,
    pub density: f64,
    pub max_len: usize,
    pub tol: f64,
}

impl VerifyConfig {
    pub fn new(theorem: Theorem) -> Self {
        VerifyConfig {
            theorem,
            trials: 200,
            seed: 7,
            max_vertices: 8,
            max_dim: 3,
            density: 0.5,
            max_len: DEFAULT_MAX_LEN,
            tol: TOP_TOL,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Agree,
    Disagree,
    /// Circuit enumeration hit the length cap before it was exhaustive.
    Truncated,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub theorem: Theorem,
    pub trial: usize,
    pub digest: String,
    pub dim: isize,
    pub lambda_max: f64,
    pub top_multiplicity: usize,
    /// `(i+1)`-path components, i.e. components of `B_i` with an upper vertex.
    pub components: usize,
    pub balanced_components: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub forbidden_circuit: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub circuits_complete: Option<bool>,
    /// Top-eigenvalue outcome predicted from the factors (constructions only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub predicted_top: Option<bool>,
    /// Connectivity and structural claims of a construction.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub structure_ok: Option<bool>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complex: Option<ComplexJson>,
}

impl VerificationReport {
    pub fn has_top(&self, tol: f64) -> bool {
        (self.lambda_max - (self.dim + 2) as f64).abs() <= tol
    }

    /// Recomputes the verdict from the stored fields.
    pub fn derive_verdict(&self, tol: f64) -> Verdict {
        let top = self.has_top(tol);
        let agree = match self.theorem {
            Theorem::T31 => top == (self.balanced_components > 0),
            Theorem::C32 => self.top_multiplicity == self.balanced_components,
            Theorem::Circuits => {
                if self.circuits_complete == Some(false) {
                    return Verdict::Truncated;
                }
                self.forbidden_circuit == Some(self.balanced_components < self.components)
            }
            Theorem::T42 | Theorem::T44 | Theorem::T49 => {
                self.predicted_top == Some(top) && self.structure_ok == Some(true)
            }
        };
        if agree {
            Verdict::Agree
        } else {
            Verdict::Disagree
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub reports: usize,
    pub agreements: usize,
    pub disagreements: usize,
    pub truncated: usize,
}

impl VerificationSummary {
    pub fn of(reports: &[VerificationReport]) -> Self {
        let mut s = VerificationSummary { reports: reports.len(), ..Default::default() };
        for r in reports {
            match r.verdict {
                Verdict::Agree => s.agreements += 1,
                Verdict::Disagree => s.disagreements += 1,
                Verdict::Truncated => s.truncated += 1,
            }
        }
        s
    }
}

/// Spectral and balance measurements of `B_i(K)`.
struct Measure {
    lambda_max: f64,
    multiplicity: usize,
    components: usize,
    balanced: usize,
}

fn measure(k: &Complex, i: isize) -> Result<Measure> {
    let w = normalized_weights(k);
    let s = up_spectrum(k, i, &w)?;
    let comps = balanced_components(k, i, &Orientation::canonical())?;
    Ok(Measure {
        lambda_max: s.max().unwrap_or(0.0),
        multiplicity: s.count_near((i + 2) as f64, MULTIPLICITY_TOL),
        components: comps.len(),
        balanced: comps.iter().filter(|c| c.balanced).count(),
    })
}

fn is_balanced(k: &Complex, i: isize) -> Result<bool> {
    Ok(balanced_components(k, i, &Orientation::canonical())?.iter().all(|c| c.balanced))
}

struct Draft {
    complex: Complex,
    dim: isize,
    forbidden: Option<(bool, bool)>,
    predicted_top: Option<bool>,
    structure_ok: Option<bool>,
}

impl Draft {
    fn plain(complex: Complex, dim: isize) -> Self {
        Draft { complex, dim, forbidden: None, predicted_top: None, structure_ok: None }
    }
}

fn finish(cfg: &VerifyConfig, trial: usize, d: Draft) -> Result<VerificationReport> {
    let m = measure(&d.complex, d.dim)?;
    let mut r = VerificationReport {
        theorem: cfg.theorem,
        trial,
        digest: digest(&d.complex),
        dim: d.dim,
        lambda_max: m.lambda_max,
        top_multiplicity: m.multiplicity,
        components: m.components,
        balanced_components: m.balanced,
        forbidden_circuit: d.forbidden.map(|f| f.0),
        circuits_complete: d.forbidden.map(|f| f.1),
        predicted_top: d.predicted_top,
        structure_ok: d.structure_ok,
        verdict: Verdict::Agree,
        complex: None,
    };
    r.verdict = r.derive_verdict(cfg.tol);
    if r.verdict != Verdict::Agree {
        r.complex = Some(ComplexJson::from(&d.complex));
    }
    Ok(r)
}

fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

fn random_params(cfg: &VerifyConfig) -> RandomParams {
    RandomParams { max_vertices: cfg.max_vertices, max_dim: cfg.max_dim, density: cfg.density }
}

/// The random complex used by trial `trial` of the spectral suites.
pub fn corpus_complex(cfg: &VerifyConfig, trial: usize) -> Result<Complex> {
    random_complex(&mut trial_rng(cfg.seed, trial), &random_params(cfg))
}

fn spectral_drafts(cfg: &VerifyConfig, trial: usize) -> Result<Vec<Draft>> {
    let k = corpus_complex(cfg, trial)?;
    Ok((-1..k.dim()).map(|i| Draft::plain(k.clone(), i)).collect())
}

fn circuit_drafts(cfg: &VerifyConfig, trial: usize) -> Result<Vec<Draft>> {
    let mut rng = trial_rng(cfg.seed, trial);
    let mut candidates: Vec<(Complex, isize)> = Vec::new();
    let k = random_complex(&mut rng, &random_params(cfg))?;
    for i in 0..k.dim() {
        if k.is_path_connected(i + 1) && k.num_faces(i + 1) <= 6 {
            candidates.push((k.clone(), i));
        }
    }
    let dim = rng.gen_range(1..=cfg.max_dim.max(1));
    let extra_grown = rng.gen_range(0..=5);
    let grown = random_pure_connected(&mut rng, dim, extra_grown, 0.6, "v");
    if grown.num_faces(dim as isize) <= 6 {
        candidates.push((grown, dim as isize - 1));
    }
    candidates
        .into_iter()
        .map(|(k, i)| {
            let f = has_forbidden_circuit(&k, i, cfg.max_len)?;
            Ok(Draft { forbidden: Some((f.forbidden, f.complete)), ..Draft::plain(k, i) })
        })
        .collect()
}

fn wedge_draft(cfg: &VerifyConfig, trial: usize) -> Result<Draft> {
    let mut rng = trial_rng(cfg.seed, trial);
    let top = cfg.max_dim.max(1);
    // Alternate the two regimes: i in {k-1, k}, then i >= k + 1.
    let (k, i) = if trial.is_multiple_of(2) {
        let i = rng.gen_range(0..top);
        (rng.gen_range(i..=i + 1), i)
    } else {
        let i = rng.gen_range(1..top.max(2));
        (rng.gen_range(0..i), i)
    };
    let extra_k1 = rng.gen_range(0..=3);
    let k1 = random_pure_connected(&mut rng, i + 1, extra_k1, 0.5, "a");
    let extra_k2 = rng.gen_range(0..=3);
    let k2 = random_pure_connected(&mut rng, i + 1, extra_k2, 0.5, "b");
    let f1 = k1.faces(k as isize).choose(&mut rng).expect("k-faces exist").clone();
    let f2 = k2.faces(k as isize).choose(&mut rng).expect("k-faces exist").clone();
    let (l1, l2) = (k1.labels_of(&f1), k2.labels_of(&f2));
    let mut image = l2.clone();
    image.shuffle(&mut rng);
    let phi = FaceBijection::new(l1.iter().zip(&image).map(|(a, b)| (a.to_string(), b.to_string())).collect());
    let w = wedge_sum(&k1, &k2, &l1, &l2, &phi)?;
    let i = i as isize;
    let (b1, b2) = (is_balanced(&k1, i)?, is_balanced(&k2, i)?);
    let connected = w.is_path_connected(i + 1);
    let (predicted, structure) = if i <= k as isize {
        (b1 && b2, connected && is_balanced(&w, i)? == (b1 && b2))
    } else {
        (b1 || b2, !connected && is_balanced(&w, i)? == (b1 && b2))
    };
    Ok(Draft { predicted_top: Some(predicted), structure_ok: Some(structure), ..Draft::plain(w, i) })
}

fn product_draft(cfg: &VerifyConfig, trial: usize) -> Result<Draft> {
    let mut rng = trial_rng(cfg.seed, trial);
    let i: isize = if trial.is_multiple_of(2) { 0 } else { 1 };
    let (extra, reuse) = if i == 0 { (3, 0.6) } else { (2, 0.5) };
    let extra_k1 = rng.gen_range(0..=extra);
    let k1 = random_pure_connected(&mut rng, (i + 1) as usize, extra_k1, reuse, "a");
    let extra_k2 = rng.gen_range(0..=extra);
    let k2 = random_pure_connected(&mut rng, (i + 1) as usize, extra_k2, reuse, "b");
    let p = cartesian_product(&k1, &k2);
    let (b1, b2) = (is_balanced(&k1, i)?, is_balanced(&k2, i)?);
    let connected = p.is_path_connected(i + 1);
    let (predicted, structure) = if i == 0 {
        (b1 && b2, connected && is_balanced(&p, i)? == (b1 && b2))
    } else {
        (b1 || b2, !connected && product_incidence_decomposes(&k1, &k2, i)?)
    };
    Ok(Draft { predicted_top: Some(predicted), structure_ok: Some(structure), ..Draft::plain(p, i) })
}

/// Proper vertex subsets whose induced subcomplex is an `i`-motif.
fn motif_candidates(k: &Complex, i: isize) -> Result<Vec<Complex>> {
    let n = k.num_vertices();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) - 1 {
        let verts: Vec<&str> =
            (0..n).filter(|v| mask >> v & 1 == 1).map(|v| k.vertex_labels()[v].as_str()).collect();
        let sigma = k.induced_subcomplex(&verts)?;
        if k.is_i_motif(&sigma, i)? {
            out.push(sigma);
        }
    }
    Ok(out)
}

fn motif_draft(cfg: &VerifyConfig, trial: usize) -> Result<Draft> {
    let mut rng = trial_rng(cfg.seed, trial);
    let top = cfg.max_dim.clamp(1, 2);
    loop {
        let i = rng.gen_range(0..top) as isize;
        let extra_k = rng.gen_range(1..=4);
        let k = random_pure_connected(&mut rng, (i + 1) as usize, extra_k, 0.5, "v");
        let motifs = motif_candidates(&k, i)?;
        let Some(sigma) = motifs.choose(&mut rng) else { continue };
        let d = duplicate_motif(&k, sigma, i)?;
        let balanced = is_balanced(&k, i)?;
        let structure = d.complex.is_path_connected(i + 1)
            && k.is_subcomplex_of(&d.complex)
            && d.copy_is_isomorphic(&k)
            && is_balanced(&d.complex, i)? == balanced;
        return Ok(Draft { predicted_top: Some(balanced), structure_ok: Some(structure), ..Draft::plain(d.complex, i) });
    }
}

fn trial_reports(cfg: &VerifyConfig, trial: usize) -> Result<Vec<VerificationReport>> {
    let drafts = match cfg.theorem {
        Theorem::T31 | Theorem::C32 => spectral_drafts(cfg, trial)?,
        Theorem::Circuits => circuit_drafts(cfg, trial)?,
        Theorem::T42 => vec![wedge_draft(cfg, trial)?],
        Theorem::T44 => vec![product_draft(cfg, trial)?],
        Theorem::T49 => vec![motif_draft(cfg, trial)?],
    };
    drafts.into_iter().map(|d| finish(cfg, trial, d)).collect()
}

/// Runs every trial (in parallel) and returns the reports in trial order.
pub fn run_verification(cfg: &VerifyConfig) -> Result<Vec<VerificationReport>> {
    let per_trial: Vec<Result<Vec<VerificationReport>>> =
        (0..cfg.trials).into_par_iter().map(|t| trial_reports(cfg, t)).collect();
    let mut out = Vec::new();
    for r in per_trial {
        out.extend(r?);
    }
    Ok(out)
}
