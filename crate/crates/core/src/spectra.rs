//! Laplacian spectra and the top-eigenvalue predicates.
//!
//! The normalized up Laplacian at dimension `i` has spectrum in `[0, i + 2]`.
//! The value `i + 2` is attained once for each `(i+1)`-path component whose
//! signed incidence graph is balanced, so it is detected with an absolute band
//! rather than by clustering.

use serde::Serialize;

use crate::complex::Complex;
use crate::eigen::{symmetric_eigen_with, JacobiOptions, Spectrum};
use crate::error::{Error, Result};
use crate::laplacian::{
    down_laplacian_with, full_laplacian_with, symmetric_form, up_laplacian, EmptyFace, LaplacianKind,
};
use crate::orientation::Orientation;
use crate::weights::{Regime, WeightFunction};

/// Tolerance of the `λ_max = i + 2` predicate.
pub const TOP_TOL: f64 = 1e-8;
/// Half-width of the band around `i + 2` used to count multiplicity.
pub const MULTIPLICITY_TOL: f64 = 1e-6;
/// Eigenvalues below this count towards a kernel.
pub const KERNEL_TOL: f64 = 1e-8;

/// Where a spectrum came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumSource {
    pub dim: isize,
    pub kind: LaplacianKind,
    pub regime: Regime,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LaplacianSpectrum {
    pub source: SpectrumSource,
    pub spectrum: Spectrum,
}

/// Spectrum of the requested Laplacian, computed on its symmetric form.
pub fn laplacian_spectrum(
    k: &Complex,
    i: isize,
    kind: LaplacianKind,
    orientation: &Orientation,
    w: &WeightFunction,
    empty: EmptyFace,
    vectors: bool,
) -> Result<LaplacianSpectrum> {
    let l = match kind {
        LaplacianKind::Up => up_laplacian(k, i, orientation, w)?,
        LaplacianKind::Down => down_laplacian_with(k, i, orientation, w, empty)?,
        LaplacianKind::Full => full_laplacian_with(k, i, orientation, w, empty)?,
    };
    let sym = symmetric_form(&l, w)?;
    let spectrum = symmetric_eigen_with(&sym, JacobiOptions { vectors, ..JacobiOptions::default() })?;
    Ok(LaplacianSpectrum { source: SpectrumSource { dim: i, kind, regime: w.regime() }, spectrum })
}

/// Spectrum of the up Laplacian under the canonical orientation.
pub fn up_spectrum(k: &Complex, i: isize, w: &WeightFunction) -> Result<Spectrum> {
    Ok(laplacian_spectrum(k, i, LaplacianKind::Up, &Orientation::canonical(), w, EmptyFace::Keep, false)?.spectrum)
}

/// Largest eigenvalue of the up Laplacian at dimension `i`.
pub fn lambda_max(k: &Complex, i: isize, w: &WeightFunction) -> Result<f64> {
    let s = up_spectrum(k, i, w)?;
    s.max().ok_or_else(|| Error::InternalConsistency(format!("no {i}-faces")))
}

fn require_normalized(w: &WeightFunction) -> Result<()> {
    if w.regime() != Regime::Normalized {
        return Err(Error::NotNormalized);
    }
    Ok(())
}

/// `|λ_max(Δ_i^up) − (i + 2)| <= tol`.
pub fn has_top_eigenvalue(k: &Complex, i: isize, w: &WeightFunction, tol: f64) -> Result<bool> {
    require_normalized(w)?;
    Ok((lambda_max(k, i, w)? - (i + 2) as f64).abs() <= tol)
}

/// Number of eigenvalues of `Δ_i^up` within `tol` of `i + 2`.
pub fn multiplicity_of_top(k: &Complex, i: isize, w: &WeightFunction, tol: f64) -> Result<usize> {
    require_normalized(w)?;
    Ok(up_spectrum(k, i, w)?.count_near((i + 2) as f64, tol))
}

/// Eigenvalues below [`KERNEL_TOL`] in the full Laplacian at dimension `i`.
pub fn kernel_dimension(k: &Complex, i: isize, w: &WeightFunction) -> Result<usize> {
    let s = laplacian_spectrum(k, i, LaplacianKind::Full, &Orientation::canonical(), w, EmptyFace::Keep, false)?;
    Ok(s.spectrum.eigenvalues.iter().filter(|x| x.abs() < KERNEL_TOL).count())
}
