//! Classical random fields whose covariance operator, normalized by trace,
//! plays the role of a quantum density operator.
//!
//! Fields are mode-truncated to C^d and drawn as circularly symmetric
//! complex Gaussians with E[φφ†] = B, via the factorization B = UΛU† and
//! φ = UΛ^{1/2}ξ with ξ standard complex normal. Two layers of agreement
//! are exposed:
//!
//!   - exact: Tr(B A) = Tr(B) · Tr(ρ A) with ρ = B/Tr B, an identity;
//!   - statistical: the sampled mean of the quadratic form ⟨φ|A|φ⟩
//!     converges to Tr(B A), with Tr B itself showing up as the mean field
//!     energy E‖φ‖².
//!
//! Individual field values range over a continuum even when the quantum
//! observable is dichotomic; only the averages match.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use operator_core::{CounterRng, DensityOperator, HermitianOperator, HilbertDim};

#[derive(Debug, Error)]
pub enum PcsftError {
    #[error(transparent)]
    Operator(#[from] operator_core::OperatorError),

    #[error("covariance is not positive semidefinite: min eigenvalue {min_eigenvalue:.3e}")]
    NotPositive { min_eigenvalue: f64 },

    #[error("covariance trace {trace:.3e} is too small to normalize")]
    ZeroTrace { trace: f64 },

    #[error("ensemble is empty")]
    EmptyEnsemble,

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("ensemble size {n} exceeds the cap {cap}")]
    EnsembleTooLarge { n: u64, cap: u64 },
}

pub type Result<T> = std::result::Result<T, PcsftError>;

/// Minimum eigenvalue accepted for a covariance operator.
pub const PSD_MIN_EIGENVALUE: f64 = -1e-10;

/// Trace below this cannot be normalized into a density operator.
pub const TRACE_TOL: f64 = 1e-12;

/// Keep raw ensembles desk-scale.
pub const MAX_SAMPLES: u64 = 50_000_000;

/// Covariance operator of a complex random field: positive semidefinite,
/// with trace equal to the mean field energy. The zero operator is allowed
/// (a silent field); only normalization into a density requires positive
/// trace.
#[derive(Clone, Debug, Serialize)]
#[serde(into = "HermitianOperator")]
pub struct CovarianceOperator {
    operator: HermitianOperator,
}

impl CovarianceOperator {
    pub fn new(operator: HermitianOperator) -> Result<Self> {
        let min = operator.eig()?.min_eigenvalue();
        if min < PSD_MIN_EIGENVALUE {
            return Err(PcsftError::NotPositive {
                min_eigenvalue: min,
            });
        }
        Ok(Self { operator })
    }

    pub fn operator(&self) -> &HermitianOperator {
        &self.operator
    }

    pub fn dim(&self) -> &HilbertDim {
        self.operator.dim()
    }

    pub fn trace(&self) -> f64 {
        self.operator.trace()
    }
}

impl From<CovarianceOperator> for HermitianOperator {
    fn from(b: CovarianceOperator) -> Self {
        b.operator
    }
}

impl<'de> serde::Deserialize<'de> for CovarianceOperator {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        let operator = HermitianOperator::deserialize(deserializer)?;
        CovarianceOperator::new(operator).map_err(serde::de::Error::custom)
    }
}

/// ρ = B / Tr B: the descriptive-theory covariance normalized into the
/// observational-theory density operator.
pub fn density_from_covariance(b: &CovarianceOperator) -> Result<DensityOperator> {
    let trace = b.trace();
    if trace <= TRACE_TOL {
        return Err(PcsftError::ZeroTrace { trace });
    }
    Ok(DensityOperator::new(b.operator().scale_re(1.0 / trace))?)
}

/// One draw of the truncated field.
#[derive(Clone, Debug)]
pub struct FieldSample {
    pub phi: Vec<Complex64>,
    pub omega_index: u64,
}

impl FieldSample {
    pub fn energy(&self) -> f64 {
        self.phi.iter().map(|z| z.norm_sqr()).sum()
    }
}

/// A seeded ensemble of field draws with its generating covariance.
#[derive(Clone, Debug)]
pub struct FieldEnsemble {
    model: CovarianceOperator,
    seed: u64,
    samples: Vec<FieldSample>,
}

impl FieldEnsemble {
    pub fn model(&self) -> &CovarianceOperator {
        &self.model
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn samples(&self) -> &[FieldSample] {
        &self.samples
    }

    pub fn n(&self) -> usize {
        self.samples.len()
    }
}

/// Draw n independent circularly symmetric complex Gaussian fields with
/// E[φφ†] = B. Bit-identical for a fixed seed regardless of worker count.
pub fn sample_field(b: &CovarianceOperator, seed: u64, n: u64) -> Result<FieldEnsemble> {
    if n > MAX_SAMPLES {
        return Err(PcsftError::EnsembleTooLarge { n, cap: MAX_SAMPLES });
    }
    let d = b.dim().size();
    let dec = b.operator().eig()?;
    // Column k of the factor is sqrt(λ_k) U_{·k}; negative rounding dust is
    // clamped to zero.
    let mut factor = vec![Complex64::new(0.0, 0.0); d * d];
    for (k, &lambda) in dec.eigenvalues().iter().enumerate() {
        let root = lambda.max(0.0).sqrt();
        for (row, amp) in dec.eigenvectors()[k].amplitudes().iter().enumerate() {
            factor[row * d + k] = amp * root;
        }
    }
    let rng = CounterRng::keyed(seed, 0);

    let samples: Vec<FieldSample> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut xi = Vec::with_capacity(d);
            for j in 0..d {
                let pair_base = 2 * (i * d as u64 + j as u64);
                let (g_re, g_im) = rng.normal_pair_at(pair_base);
                // E|ξ_j|² = 1 needs variance 1/2 per real component.
                xi.push(Complex64::new(
                    g_re / 2.0_f64.sqrt(),
                    g_im / 2.0_f64.sqrt(),
                ));
            }
            let mut phi = vec![Complex64::new(0.0, 0.0); d];
            for (row, slot) in phi.iter_mut().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for (k, x) in xi.iter().enumerate() {
                    acc += factor[row * d + k] * x;
                }
                *slot = acc;
            }
            FieldSample {
                phi,
                omega_index: i,
            }
        })
        .collect();

    Ok(FieldEnsemble {
        model: b.clone(),
        seed,
        samples,
    })
}

/// The sampled and exact sides of one quadratic-form average.
#[derive(Clone, Debug, Serialize)]
pub struct QuadraticFormAverage {
    /// Mean over the ensemble of f_A(φ) = ⟨φ|A|φ⟩.
    pub empirical: f64,
    /// Tr(B A).
    pub theoretical: f64,
    pub stderr: f64,
    pub z: f64,
}

pub fn quadratic_form_average(
    ensemble: &FieldEnsemble,
    a: &HermitianOperator,
) -> Result<QuadraticFormAverage> {
    if ensemble.n() == 0 {
        return Err(PcsftError::EmptyEnsemble);
    }
    if a.size() != ensemble.model().dim().size() {
        return Err(PcsftError::DimensionMismatch {
            left: a.size(),
            right: ensemble.model().dim().size(),
        });
    }
    // Forms evaluate in parallel; the reduction is a fixed-order sum so the
    // result does not depend on the partitioning.
    let values: Vec<f64> = ensemble
        .samples()
        .par_iter()
        .map(|s| {
            let image = a.matrix().apply(&s.phi);
            s.phi
                .iter()
                .zip(&image)
                .map(|(x, y)| (x.conj() * y).re)
                .sum()
        })
        .collect();
    let n = values.len() as f64;
    let empirical = values.iter().sum::<f64>() / n;
    let variance = if values.len() > 1 {
        values
            .iter()
            .map(|v| (v - empirical) * (v - empirical))
            .sum::<f64>()
            / (n - 1.0)
    } else {
        0.0
    };
    let stderr = (variance / n).sqrt();

    let theoretical = b_trace_with(ensemble.model(), a)?;
    let diff = empirical - theoretical;
    let z = if stderr > 0.0 { diff / stderr } else { 0.0 };
    Ok(QuadraticFormAverage {
        empirical,
        theoretical,
        stderr,
        z,
    })
}

/// Do the descriptive (field) and observational (density) averages agree?
/// Compares the sampled mean of f_A against Tr(B) · Tr(ρ A) at five standard
/// errors. With a healthy ensemble only sampling noise can fail this; the
/// two theoretical sides are equal identically.
pub fn average_equivalence_check(
    b: &CovarianceOperator,
    a: &HermitianOperator,
    ensemble: &FieldEnsemble,
) -> Result<bool> {
    let stats = quadratic_form_average(ensemble, a)?;
    let target = if b.trace() > TRACE_TOL {
        let rho = density_from_covariance(b)?;
        b.trace() * rho.expectation_of(a)?
    } else {
        0.0
    };
    let diff = (stats.empirical - target).abs();
    Ok(diff <= 5.0 * stats.stderr || diff <= 1e-12)
}

/// Tr(B A), checked real.
pub fn b_trace_with(b: &CovarianceOperator, a: &HermitianOperator) -> Result<f64> {
    let t = b.operator().trace_product(a.matrix())?;
    Ok(t.re)
}

/// (1/n) Σ φφ†, exactly Hermitian by construction.
pub fn empirical_covariance(ensemble: &FieldEnsemble) -> Result<HermitianOperator> {
    if ensemble.n() == 0 {
        return Err(PcsftError::EmptyEnsemble);
    }
    let scale = 1.0 / ensemble.n() as f64;
    Ok(HermitianOperator::from_upper(
        ensemble.model().dim().clone(),
        |i, j| {
            let mut acc = Complex64::new(0.0, 0.0);
            for s in ensemble.samples() {
                acc += s.phi[i] * s.phi[j].conj();
            }
            acc * scale
        },
    ))
}

/// Per-observable line of an ensemble report.
#[derive(Clone, Debug, Serialize)]
pub struct ObservableSummary {
    pub name: String,
    pub empirical: f64,
    pub theoretical: f64,
    pub stderr: f64,
    pub z: f64,
}

/// Serializable digest of an ensemble: model, seed, size, empirical
/// covariance, and per-observable averages. Raw samples are exported only
/// through [`samples_csv`].
#[derive(Clone, Debug, Serialize)]
pub struct EnsembleSummary {
    /// Fields live on C^d, not on physical space; every report says so.
    pub truncation: &'static str,
    pub seed: u64,
    pub n: usize,
    pub model: CovarianceOperator,
    pub mean_energy: f64,
    pub model_trace: f64,
    pub empirical_covariance: HermitianOperator,
    pub observables: Vec<ObservableSummary>,
}

pub fn ensemble_summary(
    ensemble: &FieldEnsemble,
    observables: &[(String, HermitianOperator)],
) -> Result<EnsembleSummary> {
    let mut lines = Vec::with_capacity(observables.len());
    for (name, a) in observables {
        let stats = quadratic_form_average(ensemble, a)?;
        lines.push(ObservableSummary {
            name: name.clone(),
            empirical: stats.empirical,
            theoretical: stats.theoretical,
            stderr: stats.stderr,
            z: stats.z,
        });
    }
    let mean_energy =
        ensemble.samples().iter().map(FieldSample::energy).sum::<f64>() / ensemble.n() as f64;
    Ok(EnsembleSummary {
        truncation: "mode-truncated",
        seed: ensemble.seed(),
        n: ensemble.n(),
        model: ensemble.model().clone(),
        mean_energy,
        model_trace: ensemble.model().trace(),
        empirical_covariance: empirical_covariance(ensemble)?,
        observables: lines,
    })
}

/// One row per sample: omega index, then re/im per mode.
pub fn samples_csv(ensemble: &FieldEnsemble) -> String {
    let d = ensemble.model().dim().size();
    let mut header = String::from("omega");
    for j in 0..d {
        header.push_str(&format!(",re_{j},im_{j}"));
    }
    header.push('\n');
    let mut out = header;
    for s in ensemble.samples() {
        out.push_str(&s.omega_index.to_string());
        for z in &s.phi {
            out.push_str(&format!(",{},{}", z.re, z.im));
        }
        out.push('\n');
    }
    out
}
