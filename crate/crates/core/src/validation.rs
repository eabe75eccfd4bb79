//! Gram matrices, eigenvalue certification and the trial runner.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sym_eig_extremes, SymMatrix};
use crate::models::KernelModel;
use crate::spaces::{sample_distinct, ProductPoint};

/// PSD passes iff `min_eig ≥ -TOL_PSD · n · scale`.
pub const TOL_PSD: f64 = 1e-12;
/// SPD passes iff `min_eig > SPD_FLOOR · scale`.
pub const SPD_FLOOR: f64 = 1e-12;
/// Separation used for SPD sampling unless overridden.
pub const SPD_MIN_SEPARATION: f64 = 0.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Psd,
    Spd,
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "psd" => Ok(Mode::Psd),
            "spd" => Ok(Mode::Spd),
            other => Err(Error::Config(format!(
                "mode must be psd or spd, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Psd => "psd",
            Mode::Spd => "spd",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GramVerdict {
    #[serde(rename = "PSD_pass")]
    PsdPass,
    #[serde(rename = "PSD_fail")]
    PsdFail,
    #[serde(rename = "SPD_pass")]
    SpdPass,
    #[serde(rename = "SPD_fail")]
    SpdFail,
}

impl GramVerdict {
    pub fn pass(self) -> bool {
        matches!(self, GramVerdict::PsdPass | GramVerdict::SpdPass)
    }
}

/// Eigenvalue summary of one Gram matrix.
#[derive(Debug, Clone, Serialize)]
pub struct GramReport {
    pub trial: usize,
    pub seed: u64,
    pub n: usize,
    pub min_eig: f64,
    pub max_eig: f64,
    pub symmetry_residual: f64,
    pub scale: f64,
    pub verdict: GramVerdict,
    pub space: String,
    pub model: String,
}

/// `A_jk = model(d(p_j, p_k))`, evaluated once per unordered pair and mirrored.
pub fn gram(model: &KernelModel, points: &[ProductPoint]) -> Result<SymMatrix> {
    let spaces = model.spaces();
    for p in points {
        spaces.validate(p)?;
    }
    SymMatrix::try_from_upper(points.len(), |j, k| {
        let d = spaces.distances(&points[j], &points[k])?;
        model.eval(&d).map_err(|e| match e {
            Error::Domain(msg) => Error::Domain(format!("pair ({j}, {k}): {msg}")),
            other => other,
        })
    })
}

/// Classifies a spectrum under `mode` with the documented tolerances.
pub fn classify(mode: Mode, n: usize, min_eig: f64, scale: f64) -> GramVerdict {
    match mode {
        Mode::Psd if min_eig >= -TOL_PSD * n as f64 * scale => GramVerdict::PsdPass,
        Mode::Psd => GramVerdict::PsdFail,
        Mode::Spd if min_eig > SPD_FLOOR * scale => GramVerdict::SpdPass,
        Mode::Spd => GramVerdict::SpdFail,
    }
}

#[derive(Debug, Clone)]
pub struct CertifyOptions {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub mode: Mode,
    pub min_sep: f64,
    /// Points that replace the first sampled points of every trial.
    pub embed: Vec<ProductPoint>,
}

impl CertifyOptions {
    pub fn new(mode: Mode, n: usize, trials: usize, seed: u64) -> Self {
        let min_sep = match mode {
            Mode::Psd => crate::spaces::DEFAULT_MIN_SEPARATION,
            Mode::Spd => SPD_MIN_SEPARATION,
        };
        Self {
            n,
            trials,
            seed,
            mode,
            min_sep,
            embed: Vec::new(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Certification {
    pub mode: Mode,
    pub pass: bool,
    pub passed: usize,
    pub trials: usize,
    /// Trial with the smallest `min_eig / scale`.
    pub worst_trial: usize,
    pub worst_min_eig: f64,
    #[serde(skip)]
    pub reports: Vec<GramReport>,
}

/// Seed of trial `index`: `seed ⊕ index`.
pub fn trial_seed(seed: u64, index: usize) -> u64 {
    seed ^ index as u64
}

/// `n` sampled points with `embed` overwriting the leading ones.
pub fn trial_points(
    model: &KernelModel,
    opts: &CertifyOptions,
    seed: u64,
) -> Result<Vec<ProductPoint>> {
    let mut points = sample_distinct(model.spaces(), opts.n, seed, opts.min_sep)?;
    for (slot, p) in points.iter_mut().zip(&opts.embed) {
        slot.clone_from(p);
    }
    Ok(points)
}

/// Runs `trials` independent sample–Gram–eigenvalue rounds. Trials run in
/// parallel; reports are ordered by trial index.
pub fn certify(model: &KernelModel, opts: &CertifyOptions) -> Result<Certification> {
    if opts.n < 2 {
        return Err(Error::parameter(format!(
            "n must be at least 2, got {}",
            opts.n
        )));
    }
    if opts.trials == 0 {
        return Err(Error::parameter("trials must be at least 1"));
    }
    if opts.embed.len() > opts.n {
        return Err(Error::parameter("more embedded points than n"));
    }
    if opts.mode == Mode::Spd && !(opts.min_sep > 0.0) {
        return Err(Error::parameter("SPD certification needs min_sep > 0"));
    }
    let space = model.spaces().to_string();
    let label = model.to_string();
    let run = |trial: usize| -> Result<GramReport> {
        let seed = trial_seed(opts.seed, trial);
        let points = trial_points(model, opts, seed)?;
        let a = gram(model, &points)?;
        let (min_eig, max_eig) = sym_eig_extremes(&a)?;
        let scale = a.max_abs();
        Ok(GramReport {
            trial,
            seed,
            n: opts.n,
            min_eig,
            max_eig,
            symmetry_residual: a.symmetry_residual(),
            scale,
            verdict: classify(opts.mode, opts.n, min_eig, scale),
            space: space.clone(),
            model: label.clone(),
        })
    };
    let results: Vec<Result<GramReport>> = (0..opts.trials).into_par_iter().map(run).collect();
    let mut reports = Vec::with_capacity(opts.trials);
    for (index, r) in results.into_iter().enumerate() {
        reports.push(r.map_err(|e| Error::Trial {
            index,
            source: Box::new(e),
        })?);
    }
    let relative = |r: &GramReport| r.min_eig / r.scale.max(f64::MIN_POSITIVE);
    let worst = reports
        .iter()
        .min_by(|a, b| relative(a).total_cmp(&relative(b)))
        .expect("at least one trial");
    let passed = reports.iter().filter(|r| r.verdict.pass()).count();
    Ok(Certification {
        mode: opts.mode,
        pass: passed == reports.len(),
        passed,
        trials: reports.len(),
        worst_trial: worst.trial,
        worst_min_eig: worst.min_eig,
        reports,
    })
}
