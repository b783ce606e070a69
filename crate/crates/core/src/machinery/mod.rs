//! Executable versions of the two injections behind the upper bound.
//!
//! For `m = 1` every `α ∈ T` gets a pair `{v_α, w_α} ⊂ I ∪ U`, and the pairs
//! are grouped into chains whose images are one larger than the chain. For
//! `k = 1` every `α ∈ T` goes either to one element of `I` or to an
//! `(m + 1)`-element subset of `U`, all images disjoint. Each construction
//! checks the facts its counting argument relies on and reports the first
//! failure as a [`LemmaViolation`], so running it over every enumerated window
//! tests those facts on that instance.

mod chains;
mod trajectory;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::error::{Error, Result};
use crate::family::CanonicalParams;
use crate::oracle::Limits;
use crate::profile::{band, profile, verify_windows, Profile, VerificationReport};
use crate::window::Window;

pub use chains::{assign_v_w, build_chain_partition, verify_m1_inequality, ChainPartition, VwPair, WKind};
pub use trajectory::{
    k1_image, k1_trajectory, reflect_for_k1, verify_k1_mapping, ImageAssignment, ImageTarget, K1View, StopReason,
    Trajectory, TrajectoryStep,
};

/// The fact that failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Lemma {
    /// `α̂_n + k'a ∈ A` for some `i < k' <= k` (m = 1 trajectories).
    LateSequence,
    /// `α̂_n + a + m'b ∈ A` for some `0 <= m' < η_n` (k = 1 trajectories).
    MainSequence,
    /// `v_α ∈ U`, `w_α ∈ I ∪ U`, `v_α != w_α`.
    PairInRange,
    /// At most one smaller and one larger neighbour, sharing exactly one point.
    ChainNeighbor,
    /// Band index strictly decreases along a chain edge.
    BandDescent,
    /// `|C| <= k`.
    ChainLength,
    /// `|image(C)| = |C| + 1`.
    ChainImageSize,
    /// Images of different chains are disjoint.
    ChainImagesDisjoint,
    /// `η_{n+1} b + α̂_{n+1} = a + (η_n - 1) b + α̂_n`.
    Recurrence,
    /// The stopping index was not reached within the iteration guard.
    Termination,
    /// `U(α) ⊂ U`.
    UAlphaInU,
    /// Trajectories of distinct points never meet.
    SequencesDisjoint,
    /// V and W pieces of all images are pairwise disjoint.
    InjectiveCorrespondence,
    /// `|U(α)| = m + 1`, `|V(α)| = j_0`, `|W_n(α)| = η_{n+1} - η_n`.
    Cardinality,
    /// Points mapped into I land on distinct elements of I.
    IntoIDistinct,
}

impl fmt::Display for Lemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{lemma} violated{}: {detail}", alpha.map(|a| format!(" at alpha = {a}")).unwrap_or_default())]
pub struct LemmaViolation {
    pub lemma: Lemma,
    pub alpha: Option<u32>,
    pub detail: String,
}

pub(crate) fn violation(lemma: Lemma, alpha: Option<u32>, detail: impl Into<String>) -> Error {
    Error::Lemma(LemmaViolation { lemma, alpha, detail: detail.into() })
}

/// `α = ia + jb + α̂_0` with `j >= 1` and `0 <= α̂_0 < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GapDecomposition {
    pub alpha: u32,
    pub i: u32,
    pub j: u32,
    pub alpha_hat0: u32,
}

/// Locates `alpha` in its band `[ia + b + 1, (i+1)a - 1]`.
pub fn decompose(alpha: u32, p: &CanonicalParams) -> Result<GapDecomposition> {
    let i = alpha / p.a;
    if i >= p.k {
        return Err(Error::NotInT { alpha });
    }
    let (lo, hi) = band(p, i);
    if !(lo..=hi).contains(&alpha) {
        return Err(Error::NotInT { alpha });
    }
    let rest = alpha - i * p.a;
    Ok(GapDecomposition { alpha, i, j: rest / p.b, alpha_hat0: rest % p.b })
}

/// Which late-sequence statement to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LateRegime {
    /// m = 1, trajectory of a point of band `i`: look for `α̂_n + k'a`, `i < k' <= k`.
    ChainM1 { band: u32 },
    /// k = 1, step with quotient `η_n`: look for `α̂_n + a + m'b`, `0 <= m' < η_n`.
    TrajectoryK1 { eta_n: u32 },
}

/// The element of A promised for a trajectory value outside I; `None` when
/// `alpha_hat_n ∈ I` (nothing is promised then).
pub fn check_late_sequence_witness(
    alpha_hat_n: u32,
    a: &Window,
    p: &CanonicalParams,
    regime: LateRegime,
) -> Result<Option<u32>> {
    let pr = profile(a, p)?;
    late_witness(alpha_hat_n, a, p, &pr, regime, None)
}

pub(crate) fn late_witness(
    alpha_hat_n: u32,
    a: &Window,
    p: &CanonicalParams,
    pr: &Profile,
    regime: LateRegime,
    alpha: Option<u32>,
) -> Result<Option<u32>> {
    if pr.in_i(alpha_hat_n) {
        return Ok(None);
    }
    let (lemma, found) = match regime {
        LateRegime::ChainM1 { band } => {
            (Lemma::LateSequence, (band + 1..=p.k).map(|kp| alpha_hat_n + kp * p.a).find(|&x| a.contains(x)))
        }
        LateRegime::TrajectoryK1 { eta_n } => {
            (Lemma::MainSequence, (0..eta_n).map(|mp| alpha_hat_n + p.a + mp * p.b).find(|&x| a.contains(x)))
        }
    };
    match found {
        Some(x) => Ok(Some(x)),
        None => {
            Err(violation(lemma, alpha, format!("no witness in A for trajectory value {alpha_hat_n} ({regime:?})")))
        }
    }
}

fn report_violations<F>(p: &CanonicalParams, limits: &Limits, run: F) -> Result<VerificationReport>
where
    F: Fn(&Window) -> Result<bool> + Sync + Send,
{
    verify_windows(p, limits, |w| match run(w) {
        Ok(true) => None,
        Ok(false) => Some("displayed inequality fails".to_string()),
        Err(e) => Some(e.to_string()),
    })
}

/// Builds and checks the chain partition on every window of `[0, n2)` containing 0.
pub fn verify_m1_all(p: &CanonicalParams, limits: &Limits) -> Result<VerificationReport> {
    if p.m != 1 {
        return Err(Error::WrongRegime(format!("chain partition needs m = 1, got m = {}", p.m)));
    }
    report_violations(p, limits, |w| verify_m1_inequality(w, p))
}

/// Builds and checks the k = 1 images on every window of `[0, n2)` containing 0.
pub fn verify_k1_all(p: &CanonicalParams, limits: &Limits) -> Result<VerificationReport> {
    reflect_for_k1(p)?;
    report_violations(p, limits, |w| verify_k1_mapping(w, p))
}
