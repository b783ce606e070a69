//! The k = 1 injection: trajectories `(η_n, α̂_n)` and the images `U(α)`.
//!
//! With `k = 1` and `a > b`, S = {0, a, a + b, ..., a + mb}, T = A ∩ [b + 1, a - 1]
//! and U = [a + (m+1)b, 2a + mb - 1] \ A. Write `α + n(a - b) = η_n b + α̂_n`.
//! A point with `η_0 = j_0 > m` maps to `{α + a + tb : 0 <= t <= m}`. Otherwise
//! the trajectory runs until `α̂_N ∈ I` (the point maps to `α̂_N`) or until
//! `η_{N+1} >= m + 1`, in which case `η_{N+1}` is clamped to `m + 1` and the
//! point maps to `V(α) ∪ W_0(α) ∪ ... ∪ W_N(α)`, which has exactly `m + 1`
//! elements because the `W_n` sizes telescope.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::family::{CanonicalParams, DifferenceSet};
use crate::machinery::{late_witness, violation, LateRegime, Lemma};
use crate::profile::{profile, u_range, Profile};
use crate::window::Window;

/// The k = 1 parameters seen with S = {0, a, a + b, ..., a + mb}, `a > b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K1View {
    pub a: u32,
    pub b: u32,
    pub m: u32,
    /// `{b, ..., mb} ∪ {a, a + b, ..., a + mb}`
    pub differences: DifferenceSet,
    /// Closed range holding T; empty when `a <= b + 1`.
    pub t_range: (u32, u32),
    /// Closed range whose non-members form U.
    pub u_range: (u32, u32),
}

/// Canonical parameters already carry the reflection (`a > b` after swapping
/// `(a, k)` with `(b, m)`), so this only checks `k = 1` and spells out the view.
pub fn reflect_for_k1(p: &CanonicalParams) -> Result<K1View> {
    if p.k != 1 {
        return Err(Error::WrongRegime(format!("the trajectory construction needs k = 1, got k = {}", p.k)));
    }
    let multiples = (1..=p.m).map(|t| t * p.b);
    let shifted = (0..=p.m).map(|t| p.a + t * p.b);
    let differences = DifferenceSet::new(multiples.chain(shifted).collect()).expect("nonempty, positive");
    Ok(K1View { a: p.a, b: p.b, m: p.m, differences, t_range: (p.b + 1, p.a.saturating_sub(1)), u_range: u_range(p) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum StopReason {
    HitI,
    Threshold,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TrajectoryStep {
    pub n: u32,
    pub eta: u32,
    pub alpha_hat: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trajectory {
    /// Steps `0..=N`.
    pub steps: Vec<TrajectoryStep>,
    pub stop_index: u32,
    pub stop_reason: StopReason,
    /// `η_{N+1}` before clamping (only meaningful for `Threshold`).
    pub raw_next_eta: u32,
    /// `η_{N+1}` after clamping to `m + 1`.
    pub next_eta: u32,
    pub truncated: bool,
}

impl Trajectory {
    fn eta_after(&self, n: usize) -> u32 {
        self.steps.get(n + 1).map_or(self.next_eta, |s| s.eta)
    }
}

fn in_t_range(alpha: u32, a: &Window, p: &CanonicalParams) -> Result<()> {
    if a.contains(alpha) && alpha > p.b && alpha < p.a {
        Ok(())
    } else {
        Err(Error::NotInT { alpha })
    }
}

pub fn k1_trajectory(alpha: u32, a: &Window, p: &CanonicalParams) -> Result<Trajectory> {
    reflect_for_k1(p)?;
    let pr = profile(a, p)?;
    in_t_range(alpha, a, p)?;
    trajectory_with(alpha, p, &pr)
}

fn trajectory_with(alpha: u32, p: &CanonicalParams, pr: &Profile) -> Result<Trajectory> {
    let (a, b, m) = (p.a, p.b, p.m);
    if alpha / b > m {
        return Err(Error::WrongRegime(format!("j_0 = {} > m = {m}: no trajectory", alpha / b)));
    }
    let at = |n: u32| {
        let x = alpha + n * (a - b);
        (x / b, x % b)
    };
    let recurrence = |prev: (u32, u32), next: (u32, u32)| {
        i64::from(next.0) * i64::from(b) + i64::from(next.1)
            == i64::from(a) + (i64::from(prev.0) - 1) * i64::from(b) + i64::from(prev.1)
    };

    let mut steps = Vec::new();
    for n in 0..=p.n2() {
        let (eta, hat) = at(n);
        steps.push(TrajectoryStep { n, eta, alpha_hat: hat });
        if pr.in_i(hat) {
            return Ok(Trajectory {
                steps,
                stop_index: n,
                stop_reason: StopReason::HitI,
                raw_next_eta: at(n + 1).0,
                next_eta: at(n + 1).0,
                truncated: false,
            });
        }
        let next = at(n + 1);
        if !recurrence((eta, hat), next) {
            return Err(violation(Lemma::Recurrence, Some(alpha), format!("step {n} -> {}", n + 1)));
        }
        if next.0 > m {
            return Ok(Trajectory {
                steps,
                stop_index: n,
                stop_reason: StopReason::Threshold,
                raw_next_eta: next.0,
                next_eta: m + 1,
                truncated: next.0 > m + 1,
            });
        }
    }
    Err(violation(Lemma::Termination, Some(alpha), "trajectory exceeded n2 steps"))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ImageTarget {
    IntoI(u32),
    IntoU { v: Vec<u32>, w: Vec<Vec<u32>>, union: Vec<u32> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageAssignment {
    pub alpha: u32,
    pub target: ImageTarget,
    /// `None` when `j_0 > m`.
    pub trajectory: Option<Trajectory>,
}

pub fn k1_image(alpha: u32, a: &Window, p: &CanonicalParams) -> Result<ImageAssignment> {
    reflect_for_k1(p)?;
    let pr = profile(a, p)?;
    in_t_range(alpha, a, p)?;
    image_with(alpha, a, p, &pr)
}

fn image_with(alpha: u32, a: &Window, p: &CanonicalParams, pr: &Profile) -> Result<ImageAssignment> {
    let (b, m) = (p.b, p.m);
    let j0 = alpha / b;
    if j0 > m {
        let v: Vec<u32> = (0..=m).map(|t| alpha + p.a + t * b).collect();
        check_union(alpha, pr, m, &v)?;
        return Ok(ImageAssignment {
            alpha,
            target: ImageTarget::IntoU { union: v.clone(), v, w: Vec::new() },
            trajectory: None,
        });
    }

    let traj = trajectory_with(alpha, p, pr)?;
    for step in &traj.steps {
        late_witness(step.alpha_hat, a, p, pr, LateRegime::TrajectoryK1 { eta_n: step.eta }, Some(alpha))?;
    }
    let last = traj.steps.last().expect("at least one step");
    if traj.stop_reason == StopReason::HitI {
        return Ok(ImageAssignment { alpha, target: ImageTarget::IntoI(last.alpha_hat), trajectory: Some(traj) });
    }

    let v: Vec<u32> = (m - j0 + 1..=m).map(|t| alpha + p.a + t * b).collect();
    if v.len() != j0 as usize {
        return Err(violation(Lemma::Cardinality, Some(alpha), format!("|V| = {} but j_0 = {j0}", v.len())));
    }
    let mut w = Vec::with_capacity(traj.steps.len());
    for (n, step) in traj.steps.iter().enumerate() {
        let rise = traj.eta_after(n) - step.eta;
        let piece: Vec<u32> = (m - rise..m).map(|t| step.alpha_hat + 2 * p.a + t * b).collect();
        if piece.len() != rise as usize {
            return Err(violation(
                Lemma::Cardinality,
                Some(alpha),
                format!("|W_{n}| = {} but the rise is {rise}", piece.len()),
            ));
        }
        w.push(piece);
    }

    let mut union = BTreeSet::new();
    for x in v.iter().chain(w.iter().flatten()) {
        if !union.insert(*x) {
            return Err(violation(
                Lemma::InjectiveCorrespondence,
                Some(alpha),
                format!("{x} appears twice among V and W_n"),
            ));
        }
    }
    let union: Vec<u32> = union.into_iter().collect();
    check_union(alpha, pr, m, &union)?;
    Ok(ImageAssignment { alpha, target: ImageTarget::IntoU { v, w, union }, trajectory: Some(traj) })
}

fn check_union(alpha: u32, pr: &Profile, m: u32, union: &[u32]) -> Result<()> {
    if let Some(x) = union.iter().find(|&&x| !pr.in_u(x)) {
        return Err(violation(Lemma::UAlphaInU, Some(alpha), format!("{x} is not in U")));
    }
    if union.len() != (m + 1) as usize {
        return Err(violation(Lemma::Cardinality, Some(alpha), format!("|U(alpha)| = {} != m + 1", union.len())));
    }
    Ok(())
}

/// Computes every image, checks that they are pairwise disjoint, and returns
/// whether `(m + 1)|T| <= (m + 1)|I| + |U|`.
pub fn verify_k1_mapping(a: &Window, p: &CanonicalParams) -> Result<bool> {
    reflect_for_k1(p)?;
    let pr = profile(a, p)?;
    let images: Vec<ImageAssignment> =
        pr.t().into_iter().map(|alpha| image_with(alpha, a, p, &pr)).collect::<Result<_>>()?;

    let mut trajectory_values = BTreeSet::new();
    for img in &images {
        for step in img.trajectory.iter().flat_map(|t| &t.steps) {
            if !trajectory_values.insert(step.alpha_hat) {
                return Err(violation(
                    Lemma::SequencesDisjoint,
                    Some(img.alpha),
                    format!("trajectory value {} repeats", step.alpha_hat),
                ));
            }
        }
    }

    let mut used_i = BTreeSet::new();
    let mut used_u = BTreeSet::new();
    for img in &images {
        match &img.target {
            ImageTarget::IntoI(x) => {
                if !pr.in_i(*x) || !used_i.insert(*x) {
                    return Err(violation(
                        Lemma::IntoIDistinct,
                        Some(img.alpha),
                        format!("target {x} reused or outside I"),
                    ));
                }
            }
            ImageTarget::IntoU { union, .. } => {
                for x in union {
                    if !used_u.insert(*x) {
                        return Err(violation(
                            Lemma::InjectiveCorrespondence,
                            Some(img.alpha),
                            format!("{x} belongs to two images"),
                        ));
                    }
                }
            }
        }
    }

    let m1 = u64::from(p.m + 1);
    let (i, t, u) = (pr.i_set.len() as u64, pr.t_len() as u64, pr.u_set.len() as u64);
    Ok(m1 * t <= m1 * i + u)
}
