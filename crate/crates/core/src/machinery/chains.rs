//! The m = 1 injection: pairs `{v_α, w_α}` and their chain partition.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::family::CanonicalParams;
use crate::machinery::{decompose, late_witness, violation, LateRegime, Lemma};
use crate::profile::{profile, Profile};
use crate::window::Window;

/// How `w_α` was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum WKind {
    /// `j >= 2`: `w = α + (k - i)a`.
    Direct,
    /// `j = 1`, trajectory stopped inside I: `w = α̂_N`.
    IntoI,
    /// `j = 1`, trajectory reached `2b - a`: `w = α̂_N + (k + 1)a`.
    Late,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VwPair {
    pub alpha: u32,
    pub band: u32,
    pub v: u32,
    pub w: u32,
    pub kind: WKind,
    /// `α̂_0, ..., α̂_N` for `j = 1`, empty otherwise.
    pub trajectory: Vec<u32>,
}

fn require_m1(p: &CanonicalParams) -> Result<()> {
    if p.m == 1 {
        Ok(())
    } else {
        Err(Error::WrongRegime(format!("the pair construction needs m = 1, got m = {}", p.m)))
    }
}

pub fn assign_v_w(alpha: u32, a: &Window, p: &CanonicalParams) -> Result<VwPair> {
    require_m1(p)?;
    let pr = profile(a, p)?;
    assign_with(alpha, a, p, &pr)
}

fn assign_with(alpha: u32, a: &Window, p: &CanonicalParams, pr: &Profile) -> Result<VwPair> {
    if !a.contains(alpha) {
        return Err(Error::NotInT { alpha });
    }
    let dec = decompose(alpha, p)?;
    let lift = (p.k - dec.i) * p.a;
    let v = alpha + lift + p.b;

    let (w, kind, trajectory) = if dec.j >= 2 {
        (alpha + lift, WKind::Direct, Vec::new())
    } else {
        let threshold = 2 * i64::from(p.b) - i64::from(p.a);
        let mut trajectory = Vec::new();
        let mut hat = dec.alpha_hat0;
        let (w, kind) = loop {
            if trajectory.len() as u32 > p.n2() {
                return Err(violation(Lemma::Termination, Some(alpha), "trajectory exceeded n2 steps"));
            }
            trajectory.push(hat);
            // membership in I wins when both stopping conditions hold
            if pr.in_i(hat) {
                break (hat, WKind::IntoI);
            }
            if i64::from(hat) >= threshold {
                break (hat + (p.k + 1) * p.a, WKind::Late);
            }
            hat += p.a - p.b;
        };
        for &h in &trajectory {
            late_witness(h, a, p, pr, LateRegime::ChainM1 { band: dec.i }, Some(alpha))?;
        }
        (w, kind, trajectory)
    };

    if !pr.in_u(v) {
        return Err(violation(Lemma::PairInRange, Some(alpha), format!("v = {v} is not in U")));
    }
    if !(pr.in_u(w) || pr.in_i(w)) {
        return Err(violation(Lemma::PairInRange, Some(alpha), format!("w = {w} ({kind:?}) is not in I ∪ U")));
    }
    if v == w {
        return Err(violation(Lemma::PairInRange, Some(alpha), format!("v = w = {v}")));
    }
    Ok(VwPair { alpha, band: dec.i, v, w, kind, trajectory })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainPartition {
    /// Each chain listed from its largest element down.
    pub chains: Vec<Vec<u32>>,
    /// `(α, β)` with `α > β` and overlapping pairs.
    pub edges: Vec<(u32, u32)>,
    pub image_map: BTreeMap<u32, (u32, u32)>,
}

impl ChainPartition {
    pub fn image(&self, chain: &[u32]) -> BTreeSet<u32> {
        chain
            .iter()
            .flat_map(|alpha| {
                let (v, w) = self.image_map[alpha];
                [v, w]
            })
            .collect()
    }
}

/// Partitions T into chains and checks the degree bounds, band descent and
/// the three chain properties.
pub fn build_chain_partition(a: &Window, p: &CanonicalParams) -> Result<ChainPartition> {
    require_m1(p)?;
    let pr = profile(a, p)?;
    build_with(a, p, &pr)
}

fn build_with(a: &Window, p: &CanonicalParams, pr: &Profile) -> Result<ChainPartition> {
    let pairs: Vec<VwPair> = pr.t().into_iter().map(|alpha| assign_with(alpha, a, p, pr)).collect::<Result<_>>()?;

    let mut edges = Vec::new();
    let mut down: BTreeMap<u32, u32> = BTreeMap::new();
    let mut up: BTreeMap<u32, u32> = BTreeMap::new();
    for (x, big) in pairs.iter().enumerate() {
        for small in &pairs[..x] {
            let shared = [big.v, big.w].into_iter().filter(|z| *z == small.v || *z == small.w).count();
            if shared == 0 {
                continue;
            }
            let (alpha, beta) = (big.alpha, small.alpha);
            if shared != 1 {
                return Err(violation(
                    Lemma::ChainNeighbor,
                    Some(alpha),
                    format!("pairs of {alpha} and {beta} share {shared} points"),
                ));
            }
            if big.band <= small.band {
                return Err(violation(
                    Lemma::BandDescent,
                    Some(alpha),
                    format!("edge ({alpha}, {beta}) goes from band {} to band {}", big.band, small.band),
                ));
            }
            if let Some(prev) = down.insert(alpha, beta) {
                return Err(violation(
                    Lemma::ChainNeighbor,
                    Some(alpha),
                    format!("two smaller neighbours {prev} and {beta}"),
                ));
            }
            if let Some(prev) = up.insert(beta, alpha) {
                return Err(violation(
                    Lemma::ChainNeighbor,
                    Some(beta),
                    format!("two larger neighbours {prev} and {alpha}"),
                ));
            }
            edges.push((alpha, beta));
        }
    }

    let image_map: BTreeMap<u32, (u32, u32)> = pairs.iter().map(|q| (q.alpha, (q.v, q.w))).collect();
    let mut chains = Vec::new();
    for q in pairs.iter().rev() {
        if up.contains_key(&q.alpha) {
            continue;
        }
        let mut chain = vec![q.alpha];
        while let Some(&next) = down.get(chain.last().expect("nonempty")) {
            chain.push(next);
        }
        chains.push(chain);
    }
    let partition = ChainPartition { chains, edges, image_map };

    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    for (c, chain) in partition.chains.iter().enumerate() {
        if chain.len() > p.k as usize {
            return Err(violation(
                Lemma::ChainLength,
                Some(chain[0]),
                format!("chain {chain:?} is longer than k = {}", p.k),
            ));
        }
        let image = partition.image(chain);
        if image.len() != chain.len() + 1 {
            return Err(violation(
                Lemma::ChainImageSize,
                Some(chain[0]),
                format!("chain {chain:?} has image {image:?}"),
            ));
        }
        for z in image {
            if let Some(other) = seen.insert(z, c) {
                return Err(violation(
                    Lemma::ChainImagesDisjoint,
                    Some(chain[0]),
                    format!("{z} lies in the images of chains {other} and {c}"),
                ));
            }
        }
    }
    Ok(partition)
}

/// Checks `|T| <= k/(k+1) |I ∪ U|` and `(k+1)|T| <= (k+1)|I| + k|U|` after
/// building the partition.
pub fn verify_m1_inequality(a: &Window, p: &CanonicalParams) -> Result<bool> {
    require_m1(p)?;
    let pr = profile(a, p)?;
    build_with(a, p, &pr)?;
    let k = u64::from(p.k);
    let (i, t, u) = (pr.i_set.len() as u64, pr.t_len() as u64, pr.u_set.len() as u64);
    let stronger = (k + 1) * t <= k * (i + u);
    let displayed = (k + 1) * t <= (k + 1) * i + k * u;
    Ok(stronger && displayed)
}
