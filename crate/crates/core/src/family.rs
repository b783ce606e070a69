//! The two-gap family: parameters, the sets S and M, and the closed-form density.
//!
//! S = {0, a, 2a, ..., ka, ka + b, ..., ka + mb} has k gaps of length `a`
//! followed by m gaps of length `b`. Packing translates of S is the same
//! problem as avoiding the positive differences
//! M = {ia + jb : 0 <= i <= k, 0 <= j <= m, i + j > 0}.
//!
//! The density formula is only evaluated on canonical parameters: `gcd(a, b) = 1`
//! (an M-avoiding set splits over residue classes mod g, so dividing by g does
//! not change the density) and `a >= b` (reflecting S swaps `(a, k)` with `(b, m)`).

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::ExactRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RawParams {
    pub a: u32,
    pub b: u32,
    pub k: u32,
    pub m: u32,
}

impl RawParams {
    pub fn new(a: u32, b: u32, k: u32, m: u32) -> Result<Self> {
        if a == 0 || b == 0 {
            return Err(Error::InvalidInput(format!("gap lengths must be positive, got a = {a}, b = {b}")));
        }
        if k == 0 || m == 0 {
            return Err(Error::InvalidInput(format!("gap counts must be positive, got k = {k}, m = {m}")));
        }
        // keeps every n1/n2 product comfortably inside i64
        if a > 1 << 20 || b > 1 << 20 || k > 1 << 10 || m > 1 << 10 {
            return Err(Error::InvalidInput("parameters out of supported range".into()));
        }
        Ok(RawParams { a, b, k, m })
    }

    pub fn canonicalize(&self) -> CanonicalParams {
        canonicalize(self)
    }
}

/// Parameters with `gcd(a, b) = 1` and `a >= b` (equality only for `a = b = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CanonicalParams {
    pub a: u32,
    pub b: u32,
    pub k: u32,
    pub m: u32,
    /// The common divisor removed from the raw gaps.
    pub g: u32,
    /// Whether `(a, k)` and `(b, m)` were exchanged.
    pub swapped: bool,
}

impl CanonicalParams {
    /// Validates and canonicalizes in one step.
    pub fn new(a: u32, b: u32, k: u32, m: u32) -> Result<Self> {
        Ok(RawParams::new(a, b, k, m)?.canonicalize())
    }

    /// `ka + (m + 1)b`
    pub fn n1(&self) -> u32 {
        self.k * self.a + (self.m + 1) * self.b
    }

    /// `(k + 1)a + mb`
    pub fn n2(&self) -> u32 {
        (self.k + 1) * self.a + self.m * self.b
    }

    /// `ka + mb`, the largest element of S and of M.
    pub fn span(&self) -> u32 {
        self.k * self.a + self.m * self.b
    }

    /// True when the upper bound is a theorem (one of the gap lengths occurs once).
    pub fn is_proved_regime(&self) -> bool {
        self.k == 1 || self.m == 1
    }
}

pub fn canonicalize(p: &RawParams) -> CanonicalParams {
    let (mut a, mut b, mut k, mut m) = (p.a, p.b, p.k, p.m);
    let swapped = a < b;
    if swapped {
        std::mem::swap(&mut a, &mut b);
        std::mem::swap(&mut k, &mut m);
    }
    let g = a.gcd(&b);
    CanonicalParams { a: a / g, b: b / g, k, m, g, swapped }
}

/// A finite set of forbidden positive differences, strictly increasing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct DifferenceSet {
    elements: Vec<u32>,
}

impl DifferenceSet {
    /// Accepts any order and duplicates; rejects empty input and zero.
    pub fn new(mut elements: Vec<u32>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        match elements.first() {
            None => Err(Error::InvalidInput("difference set is empty".into())),
            Some(0) => Err(Error::InvalidInput("differences must be positive".into())),
            Some(_) => Ok(DifferenceSet { elements }),
        }
    }

    pub fn elements(&self) -> &[u32] {
        &self.elements
    }

    pub fn max_element(&self) -> u32 {
        *self.elements.last().expect("nonempty by construction")
    }

    pub fn contains(&self, d: u32) -> bool {
        self.elements.binary_search(&d).is_ok()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_subset(&self, other: &DifferenceSet) -> bool {
        self.elements.iter().all(|&d| other.contains(d))
    }

    pub fn scaled(&self, g: u32) -> DifferenceSet {
        DifferenceSet { elements: self.elements.iter().map(|&d| d * g).collect() }
    }

    /// Bit `d` set for every `d` in the set; `None` if some element exceeds 63.
    pub fn mask(&self) -> Option<u64> {
        (self.max_element() < 64).then(|| self.elements.iter().fold(0u64, |acc, &d| acc | 1 << d))
    }
}

impl TryFrom<Vec<u32>> for DifferenceSet {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        DifferenceSet::new(v)
    }
}

impl From<DifferenceSet> for Vec<u32> {
    fn from(d: DifferenceSet) -> Vec<u32> {
        d.elements
    }
}

/// S for the given parameters, strictly increasing, `k + m + 1` elements.
pub fn build_s(p: &CanonicalParams) -> Vec<u32> {
    let a_part = (0..=p.k).map(|i| i * p.a);
    let b_part = (1..=p.m).map(|j| p.k * p.a + j * p.b);
    a_part.chain(b_part).collect()
}

pub fn build_m(p: &CanonicalParams) -> DifferenceSet {
    let mut out = Vec::with_capacity(((p.k + 1) * (p.m + 1)) as usize);
    for i in 0..=p.k {
        for j in 0..=p.m {
            if i + j > 0 {
                out.push(i * p.a + j * p.b);
            }
        }
    }
    DifferenceSet::new(out).expect("k, m >= 1 gives a nonempty positive set")
}

/// All positive pairwise differences of a strictly increasing list starting at 0.
pub fn difference_set_of(s: &[u32]) -> Result<DifferenceSet> {
    if s.len() < 2 {
        return Err(Error::InvalidInput("need at least two elements".into()));
    }
    if s[0] != 0 || s.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidInput("list must be strictly increasing and start at 0".into()));
    }
    let diffs = s.iter().enumerate().flat_map(|(i, &x)| s[i + 1..].iter().map(move |&y| y - x)).collect();
    DifferenceSet::new(diffs)
}

/// Quotient and remainder of `a - b` by `k + m + 1`.
pub fn defect(p: &CanonicalParams) -> (u32, u32) {
    (p.a - p.b).div_rem(&(p.k + p.m + 1))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CaseTag {
    /// r = 0
    ZeroDefect,
    /// 1 <= r <= m
    LowRemainder,
    /// m + 1 <= r <= k + m
    HighRemainder,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TheoremStatus {
    ProvedTrivial,
    ProvedTheorem,
    Conjectured,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityBreakdown {
    pub d: u32,
    pub r: u32,
    pub n1: u32,
    pub n2: u32,
    pub case_tag: CaseTag,
    pub delta: ExactRational,
    pub theorem_status: TheoremStatus,
}

pub fn conjectured_density(p: &CanonicalParams) -> DensityBreakdown {
    let (d, r) = defect(p);
    let (n1, n2) = (p.n1(), p.n2());
    let (a, b, k, m) = (i64::from(p.a), i64::from(p.b), i64::from(p.k), i64::from(p.m));
    let d64 = i64::from(d);
    let (case_tag, delta) = if r == 0 {
        (CaseTag::ZeroDefect, ExactRational::new(b + k * d64, i64::from(n1)))
    } else if r <= p.m {
        (CaseTag::LowRemainder, ExactRational::new(b + k * d64, i64::from(n1)))
    } else {
        (CaseTag::HighRemainder, ExactRational::new(a - m * (d64 + 1), i64::from(n2)))
    };
    let theorem_status = if r == 0 {
        TheoremStatus::ProvedTrivial
    } else if p.is_proved_regime() {
        TheoremStatus::ProvedTheorem
    } else {
        TheoremStatus::Conjectured
    };
    DensityBreakdown { d, r, n1, n2, case_tag, delta, theorem_status }
}

/// Formula density for raw parameters (canonicalized first).
pub fn density(p: &RawParams) -> DensityBreakdown {
    conjectured_density(&p.canonicalize())
}

/// Checks the two algebraic identities that tie `d` and `r` to `n1`, `n2`:
/// `(b + kd)n2 - (b + (k+1)d)n1 = br` and
/// `(a - m(d+1))n1 - (a - (m+1)(d+1))n2 = a(k + m + 1 - r)`,
/// together with `a - b = d(k + m + 1) + r`.
pub fn breakdown_identities_hold(p: &CanonicalParams, bd: &DensityBreakdown) -> bool {
    let (a, b, k, m) = (i128::from(p.a), i128::from(p.b), i128::from(p.k), i128::from(p.m));
    let (d, r) = (i128::from(bd.d), i128::from(bd.r));
    let (n1, n2) = (i128::from(bd.n1), i128::from(bd.n2));
    let division = a - b == d * (k + m + 1) + r && (0..=k + m).contains(&r);
    let first = (b + k * d) * n2 - (b + (k + 1) * d) * n1 == b * r;
    let second = (a - m * (d + 1)) * n1 - (a - (m + 1) * (d + 1)) * n2 == a * (k + m + 1 - r);
    division && first && second
}

/// The side condition under which the single inequality
/// `(k+m)|T| <= (k+m)|I| + k|U|` implies the two-case dichotomy.
pub fn weak_assumption_holds(k: u32, m: u32, r: u32) -> Result<bool> {
    if r == 0 || r > k + m {
        return Err(Error::InvalidInput(format!("r must lie in [1, {}], got {r}", k + m)));
    }
    let (k, m, r) = (u64::from(k), u64::from(m), u64::from(r));
    Ok(if r <= m { k + m > k * r } else { k + m > m * (k + m + 1 - r) })
}
