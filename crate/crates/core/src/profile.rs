//! The auxiliary sets I, T, U of an avoiding set and the exhaustive checks
//! built on them.
//!
//! For an M-avoiding `A` with `0 ∈ A`:
//! - `I = {α ∈ [1, b-1] : A ∩ (α + S) = ∅}`
//! - `T_i = A ∩ [ia + b + 1, (i+1)a - 1]` for `0 <= i < k`, `T` their union
//! - `U = [ka + (m+1)b, (k+1)a + mb - 1] \ A`
//!
//! `α + S` reaches at most `b - 1 + ka + mb = n1 - 1` and `U` ends at `n2 - 1`,
//! so all three sets are determined by `A ∩ [0, n2)`. The exhaustive checks
//! therefore enumerate exactly the avoiding windows of `[0, n2)` containing 0.

use std::cmp::Ordering;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::family::{build_m, build_s, conjectured_density, CanonicalParams, DifferenceSet};
use crate::oracle::{scan_windows, Limits};
use crate::rational::ExactRational;
use crate::window::Window;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profile {
    pub i_set: Vec<u32>,
    /// `t_parts[i]` is `T_i`.
    pub t_parts: Vec<Vec<u32>>,
    pub u_set: Vec<u32>,
}

impl Profile {
    pub fn t(&self) -> Vec<u32> {
        self.t_parts.iter().flatten().copied().collect()
    }

    pub fn t_len(&self) -> usize {
        self.t_parts.iter().map(Vec::len).sum()
    }

    pub fn in_i(&self, x: u32) -> bool {
        self.i_set.binary_search(&x).is_ok()
    }

    pub fn in_u(&self, x: u32) -> bool {
        self.u_set.binary_search(&x).is_ok()
    }
}

/// The closed band `[ia + b + 1, (i+1)a - 1]` of T_i.
pub fn band(p: &CanonicalParams, i: u32) -> (u32, u32) {
    (i * p.a + p.b + 1, (i + 1) * p.a - 1)
}

/// The closed range whose non-members form U.
pub fn u_range(p: &CanonicalParams) -> (u32, u32) {
    (p.n1(), p.n2() - 1)
}

pub(crate) fn require_window(a: &Window, p: &CanonicalParams) -> Result<()> {
    if a.len() < p.n2() {
        return Err(Error::WindowTooShort { len: a.len(), required: p.n2() });
    }
    if !a.contains(0) {
        return Err(Error::InvalidInput("the avoiding set must contain 0".into()));
    }
    if !a.is_avoiding(&build_m(p)) {
        return Err(Error::InvalidInput(format!("{a} is not M-avoiding")));
    }
    Ok(())
}

/// Computes I, the T_i and U; the window must hold `[0, n2)`, contain 0 and avoid M.
pub fn profile(a: &Window, p: &CanonicalParams) -> Result<Profile> {
    require_window(a, p)?;
    Ok(profile_unchecked(a, p))
}

pub(crate) fn profile_unchecked(a: &Window, p: &CanonicalParams) -> Profile {
    let s = build_s(p);
    let i_set = (1..p.b).filter(|&alpha| s.iter().all(|&x| !a.contains(alpha + x))).collect();
    let t_parts = (0..p.k)
        .map(|i| {
            let (lo, hi) = band(p, i);
            (lo..=hi).filter(|&x| a.contains(x)).collect()
        })
        .collect();
    let (lo, hi) = u_range(p);
    let u_set = (lo..=hi).filter(|&x| !a.contains(x)).collect();
    Profile { i_set, t_parts, u_set }
}

fn identities_hold(a: &Window, p: &CanonicalParams, pr: &Profile) -> bool {
    let (i, t, u) = (pr.i_set.len() as i64, pr.t_len() as i64, pr.u_set.len() as i64);
    let first = i64::from(a.count_below(p.n1())) == i64::from(p.b) - i + t;
    let second = i64::from(a.count_below(p.n2())) == i64::from(p.a) - u - i + t;
    first && second
}

/// `|A ∩ [0, n1)| = b - |I| + |T|` and `|A ∩ [0, n2)| = a - |U| - |I| + |T|`.
pub fn check_counting_identities(a: &Window, p: &CanonicalParams) -> Result<bool> {
    let pr = profile(a, p)?;
    Ok(identities_hold(a, p, &pr))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Counterexample { window: Window, detail: String },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub params: CanonicalParams,
    pub windows_checked: u64,
    pub outcome: Outcome,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.outcome == Outcome::Pass
    }
}

/// Runs `check` over every avoiding window of `[0, n2)` containing 0.
pub(crate) fn verify_windows<F>(p: &CanonicalParams, limits: &Limits, check: F) -> Result<VerificationReport>
where
    F: Fn(&Window) -> Option<String> + Sync + Send,
{
    let started = Instant::now();
    let scan = scan_windows(&build_m(p), p.n2(), true, limits, check)?;
    let outcome = match scan.first {
        None => Outcome::Pass,
        Some((window, detail)) => Outcome::Counterexample { window, detail },
    };
    Ok(VerificationReport { params: *p, windows_checked: scan.windows_checked, outcome, elapsed: started.elapsed() })
}

/// Both counting identities on every enumerated window.
pub fn verify_counting_identities(p: &CanonicalParams, limits: &Limits) -> Result<VerificationReport> {
    verify_windows(p, limits, |a| {
        let pr = profile_unchecked(a, p);
        (!identities_hold(a, p, &pr)).then(|| {
            format!(
                "|I| = {}, |T| = {}, |U| = {}, |A ∩ [0, n1)| = {}, |A ∩ [0, n2)| = {}",
                pr.i_set.len(),
                pr.t_len(),
                pr.u_set.len(),
                a.count_below(p.n1()),
                a.count_below(p.n2())
            )
        })
    })
}

pub(crate) fn require_proved_regime(p: &CanonicalParams, allow_conjecture: bool) -> Result<()> {
    if p.is_proved_regime() || allow_conjecture {
        Ok(())
    } else {
        Err(Error::UnsupportedRegime { k: p.k, m: p.m })
    }
}

/// `(k + m)|T| <= (k + m)|I| + k|U|` for every enumerated window.
///
/// Outside `k = 1 or m = 1` this needs `allow_conjecture`; a counterexample
/// there only rules out this route to the upper bound.
pub fn check_main_inequality(
    p: &CanonicalParams,
    limits: &Limits,
    allow_conjecture: bool,
) -> Result<VerificationReport> {
    require_proved_regime(p, allow_conjecture)?;
    let km = u64::from(p.k + p.m);
    verify_windows(p, limits, |a| {
        let pr = profile_unchecked(a, p);
        let (i, t, u) = (pr.i_set.len() as u64, pr.t_len() as u64, pr.u_set.len() as u64);
        let lhs = km * t;
        let rhs = km * i + u64::from(p.k) * u;
        (lhs > rhs).then(|| format!("(k+m)|T| = {lhs} > (k+m)|I| + k|U| = {rhs}"))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    /// No avoiding window beats `delta` at every candidate length.
    Certified { windows_checked: u64 },
    /// A window with `|A ∩ [0, n)| > delta * n` for every candidate `n`.
    Counterexample(Window),
}

/// Exhaustive averaging certificate: if every avoiding `A ∋ 0` has some
/// candidate `n` with `|A ∩ [0, n)| <= delta * n`, then the density of M is at
/// most `delta`.
pub fn haralambis_certify(
    m: &DifferenceSet,
    delta: ExactRational,
    candidates: &[u32],
    limits: &Limits,
) -> Result<Certificate> {
    if candidates.is_empty() || candidates.contains(&0) {
        return Err(Error::InvalidInput("candidate lengths must be nonempty and positive".into()));
    }
    if delta.num() <= 0 {
        return Err(Error::InvalidInput("delta must be positive".into()));
    }
    let len = *candidates.iter().max().expect("nonempty");
    let scan = scan_windows(m, len, true, limits, |a| {
        candidates
            .iter()
            .all(|&n| delta.cmp_scaled(u64::from(a.count_below(n)), u64::from(n)) == Ordering::Greater)
            .then_some(())
    })?;
    Ok(match scan.first {
        None => Certificate::Certified { windows_checked: scan.windows_checked },
        Some((w, ())) => Certificate::Counterexample(w),
    })
}

/// Bounds `(first, second)` of the two-case dichotomy for `1 <= r <= k + m`.
pub fn dichotomy_bounds(p: &CanonicalParams) -> Result<(i64, i64)> {
    let bd = conjectured_density(p);
    if bd.r == 0 {
        return Err(Error::InvalidInput("the dichotomy is only formulated for r >= 1".into()));
    }
    let (a, b, k, m, d) = (i64::from(p.a), i64::from(p.b), i64::from(p.k), i64::from(p.m), i64::from(bd.d));
    Ok(if bd.r <= p.m { (b + k * d, b + (k + 1) * d) } else { (a - (m + 1) * (d + 1), a - m * (d + 1)) })
}

/// Every window satisfies `b - |I| + |T| <= first` or `a - |U| - |I| + |T| <= second`.
pub fn check_two_ineq_dichotomy(p: &CanonicalParams, limits: &Limits) -> Result<VerificationReport> {
    let (first, second) = dichotomy_bounds(p)?;
    let (a, b) = (i64::from(p.a), i64::from(p.b));
    verify_windows(p, limits, |w| {
        let pr = profile_unchecked(w, p);
        let (i, t, u) = (pr.i_set.len() as i64, pr.t_len() as i64, pr.u_set.len() as i64);
        let lhs1 = b - i + t;
        let lhs2 = a - u - i + t;
        (lhs1 > first && lhs2 > second)
            .then(|| format!("b - |I| + |T| = {lhs1} > {first} and a - |U| - |I| + |T| = {lhs2} > {second}"))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(a: u32, b: u32, k: u32, m: u32) -> CanonicalParams {
        CanonicalParams::new(a, b, k, m).unwrap()
    }

    fn win(len: u32, e: &[u32]) -> Window {
        Window::from_elements(len, e).unwrap()
    }

    #[test]
    fn profile_examples() {
        let p = cp(5, 1, 1, 1);
        let pr = profile(&win(11, &[0, 3, 7, 10]), &p).unwrap();
        assert!(pr.i_set.is_empty());
        assert_eq!(pr.t(), vec![3]);
        assert_eq!(pr.u_set, vec![8, 9]);

        let p = cp(5, 2, 1, 1);
        let pr = profile(&win(12, &[0, 1]), &p).unwrap();
        assert!(pr.i_set.is_empty());
        assert!(pr.t().is_empty());
        assert_eq!(pr.u_set, vec![9, 10, 11]);

        let p = cp(5, 1, 1, 1);
        let pr = profile(&win(11, &[0]), &p).unwrap();
        assert_eq!(pr.u_set, vec![7, 8, 9, 10]);
        assert!(check_counting_identities(&win(11, &[0]), &p).unwrap());
    }

    #[test]
    fn profile_rejects_bad_windows() {
        let p = cp(5, 1, 1, 1);
        assert!(matches!(profile(&win(10, &[0]), &p), Err(Error::WindowTooShort { len: 10, required: 11 })));
        assert!(profile(&win(11, &[3]), &p).is_err());
        assert!(profile(&win(11, &[0, 5]), &p).is_err());
    }

    #[test]
    fn u_range_matches_definition() {
        let p = cp(5, 3, 1, 2);
        assert_eq!(u_range(&p), (5 + 9, 10 + 6 - 1));
    }

    #[test]
    fn main_inequality_regime_gate() {
        let p = cp(7, 2, 2, 2);
        assert!(matches!(check_main_inequality(&p, &Limits::default(), false), Err(Error::UnsupportedRegime { .. })));
    }

    #[test]
    fn dichotomy_bounds_examples() {
        assert_eq!(dichotomy_bounds(&cp(5, 1, 1, 1)).unwrap(), (2, 3));
        assert_eq!(dichotomy_bounds(&cp(3, 1, 1, 1)).unwrap(), (1, 2));
        assert!(dichotomy_bounds(&cp(4, 1, 1, 1)).is_err());
    }

    #[test]
    fn haralambis_small() {
        let m = DifferenceSet::new(vec![1]).unwrap();
        let l = Limits::default();
        assert!(matches!(
            haralambis_certify(&m, ExactRational::new(1, 2), &[2], &l).unwrap(),
            Certificate::Certified { .. }
        ));
        assert!(haralambis_certify(&m, ExactRational::new(1, 2), &[], &l).is_err());
    }
}
