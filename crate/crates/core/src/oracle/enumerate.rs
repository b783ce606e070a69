//! Enumeration of M-avoiding subsets of `[0, n)`.
//!
//! Windows are produced in lexicographic order of the membership sequence
//! `(b_0, b_1, ..., b_{n-1})` with "absent" ordered before "present". Every
//! report that names a first counterexample refers to this order.

use std::sync::atomic::{AtomicUsize, Ordering};

use crate::error::{Error, Result};
use crate::family::DifferenceSet;
use crate::oracle::Limits;
use crate::window::Window;

/// Shard prefixes cover at most this many free positions.
const SHARD_DEPTH: u32 = 10;

/// `conflicts[x]` has bit `x - d` set for each `d` in M with `d <= x`.
fn conflict_masks(m: &DifferenceSet, n: u32) -> Vec<u64> {
    (0..n).map(|x| m.elements().iter().take_while(|&&d| d <= x).fold(0u64, |acc, &d| acc | 1 << (x - d))).collect()
}

/// Lexicographic stream of avoiding windows sharing a fixed prefix.
#[derive(Clone, Debug)]
pub struct AvoidingWindows {
    n: u32,
    fixed: u32,
    conflicts: Vec<u64>,
    next: Option<u64>,
}

impl AvoidingWindows {
    fn with_prefix(conflicts: Vec<u64>, n: u32, fixed: u32, prefix: u64) -> Self {
        AvoidingWindows { n, fixed, conflicts, next: Some(prefix) }
    }

    fn advance(&self, bits: u64) -> Option<u64> {
        for x in (self.fixed..self.n).rev() {
            if bits >> x & 1 == 1 {
                continue;
            }
            let low = bits & ((1u64 << x) - 1);
            if self.conflicts[x as usize] & low == 0 {
                return Some(low | 1 << x);
            }
        }
        None
    }
}

impl Iterator for AvoidingWindows {
    type Item = Window;

    fn next(&mut self) -> Option<Window> {
        let bits = self.next?;
        self.next = self.advance(bits);
        Some(Window::from_parts(self.n, bits))
    }
}

fn check_enumeration_len(n: u32, require_zero: bool, limits: &Limits) -> Result<()> {
    if n > limits.enumeration_cap {
        return Err(Error::ResourceLimit(format!(
            "window length {n} exceeds the enumeration cap {}",
            limits.enumeration_cap
        )));
    }
    if n == 0 && require_zero {
        return Err(Error::InvalidInput("cannot require 0 in an empty window".into()));
    }
    Ok(())
}

/// Every M-avoiding subset of `[0, n)` exactly once (those containing 0 when
/// `require_zero`), in the documented lexicographic order.
pub fn enumerate_avoiding_windows(
    m: &DifferenceSet,
    n: u32,
    require_zero: bool,
    limits: &Limits,
) -> Result<AvoidingWindows> {
    check_enumeration_len(n, require_zero, limits)?;
    Ok(unchecked_windows(m, n, require_zero))
}

pub(crate) fn unchecked_windows(m: &DifferenceSet, n: u32, require_zero: bool) -> AvoidingWindows {
    let fixed = u32::from(require_zero);
    AvoidingWindows::with_prefix(conflict_masks(m, n), n, fixed, u64::from(require_zero))
}

/// Result of scanning every enumerated window with a checker.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanOutcome<D> {
    /// Windows examined up to and including the first counterexample.
    pub windows_checked: u64,
    pub first: Option<(Window, D)>,
}

struct ShardResult<D> {
    checked: u64,
    first: Option<(Window, D)>,
}

/// Runs `check` on every avoiding window of `[0, n)` and returns the first
/// window (in enumeration order) for which it yields `Some`.
///
/// The parallel path splits the enumeration by prefix; the merged result is
/// identical to the sequential one.
pub fn scan_windows<D, F>(
    m: &DifferenceSet,
    n: u32,
    require_zero: bool,
    limits: &Limits,
    check: F,
) -> Result<ScanOutcome<D>>
where
    D: Send,
    F: Fn(&Window) -> Option<D> + Sync + Send,
{
    check_enumeration_len(n, require_zero, limits)?;
    let conflicts = conflict_masks(m, n);
    let fixed = u32::from(require_zero);
    let depth = (fixed + SHARD_DEPTH).min(n);

    let prefixes: Vec<u64> = if limits.exec.is_parallel() {
        AvoidingWindows::with_prefix(conflicts[..depth as usize].to_vec(), depth, fixed, u64::from(require_zero))
            .map(|w| w.bits())
            .collect()
    } else {
        vec![u64::from(require_zero)]
    };
    let shard_fixed = if limits.exec.is_parallel() { depth } else { fixed };

    let first_failure = AtomicUsize::new(usize::MAX);
    let indexed: Vec<(usize, u64)> = prefixes.into_iter().enumerate().collect();
    let results = limits.exec.map(&indexed, |&(idx, prefix)| {
        if idx > first_failure.load(Ordering::Relaxed) {
            return ShardResult { checked: 0, first: None };
        }
        let mut checked = 0;
        for w in AvoidingWindows::with_prefix(conflicts.clone(), n, shard_fixed, prefix) {
            checked += 1;
            if let Some(detail) = check(&w) {
                first_failure.fetch_min(idx, Ordering::Relaxed);
                return ShardResult { checked, first: Some((w, detail)) };
            }
        }
        ShardResult { checked, first: None }
    });

    let mut windows_checked = 0;
    for r in results {
        windows_checked += r.checked;
        if r.first.is_some() {
            return Ok(ScanOutcome { windows_checked, first: r.first });
        }
    }
    Ok(ScanOutcome { windows_checked, first: None })
}

/// Number of avoiding windows of `[0, n)`.
pub fn count_avoiding_windows(m: &DifferenceSet, n: u32, require_zero: bool, limits: &Limits) -> Result<u64> {
    scan_windows(m, n, require_zero, limits, |_| None::<()>).map(|o| o.windows_checked)
}

/// Maximum `|A ∩ [0, n)|` over M-avoiding `A` (containing 0 when `require_zero`).
///
/// Depth-first search over positions in increasing order with the bound
/// `count + best[remaining]`, where `best[r]` is the optimum for an interval
/// of length `r`; the table is filled for increasing `r` so every bound used
/// is already exact.
pub fn max_prefix_weight(m: &DifferenceSet, n: u32, require_zero: bool, limits: &Limits) -> Result<u32> {
    check_enumeration_len(n, require_zero, limits)?;
    let conflicts = conflict_masks(m, n);
    let mut best = vec![0u32; n as usize + 1];
    for r in 1..=n {
        // upper bound while r itself is being solved
        best[r as usize] = best[r as usize - 1] + 1;
        best[r as usize] = Doll { conflicts: &conflicts, best: &best, len: r, incumbent: 0 }.solve(0, 0);
    }
    if !require_zero || n == 0 {
        return Ok(best[n as usize]);
    }
    Ok(Doll { conflicts: &conflicts, best: &best, len: n, incumbent: 0 }.solve(1, 1))
}

struct Doll<'a> {
    conflicts: &'a [u64],
    best: &'a [u32],
    len: u32,
    incumbent: u32,
}

impl Doll<'_> {
    fn solve(&mut self, start: u32, bits: u64) -> u32 {
        self.dfs(start, bits, bits.count_ones());
        self.incumbent
    }

    fn dfs(&mut self, x: u32, bits: u64, count: u32) {
        if x == self.len {
            self.incumbent = self.incumbent.max(count);
            return;
        }
        if count + self.best[(self.len - x) as usize] <= self.incumbent {
            return;
        }
        if self.conflicts[x as usize] & bits == 0 {
            self.dfs(x + 1, bits | 1 << x, count + 1);
        }
        self.dfs(x + 1, bits, count);
    }
}
