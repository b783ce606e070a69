//! The sliding-window graph of M-avoiding patterns.
//!
//! Vertices are the M-avoiding windows of length `L = max(M)`, bit 0 being the
//! oldest position. An edge appends one new position on the right and drops
//! the oldest; it exists when the new element conflicts with nothing in the
//! current window. Because a conflict never reaches back further than `L`,
//! bi-infinite walks are exactly the M-avoiding subsets of the integers, and
//! the maximum cycle mean of the new-bit weights is their maximum density.

use crate::error::{Error, Result};
use crate::family::DifferenceSet;
use crate::oracle::enumerate::unchecked_windows;
use crate::oracle::Limits;

pub(crate) const NONE: u32 = u32::MAX;

#[derive(Clone, Debug)]
pub struct ShiftGraph {
    pub(crate) len: u32,
    pub(crate) states: Vec<u64>,
    /// `succ[v][bit]`, `NONE` when appending `bit` is not allowed.
    pub(crate) succ: Vec<[u32; 2]>,
    /// Up to two predecessors per vertex, `NONE`-padded.
    pub(crate) pred: Vec<[u32; 2]>,
}

impl ShiftGraph {
    pub fn build(m: &DifferenceSet, limits: &Limits) -> Result<Self> {
        let len = m.max_element();
        if len > limits.window_cap {
            return Err(Error::ResourceLimit(format!("max(M) = {len} exceeds the window cap {}", limits.window_cap)));
        }
        let mut states = Vec::new();
        for w in unchecked_windows(m, len, false) {
            if states.len() >= limits.max_states {
                return Err(Error::ResourceLimit(format!("more than {} admissible states", limits.max_states)));
            }
            states.push(w.bits());
        }

        let mut index = vec![NONE; 1usize << len];
        for (i, &s) in states.iter().enumerate() {
            index[s as usize] = i as u32;
        }
        // new element at position len conflicts with position len - d
        let top_conflicts = m.elements().iter().fold(0u64, |acc, &d| acc | 1 << (len - d));
        let top = 1u64 << (len - 1);

        let succ: Vec<[u32; 2]> = states
            .iter()
            .map(|&s| {
                let zero = index[(s >> 1) as usize];
                let one = if s & top_conflicts == 0 { index[((s >> 1) | top) as usize] } else { NONE };
                debug_assert!(zero != NONE);
                [zero, one]
            })
            .collect();

        let mut pred = vec![[NONE; 2]; states.len()];
        for (u, s) in succ.iter().enumerate() {
            for &v in s.iter().filter(|&&v| v != NONE) {
                let slot = &mut pred[v as usize];
                let free = if slot[0] == NONE { 0 } else { 1 };
                debug_assert!(slot[free] == NONE, "in-degree exceeds two");
                slot[free] = u as u32;
            }
        }
        Ok(ShiftGraph { len, states, succ, pred })
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    /// Weight of every edge entering `v`: the bit it appended.
    pub(crate) fn weight(&self, v: usize) -> i64 {
        (self.states[v] >> (self.len - 1) & 1) as i64
    }

    pub(crate) fn preds(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.pred[v].iter().filter(|&&u| u != NONE).map(|&u| u as usize)
    }

    pub(crate) fn succs(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[v].iter().filter(|&&u| u != NONE).map(|&u| u as usize)
    }
}
