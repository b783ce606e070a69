//! Finite subsets of `[0, len)` stored as bit patterns.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::family::DifferenceSet;

/// Longest window a `u64` pattern can hold.
pub const MAX_WINDOW_LEN: u32 = 64;

/// A subset of `[0, len)`; bit `i` is set iff `i` belongs to the set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Window {
    len: u32,
    bits: u64,
}

fn low_mask(n: u32) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl Window {
    pub fn new(len: u32, bits: u64) -> Result<Self> {
        if len > MAX_WINDOW_LEN {
            return Err(Error::InvalidInput(format!("window length {len} exceeds {MAX_WINDOW_LEN}")));
        }
        if bits & !low_mask(len) != 0 {
            return Err(Error::InvalidInput(format!("bit pattern {bits:#x} does not fit length {len}")));
        }
        Ok(Window { len, bits })
    }

    pub(crate) fn from_parts(len: u32, bits: u64) -> Self {
        debug_assert!(len <= MAX_WINDOW_LEN && bits & !low_mask(len) == 0);
        Window { len, bits }
    }

    pub fn from_elements(len: u32, elements: &[u32]) -> Result<Self> {
        let mut bits = 0u64;
        for &x in elements {
            if x >= len {
                return Err(Error::InvalidInput(format!("element {x} outside window [0, {len})")));
            }
            bits |= 1 << x;
        }
        Window::new(len, bits)
    }

    pub fn len(&self) -> u32 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    /// False for positions outside the window.
    pub fn contains(&self, x: u32) -> bool {
        x < self.len && self.bits >> x & 1 == 1
    }

    /// `|A ∩ [0, n)|`
    pub fn count_below(&self, n: u32) -> u32 {
        (self.bits & low_mask(n)).count_ones()
    }

    pub fn count(&self) -> u32 {
        self.bits.count_ones()
    }

    pub fn elements(&self) -> Vec<u32> {
        (0..self.len).filter(|&x| self.contains(x)).collect()
    }

    /// No two members differ by an element of `m`.
    pub fn is_avoiding(&self, m: &DifferenceSet) -> bool {
        m.elements().iter().take_while(|&&d| d < self.len).all(|&d| self.bits & (self.bits >> d) == 0)
    }

    /// Same set viewed in a longer window.
    pub fn extended(&self, len: u32) -> Result<Self> {
        if len < self.len {
            return Err(Error::InvalidInput("cannot shrink a window by extension".into()));
        }
        Window::new(len, self.bits)
    }
}

impl fmt::Debug for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Window[{}]{:?}", self.len, self.elements())
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let elems: Vec<String> = self.elements().iter().map(u32::to_string).collect();
        write!(f, "{{{}}} in [0, {})", elems.join(", "), self.len)
    }
}
