//! Execution strategy for the data-parallel loops.
//!
//! With the `parallel` feature the helpers dispatch to rayon; without it every
//! strategy runs on the calling thread. `Exec` is a runtime value so that both
//! paths can be compared in one benchmark binary.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Minimum number of items handed to one rayon task.
#[cfg(feature = "parallel")]
const MIN_CHUNK: usize = 4096;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Exec {
    Sequential,
    #[default]
    Parallel,
}

impl Exec {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Exec::Parallel
    }

    /// Whether an elementwise loop of `len` items is worth splitting.
    #[cfg(feature = "parallel")]
    fn splits(self, len: usize) -> bool {
        self.is_parallel() && len >= 2 * MIN_CHUNK && rayon::current_num_threads() > 1
    }

    /// Writes `f(i)` into `out[i]` for every index.
    pub fn fill<T, F>(self, out: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.splits(out.len()) {
            out.par_iter_mut().with_min_len(MIN_CHUNK).enumerate().for_each(|(i, slot)| *slot = f(i));
            return;
        }
        for (i, slot) in out.iter_mut().enumerate() {
            *slot = f(i);
        }
    }

    /// Calls `f(i, &mut out[i])` for every index.
    pub fn for_each_mut<T, F>(self, out: &mut [T], f: F)
    where
        T: Send,
        F: Fn(usize, &mut T) + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.splits(out.len()) {
            out.par_iter_mut().with_min_len(MIN_CHUNK).enumerate().for_each(|(i, slot)| f(i, slot));
            return;
        }
        for (i, slot) in out.iter_mut().enumerate() {
            f(i, slot);
        }
    }

    /// Maps every item in order. Items are coarse units of work (shards,
    /// instances), so no minimum chunk length is applied.
    pub fn map<I, O, F>(self, items: &[I], f: F) -> Vec<O>
    where
        I: Sync,
        O: Send,
        F: Fn(&I) -> O + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.is_parallel() {
            return items.par_iter().map(f).collect();
        }
        items.iter().map(f).collect()
    }

    /// Reduces `f(i)` over `0..n` with an associative, commutative `combine`.
    pub fn reduce_range<T, F, C>(self, n: usize, identity: T, f: F, combine: C) -> T
    where
        T: Send + Sync + Clone,
        F: Fn(usize) -> T + Sync + Send,
        C: Fn(T, T) -> T + Sync + Send,
    {
        #[cfg(feature = "parallel")]
        if self.splits(n) {
            return (0..n).into_par_iter().with_min_len(MIN_CHUNK).map(f).reduce(|| identity.clone(), &combine);
        }
        (0..n).map(f).fold(identity, combine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_paths_agree() {
        for exec in [Exec::Sequential, Exec::Parallel] {
            let mut out = vec![0u64; 5000];
            exec.fill(&mut out, |i| (i * i) as u64);
            assert_eq!(out[4999], 4999 * 4999);
            let v = exec.map(&[1, 2, 3], |x| x * 10);
            assert_eq!(v, vec![10, 20, 30]);
            let s = exec.reduce_range(10_000, 0u64, |i| i as u64, |a, b| a + b);
            assert_eq!(s, 49_995_000);
        }
    }
}
