//! Exact maximum density of M-avoiding sets, with periodic witnesses.
//!
//! `mu_exact` builds the sliding-window graph and computes its maximum cycle
//! mean: Karp's recurrence for graphs up to `Limits::karp_max_states`, policy
//! iteration above that. The optimal cycle, read as a bit sequence, is a
//! periodic M-avoiding set attaining the density.

mod enumerate;
mod graph;
mod howard;
mod karp;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::family::DifferenceSet;
use crate::rational::ExactRational;

pub use enumerate::{
    count_avoiding_windows, enumerate_avoiding_windows, max_prefix_weight, scan_windows, AvoidingWindows, ScanOutcome,
};
pub use graph::ShiftGraph;

/// Environment variable overriding `Limits::max_states`.
pub const MAX_STATES_ENV: &str = "DENSITYPACK_MAX_STATES";

/// Resource bounds shared by the oracle and the verifiers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Hard cap on admissible window states in the shift graph.
    pub max_states: usize,
    /// Largest `max(M)` the oracle accepts.
    pub window_cap: u32,
    /// Longest window the enumerators accept.
    pub enumeration_cap: u32,
    /// Graphs with at most this many states use Karp, larger ones policy iteration.
    pub karp_max_states: usize,
    pub exec: Exec,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_states: 1 << 22,
            window_cap: 22,
            enumeration_cap: 26,
            karp_max_states: 1 << 16,
            exec: Exec::default(),
        }
    }
}

impl Limits {
    /// Defaults, with `max_states` taken from `DENSITYPACK_MAX_STATES` when set.
    pub fn from_env() -> Result<Self> {
        let mut limits = Limits::default();
        if let Ok(raw) = std::env::var(MAX_STATES_ENV) {
            limits.max_states = match raw.trim().parse::<usize>() {
                Ok(v) if v > 0 => v,
                _ => {
                    return Err(Error::InvalidInput(format!(
                        "{MAX_STATES_ENV} must be a positive integer, got {raw:?}"
                    )))
                }
            };
        }
        Ok(limits)
    }
}

/// `residues + period * Z`
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PeriodicSet {
    pub period: u32,
    pub residues: Vec<u32>,
}

impl PeriodicSet {
    pub fn new(period: u32, mut residues: Vec<u32>) -> Result<Self> {
        if period == 0 {
            return Err(Error::InvalidInput("period must be positive".into()));
        }
        residues.sort_unstable();
        residues.dedup();
        if residues.last().is_some_and(|&r| r >= period) {
            return Err(Error::InvalidInput(format!("residues must lie in [0, {period})")));
        }
        Ok(PeriodicSet { period, residues })
    }

    pub fn density(&self) -> ExactRational {
        ExactRational::new(self.residues.len() as i64, i64::from(self.period))
    }

    /// Builds the set from one period of a 0/1 sequence, reduced to its
    /// primitive period and rotated so that 0 is a member.
    pub fn from_bits(bits: &[bool]) -> Self {
        let n = bits.len();
        let period = (1..=n)
            .filter(|&p| n.is_multiple_of(p))
            .find(|&p| (0..n).all(|i| bits[i] == bits[(i + p) % n]))
            .unwrap_or(n);
        let shift = bits[..period].iter().position(|&b| b).unwrap_or(0);
        let residues = (0..period).filter(|&i| bits[(i + shift) % period]).map(|i| i as u32).collect();
        PeriodicSet { period: period as u32, residues }
    }
}

pub fn check_periodic_avoiding(s: &PeriodicSet, m: &DifferenceSet) -> bool {
    let p = u64::from(s.period);
    let member = |x: u64| s.residues.binary_search(&((x % p) as u32)).is_ok();
    s.residues.iter().all(|&x| m.elements().iter().all(|&d| !member(u64::from(x) + u64::from(d))))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Method {
    Karp,
    PolicyIteration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExactDensity {
    pub value: ExactRational,
    pub witness: PeriodicSet,
    pub states_explored: u64,
    pub method: Method,
}

/// The maximum density of M-avoiding subsets of the integers.
pub fn mu_exact(m: &DifferenceSet, limits: &Limits) -> Result<ExactDensity> {
    let g = ShiftGraph::build(m, limits)?;
    let method = if g.state_count() <= limits.karp_max_states { Method::Karp } else { Method::PolicyIteration };
    Ok(solve_graph(&g, method, limits.exec))
}

/// `mu_exact` with the algorithm chosen by the caller.
pub fn mu_exact_with(m: &DifferenceSet, limits: &Limits, method: Method) -> Result<ExactDensity> {
    let g = ShiftGraph::build(m, limits)?;
    Ok(solve_graph(&g, method, limits.exec))
}

fn solve_graph(g: &ShiftGraph, method: Method, exec: Exec) -> ExactDensity {
    let (value, cycle) = match method {
        Method::Karp => {
            let value = karp::max_cycle_mean(g, exec);
            (value, karp::critical_cycle(g, value, exec))
        }
        Method::PolicyIteration => howard::solve(g, exec),
    };
    let bits: Vec<bool> = cycle.iter().map(|&v| g.weight(v) == 1).collect();
    let witness = PeriodicSet::from_bits(&bits);
    debug_assert_eq!(witness.density(), value);
    ExactDensity { value, witness, states_explored: g.state_count() as u64, method }
}
