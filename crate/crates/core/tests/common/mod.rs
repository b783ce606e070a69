//! Reference computations that share no code with the library's search paths.
#![allow(dead_code)]

use densitypack::{CanonicalParams, DifferenceSet, ExactRational};

/// Largest `|X| / p` over periods `p <= max_period` and residue sets `X ⊂ Z_p`
/// with `x - y ≢ ±d (mod p)` for all `x, y ∈ X`, `d ∈ M`. Exhaustive search
/// over independent sets of the circulant graph on `Z_p`.
pub fn periodic_mu(m: &[u32], max_period: u32) -> ExactRational {
    let mut best = ExactRational::new(0, 1);
    for p in 1..=max_period {
        let count = circulant_independence(m, p);
        let cand = ExactRational::new(count as i64, p as i64);
        if cand > best {
            best = cand;
        }
    }
    best
}

/// Independence number of the circulant graph `Cay(Z_p, ±M)`; 0 when some
/// element of M is a multiple of p (every vertex has a loop).
pub fn circulant_independence(m: &[u32], p: u32) -> u32 {
    if m.iter().any(|&d| d % p == 0) {
        return 0;
    }
    let forbidden: Vec<bool> = (0..p).map(|r| m.iter().any(|&d| d % p == r || (p - d % p) % p == r)).collect();
    // vertex-transitive: some maximum set contains 0
    let mut chosen = vec![0u32];
    let mut best = 1;
    extend(&forbidden, p, 1, &mut chosen, &mut best);
    best
}

fn extend(forbidden: &[bool], p: u32, from: u32, chosen: &mut Vec<u32>, best: &mut u32) {
    *best = (*best).max(chosen.len() as u32);
    if chosen.len() as u32 + (p - from) <= *best {
        return;
    }
    for x in from..p {
        if chosen.len() as u32 + (p - x) <= *best {
            return;
        }
        if chosen.iter().all(|&y| !forbidden[((x - y) % p) as usize]) {
            chosen.push(x);
            extend(forbidden, p, x + 1, chosen, best);
            chosen.pop();
        }
    }
}

/// Every subset of `[0, n)` (as a sorted element list) with no difference in M,
/// by checking all `2^n` masks pairwise.
pub fn brute_avoiding_sets(m: &[u32], n: u32, require_zero: bool) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    for mask in 0u64..(1 << n) {
        if require_zero && mask & 1 == 0 {
            continue;
        }
        let elems: Vec<u32> = (0..n).filter(|&x| mask >> x & 1 == 1).collect();
        let ok = elems.iter().all(|&x| elems.iter().all(|&y| y <= x || !m.contains(&(y - x))));
        if ok {
            out.push(elems);
        }
    }
    out
}

/// Every canonical instance `b < a`, `gcd(a, b) = 1` selected by `keep`.
pub fn canonical_instances(a_max: u32, km_max: u32, keep: impl Fn(&CanonicalParams) -> bool) -> Vec<CanonicalParams> {
    let mut out = Vec::new();
    for a in 2..=a_max {
        for b in 1..a {
            if gcd(a, b) != 1 {
                continue;
            }
            for k in 1..=km_max {
                for m in 1..=km_max {
                    let p = CanonicalParams::new(a, b, k, m).unwrap();
                    if keep(&p) {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

pub fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn ds(v: &[u32]) -> DifferenceSet {
    DifferenceSet::new(v.to_vec()).unwrap()
}
