//! Karp's maximum cycle mean on the shift graph, in exact integer arithmetic.
//!
//! `F_k(v)` is the heaviest walk of exactly `k` edges ending at `v`, starting
//! anywhere. The maximum cycle mean is
//! `max_v min_{0 <= k < n} (F_n(v) - F_k(v)) / (n - k)` with `n = |V|`.
//! Storing the whole table is quadratic in memory, so `F_n` is computed in a
//! first pass and the `F_k` rows are regenerated in a second pass.

use crate::exec::Exec;
use crate::oracle::graph::ShiftGraph;
use crate::rational::ExactRational;

fn step(g: &ShiftGraph, exec: Exec, cur: &[i64], next: &mut [i64]) {
    exec.fill(next, |v| {
        let best_pred = g.preds(v).map(|u| cur[u]).max().expect("every state has a predecessor");
        g.weight(v) + best_pred
    });
}

/// `a/b < c/d` for positive denominators.
fn less(a: (i64, i64), c: (i64, i64)) -> bool {
    i128::from(a.0) * i128::from(c.1) < i128::from(c.0) * i128::from(a.1)
}

pub(crate) fn max_cycle_mean(g: &ShiftGraph, exec: Exec) -> ExactRational {
    let n = g.state_count();
    let mut cur = vec![0i64; n];
    let mut next = vec![0i64; n];
    for _ in 0..n {
        step(g, exec, &cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
    }
    let last = cur;

    let mut cur = vec![0i64; n];
    let mut best: Vec<(i64, i64)> = last.iter().map(|&f| (f, n as i64)).collect();
    for k in 1..n {
        step(g, exec, &cur, &mut next);
        std::mem::swap(&mut cur, &mut next);
        let span = (n - k) as i64;
        exec.for_each_mut(&mut best, |v, b| {
            let cand = (last[v] - cur[v], span);
            if less(cand, *b) {
                *b = cand;
            }
        });
    }

    let (num, den) = exec.reduce_range(n, (i64::MIN / 4, 1), |v| best[v], |x, y| if less(x, y) { y } else { x });
    ExactRational::new(num, den)
}

/// A cycle whose mean is exactly `lambda`, which must be the maximum cycle mean.
///
/// With edge costs `q * bit - p` no cycle is positive, so longest-walk
/// potentials `pi` converge; every edge of an optimal cycle is tight
/// (`pi(u) + c = pi(v)`) and every cycle made of tight edges has total cost 0.
pub(crate) fn critical_cycle(g: &ShiftGraph, lambda: ExactRational, exec: Exec) -> Vec<usize> {
    let n = g.state_count();
    let (p, q) = (lambda.num(), lambda.den());
    let cost = |v: usize| q * g.weight(v) - p;

    let mut pi = vec![0i64; n];
    let mut next = vec![0i64; n];
    let mut rounds = 0;
    loop {
        exec.fill(&mut next, |v| {
            let via = g.preds(v).map(|u| pi[u]).max().expect("every state has a predecessor") + cost(v);
            pi[v].max(via)
        });
        let changed = exec.reduce_range(n, false, |v| next[v] != pi[v], |a, b| a || b);
        std::mem::swap(&mut pi, &mut next);
        if !changed {
            break;
        }
        rounds += 1;
        assert!(rounds <= n + 1, "potentials diverged: {lambda} is not the maximum cycle mean");
    }

    let tight = |u: usize, v: usize| pi[u] + cost(v) == pi[v];
    find_cycle(n, |u| g.succs(u).filter(move |&v| tight(u, v))).expect("an optimal cycle consists of tight edges")
}

/// Any directed cycle in the subgraph given by `edges`, in traversal order.
pub(crate) fn find_cycle<I, E>(n: usize, edges: E) -> Option<Vec<usize>>
where
    I: Iterator<Item = usize>,
    E: Fn(usize) -> I,
{
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; n];
    let mut stack: Vec<(usize, Vec<usize>)> = Vec::new();
    for root in 0..n {
        if color[root] != WHITE {
            continue;
        }
        color[root] = GRAY;
        stack.push((root, edges(root).collect()));
        while let Some((v, pending)) = stack.last_mut() {
            let v = *v;
            match pending.pop() {
                Some(w) if color[w] == GRAY => {
                    let start = stack.iter().position(|(x, _)| *x == w).expect("gray vertices are on the stack");
                    return Some(stack[start..].iter().map(|(x, _)| *x).collect());
                }
                Some(w) if color[w] == WHITE => {
                    color[w] = GRAY;
                    stack.push((w, edges(w).collect()));
                }
                Some(_) => {}
                None => {
                    color[v] = BLACK;
                    stack.pop();
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::DifferenceSet;
    use crate::oracle::Limits;

    fn mean(m: &[u32]) -> ExactRational {
        let g = ShiftGraph::build(&DifferenceSet::new(m.to_vec()).unwrap(), &Limits::default()).unwrap();
        max_cycle_mean(&g, Exec::Sequential)
    }

    #[test]
    fn known_values() {
        assert_eq!(mean(&[1]), ExactRational::new(1, 2));
        assert_eq!(mean(&[1, 2]), ExactRational::new(1, 3));
        assert_eq!(mean(&[1, 5, 6]), ExactRational::new(2, 7));
    }

    #[test]
    fn cycle_finder() {
        let adj = [vec![1], vec![2], vec![1]];
        let c = find_cycle(3, |u| adj[u].clone().into_iter()).unwrap();
        assert_eq!(c.len(), 2);
        let dag = [vec![1, 2], vec![2], vec![]];
        assert!(find_cycle(3, |u| dag[u].clone().into_iter()).is_none());
    }

    #[test]
    fn critical_cycle_has_the_mean() {
        let m = DifferenceSet::new(vec![2, 3, 5, 6, 8]).unwrap();
        let g = ShiftGraph::build(&m, &Limits::default()).unwrap();
        let lambda = max_cycle_mean(&g, Exec::Sequential);
        let cycle = critical_cycle(&g, lambda, Exec::Sequential);
        let ones: i64 = cycle.iter().map(|&v| g.weight(v)).sum();
        assert_eq!(ExactRational::new(ones, cycle.len() as i64), lambda);
    }
}
