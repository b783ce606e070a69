//! Howard's policy iteration for the maximum cycle mean, with exact values.
//!
//! A policy picks one outgoing edge per state. Under a policy every state
//! drains into a single cycle; its gain is that cycle's mean `p/q` (kept in
//! lowest terms) and its bias `h` satisfies `h(v) = w(v, s) - gain + h(s)` with
//! `h = 0` at one cycle vertex. Biases are stored multiplied by `q`, which makes
//! them integers and keeps them comparable between states of equal gain.

use crate::exec::Exec;
use crate::oracle::graph::{ShiftGraph, NONE};
use crate::rational::ExactRational;

const MAX_ROUNDS: usize = 100_000;

#[derive(Clone, Copy, PartialEq, Eq)]
struct Gain {
    num: i64,
    den: i64,
}

impl Gain {
    fn cmp(self, other: Gain) -> std::cmp::Ordering {
        (i128::from(self.num) * i128::from(other.den)).cmp(&(i128::from(other.num) * i128::from(self.den)))
    }
}

struct Evaluation {
    gain: Vec<Gain>,
    bias: Vec<i64>,
    /// One vertex of the best cycle.
    best_root: usize,
}

fn evaluate(g: &ShiftGraph, policy: &[u8]) -> Evaluation {
    let n = g.state_count();
    let target = |v: usize| g.succ[v][policy[v] as usize] as usize;
    const UNSEEN: u32 = 0;
    const DONE: u32 = u32::MAX;

    let mut mark = vec![UNSEEN; n];
    let mut gain = vec![Gain { num: 0, den: 1 }; n];
    let mut bias = vec![0i64; n];
    let mut best: Option<(Gain, usize)> = None;
    let mut path = Vec::new();

    for (stamp, root) in (1u32..).zip(0..n) {
        if mark[root] != UNSEEN {
            continue;
        }
        path.clear();
        let mut v = root;
        while mark[v] == UNSEEN {
            mark[v] = stamp;
            path.push(v);
            v = target(v);
        }
        let mut tail_len = path.len();
        if mark[v] == stamp {
            // closed a new cycle at v
            let start = path.iter().position(|&x| x == v).expect("v is on the current path");
            let mut cycle = path[start..].to_vec();
            let ones: i64 = cycle.iter().map(|&x| g.weight(target(x))).sum();
            let r = ExactRational::new(ones, cycle.len() as i64);
            let cg = Gain { num: r.num(), den: r.den() };
            // normalize at the smallest vertex so an unchanged cycle keeps its biases
            let low = (0..cycle.len()).min_by_key(|&i| cycle[i]).expect("cycle is nonempty");
            cycle.rotate_left(low);
            let v = cycle[0];
            bias[v] = 0;
            gain[v] = cg;
            for &x in cycle[1..].iter().rev() {
                let s = target(x);
                bias[x] = cg.den * g.weight(s) - cg.num + bias[s];
                gain[x] = cg;
            }
            if best.is_none_or(|(bg, _)| cg.cmp(bg).is_gt()) {
                best = Some((cg, v));
            }
            for &x in &cycle {
                mark[x] = DONE;
            }
            tail_len = start;
        }
        for &x in path[..tail_len].iter().rev() {
            let s = target(x);
            let sg = gain[s];
            gain[x] = sg;
            bias[x] = sg.den * g.weight(s) - sg.num + bias[s];
            mark[x] = DONE;
        }
    }
    Evaluation { gain, bias, best_root: best.expect("graph is nonempty").1 }
}

/// Returns the maximum cycle mean and one cycle attaining it.
pub(crate) fn solve(g: &ShiftGraph, exec: Exec) -> (ExactRational, Vec<usize>) {
    let mut policy: Vec<u8> = g.succ.iter().map(|s| u8::from(s[1] != NONE)).collect();
    for _ in 0..MAX_ROUNDS {
        let ev = evaluate(g, &policy);
        let mut next = policy.clone();
        exec.for_each_mut(&mut next, |v, choice| {
            let cur = *choice as usize;
            let alt = 1 - cur;
            let Some(s_alt) = Some(g.succ[v][alt]).filter(|&s| s != NONE).map(|s| s as usize) else {
                return;
            };
            let s_cur = g.succ[v][cur] as usize;
            let (g_cur, g_alt) = (ev.gain[s_cur], ev.gain[s_alt]);
            match g_alt.cmp(g_cur) {
                std::cmp::Ordering::Greater => *choice = alt as u8,
                std::cmp::Ordering::Less => {}
                std::cmp::Ordering::Equal => {
                    // equal reduced gains share the same bias scale
                    let val = |s: usize| g_cur.den * g.weight(s) + ev.bias[s];
                    if val(s_alt) > val(s_cur) {
                        *choice = alt as u8;
                    }
                }
            }
        });
        if next == policy {
            let gain = ev.gain[ev.best_root];
            let mut cycle = vec![ev.best_root];
            let mut v = g.succ[ev.best_root][policy[ev.best_root] as usize] as usize;
            while v != ev.best_root {
                cycle.push(v);
                v = g.succ[v][policy[v] as usize] as usize;
            }
            // order so that entries are the vertices entered along the cycle
            cycle.rotate_left(1);
            return (ExactRational::new(gain.num, gain.den), cycle);
        }
        policy = next;
    }
    panic!("policy iteration did not converge within {MAX_ROUNDS} rounds");
}
