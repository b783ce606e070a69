use densitypack::oracle::{
    count_avoiding_windows, enumerate_avoiding_windows, max_prefix_weight, mu_exact_with, Method, ShiftGraph,
};
use densitypack::{check_periodic_avoiding, mu_exact, DifferenceSet, Error, ExactRational, Exec, Limits, PeriodicSet};
use proptest::prelude::*;

mod common;
use common::{brute_avoiding_sets, ds, periodic_mu};

fn mu(m: &[u32]) -> ExactRational {
    mu_exact(&ds(m), &Limits::default()).unwrap().value
}

#[test]
fn golden_densities() {
    assert_eq!(mu(&[1, 5, 6]), ExactRational::new(2, 7));
    assert_eq!(mu(&[1, 4, 5]), ExactRational::new(1, 3));
    assert_eq!(mu(&[1, 3, 4]), ExactRational::new(2, 7));
    assert_eq!(mu(&[2, 3, 5, 6, 8]), ExactRational::new(1, 5));
    assert_eq!(mu(&[1]), ExactRational::new(1, 2));
    assert_eq!(mu(&[1, 2]), ExactRational::new(1, 3));
}

#[test]
fn enumeration_regression_count() {
    let windows: Vec<Vec<u32>> = enumerate_avoiding_windows(&ds(&[1, 5, 6]), 7, true, &Limits::default())
        .unwrap()
        .map(|w| w.elements())
        .collect();
    // lexicographic on membership bits with absent before present
    assert_eq!(windows, vec![vec![0], vec![0, 4], vec![0, 3], vec![0, 2], vec![0, 2, 4]]);
}

#[test]
fn enumeration_matches_brute_force() {
    let limits = Limits::default();
    for m in [vec![1], vec![2, 3], vec![1, 5, 6], vec![3, 4, 7], vec![2, 3, 5, 6, 8], vec![4, 9]] {
        for n in [1, 5, 9, 13] {
            for require_zero in [true, false] {
                let mut got: Vec<Vec<u32>> = enumerate_avoiding_windows(&ds(&m), n, require_zero, &limits)
                    .unwrap()
                    .map(|w| w.elements())
                    .collect();
                let mut want = brute_avoiding_sets(&m, n, require_zero);
                got.sort();
                want.sort();
                assert_eq!(got, want, "M = {m:?}, n = {n}, require_zero = {require_zero}");
                assert_eq!(count_avoiding_windows(&ds(&m), n, require_zero, &limits).unwrap(), want.len() as u64);
            }
        }
    }
}

#[test]
fn max_prefix_weight_matches_brute_force() {
    let limits = Limits::default();
    for m in [vec![1, 4, 5], vec![1], vec![2, 3, 5, 6, 8], vec![3, 5]] {
        for n in 1..=14 {
            for require_zero in [true, false] {
                let want = brute_avoiding_sets(&m, n, require_zero).iter().map(Vec::len).max().unwrap() as u32;
                assert_eq!(max_prefix_weight(&ds(&m), n, require_zero, &limits).unwrap(), want);
            }
        }
    }
}

#[test]
fn max_prefix_weight_band() {
    let limits = Limits::default();
    for m in [vec![1, 5, 6], vec![2, 3, 5, 6, 8], vec![3, 7]] {
        let set = ds(&m);
        let rho = mu_exact(&set, &limits).unwrap().value;
        let mut prev = 0;
        for n in 1..=22 {
            let w = max_prefix_weight(&set, n, true, &limits).unwrap();
            assert!(w >= prev);
            let ceil = (i64::from(n) * rho.num() + rho.den() - 1) / rho.den();
            assert!(i64::from(w) <= ceil + i64::from(set.max_element()));
            prev = w;
        }
    }
}

#[test]
fn optimum_can_need_a_long_period() {
    let m = [2, 6, 9, 11];
    let r = mu_exact(&ds(&m), &Limits::default()).unwrap();
    assert_eq!(r.value, ExactRational::new(5, 19));
    assert_eq!(r.witness.period, 38);
    assert_eq!(periodic_mu(&m, 22), ExactRational::new(1, 4));
    assert_eq!(periodic_mu(&m, 38), ExactRational::new(5, 19));
}

#[test]
fn every_small_set_matches_periodic_search() {
    let limits = Limits::default();
    for mask in 1u32..1 << 12 {
        let m: Vec<u32> = (0..12).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        let r = mu_exact(&ds(&m), &limits).unwrap();
        let short = 2 * m.last().unwrap();
        assert!(r.value >= periodic_mu(&m, short), "{m:?}");
        assert_eq!(r.value, periodic_mu(&m, short.max(r.witness.period)), "{m:?}");
        assert!(check_periodic_avoiding(&r.witness, &ds(&m)));
    }
}

#[test]
fn witness_check_examples() {
    let ps = |p, r: &[u32]| PeriodicSet::new(p, r.to_vec()).unwrap();
    assert!(check_periodic_avoiding(&ps(6, &[0, 3]), &ds(&[1, 4, 5])));
    assert!(!check_periodic_avoiding(&ps(7, &[0, 2]), &ds(&[1, 5, 6])));
    assert!(check_periodic_avoiding(&ps(2, &[0]), &ds(&[1])));
}

#[test]
fn resource_limits_are_errors() {
    let limits = Limits::default();
    assert!(matches!(mu_exact(&ds(&[23]), &limits), Err(Error::ResourceLimit(_))));
    let tight = Limits { max_states: 4, ..limits };
    assert!(matches!(mu_exact(&ds(&[1, 5, 6]), &tight), Err(Error::ResourceLimit(_))));
    assert!(matches!(max_prefix_weight(&ds(&[1]), 27, true, &limits), Err(Error::ResourceLimit(_))));
}

#[test]
fn sequential_and_parallel_agree() {
    let seq = Limits { exec: Exec::Sequential, ..Limits::default() };
    let par = Limits { exec: Exec::Parallel, ..Limits::default() };
    for m in [vec![1, 5, 6], vec![3, 4, 7, 10, 11, 14], vec![5, 7, 12, 17]] {
        let set = ds(&m);
        assert_eq!(mu_exact(&set, &seq).unwrap(), mu_exact(&set, &par).unwrap());
        assert_eq!(
            count_avoiding_windows(&set, 20, true, &seq).unwrap(),
            count_avoiding_windows(&set, 20, true, &par).unwrap()
        );
    }
}

fn diff_set() -> impl Strategy<Value = Vec<u32>> {
    prop::collection::btree_set(1u32..=12, 1..=4).prop_map(|s| s.into_iter().collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn oracle_matches_periodic_search(m in diff_set()) {
        let set = ds(&m);
        let r = mu_exact(&set, &Limits::default()).unwrap();
        let short = 2 * set.max_element();
        prop_assert!(r.value >= periodic_mu(&m, short));
        prop_assert_eq!(r.value, periodic_mu(&m, short.max(r.witness.period)));
    }

    #[test]
    fn witness_is_valid(m in diff_set()) {
        let set = ds(&m);
        for method in [Method::Karp, Method::PolicyIteration] {
            let r = mu_exact_with(&set, &Limits::default(), method).unwrap();
            prop_assert!(check_periodic_avoiding(&r.witness, &set));
            prop_assert_eq!(r.witness.density(), r.value);
            prop_assert_eq!(r.states_explored, ShiftGraph::build(&set, &Limits::default()).unwrap().state_count() as u64);
        }
    }

    #[test]
    fn karp_and_policy_iteration_agree(m in diff_set()) {
        let set = ds(&m);
        let karp = mu_exact_with(&set, &Limits::default(), Method::Karp).unwrap().value;
        let howard = mu_exact_with(&set, &Limits::default(), Method::PolicyIteration).unwrap().value;
        prop_assert_eq!(karp, howard);
    }

    #[test]
    fn monotone_under_inclusion(m in diff_set(), extra in 1u32..=12) {
        let mut bigger = m.clone();
        bigger.push(extra);
        let big = DifferenceSet::new(bigger).unwrap();
        prop_assert!(ds(&m).is_subset(&big));
        prop_assert!(mu(&m) >= mu_exact(&big, &Limits::default()).unwrap().value);
    }

    #[test]
    fn scaling_invariance(m in prop::collection::btree_set(1u32..=4, 1..=3), g in 2u32..=3) {
        let m: Vec<u32> = m.into_iter().collect();
        let scaled = ds(&m).scaled(g);
        prop_assert_eq!(mu(&m), mu_exact(&scaled, &Limits::default()).unwrap().value);
    }
}
