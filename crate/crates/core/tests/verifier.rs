use densitypack::oracle::enumerate_avoiding_windows;
use densitypack::profile::{
    check_counting_identities, check_main_inequality, check_two_ineq_dichotomy, dichotomy_bounds, haralambis_certify,
    profile, verify_counting_identities, Certificate, Outcome,
};
use densitypack::{
    build_m, conjectured_density, mu_exact, weak_assumption_holds, CanonicalParams, Error, ExactRational, Limits,
    Window,
};
use proptest::prelude::*;

mod common;
use common::{canonical_instances, ds};

fn cp(a: u32, b: u32, k: u32, m: u32) -> CanonicalParams {
    CanonicalParams::new(a, b, k, m).unwrap()
}

fn win(len: u32, e: &[u32]) -> Window {
    Window::from_elements(len, e).unwrap()
}

fn certified(m: &[u32], delta: ExactRational, candidates: &[u32]) -> bool {
    matches!(haralambis_certify(&ds(m), delta, candidates, &Limits::default()).unwrap(), Certificate::Certified { .. })
}

#[test]
fn profile_examples() {
    let pr = profile(&win(11, &[0, 3, 7, 10]), &cp(5, 1, 1, 1)).unwrap();
    assert!(pr.i_set.is_empty());
    assert_eq!(pr.t(), vec![3]);
    assert_eq!(pr.u_set, vec![8, 9]);

    let pr = profile(&win(12, &[0, 1]), &cp(5, 2, 1, 1)).unwrap();
    assert!(pr.i_set.is_empty());
    assert!(pr.t().is_empty());
    assert_eq!(pr.u_set, vec![9, 10, 11]);

    let pr = profile(&win(11, &[0]), &cp(5, 1, 1, 1)).unwrap();
    assert_eq!(pr.u_set, vec![7, 8, 9, 10]);
}

#[test]
fn profile_rejects_bad_windows() {
    let p = cp(5, 1, 1, 1);
    assert_eq!(profile(&win(10, &[0]), &p), Err(Error::WindowTooShort { len: 10, required: 11 }));
    assert!(matches!(profile(&win(11, &[3]), &p), Err(Error::InvalidInput(_))));
    assert!(matches!(profile(&win(11, &[0, 5]), &p), Err(Error::InvalidInput(_))));
}

#[test]
fn identities_on_every_window() {
    let limits = Limits::default();
    for p in [cp(5, 1, 1, 1), cp(3, 2, 2, 1), cp(5, 2, 2, 2), cp(7, 3, 1, 2)] {
        let rep = verify_counting_identities(&p, &limits).unwrap();
        assert!(rep.passed(), "{p:?}: {:?}", rep.outcome);
        let windows: Vec<Window> = enumerate_avoiding_windows(&build_m(&p), p.n2(), true, &limits).unwrap().collect();
        assert_eq!(rep.windows_checked, windows.len() as u64);
        assert!(windows.iter().all(|w| check_counting_identities(w, &p).unwrap()));
    }
}

#[test]
fn main_inequality_examples() {
    let limits = Limits::default();
    for p in [cp(5, 1, 1, 1), cp(3, 2, 2, 1), cp(7, 2, 1, 3)] {
        assert!(check_main_inequality(&p, &limits, false).unwrap().passed());
    }
    assert_eq!(check_main_inequality(&cp(9, 2, 2, 2), &limits, false), Err(Error::UnsupportedRegime { k: 2, m: 2 }));
}

#[test]
fn main_inequality_in_the_open_regime() {
    // The inequality is only one route to the bound; record which small open
    // instances it covers without treating a failure as a defect.
    let limits = Limits::default();
    for p in canonical_instances(9, 3, |p| !p.is_proved_regime() && p.n2() <= 22) {
        let rep = check_main_inequality(&p, &limits, true).unwrap();
        if let Outcome::Counterexample { window, .. } = &rep.outcome {
            assert!(window.contains(0));
            assert!(window.is_avoiding(&build_m(&p)));
        }
    }
}

#[test]
fn certificate_examples() {
    assert!(certified(&[1, 5, 6], ExactRational::new(2, 7), &[7, 11]));
    assert!(certified(&[1], ExactRational::new(1, 2), &[2]));
    match haralambis_certify(&ds(&[1, 5, 6]), ExactRational::new(1, 4), &[7, 11], &Limits::default()).unwrap() {
        Certificate::Counterexample(w) => {
            assert!(w.contains(0));
            assert!(4 * w.count_below(7) > 7 && 4 * w.count_below(11) > 11);
        }
        c => panic!("expected a counterexample, got {c:?}"),
    }
    // the exhibited window defeats both candidates
    let w = win(11, &[0, 3, 7, 10]);
    assert!(4 * w.count_below(7) > 7 && 4 * w.count_below(11) > 11);
}

#[test]
fn certificate_input_errors() {
    let limits = Limits::default();
    let half = ExactRational::new(1, 2);
    assert!(matches!(haralambis_certify(&ds(&[1]), half, &[], &limits), Err(Error::InvalidInput(_))));
    assert!(matches!(haralambis_certify(&ds(&[1]), half, &[27], &limits), Err(Error::ResourceLimit(_))));
}

#[test]
fn certificates_agree_with_oracle() {
    let limits = Limits::default();
    for p in canonical_instances(9, 3, |p| p.is_proved_regime() && p.n2() <= 20) {
        let m = build_m(&p);
        let delta = conjectured_density(&p).delta;
        let cert = haralambis_certify(&m, delta, &[p.n1(), p.n2()], &limits).unwrap();
        assert!(matches!(cert, Certificate::Certified { .. }), "{p:?}");
        assert!(mu_exact(&m, &limits).unwrap().value <= delta);
        let looser = delta + ExactRational::new(1, 100);
        assert!(matches!(
            haralambis_certify(&m, looser, &[p.n1(), p.n2()], &limits).unwrap(),
            Certificate::Certified { .. }
        ));
    }
}

#[test]
fn inequality_and_weak_assumption_imply_certificate() {
    let limits = Limits::default();
    for p in canonical_instances(20, 19, |p| p.is_proved_regime() && p.n2() <= 20) {
        let bd = conjectured_density(&p);
        let main = check_main_inequality(&p, &limits, false).unwrap().passed();
        let weak = bd.r > 0 && weak_assumption_holds(p.k, p.m, bd.r).unwrap();
        if main && weak {
            let cert = haralambis_certify(&build_m(&p), bd.delta, &[p.n1(), p.n2()], &limits).unwrap();
            assert!(matches!(cert, Certificate::Certified { .. }), "{p:?}");
        }
    }
}

#[test]
fn dichotomy_examples() {
    let limits = Limits::default();
    assert_eq!(dichotomy_bounds(&cp(5, 1, 1, 1)).unwrap(), (2, 3));
    assert_eq!(dichotomy_bounds(&cp(3, 1, 1, 1)).unwrap(), (1, 2));
    assert!(check_two_ineq_dichotomy(&cp(5, 1, 1, 1), &limits).unwrap().passed());
    assert!(check_two_ineq_dichotomy(&cp(3, 1, 1, 1), &limits).unwrap().passed());
    assert!(matches!(check_two_ineq_dichotomy(&cp(7, 2, 2, 2), &limits), Err(Error::InvalidInput(_))));
    for p in canonical_instances(12, 4, |p| p.is_proved_regime() && p.n2() <= 18) {
        if conjectured_density(&p).r > 0 {
            assert!(check_two_ineq_dichotomy(&p, &limits).unwrap().passed(), "{p:?}");
        }
    }
}

fn instance() -> impl Strategy<Value = CanonicalParams> {
    (2u32..=9, 1u32..=8, 1u32..=3, 1u32..=3)
        .prop_filter("canonical", |&(a, b, _, _)| b < a && common::gcd(a, b) == 1)
        .prop_filter("small", |&(a, b, k, m)| (k + 1) * a + m * b <= 20)
        .prop_map(|(a, b, k, m)| cp(a, b, k, m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn profile_ignores_elements_past_n2(p in instance(), pick in any::<prop::sample::Index>(), tail in any::<u64>()) {
        let limits = Limits::default();
        let m = build_m(&p);
        let windows: Vec<Window> = enumerate_avoiding_windows(&m, p.n2(), true, &limits).unwrap().collect();
        let base = windows[pick.index(windows.len())];
        // greedily add random positions past n2 while staying M-avoiding
        let len = p.n2() + 12;
        let mut grown = base.extended(len).unwrap();
        for x in p.n2()..len {
            if tail >> (x - p.n2()) & 1 == 1 {
                let cand = Window::new(len, grown.bits() | 1 << x).unwrap();
                if cand.is_avoiding(&m) {
                    grown = cand;
                }
            }
        }
        prop_assert_eq!(profile(&base, &p).unwrap(), profile(&grown, &p).unwrap());
        prop_assert!(check_counting_identities(&grown, &p).unwrap());
    }

    #[test]
    fn certificate_is_monotone_in_delta(p in instance(), num in 1i64..10, den in 10i64..40) {
        let m = build_m(&p);
        let delta = ExactRational::new(num, den);
        let cands = [p.n1(), p.n2()];
        if certified(m.elements(), delta, &cands) {
            prop_assert!(certified(m.elements(), delta + ExactRational::new(1, den), &cands));
        }
    }
}
