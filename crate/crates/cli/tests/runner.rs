use proptest::prelude::*;
use weilkit_cli::{run_scenario, InputError, Kind, RunOptions, Scenario};

fn weil(l: u64, seed: u64) -> Scenario {
    let mut s = Scenario::empty(Kind::Weil);
    s.l = Some(l);
    s.precision = Some(2);
    // x^2 + 1 is irreducible mod 3 and 7, x^2 + 2 mod 5
    s.poly = Some(if l == 5 { vec![2, 0, 1] } else { vec![1, 0, 1] });
    s.r = Some(2);
    s.seed = Some(seed);
    s
}

#[test]
fn suite_kind_runs_the_suite_checks() {
    let mut s = Scenario::empty(Kind::Suite);
    s.seed = Some(3);
    let r = run_scenario(&s, RunOptions::default()).unwrap();
    assert_eq!(r.kind, "suite");
    assert!(r.checks.len() >= 12);
    assert!(r.passed());
}

#[test]
fn reducible_weil_polynomial_is_a_failed_check() {
    let mut s = weil(5, 1);
    s.poly = Some(vec![-1, 0, 1]);
    let r = run_scenario(&s, RunOptions::default()).unwrap();
    assert_eq!(r.exit_code(), 1);
    assert!(r.checks[0].error.as_deref().unwrap().contains("reducible"));
}

#[test]
fn expectations_outside_the_kind_fail() {
    let mut s = Scenario::parse("kind = \"split2\"\nl = 5\n[expect]\norder = 120\n").unwrap();
    let r = run_scenario(&s, RunOptions::default()).unwrap();
    assert_eq!(r.exit_code(), 1);
    s.expect = None;
    assert_eq!(run_scenario(&s, RunOptions::default()).unwrap().exit_code(), 0);
}

#[test]
fn even_h_and_small_primes_are_flagged() {
    let s = Scenario::parse("kind = \"groups\"\nl = 3\nh = 2\n").unwrap();
    let r = run_scenario(&s, RunOptions::default()).unwrap();
    assert_eq!(r.flags.len(), 2);
    assert!(r.passed());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn identical_inputs_give_identical_bytes(li in 0usize..3, seed in any::<u64>()) {
        let s = weil([3, 5, 7][li], seed);
        let a = run_scenario(&s, RunOptions::default()).unwrap();
        let b = run_scenario(&s, RunOptions::default()).unwrap();
        prop_assert!(a.passed());
        prop_assert_eq!(a.to_canonical_json(), b.to_canonical_json());
        prop_assert_eq!(a.seed, seed);
    }

    #[test]
    fn arbitrary_text_never_panics(text in "[a-z =\\[\\]0-9\"\\n,]{0,80}") {
        match Scenario::parse(&text) {
            Ok(s) if s.kind == Kind::Suite => {}
            Ok(s) => {
                let r = run_scenario(&s, RunOptions { seed: Some(1), cap: Some(1000) });
                if let Err(e) = r {
                    let reparsed = matches!(e, InputError::Parse { .. });
                    prop_assert!(!reparsed);
                }
            }
            Err(InputError::Parse { line, column, .. }) => prop_assert!(line >= 1 && column >= 1),
            Err(other) => prop_assert!(false, "unexpected {:?}", other),
        }
    }

    #[test]
    fn exit_code_is_zero_exactly_when_every_check_passes(l in prop::sample::select(vec![3u64, 5, 7]), h in 1usize..=2) {
        let mut s = Scenario::empty(Kind::Split2);
        s.l = Some(l);
        s.h = Some(h);
        let r = run_scenario(&s, RunOptions::default()).unwrap();
        prop_assert_eq!(r.exit_code() == 0, r.checks.iter().all(|c| c.passed()));
        prop_assert_eq!(r.exit_code(), 0);
    }
}
