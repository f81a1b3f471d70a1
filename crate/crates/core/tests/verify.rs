use ramsey_words::verify::{naive, run_suite, Suite};
use ramsey_words::Error;

#[test]
fn suite_names_round_trip() {
    for s in Suite::ALL {
        assert_eq!(s.to_string().parse::<Suite>().unwrap(), s);
    }
    assert!(matches!("bogus".parse::<Suite>(), Err(Error::Parse { .. })));
}

#[test]
fn bounds_are_checked() {
    assert!(run_suite(Suite::JumpDelta, 0).is_err());
    assert!(run_suite(Suite::FiveTerm, 1000).is_err());
}

#[test]
fn small_bounds_pass() {
    for (suite, bound) in [
        (Suite::FirstDigit, 1 << 10),
        (Suite::LastDigit, 128),
        (Suite::JumpDelta, 12),
        (Suite::FiveTerm, 15),
        (Suite::Fragments, 10),
        (Suite::Oracles, 256),
    ] {
        let r = run_suite(suite, bound).unwrap();
        assert!(r.passed, "{r}");
        assert!(r.checked > 0, "{r}");
    }
}

#[test]
fn too_few_positions_check_nothing() {
    // five staircase terms with overlapping spans need at least 12 positions
    let r = run_suite(Suite::FiveTerm, 11).unwrap();
    assert!(r.passed);
    assert_eq!(r.checked, 0);
}

/// The common-fragment parity argument for five consecutive terms does not
/// follow from the local hypotheses alone: this list has proper middles,
/// consecutive terms sharing a 1 and carries stopping below the next term,
/// yet all four pairs have an odd number of common-fragments.
#[test]
fn stage3_parity_fails_on_a_small_list() {
    let r = run_suite(Suite::Stage3, 14).unwrap();
    assert!(!r.passed);
    let ys = [0b11u64, 0b101010, 0b1010110000, 0b1101100000000, 0b11000000000000];
    let total: u64 = ys.iter().sum();
    let lefts = [
        ys[0] + ys[2] + ys[3],
        ys[0] + ys[1] + ys[3],
        ys[0] + ys[3],
        ys[0] + ys[1] + ys[2] + ys[3],
    ];
    let counts: Vec<usize> = lefts.iter().map(|&l| naive::common_fragments(l, total).len()).collect();
    assert_eq!(counts, [3, 3, 3, 1]);
    assert!(r.counterexample.unwrap().contains("[3, 3, 3, 1]"));
    assert!(run_suite(Suite::Stage3, 12).unwrap().passed);
}
