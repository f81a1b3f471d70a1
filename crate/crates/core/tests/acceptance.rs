//! One line per acceptance criterion; exits non-zero if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ramsey_words::binary::{
    carry_region, check_fragment_pair, common_fragment_count, fragments, intervals, jumps, support, Side,
};
use ramsey_words::search::{
    altsum_search, constraints_for, hindman_search, q5_search, supermono_search, xy_transform,
    AltsumParams, ColouringSpec, Form, FormOptions, HindmanParams, Limits, PairColouring,
    Q5Params, Q5Variant, SupermonoParams, Term,
};
use ramsey_words::theta::Stage;
use ramsey_words::verify::{naive, run_suite, Suite};
use ramsey_words::word::{
    check_periodicity_witness, standardise, Factorisation, Standardisation, WordSource,
};
use ramsey_words::Nat;

type Check = fn() -> Result<String, String>;

fn ensure(ok: bool, msg: impl Into<String>) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn suite(s: Suite, bound: u64) -> Result<String, String> {
    let r = run_suite(s, bound).map_err(|e| e.to_string())?;
    ensure(r.passed, r.counterexample.clone().unwrap_or_default())?;
    Ok(format!("{} instances, no failures", r.checked))
}

fn bin(s: &str) -> u64 {
    u64::from_str_radix(s, 2).unwrap()
}

fn worked_values() -> Result<String, String> {
    let n: Nat = "200".parse().unwrap();
    ensure(support(&n).unwrap() == [3, 6, 7], "support of 200")?;
    let j = jumps(&bin("110101111"), &bin("10000100"));
    ensure(j == 2, format!("J = {j}"))?;
    let i = intervals(&bin("11101110010101")).unwrap();
    ensure(i == 5, format!("I = {i}"))?;
    let c = carry_region(&bin("1010011011"), &bin("100111010")).ok_or("no carry region")?;
    ensure((c.start, c.stop) == (1, 6), format!("carry region ({}, {})", c.start, c.stop))?;
    Ok("support {3, 6, 7}, J = 2, I = 5, carry (1, 6)".into())
}

fn random_pair_agrees(a: u64, b: u64) -> Result<(), String> {
    let msg = || format!("a = {a:b}, b = {b:b}");
    ensure(jumps(&a, &b) == naive::jumps(a, b), format!("J at {}", msg()))?;
    ensure(intervals(&a).unwrap() == naive::intervals(a), format!("I at {}", msg()))?;
    ensure(
        carry_region(&a, &b).map(|c| (c.start, c.stop)) == naive::carry_region(a, b),
        format!("carry at {}", msg()),
    )?;
    ensure(
        common_fragment_count(&a, &b) == naive::common_fragments(a, b).len(),
        format!("F at {}", msg()),
    )?;
    for (lower, upper) in [(a, b), (b, a)] {
        if check_fragment_pair(&lower, &upper).is_ok() {
            for (side, right) in [(Side::Right, true), (Side::Left, false)] {
                let got: Vec<_> = fragments(&lower, &upper, side).unwrap().iter().map(|f| (f.lo, f.hi)).collect();
                ensure(got == naive::fragments(lower, upper, right), format!("fragments at {}", msg()))?;
            }
        }
    }
    Ok(())
}

fn oracle_equivalence() -> Result<String, String> {
    let exhaustive = suite(Suite::Oracles, 1 << 10)?;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..100_000 {
        let a = rng.gen_range(1..1u64 << 32);
        let mut b = rng.gen_range(1..1u64 << 32);
        // every other pair with disjoint supports, so fragments are exercised
        if k % 2 == 1 {
            b &= !a;
        }
        if b != 0 && a != b {
            random_pair_agrees(a.min(b), a.max(b))?;
        }
    }
    Ok(format!("pairs below 2^10: {exhaustive}; 10^5 random pairs below 2^32 agree"))
}

fn transform_coherence() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let opts = FormOptions::default();
    for _ in 0..10_000 {
        let len = rng.gen_range(1..=6);
        let mut xs: Vec<u64> = (0..len).map(|_| rng.gen_range(1..=1u64 << 10)).collect();
        xs.sort_unstable();
        xs.dedup();
        let ys = xy_transform(&xs).unwrap();
        let x_side = constraints_for(&xs, Form::XAlternating, opts).unwrap();
        let y_side = constraints_for(&ys, Form::YBlock, opts).unwrap();
        ensure(x_side == y_side, format!("xs = {xs:?}"))?;
    }
    Ok("10^4 sampled sequences agree elementwise".into())
}

fn periodicity_detection() -> Result<String, String> {
    let x = WordSource::periodic("ab").unwrap();
    let shapes: [&[usize]; 4] = [&[1; 8], &[2; 6], &[1, 2, 3, 4], &[3, 1, 4, 1, 5]];
    let mut found = 0;
    for start in 2..=6 {
        for lengths in shapes {
            let f = Factorisation::from_lengths(&x, start, lengths).unwrap();
            match standardise(&x, &f, 20_000, 1_000).map_err(|e| e.to_string())? {
                Standardisation::Periodic(w) => {
                    ensure(w.verified_depth >= 10_000, format!("depth {} at start {start}", w.verified_depth))?;
                    let holds = check_periodicity_witness(&x, w.i, w.j, 10_000).unwrap();
                    ensure(holds, format!("witness {w:?} does not verify"))?;
                    found += 1;
                }
                other => return Err(format!("start {start}, lengths {lengths:?}: {other:?}")),
            }
        }
    }
    Ok(format!("{found} factorisations, every witness verified to depth 10^4"))
}

fn hindman_positive() -> Result<String, String> {
    let p = HindmanParams { word: "a".into(), n: 3, bound: 10 };
    let colouring = "lenmod:2".parse::<ColouringSpec>().unwrap().on_words().unwrap();
    let r = hindman_search(colouring, &p, &Limits::default()).map_err(|e| e.to_string())?;
    let w = r.witnesses.first().ok_or("no witness")?;
    let a: Vec<u64> = w
        .terms
        .iter()
        .map(|t| match t {
            Term::Number(n) => *n,
            Term::Word(_) => unreachable!(),
        })
        .collect();
    let parities: Vec<u64> = (1u32..8)
        .map(|mask| (0..3).filter(|i| mask >> i & 1 == 1).map(|i| a[i]).sum::<u64>() % 2)
        .collect();
    ensure(parities.iter().all(|&p| p == parities[0]), format!("witness {a:?} is not monochromatic"))?;
    Ok(format!("witness {a:?}, all 7 subset-sum lengths share parity {}", parities[0]))
}

fn supermono_negative() -> Result<String, String> {
    let fib = WordSource::fibonacci();
    let p = SupermonoParams {
        suffix_bound: 20,
        n: 3,
        len_bound: 40,
        gap: 0,
        scan_bound: SupermonoParams::default_scan_bound(20, 40, 0, 3),
    };
    let colouring = "phi:full".parse::<ColouringSpec>().unwrap().on_words().unwrap();
    let r = supermono_search(&fib, colouring, &p, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(r.witnesses.is_empty(), format!("{} witnesses", r.witnesses.len()))?;
    ensure(r.exhausted, format!("not exhausted ({} undecided)", r.unknown))?;
    Ok(format!("exhausted, 0 witnesses, {} nodes, deepest {}", r.nodes, r.max_depth))
}

fn q5_and_monotonicity() -> Result<String, String> {
    let p = Q5Params { variant: Q5Variant::A1Free, len: 3, bound: 243 };
    let lsnz = "base-lsnz:3".parse::<ColouringSpec>().unwrap().on_numbers().unwrap();
    let r = q5_search(lsnz, &p, &Limits::default()).map_err(|e| e.to_string())?;
    ensure(r.exhausted && r.witnesses.is_empty(), "q5 a1free search did not exhaust cleanly")?;

    let limits = Limits { witnesses: Some(1), ..Limits::default() };
    let mut configs = 0;
    for (bound, max_len) in [(24, 10), (40, 12)] {
        for form in [Form::XAlternating, Form::YSubset, Form::YBlock] {
            let depth = |stage| {
                let p = AltsumParams { bound, max_len, form, options: FormOptions::default() };
                altsum_search(PairColouring::Theta(stage), &p, &limits).map(|r| r.max_depth)
            };
            let d = [Stage::Stage1, Stage::Stage2, Stage::Full].map(|s| depth(s).unwrap());
            ensure(d[0] >= d[1] && d[1] >= d[2], format!("depths {d:?} at bound {bound}, form {form}"))?;
            configs += 1;
        }
    }
    Ok(format!("q5 exhausted with 0 witnesses; depth monotone in stage on {configs} configurations"))
}

fn main() -> ExitCode {
    let criteria: [(&str, Check, Duration); 10] = [
        ("worked values", worked_values, Duration::from_secs(1)),
        ("oracle equivalence", oracle_equivalence, Duration::from_secs(120)),
        ("first-digit shift, a < b < 2^14", || suite(Suite::FirstDigit, 1 << 14), Duration::from_secs(60)),
        ("jump delta, positions 0..15", || suite(Suite::JumpDelta, 16), Duration::from_secs(120)),
        ("five-term obstruction, positions 0..17", || suite(Suite::FiveTerm, 18), Duration::from_secs(300)),
        ("transform coherence", transform_coherence, Duration::from_secs(60)),
        ("periodicity detection", periodicity_detection, Duration::from_secs(1)),
        ("word-side positive direction", hindman_positive, Duration::from_secs(1)),
        ("word-side negative evidence", supermono_negative, Duration::from_secs(1800)),
        ("number-colouring falsifier", q5_and_monotonicity, Duration::from_secs(600)),
    ];
    let mut failed = 0;
    for (i, (name, check, limit)) in criteria.into_iter().enumerate() {
        let t = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = t.elapsed();
        let outcome = outcome.and_then(|detail| {
            if elapsed > limit {
                Err(format!("{detail}; took {elapsed:.2?}, limit {limit:?}"))
            } else {
                Ok(detail)
            }
        });
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({elapsed:.2?})", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
