//! Acceptance suite: one test per criterion, each printing a pass/fail line.
//!
//! Every tolerance and threshold is pinned here. Criteria 4 and 9 assert the
//! dyadic repetitive-function bracket exactly as stated; the exact values
//! exceed the stated upper bound at some levels (for the constant-one
//! sequence, R(7) = 66 against a stated bound of 64), so those two tests
//! report the discrepancy as an honest failure rather than loosening the
//! bracket. The covering argument supports a bound one dyadic step looser,
//! which the computed values always satisfy; see the failure messages.

use std::collections::BTreeSet;
use std::time::Instant;

use grig::classifier::{
    criterion_trace, exponent_estimate, CriterionKind, Verdict, DEFAULT_ALPHA_GRID,
};
use grig::metrics::{
    complexity, complexity_formula, longest_border, max_power, milestone_len, repetitive,
    repetitive_bounds, repulsiveness, PowerOutcome,
};
use grig::verify::{run_suite, CheckParams, SKIP_CONST_ONE_ONLY, SKIP_PRECONDITION, SKIP_WEAK_ZERO};
use grig::{kappa, LSpec, Session, Word};

fn session(text: &str) -> Session {
    Session::new(text.parse::<LSpec>().unwrap())
}

fn pass(number: u32, name: &str) {
    println!("acceptance criterion {number} ({name}): PASS");
}

#[test]
fn criterion_1_length_law() {
    let start = Instant::now();
    for text in ["const:1", "const:2", "geom:2", "list:3,1,4,1,5:repeat-last"] {
        let mut s = session(text);
        for j in 0..=20u32 {
            assert_eq!(
                s.level_word(j).unwrap().len(),
                (1usize << (j + 1)) - 1,
                "{text} at level {j}"
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 1.0, "took {elapsed:?}, budget 1 s");
    pass(1, "length law");
}

#[test]
fn criterion_2_generator_identity() {
    let mut s = session("const:1");
    assert_eq!(s.eta_prefix_word(15).unwrap().to_string(), "axayaxazaxayaxa");

    let n = 1 << 15;
    let prefix = Word::from(s.eta_prefix(n).unwrap());
    let image = kappa(&prefix);
    assert_eq!(&image[..n], &prefix[..], "kappa fixed-point prefix equality");
    pass(2, "generator identity");
}

#[test]
fn criterion_3_power_function() {
    let start = Instant::now();
    for (text, expected) in [("const:1", 3), ("const:2", 7), ("const:3", 15)] {
        let mut s = session(text);
        assert_eq!(
            max_power(&mut s, 2).unwrap(),
            PowerOutcome::Exact(expected),
            "Q(2) on {text}"
        );
    }
    for text in ["const:1", "const:2"] {
        let mut s = session(text);
        for n in (1..=33usize).step_by(2) {
            assert_eq!(
                max_power(&mut s, n).unwrap(),
                PowerOutcome::Exact(1),
                "Q({n}) on {text}"
            );
        }
    }
    for text in [
        "const:1",
        "const:2",
        "geom:2",
        "ex3",
        "list:3,1,4,1,5:repeat-last",
    ] {
        let mut s = session(text);
        let spec = s.spec().clone();
        for j in 1..=7u64 {
            let pos = grig::block_decompose(&spec, j).unwrap();
            let exp = spec.entry(pos.block).unwrap() - pos.offset + 1;
            let expected = (1u64 << exp) - 1;
            assert_eq!(
                max_power(&mut s, 1 << (j + 1)).unwrap(),
                PowerOutcome::Exact(expected),
                "Q(2^{}) on {text}",
                j + 1
            );
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}, budget 30 s");
    pass(3, "power function");
}

#[test]
fn criterion_4_repetitive_function() {
    let start = Instant::now();
    let mut s = session("const:1");

    let mut r_values = Vec::new();
    for n in 1..=32usize {
        let r = repetitive(&mut s, n).unwrap();
        let q = max_power(&mut s, n).unwrap().value();
        assert!(r > n as u64 * q, "R({n}) = {r} <= n*Q(n) = {}", n as u64 * q);
        r_values.push(r);
    }
    assert!(
        r_values.windows(2).all(|p| p[0] <= p[1]),
        "R must be monotone non-decreasing"
    );

    // Exact values against the stated dyadic bracket
    // [2^(l_(N+1)+l_N-q+j+1), 2^(l_(N+1)+l_N-q+j+2)] at the enclosing levels.
    let spec = s.spec().clone();
    for n in [1usize, 2, 3, 7] {
        let r = r_values[n - 1];
        let j_hi = (0..).find(|&j| (1u64 << (j + 1)) > n as u64).unwrap();
        let j_lo = if (1u64 << (j_hi + 1)) - 1 == n as u64 {
            j_hi
        } else {
            j_hi - 1
        };
        let (lower, _) = repetitive_bounds(&spec, j_lo).unwrap();
        let (_, upper) = repetitive_bounds(&spec, j_hi).unwrap();
        assert!(
            lower <= r && r <= upper,
            "R({n}) = {r} outside the stated bracket [{lower}, {upper}]; \
             the covering argument supports the bound {} (which holds: {})",
            2 * upper - 2,
            r <= 2 * upper - 2
        );
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}, budget 2 min");
    pass(4, "repetitive function");
}

#[test]
fn criterion_5_complexity() {
    let mut s = session("const:1");
    let spec = s.spec().clone();
    let oracle: Vec<u64> = (1..=256usize)
        .map(|n| complexity(&mut s, n).unwrap())
        .collect();
    assert_eq!(&oracle[..9], &[4, 6, 8, 10, 13, 16, 18, 20, 23]);

    // Increments in {2, 3}, slope 3 exactly on [M(m)+1, M(m)+(M(m)-M(m-1))]
    // and slope 2 on the rest, for m <= 6.
    let milestones: Vec<u64> = (0..=7).map(|m| milestone_len(&spec, m).unwrap()).collect();
    let slope_at = |n: u64| -> u64 {
        let m = (1..=6).rfind(|&m| milestones[m] < n).unwrap();
        let r = n - milestones[m] - 1;
        if r < milestones[m] - milestones[m - 1] {
            3
        } else {
            2
        }
    };
    for n in 4..=255u64 {
        let inc = oracle[n as usize] - oracle[n as usize - 1];
        assert!(inc == 2 || inc == 3, "increment {inc} at n = {n}");
        assert_eq!(inc, slope_at(n), "slope mismatch at n = {n}");
    }

    // Constant oracle-minus-formula delta, equal to 3 from n = 4 on.
    for n in 4..=256u64 {
        let delta = oracle[n as usize - 1] as i64 - complexity_formula(&spec, n).unwrap() as i64;
        assert_eq!(delta, 3, "delta at n = {n}");
    }
    pass(5, "complexity");
}

#[test]
fn criterion_6_special_words() {
    for text in ["const:1", "const:2"] {
        let mut s = session(text);
        for n in 1..=128usize {
            let count = s.right_special_words(n).unwrap().len();
            assert!(
                (1..=2).contains(&count),
                "{count} right-special words of length {n} on {text}"
            );
        }
    }
    let mut s = session("const:1");
    for j in 0..=6u32 {
        let w = Word::from(s.level_word(j).unwrap());
        let ext = s.factors(w.len()).unwrap().extensions_of(&w).unwrap();
        assert_eq!(ext.len(), 3, "w_{j} must be 3-special");
    }
    pass(6, "special words");
}

#[test]
fn criterion_7_classification() {
    let depth = 20;
    let spec: LSpec = "const:1".parse().unwrap();
    let c = criterion_trace(&spec, 1.0, CriterionKind::Finite, depth).unwrap();
    assert!(c.terms.iter().all(|&t| t == 1.0));
    assert_eq!(c.verdict, Verdict::BoundedSoFar);
    let d = criterion_trace(&spec, 1.0, CriterionKind::Repetitive, depth).unwrap();
    assert!(d.terms.iter().all(|&t| t == 2.0));
    assert_eq!(d.verdict, Verdict::BoundedSoFar);

    let spec: LSpec = "geom:2".parse().unwrap();
    let c = criterion_trace(&spec, 2.0, CriterionKind::Finite, depth).unwrap();
    assert!(c.terms.iter().all(|&t| t == 2.0));
    assert_eq!(c.verdict, Verdict::BoundedSoFar);
    let d = criterion_trace(&spec, 4.0, CriterionKind::Repetitive, depth).unwrap();
    assert!(d.terms.iter().all(|&t| t == 6.0));
    assert_eq!(d.verdict, Verdict::BoundedSoFar);

    for text in ["poly:1,0", "poly:2,3"] {
        let spec: LSpec = text.parse().unwrap();
        for alpha in DEFAULT_ALPHA_GRID {
            for kind in [CriterionKind::Finite, CriterionKind::Repetitive] {
                let t = criterion_trace(&spec, alpha, kind, depth).unwrap();
                assert_ne!(
                    t.verdict,
                    Verdict::BoundedSoFar,
                    "{text} bounded at alpha {alpha}"
                );
            }
        }
    }

    let spec: LSpec = "geom:2".parse().unwrap();
    let fin = exponent_estimate(&spec, CriterionKind::Finite, depth).unwrap();
    assert!((fin.last - 2.0).abs() < 0.05, "finite estimate {}", fin.last);
    let rep = exponent_estimate(&spec, CriterionKind::Repetitive, depth).unwrap();
    assert!((rep.last - 4.0).abs() < 0.05, "repetitive estimate {}", rep.last);
    pass(7, "classification");
}

#[test]
fn criterion_8_property_suites() {
    // Longest border attains the bordered-pair infimum: brute force over all
    // borders of all factors up to length 64.
    let mut s = session("const:1");
    for n in 2..=64usize {
        let words: Vec<Word> = s.factors(n).unwrap().words().to_vec();
        let mut brute: Option<(usize, usize)> = None; // (n - b, b) minimizing
        for w in &words {
            for b in 1..n {
                if w[..b] == w[n - b..] {
                    let better = match brute {
                        None => true,
                        Some((num, den)) => (n - b) * den < num * b,
                    };
                    if better {
                        brute = Some((n - b, b));
                    }
                }
            }
        }
        let via_longest = repulsiveness(&mut s, 1.0, n).unwrap();
        match brute {
            None => assert!(via_longest.is_infinite(), "n = {n}"),
            Some((num, den)) => {
                assert!((via_longest - num as f64 / den as f64).abs() < 1e-12, "n = {n}");
                let w = words
                    .iter()
                    .find(|w| {
                        let b = longest_border(w);
                        b == den && n - b == num
                    })
                    .is_some();
                assert!(w, "minimum must be attained at a longest border, n = {n}");
            }
        }
    }

    // Factor-set exactness: covering-word windows versus windows of a prefix
    // long enough for uniform recurrence.
    for text in ["const:1", "const:2", "geom:2", "ex3", "list:3,1,4,1,5:repeat-last"] {
        let mut s = session(text);
        let spec = s.spec().clone();
        for n in 1..=16usize {
            let j_hi = (0..).find(|&j| (1u64 << (j + 1)) > n as u64).unwrap();
            let (_, upper) = repetitive_bounds(&spec, j_hi).unwrap();
            // One dyadic step past the stated bound; holds for all computed R.
            let horizon = (2 * upper - 2) as usize + n;
            let prefix = Word::from(s.eta_prefix(horizon).unwrap());
            let from_prefix: BTreeSet<Word> = prefix.windows(n).map(Word::from).collect();
            let from_covering: BTreeSet<Word> =
                s.factors(n).unwrap().words().iter().cloned().collect();
            assert_eq!(from_covering, from_prefix, "{text} at n = {n}");
        }
    }

    // Extension-sum identity.
    let mut s = session("const:1");
    for n in 1..=127usize {
        let sum = s.factors(n).unwrap().extension_sum();
        let next = s.factors(n + 1).unwrap().len() as u64;
        assert_eq!(sum, next, "extension sum at n = {n}");
    }

    // Repulsiveness tail minimum over n in [16, 256]: frozen fixture 64/191,
    // attained at n = 255.
    let mut tail_min = f64::INFINITY;
    for n in 16..=256usize {
        tail_min = tail_min.min(repulsiveness(&mut s, 1.0, n).unwrap());
    }
    assert!((tail_min - 64.0 / 191.0).abs() < 1e-12, "tail min {tail_min}");
    pass(8, "property suites");
}

#[test]
fn criterion_9_full_verify_suite() {
    let start = Instant::now();
    let params = CheckParams::default();
    let mut failures = Vec::new();
    let mut bad_skips = Vec::new();
    for text in ["const:1", "const:2", "geom:2", "ex3", "list:3,1,4,1,5:repeat-last"] {
        let mut s = session(text);
        for report in run_suite(&mut s, &params).unwrap() {
            match &report.status {
                grig::verify::CheckStatus::Pass => {}
                grig::verify::CheckStatus::Fail { witness } => {
                    failures.push(format!("{text}/{}: {witness}", report.check_id));
                }
                grig::verify::CheckStatus::Skip { reason } => {
                    // The two data-dependent reasons plus the registry's own
                    // constant-one scope restriction.
                    if reason != SKIP_WEAK_ZERO
                        && reason != SKIP_PRECONDITION
                        && reason != SKIP_CONST_ONE_ONLY
                    {
                        bad_skips.push(format!("{text}/{}: {reason}", report.check_id));
                    }
                }
                grig::verify::CheckStatus::Inconclusive { note } => {
                    bad_skips.push(format!("{text}/{} inconclusive: {note}", report.check_id));
                }
            }
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs() < 120, "took {elapsed:?}, budget 2 min");
    assert!(bad_skips.is_empty(), "unexpected skips: {bad_skips:#?}");
    assert!(
        failures.is_empty(),
        "checks failed (the stated dyadic upper bound for R is exceeded by \
         the exact values; the covering argument supports a bound one dyadic \
         step looser, which holds): {failures:#?}"
    );
    pass(9, "full verify suite");
}
