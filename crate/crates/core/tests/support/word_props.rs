//! Randomized identities of the word calculus, run through a proptest
//! `TestRunner` so callers get a plain pass/fail per property.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use cyclogaps_core::words::TernaryWord;

pub fn word(max_len: usize) -> impl Strategy<Value = TernaryWord> {
    prop::collection::vec(prop::sample::select(vec![-1i8, 0, 0, 0, 1]), 0..=max_len)
        .prop_map(|letters| TernaryWord::new(letters).unwrap())
}

pub fn nonempty_word(max_len: usize) -> impl Strategy<Value = TernaryWord> {
    word(max_len).prop_filter("nonempty", |w| !w.is_empty())
}

/// Largest distance between consecutive nonzero letters, by direct scan.
pub fn scan_max_gap(w: &TernaryWord) -> Option<usize> {
    let nonzero: Vec<usize> = (0..w.len()).filter(|&j| w.letters()[j] != 0).collect();
    nonzero.windows(2).map(|p| p[1] - p[0]).max()
}

/// Max gap through the gapset, where adjacent nonzero letters count as 1.
fn word_max_gap(w: &TernaryWord) -> Option<usize> {
    let nonzero = w.letters().iter().filter(|&&l| l != 0).count();
    (nonzero >= 2).then(|| w.gapset().unwrap().g1().unwrap_or(1))
}

macro_rules! check {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(TestCaseError::fail(format!($($fmt)+)));
        }
    };
}

fn run<S: Strategy>(
    name: &str,
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner
        .run(&strategy, test)
        .map_err(|e| format!("{name}: {e}"))
}

pub fn fractional_power_length(cases: u32) -> Result<(), String> {
    run(
        "fractional power length",
        cases,
        (nonempty_word(12), 0usize..80),
        |(u, k)| {
            let f = u.fractional_power(k).unwrap();
            check!(f.len() == k, "length {} != {k}", f.len());
            for j in 0..k {
                check!(f.letters()[j] == u.letters()[j % u.len()], "letter {j}");
            }
            let n = k % 7;
            check!(
                u.fractional_power(n * u.len()).unwrap() == u.power(n),
                "u^(n|u|/|u|) != u^n"
            );
            let longer = u.fractional_power(k + u.len()).unwrap();
            check!(longer == u.concat(&f), "u^((k+|u|)/|u|) != u u^(k/|u|)");
            Ok(())
        },
    )
}

pub fn concatenation_identities(cases: u32) -> Result<(), String> {
    run(
        "concatenation identities",
        cases,
        (word(10), word(10), 0usize..6),
        |(u, v, n)| {
            let uv = u.concat(&v);
            let vu = v.concat(&u);
            check!(
                uv.power(n).concat(&u) == u.concat(&vu.power(n)),
                "(uv)^n u != u (vu)^n"
            );
            if n >= 1 {
                let rhs = u.concat(&vu.power(n - 1)).concat(&v);
                check!(uv.power(n) == rhs, "(uv)^n != u (vu)^(n-1) v");
            }
            check!(
                uv.reverse() == v.reverse().concat(&u.reverse()),
                "reverse(uv)"
            );
            Ok(())
        },
    )
}

pub fn concatenation_max_gap(cases: u32) -> Result<(), String> {
    run(
        "max gap of a concatenation",
        cases,
        (word(20), word(20)),
        |(u, v)| {
            let uv = u.concat(&v);
            let expected = match (u.begin_end(), v.begin_end()) {
                (Ok((_, end_u)), Ok((beg_v, _))) => {
                    let cross = u.len() + beg_v - end_u;
                    [word_max_gap(&u), word_max_gap(&v), Some(cross)]
                        .into_iter()
                        .flatten()
                        .max()
                }
                (Ok(_), Err(_)) => word_max_gap(&u),
                (Err(_), Ok(_)) => word_max_gap(&v),
                (Err(_), Err(_)) => None,
            };
            check!(
                expected == scan_max_gap(&uv),
                "{expected:?} vs scan {:?}",
                scan_max_gap(&uv)
            );
            check!(
                word_max_gap(&uv) == scan_max_gap(&uv),
                "gapset max disagrees with scan"
            );
            Ok(())
        },
    )
}

pub fn decomposition_round_trip(cases: u32) -> Result<(), String> {
    run("gap decomposition round trip", cases, word(40), |w| {
        let Ok(d) = w.gap_decomposition() else {
            check!(
                !w.letters().contains(&0),
                "decomposition failed on a word with zeros"
            );
            return Ok(());
        };
        check!(d.to_word() == w, "round trip");
        check!(
            d.prefix.letters().iter().all(|&l| l != 0),
            "prefix has a zero"
        );
        for (k, block) in d.blocks.iter().enumerate() {
            check!(block.zeros > 0, "empty zero run");
            check!(
                block.tail.letters().iter().all(|&l| l != 0),
                "tail has a zero"
            );
            check!(
                !block.tail.is_empty() || k + 1 == d.blocks.len(),
                "empty tail before the last block"
            );
        }
        Ok(())
    })
}

pub fn reversal_and_gapset(cases: u32) -> Result<(), String> {
    run("gapset under reversal", cases, word(40), |w| {
        check!(w.reverse().reverse() == w, "double reversal");
        match (w.gapset(), w.reverse().gapset()) {
            (Ok(a), Ok(b)) => check!(a == b, "gapset changed under reversal"),
            (Err(_), Err(_)) => check!(w.is_zero(), "gapset failed on a nonzero word"),
            _ => check!(false, "gapset defined on one side only"),
        }
        let zeros = w.letters().iter().filter(|&&l| l == 0).count();
        let covered: usize = w.interior_gapblocks().map(|g| g.zeros).sum();
        check!(covered <= zeros, "interior runs overcount zeros");
        Ok(())
    })
}

pub fn letterwise_addition(cases: u32) -> Result<(), String> {
    let triple = (1usize..16).prop_flat_map(|n| {
        let w = || {
            prop::collection::vec(prop::sample::select(vec![-1i8, 0, 1]), n)
                .prop_map(|l| TernaryWord::new(l).unwrap())
        };
        (w(), w(), w())
    });
    run("letterwise addition", cases, triple, |(a, b, c)| {
        let ab = a.add(&b);
        check!(ab == b.add(&a), "not commutative");
        let overflow = a
            .letters()
            .iter()
            .zip(b.letters())
            .any(|(x, y)| (x + y).abs() == 2);
        check!(
            ab.is_err() == overflow,
            "error iff some position sums to +-2"
        );
        if let (Ok(ab), Ok(bc)) = (&ab, b.add(&c)) {
            if let (Ok(left), Ok(right)) = (ab.add(&c), a.add(&bc)) {
                check!(left == right, "not associative");
            }
        }
        check!(
            a.add(&TernaryWord::zeros(a.len())).as_ref() == Ok(&a),
            "zero is not neutral"
        );
        check!(
            a.add(&TernaryWord::zeros(a.len() + 1)).is_err(),
            "length mismatch accepted"
        );
        Ok(())
    })
}

pub fn rotation_and_ends(cases: u32) -> Result<(), String> {
    run(
        "rotation and end positions",
        cases,
        (nonempty_word(20), word(20), 0usize..50),
        |(u, v, s)| {
            let n = u.len();
            let rotated = u.rotate_left(s).unwrap();
            for j in 0..n {
                check!(
                    rotated.letters()[j] == u.letters()[(j + s) % n],
                    "rotation letter {j}"
                );
            }
            check!(u.rotate_left(n).unwrap() == u, "full rotation");
            check!(
                rotated.rotate_left(n - s % n).unwrap() == u,
                "rotation inverse"
            );
            let uv = u.concat(&v);
            if let Ok((beg_u, _)) = u.begin_end() {
                check!(uv.begin_end().unwrap().0 == beg_u, "beg(uv) != beg(u)");
            }
            if let Ok((_, end_v)) = v.begin_end() {
                check!(
                    uv.begin_end().unwrap().1 == n + end_v,
                    "end(uv) != |u| + end(v)"
                );
            }
            Ok(())
        },
    )
}

pub fn text_round_trip(cases: u32) -> Result<(), String> {
    run("text round trip", cases, word(60), |w| {
        let text = w.to_string();
        check!(
            text.parse::<TernaryWord>().as_ref() == Ok(&w),
            "parse(display(w)) != w"
        );
        let sums = w.partial_sums();
        check!(
            sums.last().copied().unwrap_or(0) == w.letter_sum(),
            "partial sums"
        );
        Ok(())
    })
}

/// Every property with `cases` random cases each; returns the number of properties.
pub fn run_all(cases: u32) -> Result<usize, String> {
    let properties: [fn(u32) -> Result<(), String>; 8] = [
        fractional_power_length,
        concatenation_identities,
        concatenation_max_gap,
        decomposition_round_trip,
        reversal_and_gapset,
        letterwise_addition,
        rotation_and_ends,
        text_round_trip,
    ];
    for property in properties {
        property(cases)?;
    }
    Ok(properties.len())
}
