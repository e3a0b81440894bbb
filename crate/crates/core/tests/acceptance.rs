//! End-to-end acceptance run: one line per criterion, then a single assert.
//!
//! Run with `cargo test -p pythcubic-core --test acceptance -- --nocapture`
//! to see the lines.

mod common;

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use num::{BigInt, BigRational};
use proptest::test_runner::{Config, TestRng, TestRunner};

use common::*;
use pythcubic_core::indecomposable::{brute_force_indecomposables, match_up_to_totally_positive_unit, theorem12_list, totally_positive_up_to_trace};
use pythcubic_core::length::pythagoras_length;
use pythcubic_core::squares::{squares_below_bruteforce, squares_below_structured};
use pythcubic_core::verify::{verify, Claim, Options};
use pythcubic_core::OrderElement;

// Runtime ceilings. Everything else is exact.
const SIX_SQUARE_TOTAL: Duration = Duration::from_secs(1);
const CENSUS_PER_A: Duration = Duration::from_secs(30);
const LENGTH_PER_A: Duration = Duration::from_secs(60);
const LEMMA_SUITE_TOTAL: Duration = Duration::from_secs(600);
const SMALL_PARAMETER_TOTAL: Duration = Duration::from_secs(60);
const PROPERTY_CASES: u32 = 1000;
const EXP_BOX: u32 = 10;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn gamma(a: i64) -> OrderElement {
    elem(a, [a * a + a + 8, a * a - a + 1, 2 - a])
}

fn square_set(list: &[pythcubic_core::squares::SquareCandidate]) -> BTreeSet<OrderElement> {
    list.iter().map(|c| c.square.clone()).collect()
}

fn six_square_witness() -> Outcome {
    let start = Instant::now();
    for a in 3..=30 {
        let roots = [[1, 0, 0], [1, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [a + 1, a, -1]];
        let sum = roots.iter().fold(elem(a, [0, 0, 0]), |acc, r| &acc + &elem(a, *r).square());
        ensure(sum == gamma(a), || format!("a = {a}: sum is {sum}"))?;
    }
    let t = start.elapsed();
    ensure(t < SIX_SQUARE_TOTAL, || format!("took {t:?}"))?;
    Ok(format!("a in [3,30], {t:?}"))
}

fn square_census() -> Outcome {
    let mut worst = Duration::ZERO;
    for a in 3..=30 {
        let mut expected: BTreeSet<OrderElement> = [
            [1, 0, 0],
            [4, 0, 0],
            [9, 0, 0],
            [0, 0, 1],
            [1, -2, 1],
            [a * a + a + 1, a * a - a + 1, 1 - a],
            [a * a - a, a * a - 3 * a + 1, 3 - a],
            [a * a + a - 1, a * a - a - 3, 2 - a],
        ]
        .into_iter()
        .map(|c| elem(a, c))
        .collect();
        match a {
            3 => expected.extend([elem(a, [20, 11, -3]), elem(a, [1, 2, 1])]),
            4 => expected.extend([elem(a, [1, 2, 1])]),
            _ => {}
        }
        let start = Instant::now();
        let found = squares_below_bruteforce(&gamma(a)).map_err(|e| e.to_string())?;
        worst = worst.max(start.elapsed());
        let found_set = square_set(&found);
        ensure(found.len() == found_set.len(), || format!("a = {a}: duplicate squares"))?;
        ensure(found_set == expected, || format!("a = {a}: got {found_set:?}"))?;
    }
    ensure(worst < CENSUS_PER_A, || format!("slowest a took {worst:?}"))?;
    Ok(format!("a in [3,30], 8 squares for a >= 5, 10 at a=3, 9 at a=4, slowest {worst:?}"))
}

fn main_theorem() -> Outcome {
    let mut worst = Duration::ZERO;
    for a in 3..=30 {
        let g = gamma(a);
        let start = Instant::now();
        let five = pythagoras_length(&g, 5).map_err(|e| e.to_string())?;
        let six = pythagoras_length(&g, 6).map_err(|e| e.to_string())?;
        worst = worst.max(start.elapsed());
        ensure(five.is_none(), || format!("a = {a}: five squares suffice"))?;
        let six = six.ok_or_else(|| format!("a = {a}: no six-square representation"))?;
        ensure(six.length == 6 && six.witness.is_valid(), || format!("a = {a}: bad witness"))?;
    }
    ensure(worst < LENGTH_PER_A, || format!("slowest a took {worst:?}"))?;
    Ok(format!("length 6 for a in [3,30], slowest {worst:?}"))
}

fn norm_trace_formulas() -> Outcome {
    for a in -1i64..=100 {
        let b = BigInt::from(a);
        let p = |c: &[i64]| c.iter().fold(BigInt::from(0), |acc, k| acc * &b + BigInt::from(*k));
        let g = gamma(a);
        let cd = g.char_data();
        let norm = p(&[9, 22, 247, 258, 1493]);
        let trace = p(&[2, 2, 36]);
        ensure(cd.norm == norm, || format!("a = {a}: norm {} vs {norm}", cd.norm))?;
        ensure(cd.trace == trace, || format!("a = {a}: trace {} vs {trace}", cd.trace))?;
        let c = [a * a + a + 8, a * a - a + 1, 2 - a];
        ensure(BigInt::from(matrix_norm(a, c)) == norm, || format!("a = {a}: determinant oracle disagrees"))?;
        ensure(BigInt::from(matrix_trace(a, c)) == trace, || format!("a = {a}: matrix trace disagrees"))?;
    }
    Ok("a in [-1,100]".into())
}

fn lemma_suite() -> Outcome {
    let start = Instant::now();
    let opts = Options {
        exp_box: EXP_BOX,
        width: None,
    };
    let plan = [
        (Claim::TriangleNormOrder, 3..=50),
        (Claim::UnitsWithSmallConjugates, 7..=30),
        (Claim::LargeUnitAlternatives, 7..=30),
        (Claim::UnitsBelowGamma, 7..=30),
        (Claim::SmallNormRepresentatives, 15..=40),
        (Claim::IndecomposableSquares, 15..=40),
        (Claim::DecomposableSquares, 15..=40),
    ];
    let mut checked = 0;
    for (claim, range) in plan {
        let report = verify(claim, Some(range.clone()), &opts).map_err(|e| e.to_string())?;
        let bad: Vec<i64> = report.entries.iter().filter(|e| e.status != pythcubic_core::verify::Status::Pass).map(|e| e.a).collect();
        ensure(bad.is_empty(), || format!("{claim} not passing at a = {bad:?}"))?;
        ensure(report.entries.len() == range.count(), || format!("{claim}: missing entries"))?;
        checked += report.entries.len();
    }
    let t = start.elapsed();
    ensure(t < LEMMA_SUITE_TOTAL, || format!("took {t:?}"))?;
    Ok(format!("{checked} (claim, a) checks, {t:?}"))
}

fn root_estimates() -> Outcome {
    let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
    for a in 7i64..=100 {
        let f = field(a);
        let fine = f.refine_embeddings(&q(1, 1 << 40)).map_err(|e| e.to_string())?;
        let brackets = [
            (q(a + 1, 1), q(a + 1, 1) + q(2, a)),
            (q(-1, 1) - q(1, a + 1), q(-1, 1) - q(1, a + 2)),
            (q(-1, a + 2), q(-1, a + 3)),
        ];
        for (j, (lo, hi)) in brackets.iter().enumerate() {
            for iv in [f.roots().root(j), fine.root(j)] {
                ensure(iv.strictly_inside(lo, hi), || format!("a = {a}, root {j}: {iv} not inside ({lo}, {hi})"))?;
            }
        }
    }
    Ok("a in [7,100], cached and 2^-40 intervals".into())
}

fn small_parameter_table() -> Outcome {
    let start = Instant::now();
    let rows = [(-1, [7, 0, 0], 4), (0, [0, -8, 8], 5), (1, [4, -3, 2], 5), (2, [7, 0, 1], 5)];
    let mut lengths = Vec::new();
    for (a, c, bound) in rows {
        let r = pythagoras_length(&elem(a, c), 10).map_err(|e| e.to_string())?;
        let r = r.ok_or_else(|| format!("a = {a}: no representation within 10"))?;
        ensure(r.witness.is_valid(), || format!("a = {a}: bad witness"))?;
        ensure(r.length >= bound, || format!("a = {a}: length {} < {bound}", r.length))?;
        lengths.push(r.length);
    }
    let t = start.elapsed();
    ensure(t < SMALL_PARAMETER_TOTAL, || format!("took {t:?}"))?;
    Ok(format!("exact lengths {lengths:?}, {t:?}"))
}

fn oracle_equivalence() -> Outcome {
    for a in 3..=15 {
        let g = gamma(a);
        let brute = square_set(&squares_below_bruteforce(&g).map_err(|e| e.to_string())?);
        let structured = square_set(&squares_below_structured(&g, EXP_BOX).map_err(|e| e.to_string())?);
        ensure(brute == structured, || format!("a = {a}: square lists differ"))?;
    }
    let mut indecomposables = 0;
    for a in -1i64..=6 {
        let f = field(a);
        let bound = 20 * (a + 2);
        let brute: BTreeSet<OrderElement> = brute_force_indecomposables(&f, bound).into_iter().collect();
        let reps = theorem12_list(&f);
        for e in totally_positive_up_to_trace(&f, bound) {
            let listed = match_up_to_totally_positive_unit(&e, &reps).is_some();
            ensure(listed == brute.contains(&e), || {
                format!("a = {a}: {e} listed = {listed}, indecomposable = {}", brute.contains(&e))
            })?;
        }
        indecomposables += brute.len();
    }
    Ok(format!("squares a in [3,15]; {indecomposables} indecomposables a in [-1,6] at trace <= 20(a+2)"))
}

fn property_suites() -> Outcome {
    let config = Config {
        failure_persistence: None,
        ..Config::with_cases(PROPERTY_CASES)
    };
    let runner = || TestRunner::new_with_rng(config.clone(), TestRng::deterministic_rng(config.rng_algorithm));
    fn err<T: std::fmt::Debug>(name: &str, e: proptest::test_runner::TestError<T>) -> String {
        format!("{name}: {e}")
    }
    runner()
        .run(&(-1i64..=50, coords(40), coords(40), coords(40)), |(a, p, q, r)| ring_axioms(a, p, q, r))
        .map_err(|e| err("ring axioms", e))?;
    runner()
        .run(&(-1i64..=50, coords(60), coords(60)), |(a, p, q)| norm_multiplicative(a, p, q))
        .map_err(|e| err("norm multiplicativity", e))?;
    runner()
        .run(&(-1i64..=50, coords(30), coords(6), coords(6), coords(30)), |(a, p, s, t, w)| {
            partial_order(a, p, s, t, w)
        })
        .map_err(|e| err("partial order", e))?;
    runner()
        .run(&(-1i64..=50, nonzero_coords(50)), |(a, p)| square_positivity(a, p))
        .map_err(|e| err("square positivity", e))?;
    runner()
        .run(&(-1i64..=50, nonzero_coords(30)), |(a, p)| signature_agreement(a, p))
        .map_err(|e| err("signature agreement", e))?;
    Ok(format!("5 suites x {PROPERTY_CASES} cases"))
}

#[test]
fn acceptance_criteria() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("six-square witness", six_square_witness),
        ("square census below gamma", square_census),
        ("gamma needs six squares", main_theorem),
        ("norm and trace of gamma", norm_trace_formulas),
        ("lemma suite", lemma_suite),
        ("root estimates", root_estimates),
        ("small-parameter lengths", small_parameter_table),
        ("oracle equivalence", oracle_equivalence),
        ("property suites", property_suites),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panicked".into()))
        });
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {} PASS {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                println!("criterion {} FAIL {name}: {why} [{t:.2?}]", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
