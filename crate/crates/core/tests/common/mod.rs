//! Shared strategies, oracles and property bodies for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num::BigInt;
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

use pythcubic_core::{FieldParam, OrderElement, Sign, Signature};

pub fn field(a: i64) -> Arc<FieldParam> {
    static CACHE: OnceLock<Mutex<HashMap<i64, Arc<FieldParam>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    cache
        .lock()
        .unwrap()
        .entry(a)
        .or_insert_with(|| FieldParam::new(a).unwrap())
        .clone()
}

pub fn elem(a: i64, c: [i64; 3]) -> OrderElement {
    OrderElement::from_xyz(&field(a), c[0], c[1], c[2])
}

pub fn coords(range: i64) -> impl Strategy<Value = [i64; 3]> {
    [-range..=range, -range..=range, -range..=range]
}

pub fn nonzero_coords(range: i64) -> impl Strategy<Value = [i64; 3]> {
    coords(range).prop_filter("nonzero", |c| c.iter().any(|&v| v != 0))
}

/// `f(t) = t^3 - a t^2 - (a+3) t - 1`.
fn f64_poly(a: f64, t: f64) -> f64 {
    ((t - a) * t - (a + 3.0)) * t - 1.0
}

/// Roots by plain bisection in the brackets `(a+1, a+3)`, `(-2, -1)`, `(-1, 0)`.
pub fn float_roots(a: i64) -> [f64; 3] {
    let af = a as f64;
    let solve = |mut lo: f64, mut hi: f64| {
        let s_lo = f64_poly(af, lo).signum();
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if f64_poly(af, mid).signum() == s_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        0.5 * (lo + hi)
    };
    [solve(af + 1.0, af + 3.0), solve(-2.0, -1.0), solve(-1.0, 0.0)]
}

/// Floating-point conjugates of `x + y r + z r^2`.
pub fn float_conjugates(a: i64, c: [i64; 3]) -> [f64; 3] {
    float_roots(a).map(|r| c[0] as f64 + c[1] as f64 * r + c[2] as f64 * r * r)
}

/// Columns `e, e rho, e rho^2` of the multiplication-by-`e` matrix, built
/// from scratch in `i128` with `rho^3 = 1 + (a+3) rho + a rho^2`.
fn mult_matrix(a: i64, c: [i64; 3]) -> [[i128; 3]; 3] {
    let a = a as i128;
    let times_rho = |[p, q, r]: [i128; 3]| [r, p + (a + 3) * r, q + a * r];
    let c0 = c.map(|v| v as i128);
    let c1 = times_rho(c0);
    [c0, c1, times_rho(c1)]
}

pub fn matrix_norm(a: i64, c: [i64; 3]) -> i128 {
    let [c0, c1, c2] = mult_matrix(a, c);
    c0[0] * (c1[1] * c2[2] - c1[2] * c2[1]) - c1[0] * (c0[1] * c2[2] - c0[2] * c2[1])
        + c2[0] * (c0[1] * c1[2] - c0[2] * c1[1])
}

pub fn matrix_trace(a: i64, c: [i64; 3]) -> i128 {
    let [c0, c1, c2] = mult_matrix(a, c);
    c0[0] + c1[1] + c2[2]
}

// ----- property bodies, shared by the proptest suite and the acceptance run -----

pub fn ring_axioms(a: i64, p: [i64; 3], q: [i64; 3], r: [i64; 3]) -> Result<(), TestCaseError> {
    let (x, y, z) = (elem(a, p), elem(a, q), elem(a, r));
    prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
    prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
    prop_assert_eq!(&x * &y, &y * &x);
    prop_assert_eq!(&x + &y, &y + &x);
    prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
    prop_assert_eq!(&x * &OrderElement::one(x.field()), x.clone());
    prop_assert!((&x + &(-&x)).is_zero());
    Ok(())
}

pub fn norm_multiplicative(a: i64, p: [i64; 3], q: [i64; 3]) -> Result<(), TestCaseError> {
    let (x, y) = (elem(a, p), elem(a, q));
    prop_assert_eq!((&x * &y).norm(), x.norm() * y.norm());
    prop_assert_eq!((&x + &y).trace(), x.trace() + y.trace());
    prop_assert_eq!(x.norm(), BigInt::from(matrix_norm(a, p)));
    prop_assert_eq!(x.trace(), BigInt::from(matrix_trace(a, p)));
    Ok(())
}

pub fn signature_agreement(a: i64, p: [i64; 3]) -> Result<(), TestCaseError> {
    let e = elem(a, p);
    let sig = e.signature().unwrap();
    prop_assert_eq!(e.is_totally_positive(), sig == Signature::TOTALLY_POSITIVE);
    prop_assert_eq!((-&e).signature().unwrap(), sig.negate());
    // an independent floating-point check wherever the value is clearly away from 0
    let fl = float_conjugates(a, p);
    let scale = p.iter().map(|v| v.unsigned_abs() as f64).sum::<f64>() * ((a.abs() + 3) as f64).powi(2);
    for j in 0..3 {
        if fl[j].abs() > 1e-9 * scale {
            let expected = if fl[j] > 0.0 { Sign::Plus } else { Sign::Minus };
            prop_assert_eq!(sig.0[j], expected, "embedding {} value {}", j, fl[j]);
        }
    }
    Ok(())
}

pub fn square_positivity(a: i64, p: [i64; 3]) -> Result<(), TestCaseError> {
    let e = elem(a, p);
    let sq = e.square();
    prop_assert!(sq.is_totally_positive());
    prop_assert!(sq.trace() >= BigInt::from(3));
    Ok(())
}

/// Reflexivity, antisymmetry and transitivity of `⪰`. Comparable triples are
/// built by adding squares; `other` is an unrelated element.
pub fn partial_order(a: i64, p: [i64; 3], s: [i64; 3], t: [i64; 3], other: [i64; 3]) -> Result<(), TestCaseError> {
    let x = elem(a, p);
    let y = &x + &elem(a, s).square();
    let z = &y + &elem(a, t).square();
    let w = elem(a, other);
    prop_assert!(x.totally_geq(&x));
    prop_assert!(y.totally_geq(&x) && z.totally_geq(&y));
    prop_assert!(z.totally_geq(&x));
    if x.totally_geq(&w) && w.totally_geq(&x) {
        prop_assert_eq!(&x, &w);
    }
    if y != x {
        prop_assert!(!x.totally_geq(&y));
    }
    if w.totally_geq(&z) {
        prop_assert!(w.totally_geq(&x));
    }
    Ok(())
}
