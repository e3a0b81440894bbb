//! Enumeration of the elements of `Z[rho]` whose conjugates lie in a given box.
//!
//! Coordinates are recovered from conjugates by Lagrange interpolation at the
//! three roots. With interval weights this gives an outward-rounded range for
//! `z` and `y`; for each pair the admissible `x` is the intersection of the
//! three per-embedding constraints. Every element with conjugates inside the
//! box is produced; a few outside it may be too, so callers filter exactly.

use std::sync::Arc;

use num::BigInt;

use crate::element::OrderElement;
use crate::field::FieldParam;
use crate::interval::Interval;

/// Interval weights `(wx, wy, wz)` per embedding, with
/// `coord = sum_j w[j] * e_j` for an element with conjugates `e_j`.
fn interpolation_weights(field: &FieldParam) -> [[Interval; 3]; 3] {
    let r = field.roots().all();
    let mut wx = Vec::with_capacity(3);
    let mut wy = Vec::with_capacity(3);
    let mut wz = Vec::with_capacity(3);
    for j in 0..3 {
        let k = (j + 1) % 3;
        let l = (j + 2) % 3;
        let inv = (&(&r[j] - &r[k]) * &(&r[j] - &r[l])).recip();
        wz.push(inv.clone());
        wy.push(-&(&(&r[k] + &r[l]) * &inv));
        wx.push(&(&r[k] * &r[l]) * &inv);
    }
    let arr = |v: Vec<Interval>| -> [Interval; 3] { v.try_into().expect("three weights") };
    [arr(wx), arr(wy), arr(wz)]
}

fn combine(weights: &[Interval; 3], bounds: &[Interval; 3]) -> Interval {
    let mut acc = &weights[0] * &bounds[0];
    for j in 1..3 {
        acc = &acc + &(&weights[j] * &bounds[j]);
    }
    acc
}

/// Calls `visit` for every element whose `j`-th conjugate may lie in
/// `bounds[j]`. The set visited contains every element that actually does.
pub fn for_each_in_conjugate_box<F>(field: &Arc<FieldParam>, bounds: &[Interval; 3], mut visit: F)
where
    F: FnMut(OrderElement),
{
    let roots = field.roots().all();
    let [_, wy, wz] = interpolation_weights(field);
    let Some((z_lo, z_hi)) = combine(&wz, bounds).integer_span() else {
        return;
    };
    let Some((y_lo, y_hi)) = combine(&wy, bounds).integer_span() else {
        return;
    };
    let mut z = z_lo;
    while z <= z_hi {
        let mut y = y_lo.clone();
        while y <= y_hi {
            // x lies in bounds[j] - (y r_j + z r_j^2) for each j
            let probe = OrderElement::from_xyz(field, 0, y.clone(), z.clone());
            let mut x_range = Some(&bounds[0] - &probe.embedding_enclosure(0, &roots[0]));
            for j in 1..3 {
                let allowed = &bounds[j] - &probe.embedding_enclosure(j, &roots[j]);
                x_range = x_range.and_then(|cur| cur.intersect(&allowed));
            }
            if let Some((x_lo, x_hi)) = x_range.and_then(|r| r.integer_span()) {
                let mut x = x_lo;
                while x <= x_hi {
                    visit(OrderElement::from_xyz(field, x.clone(), y.clone(), z.clone()));
                    x += 1;
                }
            }
            y += 1;
        }
        z += 1;
    }
}

pub fn elements_in_conjugate_box(field: &Arc<FieldParam>, bounds: &[Interval; 3]) -> Vec<OrderElement> {
    let mut out = Vec::new();
    for_each_in_conjugate_box(field, bounds, |e| out.push(e));
    out
}

/// Symmetric box `|e_j| <= b_j`.
pub fn symmetric_bounds(b: [num::BigRational; 3]) -> [Interval; 3] {
    b.map(|v| Interval::new(-v.clone(), v))
}

/// Box `[0, b_j]`.
pub fn positive_bounds(b: [num::BigRational; 3]) -> [Interval; 3] {
    b.map(|v| Interval::new(num::BigRational::from_integer(BigInt::from(0)), v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    /// Naive coordinate-cube scan used as the reference.
    fn naive(field: &Arc<FieldParam>, bound: i64, cube: i64) -> Vec<OrderElement> {
        let mut out = Vec::new();
        for x in -cube..=cube {
            for y in -cube..=cube {
                for z in -cube..=cube {
                    let e = OrderElement::from_xyz(field, x, y, z);
                    let b = OrderElement::from_int(field, bound);
                    // |e_j| <= bound  <=>  bound^2 - e^2 is totally nonnegative
                    if b.square().totally_geq(&e.square()) {
                        out.push(e);
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn box_enumeration_matches_naive_scan() {
        for a in [-1, 0, 2, 5] {
            let f = FieldParam::new(a).unwrap();
            let bound = 4;
            let mut found: Vec<_> = elements_in_conjugate_box(&f, &symmetric_bounds([q(bound), q(bound), q(bound)]))
                .into_iter()
                .filter(|e| OrderElement::from_int(&f, bound).square().totally_geq(&e.square()))
                .collect();
            found.sort();
            assert_eq!(found, naive(&f, bound, 14), "a = {a}");
            assert!(!found.is_empty());
        }
    }

    #[test]
    fn empty_box_yields_nothing() {
        let f = FieldParam::new(3).unwrap();
        let half = BigRational::new(1.into(), 3.into());
        let bounds = [
            Interval::new(half.clone(), half.clone() * q(2)),
            Interval::new(half.clone(), half.clone() * q(2)),
            Interval::new(half.clone(), half * q(2)),
        ];
        // conjugates all in [1/3, 2/3] would force a trace in [1, 2] and norm < 1
        let hits: Vec<_> = elements_in_conjugate_box(&f, &bounds)
            .into_iter()
            .filter(|e| {
                let emb = e.embeddings();
                (0..3).all(|j| !emb[j].is_disjoint(&bounds[j]))
            })
            .collect();
        assert!(hits.is_empty());
    }
}
