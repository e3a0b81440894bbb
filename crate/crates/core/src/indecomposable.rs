//! Totally positive indecomposable elements and their signed unit multiples.
//!
//! Up to multiplication by totally positive units, the totally positive
//! indecomposables of `Z[rho]` are `1`, `1 + rho + rho^2` and the triangle
//!
//! ```text
//! alpha = -v - w rho + (v+1) rho^2,   0 <= v <= a,   v(a+2)+1 <= w <= (v+1)(a+1).
//! ```
//!
//! Writing `w = v(a+2) + 1 + W` gives `alpha(v, W)`. The reduced triangle keeps
//! one representative per orbit under conjugation and unit multiplication.
//! Multiplying by a unit of signature `sigma` turns these into the
//! `sigma`-indecomposables.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::sync::Arc;

use num::{BigInt, BigRational, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::{OrderElement, Signature};
use crate::error::{Error, Result};
use crate::field::FieldParam;
use crate::interval::Interval;
use crate::lattice;
use crate::units::UnitTable;

/// A point `(v, w)` of the triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TrianglePoint {
    pub v: i64,
    pub w: i64,
}

impl TrianglePoint {
    /// `(v, W)` with `w = v(a+2) + 1 + W`.
    pub fn from_offset(a: i64, v: i64, offset: i64) -> Self {
        Self {
            v,
            w: v * (a + 2) + 1 + offset,
        }
    }

    /// The `W` of this point.
    pub fn offset(&self, a: i64) -> i64 {
        self.w - self.v * (a + 2) - 1
    }

    pub fn element(&self, field: &Arc<FieldParam>) -> OrderElement {
        OrderElement::from_xyz(field, -self.v, -self.w, self.v + 1)
    }

    pub fn in_triangle(&self, a: i64) -> bool {
        0 <= self.v && self.v <= a && self.v * (a + 2) < self.w && self.w <= (self.v + 1) * (a + 1)
    }
}

/// `alpha(v, W) = -v - (v(a+2)+1+W) rho + (v+1) rho^2`.
pub fn alpha(field: &Arc<FieldParam>, v: i64, offset: i64) -> OrderElement {
    TrianglePoint::from_offset(field.a(), v, offset).element(field)
}

/// Every point of the full triangle, ordered by `(v, w)`.
pub fn triangle(a: i64) -> Vec<TrianglePoint> {
    (0..=a)
        .flat_map(|v| (v * (a + 2) + 1..=(v + 1) * (a + 1)).map(move |w| TrianglePoint { v, w }))
        .collect()
}

/// The reduced triangle, for `a = 3A + a0`.
pub fn triangle0(a: i64) -> Result<Vec<TrianglePoint>> {
    if a < 0 {
        return Err(Error::InvalidParameter(a));
    }
    let (big_a, a0) = (a / 3, a % 3);
    let v_max = if a0 == 0 { big_a - 1 } else { big_a };
    let mut out: Vec<TrianglePoint> = (0..=v_max)
        .flat_map(|v| (v..=a - 2 * v - 1).map(move |w_off| TrianglePoint::from_offset(a, v, w_off)))
        .collect();
    if a0 == 0 {
        out.push(TrianglePoint::from_offset(a, big_a, big_a));
    }
    Ok(out)
}

/// `1`, `1 + rho + rho^2`, then the triangle in `(v, w)` order.
pub fn theorem12_list(field: &Arc<FieldParam>) -> Vec<OrderElement> {
    let mut out = vec![OrderElement::one(field), OrderElement::from_xyz(field, 1, 1, 1)];
    out.extend(triangle(field.a()).into_iter().map(|p| p.element(field)));
    out
}

/// `{alpha, alpha', alpha''}` without repeats, in conjugate order.
fn distinct_conjugates(alpha: &OrderElement) -> Vec<OrderElement> {
    let mut out: Vec<OrderElement> = Vec::with_capacity(3);
    for c in alpha.conjugates() {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    out
}

/// A `sigma`-indecomposable `beta = eps * alpha^(c)` found by a search,
/// with its square and signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedIndecomposable {
    pub element: OrderElement,
    pub square: OrderElement,
    pub signature: Signature,
}

/// Every `beta = ±eps * alpha^(c)` with `eps = rho^k rho'^l`, `|k|, |l| <= exp_box`,
/// `alpha` from [`theorem12_list`] and `alpha^(c)` one of its conjugates, such
/// that `beta^2 ⪯ target`. Both signs are returned. Sorted by element.
pub fn indecomposables_below(target: &OrderElement, exp_box: u32) -> Vec<SignedIndecomposable> {
    let field = target.field();
    let target_norm = target.norm();
    // beta^2 ⪯ target forces N(alpha)^2 = N(beta^2) <= N(target)
    let reps: Vec<OrderElement> = theorem12_list(field)
        .into_iter()
        .filter(|a| {
            let n = a.norm();
            &n * &n <= target_norm
        })
        .collect();
    let table = UnitTable::new(field, exp_box);
    let units: Vec<(&OrderElement, OrderElement)> = table.iter().map(|(_, u)| (u, u.square())).collect();
    let target_trace = target.trace();

    let mut bases: Vec<OrderElement> = reps.iter().flat_map(distinct_conjugates).collect();
    bases.sort();
    bases.dedup();

    let mut found: Vec<OrderElement> = bases
        .par_iter()
        .flat_map_iter(|base| {
            let base_sq = base.square();
            let mut hits = Vec::new();
            for (unit, unit_sq) in &units {
                let sq = unit_sq * &base_sq;
                if sq.trace() > target_trace {
                    continue;
                }
                if target.totally_geq(&sq) {
                    let beta = *unit * base;
                    hits.push(-&beta);
                    hits.push(beta);
                }
            }
            hits
        })
        .collect();
    found.sort();
    found.dedup();
    found
        .into_iter()
        .map(|element| {
            let square = element.square();
            let signature = element.signature().expect("units times nonzero elements are nonzero");
            SignedIndecomposable {
                element,
                square,
                signature,
            }
        })
        .collect()
}

/// The `sig`-indecomposables `beta` with `beta^2 ⪯ target`.
pub fn sigma_indecomposables_below(
    target: &OrderElement,
    sig: Signature,
    exp_box: u32,
) -> Result<Vec<OrderElement>> {
    if !target.is_totally_positive() {
        return Err(Error::NotTotallyPositive(target.to_string()));
    }
    Ok(indecomposables_below(target, exp_box)
        .into_iter()
        .filter(|b| b.signature == sig)
        .map(|b| b.element)
        .collect())
}

/// All totally positive elements with trace at most `trace_bound`.
pub fn totally_positive_up_to_trace(field: &Arc<FieldParam>, trace_bound: i64) -> Vec<OrderElement> {
    let t = BigRational::from_integer(trace_bound.into());
    let bounds = lattice::positive_bounds([t.clone(), t.clone(), t]);
    let cap = BigInt::from(trace_bound);
    let mut out: Vec<OrderElement> = lattice::elements_in_conjugate_box(field, &bounds)
        .into_iter()
        .filter(|e| {
            let cd = e.char_data();
            cd.all_roots_positive() && cd.trace <= cap
        })
        .collect();
    out.sort();
    out
}

/// A split `alpha = beta + (alpha - beta)` into totally positive parts, if any.
pub fn find_decomposition(alpha: &OrderElement) -> Option<OrderElement> {
    let field = alpha.field();
    let zero = BigRational::zero();
    let bounds: [Interval; 3] = alpha.embeddings().map(|e| Interval::new(zero.clone(), e.hi().clone()));
    let mut witness = None;
    lattice::for_each_in_conjugate_box(field, &bounds, |beta| {
        if witness.is_none() && beta.is_totally_positive() && (alpha - &beta).is_totally_positive() {
            witness = Some(beta);
        }
    });
    witness
}

/// Totally positive elements of trace at most `trace_bound` that admit no
/// split into two totally positive summands. Independent of the structure
/// theorem. Both summands of a split have smaller trace, so they are among
/// the enumerated elements; every pairwise sum within the trace bound is
/// marked decomposable and the rest are returned.
pub fn brute_force_indecomposables(field: &Arc<FieldParam>, trace_bound: i64) -> Vec<OrderElement> {
    let mut candidates = totally_positive_up_to_trace(field, trace_bound);
    candidates.sort_by_key(|e| e.trace());
    let small: Option<Vec<([i64; 3], i64)>> = candidates
        .iter()
        .map(|e| {
            let [x, y, z] = e.coords();
            Some(([i64::try_from(x).ok()?, i64::try_from(y).ok()?, i64::try_from(z).ok()?], i64::try_from(e.trace()).ok()?))
        })
        .collect();
    let Some(small) = small else {
        // coordinates beyond i64: fall back to one splitting search per element
        let mut out: Vec<OrderElement> = candidates
            .into_par_iter()
            .filter(|alpha| find_decomposition(alpha).is_none())
            .collect();
        out.sort();
        return out;
    };
    let decomposable: HashSet<[i64; 3]> = (0..small.len())
        .into_par_iter()
        .fold(HashSet::new, |mut set, i| {
            let (p, tp) = small[i];
            for (q, tq) in &small[i..] {
                if tp + tq > trace_bound {
                    break;
                }
                set.insert([p[0] + q[0], p[1] + q[1], p[2] + q[2]]);
            }
            set
        })
        .reduce(HashSet::new, |mut acc, set| {
            acc.extend(set);
            acc
        });
    let mut out: Vec<OrderElement> = candidates
        .into_iter()
        .zip(&small)
        .filter(|(_, (c, _))| !decomposable.contains(c))
        .map(|(e, _)| e)
        .collect();
    out.sort();
    out
}

/// If `e = eta * rep` for a totally positive unit `eta` and some `rep`,
/// returns the index of the first such `rep` and `eta`.
pub fn match_up_to_totally_positive_unit(
    e: &OrderElement,
    reps: &[OrderElement],
) -> Option<(usize, OrderElement)> {
    let n = e.norm();
    reps.iter().enumerate().find_map(|(i, rep)| {
        if rep.norm().abs() != n.abs() {
            return None;
        }
        let q = e.exact_div(rep)?;
        (q.is_unit() && q.is_totally_positive()).then_some((i, q))
    })
}

/// Groups elements by signature.
pub fn by_signature(elems: &[SignedIndecomposable]) -> BTreeMap<Signature, BTreeSet<OrderElement>> {
    let mut m: BTreeMap<Signature, BTreeSet<OrderElement>> = BTreeMap::new();
    for e in elems {
        m.entry(e.signature).or_default().insert(e.element.clone());
    }
    m
}
