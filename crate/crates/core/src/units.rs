//! Units `rho^k rho'^l` of `Z[rho]` and bounded searches over them.
//!
//! `rho` and `rho'` are a fundamental system, so up to sign every unit has
//! this shape. `rho^k rho'^l` is totally positive exactly when `k` and `l`
//! are both even; the sign `-1` is never needed for totally positive units.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::element::OrderElement;
use crate::field::FieldParam;

/// Default bound on `|k|, |l|` for unit searches.
pub const DEFAULT_EXP_BOX: u32 = 10;

/// The unit `rho^k rho'^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitExponent {
    pub k: i32,
    pub l: i32,
}

impl UnitExponent {
    pub const ONE: UnitExponent = UnitExponent { k: 0, l: 0 };

    pub fn new(k: i32, l: i32) -> Self {
        Self { k, l }
    }

    pub fn is_totally_positive(&self) -> bool {
        self.k % 2 == 0 && self.l % 2 == 0
    }
}

impl fmt::Display for UnitExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ρ^{}·ρ'^{}", self.k, self.l)
    }
}

fn rho_inverse(field: &Arc<FieldParam>) -> OrderElement {
    let a = field.a();
    OrderElement::from_xyz(field, -(a + 3), -a, 1)
}

fn signed_power(base: &OrderElement, inverse: &OrderElement, e: i32) -> OrderElement {
    if e >= 0 {
        base.pow(e as u32)
    } else {
        inverse.pow(e.unsigned_abs())
    }
}

pub fn unit_element(field: &Arc<FieldParam>, u: UnitExponent) -> OrderElement {
    let rho = OrderElement::rho(field);
    let rho_inv = rho_inverse(field);
    let left = signed_power(&rho, &rho_inv, u.k);
    let right = signed_power(&rho.galois_image(), &rho_inv.galois_image(), u.l);
    &left * &right
}

/// All units `rho^k rho'^l` with `|k|, |l| <= exp_box`, built by repeated
/// multiplication rather than one power per entry.
pub struct UnitTable {
    exp_box: u32,
    units: BTreeMap<UnitExponent, OrderElement>,
}

impl UnitTable {
    pub fn new(field: &Arc<FieldParam>, exp_box: u32) -> Self {
        let b = exp_box as i32;
        let powers = |base: OrderElement, inv: OrderElement| -> BTreeMap<i32, OrderElement> {
            let mut m = BTreeMap::new();
            m.insert(0, OrderElement::one(field));
            let (mut up, mut down) = (OrderElement::one(field), OrderElement::one(field));
            for e in 1..=b {
                up = &up * &base;
                down = &down * &inv;
                m.insert(e, up.clone());
                m.insert(-e, down.clone());
            }
            m
        };
        let rho = OrderElement::rho(field);
        let rho_inv = rho_inverse(field);
        let pk = powers(rho.clone(), rho_inv.clone());
        let pl = powers(rho.galois_image(), rho_inv.galois_image());
        let mut units = BTreeMap::new();
        for (k, left) in &pk {
            for (l, right) in &pl {
                units.insert(UnitExponent::new(*k, *l), left * right);
            }
        }
        Self { exp_box, units }
    }

    pub fn exp_box(&self) -> u32 {
        self.exp_box
    }

    pub fn get(&self, u: UnitExponent) -> Option<&OrderElement> {
        self.units.get(&u)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&UnitExponent, &OrderElement)> {
        self.units.iter()
    }

    pub fn totally_positive(&self) -> impl Iterator<Item = (&UnitExponent, &OrderElement)> {
        self.units.iter().filter(|(u, _)| u.is_totally_positive())
    }
}

/// `|e_j| <= p/q`, decided exactly.
fn abs_conjugate_at_most(e: &OrderElement, j: usize, bound: &BigRational) -> bool {
    let (p, q) = (bound.numer(), bound.denom());
    e.embedding_cmp(j, p, q).is_le() && (-e).embedding_cmp(j, p, q).is_le()
}

/// Exponents `(k, l)` in the box whose unit has `|u_j| <= bounds[j]` for
/// every embedding `j`. Sorted.
pub fn units_in_conjugate_box(
    field: &Arc<FieldParam>,
    bounds: &[BigRational; 3],
    exp_box: u32,
) -> Vec<UnitExponent> {
    let table = UnitTable::new(field, exp_box);
    // sum of squared conjugates bounds the trace of u^2; rejects most units cheaply
    let trace_cap: BigRational = bounds.iter().map(|b| b * b).sum();
    let entries: Vec<_> = table.iter().collect();
    let mut out: Vec<UnitExponent> = entries
        .par_iter()
        .filter(|(_, u)| BigRational::from_integer(u.square().trace()) <= trace_cap)
        .filter(|(_, u)| (0..3).all(|j| abs_conjugate_at_most(u, j, &bounds[j])))
        .map(|(e, _)| **e)
        .collect();
    out.sort();
    out
}

/// Totally positive units `eps` in the box with `eps ⪯ target`.
pub fn totally_positive_units_below(target: &OrderElement, exp_box: u32) -> Vec<(UnitExponent, OrderElement)> {
    let table = UnitTable::new(target.field(), exp_box);
    let mut out: Vec<_> = table
        .totally_positive()
        .filter(|(_, u)| target.totally_geq(u))
        .map(|(e, u)| (*e, u.clone()))
        .collect();
    out.sort_by_key(|(e, _)| *e);
    out
}

/// Norm of a unit recomputed through the product of its conjugates.
pub fn unit_norm_check(u: &OrderElement) -> bool {
    let [e0, e1, e2] = u.conjugates();
    let n = &(&e0 * &e1) * &e2;
    n.coords()[1] == BigInt::from(0) && n.coords()[2] == BigInt::from(0) && n.coords()[0].abs().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn generators() {
        for a in [-1, 4, 9] {
            let f = FieldParam::new(a).unwrap();
            assert_eq!(unit_element(&f, UnitExponent::new(1, 0)), OrderElement::rho(&f));
            assert_eq!(unit_element(&f, UnitExponent::new(0, 1)), OrderElement::from_xyz(&f, a + 2, a, -1));
            assert!(unit_element(&f, UnitExponent::ONE).is_one());
        }
    }

    #[test]
    fn rho_squared_is_totally_positive_and_below_gamma() {
        for a in 7..15 {
            let f = FieldParam::new(a).unwrap();
            let u = unit_element(&f, UnitExponent::new(2, 0));
            assert_eq!(u, OrderElement::rho(&f).square());
            assert!(u.is_totally_positive());
            let gamma = OrderElement::from_xyz(&f, a * a + a + 8, a * a - a + 1, 2 - a);
            assert!(gamma.totally_geq(&u));
        }
    }

    #[test]
    fn negative_exponents_invert() {
        let f = FieldParam::new(5).unwrap();
        let u = unit_element(&f, UnitExponent::new(3, -2));
        let v = unit_element(&f, UnitExponent::new(-3, 2));
        assert!((&u * &v).is_one());
    }

    #[test]
    fn table_agrees_with_direct_powers() {
        let f = FieldParam::new(2).unwrap();
        let t = UnitTable::new(&f, 3);
        for (e, u) in t.iter() {
            assert_eq!(u, &unit_element(&f, *e));
            assert!(unit_norm_check(u));
        }
    }

    #[test]
    fn only_one_has_all_conjugates_below_a() {
        let f = FieldParam::new(7).unwrap();
        assert_eq!(units_in_conjugate_box(&f, &[q(7), q(7), q(7)], 10), vec![UnitExponent::ONE]);
        assert_eq!(units_in_conjugate_box(&f, &[q(1), q(1), q(1)], 10), vec![UnitExponent::ONE]);
    }

    #[test]
    fn totally_positive_units_below_gamma_at_a15() {
        let f = FieldParam::new(15).unwrap();
        let gamma = OrderElement::from_xyz(&f, 248, 211, -13);
        let found: Vec<_> = totally_positive_units_below(&gamma, 10).into_iter().map(|(e, _)| e).collect();
        assert_eq!(found, vec![UnitExponent::ONE, UnitExponent::new(2, 0)]);
    }
}
