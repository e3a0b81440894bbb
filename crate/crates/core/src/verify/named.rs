//! Specific elements that the checks refer to.

use std::sync::Arc;

use crate::element::{OrderElement, Signature};
use crate::field::FieldParam;

/// `a^2+a+8 + (a^2-a+1) rho + (2-a) rho^2`, a sum of six squares that is not
/// a sum of five for `a >= 3`.
pub fn gamma(field: &Arc<FieldParam>) -> OrderElement {
    let a = field.a();
    OrderElement::from_xyz(field, a * a + a + 8, a * a - a + 1, 2 - a)
}

/// `7 + rho^2`, what remains of `gamma` after removing its odd square.
pub fn delta(field: &Arc<FieldParam>) -> OrderElement {
    OrderElement::from_xyz(field, 7, 0, 1)
}

/// `1, 1, 1, 2, rho, a+1 + a rho - rho^2`; their squares add up to `gamma`.
pub fn six_square_roots(field: &Arc<FieldParam>) -> [OrderElement; 6] {
    let a = field.a();
    let one = OrderElement::one(field);
    [
        one.clone(),
        one.clone(),
        one,
        OrderElement::from_int(field, 2),
        OrderElement::rho(field),
        OrderElement::from_xyz(field, a + 1, a, -1),
    ]
}

/// The three conjugates of `rho` as elements of the order.
pub fn rho_conjugates(field: &Arc<FieldParam>) -> [OrderElement; 3] {
    OrderElement::rho(field).conjugates()
}

/// The signed indecomposables whose squares lie below `gamma` for large `a`,
/// with their signatures: `1`, `rho`, `rho' rho'' (rho^2 - rho)`,
/// `rho'' rho (rho'^2 - rho')`, `rho'' rho (rho'^2 - 2 rho')`,
/// `rho rho' (rho''^2 - (a-1) rho'')`.
pub fn signature_table(field: &Arc<FieldParam>) -> Vec<(OrderElement, Signature)> {
    let a = field.a();
    let [r0, r1, r2] = rho_conjugates(field);
    let sig = |s: &str| s.parse::<Signature>().expect("literal signature");
    let lin = |r: &OrderElement, c: i64| &r.square() - &r.scale(&c.into());
    vec![
        (OrderElement::one(field), Signature::TOTALLY_POSITIVE),
        (r0.clone(), sig("(+,-,-)")),
        (&(&r1 * &r2) * &lin(&r0, 1), sig("(+,-,-)")),
        (&(&r2 * &r0) * &lin(&r1, 1), sig("(-,-,+)")),
        (&(&r2 * &r0) * &lin(&r1, 2), sig("(-,-,+)")),
        (&(&r0 * &r1) * &lin(&r2, a - 1), sig("(-,+,-)")),
    ]
}

/// The four squares of non-unit indecomposables below `gamma`, written out in
/// coordinates.
pub fn indecomposable_squares(field: &Arc<FieldParam>) -> [OrderElement; 4] {
    let a = field.a();
    [
        OrderElement::from_xyz(field, 1, -2, 1),
        OrderElement::from_xyz(field, a * a + a + 1, a * a - a + 1, 1 - a),
        OrderElement::from_xyz(field, a * a - a, a * a - 3 * a + 1, 3 - a),
        OrderElement::from_xyz(field, a * a + a - 1, a * a - a - 3, 2 - a),
    ]
}

/// The same four squares, computed as products of conjugates.
pub fn indecomposable_square_products(field: &Arc<FieldParam>) -> [OrderElement; 4] {
    let rows = signature_table(field);
    [2, 3, 4, 5].map(|i| rows[i].0.square())
}

/// `1, 4, 9, rho^2` and the four squares of non-unit indecomposables.
pub fn generic_squares_below_gamma(field: &Arc<FieldParam>) -> Vec<OrderElement> {
    let mut out: Vec<OrderElement> = [1, 4, 9].into_iter().map(|n| OrderElement::from_int(field, n)).collect();
    out.push(OrderElement::rho(field).square());
    out.extend(indecomposable_squares(field));
    out
}

/// Additional squares below `gamma` at the two smallest admissible `a`.
pub fn extra_squares_below_gamma(field: &Arc<FieldParam>) -> Vec<OrderElement> {
    match field.a() {
        3 => vec![
            OrderElement::from_xyz(field, 20, 11, -3),
            OrderElement::from_xyz(field, 1, 2, 1),
        ],
        4 => vec![OrderElement::from_xyz(field, 1, 2, 1)],
        _ => Vec::new(),
    }
}

/// `(a, element, lower bound)` for the small parameters `-1 <= a <= 2`.
pub const SMALL_PARAMETER_ROWS: [(i64, [i64; 3], usize); 4] = [
    (-1, [7, 0, 0], 4),
    (0, [0, -8, 8], 5),
    (1, [4, -3, 2], 5),
    (2, [7, 0, 1], 5),
];
