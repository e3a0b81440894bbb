//! Elements of `Z[rho]` in the power basis `{1, rho, rho^2}`.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::Arc;

use num::{BigInt, Integer, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{bisect_root, FieldParam};
use crate::interval::Interval;

/// Integer arithmetic that may refuse (overflow) or always succeed.
trait Ring: Sized + Clone {
    fn of(v: i64) -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
}

impl Ring for i128 {
    fn of(v: i64) -> Self {
        v as i128
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        self.checked_sub(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
}

impl Ring for BigInt {
    fn of(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
}

fn to_small(c: &[BigInt; 3]) -> Option<[i128; 3]> {
    Some([c[0].to_i64()? as i128, c[1].to_i64()? as i128, c[2].to_i64()? as i128])
}

/// Product in `Z[rho]`, reduced with `rho^3 = 1 + (a+3) rho + a rho^2`.
fn mul_generic<T: Ring>(a: i64, p: &[T; 3], q: &[T; 3]) -> Option<[T; 3]> {
    let c0 = p[0].mul(&q[0])?;
    let c1 = p[0].mul(&q[1])?.add(&p[1].mul(&q[0])?)?;
    let c2 = p[0].mul(&q[2])?.add(&p[1].mul(&q[1])?)?.add(&p[2].mul(&q[0])?)?;
    let c3 = p[1].mul(&q[2])?.add(&p[2].mul(&q[1])?)?;
    let c4 = p[2].mul(&q[2])?;
    // rho^4 = a + (a^2+3a+1) rho + (a^2+a+3) rho^2
    let a_ = T::of(a);
    let x = c0.add(&c3)?.add(&a_.mul(&c4)?)?;
    let y = c1
        .add(&T::of(a + 3).mul(&c3)?)?
        .add(&T::of(a * a + 3 * a + 1).mul(&c4)?)?;
    let z = c2.add(&a_.mul(&c3)?)?.add(&T::of(a * a + a + 3).mul(&c4)?)?;
    Some([x, y, z])
}

pub(crate) fn mul_coords(a: i64, p: &[BigInt; 3], q: &[BigInt; 3]) -> [BigInt; 3] {
    if let (Some(ps), Some(qs)) = (to_small(p), to_small(q)) {
        if let Some(r) = mul_generic(a, &ps, &qs) {
            return r.map(BigInt::from);
        }
    }
    mul_generic(a, p, q).expect("big integer arithmetic cannot overflow")
}

/// Trace, second symmetric function and determinant of the multiplication
/// matrix of `x + y rho + z rho^2`.
fn char_generic<T: Ring>(a: i64, c: &[T; 3]) -> Option<[T; 3]> {
    // column k is the coordinate vector of e * rho^k
    let times_rho = |v: &[T; 3]| -> Option<[T; 3]> {
        Some([
            v[2].clone(),
            v[0].add(&T::of(a + 3).mul(&v[2])?)?,
            v[1].add(&T::of(a).mul(&v[2])?)?,
        ])
    };
    let col0 = c.clone();
    let col1 = times_rho(&col0)?;
    let col2 = times_rho(&col1)?;
    let m = |r: usize, k: usize| -> &T {
        match k {
            0 => &col0[r],
            1 => &col1[r],
            _ => &col2[r],
        }
    };
    let trace = m(0, 0).add(m(1, 1))?.add(m(2, 2))?;
    let minor = |i: usize, j: usize| -> Option<T> { m(i, i).mul(m(j, j))?.sub(&m(i, j).mul(m(j, i))?) };
    let s2 = minor(0, 1)?.add(&minor(0, 2)?)?.add(&minor(1, 2)?)?;
    let cof = |r1: usize, r2: usize| -> Option<T> { m(r1, 1).mul(m(r2, 2))?.sub(&m(r1, 2).mul(m(r2, 1))?) };
    let det = m(0, 0)
        .mul(&cof(1, 2)?)?
        .sub(&m(1, 0).mul(&cof(0, 2)?)?)?
        .add(&m(2, 0).mul(&cof(0, 1)?)?)?;
    Some([trace, s2, det])
}

/// Coefficients of the characteristic polynomial `t^3 - trace t^2 + s2 t - norm`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharData {
    pub trace: BigInt,
    pub s2: BigInt,
    pub norm: BigInt,
}

impl CharData {
    /// All three conjugates are positive. Sound because they are real: the
    /// characteristic polynomial is then negative on `(-inf, 0]`.
    pub fn all_roots_positive(&self) -> bool {
        self.trace.is_positive() && self.s2.is_positive() && self.norm.is_positive()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn from_ordering(o: Ordering) -> Self {
        if o == Ordering::Less {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// Signs of the three conjugates, in embedding order `(rho, rho', rho'')`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Signature(pub [Sign; 3]);

impl Signature {
    pub const TOTALLY_POSITIVE: Signature = Signature([Sign::Plus; 3]);

    pub fn negate(self) -> Self {
        Signature(self.0.map(Sign::flip))
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [s0, s1, s2] = self.0;
        write!(f, "({},{},{})", s0.symbol(), s1.symbol(), s2.symbol())
    }
}

impl FromStr for Signature {
    type Err = String;

    /// Accepts `(+,-,-)`, `+--` and similar.
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let signs: Vec<Sign> = s
            .chars()
            .filter_map(|c| match c {
                '+' => Some(Sign::Plus),
                '-' | '−' => Some(Sign::Minus),
                _ => None,
            })
            .collect();
        match signs.as_slice() {
            [a, b, c] => Ok(Signature([*a, *b, *c])),
            _ => Err(format!("not a signature: {s:?}")),
        }
    }
}

/// `x + y rho + z rho^2` in `Z[rho]`.
#[derive(Clone)]
pub struct OrderElement {
    field: Arc<FieldParam>,
    coords: [BigInt; 3],
}

impl OrderElement {
    pub fn new(field: &Arc<FieldParam>, coords: [BigInt; 3]) -> Self {
        Self {
            field: Arc::clone(field),
            coords,
        }
    }

    pub fn from_xyz(
        field: &Arc<FieldParam>,
        x: impl Into<BigInt>,
        y: impl Into<BigInt>,
        z: impl Into<BigInt>,
    ) -> Self {
        Self::new(field, [x.into(), y.into(), z.into()])
    }

    pub fn from_int(field: &Arc<FieldParam>, n: impl Into<BigInt>) -> Self {
        Self::from_xyz(field, n, 0, 0)
    }

    pub fn zero(field: &Arc<FieldParam>) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: &Arc<FieldParam>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn rho(field: &Arc<FieldParam>) -> Self {
        Self::from_xyz(field, 0, 1, 0)
    }

    /// Parses `x,y,z`.
    pub fn parse(field: &Arc<FieldParam>, s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let [x, y, z] = parts.as_slice() else {
            return Err(Error::Parse(s.to_string()));
        };
        let p = |t: &str| t.parse::<BigInt>().map_err(|_| Error::Parse(s.to_string()));
        Ok(Self::new(field, [p(x)?, p(y)?, p(z)?]))
    }

    pub fn field(&self) -> &Arc<FieldParam> {
        &self.field
    }

    pub fn a(&self) -> i64 {
        self.field.a()
    }

    pub fn coords(&self) -> &[BigInt; 3] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coords[0].is_one() && self.coords[1].is_zero() && self.coords[2].is_zero()
    }

    fn same_field(&self, other: &Self) {
        assert_eq!(
            self.field.a(),
            other.field.a(),
            "elements of different orders combined"
        );
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        Self {
            field: Arc::clone(&self.field),
            coords: self.coords.clone().map(|c| c * k),
        }
    }

    pub fn square(&self) -> Self {
        self * self
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.field);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn char_data(&self) -> CharData {
        let a = self.field.a();
        let [trace, s2, norm] = to_small(&self.coords)
            .and_then(|c| char_generic(a, &c))
            .map(|r| r.map(BigInt::from))
            .unwrap_or_else(|| char_generic(a, &self.coords).expect("big integer arithmetic cannot overflow"));
        CharData { trace, s2, norm }
    }

    pub fn norm(&self) -> BigInt {
        self.char_data().norm
    }

    pub fn trace(&self) -> BigInt {
        self.char_data().trace
    }

    /// Exact test through the characteristic polynomial.
    pub fn is_totally_positive(&self) -> bool {
        self.char_data().all_roots_positive()
    }

    /// `self ⪰ other`: equal, or the difference is totally positive.
    pub fn totally_geq(&self, other: &Self) -> bool {
        self.same_field(other);
        let d = self - other;
        d.is_zero() || d.is_totally_positive()
    }

    /// Image under the automorphism `rho -> rho'`. The conjugates of the
    /// image are `(e', e'', e)`.
    pub fn galois_image(&self) -> Self {
        let (r1, r1sq) = self.field.conj_rho_coords();
        let [x, y, z] = &self.coords;
        let coords = [0, 1, 2].map(|i| {
            let base = if i == 0 { x.clone() } else { BigInt::zero() };
            base + y * &r1[i] + z * &r1sq[i]
        });
        Self::new(&self.field, coords)
    }

    /// `[e, e', e'']` as elements of the order.
    pub fn conjugates(&self) -> [Self; 3] {
        let g1 = self.galois_image();
        let g2 = g1.galois_image();
        [self.clone(), g1, g2]
    }

    /// Exact quotient `self / d` if it lies in `Z[rho]`.
    pub fn exact_div(&self, d: &Self) -> Option<Self> {
        self.same_field(d);
        if d.is_zero() {
            return None;
        }
        let [_, d1, d2] = d.conjugates();
        let n = d.norm();
        let num = &(self * &d1) * &d2;
        let mut coords = num.coords.clone();
        for c in coords.iter_mut() {
            let (q, r) = c.div_rem(&n);
            if !r.is_zero() {
                return None;
            }
            *c = q;
        }
        Some(Self::new(&self.field, coords))
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// Inverse of a unit, `u^-1 = N(u) u' u''`.
    pub fn unit_inverse(&self) -> Option<Self> {
        let n = self.norm();
        if !n.abs().is_one() {
            return None;
        }
        let [_, u1, u2] = self.conjugates();
        Some((&u1 * &u2).scale(&n))
    }

    /// `±self` with the first nonzero coordinate positive.
    pub fn canonical_sign(&self) -> Self {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => -self,
            _ => self.clone(),
        }
    }

    /// Enclosure of the conjugate at embedding `index`, evaluated on `root`.
    pub fn embedding_enclosure(&self, _index: usize, root: &Interval) -> Interval {
        let [x, y, z] = &self.coords;
        let inner = &root.scale(z) + &Interval::from_int(y.clone());
        &(root * &inner) + &Interval::from_int(x.clone())
    }

    /// Enclosures of all three conjugates at the cached precision.
    pub fn embeddings(&self) -> [Interval; 3] {
        let roots = self.field.roots().all();
        [0, 1, 2].map(|j| self.embedding_enclosure(j, &roots[j]))
    }

    /// Exact sign of the conjugate at `index`, refining the root interval
    /// until the enclosure excludes zero.
    pub fn embedding_sign(&self, index: usize) -> Result<Sign> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let a = self.field.a();
        let mut root = self.field.roots().root(index).clone();
        let mut steps = 4;
        loop {
            if let Some(o) = self.embedding_enclosure(index, &root).strict_sign() {
                return Ok(Sign::from_ordering(o));
            }
            for _ in 0..steps {
                root = bisect_root(a, &root);
            }
            steps *= 2;
        }
    }

    pub fn signature(&self) -> Result<Signature> {
        Ok(Signature([
            self.embedding_sign(0)?,
            self.embedding_sign(1)?,
            self.embedding_sign(2)?,
        ]))
    }

    /// Compares the conjugate at `index` with a rational `p/q`, `q > 0`.
    pub fn embedding_cmp(&self, index: usize, p: &BigInt, q: &BigInt) -> Ordering {
        debug_assert!(q.is_positive());
        let d = &self.scale(q) - &Self::from_int(&self.field, p.clone());
        if d.is_zero() {
            Ordering::Equal
        } else {
            match d.embedding_sign(index).expect("nonzero") {
                Sign::Plus => Ordering::Greater,
                Sign::Minus => Ordering::Less,
            }
        }
    }

    /// `x,y,z`.
    pub fn coord_string(&self) -> String {
        let [x, y, z] = &self.coords;
        format!("{x},{y},{z}")
    }
}

impl PartialEq for OrderElement {
    fn eq(&self, other: &Self) -> bool {
        self.field.a() == other.field.a() && self.coords == other.coords
    }
}

impl Eq for OrderElement {}

impl Hash for OrderElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.a().hash(state);
        self.coords.hash(state);
    }
}

impl PartialOrd for OrderElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on `(a, x, y, z)`; a storage order, not the field order.
impl Ord for OrderElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .a()
            .cmp(&other.field.a())
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

impl fmt::Debug for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]_a={}", self.coord_string(), self.field.a())
    }
}

impl fmt::Display for OrderElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        for (c, basis) in self.coords.iter().zip(["", "ρ", "ρ²"]) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = if basis.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                basis.to_string()
            } else {
                format!("{mag}{basis}")
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            out.push('0');
        }
        f.write_str(&out)
    }
}

impl Add for &OrderElement {
    type Output = OrderElement;
    fn add(self, rhs: &OrderElement) -> OrderElement {
        self.same_field(rhs);
        let c = [0, 1, 2].map(|i| &self.coords[i] + &rhs.coords[i]);
        OrderElement::new(&self.field, c)
    }
}

impl Sub for &OrderElement {
    type Output = OrderElement;
    fn sub(self, rhs: &OrderElement) -> OrderElement {
        self.same_field(rhs);
        let c = [0, 1, 2].map(|i| &self.coords[i] - &rhs.coords[i]);
        OrderElement::new(&self.field, c)
    }
}

impl Mul for &OrderElement {
    type Output = OrderElement;
    fn mul(self, rhs: &OrderElement) -> OrderElement {
        self.same_field(rhs);
        OrderElement::new(&self.field, mul_coords(self.field.a(), &self.coords, &rhs.coords))
    }
}

impl Neg for &OrderElement {
    type Output = OrderElement;
    fn neg(self) -> OrderElement {
        OrderElement::new(&self.field, self.coords.clone().map(|c| -c))
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for OrderElement {
            type Output = OrderElement;
            fn $method(self, rhs: OrderElement) -> OrderElement {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&OrderElement> for OrderElement {
            type Output = OrderElement;
            fn $method(self, rhs: &OrderElement) -> OrderElement {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for OrderElement {
    type Output = OrderElement;
    fn neg(self) -> OrderElement {
        -&self
    }
}
