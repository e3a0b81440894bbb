//! Closed intervals with exact rational endpoints.
//!
//! Every operation rounds nothing: endpoints are `BigRational`, so an
//! enclosure produced here is rigorous as long as the inputs were.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, ToPrimitive, Zero};

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "interval endpoints out of order");
        Self { lo, hi }
    }

    pub fn point(value: BigRational) -> Self {
        Self {
            lo: value.clone(),
            hi: value,
        }
    }

    pub fn from_int(value: impl Into<BigInt>) -> Self {
        Self::point(BigRational::from_integer(value.into()))
    }

    pub fn from_ints(lo: impl Into<BigInt>, hi: impl Into<BigInt>) -> Self {
        Self::new(
            BigRational::from_integer(lo.into()),
            BigRational::from_integer(hi.into()),
        )
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    /// Sign of every point of the interval, if it is constant and nonzero.
    pub fn strict_sign(&self) -> Option<Ordering> {
        if self.lo.is_positive() {
            Some(Ordering::Greater)
        } else if self.hi.is_negative() {
            Some(Ordering::Less)
        } else {
            None
        }
    }

    pub fn contains(&self, value: &BigRational) -> bool {
        &self.lo <= value && value <= &self.hi
    }

    /// True if `self` lies in the open interval `(lo, hi)`.
    pub fn strictly_inside(&self, lo: &BigRational, hi: &BigRational) -> bool {
        lo < &self.lo && &self.hi < hi
    }

    pub fn is_disjoint(&self, other: &Interval) -> bool {
        self.hi < other.lo || other.hi < self.lo
    }

    /// Upper bound on `|x|` over the interval.
    pub fn magnitude(&self) -> BigRational {
        let lo = self.lo.abs();
        let hi = self.hi.abs();
        if lo > hi {
            lo
        } else {
            hi
        }
    }

    pub fn scale(&self, k: &BigInt) -> Interval {
        let k = BigRational::from_integer(k.clone());
        let a = &self.lo * &k;
        let b = &self.hi * &k;
        if a <= b {
            Interval::new(a, b)
        } else {
            Interval::new(b, a)
        }
    }

    pub fn square(&self) -> Interval {
        if self.lo.is_positive() || self.lo.is_zero() {
            Interval::new(&self.lo * &self.lo, &self.hi * &self.hi)
        } else if self.hi.is_negative() || self.hi.is_zero() {
            Interval::new(&self.hi * &self.hi, &self.lo * &self.lo)
        } else {
            let m = self.magnitude();
            Interval::new(BigRational::zero(), &m * &m)
        }
    }

    /// `1/x` over an interval that excludes zero.
    pub fn recip(&self) -> Interval {
        assert!(self.strict_sign().is_some(), "reciprocal of an interval containing zero");
        Interval::new(self.hi.recip(), self.lo.recip())
    }

    pub fn hull(&self, other: &Interval) -> Interval {
        Interval::new(
            self.lo.clone().min(other.lo.clone()),
            self.hi.clone().max(other.hi.clone()),
        )
    }

    /// The intersection, or `None` if the intervals are disjoint.
    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        let lo = self.lo.clone().max(other.lo.clone());
        let hi = self.hi.clone().min(other.hi.clone());
        (lo <= hi).then(|| Interval::new(lo, hi))
    }

    /// Integers contained in the interval, as an inclusive range `(first, last)`.
    /// `None` when the interval contains no integer.
    pub fn integer_span(&self) -> Option<(BigInt, BigInt)> {
        let first = self.lo.ceil().to_integer();
        let last = self.hi.floor().to_integer();
        (first <= last).then_some((first, last))
    }

    /// Rough float view, for diagnostics only.
    pub fn approx(&self) -> (f64, f64) {
        (
            self.lo.to_f64().unwrap_or(f64::NAN),
            self.hi.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

impl Add for &Interval {
    type Output = Interval;
    fn add(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo + &rhs.lo, &self.hi + &rhs.hi)
    }
}

impl Sub for &Interval {
    type Output = Interval;
    fn sub(self, rhs: &Interval) -> Interval {
        Interval::new(&self.lo - &rhs.hi, &self.hi - &rhs.lo)
    }
}

impl Neg for &Interval {
    type Output = Interval;
    fn neg(self) -> Interval {
        Interval::new(-&self.hi, -&self.lo)
    }
}

impl Mul for &Interval {
    type Output = Interval;
    fn mul(self, rhs: &Interval) -> Interval {
        let products = [
            &self.lo * &rhs.lo,
            &self.lo * &rhs.hi,
            &self.hi * &rhs.lo,
            &self.hi * &rhs.hi,
        ];
        let mut lo = products[0].clone();
        let mut hi = products[0].clone();
        for p in &products[1..] {
            if *p < lo {
                lo = p.clone();
            }
            if *p > hi {
                hi = p.clone();
            }
        }
        Interval::new(lo, hi)
    }
}

/// Rational upper bound `r >= sqrt(x)` for `x >= 0`, accurate to about `2^-bits`.
pub fn sqrt_upper(x: &BigRational, bits: u32) -> BigRational {
    assert!(!x.is_negative(), "square root of a negative bound");
    let scale = BigInt::one() << (2 * bits);
    let scaled = (x * BigRational::from_integer(scale)).ceil().to_integer();
    let mut root = scaled.sqrt();
    if &root * &root < scaled {
        root += 1;
    }
    BigRational::new(root, BigInt::one() << bits)
}


#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn product_takes_extreme_corners() {
        let a = Interval::new(q(-2, 1), q(3, 1));
        let b = Interval::new(q(-5, 1), q(1, 2));
        let p = &a * &b;
        assert_eq!(p.lo(), &q(-15, 1));
        assert_eq!(p.hi(), &q(10, 1));
    }

    #[test]
    fn square_of_straddling_interval_starts_at_zero() {
        let a = Interval::new(q(-2, 1), q(1, 1));
        assert_eq!(a.square(), Interval::new(q(0, 1), q(4, 1)));
        assert_eq!(
            Interval::new(q(-3, 1), q(-1, 1)).square(),
            Interval::new(q(1, 1), q(9, 1))
        );
    }

    #[test]
    fn sqrt_upper_is_an_upper_bound() {
        for n in [0i64, 1, 2, 3, 10, 99, 12345] {
            let x = q(n, 7);
            let r = sqrt_upper(&x, 20);
            assert!(&r * &r >= x);
            assert!(&r * &r - &x < q(1, 1000));
        }
        assert_eq!(sqrt_upper(&q(9, 1), 10), q(3, 1));
    }

    #[test]
    fn integer_span_rounds_inward_to_integers() {
        let a = Interval::new(q(-7, 2), q(5, 3));
        assert_eq!(a.integer_span(), Some((BigInt::from(-3), BigInt::from(1))));
        assert_eq!(Interval::new(q(1, 3), q(2, 3)).integer_span(), None);
    }
}
