//! The simplest cubic field parameter `a` and the isolating intervals for the
//! three real roots of `x^3 - a x^2 - (a+3) x - 1`.
//!
//! Roots are labelled `rho > a + 1`, `rho' in (-2, -1)` and `rho'' in (-1, 0)`.
//! Embedding index 0 is `rho`, 1 is `rho'`, 2 is `rho''` everywhere in the crate.

use std::fmt;
use std::sync::Arc;

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::element::OrderElement;
use crate::error::{Error, Result};
use crate::interval::Interval;

/// Bisection precision of the cached root intervals, `2^-20`.
pub const INITIAL_WIDTH_BITS: u32 = 20;

/// The ambient order `Z[rho]` for one value of `a`.
///
/// Construct with [`FieldParam::new`]; elements hold an `Arc` to it.
pub struct FieldParam {
    a: i64,
    roots: EmbeddingIntervals,
    /// Coordinates of the in-field conjugate `rho' = (a+2) + a rho - rho^2`.
    conj_rho: [BigInt; 3],
    /// Coordinates of `rho'^2`.
    conj_rho_sq: [BigInt; 3],
}

impl fmt::Debug for FieldParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldParam").field("a", &self.a).finish()
    }
}

impl PartialEq for FieldParam {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a
    }
}

impl Eq for FieldParam {}

impl FieldParam {
    pub fn new(a: i64) -> Result<Arc<Self>> {
        Self::with_width(a, &BigRational::new(BigInt::one(), BigInt::one() << INITIAL_WIDTH_BITS))
    }

    /// Like [`FieldParam::new`] with cached root intervals of width at most
    /// `width`. Only speed depends on it; sign decisions refine on demand.
    pub fn with_width(a: i64, width: &BigRational) -> Result<Arc<Self>> {
        if a < -1 {
            return Err(Error::InvalidParameter(a));
        }
        let roots = EmbeddingIntervals::isolate(a, width)?;

        // rho' = -1 - 1/rho with 1/rho = rho^2 - a rho - (a+3).
        let conj_rho = [BigInt::from(a + 2), BigInt::from(a), BigInt::from(-1)];
        let conj_rho_sq = crate::element::mul_coords(a, &conj_rho, &conj_rho);
        let field = Arc::new(Self {
            a,
            roots,
            conj_rho,
            conj_rho_sq,
        });
        field.check_galois_image();
        Ok(field)
    }

    pub fn a(&self) -> i64 {
        self.a
    }

    /// Coefficients `(c2, c1, c0)` of the monic minimal polynomial
    /// `x^3 + c2 x^2 + c1 x + c0`.
    pub fn minpoly(&self) -> [BigInt; 3] {
        minpoly_coeffs(self.a)
    }

    /// `a^2 + 3a + 9`, the square root of the polynomial discriminant.
    pub fn disc_root(&self) -> i64 {
        self.a * self.a + 3 * self.a + 9
    }

    /// Cached isolating intervals, width `2^-20` unless chosen otherwise.
    pub fn roots(&self) -> &EmbeddingIntervals {
        &self.roots
    }

    pub(crate) fn conj_rho_coords(&self) -> (&[BigInt; 3], &[BigInt; 3]) {
        (&self.conj_rho, &self.conj_rho_sq)
    }

    /// Isolating intervals refined to width at most `width`.
    pub fn refine_embeddings(&self, width: &BigRational) -> Result<EmbeddingIntervals> {
        if !width.is_positive() {
            return Err(Error::NonPositiveWidth);
        }
        Ok(self.roots.refined(self.a, width))
    }

    /// The conjugate `rho'` is a root and lands in `(-2, -1)`.
    fn check_galois_image(self: &Arc<Self>) {
        let r1 = OrderElement::new(self, self.conj_rho.clone());
        let [c2, c1, c0] = self.minpoly();
        let value = &(&(&r1 * &r1) * &r1)
            + &(&(&(&r1 * &r1).scale(&c2) + &r1.scale(&c1)) + &OrderElement::from_int(self, c0));
        assert!(value.is_zero(), "rho' is not a root of the minimal polynomial");
        let fine = BigRational::new(BigInt::one(), BigInt::one() << INITIAL_WIDTH_BITS);
        let at_rho = r1.embedding_enclosure(0, self.roots.refined(self.a, &fine).root(0));
        assert!(
            at_rho.strictly_inside(&BigRational::from_integer((-2).into()), &-BigRational::one()),
            "rho' does not evaluate into (-2, -1)"
        );
    }
}

pub(crate) fn minpoly_coeffs(a: i64) -> [BigInt; 3] {
    [BigInt::from(-a), BigInt::from(-(a + 3)), BigInt::from(-1)]
}

/// `f(t) = t^3 - a t^2 - (a+3) t - 1` at a rational point.
pub fn minpoly_at(a: i64, t: &BigRational) -> BigRational {
    let [c2, c1, c0] = minpoly_coeffs(a);
    let c = |v: BigInt| BigRational::from_integer(v);
    ((t + c(c2)) * t + c(c1)) * t + c(c0)
}

/// Three disjoint rational intervals, one around each root, in the order
/// `(rho, rho', rho'')`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingIntervals {
    roots: [Interval; 3],
}

impl EmbeddingIntervals {
    /// Starts from the brackets `(a+1, a+3)`, `(-2, -1)`, `(-1, 0)` and bisects.
    pub fn isolate(a: i64, width: &BigRational) -> Result<Self> {
        if a < -1 {
            return Err(Error::InvalidParameter(a));
        }
        if !width.is_positive() {
            return Err(Error::NonPositiveWidth);
        }
        let brackets = [
            Interval::from_ints(a + 1, a + 3),
            Interval::from_ints(-2, -1),
            Interval::from_ints(-1, 0),
        ];
        for b in &brackets {
            let lo = minpoly_at(a, b.lo());
            let hi = minpoly_at(a, b.hi());
            debug_assert!(lo.is_negative() != hi.is_negative() && !lo.is_zero() && !hi.is_zero());
        }
        Ok(Self { roots: brackets }.refined(a, width))
    }

    pub fn root(&self, index: usize) -> &Interval {
        &self.roots[index]
    }

    pub fn all(&self) -> &[Interval; 3] {
        &self.roots
    }

    pub fn refined(&self, a: i64, width: &BigRational) -> Self {
        let roots = self.roots.clone().map(|mut r| {
            while &r.width() > width {
                r = bisect_root(a, &r);
            }
            r
        });
        Self { roots }
    }

    /// One bisection step on every root.
    pub fn halved(&self, a: i64) -> Self {
        Self {
            roots: self.roots.clone().map(|r| bisect_root(a, &r)),
        }
    }
}

/// Halves an isolating interval, keeping the half whose endpoints still
/// bracket the root. The roots are irrational, so the midpoint is never one.
pub fn bisect_root(a: i64, iv: &Interval) -> Interval {
    let mid = iv.midpoint();
    let f_lo = minpoly_at(a, iv.lo());
    let f_mid = minpoly_at(a, &mid);
    debug_assert!(!f_mid.is_zero());
    if f_lo.is_negative() == f_mid.is_negative() {
        Interval::new(mid, iv.hi().clone())
    } else {
        Interval::new(iv.lo().clone(), mid)
    }
}
