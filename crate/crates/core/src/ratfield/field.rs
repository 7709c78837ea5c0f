//! Coefficient fields.
//!
//! Two coefficient fields are supported: ℚ itself ([`Q`]) and the parameter
//! field ℚ(α) ([`AlphaField`]), which is a rational function field in α over
//! ℚ built from the same kernel. The endomorphism acts on ℚ(α) by α ↦ α+1
//! and trivially on ℚ; the derivation is zero on both.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::ratfunc::RatFunc;

pub type Q = BigRational;

/// Field operations needed by the polynomial and fraction kernel.
pub trait Field: Clone + PartialEq + Eq + fmt::Debug + Send + Sync + 'static {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse. Panics on zero.
    fn inv(&self) -> Self;
    fn from_rational(q: &Q) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }
    fn div(&self, other: &Self) -> Self {
        self.mul(&other.inv())
    }
    fn from_int(n: i64) -> Self {
        Self::from_rational(&Q::from_integer(BigInt::from(n)))
    }
    /// Monic gcd by a method faster than the generic Euclidean one, if the
    /// field has one.
    fn poly_gcd(_a: &Poly<Self>, _b: &Poly<Self>) -> Option<Poly<Self>> {
        None
    }
}

impl Field for Q {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        assert!(!Zero::is_zero(self), "inverse of zero");
        self.recip()
    }
    fn from_rational(q: &Q) -> Self {
        q.clone()
    }
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Option<Poly<Self>> {
        (!a.is_zero() && !b.is_zero()).then(|| crate::factor::rational_gcd(a, b))
    }
}

/// A coefficient field for the base δσ-field: δ-constants with the induced
/// action of σ.
pub trait CoeffField: Field {
    /// Name used in diagnostics.
    const NAME: &'static str;

    /// The parameter α, if this field has one.
    fn alpha() -> Option<Self>;

    /// Applies σ^steps to a constant.
    fn sigma_coeff(&self, steps: u64) -> Self;

    /// `Some(q)` when the constant lies in ℚ.
    fn as_rational(&self) -> Option<Q>;

    /// Renders the constant as parseable text. `atomic` requests parentheses
    /// around anything that is not a single signed number or symbol.
    fn render(&self, atomic: bool) -> String;

    /// True if the rendering starts with a minus sign and the rest can be
    /// printed after a `-` in a sum.
    fn is_negative_display(&self) -> bool;
}

impl CoeffField for Q {
    const NAME: &'static str = "Q";

    fn alpha() -> Option<Self> {
        None
    }
    fn sigma_coeff(&self, _steps: u64) -> Self {
        self.clone()
    }
    fn as_rational(&self) -> Option<Q> {
        Some(self.clone())
    }
    fn render(&self, atomic: bool) -> String {
        let s = if self.denom().is_one() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        };
        if atomic && (!self.denom().is_one() || self.is_negative()) {
            format!("({s})")
        } else {
            s
        }
    }
    fn is_negative_display(&self) -> bool {
        self.is_negative()
    }
}

/// ℚ(α): rational functions in α over ℚ.
pub type AlphaField = RatFunc<Q>;

impl CoeffField for AlphaField {
    const NAME: &'static str = "Q(alpha)";

    fn alpha() -> Option<Self> {
        Some(RatFunc::from_poly(Poly::x()))
    }
    fn sigma_coeff(&self, steps: u64) -> Self {
        if steps == 0 {
            return self.clone();
        }
        let shift = Poly::new(vec![Q::from_integer(BigInt::from(steps)), <Q as Field>::one()]);
        RatFunc::new(
            self.numer().compose(&shift),
            self.denom().compose(&shift),
        )
    }
    fn as_rational(&self) -> Option<Q> {
        if self.denom().is_one() && self.numer().degree().unwrap_or(0) == 0 {
            Some(self.numer().coeff(0))
        } else {
            None
        }
    }
    fn render(&self, atomic: bool) -> String {
        match self.as_rational() {
            Some(q) => q.render(atomic),
            None => {
                let s = self.render_in("alpha");
                if atomic {
                    format!("({s})")
                } else {
                    s
                }
            }
        }
    }
    fn is_negative_display(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_negative())
    }
}
