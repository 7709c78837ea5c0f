use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::field::{CoeffField, Field};
use super::poly::Poly;

/// A rational function `numer/denom` in lowest terms with monic denominator.
///
/// Invariants: gcd(numer, denom) = 1, denom is monic, zero is stored as 0/1.
/// Two equal functions therefore have identical stored forms.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RatFunc<F> {
    numer: Poly<F>,
    denom: Poly<F>,
}

impl<F: Field> RatFunc<F> {
    /// Builds and normalizes `numer/denom`. Panics if `denom` is zero.
    pub fn new(numer: Poly<F>, denom: Poly<F>) -> Self {
        Self::try_new(numer, denom).expect("rational function with zero denominator")
    }

    /// Like [`RatFunc::new`], returning `None` on a zero denominator.
    pub fn try_new(numer: Poly<F>, denom: Poly<F>) -> Option<Self> {
        if denom.is_zero() {
            return None;
        }
        if numer.is_zero() {
            return Some(Self::zero());
        }
        let g = numer.gcd(&denom);
        let (mut n, mut d) = if g.is_one() {
            (numer, denom)
        } else {
            (numer.exact_div(&g), denom.exact_div(&g))
        };
        let lc = d.leading_coeff();
        if !lc.is_one() {
            let inv = lc.inv();
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        Some(RatFunc { numer: n, denom: d })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc { numer: p, denom: Poly::one() }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    pub fn x() -> Self {
        Self::from_poly(Poly::x())
    }

    pub fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(Poly::one())
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.numer
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.denom
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.denom.is_one()
    }

    /// `Some(c)` if the function is a constant.
    pub fn as_constant(&self) -> Option<F> {
        (self.denom.is_one() && self.numer.is_constant()).then(|| self.numer.coeff(0))
    }

    /// Re-normalizes; the identity on well-formed values.
    pub fn normalized(&self) -> Self {
        Self::new(self.numer.clone(), self.denom.clone())
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.denom == other.denom {
            return Self::new(self.numer.add(&other.numer), self.denom.clone());
        }
        Self::new(
            self.numer.mul(&other.denom).add(&other.numer.mul(&self.denom)),
            self.denom.mul(&other.denom),
        )
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        RatFunc { numer: self.numer.neg(), denom: self.denom.clone() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        // cross-cancel before multiplying
        let g1 = self.numer.gcd(&other.denom);
        let g2 = other.numer.gcd(&self.denom);
        let cut = |p: &Poly<F>, g: &Poly<F>| if g.is_zero() || g.is_one() { p.clone() } else { p.exact_div(g) };
        Self::new(
            cut(&self.numer, &g1).mul(&cut(&other.numer, &g2)),
            cut(&self.denom, &g2).mul(&cut(&other.denom, &g1)),
        )
    }

    pub fn scale(&self, c: &F) -> Self {
        Self::new(self.numer.scale(c), self.denom.clone())
    }

    /// `None` for the zero function.
    pub fn inv(&self) -> Option<Self> {
        (!self.is_zero()).then(|| Self::new(self.denom.clone(), self.numer.clone()))
    }

    pub fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    pub fn pow(&self, k: i64) -> Option<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let e = u32::try_from(k.unsigned_abs()).ok()?;
        Some(RatFunc { numer: base.numer.pow(e), denom: base.denom.pow(e) })
    }

    /// d/dx by the quotient rule.
    pub fn derivative(&self) -> Self {
        let n = self.numer.derivative().mul(&self.denom).sub(&self.numer.mul(&self.denom.derivative()));
        Self::new(n, self.denom.mul(&self.denom))
    }

    /// Polynomial part and proper part: `self = poly + proper`, deg numer(proper) < deg denom.
    pub fn split_proper(&self) -> (Poly<F>, Self) {
        let (q, r) = self.numer.div_rem(&self.denom);
        (q, RatFunc { numer: r.clone(), denom: if r.is_zero() { Poly::one() } else { self.denom.clone() } })
    }

    /// Applies a substitution to numerator and denominator.
    pub fn map_polys(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        Self::new(f(&self.numer), f(&self.denom))
    }
}

impl<F: Field> Field for RatFunc<F> {
    fn zero() -> Self {
        RatFunc::zero()
    }
    fn one() -> Self {
        RatFunc::one()
    }
    fn is_zero(&self) -> bool {
        RatFunc::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }
    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }
    fn inv(&self) -> Self {
        RatFunc::inv(self).expect("inverse of zero")
    }
    fn from_rational(q: &super::field::Q) -> Self {
        RatFunc::constant(F::from_rational(q))
    }
}

impl<F: CoeffField> RatFunc<F> {
    /// Parseable rendering in the named variable.
    pub fn render_in(&self, var: &str) -> String {
        let n = self.numer.render_in(var);
        if self.denom.is_one() {
            return n;
        }
        let d = self.denom.render_in(var);
        let n = if self.numer.is_monomial() && !n.contains([' ', '/']) {
            n
        } else {
            format!("({n})")
        };
        let d = if self.denom.is_monomial() && !d.contains([' ', '*', '/']) {
            d
        } else {
            format!("({d})")
        };
        format!("{n}/{d}")
    }
}

impl<F: CoeffField> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_in("x"))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<F: Field> $tr<&RatFunc<F>> for &RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: &RatFunc<F>) -> RatFunc<F> {
                $body(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, RatFunc::add);
forward_binop!(Sub, sub, RatFunc::sub);
forward_binop!(Mul, mul, RatFunc::mul);
forward_binop!(Div, div, |a: &RatFunc<F>, b: &RatFunc<F>| a.div(b).expect("division by zero"));

impl<F: Field> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc::neg(self)
    }
}
