//! Exact arithmetic for the base δσ-field K = k(x), k ∈ {ℚ, ℚ(α)}.

mod field;
mod operator;
mod poly;
mod ratfunc;

pub use field::{AlphaField, CoeffField, Field, Q};
pub use operator::{DeltaKind, OperatorSpec, SigmaKind, DEFAULT_DEGREE_CAP};
pub use poly::Poly;
pub use ratfunc::RatFunc;

/// Rational functions over ℚ.
pub type QRatFunc = RatFunc<Q>;
/// Rational functions over ℚ(α).
pub type AlphaRatFunc = RatFunc<AlphaField>;

/// Builds an integer rational constant.
pub fn int(n: i64) -> Q {
    Q::from_integer(n.into())
}

/// Builds the rational n/d. Panics if d = 0.
pub fn rat(n: i64, d: i64) -> Q {
    Q::new(n.into(), d.into())
}
