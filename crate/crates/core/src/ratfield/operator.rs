//! The δσ-structure on K = k(x): a derivation, an endomorphism, and the
//! constant unit ℏ with δ∘σ = ℏ·σ∘δ.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::field::{CoeffField, Field, Q};
use super::poly::Poly;
use super::ratfunc::RatFunc;
use crate::error::{Error, Result};

/// Default bound on the x-degree produced by a Mahler substitution.
pub const DEFAULT_DEGREE_CAP: usize = 4096;

/// The endomorphism σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SigmaKind {
    /// x ↦ x + step.
    Shift { step: Q },
    /// x ↦ q·x.
    QDilation { q: Q },
    /// x ↦ x^d.
    Mahler { d: u32 },
    /// x fixed; acts only on the parameter α ↦ α+1.
    ParamShift,
}

/// The derivation δ.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DeltaKind {
    /// d/dx
    Ddx,
    /// x·d/dx
    XDdx,
}

/// A validated (σ, δ) pair together with its commutation unit ℏ.
///
/// On the parameter field ℚ(α) every σ additionally maps α ↦ α+1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OperatorSpec {
    sigma: SigmaKind,
    delta: DeltaKind,
    hbar: Q,
    degree_cap: usize,
}

impl OperatorSpec {
    /// Accepts (Shift, Ddx), (QDilation, XDdx), (Mahler, XDdx) and
    /// (ParamShift, Ddx); rejects every other pairing.
    pub fn new(sigma: SigmaKind, delta: DeltaKind) -> Result<Self> {
        let hbar = match (&sigma, delta) {
            (SigmaKind::Shift { step }, DeltaKind::Ddx) => {
                if step.is_zero() {
                    return Err(Error::InvalidOperator("shift step must be nonzero".into()));
                }
                Q::one()
            }
            (SigmaKind::QDilation { q }, DeltaKind::XDdx) => {
                // the only roots of unity in ℚ are ±1
                if q.is_zero() || q.abs().is_one() {
                    return Err(Error::InvalidOperator(format!(
                        "q-dilation requires q nonzero and not a root of unity, got {q}"
                    )));
                }
                Q::one()
            }
            (SigmaKind::Mahler { d }, DeltaKind::XDdx) => {
                if *d < 2 {
                    return Err(Error::InvalidOperator(format!("Mahler operator requires d >= 2, got {d}")));
                }
                Q::from_integer(BigInt::from(*d))
            }
            (SigmaKind::ParamShift, DeltaKind::Ddx) => Q::one(),
            (s, d) => {
                return Err(Error::InvalidOperator(format!(
                    "unsupported pairing of {} with {}",
                    sigma_name(s),
                    delta_name(d)
                )))
            }
        };
        Ok(OperatorSpec { sigma, delta, hbar, degree_cap: DEFAULT_DEGREE_CAP })
    }

    pub fn shift() -> Self {
        Self::new(SigmaKind::Shift { step: Q::one() }, DeltaKind::Ddx).expect("valid")
    }

    pub fn mahler(d: u32) -> Result<Self> {
        Self::new(SigmaKind::Mahler { d }, DeltaKind::XDdx)
    }

    pub fn q_dilation(q: Q) -> Result<Self> {
        Self::new(SigmaKind::QDilation { q }, DeltaKind::XDdx)
    }

    pub fn param_shift() -> Self {
        Self::new(SigmaKind::ParamShift, DeltaKind::Ddx).expect("valid")
    }

    pub fn with_degree_cap(mut self, cap: usize) -> Self {
        self.degree_cap = cap;
        self
    }

    pub fn sigma(&self) -> &SigmaKind {
        &self.sigma
    }

    pub fn delta(&self) -> DeltaKind {
        self.delta
    }

    pub fn hbar(&self) -> &Q {
        &self.hbar
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    /// σ^i(f), in lowest terms.
    pub fn sigma_apply<F: CoeffField>(&self, f: &RatFunc<F>, i: u64) -> Result<RatFunc<F>> {
        if i == 0 {
            return Ok(f.clone());
        }
        let coeffs = |p: &Poly<F>| p.map_coeffs(|c| c.sigma_coeff(i));
        let out = match &self.sigma {
            SigmaKind::Shift { step } => {
                let shift = Poly::new(vec![F::from_rational(&(step * Q::from_integer(BigInt::from(i)))), F::one()]);
                f.map_polys(|p| coeffs(p).compose(&shift))
            }
            SigmaKind::QDilation { q } => {
                let qi = F::from_rational(&num_traits::pow::pow(q.clone(), i as usize));
                f.map_polys(|p| coeffs(p).dilate(&qi))
            }
            SigmaKind::Mahler { d } => {
                let deg = f.numer().degree().unwrap_or(0).max(f.denom().degree().unwrap_or(0));
                if deg == 0 {
                    f.map_polys(coeffs)
                } else {
                    let factor = mahler_factor(*d, i, deg, self.degree_cap)?;
                    f.map_polys(|p| coeffs(p).inflate(factor))
                }
            }
            SigmaKind::ParamShift => f.map_polys(coeffs),
        };
        Ok(out)
    }

    /// δ(f).
    pub fn delta_apply<F: CoeffField>(&self, f: &RatFunc<F>) -> RatFunc<F> {
        self.delta.apply(f)
    }

    /// ℏ_d = ℏ·σ(ℏ)⋯σ^{d−1}(ℏ); ℏ_0 = 1.
    pub fn hbar_power<F: CoeffField>(&self, d: u64) -> RatFunc<F> {
        let hbar = RatFunc::<F>::constant(F::from_rational(&self.hbar));
        let mut acc = RatFunc::one();
        for i in 0..d {
            // ℏ is a constant, so σ^i(ℏ) never trips the degree cap
            let term = self.sigma_apply(&hbar, i).expect("constant substitution");
            acc = acc.mul(&term);
        }
        acc
    }

    /// Checks δ(σ(f)) = ℏ·σ(δ(f)) exactly.
    pub fn commutation_check<F: CoeffField>(&self, f: &RatFunc<F>) -> Result<bool> {
        let lhs = self.delta_apply(&self.sigma_apply(f, 1)?);
        let rhs = self.sigma_apply(&self.delta_apply(f), 1)?.scale(&F::from_rational(&self.hbar));
        Ok(lhs == rhs)
    }
}

/// d^i, provided deg·d^i stays within the cap.
fn mahler_factor(d: u32, i: u64, deg: usize, cap: usize) -> Result<usize> {
    let factor = u32::try_from(i).ok().and_then(|e| (d as u128).checked_pow(e));
    let total = factor.and_then(|f| f.checked_mul(deg as u128)).unwrap_or(u128::MAX);
    if total > cap as u128 {
        return Err(Error::DegreeCap { degree: total, cap });
    }
    Ok(factor.and_then(|f| f.to_usize()).expect("bounded by the cap"))
}

fn sigma_name(s: &SigmaKind) -> &'static str {
    match s {
        SigmaKind::Shift { .. } => "shift",
        SigmaKind::QDilation { .. } => "q-dilation",
        SigmaKind::Mahler { .. } => "mahler",
        SigmaKind::ParamShift => "parameter shift",
    }
}

fn delta_name(d: DeltaKind) -> &'static str {
    match d {
        DeltaKind::Ddx => "d/dx",
        DeltaKind::XDdx => "x*d/dx",
    }
}

impl fmt::Display for OperatorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.sigma {
            SigmaKind::Shift { step } => write!(f, "sigma: x -> x + {step}")?,
            SigmaKind::QDilation { q } => write!(f, "sigma: x -> {q}*x")?,
            SigmaKind::Mahler { d } => write!(f, "sigma: x -> x^{d}")?,
            SigmaKind::ParamShift => write!(f, "sigma: alpha -> alpha + 1")?,
        }
        write!(f, ", delta: {}, hbar: {}", delta_name(self.delta), self.hbar)
    }
}

impl SigmaKind {
    pub fn name(&self) -> &'static str {
        match self {
            SigmaKind::Shift { .. } => "shift",
            SigmaKind::QDilation { .. } => "qdilation",
            SigmaKind::Mahler { .. } => "mahler",
            SigmaKind::ParamShift => "param-shift",
        }
    }

    /// The operator parameter (step, q, or d) as text, if any.
    pub fn parameter(&self) -> Option<String> {
        match self {
            SigmaKind::Shift { step } => Some(step.to_string()),
            SigmaKind::QDilation { q } => Some(q.to_string()),
            SigmaKind::Mahler { d } => Some(d.to_string()),
            SigmaKind::ParamShift => None,
        }
    }
}

impl DeltaKind {
    pub fn apply<F: Field>(&self, f: &RatFunc<F>) -> RatFunc<F> {
        let d = f.derivative();
        match self {
            DeltaKind::Ddx => d,
            DeltaKind::XDdx => d.mul(&RatFunc::x()),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            DeltaKind::Ddx => "ddx",
            DeltaKind::XDdx => "xddx",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::field::AlphaField;

    fn q(n: i64) -> Q {
        Q::from_integer(BigInt::from(n))
    }
    fn qr(n: i64, d: i64) -> Q {
        Q::new(BigInt::from(n), BigInt::from(d))
    }
    fn rf(num: &[i64], den: &[i64]) -> RatFunc<Q> {
        RatFunc::new(
            Poly::new(num.iter().map(|&n| q(n)).collect()),
            Poly::new(den.iter().map(|&n| q(n)).collect()),
        )
    }

    #[test]
    fn rejects_unsupported_pairings() {
        assert!(OperatorSpec::new(SigmaKind::Shift { step: q(1) }, DeltaKind::XDdx).is_err());
        assert!(OperatorSpec::new(SigmaKind::Mahler { d: 2 }, DeltaKind::Ddx).is_err());
        assert!(OperatorSpec::new(SigmaKind::QDilation { q: q(-1) }, DeltaKind::XDdx).is_err());
        assert!(OperatorSpec::new(SigmaKind::QDilation { q: q(1) }, DeltaKind::XDdx).is_err());
        assert!(OperatorSpec::new(SigmaKind::QDilation { q: q(0) }, DeltaKind::XDdx).is_err());
        assert!(OperatorSpec::mahler(1).is_err());
        assert!(OperatorSpec::new(SigmaKind::ParamShift, DeltaKind::XDdx).is_err());
        assert_eq!(OperatorSpec::mahler(3).unwrap().hbar(), &q(3));
        assert_eq!(OperatorSpec::q_dilation(qr(1, 2)).unwrap().hbar(), &q(1));
    }

    #[test]
    fn sigma_examples() {
        let op = OperatorSpec::shift();
        assert_eq!(op.sigma_apply(&rf(&[0, 2], &[1]), 1).unwrap(), rf(&[2, 2], &[1]));
        assert_eq!(op.sigma_apply(&rf(&[1], &[0, 2]), 1).unwrap(), rf(&[1], &[2, 2]));
        let m = OperatorSpec::mahler(2).unwrap();
        assert_eq!(m.sigma_apply(&rf(&[1], &[2]), 3).unwrap(), rf(&[1], &[2]));
        assert_eq!(m.sigma_apply(&rf(&[0, 1], &[1]), 3).unwrap(), rf(&[0, 0, 0, 0, 0, 0, 0, 0, 1], &[1]));
        let qd = OperatorSpec::q_dilation(q(3)).unwrap();
        assert_eq!(qd.sigma_apply(&rf(&[1, 1], &[1]), 2).unwrap(), rf(&[1, 9], &[1]));
    }

    #[test]
    fn delta_examples() {
        let op = OperatorSpec::shift();
        assert_eq!(op.delta_apply(&rf(&[0, 0, 1], &[1])), rf(&[0, 2], &[1]));
        assert_eq!(op.delta_apply(&rf(&[1], &[0, 1])), rf(&[-1], &[0, 0, 1]));
        let m = OperatorSpec::mahler(2).unwrap();
        assert_eq!(m.delta_apply(&rf(&[0, 0, 1], &[1])), rf(&[0, 0, 2], &[1]));
    }

    #[test]
    fn hbar_examples() {
        assert_eq!(OperatorSpec::shift().hbar_power::<Q>(5), RatFunc::one());
        assert_eq!(OperatorSpec::mahler(2).unwrap().hbar_power::<Q>(3), RatFunc::constant(q(8)));
        assert_eq!(OperatorSpec::mahler(7).unwrap().hbar_power::<Q>(0), RatFunc::one());
    }

    #[test]
    fn commutation_examples() {
        assert!(OperatorSpec::shift().commutation_check(&rf(&[1, 0, 0, 1], &[1])).unwrap());
        assert!(OperatorSpec::mahler(2).unwrap().commutation_check(&rf(&[1], &[-3, 1])).unwrap());
        let alpha_x = RatFunc::<AlphaField>::from_poly(Poly::monomial(AlphaField::alpha().unwrap(), 1));
        assert!(OperatorSpec::shift().commutation_check(&alpha_x).unwrap());
        assert!(OperatorSpec::param_shift().commutation_check(&alpha_x).unwrap());
    }

    #[test]
    fn mahler_hand_expansion() {
        // f = 1/(x-3), σf = 1/(x^2-3), δ = x d/dx:
        // δσf = -2x^2/(x^2-3)^2, δf = -x/(x-3)^2, σδf = -x^2/(x^2-3)^2, ℏ = 2.
        let m = OperatorSpec::mahler(2).unwrap();
        let f = rf(&[1], &[-3, 1]);
        let lhs = m.delta_apply(&m.sigma_apply(&f, 1).unwrap());
        assert_eq!(lhs, rf(&[0, 0, -2], &[9, 0, -6, 0, 1]));
        let inner = m.sigma_apply(&m.delta_apply(&f), 1).unwrap();
        assert_eq!(inner, rf(&[0, 0, -1], &[9, 0, -6, 0, 1]));
    }

    #[test]
    fn degree_cap_enforced() {
        let m = OperatorSpec::mahler(2).unwrap().with_degree_cap(16);
        let f = rf(&[0, 0, 1], &[1]);
        assert!(m.sigma_apply(&f, 3).is_ok());
        assert!(matches!(m.sigma_apply(&f, 4), Err(Error::DegreeCap { .. })));
    }
}
