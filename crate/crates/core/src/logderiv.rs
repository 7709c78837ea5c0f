//! Deciders for "r is a logarithmic derivative δ(f)/f" and "r is an exact
//! derivative δ(g)" over ℚ(x), with constructive certificates.
//!
//! For δ = d/dx, r is a log derivative of some f in the algebraic closure
//! of ℚ(x) iff r has zero polynomial part, only simple poles, and a rational
//! integer residue at every pole. For δ = x·d/dx the question for r is the
//! d/dx question for r/x, since x·f′/f = r ⟺ f′/f = r/x.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::factor::{self, is_squarefree};
use crate::ratfield::{DeltaKind, Poly, QRatFunc, RatFunc, Q};

/// f = ∏ factor^exponent, certifying δ(f)/f = r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LogDerivCertificate {
    pub factors: Vec<(Poly<Q>, BigInt)>,
}

impl LogDerivCertificate {
    pub fn trivial() -> Self {
        LogDerivCertificate { factors: Vec::new() }
    }

    /// The certified function f.
    pub fn value(&self) -> QRatFunc {
        self.factors.iter().fold(RatFunc::one(), |acc, (u, e)| {
            let e = i64::try_from(e).expect("exponent fits in i64");
            acc.mul(&RatFunc::from_poly(u.clone()).pow(e).expect("nonzero factor"))
        })
    }

    /// δ(f)/f recomputed from the factor list.
    pub fn log_derivative(&self, delta: DeltaKind) -> QRatFunc {
        let sum = self.factors.iter().fold(RatFunc::zero(), |acc, (u, e)| {
            let term = RatFunc::new(u.derivative(), u.clone()).scale(&Q::from_integer(e.clone()));
            acc.add(&term)
        });
        match delta {
            DeltaKind::Ddx => sum,
            DeltaKind::XDdx => sum.mul(&RatFunc::x()),
        }
    }

    /// f·g certifies r₁ + r₂.
    pub fn compose(&self, other: &Self) -> Self {
        merge_factors(self.factors.iter().chain(other.factors.iter()).cloned())
    }

    /// 1/f certifies −r.
    pub fn inverse(&self) -> Self {
        LogDerivCertificate { factors: self.factors.iter().map(|(u, e)| (u.clone(), -e)).collect() }
    }
}

fn merge_factors(items: impl Iterator<Item = (Poly<Q>, BigInt)>) -> LogDerivCertificate {
    let mut factors: Vec<(Poly<Q>, BigInt)> = Vec::new();
    for (u, e) in items {
        match factors.iter_mut().find(|(v, _)| *v == u) {
            Some(slot) => slot.1 += e,
            None => factors.push((u, e)),
        }
    }
    factors.retain(|(_, e)| !e.is_zero());
    factors.sort_by(|a, b| a.0.canonical_cmp(&b.0));
    LogDerivCertificate { factors }
}

/// g with δ(g) = r.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactnessCertificate {
    pub antiderivative: QRatFunc,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogDerivFailure {
    NonzeroPolynomialPart,
    HigherOrderPole,
    /// An irreducible factor (in z) of the Rothstein–Trager resultant whose
    /// roots are not integers.
    NonIntegerResidue { witness: Poly<Q> },
}

impl fmt::Display for LogDerivFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LogDerivFailure::NonzeroPolynomialPart => f.write_str("nonzero-polynomial-part"),
            LogDerivFailure::HigherOrderPole => f.write_str("higher-order-pole"),
            LogDerivFailure::NonIntegerResidue { witness } => {
                write!(f, "non-integer-residue({})", witness.render_in("z"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LogDerivDecision {
    Yes(LogDerivCertificate),
    No(LogDerivFailure),
}

impl LogDerivDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, LogDerivDecision::Yes(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactFailure {
    /// An irreducible pole class carrying a nonzero residue.
    NonzeroResidue { pole_class: Poly<Q> },
}

impl fmt::Display for ExactFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExactFailure::NonzeroResidue { pole_class } => write!(f, "nonzero-residue({pole_class})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactDecision {
    Yes(ExactnessCertificate),
    No(ExactFailure),
}

impl ExactDecision {
    pub fn is_yes(&self) -> bool {
        matches!(self, ExactDecision::Yes(_))
    }
}

/// Reduces the x·d/dx question to the d/dx question.
pub fn normalize_for_delta(r: &QRatFunc, delta: DeltaKind) -> QRatFunc {
    match delta {
        DeltaKind::Ddx => r.clone(),
        DeltaKind::XDdx => RatFunc::new(r.numer().clone(), r.denom().mul(&Poly::x())),
    }
}

/// Decides whether `r = δ(f)/f` for some f algebraic over ℚ(x).
pub fn is_log_derivative(r: &QRatFunc, delta: DeltaKind) -> LogDerivDecision {
    let r = normalize_for_delta(r, delta);
    if r.is_zero() {
        return LogDerivDecision::Yes(LogDerivCertificate::trivial());
    }
    let (poly, proper) = r.split_proper();
    if !poly.is_zero() {
        return LogDerivDecision::No(LogDerivFailure::NonzeroPolynomialPart);
    }
    let (p, q) = (proper.numer(), proper.denom());
    if !is_squarefree(q) {
        return LogDerivDecision::No(LogDerivFailure::HigherOrderPole);
    }
    let dq = q.derivative();
    let res = rothstein_trager_resultant(p, q);
    let mut roots = Vec::new();
    for (u, _) in factor::factor(&res) {
        match integer_root(&u) {
            Some(n) => roots.push(n),
            None => return LogDerivDecision::No(LogDerivFailure::NonIntegerResidue { witness: u }),
        }
    }
    let mut items = Vec::new();
    for n in roots {
        let v = q.gcd(&p.sub(&dq.scale(&Q::from_integer(n.clone()))));
        for w in factor::irreducible_factors(&v) {
            items.push((w, n.clone()));
        }
    }
    let cert = merge_factors(items.into_iter());
    debug_assert_eq!(cert.log_derivative(DeltaKind::Ddx), r);
    LogDerivDecision::Yes(cert)
}

/// Same answer as `is_log_derivative(r, delta).is_yes()` without building
/// the witness. Rejects early on non-integral coefficients of the monic
/// resultant, which cannot have only integer roots.
pub fn is_log_derivative_bool(r: &QRatFunc, delta: DeltaKind) -> bool {
    let r = normalize_for_delta(r, delta);
    if r.is_zero() {
        return true;
    }
    let (poly, proper) = r.split_proper();
    if !poly.is_zero() || !is_squarefree(proper.denom()) {
        return false;
    }
    let res = rothstein_trager_resultant(proper.numer(), proper.denom()).monic();
    res.coeffs().iter().all(|c| c.is_integer()) && factor::factor(&res).iter().all(|(u, _)| integer_root(u).is_some())
}

/// The root of a monic linear polynomial, if it is an integer.
fn integer_root(u: &Poly<Q>) -> Option<BigInt> {
    if u.degree() != Some(1) {
        return None;
    }
    let root = -(u.coeff(0) / u.coeff(1));
    root.is_integer().then(|| root.to_integer())
}

/// Res_x(q, p − z·q′) as a polynomial in z, for q made monic first (the
/// roots in z are the residues of p/q).
///
/// The values at z = 0..=deg q are integer resultants of the scaled
/// polynomials, and the interpolation runs on exact forward differences.
pub fn rothstein_trager_resultant(p: &Poly<Q>, q: &Poly<Q>) -> Poly<Q> {
    let Some(n) = q.degree().filter(|&n| n > 0) else {
        return Poly::one();
    };
    let lc_inv = q.leading_coeff().recip();
    let (p, q) = (p.scale(&lc_inv), q.monic());
    let (pi, mu) = scale_to_integer(&p);
    let (qi, lambda) = scale_to_integer(&q);
    let dqi: Vec<BigInt> = qi.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect();
    // G_z = λ·μ·(p − z·q′) = λ·P − z·μ·Q′ has formal degree m
    let m = (n - 1).max(p.degree().unwrap_or(0));
    let at = |v: &[BigInt], k: usize| v.get(k).cloned().unwrap_or_default();
    let values: Vec<BigInt> = (0..=n)
        .map(|z| {
            let z = BigInt::from(z);
            let g: Vec<BigInt> = (0..=m).map(|k| &lambda * at(&pi, k) - &z * &mu * at(&dqi, k)).collect();
            match g.iter().rposition(|c| !c.is_zero()) {
                None => BigInt::zero(),
                // Res with formal degree m = λ^(m−k)·Res with true degree k
                Some(k) => factor::integer_resultant(&qi, &g) * num_traits::pow::pow(lambda.clone(), m - k),
            }
        })
        .collect();
    let scaled = interpolate_integer(&values);
    // values = λ^m·(λμ)^n·R(z)
    let den = num_traits::pow::pow(lambda.clone(), m) * num_traits::pow::pow(&lambda * &mu, n);
    Poly::new(scaled.into_iter().map(|c| Q::new(c, den.clone())).collect())
}

/// (integer coefficients, l) with the coefficients equal to l·p.
fn scale_to_integer(p: &Poly<Q>) -> (Vec<BigInt>, BigInt) {
    let l = p.coeffs().iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints = p.coeffs().iter().map(|c| (c * Q::from_integer(l.clone())).to_integer()).collect();
    (ints, l)
}

/// The integer polynomial through (z, values[z]) for z = 0, 1, …, via
/// Newton's forward differences (Δ^k f(0) is divisible by k!).
fn interpolate_integer(values: &[BigInt]) -> Vec<BigInt> {
    let n = values.len();
    let mut diffs = values.to_vec();
    let mut lead = Vec::with_capacity(n);
    for k in 0..n {
        lead.push(diffs[0].clone());
        for i in 0..n - k - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    let mut fact = BigInt::one();
    let coef: Vec<BigInt> = lead
        .into_iter()
        .enumerate()
        .map(|(k, d)| {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            let (c, r) = d.div_rem(&fact);
            debug_assert!(r.is_zero(), "integer-valued interpolation");
            c
        })
        .collect();
    // Horner in the falling-factorial basis: out = out·(z − k) + c_k
    let mut out: Vec<BigInt> = Vec::new();
    for k in (0..n).rev() {
        let mut next = vec![BigInt::zero(); out.len() + 1];
        for (i, c) in out.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * BigInt::from(k);
        }
        next[0] += &coef[k];
        out = next;
    }
    out
}

/// Resultant over ℚ: clear denominators and use the integer resultant.
pub fn resultant(a: &Poly<Q>, b: &Poly<Q>) -> Q {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return Q::zero();
    };
    let (ai, la) = scale_to_integer(a);
    let (bi, lb) = scale_to_integer(b);
    // Res(A/la, B/lb) = la^(−deg b)·lb^(−deg a)·Res(A, B)
    let r = factor::integer_resultant(&ai, &bi);
    Q::new(r, num_traits::pow::pow(la, db) * num_traits::pow::pow(lb, da))
}

/// One pole class of a partial fraction decomposition: the terms
/// `numerator / factor^multiplicity`, deg numerator < deg factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoleClass {
    pub factor: Poly<Q>,
    pub multiplicity: usize,
    pub numerator: Poly<Q>,
    /// For simple poles: numerator·(factor′)⁻¹ mod factor, whose values at the
    /// roots of `factor` are the residues there.
    pub residue_poly: Option<Poly<Q>>,
}

/// Complete partial fraction decomposition over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueData {
    pub poly_part: Poly<Q>,
    /// Nonzero classes, sorted by factor then multiplicity.
    pub classes: Vec<PoleClass>,
}

impl ResidueData {
    pub fn class(&self, factor: &Poly<Q>, multiplicity: usize) -> Option<&PoleClass> {
        self.classes.iter().find(|c| &c.factor == factor && c.multiplicity == multiplicity)
    }

    /// Reassembles the rational function.
    pub fn recombine(&self) -> QRatFunc {
        self.classes.iter().fold(RatFunc::from_poly(self.poly_part.clone()), |acc, c| {
            acc.add(&RatFunc::new(c.numerator.clone(), c.factor.pow(c.multiplicity as u32)))
        })
    }
}

/// Partial fractions over the irreducible factors of the denominator.
pub fn residue_data(r: &QRatFunc) -> ResidueData {
    let (poly_part, proper) = r.split_proper();
    let mut classes = Vec::new();
    if proper.is_zero() {
        return ResidueData { poly_part, classes };
    }
    let (p, q) = (proper.numer(), proper.denom());
    for (u, e) in factor::factor(q) {
        let ue = u.pow(e as u32);
        let other = q.exact_div(&ue);
        let inv = other.inv_mod(&ue).expect("coprime cofactor");
        let mut a = p.mul(&inv).rem(&ue);
        // u-adic digits: a = Σ_j c_j u^j, so a/u^e = Σ_j c_j / u^{e−j}
        for j in 0..e {
            let (quot, digit) = a.div_rem(&u);
            let mult = e - j;
            if !digit.is_zero() {
                let residue_poly = (mult == 1).then(|| {
                    let du_inv = u.derivative().inv_mod(&u).expect("squarefree factor");
                    digit.mul(&du_inv).rem(&u)
                });
                classes.push(PoleClass { factor: u.clone(), multiplicity: mult, numerator: digit, residue_poly });
            }
            a = quot;
        }
    }
    classes.sort_by(|a, b| a.factor.canonical_cmp(&b.factor).then(a.multiplicity.cmp(&b.multiplicity)));
    ResidueData { poly_part, classes }
}

/// Hermite reduction: `r = g′ + poly + h` with `h` proper and its
/// denominator squarefree. The proper remainder `h` is uniquely determined
/// by r and depends ℚ-linearly on it.
pub fn hermite_reduce(r: &QRatFunc) -> (QRatFunc, Poly<Q>, QRatFunc) {
    let (mut poly, proper) = r.split_proper();
    if proper.is_zero() {
        return (RatFunc::zero(), poly, RatFunc::zero());
    }
    let mut a = proper.numer().clone();
    let d = proper.denom().clone();
    let mut g = RatFunc::zero();
    let mut dm = d.gcd(&d.derivative());
    let ds = d.exact_div(&dm);
    while dm.degree().unwrap_or(0) > 0 {
        let dm2 = dm.gcd(&dm.derivative());
        let dms = dm.exact_div(&dm2);
        let lhs = ds.mul(&dm.derivative()).exact_div(&dm).neg();
        let (b, c) = Poly::diophantine(&lhs, &dms, &a).expect("coprime by construction");
        a = c.sub(&b.derivative().mul(&ds).exact_div(&dms));
        g = g.add(&RatFunc::new(b, dm.clone()));
        dm = dm2;
    }
    let h = RatFunc::new(a, ds);
    let (extra, h) = h.split_proper();
    poly = poly.add(&extra);
    (g, poly, h)
}

/// Termwise antiderivative of a polynomial.
pub fn integrate_poly(p: &Poly<Q>) -> Poly<Q> {
    let mut coeffs = vec![Q::zero()];
    coeffs.extend(p.coeffs().iter().enumerate().map(|(i, c)| c / Q::from_integer(BigInt::from(i + 1))));
    Poly::new(coeffs)
}

/// Decides whether `r = δ(g)` for a rational g.
pub fn is_exact(r: &QRatFunc, delta: DeltaKind) -> ExactDecision {
    let r = normalize_for_delta(r, delta);
    let (g, poly, h) = hermite_reduce(&r);
    if !h.is_zero() {
        let pole_class = factor::irreducible_factors(h.denom()).into_iter().next().expect("proper nonzero h has poles");
        return ExactDecision::No(ExactFailure::NonzeroResidue { pole_class });
    }
    let antiderivative = g.add(&RatFunc::from_poly(integrate_poly(&poly)));
    debug_assert_eq!(antiderivative.derivative(), r);
    ExactDecision::Yes(ExactnessCertificate { antiderivative })
}

impl ExactnessCertificate {
    pub fn verify(&self, r: &QRatFunc, delta: DeltaKind) -> bool {
        delta.apply(&self.antiderivative) == *r
    }
}

impl LogDerivCertificate {
    pub fn verify(&self, r: &QRatFunc, delta: DeltaKind) -> bool {
        self.log_derivative(delta) == *r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ratfield::{int, rat};

    fn p(c: &[i64]) -> Poly<Q> {
        Poly::new(c.iter().map(|&n| int(n)).collect())
    }
    fn rf(num: &[i64], den: &[i64]) -> QRatFunc {
        RatFunc::new(p(num), p(den))
    }

    #[test]
    fn one_over_x_is_log_derivative_of_x() {
        let d = is_log_derivative(&rf(&[1], &[0, 1]), DeltaKind::Ddx);
        assert_eq!(d, LogDerivDecision::Yes(LogDerivCertificate { factors: vec![(p(&[0, 1]), BigInt::from(1))] }));
    }

    #[test]
    fn half_residue_rejected() {
        match is_log_derivative(&rf(&[1], &[0, 2]), DeltaKind::Ddx) {
            LogDerivDecision::No(LogDerivFailure::NonIntegerResidue { witness }) => {
                // z - 1/2
                assert_eq!(witness, Poly::new(vec![rat(-1, 2), int(1)]));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn polynomial_part_rejected() {
        assert_eq!(
            is_log_derivative(&rf(&[0, 2], &[1]), DeltaKind::Ddx),
            LogDerivDecision::No(LogDerivFailure::NonzeroPolynomialPart)
        );
        assert_eq!(
            is_log_derivative(&rf(&[1], &[0, 0, 1]), DeltaKind::Ddx),
            LogDerivDecision::No(LogDerivFailure::HigherOrderPole)
        );
    }

    #[test]
    fn mixed_residues_certificate() {
        // 3/(x-1) - 2/(x+5)
        let r = RatFunc::new(p(&[3]), p(&[-1, 1])).sub(&RatFunc::new(p(&[2]), p(&[5, 1])));
        let LogDerivDecision::Yes(cert) = is_log_derivative(&r, DeltaKind::Ddx) else { panic!() };
        // oracle: f = (x-1)^3/(x+5)^2, differentiate directly
        let f = RatFunc::new(p(&[-1, 1]).pow(3), p(&[5, 1]).pow(2));
        assert_eq!(f.derivative().div(&f).unwrap(), r);
        assert_eq!(cert.value(), f);
    }

    #[test]
    fn xddx_normalization() {
        // δ = x d/dx: δ(x)/x = 1
        let LogDerivDecision::Yes(cert) = is_log_derivative(&RatFunc::one(), DeltaKind::XDdx) else { panic!() };
        assert_eq!(cert.value(), RatFunc::x());
        assert!(!is_log_derivative(&RatFunc::constant(rat(1, 2)), DeltaKind::XDdx).is_yes());
    }

    #[test]
    fn irrational_poles_with_integer_residues() {
        // 2x/(x^2+1) = δ(x^2+1)/(x^2+1)
        let LogDerivDecision::Yes(cert) = is_log_derivative(&rf(&[0, 2], &[1, 0, 1]), DeltaKind::Ddx) else { panic!() };
        assert_eq!(cert.value(), RatFunc::from_poly(p(&[1, 0, 1])));
        // 1/(x^2+1) has residues ∓i/2
        assert!(!is_log_derivative(&rf(&[1], &[1, 0, 1]), DeltaKind::Ddx).is_yes());
    }

    #[test]
    fn exactness_examples() {
        let ExactDecision::Yes(c) = is_exact(&rf(&[1], &[0, 0, 1]), DeltaKind::Ddx) else { panic!() };
        assert_eq!(c.antiderivative, rf(&[-1], &[0, 1]));
        assert_eq!(
            is_exact(&rf(&[1], &[0, 1]), DeltaKind::Ddx),
            ExactDecision::No(ExactFailure::NonzeroResidue { pole_class: p(&[0, 1]) })
        );
        // (2x+1)/(x^2+x)^2 = δ(−1/(x^2+x))
        let r = rf(&[1, 2], &[0, 0, 1, 2, 1]);
        let g = rf(&[-1], &[0, 1, 1]);
        assert_eq!(g.derivative(), r);
        let ExactDecision::Yes(c) = is_exact(&r, DeltaKind::Ddx) else { panic!() };
        assert_eq!(c.antiderivative, g);
    }

    #[test]
    fn hermite_leaves_log_part() {
        // 1/(x^2+1)^2 = (x/(2(x^2+1)))′ + (1/2)/(x^2+1)
        let r = rf(&[1], &[1, 0, 2, 0, 1]);
        let (g, poly, h) = hermite_reduce(&r);
        assert!(poly.is_zero());
        assert_eq!(h, RatFunc::new(Poly::constant(rat(1, 2)), p(&[1, 0, 1])));
        assert_eq!(g.derivative().add(&h), r);
        assert!(!is_exact(&r, DeltaKind::Ddx).is_yes());
    }

    #[test]
    fn residue_data_examples() {
        let d = residue_data(&rf(&[1], &[0, 1, 1]));
        assert!(d.poly_part.is_zero());
        assert_eq!(d.classes.len(), 2);
        assert_eq!(d.classes[0].factor, p(&[0, 1]));
        assert_eq!(d.classes[0].residue_poly, Some(p(&[1])));
        assert_eq!(d.classes[1].factor, p(&[1, 1]));
        assert_eq!(d.classes[1].residue_poly, Some(p(&[-1])));

        let d = residue_data(&rf(&[1], &[1, 0, 1]));
        let rho = d.classes[0].residue_poly.clone().unwrap();
        assert_eq!(rho, Poly::new(vec![int(0), rat(-1, 2)]));
        // 2x·(−x/2) ≡ 1 mod x²+1
        assert!(p(&[0, 2]).mul(&rho).rem(&p(&[1, 0, 1])).is_one());

        let d = residue_data(&rf(&[0, 0, 0, 1], &[1]));
        assert_eq!(d.poly_part, p(&[0, 0, 0, 1]));
        assert!(d.classes.is_empty());
    }

    #[test]
    fn residue_data_recombines() {
        let r = rf(&[3, -1, 0, 2, 7, 1], &[0, 0, 1, 2, 1]).add(&rf(&[1, 1], &[1, 0, 1, 0, 0, 0]));
        assert_eq!(residue_data(&r).recombine(), r);
    }
}
