//! σ-Galois groups of δ(y) = a·y (rank one and diagonal) and of δ(y) = b.
//!
//! For δ(y_i) = a_i·y_i the order-d relations are the exponent vectors m
//! with Σ m_{i,j} ℏ_j σ^j(a_i) a logarithmic derivative over ℚ(x). The set
//! Λ_d of such m is a σ-stable lattice; it is computed from partial fraction
//! data of the functions b_{i,j} = ℏ_j σ^j(a_i):
//!
//! - the polynomial part of Σ m·b must vanish;
//! - every pole part of order ≥ 2 must vanish;
//! - for each simple-pole factor u, the residue polynomial ρ_u(m) must be a
//!   constant, and that constant an integer.
//!
//! The first three are ℚ-linear, the last a congruence. Both are solved
//! together by one integer kernel computation.
//!
//! Results are bounded: relations of order above D are not seen.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lattice::{integer_kernel, Lattice};
use crate::logderiv::{
    hermite_reduce, is_exact, is_log_derivative, is_log_derivative_bool, normalize_for_delta, residue_data, ExactDecision,
    ExactnessCertificate, LogDerivCertificate, LogDerivDecision,
};
use crate::ratfield::{OperatorSpec, Poly, QRatFunc, RatFunc, SigmaKind, Q};
use crate::sigmalattice::{
    BoundedAnswer, ClosureReport, GroupKind, SigmaDimension, SigmaExponentVector, SigmaLatticeGroup,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// f with δ(f)/f equal to the combined function.
    LogDerivative(LogDerivCertificate),
    /// g with δ(g) equal to the combined function.
    Antiderivative(ExactnessCertificate),
}

/// A generator of the relation module with its base-field witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationCertificate {
    pub vector: SigmaExponentVector,
    /// Σ m_{i,j} ℏ_j σ^j(a_i).
    pub combined: QRatFunc,
    pub witness: Witness,
}

impl RelationCertificate {
    pub fn verify(&self, op: &OperatorSpec) -> bool {
        match &self.witness {
            Witness::LogDerivative(c) => c.verify(&self.combined, op.delta()),
            Witness::Antiderivative(c) => c.verify(&self.combined, op.delta()),
        }
    }
}

/// A relation module together with its order-D lattice and certificates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relations {
    pub group: SigmaLatticeGroup,
    /// Λ_D in ℤ^{n(D+1)}, order-major.
    pub lattice: Lattice,
    pub certificates: Vec<RelationCertificate>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Problem {
    Multiplicative(QRatFunc),
    Additive(QRatFunc),
    Diagonal(Vec<QRatFunc>),
}

impl Problem {
    pub fn name(&self) -> &'static str {
        match self {
            Problem::Multiplicative(_) => "rank1",
            Problem::Additive(_) => "additive",
            Problem::Diagonal(_) => "diagonal",
        }
    }

    pub fn inputs(&self) -> Vec<QRatFunc> {
        match self {
            Problem::Multiplicative(a) | Problem::Additive(a) => vec![a.clone()],
            Problem::Diagonal(v) => v.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupReport {
    pub problem: Problem,
    pub op: OperatorSpec,
    pub order: usize,
    pub group: SigmaLatticeGroup,
    pub certificates: Vec<RelationCertificate>,
    pub closure: ClosureReport,
    pub sigma_dim: SigmaDimension,
    pub dense: BoundedAnswer,
    pub sigma_reduced: BoundedAnswer,
    /// σ-transcendence degree of the σ-Picard-Vessiot extension; equals
    /// the σ-dimension of the group.
    pub pv_sigma_trdeg: usize,
}

fn check_operator(op: &OperatorSpec) -> Result<()> {
    if matches!(op.sigma(), SigmaKind::ParamShift) {
        return Err(Error::ParameterField(
            "group computations need coefficients in ℚ(x); the parameter shift acts on ℚ(α)(x)".into(),
        ));
    }
    Ok(())
}

/// b_{i,j} = ℏ_j σ^j(a_i), order-major (index j·n + i).
pub fn jet_functions(inputs: &[QRatFunc], op: &OperatorSpec, order: usize) -> Result<Vec<QRatFunc>> {
    check_operator(op)?;
    let mut out = Vec::with_capacity(inputs.len() * (order + 1));
    for j in 0..=order as u64 {
        let hbar = op.hbar_power::<Q>(j);
        for a in inputs {
            out.push(op.sigma_apply(a, j)?.mul(&hbar));
        }
    }
    Ok(out)
}

/// Σ m_k b_k.
pub fn combine(functions: &[QRatFunc], m: &[BigInt]) -> QRatFunc {
    assert_eq!(functions.len(), m.len(), "coefficient count mismatch");
    functions
        .iter()
        .zip(m)
        .filter(|(_, c)| !c.is_zero())
        .fold(RatFunc::zero(), |acc, (b, c)| acc.add(&b.scale(&Q::from_integer(c.clone()))))
}

/// Scales a rational row to a primitive integer row (up to sign).
fn clear_denominators(row: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = row.iter().fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let ints = row.iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    (ints, den)
}

/// Λ_d = {m : Σ m·b is a logarithmic derivative} for the n inputs at order d,
/// computed directly from the constraint system.
pub fn relation_lattice(inputs: &[QRatFunc], op: &OperatorSpec, order: usize) -> Result<Lattice> {
    if inputs.is_empty() {
        return Err(Error::InvalidArgument("at least one coefficient is required".into()));
    }
    let funcs = jet_functions(inputs, op, order)?;
    let normalized: Vec<QRatFunc> = funcs.iter().map(|b| normalize_for_delta(b, op.delta())).collect();
    Ok(multiplicative_lattice(&normalized))
}

fn multiplicative_lattice(normalized: &[QRatFunc]) -> Lattice {
    let big_n = normalized.len();
    let data: Vec<_> = normalized.iter().map(residue_data).collect();

    let mut linear: Vec<Vec<Q>> = Vec::new();
    let mut integrality: Vec<Vec<Q>> = Vec::new();

    let top = data.iter().filter_map(|d| d.poly_part.degree()).max();
    if let Some(top) = top {
        for t in 0..=top {
            linear.push(data.iter().map(|d| d.poly_part.coeff(t)).collect());
        }
    }

    // pole classes keyed by (factor, multiplicity), sorted canonically
    let mut keys: Vec<(Poly<Q>, usize)> = Vec::new();
    for d in &data {
        for c in &d.classes {
            if !keys.iter().any(|(u, e)| u == &c.factor && *e == c.multiplicity) {
                keys.push((c.factor.clone(), c.multiplicity));
            }
        }
    }
    keys.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
    for (u, e) in &keys {
        let deg = u.degree().expect("nonconstant factor");
        let per_k: Vec<Poly<Q>> = data
            .iter()
            .map(|d| match d.class(u, *e) {
                Some(c) if *e == 1 => c.residue_poly.clone().expect("simple pole"),
                Some(c) => c.numerator.clone(),
                None => Poly::zero(),
            })
            .collect();
        if *e >= 2 {
            for t in 0..deg {
                linear.push(per_k.iter().map(|p| p.coeff(t)).collect());
            }
        } else {
            for t in 1..deg {
                linear.push(per_k.iter().map(|p| p.coeff(t)).collect());
            }
            integrality.push(per_k.iter().map(|p| p.coeff(0)).collect());
        }
    }

    // Unknowns (m, t): C·m = 0 and P·m − den·t = 0.
    let congruences: Vec<(Vec<BigInt>, BigInt)> =
        integrality.iter().map(|r| clear_denominators(r)).filter(|(_, den)| !den.is_one()).collect();
    let ncols = big_n + congruences.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for r in &linear {
        let (mut ints, _) = clear_denominators(r);
        if ints.iter().all(Zero::is_zero) {
            continue;
        }
        ints.resize(ncols, BigInt::zero());
        rows.push(ints);
    }
    for (t, (p, den)) in congruences.iter().enumerate() {
        let mut row = p.clone();
        row.resize(ncols, BigInt::zero());
        row[big_n + t] = -den;
        rows.push(row);
    }
    let kernel = integer_kernel(&rows, ncols);
    let projected: Vec<Vec<BigInt>> = kernel.into_iter().map(|v| v[..big_n].to_vec()).collect();
    Lattice::from_generators(big_n, &projected)
}

/// V_d ∩ ℤ^{d+1} where V_d = {c ∈ ℚ^{d+1} : Σ c_j ℏ_j σ^j(b) is exact}.
pub fn additive_lattice(b: &QRatFunc, op: &OperatorSpec, order: usize) -> Result<Lattice> {
    let funcs = jet_functions(std::slice::from_ref(b), op, order)?;
    let rems: Vec<QRatFunc> =
        funcs.iter().map(|f| hermite_reduce(&normalize_for_delta(f, op.delta())).2).collect();
    let common = rems.iter().fold(Poly::one(), |l: Poly<Q>, h| {
        let g = l.gcd(h.denom());
        l.mul(&h.denom().exact_div(&g))
    });
    let numers: Vec<Poly<Q>> = rems.iter().map(|h| h.numer().mul(&common.exact_div(h.denom()))).collect();
    let top = numers.iter().filter_map(Poly::degree).max();
    let mut rows = Vec::new();
    if let Some(top) = top {
        for t in 0..=top {
            let row: Vec<Q> = numers.iter().map(|p| p.coeff(t)).collect();
            let (ints, _) = clear_denominators(&row);
            if ints.iter().any(|c| !c.is_zero()) {
                rows.push(ints);
            }
        }
    }
    let kernel = integer_kernel(&rows, funcs.len());
    Ok(Lattice::from_generators(funcs.len(), &kernel).saturate())
}

fn certify_multiplicative(funcs: &[QRatFunc], op: &OperatorSpec, g: &SigmaExponentVector, order: usize) -> Result<RelationCertificate> {
    let combined = combine(funcs, &g.embed(order));
    match is_log_derivative(&combined, op.delta()) {
        LogDerivDecision::Yes(cert) => {
            let rc = RelationCertificate { vector: g.clone(), combined, witness: Witness::LogDerivative(cert) };
            if !rc.verify(op) {
                return Err(Error::Internal(format!("certificate for {} does not recombine", g)));
            }
            Ok(rc)
        }
        LogDerivDecision::No(why) => Err(Error::Internal(format!("generator {} is not a relation: {why}", g))),
    }
}

fn certify_additive(funcs: &[QRatFunc], op: &OperatorSpec, g: &SigmaExponentVector, order: usize) -> Result<RelationCertificate> {
    let combined = combine(funcs, &g.embed(order));
    match is_exact(&combined, op.delta()) {
        ExactDecision::Yes(cert) => {
            let rc = RelationCertificate { vector: g.clone(), combined, witness: Witness::Antiderivative(cert) };
            if !rc.verify(op) {
                return Err(Error::Internal(format!("antiderivative for {} does not check", g)));
            }
            Ok(rc)
        }
        ExactDecision::No(why) => Err(Error::Internal(format!("generator {} is not a relation: {why}", g))),
    }
}

fn module_from_lattice(n: usize, kind: GroupKind, lattice: &Lattice, order: usize) -> Result<SigmaLatticeGroup> {
    let group = SigmaLatticeGroup::from_truncation(n, kind, lattice, order);
    if &group.expand_to_order(order) != lattice {
        return Err(Error::Internal("relation lattice is not σ-stable".into()));
    }
    Ok(group)
}

/// σ-Galois group of δ(y_i) = a_i·y_i, i = 1..n, from relations of order ≤ D.
pub fn relation_lattice_diagonal(a: &[QRatFunc], op: &OperatorSpec, order: usize) -> Result<Relations> {
    let lattice = relation_lattice(a, op, order)?;
    let funcs = jet_functions(a, op, order)?;
    let group = module_from_lattice(a.len(), GroupKind::Multiplicative, &lattice, order)?;
    let certificates =
        group.generators().iter().map(|g| certify_multiplicative(&funcs, op, g, order)).collect::<Result<_>>()?;
    Ok(Relations { group, lattice, certificates })
}

/// σ-Galois group of δ(y) = a·y from relations of order ≤ D.
pub fn relation_lattice_multiplicative(a: &QRatFunc, op: &OperatorSpec, order: usize) -> Result<Relations> {
    relation_lattice_diagonal(std::slice::from_ref(a), op, order)
}

/// σ-Galois group of δ(y) = b inside Ga, from linear relations of order ≤ D.
/// Generators are primitive integer vectors spanning the relation space.
pub fn relation_space_additive(b: &QRatFunc, op: &OperatorSpec, order: usize) -> Result<Relations> {
    let lattice = additive_lattice(b, op, order)?;
    let funcs = jet_functions(std::slice::from_ref(b), op, order)?;
    let group = module_from_lattice(1, GroupKind::Additive, &lattice, order)?;
    let certificates =
        group.generators().iter().map(|g| certify_additive(&funcs, op, g, order)).collect::<Result<_>>()?;
    Ok(Relations { group, lattice, certificates })
}

/// Full report: group, certificates, Zariski closures up to order D and the
/// bounded structural answers.
pub fn analyze(problem: &Problem, op: &OperatorSpec, order: usize) -> Result<GroupReport> {
    let rel = match problem {
        Problem::Multiplicative(a) => relation_lattice_multiplicative(a, op, order)?,
        Problem::Additive(b) => relation_space_additive(b, op, order)?,
        Problem::Diagonal(a) => relation_lattice_diagonal(a, op, order)?,
    };
    let closure = rel.group.closure_report(order);
    let sigma_dim = crate::sigmalattice::sigma_dimension_from_dims(&closure.dims());
    let dense = rel.group.is_zariski_dense(order);
    let sigma_reduced = rel.group.is_sigma_reduced(order);
    let pv_sigma_trdeg = sigma_trdeg(&rel.lattice, rel.group.n(), order);
    if pv_sigma_trdeg != sigma_dim.value {
        return Err(Error::Internal(format!(
            "σ-trdeg {pv_sigma_trdeg} of the extension differs from σ-dim {} of the group",
            sigma_dim.value
        )));
    }
    Ok(GroupReport {
        problem: problem.clone(),
        op: op.clone(),
        order,
        group: rel.group,
        certificates: rel.certificates,
        closure,
        sigma_dim,
        dense,
        sigma_reduced,
        pv_sigma_trdeg,
    })
}

/// σ-transcendence degree of K⟨y⟩ over K read off the direct relation
/// lattice: K(y, σ(y), …, σ^d(y)) has transcendence degree n(d+1) minus the
/// rank of the relations of order ≤ d.
fn sigma_trdeg(lattice: &Lattice, n: usize, order: usize) -> usize {
    let trdegs: Vec<usize> =
        (0..=order).map(|d| n * (d + 1) - lattice.intersect_leading(n * (d + 1)).rank()).collect();
    crate::sigmalattice::sigma_dimension_from_dims(&trdegs).value
}

/// Whether m is an order-d relation, by the log-derivative decider alone.
pub fn is_relation(funcs: &[QRatFunc], op: &OperatorSpec, m: &[BigInt]) -> bool {
    is_log_derivative_bool(&combine(funcs, m), op.delta())
}

/// The functions b_k brought over one common denominator, for evaluating
/// many combinations Σ m_k·b_k of the same family.
#[derive(Clone, Debug)]
pub struct Combination {
    denom: Poly<Q>,
    numers: Vec<Poly<Q>>,
}

impl Combination {
    pub fn new(functions: &[QRatFunc]) -> Self {
        let denom = functions.iter().fold(Poly::one(), |l, b| {
            let g = l.gcd(b.denom());
            l.mul(&b.denom().div_rem(&g).0)
        });
        let numers = functions.iter().map(|b| b.numer().mul(&denom.div_rem(b.denom()).0)).collect();
        Combination { denom, numers }
    }

    pub fn len(&self) -> usize {
        self.numers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numers.is_empty()
    }

    /// Same value as [`combine`].
    pub fn eval(&self, m: &[BigInt]) -> QRatFunc {
        assert_eq!(self.numers.len(), m.len(), "coefficient count mismatch");
        let numer = self
            .numers
            .iter()
            .zip(m)
            .filter(|(_, c)| !c.is_zero())
            .fold(Poly::zero(), |acc, (n, c)| acc.add(&n.scale(&Q::from_integer(c.clone()))));
        RatFunc::new(numer, self.denom.clone())
    }

    pub fn is_relation(&self, op: &OperatorSpec, m: &[BigInt]) -> bool {
        is_log_derivative_bool(&self.eval(m), op.delta())
    }
}
