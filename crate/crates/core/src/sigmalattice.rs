//! σ-closed subgroups of the torus Gmⁿ (and of the vector group Gaⁿ),
//! presented by ℤ[σ]-modules of exponent vectors.
//!
//! A multiplicative function ψ(g) = ∏_{i,j} σ^j(g_i)^{m_{i,j}} is recorded
//! by its exponents m_{i,j}. A finite generating set spans the module M under
//! integer combinations and the order-raising shift σ·m; the group is
//! G = {g : ψ(g) = 1 for all ψ ∈ M}.
//!
//! Coordinates are order-major: in ℤ^{n(d+1)} block j holds the n variables
//! at σ-order j. The order-d truncation of M (the span of all σ^t·m of order
//! ≤ d) is the character lattice of the Zariski closure G[d], so closure
//! dimensions and degrees are ranks and indices of integer lattices.
//!
//! σ-reducedness. The σ-coordinate ring of G is the group algebra
//! k[ℤ[σ]ⁿ/M] with σ induced by the shift. Its kernel is trivial iff
//! σ·v ∈ M ⇒ v ∈ M (σ is injective on k and the shift is injective on
//! ℤ[σ]ⁿ, so a kernel element exists iff two distinct classes collide after
//! shifting, i.e. iff some v ∉ M has σ·v ∈ M). The bounded test checks this
//! saturation property on the order-D truncation.
//!
//! Additive groups {g : Σ c_{i,j} σ^j(g_i) = 0} reuse the same machinery
//! with every truncation saturated, since their relation spaces are
//! ℚ-subspaces.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::Lattice;

/// Exponents m_{i,j} of one multiplicative function, order-major, with
/// trailing all-zero orders trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SigmaExponentVector {
    n: usize,
    coeffs: Vec<BigInt>,
}

impl SigmaExponentVector {
    /// From order-major coefficients; the length is padded to a multiple of n.
    pub fn new(n: usize, mut coeffs: Vec<BigInt>) -> Self {
        assert!(n > 0, "torus rank must be positive");
        let len = coeffs.len().div_ceil(n) * n;
        coeffs.resize(len, BigInt::zero());
        while coeffs.len() >= n && coeffs[coeffs.len() - n..].iter().all(Zero::is_zero) {
            coeffs.truncate(coeffs.len() - n);
        }
        SigmaExponentVector { n, coeffs }
    }

    /// Rank-one vector from the exponents at orders 0, 1, ….
    pub fn from_orders(exps: &[i64]) -> Self {
        Self::new(1, exps.iter().map(|&e| BigInt::from(e)).collect())
    }

    /// From per-variable order lists: `per_var[i][j]` = m_{i,j}.
    pub fn from_per_variable(per_var: &[Vec<i64>]) -> Self {
        let n = per_var.len();
        let orders = per_var.iter().map(Vec::len).max().unwrap_or(0);
        let mut coeffs = vec![BigInt::zero(); n * orders];
        for (i, exps) in per_var.iter().enumerate() {
            for (j, &e) in exps.iter().enumerate() {
                coeffs[j * n + i] = BigInt::from(e);
            }
        }
        Self::new(n, coeffs)
    }

    pub fn zero(n: usize) -> Self {
        Self::new(n, Vec::new())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Largest σ-order with a nonzero exponent; `None` for the zero vector.
    pub fn order(&self) -> Option<usize> {
        (self.coeffs.len() / self.n).checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// m_{var, order}, zero-based.
    pub fn get(&self, var: usize, order: usize) -> BigInt {
        self.coeffs.get(order * self.n + var).cloned().unwrap_or_default()
    }

    /// σ^t·m: every exponent moves up t orders.
    pub fn shift(&self, t: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![BigInt::zero(); t * self.n];
        coeffs.extend(self.coeffs.iter().cloned());
        SigmaExponentVector { n: self.n, coeffs }
    }

    /// Coordinates in ℤ^{n(d+1)}. Panics if the order exceeds d.
    pub fn embed(&self, d: usize) -> Vec<BigInt> {
        let len = self.n * (d + 1);
        assert!(self.coeffs.len() <= len, "vector order exceeds embedding order");
        let mut v = self.coeffs.clone();
        v.resize(len, BigInt::zero());
        v
    }

    /// Nonzero entries as (variable, order, exponent), order-major.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, e)| !e.is_zero())
            .map(move |(k, e)| (k % self.n, k / self.n, e))
    }
}

impl fmt::Display for SigmaExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let orders = self.coeffs.len() / self.n;
        let list = |var: usize| {
            let items: Vec<String> = (0..orders.max(1)).map(|j| self.get(var, j).to_string()).collect();
            format!("({})", items.join(","))
        };
        if self.n == 1 {
            f.write_str(&list(0))
        } else {
            let vars: Vec<String> = (0..self.n).map(list).collect();
            write!(f, "({})", vars.join(","))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GroupKind {
    /// Subgroup of Gmⁿ cut out by multiplicative functions.
    Multiplicative,
    /// Subgroup of Gaⁿ cut out by linear σ-relations over ℚ.
    Additive,
}

/// A σ-closed subgroup with a canonical module presentation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaLatticeGroup {
    n: usize,
    kind: GroupKind,
    generators: Vec<SigmaExponentVector>,
}

/// Per-order data of the Zariski closures G[d].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureEntry {
    pub order: usize,
    pub dim: usize,
    /// Number of points of G[d] when it is finite.
    pub degree: Option<BigInt>,
    pub rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureReport {
    pub entries: Vec<ClosureEntry>,
}

impl ClosureReport {
    pub fn dims(&self) -> Vec<usize> {
        self.entries.iter().map(|e| e.dim).collect()
    }

    pub fn degrees(&self) -> Vec<Option<BigInt>> {
        self.entries.iter().map(|e| e.degree.clone()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SigmaDimension {
    pub value: usize,
    pub stabilized: bool,
}

/// An answer that only claims to hold up to a σ-order bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedAnswer {
    pub holds: bool,
    pub order_bound: usize,
    pub witness: Option<SigmaExponentVector>,
}

/// Window of equal first differences required to call σ-dimension stable.
pub const STABILIZATION_WINDOW: usize = 3;

impl SigmaLatticeGroup {
    /// Canonicalizes the presentation; zero generators are ignored.
    pub fn new(n: usize, kind: GroupKind, generators: Vec<SigmaExponentVector>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("torus rank must be positive".into()));
        }
        if let Some(g) = generators.iter().find(|g| g.n() != n) {
            return Err(Error::InvalidArgument(format!("generator {g} has {} variables, expected {n}", g.n())));
        }
        let raw = SigmaLatticeGroup { n, kind, generators: generators.into_iter().filter(|g| !g.is_zero()).collect() };
        let Some(top) = raw.max_order() else {
            return Ok(raw);
        };
        let lattice = raw.expand_to_order(top);
        Ok(Self::from_truncation(n, kind, &lattice, top))
    }

    pub fn multiplicative(n: usize, generators: Vec<SigmaExponentVector>) -> Result<Self> {
        Self::new(n, GroupKind::Multiplicative, generators)
    }

    pub fn additive(n: usize, generators: Vec<SigmaExponentVector>) -> Result<Self> {
        Self::new(n, GroupKind::Additive, generators)
    }

    /// Rank-one shorthand: each generator is given by its exponents at orders 0, 1, ….
    pub fn rank_one(generators: &[&[i64]]) -> Self {
        let gens = generators.iter().map(|g| SigmaExponentVector::from_orders(g)).collect();
        Self::multiplicative(1, gens).expect("rank-one generators")
    }

    /// Recovers module generators from a σ-stable lattice in ℤ^{n(order+1)}:
    /// order by order, keep the HNF rows not already spanned by shifts of
    /// earlier generators.
    pub fn from_truncation(n: usize, kind: GroupKind, lattice: &Lattice, order: usize) -> Self {
        assert_eq!(lattice.dim(), n * (order + 1), "lattice dimension does not match order");
        let mut group = SigmaLatticeGroup { n, kind, generators: Vec::new() };
        for d in 0..=order {
            let level = lattice.intersect_leading(n * (d + 1));
            let mut span = group.expand_to_order(d);
            for row in level.basis() {
                if !span.contains(row) {
                    group.generators.push(SigmaExponentVector::new(n, row.clone()));
                    span = group.close(span.join(&Lattice::from_generators(span.dim(), &[row])));
                }
            }
        }
        group
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> GroupKind {
        self.kind
    }

    pub fn generators(&self) -> &[SigmaExponentVector] {
        &self.generators
    }

    pub fn max_order(&self) -> Option<usize> {
        self.generators.iter().filter_map(SigmaExponentVector::order).max()
    }

    fn close(&self, l: Lattice) -> Lattice {
        match self.kind {
            GroupKind::Multiplicative => l,
            GroupKind::Additive => l.saturate(),
        }
    }

    /// HNF basis of the span of all σ^t·g of order ≤ d, in ℤ^{n(d+1)}.
    pub fn expand_to_order(&self, d: usize) -> Lattice {
        let dim = self.n * (d + 1);
        let mut rows = Vec::new();
        for g in &self.generators {
            let Some(r) = g.order() else { continue };
            for t in 0..=d.saturating_sub(r) {
                if r + t <= d {
                    rows.push(g.shift(t).embed(d));
                }
            }
        }
        self.close(Lattice::from_generators(dim, &rows))
    }

    /// Dimensions, degrees and lattice ranks of G[0], …, G[max_order].
    pub fn closure_report(&self, max_order: usize) -> ClosureReport {
        let entries = (0..=max_order)
            .map(|d| {
                let l = self.expand_to_order(d);
                let rank = l.rank();
                let dim = self.n * (d + 1) - rank;
                let degree = if dim == 0 { l.index() } else { None };
                ClosureEntry { order: d, dim, degree, rank }
            })
            .collect();
        ClosureReport { entries }
    }

    /// Linear growth rate of dim G[d]. Stabilized when the last
    /// [`STABILIZATION_WINDOW`] first differences (with dim G[−1] = 0)
    /// agree; otherwise the floor of dim G[D]/(D+1).
    pub fn sigma_dimension(&self, max_order: usize) -> SigmaDimension {
        sigma_dimension_from_dims(&self.closure_report(max_order).dims())
    }

    /// Bounded density of G in Gmⁿ: no order-0 relation appears among the
    /// order-≤D relations.
    pub fn is_zariski_dense(&self, max_order: usize) -> BoundedAnswer {
        let order0 = self.expand_to_order(max_order).intersect_leading(self.n);
        let witness = order0.basis().first().map(|row| SigmaExponentVector::new(self.n, row.clone()));
        BoundedAnswer { holds: witness.is_none(), order_bound: max_order, witness }
    }

    /// Bounded σ-saturation test: every v of order ≤ D−1 with σ·v in the
    /// order-D truncation must lie in the order-(D−1) truncation.
    pub fn is_sigma_reduced(&self, max_order: usize) -> BoundedAnswer {
        let mut witness = None;
        if max_order > 0 {
            let preimage = self.expand_to_order(max_order).intersect_trailing(self.n);
            let lower = self.expand_to_order(max_order - 1);
            witness = preimage
                .basis()
                .iter()
                .find(|v| !lower.contains(v))
                .map(|v| SigmaExponentVector::new(self.n, v.clone()));
        }
        BoundedAnswer { holds: witness.is_none(), order_bound: max_order, witness }
    }

    /// Bounded subgroup test `other ⊆ self`, i.e. M_self ⊆ M_other: every
    /// generator of `self` lies in the order-D truncation of `other`.
    pub fn contains(&self, other: &SigmaLatticeGroup, max_order: usize) -> Result<bool> {
        if self.n != other.n || self.kind != other.kind {
            return Err(Error::InvalidArgument("groups live in different ambient groups".into()));
        }
        if self.max_order().is_some_and(|r| r > max_order) {
            return Err(Error::InvalidArgument(format!(
                "order bound {max_order} is below the generator order {}",
                self.max_order().unwrap_or(0)
            )));
        }
        let big = other.expand_to_order(max_order);
        Ok(self.generators.iter().all(|g| big.contains(&g.embed(max_order))))
    }

    /// Text rendering of the defining relations, e.g. `g·σ(g)^-2·σ^2(g) = 1`.
    pub fn presentation(&self) -> String {
        if self.generators.is_empty() {
            return "(no relations)".to_string();
        }
        let parts: Vec<String> = self.generators.iter().map(|g| self.render_relation(g)).collect();
        parts.join("; ")
    }

    pub fn render_relation(&self, g: &SigmaExponentVector) -> String {
        let names = variable_names(self.n);
        let base = |var: usize, order: usize| match order {
            0 => names[var].clone(),
            1 => format!("σ({})", names[var]),
            j => format!("σ^{j}({})", names[var]),
        };
        match self.kind {
            GroupKind::Multiplicative => {
                let terms: Vec<String> = g
                    .entries()
                    .map(|(v, j, e)| if e.is_one() { base(v, j) } else { format!("{}^{e}", base(v, j)) })
                    .collect();
                format!("{} = 1", terms.join("·"))
            }
            GroupKind::Additive => {
                let mut out = String::new();
                for (v, j, e) in g.entries() {
                    let mag = e.abs();
                    let term = if mag.is_one() { base(v, j) } else { format!("{mag}·{}", base(v, j)) };
                    match (out.is_empty(), e.is_negative()) {
                        (true, false) => out.push_str(&term),
                        (true, true) => out.push_str(&format!("-{term}")),
                        (false, false) => out.push_str(&format!(" + {term}")),
                        (false, true) => out.push_str(&format!(" - {term}")),
                    }
                }
                format!("{out} = 0")
            }
        }
    }
}

pub fn sigma_dimension_from_dims(dims: &[usize]) -> SigmaDimension {
    let diffs: Vec<i64> = dims
        .iter()
        .enumerate()
        .map(|(d, &v)| v as i64 - if d == 0 { 0 } else { dims[d - 1] as i64 })
        .collect();
    if diffs.len() >= STABILIZATION_WINDOW {
        let tail = &diffs[diffs.len() - STABILIZATION_WINDOW..];
        if tail.iter().all(|&x| x == tail[0]) && tail[0] >= 0 {
            return SigmaDimension { value: tail[0] as usize, stabilized: true };
        }
    }
    let last = dims.last().copied().unwrap_or(0);
    SigmaDimension { value: last / dims.len().max(1), stabilized: false }
}

/// g, h, k for up to three variables, g_1, …, g_n beyond.
pub fn variable_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["g", "h", "k"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("g_{i}")).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sev(e: &[i64]) -> SigmaExponentVector {
        SigmaExponentVector::from_orders(e)
    }
    fn v(c: &[i64]) -> Vec<BigInt> {
        c.iter().map(|&n| BigInt::from(n)).collect()
    }

    #[test]
    fn exponent_vector_trims_and_shifts() {
        let m = sev(&[1, -2, 1, 0, 0]);
        assert_eq!(m.order(), Some(2));
        assert_eq!(m.shift(1).coeffs(), &v(&[0, 1, -2, 1])[..]);
        assert!(sev(&[0, 0]).is_zero());
        assert_eq!(m.to_string(), "(1,-2,1)");
        let two = SigmaExponentVector::from_per_variable(&[vec![1], vec![-2]]);
        assert_eq!(two.to_string(), "((1),(-2))");
        assert_eq!(two.get(1, 0), BigInt::from(-2));
    }

    #[test]
    fn expand_exponential_relation() {
        let g = SigmaLatticeGroup::rank_one(&[&[1, -2, 1]]);
        let l = g.expand_to_order(3);
        assert_eq!(l, Lattice::from_generators(4, &[v(&[1, -2, 1, 0]), v(&[0, 1, -2, 1])]));
    }

    #[test]
    fn expand_torsion_and_trivial() {
        let g = SigmaLatticeGroup::rank_one(&[&[2]]);
        assert_eq!(g.expand_to_order(2), Lattice::from_generators(3, &[v(&[2, 0, 0]), v(&[0, 2, 0]), v(&[0, 0, 2])]));
        let t = SigmaLatticeGroup::rank_one(&[]);
        assert!(t.expand_to_order(4).is_zero());
    }

    #[test]
    fn closure_reports() {
        let g = SigmaLatticeGroup::rank_one(&[&[2]]);
        let rep = g.closure_report(3);
        assert_eq!(rep.dims(), vec![0, 0, 0, 0]);
        assert_eq!(rep.degrees(), [2, 4, 8, 16].iter().map(|&d| Some(BigInt::from(d))).collect::<Vec<_>>());

        let e = SigmaLatticeGroup::rank_one(&[&[1, -2, 1]]);
        assert_eq!(e.closure_report(3).dims(), vec![1, 2, 2, 2]);

        let t = SigmaLatticeGroup::rank_one(&[]);
        let rep = t.closure_report(2);
        assert_eq!(rep.dims(), vec![1, 2, 3]);
        assert!(rep.degrees().iter().all(Option::is_none));
    }

    #[test]
    fn sigma_dimensions() {
        let e = SigmaLatticeGroup::rank_one(&[&[1, -2, 1]]);
        assert_eq!(e.sigma_dimension(5), SigmaDimension { value: 0, stabilized: true });
        let t = SigmaLatticeGroup::multiplicative(3, vec![]).unwrap();
        assert_eq!(t.sigma_dimension(4), SigmaDimension { value: 3, stabilized: true });
        let b = SigmaLatticeGroup::rank_one(&[&[2]]);
        assert_eq!(b.sigma_dimension(4), SigmaDimension { value: 0, stabilized: true });
    }

    #[test]
    fn density() {
        let e = SigmaLatticeGroup::rank_one(&[&[1, -2, 1]]);
        assert!(e.is_zariski_dense(4).holds);
        let b = SigmaLatticeGroup::rank_one(&[&[2]]);
        let ans = b.is_zariski_dense(2);
        assert!(!ans.holds);
        assert_eq!(ans.witness, Some(sev(&[2])));
        let s = SigmaLatticeGroup::rank_one(&[&[0, 1]]);
        assert!(s.is_zariski_dense(3).holds);
        let m = SigmaLatticeGroup::rank_one(&[&[2], &[0, 1]]);
        assert_eq!(m.is_zariski_dense(2).witness, Some(sev(&[2])));
    }

    #[test]
    fn reducedness() {
        let m = SigmaLatticeGroup::rank_one(&[&[2], &[0, 1]]);
        let ans = m.is_sigma_reduced(2);
        assert!(!ans.holds);
        assert_eq!(ans.witness, Some(sev(&[1])));
        let g2 = SigmaLatticeGroup::rank_one(&[&[2], &[1, -1]]);
        assert!(g2.is_sigma_reduced(3).holds);
        assert!(SigmaLatticeGroup::rank_one(&[]).is_sigma_reduced(2).holds);
        for k in 1..6 {
            assert!(SigmaLatticeGroup::rank_one(&[&[k]]).is_sigma_reduced(4).holds);
        }
    }

    #[test]
    fn containment() {
        let g1 = SigmaLatticeGroup::rank_one(&[&[2]]);
        let g2 = SigmaLatticeGroup::rank_one(&[&[2], &[1, -1]]);
        assert!(g1.contains(&g2, 2).unwrap());
        assert!(g1.contains(&g1, 2).unwrap());
        let s = SigmaLatticeGroup::rank_one(&[&[1, -1]]);
        assert!(!s.contains(&g1, 2).unwrap());
        assert!(s.contains(&g1, 0).is_err());
    }

    #[test]
    fn presentations() {
        assert_eq!(SigmaLatticeGroup::rank_one(&[&[1, -2, 1]]).presentation(), "g·σ(g)^-2·σ^2(g) = 1");
        assert_eq!(SigmaLatticeGroup::rank_one(&[&[2], &[0, 1]]).presentation(), "g^2 = 1; σ(g) = 1");
        assert_eq!(SigmaLatticeGroup::rank_one(&[]).presentation(), "(no relations)");
        let add = SigmaLatticeGroup::additive(1, vec![sev(&[1, -1])]).unwrap();
        assert_eq!(add.presentation(), "g - σ(g) = 0");
        let two = SigmaLatticeGroup::multiplicative(2, vec![SigmaExponentVector::from_per_variable(&[vec![1], vec![-2]])]).unwrap();
        assert_eq!(two.presentation(), "g·h^-2 = 1");
    }

    #[test]
    fn canonical_under_generator_changes() {
        let a = SigmaLatticeGroup::rank_one(&[&[2], &[0, 1]]);
        let b = SigmaLatticeGroup::rank_one(&[&[0, 1], &[2, 1], &[0, 3]]);
        assert_eq!(a, b);
        // (1,0,1) and (0,0,1) generate the same module as (1)
        let c = SigmaLatticeGroup::rank_one(&[&[1, 0, 1], &[0, 0, 1]]);
        assert_eq!(c, SigmaLatticeGroup::rank_one(&[&[1]]));
    }

    #[test]
    fn additive_truncations_are_saturated() {
        let g = SigmaLatticeGroup::additive(1, vec![sev(&[2, -2])]).unwrap();
        assert_eq!(g.generators(), &[sev(&[1, -1])]);
        assert_eq!(g.closure_report(1).entries[1].degree, None);
        let full = SigmaLatticeGroup::additive(1, vec![sev(&[3])]).unwrap();
        assert_eq!(full.closure_report(2).degrees(), vec![Some(BigInt::one()); 3]);
    }
}
