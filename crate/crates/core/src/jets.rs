//! σ-jet prolongation: from δ(y) = A·y build δ(y) = A_d·y with
//! A_d = diag(A, ℏ₁σ(A), …, ℏ_dσ^d(A)).

use crate::error::{Error, Result};
use crate::ratfield::{AlphaField, CoeffField, OperatorSpec, Poly, RatFunc};

/// Square matrix of rational functions, row-major.
pub type Matrix<F> = Vec<Vec<RatFunc<F>>>;

/// δ(y) = A·y over k(x).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem<F> {
    matrix: Matrix<F>,
    op: OperatorSpec,
}

impl<F: CoeffField> LinearSystem<F> {
    pub fn new(matrix: Matrix<F>, op: OperatorSpec) -> Result<Self> {
        let n = matrix.len();
        if n == 0 {
            return Err(Error::InvalidArgument("system matrix must be nonempty".into()));
        }
        if matrix.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidArgument(format!("system matrix must be square ({n} rows)")));
        }
        Ok(LinearSystem { matrix, op })
    }

    pub fn size(&self) -> usize {
        self.matrix.len()
    }

    pub fn matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn op(&self) -> &OperatorSpec {
        &self.op
    }
}

/// The order-d jet system. Only the diagonal blocks are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JetSystem<F> {
    order: usize,
    base: LinearSystem<F>,
    blocks: Vec<Matrix<F>>,
}

impl<F: CoeffField> JetSystem<F> {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn base(&self) -> &LinearSystem<F> {
        &self.base
    }

    /// Block i is ℏ_i·σ^i(A).
    pub fn block(&self, i: usize) -> &Matrix<F> {
        &self.blocks[i]
    }

    pub fn blocks(&self) -> &[Matrix<F>] {
        &self.blocks
    }

    /// Side length n(d+1) of A_d.
    pub fn dim(&self) -> usize {
        self.base.size() * (self.order + 1)
    }

    /// Dense A_d with explicit zero off-diagonal blocks.
    pub fn dense(&self) -> Matrix<F> {
        let n = self.base.size();
        let dim = self.dim();
        let mut out = vec![vec![RatFunc::zero(); dim]; dim];
        for (b, block) in self.blocks.iter().enumerate() {
            for (i, row) in block.iter().enumerate() {
                for (j, entry) in row.iter().enumerate() {
                    out[b * n + i][b * n + j] = entry.clone();
                }
            }
        }
        out
    }
}

/// Builds A_d. Fails only if a Mahler substitution exceeds the degree cap.
pub fn build_jet_matrix<F: CoeffField>(sys: &LinearSystem<F>, d: usize) -> Result<JetSystem<F>> {
    let op = sys.op();
    let blocks = (0..=d as u64)
        .map(|i| {
            let hbar = op.hbar_power::<F>(i);
            sys.matrix()
                .iter()
                .map(|row| row.iter().map(|a| op.sigma_apply(a, i).map(|s| s.mul(&hbar))).collect())
                .collect::<Result<Matrix<F>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(JetSystem { order: d, base: sys.clone(), blocks })
}

/// Bessel's equation x²y″ + xy′ + (x² − α²)y = 0 as the first-order system
/// over ℚ(α)(x) with companion matrix [[0, 1], [α²/x² − 1, −1/x]].
pub fn bessel_system() -> LinearSystem<AlphaField> {
    let alpha = AlphaField::alpha().expect("parameter field");
    let a2 = alpha.mul(&alpha);
    let x2 = Poly::monomial(AlphaField::one(), 2);
    // α²/x² − 1 = (α² − x²)/x²
    let entry = RatFunc::new(Poly::constant(a2).sub(&x2), x2);
    let neg_inv_x = RatFunc::new(Poly::constant(AlphaField::one().neg()), Poly::x());
    let matrix = vec![vec![RatFunc::zero(), RatFunc::one()], vec![entry, neg_inv_x]];
    LinearSystem::new(matrix, OperatorSpec::param_shift()).expect("2x2 matrix")
}

/// Order-d jets of the Bessel system; block i carries α ↦ α + i.
pub fn jet_demo_bessel(d: usize) -> JetSystem<AlphaField> {
    build_jet_matrix(&bessel_system(), d).expect("parameter shift never changes x-degrees")
}
