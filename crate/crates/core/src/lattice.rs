//! Integer lattices in ℤ^N kept in row Hermite normal form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// A sublattice of ℤ^dim, stored as an HNF basis.
///
/// Rows are in echelon form with positive pivots, pivot columns strictly
/// increasing, and every entry above a pivot reduced into `[0, pivot)`.
/// The HNF is unique, so equality of `Lattice` values is lattice equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    dim: usize,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn zero(dim: usize) -> Self {
        Lattice { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis = (0..dim)
            .map(|i| (0..dim).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
            .collect();
        Lattice { dim, basis }
    }

    /// ℤ-span of the given vectors. Panics on a length mismatch.
    pub fn from_generators<V: AsRef<[BigInt]>>(dim: usize, gens: &[V]) -> Self {
        let rows: Vec<Vec<BigInt>> = gens
            .iter()
            .map(|g| {
                let g = g.as_ref();
                assert_eq!(g.len(), dim, "generator length mismatch");
                g.to_vec()
            })
            .collect();
        Lattice { dim, basis: hnf(rows, dim) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    /// Index in ℤ^dim (= |det|) when the lattice has full rank.
    pub fn index(&self) -> Option<BigInt> {
        (self.rank() == self.dim).then(|| {
            self.basis.iter().enumerate().map(|(i, row)| row[i].clone()).product::<BigInt>()
        })
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        assert_eq!(v.len(), self.dim, "vector length mismatch");
        let mut r = v.to_vec();
        for row in &self.basis {
            let pc = pivot(row).expect("nonzero basis row");
            // everything left of the pivot must already be cleared
            if r[..pc].iter().any(|c| !c.is_zero()) {
                return false;
            }
            let (q, rem) = r[pc].div_rem(&row[pc]);
            if !rem.is_zero() {
                return false;
            }
            if !q.is_zero() {
                for (a, b) in r.iter_mut().zip(row) {
                    *a -= &q * b;
                }
            }
        }
        r.iter().all(Zero::is_zero)
    }

    pub fn contains_lattice(&self, other: &Lattice) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// Sum of two lattices of the same dimension.
    pub fn join(&self, other: &Lattice) -> Lattice {
        assert_eq!(self.dim, other.dim);
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Lattice { dim: self.dim, basis: hnf(rows, self.dim) }
    }

    /// Vectors of the lattice supported on the first `k` coordinates, as a
    /// lattice in ℤ^k.
    pub fn intersect_leading(&self, k: usize) -> Lattice {
        assert!(k <= self.dim);
        // eliminate from the last coordinate backwards
        let rev: Vec<Vec<BigInt>> = self.basis.iter().map(|r| r.iter().rev().cloned().collect()).collect();
        let h = hnf(rev, self.dim);
        let rows: Vec<Vec<BigInt>> = h
            .into_iter()
            .filter(|r| pivot(r).is_some_and(|p| p >= self.dim - k))
            .map(|r| r.into_iter().rev().take(k).collect())
            .collect();
        Lattice { dim: k, basis: hnf(rows, k) }
    }

    /// Vectors of the lattice whose first `k` coordinates vanish, as a
    /// lattice in ℤ^{dim−k} (the leading zeros dropped).
    pub fn intersect_trailing(&self, k: usize) -> Lattice {
        assert!(k <= self.dim);
        let rows: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .filter(|r| pivot(r).is_some_and(|p| p >= k))
            .map(|r| r[k..].to_vec())
            .collect();
        Lattice { dim: self.dim - k, basis: hnf(rows, self.dim - k) }
    }

    /// Embeds into ℤ^new_dim by zero padding at the end.
    pub fn pad(&self, new_dim: usize) -> Lattice {
        assert!(new_dim >= self.dim);
        let rows: Vec<Vec<BigInt>> = self
            .basis
            .iter()
            .map(|r| {
                let mut v = r.clone();
                v.resize(new_dim, BigInt::zero());
                v
            })
            .collect();
        Lattice { dim: new_dim, basis: rows }
    }

    /// (ℚ·L) ∩ ℤ^dim.
    pub fn saturate(&self) -> Lattice {
        if self.is_zero() {
            return self.clone();
        }
        let orth = integer_kernel(&self.basis, self.dim);
        let basis = integer_kernel(&orth, self.dim);
        Lattice { dim: self.dim, basis: hnf(basis, self.dim) }
    }
}

fn pivot(row: &[BigInt]) -> Option<usize> {
    row.iter().position(|c| !c.is_zero())
}

/// Row Hermite normal form of the span of `rows`; zero rows are dropped.
pub fn hnf(rows: Vec<Vec<BigInt>>, ncols: usize) -> Vec<Vec<BigInt>> {
    let mut m: Vec<Vec<BigInt>> = rows.into_iter().filter(|r| r.iter().any(|c| !c.is_zero())).collect();
    let mut r = 0;
    for col in 0..ncols {
        if r == m.len() {
            break;
        }
        loop {
            let best = (r..m.len())
                .filter(|&i| !m[i][col].is_zero())
                .min_by(|&a, &b| m[a][col].abs().cmp(&m[b][col].abs()));
            let Some(b) = best else { break };
            m.swap(r, b);
            let mut clean = true;
            for i in r + 1..m.len() {
                if m[i][col].is_zero() {
                    continue;
                }
                let q = m[i][col].div_floor(&m[r][col]);
                let (head, tail) = m.split_at_mut(i);
                let pr = &head[r];
                for (a, b) in tail[0].iter_mut().zip(pr) {
                    *a -= &q * b;
                }
                if !tail[0][col].is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if m[r][col].is_zero() {
            continue;
        }
        if m[r][col].is_negative() {
            for a in m[r].iter_mut() {
                *a = -&*a;
            }
        }
        let (head, tail) = m.split_at_mut(r);
        let pr = &tail[0];
        for row in head.iter_mut() {
            let q = row[col].div_floor(&pr[col]);
            if !q.is_zero() {
                for (a, b) in row.iter_mut().zip(pr) {
                    *a -= &q * b;
                }
            }
        }
        r += 1;
    }
    m.truncate(r);
    m.retain(|row| row.iter().any(|c| !c.is_zero()));
    m
}

/// A basis of {y ∈ ℤ^ncols : A·y = 0} for the integer matrix with the given rows.
pub fn integer_kernel(a: &[Vec<BigInt>], ncols: usize) -> Vec<Vec<BigInt>> {
    let nrows = a.len();
    let aug: Vec<Vec<BigInt>> = (0..ncols)
        .map(|j| {
            let mut row: Vec<BigInt> = a.iter().map(|r| r[j].clone()).collect();
            row.extend((0..ncols).map(|k| if k == j { BigInt::one() } else { BigInt::zero() }));
            row
        })
        .collect();
    hnf(aug, nrows + ncols)
        .into_iter()
        .filter(|r| r[..nrows].iter().all(Zero::is_zero))
        .map(|r| r[nrows..].to_vec())
        .collect()
}
