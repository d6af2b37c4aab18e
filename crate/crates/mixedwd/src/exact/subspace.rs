//! Subspaces of `Q^n` in canonical reduced column-echelon form.

use num_traits::Zero;

use super::matrix::{rref_rows, Matrix};
use super::rational::Q;

/// A subspace of `Q^ambient`. The stored basis is unique for the span, so
/// equality of values is equality of subspaces.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    /// Pivot coordinate of each basis column.
    pivots: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("dimension mismatch: {0} vs {1}")]
pub struct DimMismatch(pub usize, pub usize);

impl Subspace {
    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::zeros(ambient, 0),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Span of the given vectors.
    pub fn span(ambient: usize, vecs: &[Vec<Q>]) -> Self {
        let mut rows: Vec<Vec<Q>> = vecs.to_vec();
        assert!(rows.iter().all(|v| v.len() == ambient), "vector length differs from ambient");
        let pivots = rref_rows(&mut rows, ambient);
        Subspace {
            ambient,
            basis: Matrix::from_cols(ambient, &rows),
            pivots,
        }
    }

    /// Span of the columns of `m`.
    pub fn col_span(m: &Matrix) -> Self {
        Subspace::span(m.rows(), &m.col_vecs())
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_zero(&self) -> bool {
        self.pivots.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Basis columns, `ambient x dim`.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_vecs(&self) -> Vec<Vec<Q>> {
        self.basis.col_vecs()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    fn check(&self, o: &Subspace) -> Result<(), DimMismatch> {
        if self.ambient == o.ambient {
            Ok(())
        } else {
            Err(DimMismatch(self.ambient, o.ambient))
        }
    }

    pub fn sum(&self, o: &Subspace) -> Result<Subspace, DimMismatch> {
        self.check(o)?;
        let mut v = self.basis_vecs();
        v.extend(o.basis_vecs());
        Ok(Subspace::span(self.ambient, &v))
    }

    pub fn intersect(&self, o: &Subspace) -> Result<Subspace, DimMismatch> {
        self.check(o)?;
        if self.is_zero() || o.is_zero() {
            return Ok(Subspace::zero(self.ambient));
        }
        if self.is_full() {
            return Ok(o.clone());
        }
        if o.is_full() {
            return Ok(self.clone());
        }
        // x in self ∩ o  iff  x = A a = B b; kernel of [A | -B].
        let stacked = Matrix::hstack(&[&self.basis, &-&o.basis]);
        let k = stacked.kernel();
        let a = k.select_rows(&(0..self.dim()).collect::<Vec<_>>());
        Ok(Subspace::col_span(&(&self.basis * &a)))
    }

    /// Coordinates of `v` in the stored basis, `None` if `v` is not in the span.
    pub fn coords(&self, v: &[Q]) -> Option<Vec<Q>> {
        assert_eq!(v.len(), self.ambient);
        let c: Vec<Q> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let back = self.basis.mul_vec(&c);
        (back == v).then_some(c)
    }

    pub fn contains(&self, v: &[Q]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, o: &Subspace) -> bool {
        self.ambient == o.ambient && o.basis_vecs().iter().all(|v| self.contains(v))
    }

    /// Rows spanning the annihilator (`y` with `y . s = 0` for all `s` here).
    pub fn annihilator(&self) -> Matrix {
        self.basis.transpose().kernel().transpose()
    }

    /// Image under `m` (`m` maps this ambient space to another).
    pub fn image(&self, m: &Matrix) -> Result<Subspace, DimMismatch> {
        if m.cols() != self.ambient {
            return Err(DimMismatch(m.cols(), self.ambient));
        }
        Ok(Subspace::col_span(&(m * &self.basis)))
    }

    /// `{x : m x in self}`.
    pub fn preimage(&self, m: &Matrix) -> Result<Subspace, DimMismatch> {
        if m.rows() != self.ambient {
            return Err(DimMismatch(m.rows(), self.ambient));
        }
        if self.is_full() {
            return Ok(Subspace::full(m.cols()));
        }
        let ann = self.annihilator();
        Ok(Subspace::kernel(&(&ann * m)))
    }

    pub fn kernel(m: &Matrix) -> Subspace {
        Subspace::col_span(&m.kernel())
    }

    pub fn image_of(m: &Matrix) -> Subspace {
        Subspace::col_span(m)
    }

    /// Whether `m` maps this subspace into itself.
    pub fn is_stable(&self, m: &Matrix) -> bool {
        let img = m * &self.basis;
        img.col_vecs().iter().all(|v| self.contains(v))
    }

    /// Deterministic complement of `inner` inside `self`: the stored basis
    /// vectors of `self` that increase the rank, taken in order.
    pub fn complement_of(&self, inner: &Subspace) -> Vec<Vec<Q>> {
        assert!(self.contains_space(inner), "complement of a non-subspace");
        let mut acc: Vec<Vec<Q>> = inner.basis_vecs();
        let mut rank = inner.dim();
        let mut out = Vec::new();
        for v in self.basis_vecs() {
            if rank == self.dim() {
                break;
            }
            acc.push(v.clone());
            let mut rows = acc.clone();
            let r = rref_rows(&mut rows, self.ambient).len();
            if r > rank {
                rank = r;
                out.push(v);
            } else {
                acc.pop();
            }
        }
        out
    }

    /// Transport to a larger ambient space by zero-padding at `offset`.
    pub fn embed(&self, ambient: usize, offset: usize) -> Subspace {
        let vecs: Vec<Vec<Q>> = self
            .basis_vecs()
            .into_iter()
            .map(|v| {
                let mut w = vec![Q::zero(); ambient];
                for (i, x) in v.into_iter().enumerate() {
                    w[offset + i] = x;
                }
                w
            })
            .collect();
        Subspace::span(ambient, &vecs)
    }
}

impl std::fmt::Debug for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Subspace(dim {} in {}) {:?}", self.dim(), self.ambient, self.basis)
    }
}
