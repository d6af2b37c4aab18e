//! The canonical splitting `gr V -> V` of the weight filtration.

use std::collections::BTreeMap;

use super::lift::weak_lift_unchecked;
use super::{FilteredWDRep, MixedError};
use crate::exact::rational::binom;
use crate::exact::Matrix;

/// Columns `offset..offset + dim` of `matrix` lift `gr_weight` into `W_weight`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Splitting {
    pub weights: Vec<i64>,
    pub offsets: Vec<usize>,
    pub dims: Vec<usize>,
    pub matrix: Matrix,
}

impl Splitting {
    fn slot(&self, i: i64) -> Option<usize> {
        self.weights.iter().position(|&w| w == i)
    }

    /// The lift of `gr_i`, in the graded piece's canonical coordinates.
    pub fn lift(&self, i: i64) -> Matrix {
        match self.slot(i) {
            None => Matrix::zeros(self.matrix.rows(), 0),
            Some(k) => self.matrix.select_cols(&(self.offsets[k]..self.offsets[k] + self.dims[k]).collect::<Vec<_>>()),
        }
    }

    /// Projection of `V` onto the image of `gr_i` along the other images.
    pub fn projector(&self, i: i64) -> Matrix {
        let n = self.matrix.rows();
        match self.slot(i) {
            None => Matrix::zeros(n, n),
            Some(k) => {
                let inv = self.matrix.inverse().expect("splitting is invertible");
                let rows = inv.select_rows(&(self.offsets[k]..self.offsets[k] + self.dims[k]).collect::<Vec<_>>());
                &self.lift(i) * &rows
            }
        }
    }

    /// Whether the splitting also intertwines `N` with the graded monodromy.
    pub fn is_n_equivariant(&self, v: &FilteredWDRep) -> bool {
        let g = v.graded();
        v.rep().n() * &self.matrix == &self.matrix * g.rep().n()
    }
}

pub fn canonical_splitting(v: &FilteredWDRep) -> Result<Splitting, MixedError> {
    v.require_mixed()?;
    let g = v.graded();
    let id: BTreeMap<i64, Matrix> = v.pieces().iter().map(|p| (p.weight, Matrix::identity(p.dim()))).collect();
    let matrix = weak_lift_unchecked(&g, v, &id)?;
    Ok(Splitting {
        weights: v.weights(),
        offsets: v.pieces().iter().map(|p| p.offset).collect(),
        dims: v.pieces().iter().map(|p| p.dim()).collect(),
        matrix,
    })
}

/// Direct check of the defining conditions, piece by piece: `f` takes
/// `gr_i` into `W_i` lifting the identity, commutes with Frobenius, and
/// `sum_s C(r,s) (-1)^s N^(r-s) f (gr N)^s` lands in `W_(i-r-1)`.
pub fn satisfies_definition(v: &FilteredWDRep, s: &Splitting) -> bool {
    let g = v.graded();
    if v.rep().phi() * &s.matrix != &s.matrix * g.rep().phi() {
        return false;
    }
    let n = v.dim();
    for p in v.pieces() {
        let f = s.lift(p.weight);
        let w = v.w(p.weight);
        if !f.col_vecs().iter().all(|c| w.contains(c)) || !v.gr_coords_matrix(p.weight, &f).is_identity() {
            return false;
        }
        let grn = v.gr_rep(p.weight).n().clone();
        for r in 1..=n {
            let mut acc = Matrix::zeros(n, p.dim());
            for t in 0..=r {
                let mut c = binom(r as u64, t as u64);
                if t % 2 == 1 {
                    c = -c;
                }
                let term = &(&v.rep().n().pow(r - t) * &f) * &grn.pow(t);
                acc = &acc + &term.scale(&c);
            }
            let target = v.w(p.weight - r as i64 - 1);
            if !acc.col_vecs().iter().all(|c| target.contains(c)) {
                return false;
            }
        }
    }
    true
}
