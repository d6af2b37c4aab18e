//! Filtered and mixed Weil-Deligne representations.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::exact::{Matrix, Subspace, Q};
use crate::wdrep::{purity_from, PurityCertificate, WDRep, WdError};

pub mod cg;
mod lift;
pub mod ml2;
pub mod splitting;
pub mod structure;

pub use lift::{is_weak_morphism, weak_lift};
pub use splitting::{canonical_splitting, Splitting};
pub use structure::{structure_decompose, StructureDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MixedError {
    #[error(transparent)]
    Wd(#[from] WdError),
    #[error("W_{0} lives in dimension {1}, representation has dimension {2}")]
    Ambient(i64, usize, usize),
    #[error("filtration is not increasing at W_{0}")]
    NotNested(i64),
    #[error("W_{index} is not stable under {operator}")]
    NotSubrep { index: i64, operator: &'static str },
    #[error("a nonzero representation needs at least one filtration step")]
    EmptyFiltration,
    #[error("not mixed: graded pieces of weight {0:?} are not pure")]
    NotMixed(Vec<i64>),
    #[error("graded map is not a morphism of graded representations at weight {0}")]
    NotGradedMorphism(i64),
    #[error("graded map at weight {0} has shape {1}x{2}, expected {3}x{4}")]
    GradedShape(i64, usize, usize, usize, usize),
    #[error("weak lift has no solution")]
    NoSolution,
    #[error("weak lift is not unique ({0} free parameters)")]
    NotUnique(usize),
    #[error("structure decomposition failed: {0}")]
    Assembly(String),
    #[error("{0}")]
    Invalid(String),
}

/// A nonzero graded piece `gr_i`, realized on a complement of `W_(i-1)` in `W_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Piece {
    pub weight: i64,
    pub offset: usize,
    pub basis: Matrix,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.basis.cols()
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct FilteredWDRep {
    rep: WDRep,
    w: BTreeMap<i64, Subspace>,
    pieces: Vec<Piece>,
    adapted: Matrix,
    adapted_inv: Matrix,
    phi_adapted: Matrix,
    n_adapted: Matrix,
}

/// Outcome of [`FilteredWDRep::check_mixed`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MixednessCertificate {
    pub pieces: Vec<PurityCertificate>,
    pub mixed: bool,
}

impl MixednessCertificate {
    pub fn failing(&self) -> Vec<i64> {
        self.pieces.iter().filter(|c| !c.pure).map(|c| c.weight).collect()
    }
}

impl FilteredWDRep {
    pub fn new(rep: WDRep, w: BTreeMap<i64, Subspace>) -> Result<Self, MixedError> {
        let n = rep.dim();
        for (&i, s) in &w {
            if s.ambient() != n {
                return Err(MixedError::Ambient(i, s.ambient(), n));
            }
        }
        if w.is_empty() && n > 0 {
            return Err(MixedError::EmptyFiltration);
        }
        let keys: Vec<i64> = w.keys().copied().collect();
        for pair in keys.windows(2) {
            if !w[&pair[1]].contains_space(&w[&pair[0]]) {
                return Err(MixedError::NotNested(pair[0]));
            }
        }
        for (&i, s) in &w {
            if !s.is_stable(rep.phi()) {
                return Err(MixedError::NotSubrep { index: i, operator: "phi" });
            }
            if !s.is_stable(rep.n()) {
                return Err(MixedError::NotSubrep { index: i, operator: "N" });
            }
        }
        let mut v = FilteredWDRep {
            rep,
            w,
            pieces: Vec::new(),
            adapted: Matrix::zeros(n, 0),
            adapted_inv: Matrix::zeros(0, n),
            phi_adapted: Matrix::zeros(0, 0),
            n_adapted: Matrix::zeros(0, 0),
        };
        let mut offset = 0;
        if let (Some(&lo), Some(&hi)) = (keys.first(), keys.last()) {
            for i in lo..=hi + 1 {
                let cur = v.w(i);
                let prev = v.w(i - 1);
                if cur.dim() > prev.dim() {
                    let basis = Matrix::from_cols(n, &cur.complement_of(&prev));
                    let d = basis.cols();
                    v.pieces.push(Piece { weight: i, offset, basis });
                    offset += d;
                }
            }
        }
        let cols: Vec<&Matrix> = v.pieces.iter().map(|p| &p.basis).collect();
        v.adapted = if cols.is_empty() { Matrix::zeros(n, 0) } else { Matrix::hstack(&cols) };
        v.adapted_inv = if n == 0 {
            Matrix::zeros(0, 0)
        } else {
            v.adapted.inverse().expect("adapted basis spans")
        };
        v.phi_adapted = &(&v.adapted_inv * v.rep.phi()) * &v.adapted;
        v.n_adapted = &(&v.adapted_inv * v.rep.n()) * &v.adapted;
        Ok(v)
    }

    /// Filtration given by explicit column bases.
    pub fn from_bases(rep: WDRep, w: &BTreeMap<i64, Vec<Vec<Q>>>) -> Result<Self, MixedError> {
        let n = rep.dim();
        let mut map = BTreeMap::new();
        for (&i, cols) in w {
            if let Some(c) = cols.iter().find(|c| c.len() != n) {
                return Err(MixedError::Ambient(i, c.len(), n));
            }
            map.insert(i, Subspace::span(n, cols));
        }
        FilteredWDRep::new(rep, map)
    }

    /// Pure of weight `i`: `W_i = V`, `W_(i-1) = 0`.
    pub fn pure(rep: WDRep, i: i64) -> Self {
        let n = rep.dim();
        let mut w = BTreeMap::new();
        w.insert(i - 1, Subspace::zero(n));
        w.insert(i, Subspace::full(n));
        FilteredWDRep::new(rep, w).expect("trivial filtration is valid")
    }

    pub fn rep(&self) -> &WDRep {
        &self.rep
    }

    pub fn dim(&self) -> usize {
        self.rep.dim()
    }

    pub fn stored(&self) -> &BTreeMap<i64, Subspace> {
        &self.w
    }

    /// `W_i`, extended by 0 below and by everything above the stored range.
    pub fn w(&self, i: i64) -> Subspace {
        let n = self.dim();
        match self.w.keys().next_back() {
            None => Subspace::full(n),
            Some(&hi) if i > hi => Subspace::full(n),
            _ => match self.w.range(..=i).next_back() {
                Some((_, s)) => s.clone(),
                None => Subspace::zero(n),
            },
        }
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn weights(&self) -> Vec<i64> {
        self.pieces.iter().map(|p| p.weight).collect()
    }

    pub fn piece(&self, i: i64) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.weight == i)
    }

    pub fn gr_dim(&self, i: i64) -> usize {
        self.piece(i).map_or(0, Piece::dim)
    }

    /// Columns spanning complements of every `W_(i-1)` in `W_i`, by increasing `i`.
    pub fn adapted_basis(&self) -> &Matrix {
        &self.adapted
    }

    pub fn adapted_inverse(&self) -> &Matrix {
        &self.adapted_inv
    }

    /// Weight of each adapted column.
    pub fn column_weights(&self) -> Vec<i64> {
        self.pieces.iter().flat_map(|p| std::iter::repeat(p.weight).take(p.dim())).collect()
    }

    /// Image of `v` (an element of `W_i`) in `gr_i`, in the piece's coordinates.
    pub fn gr_coords(&self, i: i64, v: &[Q]) -> Vec<Q> {
        match self.piece(i) {
            None => Vec::new(),
            Some(p) => {
                let full = self.adapted_inv.mul_vec(v);
                full[p.offset..p.offset + p.dim()].to_vec()
            }
        }
    }

    /// `gr_i` of a matrix whose columns lie in `W_i`.
    pub fn gr_coords_matrix(&self, i: i64, m: &Matrix) -> Matrix {
        let g = self.gr_dim(i);
        let cols: Vec<Vec<Q>> = m.col_vecs().iter().map(|c| self.gr_coords(i, c)).collect();
        if cols.is_empty() {
            Matrix::zeros(g, 0)
        } else {
            Matrix::from_cols(g, &cols)
        }
    }

    fn block(&self, m: &Matrix, p: &Piece) -> Matrix {
        let idx: Vec<usize> = (p.offset..p.offset + p.dim()).collect();
        m.select_rows(&idx).select_cols(&idx)
    }

    /// The graded piece `gr_i` as a Weil-Deligne representation.
    pub fn gr_rep(&self, i: i64) -> WDRep {
        match self.piece(i) {
            None => WDRep::unchecked(self.rep.q().clone(), Matrix::zeros(0, 0), Matrix::zeros(0, 0)).expect("valid q"),
            Some(p) => WDRep::unchecked(self.rep.q().clone(), self.block(&self.phi_adapted, p), self.block(&self.n_adapted, p))
                .expect("valid q"),
        }
    }

    /// The associated graded, on coordinates ordered by increasing weight.
    pub fn graded(&self) -> FilteredWDRep {
        let reps: Vec<WDRep> = self.pieces.iter().map(|p| self.gr_rep(p.weight)).collect();
        let phis: Vec<&Matrix> = reps.iter().map(|r| r.phi()).collect();
        let ns: Vec<&Matrix> = reps.iter().map(|r| r.n()).collect();
        let n = self.dim();
        let (phi, nn) = if n == 0 {
            (Matrix::zeros(0, 0), Matrix::zeros(0, 0))
        } else {
            (Matrix::block_diag(&phis), Matrix::block_diag(&ns))
        };
        let rep = WDRep::unchecked(self.rep.q().clone(), phi, nn).expect("valid q");
        let mut w = BTreeMap::new();
        for p in &self.pieces {
            let upto = p.offset + p.dim();
            let cols: Vec<Vec<Q>> = (0..upto).map(|k| crate::exact::matrix::unit_vec(n, k)).collect();
            w.insert(p.weight - 1, Subspace::span(n, &(0..p.offset).map(|k| crate::exact::matrix::unit_vec(n, k)).collect::<Vec<_>>()));
            w.insert(p.weight, Subspace::span(n, &cols));
        }
        FilteredWDRep::new(rep, w).expect("graded filtration is valid")
    }

    pub fn check_mixed(&self) -> Result<MixednessCertificate, MixedError> {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let g = self.gr_rep(p.weight);
            let ws = g.weight_spaces()?;
            pieces.push(purity_from(&g, &ws, p.weight));
        }
        let mixed = pieces.iter().all(|c| c.pure);
        Ok(MixednessCertificate { pieces, mixed })
    }

    pub(crate) fn require_mixed(&self) -> Result<(), MixedError> {
        let cert = self.check_mixed()?;
        if cert.mixed {
            Ok(())
        } else {
            Err(MixedError::NotMixed(cert.failing()))
        }
    }

    /// Whether `f: self -> other` maps each `W_i` into `W_i`.
    pub fn is_filtered_map(&self, other: &FilteredWDRep, f: &Matrix) -> bool {
        self.pieces.iter().all(|p| {
            let img = f * &p.basis;
            let target = other.w(p.weight);
            img.col_vecs().iter().all(|c| target.contains(c))
        })
    }

    /// `gr f` for a filtered map `f: self -> other`.
    pub fn gr_map(&self, other: &FilteredWDRep, f: &Matrix) -> BTreeMap<i64, Matrix> {
        let mut out = BTreeMap::new();
        for p in &self.pieces {
            let img = f * &p.basis;
            out.insert(p.weight, other.gr_coords_matrix(p.weight, &img));
        }
        out
    }

    /// `W_a ⊗ W_b` summed over `a + b = k`.
    pub fn tensor(&self, o: &FilteredWDRep) -> Result<FilteredWDRep, MixedError> {
        let rep = self.rep.tensor(&o.rep)?;
        let n = rep.dim();
        let mut w = BTreeMap::new();
        let (w1, w2) = (self.weights(), o.weights());
        if let (Some(&lo1), Some(&hi1), Some(&lo2), Some(&hi2)) = (w1.first(), w1.last(), w2.first(), w2.last()) {
            for k in lo1 + lo2 - 1..=hi1 + hi2 {
                let mut gens = Vec::new();
                for a in lo1..=hi1 {
                    let sa = self.w(a);
                    let sb = o.w(k - a);
                    if sa.is_zero() || sb.is_zero() {
                        continue;
                    }
                    gens.extend(sa.basis().kron(sb.basis()).col_vecs());
                }
                w.insert(k, Subspace::span(n, &gens));
            }
        }
        FilteredWDRep::new(rep, w)
    }

    pub fn direct_sum(&self, o: &FilteredWDRep) -> Result<FilteredWDRep, MixedError> {
        let rep = self.rep.direct_sum(&o.rep)?;
        let n = rep.dim();
        let keys: std::collections::BTreeSet<i64> = self.w.keys().chain(o.w.keys()).copied().collect();
        let mut w = BTreeMap::new();
        for k in keys {
            let a = self.w(k).embed(n, 0);
            let b = o.w(k).embed(n, self.dim());
            w.insert(k, a.sum(&b).expect("same ambient"));
        }
        FilteredWDRep::new(rep, w)
    }

    /// The subrepresentation spanned by the columns of `basis` (which must
    /// be independent and stable), with the induced filtration.
    pub fn sub(&self, basis: &Matrix) -> Result<FilteredWDRep, MixedError> {
        let rep = self
            .rep
            .restrict(basis)
            .ok_or_else(|| MixedError::Invalid("subspace is not stable".into()))?;
        let d = basis.cols();
        let span = Subspace::col_span(basis);
        let mut w = BTreeMap::new();
        for (&i, s) in &self.w {
            let meet = s.intersect(&span).expect("same ambient");
            let coords: Vec<Vec<Q>> = meet
                .basis_vecs()
                .iter()
                .map(|v| basis.solve(&Matrix::from_cols(v.len(), std::slice::from_ref(v))).expect("in span").col(0))
                .collect();
            w.insert(i, Subspace::span(d, &coords));
        }
        FilteredWDRep::new(rep, w)
    }

    /// The quotient by a stable subspace, on the deterministic complement.
    /// Returns the quotient and the projection matrix `V -> V/S`.
    pub fn quotient(&self, s: &Subspace) -> Result<(FilteredWDRep, Matrix), MixedError> {
        let n = self.dim();
        if !s.is_stable(self.rep.phi()) || !s.is_stable(self.rep.n()) {
            return Err(MixedError::Invalid("subspace is not stable".into()));
        }
        let comp = Subspace::full(n).complement_of(s);
        let d = comp.len();
        let mut cols = comp.clone();
        cols.extend(s.basis_vecs());
        let t = Matrix::from_cols(n, &cols);
        let tinv = t.inverse().expect("complement spans");
        let proj = tinv.select_rows(&(0..d).collect::<Vec<_>>());
        let c = Matrix::from_cols(n, &comp);
        let phi = &(&proj * self.rep.phi()) * &c;
        let nn = &(&proj * self.rep.n()) * &c;
        let rep = WDRep::unchecked(self.rep.q().clone(), phi, nn)?;
        let mut w = BTreeMap::new();
        for (&i, sub) in &self.w {
            w.insert(i, sub.image(&proj).expect("shapes agree"));
        }
        Ok((FilteredWDRep::new(rep, w)?, proj))
    }

    pub fn adapted_phi(&self) -> &Matrix {
        &self.phi_adapted
    }

    pub fn adapted_n(&self) -> &Matrix {
        &self.n_adapted
    }
}

/// Whether a filtered map is strict: `f(W_i V1) = f(V1) ∩ W_i V2` for all `i`.
pub fn is_strict(v1: &FilteredWDRep, v2: &FilteredWDRep, f: &Matrix) -> bool {
    let im = Subspace::image_of(f);
    let lo = v1.weights().first().copied().into_iter().chain(v2.weights().first().copied()).min();
    let hi = v1.weights().last().copied().into_iter().chain(v2.weights().last().copied()).max();
    let (Some(lo), Some(hi)) = (lo, hi) else {
        return true;
    };
    (lo - 1..=hi).all(|i| {
        let a = v1.w(i).image(f).expect("shapes agree");
        let b = im.intersect(&v2.w(i)).expect("same ambient");
        a == b
    })
}

/// Kernel of a morphism as a filtered subrepresentation.
pub fn kernel_of(v1: &FilteredWDRep, f: &Matrix) -> Result<FilteredWDRep, MixedError> {
    let k = f.kernel();
    if k.cols() == 0 {
        return v1.sub(&Matrix::zeros(v1.dim(), 0));
    }
    v1.sub(&k)
}

/// Cokernel of a morphism with the quotient filtration.
pub fn cokernel_of(v2: &FilteredWDRep, f: &Matrix) -> Result<FilteredWDRep, MixedError> {
    Ok(v2.quotient(&Subspace::image_of(f))?.0)
}

impl std::fmt::Debug for FilteredWDRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FilteredWDRep")
            .field("rep", &self.rep)
            .field("W", &self.w)
            .finish()
    }
}

/// Whether every entry of `m` is zero outside the rows of weight `<= bound(col)`.
pub(crate) fn respects(m: &Matrix, row_w: &[i64], col_w: &[i64], shift: i64) -> bool {
    for (r, &wr) in row_w.iter().enumerate() {
        for (c, &wc) in col_w.iter().enumerate() {
            if wr > wc - shift && !m[(r, c)].is_zero() {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::exact::{q, qf};
    use num_bigint::BigInt;

    pub(crate) fn two_dim(qq: i64, lambda: Q) -> FilteredWDRep {
        let phi = Matrix::diag(&[q(1), qf(1, qq)]);
        let mut n = Matrix::zeros(2, 2);
        n[(1, 0)] = lambda;
        let rep = WDRep::new(BigInt::from(qq), phi, n).unwrap();
        let e2 = vec![q(0), q(1)];
        let mut w = BTreeMap::new();
        w.insert(-2, vec![e2.clone()]);
        w.insert(-1, vec![e2]);
        w.insert(0, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        FilteredWDRep::from_bases(rep, &w).unwrap()
    }

    #[test]
    fn two_dim_example_is_mixed() {
        let v = two_dim(3, q(1));
        assert_eq!(v.weights(), vec![-2, 0]);
        assert!(v.check_mixed().unwrap().mixed);
    }

    #[test]
    fn bad_filtration_step_is_reported() {
        let v = two_dim(3, q(1));
        let mut w = BTreeMap::new();
        w.insert(-1, vec![vec![q(1), q(0)]]);
        w.insert(0, vec![vec![q(1), q(0)], vec![q(0), q(1)]]);
        let err = FilteredWDRep::from_bases(v.rep().clone(), &w).unwrap_err();
        assert_eq!(err, MixedError::NotSubrep { index: -1, operator: "N" });
    }

    #[test]
    fn std_block_is_mixed() {
        let s = WDRep::make_std(3, BigInt::from(2), 0).unwrap();
        let v = FilteredWDRep::pure(s, -3);
        assert!(v.check_mixed().unwrap().mixed);
        assert!(!FilteredWDRep::pure(v.rep().clone(), -2).check_mixed().unwrap().mixed);
    }

    #[test]
    fn graded_of_graded_is_itself() {
        let v = two_dim(2, qf(-2, 3));
        let g = v.graded();
        assert_eq!(g.graded().rep(), g.rep());
        assert_eq!(g.adapted_basis(), &Matrix::identity(2));
    }
}
