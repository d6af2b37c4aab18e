//! Decomposition `V ≅ ⊕ V^(i,j) ⊗ std_j` into standard blocks.

use std::collections::BTreeMap;

use super::lift::weak_lift_unchecked;
use super::{FilteredWDRep, MixedError};
use crate::exact::rational::factorial;
use crate::exact::{Matrix, Subspace};
use crate::wdrep::WDRep;

/// One summand `V^(i,j) ⊗ std_j`, occupying columns `offset..offset + dim`
/// of the embedding with local index `a (j+1) + r` for `x_a ⊗ z^r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    pub i: i64,
    pub j: usize,
    /// Basis of `V^(i,j)` as columns in `V`.
    pub basis: Matrix,
    pub offset: usize,
    /// The map to `gr_i V` that the embedding lifts.
    pub gr_map: Matrix,
}

impl Block {
    pub fn dim(&self) -> usize {
        self.basis.cols() * (self.j + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructureDecomposition {
    pub components: BTreeMap<(i64, usize), Subspace>,
    pub blocks: Vec<Block>,
    pub embedding: Matrix,
    pub inverse: Matrix,
}

impl StructureDecomposition {
    /// Embedding columns of one block.
    pub fn block_columns(&self, b: &Block) -> Matrix {
        self.embedding.select_cols(&(b.offset..b.offset + b.dim()).collect::<Vec<_>>())
    }
}

/// `x ∈ W_i V^(i+j)` with `N^(j+r) x ∈ W_(i-r-1)` for all `r > 0`.
pub fn components(v: &FilteredWDRep) -> Result<BTreeMap<(i64, usize), Subspace>, MixedError> {
    let ws = v.rep().weight_spaces()?;
    if !ws.unclassified.is_zero() {
        return Err(MixedError::Invalid("Frobenius has eigenvalues that are not Weil numbers".into()));
    }
    let top = ws.parts.keys().next_back().copied();
    let mut out = BTreeMap::new();
    let Some(top) = top else {
        return Ok(out);
    };
    for i in v.weights() {
        if top < i {
            continue;
        }
        for j in 0..=(top - i) as usize {
            let vw = ws.part(i + j as i64);
            if vw.is_zero() {
                continue;
            }
            let mut x = v.w(i).intersect(&vw).expect("same ambient");
            let mut npow = v.rep().n().pow(j);
            for r in 1.. {
                npow = &npow * v.rep().n();
                if npow.is_zero() || x.is_zero() {
                    break;
                }
                let pre = v.w(i - r - 1).preimage(&npow).expect("square");
                x = x.intersect(&pre).expect("same ambient");
            }
            if !x.is_zero() {
                out.insert((i, j), x);
            }
        }
    }
    Ok(out)
}

/// `V^(i,j) ⊗ std_j` as a pure representation of weight `i`.
fn block_source(v: &FilteredWDRep, basis: &Matrix, i: i64, j: usize) -> Result<FilteredWDRep, MixedError> {
    let phi0 = basis.solve(&(v.rep().phi() * basis)).expect("components are Frobenius stable");
    let std = WDRep::make_std(j, v.rep().q().clone(), 0)?;
    let d = basis.cols();
    let phi = phi0.kron(std.phi());
    let n = Matrix::identity(d).kron(std.n());
    let rep = WDRep::new(v.rep().q().clone(), phi, n)?;
    Ok(FilteredWDRep::pure(rep, i))
}

/// `x ⊗ z^r -> ((j-r)!/j!) (gr N)^r x̄`.
fn block_gr_map(v: &FilteredWDRep, basis: &Matrix, i: i64, j: usize) -> Matrix {
    let g = v.gr_dim(i);
    let grn = v.gr_rep(i).n().clone();
    let xbar = v.gr_coords_matrix(i, basis);
    let d = basis.cols();
    let mut out = Matrix::zeros(g, d * (j + 1));
    let mut cur = xbar;
    for r in 0..=j {
        let c = factorial((j - r) as u64) / factorial(j as u64);
        for a in 0..d {
            for row in 0..g {
                out[(row, a * (j + 1) + r)] = &cur[(row, a)] * &c;
            }
        }
        cur = &grn * &cur;
    }
    out
}

pub fn structure_decompose(v: &FilteredWDRep) -> Result<StructureDecomposition, MixedError> {
    v.require_mixed()?;
    let comps = components(v)?;
    let n = v.dim();
    let mut blocks = Vec::new();
    let mut cols = Vec::new();
    let mut phis = Vec::new();
    let mut offset = 0;
    for (&(i, j), space) in &comps {
        let basis = space.basis().clone();
        let src = block_source(v, &basis, i, j)?;
        let gr_map = block_gr_map(v, &basis, i, j);
        let mut gr = BTreeMap::new();
        gr.insert(i, gr_map.clone());
        let e = weak_lift_unchecked(&src, v, &gr)?;
        cols.extend(e.col_vecs());
        phis.push(src.rep().phi().clone());
        let b = Block {
            i,
            j,
            basis,
            offset,
            gr_map,
        };
        offset += b.dim();
        blocks.push(b);
    }
    if offset != n {
        return Err(MixedError::Assembly(format!("blocks have total dimension {offset}, expected {n}")));
    }
    let embedding = if n == 0 { Matrix::zeros(0, 0) } else { Matrix::from_cols(n, &cols) };
    let inverse = if n == 0 {
        Matrix::zeros(0, 0)
    } else {
        embedding
            .inverse()
            .ok_or_else(|| MixedError::Assembly("assembled map is not invertible".into()))?
    };
    if n > 0 {
        let refs: Vec<&Matrix> = phis.iter().collect();
        let phi_src = Matrix::block_diag(&refs);
        if v.rep().phi() * &embedding != &embedding * &phi_src {
            return Err(MixedError::Assembly("assembled map is not Frobenius equivariant".into()));
        }
    }
    Ok(StructureDecomposition {
        components: comps,
        blocks,
        embedding,
        inverse,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;
    use crate::mixedfilt::canonical_splitting;
    use crate::mixedfilt::tests::two_dim;
    use num_bigint::BigInt;

    #[test]
    fn two_dim_example() {
        let v = two_dim(3, q(5));
        let d = structure_decompose(&v).unwrap();
        let dims: Vec<((i64, usize), usize)> = d.components.iter().map(|(k, s)| (*k, s.dim())).collect();
        assert_eq!(dims, vec![((-2, 0), 1), ((0, 0), 1)]);
        assert_eq!(d.embedding, Matrix::from_ints(&[&[0, 1], &[1, 0]]));
        let s = canonical_splitting(&v).unwrap();
        for b in &d.blocks {
            assert_eq!(d.block_columns(b), &s.lift(b.i) * &b.gr_map);
        }
    }

    #[test]
    fn std_tensor_std() {
        let s = WDRep::make_std(1, BigInt::from(2), 0).unwrap();
        let t = FilteredWDRep::pure(s.tensor(&s).unwrap(), -2);
        let d = structure_decompose(&t).unwrap();
        let keys: Vec<(i64, usize)> = d.components.keys().copied().collect();
        assert_eq!(keys, vec![(-2, 0), (-2, 2)]);
        let v20 = &d.components[&(-2, 0)];
        assert_eq!(v20, &Subspace::span(4, &[vec![q(0), q(1), q(-1), q(0)]]));
        assert_eq!(d.components[&(-2, 2)], Subspace::span(4, &[vec![q(1), q(0), q(0), q(0)]]));
    }
}
