//! Dimensions of the local Selmer schemes of a datum.

use num_traits::One;

use super::normalize::vge;
use super::{PhiNLieDatum, SelmerError};
use crate::exact::{Matrix, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SelmerDims {
    pub dim_e: usize,
    pub dim_f: usize,
    pub dim_g: usize,
    /// `sum_i (dim gr_i - dim gr_i F0)`, before the degree factor.
    pub hodge: usize,
    /// `dim vge^(p phi = 1)`.
    pub vge_fixed: usize,
    /// `sum_i dim coker((p phi - 1, N) on gr_i)`; agrees with `vge_fixed`
    /// on Frobenius-semisimple data.
    pub graded_bk: usize,
}

pub fn selmer_dims(d: &PhiNLieDatum, deg: usize) -> Result<SelmerDims, SelmerError> {
    let v = d.require_negative_mixed()?;
    let f0 = d.f0();
    let mut hodge = 0;
    let mut graded_bk = 0;
    for i in v.weights() {
        let f_here = f0.intersect(&v.w(i)).expect("same ambient").dim();
        let f_below = f0.intersect(&v.w(i - 1)).expect("same ambient").dim();
        let g = v.gr_dim(i);
        hodge += g - (f_here - f_below);
        let gr = v.gr_rep(i);
        let mut pphi = gr.phi().scale(&d.p_rat());
        pphi.add_diag(&-Q::one());
        graded_bk += g - Matrix::hstack(&[&pphi, gr.n()]).rank();
    }
    let vge_fixed = vge(d)?.phi_fixed.dim();
    let dim_f = deg * hodge;
    Ok(SelmerDims {
        dim_e: dim_f,
        dim_f,
        dim_g: dim_f + vge_fixed,
        hodge,
        vge_fixed,
        graded_bk,
    })
}
