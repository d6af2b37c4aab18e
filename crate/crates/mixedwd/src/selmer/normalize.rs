//! The space `V_g^e`, and normal forms for the `f` and `g` actions.

use num_traits::{One, Zero};

use super::cocycle::{act_g, z1g_check, GCocycle};
use super::{PhiNLieDatum, SelmerError};
use crate::exact::matrix::vec_is_zero;
use crate::exact::{qpow_z, Matrix, Subspace, Q};
use crate::mixedfilt::structure::Block;
use crate::mixedfilt::{structure_decompose, StructureDecomposition};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vge {
    pub space: Subspace,
    /// The part fixed by `p phi`.
    pub phi_fixed: Subspace,
}

/// `{x in W_-2 V^-2 : N^r x in W_(-r-2) for all r >= 1}`.
fn vge_direct(d: &PhiNLieDatum) -> Result<Subspace, SelmerError> {
    let v = d.filtered()?;
    let ws = v.rep().weight_spaces().map_err(crate::mixedfilt::MixedError::from)?;
    let mut x = d.w_at(-2).intersect(&ws.part(-2)).expect("same ambient");
    let mut npow = d.n().clone();
    let mut r = 1;
    while !npow.is_zero() && !x.is_zero() {
        x = x.intersect(&d.w_at(-r - 2).preimage(&npow).expect("square")).expect("same ambient");
        npow = &npow * d.n();
        r += 1;
    }
    Ok(x)
}

/// Sum of the structure components `V^(i,j)` with `i + j = -2`.
fn vge_blocks(d: &PhiNLieDatum, sd: &StructureDecomposition) -> Subspace {
    let mut acc = Subspace::zero(d.dim());
    for (&(i, j), s) in &sd.components {
        if i + j as i64 == -2 {
            acc = acc.sum(s).expect("same ambient");
        }
    }
    acc
}

pub fn vge(d: &PhiNLieDatum) -> Result<Vge, SelmerError> {
    let v = d.require_negative_mixed()?;
    let sd = structure_decompose(&v)?;
    let a = vge_direct(d)?;
    if a != vge_blocks(d, &sd) {
        return Err(SelmerError::VgeMismatch);
    }
    let mut pphi = d.phi().scale(&d.p_rat());
    pphi.add_diag(&-Q::one());
    let fixed = Subspace::kernel(&pphi);
    let phi_fixed = a.intersect(&fixed).expect("same ambient");
    Ok(Vge { space: a, phi_fixed })
}

/// The `(phi = 1, N = 0)` part, trivial for negative weights.
pub fn crystalline_phi_fixed(d: &PhiNLieDatum) -> Subspace {
    let mut m = d.phi().clone();
    m.add_diag(&-Q::one());
    Subspace::kernel(&Matrix::vstack(&[&m, d.n()]))
}

/// The unique `w` with `w^-1 u phi(w) = 1`, for crystalline `u`.
pub fn normalize_f(d: &PhiNLieDatum, u: &[Q]) -> Result<Vec<Q>, SelmerError> {
    d.require_negative_mixed()?;
    if !vec_is_zero(&d.n().mul_vec(u)) {
        return Err(SelmerError::NotCrystalline);
    }
    let ker = Subspace::kernel(d.n());
    let kb = ker.basis().clone();
    let phi_k = kb.solve(&(d.phi() * &kb)).expect("ker N is phi-stable");
    let mut a = Matrix::identity(kb.cols());
    a = &a - &phi_k;
    let a_inv = a.inverse().ok_or(SelmerError::PhiMinusOneSingular)?;
    let mut w = d.identity();
    for _ in 0..=d.dim() + 1 {
        let e = d.mul_all(&[&d.inv(&w), u, &d.apply_phi(&w)]);
        if vec_is_zero(&e) {
            return Ok(w);
        }
        let coords = ker.coords(&e).expect("stays crystalline");
        let c = kb.mul_vec(&a_inv.mul_vec(&coords));
        w = d.mul(&w, &c);
    }
    Err(SelmerError::NoConvergence)
}

/// Result of normalizing a cocycle: `(v, u).w = (v0, 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GNormalForm {
    pub v0: Vec<Q>,
    pub w: Vec<Q>,
}

fn block_range(b: &Block) -> std::ops::Range<usize> {
    b.offset..b.offset + b.dim()
}

/// Local coordinates `(a, r)` of a block.
fn at(b: &Block, a: usize, r: usize) -> usize {
    b.offset + a * (b.j + 1) + r
}

/// Restriction of `phi` to the block's `V^(i,j)`.
fn block_phi(d: &PhiNLieDatum, b: &Block) -> Matrix {
    b.basis.solve(&(d.phi() * &b.basis)).expect("components are phi-stable")
}

/// `log Y`: `x ⊗ z^r -> r x ⊗ z^(r-1)` transported through the decomposition.
pub fn log_y(sd: &StructureDecomposition) -> Matrix {
    let n = sd.embedding.rows();
    let mut m = Matrix::zeros(n, n);
    for b in &sd.blocks {
        for a in 0..b.basis.cols() {
            for r in 1..=b.j {
                m[(at(b, a, r - 1), at(b, a, r))] = Q::from(num_bigint::BigInt::from(r));
            }
        }
    }
    &(&sd.embedding * &m) * &sd.inverse
}

fn levels(sd: &StructureDecomposition) -> Vec<i64> {
    let mut ls: Vec<i64> = sd.blocks.iter().map(|b| b.i).collect();
    ls.sort_unstable_by(|a, b| b.cmp(a));
    ls.dedup();
    ls
}

fn prepare(d: &PhiNLieDatum, v: &[Q], u: &[Q]) -> Result<StructureDecomposition, SelmerError> {
    let fv = d.require_negative_mixed()?;
    let c = GCocycle {
        x: d.identity(),
        v: v.to_vec(),
        u: u.to_vec(),
    };
    if !z1g_check(d, &c) {
        return Err(SelmerError::NotCocycle);
    }
    Ok(structure_decompose(&fv)?)
}

fn act(d: &PhiNLieDatum, v: &[Q], u: &[Q], w: &[Q]) -> (Vec<Q>, Vec<Q>) {
    let c = GCocycle {
        x: d.identity(),
        v: v.to_vec(),
        u: u.to_vec(),
    };
    let r = act_g(d, &c, &d.identity(), w).expect("identity is in F0");
    (r.v, r.u)
}

fn finish(d: &PhiNLieDatum, v: Vec<Q>, u: Vec<Q>, w: Vec<Q>) -> Result<GNormalForm, SelmerError> {
    if !vec_is_zero(&u) {
        return Err(SelmerError::NoConvergence);
    }
    let vg = vge(d)?;
    if !vg.phi_fixed.contains(&v) {
        return Err(SelmerError::NoConvergence);
    }
    Ok(GNormalForm { v0: v, w })
}

/// Level by level from the top weight down, with the explicit central step
/// `-log w = sum_(j>r) v_(j,r+1)/(j-r) ⊗ z^r + sum_j (p^-j phi - 1)^-1 log u_(j,j) ⊗ z^j`.
pub fn normalize_g(d: &PhiNLieDatum, v: &[Q], u: &[Q]) -> Result<GNormalForm, SelmerError> {
    let sd = prepare(d, v, u)?;
    let n = d.dim();
    let (mut v, mut u) = (v.to_vec(), u.to_vec());
    let mut total = d.identity();
    for level in levels(&sd) {
        let cv = sd.inverse.mul_vec(&v);
        let cu = sd.inverse.mul_vec(&u);
        let mut neg = vec![Q::zero(); n];
        for b in sd.blocks.iter().filter(|b| b.i == level) {
            let k = b.basis.cols();
            for a in 0..k {
                for r in 0..b.j {
                    neg[at(b, a, r)] = &cv[at(b, a, r + 1)] / Q::from(num_bigint::BigInt::from(b.j - r));
                }
            }
            let mut m = block_phi(d, b).scale(&qpow_z(d.p(), -(b.j as i64)));
            m.add_diag(&-Q::one());
            let inv = m.inverse().ok_or(SelmerError::BlockSingular { i: b.i, j: b.j })?;
            let rhs: Vec<Q> = (0..k).map(|a| cu[at(b, a, b.j)].clone()).collect();
            let y = inv.mul_vec(&rhs);
            for a in 0..k {
                neg[at(b, a, b.j)] = y[a].clone();
            }
        }
        let logw: Vec<Q> = sd.embedding.mul_vec(&neg).iter().map(|c| -c).collect();
        let (v2, u2) = act(d, &v, &u, &logw);
        v = v2;
        u = u2;
        total = d.mul(&total, &logw);
    }
    finish(d, v, u, total)
}

/// Same normal form, each level found by a linear solve for the correction
/// in the level's canonical lift.
pub fn normalize_g_by_solve(d: &PhiNLieDatum, v: &[Q], u: &[Q]) -> Result<GNormalForm, SelmerError> {
    let sd = prepare(d, v, u)?;
    let ly = log_y(&sd);
    let (mut v, mut u) = (v.to_vec(), u.to_vec());
    let mut total = d.identity();
    let mut phi1 = d.phi().clone();
    phi1.add_diag(&-Q::one());
    for level in levels(&sd) {
        let idx: Vec<usize> = sd.blocks.iter().filter(|b| b.i == level).flat_map(block_range).collect();
        let lift = sd.embedding.select_cols(&idx);
        let proj = sd.inverse.select_rows(&idx);
        // pi(log u + (phi-1) c) = 0 and pi log Y (pi v + pi N c) = 0, with c = lift t
        let a1 = &(&proj * &phi1) * &lift;
        let b1: Vec<Q> = proj.mul_vec(&u).iter().map(|c| -c).collect();
        let piv = &lift * &proj;
        let a2 = &(&(&proj * &ly) * &piv) * &(d.n() * &lift);
        let b2: Vec<Q> = (&(&proj * &ly) * &piv).mul_vec(&v).iter().map(|c| -c).collect();
        let a = Matrix::vstack(&[&a1, &a2]);
        let mut rhs = b1;
        rhs.extend(b2);
        let t = idx.len();
        if a.rank() != t {
            return Err(SelmerError::BlockSingular { i: level, j: 0 });
        }
        let sol = a.solve(&Matrix::from_cols(rhs.len(), &[rhs])).ok_or(SelmerError::NotCocycle)?;
        let c = lift.mul_vec(&sol.col(0));
        let (v2, u2) = act(d, &v, &u, &c);
        v = v2;
        u = u2;
        total = d.mul(&total, &c);
    }
    finish(d, v, u, total)
}

/// `(v0, 1)` is a cocycle whenever `v0` is fixed by `p phi`.
pub fn normal_cocycle(d: &PhiNLieDatum, x: &[Q], v0: &[Q]) -> GCocycle {
    GCocycle {
        x: x.to_vec(),
        v: v0.to_vec(),
        u: d.identity(),
    }
}
