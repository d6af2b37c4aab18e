//! Small data used in tests, the guide and the command line.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{PhiNLieDatum, SelmerError};
use crate::exact::matrix::unit_vec;
use crate::exact::{qpow_z, Matrix, Subspace, Q};

fn span(d: usize, idx: &[usize]) -> Subspace {
    Subspace::span(d, &idx.iter().map(|&i| unit_vec(d, i)).collect::<Vec<_>>())
}

fn filtration(d: usize, steps: &[(i64, &[usize])]) -> BTreeMap<i64, Subspace> {
    steps.iter().map(|&(i, idx)| (i, span(d, idx))).collect()
}

/// One dimension, `phi = 1/p`, `N = 0`, pure of weight `-2`, `F0 = 0`.
pub fn abelian_line(p: u64) -> Result<PhiNLieDatum, SelmerError> {
    let p = BigInt::from(p);
    let phi = Matrix::diag(&[qpow_z(&p, -1)]);
    PhiNLieDatum::abelian(p, phi, Matrix::zeros(1, 1), filtration(1, &[(-3, &[]), (-2, &[0])]), Subspace::zero(1))
}

/// `[x, y] = z` with `phi(x) = y`, `phi(y) = -x/p`, `phi(z) = z/p`, `N = 0`;
/// weight `-1` on `x, y` and `-2` on `z`.
pub fn heisenberg(p: u64) -> Result<PhiNLieDatum, SelmerError> {
    let pb = BigInt::from(p);
    let ip = qpow_z(&pb, -1);
    let z = Q::zero();
    let phi = Matrix::from_rows(vec![
        vec![z.clone(), -ip.clone(), z.clone()],
        vec![Q::from(BigInt::from(1)), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), ip],
    ]);
    let mut br = vec![vec![vec![Q::zero(); 3]; 3]; 3];
    br[0][1] = unit_vec(3, 2);
    br[1][0] = unit_vec(3, 2).iter().map(|c| -c).collect();
    let w = filtration(3, &[(-3, &[]), (-2, &[2]), (-1, &[0, 1, 2])]);
    PhiNLieDatum::new(pb, br, phi, Matrix::zeros(3, 3), w, Subspace::zero(3))
}

/// `[x, y] = z` with `phi = diag(1/p, 1/p^2, 1/p^3)` and `N x = y`. The
/// pair `x, y` is a monodromy block of weight `-3`, `z` has weight `-6`.
pub fn heisenberg_monodromy(p: u64) -> Result<PhiNLieDatum, SelmerError> {
    let pb = BigInt::from(p);
    let phi = Matrix::diag(&[qpow_z(&pb, -1), qpow_z(&pb, -2), qpow_z(&pb, -3)]);
    let mut n = Matrix::zeros(3, 3);
    n[(1, 0)] = Q::from(BigInt::from(1));
    let mut br = vec![vec![vec![Q::zero(); 3]; 3]; 3];
    br[0][1] = unit_vec(3, 2);
    br[1][0] = unit_vec(3, 2).iter().map(|c| -c).collect();
    let w = filtration(3, &[(-7, &[]), (-6, &[2]), (-3, &[0, 1, 2])]);
    PhiNLieDatum::new(pb, br, phi, n, w, Subspace::zero(3))
}

/// Strictly upper triangular `k x k` matrices, basis `E_ij` (`i < j`) in
/// row order, `phi(E_ij) = p^(i-j) E_ij`, `N = 0`, `F0 = 0`.
pub fn upper_triangular(k: usize, p: u64) -> Result<PhiNLieDatum, SelmerError> {
    let pb = BigInt::from(p);
    let idx: Vec<(usize, usize)> = (0..k).flat_map(|i| (i + 1..k).map(move |j| (i, j))).collect();
    let d = idx.len();
    let pos = |a: usize, b: usize| idx.iter().position(|&e| e == (a, b));
    let mut br = vec![vec![vec![Q::zero(); d]; d]; d];
    for (s, &(i, j)) in idx.iter().enumerate() {
        for (t, &(a, b)) in idx.iter().enumerate() {
            if j == a {
                br[s][t][pos(i, b).expect("i < b")] += Q::from(BigInt::from(1));
            }
            if b == i {
                br[s][t][pos(a, j).expect("a < j")] -= Q::from(BigInt::from(1));
            }
        }
    }
    let phi = Matrix::diag(&idx.iter().map(|&(i, j)| qpow_z(&pb, i as i64 - j as i64)).collect::<Vec<_>>());
    let mut w = BTreeMap::new();
    for h in 1..=k {
        let members: Vec<usize> = (0..d).filter(|&s| idx[s].1 - idx[s].0 >= h).collect();
        w.insert(-2 * h as i64, span(d, &members));
    }
    PhiNLieDatum::new(pb, br, phi, Matrix::zeros(d, d), w, Subspace::zero(d))
}

/// Abelian pair with `N x = y`, `phi = diag(1/p, 1/p^2)`: one monodromy
/// block, pure of weight `-3`.
pub fn monodromy_pair(p: u64) -> Result<PhiNLieDatum, SelmerError> {
    let pb = BigInt::from(p);
    let phi = Matrix::diag(&[qpow_z(&pb, -1), qpow_z(&pb, -2)]);
    let mut n = Matrix::zeros(2, 2);
    n[(1, 0)] = Q::from(BigInt::from(1));
    PhiNLieDatum::abelian(pb, phi, n, filtration(2, &[(-4, &[]), (-3, &[0, 1])]), Subspace::zero(2))
}

/// Free nilpotent Lie algebra of class 3 on `x, y`: basis
/// `x, y, z = [x, y], a = [x, z], b = [y, z]`, weights `-1, -2, -3`.
/// `phi1` is the action on `x, y` (columns) and must have weight `-1`.
pub fn free_class3(p: u64, phi1: [[Q; 2]; 2], f0: &[Vec<Q>]) -> Result<PhiNLieDatum, SelmerError> {
    let pb = BigInt::from(p);
    let det = &phi1[0][0] * &phi1[1][1] - &phi1[0][1] * &phi1[1][0];
    let mut phi = Matrix::zeros(5, 5);
    for r in 0..2 {
        for c in 0..2 {
            phi[(r, c)] = phi1[r][c].clone();
            phi[(3 + r, 3 + c)] = &det * &phi1[r][c];
        }
    }
    phi[(2, 2)] = det;
    let mut br = vec![vec![vec![Q::zero(); 5]; 5]; 5];
    let mut set = |i: usize, j: usize, k: usize| {
        br[i][j] = unit_vec(5, k);
        br[j][i] = unit_vec(5, k).iter().map(|c| -c).collect();
    };
    set(0, 1, 2);
    set(0, 2, 3);
    set(1, 2, 4);
    let w = filtration(5, &[(-4, &[]), (-3, &[3, 4]), (-2, &[2, 3, 4]), (-1, &[0, 1, 2, 3, 4])]);
    PhiNLieDatum::new(pb, br, phi, Matrix::zeros(5, 5), w, Subspace::span(5, f0))
}
