//! The metalinear group acting on mixed representations through the
//! structure decomposition.

use num_traits::{One, Zero};

use super::{structure_decompose, FilteredWDRep, MixedError};
use crate::exact::{q, Matrix, Poly, Q};

/// An invertible 2x2 matrix `[[a, b], [c, d]]` with a chosen square root of
/// its determinant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ML2Element {
    pub a: Q,
    pub b: Q,
    pub c: Q,
    pub d: Q,
    pub sqrt_det: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ML2Error {
    #[error("determinant is zero")]
    Singular,
    #[error("sqrt_det^2 = {0} but the determinant is {1}")]
    BadSqrt(String, String),
}

impl ML2Element {
    pub fn new(a: Q, b: Q, c: Q, d: Q, sqrt_det: Q) -> Result<Self, ML2Error> {
        let det = &a * &d - &b * &c;
        if det.is_zero() {
            return Err(ML2Error::Singular);
        }
        let sq = &sqrt_det * &sqrt_det;
        if sq != det {
            return Err(ML2Error::BadSqrt(crate::exact::fmt_q(&sq), crate::exact::fmt_q(&det)));
        }
        Ok(ML2Element { a, b, c, d, sqrt_det })
    }

    pub fn det(&self) -> Q {
        &self.a * &self.d - &self.b * &self.c
    }

    /// `[[1, 0], [1, 1]]`.
    pub fn x() -> Self {
        ML2Element::new(q(1), q(0), q(1), q(1), q(1)).unwrap()
    }

    /// `[[1, 1], [0, 1]]`.
    pub fn y() -> Self {
        ML2Element::new(q(1), q(1), q(0), q(1), q(1)).unwrap()
    }

    pub fn torus(lambda: Q) -> Result<Self, ML2Error> {
        let inv = if lambda.is_zero() { return Err(ML2Error::Singular) } else { lambda.recip() };
        ML2Element::new(lambda, q(0), q(0), inv, q(1))
    }

    pub fn mul(&self, o: &ML2Element) -> ML2Element {
        ML2Element {
            a: &self.a * &o.a + &self.b * &o.c,
            b: &self.a * &o.b + &self.b * &o.d,
            c: &self.c * &o.a + &self.d * &o.c,
            d: &self.c * &o.b + &self.d * &o.d,
            sqrt_det: &self.sqrt_det * &o.sqrt_det,
        }
    }
}

fn qpow_i(x: &Q, e: i64) -> Q {
    if e >= 0 {
        num_traits::pow(x.clone(), e as usize)
    } else {
        num_traits::pow(x.recip(), (-e) as usize)
    }
}

/// Action on `std_j(r)`: `z^s -> det^(-j-r) (a + c z)^(j-s) (b + d z)^s`.
pub fn std_action(m: &ML2Element, j: usize, r: i64) -> Matrix {
    let u = Poly::new(vec![m.a.clone(), m.c.clone()]);
    let v = Poly::new(vec![m.b.clone(), m.d.clone()]);
    let scale = qpow_i(&m.det(), -(j as i64) - r);
    let mut out = Matrix::zeros(j + 1, j + 1);
    for s in 0..=j {
        let p = &u.pow(j - s) * &v.pow(s);
        for t in 0..=j {
            out[(t, s)] = &p.coeff(t) * &scale;
        }
    }
    out
}

/// Action on a mixed representation: `sqrt_det^(i+j) (1 ⊗ std action)` on
/// each `V^(i,j) ⊗ std_j`, transported through the structure decomposition.
pub fn ml2_act(m: &ML2Element, v: &FilteredWDRep) -> Result<Matrix, MixedError> {
    let sd = structure_decompose(v)?;
    if v.dim() == 0 {
        return Ok(Matrix::zeros(0, 0));
    }
    let mut parts = Vec::new();
    for b in &sd.blocks {
        let s = std_action(m, b.j, 0);
        let k = qpow_i(&m.sqrt_det, b.i + b.j as i64);
        parts.push(Matrix::identity(b.basis.cols()).kron(&s).scale(&k));
    }
    let refs: Vec<&Matrix> = parts.iter().collect();
    let blk = Matrix::block_diag(&refs);
    Ok(&(&sd.embedding * &blk) * &sd.inverse)
}

/// `log(1 + X)` for nilpotent `X`; `None` when `m - 1` is not nilpotent.
pub fn log_unipotent(m: &Matrix) -> Option<Matrix> {
    let n = m.rows();
    let mut x = m.clone();
    x.add_diag(&-Q::one());
    if !x.is_nilpotent() {
        return None;
    }
    let mut acc = Matrix::zeros(n, n);
    let mut p = x.clone();
    let mut k = 1i64;
    while !p.is_zero() {
        let c = if k % 2 == 1 { q(1) } else { q(-1) } / q(k);
        acc = &acc + &p.scale(&c);
        p = &p * &x;
        k += 1;
    }
    Some(acc)
}
