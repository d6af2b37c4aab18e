//! Exact arithmetic over the rationals.

pub mod factor;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod subspace;
pub mod weil;

pub use factor::{factor_z, Factorization, FactorError};
pub use matrix::Matrix;
pub use poly::Poly;
pub use rational::{fmt_q, parse_q, q, qf, qpow, Q};
pub use subspace::Subspace;
pub use weil::{weil_weight, WeilError};

/// `q^e` for an integer base.
pub fn qpow_z(base: &num_bigint::BigInt, e: i64) -> Q {
    qpow(&Q::from_integer(base.clone()), e)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("matrix is {0}x{1}, not square")]
pub struct NotSquare(pub usize, pub usize);

/// Monic characteristic polynomial `det(x - m)` (Faddeev-LeVerrier).
pub fn char_poly(m: &Matrix) -> Result<Poly, NotSquare> {
    if !m.is_square() {
        return Err(NotSquare(m.rows(), m.cols()));
    }
    let n = m.rows();
    let mut c = vec![Q::from_integer(0.into()); n + 1];
    c[n] = q(1);
    let mut mk = Matrix::zeros(n, n);
    for k in 1..=n {
        mk = m * &mk;
        mk.add_diag(&c[n - k + 1]);
        let am = m * &mk;
        c[n - k] = -am.trace() / q(k as i64);
    }
    Ok(Poly::new(c))
}
