//! Exact decision of Weil weights: `|sigma(alpha)| = q^(i/2)` for every
//! complex embedding of every root.
//!
//! The functional equation `x^d f(c/x) = f(0) f` with `c = q^i` pins down
//! `i`; the remaining question, whether all roots lie on the circle of radius
//! `sqrt(c)`, is answered by a Sturm count on the trace polynomial, so no
//! floating point is involved.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::Poly;
use super::rational::{q, qz, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WeilError {
    #[error("constant polynomial has no roots")]
    Constant,
    #[error("q must be at least 2, got {0}")]
    BadQ(BigInt),
}

/// The weight `i` if every root of `f` is a `q`-Weil number of weight `i`.
pub fn weil_weight(f: &Poly, qq: &BigInt) -> Result<Option<i64>, WeilError> {
    if f.is_constant() {
        return Err(WeilError::Constant);
    }
    if *qq < BigInt::from(2) {
        return Err(WeilError::BadQ(qq.clone()));
    }
    let f = f.monic();
    let d = f.deg() as i64;
    let a0 = f.coeff(0);
    if a0.is_zero() {
        return Ok(None);
    }
    let Some(e) = log_q(&(&a0 * &a0), qq) else {
        return Ok(None);
    };
    if e % d != 0 {
        return Ok(None);
    }
    let i = e / d;
    let c = super::rational::qpow(&qz(qq), i);
    if f.reciprocal_at(&c) != f.scale(&a0) {
        return Ok(None);
    }
    Ok(on_circle(&f.squarefree_part(), &c).then_some(i))
}

/// `e` with `x = q^e`, if any.
fn log_q(x: &Q, qq: &BigInt) -> Option<i64> {
    let (mut n, sign) = if x >= &Q::one() {
        if !x.denom().is_one() {
            return None;
        }
        (x.numer().clone(), 1)
    } else {
        if !x.numer().is_one() {
            return None;
        }
        (x.denom().clone(), -1)
    };
    let mut e = 0i64;
    while !n.is_one() {
        let (d, r) = n.div_rem(qq);
        if !r.is_zero() {
            return None;
        }
        n = d;
        e += 1;
    }
    Some(sign * e)
}

/// Whether every root of the square-free `g` has `|alpha|^2 = c`, given
/// that `alpha -> c/alpha` permutes the roots.
fn on_circle(g: &Poly, c: &Q) -> bool {
    let mut h = g.clone();
    // Real roots of modulus sqrt(c) are exactly +-sqrt(c).
    match rational_sqrt(c) {
        Some(s) => {
            for r in [s.clone(), -s] {
                if let Some(quo) = h.div_exact(&Poly::linear_root(r)) {
                    h = quo;
                }
            }
        }
        None => {
            let x2c = Poly::new(vec![-c.clone(), Q::zero(), Q::one()]);
            if let Some(quo) = h.div_exact(&x2c) {
                h = quo;
            }
        }
    }
    if h.is_constant() {
        return true;
    }
    if h.deg() % 2 == 1 {
        return false;
    }
    let Some(p) = trace_poly(&h, c) else {
        return false;
    };
    // Roots y of p are alpha + c/alpha; the condition is y real, y^2 < 4c.
    let pm = p.negate_var();
    let prod = &p * &pm;
    let zq = Poly::new(prod.coeffs().iter().step_by(2).cloned().collect());
    let zq = zq.squarefree_part();
    let four_c = c * q(4);
    let mut inside = sturm_count(&zq, &Q::zero(), &four_c);
    if zq.eval(&Q::zero()).is_zero() {
        inside += 1;
    }
    inside == zq.deg()
}

/// `p` of degree `m` with `h = x^m p(x + c/x)`, if `h` has that shape.
fn trace_poly(h: &Poly, c: &Q) -> Option<Poly> {
    let m = h.deg() / 2;
    let mut rest = h.clone();
    let mut b = vec![Q::zero(); m + 1];
    let x2c = Poly::new(vec![c.clone(), Q::zero(), Q::one()]);
    for k in (0..=m).rev() {
        let coef = rest.coeff(m + k);
        if !coef.is_zero() {
            let term = &Poly::monomial(coef.clone(), m - k) * &x2c.pow(k);
            rest = &rest - &term;
        }
        b[k] = coef;
    }
    rest.is_zero().then(|| Poly::new(b))
}

fn rational_sqrt(c: &Q) -> Option<Q> {
    if c.is_negative() {
        return None;
    }
    let n = c.numer().sqrt();
    let d = c.denom().sqrt();
    (&n * &n == *c.numer() && &d * &d == *c.denom()).then(|| Q::new(n, d))
}

fn sign_changes(seq: &[Poly], x: &Q) -> usize {
    let mut last = 0i8;
    let mut count = 0;
    for p in seq {
        let v = p.eval(x);
        let s = if v.is_positive() {
            1
        } else if v.is_negative() {
            -1
        } else {
            0
        };
        if s != 0 {
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
    }
    count
}

/// Number of distinct real roots of the square-free `p` in `(a, b]`.
pub fn sturm_count(p: &Poly, a: &Q, b: &Q) -> usize {
    if p.is_constant() {
        return 0;
    }
    let mut seq = vec![p.clone(), p.derivative()];
    loop {
        let n = seq.len();
        let r = seq[n - 2].rem(&seq[n - 1]);
        if r.is_zero() {
            break;
        }
        seq.push(-&r);
    }
    sign_changes(&seq, a) - sign_changes(&seq, b)
}
