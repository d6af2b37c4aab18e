//! Cocycles, the actions on them, and the low-degree cofaces.

use num_traits::Zero;

use super::{PhiNLieDatum, SelmerError};
use crate::exact::matrix::{vec_add, vec_scale};
use crate::exact::Q;

/// A point `(x, v, u)`: `x` in the de Rham group, `v` a Lie vector, `u` in
/// the semistable group. Group elements are in exponential coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GCocycle {
    pub x: Vec<Q>,
    pub v: Vec<Q>,
    pub u: Vec<Q>,
}

/// `v + xi_N(u) = p Ad_u(phi(v))`.
pub fn z1g_check(d: &PhiNLieDatum, c: &GCocycle) -> bool {
    let lhs = vec_add(&c.v, &d.xi_n(&c.u));
    let rhs = vec_scale(&d.ad_group(&c.u, &d.apply_phi(&c.v)), &d.p_rat());
    lhs == rhs
}

fn require_f0(d: &PhiNLieDatum, z: &[Q]) -> Result<(), SelmerError> {
    if d.f0().contains(z) {
        Ok(())
    } else {
        Err(SelmerError::NotInF0)
    }
}

fn require_crystalline(d: &PhiNLieDatum, u: &[Q]) -> Result<(), SelmerError> {
    if d.n().mul_vec(u).iter().all(Q::is_zero) {
        Ok(())
    } else {
        Err(SelmerError::NotCrystalline)
    }
}

/// `(x, v, u).(z, w) = (w^-1 x z, Ad_(w^-1)(v + xi_N(w)), w^-1 u phi(w))`.
pub fn act_g(d: &PhiNLieDatum, c: &GCocycle, z: &[Q], w: &[Q]) -> Result<GCocycle, SelmerError> {
    require_f0(d, z)?;
    let wi = d.inv(w);
    Ok(GCocycle {
        x: d.mul_all(&[&wi, &c.x, z]),
        v: d.ad_group(&wi, &vec_add(&c.v, &d.xi_n(w))),
        u: d.mul_all(&[&wi, &c.u, &d.apply_phi(w)]),
    })
}

/// `(x, u).(z, w) = (w^-1 x z, w^-1 u phi(w))` with `u`, `w` crystalline.
pub fn act_f(d: &PhiNLieDatum, x: &[Q], u: &[Q], z: &[Q], w: &[Q]) -> Result<(Vec<Q>, Vec<Q>), SelmerError> {
    require_f0(d, z)?;
    require_crystalline(d, u)?;
    require_crystalline(d, w)?;
    let wi = d.inv(w);
    Ok((d.mul_all(&[&wi, x, z]), d.mul_all(&[&wi, u, &d.apply_phi(w)])))
}

/// `x.(z, w) = w^-1 x z`.
pub fn act_e(d: &PhiNLieDatum, x: &[Q], z: &[Q], w: &[Q]) -> Result<Vec<Q>, SelmerError> {
    require_f0(d, z)?;
    Ok(d.mul_all(&[&d.inv(w), x, z]))
}

/// `(x0; u0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D0Point {
    pub x0: Vec<Q>,
    pub u0: Vec<Q>,
}

/// `(x0; x1; v0, u0; v1, u1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D1Point {
    pub x0: Vec<Q>,
    pub x1: Vec<Q>,
    pub v0: Vec<Q>,
    pub u0: Vec<Q>,
    pub v1: Vec<Q>,
    pub u1: Vec<Q>,
}

/// `(x0; x1; x2; a; b; c)` with each of `a, b, c` of the form `(v, v', u)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct D2Point {
    pub x: [Vec<Q>; 3],
    pub w: [(Vec<Q>, Vec<Q>, Vec<Q>); 3],
}

impl D1Point {
    /// The point with coordinates `(x1, v0, u1) = (x, v, u)` and `x0 = u0 = 1`.
    pub fn from_cocycle(d: &PhiNLieDatum, c: &GCocycle) -> D1Point {
        let p = d.p_rat();
        D1Point {
            x0: d.identity(),
            x1: c.x.clone(),
            v0: c.v.clone(),
            u0: d.identity(),
            v1: vec_scale(&d.ad_group(&c.u, &d.apply_phi(&c.v)), &p),
            u1: c.u.clone(),
        }
    }
}

fn pphi(d: &PhiNLieDatum, v: &[Q]) -> Vec<Q> {
    vec_scale(&d.apply_phi(v), &d.p_rat())
}

/// Cofaces `D0 -> D1`, `k` in `0..=1`.
pub fn coface0(d: &PhiNLieDatum, k: usize, a: &D0Point) -> Result<D1Point, SelmerError> {
    let zero = d.identity();
    match k {
        0 => {
            let xi = d.xi_n(&a.u0);
            Ok(D1Point {
                x0: a.x0.clone(),
                x1: a.x0.clone(),
                v0: xi.clone(),
                u0: a.u0.clone(),
                v1: pphi(d, &xi),
                u1: d.apply_phi(&a.u0),
            })
        }
        1 => Ok(D1Point {
            x0: a.x0.clone(),
            x1: a.u0.clone(),
            v0: zero.clone(),
            u0: a.u0.clone(),
            v1: zero,
            u1: a.u0.clone(),
        }),
        _ => Err(SelmerError::Shape(format!("coface d^{k} does not exist on D0"))),
    }
}

/// Cofaces `D1 -> D2`, `k` in `0..=2`.
pub fn coface1(d: &PhiNLieDatum, k: usize, c: &D1Point) -> Result<D2Point, SelmerError> {
    let zero = d.identity();
    match k {
        0 => Ok(D2Point {
            x: [c.x0.clone(), c.x0.clone(), c.x1.clone()],
            w: [
                (d.xi_n(&c.u0), c.v0.clone(), c.u0.clone()),
                (pphi(d, &d.xi_n(&c.u0)), pphi(d, &c.v0), d.apply_phi(&c.u0)),
                (d.xi_n(&c.u1), c.v1.clone(), c.u1.clone()),
            ],
        }),
        1 => Ok(D2Point {
            x: [c.x0.clone(), c.x1.clone(), c.x1.clone()],
            w: [
                (c.v0.clone(), c.v0.clone(), c.u0.clone()),
                (c.v1.clone(), c.v1.clone(), c.u1.clone()),
                (c.v1.clone(), c.v1.clone(), c.u1.clone()),
            ],
        }),
        2 => Ok(D2Point {
            x: [c.x0.clone(), c.x1.clone(), c.u0.clone()],
            w: [
                (c.v0.clone(), zero.clone(), c.u0.clone()),
                (c.v1.clone(), zero.clone(), c.u1.clone()),
                (c.v0.clone(), zero, c.u0.clone()),
            ],
        }),
        _ => Err(SelmerError::Shape(format!("coface d^{k} does not exist on D1"))),
    }
}

/// Componentwise product; the Lie parts multiply as `(a, u)(b, t) = (a + Ad_u b, u t)`.
pub fn d2_mul(d: &PhiNLieDatum, a: &D2Point, b: &D2Point) -> D2Point {
    let x = [0, 1, 2].map(|i| d.mul(&a.x[i], &b.x[i]));
    let w = [0, 1, 2].map(|i| {
        let (v, vp, u) = &a.w[i];
        let (s, sp, t) = &b.w[i];
        (vec_add(v, &d.ad_group(u, s)), vec_add(vp, &d.ad_group(u, sp)), d.mul(u, t))
    });
    D2Point { x, w }
}

/// `d^1(c) = d^2(c) d^0(c)`.
pub fn z1_via_cofaces(d: &PhiNLieDatum, c: &D1Point) -> bool {
    let d0 = coface1(d, 0, c).expect("valid index");
    let d1 = coface1(d, 1, c).expect("valid index");
    let d2 = coface1(d, 2, c).expect("valid index");
    d1 == d2_mul(d, &d2, &d0)
}

/// The four equations `x0 = 1`, `u0 = 1`, `v1 = p Ad_u1(phi v0)`, `v1 = v0 + xi_N(u1)`.
pub fn z1_equations(d: &PhiNLieDatum, c: &D1Point) -> bool {
    let one = d.identity();
    c.x0 == one
        && c.u0 == one
        && c.v1 == vec_scale(&d.ad_group(&c.u1, &d.apply_phi(&c.v0)), &d.p_rat())
        && c.v1 == vec_add(&c.v0, &d.xi_n(&c.u1))
}
