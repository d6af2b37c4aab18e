//! Lifting graded morphisms to weak morphisms.
//!
//! Everything is solved in bases adapted simultaneously to the weight
//! filtration and to the primary decomposition of Frobenius. A Frobenius
//! equivariant map preserves primary components, so the only unknowns are
//! the entries linking equal components from a lower weight to a higher one.

use std::collections::BTreeMap;

use num_traits::Zero;

use super::{respects, FilteredWDRep, MixedError};
use crate::exact::rational::binom;
use crate::exact::{Matrix, Poly, Q};

/// A basis adapted to `W` and to the primary decomposition of `phi`.
pub(crate) struct Primary {
    pub t: Matrix,
    pub t_inv: Matrix,
    /// Primary component (index into the shared key list) of each column.
    pub comp: Vec<usize>,
    pub weight: Vec<i64>,
    /// Column indices of each weight.
    pub by_weight: BTreeMap<i64, Vec<usize>>,
    /// Canonical graded coordinates of the columns of each weight.
    pub to_gr: BTreeMap<i64, Matrix>,
}

pub(crate) fn primary(v: &FilteredWDRep, keys: &mut Vec<Poly>) -> Result<Primary, MixedError> {
    let n = v.dim();
    let parts = v.rep().primary_parts()?;
    let mut cols: Vec<(i64, usize, Vec<Q>)> = Vec::new();
    for (f, _, space) in &parts {
        let key = f.monic();
        let ki = match keys.iter().position(|k| *k == key) {
            Some(i) => i,
            None => {
                keys.push(key);
                keys.len() - 1
            }
        };
        for p in v.pieces() {
            let a = v.w(p.weight).intersect(space).expect("same ambient");
            let b = v.w(p.weight - 1).intersect(space).expect("same ambient");
            for c in a.complement_of(&b) {
                cols.push((p.weight, ki, c));
            }
        }
    }
    cols.sort_by(|x, y| x.0.cmp(&y.0).then(x.1.cmp(&y.1)));
    let t = Matrix::from_cols(n, &cols.iter().map(|c| c.2.clone()).collect::<Vec<_>>());
    let t_inv = if n == 0 { Matrix::zeros(0, 0) } else { t.inverse().expect("primary basis spans") };
    let comp = cols.iter().map(|c| c.1).collect();
    let weight: Vec<i64> = cols.iter().map(|c| c.0).collect();
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, &w) in weight.iter().enumerate() {
        by_weight.entry(w).or_default().push(k);
    }
    let mut to_gr = BTreeMap::new();
    for (&w, idx) in &by_weight {
        to_gr.insert(w, v.gr_coords_matrix(w, &t.select_cols(idx)));
    }
    Ok(Primary {
        t,
        t_inv,
        comp,
        weight,
        by_weight,
        to_gr,
    })
}

/// Incrementally reduced linear system `A x = b`.
struct LinSystem {
    k: usize,
    rows: Vec<(usize, Vec<Q>, Q)>,
}

impl LinSystem {
    fn new(k: usize) -> Self {
        LinSystem { k, rows: Vec::new() }
    }

    fn full(&self) -> bool {
        self.rows.len() == self.k
    }

    fn add(&mut self, mut row: Vec<Q>, mut rhs: Q) -> Result<(), MixedError> {
        for (p, r, b) in &self.rows {
            if row[*p].is_zero() {
                continue;
            }
            let c = row[*p].clone();
            for (x, y) in row.iter_mut().zip(r) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
            rhs -= &c * b;
        }
        let Some(p) = row.iter().position(|x| !x.is_zero()) else {
            return if rhs.is_zero() { Ok(()) } else { Err(MixedError::NoSolution) };
        };
        let inv = row[p].recip();
        for x in row.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        rhs *= &inv;
        for (_, r, b) in self.rows.iter_mut() {
            if r[p].is_zero() {
                continue;
            }
            let c = r[p].clone();
            for (x, y) in r.iter_mut().zip(&row) {
                if !y.is_zero() {
                    *x -= &c * y;
                }
            }
            *b -= &c * &rhs;
        }
        self.rows.push((p, row, rhs));
        Ok(())
    }

    fn solution(&self) -> Vec<Q> {
        let mut x = vec![Q::zero(); self.k];
        for (p, _, b) in &self.rows {
            x[*p] = b.clone();
        }
        x
    }
}

fn check_graded(v1: &FilteredWDRep, v2: &FilteredWDRep, gr_f: &BTreeMap<i64, Matrix>) -> Result<(), MixedError> {
    for (&k, g) in gr_f {
        let (r, c) = (v2.gr_dim(k), v1.gr_dim(k));
        if g.rows() != r || g.cols() != c {
            return Err(MixedError::GradedShape(k, g.rows(), g.cols(), r, c));
        }
        if r == 0 || c == 0 {
            continue;
        }
        let (a, b) = (v1.gr_rep(k), v2.gr_rep(k));
        if g * a.phi() != b.phi() * g || g * a.n() != b.n() * g {
            return Err(MixedError::NotGradedMorphism(k));
        }
    }
    Ok(())
}

/// The unique weak morphism `v1 -> v2` inducing `gr_f` (missing weights
/// count as zero maps).
pub fn weak_lift(v1: &FilteredWDRep, v2: &FilteredWDRep, gr_f: &BTreeMap<i64, Matrix>) -> Result<Matrix, MixedError> {
    v1.require_mixed()?;
    v2.require_mixed()?;
    weak_lift_unchecked(v1, v2, gr_f)
}

/// `sum_s C(r,s) (-1)^s A^(r-s) F B^s`.
fn n_conjugate(r: usize, apow: &[Matrix], f: &Matrix, bpow: &[Matrix]) -> Matrix {
    let mut acc = Matrix::zeros(f.rows(), f.cols());
    for s in 0..=r {
        let mut c = binom(r as u64, s as u64);
        if s % 2 == 1 {
            c = -c;
        }
        let term = &(&apow[r - s] * f) * &bpow[s];
        acc = &acc + &term.scale(&c);
    }
    acc
}

/// `m^0, m^1, ...` up to and including the first zero power.
fn powers(m: &Matrix) -> Vec<Matrix> {
    let mut out = vec![Matrix::identity(m.rows())];
    while !out[out.len() - 1].is_zero() {
        let next = &out[out.len() - 1] * m;
        out.push(next);
    }
    out
}

/// Conjugation terms vanish once `r` reaches `rmax`.
fn bounded_powers(a: &Matrix, b: &Matrix) -> (Vec<Matrix>, Vec<Matrix>, usize) {
    let mut ap = powers(a);
    let mut bp = powers(b);
    let rmax = (ap.len() - 1) + (bp.len() - 1);
    let rmax = rmax.max(1);
    for p in [&mut ap, &mut bp] {
        let z = Matrix::zeros(p[0].rows(), p[0].cols());
        p.resize(rmax + 1, z);
    }
    (ap, bp, rmax)
}

pub(crate) fn weak_lift_unchecked(
    v1: &FilteredWDRep,
    v2: &FilteredWDRep,
    gr_f: &BTreeMap<i64, Matrix>,
) -> Result<Matrix, MixedError> {
    check_graded(v1, v2, gr_f)?;
    let (n1, n2) = (v1.dim(), v2.dim());
    if n1 == 0 || n2 == 0 {
        return Ok(Matrix::zeros(n2, n1));
    }
    let mut keys = Vec::new();
    let p1 = primary(v1, &mut keys)?;
    let p2 = primary(v2, &mut keys)?;

    let mut f0 = Matrix::zeros(n2, n1);
    for (&k, g) in gr_f {
        let (Some(i1), Some(i2)) = (p1.by_weight.get(&k), p2.by_weight.get(&k)) else {
            continue;
        };
        let m2inv = p2.to_gr[&k].inverse().expect("graded coordinates");
        let gp = &(&m2inv * g) * &p1.to_gr[&k];
        for (a, &r) in i2.iter().enumerate() {
            for (b, &c) in i1.iter().enumerate() {
                f0[(r, c)] = gp[(a, b)].clone();
            }
        }
    }

    let mut unknowns = Vec::new();
    for r in 0..n2 {
        for c in 0..n1 {
            if p2.comp[r] == p1.comp[c] && p2.weight[r] < p1.weight[c] {
                unknowns.push((r, c));
            }
        }
    }
    let k = unknowns.len();
    let phi1 = &(&p1.t_inv * v1.rep().phi()) * &p1.t;
    let phi2 = &(&p2.t_inv * v2.rep().phi()) * &p2.t;
    let nn1 = &(&p1.t_inv * v1.rep().n()) * &p1.t;
    let nn2 = &(&p2.t_inv * v2.rep().n()) * &p2.t;
    let (a_pow, b_pow, rmax) = bounded_powers(&nn2, &nn1);

    let mut sys = LinSystem::new(k);
    if k > 0 {
        let c0 = &(&phi2 * &f0) - &(&f0 * &phi1);
        'phi: for &(r, c) in &unknowns {
            let row: Vec<Q> = unknowns
                .iter()
                .map(|&(re, ce)| {
                    let mut x = Q::zero();
                    if ce == c {
                        x += &phi2[(r, re)];
                    }
                    if re == r {
                        x -= &phi1[(ce, c)];
                    }
                    x
                })
                .collect();
            sys.add(row, -c0[(r, c)].clone())?;
            if sys.full() {
                break 'phi;
            }
        }
        'n: for rr in 1..rmax {
            if sys.full() {
                break 'n;
            }
            let m0 = n_conjugate(rr, &a_pow, &f0, &b_pow);
            let coefs: Vec<Q> = (0..=rr)
                .map(|s| {
                    let c = binom(rr as u64, s as u64);
                    if s % 2 == 1 {
                        -c
                    } else {
                        c
                    }
                })
                .collect();
            for r in 0..n2 {
                for c in 0..n1 {
                    if p2.weight[r] <= p1.weight[c] - rr as i64 - 1 {
                        continue;
                    }
                    let mut any = false;
                    let row: Vec<Q> = unknowns
                        .iter()
                        .map(|&(re, ce)| {
                            let mut x = Q::zero();
                            for s in 0..=rr {
                                let a = &a_pow[rr - s][(r, re)];
                                if a.is_zero() {
                                    continue;
                                }
                                let b = &b_pow[s][(ce, c)];
                                if b.is_zero() {
                                    continue;
                                }
                                x += &coefs[s] * a * b;
                            }
                            if !x.is_zero() {
                                any = true;
                            }
                            x
                        })
                        .collect();
                    if !any {
                        if !m0[(r, c)].is_zero() {
                            return Err(MixedError::NoSolution);
                        }
                        continue;
                    }
                    sys.add(row, -m0[(r, c)].clone())?;
                    if sys.full() {
                        break 'n;
                    }
                }
            }
        }
        if !sys.full() {
            return Err(MixedError::NotUnique(k - sys.rows.len()));
        }
    }

    let mut fp = f0;
    for (x, &(r, c)) in sys.solution().into_iter().zip(&unknowns) {
        fp[(r, c)] = x;
    }
    if &phi2 * &fp != &fp * &phi1 || !respects(&fp, &p2.weight, &p1.weight, 0) {
        return Err(MixedError::NoSolution);
    }
    for rr in 1..rmax {
        let m = n_conjugate(rr, &a_pow, &fp, &b_pow);
        if !respects(&m, &p2.weight, &p1.weight, rr as i64 + 1) {
            return Err(MixedError::NoSolution);
        }
    }
    Ok(&(&p2.t * &fp) * &p1.t_inv)
}

/// Whether `f` satisfies the weak-morphism conditions in the original bases.
pub fn is_weak_morphism(v1: &FilteredWDRep, v2: &FilteredWDRep, f: &Matrix) -> bool {
    if v2.rep().phi() * f != f * v1.rep().phi() || !v1.is_filtered_map(v2, f) {
        return false;
    }
    let (a_pow, b_pow, rmax) = bounded_powers(v2.rep().n(), v1.rep().n());
    (1..rmax).all(|r| {
        let m = n_conjugate(r, &a_pow, f, &b_pow);
        v1.pieces().iter().all(|p| {
            let target = v2.w(p.weight - r as i64 - 1);
            (&m * &p.basis).col_vecs().iter().all(|c| target.contains(c))
        })
    })
}
