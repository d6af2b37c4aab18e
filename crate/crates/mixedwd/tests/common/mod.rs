//! Random mixed representations, morphisms and data shared by the
//! integration tests and the acceptance suite.
#![allow(dead_code)]

use std::collections::BTreeMap;

use mixedwd::exact::{q, qf, Matrix, Subspace, Q};
use mixedwd::mixedfilt::FilteredWDRep;
use mixedwd::wdrep::WDRep;
use num_bigint::BigInt;
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn small_q(rng: &mut impl Rng) -> Q {
    qf(rng.gen_range(-4..=4), rng.gen_range(1..=3))
}

pub fn small_vec(rng: &mut impl Rng, n: usize) -> Vec<Q> {
    (0..n).map(|_| small_q(rng)).collect()
}

/// Companion matrix of `x^2 - t x + qq`, weight one when `t^2 < 4 qq`.
fn weight_one(qq: i64, t: i64) -> Matrix {
    Matrix::from_rows(vec![vec![q(0), q(-qq)], vec![q(1), q(t)]])
}

/// A pure piece: `std_j(r)`, possibly tensored with a weight-one block or a
/// sign; with `jordan`, sometimes a non-semisimple Frobenius block.
pub fn pure_piece(rng: &mut impl Rng, qq: i64, max_dim: usize, jordan: bool) -> (WDRep, i64) {
    let qb = BigInt::from(qq);
    if jordan && max_dim >= 2 && rng.gen_bool(0.3) {
        let r = rng.gen_range(-1..=1);
        let l = mixedwd::exact::qpow_z(&qb, -r);
        let phi = Matrix::from_rows(vec![vec![l.clone(), l.clone()], vec![q(0), l]]);
        return (WDRep::new(qb, phi, Matrix::zeros(2, 2)).unwrap(), -2 * r);
    }
    loop {
        let j = rng.gen_range(0..=2usize);
        let r = rng.gen_range(-1..=1i64);
        let s = WDRep::make_std(j, qb.clone(), r).unwrap();
        let kind = rng.gen_range(0..4);
        let (rep, w) = match kind {
            0 if 2 * (j + 1) <= max_dim => {
                let t = rng.gen_range(-1..=1);
                let u = WDRep::new(qb.clone(), weight_one(qq, t), Matrix::zeros(2, 2)).unwrap();
                (s.tensor(&u).unwrap(), -2 * r - j as i64 + 1)
            }
            1 => {
                let phi = s.phi().scale(&q(-1));
                (WDRep::new(qb.clone(), phi, s.n().clone()).unwrap(), -2 * r - j as i64)
            }
            _ => (s, -2 * r - j as i64),
        };
        if rep.dim() <= max_dim {
            return (rep, w);
        }
    }
}

/// Unit lower times unit upper triangular with small entries.
pub fn unimodular(rng: &mut impl Rng, n: usize) -> Matrix {
    let mut l = Matrix::identity(n);
    let mut u = Matrix::identity(n);
    for i in 0..n {
        for j in 0..i {
            l[(i, j)] = q(rng.gen_range(-1..=1));
            u[(j, i)] = q(rng.gen_range(-1..=1));
        }
    }
    &l * &u
}

/// Solutions `X` of the linear conditions `f(E_rc)` over the allowed positions.
fn solve_positions(
    rows: usize,
    cols: usize,
    allowed: impl Fn(usize, usize) -> bool,
    cond: impl Fn(&Matrix) -> Vec<Q>,
) -> Vec<Matrix> {
    let pos: Vec<(usize, usize)> = (0..rows).flat_map(|r| (0..cols).map(move |c| (r, c))).filter(|&(r, c)| allowed(r, c)).collect();
    if pos.is_empty() {
        return Vec::new();
    }
    let columns: Vec<Vec<Q>> = pos
        .iter()
        .map(|&(r, c)| {
            let mut e = Matrix::zeros(rows, cols);
            e[(r, c)] = q(1);
            cond(&e)
        })
        .collect();
    let m = Matrix::from_cols(columns[0].len(), &columns);
    let ker = m.kernel();
    (0..ker.cols())
        .map(|k| {
            let mut x = Matrix::zeros(rows, cols);
            for (t, &(r, c)) in pos.iter().enumerate() {
                x[(r, c)] = ker[(t, k)].clone();
            }
            x
        })
        .collect()
}

fn random_combination(rng: &mut impl Rng, basis: &[Matrix], rows: usize, cols: usize) -> Matrix {
    let mut x = Matrix::zeros(rows, cols);
    for b in basis {
        let c = q(rng.gen_range(-2..=2));
        if !c.is_zero() {
            x = &x + &b.scale(&c);
        }
    }
    x
}

/// A graded representation plus the weight of each coordinate (sorted).
pub fn random_graded(rng: &mut impl Rng, qq: i64, max_dim: usize, jordan: bool) -> (WDRep, Vec<i64>) {
    let target = rng.gen_range(1..=max_dim);
    let mut pieces = Vec::new();
    let mut dim = 0;
    while dim < target {
        let (p, w) = pure_piece(rng, qq, target - dim, jordan);
        dim += p.dim();
        pieces.push((w, p));
    }
    pieces.sort_by_key(|(w, _)| *w);
    let mut rep = WDRep::trivial(BigInt::from(qq), 0).unwrap();
    let mut weights = Vec::new();
    for (w, p) in &pieces {
        rep = rep.direct_sum(p).unwrap();
        weights.extend(std::iter::repeat(*w).take(p.dim()));
    }
    (rep, weights)
}

/// A random mixed representation of dimension at most `max_dim`: a W-strict
/// extension of pure pieces with random monodromy extension classes, in a
/// random basis.
pub fn random_mixed(rng: &mut impl Rng, qq: i64, max_dim: usize, jordan: bool) -> FilteredWDRep {
    let (gr, weights) = random_graded(rng, qq, max_dim, jordan);
    let n = gr.dim();
    let qr = q(qq);
    let d = gr.phi().clone();
    let ext = solve_positions(
        n,
        n,
        |r, c| weights[r] < weights[c],
        |e| {
            let m = &(e * &d) - &(&d * e).scale(&qr);
            m.entries().to_vec()
        },
    );
    let nn = gr.n() + &random_combination(rng, &ext, n, n);
    let h = unimodular(rng, n);
    let hi = h.inverse().unwrap();
    let phi = &(&h * &d) * &hi;
    let nn = &(&h * &nn) * &hi;
    let mut w = BTreeMap::new();
    let mut ws = weights.clone();
    ws.dedup();
    for &i in &ws {
        let cols: Vec<Vec<Q>> = (0..n).filter(|&c| weights[c] <= i).map(|c| h.col(c)).collect();
        w.insert(i, Subspace::span(n, &cols));
    }
    let rep = WDRep::new(BigInt::from(qq), phi, nn).unwrap();
    FilteredWDRep::new(rep, w).unwrap()
}

/// All indices at which either filtration jumps.
pub fn joint_weights(v1: &FilteredWDRep, v2: &FilteredWDRep) -> Vec<i64> {
    let mut ks: Vec<i64> = v1.stored().keys().chain(v2.stored().keys()).copied().collect();
    ks.sort_unstable();
    ks.dedup();
    ks
}

/// Basis of the filtered Weil-Deligne morphisms `v1 -> v2`.
pub fn hom_basis(v1: &FilteredWDRep, v2: &FilteredWDRep) -> Vec<Matrix> {
    let (d1, d2) = (v1.dim(), v2.dim());
    let (p1, n1, p2, n2) = (v1.rep().phi(), v1.rep().n(), v2.rep().phi(), v2.rep().n());
    let ks = joint_weights(v1, v2);
    let filt: Vec<(Matrix, Matrix)> = ks.iter().map(|&i| (v2.w(i).annihilator(), v1.w(i).basis().clone())).collect();
    solve_positions(
        d2,
        d1,
        |_, _| true,
        |x| {
            let mut out = (&(p2 * x) - &(x * p1)).entries().to_vec();
            out.extend((&(n2 * x) - &(x * n1)).entries().iter().cloned());
            for (ann, b) in &filt {
                if ann.rows() > 0 && b.cols() > 0 {
                    out.extend((&(ann * x) * b).entries().iter().cloned());
                }
            }
            out
        },
    )
}

pub fn random_morphism(rng: &mut impl Rng, v1: &FilteredWDRep, v2: &FilteredWDRep) -> Matrix {
    random_combination(rng, &hom_basis(v1, v2), v2.dim(), v1.dim())
}

/// Graded map in splitting coordinates: block `gr_i V1 -> gr_i V2` at the
/// pieces' offsets.
pub fn graded_block_matrix(v1: &FilteredWDRep, v2: &FilteredWDRep, f: &Matrix) -> Matrix {
    let g = v1.gr_map(v2, f);
    let mut out = Matrix::zeros(v2.dim(), v1.dim());
    for p1 in v1.pieces() {
        if let (Some(p2), Some(m)) = (v2.piece(p1.weight), g.get(&p1.weight)) {
            for r in 0..p2.dim() {
                for c in 0..p1.dim() {
                    out[(p2.offset + r, p1.offset + c)] = m[(r, c)].clone();
                }
            }
        }
    }
    out
}

pub fn shuffle<T>(rng: &mut impl Rng, v: &mut [T]) {
    v.shuffle(rng);
}
