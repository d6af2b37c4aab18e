//! Nilpotent Lie algebras with Frobenius, monodromy, weight and Hodge data,
//! and the unipotent group law in exponential coordinates.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SelmerError;
use crate::exact::matrix::{vec_add, vec_is_zero, vec_scale};
use crate::exact::rational::factorial;
use crate::exact::{Matrix, Subspace, Q};
use crate::mixedfilt::FilteredWDRep;
use crate::wdrep::{is_prime_power, WDRep};

/// A nilpotent Lie algebra over `Q` with `phi`, `N`, a weight filtration by
/// ideals and a Hodge subalgebra `F0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiNLieDatum {
    dim: usize,
    p: BigInt,
    /// `ad[i]` is the matrix of `[e_i, -]`.
    ad: Vec<Matrix>,
    phi: Matrix,
    n: Matrix,
    w: BTreeMap<i64, Subspace>,
    f0: Subspace,
    class: usize,
    bch: Vec<(Vec<bool>, Q)>,
}

impl PhiNLieDatum {
    /// `bracket[i][j]` is `[e_i, e_j]`.
    pub fn new(
        p: BigInt,
        bracket: Vec<Vec<Vec<Q>>>,
        phi: Matrix,
        n: Matrix,
        w: BTreeMap<i64, Subspace>,
        f0: Subspace,
    ) -> Result<Self, SelmerError> {
        let dim = phi.rows();
        if !is_prime_power(&p) {
            return Err(SelmerError::BadP(p));
        }
        if !phi.is_square() || n.rows() != dim || n.cols() != dim {
            return Err(SelmerError::Shape("phi and N must be square of the same size".into()));
        }
        if bracket.len() != dim || bracket.iter().any(|r| r.len() != dim || r.iter().any(|c| c.len() != dim)) {
            return Err(SelmerError::Shape(format!("bracket must be {dim} x {dim} vectors of length {dim}")));
        }
        if f0.ambient() != dim || w.values().any(|s| s.ambient() != dim) {
            return Err(SelmerError::Shape("filtration subspaces have the wrong ambient dimension".into()));
        }
        let ad: Vec<Matrix> = (0..dim)
            .map(|i| {
                if dim == 0 {
                    Matrix::zeros(0, 0)
                } else {
                    Matrix::from_cols(dim, &bracket[i])
                }
            })
            .collect();
        let mut d = PhiNLieDatum {
            dim,
            p,
            ad,
            phi,
            n,
            w,
            f0,
            class: 0,
            bch: Vec::new(),
        };
        d.validate()?;
        d.class = d.nilpotency_class()?;
        d.bch = bch_table(d.class);
        Ok(d)
    }

    /// Abelian datum.
    pub fn abelian(p: BigInt, phi: Matrix, n: Matrix, w: BTreeMap<i64, Subspace>, f0: Subspace) -> Result<Self, SelmerError> {
        let d = phi.rows();
        PhiNLieDatum::new(p, vec![vec![vec![Q::zero(); d]; d]; d], phi, n, w, f0)
    }

    fn validate(&self) -> Result<(), SelmerError> {
        let d = self.dim;
        let e = |i: usize| crate::exact::matrix::unit_vec(d, i);
        for i in 0..d {
            for j in 0..d {
                let a = self.bracket(&e(i), &e(j));
                let b = self.bracket(&e(j), &e(i));
                if !vec_is_zero(&vec_add(&a, &b)) {
                    return Err(SelmerError::Bracket(format!("[e{i}, e{j}] + [e{j}, e{i}] != 0")));
                }
            }
        }
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let s = vec_add(
                        &vec_add(
                            &self.bracket(&e(i), &self.bracket(&e(j), &e(k))),
                            &self.bracket(&e(j), &self.bracket(&e(k), &e(i))),
                        ),
                        &self.bracket(&e(k), &self.bracket(&e(i), &e(j))),
                    );
                    if !vec_is_zero(&s) {
                        return Err(SelmerError::Bracket(format!("Jacobi fails on (e{i}, e{j}, e{k})")));
                    }
                }
            }
        }
        let p = Q::from(self.p.clone());
        if &self.n * &self.phi != (&self.phi * &self.n).scale(&p) {
            return Err(SelmerError::Operator("N phi != p phi N".into()));
        }
        if self.phi.inverse().is_none() && d > 0 {
            return Err(SelmerError::Operator("phi is not invertible".into()));
        }
        for i in 0..d {
            for j in 0..d {
                let br = self.bracket(&e(i), &e(j));
                let lhs = self.phi.mul_vec(&br);
                let rhs = self.bracket(&self.phi.col(i), &self.phi.col(j));
                if lhs != rhs {
                    return Err(SelmerError::Operator(format!("phi does not preserve [e{i}, e{j}]")));
                }
                let lhs = self.n.mul_vec(&br);
                let rhs = vec_add(&self.bracket(&self.n.col(i), &e(j)), &self.bracket(&e(i), &self.n.col(j)));
                if lhs != rhs {
                    return Err(SelmerError::Operator(format!("N is not a derivation on [e{i}, e{j}]")));
                }
            }
        }
        let keys: Vec<i64> = self.w.keys().copied().collect();
        for pair in keys.windows(2) {
            if !self.w[&pair[1]].contains_space(&self.w[&pair[0]]) {
                return Err(SelmerError::Filtration(format!("W_{} is not contained in W_{}", pair[0], pair[1])));
            }
        }
        for (&a, sa) in &self.w {
            if !sa.is_stable(&self.phi) || !sa.is_stable(&self.n) {
                return Err(SelmerError::Filtration(format!("W_{a} is not stable under phi and N")));
            }
            for (&b, sb) in &self.w {
                let target = self.w_at(a + b);
                for x in sa.basis_vecs() {
                    for y in sb.basis_vecs() {
                        if !target.contains(&self.bracket(&x, &y)) {
                            return Err(SelmerError::Filtration(format!("[W_{a}, W_{b}] is not in W_{}", a + b)));
                        }
                    }
                }
            }
            for x in sa.basis_vecs() {
                for i in 0..d {
                    if !sa.contains(&self.bracket(&e(i), &x)) {
                        return Err(SelmerError::Filtration(format!("W_{a} is not an ideal")));
                    }
                }
            }
        }
        for x in self.f0.basis_vecs() {
            for y in self.f0.basis_vecs() {
                if !self.f0.contains(&self.bracket(&x, &y)) {
                    return Err(SelmerError::Filtration("F0 is not a subalgebra".into()));
                }
            }
        }
        Ok(())
    }

    fn nilpotency_class(&self) -> Result<usize, SelmerError> {
        let d = self.dim;
        let mut cur = Subspace::full(d);
        for c in 0..=d {
            if cur.is_zero() {
                return Ok(c);
            }
            let mut vecs = Vec::new();
            for i in 0..d {
                for x in cur.basis_vecs() {
                    vecs.push(self.ad[i].mul_vec(&x));
                }
            }
            let next = Subspace::span(d, &vecs);
            if next == cur {
                break;
            }
            cur = next;
        }
        Err(SelmerError::NotNilpotent)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn p_rat(&self) -> Q {
        Q::from(self.p.clone())
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn n(&self) -> &Matrix {
        &self.n
    }

    pub fn f0(&self) -> &Subspace {
        &self.f0
    }

    pub fn stored_w(&self) -> &BTreeMap<i64, Subspace> {
        &self.w
    }

    /// Length of the lower central series.
    pub fn class(&self) -> usize {
        self.class
    }

    /// `W_i` with the same extension conventions as filtered representations.
    pub fn w_at(&self, i: i64) -> Subspace {
        match self.w.keys().next_back() {
            None => Subspace::full(self.dim),
            Some(&hi) if i > hi => Subspace::full(self.dim),
            _ => match self.w.range(..=i).next_back() {
                Some((_, s)) => s.clone(),
                None => Subspace::zero(self.dim),
            },
        }
    }

    pub fn structure_constants(&self) -> Vec<Vec<Vec<Q>>> {
        (0..self.dim).map(|i| self.ad[i].col_vecs()).collect()
    }

    pub fn bracket(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        self.ad_of(x).mul_vec(y)
    }

    pub fn ad_of(&self, x: &[Q]) -> Matrix {
        let mut m = Matrix::zeros(self.dim, self.dim);
        for (i, c) in x.iter().enumerate() {
            if !c.is_zero() {
                m = &m + &self.ad[i].scale(c);
            }
        }
        m
    }

    pub fn is_abelian(&self) -> bool {
        self.class <= 1
    }

    /// The underlying filtered representation (`q = p`).
    pub fn filtered(&self) -> Result<FilteredWDRep, SelmerError> {
        let rep = WDRep::new(self.p.clone(), self.phi.clone(), self.n.clone()).map_err(crate::mixedfilt::MixedError::from)?;
        Ok(FilteredWDRep::new(rep, self.w.clone())?)
    }

    /// Fails unless mixed with all weights negative.
    pub fn require_negative_mixed(&self) -> Result<FilteredWDRep, SelmerError> {
        let v = self.filtered()?;
        let cert = v.check_mixed()?;
        if !cert.mixed {
            return Err(SelmerError::NotMixed(cert.failing()));
        }
        if let Some(&i) = v.weights().iter().find(|&&i| i >= 0) {
            return Err(SelmerError::NonNegativeWeight(i));
        }
        Ok(v)
    }

    // Group law in exponential coordinates.

    pub fn identity(&self) -> Vec<Q> {
        vec![Q::zero(); self.dim]
    }

    pub fn inv(&self, x: &[Q]) -> Vec<Q> {
        x.iter().map(|c| -c).collect()
    }

    /// `log(exp(x) exp(y))`, exact by nilpotency.
    pub fn mul(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        if self.is_abelian() {
            return vec_add(x, y);
        }
        let mut acc = vec![Q::zero(); self.dim];
        for (word, c) in &self.bch {
            let mut cur = if word[word.len() - 1] { y.to_vec() } else { x.to_vec() };
            for &letter in word[..word.len() - 1].iter().rev() {
                cur = self.bracket(if letter { y } else { x }, &cur);
                if vec_is_zero(&cur) {
                    break;
                }
            }
            if !vec_is_zero(&cur) {
                acc = vec_add(&acc, &vec_scale(&cur, c));
            }
        }
        acc
    }

    pub fn mul_all(&self, xs: &[&[Q]]) -> Vec<Q> {
        xs.iter().fold(self.identity(), |acc, x| self.mul(&acc, x))
    }

    /// `exp(ad x)`.
    pub fn ad_exp(&self, x: &[Q]) -> Matrix {
        let a = self.ad_of(x);
        let mut acc = Matrix::identity(self.dim);
        let mut term = Matrix::identity(self.dim);
        for k in 1..=self.dim.max(1) {
            term = &term * &a;
            if term.is_zero() {
                break;
            }
            acc = &acc + &term.scale(&(Q::one() / factorial(k as u64)));
        }
        acc
    }

    /// `Ad_u(v)` for `u = exp(x)`.
    pub fn ad_group(&self, x: &[Q], v: &[Q]) -> Vec<Q> {
        self.ad_exp(x).mul_vec(v)
    }

    pub fn apply_phi(&self, x: &[Q]) -> Vec<Q> {
        self.phi.mul_vec(x)
    }

    /// `xi_N(exp x) = sum_k ad_x^k (N x) / (k+1)!`.
    pub fn xi_n(&self, x: &[Q]) -> Vec<Q> {
        let mut term = self.n.mul_vec(x);
        let mut acc = term.clone();
        for k in 1..=self.dim.max(1) {
            term = self.bracket(x, &term);
            if vec_is_zero(&term) {
                break;
            }
            acc = vec_add(&acc, &vec_scale(&term, &(Q::one() / factorial(k as u64 + 1))));
        }
        acc
    }

    /// Restriction to a `phi`, `N` stable subalgebra, in the coordinates of `basis`.
    pub fn sub(&self, basis: &Matrix) -> Result<PhiNLieDatum, SelmerError> {
        let k = basis.cols();
        let coords = |v: &[Q]| -> Result<Vec<Q>, SelmerError> {
            let s = basis.solve(&Matrix::from_cols(self.dim, &[v.to_vec()])).ok_or_else(|| SelmerError::Shape("not a subalgebra".into()))?;
            Ok(s.col(0))
        };
        let cols = basis.col_vecs();
        let mut br = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                br[a][b] = coords(&self.bracket(&cols[a], &cols[b]))?;
            }
        }
        let phi = basis.solve(&(&self.phi * basis)).ok_or_else(|| SelmerError::Shape("not phi-stable".into()))?;
        let n = basis.solve(&(&self.n * basis)).ok_or_else(|| SelmerError::Shape("not N-stable".into()))?;
        let space = Subspace::col_span(basis);
        let restrict = |s: &Subspace| -> Result<Subspace, SelmerError> {
            let inter = s.intersect(&space).expect("same ambient");
            let vecs: Result<Vec<Vec<Q>>, SelmerError> = inter.basis_vecs().iter().map(|v| coords(v)).collect();
            Ok(Subspace::span(k, &vecs?))
        };
        let mut w = BTreeMap::new();
        for (&i, s) in &self.w {
            w.insert(i, restrict(s)?);
        }
        let f0 = restrict(&self.f0)?;
        PhiNLieDatum::new(self.p.clone(), br, phi, n, w, f0)
    }

    /// Quotient by a `phi`, `N` stable ideal, on a complement basis.
    pub fn quotient(&self, ideal: &Subspace) -> Result<(PhiNLieDatum, Matrix), SelmerError> {
        let d = self.dim;
        let comp = Subspace::full(d).complement_of(ideal);
        let k = comp.len();
        let mut all = ideal.basis_vecs();
        all.extend(comp.iter().cloned());
        let m = if d == 0 { Matrix::zeros(0, 0) } else { Matrix::from_cols(d, &all) };
        let minv = m.inverse().expect("basis");
        let proj = minv.select_rows(&(ideal.dim()..d).collect::<Vec<_>>());
        let pr = |v: &[Q]| proj.mul_vec(v);
        let mut br = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                br[a][b] = pr(&self.bracket(&comp[a], &comp[b]));
            }
        }
        let c = if k == 0 { Matrix::zeros(d, 0) } else { Matrix::from_cols(d, &comp) };
        let phi = &(&proj * &self.phi) * &c;
        let n = &(&proj * &self.n) * &c;
        let image = |s: &Subspace| Subspace::span(k, &s.basis_vecs().iter().map(|v| pr(v)).collect::<Vec<_>>());
        let w = self.w.iter().map(|(&i, s)| (i, image(s))).collect();
        let f0 = image(&self.f0);
        Ok((PhiNLieDatum::new(self.p.clone(), br, phi, n, w, f0)?, proj))
    }
}

/// Dynkin coefficients of `log(e^X e^Y)` on right-nested words in `X`
/// (false) and `Y` (true), up to length `class`.
fn bch_table(class: usize) -> Vec<(Vec<bool>, Q)> {
    let mut out = Vec::new();
    for m in 1..=class.max(1) {
        for mask in 0..(1u32 << m) {
            let word: Vec<bool> = (0..m).map(|b| mask >> (m - 1 - b) & 1 == 1).collect();
            if m >= 2 && word[m - 1] == word[m - 2] {
                continue;
            }
            let c = dynkin_coeff(&word);
            if !c.is_zero() {
                out.push((word, c));
            }
        }
    }
    out
}

/// Sum over factorizations of `word` into blocks `X^r Y^s` (nonempty) of
/// `(-1)^(n-1) / (n m prod r! s!)`.
fn dynkin_coeff(word: &[bool]) -> Q {
    let m = word.len();
    // table[pos][n]: weighted count of factorizations of word[..pos] into n blocks
    let mut table: Vec<BTreeMap<usize, Q>> = vec![BTreeMap::new(); m + 1];
    table[0].insert(0, Q::one());
    for start in 0..m {
        let entries: Vec<(usize, Q)> = table[start].iter().map(|(k, v)| (*k, v.clone())).collect();
        if entries.is_empty() {
            continue;
        }
        let xs = word[start..].iter().take_while(|&&b| !b).count();
        let ys = word[start + xs..].iter().take_while(|&&b| b).count();
        let mut blocks = Vec::new();
        for r in 1..xs {
            blocks.push((r, 0));
        }
        for s in 0..=ys {
            if xs + s > 0 {
                blocks.push((xs, s));
            }
        }
        for (r, s) in blocks {
            let w = Q::one() / (factorial(r as u64) * factorial(s as u64));
            for (k, v) in &entries {
                *table[start + r + s].entry(k + 1).or_insert_with(Q::zero) += v * &w;
            }
        }
    }
    let mut acc = Q::zero();
    for (&n, v) in &table[m] {
        let sign = if n % 2 == 1 { Q::one() } else { -Q::one() };
        acc += sign * v / Q::from(BigInt::from(n));
    }
    acc / Q::from(BigInt::from(m))
}
