//! Truncated free algebras on letters with Frobenius and monodromy, their
//! weight filtrations, primitive elements, and Lyndon words.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::{fmt_q, Matrix, Subspace, Q};
use crate::mixedfilt::{FilteredWDRep, MixedError};
use crate::wdrep::{is_prime_power, WDRep, WdError};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Pi1Error {
    #[error("need at least one letter")]
    NoLetters,
    #[error("{0} eigenvalues given for {1} letters")]
    EigenvalueCount(usize, usize),
    #[error("letter {0} has eigenvalue 0")]
    ZeroEigenvalue(usize),
    #[error("letter index {0} out of range")]
    BadLetter(usize),
    #[error("q = {0} is not a prime power")]
    BadQ(BigInt),
    #[error("N(x_{from}) = {coef} x_{to} breaks N phi = q phi N: eigenvalues {from_eig} and {to_eig}")]
    NotCommuting { from: usize, to: usize, coef: String, from_eig: String, to_eig: String },
    #[error("K is not contained in the augmentation ideal")]
    KNotInIdeal,
    #[error("K has ambient dimension {0}, expected {1}")]
    KAmbient(usize, usize),
    #[error(transparent)]
    Wd(#[from] WdError),
    #[error(transparent)]
    Mixed(#[from] MixedError),
}

/// Words of length at most `n` in `m` letters, ordered by length and then
/// lexicographically, with concatenation truncated beyond length `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTruncation {
    m: usize,
    n: usize,
    q: BigInt,
    eig: Vec<Q>,
    /// Monodromy on letters: column `a` is `N(x_a)`.
    n1: Matrix,
    offsets: Vec<usize>,
    rep: WDRep,
}

impl FreeTruncation {
    /// `pairs` lists `(from, to, c)` meaning `N(x_from) += c x_to`.
    pub fn new(m: usize, n: usize, q: BigInt, eig: Vec<Q>, pairs: &[(usize, usize, Q)]) -> Result<Self, Pi1Error> {
        if m == 0 {
            return Err(Pi1Error::NoLetters);
        }
        if eig.len() != m {
            return Err(Pi1Error::EigenvalueCount(eig.len(), m));
        }
        if !is_prime_power(&q) {
            return Err(Pi1Error::BadQ(q));
        }
        if let Some(a) = eig.iter().position(Q::is_zero) {
            return Err(Pi1Error::ZeroEigenvalue(a));
        }
        let qq = Q::from(q.clone());
        let mut n1 = Matrix::zeros(m, m);
        for (from, to, c) in pairs {
            let (from, to) = (*from, *to);
            if from >= m {
                return Err(Pi1Error::BadLetter(from));
            }
            if to >= m {
                return Err(Pi1Error::BadLetter(to));
            }
            if !c.is_zero() && eig[from] != &qq * &eig[to] {
                return Err(Pi1Error::NotCommuting {
                    from,
                    to,
                    coef: fmt_q(c),
                    from_eig: fmt_q(&eig[from]),
                    to_eig: fmt_q(&eig[to]),
                });
            }
            n1[(to, from)] += c;
        }
        let mut offsets = vec![0];
        for k in 0..=n {
            offsets.push(offsets[k] + m.pow(k as u32));
        }
        let dim = offsets[n + 1];
        let mut t = FreeTruncation {
            m,
            n,
            q: q.clone(),
            eig,
            n1,
            offsets,
            rep: WDRep::trivial(q.clone(), 0)?,
        };
        let mut phi = Matrix::zeros(dim, dim);
        let mut nn = Matrix::zeros(dim, dim);
        for idx in 0..dim {
            let w = t.word(idx);
            phi[(idx, idx)] = w.iter().fold(Q::one(), |acc, &a| acc * &t.eig[a]);
            for pos in 0..w.len() {
                for b in 0..m {
                    let c = &t.n1[(b, w[pos])];
                    if c.is_zero() {
                        continue;
                    }
                    let mut w2 = w.clone();
                    w2[pos] = b;
                    let j = t.index(&w2);
                    nn[(j, idx)] += c;
                }
            }
        }
        t.rep = WDRep::new(q, phi, nn)?;
        Ok(t)
    }

    /// Two letters `x_1, x_q` with eigenvalues `1, 1/q` and `N(x_1) = x_q`.
    pub fn tate(n: usize, q: BigInt) -> Result<Self, Pi1Error> {
        let inv = Q::new(BigInt::one(), q.clone());
        FreeTruncation::new(2, n, q, vec![Q::one(), inv], &[(0, 1, Q::one())])
    }

    pub fn letters(&self) -> usize {
        self.m
    }

    pub fn depth(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn eigenvalues(&self) -> &[Q] {
        &self.eig
    }

    pub fn letter_monodromy(&self) -> &Matrix {
        &self.n1
    }

    pub fn dim(&self) -> usize {
        self.offsets[self.n + 1]
    }

    /// Induced Frobenius (multiplicative) and monodromy (derivation).
    pub fn rep(&self) -> &WDRep {
        &self.rep
    }

    pub fn index(&self, w: &[usize]) -> usize {
        self.offsets[w.len()] + w.iter().fold(0, |acc, &a| acc * self.m + a)
    }

    pub fn word(&self, idx: usize) -> Vec<usize> {
        let len = (0..=self.n).find(|&k| idx < self.offsets[k + 1]).expect("index in range");
        let mut x = idx - self.offsets[len];
        let mut w = vec![0; len];
        for slot in w.iter_mut().rev() {
            *slot = x % self.m;
            x /= self.m;
        }
        w
    }

    /// Basis indices of words of length `k`.
    pub fn degree(&self, k: usize) -> std::ops::Range<usize> {
        self.offsets[k]..self.offsets[k + 1]
    }

    /// Truncated product.
    pub fn mul(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let wi = self.word(i);
            for (j, y) in b.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let wj = self.word(j);
                if wi.len() + wj.len() > self.n {
                    continue;
                }
                let mut w = wi.clone();
                w.extend(&wj);
                out[self.index(&w)] += x * y;
            }
        }
        out
    }

    /// Span of all products `a b` with `a ∈ s`, `b ∈ t`.
    pub fn product(&self, s: &Subspace, t: &Subspace) -> Subspace {
        let mut vecs = Vec::new();
        for a in s.basis_vecs() {
            for b in t.basis_vecs() {
                vecs.push(self.mul(&a, &b));
            }
        }
        Subspace::span(self.dim(), &vecs)
    }

    /// Words of positive length.
    pub fn augmentation_ideal(&self) -> Subspace {
        let d = self.dim();
        let vecs: Vec<Vec<Q>> = (1..d).map(|k| crate::exact::matrix::unit_vec(d, k)).collect();
        Subspace::span(d, &vecs)
    }

    /// `W_0 = A`, `W_-1 = I`, `W_-2 = I^2 + K`, `W_-i = sum_{p+r=i} W_-p W_-r`.
    pub fn weight_filtration(&self, k: &Subspace) -> Result<FilteredWDRep, Pi1Error> {
        let d = self.dim();
        if k.ambient() != d {
            return Err(Pi1Error::KAmbient(k.ambient(), d));
        }
        let ideal = self.augmentation_ideal();
        if !ideal.contains_space(k) {
            return Err(Pi1Error::KNotInIdeal);
        }
        let mut w: Vec<Subspace> = vec![Subspace::full(d), ideal.clone()];
        w.push(self.product(&ideal, &ideal).sum(k).expect("same ambient"));
        let mut i = 2;
        while !w[i].is_zero() {
            i += 1;
            let mut acc = Subspace::zero(d);
            for p in 1..i {
                acc = acc.sum(&self.product(&w[p], &w[i - p])).expect("same ambient");
            }
            w.push(acc);
        }
        let map: BTreeMap<i64, Subspace> = w.into_iter().enumerate().map(|(i, s)| (-(i as i64), s)).collect();
        Ok(FilteredWDRep::new(self.rep.clone(), map)?)
    }

    /// Matrix of the reduced coproduct on words of length `k`, into pairs of
    /// nonempty words `(u, v)` with `|u| + |v| = k`.
    fn reduced_coproduct(&self, k: usize) -> Matrix {
        let m = self.m;
        let mk = m.pow(k as u32);
        let rows = (k.saturating_sub(1)) * mk;
        let mut out = Matrix::zeros(rows, mk);
        for (col, idx) in self.degree(k).enumerate() {
            let w = self.word(idx);
            for mask in 1..(1u64 << k) - 1 {
                let (mut u, mut v) = (Vec::new(), Vec::new());
                for (pos, &a) in w.iter().enumerate() {
                    if mask >> pos & 1 == 1 {
                        u.push(a);
                    } else {
                        v.push(a);
                    }
                }
                let ui = u.iter().fold(0, |acc, &a| acc * m + a);
                let vi = v.iter().fold(0, |acc, &a| acc * m + a);
                // block for |u| = a has m^a * m^(k-a) = m^k rows
                let row = (u.len() - 1) * mk + ui * m.pow(v.len() as u32) + vi;
                out[(row, col)] += Q::one();
            }
        }
        out
    }

    /// Primitive elements of degree `k`, as vectors in the whole algebra.
    pub fn primitives_of_degree(&self, k: usize) -> Vec<Vec<Q>> {
        if k == 0 || k > self.n {
            return Vec::new();
        }
        let range = self.degree(k);
        if k == 1 {
            return range.map(|i| crate::exact::matrix::unit_vec(self.dim(), i)).collect();
        }
        let ker = self.reduced_coproduct(k).kernel();
        ker.col_vecs()
            .into_iter()
            .map(|c| {
                let mut v = vec![Q::zero(); self.dim()];
                v[range.clone()].clone_from_slice(&c);
                v
            })
            .collect()
    }

    /// Kernel of `Δ - id⊗1 - 1⊗id` in the truncation.
    pub fn primitives(&self) -> Subspace {
        let vecs: Vec<Vec<Q>> = (1..=self.n).flat_map(|k| self.primitives_of_degree(k)).collect();
        Subspace::span(self.dim(), &vecs)
    }

    /// Dimension of the primitives in each degree `1..=n`.
    pub fn primitive_dims(&self) -> Vec<usize> {
        (1..=self.n).map(|k| self.primitives_of_degree(k).len()).collect()
    }

    /// Commutator `[a, b] = ab - ba`.
    pub fn bracket(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let x = self.mul(a, b);
        let y = self.mul(b, a);
        x.iter().zip(&y).map(|(p, r)| p - r).collect()
    }

    pub fn letter(&self, a: usize) -> Vec<Q> {
        crate::exact::matrix::unit_vec(self.dim(), self.index(&[a]))
    }

    /// Standard bracketing of a Lyndon word (split at the longest proper
    /// Lyndon suffix).
    pub fn lyndon_bracket(&self, w: &[usize]) -> Vec<Q> {
        if w.len() == 1 {
            return self.letter(w[0]);
        }
        let split = (1..w.len()).find(|&s| is_lyndon(&w[s..])).expect("single letters are Lyndon");
        self.bracket(&self.lyndon_bracket(&w[..split]), &self.lyndon_bracket(&w[split..]))
    }
}

pub fn is_lyndon(w: &[usize]) -> bool {
    !w.is_empty() && (1..w.len()).all(|s| {
        let rot: Vec<usize> = w[s..].iter().chain(&w[..s]).copied().collect();
        w < rot.as_slice()
    })
}

/// Lyndon words of length `i` on `m` letters in lexicographic order (Duval).
pub fn lyndon_words(m: usize, i: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if m == 0 || i == 0 {
        return out;
    }
    let mut w: Vec<usize> = vec![0];
    while !w.is_empty() {
        if w.len() == i {
            out.push(w.clone());
        }
        let k = w.len();
        while w.len() < i {
            let c = w[w.len() - k];
            w.push(c);
        }
        while w.last() == Some(&(m - 1)) {
            w.pop();
        }
        if let Some(last) = w.last_mut() {
            *last += 1;
        }
    }
    out
}

fn mobius(mut n: u64) -> i64 {
    let mut mu = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            mu = -mu;
        }
        p += 1;
    }
    if n > 1 {
        mu = -mu;
    }
    mu
}

/// `(1/i) sum_{d | i} mu(d) m^(i/d)`.
pub fn lyndon_count(m: &BigInt, i: u64) -> BigInt {
    if i == 0 {
        return BigInt::zero();
    }
    let mut acc = BigInt::zero();
    for d in 1..=i {
        if i % d == 0 {
            acc += mobius(d) * num_traits::pow(m.clone(), (i / d) as usize);
        }
    }
    acc / BigInt::from(i)
}

/// `sum_{i=1..n} lyndon_count(m, i)`, the summed necklace polynomial.
pub fn lyndon_count_upto(m: &BigInt, n: u64) -> BigInt {
    (1..=n).map(|i| lyndon_count(m, i)).sum()
}

/// Integer-valued Lyndon count for small arguments.
pub fn lyndon_count_small(m: usize, i: usize) -> usize {
    usize::try_from(lyndon_count(&BigInt::from(m), i as u64)).expect("fits")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{q, qf};

    #[test]
    fn dims_and_words() {
        let t = FreeTruncation::new(2, 2, BigInt::from(3), vec![q(1), q(1)], &[]).unwrap();
        assert_eq!(t.dim(), 7);
        for idx in 0..t.dim() {
            assert_eq!(t.index(&t.word(idx)), idx);
        }
        assert_eq!(t.word(5), vec![1, 0]);
    }

    #[test]
    fn tate_structure() {
        let t = FreeTruncation::tate(3, BigInt::from(2)).unwrap();
        assert!(t.rep().check_axioms().ok());
        let bad = FreeTruncation::new(2, 2, BigInt::from(2), vec![q(1), qf(1, 2)], &[(1, 0, q(1))]);
        assert!(matches!(bad, Err(Pi1Error::NotCommuting { from: 1, to: 0, .. })));
    }

    #[test]
    fn frobenius_is_multiplicative() {
        let t = FreeTruncation::new(1, 3, BigInt::from(5), vec![qf(1, 5)], &[]).unwrap();
        let phi = t.rep().phi();
        for k in 0..=3 {
            let i = t.degree(k).start;
            assert_eq!(phi[(i, i)], crate::exact::qpow(&qf(1, 5), k as i64));
        }
    }

    #[test]
    fn pure_letters_give_ideal_powers() {
        let t = FreeTruncation::new(2, 3, BigInt::from(4), vec![qf(1, 2), qf(-1, 2)], &[]).unwrap();
        let v = t.weight_filtration(&Subspace::zero(t.dim())).unwrap();
        let i = t.augmentation_ideal();
        let i2 = t.product(&i, &i);
        let i3 = t.product(&i2, &i);
        assert_eq!(v.w(-2), i2);
        assert_eq!(v.w(-3), i3);
        assert!(v.w(-4).is_zero());
        assert!(v.check_mixed().unwrap().mixed);
    }

    #[test]
    fn primitive_dims() {
        let t = FreeTruncation::new(2, 3, BigInt::from(2), vec![q(1), q(1)], &[]).unwrap();
        assert_eq!(t.primitive_dims(), vec![2, 1, 2]);
        let one = FreeTruncation::new(1, 4, BigInt::from(2), vec![q(1)], &[]).unwrap();
        assert_eq!(one.primitives().dim(), 1);
    }

    #[test]
    fn lyndon_brackets_are_primitive() {
        let t = FreeTruncation::new(2, 4, BigInt::from(2), vec![q(1), q(1)], &[]).unwrap();
        let p = t.primitives();
        for i in 1..=4 {
            for w in lyndon_words(2, i) {
                assert!(p.contains(&t.lyndon_bracket(&w)));
            }
        }
    }

    #[test]
    fn duval() {
        assert_eq!(lyndon_words(2, 3), vec![vec![0, 0, 1], vec![0, 1, 1]]);
        assert!(lyndon_words(1, 2).is_empty());
        assert_eq!(lyndon_words(1, 1), vec![vec![0]]);
        for m in 1..=4 {
            for i in 1..=10 {
                let ws = lyndon_words(m, i);
                assert!(ws.iter().all(|w| is_lyndon(w)));
                assert_eq!(ws.len(), lyndon_count_small(m, i), "{m} {i}");
            }
        }
    }

    #[test]
    fn tate_pipeline() {
        for n in 1..=4 {
            let t = FreeTruncation::tate(n, BigInt::from(3)).unwrap();
            let v = t.weight_filtration(&Subspace::zero(t.dim())).unwrap();
            assert!(v.check_mixed().unwrap().mixed, "n = {n}");
            assert!(v.rep().is_frobenius_semisimple());
            crate::mixedfilt::canonical_splitting(&v).unwrap();
            crate::mixedfilt::structure_decompose(&v).unwrap();
        }
    }

    #[test]
    fn tate_with_k_is_not_mixed() {
        let t = FreeTruncation::tate(2, BigInt::from(3)).unwrap();
        let k = Subspace::span(t.dim(), &[t.letter(1)]);
        let v = t.weight_filtration(&k).unwrap();
        assert!(!v.check_mixed().unwrap().mixed);
    }
}
