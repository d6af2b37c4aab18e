//! Factorization over the rationals: square-free decomposition, then
//! distinct/equal-degree factorization modulo a small prime, Hensel lifting
//! and subset recombination.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::poly::Poly;
use super::rational::Q;

/// Largest accepted degree.
pub const MAX_DEGREE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    Zero,
    #[error("degree {0} exceeds the supported bound of {MAX_DEGREE}")]
    TooLarge(usize),
}

/// `unit * prod(f^m)`, with every `f` a primitive integer polynomial of
/// positive leading coefficient, irreducible over the rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Q,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    pub fn expand(&self) -> Poly {
        let mut acc = Poly::constant(self.unit.clone());
        for (f, m) in &self.factors {
            acc = &acc * &f.pow(*m);
        }
        acc
    }
}

pub fn factor_z(p: &Poly) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::Zero);
    }
    if p.deg() > MAX_DEGREE {
        return Err(FactorError::TooLarge(p.deg()));
    }
    let mut factors = Vec::new();
    for (part, mult) in squarefree_decomposition(p) {
        for f in factor_squarefree(&to_primitive(&part)) {
            factors.push((from_ints(&f), mult));
        }
    }
    factors.sort_by(|a, b| {
        a.0.deg()
            .cmp(&b.0.deg())
            .then_with(|| a.0.coeffs().cmp(b.0.coeffs()))
            .then(a.1.cmp(&b.1))
    });
    let mut prod = Poly::one();
    for (f, m) in &factors {
        prod = &prod * &f.pow(*m);
    }
    let unit = p.lead() / prod.lead();
    Ok(Factorization { unit, factors })
}

/// Monic square-free parts with multiplicities (Musser's algorithm).
pub fn squarefree_decomposition(p: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if p.is_constant() {
        return out;
    }
    let f = p.monic();
    let mut c = Poly::gcd(&f, &f.derivative());
    let mut w = f.div_exact(&c).expect("gcd divides");
    let mut i = 1;
    while !c.is_constant() {
        let y = Poly::gcd(&w, &c);
        let z = w.div_exact(&y).expect("gcd divides");
        if !z.is_constant() {
            out.push((z.monic(), i));
        }
        i += 1;
        w = y;
        c = c.div_exact(&w).expect("gcd divides");
    }
    if !w.is_constant() {
        out.push((w.monic(), i));
    }
    out
}

type ZPoly = Vec<BigInt>;

/// Primitive integer multiple with positive leading coefficient.
pub(crate) fn to_primitive(p: &Poly) -> ZPoly {
    let mut l = BigInt::one();
    for a in p.coeffs() {
        l = l.lcm(a.denom());
    }
    let mut v: ZPoly = p.coeffs().iter().map(|a| (a * Q::from_integer(l.clone())).to_integer()).collect();
    let mut g = BigInt::zero();
    for a in &v {
        g = g.gcd(a);
    }
    if !g.is_zero() {
        for a in v.iter_mut() {
            *a /= &g;
        }
    }
    if v.last().is_some_and(|x| x.is_negative()) {
        for a in v.iter_mut() {
            *a = -a.clone();
        }
    }
    v
}

fn from_ints(v: &[BigInt]) -> Poly {
    Poly::new(v.iter().map(|a| Q::from_integer(a.clone())).collect())
}

fn ztrim(mut v: ZPoly) -> ZPoly {
    while v.last().is_some_and(|x| x.is_zero()) {
        v.pop();
    }
    v
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|k| a.get(k).unwrap_or(&z) - b.get(k).unwrap_or(&z)).collect())
}

/// Exact division over the integers, `None` if it does not divide.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let (qq, r) = from_ints(a).divrem(&from_ints(b));
    if !r.is_zero() || qq.coeffs().iter().any(|c| !c.denom().is_one()) {
        return None;
    }
    Some(qq.coeffs().iter().map(|c| c.to_integer()).collect())
}

fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

fn zprimitive(v: ZPoly) -> ZPoly {
    to_primitive(&from_ints(&v))
}

/// Irreducible factors of a primitive square-free integer polynomial.
fn factor_squarefree(f: &ZPoly) -> Vec<ZPoly> {
    let f = ztrim(f.clone());
    if f.len() <= 2 {
        return vec![f];
    }
    let mut out = Vec::new();
    let mut f = f;
    if f[0].is_zero() {
        out.push(vec![BigInt::zero(), BigInt::one()]);
        f.remove(0);
        if f.len() <= 2 {
            out.push(f);
            return out;
        }
    }
    let Some((p, modp)) = choose_prime(&f) else {
        out.push(f);
        return out;
    };
    if modp.len() == 1 {
        out.push(f);
        return out;
    }
    let lifted = hensel_lift(&f, p, &modp);
    out.extend(recombine(&f, &lifted.0, &lifted.1));
    out
}

const PRIME_LIMIT: u64 = 2000;

fn small_primes() -> impl Iterator<Item = u64> {
    (3..PRIME_LIMIT).filter(|&n| (2..).take_while(|d| d * d <= n).all(|d| n % d != 0))
}

/// Pick a prime keeping `f` square-free with the fewest modular factors.
fn choose_prime(f: &ZPoly) -> Option<(u64, Vec<Vec<u64>>)> {
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in small_primes() {
        let lc = f.last().unwrap().mod_floor(&BigInt::from(p));
        if lc.is_zero() {
            continue;
        }
        let fp = reduce(f, p);
        if fp::gcd(&fp, &fp::derivative(&fp, p), p).len() != 1 {
            continue;
        }
        let facs = fp::factor_squarefree(&fp::monic(&fp, p), p);
        let better = best.as_ref().is_none_or(|b| facs.len() < b.1.len());
        if better {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|b| b.1.len() == 1) {
            break;
        }
    }
    best
}

fn reduce(f: &[BigInt], p: u64) -> Vec<u64> {
    let m = BigInt::from(p);
    fp::trim(f.iter().map(|a| a.mod_floor(&m).to_u64().unwrap()).collect())
}

fn lift_to_z(v: &[u64]) -> ZPoly {
    v.iter().map(|&a| BigInt::from(a)).collect()
}

fn l2_bound(f: &[BigInt]) -> BigInt {
    let s: BigInt = f.iter().map(|a| a * a).sum();
    let r = s.sqrt();
    r + 1
}

/// Lift `f = lc * prod(g_i) mod p` to a modulus exceeding twice the
/// coefficient bound for factors. Returns the modulus and monic lifts.
fn hensel_lift(f: &ZPoly, p: u64, modp: &[Vec<u64>]) -> (BigInt, Vec<ZPoly>) {
    let d = f.len() - 1;
    let lc = f.last().unwrap().clone();
    let bound = lc.abs() * (BigInt::one() << d) * l2_bound(f) * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }
    let mut lifted = Vec::new();
    let mut rest = f.clone();
    let r = modp.len();
    for (i, g0) in modp.iter().enumerate().take(r - 1) {
        // h0 = lc * prod of the remaining modular factors.
        let mut h0 = vec![lc.mod_floor(&pb).to_u64().unwrap()];
        for g in &modp[i + 1..] {
            h0 = fp::mul(&h0, g, p);
        }
        let (g, h) = lift_pair(&rest, g0, &h0, p, k, &m);
        lifted.push(g);
        rest = h;
    }
    // The last factor is the monic normalization of what remains.
    let inv = lc.modinv(&m).expect("lc is a unit modulo p^k");
    lifted.push(rest.iter().map(|a| (a * &inv).mod_floor(&m)).collect());
    (m, lifted)
}

/// Linear Hensel lifting of `f = g h` from `p` to `p^k`, with `g` monic and
/// `lc(h) = lc(f)` exactly.
fn lift_pair(f: &ZPoly, g0: &[u64], h0: &[u64], p: u64, k: u32, m: &BigInt) -> (ZPoly, ZPoly) {
    let lc = f.last().unwrap().clone();
    let (s, t) = fp::bezout(g0, h0, p);
    let mut g = lift_to_z(g0);
    let mut h = lift_to_z(h0);
    *h.last_mut().unwrap() = lc.clone();
    let pb = BigInt::from(p);
    let mut pj = pb.clone();
    for _ in 1..k {
        let diff = zsub(f, &zmul(&g, &h));
        let e: Vec<u64> = fp::trim(
            diff.iter()
                .map(|a| {
                    let (qq, r) = a.div_mod_floor(&pj);
                    debug_assert!(r.is_zero(), "Hensel invariant broken");
                    qq.mod_floor(&pb).to_u64().unwrap()
                })
                .collect(),
        );
        if !e.is_empty() {
            let te = fp::mul(&t, &e, p);
            let (quo, sigma) = fp::divrem(&te, g0, p);
            let tau = fp::add(&fp::mul(&s, &e, p), &fp::mul(&quo, h0, p), p);
            for (i, c) in sigma.iter().enumerate() {
                g[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in tau.iter().enumerate() {
                if i >= h.len() {
                    h.push(BigInt::zero());
                }
                h[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &pb;
    }
    let g = g.iter().map(|a| a.mod_floor(m)).collect();
    let last = h.len() - 1;
    let mut h: ZPoly = h.iter().map(|a| a.mod_floor(m)).collect();
    h[last] = lc;
    (g, h)
}

fn recombine(f: &ZPoly, m: &BigInt, lifted: &[ZPoly]) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let mut pool: Vec<ZPoly> = lifted.to_vec();
    let mut size = 1;
    while 2 * size <= pool.len() {
        let mut found = false;
        for subset in combinations(pool.len(), size) {
            let lc = f.last().unwrap().clone();
            let mut g: ZPoly = vec![lc];
            for &i in &subset {
                g = zmul(&g, &pool[i]).iter().map(|a| a.mod_floor(m)).collect();
            }
            let g = zprimitive(g.iter().map(|a| symmetric_mod(a, m)).collect());
            if let Some(quo) = zdiv_exact(&f, &g) {
                out.push(g);
                f = quo;
                let mut next = Vec::new();
                for (i, x) in pool.into_iter().enumerate() {
                    if !subset.contains(&i) {
                        next.push(x);
                    }
                }
                pool = next;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.len() > 1 {
        out.push(zprimitive(f));
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

/// Arithmetic in `F_p[x]` for word-sized odd primes.
mod fp {
    use super::*;

    pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv(a: u64, p: u64) -> u64 {
        powu(a, p - 2, p)
    }

    fn powu(mut a: u64, mut e: u64, p: u64) -> u64 {
        let mut r = 1u64;
        a %= p;
        while e > 0 {
            if e & 1 == 1 {
                r = r * a % p;
            }
            a = a * a % p;
            e >>= 1;
        }
        r
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|k| (a.get(k).unwrap_or(&0) + b.get(k).unwrap_or(&0)) % p).collect())
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        trim((0..n).map(|k| (a.get(k).unwrap_or(&0) + p - b.get(k).unwrap_or(&0)) % p).collect())
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty());
        let mut r = a.to_vec();
        if r.len() < b.len() {
            return (Vec::new(), trim(r));
        }
        let db = b.len() - 1;
        let li = inv(*b.last().unwrap(), p);
        let mut quo = vec![0u64; r.len() - db];
        for k in (0..quo.len()).rev() {
            let t = r[k + db] * li % p;
            if t != 0 {
                for (i, &c) in b.iter().enumerate() {
                    r[k + i] = (r[k + i] + p - t * c % p) % p;
                }
            }
            quo[k] = t;
        }
        r.truncate(db);
        (trim(quo), trim(r))
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&l) => {
                let li = inv(l, p);
                a.iter().map(|&c| c * li % p).collect()
            }
        }
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut x, mut y) = (trim(a.to_vec()), trim(b.to_vec()));
        while !y.is_empty() {
            let r = divrem(&x, &y, p).1;
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        trim(a.iter().enumerate().skip(1).map(|(k, &c)| (k as u64 % p) * c % p).collect())
    }

    /// `s, t` with `s a + t b = 1` for coprime `a, b`.
    pub fn bezout(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (trim(a.to_vec()), trim(b.to_vec()));
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (qq, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&qq, &s1, p), p);
            let t2 = sub(&t0, &mul(&qq, &t1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        assert_eq!(r0.len(), 1, "inputs are not coprime modulo p");
        let li = inv(r0[0], p);
        let sc = |v: &[u64]| trim(v.iter().map(|&c| c * li % p).collect());
        (sc(&s0), sc(&t0))
    }

    fn powmod(base: &[u64], e: &BigUint, m: &[u64], p: u64) -> Vec<u64> {
        let mut r = vec![1u64];
        let mut b = divrem(base, m, p).1;
        for i in 0..e.bits() {
            if e.bit(i) {
                r = divrem(&mul(&r, &b, p), m, p).1;
            }
            b = divrem(&mul(&b, &b, p), m, p).1;
        }
        r
    }

    /// Monic irreducible factors of a monic square-free polynomial.
    pub fn factor_squarefree(f: &[u64], p: u64) -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        let x = vec![0u64, 1];
        let mut rest = f.to_vec();
        let mut h = x.clone();
        let pb = BigUint::from(p);
        let mut i = 1;
        while rest.len() > 2 * i {
            h = powmod(&h, &pb, &rest, p);
            let g = gcd(&sub(&h, &x, p), &rest, p);
            if g.len() > 1 {
                equal_degree(&g, i, p, &mut out);
                rest = divrem(&rest, &g, p).0;
                h = divrem(&h, &rest, p).1;
            }
            i += 1;
        }
        if rest.len() > 1 {
            out.push(monic(&rest, p));
        }
        out.sort();
        out
    }

    fn equal_degree(g: &[u64], d: usize, p: u64, out: &mut Vec<Vec<u64>>) {
        let n = g.len() - 1;
        if n == d {
            out.push(monic(g, p));
            return;
        }
        let e: BigUint = (num_traits::pow(BigUint::from(p), d) - 1u32) / 2u32;
        let mut state = 0x9E37_79B9_7F4A_7C15u64 ^ (n as u64 * 31 + d as u64);
        loop {
            let a: Vec<u64> = (0..n)
                .map(|_| {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    state % p
                })
                .collect();
            let a = trim(a);
            if a.len() < 2 {
                continue;
            }
            let b = sub(&powmod(&a, &e, g, p), &[1], p);
            let c = gcd(&b, g, p);
            if c.len() > 1 && c.len() < g.len() {
                let other = divrem(g, &c, p).0;
                equal_degree(&c, d, p, out);
                equal_degree(&other, d, p, out);
                return;
            }
        }
    }
}
