//! The Selmer dimension of a curve's fundamental group, in closed form and
//! by Lyndon word enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::SelmerError;
use crate::exact::Q;
use crate::pi1::{lyndon_count, lyndon_words};

/// A weight-one eigenvalue, as an element of the abelian group generated by
/// `s` (a square root of `q`), `t` (`t^2 = 1`) and `u_1, u_2, ...`.
/// `S` is `sqrt q`, `St` is `-sqrt q`, and `U(k, e)` is `s u_k^e`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Label {
    S,
    St,
    U(u32, i8),
}

impl Label {
    /// The label of `q / lambda`.
    pub fn partner(self) -> Label {
        match self {
            Label::U(k, e) => Label::U(k, -e),
            l => l,
        }
    }

    fn element(self) -> GroupElt {
        let mut u = BTreeMap::new();
        let t = match self {
            Label::S => 0,
            Label::St => 1,
            Label::U(k, e) => {
                u.insert(k, e as i64);
                0
            }
        };
        GroupElt { s: 1, t, u }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::S => write!(f, "s"),
            Label::St => write!(f, "st"),
            Label::U(k, 1) => write!(f, "u{k}"),
            Label::U(k, _) => write!(f, "u{k}^-1"),
        }
    }
}

impl FromStr for Label {
    type Err = SelmerError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SelmerError::Curve(format!("bad eigenvalue label {s:?}"));
        match s {
            "s" => return Ok(Label::S),
            "st" => return Ok(Label::St),
            _ => {}
        }
        let rest = s.strip_prefix('u').ok_or_else(bad)?;
        let (num, e) = match rest.strip_suffix("^-1") {
            Some(n) => (n, -1),
            None => (rest, 1),
        };
        let k: u32 = num.parse().map_err(|_| bad())?;
        if k == 0 || num.starts_with('+') {
            return Err(bad());
        }
        Ok(Label::U(k, e))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
struct GroupElt {
    s: i64,
    t: u8,
    u: BTreeMap<u32, i64>,
}

impl GroupElt {
    fn one() -> Self {
        GroupElt { s: 0, t: 0, u: BTreeMap::new() }
    }

    fn q() -> Self {
        GroupElt { s: 2, t: 0, u: BTreeMap::new() }
    }

    fn mul(&self, o: &GroupElt) -> GroupElt {
        let mut u = self.u.clone();
        for (&k, &e) in &o.u {
            let x = u.entry(k).or_insert(0);
            *x += e;
            if *x == 0 {
                u.remove(&k);
            }
        }
        GroupElt { s: self.s + o.s, t: (self.t + o.t) % 2, u }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveSelmerInput {
    pub g: u64,
    pub g0: u64,
    pub n: u64,
    pub deg: u64,
    /// Multiplicity of every label, closed under `partner`.
    pub nu: BTreeMap<Label, u64>,
}

impl CurveSelmerInput {
    /// A label whose partner is absent gets the partner with the same
    /// multiplicity.
    pub fn new(g: u64, g0: u64, n: u64, deg: u64, nu: &[(Label, u64)]) -> Result<Self, SelmerError> {
        let err = |m: String| Err(SelmerError::Curve(m));
        if g == 0 {
            return err("g must be at least 1".into());
        }
        if g0 > g {
            return err(format!("g0 = {g0} exceeds g = {g}"));
        }
        if n == 0 || deg == 0 {
            return err("n and deg must be at least 1".into());
        }
        let mut m: BTreeMap<Label, u64> = BTreeMap::new();
        for &(l, k) in nu {
            if m.insert(l, k).is_some() {
                return err(format!("label {l} given twice"));
            }
        }
        for (l, k) in m.clone() {
            let p = l.partner();
            match m.get(&p) {
                None => {
                    m.insert(p, k);
                }
                Some(&kp) if kp != k => return err(format!("nu({l}) = {k} but nu({p}) = {kp}")),
                _ => {}
            }
        }
        m.retain(|_, k| *k > 0);
        let total: u64 = m.values().sum();
        if total != 2 * (g - g0) {
            return err(format!("multiplicities sum to {total}, expected 2(g - g0) = {}", 2 * (g - g0)));
        }
        Ok(CurveSelmerInput { g, g0, n, deg, nu: m })
    }

    fn mult(&self, l: Label) -> u64 {
        self.nu.get(&l).copied().unwrap_or(0)
    }
}

/// Number of Lyndon words of length `i` on `t` letters.
pub fn necklace(t: &BigInt, i: u64) -> Q {
    Q::from(lyndon_count(t, i))
}

pub fn necklace_upto(t: &BigInt, n: u64) -> Q {
    (1..=n).map(|i| necklace(t, i)).sum()
}

fn hodge_term(inp: &CurveSelmerInput) -> Q {
    let l2g = necklace_upto(&BigInt::from(2 * inp.g), inp.n);
    let lg = necklace_upto(&BigInt::from(inp.g), inp.n);
    Q::from(BigInt::from(inp.deg)) * (l2g - lg)
}

fn to_usize(x: Q) -> usize {
    assert!(x.is_integer() && x >= Q::zero(), "dimension {x} is not a natural number");
    x.to_integer().try_into().expect("fits")
}

/// `(dim_ef, dim_g)` from the closed formula.
pub fn curve_selmer_dim(inp: &CurveSelmerInput) -> (usize, usize) {
    let g0 = Q::from(BigInt::from(inp.g0));
    let n = inp.n;
    let pw = |k: u64| -> Q {
        let mut r = Q::one();
        for _ in 0..k {
            r *= &g0;
        }
        r
    };
    let half = Q::new(BigInt::one(), BigInt::from(2));
    let geo: Q = (1..=n).map(pw).sum();
    let c2: Q = &half * (2..=n).map(|i| Q::from(BigInt::from(i - 1)) * pw(i - 2)).sum::<Q>();
    let h: Q = &half * (0..n / 2).map(pw).sum::<Q>();
    let sq: u64 = inp.nu.values().map(|k| k * k).sum();
    let signs = inp.mult(Label::S) + inp.mult(Label::St);
    let ef = hodge_term(inp);
    let g = &ef - necklace_upto(&BigInt::from(inp.g0), n) + geo + c2 * Q::from(BigInt::from(sq))
        - h * Q::from(BigInt::from(signs));
    (to_usize(ef), to_usize(g))
}

/// `dim_g` by counting Lyndon words whose eigenvalue is `q`, minus those
/// whose eigenvalue is `1`, over all lengths up to `n`.
pub fn curve_selmer_oracle(inp: &CurveSelmerInput) -> usize {
    let mut alphabet = Vec::new();
    for _ in 0..inp.g0 {
        alphabet.push(GroupElt::one());
        alphabet.push(GroupElt::q());
    }
    for (&l, &k) in &inp.nu {
        for _ in 0..k {
            alphabet.push(l.element());
        }
    }
    let (one, q) = (GroupElt::one(), GroupElt::q());
    let mut corr: i64 = 0;
    for i in 1..=inp.n as usize {
        for w in lyndon_words(alphabet.len(), i) {
            let e = w.iter().fold(GroupElt::one(), |acc, &a| acc.mul(&alphabet[a]));
            if e == q {
                corr += 1;
            } else if e == one {
                corr -= 1;
            }
        }
    }
    to_usize(hodge_term(inp) + Q::from(BigInt::from(corr)))
}
