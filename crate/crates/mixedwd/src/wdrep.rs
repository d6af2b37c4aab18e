//! Weil-Deligne representations with trivial inertia: a Frobenius matrix
//! `phi` and a nilpotent monodromy `n` with `n phi = q phi n`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exact::factor::{factor_z, FactorError};
use crate::exact::{char_poly, q, qpow_z, weil_weight, Matrix, Poly, Subspace, Q};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WdError {
    #[error("phi and N must be square of equal size (phi {0}x{1}, N {2}x{3})")]
    Shape(usize, usize, usize, usize),
    #[error("q = {0} is not a prime power")]
    BadQ(BigInt),
    #[error("residue cardinalities differ: {0} vs {1}")]
    QMismatch(BigInt, BigInt),
    #[error("axioms fail: {}", .0.violations.join("; "))]
    Axioms(AxiomReport),
    #[error("characteristic polynomial factor of degree {0} is too large to factor")]
    Factor(usize),
}

impl From<FactorError> for WdError {
    fn from(e: FactorError) -> Self {
        match e {
            FactorError::TooLarge(d) => WdError::Factor(d),
            FactorError::Zero => unreachable!("characteristic polynomials are monic"),
        }
    }
}

#[derive(Clone, PartialEq, Eq)]
pub struct WDRep {
    q: BigInt,
    phi: Matrix,
    n: Matrix,
}

/// Outcome of [`WDRep::check_axioms`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub invertible: bool,
    pub nilpotent: bool,
    pub commutation: bool,
    pub violations: Vec<String>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Generalized eigenspaces grouped by Weil weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDecomposition {
    pub parts: BTreeMap<i64, Subspace>,
    /// Sum of the generalized eigenspaces whose factors are not Weil numbers.
    pub unclassified: Subspace,
}

impl WeightDecomposition {
    pub fn part(&self, i: i64) -> Subspace {
        self.parts.get(&i).cloned().unwrap_or_else(|| Subspace::zero(self.unclassified.ambient()))
    }
}

/// One rank comparison in a purity certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityStep {
    pub j: i64,
    pub dim_upper: usize,
    pub dim_lower: usize,
    pub rank: usize,
}

impl PurityStep {
    pub fn holds(&self) -> bool {
        self.dim_upper == self.dim_lower && self.rank == self.dim_upper
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PurityCertificate {
    pub weight: i64,
    pub pure: bool,
    pub unclassified_dim: usize,
    /// `N^j : V^(i+j) -> V^(i-j)` for each `j`.
    pub steps: Vec<PurityStep>,
}

/// Whether `n` is a power of a single prime.
pub fn is_prime_power(n: &BigInt) -> bool {
    if *n < BigInt::from(2) {
        return false;
    }
    let mut m = n.clone();
    let mut d = BigInt::from(2);
    while &d * &d <= m {
        if (&m % &d).is_zero() {
            while (&m % &d).is_zero() {
                m /= &d;
            }
            return m.is_one();
        }
        d += 1;
    }
    true
}

impl WDRep {
    /// Validated constructor.
    pub fn new(q: BigInt, phi: Matrix, n: Matrix) -> Result<Self, WdError> {
        let rep = WDRep::unchecked(q, phi, n)?;
        let report = rep.check_axioms();
        if report.ok() {
            Ok(rep)
        } else {
            Err(WdError::Axioms(report))
        }
    }

    /// Shape and `q` checks only; use [`WDRep::check_axioms`] for the rest.
    pub fn unchecked(q: BigInt, phi: Matrix, n: Matrix) -> Result<Self, WdError> {
        if !phi.is_square() || !n.is_square() || phi.rows() != n.rows() {
            return Err(WdError::Shape(phi.rows(), phi.cols(), n.rows(), n.cols()));
        }
        if !is_prime_power(&q) {
            return Err(WdError::BadQ(q));
        }
        Ok(WDRep { q, phi, n })
    }

    pub fn dim(&self) -> usize {
        self.phi.rows()
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn q_rat(&self) -> Q {
        Q::from_integer(self.q.clone())
    }

    pub fn phi(&self) -> &Matrix {
        &self.phi
    }

    pub fn n(&self) -> &Matrix {
        &self.n
    }

    pub fn check_axioms(&self) -> AxiomReport {
        let mut violations = Vec::new();
        let invertible = self.dim() == 0 || !self.phi.det().is_zero();
        if !invertible {
            violations.push("phi is not invertible".to_string());
        }
        let nilpotent = self.n.is_nilpotent();
        if !nilpotent {
            violations.push("N is not nilpotent".to_string());
        }
        let lhs = &self.n * &self.phi;
        let rhs = (&self.phi * &self.n).scale(&self.q_rat());
        let commutation = lhs == rhs;
        if !commutation {
            violations.push("N phi != q phi N".to_string());
        }
        AxiomReport {
            invertible,
            nilpotent,
            commutation,
            violations,
        }
    }

    /// The trivial representation of dimension `d`.
    pub fn trivial(q: BigInt, d: usize) -> Result<Self, WdError> {
        WDRep::new(q, Matrix::identity(d), Matrix::zeros(d, d))
    }

    /// `std_j(r)`: `phi(z^s) = q^(-s-r) z^s`, `N(z^s) = (j-s) z^(s+1)`.
    pub fn make_std(j: usize, qq: BigInt, r: i64) -> Result<Self, WdError> {
        let phi = Matrix::diag(&(0..=j).map(|s| qpow_z(&qq, -(s as i64) - r)).collect::<Vec<_>>());
        let mut n = Matrix::zeros(j + 1, j + 1);
        for s in 0..j {
            n[(s + 1, s)] = q((j - s) as i64);
        }
        WDRep::new(qq, phi, n)
    }

    fn same_q(&self, o: &WDRep) -> Result<(), WdError> {
        if self.q == o.q {
            Ok(())
        } else {
            Err(WdError::QMismatch(self.q.clone(), o.q.clone()))
        }
    }

    /// Basis `a_i ⊗ b_j` with `j` fastest.
    pub fn tensor(&self, o: &WDRep) -> Result<WDRep, WdError> {
        self.same_q(o)?;
        let ia = Matrix::identity(self.dim());
        let ib = Matrix::identity(o.dim());
        Ok(WDRep {
            q: self.q.clone(),
            phi: self.phi.kron(&o.phi),
            n: &self.n.kron(&ib) + &ia.kron(&o.n),
        })
    }

    pub fn dual(&self) -> WDRep {
        let inv = self.phi.inverse().expect("phi is invertible");
        WDRep {
            q: self.q.clone(),
            phi: inv.transpose(),
            n: -&self.n.transpose(),
        }
    }

    /// Tate twist: `phi -> q^(-k) phi`.
    pub fn twist(&self, k: i64) -> WDRep {
        WDRep {
            q: self.q.clone(),
            phi: self.phi.scale(&qpow_z(&self.q, -k)),
            n: self.n.clone(),
        }
    }

    pub fn direct_sum(&self, o: &WDRep) -> Result<WDRep, WdError> {
        self.same_q(o)?;
        Ok(WDRep {
            q: self.q.clone(),
            phi: Matrix::block_diag(&[&self.phi, &o.phi]),
            n: Matrix::block_diag(&[&self.n, &o.n]),
        })
    }

    /// The restriction to a stable subspace, in the coordinates of `basis`.
    pub fn restrict(&self, basis: &Matrix) -> Option<WDRep> {
        let phi = basis.solve(&(&self.phi * basis))?;
        let n = basis.solve(&(&self.n * basis))?;
        Some(WDRep {
            q: self.q.clone(),
            phi,
            n,
        })
    }

    /// Generalized eigenspaces of each irreducible factor of the
    /// characteristic polynomial, with the factor's Weil weight if any.
    pub fn primary_parts(&self) -> Result<Vec<(Poly, Option<i64>, Subspace)>, WdError> {
        let d = self.dim();
        if d == 0 {
            return Ok(Vec::new());
        }
        let cp = char_poly(&self.phi).expect("phi is square");
        let rad = cp.squarefree_part();
        let fac = factor_z(&rad)?;
        let mut out = Vec::new();
        for (f, _) in fac.factors {
            let m = f.eval_matrix(&self.phi);
            let mut k = Subspace::kernel(&m);
            loop {
                let next = k.preimage(&m).expect("square");
                if next == k {
                    break;
                }
                k = next;
            }
            let w = weil_weight(&f, &self.q).expect("nonconstant factor, valid q");
            out.push((f, w, k));
        }
        Ok(out)
    }

    pub fn weight_spaces(&self) -> Result<WeightDecomposition, WdError> {
        let d = self.dim();
        let mut parts: BTreeMap<i64, Subspace> = BTreeMap::new();
        let mut unclassified = Subspace::zero(d);
        for (_, w, k) in self.primary_parts()? {
            match w {
                Some(i) => {
                    let e = parts.entry(i).or_insert_with(|| Subspace::zero(d));
                    *e = e.sum(&k).expect("same ambient");
                }
                None => unclassified = unclassified.sum(&k).expect("same ambient"),
            }
        }
        Ok(WeightDecomposition { parts, unclassified })
    }

    pub fn is_pure(&self, i: i64) -> Result<PurityCertificate, WdError> {
        let ws = self.weight_spaces()?;
        Ok(purity_from(self, &ws, i))
    }

    /// Whether `phi` is semisimple, i.e. its minimal polynomial is square-free.
    pub fn is_frobenius_semisimple(&self) -> bool {
        if self.dim() == 0 {
            return true;
        }
        let cp = char_poly(&self.phi).expect("phi is square");
        cp.squarefree_part().eval_matrix(&self.phi).is_zero()
    }
}

pub(crate) fn purity_from(rep: &WDRep, ws: &WeightDecomposition, i: i64) -> PurityCertificate {
    let unclassified_dim = ws.unclassified.dim();
    let reach = ws.parts.keys().map(|w| (w - i).abs()).max().unwrap_or(0);
    let mut steps = Vec::new();
    let mut npow = Matrix::identity(rep.dim());
    for j in 0..=reach {
        let upper = ws.part(i + j);
        let lower = ws.part(i - j);
        let rank = (&npow * upper.basis()).rank();
        steps.push(PurityStep {
            j,
            dim_upper: upper.dim(),
            dim_lower: lower.dim(),
            rank,
        });
        npow = &npow * rep.n();
    }
    let pure = unclassified_dim == 0 && steps.iter().all(PurityStep::holds);
    PurityCertificate {
        weight: i,
        pure,
        unclassified_dim,
        steps,
    }
}

impl std::fmt::Debug for WDRep {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("WDRep")
            .field("q", &self.q)
            .field("phi", &self.phi)
            .field("N", &self.n)
            .finish()
    }
}

/// Weight of a single rational eigenvalue, a shortcut used by generators.
pub fn rational_weight(lambda: &Q, q: &BigInt) -> Option<i64> {
    weil_weight(&Poly::linear_root(lambda.clone()), q).ok().flatten()
}
