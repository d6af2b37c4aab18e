//! Clebsch-Gordan generators in `std_j1 ⊗ std_j2`.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::exact::rational::binom;
use crate::exact::{Matrix, Subspace, Q};
use crate::wdrep::WDRep;

/// For each `r <= min(j1, j2)`, the generator of the summand
/// `std_(j1+j2-2r)(r)`, on the basis `z^r1 ⊗ z^r2` at index `r1 (j2+1) + r2`.
///
/// The generator `sum (-1)^r2 C(r, r1) z^r1 ⊗ z^r2` is killed by the raising
/// operator `z^s -> s z^(s-1)`, so its `N`-orbit has length `j1 + j2 - 2r + 1`.
pub fn clebsch_gordan(j1: usize, j2: usize) -> Vec<(usize, Vec<Q>)> {
    let n = (j1 + 1) * (j2 + 1);
    (0..=j1.min(j2))
        .map(|r| {
            let mut v = vec![Q::zero(); n];
            for r1 in 0..=r {
                let r2 = r - r1;
                if r1 > j1 || r2 > j2 {
                    continue;
                }
                let mut c = binom(r as u64, r1 as u64);
                if r2 % 2 == 1 {
                    c = -c;
                }
                v[r1 * (j2 + 1) + r2] = c;
            }
            (r, v)
        })
        .collect()
}

/// Checks each generator is a Frobenius eigenvector of eigenvalue `q^-r`
/// with `N`-orbit of length exactly `j1 + j2 - 2r + 1`, and that the orbits
/// together span the tensor product.
pub fn verify_clebsch_gordan(j1: usize, j2: usize, q: &BigInt) -> bool {
    let a = WDRep::make_std(j1, q.clone(), 0).expect("valid q");
    let b = WDRep::make_std(j2, q.clone(), 0).expect("valid q");
    let t = a.tensor(&b).expect("same q");
    let n = t.dim();
    let mut orbit = Vec::new();
    for (r, g) in clebsch_gordan(j1, j2) {
        let lambda = crate::exact::qpow_z(q, -(r as i64));
        let phig = t.phi().mul_vec(&g);
        if phig.iter().zip(&g).any(|(x, y)| *x != &lambda * y) {
            return false;
        }
        let j = j1 + j2 - 2 * r;
        let mut x = g;
        for _ in 0..=j {
            if x.iter().all(|c| c.is_zero()) {
                return false;
            }
            orbit.push(x.clone());
            x = t.n().mul_vec(&x);
        }
        if !x.iter().all(|c| c.is_zero()) {
            return false;
        }
    }
    orbit.len() == n && Subspace::span(n, &orbit).is_full() && Matrix::from_cols(n, &orbit).rank() == n
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn one_by_one() {
        let g = clebsch_gordan(1, 1);
        assert_eq!(g[0].1, vec![q(1), q(0), q(0), q(0)]);
        assert_eq!(g[1].1, vec![q(0), q(-1), q(1), q(0)]);
        assert!(verify_clebsch_gordan(1, 1, &BigInt::from(3)));
    }

    #[test]
    fn small_grid() {
        for j1 in 0..=4 {
            for j2 in 0..=4 {
                assert!(verify_clebsch_gordan(j1, j2, &BigInt::from(2)), "{j1} {j2}");
                let dims: usize = (0..=j1.min(j2)).map(|r| j1 + j2 - 2 * r + 1).sum();
                assert_eq!(dims, (j1 + 1) * (j2 + 1));
            }
        }
    }
}
