//! Selmer-type computations on filtered `(phi, N)` Lie data: the monodromy
//! cocycle, cocycle spaces and their normal forms, cofaces, and dimension
//! formulas.

pub mod cocycle;
pub mod curve;
pub mod dims;
pub mod examples;
pub mod lie;
pub mod normalize;

use num_bigint::BigInt;

use crate::mixedfilt::MixedError;

pub use cocycle::{act_e, act_f, act_g, z1g_check, D0Point, D1Point, D2Point, GCocycle};
pub use curve::{curve_selmer_dim, curve_selmer_oracle, necklace, necklace_upto, CurveSelmerInput, Label};
pub use dims::{selmer_dims, SelmerDims};
pub use lie::PhiNLieDatum;
pub use normalize::{normalize_f, normalize_g, normalize_g_by_solve, vge, GNormalForm, Vge};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SelmerError {
    #[error("p = {0} is not a prime power")]
    BadP(BigInt),
    #[error("shape: {0}")]
    Shape(String),
    #[error("bracket: {0}")]
    Bracket(String),
    #[error("operators: {0}")]
    Operator(String),
    #[error("filtration: {0}")]
    Filtration(String),
    #[error("Lie algebra is not nilpotent")]
    NotNilpotent,
    #[error("not mixed: graded pieces of weight {0:?} are not pure")]
    NotMixed(Vec<i64>),
    #[error("weight {0} is not negative")]
    NonNegativeWeight(i64),
    #[error("z is not in the F0 subgroup")]
    NotInF0,
    #[error("element is not crystalline (log is not killed by N)")]
    NotCrystalline,
    #[error("phi - 1 is not invertible on the crystalline part")]
    PhiMinusOneSingular,
    #[error("p^-{j} phi - 1 is not invertible on the block (W index {i}, j = {j})")]
    BlockSingular { i: i64, j: usize },
    #[error("cocycle condition fails")]
    NotCocycle,
    #[error("normalization did not converge")]
    NoConvergence,
    #[error("vge computed two ways disagrees")]
    VgeMismatch,
    #[error("curve input: {0}")]
    Curve(String),
    #[error(transparent)]
    Mixed(#[from] MixedError),
}

#[cfg(test)]
pub(crate) fn random_vec(rng: &mut impl rand::Rng, d: usize) -> Vec<crate::exact::Q> {
    (0..d).map(|_| crate::exact::Q::new(rng.gen_range(-4i64..=4).into(), rng.gen_range(1i64..=3).into())).collect()
}
