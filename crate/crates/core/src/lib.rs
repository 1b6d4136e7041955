//! Exact computations with strict polynomial functors: Schur algebras,
//! Day-convolution tensor products, Koszul bar resolutions and the
//! Koszul, Ringel and Serre dualities over `F_p`, `Q` and `Z`.

pub mod error;
pub mod functor;
pub mod homological;
pub mod divided_powers;
pub mod dualities;
pub mod ring;
pub mod schur;
pub mod verify;

pub use error::{Error, Result};
pub use ring::{ExactMatrix, RingSpec, Scalar};
