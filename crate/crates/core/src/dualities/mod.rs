//! Koszul duality `Λ^d ⊗^L −` and its inverse, the contravariant duality
//! `RHom(−, Λ^d)`, the Ringel tilting module and Serre functor checks.

mod koszul;
mod ringel;
mod serre;

pub use koszul::{
    bar_resolution, contravariant_koszul, contravariant_koszul_complex, identify, koszul,
    koszul_complex, koszul_inverse, koszul_inverse_complex, koszul_inverse_internal,
    koszul_power, koszul_via_resolution, standard_modules, KoszulResult,
};
pub use ringel::{ringel_commutes_check, ringel_data, RingelData, RingelDegree, RingelReport};
pub use serre::{serre_check, serre_functor, square_check, SerreReport, SerreRow};
