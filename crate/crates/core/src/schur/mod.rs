//! Schur algebras `S_k(n, d)` and their finite modules.

mod algebra;
mod hom;
mod module;
mod named;

pub use algebra::SchurAlgebra;
pub use hom::{
    hom_dim, hom_matrices, hom_space, is_isomorphic, is_isomorphic_seeded, set_iso_seed, IsoVerdict,
    DEFAULT_SEED,
};
pub use module::{cokernel_projection, AlgebraJson, ModuleJson, ModuleMap, SchurModule, WeightBasis};
pub use named::{
    divided_module, exterior_module, frobenius_kernel_image, gamma_tensor_module,
    gamma_weight_module, lambda_weight_module, permutation_element, regular_module,
    schur_module, simple_module, symmetric_group_functor, symmetric_module,
    symmetric_weight_module, tensor_power_module, weyl_module, SymmetricGroupRep,
};
