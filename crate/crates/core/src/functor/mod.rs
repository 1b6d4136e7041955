//! Strict polynomial functors given by free functors, presentations, or
//! modules evaluated on arbitrary spaces.

mod extension;
mod free;
mod generators;
mod piece;
mod presented;

pub use extension::{extend_map, Extension};
pub use free::{
    day_tensor_free, day_tensor_mor, eval_free, eval_morphism, internal_hom_free, FreeFunctor,
    FreeFunctorJson, FreeSummand, FunctorMorphism, MorphismJson, SummandJson,
};
pub use generators::{weight_generators, WeightGenerator};
pub use piece::{diagonal_weights, Piece, Side};
pub use presented::{
    cover_matrix, day_tensor, day_tensor_modules, free_cover, internal_hom, kuhn_dual_presented,
    morphism_from_vectors, presentation_from_module, projective_functor, tensor_with_module,
    weight_summand, PresentedFunctor, PresentedJson,
};

pub(crate) use presented::{hom_matrix, sum_module, tensor_matrix};
