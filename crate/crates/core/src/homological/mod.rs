//! Bounded complexes, homology, the bar resolutions of `Λ^d` and `S^d`,
//! derived tensor products and Ext.

mod bar;
mod complex;
mod derived;
mod homology;
mod json;
mod resolution;

pub use bar::{
    bar_complex, koszul_resolution_exterior, koszul_resolution_symmetric, positive_cut,
    presentation_exterior, presentation_symmetric, KoszulResolution, BAR_CONVENTION,
};
pub use complex::{ChainComplex, FreeComplex, LinearComplex};
pub use derived::{derived_tensor, derived_tensor_complex, internal_rhom, internal_rhom_complex};
pub use homology::{
    homology, homology_json, linear_homology, HomologyDegree, HomologyDegreeJson, HomologyReport,
};
pub use json::ComplexJson;
pub use resolution::{
    derived_hom, ext_groups, free_resolution, hom_complex, hom_free_complex,
    FreeResolution,
};
