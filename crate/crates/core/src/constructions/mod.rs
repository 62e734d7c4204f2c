//! Explicit constructions: single-place elements, invariant maps built from
//! a base table, perturbed maps and tower prefixes.

mod class_number;
mod invariant;
mod perturbed;
mod single_place;
mod stabilizer;
mod tower;

pub use class_number::{class_number_imag_quadratic, is_fundamental};
pub use invariant::{invariant_map_from_base, qi_worked_example};
pub use perturbed::{
    default_epsilons, maximal_subfields, perturbed_open_subgroup_map,
    perturbed_open_subgroup_map_with, PerturbationScheme, PerturbedPlace,
    DEFAULT_PRIME_SEARCH_BOUND,
};
pub use single_place::{single_place_element, SinglePlaceElement, DEFAULT_SEARCH_BOUND};
pub use stabilizer::{stabilizer_probe, StabilizerReport, StabilizerWitness};
pub use tower::{step_radius, tower_map_prefix, EpsilonRecord, TowerPrefix};
