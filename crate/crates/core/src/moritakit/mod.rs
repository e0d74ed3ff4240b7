//! Cells between bialgebroids, the hom functor they induce, strongness,
//! endomorphism bialgebroids and Morita verdicts.

mod cell;
mod endo;
mod frobenius;
mod hp;
mod verdict;

pub use cell::{cell_multimodule, check_one_cell, check_two_cell, pointwise_comonoid, pullback_cell, OneCell, TwoCell};
pub use endo::{
    endo_data, endomorphism_bialgebroid, lambda_map, source_of, strongness_check, target_of, EndoBialgebroid, EndoData,
    StrongRoute, Strongness,
};
pub use frobenius::{antipode, frobenius_check, pointwise_frobenius, FrobeniusData, FrobeniusReport};
pub use hp::{ha_on_map, hp_apply, hp_monoidal_maps, is_invertible, map2_naturality, HaModule, MonoidalMaps};
pub use verdict::{
    compose_bgd, compose_bgd_presented, hom_adjunction_dims, morita_verdict, MoritaVerdict, MORITA_ORDER,
};
