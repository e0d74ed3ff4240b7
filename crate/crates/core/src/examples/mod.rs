//! Constructions of cells and bialgebroids: Azumaya algebras, blow-ups,
//! Drinfeld twists and base change along a Morita equivalence.

mod azumaya;

pub use azumaya::{azumaya_inverse_cell, build_azumaya_cell};
mod blowup;

pub use blowup::{build_blowup, build_blowup_with, Blowup, BlowupCounit};
mod twist;

pub use twist::{apply_drinfeld_twist, build_bicharacter_twist, check_twist, group_characters, TwistData, Twisted};
mod basechange;

pub use basechange::{sqm_base_change, BaseChange, BaseChangeData};
mod nonstrong;

pub use nonstrong::with_trivial_summand;
