pub mod algkit;
pub mod bgdkit;
pub mod cgdkit;
pub mod error;
pub mod exactfield;
pub mod examples;
pub mod modkit;
pub mod moritakit;
pub mod report;
pub mod serial;

pub use algkit::{Alg, AlgebraMap, FiniteAlgebra};
pub use bgdkit::Bialgebroid;
pub use cgdkit::Coalgebroid;
pub use error::{Error, Result};
pub use exactfield::{Field, LinMap, Matrix, SVec, Scalar};
pub use modkit::Bimodule;
pub use moritakit::{OneCell, TwoCell};
pub use report::Report;
pub use serial::Workspace;
