pub mod cellmod;
pub mod cells;
pub mod error;
pub mod filtration;
pub mod hecke;
pub mod induced;
pub mod laurent;
pub mod parabolic;
pub mod relations;
pub mod symgroup;
pub mod tables;

pub use cellmod::CellModule;
pub use cells::{CellDecomposition, RskConvention};
pub use error::{Error, Result};
pub use hecke::{HeckeElt, KlTable};
pub use induced::{FourBases, InducedModule};
pub use laurent::{LaurentPoly, Matrix, RationalFunction};
pub use parabolic::{ParabolicKind, ParabolicModule, TwistingAction};
pub use symgroup::{ParabolicData, Partition, Permutation, SymGroup};
pub use tables::Tables;
