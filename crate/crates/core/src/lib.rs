//! Exact-arithmetic analysis of Boolean functions on the cube: Walsh
//! spectra, influences, degrees, additive energy of the support, minimal
//! monochromatic subcube partitions, and the uncertainty inequalities that
//! tie them together.

pub mod bits;
pub mod cube;
pub mod energy;
pub mod error;
pub mod inequality;
pub mod partition;
pub mod spectral;
pub mod verify;

pub use cube::{BooleanFunction, Family, FamilySpec, PointSet};
pub use error::{Error, Result};
pub use partition::{Subcube, SubcubePartition};
pub use spectral::{AnfForm, Spectrum};
