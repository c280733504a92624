//! Exact polyhedral kernel and tropical-prevariety certifier for the
//! finiteness of planar central configurations at generic masses.
//!
//! The pipeline builds the distance-based equations of the n-body
//! problem, tropicalizes them for a chosen mass-valuation vector,
//! intersects the tropical hypersurfaces into a polyhedral complex, and
//! certifies that every connected component has a pointed recession
//! cone. All arithmetic is exact, in either checked 64-bit or
//! big-integer mode.

pub mod cell;
pub mod certificate;
pub mod components;
pub mod equations;
pub mod exec;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod num;
pub mod oracle;
pub mod pipeline;
pub mod polyhedron;
pub mod prevariety;
pub mod rays;
pub mod tropical;
pub mod verify;

pub use error::{Error, Result};
pub use num::{Int, Rat};
