//! Multiple schemes over Laurent charts: atlases of truncated rings, their
//! cohomology, blowups and the catalog of first-order thickenings of P².

pub mod error;
pub mod laurent;
pub mod truncated;
pub mod atlas;
pub mod linalg;
pub mod cohomology;
pub mod catalog;
pub mod blowup;
pub mod good_points;
pub mod io;

pub use error::{Error, Result};
