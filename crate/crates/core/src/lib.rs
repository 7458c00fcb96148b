//! Exact computations around double solids branched over nodal surfaces.
//!
//! The crate covers:
//!
//! * exact linear algebra over `Q` and prime fields ([`algebra`]),
//! * homogeneous quaternary forms ([`poly`]),
//! * node configurations, vanishing dimensions and the defect ([`nodal`]),
//! * binary codes of even node sets ([`evencode`]) and their isomorph-free
//!   classification for quartics ([`classify`]),
//! * closed-form node and code-dimension bounds ([`bounds`]),
//! * the finite-field scan of symmetroid nodes ([`symmetroid`]) and the
//!   truncated series expansion used to check its Hilbert series ([`series`]).

pub mod algebra;
pub mod bounds;
pub mod classify;
pub mod error;
pub mod evencode;
pub mod nodal;
pub mod poly;
pub mod series;
pub mod symmetroid;

pub use error::{Error, Result};
