//! Exact correspondence between crystallographic hyperplane arrangements and
//! strongly symmetric smooth complete fans.
//!
//! The crate goes in both directions: from an arrangement it enumerates the
//! chambers and builds the chamber fan, and from a fan it recovers the root
//! system. Around that it computes the derived objects: the vertex polytope
//! and its sign-vector embedding data, star and restriction fans, the
//! intersection poset, the rank-two circular graphs with their divisor
//! classes, blowup certificates for inserted hyperplanes, and fan
//! automorphisms. All arithmetic is exact.

pub mod arrangement;
pub mod catalog;
pub mod error;
pub mod fan;
pub mod io;
pub mod linalg;
pub mod polytope;
pub mod poset;
pub mod surface;

pub use arrangement::{Arrangement, Chamber, CrystallographicReport, SignedRoot};
pub use error::{Error, Result};
pub use fan::{BlowupCertificate, Fan, PropertyReport};
pub use linalg::{IntMatrix, IntVec};
pub use polytope::{HalfLatticePolytope, PhiCertificate, SignVector};
pub use poset::{FlatSubspace, IntersectionPoset};
pub use surface::{CircularGraph, DivisorClass};
