//! Directed {m,n} tilings modeled as presheaf data over m-gon categories.
//!
//! An m-gon category fixes a direction for each of the m edges of a polygon
//! and is recorded as a sign tuple ([`EdgeReversalCode`]). A directed tiling
//! assigns every tile such a polygon shape consistently; this crate builds
//! finite patches of those tilings, constructs the reflective alignment for
//! even vertex degree, transforms alignments by edge reversal, and checks the
//! symmetry laws obeyed by reflection-generated alignments.
//!
//! Module map:
//!
//! - [`dihedral`]: the group `D_m` acting on sign tuples and edge indices
//! - [`mgon`]: m-gon categories as codes, orbits, and isomorphism-class counts
//! - [`lambda`]: the level-2 direction group and its restricted subsets
//! - [`reversal`]: reversal-closed subsets of `D_m` and their lifts
//! - [`patch`]: finite tiling patches, validity checks, tracks, geodesics
//! - [`alignment`]: edge reversals, reflection schemes, symmetry checks
//! - [`schema`]: file formats for patches, reversals, and schemes
//! - [`render`]: SVG figures (Euclidean or Poincaré disk)

pub mod alignment;
pub mod dihedral;
pub mod error;
pub mod lambda;
pub mod mgon;
pub mod patch;
pub mod render;
pub mod reversal;
pub mod schema;

pub use alignment::{EdgeReversal, ReflectionScheme};
pub use dihedral::{DihedralElement, EdgeReversalCode, Sign};
pub use error::Error;
pub use lambda::RestrictedDirectionSet;
pub use mgon::MGonCategory;
pub use patch::{CoxeterParams, TilingPatch};
pub use reversal::ReversalClosedSubset;
