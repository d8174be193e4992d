//! Stabilizer, CSS and homological quantum codes over GF(2).
//!
//! Everything here is `no_std` with `alloc`. File formats, parallel drivers
//! and the command line live in the `syscodes` crate.

#![no_std]

extern crate alloc;

pub mod chain_complex;
pub mod css;
pub mod gf2;
pub mod hyperbolic;
pub mod pauli;
pub mod search;
pub mod stabilizer;
pub mod surface_family;

pub use chain_complex::{
    homological_code, homological_code_bounded, homological_code_checked, CellComplex, ComplexError, Dart,
    DistanceRoute, HomologicalCode, SurfaceData, Systole,
};
pub use css::{build_css, CssCode, CssError};
pub use gf2::{BitMatrix, BitVector, Gf2Error};
pub use pauli::{encode, twisted_product, Letter, PauliElement, PauliError};
pub use stabilizer::{CodeParameters, StabilizerCode, StabilizerError};
pub use surface_family::{bound_scan, FamilyDescriptor, FamilyError, FamilyMember};
