//! Computation engine for finite frames, their congruence lattices and
//! strictly zero-dimensional biframes.
//!
//! Everything here is finite and tabulated: frames are finite
//! distributive lattices with explicit meet/join/implication tables,
//! congruences are nucleus tables, and the categorical constructions
//! (coreflection, fibres, limits and colimits, the congruence-frame
//! recognizer, Skula biframes of finite T0 spaces) are computed
//! exhaustively and cross-checked against independent definitions.

pub mod biframe;
pub mod category;
pub mod clear;
pub mod congruence;
pub mod enumerate;
pub mod error;
pub mod frame;
pub mod hom;
pub mod json;
pub mod poset;
pub mod space;

pub use error::{Error, Result};
pub use frame::{build_frame, downset_frame, Frame, FrameRef};
pub use poset::FinitePoset;

/// Hard cap on the size of any frame accepted as input (JSON ingestion,
/// enumeration requests). Overridable via the `STR0D_HARD_CAP`
/// environment variable. Internally derived frames such as congruence
/// lattices are bounded separately by the join-irreducible cap.
pub fn hard_cap() -> usize {
    std::env::var("STR0D_HARD_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(20)
}

/// Congruence lattices are materialised only when the base frame has at
/// most this many join-irreducibles (|C L| = 2^|J(L)| in the finite case).
pub const JOIN_IRREDUCIBLE_CAP: usize = 12;
