use thiserror::Error;

/// Errors surfaced by lattice construction, validation and the
/// theorem cross-checks.
///
/// The last four variants are internal consistency checks that hold as
/// theorems on every finite instance; if one ever fires it is a bug, not
/// a property of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate element label {0:?}")]
    DuplicateLabel(String),
    #[error("order is not antisymmetric: {0:?} <= {1:?} and {1:?} <= {0:?}")]
    NotAntisymmetric(String, String),
    #[error("not a lattice: {x:?} and {y:?} have no {kind}")]
    NotLattice { x: String, y: String, kind: &'static str },
    #[error("not distributive: x={x:?}, y={y:?}, z={z:?} violate x/\\(y\\/z) = (x/\\y)\\/(x/\\z)")]
    NotDistributive { x: String, y: String, z: String },
    #[error("not a frame homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("{what}: size {size} exceeds bound {bound}")]
    BoundExceeded {
        what: &'static str,
        size: usize,
        bound: usize,
    },
    #[error("part {part} is not a subframe: {reason}")]
    PartNotSubframe { part: u8, reason: String },
    #[error("the two parts do not generate the total frame")]
    PartsDoNotGenerate,
    #[error("biframe is not strictly zero-dimensional: {0}")]
    NotStr0d(String),
    #[error("congruence is not dense: {0}")]
    NotDense(String),
    #[error("space is not T0: {0:?} and {1:?} lie in exactly the same opens")]
    NotT0(String, String),
    #[error("unknown label {0:?}")]
    UnknownLabel(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("clearness conditions disagree at {element:?}: {flags:?}")]
    ConditionDisagreement { element: String, flags: [bool; 4] },
    #[error("theorem cross-check failed: {0}")]
    TheoremViolation(String),
    #[error("sobriety remark cross-check failed: {0}")]
    RemarkViolation(String),
    #[error("universal property self-check failed: {0}")]
    UniversalPropertyViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
