use thiserror::Error;

use crate::connectivity::SystemCheck;
use crate::mask::SubsetMask;
use crate::structures::AxiomResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("mask {mask:#b} has bits outside a ground set of size {n}")]
    MaskOutOfRange { mask: u32, n: usize },

    #[error("element {element} out of range for a ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },

    #[error("ground set of size {n} exceeds the limit of {limit} for {what}")]
    LimitExceeded { n: usize, limit: usize, what: &'static str },

    #[error("malformed system descriptor: {0}")]
    Descriptor(String),

    #[error("explicit table has {found} values, expected {expected}")]
    TableLength { expected: usize, found: usize },

    #[error("function is not symmetric submodular: {check} fails at A = {a}, B = {b}")]
    NotSymmetricSubmodular { check: SystemCheck, a: SubsetMask, b: SubsetMask },

    #[error("separations belong to different ground sets")]
    MismatchedSystems,

    #[error("duplicate side {0:?}")]
    DuplicateSide(Vec<usize>),

    #[error("declared order {declared} of side {side:?} does not match computed order {computed}")]
    OrderMismatch { side: Vec<usize>, declared: u32, computed: u32 },

    #[error("not a filter base: {} fails", .0.axiom)]
    NotAFilterBase(Box<AxiomResult>),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("schema error: {0}")]
    Schema(String),

    #[error("parse error: {0}")]
    Parse(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
