use thiserror::Error;

use crate::geometry::{KType, Quadrant};

/// Errors raised by the spectral and zonal machinery.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid signature: {0}")]
    InvalidSignature(String),

    #[error("invalid spectral order: {0}")]
    InvalidOrder(String),

    #[error("K-type {from} has no neighbor in direction {direction}")]
    NoSuchNeighbor { from: KType, direction: Quadrant },

    #[error("zero denominator on edge {from} -> {to}: r equals half the Laplacian gap")]
    ZeroDenominator { from: KType, to: KType },

    #[error("path inconsistency at {at}: relative discrepancy {discrepancy:e} exceeds {tolerance:e}")]
    PathInconsistency {
        at: KType,
        discrepancy: f64,
        tolerance: f64,
    },

    #[error("K-type lattice is disconnected inside the requested bounds; {at} unreachable from base")]
    Disconnected { at: KType },

    #[error("base K-type {base} lies outside the requested bounds")]
    BaseOutOfRange { base: KType },

    #[error("gamma function has a pole at {x}")]
    PoleAtGamma { x: f64 },

    #[error("spectral function has a pole at {at} (gamma argument {argument})")]
    PoleAtKType { at: KType, argument: f64 },

    #[error("no nonsingular probe K-type available for parity {parity}")]
    NoProbeAvailable { parity: u8 },

    #[error("quadrature grid too coarse: need {needed} nodes, have {available}")]
    GridTooCoarse { needed: usize, available: usize },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
