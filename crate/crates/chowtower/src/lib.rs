//! Exact intersection theory on a tower of projective bundles.
//!
//! The tower starts from a Hirzebruch surface whose index is a linear
//! polynomial in a parameter `n`, takes the projectivization of a split
//! rank-two bundle over it, blows up a chain of curves, and optionally
//! forms a double cover branched along an even divisor. All intersection
//! numbers, Chern classes, and section counts are computed exactly as
//! integer polynomials in `n`, never as floating-point approximations.
//!
//! The crate is organized bottom-up:
//!
//! - [`poly`]: dense integer polynomials in `n` with exact sign tests
//!   over half-lines.
//! - [`surface`]: Hirzebruch surfaces, their intersection form, section
//!   counts, and fixed parts of linear systems.
//! - [`threefold`]: divisor classes, triple-product tables, Chern data,
//!   and embedded surfaces with restriction maps.
//! - [`bundle`]: the projectivized bundle over a Hirzebruch surface,
//!   with pushforward section counts.
//! - [`blowup`]: blowing up a curve cut out by two divisors, with the
//!   induced Chern transport and the exceptional ruled surface.
//! - [`cover`]: double covers branched along an even divisor, with
//!   log Calabi-Yau and K3 checks.
//! - [`linsys`]: the half-anticanonical filtration, its dimension
//!   table, base locus, and stabilized linear forms.
//! - [`tower`]: the TOML tower description format and the divisor
//!   expression grammar.
//! - [`pipeline`]: elaboration of a tower file into built stages.
//! - [`report`]: serializable reports for the command-line interface.

use thiserror::Error as ThisError;

mod render;

pub mod blowup;
pub mod bundle;
pub mod cover;
pub mod linsys;
pub mod pipeline;
pub mod poly;
pub mod report;
pub mod surface;
pub mod threefold;
pub mod tower;

pub use pipeline::Pipeline;
pub use poly::IntPoly;
pub use tower::TowerSpec;

/// Everything that can go wrong while building or querying a tower.
#[derive(Debug, ThisError)]
pub enum Error {
    /// Text input did not match the expected grammar.
    #[error("parse error at byte {at}: {msg}")]
    Parse { at: usize, msg: String },

    /// An evaluation overflowed the machine-integer range.
    #[error("value exceeds the machine-integer range")]
    Numeric,

    /// A polynomial division left a remainder.
    #[error("{0} is not divisible by {1}")]
    InexactDivision(String, String),

    /// A Hirzebruch index must be nonnegative over the working range.
    #[error("surface index {0} is negative somewhere on the working range")]
    NegativeIndex(String),

    /// Two surface classes live on different surfaces.
    #[error("classes live on different surfaces")]
    SurfaceMismatch,

    /// A genus computation did not come out integral.
    #[error("genus formula did not produce an integer polynomial")]
    NonIntegralGenus,

    /// The linear system has no sections, so it has no fixed part.
    #[error("the linear system is empty")]
    EmptySystem,

    /// A divisor class mentions a symbol outside the stage basis.
    #[error("unknown basis symbol {0}")]
    UnknownBasis(String),

    /// No embedded surface is registered under this name.
    #[error("unknown surface {0}")]
    UnknownSurface(String),

    /// Geometric data failed a structural cross-check.
    #[error("incompatible data: {0}")]
    Incompatible(String),

    /// A quantity changes sign over the working range, so a case split
    /// that needs its sign cannot be made uniformly.
    #[error("sign is not constant over the working range: {0}")]
    MixedSign(String),

    /// A double-cover branch class must be divisible by two.
    #[error("branch divisor is not even: {0}")]
    OddBranch(String),

    /// One step of the base-locus argument failed.
    #[error("base locus step {step} failed: {detail}")]
    BaseLocus { step: usize, detail: String },

    /// No linear form fits the stabilized tail of a dimension count.
    #[error("dimension count does not stabilize to a linear form")]
    NoStabilization,

    /// The operation is only defined for a narrower configuration.
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// The tower description is malformed.
    #[error("invalid tower description: {0}")]
    Tower(String),

    /// A divisor expression used a symbol before its stage introduces it.
    #[error("symbol {symbol} is not available on stage {stage}")]
    Stage { symbol: String, stage: String },
}

pub type Result<T> = std::result::Result<T, Error>;
