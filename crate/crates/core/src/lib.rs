//! Desk-scale verification library for surface-group power quotients.
//!
//! The algebraic half certifies, with exact arithmetic, that standard
//! simple closed curves have order exactly n in the n-periodic witness
//! quotients, and that n-th powers of the explicit twist endomorphisms
//! act trivially there. The geometric half evaluates the hyperbolic
//! plane and model-cone formula layer numerically against a measured
//! hyperbolicity constant.
//!
//! Heavy sampling loops run data-parallel under the `parallel` feature
//! (on by default) and fall back to sequential execution without it;
//! results are bit-identical either way.

pub mod checks;
pub mod geom;
pub mod par;
pub mod qn;
pub mod report;
pub mod ring;
pub mod surface;
pub mod twist;
pub mod words;

use thiserror::Error;

/// Errors for the check layer: anything that makes a request unusable,
/// plus pass-through of the domain errors underneath.
#[derive(Debug, Error)]
pub enum CheckError {
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
    #[error("unknown suite `{0}` (expected algebra, geometry, or all)")]
    UnknownSuite(String),
    #[error("missing required parameter `{0}`")]
    MissingParam(String),
    #[error("bad value for parameter `{0}`: {1}")]
    BadParam(String, String),
    #[error("no calibration loaded; run `calibrate` first")]
    MissingCalibration,
    #[error("i/o error: {0}")]
    Io(String),
    #[error(transparent)]
    Word(#[from] words::WordError),
    #[error(transparent)]
    Ring(#[from] ring::RingError),
    #[error(transparent)]
    Qn(#[from] qn::QnError),
    #[error(transparent)]
    Surface(#[from] surface::SurfaceError),
    #[error(transparent)]
    Twist(#[from] twist::TwistError),
    #[error(transparent)]
    Geom(#[from] geom::GeomError),
}
