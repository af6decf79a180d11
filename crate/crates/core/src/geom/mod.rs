//! Numerical kernel for the hyperbolic plane: distances and Gromov
//! products, isometry classification and translation lengths, grid
//! minimisation, displacement energies, almost-fixed-point sets and
//! thinness, model cones, the explicit genus-2 octagon group, and the
//! measured-constant calibration layer.

use thiserror::Error;

pub mod calibrate;
pub mod cone;
pub mod energy;
pub mod fixset;
pub mod fuchsian;
pub mod halfplane;
pub mod isometry;
pub mod search;

pub use calibrate::{calibrate, default_box, Calibration, SampleBox};
pub use cone::{cone_distance, cone_law_of_cosines, ConeParams};
pub use energy::{energy, restricted_energy, EnergyConfig, EnergyNorm};
pub use fixset::{fix_set_probe, thinness_defect, tube_samples, FixSetProbe};
pub use fuchsian::{genus2_fuchsian, injectivity_radius_estimate, relator_product};
pub use halfplane::{distance, four_point_defect, gromov_product, HPoint};
pub use isometry::{mapping_segment, Isometry, IsometryClass};
pub use search::{displacement_min, minimize, MinResult, SearchDomain};

#[derive(Debug, Error, PartialEq)]
pub enum GeomError {
    #[error("point ({re}, {im}) is not in the upper half-plane")]
    InvalidPoint { re: f64, im: f64 },
    #[error("matrix determinant {det} is not positive")]
    InvalidMatrix { det: f64 },
    #[error("isometry with trace {trace} is not loxodromic")]
    NotLoxodromic { trace: f64 },
    #[error("segment endpoints coincide")]
    DegenerateSegment,
    #[error("search domain is empty or degenerate")]
    EmptyDomain,
    #[error("no feasible point in the search region")]
    EmptyFeasibleRegion,
    #[error("isometry set is empty")]
    EmptyIsometrySet,
    #[error("sample set is empty")]
    EmptySampleSet,
    #[error("displacement bound {0} out of range")]
    BadDisplacementBound(f64),
    #[error("excluded ball radius must be positive")]
    BadBallRadius,
    #[error("cone radius {0} must be positive")]
    BadConeRadius(f64),
    #[error("cone total angle {0} must be at least 2 pi")]
    BadConeAngle(f64),
    #[error("radius {r} outside [0, {rho}]")]
    RadiusOutOfRange { r: f64, rho: f64 },
    #[error("base distance {0} is negative")]
    NegativeBaseDistance(f64),
    #[error("angle {theta} is not reduced for total angle {total_angle}")]
    AngleNotReduced { theta: f64, total_angle: f64 },
    #[error("calibration version {got}, expected {want}")]
    CalibrationVersion { got: u32, want: u32 },
    #[error("calibration file error: {0}")]
    Io(String),
}
