//! Displacement energies of a finite set of isometries: the infimum over
//! basepoints of the sum (L1) or maximum (Linf) of the generator
//! displacements, plus the variant restricted to the complement of a set
//! of excluded balls (the thick part).

use super::halfplane::{distance, HPoint};
use super::isometry::Isometry;
use super::search::{minimize, minimize_filtered, MinResult, SearchDomain};
use super::GeomError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EnergyNorm {
    L1,
    LInf,
}

/// A finite isometry set with a search box and optional excluded balls
/// modelling the thin part.
#[derive(Debug, Clone)]
pub struct EnergyConfig {
    pub isometries: Vec<Isometry>,
    pub domain: SearchDomain,
    pub excluded_balls: Vec<(HPoint, f64)>,
}

impl EnergyConfig {
    pub fn new(isometries: Vec<Isometry>, domain: SearchDomain) -> Result<EnergyConfig, GeomError> {
        if isometries.is_empty() {
            return Err(GeomError::EmptyIsometrySet);
        }
        Ok(EnergyConfig { isometries, domain, excluded_balls: Vec::new() })
    }

    pub fn with_excluded_balls(
        mut self,
        balls: Vec<(HPoint, f64)>,
    ) -> Result<EnergyConfig, GeomError> {
        if balls.iter().any(|&(_, r)| r <= 0.0 || r.is_nan()) {
            return Err(GeomError::BadBallRadius);
        }
        self.excluded_balls = balls;
        Ok(self)
    }

    fn pointwise(&self, p: HPoint, norm: EnergyNorm) -> f64 {
        let displacements = self.isometries.iter().map(|m| m.displacement(p));
        match norm {
            EnergyNorm::L1 => displacements.sum(),
            EnergyNorm::LInf => displacements.fold(0.0, f64::max),
        }
    }

    fn in_thick_part(&self, p: HPoint) -> bool {
        self.excluded_balls.iter().all(|&(c, r)| distance(p, c) > r)
    }
}

/// Numerical energy infimum over the search box.
pub fn energy(cfg: &EnergyConfig, norm: EnergyNorm) -> Result<MinResult, GeomError> {
    minimize(cfg.domain, |p| cfg.pointwise(p, norm))
}

/// L1 energy with the basepoint confined to the thick part. Errors when
/// no grid point survives the exclusion.
pub fn restricted_energy(cfg: &EnergyConfig) -> Result<MinResult, GeomError> {
    minimize_filtered(cfg.domain, |p| {
        cfg.in_thick_part(p).then(|| cfg.pointwise(p, EnergyNorm::L1))
    })
}
