//! Grid-with-refinement minimisation over a half-plane box.
//!
//! Every reported infimum carries its argmin and the final grid
//! resolution, so callers can state discretisation error explicitly.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use super::halfplane::HPoint;
use super::isometry::Isometry;
use super::GeomError;

/// Rectangular search box with grid size and refinement schedule.
#[derive(Debug, Clone, Copy)]
pub struct SearchDomain {
    pub re_min: f64,
    pub re_max: f64,
    pub im_min: f64,
    pub im_max: f64,
    /// Points per side of the grid.
    pub grid: usize,
    /// Number of zoom-in rounds around the incumbent argmin.
    pub refine_steps: usize,
}

impl SearchDomain {
    pub fn new(
        re_min: f64,
        re_max: f64,
        im_min: f64,
        im_max: f64,
    ) -> Result<SearchDomain, GeomError> {
        let finite = [re_min, re_max, im_min, im_max].iter().all(|v| v.is_finite());
        if !finite || re_min >= re_max || im_min <= 0.0 || im_min >= im_max {
            return Err(GeomError::EmptyDomain);
        }
        Ok(SearchDomain { re_min, re_max, im_min, im_max, grid: 48, refine_steps: 4 })
    }

    pub fn with_grid(mut self, grid: usize, refine_steps: usize) -> SearchDomain {
        self.grid = grid.max(2);
        self.refine_steps = refine_steps;
        self
    }

    /// Box of half-width `radius` (Euclidean in re, multiplicative in im)
    /// around a point.
    pub fn around(p: HPoint, radius: f64) -> Result<SearchDomain, GeomError> {
        let factor = radius.exp();
        SearchDomain::new(p.re - radius, p.re + radius, p.im / factor, p.im * factor)
    }

    fn cell(&self) -> (f64, f64) {
        (
            (self.re_max - self.re_min) / (self.grid - 1) as f64,
            (self.im_max - self.im_min) / (self.grid - 1) as f64,
        )
    }

    fn point(&self, i: usize, j: usize) -> HPoint {
        let (dre, dim) = self.cell();
        HPoint { re: self.re_min + dre * i as f64, im: self.im_min + dim * j as f64 }
    }
}

/// Minimiser output: value, where, and how fine the final grid was.
#[derive(Debug, Clone, Copy)]
pub struct MinResult {
    pub value: f64,
    pub argmin: HPoint,
    pub resolution: f64,
}

fn scan_rows<F>(domain: &SearchDomain, objective: &F) -> Option<(f64, usize, usize)>
where
    F: Fn(HPoint) -> Option<f64> + Sync,
{
    let row = |i: usize| -> Option<(f64, usize, usize)> {
        let mut best: Option<(f64, usize, usize)> = None;
        for j in 0..domain.grid {
            if let Some(v) = objective(domain.point(i, j)) {
                if best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        best
    };
    // ties broken by grid index so parallel and sequential scans agree
    let merge = |a: Option<(f64, usize, usize)>, b: Option<(f64, usize, usize)>| match (a, b) {
        (Some(x), Some(y)) => {
            if (y.0, y.1, y.2) < (x.0, x.1, x.2) {
                Some(y)
            } else {
                Some(x)
            }
        }
        (x, None) => x,
        (None, y) => y,
    };
    #[cfg(feature = "parallel")]
    {
        (0..domain.grid)
            .into_par_iter()
            .map(row)
            .collect::<Vec<_>>()
            .into_iter()
            .fold(None, merge)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..domain.grid).map(row).fold(None, merge)
    }
}

/// Minimises `objective` over the domain by repeated grid scans, zooming
/// into a neighbourhood of the incumbent after each round. An objective
/// may return `None` to mark a point infeasible.
pub fn minimize_filtered<F>(domain: SearchDomain, objective: F) -> Result<MinResult, GeomError>
where
    F: Fn(HPoint) -> Option<f64> + Sync,
{
    let mut current = domain;
    let mut best: Option<(f64, HPoint)> = None;
    for _ in 0..=domain.refine_steps {
        let Some((value, i, j)) = scan_rows(&current, &objective) else {
            break;
        };
        let arg = current.point(i, j);
        if best.is_none_or(|(b, _)| value < b) {
            best = Some((value, arg));
        }
        let (dre, dim) = current.cell();
        // zoom to a 3x3-cell neighbourhood clamped to the original box
        current = SearchDomain {
            re_min: (arg.re - 1.5 * dre).max(domain.re_min),
            re_max: (arg.re + 1.5 * dre).min(domain.re_max),
            im_min: (arg.im - 1.5 * dim).max(domain.im_min),
            im_max: (arg.im + 1.5 * dim).min(domain.im_max),
            grid: domain.grid,
            refine_steps: 0,
        };
    }
    let (value, argmin) = best.ok_or(GeomError::EmptyFeasibleRegion)?;
    let (dre, dim) = current.cell();
    Ok(MinResult { value, argmin, resolution: dre.max(dim) })
}

pub fn minimize<F>(domain: SearchDomain, objective: F) -> Result<MinResult, GeomError>
where
    F: Fn(HPoint) -> f64 + Sync,
{
    minimize_filtered(domain, |p| Some(objective(p)))
}

/// Numerical infimum of the displacement d(Mx, x) over the domain. For a
/// loxodromic isometry whose axis meets the box this approaches the
/// translation length from above.
pub fn displacement_min(m: &Isometry, domain: SearchDomain) -> Result<MinResult, GeomError> {
    minimize(domain, |p| m.displacement(p))
}
