//! Improper affine fronts from rational Weierstrass data: immersion,
//! conormal, metrics, period certificates, singular curves, end orders,
//! classification, and meshing.

mod antider;
mod curves;
mod data;
mod immerse;

pub use antider::RationalAntiderivative;
pub use curves::{singular_curves, Polyline, Window};
pub use data::{
    form_order, AffineClass, AffinePoint, EndOrder, MetricSample, PeriodCertificate,
    PeriodVerdict, PunctureResidues, WeierstrassData, WeierstrassMode, EPS_RES, EPS_SING,
};
pub use immerse::{conormal, Immersion};

use crate::error::Result;
use crate::mesh::{DomainSpec, ParamGrid, SurfaceMesh};
use crate::par;

/// Builds a surface mesh by evaluating the immersion on a grid over the
/// domain, dropping vertices within the guard radius of a singularity.
pub fn mesh(data: &WeierstrassData, spec: DomainSpec, resolution: usize) -> Result<SurfaceMesh> {
    let imm = Immersion::prepare(data, None)?;
    let grid = ParamGrid::build(spec, resolution)?;
    let singular_pts = data.finite_singularities()?;
    let guard = guard_radius(spec, resolution);

    let nu = data.lagrangian_gauss()?;
    let points = grid.points.clone();
    let eval = |z: num_complex::Complex64| -> (Option<[f64; 3]>, bool) {
        if singular_pts.iter().any(|s| (*s - z).norm() < guard) {
            return (None, false);
        }
        match imm.eval(z) {
            Ok(p) => {
                let sing = match nu.eval(crate::rational::SpherePoint::Finite(z)) {
                    crate::rational::SpherePoint::Finite(v) => {
                        (v.norm() - 1.0).abs() <= data::EPS_SING
                    }
                    crate::rational::SpherePoint::Infinity => false,
                };
                (Some([p.x.re, p.x.im, p.phi]), sing)
            }
            Err(_) => (None, false),
        }
    };
    let results = par::map(points, eval);
    let (positions, flags): (Vec<_>, Vec<_>) = results.into_iter().unzip();
    Ok(grid.assemble(positions, flags))
}

fn guard_radius(spec: DomainSpec, resolution: usize) -> f64 {
    let extent = match spec {
        DomainSpec::Disk { radius } => 2.0 * radius,
        DomainSpec::Annulus { rmax, .. } => 2.0 * rmax,
        DomainSpec::Rect { xmin, xmax, ymin, ymax } => (xmax - xmin).max(ymax - ymin),
    };
    0.5 * extent / resolution as f64
}

#[cfg(test)]
mod tests;
