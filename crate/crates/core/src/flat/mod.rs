//! Flat fronts in hyperbolic 3-space from rational canonical forms:
//! Legendrian lift integration, frame geometry, Hopf differential and
//! rho analysis, Schwarzian verification, end records, and meshing.

mod forms;
mod frame;
mod ode;
mod schwarz;

pub use forms::{CanonicalForms, FlatClass, WcfEndRecord};
pub use frame::{parallel, HermitianPoint, Sl2Frame, EPS_DET};
pub use ode::{
    integrate_lift, integrate_lift_trace, monodromy, monodromy_loop, set_tolerance, tolerance,
    GUARD_PATH, TOL_ODE,
};
pub use schwarz::{schwarzian_check, schwarzian_of_form, H_FD, MASK_E21};

use num_complex::Complex64;

use crate::affine::EPS_SING;
use crate::error::Result;
use crate::mesh::{DomainSpec, ParamGrid, SurfaceMesh};
use crate::par;
use crate::rational::{RationalMap, SpherePoint};

/// Meshes the parallel front at distance `t` over the domain, integrating
/// lifts along a spanning tree of grid paths (first radial column, then
/// along each row) from the base frame (identity at the first grid
/// point). Vertices are Poincare-ball coordinates; the singular flag
/// marks ||rho| - 1| within `EPS_SING`.
pub fn mesh_h3(
    forms: &CanonicalForms,
    spec: DomainSpec,
    resolution: usize,
    t: f64,
) -> Result<SurfaceMesh> {
    let grid = ParamGrid::build(spec, resolution)?;
    let rho = forms.rho().ok();
    let guard = mesh_guard(spec, resolution);
    let sing = forms.finite_singularities()?;

    // trunk of the tree: the first grid column
    let mut trunk = Vec::with_capacity(grid.rows);
    let mut e = Sl2Frame::identity();
    trunk.push(e);
    for i in 1..grid.rows {
        let a = grid.points[grid.index(i - 1, 0)];
        let b = grid.points[grid.index(i, 0)];
        e = integrate_lift(forms, &[a, b], e)?;
        trunk.push(e);
    }

    // branches: each row integrates independently from its trunk frame
    let rows: Vec<usize> = (0..grid.rows).collect();
    let row_frames = par::map(rows, |i| -> Result<Vec<Sl2Frame>> {
        let mut out = Vec::with_capacity(grid.cols);
        let mut e = trunk[i];
        out.push(e);
        for j in 1..grid.cols {
            let a = grid.points[grid.index(i, j - 1)];
            let b = grid.points[grid.index(i, j)];
            e = integrate_lift(forms, &[a, b], e)?;
            out.push(e);
        }
        Ok(out)
    });

    let mut positions = vec![None; grid.points.len()];
    let mut flags = vec![false; grid.points.len()];
    for (i, row) in row_frames.into_iter().enumerate() {
        let row = row?;
        for (j, e) in row.into_iter().enumerate() {
            let k = grid.index(i, j);
            let z = grid.points[k];
            if sing.iter().any(|s| (s - z).norm() < guard) {
                continue;
            }
            let f = e.front_point();
            let n = e.normal();
            let (ft, _) = parallel(&f, &n, t);
            positions[k] = Some(ft.poincare_ball());
            flags[k] = match &rho {
                Some(r) => match r.eval(SpherePoint::Finite(z)) {
                    SpherePoint::Finite(v) => (v.norm() - 1.0).abs() <= EPS_SING,
                    SpherePoint::Infinity => false,
                },
                None => false,
            };
        }
    }
    Ok(grid.assemble(positions, flags))
}

/// Frame at one parameter point: lift integrated along the straight
/// segment from `base` (identity frame there) to `z`.
pub fn frame_at(forms: &CanonicalForms, base: Complex64, z: Complex64) -> Result<Sl2Frame> {
    integrate_lift(forms, &[base, z], Sl2Frame::identity())
}

/// rho = theta/omega as a map, tolerating a vanishing omega (returns the
/// reciprocal-of-zero convention: None).
pub fn rho_map(forms: &CanonicalForms) -> Option<RationalMap> {
    forms.rho().ok()
}

fn mesh_guard(spec: DomainSpec, resolution: usize) -> f64 {
    let extent = match spec {
        DomainSpec::Disk { radius } => 2.0 * radius,
        DomainSpec::Annulus { rmax, .. } => 2.0 * rmax,
        DomainSpec::Rect { xmin, xmax, ymin, ymax } => (xmax - xmin).max(ymax - ymin),
    };
    0.5 * extent / resolution as f64
}
