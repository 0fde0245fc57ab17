//! Triangle meshes on planar parameter grids, shared by the affine and
//! hyperbolic pipelines.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Parameter-domain specification for surface meshes.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum DomainSpec {
    Disk { radius: f64 },
    Annulus { rmin: f64, rmax: f64 },
    Rect { xmin: f64, xmax: f64, ymin: f64, ymax: f64 },
}

/// A triangulated surface with a per-vertex singular flag.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct SurfaceMesh {
    pub vertices: Vec<[f64; 3]>,
    pub faces: Vec<[usize; 3]>,
    pub singular: Vec<bool>,
}

impl SurfaceMesh {
    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// A parameter grid with quad connectivity; `wrap` closes the second
/// index (the angular direction of polar grids).
pub struct ParamGrid {
    pub points: Vec<Complex64>,
    pub rows: usize,
    pub cols: usize,
    pub wrap: bool,
}

impl ParamGrid {
    /// Grid for the domain at the given resolution. Polar for disk and
    /// annulus (rows = rings, cols = angles), row-major for rectangles.
    pub fn build(spec: DomainSpec, n: usize) -> Result<ParamGrid> {
        if n < 2 {
            return Err(Error::InvalidInput(format!(
                "mesh resolution {n} too small (need >= 2)"
            )));
        }
        match spec {
            DomainSpec::Disk { radius } => {
                if radius <= 0.0 || radius.is_nan() {
                    return Err(Error::InvalidInput("disk radius must be positive".into()));
                }
                Ok(polar(radius / n as f64, radius, n, n, true))
            }
            DomainSpec::Annulus { rmin, rmax } => {
                if !(rmin > 0.0 && rmax > rmin) {
                    return Err(Error::InvalidInput(
                        "annulus needs 0 < rmin < rmax".into(),
                    ));
                }
                Ok(polar(rmin, rmax, n, n, true))
            }
            DomainSpec::Rect { xmin, xmax, ymin, ymax } => {
                if !(xmax > xmin && ymax > ymin) {
                    return Err(Error::InvalidInput("empty rectangle".into()));
                }
                let mut points = Vec::with_capacity(n * n);
                for i in 0..n {
                    let x = xmin + (xmax - xmin) * i as f64 / (n - 1) as f64;
                    for j in 0..n {
                        let y = ymin + (ymax - ymin) * j as f64 / (n - 1) as f64;
                        points.push(Complex64::new(x, y));
                    }
                }
                Ok(ParamGrid {
                    points,
                    rows: n,
                    cols: n,
                    wrap: false,
                })
            }
        }
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        i * self.cols + j
    }

    /// Assembles the mesh from per-grid-point positions (None marks a
    /// dropped vertex) and singular flags, splitting each quad into two
    /// triangles and remapping indices over the dropped vertices.
    pub fn assemble(&self, positions: Vec<Option<[f64; 3]>>, singular: Vec<bool>) -> SurfaceMesh {
        let mut remap = vec![usize::MAX; positions.len()];
        let mut vertices = Vec::new();
        let mut flags = Vec::new();
        for (k, p) in positions.iter().enumerate() {
            if let Some(v) = p {
                remap[k] = vertices.len();
                vertices.push(*v);
                flags.push(singular[k]);
            }
        }
        let mut faces = Vec::new();
        let jmax = if self.wrap { self.cols } else { self.cols - 1 };
        for i in 0..self.rows - 1 {
            for j in 0..jmax {
                let jn = (j + 1) % self.cols;
                let q = [
                    self.index(i, j),
                    self.index(i + 1, j),
                    self.index(i + 1, jn),
                    self.index(i, jn),
                ];
                if q.iter().any(|&k| remap[k] == usize::MAX) {
                    continue;
                }
                faces.push([remap[q[0]], remap[q[1]], remap[q[2]]]);
                faces.push([remap[q[0]], remap[q[2]], remap[q[3]]]);
            }
        }
        SurfaceMesh {
            vertices,
            faces,
            singular: flags,
        }
    }
}

fn polar(rmin: f64, rmax: f64, rings: usize, angles: usize, wrap: bool) -> ParamGrid {
    let mut points = Vec::with_capacity(rings * angles);
    for i in 0..rings {
        let r = rmin + (rmax - rmin) * i as f64 / (rings - 1) as f64;
        for j in 0..angles {
            let th = 2.0 * std::f64::consts::PI * j as f64 / angles as f64;
            points.push(Complex64::from_polar(r, th));
        }
    }
    ParamGrid {
        points,
        rows: rings,
        cols: angles,
        wrap,
    }
}
