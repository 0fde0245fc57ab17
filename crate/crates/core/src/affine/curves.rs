//! Singular-curve extraction: marching squares on log|nu| at level zero,
//! with one bisection refinement per crossing edge.

use num_complex::Complex64;
use std::collections::HashMap;

use super::data::WeierstrassData;
use crate::error::Result;
use crate::par;
use crate::rational::{RationalMap, SpherePoint};

/// Axis-aligned window in the z-plane.
#[derive(Clone, Copy, Debug)]
pub struct Window {
    pub xmin: f64,
    pub xmax: f64,
    pub ymin: f64,
    pub ymax: f64,
}

/// An ordered chain of points; closed when the last point equals the first.
pub type Polyline = Vec<Complex64>;

/// Level curves of |nu| = 1 inside the window on an n x n sample grid.
pub fn singular_curves(
    data: &WeierstrassData,
    window: Window,
    n: usize,
) -> Result<Vec<Polyline>> {
    let nu = data.lagrangian_gauss()?;
    if nu.is_constant() {
        // constant |nu| has either no level set or a degenerate full-plane
        // one; report no curves either way
        return Ok(Vec::new());
    }
    Ok(trace_level(&nu, window, n))
}

fn field(nu: &RationalMap, z: Complex64) -> f64 {
    match nu.eval(SpherePoint::Finite(z)) {
        SpherePoint::Finite(v) => {
            let r = v.norm();
            if r > 0.0 && r.is_finite() {
                r.ln()
            } else if r == 0.0 {
                f64::NEG_INFINITY
            } else {
                f64::INFINITY
            }
        }
        SpherePoint::Infinity => f64::INFINITY,
    }
}

/// Marching squares with edge-keyed crossings so shared edges join
/// segments into chains.
fn trace_level(nu: &RationalMap, w: Window, n: usize) -> Vec<Polyline> {
    assert!(n >= 2);
    let xs: Vec<f64> = (0..n)
        .map(|i| w.xmin + (w.xmax - w.xmin) * i as f64 / (n - 1) as f64)
        .collect();
    let ys: Vec<f64> = (0..n)
        .map(|j| w.ymin + (w.ymax - w.ymin) * j as f64 / (n - 1) as f64)
        .collect();

    let coords: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .collect();
    let values = par::map(coords, |(i, j)| field(nu, Complex64::new(xs[i], ys[j])));
    let v = |i: usize, j: usize| values[i * n + j];

    // Edge key: (i, j, horizontal?) for the edge from grid point (i,j)
    // to (i+1,j) or (i,j+1).
    type EdgeKey = (usize, usize, bool);
    let mut crossings: HashMap<EdgeKey, Complex64> = HashMap::new();
    let mut segments: Vec<(EdgeKey, EdgeKey)> = Vec::new();

    let crossing = |key: EdgeKey, crossings: &mut HashMap<EdgeKey, Complex64>| -> Complex64 {
        if let Some(&p) = crossings.get(&key) {
            return p;
        }
        let (i, j, horiz) = key;
        let (a, b) = if horiz {
            (
                Complex64::new(xs[i], ys[j]),
                Complex64::new(xs[i + 1], ys[j]),
            )
        } else {
            (
                Complex64::new(xs[i], ys[j]),
                Complex64::new(xs[i], ys[j + 1]),
            )
        };
        let p = bisect(nu, a, b);
        crossings.insert(key, p);
        p
    };

    for i in 0..n - 1 {
        for j in 0..n - 1 {
            let corner = [v(i, j), v(i + 1, j), v(i + 1, j + 1), v(i, j + 1)];
            // mask cells touching poles or zeros of nu: the level set
            // cannot pass through a cell with an unbounded sample
            if corner.iter().any(|c| c.is_nan() || c.is_infinite()) {
                continue;
            }
            let mut case = 0usize;
            for (k, c) in corner.iter().enumerate() {
                if *c > 0.0 {
                    case |= 1 << k;
                }
            }
            if case == 0 || case == 15 {
                continue;
            }
            // edges of the cell in marching-squares order:
            // 0: bottom (i,j)-(i+1,j), 1: right (i+1,j)-(i+1,j+1),
            // 2: top (i,j+1)-(i+1,j+1), 3: left (i,j)-(i,j+1)
            let e = [
                (i, j, true),
                (i + 1, j, false),
                (i, j + 1, true),
                (i, j, false),
            ];
            let pairs: &[(usize, usize)] = match case {
                1 | 14 => &[(0, 3)],
                2 | 13 => &[(0, 1)],
                3 | 12 => &[(1, 3)],
                4 | 11 => &[(1, 2)],
                6 | 9 => &[(0, 2)],
                7 | 8 => &[(2, 3)],
                5 => &[(0, 1), (2, 3)],
                10 => &[(0, 3), (1, 2)],
                _ => &[],
            };
            for &(ea, eb) in pairs {
                let ka = e[ea];
                let kb = e[eb];
                crossing(ka, &mut crossings);
                crossing(kb, &mut crossings);
                segments.push((ka, kb));
            }
        }
    }

    chain(&segments, &crossings)
}

/// Bisection refinement of the zero of log|nu| along one grid edge.
fn bisect(nu: &RationalMap, mut a: Complex64, mut b: Complex64) -> Complex64 {
    let mut fa = field(nu, a);
    for _ in 0..60 {
        let m = (a + b) / 2.0;
        let fm = field(nu, m);
        if (fa > 0.0) == (fm > 0.0) {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
        if (a - b).norm() < 1e-13 {
            break;
        }
    }
    (a + b) / 2.0
}

/// Joins segments sharing edge keys into ordered open or closed chains.
fn chain(
    segments: &[(EdgeKeyT, EdgeKeyT)],
    crossings: &HashMap<EdgeKeyT, Complex64>,
) -> Vec<Polyline> {
    let mut adj: HashMap<EdgeKeyT, Vec<usize>> = HashMap::new();
    for (idx, (a, b)) in segments.iter().enumerate() {
        adj.entry(*a).or_default().push(idx);
        adj.entry(*b).or_default().push(idx);
    }
    let mut used = vec![false; segments.len()];
    let mut out = Vec::new();
    for start in 0..segments.len() {
        if used[start] {
            continue;
        }
        // walk both directions from the seed segment
        let mut keys: Vec<EdgeKeyT> = vec![segments[start].0, segments[start].1];
        used[start] = true;
        loop {
            let tail = *keys.last().unwrap();
            let next = adj[&tail].iter().find(|&&i| !used[i]).copied();
            match next {
                Some(i) => {
                    used[i] = true;
                    let (a, b) = segments[i];
                    keys.push(if a == tail { b } else { a });
                }
                None => break,
            }
        }
        loop {
            let head = keys[0];
            let next = adj[&head].iter().find(|&&i| !used[i]).copied();
            match next {
                Some(i) => {
                    used[i] = true;
                    let (a, b) = segments[i];
                    keys.insert(0, if a == head { b } else { a });
                }
                None => break,
            }
        }
        out.push(keys.iter().map(|k| crossings[k]).collect());
    }
    out
}

type EdgeKeyT = (usize, usize, bool);
