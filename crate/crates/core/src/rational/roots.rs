//! Polynomial root finding by simultaneous iteration (Aberth-Ehrlich),
//! with cluster-based multiplicity recovery.

use num_complex::Complex64;

use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Relative residual tolerance for accepted roots.
pub const EPS_ROOT: f64 = 1e-11;

/// Scale-relative clustering radius for near-coincident roots.
pub fn eps_cluster(z: Complex64) -> f64 {
    1e-8 * (1.0 + z.norm())
}

/// One root with its multiplicity.
#[derive(Clone, Copy, Debug)]
pub struct RootMult {
    pub z: Complex64,
    pub mult: usize,
}

/// All complex roots of `p` with multiplicities. Multiplicities sum to
/// `deg p`. Roots at the origin are read off exactly from trailing zero
/// coefficients; the rest come from Aberth-Ehrlich iteration followed by a
/// two-stage clustering pass that repairs the scatter of multiple roots.
pub fn roots(p: &Polynomial) -> Result<Vec<RootMult>> {
    if p.is_zero() {
        return Err(Error::InvalidInput("roots of the zero polynomial".into()));
    }
    if p.is_constant() {
        return Ok(Vec::new());
    }

    // Exact zero roots: strip trailing low-order zeros.
    let ord0 = p.order_at_origin();
    let mut work_coeffs: Vec<Complex64> = p.coeffs()[ord0..].to_vec();
    let deflated = Polynomial::new(std::mem::take(&mut work_coeffs));

    let mut out: Vec<RootMult> = Vec::new();
    if ord0 > 0 {
        out.push(RootMult {
            z: Complex64::new(0.0, 0.0),
            mult: ord0,
        });
    }

    if deflated.degree() > 0 {
        let raw = aberth(&deflated)?;
        let clusters = cluster(&deflated, &raw);
        out.extend(clusters);
    }

    Ok(out)
}

/// Aberth-Ehrlich simultaneous iteration. Restarts with rotated initial
/// circles if the first attempt stalls.
fn aberth(p: &Polynomial) -> Result<Vec<Complex64>> {
    for attempt in 0..4 {
        if let Some(z) = aberth_once(p, attempt) {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence {
        degree: p.degree(),
        detail: format!("Aberth iteration stalled on coefficients {:?}", p.coeffs()),
    })
}

fn aberth_once(p: &Polynomial, attempt: usize) -> Option<Vec<Complex64>> {
    let n = p.degree();
    let dp = p.derivative();

    // Initial guesses on a circle sized by the Cauchy bound.
    let lead = p.leading().norm();
    let cauchy = 1.0
        + p.coeffs()[..n]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0, f64::max);
    let radius = cauchy.min(1e6) * (0.5 + 0.35 * attempt as f64);
    let phase0 = 0.4 + 0.77 * attempt as f64;
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let th = phase0 + 2.0 * std::f64::consts::PI * k as f64 / n as f64
                + 0.2 * k as f64 / n as f64;
            Complex64::from_polar(radius * (0.8 + 0.4 * (k as f64 / n as f64)), th)
        })
        .collect();

    let scale = p.max_norm();
    let max_iter = 400;
    for _ in 0..max_iter {
        let mut moved = 0.0f64;
        for k in 0..n {
            let pv = p.eval(z[k]);
            let dv = dp.eval(z[k]);
            let newton = if dv.norm() > 0.0 {
                pv / dv
            } else {
                // perturb off the critical point
                z[k] += Complex64::new(1e-6, 1e-6);
                continue;
            };
            let mut sum = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != k {
                    let d = z[k] - z[j];
                    if d.norm() > 1e-300 {
                        sum += Complex64::new(1.0, 0.0) / d;
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * sum;
            let step = if denom.norm() > 1e-300 {
                newton / denom
            } else {
                newton
            };
            z[k] -= step;
            moved = moved.max(step.norm() / (1.0 + z[k].norm()));
        }
        if moved < 1e-14 {
            break;
        }
    }

    // Residual acceptance: |p(root)| small relative to the coefficient
    // scale at the root's magnitude.
    for &zk in &z {
        let bound = EPS_ROOT * scale * (1.0 + zk.norm()).powi(p.degree() as i32);
        if p.eval(zk).norm() > bound {
            return None;
        }
    }
    Some(z)
}

/// Single-linkage clustering at the tight radius, then a repair pass that
/// merges wider clusters when the polynomial genuinely vanishes to the
/// combined order (multiple roots scatter at radius ~eps^(1/m)).
fn cluster(p: &Polynomial, raw: &[Complex64]) -> Vec<RootMult> {
    let tight = link(raw, |a, b| (a - b).norm() <= eps_cluster(a) + eps_cluster(b));

    // Repair pass: re-link at a generous radius and test each candidate
    // super-cluster as a single multiple root.
    let wide = link(raw, |a, b| {
        (a - b).norm() <= 3e-4 * (2.0 + a.norm() + b.norm())
    });
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for members in wide {
        let m = members.len();
        if m < 2 {
            groups.push(members);
            continue;
        }
        let c0 = centroid(&members);
        let c = refine_multiple(p, c0, m);
        // accept only if every raw member sits inside the expected scatter
        // radius of an m-fold root and the polynomial vanishes to order m
        let guard = 20.0 * (f64::EPSILON).powf(1.0 / m as f64) * (1.0 + c.norm());
        let tight_here: Vec<Vec<Complex64>> = tight
            .iter()
            .filter(|g| members.iter().any(|&r| g.contains(&r)))
            .cloned()
            .collect();
        let already_single = tight_here.len() == 1;
        if !already_single
            && members.iter().all(|&r| (r - c).norm() <= guard)
            && p.order_at(c) >= m
        {
            groups.push(vec![c; m]);
        } else {
            groups.extend(tight_here);
        }
    }

    groups
        .into_iter()
        .map(|g| {
            let m = g.len();
            let c0 = centroid(&g);
            let z = if m > 1 { refine_multiple(p, c0, m) } else { refine_simple(p, c0) };
            RootMult { z, mult: m }
        })
        .collect()
}

fn link<F: Fn(Complex64, Complex64) -> bool>(pts: &[Complex64], close: F) -> Vec<Vec<Complex64>> {
    let n = pts.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if close(pts[i], pts[j]) {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut map = std::collections::HashMap::new();
    for (i, p) in pts.iter().enumerate().take(n) {
        let r = find(&mut parent, i);
        map.entry(r).or_insert_with(Vec::new).push(*p);
    }
    map.into_values().collect()
}

fn centroid(g: &[Complex64]) -> Complex64 {
    g.iter().sum::<Complex64>() / g.len() as f64
}

/// Newton refinement on p itself (simple root).
fn refine_simple(p: &Polynomial, mut z: Complex64) -> Complex64 {
    let dp = p.derivative();
    for _ in 0..6 {
        let dv = dp.eval(z);
        if dv.norm() < 1e-300 {
            break;
        }
        let step = p.eval(z) / dv;
        z -= step;
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

/// Newton refinement on the (m-1)-th derivative, which has a simple root
/// at an m-fold root of p.
fn refine_multiple(p: &Polynomial, mut z: Complex64, m: usize) -> Complex64 {
    let q = p.derivative_n(m - 1);
    let dq = q.derivative();
    for _ in 0..20 {
        let dv = dq.eval(z);
        if dv.norm() < 1e-300 {
            break;
        }
        let step = q.eval(z) / dv;
        z -= step;
        if step.norm() < 1e-15 * (1.0 + z.norm()) {
            break;
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn sorted(mut r: Vec<RootMult>) -> Vec<RootMult> {
        r.sort_by(|a, b| {
            (a.z.re, a.z.im)
                .partial_cmp(&(b.z.re, b.z.im))
                .unwrap()
        });
        r
    }

    #[test]
    fn quadratic_with_imaginary_roots() {
        // z^2 + 1
        let p = Polynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let r = sorted(roots(&p).unwrap());
        assert_eq!(r.len(), 2);
        assert!((r[0].z - c(0.0, -1.0)).norm() < 1e-10 || (r[0].z - c(0.0, 1.0)).norm() < 1e-10);
        assert_eq!(r[0].mult + r[1].mult, 2);
    }

    #[test]
    fn triple_root() {
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)]);
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].mult, 3);
        assert!((r[0].z - c(1.0, 0.0)).norm() < 1e-8);
    }

    #[test]
    fn monomial_roots_at_origin() {
        let p = Polynomial::new(vec![c(0.0, 0.0); 7].into_iter().chain([c(2.0, 0.0)]).collect());
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].mult, 7);
        assert_eq!(r[0].z, c(0.0, 0.0));
    }

    #[test]
    fn planted_degree_five() {
        let planted = [c(1.5, 0.0), c(-2.0, 1.0), c(0.3, -0.7), c(4.0, 0.0), c(0.0, 2.5)];
        let p = Polynomial::from_roots(&planted).scale(c(3.0, -1.0));
        let r = roots(&p).unwrap();
        assert_eq!(r.len(), 5);
        for want in planted {
            assert!(
                r.iter().any(|rm| (rm.z - want).norm() < 1e-8),
                "missing root {want}"
            );
        }
    }

    #[test]
    fn double_plus_simple() {
        // (z-1)^2 (z+2)
        let p = Polynomial::from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]);
        let r = sorted(roots(&p).unwrap());
        assert_eq!(r.len(), 2);
        assert_eq!(r[0].mult, 1);
        assert_eq!(r[1].mult, 2);
        assert!((r[1].z - c(1.0, 0.0)).norm() < 1e-9);
    }
}
