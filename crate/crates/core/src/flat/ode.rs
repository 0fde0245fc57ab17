//! Adaptive integration of the Legendrian lift equation
//! dE/dz = E [[0, t_hat], [w_hat, 0]] along polyline paths, with
//! determinant renormalization per accepted step, and monodromy around
//! punctures.

use num_complex::Complex64;

use super::forms::CanonicalForms;
use super::frame::Sl2Frame;
use crate::error::{Error, Result};
use crate::rational::{RationalMap, SpherePoint};

/// Per-step relative tolerance of the embedded pair.
pub const TOL_ODE: f64 = 1e-11;
/// Paths must stay this far from poles of the coefficient forms.
pub const GUARD_PATH: f64 = 1e-6;

static TOL_BITS: std::sync::atomic::AtomicU64 =
    std::sync::atomic::AtomicU64::new(TOL_ODE.to_bits());

/// Process-wide override of the per-step tolerance (CLI --tol).
pub fn set_tolerance(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol < 1.0) {
        return Err(Error::InvalidInput(format!("tolerance {tol} out of range")));
    }
    TOL_BITS.store(tol.to_bits(), std::sync::atomic::Ordering::Relaxed);
    Ok(())
}

/// Current per-step tolerance; TOL_ODE unless overridden.
pub fn tolerance() -> f64 {
    f64::from_bits(TOL_BITS.load(std::sync::atomic::Ordering::Relaxed))
}

const MIN_STEP: f64 = 1e-14;

type State = [Complex64; 4];

fn eval_coeff(r: &RationalMap, z: Complex64) -> Result<Complex64> {
    match r.eval(SpherePoint::Finite(z)) {
        SpherePoint::Finite(v) if v.is_finite() => Ok(v),
        _ => Err(Error::PathHitsSingularity(z.to_string())),
    }
}

/// E' = E A with A = [[0, t],[w, 0]], scaled by dz/ds along the segment.
fn rhs(forms: &CanonicalForms, e: &State, z: Complex64, dz: Complex64) -> Result<State> {
    let w = eval_coeff(forms.w_hat(), z)? * dz;
    let t = eval_coeff(forms.t_hat(), z)? * dz;
    Ok([e[1] * w, e[0] * t, e[3] * w, e[2] * t])
}

fn axpy(e: &State, h: f64, ks: &[&State], cs: &[f64]) -> State {
    let mut out = *e;
    for (k, c) in ks.iter().zip(cs) {
        for i in 0..4 {
            out[i] += h * c * k[i];
        }
    }
    out
}

fn max_norm(e: &State) -> f64 {
    e.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// One Dormand-Prince 5(4) attempt over [s, s+h] on a unit-parametrized
/// segment with direction dz; returns the 5th-order state and the
/// embedded error estimate.
fn dp_step(
    forms: &CanonicalForms,
    e: &State,
    z0: Complex64,
    dz: Complex64,
    s: f64,
    h: f64,
) -> Result<(State, f64)> {
    let z = |c: f64| z0 + (s + c * h) * dz;
    let k1 = rhs(forms, e, z(0.0), dz)?;
    let k2 = rhs(forms, &axpy(e, h, &[&k1], &[1.0 / 5.0]), z(1.0 / 5.0), dz)?;
    let k3 = rhs(
        forms,
        &axpy(e, h, &[&k1, &k2], &[3.0 / 40.0, 9.0 / 40.0]),
        z(3.0 / 10.0),
        dz,
    )?;
    let k4 = rhs(
        forms,
        &axpy(e, h, &[&k1, &k2, &k3], &[44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0]),
        z(4.0 / 5.0),
        dz,
    )?;
    let k5 = rhs(
        forms,
        &axpy(
            e,
            h,
            &[&k1, &k2, &k3, &k4],
            &[
                19372.0 / 6561.0,
                -25360.0 / 2187.0,
                64448.0 / 6561.0,
                -212.0 / 729.0,
            ],
        ),
        z(8.0 / 9.0),
        dz,
    )?;
    let k6 = rhs(
        forms,
        &axpy(
            e,
            h,
            &[&k1, &k2, &k3, &k4, &k5],
            &[
                9017.0 / 3168.0,
                -355.0 / 33.0,
                46732.0 / 5247.0,
                49.0 / 176.0,
                -5103.0 / 18656.0,
            ],
        ),
        z(1.0),
        dz,
    )?;
    let e5 = axpy(
        e,
        h,
        &[&k1, &k3, &k4, &k5, &k6],
        &[
            35.0 / 384.0,
            500.0 / 1113.0,
            125.0 / 192.0,
            -2187.0 / 6784.0,
            11.0 / 84.0,
        ],
    );
    let k7 = rhs(forms, &e5, z(1.0), dz)?;
    // difference of the 5th- and embedded 4th-order weights
    let err = axpy(
        &[Complex64::new(0.0, 0.0); 4],
        h,
        &[&k1, &k3, &k4, &k5, &k6, &k7],
        &[
            71.0 / 57600.0,
            -71.0 / 16695.0,
            71.0 / 1920.0,
            -17253.0 / 339200.0,
            22.0 / 525.0,
            -1.0 / 40.0,
        ],
    );
    Ok((e5, max_norm(&err)))
}

fn distance_to_segment(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let t = ((p - a) * ab.conj()).re / len2;
    let t = t.clamp(0.0, 1.0);
    (p - (a + t * ab)).norm()
}

fn check_segment(forms: &CanonicalForms, a: Complex64, b: Complex64) -> Result<()> {
    for s in forms.finite_singularities()? {
        if distance_to_segment(s, a, b) < GUARD_PATH {
            return Err(Error::PathHitsSingularity(s.to_string()));
        }
    }
    Ok(())
}

fn integrate_segment(
    forms: &CanonicalForms,
    e0: Sl2Frame,
    a: Complex64,
    b: Complex64,
) -> Result<Sl2Frame> {
    check_segment(forms, a, b)?;
    let dz = b - a;
    if dz.norm() == 0.0 {
        return Ok(e0);
    }
    let mut e = [e0.e11, e0.e12, e0.e21, e0.e22];
    let mut s = 0.0f64;
    let mut h = 1.0f64;
    while s < 1.0 {
        h = h.min(1.0 - s);
        let (next, err) = dp_step(forms, &e, a, dz, s, h)?;
        let scale = tolerance() * (1.0 + max_norm(&e));
        if err <= scale {
            e = next;
            s += h;
            let f = Sl2Frame {
                e11: e[0],
                e12: e[1],
                e21: e[2],
                e22: e[3],
            }
            .renormalize();
            e = [f.e11, f.e12, f.e21, f.e22];
            let grow = if err > 0.0 {
                (0.9 * (scale / err).powf(0.2)).min(5.0)
            } else {
                5.0
            };
            h *= grow;
        } else {
            h *= (0.9 * (scale / err).powf(0.2)).max(0.2);
        }
        if h < MIN_STEP {
            return Err(Error::ToleranceNotMet(format!(
                "step size underflow near z = {}",
                a + s * dz
            )));
        }
    }
    Ok(Sl2Frame {
        e11: e[0],
        e12: e[1],
        e21: e[2],
        e22: e[3],
    })
}

/// Integrates the lift along a polyline, returning the final frame.
/// An empty or single-point path returns `e0` unchanged.
pub fn integrate_lift(forms: &CanonicalForms, path: &[Complex64], e0: Sl2Frame) -> Result<Sl2Frame> {
    let mut e = e0;
    for w in path.windows(2) {
        e = integrate_segment(forms, e, w[0], w[1])?;
    }
    Ok(e)
}

/// Integrates the lift along a polyline, returning the frame at every
/// path vertex.
pub fn integrate_lift_trace(
    forms: &CanonicalForms,
    path: &[Complex64],
    e0: Sl2Frame,
) -> Result<Vec<Sl2Frame>> {
    let mut out = Vec::with_capacity(path.len());
    let mut e = e0;
    if !path.is_empty() {
        out.push(e);
    }
    for w in path.windows(2) {
        e = integrate_segment(forms, e, w[0], w[1])?;
        out.push(e);
    }
    Ok(out)
}

const LOOP_SIDES: usize = 32;

/// Monodromy of the lift around one puncture: the frame after one
/// positively oriented loop, started from the identity. Identity within
/// 1e-8 iff the lift is single-valued around the puncture.
pub fn monodromy(forms: &CanonicalForms, puncture: SpherePoint) -> Result<Sl2Frame> {
    let (center, radius, orient) = match puncture {
        SpherePoint::Finite(c) => (c, forms.contour_radius(c)?, 1.0),
        // a positive loop around infinity runs clockwise in the z-plane,
        // on a circle enclosing every finite singularity
        SpherePoint::Infinity => (Complex64::new(0.0, 0.0), forms.enclosing_radius()?, -1.0),
    };
    monodromy_loop(forms, center, radius, orient)
}

/// Monodromy around an explicit circle (polygonal approximation; the
/// coefficient forms are holomorphic off their poles, so only the
/// homotopy class of the loop matters).
pub fn monodromy_loop(
    forms: &CanonicalForms,
    center: Complex64,
    radius: f64,
    orient: f64,
) -> Result<Sl2Frame> {
    let mut path = Vec::with_capacity(LOOP_SIDES + 1);
    for k in 0..=LOOP_SIDES {
        let th = orient * 2.0 * std::f64::consts::PI * k as f64 / LOOP_SIDES as f64;
        path.push(center + radius * Complex64::from_polar(1.0, th));
    }
    integrate_lift(forms, &path, Sl2Frame::identity())
}
