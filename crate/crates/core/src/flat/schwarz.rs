//! Numerical verification of the Schwarzian identity s(omega) - S(G) = 2Q:
//! closed-form s(omega) from the rational coefficient of omega against a
//! finite-difference Schwarzian of the hyperbolic Gauss map sampled from
//! integrated lifts.

use num_complex::Complex64;

use super::forms::CanonicalForms;
use super::frame::Sl2Frame;
use super::ode::integrate_lift_trace;
use crate::affine::Window;
use crate::error::{Error, Result};
use crate::par;
use crate::rational::{RationalMap, SpherePoint};

/// Finite-difference step for the Gauss-map Schwarzian.
pub const H_FD: f64 = 1e-3;
/// Grid points with |E21| at or below this are masked: G is near a pole
/// and the finite-difference Schwarzian is ill-conditioned there.
pub const MASK_E21: f64 = 0.1;

/// Schwarzian derivative of any primitive of omega = w_hat dz, as a
/// rational map: (w'/w)' - (1/2)(w'/w)^2.
pub fn schwarzian_of_form(w_hat: &RationalMap) -> Result<RationalMap> {
    if w_hat.is_zero() {
        return Err(Error::DegenerateData(
            "Schwarzian of a vanishing form".into(),
        ));
    }
    if w_hat.is_constant() {
        return Ok(RationalMap::constant(Complex64::new(0.0, 0.0)));
    }
    let l = w_hat.derivative()?.div(w_hat)?;
    let half_l2 = l.mul(&l)?.mul(&RationalMap::constant(Complex64::new(0.5, 0.0)))?;
    l.derivative()?.sub(&half_l2)
}

fn eval_finite(r: &RationalMap, z: Complex64) -> Option<Complex64> {
    match r.eval(SpherePoint::Finite(z)) {
        SpherePoint::Finite(v) if v.is_finite() => Some(v),
        _ => None,
    }
}

/// G or 1/G per the `invert` flag. The Schwarzian is invariant under
/// G -> 1/G, and differencing the better-conditioned branch keeps the
/// finite differences accurate near poles of G.
fn gauss_value(e: &Sl2Frame, invert: bool) -> Option<Complex64> {
    let (num, den) = if invert {
        (e.e21, e.e11)
    } else {
        (e.e11, e.e21)
    };
    if den.norm() <= 1e-12 {
        None
    } else {
        Some(num / den)
    }
}

/// Max of |s(omega) - S(G) - 2Q| over an n x n grid on the window,
/// masking points near poles of G or with unreachable sample paths.
/// S(G) uses 5-point finite differences of G at step `H_FD` along the
/// real direction, with G sampled from lifts integrated from `base`.
pub fn schwarzian_check(forms: &CanonicalForms, window: Window, n: usize) -> Result<f64> {
    if n < 2 {
        return Err(Error::InvalidInput("grid too small".into()));
    }
    if forms.w_hat().is_zero() {
        // E21 stays at its initial value 0, so G is constant infinity
        return Err(Error::DegenerateData(
            "G is constant: omega vanishes identically".into(),
        ));
    }
    let s_omega = schwarzian_of_form(forms.w_hat())?;
    let q = forms.hopf()?;

    let sing = forms.finite_singularities()?;
    let base = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0)]
        .into_iter()
        .find(|b| sing.iter().all(|s| (s - b).norm() > 1e-3))
        .ok_or_else(|| Error::InvalidInput("no regular base point found".into()))?;

    let mut zs = Vec::with_capacity(n * n);
    for i in 0..n {
        let x = window.xmin + (window.xmax - window.xmin) * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let y = window.ymin + (window.ymax - window.ymin) * j as f64 / (n - 1) as f64;
            zs.push(Complex64::new(x, y));
        }
    }

    let h = H_FD;
    let residuals = par::map(zs, |z| -> Option<f64> {
        let path = [
            base,
            z - 2.0 * h,
            z - h,
            z,
            z + h,
            z + 2.0 * h,
        ];
        let frames = integrate_lift_trace(forms, &path, Sl2Frame::identity()).ok()?;
        // frames[1..=5] sit at the five stencil points
        let center = &frames[3];
        if center.e21.norm() <= MASK_E21 {
            return None;
        }
        let invert = center.e11.norm() > center.e21.norm();
        let g: Vec<Complex64> = frames[1..=5]
            .iter()
            .map(|e| gauss_value(e, invert))
            .collect::<Option<Vec<_>>>()?;
        let g1 = (-g[4] + 8.0 * g[3] - 8.0 * g[1] + g[0]) / (12.0 * h);
        let g2 = (-g[4] + 16.0 * g[3] - 30.0 * g[2] + 16.0 * g[1] - g[0]) / (12.0 * h * h);
        let g3 = (g[4] - 2.0 * g[3] + 2.0 * g[1] - g[0]) / (2.0 * h * h * h);
        if g1.norm() <= 1e-8 {
            return None;
        }
        let sg = g3 / g1 - 1.5 * (g2 / g1) * (g2 / g1);
        let sv = eval_finite(&s_omega, z)?;
        let qv = eval_finite(&q, z)?;
        Some((sv - sg - 2.0 * qv).norm())
    });

    let mut max = f64::NEG_INFINITY;
    let mut any = false;
    for r in residuals.into_iter().flatten() {
        any = true;
        max = max.max(r);
    }
    if !any {
        return Err(Error::DegenerateData(
            "every grid point was masked".into(),
        ));
    }
    Ok(max)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Polynomial;
    use crate::valdist::PuncturedSphere;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn schwarzian_of_constant_form_is_zero() {
        let s = schwarzian_of_form(&RationalMap::constant(c(1.0, 0.0))).unwrap();
        assert!(s.is_zero());
    }

    #[test]
    fn schwarzian_of_simple_pole() {
        // w = 1/(z-2): w'/w = -1/(z-2), s = 1/(z-2)^2 - 1/(2(z-2)^2)
        //            = 1/(2(z-2)^2)
        let w = RationalMap::new(
            Polynomial::one(),
            Polynomial::new(vec![c(-2.0, 0.0), c(1.0, 0.0)]),
        )
        .unwrap();
        let s = schwarzian_of_form(&w).unwrap();
        let z = c(0.3, 0.4);
        match s.eval(SpherePoint::Finite(z)) {
            SpherePoint::Finite(v) => {
                let want = 0.5 / ((z - 2.0) * (z - 2.0));
                assert!((v - want).norm() < 1e-12);
            }
            _ => panic!("finite expected"),
        }
    }

    #[test]
    fn identity_holds_for_linear_theta() {
        // w=1, t=z: s(omega)=0, so S(G) must track -2Q = -2z
        let forms = CanonicalForms::new(
            RationalMap::constant(c(1.0, 0.0)),
            RationalMap::from_poly(Polynomial::z()),
            PuncturedSphere::sphere(),
        )
        .unwrap();
        let win = Window {
            xmin: 0.2,
            xmax: 0.7,
            ymin: 0.2,
            ymax: 0.7,
        };
        let r = schwarzian_check(&forms, win, 7).unwrap();
        assert!(r <= 1e-4, "residual {r}");
    }

    #[test]
    fn degenerate_g_is_reported() {
        let forms = CanonicalForms::new(
            RationalMap::constant(c(0.0, 0.0)),
            RationalMap::constant(c(1.0, 0.0)),
            PuncturedSphere::sphere(),
        )
        .unwrap();
        let win = Window {
            xmin: -0.5,
            xmax: 0.5,
            ymin: -0.5,
            ymax: 0.5,
        };
        assert!(matches!(
            schwarzian_check(&forms, win, 5),
            Err(Error::DegenerateData(_))
        ));
    }

    #[test]
    fn identity_holds_for_rational_omega() {
        // w = 1/(z-2), t = 0 on |z| <= 1
        let w = RationalMap::new(
            Polynomial::one(),
            Polynomial::new(vec![c(-2.0, 0.0), c(1.0, 0.0)]),
        )
        .unwrap();
        let dom = PuncturedSphere::new(vec![SpherePoint::Finite(c(2.0, 0.0))]).unwrap();
        let forms =
            CanonicalForms::new(w, RationalMap::constant(c(0.0, 0.0)), dom).unwrap();
        let win = Window {
            xmin: -0.7,
            xmax: 0.7,
            ymin: -0.7,
            ymax: 0.7,
        };
        let r = schwarzian_check(&forms, win, 7).unwrap();
        assert!(r <= 1e-4, "residual {r}");
    }
}
