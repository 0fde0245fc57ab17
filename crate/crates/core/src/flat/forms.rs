//! Canonical forms (omega, theta) = (w_hat dz, t_hat dz) of a flat front,
//! the Hopf differential and ratio rho, the constant-rho classifier, and
//! per-puncture end-order records.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::affine::form_order;
use crate::error::{Error, Result};
use crate::rational::{RationalMap, SpherePoint};
use crate::valdist::PuncturedSphere;

/// Holomorphic data of a flat front: the off-diagonal entries of the
/// Maurer-Cartan form of its Legendrian lift.
#[derive(Clone, Debug)]
pub struct CanonicalForms {
    w_hat: RationalMap,
    t_hat: RationalMap,
    dom: PuncturedSphere,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FlatClass {
    Horosphere,
    HyperbolicCylinderCandidate,
    Generic,
}

/// End record at one puncture: orders of |omega|^2 and |theta|^2, the
/// Hopf order, and the regularity and completeness flags.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WcfEndRecord {
    pub puncture: SpherePoint,
    pub mu: i64,
    pub mu_star: i64,
    pub ord_q: i64,
    pub regular: bool,
    pub weakly_complete_necessary: bool,
}

impl CanonicalForms {
    pub fn new(w_hat: RationalMap, t_hat: RationalMap, dom: PuncturedSphere) -> Result<Self> {
        if w_hat.is_zero() && t_hat.is_zero() {
            return Err(Error::DegenerateData(
                "omega and theta are both identically zero".into(),
            ));
        }
        let forms = CanonicalForms { w_hat, t_hat, dom };
        for (r, name) in [(&forms.w_hat, "omega"), (&forms.t_hat, "theta")] {
            for p in r.poles()? {
                let sp = SpherePoint::Finite(p.z);
                if !forms.dom.contains_puncture(&sp) {
                    return Err(Error::InvalidInput(format!(
                        "pole of {name} at {} is not a puncture",
                        p.z
                    )));
                }
            }
        }
        Ok(forms)
    }

    pub fn w_hat(&self) -> &RationalMap {
        &self.w_hat
    }

    pub fn t_hat(&self) -> &RationalMap {
        &self.t_hat
    }

    pub fn domain(&self) -> &PuncturedSphere {
        &self.dom
    }

    /// Finite punctures plus finite poles of either form.
    pub fn finite_singularities(&self) -> Result<Vec<Complex64>> {
        let mut pts: Vec<Complex64> = self
            .dom
            .punctures()
            .iter()
            .filter_map(|p| p.as_finite())
            .collect();
        for r in [&self.w_hat, &self.t_hat] {
            for p in r.poles()? {
                if !pts.iter().any(|&q| (q - p.z).norm() < 1e-9 * (1.0 + q.norm())) {
                    pts.push(p.z);
                }
            }
        }
        Ok(pts)
    }

    /// Half the distance from a finite puncture to the nearest other
    /// singular point (1 when alone): the monodromy contour radius.
    pub fn contour_radius(&self, center: Complex64) -> Result<f64> {
        let mut best = f64::INFINITY;
        for q in self.finite_singularities()? {
            let d = (q - center).norm();
            if d > 1e-9 * (1.0 + center.norm()) {
                best = best.min(d);
            }
        }
        let r = if best.is_finite() { best / 2.0 } else { 1.0 };
        if r <= 0.0 {
            return Err(Error::ContourTooClose(center.to_string()));
        }
        Ok(r)
    }

    /// Radius of an origin-centered circle enclosing all finite
    /// singularities.
    pub fn enclosing_radius(&self) -> Result<f64> {
        let m = self
            .finite_singularities()?
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        Ok(2.0 * m.max(1.0))
    }

    /// Coefficient of the Hopf differential Q = omega theta.
    pub fn hopf(&self) -> Result<RationalMap> {
        self.w_hat.mul(&self.t_hat)
    }

    /// rho = theta / omega, reduced.
    pub fn rho(&self) -> Result<RationalMap> {
        if self.w_hat.is_zero() {
            return Err(Error::DegenerateData(
                "rho is undefined when omega vanishes identically".into(),
            ));
        }
        self.t_hat.div(&self.w_hat)
    }

    /// Coefficient of |dz|^2 in the Sasakian-type metric
    /// ds^2_{1,1} = |omega|^2 + |theta|^2.
    pub fn ds11_factor(&self, z: Complex64) -> f64 {
        let val = |r: &RationalMap| match r.eval(SpherePoint::Finite(z)) {
            SpherePoint::Finite(v) => v.norm_sqr(),
            SpherePoint::Infinity => f64::INFINITY,
        };
        val(&self.w_hat) + val(&self.t_hat)
    }

    /// Constant-rho dichotomy: Q identically zero is a horosphere;
    /// constant nonzero rho marks the hyperbolic-cylinder configuration.
    /// The candidate label is not a congruence check against the model
    /// cylinder; it records the constant-ratio two-end configuration.
    pub fn classify_rho(&self) -> Result<FlatClass> {
        if self.hopf()?.is_zero() {
            return Ok(FlatClass::Horosphere);
        }
        let rho = self.rho()?;
        if rho.is_constant() {
            Ok(FlatClass::HyperbolicCylinderCandidate)
        } else {
            Ok(FlatClass::Generic)
        }
    }

    /// Per-puncture end orders. Requires both forms nonzero when the
    /// domain has punctures: a vanishing form has no finite order.
    pub fn wcf_end_orders(&self) -> Result<Vec<WcfEndRecord>> {
        let punctures = self.dom.punctures();
        if punctures.is_empty() {
            return Ok(Vec::new());
        }
        if self.w_hat.is_zero() || self.t_hat.is_zero() {
            return Err(Error::DegenerateData(
                "end orders need both canonical forms nonzero".into(),
            ));
        }
        let mut out = Vec::new();
        for p in punctures {
            let mu = form_order(&self.w_hat, *p);
            let mu_star = form_order(&self.t_hat, *p);
            let ord_q = mu + mu_star;
            out.push(WcfEndRecord {
                puncture: *p,
                mu,
                mu_star,
                ord_q,
                regular: ord_q >= -2,
                weakly_complete_necessary: mu.min(mu_star) <= 1,
            });
        }
        Ok(out)
    }
}
