//! Evaluation of the representation formula: the front point, built from
//! F, G and a closed-form antiderivative of F dG anchored at a base point.

use num_complex::Complex64;

use super::antider::RationalAntiderivative;
use super::data::{AffinePoint, PeriodVerdict, WeierstrassData};
use crate::error::{Error, Result};
use crate::rational::{RationalMap, SpherePoint};

/// A certified, evaluable immersion. Construction runs the period check
/// and is refused unless the data is well defined on the punctured sphere.
#[derive(Clone, Debug)]
pub struct Immersion {
    f: RationalMap,
    g: RationalMap,
    anti: RationalAntiderivative,
    base: Complex64,
    base_val: Complex64,
    guard_points: Vec<Complex64>,
}

impl Immersion {
    /// Prepares the immersion. `base` fixes the integration constant of
    /// int F dG; when absent, 0 is used unless singular there, then 1.
    pub fn prepare(data: &WeierstrassData, base: Option<Complex64>) -> Result<Self> {
        let cert = data.period_check()?;
        if cert.verdict != PeriodVerdict::WellDefined {
            return Err(Error::NotWellDefined);
        }
        let (f, g) = data.curve()?;
        let fdg = f.mul(&g.derivative()?)?;
        let anti = RationalAntiderivative::of(&fdg)?;

        let guard_points = data.finite_singularities()?;
        let base = match base {
            Some(b) => b,
            None => {
                let candidates = [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)];
                *candidates
                    .iter()
                    .find(|c| {
                        !guard_points
                            .iter()
                            .any(|s| (*s - **c).norm() < 1e-9 * (1.0 + s.norm()))
                    })
                    .ok_or_else(|| Error::InvalidInput("no regular base point found".into()))?
            }
        };
        if guard_points
            .iter()
            .any(|s| (*s - base).norm() < 1e-12 * (1.0 + s.norm()))
        {
            return Err(Error::EvaluationAtSingularity(base.to_string()));
        }
        let base_val = anti.eval(base);
        Ok(Immersion {
            f,
            g,
            anti,
            base,
            base_val,
            guard_points,
        })
    }

    pub fn base(&self) -> Complex64 {
        self.base
    }

    fn finite(&self, r: &RationalMap, z: Complex64) -> Result<Complex64> {
        match r.eval(SpherePoint::Finite(z)) {
            SpherePoint::Finite(v) if v.is_finite() => Ok(v),
            _ => Err(Error::EvaluationAtSingularity(z.to_string())),
        }
    }

    /// psi(z) = (G + conj F, (|G|^2 - |F|^2)/2 + Re(G F - 2 int F dG)).
    /// The height is equivalently Re int (G dF - F dG) plus the modulus
    /// term; this is the variant annihilated by the conormal (conj F - G, 1).
    pub fn eval(&self, z: Complex64) -> Result<AffinePoint> {
        if self
            .guard_points
            .iter()
            .any(|s| (*s - z).norm() < 1e-12 * (1.0 + s.norm()))
        {
            return Err(Error::EvaluationAtSingularity(z.to_string()));
        }
        let fv = self.finite(&self.f, z)?;
        let gv = self.finite(&self.g, z)?;
        let integral = self.anti.eval(z) - self.base_val;
        let phi = (gv.norm_sqr() - fv.norm_sqr()) / 2.0 + (gv * fv - 2.0 * integral).re;
        Ok(AffinePoint {
            x: gv + fv.conj(),
            phi,
        })
    }

    /// First component of the conormal, conj(F) - G.
    pub fn conormal(&self, z: Complex64) -> Result<Complex64> {
        let fv = self.finite(&self.f, z)?;
        let gv = self.finite(&self.g, z)?;
        Ok(fv.conj() - gv)
    }
}

/// Conormal without period certification (it needs only F and G values).
pub fn conormal(data: &WeierstrassData, z: Complex64) -> Result<Complex64> {
    let (f, g) = data.curve()?;
    let fv = match f.eval(SpherePoint::Finite(z)) {
        SpherePoint::Finite(v) if v.is_finite() => v,
        _ => return Err(Error::EvaluationAtSingularity(z.to_string())),
    };
    let gv = match g.eval(SpherePoint::Finite(z)) {
        SpherePoint::Finite(v) if v.is_finite() => v,
        _ => return Err(Error::EvaluationAtSingularity(z.to_string())),
    };
    Ok(fv.conj() - gv)
}
