//! Weierstrass data for improper affine fronts and the derived quantities:
//! Lagrangian Gauss map, period certificates, immersion, conormal, metric
//! samples, end orders, and the constant-map classifier.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::antider::RationalAntiderivative;
use crate::error::{Error, Result};
use crate::quad;
use crate::rational::{RationalMap, SpherePoint};
use crate::valdist::PuncturedSphere;

/// Singular-flag tolerance on ||nu| - 1|.
pub const EPS_SING: f64 = 1e-6;
/// Residue tolerance for period certification.
pub const EPS_RES: f64 = 1e-10;

/// Holomorphic data of an improper affine front. Explicit mode carries
/// the curve (F, G) directly; differential mode carries the Gauss map and
/// the coefficient of dG, with F and G synthesized by integration only
/// when they are single-valued.
#[derive(Clone, Debug)]
pub enum WeierstrassMode {
    Explicit { f: RationalMap, g: RationalMap },
    Differential { nu: RationalMap, dg: RationalMap },
}

#[derive(Clone, Debug)]
pub struct WeierstrassData {
    mode: WeierstrassMode,
    dom: PuncturedSphere,
}

/// Point of the front: x identified with R^2 as a complex number, phi the
/// height over the affine normal direction.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AffinePoint {
    pub x: Complex64,
    pub phi: f64,
}

/// Residue record at one puncture.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PunctureResidues {
    pub puncture: SpherePoint,
    pub res_dg: Complex64,
    pub res_df: Complex64,
    /// Residue of F dG; absent when F itself is multivalued.
    pub res_f_dg: Option<Complex64>,
    pub single_valued_g: bool,
    pub single_valued_f: bool,
    pub re_period_zero: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PeriodVerdict {
    WellDefined,
    UniversalCoverOnly,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PeriodCertificate {
    pub records: Vec<PunctureResidues>,
    pub verdict: PeriodVerdict,
}

/// Pointwise metric data of the three fundamental forms.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct MetricSample {
    pub nu_val: Complex64,
    /// Coefficient of |dz|^2 in the induced metric, 2(1+|nu|^2)|G'|^2.
    pub dtau_factor: f64,
    /// Coefficient of |dz|^2 in the affine metric, |G'|^2 - |F'|^2.
    pub g_factor: f64,
    /// Coefficient of dz^2 in the flat fundamental form, F'G'.
    pub ds2_hol_part: Complex64,
    pub singular: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum AffineClass {
    EllipticParaboloid,
    DegenerateLine,
    Generic,
}

/// Per-puncture end-order record.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EndOrder {
    pub puncture: SpherePoint,
    pub ord_dg: i64,
    pub ord_dtau: i64,
    pub completeness_necessary: bool,
}

/// Order of the one-form (h dz) at a sphere point: the function order at
/// finite points, shifted by -2 at infinity.
pub fn form_order(h: &RationalMap, p: SpherePoint) -> i64 {
    match p {
        SpherePoint::Finite(_) => h.order_at(p),
        SpherePoint::Infinity => h.order_at(p) - 2,
    }
}

impl WeierstrassData {
    pub fn explicit(f: RationalMap, g: RationalMap, dom: PuncturedSphere) -> Result<Self> {
        if f.is_constant() && g.is_constant() {
            return Err(Error::DegenerateData(
                "dF and dG are both identically zero".into(),
            ));
        }
        let data = WeierstrassData {
            mode: WeierstrassMode::Explicit { f, g },
            dom,
        };
        data.check_pole_locations()?;
        Ok(data)
    }

    pub fn differential(nu: RationalMap, dg: RationalMap, dom: PuncturedSphere) -> Result<Self> {
        if dg.is_zero() {
            return Err(Error::DegenerateData("dG is identically zero".into()));
        }
        let data = WeierstrassData {
            mode: WeierstrassMode::Differential { nu, dg },
            dom,
        };
        data.check_pole_locations()?;
        Ok(data)
    }

    fn check_pole_locations(&self) -> Result<()> {
        let check = |r: &RationalMap, name: &str| -> Result<()> {
            for p in r.poles()? {
                let sp = SpherePoint::Finite(p.z);
                if !self.dom.contains_puncture(&sp) {
                    return Err(Error::InvalidInput(format!(
                        "pole of {name} at {} is not a puncture",
                        p.z
                    )));
                }
            }
            Ok(())
        };
        match &self.mode {
            WeierstrassMode::Explicit { f, g } => {
                check(f, "F")?;
                check(g, "G")?;
            }
            WeierstrassMode::Differential { nu, dg } => {
                check(dg, "dG")?;
                check(&nu.mul(dg)?, "dF")?;
            }
        }
        Ok(())
    }

    pub fn domain(&self) -> &PuncturedSphere {
        &self.dom
    }

    pub fn mode(&self) -> &WeierstrassMode {
        &self.mode
    }

    /// The Lagrangian Gauss map dF/dG, reduced.
    pub fn lagrangian_gauss(&self) -> Result<RationalMap> {
        match &self.mode {
            WeierstrassMode::Explicit { f, g } => {
                let gp = g.derivative()?;
                if gp.is_zero() {
                    return Err(Error::DegenerateData("dG is identically zero".into()));
                }
                f.derivative()?.div(&gp)
            }
            WeierstrassMode::Differential { nu, .. } => Ok(nu.clone()),
        }
    }

    /// Coefficient of dG = g'(z) dz.
    pub fn dg_coeff(&self) -> Result<RationalMap> {
        match &self.mode {
            WeierstrassMode::Explicit { g, .. } => g.derivative(),
            WeierstrassMode::Differential { dg, .. } => Ok(dg.clone()),
        }
    }

    /// Coefficient of dF = f'(z) dz = nu dG.
    pub fn df_coeff(&self) -> Result<RationalMap> {
        match &self.mode {
            WeierstrassMode::Explicit { f, .. } => f.derivative(),
            WeierstrassMode::Differential { nu, dg } => nu.mul(dg),
        }
    }

    /// F and G as rational maps. In differential mode they are synthesized
    /// by partial-fraction integration and exist only when single-valued.
    pub fn curve(&self) -> Result<(RationalMap, RationalMap)> {
        match &self.mode {
            WeierstrassMode::Explicit { f, g } => Ok((f.clone(), g.clone())),
            WeierstrassMode::Differential { nu, dg } => {
                let g = RationalAntiderivative::of(dg)?
                    .as_rational()
                    .map_err(|_| Error::NotWellDefined)?;
                let f = RationalAntiderivative::of(&nu.mul(dg)?)?
                    .as_rational()
                    .map_err(|_| Error::NotWellDefined)?;
                Ok((f, g))
            }
        }
    }

    /// Finite singular points of the data: finite punctures plus finite
    /// poles of dF and dG.
    pub fn finite_singularities(&self) -> Result<Vec<Complex64>> {
        let mut pts: Vec<Complex64> = self
            .dom
            .punctures()
            .iter()
            .filter_map(|p| p.as_finite())
            .collect();
        for r in [self.dg_coeff()?, self.df_coeff()?] {
            for p in r.poles()? {
                if !pts.iter().any(|&q| (q - p.z).norm() < 1e-9 * (1.0 + q.norm())) {
                    pts.push(p.z);
                }
            }
        }
        Ok(pts)
    }

    /// Contour radius around a finite puncture: half the distance to the
    /// nearest other singular point (1 when alone).
    fn contour_radius(&self, center: Complex64) -> Result<f64> {
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

    /// Radius of a circle around the origin enclosing all finite
    /// singularities, for residues at infinity.
    fn enclosing_radius(&self) -> Result<f64> {
        let m = self
            .finite_singularities()?
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        Ok(2.0 * m.max(1.0))
    }

    /// Residues of dG, dF, and F dG at every puncture by contour
    /// quadrature; the verdict follows the representation formula's
    /// period condition Re int_c F dG = 0.
    pub fn period_check(&self) -> Result<PeriodCertificate> {
        let dg = self.dg_coeff()?;
        let df = self.df_coeff()?;

        // F is available for the F dG residue only when dF itself has no
        // residues (differential mode) or is given (explicit mode).
        let f: Option<RationalMap> = match &self.mode {
            WeierstrassMode::Explicit { f, .. } => Some(f.clone()),
            WeierstrassMode::Differential { .. } => self.curve().ok().map(|(f, _)| f),
        };
        let fdg: Option<RationalMap> = match &f {
            Some(f) => Some(f.mul(&dg)?),
            None => None,
        };

        let eval = |r: &RationalMap, z: Complex64| -> Complex64 {
            match r.eval(SpherePoint::Finite(z)) {
                SpherePoint::Finite(v) => v,
                SpherePoint::Infinity => Complex64::new(f64::INFINITY, 0.0),
            }
        };

        let mut records = Vec::new();
        for p in self.dom.punctures() {
            let (res_dg, res_df, res_f_dg) = match p {
                SpherePoint::Finite(c) => {
                    let r = self.contour_radius(*c)?;
                    let res_dg = quad::residue(|z| eval(&dg, z), *c, r)?;
                    let res_df = quad::residue(|z| eval(&df, z), *c, r)?;
                    let res_f_dg = match &fdg {
                        Some(h) => Some(quad::residue(|z| eval(h, z), *c, r)?),
                        None => None,
                    };
                    (res_dg, res_df, res_f_dg)
                }
                SpherePoint::Infinity => {
                    let r = self.enclosing_radius()?;
                    let res_dg = quad::residue_at_infinity(|z| eval(&dg, z), r)?;
                    let res_df = quad::residue_at_infinity(|z| eval(&df, z), r)?;
                    let res_f_dg = match &fdg {
                        Some(h) => Some(quad::residue_at_infinity(|z| eval(h, z), r)?),
                        None => None,
                    };
                    (res_dg, res_df, res_f_dg)
                }
            };
            let single_valued_g = res_dg.norm() <= EPS_RES;
            let single_valued_f = res_df.norm() <= EPS_RES;
            let re_period_zero = match res_f_dg {
                Some(r) => r.im.abs() <= EPS_RES,
                None => false,
            };
            records.push(PunctureResidues {
                puncture: *p,
                res_dg,
                res_df,
                res_f_dg,
                single_valued_g,
                single_valued_f,
                re_period_zero,
            });
        }

        let well = records
            .iter()
            .all(|r| r.single_valued_g && r.single_valued_f && r.re_period_zero);
        Ok(PeriodCertificate {
            records,
            verdict: if well {
                PeriodVerdict::WellDefined
            } else {
                PeriodVerdict::UniversalCoverOnly
            },
        })
    }

    /// Pointwise metric sample; never fails, but returns non-finite
    /// factors at poles of the form coefficients.
    pub fn metric_sample(&self, z: Complex64) -> Result<MetricSample> {
        let nu = self.lagrangian_gauss()?;
        let fp = self.df_coeff()?;
        let gp = self.dg_coeff()?;
        let sp = SpherePoint::Finite(z);
        let nu_val = match nu.eval(sp) {
            SpherePoint::Finite(v) => v,
            SpherePoint::Infinity => Complex64::new(f64::INFINITY, 0.0),
        };
        let fpv = match fp.eval(sp) {
            SpherePoint::Finite(v) => v,
            SpherePoint::Infinity => Complex64::new(f64::INFINITY, 0.0),
        };
        let gpv = match gp.eval(sp) {
            SpherePoint::Finite(v) => v,
            SpherePoint::Infinity => Complex64::new(f64::INFINITY, 0.0),
        };
        let dtau_factor = if nu_val.is_finite() {
            2.0 * (1.0 + nu_val.norm_sqr()) * gpv.norm_sqr()
        } else {
            // pole of nu: the dF term carries the metric
            2.0 * fpv.norm_sqr()
        };
        let singular = (nu_val.norm() - 1.0).abs() <= EPS_SING;
        Ok(MetricSample {
            nu_val,
            dtau_factor,
            g_factor: gpv.norm_sqr() - fpv.norm_sqr(),
            ds2_hol_part: fpv * gpv,
            singular,
        })
    }

    /// Per-puncture orders of dG and of the induced metric, with the
    /// necessary completeness flag ord dG <= -2.
    pub fn end_orders(&self) -> Result<Vec<EndOrder>> {
        let dg = self.dg_coeff()?;
        let nu = self.lagrangian_gauss()?;
        let mut out = Vec::new();
        for p in self.dom.punctures() {
            let ord_dg = form_order(&dg, *p);
            let ord_nu = if nu.is_constant() { 0 } else { nu.order_at(*p) };
            let ord_dtau = ord_dg + ord_nu.min(0);
            out.push(EndOrder {
                puncture: *p,
                ord_dg,
                ord_dtau,
                completeness_necessary: ord_dg <= -2,
            });
        }
        Ok(out)
    }

    /// Constant-Gauss-map classifier.
    pub fn classify(&self) -> Result<AffineClass> {
        let nu = self.lagrangian_gauss()?;
        if !nu.is_constant() {
            return Ok(AffineClass::Generic);
        }
        let c = match nu.eval(SpherePoint::Finite(Complex64::new(0.0, 0.0))) {
            SpherePoint::Finite(v) => v,
            SpherePoint::Infinity => return Ok(AffineClass::Generic),
        };
        if (c.norm() - 1.0).abs() <= EPS_SING {
            Ok(AffineClass::DegenerateLine)
        } else {
            Ok(AffineClass::EllipticParaboloid)
        }
    }
}
