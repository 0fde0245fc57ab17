//! Rational maps on the Riemann sphere: reduced quotients of complex
//! polynomials with a monic denominator.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::divisor::Divisor;
use super::poly::Polynomial;
use super::roots::{self, eps_cluster, RootMult};
use super::sphere::SpherePoint;
use crate::error::{Error, Result};

/// A reduced rational map num/den. The denominator is monic and shares no
/// root with the numerator within the clustering tolerance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
}

impl RationalMap {
    /// Reduces num/den: common roots cancelled, denominator made monic.
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::InvalidInput("zero denominator".into()));
        }
        if num.is_zero() {
            return Ok(RationalMap {
                num: Polynomial::zero(),
                den: Polynomial::one(),
            });
        }

        let nr = roots::roots(&num)?;
        let dr = roots::roots(&den)?;

        let mut num_roots: Vec<RootMult> = nr;
        let mut den_roots: Vec<RootMult> = dr;
        let mut cancelled = false;
        for d in den_roots.iter_mut() {
            for n in num_roots.iter_mut() {
                if n.mult == 0 || d.mult == 0 {
                    continue;
                }
                if (n.z - d.z).norm() <= eps_cluster(n.z) + eps_cluster(d.z) {
                    let m = n.mult.min(d.mult);
                    n.mult -= m;
                    d.mult -= m;
                    cancelled = true;
                }
            }
        }

        let (num, den) = if cancelled {
            let mut n = Polynomial::one();
            for r in &num_roots {
                for _ in 0..r.mult {
                    n = n.mul(&Polynomial::new(vec![-r.z, Complex64::new(1.0, 0.0)]));
                }
            }
            let mut d = Polynomial::one();
            for r in &den_roots {
                for _ in 0..r.mult {
                    d = d.mul(&Polynomial::new(vec![-r.z, Complex64::new(1.0, 0.0)]));
                }
            }
            (n.scale(num.leading() / den.leading()), d)
        } else {
            let lead = den.leading();
            (num.scale(Complex64::new(1.0, 0.0) / lead), den.scale(Complex64::new(1.0, 0.0) / lead))
        };

        Ok(RationalMap { num, den })
    }

    /// Builds from polynomial over 1.
    pub fn from_poly(p: Polynomial) -> Self {
        RationalMap {
            num: p,
            den: Polynomial::one(),
        }
    }

    pub fn constant(c: Complex64) -> Self {
        Self::from_poly(Polynomial::constant(c))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Degree as a map on the sphere: max of numerator and denominator
    /// degrees; 0 exactly for constants.
    pub fn degree(&self) -> usize {
        self.num.degree().max(self.den.degree())
    }

    /// Value at a sphere point; infinity is a legal value.
    pub fn eval(&self, z: SpherePoint) -> SpherePoint {
        match z {
            SpherePoint::Finite(z) => {
                let n = self.num.eval(z);
                let d = self.den.eval(z);
                let zs = (1.0 + z.norm()).powi(self.den.degree() as i32);
                let dtol = 1e-12 * self.den.max_norm().max(1e-300) * zs;
                if d.norm() > dtol {
                    return SpherePoint::Finite(n / d);
                }
                let ns = (1.0 + z.norm()).powi(self.num.degree() as i32);
                let ntol = 1e-12 * self.num.max_norm().max(1e-300) * ns;
                if n.norm() > ntol {
                    return SpherePoint::Infinity;
                }
                // both tiny: decide by local orders (possible only through
                // numerical noise on reduced data)
                let kn = self.num.order_at(z);
                let kd = self.den.order_at(z);
                if kd > kn {
                    SpherePoint::Infinity
                } else {
                    let tn = self.num.taylor_at(z);
                    let td = self.den.taylor_at(z);
                    SpherePoint::Finite(tn[kd.min(tn.len() - 1)] / td[kd.min(td.len() - 1)])
                }
            }
            SpherePoint::Infinity => {
                let (dn, dd) = (self.num.degree(), self.den.degree());
                if self.num.is_zero() {
                    return SpherePoint::Finite(Complex64::new(0.0, 0.0));
                }
                match dn.cmp(&dd) {
                    std::cmp::Ordering::Greater => SpherePoint::Infinity,
                    std::cmp::Ordering::Less => SpherePoint::Finite(Complex64::new(0.0, 0.0)),
                    std::cmp::Ordering::Equal => {
                        SpherePoint::Finite(self.num.leading() / self.den.leading())
                    }
                }
            }
        }
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self) -> Result<RationalMap> {
        let w = self.wronskian();
        RationalMap::new(w, self.den.mul(&self.den))
    }

    /// num' den - num den': the numerator of the derivative before
    /// reduction. Its roots carry the finite branching data.
    pub fn wronskian(&self) -> Polynomial {
        self.num
            .derivative()
            .mul(&self.den)
            .sub(&self.num.mul(&self.den.derivative()))
    }

    /// Order of the map as a meromorphic function at a sphere point:
    /// positive at zeros, negative at poles, 0 elsewhere.
    pub fn order_at(&self, p: SpherePoint) -> i64 {
        match p {
            SpherePoint::Finite(z) => {
                self.num.order_at(z) as i64 - self.den.order_at(z) as i64
            }
            SpherePoint::Infinity => self.den.degree() as i64 - self.num.degree() as i64,
        }
    }

    /// Local multiplicity of the value `a` at `z0`. Requires eval(z0) = a
    /// within the chordal matching tolerance.
    pub fn mult_at(&self, z0: SpherePoint, a: SpherePoint) -> Result<usize> {
        let got = self.eval(z0);
        if !got.matches(&a) {
            return Err(Error::ValueMismatch {
                got: got.to_string(),
                wanted: a.to_string(),
            });
        }
        let m = match (z0, a) {
            (SpherePoint::Finite(z), SpherePoint::Finite(a)) => {
                let h = self.num.sub(&self.den.scale(a));
                h.order_at(z)
            }
            (SpherePoint::Finite(z), SpherePoint::Infinity) => self.den.order_at(z),
            (SpherePoint::Infinity, a) => {
                let d = self.degree();
                let p = self.num.reverse_at(d);
                let q = self.den.reverse_at(d);
                match a {
                    SpherePoint::Finite(a) => {
                        let h = p.sub(&q.scale(a));
                        h.order_at_origin().saturating_sub(q.order_at_origin())
                    }
                    SpherePoint::Infinity => q.order_at_origin().saturating_sub(p.order_at_origin()),
                }
            }
        };
        Ok(m)
    }

    /// Full sphere preimage divisor of `a`; multiplicities sum to the
    /// degree of the map.
    pub fn preimages(&self, a: SpherePoint) -> Result<Divisor> {
        if self.is_constant() {
            return Err(Error::ConstantMap);
        }
        let d = self.degree();
        let mut div = Divisor::new();
        match a {
            SpherePoint::Finite(a) => {
                let h = self.num.sub(&self.den.scale(a));
                if !h.is_zero() {
                    for r in roots::roots(&h)? {
                        div.add(SpherePoint::Finite(r.z), r.mult as i64);
                    }
                    if h.degree() < d {
                        div.add(SpherePoint::Infinity, (d - h.degree()) as i64);
                    }
                } else {
                    div.add(SpherePoint::Infinity, d as i64);
                }
            }
            SpherePoint::Infinity => {
                if !self.den.is_constant() {
                    for r in roots::roots(&self.den)? {
                        div.add(SpherePoint::Finite(r.z), r.mult as i64);
                    }
                }
                if self.num.degree() > self.den.degree() {
                    div.add(
                        SpherePoint::Infinity,
                        (self.num.degree() - self.den.degree()) as i64,
                    );
                }
            }
        }
        Ok(div)
    }

    /// Divisor of the one-form (self) dz on the sphere: finite zeros and
    /// poles plus the order at infinity, (deg den - deg num) - 2. The
    /// total is always -2.
    pub fn divisor_of_form(&self) -> Result<Divisor> {
        if self.is_zero() {
            return Err(Error::DegenerateData(
                "divisor of the identically zero one-form".into(),
            ));
        }
        let mut div = Divisor::new();
        if !self.num.is_constant() {
            for r in roots::roots(&self.num)? {
                div.add(SpherePoint::Finite(r.z), r.mult as i64);
            }
        }
        if !self.den.is_constant() {
            for r in roots::roots(&self.den)? {
                div.add(SpherePoint::Finite(r.z), -(r.mult as i64));
            }
        }
        let inf = self.den.degree() as i64 - self.num.degree() as i64 - 2;
        div.add(SpherePoint::Infinity, inf);
        Ok(div)
    }

    pub fn add(&self, other: &RationalMap) -> Result<RationalMap> {
        let num = self
            .num
            .mul(&other.den)
            .add(&other.num.mul(&self.den));
        RationalMap::new(num, self.den.mul(&other.den))
    }

    pub fn sub(&self, other: &RationalMap) -> Result<RationalMap> {
        let num = self
            .num
            .mul(&other.den)
            .sub(&other.num.mul(&self.den));
        RationalMap::new(num, self.den.mul(&other.den))
    }

    pub fn mul(&self, other: &RationalMap) -> Result<RationalMap> {
        RationalMap::new(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    pub fn div(&self, other: &RationalMap) -> Result<RationalMap> {
        if other.is_zero() {
            return Err(Error::DegenerateData("division by the zero map".into()));
        }
        RationalMap::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    /// Finite poles with multiplicities.
    pub fn poles(&self) -> Result<Vec<RootMult>> {
        if self.den.is_constant() {
            return Ok(Vec::new());
        }
        roots::roots(&self.den)
    }
}
