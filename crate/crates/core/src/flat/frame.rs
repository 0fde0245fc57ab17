//! SL(2,C) frames and points of hyperbolic 3-space in the Hermitian
//! matrix model of Minkowski 4-space.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::SpherePoint;

/// A 2x2 complex matrix with determinant 1 (within tolerance; exact
/// renormalization is applied after each integration segment).
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct Sl2Frame {
    pub e11: Complex64,
    pub e12: Complex64,
    pub e21: Complex64,
    pub e22: Complex64,
}

pub const EPS_DET: f64 = 1e-9;

impl Sl2Frame {
    pub fn identity() -> Self {
        Sl2Frame {
            e11: Complex64::new(1.0, 0.0),
            e12: Complex64::new(0.0, 0.0),
            e21: Complex64::new(0.0, 0.0),
            e22: Complex64::new(1.0, 0.0),
        }
    }

    pub fn new(e11: Complex64, e12: Complex64, e21: Complex64, e22: Complex64) -> Result<Self> {
        let f = Sl2Frame { e11, e12, e21, e22 };
        if (f.det() - 1.0).norm() > EPS_DET {
            return Err(Error::InvalidInput(format!(
                "matrix determinant {} is not 1",
                f.det()
            )));
        }
        Ok(f)
    }

    pub fn det(&self) -> Complex64 {
        self.e11 * self.e22 - self.e12 * self.e21
    }

    /// Exact projection back to det = 1 by dividing by a square root of
    /// the determinant.
    pub fn renormalize(&self) -> Sl2Frame {
        let s = self.det().sqrt();
        Sl2Frame {
            e11: self.e11 / s,
            e12: self.e12 / s,
            e21: self.e21 / s,
            e22: self.e22 / s,
        }
    }

    pub fn mul(&self, o: &Sl2Frame) -> Sl2Frame {
        Sl2Frame {
            e11: self.e11 * o.e11 + self.e12 * o.e21,
            e12: self.e11 * o.e12 + self.e12 * o.e22,
            e21: self.e21 * o.e11 + self.e22 * o.e21,
            e22: self.e21 * o.e12 + self.e22 * o.e22,
        }
    }

    pub fn inverse(&self) -> Sl2Frame {
        let d = self.det();
        Sl2Frame {
            e11: self.e22 / d,
            e12: -self.e12 / d,
            e21: -self.e21 / d,
            e22: self.e11 / d,
        }
    }

    /// f = E E*: the front point.
    pub fn front_point(&self) -> HermitianPoint {
        let a = self.e11;
        let b = self.e12;
        let c = self.e21;
        let d = self.e22;
        // rows of E times conjugate-transpose columns
        let m11 = a * a.conj() + b * b.conj();
        let m12 = a * c.conj() + b * d.conj();
        let m22 = c * c.conj() + d * d.conj();
        HermitianPoint::from_matrix(m11.re, m12, m22.re)
    }

    /// n = E e3 E*: the unit normal, a spacelike vector with <n,n> = 1.
    pub fn normal(&self) -> HermitianPoint {
        let a = self.e11;
        let b = self.e12;
        let c = self.e21;
        let d = self.e22;
        let m11 = a * a.conj() - b * b.conj();
        let m12 = a * c.conj() - b * d.conj();
        let m22 = c * c.conj() - d * d.conj();
        HermitianPoint::from_matrix(m11.re, m12, m22.re)
    }

    /// Hyperbolic Gauss maps (G, G*) = (E11/E21, E12/E22); infinity when
    /// a denominator entry vanishes.
    pub fn hyperbolic_gauss(&self) -> (SpherePoint, SpherePoint) {
        let g = if self.e21.norm() <= 1e-12 {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(self.e11 / self.e21)
        };
        let gs = if self.e22.norm() <= 1e-12 {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(self.e12 / self.e22)
        };
        (g, gs)
    }

    /// The dual frame E [[0,i],[i,0]]: same front, roles of the two
    /// canonical forms and Gauss maps interchanged.
    pub fn dual(&self) -> Sl2Frame {
        let i = Complex64::new(0.0, 1.0);
        Sl2Frame {
            e11: self.e12 * i,
            e12: self.e11 * i,
            e21: self.e22 * i,
            e22: self.e21 * i,
        }
    }

    /// U(1) gauge E diag(e^{is/2}, e^{-is/2}); fixes the front and both
    /// Gauss maps.
    pub fn u1_gauge(&self, s: f64) -> Sl2Frame {
        let p = Complex64::from_polar(1.0, s / 2.0);
        Sl2Frame {
            e11: self.e11 * p,
            e12: self.e12 / p,
            e21: self.e21 * p,
            e22: self.e22 / p,
        }
    }
}

/// A Minkowski 4-vector carried together with its Hermitian matrix form
/// [[x0+x3, x1+ix2],[x1-ix2, x0-x3]]. Points of H^3 satisfy <X,X> = -1,
/// x0 > 0; unit normals satisfy <n,n> = 1.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct HermitianPoint {
    pub x0: f64,
    pub x1: f64,
    pub x2: f64,
    pub x3: f64,
}

impl HermitianPoint {
    fn from_matrix(m11: f64, m12: Complex64, m22: f64) -> Self {
        HermitianPoint {
            x0: (m11 + m22) / 2.0,
            x1: m12.re,
            x2: m12.im,
            x3: (m11 - m22) / 2.0,
        }
    }

    pub fn matrix(&self) -> (f64, Complex64, f64) {
        (
            self.x0 + self.x3,
            Complex64::new(self.x1, self.x2),
            self.x0 - self.x3,
        )
    }

    /// Minkowski inner product of signature (-,+,+,+).
    pub fn inner(&self, o: &HermitianPoint) -> f64 {
        -self.x0 * o.x0 + self.x1 * o.x1 + self.x2 * o.x2 + self.x3 * o.x3
    }

    /// Membership check for H^3: <X,X> = -1 and x0 > 0.
    pub fn in_h3(&self, tol: f64) -> bool {
        (self.inner(self) + 1.0).abs() <= tol && self.x0 > 0.0
    }

    /// Poincare-ball coordinates (x1,x2,x3)/(1+x0).
    pub fn poincare_ball(&self) -> [f64; 3] {
        let s = 1.0 + self.x0;
        [self.x1 / s, self.x2 / s, self.x3 / s]
    }

    fn combine(a: f64, p: &HermitianPoint, b: f64, q: &HermitianPoint) -> HermitianPoint {
        HermitianPoint {
            x0: a * p.x0 + b * q.x0,
            x1: a * p.x1 + b * q.x1,
            x2: a * p.x2 + b * q.x2,
            x3: a * p.x3 + b * q.x3,
        }
    }
}

/// The parallel front at distance t: f_t = cosh(t) f + sinh(t) n with
/// normal n_t = cosh(t) n + sinh(t) f.
pub fn parallel(
    f: &HermitianPoint,
    n: &HermitianPoint,
    t: f64,
) -> (HermitianPoint, HermitianPoint) {
    let (ch, sh) = (t.cosh(), t.sinh());
    (
        HermitianPoint::combine(ch, f, sh, n),
        HermitianPoint::combine(ch, n, sh, f),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_maps_to_origin() {
        let f = Sl2Frame::identity().front_point();
        assert_eq!((f.x0, f.x1, f.x2, f.x3), (1.0, 0.0, 0.0, 0.0));
        assert!(f.in_h3(1e-14));
    }

    #[test]
    fn lower_triangular_frame_stays_on_horosphere() {
        let z = c(0.7, -1.3);
        let e = Sl2Frame::new(c(1.0, 0.0), c(0.0, 0.0), z, c(1.0, 0.0)).unwrap();
        let f = e.front_point();
        // x0 + x3 = top-left entry of E E* = 1
        assert!((f.x0 + f.x3 - 1.0).abs() < 1e-14);
        assert!(f.in_h3(1e-12));
        let (g, gs) = e.hyperbolic_gauss();
        match g {
            SpherePoint::Finite(v) => assert!((v - 1.0 / z).norm() < 1e-14),
            _ => panic!("finite G expected"),
        }
        assert_eq!(gs, SpherePoint::Finite(c(0.0, 0.0)));
    }

    #[test]
    fn gauss_of_identity() {
        let (g, gs) = Sl2Frame::identity().hyperbolic_gauss();
        assert!(g.is_infinity());
        assert_eq!(gs, SpherePoint::Finite(c(0.0, 0.0)));
    }

    #[test]
    fn dual_twice_negates_but_fixes_front() {
        let e = Sl2Frame {
            e11: c(0.9, 0.1),
            e12: c(0.2, -0.3),
            e21: c(0.0, 0.4),
            e22: c(1.0, 0.0),
        }
        .renormalize();
        let dd = e.dual().dual();
        assert!((dd.e11 + e.e11).norm() < 1e-14);
        let f1 = e.front_point();
        let f2 = e.dual().front_point();
        assert!((f1.x0 - f2.x0).abs() < 1e-13 && (f1.x3 - f2.x3).abs() < 1e-13);
        let (g, gs) = e.hyperbolic_gauss();
        let (gd, gsd) = e.dual().hyperbolic_gauss();
        assert!(g.matches(&gsd) && gs.matches(&gd));
    }

    #[test]
    fn u1_gauge_fixes_front_and_gauss() {
        let e = Sl2Frame {
            e11: c(1.1, 0.0),
            e12: c(0.3, 0.2),
            e21: c(-0.1, 0.5),
            e22: c(1.0, 0.1),
        }
        .renormalize();
        let g0 = e.hyperbolic_gauss();
        for s in [0.3, 1.7, -2.2] {
            let eg = e.u1_gauge(s);
            let f0 = e.front_point();
            let f1 = eg.front_point();
            assert!((f0.x0 - f1.x0).abs() < 1e-13);
            assert!((f0.x1 - f1.x1).abs() < 1e-13);
            let g1 = eg.hyperbolic_gauss();
            assert!(g0.0.matches(&g1.0) && g0.1.matches(&g1.1));
        }
    }

    #[test]
    fn parallel_identity_and_exponential_sum() {
        let f = HermitianPoint { x0: 1.0, x1: 0.0, x2: 0.0, x3: 0.0 };
        let n = HermitianPoint { x0: 0.0, x1: 0.0, x2: 0.0, x3: 1.0 };
        let (f0, n0) = parallel(&f, &n, 0.0);
        assert_eq!((f0.x0, n0.x3), (1.0, 1.0));
        let (f1, _) = parallel(&f, &n, 1.0);
        assert!((f1.x0 - 1f64.cosh()).abs() < 1e-15);
        assert!((f1.x3 - 1f64.sinh()).abs() < 1e-15);
        // f_t + n_t = e^t (f + n)
        for t in [-1.0, 0.3, 2.0] {
            let (ft, nt) = parallel(&f, &n, t);
            let et = t.exp();
            assert!((ft.x0 + nt.x0 - et * (f.x0 + n.x0)).abs() < 1e-12);
            assert!((ft.x3 + nt.x3 - et * (f.x3 + n.x3)).abs() < 1e-12);
        }
    }
}
