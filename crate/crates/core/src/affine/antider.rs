//! Closed-form antiderivatives of rational functions via numeric partial
//! fractions: a polynomial part, inverse-power terms, and principal-branch
//! logarithms carrying the residues.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::rational::{roots, Polynomial, RationalMap};

/// One pole's worth of partial-fraction data: coefficients `c[i-1]` of
/// `1/(z-a)^i` for `i = 1..=m` in the decomposed integrand.
#[derive(Clone, Debug)]
struct PoleTerm {
    a: Complex64,
    coeffs: Vec<Complex64>,
}

/// Antiderivative of a rational function, evaluable in O(poles) per point.
/// The logarithm uses the principal branch per pole term; single-valuedness
/// of the real part is a property of the data, certified separately.
#[derive(Clone, Debug)]
pub struct RationalAntiderivative {
    poly: Polynomial,
    terms: Vec<PoleTerm>,
}

impl RationalAntiderivative {
    /// Decomposes `h` and integrates termwise.
    pub fn of(h: &RationalMap) -> Result<Self> {
        let (quot, rem) = h.num().div_rem(h.den());
        let mut terms = Vec::new();
        if !h.den().is_constant() {
            let poles = roots(h.den())?;
            for p in &poles {
                // deflate the denominator by (z - a)^m
                let mut denj = h.den().clone();
                for _ in 0..p.mult {
                    denj = denj.deflate(p.z);
                }
                // Taylor series of rem/denj at the pole, m terms
                let tr = rem.taylor_at(p.z);
                let td = denj.taylor_at(p.z);
                let s = series_div(&tr, &td, p.mult);
                // c_i = s[m - i], i = 1..=m
                let coeffs: Vec<Complex64> = (1..=p.mult).map(|i| s[p.mult - i]).collect();
                terms.push(PoleTerm { a: p.z, coeffs });
            }
        } else {
            // constant denominator: already polynomial after scaling
        }
        let scale = h.den().is_constant().then(|| h.den().coeff(0));
        let poly_part = match scale {
            Some(c) => h.num().scale(Complex64::new(1.0, 0.0) / c),
            None => quot,
        };
        Ok(RationalAntiderivative {
            poly: poly_part.integral(),
            terms,
        })
    }

    /// Largest residue magnitude among the log terms. Zero means the
    /// antiderivative is single-valued (rational).
    pub fn max_residue(&self) -> f64 {
        self.terms
            .iter()
            .map(|t| t.coeffs[0].norm())
            .fold(0.0, f64::max)
    }

    /// Residue (log coefficient) at the pole nearest to `a`, if any.
    pub fn residue_near(&self, a: Complex64) -> Option<Complex64> {
        self.terms
            .iter()
            .min_by(|s, t| {
                (s.a - a)
                    .norm()
                    .partial_cmp(&(t.a - a).norm())
                    .unwrap()
            })
            .filter(|t| (t.a - a).norm() < 1e-6 * (1.0 + a.norm()))
            .map(|t| t.coeffs[0])
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = self.poly.eval(z);
        for t in &self.terms {
            let w = z - t.a;
            acc += t.coeffs[0] * w.ln();
            let mut wp = w;
            for (i, &c) in t.coeffs.iter().enumerate().skip(1) {
                // i >= 1 indexes the 1/(z-a)^(i+1) integrand term
                acc -= c / (i as f64 * wp);
                wp *= w;
            }
        }
        acc
    }

    /// Rebuilds the antiderivative as a rational map. Fails when any log
    /// coefficient is non-negligible.
    pub fn as_rational(&self) -> Result<RationalMap> {
        let mut acc = RationalMap::from_poly(self.poly.clone());
        for t in &self.terms {
            if t.coeffs[0].norm() > 1e-9 {
                return Err(Error::DegenerateData(format!(
                    "antiderivative has a logarithmic term at {} (residue {})",
                    t.a, t.coeffs[0]
                )));
            }
            for (i, &c) in t.coeffs.iter().enumerate().skip(1) {
                // -c / (i (z-a)^i)
                let mut den = Polynomial::one();
                let lin = Polynomial::new(vec![-t.a, Complex64::new(1.0, 0.0)]);
                for _ in 0..i {
                    den = den.mul(&lin);
                }
                let term = RationalMap::new(
                    Polynomial::constant(-c / i as f64),
                    den,
                )?;
                acc = acc.add(&term)?;
            }
        }
        Ok(acc)
    }
}

/// Leading `n` coefficients of the power-series quotient num/den.
fn series_div(num: &[Complex64], den: &[Complex64], n: usize) -> Vec<Complex64> {
    let d0 = den[0];
    let mut s = vec![Complex64::new(0.0, 0.0); n];
    for k in 0..n {
        let mut acc = num.get(k).copied().unwrap_or_default();
        for i in 1..=k {
            acc -= den.get(i).copied().unwrap_or_default() * s[k - i];
        }
        s[k] = acc / d0;
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::Polynomial;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(num: Vec<Complex64>, den: Vec<Complex64>) -> RationalMap {
        RationalMap::new(Polynomial::new(num), Polynomial::new(den)).unwrap()
    }

    #[test]
    fn integrates_polynomial() {
        // d/dz (z^3/3) = z^2
        let h = rat(vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0)]);
        let a = RationalAntiderivative::of(&h).unwrap();
        let z = c(1.3, -0.4);
        assert!((a.eval(z) - z * z * z / 3.0).norm() < 1e-12);
        assert_eq!(a.max_residue(), 0.0);
    }

    #[test]
    fn simple_pole_gives_log() {
        // 1/z integrates to log z
        let h = rat(vec![c(1.0, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0)]);
        let a = RationalAntiderivative::of(&h).unwrap();
        let z = c(2.0, 1.0);
        assert!((a.eval(z) - z.ln()).norm() < 1e-12);
        assert!((a.max_residue() - 1.0).abs() < 1e-12);
        assert!(a.as_rational().is_err());
    }

    #[test]
    fn double_pole_is_rational() {
        // -1/z^2 integrates to 1/z
        let h = rat(vec![c(-1.0, 0.0)], vec![c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let a = RationalAntiderivative::of(&h).unwrap();
        let z = c(0.8, 0.6);
        assert!((a.eval(z) - 1.0 / z).norm() < 1e-12);
        let r = a.as_rational().unwrap();
        match r.eval(z.into()) {
            crate::rational::SpherePoint::Finite(v) => assert!((v - 1.0 / z).norm() < 1e-12),
            _ => panic!("finite expected"),
        }
    }

    #[test]
    fn derivative_matches_by_finite_differences() {
        // h = (z^2 + 1) / ((z-1)^2 (z+2))
        let den = Polynomial::from_roots(&[c(1.0, 0.0), c(1.0, 0.0), c(-2.0, 0.0)]);
        let h = RationalMap::new(
            Polynomial::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]),
            den,
        )
        .unwrap();
        let a = RationalAntiderivative::of(&h).unwrap();
        let z = c(0.3, 0.9);
        let eps = 1e-6;
        let fd = (a.eval(z + c(eps, 0.0)) - a.eval(z - c(eps, 0.0))) / (2.0 * eps);
        let hv = match h.eval(z.into()) {
            crate::rational::SpherePoint::Finite(v) => v,
            _ => panic!(),
        };
        assert!((fd - hv).norm() < 1e-6);
    }
}
