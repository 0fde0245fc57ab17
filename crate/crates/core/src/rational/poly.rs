//! Dense complex polynomials, coefficients in ascending degree.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Maximum degree accepted from external input.
pub const MAX_DEGREE: usize = 32;
/// Maximum coefficient magnitude accepted from external input.
pub const MAX_COEFF: f64 = 1e8;

/// Relative threshold below which a coefficient counts as zero.
const TRIM_EPS: f64 = 1e-14;

/// A polynomial with complex coefficients stored in ascending degree.
/// The zero polynomial is the empty coefficient list; otherwise the
/// leading coefficient is nonzero.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Polynomial {
    #[serde(with = "coeff_serde")]
    coeffs: Vec<Complex64>,
}

mod coeff_serde {
    use num_complex::Complex64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(coeffs: &[Complex64], s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[f64; 2]> = coeffs.iter().map(|c| [c.re, c.im]).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Complex64>, D::Error> {
        let pairs: Vec<[f64; 2]> = Vec::deserialize(d)?;
        Ok(pairs.iter().map(|p| Complex64::new(p[0], p[1])).collect())
    }
}

impl Polynomial {
    /// Builds a polynomial from ascending coefficients, trimming trailing
    /// (near-)zeros relative to the largest coefficient.
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let mut coeffs = coeffs;
        let cut = scale * TRIM_EPS;
        while let Some(last) = coeffs.last() {
            if last.norm() <= cut {
                coeffs.pop();
            } else {
                break;
            }
        }
        Polynomial { coeffs }
    }

    /// Validates externally supplied coefficients against the degree and
    /// magnitude caps before constructing.
    pub fn parse(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.len() > MAX_DEGREE + 1 {
            return Err(Error::InvalidInput(format!(
                "polynomial degree {} exceeds cap {}",
                coeffs.len() - 1,
                MAX_DEGREE
            )));
        }
        for c in &coeffs {
            if !c.re.is_finite() || !c.im.is_finite() || c.norm() > MAX_COEFF {
                return Err(Error::InvalidInput(format!(
                    "coefficient {} outside magnitude cap {:e}",
                    c, MAX_COEFF
                )));
            }
        }
        Ok(Self::new(coeffs))
    }

    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `z`.
    pub fn z() -> Self {
        Polynomial {
            coeffs: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }

    /// Monic polynomial with the given roots.
    pub fn from_roots(roots: &[Complex64]) -> Self {
        let mut p = Polynomial::one();
        for &r in roots {
            p = p.mul(&Polynomial::new(vec![-r, Complex64::new(1.0, 0.0)]));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or_default()
    }

    pub fn leading(&self) -> Complex64 {
        self.coeffs.last().copied().unwrap_or_default()
    }

    /// Largest coefficient magnitude.
    pub fn max_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect();
        Polynomial::new(coeffs)
    }

    /// k-th derivative.
    pub fn derivative_n(&self, k: usize) -> Polynomial {
        let mut p = self.clone();
        for _ in 0..k {
            p = p.derivative();
        }
        p
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - other.coeff(k)).collect();
        Polynomial::new(coeffs)
    }

    pub fn scale(&self, s: Complex64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    /// Long division: returns (quotient, remainder).
    pub fn div_rem(&self, den: &Polynomial) -> (Polynomial, Polynomial) {
        assert!(!den.is_zero(), "division by the zero polynomial");
        if self.degree() < den.degree() || self.is_zero() {
            return (Polynomial::zero(), self.clone());
        }
        let mut rem = self.coeffs.clone();
        let dlead = den.leading();
        let dd = den.degree();
        let mut quot = vec![Complex64::new(0.0, 0.0); rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let q = rem[k] / dlead;
            quot[k - dd] = q;
            for (j, dc) in den.coeffs.iter().enumerate() {
                rem[k - dd + j] -= q * dc;
            }
        }
        rem.truncate(dd);
        (Polynomial::new(quot), Polynomial::new(rem))
    }

    /// Synthetic division by `(z - a)`: returns the deflated quotient,
    /// discarding the remainder.
    pub fn deflate(&self, a: Complex64) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let n = self.coeffs.len();
        let mut q = vec![Complex64::new(0.0, 0.0); n - 1];
        let mut carry = self.coeffs[n - 1];
        for k in (0..n - 1).rev() {
            q[k] = carry;
            carry = self.coeffs[k] + carry * a;
        }
        Polynomial::new(q)
    }

    /// Taylor coefficients of `p(a + w)` in ascending powers of `w`,
    /// computed by repeated synthetic division (Horner shift).
    pub fn taylor_at(&self, a: Complex64) -> Vec<Complex64> {
        let mut work = self.coeffs.clone();
        let n = work.len();
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for (j, slot) in out.iter_mut().enumerate() {
            for k in (j..n.saturating_sub(1)).rev() {
                let tmp = work[k] + work[k + 1] * a;
                work[k] = tmp;
            }
            *slot = work[j];
        }
        out
    }

    /// Coefficient reversal at a fixed degree: `w^d * p(1/w)` padded to
    /// degree `d`. Used for order computations at infinity.
    pub fn reverse_at(&self, d: usize) -> Polynomial {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); d + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if k <= d {
                coeffs[d - k] = c;
            }
        }
        Polynomial::new(coeffs)
    }

    /// Order of vanishing at `z0`: the index of the first Taylor
    /// coefficient at `z0` that is not negligible.
    pub fn order_at(&self, z0: Complex64) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let t = self.taylor_at(z0);
        let scale = t.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let cut = scale * 1e-7;
        for (j, c) in t.iter().enumerate() {
            if c.norm() > cut {
                return j;
            }
        }
        self.degree()
    }

    /// Number of exactly-trailing low-order zero coefficients (the order of
    /// the root at the origin), judged relative to the coefficient scale.
    pub fn order_at_origin(&self) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        let cut = self.max_norm() * 1e-12;
        self.coeffs
            .iter()
            .position(|c| c.norm() > cut)
            .unwrap_or(self.degree())
    }

    /// Antiderivative with zero constant term.
    pub fn integral(&self) -> Polynomial {
        let mut coeffs = vec![Complex64::new(0.0, 0.0); self.coeffs.len() + 1];
        for (k, &c) in self.coeffs.iter().enumerate() {
            coeffs[k + 1] = c / (k as f64 + 1.0);
        }
        Polynomial::new(coeffs)
    }
}
