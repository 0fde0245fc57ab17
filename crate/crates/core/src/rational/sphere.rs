//! Points of the Riemann sphere with a tagged point at infinity.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::fmt;

/// Chordal matching tolerance for values and punctures.
pub const EPS_MATCH: f64 = 1e-7;

/// A point of the Riemann sphere. Infinity is a tagged case, never a
/// large-number sentinel.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SpherePointRepr", into = "SpherePointRepr")]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

/// JSON form: `[re, im]` for finite points, the string `"inf"` for infinity.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum SpherePointRepr {
    Inf(String),
    Finite([f64; 2]),
}

impl TryFrom<SpherePointRepr> for SpherePoint {
    type Error = String;
    fn try_from(r: SpherePointRepr) -> Result<Self, String> {
        match r {
            SpherePointRepr::Inf(s) if s == "inf" => Ok(SpherePoint::Infinity),
            SpherePointRepr::Inf(s) => Err(format!("unknown sphere point tag {s:?}")),
            SpherePointRepr::Finite([re, im]) => Ok(SpherePoint::Finite(Complex64::new(re, im))),
        }
    }
}

impl From<SpherePoint> for SpherePointRepr {
    fn from(p: SpherePoint) -> Self {
        match p {
            SpherePoint::Infinity => SpherePointRepr::Inf("inf".into()),
            SpherePoint::Finite(z) => SpherePointRepr::Finite([z.re, z.im]),
        }
    }
}

impl SpherePoint {
    pub fn finite(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    /// Chordal distance |a, b| (half the chordal metric on the unit
    /// sphere); treats infinity symmetrically.
    pub fn chordal(&self, other: &SpherePoint) -> f64 {
        match (self, other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => 0.0,
            (SpherePoint::Finite(a), SpherePoint::Infinity)
            | (SpherePoint::Infinity, SpherePoint::Finite(a)) => {
                1.0 / (1.0 + a.norm_sqr()).sqrt()
            }
            (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
                (a - b).norm() / ((1.0 + a.norm_sqr()).sqrt() * (1.0 + b.norm_sqr()).sqrt())
            }
        }
    }

    /// True when the two points match within the chordal tolerance.
    pub fn matches(&self, other: &SpherePoint) -> bool {
        self.chordal(other) <= EPS_MATCH
    }
}

impl From<Complex64> for SpherePoint {
    fn from(z: Complex64) -> Self {
        SpherePoint::Finite(z)
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Infinity => write!(f, "inf"),
            SpherePoint::Finite(z) => write!(f, "{z}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chordal_symmetry_at_infinity() {
        let a = SpherePoint::finite(3.0, 4.0);
        assert!((a.chordal(&SpherePoint::Infinity) - 1.0 / 26f64.sqrt()).abs() < 1e-15);
        assert_eq!(SpherePoint::Infinity.chordal(&SpherePoint::Infinity), 0.0);
    }

    #[test]
    fn serde_roundtrip() {
        let inf: SpherePoint = serde_json::from_str("\"inf\"").unwrap();
        assert!(inf.is_infinity());
        let fin: SpherePoint = serde_json::from_str("[1.5, -2.0]").unwrap();
        assert_eq!(fin, SpherePoint::finite(1.5, -2.0));
        let s = serde_json::to_string(&SpherePoint::Infinity).unwrap();
        assert_eq!(s, "\"inf\"");
    }
}
