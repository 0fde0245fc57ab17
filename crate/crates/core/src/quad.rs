//! Contour quadrature on circles. The trapezoid rule is spectrally
//! accurate for periodic integrands, so residues are computed by doubling
//! the point count until two successive estimates agree.

use num_complex::Complex64;

use crate::error::{Error, Result};

const AGREE: f64 = 1e-10;
const MAX_POINTS: usize = 1 << 16;

/// Residue of `h` at `center`: (1/2 pi i) of the contour integral over
/// the circle of the given radius.
pub fn residue<F: Fn(Complex64) -> Complex64>(
    h: F,
    center: Complex64,
    radius: f64,
) -> Result<Complex64> {
    circle_mean(|z| h(z) * (z - center), center, radius)
}

/// Residue at infinity: minus the residue integral over a circle
/// enclosing every finite singularity.
pub fn residue_at_infinity<F: Fn(Complex64) -> Complex64>(h: F, radius: f64) -> Result<Complex64> {
    let r = circle_mean(|z| h(z) * z, Complex64::new(0.0, 0.0), radius)?;
    Ok(-r)
}

/// Trapezoid mean of `g` over the circle; equals the residue of g(z)/(z-c)
/// and hence the contour integral of h when g(z) = h(z)(z-c).
fn circle_mean<F: Fn(Complex64) -> Complex64>(
    g: F,
    center: Complex64,
    radius: f64,
) -> Result<Complex64> {
    if radius <= 0.0 || !radius.is_finite() {
        return Err(Error::ContourTooClose(center.to_string()));
    }
    let mut n = 8usize;
    let mut prev = trapezoid(&g, center, radius, n);
    loop {
        n *= 2;
        let cur = trapezoid(&g, center, radius, n);
        if (cur - prev).norm() <= AGREE * (1.0 + cur.norm()) {
            return Ok(cur);
        }
        if n >= MAX_POINTS {
            return Err(Error::ToleranceNotMet(format!(
                "contour quadrature at {center} did not settle by {MAX_POINTS} points"
            )));
        }
        prev = cur;
    }
}

fn trapezoid<F: Fn(Complex64) -> Complex64>(
    g: &F,
    center: Complex64,
    radius: f64,
    n: usize,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for k in 0..n {
        let th = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
        let z = center + Complex64::from_polar(radius, th);
        acc += g(z);
    }
    acc / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simple_pole() {
        let r = residue(
            |z| Complex64::new(3.0, -1.0) / z,
            Complex64::new(0.0, 0.0),
            0.7,
        )
        .unwrap();
        assert!((r - Complex64::new(3.0, -1.0)).norm() < 1e-11);
    }

    #[test]
    fn double_pole_has_no_residue() {
        let r = residue(|z| 1.0 / (z * z), Complex64::new(0.0, 0.0), 0.5).unwrap();
        assert!(r.norm() < 1e-11);
    }

    #[test]
    fn residue_at_infinity_of_one_over_z() {
        // sum of all residues of 1/z on the sphere is zero
        let r = residue_at_infinity(|z| 1.0 / z, 3.0).unwrap();
        assert!((r - Complex64::new(-1.0, 0.0)).norm() < 1e-11);
    }
}
