//! Built-in example data sets: the classical improper affine fronts and
//! flat fronts used by the verification suite and the CLI gallery.

use num_complex::Complex64;

use crate::affine::WeierstrassData;
use crate::error::{Error, Result};
use crate::flat::CanonicalForms;
use crate::mesh::DomainSpec;
use crate::rational::{Polynomial, RationalMap, SpherePoint};
use crate::valdist::PuncturedSphere;

/// A gallery entry: affine Weierstrass data or flat canonical forms,
/// with a default mesh domain.
pub enum GalleryEntry {
    Affine(WeierstrassData),
    Flat(CanonicalForms),
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn zero() -> Complex64 {
    c(0.0, 0.0)
}

/// (cz, z) on the plane, c = 1/2 by default.
pub fn paraboloid(cv: Complex64) -> Result<WeierstrassData> {
    WeierstrassData::explicit(
        RationalMap::from_poly(Polynomial::new(vec![zero(), cv])),
        RationalMap::from_poly(Polynomial::z()),
        PuncturedSphere::new(vec![SpherePoint::Infinity])?,
    )
}

/// (z, r^2/z) on C \ {0}.
pub fn rotational(r: f64) -> Result<WeierstrassData> {
    WeierstrassData::explicit(
        RationalMap::from_poly(Polynomial::z()),
        RationalMap::new(
            Polynomial::constant(c(r * r, 0.0)),
            Polynomial::new(vec![zero(), c(1.0, 0.0)]),
        )?,
        PuncturedSphere::new(vec![SpherePoint::Finite(zero()), SpherePoint::Infinity])?,
    )
}

/// (z^{n+1}/(n+1), z) on the plane: Lagrangian Gauss map z^n.
pub fn zn(n: usize) -> Result<WeierstrassData> {
    if n == 0 {
        return Err(Error::InvalidInput("zn needs n >= 1".into()));
    }
    let mut coeffs = vec![zero(); n + 2];
    coeffs[n + 1] = c(1.0 / (n as f64 + 1.0), 0.0);
    WeierstrassData::explicit(
        RationalMap::from_poly(Polynomial::new(coeffs)),
        RationalMap::from_poly(Polynomial::z()),
        PuncturedSphere::new(vec![SpherePoint::Infinity])?,
    )
}

/// nu = z, dG = dz/((z-1)(z+1)): well defined only on the universal
/// cover; its Gauss map omits 1, -1, and infinity.
pub fn voss() -> Result<WeierstrassData> {
    WeierstrassData::differential(
        RationalMap::from_poly(Polynomial::z()),
        RationalMap::new(
            Polynomial::one(),
            Polynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]),
        )?,
        PuncturedSphere::new(vec![
            SpherePoint::Finite(c(1.0, 0.0)),
            SpherePoint::Finite(c(-1.0, 0.0)),
            SpherePoint::Infinity,
        ])?,
    )
}

/// omega = dz, theta = 0: the horosphere.
pub fn horosphere() -> Result<CanonicalForms> {
    CanonicalForms::new(
        RationalMap::constant(c(1.0, 0.0)),
        RationalMap::constant(zero()),
        PuncturedSphere::new(Vec::new())?,
    )
}

/// omega = dz/z, theta = dz/(2z): constant rho = 1/2, the hyperbolic
/// cylinder configuration.
pub fn cylinder() -> Result<CanonicalForms> {
    let inv_z = RationalMap::new(Polynomial::one(), Polynomial::z())?;
    CanonicalForms::new(
        inv_z.clone(),
        inv_z.mul(&RationalMap::constant(c(0.5, 0.0)))?,
        PuncturedSphere::new(vec![SpherePoint::Finite(zero()), SpherePoint::Infinity])?,
    )
}

/// Looks up a gallery entry by CLI name.
pub fn lookup(name: &str) -> Result<GalleryEntry> {
    match name {
        "paraboloid" => Ok(GalleryEntry::Affine(paraboloid(c(0.5, 0.0))?)),
        "rotational" => Ok(GalleryEntry::Affine(rotational(1.0)?)),
        "voss" => Ok(GalleryEntry::Affine(voss()?)),
        "horosphere" => Ok(GalleryEntry::Flat(horosphere()?)),
        "cylinder" => Ok(GalleryEntry::Flat(cylinder()?)),
        _ => {
            if let Some(ns) = name.strip_prefix("zn:") {
                let n: usize = ns
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("bad gallery name {name}")))?;
                Ok(GalleryEntry::Affine(zn(n)?))
            } else {
                Err(Error::InvalidInput(format!(
                    "unknown gallery entry {name} (try paraboloid, rotational, zn:<n>, voss, horosphere, cylinder)"
                )))
            }
        }
    }
}

/// Default mesh domain for a gallery entry.
pub fn default_domain(name: &str) -> DomainSpec {
    match name {
        "rotational" | "cylinder" => DomainSpec::Annulus {
            rmin: 0.5,
            rmax: 1.5,
        },
        "paraboloid" => DomainSpec::Disk { radius: 2.0 },
        // reach past the singular circle |z| = 1 of the z^n family
        n if n.starts_with("zn:") => DomainSpec::Disk { radius: 1.5 },
        _ => DomainSpec::Disk { radius: 1.0 },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat::FlatClass;

    #[test]
    fn lookup_covers_the_catalogue() {
        for name in ["paraboloid", "rotational", "zn:4", "voss", "horosphere", "cylinder"] {
            assert!(lookup(name).is_ok(), "{name}");
        }
        assert!(lookup("nope").is_err());
        assert!(lookup("zn:x").is_err());
        assert!(lookup("zn:0").is_err());
    }

    #[test]
    fn cylinder_has_constant_half_rho() {
        let forms = cylinder().unwrap();
        let rho = forms.rho().unwrap();
        assert!(rho.is_constant());
        match rho.eval(SpherePoint::Finite(c(0.7, 0.3))) {
            SpherePoint::Finite(v) => assert!((v - 0.5).norm() < 1e-12),
            _ => panic!("finite expected"),
        }
        assert_eq!(
            forms.classify_rho().unwrap(),
            FlatClass::HyperbolicCylinderCandidate
        );
    }
}
