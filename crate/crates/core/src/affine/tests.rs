use num_complex::Complex64;

use super::*;
use crate::error::Error;
use crate::mesh::DomainSpec;
use crate::rational::{Polynomial, RationalMap, SpherePoint};
use crate::valdist::PuncturedSphere;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn poly(coeffs: Vec<Complex64>) -> RationalMap {
    RationalMap::from_poly(Polynomial::new(coeffs))
}

fn zero() -> Complex64 {
    c(0.0, 0.0)
}

/// (cz, z) on the plane: the elliptic paraboloid family.
fn paraboloid(cv: Complex64) -> WeierstrassData {
    let f = poly(vec![zero(), cv]);
    let g = RationalMap::from_poly(Polynomial::z());
    WeierstrassData::explicit(f, g, PuncturedSphere::new(vec![SpherePoint::Infinity]).unwrap())
        .unwrap()
}

/// (z, r^2/z) on C \ {0}: the rotational family.
fn rotational(r: f64) -> WeierstrassData {
    let f = RationalMap::from_poly(Polynomial::z());
    let g = RationalMap::new(
        Polynomial::constant(c(r * r, 0.0)),
        Polynomial::new(vec![zero(), c(1.0, 0.0)]),
    )
    .unwrap();
    let dom = PuncturedSphere::new(vec![SpherePoint::Finite(zero()), SpherePoint::Infinity])
        .unwrap();
    WeierstrassData::explicit(f, g, dom).unwrap()
}

/// nu = z, dG = dz/((z-1)(z+1)): Voss-type data, multivalued G.
fn voss() -> WeierstrassData {
    let nu = RationalMap::from_poly(Polynomial::z());
    let dg = RationalMap::new(
        Polynomial::one(),
        Polynomial::from_roots(&[c(1.0, 0.0), c(-1.0, 0.0)]),
    )
    .unwrap();
    let dom = PuncturedSphere::new(vec![
        SpherePoint::Finite(c(1.0, 0.0)),
        SpherePoint::Finite(c(-1.0, 0.0)),
        SpherePoint::Infinity,
    ])
    .unwrap();
    WeierstrassData::differential(nu, dg, dom).unwrap()
}

#[test]
fn gauss_map_of_explicit_cubic() {
    // F = z^3/3, G = z: nu = z^2
    let f = poly(vec![zero(), zero(), zero(), c(1.0 / 3.0, 0.0)]);
    let g = RationalMap::from_poly(Polynomial::z());
    let data =
        WeierstrassData::explicit(f, g, PuncturedSphere::new(vec![SpherePoint::Infinity]).unwrap())
            .unwrap();
    let nu = data.lagrangian_gauss().unwrap();
    let z = c(0.7, -0.3);
    match nu.eval(SpherePoint::Finite(z)) {
        SpherePoint::Finite(v) => assert!((v - z * z).norm() < 1e-12),
        _ => panic!("finite expected"),
    }
}

#[test]
fn gauss_map_of_rotational_data() {
    // (z, r^2/z): nu = -z^2/r^2
    let data = rotational(2.0);
    let nu = data.lagrangian_gauss().unwrap();
    let z = c(1.1, 0.4);
    match nu.eval(SpherePoint::Finite(z)) {
        SpherePoint::Finite(v) => assert!((v + z * z / 4.0).norm() < 1e-12),
        _ => panic!("finite expected"),
    }
}

#[test]
fn period_certificate_paraboloid_is_well_defined() {
    let cert = paraboloid(c(0.5, 0.0)).period_check().unwrap();
    assert_eq!(cert.verdict, PeriodVerdict::WellDefined);
    assert_eq!(cert.records.len(), 1);
    assert!(cert.records[0].res_dg.norm() <= EPS_RES);
}

#[test]
fn period_certificate_rotational_residue() {
    // F dG = -r^2 dz / z: residue at 0 is -r^2, purely real
    for r in [1.0, 2.0] {
        let cert = rotational(r).period_check().unwrap();
        assert_eq!(cert.verdict, PeriodVerdict::WellDefined);
        let at0 = cert
            .records
            .iter()
            .find(|rec| rec.puncture == SpherePoint::Finite(zero()))
            .unwrap();
        let res = at0.res_f_dg.unwrap();
        assert!((res - c(-r * r, 0.0)).norm() < 1e-10);
        assert!(at0.re_period_zero);
        assert!(at0.single_valued_g && at0.single_valued_f);
    }
}

#[test]
fn period_certificate_voss_is_obstructed() {
    let cert = voss().period_check().unwrap();
    assert_eq!(cert.verdict, PeriodVerdict::UniversalCoverOnly);
    let at1 = cert
        .records
        .iter()
        .find(|rec| rec.puncture == SpherePoint::Finite(c(1.0, 0.0)))
        .unwrap();
    // partial fractions: 1/((z-1)(z+1)) = (1/2)/(z-1) - (1/2)/(z+1)
    assert!((at1.res_dg - c(0.5, 0.0)).norm() < 1e-10);
    assert!(!at1.single_valued_g);
    assert!(matches!(
        Immersion::prepare(&voss(), None),
        Err(Error::NotWellDefined)
    ));
}

#[test]
fn immersion_matches_paraboloid_closed_form() {
    // GF - 2 int F dG = c z^2 - c z^2 = 0, so
    // psi = (z + c conj z, (1-|c|^2)|z|^2/2), base 0
    let cv = c(0.5, 0.0);
    let imm = Immersion::prepare(&paraboloid(cv), None).unwrap();
    assert_eq!(imm.base(), zero());
    for z in [c(1.0, 0.0), c(0.3, -0.8), c(-2.0, 1.5)] {
        let p = imm.eval(z).unwrap();
        let want_x = z + (cv * z).conj();
        let want_phi = (1.0 - cv.norm_sqr()) * z.norm_sqr() / 2.0;
        assert!((p.x - want_x).norm() < 1e-12);
        assert!((p.phi - want_phi).abs() < 1e-12);
    }
}

#[test]
fn immersion_rotational_height_at_one() {
    // (z, 1/z), base 1: int F dG = -log z, so
    // phi(z) = (1/|z|^2 - |z|^2)/2 + Re(1 + 2 log z); phi(1) = 1
    let imm = Immersion::prepare(&rotational(1.0), Some(c(1.0, 0.0))).unwrap();
    let p = imm.eval(c(1.0, 0.0)).unwrap();
    assert!((p.x - c(2.0, 0.0)).norm() < 1e-12);
    assert!((p.phi - 1.0).abs() < 1e-12);
    let z = c(0.5, 1.2);
    let p = imm.eval(z).unwrap();
    let want = (1.0 / z.norm_sqr() - z.norm_sqr()) / 2.0 + 1.0 + 2.0 * z.ln().re;
    assert!((p.phi - want).abs() < 1e-10);
}

#[test]
fn conormal_annihilates_the_tangent_plane() {
    // N = (conj F - G, 1) pairs to zero with dpsi: for real and
    // imaginary parameter steps, Re(conj(n) dx) + dphi = 0
    for data in [paraboloid(c(0.3, 0.2)), rotational(1.0)] {
        let base = Some(c(1.0, 0.0));
        let imm = Immersion::prepare(&data, base).unwrap();
        let z = c(0.9, 0.7);
        let n = imm.conormal(z).unwrap();
        let h = 1e-6;
        for dir in [c(h, 0.0), c(0.0, h)] {
            let a = imm.eval(z - dir).unwrap();
            let b = imm.eval(z + dir).unwrap();
            let dx = b.x - a.x;
            let dphi = b.phi - a.phi;
            let pairing = (n.conj() * dx).re + dphi;
            assert!(pairing.abs() < 1e-8, "pairing {pairing}");
        }
    }
}

#[test]
fn free_conormal_matches_immersion_conormal() {
    let data = paraboloid(c(0.3, 0.2));
    let imm = Immersion::prepare(&data, None).unwrap();
    let z = c(0.4, -1.1);
    assert!((imm.conormal(z).unwrap() - conormal(&data, z).unwrap()).norm() < 1e-14);
}

#[test]
fn metric_sample_identities() {
    // dtau = 2(1+|nu|^2)|G'|^2; g = |G'|^2 - |F'|^2 = (1 - |nu|^2)|G'|^2
    let data = rotational(1.0);
    for z in [c(0.5, 0.0), c(1.3, 0.8), c(-0.4, -0.9)] {
        let m = data.metric_sample(z).unwrap();
        let nu2 = m.nu_val.norm_sqr();
        let gp2 = 1.0 / z.norm_sqr().powi(2);
        assert!((m.dtau_factor - 2.0 * (1.0 + nu2) * gp2).abs() < 1e-10 * (1.0 + m.dtau_factor));
        assert!((m.g_factor - (1.0 - nu2) * gp2).abs() < 1e-10 * (1.0 + m.g_factor.abs()));
        // singular exactly on |nu| = |z|^2 = 1
        assert_eq!(m.singular, (z.norm_sqr() - 1.0).abs() <= EPS_SING);
        if nu2 < 1.0 {
            assert!(m.g_factor < m.dtau_factor);
        }
    }
}

#[test]
fn singular_curve_of_rotational_data_is_the_circle() {
    // |nu| = |z|^2 = 1: the unit circle
    let data = rotational(1.0);
    let win = Window {
        xmin: -1.6,
        xmax: 1.6,
        ymin: -1.6,
        ymax: 1.6,
    };
    let curves = singular_curves(&data, win, 256).unwrap();
    assert!(!curves.is_empty());
    let mut total = 0usize;
    let mut worst = 0.0f64;
    for curve in &curves {
        for p in curve {
            total += 1;
            worst = worst.max((p.norm() - 1.0).abs());
        }
    }
    assert!(total > 100);
    assert!(worst < 2e-2, "distance to circle {worst}");
    // coverage: every angle octant is hit
    let mut hit = [false; 8];
    for curve in &curves {
        for p in curve {
            let k = ((p.arg() + std::f64::consts::PI) / (std::f64::consts::PI / 4.0))
                .floor()
                .clamp(0.0, 7.0) as usize;
            hit[k] = true;
        }
    }
    assert!(hit.iter().all(|h| *h));
}

#[test]
fn paraboloid_has_no_singular_curves() {
    let data = paraboloid(c(0.5, 0.0));
    let win = Window {
        xmin: -2.0,
        xmax: 2.0,
        ymin: -2.0,
        ymax: 2.0,
    };
    assert!(singular_curves(&data, win, 64).unwrap().is_empty());
}

#[test]
fn zn_data_singular_curve_is_unit_circle() {
    // (z^{n+1}/(n+1), z): nu = z^n, |nu| = 1 on |z| = 1
    let n = 3usize;
    let mut coeffs = vec![zero(); n + 2];
    coeffs[n + 1] = c(1.0 / (n as f64 + 1.0), 0.0);
    let data = WeierstrassData::explicit(
        poly(coeffs),
        RationalMap::from_poly(Polynomial::z()),
        PuncturedSphere::new(vec![SpherePoint::Infinity]).unwrap(),
    )
    .unwrap();
    let win = Window {
        xmin: -1.5,
        xmax: 1.5,
        ymin: -1.5,
        ymax: 1.5,
    };
    let curves = singular_curves(&data, win, 128).unwrap();
    let worst = curves
        .iter()
        .flatten()
        .map(|p| (p.norm() - 1.0).abs())
        .fold(0.0, f64::max);
    assert!(!curves.is_empty());
    assert!(worst < 2e-2);
}

#[test]
fn end_orders_of_rotational_data() {
    // dG = -r^2/z^2 dz: order -2 at 0; at infinity dG has function order
    // 2, form order 0... completeness fails there but holds at 0
    let data = rotational(1.0);
    let ends = data.end_orders().unwrap();
    let at0 = ends
        .iter()
        .find(|e| e.puncture == SpherePoint::Finite(zero()))
        .unwrap();
    assert_eq!(at0.ord_dg, -2);
    assert!(at0.completeness_necessary);
    let atinf = ends
        .iter()
        .find(|e| e.puncture == SpherePoint::Infinity)
        .unwrap();
    // dF = dz is order -2 at infinity; dG = -dz/z^2 has form order 0
    assert_eq!(atinf.ord_dg, 0);
    // nu = -z^2 has a pole of order 2 at infinity: d tau keeps order -2
    assert_eq!(atinf.ord_dtau, -2);
}

#[test]
fn paraboloid_end_order_at_infinity() {
    // dG = dz: form order -2 at infinity, complete end
    let ends = paraboloid(c(0.5, 0.0)).end_orders().unwrap();
    assert_eq!(ends.len(), 1);
    assert_eq!(ends[0].ord_dg, -2);
    assert!(ends[0].completeness_necessary);
}

#[test]
fn classifier_on_the_paraboloid_family() {
    assert_eq!(
        paraboloid(c(0.5, 0.0)).classify().unwrap(),
        AffineClass::EllipticParaboloid
    );
    assert_eq!(
        paraboloid(c(0.0, 1.0)).classify().unwrap(),
        AffineClass::DegenerateLine
    );
    assert_eq!(rotational(1.0).classify().unwrap(), AffineClass::Generic);
}

#[test]
fn mesh_paraboloid_disk() {
    let data = paraboloid(c(0.5, 0.0));
    let m = mesh(&data, DomainSpec::Disk { radius: 2.0 }, 64).unwrap();
    assert_eq!(m.vertices.len(), 64 * 64);
    assert!(m.singular.iter().all(|s| !s));
    assert!(!m.faces.is_empty());
}

#[test]
fn mesh_rotational_annulus_flags_the_circle() {
    let data = rotational(1.0);
    // odd ring count puts one ring exactly on r = 1 in the 0.5..1.5 span
    let n = 33;
    let m = mesh(
        &data,
        DomainSpec::Annulus {
            rmin: 0.5,
            rmax: 1.5,
        },
        n,
    )
    .unwrap();
    assert_eq!(m.vertices.len(), n * n);
    let flagged = m.singular.iter().filter(|s| **s).count();
    assert_eq!(flagged, n);
}

#[test]
fn differential_mode_synthesizes_the_curve() {
    // nu = z^2, dG = dz: F = z^3/3, G = z
    let data = WeierstrassData::differential(
        poly(vec![zero(), zero(), c(1.0, 0.0)]),
        RationalMap::constant(c(1.0, 0.0)),
        PuncturedSphere::new(vec![SpherePoint::Infinity]).unwrap(),
    )
    .unwrap();
    let (f, g) = data.curve().unwrap();
    let z = c(0.6, 0.5);
    match (f.eval(SpherePoint::Finite(z)), g.eval(SpherePoint::Finite(z))) {
        (SpherePoint::Finite(fv), SpherePoint::Finite(gv)) => {
            assert!((fv - z * z * z / 3.0).norm() < 1e-12);
            assert!((gv - z).norm() < 1e-12);
        }
        _ => panic!("finite expected"),
    }
}

#[test]
fn voss_curve_is_refused() {
    assert!(matches!(voss().curve(), Err(Error::NotWellDefined)));
}
