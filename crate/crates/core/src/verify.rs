//! The end-to-end verification suite: nine named checks covering the
//! exact arithmetic layer, the value-distribution bound, the affine
//! examples, and the flat-front integrator. Used by `afl verify` and by
//! the acceptance test.

use std::time::Instant;

use num_complex::Complex64;
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::affine::{
    singular_curves, AffineClass, Immersion, PeriodVerdict, WeierstrassData, Window,
};
use crate::error::{Error, Result};
use crate::flat::{frame_at, parallel, schwarzian_check, CanonicalForms, FlatClass, Sl2Frame};
use crate::gallery;
use crate::mesh::{DomainSpec, ParamGrid};
use crate::par;
use crate::rational::{Polynomial, RationalMap, SpherePoint};
use crate::valdist::{ramification_report, rh_check, Multiplicity, RamifiedKind};

/// Result of one named check.
#[derive(Clone, Debug)]
pub struct Criterion {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

/// Seed for the randomized checks; override with AFL_SEED.
pub fn seed() -> u64 {
    std::env::var("AFL_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x5eed)
}

fn run(name: &'static str, f: impl FnOnce() -> Result<String>) -> Criterion {
    match f() {
        Ok(detail) => Criterion {
            name,
            passed: true,
            detail,
        },
        Err(e) => Criterion {
            name,
            passed: false,
            detail: e.to_string(),
        },
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::VerificationFailed(msg.into())
}

fn ensure(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(fail(msg))
    }
}

/// Runs every check and returns the per-criterion results in order.
pub fn run_all() -> Vec<Criterion> {
    vec![
        run("sharpness_zn_family", sharpness_zn_family),
        run("rotational_example", rotational_example),
        run("voss_example", voss_example),
        run("paraboloid_classifier", paraboloid_classifier),
        run("riemann_hurwitz_suite", riemann_hurwitz_suite),
        run("metric_identities", metric_identities),
        run("h3_conservation", h3_conservation),
        run("schwarzian_identity", schwarzian_identity),
        run("parallel_family", parallel_family),
    ]
}

pub fn all_passed(results: &[Criterion]) -> bool {
    results.iter().all(|c| c.passed)
}

/// delta(nu) = 2 - 1/n for the z^n family, exactly on the nose of the
/// one-end bound, computed symbolically.
fn sharpness_zn_family() -> Result<String> {
    let t0 = Instant::now();
    for n in 2..=6usize {
        let data = gallery::zn(n)?;
        let nu = data.lagrangian_gauss()?;
        let report = ramification_report(&nu, data.domain())?;
        let want = Ratio::new(2 * n as i64 - 1, n as i64);
        ensure(
            report.delta_ratio() == want,
            format!("n={n}: delta {:?} != 2 - 1/{n}", report.delta),
        )?;
        ensure(
            report.bound_ratio() == want && report.sharp && report.bound_holds,
            format!("n={n}: bound not sharp"),
        )?;
        ensure(
            report.exceptional_count == 1,
            format!("n={n}: expected exactly one omitted value"),
        )?;
    }
    let dt = t0.elapsed();
    ensure(dt.as_secs_f64() < 1.0, format!("too slow: {dt:?}"))?;
    Ok(format!("n=2..6 all sharp, {dt:?}"))
}

fn hausdorff_to_circle(curves: &[Vec<Complex64>], r: f64, tol: f64) -> Result<()> {
    let pts: Vec<Complex64> = curves.iter().flatten().copied().collect();
    ensure(!pts.is_empty(), "no singular curve found")?;
    for p in &pts {
        ensure(
            (p.norm() - r).abs() <= tol,
            format!("curve point {p} is {} from the circle", (p.norm() - r).abs()),
        )?;
    }
    for k in 0..360 {
        let ang = 2.0 * std::f64::consts::PI * k as f64 / 360.0;
        let q = Complex64::from_polar(r, ang);
        let d = pts
            .iter()
            .map(|p| (p - q).norm())
            .fold(f64::INFINITY, f64::min);
        ensure(
            d <= tol,
            format!("circle point at angle {k} deg is {d} from the curve"),
        )?;
    }
    Ok(())
}

/// The rotational example (z, r^2/z): two omitted values, bound attained,
/// real periods, singular curve on |z| = r.
fn rotational_example() -> Result<String> {
    let t0 = Instant::now();
    for r in [1.0f64, 2.0] {
        let data = gallery::rotational(r)?;
        let nu = data.lagrangian_gauss()?;
        let report = ramification_report(&nu, data.domain())?;
        let two = Ratio::from_integer(2);
        ensure(
            report.delta_ratio() == two && report.bound_ratio() == two,
            format!("r={r}: delta or bound is not 2"),
        )?;
        ensure(
            report.exceptional_count == 2 && report.sharp,
            format!("r={r}: expected two omitted values, sharp"),
        )?;

        let cert = data.period_check()?;
        ensure(
            cert.verdict == PeriodVerdict::WellDefined,
            format!("r={r}: period check failed"),
        )?;
        for rec in &cert.records {
            if let Some(res) = rec.res_f_dg {
                ensure(
                    res.im.abs() <= 1e-10,
                    format!("r={r}: Im residue of F dG is {}", res.im),
                )?;
            }
        }

        let w = 1.5 * r;
        let curves = singular_curves(
            &data,
            Window {
                xmin: -w,
                xmax: w,
                ymin: -w,
                ymax: w,
            },
            256,
        )?;
        hausdorff_to_circle(&curves, r, 2e-2)?;
    }
    let dt = t0.elapsed();
    ensure(dt.as_secs_f64() < 5.0, format!("too slow: {dt:?}"))?;
    Ok(format!("r=1,2 sharp with singular circle |z|=r, {dt:?}"))
}

/// The Voss datum: well defined only on the universal cover (real
/// residue 1/2 at z = 1), immersion refused, and exactly the three
/// omitted values 1, -1, infinity.
fn voss_example() -> Result<String> {
    let data = gallery::voss()?;
    let cert = data.period_check()?;
    ensure(
        cert.verdict == PeriodVerdict::UniversalCoverOnly,
        "expected universal-cover-only verdict",
    )?;
    let one = SpherePoint::Finite(Complex64::new(1.0, 0.0));
    let rec = cert
        .records
        .iter()
        .find(|rec| rec.puncture.matches(&one))
        .ok_or_else(|| fail("no residue record at z = 1"))?;
    ensure(
        (rec.res_dg - Complex64::new(0.5, 0.0)).norm() <= 1e-10,
        format!("residue of dG at 1 is {}, not 1/2", rec.res_dg),
    )?;
    match Immersion::prepare(&data, None) {
        Err(Error::NotWellDefined) => {}
        other => {
            return Err(fail(format!(
                "immersion should be refused with NotWellDefined, got {other:?}"
            )))
        }
    }

    let nu = data.lagrangian_gauss()?;
    let report = ramification_report(&nu, data.domain())?;
    let omitted: Vec<SpherePoint> = report
        .values
        .iter()
        .filter(|v| v.kind == RamifiedKind::Exceptional)
        .map(|v| v.value)
        .collect();
    ensure(
        omitted.len() == 3,
        format!("expected three omitted values, got {}", omitted.len()),
    )?;
    for want in [
        SpherePoint::Finite(Complex64::new(1.0, 0.0)),
        SpherePoint::Finite(Complex64::new(-1.0, 0.0)),
        SpherePoint::Infinity,
    ] {
        ensure(
            omitted.iter().any(|v| v.matches(&want)),
            format!("{want:?} missing from the omitted values"),
        )?;
    }
    ensure(
        report.values.iter().all(|v| v.m == Multiplicity::Infinite),
        "non-omitted totally ramified value reported",
    )?;
    Ok("universal cover only, Res_1(dG) = 1/2, three omitted values".into())
}

/// Constant Gauss map classifier: |c| = 1/2 gives the elliptic
/// paraboloid, |c| = 1 degenerates to a line.
fn paraboloid_classifier() -> Result<String> {
    let para = gallery::paraboloid(Complex64::new(0.5, 0.0))?;
    ensure(
        para.classify()? == AffineClass::EllipticParaboloid,
        "c = 1/2 should classify as elliptic paraboloid",
    )?;
    let line = gallery::paraboloid(Complex64::from_polar(1.0, 0.3))?;
    ensure(
        line.classify()? == AffineClass::DegenerateLine,
        "|c| = 1 should classify as degenerate line",
    )?;
    Ok("elliptic paraboloid and degenerate line recognized".into())
}

fn random_map(rng: &mut ChaCha8Rng, max_deg: usize) -> Result<RationalMap> {
    loop {
        let dn = rng.gen_range(0..=max_deg);
        let dd = rng.gen_range(0..=max_deg);
        if dn == 0 && dd == 0 {
            continue;
        }
        let coeff = |rng: &mut ChaCha8Rng, deg: usize| -> Polynomial {
            let mut c: Vec<Complex64> = (0..=deg)
                .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
                .collect();
            // keep the leading coefficient away from zero so the degree
            // is what was drawn
            while c[deg].norm() < 0.2 {
                c[deg] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            Polynomial::new(c)
        };
        let num = coeff(rng, dn);
        let den = coeff(rng, dd);
        let map = RationalMap::new(num, den)?;
        if !map.is_constant() {
            return Ok(map);
        }
    }
}

/// Riemann-Hurwitz on random reduced maps, and preimage counting with
/// multiplicity.
fn riemann_hurwitz_suite() -> Result<String> {
    let t0 = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    for i in 0..50 {
        let map = random_map(&mut rng, 6)?;
        ensure(
            rh_check(&map)?,
            format!("Riemann-Hurwitz failed on random map {i}"),
        )?;
    }
    for i in 0..100 {
        let map = random_map(&mut rng, 6)?;
        let a = if i % 5 == 0 {
            SpherePoint::Infinity
        } else {
            SpherePoint::Finite(Complex64::new(
                rng.gen_range(-2.0..2.0),
                rng.gen_range(-2.0..2.0),
            ))
        };
        let total = map.preimages(a)?.total();
        ensure(
            total == map.degree() as i64,
            format!(
                "pair {i}: preimage mass {total} != degree {} at {a:?}",
                map.degree()
            ),
        )?;
    }
    let dt = t0.elapsed();
    ensure(dt.as_secs_f64() < 10.0, format!("too slow: {dt:?}"))?;
    Ok(format!("50 maps branch-counted, 100 fibers counted, {dt:?}"))
}

fn random_poly(rng: &mut ChaCha8Rng, deg: usize) -> Polynomial {
    let mut c: Vec<Complex64> = (0..=deg)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    while c[deg].norm() < 0.2 {
        c[deg] = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    }
    Polynomial::new(c)
}

/// Two expressions for the induced metric factor agree, and the affine
/// metric sits strictly below it wherever |nu| < 1.
fn metric_identities() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 0xa1);
    let mut checked = 0usize;
    for i in 0..10 {
        let f = RationalMap::from_poly(random_poly(&mut rng, 2 + (i % 3)));
        let g = RationalMap::from_poly(random_poly(&mut rng, 1 + (i % 4)));
        let data = WeierstrassData::explicit(
            f.clone(),
            g.clone(),
            crate::valdist::PuncturedSphere::new(vec![SpherePoint::Infinity])?,
        )?;
        let fp = f.derivative()?;
        let gp = g.derivative()?;
        for k in 0..200 {
            let x = -2.0 + 4.0 * (k % 20) as f64 / 19.0;
            let y = -1.0 + 2.0 * (k / 20) as f64 / 9.0;
            let z = Complex64::new(x, y);
            let s = data.metric_sample(z)?;
            let (fpv, gpv) = match (
                fp.eval(SpherePoint::Finite(z)),
                gp.eval(SpherePoint::Finite(z)),
            ) {
                (SpherePoint::Finite(a), SpherePoint::Finite(b)) => (a, b),
                _ => continue,
            };
            // dtau as 2(1 + |nu|^2)|G'|^2 versus 2(|F'|^2 + |G'|^2)
            let alt = 2.0 * (fpv.norm_sqr() + gpv.norm_sqr());
            let scale = s.dtau_factor.abs().max(1.0);
            ensure(
                (s.dtau_factor - alt).abs() <= 1e-12 * scale,
                format!("data {i}, z = {z}: metric forms differ by {}", (s.dtau_factor - alt).abs()),
            )?;
            if s.nu_val.is_finite() && s.nu_val.norm() < 1.0 && s.dtau_factor > 0.0 {
                ensure(
                    s.g_factor < s.dtau_factor,
                    format!("data {i}, z = {z}: affine metric not below induced metric"),
                )?;
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} sample points agree to 1e-12"))
}

/// Integrated horosphere frames conserve the determinant, stay on the
/// hyperboloid, and keep the horosphere height function constant.
fn h3_conservation() -> Result<String> {
    let forms = gallery::horosphere()?;
    ensure(
        forms.classify_rho()? == FlatClass::Horosphere,
        "rho classifier missed the horosphere",
    )?;
    let grid = ParamGrid::build(DomainSpec::Disk { radius: 1.0 }, 16)?;
    let base = Complex64::new(0.0, 0.0);
    let results = par::map(grid.points.clone(), |z| -> Result<()> {
        let e = frame_at(&forms, base, z)?;
        ensure(
            (e.det() - 1.0).norm() <= 1e-9,
            format!("det drift {} at {z}", (e.det() - 1.0).norm()),
        )?;
        let f = e.front_point();
        ensure(
            (f.inner(&f) + 1.0).abs() <= 1e-8,
            format!("<f,f> drift {} at {z}", (f.inner(&f) + 1.0).abs()),
        )?;
        ensure(
            (f.x0 + f.x3 - 1.0).abs() <= 1e-8,
            format!("x0 + x3 drift {} at {z}", (f.x0 + f.x3 - 1.0).abs()),
        )?;
        Ok(())
    });
    let n = results.len();
    for r in results {
        r?;
    }
    Ok(format!("{n} frames conserve det, <f,f>, and x0 + x3"))
}

/// Frame-level Schwarzian identity s(omega) - S(G) = 2Q checked by
/// finite differences on the integrated hyperbolic Gauss map.
fn schwarzian_identity() -> Result<String> {
    let t0 = Instant::now();
    let forms = CanonicalForms::new(
        RationalMap::constant(Complex64::new(1.0, 0.0)),
        RationalMap::from_poly(Polynomial::z()),
        crate::valdist::PuncturedSphere::new(Vec::new())?,
    )?;
    let res = schwarzian_check(
        &forms,
        Window {
            xmin: -0.8,
            xmax: 0.8,
            ymin: -0.8,
            ymax: 0.8,
        },
        41,
    )?;
    let dt = t0.elapsed();
    ensure(
        res <= 1e-4,
        format!("max Schwarzian residual {res} exceeds 1e-4"),
    )?;
    ensure(dt.as_secs_f64() < 30.0, format!("too slow: {dt:?}"))?;
    Ok(format!("max residual {res:.3e} on a 41x41 grid, {dt:?}"))
}

fn random_frame(rng: &mut ChaCha8Rng) -> Sl2Frame {
    loop {
        let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let e = Sl2Frame {
            e11: c(),
            e12: c(),
            e21: c(),
            e22: c(),
        };
        if e.det().norm() > 0.3 {
            return e.renormalize();
        }
    }
}

/// The parallel family f_t = cosh(t) f + sinh(t) n stays in H^3 and
/// satisfies f_t + n_t = e^t (f + n).
fn parallel_family() -> Result<String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed() ^ 0xf1a7);
    for i in 0..100 {
        let e = random_frame(&mut rng);
        let f = e.front_point();
        let n = e.normal();
        for t in [-1.0, 0.3, 2.0] {
            let (ft, nt) = parallel(&f, &n, t);
            ensure(
                ft.in_h3(1e-9),
                format!("frame {i}, t = {t}: parallel front left H^3"),
            )?;
            let et = t.exp();
            let drift = [
                ft.x0 + nt.x0 - et * (f.x0 + n.x0),
                ft.x1 + nt.x1 - et * (f.x1 + n.x1),
                ft.x2 + nt.x2 - et * (f.x2 + n.x2),
                ft.x3 + nt.x3 - et * (f.x3 + n.x3),
            ]
            .iter()
            .fold(0.0f64, |a, d| a.max(d.abs()));
            ensure(
                drift <= 1e-12,
                format!("frame {i}, t = {t}: exponential sum drift {drift}"),
            )?;
        }
    }
    Ok("100 random frames, t in {-1, 0.3, 2}".into())
}
