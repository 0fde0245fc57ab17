//! afl: analyze and mesh improper affine fronts and flat fronts from
//! rational data, with a built-in example gallery and a verification
//! suite.
//!
//! Exit codes: 0 success, 2 validation error, 3 numeric failure.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use fronts::affine::{
    AffineClass, EndOrder, PeriodCertificate, PeriodVerdict, WeierstrassData,
};
use fronts::flat::{monodromy, CanonicalForms, FlatClass, Sl2Frame, WcfEndRecord};
use fronts::gallery::{self, GalleryEntry};
use fronts::mesh::{DomainSpec, SurfaceMesh};
use fronts::rational::{Polynomial, RationalMap, SpherePoint};
use fronts::valdist::{ramification_report, PuncturedSphere, RamificationReport};
use fronts::{Error as CoreError, Result as CoreResult};

#[derive(Parser)]
#[command(name = "afl", version, about = "Affine and flat front toolkit")]
struct Cli {
    /// Override the per-step ODE tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Override the mesh resolution.
    #[arg(long, global = true)]
    grid: Option<usize>,
    /// Output directory for reports and meshes.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Print the JSON report to stdout and write no files.
    #[arg(long, global = true)]
    json_only: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Value-distribution and period analysis of a job file.
    Analyze { job: PathBuf },
    /// Mesh the surface described by a job file, with its report.
    Mesh { job: PathBuf },
    /// Analyze and mesh a built-in example
    /// (paraboloid, rotational, zn:<n>, voss, horosphere, cylinder).
    Gallery { name: String },
    /// Run the full verification suite.
    Verify,
}

// exit 2: the input is wrong; exit 3: the computation failed
fn exit_code(e: &CoreError) -> u8 {
    match e {
        CoreError::InvalidInput(_)
        | CoreError::ConstantMap
        | CoreError::DegenerateData(_)
        | CoreError::NotWellDefined
        | CoreError::ValueMismatch { .. }
        | CoreError::EvaluationAtSingularity(_) => 2,
        CoreError::NonConvergence { .. }
        | CoreError::ToleranceNotMet(_)
        | CoreError::PathHitsSingularity(_)
        | CoreError::ContourTooClose(_)
        | CoreError::VerificationFailed(_) => 3,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

type RunResult<T> = Result<T, Failure>;

fn invalid(msg: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: msg.into(),
    }
}

fn io_failure(what: &str, e: std::io::Error) -> Failure {
    Failure {
        code: 3,
        message: format!("{what}: {e}"),
    }
}

// -------- job schema --------

/// Rational map as coefficient lists, ascending degree, [re, im] pairs.
/// A missing denominator means the constant 1.
#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RationalSpec {
    num: Vec<[f64; 2]>,
    #[serde(default)]
    den: Option<Vec<[f64; 2]>>,
}

impl RationalSpec {
    fn build(&self) -> CoreResult<RationalMap> {
        let to_poly = |c: &[[f64; 2]]| Polynomial::new(
            c.iter().map(|p| Complex64::new(p[0], p[1])).collect(),
        );
        match &self.den {
            None => Ok(RationalMap::from_poly(to_poly(&self.num))),
            Some(d) => RationalMap::new(to_poly(&self.num), to_poly(d)),
        }
    }
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct WeierstrassSpec {
    mode: String,
    #[serde(rename = "F", default)]
    f: Option<RationalSpec>,
    #[serde(rename = "G", default)]
    g: Option<RationalSpec>,
    #[serde(default)]
    nu: Option<RationalSpec>,
    #[serde(rename = "dG", default)]
    dg: Option<RationalSpec>,
    punctures: Vec<SpherePoint>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FormsSpec {
    w_hat: RationalSpec,
    t_hat: RationalSpec,
    punctures: Vec<SpherePoint>,
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Job {
    kind: String,
    #[serde(default)]
    weierstrass: Option<WeierstrassSpec>,
    #[serde(default)]
    forms: Option<FormsSpec>,
    #[serde(default)]
    gallery: Option<String>,
    #[serde(default)]
    domain: Option<DomainSpec>,
    #[serde(default)]
    resolution: Option<usize>,
    /// Parallel-front distance for flat fronts.
    #[serde(default)]
    t: Option<f64>,
}

enum Built {
    Affine(WeierstrassData),
    Flat(CanonicalForms),
}

impl Job {
    fn build(&self) -> RunResult<Built> {
        match self.kind.as_str() {
            "affine" => self.build_affine(),
            "h3" => self.build_flat(),
            "analyze" => {
                if self.weierstrass.is_some() {
                    self.build_affine()
                } else if self.forms.is_some() {
                    self.build_flat()
                } else {
                    Err(invalid("analyze job needs a weierstrass or forms payload"))
                }
            }
            "gallery" => {
                let name = self
                    .gallery
                    .as_deref()
                    .ok_or_else(|| invalid("gallery job needs a gallery name"))?;
                match gallery::lookup(name)? {
                    GalleryEntry::Affine(d) => Ok(Built::Affine(d)),
                    GalleryEntry::Flat(f) => Ok(Built::Flat(f)),
                }
            }
            other => Err(invalid(format!("unknown job kind {other:?}"))),
        }
    }

    fn build_affine(&self) -> RunResult<Built> {
        let w = self
            .weierstrass
            .as_ref()
            .ok_or_else(|| invalid("affine job needs a weierstrass payload"))?;
        let dom = PuncturedSphere::new(w.punctures.clone())?;
        let data = match w.mode.as_str() {
            "explicit" => {
                let (f, g) = match (&w.f, &w.g) {
                    (Some(f), Some(g)) => (f.build()?, g.build()?),
                    _ => return Err(invalid("explicit mode needs F and G")),
                };
                WeierstrassData::explicit(f, g, dom)?
            }
            "differential" => {
                let (nu, dg) = match (&w.nu, &w.dg) {
                    (Some(n), Some(d)) => (n.build()?, d.build()?),
                    _ => return Err(invalid("differential mode needs nu and dG")),
                };
                WeierstrassData::differential(nu, dg, dom)?
            }
            other => return Err(invalid(format!("unknown weierstrass mode {other:?}"))),
        };
        Ok(Built::Affine(data))
    }

    fn build_flat(&self) -> RunResult<Built> {
        let f = self
            .forms
            .as_ref()
            .ok_or_else(|| invalid("h3 job needs a forms payload"))?;
        let dom = PuncturedSphere::new(f.punctures.clone())?;
        Ok(Built::Flat(CanonicalForms::new(
            f.w_hat.build()?,
            f.t_hat.build()?,
            dom,
        )?))
    }
}

// -------- report --------

#[derive(Serialize)]
struct MonodromyRecord {
    puncture: SpherePoint,
    matrix: Sl2Frame,
}

#[derive(Serialize)]
struct MeshSummary {
    vertices: usize,
    faces: usize,
    singular_vertices: usize,
}

#[derive(Serialize)]
struct Report {
    tool: String,
    kind: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    ramification: Option<RamificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    period: Option<PeriodCertificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    classification: Option<AffineClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    end_orders: Option<Vec<EndOrder>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    flat_class: Option<FlatClass>,
    #[serde(skip_serializing_if = "Option::is_none")]
    wcf_ends: Option<Vec<WcfEndRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    monodromy: Option<Vec<MonodromyRecord>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mesh: Option<MeshSummary>,
    timing_ms: f64,
}

fn analyze(built: &Built) -> RunResult<Report> {
    let t0 = Instant::now();
    let mut report = Report {
        tool: format!("afl {}", env!("CARGO_PKG_VERSION")),
        kind: String::new(),
        ramification: None,
        period: None,
        classification: None,
        end_orders: None,
        flat_class: None,
        wcf_ends: None,
        monodromy: None,
        mesh: None,
        timing_ms: 0.0,
    };
    match built {
        Built::Affine(data) => {
            report.kind = "affine".into();
            let nu = data.lagrangian_gauss()?;
            if !nu.is_constant() {
                report.ramification = Some(ramification_report(&nu, data.domain())?);
            }
            report.period = Some(data.period_check()?);
            report.classification = Some(data.classify()?);
            report.end_orders = Some(data.end_orders()?);
        }
        Built::Flat(forms) => {
            report.kind = "h3".into();
            report.flat_class = Some(forms.classify_rho()?);
            report.wcf_ends = Some(forms.wcf_end_orders()?);
            let mut mono = Vec::new();
            for p in forms.domain().punctures() {
                mono.push(MonodromyRecord {
                    puncture: *p,
                    matrix: monodromy(forms, *p)?,
                });
            }
            report.monodromy = Some(mono);
        }
    }
    report.timing_ms = t0.elapsed().as_secs_f64() * 1000.0;
    Ok(report)
}

fn build_mesh(built: &Built, domain: DomainSpec, resolution: usize, t: f64) -> RunResult<SurfaceMesh> {
    let mesh = match built {
        Built::Affine(data) => fronts::affine::mesh(data, domain, resolution)?,
        Built::Flat(forms) => fronts::flat::mesh_h3(forms, domain, resolution, t)?,
    };
    Ok(mesh)
}

/// Writes an OBJ file: "v" lines with 17 significant digits, "f" lines
/// 1-indexed. Refuses an empty mesh before touching the filesystem.
fn emit_obj(mesh: &SurfaceMesh, path: &Path) -> RunResult<()> {
    if mesh.is_empty() {
        return Err(invalid("refusing to write an empty mesh"));
    }
    let mut out = String::new();
    for v in &mesh.vertices {
        out.push_str(&format!("v {:.16e} {:.16e} {:.16e}\n", v[0], v[1], v[2]));
    }
    for f in &mesh.faces {
        out.push_str(&format!("f {} {} {}\n", f[0] + 1, f[1] + 1, f[2] + 1));
    }
    std::fs::write(path, out).map_err(|e| io_failure("writing mesh", e))
}

// -------- command plumbing --------

fn read_job(path: &Path) -> RunResult<Job> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| invalid(format!("cannot read job file {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| invalid(format!("malformed job file: {e}")))
}

fn print_report(report: &Report) -> RunResult<()> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| invalid(format!("report serialization: {e}")))?;
    println!("{text}");
    Ok(())
}

fn write_report(report: &Report, path: &Path) -> RunResult<()> {
    let text = serde_json::to_string_pretty(report)
        .map_err(|e| invalid(format!("report serialization: {e}")))?;
    std::fs::write(path, text).map_err(|e| io_failure("writing report", e))
}

fn out_dir(cli: &Cli) -> PathBuf {
    cli.out.clone().unwrap_or_else(|| PathBuf::from("."))
}

fn ensure_out_dir(dir: &Path) -> RunResult<()> {
    std::fs::create_dir_all(dir).map_err(|e| io_failure("creating output directory", e))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "job".into())
}

fn run(cli: &Cli) -> RunResult<()> {
    if let Some(tol) = cli.tol {
        fronts::flat::set_tolerance(tol)?;
    }
    match &cli.cmd {
        Cmd::Analyze { job } => {
            let spec = read_job(job)?;
            let built = spec.build()?;
            let report = analyze(&built)?;
            print_report(&report)?;
            if !cli.json_only {
                if let Some(dir) = &cli.out {
                    ensure_out_dir(dir)?;
                    write_report(&report, &dir.join(format!("{}.report.json", stem(job))))?;
                }
            }
            Ok(())
        }
        Cmd::Mesh { job } => {
            let spec = read_job(job)?;
            let built = spec.build()?;
            let domain = spec
                .domain
                .ok_or_else(|| invalid("mesh job needs a domain"))?;
            let resolution = cli.grid.or(spec.resolution).unwrap_or(48);
            let t = spec.t.unwrap_or(0.0);
            let mesh = build_mesh(&built, domain, resolution, t)?;
            let mut report = analyze(&built)?;
            report.mesh = Some(MeshSummary {
                vertices: mesh.vertices.len(),
                faces: mesh.faces.len(),
                singular_vertices: mesh.singular.iter().filter(|s| **s).count(),
            });
            print_report(&report)?;
            if !cli.json_only {
                let dir = out_dir(cli);
                ensure_out_dir(&dir)?;
                let name = stem(job);
                emit_obj(&mesh, &dir.join(format!("{name}.obj")))?;
                write_report(&report, &dir.join(format!("{name}.report.json")))?;
            }
            Ok(())
        }
        Cmd::Gallery { name } => {
            let built = match gallery::lookup(name)? {
                GalleryEntry::Affine(d) => Built::Affine(d),
                GalleryEntry::Flat(f) => Built::Flat(f),
            };
            let mut report = analyze(&built)?;
            // affine data that only lives on the universal cover is
            // reported but not meshed
            let meshable = match &built {
                Built::Affine(data) => {
                    data.period_check()?.verdict == PeriodVerdict::WellDefined
                }
                Built::Flat(_) => true,
            };
            let resolution = cli.grid.unwrap_or(49);
            let mesh = if meshable {
                let m = build_mesh(&built, gallery::default_domain(name), resolution, 0.0)?;
                report.mesh = Some(MeshSummary {
                    vertices: m.vertices.len(),
                    faces: m.faces.len(),
                    singular_vertices: m.singular.iter().filter(|s| **s).count(),
                });
                Some(m)
            } else {
                None
            };
            print_report(&report)?;
            if !cli.json_only {
                let dir = out_dir(cli);
                ensure_out_dir(&dir)?;
                let file_name = name.replace(':', "_");
                if let Some(m) = &mesh {
                    emit_obj(m, &dir.join(format!("{file_name}.obj")))?;
                }
                write_report(&report, &dir.join(format!("{file_name}.report.json")))?;
            }
            Ok(())
        }
        Cmd::Verify => {
            let results = fronts::verify::run_all();
            for c in &results {
                println!(
                    "{} {:<24} {}",
                    if c.passed { "PASS" } else { "FAIL" },
                    c.name,
                    c.detail
                );
            }
            if fronts::verify::all_passed(&results) {
                Ok(())
            } else {
                Err(Failure {
                    code: 3,
                    message: format!(
                        "{} criterion(s) failed",
                        results.iter().filter(|c| !c.passed).count()
                    ),
                })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("afl: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
