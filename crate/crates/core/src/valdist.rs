//! Value distribution of a rational map restricted to a punctured sphere:
//! exceptional values, totally ramified values, the totally ramified value
//! number, and the degree/end-count bound it is measured against.
//!
//! The candidate set for special values is finite: a value that is neither
//! a critical value, nor the image of a puncture, nor infinity has a
//! simple preimage away from the punctures, so it can be neither omitted
//! nor totally ramified. This keeps the analysis exact rather than
//! sampled.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{roots, RationalMap, SpherePoint, EPS_MATCH};

/// Genus-0 domain: the sphere minus a finite set of punctures.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PuncturedSphere {
    punctures: Vec<SpherePoint>,
}

impl PuncturedSphere {
    /// Punctures must be pairwise separated in the chordal metric.
    pub fn new(punctures: Vec<SpherePoint>) -> Result<Self> {
        for (i, p) in punctures.iter().enumerate() {
            for q in &punctures[i + 1..] {
                if p.chordal(q) <= 2.0 * EPS_MATCH {
                    return Err(Error::InvalidInput(format!(
                        "punctures {p} and {q} are not separated"
                    )));
                }
            }
        }
        Ok(PuncturedSphere { punctures })
    }

    pub fn sphere() -> Self {
        PuncturedSphere {
            punctures: Vec::new(),
        }
    }

    pub fn punctures(&self) -> &[SpherePoint] {
        &self.punctures
    }

    /// k, the number of ends.
    pub fn end_count(&self) -> usize {
        self.punctures.len()
    }

    pub fn genus(&self) -> usize {
        0
    }

    pub fn contains_puncture(&self, p: &SpherePoint) -> bool {
        self.punctures.iter().any(|q| q.matches(p))
    }
}

/// Multiplicity tag of a special value: finite minimum multiplicity for a
/// totally ramified value, infinite for an omitted value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Multiplicity {
    Finite(u32),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RamifiedKind {
    Exceptional,
    TotallyRamified,
}

/// One special value of the restricted map.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamifiedValue {
    pub value: SpherePoint,
    pub m: Multiplicity,
    pub kind: RamifiedKind,
}

/// An exact rational carried next to its float mirror.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactRational {
    pub num: i64,
    pub den: i64,
    pub float: f64,
}

impl From<Ratio<i64>> for ExactRational {
    fn from(r: Ratio<i64>) -> Self {
        ExactRational {
            num: *r.numer(),
            den: *r.denom(),
            float: *r.numer() as f64 / *r.denom() as f64,
        }
    }
}

/// Full analysis of one map on one punctured sphere.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RamificationReport {
    /// Degree of the map on the closed sphere.
    pub d: usize,
    /// Number of punctures.
    pub k: usize,
    pub gamma: usize,
    pub values: Vec<RamifiedValue>,
    /// Totally ramified value number, exact.
    pub delta: ExactRational,
    /// Number of exceptional values.
    pub exceptional_count: usize,
    /// 1/R = (gamma - 1 + k/2)/d, exact.
    pub inv_r: ExactRational,
    /// 2 + 2/R, exact.
    pub bound: ExactRational,
    pub bound_holds: bool,
    pub sharp: bool,
    /// Total branching order on the sphere; equals 2d - 2.
    pub rh_total_branching: i64,
}

/// Images of all sphere points of local multiplicity >= 2, deduplicated.
pub fn critical_values(nu: &RationalMap) -> Result<Vec<SpherePoint>> {
    let pts = critical_points(nu)?;
    let mut vals: Vec<SpherePoint> = Vec::new();
    for (p, _m) in pts {
        let v = nu.eval(p);
        if !vals.iter().any(|w| w.matches(&v)) {
            vals.push(v);
        }
    }
    Ok(vals)
}

/// Critical points with local multiplicities (all >= 2).
pub fn critical_points(nu: &RationalMap) -> Result<Vec<(SpherePoint, usize)>> {
    if nu.is_constant() {
        return Err(Error::ConstantMap);
    }
    let mut pts: Vec<(SpherePoint, usize)> = Vec::new();
    let w = nu.wronskian();
    if !w.is_zero() && !w.is_constant() {
        for r in roots(&w)? {
            let p = SpherePoint::Finite(r.z);
            let v = nu.eval(p);
            let m = nu.mult_at(p, v)?;
            if m >= 2 && !pts.iter().any(|(q, _)| q.matches(&p)) {
                pts.push((p, m));
            }
        }
    }
    let v_inf = nu.eval(SpherePoint::Infinity);
    let m_inf = nu.mult_at(SpherePoint::Infinity, v_inf)?;
    if m_inf >= 2 {
        pts.push((SpherePoint::Infinity, m_inf));
    }
    Ok(pts)
}

/// Total branching order of the map on the sphere.
pub fn total_branching(nu: &RationalMap) -> Result<i64> {
    Ok(critical_points(nu)?
        .iter()
        .map(|(_, m)| *m as i64 - 1)
        .sum())
}

/// True iff the total branching order equals 2 deg - 2 (the genus-0
/// Riemann-Hurwitz count).
pub fn rh_check(nu: &RationalMap) -> Result<bool> {
    Ok(total_branching(nu)? == 2 * nu.degree() as i64 - 2)
}

/// Values whose whole sphere preimage lies in the punctures.
pub fn exceptional_values(nu: &RationalMap, dom: &PuncturedSphere) -> Result<Vec<SpherePoint>> {
    let mut out = Vec::new();
    for a in candidate_values(nu, dom)? {
        let pre = nu.preimages(a)?;
        let omitted = pre.iter().all(|(p, _)| dom.contains_puncture(p));
        if omitted {
            out.push(a);
        }
    }
    Ok(out)
}

/// Candidate special values: critical values, puncture images, infinity.
fn candidate_values(nu: &RationalMap, dom: &PuncturedSphere) -> Result<Vec<SpherePoint>> {
    let mut cands = critical_values(nu)?;
    for p in dom.punctures() {
        let v = nu.eval(*p);
        if !cands.iter().any(|w| w.matches(&v)) {
            cands.push(v);
        }
    }
    if !cands.iter().any(|w| w.is_infinity()) {
        cands.push(SpherePoint::Infinity);
    }
    Ok(cands)
}

/// Assembles the full report: special values, delta, the degree bound,
/// and the Riemann-Hurwitz cross-check.
pub fn ramification_report(
    nu: &RationalMap,
    dom: &PuncturedSphere,
) -> Result<RamificationReport> {
    if nu.is_constant() {
        return Err(Error::ConstantMap);
    }
    let d = nu.degree();
    let k = dom.end_count();

    let mut values: Vec<RamifiedValue> = Vec::new();
    for a in candidate_values(nu, dom)? {
        let pre = nu.preimages(a)?;
        let on_domain: Vec<(SpherePoint, i64)> = pre
            .iter()
            .filter(|(p, _)| !dom.contains_puncture(p))
            .cloned()
            .collect();
        if on_domain.is_empty() {
            values.push(RamifiedValue {
                value: a,
                m: Multiplicity::Infinite,
                kind: RamifiedKind::Exceptional,
            });
        } else {
            // totally ramified iff every preimage on the domain branches
            let mut min_mult = usize::MAX;
            let mut all_branched = true;
            for (p, _) in &on_domain {
                let m = nu.mult_at(*p, a)?;
                min_mult = min_mult.min(m);
                if m < 2 {
                    all_branched = false;
                    break;
                }
            }
            if all_branched {
                values.push(RamifiedValue {
                    value: a,
                    m: Multiplicity::Finite(min_mult as u32),
                    kind: RamifiedKind::TotallyRamified,
                });
            }
        }
    }

    let r0 = values
        .iter()
        .filter(|v| v.kind == RamifiedKind::Exceptional)
        .count();
    let mut delta = Ratio::<i64>::from_integer(r0 as i64);
    for v in &values {
        if let Multiplicity::Finite(m) = v.m {
            delta += Ratio::new(m as i64 - 1, m as i64);
        }
    }

    // 1/R = (gamma - 1 + k/2)/d with gamma = 0
    let inv_r = Ratio::new(2 * (0i64 - 1) + k as i64, 2 * d as i64);
    let bound = Ratio::from_integer(2) + Ratio::from_integer(2) * inv_r;

    let rh = total_branching(nu)?;

    Ok(RamificationReport {
        d,
        k,
        gamma: 0,
        delta: delta.into(),
        exceptional_count: r0,
        inv_r: inv_r.into(),
        bound: bound.into(),
        bound_holds: delta <= bound,
        sharp: delta == bound,
        rh_total_branching: rh,
        values,
    })
}

impl RamificationReport {
    pub fn delta_ratio(&self) -> Ratio<i64> {
        Ratio::new(self.delta.num, self.delta.den)
    }

    pub fn bound_ratio(&self) -> Ratio<i64> {
        Ratio::new(self.bound.num, self.bound.den)
    }
}
