//! Divisors: finite formal sums of sphere points with integer weights.

use serde::{Deserialize, Serialize};

use super::sphere::SpherePoint;

/// A finite list of (point, multiplicity) entries. Entries within the
/// clustering tolerance are merged with summed multiplicity, and zero
/// entries are dropped.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Divisor {
    entries: Vec<(SpherePoint, i64)>,
}

impl Divisor {
    pub fn new() -> Self {
        Divisor::default()
    }

    pub fn from_entries(entries: Vec<(SpherePoint, i64)>) -> Self {
        let mut d = Divisor::new();
        for (p, m) in entries {
            d.add(p, m);
        }
        d
    }

    /// Adds `mult` at `point`, merging with an existing nearby entry.
    pub fn add(&mut self, point: SpherePoint, mult: i64) {
        if mult == 0 {
            return;
        }
        for e in &mut self.entries {
            if e.0.matches(&point) {
                e.1 += mult;
                self.entries.retain(|e| e.1 != 0);
                return;
            }
        }
        self.entries.push((point, mult));
    }

    pub fn entries(&self) -> &[(SpherePoint, i64)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Sum of multiplicities (the degree of the divisor).
    pub fn total(&self) -> i64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    /// Multiplicity at a point, 0 when absent.
    pub fn mult_at(&self, point: &SpherePoint) -> i64 {
        self.entries
            .iter()
            .find(|e| e.0.matches(point))
            .map(|e| e.1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(SpherePoint, i64)> {
        self.entries.iter()
    }
}
