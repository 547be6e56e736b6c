//! Campaign reports and the mergeable tally behind them.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::lattice::io::SetFile;
use crate::lattice::LatticeSet;
use crate::margin::{is_near_equality, is_violation};

pub const REPORT_VERSION: &str = "sumsetlab/1";

/// Near-equality witnesses kept per report (lowest instance indices).
pub const NEAR_EQUALITY_CAP: usize = 32;

/// Violation witnesses kept per report (smallest margins).
pub const VIOLATION_EXAMPLES: usize = 8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub index: u64,
    pub margin: f64,
    pub sets: Vec<SetFile>,
}

impl Witness {
    pub fn new(index: u64, margin: f64, sets: &[LatticeSet]) -> Self {
        Witness { index, margin, sets: sets.iter().map(SetFile::from).collect() }
    }

    /// The witness sets as lattice sets.
    pub fn lattice_sets(&self) -> crate::Result<Vec<LatticeSet>> {
        self.sets.iter().cloned().map(LatticeSet::try_from).collect()
    }
}

/// Total order on (margin, index): smaller margin first, then lower index.
fn by_margin(a: &Witness, b: &Witness) -> Ordering {
    a.margin.total_cmp(&b.margin).then(a.index.cmp(&b.index))
}

fn lower_key(margin: f64, index: u64, than: &Witness) -> bool {
    margin.total_cmp(&than.margin).then(index.cmp(&than.index)) == Ordering::Less
}

/// An auxiliary inequality checked alongside the main statement.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SideCheck {
    pub name: String,
    /// Failures of an enforced check make the campaign fail; other checks
    /// are informational.
    pub enforced: bool,
    pub checked: u64,
    pub failures: u64,
    pub min_margin: Option<f64>,
    pub argmin: Option<Witness>,
}

impl SideCheck {
    fn new(name: &str, enforced: bool) -> Self {
        SideCheck {
            name: name.to_string(),
            enforced,
            checked: 0,
            failures: 0,
            min_margin: None,
            argmin: None,
        }
    }

    fn merge(&mut self, other: SideCheck) {
        self.checked += other.checked;
        self.failures += other.failures;
        self.enforced |= other.enforced;
        if let Some(w) = other.argmin {
            if self.argmin.as_ref().is_none_or(|cur| by_margin(&w, cur) == Ordering::Less) {
                self.min_margin = Some(w.margin);
                self.argmin = Some(w);
            }
        }
    }
}

/// Running totals of a campaign. Merging is associative and commutative,
/// so chunks can be processed in any order.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Tally {
    pub instances: u64,
    pub violations: u64,
    pub argmin: Option<Witness>,
    pub near_equality_count: u64,
    pub near_equalities: Vec<Witness>,
    pub violation_examples: Vec<Witness>,
    pub side_checks: BTreeMap<String, SideCheck>,
}

impl Tally {
    /// Records one instance; `sets` is only called when a witness is kept.
    pub fn record(&mut self, index: u64, margin: f64, sets: impl Fn() -> Vec<LatticeSet>) {
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        self.instances += 1;
        if self.argmin.as_ref().is_none_or(|w| lower_key(margin, index, w)) {
            self.argmin = Some(Witness::new(index, margin, &sets()));
        }
        if is_near_equality(margin) {
            self.near_equality_count += 1;
            if self.near_equalities.len() < NEAR_EQUALITY_CAP
                || self.near_equalities.iter().any(|w| w.index > index)
            {
                self.near_equalities.push(Witness::new(index, margin, &sets()));
                self.near_equalities.sort_by_key(|w| w.index);
                self.near_equalities.truncate(NEAR_EQUALITY_CAP);
            }
        }
        if is_violation(margin) {
            self.violations += 1;
            let full = self.violation_examples.len() >= VIOLATION_EXAMPLES;
            if !full || self.violation_examples.iter().any(|w| lower_key(margin, index, w)) {
                self.violation_examples.push(Witness::new(index, margin, &sets()));
                self.violation_examples.sort_by(by_margin);
                self.violation_examples.truncate(VIOLATION_EXAMPLES);
            }
        }
    }

    /// Records an auxiliary check; a margin below tolerance counts as a failure.
    pub fn record_side(
        &mut self,
        name: &str,
        enforced: bool,
        index: u64,
        margin: f64,
        sets: impl Fn() -> Vec<LatticeSet>,
    ) {
        let margin = if margin.is_nan() { f64::NEG_INFINITY } else { margin };
        let side = self
            .side_checks
            .entry(name.to_string())
            .or_insert_with(|| SideCheck::new(name, enforced));
        side.checked += 1;
        if is_violation(margin) {
            side.failures += 1;
        }
        if side.argmin.as_ref().is_none_or(|w| lower_key(margin, index, w)) {
            side.min_margin = Some(margin);
            side.argmin = Some(Witness::new(index, margin, &sets()));
        }
    }

    pub fn merge(mut self, other: Tally) -> Tally {
        self.instances += other.instances;
        self.violations += other.violations;
        self.near_equality_count += other.near_equality_count;
        if let Some(w) = other.argmin {
            if self.argmin.as_ref().is_none_or(|cur| by_margin(&w, cur) == Ordering::Less) {
                self.argmin = Some(w);
            }
        }
        self.near_equalities.extend(other.near_equalities);
        self.near_equalities.sort_by_key(|w| w.index);
        self.near_equalities.truncate(NEAR_EQUALITY_CAP);
        self.violation_examples.extend(other.violation_examples);
        self.violation_examples.sort_by(by_margin);
        self.violation_examples.truncate(VIOLATION_EXAMPLES);
        for (name, side) in other.side_checks {
            match self.side_checks.get_mut(&name) {
                Some(cur) => cur.merge(side),
                None => {
                    self.side_checks.insert(name, side);
                }
            }
        }
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CampaignReport {
    pub version: String,
    pub statement: String,
    pub params: BTreeMap<String, f64>,
    pub mode: String,
    pub seed: Option<u64>,
    pub instances: u64,
    pub violations: u64,
    pub min_log_margin: Option<f64>,
    pub argmin: Option<Witness>,
    pub near_equality_count: u64,
    pub near_equalities: Vec<Witness>,
    pub violation_examples: Vec<Witness>,
    pub side_checks: Vec<SideCheck>,
    pub note: Option<String>,
    pub wall_time_ms: u64,
}

impl CampaignReport {
    pub fn from_tally(
        statement: &str,
        params: BTreeMap<String, f64>,
        mode: &str,
        seed: Option<u64>,
        note: Option<String>,
        tally: Tally,
        wall_time_ms: u64,
    ) -> Self {
        CampaignReport {
            version: REPORT_VERSION.to_string(),
            statement: statement.to_string(),
            params,
            mode: mode.to_string(),
            seed,
            instances: tally.instances,
            violations: tally.violations,
            min_log_margin: tally.argmin.as_ref().map(|w| w.margin),
            argmin: tally.argmin,
            near_equality_count: tally.near_equality_count,
            near_equalities: tally.near_equalities,
            violation_examples: tally.violation_examples,
            side_checks: tally.side_checks.into_values().collect(),
            note,
            wall_time_ms,
        }
    }

    /// No violations of the statement and no failed enforced side check.
    pub fn pass(&self) -> bool {
        self.violations == 0 && self.side_checks.iter().all(|s| !s.enforced || s.failures == 0)
    }

    pub fn side_check(&self, name: &str) -> Option<&SideCheck> {
        self.side_checks.iter().find(|s| s.name == name)
    }

    /// Copy with the wall time zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        CampaignReport { wall_time_ms: 0, ..self.clone() }
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn singleton(i: u64) -> Vec<LatticeSet> {
        vec![LatticeSet::from_ints([i as i64])]
    }

    fn tally_of(items: &[(u64, f64)]) -> Tally {
        let mut t = Tally::default();
        for &(i, m) in items {
            t.record(i, m, || singleton(i));
            t.record_side("side", true, i, -m, || singleton(i));
        }
        t
    }

    #[test]
    fn record_classifies() {
        let t = tally_of(&[(0, 1.0), (1, 0.0), (2, -0.5), (3, 5e-7)]);
        assert_eq!(t.instances, 4);
        assert_eq!(t.violations, 1);
        assert_eq!(t.near_equality_count, 2);
        assert_eq!(t.argmin.as_ref().unwrap().index, 2);
        assert_eq!(t.violation_examples.len(), 1);
        let side = &t.side_checks["side"];
        assert_eq!(side.failures, 2);
        assert_eq!(side.argmin.as_ref().unwrap().index, 0);
    }

    proptest! {
        #[test]
        fn merge_is_order_independent(
            margins in proptest::collection::vec(-2.0f64..2.0, 1..120),
            cut in 0usize..120,
            cut2 in 0usize..120,
        ) {
            let items: Vec<(u64, f64)> = margins
                .iter()
                .enumerate()
                .map(|(i, &m)| (i as u64, if i % 7 == 0 { 0.0 } else { m }))
                .collect();
            let whole = tally_of(&items);
            let a = cut.min(items.len());
            let b = cut2.min(items.len()).max(a);
            let (x, y, z) = (tally_of(&items[..a]), tally_of(&items[a..b]), tally_of(&items[b..]));
            prop_assert_eq!(&x.clone().merge(y.clone()).merge(z.clone()), &whole);
            prop_assert_eq!(&z.merge(y).merge(x), &whole);
        }
    }

    #[test]
    fn report_round_trips_through_json() {
        let t = tally_of(&[(0, 0.25), (1, 0.0), (2, -0.125)]);
        let mut params = BTreeMap::new();
        params.insert("p".to_string(), 0.7324867603589635);
        let r = CampaignReport::from_tally("two-sets", params, "random", Some(7), None, t, 3);
        let json = serde_json::to_string(&r).unwrap();
        let back: CampaignReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
        assert!(!r.pass());
        assert_eq!(r.min_log_margin, Some(-0.125));
    }
}
