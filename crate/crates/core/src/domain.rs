//! Core value types shared by every other module: station identity,
//! functional classes and their routing to model groups, and single-day
//! hourly counts.

use std::collections::BTreeMap;
use std::fmt;

use chrono::{Datelike, NaiveDate};
use thiserror::Error;

/// Hours in one calendar day of count data.
pub const HOURS_PER_DAY: usize = 24;

/// Identity of a count station: county number plus station number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StationKey {
    pub county: u32,
    pub station: u32,
}

impl StationKey {
    pub fn new(county: u32, station: u32) -> Self {
        Self { county, station }
    }
}

impl fmt::Display for StationKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}", self.county, self.station)
    }
}

/// Roadway functional classification code (e.g. 2, 4, 12).
///
/// Codes are not restricted to a fixed set here; whether a code is usable is
/// decided by the [`GroupMapping`] and the expansion-factor table, both of
/// which fail loudly on codes they do not know.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FunctionalClass(pub u16);

impl fmt::Display for FunctionalClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The three prediction model groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelGroup {
    Interstate,
    Arterial,
    Collector,
}

impl ModelGroup {
    pub const ALL: [ModelGroup; 3] = [
        ModelGroup::Interstate,
        ModelGroup::Arterial,
        ModelGroup::Collector,
    ];

    /// Stable index 0..3, in the fixed Interstate, Arterial, Collector order.
    pub fn index(self) -> usize {
        match self {
            ModelGroup::Interstate => 0,
            ModelGroup::Arterial => 1,
            ModelGroup::Collector => 2,
        }
    }

    pub fn parse(s: &str) -> Option<ModelGroup> {
        match s.trim().to_ascii_lowercase().as_str() {
            "interstate" => Some(ModelGroup::Interstate),
            "arterial" => Some(ModelGroup::Arterial),
            "collector" => Some(ModelGroup::Collector),
            _ => None,
        }
    }
}

impl fmt::Display for ModelGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ModelGroup::Interstate => "Interstate",
            ModelGroup::Arterial => "Arterial",
            ModelGroup::Collector => "Collector",
        };
        f.write_str(s)
    }
}

/// One value per model group, in the fixed group order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PerGroup<T> {
    values: [T; 3],
}

impl<T> PerGroup<T> {
    pub fn new(interstate: T, arterial: T, collector: T) -> Self {
        Self {
            values: [interstate, arterial, collector],
        }
    }

    pub fn from_fn(mut f: impl FnMut(ModelGroup) -> T) -> Self {
        Self {
            values: [
                f(ModelGroup::Interstate),
                f(ModelGroup::Arterial),
                f(ModelGroup::Collector),
            ],
        }
    }

    pub fn get(&self, group: ModelGroup) -> &T {
        &self.values[group.index()]
    }

    pub fn get_mut(&mut self, group: ModelGroup) -> &mut T {
        &mut self.values[group.index()]
    }

    pub fn iter(&self) -> impl Iterator<Item = (ModelGroup, &T)> {
        ModelGroup::ALL.iter().map(move |&g| (g, self.get(g)))
    }

    pub fn map<U>(&self, mut f: impl FnMut(ModelGroup, &T) -> U) -> PerGroup<U> {
        PerGroup::from_fn(|g| f(g, self.get(g)))
    }
}

/// Total map from functional-class code to the model group that predicts it.
///
/// Lookups of unmapped classes are an error, never a silent default: the
/// assignment of most codes is agency policy and guessing it would silently
/// route counts to the wrong model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupMapping {
    entries: BTreeMap<u16, ModelGroup>,
}

impl GroupMapping {
    pub fn new(entries: BTreeMap<u16, ModelGroup>) -> Self {
        Self { entries }
    }

    pub fn insert(&mut self, class: FunctionalClass, group: ModelGroup) {
        self.entries.insert(class.0, group);
    }

    pub fn contains(&self, class: FunctionalClass) -> bool {
        self.entries.contains_key(&class.0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (FunctionalClass, ModelGroup)> + '_ {
        self.entries.iter().map(|(&c, &g)| (FunctionalClass(c), g))
    }
}

impl Default for GroupMapping {
    /// The three assignments that can be read off public agency data:
    /// 12 is interstate, 2 arterial, 4 collector. Everything else must be
    /// supplied explicitly via a mapping file.
    fn default() -> Self {
        let mut entries = BTreeMap::new();
        entries.insert(12, ModelGroup::Interstate);
        entries.insert(2, ModelGroup::Arterial);
        entries.insert(4, ModelGroup::Collector);
        Self { entries }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("functional class {0} has no model-group mapping; add it to the mapping file")]
    UnmappedClass(FunctionalClass),
}

/// Route a functional class to its prediction model group.
pub fn map_class_to_group(
    fc: FunctionalClass,
    mapping: &GroupMapping,
) -> Result<ModelGroup, DomainError> {
    mapping
        .entries
        .get(&fc.0)
        .copied()
        .ok_or(DomainError::UnmappedClass(fc))
}

/// One calendar day of 24 hourly volumes at one station.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DailyCount {
    pub date: NaiveDate,
    /// Vehicles per hour, index 0 = Hour1 (midnight to 1am).
    pub volumes: [u32; HOURS_PER_DAY],
}

/// Day of week as 0..=6 with 0 = Monday.
pub fn day_of_week(date: NaiveDate) -> u8 {
    date.weekday().num_days_from_monday() as u8
}

/// Sum of the 24 hourly volumes of one day.
pub fn total_volume(day: &DailyCount) -> u64 {
    day.volumes.iter().map(|&v| u64::from(v)).sum()
}

/// One row of the short-term count input: where, when, what class, how to
/// project it to the current year, and the 24 hourly volumes.
///
/// Volumes are integers on input but held as reals: growth projection
/// multiplies them by an arbitrary positive factor.
#[derive(Debug, Clone, PartialEq)]
pub struct ShortTermRecord {
    pub key: StationKey,
    pub date: NaiveDate,
    pub fclass: FunctionalClass,
    /// Dimensionless multiplier projecting a historic count to the current
    /// year; 1 for up-to-date counts. Always > 0.
    pub growth_factor: f64,
    pub volumes: [f64; HOURS_PER_DAY],
}

impl ShortTermRecord {
    /// Sum of the record's 24 hourly volumes.
    pub fn total_volume(&self) -> f64 {
        self.volumes.iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn date(y: i32, m: u32, d: u32) -> NaiveDate {
        NaiveDate::from_ymd_opt(y, m, d).unwrap()
    }

    #[test]
    fn default_mapping_routes_known_classes() {
        let mapping = GroupMapping::default();
        assert_eq!(
            map_class_to_group(FunctionalClass(12), &mapping),
            Ok(ModelGroup::Interstate)
        );
        assert_eq!(
            map_class_to_group(FunctionalClass(2), &mapping),
            Ok(ModelGroup::Arterial)
        );
        assert_eq!(
            map_class_to_group(FunctionalClass(4), &mapping),
            Ok(ModelGroup::Collector)
        );
    }

    #[test]
    fn unmapped_class_is_an_error() {
        let mapping = GroupMapping::default();
        assert_eq!(
            map_class_to_group(FunctionalClass(99), &mapping),
            Err(DomainError::UnmappedClass(FunctionalClass(99)))
        );
    }

    #[test]
    fn map_class_to_group_is_deterministic() {
        let mapping = GroupMapping::default();
        let a = map_class_to_group(FunctionalClass(4), &mapping);
        let b = map_class_to_group(FunctionalClass(4), &mapping);
        assert_eq!(a, b);
    }

    #[test]
    fn day_of_week_known_dates() {
        // Verified against the Sakamoto oracle in the acceptance suite.
        assert_eq!(day_of_week(date(2016, 10, 19)), 2); // Wednesday
        assert_eq!(day_of_week(date(2017, 11, 7)), 1); // Tuesday
        assert_eq!(day_of_week(date(2000, 1, 1)), 5); // Saturday
    }

    #[test]
    fn total_volume_examples() {
        let mut day = DailyCount {
            date: date(2016, 10, 19),
            volumes: [0; HOURS_PER_DAY],
        };
        assert_eq!(total_volume(&day), 0);

        day.volumes = [100; HOURS_PER_DAY];
        assert_eq!(total_volume(&day), 2400);

        for (i, v) in day.volumes.iter_mut().enumerate() {
            *v = i as u32 + 1;
        }
        assert_eq!(total_volume(&day), 300);
    }

    #[test]
    fn per_group_round_trip() {
        let pg = PerGroup::new(1, 2, 3);
        assert_eq!(*pg.get(ModelGroup::Interstate), 1);
        assert_eq!(*pg.get(ModelGroup::Arterial), 2);
        assert_eq!(*pg.get(ModelGroup::Collector), 3);
        let doubled = pg.map(|_, v| v * 2);
        assert_eq!(*doubled.get(ModelGroup::Collector), 6);
    }
}
