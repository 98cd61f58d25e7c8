//! On-disk document formats.
//!
//! Configuration documents are JSON:
//!
//! ```json
//! { "points": [1, 2, 3, 4],
//!   "dividons": [ { "divider": [1, 2], "divs": [[3], [4]] }, ... ] }
//! ```
//!
//! The unit form replaces `dividons` with
//! `"unit_dividons": [ { "divider": [a, b], "tbd": [c, d], "same_div": 0 } ]`.
//!
//! Point files are either rows of `label,x,y` or
//! `{ "points": [ { "label": 1, "x": 0, "y": 0 }, ... ] }`.

use serde::{Deserialize, Serialize};

use crate::dps::DivPointSet;
use crate::error::Error;
use crate::unit::UnitDivPointSet;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDividon {
    pub divider: Vec<u32>,
    pub divs: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawDivPointSet {
    pub points: Vec<u32>,
    pub dividons: Vec<RawDividon>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawUnitDividon {
    pub divider: Vec<u32>,
    pub tbd: Vec<u32>,
    pub same_div: u8,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawUnitDivPointSet {
    pub points: Vec<u32>,
    pub unit_dividons: Vec<RawUnitDividon>,
}

/// Either configuration form, as found in a file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RawConfiguration {
    Dps(RawDivPointSet),
    Unit(RawUnitDivPointSet),
}

/// A validated configuration in either form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Configuration {
    Dps(DivPointSet),
    Unit(UnitDivPointSet),
}

impl Configuration {
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let raw: RawConfiguration = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        match raw {
            RawConfiguration::Dps(r) => DivPointSet::validate(&r).map(Configuration::Dps),
            RawConfiguration::Unit(r) => UnitDivPointSet::validate(&r).map(Configuration::Unit),
        }
    }

    /// The configuration as a div point set, converting unit form back.
    pub fn into_dps(self) -> Result<DivPointSet, Error> {
        match self {
            Configuration::Dps(x) => Ok(x),
            Configuration::Unit(u) => crate::unit::from_unit(&u),
        }
    }
}

pub fn dps_to_json(x: &DivPointSet) -> String {
    serde_json::to_string_pretty(&x.to_raw()).expect("serializable")
}

pub fn unit_to_json(x: &UnitDivPointSet) -> String {
    serde_json::to_string_pretty(&x.to_raw()).expect("serializable")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPoint {
    pub label: u32,
    pub x: i64,
    pub y: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPointFile {
    pub points: Vec<RawPoint>,
}

/// Parses a point file, JSON or `label,x,y` rows. Blank lines and lines
/// starting with `#` are skipped in the row form.
pub fn parse_points(text: &str) -> Result<Vec<RawPoint>, Error> {
    let trimmed = text.trim_start();
    if trimmed.starts_with('{') {
        let f: RawPointFile = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
        return Ok(f.points);
    }
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let bad = || Error::Format(format!("line {}: expected label,x,y", i + 1));
        if fields.len() != 3 {
            return Err(bad());
        }
        out.push(RawPoint {
            label: fields[0].parse().map_err(|_| bad())?,
            x: fields[1].parse().map_err(|_| bad())?,
            y: fields[2].parse().map_err(|_| bad())?,
        });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{named_config, ConfigName};
    use crate::unit::to_unit;

    #[test]
    fn dps_document_round_trip() {
        let x = named_config(ConfigName::Conc52);
        let text = dps_to_json(&x);
        assert!(text.contains("\"dividons\""));
        assert_eq!(Configuration::from_json(&text).unwrap(), Configuration::Dps(x));
    }

    #[test]
    fn unit_document_round_trip() {
        let u = to_unit(&named_config(ConfigName::Conv5)).unwrap();
        let text = unit_to_json(&u);
        assert!(text.contains("\"same_div\""));
        let back = Configuration::from_json(&text).unwrap();
        assert_eq!(back, Configuration::Unit(u));
        assert_eq!(back.into_dps().unwrap(), named_config(ConfigName::Conv5));
    }

    #[test]
    fn canonical_output_is_sorted() {
        let raw = named_config(ConfigName::Conv4).to_raw();
        assert_eq!(raw.points, vec![1, 2, 3, 4]);
        assert_eq!(raw.dividons[0].divider, vec![1, 2]);
        assert_eq!(raw.dividons[0].divs, vec![vec![3, 4], vec![]]);
        assert_eq!(raw.dividons[1].divs, vec![vec![2], vec![4]]);
    }

    #[test]
    fn point_rows_and_json() {
        let rows = parse_points("# square\n1,0,0\n2, 1, 0\n\n3,1,1\n4,0,1\n").unwrap();
        assert_eq!(rows.len(), 4);
        assert_eq!(rows[1], RawPoint { label: 2, x: 1, y: 0 });
        let json = parse_points(r#"{"points":[{"label":7,"x":-3,"y":5}]}"#).unwrap();
        assert_eq!(json, vec![RawPoint { label: 7, x: -3, y: 5 }]);
        assert!(parse_points("1,2\n").is_err());
    }

    #[test]
    fn malformed_document() {
        assert!(matches!(Configuration::from_json("{\"points\": 3}"), Err(Error::Format(_))));
    }
}
