//! JSON file formats for monoids and coarse spaces.

use serde::{Deserialize, Serialize};

use crate::coarse::CoarseSpace;
use crate::config::Caps;
use crate::monoid::FiniteInverseMonoid;
use crate::partial::PointSet;
use crate::symmetric::symmetric_inverse_monoid;
use crate::{Error, Result};

/// `{"elements": [...], "table": [[...]], "zero": i, "one": j}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonoidTableFile {
    pub elements: Vec<String>,
    pub table: Vec<Vec<usize>>,
    pub zero: usize,
    pub one: usize,
}

/// `{"points": n}`, standing for `I(X)` on `n` points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymmetricFile {
    pub points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
#[serde(untagged)]
pub enum MonoidFile {
    Table(MonoidTableFile),
    Symmetric(SymmetricFile),
}

impl From<&FiniteInverseMonoid> for MonoidTableFile {
    fn from(m: &FiniteInverseMonoid) -> Self {
        MonoidTableFile {
            elements: m.names().to_vec(),
            table: m.table_rows(),
            zero: m.zero(),
            one: m.one(),
        }
    }
}

pub fn parse_monoid(json: &str, caps: &Caps) -> Result<FiniteInverseMonoid> {
    let file: MonoidFile =
        serde_json::from_str(json).map_err(|e| Error::Input(format!("not a monoid file: {e}")))?;
    match file {
        MonoidFile::Table(t) => {
            caps.check("monoid", t.elements.len(), caps.elements)?;
            FiniteInverseMonoid::from_table(t.elements, t.table, t.zero, t.one)
        }
        MonoidFile::Symmetric(s) => {
            let points = PointSet::new(s.points)?;
            let m = symmetric_inverse_monoid(points, caps)?.into_monoid();
            caps.check("monoid", m.len(), caps.elements)?;
            Ok(m)
        }
    }
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn monoid_to_json(m: &FiniteInverseMonoid) -> String {
    let mut s = serde_json::to_string_pretty(&MonoidTableFile::from(m)).expect("serializable");
    s.push('\n');
    s
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum SpaceFile {
    Edges {
        points: usize,
        edges: Vec<[usize; 2]>,
    },
    Metric {
        points: usize,
        dist: Vec<Vec<f64>>,
        radius: f64,
    },
}

/// `{"points": n, "edges": [[i, j], ...]}` or `{"points": n, "dist": [[...]], "radius": r}`.
pub fn parse_coarse_space(json: &str) -> Result<CoarseSpace> {
    let file: SpaceFile = serde_json::from_str(json)
        .map_err(|e| Error::Input(format!("not a coarse-space file: {e}")))?;
    match file {
        SpaceFile::Edges { points, edges } => {
            let edges: Vec<(usize, usize)> = edges.into_iter().map(|[a, b]| (a, b)).collect();
            CoarseSpace::new(PointSet::new(points)?, &edges)
        }
        SpaceFile::Metric {
            points,
            dist,
            radius,
        } => CoarseSpace::from_metric(PointSet::new(points)?, &dist, radius),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_monoid_forms() {
        let caps = Caps::default();
        assert_eq!(parse_monoid(r#"{"points": 2}"#, &caps).unwrap().len(), 7);
        let m = parse_monoid(
            r#"{"elements": ["0", "1"], "table": [[0, 0], [0, 1]], "zero": 0, "one": 1}"#,
            &caps,
        )
        .unwrap();
        assert_eq!(m.len(), 2);
        assert!(matches!(parse_monoid("{", &caps), Err(Error::Input(_))));
        assert!(matches!(
            parse_monoid(r#"{"points": 2, "extra": 1}"#, &caps),
            Err(Error::Input(_))
        ));
        assert!(matches!(
            parse_monoid(r#"{"points": 9}"#, &caps),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn serialization_round_trips() {
        let caps = Caps::default();
        let m = parse_monoid(r#"{"points": 2}"#, &caps).unwrap();
        let json = monoid_to_json(&m);
        let again = parse_monoid(&json, &caps).unwrap();
        assert_eq!(monoid_to_json(&again), json);
    }

    #[test]
    fn parses_spaces() {
        let c = parse_coarse_space(r#"{"points": 3, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(c.closure_entourage().len(), 5);
        let c =
            parse_coarse_space(r#"{"points": 2, "dist": [[0, 2], [2, 0]], "radius": 1}"#).unwrap();
        assert_eq!(c.closure_entourage().len(), 2);
        assert!(parse_coarse_space(r#"{"points": 2}"#).is_err());
    }
}
