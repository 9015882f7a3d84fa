//! Knot tables: ingestion, bulk evaluation, and audits of the invariants
//! against crossing-number bounds.
//!
//! The table format is UTF-8 text with one `name<TAB>PD[...]` record per
//! line. Blank lines and lines starting with `#` are ignored.

use std::collections::{BTreeMap, HashSet};
use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use crate::diagram::{parse_pd, Diagram, DiagramError};
use crate::exact::{int, ratio, Rational};
use crate::jones::{EngineError, InvariantPair, JonesEngine};

const BUNDLED: &str = include_str!("../data/prime_knots_le10.tsv");

#[derive(Debug, Error)]
pub enum TableError {
    #[error("line {line}: {message}")]
    Format { line: usize, message: String },
    #[error("line {line} ({name}): {source}")]
    Diagram { line: usize, name: String, source: DiagramError },
    #[error("line {line}: duplicate knot name {name}")]
    DuplicateName { line: usize, name: String },
    #[error("reading {path}: {source}")]
    Io { path: String, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq)]
pub struct KnotRecord {
    pub name: String,
    /// Tabulated minimal crossing number, read from the name prefix
    /// (`10_124` has 10) or, failing that, the diagram size.
    pub crossing_number: u32,
    pub diagram: Diagram,
    pub invariants: Option<InvariantPair>,
}

impl KnotRecord {
    pub fn new(name: impl Into<String>, diagram: Diagram) -> Self {
        let name = name.into();
        let crossing_number = crossing_number_from_name(&name).unwrap_or(diagram.crossing_count() as u32);
        Self { diagram: diagram.with_name(name.clone()), name, crossing_number, invariants: None }
    }

    /// A record with known invariants and no meaningful diagram, for
    /// audits over externally computed values.
    pub fn synthetic(name: impl Into<String>, crossing_number: u32, invariants: InvariantPair) -> Self {
        Self { name: name.into(), crossing_number, diagram: Diagram::unknot(), invariants: Some(invariants) }
    }
}

fn crossing_number_from_name(name: &str) -> Option<u32> {
    let (prefix, _) = name.split_once('_')?;
    prefix.parse().ok()
}

pub fn parse_table(text: &str) -> Result<Vec<KnotRecord>, TableError> {
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let Some((name, pd)) = trimmed.split_once('\t') else {
            return Err(TableError::Format { line, message: "expected name<TAB>PD[...]".into() });
        };
        let name = name.trim();
        if name.is_empty() {
            return Err(TableError::Format { line, message: "empty knot name".into() });
        }
        let diagram = parse_pd(pd).map_err(|source| TableError::Diagram { line, name: name.into(), source })?;
        if !seen.insert(name.to_owned()) {
            return Err(TableError::DuplicateName { line, name: name.into() });
        }
        records.push(KnotRecord::new(name, diagram));
    }
    Ok(records)
}

pub fn load_table(path: impl AsRef<Path>) -> Result<Vec<KnotRecord>, TableError> {
    let path = path.as_ref();
    let text =
        std::fs::read_to_string(path).map_err(|source| TableError::Io { path: path.display().to_string(), source })?;
    parse_table(&text)
}

/// The bundled table of the 249 prime knots with 3 to 10 crossings.
pub fn bundled_table() -> Vec<KnotRecord> {
    parse_table(BUNDLED).expect("bundled table is valid")
}

/// A record whose invariants could not be computed.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordFailure {
    pub name: String,
    pub error: EngineError,
}

/// Fills in the invariants of every record. Failures are collected and the
/// remaining records are still computed.
pub fn compute_all(records: &mut [KnotRecord], engine: &JonesEngine) -> Vec<RecordFailure> {
    records
        .par_iter_mut()
        .filter_map(|r| match engine.v2_v3(&r.diagram) {
            Ok(pair) => {
                r.invariants = Some(pair);
                None
            }
            Err(error) => {
                r.invariants = None;
                Some(RecordFailure { name: r.name.clone(), error })
            }
        })
        .collect()
}

/// `c(c-1)/4`, the general bound on `|v2|`.
pub fn v2_bound(c: u32) -> Rational {
    let c = i64::from(c);
    ratio(c * (c - 1), 4)
}

/// `c(c-1)(c-2)/4`, the general bound on `|v3|`.
pub fn v3_bound(c: u32) -> Rational {
    let c = i64::from(c);
    ratio(c * (c - 1) * (c - 2), 4)
}

/// `c^2/8`, the sharper one-sided bound on `v2`.
pub fn v2_upper_bound(c: u32) -> Rational {
    let c = i64::from(c);
    ratio(c * c, 8)
}

/// Reference maxima and bounds for one crossing number, as tabulated in the
/// literature (bounds given in decimal, here as exact halves).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReferenceRow {
    pub crossing_number: u32,
    pub max_abs_v2: i64,
    pub bound_v2_halves: i64,
    pub max_abs_v3: i64,
    pub bound_v3_halves: i64,
}

impl ReferenceRow {
    const fn new(c: u32, max_v2: i64, bound_v2_halves: i64, max_v3: i64, bound_v3_halves: i64) -> Self {
        Self { crossing_number: c, max_abs_v2: max_v2, bound_v2_halves, max_abs_v3: max_v3, bound_v3_halves }
    }

    pub fn bound_v2(&self) -> Rational {
        ratio(self.bound_v2_halves, 2)
    }

    pub fn bound_v3(&self) -> Rational {
        ratio(self.bound_v3_halves, 2)
    }
}

/// Maxima of `|v2|`, `|v3|` over prime knots with 3..=12 crossings and the
/// bound values printed beside them.
pub const REFERENCE_MAXIMA: [ReferenceRow; 10] = [
    ReferenceRow::new(3, 1, 3, 1, 3),
    ReferenceRow::new(4, 1, 4, 0, 12),
    ReferenceRow::new(5, 3, 10, 5, 30),
    ReferenceRow::new(6, 2, 15, 1, 60),
    ReferenceRow::new(7, 6, 23, 14, 115),
    ReferenceRow::new(8, 5, 28, 10, 168),
    ReferenceRow::new(9, 10, 36, 30, 252),
    ReferenceRow::new(10, 9, 45, 25, 360),
    ReferenceRow::new(11, 15, 55, 55, 495),
    ReferenceRow::new(12, 14, 66, 49, 660),
];

pub fn reference_row(c: u32) -> Option<&'static ReferenceRow> {
    REFERENCE_MAXIMA.iter().find(|r| r.crossing_number == c)
}

/// Which value of a maxima row disagrees with the reference table.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RowField {
    MaxAbsV2,
    BoundV2,
    MaxAbsV3,
    BoundV3,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MaximaRow {
    pub crossing_number: u32,
    pub max_abs_v2: i64,
    pub max_abs_v3: i64,
    pub bound_v2: Rational,
    pub bound_v3: Rational,
    pub reference: Option<ReferenceRow>,
}

impl MaximaRow {
    /// Fields that differ from the reference row. Empty when there is no
    /// reference for this crossing number.
    pub fn mismatches(&self) -> Vec<RowField> {
        let Some(r) = self.reference else { return Vec::new() };
        let mut out = Vec::new();
        if r.max_abs_v2 != self.max_abs_v2 {
            out.push(RowField::MaxAbsV2);
        }
        if r.bound_v2() != self.bound_v2 {
            out.push(RowField::BoundV2);
        }
        if r.max_abs_v3 != self.max_abs_v3 {
            out.push(RowField::MaxAbsV3);
        }
        if r.bound_v3() != self.bound_v3 {
            out.push(RowField::BoundV3);
        }
        out
    }
}

/// One row per crossing number present among records with invariants.
pub fn crossing_maxima(records: &[KnotRecord]) -> Vec<MaximaRow> {
    let mut by_c: BTreeMap<u32, (i64, i64)> = BTreeMap::new();
    for r in records {
        if let Some(p) = r.invariants {
            let e = by_c.entry(r.crossing_number).or_insert((0, 0));
            e.0 = e.0.max(p.v2.abs());
            e.1 = e.1.max(p.v3.abs());
        }
    }
    by_c.into_iter()
        .map(|(c, (m2, m3))| MaximaRow {
            crossing_number: c,
            max_abs_v2: m2,
            max_abs_v3: m3,
            bound_v2: v2_bound(c),
            bound_v3: v3_bound(c),
            reference: reference_row(c).copied(),
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundKind {
    /// `|v2| <= c(c-1)/4`
    AbsV2,
    /// `|v3| <= c(c-1)(c-2)/4`
    AbsV3,
    /// `v2 <= c^2/8`
    V2Upper,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BoundViolation {
    pub name: String,
    pub crossing_number: u32,
    pub bound: BoundKind,
    pub value: i64,
    pub limit: Rational,
}

/// Every violation of the three crossing-number bounds. Records without
/// invariants are skipped.
pub fn bound_audit(records: &[KnotRecord]) -> Vec<BoundViolation> {
    let mut out = Vec::new();
    for r in records {
        let Some(p) = r.invariants else { continue };
        let c = r.crossing_number;
        let checks = [
            (BoundKind::AbsV2, p.v2.abs(), v2_bound(c)),
            (BoundKind::AbsV3, p.v3.abs(), v3_bound(c)),
            (BoundKind::V2Upper, p.v2, v2_upper_bound(c)),
        ];
        for (bound, value, limit) in checks {
            if int(value) > limit {
                out.push(BoundViolation { name: r.name.clone(), crossing_number: c, bound, value, limit });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmphicheiralCandidate {
    pub name: String,
    pub crossing_number: u32,
    pub even_crossing_number: bool,
}

/// Records with `v3 = 0`, the necessary condition for amphicheirality.
pub fn amphicheiral_candidates(records: &[KnotRecord]) -> Vec<AmphicheiralCandidate> {
    records
        .iter()
        .filter(|r| r.invariants.is_some_and(|p| p.v3 == 0))
        .map(|r| AmphicheiralCandidate {
            name: r.name.clone(),
            crossing_number: r.crossing_number,
            even_crossing_number: r.crossing_number % 2 == 0,
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL_LINE: &str = "3_1\tPD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";
    const FIGURE_EIGHT_LINE: &str = "4_1\tPD[X(4,1,5,2),X(8,5,1,6),X(6,4,7,3),X(2,8,3,7)]";

    #[test]
    fn parses_single_record() {
        let recs = parse_table(TREFOIL_LINE).unwrap();
        assert_eq!(recs.len(), 1);
        assert_eq!(recs[0].name, "3_1");
        assert_eq!(recs[0].crossing_number, 3);
        assert_eq!(recs[0].diagram.crossing_count(), 3);
    }

    #[test]
    fn empty_and_comment_only() {
        assert!(parse_table("").unwrap().is_empty());
        assert!(parse_table("# nothing\n\n   \n").unwrap().is_empty());
    }

    #[test]
    fn malformed_lines_name_the_line() {
        let text = format!("# header\n{TREFOIL_LINE}\n4_1\tPD[X(1,2,3]\n");
        match parse_table(&text).unwrap_err() {
            TableError::Diagram { line, name, .. } => {
                assert_eq!(line, 3);
                assert_eq!(name, "4_1");
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_table("3_1 PD[]"), Err(TableError::Format { line: 1, .. })));
        let dup = format!("{TREFOIL_LINE}\n{TREFOIL_LINE}");
        assert!(matches!(parse_table(&dup), Err(TableError::DuplicateName { line: 2, .. })));
    }

    #[test]
    fn compute_and_amphicheiral() {
        let mut recs = parse_table(&format!("{TREFOIL_LINE}\n{FIGURE_EIGHT_LINE}")).unwrap();
        assert!(compute_all(&mut recs, &JonesEngine::default()).is_empty());
        assert_eq!(recs[0].invariants, Some(InvariantPair::new(1, 1)));
        assert_eq!(recs[1].invariants, Some(InvariantPair::new(-1, 0)));
        let names: Vec<_> = amphicheiral_candidates(&recs).into_iter().map(|c| c.name).collect();
        assert_eq!(names, ["4_1"]);
        assert!(amphicheiral_candidates(&recs[..1]).is_empty());
        assert!(compute_all(&mut [], &JonesEngine::default()).is_empty());
    }

    #[test]
    fn compute_continues_past_failures() {
        let mut recs = parse_table(&format!("{TREFOIL_LINE}\n{FIGURE_EIGHT_LINE}")).unwrap();
        let failures = compute_all(&mut recs, &JonesEngine::with_cap(3));
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].name, "4_1");
        assert!(recs[0].invariants.is_some());
        assert!(recs[1].invariants.is_none());
    }

    #[test]
    fn bounds() {
        assert_eq!(v2_bound(3), ratio(3, 2));
        assert_eq!(v3_bound(3), ratio(3, 2));
        assert_eq!(v2_bound(7), ratio(21, 2));
        assert_eq!(v3_bound(7), ratio(105, 2));
        assert_eq!(v2_bound(5), int(5));
        assert_eq!(v3_bound(5), int(15));
    }

    #[test]
    fn audit_catches_synthetic_violation() {
        let bad = KnotRecord::synthetic("fake", 3, InvariantPair::new(2, 0));
        let ok = KnotRecord::synthetic("fine", 4, InvariantPair::new(1, 0));
        let v = bound_audit(&[bad, ok]);
        assert_eq!(v.len(), 2);
        assert!(v.iter().all(|x| x.name == "fake"));
        assert!(v.iter().any(|x| x.bound == BoundKind::V2Upper && x.limit == ratio(9, 8)));
    }

    #[test]
    fn reference_mismatches_flagged() {
        let rows: Vec<_> = [(5, 3, 5), (7, 6, 14), (4, 1, 0)]
            .into_iter()
            .map(|(c, a, b)| KnotRecord::synthetic(format!("{c}_x"), c, InvariantPair::new(a, b)))
            .collect();
        let maxima = crossing_maxima(&rows);
        let get = |c| maxima.iter().find(|r| r.crossing_number == c).unwrap();
        assert!(get(5).mismatches().is_empty());
        assert_eq!(get(7).mismatches(), [RowField::BoundV2, RowField::BoundV3]);
        assert_eq!(get(4).mismatches(), [RowField::BoundV2]);
    }
}
