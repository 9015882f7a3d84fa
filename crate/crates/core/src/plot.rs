//! CSV tables and SVG scatter plots of `(v2, v3)`.
//!
//! SVG is written by hand: circles for knots, polylines for curves, with
//! every number printed to 6 significant digits so output is byte-stable.

use std::fmt::Write as _;
use std::io;

use thiserror::Error;

use crate::jones::InvariantPair;
use crate::table::KnotRecord;
use crate::torus::{torus_curve_samples, torus_knots_with, torus_v2v3, CurveMode, TorusError};

#[derive(Debug, Error)]
pub enum PlotError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("expected header name,crossings,v2,v3, found {found}")]
    Header { found: String },
    #[error("row {row}: bad {field} value {value:?}")]
    Field { row: usize, field: &'static str, value: String },
    #[error("point {label} at ({v2}, {v3}) lies outside the explicit axis range")]
    RangeExcludesPoint { label: String, v2: f64, v3: f64 },
    #[error("axis range [{min}, {max}] is empty")]
    EmptyRange { min: f64, max: f64 },
    #[error(transparent)]
    Torus(#[from] TorusError),
}

pub const CSV_HEADER: [&str; 4] = ["name", "crossings", "v2", "v3"];

/// One parsed CSV row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvRow {
    pub name: String,
    pub crossings: u32,
    pub invariants: InvariantPair,
}

/// Writes `name,crossings,v2,v3` rows in input order with LF endings.
/// Records without invariants are skipped and reported on `diagnostics`.
/// Returns the number of rows written.
pub fn emit_csv<W: io::Write>(
    records: &[KnotRecord],
    out: W,
    diagnostics: &mut dyn io::Write,
) -> Result<usize, PlotError> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(out);
    w.write_record(CSV_HEADER)?;
    let mut rows = 0;
    for r in records {
        let Some(v) = r.invariants else {
            writeln!(diagnostics, "warning: skipping {}: no invariants", r.name)?;
            continue;
        };
        w.write_record([r.name.clone(), r.crossing_number.to_string(), v.v2.to_string(), v.v3.to_string()])?;
        rows += 1;
    }
    w.flush()?;
    Ok(rows)
}

pub fn csv_string(records: &[KnotRecord]) -> Result<String, PlotError> {
    let mut buf = Vec::new();
    emit_csv(records, &mut buf, &mut io::stderr())?;
    Ok(String::from_utf8(buf).expect("csv output is UTF-8"))
}

pub fn read_csv<R: io::Read>(input: R) -> Result<Vec<CsvRow>, PlotError> {
    let mut r = csv::ReaderBuilder::new().has_headers(true).from_reader(input);
    let header = r.headers()?.clone();
    if header.iter().ne(CSV_HEADER) {
        return Err(PlotError::Header { found: header.iter().collect::<Vec<_>>().join(",") });
    }
    let mut out = Vec::new();
    for (i, rec) in r.records().enumerate() {
        let rec = rec?;
        let row = i + 1;
        let field = |k: usize, name: &'static str| {
            let s = rec.get(k).unwrap_or_default();
            s.parse::<i64>().map_err(|_| PlotError::Field { row, field: name, value: s.to_owned() })
        };
        let crossings = u32::try_from(field(1, "crossings")?).map_err(|_| PlotError::Field {
            row,
            field: "crossings",
            value: rec[1].to_owned(),
        })?;
        out.push(CsvRow {
            name: rec[0].to_owned(),
            crossings,
            invariants: InvariantPair::new(field(2, "v2")?, field(3, "v3")?),
        });
    }
    Ok(out)
}

/// `x` to 6 significant digits without trailing zeros.
pub fn sig6(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return if x.is_finite() { "0".into() } else { x.to_string() };
    }
    let sci = format!("{x:.5e}");
    let exp: i32 = sci.rsplit_once('e').and_then(|(_, e)| e.parse().ok()).unwrap_or(0);
    let decimals = (5 - exp).max(0) as usize;
    let mut s = format!("{x:.decimals$}");
    if s.contains('.') {
        s.truncate(s.trim_end_matches('0').trim_end_matches('.').len());
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

type Span = (f64, f64);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AxisRange {
    Auto,
    Explicit { min: f64, max: f64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotPoint {
    pub v2: f64,
    pub v3: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotCurve {
    pub caption: String,
    pub points: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub title: String,
    pub points: Vec<PlotPoint>,
    pub curves: Vec<PlotCurve>,
    pub x_range: AxisRange,
    pub y_range: AxisRange,
    /// Auto vertical range is made symmetric about `v3 = 0`.
    pub symmetric_y: bool,
}

impl PlotSpec {
    pub fn new(title: impl Into<String>) -> Self {
        Self {
            title: title.into(),
            points: Vec::new(),
            curves: Vec::new(),
            x_range: AxisRange::Auto,
            y_range: AxisRange::Auto,
            symmetric_y: true,
        }
    }

    fn resolve(&self) -> Result<[Span; 2], PlotError> {
        let all = || {
            self.points.iter().map(|p| (p.v2, p.v3)).chain(self.curves.iter().flat_map(|c| c.points.iter().copied()))
        };
        let resolve_axis = |range: AxisRange, coord: &dyn Fn((f64, f64)) -> f64, symmetric: bool| match range {
            AxisRange::Explicit { min, max } => {
                if min.partial_cmp(&max) != Some(std::cmp::Ordering::Less) {
                    return Err(PlotError::EmptyRange { min, max });
                }
                if let Some(p) = self.points.iter().find(|p| !(min..=max).contains(&coord((p.v2, p.v3)))) {
                    return Err(PlotError::RangeExcludesPoint { label: p.label.clone(), v2: p.v2, v3: p.v3 });
                }
                Ok((min, max))
            }
            AxisRange::Auto => {
                let (mut lo, mut hi) = all().map(coord).fold((0.0f64, 0.0f64), |(l, h), v| (l.min(v), h.max(v)));
                if symmetric {
                    hi = hi.max(-lo);
                    lo = -hi;
                }
                if hi - lo == 0.0 {
                    return Ok((lo - 1.0, hi + 1.0));
                }
                let pad = 0.05 * (hi - lo);
                Ok((lo - pad, hi + pad))
            }
        };
        Ok([resolve_axis(self.x_range, &|p| p.0, false)?, resolve_axis(self.y_range, &|p| p.1, self.symmetric_y)?])
    }

    /// Renders the plot. Points are sorted, so the output depends only on
    /// the set of points and the curve list.
    pub fn render_svg(&self) -> Result<String, PlotError> {
        const W: f64 = 640.0;
        const H: f64 = 480.0;
        const M: f64 = 56.0;
        let [(x0, x1), (y0, y1)] = self.resolve()?;
        let sx = |x: f64| M + (x - x0) / (x1 - x0) * (W - 2.0 * M);
        let sy = |y: f64| H - M - (y - y0) / (y1 - y0) * (H - 2.0 * M);
        let mut s = String::new();
        let _ = writeln!(
            s,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}" font-family="sans-serif" font-size="12">"#
        );
        let _ = writeln!(s, r#"<title>{}</title>"#, escape(&self.title));
        let _ = writeln!(s, r#"<rect x="0" y="0" width="{W}" height="{H}" fill="white"/>"#);
        let _ = writeln!(
            s,
            r#"<rect x="{M}" y="{M}" width="{}" height="{}" fill="none" stroke="gray"/>"#,
            sig6(W - 2.0 * M),
            sig6(H - 2.0 * M)
        );
        if (y0..=y1).contains(&0.0) {
            let y = sig6(sy(0.0));
            let _ = writeln!(s, r#"<line class="axis" x1="{M}" y1="{y}" x2="{}" y2="{y}" stroke="black"/>"#, W - M);
        }
        if (x0..=x1).contains(&0.0) {
            let x = sig6(sx(0.0));
            let _ = writeln!(s, r#"<line class="axis" x1="{x}" y1="{M}" x2="{x}" y2="{}" stroke="black"/>"#, H - M);
        }
        let label = |s: &mut String, x: f64, y: f64, anchor: &str, text: &str| {
            let _ =
                writeln!(s, r#"<text x="{}" y="{}" text-anchor="{anchor}">{}</text>"#, sig6(x), sig6(y), escape(text));
        };
        label(&mut s, M, H - M + 16.0, "start", &sig6(x0));
        label(&mut s, W - M, H - M + 16.0, "end", &sig6(x1));
        label(&mut s, W / 2.0, H - 12.0, "middle", "v2");
        label(&mut s, M - 6.0, H - M, "end", &sig6(y0));
        label(&mut s, M - 6.0, M + 4.0, "end", &sig6(y1));
        label(&mut s, 16.0, H / 2.0, "middle", "v3");
        label(&mut s, W / 2.0, M / 2.0, "middle", &self.title);
        for c in &self.curves {
            let d: Vec<String> = c
                .points
                .iter()
                .enumerate()
                .map(|(i, &(x, y))| format!("{}{} {}", if i == 0 { 'M' } else { 'L' }, sig6(sx(x)), sig6(sy(y))))
                .collect();
            let cap = if c.points.len() == 1 { " stroke-linecap=\"round\" stroke-width=\"4\"" } else { "" };
            let d = if c.points.len() == 1 { format!("{} h0", d[0]) } else { d.join(" ") };
            let _ = writeln!(
                s,
                r#"<path class="curve" d="{d}" fill="none" stroke="steelblue"{cap}><title>{}</title></path>"#,
                escape(&c.caption)
            );
        }
        let mut points: Vec<&PlotPoint> = self.points.iter().collect();
        points.sort_by(|a, b| a.v2.total_cmp(&b.v2).then(a.v3.total_cmp(&b.v3)).then(a.label.cmp(&b.label)));
        for p in points {
            let _ = writeln!(
                s,
                r#"<circle class="knot" cx="{}" cy="{}" r="3" fill="crimson"><title>{} ({}, {})</title></circle>"#,
                sig6(sx(p.v2)),
                sig6(sy(p.v3)),
                escape(&p.label),
                sig6(p.v2),
                sig6(p.v3)
            );
        }
        s.push_str("</svg>\n");
        Ok(s)
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FishOptions {
    /// Plot `(v2, -v3)` for every chiral knot as well.
    pub synthesize_mirrors: bool,
}

impl Default for FishOptions {
    fn default() -> Self {
        Self { synthesize_mirrors: true }
    }
}

/// Scatter of the knots with the given crossing number.
pub fn fish_spec(records: &[KnotRecord], crossing_number: u32, opts: FishOptions) -> PlotSpec {
    let mut spec = PlotSpec::new(format!("{crossing_number} crossings"));
    for r in records.iter().filter(|r| r.crossing_number == crossing_number) {
        let Some(v) = r.invariants else { continue };
        spec.points.push(PlotPoint { v2: v.v2 as f64, v3: v.v3 as f64, label: r.name.clone() });
        if opts.synthesize_mirrors && v.v3 != 0 {
            spec.points.push(PlotPoint { v2: v.v2 as f64, v3: -v.v3 as f64, label: format!("mirror({})", r.name) });
        }
    }
    spec
}

pub fn emit_fish_svg(records: &[KnotRecord], crossing_number: u32, opts: FishOptions) -> String {
    fish_spec(records, crossing_number, opts).render_svg().expect("auto ranges always resolve")
}

/// Torus unknotting-number and crossing-number curves with the torus knots
/// lying on them.
pub fn torus_overlay_spec(u_values: &[i64], c_values: &[i64], samples: usize) -> Result<PlotSpec, PlotError> {
    let mut spec = PlotSpec::new("torus knot curves");
    let mut knots = Vec::new();
    for (mode, values, name) in [(CurveMode::Unknotting, u_values, "u"), (CurveMode::Crossing, c_values, "c")] {
        for &v in values {
            let curve = torus_curve_samples(mode, v, samples)?;
            spec.curves.push(PlotCurve { caption: format!("{name} = {v}"), points: curve.positive });
            spec.curves.push(PlotCurve { caption: format!("{name} = {v}, mirror"), points: curve.negative });
            knots.extend(torus_knots_with(mode, v));
        }
    }
    knots.sort();
    knots.dedup();
    for t in knots {
        let v = torus_v2v3(t);
        spec.points.push(PlotPoint { v2: v.v2 as f64, v3: v.v3 as f64, label: t.to_string() });
        spec.points.push(PlotPoint { v2: v.v2 as f64, v3: -v.v3 as f64, label: t.mirror().to_string() });
    }
    Ok(spec)
}

pub fn emit_torus_overlay_svg(u_values: &[i64], c_values: &[i64], samples: usize) -> Result<String, PlotError> {
    torus_overlay_spec(u_values, c_values, samples)?.render_svg()
}
