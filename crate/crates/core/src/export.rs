//! Thresholded similarity graphs and their serializations: edge-list CSV,
//! DOT, Pajek, and the (cos, r) cloud as CSV plus an SVG scatter.

use std::fmt;
use std::io::{Read, Write};
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::matrix::{norm_profiles, DataMatrix, Orientation};
use crate::sheaf::{cloud, CloudPoint, Envelope, SheafLine};
use crate::threshold::{compute_thresholds, pair_threshold};

/// How the cosine cut for graph edges is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum ThresholdSpec {
    /// The dataset's upper threshold; no negative correlation survives.
    #[default]
    AutoUpper,
    AutoLower,
    /// Each pair is cut at its own zero-correlation cosine, so an edge
    /// survives iff r > 0.
    PerPair,
    Explicit(f64),
}

impl FromStr for ThresholdSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "auto-upper" => Ok(ThresholdSpec::AutoUpper),
            "auto-lower" => Ok(ThresholdSpec::AutoLower),
            "per-pair" => Ok(ThresholdSpec::PerPair),
            other => {
                let t: f64 = other
                    .parse()
                    .map_err(|_| format!("invalid threshold `{other}`"))?;
                if !(0.0..1.0).contains(&t) {
                    return Err(format!("threshold {t} is outside [0, 1)"));
                }
                Ok(ThresholdSpec::Explicit(t))
            }
        }
    }
}

/// The cut actually applied when a graph was built.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum AppliedThreshold {
    Global(f64),
    PerPair,
}

impl fmt::Display for AppliedThreshold {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppliedThreshold::Global(t) => write!(f, "{t}"),
            AppliedThreshold::PerPair => f.write_str("per-pair"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Edge {
    pub source: String,
    pub target: String,
    pub cos: f64,
    pub r: f64,
    pub negative: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimilarityGraph {
    pub nodes: Vec<String>,
    /// Sorted by `(source, target)`, with `source < target`.
    pub edges: Vec<Edge>,
    pub threshold: AppliedThreshold,
}

/// Keeps every pair of usable entities whose cosine is strictly above the
/// resolved threshold.
pub fn build_graph(
    m: &DataMatrix,
    orientation: Orientation,
    spec: ThresholdSpec,
) -> Result<SimilarityGraph> {
    if let ThresholdSpec::Explicit(t) = spec {
        if !(0.0..1.0).contains(&t) {
            return Err(Error::InvalidThreshold(t));
        }
    }
    let n = m.vector_len(orientation);
    let (profiles, _) = norm_profiles(m, orientation)?;
    let threshold = match spec {
        ThresholdSpec::Explicit(t) => AppliedThreshold::Global(t),
        ThresholdSpec::PerPair => AppliedThreshold::PerPair,
        ThresholdSpec::AutoUpper => AppliedThreshold::Global(compute_thresholds(&profiles, n)?.upper),
        ThresholdSpec::AutoLower => AppliedThreshold::Global(compute_thresholds(&profiles, n)?.lower),
    };

    let mut edges = Vec::new();
    for p in cloud(m, orientation)? {
        let cut = match threshold {
            AppliedThreshold::Global(t) => t,
            AppliedThreshold::PerPair => pair_threshold(p.a, p.b, n)?,
        };
        if p.cos > cut {
            edges.push(Edge {
                negative: p.r < 0.0,
                source: p.pair.0,
                target: p.pair.1,
                cos: p.cos,
                r: p.r,
            });
        }
    }
    Ok(SimilarityGraph {
        nodes: profiles.into_iter().map(|p| p.label).collect(),
        edges,
        threshold,
    })
}

const EDGE_HEADER: [&str; 5] = ["source", "target", "cosine", "pearson", "negative"];

/// `source,target,cosine,pearson,negative`, one row per edge.
pub fn emit_edgelist<W: Write>(g: &SimilarityGraph, sink: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(EDGE_HEADER)?;
    for e in &g.edges {
        writer.write_record([
            e.source.as_str(),
            e.target.as_str(),
            &e.cos.to_string(),
            &e.r.to_string(),
            if e.negative { "true" } else { "false" },
        ])?;
    }
    writer.flush()?;
    Ok(())
}

/// Reads back what [`emit_edgelist`] writes.
pub fn parse_edgelist<R: Read>(source: R) -> Result<Vec<Edge>> {
    let mut reader = csv::Reader::from_reader(source);
    let header = reader.headers()?.clone();
    if header.iter().ne(EDGE_HEADER) {
        return Err(Error::MalformedEdgeList {
            line: 1,
            reason: "unexpected header".into(),
        });
    }
    let mut edges = Vec::new();
    for record in reader.records() {
        let record = record?;
        let line = record.position().map_or(0, |p| p.line());
        let bad = |reason: &str| Error::MalformedEdgeList {
            line,
            reason: reason.to_owned(),
        };
        let number = |i: usize| -> Result<f64> {
            record[i].parse().map_err(|_| bad("expected a number"))
        };
        edges.push(Edge {
            source: record[0].to_owned(),
            target: record[1].to_owned(),
            cos: number(2)?,
            r: number(3)?,
            negative: match &record[4] {
                "true" => true,
                "false" => false,
                _ => return Err(bad("expected true or false")),
            },
        });
    }
    Ok(edges)
}

fn dot_id(label: &str) -> String {
    let mut out = String::with_capacity(label.len() + 2);
    out.push('"');
    for c in label.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            c => out.push(c),
        }
    }
    out.push('"');
    out
}

/// Undirected DOT graph; negative-correlation edges are dashed.
pub fn emit_dot<W: Write>(g: &SimilarityGraph, mut sink: W) -> Result<()> {
    writeln!(sink, "graph similarity {{")?;
    writeln!(sink, "  // cosine threshold: {}", g.threshold)?;
    for node in &g.nodes {
        writeln!(sink, "  {};", dot_id(node))?;
    }
    for e in &g.edges {
        write!(
            sink,
            "  {} -- {} [weight={}, pearson={}",
            dot_id(&e.source),
            dot_id(&e.target),
            e.cos,
            e.r
        )?;
        if e.negative {
            write!(sink, ", style=dashed")?;
        }
        writeln!(sink, "];")?;
    }
    writeln!(sink, "}}")?;
    Ok(())
}

/// Pajek `.net`: 1-based vertices with quoted labels, then `i j cosine`.
pub fn emit_pajek<W: Write>(g: &SimilarityGraph, mut sink: W) -> Result<()> {
    writeln!(sink, "*Vertices {}", g.nodes.len())?;
    for (i, node) in g.nodes.iter().enumerate() {
        writeln!(sink, "{} \"{}\"", i + 1, node.replace('"', "'"))?;
    }
    writeln!(sink, "*Edges")?;
    let index = |label: &str| g.nodes.iter().position(|n| n == label).map(|i| i + 1);
    for e in &g.edges {
        if let (Some(i), Some(j)) = (index(&e.source), index(&e.target)) {
            writeln!(sink, "{i} {j} {}", e.cos)?;
        }
    }
    Ok(())
}

/// Cosine sample points for the envelope block of the cloud CSV.
pub fn envelope_samples() -> impl Iterator<Item = f64> {
    (0..=10).map(|k| f64::from(k) / 10.0)
}

/// Cloud CSV (`pair,cos,r,a,b`, then both envelope lines sampled at
/// cos = 0, 0.1, …, 1 under the pair names `envelope:min` and
/// `envelope:max`).
pub fn emit_cloud_csv<W: Write>(points: &[CloudPoint], env: &Envelope, sink: W) -> Result<()> {
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record(["pair", "cos", "r", "a", "b"])?;
    for p in points {
        writer.write_record([
            format!("{}|{}", p.pair.0, p.pair.1),
            p.cos.to_string(),
            p.r.to_string(),
            p.a.to_string(),
            p.b.to_string(),
        ])?;
    }
    for (name, line) in [("envelope:min", &env.min_line), ("envelope:max", &env.max_line)] {
        for cos in envelope_samples() {
            writer.write_record([
                name.to_owned(),
                cos.to_string(),
                line.predict_r(cos).to_string(),
                line.a.to_string(),
                line.b.to_string(),
            ])?;
        }
    }
    writer.flush()?;
    Ok(())
}

const SVG_WIDTH: f64 = 640.0;
const SVG_HEIGHT: f64 = 480.0;
const SVG_MARGIN: f64 = 60.0;

fn svg_x(cos: f64) -> f64 {
    SVG_MARGIN + cos.clamp(0.0, 1.0) * (SVG_WIDTH - 2.0 * SVG_MARGIN)
}

fn svg_y(r: f64) -> f64 {
    let t = (r.clamp(-1.0, 1.0) + 1.0) / 2.0;
    SVG_HEIGHT - SVG_MARGIN - t * (SVG_HEIGHT - 2.0 * SVG_MARGIN)
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// The part of `line` with cos ∈ [0, 1] and r ∈ [−1, 1], as endpoints.
fn visible_segment(line: &SheafLine) -> Option<((f64, f64), (f64, f64))> {
    let lo = line.invert_cos(-1.0).max(0.0);
    let hi = line.invert_cos(1.0).min(1.0);
    (lo < hi).then(|| ((lo, line.predict_r(lo)), (hi, line.predict_r(hi))))
}

/// Static scatter of the cloud with both envelope lines; Cos on the
/// horizontal axis over [0, 1], r on the vertical axis over [−1, 1].
pub fn emit_cloud_svg<W: Write>(points: &[CloudPoint], env: &Envelope, mut sink: W) -> Result<()> {
    let (x0, x1) = (svg_x(0.0), svg_x(1.0));
    let (y0, y1) = (svg_y(-1.0), svg_y(1.0));
    writeln!(
        sink,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SVG_WIDTH}" height="{SVG_HEIGHT}" viewBox="0 0 {SVG_WIDTH} {SVG_HEIGHT}" font-family="sans-serif" font-size="12">"#
    )?;
    writeln!(sink, r#"  <rect width="100%" height="100%" fill="white"/>"#)?;
    writeln!(
        sink,
        r#"  <g stroke="black" stroke-width="1"><line x1="{x0}" y1="{y0}" x2="{x1}" y2="{y0}"/><line x1="{x0}" y1="{y0}" x2="{x0}" y2="{y1}"/></g>"#
    )?;
    writeln!(
        sink,
        r##"  <line x1="{x0}" y1="{z:.2}" x2="{x1}" y2="{z:.2}" stroke="#999" stroke-dasharray="4 3"/>"##,
        z = svg_y(0.0)
    )?;
    for k in 0..=5 {
        let cos = f64::from(k) / 5.0;
        let x = svg_x(cos);
        writeln!(
            sink,
            r#"  <text x="{x:.2}" y="{:.2}" text-anchor="middle">{cos:.1}</text>"#,
            y0 + 16.0
        )?;
    }
    for k in 0..=4 {
        let r = -1.0 + f64::from(k) / 2.0;
        writeln!(
            sink,
            r#"  <text x="{:.2}" y="{:.2}" text-anchor="end">{r:.1}</text>"#,
            x0 - 6.0,
            svg_y(r) + 4.0
        )?;
    }
    writeln!(
        sink,
        r#"  <text x="{:.2}" y="{:.2}" text-anchor="middle">Cos</text>"#,
        (x0 + x1) / 2.0,
        SVG_HEIGHT - 16.0
    )?;
    writeln!(
        sink,
        r#"  <text x="18" y="{:.2}" text-anchor="middle" transform="rotate(-90 18 {:.2})">r</text>"#,
        (y0 + y1) / 2.0,
        (y0 + y1) / 2.0
    )?;
    writeln!(sink, r##"  <g fill="#1f77b4" fill-opacity="0.7">"##)?;
    for p in points {
        writeln!(
            sink,
            r#"    <circle cx="{:.2}" cy="{:.2}" r="2.5"><title>{}</title></circle>"#,
            svg_x(p.cos),
            svg_y(p.r),
            xml_escape(&format!("{} / {}", p.pair.0, p.pair.1))
        )?;
    }
    writeln!(sink, "  </g>")?;
    for (line, colour) in [(&env.min_line, "#d62728"), (&env.max_line, "#2ca02c")] {
        if let Some(((c0, r0), (c1, r1))) = visible_segment(line) {
            writeln!(
                sink,
                r#"  <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="{colour}" stroke-width="1.5"/>"#,
                svg_x(c0),
                svg_y(r0),
                svg_x(c1),
                svg_y(r1)
            )?;
        }
    }
    writeln!(sink, "</svg>")?;
    Ok(())
}

/// Cloud CSV and SVG as two byte buffers.
pub fn emit_cloud(points: &[CloudPoint], env: &Envelope) -> Result<(Vec<u8>, Vec<u8>)> {
    let mut csv = Vec::new();
    let mut svg = Vec::new();
    emit_cloud_csv(points, env, &mut csv)?;
    emit_cloud_svg(points, env, &mut svg)?;
    Ok((csv, svg))
}
