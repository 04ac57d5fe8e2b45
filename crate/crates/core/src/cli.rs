//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on data or validation errors (and failed
//! verification), 2 on usage errors. Data goes to stdout or `--out`,
//! diagnostics to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use crate::error::Result;
use crate::export::{build_graph, emit_cloud, emit_dot, emit_edgelist, emit_pajek, ThresholdSpec};
use crate::matrix::{
    cocitation, load_matrix, norm_profiles, usable_entities, write_matrix, DataMatrix, Dropped,
    Format, Orientation,
};
use crate::measures::{pairwise_matrix, SimilarityKind};
use crate::sheaf::{cloud, envelope, line_params};
use crate::threshold::{compute_thresholds, verify_guarantee};
use crate::vectors::NormProfile;

/// Largest identity residual `verify` accepts.
pub const IDENTITY_TOLERANCE: f64 = 1e-10;

#[derive(Debug, Parser)]
#[command(
    name = "cosine-threshold",
    version,
    about = "Pearson/cosine sheaf model, cosine thresholds, and similarity network export"
)]
pub struct Cli {
    /// Suppress non-error diagnostics
    #[arg(long, global = true)]
    pub quiet: bool,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Input matrix file
    #[arg(long)]
    pub input: PathBuf,

    /// csv or tsv
    #[arg(long, default_value = "csv")]
    pub format: Format,

    /// Whether entities are the matrix rows or columns
    #[arg(long, default_value = "columns")]
    pub orientation: Orientation,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// L1/L2 norms and their ratio for every entity
    Norms {
        #[command(flatten)]
        input: InputArgs,
        /// Output file (stdout if omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pairwise similarity matrix
    Sim {
        #[command(flatten)]
        input: InputArgs,
        /// cosine, pearson, jaccard, dice or pseudo-cosine
        #[arg(long, default_value = "cosine")]
        measure: SimilarityKind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Co-citation matrix of a binary occurrence matrix
    Cocite {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lower and upper cosine thresholds
    Threshold {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// (cos, r) cloud with envelope lines: cloud.csv and cloud.svg
    Cloud {
        #[command(flatten)]
        input: InputArgs,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Thresholded similarity graph: edges.csv, graph.dot and graph.net
    Graph {
        #[command(flatten)]
        input: InputArgs,
        /// auto-upper, auto-lower, per-pair, or a cosine in [0, 1)
        #[arg(long, default_value = "auto-upper")]
        threshold: ThresholdSpec,
        /// Output directory
        #[arg(long, default_value = ".")]
        out: PathBuf,
    },
    /// Check the r/cosine identity on every pair and the no-negative-r
    /// guarantee at the upper threshold
    Verify {
        #[command(flatten)]
        input: InputArgs,
    },
}

struct Context<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    quiet: bool,
}

impl Context<'_> {
    fn note(&mut self, msg: impl AsRef<str>) -> Result<()> {
        if !self.quiet {
            writeln!(self.stderr, "{}", msg.as_ref())?;
        }
        Ok(())
    }

    fn report_dropped(&mut self, dropped: &[Dropped]) -> Result<()> {
        for d in dropped {
            self.note(format!("dropped `{}`: {}", d.label, d.reason))?;
        }
        Ok(())
    }

    fn emit(&mut self, out: Option<&Path>, bytes: &[u8]) -> Result<()> {
        match out {
            Some(path) => fs::write(path, bytes)?,
            None => self.stdout.write_all(bytes)?,
        }
        Ok(())
    }
}

/// Parses `args` (program name first) and runs the subcommand, returning
/// the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{}", e.render());
                    0
                }
                _ => {
                    let _ = write!(stderr, "{}", e.render());
                    2
                }
            };
        }
    };
    let mut ctx = Context {
        stdout,
        stderr,
        quiet: cli.quiet,
    };
    match dispatch(cli.command, &mut ctx) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            1
        }
    }
}

fn load(input: &InputArgs) -> Result<DataMatrix> {
    let file = fs::File::open(&input.input)?;
    load_matrix(std::io::BufReader::new(file), input.format)
}

fn dispatch(command: Command, ctx: &mut Context<'_>) -> Result<i32> {
    match command {
        Command::Norms { input, out } => {
            let m = load(&input)?;
            let usable = usable_entities(&m, input.orientation, false)?;
            ctx.report_dropped(&usable.dropped)?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["label", "n", "l1", "l2", "ratio"])?;
            for v in &usable.kept {
                let p = NormProfile::of(v)?;
                writer.write_record([
                    p.label,
                    p.n.to_string(),
                    p.l1.to_string(),
                    p.l2.to_string(),
                    p.ratio_a.to_string(),
                ])?;
            }
            let bytes = writer.into_inner().map_err(|e| e.into_error())?;
            ctx.emit(out.as_deref(), &bytes)?;
        }
        Command::Sim {
            input,
            measure,
            out,
        } => {
            let m = load(&input)?;
            let sim = pairwise_matrix(&m, measure, input.orientation)?;
            ctx.report_dropped(&sim.dropped)?;
            let mut bytes = Vec::new();
            sim.write(&mut bytes, input.format)?;
            ctx.emit(out.as_deref(), &bytes)?;
        }
        Command::Cocite { input, out } => {
            let occ = load(&input)?;
            let occ = match input.orientation {
                Orientation::Columns => occ,
                Orientation::Rows => transpose(&occ)?,
            };
            let co = cocitation(&occ)?;
            let mut bytes = Vec::new();
            write_matrix(&co, &mut bytes, input.format)?;
            ctx.emit(out.as_deref(), &bytes)?;
        }
        Command::Threshold { input, out } => {
            let m = load(&input)?;
            let n = m.vector_len(input.orientation);
            let (profiles, dropped) = norm_profiles(&m, input.orientation)?;
            ctx.report_dropped(&dropped)?;
            let t = compute_thresholds(&profiles, n)?;
            let mut writer = csv::Writer::from_writer(Vec::new());
            writer.write_record(["key", "value"])?;
            for (key, value) in [
                ("n", t.n.to_string()),
                ("lower", t.lower.to_string()),
                ("upper", t.upper.to_string()),
                ("min_pair", format!("{}|{}", t.min_pair.0, t.min_pair.1)),
                ("max_pair", format!("{}|{}", t.max_pair.0, t.max_pair.1)),
            ] {
                writer.write_record([key, value.as_str()])?;
            }
            let bytes = writer.into_inner().map_err(|e| e.into_error())?;
            ctx.emit(out.as_deref(), &bytes)?;
        }
        Command::Cloud { input, out } => {
            let m = load(&input)?;
            let n = m.vector_len(input.orientation);
            let (profiles, dropped) = norm_profiles(&m, input.orientation)?;
            ctx.report_dropped(&dropped)?;
            let env = envelope(&profiles, n)?;
            let points = cloud(&m, input.orientation)?;
            let (csv, svg) = emit_cloud(&points, &env)?;
            fs::create_dir_all(&out)?;
            fs::write(out.join("cloud.csv"), csv)?;
            fs::write(out.join("cloud.svg"), svg)?;
            let outside = env.count_outside(&points, IDENTITY_TOLERANCE);
            ctx.note(format!(
                "{} points, {outside} outside the envelope band",
                points.len()
            ))?;
        }
        Command::Graph {
            input,
            threshold,
            out,
        } => {
            let m = load(&input)?;
            let (_, dropped) = norm_profiles(&m, input.orientation)?;
            ctx.report_dropped(&dropped)?;
            let g = build_graph(&m, input.orientation, threshold)?;
            fs::create_dir_all(&out)?;
            let mut buf = Vec::new();
            emit_edgelist(&g, &mut buf)?;
            fs::write(out.join("edges.csv"), &buf)?;
            buf.clear();
            emit_dot(&g, &mut buf)?;
            fs::write(out.join("graph.dot"), &buf)?;
            buf.clear();
            emit_pajek(&g, &mut buf)?;
            fs::write(out.join("graph.net"), &buf)?;
            let negative = g.edges.iter().filter(|e| e.negative).count();
            ctx.note(format!(
                "threshold {}: {} nodes, {} edges ({negative} negative)",
                g.threshold,
                g.nodes.len(),
                g.edges.len()
            ))?;
        }
        Command::Verify { input } => {
            let m = load(&input)?;
            let n = m.vector_len(input.orientation);
            let (profiles, dropped) = norm_profiles(&m, input.orientation)?;
            ctx.report_dropped(&dropped)?;
            let points = cloud(&m, input.orientation)?;
            let mut residual: f64 = 0.0;
            for p in &points {
                let line = line_params(p.a, p.b, n)?;
                residual = residual.max((p.r - line.predict_r(p.cos)).abs());
            }
            let t = compute_thresholds(&profiles, n)?;
            let violations = verify_guarantee(&m, input.orientation, t.upper)?;
            writeln!(ctx.stdout, "pairs: {}", points.len())?;
            writeln!(ctx.stdout, "max_identity_residual: {residual:e}")?;
            writeln!(ctx.stdout, "upper_threshold: {}", t.upper)?;
            writeln!(ctx.stdout, "violations: {}", violations.len())?;
            for v in &violations {
                ctx.note(format!(
                    "violation {}|{}: cos {} r {}",
                    v.pair.0, v.pair.1, v.cos, v.r
                ))?;
            }
            let ok = residual <= IDENTITY_TOLERANCE && violations.is_empty();
            writeln!(ctx.stdout, "status: {}", if ok { "pass" } else { "fail" })?;
            return Ok(if ok { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn transpose(m: &DataMatrix) -> Result<DataMatrix> {
    let rows = (0..m.ncols()).map(|c| m.column(c)).collect();
    DataMatrix::new(
        Some(m.col_labels().to_vec()),
        m.entity_labels(Orientation::Rows),
        rows,
    )
}
