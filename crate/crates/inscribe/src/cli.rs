//! Command-line interface: solver subcommands, sequence tools, witness
//! verification, benchmarks, and SVG rendering.
//!
//! Exit codes: 0 success, 1 input/validation error, 2 usage or internal
//! error. Results go to stdout as JSON (CSV for `bench`); errors go to
//! stderr as a JSON body.

use std::fs;
use std::io::Read;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Deserialize;

use crate::circumscribed::{check_eq5, max_diameter_circumscribed, CircumPolygon};
use crate::doc::{
    parse_polygon, polygon_to_document, witness_from_docs, witness_to_docs, AnchorDoc,
    Diagnostics, ResultDocument,
};
use crate::gen::jittered_ngon;
use crate::geom::{ConvexPolygon, InscribedPolygon, Point};
use crate::min_area::min_area_inscribed;
use crate::min_perimeter::{
    build_pi_table, check_reflection_law, min_perimeter_inscribed, FagnanoSolution,
};
use crate::sequences::{
    area_admissible, perimeter_admissible, realize_area_sequence, realize_perimeter_sequence,
    sequence_of, CyclicSequence, DEFAULT_AREA_EPS, DEFAULT_PERIM_DELTA, DEFAULT_PERIM_ZETA,
};
use crate::svg::{render_svg, SvgAnnotations};

#[derive(Parser)]
#[command(name = "inscribe", about = "Extremal polygons inscribed in convex polygons")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SequenceKind {
    Area,
    Perimeter,
}

#[derive(Clone, Copy, ValueEnum)]
enum BenchKind {
    MinArea,
    PiTable,
    CircumDiameter,
}

#[derive(Subcommand)]
enum Cmd {
    /// Minimum-area inscribed polygon.
    MinArea {
        /// Polygon document path, or "-" for stdin.
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Minimum-perimeter inscribed polygon.
    MinPerimeter {
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Maximum circumscribed diameter via external points.
    CircumDiameter {
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Tests a U/N sequence for admissibility.
    CheckSequence {
        #[arg(long, value_enum)]
        kind: SequenceKind,
        sequence: String,
    },
    /// Constructs a host polygon realizing a U/N sequence.
    RealizeSequence {
        #[arg(long, value_enum)]
        kind: SequenceKind,
        sequence: String,
        #[arg(long)]
        eps: Option<f64>,
        #[arg(long)]
        zeta: Option<f64>,
        #[arg(long)]
        delta: Option<f64>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Verifies a witness document (reflection law or circumscribed
    /// first-order condition).
    Verify { input: String },
    /// Benchmarks a solver over a size ladder; emits CSV (n, wall_ns).
    Bench {
        #[arg(long, value_enum)]
        kind: BenchKind,
        #[arg(long, value_delimiter = ',')]
        sizes: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Renders a polygon document as SVG.
    Render {
        input: String,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
}

enum CliError {
    Validation(String),
    Internal(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 1,
            CliError::Internal(_) => 2,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Internal(m) => m,
        }
    }
}

fn validation(e: impl std::fmt::Display) -> CliError {
    CliError::Validation(e.to_string())
}

fn read_input(path: &str) -> Result<String, CliError> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin().read_to_string(&mut buf).map_err(validation)?;
        Ok(buf)
    } else {
        fs::read_to_string(path).map_err(|e| validation(format!("{path}: {e}")))
    }
}

fn load_polygon(path: &str) -> Result<ConvexPolygon, CliError> {
    parse_polygon(&read_input(path)?).map_err(validation)
}

fn write_svg(
    path: &Option<PathBuf>,
    c: &ConvexPolygon,
    witnesses: &[InscribedPolygon],
    annotations: &SvgAnnotations,
) -> Result<(), CliError> {
    if let Some(path) = path {
        let svg = render_svg(c, witnesses, annotations);
        fs::write(path, svg).map_err(|e| CliError::Internal(e.to_string()))?;
    }
    Ok(())
}

fn emit(value: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    println!("{text}");
    Ok(())
}

fn parse_sequence(word: &str) -> Result<CyclicSequence, CliError> {
    CyclicSequence::new(word).map_err(validation)
}

/// Witness-verification document: a polygon plus either an inscribed
/// witness (anchors) or a circumscribed polygon (vertices).
#[derive(Deserialize)]
struct VerifyDocument {
    vertices: Vec<[f64; 2]>,
    #[serde(default)]
    witness: Option<Vec<AnchorDoc>>,
    #[serde(default)]
    circum: Option<Vec<[f64; 2]>>,
}

fn run(cmd: Cmd) -> Result<(), CliError> {
    match cmd {
        Cmd::MinArea { input, svg } => {
            let c = load_polygon(&input)?;
            let start = Instant::now();
            let res = min_area_inscribed(&c);
            let timing_ns = start.elapsed().as_nanos();
            write_svg(&svg, &c, std::slice::from_ref(&res.one_witness), &Default::default())?;
            emit(&ResultDocument {
                kind: "min-area".into(),
                value: res.value,
                witness: Some(witness_to_docs(&res.one_witness)),
                sequence: Some(sequence_of(&c, &res.one_witness).to_string()),
                diagnostics: Diagnostics {
                    optima_count: Some(res.all_vertex_optima.count()),
                    slide_families: Some(res.slide_families.len()),
                    ..Default::default()
                },
                timing_ns,
            })
        }
        Cmd::MinPerimeter { input, svg } => {
            let c = load_polygon(&input)?;
            let start = Instant::now();
            let res = min_perimeter_inscribed(&c);
            let timing_ns = start.elapsed().as_nanos();
            let family_interval = match &res.family {
                FagnanoSolution::Family { interval, .. } => Some([interval.0, interval.1]),
                _ => None,
            };
            let residuals = check_reflection_law(&c, &res.witness).map_err(validation)?;
            let mut shown: Vec<InscribedPolygon> = vec![res.witness.clone()];
            if let FagnanoSolution::Family { witnesses, .. } = &res.family {
                shown = witnesses.clone();
            }
            write_svg(&svg, &c, &shown, &Default::default())?;
            emit(&ResultDocument {
                kind: "min-perimeter".into(),
                value: res.value,
                witness: Some(witness_to_docs(&res.witness)),
                sequence: Some(sequence_of(&c, &res.witness).to_string()),
                diagnostics: Diagnostics {
                    reflection_residuals: Some(residuals),
                    family_interval,
                    ..Default::default()
                },
                timing_ns,
            })
        }
        Cmd::CircumDiameter { input, svg } => {
            let c = load_polygon(&input)?;
            let start = Instant::now();
            let ext = crate::circumscribed::external_points(&c).map_err(validation)?;
            let report = max_diameter_circumscribed(&c).map_err(validation)?;
            let timing_ns = start.elapsed().as_nanos();
            let annotations =
                SvgAnnotations { external: Some(&ext), hull: Some(&report.hull) };
            write_svg(&svg, &c, &[], &annotations)?;
            emit(&ResultDocument {
                kind: "circum-diameter".into(),
                value: report.value,
                witness: None,
                sequence: None,
                diagnostics: Diagnostics {
                    resolved: Some(report.resolved),
                    diameter_pairs: Some(report.pairs),
                    ..Default::default()
                },
                timing_ns,
            })
        }
        Cmd::CheckSequence { kind, sequence } => {
            let s = parse_sequence(&sequence)?;
            let admissible = match kind {
                SequenceKind::Area => area_admissible(&s),
                SequenceKind::Perimeter => perimeter_admissible(&s),
            };
            emit(&serde_json::json!({
                "kind": "check-sequence",
                "sequence": s.to_string(),
                "admissible": admissible,
            }))
        }
        Cmd::RealizeSequence { kind, sequence, eps, zeta, delta, svg } => {
            let s = parse_sequence(&sequence)?;
            let c = match kind {
                SequenceKind::Area => {
                    realize_area_sequence(&s, eps.unwrap_or(DEFAULT_AREA_EPS))
                        .map_err(validation)?
                }
                SequenceKind::Perimeter => realize_perimeter_sequence(
                    &s,
                    zeta.unwrap_or(DEFAULT_PERIM_ZETA),
                    delta.unwrap_or(DEFAULT_PERIM_DELTA),
                )
                .map_err(validation)?,
            };
            let witness = match kind {
                SequenceKind::Area => min_area_inscribed(&c).one_witness,
                SequenceKind::Perimeter => min_perimeter_inscribed(&c).witness,
            };
            write_svg(&svg, &c, std::slice::from_ref(&witness), &Default::default())?;
            emit(&serde_json::json!({
                "kind": "realize-sequence",
                "sequence": s.to_string(),
                "polygon": polygon_to_document(&c, None),
            }))
        }
        Cmd::Verify { input } => {
            let text = read_input(&input)?;
            let doc: VerifyDocument = serde_json::from_str(&text).map_err(validation)?;
            let pts = doc.vertices.iter().map(|&[x, y]| Point::new(x, y)).collect();
            let c = ConvexPolygon::new(pts).map_err(validation)?;
            if let Some(witness) = doc.witness {
                let q = witness_from_docs(&c, &witness).map_err(validation)?;
                let residuals = check_reflection_law(&c, &q).map_err(validation)?;
                let max = residuals.iter().flatten().cloned().fold(0.0, f64::max);
                return emit(&serde_json::json!({
                    "kind": "verify",
                    "check": "reflection-law",
                    "max_residual": max,
                    "residuals": residuals,
                }));
            }
            if let Some(circum) = doc.circum {
                let verts = circum.iter().map(|&[x, y]| Point::new(x, y)).collect();
                let q = CircumPolygon::new(&c, verts).map_err(validation)?;
                let reports = check_eq5(&c, &q).map_err(validation)?;
                let residuals: Vec<Option<f64>> =
                    reports.iter().map(|r| r.residual).collect();
                let max = residuals.iter().flatten().map(|r| r.abs()).fold(0.0, f64::max);
                return emit(&serde_json::json!({
                    "kind": "verify",
                    "check": "first-order-perimeter",
                    "max_residual": max,
                    "residuals": residuals,
                }));
            }
            Err(CliError::Validation(
                "verify document needs a \"witness\" or \"circum\" field".into(),
            ))
        }
        Cmd::Bench { kind, sizes, seed } => {
            let sizes = sizes.unwrap_or_else(|| match kind {
                BenchKind::MinArea | BenchKind::CircumDiameter => {
                    vec![1024, 2048, 4096, 8192]
                }
                BenchKind::PiTable => vec![32, 64, 128, 256],
            });
            println!("n,wall_ns");
            for n in sizes {
                let c = jittered_ngon(n, seed);
                let start = Instant::now();
                match kind {
                    BenchKind::MinArea => {
                        std::hint::black_box(min_area_inscribed(&c));
                    }
                    BenchKind::PiTable => {
                        std::hint::black_box(build_pi_table(&c));
                    }
                    BenchKind::CircumDiameter => {
                        std::hint::black_box(
                            max_diameter_circumscribed(&c).map_err(validation)?,
                        );
                    }
                }
                println!("{n},{}", start.elapsed().as_nanos());
            }
            Ok(())
        }
        Cmd::Render { input, svg } => {
            let c = load_polygon(&input)?;
            let text = render_svg(&c, &[], &Default::default());
            match svg {
                Some(path) => {
                    fs::write(path, text).map_err(|e| CliError::Internal(e.to_string()))
                }
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
    }
}

/// Parses and dispatches; returns the process exit code.
pub fn run_cli<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return code;
        }
    };
    match run(cli.cmd) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!(
                "{}",
                serde_json::json!({ "error": e.message() })
            );
            e.code()
        }
    }
}
