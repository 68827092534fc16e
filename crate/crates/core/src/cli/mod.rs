//! Command-line driver: `gen`, `verify` and `render`.

pub mod json;
pub mod svg;
pub mod verify;

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::coverings::{
    assemble_gosper_covering_patch, build_tri_covering_patch, connect_limit_patch, Alpha, CoveringError,
};
use crate::curves::embed;
use crate::foldseq::{Family, FoldSpec};
use crate::lattice::{pt, Pt};
use svg::RenderOptions;
use verify::VerifyConfig;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CONSTRUCTION: i32 = 3;
pub const EXIT_VERIFY: i32 = 4;

pub const MAX_RADIUS: i64 = 2000;

/// Largest spec length accepted by `gen` for each family.
pub fn max_spec_len(family: Family) -> usize {
    match family {
        Family::Square => 24,
        Family::Triangular => 14,
        Family::Gosper => 6,
    }
}

#[derive(Debug, Parser)]
#[command(name = "planefold", version, about = "Plane-filling folding curves: generate, verify, render")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Square,
    Tri,
    Gosper,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Square => Family::Square,
            FamilyArg::Tri => Family::Triangular,
            FamilyArg::Gosper => Family::Gosper,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlphaArg {
    Plus,
    Minus,
    Zero,
}

#[derive(Debug, Clone, clap::Args)]
pub struct RenderArgs {
    /// stroke width in side lengths
    #[arg(long, default_value_t = 0.08)]
    pub stroke_width: f64,
    /// corner rounding radius in side lengths, below 0.5
    #[arg(long, default_value_t = 0.2)]
    pub rounding: f64,
    /// pixels per side length
    #[arg(long, default_value_t = 20.0)]
    pub scale: f64,
}

impl RenderArgs {
    fn options(&self) -> Result<RenderOptions, String> {
        if !(0.0..0.5).contains(&self.rounding) {
            return Err(format!("--rounding must be in [0, 0.5), got {}", self.rounding));
        }
        if !(self.stroke_width > 0.0 && self.scale > 0.0 && self.scale.is_finite() && self.stroke_width.is_finite()) {
            return Err("--stroke-width and --scale must be positive".into());
        }
        Ok(RenderOptions { stroke: self.stroke_width, rounding: self.rounding, scale: self.scale })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a curve or a covering patch.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        /// fold signs, e.g. ++-+
        #[arg(long, allow_hyphen_values = true)]
        spec: String,
        /// start point of a single curve, or anchor of a patch, as a,b
        #[arg(long, value_parser = parse_pt, default_value = "0,0", allow_hyphen_values = true)]
        anchor: Pt,
        /// start direction of a single curve; Peano-Gosper curves with λ1 = - default to 1
        #[arg(long)]
        dir: Option<u8>,
        /// build a covering patch instead of a single curve
        #[arg(long)]
        covering: bool,
        /// hexagonal window radius of a triangular patch
        #[arg(long)]
        radius: Option<i64>,
        /// orientation class (1 or 2) of a triangular patch
        #[arg(long, default_value_t = 1)]
        class: u8,
        /// join the curves through the last prefix point (triangular limit patches)
        #[arg(long, value_enum)]
        alpha: Option<AlphaArg>,
        /// X-prefix x_0;x_1;...;x_n, defaults to the anchor repeated
        #[arg(long, value_parser = parse_prefix, allow_hyphen_values = true)]
        prefix: Option<Prefix>,
        /// JSON output path; JSON goes to stdout when absent
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        render: RenderArgs,
    },
    /// Run a verification suite and print its report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        radius: Option<i64>,
        /// fold signs for the lip suite
        #[arg(long, allow_hyphen_values = true)]
        spec: Option<String>,
        /// report path; the report goes to stdout when absent
        #[arg(long)]
        report: Option<PathBuf>,
    },
    /// Render a curve or patch JSON document to SVG.
    Render {
        #[arg(long)]
        input: PathBuf,
        /// SVG output path; SVG goes to stdout when absent
        #[arg(long)]
        svg: Option<PathBuf>,
        #[command(flatten)]
        render: RenderArgs,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefix(pub Vec<Pt>);

fn parse_pt(s: &str) -> Result<Pt, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b, got `{s}`"))?;
    let a = a.trim().parse::<i64>().map_err(|e| format!("`{a}`: {e}"))?;
    let b = b.trim().parse::<i64>().map_err(|e| format!("`{b}`: {e}"))?;
    Ok(pt(a, b))
}

fn parse_prefix(s: &str) -> Result<Prefix, String> {
    s.split(';').map(parse_pt).collect::<Result<Vec<_>, _>>().map(Prefix)
}

enum Failure {
    Usage(String),
    Construction(String),
    Verify(String),
}

impl Failure {
    fn code(&self) -> i32 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Construction(_) => EXIT_CONSTRUCTION,
            Failure::Verify(_) => EXIT_VERIFY,
        }
    }
}

fn write_out(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn construction(e: CoveringError) -> Failure {
    let name = match &e {
        CoveringError::WindowTooSmall { .. } => "WindowTooSmall",
        CoveringError::InconsistentPrefix(_) => "InconsistentPrefix",
        CoveringError::InvalidPrefix(_) => "InvalidPrefix",
        CoveringError::NotAChild => "NotAChild",
        CoveringError::BadClass(_) => "BadClass",
        CoveringError::Fold(_) => "Fold",
    };
    Failure::Construction(format!("{name}: {e}"))
}

#[allow(clippy::too_many_arguments)]
fn generate(
    family: Family,
    spec: &str,
    anchor: Pt,
    dir: Option<u8>,
    covering: bool,
    radius: Option<i64>,
    class: u8,
    alpha: Option<AlphaArg>,
    prefix: Option<Prefix>,
) -> Result<json::CurveDoc, Failure> {
    let spec = FoldSpec::parse(family, spec).map_err(|e| Failure::Usage(e.to_string()))?;
    if spec.len() > max_spec_len(family) {
        return Err(Failure::Usage(format!("{family} specs are limited to {} signs", max_spec_len(family))));
    }
    if let Some(r) = radius {
        if !(0..=MAX_RADIUS).contains(&r) {
            return Err(Failure::Usage(format!("--radius must be in 0..={MAX_RADIUS}")));
        }
    }
    if !covering {
        let dir = dir.unwrap_or((family == Family::Gosper && spec.signs()[0] < 0) as u8);
        let c = embed(&spec.word(), family, anchor, dir).map_err(|e| Failure::Usage(e.to_string()))?;
        return Ok(json::curve_doc(&c, &spec));
    }
    let prefix = prefix.map(|p| p.0).unwrap_or_else(|| vec![anchor; spec.len() + 1]);
    match family {
        Family::Triangular => {
            let radius = radius.ok_or_else(|| Failure::Usage("triangular patches need --radius".into()))?;
            let patch = match alpha {
                None => build_tri_covering_patch(&spec, anchor, class, radius),
                Some(a) => {
                    let a = match a {
                        AlphaArg::Plus => Alpha::Plus,
                        AlphaArg::Minus => Alpha::Minus,
                        AlphaArg::Zero => Alpha::Zero,
                    };
                    connect_limit_patch(&spec, &prefix, a, class, radius)
                }
            }
            .map_err(construction)?;
            Ok(json::patch_doc(&patch, class))
        }
        Family::Gosper => {
            let a = assemble_gosper_covering_patch(&spec, &prefix).map_err(construction)?;
            Ok(json::patch_doc(&a.patch, 0))
        }
        Family::Square => Err(Failure::Construction("coverings are built for tri and gosper only".into())),
    }
}

/// Diagnostic for a failed report, naming the first counterexample.
pub fn verdict(r: &verify::Report) -> Option<String> {
    if r.pass {
        return None;
    }
    let c = r.first_counterexample.as_deref().unwrap_or("a check failed");
    Some(format!("{} failed: {c}", r.suite))
}

fn run_command(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Gen { family, spec, anchor, dir, covering, radius, class, alpha, prefix, json, svg, render } => {
            let opts = render.options().map_err(Failure::Usage)?;
            let family = Family::from(family);
            let doc = generate(family, &spec, anchor, dir, covering, radius, class, alpha, prefix)?;
            write_out(json.as_deref(), &json::to_string(&doc))?;
            if let Some(p) = svg {
                let (fam, lines) = json::polylines(&doc).map_err(Failure::Construction)?;
                write_out(Some(&p), &svg::render(fam, &lines, &opts))?;
            }
            Ok(())
        }
        Command::Verify { suite, max_n, radius, spec, report } => {
            let cfg = VerifyConfig { suite, max_n, radius, spec };
            if let Some(n) = cfg.max_n {
                let cap = match cfg.suite.as_str() {
                    "square-selfavoid" => 16,
                    "gosper-extensions" => 3,
                    _ => 12,
                };
                if n > cap {
                    return Err(Failure::Usage(format!("--max-n is limited to {cap} for this suite")));
                }
            }
            if cfg.radius.is_some_and(|r| r > MAX_RADIUS) {
                return Err(Failure::Usage(format!("--radius is limited to {MAX_RADIUS}")));
            }
            let r = verify::run_suite(&cfg).map_err(Failure::Usage)?;
            let mut text = serde_json::to_string_pretty(&r).expect("reports serialize");
            text.push('\n');
            write_out(report.as_deref(), &text)?;
            match verdict(&r) {
                None => Ok(()),
                Some(m) => Err(Failure::Verify(m)),
            }
        }
        Command::Render { input, svg, render } => {
            let opts = render.options().map_err(Failure::Usage)?;
            let text = fs::read_to_string(&input)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
            let doc = json::parse(&text).map_err(|e| Failure::Usage(format!("malformed input: {e}")))?;
            let (family, lines) = json::polylines(&doc).map_err(|e| Failure::Usage(format!("malformed input: {e}")))?;
            write_out(svg.as_deref(), &svg::render(family, &lines, &opts))
        }
    }
}

/// Parses arguments (including the program name) and runs; returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run_command(cli.command) {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Construction(m) | Failure::Verify(m)) = &f;
            eprintln!("planefold: {m}");
            f.code()
        }
    }
}
