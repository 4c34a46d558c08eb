//! Command-line frontend.
//!
//! Exit codes: 0 for success, a good labeling or a valid spec; 1 for a
//! negative mathematical answer; 2 for unreadable or invalid input; 3 for
//! usage errors.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use snf_core::construct::{expand, random_valid_spec, GeneratorRecipe};
use snf_core::glp::{
    classify_k, closed_slices, decide_glp, decide_glp_even, decide_glp_odd, glp_via_slices, slice_subspec,
    slices, AlwaysReason, GlpError, KClass, SlicePlace, Verdict,
};
use snf_core::model::{catalog, validate, CATALOG_NAMES};
use snf_core::FractalSpec;

use crate::format::{parse_spec, report_text, serialize_spec, serialize_spec_with_comments, serialize_verdict};
use crate::render::{render_svg, RenderOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "snf", version, about = "Level-1 nested fractal configurations and good labelings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    General,
    Even,
    Odd,
    Slices,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Glp,
    Noglp,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the axioms and print a report.
    Validate { file: PathBuf },
    /// Decide the good labeling property.
    Decide {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "general")]
        method: Method,
    },
    /// Decide and draw the labeled configuration.
    Label {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long)]
        slices: bool,
        #[arg(long)]
        classes: bool,
    },
    /// Print slice membership, or extract the selected slices as a spec.
    Slices {
        file: PathBuf,
        #[arg(long)]
        closed: bool,
        #[arg(long = "index")]
        index: Vec<usize>,
    },
    /// Substitute the configuration into itself.
    Expand {
        file: PathBuf,
        #[arg(long)]
        level: usize,
    },
    /// Emit a generated example or counterexample.
    Generate {
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit a classical configuration; lists the names without `--name`.
    Catalog {
        #[arg(long)]
        name: Option<String>,
    },
    /// Emit a seeded random configuration.
    Random {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        cells: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        symmetrize: bool,
    },
    /// Say whether every configuration with this k has a good labeling.
    Classify {
        #[arg(long)]
        k: usize,
    },
}

/// Operational failure: message plus exit code.
struct Failure(i32, String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(EXIT_INVALID, e.to_string())
    }
}

fn read_spec(path: &Path) -> Result<FractalSpec, Failure> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s)?;
        s
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?
    };
    Ok(parse_spec(&text)?)
}

fn verdict_code(verdict: &Verdict) -> i32 {
    if verdict.is_glp() {
        EXIT_OK
    } else {
        EXIT_NEGATIVE
    }
}

fn decide_with(spec: &FractalSpec, method: Method) -> Result<Verdict, GlpError> {
    match method {
        Method::General => decide_glp(spec),
        Method::Even => decide_glp_even(spec).map(|d| d.verdict),
        Method::Odd => decide_glp_odd(spec),
        Method::Slices => glp_via_slices(spec),
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Validate { file } => {
            let report = validate(&read_spec(&file)?);
            out.write_all(report_text(&report).as_bytes())?;
            Ok(if report.is_valid() { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Decide { file, method } => {
            let verdict = decide_with(&read_spec(&file)?, method)?;
            out.write_all(serialize_verdict(&verdict).as_bytes())?;
            Ok(verdict_code(&verdict))
        }
        Command::Label {
            file,
            svg,
            slices,
            classes,
        } => {
            let spec = read_spec(&file)?;
            let verdict = decide_glp(&spec)?;
            let options = RenderOptions {
                show_labels: true,
                show_classes: classes,
                show_slices: slices,
                ..RenderOptions::default()
            };
            std::fs::write(&svg, render_svg(&spec, Some(&verdict), &options))
                .map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", svg.display())))?;
            out.write_all(serialize_verdict(&verdict).as_bytes())?;
            Ok(verdict_code(&verdict))
        }
        Command::Slices { file, closed, index } => {
            let spec = read_spec(&file)?;
            if !index.is_empty() {
                let sub = slice_subspec(&spec, &index, closed)?;
                out.write_all(serialize_spec(&sub).as_bytes())?;
            } else if closed {
                for (i, cells) in closed_slices(&spec).iter().enumerate() {
                    let list: Vec<String> = cells.iter().map(usize::to_string).collect();
                    writeln!(out, "slice {}{}{}", i + 1, if list.is_empty() { "" } else { " " }, list.join(" "))?;
                }
            } else {
                for (i, place) in slices(&spec).into_iter().enumerate() {
                    match place {
                        SlicePlace::Central => writeln!(out, "cell {i} central")?,
                        SlicePlace::Sector { index, on_axis } => {
                            writeln!(out, "cell {i} slice {index}{}", if on_axis { " axis" } else { "" })?
                        }
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Expand { file, level } => {
            let expanded = expand(&read_spec(&file)?, level)?;
            out.write_all(serialize_spec(&expanded).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Generate { k, kind, out: target } => {
            let recipe = match kind {
                Kind::Glp => GeneratorRecipe::glp_example(k),
                Kind::Noglp => GeneratorRecipe::counterexample(k),
            }?;
            let text = serialize_spec_with_comments(&recipe.build()?, &recipe.comment_lines());
            match target {
                Some(path) => std::fs::write(&path, text)
                    .map_err(|e| Failure(EXIT_INVALID, format!("{}: {e}", path.display())))?,
                None => out.write_all(text.as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Catalog { name } => {
            match name {
                Some(name) => out.write_all(serialize_spec(&catalog(&name)?).as_bytes())?,
                None => {
                    for name in CATALOG_NAMES {
                        writeln!(out, "{name}")?;
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Random {
            k,
            cells,
            seed,
            symmetrize,
        } => {
            let spec = random_valid_spec(k, cells, seed, symmetrize)?;
            let comments = vec![format!(
                "# random k={k} cells={cells} seed={seed}{}",
                if symmetrize { " symmetrize" } else { "" }
            )];
            out.write_all(serialize_spec_with_comments(&spec, &comments).as_bytes())?;
            Ok(EXIT_OK)
        }
        Command::Classify { k } => {
            let text = match classify_k(k)? {
                KClass::AlwaysGlp(AlwaysReason::Prime) => "AlwaysGLP(prime)",
                KClass::AlwaysGlp(AlwaysReason::PowerOfTwo) => "AlwaysGLP(power_of_two)",
                KClass::Conditional => "Conditional",
            };
            writeln!(out, "{text}")?;
            Ok(EXIT_OK)
        }
    }
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
            } else {
                let _ = out.write_all(text.as_bytes());
            }
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(Failure(code, message)) => {
            let _ = writeln!(err, "snf: {message}");
            code
        }
    }
}
