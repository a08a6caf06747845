//! Command-line surface. Exit codes: 0 when every check passes, 1 when a
//! check fails, 2 on input or usage errors.

use std::io::Write;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};

use crate::axioms::{full_report, full_report_sps};
use crate::demo::{chsh_terms, epr_contradiction_demo, singlet, tensor_instance};
use crate::io::{self, Format, Model};
use crate::lattice::Limits;
use crate::product::{separated_axiom_report, ProductOptions};
use crate::report::FullReport;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "qlat", version, about = "Axiom checks for finite quantum-logic lattices and state-property systems")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = FormatArg::Text, global = true)]
    format: FormatArg,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Full axiom report for a `.qlat` file.
    Check { file: String },
    /// Worked demonstrations.
    Demo {
        #[command(subcommand)]
        which: Demo,
    },
    /// Axiom report for the separated product of two state-property systems.
    Product {
        left: String,
        right: String,
        /// Also generate from the factors' certain-no sets.
        #[arg(long)]
        extended: bool,
    },
    /// Generates the subspace lattice of a `hilbert-seeds` file and checks it.
    GenHilbert { file: String },
}

#[derive(Debug, Subcommand)]
enum Demo {
    /// Two commuting measurements on one space are not separate.
    Epr {
        /// Factor dimensions.
        #[arg(long, num_args = 2, value_names = ["N1", "N2"], default_values_t = [2usize, 2])]
        dim: Vec<usize>,
    },
    /// CHSH combination on the singlet.
    Chsh {
        /// Angles a a' b b' in radians.
        #[arg(long, num_args = 4, value_names = ["A", "A'", "B", "B'"], allow_negative_numbers = true)]
        angles: Option<Vec<f64>>,
    },
}

/// Lattice-size cap, overridable by `QLAT_MAX_ELEMENTS`.
pub fn limits_from_env() -> Result<Limits, String> {
    match std::env::var("QLAT_MAX_ELEMENTS") {
        Err(_) => Ok(Limits::default()),
        Ok(v) => match v.trim().parse::<usize>() {
            Ok(n) if n > 0 => Ok(Limits { max_elements: n }),
            _ => Err(format!("QLAT_MAX_ELEMENTS must be a positive integer, got `{v}`")),
        },
    }
}

/// Runs one invocation; `args` includes the program name.
pub fn run_command<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    match limits_from_env() {
        Ok(limits) => run_with_limits(args, &limits, out, err),
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

pub fn run_with_limits<I, S>(args: I, limits: &Limits, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::{DisplayHelp, DisplayVersion};
            let mut text = e.render().to_string();
            if matches!(e.kind(), DisplayHelp | DisplayVersion) {
                let _ = out.write_all(text.as_bytes());
                return EXIT_PASS;
            }
            if !text.contains("Usage:") {
                text = format!("{text}\n{}\n", Cli::command().render_usage());
            }
            let _ = err.write_all(text.as_bytes());
            return EXIT_INPUT;
        }
    };
    let format = match cli.format {
        FormatArg::Text => Format::Text,
        FormatArg::Json => Format::Json,
    };
    match execute(cli.command, format, limits) {
        Ok((text, code)) => {
            let _ = out.write_all(text.as_bytes());
            code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_INPUT
        }
    }
}

fn verdict(r: &FullReport) -> i32 {
    if r.any_failed() {
        EXIT_FAIL
    } else {
        EXIT_PASS
    }
}

fn model_report(m: &Model) -> FullReport {
    match m {
        Model::Lattice(l) => full_report(l),
        Model::Sps(s) | Model::Hilbert { sps: Some(s), .. } => full_report_sps(s),
        Model::Hilbert { lattice, sps: None } => full_report(&lattice.lattice),
        Model::Product(p) => separated_axiom_report(p),
    }
}

fn read(path: &str) -> Result<(String, io::SpecDocument), String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))?;
    let doc = io::parse_spec(&src).map_err(|e| format!("{path}: {e}"))?;
    Ok((src, doc))
}

fn execute(cmd: Command, format: Format, limits: &Limits) -> Result<(String, i32), String> {
    match cmd {
        Command::Check { file } => {
            let (src, doc) = read(&file)?;
            let m = io::build(&doc, &src, limits).map_err(|e| format!("{file}: {e}"))?;
            let r = model_report(&m);
            Ok((io::render_report(&r, m.lattice(), m.sps(), format), verdict(&r)))
        }
        Command::GenHilbert { file } => {
            let (src, doc) = read(&file)?;
            if doc.kind() != io::Kind::HilbertSeeds {
                return Err(format!("{file}: expected a `hilbert-seeds` document"));
            }
            let m = io::build(&doc, &src, limits).map_err(|e| format!("{file}: {e}"))?;
            let r = model_report(&m);
            let mut text = String::new();
            if format == Format::Text {
                text.push_str(&io::render_text_lattice(m.lattice()));
            }
            text.push_str(&io::render_report(&r, m.lattice(), m.sps(), format));
            Ok((text, verdict(&r)))
        }
        Command::Product { left, right, extended } => {
            let (lsrc, ldoc) = read(&left)?;
            let (rsrc, rdoc) = read(&right)?;
            let p = io::product_of((&ldoc, &lsrc), (&rdoc, &rsrc), ProductOptions { extended_generators: extended }, limits)
                .map_err(|e| format!("{left} × {right}: {e}"))?;
            let r = separated_axiom_report(&p);
            Ok((io::render_report(&r, p.system().lattice(), Some(p.system()), format), verdict(&r)))
        }
        Command::Demo { which: Demo::Epr { dim } } => {
            let j = tensor_instance(dim[0], dim[1]).map_err(|e| e.to_string())?;
            let r = epr_contradiction_demo(&j).map_err(|e| e.to_string())?;
            Ok((io::render_demo(&r, format), EXIT_PASS))
        }
        Command::Demo { which: Demo::Chsh { angles } } => {
            use std::f64::consts::{FRAC_PI_2, FRAC_PI_4};
            let a: [f64; 4] = match angles {
                Some(v) => [v[0], v[1], v[2], v[3]],
                None => [0.0, FRAC_PI_2, FRAC_PI_4, 3.0 * FRAC_PI_4],
            };
            if a.iter().any(|x| !x.is_finite()) {
                return Err("angles must be finite".into());
            }
            let t = chsh_terms(&singlet(), a).map_err(|e| e.to_string())?;
            let s = t[0] - t[1] + t[2] + t[3];
            Ok((io::render_chsh(a, t, s, format), EXIT_PASS))
        }
    }
}
