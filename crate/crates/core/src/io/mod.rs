//! The `.qlat` file format: versioned JSON documents describing a lattice, a
//! state-property system, a set of Hilbert-space seeds, or a product job.
//!
//! Parsing is strict. Unknown fields, unknown kinds and unknown versions are
//! errors, and every error carries a line and column.

mod build;
mod render;

use serde::{Deserialize, Serialize};
use serde_json::value::RawValue;
use thiserror::Error;

pub use build::{build, load_file, product_of, Model};
pub use render::{exact_string, render_chsh, render_demo, render_report, render_text_lattice, Format};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("line {line}, column {column}: {message}")]
    Semantic { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Io { path: String, message: String },
}

impl InputError {
    /// `(line, column)` of the error, if it refers to a position.
    pub fn position(&self) -> Option<(usize, usize)> {
        match self {
            InputError::Syntax { line, column, .. } | InputError::Semantic { line, column, .. } => {
                Some((*line, *column))
            }
            InputError::Io { .. } => None,
        }
    }
}

/// One complex entry as `[re_num, re_den, im_num, im_den]`.
pub type Entry = [i64; 4];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub version: u32,
    pub kind: Kind,
    pub elements: Vec<String>,
    /// Generating pairs `[a, b]` for `a ≤ b`; closed reflexively and
    /// transitively.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<[String; 2]>>,
    /// The relation itself, taken as given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub leq: Option<Vec<[String; 2]>>,
    /// Pairs `[a, b]` meaning `a' = b` and `b' = a`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ortho: Option<Vec<[String; 2]>>,
    /// Defaults to the first element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bottom: Option<String>,
    /// Defaults to the last element.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PropertySpec {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub yes: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub no: Option<Vec<String>>,
    /// Same test with outcomes swapped.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub inverse: Option<String>,
    /// Product test over earlier properties.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub product: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpsSpec {
    pub version: u32,
    pub kind: Kind,
    pub states: Vec<String>,
    /// Orthogonal state pairs; derived from the tests when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state_ortho: Option<Vec<[String; 2]>>,
    pub properties: Vec<PropertySpec>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeedSpec {
    pub name: String,
    pub basis: Vec<Vec<Entry>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DirectionSpec {
    pub name: String,
    pub vector: Vec<Entry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HilbertSpec {
    pub version: u32,
    pub kind: Kind,
    pub dimension: usize,
    pub seeds: Vec<SeedSpec>,
    /// Sample states; when present the document describes a state-property
    /// system.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directions: Option<Vec<DirectionSpec>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductSpec {
    pub version: u32,
    pub kind: Kind,
    pub left: Box<SpecDocument>,
    pub right: Box<SpecDocument>,
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub extended: bool,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProduct<'a> {
    version: u32,
    kind: Kind,
    #[serde(borrow)]
    left: &'a RawValue,
    #[serde(borrow)]
    right: &'a RawValue,
    #[serde(default)]
    extended: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    Lattice,
    Sps,
    HilbertSeeds,
    ProductJob,
}

#[derive(Debug, Deserialize)]
struct Header {
    version: u32,
    kind: Kind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum SpecDocument {
    Lattice(LatticeSpec),
    Sps(SpsSpec),
    HilbertSeeds(HilbertSpec),
    ProductJob(ProductSpec),
}

impl SpecDocument {
    pub fn kind(&self) -> Kind {
        match self {
            SpecDocument::Lattice(_) => Kind::Lattice,
            SpecDocument::Sps(_) => Kind::Sps,
            SpecDocument::HilbertSeeds(_) => Kind::HilbertSeeds,
            SpecDocument::ProductJob(_) => Kind::ProductJob,
        }
    }

    /// Pretty JSON, newline-terminated; parses back to an equal document.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// 1-based line and column of a byte offset.
pub(crate) fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let before = &src[..offset.min(src.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

/// Position of the `nth` (0-based) occurrence of `"needle"` in `src`, or the
/// start of the document.
pub(crate) fn locate(src: &str, needle: &str, nth: usize) -> (usize, usize) {
    let quoted = serde_json::to_string(needle).expect("strings serialize");
    src.match_indices(&quoted).nth(nth).map_or((1, 1), |(i, _)| line_col(src, i))
}

fn syntax(src: &str, base: usize, e: serde_json::Error) -> InputError {
    // serde_json positions are relative to the parsed slice.
    let (l, c) = (e.line(), e.column());
    let (bl, bc) = line_col(src, base);
    let (line, column) = if l <= 1 { (bl, bc + c.saturating_sub(1)) } else { (bl + l - 1, c) };
    let message = e.to_string();
    // Drop serde_json's own position suffix, the error already carries one.
    let message = message.split(" at line ").next().unwrap_or(&message).to_string();
    InputError::Syntax { line: line.max(1), column: column.max(1), message }
}

/// Parses a document from text.
pub fn parse_spec(src: &str) -> Result<SpecDocument, InputError> {
    parse_at(src, src, 0)
}

// `text` is a slice of `src` starting at byte `base`.
fn parse_at(src: &str, text: &str, base: usize) -> Result<SpecDocument, InputError> {
    if text.trim().is_empty() {
        let (line, column) = line_col(src, base);
        return Err(InputError::Syntax { line, column, message: "empty document".into() });
    }
    let header: Header = serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            // Missing or mistyped header fields; report against the full parse
            // only when the text is otherwise well-formed.
            match serde_json::from_str::<serde::de::IgnoredAny>(text) {
                Ok(_) => syntax(src, base, e),
                Err(e2) => syntax(src, base, e2),
            }
        } else {
            syntax(src, base, e)
        }
    })?;
    if header.version != FORMAT_VERSION {
        let (line, column) = locate_key(src, base, "version");
        return Err(InputError::Semantic {
            line,
            column,
            message: format!("unsupported format version {} (expected {FORMAT_VERSION})", header.version),
        });
    }
    let doc = match header.kind {
        Kind::Lattice => SpecDocument::Lattice(serde_json::from_str(text).map_err(|e| syntax(src, base, e))?),
        Kind::Sps => SpecDocument::Sps(serde_json::from_str(text).map_err(|e| syntax(src, base, e))?),
        Kind::HilbertSeeds => {
            SpecDocument::HilbertSeeds(serde_json::from_str(text).map_err(|e| syntax(src, base, e))?)
        }
        Kind::ProductJob => {
            let raw: RawProduct = serde_json::from_str(text).map_err(|e| syntax(src, base, e))?;
            let sub = |r: &RawValue| -> Result<SpecDocument, InputError> {
                let s = r.get();
                let off = s.as_ptr() as usize - src.as_ptr() as usize;
                let doc = parse_at(src, s, off)?;
                if !matches!(doc.kind(), Kind::Sps | Kind::HilbertSeeds) {
                    let (line, column) = line_col(src, off);
                    return Err(InputError::Semantic {
                        line,
                        column,
                        message: "product factors must be `sps` or `hilbert-seeds` documents".into(),
                    });
                }
                Ok(doc)
            };
            SpecDocument::ProductJob(ProductSpec {
                version: raw.version,
                kind: raw.kind,
                left: Box::new(sub(raw.left)?),
                right: Box::new(sub(raw.right)?),
                extended: raw.extended,
            })
        }
    };
    Ok(doc)
}

fn locate_key(src: &str, base: usize, key: &str) -> (usize, usize) {
    let quoted = format!("\"{key}\"");
    src[base..].find(&quoted).map_or_else(|| line_col(src, base), |i| line_col(src, base + i))
}
