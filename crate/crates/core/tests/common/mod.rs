#![allow(dead_code)]

pub mod oracle;
pub mod props;

use qlat::io::{self, Model, SpecDocument};
use qlat::lattice::Limits;

pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

pub fn fixture_src(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn load(name: &str) -> (SpecDocument, Model) {
    io::load_file(&fixture_path(name), &Limits::default()).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub const FIXTURES: [&str; 10] = [
    "benzene.qlat",
    "boolean8.qlat",
    "chain4.qlat",
    "classical2.qlat",
    "classical2-qubit4.qlat",
    "mo2.qlat",
    "qubit3.qlat",
    "qubit4.qlat",
    "qubit4-pair.qlat",
    "wood.qlat",
];
