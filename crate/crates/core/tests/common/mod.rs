#![allow(dead_code)]

use std::path::PathBuf;

use nusp::formats::{parse_machine, parse_network};
use nusp::network::Network;
use nusp::tm::TuringMachine;

pub const MACHINES: [&str; 4] = ["even_as", "anbn", "palindromes", "accept_start"];

pub fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

pub fn machine(name: &str) -> TuringMachine {
    let path = root().join("machines").join(format!("{name}.tm"));
    parse_machine(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

pub fn network(name: &str) -> Network {
    let path = root().join("networks").join(format!("{name}.net"));
    parse_network(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

pub fn shipped(dir: &str, ext: &str) -> Vec<PathBuf> {
    let mut out: Vec<PathBuf> = std::fs::read_dir(root().join(dir))
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == ext))
        .collect();
    out.sort();
    out
}
