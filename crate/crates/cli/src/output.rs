//! Versioned output envelope shared by every subcommand.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};

pub const SCHEMA: u32 = 1;
pub const TOOL: &str = "riffle";

#[derive(Clone, Debug, Serialize)]
pub struct Header {
    pub tool: &'static str,
    pub version: &'static str,
    pub config_hash: String,
    pub seed: u64,
}

impl Header {
    pub fn new<C: Serialize>(config: &C, seed: u64) -> Self {
        let bytes = serde_json::to_vec(config).expect("config serialises");
        Header {
            tool: TOOL,
            version: env!("CARGO_PKG_VERSION"),
            config_hash: hex::encode(Sha256::digest(&bytes)),
            seed,
        }
    }
}

/// A finished command result in both renderings.
pub struct Artifact {
    pub json: Value,
    /// Header row followed by data rows, comma separated.
    pub csv: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct Envelope<'a, C> {
    schema: u32,
    header: &'a Header,
    config: &'a C,
    result: &'a Value,
}

pub fn render_json<C: Serialize>(header: &Header, config: &C, artifact: &Artifact) -> String {
    let doc = Envelope {
        schema: SCHEMA,
        header,
        config,
        result: &artifact.json,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("json output");
    s.push('\n');
    s
}

pub fn render_csv(header: &Header, artifact: &Artifact) -> String {
    let mut s = String::new();
    writeln!(s, "# schema: {SCHEMA}").unwrap();
    writeln!(s, "# tool: {} {}", header.tool, header.version).unwrap();
    writeln!(s, "# config_hash: {}", header.config_hash).unwrap();
    writeln!(s, "# seed: {}", header.seed).unwrap();
    for row in &artifact.csv {
        writeln!(s, "{}", row.join(",")).unwrap();
    }
    s
}

pub fn emit(text: &str, out: Option<&Path>) -> std::io::Result<()> {
    match out {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}
