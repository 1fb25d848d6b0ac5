use std::fs::File;
use std::io::{self, Write};

use serde::Serialize;

use crate::{Failure, Globals, OutArgs};

#[derive(Serialize)]
struct Manifest<'a, A: Serialize> {
    tool: &'static str,
    version: &'static str,
    command: &'a str,
    config: &'a A,
    seed: u64,
    threads: usize,
    tolerances: serde_json::Value,
    outputs: Vec<String>,
}

fn io_err(e: io::Error) -> Failure {
    Failure::Usage(e.to_string())
}

pub fn sink(path: &Option<String>) -> Result<Box<dyn Write>, Failure> {
    Ok(match path {
        Some(p) => Box::new(File::create(p).map_err(|e| Failure::Usage(format!("{p}: {e}")))?),
        None => Box::new(io::stdout().lock()),
    })
}

/// Writes rows as CSV, then the run manifest.
pub fn emit<A: Serialize>(
    out: &OutArgs,
    command: &str,
    config: &A,
    g: &Globals,
    tolerances: serde_json::Value,
    header: &[&str],
    rows: &[Vec<String>],
) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(sink(&out.out)?);
    w.write_record(header).map_err(|e| Failure::Usage(e.to_string()))?;
    for r in rows {
        w.write_record(r).map_err(|e| Failure::Usage(e.to_string()))?;
    }
    w.flush().map_err(io_err)?;
    let manifest = Manifest {
        tool: "gaussrel",
        version: env!("CARGO_PKG_VERSION"),
        command,
        config,
        seed: g.seed,
        threads: g.threads,
        tolerances,
        outputs: out.out.iter().cloned().collect(),
    };
    let text = serde_json::to_string_pretty(&manifest).map_err(|e| Failure::Usage(e.to_string()))?;
    let path = out.manifest.clone().or_else(|| out.out.as_ref().map(|p| format!("{p}.manifest.json")));
    match path {
        Some(p) => std::fs::write(&p, text + "\n").map_err(|e| Failure::Usage(format!("{p}: {e}"))),
        None => {
            eprintln!("{text}");
            Ok(())
        }
    }
}

pub fn float(x: f64) -> String {
    format!("{x:.17e}")
}

pub fn tuple(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}
