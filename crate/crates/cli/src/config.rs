//! Flat `key = value` run files. Each key is a long flag of the subcommand;
//! repeated keys are passed repeatedly, `#` starts a comment, and a bare key
//! stands for a switch. Values from the command line take precedence.

use std::fs;
use std::path::Path;

pub fn read(path: &Path) -> Result<Vec<String>, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn parse(text: &str) -> Result<Vec<String>, String> {
    let mut args = Vec::new();
    for (no, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = match line.split_once('=') {
            Some((k, v)) => (k.trim(), Some(v.trim())),
            None => (line, None),
        };
        if key.is_empty() || !key.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_') {
            return Err(format!("line {}: bad key `{key}`", no + 1));
        }
        args.push(format!("--{}", key.replace('_', "-")));
        if let Some(v) = value {
            args.push(v.to_string());
        }
    }
    Ok(args)
}

/// Splices `--config FILE` contents in right after the subcommand name.
pub fn expand(argv: Vec<String>, subcommands: &[&str]) -> Result<Vec<String>, String> {
    let mut rest = Vec::with_capacity(argv.len());
    let mut file = None;
    let mut it = argv.into_iter();
    while let Some(a) = it.next() {
        if a == "--config" {
            file = Some(it.next().ok_or("--config needs a path")?);
        } else if let Some(p) = a.strip_prefix("--config=") {
            file = Some(p.to_string());
        } else {
            rest.push(a);
        }
    }
    let Some(file) = file else { return Ok(rest) };
    let extra = read(Path::new(&file))?;
    let pos = rest
        .iter()
        .position(|a| subcommands.contains(&a.as_str()))
        .ok_or("--config needs a subcommand")?;
    rest.splice(pos + 1..pos + 1, extra);
    Ok(rest)
}
