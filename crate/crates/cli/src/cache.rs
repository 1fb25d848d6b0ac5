//! On-disk cache of Gauss-sum tables, enabled by `GAUSSREL_CACHE_DIR`.
//! Files are little-endian: a header with `p, f, m`, the level modulus and
//! `N`, followed by `N` pairs of `f64`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::sync::Arc;

use gaussrel::charsums::GaussTable;
use gaussrel::field::FieldCtx;
use gaussrel::{Error, Result};
use num_complex::Complex64;

pub const ENV: &str = "GAUSSREL_CACHE_DIR";

fn header(ctx: &FieldCtx) -> Vec<u64> {
    let pr = ctx.params();
    let mut h = vec![pr.p, pr.f as u64, pr.m as u64, ctx.modulus().len() as u64];
    h.extend_from_slice(ctx.modulus());
    h.push(ctx.group_order());
    h
}

fn path_for(dir: &str, ctx: &FieldCtx) -> PathBuf {
    let pr = ctx.params();
    PathBuf::from(dir).join(format!("gauss_p{}_f{}_m{}.bin", pr.p, pr.f, pr.m))
}

fn load(path: &PathBuf, head: &[u64]) -> io::Result<Option<Vec<Complex64>>> {
    let mut buf = Vec::new();
    fs::File::open(path)?.read_to_end(&mut buf)?;
    let words: Vec<[u8; 8]> = buf.chunks_exact(8).map(|c| c.try_into().unwrap()).collect();
    if words.len() < head.len() || head.iter().zip(&words).any(|(h, w)| *h != u64::from_le_bytes(*w)) {
        return Ok(None);
    }
    let body = &words[head.len()..];
    let n = *head.last().unwrap() as usize;
    if body.len() != 2 * n {
        return Ok(None);
    }
    Ok(Some(
        body.chunks_exact(2)
            .map(|p| Complex64::new(f64::from_le_bytes(p[0]), f64::from_le_bytes(p[1])))
            .collect(),
    ))
}

fn store(path: &PathBuf, head: &[u64], values: &[Complex64]) -> io::Result<()> {
    let mut buf = Vec::with_capacity(8 * (head.len() + 2 * values.len()));
    for h in head {
        buf.extend_from_slice(&h.to_le_bytes());
    }
    for v in values {
        buf.extend_from_slice(&v.re.to_le_bytes());
        buf.extend_from_slice(&v.im.to_le_bytes());
    }
    let tmp = path.with_extension("tmp");
    fs::File::create(&tmp)?.write_all(&buf)?;
    fs::rename(tmp, path)
}

/// The level-`m` table over `F_{p^f}`, read from or written to the cache
/// directory when one is configured.
pub fn table(p: u64, f: u32, m: u32) -> Result<GaussTable> {
    let dir = std::env::var(ENV).ok().filter(|d| !d.is_empty());
    let Some(dir) = dir else {
        return GaussTable::for_level(p, f, m);
    };
    let ctx = Arc::new(gaussrel::field::Tower::new(p, f, m)?.level(m)?);
    let head = header(&ctx);
    let path = path_for(&dir, &ctx);
    if let Ok(Some(values)) = load(&path, &head) {
        return GaussTable::from_values(ctx, values);
    }
    let table = GaussTable::new(ctx)?;
    fs::create_dir_all(&dir)
        .and_then(|_| store(&path, &head, table.values()))
        .map_err(|e| Error::InvalidParams(format!("cache {}: {e}", path.display())))?;
    Ok(table)
}
