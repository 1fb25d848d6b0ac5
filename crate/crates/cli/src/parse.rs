//! Small value grammars shared by the subcommands.

use gaussrel::arith::is_prime;
use gaussrel::characters::LimitCharacter;
use gaussrel::equidist::{AExpr, Entry, SweepEntry};

/// `"1..8"` (inclusive), `"1,2,4"` or a single value.
pub fn levels(s: &str) -> Result<Vec<u32>, String> {
    let s = s.trim();
    let out: Vec<u32> = if let Some((lo, hi)) = s.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
        let hi: u32 = hi.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
        (lo..=hi).collect()
    } else {
        list::<u32>(s)?
    };
    if out.is_empty() || out.contains(&0) {
        return Err(format!("`{s}` must name at least one positive level"));
    }
    Ok(out)
}

pub fn list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().map_err(|_| format!("cannot parse `{t}`")))
        .collect()
}

pub fn ints(s: &str) -> Result<Vec<i64>, String> {
    let t = s.trim();
    let t = t.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(t);
    let v = list::<i64>(t)?;
    if v.is_empty() {
        return Err("empty integer tuple".into());
    }
    Ok(v)
}

/// `"5..97"` gives every prime in the range; otherwise a comma list.
pub fn primes(s: &str) -> Result<Vec<u64>, String> {
    let out: Vec<u64> = match s.split_once("..") {
        Some((lo, hi)) => {
            let lo: u64 = lo.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
            let hi: u64 = hi.trim().parse().map_err(|_| format!("bad range `{s}`"))?;
            (lo..=hi).filter(|&n| is_prime(n)).collect()
        }
        None => list(s)?,
    };
    if out.is_empty() {
        return Err(format!("`{s}` contains no primes"));
    }
    Ok(out)
}

struct RawEntry {
    eta: LimitCharacter,
    a: Vec<String>,
    t: Option<Vec<u64>>,
}

fn raw_entry(s: &str) -> Result<RawEntry, String> {
    let mut eta = None;
    let mut a = None;
    let mut t = None;
    for part in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (k, v) = part.split_once('=').ok_or_else(|| format!("expected key=value, found `{part}`"))?;
        let v = v.trim();
        let inner = v.strip_prefix('(').and_then(|x| x.strip_suffix(')')).unwrap_or(v);
        match k.trim() {
            "eta" => eta = Some(v.parse::<LimitCharacter>().map_err(|e| e.to_string())?),
            "a" => a = Some(inner.split(',').map(|x| x.trim().to_string()).collect::<Vec<_>>()),
            "t" => t = Some(list::<u64>(inner)?),
            other => return Err(format!("unknown entry key `{other}`")),
        }
    }
    Ok(RawEntry {
        eta: eta.unwrap_or_else(LimitCharacter::trivial),
        a: a.ok_or("entry needs a=(...)")?,
        t,
    })
}

/// `"eta=u/v; a=(a1,...,ar); t=(l1,...,lr)"`; `eta` defaults to the trivial
/// character and `t` (level-1 discrete logs) to zero.
pub fn entry(s: &str) -> Result<Entry, String> {
    let raw = raw_entry(s)?;
    let a = raw
        .a
        .iter()
        .map(|x| x.parse::<i64>().map_err(|_| format!("bad exponent `{x}`")))
        .collect::<Result<Vec<_>, _>>()?;
    let mut e = Entry::new(raw.eta, a);
    if let Some(t) = raw.t {
        e = e.with_t(t);
    }
    Ok(e)
}

/// Like [`entry`], with exponents that may mention `q-1`.
pub fn sweep_entry(s: &str) -> Result<SweepEntry, String> {
    let raw = raw_entry(s)?;
    if raw.t.is_some() {
        return Err("sweep entries take no t".into());
    }
    let a = raw
        .a
        .iter()
        .map(|x| x.parse::<AExpr>().map_err(|e| e.to_string()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SweepEntry { eta: raw.eta, a })
}

/// `"1/2,1/3"`: a list of characters.
pub fn characters(s: &str) -> Result<Vec<LimitCharacter>, String> {
    list::<LimitCharacter>(s)
}
