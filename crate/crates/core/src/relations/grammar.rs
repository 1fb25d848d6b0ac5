//! Text form of monomials: `[eta=u/v; a=(a1,...,ar); exp=e]` factors joined
//! by `*`. `1` or an empty string is the identity.

use super::monomial::GaussMonomial;
use crate::characters::LimitCharacter;
use crate::error::{Error, Result};

struct Cursor<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn rest(&self) -> &'a str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(tok) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, tok: &str) -> Result<()> {
        if self.eat(tok) {
            Ok(())
        } else {
            self.err(format!("expected '{tok}'"))
        }
    }

    fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos == self.src.len()
    }

    fn token(&mut self, allowed: impl Fn(char) -> bool) -> (usize, &'a str) {
        self.skip_ws();
        let start = self.pos;
        let len = self.rest().find(|c: char| !allowed(c)).unwrap_or(self.rest().len());
        self.pos += len;
        (start, &self.src[start..self.pos])
    }

    fn int(&mut self) -> Result<i64> {
        let (start, tok) = self.token(|c| c.is_ascii_digit() || c == '-' || c == '+');
        tok.parse().map_err(|_| Error::Parse { pos: start, msg: format!("expected an integer, found '{tok}'") })
    }

    fn character(&mut self) -> Result<LimitCharacter> {
        let (start, tok) = self.token(|c| c.is_ascii_digit() || c == '-' || c == '/');
        tok.parse::<LimitCharacter>()
            .map_err(|_| Error::Parse { pos: start, msg: format!("expected a fraction u/v, found '{tok}'") })
    }
}

type Factor = (usize, LimitCharacter, Vec<i64>, i64);

fn factor(c: &mut Cursor) -> Result<Factor> {
    c.skip_ws();
    let start = c.pos;
    c.expect("[")?;
    c.expect("eta")?;
    c.expect("=")?;
    let eta = c.character()?;
    c.expect(";")?;
    c.expect("a")?;
    c.expect("=")?;
    c.expect("(")?;
    let mut a = vec![c.int()?];
    while c.eat(",") {
        a.push(c.int()?);
    }
    c.expect(")")?;
    let exp = if c.eat(";") {
        c.expect("exp")?;
        c.expect("=")?;
        c.int()?
    } else {
        1
    };
    c.expect("]")?;
    Ok((start, eta, a, exp))
}

/// Parses a monomial over `F_q`. `r` fixes the dimension; it may be omitted
/// when the text has at least one factor.
pub fn parse_monomial(src: &str, r: Option<usize>, q: u64) -> Result<GaussMonomial> {
    let mut c = Cursor { src, pos: 0 };
    let mut factors = Vec::new();
    if !c.at_end() && !c.eat("1") {
        factors.push(factor(&mut c)?);
        while c.eat("*") {
            factors.push(factor(&mut c)?);
        }
    }
    if !c.at_end() {
        return c.err("unexpected trailing input");
    }
    let r = match (r, factors.first()) {
        (Some(r), _) => r,
        (None, Some((_, _, a, _))) => a.len(),
        (None, None) => return Err(Error::Parse { pos: 0, msg: "dimension unknown for the empty monomial".into() }),
    };
    let mut x = GaussMonomial::one(r, q)?;
    for (pos, eta, a, e) in factors {
        if a.len() != r {
            return Err(Error::Parse { pos, msg: format!("expected {r} exponents, found {}", a.len()) });
        }
        x.insert(eta, a, e).map_err(|err| Error::Parse { pos, msg: err.to_string() })?;
    }
    Ok(x)
}
