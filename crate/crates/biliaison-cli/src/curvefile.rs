//! Text format for curves:
//!
//! ```text
//! ring p=32003 base=field
//! gens:
//! XZ-Y^2
//! YW-Z^2
//! XW-YZ
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use biliaison::groebner::Ideal;
use biliaison::polyring::Poly;
use biliaison::scalars::{BaseKind, BaseRing};
use biliaison::Error;

#[derive(Clone, Debug, PartialEq)]
pub struct CurveFile {
    pub ring: BaseRing,
    pub gens: Vec<Poly>,
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

pub fn parse_ring(line: &str) -> Result<BaseRing, Error> {
    let mut words = line.split_whitespace();
    if words.next() != Some("ring") {
        return Err(parse_err("first line must be `ring p=<prime> base=<field|dual>`"));
    }
    let (mut p, mut kind) = (None, None);
    for w in words {
        match w.split_once('=') {
            Some(("p", v)) => p = Some(v.parse::<u32>().map_err(|_| parse_err(format!("bad prime `{v}`")))?),
            Some(("base", "field")) => kind = Some(BaseKind::PrimeField),
            Some(("base", "dual")) => kind = Some(BaseKind::DualNumbers),
            _ => return Err(parse_err(format!("unexpected header field `{w}`"))),
        }
    }
    let (Some(p), Some(kind)) = (p, kind) else {
        return Err(parse_err("header needs both p= and base="));
    };
    BaseRing::new(kind, p).map_err(|_| parse_err(format!("p={p} is not a supported prime")))
}

pub fn render_ring(ring: BaseRing) -> String {
    format!("ring p={} base={}", ring.p, if ring.is_dual() { "dual" } else { "field" })
}

impl CurveFile {
    pub fn parse(text: &str) -> Result<CurveFile, Error> {
        let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
        let ring = parse_ring(lines.next().ok_or_else(|| parse_err("empty curve file"))?)?;
        if lines.next() != Some("gens:") {
            return Err(parse_err("second line must be `gens:`"));
        }
        let gens = lines.map(|l| Poly::parse(ring, l)).collect::<Result<Vec<_>, _>>()?;
        if gens.is_empty() {
            return Err(parse_err("no generators"));
        }
        Ok(CurveFile { ring, gens })
    }

    pub fn from_ideal(i: &Ideal) -> CurveFile {
        CurveFile { ring: i.ring, gens: i.gens().to_vec() }
    }

    pub fn render(&self) -> String {
        let mut out = render_ring(self.ring);
        out.push_str("\ngens:\n");
        for g in &self.gens {
            out.push_str(&g.to_string());
            out.push('\n');
        }
        out
    }

    /// The same generators over the dual numbers (a constant family).
    pub fn to_dual(&self) -> CurveFile {
        let ring = BaseRing::dual(self.ring.p);
        CurveFile { ring, gens: self.gens.iter().map(|g| g.change_ring(ring)).collect() }
    }

    pub fn ideal(&self) -> Result<Ideal, Error> {
        Ideal::new(self.ring, self.gens.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "ring p=32003 base=dual\ngens:\nX + e*Y\nZ^2 - Y*W\n";
        let f = CurveFile::parse(text).unwrap();
        assert!(f.ring.is_dual());
        assert_eq!(CurveFile::parse(&f.render()).unwrap(), f);
    }

    #[test]
    fn rejects_bad_headers() {
        for bad in ["", "ring p=4 base=field\ngens:\nX", "ring p=7\ngens:\nX", "ring p=7 base=field\nX", "ring p=7 base=field\ngens:\nX+*"] {
            assert!(matches!(CurveFile::parse(bad), Err(Error::Parse(_))), "{bad}");
        }
    }
}
