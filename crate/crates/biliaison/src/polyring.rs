//! The graded ring `R_A = A[X,Y,Z,W]`.
//!
//! Internally a dual number `a + bε` is spread over two monomials, `m` and
//! `E·m`, where `E` is a fifth variable of weight zero with `E² = 0`. Over a
//! prime field `E` never occurs. This lets one Gröbner engine over `F_p`
//! serve both base rings.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::scalars::{add_mod, mul_mod, neg_mod, sub_mod, BaseRing, Scalar};

pub const VAR_NAMES: [&str; 4] = ["X", "Y", "Z", "W"];
pub const EPS: usize = 4;

/// A monomial in `X, Y, Z, W, E`, packed so that integer comparison is the
/// default term order: weighted degree (E has weight 0), then grevlex on all
/// five variables.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mon(u64);

impl Mon {
    pub const ONE: Mon = Mon::new([0, 0, 0, 0, 0]);

    pub const fn new(e: [u8; 5]) -> Mon {
        let d4 = e[0] as u64 + e[1] as u64 + e[2] as u64 + e[3] as u64;
        let t5 = d4 + e[4] as u64;
        Mon((d4 << 56)
            | (t5 << 48)
            | ((255 - e[4] as u64) << 40)
            | ((255 - e[3] as u64) << 32)
            | ((255 - e[2] as u64) << 24)
            | ((255 - e[1] as u64) << 16)
            | ((e[0] as u64) << 8))
    }

    pub fn var(i: usize) -> Mon {
        let mut e = [0u8; 5];
        e[i] = 1;
        Mon::new(e)
    }

    #[inline]
    pub fn exps(self) -> [u8; 5] {
        let k = self.0;
        [
            ((k >> 8) & 255) as u8,
            (255 - ((k >> 16) & 255)) as u8,
            (255 - ((k >> 24) & 255)) as u8,
            (255 - ((k >> 32) & 255)) as u8,
            (255 - ((k >> 40) & 255)) as u8,
        ]
    }

    /// Degree in `X, Y, Z, W` (the grading; `E` has degree 0).
    #[inline]
    pub fn deg(self) -> i32 {
        (self.0 >> 56) as i32
    }

    #[inline]
    pub fn eps(self) -> u8 {
        (255 - ((self.0 >> 40) & 255)) as u8
    }

    /// Every field of the packing is additive once the `255 - e` offsets are
    /// removed, so a product is a plain integer sum.
    #[inline]
    pub fn mul(self, o: Mon) -> Mon {
        Mon(self.0 + o.0 - Mon::ONE.0)
    }

    #[inline]
    pub fn raw(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn from_raw(k: u64) -> Mon {
        Mon(k)
    }

    #[inline]
    pub fn divides(self, o: Mon) -> bool {
        let (a, b) = (self.exps(), o.exps());
        a[0] <= b[0] && a[1] <= b[1] && a[2] <= b[2] && a[3] <= b[3] && a[4] <= b[4]
    }

    /// `o / self`, assuming divisibility.
    #[inline]
    pub fn quotient_of(self, o: Mon) -> Mon {
        Mon(o.0 - self.0 + Mon::ONE.0)
    }

    pub fn lcm(self, o: Mon) -> Mon {
        let (a, b) = (self.exps(), o.exps());
        Mon::new([
            a[0].max(b[0]),
            a[1].max(b[1]),
            a[2].max(b[2]),
            a[3].max(b[3]),
            a[4].max(b[4]),
        ])
    }

    pub fn strip_eps(self) -> Mon {
        let e = self.exps();
        Mon::new([e[0], e[1], e[2], e[3], 0])
    }

    pub fn with_eps(self, k: u8) -> Mon {
        let e = self.exps();
        Mon::new([e[0], e[1], e[2], e[3], k])
    }

    pub fn exps4(self) -> [u8; 4] {
        let e = self.exps();
        [e[0], e[1], e[2], e[3]]
    }
}

impl fmt::Debug for Mon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", mon_string(*self))
    }
}

fn mon_string(m: Mon) -> String {
    let e = m.exps();
    let mut parts = Vec::new();
    if e[4] > 0 {
        parts.push(if e[4] == 1 { "e".to_string() } else { format!("e^{}", e[4]) });
    }
    for i in 0..4 {
        match e[i] {
            0 => {}
            1 => parts.push(VAR_NAMES[i].to_string()),
            k => parts.push(format!("{}^{}", VAR_NAMES[i], k)),
        }
    }
    parts.join("*")
}

/// Number of monomials of degree `n` in four variables.
pub fn graded_piece_dim(n: i64) -> u64 {
    if n < 0 {
        return 0;
    }
    let n = n as u64;
    (n + 3) * (n + 2) * (n + 1) / 6
}

/// All `E`-free monomials of degree `n`, in decreasing term order.
pub fn monomials_of_degree(n: i32) -> Vec<Mon> {
    let mut out = Vec::new();
    if n < 0 {
        return out;
    }
    let n = n as u8;
    for a in 0..=n {
        for b in 0..=(n - a) {
            for c in 0..=(n - a - b) {
                out.push(Mon::new([a, b, c, n - a - b - c, 0]));
            }
        }
    }
    out.sort_unstable_by(|x, y| y.cmp(x));
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    Lex,
    /// The first `block` variables are eliminated: compare their total
    /// degree first, then fall back to grevlex.
    Elimination(usize),
}

impl MonomialOrder {
    /// Compares `E`-free parts; ties are broken by the `E` exponent.
    pub fn cmp(&self, a: Mon, b: Mon) -> Ordering {
        let (ea, eb) = (a.exps(), b.exps());
        let by_order = match self {
            MonomialOrder::GrevLex => a.strip_eps().cmp(&b.strip_eps()),
            MonomialOrder::Lex => ea[..4].cmp(&eb[..4]),
            MonomialOrder::Elimination(k) => {
                let k = (*k).min(4);
                let da: u32 = ea[..k].iter().map(|&x| x as u32).sum();
                let db: u32 = eb[..k].iter().map(|&x| x as u32).sum();
                da.cmp(&db).then_with(|| a.strip_eps().cmp(&b.strip_eps()))
            }
        };
        by_order.then(ea[4].cmp(&eb[4]))
    }
}

/// A polynomial over `A`, stored as `F_p`-coefficients on monomials in
/// `X, Y, Z, W, E` (E-exponent at most one), sorted decreasingly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    pub ring: BaseRing,
    terms: Vec<(Mon, u32)>,
}

impl Poly {
    pub fn zero(ring: BaseRing) -> Poly {
        Poly { ring, terms: Vec::new() }
    }

    pub fn one(ring: BaseRing) -> Poly {
        Poly::constant(ring, ring.one())
    }

    pub fn constant(ring: BaseRing, c: Scalar) -> Poly {
        Poly::monomial(ring, [0; 4], c)
    }

    pub fn var(ring: BaseRing, i: usize) -> Poly {
        let mut e = [0u8; 4];
        e[i] = 1;
        Poly::monomial(ring, e, ring.one())
    }

    pub fn monomial(ring: BaseRing, e: [u8; 4], c: Scalar) -> Poly {
        let m = Mon::new([e[0], e[1], e[2], e[3], 0]);
        let mut terms = Vec::new();
        if c.b != 0 && ring.is_dual() {
            terms.push((m.with_eps(1), c.b));
        }
        if c.a != 0 {
            terms.push((m, c.a));
        }
        Poly { ring, terms }
    }

    /// Builds from raw terms over `F_p`; sorts, merges and drops `E²`.
    pub fn from_raw(ring: BaseRing, mut raw: Vec<(Mon, u32)>) -> Poly {
        let p = ring.p;
        raw.retain(|(m, c)| *c % p != 0 && m.eps() <= if ring.is_dual() { 1 } else { 0 });
        raw.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut terms: Vec<(Mon, u32)> = Vec::with_capacity(raw.len());
        for (m, c) in raw {
            let c = c % p;
            match terms.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = add_mod(*lc, c, p),
                _ => terms.push((m, c)),
            }
        }
        terms.retain(|t| t.1 != 0);
        Poly { ring, terms }
    }

    /// A uniformly random form of degree `d` (including the `ε`-part on the
    /// dual base).
    pub fn random_form(ring: BaseRing, d: i32, rng: &mut impl rand::Rng) -> Poly {
        let mut raw = Vec::new();
        for m in monomials_of_degree(d) {
            raw.push((m, rng.gen_range(0..ring.p)));
            if ring.is_dual() {
                raw.push((m.with_eps(1), rng.gen_range(0..ring.p)));
            }
        }
        Poly::from_raw(ring, raw)
    }

    pub fn raw_terms(&self) -> &[(Mon, u32)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    /// Degree of the leading term (in `X, Y, Z, W`).
    pub fn degree(&self) -> Option<i32> {
        self.terms.first().map(|t| t.0.deg())
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some(t) => self.terms.iter().all(|s| s.0.deg() == t.0.deg()),
        }
    }

    /// Coefficient of the `E`-free monomial with exponent `e`.
    pub fn coefficient(&self, e: [u8; 4]) -> Scalar {
        let m = Mon::new([e[0], e[1], e[2], e[3], 0]);
        let mut s = Scalar::default();
        for &(t, c) in &self.terms {
            if t == m {
                s.a = c;
            } else if t == m.with_eps(1) {
                s.b = c;
            }
        }
        s
    }

    /// Terms as exponent vector → scalar, in decreasing grevlex order.
    pub fn terms(&self) -> Vec<([u8; 4], Scalar)> {
        let mut out: Vec<([u8; 4], Scalar)> = Vec::new();
        let mut mons: Vec<Mon> = self.terms.iter().map(|t| t.0.strip_eps()).collect();
        mons.sort_unstable_by(|a, b| b.cmp(a));
        mons.dedup();
        for m in mons {
            let e = m.exps4();
            out.push((e, self.coefficient(e)));
        }
        out
    }

    pub fn add(&self, o: &Poly) -> Result<Poly> {
        if self.ring != o.ring {
            return Err(Error::MixedBase);
        }
        Ok(self.combine(o, 1))
    }

    pub fn sub(&self, o: &Poly) -> Result<Poly> {
        if self.ring != o.ring {
            return Err(Error::MixedBase);
        }
        Ok(self.combine(o, self.ring.p - 1))
    }

    /// `self + c·o` for a field coefficient `c`.
    fn combine(&self, o: &Poly, c: u32) -> Poly {
        let p = self.ring.p;
        let mut out = Vec::with_capacity(self.terms.len() + o.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() || j < o.terms.len() {
            let ord = match (self.terms.get(i), o.terms.get(j)) {
                (Some(a), Some(b)) => a.0.cmp(&b.0),
                (Some(_), None) => Ordering::Greater,
                _ => Ordering::Less,
            };
            match ord {
                Ordering::Greater => {
                    out.push(self.terms[i]);
                    i += 1;
                }
                Ordering::Less => {
                    out.push((o.terms[j].0, mul_mod(o.terms[j].1, c, p)));
                    j += 1;
                }
                Ordering::Equal => {
                    let v = add_mod(self.terms[i].1, mul_mod(o.terms[j].1, c, p), p);
                    if v != 0 {
                        out.push((self.terms[i].0, v));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Poly { ring: self.ring, terms: out }
    }

    pub fn neg(&self) -> Poly {
        let p = self.ring.p;
        Poly { ring: self.ring, terms: self.terms.iter().map(|&(m, c)| (m, neg_mod(c, p))).collect() }
    }

    pub fn mul(&self, o: &Poly) -> Result<Poly> {
        if self.ring != o.ring {
            return Err(Error::MixedBase);
        }
        let p = self.ring.p;
        let mut raw = Vec::with_capacity(self.terms.len() * o.terms.len());
        for &(a, ca) in &self.terms {
            for &(b, cb) in &o.terms {
                if a.eps() + b.eps() <= 1 {
                    raw.push((a.mul(b), mul_mod(ca, cb, p)));
                }
            }
        }
        Ok(Poly::from_raw(self.ring, raw))
    }

    pub fn scale(&self, c: Scalar) -> Poly {
        let eps = Poly { ring: self.ring, terms: vec![(Mon::ONE.with_eps(1), c.b)] };
        let mut out = self.scale_field(c.a);
        if c.b != 0 && self.ring.is_dual() {
            out = out.combine(&self.mul(&eps).unwrap(), 1);
        }
        out
    }

    pub fn scale_field(&self, c: u32) -> Poly {
        let p = self.ring.p;
        let c = c % p;
        if c == 0 {
            return Poly::zero(self.ring);
        }
        Poly { ring: self.ring, terms: self.terms.iter().map(|&(m, x)| (m, mul_mod(x, c, p))).collect() }
    }

    pub fn mul_mon(&self, m: Mon) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter(|t| t.0.eps() + m.eps() <= 1)
            .map(|&(t, c)| (t.mul(m), c))
            .collect();
        Poly { ring: self.ring, terms }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut r = Poly::one(self.ring);
        for _ in 0..k {
            r = r.mul(self).unwrap();
        }
        r
    }

    pub fn homogeneous_components(&self) -> Vec<(i32, Poly)> {
        let mut out: Vec<(i32, Poly)> = Vec::new();
        let mut degs: Vec<i32> = self.terms.iter().map(|t| t.0.deg()).collect();
        degs.sort_unstable_by(|a, b| b.cmp(a));
        degs.dedup();
        for d in degs {
            let terms = self.terms.iter().copied().filter(|t| t.0.deg() == d).collect();
            out.push((d, Poly { ring: self.ring, terms }));
        }
        out
    }

    /// `ε ↦ 0`, landing in the fiber ring.
    pub fn reduce_to_fiber(&self) -> Poly {
        let terms = self.terms.iter().copied().filter(|t| t.0.eps() == 0).collect();
        Poly { ring: self.ring.fiber(), terms }
    }

    /// Same coefficients viewed over another base (the `ε`-part must vanish
    /// when the target is a field).
    pub fn change_ring(&self, ring: BaseRing) -> Poly {
        if ring.is_dual() || !self.ring.is_dual() {
            Poly { ring, terms: self.terms.clone() }
        } else {
            Poly { ring, terms: self.reduce_to_fiber().terms }
        }
    }

    /// The `ε`-coefficient part `b` of `a + ε b`, as a polynomial.
    pub fn eps_part(&self) -> Poly {
        let terms = self.terms.iter().filter(|t| t.0.eps() == 1).map(|&(m, c)| (m.strip_eps(), c)).collect();
        Poly { ring: self.ring, terms }
    }

    pub fn leading_term(&self, order: MonomialOrder) -> Option<([u8; 4], Scalar)> {
        let best = self.terms.iter().map(|t| t.0.strip_eps()).max_by(|a, b| order.cmp(*a, *b))?;
        let e = best.exps4();
        Some((e, self.coefficient(e)))
    }

    /// Scales so that the leading field coefficient is one.
    pub fn monic(&self) -> Poly {
        match self.terms.iter().find(|t| t.0.eps() == 0).or(self.terms.first()) {
            None => self.clone(),
            Some(&(_, c)) => self.scale_field(crate::scalars::inv_mod(c, self.ring.p)),
        }
    }

    /// Evaluates the `E`-free part at a point of `F_p^4` (used by tests).
    pub fn eval_fiber(&self, pt: [u32; 4]) -> u32 {
        let p = self.ring.p;
        let mut s = 0u32;
        for &(m, c) in &self.terms {
            if m.eps() > 0 {
                continue;
            }
            let e = m.exps();
            let mut v = c;
            for i in 0..4 {
                v = mul_mod(v, crate::scalars::pow_mod(pt[i], e[i] as u64, p), p);
            }
            s = add_mod(s, v, p);
        }
        s
    }

    pub fn sub_raw(&self, o: &Poly) -> Poly {
        let p = self.ring.p;
        self.combine(o, sub_mod(0, 1, p))
    }

    /// Parses the text syntax (`X Y Z W ^ * + -`, integers, `e` for ε).
    pub fn parse(ring: BaseRing, s: &str) -> Result<Poly> {
        let toks = tokenize(s)?;
        let mut parser = Parser { toks, pos: 0, ring };
        let poly = parser.expr()?;
        if parser.pos != parser.toks.len() {
            return Err(Error::Parse(format!("unexpected trailing input in {s:?}")));
        }
        Ok(poly)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let p = self.ring.p as i64;
        for (i, &(m, c)) in self.terms.iter().enumerate() {
            // symmetric representative keeps output short
            let c = c as i64;
            let (neg, mag) = if c > p / 2 { (true, p - c) } else { (false, c) };
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let ms = mon_string(m);
            if ms.is_empty() {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "{ms}")?;
            } else {
                write!(f, "{mag}*{ms}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(u64),
    Var(usize),
    Eps,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Tok>> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' | '\r' | '\n' => {}
            '0'..='9' => {
                let mut v: u64 = 0;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    v = v
                        .checked_mul(10)
                        .and_then(|v| v.checked_add(chars[i] as u64 - '0' as u64))
                        .ok_or_else(|| Error::Parse("integer literal too large".into()))?;
                    i += 1;
                }
                out.push(Tok::Int(v));
                continue;
            }
            'X' | 'x' => out.push(Tok::Var(0)),
            'Y' | 'y' => out.push(Tok::Var(1)),
            'Z' | 'z' => out.push(Tok::Var(2)),
            'W' | 'w' => out.push(Tok::Var(3)),
            'e' | 'ε' => out.push(Tok::Eps),
            '+' => out.push(Tok::Plus),
            '-' | '−' => out.push(Tok::Minus),
            '*' | '·' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::LParen),
            ')' => out.push(Tok::RParen),
            _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
    ring: BaseRing,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly> {
        let mut acc = Poly::zero(self.ring);
        let mut first = true;
        loop {
            let neg = match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    false
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    true
                }
                _ if first => false,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if neg { acc.sub(&t)? } else { acc.add(&t)? };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Poly> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                Some(Tok::Int(_)) | Some(Tok::Var(_)) | Some(Tok::Eps) | Some(Tok::LParen) => {
                    let f = self.factor()?;
                    acc = acc.mul(&f)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Poly> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.peek() {
                Some(&Tok::Int(k)) if k <= 200 => {
                    self.pos += 1;
                    return Ok(base.pow(k as u32));
                }
                _ => return Err(Error::Parse("expected a small exponent after '^'".into())),
            }
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Poly> {
        let ring = self.ring;
        let tok = self.peek().cloned().ok_or_else(|| Error::Parse("unexpected end of input".into()))?;
        self.pos += 1;
        match tok {
            Tok::Int(v) => Ok(Poly::constant(ring, ring.from_int((v % ring.p as u64) as i64))),
            Tok::Var(i) => Ok(Poly::var(ring, i)),
            Tok::Eps => {
                let e = ring.epsilon().map_err(|_| Error::Parse("'e' requires base=dual".into()))?;
                Ok(Poly::constant(ring, e))
            }
            Tok::LParen => {
                let inner = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(inner)
                    }
                    _ => Err(Error::Parse("missing ')'".into())),
                }
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::DEFAULT_PRIME;

    fn f() -> BaseRing {
        BaseRing::field(DEFAULT_PRIME)
    }

    #[test]
    fn piece_dims() {
        assert_eq!(graded_piece_dim(0), 1);
        assert_eq!(graded_piece_dim(1), 4);
        assert_eq!(graded_piece_dim(3), 20);
        assert_eq!(graded_piece_dim(-1), 0);
        for n in 0..=10 {
            assert_eq!(monomials_of_degree(n).len() as u64, graded_piece_dim(n as i64));
        }
    }

    #[test]
    fn multiply_examples() {
        let r = f();
        let a = Poly::parse(r, "X+Y").unwrap();
        let b = Poly::parse(r, "X-Y").unwrap();
        assert_eq!(a.mul(&b).unwrap(), Poly::parse(r, "X^2-Y^2").unwrap());
        let d = BaseRing::dual(DEFAULT_PRIME);
        let ex = Poly::parse(d, "e*X").unwrap();
        let ey = Poly::parse(d, "e*Y").unwrap();
        assert!(ex.mul(&ey).unwrap().is_zero());
        assert_eq!(a.mul(&Poly::one(r)).unwrap(), a);
        assert_eq!(a.mul(&Poly::one(d)), Err(Error::MixedBase));
    }

    #[test]
    fn components() {
        let r = f();
        let g = Poly::parse(r, "X^2+Y").unwrap();
        let c = g.homogeneous_components();
        assert_eq!(c.len(), 2);
        assert_eq!(c[0].0, 2);
        assert_eq!(c[0].1, Poly::parse(r, "X^2").unwrap());
        assert_eq!(c[1], (1, Poly::parse(r, "Y").unwrap()));
        assert!(Poly::zero(r).homogeneous_components().is_empty());
        let q = Poly::parse(r, "XZ - Y^2").unwrap();
        assert_eq!(q.homogeneous_components(), vec![(2, q.clone())]);
    }

    #[test]
    fn grevlex_order() {
        // X > Y > Z > W, and Y^2 > XZ under grevlex
        let r = f();
        let q = Poly::parse(r, "XZ - Y^2").unwrap();
        assert_eq!(q.leading_term(MonomialOrder::GrevLex).unwrap().0, [0, 2, 0, 0]);
        assert_eq!(q.leading_term(MonomialOrder::Lex).unwrap().0, [1, 0, 1, 0]);
    }

    #[test]
    fn parse_print_round_trip() {
        let d = BaseRing::dual(DEFAULT_PRIME);
        for s in ["X*Z - Y^2", "3*X^2*W + e*Y - 7", "X + e*Y", "0"] {
            let p = Poly::parse(d, s).unwrap();
            let again = Poly::parse(d, &p.to_string()).unwrap();
            assert_eq!(p, again);
        }
        assert!(Poly::parse(f(), "e*X").is_err());
        assert!(Poly::parse(f(), "X +* Y").is_err());
        assert!(Poly::parse(f(), "X $ Y").is_err());
    }
}
