//! Base rings: a prime field `F_p` or the dual numbers `F_p[ε]/(ε²)`.

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u32 = 32003;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BaseKind {
    PrimeField,
    DualNumbers,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BaseRing {
    pub kind: BaseKind,
    pub p: u32,
}

/// `a + b·ε`. Over a prime field `b` is always zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    pub a: u32,
    pub b: u32,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if (p as u64).is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[inline]
pub fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a as u64 + b as u64;
    (if s >= p as u64 { s - p as u64 } else { s }) as u32
}

#[inline]
pub fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        (a as u64 + p as u64 - b as u64) as u32
    }
}

#[inline]
pub fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

#[inline]
pub fn neg_mod(a: u32, p: u32) -> u32 {
    if a == 0 {
        0
    } else {
        p - a
    }
}

pub fn pow_mod(mut a: u32, mut e: u64, p: u32) -> u32 {
    let mut r = 1u32 % p;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero residue (extended Euclid).
pub fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    let (mut r0, mut r1) = (p as i64, (a % p) as i64);
    let (mut t0, mut t1) = (0i64, 1i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    t0.rem_euclid(p as i64) as u32
}

/// Reduces a signed integer into `[0, p)`.
pub fn from_i64(x: i64, p: u32) -> u32 {
    x.rem_euclid(p as i64) as u32
}

impl BaseRing {
    pub fn new(kind: BaseKind, p: u32) -> Result<Self> {
        if !is_prime(p) || p > (1 << 30) {
            return Err(Error::Precondition(format!("{p} is not a supported prime")));
        }
        Ok(BaseRing { kind, p })
    }

    pub fn field(p: u32) -> Self {
        BaseRing::new(BaseKind::PrimeField, p).expect("prime modulus")
    }

    pub fn dual(p: u32) -> Self {
        BaseRing::new(BaseKind::DualNumbers, p).expect("prime modulus")
    }

    pub fn is_dual(&self) -> bool {
        self.kind == BaseKind::DualNumbers
    }

    /// The residue field `k(t)`.
    pub fn fiber(&self) -> BaseRing {
        BaseRing { kind: BaseKind::PrimeField, p: self.p }
    }

    pub fn zero(&self) -> Scalar {
        Scalar { a: 0, b: 0 }
    }

    pub fn one(&self) -> Scalar {
        Scalar { a: 1, b: 0 }
    }

    pub fn epsilon(&self) -> Result<Scalar> {
        if self.is_dual() {
            Ok(Scalar { a: 0, b: 1 })
        } else {
            Err(Error::MixedBase)
        }
    }

    pub fn from_int(&self, x: i64) -> Scalar {
        Scalar { a: from_i64(x, self.p), b: 0 }
    }

    pub fn make(&self, a: i64, b: i64) -> Scalar {
        let b = if self.is_dual() { from_i64(b, self.p) } else { 0 };
        Scalar { a: from_i64(a, self.p), b }
    }

    pub fn add(&self, x: Scalar, y: Scalar) -> Scalar {
        Scalar { a: add_mod(x.a, y.a, self.p), b: add_mod(x.b, y.b, self.p) }
    }

    pub fn sub(&self, x: Scalar, y: Scalar) -> Scalar {
        Scalar { a: sub_mod(x.a, y.a, self.p), b: sub_mod(x.b, y.b, self.p) }
    }

    pub fn neg(&self, x: Scalar) -> Scalar {
        Scalar { a: neg_mod(x.a, self.p), b: neg_mod(x.b, self.p) }
    }

    pub fn mul(&self, x: Scalar, y: Scalar) -> Scalar {
        let p = self.p;
        Scalar {
            a: mul_mod(x.a, y.a, p),
            b: add_mod(mul_mod(x.a, y.b, p), mul_mod(x.b, y.a, p), p),
        }
    }

    /// Local-ring unit test: the residue modulo `m_A` is nonzero.
    pub fn is_unit(&self, x: Scalar) -> bool {
        x.a != 0
    }

    pub fn invert(&self, x: Scalar) -> Result<Scalar> {
        if x.a == 0 {
            return Err(Error::NonUnit);
        }
        let p = self.p;
        let ia = inv_mod(x.a, p);
        // (a + bε)⁻¹ = a⁻¹ − b a⁻² ε
        let b = neg_mod(mul_mod(x.b, mul_mod(ia, ia, p), p), p);
        Ok(Scalar { a: ia, b })
    }

    pub fn reduce_to_fiber(&self, x: Scalar) -> Scalar {
        Scalar { a: x.a, b: 0 }
    }
}

impl Scalar {
    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }
}

/// Convenience wrapper matching the operation table.
pub fn invert(ring: &BaseRing, x: Scalar) -> Result<Scalar> {
    ring.invert(x)
}

/// Convenience wrapper matching the operation table.
pub fn reduce_to_fiber(ring: &BaseRing, x: Scalar) -> Scalar {
    ring.reduce_to_fiber(x)
}
