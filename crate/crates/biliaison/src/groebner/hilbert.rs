//! Exact Hilbert series of monomial quotients and of graded modules built
//! from lead-term data.

use std::collections::BTreeMap;

use crate::polyring::Mon;

/// `num(t) / (1 - t)^4`, counting `k`-dimensions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct HilbertSeries {
    pub num: BTreeMap<i32, i64>,
}

fn binom3(m: i64) -> i64 {
    // C(m + 3, 3), zero for m < 0
    if m < 0 {
        0
    } else {
        (m + 3) * (m + 2) * (m + 1) / 6
    }
}

impl HilbertSeries {
    pub fn zero() -> Self {
        HilbertSeries::default()
    }

    fn clean(mut self) -> Self {
        self.num.retain(|_, c| *c != 0);
        self
    }

    pub fn add(&self, o: &HilbertSeries) -> HilbertSeries {
        let mut num = self.num.clone();
        for (&d, &c) in &o.num {
            *num.entry(d).or_insert(0) += c;
        }
        HilbertSeries { num }.clean()
    }

    pub fn sub(&self, o: &HilbertSeries) -> HilbertSeries {
        self.add(&o.scale(-1))
    }

    pub fn scale(&self, k: i64) -> HilbertSeries {
        HilbertSeries { num: self.num.iter().map(|(&d, &c)| (d, c * k)).collect() }.clean()
    }

    /// Series of `M(-s)`, i.e. every degree raised by `s`.
    pub fn shift(&self, s: i32) -> HilbertSeries {
        HilbertSeries { num: self.num.iter().map(|(&d, &c)| (d + s, c)).collect() }
    }

    pub fn mul_poly(&self, poly: &BTreeMap<i32, i64>) -> HilbertSeries {
        let mut num = BTreeMap::new();
        for (&a, &x) in &self.num {
            for (&b, &y) in poly {
                *num.entry(a + b).or_insert(0) += x * y;
            }
        }
        HilbertSeries { num }.clean()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_empty()
    }

    /// Hilbert function value in degree `n`.
    pub fn hf(&self, n: i32) -> i64 {
        self.num.iter().map(|(&j, &c)| c * binom3((n - j) as i64)).sum()
    }

    /// Krull dimension (pole order at `t = 1`); `-1` for the zero module.
    pub fn dimension(&self) -> i32 {
        if self.is_zero() {
            return -1;
        }
        let mut coeffs: BTreeMap<i32, i64> = self.num.clone();
        let mut k = 0;
        loop {
            let s: i64 = coeffs.values().sum();
            if s != 0 || k == 4 {
                break;
            }
            coeffs = divide_one_minus_t(&coeffs);
            k += 1;
        }
        4 - k
    }

    /// Generic rank in `k`-dimensions: the numerator at `t = 1`.
    pub fn rank(&self) -> i64 {
        self.num.values().sum()
    }

    /// Lowest degree with a nonzero graded piece, if any.
    pub fn initial_degree(&self) -> Option<i32> {
        // the numerator's lowest term is the lowest nonzero degree
        self.num.keys().next().copied()
    }

    /// Highest degree with a nonzero piece for a finite-length module.
    pub fn top_degree(&self) -> Option<i32> {
        if self.dimension() > 0 || self.is_zero() {
            return None;
        }
        let lo = *self.num.keys().next()?;
        let hi = *self.num.keys().last()?;
        (lo..=hi).rev().find(|&n| self.hf(n) != 0)
    }

    /// Hilbert polynomial value for large `n`: evaluated past the numerator.
    pub fn degree_genus_data(&self) -> (i64, i64) {
        let n0 = self.num.keys().last().copied().unwrap_or(0).max(0) + 1;
        let a = self.hf(n0);
        let b = self.hf(n0 + 1);
        let d = b - a;
        (d, a - d * n0 as i64)
    }

    /// Last degree where the Hilbert function differs from the polynomial.
    pub fn hilbert_poly_reached(&self) -> i32 {
        self.num.keys().last().copied().unwrap_or(0)
    }
}

fn divide_one_minus_t(c: &BTreeMap<i32, i64>) -> BTreeMap<i32, i64> {
    // q(t)(1 - t) = c(t): q_j = sum_{i <= j} c_i
    let mut out = BTreeMap::new();
    let (Some(&lo), Some(&hi)) = (c.keys().next(), c.keys().last()) else { return out };
    let mut acc = 0;
    for j in lo..hi {
        acc += c.get(&j).copied().unwrap_or(0);
        if acc != 0 {
            out.insert(j, acc);
        }
    }
    out
}

/// Numerator of the Hilbert series of `k[X,Y,Z,W]/J` for a monomial ideal.
pub fn monomial_numerator(gens: &[[u8; 4]]) -> BTreeMap<i32, i64> {
    let mut g: Vec<[u8; 4]> = gens.to_vec();
    minimize(&mut g);
    let mut out = BTreeMap::new();
    numer(g, &mut out, 0, 1);
    out.retain(|_, c| *c != 0);
    out
}

fn divides(a: &[u8; 4], b: &[u8; 4]) -> bool {
    (0..4).all(|i| a[i] <= b[i])
}

fn minimize(g: &mut Vec<[u8; 4]>) {
    g.sort_unstable_by_key(|e| (e.iter().map(|&x| x as u32).sum::<u32>(), *e));
    g.dedup();
    let mut out: Vec<[u8; 4]> = Vec::with_capacity(g.len());
    for e in g.iter() {
        if !out.iter().any(|d| divides(d, e)) {
            out.push(*e);
        }
    }
    *g = out;
}

fn numer(g: Vec<[u8; 4]>, out: &mut BTreeMap<i32, i64>, shift: i32, sign: i64) {
    if g.is_empty() {
        *out.entry(shift).or_insert(0) += sign;
        return;
    }
    // pairwise coprime generators: product of (1 - t^deg)
    let coprime = (0..4).all(|v| g.iter().filter(|e| e[v] > 0).count() <= 1);
    if coprime {
        let mut poly: BTreeMap<i32, i64> = BTreeMap::from([(0, 1)]);
        for e in &g {
            let d: i32 = e.iter().map(|&x| x as i32).sum();
            let mut next = BTreeMap::new();
            for (&k, &c) in &poly {
                *next.entry(k).or_insert(0) += c;
                *next.entry(k + d).or_insert(0) -= c;
            }
            poly = next;
        }
        for (k, c) in poly {
            *out.entry(k + shift).or_insert(0) += sign * c;
        }
        return;
    }
    // pivot on the variable shared by the most generators
    let v = (0..4).max_by_key(|&v| g.iter().filter(|e| e[v] > 0).count()).unwrap();
    // the smallest exponent keeps x_v^a out of the (minimal) generating set
    let a = g.iter().map(|e| e[v]).filter(|&x| x > 0).min().unwrap();
    let mut piv = [0u8; 4];
    piv[v] = a;
    // HN(J) = HN(J + (piv)) + t^a HN(J : piv)
    let mut plus = g.clone();
    plus.push(piv);
    minimize(&mut plus);
    let mut colon: Vec<[u8; 4]> = g
        .iter()
        .map(|e| {
            let mut f = *e;
            f[v] = f[v].saturating_sub(a);
            f
        })
        .collect();
    minimize(&mut colon);
    numer(plus, out, shift, sign);
    numer(colon, out, shift + a as i32, sign);
}

/// Series of a quotient of a free module, given minimal lead monomials per
/// position (with `E` allowed over the dual numbers).
pub fn module_series(degs: &[i32], leads: &[Vec<Mon>], dual: bool) -> HilbertSeries {
    let mut hs = HilbertSeries::zero();
    for (pos, &d) in degs.iter().enumerate() {
        let j0: Vec<[u8; 4]> = leads[pos].iter().filter(|m| m.eps() == 0).map(|m| m.exps4()).collect();
        let s0 = HilbertSeries { num: monomial_numerator(&j0) }.shift(d);
        hs = hs.add(&s0);
        if dual {
            let mut j1 = j0.clone();
            j1.extend(leads[pos].iter().filter(|m| m.eps() == 1).map(|m| m.exps4()));
            let s1 = HilbertSeries { num: monomial_numerator(&j1) }.shift(d);
            hs = hs.add(&s1);
        }
    }
    hs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_ring_series() {
        let hs = HilbertSeries { num: monomial_numerator(&[]) };
        assert_eq!((0..4).map(|n| hs.hf(n)).collect::<Vec<_>>(), vec![1, 4, 10, 20]);
        assert_eq!(hs.dimension(), 4);
    }

    #[test]
    fn skew_lines_leads() {
        // lead ideal of (XZ, XW, YZ, YW) is itself
        let g = [[1, 0, 1, 0], [1, 0, 0, 1], [0, 1, 1, 0], [0, 1, 0, 1]];
        let hs = HilbertSeries { num: monomial_numerator(&g) };
        assert_eq!((0..5).map(|n| hs.hf(n)).collect::<Vec<_>>(), vec![1, 4, 6, 8, 10]);
        assert_eq!(hs.dimension(), 2);
        assert_eq!(hs.degree_genus_data(), (2, 2));
    }

    #[test]
    fn maximal_ideal_is_finite_length() {
        let g = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        let hs = HilbertSeries { num: monomial_numerator(&g) };
        assert_eq!(hs.dimension(), 0);
        assert_eq!(hs.hf(0), 1);
        assert_eq!(hs.hf(1), 0);
        assert_eq!(hs.top_degree(), Some(0));
    }
}
