//! Explicit chains of elementary biliaisons between two curves of one class.
//!
//! Both curves are first written as cokernels of `(φ; α): P → N ⊕ L` with the
//! same `N` and the same `φ`. The chain is then built by induction on the rank
//! of `L`: rows of `α` are exchanged one at a time, and every exchange is
//! realized by at most five elementary biliaisons. Each step is certified on
//! the actual curves before it is recorded.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{check_elementary_biliaison, replay, trivial_biliaison, BiliaisonStep, ElementaryCheck};
use crate::curve::{validate_curve, CurveFamily};
use crate::error::{Error, Result};
use crate::gradedmod::hom::{strip_with_maps, Stripped};
use crate::gradedmod::{embed_rank_one, is_module_iso, GradedMap, GradedModule, IsoResult};
use crate::groebner::{Ideal, Vector};
use crate::polyring::Poly;
use crate::raoclass::{biliaison_equivalent, n_type_resolution, Equivalence};
use crate::scalars::BaseRing;

/// Bound on the number of random redraws for every general choice.
pub const REDRAWS: usize = 32;

/// A certified chain `C = C_0 → C_1 → … → C_n = C'`.
#[derive(Clone, Debug)]
pub struct Chain {
    pub steps: Vec<BiliaisonStep>,
    /// The ideals `I_{C_0}, …, I_{C_n}`.
    pub curves: Vec<Ideal>,
    /// Twist `h` used to put both curves on a common `N`.
    pub shift: i32,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the chain from `start` and compares with `target`.
    pub fn verify(&self, start: &Ideal, target: &Ideal) -> Result<bool> {
        Ok(replay(start, &self.steps)?.same_as(target))
    }
}

#[derive(Clone, Debug)]
struct Link {
    from: CurveFamily,
    to: CurveFamily,
    step: BiliaisonStep,
}

struct Ctx {
    rng: ChaCha8Rng,
    trials: usize,
    seed: u64,
    calls: u64,
    max_height: i32,
}

impl Ctx {
    fn next_seed(&mut self) -> u64 {
        self.calls += 1;
        self.seed.wrapping_add(self.calls)
    }

    fn form(&mut self, ring: BaseRing, d: i32) -> Poly {
        Poly::random_form(ring, d, &mut self.rng)
    }

    fn row(&mut self, ring: BaseRing, p: &[i32], a: i32) -> Vec<Poly> {
        p.iter().map(|&d| self.form(ring, d - a)).collect()
    }
}

/// `(φ; α): P → N ⊕ L` with `L` free; `alpha[k][j]` is the entry in row `k`
/// (a generator of `L`) and column `j` (a generator of `P`).
#[derive(Clone, Debug)]
struct Pres {
    n: GradedModule,
    p: Vec<i32>,
    phi: Vec<Vector>,
    l: Vec<i32>,
    alpha: Vec<Vec<Poly>>,
}

struct Realized {
    curve: CurveFamily,
    /// Image of each generator of `N ⊕ L` (those of `N` first).
    images: Vec<Poly>,
}

impl Pres {
    fn ring(&self) -> BaseRing {
        self.n.ring
    }

    fn module(&self) -> GradedModule {
        let ring = self.ring();
        let nn = self.n.degs.len() as u32;
        let mut degs = self.n.degs.clone();
        degs.extend_from_slice(&self.l);
        let mut rels = self.n.rels.clone();
        for (j, col) in self.phi.iter().enumerate() {
            let mut v = col.clone();
            for (k, row) in self.alpha.iter().enumerate() {
                if !row[j].is_zero() {
                    v = v.add(&Vector::from_poly(&row[j], nn + k as u32, 0), ring.p);
                }
            }
            if !v.is_zero() {
                rels.push(v);
            }
        }
        GradedModule::new(ring, degs, rels)
    }

    /// The curve whose ideal is the cokernel, if there is one.
    fn realize(&self) -> Option<Realized> {
        let (images, _) = embed_rank_one(&self.module())?;
        let gens: Vec<Poly> = images.iter().filter(|f| !f.is_zero()).cloned().collect();
        let curve = validate_curve(&Ideal::new(self.ring(), gens).ok()?).ok()?;
        Some(Realized { curve, images })
    }

    /// Moves row `k` of `α` into `N`, which leaves the cokernel unchanged.
    fn absorb(&self, k: usize) -> Pres {
        let ring = self.ring();
        let nn = self.n.degs.len() as u32;
        let n = self.n.direct_sum(&GradedModule::free(ring, vec![self.l[k]]));
        let phi = self
            .phi
            .iter()
            .zip(&self.alpha[k])
            .map(|(v, e)| v.add(&Vector::from_poly(e, nn, 0), ring.p))
            .collect();
        let mut l = self.l.clone();
        let mut alpha = self.alpha.clone();
        l.remove(k);
        alpha.remove(k);
        Pres { n, p: self.p.clone(), phi, l, alpha }
    }

    /// Absorbs every row but `k`.
    fn isolate(&self, k: usize) -> Pres {
        let mut out = self.clone();
        let mut idx = k;
        while out.l.len() > 1 {
            let j = if idx == 0 { 1 } else { 0 };
            out = out.absorb(j);
            if j < idx {
                idx -= 1;
            }
        }
        out
    }

    fn with_row(&self, k: usize, row: Vec<Poly>) -> Pres {
        let mut out = self.clone();
        out.alpha[k] = row;
        out
    }

    fn push_gen(&self, deg: i32, col: Vector, entries: Vec<Poly>) -> Pres {
        let mut out = self.clone();
        out.p.push(deg);
        out.phi.push(col);
        for (row, e) in out.alpha.iter_mut().zip(entries) {
            row.push(e);
        }
        out
    }

    fn push_row(&self, deg: i32, row: Vec<Poly>) -> Pres {
        let mut out = self.clone();
        out.l.push(deg);
        out.alpha.push(row);
        out
    }
}

fn cert(what: &str) -> Error {
    Error::Certification(what.to_string())
}

fn fiber_nonzero(f: &Poly) -> bool {
    !f.reduce_to_fiber().is_zero()
}

/// Image of an element of `F_N` under the embedding of the cokernel.
fn image_of(v: &Vector, images: &[Poly], ring: BaseRing) -> Poly {
    let mut acc = Poly::zero(ring);
    for (i, g) in images.iter().enumerate() {
        let c = v.component(i as u32, ring);
        if !c.is_zero() {
            acc = acc.add(&c.mul(g).unwrap()).unwrap();
        }
    }
    acc
}

/// A certified step `from → to` on `q`, with the height read off the degrees.
/// `Some(vec![])` when both curves coincide.
fn step(ctx: &mut Ctx, from: &CurveFamily, to: &CurveFamily, q: &Poly) -> Result<Option<Vec<Link>>> {
    if from.same_curve(to) {
        return Ok(Some(vec![]));
    }
    let dq = q.degree().unwrap_or(0) as i64;
    let diff = to.degree - from.degree;
    if dq == 0 || diff % dq != 0 {
        return Ok(None);
    }
    let h = (diff / dq) as i32;
    let seed = ctx.next_seed();
    match check_elementary_biliaison(from, to, q, h, ctx.trials, seed) {
        Ok(ElementaryCheck::Yes(s)) => Ok(Some(vec![Link { from: from.clone(), to: to.clone(), step: s }])),
        Ok(_) | Err(Error::NotContained) | Err(Error::SurfaceNotFlat) => Ok(None),
        Err(e) => Err(e),
    }
}

fn reverse(ctx: &mut Ctx, links: &[Link]) -> Result<Vec<Link>> {
    let mut out = Vec::new();
    for l in links.iter().rev() {
        let back = step(ctx, &l.to, &l.from, &l.step.surface)?.ok_or_else(|| cert("reverse step not certified"))?;
        out.extend(back);
    }
    Ok(out)
}

/// Two presentations with `rank L = 1`, the same `N`, `φ` and `L`, differing
/// only in the row of `α`.
fn exchange_row(ctx: &mut Ctx, x: &Pres, y: &Pres) -> Result<Vec<Link>> {
    let rx = x.realize().ok_or_else(|| cert("presentation is not a curve"))?;
    let ry = y.realize().ok_or_else(|| cert("presentation is not a curve"))?;
    if rx.curve.same_curve(&ry.curve) {
        return Ok(vec![]);
    }
    let nn = x.n.degs.len();
    // the image of the generator of L is det φ, common to both curves
    let q = rx.images[nn].clone();
    if fiber_nonzero(&q) {
        return step(ctx, &rx.curve, &ry.curve, &q)?.ok_or_else(|| cert("single exchange step not certified"));
    }
    let span = ctx.max_height.max(1);
    for attempt in 0..REDRAWS {
        let b = x.l[0] + 1 + attempt as i32 % span;
        if let Some(links) = exchange_through_auxiliary(ctx, x, y, &rx, &ry, b)? {
            return Ok(links);
        }
    }
    Err(Error::Undecided(format!("no general auxiliary data after {REDRAWS} draws")))
}

/// The degenerate case of `exchange_row`: adds a generator `(s, H)` of degree
/// `b` and an auxiliary row `(β, H')`, passing through five curves.
fn exchange_through_auxiliary(
    ctx: &mut Ctx,
    x: &Pres,
    y: &Pres,
    rx: &Realized,
    ry: &Realized,
    b: i32,
) -> Result<Option<Vec<Link>>> {
    let ring = x.ring();
    let a = x.l[0];
    let nn = x.n.degs.len();
    let basis = x.n.basis(b);
    if basis.is_empty() {
        return Ok(None);
    }
    let coords: Vec<u32> = (0..basis.len()).map(|_| ctx.rng.gen_range(0..ring.p)).collect();
    let s = basis.combination(&coords, ring.p);
    if s.is_zero() {
        return Ok(None);
    }
    let hh = ctx.form(ring, b - a);
    let h2 = ctx.form(ring, b - a);
    let beta = ctx.row(ring, &x.p, a);

    let mut sides = Vec::new();
    for (pres, real) in [(x, rx), (y, ry)] {
        let f = image_of(&s, &real.images[..nn], ring).add(&hh.mul(&real.images[nn]).unwrap()).unwrap();
        if !fiber_nonzero(&f) {
            return Ok(None);
        }
        let (c10, st) = match trivial_biliaison(&real.curve, &f, &h2, b - a) {
            Ok(v) => v,
            Err(Error::NotCoprime) | Err(Error::SurfaceNotFlat) => return Ok(None),
            Err(e) => return Err(e),
        };
        let mut zero_row = vec![Poly::zero(ring); pres.p.len()];
        zero_row.push(h2.clone());
        let p10 = pres.push_gen(b, s.clone(), vec![hh.clone()]).push_row(a, zero_row);
        let r10 = p10.realize().ok_or_else(|| cert("trivial biliaison has no matching presentation"))?;
        if !r10.curve.same_curve(&c10) {
            return Err(cert("trivial biliaison disagrees with its presentation"));
        }
        let mut row = beta.clone();
        row.push(h2.clone());
        let p1 = p10.with_row(1, row);
        let Some(r1) = p1.realize() else { return Ok(None) };
        let q2 = r10.images[nn + 1].clone();
        if !fiber_nonzero(&q2) {
            return Ok(None);
        }
        let Some(second) = step(ctx, &r10.curve, &r1.curve, &q2)? else { return Ok(None) };
        let mut links = vec![Link { from: real.curve.clone(), to: c10, step: st }];
        links.extend(second);
        sides.push((links, r1));
    }
    let (left, rx1) = &sides[0];
    let (right, ry1) = &sides[1];
    let q3 = rx1.images[nn].clone();
    if !fiber_nonzero(&q3) {
        return Ok(None);
    }
    let Some(middle) = step(ctx, &rx1.curve, &ry1.curve, &q3)? else { return Ok(None) };
    let mut out = left.clone();
    out.extend(middle);
    out.extend(reverse(ctx, right)?);
    Ok(Some(out))
}

/// Chain from the curve of `a` to the curve of `b` (same `N`, `φ`, rank `L`).
fn connect_presentations(ctx: &mut Ctx, a: &Pres, b: &Pres) -> Result<Vec<Link>> {
    let ring = a.ring();
    if a.l.is_empty() {
        let ra = a.realize().ok_or_else(|| cert("presentation is not a curve"))?;
        let rb = b.realize().ok_or_else(|| cert("presentation is not a curve"))?;
        return if ra.curve.same_curve(&rb.curve) { Ok(vec![]) } else { Err(cert("equal presentations, distinct curves")) };
    }
    let amax = *a.l.iter().max().unwrap();
    let bmax = *b.l.iter().max().unwrap();
    if amax > bmax {
        let back = connect_presentations(ctx, b, a)?;
        return reverse(ctx, &back);
    }

    // a row degree shared by both sides: replace both rows by one general row
    let shared = (0..a.l.len())
        .flat_map(|i| (0..b.l.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| a.l[i] == b.l[j])
        .max_by_key(|&(i, _)| a.l[i]);
    if let Some((i, j)) = shared {
        for _ in 0..REDRAWS {
            let w = ctx.row(ring, &a.p, a.l[i]);
            let g = a.with_row(i, w.clone());
            let g2 = b.with_row(j, w);
            if g.realize().is_none() || g2.realize().is_none() {
                continue;
            }
            let mut out = exchange_row(ctx, &a.isolate(i), &g.isolate(i))?;
            out.extend(connect_presentations(ctx, &g.absorb(i), &g2.absorb(j))?);
            let tail = exchange_row(ctx, &b.isolate(j), &g2.isolate(j))?;
            out.extend(reverse(ctx, &tail)?);
            return Ok(out);
        }
        return Err(Error::Undecided(format!("no general row after {REDRAWS} draws")));
    }

    // amax < bmax: lower the top row of b by a trivial biliaison
    let rb = b.realize().ok_or_else(|| cert("presentation is not a curve"))?;
    let nn = b.n.degs.len();
    let r = b.l.iter().position(|&d| d == bmax).unwrap();
    let qs: Vec<Poly> = (0..b.l.len()).map(|k| rb.images[nn + k].clone()).collect();
    if !qs.iter().any(fiber_nonzero) {
        return Err(cert("every generator of L maps into the nilradical"));
    }
    let height = bmax - amax;
    for attempt in 0..REDRAWS {
        let mut b2 = b.clone();
        let mut q = qs[r].clone();
        if attempt > 0 || !fiber_nonzero(&q) {
            // basis change e_r ↦ e_r + Σ c_k e_k in L
            for k in (0..b.l.len()).filter(|&k| k != r) {
                let c = ctx.form(ring, bmax - b.l[k]);
                q = q.add(&c.mul(&qs[k]).unwrap()).unwrap();
                b2.alpha[k] =
                    b2.alpha[k].iter().zip(&b.alpha[r]).map(|(x, y)| x.sub(&c.mul(y).unwrap()).unwrap()).collect();
            }
        }
        if !fiber_nonzero(&q) {
            continue;
        }
        let hh = ctx.form(ring, height);
        let (c2, _) = match trivial_biliaison(&rb.curve, &q, &hh, height) {
            Ok(v) => v,
            Err(Error::NotCoprime) => continue,
            Err(e) => return Err(e),
        };
        b2.alpha[r] = b2.alpha[r].iter().map(|x| x.mul(&hh).unwrap()).collect();
        b2.l[r] = amax;
        let r2 = b2.realize().ok_or_else(|| cert("lowered presentation is not a curve"))?;
        if !r2.curve.same_curve(&c2) {
            return Err(cert("lowered presentation disagrees with the trivial biliaison"));
        }
        let mut out = connect_presentations(ctx, a, &b2)?;
        let back = step(ctx, &c2, &rb.curve, &q)?.ok_or_else(|| cert("return step not certified"))?;
        out.extend(back);
        return Ok(out);
    }
    Err(Error::Undecided(format!("no coprime auxiliary form after {REDRAWS} draws")))
}

fn multiset(v: &[i32]) -> BTreeMap<i32, usize> {
    let mut m = BTreeMap::new();
    for &d in v {
        *m.entry(d).or_insert(0) += 1;
    }
    m
}

fn union_size(a: &[i32], b: &[i32]) -> usize {
    let (ma, mb) = (multiset(a), multiset(b));
    let keys: std::collections::BTreeSet<i32> = ma.keys().chain(mb.keys()).copied().collect();
    keys.iter().map(|k| ma.get(k).copied().unwrap_or(0).max(mb.get(k).copied().unwrap_or(0))).sum()
}

/// Positions in `u` (sorted, with multiplicity) for each entry of `f`.
fn assign(u: &[i32], f: &[i32]) -> Vec<usize> {
    let mut used = vec![false; u.len()];
    f.iter()
        .map(|&d| {
            let i = (0..u.len()).find(|&i| !used[i] && u[i] == d).unwrap();
            used[i] = true;
            i
        })
        .collect()
}

/// Connects two curves of the same biliaison class by elementary
/// biliaisons. `max_height` bounds the degree of the auxiliary generators
/// drawn in the degenerate exchange.
pub fn connect_by_biliaisons(c: &CurveFamily, c2: &CurveFamily, max_height: i32, trials: usize, seed: u64) -> Result<Chain> {
    let ring = c.ring();
    if ring != c2.ring() {
        return Err(Error::MixedBase);
    }
    if c.same_curve(c2) {
        return Ok(Chain { steps: vec![], curves: vec![c.ideal().clone()], shift: 0 });
    }
    let decided = match biliaison_equivalent(c, c2, trials, seed)?.result {
        Equivalence::Yes(h) => h,
        Equivalence::No(_) => return Err(Error::NotEquivalent),
        Equivalence::Undecided(w) => return Err(Error::Undecided(w)),
    };
    let n1 = n_type_resolution(c)?;
    let n2 = n_type_resolution(c2)?;
    let s1 = strip_with_maps(&n1.n);
    let s2 = strip_with_maps(&n2.n);
    let f1: Vec<i32> = s1.removed.iter().map(|t| -t).collect();
    let f2: Vec<i32> = s2.removed.iter().map(|t| -t).collect();

    // with no essential part any twist works; take the smallest common N
    let h = if s1.module.is_zero() && s2.module.is_zero() {
        let mut cands: Vec<i32> = vec![decided];
        for &x in &f1 {
            for &y in &f2 {
                cands.push(y - x);
            }
        }
        let size = |h: i32| union_size(&f1, &f2.iter().map(|d| d - h).collect::<Vec<_>>());
        cands.into_iter().min_by_key(|&h| (size(h), h.abs(), h)).unwrap()
    } else {
        decided
    };
    let f2h: Vec<i32> = f2.iter().map(|d| d - h).collect();
    let g = if s1.module.is_zero() {
        None
    } else {
        match is_module_iso(&s2.module.twist(h), &s1.module, trials, seed) {
            IsoResult::Yes(g) => Some(g),
            IsoResult::No(w) => return Err(Error::Certification(format!("essential parts not isomorphic: {w}"))),
            IsoResult::Undecided => return Err(Error::Undecided("no isomorphism of the essential parts found".into())),
        }
    };

    let mut u = Vec::new();
    let (m1, m2) = (multiset(&f1), multiset(&f2h));
    for d in m1.keys().chain(m2.keys()).copied().collect::<std::collections::BTreeSet<_>>() {
        let k = m1.get(&d).copied().unwrap_or(0).max(m2.get(&d).copied().unwrap_or(0));
        u.extend(std::iter::repeat_n(d, k));
    }
    let n0 = s1.module.degs.len() as u32;
    let common = s1.module.direct_sum(&GradedModule::free(ring, u.clone()));

    // each curve's P extended by the part of U its own N lacks
    let embed = |cols: &[Vector], pdegs: Vec<i32>, strip: &Stripped, iso: Option<&GradedMap>, f: &[i32]| {
        let pos = assign(&u, f);
        let mut degs = pdegs;
        let mut out: Vec<Vector> = cols
            .iter()
            .map(|col| {
                let mut v = strip.proj.apply(col);
                if let Some(g) = iso {
                    v = g.apply(&v);
                }
                for (m, fp) in strip.free_proj.iter().enumerate() {
                    let e = fp.apply(col).component(0, ring);
                    if !e.is_zero() {
                        v = v.add(&Vector::from_poly(&e, n0 + pos[m] as u32, 0), ring.p);
                    }
                }
                v
            })
            .collect();
        for (i, &d) in u.iter().enumerate() {
            if !pos.contains(&i) {
                degs.push(d);
                out.push(Vector::from_poly(&Poly::one(ring), n0 + i as u32, 0));
            }
        }
        (degs, out)
    };
    let (pa, ca) = embed(&n1.phi.cols, n1.p_degs.clone(), &s1, None, &f1);
    let (pb, cb) = embed(&n2.phi.cols, n2.p_degs.iter().map(|d| d - h).collect(), &s2, g.as_ref(), &f2h);

    let mut p = pa.clone();
    p.extend_from_slice(&pb);
    let mut phi = ca;
    phi.extend(cb);
    let unit_rows = |count: usize, offset: usize| -> Vec<Vec<Poly>> {
        (0..count)
            .map(|k| (0..p.len()).map(|j| if j == offset + k { Poly::one(ring) } else { Poly::zero(ring) }).collect())
            .collect()
    };
    let pres_c = Pres { n: common.clone(), p: p.clone(), phi: phi.clone(), l: pb.clone(), alpha: unit_rows(pb.len(), pa.len()) };
    let pres_c2 = Pres { n: common, p: p.clone(), phi, l: pa.clone(), alpha: unit_rows(pa.len(), 0) };
    for (pres, curve) in [(&pres_c, c), (&pres_c2, c2)] {
        let r = pres.realize().ok_or_else(|| cert("common presentation is not a curve"))?;
        if !r.curve.same_curve(curve) {
            return Err(cert("common presentation gives another curve"));
        }
    }

    let mut ctx = Ctx { rng: ChaCha8Rng::seed_from_u64(seed), trials, seed, calls: 0, max_height };
    let links = connect_presentations(&mut ctx, &pres_c, &pres_c2)?;
    let mut curves = vec![c.ideal().clone()];
    curves.extend(links.iter().map(|l| l.to.ideal().clone()));
    let chain = Chain { steps: links.into_iter().map(|l| l.step).collect(), curves, shift: h };
    if !chain.verify(c.ideal(), c2.ideal())? {
        return Err(cert("replayed chain misses the target"));
    }
    Ok(chain)
}
