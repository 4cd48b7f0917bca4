//! Buchberger's algorithm over coefficient fields, with ideal membership,
//! unit-ideal and projective-emptiness tests and Krull dimension.

use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::guard;
use crate::poly::{Monomial, Poly, VarContext};
use crate::ring::Ring;

/// An ideal of `K[vars]` with a lazily computed reduced Groebner basis.
#[derive(Debug)]
pub struct Ideal {
    ring: Ring,
    ctx: Arc<VarContext>,
    generators: Vec<Poly>,
    gb: OnceLock<Vec<Poly>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        let gb = OnceLock::new();
        if let Some(b) = self.gb.get() {
            let _ = gb.set(b.clone());
        }
        Ideal { ring: self.ring.clone(), ctx: self.ctx.clone(), generators: self.generators.clone(), gb }
    }
}

impl Ideal {
    pub fn new(ring: &Ring, ctx: &Arc<VarContext>, generators: Vec<Poly>) -> Result<Ideal> {
        if !ring.is_field() {
            return Err(Error::NonFieldCoefficients(ring.to_string()));
        }
        for g in &generators {
            if g.ring() != ring || g.ctx() != ctx {
                return Err(Error::ContextMismatch(format!("generator {g} is not over {ring} in {ctx}")));
            }
        }
        let generators = generators.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(Ideal { ring: ring.clone(), ctx: ctx.clone(), generators, gb: OnceLock::new() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    /// The ideal with extra generators.
    pub fn extend(&self, extra: Vec<Poly>) -> Result<Ideal> {
        let mut g = self.generators.clone();
        g.extend(extra);
        Ideal::new(&self.ring, &self.ctx, g)
    }

    /// Reduced Groebner basis, monic, sorted by increasing leading monomial.
    pub fn groebner_basis(&self) -> Result<&[Poly]> {
        if let Some(b) = self.gb.get() {
            return Ok(b);
        }
        let basis = buchberger(&self.ring, &self.ctx, &self.generators)?;
        // a concurrent fill computes the identical basis
        let _ = self.gb.set(basis);
        Ok(self.gb.get().expect("just filled"))
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if f.ring() != &self.ring || f.ctx() != &self.ctx {
            return Err(Error::ContextMismatch(format!("{f} is not over {} in {}", self.ring, self.ctx)));
        }
        Ok(reduce_full(f, self.groebner_basis()?))
    }

    pub fn contains(&self, f: &Poly) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn is_unit_ideal(&self) -> Result<bool> {
        if self.generators.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.groebner_basis()?.iter().any(|g| g.is_constant()))
    }

    /// Krull dimension of `K[vars]/I`; `-1` for the unit ideal.
    pub fn krull_dimension(&self) -> Result<i64> {
        if self.is_unit_ideal()? {
            return Ok(-1);
        }
        let lms: Vec<Monomial> = self.groebner_basis()?.iter().filter_map(|g| g.leading_monomial().cloned()).collect();
        let n = self.ctx.len();
        if n > 24 {
            return Err(Error::UnsupportedCodimension(format!("{n} variables")));
        }
        let supports: Vec<u32> = lms.iter().map(|m| m.support().fold(0u32, |acc, i| acc | (1 << i))).collect();
        let mut best = 0;
        for mask in 0u32..(1u32 << n) {
            let size = mask.count_ones();
            if size <= best {
                continue;
            }
            if supports.iter().all(|s| s & !mask != 0) {
                best = size;
            }
        }
        Ok(best as i64)
    }
}

fn spoly(f: &Poly, g: &Poly) -> Poly {
    let (mf, cf) = &f.terms()[0];
    let (mg, cg) = &g.terms()[0];
    let l = mf.lcm(mg);
    let ring = f.ring();
    // both are monic
    debug_assert!(ring.is_one(cf) && ring.is_one(cg));
    f.mul_term(&mf.quotient_of(&l), &ring.one()).sub(&g.mul_term(&mg.quotient_of(&l), &ring.one()))
}

/// Full reduction of `f` modulo monic `basis`.
fn reduce_full(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring();
    let ctx = f.ctx();
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, crate::ring::Elem)> = Vec::new();
    while let Some((m, c)) = rest.terms().first().cloned() {
        match basis.iter().find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(&m))) {
            Some(g) => {
                let q = g.leading_monomial().unwrap().quotient_of(&m);
                rest = rest.sub(&g.mul_term(&q, &c));
            }
            None => {
                done.push((m, c));
                rest = rest.without_leading();
            }
        }
    }
    // terms were emitted in decreasing order
    Poly::from_terms(ring, ctx, done)
}

fn monic(p: Poly) -> Poly {
    p.make_monic().expect("field coefficients")
}

fn buchberger(ring: &Ring, ctx: &Arc<VarContext>, gens: &[Poly]) -> Result<Vec<Poly>> {
    for g in gens {
        guard::check(g.total_degree())?;
    }
    if gens.iter().any(|g| g.is_constant() && !g.is_zero()) {
        return Ok(vec![Poly::one(ring, ctx)]);
    }
    let mut polys: Vec<Poly> = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    let mut pairs: Vec<(usize, usize, Monomial)> = Vec::new();

    fn add(h: Poly, polys: &mut Vec<Poly>, active: &mut Vec<usize>, pairs: &mut Vec<(usize, usize, Monomial)>) {
        let hi = polys.len();
        let lh = h.leading_monomial().unwrap().clone();
        polys.push(h);
        // Gebauer-Moeller update
        let mut cands: Vec<(usize, Monomial, bool)> = active
            .iter()
            .map(|&g| {
                let lg = polys[g].leading_monomial().unwrap();
                (g, lh.lcm(lg), lh.is_coprime(lg))
            })
            .collect();
        let mut keep = vec![true; cands.len()];
        for i in 0..cands.len() {
            if cands[i].2 {
                continue;
            }
            for j in 0..cands.len() {
                if i != j && keep[j] && cands[j].1.divides(&cands[i].1) && (cands[j].1 != cands[i].1 || j < i) {
                    keep[i] = false;
                    break;
                }
            }
        }
        cands = cands.into_iter().zip(keep).filter(|(_, k)| *k).map(|(c, _)| c).collect();
        pairs.retain(|(a, b, l)| {
            !(lh.divides(l)
                && &polys[*a].leading_monomial().unwrap().lcm(&lh) != l
                && &polys[*b].leading_monomial().unwrap().lcm(&lh) != l)
        });
        for (g, l, coprime) in cands {
            if !coprime {
                pairs.push((g, hi, l));
            }
        }
        active.retain(|&g| !lh.divides(polys[g].leading_monomial().unwrap()));
        active.push(hi);
    }

    let mut sorted: Vec<Poly> = gens.iter().cloned().map(monic).collect();
    sorted.sort_by(|a, b| ctx.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for g in sorted {
        let basis: Vec<Poly> = active.iter().map(|&i| polys[i].clone()).collect();
        let h = reduce_full(&g, &basis);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Poly::one(ring, ctx)]);
        }
        add(monic(h), &mut polys, &mut active, &mut pairs);
    }

    while !pairs.is_empty() {
        // normal strategy: smallest lcm first, ties by index
        let idx = (0..pairs.len())
            .min_by(|&i, &j| {
                ctx.cmp(&pairs[i].2, &pairs[j].2).then_with(|| (pairs[i].0, pairs[i].1).cmp(&(pairs[j].0, pairs[j].1)))
            })
            .unwrap();
        let (a, b, l) = pairs.swap_remove(idx);
        guard::check(l.degree())?;
        let s = spoly(&polys[a], &polys[b]);
        let basis: Vec<Poly> = active.iter().map(|&i| polys[i].clone()).collect();
        let h = reduce_full(&s, &basis);
        if h.is_zero() {
            continue;
        }
        guard::check(h.total_degree())?;
        if h.is_constant() {
            return Ok(vec![Poly::one(ring, ctx)]);
        }
        add(monic(h), &mut polys, &mut active, &mut pairs);
    }

    // minimal basis, then interreduce
    let mut basis: Vec<Poly> = active.iter().map(|&i| polys[i].clone()).collect();
    basis.sort_by(|a, b| ctx.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Poly> = Vec::new();
    for (i, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(j, h)| {
            j != i && h.leading_monomial().unwrap().divides(lm) && (h.leading_monomial().unwrap() != lm || j < i)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<Poly> = minimal.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, p)| p.clone()).collect();
        reduced.push(monic(reduce_full(&minimal[i], &others)));
    }
    reduced.sort_by(|a, b| ctx.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    Ok(reduced)
}

/// Is the projective vanishing locus of `ideal` empty? `blocks` lists the
/// homogeneous coordinate blocks of a product of projective spaces; every
/// generator must be homogeneous in each block. Checked chart by chart.
pub fn proj_is_empty(ideal: &Ideal, blocks: &[Vec<String>]) -> Result<bool> {
    let ctx = ideal.ctx();
    let idx: Vec<Vec<usize>> =
        blocks.iter().map(|b| b.iter().map(|v| ctx.require(v)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    for g in ideal.generators() {
        for b in &idx {
            if g.homogeneous_degree(b).is_none() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
    }
    for chart in charts(&idx) {
        let gens: Vec<Poly> = ideal.generators().iter().map(|g| g.dehomogenize(&chart)).collect();
        if !Ideal::new(ideal.ring(), ctx, gens)?.is_unit_ideal()? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Is `f` in the radical of `ideal`? Decided by adjoining `1 - z f` for a
/// fresh variable `z`.
pub fn in_radical(ideal: &Ideal, f: &Poly) -> Result<bool> {
    let ctx = ideal.ctx();
    if f.ring() != ideal.ring() || f.ctx() != ctx {
        return Err(Error::ContextMismatch(format!("{f} is not over {} in {ctx}", ideal.ring())));
    }
    if f.is_zero() {
        return Ok(true);
    }
    let mut z = String::from("z");
    while ctx.index_of(&z).is_some() {
        z.push('_');
    }
    let mut entries = ctx.entries();
    entries.push((z.clone(), crate::poly::Block::Geometric));
    let big = VarContext::new(entries)?;
    let ring = ideal.ring();
    let mut gens = Vec::with_capacity(ideal.generators().len() + 1);
    for g in ideal.generators() {
        gens.push(g.reembed(ring, &big)?);
    }
    let zf = Poly::variable(ring, &big, &z)?.mul(&f.reembed(ring, &big)?);
    gens.push(Poly::one(ring, &big).sub(&zf));
    Ideal::new(ring, &big, gens)?.is_unit_ideal()
}

/// All choices of one coordinate per block.
pub fn charts(blocks: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for b in blocks {
        out = out
            .into_iter()
            .flat_map(|c: Vec<usize>| {
                b.iter().map(move |&v| {
                    let mut c = c.clone();
                    c.push(v);
                    c
                })
            })
            .collect();
    }
    out
}
