//! Sparse multivariate polynomials over any supported coefficient ring.

mod context;
pub mod gcd;
mod ops;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

pub use context::{Block, Monomial, VarContext};
pub use ops::{is_pth_power, substitute, Bindings};

/// A polynomial: terms sorted strictly descending under the context's
/// monomial order, no zero coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    ring: Ring,
    ctx: Arc<VarContext>,
    terms: Vec<(Monomial, Elem)>,
}

impl Poly {
    pub fn zero(ring: &Ring, ctx: &Arc<VarContext>) -> Poly {
        Poly { ring: ring.clone(), ctx: ctx.clone(), terms: Vec::new() }
    }

    pub fn constant(ring: &Ring, ctx: &Arc<VarContext>, c: Elem) -> Poly {
        Self::monomial(ring, ctx, Monomial::one(ctx.len()), c)
    }

    pub fn one(ring: &Ring, ctx: &Arc<VarContext>) -> Poly {
        Self::constant(ring, ctx, ring.one())
    }

    pub fn from_int(ring: &Ring, ctx: &Arc<VarContext>, n: i64) -> Poly {
        Self::constant(ring, ctx, ring.from_int(n))
    }

    pub fn monomial(ring: &Ring, ctx: &Arc<VarContext>, m: Monomial, c: Elem) -> Poly {
        let terms = if ring.is_zero(&c) { Vec::new() } else { vec![(m, c)] };
        Poly { ring: ring.clone(), ctx: ctx.clone(), terms }
    }

    pub fn var_index(ring: &Ring, ctx: &Arc<VarContext>, i: usize) -> Poly {
        Self::monomial(ring, ctx, Monomial::var(ctx.len(), i, 1), ring.one())
    }

    pub fn variable(ring: &Ring, ctx: &Arc<VarContext>, name: &str) -> Result<Poly> {
        Ok(Self::var_index(ring, ctx, ctx.require(name)?))
    }

    /// Build from arbitrary (possibly repeated, unsorted, zero) terms.
    pub fn from_terms(ring: &Ring, ctx: &Arc<VarContext>, terms: Vec<(Monomial, Elem)>) -> Poly {
        let mut acc: HashMap<Monomial, Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            debug_assert_eq!(m.len(), ctx.len());
            match acc.get_mut(&m) {
                Some(existing) => *existing = ring.add(existing, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !ring.is_zero(c)).collect();
        terms.sort_by(|a, b| ctx.cmp(&b.0, &a.0));
        Poly { ring: ring.clone(), ctx: ctx.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Coefficient of the monomial 1.
    pub fn constant_coeff(&self) -> Elem {
        match self.terms.last() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => self.ring.zero(),
        }
    }

    pub fn coeff(&self, m: &Monomial) -> Elem {
        self.terms.iter().find(|(mm, _)| mm == m).map(|(_, c)| c.clone()).unwrap_or_else(|| self.ring.zero())
    }

    /// Drop the leading term.
    pub fn without_leading(&self) -> Poly {
        let terms = self.terms.get(1..).map(|t| t.to_vec()).unwrap_or_default();
        Poly { ring: self.ring.clone(), ctx: self.ctx.clone(), terms }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.degree()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.ctx.len()).filter(|&i| self.degree_in(i) > 0).collect()
    }

    pub fn same_space(&self, other: &Poly) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::ContextMismatch(format!("coefficient rings {} and {}", self.ring, other.ring)));
        }
        if self.ctx != other.ctx {
            return Err(Error::ContextMismatch(format!("contexts {} and {}", self.ctx, other.ctx)));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.same_space(other)?;
        Ok(self.add(other))
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.same_space(other)?;
        Ok(self.mul(other))
    }

    /// Sum. Panics if the operands live in different spaces; use
    /// [`Poly::try_add`] at trust boundaries.
    pub fn add(&self, other: &Poly) -> Poly {
        debug_assert!(self.same_space(other).is_ok(), "{:?}", self.same_space(other));
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            match self.ctx.cmp(&self.terms[i].0, &other.terms[j].0) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(other.terms[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ring.add(&self.terms[i].1, &other.terms[j].1);
                    if !ring.is_zero(&c) {
                        out.push((self.terms[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend_from_slice(&other.terms[j..]);
        Poly { ring: ring.clone(), ctx: self.ctx.clone(), terms: out }
    }

    pub fn neg(&self) -> Poly {
        let terms = self.terms.iter().map(|(m, c)| (m.clone(), self.ring.neg(c))).collect();
        Poly { ring: self.ring.clone(), ctx: self.ctx.clone(), terms }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        self.mul_term(&Monomial::one(self.ctx.len()), c)
    }

    /// Multiply by `c * m`. Monomial orders are multiplicative, so the term
    /// order is preserved; only zero products (zero divisors) are dropped.
    pub fn mul_term(&self, m: &Monomial, c: &Elem) -> Poly {
        let terms = self
            .terms
            .iter()
            .filter_map(|(mm, cc)| {
                let prod = self.ring.mul(cc, c);
                (!self.ring.is_zero(&prod)).then(|| (mm.mul(m), prod))
            })
            .collect();
        Poly { ring: self.ring.clone(), ctx: self.ctx.clone(), terms }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        debug_assert!(self.same_space(other).is_ok(), "{:?}", self.same_space(other));
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring, &self.ctx);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: Vec<(Monomial, Elem)> = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                acc.push((m1.mul(m2), self.ring.mul(c1, c2)));
            }
        }
        Poly::from_terms(&self.ring, &self.ctx, acc)
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.ring, &self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Divide by the leading coefficient (which must be a unit).
    pub fn make_monic(&self) -> Result<Poly> {
        match self.leading_coeff() {
            None => Ok(self.clone()),
            Some(lc) => {
                let inv = self.ring.inv(lc)?;
                Ok(self.scale(&inv))
            }
        }
    }

    /// Apply `f` to every coefficient, landing in `target`.
    pub fn map_coefficients<F>(&self, target: &Ring, mut f: F) -> Result<Poly>
    where
        F: FnMut(&Elem) -> Result<Elem>,
    {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            terms.push((m.clone(), f(c)?));
        }
        Ok(Poly::from_terms(target, &self.ctx, terms))
    }

    /// Move into another ring and context: coefficients are coerced, variables
    /// are matched by name.
    pub fn reembed(&self, ring: &Ring, ctx: &Arc<VarContext>) -> Result<Poly> {
        if &self.ring == ring && &self.ctx == ctx {
            return Ok(self.clone());
        }
        let map: Vec<Option<usize>> = self.ctx.names().iter().map(|n| ctx.index_of(n)).collect();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut nm = Monomial::one(ctx.len());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => nm.set(j, e),
                    None => return Err(Error::UnknownVariable(self.ctx.name(i).to_string())),
                }
            }
            terms.push((nm, ring.coerce(&self.ring, c)?));
        }
        Ok(Poly::from_terms(ring, ctx, terms))
    }

    /// Formal partial derivative with respect to variable index `var`.
    pub fn derivative(&self, var: usize) -> Poly {
        let mut terms = Vec::new();
        for (m, c) in &self.terms {
            let e = m.exponent(var);
            if e == 0 {
                continue;
            }
            let mut nm = m.clone();
            nm.set(var, e - 1);
            let c = self.ring.mul(c, &self.ring.from_int(e as i64));
            if !self.ring.is_zero(&c) {
                terms.push((nm, c));
            }
        }
        // differentiation preserves the relative order of surviving terms only
        // for lex-like orders, so re-sort
        Poly::from_terms(&self.ring, &self.ctx, terms)
    }

    pub fn partial_derivative(&self, var: &str) -> Result<Poly> {
        Ok(self.derivative(self.ctx.require(var)?))
    }

    /// Is the polynomial homogeneous in the given variable indices?
    pub fn homogeneous_degree(&self, vars: &[usize]) -> Option<u32> {
        let mut deg = None;
        for (m, _) in &self.terms {
            let d = m.degree_in(vars);
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }

    /// Set the listed variables to 1.
    pub fn dehomogenize(&self, vars: &[usize]) -> Poly {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut nm = m.clone();
                for &v in vars {
                    nm.set(v, 0);
                }
                (nm, c.clone())
            })
            .collect();
        Poly::from_terms(&self.ring, &self.ctx, terms)
    }

    /// Write `self` as `sum_i c_i * v^i`, returning `[c_0, c_1, ...]`.
    pub fn univariate_coefficients(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(var) as usize;
            let mut nm = m.clone();
            nm.set(var, 0);
            buckets[e].push((nm, c.clone()));
        }
        buckets.into_iter().map(|t| Poly::from_terms(&self.ring, &self.ctx, t)).collect()
    }

    pub fn from_univariate_coefficients(coeffs: &[Poly], var: usize, ring: &Ring, ctx: &Arc<VarContext>) -> Poly {
        let mut terms = Vec::new();
        for (e, c) in coeffs.iter().enumerate() {
            for (m, cc) in c.terms() {
                let mut nm = m.clone();
                nm.set(var, m.exponent(var) + e as u32);
                terms.push((nm, cc.clone()));
            }
        }
        Poly::from_terms(ring, ctx, terms)
    }

    /// Canonical s-expression text.
    pub fn to_sexpr(&self) -> String {
        self.to_string()
    }

    fn fmt_term(&self, m: &Monomial, c: &Elem) -> String {
        let mut factors = Vec::new();
        for (i, &e) in m.exponents().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(self.ctx.name(i).to_string()),
                _ => factors.push(format!("(^ {} {})", self.ctx.name(i), e)),
            }
        }
        let coeff = self.ring.display_elem(c);
        if factors.is_empty() {
            return coeff;
        }
        if c == &self.ring.one() {
            if factors.len() == 1 {
                return factors.pop().unwrap();
            }
            return format!("(* {})", factors.join(" "));
        }
        // splice a product coefficient into the term's product
        match coeff.strip_prefix("(* ").and_then(|r| r.strip_suffix(')')) {
            Some(inner) => format!("(* {} {})", inner, factors.join(" ")),
            None => format!("(* {} {})", coeff, factors.join(" ")),
        }
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.terms.len() {
            0 => write!(f, "0"),
            1 => write!(f, "{}", self.fmt_term(&self.terms[0].0, &self.terms[0].1)),
            _ => {
                write!(f, "(+")?;
                for (m, c) in &self.terms {
                    write!(f, " {}", self.fmt_term(m, c))?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Coefficients of `f` viewed as a polynomial in the variables of `block`,
/// listed in descending order of the block monomials. Each coefficient is a
/// polynomial in the complementary variables (a constant when the complement
/// is empty).
pub fn coefficient_block(f: &Poly, block: Block) -> Result<Vec<Poly>> {
    let (mons, coeffs) = split_block(f, block)?;
    drop(mons);
    Ok(coeffs)
}

/// Like [`coefficient_block`] but also returns the block monomials (in the
/// block sub-context).
pub fn split_block(f: &Poly, block: Block) -> Result<(Vec<Monomial>, Vec<Poly>)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx();
    let inside: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.block(i) == block).collect();
    let outside: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.block(i) != block).collect();
    let in_ctx = ctx.restrict(&inside);
    let out_ctx = ctx.restrict(&outside);
    let mut groups: HashMap<Monomial, Vec<(Monomial, Elem)>> = HashMap::new();
    for (m, c) in f.terms() {
        let key = Monomial::from_exponents(&inside.iter().map(|&i| m.exponent(i)).collect::<Vec<_>>());
        let rest = Monomial::from_exponents(&outside.iter().map(|&i| m.exponent(i)).collect::<Vec<_>>());
        groups.entry(key).or_default().push((rest, c.clone()));
    }
    let mut keys: Vec<Monomial> = groups.keys().cloned().collect();
    keys.sort_by(|a, b| in_ctx.cmp(b, a));
    let coeffs = keys.iter().map(|k| Poly::from_terms(f.ring(), &out_ctx, groups.remove(k).unwrap())).collect();
    Ok((keys, coeffs))
}

/// Inverse of [`split_block`]: reassemble `sum_k m_k * c_k` in `ctx`.
pub fn assemble_block(ring: &Ring, ctx: &Arc<VarContext>, block: Block, mons: &[Monomial], coeffs: &[Poly]) -> Poly {
    let inside: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.block(i) == block).collect();
    let outside: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.block(i) != block).collect();
    let mut terms = Vec::new();
    for (k, c) in mons.iter().zip(coeffs) {
        for (rest, cc) in c.terms() {
            let mut m = Monomial::one(ctx.len());
            for (j, &i) in inside.iter().enumerate() {
                m.set(i, k.exponent(j));
            }
            for (j, &i) in outside.iter().enumerate() {
                m.set(i, rest.exponent(j));
            }
            terms.push((m, cc.clone()));
        }
    }
    Poly::from_terms(ring, ctx, terms)
}

/// View `f` as a polynomial in the `block` variables whose coefficients are
/// elements of the polynomial ring over the complementary variables. The
/// complement must be nonempty and the coefficient ring a field.
pub fn over_complement(f: &Poly, block: Block) -> Result<Poly> {
    let ctx = f.ctx();
    let inside: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.block(i) == block).collect();
    let outside: Vec<usize> = (0..ctx.len()).filter(|&i| ctx.block(i) != block).collect();
    let in_ctx = ctx.restrict(&inside);
    let names: Vec<&str> = outside.iter().map(|&i| ctx.name(i)).collect();
    let coeff_ring = Ring::poly_ring(f.ring().clone(), &names)?;
    let out_ctx = match &coeff_ring {
        Ring::PolyRing(d) => d.ctx.clone(),
        _ => unreachable!(),
    };
    if f.is_zero() {
        return Ok(Poly::zero(&coeff_ring, &in_ctx));
    }
    let (mons, coeffs) = split_block(f, block)?;
    let terms = mons
        .into_iter()
        .zip(coeffs)
        .map(|(m, c)| {
            let c = Poly::from_terms(f.ring(), &out_ctx, c.into_terms());
            (m, Elem::Poly(c))
        })
        .collect();
    Ok(Poly::from_terms(&coeff_ring, &in_ctx, terms))
}
