use std::collections::BTreeMap;

use super::{TranscElement, TranscRing};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::ring::{generates_unit_ideal, Elem, Ring};

/// An element of `R(t_1, ..., t_{n-1})(t_n)` and that ring.
#[derive(Clone, Debug)]
pub struct Curried {
    pub ring: Ring,
    pub value: TranscElement,
}

fn extension(r: &Ring) -> Result<&TranscRing> {
    r.transc().ok_or_else(|| Error::MixedExtensions(format!("{r} is not a transcendental extension")))
}

/// The ring `R(t_1, ..., t_{n-1})(t_n)`; for `n = 1` the ring itself.
pub fn curried_ring(source: &Ring) -> Result<Ring> {
    let t = extension(source)?;
    let names = t.ctx().names();
    if names.len() == 1 {
        return Ok(source.clone());
    }
    let inner = Ring::transcendental(t.base().clone(), &names[..names.len() - 1])?;
    Ring::transcendental(inner, &names[names.len() - 1..])
}

/// Rewrite a polynomial in `t_1..t_n` over `R` as a polynomial in `t_n` over
/// `R(t_1..t_{n-1})`.
fn split_last(p: &Poly, inner: &TranscRing, outer: &TranscRing, outer_ring: &Ring) -> Poly {
    let n = p.ctx().len();
    let mut groups: BTreeMap<u32, Vec<(Monomial, Elem)>> = BTreeMap::new();
    for (m, c) in p.terms() {
        let e = m.exponent(n - 1);
        let rest = Monomial::from_exponents(&m.exponents()[..n - 1]);
        groups.entry(e).or_default().push((rest, c.clone()));
    }
    let terms = groups
        .into_iter()
        .map(|(e, ts)| {
            let c = Poly::from_terms(inner.base(), inner.ctx(), ts);
            (Monomial::from_exponents(&[e]), Elem::Frac(Box::new(inner.from_poly(c))))
        })
        .collect();
    Poly::from_terms(outer_ring, outer.ctx(), terms)
}

/// `R(t_1, ..., t_n) -> R(t_1, ..., t_{n-1})(t_n)`.
pub fn curry(source: &Ring, a: &TranscElement) -> Result<Curried> {
    let t = extension(source)?;
    t.checked(a)?;
    let ring = curried_ring(source)?;
    if &ring == source {
        return Ok(Curried { ring, value: a.clone() });
    }
    let outer = extension(&ring)?;
    let inner = extension(outer.base())?;
    let num = split_last(&a.num, inner, outer, outer.base());
    let den = split_last(&a.den, inner, outer, outer.base());
    let value = outer.fraction(num, den)?;
    Ok(Curried { ring, value })
}

/// Inverse of [`curry`], landing in `target = R(t_1, ..., t_n)`.
pub fn uncurry(c: &Curried, target: &Ring) -> Result<TranscElement> {
    if &c.ring == target {
        return Ok(c.value.clone());
    }
    let t = extension(target)?;
    let outer = extension(&c.ring)?;
    let inner = extension(outer.base())?;
    if inner.base() != t.base() {
        return Err(Error::MixedExtensions(format!("{} vs {}", inner.base(), t.base())));
    }
    // common denominator of all inner coefficients
    let mut dens: Vec<Poly> = Vec::new();
    for (_, e) in c.value.num.terms().iter().chain(c.value.den.terms()) {
        let d = &e.as_frac().den;
        if !dens.contains(d) {
            dens.push(d.clone());
        }
    }
    let n = t.nvars();
    let flatten = |p: &Poly| -> Result<Poly> {
        let mut acc = Poly::zero(t.base(), t.ctx());
        for (m, e) in p.terms() {
            let x = e.as_frac();
            let mut factor = x.num.clone();
            for d in dens.iter().filter(|d| *d != &x.den) {
                factor = factor.mul(d);
            }
            let shift = Monomial::var(n, n - 1, m.exponent(0));
            let lifted = factor.reembed(t.base(), t.ctx())?;
            acc = acc.add(&lifted.mul_term(&shift, &t.base().one()));
        }
        Ok(acc)
    };
    t.fraction(flatten(&c.value.num)?, flatten(&c.value.den)?)
}

/// Admissibility of `f` over `R(t_1..t_{n-1})` after currying: the
/// `t_n`-coefficients generate the unit ideal of `R(t_1..t_{n-1})`.
pub fn iterated_admissible(source: &Ring, f: &Poly) -> Result<bool> {
    extension(source)?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = curried_ring(source)?;
    if &ring == source {
        return super::is_admissible_denominator(f);
    }
    let outer = extension(&ring)?;
    let inner = extension(outer.base())?;
    let g = split_last(f, inner, outer, outer.base());
    let coeffs: Vec<Elem> = g.terms().iter().map(|(_, c)| c.clone()).collect();
    if coeffs.iter().any(|c| outer.base().is_unit(c)) {
        return Ok(true);
    }
    generates_unit_ideal(outer.base(), &coeffs)
}
