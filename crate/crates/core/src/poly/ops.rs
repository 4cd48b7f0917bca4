use std::collections::HashMap;
use std::sync::Arc;

use super::{Monomial, Poly, VarContext};
use crate::error::{Error, Result};
use crate::guard;
use crate::ring::{Elem, Ring};
use crate::transcend::TranscElement;

/// Variable name to replacement value. Values live in the target ring and
/// context of the substitution.
pub type Bindings = HashMap<String, Poly>;

/// Replace variables of `f` (and, when the coefficients are rational
/// functions, their parameters) by polynomials over `target`/`ctx`.
///
/// Unbound variables and parameters are matched by name in the target.
pub fn substitute(f: &Poly, target: &Ring, ctx: &Arc<VarContext>, bindings: &Bindings) -> Result<Poly> {
    for v in bindings.values() {
        if v.ring() != target || v.ctx() != ctx {
            return Err(Error::DomainIncompatible(format!("binding value {v} does not live over {target} in {ctx}")));
        }
    }
    let var_values = values_for(f.ctx(), target, ctx, bindings)?;
    let param_values = match f.ring() {
        Ring::Transc(t) if t.ctx().names().iter().any(|n| bindings.contains_key(n)) => {
            Some(values_for(t.ctx(), target, ctx, bindings)?)
        }
        _ => None,
    };
    let mut acc = Poly::zero(target, ctx);
    let mut powers = PowerCache::default();
    for (m, c) in f.terms() {
        let coeff = match &param_values {
            Some(vals) => {
                let x = c.as_frac();
                let num = eval_poly(&x.num, vals, target, ctx, &mut PowerCache::default())?;
                let den = eval_poly(&x.den, vals, target, ctx, &mut PowerCache::default())?;
                if !den.is_constant() || den.is_zero() {
                    return Err(Error::DomainIncompatible(format!("denominator {} does not become a unit", x.den)));
                }
                let inv = target
                    .inv(&den.constant_coeff())
                    .map_err(|_| Error::DomainIncompatible(format!("denominator {den} is not a unit")))?;
                num.scale(&inv)
            }
            None => {
                let c = target.coerce(f.ring(), c)?;
                Poly::constant(target, ctx, c)
            }
        };
        let mut term = coeff;
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&powers.get(i, e, &var_values[i]));
            }
        }
        acc = acc.add(&term);
    }
    guard::check(acc.total_degree())?;
    Ok(acc)
}

fn values_for(src: &VarContext, target: &Ring, ctx: &Arc<VarContext>, bindings: &Bindings) -> Result<Vec<Poly>> {
    src.names()
        .iter()
        .map(|name| {
            if let Some(v) = bindings.get(name) {
                return Ok(v.clone());
            }
            if ctx.index_of(name).is_some() {
                return Poly::variable(target, ctx, name);
            }
            if let Ring::Transc(t) = target {
                if t.ctx().index_of(name).is_some() {
                    let tv = Poly::variable(t.base(), t.ctx(), name)?;
                    let e = Elem::Frac(Box::new(t.from_poly(tv)));
                    return Ok(Poly::constant(target, ctx, e));
                }
            }
            Err(Error::DomainIncompatible(format!("variable {name} has no image")))
        })
        .collect()
}

#[derive(Default)]
struct PowerCache(HashMap<(usize, u32), Poly>);

impl PowerCache {
    fn get(&mut self, i: usize, e: u32, base: &Poly) -> Poly {
        self.0.entry((i, e)).or_insert_with(|| base.pow(e)).clone()
    }
}

fn eval_poly(p: &Poly, values: &[Poly], target: &Ring, ctx: &Arc<VarContext>, powers: &mut PowerCache) -> Result<Poly> {
    let mut acc = Poly::zero(target, ctx);
    for (m, c) in p.terms() {
        let mut term = Poly::constant(target, ctx, target.coerce(p.ring(), c)?);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                term = term.mul(&powers.get(i, e, &values[i]));
            }
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// `Some(g)` with `g^p = f` when `f` is a p-th power over a field of
/// characteristic `p`; `None` otherwise.
pub fn is_pth_power(f: &Poly) -> Result<Option<Poly>> {
    let ring = f.ring();
    let p = ring.characteristic();
    if p == 0 || !ring.is_field() {
        return Err(Error::WrongCharacteristic(format!(
            "p-th powers need a field of positive characteristic, got {ring}"
        )));
    }
    let p32 = u32::try_from(p).map_err(|_| Error::WrongCharacteristic(format!("{p} too large")))?;
    let mut terms = Vec::with_capacity(f.len());
    for (m, c) in f.terms() {
        if m.exponents().iter().any(|&e| e % p32 != 0) {
            return Ok(None);
        }
        let root = match coefficient_root(ring, c)? {
            Some(r) => r,
            None => return Ok(None),
        };
        let e: Vec<u32> = m.exponents().iter().map(|&e| e / p32).collect();
        terms.push((Monomial::from_exponents(&e), root));
    }
    Ok(Some(Poly::from_terms(ring, f.ctx(), terms)))
}

fn coefficient_root(ring: &Ring, c: &Elem) -> Result<Option<Elem>> {
    match ring {
        Ring::Transc(_) => {
            // canonical fractions over a field are reduced with monic
            // denominators, so a p-th power has p-th power parts
            let x = c.as_frac();
            let (num, den) = match (is_pth_power(&x.num)?, is_pth_power(&x.den)?) {
                (Some(a), Some(b)) => (a, b),
                _ => return Ok(None),
            };
            Ok(Some(Elem::Frac(Box::new(TranscElement::new_unchecked(num, den)))))
        }
        _ => Ok(Some(ring.pth_root(c)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Block;
    use crate::ring::univariate;

    #[test]
    fn frobenius_members_are_pth_powers() {
        for p in [2u64, 3, 5] {
            let r = Ring::PrimeField(p);
            let ctx = VarContext::geometric(&["x0", "x1", "x2"]);
            let v = |n| Poly::variable(&r, &ctx, n).unwrap();
            let a = [1i64, 2, (p as i64) - 1];
            let g = v("x0")
                .scale(&r.from_int(a[0]))
                .add(&v("x1").scale(&r.from_int(a[1])))
                .add(&v("x2").scale(&r.from_int(a[2])));
            let f = g.pow(p as u32);
            let root = is_pth_power(&f).unwrap().unwrap();
            assert_eq!(root.pow(p as u32), f);
            let bad = v("x0").pow(p as u32).add(&v("x0"));
            assert!(is_pth_power(&bad).unwrap().is_none());
        }
    }

    #[test]
    fn constants_over_f4() {
        let ctx = VarContext::geometric(&["w"]);
        let f2 = Ring::PrimeField(2);
        let m = univariate::from_coeffs(&f2, &ctx, vec![Elem::Res(1), Elem::Res(1), Elem::Res(1)]);
        let f4 = Ring::quotient(f2.clone(), "w", &m).unwrap();
        let xctx = VarContext::geometric(&["x"]);
        for c in f4.elements().unwrap() {
            let f = Poly::constant(&f4, &xctx, c.clone());
            let g = is_pth_power(&f).unwrap().unwrap();
            assert_eq!(g.constant_coeff(), f4.pow(&c, 2));
            assert_eq!(g.pow(2), f);
        }
    }

    #[test]
    fn wrong_characteristic() {
        let ctx = VarContext::geometric(&["x"]);
        let f = Poly::variable(&Ring::Rationals, &ctx, "x").unwrap();
        assert!(matches!(is_pth_power(&f), Err(Error::WrongCharacteristic(_))));
    }

    #[test]
    fn chart_substitution() {
        let z = Ring::Integers;
        let ctx = VarContext::new(vec![
            ("x0".into(), Block::Geometric),
            ("x1".into(), Block::Geometric),
            ("s0".into(), Block::Parameter),
            ("s1".into(), Block::Parameter),
        ])
        .unwrap();
        let v = |n| Poly::variable(&z, &ctx, n).unwrap();
        let f = v("s0").mul(&v("x0")).add(&v("s1").mul(&v("x1")));
        let zt = Ring::transcendental(z.clone(), &["t1"]).unwrap();
        let xctx = VarContext::geometric(&["x0", "x1"]);
        let t1 = {
            let t = zt.transc().unwrap();
            Poly::constant(&zt, &xctx, Elem::Frac(Box::new(t.from_poly(Poly::variable(&z, t.ctx(), "t1").unwrap()))))
        };
        let mut b = Bindings::new();
        b.insert("s0".into(), Poly::one(&zt, &xctx));
        b.insert("s1".into(), t1);
        let g = substitute(&f, &zt, &xctx, &b).unwrap();
        assert_eq!(g.to_string(), "(+ x0 (* t1 x1))");

        let same = substitute(&f, &z, &ctx, &Bindings::new()).unwrap();
        assert_eq!(same, f);
    }
}
