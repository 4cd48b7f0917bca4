use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{univariate, Elem, Ring, RingElement};
use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::transcend::TranscRing;

/// Generator data of a maximal ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MaxTag {
    /// `(q)` in `Z`, `Z/n` or `Z_(p)`.
    Prime(u64),
    /// `(0)` in a field.
    Zero,
    /// `(g)` for an irreducible monic `g` in `k[x]` or dividing the modulus of `k[x]/(f)`.
    Factor(Poly),
    /// `m R(t)` for a maximal ideal `m` of the base.
    Extended(Box<MaximalIdealDesc>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalIdealDesc {
    ring: Ring,
    tag: MaxTag,
}

impl MaximalIdealDesc {
    /// Validates that the tag generates a maximal ideal of `ring`.
    pub fn new(ring: Ring, tag: MaxTag) -> Result<Self> {
        let bad = |why: String| Err(Error::InvalidRing(why));
        match (&ring, &tag) {
            (Ring::Integers | Ring::LocalizedIntegersAt(_), MaxTag::Prime(q)) if !arith::is_prime(*q) => {
                return bad(format!("{q} is not prime"));
            }
            (Ring::Integers, MaxTag::Prime(_)) => {}
            (Ring::LocalizedIntegersAt(p), MaxTag::Prime(q)) if p != q => {
                return bad(format!("({q}) is the unit ideal of {ring}"));
            }
            (Ring::LocalizedIntegersAt(_), MaxTag::Prime(_)) => {}
            (Ring::IntegersMod(n), MaxTag::Prime(q)) => {
                if !arith::is_prime(*q) || n % q != 0 {
                    return bad(format!("({q}) is not maximal in {ring}"));
                }
            }
            (_, MaxTag::Zero) if ring.is_field() => {}
            (Ring::PolyRing(d), MaxTag::Factor(g)) if d.ctx.len() == 1 => {
                let g = g.reembed(&d.field, &d.ctx)?;
                if univariate::is_irreducible(&g)? {
                    let g = g.make_monic()?;
                    return Ok(MaximalIdealDesc { ring, tag: MaxTag::Factor(g) });
                }
                return bad(format!("{g} is not irreducible"));
            }
            (Ring::Quotient(q), MaxTag::Factor(g)) => {
                let g = g.reembed(&q.field, &q.ctx)?;
                if g.total_degree() == 0 || !univariate::rem(&q.modulus, &g).is_zero() {
                    return bad(format!("{g} does not divide {}", q.modulus));
                }
                if !univariate::is_irreducible(&g)? {
                    return bad(format!("{g} is not irreducible"));
                }
                let g = g.make_monic()?;
                return Ok(MaximalIdealDesc { ring, tag: MaxTag::Factor(g) });
            }
            (Ring::Transc(t), MaxTag::Extended(m)) if &m.ring == t.base() => {}
            _ => return bad(format!("{tag:?} does not describe a maximal ideal of {ring}")),
        }
        Ok(MaximalIdealDesc { ring, tag })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn tag(&self) -> &MaxTag {
        &self.tag
    }

    /// Generators of the ideal inside the base ring (the `Extended` case
    /// reports the base generators).
    pub fn generators(&self) -> Vec<Elem> {
        match &self.tag {
            MaxTag::Prime(q) => vec![self.ring.from_int(*q as i64)],
            MaxTag::Zero => Vec::new(),
            MaxTag::Factor(g) => vec![Elem::Poly(g.clone())],
            MaxTag::Extended(m) => m.generators(),
        }
    }

    pub fn quotient_map(&self) -> Result<QuotientMap> {
        match &self.tag {
            MaxTag::Extended(m) => QuotientMap::extended(&self.ring, m.quotient_map()?),
            _ => QuotientMap::for_ideal(&self.ring, &self.generators()),
        }
    }

    /// The residue field `R/m`.
    pub fn residue_field(&self) -> Result<Ring> {
        Ok(self.quotient_map()?.target().clone())
    }
}

impl fmt::Display for MaximalIdealDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.tag {
            MaxTag::Prime(q) => write!(f, "({q})"),
            MaxTag::Zero => write!(f, "(0)"),
            MaxTag::Factor(g) => write!(f, "({g})"),
            MaxTag::Extended(m) => write!(f, "{m}"),
        }
    }
}

/// All maximal ideals of a semi-local ring.
pub fn enumerate_maximal_ideals(ring: &Ring) -> Result<Vec<MaximalIdealDesc>> {
    let mk = |tag| MaximalIdealDesc::new(ring.clone(), tag);
    match ring {
        _ if ring.is_field() => Ok(vec![mk(MaxTag::Zero)?]),
        Ring::IntegersMod(n) => arith::prime_divisors(*n)
            .ok_or_else(|| Error::FactorizationFailure(format!("cannot factor {n}")))?
            .into_iter()
            .map(|q| mk(MaxTag::Prime(q)))
            .collect(),
        Ring::LocalizedIntegersAt(p) => Ok(vec![mk(MaxTag::Prime(*p))?]),
        Ring::Quotient(q) => univariate::factor(&q.modulus)?.into_iter().map(|(g, _)| mk(MaxTag::Factor(g))).collect(),
        Ring::Transc(t) => {
            enumerate_maximal_ideals(t.base())?.into_iter().map(|m| mk(MaxTag::Extended(Box::new(m)))).collect()
        }
        Ring::Integers | Ring::PolyRing(_) => Err(Error::NotSemiLocal(ring.to_string())),
        _ => Err(Error::NotSemiLocal(ring.to_string())),
    }
}

/// Image of `a` in `R/m`.
pub fn residue_map(a: &RingElement, m: &MaximalIdealDesc) -> Result<RingElement> {
    if a.ring() != m.ring() {
        return Err(Error::MixedRings(format!("{} vs {}", a.ring(), m.ring())));
    }
    let map = m.quotient_map()?;
    RingElement::new(map.target().clone(), map.apply(a.value())?)
}

/// p-th root in the residue field `F_p` (Frobenius is the identity there).
pub fn pth_root_residue(a: &RingElement) -> Result<RingElement> {
    match a.ring() {
        Ring::PrimeField(_) => Ok(a.clone()),
        other => Err(Error::UnsupportedResidueField(other.to_string())),
    }
}

#[derive(Clone, Debug)]
enum MapKind {
    Identity,
    /// Integer-like payloads reduced modulo `m`.
    Residue(u64),
    /// `k[x] -> k` evaluating at a root of the linear generator.
    Evaluate(Elem),
    /// `k[x] -> k[x]/(g)`.
    Remainder(Poly),
    /// `R(t) -> (R/I)(t)` induced by a base map.
    Extended(Box<QuotientMap>, Arc<TranscRing>),
}

/// The canonical surjection `R -> R/I` for an ideal `I` whose quotient lies in
/// the supported universe, together with a set-theoretic section.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: Ring,
    target: Ring,
    generators: Vec<Elem>,
    kind: MapKind,
}

impl QuotientMap {
    pub fn for_ideal(source: &Ring, gens: &[Elem]) -> Result<QuotientMap> {
        let gens: Vec<Elem> = gens.iter().filter(|g| !source.is_zero(g)).cloned().collect();
        let unsupported = || Error::UnsupportedQuotient(format!("{source} modulo the unit ideal"));
        let residue = |m: u64| -> Result<(Ring, MapKind)> {
            match m {
                1 => Err(unsupported()),
                _ if arith::is_prime(m) => Ok((Ring::PrimeField(m), MapKind::Residue(m))),
                _ => Ok((Ring::IntegersMod(m), MapKind::Residue(m))),
            }
        };
        let (target, kind) = if gens.is_empty() {
            (source.clone(), MapKind::Identity)
        } else {
            match source {
                Ring::Integers => {
                    let g = gens.iter().fold(BigInt::zero(), |g, e| g.gcd(e.as_int()));
                    let g =
                        g.to_u64().ok_or_else(|| Error::UnsupportedQuotient(format!("modulus {g} exceeds 64 bits")))?;
                    residue(g)?
                }
                Ring::IntegersMod(n) => {
                    let g = gens.iter().fold(*n, |g, e| arith::gcd_u64(g, e.as_res()));
                    residue(g)?
                }
                Ring::LocalizedIntegersAt(p) => {
                    let v = gens.iter().filter_map(|e| source.valuation(e)).min().unwrap_or(0);
                    let m = p
                        .checked_pow(v)
                        .ok_or_else(|| Error::UnsupportedQuotient(format!("{p}^{v} exceeds 64 bits")))?;
                    residue(m)?
                }
                Ring::PolyRing(d) if d.ctx.len() == 1 => {
                    let mut g = Poly::zero(&d.field, &d.ctx);
                    for e in &gens {
                        g = univariate::gcd(&g, e.as_poly());
                    }
                    Self::univariate_target(&d.field, &g)?
                }
                Ring::Quotient(q) => {
                    let mut g = q.modulus.clone();
                    for e in &gens {
                        g = univariate::gcd(&g, e.as_poly());
                    }
                    if g == q.modulus {
                        (source.clone(), MapKind::Identity)
                    } else {
                        Self::univariate_target(&q.field, &g)?
                    }
                }
                _ if source.is_field() => return Err(unsupported()),
                _ => {
                    return Err(Error::UnsupportedQuotient(format!(
                        "quotients of {source} are outside the supported rings"
                    )))
                }
            }
        };
        Ok(QuotientMap { source: source.clone(), target, generators: gens, kind })
    }

    fn univariate_target(field: &Ring, g: &Poly) -> Result<(Ring, MapKind)> {
        match g.total_degree() {
            0 => Err(Error::UnsupportedQuotient("quotient by the unit ideal".into())),
            1 => {
                let g = g.make_monic()?;
                let c = univariate::coeffs(&g);
                Ok((field.clone(), MapKind::Evaluate(field.neg(&c[0]))))
            }
            _ => {
                let target = Ring::quotient(field.clone(), g.ctx().name(0), g)?;
                Ok((target, MapKind::Remainder(g.make_monic()?)))
            }
        }
    }

    /// `R(t) -> (R/I)(t)` from a base quotient map.
    pub fn extended(source: &Ring, base: QuotientMap) -> Result<QuotientMap> {
        let t = source.transc().ok_or_else(|| Error::UnsupportedQuotient(format!("{source} is not an extension")))?;
        if t.base() != base.source() {
            return Err(Error::MixedRings(format!("{} vs {}", t.base(), base.source())));
        }
        let target_t = Arc::new(TranscRing::new(base.target().clone(), t.ctx().names())?);
        Ok(QuotientMap {
            source: source.clone(),
            target: Ring::Transc(target_t.clone()),
            generators: base.generators.clone(),
            kind: MapKind::Extended(Box::new(base), target_t),
        })
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    /// The nonzero generators of the kernel, in the source ring.
    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn apply(&self, a: &Elem) -> Result<Elem> {
        Ok(match &self.kind {
            MapKind::Identity => a.clone(),
            MapKind::Residue(m) => match a {
                Elem::Int(n) => Elem::Res(arith::reduce_bigint(n, *m)),
                Elem::Res(r) => Elem::Res(r % m),
                Elem::Rat(r) => {
                    let num = arith::reduce_bigint(r.numer(), *m);
                    let den = arith::reduce_bigint(r.denom(), *m);
                    let inv =
                        arith::inv_mod(den, *m).ok_or_else(|| Error::DivisionByNonUnit(format!("{r} modulo {m}")))?;
                    Elem::Res(arith::mul_mod(num, inv, *m))
                }
                other => return Err(Error::MixedRings(format!("{other:?} in {}", self.source))),
            },
            MapKind::Evaluate(root) => {
                let p = a.as_poly();
                let field = p.ring();
                univariate::coeffs(p).iter().rev().fold(field.zero(), |acc, c| field.add(&field.mul(&acc, root), c))
            }
            MapKind::Remainder(g) => Elem::Poly(univariate::rem(a.as_poly(), g)),
            MapKind::Extended(base, target) => {
                let x = a.as_frac();
                let num = x.num.map_coefficients(base.target(), |c| base.apply(c))?;
                let den = x.den.map_coefficients(base.target(), |c| base.apply(c))?;
                let num = num.reembed(target.base(), target.ctx())?;
                let den = den.reembed(target.base(), target.ctx())?;
                Elem::Frac(Box::new(target.fraction(num, den).map_err(|_| Error::InadmissibleAfterReduction)?))
            }
        })
    }

    /// A representative in the source ring of an element of the target.
    pub fn lift(&self, a: &Elem) -> Result<Elem> {
        Ok(match &self.kind {
            MapKind::Identity => a.clone(),
            MapKind::Residue(_) => self.source.from_bigint(&BigInt::from(a.as_res())),
            MapKind::Evaluate(_) => match &self.source {
                Ring::PolyRing(d) => Elem::Poly(Poly::constant(&d.field, &d.ctx, a.clone())),
                Ring::Quotient(q) => Elem::Poly(Poly::constant(&q.field, &q.ctx, a.clone())),
                _ => unreachable!("evaluation maps start at univariate rings"),
            },
            MapKind::Remainder(_) => a.clone(),
            MapKind::Extended(base, _) => {
                let t = self.source.transc().expect("extension source");
                let x = a.as_frac();
                let num = x.num.map_coefficients(t.base(), |c| base.lift(c))?.reembed(t.base(), t.ctx())?;
                let den = x.den.map_coefficients(t.base(), |c| base.lift(c))?.reembed(t.base(), t.ctx())?;
                Elem::Frac(Box::new(t.fraction(num, den)?))
            }
        })
    }
}
