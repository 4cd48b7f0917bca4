use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use super::{is_admissible_denominator, TranscElement, TranscRing};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly};
use crate::ring::{univariate, Elem, MaximalIdealDesc, QuotientMap, Ring};

/// An element of `(R/I)(t)` together with its ring.
#[derive(Clone, Debug)]
pub struct ResidueImage {
    pub target: Ring,
    pub value: TranscElement,
}

fn extension(source: &Ring) -> Result<&TranscRing> {
    source.transc().ok_or_else(|| Error::UnsupportedQuotient(format!("{source} is not a transcendental extension")))
}

/// Coefficientwise reduction `R(t) -> (R/I)(t)` for `I` generated in `R`.
pub fn reduce_mod_ideal(source: &Ring, a: &TranscElement, gens: &[Elem]) -> Result<ResidueImage> {
    let t = extension(source)?;
    t.checked(a)?;
    let base_map = QuotientMap::for_ideal(t.base(), gens)?;
    let map = QuotientMap::extended(source, base_map)?;
    let value = map.apply(&Elem::Frac(Box::new(a.clone())))?;
    Ok(ResidueImage { target: map.target().clone(), value: value.as_frac().clone() })
}

/// An admissible lift over `R` of an admissible `fbar` over `R/I`: any
/// coefficient lift plus `alpha_i * t_1^(N + i)` for the generators
/// `alpha_1, ..., alpha_r` of `I`, where `N` is the total degree of `fbar`.
pub fn lift_from_quotient(fbar: &Poly, base: &Ring, gens: &[Elem]) -> Result<Poly> {
    let map = QuotientMap::for_ideal(base, gens)?;
    if fbar.ring() != map.target() {
        return Err(Error::DomainIncompatible(format!("{fbar} lives over {}, expected {}", fbar.ring(), map.target())));
    }
    if fbar.is_zero() || !is_admissible_denominator(fbar)? {
        return Err(Error::InadmissibleInput(fbar.to_string()));
    }
    let ctx = fbar.ctx();
    if ctx.is_empty() {
        return Err(Error::InadmissibleInput("no parameter to carry the correction".into()));
    }
    let mut lifted = fbar.map_coefficients(base, |c| map.lift(c))?;
    let n = fbar.total_degree();
    for (i, alpha) in map.generators().iter().enumerate() {
        let m = Monomial::var(ctx.len(), 0, n + 1 + i as u32);
        lifted = lifted.add(&Poly::monomial(base, ctx, m, alpha.clone()));
    }
    if !is_admissible_denominator(&lifted)? {
        return Err(Error::InadmissibleInput(format!("lift {lifted} lost unit content")));
    }
    Ok(lifted)
}

/// What `kappa` in `kappa (x)_R R(t)` is.
#[derive(Clone, Debug)]
pub enum FiberTarget {
    /// `R/m` for a maximal ideal of the base.
    Maximal(MaximalIdealDesc),
    /// The fraction field of a principal ideal domain base.
    FractionField,
}

#[derive(Clone, Debug)]
enum FiberKind {
    Reduce(QuotientMap),
    Fraction { kappa: Ring, target: Arc<TranscRing> },
}

/// `kappa(t)` together with the map from `R(t)`.
#[derive(Clone, Debug)]
pub struct Fiber {
    ring: Ring,
    kind: FiberKind,
}

impl Fiber {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn apply(&self, a: &TranscElement) -> Result<TranscElement> {
        match &self.kind {
            FiberKind::Reduce(map) => Ok(map.apply(&Elem::Frac(Box::new(a.clone())))?.as_frac().clone()),
            FiberKind::Fraction { kappa, target } => {
                let (content, primitive) = peel_content(&a.den)?;
                let src = a.num.ring();
                let inv = kappa.inv(&embed_in_fraction_field(src, kappa, &content)?)?;
                let num =
                    a.num.map_coefficients(kappa, |c| Ok(kappa.mul(&embed_in_fraction_field(src, kappa, c)?, &inv)))?;
                let den = primitive.map_coefficients(kappa, |c| embed_in_fraction_field(src, kappa, c))?;
                target.fraction(num.reembed(kappa, target.ctx())?, den.reembed(kappa, target.ctx())?)
            }
        }
    }
}

fn embed_in_fraction_field(src: &Ring, kappa: &Ring, c: &Elem) -> Result<Elem> {
    match (src, kappa) {
        (Ring::PolyRing(_), Ring::Transc(k)) => {
            let p = c.as_poly().reembed(k.base(), k.ctx())?;
            Ok(Elem::Frac(Box::new(k.from_poly(p))))
        }
        _ => kappa.coerce(src, c),
    }
}

/// `kappa (x)_R R(t)` described as `kappa(t)`.
pub fn fiber_description(source: &Ring, target: FiberTarget) -> Result<Fiber> {
    let t = extension(source)?;
    match target {
        FiberTarget::Maximal(m) => {
            if m.ring() != t.base() {
                return Err(Error::MixedRings(format!("{} vs {}", m.ring(), t.base())));
            }
            let map = QuotientMap::extended(source, m.quotient_map()?)?;
            Ok(Fiber { ring: map.target().clone(), kind: FiberKind::Reduce(map) })
        }
        FiberTarget::FractionField => {
            let kappa = match t.base() {
                Ring::Integers | Ring::LocalizedIntegersAt(_) => Ring::Rationals,
                Ring::PolyRing(d) if d.ctx.len() == 1 => Ring::transcendental(d.field.clone(), d.ctx.names())?,
                b if b.is_field() => b.clone(),
                b => {
                    return Err(Error::UnsupportedTarget(format!(
                        "fraction field of {b} is only available for principal ideal domains"
                    )))
                }
            };
            let target = Arc::new(TranscRing::new(kappa.clone(), t.ctx().names())?);
            Ok(Fiber { ring: Ring::Transc(target.clone()), kind: FiberKind::Fraction { kappa, target } })
        }
    }
}

/// Write `h = a * g` with `a` the content of `h` and `g` primitive, over
/// `Z`, `Z_(p)`, `k[x]` or a field.
pub fn peel_content(h: &Poly) -> Result<(Elem, Poly)> {
    let ring = h.ring();
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (a, g) = match ring {
        Ring::Integers => {
            let a = h.terms().iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.as_int()));
            let g = h.map_coefficients(ring, |c| Ok(Elem::Int(c.as_int() / &a)))?;
            (Elem::Int(a), g)
        }
        Ring::LocalizedIntegersAt(p) => {
            let v = h.terms().iter().filter_map(|(_, c)| ring.valuation(c)).min().unwrap_or(0);
            let pv = BigRational::from_integer(BigInt::from(*p).pow(v));
            let g = h.map_coefficients(ring, |c| Ok(Elem::Rat(c.as_rat() / &pv)))?;
            (Elem::Rat(pv), g)
        }
        Ring::PolyRing(d) if d.ctx.len() == 1 => {
            let mut a = Poly::zero(&d.field, &d.ctx);
            for (_, c) in h.terms() {
                a = univariate::gcd(&a, c.as_poly());
            }
            let g = h.map_coefficients(ring, |c| Ok(Elem::Poly(univariate::div_rem(c.as_poly(), &a)?.0)))?;
            (Elem::Poly(a), g)
        }
        r if r.is_field() => (r.one(), h.clone()),
        r => {
            return Err(Error::UnsupportedTarget(format!("content of polynomials over {r}")));
        }
    };
    Ok((a, g))
}
