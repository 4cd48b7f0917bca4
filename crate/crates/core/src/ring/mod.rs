//! Concrete base rings and their element arithmetic.
//!
//! The supported universe is a closed tagged union: the integers, the
//! rationals, prime fields, `Z/n`, the localization `Z_(p)`, polynomial rings
//! over a field, principal quotients `k[x]/(f)` and purely transcendental
//! extensions `R(t_1, ..., t_n)` of any of these. Every element has a unique
//! payload shape per ring; arithmetic lives on [`Ring`] because scalars do not
//! carry their ring around.

mod content;
mod element;
mod maximal;
pub mod univariate;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::poly::{Poly, VarContext};
use crate::transcend::{TranscElement, TranscRing};

pub use content::{content_is_unit, generates_unit_ideal};
pub use element::RingElement;
pub use maximal::{enumerate_maximal_ideals, pth_root_residue, residue_map, MaxTag, MaximalIdealDesc, QuotientMap};

/// Descriptor of a supported base ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ring {
    Integers,
    Rationals,
    PrimeField(u64),
    IntegersMod(u64),
    LocalizedIntegersAt(u64),
    PolyRing(Arc<PolyRingDesc>),
    Quotient(Arc<QuotientDesc>),
    Transc(Arc<TranscRing>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRingDesc {
    pub field: Ring,
    pub ctx: Arc<VarContext>,
}

/// `k[x]/(f)` with `f` monic of positive degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientDesc {
    pub field: Ring,
    pub ctx: Arc<VarContext>,
    pub modulus: Poly,
    /// `Some(true)` when the modulus is known irreducible.
    pub irreducible: Option<bool>,
}

impl QuotientDesc {
    pub fn var(&self) -> &str {
        self.ctx.name(0)
    }

    pub fn degree(&self) -> u32 {
        self.modulus.total_degree()
    }
}

/// Payload of a ring element. Which variant is valid is determined by the ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elem {
    /// `Integers`
    Int(BigInt),
    /// `Rationals` and `LocalizedIntegersAt`
    Rat(BigRational),
    /// `PrimeField` and `IntegersMod`, reduced into `[0, n)`
    Res(u64),
    /// `PolyRing` and `Quotient`
    Poly(Poly),
    /// `Transc`
    Frac(Box<TranscElement>),
}

impl Elem {
    pub fn as_poly(&self) -> &Poly {
        match self {
            Elem::Poly(p) => p,
            other => panic!("expected polynomial payload, found {other:?}"),
        }
    }

    pub fn as_frac(&self) -> &TranscElement {
        match self {
            Elem::Frac(f) => f,
            other => panic!("expected fraction payload, found {other:?}"),
        }
    }

    pub fn as_rat(&self) -> &BigRational {
        match self {
            Elem::Rat(r) => r,
            other => panic!("expected rational payload, found {other:?}"),
        }
    }

    pub fn as_int(&self) -> &BigInt {
        match self {
            Elem::Int(r) => r,
            other => panic!("expected integer payload, found {other:?}"),
        }
    }

    pub fn as_res(&self) -> u64 {
        match self {
            Elem::Res(r) => *r,
            other => panic!("expected residue payload, found {other:?}"),
        }
    }
}

impl Ring {
    pub fn prime_field(p: u64) -> Result<Ring> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::PrimeField(p))
    }

    pub fn integers_mod(n: u64) -> Result<Ring> {
        if n < 2 {
            return Err(Error::InvalidRing(format!("modulus {n} must be at least 2")));
        }
        Ok(Ring::IntegersMod(n))
    }

    pub fn localized_at(p: u64) -> Result<Ring> {
        if !arith::is_prime(p) {
            return Err(Error::InvalidRing(format!("{p} is not prime")));
        }
        Ok(Ring::LocalizedIntegersAt(p))
    }

    pub fn poly_ring<S: AsRef<str>>(field: Ring, vars: &[S]) -> Result<Ring> {
        if !field.is_field() {
            return Err(Error::InvalidRing(format!("{field} is not a field")));
        }
        if vars.is_empty() {
            return Err(Error::InvalidRing("polynomial ring needs variables".into()));
        }
        let ctx =
            VarContext::new(vars.iter().map(|v| (v.as_ref().to_string(), crate::poly::Block::Geometric)).collect())?;
        Ok(Ring::PolyRing(Arc::new(PolyRingDesc { field, ctx })))
    }

    /// `field[var]/(modulus)`. The modulus may be given in any context that
    /// mentions only `var`.
    pub fn quotient(field: Ring, var: &str, modulus: &Poly) -> Result<Ring> {
        if !field.is_field() {
            return Err(Error::InvalidRing(format!("{field} is not a field")));
        }
        let ctx = VarContext::geometric(&[var]);
        let m = modulus.reembed(&field, &ctx)?;
        if m.is_zero() || m.total_degree() == 0 {
            return Err(Error::InvalidRing("modulus must be nonzero and not a unit".into()));
        }
        let m = m.make_monic()?;
        let irreducible = univariate::is_irreducible(&m).ok();
        Ok(Ring::Quotient(Arc::new(QuotientDesc { field, ctx, modulus: m, irreducible })))
    }

    pub fn transcendental<S: AsRef<str>>(base: Ring, params: &[S]) -> Result<Ring> {
        Ok(Ring::Transc(Arc::new(TranscRing::new(base, params)?)))
    }

    pub fn transc(&self) -> Option<&TranscRing> {
        match self {
            Ring::Transc(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            Ring::Rationals | Ring::PrimeField(_) => true,
            Ring::Quotient(q) => q.irreducible == Some(true),
            Ring::Transc(t) => t.base().is_field(),
            _ => false,
        }
    }

    /// Fields in which every element has a p-th root (char 0 counts as perfect).
    pub fn is_perfect_field(&self) -> bool {
        match self {
            Ring::Rationals | Ring::PrimeField(_) => true,
            Ring::Quotient(q) => q.irreducible == Some(true) && q.field.is_perfect_field(),
            Ring::Transc(t) => t.base().is_field() && t.base().characteristic() == 0,
            _ => false,
        }
    }

    /// Characteristic as a machine integer; 0 for characteristic zero.
    pub fn characteristic(&self) -> u64 {
        match self {
            Ring::Integers | Ring::Rationals | Ring::LocalizedIntegersAt(_) => 0,
            Ring::PrimeField(p) | Ring::IntegersMod(p) => *p,
            Ring::PolyRing(d) => d.field.characteristic(),
            Ring::Quotient(q) => q.field.characteristic(),
            Ring::Transc(t) => t.base().characteristic(),
        }
    }

    /// Number of elements for finite fields.
    pub fn finite_field_size(&self) -> Option<u64> {
        match self {
            Ring::PrimeField(p) => Some(*p),
            Ring::Quotient(q) if q.irreducible == Some(true) => match q.field {
                Ring::PrimeField(p) => p.checked_pow(q.degree()),
                _ => None,
            },
            _ => None,
        }
    }

    pub fn zero(&self) -> Elem {
        self.from_int(0)
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, n: i64) -> Elem {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Elem {
        match self {
            Ring::Integers => Elem::Int(n.clone()),
            Ring::Rationals | Ring::LocalizedIntegersAt(_) => Elem::Rat(BigRational::from_integer(n.clone())),
            Ring::PrimeField(p) | Ring::IntegersMod(p) => Elem::Res(arith::reduce_bigint(n, *p)),
            Ring::PolyRing(d) => Elem::Poly(Poly::constant(&d.field, &d.ctx, d.field.from_bigint(n))),
            Ring::Quotient(q) => Elem::Poly(Poly::constant(&q.field, &q.ctx, q.field.from_bigint(n))),
            Ring::Transc(t) => Elem::Frac(Box::new(t.from_base(&t.base().from_bigint(n)))),
        }
    }

    /// A rational number as an element, when the ring contains it.
    pub fn from_rational(&self, r: &BigRational) -> Result<Elem> {
        if r.denom().is_one() {
            return Ok(self.from_bigint(r.numer()));
        }
        match self {
            Ring::Rationals => Ok(Elem::Rat(r.clone())),
            Ring::LocalizedIntegersAt(p) => {
                if arith::valuation(r.denom(), *p).unwrap_or(0) > 0 {
                    Err(Error::DivisionByNonUnit(format!("{r} is not in Z_({p})")))
                } else {
                    Ok(Elem::Rat(r.clone()))
                }
            }
            Ring::PrimeField(_) | Ring::IntegersMod(_) => {
                let d = self.from_bigint(r.denom());
                let inv = self.inv(&d)?;
                Ok(self.mul(&self.from_bigint(r.numer()), &inv))
            }
            Ring::PolyRing(d) => Ok(Elem::Poly(Poly::constant(&d.field, &d.ctx, d.field.from_rational(r)?))),
            Ring::Quotient(q) => Ok(Elem::Poly(Poly::constant(&q.field, &q.ctx, q.field.from_rational(r)?))),
            Ring::Transc(t) => Ok(Elem::Frac(Box::new(t.from_base(&t.base().from_rational(r)?)))),
            Ring::Integers => Err(Error::DivisionByNonUnit(format!("{r} is not an integer"))),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Int(n) => n.is_zero(),
            Elem::Rat(r) => r.is_zero(),
            Elem::Res(r) => *r == 0,
            Elem::Poly(p) => p.is_zero(),
            Elem::Frac(f) => f.num.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        self.equal(a, &self.one())
    }

    /// Mathematical equality (canonical forms are not unique over `Z/n(t)`).
    pub fn equal(&self, a: &Elem, b: &Elem) -> bool {
        match self {
            Ring::Transc(t) => TranscRing::eq(t, a.as_frac(), b.as_frac()),
            _ => a == b,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x + y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Ring::PrimeField(p) | Ring::IntegersMod(p), Elem::Res(x), Elem::Res(y)) => {
                Elem::Res(arith::add_mod(*x, *y, *p))
            }
            (Ring::PolyRing(_), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.add(y)),
            (Ring::Quotient(_), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.add(y)),
            (Ring::Transc(t), Elem::Frac(x), Elem::Frac(y)) => Elem::Frac(Box::new(t.add(x, y))),
            _ => panic!("payload mismatch in {self}: {a:?} + {b:?}"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match (self, a) {
            (_, Elem::Int(x)) => Elem::Int(-x),
            (_, Elem::Rat(x)) => Elem::Rat(-x),
            (Ring::PrimeField(p) | Ring::IntegersMod(p), Elem::Res(x)) => Elem::Res(if *x == 0 { 0 } else { p - x }),
            (_, Elem::Poly(x)) => Elem::Poly(x.neg()),
            (Ring::Transc(t), Elem::Frac(x)) => Elem::Frac(Box::new(t.neg(x))),
            _ => panic!("payload mismatch in {self}: -{a:?}"),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (self, a, b) {
            (_, Elem::Int(x), Elem::Int(y)) => Elem::Int(x * y),
            (_, Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x * y),
            (Ring::PrimeField(p) | Ring::IntegersMod(p), Elem::Res(x), Elem::Res(y)) => {
                Elem::Res(arith::mul_mod(*x, *y, *p))
            }
            (Ring::PolyRing(_), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(x.mul(y)),
            (Ring::Quotient(q), Elem::Poly(x), Elem::Poly(y)) => Elem::Poly(univariate::rem(&x.mul(y), &q.modulus)),
            (Ring::Transc(t), Elem::Frac(x), Elem::Frac(y)) => Elem::Frac(Box::new(t.mul(x, y))),
            _ => panic!("payload mismatch in {self}: {a:?} * {b:?}"),
        }
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_unit(&self, a: &Elem) -> bool {
        match (self, a) {
            (Ring::Integers, Elem::Int(x)) => x.abs().is_one(),
            (Ring::Rationals, Elem::Rat(x)) => !x.is_zero(),
            (Ring::LocalizedIntegersAt(p), Elem::Rat(x)) => !x.is_zero() && arith::valuation(x.numer(), *p) == Some(0),
            (Ring::PrimeField(_), Elem::Res(x)) => *x != 0,
            (Ring::IntegersMod(n), Elem::Res(x)) => arith::gcd_u64(*x, *n) == 1,
            (Ring::PolyRing(d), Elem::Poly(x)) => {
                x.total_degree() == 0 && !x.is_zero() && d.field.is_unit(&x.terms()[0].1)
            }
            (Ring::Quotient(q), Elem::Poly(x)) => !x.is_zero() && univariate::gcd(x, &q.modulus).total_degree() == 0,
            (Ring::Transc(t), Elem::Frac(x)) => t.is_unit(x),
            _ => panic!("payload mismatch in {self}: {a:?}"),
        }
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        let fail = || Error::DivisionByNonUnit(self.display_elem(a));
        match (self, a) {
            (Ring::Integers, Elem::Int(x)) if x.abs().is_one() => Ok(a.clone()),
            (Ring::Rationals, Elem::Rat(x)) if !x.is_zero() => Ok(Elem::Rat(x.recip())),
            (Ring::LocalizedIntegersAt(_), Elem::Rat(x)) if self.is_unit(a) => Ok(Elem::Rat(x.recip())),
            (Ring::PrimeField(p) | Ring::IntegersMod(p), Elem::Res(x)) => {
                arith::inv_mod(*x, *p).map(Elem::Res).ok_or_else(fail)
            }
            (Ring::PolyRing(d), Elem::Poly(x)) if self.is_unit(a) => {
                let c = d.field.inv(&x.terms()[0].1)?;
                Ok(Elem::Poly(Poly::constant(&d.field, &d.ctx, c)))
            }
            (Ring::Quotient(q), Elem::Poly(x)) => {
                univariate::inverse_mod(x, &q.modulus).map(Elem::Poly).ok_or_else(fail)
            }
            (Ring::Transc(t), Elem::Frac(x)) => Ok(Elem::Frac(Box::new(t.inv(x)?))),
            _ => Err(fail()),
        }
    }

    /// `a / b` for a unit `b`.
    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Validates that `a` is a canonical payload of this ring.
    pub fn check(&self, a: &Elem) -> Result<()> {
        let ok = match (self, a) {
            (Ring::Integers, Elem::Int(_)) | (Ring::Rationals, Elem::Rat(_)) => true,
            (Ring::LocalizedIntegersAt(p), Elem::Rat(x)) => arith::valuation(x.denom(), *p) == Some(0),
            (Ring::PrimeField(p) | Ring::IntegersMod(p), Elem::Res(x)) => x < p,
            (Ring::PolyRing(d), Elem::Poly(x)) => x.ring() == &d.field && x.ctx() == &d.ctx,
            (Ring::Quotient(q), Elem::Poly(x)) => {
                x.ring() == &q.field && x.ctx() == &q.ctx && x.total_degree() < q.degree()
            }
            (Ring::Transc(t), Elem::Frac(x)) => {
                x.num.ring() == t.base() && x.num.ctx() == t.ctx() && x.den.ctx() == t.ctx()
            }
            _ => false,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::MixedRings(format!("{a:?} is not an element of {self}")))
        }
    }

    /// p-th root in a perfect field of characteristic p.
    pub fn pth_root(&self, a: &Elem) -> Result<Elem> {
        let p = self.characteristic();
        match self {
            Ring::PrimeField(_) => Ok(a.clone()),
            Ring::Quotient(_) => {
                let q = self.finite_field_size().ok_or_else(|| Error::UnsupportedResidueField(self.to_string()))?;
                Ok(self.pow(a, q / p))
            }
            _ => Err(Error::UnsupportedResidueField(self.to_string())),
        }
    }

    /// All elements of a finite field, in a fixed enumeration order.
    pub fn elements(&self) -> Option<Vec<Elem>> {
        match self {
            Ring::PrimeField(p) | Ring::IntegersMod(p) => Some((0..*p).map(Elem::Res).collect()),
            Ring::Quotient(q) => {
                let p = match q.field {
                    Ring::PrimeField(p) => p,
                    _ => return None,
                };
                let d = q.degree() as usize;
                let count = p.checked_pow(d as u32)?;
                let mut out = Vec::with_capacity(count as usize);
                for mut idx in 0..count {
                    let mut coeffs = Vec::with_capacity(d);
                    for _ in 0..d {
                        coeffs.push(Elem::Res(idx % p));
                        idx /= p;
                    }
                    out.push(Elem::Poly(univariate::from_coeffs(&q.field, &q.ctx, coeffs)));
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// Canonical map of `e ∈ src` into `self`, when `src` embeds.
    pub fn coerce(&self, src: &Ring, e: &Elem) -> Result<Elem> {
        if src == self {
            return Ok(e.clone());
        }
        let incompatible = || Error::DomainIncompatible(format!("cannot map {src} into {self}"));
        match (src, self) {
            (Ring::Integers, _) => return Ok(self.from_bigint(e.as_int())),
            (Ring::LocalizedIntegersAt(_), Ring::Rationals) => return Ok(e.clone()),
            (Ring::LocalizedIntegersAt(_), Ring::LocalizedIntegersAt(_)) => return self.from_rational(e.as_rat()),
            (Ring::Rationals, Ring::LocalizedIntegersAt(_)) => return self.from_rational(e.as_rat()),
            (Ring::Transc(s), Ring::Transc(t)) => {
                if let Ok(x) = t.coerce_from_transc(s, e.as_frac()) {
                    return Ok(Elem::Frac(Box::new(x)));
                }
            }
            (Ring::PolyRing(s), Ring::PolyRing(t)) => {
                let mapped = e
                    .as_poly()
                    .map_coefficients(&t.field, |c| t.field.coerce(&s.field, c))
                    .and_then(|p| p.reembed(&t.field, &t.ctx));
                if let Ok(q) = mapped {
                    return Ok(Elem::Poly(q));
                }
            }
            _ => {}
        }
        match self {
            Ring::PolyRing(d) => {
                let c = d.field.coerce(src, e).map_err(|_| incompatible())?;
                Ok(Elem::Poly(Poly::constant(&d.field, &d.ctx, c)))
            }
            Ring::Quotient(q) => {
                let c = q.field.coerce(src, e).map_err(|_| incompatible())?;
                Ok(Elem::Poly(Poly::constant(&q.field, &q.ctx, c)))
            }
            Ring::Transc(t) => {
                let c = t.base().coerce(src, e).map_err(|_| incompatible())?;
                Ok(Elem::Frac(Box::new(t.from_base(&c))))
            }
            _ => Err(incompatible()),
        }
    }

    pub fn display_elem(&self, a: &Elem) -> String {
        match a {
            Elem::Int(n) => n.to_string(),
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Res(r) => r.to_string(),
            Elem::Poly(p) => p.to_string(),
            Elem::Frac(f) => f.to_string(),
        }
    }

    /// Integer representative of a residue, rational or integer payload.
    pub fn to_bigint(&self, a: &Elem) -> Option<BigInt> {
        match a {
            Elem::Int(n) => Some(n.clone()),
            Elem::Res(r) => Some(BigInt::from(*r)),
            Elem::Rat(r) if r.denom().is_one() => Some(r.numer().clone()),
            _ => None,
        }
    }

    /// Integer valuation at `p` for `Z` and `Z_(p)` payloads.
    pub fn valuation(&self, a: &Elem) -> Option<u32> {
        match (self, a) {
            (Ring::LocalizedIntegersAt(p), Elem::Rat(x)) => arith::valuation(x.numer(), *p),
            _ => None,
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::Rationals => write!(f, "Q"),
            Ring::PrimeField(p) => write!(f, "(Fp {p})"),
            Ring::IntegersMod(n) => write!(f, "(Zmod {n})"),
            Ring::LocalizedIntegersAt(p) => write!(f, "(Zloc {p})"),
            Ring::PolyRing(d) => write!(f, "(Polyring {} {})", d.field, d.ctx),
            Ring::Quotient(q) => write!(f, "(Quotient {} {} {})", q.field, q.var(), q.modulus),
            Ring::Transc(t) => write!(f, "(Transc {} {})", t.base(), t.ctx()),
        }
    }
}
