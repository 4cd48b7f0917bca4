//! The purely transcendental extension `R(t_1, ..., t_n)`: fractions whose
//! denominators have unit content over `R`.

mod residue;
mod tower;

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::{gcd, over_complement, Block, Poly, VarContext};
use crate::ring::{generates_unit_ideal, Elem, Ring};

pub use residue::{
    fiber_description, lift_from_quotient, peel_content, reduce_mod_ideal, Fiber, FiberTarget, ResidueImage,
};
pub use tower::{curry, iterated_admissible, uncurry, Curried};

/// `R(t_1, ..., t_n)` for a supported base `R`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscRing {
    base: Ring,
    ctx: Arc<VarContext>,
}

/// `num / den` with `den` admissible, kept in the per-base canonical form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranscElement {
    pub num: Poly,
    pub den: Poly,
}

impl TranscElement {
    /// Assemble without validation; callers guarantee canonical form.
    pub(crate) fn new_unchecked(num: Poly, den: Poly) -> Self {
        TranscElement { num, den }
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Display for TranscElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let den_is_one = self.den.is_constant() && self.den.constant_coeff() == self.den.ring().one();
        if den_is_one {
            write!(f, "{}", self.num)
        } else {
            write!(f, "(frac {} {})", self.num, self.den)
        }
    }
}

/// Cancel the primitive gcd of `num` and `den` over `Z`. The gcd over `Q`
/// with denominators cleared and content removed divides both by Gauss.
fn cancel_over_integers(num: Poly, den: Poly) -> (Poly, Poly) {
    if num.is_constant() || den.is_constant() {
        return (num, den);
    }
    let to_q = |p: &Poly| {
        p.map_coefficients(&Ring::Rationals, |c| Ok(Elem::Rat(BigRational::from_integer(c.as_int().clone()))))
            .expect("integer coefficients")
    };
    let g = gcd::gcd(&to_q(&num), &to_q(&den));
    if g.is_constant() {
        return (num, den);
    }
    let l = g.terms().iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.as_rat().denom()));
    let ints: Vec<BigInt> = g.terms().iter().map(|(_, c)| (c.as_rat() * &l).to_integer()).collect();
    let content = ints.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    let terms = g.terms().iter().zip(ints).map(|((m, _), c)| (m.clone(), Elem::Int(c / &content))).collect();
    let g = Poly::from_terms(num.ring(), num.ctx(), terms);
    match (gcd::divide_exact(&num, &g), gcd::divide_exact(&den, &g)) {
        (Some(a), Some(b)) => (a, b),
        _ => (num, den),
    }
}

/// Is `f` in `U_{R[t]/R}`? The coefficient ring of `f` is `R`; geometric
/// variables in `f`'s context, if any, are first absorbed into `R` (so
/// `y t + x` over `k` with `x, y` geometric is tested over `k[x, y]`).
pub fn is_admissible_denominator(f: &Poly) -> Result<bool> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ctx = f.ctx();
    let f = if !ctx.indices_in(Block::Geometric).is_empty() && !ctx.indices_in(Block::Parameter).is_empty() {
        over_complement(f, Block::Parameter)?
    } else {
        f.clone()
    };
    let coeffs: Vec<Elem> = f.terms().iter().map(|(_, c)| c.clone()).collect();
    generates_unit_ideal(f.ring(), &coeffs)
}

impl TranscRing {
    pub fn new<S: AsRef<str>>(base: Ring, params: &[S]) -> Result<Self> {
        if params.is_empty() {
            return Err(Error::InvalidRing("an extension needs at least one parameter".into()));
        }
        let clash = |name: &str| match &base {
            Ring::PolyRing(d) => d.ctx.index_of(name).is_some(),
            Ring::Quotient(q) => q.ctx.index_of(name).is_some(),
            Ring::Transc(t) => t.ctx.index_of(name).is_some(),
            _ => false,
        };
        if let Some(p) = params.iter().find(|p| clash(p.as_ref())) {
            return Err(Error::InvalidRing(format!("parameter {} clashes with the base", p.as_ref())));
        }
        Ok(TranscRing { ctx: VarContext::parameters(params), base })
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn nvars(&self) -> usize {
        self.ctx.len()
    }

    pub fn zero(&self) -> TranscElement {
        self.from_base(&self.base.zero())
    }

    pub fn one(&self) -> TranscElement {
        self.from_base(&self.base.one())
    }

    pub fn from_base(&self, c: &Elem) -> TranscElement {
        self.from_poly(Poly::constant(&self.base, &self.ctx, c.clone()))
    }

    pub fn from_poly(&self, num: Poly) -> TranscElement {
        TranscElement { num, den: Poly::one(&self.base, &self.ctx) }
    }

    pub fn param(&self, name: &str) -> Result<TranscElement> {
        Ok(self.from_poly(Poly::variable(&self.base, &self.ctx, name)?))
    }

    fn check_space(&self, p: &Poly) -> Result<()> {
        if p.ring() != &self.base || p.ctx() != &self.ctx {
            return Err(Error::MixedExtensions(format!("{p} is not a polynomial over {} in {}", self.base, self.ctx)));
        }
        Ok(())
    }

    /// `num / den` in canonical form; `den` must be admissible.
    pub fn fraction(&self, num: Poly, den: Poly) -> Result<TranscElement> {
        self.check_space(&num)?;
        self.check_space(&den)?;
        if den.is_zero() || !is_admissible_denominator(&den)? {
            return Err(Error::NonUnitInverse);
        }
        Ok(self.canonical(num, den))
    }

    pub(crate) fn canonical(&self, num: Poly, den: Poly) -> TranscElement {
        if num.is_zero() {
            return self.zero();
        }
        let base = &self.base;
        match base {
            Ring::Integers => {
                let (num, den) = cancel_over_integers(num, den);
                let g = num.terms().iter().chain(den.terms()).fold(BigInt::zero(), |g, (_, c)| g.gcd(c.as_int()));
                let g = if den.leading_coeff().map(|c| c.as_int().is_negative()).unwrap_or(false) { -g } else { g };
                let div = |p: &Poly| {
                    let terms = p.terms().iter().map(|(m, c)| (m.clone(), Elem::Int(c.as_int() / &g))).collect();
                    Poly::from_terms(base, &self.ctx, terms)
                };
                TranscElement { num: div(&num), den: div(&den) }
            }
            _ if base.is_field() => {
                let g = gcd::gcd(&num, &den);
                let (num, den) = if g.is_constant() {
                    (num, den)
                } else {
                    (
                        gcd::divide_exact(&num, &g).expect("gcd divides numerator"),
                        gcd::divide_exact(&den, &g).expect("gcd divides denominator"),
                    )
                };
                let inv = base.inv(den.leading_coeff().expect("nonzero denominator")).expect("field");
                TranscElement { num: num.scale(&inv), den: den.scale(&inv) }
            }
            Ring::PolyRing(d) => {
                // make the leading field coefficient of the leading coefficient 1
                let lc = den.leading_coeff().expect("nonzero denominator").as_poly();
                let c = lc.leading_coeff().expect("nonzero coefficient");
                let inv = d.field.inv(c).expect("field");
                let u = Elem::Poly(Poly::constant(&d.field, &d.ctx, inv));
                TranscElement { num: num.scale(&u), den: den.scale(&u) }
            }
            _ => {
                // first unit coefficient of the denominator becomes 1
                match den.terms().iter().find(|(_, c)| base.is_unit(c)) {
                    Some((_, c)) => {
                        let inv = base.inv(c).expect("unit");
                        TranscElement { num: num.scale(&inv), den: den.scale(&inv) }
                    }
                    None => TranscElement { num, den },
                }
            }
        }
    }

    pub fn add(&self, a: &TranscElement, b: &TranscElement) -> TranscElement {
        if a.den == b.den {
            return self.canonical(a.num.add(&b.num), a.den.clone());
        }
        let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
        self.canonical(num, a.den.mul(&b.den))
    }

    pub fn neg(&self, a: &TranscElement) -> TranscElement {
        TranscElement { num: a.num.neg(), den: a.den.clone() }
    }

    pub fn sub(&self, a: &TranscElement, b: &TranscElement) -> TranscElement {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &TranscElement, b: &TranscElement) -> TranscElement {
        self.canonical(a.num.mul(&b.num), a.den.mul(&b.den))
    }

    pub fn pow(&self, a: &TranscElement, e: u32) -> TranscElement {
        self.canonical(a.num.pow(e), a.den.pow(e))
    }

    /// Exact equality by cross-multiplication.
    pub fn eq(&self, a: &TranscElement, b: &TranscElement) -> bool {
        a.num.mul(&b.den).sub(&b.num.mul(&a.den)).is_zero()
    }

    pub fn is_unit(&self, a: &TranscElement) -> bool {
        !a.num.is_zero() && is_admissible_denominator(&a.num).unwrap_or(false)
    }

    pub fn inv(&self, a: &TranscElement) -> Result<TranscElement> {
        if !self.is_unit(a) {
            return Err(Error::NonUnitInverse);
        }
        Ok(self.canonical(a.den.clone(), a.num.clone()))
    }

    pub fn div(&self, a: &TranscElement, b: &TranscElement) -> Result<TranscElement> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Arithmetic on possibly foreign elements, with the same-ring check.
    pub fn checked(&self, a: &TranscElement) -> Result<()> {
        self.check_space(&a.num)?;
        self.check_space(&a.den)
    }

    /// Map an element of another extension into this one (base coerced,
    /// parameters matched by name).
    pub fn coerce_from_transc(&self, _src: &TranscRing, a: &TranscElement) -> Result<TranscElement> {
        let num = a.num.reembed(&self.base, &self.ctx)?;
        let den = a.den.reembed(&self.base, &self.ctx)?;
        self.fraction(num, den)
    }

    /// `s / (f^a u)` for admissible `f` and `u`, as a canonical element.
    pub fn rebase_chart(&self, s: &Poly, f: &Poly, a: u32, u: &Poly) -> Result<TranscElement> {
        for p in [f, u] {
            self.check_space(p)?;
            if p.is_zero() || !is_admissible_denominator(p)? {
                return Err(Error::InadmissibleChartFunction(p.to_string()));
            }
        }
        self.fraction(s.clone(), f.pow(a).mul(u))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use proptest::prelude::*;

    fn zt() -> TranscRing {
        TranscRing::new(Ring::Integers, &["t"]).unwrap()
    }

    fn lin(r: &TranscRing, a: i64, b: i64) -> Poly {
        let t = Poly::variable(r.base(), r.ctx(), "t").unwrap();
        t.scale(&r.base().from_int(a)).add(&Poly::from_int(r.base(), r.ctx(), b))
    }

    #[test]
    fn admissible_integer_denominators() {
        let r = zt();
        assert!(is_admissible_denominator(&lin(&r, 2, 3)).unwrap());
        assert!(!is_admissible_denominator(&lin(&r, 2, 4)).unwrap());
        assert!(is_admissible_denominator(&Poly::one(r.base(), r.ctx())).unwrap());
        assert!(matches!(is_admissible_denominator(&Poly::zero(r.base(), r.ctx())), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn local_ring_non_commutation() {
        for k in [Ring::PrimeField(2), Ring::Rationals] {
            let kxy = Ring::poly_ring(k.clone(), &["x", "y"]).unwrap();
            let over_poly = TranscRing::new(kxy.clone(), &["t"]).unwrap();
            let d = match &kxy {
                Ring::PolyRing(d) => d.clone(),
                _ => unreachable!(),
            };
            let xv = Elem::Poly(Poly::variable(&k, &d.ctx, "x").unwrap());
            let yv = Elem::Poly(Poly::variable(&k, &d.ctx, "y").unwrap());
            let ctx = over_poly.ctx().clone();
            let f = Poly::from_terms(&kxy, &ctx, vec![(Monomial::var(1, 0, 1), yv), (Monomial::one(1), xv)]);
            assert!(!is_admissible_denominator(&f).unwrap());

            let kfrac = Ring::transcendental(k.clone(), &["x", "y"]).unwrap();
            let kt = kfrac.transc().unwrap();
            let xf = Elem::Frac(Box::new(kt.param("x").unwrap()));
            let yf = Elem::Frac(Box::new(kt.param("y").unwrap()));
            let g = Poly::from_terms(&kfrac, &ctx, vec![(Monomial::var(1, 0, 1), yf), (Monomial::one(1), xf)]);
            assert!(is_admissible_denominator(&g).unwrap());
        }
    }

    #[test]
    fn fraction_sum() {
        let r = zt();
        let one = Poly::one(r.base(), r.ctx());
        let a = r.fraction(one.clone(), lin(&r, 2, 3)).unwrap();
        let b = r.fraction(one, lin(&r, 1, 2)).unwrap();
        let s = r.add(&a, &b);
        let expected = r.fraction(lin(&r, 3, 5), lin(&r, 2, 3).mul(&lin(&r, 1, 2))).unwrap();
        assert!(r.eq(&s, &expected));
        assert_eq!(s, expected);
        assert!(r.eq(&s, &s));
    }

    #[test]
    fn units() {
        let r = zt();
        let u = r.fraction(lin(&r, 2, 3), lin(&r, 1, 2)).unwrap();
        assert!(r.is_unit(&u));
        let inv = r.inv(&u).unwrap();
        assert!(r.eq(&r.mul(&u, &inv), &r.one()));
        let n = r.from_poly(lin(&r, 2, 4));
        assert!(!r.is_unit(&n));
        assert!(matches!(r.inv(&n), Err(Error::NonUnitInverse)));
        assert!(matches!(r.fraction(Poly::one(r.base(), r.ctx()), lin(&r, 2, 4)), Err(Error::NonUnitInverse)));
    }

    #[test]
    fn rebase_chart_keeps_product_denominator() {
        let r = TranscRing::new(Ring::Integers, &["t1"]).unwrap();
        let t = Poly::variable(r.base(), r.ctx(), "t1").unwrap();
        let one = Poly::one(r.base(), r.ctx());
        let f = one.add(&t);
        let u = t.scale(&Ring::Integers.from_int(2)).add(&Poly::from_int(r.base(), r.ctx(), 3));
        let x = r.rebase_chart(&t, &f, 2, &u).unwrap();
        assert_eq!(x.den, f.pow(2).mul(&u));
        assert!(is_admissible_denominator(&x.den).unwrap());
        let id = r.rebase_chart(&t, &one, 0, &one).unwrap();
        assert_eq!(id, r.from_poly(t.clone()));
        let bad = t.scale(&Ring::Integers.from_int(2));
        assert!(matches!(r.rebase_chart(&t, &bad, 1, &one), Err(Error::InadmissibleChartFunction(_))));
    }

    #[test]
    fn field_base_cancels_common_factors() {
        let r = TranscRing::new(Ring::PrimeField(5), &["t1", "t2"]).unwrap();
        let v = |n| Poly::variable(r.base(), r.ctx(), n).unwrap();
        let g = v("t1").add(&v("t2"));
        let a = r.fraction(g.mul(&v("t1")), g.mul(&v("t2")).scale(&Ring::PrimeField(5).from_int(3))).unwrap();
        assert_eq!(a.num, v("t1").scale(&Ring::PrimeField(5).from_int(2)));
        assert_eq!(a.den, v("t2"));
    }

    fn arb_int_poly() -> impl Strategy<Value = Vec<(u32, u32, i64)>> {
        prop::collection::vec((0u32..3, 0u32..3, -12i64..13), 1..4)
    }

    fn build(r: &TranscRing, t: &[(u32, u32, i64)]) -> Poly {
        Poly::from_terms(
            r.base(),
            r.ctx(),
            t.iter().map(|&(a, b, c)| (Monomial::from_exponents(&[a, b]), r.base().from_int(c))).collect(),
        )
    }

    proptest! {
        #[test]
        fn admissibility_is_multiplicative(a in arb_int_poly(), b in arb_int_poly(), n in prop::sample::select(vec![0u64, 12])) {
            let base = if n == 0 { Ring::Integers } else { Ring::IntegersMod(n) };
            let r = TranscRing::new(base, &["t1", "t2"]).unwrap();
            let (f, g) = (build(&r, &a), build(&r, &b));
            prop_assume!(!f.is_zero() && !g.is_zero());
            if is_admissible_denominator(&f).unwrap() && is_admissible_denominator(&g).unwrap() {
                prop_assert!(is_admissible_denominator(&f.mul(&g)).unwrap());
            }
        }

        #[test]
        fn admissible_elements_are_not_zero_divisors(a in arb_int_poly(), b in arb_int_poly()) {
            let r = TranscRing::new(Ring::IntegersMod(12), &["t1", "t2"]).unwrap();
            let (f, g) = (build(&r, &a), build(&r, &b));
            prop_assume!(!f.is_zero() && !g.is_zero());
            if is_admissible_denominator(&f).unwrap() {
                prop_assert!(!f.mul(&g).is_zero());
            }
        }

        #[test]
        fn field_arithmetic_axioms(a in arb_int_poly(), b in arb_int_poly(), c in arb_int_poly(), d in arb_int_poly()) {
            let r = TranscRing::new(Ring::PrimeField(3), &["t1", "t2"]).unwrap();
            let (a, b, c, d) = (build(&r, &a), build(&r, &b), build(&r, &c), build(&r, &d));
            prop_assume!(!b.is_zero() && !d.is_zero());
            let x = r.fraction(a, b).unwrap();
            let y = r.fraction(c, d).unwrap();
            prop_assert!(r.eq(&r.sub(&r.add(&x, &y), &y), &x));
            if !y.is_zero() {
                prop_assert!(r.eq(&r.mul(&r.div(&x, &y).unwrap(), &y), &x));
            }
        }
    }
}
