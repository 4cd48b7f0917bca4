//! Dense univariate arithmetic over a field, used for `k[x]/(f)` residue
//! rings and their maximal ideals.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Elem, Ring};
use crate::error::{Error, Result};
use crate::poly::{Monomial, Poly, VarContext};

/// Largest number of candidate divisors tried by trial-division factoring.
pub const TRIAL_DIVISION_LIMIT: u64 = 200_000;

/// `[c_0, c_1, ..., c_d]` with `c_d != 0`; empty for zero.
pub fn coeffs(p: &Poly) -> Vec<Elem> {
    let ring = p.ring();
    if p.is_zero() {
        return Vec::new();
    }
    let d = p.total_degree() as usize;
    let mut out = vec![ring.zero(); d + 1];
    for (m, c) in p.terms() {
        out[m.degree() as usize] = c.clone();
    }
    out
}

pub fn from_coeffs(field: &Ring, ctx: &Arc<VarContext>, c: Vec<Elem>) -> Poly {
    let terms = c.into_iter().enumerate().map(|(i, e)| (Monomial::var(ctx.len(), 0, i as u32), e)).collect();
    Poly::from_terms(field, ctx, terms)
}

fn trim(ring: &Ring, v: &mut Vec<Elem>) {
    while v.last().is_some_and(|c| ring.is_zero(c)) {
        v.pop();
    }
}

/// Quotient and remainder; the divisor must have an invertible leading
/// coefficient.
pub fn div_rem(a: &Poly, b: &Poly) -> Result<(Poly, Poly)> {
    let ring = a.ring();
    let bc = coeffs(b);
    let lead = bc.last().ok_or(Error::ZeroPolynomial)?;
    let inv = ring.inv(lead)?;
    let mut r = coeffs(a);
    let db = bc.len() - 1;
    if r.len() <= db {
        return Ok((Poly::zero(ring, a.ctx()), a.clone()));
    }
    let mut q = vec![ring.zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if ring.is_zero(&r[i]) {
            continue;
        }
        let f = ring.mul(&r[i], &inv);
        for (j, c) in bc.iter().enumerate() {
            let k = i - db + j;
            r[k] = ring.sub(&r[k], &ring.mul(&f, c));
        }
        q[i - db] = f;
    }
    trim(ring, &mut r);
    Ok((from_coeffs(ring, a.ctx(), q), from_coeffs(ring, a.ctx(), r)))
}

/// Remainder modulo a monic (or unit-led) modulus.
pub fn rem(a: &Poly, m: &Poly) -> Poly {
    div_rem(a, m).expect("modulus with invertible leading coefficient").1
}

/// Monic greatest common divisor over a field.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let r = rem(&x, &y);
        x = y;
        y = r;
    }
    x.make_monic().unwrap_or(x)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: &Poly, m: &Poly) -> Option<Poly> {
    let ring = a.ring();
    let ctx = a.ctx();
    let (mut r0, mut r1) = (m.clone(), rem(a, m));
    let (mut s0, mut s1) = (Poly::zero(ring, ctx), Poly::one(ring, ctx));
    while !r1.is_zero() {
        let (q, r) = div_rem(&r0, &r1).ok()?;
        let s = s0.sub(&q.mul(&s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    if r0.total_degree() != 0 || r0.is_zero() {
        return None;
    }
    let inv = ring.inv(&r0.terms()[0].1).ok()?;
    Some(rem(&s0.scale(&inv), m))
}

pub fn derivative(p: &Poly) -> Poly {
    p.derivative(0)
}

/// `a^e mod m`.
pub fn pow_mod(a: &Poly, mut e: u64, m: &Poly) -> Poly {
    let mut base = rem(a, m);
    let mut acc = rem(&Poly::one(a.ring(), a.ctx()), m);
    while e > 0 {
        if e & 1 == 1 {
            acc = rem(&acc.mul(&base), m);
        }
        e >>= 1;
        if e > 0 {
            base = rem(&base.mul(&base), m);
        }
    }
    acc
}

/// Irreducibility over a prime field (Ben-Or) or over the rationals for
/// degree at most 3 (rational-root test).
pub fn is_irreducible(f: &Poly) -> Result<bool> {
    let d = f.total_degree();
    if f.is_zero() || d == 0 {
        return Ok(false);
    }
    if d == 1 {
        return Ok(true);
    }
    match f.ring() {
        Ring::PrimeField(p) => {
            let x = Poly::var_index(f.ring(), f.ctx(), 0);
            let mut xp = x.clone();
            for _ in 0..d / 2 {
                xp = pow_mod(&xp, *p, f);
                if gcd(&xp.sub(&x), f).total_degree() > 0 {
                    return Ok(false);
                }
            }
            Ok(true)
        }
        Ring::Rationals if d <= 3 => Ok(rational_roots(f)?.is_empty()),
        other => Err(Error::FactorizationFailure(format!("irreducibility of degree {d} polynomials over {other}"))),
    }
}

fn divisors(n: &BigInt) -> Result<Vec<BigInt>> {
    let n = n.abs();
    let mut out = Vec::new();
    let mut d = BigInt::one();
    let mut steps = 0u64;
    while &d * &d <= n {
        steps += 1;
        if steps > TRIAL_DIVISION_LIMIT {
            return Err(Error::FactorizationFailure(format!("divisors of {n}")));
        }
        if (&n % &d).is_zero() {
            out.push(d.clone());
            let co = &n / &d;
            if co != d {
                out.push(co);
            }
        }
        d += 1;
    }
    Ok(out)
}

/// Distinct rational roots of a polynomial over the rationals.
pub fn rational_roots(f: &Poly) -> Result<Vec<BigRational>> {
    let c: Vec<BigRational> = coeffs(f).iter().map(|e| e.as_rat().clone()).collect();
    let lcm = c.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = c.iter().map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let mut roots = Vec::new();
    // strip zero roots
    let shift = ints.iter().position(|x| !x.is_zero()).unwrap_or(0);
    if shift > 0 {
        roots.push(BigRational::zero());
    }
    let ints = &ints[shift..];
    if ints.len() <= 1 {
        return Ok(roots);
    }
    let eval = |r: &BigRational| {
        ints.iter().rev().fold(BigRational::zero(), |acc, a| acc * r + BigRational::from_integer(a.clone()))
    };
    for a in divisors(&ints[0])? {
        for b in divisors(ints.last().unwrap())? {
            for sign in [1, -1] {
                let r = BigRational::new(&a * sign, b.clone());
                if !roots.contains(&r) && eval(&r).is_zero() {
                    roots.push(r);
                }
            }
        }
    }
    Ok(roots)
}

/// Factor a monic polynomial into monic irreducibles with multiplicity.
///
/// Over a prime field this is trial division by monic polynomials in
/// increasing degree; over the rationals only degree at most 3 is handled.
pub fn factor(f: &Poly) -> Result<Vec<(Poly, u32)>> {
    let ring = f.ring().clone();
    let ctx = f.ctx().clone();
    let mut rest = f.make_monic()?;
    let mut out: Vec<(Poly, u32)> = Vec::new();
    let divide_out = |rest: &mut Poly, g: &Poly, out: &mut Vec<(Poly, u32)>| {
        let mut mult = 0;
        loop {
            let (q, r) = div_rem(rest, g).expect("monic divisor");
            if !r.is_zero() {
                break;
            }
            *rest = q;
            mult += 1;
        }
        if mult > 0 {
            out.push((g.clone(), mult));
        }
    };
    match &ring {
        Ring::PrimeField(p) => {
            let p = *p;
            let mut d = 1u32;
            let mut tried = 0u64;
            while 2 * d <= rest.total_degree() {
                let count = p
                    .checked_pow(d)
                    .filter(|&c| tried + c <= TRIAL_DIVISION_LIMIT)
                    .ok_or_else(|| Error::FactorizationFailure(format!("trial division bound exceeded for {f}")))?;
                for mut idx in 0..count {
                    tried += 1;
                    let mut c = Vec::with_capacity(d as usize + 1);
                    for _ in 0..d {
                        c.push(Elem::Res(idx % p));
                        idx /= p;
                    }
                    c.push(Elem::Res(1));
                    let g = from_coeffs(&ring, &ctx, c);
                    divide_out(&mut rest, &g, &mut out);
                }
                d += 1;
            }
            if rest.total_degree() > 0 {
                out.push((rest, 1));
            }
        }
        Ring::Rationals => {
            if rest.total_degree() > 3 {
                return Err(Error::FactorizationFailure(format!("degree {} over Q", rest.total_degree())));
            }
            for r in rational_roots(&rest)? {
                let lin = from_coeffs(&ring, &ctx, vec![Elem::Rat(-r), ring.one()]);
                divide_out(&mut rest, &lin, &mut out);
            }
            if rest.total_degree() > 0 {
                out.push((rest, 1));
            }
        }
        other => return Err(Error::FactorizationFailure(format!("factoring over {other}"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u64, c: &[u64]) -> Poly {
        let ctx = VarContext::geometric(&["x"]);
        from_coeffs(&Ring::PrimeField(p), &ctx, c.iter().map(|&v| Elem::Res(v)).collect())
    }

    #[test]
    fn irreducibility_over_small_fields() {
        assert!(is_irreducible(&fp(2, &[1, 1, 1])).unwrap());
        assert!(!is_irreducible(&fp(2, &[1, 0, 1])).unwrap());
        assert!(is_irreducible(&fp(3, &[1, 0, 1])).unwrap());
        assert!(!is_irreducible(&fp(5, &[1, 0, 1])).unwrap());
        // x^4 + x + 1 over F_2 is irreducible, x^4 + x^2 + 1 = (x^2+x+1)^2 is not
        assert!(is_irreducible(&fp(2, &[1, 1, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&fp(2, &[1, 0, 1, 0, 1])).unwrap());
    }

    #[test]
    fn factoring_over_f5() {
        let f = fp(5, &[1, 0, 1]);
        let fs = factor(&f).unwrap();
        let roots: Vec<String> = fs.iter().map(|(g, _)| g.to_string()).collect();
        assert_eq!(roots, vec!["(+ x 2)", "(+ x 3)"]);
        let sq = fp(2, &[1, 0, 1, 0, 1]);
        assert_eq!(factor(&sq).unwrap(), vec![(fp(2, &[1, 1, 1]), 2)]);
    }

    #[test]
    fn inverse_in_extension() {
        let m = fp(3, &[1, 0, 1]);
        let a = fp(3, &[1, 1]);
        let inv = inverse_mod(&a, &m).unwrap();
        assert_eq!(rem(&a.mul(&inv), &m), fp(3, &[1]));
        assert!(inverse_mod(&fp(5, &[2, 1]), &fp(5, &[1, 0, 1])).is_none());
    }

    #[test]
    fn rational_roots_of_cubics() {
        let ctx = VarContext::geometric(&["x"]);
        let q =
            |v: &[i64]| from_coeffs(&Ring::Rationals, &ctx, v.iter().map(|&c| Ring::Rationals.from_int(c)).collect());
        // (2x - 1)(x + 3)(x^2 + 1) is beyond degree 3, so use (2x-1)(x+3)
        let r = rational_roots(&q(&[-3, 5, 2])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(is_irreducible(&q(&[-2, 0, 0, 1])).unwrap());
        assert!(!is_irreducible(&q(&[-8, 0, 0, 1])).unwrap());
        assert!(is_irreducible(&q(&[1, 0, 0, 0, 1])).is_err());
    }
}
