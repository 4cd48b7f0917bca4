//! Exact division and greatest common divisors of multivariate polynomials
//! over a field, by recursive content / primitive-part remainder sequences.

use super::Poly;

/// `a / b` when `b` divides `a` exactly, over a field or `Z`.
pub fn divide_exact(a: &Poly, b: &Poly) -> Option<Poly> {
    let ring = a.ring();
    let (lm, lc) = match b.terms().first() {
        Some((m, c)) => (m.clone(), c.clone()),
        None => return None,
    };
    let inv = ring.inv(&lc).ok();
    if inv.is_none() && ring != &crate::ring::Ring::Integers {
        return None;
    }
    let mut rem = a.clone();
    let mut quot = Vec::new();
    while let Some((m, c)) = rem.terms().first().cloned() {
        if !lm.divides(&m) {
            return None;
        }
        let qm = lm.quotient_of(&m);
        let qc = match &inv {
            Some(inv) => ring.mul(&c, inv),
            None => {
                use num_integer::Integer;
                let (q, r) = c.as_int().div_rem(lc.as_int());
                if !num_traits::Zero::is_zero(&r) {
                    return None;
                }
                crate::ring::Elem::Int(q)
            }
        };
        rem = rem.sub(&b.mul_term(&qm, &qc));
        quot.push((qm, qc));
    }
    Some(Poly::from_terms(ring, a.ctx(), quot))
}

fn normalize(p: Poly) -> Poly {
    p.make_monic().unwrap_or(p)
}

fn main_var(a: &Poly, b: &Poly) -> Option<usize> {
    (0..a.ctx().len()).rev().find(|&i| a.degree_in(i) > 0 || b.degree_in(i) > 0)
}

/// Monic gcd over a field. Both inputs zero gives zero.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return normalize(b.clone());
    }
    if b.is_zero() {
        return normalize(a.clone());
    }
    let v = match main_var(a, b) {
        Some(v) => v,
        None => return Poly::one(a.ring(), a.ctx()),
    };
    match (a.degree_in(v) > 0, b.degree_in(v) > 0) {
        (true, false) => return gcd(&content(a, v), b),
        (false, true) => return gcd(a, &content(b, v)),
        _ => {}
    }
    let (ca, cb) = (content(a, v), content(b, v));
    let pa = divide_exact(a, &ca).expect("content divides");
    let pb = divide_exact(b, &cb).expect("content divides");
    let g = gcd(&ca, &cb);
    let h = primitive_prs(pa, pb, v);
    normalize(g.mul(&h))
}

/// gcd of the coefficients of `a` viewed as a polynomial in `v`.
pub fn content(a: &Poly, v: usize) -> Poly {
    let mut g = Poly::zero(a.ring(), a.ctx());
    for c in a.univariate_coefficients(v) {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, &c);
        if g.is_constant() {
            break;
        }
    }
    g
}

fn primitive_part(a: &Poly, v: usize) -> Poly {
    let c = content(a, v);
    divide_exact(a, &c).expect("content divides")
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
fn pseudo_rem(a: &Poly, b: &Poly, v: usize) -> Poly {
    let db = b.degree_in(v);
    let lb = b.univariate_coefficients(v).pop().expect("nonzero divisor");
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = r.univariate_coefficients(v).pop().expect("nonzero remainder");
        let shift = super::Monomial::var(a.ctx().len(), v, dr - db);
        let t = lr.mul_term(&shift, &a.ring().one());
        r = r.mul(&lb).sub(&t.mul(b));
    }
    r
}

fn primitive_prs(mut a: Poly, mut b: Poly, v: usize) -> Poly {
    if a.degree_in(v) < b.degree_in(v) {
        std::mem::swap(&mut a, &mut b);
    }
    loop {
        let r = pseudo_rem(&a, &b, v);
        if r.is_zero() {
            return primitive_part(&b, v);
        }
        if r.degree_in(v) == 0 {
            return Poly::one(a.ring(), a.ctx());
        }
        a = b;
        b = primitive_part(&r, v);
    }
}
