use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{univariate, Elem, Ring, RingElement};
use crate::arith;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// Decide whether the listed elements generate the unit ideal.
pub fn content_is_unit(coeffs: &[RingElement]) -> Result<bool> {
    let first = coeffs.first().ok_or(Error::EmptyList)?;
    for c in coeffs {
        if c.ring() != first.ring() {
            return Err(Error::MixedRings(format!("{} vs {}", first.ring(), c.ring())));
        }
    }
    let values: Vec<Elem> = coeffs.iter().map(|c| c.value().clone()).collect();
    generates_unit_ideal(first.ring(), &values)
}

/// Same as [`content_is_unit`] on bare payloads of a known ring.
pub fn generates_unit_ideal(ring: &Ring, coeffs: &[Elem]) -> Result<bool> {
    if coeffs.is_empty() {
        return Err(Error::EmptyList);
    }
    let nonzero: Vec<&Elem> = coeffs.iter().filter(|c| !ring.is_zero(c)).collect();
    if nonzero.is_empty() {
        return Ok(false);
    }
    Ok(match ring {
        Ring::Integers => {
            let g = nonzero.iter().fold(BigInt::zero(), |g, c| g.gcd(c.as_int()));
            g.is_one()
        }
        Ring::IntegersMod(n) => {
            let g = nonzero.iter().fold(*n, |g, c| arith::gcd_u64(g, c.as_res()));
            g == 1
        }
        Ring::LocalizedIntegersAt(_) => nonzero.iter().any(|c| ring.is_unit(c)),
        Ring::PolyRing(d) => {
            let polys: Vec<Poly> = nonzero.iter().map(|c| c.as_poly().clone()).collect();
            crate::groebner::Ideal::new(&d.field, &d.ctx, polys)?.is_unit_ideal()?
        }
        Ring::Quotient(q) => {
            let mut g = q.modulus.clone();
            for c in &nonzero {
                g = univariate::gcd(&g, c.as_poly());
            }
            g.total_degree() == 0
        }
        Ring::Transc(t) => {
            // I R(t) = (1) iff the numerators leave every m R[t]; equivalently
            // all of their base coefficients together generate R.
            let base = t.base();
            let mut all = Vec::new();
            for c in &nonzero {
                all.extend(c.as_frac().num.terms().iter().map(|(_, e)| e.clone()));
            }
            generates_unit_ideal(base, &all)?
        }
        _ if ring.is_field() => true,
        _ => nonzero.iter().any(|c| ring.is_unit(c)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarContext;
    use crate::ring::{enumerate_maximal_ideals, residue_map};
    use proptest::prelude::*;

    fn ints(v: &[i64]) -> Vec<RingElement> {
        v.iter().map(|&x| RingElement::from_int(&Ring::Integers, x)).collect()
    }

    #[test]
    fn integer_content() {
        assert!(content_is_unit(&ints(&[2, 3])).unwrap());
        assert!(!content_is_unit(&ints(&[2, 4])).unwrap());
        assert!(matches!(content_is_unit(&[]), Err(Error::EmptyList)));
    }

    #[test]
    fn field_content() {
        let f5 = Ring::PrimeField(5);
        assert!(content_is_unit(&[RingElement::from_int(&f5, 3)]).unwrap());
        assert!(!content_is_unit(&[RingElement::from_int(&f5, 0)]).unwrap());
    }

    #[test]
    fn polynomial_ring_content() {
        for field in [Ring::PrimeField(2), Ring::Rationals] {
            let r = Ring::poly_ring(field.clone(), &["x", "y"]).unwrap();
            let ctx = VarContext::geometric(&["x", "y"]);
            let x = Poly::variable(&field, &ctx, "x").unwrap();
            let y = Poly::variable(&field, &ctx, "y").unwrap();
            let e = |p: Poly| RingElement::new(r.clone(), Elem::Poly(p)).unwrap();
            assert!(!content_is_unit(&[e(y.clone()), e(x.clone())]).unwrap());
            let x1 = x.add(&Poly::one(&field, &ctx));
            assert!(content_is_unit(&[e(x1), e(x)]).unwrap());
        }
    }

    #[test]
    fn mixed_rings_rejected() {
        let a = RingElement::from_int(&Ring::Integers, 1);
        let b = RingElement::from_int(&Ring::Rationals, 1);
        assert!(matches!(content_is_unit(&[a, b]), Err(Error::MixedRings(_))));
    }

    fn semi_local_oracle(ring: &Ring, coeffs: &[Elem]) -> bool {
        enumerate_maximal_ideals(ring).unwrap().iter().all(|m| {
            coeffs.iter().any(|c| {
                let e = RingElement::new(ring.clone(), c.clone()).unwrap();
                !residue_map(&e, m).unwrap().is_zero()
            })
        })
    }

    proptest! {
        #[test]
        fn integer_content_matches_euclid(v in prop::collection::vec(-60i64..60, 1..6)) {
            let mut g = 0i64;
            for &x in &v {
                let (mut a, mut b) = (g.abs(), x.abs());
                while b != 0 { let r = a % b; a = b; b = r; }
                g = a;
            }
            prop_assert_eq!(content_is_unit(&ints(&v)).unwrap(), g == 1);
        }

        #[test]
        fn zmod_content_matches_maximal_ideals(v in prop::collection::vec(0u64..36, 1..4), n in prop::sample::select(vec![12u64, 36, 30, 7, 8])) {
            let ring = Ring::IntegersMod(n);
            let coeffs: Vec<Elem> = v.iter().map(|&x| Elem::Res(x % n)).collect();
            prop_assert_eq!(generates_unit_ideal(&ring, &coeffs).unwrap(), semi_local_oracle(&ring, &coeffs));
        }

        #[test]
        fn local_content_matches_maximal_ideals(v in prop::collection::vec((-50i64..50, 1i64..20), 1..4)) {
            let ring = Ring::LocalizedIntegersAt(5);
            let coeffs: Vec<Elem> = v
                .iter()
                .filter(|(_, d)| d % 5 != 0)
                .map(|&(a, d)| ring.from_rational(&num_rational::BigRational::new(a.into(), d.into())).unwrap())
                .collect();
            prop_assume!(!coeffs.is_empty());
            prop_assert_eq!(generates_unit_ideal(&ring, &coeffs).unwrap(), semi_local_oracle(&ring, &coeffs));
        }

        #[test]
        fn quotient_content_matches_maximal_ideals(v in prop::collection::vec(prop::collection::vec(0u64..3, 3), 1..3)) {
            let f3 = Ring::PrimeField(3);
            let ctx = VarContext::geometric(&["x"]);
            // x^3 - x = x (x - 1) (x + 1)
            let m = univariate::from_coeffs(&f3, &ctx, vec![Elem::Res(0), Elem::Res(2), Elem::Res(0), Elem::Res(1)]);
            let ring = Ring::quotient(f3.clone(), "x", &m).unwrap();
            let coeffs: Vec<Elem> = v
                .iter()
                .map(|c| Elem::Poly(univariate::from_coeffs(&f3, &ctx, c.iter().map(|&x| Elem::Res(x)).collect())))
                .collect();
            prop_assert_eq!(generates_unit_ideal(&ring, &coeffs).unwrap(), semi_local_oracle(&ring, &coeffs));
        }
    }
}
