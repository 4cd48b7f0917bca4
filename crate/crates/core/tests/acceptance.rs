//! Acceptance suite: ten criteria, each with its own time budget. Prints one
//! PASS/FAIL line per criterion and fails if any criterion does.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use transcend_kit::bertini::{generic_member, specialize_lambda, Hyperplane, ProjMorphism};
use transcend_kit::groebner::Ideal;
use transcend_kit::poly::{Monomial, Poly, VarContext};
use transcend_kit::regularity::{
    certify_generic_regular, fiberwise_smooth, local_order2_vanishes, member_survey, mixed_family, mixedchar_witness,
    reducedness_check, Evidence, FiberOptions, MemberVerdict, Verdict,
};
use transcend_kit::ring::{enumerate_maximal_ideals, Elem, QuotientMap, Ring};
use transcend_kit::transcend::{
    curry, fiber_description, is_admissible_denominator, iterated_admissible, lift_from_quotient, reduce_mod_ideal,
    uncurry, FiberTarget,
};

type Check = std::result::Result<(), String>;
type Criterion = (&'static str, fn() -> Check, Duration);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn euclid(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

fn params(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("t{i}")).collect()
}

/// Random sparse polynomial with exponent vectors of total degree at most
/// `deg` and coefficients drawn by `coeff`.
fn random_poly(
    rng: &mut ChaCha8Rng,
    ring: &Ring,
    ctx: &std::sync::Arc<VarContext>,
    deg: u32,
    max_terms: usize,
    mut coeff: impl FnMut(&mut ChaCha8Rng) -> Elem,
) -> Poly {
    let n = ctx.len();
    let terms = rng.gen_range(1..=max_terms);
    let mut out = Vec::new();
    for _ in 0..terms {
        let mut e = vec![0u32; n];
        let mut left = rng.gen_range(0..=deg);
        for slot in e.iter_mut() {
            let x = rng.gen_range(0..=left);
            *slot = x;
            left -= x;
        }
        out.push((Monomial::from_exponents(&e), coeff(rng)));
    }
    Poly::from_terms(ring, ctx, out)
}

fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut checked = 0;
    while checked < 10_000 {
        let nvars = rng.gen_range(1..=3);
        let ctx = VarContext::parameters(&params(nvars));
        let mut ints = Vec::new();
        let f = random_poly(&mut rng, &Ring::Integers, &ctx, 6, 6, |r| {
            let c = r.gen_range(-100i64..=100);
            Elem::Int(BigInt::from(c))
        });
        if f.is_zero() {
            continue;
        }
        for (_, c) in f.terms() {
            ints.push(i64::try_from(c.as_int()).unwrap());
        }
        let oracle = ints.iter().fold(0, |g, &c| euclid(g, c)) == 1;
        let got = is_admissible_denominator(&f).map_err(|e| e.to_string())?;
        ensure(got == oracle, || format!("{f}: admissible={got}, gcd oracle={oracle}"))?;
        checked += 1;
    }
    Ok(())
}

fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let cases: [(Ring, i64); 4] =
        [(Ring::Integers, 2), (Ring::Integers, 5), (Ring::Integers, 6), (Ring::integers_mod(12).unwrap(), 3)];
    for (base, g) in cases {
        let gens = vec![base.from_int(g)];
        let source = Ring::transcendental(base.clone(), &params(2)).unwrap();
        let t = source.transc().unwrap();
        let target = QuotientMap::for_ideal(&base, &gens).map_err(|e| e.to_string())?.target().clone();
        let size = target.finite_field_size().unwrap_or(g as u64).max(2) as i64;
        let mut done = 0;
        while done < 500 {
            let tr = target.clone();
            let fbar = random_poly(&mut rng, &target, t.ctx(), 4, 4, |r| tr.from_int(r.gen_range(0..size)));
            if fbar.is_zero() || !is_admissible_denominator(&fbar).unwrap() {
                continue;
            }
            let lifted = lift_from_quotient(&fbar, &base, &gens).map_err(|e| e.to_string())?;
            ensure(is_admissible_denominator(&lifted).unwrap(), || format!("lift {lifted} not admissible"))?;
            let image = reduce_mod_ideal(&source, &t.from_poly(lifted.clone()), &gens).map_err(|e| e.to_string())?;
            ensure(image.value.num == fbar && image.value.den.is_constant(), || {
                format!("reduce(lift({fbar})) = {}", image.value)
            })?;
            ensure(image.value.den.constant_coeff() == target.one(), || format!("denominator {}", image.value.den))?;
            done += 1;
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    // denominators are units of the base
    let cases: [(Ring, &[i64]); 2] = [
        (Ring::integers_mod(12).unwrap(), &[1, 5, 7, 11]),
        (Ring::localized_at(5).unwrap(), &[1, 2, 3, 4, 6, 7, 8, 9]),
    ];
    for (base, units) in cases {
        let source = Ring::transcendental(base.clone(), &["t"]).unwrap();
        let t = source.transc().unwrap();
        let coeff = |r: &mut ChaCha8Rng| -> Elem {
            let n = BigInt::from(r.gen_range(-20i64..=20));
            let d = BigInt::from(units[r.gen_range(0..units.len())]);
            base.from_rational(&BigRational::new(n, d)).unwrap()
        };
        let maximal = enumerate_maximal_ideals(&base).map_err(|e| e.to_string())?;
        for m in maximal {
            let fiber = fiber_description(&source, FiberTarget::Maximal(m.clone())).map_err(|e| e.to_string())?;
            let kt = fiber.ring().clone();
            let mut done = 0;
            while done < 500 {
                let num = random_poly(&mut rng, &base, t.ctx(), 4, 4, coeff);
                let den = random_poly(&mut rng, &base, t.ctx(), 3, 3, coeff);
                if den.is_zero() || !is_admissible_denominator(&den).unwrap() {
                    continue;
                }
                let a = t.fraction(num.clone(), den).map_err(|e| e.to_string())?;
                let num_image = fiber.apply(&t.from_poly(num)).map_err(|e| e.to_string())?;
                if num_image.is_zero() {
                    continue;
                }
                let image = Elem::Frac(Box::new(fiber.apply(&a).map_err(|e| e.to_string())?));
                let inv =
                    kt.inv(&image).map_err(|e| format!("{} not invertible in {kt}: {e}", kt.display_elem(&image)))?;
                ensure(kt.is_one(&kt.mul(&image, &inv)), || format!("inverse of {} fails", kt.display_elem(&image)))?;
                done += 1;
            }
        }
    }
    Ok(())
}

fn frobenius(p: u64, n: usize) -> ProjMorphism {
    let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
    ProjMorphism::frobenius(Ring::PrimeField(p), &names).unwrap()
}

fn criterion_4() -> Check {
    for p in [2u64, 3, 5] {
        let g = generic_member(&frobenius(p, 2), 0).map_err(|e| e.to_string())?;
        let want = format!("(+ (^ x0 {p}) (* t1 (^ x1 {p})) (* t2 (^ x2 {p})))");
        ensure(g.equation().to_string() == want, || format!("p={p}: {}", g.equation()))?;
    }
    Ok(())
}

fn criterion_5() -> Check {
    for (q, n, rows) in [(2u64, 1usize, 3usize), (2, 2, 7), (3, 1, 4), (3, 2, 13)] {
        let phi = frobenius(q, n);
        // |P^n(F_q)|: vectors of F_q^{n+1} whose first nonzero entry is 1
        let count = (0..(q as usize).pow(n as u32 + 1))
            .filter(|&v| {
                let digits: Vec<usize> = (0..=n).map(|i| v / (q as usize).pow(i as u32) % q as usize).collect();
                digits.iter().find(|&&d| d != 0) == Some(&1)
            })
            .count();
        ensure(count == rows, || format!("|P^{n}(F_{q})| = {count}"))?;
        let table = member_survey(&phi, q).map_err(|e| e.to_string())?;
        ensure(table.rows.len() == rows, || format!("F_{q} P^{n}: {} rows", table.rows.len()))?;
        ensure(table.rows.iter().all(|r| r.verdict == MemberVerdict::NonReduced), || {
            format!("F_{q} P^{n}: not every member is non-reduced")
        })?;
        let cert = certify_generic_regular(&phi);
        ensure(cert.verdict == Verdict::RegularCertified, || format!("certify: {}", cert.verdict))?;
        let g = generic_member(&phi, 0).map_err(|e| e.to_string())?;
        let red = reducedness_check(g.equation()).map_err(|e| e.to_string())?;
        ensure(red.verdict == Verdict::Reduced, || format!("generic equation: {}", red.verdict))?;
    }
    Ok(())
}

fn criterion_6() -> Check {
    for p in [2u64, 3] {
        let phi = mixed_family(p).map_err(|e| e.to_string())?;
        let opts = FiberOptions { proper: true, primes: vec![] };
        let rep = fiberwise_smooth(phi.ideal(), phi.ctx(), phi.blocks(), &opts).map_err(|e| e.to_string())?;
        ensure(rep.verdict == Verdict::RegularCertified, || format!("p={p}: fiberwise {}", rep.verdict))?;
        let zp = phi.base().clone();
        let mut cases = 0;
        for a0 in -3i64..=3 {
            for a1 in -3i64..=3 {
                for a2 in -3i64..=3 {
                    let coeffs = [a0, a1, a2];
                    if coeffs.iter().all(|c| c % p as i64 == 0) {
                        continue;
                    }
                    let h = Hyperplane::from_ints(zp.clone(), &coeffs).map_err(|e| e.to_string())?;
                    let r = mixedchar_witness(&phi, &h).map_err(|e| e.to_string())?;
                    ensure(r.verdict == Verdict::NotRegular, || format!("p={p} a={coeffs:?}: {}", r.verdict))?;
                    let Evidence::Witness(w) = &r.evidence else {
                        return Err(format!("p={p} a={coeffs:?}: no witness"));
                    };
                    let again = local_order2_vanishes(&w.equation, &w.params).map_err(|e| e.to_string())?;
                    ensure(again, || format!("p={p} a={coeffs:?}: witness {} fails", w.describe()))?;
                    cases += 1;
                }
            }
        }
        ensure(cases > 200, || format!("p={p}: only {cases} cases"))?;
    }
    Ok(())
}

fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let source = Ring::transcendental(Ring::Integers, &params(2)).unwrap();
    let t = source.transc().unwrap();
    let coeff = |r: &mut ChaCha8Rng| Elem::Int(BigInt::from(r.gen_range(-12i64..=12)));
    let mut done = 0;
    while done < 1000 {
        let num = random_poly(&mut rng, &Ring::Integers, t.ctx(), 3, 4, coeff);
        let den = random_poly(&mut rng, &Ring::Integers, t.ctx(), 3, 3, coeff);
        if den.is_zero() {
            continue;
        }
        let content = den.terms().iter().fold(BigInt::from(0), |g, (_, c)| g.gcd(c.as_int()));
        let oracle = content == BigInt::from(1);
        let joint = is_admissible_denominator(&den).map_err(|e| e.to_string())?;
        let iterated = iterated_admissible(&source, &den).map_err(|e| e.to_string())?;
        ensure(joint == oracle && iterated == oracle, || {
            format!("{den}: joint={joint} iterated={iterated} oracle={oracle}")
        })?;
        if !oracle {
            continue;
        }
        let a = t.fraction(num, den).map_err(|e| e.to_string())?;
        let c = curry(&source, &a).map_err(|e| e.to_string())?;
        let back = uncurry(&c, &source).map_err(|e| e.to_string())?;
        ensure(t.eq(&back, &a), || format!("uncurry(curry({a})) = {back}"))?;
        done += 1;
    }
    Ok(())
}

fn criterion_8() -> Check {
    for k in [Ring::PrimeField(2), Ring::Rationals] {
        let over_poly = Ring::transcendental(Ring::poly_ring(k.clone(), &["x", "y"]).unwrap(), &["t"]).unwrap();
        let over_field = Ring::transcendental(Ring::transcendental(k.clone(), &["x", "y"]).unwrap(), &["t"]).unwrap();
        for (ring, want) in [(over_poly, false), (over_field, true)] {
            let tr = ring.transc().unwrap();
            let base = tr.base();
            let coeff = |name: &str| match base {
                Ring::PolyRing(d) => Elem::Poly(Poly::variable(&d.field, &d.ctx, name).unwrap()),
                Ring::Transc(inner) => Elem::Frac(Box::new(inner.param(name).unwrap())),
                _ => unreachable!(),
            };
            let t = Poly::variable(base, tr.ctx(), "t").unwrap();
            let f = t.scale(&coeff("y")).add(&Poly::constant(base, tr.ctx(), coeff("x")));
            let got = is_admissible_denominator(&f).map_err(|e| e.to_string())?;
            ensure(got == want, || format!("yt + x over {base}: {got}"))?;
        }
    }
    Ok(())
}

fn criterion_9() -> Check {
    let f3 = Ring::PrimeField(3);
    let quadric = {
        let ctx = VarContext::geometric(&["x0", "x1", "x2", "x3"]);
        let v = |i| Poly::var_index(&f3, &ctx, i);
        let q = v(0).mul(&v(1)).add(&v(2).mul(&v(3)));
        let forms = (0..4).map(v).collect();
        ProjMorphism::new(f3.clone(), ctx.clone(), vec![ctx.names().to_vec()], vec![q], forms).unwrap()
    };
    let cases = [
        ("P^1", ProjMorphism::identity(f3.clone(), &["x0", "x1"]).unwrap(), 2i64),
        ("P^2", ProjMorphism::identity(f3.clone(), &["x0", "x1", "x2"]).unwrap(), 3),
        ("quadric", quadric, 3),
    ];
    for (name, phi, cone_dim) in cases {
        let x = Ideal::new(phi.base(), phi.ctx(), phi.ideal().to_vec()).map_err(|e| e.to_string())?;
        let dx = x.krull_dimension().map_err(|e| e.to_string())?;
        ensure(dx == cone_dim, || format!("{name}: dim cone X = {dx}"))?;
        let g = generic_member(&phi, 0).map_err(|e| e.to_string())?;
        let xg = Ideal::new(g.ring(), g.ctx(), g.full_ideal()).map_err(|e| e.to_string())?;
        let dg = xg.krull_dimension().map_err(|e| e.to_string())?;
        ensure(dg == dx - 1, || format!("{name}: dim cone X^gen = {dg}, dim cone X = {dx}"))?;
    }
    Ok(())
}

fn criterion_10() -> Check {
    let g = generic_member(&frobenius(2, 2), 0).map_err(|e| e.to_string())?;
    let fresh = ["u0", "u1", "u2"];
    let s = specialize_lambda(&g, &[1, 2], &fresh).map_err(|e| e.to_string())?;
    // the same equation assembled by hand in F_2(u0, u1, u2)
    let k = Ring::transcendental(Ring::PrimeField(2), &fresh).unwrap();
    let kt = k.transc().unwrap();
    let u = |n: &str| Elem::Frac(Box::new(kt.param(n).unwrap()));
    let x = |n: &str| Poly::variable(&k, &s.ctx, n).unwrap();
    let c1 = k.add(&u("u1"), &u("u0"));
    let c2 = k.add(&u("u2"), &k.pow(&u("u0"), 2));
    let hand = x("x0").pow(2).add(&x("x1").pow(2).scale(&c1)).add(&x("x2").pow(2).scale(&c2));
    ensure(s.ring == k && s.equation == hand, || format!("specialized {} vs hand {hand}", s.equation))?;

    let mut seen: Vec<Poly> = Vec::new();
    for d1 in 1..=5u32 {
        for d2 in 1..=4u32 {
            let e = specialize_lambda(&g, &[d1, d2], &fresh).map_err(|e| e.to_string())?.equation;
            ensure(!seen.contains(&e), || format!("d=({d1},{d2}) repeats {e}"))?;
            seen.push(e);
        }
    }
    ensure(seen.len() == 20, || format!("{} samples", seen.len()))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("1 admissibility vs gcd oracle", criterion_1, Duration::from_secs(5)),
        ("2 residue/lift round trip", criterion_2, Duration::from_secs(5)),
        ("3 maximal ideal fibres invert", criterion_3, Duration::from_secs(10)),
        ("4 Frobenius generic equation", criterion_4, Duration::from_secs(1)),
        ("5 survey vs generic member", criterion_5, Duration::from_secs(60)),
        ("6 mixed characteristic witnesses", criterion_6, Duration::from_secs(300)),
        ("7 currying round trip", criterion_7, Duration::from_secs(10)),
        ("8 yt + x admissibility", criterion_8, Duration::from_secs(1)),
        ("9 dimension drop", criterion_9, Duration::from_secs(60)),
        ("10 specialization family", criterion_10, Duration::from_secs(5)),
    ];
    let mut failures = Vec::new();
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome =
            outcome.and_then(|()| ensure(elapsed <= limit, || format!("took {elapsed:.2?}, limit {limit:?}")));
        match &outcome {
            Ok(()) => println!("criterion {name}: PASS ({elapsed:.2?})"),
            Err(e) => {
                println!("criterion {name}: FAIL ({elapsed:.2?}) {e}");
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
