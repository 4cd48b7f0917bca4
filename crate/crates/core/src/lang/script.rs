//! Declarations of the input language and expression evaluation.
//!
//! ```text
//! (ring R (Zloc 2))
//! (space P (proj x0 x1 x2) (proj y0 y1 y2))
//! (poly f R (in P) (+ (* x0 (^ y0 2)) (* x1 (^ y1 2)) (* x2 (^ y2 2))))
//! (morphism phi (in P) (ideal f) (forms x0 x1 x2))
//! (hyperplane H (-1 1 0))
//! (cmd mixed-witness phi H)
//! ```

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::sexpr::{read_all, syntax, Pos, Sexp};
use crate::bertini::{Hyperplane, ProjMorphism};
use crate::error::{Error, Result};
use crate::guard;
use crate::poly::{Poly, VarContext};
use crate::regularity::mixed_family;
use crate::ring::{Elem, Ring};

/// Variables with their projective blocks. Affine variables belong to no
/// block.
#[derive(Clone, Debug, PartialEq)]
pub struct Space {
    pub ctx: Arc<VarContext>,
    pub blocks: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Default)]
pub struct Env {
    pub rings: Vec<(String, Ring)>,
    pub spaces: Vec<(String, Space)>,
    pub polys: Vec<(String, Poly, Space)>,
    pub morphisms: Vec<(String, ProjMorphism)>,
    pub hyperplanes: Vec<(String, Hyperplane)>,
}

fn lookup<'a, T>(items: &'a [(String, T)], name: &str) -> Option<&'a T> {
    items.iter().rev().find(|(n, _)| n == name).map(|(_, t)| t)
}

impl Env {
    pub fn ring(&self, name: &str) -> Option<&Ring> {
        lookup(&self.rings, name)
    }

    pub fn space(&self, name: &str) -> Option<&Space> {
        lookup(&self.spaces, name)
    }

    pub fn poly(&self, name: &str) -> Option<(&Poly, &Space)> {
        self.polys.iter().rev().find(|(n, ..)| n == name).map(|(_, p, s)| (p, s))
    }

    pub fn morphism(&self, name: &str) -> Option<&ProjMorphism> {
        lookup(&self.morphisms, name)
    }

    pub fn hyperplane(&self, name: &str) -> Option<&Hyperplane> {
        lookup(&self.hyperplanes, name)
    }

    /// The most recently declared ring.
    pub fn current_ring(&self) -> Option<&Ring> {
        self.rings.last().map(|(_, r)| r)
    }
}

#[derive(Clone, Debug)]
pub struct CommandSpec {
    pub name: String,
    pub args: Vec<Sexp>,
    pub pos: Pos,
}

#[derive(Clone, Debug)]
pub struct Script {
    pub env: Env,
    pub command: Option<CommandSpec>,
}

pub fn parse(input: &str) -> Result<Script> {
    let mut env = Env::default();
    let mut command = None;
    for form in read_all(input)? {
        let items = form.list().ok_or_else(|| syntax(form.pos(), "expected a declaration"))?;
        let head = form.head().ok_or_else(|| syntax(form.pos(), "declaration needs a keyword"))?;
        match head {
            "ring" => declare_ring(&mut env, items, form.pos())?,
            "space" => declare_space(&mut env, items, form.pos())?,
            "poly" => declare_poly(&mut env, items, form.pos())?,
            "morphism" => declare_morphism(&mut env, items, form.pos())?,
            "hyperplane" => declare_hyperplane(&mut env, items, form.pos())?,
            "cmd" => {
                if command.is_some() {
                    return Err(syntax(form.pos(), "only one command per script"));
                }
                let name = items.get(1).and_then(Sexp::atom).ok_or_else(|| arity(form.pos(), "cmd needs a name"))?;
                command = Some(CommandSpec { name: name.to_string(), args: items[2..].to_vec(), pos: form.pos() });
            }
            other => return Err(unknown(form.pos(), other)),
        }
    }
    Ok(Script { env, command })
}

pub(crate) fn arity(pos: Pos, msg: &str) -> Error {
    Error::ArityError(format!("{msg} at {pos}"))
}

pub(crate) fn unknown(pos: Pos, name: &str) -> Error {
    Error::UnknownIdentifier(format!("{name} at {pos}"))
}

fn name_of(items: &[Sexp], pos: Pos, what: &str) -> Result<String> {
    items.get(1).and_then(Sexp::atom).map(str::to_string).ok_or_else(|| arity(pos, &format!("{what} needs a name")))
}

pub(crate) fn parse_u64(s: &Sexp) -> Result<u64> {
    s.atom()
        .and_then(|a| a.parse().ok())
        .ok_or_else(|| syntax(s.pos(), format!("expected a non-negative integer, found {s}")))
}

fn atoms(s: &Sexp) -> Result<Vec<String>> {
    let items = s.list().ok_or_else(|| syntax(s.pos(), "expected a list of names"))?;
    items.iter().map(|x| x.atom().map(str::to_string).ok_or_else(|| syntax(x.pos(), "expected a name"))).collect()
}

pub fn ring_desc(env: &Env, s: &Sexp) -> Result<Ring> {
    if let Some(a) = s.atom() {
        return match a {
            "Z" => Ok(Ring::Integers),
            "Q" => Ok(Ring::Rationals),
            name => env.ring(name).cloned().ok_or_else(|| unknown(s.pos(), name)),
        };
    }
    let items = s.list().expect("not an atom");
    let head = s.head().ok_or_else(|| syntax(s.pos(), "ring descriptor needs a keyword"))?;
    let want = |n: usize| {
        if items.len() == n {
            Ok(())
        } else {
            Err(arity(s.pos(), &format!("{head} takes {} arguments", n - 1)))
        }
    };
    match head {
        "Fp" => {
            want(2)?;
            Ring::prime_field(parse_u64(&items[1])?)
        }
        "Zmod" => {
            want(2)?;
            Ring::integers_mod(parse_u64(&items[1])?)
        }
        "Zloc" => {
            want(2)?;
            Ring::localized_at(parse_u64(&items[1])?)
        }
        "Polyring" => {
            want(3)?;
            Ring::poly_ring(ring_desc(env, &items[1])?, &atoms(&items[2])?)
        }
        "Transc" => {
            want(3)?;
            Ring::transcendental(ring_desc(env, &items[1])?, &atoms(&items[2])?)
        }
        "Quotient" => {
            want(4)?;
            let field = ring_desc(env, &items[1])?;
            let var = items[2].atom().ok_or_else(|| syntax(items[2].pos(), "expected a variable"))?;
            let ctx = VarContext::geometric(&[var]);
            let m = eval(env, &field, &ctx, &items[3])?;
            Ring::quotient(field, var, &m)
        }
        other => Err(unknown(s.pos(), other)),
    }
}

fn declare_ring(env: &mut Env, items: &[Sexp], pos: Pos) -> Result<()> {
    if items.len() != 3 {
        return Err(arity(pos, "ring takes a name and a descriptor"));
    }
    let name = name_of(items, pos, "ring")?;
    let ring = ring_desc(env, &items[2])?;
    env.rings.push((name, ring));
    Ok(())
}

/// `(proj v ...)` and `(affine v ...)` clauses.
fn space_from_clauses(clauses: &[Sexp]) -> Result<Space> {
    let mut names = Vec::new();
    let mut blocks = Vec::new();
    for c in clauses {
        let items = c.list().ok_or_else(|| syntax(c.pos(), "expected (proj ...) or (affine ...)"))?;
        let vars: Vec<String> = items[1..]
            .iter()
            .map(|x| x.atom().map(str::to_string).ok_or_else(|| syntax(x.pos(), "expected a variable")))
            .collect::<Result<_>>()?;
        if vars.is_empty() {
            return Err(arity(c.pos(), "block needs variables"));
        }
        match c.head() {
            Some("proj") => blocks.push(vars.clone()),
            Some("affine") => {}
            _ => return Err(syntax(c.pos(), "expected (proj ...) or (affine ...)")),
        }
        names.extend(vars);
    }
    let ctx = VarContext::new(names.into_iter().map(|n| (n, crate::poly::Block::Geometric)).collect())?;
    Ok(Space { ctx, blocks })
}

fn declare_space(env: &mut Env, items: &[Sexp], pos: Pos) -> Result<()> {
    if items.len() < 3 {
        return Err(arity(pos, "space takes a name and blocks"));
    }
    let name = name_of(items, pos, "space")?;
    let space = space_from_clauses(&items[2..])?;
    env.spaces.push((name, space));
    Ok(())
}

/// `(in S)` for a declared space, or `(in v ...)` for one projective block.
fn space_clause(env: &Env, s: &Sexp) -> Result<Space> {
    let items = s.list().filter(|_| s.head() == Some("in")).ok_or_else(|| syntax(s.pos(), "expected (in ...)"))?;
    if items.len() == 2 {
        if let Some(sp) = items[1].atom().and_then(|n| env.space(n)) {
            return Ok(sp.clone());
        }
    }
    if items.len() > 1 && items[1].list().is_some() {
        return space_from_clauses(&items[1..]);
    }
    let vars: Vec<Sexp> = items[1..].to_vec();
    let mut clause = vec![Sexp::Atom("proj".into(), s.pos())];
    clause.extend(vars);
    space_from_clauses(&[Sexp::List(clause, s.pos())])
}

/// Optional ring argument at `items[i]`: consumed when it names a ring or is
/// a ring descriptor.
fn optional_ring(env: &Env, items: &[Sexp], i: usize, pos: Pos) -> Result<(Ring, usize)> {
    if let Some(s) = items.get(i) {
        let is_ring = match s {
            Sexp::Atom(a, _) => a == "Z" || a == "Q" || env.ring(a).is_some(),
            Sexp::List(..) => matches!(s.head(), Some("Fp" | "Zmod" | "Zloc" | "Polyring" | "Transc" | "Quotient")),
        };
        if is_ring {
            return Ok((ring_desc(env, s)?, i + 1));
        }
    }
    let r = env.current_ring().cloned().ok_or_else(|| syntax(pos, "no ring declared"))?;
    Ok((r, i))
}

fn declare_poly(env: &mut Env, items: &[Sexp], pos: Pos) -> Result<()> {
    let name = name_of(items, pos, "poly")?;
    let (ring, i) = optional_ring(env, items, 2, pos)?;
    if items.len() != i + 2 {
        return Err(arity(pos, "poly takes a name, an optional ring, (in ...) and an expression"));
    }
    let space = space_clause(env, &items[i])?;
    let p = eval(env, &ring, &space.ctx, &items[i + 1])?;
    env.polys.push((name, p, space));
    Ok(())
}

fn declare_morphism(env: &mut Env, items: &[Sexp], pos: Pos) -> Result<()> {
    let name = name_of(items, pos, "morphism")?;
    let (ring, i) = optional_ring(env, items, 2, pos)?;
    let rest = &items[i..];
    let first = rest.first().ok_or_else(|| arity(pos, "morphism needs a body"))?;
    let vars = |s: &Sexp| -> Result<Vec<String>> {
        s.list().unwrap()[1..]
            .iter()
            .map(|x| x.atom().map(str::to_string).ok_or_else(|| syntax(x.pos(), "expected a variable")))
            .collect()
    };
    let phi = match first.head() {
        Some("frobenius") => ProjMorphism::frobenius(ring, &vars(first)?)?,
        Some("identity") => ProjMorphism::identity(ring, &vars(first)?)?,
        Some("mixed-family") => match ring {
            Ring::LocalizedIntegersAt(p) => mixed_family(p)?,
            other => return Err(Error::WrongFamily(format!("mixed family needs a (Zloc p) ring, not {other}"))),
        },
        Some("in") => {
            let space = space_clause(env, first)?;
            let mut ideal = Vec::new();
            let mut forms = Vec::new();
            for clause in &rest[1..] {
                let items = clause.list().ok_or_else(|| syntax(clause.pos(), "expected (ideal ...) or (forms ...)"))?;
                let target = match clause.head() {
                    Some("ideal") => &mut ideal,
                    Some("forms") => &mut forms,
                    _ => return Err(syntax(clause.pos(), "expected (ideal ...) or (forms ...)")),
                };
                for e in &items[1..] {
                    target.push(eval(env, &ring, &space.ctx, e)?);
                }
            }
            ProjMorphism::new(ring, space.ctx, space.blocks, ideal, forms)?
        }
        _ => return Err(syntax(first.pos(), "expected (in ...), (frobenius ...), (identity ...) or (mixed-family)")),
    };
    env.morphisms.push((name, phi));
    Ok(())
}

fn declare_hyperplane(env: &mut Env, items: &[Sexp], pos: Pos) -> Result<()> {
    let name = name_of(items, pos, "hyperplane")?;
    let (ring, i) = optional_ring(env, items, 2, pos)?;
    if items.len() != i + 1 {
        return Err(arity(pos, "hyperplane takes a name, an optional ring and a coefficient list"));
    }
    let coeffs = items[i].list().ok_or_else(|| syntax(items[i].pos(), "expected a coefficient list"))?;
    let values = coeffs.iter().map(|c| constant(env, &ring, c)).collect::<Result<Vec<_>>>()?;
    env.hyperplanes.push((name, Hyperplane::new(ring, values)?));
    Ok(())
}

/// Evaluate a constant expression in `ring`.
pub fn constant(env: &Env, ring: &Ring, s: &Sexp) -> Result<Elem> {
    let p = eval(env, ring, &VarContext::empty(), s)?;
    Ok(p.constant_coeff())
}

fn number(ring: &Ring, text: &str) -> Option<Result<Elem>> {
    let r = match text.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().ok()?;
            let d: BigInt = d.parse().ok()?;
            if d == BigInt::from(0) {
                return Some(Err(Error::DivisionByNonUnit("0".into())));
            }
            BigRational::new(n, d)
        }
        None => BigRational::from_integer(text.parse().ok()?),
    };
    Some(ring.from_rational(&r))
}

/// A name of the coefficient ring (a parameter, or a variable of a
/// polynomial or quotient base) as an element.
fn coefficient_name(ring: &Ring, name: &str) -> Result<Option<Elem>> {
    match ring {
        Ring::Transc(t) => {
            if t.ctx().index_of(name).is_some() {
                return Ok(Some(Elem::Frac(Box::new(t.param(name)?))));
            }
            Ok(coefficient_name(t.base(), name)?.map(|c| Elem::Frac(Box::new(t.from_base(&c)))))
        }
        Ring::PolyRing(d) => {
            if d.ctx.index_of(name).is_some() {
                return Ok(Some(Elem::Poly(Poly::variable(&d.field, &d.ctx, name)?)));
            }
            Ok(coefficient_name(&d.field, name)?.map(|c| Elem::Poly(Poly::constant(&d.field, &d.ctx, c))))
        }
        Ring::Quotient(q) if q.var() == name => {
            let x = Poly::variable(&q.field, &q.ctx, name)?;
            Ok(Some(Elem::Poly(crate::ring::univariate::rem(&x, &q.modulus))))
        }
        _ => Ok(None),
    }
}

/// Evaluate `s` as a polynomial over `ring` in `ctx`.
pub fn eval(env: &Env, ring: &Ring, ctx: &Arc<VarContext>, s: &Sexp) -> Result<Poly> {
    let p = eval_inner(env, ring, ctx, s)?;
    guard::check(p.total_degree())?;
    Ok(p)
}

fn eval_inner(env: &Env, ring: &Ring, ctx: &Arc<VarContext>, s: &Sexp) -> Result<Poly> {
    match s {
        Sexp::Atom(a, pos) => {
            if let Some(n) = number(ring, a) {
                return Ok(Poly::constant(ring, ctx, n?));
            }
            if ctx.index_of(a).is_some() {
                return Poly::variable(ring, ctx, a);
            }
            if let Some(c) = coefficient_name(ring, a)? {
                return Ok(Poly::constant(ring, ctx, c));
            }
            if let Some((p, _)) = env.poly(a) {
                let p = p.map_coefficients(ring, |c| ring.coerce(p.ring(), c))?;
                return p.reembed(ring, ctx);
            }
            Err(unknown(*pos, a))
        }
        Sexp::List(items, pos) => {
            let head = s.head().ok_or_else(|| syntax(*pos, "expected an operator"))?;
            let args = &items[1..];
            let ev = |x: &Sexp| eval_inner(env, ring, ctx, x);
            match head {
                "+" => args.iter().try_fold(Poly::zero(ring, ctx), |acc, x| Ok(acc.add(&ev(x)?))),
                "*" => args.iter().try_fold(Poly::one(ring, ctx), |acc, x| {
                    let p = acc.mul(&ev(x)?);
                    guard::check(p.total_degree())?;
                    Ok(p)
                }),
                "-" => match args {
                    [] => Err(arity(*pos, "`-` needs arguments")),
                    [x] => Ok(ev(x)?.neg()),
                    [x, rest @ ..] => rest.iter().try_fold(ev(x)?, |acc, y| Ok(acc.sub(&ev(y)?))),
                },
                "^" => {
                    if args.len() != 2 {
                        return Err(arity(*pos, "`^` takes a base and an exponent"));
                    }
                    let base = ev(&args[0])?;
                    let e = parse_u64(&args[1])?;
                    let e = u32::try_from(e).map_err(|_| syntax(args[1].pos(), "exponent too large"))?;
                    guard::check(base.total_degree().saturating_mul(e))?;
                    Ok(base.pow(e))
                }
                "frac" => {
                    if args.len() != 2 {
                        return Err(arity(*pos, "`frac` takes a numerator and a denominator"));
                    }
                    let num = ev(&args[0])?;
                    let den = ev(&args[1])?;
                    if !den.is_constant() || den.is_zero() {
                        return Err(Error::DomainIncompatible(format!("cannot divide by {den}")));
                    }
                    let inv = ring.inv(&den.constant_coeff())?;
                    Ok(num.scale(&inv))
                }
                other => Err(unknown(*pos, other)),
            }
        }
    }
}
