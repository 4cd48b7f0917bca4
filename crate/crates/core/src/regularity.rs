//! Smoothness, regularity and reducedness certificates for members and
//! generic members, finite-field member surveys, and non-regularity
//! witnesses for hyperplane sections of `x0 y0^p + x1 y1^p + x2 y2^p` over
//! `Z_(p)`.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;

use crate::arith;
use crate::bertini::{member_at, Hyperplane, ProjMorphism};
use crate::error::{Error, Result};
use crate::groebner::{charts, proj_is_empty, Ideal};
use crate::poly::{gcd, is_pth_power, substitute, Bindings, Block, Poly, VarContext};
use crate::ring::{
    generates_unit_ideal, pth_root_residue, residue_map, Elem, MaxTag, MaximalIdealDesc, Ring, RingElement,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    SmoothOverField,
    RegularCertified,
    NotRegular,
    NonReduced,
    Reduced,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub enum Evidence {
    /// Charts on which the singular locus was shown empty.
    Charts(Vec<String>),
    /// `root^p` equals the polynomial.
    PthRoot {
        root: Poly,
        p: u64,
    },
    /// A factor of positive geometric degree dividing the polynomial and all
    /// of its partial derivatives.
    RepeatedFactor(Poly),
    /// The polynomial and its partial derivatives are coprime.
    Squarefree,
    Witness(Box<Witness>),
    None,
}

#[derive(Clone, Debug)]
pub struct RegularityReport {
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub notes: Vec<String>,
}

impl RegularityReport {
    fn new(verdict: Verdict, evidence: Evidence) -> Self {
        RegularityReport { verdict, evidence, notes: Vec::new() }
    }

    fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }
}

fn determinant(m: &[Vec<Poly>]) -> Poly {
    match m.len() {
        1 => m[0][0].clone(),
        2 => m[0][0].mul(&m[1][1]).sub(&m[0][1].mul(&m[1][0])),
        n => {
            let mut acc = Poly::zero(m[0][0].ring(), m[0][0].ctx());
            for j in 0..n {
                let minor: Vec<Vec<Poly>> = m[1..]
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, p)| p.clone()).collect())
                    .collect();
                let term = m[0][j].mul(&determinant(&minor));
                acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
            }
            acc
        }
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn chart_labels(ctx: &VarContext, blocks: &[Vec<String>]) -> Result<Vec<String>> {
    let idx: Vec<Vec<usize>> =
        blocks.iter().map(|b| b.iter().map(|v| ctx.require(v)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
    Ok(charts(&idx)
        .into_iter()
        .map(|c| c.iter().map(|&i| format!("{}=1", ctx.name(i))).collect::<Vec<_>>().join(","))
        .collect())
}

/// Jacobian criterion for a complete intersection in a product of
/// projective spaces over a field: `I` plus the maximal minors of the
/// Jacobian has empty projective zero locus. `codim` defaults to 1 for a
/// single generator and must equal the number of generators.
pub fn jacobian_smooth(ideal: &Ideal, blocks: &[Vec<String>], codim: Option<usize>) -> Result<bool> {
    let gens = ideal.generators();
    if gens.is_empty() {
        return Ok(true);
    }
    let c = codim.unwrap_or(gens.len());
    if c != gens.len() {
        return Err(Error::UnsupportedCodimension(format!(
            "{} generators for codimension {c}; only complete intersections are supported",
            gens.len()
        )));
    }
    if c > 3 {
        return Err(Error::UnsupportedCodimension(format!("codimension {c} exceeds 3")));
    }
    let ctx = ideal.ctx();
    let vars: Vec<usize> = blocks.iter().flatten().map(|v| ctx.require(v)).collect::<Result<_>>()?;
    let jac: Vec<Vec<Poly>> = gens.iter().map(|g| vars.iter().map(|&v| g.derivative(v)).collect()).collect();
    let mut sing = gens.to_vec();
    for cols in subsets(vars.len(), c) {
        let m: Vec<Vec<Poly>> = jac.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
        let d = determinant(&m);
        if !d.is_zero() {
            sing.push(d);
        }
    }
    proj_is_empty(&ideal.extend(sing)?, blocks)
}

/// Certificate that `X^gen` is regular: `X` regular implies `X^univ`
/// regular (a `P^{n-1}`-bundle over `X`), which implies `X^gen` regular (a
/// localization of a polynomial ring over charts of `X`).
pub fn certify_generic_regular(phi: &ProjMorphism) -> RegularityReport {
    let route =
        "X regular => X^univ regular (P^{n-1}-bundle) => X^gen regular (localization of a polynomial extension)";
    let base = phi.base();
    let inconclusive = |why: String| RegularityReport::new(Verdict::Inconclusive, Evidence::None).note(why);
    if base.is_field() {
        let ideal = match Ideal::new(base, phi.ctx(), phi.ideal().to_vec()) {
            Ok(i) => i,
            Err(e) => return inconclusive(e.to_string()),
        };
        return match jacobian_smooth(&ideal, phi.blocks(), None) {
            Ok(true) => {
                let charts = chart_labels(phi.ctx(), phi.blocks()).unwrap_or_default();
                RegularityReport::new(Verdict::RegularCertified, Evidence::Charts(charts))
                    .note(format!("X is smooth over {base}"))
                    .note(route)
            }
            Ok(false) => inconclusive("X is not smooth; no claim".into()),
            Err(e) => inconclusive(e.to_string()),
        };
    }
    if let Ring::LocalizedIntegersAt(_) = base {
        let opts = FiberOptions { proper: true, primes: Vec::new() };
        return match fiberwise_smooth(phi.ideal(), phi.ctx(), phi.blocks(), &opts) {
            Ok(r) if r.verdict == Verdict::RegularCertified => {
                let mut r = r.note(route);
                r.notes.insert(0, "X is regular by its fibres".into());
                r
            }
            Ok(r) => {
                let mut out = inconclusive("X is not certified regular".into());
                out.notes.extend(r.notes);
                out
            }
            Err(e) => inconclusive(e.to_string()),
        };
    }
    inconclusive(format!("no certification route over {base}"))
}

/// Options for [`fiberwise_smooth`].
#[derive(Clone, Debug, Default)]
pub struct FiberOptions {
    /// Caller's assertion that the ideal defines a scheme proper over the base.
    pub proper: bool,
    /// Primes whose fibres are checked over `Z`.
    pub primes: Vec<u64>,
}

fn to_prime_field(p: u64, f: &Poly) -> Result<Poly> {
    let fp = Ring::PrimeField(p);
    let m = MaximalIdealDesc::new(f.ring().clone(), MaxTag::Prime(p))?;
    f.map_coefficients(&fp, |c| Ok(residue_map(&RingElement::new(f.ring().clone(), c.clone())?, &m)?.value().clone()))
}

fn fiber_smooth(ring: &Ring, ctx: &Arc<VarContext>, gens: Vec<Poly>, blocks: &[Vec<String>]) -> Result<bool> {
    let codim = gens.iter().filter(|g| !g.is_zero()).count();
    if gens.iter().any(|g| g.is_zero()) {
        // a generator vanishing on the fibre: the fibre is not a complete
        // intersection of the expected codimension
        return Ok(false);
    }
    jacobian_smooth(&Ideal::new(ring, ctx, gens)?, blocks, Some(codim))
}

/// Smoothness of the fibres of `V(gens)` over `Z_(p)` (special and generic
/// fibre) or `Z` (listed primes and the generic fibre). Over `Z_(p)` with a
/// properness assertion this certifies regularity; over `Z` it never does.
/// Over a field it is the Jacobian criterion.
pub fn fiberwise_smooth(
    gens: &[Poly],
    ctx: &Arc<VarContext>,
    blocks: &[Vec<String>],
    opts: &FiberOptions,
) -> Result<RegularityReport> {
    let ring = match gens.first() {
        Some(g) => g.ring().clone(),
        None => return Ok(RegularityReport::new(Verdict::RegularCertified, Evidence::None).note("no equations")),
    };
    if ring.is_field() {
        let ideal = Ideal::new(&ring, ctx, gens.to_vec())?;
        return Ok(if jacobian_smooth(&ideal, blocks, None)? {
            RegularityReport::new(Verdict::SmoothOverField, Evidence::Charts(chart_labels(ctx, blocks)?))
        } else {
            RegularityReport::new(Verdict::Inconclusive, Evidence::None).note("singular over the algebraic closure")
        });
    }
    let primes = match &ring {
        Ring::LocalizedIntegersAt(p) => {
            if !opts.proper {
                return Err(Error::NonProperWithoutFlag);
            }
            vec![*p]
        }
        Ring::Integers => {
            for &p in &opts.primes {
                if !arith::is_prime(p) {
                    return Err(Error::BadParameters(format!("{p} is not prime")));
                }
            }
            opts.primes.clone()
        }
        other => return Err(Error::UnsupportedBase(other.to_string())),
    };
    let mut smooth = true;
    let mut notes = Vec::new();
    for &p in &primes {
        let fp = Ring::PrimeField(p);
        let special = gens.iter().map(|g| to_prime_field(p, g)).collect::<Result<Vec<_>>>()?;
        let ok = fiber_smooth(&fp, ctx, special, blocks)?;
        notes.push(format!("fibre over F_{p}: {}", if ok { "smooth" } else { "not smooth" }));
        smooth &= ok;
    }
    let q = Ring::Rationals;
    let generic = gens.iter().map(|g| g.map_coefficients(&q, |c| q.coerce(&ring, c))).collect::<Result<Vec<_>>>()?;
    let ok = fiber_smooth(&q, ctx, generic, blocks)?;
    notes.push(format!("fibre over Q: {}", if ok { "smooth" } else { "not smooth" }));
    smooth &= ok;
    let certified = smooth && matches!(ring, Ring::LocalizedIntegersAt(_));
    let mut report = if certified {
        RegularityReport::new(Verdict::RegularCertified, Evidence::Charts(chart_labels(ctx, blocks)?))
    } else {
        RegularityReport::new(Verdict::Inconclusive, Evidence::None)
    };
    if smooth && !certified {
        notes.push("unchecked primes remain".into());
    }
    report.notes = notes;
    Ok(report)
}

/// Clear denominators of a polynomial over `k(t)` and return it as a
/// polynomial over `k` in the geometric and parameter variables together.
fn clear_parameters(f: &Poly) -> Result<Poly> {
    let t = f.ring().transc().expect("transcendental coefficients");
    let mut entries = f.ctx().entries();
    entries.extend(t.ctx().names().iter().map(|n| (n.clone(), Block::Parameter)));
    let ctx = VarContext::new(entries)?;
    let mut dens: Vec<Poly> = Vec::new();
    for (_, c) in f.terms() {
        let d = &c.as_frac().den;
        if !dens.contains(d) {
            dens.push(d.clone());
        }
    }
    let k = t.base();
    let mut acc = Poly::zero(k, &ctx);
    for (m, c) in f.terms() {
        let x = c.as_frac();
        let mut coeff = x.num.clone();
        for d in dens.iter().filter(|d| *d != &x.den) {
            coeff = coeff.mul(d);
        }
        let mono = Poly::monomial(k, f.ctx(), m.clone(), k.one()).reembed(k, &ctx)?;
        acc = acc.add(&coeff.reembed(k, &ctx)?.mul(&mono));
    }
    Ok(acc)
}

/// Reducedness of the hypersurface `f = 0` over a field.
pub fn reducedness_check(f: &Poly) -> Result<RegularityReport> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let ring = f.ring();
    if !ring.is_field() {
        return Ok(RegularityReport::new(Verdict::Inconclusive, Evidence::None).note(format!("{ring} is not a field")));
    }
    let p = ring.characteristic();
    if p > 0 && !f.is_constant() {
        if let Some(root) = is_pth_power(f)? {
            if &root.pow(p as u32) == f {
                return Ok(RegularityReport::new(Verdict::NonReduced, Evidence::PthRoot { root, p }));
            }
        }
    }
    // over k(t) with k perfect, differentiate in the parameters as well
    let (big, geometric) = match ring {
        Ring::Transc(t) if t.base().is_perfect_field() => (clear_parameters(f)?, f.ctx().len()),
        _ if ring.is_perfect_field() => (f.clone(), f.ctx().len()),
        _ => {
            return Ok(RegularityReport::new(Verdict::Inconclusive, Evidence::None)
                .note(format!("{ring} is neither perfect nor a rational function field over one")))
        }
    };
    let mut h = big.clone();
    for v in 0..big.ctx().len() {
        h = gcd::gcd(&h, &big.derivative(v));
        if h.is_constant() {
            break;
        }
    }
    if (0..geometric).any(|v| h.degree_in(v) > 0) {
        return Ok(RegularityReport::new(Verdict::NonReduced, Evidence::RepeatedFactor(h)));
    }
    Ok(RegularityReport::new(Verdict::Reduced, Evidence::Squarefree))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MemberVerdict {
    Smooth,
    SingularReduced,
    NonReduced,
    /// Singular member of a non-hypersurface `X`; reducedness not decided.
    Singular,
}

impl fmt::Display for MemberVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct SurveyRow {
    pub coeffs: Vec<Elem>,
    pub verdict: MemberVerdict,
    pub evidence: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SurveyCounts {
    pub smooth: usize,
    pub singular_reduced: usize,
    pub non_reduced: usize,
    pub singular: usize,
}

#[derive(Clone, Debug)]
pub struct SurveyTable {
    pub field_size: u64,
    pub rows: Vec<SurveyRow>,
    pub counts: SurveyCounts,
}

pub const SURVEY_LIMIT: u128 = 100_000;

fn projective_points(field: &Ring, n: usize) -> Vec<Vec<Elem>> {
    let elems = field.elements().expect("finite field");
    let mut out = Vec::new();
    for lead in 0..=n {
        let mut partial: Vec<Vec<Elem>> = vec![Vec::new()];
        for _ in lead + 1..=n {
            partial = partial
                .into_iter()
                .flat_map(|v| {
                    elems.iter().map(move |e| {
                        let mut v = v.clone();
                        v.push(e.clone());
                        v
                    })
                })
                .collect();
        }
        for tail in partial {
            let mut a = vec![field.zero(); lead];
            a.push(field.one());
            a.extend(tail);
            out.push(a);
        }
    }
    out
}

fn classify(phi: &ProjMorphism, coeffs: Vec<Elem>) -> Result<SurveyRow> {
    let h = Hyperplane::new(phi.base().clone(), coeffs.clone())?;
    let member = member_at(phi, &h)?;
    let eq = member.last().expect("member equation").clone();
    let digest = |p: &Poly| p.to_string();
    if eq.is_zero() {
        return Ok(SurveyRow { coeffs, verdict: MemberVerdict::Singular, evidence: "member is all of X".into() });
    }
    let hypersurface = phi.ideal().is_empty();
    if hypersurface {
        let r = reducedness_check(&eq)?;
        if r.verdict == Verdict::NonReduced {
            let evidence = match &r.evidence {
                Evidence::PthRoot { root, p } => format!("(^ {} {p})", digest(root)),
                Evidence::RepeatedFactor(g) => format!("repeated {}", digest(g)),
                _ => String::new(),
            };
            return Ok(SurveyRow { coeffs, verdict: MemberVerdict::NonReduced, evidence });
        }
    }
    let ideal = Ideal::new(phi.base(), phi.ctx(), member)?;
    let smooth = jacobian_smooth(&ideal, phi.blocks(), None)?;
    let verdict = match (smooth, hypersurface) {
        (true, _) => MemberVerdict::Smooth,
        (false, true) => MemberVerdict::SingularReduced,
        (false, false) => MemberVerdict::Singular,
    };
    Ok(SurveyRow { coeffs, verdict, evidence: digest(&eq) })
}

/// Classify the member of every hyperplane `[a_0 : ... : a_n]` over `F_q`.
pub fn member_survey(phi: &ProjMorphism, q: u64) -> Result<SurveyTable> {
    let field = phi.base();
    let size = field.finite_field_size().ok_or_else(|| Error::UnsupportedBase(field.to_string()))?;
    if size != q {
        return Err(Error::BadParameters(format!("{field} has {size} elements, not {q}")));
    }
    let n = phi.target_dim() as u32;
    let count: u128 = (0..=n).map(|i| (q as u128).pow(i)).sum();
    if count > SURVEY_LIMIT {
        return Err(Error::EnumerationTooLarge(count));
    }
    let points = projective_points(field, n as usize);
    let rows = points.into_par_iter().map(|a| classify(phi, a)).collect::<Result<Vec<_>>>()?;
    let mut counts = SurveyCounts::default();
    for r in &rows {
        match r.verdict {
            MemberVerdict::Smooth => counts.smooth += 1,
            MemberVerdict::SingularReduced => counts.singular_reduced += 1,
            MemberVerdict::NonReduced => counts.non_reduced += 1,
            MemberVerdict::Singular => counts.singular += 1,
        }
    }
    Ok(SurveyTable { field_size: q, rows, counts })
}

/// A point of `Spec Z_(p)[vars]` over `F_p`, given by `p` and the shifts
/// `v - c_v` for every variable.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalParams {
    pub prime: u64,
    pub point: Vec<(String, Elem)>,
}

impl LocalParams {
    /// Checks that the parameters generate a maximal ideal with residue
    /// field `F_p`: every variable of `ctx` is shifted by an element of
    /// `Z_(p)`.
    pub fn check_maximal(&self, ctx: &VarContext) -> Result<()> {
        if !arith::is_prime(self.prime) {
            return Err(Error::BadParameters(format!("{} is not prime", self.prime)));
        }
        let zp = Ring::LocalizedIntegersAt(self.prime);
        for (v, c) in &self.point {
            if ctx.index_of(v).is_none() {
                return Err(Error::BadParameters(format!("unknown variable `{v}`")));
            }
            zp.check(c).map_err(|_| Error::BadParameters(format!("shift of `{v}` is not in {zp}")))?;
        }
        for v in ctx.names() {
            if !self.point.iter().any(|(w, _)| w == v) {
                return Err(Error::BadParameters(format!("variable `{v}` has no local parameter")));
            }
        }
        Ok(())
    }
}

/// Whether `f` lies in the square of the maximal ideal `(p, v - c_v, ...)`:
/// after shifting to the point, each term `c m` has `v_p(c) + deg m >= 2`.
pub fn local_order2_vanishes(f: &Poly, params: &LocalParams) -> Result<bool> {
    let zp = Ring::LocalizedIntegersAt(params.prime);
    let f = match f.ring() {
        r if r == &zp => f.clone(),
        Ring::Integers => f.map_coefficients(&zp, |c| zp.coerce(&Ring::Integers, c))?,
        other => return Err(Error::BadParameters(format!("{other} is not {zp}"))),
    };
    params.check_maximal(f.ctx())?;
    let ctx = f.ctx();
    let mut bindings = Bindings::new();
    for (v, c) in &params.point {
        let shifted = Poly::variable(&zp, ctx, v)?.add(&Poly::constant(&zp, ctx, c.clone()));
        bindings.insert(v.clone(), shifted);
    }
    let g = substitute(&f, &zp, ctx, &bindings)?;
    Ok(g.terms().iter().all(|(m, c)| zp.valuation(c).expect("nonzero coefficient") + m.degree() >= 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WitnessCase {
    /// `v((-a'_1)^p + a_1) >= 2`: witness `(p, x_1, y'_1, y'_2)`.
    First,
    /// `v((-a'_1)^p + a_1) = 1`: witness `(p, a''_1 x_1 + a''_2, y'_1, y'_2)`.
    Second,
}

/// A maximal ideal at which the affine equation of a hyperplane section lies
/// in the square of the maximal ideal.
#[derive(Clone, Debug)]
pub struct Witness {
    pub prime: u64,
    pub case: WitnessCase,
    /// Dehomogenized equation of the section on the chart `chart`.
    pub equation: Poly,
    pub chart: Vec<String>,
    pub generators: Vec<Poly>,
    pub params: LocalParams,
    /// `v_p((-a'_1)^p + a_1)` for the branching coefficient.
    pub valuation: u32,
}

impl Witness {
    /// Re-checks the order-two vanishing and maximality.
    pub fn verify(&self) -> Result<bool> {
        local_order2_vanishes(&self.equation, &self.params)
    }

    pub fn describe(&self) -> String {
        let gens: Vec<String> =
            std::iter::once(self.prime.to_string()).chain(self.generators.iter().map(|g| g.to_string())).collect();
        format!("({})", gens.join(", "))
    }
}

/// The family `x0 y0^p + x1 y1^p + x2 y2^p` in `P^2 x P^2` over `Z_(p)`,
/// mapped to `P^2` by the first projection.
pub fn mixed_family(p: u64) -> Result<ProjMorphism> {
    let zp = Ring::localized_at(p)?;
    let xs = ["x0", "x1", "x2"];
    let ys = ["y0", "y1", "y2"];
    let ctx = VarContext::geometric(&[xs, ys].concat());
    let v = |n: &str| Poly::variable(&zp, &ctx, n).expect("declared");
    let mut f = Poly::zero(&zp, &ctx);
    for (x, y) in xs.iter().zip(ys) {
        f = f.add(&v(x).mul(&v(y).pow(p as u32)));
    }
    let forms = xs.iter().map(|x| v(x)).collect();
    let blocks = vec![xs.iter().map(|s| s.to_string()).collect(), ys.iter().map(|s| s.to_string()).collect()];
    ProjMorphism::new(zp, ctx, blocks, vec![f], forms)
}

fn recognize_family(phi: &ProjMorphism) -> Result<(u64, Vec<String>, Vec<String>)> {
    let wrong = |why: &str| Error::WrongFamily(why.to_string());
    let p = match phi.base() {
        Ring::LocalizedIntegersAt(p) => *p,
        other => return Err(Error::WrongFamily(format!("base {other} is not Z_(p)"))),
    };
    let blocks = phi.blocks();
    if blocks.len() != 2 || blocks.iter().any(|b| b.len() != 3) || phi.ctx().len() != 6 {
        return Err(wrong("expected P^2 x P^2"));
    }
    let (xs, ys) = (blocks[0].clone(), blocks[1].clone());
    let zp = phi.base();
    let ctx = phi.ctx();
    let v = |n: &str| Poly::variable(zp, ctx, n);
    let mut f = Poly::zero(zp, ctx);
    for (x, y) in xs.iter().zip(&ys) {
        f = f.add(&v(x)?.mul(&v(y)?.pow(p as u32)));
    }
    if phi.ideal() != [f] {
        return Err(wrong("X is not x0 y0^p + x1 y1^p + x2 y2^p"));
    }
    for (form, x) in phi.forms().iter().zip(&xs) {
        if form != &v(x)? {
            return Err(wrong("morphism is not the first projection"));
        }
    }
    Ok((p, xs, ys))
}

fn rat(r: &BigRational) -> Elem {
    Elem::Rat(r.clone())
}

/// Non-regularity witness for `phi^{-1}(H)` on the family of
/// [`mixed_family`], following the valuation case split on
/// `(-a'_1)^p + a_1`.
pub fn mixedchar_witness(phi: &ProjMorphism, h: &Hyperplane) -> Result<RegularityReport> {
    let (p, xs, ys) = recognize_family(phi)?;
    let zp = phi.base().clone();
    if h.ring() != &zp || h.coeffs().len() != 3 {
        return Err(Error::WrongFamily(format!("hyperplane must have 3 coefficients in {zp}")));
    }
    let a = h.coeffs();
    if !generates_unit_ideal(&zp, a)? {
        return Err(Error::NonFlatHyperplane);
    }
    // normalize a unit coefficient to -1
    let c = (0..3).find(|&k| zp.is_unit(&a[k])).expect("flat hyperplane has a unit coefficient");
    let scale = zp.neg(&zp.inv(&a[c])?);
    let b: Vec<BigRational> = (0..3).map(|k| zp.mul(&a[k], &scale).as_rat().clone()).collect();
    let m = MaximalIdealDesc::new(zp.clone(), MaxTag::Prime(p))?;
    let pb = BigInt::from(p);
    let mut lift = [BigInt::from(0), BigInt::from(0), BigInt::from(0)];
    let mut e: Vec<BigRational> = vec![BigRational::from_integer(0.into()); 3];
    let mut val = [u32::MAX; 3];
    for k in (0..3).filter(|&k| k != c) {
        // (-a')^p = -b in the residue field
        let neg_b = RingElement::new(zp.clone(), rat(&-b[k].clone()))?;
        let root = pth_root_residue(&residue_map(&neg_b, &m)?)?;
        let r = BigInt::from(root.value().as_res());
        lift[k] = (&pb - r) % &pb;
        e[k] = BigRational::from_integer((-lift[k].clone()).pow(p as u32)) + &b[k];
        val[k] = zp.valuation(&rat(&e[k])).unwrap_or(u32::MAX);
    }
    let others: Vec<usize> = (0..3).filter(|&k| k != c).collect();
    let (i, j) = if val[others[1]] >= val[others[0]] { (others[0], others[1]) } else { (others[1], others[0]) };

    // the section on the chart x_j = 1, y_c = 1
    let small = VarContext::geometric(&[xs[i].as_str(), ys[i].as_str(), ys[j].as_str()]);
    let var = |n: &str| Poly::variable(&zp, &small, n).expect("declared");
    let mut bindings = Bindings::new();
    let xc = var(&xs[i]).scale(&rat(&b[i])).add(&Poly::constant(&zp, &small, rat(&b[j])));
    bindings.insert(xs[c].clone(), xc);
    bindings.insert(xs[j].clone(), Poly::one(&zp, &small));
    bindings.insert(ys[c].clone(), Poly::one(&zp, &small));
    let equation = substitute(&phi.ideal()[0], &zp, &small, &bindings)?;

    let shift = |k: usize| -> Elem { rat(&BigRational::from_integer(-lift[k].clone())) };
    let y_gen =
        |k: usize| var(&ys[k]).add(&Poly::constant(&zp, &small, rat(&BigRational::from_integer(lift[k].clone()))));
    let (case, x_shift, x_gen) = match val[i] {
        v if v >= 2 => (WitnessCase::First, zp.zero(), var(&xs[i])),
        1 => {
            let pr = BigRational::from_integer(pb.clone());
            let a1 = &e[i] / &pr;
            let a2 = &e[j] / &pr;
            let gen = var(&xs[i]).scale(&rat(&a1)).add(&Poly::constant(&zp, &small, rat(&a2)));
            (WitnessCase::Second, rat(&(-a2 / a1)), gen)
        }
        _ => {
            return Ok(RegularityReport::new(Verdict::Inconclusive, Evidence::None)
                .note("residue lift failed to raise the valuation"))
        }
    };
    let params = LocalParams {
        prime: p,
        point: vec![(xs[i].clone(), x_shift), (ys[i].clone(), shift(i)), (ys[j].clone(), shift(j))],
    };
    let witness = Witness {
        prime: p,
        case,
        equation,
        chart: vec![format!("{}=1", xs[j]), format!("{}=1", ys[c])],
        generators: vec![x_gen, y_gen(i), y_gen(j)],
        params,
        valuation: val[i],
    };
    if !witness.verify()? {
        return Ok(RegularityReport::new(Verdict::Inconclusive, Evidence::None)
            .note(format!("candidate {} failed re-verification", witness.describe())));
    }
    Ok(RegularityReport::new(Verdict::NotRegular, Evidence::Witness(Box::new(witness))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bertini::generic_member;

    fn frob(p: u64, n: usize) -> ProjMorphism {
        let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
        ProjMorphism::frobenius(Ring::PrimeField(p), &names).unwrap()
    }

    fn hypersurface(
        ring: &Ring,
        names: &[&str],
        build: impl Fn(&dyn Fn(&str) -> Poly) -> Poly,
    ) -> (Ideal, Vec<Vec<String>>) {
        let ctx = VarContext::geometric(names);
        let v = |n: &str| Poly::variable(ring, &ctx, n).unwrap();
        let f = build(&v);
        let blocks = vec![names.iter().map(|s| s.to_string()).collect()];
        (Ideal::new(ring, &ctx, vec![f]).unwrap(), blocks)
    }

    #[test]
    fn jacobian_examples() {
        let (cusp, blocks) =
            hypersurface(&Ring::Rationals, &["x0", "x1", "x2"], |v| v("x0").pow(2).mul(&v("x2")).sub(&v("x1").pow(3)));
        assert!(!jacobian_smooth(&cusp, &blocks, None).unwrap());
        let (conic, blocks) =
            hypersurface(&Ring::Rationals, &["x0", "x1", "x2"], |v| v("x0").mul(&v("x1")).sub(&v("x2").pow(2)));
        assert!(jacobian_smooth(&conic, &blocks, None).unwrap());

        let g = generic_member(&frob(2, 1), 0).unwrap();
        let ideal = Ideal::new(g.ring(), g.ctx(), vec![g.equation().clone()]).unwrap();
        assert!(!jacobian_smooth(&ideal, g.blocks(), None).unwrap());

        let u = crate::bertini::universal_member(&frob(2, 2)).unwrap();
        let ideal = Ideal::new(&Ring::PrimeField(2), &u.ctx, u.ideal.clone()).unwrap();
        assert!(jacobian_smooth(&ideal, &u.blocks, None).unwrap());
    }

    #[test]
    fn complete_intersection_codimension() {
        let f3 = Ring::PrimeField(3);
        let ctx = VarContext::geometric(&["x0", "x1", "x2", "x3"]);
        let v = |i| Poly::var_index(&f3, &ctx, i);
        let blocks = vec![ctx.names().to_vec()];
        // twisted-cubic-free line: x0 = x1 = 0 is smooth
        let line = Ideal::new(&f3, &ctx, vec![v(0), v(1)]).unwrap();
        assert!(jacobian_smooth(&line, &blocks, Some(2)).unwrap());
        assert!(matches!(jacobian_smooth(&line, &blocks, Some(1)), Err(Error::UnsupportedCodimension(_))));
        // two quadric cones sharing a vertex
        let cones =
            Ideal::new(&f3, &ctx, vec![v(0).mul(&v(1)).sub(&v(2).pow(2)), v(0).mul(&v(2)).sub(&v(1).pow(2))]).unwrap();
        assert!(!jacobian_smooth(&cones, &blocks, Some(2)).unwrap());
        let bad = Ideal::new(&f3, &ctx, vec![v(0).add(&v(1).pow(2))]).unwrap();
        assert!(matches!(jacobian_smooth(&bad, &blocks, None), Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn reducedness_examples() {
        let f5 = Ring::PrimeField(5);
        let ctx = VarContext::geometric(&["x0", "x1", "x2"]);
        let v = |i| Poly::var_index(&f5, &ctx, i);
        let f = v(0).pow(5).scale(&Elem::Res(2)).add(&v(1).pow(5).scale(&Elem::Res(3))).add(&v(2).pow(5));
        let r = reducedness_check(&f).unwrap();
        assert_eq!(r.verdict, Verdict::NonReduced);
        match r.evidence {
            Evidence::PthRoot { root, p } => {
                assert_eq!(root.to_string(), "(+ (* 2 x0) (* 3 x1) x2)");
                assert_eq!(root.pow(p as u32), f);
            }
            other => panic!("unexpected evidence {other:?}"),
        }

        let g = generic_member(&frob(2, 2), 0).unwrap();
        assert_eq!(reducedness_check(g.equation()).unwrap().verdict, Verdict::Reduced);

        let q = Ring::Rationals;
        let ctx = VarContext::geometric(&["x0", "x1"]);
        let x0 = Poly::var_index(&q, &ctx, 0);
        let x1 = Poly::var_index(&q, &ctx, 1);
        assert_eq!(reducedness_check(&x0.mul(&x1)).unwrap().verdict, Verdict::Reduced);
        let sq = x0.add(&x1).pow(2).mul(&x1);
        let r = reducedness_check(&sq).unwrap();
        assert_eq!(r.verdict, Verdict::NonReduced);
        assert!(matches!(r.evidence, Evidence::RepeatedFactor(ref h) if h.to_string() == "(+ x0 x1)"));
        assert_eq!(reducedness_check(&Poly::zero(&q, &ctx)).unwrap_err(), Error::ZeroPolynomial);
    }

    #[test]
    fn repeated_factor_over_rational_function_field() {
        let k = Ring::transcendental(Ring::PrimeField(3), &["t"]).unwrap();
        let ctx = VarContext::geometric(&["x0", "x1"]);
        let t = Poly::constant(&k, &ctx, Elem::Frac(Box::new(k.transc().unwrap().param("t").unwrap())));
        let x0 = Poly::var_index(&k, &ctx, 0);
        let x1 = Poly::var_index(&k, &ctx, 1);
        // (x0 + t x1)^2 x1 is not a cube, but it is not reduced
        let f = x0.add(&t.mul(&x1)).pow(2).mul(&x1);
        assert_eq!(reducedness_check(&f).unwrap().verdict, Verdict::NonReduced);
        // x0^3 + t x1^3 is irreducible and reduced
        let f = x0.pow(3).add(&t.mul(&x1.pow(3)));
        assert_eq!(reducedness_check(&f).unwrap().verdict, Verdict::Reduced);
    }

    #[test]
    fn surveys() {
        let t = member_survey(&frob(2, 2), 2).unwrap();
        assert_eq!(t.rows.len(), 7);
        assert_eq!(t.counts.non_reduced, 7);
        let id = ProjMorphism::identity(Ring::PrimeField(3), &["x0", "x1", "x2"]).unwrap();
        let t = member_survey(&id, 3).unwrap();
        assert_eq!((t.rows.len(), t.counts.smooth), (13, 13));
        let conics = {
            let f2 = Ring::PrimeField(2);
            let ctx = VarContext::geometric(&["x0", "x1"]);
            let v = |i| Poly::var_index(&f2, &ctx, i);
            let forms = vec![v(0).pow(2), v(0).mul(&v(1)), v(1).pow(2)];
            ProjMorphism::new(f2, ctx.clone(), vec![ctx.names().to_vec()], vec![], forms).unwrap()
        };
        let t = member_survey(&conics, 2).unwrap();
        assert_eq!(t.rows.len(), 7);
        assert!(t.counts.smooth >= 1);
        assert_eq!(t.counts.smooth + t.counts.singular_reduced + t.counts.non_reduced, 7);
        assert!(matches!(member_survey(&frob(2, 2), 4), Err(Error::BadParameters(_))));
        let big = ProjMorphism::identity(Ring::PrimeField(101), &["a", "b", "c", "d"]).unwrap();
        assert!(matches!(member_survey(&big, 101), Err(Error::EnumerationTooLarge(_))));
    }

    #[test]
    fn generic_member_is_certified_regular() {
        let r = certify_generic_regular(&frob(2, 2));
        assert_eq!(r.verdict, Verdict::RegularCertified);
        let (cusp, _) =
            hypersurface(&Ring::Rationals, &["x0", "x1", "x2"], |v| v("x0").pow(2).mul(&v("x2")).sub(&v("x1").pow(3)));
        let ctx = cusp.ctx().clone();
        let forms = (0..3).map(|i| Poly::var_index(&Ring::Rationals, &ctx, i)).collect();
        let phi = ProjMorphism::new(
            Ring::Rationals,
            ctx.clone(),
            vec![ctx.names().to_vec()],
            cusp.generators().to_vec(),
            forms,
        )
        .unwrap();
        assert_eq!(certify_generic_regular(&phi).verdict, Verdict::Inconclusive);
        for p in [2, 3] {
            assert_eq!(certify_generic_regular(&mixed_family(p).unwrap()).verdict, Verdict::RegularCertified);
        }
    }

    #[test]
    fn fiberwise_examples() {
        let phi = mixed_family(2).unwrap();
        let opts = FiberOptions { proper: true, primes: vec![] };
        let r = fiberwise_smooth(phi.ideal(), phi.ctx(), phi.blocks(), &opts).unwrap();
        assert_eq!(r.verdict, Verdict::RegularCertified);
        let no_flag = FiberOptions::default();
        assert_eq!(
            fiberwise_smooth(phi.ideal(), phi.ctx(), phi.blocks(), &no_flag).unwrap_err(),
            Error::NonProperWithoutFlag
        );

        let z2 = Ring::localized_at(2).unwrap();
        let ctx = VarContext::geometric(&["x0", "x1", "x2"]);
        let v = |i| Poly::var_index(&z2, &ctx, i);
        let f = v(0).pow(2).add(&v(1).mul(&v(2)).scale(&z2.from_int(4)));
        let blocks = vec![ctx.names().to_vec()];
        let r = fiberwise_smooth(&[f], &ctx, &blocks, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert!(r.notes[0].contains("not smooth"));

        let z = Ring::Integers;
        let vz = |i| Poly::var_index(&z, &ctx, i);
        let conic = vz(0).mul(&vz(1)).sub(&vz(2).pow(2));
        let opts = FiberOptions { proper: true, primes: vec![2, 3] };
        let r = fiberwise_smooth(&[conic], &ctx, &blocks, &opts).unwrap();
        assert_eq!(r.verdict, Verdict::Inconclusive);
        assert_eq!(r.notes.len(), 4);
    }

    #[test]
    fn local_order_two() {
        let z2 = Ring::localized_at(2).unwrap();
        let ctx = VarContext::geometric(&["x1", "y1", "y2"]);
        let v = |n| Poly::variable(&z2, &ctx, n).unwrap();
        let one = Poly::one(&z2, &ctx);
        let f = v("x1")
            .mul(&v("y1").add(&one).pow(2))
            .sub(&v("x1").mul(&v("y1")).scale(&z2.from_int(2)))
            .add(&v("y2").pow(2));
        let at = |x: i64, y1: i64, y2: i64| LocalParams {
            prime: 2,
            point: vec![("x1".into(), z2.from_int(x)), ("y1".into(), z2.from_int(y1)), ("y2".into(), z2.from_int(y2))],
        };
        // the point x1 = 0, y1 = -1, y2 = 0
        assert!(local_order2_vanishes(&f, &at(0, -1, 0)).unwrap());
        assert!(!local_order2_vanishes(&v("x1"), &at(0, -1, 0)).unwrap());
        assert!(local_order2_vanishes(&Poly::from_int(&z2, &ctx, 4), &at(0, 0, 0)).unwrap());
        assert!(!local_order2_vanishes(&Poly::from_int(&z2, &ctx, 2), &at(0, 0, 0)).unwrap());
        let partial = LocalParams { prime: 2, point: vec![("x1".into(), z2.zero())] };
        assert!(matches!(local_order2_vanishes(&f, &partial), Err(Error::BadParameters(_))));
    }

    fn witness_of(r: &RegularityReport) -> &Witness {
        match &r.evidence {
            Evidence::Witness(w) => w,
            other => panic!("no witness: {other:?} {:?}", r.notes),
        }
    }

    #[test]
    fn mixed_witness_examples() {
        let phi = mixed_family(2).unwrap();
        let z2 = phi.base().clone();
        let r = mixedchar_witness(&phi, &Hyperplane::from_ints(z2.clone(), &[-1, 1, 0]).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::NotRegular);
        let w = witness_of(&r);
        assert_eq!(w.case, WitnessCase::Second);
        assert_eq!(w.describe(), "(2, x1, (+ y1 1), y2)");
        assert_eq!(w.equation.to_string(), "(+ (* x1 (^ y1 2)) (^ y2 2) x1)");

        let r = mixedchar_witness(&phi, &Hyperplane::from_ints(z2.clone(), &[-1, 3, 0]).unwrap()).unwrap();
        let w = witness_of(&r);
        assert_eq!(w.case, WitnessCase::First);
        assert!(w.valuation >= 2);

        let phi3 = mixed_family(3).unwrap();
        let z3 = phi3.base().clone();
        let r = mixedchar_witness(&phi3, &Hyperplane::from_ints(z3, &[2, -1, 1]).unwrap()).unwrap();
        assert_eq!(r.verdict, Verdict::NotRegular);
        assert!(witness_of(&r).verify().unwrap());

        assert_eq!(Hyperplane::from_ints(z2.clone(), &[2, 4, 0]).unwrap_err(), Error::NonFlatHyperplane);
        let id = ProjMorphism::identity(z2.clone(), &["x0", "x1", "x2"]).unwrap();
        let h = Hyperplane::from_ints(z2, &[1, 0, 0]).unwrap();
        assert!(matches!(mixedchar_witness(&id, &h), Err(Error::WrongFamily(_))));
    }
}
