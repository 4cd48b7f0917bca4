//! Universal and generic members of a morphism `X -> P^n_R` given by forms,
//! members cut out by hyperplanes over `R`, chart decompositions, avoidance
//! and the specialization family `t_j -> u_j + u_0^{d_j}`.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{charts, in_radical, proj_is_empty, Ideal};
use crate::guard;
use crate::poly::{substitute, Bindings, Block, Poly, VarContext};
use crate::ring::{generates_unit_ideal, Elem, Ring};
use crate::transcend::TranscElement;

/// A morphism from `X` (a closed subscheme of a product of projective
/// spaces over `R`) to `P^n_R`, given by forms of one common multidegree.
#[derive(Clone, Debug)]
pub struct ProjMorphism {
    base: Ring,
    ctx: Arc<VarContext>,
    blocks: Vec<Vec<String>>,
    ideal: Vec<Poly>,
    forms: Vec<Poly>,
}

fn block_indices(ctx: &VarContext, blocks: &[Vec<String>]) -> Result<Vec<Vec<usize>>> {
    let mut seen = Vec::new();
    let mut out = Vec::with_capacity(blocks.len());
    for b in blocks {
        let mut idx = Vec::with_capacity(b.len());
        for v in b {
            let i = ctx.require(v)?;
            if seen.contains(&i) {
                return Err(Error::ContextMismatch(format!("variable `{v}` listed in two blocks")));
            }
            seen.push(i);
            idx.push(i);
        }
        if idx.is_empty() {
            return Err(Error::ContextMismatch("empty projective block".into()));
        }
        out.push(idx);
    }
    Ok(out)
}

fn multidegree(p: &Poly, blocks: &[Vec<usize>]) -> Option<Vec<u32>> {
    blocks.iter().map(|b| p.homogeneous_degree(b)).collect()
}

fn extend_to(p: &Poly, target: &Ring) -> Result<Poly> {
    p.map_coefficients(target, |c| target.coerce(p.ring(), c))
}

impl ProjMorphism {
    pub fn new(
        base: Ring,
        ctx: Arc<VarContext>,
        blocks: Vec<Vec<String>>,
        ideal: Vec<Poly>,
        forms: Vec<Poly>,
    ) -> Result<ProjMorphism> {
        let idx = block_indices(&ctx, &blocks)?;
        for p in ideal.iter().chain(&forms) {
            if p.ring() != &base || p.ctx() != &ctx {
                return Err(Error::ContextMismatch(format!("{p} is not over {base} in {ctx}")));
            }
            guard::check(p.total_degree())?;
        }
        for g in &ideal {
            if multidegree(g, &idx).is_none() {
                return Err(Error::NotHomogeneous(g.to_string()));
            }
        }
        if forms.is_empty() {
            return Err(Error::EmptyList);
        }
        let mut degree: Option<Vec<u32>> = None;
        for f in forms.iter().filter(|f| !f.is_zero()) {
            let d = multidegree(f, &idx).ok_or_else(|| Error::InhomogeneousForms(f.to_string()))?;
            match &degree {
                None => degree = Some(d),
                Some(prev) if prev != &d => {
                    return Err(Error::InhomogeneousForms(format!("degrees {prev:?} and {d:?}")))
                }
                _ => {}
            }
        }
        if degree.is_none() {
            return Err(Error::InhomogeneousForms("all forms are zero".into()));
        }
        let ideal = ideal.into_iter().filter(|g| !g.is_zero()).collect();
        Ok(ProjMorphism { base, ctx, blocks, ideal, forms })
    }

    /// The identity of `P^n` with coordinates `names`.
    pub fn identity<S: AsRef<str>>(base: Ring, names: &[S]) -> Result<ProjMorphism> {
        Self::power_map(base, names, 1)
    }

    /// `[x_0 : ... : x_n] -> [x_0^e : ... : x_n^e]` on `P^n`.
    pub fn power_map<S: AsRef<str>>(base: Ring, names: &[S], e: u32) -> Result<ProjMorphism> {
        let ctx = VarContext::geometric(names);
        let forms = (0..ctx.len()).map(|i| Poly::var_index(&base, &ctx, i).pow(e)).collect();
        let blocks = vec![ctx.names().to_vec()];
        ProjMorphism::new(base, ctx, blocks, Vec::new(), forms)
    }

    /// Frobenius `x_i -> x_i^p` on `P^n` over a base of characteristic `p`.
    pub fn frobenius<S: AsRef<str>>(base: Ring, names: &[S]) -> Result<ProjMorphism> {
        let p = base.characteristic();
        if p == 0 {
            return Err(Error::WrongCharacteristic(format!("{base} has characteristic 0")));
        }
        Self::power_map(base, names, p as u32)
    }

    pub fn base(&self) -> &Ring {
        &self.base
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    pub fn ideal(&self) -> &[Poly] {
        &self.ideal
    }

    pub fn forms(&self) -> &[Poly] {
        &self.forms
    }

    /// `n` for a morphism to `P^n`.
    pub fn target_dim(&self) -> usize {
        self.forms.len() - 1
    }

    /// Whether the forms have no common zero on `X`. Field bases only.
    pub fn is_base_point_free(&self) -> Result<bool> {
        if !self.base.is_field() {
            return Err(Error::NonFieldBase(self.base.to_string()));
        }
        let mut gens = self.ideal.clone();
        gens.extend(self.forms.iter().cloned());
        proj_is_empty(&Ideal::new(&self.base, &self.ctx, gens)?, &self.blocks)
    }

    fn block_indices(&self) -> Vec<Vec<usize>> {
        block_indices(&self.ctx, &self.blocks).expect("validated on construction")
    }
}

/// A hyperplane `sum a_i s_i = 0` of `P^n_R`.
#[derive(Clone, Debug, PartialEq)]
pub struct Hyperplane {
    ring: Ring,
    coeffs: Vec<Elem>,
}

impl Hyperplane {
    /// Fails with `NonFlatHyperplane` unless the coefficients generate the
    /// unit ideal.
    pub fn new(ring: Ring, coeffs: Vec<Elem>) -> Result<Hyperplane> {
        if coeffs.is_empty() {
            return Err(Error::EmptyList);
        }
        for c in &coeffs {
            ring.check(c)?;
        }
        if !generates_unit_ideal(&ring, &coeffs)? {
            return Err(Error::NonFlatHyperplane);
        }
        Ok(Hyperplane { ring, coeffs })
    }

    pub fn from_ints(ring: Ring, coeffs: &[i64]) -> Result<Hyperplane> {
        let c = coeffs.iter().map(|&a| ring.from_int(a)).collect();
        Hyperplane::new(ring, c)
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }
}

/// `X^univ`: `X`'s ideal plus `sum s_i phi_i` in `X x (P^n)^*`.
#[derive(Clone, Debug)]
pub struct UniversalMember {
    pub ctx: Arc<VarContext>,
    pub blocks: Vec<Vec<String>>,
    pub dual: Vec<String>,
    pub ideal: Vec<Poly>,
}

impl UniversalMember {
    /// The added incidence generator.
    pub fn incidence(&self) -> &Poly {
        self.ideal.last().expect("incidence generator")
    }
}

fn dual_names(ctx: &VarContext, prefix: &str, n: usize) -> Vec<String> {
    (0..=n)
        .map(|i| {
            let mut name = format!("{prefix}{i}");
            while ctx.index_of(&name).is_some() {
                name.push('_');
            }
            name
        })
        .collect()
}

pub fn universal_member(phi: &ProjMorphism) -> Result<UniversalMember> {
    let n = phi.target_dim();
    let dual = dual_names(&phi.ctx, "s", n);
    let mut entries = phi.ctx.entries();
    entries.extend(dual.iter().map(|s| (s.clone(), Block::Parameter)));
    let ctx = VarContext::new(entries)?;
    let base = &phi.base;
    let mut ideal = Vec::with_capacity(phi.ideal.len() + 1);
    for g in &phi.ideal {
        ideal.push(g.reembed(base, &ctx)?);
    }
    // on P^0 the single dual coordinate is a unit, so the member is V(phi_0)
    let incidence = if n == 0 {
        phi.forms[0].reembed(base, &ctx)?
    } else {
        let mut acc = Poly::zero(base, &ctx);
        for (s, f) in dual.iter().zip(&phi.forms) {
            acc = acc.add(&Poly::variable(base, &ctx, s)?.mul(&f.reembed(base, &ctx)?));
        }
        acc
    };
    ideal.push(incidence);
    let mut blocks = phi.blocks.clone();
    blocks.push(dual.clone());
    Ok(UniversalMember { ctx, blocks, dual, ideal })
}

/// `X^gen` on the chart `s_chart = 1`: `phi_chart + sum_{i != chart} t_i phi_i`
/// over `R(t_i : i != chart)`.
#[derive(Clone, Debug)]
pub struct GenericMember {
    ring: Ring,
    ctx: Arc<VarContext>,
    blocks: Vec<Vec<String>>,
    ideal: Vec<Poly>,
    equation: Poly,
    chart: usize,
    params: Vec<String>,
}

impl GenericMember {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ctx(&self) -> &Arc<VarContext> {
        &self.ctx
    }

    pub fn blocks(&self) -> &[Vec<String>] {
        &self.blocks
    }

    /// `X`'s ideal extended to `R(n)`.
    pub fn ambient_ideal(&self) -> &[Poly] {
        &self.ideal
    }

    pub fn equation(&self) -> &Poly {
        &self.equation
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// `X`'s ideal plus the generic equation.
    pub fn full_ideal(&self) -> Vec<Poly> {
        let mut g = self.ideal.clone();
        g.push(self.equation.clone());
        g
    }

    /// The parameter paired with form `i`, if `i` is not the chart.
    pub fn param_for(&self, i: usize) -> Option<&str> {
        if i == self.chart {
            return None;
        }
        let k = if i < self.chart { i } else { i - 1 };
        self.params.get(k).map(String::as_str)
    }

    fn param_elem(&self, i: usize) -> Option<TranscElement> {
        let t = self.ring.transc()?;
        t.param(self.param_for(i)?).ok()
    }

    /// The equation normalized on another chart, `phi_c + sum (t_i / t_c) phi_i`,
    /// with coefficients still in the present `R(n)`.
    pub fn rebase(&self, phi: &ProjMorphism, chart: usize) -> Result<Poly> {
        if chart >= phi.forms.len() {
            return Err(Error::BadParameters(format!("chart {chart} out of range")));
        }
        if chart == self.chart {
            return Ok(self.equation.clone());
        }
        let t = self.ring.transc().expect("generic member over R(n)");
        let tc = t.param(self.param_for(chart).expect("not the chart"))?;
        let one = Poly::one(t.base(), t.ctx());
        let mut acc = Poly::zero(&self.ring, &self.ctx);
        for (i, f) in phi.forms.iter().enumerate() {
            let s = match self.param_elem(i) {
                Some(ti) => ti.num,
                None => one.clone(),
            };
            let c = t.rebase_chart(&s, &tc.num, 1, &one)?;
            acc = acc.add(&extend_to(f, &self.ring)?.scale(&Elem::Frac(Box::new(c))));
        }
        Ok(acc)
    }

    /// Solve the generic equation for `var` when it enters linearly with a
    /// unit coefficient, and substitute into `X`'s ideal.
    pub fn eliminate(&self, var: &str) -> Result<(Arc<VarContext>, Vec<Poly>)> {
        let v = self.ctx.require(var)?;
        let coeffs = self.equation.univariate_coefficients(v);
        if coeffs.len() != 2 || !coeffs[1].is_constant() || !self.ring.is_unit(&coeffs[1].constant_coeff()) {
            return Err(Error::BadParameters(format!("{var} does not enter the equation linearly")));
        }
        let keep: Vec<usize> = (0..self.ctx.len()).filter(|&i| i != v).collect();
        let small = self.ctx.restrict(&keep);
        let inv = self.ring.inv(&coeffs[1].constant_coeff())?;
        let value = coeffs[0].scale(&self.ring.neg(&inv)).reembed(&self.ring, &small)?;
        let mut bindings = Bindings::new();
        bindings.insert(var.to_string(), value);
        let ideal =
            self.ideal.iter().map(|g| substitute(g, &self.ring, &small, &bindings)).collect::<Result<Vec<_>>>()?;
        Ok((small, ideal))
    }
}

pub fn generic_member(phi: &ProjMorphism, chart: usize) -> Result<GenericMember> {
    let n = phi.target_dim();
    if chart > n {
        return Err(Error::BadParameters(format!("chart {chart} out of range 0..={n}")));
    }
    let params: Vec<String> =
        dual_names(&phi.ctx, "t", n).into_iter().enumerate().filter(|(i, _)| *i != chart).map(|(_, s)| s).collect();
    let base = &phi.base;
    let ring = if params.is_empty() { base.clone() } else { Ring::transcendental(base.clone(), &params)? };
    let ideal = phi.ideal.iter().map(|g| extend_to(g, &ring)).collect::<Result<Vec<_>>>()?;
    let mut g = GenericMember {
        ring: ring.clone(),
        ctx: phi.ctx.clone(),
        blocks: phi.blocks.clone(),
        ideal,
        equation: Poly::zero(&ring, &phi.ctx),
        chart,
        params,
    };
    let mut eq = Poly::zero(&ring, &phi.ctx);
    for (i, f) in phi.forms.iter().enumerate() {
        let f = extend_to(f, &ring)?;
        eq = match g.param_elem(i) {
            Some(t) => eq.add(&f.scale(&Elem::Frac(Box::new(t)))),
            None => eq.add(&f),
        };
    }
    g.equation = eq;
    Ok(g)
}

/// `X`'s ideal plus `sum a_i phi_i`.
pub fn member_at(phi: &ProjMorphism, h: &Hyperplane) -> Result<Vec<Poly>> {
    if h.coeffs.len() != phi.forms.len() {
        return Err(Error::ArityError(format!(
            "hyperplane has {} coefficients, morphism has {} forms",
            h.coeffs.len(),
            phi.forms.len()
        )));
    }
    if h.ring != phi.base {
        return Err(Error::MixedRings(format!("{} vs {}", h.ring, phi.base)));
    }
    if !generates_unit_ideal(&h.ring, &h.coeffs)? {
        return Err(Error::NonFlatHyperplane);
    }
    let mut eq = Poly::zero(&phi.base, &phi.ctx);
    for (a, f) in h.coeffs.iter().zip(&phi.forms) {
        eq = eq.add(&f.scale(a));
    }
    let mut ideal = phi.ideal.clone();
    ideal.push(eq);
    Ok(ideal)
}

/// A parameter solved for on a chart: `name = numerator / denominator`.
#[derive(Clone, Debug)]
pub struct Elimination {
    pub eliminated: String,
    pub numerator: Poly,
    pub denominator: Poly,
}

/// Trivialization of the universal member over `X_i = X \ V(phi_i)`.
#[derive(Clone, Debug)]
pub struct ChartReport {
    pub chart: usize,
    /// Universal side: `s_i` in terms of the remaining dual coordinates, which
    /// are the homogeneous coordinates of the `P^{n-1}` fibre.
    pub universal: Elimination,
    pub fiber_coordinates: Vec<String>,
    /// Generic side over `R[X_i][free parameters]`, absent for `n = 0`.
    pub generic: Option<Elimination>,
    pub free_parameters: Vec<String>,
    /// Whether `phi_i` is a coordinate and both sides were dehomogenized.
    pub affine: bool,
}

fn chart_is_empty(phi: &ProjMorphism, i: usize) -> Result<bool> {
    let f = &phi.forms[i];
    if f.is_zero() {
        return Ok(true);
    }
    if !phi.base.is_field() {
        return Ok(false);
    }
    for chart in charts(&phi.block_indices()) {
        let gens = phi.ideal.iter().map(|g| g.dehomogenize(&chart)).collect();
        let ideal = Ideal::new(&phi.base, &phi.ctx, gens)?;
        if !in_radical(&ideal, &f.dehomogenize(&chart))? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A variable `v` when `f = c v` with `c` a unit.
fn coordinate_of(f: &Poly) -> Option<usize> {
    match f.terms() {
        [(m, c)] if m.degree() == 1 && f.ring().is_unit(c) => m.support().next(),
        _ => None,
    }
}

pub fn chart_decompose(phi: &ProjMorphism, i: usize) -> Result<ChartReport> {
    let n = phi.target_dim();
    if i > n {
        return Err(Error::BadParameters(format!("chart {i} out of range 0..={n}")));
    }
    if chart_is_empty(phi, i)? {
        return Err(Error::ChartEmpty(i));
    }
    let base = &phi.base;
    let coord = coordinate_of(&phi.forms[i]);
    let affine = |p: Poly| -> Poly {
        match coord {
            Some(v) => {
                let name = phi.ctx.name(v);
                let v = p.ctx().index_of(name).expect("coordinate kept");
                p.dehomogenize(&[v])
            }
            None => p,
        }
    };

    let univ = universal_member(phi)?;
    let mut num = Poly::zero(base, &univ.ctx);
    for (j, f) in phi.forms.iter().enumerate().filter(|(j, _)| *j != i && n > 0) {
        num = num.sub(&Poly::variable(base, &univ.ctx, &univ.dual[j])?.mul(&f.reembed(base, &univ.ctx)?));
    }
    let universal = Elimination {
        eliminated: univ.dual[i].clone(),
        numerator: affine(num),
        denominator: affine(phi.forms[i].reembed(base, &univ.ctx)?),
    };
    let fiber_coordinates = univ.dual.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, s)| s.clone()).collect();

    let (generic, free_parameters) = if n == 0 {
        (None, Vec::new())
    } else {
        let c = if i == n { 0 } else { n };
        let names = dual_names(&phi.ctx, "t", n);
        let free: Vec<String> =
            names.iter().enumerate().filter(|(j, _)| *j != i && *j != c).map(|(_, s)| s.clone()).collect();
        let mut entries = phi.ctx.entries();
        entries.extend(free.iter().map(|t| (t.clone(), Block::Parameter)));
        let ctx = VarContext::new(entries)?;
        let mut num = phi.forms[c].reembed(base, &ctx)?.neg();
        for (j, f) in phi.forms.iter().enumerate().filter(|(j, _)| *j != i && *j != c) {
            num = num.sub(&Poly::variable(base, &ctx, &names[j])?.mul(&f.reembed(base, &ctx)?));
        }
        let elim = Elimination {
            eliminated: names[i].clone(),
            numerator: affine(num),
            denominator: affine(phi.forms[i].reembed(base, &ctx)?),
        };
        (Some(elim), free)
    };
    Ok(ChartReport { chart: i, universal, fiber_coordinates, generic, free_parameters, affine: coord.is_some() })
}

/// Whether `Y x_R R(n)` is not contained in `X^gen` as sets. `y_ideal` lives
/// in `phi`'s context; an empty `Y` is vacuously avoided.
pub fn avoidance_check(phi: &ProjMorphism, y_ideal: &[Poly]) -> Result<bool> {
    if !phi.base.is_field() {
        return Err(Error::UnsupportedBase(format!(
            "{} is not a field; reduce modulo a maximal ideal first",
            phi.base
        )));
    }
    let y = Ideal::new(&phi.base, &phi.ctx, y_ideal.to_vec())?;
    if proj_is_empty(&y, &phi.blocks)? {
        return Ok(true);
    }
    let g = generic_member(phi, 0)?;
    let ring = g.ring();
    let y_ext = y_ideal.iter().map(|p| extend_to(p, ring)).collect::<Result<Vec<_>>>()?;
    for chart in charts(&phi.block_indices()) {
        let gens = y_ext.iter().map(|p| p.dehomogenize(&chart)).collect();
        let ideal = Ideal::new(ring, &phi.ctx, gens)?;
        if !in_radical(&ideal, &g.equation.dehomogenize(&chart))? {
            return Ok(true);
        }
    }
    Ok(false)
}

/// A member of the family `t_j -> u_j + u_0^{d_j}` over `k(u_0, ..., u_n)`.
#[derive(Clone, Debug)]
pub struct SpecializedMember {
    pub ring: Ring,
    pub ctx: Arc<VarContext>,
    pub ideal: Vec<Poly>,
    pub equation: Poly,
}

pub fn specialize_lambda<S: AsRef<str>>(g: &GenericMember, d: &[u32], fresh: &[S]) -> Result<SpecializedMember> {
    let t = g.ring.transc().ok_or_else(|| Error::BadParameters("generic member has no parameters".into()))?;
    let k = t.base();
    if !k.is_field() {
        return Err(Error::NonFieldBase(k.to_string()));
    }
    let n = g.params.len();
    if d.len() != n || d.contains(&0) {
        return Err(Error::BadParameters(format!("need {n} positive exponents, got {d:?}")));
    }
    if fresh.len() != n + 1 {
        return Err(Error::BadParameters(format!("need {} fresh names, got {}", n + 1, fresh.len())));
    }
    let target = Ring::transcendental(k.clone(), fresh)?;
    let tt = target.transc().expect("just built");
    let u = |i: usize| tt.param(fresh[i].as_ref());
    let mut bindings = Bindings::new();
    for (j, name) in g.params.iter().enumerate() {
        let value = tt.add(&u(j + 1)?, &tt.pow(&u(0)?, d[j]));
        bindings.insert(name.clone(), Poly::constant(&target, &g.ctx, Elem::Frac(Box::new(value))));
    }
    let equation = substitute(&g.equation, &target, &g.ctx, &bindings)?;
    let ideal = g.ideal.iter().map(|p| substitute(p, &target, &g.ctx, &bindings)).collect::<Result<Vec<_>>>()?;
    Ok(SpecializedMember { ring: target, ctx: g.ctx.clone(), ideal, equation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn frob(p: u64, n: usize) -> ProjMorphism {
        let names: Vec<String> = (0..=n).map(|i| format!("x{i}")).collect();
        ProjMorphism::frobenius(Ring::PrimeField(p), &names).unwrap()
    }

    #[test]
    fn frobenius_generic_member() {
        let g = generic_member(&frob(2, 2), 0).unwrap();
        assert_eq!(g.equation().to_string(), "(+ (^ x0 2) (* t1 (^ x1 2)) (* t2 (^ x2 2)))");
        assert_eq!(g.ring().to_string(), "(Transc (Fp 2) (t1 t2))");
        let g = generic_member(&frob(3, 2), 1).unwrap();
        assert_eq!(g.equation().to_string(), "(+ (* t0 (^ x0 3)) (^ x1 3) (* t2 (^ x2 3)))");
    }

    #[test]
    fn universal_members() {
        let u = universal_member(&frob(2, 2)).unwrap();
        assert_eq!(u.incidence().to_string(), "(+ (* (^ x0 2) s0) (* (^ x1 2) s1) (* (^ x2 2) s2))");
        let id = ProjMorphism::identity(Ring::Rationals, &["x0", "x1"]).unwrap();
        assert_eq!(universal_member(&id).unwrap().incidence().to_string(), "(+ (* x0 s0) (* x1 s1))");
        let ctx = VarContext::geometric(&["x", "y"]);
        let q = Ring::Rationals;
        let x = Poly::variable(&q, &ctx, "x").unwrap();
        let phi =
            ProjMorphism::new(q.clone(), ctx.clone(), vec![vec!["x".into(), "y".into()]], vec![], vec![x.clone()])
                .unwrap();
        assert_eq!(
            universal_member(&phi).unwrap().incidence(),
            &x.reembed(&q, &universal_member(&phi).unwrap().ctx).unwrap()
        );
    }

    #[test]
    fn inhomogeneous_forms_rejected() {
        let ctx = VarContext::geometric(&["x", "y"]);
        let q = Ring::Rationals;
        let x = Poly::variable(&q, &ctx, "x").unwrap();
        let y = Poly::variable(&q, &ctx, "y").unwrap();
        let blocks = vec![vec!["x".to_string(), "y".to_string()]];
        let r = ProjMorphism::new(q.clone(), ctx.clone(), blocks.clone(), vec![], vec![x.clone(), y.pow(2)]);
        assert!(matches!(r, Err(Error::InhomogeneousForms(_))));
        let r = ProjMorphism::new(q, ctx, blocks, vec![x.add(&y.pow(2))], vec![x, y]);
        assert!(matches!(r, Err(Error::NotHomogeneous(_))));
    }

    #[test]
    fn members_at_hyperplanes() {
        let phi = frob(2, 2);
        let h = Hyperplane::from_ints(Ring::PrimeField(2), &[1, 1, 0]).unwrap();
        let m = member_at(&phi, &h).unwrap();
        assert_eq!(m[0].to_string(), "(+ (^ x0 2) (^ x1 2))");
        let root = crate::poly::is_pth_power(&m[0]).unwrap().unwrap();
        assert_eq!(root.to_string(), "(+ x0 x1)");

        let id = ProjMorphism::identity(Ring::Integers, &["x0", "x1"]).unwrap();
        let h = Hyperplane::from_ints(Ring::Integers, &[1, 0]).unwrap();
        assert_eq!(member_at(&id, &h).unwrap()[0].to_string(), "x0");
        assert_eq!(Hyperplane::from_ints(Ring::Integers, &[2, 4]), Err(Error::NonFlatHyperplane));
    }

    #[test]
    fn chart_decomposition_of_projective_space() {
        let id = ProjMorphism::identity(Ring::Integers, &["x0", "x1", "x2"]).unwrap();
        let r = chart_decompose(&id, 0).unwrap();
        assert!(r.affine);
        assert_eq!(r.universal.eliminated, "s0");
        assert_eq!(r.universal.numerator.to_string(), "(+ (* -1 x1 s1) (* -1 x2 s2))");
        assert_eq!(r.universal.denominator.to_string(), "1");
        assert_eq!(r.fiber_coordinates, vec!["s1", "s2"]);
        let g = r.generic.unwrap();
        assert_eq!(g.eliminated, "t0");
        assert_eq!(g.numerator.to_string(), "(+ (* -1 x1 t1) (* -1 x2))");
        assert_eq!(r.free_parameters, vec!["t1"]);

        let id1 = ProjMorphism::identity(Ring::Integers, &["x0"]).unwrap();
        let r = chart_decompose(&id1, 0).unwrap();
        assert!(r.generic.is_none() && r.free_parameters.is_empty());

        let ctx = VarContext::geometric(&["x", "y"]);
        let f3 = Ring::PrimeField(3);
        let x = Poly::variable(&f3, &ctx, "x").unwrap();
        let y = Poly::variable(&f3, &ctx, "y").unwrap();
        let blocks = vec![vec!["x".to_string(), "y".to_string()]];
        let phi = ProjMorphism::new(f3, ctx, blocks, vec![x.pow(2)], vec![x, y]).unwrap();
        assert_eq!(chart_decompose(&phi, 0).unwrap_err(), Error::ChartEmpty(0));
        assert!(chart_decompose(&phi, 1).is_ok());
    }

    #[test]
    fn avoidance() {
        let phi = frob(2, 2);
        let ctx = phi.ctx().clone();
        let f2 = Ring::PrimeField(2);
        let v = |n| Poly::variable(&f2, &ctx, n).unwrap();
        assert!(avoidance_check(&phi, &[v("x1"), v("x2")]).unwrap());
        assert!(avoidance_check(&phi, &[]).unwrap());
        assert!(avoidance_check(&phi, &[Poly::one(&f2, &ctx)]).unwrap());
        let zphi = ProjMorphism::identity(Ring::Integers, &["x0", "x1"]).unwrap();
        assert!(matches!(avoidance_check(&zphi, &[]), Err(Error::UnsupportedBase(_))));
    }

    #[test]
    fn specialization_family() {
        let g = generic_member(&frob(2, 2), 0).unwrap();
        let s = specialize_lambda(&g, &[1, 2], &["u0", "u1", "u2"]).unwrap();
        assert_eq!(s.equation.to_string(), "(+ (^ x0 2) (* (+ u0 u1) (^ x1 2)) (* (+ (^ u0 2) u2) (^ x2 2)))");
        // u0 -> 0 relabels t_j as u_j
        let k = Ring::transcendental(Ring::PrimeField(2), &["u1", "u2"]).unwrap();
        let mut b = Bindings::new();
        b.insert("u0".into(), Poly::zero(&k, &s.ctx));
        let back = substitute(&s.equation, &k, &s.ctx, &b).unwrap();
        assert_eq!(back.to_string(), "(+ (^ x0 2) (* u1 (^ x1 2)) (* u2 (^ x2 2)))");
        let other = specialize_lambda(&g, &[2, 1], &["u0", "u1", "u2"]).unwrap();
        assert_ne!(other.equation, s.equation);
        assert!(matches!(specialize_lambda(&g, &[0, 1], &["u0", "u1", "u2"]), Err(Error::BadParameters(_))));
        let gz = generic_member(&ProjMorphism::identity(Ring::Integers, &["x0", "x1"]).unwrap(), 0).unwrap();
        assert!(matches!(specialize_lambda(&gz, &[1], &["u0", "u1"]), Err(Error::NonFieldBase(_))));
    }

    #[test]
    fn charts_agree_after_rebasing() {
        let phi = frob(3, 2);
        let g0 = generic_member(&phi, 0).unwrap();
        let g1 = generic_member(&phi, 1).unwrap();
        let rebased = g0.rebase(&phi, 1).unwrap();
        let t = g0.ring().transc().unwrap();
        // coefficient of x0^3 is 1/t1, of x2^3 is t2/t1
        let x = |i: usize| crate::poly::Monomial::var(3, i, 3);
        let t1 = t.param("t1").unwrap();
        let t2 = t.param("t2").unwrap();
        assert!(t.eq(rebased.coeff(&x(0)).as_frac(), &t.inv(&t1).unwrap()));
        assert!(t.eq(rebased.coeff(&x(1)).as_frac(), &t.one()));
        assert!(t.eq(rebased.coeff(&x(2)).as_frac(), &t.div(&t2, &t1).unwrap()));
        assert_eq!(g1.equation().to_string(), "(+ (* t0 (^ x0 3)) (^ x1 3) (* t2 (^ x2 3)))");
    }

    #[test]
    fn eliminating_a_linear_coordinate() {
        let ctx = VarContext::geometric(&["x0", "x1", "x2", "y0", "y1", "y2"]);
        let r = Ring::localized_at(2).unwrap();
        let v = |n| Poly::variable(&r, &ctx, n).unwrap();
        let f = v("x0").mul(&v("y0").pow(2)).add(&v("x1").mul(&v("y1").pow(2))).add(&v("x2").mul(&v("y2").pow(2)));
        let blocks =
            vec![vec!["x0".to_string(), "x1".into(), "x2".into()], vec!["y0".to_string(), "y1".into(), "y2".into()]];
        let phi = ProjMorphism::new(r.clone(), ctx.clone(), blocks, vec![f], vec![v("x0"), v("x1"), v("x2")]).unwrap();
        let g = generic_member(&phi, 0).unwrap();
        let (_, ideal) = g.eliminate("x0").unwrap();
        assert_eq!(
            ideal[0].to_string(),
            "(+ (* -1 t1 x1 (^ y0 2)) (* -1 t2 x2 (^ y0 2)) (* x1 (^ y1 2)) (* x2 (^ y2 2)))"
        );
    }

    #[test]
    fn dimension_drops_by_one() {
        let f3 = Ring::PrimeField(3);
        let quadric = {
            let ctx = VarContext::geometric(&["x0", "x1", "x2", "x3"]);
            let v = |i| Poly::var_index(&f3, &ctx, i);
            let q = v(0).mul(&v(1)).add(&v(2).mul(&v(3)));
            let blocks = vec![ctx.names().to_vec()];
            let forms = (0..4).map(v).collect();
            ProjMorphism::new(f3.clone(), ctx.clone(), blocks, vec![q], forms).unwrap()
        };
        for phi in [
            ProjMorphism::identity(f3.clone(), &["x0", "x1"]).unwrap(),
            ProjMorphism::identity(f3.clone(), &["x0", "x1", "x2"]).unwrap(),
            quadric,
        ] {
            let x = Ideal::new(phi.base(), phi.ctx(), phi.ideal().to_vec()).unwrap();
            let g = generic_member(&phi, 0).unwrap();
            let xg = Ideal::new(g.ring(), g.ctx(), g.full_ideal()).unwrap();
            assert_eq!(xg.krull_dimension().unwrap(), x.krull_dimension().unwrap() - 1);
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn chart_coherence(a in proptest::collection::vec(0u64..5, 3), chart in 0usize..3) {
            let f5 = Ring::PrimeField(5);
            prop_assume!(a[chart] != 0);
            let ctx = VarContext::geometric(&["x0", "x1", "x2"]);
            let v = |i| Poly::var_index(&f5, &ctx, i);
            let forms = vec![v(0).pow(2), v(0).mul(&v(1)), v(1).mul(&v(2))];
            let phi = ProjMorphism::new(f5.clone(), ctx.clone(), vec![ctx.names().to_vec()], vec![], forms).unwrap();
            let g = generic_member(&phi, chart).unwrap();
            let coeffs: Vec<Elem> = a.iter().map(|&c| Elem::Res(c)).collect();
            let inv = f5.inv(&coeffs[chart]).unwrap();
            let mut b = Bindings::new();
            for (i, c) in coeffs.iter().enumerate() {
                if let Some(t) = g.param_for(i) {
                    b.insert(t.to_string(), Poly::constant(&f5, &ctx, f5.mul(c, &inv)));
                }
            }
            let specialized = substitute(g.equation(), &f5, &ctx, &b).unwrap();
            let h = Hyperplane::new(f5.clone(), coeffs.clone()).unwrap();
            let member = member_at(&phi, &h).unwrap().pop().unwrap();
            prop_assert_eq!(specialized, member.scale(&inv));
        }
    }
}
