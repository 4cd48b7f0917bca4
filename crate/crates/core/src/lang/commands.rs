//! Command dispatch and line-oriented reports.

use std::fmt;
use std::sync::Arc;

use super::examples;
use super::script::{arity, constant, eval, parse_u64, unknown, Env, Script};
use super::sexpr::{syntax, Pos, Sexp};
use crate::bertini::{
    avoidance_check, chart_decompose, generic_member, member_at, specialize_lambda, universal_member, Hyperplane,
    ProjMorphism,
};
use crate::error::{Error, Result};
use crate::groebner::Ideal;
use crate::poly::{Poly, VarContext};
use crate::regularity::{
    certify_generic_regular, fiberwise_smooth, jacobian_smooth, local_order2_vanishes, member_survey,
    mixedchar_witness, reducedness_check, Evidence, FiberOptions, LocalParams, RegularityReport, Verdict,
};

pub const COMMANDS: &[&str] = &[
    "generic-member",
    "universal-member",
    "member-at",
    "chart",
    "specialize",
    "avoid",
    "check-smooth",
    "check-reduced",
    "check-regular",
    "survey",
    "mixed-witness",
    "local-order2",
    "verify-examples",
    "run",
];

/// Flags given on the command line; they take precedence over script
/// arguments.
#[derive(Clone, Debug, Default)]
pub struct Overrides {
    pub chart: Option<usize>,
    pub prime: Option<u64>,
    pub field_size: Option<u64>,
}

/// `key: value` lines, starting with the command echo. `negative` marks a
/// mathematically negative verdict.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub fields: Vec<(String, String)>,
    pub negative: bool,
}

impl Report {
    fn new(command: &str) -> Self {
        Report { fields: vec![("command".into(), command.into())], negative: false }
    }

    fn push(&mut self, key: &str, value: impl ToString) {
        self.fields.push((key.to_string(), value.to_string()));
    }

    /// First value recorded under `key`.
    pub fn get(&self, key: &str) -> Option<&str> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v.as_str())
    }

    pub fn all(&self, key: &str) -> Vec<&str> {
        self.fields.iter().filter(|(k, _)| k == key).map(|(_, v)| v.as_str()).collect()
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in &self.fields {
            writeln!(f, "{k}: {v}")?;
        }
        Ok(())
    }
}

/// Generators with their context and projective blocks.
type Equations = (Vec<Poly>, Arc<VarContext>, Vec<Vec<String>>);

struct Args<'a> {
    env: &'a Env,
    names: Vec<(&'a str, Pos)>,
    keyed: Vec<&'a Sexp>,
    pos: Pos,
}

impl<'a> Args<'a> {
    fn new(env: &'a Env, args: &'a [Sexp], pos: Pos) -> Self {
        let mut names = Vec::new();
        let mut keyed = Vec::new();
        for a in args {
            match a {
                Sexp::Atom(s, p) => names.push((s.as_str(), *p)),
                Sexp::List(..) => keyed.push(a),
            }
        }
        Args { env, names, keyed, pos }
    }

    /// Values of `(key v ...)`.
    fn key(&self, key: &str) -> Option<&'a [Sexp]> {
        self.keyed.iter().find(|s| s.head() == Some(key)).map(|s| &s.list().unwrap()[1..])
    }

    fn flag(&self, key: &str) -> bool {
        self.key(key).is_some()
    }

    fn number(&self, key: &str) -> Result<Option<u64>> {
        match self.key(key) {
            None => Ok(None),
            Some([v]) => parse_u64(v).map(Some),
            Some(_) => Err(arity(self.pos, &format!("({key} N) takes one number"))),
        }
    }

    /// The named morphism, or the last one declared.
    fn morphism(&self) -> Result<&'a ProjMorphism> {
        for (n, _) in &self.names {
            if let Some(m) = self.env.morphism(n) {
                return Ok(m);
            }
        }
        if let Some((n, p)) = self.names.iter().find(|(n, _)| self.env.hyperplane(n).is_none()) {
            return Err(unknown(*p, n));
        }
        self.env.morphisms.last().map(|(_, m)| m).ok_or_else(|| arity(self.pos, "no morphism declared"))
    }

    fn hyperplane(&self) -> Result<&'a Hyperplane> {
        for (n, _) in &self.names {
            if let Some(h) = self.env.hyperplane(n) {
                return Ok(h);
            }
        }
        self.env.hyperplanes.last().map(|(_, h)| h).ok_or_else(|| arity(self.pos, "no hyperplane declared"))
    }

    /// Named polynomials moved into the space of the first; the last
    /// declared polynomial when none is named.
    fn polys(&self) -> Result<Equations> {
        let mut found = Vec::new();
        for (n, p) in &self.names {
            match self.env.poly(n) {
                Some(x) => found.push(x),
                None => return Err(unknown(*p, n)),
            }
        }
        if found.is_empty() {
            let (_, p, s) = self.env.polys.last().ok_or_else(|| arity(self.pos, "no polynomial declared"))?;
            found.push((p, s));
        }
        let (first, space) = found[0];
        let polys = found.iter().map(|(p, _)| p.reembed(first.ring(), &space.ctx)).collect::<Result<_>>()?;
        Ok((polys, space.ctx.clone(), space.blocks.clone()))
    }
}

fn chart_of(args: &Args, ov: &Overrides) -> Result<usize> {
    if let Some(c) = ov.chart {
        return Ok(c);
    }
    Ok(args.number("chart")?.unwrap_or(0) as usize)
}

fn joined(polys: &[Poly]) -> String {
    polys.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" ")
}

fn regularity_fields(r: &mut Report, rep: &RegularityReport) {
    r.push("verdict", rep.verdict);
    match &rep.evidence {
        Evidence::Charts(c) => r.push("charts", c.join(" ")),
        Evidence::PthRoot { root, p } => r.push("evidence", format!("(^ {root} {p})")),
        Evidence::RepeatedFactor(g) => r.push("evidence", format!("repeated {g}")),
        Evidence::Squarefree => r.push("evidence", "squarefree"),
        Evidence::Witness(w) => {
            r.push("witness", w.describe());
            r.push("case", format!("{:?}", w.case));
            r.push("valuation", w.valuation);
            r.push("chart", w.chart.join(","));
            r.push("equation", &w.equation);
            r.push("verified", w.verify().unwrap_or(false));
        }
        Evidence::None => {}
    }
    for n in &rep.notes {
        r.push("note", n);
    }
}

/// Execute `name` against the declarations of `script`. Arguments come from
/// the script's `(cmd ...)` form when it names the same command; `run`
/// executes that form whatever its name.
pub fn run_command(script: &Script, name: &str, ov: &Overrides) -> Result<Report> {
    let (name, args, pos) = match (&script.command, name) {
        (Some(c), "run") => (c.name.as_str(), c.args.as_slice(), c.pos),
        (None, "run") => return Err(arity(Pos { line: 1, col: 1 }, "script has no (cmd ...) form")),
        (Some(c), n) if c.name == n => (n, c.args.as_slice(), c.pos),
        (_, n) => (n, &[][..], Pos { line: 1, col: 1 }),
    };
    let env = &script.env;
    let a = Args::new(env, args, pos);
    let mut r = Report::new(name);
    match name {
        "generic-member" => {
            let phi = a.morphism()?;
            let g = generic_member(phi, chart_of(&a, ov)?)?;
            r.push("ring", g.ring());
            r.push("chart", g.chart());
            r.push("params", g.params().join(" "));
            r.push("equation", g.equation());
            if !g.ambient_ideal().is_empty() {
                r.push("ambient", joined(g.ambient_ideal()));
            }
            if let Some([v]) = a.key("eliminate") {
                let var = v.atom().ok_or_else(|| syntax(v.pos(), "expected a variable"))?;
                let (_, ideal) = g.eliminate(var)?;
                r.push("eliminated", var);
                for p in &ideal {
                    r.push("reduced", p);
                }
            }
        }
        "universal-member" => {
            let phi = a.morphism()?;
            let u = universal_member(phi)?;
            r.push("incidence", u.incidence());
        }
        "member-at" => {
            let phi = a.morphism()?;
            let h = a.hyperplane()?;
            let eqs = member_at(phi, h)?;
            let coeffs: Vec<String> = h.coeffs().iter().map(|c| h.ring().display_elem(c)).collect();
            r.push("hyperplane", format!("({})", coeffs.join(" ")));
            for e in &eqs {
                r.push("equation", e);
            }
        }
        "chart" => {
            let phi = a.morphism()?;
            let i = match ov.chart {
                Some(c) => c,
                None => a.number("index")?.or(a.number("chart")?).unwrap_or(0) as usize,
            };
            let c = chart_decompose(phi, i)?;
            r.push("chart", c.chart);
            r.push("affine", c.affine);
            r.push(
                "universal",
                format!("{} = (frac {} {})", c.universal.eliminated, c.universal.numerator, c.universal.denominator),
            );
            r.push("fiber", c.fiber_coordinates.join(" "));
            if let Some(g) = &c.generic {
                r.push("generic", format!("{} = (frac {} {})", g.eliminated, g.numerator, g.denominator));
            }
            r.push("free", c.free_parameters.join(" "));
        }
        "specialize" => {
            let phi = a.morphism()?;
            let g = generic_member(phi, chart_of(&a, ov)?)?;
            let d = a
                .key("d")
                .ok_or_else(|| arity(pos, "specialize needs (d d1 ... dn)"))?
                .iter()
                .map(|x| parse_u64(x).and_then(|v| u32::try_from(v).map_err(|_| syntax(x.pos(), "degree too large"))))
                .collect::<Result<Vec<u32>>>()?;
            let fresh: Vec<String> = match a.key("fresh") {
                Some(v) => v
                    .iter()
                    .map(|x| x.atom().map(str::to_string).ok_or_else(|| syntax(x.pos(), "expected a name")))
                    .collect::<Result<_>>()?,
                None => (0..=d.len()).map(|i| format!("u{i}")).collect(),
            };
            let s = specialize_lambda(&g, &d, &fresh)?;
            r.push("ring", &s.ring);
            r.push("equation", &s.equation);
        }
        "avoid" => {
            let phi = a.morphism()?;
            let y = a
                .key("y")
                .ok_or_else(|| arity(pos, "avoid needs (y f ...)"))?
                .iter()
                .map(|e| eval(env, phi.base(), phi.ctx(), e))
                .collect::<Result<Vec<_>>>()?;
            let ok = avoidance_check(phi, &y)?;
            r.push("avoided", ok);
            r.negative = !ok;
        }
        "check-smooth" => {
            let (gens, ctx, blocks) = match a.names.iter().find_map(|(n, _)| env.morphism(n)) {
                Some(phi) => (phi.ideal().to_vec(), phi.ctx().clone(), phi.blocks().to_vec()),
                None => a.polys()?,
            };
            let ring = gens.first().ok_or(Error::EmptyList)?.ring().clone();
            let codim = a.number("codim")?.map(|c| c as usize);
            let ok = jacobian_smooth(&Ideal::new(&ring, &ctx, gens)?, &blocks, codim)?;
            r.push("ring", &ring);
            r.push("smooth", ok);
            r.negative = !ok;
        }
        "check-reduced" => {
            let (polys, ..) = a.polys()?;
            let rep = reducedness_check(&polys[0])?;
            regularity_fields(&mut r, &rep);
            r.negative = rep.verdict == Verdict::NonReduced;
        }
        "check-regular" => {
            let rep = match a.names.iter().find_map(|(n, _)| env.morphism(n)) {
                Some(phi) => certify_generic_regular(phi),
                None if env.polys.is_empty() || (a.names.is_empty() && !env.morphisms.is_empty()) => {
                    certify_generic_regular(a.morphism()?)
                }
                None => {
                    let (gens, ctx, blocks) = a.polys()?;
                    let mut primes = match a.key("primes") {
                        Some(v) => v.iter().map(parse_u64).collect::<Result<Vec<_>>>()?,
                        None => Vec::new(),
                    };
                    if let Some(p) = ov.prime {
                        primes = vec![p];
                    }
                    fiberwise_smooth(&gens, &ctx, &blocks, &FiberOptions { proper: a.flag("proper"), primes })?
                }
            };
            regularity_fields(&mut r, &rep);
            r.negative = !matches!(rep.verdict, Verdict::RegularCertified | Verdict::SmoothOverField);
        }
        "survey" => {
            let phi = a.morphism()?;
            let q = match ov.field_size.or(a.number("q")?) {
                Some(q) => q,
                None => phi.base().finite_field_size().ok_or_else(|| Error::UnsupportedBase(phi.base().to_string()))?,
            };
            let t = member_survey(phi, q)?;
            r.push("field-size", t.field_size);
            r.push("rows", t.rows.len());
            for row in &t.rows {
                let coeffs: Vec<String> = row.coeffs.iter().map(|c| phi.base().display_elem(c)).collect();
                r.push(
                    "row",
                    format!("coeffs=({}) verdict={} evidence={}", coeffs.join(" "), row.verdict, row.evidence),
                );
            }
            r.push("smooth", t.counts.smooth);
            r.push("singular-reduced", t.counts.singular_reduced);
            r.push("non-reduced", t.counts.non_reduced);
            r.push("singular", t.counts.singular);
        }
        "mixed-witness" => {
            let phi = a.morphism()?;
            let h = a.hyperplane()?;
            let rep = mixedchar_witness(phi, h)?;
            regularity_fields(&mut r, &rep);
            r.negative = rep.verdict == Verdict::NotRegular;
        }
        "local-order2" => {
            let (polys, ..) = a.polys()?;
            let f = &polys[0];
            let prime = match ov.prime.or(a.number("prime")?) {
                Some(p) => p,
                None => return Err(arity(pos, "local-order2 needs (prime p)")),
            };
            let point = a
                .key("point")
                .unwrap_or(&[])
                .iter()
                .map(|entry| match entry.list() {
                    Some([v, c]) => {
                        let v = v.atom().ok_or_else(|| syntax(v.pos(), "expected a variable"))?;
                        Ok((v.to_string(), constant(env, f.ring(), c)?))
                    }
                    _ => Err(arity(entry.pos(), "point entries are (var value)")),
                })
                .collect::<Result<Vec<_>>>()?;
            let ok = local_order2_vanishes(f, &LocalParams { prime, point })?;
            r.push("order2", ok);
        }
        "verify-examples" => {
            let mut failed = 0;
            for ex in examples::EXAMPLES {
                let outcome = examples::replay(ex);
                if outcome.is_err() {
                    failed += 1;
                }
                let line = match outcome {
                    Ok(()) => format!("{} pass", ex.name),
                    Err(e) => format!("{} FAIL {e}", ex.name),
                };
                r.push("example", line);
            }
            r.push("passed", examples::EXAMPLES.len() - failed);
            r.push("failed", failed);
            r.negative = failed > 0;
        }
        other => return Err(Error::UnknownIdentifier(format!("command {other}"))),
    }
    Ok(r)
}
