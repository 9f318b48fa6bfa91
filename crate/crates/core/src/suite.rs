//! Running parsed checks and assembling reports.

use crate::connection::{self, Comodule};
use crate::dsl::{CheckBody, CheckDecl, Mode};
use crate::error::{Error, Result};
use crate::hopf::{self, error_item, Ctx};
use crate::normalform::{Limits, ReductionTrace};
use crate::presentations::{StarVariant, Universe};
use crate::report::{Findings, Item, Verdict};
use crate::scalars::{sample_points, Coeff, Scalar};
use num_rational::BigRational;
use serde::Serialize;
use std::sync::{Arc, OnceLock};
use std::time::Instant;

pub const DEFAULT_MID_CAP: usize = 100_000;

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub mode: Mode,
    pub seed: u64,
    pub qpoints: usize,
    pub cap: Option<usize>,
    pub trace: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { mode: Mode::Specialized, seed: 7, qpoints: 3, cap: None, trace: false }
    }
}

impl RunConfig {
    pub fn limits(&self) -> Limits {
        self.cap.map(Limits::with_cap).unwrap_or_default()
    }

    pub fn mid_cap(&self) -> usize {
        self.cap.unwrap_or(DEFAULT_MID_CAP)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub kind: String,
    pub anchor: String,
    pub line: usize,
    pub mode: Mode,
    /// The q values used, or `q` in symbolic mode.
    pub points: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residue: Option<String>,
    pub items: usize,
    pub failed: usize,
    pub undecided: usize,
    /// Every item that did not pass, labelled with its point.
    pub failures: Vec<Item>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<ReductionTrace>,
    pub wall_ms: f64,
    /// Full findings per point.
    #[serde(skip)]
    pub findings: Vec<(String, Findings)>,
}

impl CheckReport {
    /// All items at all points whose label passes `f`.
    pub fn items_where(&self, f: impl Fn(&str) -> bool) -> Vec<&Item> {
        self.findings.iter().flat_map(|(_, fs)| fs.items.iter()).filter(|i| f(&i.label)).collect()
    }

    pub fn text(&self) -> String {
        let mut s = format!(
            "[{}] {} ({}; {} items, {} failed, {} undecided; {:.0} ms)",
            self.verdict.word(),
            self.name,
            self.mode.keyword(),
            self.items,
            self.failed,
            self.undecided,
            self.wall_ms
        );
        if !self.anchor.is_empty() {
            s.push_str(&format!("\n    anchor: {}", self.anchor));
        }
        if let Some(r) = &self.residue {
            s.push_str(&format!("\n    residue: {}", clip(r, 600)));
        }
        s
    }
}

/// At most `n` characters, marking the cut.
fn clip(s: &str, n: usize) -> String {
    match s.char_indices().nth(n) {
        None => s.to_string(),
        Some((i, _)) => format!("{} ... ({} more chars)", &s[..i], s[i..].chars().count()),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub mode: Mode,
    pub points: Vec<String>,
    pub verdict: Verdict,
    pub checks: Vec<CheckReport>,
    pub wall_ms: f64,
}

impl Report {
    pub fn text(&self) -> String {
        let mut s = format!("suite {} (seed {}, mode {}, points {})\n", self.suite, self.seed, self.mode.keyword(), self.points.join(", "));
        for c in &self.checks {
            s.push_str(&c.text());
            s.push('\n');
        }
        let count = |v| self.checks.iter().filter(|c| c.verdict == v).count();
        s.push_str(&format!(
            "{}: {} pass, {} fail, {} undecided ({:.1} s)\n",
            self.verdict.word(),
            count(Verdict::Pass),
            count(Verdict::Fail),
            count(Verdict::Undecided),
            self.wall_ms / 1000.0
        ));
        s
    }

    /// One JSON object per check, one per line, then a summary object.
    pub fn json_lines(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&serde_json::to_string(c).expect("report serializes"));
            s.push('\n');
        }
        let summary = serde_json::json!({
            "suite": self.suite,
            "seed": self.seed,
            "mode": self.mode,
            "points": self.points,
            "verdict": self.verdict,
            "checks": self.checks.len(),
            "wall_ms": self.wall_ms,
        });
        s.push_str(&summary.to_string());
        s.push('\n');
        s
    }

    pub fn check(&self, name_prefix: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.name.starts_with(name_prefix))
    }
}

/// Coefficient contexts shared by every check of a run.
pub struct Contexts {
    pub universe: Arc<Universe>,
    pub config: RunConfig,
    pub points: Vec<BigRational>,
    specialized: Vec<OnceLock<Result<Ctx<BigRational>>>>,
    symbolic: OnceLock<Result<Ctx<Scalar>>>,
}

impl Contexts {
    pub fn new(universe: Arc<Universe>, config: RunConfig) -> Self {
        let points = sample_points(config.seed, config.qpoints.max(1));
        let specialized = points.iter().map(|_| OnceLock::new()).collect();
        Contexts { universe, config, points, specialized, symbolic: OnceLock::new() }
    }

    pub fn specialized(&self, k: usize) -> Result<&Ctx<BigRational>> {
        self.specialized[k]
            .get_or_init(|| Ctx::new(self.universe.clone(), self.points[k].clone(), self.config.limits()))
            .as_ref()
            .map_err(Error::clone)
    }

    pub fn symbolic(&self) -> Result<&Ctx<Scalar>> {
        self.symbolic
            .get_or_init(|| Ctx::new(self.universe.clone(), (), self.config.limits()))
            .as_ref()
            .map_err(Error::clone)
    }

    pub fn point_names(&self, mode: Mode) -> Vec<String> {
        match mode {
            Mode::Symbolic => vec!["q".to_string()],
            Mode::Specialized => self.points.iter().map(|p| format!("q={p}")).collect(),
        }
    }
}

fn arg_after(args: &[String], key: &str) -> Result<Option<usize>> {
    match args.iter().position(|a| a == key) {
        None => Ok(None),
        Some(i) => args
            .get(i + 1)
            .and_then(|n| n.parse().ok())
            .map(Some)
            .ok_or_else(|| Error::Invalid(format!("'{key}' needs an integer argument"))),
    }
}

/// Bare words, with `key N` pairs removed.
fn words(args: &[String]) -> Vec<&str> {
    let mut out = Vec::new();
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
            continue;
        }
        if matches!(a.as_str(), "cap" | "len" | "dim") {
            skip = true;
            continue;
        }
        out.push(a.as_str());
    }
    out
}

fn word<'a>(args: &'a [String], k: usize, default: &'a str) -> &'a str {
    words(args).get(k).copied().unwrap_or(default)
}

fn one_item(item: Item) -> Findings {
    [item].into_iter().collect()
}

/// The findings of one check in one coefficient domain.
pub fn findings<C: Coeff>(ctx: &Ctx<C>, d: &CheckDecl, mid_cap: usize) -> Result<Findings> {
    let args: &[String] = match &d.body {
        CheckBody::Identity { lhs, rhs, .. } => {
            return Ok(one_item(ctx.eq_item(d.text.clone(), ctx.embed(lhs), ctx.embed(rhs))));
        }
        CheckBody::TensorIdentity { lhs, rhs, .. } => {
            return Ok(one_item(ctx.eq_tensor_item(d.text.clone(), ctx.embed_tensor(lhs), ctx.embed_tensor(rhs))));
        }
        CheckBody::Builtin { args } => args,
    };
    let cap = |default: usize| -> Result<usize> { Ok(arg_after(args, "cap")?.unwrap_or(default)) };
    match d.kind.as_str() {
        "homogeneity" => hopf::homogeneity(ctx, word(args, 0, "SU3")),
        "star-closure" => hopf::star_closure(ctx, word(args, 0, "SU3")),
        "star-involution" => hopf::star_involution(ctx, word(args, 0, "SU3")),
        "hopf-axioms" => hopf::hopf_axioms(ctx, word(args, 0, "SU3")),
        "antipode-inverse" => hopf::antipode_inverse(ctx, word(args, 0, "SU3")),
        "epimorphism" => hopf::epimorphism(ctx, word(args, 0, "pi"), words(args).contains(&"graded")),
        "torus-triangle" => hopf::triangle(ctx, word(args, 0, "pi"), word(args, 1, "pihat1"), word(args, 2, "pihat0")),
        "gauge-coaction" => hopf::gauge_coaction(ctx, word(args, 0, "SU3"), word(args, 1, "pihat0"), cap(2)?),
        "haar-invariance" => hopf::haar_invariance(ctx, word(args, 0, "U2"), cap(2)? as u32),
        "left-coideal" => hopf::left_coideal(ctx, connection::H, word(args, 0, "derived") == "printed"),
        "fibre-scalars" => hopf::fibre_scalars(ctx, word(args, 0, "pi")),
        "star-variant" => hopf::star_variant(ctx, if word(args, 0, "minor") == "printed" { StarVariant::Printed } else { StarVariant::Minor }),
        "lemma33" => connection::lemma_3_3(ctx),
        "bicolinearity" => connection::bicolinearity(ctx, cap(2)? as u32),
        "strong-connection" => connection::strong_connection(ctx, cap(mid_cap)?),
        "ell-formulas" => connection::ell_formulas(ctx),
        "sigma-nabla" => connection::sigma_nabla(ctx),
        "theorem34" | "cotensor" => {
            connection::theorem_3_4(ctx, arg_after(args, "len")?.unwrap_or(3), arg_after(args, "dim")?.unwrap_or(2))
        }
        "idempotent" => match words(args).first() {
            None => connection::idempotent_suite(ctx),
            Some(&"Q2bar") => Ok(connection::check_idempotent(ctx, &connection::closed_form(ctx, Comodule::V2, true)?)),
            Some(v) => {
                let m = Comodule::from_name(v).ok_or_else(|| Error::Invalid(format!("unknown comodule '{v}'")))?;
                Ok(connection::check_idempotent(ctx, &connection::build_idempotent(ctx, m)?))
            }
        },
        other => Err(Error::Unknown { kind: "check", name: other.to_string() }),
    }
}

fn guarded<C: Coeff>(ctx: &Ctx<C>, d: &CheckDecl, mid_cap: usize) -> Findings {
    findings(ctx, d, mid_cap).unwrap_or_else(|e| one_item(error_item(d.text.clone(), e)))
}

fn trace_of<C: Coeff>(ctx: &Ctx<C>, d: &CheckDecl) -> Option<ReductionTrace> {
    let CheckBody::Identity { alg, lhs, rhs } = &d.body else {
        return None;
    };
    let diff = ctx.embed(lhs).ok()?.sub(&ctx.embed(rhs).ok()?).ok()?;
    ctx.engine.get(alg).ok()?.trace_normal_form(&diff, 10_000).ok().map(|(_, t)| t)
}

/// Run one check in its mode: every q-point in specialized mode (worst
/// verdict wins), once over Q(q) in symbolic mode.
pub fn run_check(cx: &Contexts, d: &CheckDecl) -> CheckReport {
    let start = Instant::now();
    let mode = d.mode.unwrap_or(cx.config.mode);
    let mid_cap = cx.config.mid_cap();
    let mut per_point: Vec<(String, Findings)> = Vec::new();
    let mut trace = None;
    match mode {
        Mode::Symbolic => {
            let f = match cx.symbolic() {
                Ok(ctx) => {
                    if cx.config.trace {
                        trace = trace_of(ctx, d);
                    }
                    guarded(ctx, d, mid_cap)
                }
                Err(e) => one_item(error_item(d.text.clone(), e)),
            };
            per_point.push(("q".to_string(), f));
        }
        Mode::Specialized => {
            for (k, p) in cx.points.iter().enumerate() {
                let f = match cx.specialized(k) {
                    Ok(ctx) => {
                        if cx.config.trace && k == 0 {
                            trace = trace_of(ctx, d);
                        }
                        guarded(ctx, d, mid_cap)
                    }
                    Err(e) => one_item(error_item(d.text.clone(), e)),
                };
                per_point.push((format!("q={p}"), f));
            }
        }
    }
    let verdict = per_point.iter().fold(Verdict::Pass, |v, (_, f)| v.and(f.verdict()));
    let mut failures = Vec::new();
    for (p, f) in &per_point {
        for i in f.failures() {
            failures.push(Item { label: format!("{p}: {}", i.label), ..i.clone() });
        }
    }
    let residue = per_point
        .iter()
        .find_map(|(p, f)| f.first_failure().map(|i| (p, i)))
        .filter(|_| verdict != Verdict::Pass)
        .map(|(p, i)| format!("{p}: {}: {}", i.label, i.residue.clone().unwrap_or_default()));
    let count = |v| per_point.iter().map(|(_, f)| f.count(v)).sum();
    CheckReport {
        name: d.text.clone(),
        kind: d.kind.clone(),
        anchor: d.anchor.clone(),
        line: d.line,
        mode,
        points: cx.point_names(mode),
        verdict,
        residue,
        items: per_point.iter().map(|(_, f)| f.items.len()).sum(),
        failed: count(Verdict::Fail),
        undecided: count(Verdict::Undecided),
        failures,
        trace,
        wall_ms: start.elapsed().as_secs_f64() * 1000.0,
        findings: per_point,
    }
}

/// Run checks in order. Independent checks run concurrently; the report
/// keeps script order.
pub fn run_checks(universe: Arc<Universe>, name: &str, checks: &[&CheckDecl], config: RunConfig) -> Report {
    let start = Instant::now();
    let cx = Contexts::new(universe, config);
    let reports = crate::par::map(checks.to_vec(), |d| run_check(&cx, d));
    Report {
        suite: name.to_string(),
        seed: cx.config.seed,
        mode: cx.config.mode,
        points: cx.point_names(cx.config.mode),
        verdict: reports.iter().fold(Verdict::Pass, |v, c| v.and(c.verdict)),
        checks: reports,
        wall_ms: start.elapsed().as_secs_f64() * 1000.0,
    }
}

/// Parse `text` on top of the standard universe and run `suite` (all
/// checks when `None`).
pub fn run_script(text: &str, suite: Option<&str>, config: RunConfig) -> Result<Report> {
    let base = crate::presentations::standard_universe()?;
    let script = crate::dsl::parse_with(text, base)?;
    let (name, checks): (String, Vec<&CheckDecl>) = match suite {
        Some(s) => (s.to_string(), script.suite(s)?.checks.iter().collect()),
        None => ("all".to_string(), script.all_checks()),
    };
    Ok(run_checks(Arc::new(script.universe.clone()), &name, &checks, config))
}

/// A universe with one relation coefficient perturbed.
pub struct Mutant {
    pub label: String,
    pub universe: Universe,
}

/// Every single-coefficient mutant `c(q) -> c(q^2)` of the relations of
/// `algs`, skipping coefficients that do not involve q.
pub fn coefficient_mutants(u: &Universe, algs: &[&str]) -> Result<Vec<Mutant>> {
    let mut out = Vec::new();
    for alg in algs {
        let p = u.pres(alg)?;
        for (i, r) in p.relations.iter().enumerate() {
            for (w, c) in r.elem.terms() {
                let c2 = c.substitute_q_power(2);
                if c2 == *c {
                    continue;
                }
                let mut e = r.elem.clone();
                e.add_term(w.clone(), c2.sub(c));
                out.push(Mutant {
                    label: format!("{alg}.{}: {} at {} -> {}", r.label, c, crate::freealg::format_word(w, p.names()), c2),
                    universe: u.with_relation(alg, i, e)?,
                });
            }
        }
    }
    Ok(out)
}

/// Run `checks` in order on `universe` and stop at the first failing one.
pub fn first_failing(universe: Universe, checks: &[&CheckDecl], config: RunConfig) -> Option<CheckReport> {
    let cx = Contexts::new(Arc::new(universe), config);
    checks.iter().map(|d| run_check(&cx, d)).find(|r| r.verdict == Verdict::Fail)
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOY: &str = "
check identity alpha.gamma == q*gamma.alpha mod U2 anchor \"qmatrix\"
check identity alpha.gamma == gamma.alpha mod U2
check identity u.u* == 1 mod U2 mode symbolic
";

    #[test]
    fn identities_in_both_modes() {
        let r = run_script(TOY, None, RunConfig::default()).unwrap();
        let v: Vec<Verdict> = r.checks.iter().map(|c| c.verdict).collect();
        assert_eq!(v, [Verdict::Pass, Verdict::Fail, Verdict::Pass]);
        assert_eq!(r.checks[0].points.len(), 3);
        assert_eq!(r.checks[2].points, ["q"]);
        assert_eq!(r.checks[0].anchor, "qmatrix");
        assert!(r.checks[1].residue.as_deref().unwrap().starts_with("q="));
        assert_eq!(r.verdict.exit_code(), 1);
    }

    #[test]
    fn reports_are_deterministic_apart_from_timing() {
        let strip = |r: &Report| {
            let mut v: Vec<serde_json::Value> =
                r.json_lines().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
            for o in &mut v {
                o.as_object_mut().unwrap().remove("wall_ms");
            }
            v
        };
        let cfg = RunConfig { trace: true, ..RunConfig::default() };
        let a = run_script(TOY, None, cfg.clone()).unwrap();
        let b = run_script(TOY, None, cfg).unwrap();
        assert_eq!(strip(&a), strip(&b));
        assert!(a.checks[0].trace.as_ref().unwrap().fixpoint);
    }

    #[test]
    fn identity_without_mod_parses_then_fails() {
        let r = run_script("check identity u11*u12 - u12*u11 == 0\n", None, RunConfig::default()).unwrap();
        assert_eq!(r.checks[0].verdict, Verdict::Fail);
        let r = run_script("check identity u11*u12 - q*u12*u11 == 0\n", None, RunConfig::default()).unwrap();
        assert_eq!(r.checks[0].verdict, Verdict::Pass);
    }

    #[test]
    fn mutant_is_killed() {
        let u = crate::presentations::standard_universe().unwrap();
        let ms = coefficient_mutants(&u, &["U2"]).unwrap();
        let m = ms.into_iter().find(|m| m.label.starts_with("U2.su21a:")).unwrap();
        let script = crate::dsl::parse_with("check hopf-axioms U2\n", u).unwrap();
        let checks = script.all_checks();
        let cfg = RunConfig { qpoints: 1, ..RunConfig::default() };
        let base = first_failing(script.universe.clone(), &checks, cfg.clone());
        assert!(base.is_none());
        let r = first_failing(m.universe, &checks, cfg).unwrap();
        assert!(r.residue.is_some());
    }

    #[test]
    fn cap_surfaces_as_undecided() {
        let text = "check homogeneity SU3\n";
        let cfg = RunConfig { cap: Some(1), qpoints: 1, ..RunConfig::default() };
        let r = run_script(text, None, cfg).unwrap();
        assert_ne!(r.verdict, Verdict::Pass);
    }
}
