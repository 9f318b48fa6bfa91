//! Acceptance criteria 1-11, one line each. Runs the shipped suite in
//! specialized and symbolic mode, the oracle cross-check and the mutation
//! sweep. A criterion listed in `KNOWN` fails because the claim it checks
//! is false as printed; any other failure makes this test fail.

use qhopf::dsl::{self, CheckDecl, Mode};
use qhopf::normalform::{oracle_agreement, Engine, Limits};
use qhopf::presentations::standard_universe;
use qhopf::report::{Item, Verdict};
use qhopf::scalars::sample_points;
use qhopf::suite::{coefficient_mutants, first_failing, run_checks, Report, RunConfig};
use std::sync::Arc;
use std::time::Instant;

const SCRIPT: &str = include_str!("../data/full.qh");

/// Criteria that fail on the paper's own statements.
const KNOWN: &[(usize, &str)] = &[
    (5, "j is not bicolinear on words with k >= 1 and two further nonzero exponents"),
    (6, "Eq. 5c-d fail on products with gamma gamma*; fm.l.su2 prints l(alpha*), l(gamma*) with factors swapped"),
    (9, "the displayed Q(V2) has block scales q^{2(3-j)}/(1+q^2); the pipeline gives q^{2(j-2)}/(1+q^2)"),
];

struct Line {
    n: usize,
    ok: bool,
    detail: String,
}

fn checks<'a>(r: &'a Report, f: impl Fn(&str, &str) -> bool) -> Vec<&'a qhopf::suite::CheckReport> {
    r.checks.iter().filter(|c| f(&c.kind, &c.name)).collect()
}

fn all_pass(cs: &[&qhopf::suite::CheckReport]) -> (bool, String) {
    let bad: Vec<String> = cs.iter().filter(|c| c.verdict != Verdict::Pass).map(|c| format!("{} [{}]", c.name, c.verdict.word())).collect();
    let items: usize = cs.iter().map(|c| c.items).sum();
    if bad.is_empty() {
        (true, format!("{} checks, {} items", cs.len(), items))
    } else {
        (false, format!("{} of {} checks not passing: {}", bad.len(), cs.len(), bad.join("; ")))
    }
}

fn item_summary(items: &[&Item]) -> (bool, String) {
    let bad: Vec<&&Item> = items.iter().filter(|i| i.verdict != Verdict::Pass).collect();
    let mut first: Vec<String> = bad.iter().map(|i| i.label.clone()).collect();
    first.dedup();
    first.truncate(3);
    if bad.is_empty() {
        (true, format!("{} items", items.len()))
    } else {
        (false, format!("{} of {} items not passing, e.g. {}", bad.len(), items.len(), first.join("; ")))
    }
}

fn secs(ms: f64) -> String {
    format!("{:.1} s", ms / 1000.0)
}

fn main() {
    let total = Instant::now();
    let base = standard_universe().expect("standard universe");
    let script = dsl::parse_with(SCRIPT, base.clone()).expect("full parses");
    let suite: Vec<&CheckDecl> = script.suite("full").expect("suite").checks.iter().collect();
    let universe = Arc::new(script.universe.clone());
    let cfg = RunConfig::default();
    let spec = run_checks(universe.clone(), "full", &suite, cfg.clone());
    let sym = run_checks(universe.clone(), "full", &suite, RunConfig { mode: Mode::Symbolic, ..cfg.clone() });
    let mut lines = Vec::new();

    {
        let cs = checks(&spec, |k, n| matches!(k, "homogeneity" | "star-closure") && (n.ends_with("SU3") || n.ends_with("U2")));
        let (ok, d) = all_pass(&cs);
        let t: f64 = cs.iter().map(|c| c.wall_ms).sum();
        lines.push(Line { n: 1, ok: ok && cs.len() == 4 && t < 60_000.0, detail: format!("{d}, {}", secs(t)) });
    }
    {
        let cs = checks(&spec, |k, n| k == "hopf-axioms" && ["SU3", "U2", "SU2", "T2", "T1"].iter().any(|a| n.ends_with(&format!(" {a}"))));
        let (ok, d) = all_pass(&cs);
        let t: f64 = cs.iter().map(|c| c.wall_ms).sum();
        lines.push(Line { n: 2, ok: ok && cs.len() == 5 && t < 120_000.0, detail: format!("{d}, {}", secs(t)) });
    }
    {
        let cs = checks(&spec, |k, n| (k == "epimorphism" && n.contains(" pi graded")) || k == "torus-triangle" || (k == "identity" && n.ends_with("mod U2")));
        let (ok, d) = all_pass(&cs);
        lines.push(Line { n: 3, ok: ok && cs.len() >= 3, detail: d });
    }
    for (n, kinds) in [(4, &["lemma33"][..]), (5, &["bicolinearity"][..]), (7, &["theorem34", "cotensor"][..])] {
        let cs = checks(&spec, |k, _| kinds.contains(&k));
        let (ok, d) = all_pass(&cs);
        let d = match cs.first().and_then(|c| c.residue.as_ref()) {
            Some(r) if !ok => format!("{d}; first residue {}", r.chars().take(160).collect::<String>()),
            _ => d,
        };
        lines.push(Line { n, ok: ok && !cs.is_empty(), detail: d });
    }
    {
        let cs = checks(&spec, |k, _| matches!(k, "strong-connection" | "ell-formulas"));
        let items: Vec<&Item> = cs.iter().flat_map(|c| c.items_where(|_| true)).collect();
        let (ok, d) = item_summary(&items);
        let und = items.iter().filter(|i| i.verdict == Verdict::Undecided).count();
        lines.push(Line { n: 6, ok: ok && cs.len() == 2, detail: format!("{d} ({und} undecided by the Eq. 7 product cap)") });
    }
    {
        let cs = checks(&spec, |k, _| k == "sigma-nabla");
        let items: Vec<&Item> = cs.iter().flat_map(|c| c.items_where(|l| !l.starts_with("first legs of sigma"))).collect();
        let (ok, d) = item_summary(&items);
        let legs = cs.iter().flat_map(|c| c.items_where(|l| l.starts_with("first legs of sigma"))).filter(|i| i.verdict != Verdict::Pass).count();
        lines.push(Line { n: 8, ok: ok && !items.is_empty(), detail: format!("{d}; separately, {legs} first-leg CP2q membership items fail") });
    }
    {
        let cs = checks(&spec, |k, _| k == "idempotent");
        let items: Vec<&Item> = cs.iter().flat_map(|c| c.items_where(|_| true)).collect();
        let (ok, d) = item_summary(&items);
        lines.push(Line { n: 9, ok: ok && !items.is_empty(), detail: d });
    }
    {
        let t = Instant::now();
        let q0 = sample_points(cfg.seed, 1).remove(0);
        let eng = Engine::<num_rational::BigRational>::new(&universe.presentations, q0, Limits::default()).expect("engine");
        let mut samples = 0;
        let mut nf_zero = 0;
        let mut violations = Vec::new();
        for (alg, seed) in [("SU3", 101u64), ("U2", 202u64)] {
            let a = oracle_agreement(eng.get(alg).unwrap(), seed, 100, 4).expect("agreement");
            samples += a.samples;
            nf_zero += a.nf_zero;
            violations.extend(a.violations.into_iter().map(|v| format!("{alg}: {v}")));
        }
        let mismatched: Vec<String> = spec
            .checks
            .iter()
            .zip(&sym.checks)
            .filter(|(a, b)| a.verdict != b.verdict)
            .map(|(a, b)| format!("{} ({} vs {})", a.name, a.verdict.word(), b.verdict.word()))
            .collect();
        lines.push(Line {
            n: 10,
            ok: violations.is_empty() && mismatched.is_empty() && samples == 200,
            detail: format!(
                "{samples} random elements, {nf_zero} with zero normal form, {} oracle disagreements; {} checks, {} verdict mismatches between specialized ({}) and symbolic ({}){}",
                violations.len(),
                spec.checks.len(),
                mismatched.len(),
                secs(spec.wall_ms),
                secs(sym.wall_ms),
                if mismatched.is_empty() { String::new() } else { format!(": {}", mismatched.join("; ")) }
            ) + &format!(", oracle {}", secs(t.elapsed().as_secs_f64() * 1000.0)),
        });
    }
    {
        let t = Instant::now();
        let one = RunConfig { qpoints: 1, ..cfg.clone() };
        let mut passing: Vec<(f64, &CheckDecl)> =
            suite.iter().zip(&spec.checks).filter(|(_, r)| r.verdict == Verdict::Pass).map(|(d, r)| (r.wall_ms, *d)).collect();
        passing.sort_by(|a, b| a.0.total_cmp(&b.0));
        let order: Vec<&CheckDecl> = passing.iter().map(|p| p.1).collect();
        let algs: Vec<&str> = universe.presentations.keys().map(|s| s.as_str()).collect();
        let mutants = coefficient_mutants(&script.universe, &algs).expect("mutants");
        let n = mutants.len();
        let survivors: Vec<String> =
            mutants.into_iter().filter(|m| first_failing(m.universe.clone(), &order, one.clone()).is_none()).map(|m| m.label).collect();
        lines.push(Line {
            n: 11,
            ok: survivors.is_empty() && n > 0,
            detail: format!(
                "{n} single-coefficient mutants over {} passing checks, {} survived{} ({})",
                order.len(),
                survivors.len(),
                if survivors.is_empty() { String::new() } else { format!(": {}", survivors.join("; ")) },
                secs(t.elapsed().as_secs_f64() * 1000.0)
            ),
        });
    }

    lines.sort_by_key(|l| l.n);
    let mut unexpected = Vec::new();
    for l in &lines {
        let known = KNOWN.iter().find(|(n, _)| *n == l.n);
        let tag = match (l.ok, known) {
            (true, _) => "PASS".to_string(),
            (false, Some((_, why))) => format!("FAIL (paper: {why})"),
            (false, None) => "FAIL".to_string(),
        };
        println!("criterion {:>2}: {tag} -- {}", l.n, l.detail);
        if !l.ok && known.is_none() {
            unexpected.push(l.n);
        }
        if l.ok && known.is_some() {
            println!("              note: criterion {} was expected to fail and now passes", l.n);
        }
    }
    println!("acceptance: {} of {} criteria pass ({})", lines.iter().filter(|l| l.ok).count(), lines.len(), secs(total.elapsed().as_secs_f64() * 1000.0));
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
