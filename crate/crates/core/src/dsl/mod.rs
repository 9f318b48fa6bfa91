//! The declaration language. Line oriented; `#` starts a comment.
//!
//! ```text
//! script       = { declaration | check | blank } ;
//! declaration  = presentation | map | hopf | haar | suite ;
//! presentation = "presentation" NAME NL
//!                { "order" ("deglex" | "weighted" | "pbw") NL
//!                | "gen" GEN ":" "(" INT "," INT ")" [ "weight" INT ] NL
//!                | "star" GEN "->" expr NL
//!                | "rel" [ LABEL ":" ] expr NL }
//!                "end" ;
//! map          = "map" NAME ":" NAME "->" NAME { "(x)" NAME } [ "hom" | "antihom" ] NL
//!                { GEN "->" expr NL } "end" ;
//! hopf         = "hopf" NAME NL
//!                { ("coproduct" | "antipode") GEN "->" expr NL
//!                | "counit" GEN "->" scalar NL } "end" ;
//! haar         = "haar" NAME NL { "family" expr "->" template NL } "end" ;
//! suite        = "suite" NAME NL { check } "end" ;
//! check        = "check" KIND { arg } [ "mode" ("specialized" | "symbolic") ]
//!                [ "anchor" STRING ] NL ;
//!     KIND "identity":        expr "==" expr [ "mod" NAME ]
//!     KIND "tensor-identity": expr "==" expr "in" NAME { "(x)" NAME }
//!     other KINDs take bare word / integer arguments.
//!
//! expr     = [ "+" | "-" ] tterm { ("+" | "-") tterm } ;
//! tterm    = product { ("⊗" | "(x)") product } ;
//! product  = power { ("*" | "." | "/") power } ;
//! power    = atom [ "^" ( [ "-" ] INT | "(" intexpr ")" ) ] ;
//! atom     = INT | "q" | GEN | "(" expr ")" | "star" "(" expr ")"
//!          | MAP "(" expr ")" | "Delta_" NAME "(" expr ")" | "S_" NAME "(" expr ")" ;
//! template = scalar expression in q with exponents that may use n ;
//! ```
//!
//! A generator name may end in `*` (`alpha*`). A `*` directly after a name is
//! read as part of the name unless the next non-blank character starts an
//! operand, so `alpha*gamma` is a product and `gamma*.u*` is `γ*·u*`.

pub mod expr;
pub mod lexer;
mod serialize;

pub use expr::{parse_element, parse_tensor, Scope};
pub use serialize::serialize_universe;

use crate::error::{Error, Result};
use crate::freealg::{AlgName, Element, Image, MapKind, MapSpec, TensorElement, Word};
use crate::presentations::{DeclKind, HaarData, HaarFamily, HopfData, OrderKind, Presentation, Relation, Universe};
use crate::scalars::Scalar;
use lexer::{lex, Tok, Token};
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Specialized,
    Symbolic,
}

impl Mode {
    pub fn keyword(self) -> &'static str {
        match self {
            Mode::Specialized => "specialized",
            Mode::Symbolic => "symbolic",
        }
    }
}

#[derive(Clone, Debug)]
pub enum CheckBody {
    Identity { alg: String, lhs: Element<Scalar>, rhs: Element<Scalar> },
    TensorIdentity { legs: Vec<String>, lhs: TensorElement<Scalar>, rhs: TensorElement<Scalar> },
    Builtin { args: Vec<String> },
}

#[derive(Clone, Debug)]
pub struct CheckDecl {
    pub kind: String,
    pub body: CheckBody,
    pub mode: Option<Mode>,
    pub anchor: String,
    pub line: usize,
    /// Source text of the check, used as its name in reports.
    pub text: String,
}

#[derive(Clone, Debug, Default)]
pub struct Suite {
    pub name: String,
    pub checks: Vec<CheckDecl>,
}

#[derive(Clone, Debug, Default)]
pub struct Script {
    pub universe: Universe,
    pub suites: Vec<Suite>,
}

impl Script {
    pub fn suite(&self, name: &str) -> Result<&Suite> {
        self.suites
            .iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Error::Unknown { kind: "suite", name: name.to_string() })
    }

    /// All checks, in order: top-level checks form the suite `main`.
    pub fn all_checks(&self) -> Vec<&CheckDecl> {
        self.suites.iter().flat_map(|s| s.checks.iter()).collect()
    }
}

/// Built-in check kinds and their argument syntax.
pub const BUILTIN_CHECKS: &[(&str, &str)] = &[
    ("homogeneity", "ALG"),
    ("star-closure", "ALG"),
    ("star-involution", "ALG"),
    ("hopf-axioms", "ALG"),
    ("antipode-inverse", "ALG"),
    ("epimorphism", "MAP [graded]"),
    ("torus-triangle", "[OUTER INNER DIRECT]"),
    ("gauge-coaction", "[ALG MAP] [cap N]"),
    ("haar-invariance", "ALG [cap N]"),
    ("left-coideal", "[derived|printed]"),
    ("fibre-scalars", "[MAP]"),
    ("star-variant", "[minor|printed]"),
    ("lemma33", ""),
    ("bicolinearity", "[cap N]"),
    ("strong-connection", "[cap N]"),
    ("ell-formulas", ""),
    ("theorem34", "[len N] [dim N]"),
    ("cotensor", "[len N] [dim N]"),
    ("sigma-nabla", ""),
    ("idempotent", "[V1|Vminus1|V2|Q2bar]"),
];

/// Parse a script.
pub fn parse(text: &str) -> Result<Script> {
    parse_with(text, Universe::default())
}

/// Parse a script on top of existing declarations.
pub fn parse_with(text: &str, base: Universe) -> Result<Script> {
    let mut st = State { script: Script { universe: base, suites: Vec::new() }, lines: text.lines().collect(), i: 0, pending_error: None };
    st.run()?;
    Ok(st.script)
}

struct State<'a> {
    script: Script,
    lines: Vec<&'a str>,
    i: usize,
    pending_error: Option<Error>,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::Syntax { line, col, msg: msg.into() }
}

fn ident(t: &Token, line: usize, what: &str) -> Result<String> {
    match &t.tok {
        Tok::Ident(s) => Ok(s.clone()),
        _ => Err(syntax(line, t.col, format!("expected {what}"))),
    }
}

/// Index of the first top-level token matching `pred`.
fn split_at_tok(toks: &[Token], pred: impl Fn(&Tok) -> bool) -> Option<usize> {
    let mut depth = 0i32;
    for (k, t) in toks.iter().enumerate() {
        match t.tok {
            Tok::LParen => depth += 1,
            Tok::RParen => depth -= 1,
            _ => {}
        }
        if depth == 0 && pred(&t.tok) {
            return Some(k);
        }
    }
    None
}

impl<'a> State<'a> {
    fn next_line(&mut self) -> Option<(usize, &'a str, Vec<Token>)> {
        while self.i < self.lines.len() {
            let n = self.i + 1;
            let text = self.lines[self.i];
            self.i += 1;
            match lex(text, n) {
                Ok(toks) if toks.is_empty() => continue,
                Ok(toks) => return Some((n, text, toks)),
                Err(e) => {
                    self.pending_error = Some(e);
                    return Some((n, text, Vec::new()));
                }
            }
        }
        None
    }

    fn run(&mut self) -> Result<()> {
        let mut main = Suite { name: "main".into(), checks: Vec::new() };
        while let Some((n, text, toks)) = self.next_line() {
            self.take_error()?;
            let head = ident(&toks[0], n, "a declaration keyword")?;
            match head.as_str() {
                "presentation" => self.presentation(n, &toks)?,
                "map" => self.map(n, &toks)?,
                "hopf" => self.hopf(n, &toks)?,
                "haar" => self.haar(n, &toks)?,
                "suite" => {
                    let name = toks.get(1).ok_or_else(|| syntax(n, text.len() + 1, "expected suite name"))?;
                    let name = ident(name, n, "suite name")?;
                    let mut suite = Suite { name, checks: Vec::new() };
                    loop {
                        let Some((m, t2, toks2)) = self.next_line() else {
                            return Err(syntax(n, 1, "suite without 'end'"));
                        };
                        self.take_error()?;
                        if matches!(&toks2[0].tok, Tok::Ident(s) if s == "end") {
                            break;
                        }
                        suite.checks.push(self.check(m, t2, &toks2)?);
                    }
                    self.script.suites.push(suite);
                }
                "check" => main.checks.push(self.check(n, text, &toks)?),
                _ => return Err(syntax(n, toks[0].col, format!("unknown declaration '{head}'"))),
            }
        }
        if !main.checks.is_empty() {
            self.script.suites.insert(0, main);
        }
        Ok(())
    }

    fn take_error(&mut self) -> Result<()> {
        match self.pending_error.take() {
            Some(e) => Err(e),
            None => Ok(()),
        }
    }

    /// Lines of a block up to `end`.
    fn block(&mut self, start: usize) -> Result<Vec<(usize, &'a str, Vec<Token>)>> {
        let mut out = Vec::new();
        loop {
            let Some((n, text, toks)) = self.next_line() else {
                return Err(syntax(start, 1, "block without 'end'"));
            };
            self.take_error()?;
            if matches!(&toks[0].tok, Tok::Ident(s) if s == "end") {
                return Ok(out);
            }
            out.push((n, text, toks));
        }
    }

    fn presentation(&mut self, n: usize, toks: &[Token]) -> Result<()> {
        let name = ident(toks.get(1).ok_or_else(|| syntax(n, 13, "expected presentation name"))?, n, "name")?;
        if self.script.universe.presentations.contains_key(&name) {
            return Err(syntax(n, toks[1].col, format!("presentation {name} already declared")));
        }
        let mut p = Presentation::new(&name);
        let mut stars: Vec<(usize, &str, Vec<Token>)> = Vec::new();
        let mut rels: Vec<(usize, &str, Vec<Token>)> = Vec::new();
        for (m, text, t) in self.block(n)? {
            let kw = ident(&t[0], m, "keyword")?;
            match kw.as_str() {
                "order" => {
                    let k = ident(t.get(1).ok_or_else(|| syntax(m, text.len() + 1, "expected order"))?, m, "order")?;
                    p.order = OrderKind::from_keyword(&k)
                        .ok_or_else(|| syntax(m, t[1].col, format!("unknown order '{k}'")))?;
                }
                "gen" => {
                    let g = ident(t.get(1).ok_or_else(|| syntax(m, text.len() + 1, "expected generator"))?, m, "generator")?;
                    if g == "q" || g == "n" || g == "star" {
                        return Err(syntax(m, t[1].col, format!("'{g}' is reserved")));
                    }
                    if p.letter(&g).is_some() {
                        return Err(syntax(m, t[1].col, format!("generator {g} declared twice")));
                    }
                    let nums = parse_degree(&t[2..], m)?;
                    p.gens.push(g);
                    p.degrees.push((nums.0, nums.1));
                    p.weights.push(nums.2);
                    p.star.push(None);
                }
                "star" => stars.push((m, text, t)),
                "rel" => rels.push((m, text, t)),
                _ => return Err(syntax(m, t[0].col, format!("unknown presentation entry '{kw}'"))),
            }
        }
        if p.gens.len() > 250 {
            return Err(syntax(n, 1, "too many generators"));
        }
        for (m, _text, t) in &stars {
            let g = ident(t.get(1).ok_or_else(|| syntax(*m, 5, "expected generator"))?, *m, "generator")?;
            let l = p.letter(&g).ok_or_else(|| syntax(*m, t[1].col, format!("unknown generator {g}")))?;
            if t.get(2).map(|x| &x.tok) != Some(&Tok::Arrow) {
                return Err(syntax(*m, t.get(2).map(|x| x.col).unwrap_or(1), "expected '->'"));
            }
            let scope = Scope { universe: &self.script.universe, pending: Some(&p) };
            let e = parse_tokens_element(&scope, &p.name, &t[3..], *m)?;
            p.star[l as usize] = Some(e);
        }
        for (m, text, t) in &rels {
            let (label, body_start) = match split_at_tok(t, |x| *x == Tok::Colon) {
                Some(k) => {
                    let start = t[1].col;
                    let end = t[k].col;
                    let chars: Vec<char> = text.chars().collect();
                    (chars[start - 1..end - 1].iter().collect::<String>().trim().to_string(), k + 1)
                }
                None => (format!("r{}", p.relations.len() + 1), 1),
            };
            let scope = Scope { universe: &self.script.universe, pending: Some(&p) };
            let e = parse_tokens_element(&scope, &p.name, &t[body_start..], *m)?;
            p.relations.push(Relation { label, elem: e });
        }
        self.script.universe.order.push((DeclKind::Presentation, name.clone()));
        self.script.universe.presentations.insert(name, Arc::new(p));
        Ok(())
    }

    fn map(&mut self, n: usize, toks: &[Token]) -> Result<()> {
        // map NAME : SRC -> TGT {(x) TGT} [hom|antihom]
        let name = ident(toks.get(1).ok_or_else(|| syntax(n, 4, "expected map name"))?, n, "map name")?;
        if toks.get(2).map(|t| &t.tok) != Some(&Tok::Colon) {
            return Err(syntax(n, toks.get(2).map(|t| t.col).unwrap_or(1), "expected ':'"));
        }
        let src = ident(toks.get(3).ok_or_else(|| syntax(n, 1, "expected source"))?, n, "source")?;
        if toks.get(4).map(|t| &t.tok) != Some(&Tok::Arrow) {
            return Err(syntax(n, toks.get(4).map(|t| t.col).unwrap_or(1), "expected '->'"));
        }
        let mut k = 5;
        let mut targets = vec![ident(toks.get(k).ok_or_else(|| syntax(n, 1, "expected target"))?, n, "target")?];
        k += 1;
        while toks.get(k).map(|t| &t.tok) == Some(&Tok::Tensor) {
            targets.push(ident(toks.get(k + 1).ok_or_else(|| syntax(n, 1, "expected target"))?, n, "target")?);
            k += 2;
        }
        let kind = match toks.get(k) {
            None => MapKind::AlgebraHom,
            Some(t) => match ident(t, n, "map kind")?.as_str() {
                "hom" => MapKind::AlgebraHom,
                "antihom" => MapKind::AntiHom,
                other => return Err(syntax(n, t.col, format!("unknown map kind '{other}'"))),
            },
        };
        let body = self.block(n)?;
        let spec = self.image_table(&name, &src, &targets, kind, &body, None)?;
        self.script.universe.order.push((DeclKind::Map, name.clone()));
        self.script.universe.maps.insert(name, spec);
        Ok(())
    }

    /// Parse `GEN -> expr` lines (optionally prefixed by `prefix`).
    fn image_table(
        &self,
        name: &str,
        src: &str,
        targets: &[String],
        kind: MapKind,
        body: &[(usize, &str, Vec<Token>)],
        prefix: Option<&str>,
    ) -> Result<MapSpec<Scalar>> {
        let u = &self.script.universe;
        let p = u.pres(src).map_err(|e| syntax(body.first().map(|b| b.0).unwrap_or(0), 1, e.to_string()))?;
        for t in targets {
            u.pres(t).map_err(|e| syntax(body.first().map(|b| b.0).unwrap_or(0), 1, e.to_string()))?;
        }
        let mut images: Vec<Option<Image<Scalar>>> = vec![None; p.gens.len()];
        let legs: Vec<AlgName> = targets.iter().map(|t| Arc::from(t.as_str())).collect();
        for (m, _text, t) in body {
            let off = usize::from(prefix.is_some());
            let g = ident(&t[off], *m, "generator")?;
            let l = p.letter(&g).ok_or_else(|| syntax(*m, t[off].col, format!("unknown generator {g} of {src}")))?;
            if t.get(off + 1).map(|x| &x.tok) != Some(&Tok::Arrow) {
                return Err(syntax(*m, t.get(off + 1).map(|x| x.col).unwrap_or(1), "expected '->'"));
            }
            let scope = Scope { universe: u, pending: None };
            let toks = &t[off + 2..];
            let img = if legs.len() == 1 {
                Image::Elem(parse_tokens_element(&scope, &legs[0], toks, *m)?)
            } else {
                let mut pr = expr::Parser::new(&scope, toks, *m, legs.clone());
                let te = pr.tensor()?;
                if !pr.at_end() {
                    return Err(syntax(*m, toks[pr.pos()].col, "unexpected trailing input"));
                }
                Image::Tensor(te)
            };
            images[l as usize] = Some(img);
        }
        Ok(MapSpec {
            name: name.to_string(),
            source: p.name.clone(),
            targets: legs,
            kind,
            images,
            source_names: p.gens.clone(),
        })
    }

    fn hopf(&mut self, n: usize, toks: &[Token]) -> Result<()> {
        let alg = ident(toks.get(1).ok_or_else(|| syntax(n, 6, "expected algebra"))?, n, "algebra")?;
        let p = self.script.universe.pres(&alg).map_err(|e| syntax(n, toks[1].col, e.to_string()))?.clone();
        let body = self.block(n)?;
        let mut cop = Vec::new();
        let mut ant = Vec::new();
        let mut counit: Vec<Option<Scalar>> = vec![None; p.gens.len()];
        for line in body {
            let kw = ident(&line.2[0], line.0, "keyword")?;
            match kw.as_str() {
                "coproduct" => cop.push(line),
                "antipode" => ant.push(line),
                "counit" => {
                    let (m, _text, t) = &line;
                    let g = ident(t.get(1).ok_or_else(|| syntax(*m, 7, "expected generator"))?, *m, "generator")?;
                    let l = p.letter(&g).ok_or_else(|| syntax(*m, t[1].col, format!("unknown generator {g}")))?;
                    let scope = Scope { universe: &self.script.universe, pending: None };
                    let e = parse_tokens_element(&scope, &p.name, &t[3..], *m)?;
                    let s = e.as_scalar().ok_or_else(|| syntax(*m, t[3].col, "counit value must be a scalar"))?;
                    counit[l as usize] = Some(s);
                }
                _ => return Err(syntax(line.0, line.2[0].col, format!("unknown hopf entry '{kw}'"))),
            }
        }
        let coproduct = self.image_table(
            &format!("Delta_{alg}"),
            &alg,
            &[alg.clone(), alg.clone()],
            MapKind::AlgebraHom,
            &cop,
            Some("coproduct"),
        )?;
        let antipode = if ant.is_empty() {
            None
        } else {
            Some(self.image_table(&format!("S_{alg}"), &alg, &[alg.clone()], MapKind::AntiHom, &ant, Some("antipode"))?)
        };
        self.script.universe.order.push((DeclKind::Hopf, alg.clone()));
        self.script.universe.hopf.insert(alg.clone(), HopfData { alg: p.name.clone(), coproduct, counit, antipode });
        Ok(())
    }

    fn haar(&mut self, n: usize, toks: &[Token]) -> Result<()> {
        let alg = ident(toks.get(1).ok_or_else(|| syntax(n, 6, "expected algebra"))?, n, "algebra")?;
        let p = self.script.universe.pres(&alg).map_err(|e| syntax(n, toks[1].col, e.to_string()))?.clone();
        let mut families = Vec::new();
        for (m, text, t) in self.block(n)? {
            let kw = ident(&t[0], m, "keyword")?;
            if kw != "family" {
                return Err(syntax(m, t[0].col, format!("unknown haar entry '{kw}'")));
            }
            let arrow = split_at_tok(&t, |x| *x == Tok::Arrow).ok_or_else(|| syntax(m, 1, "expected '->'"))?;
            let scope = Scope { universe: &self.script.universe, pending: None };
            let base = parse_tokens_element(&scope, &p.name, &t[1..arrow], m)?;
            if base.len() != 1 || base.terms().values().next().is_some_and(|c| !c.is_one()) {
                return Err(syntax(m, t[1].col, "family base must be a single word"));
            }
            let w: Word = base.terms().keys().next().unwrap().clone();
            let rest = &t[arrow + 1..];
            let mut pr = expr::Parser::new(&scope, rest, m, vec![p.name.clone()]);
            let value = expr::scalar_template(&mut pr)?;
            if !pr.at_end() {
                return Err(syntax(m, rest[pr.pos()].col, "unexpected trailing input"));
            }
            let src_start = rest.first().map(|x| x.col).unwrap_or(1);
            let chars: Vec<char> = text.chars().collect();
            let source: String = chars[src_start - 1..].iter().collect::<String>().trim().to_string();
            families.push(HaarFamily { base: w, value, source });
        }
        self.script.universe.order.push((DeclKind::Haar, alg.clone()));
        self.script.universe.haar.insert(alg, HaarData { alg: p.name.clone(), families });
        Ok(())
    }

    fn check(&self, n: usize, text: &str, toks: &[Token]) -> Result<CheckDecl> {
        let kw = ident(&toks[0], n, "'check'")?;
        if kw != "check" {
            return Err(syntax(n, toks[0].col, "expected 'check'"));
        }
        let kind = ident(toks.get(1).ok_or_else(|| syntax(n, text.len() + 1, "expected check kind"))?, n, "check kind")?;
        // strip trailing `mode X` and `anchor "..."`
        let mut end = toks.len();
        let mut mode = None;
        let mut anchor = String::new();
        loop {
            if end >= 4 {
                if let (Tok::Ident(a), Tok::Str(s)) = (&toks[end - 2].tok, &toks[end - 1].tok) {
                    if a == "anchor" {
                        anchor = s.clone();
                        end -= 2;
                        continue;
                    }
                }
            }
            if end >= 4 {
                if let (Tok::Ident(a), Tok::Ident(m)) = (&toks[end - 2].tok, &toks[end - 1].tok) {
                    if a == "mode" {
                        mode = Some(match m.as_str() {
                            "symbolic" => Mode::Symbolic,
                            "specialized" => Mode::Specialized,
                            _ => return Err(syntax(n, toks[end - 1].col, format!("unknown mode '{m}'"))),
                        });
                        end -= 2;
                        continue;
                    }
                }
            }
            break;
        }
        let args = &toks[2..end];
        let u = &self.script.universe;
        let scope = Scope { universe: u, pending: None };
        let body = match kind.as_str() {
            "identity" => {
                let eq = split_at_tok(args, |t| *t == Tok::EqEq).ok_or_else(|| syntax(n, toks[1].col, "expected '=='"))?;
                match split_at_tok(args, |t| matches!(t, Tok::Ident(s) if s == "mod")) {
                    Some(md) => {
                        if md < eq || md + 2 != args.len() {
                            return Err(syntax(n, args[md].col, "expected 'mod ALG' at the end"));
                        }
                        let alg = ident(&args[md + 1], n, "algebra")?;
                        u.pres(&alg).map_err(|e| syntax(n, args[md + 1].col, e.to_string()))?;
                        let lhs = parse_tokens_element(&scope, &alg, &args[..eq], n)?;
                        let rhs = parse_tokens_element(&scope, &alg, &args[eq + 1..md], n)?;
                        CheckBody::Identity { alg, lhs, rhs }
                    }
                    // no `mod`: the first declared presentation in which both sides parse
                    None => u
                        .order
                        .iter()
                        .filter(|(k, _)| *k == DeclKind::Presentation)
                        .find_map(|(_, alg)| {
                            let lhs = parse_tokens_element(&scope, alg, &args[..eq], n).ok()?;
                            let rhs = parse_tokens_element(&scope, alg, &args[eq + 1..], n).ok()?;
                            Some(CheckBody::Identity { alg: alg.clone(), lhs, rhs })
                        })
                        .ok_or_else(|| syntax(n, toks[1].col, "no declared algebra contains both sides; add 'mod ALG'"))?,
                }
            }
            "tensor-identity" => {
                let eq = split_at_tok(args, |t| *t == Tok::EqEq).ok_or_else(|| syntax(n, toks[1].col, "expected '=='"))?;
                let inn = split_at_tok(&args[eq..], |t| matches!(t, Tok::Ident(s) if s == "in"))
                    .map(|k| k + eq)
                    .ok_or_else(|| syntax(n, toks[1].col, "expected 'in ALG (x) ALG'"))?;
                let mut legs = Vec::new();
                let mut k = inn + 1;
                loop {
                    let l = ident(args.get(k).ok_or_else(|| syntax(n, text.len(), "expected algebra"))?, n, "algebra")?;
                    u.pres(&l).map_err(|e| syntax(n, args[k].col, e.to_string()))?;
                    legs.push(l);
                    k += 1;
                    if k >= args.len() {
                        break;
                    }
                    if args[k].tok != Tok::Tensor {
                        return Err(syntax(n, args[k].col, "expected '(x)'"));
                    }
                    k += 1;
                }
                let la: Vec<AlgName> = legs.iter().map(|l| Arc::from(l.as_str())).collect();
                let mut p1 = expr::Parser::new(&scope, &args[..eq], n, la.clone());
                let lhs = p1.tensor()?;
                let mut p2 = expr::Parser::new(&scope, &args[eq + 1..inn], n, la);
                let rhs = p2.tensor()?;
                CheckBody::TensorIdentity { legs, lhs, rhs }
            }
            other => {
                if !BUILTIN_CHECKS.iter().any(|(k, _)| *k == other) {
                    return Err(syntax(n, toks[1].col, format!("unknown check kind '{other}'")));
                }
                let mut out = Vec::new();
                for t in args {
                    out.push(match &t.tok {
                        Tok::Ident(s) => s.clone(),
                        Tok::Int(i) => i.to_string(),
                        _ => return Err(syntax(n, t.col, "expected a word or integer argument")),
                    });
                }
                CheckBody::Builtin { args: out }
            }
        };
        let body_text = text.trim();
        let body_text = body_text.split(" anchor ").next().unwrap_or(body_text);
        Ok(CheckDecl { kind, body, mode, anchor, line: n, text: body_text.trim_start_matches("check ").to_string() })
    }
}

fn parse_degree(t: &[Token], m: usize) -> Result<(i64, i64, u32)> {
    let col = t.first().map(|x| x.col).unwrap_or(1);
    let bad = || syntax(m, col, "expected ': (m,n) [weight w]'");
    let mut k = 0;
    let next = |k: &mut usize| -> Option<&Tok> {
        let x = t.get(*k).map(|x| &x.tok);
        *k += 1;
        x
    };
    if next(&mut k) != Some(&Tok::Colon) || next(&mut k) != Some(&Tok::LParen) {
        return Err(bad());
    }
    let int = |k: &mut usize| -> Result<i64> {
        let neg = if t.get(*k).map(|x| &x.tok) == Some(&Tok::Minus) {
            *k += 1;
            true
        } else {
            false
        };
        match t.get(*k).map(|x| &x.tok) {
            Some(Tok::Int(v)) => {
                *k += 1;
                let v = i64::try_from(v).map_err(|_| bad())?;
                Ok(if neg { -v } else { v })
            }
            _ => Err(bad()),
        }
    };
    let a = int(&mut k)?;
    if t.get(k).map(|x| &x.tok) != Some(&Tok::Comma) {
        return Err(bad());
    }
    k += 1;
    let b = int(&mut k)?;
    if t.get(k).map(|x| &x.tok) != Some(&Tok::RParen) {
        return Err(bad());
    }
    k += 1;
    let mut w = 1u32;
    if let Some(Tok::Ident(s)) = t.get(k).map(|x| &x.tok) {
        if s == "weight" {
            k += 1;
            w = int(&mut k)? as u32;
        }
    }
    if k != t.len() {
        return Err(syntax(m, t[k].col, "unexpected trailing input"));
    }
    Ok((a, b, w))
}

fn parse_tokens_element(scope: &Scope<'_>, alg: &str, toks: &[Token], line: usize) -> Result<Element<Scalar>> {
    if toks.is_empty() {
        return Err(syntax(line, 1, "expected an expression"));
    }
    let mut p = expr::Parser::new(scope, toks, line, vec![Arc::from(alg)]);
    let e = p.element()?;
    if !p.at_end() {
        return Err(syntax(line, toks[p.pos()].col, "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = "
presentation A
  order deglex
  gen x : (1,0)
  gen y : (0,1)
  star x -> x
  star y -> y
  rel comm: y*x - q*x*y
end
check identity y.x == q*x.y mod A anchor \"toy\"
";

    #[test]
    fn parses_presentation_and_check() {
        let s = parse(SMALL).unwrap();
        let a = s.universe.pres("A").unwrap();
        assert_eq!(a.gens, vec!["x", "y"]);
        assert_eq!(a.relations[0].label, "comm");
        assert_eq!(a.format(&a.relations[0].elem), "-q*x.y + y.x");
        let main = s.suite("main").unwrap();
        assert_eq!(main.checks.len(), 1);
        assert_eq!(main.checks[0].anchor, "toy");
    }

    #[test]
    fn empty_script_is_empty_suite() {
        let s = parse("").unwrap();
        assert!(s.suites.is_empty());
        assert!(s.universe.presentations.is_empty());
    }

    #[test]
    fn errors_carry_line_and_column() {
        let bad = "presentation A\n  gen x : (1,0)\n  rel x*zz\nend\n";
        match parse(bad) {
            Err(Error::Syntax { line, col, .. }) => {
                assert_eq!(line, 3);
                assert_eq!(col, 9);
            }
            other => panic!("{other:?}"),
        }
    }
}
