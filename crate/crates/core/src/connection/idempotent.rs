//! Idempotents for the modules associated to V¹, V⁻¹ and V² by the recipe
//! of Remark 1.5: `Q_{(i,a),(j,b)} = E(ℓ_a(e_ij) x_b)`.

use super::{A, H, PI};
use crate::error::{Error, Result};
use crate::freealg::Element;
use crate::hopf::{error_item, v_text, Ctx};
use crate::par;
use crate::presentations::{Membership, Subalgebra};
use crate::report::{Findings, Item};
use crate::scalars::{Coeff, Scalar};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Comodule {
    V1,
    Vminus1,
    V2,
}

impl Comodule {
    pub fn from_name(s: &str) -> Option<Self> {
        match s {
            "V1" => Some(Comodule::V1),
            "V-1" | "Vminus1" => Some(Comodule::Vminus1),
            "V2" => Some(Comodule::V2),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Comodule::V1 => "V1",
            Comodule::Vminus1 => "V-1",
            Comodule::V2 => "V2",
        }
    }

    /// Basis labels of V and the coidempotent matrix `e_ij` as text in H.
    fn coidempotents(self) -> (Vec<String>, Vec<Vec<String>>) {
        match self {
            Comodule::V1 => (vec!["1".into()], vec![vec!["u".into()]]),
            Comodule::Vminus1 => (vec!["1".into()], vec![vec!["u*".into()]]),
            Comodule::V2 => (
                vec!["2".into(), "3".into()],
                (2..=3).map(|i| (2..=3).map(|j| v_text(i, j).to_string()).collect()).collect(),
            ),
        }
    }

    /// The declared basis `{x_a}` of first tensorands, with labels.
    fn declared_basis(self) -> Vec<(String, Scalar, String)> {
        match self {
            Comodule::V1 => (1..=3).map(|a| (format!("{a}"), Scalar::one(), format!("star(u{a}1)"))).collect(),
            Comodule::Vminus1 => {
                (1..=3).map(|a| (format!("{a}"), Scalar::q_pow(a as i64 - 1), format!("u{a}1"))).collect()
            }
            Comodule::V2 => {
                let mut v = Vec::new();
                for a in 1..=3 {
                    for i in 2..=3 {
                        v.push((format!("{a}{i}"), Scalar::one(), format!("star(u{a}{i})")));
                    }
                }
                v
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IdempotentMatrix<C: Coeff> {
    pub name: String,
    pub labels: Vec<String>,
    #[serde(skip)]
    pub entries: Vec<Vec<Element<C>>>,
    pub sub: Subalgebra,
}

impl<C: Coeff> IdempotentMatrix<C> {
    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Entries as text, row by row.
    pub fn render(&self, ctx: &Ctx<C>) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|e| ctx.format(e)).collect()).collect()
    }

    pub fn to_json(&self, ctx: &Ctx<C>) -> serde_json::Value {
        serde_json::json!({
            "name": self.name,
            "labels": self.labels,
            "subalgebra": format!("{:?}", self.sub),
            "entries": self.render(ctx),
        })
    }
}

/// Coordinates of `f` in the span of `basis`, by elimination on the
/// normal-form coefficients.
fn solve_in_span<C: Coeff>(basis: &[Element<C>], f: &Element<C>) -> Option<Vec<C>> {
    let n = basis.len();
    let mut words: Vec<_> = basis.iter().flat_map(|b| b.terms().keys().cloned()).collect();
    words.extend(f.terms().keys().cloned());
    words.sort();
    words.dedup();
    // augmented rows: one per word, columns = basis coefficients, last = f
    let mut rows: Vec<Vec<C>> = words
        .iter()
        .map(|w| {
            let mut r: Vec<C> = basis.iter().map(|b| b.coeff(w)).collect();
            r.push(f.coeff(w));
            r
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r0 = 0;
    for col in 0..n {
        let Some(p) = (r0..rows.len()).find(|&r| !rows[r][col].is_zero()) else { continue };
        rows.swap(r0, p);
        let inv = rows[r0][col].inv()?;
        for c in 0..=n {
            rows[r0][c] = rows[r0][c].mul(&inv);
        }
        for r in 0..rows.len() {
            if r != r0 && !rows[r][col].is_zero() {
                let k = rows[r][col].clone();
                for c in 0..=n {
                    let v = rows[r][c].sub(&k.mul(&rows[r0][c]));
                    rows[r][c] = v;
                }
            }
        }
        pivots.push(col);
        r0 += 1;
    }
    if rows[r0..].iter().any(|r| !r[n].is_zero()) {
        return None;
    }
    let mut x = vec![C::zero(); n];
    for (r, &col) in pivots.iter().enumerate() {
        x[col] = rows[r][n].clone();
    }
    Some(x)
}

/// Run the recipe of Remark 1.5 for `v`.
pub fn build_idempotent<C: Coeff>(ctx: &Ctx<C>, v: Comodule) -> Result<IdempotentMatrix<C>> {
    let (vlabels, e) = v.coidempotents();
    let basis_decl = v.declared_basis();
    let xs: Vec<Element<C>> = basis_decl
        .iter()
        .map(|(_, c, t)| Ok(ctx.nf(&ctx.parse(A, t)?.scale(&ctx.scalar(c)?))?))
        .collect::<Result<_>>()?;
    let nv = vlabels.len();
    let nx = xs.len();
    // ℓ_a(e_ij) for every (i, j, a)
    let mut ell_a: Vec<Vec<Vec<Element<C>>>> = vec![vec![Vec::new(); nv]; nv];
    for i in 0..nv {
        for j in 0..nv {
            let h = ctx.parse(H, &e[i][j])?;
            let l = ctx.eval_ell(&h)?;
            let mut comps = vec![Element::zero(&ctx.alg(A)?); nx];
            for (key, first) in l.slice_leg(0) {
                let coords = solve_in_span(&xs, &first).ok_or_else(|| {
                    Error::Invalid(format!(
                        "first tensorand {} of l({}) is outside the declared basis of {}",
                        ctx.format(&first),
                        e[i][j],
                        v.name()
                    ))
                })?;
                let second = Element::word(&ctx.alg(A)?, key[0].clone());
                for (a, c) in coords.iter().enumerate() {
                    comps[a].add_assign_scaled(&second, c);
                }
            }
            ell_a[i][j] = comps;
        }
    }
    let mut labels = Vec::new();
    let mut index = Vec::new();
    for (i, vl) in vlabels.iter().enumerate() {
        for (a, (xl, _, _)) in basis_decl.iter().enumerate() {
            labels.push(format!("({vl},{xl})"));
            index.push((i, a));
        }
    }
    let cells: Vec<(usize, usize)> = (0..index.len()).flat_map(|r| (0..index.len()).map(move |c| (r, c))).collect();
    let vals = par::try_map(cells, |(r, c)| {
        let (i, a) = index[r];
        let (j, b) = index[c];
        ctx.nf(&ctx.averaging(&ctx.mul(&ell_a[i][j][a], &xs[b])?, PI)?)
    })?;
    let n = index.len();
    let entries = (0..n).map(|r| vals[r * n..(r + 1) * n].to_vec()).collect();
    Ok(IdempotentMatrix { name: format!("Q({}) by Remark 1.5", v.name()), labels, entries, sub: Subalgebra::CP2q })
}

/// The closed forms displayed in the paper: Eq. idem.1-dim, idem.1-dim.2,
/// idem.2-dim (`reduced = false`) and idem.2-dim.red (`reduced = true`).
pub fn closed_form<C: Coeff>(ctx: &Ctx<C>, v: Comodule, reduced: bool) -> Result<IdempotentMatrix<C>> {
    let an = ctx.alg(A)?;
    let qbar = |a: usize, b: usize| ctx.parse(A, &format!("u{a}2.star(u{b}2) + u{a}3.star(u{b}3)"));
    let (labels, entries): (Vec<String>, Vec<Vec<Element<C>>>) = match v {
        Comodule::V1 => (
            (1..=3).map(|a| a.to_string()).collect(),
            (1..=3).map(|a| (1..=3).map(|b| ctx.parse(A, &format!("u{a}1.star(u{b}1)"))).collect::<Result<_>>()).collect::<Result<_>>()?,
        ),
        Comodule::Vminus1 => (
            (1..=3).map(|a| a.to_string()).collect(),
            (1..=3)
                .map(|a| {
                    (1..=3)
                        .map(|b| {
                            let c = ctx.scalar(&Scalar::q_pow(a as i64 + b as i64 - 2))?;
                            Ok(ctx.parse(A, &format!("star(u{a}1).u{b}1"))?.scale(&c))
                        })
                        .collect::<Result<_>>()
                })
                .collect::<Result<_>>()?,
        ),
        Comodule::V2 if reduced => (
            (1..=3).map(|a| a.to_string()).collect(),
            (1..=3).map(|a| (1..=3).map(|b| qbar(a, b)).collect::<Result<_>>()).collect::<Result<_>>()?,
        ),
        Comodule::V2 => {
            let mut idx = Vec::new();
            for i in 2..=3usize {
                for a in 1..=3usize {
                    for k in 2..=3usize {
                        idx.push((i, a, k));
                    }
                }
            }
            let one_plus_q2 = Scalar::one().add(&Scalar::q_pow(2));
            let mut rows = Vec::new();
            for &(i, a, k) in &idx {
                let mut row = Vec::new();
                for &(j, b, l) in &idx {
                    if i == k && j == l {
                        let c = Scalar::q_pow(2 * (3 - j as i64)).div(&one_plus_q2).map_err(Error::from)?;
                        row.push(qbar(a, b)?.scale(&ctx.scalar(&c)?));
                    } else {
                        row.push(Element::zero(&an));
                    }
                }
                rows.push(row);
            }
            (idx.iter().map(|(i, a, k)| format!("({i},{a}{k})")).collect(), rows)
        }
    };
    let name = match (v, reduced) {
        (Comodule::V2, true) => "Qbar(V2) displayed".to_string(),
        _ => format!("Q({}) displayed", v.name()),
    };
    let entries = entries.into_iter().map(|r| r.into_iter().map(|e| ctx.nf(&e)).collect::<Result<_>>()).collect::<Result<_>>()?;
    Ok(IdempotentMatrix { name, labels, entries, sub: Subalgebra::CP2q })
}

fn matmul<C: Coeff>(ctx: &Ctx<C>, x: &IdempotentMatrix<C>, y: &IdempotentMatrix<C>) -> Result<Vec<Vec<Element<C>>>> {
    let n = x.size();
    let cells: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect();
    let vals = par::try_map(cells, |(r, c)| {
        let mut acc = Element::zero(&ctx.alg(A)?);
        for k in 0..n {
            if x.entries[r][k].is_zero() || y.entries[k][c].is_zero() {
                continue;
            }
            acc = acc.add(&ctx.mul(&x.entries[r][k], &y.entries[k][c])?)?;
        }
        Ok(acc)
    })?;
    Ok((0..n).map(|r| vals[r * n..(r + 1) * n].to_vec()).collect())
}

/// `Q² = Q` entrywise and every entry in the tagged subalgebra.
pub fn check_idempotent<C: Coeff>(ctx: &Ctx<C>, q: &IdempotentMatrix<C>) -> Findings {
    let mut out = Findings::new();
    match matmul(ctx, q, q) {
        Ok(sq) => {
            let mut item = Item::pass(format!("{}: Q^2 = Q", q.name));
            for r in 0..q.size() {
                for c in 0..q.size() {
                    let it = ctx.zero_item(
                        format!("{}: Q^2 = Q at {},{}", q.name, q.labels[r], q.labels[c]),
                        sq[r][c].sub(&q.entries[r][c]),
                    );
                    if it.verdict > item.verdict {
                        item = it;
                    }
                }
            }
            out.push(item);
        }
        Err(e) => out.push(error_item(format!("{}: Q^2 = Q", q.name), e)),
    }
    let cells: Vec<&Element<C>> = q.entries.iter().flatten().collect();
    let ms = par::map(cells, |e| (ctx.membership(e, q.sub), ctx.format(e)));
    let mut item = Item::pass(format!("{}: entries in {:?}", q.name, q.sub));
    for (m, txt) in ms {
        match m {
            Ok(Membership::Member) => {}
            Ok(Membership::NotMember) => {
                item = Item::fail(item.label.clone(), txt);
                break;
            }
            Ok(Membership::Undecided { dimension, cap }) => {
                item = Item::undecided(item.label.clone(), format!("{txt}: span {dimension} exceeds cap {cap}"))
            }
            Err(e) => {
                item = error_item(item.label.clone(), e);
                break;
            }
        }
    }
    out.push(item);
    out
}

/// Entrywise comparison of two matrices of the same shape.
pub fn compare_matrices<C: Coeff>(ctx: &Ctx<C>, label: &str, x: &IdempotentMatrix<C>, y: &IdempotentMatrix<C>) -> Item {
    if x.size() != y.size() {
        return Item::fail(label, format!("sizes {} and {}", x.size(), y.size()));
    }
    for r in 0..x.size() {
        for c in 0..x.size() {
            let it = ctx.eq_item(label, Ok(x.entries[r][c].clone()), Ok(y.entries[r][c].clone()));
            if it.verdict != crate::report::Verdict::Pass {
                let res = it.residue.unwrap_or_default();
                return Item { residue: Some(format!("at {},{}: {res}", x.labels[r], x.labels[c])), ..it };
            }
        }
    }
    Item::pass(label)
}

/// Q(V2) vanishes off `i = k, j = l` and its nonzero 3×3 blocks are scalar
/// multiples of Qbar(V2). Returns the item and the scale of each block.
fn block_structure<C: Coeff>(ctx: &Ctx<C>, q2: &IdempotentMatrix<C>, qbar: &IdempotentMatrix<C>) -> (Item, Vec<String>) {
    let label = format!("{}: two rescaled diagonal copies of Qbar(V2)", q2.name);
    // labels are (i,ak) with i in {2,3}, a in 1..3, k in {2,3}
    let idx: Vec<(usize, usize, usize)> =
        (2..=3).flat_map(|i| (1..=3).flat_map(move |a| (2..=3).map(move |k| (i, a, k)))).collect();
    let mut scales = Vec::new();
    for (r, &(i, _, k)) in idx.iter().enumerate() {
        for (c, &(j, _, l)) in idx.iter().enumerate() {
            if !(i == k && j == l) {
                match ctx.is_zero(&q2.entries[r][c]) {
                    Ok(true) => {}
                    Ok(false) => return (Item::fail(label, format!("nonzero entry at {},{}", q2.labels[r], q2.labels[c])), scales),
                    Err(e) => return (error_item(label, e), scales),
                }
            }
        }
    }
    for i in 2..=3 {
        for j in 2..=3 {
            let pos = |i: usize, a: usize, k: usize| idx.iter().position(|&x| x == (i, a, k)).unwrap();
            let e11 = &q2.entries[pos(i, 1, i)][pos(j, 1, j)];
            let b11 = &qbar.entries[0][0];
            let Some((w, c)) = b11.terms().iter().next() else { continue };
            let s = e11.coeff(w).mul(&c.inv().unwrap());
            scales.push(format!("block ({i},{j}): {s}"));
            for a in 1..=3 {
                for b in 1..=3 {
                    let d = q2.entries[pos(i, a, i)][pos(j, b, j)].sub(&qbar.entries[a - 1][b - 1].scale(&s));
                    match d.and_then(|d| ctx.is_zero(&d)) {
                        Ok(true) => {}
                        Ok(false) => return (Item::fail(label, format!("block ({i},{j}) is not a multiple of Qbar")), scales),
                        Err(e) => return (error_item(label, e), scales),
                    }
                }
            }
        }
    }
    (Item::pass(label), scales)
}

/// Criterion 9: the three idempotents, `Q1 + Qbar2 = 1`, and the pipeline
/// against every displayed closed form.
pub fn idempotent_suite<C: Coeff>(ctx: &Ctx<C>) -> Result<Findings> {
    let mut out = Findings::new();
    let q1 = closed_form(ctx, Comodule::V1, false)?;
    let qm1 = closed_form(ctx, Comodule::Vminus1, false)?;
    let qbar = closed_form(ctx, Comodule::V2, true)?;
    let q2 = closed_form(ctx, Comodule::V2, false)?;
    for q in [&q1, &qm1, &qbar, &q2] {
        out.extend(check_idempotent(ctx, q));
    }
    let mut sum_item = Item::pass("Q(V1) + Qbar(V2) = 1");
    'outer: for a in 0..3 {
        for b in 0..3 {
            let delta = Element::constant(&ctx.alg(A)?, if a == b { C::one() } else { C::zero() });
            let it = ctx.zero_item("Q(V1) + Qbar(V2) = 1", q1.entries[a][b].add(&qbar.entries[a][b])?.sub(&delta));
            if it.verdict != crate::report::Verdict::Pass {
                sum_item = it;
                break 'outer;
            }
        }
    }
    out.push(sum_item);
    for (v, closed) in [(Comodule::V1, &q1), (Comodule::Vminus1, &qm1), (Comodule::V2, &q2)] {
        match build_idempotent(ctx, v) {
            Ok(built) => {
                if v == Comodule::V2 {
                    let (item, scales) = block_structure(ctx, &built, &qbar);
                    out.push(item);
                    out.push(Item { residue: Some(scales.join("; ")), ..Item::pass(format!("{}: block scales", built.name)) });
                    out.extend(check_idempotent(ctx, &built));
                }
                out.push(compare_matrices(ctx, &format!("Remark 1.5 pipeline reproduces {}", closed.name), &built, closed));
            }
            Err(e) => out.push(error_item(format!("Remark 1.5 pipeline for {}", v.name()), e)),
        }
    }
    Ok(out)
}
