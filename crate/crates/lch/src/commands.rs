//! One function per subcommand. Each returns a [`Report`]: a text body, a
//! JSON body, and whether every check it ran passed.

use std::collections::BTreeMap;

use lch_core::augment::{enumerate_augmentations, good_points, verify_variety_product, AugBudget, Augmentation};
use lch_core::border::{mediating_morphism, pushout, PushoutSquare};
use lch_core::charalg::{characteristic_algebra, normal_form, verify_char_pushout, CompletionBudget};
use lch_core::connectsum::{abstract_connect_sum, csum_aug_bijection, ConnectSum};
use lch_core::front::{front_connect_sum, knot_dga, side_labels, PlatFront};
use lch_core::linhom::{
    csum_poincare_check, homology, linearize, mayer_vietoris, restrict_augmentation, CsumBranch, MvTerm, Poincare,
};
use lch_core::{Action, Dga, Field, Scalar};
use serde_json::{json, Value};

use crate::analysis::{dip_slots, glue_front_sum, poincare_all, same_distribution};
use crate::error::{Error, Result};
use crate::json::{to_json, AugDoc, GoodPointsDoc, MorphismDoc, SquareDoc, REPORT_SCHEMA};
use crate::text::{parse_corrections, parse_dga, parse_front, print_dga, print_front};

pub struct Report {
    pub text: String,
    pub json: Value,
    pub ok: bool,
}

impl Report {
    fn ok(text: String, json: Value) -> Report {
        Report { text, json, ok: true }
    }
}

/// Where inputs come from; `-` is standard input.
pub struct Inputs<'a> {
    pub read: &'a mut dyn FnMut(&str) -> Result<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct Budgets {
    pub aug: AugBudget,
    pub completion: CompletionBudget,
}

pub enum Loaded {
    Front(PlatFront),
    Dga(Dga),
}

fn is_front(text: &str) -> bool {
    text.lines().map(|l| l.split('#').next().unwrap_or("").trim()).find(|l| !l.is_empty()) == Some("front")
}

pub fn load(inp: &mut Inputs, path: &str) -> Result<Loaded> {
    let text = (inp.read)(path)?;
    Ok(if is_front(&text) { Loaded::Front(parse_front(&text, path)?) } else { Loaded::Dga(parse_dga(&text, path)?) })
}

pub fn load_front(inp: &mut Inputs, path: &str) -> Result<PlatFront> {
    match load(inp, path)? {
        Loaded::Front(f) => Ok(f),
        Loaded::Dga(_) => Err(Error::Usage(format!("{path}: expected a front file"))),
    }
}

/// A DGA file, or the DGA of a front file.
pub fn load_dga(inp: &mut Inputs, path: &str) -> Result<Dga> {
    match load(inp, path)? {
        Loaded::Front(f) => Ok(f.dga()?),
        Loaded::Dga(d) => Ok(d),
    }
}

/// A document, either bare or embedded in a report.
fn load_doc<T: for<'de> serde::Deserialize<'de>>(inp: &mut Inputs, path: &str) -> Result<T> {
    let text = (inp.read)(path)?;
    let v: Value = serde_json::from_str(&text)?;
    if v.get("schema").and_then(Value::as_str) == Some(REPORT_SCHEMA) {
        if let Some(doc) = v.get("document") {
            return Ok(serde_json::from_value(doc.clone())?);
        }
    }
    Ok(serde_json::from_value(v)?)
}

fn load_square(inp: &mut Inputs, path: &str) -> Result<PushoutSquare> {
    load_doc::<SquareDoc>(inp, path)?.to_square()
}

fn over_field(d: Dga, field: Option<&str>, t1: bool) -> Result<Dga> {
    let target = match field {
        Some(f) => Field::parse(f)?,
        None => d.field().clone(),
    };
    if d.ring().rank() > 0 && !t1 {
        return Err(Error::Usage(
            "the DGA has coefficient variables; pass --t1 to set them to 1, or use `aug good`".into(),
        ));
    }
    if d.ring().rank() == 0 && target == *d.field() {
        return Ok(d);
    }
    let one = vec![Scalar::ONE; d.ring().rank()];
    Ok(d.specialize(&target, &one)?)
}

fn dga_json(d: &Dga) -> Value {
    let degrees: BTreeMap<&str, i64> = d.generators().iter().map(|g| (g.name.as_str(), g.degree)).collect();
    json!({ "text": print_dga(d), "ring": d.ring().descriptor(), "modulus": d.modulus(), "degrees": degrees })
}

fn support_json(d: &Dga, e: &Augmentation) -> Value {
    let m: BTreeMap<&str, u32> = e.support(d).into_iter().map(|(n, v)| (n, v.0)).collect();
    json!(m)
}

fn support_text(d: &Dga, e: &Augmentation) -> String {
    let s: Vec<String> = e.support(d).into_iter().map(|(n, v)| format!("{n}={v}")).collect();
    if s.is_empty() {
        "{}".into()
    } else {
        format!("{{{}}}", s.join(", "))
    }
}

fn parse_delta(s: &str) -> Result<Action> {
    let bad = || Error::Usage(format!("bad action threshold `{s}`"));
    let a = match s.split_once('/') {
        Some((p, q)) => {
            let q: i128 = q.parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Action::new(p.parse().map_err(|_| bad())?, q)
        }
        None => Action::from_integer(s.parse().map_err(|_| bad())?),
    };
    Ok(a)
}

pub fn knot_dga_cmd(inp: &mut Inputs, file: &str, t1: bool) -> Result<Report> {
    let f = load_front(inp, file)?;
    let mut d = f.dga()?;
    if t1 {
        d = d.at_one()?;
    }
    let m = f.maslov()?;
    let rep = d.check();
    let mut j = dga_json(&d);
    j["tb"] = json!(f.tb()?);
    j["rotation"] = json!(m.rotation);
    Ok(Report { text: print_dga(&d), json: j, ok: rep.ok() })
}

pub fn knot_dip_cmd(inp: &mut Inputs, file: &str, at: usize, t1: bool) -> Result<Report> {
    let f = load_front(inp, file)?;
    let dd = f.resolve()?.dip(at)?;
    let mut d = knot_dga(&dd)?;
    if t1 {
        d = d.at_one()?;
    }
    let ok = d.check().ok();
    let mut j = dga_json(&d);
    j["dip"] = json!(at);
    Ok(Report { text: print_dga(&d), json: j, ok })
}

pub fn knot_csum_cmd(inp: &mut Inputs, a: &str, b: &str) -> Result<Report> {
    let (f1, f2) = (load_front(inp, a)?, load_front(inp, b)?);
    let s = front_connect_sum(&f1, &f2)?;
    let text = print_front(&s);
    let (tb, tb1, tb2) = (s.tb()?, f1.tb()?, f2.tb()?);
    let json = json!({ "front": text, "tb": tb, "tb_summands": [tb1, tb2] });
    Ok(Report { text, json, ok: tb == tb1 + tb2 + 1 })
}

pub fn dga_check_cmd(inp: &mut Inputs, file: &str) -> Result<Report> {
    let d = load_dga(inp, file)?;
    let rep = d.check();
    let mut text = format!(
        "generators: {}\nd^2 = 0: {}\ndegree drop 1: {}\naction decreases: {}\n",
        d.num_generators(),
        rep.d_squared_ok,
        rep.degree_ok,
        rep.action_ok
    );
    let violations: Vec<Value> = rep
        .violations
        .iter()
        .map(|v| {
            text += &format!("violation {:?} at {}: {}\n", v.kind, v.generator, d.format_element(&v.residual));
            json!({ "kind": format!("{:?}", v.kind), "generator": v.generator, "residual": d.format_element(&v.residual) })
        })
        .collect();
    let json = json!({
        "d_squared": rep.d_squared_ok,
        "degree": rep.degree_ok,
        "action": rep.action_ok,
        "violations": violations,
        "modulus": d.modulus(),
    });
    Ok(Report { text, json, ok: rep.ok() })
}

fn square_report(sq: &PushoutSquare, extra: Value) -> Report {
    let r = sq.check();
    let doc = SquareDoc::from_square(sq);
    let mut json = json!({
        "document": doc,
        "checks": { "commutes": r.commutes, "maps": r.maps.iter().map(|m| m.ok()).collect::<Vec<_>>() },
        "generators": { "a3": sq.a3.num_generators(), "a1": sq.a1.num_generators(), "a2": sq.a2.num_generators(), "a": sq.a.num_generators() },
    });
    if let (Value::Object(m), Value::Object(e)) = (&mut json, extra) {
        m.extend(e);
    }
    let ok = r.ok() && json.get("same_as_diagram").is_none_or(|v| v == &json!(true));
    Report { text: to_json(&doc), json, ok }
}

pub fn split_cmd(inp: &mut Inputs, file: &str, at: Option<usize>, delta: &str, t1: bool) -> Result<Report> {
    let f = load_front(inp, file)?;
    let r = f.resolve()?;
    let at = match at {
        Some(a) => a,
        None => *dip_slots(&r)?.first().ok_or_else(|| Error::Usage("the front has no slot for a dip".into()))?,
    };
    let dd = r.dip(at)?;
    let mut d = knot_dga(&dd)?;
    if t1 {
        d = d.at_one()?;
    }
    let p = lch_core::border::partition_by_action(&d, &side_labels(&dd), parse_delta(delta)?)?;
    let sq = PushoutSquare::from_partition(&d, &p)?;
    let same = sq.a.same_as(&d);
    Ok(square_report(&sq, json!({ "dip": at, "same_as_diagram": same, "s3": p.s3, "s1": p.s1, "s2": p.s2 })))
}

pub fn pushout_cmd(inp: &mut Inputs, a1: &str, a2: &str, a3: &str) -> Result<Report> {
    let (d1, d2, d3) = (load_dga(inp, a1)?, load_dga(inp, a2)?, load_dga(inp, a3)?);
    let sq = pushout(&d1, &d2, &d3)?;
    Ok(square_report(&sq, json!({})))
}

pub fn mediate_cmd(inp: &mut Inputs, square: &str, h1: &str, h2: &str) -> Result<Report> {
    let sq = load_square(inp, square)?;
    let m1 = load_doc::<MorphismDoc>(inp, h1)?.to_morphism()?;
    let m2 = load_doc::<MorphismDoc>(inp, h2)?.to_morphism()?;
    let h = mediating_morphism(&sq, &m1, &m2)?;
    let doc = MorphismDoc::from_morphism(&h);
    let json = json!({ "document": doc, "checks": { "chain_map": true, "unique": true } });
    Ok(Report::ok(to_json(&doc), json))
}

pub fn aug_count_cmd(inp: &mut Inputs, file: &str, field: Option<&str>, t1: bool, b: &Budgets) -> Result<Report> {
    let d = over_field(load_dga(inp, file)?, field, t1)?;
    let augs = enumerate_augmentations(&d, &b.aug)?;
    let list: Vec<Value> = augs.iter().map(|e| support_json(&d, e)).collect();
    let json = json!({ "count": augs.len(), "field": d.field().name(), "augmentations": list });
    Ok(Report::ok(format!("{}\n", augs.len()), json))
}

pub fn aug_good_cmd(inp: &mut Inputs, file: &str, field: &str, b: &Budgets) -> Result<Report> {
    let d = load_dga(inp, file)?;
    let g = good_points(&d, &Field::parse(field)?, &b.aug)?;
    let doc = GoodPointsDoc::from_set(&g);
    let json = json!({ "document": doc, "count": g.points.len() });
    Ok(Report::ok(to_json(&doc), json))
}

pub fn aug_product_cmd(inp: &mut Inputs, g1: &str, g2: &str, g: &str) -> Result<Report> {
    let s1 = load_doc::<GoodPointsDoc>(inp, g1)?.to_set()?;
    let s2 = load_doc::<GoodPointsDoc>(inp, g2)?.to_set()?;
    let s = load_doc::<GoodPointsDoc>(inp, g)?.to_set()?;
    let ok = verify_variety_product(&s1, &s2, &s)?;
    let json = json!({ "product": ok, "sizes": [s1.points.len(), s2.points.len(), s.points.len()] });
    Ok(Report { text: format!("product: {ok}\n"), json, ok })
}

fn augmentations_for(inp: &mut Inputs, d: &Dga, aug: Option<&str>, b: &Budgets) -> Result<Vec<Augmentation>> {
    match aug {
        Some(path) => Ok(vec![load_doc::<AugDoc>(inp, path)?.to_aug(d)?]),
        None => Ok(enumerate_augmentations(d, &b.aug)?),
    }
}

pub fn linhom_cmd(inp: &mut Inputs, file: &str, aug: Option<&str>, field: Option<&str>, b: &Budgets) -> Result<Report> {
    let d = over_field(load_dga(inp, file)?, field, true)?;
    let mut text = String::new();
    let mut rows = Vec::new();
    for e in augmentations_for(inp, &d, aug, b)? {
        let p = homology(&linearize(&d, &e)?);
        text += &format!("{}: {p}\n", support_text(&d, &e));
        let terms: BTreeMap<String, i64> = p.terms.iter().map(|(k, v)| (k.to_string(), *v)).collect();
        rows.push(json!({ "augmentation": support_json(&d, &e), "poincare": p.to_string(), "dims": terms }));
    }
    let json = json!({ "modulus": d.modulus(), "results": rows });
    Ok(Report::ok(text, json))
}

fn multiset(d: &Dga, b: &Budgets) -> Result<Vec<String>> {
    let mut v: Vec<String> = poincare_all(d, &b.aug)?.into_iter().map(|(_, p)| p.to_string()).collect();
    v.sort();
    Ok(v)
}

fn counts(v: &[String]) -> BTreeMap<String, usize> {
    let mut m = BTreeMap::new();
    for p in v {
        *m.entry(p.clone()).or_insert(0) += 1;
    }
    m
}

pub fn poincare_cmd(
    inp: &mut Inputs,
    file: &str,
    compare: Option<&str>,
    field: Option<&str>,
    b: &Budgets,
) -> Result<Report> {
    let d = over_field(load_dga(inp, file)?, field, true)?;
    let v = multiset(&d, b)?;
    let c = counts(&v);
    let mut text: String = c.iter().map(|(p, n)| format!("{n} x {p}\n")).collect();
    let mut json = json!({ "total": v.len(), "polynomials": c });
    if let Some(other) = compare {
        let d2 = over_field(load_dga(inp, other)?, field, true)?;
        let w = multiset(&d2, b)?;
        let same = same_distribution(&v, &w);
        text += &format!(
            "compared with {other}: {}\nsame distribution: {same}\n",
            counts(&w).keys().cloned().collect::<Vec<_>>().join(", ")
        );
        json["compare"] = json!({ "total": w.len(), "polynomials": counts(&w), "same_distribution": same });
    }
    Ok(Report::ok(text, json))
}

fn term_name(t: MvTerm) -> &'static str {
    match t {
        MvTerm::Boundary => "H(A3)",
        MvTerm::Sides => "H(A1)+H(A2)",
        MvTerm::Total => "H(A)",
    }
}

pub fn mv_cmd(inp: &mut Inputs, square: &str, aug: Option<&str>, b: &Budgets) -> Result<Report> {
    let sq = load_square(inp, square)?;
    if !sq.a.over_field() {
        return Err(Error::Usage("the square has coefficient variables; split with --t1".into()));
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut ok = true;
    for e in augmentations_for(inp, &sq.a, aug, b)? {
        let e = restrict_augmentation(&sq.a, &e, &sq.a)?;
        let r = mayer_vietoris(&sq, &e)?;
        text += &format!("augmentation {}\n", support_text(&sq.a, &e));
        let mut degrees: BTreeMap<i64, bool> = BTreeMap::new();
        for n in &r.nodes {
            *degrees.entry(n.degree).or_insert(true) &= n.exact();
        }
        for (k, ex) in degrees.iter().rev() {
            text += &format!("  degree {k}: exact: {ex}\n");
        }
        ok &= r.exact();
        let nodes: Vec<Value> = r
            .nodes
            .iter()
            .map(|n| json!({ "degree": n.degree, "term": term_name(n.term), "dim": n.dim, "rank_in": n.rank_in, "rank_out": n.rank_out, "exact": n.exact() }))
            .collect();
        rows.push(json!({ "augmentation": support_json(&sq.a, &e), "exact": r.exact(), "nodes": nodes }));
    }
    Ok(Report { text, json: json!({ "modulus": sq.a.modulus(), "results": rows }), ok })
}

fn build_sum(
    inp: &mut Inputs,
    a1: &str,
    a2: &str,
    dim: u32,
    corrections: Option<&str>,
) -> Result<(Dga, Dga, ConnectSum, bool)> {
    let (d1, d2) = (load_dga(inp, a1)?, load_dga(inp, a2)?);
    let corr = match corrections {
        Some(p) => {
            let t = (inp.read)(p)?;
            parse_corrections(&t, p)?
        }
        None => Vec::new(),
    };
    let cs = abstract_connect_sum(&d1, &d2, dim, &corr)?;
    Ok((d1, d2, cs, corr.is_empty()))
}

pub fn csum_abstract_cmd(inp: &mut Inputs, a1: &str, a2: &str, dim: u32, corrections: Option<&str>) -> Result<Report> {
    let (_, _, cs, _) = build_sum(inp, a1, a2, dim, corrections)?;
    let mut json = dga_json(&cs.dga);
    json["h"] = json!(cs.dga.name(cs.h));
    Ok(Report::ok(print_dga(&cs.dga), json))
}

fn at_one(d: &Dga) -> Result<Dga> {
    Ok(if d.ring().rank() > 0 { d.at_one()? } else { d.clone() })
}

/// Classifies `P` against `P1 + P2` for every pair of augmentations. The
/// identity is required for front sums (`n = 1`) and zero-correction
/// abstract sums; with corrections the branch is only reported.
pub fn csum_check_cmd(
    inp: &mut Inputs,
    a1: &str,
    a2: &str,
    dim: u32,
    corrections: Option<&str>,
    b: &Budgets,
) -> Result<Report> {
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut ok = true;
    let mut tally: BTreeMap<&str, usize> = BTreeMap::new();
    let mut push = |e: String, p1: &Poincare, p2: &Poincare, p: &Poincare, br: CsumBranch, text: &mut String| {
        *tally.entry(br.label()).or_default() += 1;
        *text += &format!("{e}: P1 = {p1}, P2 = {p2}, P = {p}: {}\n", br.label());
        rows.push(
            json!({ "pair": e, "p1": p1.to_string(), "p2": p2.to_string(), "p": p.to_string(), "branch": br.label() }),
        );
    };
    let (count, bijective, required) = if dim == 1 {
        if corrections.is_some() {
            return Err(Error::Usage("corrections apply to abstract sums (--dim >= 2)".into()));
        }
        let (f1, f2) = (load_front(inp, a1)?, load_front(inp, a2)?);
        let sum = front_connect_sum(&f1, &f2)?;
        let (d1, d2) = (f1.dga()?.at_one()?, f2.dga()?.at_one()?);
        let d = knot_dga(&sum.resolve()?)?.at_one()?;
        let all = enumerate_augmentations(&d, &b.aug)?;
        let (ps1, ps2) = (poincare_all(&d1, &b.aug)?, poincare_all(&d2, &b.aug)?);
        let mut glued = true;
        for (e1, p1) in &ps1 {
            for (e2, p2) in &ps2 {
                let e = glue_front_sum(&d, &d1, e1, &d2, e2)?;
                glued &= all.contains(&e);
                let p = homology(&linearize(&d, &e)?);
                let br = csum_poincare_check(p1, p2, &p, 1);
                ok &= br == CsumBranch::MinusTN;
                push(support_text(&d, &e), p1, p2, &p, br, &mut text);
            }
        }
        (all.len(), glued && all.len() == ps1.len() * ps2.len(), Some(CsumBranch::MinusTN))
    } else {
        let (d1, d2, _, zero) = build_sum(inp, a1, a2, dim, corrections)?;
        let (o1, o2) = (at_one(&d1)?, at_one(&d2)?);
        let corr = match corrections {
            Some(p) => {
                let t = (inp.read)(p)?;
                parse_corrections(&t, p)?
            }
            None => Vec::new(),
        };
        let cs = abstract_connect_sum(&o1, &o2, dim, &corr)?;
        let bij = csum_aug_bijection(&cs, &o1, &o2, &b.aug)?;
        for (e1, p1) in poincare_all(&o1, &b.aug)? {
            for (e2, p2) in poincare_all(&o2, &b.aug)? {
                let mut e = Augmentation::zero(&cs.dga);
                for (i, &g) in cs.left.iter().enumerate() {
                    e.values[g as usize] = e1.values[i];
                }
                for (i, &g) in cs.right.iter().enumerate() {
                    e.values[g as usize] = e2.values[i];
                }
                let p = homology(&linearize(&cs.dga, &e)?);
                let br = csum_poincare_check(&p1, &p2, &p, dim as i64);
                if zero {
                    ok &= br == CsumBranch::PlusTNm1;
                }
                push(support_text(&cs.dga, &e), &p1, &p2, &p, br, &mut text);
            }
        }
        (bij.sum, bij.bijective, zero.then_some(CsumBranch::PlusTNm1))
    };
    ok &= bijective;
    text += &format!("augmentations of the sum: {count}, bijection with pairs: {bijective}\n");
    let json = json!({
        "dim": dim,
        "augmentations": count,
        "bijective": bijective,
        "required_branch": required.map(|b| b.label()),
        "branches": tally,
        "pairs": rows,
    });
    Ok(Report { text, json, ok })
}

pub fn char_cmd(inp: &mut Inputs, file: &str) -> Result<Report> {
    let d = load_dga(inp, file)?;
    let a = characteristic_algebra(&d);
    let rels = a.format_relations();
    let gens: Vec<&str> = a.free_algebra().generators().iter().map(|g| g.name.as_str()).collect();
    let mut text = format!("generators: {}\n", gens.join(" "));
    for r in &rels {
        text += &format!("relation: {r} = 0\n");
    }
    Ok(Report::ok(text, json!({ "generators": gens, "relations": rels, "equality": "presentation" })))
}

pub fn char_pushout_cmd(inp: &mut Inputs, square: &str) -> Result<Report> {
    let sq = load_square(inp, square)?;
    let ok = verify_char_pushout(&sq);
    Ok(Report {
        text: format!("presentations agree: {ok}\n"),
        json: json!({ "presentations_agree": ok, "equality": "presentation" }),
        ok,
    })
}

pub fn char_nf_cmd(inp: &mut Inputs, file: &str, expr: &str, bound: usize, b: &Budgets) -> Result<Report> {
    let d = load_dga(inp, file)?;
    let a = characteristic_algebra(&d);
    let x = a.parse_element(expr)?;
    let r = normal_form(&a, &x, bound, &b.completion)?;
    let nf = a.format_element(&r.element);
    let text = format!(
        "{nf}\n# complete up to length {bound}: {}{}\n",
        r.complete,
        if r.trivial_quotient { "; the quotient is zero" } else { "" }
    );
    let json = json!({
        "input": expr,
        "normal_form": nf,
        "bound": bound,
        "complete": r.complete,
        "trivial_quotient": r.trivial_quotient,
        "equality": "bounded-degree",
    });
    Ok(Report::ok(text, json))
}
