//! The acceptance suite: eleven criteria, each run at its stated scale and
//! time limit, each reported as one pass/fail line.

use std::collections::BTreeMap;
use std::time::Instant;

use lch_core::augment::{
    enumerate_augmentations, evaluate, good_points, verify_variety_product, AugBudget, Augmentation,
};
use lch_core::border::{mediating_morphism, PushoutSquare};
use lch_core::charalg::verify_char_pushout;
use lch_core::connectsum::{abstract_connect_sum, csum_aug_bijection};
use lch_core::dga::compose;
use lch_core::front::{
    enumerate_disks, front_connect_sum, knot_dga, region_differentials, DiskBudget, Event, LagrangianDiagram,
    PlatFront, RegionBudget,
};
use lch_core::linhom::{csum_poincare_check, homology, linearize, mayer_vietoris, restrict_augmentation, CsumBranch};
use lch_core::{Dga, DgaMorphism, Element, Field, Ring, Scalar};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{all_dips, glue_front_sum, poincare_all, poincare_multiset, same_distribution};
use crate::error::Result;
use crate::fixtures::{self, KNOTS};
use crate::text::parse_corrections;

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u32,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
    pub seconds: f64,
    pub limit: Option<f64>,
}

impl Outcome {
    pub fn line(&self) -> String {
        let limit = self.limit.map(|l| format!(", limit {l} s")).unwrap_or_default();
        format!(
            "[{}] {:>2} {}: {} ({:.2} s{limit})",
            if self.pass { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.seconds
        )
    }
}

type Check = fn() -> Result<(bool, String)>;

pub const CRITERIA: &[(u32, &str, Option<f64>, Check)] = &[
    (1, "soundness suite", Some(60.0), soundness),
    (2, "disk-engine oracle equivalence", None, oracle_equivalence),
    (3, "unknot", Some(1.0), unknot),
    (4, "trefoil", Some(5.0), trefoil),
    (5, "chekanov pair", Some(60.0), chekanov),
    (6, "pushout of dipped diagrams", None, pushout_instances),
    (7, "mayer-vietoris exactness", None, mayer_vietoris_exact),
    (8, "example L versus L'", None, example_pair),
    (9, "abstract connect sums", None, abstract_sums),
    (10, "connect-sum poincare identities", None, csum_identities),
    (11, "characteristic algebra pushouts", None, char_pushouts),
];

pub fn run_one(id: u32) -> Option<Outcome> {
    let &(id, name, limit, f) = CRITERIA.iter().find(|c| c.0 == id)?;
    let t = Instant::now();
    let r = f();
    let seconds = t.elapsed().as_secs_f64();
    let (mut pass, detail) = match r {
        Ok(x) => x,
        Err(e) => (false, format!("error: {e}")),
    };
    if limit.is_some_and(|l| seconds >= l) {
        pass = false;
    }
    Some(Outcome { id, name, pass, detail, seconds, limit })
}

pub fn run_all() -> Vec<Outcome> {
    CRITERIA.iter().filter_map(|c| run_one(c.0)).collect()
}

fn budget() -> AugBudget {
    AugBudget::default()
}

/// Random single-component plat with at most `max_x` crossings.
pub fn random_plat(rng: &mut ChaCha8Rng, max_x: usize) -> PlatFront {
    loop {
        let cusps = rng.gen_range(1..=3u32);
        let mut ev = Vec::new();
        for k in 0..cusps {
            ev.push(Event::L(rng.gen_range(1..=2 * k + 1)));
        }
        let n = 2 * cusps;
        if n > 2 {
            for _ in 0..rng.gen_range(0..=max_x) {
                ev.push(Event::X(rng.gen_range(1..n)));
            }
        }
        for k in (0..cusps).rev() {
            ev.push(Event::R(2 * rng.gen_range(0..=k) + 1));
        }
        let f = PlatFront::new(ev);
        if f.validate().valid {
            return f;
        }
    }
}

fn soundness() -> Result<(bool, String)> {
    let mut checked = Vec::new();
    let record = |checked: &mut Vec<(String, bool)>, name: String, d: &Dga| checked.push((name, d.check().ok()));
    for k in KNOTS {
        let f = fixtures::front(k);
        record(&mut checked, k.to_string(), &f.dga()?);
        for dp in all_dips(&f, false)? {
            record(&mut checked, format!("{k}@{}", dp.slot), &dp.dga);
        }
    }
    for k in ["example_l", "example_l_prime", "sphere3"] {
        record(&mut checked, k.to_string(), &fixtures::dga(k));
    }
    let fixture_count = checked.len();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for i in 0..120 {
        let f = random_plat(&mut rng, 8);
        record(&mut checked, format!("random #{i} {:?}", f.events), &f.dga()?);
    }
    let bad: Vec<&String> = checked.iter().filter(|c| !c.1).map(|c| &c.0).collect();
    let pass = bad.is_empty();
    Ok((pass, format!("{fixture_count} fixture DGAs and 120 random plats, {} failures {bad:?}", bad.len())))
}

fn same_disks(d: &LagrangianDiagram) -> Result<bool> {
    let mut a: Vec<_> =
        enumerate_disks(d, &DiskBudget::default())?.into_iter().map(|k| (k.positive, k.word, k.t)).collect();
    a.sort();
    Ok(a == region_differentials(d, &RegionBudget::default())?)
}

fn oracle_equivalence() -> Result<(bool, String)> {
    let mut n = 0;
    let mut bad = Vec::new();
    for k in KNOTS {
        let f = fixtures::front(k);
        if f.num_crossings() > 12 {
            continue;
        }
        let mut diagrams = vec![(k.to_string(), f.resolve()?)];
        for dp in all_dips(&f, false)? {
            diagrams.push((format!("{k}@{}", dp.slot), dp.diagram));
        }
        for (name, d) in diagrams {
            n += 1;
            if !same_disks(&d)? {
                bad.push(name);
            }
        }
    }
    Ok((bad.is_empty(), format!("{n} diagrams, mismatches {bad:?}")))
}

fn unknot() -> Result<(bool, String)> {
    let d = fixtures::front("unknot").dga()?;
    let shape = d.num_generators() == 1 && d.degree(0) == 1 && *d.d(0) == d.parse_element("1 + t")?;
    let mut good = Vec::new();
    for q in [2, 4] {
        let g = good_points(&d, &Field::new(q)?, &budget())?;
        good.push(g.points.len() == 1 && g.points[0].0 == vec![Scalar::ONE]);
    }
    let one = d.at_one()?;
    let p = homology(&linearize(&one, &Augmentation::zero(&one))?).to_string();
    let pass = shape && good.iter().all(|&x| x) && p == "t";
    Ok((pass, format!("d c = {}, good points F2/F4 = {{t=1}}: {good:?}, P = {p}", d.format_element(d.d(0)))))
}

/// All degree-0 assignments by brute force, checked against `eps . d = 0`.
fn brute_force_augmentations(d: &Dga) -> usize {
    let f = d.field().clone();
    let zero: Vec<usize> = (0..d.num_generators()).filter(|&g| d.degrees_equal(d.degree(g as u32), 0)).collect();
    let elems: Vec<Scalar> = f.elements().collect();
    let total = elems.len().pow(zero.len() as u32);
    let mut count = 0;
    for code in 0..total {
        let mut eps = vec![Scalar::ZERO; d.num_generators()];
        let mut c = code;
        for &g in &zero {
            eps[g] = elems[c % elems.len()];
            c /= elems.len();
        }
        if (0..d.num_generators()).all(|g| evaluate(d, d.d(g as u32), &eps).is_zero()) {
            count += 1;
        }
    }
    count
}

fn trefoil() -> Result<(bool, String)> {
    let f = fixtures::front("trefoil");
    let d = f.dga()?.at_one()?;
    let n = enumerate_augmentations(&d, &budget())?.len();
    let brute = brute_force_augmentations(&d);
    let base = poincare_multiset(&d, &budget())?;
    let mut dips = 0;
    let mut changed = Vec::new();
    let mut sizes = Vec::new();
    for dp in all_dips(&f, true)? {
        dips += 1;
        let m = poincare_multiset(&dp.dga, &budget())?;
        sizes.push(m.len());
        if !same_distribution(&m, &base) {
            changed.push(dp.slot);
        }
    }
    let pass = n == 5 && brute == 5 && changed.is_empty();
    Ok((pass, format!("{n} augmentations (brute force {brute}), multiset {base:?} kept up to scale by {dips} dips (sizes {sizes:?}), changed at {changed:?}")))
}

fn chekanov() -> Result<(bool, String)> {
    let a = poincare_multiset(&fixtures::front("chekanov_a").dga()?.at_one()?, &budget())?;
    let b = poincare_multiset(&fixtures::front("chekanov_b").dga()?.at_one()?, &budget())?;
    let dedup = |v: &Vec<String>| {
        let mut s = v.clone();
        s.dedup();
        s
    };
    Ok((!same_distribution(&a, &b), format!("{:?} versus {:?}", dedup(&a), dedup(&b))))
}

/// Relabels the generators of `d` by a random permutation of suffixed names.
fn relabeled(d: &Dga, rng: &mut ChaCha8Rng) -> Result<(Dga, DgaMorphism)> {
    let mut order: Vec<u32> = (0..d.num_generators() as u32).collect();
    order.shuffle(rng);
    let mut b = Dga::new(d.ring().clone(), d.modulus())?;
    let mut new_id = vec![0; order.len()];
    for &g in &order {
        new_id[g as usize] = b.add_generator(&format!("{}_r", d.name(g)), d.degree(g), None)?;
    }
    for g in 0..d.num_generators() as u32 {
        b.set_differential(new_id[g as usize], d.d(g).map_ids(|h| new_id[h as usize]))?;
    }
    let images = (0..d.num_generators()).map(|g| Element::generator(new_id[g], b.ring())).collect();
    let cm = DgaMorphism::default_coeff_map(d, &b);
    let m = DgaMorphism::new(d.clone(), b.clone(), images, cm)?;
    Ok((b, m))
}

/// An augmentation as a map to the ground field with zero differential.
fn aug_map(d: &Dga, e: &Augmentation) -> Result<DgaMorphism> {
    let k = Dga::new(Ring::scalars(d.field().clone()), d.modulus())?;
    let images = e.values.iter().map(|&v| Element::scalar(k.ring().scalar(v))).collect();
    Ok(DgaMorphism::new(d.clone(), k, images, Vec::new())?)
}

/// A random map out of `sq.a`: an augmentation, a relabeling, or the
/// identity, optionally followed by a relabeling.
fn random_map(sq: &PushoutSquare, rng: &mut ChaCha8Rng) -> Result<DgaMorphism> {
    let a = &sq.a;
    let augs = enumerate_augmentations(a, &budget())?;
    let f = match rng.gen_range(0..3) {
        0 if !augs.is_empty() => aug_map(a, augs.choose(rng).expect("nonempty"))?,
        1 => relabeled(a, rng)?.1,
        _ => DgaMorphism::identity(a),
    };
    if rng.gen_bool(0.5) {
        let (_, r) = relabeled(&f.target, rng)?;
        return Ok(compose(&f, &r)?);
    }
    Ok(f)
}

fn pushout_instances() -> Result<(bool, String)> {
    let mut squares = Vec::new();
    let mut mismatched = Vec::new();
    for k in KNOTS {
        for dp in all_dips(&fixtures::front(k), true)? {
            if !dp.square.a.same_as(&dp.dga) || !dp.square.check().ok() {
                mismatched.push(format!("{k}@{}", dp.slot));
            }
            squares.push(dp.square);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut failures = 0;
    for _ in 0..50 {
        let sq = squares.choose(&mut rng).expect("squares exist");
        let f = random_map(sq, &mut rng)?;
        let h1 = compose(&sq.i1, &f)?;
        let h2 = compose(&sq.i2, &f)?;
        let ok = match mediating_morphism(sq, &h1, &h2) {
            // uniqueness: A is generated by the images of A1 and A2, so any
            // mediating map is pinned down on generators and must equal f
            Ok(m) => m.agrees_with(&f) && generated_by_sides(sq),
            Err(_) => false,
        };
        if !ok {
            failures += 1;
        }
    }
    let pass = mismatched.is_empty() && failures == 0;
    Ok((pass, format!("{} dipped squares, mismatches {mismatched:?}; 50 cospans, {failures} failures", squares.len())))
}

fn generated_by_sides(sq: &PushoutSquare) -> bool {
    let mut hit = vec![false; sq.a.num_generators()];
    for m in [&sq.i1, &sq.i2] {
        for img in &m.images {
            match img.terms().next() {
                Some((w, _)) if img.num_terms() == 1 && w.len() == 1 => hit[w[0] as usize] = true,
                _ => return false,
            }
        }
    }
    hit.iter().all(|&h| h)
}

fn mayer_vietoris_exact() -> Result<(bool, String)> {
    let (mut cases, mut bad) = (0, Vec::new());
    for k in KNOTS {
        for dp in all_dips(&fixtures::front(k), true)? {
            for e in enumerate_augmentations(&dp.dga, &budget())? {
                cases += 1;
                let e = restrict_augmentation(&dp.dga, &e, &dp.square.a)?;
                if !mayer_vietoris(&dp.square, &e)?.exact() {
                    bad.push(format!("{k}@{}", dp.slot));
                }
            }
        }
    }
    Ok((bad.is_empty() && cases > 0, format!("{cases} (square, augmentation) pairs, inexact {bad:?}")))
}

fn example_pair() -> Result<(bool, String)> {
    let l = fixtures::dga("example_l");
    let lp = fixtures::dga("example_l_prime");
    let p = homology(&linearize(&l, &Augmentation::zero(&l))?);
    let pp = homology(&linearize(&lp, &Augmentation::zero(&lp))?);
    let k = 1 - 3;
    let pass = pp.coeff(k) == p.coeff(k) + 1 && enumerate_augmentations(&l, &budget())?.len() == 1;
    Ok((pass, format!("P(L) = {p}, P(L') = {pp}, degree {k}: {} versus {}", p.coeff(k), pp.coeff(k))))
}

/// Abstract summands: front DGAs with coefficients and the 3-dimensional examples.
fn abstract_pairs() -> Vec<(String, Dga, Dga, u32, Vec<(String, String)>)> {
    let u = fixtures::front("unknot").dga().expect("fixture");
    let s = fixtures::front("stabilized_unknot").dga().expect("fixture");
    let t = fixtures::front("trefoil").dga().expect("fixture");
    let l = fixtures::dga("example_l");
    let lp = fixtures::dga("example_l_prime");
    let sph = fixtures::dga("sphere3");
    let fx = fixtures::get("example_l_sphere").expect("fixture");
    let corr = parse_corrections(fx.text, fx.file).expect("fixture");
    vec![
        ("unknot+unknot n=2".into(), u.clone(), u.clone(), 2, vec![]),
        ("unknot+trefoil n=2".into(), u.clone(), t.clone(), 2, vec![]),
        ("trefoil+trefoil n=3".into(), t.clone(), t, 3, vec![]),
        ("stabilized+unknot n=2".into(), s, u, 2, vec![]),
        ("L+sphere n=3".into(), l.clone(), sph.clone(), 3, vec![]),
        ("L'+sphere n=3".into(), lp, sph.clone(), 3, vec![]),
        ("L+sphere n=3 corrected".into(), l, sph, 3, corr),
    ]
}

fn at_one(d: &Dga) -> Result<Dga> {
    Ok(if d.ring().rank() > 0 { d.at_one()? } else { d.clone() })
}

fn abstract_sums() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut counts = Vec::new();
    for (name, a1, a2, n, corr) in abstract_pairs() {
        let cs = abstract_connect_sum(&a1, &a2, n, &corr)?;
        let (o1, o2) = (at_one(&a1)?, at_one(&a2)?);
        let cs1 = abstract_connect_sum(&o1, &o2, n, &corr)?;
        let b = csum_aug_bijection(&cs1, &o1, &o2, &budget())?;
        let mut ok = b.bijective && b.sum == b.left * b.right;
        counts.push(format!("{}x{}={}", b.left, b.right, b.sum));
        for q in [2, 4] {
            let f = Field::new(q)?;
            let g1 = good_points(&a1, &f, &budget())?;
            let g2 = good_points(&a2, &f, &budget())?;
            let g = good_points(&cs.dga, &f, &budget())?;
            ok &= verify_variety_product(&g1, &g2, &g)?;
        }
        if !ok {
            bad.push(name);
        }
    }
    Ok((bad.is_empty(), format!("{} sums, counts {counts:?}, failures {bad:?}", abstract_pairs().len())))
}

fn csum_identities() -> Result<(bool, String)> {
    let mut bad = Vec::new();
    let mut seen: BTreeMap<&'static str, usize> = BTreeMap::new();
    for (n1, n2) in [("unknot", "unknot"), ("unknot", "trefoil"), ("trefoil", "unknot"), ("trefoil", "trefoil")] {
        let (f1, f2) = (fixtures::front(n1), fixtures::front(n2));
        let sum = front_connect_sum(&f1, &f2)?;
        let (d1, d2) = (f1.dga()?.at_one()?, f2.dga()?.at_one()?);
        let d = knot_dga(&sum.resolve()?)?.at_one()?;
        let all = enumerate_augmentations(&d, &budget())?;
        let (p1s, p2s) = (poincare_all(&d1, &budget())?, poincare_all(&d2, &budget())?);
        let mut ok = all.len() == p1s.len() * p2s.len();
        for (e1, p1) in &p1s {
            for (e2, p2) in &p2s {
                let e = glue_front_sum(&d, &d1, e1, &d2, e2)?;
                if !all.contains(&e) {
                    ok = false;
                    continue;
                }
                let p = homology(&linearize(&d, &e)?);
                let br = csum_poincare_check(p1, p2, &p, 1);
                *seen.entry(br.label()).or_default() += 1;
                ok &= br == CsumBranch::MinusTN;
            }
        }
        if !ok {
            bad.push(format!("{n1}#{n2}"));
        }
    }
    for (name, a1, a2, n, corr) in abstract_pairs() {
        if !corr.is_empty() {
            continue;
        }
        let (o1, o2) = (at_one(&a1)?, at_one(&a2)?);
        let cs = abstract_connect_sum(&o1, &o2, n, &[])?;
        let mut ok = true;
        for (e1, p1) in poincare_all(&o1, &budget())? {
            for (e2, p2) in poincare_all(&o2, &budget())? {
                let mut e = Augmentation::zero(&cs.dga);
                for (i, &g) in cs.left.iter().enumerate() {
                    e.values[g as usize] = e1.values[i];
                }
                for (i, &g) in cs.right.iter().enumerate() {
                    e.values[g as usize] = e2.values[i];
                }
                let p = homology(&linearize(&cs.dga, &e)?);
                let br = csum_poincare_check(&p1, &p2, &p, n as i64);
                *seen.entry(br.label()).or_default() += 1;
                ok &= br == CsumBranch::PlusTNm1;
            }
        }
        if !ok {
            bad.push(name);
        }
    }
    Ok((bad.is_empty(), format!("branches {seen:?}, failures {bad:?}")))
}

fn char_pushouts() -> Result<(bool, String)> {
    let (mut n, mut bad) = (0, Vec::new());
    for k in KNOTS {
        for at in [false, true] {
            for dp in all_dips(&fixtures::front(k), at)? {
                n += 1;
                if !verify_char_pushout(&dp.square) {
                    bad.push(format!("{k}@{}", dp.slot));
                }
            }
        }
    }
    Ok((bad.is_empty(), format!("{n} squares, failures {bad:?}")))
}
