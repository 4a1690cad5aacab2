//! The knot fixtures against an independent knot-type oracle: the Kauffman
//! bracket, computed by a state sum, compared up to a unit `±A^k` and
//! mirroring.

use std::collections::BTreeMap;

use lch::fixtures::{front, KNOTS};
use lch_core::front::Event;

/// Laurent polynomial in `A`.
type Poly = BTreeMap<i32, i64>;

fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut o = Poly::new();
    for (i, x) in a {
        for (j, y) in b {
            *o.entry(i + j).or_default() += x * y;
        }
    }
    o.retain(|_, v| *v != 0);
    o
}

fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

fn join(p: &mut [usize], a: usize, b: usize) {
    let (a, b) = (find(p, a), find(p, b));
    if a != b {
        p[a] = b;
    }
}

/// A diagram of strands at positions `1, 2, ...`: caps, cups and crossings
/// of adjacent positions, with `over` telling which smoothing is the A one.
/// With `braid` set, the diagram is a braid on that many strands and is
/// closed up at the end.
#[derive(Clone, Copy)]
enum Step {
    Cap(usize),
    Cup(usize),
    Cross(usize, bool),
}

fn bracket(steps: &[Step], braid: Option<usize>) -> Poly {
    let nx = steps.iter().filter(|s| matches!(s, Step::Cross(..))).count();
    let loop_factor: Poly = [(2, -1), (-2, -1)].into_iter().collect();
    let mut total = Poly::new();
    for state in 0u32..(1 << nx) {
        let mut uf: Vec<usize> = (0..braid.unwrap_or(0)).collect();
        let mut pos = uf.clone();
        let start = pos.clone();
        let (mut k, mut a_count) = (0, 0i32);
        for &s in steps {
            match s {
                Step::Cap(i) => {
                    uf.push(uf.len());
                    let n = uf.len() - 1;
                    pos.splice(i - 1..i - 1, [n, n]);
                }
                Step::Cup(i) => {
                    join(&mut uf, pos[i - 1], pos[i]);
                    pos.drain(i - 1..i + 1);
                }
                Step::Cross(i, over) => {
                    let a_smoothing = (state >> k) & 1 == 0;
                    k += 1;
                    a_count += if a_smoothing { 1 } else { -1 };
                    if a_smoothing != over {
                        join(&mut uf, pos[i - 1], pos[i]);
                        uf.push(uf.len());
                        let n = uf.len() - 1;
                        pos[i - 1] = n;
                        pos[i] = n;
                    }
                }
            }
        }
        if braid.is_some() {
            for (a, b) in start.iter().zip(&pos) {
                join(&mut uf, *a, *b);
            }
        }
        let loops = (0..uf.len()).filter(|&x| find(&mut uf, x) == x).count();
        let mut term: Poly = [(a_count, 1)].into_iter().collect();
        for _ in 1..loops {
            term = mul(&term, &loop_factor);
        }
        for (e, c) in term {
            *total.entry(e).or_default() += c;
        }
        total.retain(|_, v| *v != 0);
    }
    total
}

/// Shifted to lowest exponent 0 with a positive leading coefficient.
fn normalize(p: &Poly) -> Vec<(i32, i64)> {
    let lo = *p.keys().next().unwrap();
    let sign = p.values().next().unwrap().signum();
    p.iter().map(|(k, v)| (k - lo, v * sign)).collect()
}

fn same_knot_type(p: &Poly, q: &Poly) -> bool {
    let mirror: Poly = q.iter().map(|(k, v)| (-k, *v)).collect();
    normalize(p) == normalize(q) || normalize(p) == normalize(&mirror)
}

fn front_bracket(name: &str) -> Poly {
    let steps: Vec<Step> = front(name)
        .events
        .iter()
        .map(|e| match *e {
            Event::L(i) => Step::Cap(i as usize),
            Event::R(i) => Step::Cup(i as usize),
            Event::X(i) => Step::Cross(i as usize, true),
        })
        .collect();
    bracket(&steps, None)
}

fn braid_bracket(word: &[i32], strands: usize) -> Poly {
    let steps: Vec<Step> = word.iter().map(|&g| Step::Cross(g.unsigned_abs() as usize, g > 0)).collect();
    bracket(&steps, Some(strands))
}

#[test]
fn bracket_oracle_sanity() {
    let unknot: Poly = [(0, 1)].into_iter().collect();
    assert!(same_knot_type(&braid_bracket(&[1], 2), &unknot));
    assert!(same_knot_type(&front_bracket("unknot"), &unknot));
    assert!(same_knot_type(&front_bracket("stabilized_unknot"), &unknot));
    let trefoil = braid_bracket(&[1, 1, 1], 2);
    assert!(!same_knot_type(&trefoil, &unknot));
    // A^-7 - A^-3 - A^5 up to a unit.
    assert_eq!(normalize(&trefoil), vec![(0, 1), (4, -1), (12, -1)]);
    assert!(same_knot_type(&front_bracket("trefoil"), &trefoil));
    // The figure eight is amphichiral but not a trefoil.
    assert!(!same_knot_type(&braid_bracket(&[1, -2, 1, -2], 3), &trefoil));
}

#[test]
fn chekanov_fronts_are_five_two_with_equal_classical_invariants() {
    let five_two = braid_bracket(&[1, 1, 1, 2, -1, 2], 3);
    assert!(!same_knot_type(&five_two, &braid_bracket(&[1, 1, 1, 1, 1], 2)));
    for name in ["chekanov_a", "chekanov_b"] {
        let f = front(name);
        let v = f.validate();
        assert!(v.valid && v.components == 1, "{name}");
        assert_eq!(f.tb().unwrap(), 1, "{name}");
        assert_eq!(f.maslov().unwrap().rotation, 0, "{name}");
        assert!(same_knot_type(&front_bracket(name), &five_two), "{name}");
    }
}

#[test]
fn every_knot_fixture_is_a_single_valid_component() {
    for k in KNOTS {
        let v = front(k).validate();
        assert!(v.valid && v.components == 1, "{k}");
    }
}
