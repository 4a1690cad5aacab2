//! Line-oriented text formats for DGAs, fronts and connect-sum corrections.
//!
//! DGA files:
//! ```text
//! ring F2[t]
//! maslov t=0
//! modulus 0
//! gen c 1
//! d c = 1 + t
//! ```
//! `gen` lines may end in `action P/Q`. Front files start with `front` and
//! list one event per line (`l 1`, `x 2`, `r 1`), optionally followed by
//! `basepoint K [LEVEL]`.

use lch_core::front::{Basepoint, Event, PlatFront};
use lch_core::{Action, Dga, Field, LchError, Ring};

use crate::error::{Error, Result};

struct Lines<'a> {
    name: &'a str,
}

impl Lines<'_> {
    fn err(&self, line: usize, col: usize, msg: impl Into<String>) -> Error {
        Error::Parse { source_name: self.name.into(), line, col, msg: msg.into() }
    }
}

/// Non-blank lines with comments stripped: `(line number, column offset, text)`.
fn statements(text: &str) -> impl Iterator<Item = (usize, usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let col = body.len() - trimmed.len() + 1;
        let t = trimmed.trim_end();
        (!t.is_empty()).then_some((i + 1, col, t))
    })
}

/// `F2`, `F4[t]`, `F2[t1,t2]`.
pub fn parse_ring_descriptor(s: &str) -> std::result::Result<(Field, Vec<String>), LchError> {
    let s = s.trim();
    let (field, vars) = match s.find('[') {
        None => (s, Vec::new()),
        Some(i) => {
            let inner =
                s[i + 1..].strip_suffix(']').ok_or_else(|| LchError::Format(format!("unclosed `[` in ring `{s}`")))?;
            let vars: Vec<String> = inner.split(',').map(|v| v.trim().to_string()).collect();
            if vars.iter().any(|v| v.is_empty() || !v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')) {
                return Err(LchError::Format(format!("bad variable list in ring `{s}`")));
            }
            (&s[..i], vars)
        }
    };
    Ok((Field::parse(field)?, vars))
}

pub fn parse_dga(text: &str, source_name: &str) -> Result<Dga> {
    let src = Lines { name: source_name };
    let mut ring: Option<(Field, Vec<String>)> = None;
    let mut maslov: Vec<(String, i64, usize)> = Vec::new();
    let mut modulus = 0u32;
    let mut dga: Option<Dga> = None;
    let mut defined = std::collections::BTreeSet::new();
    for (ln, col, t) in statements(text) {
        let (kw, rest) = t.split_once(char::is_whitespace).unwrap_or((t, ""));
        let rest = rest.trim();
        let rest_col = col + t.len() - t[kw.len()..].trim_start().len();
        let header_done = dga.is_some();
        match kw {
            "ring" | "maslov" | "modulus" if header_done => {
                return Err(src.err(ln, col, format!("`{kw}` must come before the first `gen`")));
            }
            "ring" => {
                if ring.is_some() {
                    return Err(src.err(ln, col, "duplicate `ring`"));
                }
                ring = Some(parse_ring_descriptor(rest).map_err(|e| src.err(ln, rest_col, e.to_string()))?);
            }
            "maslov" => {
                for a in rest.split([' ', ',']).filter(|a| !a.is_empty()) {
                    let (v, k) = a
                        .split_once('=')
                        .ok_or_else(|| src.err(ln, rest_col, format!("expected `var=degree`, got `{a}`")))?;
                    let k: i64 = k.trim().parse().map_err(|_| src.err(ln, rest_col, format!("bad degree in `{a}`")))?;
                    maslov.push((v.trim().to_string(), k, ln));
                }
            }
            "modulus" => {
                modulus = rest.parse().map_err(|_| src.err(ln, rest_col, format!("bad modulus `{rest}`")))?;
            }
            "gen" | "d" => {
                if dga.is_none() {
                    let (field, vars) = ring.take().ok_or_else(|| src.err(ln, col, "missing `ring` line"))?;
                    let mut degs = vec![0i64; vars.len()];
                    for (v, k, mln) in &maslov {
                        let i = vars
                            .iter()
                            .position(|x| x == v)
                            .ok_or_else(|| src.err(*mln, 1, format!("`maslov` names unknown variable `{v}`")))?;
                        degs[i] = *k;
                    }
                    let r = Ring::new(field, vars, degs).map_err(|e| src.err(ln, col, e.to_string()))?;
                    dga = Some(Dga::new(r, modulus).map_err(|e| src.err(ln, col, e.to_string()))?);
                }
                let d = dga.as_mut().expect("just built");
                if kw == "gen" {
                    let parts: Vec<&str> = rest.split_whitespace().collect();
                    let (name, deg, action) = match parts.as_slice() {
                        [n, k] => (*n, *k, None),
                        [n, k, "action", a] => (*n, *k, Some(*a)),
                        _ => return Err(src.err(ln, rest_col, "expected `gen NAME DEGREE [action P/Q]`")),
                    };
                    let deg: i64 = deg.parse().map_err(|_| src.err(ln, rest_col, format!("bad degree `{deg}`")))?;
                    let action = match action {
                        None => None,
                        Some(a) => {
                            Some(parse_action(a).ok_or_else(|| src.err(ln, rest_col, format!("bad action `{a}`")))?)
                        }
                    };
                    d.add_generator(name, deg, action).map_err(|e| src.err(ln, rest_col, e.to_string()))?;
                } else {
                    let (name, expr) =
                        rest.split_once('=').ok_or_else(|| src.err(ln, rest_col, "expected `d NAME = EXPR`"))?;
                    let name = name.trim();
                    let expr_col = rest_col + rest.len() - rest[rest.find('=').unwrap() + 1..].trim_start().len();
                    let g = d.lookup(name).map_err(|e| src.err(ln, rest_col, e.to_string()))?;
                    if !defined.insert(g) {
                        return Err(src.err(ln, col, format!("second differential for `{name}`")));
                    }
                    let x = d.parse_element(expr.trim()).map_err(|e| src.err(ln, expr_col, e.to_string()))?;
                    let want = d.norm(d.degree(g) - 1);
                    if d.term_degrees(&x).iter().any(|&k| !d.degrees_equal(k, want)) {
                        return Err(src.err(
                            ln,
                            expr_col,
                            format!("inhomogeneous differential: d {name} must have degree {want}"),
                        ));
                    }
                    d.set_differential(g, x).map_err(|e| src.err(ln, expr_col, e.to_string()))?;
                }
            }
            _ => return Err(src.err(ln, col, format!("unknown statement `{kw}`"))),
        }
    }
    match dga {
        Some(d) => Ok(d),
        None => {
            let (field, vars) = ring.ok_or_else(|| src.err(1, 1, "missing `ring` line"))?;
            let mut degs = vec![0i64; vars.len()];
            for (v, k, mln) in &maslov {
                let i = vars
                    .iter()
                    .position(|x| x == v)
                    .ok_or_else(|| src.err(*mln, 1, format!("`maslov` names unknown variable `{v}`")))?;
                degs[i] = *k;
            }
            Ok(Dga::new(Ring::new(field, vars, degs)?, modulus)?)
        }
    }
}

fn parse_action(s: &str) -> Option<Action> {
    let a = match s.split_once('/') {
        Some((p, q)) => {
            let q: i128 = q.parse().ok()?;
            if q == 0 {
                return None;
            }
            Action::new(p.parse().ok()?, q)
        }
        None => Action::from_integer(s.parse().ok()?),
    };
    Some(a)
}

pub fn print_dga(d: &Dga) -> String {
    let r = d.ring();
    let mut out = format!("ring {}\n", r.descriptor());
    if r.rank() > 0 {
        let m: Vec<String> = r.vars().iter().zip(r.maslov()).map(|(v, k)| format!("{v}={k}")).collect();
        out += &format!("maslov {}\n", m.join(" "));
    }
    out += &format!("modulus {}\n", d.modulus());
    for g in d.generators() {
        out += &format!("gen {} {}", g.name, g.degree);
        if let Some(a) = g.action {
            out += &format!(" action {a}");
        }
        out.push('\n');
    }
    for (i, g) in d.generators().iter().enumerate() {
        let x = d.d(i as u32);
        if !x.is_zero() {
            out += &format!("d {} = {}\n", g.name, d.format_element(x));
        }
    }
    out
}

pub fn parse_front(text: &str, source_name: &str) -> Result<PlatFront> {
    let src = Lines { name: source_name };
    let mut it = statements(text);
    match it.next() {
        Some((_, _, "front")) => {}
        Some((ln, col, _)) => return Err(src.err(ln, col, "front files start with `front`")),
        None => return Err(src.err(1, 1, "empty front file")),
    }
    let mut events = Vec::new();
    let mut basepoint = None;
    for (ln, col, t) in it {
        let parts: Vec<&str> = t.split_whitespace().collect();
        let num = |s: &str| -> Result<u32> {
            s.parse::<u32>()
                .ok()
                .filter(|&k| k >= 1 || parts[0] == "basepoint")
                .ok_or_else(|| src.err(ln, col, format!("bad number `{s}`")))
        };
        match parts.as_slice() {
            [k @ ("l" | "x" | "r"), i] => {
                if basepoint.is_some() {
                    return Err(src.err(ln, col, "events must precede `basepoint`"));
                }
                let i = num(i)?;
                events.push(match *k {
                    "l" => Event::L(i),
                    "x" => Event::X(i),
                    _ => Event::R(i),
                });
            }
            ["basepoint", rest @ ..] if (1..=2).contains(&rest.len()) => {
                let slice = num(rest[0])? as usize;
                let level = if rest.len() == 2 { num(rest[1])? } else { 0 };
                basepoint = Some(Basepoint { slice, level });
            }
            _ => return Err(src.err(ln, col, format!("unknown front statement `{t}`"))),
        }
    }
    let mut f = PlatFront::new(events);
    f.basepoint = basepoint;
    let rep = f.validate();
    if !rep.valid {
        return Err(src.err(1, 1, format!("invalid front: {}", rep.problems.join("; "))));
    }
    Ok(f)
}

pub fn print_front(f: &PlatFront) -> String {
    let mut out = String::from("front\n");
    for e in &f.events {
        out += &match e {
            Event::L(i) => format!("l {i}\n"),
            Event::X(i) => format!("x {i}\n"),
            Event::R(i) => format!("r {i}\n"),
        };
    }
    if let Some(b) = f.basepoint {
        if b.level == 0 {
            out += &format!("basepoint {}\n", b.slice);
        } else {
            out += &format!("basepoint {} {}\n", b.slice, b.level);
        }
    }
    out
}

/// Correction files: one `d NAME += EXPR` per line.
pub fn parse_corrections(text: &str, source_name: &str) -> Result<Vec<(String, String)>> {
    let src = Lines { name: source_name };
    let mut out = Vec::new();
    for (ln, col, t) in statements(text) {
        let body = t.strip_prefix("d ").ok_or_else(|| src.err(ln, col, "expected `d NAME += EXPR`"))?;
        let (name, expr) = body.split_once("+=").ok_or_else(|| src.err(ln, col, "expected `d NAME += EXPR`"))?;
        out.push((name.trim().to_string(), expr.trim().to_string()));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const UNKNOT: &str = "# unknot\nring F2[t]\nmaslov t=0\nmodulus 0\ngen c 1\nd c = 1 + t\n";

    #[test]
    fn dga_round_trip() {
        let d = parse_dga(UNKNOT, "u").unwrap();
        let p = print_dga(&d);
        assert_eq!(p, UNKNOT.trim_start_matches("# unknot\n"));
        assert_eq!(print_dga(&parse_dga(&p, "u").unwrap()), p);
    }

    #[test]
    fn empty_generator_list() {
        let d = parse_dga("ring F2\n", "e").unwrap();
        assert_eq!(d.num_generators(), 0);
        assert!(d.check().ok());
    }

    #[test]
    fn sourced_errors() {
        let e = parse_dga("ring F2\ngen a 1\ngen x 0\ngen z 1\nd a = z + x\n", "f.dga").unwrap_err();
        let s = e.to_string();
        assert!(s.starts_with("f.dga:5:7: inhomogeneous"), "{s}");
        let e = parse_dga("ring F2\ngen a 1\nd a = (x\n", "g").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        assert!(parse_dga("gen a 1\n", "h").is_err());
        assert!(parse_dga("ring F2\ngen a 1\nmodulus 2\n", "h").is_err());
    }

    #[test]
    fn actions_survive() {
        let d = parse_dga("ring F2\ngen a 1 action 3/2\ngen b 0 action 1\nd a = b\n", "a").unwrap();
        let p = print_dga(&d);
        assert!(p.contains("gen a 1 action 3/2\n") && p.contains("gen b 0 action 1\n"), "{p}");
        assert_eq!(parse_dga(&p, "a").unwrap(), d);
    }

    #[test]
    fn front_round_trip() {
        let t = "front\nl 1\nl 1\nx 2\nx 2\nx 2\nr 1\nr 1\nbasepoint 2\n";
        let f = parse_front(t, "t").unwrap();
        assert_eq!(f.num_crossings(), 3);
        assert_eq!(print_front(&f), t);
        assert!(parse_front("front\nl 1\nr 2\n", "bad").is_err());
        assert!(parse_front("l 1\nr 1\n", "bad").is_err());
    }
}
