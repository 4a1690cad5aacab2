//! Finite fields GF(p^k) with small order.
//!
//! Elements are encoded as integers `0..q` whose base-`p` digits are the
//! coefficients of a polynomial in the generator `w` of the extension,
//! reduced modulo the lexicographically first monic irreducible of degree
//! `k`. Codes below `p` are the prime subfield, so `n mod p` embeds
//! identically into every extension of the same characteristic.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::LchError;

/// An element of a [`Field`], stored as its integer code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Scalar(pub u32);

impl Scalar {
    pub const ZERO: Scalar = Scalar(0);
    pub const ONE: Scalar = Scalar(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Largest field order supported by the table-driven arithmetic.
pub const MAX_ORDER: u32 = 1 << 16;

#[derive(Clone)]
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    /// exp[i] = g^i for a primitive element g, i in 0..q-1 (doubled for lookup)
    exp: Vec<u32>,
    /// log[x] for x != 0
    log: Vec<u32>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k
    }
}
impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.q)
    }
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial over F_p as coefficient vector, low degree first.
fn poly_mulmod(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u32; a.len() + b.len()];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    // reduce, modulus is monic
    for deg in (k..prod.len()).rev() {
        let c = prod[deg];
        if c == 0 {
            continue;
        }
        for (j, &m) in modulus.iter().enumerate() {
            let idx = deg - k + j;
            prod[idx] = (prod[idx] + p * p - (c * m) % p) % p;
        }
    }
    prod.truncate(k);
    prod.resize(k, 0);
    prod
}

fn encode(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn decode(mut x: u32, p: u32, k: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(k as usize);
    for _ in 0..k {
        v.push(x % p);
        x /= p;
    }
    v
}

fn has_root_free_irreducible(modulus: &[u32], p: u32) -> bool {
    // degree <= 3 irreducible iff no roots; higher degrees checked by
    // trial division with all monic polys of degree <= k/2
    let k = modulus.len() - 1;
    let max_d = k / 2;
    for d in 1..=max_d {
        let count = p.pow(d as u32);
        for code in 0..count {
            let mut div = decode(code, p, d as u32);
            div.push(1);
            if poly_divides(&div, modulus, p) {
                return false;
            }
        }
    }
    true
}

fn inv_mod_p(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    r as u32
}

fn poly_divides(div: &[u32], num: &[u32], p: u32) -> bool {
    let mut rem: Vec<u32> = num.to_vec();
    let dd = div.len() - 1;
    let lead_inv = inv_mod_p(div[dd], p);
    while rem.len() > dd {
        let top = *rem.last().unwrap();
        if top != 0 {
            let c = top * lead_inv % p;
            let shift = rem.len() - 1 - dd;
            for (j, &m) in div.iter().enumerate() {
                rem[shift + j] = (rem[shift + j] + p * p - (c * m) % p) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

impl Field {
    /// The field with `q` elements; `q` must be a prime power below [`MAX_ORDER`].
    pub fn new(q: u32) -> Result<Field, LchError> {
        if !(2..=MAX_ORDER).contains(&q) {
            return Err(LchError::Format(alloc::format!("unsupported field order {q}")));
        }
        let mut p = 2;
        while !q.is_multiple_of(p) {
            p += 1;
        }
        let mut k = 0;
        let mut r = q;
        while r.is_multiple_of(p) {
            r /= p;
            k += 1;
        }
        if r != 1 || !is_prime(p) {
            return Err(LchError::Format(alloc::format!("{q} is not a prime power")));
        }
        Ok(Self::build(p, k))
    }

    pub fn prime(p: u32) -> Result<Field, LchError> {
        if !is_prime(p) {
            return Err(LchError::Format(alloc::format!("{p} is not prime")));
        }
        Field::new(p)
    }

    pub fn f2() -> Field {
        Self::build(2, 1)
    }

    /// Parses `F2`, `F4`, `F5`, ... (also `GF(4)`).
    pub fn parse(name: &str) -> Result<Field, LchError> {
        let s = name.trim();
        let digits = if let Some(rest) = s.strip_prefix("GF(").and_then(|r| r.strip_suffix(')')) {
            rest
        } else if let Some(rest) = s.strip_prefix('F') {
            rest
        } else {
            return Err(LchError::Format(alloc::format!("bad field name `{s}`")));
        };
        let q: u32 = digits.parse().map_err(|_| LchError::Format(alloc::format!("bad field name `{s}`")))?;
        Field::new(q)
    }

    fn build(p: u32, k: u32) -> Field {
        let q = p.pow(k);
        let modulus: Vec<u32> = if k == 1 {
            vec![0, 1]
        } else {
            let mut found = None;
            for code in 0..p.pow(k) {
                let mut m = decode(code, p, k);
                m.push(1);
                if m[0] != 0 && has_root_free_irreducible(&m, p) {
                    found = Some(m);
                    break;
                }
            }
            found.expect("irreducible polynomial exists")
        };
        let mul = |a: u32, b: u32| -> u32 {
            if k == 1 {
                return a * b % p;
            }
            let pa = decode(a, p, k);
            let pb = decode(b, p, k);
            encode(&poly_mulmod(&pa, &pb, &modulus, p), p)
        };
        // find a primitive element
        let order = q - 1;
        let mut gen = 0;
        'search: for cand in 1..q {
            let mut x = 1;
            for i in 1..=order {
                x = mul(x, cand);
                if x == 1 {
                    if i == order {
                        gen = cand;
                        break 'search;
                    }
                    break;
                }
            }
        }
        if q == 2 {
            gen = 1;
        }
        let mut exp = vec![0u32; 2 * order as usize];
        let mut log = vec![0u32; q as usize];
        let mut x = 1;
        for i in 0..order as usize {
            exp[i] = x;
            exp[i + order as usize] = x;
            log[x as usize] = i as u32;
            x = mul(x, gen);
        }
        Field { p, k, q, exp, log }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    pub fn name(&self) -> String {
        alloc::format!("F{}", self.q)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Scalar {
        Scalar(n.rem_euclid(self.p as i64) as u32)
    }

    /// Interprets a literal code; for prime fields this reduces mod p.
    pub fn from_code(&self, n: i64) -> Result<Scalar, LchError> {
        if self.k == 1 {
            return Ok(self.from_int(n));
        }
        if n < 0 || n >= self.q as i64 {
            return Err(LchError::Format(alloc::format!("literal {n} is not an element code of {self}")));
        }
        Ok(Scalar(n as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = Scalar> {
        (0..self.q).map(Scalar)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Scalar> {
        (1..self.q).map(Scalar)
    }

    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        if self.p == 2 {
            return Scalar(a.0 ^ b.0);
        }
        if self.k == 1 {
            return Scalar((a.0 + b.0) % self.p);
        }
        let mut out = 0;
        let mut place = 1;
        let (mut x, mut y) = (a.0, b.0);
        for _ in 0..self.k {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        Scalar(out)
    }

    pub fn neg(&self, a: Scalar) -> Scalar {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return Scalar((self.p - a.0) % self.p);
        }
        let mut out = 0;
        let mut place = 1;
        let mut x = a.0;
        for _ in 0..self.k {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        Scalar(out)
    }

    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        if a.0 == 0 || b.0 == 0 {
            return Scalar::ZERO;
        }
        let l = self.log[a.0 as usize] + self.log[b.0 as usize];
        Scalar(self.exp[l as usize])
    }

    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if a.0 == 0 {
            return None;
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Some(Scalar(self.exp[((order - l) % order) as usize]))
    }

    /// `a^e` for any integer exponent; `None` for zero to a negative power.
    pub fn pow(&self, a: Scalar, e: i64) -> Option<Scalar> {
        if a.0 == 0 {
            return if e > 0 {
                Some(Scalar::ZERO)
            } else if e == 0 {
                Some(Scalar::ONE)
            } else {
                None
            };
        }
        let order = (self.q - 1) as i64;
        let l = (self.log[a.0 as usize] as i64 * e).rem_euclid(order);
        Some(Scalar(self.exp[l as usize]))
    }

    /// Frobenius `x -> x^p`.
    pub fn frobenius(&self, a: Scalar) -> Scalar {
        self.pow(a, self.p as i64).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn f4_has_order_three_units() {
        let f = Field::new(4).unwrap();
        for x in f.nonzero_elements() {
            assert_eq!(f.pow(x, 3), Some(Scalar::ONE));
            assert_eq!(f.mul(x, f.inv(x).unwrap()), Scalar::ONE);
        }
        // w^2 = w + 1 for the generator w = code 2
        let w = Scalar(2);
        assert_eq!(f.mul(w, w), f.add(w, Scalar::ONE));
    }

    #[test]
    fn field_axioms_small_fields() {
        for q in [2, 3, 4, 5, 7, 8, 9, 16, 25, 27] {
            let f = Field::new(q).unwrap();
            for a in f.elements() {
                assert_eq!(f.add(a, f.neg(a)), Scalar::ZERO);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in f.elements().take(5) {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)), "distributivity in F{q}");
                    }
                }
            }
        }
    }

    #[test]
    fn rejects_non_prime_powers() {
        assert!(Field::new(6).is_err());
        assert!(Field::new(1).is_err());
        assert!(Field::parse("F12").is_err());
        assert_eq!(Field::parse("F8").unwrap().order(), 8);
        assert_eq!(Field::parse("GF(9)").unwrap().characteristic(), 3);
    }

    #[test]
    fn f5_arithmetic() {
        let f = Field::new(5).unwrap();
        // 2^-1 = 3, 2^2 = 4 (used by evaluation examples)
        assert_eq!(f.pow(Scalar(2), -1), Some(Scalar(3)));
        assert_eq!(f.pow(Scalar(2), 2), Some(Scalar(4)));
        assert_eq!(f.add(Scalar(3), Scalar(4)), Scalar(2));
    }
}
