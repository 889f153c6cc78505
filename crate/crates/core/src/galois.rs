//! Arithmetic in GF(q), q = p^h.
//!
//! An element is the integer `c_0 + c_1 p + ... + c_{h-1} p^{h-1}` encoding
//! the polynomial `c_0 + c_1 x + ... + c_{h-1} x^{h-1}` reduced modulo a
//! monic irreducible polynomial of degree `h`. Multiplication is served from
//! discrete-log tables that are built once from the polynomial product.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::{Error, Result};

/// Largest field order accepted by [`FieldSpec::new`].
pub const MAX_ORDER: u32 = 1 << 16;

/// A field element, identified by its integer encoding in `[0, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u32);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub const fn rep(self) -> u32 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Callers guarantee `rep < q` for the field in use.
#[inline]
pub(crate) const fn element_unchecked(rep: u32) -> FieldElement {
    FieldElement(rep)
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

struct Tables {
    p: u32,
    h: u32,
    q: u32,
    /// Coefficients c_0..c_h, leading coefficient 1.
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in [0, 2(q-1)), so products of logs need no reduction.
    exp: Vec<u32>,
    /// log[a] for a != 0; log[0] is unused.
    log: Vec<u32>,
    /// Powers of p, length h.
    place: Vec<u32>,
}

/// Arithmetic context for GF(p^h). Cheap to clone; immutable once built.
#[derive(Clone)]
pub struct FieldSpec(Arc<Tables>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FieldSpec")
            .field("p", &self.0.p)
            .field("h", &self.0.h)
            .field("modulus", &self.0.modulus)
            .finish()
    }
}

impl FieldSpec {
    /// Builds GF(p^h). Without a modulus the lexicographically smallest monic
    /// irreducible of degree `h` is used, comparing `(c_0, .., c_{h-1})` from
    /// the constant term up. A given modulus lists `c_0..c_h`.
    pub fn new(p: u32, h: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if h == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = (p as u64)
            .checked_pow(h)
            .filter(|&q| q <= MAX_ORDER as u64)
            .ok_or(Error::FieldTooLarge((p as u64).saturating_pow(h)))? as u32;

        let modulus = match modulus {
            Some(m) => {
                if m.len() != h as usize + 1 {
                    return Err(Error::ModulusDegree { expected: h, found: m.len().saturating_sub(1) });
                }
                if let Some(&c) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::ModulusCoefficient(c));
                }
                if m[h as usize] != 1 {
                    return Err(Error::ModulusNotMonic);
                }
                if !is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus);
                }
                m.to_vec()
            }
            None => smallest_irreducible(p, h),
        };

        let mut place = Vec::with_capacity(h as usize);
        let mut acc = 1u32;
        for _ in 0..h {
            place.push(acc);
            acc = acc.wrapping_mul(p);
        }
        let mut tables = Tables { p, h, q, modulus, exp: Vec::new(), log: Vec::new(), place };
        build_log_tables(&mut tables);
        Ok(FieldSpec(Arc::new(tables)))
    }

    /// The prime field GF(p).
    pub fn prime(p: u32) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// GF(q) for a prime power `q`, default modulus.
    pub fn with_order(q: u32) -> Result<Self> {
        let (p, h) = prime_power(q).ok_or_else(|| Error::NotPrime(q))?;
        Self::new(p, h, None)
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.0.p
    }

    #[inline]
    pub fn h(&self) -> u32 {
        self.0.h
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.0.q
    }

    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.h == 1
    }

    pub fn element(&self, rep: u32) -> Result<FieldElement> {
        if rep < self.0.q {
            Ok(FieldElement(rep))
        } else {
            Err(Error::ElementOutOfRange { rep, q: self.0.q })
        }
    }

    /// All q elements in encoding order: 0, 1, ...
    pub fn elements(&self) -> impl ExactSizeIterator<Item = FieldElement> + Clone {
        (0..self.0.q).map(FieldElement)
    }

    /// Coefficient vector `(c_0, .., c_{h-1})` of an element.
    pub fn decode(&self, a: FieldElement) -> Vec<u32> {
        let mut r = a.0;
        (0..self.0.h)
            .map(|_| {
                let c = r % self.0.p;
                r /= self.0.p;
                c
            })
            .collect()
    }

    pub fn encode(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() != self.0.h as usize {
            return Err(Error::DimensionMismatch { expected: self.0.h as usize, found: coeffs.len() });
        }
        let mut rep = 0u32;
        for (&c, &w) in coeffs.iter().zip(&self.0.place) {
            if c >= self.0.p {
                return Err(Error::ElementOutOfRange { rep: c, q: self.0.p });
            }
            rep += c * w;
        }
        Ok(FieldElement(rep))
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.0.q && b.0 < self.0.q);
        let t = &*self.0;
        if t.h == 1 {
            let s = a.0 + b.0;
            return FieldElement(if s >= t.p { s - t.p } else { s });
        }
        let (mut x, mut y, mut out) = (a.0, b.0, 0u32);
        for &w in &t.place {
            let s = x % t.p + y % t.p;
            out += if s >= t.p { s - t.p } else { s } * w;
            x /= t.p;
            y /= t.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let t = &*self.0;
        if t.h == 1 {
            return FieldElement(if a.0 == 0 { 0 } else { t.p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0;
        for &w in &t.place {
            let c = x % t.p;
            out += if c == 0 { 0 } else { t.p - c } * w;
            x /= t.p;
        }
        FieldElement(out)
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        debug_assert!(a.0 < self.0.q && b.0 < self.0.q);
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        let t = &*self.0;
        FieldElement(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: FieldElement) -> Result<FieldElement> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        let t = &*self.0;
        let order = t.q - 1;
        Ok(FieldElement(t.exp[((order - t.log[a.0 as usize]) % order) as usize]))
    }

    /// `a^k`; negative exponents invert first. `0^0 = 1`.
    pub fn pow(&self, a: FieldElement, k: i64) -> Result<FieldElement> {
        if k == 0 {
            return Ok(FieldElement::ONE);
        }
        if a.0 == 0 {
            return if k > 0 { Ok(FieldElement::ZERO) } else { Err(Error::InverseOfZero) };
        }
        let t = &*self.0;
        let order = (t.q - 1) as i64;
        let e = (t.log[a.0 as usize] as i64 * k).rem_euclid(order);
        Ok(FieldElement(t.exp[e as usize]))
    }

    /// Product computed by polynomial multiplication and reduction, without
    /// the log tables.
    pub fn mul_poly(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let t = &*self.0;
        FieldElement(poly_mul_rep(a.0, b.0, t.p, t.h, &t.modulus))
    }

    /// Dot product of two coordinate vectors.
    #[inline]
    pub fn dot(&self, x: &[FieldElement], y: &[FieldElement]) -> FieldElement {
        x.iter()
            .zip(y)
            .fold(FieldElement::ZERO, |acc, (&a, &b)| self.add(acc, self.mul(a, b)))
    }
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Splits `q = p^h`, or `None` when `q` is not a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut h) = (q, 0);
    while r % p == 0 {
        r /= p;
        h += 1;
    }
    (r == 1).then_some((p, h))
}

fn decode_rep(mut r: u32, p: u32, h: u32) -> Vec<u32> {
    (0..h)
        .map(|_| {
            let c = r % p;
            r /= p;
            c
        })
        .collect()
}

fn encode_rep(coeffs: &[u32], p: u32) -> u32 {
    coeffs.iter().rev().fold(0, |acc, &c| acc * p + c)
}

fn poly_mul_rep(a: u32, b: u32, p: u32, h: u32, modulus: &[u32]) -> u32 {
    let x = decode_rep(a, p, h);
    let y = decode_rep(b, p, h);
    let mut prod = vec![0u32; 2 * h as usize];
    for (i, &xi) in x.iter().enumerate() {
        if xi == 0 {
            continue;
        }
        for (j, &yj) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + xi * yj) % p;
        }
    }
    poly_rem_in_place(&mut prod, modulus, p);
    prod.truncate(h as usize);
    encode_rep(&prod, p)
}

/// Reduces `a` modulo a monic `m` in place; the remainder occupies the low
/// `deg m` coefficients.
fn poly_rem_in_place(a: &mut [u32], m: &[u32], p: u32) {
    let dm = m.len() - 1;
    for top in (dm..a.len()).rev() {
        let c = a[top];
        if c == 0 {
            continue;
        }
        for (k, &mk) in m.iter().enumerate() {
            let idx = top - dm + k;
            a[idx] = (a[idx] + (p - c) * mk) % p;
        }
    }
}

/// Trial division of a monic `m` by every monic polynomial of degree
/// `1..=deg(m)/2`.
fn is_irreducible(m: &[u32], p: u32) -> bool {
    let deg = m.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for low in 0..count {
            let mut divisor = decode_rep(low as u32, p, d as u32);
            divisor.push(1);
            let mut rem = m.to_vec();
            poly_rem_in_place(&mut rem, &divisor, p);
            if rem[..d].iter().all(|&c| c == 0) {
                return false;
            }
        }
    }
    true
}

fn smallest_irreducible(p: u32, h: u32) -> Vec<u32> {
    let count = (p as u64).pow(h);
    for r in 0..count {
        // c_0 is the most significant digit of the lexicographic counter.
        let mut coeffs = vec![0u32; h as usize + 1];
        let mut x = r;
        for i in (0..h as usize).rev() {
            coeffs[i] = (x % p as u64) as u32;
            x /= p as u64;
        }
        coeffs[h as usize] = 1;
        if is_irreducible(&coeffs, p) {
            return coeffs;
        }
    }
    unreachable!("an irreducible polynomial exists in every degree")
}

fn build_log_tables(t: &mut Tables) {
    let q = t.q;
    let order = q - 1;
    let mut exp = vec![0u32; 2 * order as usize];
    let mut log = vec![0u32; q as usize];
    for g in 1..q {
        let mut x = 1u32;
        let mut ok = true;
        for i in 0..order {
            if i > 0 && x == 1 {
                ok = false;
                break;
            }
            exp[i as usize] = x;
            x = poly_mul_rep(x, g, t.p, t.h, &t.modulus);
        }
        if ok {
            break;
        }
    }
    for i in 0..order as usize {
        exp[i + order as usize] = exp[i];
        log[exp[i] as usize] = i as u32;
    }
    t.exp = exp;
    t.log = log;
}
