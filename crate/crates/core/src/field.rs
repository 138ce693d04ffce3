//! Finite fields `F_q` and towers of extensions over them.
//!
//! Every field is a runtime object. Elements are small integers ([`FqElem`])
//! whose base-`p` digits are the coordinates of the element over the prime
//! field, lowest coordinate first. An extension `L = K[y]/(f)` numbers its
//! elements `sum c_i * |K|^i` with `c_i` the coordinates over `K`, so an
//! element of `K` keeps the same index inside `L` and the prime field is
//! always `0..p`.
//!
//! Multiplication goes through discrete log tables built once per field.
//! Fields are meant for desk-scale work: the order is capped at
//! [`MAX_FIELD_ORDER`].

use std::fmt;
use std::sync::Arc;

use crate::error::{domain, Result};
use crate::poly::Poly;

/// Largest field order for which log tables are built.
pub const MAX_FIELD_ORDER: u32 = 1 << 22;

const ADD_TABLE_LIMIT: u32 = 256;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FqElem(u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    /// The integer encoding of this element (base-`p` digits are its coordinates).
    pub fn index(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

/// Description of `F_q = F_p[z]/(modulus)` as it appears in configuration files.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqSpec {
    pub p: u32,
    pub e: u32,
    /// Ascending coefficients over `F_p` of a monic irreducible polynomial of
    /// degree `e`. Ignored (may be empty) when `e == 1`.
    pub modulus: Vec<i64>,
}

impl FqSpec {
    pub fn prime(p: u32) -> Self {
        FqSpec { p, e: 1, modulus: Vec::new() }
    }
}

/// A finite field. Cloning is cheap.
#[derive(Clone)]
pub struct Fq(Arc<Inner>);

struct Inner {
    p: u32,
    order: u32,
    abs_degree: u32,
    base: Option<Fq>,
    modulus: Vec<FqElem>,
    symbol: String,
    exp: Vec<u32>,
    log: Vec<u32>,
    neg: Vec<u32>,
    add: Option<Vec<u32>>,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Fq {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Fq> {
        if !is_prime(p) {
            return Err(domain(format!("{p} is not prime")));
        }
        if p > MAX_FIELD_ORDER {
            return Err(domain(format!("prime {p} exceeds the supported field size")));
        }
        let mul = |a: u32, b: u32| ((a as u64 * b as u64) % p as u64) as u32;
        Ok(Self::build(p, p, 1, None, Vec::new(), "z".into(), mul))
    }

    /// Builds `F_q` from its configuration description.
    pub fn from_spec(spec: &FqSpec) -> Result<Fq> {
        let fp = Fq::prime(spec.p)?;
        if spec.e == 0 {
            return Err(domain("extension degree must be at least 1"));
        }
        if spec.e == 1 {
            return Ok(fp);
        }
        if spec.modulus.len() != spec.e as usize + 1 {
            return Err(domain(format!(
                "modulus of F_q needs {} coefficients, got {}",
                spec.e + 1,
                spec.modulus.len()
            )));
        }
        let modulus: Vec<FqElem> = spec.modulus.iter().map(|&c| fp.from_int(c)).collect();
        fp.extend(&modulus, "z")
    }

    /// The extension `self[symbol]/(modulus)`; `modulus` is ascending, monic
    /// and must be irreducible over `self`.
    pub fn extend(&self, modulus: &[FqElem], symbol: &str) -> Result<Fq> {
        let f = Poly::new(self.clone(), modulus.to_vec());
        let n = match f.deg() {
            Some(n) if n >= 1 => n,
            _ => return Err(domain("extension modulus must have positive degree")),
        };
        if f.lc() != self.one() {
            return Err(domain("extension modulus must be monic"));
        }
        let order = (self.order() as u64).checked_pow(n as u32).filter(|&o| o <= MAX_FIELD_ORDER as u64);
        let Some(order) = order else {
            return Err(domain(format!(
                "extension of degree {n} over F_{} exceeds the supported field size",
                self.order()
            )));
        };
        if !crate::factor::is_irreducible(&f) {
            return Err(domain(format!("modulus {f} is not irreducible over F_{}", self.order())));
        }
        let base = self.clone();
        let qb = base.order();
        let m = f.coeffs().to_vec();
        let mul = move |a: u32, b: u32| {
            let xa = decode(a, qb, n);
            let xb = decode(b, qb, n);
            let mut prod = vec![FqElem::ZERO; 2 * n - 1];
            for (i, &u) in xa.iter().enumerate() {
                if u.is_zero() {
                    continue;
                }
                for (j, &v) in xb.iter().enumerate() {
                    prod[i + j] = base.add(prod[i + j], base.mul(u, v));
                }
            }
            for k in (n..prod.len()).rev() {
                let t = prod[k];
                if t.is_zero() {
                    continue;
                }
                for (i, &c) in m.iter().take(n).enumerate() {
                    prod[k - n + i] = base.sub(prod[k - n + i], base.mul(t, c));
                }
                prod[k] = FqElem::ZERO;
            }
            encode(&prod[..n], qb)
        };
        let abs = self.0.abs_degree * n as u32;
        Ok(Self::build(self.p(), order as u32, abs, Some(self.clone()), modulus.to_vec(), symbol.into(), mul))
    }

    fn build(
        p: u32,
        order: u32,
        abs_degree: u32,
        base: Option<Fq>,
        modulus: Vec<FqElem>,
        symbol: String,
        mul: impl Fn(u32, u32) -> u32,
    ) -> Fq {
        let group = order as u64 - 1;
        let primes = prime_divisors(group);
        let pow = |mut x: u32, mut k: u64| {
            let mut acc = 1u32;
            while k > 0 {
                if k & 1 == 1 {
                    acc = mul(acc, x);
                }
                x = mul(x, x);
                k >>= 1;
            }
            acc
        };
        let generator = (1..order)
            .find(|&g| primes.iter().all(|&r| pow(g, group / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(group as usize);
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for i in 0..group as u32 {
            exp.push(x);
            log[x as usize] = i;
            x = mul(x, generator);
        }
        debug_assert_eq!(x, 1);

        let digit_add = |mut a: u32, mut b: u32| {
            if p == 2 {
                return a ^ b;
            }
            let (mut r, mut pw) = (0u32, 1u32);
            for _ in 0..abs_degree {
                r += ((a % p + b % p) % p) * pw;
                a /= p;
                b /= p;
                pw = pw.wrapping_mul(p);
            }
            r
        };
        let neg = (0..order)
            .map(|a| {
                let (mut a, mut r, mut pw) = (a, 0u32, 1u32);
                for _ in 0..abs_degree {
                    r += ((p - a % p) % p) * pw;
                    a /= p;
                    pw = pw.wrapping_mul(p);
                }
                r
            })
            .collect();
        let add = (order <= ADD_TABLE_LIMIT && p != 2 && abs_degree > 1).then(|| {
            let mut t = Vec::with_capacity((order * order) as usize);
            for a in 0..order {
                for b in 0..order {
                    t.push(digit_add(a, b));
                }
            }
            t
        });
        Fq(Arc::new(Inner { p, order, abs_degree, base, modulus, symbol, exp, log, neg, add }))
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    /// Number of elements `q`.
    pub fn order(&self) -> u32 {
        self.0.order
    }

    /// Degree over the prime field.
    pub fn abs_degree(&self) -> u32 {
        self.0.abs_degree
    }

    /// The field this one was built over, if any.
    pub fn base(&self) -> Option<&Fq> {
        self.0.base.as_ref()
    }

    /// Degree over [`Fq::base`] (1 for prime fields).
    pub fn relative_degree(&self) -> usize {
        self.0.modulus.len().saturating_sub(1).max(1)
    }

    /// Defining modulus over the base field; empty for prime fields.
    pub fn modulus(&self) -> &[FqElem] {
        &self.0.modulus
    }

    pub fn symbol(&self) -> &str {
        &self.0.symbol
    }

    pub fn zero(&self) -> FqElem {
        FqElem::ZERO
    }

    pub fn one(&self) -> FqElem {
        FqElem::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> FqElem {
        FqElem(n.rem_euclid(self.p() as i64) as u32)
    }

    /// The element with the given integer encoding, if it is in range.
    pub fn elem(&self, index: u32) -> Option<FqElem> {
        (index < self.order()).then_some(FqElem(index))
    }

    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.order()).map(FqElem)
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        let inner = &*self.0;
        if inner.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        if inner.abs_degree == 1 {
            return FqElem((a.0 + b.0) % inner.p);
        }
        if let Some(t) = &inner.add {
            return FqElem(t[(a.0 * inner.order + b.0) as usize]);
        }
        let (p, mut x, mut y) = (inner.p, a.0, b.0);
        let (mut r, mut pw) = (0u32, 1u32);
        while x > 0 || y > 0 {
            r += ((x % p + y % p) % p) * pw;
            x /= p;
            y /= p;
            pw = pw.wrapping_mul(p);
        }
        FqElem(r)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        FqElem(self.0.neg[a.0 as usize])
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let inner = &*self.0;
        let g = inner.order as u64 - 1;
        let l = (inner.log[a.0 as usize] as u64 + inner.log[b.0 as usize] as u64) % g;
        FqElem(inner.exp[l as usize])
    }

    pub fn inv(&self, a: FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return None;
        }
        let inner = &*self.0;
        let g = inner.order - 1;
        Some(FqElem(inner.exp[((g - inner.log[a.0 as usize]) % g) as usize]))
    }

    /// `a / b`.
    ///
    /// # Panics
    /// If `b` is zero.
    pub fn div(&self, a: FqElem, b: FqElem) -> FqElem {
        self.mul(a, self.inv(b).expect("division by zero in F_q"))
    }

    pub fn pow(&self, a: FqElem, k: u64) -> FqElem {
        if k == 0 {
            return FqElem::ONE;
        }
        if a.is_zero() {
            return FqElem::ZERO;
        }
        let inner = &*self.0;
        let g = inner.order as u128 - 1;
        let l = (inner.log[a.0 as usize] as u128 * k as u128) % g;
        FqElem(inner.exp[l as usize])
    }

    /// `a^(base^i)` where `base` is the order of a subfield (the `q`-Frobenius iterated `i` times).
    pub fn frobenius(&self, a: FqElem, base: u32, i: u32) -> FqElem {
        if a.is_zero() || i == 0 {
            return a;
        }
        let inner = &*self.0;
        let g = inner.order as u64 - 1;
        let mut e = 1u64;
        for _ in 0..i {
            e = (e * base as u64) % g;
        }
        let l = (inner.log[a.0 as usize] as u64 * e) % g;
        FqElem(inner.exp[l as usize])
    }

    /// A square root, if one exists.
    pub fn sqrt(&self, a: FqElem) -> Option<FqElem> {
        if a.is_zero() {
            return Some(a);
        }
        let inner = &*self.0;
        let g = inner.order - 1;
        let l = inner.log[a.0 as usize];
        if inner.p == 2 {
            // squaring is a bijection; halve the log modulo the odd group order
            let half = ((l as u64) * (g as u64).div_ceil(2)) % g as u64;
            return Some(FqElem(inner.exp[half as usize]));
        }
        l.is_multiple_of(2).then(|| FqElem(inner.exp[(l / 2) as usize]))
    }

    /// The unique `p`-th root (inverse Frobenius).
    pub fn pth_root(&self, a: FqElem) -> FqElem {
        self.pow(a, (self.order() / self.p()) as u64)
    }

    /// Coordinates over the base field, lowest first (length [`Fq::relative_degree`]).
    pub fn coords(&self, a: FqElem) -> Vec<FqElem> {
        match self.base() {
            Some(b) => decode(a.0, b.order(), self.relative_degree()),
            None => vec![a],
        }
    }

    pub fn from_coords(&self, coords: &[FqElem]) -> Result<FqElem> {
        match self.base() {
            Some(b) => {
                if coords.len() > self.relative_degree() || coords.iter().any(|c| c.0 >= b.order()) {
                    return Err(domain("coordinates out of range"));
                }
                Ok(FqElem(encode(coords, b.order())))
            }
            None => match coords {
                [] => Ok(FqElem::ZERO),
                [c] if c.0 < self.order() => Ok(*c),
                _ => Err(domain("coordinates out of range")),
            },
        }
    }

    /// Same field (same object, or the same construction).
    pub fn same(&self, other: &Fq) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p
                && self.0.order == other.0.order
                && self.0.modulus == other.0.modulus
                && match (self.base(), other.base()) {
                    (None, None) => true,
                    (Some(a), Some(b)) => a.same(b),
                    _ => false,
                })
    }

    /// Human-readable element: an integer in prime fields, otherwise a
    /// polynomial in the field symbol.
    pub fn fmt_elem(&self, a: FqElem) -> String {
        let Some(base) = self.base() else {
            return a.0.to_string();
        };
        let cs = self.coords(a);
        let terms: Vec<String> = cs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let coef = base.fmt_elem(c);
                let coef = if base.base().is_some() { format!("({coef})") } else { coef };
                match (i, coef.as_str()) {
                    (0, _) => coef,
                    (1, "1") => self.symbol().to_string(),
                    (1, _) => format!("{coef}*{}", self.symbol()),
                    (_, "1") => format!("{}^{i}", self.symbol()),
                    _ => format!("{coef}*{}^{i}", self.symbol()),
                }
            })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

fn decode(mut x: u32, q: u32, n: usize) -> Vec<FqElem> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        out.push(FqElem(x % q));
        x /= q;
    }
    out
}

fn encode(coords: &[FqElem], q: u32) -> u32 {
    coords.iter().rev().fold(0u32, |acc, c| acc * q + c.0)
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.same(other)
    }
}

impl Eq for Fq {}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order())
    }
}
