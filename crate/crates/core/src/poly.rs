//! Dense univariate polynomials over a finite field.
//!
//! [`Poly`] is used both for elements of `A = F_q[T]` and for polynomials in
//! an auxiliary variable over residue fields `A/p`. Each value carries its
//! coefficient field, so the usual operator traits are available on
//! references.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{domain, Result};
use crate::field::{Fq, FqElem};

#[derive(Clone)]
pub struct Poly {
    field: Fq,
    coeffs: Vec<FqElem>,
}

impl Poly {
    /// A polynomial from ascending coefficients; trailing zeros are dropped.
    pub fn new(field: Fq, mut coeffs: Vec<FqElem>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    /// Ascending integer coefficients, reduced into the prime subfield.
    pub fn from_ints(field: &Fq, coeffs: &[i64]) -> Poly {
        let cs = coeffs.iter().map(|&c| field.from_int(c)).collect();
        Poly::new(field.clone(), cs)
    }

    pub fn zero(field: &Fq) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Fq) -> Poly {
        Poly::constant(field, field.one())
    }

    pub fn constant(field: &Fq, c: FqElem) -> Poly {
        Poly::new(field.clone(), vec![c])
    }

    /// The variable itself.
    pub fn var(field: &Fq) -> Poly {
        Poly::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Fq, c: FqElem, k: usize) -> Poly {
        let mut cs = vec![FqElem::ZERO; k + 1];
        cs[k] = c;
        Poly::new(field.clone(), cs)
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    /// Degree; `None` for the zero polynomial.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to `-1`.
    pub fn degree_i64(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    /// Nonzero constant.
    pub fn is_unit(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// Leading coefficient (zero for the zero polynomial).
    pub fn lc(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.lc() == FqElem::ONE
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lc()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn scale(&self, c: FqElem) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut cs = vec![FqElem::ZERO; k];
        cs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs: cs }
    }

    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let cs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly::new(f.clone(), cs)
    }

    pub fn eval(&self, x: FqElem) -> FqElem {
        let f = &self.field;
        self.coeffs.iter().rev().fold(FqElem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    pub fn pow(&self, mut k: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division.
    ///
    /// # Panics
    /// If `d` is zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.deg().expect("polynomial division by zero");
        let f = &self.field;
        let Some(nd) = self.deg().filter(|&n| n >= dd) else {
            return (Poly::zero(f), self.clone());
        };
        let inv = f.inv(d.lc()).expect("nonzero leading coefficient");
        let mut r = self.coeffs.clone();
        let mut q = vec![FqElem::ZERO; nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let t = f.mul(r[k + dd], inv);
            if t.is_zero() {
                continue;
            }
            q[k] = t;
            for (i, &c) in d.coeffs.iter().enumerate() {
                r[k + i] = f.sub(r[k + i], f.mul(t, c));
            }
        }
        r.truncate(dd);
        (Poly::new(f.clone(), q), Poly::new(f.clone(), r))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.div_rem(d).1
    }

    /// `self / d` when the division is exact; `None` otherwise or if `d` is zero.
    pub fn exact_div(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() {
            return None;
        }
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Whether `self` divides `other` (zero divides only zero).
    pub fn divides(&self, other: &Poly) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.rem(self).is_zero()
    }

    /// `self^e mod m` for a nonzero modulus.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m);
        let mut acc = Poly::one(&self.field).rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = (&acc * &base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m);
            }
        }
        acc
    }

    /// Largest `k` with `p^k | self`; `None` if `self` is zero.
    pub fn valuation(&self, p: &Poly) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let mut k = 0;
        let mut cur = self.clone();
        while let Some(q) = cur.exact_div(p) {
            if p.is_unit() {
                break;
            }
            cur = q;
            k += 1;
        }
        Some(k)
    }

    /// Substitutes `x` by the polynomial `g`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Poly::zero(f), |acc, &c| &(&acc * g) + &Poly::constant(f, c))
    }

    /// All polynomials of degree `< n` over the coefficient field, in canonical order.
    pub fn all_below_degree(field: &Fq, n: usize) -> impl Iterator<Item = Poly> + '_ {
        let q = field.order() as u64;
        let count = q.checked_pow(n as u32).expect("enumeration size fits in u64");
        (0..count).map(move |mut idx| {
            let mut cs = Vec::with_capacity(n);
            for _ in 0..n {
                cs.push(field.elem((idx % q) as u32).unwrap());
                idx /= q;
            }
            Poly::new(field.clone(), cs)
        })
    }

    /// All monic polynomials of degree exactly `n`.
    pub fn monic_of_degree(field: &Fq, n: usize) -> impl Iterator<Item = Poly> + '_ {
        Poly::all_below_degree(field, n).map(move |low| &low + &Poly::monomial(field, field.one(), n))
    }

    /// Renders with the given variable name.
    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let f = &self.field;
        let mut terms = Vec::new();
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mut coef = f.fmt_elem(c);
            if coef.contains(' ') {
                coef = format!("({coef})");
            }
            terms.push(match (i, coef.as_str()) {
                (0, _) => coef,
                (1, "1") => var.to_string(),
                (1, _) => format!("{coef}*{var}"),
                (_, "1") => format!("{var}^{i}"),
                _ => format!("{coef}*{var}^{i}"),
            });
        }
        terms.join(" + ")
    }

    fn zip_with(&self, other: &Poly, op: impl Fn(FqElem, FqElem) -> FqElem) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let cs = (0..n).map(|i| op(self.coeff(i), other.coeff(i))).collect();
        Poly::new(self.field.clone(), cs)
    }
}

/// Monic gcd; both arguments zero is a domain error.
pub fn poly_gcd(f: &Poly, g: &Poly) -> Result<Poly> {
    if f.is_zero() && g.is_zero() {
        return Err(domain("gcd(0, 0) is undefined"));
    }
    Ok(gcd(f, g))
}

/// Monic gcd with `gcd(0, 0) = 0`.
pub(crate) fn gcd(f: &Poly, g: &Poly) -> Poly {
    let (mut a, mut b) = (f.clone(), g.clone());
    while !b.is_zero() {
        let r = a.rem(&b);
        a = b;
        b = r;
    }
    a.monic()
}

/// Extended Euclid: `(d, s, t)` with `s*f + t*g = d = gcd(f, g)` monic.
pub fn xgcd(f: &Poly, g: &Poly) -> (Poly, Poly, Poly) {
    let field = f.field();
    let (mut r0, mut r1) = (f.clone(), g.clone());
    let (mut s0, mut s1) = (Poly::one(field), Poly::zero(field));
    let (mut t0, mut t1) = (Poly::zero(field), Poly::one(field));
    while !r1.is_zero() {
        let (q, r) = r0.div_rem(&r1);
        let s2 = &s0 - &(&q * &s1);
        let t2 = &t0 - &(&q * &t1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    match field.inv(r0.lc()) {
        Some(inv) => (r0.scale(inv), s0.scale(inv), t0.scale(inv)),
        None => (r0, s0, t0),
    }
}

/// Least common multiple, monic.
pub fn lcm(f: &Poly, g: &Poly) -> Poly {
    if f.is_zero() || g.is_zero() {
        return Poly::zero(f.field());
    }
    (f * g).exact_div(&gcd(f, g)).expect("gcd divides the product").monic()
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same(&other.field)
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

/// Canonical order: by degree, then coefficients from the leading one down.
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("T"))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.add(a, b))
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f.clone(), self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![FqElem::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f.clone(), out)
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { (&self).$m(&rhs) }
        }
        impl $tr<&Poly> for Poly {
            type Output = Poly;
            fn $m(self, rhs: &Poly) -> Poly { (&self).$m(rhs) }
        }
        impl $tr<Poly> for &Poly {
            type Output = Poly;
            fn $m(self, rhs: Poly) -> Poly { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}
