//! Twisted polynomials `L{tau}` with `tau * x = x^q * tau`, rank-3 Drinfeld
//! modules over a finite `A`-field `L`, and the membership test deciding
//! whether an element of `k(pi)` is an endomorphism.
//!
//! An element `e = (n0 + n1 pi + n2 pi^2) / d` of `k(pi)` acts through
//! `phi`: it is an endomorphism iff `N = phi_n0 + phi_n1 pi + phi_n2 pi^2`
//! is right-divisible by `phi_d` in `L{tau}`. The quotient `w` then
//! satisfies `w phi_d = N`, and since `N` commutes with `phi_T` and `L{tau}`
//! has no zero divisors, `w` commutes with `phi_T` as well.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::cubic::WeilCubic;
use crate::error::{domain, inconsistent, Error, Result};
use crate::field::{Fq, FqElem};
use crate::order::{Analysis, OrderHnf};
use crate::poly::{gcd, Poly};

/// `L = F_q[y]/(f)`, remembering `F_q` so that `tau` can twist by `x -> x^q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtField {
    base: Fq,
    field: Fq,
}

impl ExtField {
    /// `modulus` is ascending over `base`, monic and irreducible.
    pub fn new(base: &Fq, modulus: &[FqElem]) -> Result<ExtField> {
        let field = base.extend(modulus, "y")?;
        Ok(ExtField { base: base.clone(), field })
    }

    pub fn base(&self) -> &Fq {
        &self.base
    }

    pub fn field(&self) -> &Fq {
        &self.field
    }

    /// `[L : F_q]`.
    pub fn degree(&self) -> usize {
        self.field.relative_degree()
    }

    /// Image of an element of `F_q`; the encodings agree.
    pub fn embed(&self, c: FqElem) -> FqElem {
        c
    }

    /// `x^(q^i)`.
    pub fn frobenius(&self, x: FqElem, i: usize) -> FqElem {
        self.field.frobenius(x, self.base.order(), (i % self.degree().max(1)) as u32)
    }

    /// Evaluates a polynomial over `F_q` at an element of `L`.
    pub fn eval(&self, p: &Poly, x: FqElem) -> FqElem {
        let l = &self.field;
        p.coeffs()
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| l.add(l.mul(acc, x), self.embed(c)))
    }
}

/// `sum coeffs[i] tau^i`.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPoly {
    ring: ExtField,
    coeffs: Vec<FqElem>,
}

impl SkewPoly {
    pub fn new(ring: &ExtField, mut coeffs: Vec<FqElem>) -> SkewPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        SkewPoly { ring: ring.clone(), coeffs }
    }

    pub fn zero(ring: &ExtField) -> SkewPoly {
        SkewPoly::new(ring, Vec::new())
    }

    pub fn constant(ring: &ExtField, c: FqElem) -> SkewPoly {
        SkewPoly::new(ring, vec![c])
    }

    pub fn one(ring: &ExtField) -> SkewPoly {
        SkewPoly::constant(ring, FqElem::ONE)
    }

    /// `c tau^k`.
    pub fn monomial(ring: &ExtField, c: FqElem, k: usize) -> SkewPoly {
        let mut cs = vec![FqElem::ZERO; k + 1];
        cs[k] = c;
        SkewPoly::new(ring, cs)
    }

    pub fn ring(&self) -> &ExtField {
        &self.ring
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    /// Degree in `tau`; `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> FqElem {
        self.coeffs.last().copied().unwrap_or(FqElem::ZERO)
    }

    /// `n = q d + r` with `deg r < deg d`.
    pub fn right_divmod(&self, d: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
        skew_right_divmod(self, d)
    }

    fn zip_with(&self, other: &SkewPoly, op: impl Fn(FqElem, FqElem) -> FqElem) -> SkewPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        SkewPoly::new(&self.ring, (0..n).map(|i| op(self.coeff(i), other.coeff(i))).collect())
    }
}

/// Product in `L{tau}`: `(u_i tau^i)(v_j tau^j) = u_i v_j^(q^i) tau^(i+j)`.
pub fn skew_mul(u: &SkewPoly, v: &SkewPoly) -> SkewPoly {
    if u.is_zero() || v.is_zero() {
        return SkewPoly::zero(&u.ring);
    }
    let ring = &u.ring;
    let l = &ring.field;
    let mut out = vec![FqElem::ZERO; u.coeffs.len() + v.coeffs.len() - 1];
    for (i, &a) in u.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, &b) in v.coeffs.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            out[i + j] = l.add(out[i + j], l.mul(a, ring.frobenius(b, i)));
        }
    }
    SkewPoly::new(ring, out)
}

/// Right Euclidean division; a zero divisor is a domain error.
pub fn skew_right_divmod(n: &SkewPoly, d: &SkewPoly) -> Result<(SkewPoly, SkewPoly)> {
    let Some(dd) = d.deg() else {
        return Err(domain("right division by the zero skew polynomial"));
    };
    let ring = &n.ring;
    let l = &ring.field;
    let mut r = n.coeffs.clone();
    let nd = match n.deg() {
        Some(k) if k >= dd => k,
        _ => return Ok((SkewPoly::zero(ring), n.clone())),
    };
    let mut q = vec![FqElem::ZERO; nd - dd + 1];
    for k in (0..=nd - dd).rev() {
        let top = r[k + dd];
        if top.is_zero() {
            continue;
        }
        // t tau^k * d has leading coefficient t * lc(d)^(q^k)
        let t = l.div(top, ring.frobenius(d.lc(), k));
        q[k] = t;
        for (i, &c) in d.coeffs.iter().enumerate() {
            r[k + i] = l.sub(r[k + i], l.mul(t, ring.frobenius(c, k)));
        }
    }
    r.truncate(dd);
    Ok((SkewPoly::new(ring, q), SkewPoly::new(ring, r)))
}

impl Add for &SkewPoly {
    type Output = SkewPoly;
    fn add(self, rhs: &SkewPoly) -> SkewPoly {
        let l = self.ring.field.clone();
        self.zip_with(rhs, |a, b| l.add(a, b))
    }
}

impl Sub for &SkewPoly {
    type Output = SkewPoly;
    fn sub(self, rhs: &SkewPoly) -> SkewPoly {
        let l = self.ring.field.clone();
        self.zip_with(rhs, |a, b| l.sub(a, b))
    }
}

impl Neg for &SkewPoly {
    type Output = SkewPoly;
    fn neg(self) -> SkewPoly {
        let l = &self.ring.field;
        SkewPoly::new(&self.ring, self.coeffs.iter().map(|&c| l.neg(c)).collect())
    }
}

impl Mul for &SkewPoly {
    type Output = SkewPoly;
    fn mul(self, rhs: &SkewPoly) -> SkewPoly {
        skew_mul(self, rhs)
    }
}

impl fmt::Display for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let l = &self.ring.field;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, &c)| {
                let s = l.fmt_elem(c);
                let s = if s.contains(' ') { format!("({s})") } else { s };
                match (i, s.as_str()) {
                    (0, _) => s,
                    (1, "1") => "tau".into(),
                    (1, _) => format!("{s}*tau"),
                    (_, "1") => format!("tau^{i}"),
                    _ => format!("{s}*tau^{i}"),
                }
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

impl fmt::Debug for SkewPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewPoly({self})")
    }
}

/// A Drinfeld module `phi: A -> L{tau}` given by `phi_T`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DrinfeldModule {
    phi_t: SkewPoly,
}

impl DrinfeldModule {
    /// `phi_T` must have positive `tau`-degree; `gamma(T)` is its constant coefficient.
    pub fn new(phi_t: SkewPoly) -> Result<DrinfeldModule> {
        match phi_t.deg() {
            Some(d) if d >= 1 => Ok(DrinfeldModule { phi_t }),
            _ => Err(domain("phi_T must have positive tau-degree")),
        }
    }

    pub fn phi_t(&self) -> &SkewPoly {
        &self.phi_t
    }

    pub fn ring(&self) -> &ExtField {
        &self.phi_t.ring
    }

    pub fn rank(&self) -> usize {
        self.phi_t.deg().unwrap_or(0)
    }

    pub fn gamma_t(&self) -> FqElem {
        self.phi_t.coeff(0)
    }
}

/// `phi_a` for `a` in `A`, by Horner's rule in `phi_T`.
pub fn phi_of(m: &DrinfeldModule, a: &Poly) -> SkewPoly {
    let ring = m.ring();
    a.coeffs().iter().rev().fold(SkewPoly::zero(ring), |acc, &c| {
        &(&acc * &m.phi_t) + &SkewPoly::constant(ring, ring.embed(c))
    })
}

/// The Frobenius endomorphism `tau^n`, `n = [L : F_q]`.
pub fn frobenius(m: &DrinfeldModule) -> SkewPoly {
    let ring = m.ring();
    SkewPoly::monomial(ring, FqElem::ONE, ring.degree())
}

/// Outcome of checking that a module lies in the isogeny class of `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassVerdict {
    InClass,
    /// `deg_tau phi_T != 3`.
    RankMismatch,
    /// `pv(gamma(T)) != 0`.
    WrongCharacteristic,
    /// `[L : F_q] != m deg pv`.
    DegreeMismatch,
    /// `M(pi) != 0` in `L{tau}`.
    FrobeniusRelation,
}

impl ClassVerdict {
    pub fn describe(self) -> &'static str {
        match self {
            ClassVerdict::InClass => "in class",
            ClassVerdict::RankMismatch => "rank mismatch",
            ClassVerdict::WrongCharacteristic => "gamma(T) is not a root of pv",
            ClassVerdict::DegreeMismatch => "[L:F_q] differs from m deg pv",
            ClassVerdict::FrobeniusRelation => "M(pi) != 0",
        }
    }
}

/// `pi^3 + phi_a1 pi^2 + phi_a2 pi + phi_a0`, which vanishes iff `M` kills the Frobenius.
pub fn weil_action(m: &DrinfeldModule, w: &WeilCubic) -> SkewPoly {
    let pi = frobenius(m);
    let pi2 = &pi * &pi;
    let pi3 = &pi2 * &pi;
    let t1 = &phi_of(m, w.a1()) * &pi2;
    let t2 = &phi_of(m, w.a2()) * &pi;
    &(&(&pi3 + &t1) + &t2) + &phi_of(m, &w.a0())
}

pub fn class_check(m: &DrinfeldModule, w: &WeilCubic) -> ClassVerdict {
    if m.rank() != 3 {
        return ClassVerdict::RankMismatch;
    }
    let ring = m.ring();
    if !ring.base().same(w.field()) {
        return ClassVerdict::WrongCharacteristic;
    }
    if !ring.eval(w.pv(), m.gamma_t()).is_zero() {
        return ClassVerdict::WrongCharacteristic;
    }
    if ring.degree() != w.m() as usize * w.pv().deg().unwrap_or(0) {
        return ClassVerdict::DegreeMismatch;
    }
    if !weil_action(m, w).is_zero() {
        return ClassVerdict::FrobeniusRelation;
    }
    ClassVerdict::InClass
}

/// `M(pi) = 0` in `L{tau}` (together with the rank and characteristic checks).
pub fn verify_weil_action(m: &DrinfeldModule, w: &WeilCubic) -> bool {
    class_check(m, w) == ClassVerdict::InClass
}

/// `(n0 + n1 pi + n2 pi^2) / d` in `k(pi)`, in lowest terms with `d` monic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KElem {
    pub n0: Poly,
    pub n1: Poly,
    pub n2: Poly,
    pub d: Poly,
}

impl KElem {
    pub fn new(n0: Poly, n1: Poly, n2: Poly, d: Poly) -> Result<KElem> {
        if d.is_zero() {
            return Err(domain("zero denominator"));
        }
        let g = gcd(&gcd(&gcd(&n0, &n1), &n2), &d);
        let unit = d.field().inv(d.exact_div(&g).expect("gcd divides").lc()).expect("nonzero");
        let norm = |x: &Poly| x.exact_div(&g).expect("gcd divides").scale(unit);
        Ok(KElem { n0: norm(&n0), n1: norm(&n1), n2: norm(&n2), d: norm(&d) })
    }

    /// The Frobenius itself.
    pub fn pi(field: &Fq) -> KElem {
        let (z, o) = (Poly::zero(field), Poly::one(field));
        KElem { n0: z.clone(), n1: o.clone(), n2: z, d: o }
    }

    /// Rewrites `(y0 + y1 pi~ + y2 pi~^2) / den` over `pi`, using `pi~ = (pi + s) / g`.
    pub fn from_pi_tilde(y: [&Poly; 3], den: &Poly, shift: &Poly, g: &Poly) -> Result<KElem> {
        let f = g.field();
        let two = Poly::constant(f, f.from_int(2));
        let [y0, y1, y2] = y;
        let g2 = g.pow(2);
        // y0 g^2 + y1 g (pi + s) + y2 (pi^2 + 2 s pi + s^2)
        let n0 = &(&(y0 * &g2) + &(&(y1 * g) * shift)) + &(y2 * &shift.pow(2));
        let n1 = &(y1 * g) + &(&(y2 * &two) * shift);
        KElem::new(n0, n1, y2.clone(), den * &g2)
    }
}

impl fmt::Display for KElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + ({})*pi + ({})*pi^2)/({})", self.n0, self.n1, self.n2, self.d)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    /// The element acts as this skew polynomial.
    Member(SkewPoly),
    NotInEnd,
}

impl Membership {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

/// Right-divides `phi_n0 + phi_n1 pi + phi_n2 pi^2` by `phi_d`.
pub fn element_membership(m: &DrinfeldModule, e: &KElem) -> Result<Membership> {
    if e.d.is_zero() {
        return Err(domain("zero denominator"));
    }
    let pi = frobenius(m);
    let pi2 = &pi * &pi;
    let num = &(&phi_of(m, &e.n0) + &(&phi_of(m, &e.n1) * &pi)) + &(&phi_of(m, &e.n2) * &pi2);
    let (quot, rem) = skew_right_divmod(&num, &phi_of(m, &e.d))?;
    Ok(if rem.is_zero() { Membership::Member(quot) } else { Membership::NotInEnd })
}

/// The two generators `c w1 + b w2` and `a w2` of an order, written over `pi`.
pub fn order_generators(o: &OrderHnf, an: &Analysis) -> Result<[KElem; 2]> {
    let (idx, alpha2, beta2) = (&an.maximal.index, &an.maximal.alpha2, &an.maximal.beta2);
    let (shift, g) = (&an.standard.shift, &an.standard.g);
    let (a, b, c) = (&o.a, &o.b, &o.c);
    // c pi~ + b (alpha2 + beta2 pi~ + pi~^2) / I
    let y0 = b * alpha2;
    let y1 = &(c * idx) + &(b * beta2);
    let first = KElem::from_pi_tilde([&y0, &y1, b], idx, shift, g)?;
    let second = KElem::from_pi_tilde([&(a * alpha2), &(a * beta2), a], idx, shift, g)?;
    Ok([first, second])
}

/// Per-candidate outcome of [`identify_endo_ring`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateVerdict {
    pub order: OrderHnf,
    pub generators_in_end: [bool; 2],
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Identification {
    pub order: OrderHnf,
    pub verdicts: Vec<CandidateVerdict>,
}

/// Finds `End(phi)` among the candidate orders: the largest candidate whose
/// generators both act as skew polynomials.
pub fn identify_endo_ring(m: &DrinfeldModule, candidates: &[OrderHnf], an: &Analysis) -> Result<Identification> {
    let verdict = class_check(m, &an.weil);
    if verdict != ClassVerdict::InClass {
        return Err(domain(format!("module is not in the isogeny class: {}", verdict.describe())));
    }
    let mut sorted = candidates.to_vec();
    sorted.sort();
    let mut verdicts = Vec::with_capacity(sorted.len());
    for o in &sorted {
        let gens = order_generators(o, an)?;
        let mut flags = [false; 2];
        for (flag, e) in flags.iter_mut().zip(&gens) {
            *flag = element_membership(m, e)?.is_member();
        }
        verdicts.push(CandidateVerdict { order: o.clone(), generators_in_end: flags });
    }
    let passing: Vec<&OrderHnf> = verdicts
        .iter()
        .filter(|v| v.generators_in_end.iter().all(|&x| x))
        .map(|v| &v.order)
        .collect();
    if passing.is_empty() {
        return Err(Error::NoCandidate);
    }
    let top: Vec<&OrderHnf> = passing
        .iter()
        .copied()
        .filter(|o| passing.iter().all(|p| p.is_contained_in(o)))
        .collect();
    match top.as_slice() {
        [o] => Ok(Identification { order: (*o).clone(), verdicts }),
        _ => Err(inconsistent("orders contained in End(phi) have no largest element")),
    }
}
