//! Square-free decomposition, factorization, exact square roots and divisor
//! enumeration over `F_q`.
//!
//! Factoring is the classical three-stage pipeline: square-free
//! decomposition (characteristic-`p` aware), distinct-degree splitting, then
//! Cantor–Zassenhaus equal-degree splitting driven by a fixed-seed RNG so
//! that every run returns identical output.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{domain, Error, Result};
use crate::field::{Fq, FqElem};
use crate::poly::{gcd, Poly};

const EDF_SEED: u64 = 0x5eed_d41f_e1d0_0003;

/// `unit * prod parts[i].0 ^ parts[i].1`, parts monic, square-free and pairwise coprime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomp {
    pub unit: FqElem,
    pub parts: Vec<(Poly, u32)>,
}

impl SquarefreeDecomp {
    pub fn expand(&self, field: &Fq) -> Poly {
        expand(field, self.unit, &self.parts)
    }

    /// The part with multiplicity exactly `i`, or 1.
    pub fn part(&self, i: u32) -> Option<&Poly> {
        self.parts.iter().find(|(_, m)| *m == i).map(|(d, _)| d)
    }
}

/// `unit * prod factors[i].0 ^ factors[i].1` with monic irreducible factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

impl Factorization {
    pub fn expand(&self, field: &Fq) -> Poly {
        expand(field, self.unit, &self.factors)
    }

    /// Multiset of `(degree, multiplicity)` pairs, sorted.
    pub fn pattern(&self) -> Vec<(usize, u32)> {
        let mut v: Vec<_> = self
            .factors
            .iter()
            .map(|(f, m)| (f.deg().unwrap_or(0), *m))
            .collect();
        v.sort();
        v
    }
}

fn expand(field: &Fq, unit: FqElem, parts: &[(Poly, u32)]) -> Poly {
    parts
        .iter()
        .fold(Poly::constant(field, unit), |acc, (d, i)| &acc * &d.pow(*i))
}

fn nonzero(f: &Poly, op: &str) -> Result<()> {
    if f.is_zero() {
        Err(domain(format!("{op} of the zero polynomial")))
    } else {
        Ok(())
    }
}

/// Replaces `sum c_i x^(p i)` by `sum c_i^(1/p) x^i`.
fn pth_root(f: &Poly) -> Poly {
    let field = f.field();
    let p = field.p() as usize;
    let cs = f
        .coeffs()
        .iter()
        .step_by(p)
        .map(|&c| field.pth_root(c))
        .collect();
    Poly::new(field.clone(), cs)
}

/// Square-free parts of a monic polynomial, multiplicities unsorted.
fn sqf_monic(f: &Poly) -> Vec<(Poly, u32)> {
    if f.deg() == Some(0) {
        return Vec::new();
    }
    let p = f.field().p();
    let df = f.derivative();
    if df.is_zero() {
        return sqf_monic(&pth_root(f))
            .into_iter()
            .map(|(d, i)| (d, i * p))
            .collect();
    }
    let mut out = Vec::new();
    let mut c = gcd(f, &df);
    let mut w = f.exact_div(&c).expect("gcd divides f");
    let mut i = 1u32;
    while !w.is_one() {
        let y = gcd(&w, &c);
        let z = w.exact_div(&y).expect("gcd divides w");
        if !z.is_one() {
            out.push((z, i));
        }
        c = c.exact_div(&y).expect("gcd divides c");
        w = y;
        i += 1;
    }
    if !c.is_one() {
        out.extend(sqf_monic(&pth_root(&c)).into_iter().map(|(d, j)| (d, j * p)));
    }
    out
}

/// Square-free decomposition `f = unit * prod D_i^i`.
pub fn squarefree_decompose(f: &Poly) -> Result<SquarefreeDecomp> {
    nonzero(f, "square-free decomposition")?;
    let mut parts = sqf_monic(&f.monic());
    parts.sort_by_key(|(_, i)| *i);
    Ok(SquarefreeDecomp { unit: f.lc(), parts })
}

/// `x^(q^k) mod m` computed by iterated `q`-th powers.
fn frobenius_power(x: &Poly, q: u64, k: usize, m: &Poly) -> Poly {
    let mut h = x.rem(m);
    for _ in 0..k {
        h = h.pow_mod(q, m);
    }
    h
}

/// Rabin's irreducibility test.
pub fn is_irreducible(f: &Poly) -> bool {
    let Some(n) = f.deg() else { return false };
    if n == 0 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let field = f.field();
    let q = field.order() as u64;
    let f = f.monic();
    let x = Poly::var(field);
    if frobenius_power(&x, q, n, &f) != x.rem(&f) {
        return false;
    }
    let mut m = n;
    let mut r = 2;
    let mut primes = Vec::new();
    while r * r <= m {
        if m % r == 0 {
            primes.push(r);
            while m % r == 0 {
                m /= r;
            }
        }
        r += 1;
    }
    if m > 1 {
        primes.push(m);
    }
    primes.into_iter().all(|r| {
        let h = frobenius_power(&x, q, n / r, &f);
        gcd(&(&h - &x), &f).is_one()
    })
}

/// Distinct-degree split of a monic square-free polynomial: `(product of all
/// irreducible factors of degree d, d)`.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order() as u64;
    let x = Poly::var(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 1;
    while rest.deg().unwrap_or(0) >= 2 * d {
        h = h.pow_mod(q, &rest);
        let g = gcd(&rest, &(&h - &x));
        if !g.is_one() {
            rest = rest.exact_div(&g).expect("gcd divides");
            h = h.rem(&rest);
            out.push((g, d));
        }
        d += 1;
    }
    if let Some(n) = rest.deg().filter(|&n| n > 0) {
        out.push((rest, n));
    }
    out
}

fn random_below(field: &Fq, n: usize, rng: &mut ChaCha8Rng) -> Poly {
    use rand::Rng;
    let cs = (0..n)
        .map(|_| field.elem(rng.gen_range(0..field.order())).unwrap())
        .collect();
    Poly::new(field.clone(), cs)
}

/// Cantor–Zassenhaus: splits a product of distinct irreducibles of degree `d`.
fn equal_degree(f: &Poly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<Poly>) {
    let n = f.deg().unwrap_or(0);
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = f.field();
    let q = field.order() as u64;
    loop {
        let a = random_below(field, n, rng);
        if a.deg().unwrap_or(0) == 0 {
            continue;
        }
        let b = if field.p() == 2 {
            // trace of a from F_{q^d} down to F_2
            let k = field.abs_degree() as usize * d;
            let mut t = a.rem(f);
            let mut acc = t.clone();
            for _ in 1..k {
                t = (&t * &t).rem(f);
                acc = &acc + &t;
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a * a^q * ... * a^(q^(d-1)))^((q-1)/2)
            let mut conj = a.rem(f);
            let mut norm = conj.clone();
            for _ in 1..d {
                conj = conj.pow_mod(q, f);
                norm = (&norm * &conj).rem(f);
            }
            &norm.pow_mod((q - 1) / 2, f) - &Poly::one(field)
        };
        let g = gcd(&b, f);
        if let Some(gd) = g.deg() {
            if gd > 0 && gd < n {
                let h = f.exact_div(&g).expect("gcd divides");
                equal_degree(&g, d, rng, out);
                equal_degree(&h, d, rng, out);
                return;
            }
        }
    }
}

/// Complete factorization into monic irreducibles, sorted canonically.
pub fn factor(f: &Poly) -> Result<Factorization> {
    nonzero(f, "factorization")?;
    let sqf = squarefree_decompose(f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(EDF_SEED);
    let mut factors = Vec::new();
    for (part, mult) in &sqf.parts {
        for (block, d) in distinct_degree(part) {
            let mut pieces = Vec::new();
            equal_degree(&block, d, &mut rng, &mut pieces);
            factors.extend(pieces.into_iter().map(|g| (g, *mult)));
        }
    }
    factors.sort();
    Ok(Factorization { unit: sqf.unit, factors })
}

/// Result of [`exact_sqrt`]: `root^2 = monic(f)`, and `unit_root^2 = lc(f)` when it exists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SqrtResult {
    pub root: Poly,
    pub unit_root: Option<FqElem>,
}

/// Square root of the monic part of `f`.
pub fn exact_sqrt(f: &Poly) -> Result<SqrtResult> {
    nonzero(f, "square root")?;
    let sqf = squarefree_decompose(f)?;
    let field = f.field();
    let mut root = Poly::one(field);
    for (d, i) in &sqf.parts {
        if i % 2 != 0 {
            return Err(Error::NotASquare);
        }
        root = &root * &d.pow(i / 2);
    }
    Ok(SqrtResult { root, unit_root: field.sqrt(sqf.unit) })
}

/// All monic divisors of `f`, sorted canonically.
pub fn divisors(f: &Poly) -> Result<Vec<Poly>> {
    nonzero(f, "divisor enumeration")?;
    let fac = factor(f)?;
    let mut out = vec![Poly::one(f.field())];
    for (p, m) in &fac.factors {
        let mut next = Vec::with_capacity(out.len() * (*m as usize + 1));
        for d in &out {
            let mut cur = d.clone();
            next.push(cur.clone());
            for _ in 0..*m {
                cur = &cur * p;
                next.push(cur.clone());
            }
        }
        out = next;
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// The residue field `A/p` and the image of `a` in it.
pub fn residue_field(p: &Poly) -> Result<Fq> {
    let base = p.field();
    if p.deg().unwrap_or(0) == 0 {
        return Err(domain("residue field needs a nonconstant modulus"));
    }
    base.extend(p.monic().coeffs(), "t")
}

/// Reduces `a` modulo `p` into the residue field built by [`residue_field`].
pub fn reduce_to_residue(a: &Poly, p: &Poly, residue: &Fq) -> FqElem {
    let r = a.rem(p);
    residue
        .from_coords(r.coeffs())
        .expect("remainder has degree below the residue degree")
}

/// A polynomial in `x` with coefficients in `A` reduced modulo an irreducible
/// `p` and factored over `A/p`.
#[derive(Clone, Debug)]
pub struct ResidueFactorization {
    pub field: Fq,
    pub reduced: Poly,
    pub factorization: Factorization,
}

/// Factors `sum coeffs[i] x^i` modulo the irreducible `p`.
pub fn residue_factor(coeffs: &[Poly], p: &Poly) -> Result<ResidueFactorization> {
    if !is_irreducible(p) {
        return Err(domain(format!("{p} is not irreducible")));
    }
    let field = residue_field(p)?;
    let reduced = Poly::new(
        field.clone(),
        coeffs.iter().map(|c| reduce_to_residue(c, p, &field)).collect(),
    );
    let factorization = factor(&reduced)?;
    Ok(ResidueFactorization { field, reduced, factorization })
}
