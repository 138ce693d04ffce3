//! Randomized checks of the arithmetic substrate against ground truth built
//! from known irreducibles and against brute-force and Berlekamp oracles.

use std::collections::HashMap;

use drinfeld_endo::error::Error;
use drinfeld_endo::factor::{divisors, exact_sqrt, factor, squarefree_decompose};
use drinfeld_endo::field::{Fq, FqElem};
use drinfeld_endo::poly::{poly_gcd, Poly};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{berlekamp_count, brute_irreducible, field, irreducibles_of_degree, naive_gcd, random_poly, rng};

pub const FIELDS: [u32; 6] = [2, 3, 4, 5, 7, 9];
pub const MAX_DEG: usize = 12;

/// A polynomial with known factorization: `unit * prod p_i^(m_i)`.
pub struct Known {
    pub poly: Poly,
    pub unit: FqElem,
    pub factors: Vec<(Poly, u32)>,
}

pub struct Irreducibles {
    by_degree: Vec<Vec<Poly>>,
}

impl Irreducibles {
    pub fn new(f: &Fq) -> Irreducibles {
        let top = if f.order() <= 3 { 6 } else { 4 };
        let by_degree = (0..=top).map(|d| if d == 0 { Vec::new() } else { irreducibles_of_degree(f, d) }).collect();
        Irreducibles { by_degree }
    }

    fn max_degree(&self) -> usize {
        self.by_degree.len() - 1
    }

    /// Distinct irreducibles with random multiplicities, total degree at most `MAX_DEG`.
    pub fn sample(&self, f: &Fq, r: &mut ChaCha8Rng) -> Known {
        let mut budget = r.gen_range(1..=MAX_DEG);
        let mut factors: Vec<(Poly, u32)> = Vec::new();
        while budget > 0 {
            let d = r.gen_range(1..=budget.min(self.max_degree()));
            let m = r.gen_range(1..=(budget / d).clamp(1, 4)) as u32;
            let p = self.by_degree[d].choose(r).unwrap().clone();
            budget -= d * m as usize;
            match factors.iter_mut().find(|(q, _)| *q == p) {
                Some(e) => e.1 += m,
                None => factors.push((p, m)),
            }
            if r.gen_bool(0.3) {
                break;
            }
        }
        factors.sort();
        let unit = f.elem(r.gen_range(1..f.order())).unwrap();
        let poly = factors
            .iter()
            .fold(Poly::constant(f, unit), |acc, (p, m)| &acc * &p.pow(*m));
        Known { poly, unit, factors }
    }
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

pub fn check_squarefree(k: &Known) -> Result<(), String> {
    let f = k.poly.field();
    let s = squarefree_decompose(&k.poly).map_err(|e| e.to_string())?;
    ensure(s.expand(f) == k.poly, || format!("squarefree round trip failed for {}", k.poly))?;
    ensure(s.unit == k.unit, || "squarefree unit".into())?;
    let mut expect: HashMap<u32, Poly> = HashMap::new();
    for (p, m) in &k.factors {
        let e = expect.entry(*m).or_insert_with(|| Poly::one(f));
        *e = &*e * p;
    }
    for (d, i) in &s.parts {
        ensure(d.is_monic() && !d.is_one(), || format!("part {d} is not a proper monic polynomial"))?;
        ensure(expect.get(i) == Some(d), || format!("part of multiplicity {i} is {d} in {}", k.poly))?;
        ensure(berlekamp_count(d) == k.factors.iter().filter(|(_, m)| m == i).count(), || {
            format!("Berlekamp count disagrees on {d}")
        })?;
    }
    ensure(s.parts.len() == expect.len(), || "missing squarefree parts".into())?;
    for (x, _) in &s.parts {
        for (y, _) in &s.parts {
            ensure(x == y || naive_gcd(x, y).is_one(), || "squarefree parts share a factor".into())?;
        }
    }
    Ok(())
}

pub fn check_factor(k: &Known) -> Result<(), String> {
    let f = k.poly.field();
    let fac = factor(&k.poly).map_err(|e| e.to_string())?;
    ensure(fac.expand(f) == k.poly, || format!("factor round trip failed for {}", k.poly))?;
    ensure(fac.factors == k.factors, || format!("factorization of {} differs from ground truth", k.poly))?;
    for (p, _) in &fac.factors {
        ensure(berlekamp_count(p) == 1, || format!("{p} is reducible by Berlekamp"))?;
    }
    Ok(())
}

/// Round trip and irreducibility (brute force or Berlekamp) on an unstructured random polynomial.
pub fn check_factor_random(p: &Poly) -> Result<(), String> {
    if p.is_zero() {
        return ensure(factor(p).is_err(), || "factor(0) must fail".into());
    }
    let f = p.field();
    let fac = factor(p).map_err(|e| e.to_string())?;
    ensure(fac.expand(f) == *p, || format!("factor round trip failed for {p}"))?;
    for (g, _) in &fac.factors {
        let small = (f.order() as u64).pow(g.deg().unwrap() as u32 / 2) <= 100;
        let irreducible = if small { brute_irreducible(g) } else { berlekamp_count(g) == 1 };
        ensure(irreducible && g.is_monic(), || format!("{g} is not a monic irreducible"))?;
    }
    Ok(())
}

pub fn check_sqrt(k: &Known, r: &mut ChaCha8Rng) -> Result<(), String> {
    let f = k.poly.field();
    let root = &k.poly;
    let c = f.elem(r.gen_range(1..f.order())).unwrap();
    let square = root.pow(2).scale(f.mul(c, c));
    let s = exact_sqrt(&square).map_err(|e| e.to_string())?;
    ensure(s.root == root.monic(), || format!("sqrt of {square} gave {}", s.root))?;
    let u = s.unit_root.ok_or("unit of a square has no square root")?;
    ensure(f.mul(u, u) == square.lc(), || "unit root squared".into())?;
    // an odd multiplicity rules out a square
    if k.factors.iter().any(|(_, m)| m % 2 == 1) {
        ensure(matches!(exact_sqrt(&k.poly), Err(Error::NotASquare)), || format!("{} is not a square", k.poly))?;
    }
    Ok(())
}

pub fn check_divisors(k: &Known) -> Result<(), String> {
    let f = k.poly.field();
    let ds = divisors(&k.poly).map_err(|e| e.to_string())?;
    let expect: usize = k.factors.iter().map(|(_, m)| *m as usize + 1).product();
    ensure(ds.len() == expect, || format!("{} divisors of {}, expected {expect}", ds.len(), k.poly))?;
    ensure(ds.windows(2).all(|w| w[0] < w[1]), || "divisors not strictly sorted".into())?;
    ensure(ds.iter().all(|d| d.is_monic() && d.divides(&k.poly)), || "non-divisor returned".into())?;
    let n = k.poly.deg().unwrap();
    if (f.order() as u64).pow(n as u32) <= 20_000 {
        let brute: Vec<Poly> = (0..=n)
            .flat_map(|d| Poly::monic_of_degree(f, d).collect::<Vec<_>>())
            .filter(|d| d.divides(&k.poly))
            .collect();
        let mut brute = brute;
        brute.sort();
        ensure(brute == ds, || format!("brute-force divisors of {} differ", k.poly))?;
    }
    Ok(())
}

pub fn check_gcd(a: &Poly, b: &Poly) -> Result<(), String> {
    if a.is_zero() && b.is_zero() {
        return ensure(poly_gcd(a, b).is_err(), || "gcd(0, 0) must fail".into());
    }
    let g = poly_gcd(a, b).map_err(|e| e.to_string())?;
    ensure(g == naive_gcd(a, b), || format!("gcd({a}, {b}) = {g}"))
}

/// Runs `n` instances of every check over every field; returns the number of checks run.
pub fn run_all(n: usize, seed: u64) -> Result<usize, String> {
    let mut count = 0;
    for q in FIELDS {
        let f = field(q);
        let irr = Irreducibles::new(&f);
        let mut r = rng(seed ^ q as u64);
        for _ in 0..n {
            let k = irr.sample(&f, &mut r);
            check_squarefree(&k)?;
            check_factor(&k)?;
            check_sqrt(&k, &mut r)?;
            check_divisors(&k)?;
            let p = random_poly(&f, &mut r, MAX_DEG);
            check_factor_random(&p)?;
            let shared = random_poly(&f, &mut r, 4);
            let a = &random_poly(&f, &mut r, 8) * &shared;
            let b = &random_poly(&f, &mut r, 8) * &shared;
            check_gcd(&a, &b)?;
            count += 6;
        }
    }
    Ok(count)
}
