//! Independent oracles shared by the integration tests. Nothing here calls
//! the closure, enumeration or discriminant code under test.

#![allow(dead_code)]

use drinfeld_endo::prelude::*;
use drinfeld_endo::skew::{phi_of, SkewPoly as Skew};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub mod substrate;

pub fn f5() -> Fq {
    Fq::prime(5).unwrap()
}

/// `F_4 = F_2[z]/(z^2+z+1)` and `F_9 = F_3[z]/(z^2+1)`.
pub fn field(q: u32) -> Fq {
    match q {
        4 => Fq::from_spec(&FqSpec { p: 2, e: 2, modulus: vec![1, 1, 1] }).unwrap(),
        9 => Fq::from_spec(&FqSpec { p: 3, e: 2, modulus: vec![1, 0, 1] }).unwrap(),
        p => Fq::prime(p).unwrap(),
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly(f: &Fq, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
    let d = rng.gen_range(0..=max_deg);
    let coeffs = (0..=d).map(|_| f.elem(rng.gen_range(0..f.order())).unwrap()).collect();
    Poly::new(f.clone(), coeffs)
}

pub fn random_monic(f: &Fq, rng: &mut ChaCha8Rng, deg: usize) -> Poly {
    let mut coeffs: Vec<FqElem> = (0..deg).map(|_| f.elem(rng.gen_range(0..f.order())).unwrap()).collect();
    coeffs.push(f.one());
    Poly::new(f.clone(), coeffs)
}

/// The running example class over `F_5`.
pub fn example_weil() -> WeilCubic {
    let f = f5();
    WeilCubic::new(
        Poly::from_ints(&f, &[1, 1]),
        Poly::from_ints(&f, &[4, 3, 1]),
        f.from_int(4),
        Poly::var(&f),
        3,
    )
    .unwrap()
}

pub fn f125() -> ExtField {
    let f = f5();
    ExtField::new(&f, &[3, 3, 0, 1].map(|c| f.from_int(c))).unwrap()
}

pub fn l_elem(l: &ExtField, coords: &[i64]) -> FqElem {
    let cs: Vec<FqElem> = coords.iter().map(|&c| l.base().from_int(c)).collect();
    l.field().from_coords(&cs).unwrap()
}

/// `phi_T = -a^2 tau^3 + 2 a^2 tau^2 + a^2 tau` with `a^3 + 3a + 3 = 0`.
pub fn example_phi() -> DrinfeldModule {
    let l = f125();
    let a2 = l_elem(&l, &[0, 0, 1]);
    let lf = l.field();
    let coeffs = vec![FqElem::ZERO, a2, lf.mul(lf.from_int(2), a2), lf.neg(a2)];
    DrinfeldModule::new(Skew::new(&l, coeffs)).unwrap()
}

/// `psi_T = tau^3 + tau^2 + tau`.
pub fn example_psi() -> DrinfeldModule {
    let l = f125();
    let one = FqElem::ONE;
    DrinfeldModule::new(Skew::new(&l, vec![FqElem::ZERO, one, one, one])).unwrap()
}

/// A module in the class of [`example_weil`] whose endomorphism ring is `A[pi]`:
/// `4 tau + (4 + a) tau^2 + (2 + 3a) tau^3`.
pub fn a_pi_module() -> DrinfeldModule {
    let l = f125();
    let coeffs = vec![FqElem::ZERO, l_elem(&l, &[4]), l_elem(&l, &[4, 1]), l_elem(&l, &[2, 3])];
    DrinfeldModule::new(Skew::new(&l, coeffs)).unwrap()
}

/// The class that `psi_T = tau^3 + tau^2 + tau` actually belongs to:
/// `x^3 + (2T+3) x^2 + (3T^2+3T+1) x + 4T^3`.
pub fn psi_weil() -> WeilCubic {
    let f = f5();
    WeilCubic::new(
        Poly::from_ints(&f, &[3, 2]),
        Poly::from_ints(&f, &[1, 3, 3]),
        f.from_int(4),
        Poly::var(&f),
        3,
    )
    .unwrap()
}

// ---------------------------------------------------------------------------
// brute-force arithmetic oracles

/// Monic irreducibles of degree `d`, by trial division against all monic polynomials of degree <= d/2.
pub fn irreducibles_of_degree(f: &Fq, d: usize) -> Vec<Poly> {
    let small: Vec<Poly> = (1..=d / 2).flat_map(|k| Poly::monic_of_degree(f, k).collect::<Vec<_>>()).collect();
    Poly::monic_of_degree(f, d)
        .filter(|p| small.iter().all(|s| !s.divides(p)))
        .collect()
}

pub fn brute_irreducible(p: &Poly) -> bool {
    let Some(d) = p.deg() else { return false };
    if d == 0 {
        return false;
    }
    let f = p.field();
    (1..=d / 2).all(|k| Poly::monic_of_degree(f, k).all(|s| !s.divides(p)))
}

/// Euclid by repeated subtraction of leading terms; independent of `poly::gcd`.
pub fn naive_gcd(a: &Poly, b: &Poly) -> Poly {
    let f = a.field();
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_zero() {
        let dy = y.deg().unwrap();
        while let Some(dx) = x.deg() {
            if dx < dy {
                break;
            }
            let c = f.div(x.lc(), y.lc());
            x = &x - &(&Poly::monomial(f, c, dx - dy) * &y);
        }
        std::mem::swap(&mut x, &mut y);
    }
    if x.is_zero() {
        x
    } else {
        x.monic()
    }
}

/// Number of distinct irreducible factors of a square-free `f`: the dimension
/// of the kernel of `Q - I` where `Q` is the matrix of `x -> x^q mod f`.
pub fn berlekamp_count(f: &Poly) -> usize {
    let fld = f.field();
    let n = f.deg().unwrap();
    let q = fld.order() as u64;
    let x = Poly::var(fld);
    let xq = x.pow_mod(q, f);
    let mut rows: Vec<Vec<FqElem>> = Vec::with_capacity(n);
    let mut cur = Poly::one(fld);
    for i in 0..n {
        let mut row: Vec<FqElem> = (0..n).map(|j| cur.coeff(j)).collect();
        row[i] = fld.sub(row[i], fld.one());
        rows.push(row);
        cur = (&cur * &xq).rem(f);
    }
    n - rank(fld, rows)
}

pub fn rank(f: &Fq, mut m: Vec<Vec<FqElem>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, piv);
        let inv = f.inv(m[r][c]).unwrap();
        for j in 0..cols {
            m[r][j] = f.mul(m[r][j], inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let k = m[i][c];
                for j in 0..cols {
                    let t = f.mul(k, m[r][j]);
                    m[i][j] = f.sub(m[i][j], t);
                }
            }
        }
        r += 1;
    }
    r
}

// ---------------------------------------------------------------------------
// k(pi) as vectors over (1, pi~, pi~^2)

pub type Vec3 = [RatFunc; 3];

pub fn rf(p: &Poly) -> RatFunc {
    RatFunc::from_poly(p.clone())
}

pub fn rf_frac(n: &Poly, d: &Poly) -> RatFunc {
    RatFunc::new(n.clone(), d.clone()).unwrap()
}

/// Product using only `pi~^3 = -c1 pi~ - c2`.
pub fn mul3(x: &Vec3, y: &Vec3, c1: &Poly, c2: &Poly) -> Vec3 {
    let f = c1.field();
    let zero = RatFunc::from_poly(Poly::zero(f));
    let mut prod = vec![zero.clone(); 5];
    for i in 0..3 {
        for j in 0..3 {
            prod[i + j] = &prod[i + j] + &(&x[i] * &y[j]);
        }
    }
    let (mc1, mc2) = (rf(&-c1), rf(&-c2));
    for k in (3..5).rev() {
        let t = prod[k].clone();
        prod[k - 2] = &prod[k - 2] + &(&t * &mc1);
        prod[k - 3] = &prod[k - 3] + &(&t * &mc2);
        prod[k] = zero.clone();
    }
    [prod[0].clone(), prod[1].clone(), prod[2].clone()]
}

/// `w2 = (alpha2 + beta2 pi~ + pi~^2) / I`.
pub fn omega2(an: &Analysis) -> Vec3 {
    let m = &an.maximal;
    [
        rf_frac(&m.alpha2, &m.index),
        rf_frac(&m.beta2, &m.index),
        rf_frac(&Poly::one(m.index.field()), &m.index),
    ]
}

pub fn scale3(k: &Poly, v: &Vec3) -> Vec3 {
    let k = rf(k);
    [&k * &v[0], &k * &v[1], &k * &v[2]]
}

pub fn add3(x: &Vec3, y: &Vec3) -> Vec3 {
    [&x[0] + &y[0], &x[1] + &y[1], &x[2] + &y[2]]
}

pub fn pi_tilde(f: &Fq) -> Vec3 {
    [rf(&Poly::zero(f)), rf(&Poly::one(f)), rf(&Poly::zero(f))]
}

/// `pi = g pi~ - a1/3` as a vector.
pub fn pi_vec(an: &Analysis) -> Vec3 {
    let f = an.g().field();
    [rf(&-&an.standard.shift), rf(an.g()), rf(&Poly::zero(f))]
}

/// The generators `c w1 + b w2` and `a w2` of an HNF order.
pub fn generators(o: &OrderHnf, an: &Analysis) -> [Vec3; 2] {
    let w2 = omega2(an);
    let w1 = pi_tilde(o.a.field());
    [add3(&scale3(&o.c, &w1), &scale3(&o.b, &w2)), scale3(&o.a, &w2)]
}

/// Membership of `x0 + x1 pi~ + x2 pi~^2` in `A + A(c w1 + b w2) + A(a w2)`,
/// via `pi~^2 = I w2 - alpha2 - beta2 pi~`.
pub fn lattice_contains(o: &OrderHnf, an: &Analysis, v: &Vec3) -> bool {
    let m = &an.maximal;
    let z = &v[2] * &rf(&m.index);
    let y = &v[1] - &(&v[2] * &rf(&m.beta2));
    let x = &v[0] - &(&v[2] * &rf(&m.alpha2));
    if !(x.is_integral() && y.is_integral() && z.is_integral()) {
        return false;
    }
    let Some(s) = y.num().exact_div(&o.c) else { return false };
    o.a.divides(&(z.num() - &(&s * &o.b)))
}

/// Ring closure by multiplying generators in `k(pi)`.
pub fn oracle_closed(o: &OrderHnf, an: &Analysis) -> bool {
    let (c1, c2) = (&an.standard.c1, &an.standard.c2);
    let [u, w] = generators(o, an);
    [mul3(&u, &u, c1, c2), mul3(&w, &w, c1, c2), mul3(&u, &w, c1, c2)]
        .iter()
        .all(|p| lattice_contains(o, an, p))
}

pub fn oracle_contains_pi(o: &OrderHnf, an: &Analysis) -> bool {
    lattice_contains(o, an, &pi_vec(an))
}

/// `A[pi] = A + A pi + A pi^2` is a sublattice.
pub fn oracle_contains_a_pi(o: &OrderHnf, an: &Analysis) -> bool {
    let pi = pi_vec(an);
    lattice_contains(o, an, &pi) && lattice_contains(o, an, &mul3(&pi, &pi, &an.standard.c1, &an.standard.c2))
}

/// The acceptance predicate evaluated with the oracles above.
pub fn oracle_is_endo_ring(o: &OrderHnf, an: &Analysis) -> bool {
    let w = &an.weil;
    let v_ok = !w.pv().divides(w.a2()) || gcd_is_one(w.pv(), &o.index());
    oracle_closed(o, an) && oracle_contains_a_pi(o, an) && v_ok
}

fn gcd_is_one(a: &Poly, b: &Poly) -> bool {
    naive_gcd(a, b).is_one()
}

fn monic_divisors_brute(n: &Poly) -> Vec<Poly> {
    let f = n.field();
    (0..=n.deg().unwrap())
        .flat_map(|d| Poly::monic_of_degree(f, d).collect::<Vec<_>>())
        .filter(|p| p.divides(n))
        .collect()
}

/// Every HNF lattice between `A[pi]` and `O_max` that passes the oracle predicate:
/// `a c | g^3 I`, all `b` with `deg b < deg a`.
pub fn exhaustive_endo_rings(an: &Analysis) -> Vec<OrderHnf> {
    let f = an.g().field();
    let full = &an.g().pow(3) * &an.maximal.index;
    let mut out = Vec::new();
    for c in monic_divisors_brute(&full) {
        let rest = full.exact_div(&c).unwrap();
        for a in monic_divisors_brute(&rest) {
            for b in Poly::all_below_degree(f, a.deg().unwrap()) {
                let o = OrderHnf { a: a.clone(), b, c: c.clone() };
                if oracle_is_endo_ring(&o, an) {
                    out.push(o);
                }
            }
        }
    }
    out.sort();
    out
}

/// Discriminant of `(1, w1, w2)` from the trace form, using power sums of the roots of `M0`.
pub fn trace_form_disc(an: &Analysis) -> RatFunc {
    let (c1, c2) = (&an.standard.c1, &an.standard.c2);
    let f = c1.field();
    let k = |n: i64| Poly::constant(f, f.from_int(n));
    // Newton: p0 = 3, p1 = 0, p2 = -2 c1, p3 = -3 c2, p4 = 2 c1^2
    let power: [Poly; 5] = [k(3), Poly::zero(f), &k(-2) * c1, &k(-3) * c2, &k(2) * &c1.pow(2)];
    let trace = |v: &Vec3| -> RatFunc {
        (0..3).fold(rf(&Poly::zero(f)), |acc, i| &acc + &(&v[i] * &rf(&power[i])))
    };
    let basis = [[rf(&Poly::one(f)), rf(&Poly::zero(f)), rf(&Poly::zero(f))], pi_tilde(f), omega2(an)];
    let m: Vec<Vec<RatFunc>> = (0..3)
        .map(|i| (0..3).map(|j| trace(&mul3(&basis[i], &basis[j], c1, c2))).collect())
        .collect();
    let t = |i: usize, j: usize| m[i][j].clone();
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&t(1, a) * &t(2, b)) - &(&t(1, c) * &t(2, d));
    &(&(&t(0, 0) * &minor(1, 2, 2, 1)) - &(&t(0, 1) * &minor(0, 2, 2, 0))) + &(&t(0, 2) * &minor(0, 1, 1, 0))
}

/// All `beta` with `deg beta < deg I^2` satisfying the first two congruences.
pub fn beta_solutions_mod_i2(an: &Analysis) -> Vec<Poly> {
    let (c1, c2) = (&an.standard.c1, &an.standard.c2);
    let i = &an.maximal.index;
    let i2 = i.pow(2);
    let f = i.field();
    let three = Poly::constant(f, f.from_int(3));
    Poly::all_below_degree(f, i2.deg().unwrap())
        .filter(|b| (&(&three * &b.pow(2)) + c1).rem(i).is_zero())
        .filter(|b| (&(&b.pow(3) + &(c1 * b)) + c2).rem(&i2).is_zero())
        .collect()
}

// ---------------------------------------------------------------------------
// random desk-scale classes

/// Random cubic classes over `F_q` that pass validation, filtered by `keep`.
pub fn random_classes(
    q: u32,
    seed: u64,
    want: usize,
    mut keep: impl FnMut(&Analysis) -> bool,
) -> Vec<Analysis> {
    let f = field(q);
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < want && tries < 200_000 {
        tries += 1;
        let pv_deg = r.gen_range(1..=2);
        let pv = loop {
            let p = random_monic(&f, &mut r, pv_deg);
            if brute_irreducible(&p) {
                break p;
            }
        };
        let m = r.gen_range(1..=4u32);
        let a1 = random_poly(&f, &mut r, 2);
        let a2 = if r.gen_bool(0.3) {
            &pv.pow(r.gen_range(1..=2)) * &random_poly(&f, &mut r, 1)
        } else {
            random_poly(&f, &mut r, 3)
        };
        let mu = f.elem(r.gen_range(1..f.order())).unwrap();
        let Ok(w) = WeilCubic::new(a1, a2, mu, pv, m) else { continue };
        let Ok(an) = Analysis::run(&w) else { continue };
        if keep(&an) {
            out.push(an);
        }
    }
    out
}

/// Classes with `g != 1`: `a1 = 0`, `pv^2 | a2`, `m >= 3`.
pub fn classes_with_common_factor(q: u32, seed: u64, want: usize) -> Vec<Analysis> {
    let f = field(q);
    let mut r = rng(seed);
    let mut out = Vec::new();
    let mut tries = 0;
    while out.len() < want && tries < 50_000 {
        tries += 1;
        let pv = Poly::var(&f);
        let m = r.gen_range(3..=5u32);
        let u = random_poly(&f, &mut r, 1);
        let a1 = if r.gen_bool(0.5) { Poly::zero(&f) } else { &pv * &random_poly(&f, &mut r, 0) };
        let a2 = &pv.pow(2) * &u;
        let mu = f.elem(r.gen_range(1..f.order())).unwrap();
        let Ok(w) = WeilCubic::new(a1, a2, mu, pv, m) else { continue };
        let Ok(an) = Analysis::run(&w) else { continue };
        if !an.g().is_one() && an.candidate_count().unwrap() <= 20_000 {
            out.push(an);
        }
    }
    out
}

pub fn is_zero_skew(p: &SkewPoly) -> bool {
    p.is_zero()
}

pub fn phi(m: &DrinfeldModule, a: &Poly) -> SkewPoly {
    phi_of(m, a)
}
