//! The cubic function field `k(pi)` cut out by a rank-3 Weil polynomial
//!
//! `M(x) = x^3 + a1 x^2 + a2 x + mu * pv^m`.
//!
//! From `M` we compute the local picture at the characteristic place `v`
//! (height, residue pattern), the standard form `M0 = x^3 + c1 x + c2` of the
//! depressed cubic, the field discriminant, the index of `A[pi~]` in the
//! maximal order and a pair `(alpha2, beta2)` such that
//! `(1, pi~, (alpha2 + beta2 pi~ + pi~^2) / I)` is an integral basis.
//!
//! Characteristics 2 and 3 are rejected: the depressed cubic needs `1/3` and
//! `1/27`, and the discriminant formulas used here assume tame ramification
//! of a cubic extension.

use crate::error::{inconsistent, Error, Result};
use crate::factor::{factor, reduce_to_residue, residue_factor, residue_field, squarefree_decompose, exact_sqrt};
use crate::field::{Fq, FqElem};
use crate::poly::{gcd, xgcd, Poly};

/// Residue classes mod `I` searched exhaustively before switching to lifting.
pub const EXHAUSTIVE_SEARCH_LIMIT: u64 = 1_000_000;

/// Descriptor of an isogeny class: `M(x) = x^3 + a1 x^2 + a2 x + mu * pv^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeilCubic {
    a1: Poly,
    a2: Poly,
    mu: FqElem,
    pv: Poly,
    m: u32,
}

impl WeilCubic {
    /// Checks the shape of the data (nonzero `mu`, `pv` monic irreducible,
    /// `m >= 1`, one coefficient field). Arithmetic conditions are checked by
    /// [`validate_weil_necessary`].
    pub fn new(a1: Poly, a2: Poly, mu: FqElem, pv: Poly, m: u32) -> Result<WeilCubic> {
        let field = pv.field();
        if !a1.field().same(field) || !a2.field().same(field) {
            return Err(Error::Domain("coefficients live in different fields".into()));
        }
        if mu.is_zero() {
            return Err(Error::Domain("mu must be a nonzero constant".into()));
        }
        if m == 0 {
            return Err(Error::Domain("m must be positive".into()));
        }
        if !pv.is_monic() || !crate::factor::is_irreducible(&pv) {
            return Err(Error::Domain(format!("pv = {pv} must be monic irreducible")));
        }
        Ok(WeilCubic { a1, a2, mu, pv, m })
    }

    /// Builds the descriptor from a raw constant term, recovering `mu` and `m`.
    pub fn from_coefficients(a1: Poly, a2: Poly, a0: Poly, pv: Poly) -> Result<WeilCubic> {
        let m = a0.valuation(&pv).ok_or(Error::BadConstantTerm)?;
        let rest = a0.exact_div(&pv.pow(m)).ok_or(Error::BadConstantTerm)?;
        if m == 0 || !rest.is_unit() {
            return Err(Error::BadConstantTerm);
        }
        WeilCubic::new(a1, a2, rest.lc(), pv, m)
    }

    pub fn field(&self) -> &Fq {
        self.pv.field()
    }

    pub fn a1(&self) -> &Poly {
        &self.a1
    }

    pub fn a2(&self) -> &Poly {
        &self.a2
    }

    pub fn mu(&self) -> FqElem {
        self.mu
    }

    pub fn pv(&self) -> &Poly {
        &self.pv
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// `mu * pv^m`.
    pub fn a0(&self) -> Poly {
        self.pv.pow(self.m).scale(self.mu)
    }

    /// Ascending coefficients in `x`: `[a0, a2, a1, 1]`.
    pub fn coeffs(&self) -> [Poly; 4] {
        [self.a0(), self.a2.clone(), self.a1.clone(), Poly::one(self.field())]
    }

    /// `M(r)` for `r` in `A`.
    pub fn eval(&self, r: &Poly) -> Poly {
        let [c0, c1, c2, c3] = self.coeffs();
        let acc = &(&c3 * r) + &c2;
        let acc = &(&acc * r) + &c1;
        &(&acc * r) + &c0
    }
}

/// Local data of `M` at the characteristic place `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalData {
    /// Sub-degree of `M mod pv`.
    pub height: u32,
    pub etale_degree: u32,
    /// `(degree, multiplicity)` of the irreducible factors of `M mod pv`.
    pub residue_pattern: Vec<(usize, u32)>,
    pub supersingular: bool,
    /// `pv | a2`.
    pub v_splits_a2: bool,
}

fn check_characteristic(field: &Fq) -> Result<()> {
    match field.p() {
        2 | 3 => Err(Error::UnsupportedCharacteristic(field.p())),
        _ => Ok(()),
    }
}

/// Sub-degree of `M mod pv`.
pub fn height(w: &WeilCubic) -> u32 {
    w.coeffs()
        .iter()
        .position(|c| !w.pv.divides(c))
        .expect("M is monic") as u32
}

/// Root of `M` in `A`, if any. A root in `k` of the monic `M` lies in `A`
/// and divides `a0 = mu * pv^m`, so it is `u * pv^j` for a unit `u`.
fn root_in_a(w: &WeilCubic) -> Option<Poly> {
    let field = w.field();
    (0..=w.m).find_map(|j| {
        let pj = w.pv.pow(j);
        field
            .elements()
            .skip(1)
            .map(|u| pj.scale(u))
            .find(|r| w.eval(r).is_zero())
    })
}

/// Checks the necessary conditions for `M` to be a Weil polynomial of rank 3
/// and returns the local data at `v`.
///
/// Verified: characteristic is not 2 or 3, `M` is irreducible over `k`,
/// `pv` divides the constant term, and the Newton polygon of `M` at `v`
/// has a single positive slope, i.e. all roots of `M` that vanish at `v`
/// share one valuation, as they must when `pi` has a unique zero.
pub fn validate_weil_necessary(w: &WeilCubic) -> Result<LocalData> {
    check_characteristic(w.field())?;
    if let Some(r) = root_in_a(w) {
        return Err(Error::Reducible(r.to_string()));
    }
    let h = height(w);
    if h == 0 {
        return Err(Error::NotWeilAtV("pv does not divide the constant term".into()));
    }
    // lower hull from (0, m) to (h, 0) must be one segment
    let coeffs = w.coeffs();
    for (i, c) in coeffs.iter().enumerate().take(h as usize).skip(1) {
        let v = c.valuation(&w.pv).map(u64::from).unwrap_or(u64::MAX / 4);
        if h as u64 * v < w.m as u64 * (h as u64 - i as u64) {
            return Err(Error::NotWeilAtV(format!(
                "Newton polygon at v has more than one positive slope (coefficient of x^{i})"
            )));
        }
    }
    let res = residue_factor(&coeffs, &w.pv)?;
    Ok(LocalData {
        height: h,
        etale_degree: 3 - h,
        residue_pattern: res.factorization.pattern(),
        supersingular: h == 3,
        v_splits_a2: w.pv.divides(&w.a2),
    })
}

/// Depressed cubic `x^3 + b1 x + b2` and its standard form `x^3 + c1 x + c2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardForm {
    pub b1: Poly,
    pub b2: Poly,
    pub g1: Poly,
    pub g2: Poly,
    /// `gcd(g1, g2)`.
    pub g: Poly,
    pub c1: Poly,
    pub c2: Poly,
    /// `a1 / 3`, so that `pi~ = (pi + shift) / g`.
    pub shift: Poly,
}

impl StandardForm {
    /// `-4 c1^3 - 27 c2^2`.
    pub fn disc_m0(&self) -> Poly {
        let f = self.c1.field();
        let a = self.c1.pow(3).scale(f.from_int(-4));
        let b = self.c2.pow(2).scale(f.from_int(-27));
        &a + &b
    }

    /// `x^3 + c1 x + c2` as ascending coefficients.
    pub fn m0_coeffs(&self) -> [Poly; 4] {
        let f = self.c1.field();
        [self.c2.clone(), self.c1.clone(), Poly::zero(f), Poly::one(f)]
    }
}

/// `prod D_i^(floor(i / k))` over the square-free decomposition of `b`.
fn power_part(b: &Poly, k: u32) -> Result<Poly> {
    let s = squarefree_decompose(b)?;
    Ok(s.parts
        .iter()
        .fold(Poly::one(b.field()), |acc, (d, i)| &acc * &d.pow(i / k)))
}

/// Standard form of `M`.
pub fn standard_form(w: &WeilCubic) -> Result<StandardForm> {
    let field = w.field();
    check_characteristic(field)?;
    let third = field.inv(field.from_int(3)).expect("char != 3");
    let inv27 = field.inv(field.from_int(27)).expect("char != 3");
    let (a1, a2) = (&w.a1, &w.a2);
    let b1 = a2 - &(a1 * a1).scale(third);
    let b2 = &(&a1.pow(3).scale(field.mul(field.from_int(2), inv27)) - &(a1 * a2).scale(third)) + &w.a0();
    if b2.is_zero() {
        return Err(Error::Reducible("pi~ = 0 is a root of the depressed cubic".into()));
    }
    let g2 = power_part(&b2, 3)?;
    // b1 = 0 gives v(c1) = infinity everywhere: only the cube part of b2 can go
    let (g1, g) = if b1.is_zero() {
        (Poly::zero(field), g2.clone())
    } else {
        let g1 = power_part(&b1, 2)?;
        let g = gcd(&g1, &g2);
        (g1, g)
    };
    let c1 = b1
        .exact_div(&g.pow(2))
        .ok_or_else(|| inconsistent("g^2 does not divide b1"))?;
    let c2 = b2
        .exact_div(&g.pow(3))
        .ok_or_else(|| inconsistent("g^3 does not divide b2"))?;
    let common = gcd(&c1, &c2);
    if !common.is_one() {
        for (p, _) in factor(&common)?.factors {
            let v1 = c1.valuation(&p).unwrap_or(u32::MAX);
            let v2 = c2.valuation(&p).unwrap_or(u32::MAX);
            if v1 >= 2 && v2 >= 3 {
                return Err(inconsistent(format!("standard form is not standard at {p}")));
            }
        }
    }
    Ok(StandardForm { b1, b2, g1, g2, g, c1, c2, shift: a1.scale(third) })
}

/// Field discriminant, normalized monic, with the unit of `disc(M0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Discriminant {
    pub delta: Poly,
    pub unit: FqElem,
    pub disc_m0: Poly,
}

/// Discriminant of `k(pi)` from the square-free decomposition of
/// `disc(M0) = unit * prod D_i^i`:
/// `Delta = D * gcd(D2 D4, c2)^2` with `D` the product of odd-index parts.
///
/// Cross-checked prime by prime: `v(Delta) = 2` iff `v(c1) >= v(c2) >= 1`,
/// `v(Delta) = 1` iff `v(disc M0)` is odd, otherwise 0.
pub fn field_discriminant(sf: &StandardForm) -> Result<Discriminant> {
    let field = sf.c1.field();
    let disc_m0 = sf.disc_m0();
    if disc_m0.is_zero() {
        return Err(inconsistent("disc(M0) vanishes; M0 is not separable"));
    }
    let sqf = squarefree_decompose(&disc_m0)?;
    let one = Poly::one(field);
    let part = |i: u32| sqf.part(i).cloned().unwrap_or_else(|| one.clone());
    let d_odd = sqf
        .parts
        .iter()
        .filter(|(_, i)| i % 2 == 1)
        .fold(one.clone(), |acc, (d, _)| &acc * d);
    let wild = gcd(&(&part(2) * &part(4)), &sf.c2);
    let delta = (&d_odd * &wild.pow(2)).monic();

    for (p, _) in factor(&disc_m0)?.factors {
        let v_c1 = sf.c1.valuation(&p).unwrap_or(u32::MAX);
        let v_c2 = sf.c2.valuation(&p).unwrap_or(u32::MAX);
        let v_disc = disc_m0.valuation(&p).unwrap_or(0);
        let expected = if v_c1 >= v_c2 && v_c2 >= 1 {
            2
        } else if v_disc % 2 == 1 {
            1
        } else {
            0
        };
        let got = delta.valuation(&p).unwrap_or(0);
        if got != expected {
            return Err(inconsistent(format!(
                "discriminant valuation at {p} is {got}, valuation criterion gives {expected}"
            )));
        }
    }
    Ok(Discriminant { delta, unit: sqf.unit, disc_m0 })
}

/// Index `I` of `A[pi~]` in the maximal order: the monic square root of `disc(M0) / Delta`.
pub fn index(sf: &StandardForm, delta: &Poly) -> Result<Poly> {
    let quotient = sf
        .disc_m0()
        .exact_div(delta)
        .ok_or_else(|| inconsistent("Delta does not divide disc(M0)"))?;
    match exact_sqrt(&quotient) {
        Ok(r) => Ok(r.root),
        Err(Error::NotASquare) => Err(inconsistent("disc(M0)/Delta is not a square")),
        Err(e) => Err(e),
    }
}

fn cubic_m0(sf: &StandardForm, beta: &Poly) -> Poly {
    &(&beta.pow(3) + &(&sf.c1 * beta)) + &sf.c2
}

fn cubic_m0_derivative(sf: &StandardForm, beta: &Poly) -> Poly {
    let f = beta.field();
    &beta.pow(2).scale(f.from_int(3)) + &sf.c1
}

/// The three congruences characterizing an integral basis.
pub fn satisfies_basis_congruences(sf: &StandardForm, index: &Poly, alpha2: &Poly, beta2: &Poly) -> bool {
    let f = index.field();
    let i2 = index.pow(2);
    let two_c1_third = sf.c1.scale(f.div(f.from_int(2), f.from_int(3)));
    cubic_m0_derivative(sf, beta2).rem(index).is_zero()
        && cubic_m0(sf, beta2).rem(&i2).is_zero()
        && (alpha2 + &beta2.pow(2).scale(f.from_int(2))).rem(index).is_zero()
        && (alpha2 - &two_c1_third).rem(index).is_zero()
}

/// `(alpha2, beta2)` with `deg alpha2, deg beta2 < deg I` solving
///
/// ```text
/// 3 beta2^2 + c1 = 0 mod I,   beta2^3 + c1 beta2 + c2 = 0 mod I^2,   alpha2 = -2 beta2^2 mod I.
/// ```
///
/// Writing `f = x^3 + c1 x + c2`, the first condition says `f'(beta2) = 0 mod I`,
/// so `f(beta2 + I t) = f(beta2) mod I^2` and both conditions depend only on
/// `beta2 mod I`. The solution is unique mod `I` (two different residues
/// would put `(beta - beta') pi~ / I` in the maximal order), so the reduced
/// representative is also the smallest solution of degree `< deg I^2`.
pub fn integral_basis(sf: &StandardForm, index: &Poly) -> Result<(Poly, Poly)> {
    let field = index.field();
    if index.is_one() {
        return Ok((Poly::zero(field), Poly::zero(field)));
    }
    let d = index.deg().ok_or(Error::NoSolution)?;
    let space = (field.order() as u64).checked_pow(d as u32);
    let beta2 = match space {
        Some(n) if n <= EXHAUSTIVE_SEARCH_LIMIT => solve_beta_exhaustive(sf, index)?,
        _ => solve_beta_lifting(sf, index)?,
    };
    let alpha2 = (-&beta2.pow(2).scale(field.from_int(2))).rem(index);
    if !satisfies_basis_congruences(sf, index, &alpha2, &beta2) {
        return Err(Error::NoSolution);
    }
    Ok((alpha2, beta2))
}

/// Scans residues mod `I` in canonical order.
pub fn solve_beta_exhaustive(sf: &StandardForm, index: &Poly) -> Result<Poly> {
    let d = index.deg().unwrap_or(0);
    let i2 = index.pow(2);
    Poly::all_below_degree(index.field(), d)
        .find(|b| cubic_m0_derivative(sf, b).rem(index).is_zero() && cubic_m0(sf, b).rem(&i2).is_zero())
        .ok_or(Error::NoSolution)
}

/// Per prime power `P^k || I`, lifts `beta mod P^j` one level at a time
/// keeping the residues with `f'(beta) = 0 mod P^j` and `f(beta) = 0 mod P^(2j)`,
/// then recombines with the Chinese remainder theorem.
pub fn solve_beta_lifting(sf: &StandardForm, index: &Poly) -> Result<Poly> {
    let field = index.field();
    let mut modulus = Poly::one(field);
    let mut beta = Poly::zero(field);
    for (p, k) in factor(index)?.factors {
        let residue = residue_field(&p)?;
        let third = field.inv(field.from_int(3)).expect("char != 3");
        // level 1: beta^2 = -c1/3 in A/p
        let target = reduce_to_residue(&(-&sf.c1.scale(third)), &p, &residue);
        let Some(r) = residue.sqrt(target) else {
            return Err(Error::NoSolution);
        };
        let lift = |x: FqElem| Poly::new(field.clone(), residue.coords(x));
        let mut level: Vec<Poly> = vec![lift(r), lift(residue.neg(r))];
        level.sort();
        level.dedup();
        let ok = |b: &Poly, j: u32| {
            cubic_m0_derivative(sf, b).rem(&p.pow(j)).is_zero() && cubic_m0(sf, b).rem(&p.pow(2 * j)).is_zero()
        };
        level.retain(|b| ok(b, 1));
        for j in 1..k {
            let pj = p.pow(j);
            let mut next = Vec::new();
            for b in &level {
                for t in residue.elements() {
                    let cand = b + &(&pj * &lift(t));
                    if ok(&cand, j + 1) {
                        next.push(cand);
                    }
                }
            }
            next.sort();
            next.dedup();
            level = next;
        }
        let pk = p.pow(k);
        let local = level.into_iter().next().ok_or(Error::NoSolution)?;
        // CRT: beta = beta mod modulus, local mod pk
        let (_, s, t) = xgcd(&modulus, &pk);
        beta = (&(&(&local * &s) * &modulus) + &(&(&beta * &t) * &pk)).rem(&(&modulus * &pk));
        modulus = &modulus * &pk;
    }
    Ok(beta.rem(index))
}

/// Everything needed to describe the maximal order of `k(pi)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalOrderData {
    /// Field discriminant, monic.
    pub delta: Poly,
    /// Unit of `disc(M0)` in its square-free decomposition.
    pub delta_unit: FqElem,
    pub index: Poly,
    pub alpha2: Poly,
    pub beta2: Poly,
    pub disc_m0: Poly,
}

/// Discriminant, index and integral basis in one pass; asserts `disc(M0) = I^2 Delta` up to a unit.
pub fn maximal_order(sf: &StandardForm) -> Result<MaximalOrderData> {
    let disc = field_discriminant(sf)?;
    let idx = index(sf, &disc.delta)?;
    if (&idx.pow(2) * &disc.delta).monic() != disc.disc_m0.monic() {
        return Err(inconsistent("disc(M0) != I^2 Delta"));
    }
    let (alpha2, beta2) = integral_basis(sf, &idx)?;
    Ok(MaximalOrderData {
        delta: disc.delta,
        delta_unit: disc.unit,
        index: idx,
        alpha2,
        beta2,
        disc_m0: disc.disc_m0,
    })
}
