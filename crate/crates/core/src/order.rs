//! Suborders of the maximal order of `k(pi)` and the enumeration of those
//! that are endomorphism rings.
//!
//! With the integral basis `(1, w1, w2)`, `w1 = pi~`,
//! `w2 = (alpha2 + beta2 pi~ + pi~^2) / I`, every order is
//! `O = A + A (c w1 + b w2) + A (a w2)` for a unique triple `(a, b, c)` with
//! `a`, `c` monic and `deg b < deg a` (Hermite normal form of the basis
//! matrix `H = [[1,0,0],[0,c,b],[0,0,a]]`).
//!
//! `O` is a ring iff `M1 M2 H^-1` has entries in `A`, where `M2` is the
//! multiplication table of the integral basis and `M1` expresses the
//! products of the generators of `O` over `(w1^2, w2^2, w1 w2)`. It
//! contains `pi = g w1 - a1/3` iff `c | g` and `a | b g / c`. An order that
//! contains `pi` is an endomorphism ring iff it is also maximal at the zero
//! of `pi`, which only constrains it when `pv | a2`: then
//! `gcd(pv, ac) = 1` is required.

use std::cmp::Ordering;
use std::fmt;

use crate::cubic::{maximal_order, standard_form, validate_weil_necessary, LocalData, MaximalOrderData, StandardForm, WeilCubic};
use crate::error::{domain, inconsistent, Error, Result};
use crate::factor::divisors;
use crate::poly::{gcd, xgcd, Poly};

pub const DEFAULT_CANDIDATE_BOUND: u128 = 1_000_000;

/// `O = A + A (c w1 + b w2) + A (a w2)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrderHnf {
    pub a: Poly,
    pub b: Poly,
    pub c: Poly,
}

impl OrderHnf {
    /// Normalizes `a`, `c` to monic and reduces `b` mod `a`.
    pub fn new(a: Poly, b: Poly, c: Poly) -> Result<OrderHnf> {
        if a.is_zero() || c.is_zero() {
            return Err(domain("HNF diagonal entries must be nonzero"));
        }
        let a = a.monic();
        let b = b.rem(&a);
        Ok(OrderHnf { a, b, c: c.monic() })
    }

    /// The maximal order `(1, 0, 1)`.
    pub fn maximal(field: &crate::field::Fq) -> OrderHnf {
        OrderHnf { a: Poly::one(field), b: Poly::zero(field), c: Poly::one(field) }
    }

    pub fn is_maximal(&self) -> bool {
        self.a.is_one() && self.c.is_one()
    }

    /// Index `a c` of `O` in the maximal order.
    pub fn index(&self) -> Poly {
        &self.a * &self.c
    }

    /// HNF of the lattice `A + sum A (y_i w1 + z_i w2)` for a full-rank family of `(y, z)` rows.
    pub fn from_rows(rows: &[(Poly, Poly)]) -> Result<OrderHnf> {
        let field = rows.first().ok_or_else(|| domain("no generators"))?.0.field().clone();
        let mut c = Poly::zero(&field);
        let mut top_z = Poly::zero(&field);
        let mut a = Poly::zero(&field);
        for (y, z) in rows {
            // merge (y, z) into the triangular pair [(c, top_z), (0, a)]
            if y.is_zero() {
                a = gcd(&a, z);
                continue;
            }
            if c.is_zero() {
                c = y.clone();
                top_z = z.clone();
                continue;
            }
            let (d, s, t) = xgcd(&c, y);
            let new_z = &(&s * &top_z) + &(&t * z);
            let cc = c.exact_div(&d).expect("gcd divides");
            let yy = y.exact_div(&d).expect("gcd divides");
            let elim = &(&yy * &top_z) - &(&cc * z);
            a = gcd(&a, &elim);
            c = d;
            top_z = new_z;
        }
        if c.is_zero() || a.is_zero() {
            return Err(domain("generators do not span a full-rank lattice"));
        }
        let inv = field.inv(c.lc()).expect("nonzero");
        OrderHnf::new(a, top_z.scale(inv), c)
    }

    /// Whether `x + y w1 + z w2` lies in `O` (for any `x` in `A`).
    pub fn contains(&self, y: &Poly, z: &Poly) -> bool {
        let Some(s) = y.exact_div(&self.c) else { return false };
        (z - &(&s * &self.b)).rem(&self.a).is_zero()
    }

    /// `self` is a sublattice of `other`.
    pub fn is_contained_in(&self, other: &OrderHnf) -> bool {
        other.contains(&self.c, &self.b) && other.contains(&Poly::zero(self.a.field()), &self.a)
    }
}

impl fmt::Display for OrderHnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// Orders by index (canonical order of `a c`), then `a`, `c`, `b`.
impl Ord for OrderHnf {
    fn cmp(&self, other: &Self) -> Ordering {
        self.index()
            .cmp(&other.index())
            .then_with(|| self.a.cmp(&other.a))
            .then_with(|| self.c.cmp(&other.c))
            .then_with(|| self.b.cmp(&other.b))
    }
}

impl PartialOrd for OrderHnf {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Rows express `w1^2`, `w2^2`, `w1 w2` over `(1, w1, w2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultTable(pub [[Poly; 3]; 3]);

/// The multiplication table of `(1, pi~, (alpha2 + beta2 pi~ + pi~^2)/I)`.
pub fn mult_table(sf: &StandardForm, index: &Poly, alpha2: &Poly, beta2: &Poly) -> Result<MultTable> {
    let f = index.field();
    let int = |k: i64| Poly::constant(f, f.from_int(k));
    let (c1, c2, i) = (&sf.c1, &sf.c2, index);
    let i2 = i.pow(2);
    let div = |num: Poly, d: &Poly, name: &str| {
        num.exact_div(d)
            .ok_or_else(|| inconsistent(format!("{name} is not integral; (alpha2, beta2) is not an integral basis")))
    };
    let b2 = beta2.pow(2);
    // expansions of w2^2 and w1 w2 using pi~^3 = -c1 pi~ - c2
    let x21 = &(&(&(c1 * alpha2) - &(alpha2 * &b2)) - &alpha2.pow(2)) - &(&int(2) * &(c2 * beta2));
    let x22 = &(&(-&beta2.pow(3)) - &(c1 * beta2)) - c2;
    let x23 = &(&b2 - c1) + &(&int(2) * alpha2);
    let x31 = &(-&(alpha2 * beta2)) - c2;
    let x32 = &(&(-&b2) - c1) + alpha2;
    Ok(MultTable([
        [-alpha2, -beta2, i.clone()],
        [div(x21, &i2, "X21")?, div(x22, &i2, "X22")?, div(x23, i, "X23")?],
        [div(x31, i, "X31")?, div(x32, i, "X32")?, beta2.clone()],
    ]))
}

type Mat3 = [[Poly; 3]; 3];

fn mat_mul(x: &Mat3, y: &Mat3) -> Mat3 {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            (0..3).fold(Poly::zero(x[0][0].field()), |acc, k| &acc + &(&x[i][k] * &y[k][j]))
        })
    })
}

/// `M1 M2 H^-1` has entries in `A`; computed as `M1 M2 adj(H)` divided by `det H = a c`.
pub fn closure_check(o: &OrderHnf, m2: &MultTable) -> bool {
    let (a, b, c) = (&o.a, &o.b, &o.c);
    let field = a.field();
    let zero = Poly::zero(field);
    let two = Poly::constant(field, field.from_int(2));
    let m1: Mat3 = [
        [c * c, b * b, &(&two * b) * c],
        [zero.clone(), a * a, zero.clone()],
        [zero.clone(), a * b, a * c],
    ];
    let adj: Mat3 = [
        [a * c, zero.clone(), zero.clone()],
        [zero.clone(), a.clone(), -b],
        [zero.clone(), zero.clone(), c.clone()],
    ];
    let det = a * c;
    let n = mat_mul(&mat_mul(&m1, &m2.0), &adj);
    n.iter().flatten().all(|e| det.divides(e))
}

/// `pi` lies in `O` iff there are `b0, c0` with `b0 c = g` and `b0 b = -c0 a`.
pub fn contains_frobenius(o: &OrderHnf, g: &Poly) -> bool {
    match g.exact_div(&o.c) {
        Some(b0) => o.a.divides(&(&o.b * &b0)),
        None => false,
    }
}

/// Maximality at the zero of `pi`: automatic unless `pv | a2`, then `gcd(pv, a c) = 1`.
pub fn v_maximality(o: &OrderHnf, w: &WeilCubic, local: &LocalData) -> bool {
    if !local.v_splits_a2 {
        return true;
    }
    gcd(w.pv(), &o.index()).is_one()
}

/// `(disc(O), N(conductor)) = ((ac)^2 Delta, (ac)^2)`, monic.
pub fn order_disc(o: &OrderHnf, delta: &Poly) -> (Poly, Poly) {
    let norm = o.index().pow(2).monic();
    ((&norm * delta).monic(), norm)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReport {
    pub order: OrderHnf,
    pub is_closed: bool,
    pub contains_pi: bool,
    pub v_maximal: bool,
    pub disc: Poly,
    pub conductor_norm: Poly,
    pub is_endo_ring: bool,
}

/// The full pipeline for one isogeny class.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub weil: WeilCubic,
    pub local: LocalData,
    pub standard: StandardForm,
    pub maximal: MaximalOrderData,
    pub mult: MultTable,
}

impl Analysis {
    pub fn run(w: &WeilCubic) -> Result<Analysis> {
        let local = validate_weil_necessary(w)?;
        let standard = standard_form(w)?;
        let maximal = maximal_order(&standard)?;
        let mult = mult_table(&standard, &maximal.index, &maximal.alpha2, &maximal.beta2)?;
        Ok(Analysis { weil: w.clone(), local, standard, maximal, mult })
    }

    pub fn g(&self) -> &Poly {
        &self.standard.g
    }

    /// HNF of `A[pi]`: `pi = g w1 - a1/3` and `pi^2 = g^2 I w2 - (g^2 beta2 + 2 g a1/3) w1 + const`.
    pub fn frobenius_order(&self) -> OrderHnf {
        let (g, s) = (&self.standard.g, &self.standard.shift);
        let f = g.field();
        let two = Poly::constant(f, f.from_int(2));
        let y2 = -&(&(&g.pow(2) * &self.maximal.beta2) + &(&(&two * s) * g));
        let z2 = &g.pow(2) * &self.maximal.index;
        OrderHnf::from_rows(&[(g.clone(), Poly::zero(f)), (y2, z2)]).expect("A[pi] has full rank")
    }

    /// `[O_max : A[pi]] = g^3 I`.
    pub fn frobenius_index(&self) -> Poly {
        &self.g().pow(3) * &self.maximal.index
    }

    pub fn report(&self, o: &OrderHnf) -> OrderReport {
        let is_closed = closure_check(o, &self.mult);
        let contains_pi = contains_frobenius(o, self.g());
        let v_maximal = v_maximality(o, &self.weil, &self.local);
        let (disc, conductor_norm) = order_disc(o, &self.maximal.delta);
        OrderReport {
            order: o.clone(),
            is_closed,
            contains_pi,
            v_maximal,
            disc,
            conductor_norm,
            is_endo_ring: is_closed && contains_pi && v_maximal,
        }
    }

    /// `(c, a, number of b)` for every admissible `c | g`, `a | g^3 I / c`.
    fn candidate_shape(&self) -> Result<Vec<(Poly, Poly, Poly)>> {
        let g = self.g();
        let mut out = Vec::new();
        for c in divisors(g)? {
            let g_over_c = g.exact_div(&c).expect("c divides g");
            let bound = self.frobenius_index().exact_div(&c).expect("c divides g^3 I");
            for a in divisors(&bound)? {
                let h = gcd(&a, &g_over_c);
                out.push((c.clone(), a, h));
            }
        }
        Ok(out)
    }

    /// Number of `(a, b, c)` triples [`Analysis::candidates`] will examine.
    pub fn candidate_count(&self) -> Result<u128> {
        let q = self.weil.field().order() as u128;
        Ok(self
            .candidate_shape()?
            .iter()
            .map(|(_, _, h)| q.saturating_pow(h.deg().unwrap_or(0) as u32))
            .fold(0u128, |acc, n| acc.saturating_add(n)))
    }

    /// One report per HNF triple with `c | g`, `a | g^3 I / c` and `a | b g / c`,
    /// sorted canonically. For `g = 1` this is `a | I`, `b = 0`.
    pub fn candidates(&self, bound: u128) -> Result<Vec<OrderReport>> {
        let count = self.candidate_count()?;
        if count > bound {
            return Err(Error::CandidateBound { count, bound });
        }
        let field = self.weil.field();
        let mut out = Vec::new();
        for (c, a, h) in self.candidate_shape()? {
            let step = a.exact_div(&h).expect("gcd divides");
            for u in Poly::all_below_degree(field, h.deg().unwrap_or(0)) {
                let o = OrderHnf::new(a.clone(), &u * &step, c.clone())?;
                out.push(self.report(&o));
            }
        }
        out.sort_by(|x, y| x.order.cmp(&y.order));
        Ok(out)
    }

    /// The candidates that pass all three checks.
    pub fn endo_rings(&self, bound: u128) -> Result<Vec<OrderReport>> {
        let mut v = self.candidates(bound)?;
        v.retain(|r| r.is_endo_ring);
        if !v.iter().any(|r| r.order.is_maximal()) {
            return Err(inconsistent("the maximal order did not qualify"));
        }
        Ok(v)
    }
}

/// Runs the whole pipeline and returns the orders that occur as endomorphism rings.
pub fn enumerate_endo_rings(w: &WeilCubic, bound: u128) -> Result<Vec<OrderReport>> {
    Analysis::run(w)?.endo_rings(bound)
}
