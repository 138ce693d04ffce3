//! Orders of cubic function fields that occur as endomorphism rings of
//! rank-3 Drinfeld modules over a finite `A`-field, `A = F_q[T]`.
//!
//! The crate is layered:
//!
//! * [`field`], [`poly`], [`ratfunc`], [`factor`]: exact arithmetic in `F_q`,
//!   `F_q[T]` and `F_q(T)`, square-free decomposition, factorization, square
//!   roots and divisor enumeration.
//! * [`cubic`]: local data of a cubic Weil polynomial at the characteristic
//!   place, its standard form, the field discriminant, the index and an
//!   integral basis of the maximal order of `k(pi)`.
//! * [`order`]: suborders in Hermite normal form, their multiplication
//!   matrix, the ring-closure and Frobenius tests, and the enumeration of
//!   every order that is the endomorphism ring of some module in the class.
//! * [`skew`]: twisted polynomials `L{tau}`, Drinfeld modules, and the
//!   right-division membership test that identifies `End(phi)` for a
//!   concrete module.
//!
//! ```
//! use drinfeld_endo::prelude::*;
//!
//! let f5 = Fq::prime(5).unwrap();
//! let w = WeilCubic::new(
//!     Poly::from_ints(&f5, &[1, 1]),       // a1 = T + 1
//!     Poly::from_ints(&f5, &[4, 3, 1]),    // a2 = T^2 + 3T + 4
//!     f5.from_int(4),                      // mu
//!     Poly::var(&f5),                      // pv = T
//!     3,
//! )
//! .unwrap();
//! let analysis = Analysis::run(&w).unwrap();
//! assert_eq!(analysis.maximal.index.to_string(), "T");
//! let rings = analysis.endo_rings(DEFAULT_CANDIDATE_BOUND).unwrap();
//! assert_eq!(rings.len(), 2);
//! ```

pub mod cubic;
pub mod error;
pub mod factor;
pub mod field;
pub mod order;
pub mod poly;
pub mod ratfunc;
pub mod skew;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::cubic::{
        field_discriminant, height, index, integral_basis, standard_form, validate_weil_necessary,
        Discriminant, LocalData, MaximalOrderData, StandardForm, WeilCubic,
    };
    pub use crate::error::{Error, Result};
    pub use crate::factor::{divisors, exact_sqrt, factor, residue_factor, squarefree_decompose};
    pub use crate::field::{Fq, FqElem, FqSpec};
    pub use crate::order::{
        closure_check, contains_frobenius, mult_table, order_disc, v_maximality, Analysis, MultTable,
        OrderHnf, OrderReport, DEFAULT_CANDIDATE_BOUND,
    };
    pub use crate::poly::{poly_gcd, Poly};
    pub use crate::ratfunc::RatFunc;
    pub use crate::skew::{
        element_membership, identify_endo_ring, verify_weil_action, DrinfeldModule, ExtField, KElem,
        Membership, SkewPoly,
    };
}
