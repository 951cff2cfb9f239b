//! Divisor classes on the coarse basis {L, R, D, E}, the intersection form,
//! the canonical class and the Riemann-Roch cubic.

pub mod basis;
pub mod expr;
pub mod fine;
pub mod table;

pub use basis::{DivisorClass, Monomial, Symbol};
pub use expr::{parse_divisor_expr, DivisorProduct};
pub use fine::{divisor_census, sixty_l_class, FineSymbol};
pub use table::{TrilinearForm, SHIPPED_TABLE};

use crate::algebra::{rat, Poly};

/// `K = 3L - D - 1/2 R - 1/2 E`.
pub fn canonical_class() -> DivisorClass {
    DivisorClass::from_terms([
        (Symbol::L, Poly::from_int(3)),
        (Symbol::R, Poly::from_ratio(-1, 2)),
        (Symbol::D, Poly::from_int(-1)),
        (Symbol::E, Poly::from_ratio(-1, 2)),
    ])
}

/// The cusp-form class `kL - D`.
pub fn cusp_class() -> DivisorClass {
    DivisorClass::from_terms([(Symbol::L, Poly::k()), (Symbol::D, Poly::from_int(-1))])
}

pub fn k_cubed(form: &TrilinearForm) -> Poly {
    let k = canonical_class();
    form.triple_product(&k, &k, &k)
}

/// `(1/12) (kL-D)(kL-D-K)(2kL-2D-K)`, the cubic part of Riemann-Roch for
/// `O(kL - D)`, as a polynomial in `p` and `k`.
pub fn rr_cubic(form: &TrilinearForm) -> Poly {
    let k = canonical_class();
    let a = cusp_class();
    let b = &a - &k;
    let c = &a.scale(&Poly::from_int(2)) - &k;
    form.triple_product(&a, &b, &c).scale(&rat(1, 12))
}
