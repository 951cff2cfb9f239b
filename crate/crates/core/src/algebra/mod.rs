//! Exact arithmetic: rationals, polynomials in `p` and `k`, and sums over
//! roots of unity.

pub mod cyclotomic;
pub(crate) mod lexer;
pub mod parse;
pub mod poly;

pub use cyclotomic::{
    lemma7_closed_form, lemma7_sum, single_angle_sums, unit_root_pair_sum, CyclotomicField,
    Lemma7Kind, RootOfUnity,
};
pub use parse::parse_poly;
pub use poly::{int, rat, render_rational, Poly, Rational, Var};
