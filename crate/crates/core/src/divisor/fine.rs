//! The fine divisor basis: individual Humbert surfaces, boundary components
//! and exceptional divisors, with their component counts.

use serde::Serialize;

use crate::algebra::{rat, Poly, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum FineSymbol {
    L,
    H1,
    H2,
    T1,
    D0,
    /// A peripheral boundary component `D_{l_{a,b}}`.
    Dper,
    E1,
    E2,
    E3,
    E4,
    E5,
}

impl FineSymbol {
    pub const ALL: [FineSymbol; 11] = [
        FineSymbol::L,
        FineSymbol::H1,
        FineSymbol::H2,
        FineSymbol::T1,
        FineSymbol::D0,
        FineSymbol::Dper,
        FineSymbol::E1,
        FineSymbol::E2,
        FineSymbol::E3,
        FineSymbol::E4,
        FineSymbol::E5,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FineSymbol::L => "L",
            FineSymbol::H1 => "H1",
            FineSymbol::H2 => "H2",
            FineSymbol::T1 => "T1",
            FineSymbol::D0 => "D0",
            FineSymbol::Dper => "Dper",
            FineSymbol::E1 => "E1",
            FineSymbol::E2 => "E2",
            FineSymbol::E3 => "E3",
            FineSymbol::E4 => "E4",
            FineSymbol::E5 => "E5",
        }
    }

    /// Number of irreducible components carried by the symbol: one per
    /// peripheral boundary component for `Dper`, `E3`, `E4`, `E5`.
    pub fn component_count(self) -> Poly {
        match self {
            FineSymbol::Dper | FineSymbol::E3 | FineSymbol::E4 | FineSymbol::E5 => {
                Poly::kappa().scale(&rat(1, 2))
            }
            _ => Poly::one(),
        }
    }

    /// Whether the symbol is one of the classes counted towards the Picard
    /// lower bound. `T1` is carried for the weight-60 divisor only.
    pub fn in_census(self) -> bool {
        self != FineSymbol::T1
    }
}

impl std::fmt::Display for FineSymbol {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// The coefficient `c_{a,b}` of a peripheral component: `p^2` on standard
/// components (`a = 0 mod p`), `1` otherwise.
pub fn c_coefficient(a: i64, p: i64) -> i64 {
    if a.rem_euclid(p) == 0 {
        p * p
    } else {
        1
    }
}

pub fn c_coefficient_poly(standard: bool) -> Poly {
    if standard {
        Poly::p_pow(2)
    } else {
        Poly::one()
    }
}

/// One summand of the weight-60 divisor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SixtyLTerm {
    pub symbol: FineSymbol,
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub multiplicity: Rational,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub count: Poly,
    /// Multiplicity is further weighted by `c_{a,b}` per component.
    pub weighted_by_c: bool,
}

/// The divisor `60 L` expressed in the fine basis:
/// `6 H1 + 12 T1 + 6 D0 + 6 sum c D + 3 E1 + 2 E2 + sum 3c E3 + sum c (2 E4 + 4 E5)`.
pub fn sixty_l_class() -> Vec<SixtyLTerm> {
    use FineSymbol::*;
    [
        (H1, 6, false),
        (T1, 12, false),
        (D0, 6, false),
        (Dper, 6, true),
        (E1, 3, false),
        (E2, 2, false),
        (E3, 3, true),
        (E4, 2, true),
        (E5, 4, true),
    ]
    .into_iter()
    .map(|(symbol, m, weighted_by_c)| SixtyLTerm {
        symbol,
        multiplicity: rat(m, 1),
        count: symbol.component_count(),
        weighted_by_c,
    })
    .collect()
}

/// Expansion of the coarse symbols `D`, `R`, `E` into fine symbols:
/// `D = D0 + sum Dper`, `R = H1 + H2`, `E = 1/2 E1 + E2 + 1/2 sum E3`.
pub fn coarse_expansion(s: super::Symbol) -> Vec<(FineSymbol, Rational)> {
    use super::Symbol;
    match s {
        Symbol::L => vec![(FineSymbol::L, rat(1, 1))],
        Symbol::R => vec![(FineSymbol::H1, rat(1, 1)), (FineSymbol::H2, rat(1, 1))],
        Symbol::D => vec![(FineSymbol::D0, rat(1, 1)), (FineSymbol::Dper, rat(1, 1))],
        Symbol::E => vec![
            (FineSymbol::E1, rat(1, 2)),
            (FineSymbol::E2, rat(1, 1)),
            (FineSymbol::E3, rat(1, 2)),
        ],
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Checks the standing assumption on the level: `p >= 5` and prime.
pub fn require_level_prime(p: u64) -> Result<()> {
    if p < 5 || !is_prime(p) {
        return Err(Error::InvalidArgument(format!(
            "p = {p} must be a prime >= 5"
        )));
    }
    Ok(())
}

/// Counts the known classes towards the Picard lower bound by enumerating
/// the fine symbols with their component counts.
pub fn divisor_census(p: u64) -> Result<u64> {
    require_level_prime(p)?;
    let pv = Rational::from_integer((p as i64).into());
    let mut total = Rational::from_integer(0.into());
    for s in FineSymbol::ALL.into_iter().filter(|s| s.in_census()) {
        total += s.component_count().eval_p(&pv).expect("count depends on p only");
    }
    Ok(crate::algebra::poly::as_integer(&total).expect("census is an integer") as u64)
}

/// The census as a polynomial in `p`.
pub fn census_polynomial() -> Poly {
    FineSymbol::ALL
        .into_iter()
        .filter(|s| s.in_census())
        .fold(Poly::zero(), |acc, s| acc + s.component_count())
}
