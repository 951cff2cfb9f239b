//! Holomorphic Lefschetz contributions of the fixed sets of the group
//! `Gamma_{1,p} / Gamma_2(p^2)` acting on the level-`p^2` compactification.
//!
//! Only the coefficients of `k^2` and `k^1` are tracked; constant terms are
//! never computed.

use serde::Serialize;

use crate::algebra::{
    lemma7_closed_form, rat, single_angle_sums, unit_root_pair_sum, Lemma7Kind, Poly, Rational,
    RootOfUnity,
};
use crate::dimension::group_index;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum CaseId {
    #[serde(rename = "1a")]
    C1a,
    #[serde(rename = "1b")]
    C1b,
    #[serde(rename = "1c")]
    C1c,
    #[serde(rename = "2a")]
    C2a,
    #[serde(rename = "2b")]
    C2b,
    #[serde(rename = "2c_B1")]
    C2cB1,
    #[serde(rename = "2c_B2")]
    C2cB2,
}

impl CaseId {
    pub const ALL: [CaseId; 7] = [
        CaseId::C1a,
        CaseId::C1b,
        CaseId::C1c,
        CaseId::C2a,
        CaseId::C2b,
        CaseId::C2cB1,
        CaseId::C2cB2,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseId::C1a => "1a",
            CaseId::C1b => "1b",
            CaseId::C1c => "1c",
            CaseId::C2a => "2a",
            CaseId::C2b => "2b",
            CaseId::C2cB1 => "2c_B1",
            CaseId::C2cB2 => "2c_B2",
        }
    }

    pub fn parse(s: &str) -> Option<CaseId> {
        CaseId::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
    }

    /// Label `t1`..`t7` of the contribution.
    pub fn label(self) -> &'static str {
        match self {
            CaseId::C1a => "t1",
            CaseId::C1b => "t2",
            CaseId::C1c => "t3",
            CaseId::C2a => "t4",
            CaseId::C2b => "t5",
            CaseId::C2cB1 => "t6",
            CaseId::C2cB2 => "t7",
        }
    }
}

impl std::fmt::Display for CaseId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which stabilizer elements are summed, and how they rotate the normal
/// directions of the fixed set.
#[derive(Clone, Debug, PartialEq)]
pub enum ElementSpec {
    /// One entry per element: one eigenvalue `e^{i theta}` per normal
    /// direction (one for codimension 1, two for codimension 2).
    Explicit(Vec<Vec<RootOfUnity>>),
    /// All nontrivial `order`-th roots of unity, summed in closed form; in
    /// codimension 2 each is paired with the fixed rotation `fixed`.
    FullOrbit {
        order: Poly,
        fixed: Option<RootOfUnity>,
    },
}

/// Intersection data of a single fixed component.
#[derive(Clone, Debug, PartialEq)]
pub enum ComponentData {
    /// `L^2 X`, `L D X` and `L X^2` for a fixed surface `X`.
    Surface { l2x: Poly, ldx: Poly, lx2: Poly },
    /// `deg L|X` for a fixed curve `X`.
    Curve { deg_l: Poly },
}

#[derive(Clone, Debug, PartialEq)]
pub struct FixedSetRecord {
    pub case: CaseId,
    pub codim: u8,
    /// Character `chi(gamma)` by which the group acts on `O(-D)|X`.
    pub chi_sign: i8,
    pub elements: ElementSpec,
    pub per_component: ComponentData,
    pub component_count: Poly,
    pub extra_factor: Rational,
}

/// The `k^2` and `k^1` coefficients of a trace contribution, as displayed
/// (not yet divided by the common factor `kappa^2 / 34560`).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TracePoly {
    pub k2: Poly,
    pub k1: Poly,
}

impl TracePoly {
    pub fn zero() -> Self {
        TracePoly::default()
    }

    pub fn scale(&self, c: &Rational) -> TracePoly {
        TracePoly {
            k2: self.k2.scale(c),
            k1: self.k1.scale(c),
        }
    }

    /// The contribution as a polynomial in `p` and `k`.
    pub fn as_poly(&self) -> Poly {
        &(&self.k2 * &Poly::k().pow(2)) + &(&self.k1 * &Poly::k())
    }

    /// Both coefficients divided by `kappa^2 / 34560`.
    pub fn normalized(&self) -> Option<(Poly, Poly)> {
        let n = normalization();
        Some((self.k2.div_exact(&n)?, self.k1.div_exact(&n)?))
    }

    pub fn eval_p(&self, p: i64) -> (Rational, Rational) {
        (
            self.k2.eval_p_int(p).expect("p-only"),
            self.k1.eval_p_int(p).expect("p-only"),
        )
    }
}

impl std::ops::Add for &TracePoly {
    type Output = TracePoly;
    fn add(self, rhs: &TracePoly) -> TracePoly {
        TracePoly {
            k2: &self.k2 + &rhs.k2,
            k1: &self.k1 + &rhs.k1,
        }
    }
}

/// The common factor `kappa^2 / (2^8 3^3 5)`.
pub fn normalization() -> Poly {
    Poly::kappa().pow(2).scale(&rat(1, 34560))
}

/// Number of components of the preimage of `H1`: `(d/2) / (p^7 kappa / 2)`.
pub fn h1_component_count() -> Poly {
    let half_d = group_index().scale(&rat(1, 2));
    let degree = (Poly::p_pow(7) * Poly::kappa()).scale(&rat(1, 2));
    half_d
        .div_exact(&degree)
        .expect("the covering degree divides d/2")
}

/// Components of the preimages of `D0` and the nonstandard peripheral
/// boundary components: `p^5 kappa/2 + p^3 * p(p-1)/2`.
pub fn boundary_component_count() -> Poly {
    let central = (Poly::p_pow(5) * Poly::kappa()).scale(&rat(1, 2));
    let nonstandard = Poly::p_pow(3) * Poly::from_p_coeffs(&[0, -1, 1]).scale(&rat(1, 2));
    central + nonstandard
}

/// Components of `B1*`: `p^4` per peripheral component times
/// `p^3 * p(p-1)/2` of those, plus `p^3` per central component times
/// `p^5 kappa / 2` of those.
pub fn b1_component_count() -> Poly {
    let peripheral =
        Poly::p_pow(4) * Poly::p_pow(3) * Poly::from_p_coeffs(&[0, -1, 1]).scale(&rat(1, 2));
    let central = Poly::p_pow(3) * (Poly::p_pow(5) * Poly::kappa()).scale(&rat(1, 2));
    peripheral + central
}

fn kk() -> Poly {
    Poly::kappa()
}

/// `deg L|X(p^2) = p^4 kappa / 24`.
fn deg_l_on_modular_curve() -> Poly {
    (Poly::p_pow(4) * kk()).scale(&rat(1, 24))
}

pub fn builtin_fixed_sets() -> Vec<FixedSetRecord> {
    let minus_one = RootOfUnity::minus_one();
    let i = RootOfUnity::new(4, 1);
    let minus_i = RootOfUnity::new(4, 3);
    let rho = RootOfUnity::new(3, 1);
    let rho2 = RootOfUnity::new(3, 2);

    // Components of H1*: L^2 X = -L X^2 = p^8 kappa^2 / 288, and each meets
    // p^2 kappa boundary components along a curve of L-degree p^4 kappa/24.
    let h1_l2x = (Poly::p_pow(8) * kk().pow(2)).scale(&rat(1, 288));
    let h1_ldx = &(Poly::p_pow(2) * kk()) * &deg_l_on_modular_curve();
    let h1 = ComponentData::Surface {
        l2x: h1_l2x.clone(),
        ldx: h1_ldx.clone(),
        lx2: -&h1_l2x,
    };
    let h2 = ComponentData::Surface {
        l2x: h1_l2x.scale(&rat(6, 1)),
        ldx: h1_ldx.scale(&rat(3, 1)),
        lx2: h1_l2x.scale(&rat(-6, 1)),
    };
    let boundary_lx2 = (Poly::p_pow(6) * kk()).scale(&rat(-1, 12));
    let boundary = ComponentData::Surface {
        l2x: Poly::zero(),
        ldx: -&boundary_lx2,
        lx2: boundary_lx2,
    };
    let curve = ComponentData::Curve {
        deg_l: deg_l_on_modular_curve(),
    };
    let b1_count = (Poly::p_pow(8) * Poly::from_p_coeffs(&[-2, 1, 1])).scale(&rat(1, 2));
    let p_sq = Poly::p_pow(2);

    vec![
        FixedSetRecord {
            case: CaseId::C1a,
            codim: 1,
            chi_sign: 1,
            elements: ElementSpec::Explicit(vec![vec![minus_one]]),
            per_component: h1.clone(),
            component_count: Poly::p_pow(6),
            extra_factor: rat(1, 1),
        },
        FixedSetRecord {
            case: CaseId::C1b,
            codim: 1,
            chi_sign: 1,
            elements: ElementSpec::Explicit(vec![vec![minus_one]]),
            per_component: h2,
            component_count: Poly::p_pow(6),
            extra_factor: rat(1, 1),
        },
        FixedSetRecord {
            case: CaseId::C1c,
            codim: 1,
            chi_sign: 1,
            elements: ElementSpec::FullOrbit {
                order: p_sq.clone(),
                fixed: None,
            },
            per_component: boundary,
            component_count: (Poly::p_pow(4) * Poly::from_p_coeffs(&[-1, 0, 0, 1]))
                .scale(&rat(1, 2)),
            extra_factor: rat(1, 1),
        },
        FixedSetRecord {
            case: CaseId::C2a,
            codim: 2,
            chi_sign: 1,
            elements: ElementSpec::Explicit(vec![vec![minus_one, minus_i], vec![minus_one, i]]),
            per_component: curve.clone(),
            component_count: (Poly::p_pow(10) * kk()).scale(&rat(1, 4)),
            extra_factor: rat(1, 1),
        },
        FixedSetRecord {
            case: CaseId::C2b,
            codim: 2,
            chi_sign: 1,
            elements: ElementSpec::Explicit(vec![vec![rho, rho2], vec![rho2, rho]]),
            per_component: curve.clone(),
            component_count: (Poly::p_pow(10) * kk()).scale(&rat(1, 6)),
            extra_factor: rat(1, 1),
        },
        FixedSetRecord {
            case: CaseId::C2cB1,
            codim: 2,
            chi_sign: -1,
            elements: ElementSpec::FullOrbit {
                order: p_sq.clone(),
                fixed: Some(minus_one),
            },
            per_component: curve.clone(),
            component_count: b1_count.clone(),
            extra_factor: rat(1, 1),
        },
        FixedSetRecord {
            case: CaseId::C2cB2,
            codim: 2,
            chi_sign: -1,
            elements: ElementSpec::FullOrbit {
                order: p_sq,
                fixed: Some(minus_one),
            },
            per_component: curve,
            component_count: b1_count,
            extra_factor: rat(3, 1),
        },
    ]
}

pub fn builtin_record(case: CaseId) -> FixedSetRecord {
    builtin_fixed_sets()
        .into_iter()
        .find(|r| r.case == case)
        .expect("every case has a record")
}

fn global_factor(rec: &FixedSetRecord) -> Poly {
    rec.component_count
        .scale(&rec.extra_factor)
        .scale(&Rational::from_integer(rec.chi_sign.into()))
}

/// Contribution of a fixed surface. Per element, with
/// `u = 1/(1 - e^{-i theta})` and `v = e^{-i theta}/(1 - e^{-i theta})^2`:
/// `k^2: 1/2 L^2X u` and `k^1: (-3/2 L^2X - 1/2 LDX - 1/2 LX^2) u - LX^2 v`.
pub fn trace_codim1(rec: &FixedSetRecord) -> Result<TracePoly> {
    if rec.codim != 1 {
        return Err(Error::WrongCodim {
            expected: 1,
            found: rec.codim,
        });
    }
    let ComponentData::Surface { l2x, ldx, lx2 } = &rec.per_component else {
        return Err(Error::InvalidArgument(
            "codimension-1 record needs surface data".into(),
        ));
    };
    let (sum_u, sum_v) = match &rec.elements {
        ElementSpec::Explicit(list) => {
            let mut angles = Vec::with_capacity(list.len());
            for e in list {
                match e.as_slice() {
                    [a] => angles.push(*a),
                    _ => {
                        return Err(Error::InvalidArgument(
                            "codimension-1 elements carry exactly one angle".into(),
                        ))
                    }
                }
            }
            let (u, v) = single_angle_sums(&angles)?;
            (Poly::constant(u), Poly::constant(v))
        }
        ElementSpec::FullOrbit { order, fixed: None } => (
            lemma7_closed_form(Lemma7Kind::Simple, order),
            lemma7_closed_form(Lemma7Kind::DoublePole, order),
        ),
        ElementSpec::FullOrbit { fixed: Some(_), .. } => {
            return Err(Error::InvalidArgument(
                "codimension-1 orbit takes no paired angle".into(),
            ))
        }
    };
    let g = global_factor(rec);
    let k2 = &(l2x.scale(&rat(1, 2)) * sum_u.clone()) * &g;
    let single = l2x.scale(&rat(-3, 2)) - ldx.scale(&rat(1, 2)) - lx2.scale(&rat(1, 2));
    let k1 = &(&(&single * &sum_u) - &(lx2 * &sum_v)) * &g;
    Ok(TracePoly { k2, k1 })
}

/// The summed rotation factor `sum 1/((1 - e^{-i theta_1})(1 - e^{-i theta_2}))`.
pub fn codim2_pair_factor(elements: &ElementSpec) -> Result<Poly> {
    match elements {
        ElementSpec::Explicit(list) => {
            let mut pairs = Vec::with_capacity(list.len());
            for e in list {
                match e.as_slice() {
                    [a, b] => pairs.push((*a, *b)),
                    _ => {
                        return Err(Error::InvalidArgument(
                            "codimension-2 elements carry exactly two angles".into(),
                        ))
                    }
                }
            }
            let signs = vec![1; pairs.len()];
            Ok(Poly::constant(unit_root_pair_sum(&pairs, &signs)?))
        }
        ElementSpec::FullOrbit {
            order,
            fixed: Some(a),
        } => {
            let (fixed_u, _) = single_angle_sums(&[*a])?;
            Ok(lemma7_closed_form(Lemma7Kind::Simple, order).scale(&fixed_u))
        }
        ElementSpec::FullOrbit { fixed: None, .. } => Err(Error::InvalidArgument(
            "codimension-2 orbit needs a paired angle".into(),
        )),
    }
}

/// Contribution of a fixed curve: only `k^1`, equal to
/// `chi * pair factor * deg L|X * count`.
pub fn trace_codim2(rec: &FixedSetRecord) -> Result<TracePoly> {
    if rec.codim != 2 {
        return Err(Error::WrongCodim {
            expected: 2,
            found: rec.codim,
        });
    }
    let ComponentData::Curve { deg_l } = &rec.per_component else {
        return Err(Error::InvalidArgument(
            "codimension-2 record needs curve data".into(),
        ));
    };
    let factor = codim2_pair_factor(&rec.elements)?;
    Ok(TracePoly {
        k2: Poly::zero(),
        k1: &(&factor * deg_l) * &global_factor(rec),
    })
}

pub fn trace(rec: &FixedSetRecord) -> Result<TracePoly> {
    match rec.codim {
        1 => trace_codim1(rec),
        2 => trace_codim2(rec),
        c => Err(Error::InvalidArgument(format!("unsupported codimension {c}"))),
    }
}

/// `t1 + ... + t7` over the built-in fixed sets.
pub fn total_trace_sum() -> TracePoly {
    builtin_fixed_sets()
        .iter()
        .map(|r| trace(r).expect("built-in records are well formed"))
        .fold(TracePoly::zero(), |acc, t| &acc + &t)
}

/// JSON row for one contribution.
#[derive(Clone, Debug, Serialize)]
pub struct TraceRow {
    pub case: String,
    pub k2: String,
    pub k1: String,
}

impl TraceRow {
    pub fn new(case: &str, t: &TracePoly) -> Self {
        TraceRow {
            case: case.to_string(),
            k2: t.k2.to_string(),
            k1: t.k1.to_string(),
        }
    }
}
