//! Chern numbers: `c_2.L` from the trace identity, `c_1 c_2` from the
//! smooth hypersurfaces of the canonical divisor and a blow-up resolving
//! the central boundary component, plus `c_1^3`, `c_3`, `p_a`, `c_2.D_0`.

use serde::Serialize;

use crate::algebra::{int, parse_poly, rat, Poly, Rational};
use crate::dimension::{comparison_side, group_index, ComparisonSource};
use crate::divisor::fine::{coarse_expansion, FineSymbol};
use crate::divisor::{canonical_class, k_cubed, Symbol, TrilinearForm};
use crate::error::{Error, Result};
use crate::report::Check;
use crate::trace::total_trace_sum;

fn poly(s: &str) -> Poly {
    parse_poly(s).expect("built-in polynomial")
}

/// Result of solving the trace identity for `c_2.L`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct C2LDerivation {
    pub source: ComparisonSource,
    /// `k^3` coefficient of `d rr_cubic - dim S_k(Gamma_2(p^2))`.
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub k3_residual: Poly,
    /// `k^2` coefficient of the difference minus the trace total.
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub k2_residual: Poly,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub c2_dot_l: Poly,
}

/// Solves `(d/12) c_2.L = [traces - (d rr_cubic - dim S_k(Gamma_2(p^2)))]_{k^1}`.
pub fn c2_dot_l(form: &TrilinearForm, source: ComparisonSource) -> C2LDerivation {
    let d = group_index();
    let diff = &(&d * &crate::divisor::rr_cubic(form)) - &crate::dimension::dim_cusp_gamma2_poly();
    let traces = total_trace_sum();
    let (diff2, diff1) = comparison_side(form, source);
    let twelfth = (&traces.k1 - &diff1).scale(&int(12));
    let c2l = twelfth.div_exact(&d).expect("d is k-free");
    C2LDerivation {
        source,
        k3_residual: diff.coeff_k(3),
        k2_residual: &diff2 - &traces.k2,
        c2_dot_l: c2l,
    }
}

/// One row of the table of smooth hypersurfaces entering the canonical
/// divisor.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HypersurfaceData {
    pub name: FineSymbol,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub euler: Poly,
    /// `K_A . N_A` for a single component.
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub k_dot_n: Poly,
    /// Coefficient with which one component enters `-c_1`.
    #[serde(serialize_with = "crate::report::ser_rational")]
    pub multiplicity_in_k: Rational,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub count: Poly,
}

/// Coefficient of a fine symbol in `-K`, read off the canonical class and
/// the coarse-to-fine expansion.
pub fn multiplicity_in_k(s: FineSymbol) -> Rational {
    let minus_k = -&canonical_class();
    let mut out = rat(0, 1);
    for sym in [Symbol::R, Symbol::D, Symbol::E] {
        let c = minus_k.coeff(sym).as_constant().expect("constant coefficient");
        for (fine, w) in coarse_expansion(sym) {
            if fine == s {
                out += &c * &w;
            }
        }
    }
    out
}

/// The table of Euler numbers and `K_A . N_A` values.
pub fn table4() -> Vec<HypersurfaceData> {
    use FineSymbol::*;
    [
        (H1, "-(p-6)/6*(p^2-1)", "(p+6)/12*(p^2-1)"),
        (H2, "-(p-21)/6*(p^2-1)", "(p+3)/12*(p^2-1)"),
        (Dper, "9", "1"),
        (E1, "-(p-6)/6*(p^2-1)", "p^2-1"),
        (E2, "-(p-6)/6*(p^2-1)", "3/2*(p^2-1)"),
        (E3, "3", "6"),
        (E4, "4", "6"),
        (E5, "3", "6"),
    ]
    .into_iter()
    .map(|(name, e, kn)| HypersurfaceData {
        name,
        euler: poly(e),
        k_dot_n: poly(kn),
        multiplicity_in_k: multiplicity_in_k(name),
        count: name.component_count(),
    })
    .collect()
}

fn row(table: &[HypersurfaceData], name: FineSymbol) -> Result<&HypersurfaceData> {
    table
        .iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::UnknownSurface(name.to_string()))
}

/// Parses a surface name as used in the table (`H1`, `Dper`, `E3`, ...).
pub fn surface_name(s: &str) -> Result<FineSymbol> {
    FineSymbol::ALL
        .into_iter()
        .find(|f| f.name().eq_ignore_ascii_case(s))
        .filter(|f| !matches!(f, FineSymbol::L | FineSymbol::T1 | FineSymbol::D0))
        .ok_or_else(|| Error::UnknownSurface(s.to_string()))
}

/// `c_2 . A = e(A) - K_A . N_A` for one component of `A`.
pub fn c2_dot_smooth(name: FineSymbol, table: &[HypersurfaceData]) -> Result<Poly> {
    let r = row(table, name)?;
    Ok(&r.euler - &r.k_dot_n)
}

/// `c_2 . A` summed over all components of the family.
pub fn c2_dot_family(name: FineSymbol, table: &[HypersurfaceData]) -> Result<Poly> {
    Ok(&c2_dot_smooth(name, table)? * &row(table, name)?.count)
}

/// A smooth surface given by a lattice of divisor classes with its
/// canonical class and the class of its normal bundle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceClassModel {
    pub name: &'static str,
    pub generators: Vec<&'static str>,
    pub intersection: Vec<Vec<i64>>,
    pub canonical: Vec<i64>,
    pub self_class: Vec<i64>,
    pub euler: i64,
}

impl SurfaceClassModel {
    pub fn dot(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                s += x * y * self.intersection[i][j];
            }
        }
        s
    }

    /// `c_2(A) - K_A . (A|A)`.
    pub fn c2_contribution(&self) -> i64 {
        self.euler - self.dot(&self.canonical, &self.self_class)
    }

    /// `P^2` blown up in three points, normal class `-h`.
    pub fn blown_up_plane() -> Self {
        SurfaceClassModel {
            name: "P2 blown up in 3 points",
            generators: vec!["h", "e1", "e2", "e3"],
            intersection: vec![
                vec![1, 0, 0, 0],
                vec![0, -1, 0, 0],
                vec![0, 0, -1, 0],
                vec![0, 0, 0, -1],
            ],
            canonical: vec![-3, 1, 1, 1],
            self_class: vec![-1, 0, 0, 0],
            euler: 6,
        }
    }

    /// Ruled surface with `b^2 = -1`, normal class `-b - 3f`.
    pub fn ruled_top() -> Self {
        SurfaceClassModel {
            name: "F1",
            generators: vec!["b", "f"],
            intersection: vec![vec![-1, 1], vec![1, 0]],
            canonical: vec![-2, -3],
            self_class: vec![-1, -3],
            euler: 4,
        }
    }

    /// Quadric `P^1 x P^1`, normal class `-b - 4f`.
    pub fn quadric() -> Self {
        SurfaceClassModel {
            name: "P1 x P1",
            generators: vec!["b", "f"],
            intersection: vec![vec![0, 1], vec![1, 0]],
            canonical: vec![-2, -2],
            self_class: vec![-1, -4],
            euler: 4,
        }
    }
}

/// `c_2` against the strict transforms and exceptional divisors of the
/// blow-up resolving `D_0`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BlowupCorrections {
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub c2_h2pp: Poly,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub c2_d0pp: Poly,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub c2_gpp: Poly,
    #[serde(serialize_with = "crate::report::ser_poly")]
    pub c2_fpp: Poly,
}

/// Number of components of `G''`, one per inner deepest point.
pub fn g_component_count() -> Poly {
    Poly::kappa().scale(&rat(1, 12)) * poly("p - 5")
}

/// Components of `F''` over the inner rational curves, top type first.
pub fn f_component_counts() -> (Poly, Poly) {
    let half = Poly::kappa().scale(&rat(1, 2));
    let rest = &half * &poly("(p-3)/4 - 1");
    (half, rest)
}

pub fn blowup_corrections(table: &[HypersurfaceData]) -> Result<BlowupCorrections> {
    let half_kappa = Poly::kappa().scale(&rat(1, 2));
    // kappa/2 blown-up points on H2, each with (F_H2)^2 = -1 and F''|H2'' = 2 F_H2
    let h2 = c2_dot_smooth(FineSymbol::H2, table)?;
    let c2_h2pp = &(&h2 + &half_kappa) + &half_kappa.scale(&int(-2));
    let c2_d0pp = &(Poly::kappa().scale(&rat(1, 24)) * poly("3*p^2 - 10*p + 3")) + &g_component_count().scale(&int(6));
    let c2_gpp = g_component_count().scale(&int(SurfaceClassModel::blown_up_plane().c2_contribution()));
    let (top, rest) = f_component_counts();
    let c2_fpp = &top.scale(&int(SurfaceClassModel::ruled_top().c2_contribution()))
        + &rest.scale(&int(SurfaceClassModel::quadric().c2_contribution()));
    Ok(BlowupCorrections { c2_h2pp, c2_d0pp, c2_gpp, c2_fpp })
}

/// Inputs of the `c_1 c_2` assembly; replaceable for mutation tests.
#[derive(Clone, Debug, PartialEq)]
pub struct ChernInputs {
    pub c2_dot_l: Poly,
    pub table: Vec<HypersurfaceData>,
}

impl ChernInputs {
    pub fn derived(form: &TrilinearForm) -> Self {
        ChernInputs {
            c2_dot_l: c2_dot_l(form, ComparisonSource::DirectSubtraction).c2_dot_l,
            table: table4(),
        }
    }
}

/// `c_1 c_2 = -c_2 . K''` with
/// `K'' = 3L'' - D_0'' - sum D'' - 1/2 H_1'' - 1/2 H_2'' - E'' - F'' - G''`.
pub fn c1_c2_with(inputs: &ChernInputs) -> Result<Poly> {
    let corr = blowup_corrections(&inputs.table)?;
    let mut c2_k = &inputs.c2_dot_l.scale(&int(3)) - &corr.c2_d0pp;
    for r in &inputs.table {
        let per = if r.name == FineSymbol::H2 {
            corr.c2_h2pp.clone()
        } else {
            &c2_dot_smooth(r.name, &inputs.table)? * &r.count
        };
        c2_k -= &per.scale(&r.multiplicity_in_k);
    }
    c2_k -= &corr.c2_fpp;
    c2_k -= &corr.c2_gpp;
    Ok(-c2_k)
}

pub fn c1_c2(form: &TrilinearForm) -> Poly {
    c1_c2_with(&ChernInputs::derived(form)).expect("built-in table is complete")
}

/// `-kappa (p-13)(p^2-17p+90) / 240`.
pub fn c1_c2_closed_form() -> Poly {
    Poly::kappa().scale(&rat(-1, 240)) * poly("p - 13") * poly("p^2 - 17*p + 90")
}

pub fn c1_cubed(form: &TrilinearForm) -> Poly {
    -k_cubed(form)
}

/// Euler number `c_3`, transcribed.
pub fn c3_euler() -> Poly {
    Poly::kappa().scale(&rat(-1, 1440)) * poly("p^3 + 431*p - 8760")
}

/// `p_a = 1 - c_1 c_2 / 24`.
pub fn arithmetic_genus(form: &TrilinearForm) -> Poly {
    &Poly::one() - &c1_c2(form).scale(&rat(1, 24))
}

/// `c_2 . D_0`, transcribed.
pub fn c2_dot_d0() -> Poly {
    Poly::kappa().scale(&rat(1, 24)) * poly("3*p^2 - 10*p - 3")
}

/// `c_2.D_0'' - c_2.D_0` computed by subtraction and in closed form.
pub fn d0_difference_check() -> Check {
    let corr = blowup_corrections(&table4()).expect("built-in table is complete");
    let lhs = &corr.c2_d0pp - &c2_dot_d0();
    let rhs = &Poly::kappa().scale(&rat(1, 4)) + &(Poly::kappa().scale(&rat(1, 2)) * poly("p - 5"));
    Check::poly_eq("c2.D0'' - c2.D0 = kappa/4 + kappa(p-5)/2", &lhs, &rhs)
}

/// All Chern-type invariants as polynomials in `p`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChernNumbers {
    #[serde(rename = "c1^3", serialize_with = "crate::report::ser_poly")]
    pub c1_cubed: Poly,
    #[serde(rename = "c1c2", serialize_with = "crate::report::ser_poly")]
    pub c1_c2: Poly,
    #[serde(rename = "c3", serialize_with = "crate::report::ser_poly")]
    pub c3: Poly,
    #[serde(rename = "pa", serialize_with = "crate::report::ser_poly")]
    pub pa: Poly,
    #[serde(rename = "c2L", serialize_with = "crate::report::ser_poly")]
    pub c2_l: Poly,
    #[serde(rename = "c2D0", serialize_with = "crate::report::ser_poly")]
    pub c2_d0: Poly,
}

impl ChernNumbers {
    pub fn compute(form: &TrilinearForm) -> Self {
        let c1c2 = c1_c2(form);
        ChernNumbers {
            c1_cubed: c1_cubed(form),
            pa: &Poly::one() - &c1c2.scale(&rat(1, 24)),
            c1_c2: c1c2,
            c3: c3_euler(),
            c2_l: c2_dot_l(form, ComparisonSource::DirectSubtraction).c2_dot_l,
            c2_d0: c2_dot_d0(),
        }
    }

    pub fn at(&self, p: u64) -> Result<ChernValues> {
        crate::divisor::fine::require_level_prime(p)?;
        let pv = int(p as i64);
        let ev = |f: &Poly| f.eval_p(&pv).expect("depends on p only");
        Ok(ChernValues {
            c1_cubed: ev(&self.c1_cubed),
            c1_c2: ev(&self.c1_c2),
            c3: ev(&self.c3),
            pa: ev(&self.pa),
            c2_l: ev(&self.c2_l),
            c2_d0: ev(&self.c2_d0),
        })
    }
}

/// [`ChernNumbers`] evaluated at a prime.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ChernValues {
    #[serde(rename = "c1^3", serialize_with = "crate::report::ser_rational")]
    pub c1_cubed: Rational,
    #[serde(rename = "c1c2", serialize_with = "crate::report::ser_rational")]
    pub c1_c2: Rational,
    #[serde(rename = "c3", serialize_with = "crate::report::ser_rational")]
    pub c3: Rational,
    #[serde(rename = "pa", serialize_with = "crate::report::ser_rational")]
    pub pa: Rational,
    #[serde(rename = "c2L", serialize_with = "crate::report::ser_rational")]
    pub c2_l: Rational,
    #[serde(rename = "c2D0", serialize_with = "crate::report::ser_rational")]
    pub c2_d0: Rational,
}

/// Exact checks of the Chern pipeline.
pub fn verify_chern(form: &TrilinearForm) -> Vec<Check> {
    let der = c2_dot_l(form, ComparisonSource::DirectSubtraction);
    let kc = k_cubed(form);
    vec![
        Check::poly_eq("k^3 residual before the c2.L solve", &der.k3_residual, &Poly::zero()),
        Check::poly_eq("k^2 residual before the c2.L solve", &der.k2_residual, &Poly::zero()),
        Check::poly_eq("c2.L", &der.c2_dot_l, &crate::dimension::stated_c2_dot_l()),
        Check::poly_eq("c1c2", &c1_c2(form), &c1_c2_closed_form()),
        Check::poly_eq(
            "c1^3",
            &c1_cubed(form),
            &(Poly::kappa().scale(&rat(-1, 960)) * poly("9*p^3 - 360*p^2 + 1519*p + 3000")),
        ),
        Check::poly_eq("c1^3 + K^3 = 0", &(&c1_cubed(form) + &kc), &Poly::zero()),
        Check::poly_eq(
            "p_a",
            &arithmetic_genus(form),
            &(&Poly::one() + &(Poly::kappa().scale(&rat(1, 5760)) * poly("p - 13") * poly("p^2 - 17*p + 90"))),
        ),
        d0_difference_check(),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;

    fn at(f: &Poly, p: i64) -> Rational {
        f.eval_p(&int(p)).unwrap()
    }

    #[test]
    fn c2_dot_l_solve() {
        let form = TrilinearForm::shipped();
        let der = c2_dot_l(&form, ComparisonSource::DirectSubtraction);
        assert!(der.k3_residual.is_zero());
        assert!(der.k2_residual.is_zero());
        assert_eq!(der.c2_dot_l, crate::dimension::stated_c2_dot_l());
        assert_eq!(at(&der.c2_dot_l, 5), rat(79, 3));
    }

    #[test]
    fn c2_dot_l_from_published_display() {
        let der = c2_dot_l(&TrilinearForm::shipped(), ComparisonSource::PublishedDisplay);
        assert_eq!(der.c2_dot_l, Poly::kappa().scale(&rat(1, 720)) * poly("p^3 - 240"));
        assert!(der.k2_residual.is_zero());
    }

    #[test]
    fn multiplicities() {
        use FineSymbol::*;
        for (s, m) in [(H1, rat(1, 2)), (H2, rat(1, 2)), (D0, rat(1, 1)), (Dper, rat(1, 1)), (E1, rat(1, 4)), (E2, rat(1, 2)), (E3, rat(1, 4)), (E4, rat(0, 1)), (E5, rat(0, 1))] {
            assert_eq!(multiplicity_in_k(s), m, "{s}");
        }
    }

    #[test]
    fn smooth_surfaces() {
        let t = table4();
        let h1 = c2_dot_smooth(FineSymbol::H1, &t).unwrap();
        assert_eq!(h1, Poly::kappa().scale(&rat(1, 12)) * poly("-3*p + 6"));
        assert_eq!(at(&h1, 5), int(-18));
        assert_eq!(c2_dot_smooth(FineSymbol::Dper, &t).unwrap(), Poly::from_int(8));
        assert_eq!(c2_dot_smooth(FineSymbol::E3, &t).unwrap(), Poly::from_int(-3));
        assert!(matches!(surface_name("X7"), Err(Error::UnknownSurface(_))));
        assert_eq!(surface_name("dper").unwrap(), FineSymbol::Dper);
        let short: Vec<_> = t.iter().filter(|r| r.name != FineSymbol::E2).cloned().collect();
        assert!(matches!(c2_dot_smooth(FineSymbol::E2, &short), Err(Error::UnknownSurface(_))));
    }

    #[test]
    fn surface_models() {
        let g = SurfaceClassModel::blown_up_plane();
        assert_eq!(g.dot(&g.canonical, &g.self_class), 3);
        assert_eq!(g.c2_contribution(), 3);
        assert_eq!(g.dot(&g.canonical, &g.canonical), 6);
        assert_eq!(SurfaceClassModel::ruled_top().c2_contribution(), -3);
        assert_eq!(SurfaceClassModel::quadric().c2_contribution(), -6);
    }

    #[test]
    fn corrections() {
        let c = blowup_corrections(&table4()).unwrap();
        assert_eq!(c.c2_h2pp, Poly::kappa().scale(&rat(1, 12)) * poly("-3*p + 33"));
        assert_eq!(at(&c.c2_h2pp, 5), int(36));
        assert_eq!(c.c2_gpp, Poly::kappa().scale(&rat(3, 12)) * poly("p - 5"));
        assert_eq!(at(&c.c2_gpp, 5), int(0));
        assert_eq!(c.c2_fpp, Poly::kappa().scale(&rat(1, 8)) * poly("-6*p + 30"));
        let (top, rest) = f_component_counts();
        assert_eq!(&top + &rest, Poly::kappa().scale(&rat(1, 8)) * poly("p - 3"));
    }

    #[test]
    fn second_chern_number() {
        let form = TrilinearForm::shipped();
        let c = c1_c2(&form);
        assert_eq!(c, c1_c2_closed_form());
        for p in [5, 7, 11] {
            assert_eq!(at(&c, p), int(24));
        }
        assert_eq!(at(&c, 13), int(0));
    }

    #[test]
    fn genus_and_euler() {
        let form = TrilinearForm::shipped();
        let pa = arithmetic_genus(&form);
        for (p, v) in [(5, 0), (7, 0), (11, 0), (13, 1), (17, 19)] {
            assert_eq!(at(&pa, p), int(v), "p={p}");
        }
        assert_eq!(at(&c3_euler(), 5), int(108));
        assert_eq!(at(&c3_euler(), 13), int(112));
        assert_eq!(at(&c1_cubed(&form), 5), int(-68));
        assert_eq!(at(&c2_dot_d0(), 5), int(22));
        assert!(d0_difference_check().pass);
    }

    #[test]
    fn every_entering_entry_is_load_bearing() {
        let form = TrilinearForm::shipped();
        let base = ChernInputs::derived(&form);
        let reference = c1_c2_with(&base).unwrap();
        for i in 0..base.table.len() {
            for field in 0..2 {
                let mut m = base.clone();
                let e = if field == 0 { &mut m.table[i].euler } else { &mut m.table[i].k_dot_n };
                *e = &*e + &Poly::one();
                let changed = c1_c2_with(&m).unwrap() != reference;
                let enters = !base.table[i].multiplicity_in_k.is_zero();
                assert_eq!(changed, enters, "row {}", base.table[i].name);
            }
        }
        let mut m = base.clone();
        m.c2_dot_l = &m.c2_dot_l + &Poly::one();
        assert_ne!(c1_c2_with(&m).unwrap(), reference);
    }

    #[test]
    fn evaluated_numbers() {
        let v = ChernNumbers::compute(&TrilinearForm::shipped()).at(7).unwrap();
        assert_eq!(v.c1_c2, int(24));
        assert_eq!(v.pa, int(0));
        let json = serde_json::to_value(&v).unwrap();
        for key in ["c1^3", "c1c2", "c3", "pa", "c2L", "c2D0"] {
            assert!(json.get(key).is_some(), "{key}");
        }
        assert!(ChernNumbers::compute(&TrilinearForm::shipped()).at(9).is_err());
    }

    #[test]
    fn verify_suite_passes() {
        let checks = verify_chern(&TrilinearForm::shipped());
        assert!(checks.iter().all(|c| c.pass), "{checks:#?}");
    }
}
