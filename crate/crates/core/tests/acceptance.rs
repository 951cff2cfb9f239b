//! Acceptance gate: one PASS/FAIL line per criterion.

mod common;

use std::time::Instant;

use common::*;
use moduli_core::algebra::{int, lemma7_sum, parse_poly, rat, Lemma7Kind, Poly, Rational};
use moduli_core::chern;
use moduli_core::dimension::{self, ComparisonSource};
use moduli_core::divisor::{divisor_census, k_cubed, rr_cubic, TrilinearForm};
use moduli_core::theta::{
    check_modularity, random_siegel_point, random_word, theta_constant, vanishing_residual,
    SiegelPoint, ThetaCharacteristic,
};
use moduli_core::trace::{self, builtin_record, CaseId};
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<(), String>;

fn poly(s: &str) -> Poly {
    parse_poly(s).unwrap()
}

fn n(s: &str) -> Poly {
    &trace::normalization() * &poly(s)
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn eq(name: &str, got: &Poly, want: &Poly) -> Outcome {
    ensure(got == want, || format!("{name}: got {got}, want {want}"))
}

fn at(f: &Poly, p: i64) -> Rational {
    f.eval_p(&int(p)).unwrap()
}

fn c1_tables(form: &TrilinearForm) -> Outcome {
    let ids = form.identities();
    ensure(ids.len() == 5, || format!("{} identities", ids.len()))?;
    for i in ids {
        ensure(i.pass, || format!("{} fails: {} vs {}", i.name, i.lhs, i.rhs))?;
    }
    Ok(())
}

fn c2_k_cubed(form: &TrilinearForm) -> Outcome {
    let k3 = k_cubed(form);
    eq("K^3", &k3, &(Poly::kappa().scale(&rat(1, 960)) * poly("9*p^3 - 360*p^2 + 1519*p + 3000")))?;
    eq("K^3 (64 triples)", &k3, &k_cubed_brute_force(form))?;
    ensure(at(&k3, 5) == int(68), || format!("K^3(5) = {}", at(&k3, 5)))
}

fn c3_rr(form: &TrilinearForm) -> Outcome {
    let rr = rr_cubic(form);
    let u = Poly::kappa().scale(&rat(1, 34560));
    eq("k^3", &rr.coeff_k(3), &(&u * &poly("2*p^3 + 2*p")))?;
    eq("k^2", &rr.coeff_k(2), &(&u * &poly("-9*p^3 + 201*p")))?;
    eq("k^1", &rr.coeff_k(1), &(&u * &poly("9*p^3 - 120*p^2 - 1481*p - 1080")))
}

fn c4_lemma7() -> Outcome {
    let mut worst: f64 = 0.0;
    for m in 2..=200u64 {
        let (a, b) = lemma7_direct(m);
        for (direct, kind) in [(a, Lemma7Kind::Simple), (b, Lemma7Kind::DoublePole)] {
            let exact = lemma7_sum(kind, m).unwrap();
            let rel = direct.re_rational_gap(&exact) / exact.abs().to_f64().unwrap();
            worst = worst.max(rel);
        }
    }
    ensure(worst < 1e-9, || format!("max relative error {worst:e}"))
}

fn t(case: CaseId) -> trace::TracePoly {
    trace::trace(&builtin_record(case)).unwrap()
}

fn c5_traces() -> Outcome {
    eq("t1 k^2", &t(CaseId::C1a).k2, &n("30*p^14"))?;
    eq("t2 k^2", &t(CaseId::C1b).k2, &n("180*p^14"))?;
    eq("t2 k^1", &t(CaseId::C1b).k1, &n("-540*p^14 - 1080*p^12"))?;
    eq("t3 k^1", &t(CaseId::C1c).k1, &n("-120*p^10*(p^5 + p^3 - p^2 - 1)"))?;
    eq("t4+t5 k^1", &(&t(CaseId::C2a).k1 + &t(CaseId::C2b).k1), &n("340*p^14"))?;
    eq("t6 k^1", &t(CaseId::C2cB1).k1, &n("-180*(p^14 + p^13 - 2*p^12)"))?;
    ensure(t(CaseId::C2cB2) == t(CaseId::C2cB1).scale(&rat(3, 1)), || "t7 != 3 t6".into())
}

fn c6_total() -> Outcome {
    let s = trace::total_trace_sum();
    eq("k^2", &s.k2, &n("210*p^14"))?;
    eq("k^1", &s.k1, &n("-120*p^15 - 1010*p^14 - 840*p^13 + 120*p^12 + 120*p^10"))
}

fn c7_c2l(form: &TrilinearForm) -> Outcome {
    let d = chern::c2_dot_l(form, ComparisonSource::DirectSubtraction);
    ensure(d.k3_residual.is_zero(), || format!("k^3 residual {}", d.k3_residual))?;
    ensure(d.k2_residual.is_zero(), || format!("k^2 residual {}", d.k2_residual))?;
    eq("c2.L", &d.c2_dot_l, &(Poly::kappa().scale(&rat(1, 720)) * poly("p^3 + 121*p + 60")))
}

fn c8_c1c2(form: &TrilinearForm) -> Outcome {
    let c = chern::c1_c2(form);
    eq("c1c2", &c, &(Poly::kappa().scale(&rat(-1, 240)) * poly("(p - 13)*(p^2 - 17*p + 90)")))?;
    let pa = chern::arithmetic_genus(form);
    for p in [5, 7, 11] {
        ensure(at(&c, p) == int(24) && at(&pa, p) == int(0), || format!("p={p}"))?;
    }
    ensure(at(&pa, 13) == int(1), || format!("p_a(13) = {}", at(&pa, 13)))
}

fn c9_dimension(form: &TrilinearForm) -> Outcome {
    for c in dimension::dim_final_consistency(form) {
        ensure(c.pass, || format!("{}: {} vs {}", c.name, c.lhs, c.rhs))?;
    }
    let rr1 = rr_cubic(form).coeff_k(1).div_exact(&Poly::kappa().scale(&rat(1, 34560))).unwrap();
    let th1 = dimension::dim_cusp_gamma1p_poly().coeff_k(1).div_exact(&Poly::kappa().scale(&rat(1, 34560))).unwrap();
    eq("bracket shift", &(&th1 - &rr1), &poly("4*p^3 + 484*p + 240"))?;
    let d = dimension::dim_cusp_gamma1p(5, 12).unwrap();
    ensure(d == int(247), || format!("dim S_12 = {d}"))?;
    for p in [5u64, 7, 11, 13] {
        for k in [12i64, 24, 36, 48] {
            ensure(dimension::integrality(p, k).unwrap(), || format!("p={p} k={k}"))?;
        }
    }
    Ok(())
}

fn c10_misprint(form: &TrilinearForm) -> Outcome {
    let r = dimension::verify_star_identity(form, ComparisonSource::PublishedDisplay);
    ensure(r.checks[0].pass && r.checks[1].pass, || "k^3/k^2 checks should still hold".into())?;
    let c = &r.checks[2];
    ensure(!c.pass, || "k^1 check unexpectedly passes".into())?;
    let want = "kappa^2/34560 * (484*p^14 + 1200*p^13)";
    ensure(c.residual.as_deref() == Some(want), || format!("residual {:?}", c.residual))?;
    let direct = chern::c2_dot_l(form, ComparisonSource::DirectSubtraction).c2_dot_l;
    let display = chern::c2_dot_l(form, ComparisonSource::PublishedDisplay).c2_dot_l;
    let scaled = n("484*p^14 + 1200*p^13").scale(&rat(12, 1)).div_exact(&dimension::group_index()).unwrap();
    eq("c2.L shift = residual / (d/12)", &(&direct - &display), &scaled)
}

fn c11_theta() -> Outcome {
    let eps = 1e-14;
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let taus: Vec<SiegelPoint> = (0..20).map(|_| random_siegel_point(&mut rng)).collect();
    for tau in taus.iter().take(10) {
        for m in ThetaCharacteristic::odd() {
            let v = theta_constant(m, tau, eps).unwrap().norm();
            ensure(v < eps, || format!("odd {m}: {v:e}"))?;
        }
    }
    for (y1, y3) in [(1.0, 1.0), (0.8, 1.7)] {
        let tau = SiegelPoint::diagonal(Complex64::new(0.0, y1), Complex64::new(0.0, y3)).unwrap();
        for m in ThetaCharacteristic::all() {
            let got = theta_constant(m, &tau, eps).unwrap();
            let want = jacobi_theta(m.a[0], m.b[0], y1) * jacobi_theta(m.a[1], m.b[1], y3);
            ensure((got - want).norm() < 1e-10, || format!("{m}: {got} vs {want}"))?;
        }
    }
    let words: Vec<_> = (0..20).map(|_| random_word(&mut rng, 5)).collect();
    let (mut w10, mut w60): (f64, f64) = (0.0, 0.0);
    for g in &words {
        for tau in &taus {
            w10 = w10.max(check_modularity(g, tau, 10, eps).unwrap());
        }
    }
    for (g, tau) in words.iter().zip(&taus) {
        w60 = w60.max(check_modularity(g, tau, 60, eps).unwrap());
    }
    ensure(w10 < 1e-7, || format!("weight 10 residual {w10:e}"))?;
    ensure(w60 < 1e-6, || format!("weight 60 residual {w60:e}"))?;
    for tau in &taus {
        for n in [0.0, 1.0] {
            let on = SiegelPoint::new(tau.t1(), Complex64::new(n, 0.0), tau.t3()).unwrap();
            let r = vanishing_residual(&on, eps).unwrap();
            ensure(r < 1e-8, || format!("Theta^2 on tau_2 = {n}: {r:e}"))?;
        }
    }
    Ok(())
}

fn c12_counts() -> Outcome {
    for p in [5u64, 7, 11, 13, 37] {
        let c = divisor_census(p).unwrap();
        ensure(c == 2 * p * p + 4, || format!("census({p}) = {c}"))?;
    }
    eq("H1 components", &trace::h1_component_count(), &Poly::p_pow(6))?;
    eq("boundary components", &trace::boundary_component_count(), &poly("p^4*(p^3 - 1)/2"))?;
    eq("B1 components", &trace::b1_component_count(), &poly("p^8*(p^2 + p - 2)/2"))?;
    eq("record 1c count", &builtin_record(CaseId::C1c).component_count, &trace::boundary_component_count())?;
    eq("record 2c count", &builtin_record(CaseId::C2cB1).component_count, &trace::b1_component_count())
}

fn main() {
    let form = TrilinearForm::shipped();
    let criteria: Vec<(&str, Box<dyn Fn() -> Outcome>)> = vec![
        ("table consistency", Box::new(|| c1_tables(&form))),
        ("K^3", Box::new(|| c2_k_cubed(&form))),
        ("Riemann-Roch cubic", Box::new(|| c3_rr(&form))),
        ("root-of-unity sums vs 200-bit direct sums", Box::new(c4_lemma7)),
        ("trace contributions", Box::new(c5_traces)),
        ("trace total", Box::new(c6_total)),
        ("c2.L", Box::new(|| c7_c2l(&form))),
        ("c1c2 and arithmetic genus", Box::new(|| c8_c1c2(&form))),
        ("final dimension formula", Box::new(|| c9_dimension(&form))),
        ("misprint reproduction", Box::new(|| c10_misprint(&form))),
        ("theta numerics", Box::new(c11_theta)),
        ("census and component counts", Box::new(c12_counts)),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = f();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {name} ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({ms} ms): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
