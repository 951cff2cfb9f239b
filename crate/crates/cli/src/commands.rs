//! Command implementations. Each returns a JSON payload and a text rendering.

use std::fmt::Write;

use moduli_core::algebra::{int, render_rational, Poly, Rational};
use moduli_core::chern::ChernNumbers;
use moduli_core::dimension::{self, ComparisonSource};
use moduli_core::divisor::fine::require_level_prime;
use moduli_core::divisor::{parse_divisor_expr, TrilinearForm};
use moduli_core::report::Check;
use moduli_core::theta::{self, SiegelPoint, ThetaCharacteristic, ThetaTest};
use moduli_core::trace::{self, CaseId};
use moduli_core::verify::{self, Suite};
use moduli_core::{Error, Result};
use serde_json::{json, Value};

use crate::{Cli, Command, GroupArg, SuiteArg, ThetaCommand, ThetaTestArg};

pub struct Output {
    pub command: &'static str,
    pub query: Value,
    pub result: Value,
    pub pass: bool,
    pub text: String,
}

impl Output {
    pub fn envelope(&self) -> Value {
        json!({
            "command": self.command,
            "query": self.query,
            "result": self.result,
            "pass": self.pass,
        })
    }
}

fn load_table(cli: &Cli) -> Result<TrilinearForm> {
    match &cli.table {
        Some(path) => TrilinearForm::load_path(path),
        None => Ok(TrilinearForm::shipped()),
    }
}

fn eval_at(f: &Poly, p: u64) -> Result<Rational> {
    require_level_prime(p)?;
    f.eval_p(&int(p as i64))
        .ok_or_else(|| Error::InvalidArgument(format!("{f} depends on k")))
}

pub fn run(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Intersect { expr, prime } => intersect(cli, expr, *prime),
        Command::Verify { suite, identity, prime_range, use_paper_display } => {
            verify_cmd(cli, *suite, identity.is_some(), prime_range.as_deref(), *use_paper_display)
        }
        Command::Dim { group, prime, weight } => dim(*group, *prime, *weight),
        Command::Chern { prime, symbolic } => chern(cli, *prime, *symbolic),
        Command::Trace { case, prime } => trace_cmd(case, *prime),
        Command::Theta { action } => match action {
            ThetaCommand::Eval { tau, characteristic, eps } => theta_eval(tau, characteristic, *eps),
            ThetaCommand::Check { test, samples, tol, seed, eps } => {
                theta_check(*test, *samples, *tol, *seed, *eps)
            }
        },
    }
}

fn intersect(cli: &Cli, expr: &str, prime: Option<u64>) -> Result<Output> {
    let form = load_table(cli)?;
    let q = parse_divisor_expr(expr)?;
    let value = q.evaluate(&form)?;
    let mut result = json!({ "poly": value.to_string() });
    let text = match prime {
        Some(p) => {
            let v = render_rational(&eval_at(&value, p)?);
            result["value"] = json!(v);
            format!("{v}\n")
        }
        None => format!("{value}\n"),
    };
    Ok(Output {
        command: "intersect",
        query: json!({ "expr": expr, "prime": prime, "parsed": q.to_string() }),
        result,
        pass: true,
        text,
    })
}

fn render_checks(checks: &[Check]) -> String {
    let mut s = String::new();
    for c in checks {
        let tag = if c.pass { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{tag}  {}", c.name);
        if !c.pass {
            let _ = writeln!(s, "      lhs: {}\n      rhs: {}", c.lhs, c.rhs);
            if let Some(r) = &c.residual {
                let _ = writeln!(s, "      residual: {r}");
            }
        }
    }
    s
}

fn verify_cmd(
    cli: &Cli,
    suite: SuiteArg,
    only_star: bool,
    prime_range: Option<&str>,
    paper_display: bool,
) -> Result<Output> {
    let form = load_table(cli)?;
    let source = if paper_display {
        ComparisonSource::PublishedDisplay
    } else {
        ComparisonSource::DirectSubtraction
    };
    let primes = match prime_range {
        Some(r) => verify::parse_prime_range(r)?,
        None => Vec::new(),
    };
    let suite = match suite {
        SuiteArg::Tables => Suite::Tables,
        SuiteArg::Trace => Suite::Trace,
        SuiteArg::Star => Suite::Star,
        SuiteArg::Chern => Suite::Chern,
        SuiteArg::All => Suite::All,
    };
    let (checks, suite_name) = if only_star {
        (dimension::verify_star_identity(&form, source).checks, "star identity")
    } else {
        (verify::run_verify(suite, &form, source, &primes)?.checks, "")
    };
    let pass = checks.iter().all(|c| c.pass);
    let failed = checks.iter().filter(|c| !c.pass).count();
    let mut text = render_checks(&checks);
    let _ = writeln!(text, "{} checks, {} failed", checks.len(), failed);
    Ok(Output {
        command: "verify",
        query: json!({
            "suite": if only_star { suite_name.to_string() } else { serde_json::to_value(suite).unwrap().as_str().unwrap().to_string() },
            "primes": primes,
            "source": source,
        }),
        result: json!({ "checks": checks, "failed": failed }),
        pass,
        text,
    })
}

fn dim(group: GroupArg, prime: Option<u64>, weight: Option<i64>) -> Result<Output> {
    let (name, f) = match group {
        GroupArg::Gamma1p => ("gamma1p", dimension::dim_cusp_gamma1p_poly()),
        GroupArg::Gamma2sq => ("gamma2sq", dimension::dim_cusp_gamma2_poly()),
    };
    let mut result = json!({ "poly": f.to_string() });
    let text = match (prime, weight) {
        (Some(p), Some(k)) => {
            let v = match group {
                GroupArg::Gamma1p => dimension::dim_cusp_gamma1p(p, k)?,
                GroupArg::Gamma2sq => dimension::dim_cusp_gamma2(p, k)?,
            };
            let v = render_rational(&v);
            result["value"] = json!(v);
            format!("{v}\n")
        }
        (None, None) => format!("{f}\n"),
        _ => {
            return Err(Error::InvalidArgument(
                "--prime and --weight must be given together".into(),
            ))
        }
    };
    Ok(Output {
        command: "dim",
        query: json!({ "group": name, "prime": prime, "weight": weight }),
        result,
        pass: true,
        text,
    })
}

fn chern(cli: &Cli, prime: Option<u64>, symbolic: bool) -> Result<Output> {
    let form = load_table(cli)?;
    let numbers = ChernNumbers::compute(&form);
    let result = match (prime, symbolic) {
        (_, true) => serde_json::to_value(&numbers).expect("serializable"),
        (Some(p), false) => serde_json::to_value(numbers.at(p)?).expect("serializable"),
        (None, false) => {
            return Err(Error::InvalidArgument("give --prime or --symbolic".into()));
        }
    };
    let mut text = String::new();
    for key in ["c1^3", "c1c2", "c3", "pa", "c2L", "c2D0"] {
        let _ = writeln!(text, "{key:<5} = {}", result[key].as_str().unwrap_or_default());
    }
    if symbolic {
        if let Some(p) = prime {
            require_level_prime(p)?;
        }
    }
    Ok(Output {
        command: "chern",
        query: json!({ "prime": prime, "symbolic": symbolic }),
        result,
        pass: true,
        text,
    })
}

fn trace_cmd(case: &str, prime: Option<u64>) -> Result<Output> {
    let cases: Vec<CaseId> = if case.eq_ignore_ascii_case("all") {
        CaseId::ALL.to_vec()
    } else {
        vec![CaseId::parse(case)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown case '{case}'")))?]
    };
    let norm = trace::normalization();
    let mut rows = Vec::new();
    let mut text = String::new();
    let mut total = trace::TracePoly::zero();
    let mut add_row = |label: String, name: String, t: &trace::TracePoly| -> Result<()> {
        let mut row = json!({
            "case": name,
            "label": label,
            "k2": t.k2.to_string(),
            "k1": t.k1.to_string(),
        });
        let (n2, n1) = (t.k2.div_exact(&norm).unwrap(), t.k1.div_exact(&norm).unwrap());
        row["k2_normalized"] = json!(n2.to_string());
        row["k1_normalized"] = json!(n1.to_string());
        match prime {
            Some(p) => {
                let (v2, v1) = (render_rational(&eval_at(&t.k2, p)?), render_rational(&eval_at(&t.k1, p)?));
                let _ = writeln!(text, "{label} ({name}): k^2 {v2}, k^1 {v1}");
                row["k2_value"] = json!(v2);
                row["k1_value"] = json!(v1);
            }
            None => {
                let _ = writeln!(text, "{label} ({name}): kappa^2/34560 * [k^2 ({n2}), k^1 ({n1})]");
            }
        }
        rows.push(row);
        Ok(())
    };
    for c in &cases {
        let t = trace::trace(&trace::builtin_record(*c))?;
        add_row(c.label().to_string(), c.as_str().to_string(), &t)?;
        total = &total + &t;
    }
    if cases.len() > 1 {
        add_row("total".into(), "all".into(), &total)?;
    }
    Ok(Output {
        command: "trace",
        query: json!({ "case": case, "prime": prime }),
        result: json!({ "rows": rows }),
        pass: true,
        text,
    })
}

fn theta_eval(tau: &str, characteristic: &str, eps: f64) -> Result<Output> {
    let point = SiegelPoint::parse(tau)?;
    let m = ThetaCharacteristic::parse(characteristic)?;
    let v = theta::theta_constant(m, &point, eps)?;
    Ok(Output {
        command: "theta eval",
        query: json!({ "tau": tau, "char": m.to_string(), "eps": eps, "even": m.is_even() }),
        result: json!({ "re": v.re, "im": v.im, "abs": v.norm() }),
        pass: true,
        text: format!("{} {:+e}i\n", v.re, v.im),
    })
}

fn theta_check(test: ThetaTestArg, samples: usize, tol: f64, seed: u64, eps: f64) -> Result<Output> {
    let test = match test {
        ThetaTestArg::Modularity => ThetaTest::Modularity,
        ThetaTestArg::Vanishing => ThetaTest::Vanishing,
        ThetaTestArg::Omega => ThetaTest::Omega,
    };
    let r = theta::run_theta_check(test, samples, seed, eps, tol)?;
    let tag = if r.pass { "PASS" } else { "FAIL" };
    Ok(Output {
        command: "theta check",
        query: json!({ "test": test, "samples": samples, "tol": tol, "seed": seed, "eps": eps }),
        text: format!("{tag}  {test:?}: max residual {:e} (tol {tol:e})\n", r.max_residual),
        pass: r.pass,
        result: serde_json::to_value(&r).expect("serializable"),
    })
}
