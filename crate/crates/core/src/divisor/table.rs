//! The symmetric trilinear intersection form on the coarse basis, loaded
//! from a plain-text table file.
//!
//! File format: one entry per line, `A.B.C = <polynomial in p>`, blank lines
//! and `#` comments ignored. The four monomials involving both `R` and `E`
//! appear once in each of the `C = R` and `C = E` tables, so they may be
//! given twice; the two values must agree exactly. Every other monomial
//! must appear exactly once.

use std::collections::BTreeMap;
use std::path::Path;

use serde::Serialize;

use super::basis::{DivisorClass, Monomial, Symbol};
use crate::algebra::{parse_poly, Poly};
use crate::error::{Error, Result};

/// The intersection table shipped with the crate.
pub const SHIPPED_TABLE: &str = include_str!("../../data/tables.txt");

/// Environment variable overriding the default table path.
pub const TABLE_PATH_ENV: &str = "MODULI_TABLE_PATH";

#[derive(Clone, Debug, PartialEq)]
struct Entry {
    line: usize,
    value: Poly,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrilinearForm {
    entries: BTreeMap<Monomial, Poly>,
    /// Monomials given twice (once per table), with both transcriptions.
    cross_checked: BTreeMap<Monomial, (Poly, Poly)>,
}

/// One identity checked on a loaded table.
#[derive(Clone, Debug, Serialize)]
pub struct TableIdentity {
    pub name: String,
    pub lhs: String,
    pub rhs: String,
    pub pass: bool,
}

fn is_overlap(m: &Monomial) -> bool {
    m.contains(Symbol::R) && m.contains(Symbol::E)
}

fn parse_key(key: &str, line: usize) -> Result<[Symbol; 3]> {
    let parts: Vec<&str> = key.split('.').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(Error::Table {
            line,
            msg: format!("monomial key '{key}' must have the form A.B.C"),
        });
    }
    let mut out = [Symbol::L; 3];
    for (slot, part) in out.iter_mut().zip(&parts) {
        let mut chars = part.chars();
        let sym = match (chars.next(), chars.next()) {
            (Some(c), None) => Symbol::from_char(c),
            _ => None,
        };
        *slot = sym.ok_or_else(|| Error::Table {
            line,
            msg: format!("unknown symbol '{part}' (expected L, R, D or E)"),
        })?;
    }
    Ok(out)
}

impl TrilinearForm {
    pub fn load_str(text: &str) -> Result<Self> {
        let mut seen: BTreeMap<Monomial, Vec<Entry>> = BTreeMap::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let (key, value) = content.split_once('=').ok_or_else(|| Error::Table {
                line,
                msg: "expected 'A.B.C = <poly>'".into(),
            })?;
            let written = parse_key(key.trim(), line)?;
            let value = parse_poly(value.trim()).map_err(|e| Error::Table {
                line,
                msg: e.to_string(),
            })?;
            if value.degree_k().unwrap_or(0) > 0 {
                return Err(Error::Table {
                    line,
                    msg: "intersection numbers may only depend on p".into(),
                });
            }
            let mono = Monomial::new(written[0], written[1], written[2]);
            seen.entry(mono).or_default().push(Entry { line, value });
        }

        let mut entries = BTreeMap::new();
        let mut cross_checked = BTreeMap::new();
        for mono in Monomial::all() {
            let list = seen
                .remove(&mono)
                .ok_or_else(|| Error::MissingMonomial(mono.to_string()))?;
            match list.as_slice() {
                [one] => {
                    entries.insert(mono, one.value.clone());
                }
                [a, b] if is_overlap(&mono) => {
                    if a.value != b.value {
                        return Err(Error::OverlapMismatch {
                            monomial: mono.to_string(),
                            first: format!("{} (line {})", a.value, a.line),
                            second: format!("{} (line {})", b.value, b.line),
                        });
                    }
                    entries.insert(mono, a.value.clone());
                    cross_checked.insert(mono, (a.value.clone(), b.value.clone()));
                }
                _ => return Err(Error::DuplicateMonomial(mono.to_string())),
            }
        }
        Ok(TrilinearForm {
            entries,
            cross_checked,
        })
    }

    pub fn load_path(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::load_str(&text)
    }

    /// The shipped table.
    pub fn shipped() -> Self {
        Self::load_str(SHIPPED_TABLE).expect("shipped table is valid")
    }

    pub fn entry(&self, m: Monomial) -> &Poly {
        &self.entries[&m]
    }

    pub fn get(&self, a: Symbol, b: Symbol, c: Symbol) -> &Poly {
        self.entry(Monomial::new(a, b, c))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Monomial, &Poly)> {
        self.entries.iter()
    }

    /// A copy with one entry replaced (for what-if analyses).
    pub fn with_entry(&self, m: Monomial, value: Poly) -> Self {
        let mut out = self.clone();
        out.entries.insert(m, value);
        out.cross_checked.remove(&m);
        out
    }

    /// Trilinear extension of the table, grouped by the 20 unordered
    /// monomials: each monomial is weighted by the sum over its distinct
    /// orderings of the coefficient products.
    pub fn triple_product(&self, a: &DivisorClass, b: &DivisorClass, c: &DivisorClass) -> Poly {
        let mut total = Poly::zero();
        for (mono, value) in &self.entries {
            let mut weight = Poly::zero();
            for [x, y, z] in mono.orderings() {
                let (ax, by, cz) = (a.coeff(x), b.coeff(y), c.coeff(z));
                if ax.is_zero() || by.is_zero() || cz.is_zero() {
                    continue;
                }
                weight += &(&ax * &by) * &cz;
            }
            if !weight.is_zero() {
                total += &weight * value;
            }
        }
        total
    }

    /// The cross-table identities: each monomial involving both `R` and `E`
    /// must carry the same value in both tables, and `L.L.D` vanishes since
    /// `L` is trivial on the boundary.
    pub fn identities(&self) -> Vec<TableIdentity> {
        use Symbol::*;
        let overlaps = [
            ("L.E.R = L.R.E", Monomial::new(L, R, E)),
            ("D.E.R = R.D.E", Monomial::new(R, D, E)),
            ("R.E.R = R.R.E", Monomial::new(R, R, E)),
            ("E.E.R = R.E.E", Monomial::new(R, E, E)),
        ];
        let mut out: Vec<TableIdentity> = overlaps
            .iter()
            .map(|(name, m)| match self.cross_checked.get(m) {
                Some((a, b)) => TableIdentity {
                    name: (*name).to_string(),
                    lhs: a.to_string(),
                    rhs: b.to_string(),
                    pass: a == b,
                },
                None => TableIdentity {
                    name: (*name).to_string(),
                    lhs: self.entries[m].to_string(),
                    rhs: "(not transcribed twice)".into(),
                    pass: false,
                },
            })
            .collect();
        let lld = self.get(L, L, D);
        out.push(TableIdentity {
            name: "L.L.D = 0".into(),
            lhs: lld.to_string(),
            rhs: "0".into(),
            pass: lld.is_zero(),
        });
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use Symbol::*;

    fn kappa_times(f: Poly) -> Poly {
        f * Poly::kappa()
    }

    #[test]
    fn shipped_table_loads() {
        let t = TrilinearForm::shipped();
        assert_eq!(t.entries().count(), 20);
        assert_eq!(t.get(L, L, R), &kappa_times(Poly::p().scale(&rat(7, 144))));
        let eee = kappa_times(Poly::p().scale(&rat(19, 24)) + Poly::from_ratio(1, 4));
        assert_eq!(t.get(E, E, E), &eee);
        assert!(t.identities().iter().all(|i| i.pass));
        assert_eq!(t.identities().len(), 5);
    }

    #[test]
    fn single_line_entries() {
        let t = TrilinearForm::load_str(SHIPPED_TABLE).unwrap();
        let want = Poly::p().scale(&rat(7, 144)) * Poly::kappa();
        assert_eq!(t.get(R, L, L), &want);
    }

    #[test]
    fn missing_monomial() {
        let text: String = SHIPPED_TABLE
            .lines()
            .filter(|l| !l.starts_with("D.D.D"))
            .map(|l| format!("{l}\n"))
            .collect();
        assert_eq!(
            TrilinearForm::load_str(&text),
            Err(Error::MissingMonomial("D.D.D".into()))
        );
    }

    #[test]
    fn duplicate_monomial() {
        let text = format!("{SHIPPED_TABLE}\nd.d.d = 0\n");
        assert_eq!(
            TrilinearForm::load_str(&text),
            Err(Error::DuplicateMonomial("D.D.D".into()))
        );
    }

    #[test]
    fn overlap_mismatch_reports_both_values() {
        let text = SHIPPED_TABLE.replace("R.D.E = (p^2-1)", "R.D.E = 2*(p^2-1)");
        match TrilinearForm::load_str(&text) {
            Err(Error::OverlapMismatch { monomial, first, second }) => {
                assert_eq!(monomial, "R.D.E");
                assert!(first.starts_with("p^2 - 1"), "{first}");
                assert!(second.starts_with("2*p^2 - 2"), "{second}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn single_transcription_is_flagged() {
        let text: String = SHIPPED_TABLE
            .lines()
            .filter(|l| !l.starts_with("L.R.E"))
            .map(|l| format!("{l}\n"))
            .collect();
        let t = TrilinearForm::load_str(&text).unwrap();
        let ids = t.identities();
        assert!(!ids[0].pass);
        assert!(ids[1..].iter().all(|i| i.pass));
    }

    #[test]
    fn bad_lines() {
        assert!(matches!(
            TrilinearForm::load_str("L.L = 0"),
            Err(Error::Table { line: 1, .. })
        ));
        assert!(matches!(
            TrilinearForm::load_str("# c\nL.L.X = 0"),
            Err(Error::Table { line: 2, .. })
        ));
        assert!(matches!(
            TrilinearForm::load_str("L.L.L = k"),
            Err(Error::Table { line: 1, .. })
        ));
        assert!(matches!(
            TrilinearForm::load_str("L.L.L = p +"),
            Err(Error::Table { line: 1, .. })
        ));
    }

    #[test]
    fn triple_product_examples() {
        let t = TrilinearForm::shipped();
        let [l, r, d, e] = Symbol::ALL.map(DivisorClass::basis);
        assert_eq!(t.triple_product(&l, &l, &r), kappa_times(Poly::p().scale(&rat(7, 144))));
        assert!(t.triple_product(&l, &l, &e).is_zero());
        assert_eq!(t.triple_product(&r, &d, &e), Poly::kappa());
        assert_eq!(t.triple_product(&e, &d, &r), Poly::kappa());
    }
}
