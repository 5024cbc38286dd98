//! Bundled model files and the headline invariants each one is expected to show.
//!
//! Expectations are recomputed on every call, so the catalog can never
//! advertise a property the code does not reproduce.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::geometry::kahler_like_residual;
use crate::report::{load_model_text, LoadedModel};
use crate::scalar::{format_rational, rational};

/// One bundled model file.
#[derive(Clone, Copy, Debug)]
pub struct Fixture {
    pub name: &'static str,
    pub file: &'static str,
    pub text: &'static str,
    pub expected: &'static [Expectation],
}

/// A headline property of a fixture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Kahler,
    NonKahler,
    Balanced,
    /// `R^0 = 0`
    ChernFlat,
    /// `R^2 = 0`
    BismutFlat,
    /// `R^s = 0` at every grid point.
    AllFlat,
}

impl Expectation {
    pub fn label(self) -> &'static str {
        match self {
            Expectation::Kahler => "Kähler",
            Expectation::NonKahler => "non-Kähler",
            Expectation::Balanced => "balanced",
            Expectation::ChernFlat => "Chern-flat",
            Expectation::BismutFlat => "Bismut-flat at s=2",
            Expectation::AllFlat => "all-flat",
        }
    }

    /// Evaluates the property on a loaded model; the detail names the deciding residual.
    pub fn evaluate(self, m: &LoadedModel, tol: f64) -> (bool, String) {
        let model = &m.model;
        let flat_at = |s: &BigRational| kahler_like_residual(model, s).rho_flat;
        match self {
            Expectation::Kahler | Expectation::NonKahler => {
                let k = model.is_kahler();
                (k == (self == Expectation::Kahler), format!("kähler = {k}"))
            }
            Expectation::Balanced => {
                let e = model.lee_form().components.iter().map(|z| z.norm()).fold(0.0, f64::max);
                (e <= tol, format!("max |θ| = {e:.3e}"))
            }
            Expectation::ChernFlat => {
                let r = flat_at(&rational(0, 1));
                (r <= tol, format!("|R^0| = {r:.3e}"))
            }
            Expectation::BismutFlat => {
                let r = flat_at(&rational(2, 1));
                (r <= tol, format!("|R^2| = {r:.3e}"))
            }
            Expectation::AllFlat => {
                let worst = sweep_grid().iter().map(flat_at).fold(0.0, f64::max);
                (worst <= tol, format!("max over grid |R^s| = {worst:.3e}"))
            }
        }
    }
}

use Expectation::*;

pub const FIXTURES: [Fixture; 4] = [
    Fixture { name: "torus2", file: "torus2.json", text: include_str!("../fixtures/torus2.json"), expected: &[Kahler, Balanced, AllFlat] },
    Fixture { name: "torus3", file: "torus3.json", text: include_str!("../fixtures/torus3.json"), expected: &[Kahler, Balanced, AllFlat] },
    Fixture {
        name: "iwasawa",
        file: "iwasawa.json",
        text: include_str!("../fixtures/iwasawa.json"),
        expected: &[NonKahler, Balanced, ChernFlat],
    },
    Fixture { name: "hopf", file: "hopf.json", text: include_str!("../fixtures/hopf.json"), expected: &[NonKahler, BismutFlat] },
];

/// The s-values swept by the consistency check.
pub fn sweep_grid() -> Vec<BigRational> {
    [(-1, 1), (0, 1), (1, 3), (1, 2), (2, 3), (4, 5), (1, 1), (3, 2), (2, 1), (5, 2), (3, 1), (4, 1)]
        .iter()
        .map(|&(p, q)| rational(p, q))
        .collect()
}

pub fn find(name: &str) -> Option<&'static Fixture> {
    FIXTURES.iter().find(|f| f.name == name)
}

impl Fixture {
    /// Bundled files are valid by construction.
    pub fn load(&self) -> LoadedModel {
        load_model_text(self.text, self.file).unwrap_or_else(|e| panic!("bundled fixture {} does not load: {e}", self.name))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectationResult {
    pub expectation: Expectation,
    pub label: String,
    pub holds: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub name: String,
    pub file: String,
    pub n: usize,
    pub description: String,
    pub sha256: String,
    pub expectations: Vec<ExpectationResult>,
}

impl CatalogEntry {
    pub fn verified(&self) -> bool {
        self.expectations.iter().all(|e| e.holds)
    }
}

pub fn catalog(tol: f64) -> Vec<CatalogEntry> {
    FIXTURES
        .iter()
        .map(|f| {
            let m = f.load();
            let expectations = f
                .expected
                .iter()
                .map(|&e| {
                    let (holds, detail) = e.evaluate(&m, tol);
                    ExpectationResult { expectation: e, label: e.label().into(), holds, detail }
                })
                .collect();
            CatalogEntry {
                name: f.name.into(),
                file: f.file.into(),
                n: m.model.n(),
                description: m.file.description().unwrap_or_default().into(),
                sha256: m.sha256.clone(),
                expectations,
            }
        })
        .collect()
}

pub fn render_catalog(entries: &[CatalogEntry]) -> String {
    let mut out = String::new();
    for e in entries {
        let status = if e.verified() { "verified" } else { "MISMATCH" };
        out.push_str(&format!("{:<8} n={}  {:<12} {}\n", e.name, e.n, e.file, e.description));
        for x in &e.expectations {
            let mark = if x.holds { "ok " } else { "BAD" };
            out.push_str(&format!("    {mark} {:<20} {}\n", x.label, x.detail));
        }
        out.push_str(&format!("    expected headline invariants: {status}\n"));
    }
    out.push_str(&format!("grid: {}\n", sweep_grid().iter().map(format_rational).collect::<Vec<_>>().join(", ")));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_fixture_meets_its_expectations() {
        for e in catalog(1e-9) {
            assert!(e.verified(), "{e:?}");
        }
    }

    #[test]
    fn grid_has_twelve_distinct_points() {
        let mut g = sweep_grid();
        g.dedup();
        assert_eq!(g.len(), 12);
    }

    #[test]
    fn expectations_discriminate() {
        let hopf = find("hopf").unwrap().load();
        assert!(!Expectation::Balanced.evaluate(&hopf, 1e-9).0);
        assert!(!Expectation::ChernFlat.evaluate(&hopf, 1e-9).0);
        let iw = find("iwasawa").unwrap().load();
        assert!(!Expectation::AllFlat.evaluate(&iw, 1e-9).0);
        assert!(!Expectation::Kahler.evaluate(&iw, 1e-9).0);
    }
}
