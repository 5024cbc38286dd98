//! Model files and per-`s` geometry reports.
//!
//! A model file is UTF-8 JSON in one of two shapes, selected by `"type"`:
//!
//! - `structure_equations`: `n`, and `d` mapping `phiK` to a list of terms
//!   `{ "coeff": [re, im], "wedge": [name, name] }` with names `phi1..phiN`
//!   and `phibar1..phibarN`. Terms of type `phibar∧phibar` are rejected.
//! - `real_lie`: `dim`, sparse `brackets` `{ "i", "j", "out": { "k": v } }`
//!   meaning `[X_i, X_j] = Σ v X_k` (zero-based), `J` and `g` as `dim×dim`
//!   matrices, or `"identity"` for `g`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::geometry::{
    build_model, chern_torsion, kahler_like_residual, ricci_first, HermitianModel, ModelError, ModelInput, RealLieData,
    StructureEquations, ValidationFailure,
};
use crate::scalar::{format_rational, Complex64};

#[derive(Debug, Error)]
pub enum ReportError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("field {field}: {message}")]
    Field { field: String, message: String },
    #[error("rejected: {0}")]
    Rejected(ModelError),
    #[error("validation failed: {0}")]
    Invalid(ValidationFailure),
}

impl ReportError {
    fn field(field: impl Into<String>, message: impl Into<String>) -> Self {
        ReportError::Field { field: field.into(), message: message.into() }
    }

    /// Failures of the model itself, as opposed to unreadable input.
    pub fn is_validation(&self) -> bool {
        matches!(self, ReportError::Rejected(_) | ReportError::Invalid(_))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WedgeTerm {
    pub coeff: [f64; 2],
    pub wedge: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BracketEntry {
    pub i: usize,
    pub j: usize,
    pub out: BTreeMap<String, f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Named(String),
    Matrix(Vec<Vec<f64>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelFile {
    StructureEquations {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        description: Option<String>,
        n: usize,
        d: BTreeMap<String, Vec<WedgeTerm>>,
        #[serde(default = "identity_metric")]
        metric: MetricSpec,
    },
    RealLie {
        #[serde(default)]
        name: Option<String>,
        #[serde(default)]
        description: Option<String>,
        dim: usize,
        brackets: Vec<BracketEntry>,
        #[serde(rename = "J")]
        j: Vec<Vec<f64>>,
        #[serde(default = "identity_metric")]
        g: MetricSpec,
    },
}

fn identity_metric() -> MetricSpec {
    MetricSpec::Named("identity".into())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Coframe {
    Hol(usize),
    Anti(usize),
}

fn coframe(name: &str, n: usize, field: &str) -> Result<Coframe, ReportError> {
    let (anti, digits) = match name.strip_prefix("phibar") {
        Some(rest) => (true, rest),
        None => (false, name.strip_prefix("phi").ok_or_else(|| ReportError::field(field, format!("unknown coframe name {name:?}")))?),
    };
    let k: usize = digits.parse().map_err(|_| ReportError::field(field, format!("unknown coframe name {name:?}")))?;
    if k == 0 || k > n {
        return Err(ReportError::field(field, format!("{name} is out of range for n = {n}")));
    }
    Ok(if anti { Coframe::Anti(k - 1) } else { Coframe::Hol(k - 1) })
}

impl ModelFile {
    pub fn parse(text: &str) -> Result<Self, ReportError> {
        serde_json::from_str(text).map_err(|e| ReportError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn name(&self) -> Option<&str> {
        match self {
            ModelFile::StructureEquations { name, .. } | ModelFile::RealLie { name, .. } => name.as_deref(),
        }
    }

    pub fn description(&self) -> Option<&str> {
        match self {
            ModelFile::StructureEquations { description, .. } | ModelFile::RealLie { description, .. } => description.as_deref(),
        }
    }

    /// Converts to a model description, normalising antisymmetric data.
    pub fn to_input(&self) -> Result<ModelInput<Complex64>, ReportError> {
        match self {
            ModelFile::StructureEquations { n, d, metric, .. } => {
                let n = *n;
                if n == 0 {
                    return Err(ReportError::field("n", "must be at least 1"));
                }
                if *metric != identity_metric() {
                    return Err(ReportError::field("metric", "structure equations are read in a unitary coframe; only \"identity\" is accepted"));
                }
                let mut eqs = StructureEquations::zero(n);
                for (key, terms) in d {
                    let k = match coframe(key, n, "d")? {
                        Coframe::Hol(k) => k,
                        Coframe::Anti(_) => return Err(ReportError::field("d", format!("{key}: give dphi only; dphibar is its conjugate"))),
                    };
                    for (idx, term) in terms.iter().enumerate() {
                        let field = format!("d.{key}[{idx}]");
                        let c = Complex64::new(term.coeff[0], term.coeff[1]);
                        match (coframe(&term.wedge[0], n, &field)?, coframe(&term.wedge[1], n, &field)?) {
                            (Coframe::Hol(i), Coframe::Hol(j)) => eqs.add_hol(k, i, j, c),
                            (Coframe::Hol(i), Coframe::Anti(j)) => eqs.add_mixed(k, i, j, c),
                            (Coframe::Anti(j), Coframe::Hol(i)) => eqs.add_mixed(k, i, j, -c),
                            (Coframe::Anti(_), Coframe::Anti(_)) => {
                                return Err(ReportError::Rejected(ModelError::NotIntegrable(c.norm())));
                            }
                        }
                    }
                }
                Ok(ModelInput::Structure(eqs))
            }
            ModelFile::RealLie { dim, brackets, j, g, .. } => {
                let dim = *dim;
                let mut r = RealLieData::new(dim);
                for (idx, b) in brackets.iter().enumerate() {
                    let field = format!("brackets[{idx}]");
                    if b.i >= dim || b.j >= dim {
                        return Err(ReportError::field(field, format!("index out of range for dim = {dim}")));
                    }
                    for (k, v) in &b.out {
                        let k: usize = k.parse().map_err(|_| ReportError::field(&field, format!("output key {k:?} is not an index")))?;
                        if k >= dim {
                            return Err(ReportError::field(&field, format!("output index {k} out of range")));
                        }
                        r.add_bracket(b.i, b.j, k, *v);
                    }
                }
                r.complex_structure = j.clone();
                match g {
                    MetricSpec::Named(s) if s == "identity" => {}
                    MetricSpec::Named(s) => return Err(ReportError::field("g", format!("unknown metric {s:?}"))),
                    MetricSpec::Matrix(m) => r.metric = m.clone(),
                }
                Ok(ModelInput::Real(r))
            }
        }
    }
}

/// A parsed, validated model together with its provenance.
#[derive(Clone, Debug)]
pub struct LoadedModel {
    pub name: String,
    pub source: String,
    pub sha256: String,
    pub file: ModelFile,
    pub model: HermitianModel<Complex64>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    Sha256::digest(bytes).iter().map(|b| format!("{b:02x}")).collect()
}

/// Parses and validates model text; `source` names it in reports.
pub fn load_model_text(text: &str, source: &str) -> Result<LoadedModel, ReportError> {
    let file = ModelFile::parse(text)?;
    let model = build_model(&file.to_input()?).map_err(ReportError::Invalid)?;
    let name = file.name().map(str::to_string).unwrap_or_else(|| {
        Path::new(source).file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_else(|| source.to_string())
    });
    Ok(LoadedModel { name, source: source.to_string(), sha256: sha256_hex(text.as_bytes()), file, model })
}

pub fn load_model(path: &Path) -> Result<LoadedModel, ReportError> {
    let text = std::fs::read_to_string(path).map_err(|source| ReportError::Io { path: path.display().to_string(), source })?;
    load_model_text(&text, &path.display().to_string())
}

/// Residuals below this print as `"0"`.
pub const PRINT_FLOOR: f64 = 1e-13;

/// Scientific decimal string, or `"0"` below [`PRINT_FLOOR`].
pub fn residual_string(x: f64) -> String {
    if x.abs() < PRINT_FLOOR {
        "0".into()
    } else {
        format!("{x:.6e}")
    }
}

/// Fixed-point decimal string with trailing zeros trimmed.
pub fn value_string(x: f64) -> String {
    if x.abs() < PRINT_FLOOR {
        return "0".into();
    }
    let s = format!("{x:.12}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    s.to_string()
}

/// Named members of the Gauduchon line.
pub fn special_label(s: &BigRational) -> Option<&'static str> {
    match format_rational(s).as_str() {
        "0" => Some("Chern"),
        "1/2" => Some("conformal"),
        "2/3" => Some("minimal torsion"),
        "1" => Some("Lichnerowicz"),
        "2" => Some("Bismut"),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelSummary {
    pub name: String,
    pub source: String,
    pub sha256: String,
    pub n: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionSummary {
    pub norm_t_sq: String,
    pub norm_eta_sq: String,
    pub balanced: bool,
    pub kahler: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportRow {
    pub s: String,
    pub label: Option<String>,
    pub rho_bianchi: String,
    pub rho_type: String,
    pub rho_flat: String,
    pub ricci: String,
    pub kahler_like: bool,
    pub flat: bool,
    pub violation: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Consistent,
    Violation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema: String,
    pub model: ModelSummary,
    pub torsion: TorsionSummary,
    pub tolerance: String,
    pub rows: Vec<ReportRow>,
    pub verdict: Verdict,
}

pub const SCHEMA: &str = "gauduchon-report/1";

/// A Kähler-like row at `s ∉ {0, 2}` on a non-Kähler model would contradict rigidity.
pub fn build_report(loaded: &LoadedModel, s_values: &[BigRational], tol: f64) -> ReportDocument {
    let model = &loaded.model;
    let (t, eta) = chern_torsion(model);
    let kahler = model.is_kahler();
    let balanced = eta.max_abs() <= tol;
    let exempt = |s: &BigRational| matches!(format_rational(s).as_str(), "0" | "2");
    let rows: Vec<ReportRow> = s_values
        .iter()
        .map(|s| {
            let r = kahler_like_residual(model, s);
            let ric = ricci_first(model, s).max_abs();
            let kahler_like = r.is_kahler_like(tol);
            ReportRow {
                s: format_rational(s),
                label: special_label(s).map(str::to_string),
                rho_bianchi: residual_string(r.rho_bianchi),
                rho_type: residual_string(r.rho_type),
                rho_flat: residual_string(r.rho_flat),
                ricci: residual_string(ric),
                kahler_like,
                flat: r.is_flat(tol),
                violation: kahler_like && !kahler && !exempt(s),
            }
        })
        .collect();
    let verdict = if rows.iter().any(|r| r.violation) { Verdict::Violation } else { Verdict::Consistent };
    ReportDocument {
        schema: SCHEMA.into(),
        model: ModelSummary { name: loaded.name.clone(), source: loaded.source.clone(), sha256: loaded.sha256.clone(), n: model.n() },
        torsion: TorsionSummary {
            norm_t_sq: value_string(t.norm_sqr().re),
            norm_eta_sq: value_string(eta.norm_sqr().re),
            balanced,
            kahler,
        },
        tolerance: format!("{tol:e}"),
        rows,
        verdict,
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialises")
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        serde_json::from_str(text).map_err(|e| ReportError::Parse { line: e.line(), column: e.column(), message: e.to_string() })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let m = &self.model;
        let _ = writeln!(out, "model    {} (n = {}, sha256 {})", m.name, m.n, &m.sha256[..16]);
        let t = &self.torsion;
        let _ = writeln!(out, "torsion  |T|² = {}, |η|² = {}, balanced: {}, Kähler: {}", t.norm_t_sq, t.norm_eta_sq, t.balanced, t.kahler);
        let _ = writeln!(out, "tol      {}", self.tolerance);
        let _ = writeln!(out, "{:<6} {:<16} {:>14} {:>14} {:>14} {:>14}  flags", "s", "", "rho_bianchi", "rho_type", "rho_flat", "|Ric|");
        for r in &self.rows {
            let mut flags = Vec::new();
            if r.kahler_like {
                flags.push("kähler-like");
            }
            if r.flat {
                flags.push("flat");
            }
            if r.violation {
                flags.push("VIOLATION");
            }
            let _ = writeln!(
                out,
                "{:<6} {:<16} {:>14} {:>14} {:>14} {:>14}  {}",
                r.s,
                r.label.as_deref().unwrap_or(""),
                r.rho_bianchi,
                r.rho_type,
                r.rho_flat,
                r.ricci,
                flags.join(" ")
            );
        }
        let verdict = match self.verdict {
            Verdict::Consistent => "CONSISTENT",
            Verdict::Violation => "VIOLATION",
        };
        let _ = writeln!(out, "verdict  {verdict}");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    const IWASAWA: &str = include_str!("../fixtures/iwasawa.json");
    const TORUS: &str = include_str!("../fixtures/torus2.json");
    const HOPF: &str = include_str!("../fixtures/hopf.json");

    #[test]
    fn torus_report() {
        let m = load_model_text(TORUS, "torus2.json").unwrap();
        let doc = build_report(&m, &[rational(0, 1), rational(1, 1), rational(2, 1)], 1e-9);
        assert!(doc.torsion.kahler);
        assert_eq!(doc.verdict, Verdict::Consistent);
        for r in &doc.rows {
            assert_eq!((r.rho_bianchi.as_str(), r.rho_type.as_str(), r.rho_flat.as_str()), ("0", "0", "0"));
        }
    }

    #[test]
    fn iwasawa_report() {
        let m = load_model_text(IWASAWA, "iwasawa.json").unwrap();
        let grid: Vec<_> = [(0, 1), (1, 2), (2, 3), (4, 5), (1, 1), (2, 1)].iter().map(|&(p, q)| rational(p, q)).collect();
        let doc = build_report(&m, &grid, 1e-9);
        assert_eq!(doc.torsion.norm_t_sq, "0.5");
        assert!(doc.torsion.balanced && !doc.torsion.kahler);
        let flat: Vec<_> = doc.rows.iter().filter(|r| r.flat).map(|r| r.s.as_str()).collect();
        assert_eq!(flat, vec!["0"]);
        assert!(doc.rows.iter().all(|r| r.ricci == "0"));
        assert_eq!(doc.verdict, Verdict::Consistent);
        assert_eq!(doc.rows[0].label.as_deref(), Some("Chern"));
    }

    #[test]
    fn hopf_is_bismut_flat() {
        let m = load_model_text(HOPF, "hopf.json").unwrap();
        let doc = build_report(&m, &[rational(2, 1)], 1e-9);
        assert_eq!(doc.rows[0].rho_flat, "0");
        assert_eq!(doc.verdict, Verdict::Consistent);
    }

    #[test]
    fn json_round_trip() {
        let m = load_model_text(HOPF, "hopf.json").unwrap();
        let doc = build_report(&m, &[rational(1, 3), rational(2, 1)], 1e-9);
        assert_eq!(ReportDocument::from_json(&doc.to_json()).unwrap(), doc);
    }

    #[test]
    fn anti_anti_terms_are_rejected() {
        let text = IWASAWA.replace(r#"{ "coeff": [1, 0], "wedge": ["phi1", "phi2"] }"#, r#"{ "coeff": [1, 0], "wedge": ["phibar1", "phibar2"] }"#);
        let err = load_model_text(&text, "x").unwrap_err();
        assert!(err.is_validation(), "{err}");
    }

    #[test]
    fn mixed_terms_are_normalised() {
        // φ̄¹∧φ¹ = -φ¹∧φ̄¹
        let a = r#"{"type":"structure_equations","n":2,"d":{"phi2":[{"coeff":[0,1],"wedge":["phi1","phibar1"]}]}}"#;
        let b = r#"{"type":"structure_equations","n":2,"d":{"phi2":[{"coeff":[0,-1],"wedge":["phibar1","phi1"]}]}}"#;
        let ma = load_model_text(a, "a").unwrap();
        let mb = load_model_text(b, "b").unwrap();
        assert_eq!(ma.model, mb.model);
    }

    #[test]
    fn parse_errors_carry_position() {
        match ModelFile::parse("{\n  \"type\": 3\n}") {
            Err(ReportError::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let bad = r#"{"type":"structure_equations","n":2,"d":{"phi3":[]}}"#;
        assert!(matches!(load_model_text(bad, "x"), Err(ReportError::Field { .. })));
    }

    #[test]
    fn decimal_strings() {
        assert_eq!(residual_string(3e-14), "0");
        assert_eq!(residual_string(0.25), "2.500000e-1");
        assert_eq!(value_string(0.5), "0.5");
        assert_eq!(value_string(2.0), "2");
    }
}
