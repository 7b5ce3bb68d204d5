//! JSON (and TOML) forms of the library types. Complex numbers are `[re, im]`.

use std::path::Path;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::blaschke::{BlaschkeProduct, BoundaryPoint, DiskPoint};
use crate::modelspace::{ModelSpaceBasis, ModelSpaceElement};
use crate::poly::Poly;
use crate::quadrature::CircleQuadrature;
use crate::rational::RationalAnalytic;
use crate::symbols::{make_symbol, zero_class_symbol, Symbol, DEFAULT_ZERO_TOL};
use crate::tto::{self, AttoMatrix};

pub type ComplexJson = [f64; 2];

pub fn to_json_complex(z: Complex64) -> ComplexJson {
    [z.re, z.im]
}

pub fn from_json_complex(z: ComplexJson) -> Complex64 {
    Complex64::new(z[0], z[1])
}

fn complex_list(zs: &[Complex64]) -> Vec<ComplexJson> {
    zs.iter().map(|&z| to_json_complex(z)).collect()
}

/// A configuration or input problem, addressed by field path.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("{field}: {message}")]
pub struct ConfigError {
    pub field: String,
    pub message: String,
}

impl ConfigError {
    fn new(field: impl Into<String>, message: impl Into<String>) -> Self {
        ConfigError { field: field.into(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BlaschkeJson {
    pub constant: ComplexJson,
    pub zeros: Vec<ComplexJson>,
}

impl BlaschkeJson {
    pub fn to_blaschke(&self, field: &str) -> Result<BlaschkeProduct, ConfigError> {
        let c = from_json_complex(self.constant);
        if (c.norm() - 1.0).abs() > 1e-14 {
            return Err(ConfigError::new(
                format!("{field}.constant"),
                format!("constant must be unimodular, |c| = {}", c.norm()),
            ));
        }
        if self.zeros.is_empty() {
            return Err(ConfigError::new(format!("{field}.zeros"), "at least one zero is required"));
        }
        for (j, z) in self.zeros.iter().enumerate() {
            let m = from_json_complex(*z).norm();
            if !(m <= crate::blaschke::MAX_ZERO_MODULUS) {
                return Err(ConfigError::new(
                    format!("{field}.zeros[{j}]"),
                    format!("zero {j} has modulus {m}, must be < 1"),
                ));
            }
        }
        BlaschkeProduct::new(c, self.zeros.iter().map(|&z| from_json_complex(z)).collect())
            .map_err(|e| ConfigError::new(field, e.to_string()))
    }
}

impl From<&BlaschkeProduct> for BlaschkeJson {
    fn from(b: &BlaschkeProduct) -> Self {
        BlaschkeJson { constant: to_json_complex(b.constant()), zeros: complex_list(b.zeros()) }
    }
}

fn default_den() -> Vec<ComplexJson> {
    vec![[1.0, 0.0]]
}

/// Rational function with ascending-degree coefficient lists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RationalJson {
    pub num: Vec<ComplexJson>,
    #[serde(default = "default_den")]
    pub den: Vec<ComplexJson>,
}

impl RationalJson {
    pub fn to_rational(&self, field: &str) -> Result<RationalAnalytic, ConfigError> {
        let num = Poly::new(self.num.iter().map(|&z| from_json_complex(z)).collect());
        let den = Poly::new(self.den.iter().map(|&z| from_json_complex(z)).collect());
        RationalAnalytic::new(num, den).map_err(|e| ConfigError::new(format!("{field}.den"), e.to_string()))
    }
}

impl From<&RationalAnalytic> for RationalJson {
    fn from(r: &RationalAnalytic) -> Self {
        RationalJson { num: complex_list(r.num().coeffs()), den: complex_list(r.den().coeffs()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolJson {
    pub g_plus: RationalJson,
    pub g_minus: RationalJson,
}

impl SymbolJson {
    pub fn to_symbol(&self, field: &str) -> Result<Symbol, ConfigError> {
        Ok(make_symbol(
            self.g_plus.to_rational(&format!("{field}.g_plus"))?,
            self.g_minus.to_rational(&format!("{field}.g_minus"))?,
        ))
    }
}

impl From<&Symbol> for SymbolJson {
    fn from(s: &Symbol) -> Self {
        SymbolJson { g_plus: s.g_plus().into(), g_minus: s.g_minus().into() }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ElementJson {
    pub alpha: BlaschkeJson,
    pub coeffs: Vec<ComplexJson>,
}

impl From<&ModelSpaceElement> for ElementJson {
    fn from(e: &ModelSpaceElement) -> Self {
        ElementJson { alpha: e.basis().alpha().into(), coeffs: complex_list(e.coeffs()) }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AttoMatrixJson {
    pub alpha: BlaschkeJson,
    pub beta: BlaschkeJson,
    pub entries: Vec<Vec<ComplexJson>>,
    pub norm: f64,
}

impl From<&AttoMatrix> for AttoMatrixJson {
    fn from(m: &AttoMatrix) -> Self {
        let e = m.entries();
        AttoMatrixJson {
            alpha: m.alpha().into(),
            beta: m.beta().into(),
            entries: (0..e.nrows()).map(|j| (0..e.ncols()).map(|k| to_json_complex(e[(j, k)])).collect()).collect(),
            norm: m.norm(),
        }
    }
}

/// `row,col,re,im` lines for a matrix.
pub fn matrix_csv(m: &AttoMatrix) -> String {
    let e = m.entries();
    let mut out = String::from("row,col,re,im\n");
    for j in 0..e.nrows() {
        for k in 0..e.ncols() {
            out.push_str(&format!("{j},{k},{:e},{:e}\n", e[(j, k)].re, e[(j, k)].im));
        }
    }
    out
}

fn default_matrix_tol() -> f64 {
    DEFAULT_ZERO_TOL
}

fn default_quadrature_tol() -> f64 {
    CircleQuadrature::default().tol
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Tolerances {
    #[serde(default = "default_matrix_tol")]
    pub matrix: f64,
    #[serde(default = "default_quadrature_tol")]
    pub quadrature: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { matrix: default_matrix_tol(), quadrature: default_quadrature_tol() }
    }
}

/// Either explicit parts `g_plus`/`g_minus`, or a `builder` tag with its parameters:
/// `zero_class` (`h1`, `h2`), `rank_one_a` / `rank_one_b` (`w`), `rank_one_boundary` (`eta`).
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub builder: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_plus: Option<RationalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g_minus: Option<RationalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h1: Option<RationalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h2: Option<RationalJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w: Option<ComplexJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub eta: Option<ComplexJson>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceConfig {
    pub alpha: BlaschkeJson,
    pub beta: BlaschkeJson,
    pub symbol: SymbolSpec,
    #[serde(default)]
    pub tolerances: Tolerances,
    #[serde(default)]
    pub seed: u64,
}

/// How a resolved symbol was produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SymbolSource {
    Explicit,
    ZeroClass,
    RankOneA(DiskPoint),
    RankOneB(DiskPoint),
    RankOneBoundary(BoundaryPoint),
}

/// A validated configuration.
#[derive(Debug, Clone)]
pub struct Instance {
    pub alpha: Arc<ModelSpaceBasis>,
    pub beta: Arc<ModelSpaceBasis>,
    pub symbol: Symbol,
    pub source: SymbolSource,
    pub tolerances: Tolerances,
    pub seed: u64,
}

/// Reads a JSON config, or TOML when the extension is `.toml`.
pub fn load_config(path: &Path) -> Result<InstanceConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ConfigError::new(path.display().to_string(), format!("cannot read: {e}")))?;
    if path.extension().is_some_and(|e| e == "toml") {
        toml::from_str(&text).map_err(|e| ConfigError::new(path.display().to_string(), e.to_string()))
    } else {
        serde_json::from_str(&text).map_err(|e| ConfigError::new(path.display().to_string(), e.to_string()))
    }
}

fn require<'a, T>(v: &'a Option<T>, field: &str) -> Result<&'a T, ConfigError> {
    v.as_ref().ok_or_else(|| ConfigError::new(field, "missing"))
}

impl InstanceConfig {
    pub fn resolve(&self) -> Result<Instance, ConfigError> {
        let t = self.tolerances;
        if !(t.matrix > 0.0) {
            return Err(ConfigError::new("tolerances.matrix", "must be positive"));
        }
        if !(t.quadrature > 0.0) {
            return Err(ConfigError::new("tolerances.quadrature", "must be positive"));
        }
        let quad = CircleQuadrature::with_tol(t.quadrature);
        let alpha_fn = self.alpha.to_blaschke("alpha")?;
        let beta_fn = self.beta.to_blaschke("beta")?;
        let alpha = ModelSpaceBasis::with_quadrature(alpha_fn.clone(), quad);
        let beta = ModelSpaceBasis::with_quadrature(beta_fn.clone(), quad);
        let spec = &self.symbol;
        let numeric = |field: &str, e: crate::error::Error| ConfigError::new(field, e.to_string());

        let disk = |field: &str| -> Result<DiskPoint, ConfigError> {
            DiskPoint::new(from_json_complex(*require(&spec.w, field)?)).map_err(|e| numeric(field, e))
        };
        let (symbol, source) =
            match spec.builder.as_deref() {
                None => {
                    let s = SymbolJson {
                        g_plus: require(&spec.g_plus, "symbol.g_plus")?.clone(),
                        g_minus: require(&spec.g_minus, "symbol.g_minus")?.clone(),
                    };
                    (s.to_symbol("symbol")?, SymbolSource::Explicit)
                }
                Some("zero_class") => {
                    let h1 = require(&spec.h1, "symbol.h1")?.to_rational("symbol.h1")?;
                    let h2 = require(&spec.h2, "symbol.h2")?.to_rational("symbol.h2")?;
                    (zero_class_symbol(&alpha_fn, &beta_fn, &h1, &h2), SymbolSource::ZeroClass)
                }
                Some("rank_one_a") => {
                    let w = disk("symbol.w")?;
                    let (s, _) = tto::rank_one_interior_a(&alpha, &beta, w).map_err(|e| numeric("symbol", e))?;
                    (s, SymbolSource::RankOneA(w))
                }
                Some("rank_one_b") => {
                    let w = disk("symbol.w")?;
                    let (s, _) = tto::rank_one_interior_b(&alpha, &beta, w).map_err(|e| numeric("symbol", e))?;
                    (s, SymbolSource::RankOneB(w))
                }
                Some("rank_one_boundary") => {
                    let eta = BoundaryPoint::new(from_json_complex(*require(&spec.eta, "symbol.eta")?))
                        .map_err(|e| numeric("symbol.eta", e))?;
                    let (s, _) = tto::rank_one_boundary(&alpha, &beta, eta).map_err(|e| numeric("symbol", e))?;
                    (s, SymbolSource::RankOneBoundary(eta))
                }
                Some(other) => return Err(ConfigError::new(
                    "symbol.builder",
                    format!(
                        "unknown builder {other:?} (expected zero_class, rank_one_a, rank_one_b, rank_one_boundary)"
                    ),
                )),
            };
        Ok(Instance { alpha, beta, symbol, source, tolerances: t, seed: self.seed })
    }
}
