//! The JSON run configuration. Command-line flags override the matching
//! fields; anything left unset falls back to the defaults below.

use serde::{Deserialize, Serialize};
use serde_json::Value;

pub const DEFAULT_CAP: u64 = antimorph_core::DEFAULT_CAP;
pub const DEFAULT_SEED: u64 = antimorph_core::DEFAULT_SEED;
pub const DEFAULT_BOUND: usize = 8;
pub const DEFAULT_SAMPLES: u64 = 1000;
pub const DEFAULT_DIM_CAP: usize = 16;

#[derive(Clone, Debug, Default, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub context: Option<ContextSpec>,
    pub algebra: Option<AlgebraSpec>,
    pub map: Option<MapSpec>,
    pub search: Option<SearchSpec>,
    pub laurent: Option<LaurentSpec>,
    pub gen: Option<GenSpec>,
    pub mode: Option<ModeSpec>,
    /// Hex string such as `"0xC0FFEE"`.
    pub seed: Option<String>,
    pub cap: Option<u64>,
    pub bound: Option<usize>,
    pub samples: Option<u64>,
    pub dim_cap: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(tag = "backend", rename_all = "snake_case", deny_unknown_fields)]
pub enum ContextSpec {
    /// `GF(p^(dn)) / GF(p^d)` with `σ = x ↦ x^(p^d)`.
    Frobenius { p: u32, d: u32, n: u32 },
    /// `GF(q)(x) / GF(q)(x^n)` with `σ(x) = ζx`; `zeta` is an element code of `GF(q)`.
    FunctionField { q: u32, zeta: u32, n: usize },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraSpec {
    pub m: usize,
    pub a: Value,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    pub tau: Value,
    pub alpha: Option<Value>,
    pub k: Option<usize>,
    /// Verify as an isomorphism onto the algebra with this constant instead
    /// of as an anti-automorphism.
    pub codomain: Option<Value>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum SearchSpec {
    Exhaustive,
    /// `α = c·x^j` with `|j|` up to the given bound.
    Ansatz(i32),
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum ModeSpec {
    Exhaustive,
    Sampled,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentSpec {
    pub tau: Value,
    /// Defaults to a norm-one element found by Hilbert 90.
    pub alpha1: Option<Value>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GenSpec {
    pub coeff: CoeffSpec,
    /// Defaults to the entrywise Frobenius `σ` of the context.
    pub sigma: Option<MatrixSpec>,
    pub m: usize,
    /// Coordinates of `d` in the basis of `D`, each an element of `C`.
    pub d: Vec<Value>,
    pub tau: TauSpec,
    pub alpha: Value,
    pub k: Option<usize>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum CoeffSpec {
    /// 2×2 matrices over `C`, basis E11, E12, E21, E22.
    M2,
    /// `C` itself.
    Field,
    /// `e_i e_j = Σ_l constants[i][j][l] e_l`, each coefficient an element of `C`.
    Constants { labels: Vec<String>, constants: Vec<Vec<Vec<Value>>>, unit: Vec<Value> },
}

#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(untagged)]
pub enum TauSpec {
    /// `transpose`, `transpose_sigma`, `id` or `frob<e>` (entrywise).
    Named(String),
    Matrix(MatrixSpec),
}

/// A `GF(p)`-linear map of `D`: column `i` holds the prime coordinates of
/// the image of the `i`-th prime basis element.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixSpec {
    pub kind: KindSpec,
    #[serde(default)]
    pub name: Option<String>,
    pub matrix: Vec<Vec<u32>>,
}

#[derive(Clone, Copy, Debug, Deserialize, Serialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum KindSpec {
    Automorphism,
    AntiAutomorphism,
}

pub fn parse_seed(s: &str) -> Result<u64, String> {
    let digits = s.trim_start_matches("0x").trim_start_matches("0X");
    u64::from_str_radix(digits, 16).map_err(|e| format!("seed {s:?} is not hexadecimal: {e}"))
}
