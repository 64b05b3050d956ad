//! On-disk case format. Everything here is plain data; binding names to
//! classes and checking arities happens in [`crate::case`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Construction {
    K3Lattice,
    DelPezzoSurface,
    RuledSurface,
    ProductSurface,
    Direct,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LatticeSpec {
    pub basis: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum SurfaceSpec {
    DelPezzo {
        points: usize,
    },
    Ruled {
        base_genus: i64,
        degree: i64,
        /// Ambient divisor name to `[h, f]` coordinates.
        #[serde(default)]
        restrictions: BTreeMap<String, [i64; 2]>,
    },
    Product {
        base_genus: i64,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CheckSpec {
    pub op: String,
    #[serde(default)]
    pub args: Map<String, Value>,
    pub expect: Value,
    pub anchor: String,
    /// A value printed in the source that differs from the computation but
    /// does not affect any table entry.
    #[serde(default)]
    pub paper_printed: Option<Value>,
    /// Pipeline input field that must equal this check's `value` (`kx3` for
    /// blowup steps).
    #[serde(default)]
    pub bind: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PipelineSpec {
    pub kw3: i64,
    pub kw_dot_b: i64,
    pub g_b: i64,
    /// Absent for cases where `X` is the blowup itself.
    #[serde(default)]
    pub d: Option<i64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseSpec {
    Named(String),
    Explicit(u64),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum StepSpec {
    Blowup(u64),
    Blowdown(u64),
    Flop,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct HodgeSpec {
    pub base: BaseSpec,
    pub steps: Vec<StepSpec>,
    pub anchor: String,
}

/// Integer or `"p/q"`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalSpec {
    Int(i64),
    Text(String),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedSpec {
    pub kx3: i64,
    #[serde(default)]
    pub kx_dot_c: Option<RationalSpec>,
    #[serde(default)]
    pub z: Option<RationalSpec>,
    pub h12: u64,
    pub dp_degree: u8,
    pub anchor: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagSpec {
    /// One of `kx3`, `kx_dot_c`, `z`, `h12`.
    pub field: String,
    pub paper_value: RationalSpec,
    pub anchor: String,
    #[serde(default)]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CaseFile {
    pub id: String,
    pub construction: Construction,
    #[serde(default)]
    pub lattice: Option<LatticeSpec>,
    #[serde(default)]
    pub surface: Option<SurfaceSpec>,
    #[serde(default)]
    pub polarization: Option<String>,
    #[serde(default)]
    pub classes: BTreeMap<String, Vec<i64>>,
    #[serde(default)]
    pub marks: Vec<String>,
    #[serde(default)]
    pub checks: Vec<CheckSpec>,
    #[serde(default)]
    pub pipeline: Option<PipelineSpec>,
    #[serde(default)]
    pub hodge: Option<HodgeSpec>,
    pub expected: ExpectedSpec,
    #[serde(default)]
    pub flags: Vec<FlagSpec>,
}
