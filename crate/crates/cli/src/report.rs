//! Serializable views of core results for the machine-readable reports.

use num_rational::BigRational;
use serde::Serialize;

use apolar_core::apolarity::{VspsResult, WitnessStatus};
use apolar_core::curves::{GenericityReport, GenericityVerdict, PredictedRow, SecantPrediction};
use apolar_core::decompose::{Coefficients, Decomposition};
use apolar_core::forms::{DualForm, ProjectivePoint};

use crate::input::SCHEMA;

pub fn rational_strings(v: &[BigRational]) -> Vec<String> {
    v.iter().map(|c| c.to_string()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DualFormJson {
    pub degree: usize,
    pub coeffs: Vec<String>,
    pub display: String,
}

impl From<&DualForm> for DualFormJson {
    fn from(op: &DualForm) -> Self {
        DualFormJson {
            degree: op.degree(),
            coeffs: rational_strings(op.coeffs()),
            display: op.to_string(),
        }
    }
}

pub fn witness_status_str(status: &WitnessStatus) -> String {
    match status {
        WitnessStatus::EmptySpace => "empty-space".to_string(),
        WitnessStatus::Found => "found".to_string(),
        WitnessStatus::ProvenAbsent(reason) => format!("proven-absent: {reason:?}"),
        WitnessStatus::Unresolved { trials } => format!("unresolved after {trials} trials"),
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum PointJson {
    Exact { exact: [String; 2] },
    Numeric { numeric: [[f64; 2]; 2] },
}

impl From<&ProjectivePoint> for PointJson {
    fn from(p: &ProjectivePoint) -> Self {
        match p {
            ProjectivePoint::Exact { p, q } => {
                PointJson::Exact { exact: [p.to_string(), q.to_string()] }
            }
            ProjectivePoint::Numeric { p, q } => {
                PointJson::Numeric { numeric: [[p.re, p.im], [q.re, q.im]] }
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum CoefficientsJson {
    Exact(Vec<Vec<String>>),
    Numeric(Vec<Vec<[f64; 2]>>),
}

impl From<&Coefficients> for CoefficientsJson {
    fn from(c: &Coefficients) -> Self {
        match c {
            Coefficients::Exact(rows) => {
                CoefficientsJson::Exact(rows.iter().map(|r| rational_strings(r)).collect())
            }
            Coefficients::Numeric(rows) => CoefficientsJson::Numeric(
                rows.iter()
                    .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
                    .collect(),
            ),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KminJson {
    pub schema: String,
    pub command: String,
    pub d: usize,
    pub r: usize,
    pub seed: u64,
    pub kmin: usize,
    pub beyond_socle: bool,
    pub witness: DualFormJson,
}

#[derive(Clone, Debug, Serialize)]
pub struct VspsJson {
    pub schema: String,
    pub command: String,
    pub d: usize,
    pub r: usize,
    pub k: usize,
    pub seed: u64,
    pub dim: usize,
    pub projective_dim: i64,
    pub vssp_nonempty: bool,
    pub witness_status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DualFormJson>,
    pub basis: Vec<Vec<String>>,
}

pub fn vsps_json(d: usize, r: usize, seed: u64, v: &VspsResult) -> VspsJson {
    VspsJson {
        schema: SCHEMA.to_string(),
        command: "vsps".to_string(),
        d,
        r,
        k: v.k,
        seed,
        dim: v.space.dim(),
        projective_dim: v.projective_dim,
        vssp_nonempty: v.vssp_nonempty,
        witness_status: witness_status_str(&v.witness_status),
        witness: v.squarefree_witness.as_ref().map(DualFormJson::from),
        basis: v
            .space
            .basis()
            .vectors()
            .iter()
            .map(|row| rational_strings(row))
            .collect(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DecomposeJson {
    pub schema: String,
    pub command: String,
    pub d: usize,
    pub r: usize,
    pub k: usize,
    pub seed: u64,
    pub exact: bool,
    pub points: Vec<PointJson>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub linear_forms: Option<Vec<String>>,
    pub coefficients: CoefficientsJson,
    pub reconstruction_residual: f64,
    pub witness: DualFormJson,
}

pub fn decompose_json(
    d: usize,
    r: usize,
    k: usize,
    seed: u64,
    dec: &Decomposition,
    witness: &DualForm,
) -> DecomposeJson {
    DecomposeJson {
        schema: SCHEMA.to_string(),
        command: "decompose".to_string(),
        d,
        r,
        k,
        seed,
        exact: dec.is_exact(),
        points: dec.points.iter().map(PointJson::from).collect(),
        linear_forms: dec
            .linear_forms()
            .map(|ls| ls.iter().map(|l| l.to_string()).collect()),
        coefficients: CoefficientsJson::from(&dec.coefficients),
        reconstruction_residual: dec.reconstruction_residual,
        witness: DualFormJson::from(witness),
    }
}

pub fn prediction_str(p: &SecantPrediction) -> String {
    match p {
        SecantPrediction::Empty => "empty".to_string(),
        SecantPrediction::Dim(0) => "point".to_string(),
        SecantPrediction::Dim(k) => format!("P^{k}"),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictRowJson {
    pub a: usize,
    pub b: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PredictJson {
    pub schema: String,
    pub command: String,
    pub d: usize,
    pub n: usize,
    pub r: usize,
    pub kmin: usize,
    pub rows: Vec<PredictRowJson>,
}

pub fn predict_rows_json(rows: &[PredictedRow]) -> Vec<PredictRowJson> {
    rows.iter()
        .map(|row| PredictRowJson {
            a: row.a,
            b: row.b,
            status: prediction_str(&row.prediction),
            dim: match row.prediction {
                SecantPrediction::Empty => None,
                SecantPrediction::Dim(k) => Some(k),
            },
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveRowJson {
    pub a: usize,
    pub b: usize,
    pub computed_projective_dim: i64,
    pub smooth_part_nonempty: bool,
    pub predicted: String,
    pub mismatch: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<DualFormJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveJson {
    pub schema: String,
    pub command: String,
    pub d: usize,
    pub n: usize,
    pub r: usize,
    pub verdict: String,
    pub rows: Vec<CurveRowJson>,
}

pub fn verdict_str(v: &GenericityVerdict) -> &'static str {
    match v {
        GenericityVerdict::ConsistentWithGeneric => "consistent with generic",
        GenericityVerdict::NonGenericCertified => "non-generic (certified)",
        GenericityVerdict::MismatchUnresolved => "mismatch (unresolved witness search)",
    }
}

pub fn curve_json(d: usize, n: usize, probe: &GenericityReport) -> CurveJson {
    CurveJson {
        schema: SCHEMA.to_string(),
        command: "curve".to_string(),
        d,
        n,
        r: d - n,
        verdict: verdict_str(&probe.verdict).to_string(),
        rows: probe
            .rows
            .iter()
            .map(|row| CurveRowJson {
                a: row.report.a,
                b: row.report.b,
                computed_projective_dim: row.report.projective_dim,
                smooth_part_nonempty: row.report.smooth_part_nonempty,
                predicted: prediction_str(&row.predicted),
                mismatch: row.mismatch,
                note: row.report.note.clone(),
                witness: row.report.witness.as_ref().map(DualFormJson::from),
            })
            .collect(),
    }
}
