//! Multisecant spaces of rational curves obtained by projecting the rational
//! normal curve of degree d to P^n from a center spanned by r = d - n forms.
//!
//! In the extremal case b - a = d - n + 1 the b-secant a-planes are identified
//! with the degree-b slice of the intersected orthogonal ideals of the center
//! forms, so everything reduces to the apolarity machinery. Other index pairs
//! are either forced empty by the gap bound or out of reach of this
//! identification and rejected.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::apolarity::{catalecticant_matrix, vsps, vssp_dim_formula, WitnessStatus};
use crate::error::{Error, Result};
use crate::forms::{form_gcd, rat, BinaryForm, DualForm};
use crate::linalg::RationalMatrix;

/// A projected rational normal curve: degree d, target P^n, and the d - n
/// independent degree-d forms spanning the projection center.
#[derive(Clone, Debug)]
pub struct CurveSpec {
    d: usize,
    n: usize,
    center_forms: Vec<BinaryForm>,
}

impl CurveSpec {
    pub fn d(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.d - self.n
    }

    pub fn center_forms(&self) -> &[BinaryForm] {
        &self.center_forms
    }
}

/// True iff `g` is a nonzero multiple of a d-th power of a linear form:
/// the two partial derivatives are proportional exactly when the rank of the
/// degree-1 catalecticant drops to one.
fn is_pure_power(g: &BinaryForm) -> Result<bool> {
    if g.is_zero() {
        return Ok(false);
    }
    Ok(catalecticant_matrix(g, 1)?.rank() == 1)
}

/// Quadratic form in the pencil parameters for one 2x2 minor of
/// lambda*A + mu*B restricted to rows (i, j); coefficient order matches the
/// dual-form convention (lambda^2, lambda*mu, mu^2).
fn pencil_minor(a: &RationalMatrix, b: &RationalMatrix, i: usize, j: usize) -> DualForm {
    let det = |m: &RationalMatrix, n: &RationalMatrix| {
        m.at(i, 0) * n.at(j, 1) - m.at(i, 1) * n.at(j, 0)
    };
    let c2 = det(a, a);
    let c1 = det(a, b) + det(b, a);
    let c0 = det(b, b);
    DualForm::new(2, vec![c2, c1, c0]).expect("three coefficients for a quadratic")
}

const CENTER_GRID_RADIUS: i64 = 2;
const CENTER_GRID_CAP: usize = 20_000;
const CENTER_RANDOM_TRIALS: usize = 200;
const CENTER_CHECK_SEED: u64 = 0x5ec4_a11d;

/// Rejects spans containing a pure d-th power. For one or two forms the test
/// is exact: a single form is checked directly, and for a pencil the gcd of
/// the 2x2 minors of the pencil catalecticant is non-constant exactly when
/// some member drops to rank one. For three or more forms the span is swept
/// over a small integer grid plus seeded random combinations; that can only
/// certify presence, never absence.
fn center_meets_curve(forms: &[BinaryForm]) -> Result<bool> {
    match forms.len() {
        1 => is_pure_power(&forms[0]),
        2 => {
            let a = catalecticant_matrix(&forms[0], 1)?;
            let b = catalecticant_matrix(&forms[1], 1)?;
            let mut gcd: Option<DualForm> = None;
            for i in 0..a.rows() {
                for j in i + 1..a.rows() {
                    let minor = pencil_minor(&a, &b, i, j);
                    if minor.is_zero() {
                        continue;
                    }
                    gcd = Some(match gcd {
                        None => minor.normalized_primitive(),
                        Some(g) => form_gcd(&g, &minor)?,
                    });
                    if gcd.as_ref().map(|g| g.degree()) == Some(0) {
                        return Ok(false);
                    }
                }
            }
            match gcd {
                // all minors vanish identically: every member is a power
                None => Ok(true),
                Some(g) => Ok(g.degree() >= 1),
            }
        }
        r => {
            let mut combos: Vec<Vec<i64>> = Vec::new();
            let grid_size = (2 * CENTER_GRID_RADIUS as usize + 1).pow(r as u32);
            if grid_size <= CENTER_GRID_CAP {
                let mut stack = vec![vec![]];
                for _ in 0..r {
                    let mut next = Vec::new();
                    for c in &stack {
                        for v in -CENTER_GRID_RADIUS..=CENTER_GRID_RADIUS {
                            let mut c = c.clone();
                            c.push(v);
                            next.push(c);
                        }
                    }
                    stack = next;
                }
                combos.extend(stack.into_iter().filter(|c| c.iter().any(|&v| v != 0)));
            }
            let mut rng = ChaCha12Rng::seed_from_u64(CENTER_CHECK_SEED);
            for _ in 0..CENTER_RANDOM_TRIALS {
                let c: Vec<i64> = (0..r).map(|_| rng.gen_range(-50..=50)).collect();
                if c.iter().any(|&v| v != 0) {
                    combos.push(c);
                }
            }
            for combo in combos {
                let mut g = BinaryForm::zero(forms[0].degree());
                for (f, &c) in forms.iter().zip(&combo) {
                    if c != 0 {
                        g = g.add(&f.scaled(&rat(c)))?;
                    }
                }
                if is_pure_power(&g)? {
                    return Ok(true);
                }
            }
            Ok(false)
        }
    }
}

/// Validates a projection spec: d > n >= 1, exactly d - n independent forms
/// of degree d, and no pure power in their span.
pub fn make_curve(d: usize, n: usize, center_forms: Vec<BinaryForm>) -> Result<CurveSpec> {
    if n < 1 || d <= n {
        return Err(Error::InvalidCurveParams { d, n });
    }
    let r = d - n;
    if center_forms.len() != r {
        return Err(Error::WrongCenterCount { expected: r, got: center_forms.len() });
    }
    for f in &center_forms {
        if f.degree() != d {
            return Err(Error::DegreeMismatch { expected: d, got: f.degree() });
        }
        if f.is_zero() {
            return Err(Error::ZeroForm);
        }
    }
    let rows: Vec<_> = center_forms.iter().map(|f| f.coeffs().to_vec()).collect();
    if RationalMatrix::from_rows(rows)?.rank() != r {
        return Err(Error::DependentForms);
    }
    if center_meets_curve(&center_forms)? {
        return Err(Error::CenterMeetsCurve);
    }
    Ok(CurveSpec { d, n, center_forms })
}

/// Point-type wording for secant reports with a = 0.
fn uple_name(b: usize) -> String {
    match b {
        2 => "double".to_string(),
        3 => "triple".to_string(),
        4 => "quadruple".to_string(),
        _ => format!("{b}-uple"),
    }
}

/// Computed data for one extremal multisecant locus.
#[derive(Clone, Debug)]
pub struct SecantReport {
    pub a: usize,
    pub b: usize,
    /// Projective dimension of the full locus; -1 means empty.
    pub projective_dim: i64,
    /// Whether distinct-point secants exist, certified by a witness.
    pub smooth_part_nonempty: bool,
    pub witness: Option<DualForm>,
    pub witness_status: WitnessStatus,
    /// Set for a = 0 when the locus is a single certified point.
    pub note: Option<String>,
}

/// True exactly when the gap bound forces emptiness: b - a > d - n + 1.
pub fn emptiness_bound_check(d: usize, n: usize, a: usize, b: usize) -> bool {
    debug_assert!(d > n && n >= 1);
    b.saturating_sub(a) > d - n + 1
}

/// The b-secant a-planes of the curve in the extremal case b - a = d - n + 1,
/// computed through the degree-b slice of the center's intersected orthogonal
/// ideals.
pub fn secant_space(curve: &CurveSpec, a: usize, b: usize, seed: u64) -> Result<SecantReport> {
    let (d, n) = (curve.d, curve.n);
    if a >= n {
        return Err(Error::SecantIndexOutOfRange { a, n });
    }
    let gap = d - n + 1;
    if b != a + gap {
        return Err(Error::NotExtremal { a, b, expected_gap: gap });
    }
    let v = vsps(&curve.center_forms, b, seed)?;
    let note = if a == 0 && v.vssp_nonempty && v.projective_dim == 0 {
        Some(format!("a unique {} point", uple_name(b)))
    } else {
        None
    };
    Ok(SecantReport {
        a,
        b,
        projective_dim: v.projective_dim,
        smooth_part_nonempty: v.vssp_nonempty,
        witness: v.squarefree_witness,
        witness_status: v.witness_status,
        note,
    })
}

/// Prediction for one extremal locus of a generic curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SecantPrediction {
    Empty,
    Dim(usize),
}

#[derive(Clone, Debug)]
pub struct PredictedRow {
    pub a: usize,
    pub b: usize,
    pub prediction: SecantPrediction,
}

/// Closed-form table of the extremal multisecant loci of a generic curve of
/// degree d in P^n: empty below the minimal k of the center system, and of
/// projective dimension b(d-n+1) - (d-n)(d+1) at and above it.
pub fn generic_secant_table(d: usize, n: usize) -> Result<Vec<PredictedRow>> {
    if n < 1 || d <= n {
        return Err(Error::InvalidCurveParams { d, n });
    }
    let r = d - n;
    let gap = d - n + 1;
    (0..n)
        .map(|a| {
            let b = a + gap;
            let prediction = match vssp_dim_formula(d, r, b)? {
                None => SecantPrediction::Empty,
                Some(dim) => SecantPrediction::Dim(dim),
            };
            Ok(PredictedRow { a, b, prediction })
        })
        .collect()
}

/// One row of a genericity probe: computed vs predicted.
#[derive(Clone, Debug)]
pub struct ProbeRow {
    pub report: SecantReport,
    pub predicted: SecantPrediction,
    pub mismatch: bool,
}

/// Probe verdict. Exact arithmetic makes any dimension mismatch a
/// certificate of non-genericity; genericity itself is never proven.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GenericityVerdict {
    ConsistentWithGeneric,
    NonGenericCertified,
    /// A mismatch was observed but one of its witness searches was
    /// inconclusive, so the verdict is not a certificate.
    MismatchUnresolved,
}

#[derive(Clone, Debug)]
pub struct GenericityReport {
    pub rows: Vec<ProbeRow>,
    pub verdict: GenericityVerdict,
}

/// Compares every extremal locus of the curve against the generic-curve
/// predictions.
pub fn genericity_probe(curve: &CurveSpec, seed: u64) -> Result<GenericityReport> {
    let table = generic_secant_table(curve.d, curve.n)?;
    let mut rows = Vec::with_capacity(table.len());
    let mut any_mismatch = false;
    let mut any_unresolved = false;
    for predicted_row in table {
        let report = secant_space(curve, predicted_row.a, predicted_row.b, seed)?;
        let mismatch = match &predicted_row.prediction {
            SecantPrediction::Empty => report.projective_dim >= 0,
            SecantPrediction::Dim(dim) => {
                report.projective_dim != *dim as i64 || !report.smooth_part_nonempty
            }
        };
        if mismatch {
            any_mismatch = true;
            if matches!(report.witness_status, WitnessStatus::Unresolved { .. }) {
                any_unresolved = true;
            }
        }
        rows.push(ProbeRow { report, predicted: predicted_row.prediction, mismatch });
    }
    let verdict = if !any_mismatch {
        GenericityVerdict::ConsistentWithGeneric
    } else if any_unresolved {
        GenericityVerdict::MismatchUnresolved
    } else {
        GenericityVerdict::NonGenericCertified
    };
    Ok(GenericityReport { rows, verdict })
}
