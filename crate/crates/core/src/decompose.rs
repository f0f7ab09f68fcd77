//! From a squarefree apolar witness to an explicit decomposition: root
//! extraction over the rationals with a simultaneous complex iteration as
//! fallback, generalized Vandermonde coefficient solving, and round-trip
//! verification.
//!
//! The root-to-form convention is [p : q] |-> p*x0 + q*x1, so the dual linear
//! factor of the witness at a root annihilates the matching power.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::apolarity::{vsps, VspsResult};
use crate::error::{Error, Result};
use crate::forms::{
    binomial, expand_power_sum, poly_trim, rat, squarefree_test, BinaryForm, DualForm,
    LinearForm, ProjectivePoint,
};
use crate::linalg::{solve_linear, LinearSolution, RationalMatrix};

/// Default residual tolerance for numeric roots.
pub const ROOT_TOL: f64 = 1e-10;
/// Default tolerance for numeric reconstruction residuals.
pub const RECONSTRUCTION_TOL: f64 = 1e-8;

const ABERTH_MAX_ITER: u32 = 300;
const MAX_DIVISOR_CANDIDATES: usize = 4096;

/// The distinct projective roots of a squarefree dual form, exact where
/// possible. `residual` is the largest scaled witness evaluation over the
/// numeric points (zero when every root is exact).
#[derive(Clone, Debug)]
pub struct RootSet {
    points: Vec<ProjectivePoint>,
    residual: f64,
}

impl RootSet {
    /// Builds a root set from points, checking pairwise distinctness: exact
    /// pairs must differ as projective classes, pairs involving a numeric
    /// point must be separated by more than `tol` in the chordal metric.
    pub fn new(points: Vec<ProjectivePoint>, residual: f64, tol: f64) -> Result<Self> {
        for i in 0..points.len() {
            for j in i + 1..points.len() {
                let dist = points[i].chordal_distance(&points[j]);
                let both_exact = points[i].is_exact() && points[j].is_exact();
                if (both_exact && dist == 0.0) || (!both_exact && dist <= tol) {
                    return Err(Error::DuplicateRoots);
                }
            }
        }
        Ok(RootSet { points, residual })
    }

    pub fn points(&self) -> &[ProjectivePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn residual(&self) -> f64 {
        self.residual
    }

    pub fn all_exact(&self) -> bool {
        self.points.iter().all(|p| p.is_exact())
    }
}

// ---------------------------------------------------------------------------
// Rational root extraction
// ---------------------------------------------------------------------------

/// Divisors of |n|, or None when n does not factor quickly enough for a
/// complete enumeration (callers then fall back to numeric roots).
fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    debug_assert!(n > 0);
    let mut factors: Vec<(u64, u32)> = Vec::new();
    let mut rest = n;
    let mut p = 2u64;
    while p <= 10_000 && p * p <= rest {
        if rest % p == 0 {
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        // a composite survivor has no factor <= 1e4, so it exceeds 1e8;
        // anything smaller is certainly prime
        if rest >= 100_000_000 {
            return None;
        }
        factors.push((rest, 1));
    }
    let mut divs: Vec<u64> = vec![1];
    for (p, e) in factors {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pk = 1u64;
            for _ in 0..=e {
                next.push(d.checked_mul(pk)?);
                pk = pk.checked_mul(p).unwrap_or(u64::MAX);
            }
        }
        divs = next;
        if divs.len() > MAX_DIVISOR_CANDIDATES {
            return None;
        }
    }
    divs.sort_unstable();
    divs.dedup();
    Some(divs.into_iter().map(BigInt::from).collect())
}

/// Scales to primitive integer coefficients (content removed).
fn primitive_integer(u: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in u {
        l = l.lcm(c.denom());
    }
    let ints: Vec<BigInt> = u.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() || g.is_one() {
        return ints;
    }
    ints.into_iter().map(|c| c / &g).collect()
}

/// Evaluates sum u_i p^i q^(e-i), an integer multiple of u(p/q).
fn eval_at_fraction(u: &[BigInt], p: &BigInt, q: &BigInt) -> BigInt {
    let e = u.len() - 1;
    let mut acc = BigInt::zero();
    let mut p_pow = BigInt::one();
    let mut q_pows = vec![BigInt::one()];
    for i in 1..=e {
        q_pows.push(&q_pows[i - 1] * q);
    }
    for (i, c) in u.iter().enumerate() {
        acc += c * &p_pow * &q_pows[e - i];
        p_pow *= p;
    }
    acc
}

/// Removes the factor (t - root) from u, exactly.
fn deflate(u: &mut Vec<BigRational>, root: &BigRational) {
    let e = u.len() - 1;
    let mut quotient = vec![BigRational::zero(); e];
    let mut carry = BigRational::zero();
    for i in (1..=e).rev() {
        carry = &u[i] + &carry * root;
        quotient[i - 1] = carry.clone();
    }
    debug_assert!((&u[0] + carry * root).is_zero(), "deflation by a non-root");
    *u = quotient;
}

/// Extracts every rational root of u (ascending coefficients, squarefree),
/// deflating in place. Returns the extracted roots as exact points [t : 1].
/// Stops early if divisor enumeration is infeasible.
fn extract_rational_roots(u: &mut Vec<BigRational>) -> Vec<ProjectivePoint> {
    let mut found = Vec::new();
    loop {
        poly_trim(u);
        if u.len() <= 1 {
            return found;
        }
        if u[0].is_zero() {
            found.push(ProjectivePoint::exact_from_integers(0, 1).unwrap());
            u.remove(0);
            continue;
        }
        if u.len() == 2 {
            let root = -&u[0] / &u[1];
            found.push(ProjectivePoint::exact(root, BigRational::one()).unwrap());
            *u = vec![u[1].clone()];
            return found;
        }
        let ints = primitive_integer(u);
        let e = ints.len() - 1;
        let (Some(ps), Some(qs)) = (divisors(&ints[0]), divisors(&ints[e])) else {
            return found;
        };
        if ps.len() * qs.len() * 2 > 8 * MAX_DIVISOR_CANDIDATES {
            return found;
        }
        let mut hit = None;
        'search: for q in &qs {
            for p in &ps {
                if !p.gcd(q).is_one() {
                    continue;
                }
                for sign in [1i64, -1] {
                    let p = p * BigInt::from(sign);
                    if eval_at_fraction(&ints, &p, q).is_zero() {
                        hit = Some(BigRational::new(p, q.clone()));
                        break 'search;
                    }
                }
            }
        }
        match hit {
            Some(root) => {
                found.push(ProjectivePoint::exact(root.clone(), BigRational::one()).unwrap());
                deflate(u, &root);
            }
            None => return found,
        }
    }
}

/// Exact square root of a nonnegative rational, if it is a perfect square.
fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let ns = x.numer().sqrt();
    let ds = x.denom().sqrt();
    if &(&ns * &ns) == x.numer() && &(&ds * &ds) == x.denom() {
        Some(BigRational::new(ns, ds))
    } else {
        None
    }
}

// ---------------------------------------------------------------------------
// Aberth-Ehrlich simultaneous iteration
// ---------------------------------------------------------------------------

fn eval_poly(c: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for coeff in c.iter().rev() {
        acc = acc * z + coeff;
    }
    acc
}

/// All complex roots of a squarefree polynomial of degree >= 1 given by
/// ascending rational coefficients.
fn aberth_roots(u: &[BigRational], tol: f64) -> Result<Vec<Complex64>> {
    let e = u.len() - 1;
    let max_abs = u
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("nonempty polynomial");
    let coeffs: Vec<Complex64> = u
        .iter()
        .map(|c| Complex64::new((c / &max_abs).to_f64().unwrap_or(f64::NAN), 0.0))
        .collect();
    let deriv: Vec<Complex64> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(i, c)| c * i as f64)
        .collect();
    let lead = coeffs[e].norm();
    let radius = 1.0
        + coeffs[..e]
            .iter()
            .map(|c| c.norm() / lead)
            .fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..e)
        .map(|j| {
            let theta = 2.0 * std::f64::consts::PI * j as f64 / e as f64
                + std::f64::consts::FRAC_PI_4 / e as f64;
            // slight radius stagger so symmetric configurations break ties
            let r = radius * (0.9 + 0.05 * (j as f64) / e as f64);
            Complex64::new(r * theta.cos(), r * theta.sin())
        })
        .collect();
    for _iter in 0..ABERTH_MAX_ITER {
        let mut max_step = 0.0f64;
        let prev = z.clone();
        for j in 0..e {
            let zj = prev[j];
            let p = eval_poly(&coeffs, zj);
            if p.norm() == 0.0 {
                continue;
            }
            let dp = eval_poly(&deriv, zj);
            if dp.norm() == 0.0 {
                z[j] = zj + Complex64::new(tol.max(1e-12), tol.max(1e-12));
                max_step = f64::INFINITY;
                continue;
            }
            let w = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for (i, zi) in prev.iter().enumerate() {
                if i != j {
                    s += 1.0 / (zj - zi);
                }
            }
            let denom = 1.0 - w * s;
            let delta = if denom.norm() == 0.0 { w } else { w / denom };
            z[j] = zj - delta;
            let step = delta.norm() / zj.norm().max(1.0);
            max_step = max_step.max(step);
        }
        if max_step < tol {
            return Ok(z);
        }
    }
    Err(Error::NonConvergence { iterations: ABERTH_MAX_ITER })
}

/// Scaled evaluation of the witness at a unit-norm point: coefficients are
/// normalized to max-abs one so the residual is scale-invariant on both sides.
fn scaled_residual(op: &DualForm, point: &ProjectivePoint) -> f64 {
    let max_abs = op
        .coeffs()
        .iter()
        .map(|c| c.abs())
        .max()
        .expect("nonzero witness");
    let scaled = op.scaled(&max_abs.recip());
    let (p, q) = point.as_complex();
    scaled.eval_complex(p, q).norm()
}

fn sort_points(points: &mut [ProjectivePoint]) {
    points.sort_by(|a, b| match (a, b) {
        (ProjectivePoint::Exact { p: p1, q: q1 }, ProjectivePoint::Exact { p: p2, q: q2 }) => {
            (p1, q1).cmp(&(p2, q2))
        }
        (ProjectivePoint::Exact { .. }, ProjectivePoint::Numeric { .. }) => std::cmp::Ordering::Less,
        (ProjectivePoint::Numeric { .. }, ProjectivePoint::Exact { .. }) => {
            std::cmp::Ordering::Greater
        }
        (ProjectivePoint::Numeric { p: p1, q: q1 }, ProjectivePoint::Numeric { p: p2, q: q2 }) => {
            let key = |p: &Complex64, q: &Complex64| {
                if q.norm() < 1e-300 {
                    (f64::MAX, f64::MAX)
                } else {
                    let t = p / q;
                    (t.arg(), t.norm())
                }
            };
            let ka = key(p1, q1);
            let kb = key(p2, q2);
            ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
        }
    });
}

/// All projective roots of a squarefree dual form. The root at [1:0] comes
/// from the y1-multiplicity, rational roots are extracted exactly with exact
/// deflation, leftover quadratics with square discriminant split exactly, and
/// whatever remains goes to the simultaneous complex iteration with residual
/// verification at threshold `tol`.
pub fn binary_form_roots(op: &DualForm, tol: f64) -> Result<RootSet> {
    if op.is_zero() {
        return Err(Error::ZeroForm);
    }
    if !squarefree_test(op)? {
        return Err(Error::NotSquarefree);
    }
    let (m, mut u) = op.split_y1_multiplicity();
    let mut points: Vec<ProjectivePoint> = Vec::new();
    if m == 1 {
        points.push(ProjectivePoint::exact_from_integers(1, 0).unwrap());
    }
    points.extend(extract_rational_roots(&mut u));
    if u.len() == 3 {
        // quadratic with rational-square discriminant splits exactly
        let disc = &u[1] * &u[1] - rat(4) * &u[2] * &u[0];
        if let Some(s) = rational_sqrt(&disc) {
            let two_a = rat(2) * &u[2];
            for root in [(-&u[1] + &s) / &two_a, (-&u[1] - &s) / &two_a] {
                points.push(ProjectivePoint::exact(root, BigRational::one()).unwrap());
            }
            u = vec![u[2].clone()];
        }
    }
    let mut residual = 0.0f64;
    if u.len() > 1 {
        let zs = if u.len() == 3 {
            let b = (&u[1] / &u[2]).to_f64().unwrap_or(f64::NAN);
            let c = (&u[0] / &u[2]).to_f64().unwrap_or(f64::NAN);
            let disc = Complex64::new(b * b - 4.0 * c, 0.0).sqrt();
            let mb = Complex64::new(-b, 0.0);
            vec![(mb + disc) / 2.0, (mb - disc) / 2.0]
        } else {
            aberth_roots(&u, tol)?
        };
        for z in zs {
            let point = ProjectivePoint::numeric(z, Complex64::new(1.0, 0.0))?;
            let res = scaled_residual(op, &point);
            if !(res < tol) {
                return Err(Error::NonConvergence { iterations: ABERTH_MAX_ITER });
            }
            residual = residual.max(res);
            points.push(point);
        }
    }
    if points.len() != op.degree() {
        return Err(Error::NonConvergence { iterations: ABERTH_MAX_ITER });
    }
    sort_points(&mut points);
    RootSet::new(points, residual, tol)
}

// ---------------------------------------------------------------------------
// Coefficient solving
// ---------------------------------------------------------------------------

/// Coefficient matrix of a decomposition, one row per input form.
#[derive(Clone, Debug)]
pub enum Coefficients {
    Exact(Vec<Vec<BigRational>>),
    Numeric(Vec<Vec<Complex64>>),
}

impl Coefficients {
    pub fn is_exact(&self) -> bool {
        matches!(self, Coefficients::Exact(_))
    }

    pub fn nrows(&self) -> usize {
        match self {
            Coefficients::Exact(m) => m.len(),
            Coefficients::Numeric(m) => m.len(),
        }
    }
}

/// The coefficient column l_j^d for an exact point.
fn exact_power_column(point: &ProjectivePoint, d: usize) -> Vec<BigRational> {
    let ProjectivePoint::Exact { p, q } = point else {
        unreachable!("caller checks exactness");
    };
    let mut col = Vec::with_capacity(d + 1);
    let mut p_pows = vec![BigInt::one()];
    let mut q_pows = vec![BigInt::one()];
    for i in 1..=d {
        p_pows.push(&p_pows[i - 1] * p);
        q_pows.push(&q_pows[i - 1] * q);
    }
    for i in 0..=d {
        col.push(BigRational::from_integer(binomial(d, i) * &p_pows[d - i] * &q_pows[i]));
    }
    col
}

fn numeric_power_column(point: &ProjectivePoint, d: usize) -> Vec<Complex64> {
    let (p, q) = point.as_complex();
    (0..=d)
        .map(|i| {
            binomial(d, i).to_f64().unwrap() * p.powu((d - i) as u32) * q.powu(i as u32)
        })
        .collect()
}

/// Gaussian elimination with partial pivoting on a small complex system.
fn solve_complex(mut a: Vec<Vec<Complex64>>, mut b: Vec<Complex64>) -> Result<Vec<Complex64>> {
    let n = b.len();
    for c in 0..n {
        let (pivot, mag) = (c..n)
            .map(|r| (r, a[r][c].norm()))
            .max_by(|x, y| x.1.partial_cmp(&y.1).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap();
        if mag == 0.0 {
            return Err(Error::NonConvergence { iterations: 0 });
        }
        a.swap(c, pivot);
        b.swap(c, pivot);
        for r in c + 1..n {
            let factor = a[r][c] / a[c][c];
            for j in c..n {
                let t = factor * a[c][j];
                a[r][j] -= t;
            }
            let t = factor * b[c];
            b[r] -= t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for c in (0..n).rev() {
        let mut acc = b[c];
        for j in c + 1..n {
            acc -= a[c][j] * x[j];
        }
        x[c] = acc / a[c][c];
    }
    Ok(x)
}

/// Solves f_i = sum_j c_ij l_j^d for the coefficient rows. With exact roots
/// the generalized Vandermonde system is solved exactly and must be
/// consistent (the witness annihilates the forms by construction); with any
/// numeric root the whole system is solved in least squares via the normal
/// equations, and the relative residual is reported.
pub fn solve_coefficients(
    forms: &[BinaryForm],
    roots: &RootSet,
) -> Result<(Coefficients, f64)> {
    let first = forms.first().ok_or(Error::EmptyInput)?;
    let d = first.degree();
    let k = roots.len();
    if k > d + 1 {
        return Err(Error::TooManyPoints { count: k, max: d + 1 });
    }
    for f in forms {
        if f.degree() != d {
            return Err(Error::DegreeMismatch { expected: d, got: f.degree() });
        }
    }
    if roots.all_exact() {
        let mut entries = vec![BigRational::zero(); (d + 1) * k];
        for (j, point) in roots.points().iter().enumerate() {
            for (i, v) in exact_power_column(point, d).into_iter().enumerate() {
                entries[i * k + j] = v;
            }
        }
        let a = RationalMatrix::new(d + 1, k, entries)?;
        let mut rows = Vec::with_capacity(forms.len());
        for f in forms {
            match solve_linear(&a, f.coeffs())? {
                LinearSolution::Solution(x) => rows.push(x),
                LinearSolution::Inconsistent { .. } => return Err(Error::InconsistentSystem),
            }
        }
        return Ok((Coefficients::Exact(rows), 0.0));
    }
    let cols: Vec<Vec<Complex64>> = roots
        .points()
        .iter()
        .map(|p| numeric_power_column(p, d))
        .collect();
    let mut gram = vec![vec![Complex64::new(0.0, 0.0); k]; k];
    for (i, ci) in cols.iter().enumerate() {
        for (j, cj) in cols.iter().enumerate() {
            gram[i][j] = ci.iter().zip(cj).map(|(x, y)| x.conj() * y).sum();
        }
    }
    let mut rows = Vec::with_capacity(forms.len());
    let mut residual = 0.0f64;
    for f in forms {
        let scale = f
            .coeffs()
            .iter()
            .map(|c| c.abs())
            .max()
            .unwrap()
            .max(BigRational::one());
        let fv: Vec<Complex64> = f
            .coeffs()
            .iter()
            .map(|c| Complex64::new((c / &scale).to_f64().unwrap_or(f64::NAN), 0.0))
            .collect();
        let rhs: Vec<Complex64> = cols
            .iter()
            .map(|cj| cj.iter().zip(&fv).map(|(x, y)| x.conj() * y).sum())
            .collect();
        let c = solve_complex(gram.clone(), rhs)?;
        let mut dev = 0.0f64;
        for i in 0..=d {
            let recon: Complex64 = cols.iter().zip(&c).map(|(col, cc)| col[i] * cc).sum();
            dev = dev.max((recon - fv[i]).norm());
        }
        residual = residual.max(dev);
        let s = scale.to_f64().unwrap_or(f64::NAN);
        rows.push(c.into_iter().map(|x| x * s).collect());
    }
    Ok((Coefficients::Numeric(rows), residual))
}

// ---------------------------------------------------------------------------
// Decomposition
// ---------------------------------------------------------------------------

/// A simultaneous decomposition f_i = sum_j c_ij l_j^d with l_j given by the
/// projective points under the [p : q] |-> p*x0 + q*x1 convention. The
/// decomposition is exact iff every point is exact, and then the residual is
/// identically zero.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub degree: usize,
    pub points: Vec<ProjectivePoint>,
    pub coefficients: Coefficients,
    pub reconstruction_residual: f64,
}

impl Decomposition {
    pub fn is_exact(&self) -> bool {
        self.coefficients.is_exact()
    }

    /// The linear forms of the decomposition when every point is exact.
    pub fn linear_forms(&self) -> Option<Vec<LinearForm>> {
        self.points.iter().map(|p| p.linear_form()).collect()
    }
}

/// Result of a verification pass.
#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub max_deviation: f64,
    pub exact: bool,
    pub pass: bool,
}

/// Recomputes sum_j c_ij l_j^d for every i and reports the largest deviation
/// from f_i: exact expansion (deviation must be identically zero) when the
/// decomposition is exact, floating expansion against `tol` otherwise.
pub fn verify_decomposition(
    forms: &[BinaryForm],
    dec: &Decomposition,
    tol: f64,
) -> Result<VerifyReport> {
    let d = dec.degree;
    for f in forms {
        if f.degree() != d {
            return Err(Error::DegreeMismatch { expected: d, got: f.degree() });
        }
    }
    match &dec.coefficients {
        Coefficients::Exact(rows) => {
            if rows.len() != forms.len() {
                return Err(Error::AmbientMismatch { expected: forms.len(), got: rows.len() });
            }
            let lin: Vec<LinearForm> = dec
                .points
                .iter()
                .map(|p| p.linear_form().ok_or(Error::ZeroPoint))
                .collect::<Result<_>>()?;
            let mut max_dev = BigRational::zero();
            for (f, row) in forms.iter().zip(rows) {
                let terms: Vec<(LinearForm, BigRational)> =
                    lin.iter().cloned().zip(row.iter().cloned()).collect();
                let recon = expand_power_sum(d, &terms)?;
                let diff = recon.sub(f)?;
                for c in diff.coeffs() {
                    let a = c.abs();
                    if a > max_dev {
                        max_dev = a;
                    }
                }
            }
            let pass = max_dev.is_zero();
            Ok(VerifyReport {
                max_deviation: max_dev.to_f64().unwrap_or(f64::NAN),
                exact: true,
                pass,
            })
        }
        Coefficients::Numeric(rows) => {
            if rows.len() != forms.len() {
                return Err(Error::AmbientMismatch { expected: forms.len(), got: rows.len() });
            }
            let cols: Vec<Vec<Complex64>> = dec
                .points
                .iter()
                .map(|p| numeric_power_column(p, d))
                .collect();
            let mut max_dev = 0.0f64;
            for (f, row) in forms.iter().zip(rows) {
                let scale = f
                    .coeffs()
                    .iter()
                    .map(|c| c.abs())
                    .max()
                    .unwrap()
                    .max(BigRational::one())
                    .to_f64()
                    .unwrap_or(f64::NAN);
                for i in 0..=d {
                    let recon: Complex64 =
                        cols.iter().zip(row).map(|(col, cc)| col[i] * cc).sum();
                    let target = f.coeff(i).to_f64().unwrap_or(f64::NAN);
                    max_dev = max_dev.max((recon - target).norm() / scale);
                }
            }
            Ok(VerifyReport { max_deviation: max_dev, exact: false, pass: max_dev < tol })
        }
    }
}

/// Outcome of a decomposition attempt at a fixed number of points.
#[derive(Clone, Debug)]
pub enum DecomposeOutcome {
    Found(Decomposition),
    /// No squarefree witness at this k; the slice data explains why.
    Empty(VspsResult),
}

/// Full pipeline: intersect orthogonal ideals at degree k, search for a
/// squarefree witness, extract its roots, solve for coefficients, verify.
/// `root_tol` gates the root residuals, `recon_tol` the final round trip on
/// the numeric path (the exact path must reproduce the forms identically).
pub fn decompose(
    forms: &[BinaryForm],
    k: usize,
    seed: u64,
    root_tol: f64,
    recon_tol: f64,
) -> Result<DecomposeOutcome> {
    let v = vsps(forms, k, seed)?;
    let Some(witness) = v.squarefree_witness.clone() else {
        return Ok(DecomposeOutcome::Empty(v));
    };
    let roots = binary_form_roots(&witness, root_tol)?;
    let (coefficients, _) = solve_coefficients(forms, &roots)?;
    let mut dec = Decomposition {
        degree: forms[0].degree(),
        points: roots.points().to_vec(),
        coefficients,
        reconstruction_residual: 0.0,
    };
    let report = verify_decomposition(forms, &dec, recon_tol)?;
    if !report.pass {
        return Err(Error::NonConvergence { iterations: ABERTH_MAX_ITER });
    }
    dec.reconstruction_residual = report.max_deviation;
    Ok(DecomposeOutcome::Found(dec))
}
