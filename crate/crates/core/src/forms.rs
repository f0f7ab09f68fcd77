//! Binary forms with exact rational coefficients, the differentiation action
//! of the dual variables, and squarefree/gcd analysis of dual forms.
//!
//! A degree-d form lives in S_d = K[x0,x1]_d and is stored as the coefficient
//! vector of the lex-ordered monomial basis x0^d, x0^(d-1)*x1, ..., x1^d.
//! Dual forms live in T_k = K[y0,y1]_k with the same convention and act on S
//! by differentiation.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Convenience constructor used throughout the crate and its tests.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub(crate) fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 1..=k {
        acc = acc * BigInt::from(n - k + i) / BigInt::from(i);
    }
    acc
}

pub(crate) fn factorial(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= BigInt::from(i);
    }
    acc
}

fn slice_is_zero(coeffs: &[BigRational]) -> bool {
    coeffs.iter().all(|c| c.is_zero())
}

/// Scales a coefficient vector to a primitive integer vector whose first
/// nonzero entry is positive. Zero vectors are returned unchanged.
pub(crate) fn normalize_primitive(coeffs: &mut [BigRational]) {
    let mut denom_lcm = BigInt::one();
    for c in coeffs.iter() {
        denom_lcm = denom_lcm.lcm(c.denom());
    }
    let mut numer_gcd = BigInt::zero();
    let scaled: Vec<BigInt> = coeffs
        .iter()
        .map(|c| c.numer() * (&denom_lcm / c.denom()))
        .collect();
    for n in &scaled {
        numer_gcd = numer_gcd.gcd(n);
    }
    if numer_gcd.is_zero() {
        return;
    }
    let sign = scaled
        .iter()
        .find(|n| !n.is_zero())
        .map(|n| if n.is_negative() { -1 } else { 1 })
        .unwrap_or(1);
    let scale = numer_gcd * BigInt::from(sign);
    for (c, n) in coeffs.iter_mut().zip(scaled) {
        *c = BigRational::from_integer(n / &scale);
    }
}

fn normalize_rational_pair(p: &BigRational, q: &BigRational) -> Option<(BigInt, BigInt)> {
    if p.is_zero() && q.is_zero() {
        return None;
    }
    let mut pair = [p.clone(), q.clone()];
    normalize_primitive(&mut pair);
    Some((pair[0].numer().clone(), pair[1].numer().clone()))
}

// ---------------------------------------------------------------------------
// Univariate helpers on dehomogenized dual forms.
//
// Coefficients are ascending in t, so u = [u0, u1, ...] stands for
// u0 + u1*t + ... ; a dual form splits as y1^m * g with g(1,0) != 0 and
// u(t) = g(t,1), which sends the root t back to the point [t : 1].
// ---------------------------------------------------------------------------

pub(crate) fn poly_trim(u: &mut Vec<BigRational>) {
    while u.last().map(|c| c.is_zero()).unwrap_or(false) {
        u.pop();
    }
}

pub(crate) fn poly_deriv(u: &[BigRational]) -> Vec<BigRational> {
    if u.len() <= 1 {
        return Vec::new();
    }
    u.iter()
        .enumerate()
        .skip(1)
        .map(|(j, c)| c * rat(j as i64))
        .collect()
}

fn int_trim(u: &mut Vec<BigInt>) {
    while u.last().map(|c| c.is_zero()).unwrap_or(false) {
        u.pop();
    }
}

/// Divides out the content; assumes a trimmed nonempty input.
fn int_primitive(mut u: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &u {
        g = g.gcd(c);
    }
    if !g.is_zero() && !g.is_one() {
        for c in &mut u {
            *c /= &g;
        }
    }
    u
}

fn to_int_primitive(u: &[BigRational]) -> Vec<BigInt> {
    let mut l = BigInt::one();
    for c in u {
        l = l.lcm(c.denom());
    }
    let mut ints: Vec<BigInt> = u.iter().map(|c| c.numer() * (&l / c.denom())).collect();
    int_trim(&mut ints);
    if ints.is_empty() {
        return ints;
    }
    int_primitive(ints)
}

/// Pseudo-remainder lc(b)^(deg a - deg b + 1) * a mod b over the integers.
fn int_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let lead = &b[db];
    let mut r: Vec<BigInt> = a.to_vec();
    while r.len() > db {
        let dr = r.len() - 1;
        let top = r[dr].clone();
        // r := lc(b)*r - lc(r)*t^(dr-db)*b, which drops the degree
        for c in r.iter_mut() {
            *c *= lead;
        }
        for j in 0..=db {
            let t = &top * &b[j];
            r[dr - db + j] -= t;
        }
        r.pop();
        int_trim(&mut r);
        if r.is_empty() {
            break;
        }
    }
    r
}

/// Gcd via a primitive pseudo-remainder sequence over the integers, returned
/// monic over the rationals (or empty for gcd(0,0)).
pub(crate) fn poly_gcd_monic(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut a = to_int_primitive(a);
    let mut b = to_int_primitive(b);
    while !b.is_empty() {
        let r = int_pseudo_rem(&a, &b);
        a = b;
        b = if r.is_empty() { r } else { int_primitive(r) };
    }
    let Some(lead) = a.last().cloned() else {
        return Vec::new();
    };
    a.into_iter()
        .map(|c| BigRational::new(c, lead.clone()))
        .collect()
}

// ---------------------------------------------------------------------------
// BinaryForm
// ---------------------------------------------------------------------------

/// A homogeneous form of the given degree in x0, x1 with exact rational
/// coefficients. The zero form is representable; operations that need a
/// nonzero input reject it explicitly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: usize,
    coeffs: Vec<BigRational>,
}

impl BinaryForm {
    pub fn new(degree: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::CoefficientCount { degree, got: coeffs.len() });
        }
        Ok(BinaryForm { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm { degree, coeffs: vec![BigRational::zero(); degree + 1] }
    }

    /// The basis monomial x0^(degree-i) * x1^i.
    pub fn monomial(degree: usize, i: usize) -> Result<Self> {
        if i > degree {
            return Err(Error::DegreeOutOfRange { k: i, max: degree });
        }
        let mut f = BinaryForm::zero(degree);
        f.coeffs[i] = BigRational::one();
        Ok(f)
    }

    pub fn from_integers(degree: usize, coeffs: &[i64]) -> Result<Self> {
        BinaryForm::new(degree, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> &BigRational {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        slice_is_zero(&self.coeffs)
    }

    pub fn add(&self, other: &BinaryForm) -> Result<BinaryForm> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: other.degree });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(BinaryForm { degree: self.degree, coeffs })
    }

    pub fn sub(&self, other: &BinaryForm) -> Result<BinaryForm> {
        self.add(&other.scaled(&-BigRational::one()))
    }

    pub fn scaled(&self, c: &BigRational) -> BinaryForm {
        BinaryForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_form(&self.coeffs, self.degree, "x0", "x1", f)
    }
}

// ---------------------------------------------------------------------------
// DualForm
// ---------------------------------------------------------------------------

/// A homogeneous form of the given degree in the dual variables y0, y1,
/// acting on binary forms by differentiation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualForm {
    degree: usize,
    coeffs: Vec<BigRational>,
}

impl DualForm {
    pub fn new(degree: usize, coeffs: Vec<BigRational>) -> Result<Self> {
        if coeffs.len() != degree + 1 {
            return Err(Error::CoefficientCount { degree, got: coeffs.len() });
        }
        Ok(DualForm { degree, coeffs })
    }

    pub fn zero(degree: usize) -> Self {
        DualForm { degree, coeffs: vec![BigRational::zero(); degree + 1] }
    }

    /// The basis monomial y0^(degree-p) * y1^p.
    pub fn monomial(degree: usize, p: usize) -> Result<Self> {
        if p > degree {
            return Err(Error::DegreeOutOfRange { k: p, max: degree });
        }
        let mut op = DualForm::zero(degree);
        op.coeffs[p] = BigRational::one();
        Ok(op)
    }

    pub fn from_integers(degree: usize, coeffs: &[i64]) -> Result<Self> {
        DualForm::new(degree, coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        slice_is_zero(&self.coeffs)
    }

    pub fn add(&self, other: &DualForm) -> Result<DualForm> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch { expected: self.degree, got: other.degree });
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(DualForm { degree: self.degree, coeffs })
    }

    pub fn scaled(&self, c: &BigRational) -> DualForm {
        DualForm {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Product of two dual forms (convolution of coefficient vectors).
    pub fn mul(&self, other: &DualForm) -> DualForm {
        let degree = self.degree + other.degree;
        let mut coeffs = vec![BigRational::zero(); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                let t = a * b;
                coeffs[i + j] += t;
            }
        }
        DualForm { degree, coeffs }
    }

    /// Scaled to primitive integer coefficients with positive first nonzero
    /// entry; the canonical representative of the projective class.
    pub fn normalized_primitive(&self) -> DualForm {
        let mut coeffs = self.coeffs.clone();
        normalize_primitive(&mut coeffs);
        DualForm { degree: self.degree, coeffs }
    }

    /// Splits the form as y1^m * g with g(1,0) != 0 and returns m together
    /// with u(t) = g(t,1) in ascending coefficients. Requires a nonzero form.
    pub(crate) fn split_y1_multiplicity(&self) -> (usize, Vec<BigRational>) {
        debug_assert!(!self.is_zero());
        let m = self.coeffs.iter().position(|c| !c.is_zero()).unwrap();
        let u: Vec<BigRational> = self.coeffs[m..].iter().rev().cloned().collect();
        (m, u)
    }

    /// Rebuilds y1^m * g from the dehomogenization u(t) = g(t,1).
    pub(crate) fn from_y1_multiplicity(m: usize, u: &[BigRational]) -> DualForm {
        debug_assert!(!u.is_empty() && !u.last().unwrap().is_zero());
        let degree = m + u.len() - 1;
        let mut coeffs = vec![BigRational::zero(); m];
        coeffs.extend(u.iter().rev().cloned());
        DualForm { degree, coeffs }
    }

    /// Evaluates at a complex point; coefficients are converted to f64, so
    /// callers should normalize first when magnitudes matter.
    pub fn eval_complex(&self, y0: Complex64, y1: Complex64) -> Complex64 {
        let k = self.degree;
        let mut acc = Complex64::new(0.0, 0.0);
        for (p, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let c = c.to_f64().unwrap_or(f64::NAN);
            acc += c * y0.powu((k - p) as u32) * y1.powu(p as u32);
        }
        acc
    }
}

impl fmt::Display for DualForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        format_form(&self.coeffs, self.degree, "y0", "y1", f)
    }
}

// ---------------------------------------------------------------------------
// LinearForm and ProjectivePoint
// ---------------------------------------------------------------------------

/// The linear form a*x0 + b*x1, stored as a primitive integer pair with
/// positive first nonzero entry.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearForm {
    a: BigInt,
    b: BigInt,
}

impl LinearForm {
    pub fn new(a: BigRational, b: BigRational) -> Result<Self> {
        let (a, b) = normalize_rational_pair(&a, &b).ok_or(Error::ZeroLinearForm)?;
        Ok(LinearForm { a, b })
    }

    pub fn from_integers(a: i64, b: i64) -> Result<Self> {
        LinearForm::new(rat(a), rat(b))
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    /// The d-th power as a binary form.
    pub fn power(&self, d: usize) -> Result<BinaryForm> {
        expand_power_sum(d, &[(self.clone(), BigRational::one())])
    }

    /// The degree-1 dual form b*y0 - a*y1 annihilating every power of self.
    pub fn annihilator(&self) -> DualForm {
        DualForm {
            degree: 1,
            coeffs: vec![
                BigRational::from_integer(self.b.clone()),
                BigRational::from_integer(-self.a.clone()),
            ],
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = vec![
            BigRational::from_integer(self.a.clone()),
            BigRational::from_integer(self.b.clone()),
        ];
        format_form(&coeffs, 1, "x0", "x1", f)
    }
}

const NUMERIC_ZERO_EPS: f64 = 1e-12;

/// A point [p : q] of the projective line, exact or numeric. Exact points are
/// stored as primitive integer pairs with positive first nonzero entry;
/// numeric points have unit norm and a real positive first nonzero coordinate.
#[derive(Clone, Debug, PartialEq)]
pub enum ProjectivePoint {
    Exact { p: BigInt, q: BigInt },
    Numeric { p: Complex64, q: Complex64 },
}

impl ProjectivePoint {
    pub fn exact(p: BigRational, q: BigRational) -> Result<Self> {
        let (p, q) = normalize_rational_pair(&p, &q).ok_or(Error::ZeroPoint)?;
        Ok(ProjectivePoint::Exact { p, q })
    }

    pub fn exact_from_integers(p: i64, q: i64) -> Result<Self> {
        ProjectivePoint::exact(rat(p), rat(q))
    }

    pub fn numeric(p: Complex64, q: Complex64) -> Result<Self> {
        let norm = (p.norm_sqr() + q.norm_sqr()).sqrt();
        if !(norm > NUMERIC_ZERO_EPS) {
            return Err(Error::ZeroPoint);
        }
        let mut p = p / norm;
        let mut q = q / norm;
        let anchor = if p.norm() > NUMERIC_ZERO_EPS { p } else { q };
        let phase = anchor.conj() / anchor.norm();
        p *= phase;
        q *= phase;
        Ok(ProjectivePoint::Numeric { p, q })
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ProjectivePoint::Exact { .. })
    }

    /// Unit-norm complex coordinates (exact points are converted).
    pub fn as_complex(&self) -> (Complex64, Complex64) {
        match self {
            ProjectivePoint::Exact { p, q } => {
                let p = p.to_f64().unwrap_or(f64::NAN);
                let q = q.to_f64().unwrap_or(f64::NAN);
                let norm = (p * p + q * q).sqrt();
                (Complex64::new(p / norm, 0.0), Complex64::new(q / norm, 0.0))
            }
            ProjectivePoint::Numeric { p, q } => (*p, *q),
        }
    }

    /// The linear form p*x0 + q*x1 attached to an exact point.
    pub fn linear_form(&self) -> Option<LinearForm> {
        match self {
            ProjectivePoint::Exact { p, q } => Some(LinearForm { a: p.clone(), b: q.clone() }),
            ProjectivePoint::Numeric { .. } => None,
        }
    }

    /// Scale-invariant distance |p1*q2 - q1*p2| between unit representatives.
    pub fn chordal_distance(&self, other: &ProjectivePoint) -> f64 {
        if let (ProjectivePoint::Exact { p: p1, q: q1 }, ProjectivePoint::Exact { p: p2, q: q2 }) =
            (self, other)
        {
            if p1 * q2 == q1 * p2 {
                return 0.0;
            }
        }
        let (a, b) = self.as_complex();
        let (c, d) = other.as_complex();
        (a * d - b * c).norm()
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Exact { p, q } => write!(f, "[{p} : {q}]"),
            ProjectivePoint::Numeric { p, q } => {
                write!(f, "[{:.6}{:+.6}i : {:.6}{:+.6}i]", p.re, p.im, q.re, q.im)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Expands sum_j c_j * (a_j*x0 + b_j*x1)^d exactly.
pub fn expand_power_sum(degree: usize, terms: &[(LinearForm, BigRational)]) -> Result<BinaryForm> {
    if degree == 0 {
        return Err(Error::DegreeZero);
    }
    let mut coeffs = vec![BigRational::zero(); degree + 1];
    for (l, c) in terms {
        let a = BigRational::from_integer(l.a.clone());
        let b = BigRational::from_integer(l.b.clone());
        let mut a_pow = vec![BigRational::one()];
        let mut b_pow = vec![BigRational::one()];
        for i in 1..=degree {
            a_pow.push(&a_pow[i - 1] * &a);
            b_pow.push(&b_pow[i - 1] * &b);
        }
        for i in 0..=degree {
            let term = c
                * BigRational::from_integer(binomial(degree, i))
                * &a_pow[degree - i]
                * &b_pow[i];
            coeffs[i] += term;
        }
    }
    BinaryForm::new(degree, coeffs)
}

/// Applies a degree-k dual form to a degree-d binary form by differentiation,
/// producing a form of degree d - k. On basis monomials,
/// y0^p * y1^q acts on x0^(d-i) * x1^i as p!q! * C(d-i,p) * C(i,q) times the
/// reduced monomial when the exponents allow, and as zero otherwise.
pub fn apolar_apply(op: &DualForm, f: &BinaryForm) -> Result<BinaryForm> {
    let k = op.degree;
    let d = f.degree;
    if k > d {
        return Err(Error::DegreeOutOfRange { k, max: d });
    }
    let out_degree = d - k;
    let mut out = vec![BigRational::zero(); out_degree + 1];
    for (j, slot) in out.iter_mut().enumerate() {
        let mut acc = BigRational::zero();
        for p in 0..=k {
            let cd = &op.coeffs[p];
            let cf = &f.coeffs[j + p];
            if cd.is_zero() || cf.is_zero() {
                continue;
            }
            let weight = factorial(k - p)
                * factorial(p)
                * binomial(d - j - p, k - p)
                * binomial(j + p, p);
            acc += cd * cf * BigRational::from_integer(weight);
        }
        *slot = acc;
    }
    BinaryForm::new(out_degree, out)
}

/// True iff the form has `degree` distinct projective roots: the multiplicity
/// of [1:0] is at most one and the dehomogenization is coprime to its
/// derivative.
pub fn squarefree_test(op: &DualForm) -> Result<bool> {
    if op.is_zero() {
        return Err(Error::ZeroForm);
    }
    let (m, u) = op.split_y1_multiplicity();
    if m > 1 {
        return Ok(false);
    }
    let g = poly_gcd_monic(&u, &poly_deriv(&u));
    Ok(g.len() <= 1)
}

/// Greatest common divisor of two dual forms, normalized to primitive integer
/// coefficients with positive first nonzero entry.
pub fn form_gcd(a: &DualForm, b: &DualForm) -> Result<DualForm> {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return Err(Error::ZeroForm),
        (true, false) => return Ok(b.normalized_primitive()),
        (false, true) => return Ok(a.normalized_primitive()),
        (false, false) => {}
    }
    let (ma, ua) = a.split_y1_multiplicity();
    let (mb, ub) = b.split_y1_multiplicity();
    let g = poly_gcd_monic(&ua, &ub);
    let out = DualForm::from_y1_multiplicity(ma.min(mb), &g);
    Ok(out.normalized_primitive())
}

fn format_form(
    coeffs: &[BigRational],
    degree: usize,
    v0: &str,
    v1: &str,
    f: &mut fmt::Formatter<'_>,
) -> fmt::Result {
    if slice_is_zero(coeffs) {
        return write!(f, "0");
    }
    let mut first = true;
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        let e0 = degree - i;
        let e1 = i;
        let mut printed_coeff = false;
        if !mag.is_one() || (e0 == 0 && e1 == 0) {
            write!(f, "{mag}")?;
            printed_coeff = true;
        }
        for (var, e) in [(v0, e0), (v1, e1)] {
            if e == 0 {
                continue;
            }
            if printed_coeff {
                write!(f, "*")?;
            }
            printed_coeff = true;
            if e == 1 {
                write!(f, "{var}")?;
            } else {
                write!(f, "{var}^{e}")?;
            }
        }
    }
    Ok(())
}
