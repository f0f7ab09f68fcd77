//! Orthogonal ideals, inverse systems, and the graded spaces that parametrize
//! simultaneous power-sum decompositions.
//!
//! For independent forms f_1,...,f_r of degree d the degree-k piece of the
//! intersection of their orthogonal ideals is a linear subspace W of T_k; its
//! projectivization parametrizes apolar length-k subschemes, and the
//! squarefree elements of W are exactly the decompositions into k distinct
//! powers. Everything here is exact; only the witness search is randomized,
//! and it is deterministic given its seed.

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;

use crate::error::{Error, Result};
use crate::forms::{apolar_apply, form_gcd, rat, squarefree_test, BinaryForm, DualForm};
use crate::linalg::{intersect_subspaces, RationalMatrix, SubspaceBasis};

/// Which polynomial ring a graded piece lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    /// Forms in x0, x1.
    S,
    /// Dual forms in y0, y1.
    T,
}

/// A linear subspace of one graded piece S_k or T_k, in coefficient
/// coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSubspace {
    side: Side,
    degree: usize,
    basis: SubspaceBasis,
}

impl GradedSubspace {
    pub fn new(side: Side, degree: usize, basis: SubspaceBasis) -> Result<Self> {
        if basis.ambient_dim() != degree + 1 {
            return Err(Error::AmbientMismatch { expected: degree + 1, got: basis.ambient_dim() });
        }
        Ok(GradedSubspace { side, degree, basis })
    }

    pub fn full(side: Side, degree: usize) -> Self {
        GradedSubspace { side, degree, basis: SubspaceBasis::full(degree + 1) }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basis(&self) -> &SubspaceBasis {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    /// Dimension of the projectivization; -1 encodes the empty space.
    pub fn projective_dim(&self) -> i64 {
        self.basis.dim() as i64 - 1
    }

    /// Basis vectors as dual forms (T side).
    pub fn dual_basis(&self) -> Vec<DualForm> {
        debug_assert_eq!(self.side, Side::T);
        self.basis
            .vectors()
            .iter()
            .map(|v| DualForm::new(self.degree, v.clone()).expect("basis length matches degree"))
            .collect()
    }

    /// Basis vectors as binary forms (S side).
    pub fn form_basis(&self) -> Vec<BinaryForm> {
        debug_assert_eq!(self.side, Side::S);
        self.basis
            .vectors()
            .iter()
            .map(|v| BinaryForm::new(self.degree, v.clone()).expect("basis length matches degree"))
            .collect()
    }

    pub fn contains_dual(&self, op: &DualForm) -> Result<bool> {
        self.basis.contains(op.coeffs())
    }

    pub fn contains_form(&self, f: &BinaryForm) -> Result<bool> {
        self.basis.contains(f.coeffs())
    }
}

/// Matrix of the map T_k -> S_{d-k}, D |-> D o f, in the monomial bases:
/// (d-k+1) rows by (k+1) columns, whose kernel is the degree-k piece of the
/// orthogonal ideal of f.
pub fn catalecticant_matrix(f: &BinaryForm, k: usize) -> Result<RationalMatrix> {
    let d = f.degree();
    if k > d {
        return Err(Error::DegreeOutOfRange { k, max: d });
    }
    let rows = d - k + 1;
    let cols = k + 1;
    let mut entries = vec![BigRational::zero(); rows * cols];
    for p in 0..cols {
        let img = apolar_apply(&DualForm::monomial(k, p)?, f)?;
        for (j, c) in img.coeffs().iter().enumerate() {
            entries[j * cols + p] = c.clone();
        }
    }
    RationalMatrix::new(rows, cols, entries)
}

/// The degree-k piece of the orthogonal ideal of f, as a subspace of T_k.
/// Its dimension is always at least max(0, 2k - d).
pub fn orthogonal_component(f: &BinaryForm, k: usize) -> Result<GradedSubspace> {
    if f.is_zero() {
        return Err(Error::ZeroForm);
    }
    let kernel = catalecticant_matrix(f, k)?.kernel();
    GradedSubspace::new(Side::T, k, kernel)
}

/// The degree-d piece of the inverse system of a nonzero dual form of degree
/// k <= d; a subspace of S_d of dimension exactly k.
pub fn inverse_system_component(op: &DualForm, d: usize) -> Result<GradedSubspace> {
    if op.is_zero() {
        return Err(Error::ZeroForm);
    }
    let k = op.degree();
    if k > d {
        return Err(Error::DegreeOutOfRange { k, max: d });
    }
    let rows = d - k + 1;
    let cols = d + 1;
    let mut entries = vec![BigRational::zero(); rows * cols];
    for i in 0..cols {
        let img = apolar_apply(op, &BinaryForm::monomial(d, i)?)?;
        for (j, c) in img.coeffs().iter().enumerate() {
            entries[j * cols + i] = c.clone();
        }
    }
    let kernel = RationalMatrix::new(rows, cols, entries)?.kernel();
    GradedSubspace::new(Side::S, d, kernel)
}

/// How the squarefree witness search concluded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessStatus {
    /// The space itself is zero; there is nothing to search.
    EmptySpace,
    /// A squarefree element was found (and certified by `squarefree_test`).
    Found,
    /// No squarefree element exists; the reason is a proof.
    ProvenAbsent(AbsenceReason),
    /// The randomized search exhausted its budget without a find; absence is
    /// NOT proven for spaces of dimension three or more.
    Unresolved { trials: u32 },
}

/// Proofs of witness absence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbsenceReason {
    /// One-dimensional space whose generator has a repeated root.
    GeneratorRepeatedRoot,
    /// Every basis element is divisible by a common factor with a repeated
    /// root, hence so is every element of the space.
    CommonFactorRepeatedRoot,
    /// Two-dimensional space: the sweep hit more points of the pencil than
    /// the degree of the discriminant restricted to it, so the discriminant
    /// vanishes identically on the pencil.
    PencilSweepExhausted { tested: usize },
}

/// Default trial budget for the randomized witness search.
pub const DEFAULT_WITNESS_BUDGET: u32 = 512;

const WITNESS_BASE_BOUND: i64 = 10;
const WITNESS_ROUND: u32 = 16;

/// Searches a nonzero subspace of T_k for a squarefree element.
///
/// Strategy, in order: test the basis elements; reject outright when the gcd
/// of the basis has a repeated root (every element is then a multiple of it);
/// for one-dimensional spaces the generator test is decisive; for
/// two-dimensional spaces sweep 2k-1 integer points of the pencil, which
/// exceeds the degree of the discriminant restricted to the pencil and so
/// proves absence when every point fails; otherwise run a seeded randomized
/// search with integer coefficients in [-B, B], B starting at 10 and doubling
/// every few trials up to the budget.
pub fn find_squarefree_witness(
    space: &GradedSubspace,
    seed: u64,
    budget: u32,
) -> Result<(Option<DualForm>, WitnessStatus)> {
    let basis = space.dual_basis();
    if basis.is_empty() {
        return Err(Error::ZeroSubspace);
    }
    let k = space.degree();
    for b in &basis {
        if squarefree_test(b)? {
            return Ok((Some(b.normalized_primitive()), WitnessStatus::Found));
        }
    }
    if basis.len() == 1 {
        return Ok((None, WitnessStatus::ProvenAbsent(AbsenceReason::GeneratorRepeatedRoot)));
    }
    let mut gcd = basis[0].clone();
    for b in &basis[1..] {
        gcd = form_gcd(&gcd, b)?;
    }
    if gcd.degree() >= 1 && !squarefree_test(&gcd)? {
        return Ok((None, WitnessStatus::ProvenAbsent(AbsenceReason::CommonFactorRepeatedRoot)));
    }
    if basis.len() == 2 {
        // Pencil sweep b0 + t*b1 for t = 0..2k-2: the discriminant restricted
        // to the pencil has degree at most 2k-2, so 2k-1 failures force it to
        // vanish identically, and [0:1] was already tested above.
        let sweep = 2 * k - 1;
        for t in 0..sweep as i64 {
            let candidate = basis[0].add(&basis[1].scaled(&rat(t)))?;
            if candidate.is_zero() {
                continue;
            }
            if squarefree_test(&candidate)? {
                return Ok((Some(candidate.normalized_primitive()), WitnessStatus::Found));
            }
        }
        return Ok((
            None,
            WitnessStatus::ProvenAbsent(AbsenceReason::PencilSweepExhausted { tested: sweep }),
        ));
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut bound = WITNESS_BASE_BOUND;
    for trial in 0..budget {
        if trial > 0 && trial % WITNESS_ROUND == 0 {
            bound = bound.saturating_mul(2);
        }
        let mut candidate = DualForm::zero(k);
        for b in &basis {
            let c: i64 = rng.gen_range(-bound..=bound);
            if c != 0 {
                candidate = candidate.add(&b.scaled(&rat(c)))?;
            }
        }
        if candidate.is_zero() {
            continue;
        }
        if squarefree_test(&candidate)? {
            return Ok((Some(candidate.normalized_primitive()), WitnessStatus::Found));
        }
    }
    Ok((None, WitnessStatus::Unresolved { trials: budget }))
}

/// The degree-k slice of the decomposition problem for a system of forms.
#[derive(Clone, Debug)]
pub struct VspsResult {
    pub k: usize,
    /// The degree-k piece of the intersection of the orthogonal ideals.
    pub space: GradedSubspace,
    /// Projective dimension of the space; -1 means empty.
    pub projective_dim: i64,
    /// A squarefree element of the space, when one was found.
    pub squarefree_witness: Option<DualForm>,
    /// True iff a witness certifies that distinct-point decompositions exist.
    pub vssp_nonempty: bool,
    pub witness_status: WitnessStatus,
}

fn check_system(forms: &[BinaryForm]) -> Result<usize> {
    let first = forms.first().ok_or(Error::EmptyInput)?;
    let d = first.degree();
    for f in forms {
        if f.degree() != d {
            return Err(Error::DegreeMismatch { expected: d, got: f.degree() });
        }
        if f.is_zero() {
            return Err(Error::ZeroForm);
        }
    }
    let rows: Vec<Vec<BigRational>> = forms.iter().map(|f| f.coeffs().to_vec()).collect();
    if RationalMatrix::from_rows(rows)?.rank() != forms.len() {
        return Err(Error::DependentForms);
    }
    Ok(d)
}

/// Intersects the degree-k orthogonal components of an independent system
/// and searches the result for a squarefree witness.
///
/// k may run up to d + 1: every dual form of degree d + 1 annihilates all of
/// S_d, so that slice is the full space T_{d+1}.
pub fn vsps(forms: &[BinaryForm], k: usize, seed: u64) -> Result<VspsResult> {
    let d = check_system(forms)?;
    if k < 1 || k > d + 1 {
        return Err(Error::DegreeOutOfRange { k, max: d + 1 });
    }
    let space = if k == d + 1 {
        GradedSubspace::full(Side::T, k)
    } else {
        let components: Vec<SubspaceBasis> = forms
            .iter()
            .map(|f| orthogonal_component(f, k).map(|s| s.basis().clone()))
            .collect::<Result<_>>()?;
        GradedSubspace::new(Side::T, k, intersect_subspaces(&components)?)?
    };
    let projective_dim = space.projective_dim();
    let (squarefree_witness, witness_status) = if space.dim() == 0 {
        (None, WitnessStatus::EmptySpace)
    } else {
        find_squarefree_witness(&space, seed, DEFAULT_WITNESS_BUDGET)?
    };
    Ok(VspsResult {
        k,
        space,
        projective_dim,
        vssp_nonempty: squarefree_witness.is_some(),
        squarefree_witness,
        witness_status,
    })
}

/// Result of the minimal-k scan.
#[derive(Clone, Debug)]
pub struct KminResult {
    pub k: usize,
    pub witness: DualForm,
    /// True when the scan had to go past the degree: k = d + 1, where any
    /// d + 1 distinct points decompose every degree-d system.
    pub beyond_socle: bool,
    /// Slices k where the randomized search came up empty without an absence
    /// proof; when nonempty, `k` is only an upper bound on the true minimum.
    pub unresolved_ks: Vec<usize>,
}

/// Smallest k carrying a certified squarefree witness, scanning upward from 1
/// so that non-generic systems with small decompositions are found exactly.
pub fn compute_kmin(forms: &[BinaryForm], seed: u64) -> Result<KminResult> {
    let d = check_system(forms)?;
    let mut unresolved_ks = Vec::new();
    for k in 1..=d {
        let r = vsps(forms, k, seed)?;
        if let Some(witness) = r.squarefree_witness {
            return Ok(KminResult { k, witness, beyond_socle: false, unresolved_ks });
        }
        if let WitnessStatus::Unresolved { .. } = r.witness_status {
            unresolved_ks.push(k);
        }
    }
    // Degree d + 1: any squarefree dual form of that degree works; use the
    // product of the distinct factors (y0 - j*y1), j = 0..d.
    let mut witness = DualForm::from_integers(0, &[1]).unwrap();
    for j in 0..=d as i64 {
        witness = witness.mul(&DualForm::new(1, vec![BigRational::one(), rat(-j)]).unwrap());
    }
    debug_assert!(squarefree_test(&witness).unwrap_or(false));
    Ok(KminResult {
        k: d + 1,
        witness: witness.normalized_primitive(),
        beyond_socle: true,
        unresolved_ks,
    })
}

/// Closed form for the generic minimal k: the least k with
/// k > (r(d+1) - 1) / (r+1).
pub fn kmin_formula(d: usize, r: usize) -> Result<usize> {
    if d < 1 {
        return Err(Error::DegreeZero);
    }
    if r < 1 || r > d + 1 {
        return Err(Error::RankOutOfRange { r, max: d + 1 });
    }
    Ok((r * (d + 1) - 1) / (r + 1) + 1)
}

/// The residue r(d+1) mod (r+1) that controls the dimension at the minimal k.
pub fn kmin_epsilon(d: usize, r: usize) -> Result<usize> {
    kmin_formula(d, r)?;
    Ok((r * (d + 1)) % (r + 1))
}

/// Generic projective dimension k(r+1) - r(d+1) of the space of simultaneous
/// decompositions with k points; `None` marks the empty locus below the
/// minimal k. At the minimal k the value is cross-checked against the residue
/// form: r + 1 - epsilon when epsilon is nonzero, a single point otherwise.
pub fn vssp_dim_formula(d: usize, r: usize, k: usize) -> Result<Option<usize>> {
    let kmin = kmin_formula(d, r)?;
    if k < kmin {
        return Ok(None);
    }
    let dim = (k * (r + 1)) as i64 - (r * (d + 1)) as i64;
    debug_assert!(dim >= 0);
    if k == kmin {
        let eps = kmin_epsilon(d, r)?;
        let expected = if eps == 0 { 0 } else { (r + 1 - eps) as i64 };
        assert_eq!(dim, expected, "residue cross-check of the dimension formula");
    }
    Ok(Some(dim as usize))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{expand_power_sum, LinearForm};

    pub(crate) fn paper_pair() -> (BinaryForm, BinaryForm) {
        let x0 = LinearForm::from_integers(1, 0).unwrap();
        let x1 = LinearForm::from_integers(0, 1).unwrap();
        let x0_minus_x1 = LinearForm::from_integers(1, -1).unwrap();
        let f1 = expand_power_sum(
            5,
            &[(x0.clone(), rat(-2)), (x1.clone(), rat(2)), (x0_minus_x1.clone(), rat(1))],
        )
        .unwrap();
        let f2 = expand_power_sum(5, &[(x0, rat(-6)), (x1, rat(3)), (x0_minus_x1, rat(2))]).unwrap();
        (f1, f2)
    }

    #[test]
    fn catalecticant_of_circle_form() {
        let f = BinaryForm::from_integers(2, &[1, 0, 1]).unwrap();
        let m = catalecticant_matrix(&f, 1).unwrap();
        assert_eq!(m.rows(), 2);
        assert_eq!(m.cols(), 2);
        assert_eq!(*m.at(0, 0), rat(2));
        assert_eq!(*m.at(1, 0), rat(0));
        assert_eq!(*m.at(0, 1), rat(0));
        assert_eq!(*m.at(1, 1), rat(2));
    }

    #[test]
    fn catalecticant_of_pure_power_has_zero_column() {
        let f = BinaryForm::monomial(4, 0).unwrap();
        let m = catalecticant_matrix(&f, 1).unwrap();
        assert_eq!(*m.at(0, 0), rat(4));
        for j in 0..m.rows() {
            assert_eq!(*m.at(j, 1), rat(0));
        }
    }

    #[test]
    fn orthogonal_component_of_pure_power() {
        let f = BinaryForm::monomial(3, 0).unwrap();
        let w = orthogonal_component(&f, 1).unwrap();
        assert_eq!(w.dim(), 1);
        assert!(w.contains_dual(&DualForm::monomial(1, 1).unwrap()).unwrap());
    }

    #[test]
    fn quintic_pair_graded_dims() {
        let (f1, f2) = paper_pair();
        for (k, expected) in [(3usize, 1usize), (4, 2), (5, 4)] {
            let r = vsps(&[f1.clone(), f2.clone()], k, 7).unwrap();
            assert_eq!(r.space.dim(), expected, "slice k = {k}");
        }
        for k in 1..3 {
            let r = vsps(&[f1.clone(), f2.clone()], k, 7).unwrap();
            assert_eq!(r.space.dim(), 0, "slice k = {k} should be empty");
        }
    }

    #[test]
    fn quintic_pair_degree3_generator() {
        let (f1, f2) = paper_pair();
        let r = vsps(&[f1.clone(), f2.clone()], 3, 7).unwrap();
        let w = DualForm::from_integers(3, &[0, 1, 1, 0]).unwrap();
        assert!(r.space.contains_dual(&w).unwrap());
        assert_eq!(r.squarefree_witness.unwrap(), w);
        // the generator annihilates both forms
        assert!(apolar_apply(&w, &f1).unwrap().is_zero());
        assert!(apolar_apply(&w, &f2).unwrap().is_zero());
    }

    #[test]
    fn quintic_pair_kmin_is_three() {
        let (f1, f2) = paper_pair();
        let r = compute_kmin(&[f1, f2], 7).unwrap();
        assert_eq!(r.k, 3);
        assert!(!r.beyond_socle);
        assert!(r.unresolved_ks.is_empty());
    }

    #[test]
    fn circle_form_kmin_is_two() {
        let f = BinaryForm::from_integers(2, &[1, 0, 1]).unwrap();
        let r = compute_kmin(&[f], 3).unwrap();
        assert_eq!(r.k, 2);
        assert!(squarefree_test(&r.witness).unwrap());
    }

    #[test]
    fn inverse_system_dims() {
        let y1 = DualForm::monomial(1, 1).unwrap();
        let s = inverse_system_component(&y1, 3).unwrap();
        assert_eq!(s.dim(), 1);
        assert!(s.contains_form(&BinaryForm::monomial(3, 0).unwrap()).unwrap());

        let y0y1 = DualForm::from_integers(2, &[0, 1, 0]).unwrap();
        let s = inverse_system_component(&y0y1, 2).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains_form(&BinaryForm::monomial(2, 0).unwrap()).unwrap());
        assert!(s.contains_form(&BinaryForm::monomial(2, 2).unwrap()).unwrap());

        let hyp = DualForm::from_integers(2, &[1, 0, -1]).unwrap();
        let s = inverse_system_component(&hyp, 2).unwrap();
        assert_eq!(s.dim(), 2);
        assert!(s.contains_form(&BinaryForm::from_integers(2, &[1, 0, 1]).unwrap()).unwrap());
        assert!(s.contains_form(&BinaryForm::from_integers(2, &[0, 1, 0]).unwrap()).unwrap());
    }

    #[test]
    fn witness_search_examples() {
        // one-dimensional squarefree generator
        let w = DualForm::from_integers(3, &[0, 1, 1, 0]).unwrap();
        let space = GradedSubspace::new(
            Side::T,
            3,
            SubspaceBasis::span(4, vec![w.coeffs().to_vec()]).unwrap(),
        )
        .unwrap();
        let (found, status) = find_squarefree_witness(&space, 1, 64).unwrap();
        assert_eq!(found.unwrap(), w);
        assert_eq!(status, WitnessStatus::Found);

        // one-dimensional with a repeated factor: proven absent
        let s = DualForm::from_integers(2, &[1, 0, 0]).unwrap();
        let space = GradedSubspace::new(
            Side::T,
            2,
            SubspaceBasis::span(3, vec![s.coeffs().to_vec()]).unwrap(),
        )
        .unwrap();
        let (found, status) = find_squarefree_witness(&space, 1, 64).unwrap();
        assert!(found.is_none());
        assert_eq!(status, WitnessStatus::ProvenAbsent(AbsenceReason::GeneratorRepeatedRoot));

        // span{y0^2, y1^2}: the sweep finds y0^2 + y1^2
        let space = GradedSubspace::new(
            Side::T,
            2,
            SubspaceBasis::span(
                3,
                vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(0), rat(1)]],
            )
            .unwrap(),
        )
        .unwrap();
        let (found, _) = find_squarefree_witness(&space, 1, 64).unwrap();
        let found = found.unwrap();
        assert!(squarefree_test(&found).unwrap());
        assert_eq!(found, DualForm::from_integers(2, &[1, 0, 1]).unwrap());

        // multiples of y0^2 inside T_4: common factor with a repeated root
        let space = GradedSubspace::new(
            Side::T,
            4,
            SubspaceBasis::span(
                5,
                vec![
                    vec![rat(1), rat(0), rat(0), rat(0), rat(0)],
                    vec![rat(0), rat(1), rat(0), rat(0), rat(0)],
                    vec![rat(0), rat(0), rat(1), rat(0), rat(0)],
                ],
            )
            .unwrap(),
        )
        .unwrap();
        let (found, status) = find_squarefree_witness(&space, 1, 64).unwrap();
        assert!(found.is_none());
        assert_eq!(status, WitnessStatus::ProvenAbsent(AbsenceReason::CommonFactorRepeatedRoot));
    }

    #[test]
    fn witness_search_rejects_zero_space() {
        let space = GradedSubspace::new(Side::T, 2, SubspaceBasis::zero(3)).unwrap();
        assert!(find_squarefree_witness(&space, 0, 8).is_err());
    }

    #[test]
    fn dependent_forms_rejected() {
        let f = BinaryForm::from_integers(3, &[1, 2, 0, 1]).unwrap();
        let g = f.scaled(&rat(2));
        assert_eq!(vsps(&[f.clone(), g], 2, 0).unwrap_err(), Error::DependentForms);
        let h = BinaryForm::zero(3);
        assert_eq!(vsps(&[f, h], 2, 0).unwrap_err(), Error::ZeroForm);
    }

    #[test]
    fn formula_golden_values() {
        assert_eq!(kmin_formula(5, 2).unwrap(), 4);
        assert_eq!(kmin_formula(19, 3).unwrap(), 15);
        assert_eq!(kmin_formula(5, 1).unwrap(), 3);
        assert!(kmin_formula(5, 7).is_err());
        assert_eq!(vssp_dim_formula(19, 3, 16).unwrap(), Some(4));
        assert_eq!(vssp_dim_formula(5, 2, 5).unwrap(), Some(3));
        assert_eq!(vssp_dim_formula(5, 1, 3).unwrap(), Some(0));
        assert_eq!(vssp_dim_formula(5, 2, 3).unwrap(), None);
    }

    #[test]
    fn sylvester_formula_matches_half_degree() {
        for d in 1..30 {
            assert_eq!(kmin_formula(d, 1).unwrap(), d / 2 + 1);
        }
    }

    #[test]
    fn full_slice_past_socle_degree() {
        let f = BinaryForm::from_integers(2, &[1, 1, 1]).unwrap();
        let r = vsps(&[f], 3, 0).unwrap();
        assert_eq!(r.space.dim(), 4);
        assert!(r.vssp_nonempty);
    }
}
