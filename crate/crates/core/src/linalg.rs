//! Exact rational matrices: reduced row echelon form, rank, kernels, subspace
//! intersection and linear solving. Arithmetic is exact, so every identity
//! (M*v = 0 for kernel vectors, substitution of solutions) holds with no
//! tolerance. A separately coded fraction-free elimination lives in
//! [`bareiss`] and is used to cross-check rank and kernel results.

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense row-major matrix over the rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigRational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::EntryCount { rows, cols, got: entries.len() });
        }
        Ok(RationalMatrix { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        RationalMatrix { rows, cols, entries: vec![BigRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = RationalMatrix::zero(n, n);
        for i in 0..n {
            m.entries[i * n + i] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let nrows = rows.len();
        if nrows == 0 {
            return Err(Error::EmptyInput);
        }
        let ncols = rows[0].len();
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            if row.len() != ncols {
                return Err(Error::AmbientMismatch { expected: ncols, got: row.len() });
            }
            entries.extend(row);
        }
        RationalMatrix::new(nrows, ncols, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &BigRational {
        &self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigRational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Result<Vec<BigRational>> {
        if v.len() != self.cols {
            return Err(Error::AmbientMismatch { expected: self.cols, got: v.len() });
        }
        Ok((0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect())
    }

    pub fn transpose(&self) -> RationalMatrix {
        let mut entries = Vec::with_capacity(self.rows * self.cols);
        for c in 0..self.cols {
            for r in 0..self.rows {
                entries.push(self.at(r, c).clone());
            }
        }
        RationalMatrix { rows: self.cols, cols: self.rows, entries }
    }

    fn to_row_vecs(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    /// Reduced row echelon form together with the pivot column indices.
    pub fn rref(&self) -> (RationalMatrix, Vec<usize>) {
        let mut data = self.to_row_vecs();
        let pivots = rref_in_place(&mut data, self.cols);
        let entries = data.into_iter().flatten().collect();
        (
            RationalMatrix { rows: self.rows, cols: self.cols, entries },
            pivots,
        )
    }

    /// Exact rank via Gauss-Jordan elimination.
    pub fn rank(&self) -> usize {
        let mut data = self.to_row_vecs();
        rref_in_place(&mut data, self.cols).len()
    }

    /// Reduced-echelon basis of the right kernel {v : M*v = 0}.
    pub fn kernel(&self) -> SubspaceBasis {
        let mut data = self.to_row_vecs();
        let pivots = rref_in_place(&mut data, self.cols);
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in 0..self.cols {
            if is_pivot[free] {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (pi, &pc) in pivots.iter().enumerate() {
                v[pc] = -data[pi][free].clone();
            }
            vectors.push(v);
        }
        SubspaceBasis::span(self.cols, vectors).expect("kernel vectors have ambient length")
    }
}

/// Gauss-Jordan elimination in place; returns pivot columns in order.
/// Pivot choice is the first nonzero entry, which makes the result canonical.
fn rref_in_place(data: &mut [Vec<BigRational>], cols: usize) -> Vec<usize> {
    let rows = data.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| !data[i][c].is_zero()) else {
            continue;
        };
        data.swap(r, pr);
        let inv = data[r][c].clone();
        for x in data[r].iter_mut() {
            *x /= &inv;
        }
        for i in 0..rows {
            if i == r || data[i][c].is_zero() {
                continue;
            }
            let factor = data[i][c].clone();
            for j in 0..cols {
                let t = &factor * &data[r][j];
                data[i][j] -= t;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// A linear subspace given by a reduced-echelon basis, the canonical
/// representative used for exact subspace comparison.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vec<BigRational>>,
}

impl SubspaceBasis {
    /// Canonicalizes an arbitrary spanning set (dependencies and zero vectors
    /// are dropped).
    pub fn span(ambient_dim: usize, vectors: Vec<Vec<BigRational>>) -> Result<Self> {
        let mut data = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient_dim {
                return Err(Error::AmbientMismatch { expected: ambient_dim, got: v.len() });
            }
            data.push(v);
        }
        let kept = rref_in_place(&mut data, ambient_dim).len();
        data.truncate(kept);
        Ok(SubspaceBasis { ambient_dim, vectors: data })
    }

    /// Like [`SubspaceBasis::span`] but rejects dependent input.
    pub fn from_independent(ambient_dim: usize, vectors: Vec<Vec<BigRational>>) -> Result<Self> {
        let n = vectors.len();
        let basis = SubspaceBasis::span(ambient_dim, vectors)?;
        if basis.dim() != n {
            return Err(Error::DependentVectors);
        }
        Ok(basis)
    }

    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis { ambient_dim, vectors: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let id = RationalMatrix::identity(ambient_dim);
        SubspaceBasis { ambient_dim, vectors: id.to_row_vecs() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vec<BigRational>] {
        &self.vectors
    }

    pub fn to_matrix(&self) -> RationalMatrix {
        RationalMatrix {
            rows: self.vectors.len(),
            cols: self.ambient_dim,
            entries: self.vectors.iter().flatten().cloned().collect(),
        }
    }

    /// Membership by reduction against the echelon rows.
    pub fn contains(&self, v: &[BigRational]) -> Result<bool> {
        if v.len() != self.ambient_dim {
            return Err(Error::AmbientMismatch { expected: self.ambient_dim, got: v.len() });
        }
        let mut v = v.to_vec();
        for row in &self.vectors {
            let pc = row.iter().position(|x| !x.is_zero()).expect("no zero rows in basis");
            if v[pc].is_zero() {
                continue;
            }
            let factor = v[pc].clone();
            for j in 0..self.ambient_dim {
                let t = &factor * &row[j];
                v[j] -= t;
            }
        }
        Ok(v.iter().all(|x| x.is_zero()))
    }

    /// Basis of {w : <w, v> = 0 for all v in the subspace}.
    pub fn annihilator(&self) -> SubspaceBasis {
        if self.vectors.is_empty() {
            return SubspaceBasis::full(self.ambient_dim);
        }
        self.to_matrix().kernel()
    }
}

/// Intersection of subspaces of a common ambient space, computed by stacking
/// annihilators and taking one kernel.
pub fn intersect_subspaces(spaces: &[SubspaceBasis]) -> Result<SubspaceBasis> {
    let first = spaces.first().ok_or(Error::EmptyInput)?;
    let ambient = first.ambient_dim;
    for s in spaces {
        if s.ambient_dim != ambient {
            return Err(Error::AmbientMismatch { expected: ambient, got: s.ambient_dim });
        }
    }
    if spaces.len() == 1 {
        return Ok(first.clone());
    }
    let mut ann_rows = Vec::new();
    for s in spaces {
        ann_rows.extend(s.annihilator().vectors.into_iter());
    }
    if ann_rows.is_empty() {
        return Ok(SubspaceBasis::full(ambient));
    }
    let stacked = RationalMatrix::from_rows(ann_rows)?;
    Ok(stacked.kernel())
}

/// Outcome of solving A*x = b: inconsistency is a value, not a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    /// The canonical solution: free variables zero, pivot variables read off
    /// the reduced echelon form (so pivots sit at minimal column indices).
    Solution(Vec<BigRational>),
    /// Row of the reduced augmented system witnessing 0 = nonzero.
    Inconsistent { row: usize },
}

pub fn solve_linear(a: &RationalMatrix, b: &[BigRational]) -> Result<LinearSolution> {
    if b.len() != a.rows {
        return Err(Error::RhsLength { expected: a.rows, got: b.len() });
    }
    let mut data: Vec<Vec<BigRational>> = (0..a.rows)
        .map(|r| {
            let mut row = a.row(r).to_vec();
            row.push(b[r].clone());
            row
        })
        .collect();
    let pivots = rref_in_place(&mut data, a.cols + 1);
    if let Some(pi) = pivots.iter().position(|&c| c == a.cols) {
        return Ok(LinearSolution::Inconsistent { row: pi });
    }
    let mut x = vec![BigRational::zero(); a.cols];
    for (pi, &pc) in pivots.iter().enumerate() {
        x[pc] = data[pi][a.cols].clone();
    }
    Ok(LinearSolution::Solution(x))
}

pub mod bareiss {
    //! Fraction-free elimination over the integers: the one-step Bareiss
    //! scheme where every intermediate entry is a minor of the (row-scaled)
    //! input and each division is exact. Coded independently of the
    //! Gauss-Jordan path above so the two can serve as mutual oracles.

    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_rational::BigRational;
    use num_traits::{One, Zero};

    use super::{RationalMatrix, SubspaceBasis};

    /// Clears denominators row by row; row scaling changes neither rank nor
    /// kernel.
    fn integer_rows(m: &RationalMatrix) -> Vec<Vec<BigInt>> {
        (0..m.rows())
            .map(|r| {
                let row = m.row(r);
                let mut l = BigInt::one();
                for c in row {
                    l = l.lcm(c.denom());
                }
                row.iter().map(|c| c.numer() * (&l / c.denom())).collect()
            })
            .collect()
    }

    /// Fraction-free row echelon reduction; returns the reduced rows and the
    /// pivot columns.
    fn echelon(mut data: Vec<Vec<BigInt>>, cols: usize) -> (Vec<Vec<BigInt>>, Vec<usize>) {
        let rows = data.len();
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| !data[i][c].is_zero()) else {
                continue;
            };
            data.swap(r, pr);
            for i in r + 1..rows {
                for j in c + 1..cols {
                    let num = &data[r][c] * &data[i][j] - &data[i][c] * &data[r][j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    data[i][j] = q;
                }
                data[i][c] = BigInt::zero();
            }
            prev = data[r][c].clone();
            pivots.push(c);
            r += 1;
        }
        (data, pivots)
    }

    pub fn rank(m: &RationalMatrix) -> usize {
        let (_, pivots) = echelon(integer_rows(m), m.cols());
        pivots.len()
    }

    /// Kernel basis by back substitution on the fraction-free echelon form,
    /// canonicalized for comparison against the Gauss-Jordan route.
    pub fn kernel(m: &RationalMatrix) -> SubspaceBasis {
        let cols = m.cols();
        let (data, pivots) = echelon(integer_rows(m), cols);
        let mut is_pivot = vec![false; cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        let mut vectors = Vec::new();
        for free in 0..cols {
            if is_pivot[free] {
                continue;
            }
            let mut v: Vec<BigRational> = vec![BigRational::zero(); cols];
            v[free] = BigRational::one();
            for (pi, &pc) in pivots.iter().enumerate().rev() {
                let mut acc = BigRational::zero();
                for j in pc + 1..cols {
                    if data[pi][j].is_zero() || v[j].is_zero() {
                        continue;
                    }
                    acc += BigRational::from_integer(data[pi][j].clone()) * &v[j];
                }
                v[pc] = -acc / BigRational::from_integer(data[pi][pc].clone());
            }
            vectors.push(v);
        }
        SubspaceBasis::span(cols, vectors).expect("kernel vectors have ambient length")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::rat;

    fn m(rows: usize, cols: usize, e: &[i64]) -> RationalMatrix {
        RationalMatrix::new(rows, cols, e.iter().map(|&x| rat(x)).collect()).unwrap()
    }

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(RationalMatrix::identity(2).kernel().dim(), 0);
    }

    #[test]
    fn kernel_of_zero_matrix_is_full() {
        let k = RationalMatrix::zero(1, 3).kernel();
        assert_eq!(k.dim(), 3);
    }

    #[test]
    fn kernel_of_row_catalecticant() {
        // the 1x3 system (2, 0, 2): kernel holds (0,1,0) and (1,0,-1)
        let k = m(1, 3, &[2, 0, 2]).kernel();
        assert_eq!(k.dim(), 2);
        assert!(k.contains(&[rat(0), rat(1), rat(0)]).unwrap());
        assert!(k.contains(&[rat(1), rat(0), rat(-1)]).unwrap());
        assert!(!k.contains(&[rat(1), rat(0), rat(1)]).unwrap());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(RationalMatrix::identity(4).rank(), 4);
        assert_eq!(RationalMatrix::zero(3, 5).rank(), 0);
        // rank-1 outer product
        let outer = m(3, 3, &[2, 4, 6, 3, 6, 9, -1, -2, -3]);
        assert_eq!(outer.rank(), 1);
        assert_eq!(bareiss::rank(&outer), 1);
    }

    #[test]
    fn kernel_vectors_annihilate_exactly() {
        let a = m(2, 4, &[1, 2, 3, 4, 2, 4, 6, 9]);
        let k = a.kernel();
        assert_eq!(k.dim() + a.rank(), 4);
        for v in k.vectors() {
            assert!(a.mul_vec(v).unwrap().iter().all(|x| x.is_zero()));
        }
        assert_eq!(k, bareiss::kernel(&a));
    }

    #[test]
    fn intersect_self_is_identity() {
        let s = SubspaceBasis::span(3, vec![vec![rat(1), rat(0), rat(1)], vec![rat(0), rat(1), rat(1)]]).unwrap();
        let i = intersect_subspaces(&[s.clone(), s.clone()]).unwrap();
        assert_eq!(i, s);
    }

    #[test]
    fn intersect_transverse_lines_is_zero() {
        let a = SubspaceBasis::span(2, vec![vec![rat(1), rat(0)]]).unwrap();
        let b = SubspaceBasis::span(2, vec![vec![rat(1), rat(1)]]).unwrap();
        assert_eq!(intersect_subspaces(&[a, b]).unwrap().dim(), 0);
    }

    #[test]
    fn intersect_rejects_mismatched_ambient() {
        let a = SubspaceBasis::full(2);
        let b = SubspaceBasis::full(3);
        assert!(intersect_subspaces(&[a, b]).is_err());
    }

    #[test]
    fn solve_identity() {
        let b = vec![rat(3), rat(-5)];
        match solve_linear(&RationalMatrix::identity(2), &b).unwrap() {
            LinearSolution::Solution(x) => assert_eq!(x, b),
            _ => panic!("expected a solution"),
        }
    }

    #[test]
    fn solve_zero_matrix_inconsistent() {
        let a = RationalMatrix::zero(2, 2);
        match solve_linear(&a, &[rat(0), rat(1)]).unwrap() {
            LinearSolution::Inconsistent { .. } => {}
            _ => panic!("expected inconsistency"),
        }
    }

    #[test]
    fn solve_underdetermined_canonical() {
        // x + y = 2 with a free column: canonical solution zeroes the free var
        let a = m(1, 2, &[1, 1]);
        match solve_linear(&a, &[rat(2)]).unwrap() {
            LinearSolution::Solution(x) => assert_eq!(x, vec![rat(2), rat(0)]),
            _ => panic!("expected a solution"),
        }
    }

    #[test]
    fn from_independent_rejects_dependent() {
        let r = SubspaceBasis::from_independent(
            2,
            vec![vec![rat(1), rat(1)], vec![rat(2), rat(2)]],
        );
        assert!(r.is_err());
    }
}
