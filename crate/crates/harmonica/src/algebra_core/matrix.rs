use std::fmt;

use super::{AlgebraError, Ring, UnitRing};

/// A `rows × cols` matrix over a (generally noncommutative) algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<R> {
    rows: usize,
    cols: usize,
    entries: Vec<R>,
}

impl<R: Ring> Matrix<R> {
    pub fn new(rows: usize, cols: usize, entries: Vec<R>) -> Result<Self, AlgebraError> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(AlgebraError::Dimension(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn from_rows(rows: Vec<Vec<R>>) -> Result<Self, AlgebraError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(AlgebraError::Dimension("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Panics on a zero dimension.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> R) -> Self {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn identity(n: usize, one: &R) -> Self {
        let zero = one.zero_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn zeros(rows: usize, cols: usize, sample: &R) -> Self {
        let zero = sample.zero_like();
        Matrix::from_fn(rows, cols, |_, _| zero.clone())
    }

    pub fn diagonal(diag: &[R]) -> Self {
        let zero = diag[0].zero_like();
        Matrix::from_fn(diag.len(), diag.len(), |i, j| {
            if i == j {
                diag[i].clone()
            } else {
                zero.clone()
            }
        })
    }

    pub fn column(entries: Vec<R>) -> Result<Self, AlgebraError> {
        let n = entries.len();
        Matrix::new(n, 1, entries)
    }

    pub fn row(entries: Vec<R>) -> Result<Self, AlgebraError> {
        let n = entries.len();
        Matrix::new(1, n, entries)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &R {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: R) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn entries(&self) -> &[R] {
        &self.entries
    }

    /// Entries with their positions, row-major.
    pub fn indexed(&self) -> impl Iterator<Item = (usize, usize, &R)> {
        let cols = self.cols;
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, e)| (k / cols, k % cols, e))
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> Matrix<S> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn try_map<S: Ring, E>(&self, f: impl Fn(&R) -> Result<S, E>) -> Result<Matrix<S>, E> {
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<_, _>>()?,
        })
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.plus(b))
                .collect(),
        })
    }

    /// Ordinary product; inside each entry the left factor comes from `self`.
    pub fn checked_mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        if self.cols != other.rows {
            return Err(AlgebraError::Dimension(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = self.get(i, 0).times(other.get(0, j));
                for k in 1..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = acc.plus(&a.times(b));
                }
                entries.push(acc);
            }
        }
        Ok(Matrix {
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn scale_entries(&self, c: &super::Rational) -> Self {
        self.map(|e| e.scaled(c))
    }

    /// `D⁻¹·M·D` for a diagonal `D = diag(d)` given with its inverse.
    pub fn conjugate_by_diagonal(&self, d: &[R], d_inv: &[R]) -> Self {
        Matrix::from_fn(self.rows, self.cols, |i, j| d_inv[i].times(self.get(i, j)).times(&d[j]))
    }

    /// Positions where the two matrices differ.
    pub fn differing_entries(&self, other: &Self) -> Vec<(usize, usize)> {
        if self.rows != other.rows || self.cols != other.cols {
            return vec![(usize::MAX, usize::MAX)];
        }
        self.indexed()
            .filter(|(i, j, e)| *e != other.get(*i, *j))
            .map(|(i, j, _)| (i, j))
            .collect()
    }

    /// The single entry of a 1×1 matrix.
    pub fn scalar(&self) -> Option<&R> {
        if self.rows == 1 && self.cols == 1 {
            Some(&self.entries[0])
        } else {
            None
        }
    }

    pub fn is_zero_matrix(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }
}

impl<R: UnitRing> Matrix<R> {
    /// Two-sided inverse by Gauss–Jordan elimination using left row
    /// operations, choosing at each step any remaining entry that is a unit.
    ///
    /// Fails when no unit pivot is available; the result is verified before
    /// it is returned.
    pub fn inverse_by_unit_pivots(&self) -> Result<Self, AlgebraError> {
        let n = self.rows;
        if n != self.cols {
            return Err(AlgebraError::Dimension("inverse of a non-square matrix".into()));
        }
        let one = self.get(0, 0).one_like();
        let mut work = self.clone();
        let mut acc = Matrix::identity(n, &one);
        let mut row_used = vec![false; n];
        let mut col_used = vec![false; n];
        let mut pivot_col = vec![0usize; n];
        for _ in 0..n {
            let pivot = (0..n)
                .filter(|&r| !row_used[r])
                .flat_map(|r| (0..n).filter(|&c| !col_used[c]).map(move |c| (r, c)))
                .find_map(|(r, c)| work.get(r, c).unit_inverse().map(|inv| (r, c, inv)));
            let (r, c, inv) = pivot.ok_or(AlgebraError::NoUnitPivot)?;
            for j in 0..n {
                work.set(r, j, inv.times(work.get(r, j)));
                acc.set(r, j, inv.times(acc.get(r, j)));
            }
            for other in 0..n {
                if other == r || work.get(other, c).is_zero() {
                    continue;
                }
                let factor = work.get(other, c).clone();
                for j in 0..n {
                    let w = work.get(other, j).minus(&factor.times(work.get(r, j)));
                    work.set(other, j, w);
                    let a = acc.get(other, j).minus(&factor.times(acc.get(r, j)));
                    acc.set(other, j, a);
                }
            }
            row_used[r] = true;
            col_used[c] = true;
            pivot_col[r] = c;
        }
        // work is now the permutation with a 1 at (r, pivot_col[r]); undo it.
        let mut inverse = acc.clone();
        for (r, &c) in pivot_col.iter().enumerate() {
            for j in 0..n {
                inverse.set(c, j, acc.get(r, j).clone());
            }
        }
        let id = Matrix::identity(n, &one);
        if self.checked_mul(&inverse)? != id || inverse.checked_mul(self)? != id {
            return Err(AlgebraError::NoUnitPivot);
        }
        Ok(inverse)
    }
}

/// Applies an algebra (anti)morphism entry by entry.
pub fn matrix_map<R: Ring, S: Ring, E>(f: impl Fn(&R) -> Result<S, E>, m: &Matrix<R>) -> Result<Matrix<S>, E> {
    m.try_map(f)
}

impl<R: Ring> Ring for Matrix<R> {
    fn zero_like(&self) -> Self {
        Matrix::zeros(self.rows, self.cols, &self.entries[0])
    }
    fn one_like(&self) -> Self {
        Matrix::identity(self.rows, &self.entries[0].one_like())
    }
    fn is_zero(&self) -> bool {
        self.is_zero_matrix()
    }
    fn plus(&self, other: &Self) -> Self {
        self.checked_add(other).expect("matrix dimensions agree")
    }
    fn negated(&self) -> Self {
        self.map(|e| e.negated())
    }
    fn times(&self, other: &Self) -> Self {
        self.checked_mul(other).expect("matrix dimensions agree")
    }
    fn scaled(&self, c: &super::Rational) -> Self {
        self.scale_entries(c)
    }
}

impl<R: Ring> fmt::Display for Matrix<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::expr::parse_group;
    use crate::algebra_core::{GroupAlgebraElement, GroupAlphabet};

    fn vb2(s: &str) -> GroupAlgebraElement {
        parse_group(GroupAlphabet::F2Sq, s).unwrap()
    }

    fn m3(rows: [[&str; 3]; 3]) -> Matrix<GroupAlgebraElement> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|s| vb2(s)).collect()).collect()).unwrap()
    }

    #[test]
    fn identity_is_neutral() {
        let m = m3([["X0", "1 - Y1", "0"], ["X1 Y0", "2", "Y1^-1"], ["0", "0", "X0 - X1"]]);
        let id = Matrix::identity(3, &vb2("1"));
        assert_eq!(id.checked_mul(&m).unwrap(), m);
        assert_eq!(m.checked_mul(&id).unwrap(), m);
    }

    #[test]
    fn outer_product_shape() {
        let col = Matrix::column(vec![vb2("X0"), vb2("X1"), vb2("1")]).unwrap();
        let row = Matrix::row(vec![vb2("Y0"), vb2("0"), vb2("Y1")]).unwrap();
        let p = col.checked_mul(&row).unwrap();
        assert_eq!((p.rows(), p.cols()), (3, 3));
        assert_eq!(p.get(1, 2), &vb2("X1 Y1"));
    }

    #[test]
    fn diagonal_conjugation_matches_entrywise_formula() {
        let d = [vb2("Y1"), vb2("X1"), vb2("X0 X1")];
        let d_inv: Vec<_> = d.iter().map(|x| x.unit_inverse().unwrap()).collect();
        let m = m3([["X0", "1 - Y1", "0"], ["X1 Y0", "2", "Y1^-1"], ["0", "X0", "X0 - X1"]]);
        let conj = Matrix::diagonal(&d_inv)
            .checked_mul(&m)
            .unwrap()
            .checked_mul(&Matrix::diagonal(&d))
            .unwrap();
        assert_eq!(conj, m.conjugate_by_diagonal(&d, &d_inv));
        assert_eq!(conj.get(2, 1), &(&(&d_inv[2] * m.get(2, 1)) * &d[1]));
    }

    #[test]
    fn dimension_mismatch_is_an_error() {
        let a = Matrix::row(vec![vb2("1"), vb2("X0")]).unwrap();
        assert!(a.checked_mul(&a).is_err());
        assert!(Matrix::<GroupAlgebraElement>::new(0, 1, vec![]).is_err());
    }

    #[test]
    fn unit_pivot_inverse_of_triangular_matrix() {
        let m = m3([["X0", "1 - Y1", "0"], ["0", "Y1", "X1"], ["0", "0", "1"]]);
        let inv = m.inverse_by_unit_pivots().unwrap();
        assert_eq!(m.checked_mul(&inv).unwrap(), Matrix::identity(3, &vb2("1")));
    }

    #[test]
    fn matrix_map_applies_entrywise() {
        let a = parse_group(GroupAlphabet::F2, "X0").unwrap();
        let b = parse_group(GroupAlphabet::F2, "X1").unwrap();
        let m = Matrix::row(vec![a, b]).unwrap();
        let mapped = matrix_map(|x: &GroupAlgebraElement| Ok::<_, ()>(x.op()), &m).unwrap();
        assert_eq!(mapped.to_string(), "[[X0^-1, X1^-1]]");
    }
}
