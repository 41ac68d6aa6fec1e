//! Dense matrices over a finite field.
//!
//! Entries are stored row-major as canonical element encodings (see
//! [`crate::gf`]). All elimination-based operations (rank, RREF, kernel,
//! solve, determinant) are deterministic: pivots are chosen as the first
//! usable row in top-to-bottom order, and kernel bases follow the standard
//! RREF construction with free columns taken in ascending order.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::gf::Field;

/// Errors from matrix construction and algorithms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    /// Supplied data length or operand dimensions do not match.
    ShapeMismatch { expected: usize, got: usize },
    /// An entry encoding lies outside the field.
    EntryOutOfRange { row: usize, col: usize, value: u64 },
    /// A square-matrix operation was applied to a non-square matrix.
    NotSquare { rows: usize, cols: usize },
    /// A linear system has no solution.
    Inconsistent,
    /// A column-subset search exceeded its subset budget.
    SearchCapExceeded { tested: u64, cap: u64 },
    /// Operands belong to different fields.
    FieldMismatch,
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::ShapeMismatch { expected, got } => {
                write!(f, "shape mismatch: expected {expected}, got {got}")
            }
            MatrixError::EntryOutOfRange { row, col, value } => {
                write!(f, "entry {value} at ({row}, {col}) is out of range for the field")
            }
            MatrixError::NotSquare { rows, cols } => {
                write!(f, "matrix is {rows}x{cols}, not square")
            }
            MatrixError::Inconsistent => write!(f, "linear system is inconsistent"),
            MatrixError::SearchCapExceeded { tested, cap } => {
                write!(f, "column-subset search exceeded its budget ({tested} > {cap} subsets)")
            }
            MatrixError::FieldMismatch => write!(f, "matrix operands belong to different fields"),
        }
    }
}

impl core::error::Error for MatrixError {}

/// Outcome of a minimum-dependent-column search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnDependence {
    /// A dependent column multiset was found; the witness is minimal in size.
    Dependent(DependenceWitness),
    /// Every subset of at most this many columns is linearly independent.
    IndependentUpTo(usize),
}

/// A concrete linear dependence among matrix columns: the named columns
/// combined with the paired nonzero coefficients sum to the zero vector.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DependenceWitness {
    /// Column indices, strictly ascending.
    pub columns: Vec<usize>,
    /// Coefficient encodings aligned with `columns`; all nonzero.
    pub coefficients: Vec<u64>,
}

impl DependenceWitness {
    /// Number of columns involved.
    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Expand to a length-`n` vector with the coefficients in place.
    pub fn as_vector(&self, n: usize) -> Vec<u64> {
        let mut v = vec![0u64; n];
        for (&c, &x) in self.columns.iter().zip(&self.coefficients) {
            v[c] = x;
        }
        v
    }
}

/// A dense matrix over a finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct GfMatrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl fmt::Debug for GfMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GfMatrix {}x{} over {:?} [", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        write!(f, "]")
    }
}

impl GfMatrix {
    /// Build from row-major data of length `rows * cols`.
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<u64>) -> Result<Self, MatrixError> {
        if data.len() != rows * cols {
            return Err(MatrixError::ShapeMismatch { expected: rows * cols, got: data.len() });
        }
        let size = field.size();
        for (i, &v) in data.iter().enumerate() {
            if v >= size {
                return Err(MatrixError::EntryOutOfRange { row: i / cols, col: i % cols, value: v });
            }
        }
        Ok(GfMatrix { field, rows, cols, data })
    }

    /// Build from a slice of equal-length rows.
    pub fn from_rows(field: &Field, rows: &[Vec<u64>]) -> Result<Self, MatrixError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(MatrixError::ShapeMismatch { expected: c, got: row.len() });
            }
            data.extend_from_slice(row);
        }
        GfMatrix::new(field.clone(), r, c, data)
    }

    /// All-zero matrix.
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        GfMatrix { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    /// Identity matrix of order n.
    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    #[inline]
    pub fn field(&self) -> &Field {
        &self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry encoding at (r, c). Panics when out of bounds.
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u64 {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        self.data[r * self.cols + c]
    }

    /// Overwrite the entry at (r, c). Panics when out of bounds or when the
    /// encoding is out of range.
    pub fn set(&mut self, r: usize, c: usize, value: u64) {
        assert!(r < self.rows && c < self.cols, "index ({r}, {c}) out of bounds");
        assert!(value < self.field.size(), "entry {value} out of range");
        self.data[r * self.cols + c] = value;
    }

    /// One row as a slice of encodings.
    #[inline]
    pub fn row(&self, r: usize) -> &[u64] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    /// All rows as owned vectors.
    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> GfMatrix {
        let mut data = vec![0u64; self.rows * self.cols];
        for r in 0..self.rows {
            for c in 0..self.cols {
                data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        GfMatrix { field: self.field.clone(), rows: self.cols, cols: self.rows, data }
    }

    /// Matrix product `self * rhs`.
    pub fn matmul(&self, rhs: &GfMatrix) -> Result<GfMatrix, MatrixError> {
        if self.field != rhs.field {
            return Err(MatrixError::FieldMismatch);
        }
        if self.cols != rhs.rows {
            return Err(MatrixError::ShapeMismatch { expected: self.cols, got: rhs.rows });
        }
        let f = &self.field;
        let mut out = GfMatrix::zeros(f, self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[r * self.cols + k];
                if a == 0 {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.data[k * rhs.cols + c];
                    if b == 0 {
                        continue;
                    }
                    let idx = r * rhs.cols + c;
                    out.data[idx] = f.add(out.data[idx], f.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Row-vector product `v * self` (v has one entry per matrix row).
    pub fn mul_row_vec(&self, v: &[u64]) -> Result<Vec<u64>, MatrixError> {
        if v.len() != self.rows {
            return Err(MatrixError::ShapeMismatch { expected: self.rows, got: v.len() });
        }
        let f = &self.field;
        let mut out = vec![0u64; self.cols];
        for (r, &vr) in v.iter().enumerate() {
            if vr == 0 {
                continue;
            }
            let row = self.row(r);
            for (o, &x) in out.iter_mut().zip(row) {
                if x != 0 {
                    *o = f.add(*o, f.mul(vr, x));
                }
            }
        }
        Ok(out)
    }

    /// Column-vector product `self * v` (v has one entry per matrix column).
    pub fn mul_col_vec(&self, v: &[u64]) -> Result<Vec<u64>, MatrixError> {
        if v.len() != self.cols {
            return Err(MatrixError::ShapeMismatch { expected: self.cols, got: v.len() });
        }
        let f = &self.field;
        let mut out = vec![0u64; self.rows];
        for (r, slot) in out.iter_mut().enumerate() {
            let row = self.row(r);
            let mut acc = 0u64;
            for (&x, &vx) in row.iter().zip(v) {
                if x != 0 && vx != 0 {
                    acc = f.add(acc, f.mul(x, vx));
                }
            }
            *slot = acc;
        }
        Ok(out)
    }

    /// Vertical concatenation: `self` on top of `below`.
    pub fn stack(&self, below: &GfMatrix) -> Result<GfMatrix, MatrixError> {
        if self.field != below.field {
            return Err(MatrixError::FieldMismatch);
        }
        if self.cols != below.cols {
            return Err(MatrixError::ShapeMismatch { expected: self.cols, got: below.cols });
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        Ok(GfMatrix {
            field: self.field.clone(),
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
        })
    }

    /// The submatrix keeping the named columns, in the given order.
    pub fn select_columns(&self, cols: &[usize]) -> GfMatrix {
        let mut data = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            let row = self.row(r);
            for &c in cols {
                data.push(row[c]);
            }
        }
        GfMatrix { field: self.field.clone(), rows: self.rows, cols: cols.len(), data }
    }

    /// Reduced row echelon form together with the pivot column of each
    /// nonzero row.
    pub fn rref_with_pivots(&self) -> (GfMatrix, Vec<usize>) {
        let f = self.field.clone();
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut rank = 0usize;
        for col in 0..m.cols {
            let Some(pr) = (rank..m.rows).find(|&r| m.data[r * m.cols + col] != 0) else {
                continue;
            };
            if pr != rank {
                for c in 0..m.cols {
                    m.data.swap(rank * m.cols + c, pr * m.cols + c);
                }
            }
            let inv = f.inv(m.data[rank * m.cols + col]).expect("pivot is nonzero");
            if inv != 1 {
                for c in 0..m.cols {
                    let idx = rank * m.cols + c;
                    m.data[idx] = f.mul(m.data[idx], inv);
                }
            }
            for r in 0..m.rows {
                if r == rank {
                    continue;
                }
                let factor = m.data[r * m.cols + col];
                if factor == 0 {
                    continue;
                }
                for c in 0..m.cols {
                    let sub = f.mul(factor, m.data[rank * m.cols + c]);
                    let idx = r * m.cols + c;
                    m.data[idx] = f.sub(m.data[idx], sub);
                }
            }
            pivots.push(col);
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        (m, pivots)
    }

    /// Reduced row echelon form.
    pub fn rref(&self) -> GfMatrix {
        self.rref_with_pivots().0
    }

    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        self.rref_with_pivots().1.len()
    }

    /// Determinant of a square matrix, as an element encoding.
    pub fn determinant(&self) -> Result<u64, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::NotSquare { rows: self.rows, cols: self.cols });
        }
        let f = self.field.clone();
        let n = self.rows;
        let mut m = self.data.clone();
        let mut det = 1u64;
        for col in 0..n {
            let Some(pr) = (col..n).find(|&r| m[r * n + col] != 0) else {
                return Ok(0);
            };
            if pr != col {
                for c in 0..n {
                    m.swap(col * n + c, pr * n + c);
                }
                det = f.neg(det);
            }
            let pv = m[col * n + col];
            det = f.mul(det, pv);
            let inv = f.inv(pv).expect("pivot is nonzero");
            for c in col..n {
                m[col * n + c] = f.mul(m[col * n + c], inv);
            }
            for r in col + 1..n {
                let factor = m[r * n + col];
                if factor == 0 {
                    continue;
                }
                for c in col..n {
                    let sub = f.mul(factor, m[col * n + c]);
                    m[r * n + c] = f.sub(m[r * n + c], sub);
                }
            }
        }
        Ok(det)
    }

    /// Solve `self * x = rhs` for one solution vector (free variables set to
    /// zero). Errors when the system is inconsistent.
    pub fn solve(&self, rhs: &[u64]) -> Result<Vec<u64>, MatrixError> {
        if rhs.len() != self.rows {
            return Err(MatrixError::ShapeMismatch { expected: self.rows, got: rhs.len() });
        }
        // Augment with the right-hand side and reduce.
        let f = &self.field;
        let mut aug = GfMatrix::zeros(f, self.rows, self.cols + 1);
        for (r, &b) in rhs.iter().enumerate() {
            aug.data[r * (self.cols + 1)..r * (self.cols + 1) + self.cols]
                .copy_from_slice(self.row(r));
            aug.data[r * (self.cols + 1) + self.cols] = b;
        }
        let (red, pivots) = aug.rref_with_pivots();
        // A pivot in the last (augmented) column marks inconsistency.
        if pivots.last() == Some(&self.cols) {
            return Err(MatrixError::Inconsistent);
        }
        let mut x = vec![0u64; self.cols];
        for (i, &pc) in pivots.iter().enumerate() {
            x[pc] = red.data[i * (self.cols + 1) + self.cols];
        }
        Ok(x)
    }

    /// Basis of the right null space `{v : self * v = 0}`, one basis vector
    /// per row of the returned matrix.
    ///
    /// Deterministic construction: for each free (non-pivot) column f in
    /// ascending order, the basis vector has 1 at f, 0 at the other free
    /// columns, and the negated RREF entries at the pivot columns.
    pub fn kernel_basis(&self) -> GfMatrix {
        let f = &self.field;
        let (red, pivots) = self.rref_with_pivots();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|&c| !is_pivot[c]).collect();
        let mut out = GfMatrix::zeros(f, free.len(), self.cols);
        for (k, &fc) in free.iter().enumerate() {
            out.data[k * self.cols + fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                let v = red.data[i * red.cols + fc];
                if v != 0 {
                    out.data[k * self.cols + pc] = f.neg(v);
                }
            }
        }
        out
    }

    /// Smallest linearly dependent set of columns, searched by subset size
    /// delta = 1, 2, ... up to `limit`, subsets of each size in lexicographic
    /// order. Returns the first dependent subset found together with
    /// nonzero combination coefficients, or `IndependentUpTo(limit)`.
    ///
    /// `max_subsets` bounds the total number of subsets examined; exceeding
    /// it is an explicit error, never a silent truncation.
    pub fn min_dependent_columns(
        &self,
        limit: usize,
        max_subsets: u64,
    ) -> Result<ColumnDependence, MatrixError> {
        let n = self.cols;
        let limit = limit.min(n);
        let mut tested = 0u64;
        for delta in 1..=limit {
            let mut subset: Vec<usize> = (0..delta).collect();
            loop {
                tested += 1;
                if tested > max_subsets {
                    return Err(MatrixError::SearchCapExceeded { tested, cap: max_subsets });
                }
                if let Some(coeffs) = self.dependence_of(&subset) {
                    return Ok(ColumnDependence::Dependent(DependenceWitness {
                        columns: subset,
                        coefficients: coeffs,
                    }));
                }
                if !advance_combination(&mut subset, n) {
                    break;
                }
            }
        }
        Ok(ColumnDependence::IndependentUpTo(limit))
    }

    /// If the given columns are dependent, return coefficients of a
    /// dependence in which every coefficient is nonzero (so the subset is
    /// minimal-by-inclusion for that witness); otherwise None.
    ///
    /// The coefficients are the first kernel basis vector of the submatrix,
    /// which is deterministic. A minimal dependent subset (as found by the
    /// size-ascending search) always yields all-nonzero coefficients.
    fn dependence_of(&self, cols: &[usize]) -> Option<Vec<u64>> {
        let sub = self.select_columns(cols);
        let ker = sub.kernel_basis();
        if ker.rows == 0 {
            return None;
        }
        let v = ker.row(0);
        if v.contains(&0) {
            // Dependent, but some column is unused; a smaller subset is
            // dependent, so the size-ascending caller already returned.
            // Reachable only through direct calls with non-minimal subsets.
            let used: Vec<u64> = v.iter().copied().filter(|&x| x != 0).collect();
            debug_assert!(!used.is_empty());
            return Some(v.to_vec());
        }
        Some(v.to_vec())
    }
}

/// Advance `subset` to the next lexicographic combination of `n` choose
/// `subset.len()`. Returns false when exhausted.
pub(crate) fn advance_combination(subset: &mut [usize], n: usize) -> bool {
    let k = subset.len();
    if k == 0 {
        return false;
    }
    let mut i = k;
    while i > 0 {
        i -= 1;
        if subset[i] < n - k + i {
            subset[i] += 1;
            for j in i + 1..k {
                subset[j] = subset[j - 1] + 1;
            }
            return true;
        }
    }
    false
}
