//! Dense matrices over a [`Field`] and exact Gauss–Jordan elimination.

use std::fmt;
use std::ops::{Index, IndexMut};

use crate::error::{JnfError, Result};
use crate::field::{Field, FieldElement};

/// A column vector.
pub type Vector = Vec<FieldElement>;

/// Row-major dense matrix. All entries belong to `field`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Elementary row operation recorded by [`Matrix::rref_with_ops`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowOp {
    Swap(usize, usize),
    /// Multiply a row by a nonzero scalar.
    Scale(usize, FieldElement),
    /// `row[target] += factor * row[source]`.
    AddMultiple { target: usize, source: usize, factor: FieldElement },
}

impl RowOp {
    pub fn apply(&self, m: &mut Matrix) {
        match self {
            RowOp::Swap(a, b) => m.swap_rows(*a, *b),
            RowOp::Scale(r, c) => {
                for j in 0..m.cols {
                    m[(*r, j)] = &m[(*r, j)] * c;
                }
            }
            RowOp::AddMultiple { target, source, factor } => m.add_row_multiple(*target, *source, factor),
        }
    }
}

/// Result of [`Matrix::rref_with_ops`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: Matrix,
    pub ops: Vec<RowOp>,
    pub rank: usize,
    /// Pivot column of each of the first `rank` rows.
    pub pivot_cols: Vec<usize>,
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Matrix> {
        if rows * cols != data.len() {
            return Err(JnfError::Dimension(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|e| e.field() != field) {
            return Err(JnfError::FieldMismatch(format!("entry in {} for a matrix over {field}", bad.field())));
        }
        Ok(Matrix { field, rows, cols, data })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Matrix {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: Field, n: usize) -> Matrix {
        Matrix::scalar(&field.one(), n)
    }

    /// `c * I_n`.
    pub fn scalar(c: &FieldElement, n: usize) -> Matrix {
        let mut m = Matrix::zeros(c.field(), n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn from_rows(field: Field, rows: Vec<Vec<FieldElement>>) -> Result<Matrix> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(JnfError::Dimension("ragged rows".into()));
        }
        Matrix::new(field, r, c, rows.into_iter().flatten().collect())
    }

    pub fn from_i64_rows(field: Field, rows: &[&[i64]]) -> Matrix {
        let data = rows.iter().flat_map(|r| r.iter().map(|&v| field.from_i64(v))).collect();
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::new(field, rows.len(), cols, data).expect("rectangular integer rows")
    }

    /// Parses rows of `a/b` or integer literals.
    pub fn from_str_rows(field: Field, rows: &[&[&str]]) -> Result<Matrix> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|t| field.parse(t)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Matrix::from_rows(field, parsed)
    }

    /// Builds an `n x cols.len()` matrix whose columns are `cols`.
    pub fn from_columns(field: Field, n: usize, cols: &[Vector]) -> Result<Matrix> {
        let mut m = Matrix::zeros(field, n, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != n {
                return Err(JnfError::Dimension(format!("column {j} has length {}, expected {n}", col.len())));
            }
            for (i, v) in col.iter().enumerate() {
                if v.field() != field {
                    return Err(JnfError::FieldMismatch(format!("column entry in {}", v.field())));
                }
                m[(i, j)] = v.clone();
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn trace(&self) -> FieldElement {
        (0..self.rows.min(self.cols)).fold(self.field.zero(), |acc, i| &acc + &self[(i, i)])
    }

    fn same_shape(&self, other: &Matrix, what: &str) -> Result<()> {
        if self.field != other.field {
            return Err(JnfError::FieldMismatch(format!("{what}: {} vs {}", self.field, other.field)));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(JnfError::Dimension(format!(
                "{what}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "add")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.same_shape(other, "sub")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Matrix {
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Matrix { field: self.field, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + c * I`.
    pub fn add_scalar(&self, c: &FieldElement) -> Matrix {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            m[(i, i)] = &m[(i, i)] + c;
        }
        m
    }

    /// Classical product.
    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(JnfError::FieldMismatch(format!("mul: {} vs {}", self.field, other.field)));
        }
        if self.cols != other.rows {
            return Err(JnfError::Dimension(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    out[(i, j)] = &out[(i, j)] + &(a * b);
                }
            }
        }
        Ok(out)
    }

    /// Matrix-vector product; panics on a length mismatch.
    pub fn mul_vec(&self, v: &[FieldElement]) -> Vector {
        assert_eq!(v.len(), self.cols, "mul_vec length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn pow(&self, exp: usize) -> Result<Matrix> {
        if !self.is_square() {
            return Err(JnfError::Dimension("pow of a non-square matrix".into()));
        }
        let mut acc = Matrix::identity(self.field, self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &FieldElement) {
        for j in 0..self.cols {
            let s = &self[(source, j)];
            if s.is_zero() {
                continue;
            }
            let v = &(factor * s) + &self[(target, j)];
            self[(target, j)] = v;
        }
    }

    /// Reduced row echelon form with pivots normalized to one.
    ///
    /// Pivot choice: the first row at or below the current pivot row with a
    /// nonzero entry in the column, scanning top to bottom. Every operation
    /// is recorded; replaying `ops` on `self` yields `reduced`.
    pub fn rref_with_ops(&self) -> Rref {
        let mut m = self.clone();
        let mut ops = Vec::new();
        let mut pivot_cols = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            if p != r {
                m.swap_rows(p, r);
                ops.push(RowOp::Swap(p, r));
            }
            if !m[(r, c)].is_one() {
                let inv = m[(r, c)].inv().expect("pivot is nonzero");
                let op = RowOp::Scale(r, inv);
                op.apply(&mut m);
                ops.push(op);
            }
            for i in 0..m.rows {
                if i == r || m[(i, c)].is_zero() {
                    continue;
                }
                let op = RowOp::AddMultiple { target: i, source: r, factor: -&m[(i, c)] };
                op.apply(&mut m);
                ops.push(op);
            }
            pivot_cols.push(c);
            r += 1;
        }
        Rref { reduced: m, ops, rank: r, pivot_cols }
    }

    pub fn rref(&self) -> Matrix {
        self.rref_with_ops().reduced
    }

    /// Rank by forward elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m[(r, c)].inv().expect("pivot is nonzero");
            for i in r + 1..m.rows {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = -&(&m[(i, c)] * &inv);
                m.add_row_multiple(i, r, &f);
            }
            r += 1;
        }
        r
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(JnfError::Dimension("determinant of a non-square matrix".into()));
        }
        let mut m = self.clone();
        let n = m.rows;
        let mut det = self.field.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Ok(self.field.zero());
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            det = &det * &m[(c, c)];
            let inv = m[(c, c)].inv().expect("pivot is nonzero");
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = -&(&m[(i, c)] * &inv);
                m.add_row_multiple(i, c, &f);
            }
        }
        Ok(det)
    }

    /// Inverse by Gauss–Jordan on `[m | I]`.
    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(JnfError::Dimension("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = self.field.one();
        }
        let red = aug.rref_with_ops();
        if red.pivot_cols.len() < n || red.pivot_cols[n - 1] != n - 1 {
            return Err(JnfError::Singular);
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = red.reduced[(i, n + j)].clone();
            }
        }
        Ok(inv)
    }

    /// Basis of the right null space, one vector per free column.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let red = self.rref_with_ops();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !red.pivot_cols.contains(c)) {
            let mut v = vec![self.field.zero(); self.cols];
            v[free] = self.field.one();
            for (row, &pc) in red.pivot_cols.iter().enumerate() {
                v[pc] = -&red.reduced[(row, free)];
            }
            basis.push(v);
        }
        basis
    }

    /// Parses the text format: a `rows cols` header line followed by one
    /// line per row of whitespace-separated entries. `#` starts a comment.
    pub fn from_text(field: Field, text: &str) -> Result<Matrix> {
        let mut lines = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty());
        let header = lines.next().ok_or_else(|| JnfError::Parse("empty matrix file".into()))?;
        let dims: Vec<usize> = header
            .split_whitespace()
            .map(|t| t.parse().map_err(|_| JnfError::Parse(format!("bad dimension `{t}`"))))
            .collect::<Result<_>>()?;
        let [rows, cols] = dims[..] else {
            return Err(JnfError::Parse(format!("header must be `rows cols`, got `{header}`")));
        };
        if rows == 0 || cols == 0 {
            return Err(JnfError::Parse("matrix dimensions must be positive".into()));
        }
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| JnfError::Parse(format!("expected {rows} rows, found {r}")))?;
            let row: Vec<FieldElement> = line.split_whitespace().map(|t| field.parse(t)).collect::<Result<_>>()?;
            if row.len() != cols {
                return Err(JnfError::Parse(format!("row {} has {} entries, expected {cols}", r + 1, row.len())));
            }
            data.extend(row);
        }
        if let Some(extra) = lines.next() {
            return Err(JnfError::Parse(format!("trailing content `{extra}`")));
        }
        Matrix::new(field, rows, cols, data)
    }

    /// Writes the text format read by [`Matrix::from_text`].
    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = FieldElement;

    fn index(&self, (i, j): (usize, usize)) -> &FieldElement {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut FieldElement {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &mut self.data[i * self.cols + j]
    }
}

/// Column-aligned rendering.
impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|e| e.to_string()).collect();
        let widths: Vec<usize> = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| cells[i * self.cols + j].len()).max().unwrap_or(1))
            .collect();
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>w$}", cells[i * self.cols + j], w = widths[j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// Rank of the matrix whose columns are `vectors` (all of length `n`).
pub fn rank_of_columns(field: Field, n: usize, vectors: &[Vector]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(field, n, vectors).map(|m| m.rank()).unwrap_or(0)
}

pub(crate) fn vec_is_zero(v: &[FieldElement]) -> bool {
    v.iter().all(FieldElement::is_zero)
}

pub(crate) fn vec_axpy(acc: &mut [FieldElement], c: &FieldElement, x: &[FieldElement]) {
    if c.is_zero() {
        return;
    }
    for (a, v) in acc.iter_mut().zip(x) {
        if !v.is_zero() {
            *a = &*a + &(c * v);
        }
    }
}
