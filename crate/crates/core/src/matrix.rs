//! Dense exact matrices and column vectors over a single field.
//!
//! Storage is row-major. Indexing through [`Matrix::get`] is 0-based; the
//! 1-based convention only appears in elementary operations and in error
//! positions reported to users.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};

fn check_field(left: FieldSpec, right: FieldSpec) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::FieldMismatch {
            left: left.to_string(),
            right: right.to_string(),
        })
    }
}

fn check_entries(spec: FieldSpec, entries: &[FieldElement]) -> Result<()> {
    entries.iter().try_for_each(|e| check_field(spec, e.spec()))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    spec: FieldSpec,
    entries: Vec<FieldElement>,
}

impl Vector {
    pub fn new(spec: FieldSpec, entries: Vec<FieldElement>) -> Result<Self> {
        check_entries(spec, &entries)?;
        Ok(Vector { spec, entries })
    }

    pub fn from_i64(spec: FieldSpec, values: &[i64]) -> Self {
        Vector {
            spec,
            entries: values.iter().map(|&v| spec.from_i64(v)).collect(),
        }
    }

    pub fn zeros(spec: FieldSpec, dim: usize) -> Self {
        Vector {
            spec,
            entries: vec![spec.zero(); dim],
        }
    }

    /// The standard basis vector with a one at 0-based position `index`.
    pub fn unit(spec: FieldSpec, dim: usize, index: usize) -> Self {
        let mut v = Vector::zeros(spec, dim);
        v.entries[index] = spec.one();
        v
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, i: usize) -> &FieldElement {
        &self.entries[i]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    fn check_same(&self, other: &Vector) -> Result<()> {
        check_field(self.spec, other.spec)?;
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(format!(
                "vectors of length {} and {}",
                self.dim(),
                other.dim()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Vector) -> Result<Vector> {
        self.check_same(other)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect();
        Ok(Vector { spec: self.spec, entries })
    }

    pub fn scale(&self, c: &FieldElement) -> Result<Vector> {
        check_field(self.spec, c.spec())?;
        Ok(Vector {
            spec: self.spec,
            entries: self.entries.iter().map(|a| a * c).collect(),
        })
    }

    pub fn dot(&self, other: &Vector) -> Result<FieldElement> {
        self.check_same(other)?;
        Ok(self
            .entries
            .iter()
            .zip(&other.entries)
            .fold(self.spec.zero(), |acc, (a, b)| acc + a * b))
    }

    /// The row vector product `selfᵗ · m`.
    pub fn times_matrix(&self, m: &Matrix) -> Result<Vector> {
        check_field(self.spec, m.spec)?;
        if self.dim() != m.rows {
            return Err(Error::DimensionMismatch(format!(
                "row vector of length {} times {}x{} matrix",
                self.dim(),
                m.rows,
                m.cols
            )));
        }
        let mut out = vec![self.spec.zero(); m.cols];
        for (k, a) in self.entries.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (o, b) in out.iter_mut().zip(m.row(k)) {
                *o = &*o + &(a * b);
            }
        }
        Ok(Vector { spec: self.spec, entries: out })
    }

    /// The outer product `self · otherᵗ`.
    pub fn outer(&self, other: &Vector) -> Result<Matrix> {
        check_field(self.spec, other.spec)?;
        let entries = self
            .entries
            .iter()
            .flat_map(|a| other.entries.iter().map(move |b| a * b))
            .collect();
        Ok(Matrix {
            spec: self.spec,
            rows: self.dim(),
            cols: other.dim(),
            entries,
        })
    }
}

impl fmt::Display for Vector {
    /// Space-separated canonical literals.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    spec: FieldSpec,
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(spec: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            spec,
            rows,
            cols,
            entries: vec![spec.zero(); rows * cols],
        }
    }

    pub fn identity(spec: FieldSpec, n: usize) -> Self {
        let mut m = Matrix::zeros(spec, n, n);
        for i in 0..n {
            m.entries[i * n + i] = spec.one();
        }
        m
    }

    /// Builds a matrix from row-major entries, checking length and field.
    pub fn from_entries(
        spec: FieldSpec,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        check_entries(spec, &entries)?;
        Ok(Matrix { spec, rows, cols, entries })
    }

    pub fn from_rows(spec: FieldSpec, rows: Vec<Vec<FieldElement>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Matrix::from_entries(spec, n, cols, rows.into_iter().flatten().collect())
    }

    pub fn from_i64<const C: usize>(spec: FieldSpec, rows: &[[i64; C]]) -> Self {
        Matrix {
            spec,
            rows: rows.len(),
            cols: C,
            entries: rows.iter().flatten().map(|&v| spec.from_i64(v)).collect(),
        }
    }

    pub fn spec(&self) -> FieldSpec {
        self.spec
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

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> &FieldElement {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.entries[r * self.cols + c]
    }

    /// Overwrites one entry.
    ///
    /// # Panics
    ///
    /// Panics on an out-of-bounds index or an element from another field.
    pub fn set(&mut self, r: usize, c: usize, value: FieldElement) {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        assert_eq!(value.spec(), self.spec, "field mismatch in Matrix::set");
        self.entries[r * self.cols + c] = value;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        Vector {
            spec: self.spec,
            entries: (0..self.rows).map(|r| self.get(r, c).clone()).collect(),
        }
    }

    pub fn row_vector(&self, r: usize) -> Vector {
        Vector {
            spec: self.spec,
            entries: self.row(r).to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.first_difference_from_identity().is_none()
    }

    /// First 0-based position (row-major) where `self` differs from the
    /// identity. Non-square matrices differ at `(0, 0)` by convention unless
    /// empty.
    pub fn first_difference_from_identity(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        (0..self.rows)
            .flat_map(|r| (0..self.cols).map(move |c| (r, c)))
            .find(|&(r, c)| {
                let e = self.get(r, c);
                if r == c {
                    !e.is_one()
                } else {
                    !e.is_zero()
                }
            })
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        check_field(self.spec, rhs.spec)?;
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.spec, self.rows, rhs.cols);
        for i in 0..self.rows {
            for (k, a) in self.row(i).iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                let out_row = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
                for (o, b) in out_row.iter_mut().zip(rhs.row(k)) {
                    if !b.is_zero() {
                        *o = &*o + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        check_field(self.spec, x.spec)?;
        if self.cols != x.dim() {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} matrix applied to vector of length {}",
                self.rows,
                self.cols,
                x.dim()
            )));
        }
        let entries = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .iter()
                    .zip(&x.entries)
                    .fold(self.spec.zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        Ok(Vector { spec: self.spec, entries })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        check_field(self.spec, rhs.spec)?;
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} plus {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix { entries, ..*self })
    }

    /// Splits a square matrix as `[[α, vᵗ], [u, tail]]`.
    pub fn block_split(&self) -> Result<BlockParts> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch(format!(
                "block split needs a square matrix, got {}x{}",
                self.rows, self.cols
            )));
        }
        if self.rows == 0 {
            return Err(Error::EmptyMatrix);
        }
        let n = self.rows;
        let tail_entries = (1..n).flat_map(|r| self.row(r)[1..].iter().cloned()).collect();
        Ok(BlockParts {
            alpha: self.get(0, 0).clone(),
            v: Vector {
                spec: self.spec,
                entries: self.row(0)[1..].to_vec(),
            },
            u: Vector {
                spec: self.spec,
                entries: (1..n).map(|r| self.get(r, 0).clone()).collect(),
            },
            tail: Matrix {
                spec: self.spec,
                rows: n - 1,
                cols: n - 1,
                entries: tail_entries,
            },
        })
    }

    /// Inverse of [`Matrix::block_split`].
    pub fn block_join(parts: &BlockParts) -> Result<Matrix> {
        let spec = parts.tail.spec;
        let m = parts.tail.rows;
        check_field(spec, parts.alpha.spec())?;
        check_field(spec, parts.v.spec)?;
        check_field(spec, parts.u.spec)?;
        if parts.tail.cols != m || parts.v.dim() != m || parts.u.dim() != m {
            return Err(Error::DimensionMismatch(format!(
                "block parts: v has {}, u has {}, tail is {}x{}",
                parts.v.dim(),
                parts.u.dim(),
                parts.tail.rows,
                parts.tail.cols
            )));
        }
        let n = m + 1;
        let mut entries = Vec::with_capacity(n * n);
        entries.push(parts.alpha.clone());
        entries.extend(parts.v.entries.iter().cloned());
        for r in 0..m {
            entries.push(parts.u.entries[r].clone());
            entries.extend(parts.tail.row(r).iter().cloned());
        }
        Ok(Matrix { spec, rows: n, cols: n, entries })
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, factor: &FieldElement) {
        for e in &mut self.entries[r * self.cols..(r + 1) * self.cols] {
            *e = &*e * factor;
        }
    }

    /// `row[target] += factor · row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, factor: &FieldElement) {
        if factor.is_zero() {
            return;
        }
        let cols = self.cols;
        for c in 0..cols {
            let delta = factor * &self.entries[source * cols + c];
            let e = &mut self.entries[target * cols + c];
            *e = &*e + &delta;
        }
    }
}

impl fmt::Display for Matrix {
    /// One row per line, canonical literals separated by spaces.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            for (c, e) in self.row(r).iter().enumerate() {
                if c > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

/// The `1 + (n−1)` block decomposition `[[α, vᵗ], [u, tail]]` of a square
/// matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockParts {
    pub alpha: FieldElement,
    /// Tail of the first row, stored as a column vector.
    pub v: Vector,
    /// Tail of the first column.
    pub u: Vector,
    pub tail: Matrix,
}

impl BlockParts {
    /// Block form of the product `self · rhs`, computed blockwise:
    ///
    /// ```text
    /// [[αβ + vᵗh,  αwᵗ + vᵗB̃ ],
    ///  [βu + Ãh,   uwᵗ + ÃB̃  ]]
    /// ```
    ///
    /// where `self = [[α, vᵗ], [u, Ã]]` and `rhs = [[β, wᵗ], [h, B̃]]`.
    pub fn product(&self, rhs: &BlockParts) -> Result<BlockParts> {
        let (alpha, v, u, a_tail) = (&self.alpha, &self.v, &self.u, &self.tail);
        let (beta, w, h, b_tail) = (&rhs.alpha, &rhs.v, &rhs.u, &rhs.tail);
        Ok(BlockParts {
            alpha: alpha * beta + v.dot(h)?,
            v: w.scale(alpha)?.add(&v.times_matrix(b_tail)?)?,
            u: u.scale(beta)?.add(&a_tail.apply(h)?)?,
            tail: u.outer(w)?.add(&a_tail.mul(b_tail)?)?,
        })
    }
}
