//! Elementary row operations and their matrices.
//!
//! Row indices are 1-based. Left-multiplying by the elementary matrix of an
//! operation performs that operation on the rows, and each operation has an
//! explicit inverse operation of the same kind.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ElementaryOp {
    /// Exchange rows `i` and `j`.
    Swap { i: usize, j: usize },
    /// Multiply row `i` by a nonzero `c`.
    Scale { i: usize, c: FieldElement },
    /// Add `c · row j` to row `i`.
    AddMultiple { i: usize, j: usize, c: FieldElement },
}

impl ElementaryOp {
    pub fn swap(i: usize, j: usize) -> Result<Self> {
        let op = ElementaryOp::Swap { i, j };
        op.check_shape()?;
        Ok(op)
    }

    pub fn scale(i: usize, c: FieldElement) -> Result<Self> {
        let op = ElementaryOp::Scale { i, c };
        op.check_shape()?;
        Ok(op)
    }

    pub fn add_multiple(i: usize, j: usize, c: FieldElement) -> Result<Self> {
        let op = ElementaryOp::AddMultiple { i, j, c };
        op.check_shape()?;
        Ok(op)
    }

    fn check_shape(&self) -> Result<()> {
        match self {
            ElementaryOp::Swap { i, j } | ElementaryOp::AddMultiple { i, j, .. } if i == j => {
                Err(Error::InvalidOperation(format!("`{self}` uses row {i} twice")))
            }
            ElementaryOp::Scale { c, .. } if c.is_zero() => {
                Err(Error::InvalidOperation(format!("`{self}` scales by zero")))
            }
            _ => Ok(()),
        }
    }

    fn rows_touched(&self) -> [usize; 2] {
        match *self {
            ElementaryOp::Swap { i, j } | ElementaryOp::AddMultiple { i, j, .. } => [i, j],
            ElementaryOp::Scale { i, .. } => [i, i],
        }
    }

    pub fn scalar(&self) -> Option<&FieldElement> {
        match self {
            ElementaryOp::Swap { .. } => None,
            ElementaryOp::Scale { c, .. } | ElementaryOp::AddMultiple { c, .. } => Some(c),
        }
    }

    /// Checks every invariant for use on an `n`-row matrix over `spec`.
    pub fn validate(&self, spec: FieldSpec, n: usize) -> Result<()> {
        self.check_shape()?;
        if let Some(&index) = self.rows_touched().iter().find(|&&r| r == 0 || r > n) {
            return Err(Error::IndexOutOfRange { index, rows: n });
        }
        match self.scalar() {
            Some(c) if c.spec() != spec => Err(Error::FieldMismatch {
                left: spec.to_string(),
                right: c.spec().to_string(),
            }),
            _ => Ok(()),
        }
    }

    /// The elementary matrix: this operation applied to `I_n`.
    pub fn to_matrix(&self, spec: FieldSpec, n: usize) -> Result<Matrix> {
        self.apply_left(&Matrix::identity(spec, n))
    }

    /// The operation that undoes this one.
    ///
    /// # Panics
    ///
    /// Panics on a `Scale` by zero, which the checked constructors reject.
    pub fn inverse(&self) -> ElementaryOp {
        match self {
            ElementaryOp::Swap { .. } => self.clone(),
            ElementaryOp::Scale { i, c } => ElementaryOp::Scale {
                i: *i,
                c: c.inv().expect("scale factor is nonzero"),
            },
            ElementaryOp::AddMultiple { i, j, c } => ElementaryOp::AddMultiple {
                i: *i,
                j: *j,
                c: -c,
            },
        }
    }

    /// Performs the row operation on a copy of `a`; equal to
    /// `to_matrix(n) · a` but costs O(cols) per touched row.
    pub fn apply_left(&self, a: &Matrix) -> Result<Matrix> {
        let mut out = a.clone();
        self.apply_in_place(&mut out)?;
        Ok(out)
    }

    pub(crate) fn apply_in_place(&self, a: &mut Matrix) -> Result<()> {
        self.validate(a.spec(), a.rows())?;
        match self {
            ElementaryOp::Swap { i, j } => a.swap_rows(i - 1, j - 1),
            ElementaryOp::Scale { i, c } => a.scale_row(i - 1, c),
            ElementaryOp::AddMultiple { i, j, c } => a.add_row_multiple(i - 1, j - 1, c),
        }
        Ok(())
    }

    /// Parses `swap i j`, `scale i <literal>` or `addmul i j <literal>`.
    pub fn parse(spec: FieldSpec, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidOperation(format!("`{text}`: {why}"));
        let parts: Vec<&str> = text.split_whitespace().collect();
        let index = |s: &str| {
            s.parse::<usize>()
                .ok()
                .filter(|_| s.bytes().all(|b| b.is_ascii_digit()))
                .ok_or_else(|| bad("invalid row index"))
        };
        match parts.as_slice() {
            ["swap", i, j] => ElementaryOp::swap(index(i)?, index(j)?),
            ["scale", i, c] => ElementaryOp::scale(index(i)?, spec.parse_element(c)?),
            ["addmul", i, j, c] => ElementaryOp::add_multiple(index(i)?, index(j)?, spec.parse_element(c)?),
            _ => Err(bad("expected `swap i j`, `scale i c` or `addmul i j c`")),
        }
    }
}

impl fmt::Display for ElementaryOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ElementaryOp::Swap { i, j } => write!(f, "swap {i} {j}"),
            ElementaryOp::Scale { i, c } => write!(f, "scale {i} {c}"),
            ElementaryOp::AddMultiple { i, j, c } => write!(f, "addmul {i} {j} {c}"),
        }
    }
}
