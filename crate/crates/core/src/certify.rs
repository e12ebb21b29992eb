//! Certificates that a one-sided inverse is two-sided.
//!
//! Given square `A`, `B` with `AB = I`, [`prove_two_sided`] walks the
//! elimination argument one column at a time. At each level it row-reduces
//! the first column of the current `A` to `e₁` with elementary operations
//! `E`, moves the inverse operations onto `B` from the right
//! (`A* = E·A`, `B* = B·E⁻¹`, so `A*B* = I` and `B*A* = BA`), splits both
//! into `[[1, v*ᵗ], [0, Ã*]]` and `[[β*, w*ᵗ], [h*, B̃*]]`, and recurses on
//! `(Ã*, B̃*)`, which again satisfy `Ã*B̃* = I`. The recorded trace is a
//! [`Certificate`] that [`verify_certificate`] replays using only matrix
//! products and elementary operations.
//!
//! The module also hosts the plain row-reduction tools the argument relies
//! on: kernel bases, rank, and Gauss–Jordan inversion.

mod json;

use crate::elementary::ElementaryOp;
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::{Matrix, Vector};

/// Reduces the first column of a square `A` to `e₁`.
///
/// Pivot rule: the first row with a nonzero entry in column 1 is swapped to
/// the top, the pivot is scaled to one, then every lower row with a nonzero
/// entry is cleared, top to bottom. Returns the operations in the order they
/// are applied together with the reduced matrix.
pub fn reduce_first_column(a: &Matrix) -> Result<(Vec<ElementaryOp>, Matrix)> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "expected a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    if a.rows() == 0 {
        return Err(Error::EmptyMatrix);
    }
    let pivot = (0..a.rows())
        .find(|&r| !a.get(r, 0).is_zero())
        .ok_or(Error::ZeroFirstColumn)?;

    let mut ops = Vec::new();
    let mut reduced = a.clone();
    let mut push = |op: ElementaryOp, m: &mut Matrix| -> Result<()> {
        op.apply_in_place(m)?;
        ops.push(op);
        Ok(())
    };
    if pivot != 0 {
        push(ElementaryOp::swap(1, pivot + 1)?, &mut reduced)?;
    }
    if !reduced.get(0, 0).is_one() {
        let c = reduced.get(0, 0).inv()?;
        push(ElementaryOp::scale(1, c)?, &mut reduced)?;
    }
    for r in 1..reduced.rows() {
        if !reduced.get(r, 0).is_zero() {
            let c = -reduced.get(r, 0);
            push(ElementaryOp::add_multiple(r + 1, 1, c)?, &mut reduced)?;
        }
    }
    Ok((ops, reduced))
}

/// Reduced row echelon form and the pivot column of each nonzero row.
fn row_echelon(a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..m.cols() {
        if row == m.rows() {
            break;
        }
        let Some(p) = (row..m.rows()).find(|&r| !m.get(r, col).is_zero()) else {
            continue;
        };
        m.swap_rows(row, p);
        let inv = m.get(row, col).inv().expect("pivot is nonzero");
        m.scale_row(row, &inv);
        for r in 0..m.rows() {
            if r != row && !m.get(r, col).is_zero() {
                let c = -m.get(r, col);
                m.add_row_multiple(r, row, &c);
            }
        }
        pivots.push(col);
        row += 1;
    }
    (m, pivots)
}

/// A basis of `{x : Ax = 0}`, one vector per free column of the reduced
/// row echelon form (free variable set to one). Empty iff the kernel is
/// trivial.
pub fn solve_homogeneous(a: &Matrix) -> Vec<Vector> {
    let spec = a.spec();
    let (rref, pivots) = row_echelon(a);
    let mut is_pivot = vec![false; a.cols()];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..a.cols())
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut x = vec![spec.zero(); a.cols()];
            x[free] = spec.one();
            for (r, &p) in pivots.iter().enumerate() {
                x[p] = -rref.get(r, free);
            }
            Vector::new(spec, x).expect("entries share the matrix field")
        })
        .collect()
}

/// Number of pivots after row reduction.
pub fn rank(a: &Matrix) -> usize {
    row_echelon(a).1.len()
}

/// Evidence that a square matrix has no inverse: a nonzero `x` with `Ax = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularReport {
    pub witness: Vector,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Inversion {
    Inverse(Matrix),
    Singular(SingularReport),
}

/// Gauss–Jordan inversion: returns `B` with `AB = I`, or a kernel witness.
///
/// When column `k` has no pivot it is a combination `Σ cᵢ·(column pᵢ)` of
/// the earlier pivot columns, and the witness is `Σ cᵢ·e_{pᵢ} − e_k`.
pub fn left_inverse(a: &Matrix) -> Result<Inversion> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "only square matrices have two-sided inverses, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let spec = a.spec();
    let n = a.rows();
    let mut m = a.clone();
    let mut inv = Matrix::identity(spec, n);
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !m.get(r, col).is_zero()) else {
            let mut x: Vec<FieldElement> = (0..n)
                .map(|r| if r < col { m.get(r, col).clone() } else { spec.zero() })
                .collect();
            x[col] = -spec.one();
            let witness = Vector::new(spec, x)?;
            if !a.apply(&witness)?.is_zero() {
                return Err(Error::InternalContradiction(
                    "singularity witness is not in the kernel".into(),
                ));
            }
            return Ok(Inversion::Singular(SingularReport { witness }));
        };
        m.swap_rows(col, p);
        inv.swap_rows(col, p);
        let pivot_inv = m.get(col, col).inv()?;
        m.scale_row(col, &pivot_inv);
        inv.scale_row(col, &pivot_inv);
        for r in 0..n {
            if r != col && !m.get(r, col).is_zero() {
                let c = -m.get(r, col);
                m.add_row_multiple(r, col, &c);
                inv.add_row_multiple(r, col, &c);
            }
        }
    }
    if !a.mul(&inv)?.is_identity() || !inv.mul(a)?.is_identity() {
        return Err(Error::InternalContradiction(
            "Gauss-Jordan result is not a two-sided inverse".into(),
        ));
    }
    Ok(Inversion::Inverse(inv))
}

/// One elimination step of the certificate, at size `m = v_star.dim() + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertLevel {
    /// Operations in application order: `A* = ops[t−1]⋯ops[0]·A`.
    pub ops: Vec<ElementaryOp>,
    /// First row tail of `A*`.
    pub v_star: Vector,
    /// Top-left entry of `B*`.
    pub beta_star: FieldElement,
    /// First row tail of `B*`.
    pub w_star: Vector,
    /// First column tail of `B*`.
    pub h_star: Vector,
    /// Trailing `(m−1)×(m−1)` block of `B*`.
    pub b_tail: Matrix,
}

impl CertLevel {
    pub fn size(&self) -> usize {
        self.v_star.dim() + 1
    }
}

/// The innermost `1×1` pair, or nothing for `n = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertBase {
    Empty,
    Scalar { a: FieldElement, b: FieldElement },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub spec: FieldSpec,
    pub n: usize,
    /// Outermost first; level `k` (0-based) works at size `n − k`.
    pub levels: Vec<CertLevel>,
    pub base: CertBase,
}

fn check_pair(a: &Matrix, b: &Matrix) -> Result<()> {
    if a.spec() != b.spec() {
        return Err(Error::FieldMismatch {
            left: a.spec().to_string(),
            right: b.spec().to_string(),
        });
    }
    if !a.is_square() || !b.is_square() || a.rows() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "need square matrices of equal size, got {}x{} and {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    Ok(())
}

/// `B·E⁻¹` for the operations in `ops` (applied to `A` in list order),
/// formed by right-multiplying elementary matrices.
fn move_ops_right(b: &Matrix, ops: &[ElementaryOp]) -> Result<Matrix> {
    ops.iter().try_fold(b.clone(), |acc, op| {
        acc.mul(&op.inverse().to_matrix(b.spec(), b.rows())?)
    })
}

fn contradiction(level: usize, what: &str) -> Error {
    Error::InternalContradiction(format!("level {}: {what}", level + 1))
}

/// Builds the certificate that `AB = I` forces `BA = I`.
///
/// Fails with [`Error::NotLeftInverse`] (1-based position of the first entry
/// where `AB` differs from `I`) when the hypothesis does not hold. Any other
/// failure of the argument is reported as [`Error::InternalContradiction`].
pub fn prove_two_sided(a: &Matrix, b: &Matrix) -> Result<Certificate> {
    check_pair(a, b)?;
    let spec = a.spec();
    let n = a.rows();
    let ab = a.mul(b)?;
    if let Some((r, c)) = ab.first_difference_from_identity() {
        return Err(Error::NotLeftInverse {
            row: r + 1,
            col: c + 1,
            found: ab.get(r, c).to_string(),
            expected: if r == c { "1" } else { "0" }.to_string(),
        });
    }

    let mut levels = Vec::with_capacity(n);
    let mut base = CertBase::Empty;
    let mut cur_a = a.clone();
    let mut cur_b = b.clone();
    for level in 0..n {
        if level > 0 && !cur_a.mul(&cur_b)?.is_identity() {
            return Err(contradiction(level, "trailing blocks are not one-sided inverses"));
        }
        let (ops, a_star) = reduce_first_column(&cur_a).map_err(|e| match e {
            Error::ZeroFirstColumn => contradiction(level, "first column vanishes although AB = I"),
            other => other,
        })?;
        let b_star = move_ops_right(&cur_b, &ops)?;
        if !a_star.mul(&b_star)?.is_identity() {
            return Err(contradiction(level, "A*B* is not the identity"));
        }
        let a_parts = a_star.block_split()?;
        let b_parts = b_star.block_split()?;
        if !b_parts.u.is_zero() {
            return Err(contradiction(level, "h* is nonzero"));
        }
        if !b_parts.alpha.is_one() {
            return Err(contradiction(level, "beta* is not one"));
        }
        if !b_parts.v.add(&a_parts.v.times_matrix(&b_parts.tail)?)?.is_zero() {
            return Err(contradiction(level, "w* + v*·B̃* is nonzero"));
        }
        if cur_a.rows() == 1 {
            base = CertBase::Scalar {
                a: cur_a.get(0, 0).clone(),
                b: cur_b.get(0, 0).clone(),
            };
        }
        levels.push(CertLevel {
            ops,
            v_star: a_parts.v,
            beta_star: b_parts.alpha,
            w_star: b_parts.v,
            h_star: b_parts.u,
            b_tail: b_parts.tail.clone(),
        });
        cur_a = a_parts.tail;
        cur_b = b_parts.tail;
    }

    if !b.mul(a)?.is_identity() {
        return Err(Error::InternalContradiction("BA is not the identity".into()));
    }
    Ok(Certificate { spec, n, levels, base })
}

/// Outcome of a certificate replay.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    /// `level` is the 1-based level where replay diverged, if any.
    Rejected { level: Option<usize>, reason: String },
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn check_shape(cert: &Certificate) -> Result<()> {
    let malformed = |msg: String| Err(Error::MalformedCertificate(msg));
    let expected_base = if cert.n == 0 { "empty" } else { "a scalar pair" };
    match (&cert.base, cert.n) {
        (CertBase::Empty, 0) | (CertBase::Scalar { .. }, 1..) => {}
        _ => return malformed(format!("base must be {expected_base} for n = {}", cert.n)),
    }
    if cert.levels.len() != cert.n {
        return malformed(format!("{} levels for n = {}", cert.levels.len(), cert.n));
    }
    for (k, level) in cert.levels.iter().enumerate() {
        let m = cert.n - k;
        let tail = m - 1;
        let dims = [level.v_star.dim(), level.w_star.dim(), level.h_star.dim()];
        if dims != [tail; 3] || level.b_tail.rows() != tail || level.b_tail.cols() != tail {
            return malformed(format!("level {} does not have size {m}", k + 1));
        }
    }
    Ok(())
}

/// Replays a certificate against `(A, B)` and reports where it diverges.
///
/// Fails only on [`Error::MalformedCertificate`], when the level sizes do
/// not form the chain `n, n−1, …, 1`.
pub fn verify_certificate_detailed(cert: &Certificate, a: &Matrix, b: &Matrix) -> Result<Verdict> {
    check_shape(cert)?;
    let reject = |level: Option<usize>, reason: &str| {
        Ok(Verdict::Rejected {
            level: level.map(|k| k + 1),
            reason: reason.to_string(),
        })
    };
    if check_pair(a, b).is_err() || a.spec() != cert.spec || a.rows() != cert.n {
        return reject(None, "matrices do not match the certificate's field or size");
    }
    match a.mul(b) {
        Ok(ab) if ab.is_identity() => {}
        _ => return reject(None, "AB is not the identity"),
    }

    let spec = cert.spec;
    let mut cur_a = a.clone();
    let mut cur_b = b.clone();
    for (k, level) in cert.levels.iter().enumerate() {
        let m = cur_a.rows();
        let at = Some(k);
        if level.ops.iter().any(|op| op.validate(spec, m).is_err()) {
            return reject(at, "invalid elementary operation");
        }
        let mut a_star = cur_a.clone();
        for op in &level.ops {
            op.apply_in_place(&mut a_star)?;
        }
        let a_parts = a_star.block_split()?;
        if !a_parts.alpha.is_one() || !a_parts.u.is_zero() {
            return reject(at, "operations do not reduce the first column to e1");
        }
        if a_parts.v != level.v_star {
            return reject(at, "v* does not match the replay");
        }

        let b_parts = move_ops_right(&cur_b, &level.ops)?.block_split()?;
        if b_parts.alpha != level.beta_star
            || b_parts.v != level.w_star
            || b_parts.u != level.h_star
            || b_parts.tail != level.b_tail
        {
            return reject(at, "B* blocks do not match the replay");
        }
        if !level.h_star.is_zero() || !level.beta_star.is_one() {
            return reject(at, "expected h* = 0 and beta* = 1");
        }
        let lhs = level.w_star.add(&level.v_star.times_matrix(&level.b_tail)?)?;
        if !lhs.is_zero() {
            return reject(at, "w* + v*·B̃* is nonzero");
        }
        // Top row of B*A* is (1, v* + w*·Ã*); it must vanish off the diagonal.
        let top = level.v_star.add(&level.w_star.times_matrix(&a_parts.tail)?)?;
        if !top.is_zero() {
            return reject(at, "v* + w*·Ã* is nonzero");
        }
        if m == 1 {
            let CertBase::Scalar { a: base_a, b: base_b } = &cert.base else {
                unreachable!("shape check guarantees a scalar base");
            };
            if base_a != cur_a.get(0, 0) || base_b != cur_b.get(0, 0) {
                return reject(at, "base pair does not match the innermost blocks");
            }
            if !(base_a * base_b).is_one() {
                return reject(at, "base pair does not multiply to one");
            }
        }
        cur_a = a_parts.tail;
        cur_b = level.b_tail.clone();
    }

    if !b.mul(a)?.is_identity() {
        return reject(None, "BA is not the identity");
    }
    Ok(Verdict::Valid)
}

/// `true` iff the certificate replays cleanly against `(A, B)`.
pub fn verify_certificate(cert: &Certificate, a: &Matrix, b: &Matrix) -> Result<bool> {
    Ok(verify_certificate_detailed(cert, a, b)?.is_valid())
}
