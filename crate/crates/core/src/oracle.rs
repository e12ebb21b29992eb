//! Brute-force ground truth for `AB = I ⇒ BA = I` over small prime fields,
//! plus a seeded randomized sweep for sizes beyond exhaustion.
//!
//! Exhaustive sweeps split the matrix index range into contiguous chunks,
//! one per worker. Reports are sums of per-matrix counts, so the result does
//! not depend on the number of workers.

use std::ops::{AddAssign, Range};
use std::thread;

use serde::{Serialize, Serializer};

use crate::certify::{left_inverse, prove_two_sided, verify_certificate, Inversion};
use crate::error::{Error, Result};
use crate::field::{FieldElement, FieldSpec};
use crate::matrix::Matrix;
use crate::rng::SplitMix64;

/// Largest enumeration `p^(n²)` accepted.
pub const ENUMERATION_LIMIT: u64 = 1 << 32;
/// Largest pair space `p^(2n²)` for the full pair cross-check.
pub const PAIR_LIMIT: u64 = 1 << 28;

fn serialize_spec<S: Serializer>(spec: &FieldSpec, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(spec)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExhaustReport {
    #[serde(rename = "field", serialize_with = "serialize_spec")]
    pub spec: FieldSpec,
    pub n: usize,
    /// Ordered pairs `(A, B)` with `AB = I` that were examined.
    pub pairs_checked: u64,
    /// Matrices `A` admitting some `B` with `AB = I`.
    pub invertible_count: u64,
    /// Pairs with `AB = I` but `BA ≠ I`, or disagreements between the pair
    /// enumeration and Gauss–Jordan.
    pub violations: u64,
    /// Pairs where proving or verifying the certificate failed.
    pub cert_failures: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
struct Tally {
    pairs_checked: u64,
    invertible_count: u64,
    violations: u64,
    cert_failures: u64,
}

impl AddAssign for Tally {
    fn add_assign(&mut self, rhs: Tally) {
        self.pairs_checked += rhs.pairs_checked;
        self.invertible_count += rhs.invertible_count;
        self.violations += rhs.violations;
        self.cert_failures += rhs.cert_failures;
    }
}

impl ExhaustReport {
    fn from_tally(spec: FieldSpec, n: usize, t: Tally, seed: Option<u64>) -> Self {
        ExhaustReport {
            spec,
            n,
            pairs_checked: t.pairs_checked,
            invertible_count: t.invertible_count,
            violations: t.violations,
            cert_failures: t.cert_failures,
            seed,
        }
    }

    pub fn passed(&self) -> bool {
        self.violations == 0 && self.cert_failures == 0
    }

    /// One-line JSON with keys in declaration order.
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// `p^(n²)`, or `None` past `limit`.
fn power_within(p: u64, exponent: usize, limit: u64) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..exponent {
        acc = acc.checked_mul(p).filter(|&v| v <= limit)?;
    }
    Some(acc)
}

/// Number of `n×n` matrices over a prime field, within the enumeration guard.
pub fn matrix_count(spec: FieldSpec, n: usize) -> Result<u64> {
    let p = spec
        .modulus()
        .ok_or_else(|| Error::InvalidArgument("enumeration needs a prime field".into()))?;
    power_within(p, n * n, ENUMERATION_LIMIT)
        .ok_or_else(|| Error::TooLarge(format!("{p}^({n}²) exceeds 2^32 matrices")))
}

/// Iterates `n×n` matrices over `GF(p)` in lexicographic order of their
/// row-major entries.
#[derive(Clone, Debug)]
pub struct MatrixEnumerator {
    spec: FieldSpec,
    n: usize,
    digits: Vec<u64>,
    remaining: u64,
}

impl MatrixEnumerator {
    fn over(spec: FieldSpec, n: usize, range: Range<u64>) -> Self {
        let p = spec.modulus().expect("prime field");
        let mut digits = vec![0; n * n];
        let mut index = range.start;
        for d in digits.iter_mut().rev() {
            *d = index % p;
            index /= p;
        }
        MatrixEnumerator {
            spec,
            n,
            digits,
            remaining: range.end.saturating_sub(range.start),
        }
    }

    fn current(&self) -> Matrix {
        let entries = self
            .digits
            .iter()
            .map(|&d| self.spec.residue(d).expect("prime field"))
            .collect();
        Matrix::from_entries(self.spec, self.n, self.n, entries).expect("n² entries")
    }

    fn advance(&mut self) {
        let p = self.spec.modulus().expect("prime field");
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < p {
                return;
            }
            *d = 0;
        }
    }
}

impl Iterator for MatrixEnumerator {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        if self.remaining == 0 {
            return None;
        }
        let m = self.current();
        self.remaining -= 1;
        if self.remaining > 0 {
            self.advance();
        }
        Some(m)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let r = usize::try_from(self.remaining).unwrap_or(usize::MAX);
        (r, Some(r))
    }
}

/// Every `n×n` matrix over `GF(p)` exactly once; guarded by `p^(n²) ≤ 2³²`.
pub fn enumerate_matrices(spec: FieldSpec, n: usize) -> Result<MatrixEnumerator> {
    let count = matrix_count(spec, n)?;
    Ok(MatrixEnumerator::over(spec, n, 0..count))
}

/// `AB == I`, bailing out at the first wrong entry.
fn product_is_identity(a: &Matrix, b: &Matrix) -> bool {
    let n = a.rows();
    let zero = a.spec().zero();
    for i in 0..n {
        let row = a.row(i);
        for j in 0..n {
            let entry = row
                .iter()
                .enumerate()
                .fold(zero.clone(), |acc, (k, x)| acc + x * b.get(k, j));
            if (i == j && !entry.is_one()) || (i != j && !entry.is_zero()) {
                return false;
            }
        }
    }
    true
}

fn certificate_round_trip(a: &Matrix, b: &Matrix) -> bool {
    prove_two_sided(a, b)
        .and_then(|cert| verify_certificate(&cert, a, b))
        .unwrap_or(false)
}

/// Per-`A` route: Gauss–Jordan, then `BA = I` and the certificate.
fn check_one(a: &Matrix) -> (Tally, Option<Matrix>) {
    let mut t = Tally::default();
    match left_inverse(a) {
        Ok(Inversion::Inverse(b)) => {
            t.invertible_count = 1;
            if !product_is_identity(&b, a) {
                t.violations += 1;
            }
            if !certificate_round_trip(a, &b) {
                t.cert_failures += 1;
            }
            (t, Some(b))
        }
        Ok(Inversion::Singular(_)) => (t, None),
        Err(_) => {
            t.violations += 1;
            (t, None)
        }
    }
}

fn sweep_chunk(spec: FieldSpec, n: usize, range: Range<u64>, all: Option<&[Matrix]>) -> Tally {
    let mut total = Tally::default();
    for a in MatrixEnumerator::over(spec, n, range) {
        let (mut t, inverse) = check_one(&a);
        match all {
            Some(candidates) => {
                // Every B with AB = I, found without elimination.
                let mut found = 0u64;
                for b in candidates.iter().filter(|b| product_is_identity(&a, b)) {
                    found += 1;
                    if !product_is_identity(b, &a) {
                        t.violations += 1;
                    }
                    if inverse.as_ref() != Some(b) {
                        t.violations += 1;
                    }
                }
                if inverse.is_some() && found == 0 {
                    t.violations += 1;
                }
                t.pairs_checked = found;
            }
            None => t.pairs_checked = t.invertible_count,
        }
        total += t;
    }
    total
}

/// Exhaustive check with a single worker.
pub fn exhaustive_dedekind_check(spec: FieldSpec, n: usize) -> Result<ExhaustReport> {
    exhaustive_dedekind_check_parallel(spec, n, 1)
}

/// Exhaustive check over all `n×n` matrices of `GF(p)` using `jobs` workers.
///
/// For every `A` the Gauss–Jordan inverse `B` (when it exists) must satisfy
/// `BA = I` and yield a verified certificate. When `p^(2n²) ≤ 2²⁸` every
/// pair `(A, B)` is also tried directly, confirming that no one-sided inverse
/// was missed and that it is unique.
pub fn exhaustive_dedekind_check_parallel(spec: FieldSpec, n: usize, jobs: usize) -> Result<ExhaustReport> {
    if jobs == 0 {
        return Err(Error::InvalidArgument("jobs must be at least 1".into()));
    }
    let count = matrix_count(spec, n)?;
    let p = spec.modulus().expect("checked by matrix_count");
    let all: Option<Vec<Matrix>> = power_within(p, 2 * n * n, PAIR_LIMIT)
        .map(|_| MatrixEnumerator::over(spec, n, 0..count).collect());

    let jobs = u64::try_from(jobs).unwrap_or(u64::MAX).min(count.max(1));
    let chunk = count.div_ceil(jobs);
    let ranges: Vec<Range<u64>> = (0..jobs)
        .map(|k| (k * chunk).min(count)..((k + 1) * chunk).min(count))
        .collect();

    let tally = thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| {
                let all = all.as_deref();
                scope.spawn(move || sweep_chunk(spec, n, range, all))
            })
            .collect();
        handles.into_iter().fold(Tally::default(), |mut acc, h| {
            acc += h.join().expect("worker panicked");
            acc
        })
    });
    Ok(ExhaustReport::from_tally(spec, n, tally, None))
}

/// Seeded stream of random invertible matrices and their inverses.
///
/// Entries are drawn row-major. Over `GF(p)` each entry is
/// `next_below(p)`; over the rationals it is `(next_below(19) − 9) /
/// (next_below(9) + 1)`, numerator first. Singular draws are discarded
/// and redrawn.
#[derive(Clone, Debug)]
pub struct RandomInvertiblePairs {
    spec: FieldSpec,
    n: usize,
    rng: SplitMix64,
}

impl RandomInvertiblePairs {
    pub fn new(spec: FieldSpec, n: usize, seed: u64) -> Self {
        RandomInvertiblePairs {
            spec,
            n,
            rng: SplitMix64::new(seed),
        }
    }

    fn entry(&mut self) -> FieldElement {
        match self.spec.modulus() {
            Some(p) => self.spec.residue(self.rng.next_below(p)).expect("prime field"),
            None => {
                let numer = self.rng.next_below(19) as i64 - 9;
                let denom = self.rng.next_below(9) as i64 + 1;
                self.spec
                    .from_ratio(&numer.into(), &denom.into())
                    .expect("denominator is positive")
            }
        }
    }

    /// A uniformly drawn matrix, singular or not.
    pub fn draw(&mut self) -> Matrix {
        let entries = (0..self.n * self.n).map(|_| self.entry()).collect();
        Matrix::from_entries(self.spec, self.n, self.n, entries).expect("n² entries")
    }
}

impl Iterator for RandomInvertiblePairs {
    type Item = (Matrix, Matrix);

    fn next(&mut self) -> Option<(Matrix, Matrix)> {
        loop {
            let a = self.draw();
            if let Ok(Inversion::Inverse(b)) = left_inverse(&a) {
                return Some((a, b));
            }
        }
    }
}

/// Randomized check: `trials` invertible matrices from the seeded stream.
pub fn random_dedekind_check(spec: FieldSpec, n: usize, trials: u64, seed: u64) -> Result<ExhaustReport> {
    if trials == 0 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    let mut t = Tally::default();
    for (a, b) in RandomInvertiblePairs::new(spec, n, seed).take(trials as usize) {
        t.pairs_checked += 1;
        t.invertible_count += 1;
        if !product_is_identity(&a, &b) || !product_is_identity(&b, &a) {
            t.violations += 1;
        }
        if !certificate_round_trip(&a, &b) {
            t.cert_failures += 1;
        }
    }
    Ok(ExhaustReport::from_tally(spec, n, t, Some(seed)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn enumeration_order_and_counts() {
        let ms: Vec<Matrix> = enumerate_matrices(gf(2), 1).unwrap().collect();
        assert_eq!(ms, [Matrix::from_i64(gf(2), &[[0]]), Matrix::from_i64(gf(2), &[[1]])]);
        assert_eq!(enumerate_matrices(gf(2), 2).unwrap().count(), 16);
        assert_eq!(enumerate_matrices(gf(3), 2).unwrap().count(), 81);

        let ms: Vec<Matrix> = enumerate_matrices(gf(2), 2).unwrap().collect();
        assert_eq!(ms[1], Matrix::from_i64(gf(2), &[[0, 0], [0, 1]]));
        assert_eq!(ms[15], Matrix::from_i64(gf(2), &[[1, 1], [1, 1]]));
        let distinct: std::collections::HashSet<_> = ms.iter().collect();
        assert_eq!(distinct.len(), 16);

        // n = 0 has exactly one (empty) matrix.
        assert_eq!(enumerate_matrices(gf(5), 0).unwrap().count(), 1);
    }

    #[test]
    fn enumeration_chunks_tile_the_range() {
        let whole: Vec<Matrix> = enumerate_matrices(gf(3), 2).unwrap().collect();
        let mut pieces = Vec::new();
        for r in [0..10, 10..50, 50..81] {
            pieces.extend(MatrixEnumerator::over(gf(3), 2, r));
        }
        assert_eq!(pieces, whole);
    }

    #[test]
    fn enumeration_guard() {
        assert!(matches!(enumerate_matrices(gf(2), 6), Err(Error::TooLarge(_))));
        assert!(matches!(enumerate_matrices(gf(257), 2), Err(Error::TooLarge(_))));
        assert_eq!(matrix_count(gf(2), 5).unwrap(), 1 << 25);
        assert_eq!(matrix_count(gf(251), 2).unwrap(), 251u64.pow(4));
        assert!(matches!(
            enumerate_matrices(FieldSpec::rational(), 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn small_exhaustive_reports() {
        let r = exhaustive_dedekind_check(gf(2), 2).unwrap();
        assert_eq!((r.invertible_count, r.pairs_checked, r.violations, r.cert_failures), (6, 6, 0, 0));
        let r = exhaustive_dedekind_check(gf(3), 1).unwrap();
        assert_eq!((r.invertible_count, r.pairs_checked), (2, 2));
        let r = exhaustive_dedekind_check(gf(5), 0).unwrap();
        assert_eq!((r.invertible_count, r.pairs_checked, r.violations), (1, 1, 0));
    }

    #[test]
    fn worker_count_does_not_matter() {
        let one = exhaustive_dedekind_check_parallel(gf(3), 2, 1).unwrap();
        for jobs in [2, 3, 7, 200] {
            assert_eq!(exhaustive_dedekind_check_parallel(gf(3), 2, jobs).unwrap(), one);
        }
        assert!(exhaustive_dedekind_check_parallel(gf(3), 2, 0).is_err());
    }

    #[test]
    fn report_json_layout() {
        let r = exhaustive_dedekind_check(gf(2), 2).unwrap();
        assert_eq!(
            r.to_json(),
            r#"{"field":"gf2","n":2,"pairs_checked":6,"invertible_count":6,"violations":0,"cert_failures":0}"#
        );
        let r = random_dedekind_check(gf(5), 2, 3, 11).unwrap();
        assert!(r.to_json().ends_with(r#""cert_failures":0,"seed":11}"#));
    }

    #[test]
    fn random_check_is_reproducible() {
        let a = random_dedekind_check(gf(97), 4, 20, 42).unwrap();
        let b = random_dedekind_check(gf(97), 4, 20, 42).unwrap();
        assert_eq!(a, b);
        assert!(a.passed());
        assert_eq!(a.pairs_checked, 20);

        let p1: Vec<_> = RandomInvertiblePairs::new(FieldSpec::rational(), 3, 7).take(5).collect();
        let p2: Vec<_> = RandomInvertiblePairs::new(FieldSpec::rational(), 3, 7).take(5).collect();
        assert_eq!(p1, p2);
        let p3: Vec<_> = RandomInvertiblePairs::new(FieldSpec::rational(), 3, 8).take(5).collect();
        assert_ne!(p1, p3);
    }

    #[test]
    fn rational_entries_are_in_range() {
        let mut pairs = RandomInvertiblePairs::new(FieldSpec::rational(), 4, 3);
        for _ in 0..20 {
            for e in pairs.draw().entries() {
                let r = e.as_rational().unwrap();
                assert!(r.numer().magnitude() <= &9u32.into());
                assert!(r.denom() <= &9.into());
            }
        }
    }

    #[test]
    fn zero_trials_rejected() {
        assert!(matches!(random_dedekind_check(gf(7), 2, 0, 1), Err(Error::InvalidArgument(_))));
    }
}
