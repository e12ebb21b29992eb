//! Test-only oracles that do not go through the library's elimination code.

#![allow(dead_code)]

use twosided::rng::SplitMix64;
use twosided::{FieldSpec, Matrix};

/// Counts ordered `n`-tuples of linearly independent vectors in `GF(p)^n`
/// (the columns of invertible matrices) by depth-first search. A candidate
/// column is accepted when it is not among the `p^k` linear combinations
/// of the `k` columns already chosen; plain integer arithmetic mod `p`.
pub fn ordered_basis_count(p: u64, n: usize) -> u64 {
    let vectors: Vec<Vec<u64>> = (0..p.pow(n as u32))
        .map(|mut i| {
            let mut v = vec![0; n];
            for x in v.iter_mut() {
                *x = i % p;
                i /= p;
            }
            v
        })
        .collect();

    fn span(p: u64, n: usize, cols: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let mut out = vec![vec![0; n]];
        for c in cols {
            out = out
                .iter()
                .flat_map(|base| {
                    (0..p).map(move |t| base.iter().zip(c).map(|(b, x)| (b + t * x) % p).collect())
                })
                .collect();
        }
        out
    }

    fn extend(p: u64, n: usize, vectors: &[Vec<u64>], chosen: &mut Vec<Vec<u64>>) -> u64 {
        if chosen.len() == n {
            return 1;
        }
        let spanned = span(p, n, chosen);
        let mut total = 0;
        for v in vectors {
            if !spanned.contains(v) {
                chosen.push(v.clone());
                total += extend(p, n, vectors, chosen);
                chosen.pop();
            }
        }
        total
    }

    extend(p, n, &vectors, &mut Vec::new())
}

/// `∏_{i<n} (pⁿ − pⁱ)`.
pub fn gl_order(p: u64, n: usize) -> u64 {
    let q = p.pow(n as u32);
    (0..n as u32).map(|i| q - p.pow(i)).product()
}

/// Uniform random matrix: residues over `GF(p)`, `a/b` with `a ∈ [−9, 9]`,
/// `b ∈ [1, 9]` over the rationals.
pub fn random_matrix(rng: &mut SplitMix64, spec: FieldSpec, rows: usize, cols: usize) -> Matrix {
    let entries = (0..rows * cols)
        .map(|_| match spec.modulus() {
            Some(p) => spec.from_i64(rng.next_below(p) as i64),
            None => {
                let a = rng.next_below(19) as i64 - 9;
                let b = rng.next_below(9) as i64 + 1;
                spec.from_ratio(&a.into(), &b.into()).unwrap()
            }
        })
        .collect();
    Matrix::from_entries(spec, rows, cols, entries).unwrap()
}

/// The `n×n` Hilbert matrix `1/(i+j−1)` over the rationals.
pub fn hilbert(n: usize) -> Matrix {
    let q = FieldSpec::rational();
    let rows = (1..=n)
        .map(|i| {
            (1..=n)
                .map(|j| q.from_ratio(&1.into(), &((i + j - 1) as i64).into()).unwrap())
                .collect()
        })
        .collect();
    Matrix::from_rows(q, rows).unwrap()
}

/// `AB` computed entry by entry from the definition `Σ_k A[i,k]·B[k,j]`.
pub fn naive_product(a: &Matrix, b: &Matrix) -> Matrix {
    let spec = a.spec();
    let rows = (0..a.rows())
        .map(|i| {
            (0..b.cols())
                .map(|j| {
                    (0..a.cols()).fold(spec.zero(), |acc, k| acc + a.get(i, k) * b.get(k, j))
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(spec, rows).unwrap()
}
