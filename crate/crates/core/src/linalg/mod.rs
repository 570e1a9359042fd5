//! Dense symmetric integer matrices: exact rank and inertia, floating spectra,
//! graph connectivity.

mod eigen;
mod exact;
mod modp;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use eigen::{certify_spectrum, eigenvalues, signature, signature_with, spectrum, DEFAULT_MERGE_TOL};
pub use exact::{
    bareiss_rank, exact_inverse, exact_rank, exact_rank_with, ldlt_inertia, RationalMatrix,
    DEFAULT_EXACT_CAP, DEFAULT_INVERSE_CAP,
};
pub use modp::{is_prime, random_primes, rank_mod_p};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LinalgError {
    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),
    #[error("expected {expected} entries, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("dimension {dim} exceeds the cap of {cap}")]
    CapExceeded { dim: usize, cap: usize },
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("eigenvalue separation too small and exact inertia failed")]
    SeparationFailure,
    #[error("malformed matrix dump: {0}")]
    Parse(String),
}

/// A dense symmetric matrix of integers, stored row-major.
///
/// Entries are Killing-form counts, bounded by the class size, so `i64` holds
/// them exactly; every exact algorithm widens to big integers internally.
#[derive(Clone, PartialEq, Eq)]
pub struct IntSymMatrix {
    dim: usize,
    entries: Vec<i64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

impl Signature {
    pub fn dim(&self) -> usize {
        self.positive + self.negative + self.zero
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.positive, self.negative, self.zero)
    }
}

#[derive(Clone, Debug)]
pub struct SpectrumEntry {
    /// Mean of the merged floating eigenvalues.
    pub eigenvalue: f64,
    /// Set once `exact_rank(M - k I) = dim - multiplicity` has been checked.
    pub exact: Option<i64>,
    pub multiplicity: usize,
    /// Orthonormal basis of the eigenspace.
    pub eigenbasis: Vec<Vec<f64>>,
}

impl IntSymMatrix {
    pub fn new(dim: usize, entries: Vec<i64>) -> Result<Self, LinalgError> {
        if entries.len() != dim * dim {
            return Err(LinalgError::Shape {
                expected: dim * dim,
                found: entries.len(),
            });
        }
        for i in 0..dim {
            for j in i + 1..dim {
                if entries[i * dim + j] != entries[j * dim + i] {
                    return Err(LinalgError::NotSymmetric(i, j));
                }
            }
        }
        Ok(IntSymMatrix { dim, entries })
    }

    /// Builds a matrix from the upper triangle of `f`.
    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut entries = vec![0; dim * dim];
        for i in 0..dim {
            for j in i..dim {
                let v = f(i, j);
                entries[i * dim + j] = v;
                entries[j * dim + i] = v;
            }
        }
        IntSymMatrix { dim, entries }
    }

    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| (i == j) as i64)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.dim + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }

    pub fn trace(&self) -> i64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    /// `M - k I`.
    pub fn shifted(&self, k: i64) -> Self {
        let mut out = self.clone();
        for i in 0..self.dim {
            out.entries[i * self.dim + i] -= k;
        }
        out
    }

    /// Principal submatrix on `indices`, in the given order.
    pub fn submatrix(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]))
    }

    /// Simultaneous row/column permutation: entry (i,j) of the result is
    /// entry (perm[i], perm[j]) of `self`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.submatrix(perm)
    }

    pub fn mul_vec(&self, v: &[i64]) -> Vec<i64> {
        (0..self.dim)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// Partition of the indices into connected components of the graph with
    /// an edge wherever an entry is nonzero. Components are listed by their
    /// smallest index, each sorted ascending.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.dim;
        let mut comp = vec![usize::MAX; n];
        let mut out: Vec<Vec<usize>> = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[start] = id;
            let mut members = vec![start];
            let mut stack = vec![start];
            while let Some(i) = stack.pop() {
                for (j, &v) in self.row(i).iter().enumerate() {
                    if v != 0 && comp[j] == usize::MAX {
                        comp[j] = id;
                        members.push(j);
                        stack.push(j);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Text dump: `dim n` then n rows of space-separated integers.
    pub fn dump(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for i in 0..self.dim {
            let row: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
        s
    }

    pub fn parse_dump(text: &str) -> Result<Self, LinalgError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().ok_or_else(|| LinalgError::Parse("empty input".into()))?;
        let dim: usize = header
            .trim()
            .strip_prefix("dim")
            .and_then(|d| d.trim().parse().ok())
            .ok_or_else(|| LinalgError::Parse(format!("bad header {header:?}")))?;
        let mut entries = Vec::with_capacity(dim * dim);
        for line in lines {
            for tok in line.split_whitespace() {
                entries.push(
                    tok.parse()
                        .map_err(|_| LinalgError::Parse(format!("bad entry {tok:?}")))?,
                );
            }
        }
        Self::new(dim, entries)
    }
}

impl fmt::Debug for IntSymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntSymMatrix {}", self.dump())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_checks() {
        assert_eq!(
            IntSymMatrix::new(2, vec![1, 2, 3, 4]).unwrap_err(),
            LinalgError::NotSymmetric(0, 1)
        );
        assert_eq!(
            IntSymMatrix::new(2, vec![1, 2, 3]).unwrap_err(),
            LinalgError::Shape { expected: 4, found: 3 }
        );
    }

    #[test]
    fn dump_round_trip() {
        let m = IntSymMatrix::from_fn(3, |i, j| (i * 3 + j) as i64 - 2);
        assert_eq!(IntSymMatrix::parse_dump(&m.dump()).unwrap(), m);
        assert!(IntSymMatrix::parse_dump("dims 2\n1 0\n0 1").is_err());
    }

    #[test]
    fn components() {
        let m = IntSymMatrix::new(4, vec![1, 0, 1, 0, 0, 2, 0, 0, 1, 0, 1, 0, 0, 0, 0, 5]).unwrap();
        assert_eq!(m.connected_components(), vec![vec![0, 2], vec![1], vec![3]]);
        let full = IntSymMatrix::from_fn(5, |_, _| 1);
        assert_eq!(full.connected_components().len(), 1);
    }
}
