//! Floating symmetric eigenanalysis, with exact checks layered on top.

use nalgebra::{DMatrix, SymmetricEigen};

use super::exact::{exact_rank_with, ldlt_inertia, DEFAULT_EXACT_CAP};
use super::modp::{random_primes, rank_mod_p};
use super::{IntSymMatrix, LinalgError, Signature, SpectrumEntry};

pub const DEFAULT_MERGE_TOL: f64 = 1e-8;

/// Minimum ratio between the smallest kept and largest discarded |eigenvalue|.
const SEPARATION: f64 = 1e3;

fn to_dmatrix(m: &IntSymMatrix) -> DMatrix<f64> {
    DMatrix::from_row_iterator(m.dim(), m.dim(), m.entries().iter().map(|&v| v as f64))
}

/// All eigenvalues, ascending.
pub fn eigenvalues(m: &IntSymMatrix) -> Vec<f64> {
    if m.dim() == 0 {
        return Vec::new();
    }
    let mut ev: Vec<f64> = to_dmatrix(m).symmetric_eigenvalues().iter().copied().collect();
    ev.sort_by(f64::total_cmp);
    ev
}

/// Eigenvalues with orthonormal eigenbases, merging values that lie within
/// `tol * max|λ|` of their neighbour. Sorted by decreasing eigenvalue.
pub fn spectrum(m: &IntSymMatrix, tol: f64) -> Vec<SpectrumEntry> {
    let n = m.dim();
    if n == 0 {
        return Vec::new();
    }
    let eig = SymmetricEigen::new(to_dmatrix(m));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[b].total_cmp(&eig.eigenvalues[a]));
    let scale = eig.eigenvalues.iter().fold(0.0f64, |acc, v| acc.max(v.abs())).max(1.0);
    let mut out: Vec<SpectrumEntry> = Vec::new();
    let mut last = f64::NAN;
    for &k in &order {
        let lambda = eig.eigenvalues[k];
        let vector: Vec<f64> = eig.eigenvectors.column(k).iter().copied().collect();
        match out.last_mut() {
            Some(entry) if last - lambda <= tol * scale => {
                let count = entry.multiplicity as f64;
                entry.eigenvalue = (entry.eigenvalue * count + lambda) / (count + 1.0);
                entry.multiplicity += 1;
                entry.eigenbasis.push(vector);
            }
            _ => out.push(SpectrumEntry {
                eigenvalue: lambda,
                exact: None,
                multiplicity: 1,
                eigenbasis: vec![vector],
            }),
        }
        last = lambda;
    }
    out
}

/// Marks near-integral entries whose multiplicity is confirmed exactly:
/// `rank(M - kI) = dim - multiplicity` over the rationals. Returns true when
/// every entry was certified and the multiplicities fill the dimension.
pub fn certify_spectrum(m: &IntSymMatrix, entries: &mut [SpectrumEntry], seed: u64) -> bool {
    let mut all = true;
    for entry in entries.iter_mut() {
        let k = entry.eigenvalue.round();
        if (entry.eigenvalue - k).abs() > 1e-6 {
            all = false;
            continue;
        }
        let k = k as i64;
        match exact_rank_with(&m.shifted(k), DEFAULT_EXACT_CAP, seed) {
            Ok(r) if r + entry.multiplicity == m.dim() => entry.exact = Some(k),
            _ => all = false,
        }
    }
    all && entries.iter().map(|e| e.multiplicity).sum::<usize>() == m.dim()
}

pub fn signature(m: &IntSymMatrix) -> Result<Signature, LinalgError> {
    signature_with(m, DEFAULT_EXACT_CAP, 0)
}

/// Inertia of `m`. The zero count comes from a certified rank (or, above
/// `exact_cap`, the best rank over five random primes); the signs of the
/// remaining eigenvalues come from a floating eigensolver when the discarded
/// and kept magnitudes are well separated, otherwise from exact LDL^T.
pub fn signature_with(m: &IntSymMatrix, exact_cap: usize, seed: u64) -> Result<Signature, LinalgError> {
    let n = m.dim();
    let rank = if n <= exact_cap {
        exact_rank_with(m, exact_cap, seed)?
    } else {
        random_primes(seed, 5)
            .into_iter()
            .map(|p| rank_mod_p(m, p))
            .max()
            .unwrap_or(0)
    };
    let zero = n - rank;
    let mut ev = eigenvalues(m);
    ev.sort_by(|a, b| a.abs().total_cmp(&b.abs()));
    let scale = ev.last().map_or(0.0, |v| v.abs());
    let kept = &ev[zero..];
    let separated = match kept.first() {
        None => true,
        Some(smallest) => {
            let floor = if zero == 0 { 0.0 } else { ev[zero - 1].abs() };
            smallest.abs() > 1e-9 * scale && smallest.abs() >= SEPARATION * floor
        }
    };
    if separated {
        let positive = kept.iter().filter(|v| **v > 0.0).count();
        return Ok(Signature {
            positive,
            negative: kept.len() - positive,
            zero,
        });
    }
    let exact = ldlt_inertia(m);
    if exact.zero == zero || n > exact_cap {
        Ok(exact)
    } else {
        Err(LinalgError::SeparationFailure)
    }
}
