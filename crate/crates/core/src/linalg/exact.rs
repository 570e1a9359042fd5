//! Exact rank, inverse and inertia over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::modp::{echelon_mod_p, random_primes, Echelon};
use super::{IntSymMatrix, LinalgError, Signature};

pub const DEFAULT_EXACT_CAP: usize = 4096;
pub const DEFAULT_INVERSE_CAP: usize = 512;

/// Below this dimension exact rank is computed by Bareiss elimination alone.
const BAREISS_DIRECT: usize = 64;
/// Upper limit on primes used to reconstruct a rational kernel basis.
const MAX_PRIMES: usize = 64;

/// Dense matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    pub dim: usize,
    pub entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.dim + j]
    }

    /// `self * m`, exactly.
    pub fn mul_int(&self, m: &IntSymMatrix) -> RationalMatrix {
        let n = self.dim;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = BigRational::zero();
                for k in 0..n {
                    let v = m.get(k, j);
                    if v != 0 {
                        acc += self.get(i, k) * BigRational::from_integer(v.into());
                    }
                }
                entries.push(acc);
            }
        }
        RationalMatrix { dim: n, entries }
    }

    pub fn is_identity(&self) -> bool {
        (0..self.dim).all(|i| {
            (0..self.dim).all(|j| {
                let v = self.get(i, j);
                if i == j {
                    v.is_one()
                } else {
                    v.is_zero()
                }
            })
        })
    }
}

/// Rank over the rationals by fraction-free (Bareiss) elimination.
pub fn bareiss_rank(m: &IntSymMatrix) -> usize {
    let n = m.dim();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| m.row(i).iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..n {
        let Some(found) = (r..n).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, found);
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = pivot_row[c].clone();
        for row in tail.iter_mut() {
            let f = row[c].clone();
            for j in c + 1..n {
                let v = (&pivot * &row[j] - &f * &pivot_row[j]) / &prev;
                row[j] = v;
            }
            row[c] = BigInt::zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Certified rank over the rationals with the default cap and seed.
pub fn exact_rank(m: &IntSymMatrix) -> Result<usize, LinalgError> {
    exact_rank_with(m, DEFAULT_EXACT_CAP, 0)
}

/// Certified rank over the rationals.
///
/// The rank mod p is a lower bound. When it is deficient, a rational kernel
/// basis is reconstructed from several primes and checked exactly, which
/// gives the matching upper bound. Bareiss elimination is the fallback.
pub fn exact_rank_with(m: &IntSymMatrix, cap: usize, seed: u64) -> Result<usize, LinalgError> {
    let n = m.dim();
    if n > cap {
        return Err(LinalgError::CapExceeded { dim: n, cap });
    }
    if n <= BAREISS_DIRECT {
        return Ok(bareiss_rank(m));
    }
    let primes = random_primes(seed, MAX_PRIMES);
    let mut group: Vec<Echelon> = Vec::new();
    let mut next_attempt = 1;
    for &p in &primes {
        let e = echelon_mod_p(m, p);
        if e.rank() == n {
            return Ok(n);
        }
        match group.first() {
            Some(best) if e.rank() < best.rank() || (e.rank() == best.rank() && e.pivots != best.pivots) => continue,
            Some(best) if e.rank() > best.rank() => {
                group.clear();
                next_attempt = 1;
            }
            _ => {}
        }
        group.push(e);
        if group.len() == next_attempt {
            next_attempt *= 2;
            if kernel_certificate(m, &group) {
                return Ok(group[0].rank());
            }
        }
    }
    Ok(bareiss_rank(m))
}

/// Reconstructs the kernel basis from echelon forms sharing one pivot set and
/// checks it exactly.
fn kernel_certificate(m: &IntSymMatrix, echelons: &[Echelon]) -> bool {
    let pivots = &echelons[0].pivots;
    let kernels: Vec<(Vec<usize>, Vec<Vec<u64>>)> = echelons.iter().map(|e| e.kernel()).collect();
    let free = &kernels[0].0;
    let mut modulus = BigInt::one();
    let mut values: Vec<Vec<BigInt>> = vec![vec![BigInt::zero(); pivots.len()]; free.len()];
    for (e, (_, basis)) in echelons.iter().zip(&kernels) {
        let p = BigInt::from(e.modulus.prime());
        let inv = mod_inverse(&(&modulus % &p), &p);
        for (vals, residues) in values.iter_mut().zip(basis) {
            for (x, &b) in vals.iter_mut().zip(residues) {
                // x + M * ((b - x) * M^-1 mod p)
                let t = ((BigInt::from(b) - &*x) * &inv).mod_floor(&p);
                *x += &modulus * t;
            }
        }
        modulus *= p;
    }
    for (f, vals) in free.iter().zip(&values) {
        let mut rationals = Vec::with_capacity(vals.len());
        for u in vals {
            match rational_reconstruct(u, &modulus) {
                Some(q) => rationals.push(q),
                None => return false,
            }
        }
        let denom = rationals
            .iter()
            .fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let mut x = vec![BigInt::zero(); m.dim()];
        for (k, &c) in pivots.iter().enumerate() {
            x[c] = (&rationals[k] * BigRational::from_integer(denom.clone())).to_integer();
        }
        x[*f] = denom;
        for i in 0..m.dim() {
            let mut s = BigInt::zero();
            for (j, xj) in x.iter().enumerate() {
                let v = m.get(i, j);
                if v != 0 && !xj.is_zero() {
                    s += xj * v;
                }
            }
            if !s.is_zero() {
                return false;
            }
        }
    }
    true
}

fn mod_inverse(a: &BigInt, p: &BigInt) -> BigInt {
    let e = a.extended_gcd(p);
    e.x.mod_floor(p)
}

/// Smallest rational a/b with a/b = u mod m and |a|, b below sqrt(m/2).
fn rational_reconstruct(u: &BigInt, m: &BigInt) -> Option<BigRational> {
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), u.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, t1))
}

/// Exact inverse by Gauss-Jordan elimination over the rationals.
pub fn exact_inverse(m: &IntSymMatrix, cap: usize) -> Result<RationalMatrix, LinalgError> {
    let n = m.dim();
    if n > cap {
        return Err(LinalgError::CapExceeded { dim: n, cap });
    }
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| {
            let mut row: Vec<BigRational> = m
                .row(i)
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect();
            row.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            row
        })
        .collect();
    for c in 0..n {
        let found = (c..n)
            .find(|&i| !a[i][c].is_zero())
            .ok_or(LinalgError::SingularMatrix)?;
        a.swap(c, found);
        let inv = a[c][c].recip();
        for v in a[c].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = a[c].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == c || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
    }
    let entries = a.into_iter().flat_map(|row| row.into_iter().skip(n)).collect();
    Ok(RationalMatrix { dim: n, entries })
}

/// Inertia by symmetric LDL^T with Bunch-Parlett pivoting in exact
/// arithmetic.
pub fn ldlt_inertia(m: &IntSymMatrix) -> Signature {
    // growth-control constant (1 + sqrt 17) / 8, rounded to a rational
    let alpha = BigRational::new(16.into(), 25.into());
    let n = m.dim();
    let mut a: Vec<Vec<BigRational>> = (0..n)
        .map(|i| m.row(i).iter().map(|&v| BigRational::from_integer(v.into())).collect())
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    while !active.is_empty() {
        let mut best_diag: Option<usize> = None;
        let mut best_off: Option<(usize, usize)> = None;
        for (x, &i) in active.iter().enumerate() {
            if best_diag.is_none_or(|d| a[i][i].abs() > a[d][d].abs()) {
                best_diag = Some(i);
            }
            for &j in &active[x + 1..] {
                if best_off.is_none_or(|(p, q)| a[i][j].abs() > a[p][q].abs()) {
                    best_off = Some((i, j));
                }
            }
        }
        let d = best_diag.unwrap();
        let diag_max = a[d][d].abs();
        let off_max = best_off.map_or(BigRational::zero(), |(p, q)| a[p][q].abs());
        if diag_max.is_zero() && off_max.is_zero() {
            sig.zero += active.len();
            break;
        }
        if diag_max >= &alpha * &off_max {
            let pivot = a[d][d].clone();
            if pivot.is_positive() {
                sig.positive += 1;
            } else {
                sig.negative += 1;
            }
            active.retain(|&i| i != d);
            let col: Vec<BigRational> = active.iter().map(|&i| a[i][d].clone()).collect();
            for (x, &i) in active.iter().enumerate() {
                if col[x].is_zero() {
                    continue;
                }
                let f = &col[x] / &pivot;
                for (y, &j) in active.iter().enumerate() {
                    if !col[y].is_zero() {
                        let delta = &f * &col[y];
                        a[i][j] -= delta;
                    }
                }
            }
        } else {
            // a 2x2 pivot here has negative determinant: one of each sign
            let (p, q) = best_off.unwrap();
            sig.positive += 1;
            sig.negative += 1;
            let (app, apq, aqq) = (a[p][p].clone(), a[p][q].clone(), a[q][q].clone());
            let det = &app * &aqq - &apq * &apq;
            active.retain(|&i| i != p && i != q);
            let cp: Vec<BigRational> = active.iter().map(|&i| a[i][p].clone()).collect();
            let cq: Vec<BigRational> = active.iter().map(|&i| a[i][q].clone()).collect();
            // E^-1 = [[aqq, -apq], [-apq, app]] / det
            for (x, &i) in active.iter().enumerate() {
                let u = (&cp[x] * &aqq - &cq[x] * &apq) / &det;
                let w = (&cq[x] * &app - &cp[x] * &apq) / &det;
                if u.is_zero() && w.is_zero() {
                    continue;
                }
                for (y, &j) in active.iter().enumerate() {
                    let delta = &u * &cp[y] + &w * &cq[y];
                    if !delta.is_zero() {
                        a[i][j] -= delta;
                    }
                }
            }
        }
    }
    sig
}
