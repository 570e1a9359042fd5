//! Gaussian elimination over GF(p) for word-sized primes.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::IntSymMatrix;

/// Barrett reduction for p < 2^31, valid for inputs below 2^62.
#[derive(Clone, Copy)]
pub(crate) struct Modulus {
    p: u64,
    m: u64,
}

impl Modulus {
    pub(crate) fn new(p: u64) -> Self {
        assert!(p > 2 && p < (1 << 31), "prime out of range: {p}");
        Modulus {
            p,
            m: (u64::MAX / p),
        }
    }

    pub(crate) fn prime(self) -> u64 {
        self.p
    }

    #[inline(always)]
    pub(crate) fn reduce(self, x: u64) -> u64 {
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        let mut r = x - q * self.p;
        while r >= self.p {
            r -= self.p;
        }
        r
    }

    #[inline(always)]
    pub(crate) fn mul(self, a: u64, b: u64) -> u64 {
        self.reduce(a * b)
    }

    pub(crate) fn pow(self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub(crate) fn inv(self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    pub(crate) fn reduce_i64(self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }
}

/// Row echelon form with unit pivots.
pub(crate) struct Echelon {
    pub n: usize,
    pub pivots: Vec<usize>,
    pub rows: Vec<Vec<u64>>,
    pub modulus: Modulus,
}

pub(crate) fn echelon_mod_p(m: &IntSymMatrix, p: u64) -> Echelon {
    let md = Modulus::new(p);
    let n = m.dim();
    let mut a: Vec<Vec<u64>> = (0..n)
        .map(|i| m.row(i).iter().map(|&v| md.reduce_i64(v)).collect())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        let Some(found) = (r..n).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, found);
        let inv = md.inv(a[r][c]);
        for v in a[r][c..].iter_mut() {
            *v = md.mul(*v, inv);
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r][c..];
        for row in tail.iter_mut() {
            let f = row[c];
            if f == 0 {
                continue;
            }
            let g = p - f;
            for (x, &y) in row[c..].iter_mut().zip(pivot_row) {
                *x = md.reduce(*x + g * y);
            }
        }
        pivots.push(c);
        r += 1;
        if r == n {
            break;
        }
    }
    a.truncate(r);
    Echelon {
        n,
        pivots,
        rows: a,
        modulus: md,
    }
}

impl Echelon {
    pub(crate) fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Basis of the kernel normalised to the identity on the free columns:
    /// returns the free columns and, for each, the values at the pivot
    /// columns (in pivot order).
    pub(crate) fn kernel(&self) -> (Vec<usize>, Vec<Vec<u64>>) {
        let md = self.modulus;
        let p = md.p;
        let mut is_pivot = vec![false; self.n];
        for &c in &self.pivots {
            is_pivot[c] = true;
        }
        let free: Vec<usize> = (0..self.n).filter(|&c| !is_pivot[c]).collect();
        let r = self.rank();
        let basis = free
            .iter()
            .map(|&f| {
                let mut x = vec![0u64; self.n];
                x[f] = 1;
                for k in (0..r).rev() {
                    let c = self.pivots[k];
                    let row = &self.rows[k];
                    let mut s = 0u64;
                    for j in c + 1..self.n {
                        if x[j] != 0 && row[j] != 0 {
                            s = md.reduce(s + md.mul(row[j], x[j]));
                        }
                    }
                    x[c] = (p - s) % p;
                }
                self.pivots.iter().map(|&c| x[c]).collect()
            })
            .collect();
        (free, basis)
    }
}

/// Rank of `m` over GF(p). Never exceeds the rank over the rationals.
pub fn rank_mod_p(m: &IntSymMatrix, p: u64) -> usize {
    echelon_mod_p(m, p).rank()
}

/// Deterministic Miller-Rabin, exact for all 32-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut a: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul(acc, a);
            }
            a = mul(a, a);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// `count` distinct primes in [2^30, 2^31), reproducible from `seed`.
pub fn random_primes(seed: u64, count: usize) -> Vec<u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out: Vec<u64> = Vec::with_capacity(count);
    while out.len() < count {
        let candidate = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime(candidate) && !out.contains(&candidate) {
            out.push(candidate);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]);
        assert!(is_prime(2_147_483_647));
        assert!(!is_prime(2_147_483_649));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to bases 2, 3, 5, 7
    }

    #[test]
    fn random_primes_are_reproducible() {
        let a = random_primes(7, 5);
        assert_eq!(a, random_primes(7, 5));
        assert_ne!(a, random_primes(8, 5));
        assert!(a.iter().all(|&p| is_prime(p) && (1 << 30..1 << 31).contains(&p)));
    }

    #[test]
    fn small_ranks() {
        assert_eq!(rank_mod_p(&IntSymMatrix::identity(3), 7), 3);
        assert_eq!(rank_mod_p(&IntSymMatrix::from_fn(3, |_, _| 3), 5), 1);
        assert_eq!(rank_mod_p(&IntSymMatrix::from_fn(2, |_, _| 2), 7), 1);
        // 3 I vanishes mod 3
        assert_eq!(rank_mod_p(&IntSymMatrix::from_fn(3, |i, j| 3 * (i == j) as i64), 3), 0);
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = IntSymMatrix::new(3, vec![1, 2, 3, 2, 4, 6, 3, 6, 10]).unwrap();
        let e = echelon_mod_p(&m, 101);
        assert_eq!(e.rank(), 2);
        let (free, basis) = e.kernel();
        assert_eq!(free, vec![1]);
        let mut x = vec![0i64; 3];
        x[1] = 1;
        for (k, &c) in e.pivots.iter().enumerate() {
            x[c] = basis[0][k] as i64;
        }
        for v in m.mul_vec(&x) {
            assert_eq!(v.rem_euclid(101), 0);
        }
    }
}
