//! Dixon-Schneider: irreducible characters from common eigenvectors of the
//! class multiplication matrices over GF(p), lifted to complex values.

use num_complex::Complex64;

use super::CharacterError;
use crate::group::Group;
use crate::linalg::is_prime;

/// Arithmetic mod a small prime (p < 2^31).
#[derive(Clone, Copy)]
struct Fp(u64);

impl Fp {
    fn mul(self, a: u64, b: u64) -> u64 {
        a * b % self.0
    }
    fn add(self, a: u64, b: u64) -> u64 {
        (a + b) % self.0
    }
    fn sub(self, a: u64, b: u64) -> u64 {
        (a + self.0 - b) % self.0
    }
    fn pow(self, mut a: u64, mut e: u64) -> u64 {
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
    fn inv(self, a: u64) -> u64 {
        self.pow(a, self.0 - 2)
    }
}

/// Characters in class order, unsorted.
pub(super) struct RawTable {
    pub degrees: Vec<usize>,
    pub chars: Vec<Vec<Complex64>>,
}

pub(super) fn dixon(group: &Group, class_cap: usize) -> Result<RawTable, CharacterError> {
    let table = group.classes();
    let classes = table.classes();
    let r = classes.len();
    if r > class_cap {
        return Err(CharacterError::TooManyClasses { classes: r, cap: class_cap });
    }
    let order = group.order() as u64;
    let exponent = classes
        .iter()
        .fold(1u64, |acc, c| num_integer::lcm(acc, c.element_order as u64));
    let p = choose_prime(exponent, order)?;
    let fp = Fp(p);

    // a[j][k][l] = #{x in C_j : x^-1 g_l in C_k}, i.e. the coefficient of
    // C_l in the class-sum product C_j C_k
    let mut a = vec![vec![vec![0u64; r]; r]; r];
    for (j, cj) in classes.iter().enumerate() {
        let inverses: Vec<_> = cj.members().iter().map(|x| x.inverse()).collect();
        for (l, cl) in classes.iter().enumerate() {
            let g = cl.representative();
            for xi in &inverses {
                let k = table.class_index(group, &xi.compose(g));
                a[j][k][l] += 1;
            }
        }
    }
    let mats: Vec<Vec<Vec<u64>>> = a
        .into_iter()
        .map(|m| m.into_iter().map(|row| row.into_iter().map(|v| v % p).collect()).collect())
        .collect();

    // simultaneous eigenspaces; each surviving line is a central character
    let mut lines: Vec<Vec<u64>> = Vec::new();
    let identity: Vec<Vec<u64>> = (0..r).map(|i| (0..r).map(|j| (i == j) as u64).collect()).collect();
    let mut stack = vec![(identity, 1usize)];
    while let Some((basis, j)) = stack.pop() {
        if basis.len() == 1 {
            lines.push(basis.into_iter().next().unwrap());
            continue;
        }
        if j >= r {
            return Err(CharacterError::SplitFailure);
        }
        for space in split(&basis, &mats[j], fp)? {
            stack.push((space, j + 1));
        }
    }
    if lines.len() != r {
        return Err(CharacterError::SplitFailure);
    }

    let sizes: Vec<u64> = classes.iter().map(|c| c.size() as u64 % p).collect();
    let inverse_class: Vec<usize> = (0..r).map(|l| table.inverse_class(l)).collect();
    let w = primitive_root(p);
    let power_classes: Vec<Vec<usize>> = classes
        .iter()
        .map(|c| {
            let g = c.representative();
            let mut x = group.identity().clone();
            (0..c.element_order)
                .map(|_| {
                    let k = table.class_index(group, &x);
                    x = x.compose(g);
                    k
                })
                .collect()
        })
        .collect();

    let mut degrees = Vec::with_capacity(r);
    let mut chars = Vec::with_capacity(r);
    for v in lines {
        let lead = fp.inv(v[0]);
        let omega: Vec<u64> = v.iter().map(|&x| fp.mul(x, lead)).collect();
        // sum_l omega_l omega_{l*} / h_l = |G| / d^2
        let s = (0..r).fold(0, |acc, l| {
            let t = fp.mul(fp.mul(omega[l], omega[inverse_class[l]]), fp.inv(sizes[l]));
            fp.add(acc, t)
        });
        if s == 0 {
            return Err(CharacterError::SplitFailure);
        }
        let d2 = fp.mul(order % p, fp.inv(s));
        let d = (1..=isqrt(order))
            .find(|&d| d * d % p == d2)
            .ok_or(CharacterError::SplitFailure)?;
        let chi_p: Vec<u64> = (0..r)
            .map(|l| fp.mul(fp.mul(omega[l], d % p), fp.inv(sizes[l])))
            .collect();
        let mut row = Vec::with_capacity(r);
        for l in 0..r {
            let o = classes[l].element_order as u64;
            let z = fp.pow(w, (p - 1) / o);
            let z_inv = fp.inv(z);
            let o_inv = fp.inv(o % p);
            let mut value = Complex64::new(0.0, 0.0);
            for k in 0..o {
                // multiplicity of the eigenvalue zeta^k of g_l
                let step = fp.pow(z_inv, k);
                let mut acc = 0;
                let mut zs = 1;
                for s in 0..o as usize {
                    acc = fp.add(acc, fp.mul(chi_p[power_classes[l][s]], zs));
                    zs = fp.mul(zs, step);
                }
                let mult = fp.mul(acc, o_inv);
                if mult > d {
                    return Err(CharacterError::LiftFailure);
                }
                let angle = 2.0 * std::f64::consts::PI * k as f64 / o as f64;
                value += Complex64::from_polar(mult as f64, angle);
            }
            row.push(value);
        }
        degrees.push(d as usize);
        chars.push(row);
    }
    Ok(RawTable { degrees, chars })
}

fn isqrt(n: u64) -> u64 {
    let mut x = (n as f64).sqrt() as u64;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

/// Smallest prime p = 1 mod exponent with p > 2 sqrt(|G|).
fn choose_prime(exponent: u64, order: u64) -> Result<u64, CharacterError> {
    let floor = 2 * isqrt(order) + 2;
    let mut k = floor / exponent + 1;
    loop {
        let p = k * exponent + 1;
        if p >= 1 << 31 {
            return Err(CharacterError::NoSuitablePrime);
        }
        if p > floor && p > 3 && is_prime(p) {
            return Ok(p);
        }
        k += 1;
    }
}

fn primitive_root(p: u64) -> u64 {
    let fp = Fp(p);
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut q = 2;
    while q * q <= n {
        if n.is_multiple_of(q) {
            factors.push(q);
            while n.is_multiple_of(q) {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| fp.pow(g, (p - 1) / q) != 1))
        .expect("prime fields have primitive roots")
}

/// Reduced row echelon form; drops zero rows. Returns rows and pivots.
fn rref(mut rows: Vec<Vec<u64>>, fp: Fp) -> (Vec<Vec<u64>>, Vec<usize>) {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..cols {
        let Some(found) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, found);
        let inv = fp.inv(rows[rank][c]);
        for v in rows[rank].iter_mut() {
            *v = fp.mul(*v, inv);
        }
        let pivot_row = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c] == 0 {
                continue;
            }
            let f = row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = fp.sub(*x, fp.mul(f, *y));
            }
        }
        pivots.push(c);
        rank += 1;
    }
    rows.truncate(rank);
    (rows, pivots)
}

/// Null space of a square matrix.
fn kernel(m: Vec<Vec<u64>>, fp: Fp) -> Vec<Vec<u64>> {
    let n = m.len();
    let (rows, pivots) = rref(m, fp);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|f| {
            let mut v = vec![0; n];
            v[f] = 1;
            for (row, &c) in rows.iter().zip(&pivots) {
                v[c] = fp.sub(0, row[f]);
            }
            v
        })
        .collect()
}

/// Characteristic polynomial, constant term first, via Hessenberg form.
fn charpoly(mut h: Vec<Vec<u64>>, fp: Fp) -> Vec<u64> {
    let n = h.len();
    for c in 0..n.saturating_sub(2) {
        let Some(i) = (c + 1..n).find(|&i| h[i][c] != 0) else {
            continue;
        };
        if i != c + 1 {
            h.swap(i, c + 1);
            for row in h.iter_mut() {
                row.swap(i, c + 1);
            }
        }
        let inv = fp.inv(h[c + 1][c]);
        for r in c + 2..n {
            let t = fp.mul(h[r][c], inv);
            if t == 0 {
                continue;
            }
            for k in 0..n {
                let v = fp.mul(t, h[c + 1][k]);
                h[r][k] = fp.sub(h[r][k], v);
            }
            for row in h.iter_mut() {
                let v = fp.mul(t, row[r]);
                row[c + 1] = fp.add(row[c + 1], v);
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = fp.add(next[d + 1], c);
            next[d] = fp.sub(next[d], fp.mul(h[k][k], c));
        }
        let mut prod = 1;
        for i in (0..k).rev() {
            prod = fp.mul(prod, h[i + 1][i]);
            let t = fp.mul(h[i][k], prod);
            if t == 0 {
                continue;
            }
            for (d, &c) in polys[i].iter().enumerate() {
                next[d] = fp.sub(next[d], fp.mul(t, c));
            }
        }
        polys.push(next);
    }
    polys.pop().unwrap()
}

/// Splits an invariant subspace (rows in reduced echelon form) into the
/// eigenspaces of `a`.
fn split(basis: &[Vec<u64>], a: &[Vec<u64>], fp: Fp) -> Result<Vec<Vec<Vec<u64>>>, CharacterError> {
    let m = basis.len();
    let r = a.len();
    let pivots: Vec<usize> = basis
        .iter()
        .map(|b| b.iter().position(|&x| x != 0).expect("nonzero basis row"))
        .collect();
    // restriction: column k holds the coordinates of a * b_k
    let mut restricted = vec![vec![0u64; m]; m];
    for (k, b) in basis.iter().enumerate() {
        for (i, &pc) in pivots.iter().enumerate() {
            let v = (0..r).fold(0, |acc, l| fp.add(acc, fp.mul(a[pc][l], b[l])));
            restricted[i][k] = v;
        }
    }
    let poly = charpoly(restricted.clone(), fp);
    let mut spaces = Vec::new();
    let mut total = 0;
    for lambda in 0..fp.0 {
        let value = poly.iter().rev().fold(0, |acc, &c| fp.add(fp.mul(acc, lambda), c));
        if value != 0 {
            continue;
        }
        let shifted: Vec<Vec<u64>> = restricted
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(k, &x)| if i == k { fp.sub(x, lambda) } else { x })
                    .collect()
            })
            .collect();
        let coords = kernel(shifted, fp);
        let vectors: Vec<Vec<u64>> = coords
            .iter()
            .map(|c| {
                (0..r)
                    .map(|l| (0..m).fold(0, |acc, k| fp.add(acc, fp.mul(c[k], basis[k][l]))))
                    .collect()
            })
            .collect();
        total += vectors.len();
        spaces.push(rref(vectors, fp).0);
        if total == m {
            break;
        }
    }
    if total != m {
        return Err(CharacterError::SplitFailure);
    }
    Ok(spaces)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charpoly_of_small_matrices() {
        let fp = Fp(101);
        // [[2,1],[1,2]] -> x^2 - 4x + 3
        assert_eq!(charpoly(vec![vec![2, 1], vec![1, 2]], fp), vec![3, 97, 1]);
        // companion-like 3x3 with zero subdiagonal entries
        let m = vec![vec![1, 2, 3], vec![0, 4, 5], vec![0, 0, 6]];
        // (x-1)(x-4)(x-6) = x^3 - 11x^2 + 34x - 24
        assert_eq!(charpoly(m, fp), vec![101 - 24, 34, 101 - 11, 1]);
        let dense = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
        // (x-2)(x+1)^2 = x^3 - 3x - 2
        assert_eq!(charpoly(dense, fp), vec![99, 98, 0, 1]);
    }

    #[test]
    fn primes_and_roots() {
        assert_eq!(choose_prime(60, 60), Ok(61));
        let p = choose_prime(1320, 7920).unwrap();
        assert_eq!(p % 1320, 1);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(isqrt(7920), 88);
    }
}
