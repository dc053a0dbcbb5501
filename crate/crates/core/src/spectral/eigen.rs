//! Dense Hermitian eigensolver: Householder reduction to a real symmetric
//! tridiagonal matrix followed by implicit QL iterations.
//!
//! The routines are generic over `f64` and `Complex64` so that real
//! symmetric inputs (Pauli sums without an odd number of `Y` letters) take a
//! four times cheaper path.

use std::ops::{AddAssign, MulAssign, SubAssign};

use num_complex::{Complex64, ComplexFloat};

use crate::error::{Error, Result};

const MAX_QL_ITERATIONS: usize = 60;

pub(crate) trait Scalar:
    ComplexFloat<Real = f64> + AddAssign + SubAssign + MulAssign + Send + Sync
{
    fn real(x: f64) -> Self;
}

impl Scalar for f64 {
    fn real(x: f64) -> Self {
        x
    }
}

impl Scalar for Complex64 {
    fn real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
}

/// Eigenvalues in ascending order and, if requested, the matching
/// orthonormal eigenvectors stored column-wise in a row-major `n × n` array.
pub(crate) fn eigh<T: Scalar>(
    mut a: Vec<T>,
    n: usize,
    vectors: bool,
) -> Result<(Vec<f64>, Option<Vec<T>>)> {
    assert_eq!(a.len(), n * n);
    if n == 0 {
        return Ok((Vec::new(), vectors.then(Vec::new)));
    }
    let reflectors = tridiagonalize(&mut a, n);

    let mut d: Vec<f64> = (0..n).map(|k| a[k * n + k].re()).collect();
    let mut off = vec![0.0; n];
    // Unit phases turning the Hermitian tridiagonal into a real one.
    let mut phase = vec![T::one(); n];
    for k in 0..n - 1 {
        let t = a[(k + 1) * n + k];
        let r = t.abs();
        off[k] = r;
        phase[k + 1] = if r > 0.0 {
            phase[k] * t / T::real(r)
        } else {
            phase[k]
        };
    }

    let mut w = vectors.then(|| {
        let mut id = vec![0.0; n * n];
        for k in 0..n {
            id[k * n + k] = 1.0;
        }
        id
    });
    tql(&mut d, &mut off, w.as_deref_mut(), n)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();

    let z = w.map(|w| {
        let mut z = vec![T::zero(); n * n];
        for (col, &src) in order.iter().enumerate() {
            for row in 0..n {
                z[row * n + col] = phase[row] * T::real(w[row * n + src]);
            }
        }
        for (k, v) in reflectors.iter().enumerate().rev() {
            apply_reflector(&mut z, n, k + 1, v);
        }
        z
    });
    Ok((values, z))
}

/// Reduces `a` in place to Hermitian tridiagonal form and returns the
/// Householder vectors; the vector at index `k` acts on rows `k+1..n`.
fn tridiagonalize<T: Scalar>(a: &mut [T], n: usize) -> Vec<Vec<T>> {
    let mut reflectors = Vec::new();
    let mut p = vec![T::zero(); n];
    for k in 0..n.saturating_sub(2) {
        let len = n - k - 1;
        let sigma = (k + 1..n)
            .map(|r| a[r * n + k].abs().powi(2))
            .sum::<f64>()
            .sqrt();
        let x0 = a[(k + 1) * n + k];
        let tail = sigma * sigma - x0.abs().powi(2);
        if sigma == 0.0 || tail <= f64::EPSILON * sigma * sigma * 1e-4 {
            // Column is already reduced.
            reflectors.push(vec![T::zero(); len]);
            continue;
        }
        let unit = if x0.abs() > 0.0 {
            x0 / T::real(x0.abs())
        } else {
            T::one()
        };
        let alpha = -(unit * T::real(sigma));
        let mut v: Vec<T> = (k + 1..n).map(|r| a[r * n + k]).collect();
        v[0] -= alpha;
        let vnorm = v.iter().map(|t| t.abs().powi(2)).sum::<f64>().sqrt();
        for t in v.iter_mut() {
            *t = *t / T::real(vnorm);
        }

        // Trailing block B := (I - 2vv*) B (I - 2vv*) as B - v w* - w v*.
        for (i, pi) in p.iter_mut().enumerate().take(len) {
            let row = (k + 1 + i) * n + k + 1;
            let mut s = T::zero();
            for j in 0..len {
                s += a[row + j] * v[j];
            }
            *pi = T::real(2.0) * s;
        }
        let mut kappa = T::zero();
        for j in 0..len {
            kappa += v[j].conj() * p[j];
        }
        let kappa = T::real(kappa.re());
        for j in 0..len {
            p[j] -= kappa * v[j];
        }
        for i in 0..len {
            let row = (k + 1 + i) * n + k + 1;
            let (vi, wi) = (v[i], p[i]);
            for j in 0..len {
                a[row + j] -= vi * p[j].conj() + wi * v[j].conj();
            }
        }

        a[(k + 1) * n + k] = alpha;
        a[k * n + k + 1] = alpha.conj();
        for r in k + 2..n {
            a[r * n + k] = T::zero();
            a[k * n + r] = T::zero();
        }
        reflectors.push(v);
    }
    reflectors
}

/// `z[offset.., :] := (I - 2vv*) z[offset.., :]`.
fn apply_reflector<T: Scalar>(z: &mut [T], n: usize, offset: usize, v: &[T]) {
    if v.iter().all(|t| t.abs() == 0.0) {
        return;
    }
    let mut s = vec![T::zero(); n];
    for (i, vi) in v.iter().enumerate() {
        let c = vi.conj();
        let row = &z[(offset + i) * n..(offset + i + 1) * n];
        for (sj, &zj) in s.iter_mut().zip(row) {
            *sj += c * zj;
        }
    }
    for (i, &vi) in v.iter().enumerate() {
        let f = T::real(2.0) * vi;
        let row = &mut z[(offset + i) * n..(offset + i + 1) * n];
        for (zj, &sj) in row.iter_mut().zip(&s) {
            *zj -= f * sj;
        }
    }
}

/// Implicit QL with Wilkinson-style shifts on the symmetric tridiagonal
/// matrix with diagonal `d` and sub-diagonal `e` (`e[n-1]` ignored).
/// Rotations are accumulated into the columns of `z` when given.
///
/// Off-diagonals are dropped once they fall below `ε‖T‖` as well as below
/// `ε(|d_m| + |d_{m+1}|)`. The relative test alone stalls on large clusters
/// of roundoff-sized eigenvalues (big null spaces of sparse Pauli sums).
fn tql(d: &mut [f64], e: &mut [f64], mut z: Option<&mut [f64]>, n: usize) -> Result<()> {
    if n > 0 {
        e[n - 1] = 0.0;
    }
    let norm = (0..n)
        .map(|k| d[k].abs() + e[k].abs() + if k > 0 { e[k - 1].abs() } else { 0.0 })
        .fold(0.0, f64::max);
    let floor = f64::EPSILON * norm;
    for l in 0..n {
        let mut iterations = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd || e[m].abs() <= floor {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > MAX_QL_ITERATIONS {
                return Err(Error::NoConvergence(MAX_QL_ITERATIONS));
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some(z) = z.as_deref_mut() {
                    for k in 0..n {
                        let zk = &mut z[k * n..(k + 1) * n];
                        let f = zk[i + 1];
                        zk[i + 1] = s * zk[i] + c * f;
                        zk[i] = c * zk[i] - s * f;
                    }
                }
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(a: &[Complex64], n: usize, values: &[f64], z: &[Complex64]) -> f64 {
        let mut worst: f64 = 0.0;
        for (col, &lam) in values.iter().enumerate() {
            for row in 0..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += a[row * n + k] * z[k * n + col];
                }
                worst = worst.max((s - lam * z[row * n + col]).norm());
            }
        }
        worst
    }

    #[test]
    fn diagonal_and_pauli_y() {
        let (vals, _) = eigh(vec![3.0, 0.0, 0.0, -1.0], 2, false).unwrap();
        assert_eq!(vals, vec![-1.0, 3.0]);
        let i = Complex64::i();
        let y = vec![Complex64::new(0.0, 0.0), -i, i, Complex64::new(0.0, 0.0)];
        let (vals, z) = eigh(y.clone(), 2, true).unwrap();
        assert!((vals[0] + 1.0).abs() < 1e-14 && (vals[1] - 1.0).abs() < 1e-14);
        assert!(residual(&y, 2, &vals, &z.unwrap()) < 1e-14);
    }

    #[test]
    fn large_null_space_converges() {
        // Sum of a few disjoint transposition-like blocks: rank 8 in dimension 128.
        let n = 128;
        let mut a = vec![0.0; n * n];
        for k in 0..8 {
            let (i, j) = (k * 16 + 3, k * 16 + 11);
            a[i * n + j] = 1.0 + k as f64;
            a[j * n + i] = 1.0 + k as f64;
        }
        let (vals, z) = eigh(a.clone(), n, true).unwrap();
        let z = z.unwrap();
        let nonzero = vals.iter().filter(|v| v.abs() > 1e-12).count();
        assert_eq!(nonzero, 16);
        let c: Vec<Complex64> = a.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        let zc: Vec<Complex64> = z.iter().map(|&x| Complex64::new(x, 0.0)).collect();
        assert!(residual(&c, n, &vals, &zc) < 1e-12);
    }

    #[test]
    fn random_hermitian_residuals() {
        let mut seed = 0x2545_f491_4f6c_dd1du64;
        let mut next = || {
            seed ^= seed << 13;
            seed ^= seed >> 7;
            seed ^= seed << 17;
            (seed >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        };
        for n in [1, 3, 6, 17] {
            let mut a = vec![Complex64::new(0.0, 0.0); n * n];
            for r in 0..n {
                a[r * n + r] = Complex64::new(next(), 0.0);
                for c in r + 1..n {
                    let v = Complex64::new(next(), next());
                    a[r * n + c] = v;
                    a[c * n + r] = v.conj();
                }
            }
            let (vals, z) = eigh(a.clone(), n, true).unwrap();
            let z = z.unwrap();
            assert!(vals.windows(2).all(|w| w[0] <= w[1]));
            assert!(residual(&a, n, &vals, &z) < 1e-12);
            let trace: f64 = (0..n).map(|k| a[k * n + k].re).sum();
            assert!((trace - vals.iter().sum::<f64>()).abs() < 1e-12);
        }
    }
}
