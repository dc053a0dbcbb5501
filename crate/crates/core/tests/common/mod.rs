//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use pauli_cycles::pauli::{Letter, PhasedPauli};
use pauli_cycles::spectral::StateVector;

pub type Mat = Vec<Vec<Complex64>>;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn letter_matrix(l: Letter) -> Mat {
    match l {
        Letter::I => vec![vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(1., 0.)]],
        Letter::X => vec![vec![c(0., 0.), c(1., 0.)], vec![c(1., 0.), c(0., 0.)]],
        Letter::Y => vec![vec![c(0., 0.), c(0., -1.)], vec![c(0., 1.), c(0., 0.)]],
        Letter::Z => vec![vec![c(1., 0.), c(0., 0.)], vec![c(0., 0.), c(-1., 0.)]],
    }
}

pub fn kron(a: &Mat, b: &Mat) -> Mat {
    let (ra, rb) = (a.len(), b.len());
    let mut out = vec![vec![c(0., 0.); ra * rb]; ra * rb];
    for i in 0..ra {
        for j in 0..ra {
            for k in 0..rb {
                for l in 0..rb {
                    out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

pub fn matmul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let mut out = vec![vec![c(0., 0.); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k] == c(0., 0.) {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][k] * b[k][j];
            }
        }
    }
    out
}

pub fn scale(a: &Mat, s: Complex64) -> Mat {
    a.iter()
        .map(|r| r.iter().map(|x| x * s).collect())
        .collect()
}

pub fn add(a: &Mat, b: &Mat) -> Mat {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn max_diff(a: &Mat, b: &Mat) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Matrix of a phased Pauli as a Kronecker product, qubit 1 leftmost.
pub fn pauli_matrix(p: &PhasedPauli) -> Mat {
    let mut m = vec![vec![c(1., 0.)]];
    for l in p.letters() {
        m = kron(&m, &letter_matrix(l));
    }
    scale(&m, p.phase().to_complex())
}

pub fn random_pauli(m: usize, rng: &mut impl Rng) -> PhasedPauli {
    let mask = (1u64 << m) - 1;
    let p = PhasedPauli::from_masks(m, rng.gen::<u64>() & mask, rng.gen::<u64>() & mask);
    p.with_phase(pauli_cycles::pauli::Phase::from_exponent(
        rng.gen_range(0..4),
    ))
}

pub fn random_state(m: usize, rng: &mut impl Rng) -> StateVector {
    let amps = (0..1usize << m)
        .map(|_| c(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect();
    StateVector::normalized(amps).unwrap()
}

/// Eigenvalues of a small Hermitian matrix from the roots of its
/// characteristic polynomial (Faddeev-LeVerrier + Durand-Kerner).
pub fn charpoly_eigenvalues(a: &Mat) -> Vec<f64> {
    let n = a.len();
    // coefficients of det(tI - A) = t^n + c[1] t^{n-1} + ... + c[n]
    let mut coef = vec![c(1., 0.); n + 1];
    let mut mk = vec![vec![c(0., 0.); n]; n];
    let id: Mat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { c(1., 0.) } else { c(0., 0.) })
                .collect()
        })
        .collect();
    for k in 1..=n {
        mk = add(&matmul(a, &mk), &scale(&id, coef[k - 1]));
        let am = matmul(a, &mk);
        let tr: Complex64 = (0..n).map(|i| am[i][i]).sum();
        coef[k] = -tr / k as f64;
    }
    let eval = |z: Complex64| coef.iter().fold(c(0., 0.), |acc, &ck| acc * z + ck);
    let mut roots: Vec<Complex64> = (0..n).map(|k| c(0.4, 0.9).powu(k as u32)).collect();
    for _ in 0..2000 {
        for i in 0..n {
            let mut denom = c(1., 0.);
            for j in 0..n {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
        }
    }
    let mut re: Vec<f64> = roots.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    re
}
