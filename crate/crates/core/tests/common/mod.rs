#![allow(clippy::needless_range_loop)]

//! Reference implementations used as oracles. These use plain nested vectors
//! and textbook formulas and share no code with the library kernels.
#![allow(dead_code)]

use num_complex::Complex64;
use qcapulse::{ComplexMatrix, Unitary};
use rand::Rng;

pub type Dense = Vec<Vec<Complex64>>;

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn eye(dim: usize) -> Dense {
    (0..dim)
        .map(|i| (0..dim).map(|j| if i == j { c(1.0, 0.0) } else { c(0.0, 0.0) }).collect())
        .collect()
}

pub fn sx() -> Dense {
    vec![vec![c(0.0, 0.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.0)]]
}

pub fn sy() -> Dense {
    vec![vec![c(0.0, 0.0), c(0.0, -1.0)], vec![c(0.0, 1.0), c(0.0, 0.0)]]
}

pub fn sz() -> Dense {
    vec![vec![c(1.0, 0.0), c(0.0, 0.0)], vec![c(0.0, 0.0), c(-1.0, 0.0)]]
}

pub fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn add(a: &Dense, b: &Dense) -> Dense {
    a.iter()
        .zip(b)
        .map(|(r, s)| r.iter().zip(s).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn scale(a: &Dense, k: Complex64) -> Dense {
    a.iter().map(|r| r.iter().map(|x| x * k).collect()).collect()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (n, m) = (a.len(), b.len());
    let mut out = vec![vec![c(0.0, 0.0); n * m]; n * m];
    for i in 0..n {
        for j in 0..n {
            for k in 0..m {
                for l in 0..m {
                    out[i * m + k][j * m + l] = a[i][j] * b[k][l];
                }
            }
        }
    }
    out
}

/// `op` on cell `site` of `n` cells, counted from the left.
pub fn on_site(op: &Dense, site: usize, n: usize) -> Dense {
    let id = eye(op.len());
    let mut out = eye(1);
    for s in 1..=n {
        out = kron(&out, if s == site { op } else { &id });
    }
    out
}

pub fn to_matrix(a: &Dense) -> ComplexMatrix {
    ComplexMatrix::from_rows(a).unwrap()
}

pub fn to_unitary(a: &Dense) -> Unitary {
    Unitary::new(to_matrix(a)).unwrap()
}

pub fn from_matrix(m: &ComplexMatrix) -> Dense {
    let d = m.dim();
    (0..d).map(|i| (0..d).map(|j| m[(i, j)]).collect()).collect()
}

pub fn max_diff(a: &Dense, b: &Dense) -> f64 {
    a.iter()
        .flatten()
        .zip(b.iter().flatten())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

fn one_norm(a: &Dense) -> f64 {
    (0..a.len())
        .map(|j| a.iter().map(|r| r[j].norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `exp(-i s H)` by a 60-term Taylor series after scaling by `2^-k` so the
/// argument has 1-norm below 1/2, followed by `k` squarings.
pub fn taylor_expm(h: &Dense, s: f64) -> Dense {
    let a = scale(h, c(0.0, -s));
    let norm = one_norm(&a);
    let mut k = 0;
    while norm / 2f64.powi(k) > 0.5 {
        k += 1;
    }
    let a = scale(&a, c(2f64.powi(-k), 0.0));
    let mut term = eye(h.len());
    let mut sum = eye(h.len());
    for j in 1..=60 {
        term = scale(&mul(&term, &a), c(1.0 / j as f64, 0.0));
        sum = add(&sum, &term);
    }
    for _ in 0..k {
        sum = mul(&sum, &sum);
    }
    sum
}

pub fn random_hermitian(rng: &mut impl Rng, dim: usize, spread: f64) -> Dense {
    let mut h = vec![vec![c(0.0, 0.0); dim]; dim];
    for i in 0..dim {
        h[i][i] = c(rng.gen_range(-spread..spread), 0.0);
        for j in i + 1..dim {
            let z = c(rng.gen_range(-spread..spread), rng.gen_range(-spread..spread));
            h[i][j] = z;
            h[j][i] = z.conj();
        }
    }
    h
}

/// Random unitary from the Taylor oracle applied to a random Hermitian matrix.
pub fn random_unitary(rng: &mut impl Rng, dim: usize) -> Unitary {
    let h = random_hermitian(rng, dim, 2.0);
    to_unitary(&taylor_expm(&h, 1.0))
}

/// Line Hamiltonian assembled as a sum of embedded Pauli terms.
pub fn line_hamiltonian(couplings: &[f64], e0: f64, gammas: &[f64], biases: &[f64], xs: &[f64]) -> Dense {
    let n = couplings.len() + 1;
    let dim = 1 << n;
    let mut h = vec![vec![c(0.0, 0.0); dim]; dim];
    for i in 1..n {
        let zz = mul(&on_site(&sz(), i, n), &on_site(&sz(), i + 1, n));
        h = add(&h, &scale(&zz, c(-couplings[i - 1], 0.0)));
    }
    for i in 1..=n {
        let g = gammas.get(i - 1).copied().unwrap_or(0.0) + xs.get(i - 1).copied().unwrap_or(0.0);
        h = add(&h, &scale(&on_site(&sx(), i, n), c(-g, 0.0)));
        let p = biases.get(i - 1).copied().unwrap_or(0.0);
        h = add(&h, &scale(&on_site(&sz(), i, n), c(e0 * p, 0.0)));
    }
    h
}

/// `cos a I + i sin a sigma` on a single cell.
pub fn rot(sigma: &Dense, a: f64) -> Dense {
    add(&scale(&eye(2), c(a.cos(), 0.0)), &scale(sigma, c(0.0, a.sin())))
}

/// `exp(i a Z Z)` on two cells, written out as a diagonal.
pub fn zz_rot(a: f64) -> Dense {
    let mut m = eye(4);
    for (k, s) in [1.0, -1.0, -1.0, 1.0].iter().enumerate() {
        m[k][k] = Complex64::from_polar(1.0, a * s);
    }
    m
}

/// CNOT on cells `(control, control + 1)` as a permutation of basis states.
pub fn cnot_permutation(n: usize, control: usize) -> Dense {
    let dim = 1 << n;
    let cbit = n - control;
    let tbit = n - control - 1;
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for b in 0..dim {
        let image = if (b >> cbit) & 1 == 1 { b ^ (1 << tbit) } else { b };
        m[image][b] = c(1.0, 0.0);
    }
    m
}

/// `|| a - e^{i phi} b ||` with `phi = arg tr(b^dagger a)`, the norm taken by
/// power iteration on `D^dagger D`.
pub fn phase_aligned_distance(a: &Dense, b: &Dense) -> f64 {
    let overlap: Complex64 = a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| y.conj() * x).sum();
    let phase = if overlap.norm() > 0.0 { overlap / overlap.norm() } else { c(1.0, 0.0) };
    let d = add(a, &scale(b, -phase));
    largest_singular_value(&d)
}

/// Square root of the top eigenvalue of `D^dagger D`: the matrix is squared
/// repeatedly so its dominant column isolates the top eigenvector, which is
/// then evaluated with a Rayleigh quotient.
pub fn largest_singular_value(d: &Dense) -> f64 {
    let n = d.len();
    let dh: Dense = (0..n).map(|i| (0..n).map(|j| d[j][i].conj()).collect()).collect();
    let g = mul(&dh, d);
    let frob = |m: &Dense| m.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    if frob(&g) == 0.0 {
        return 0.0;
    }
    let mut p = g.clone();
    for _ in 0..12 {
        p = mul(&p, &p);
        let f = frob(&p);
        p = scale(&p, c(1.0 / f, 0.0));
    }
    let col = (0..n)
        .max_by(|&a, &b| {
            let na: f64 = p.iter().map(|r| r[a].norm_sqr()).sum();
            let nb: f64 = p.iter().map(|r| r[b].norm_sqr()).sum();
            na.total_cmp(&nb)
        })
        .unwrap();
    let v: Vec<Complex64> = p.iter().map(|r| r[col]).collect();
    let gv: Vec<Complex64> = (0..n).map(|i| (0..n).map(|j| g[i][j] * v[j]).sum()).collect();
    let num: Complex64 = v.iter().zip(&gv).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = v.iter().map(|z| z.norm_sqr()).sum();
    (num.re / den).sqrt()
}
