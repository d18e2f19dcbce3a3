//! Real-group geometry of GL(n,R)^1: the Cartan projection X(g), the
//! distance function L(g) = log(tr(g g^T)/n), the Iwasawa projection H_0,
//! the Weyl discriminant, the clamped root-distance product Delta^-, and
//! the norm |g| = e^{||X(g)||}.
//!
//! The inequalities relating these quantities carry implied constants in
//! their statements; the property suites assert boundedness and fitted
//! positivity over seeded random samples, never specific values.

use nalgebra::{DMatrix, DVector};
use num::complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ArchGeoError {
    #[error("matrix is singular or not normalizable")]
    Singular,
    #[error("eigenvalue clustering is ill-conditioned: smallest gap {gap:e} near tolerance {tol:e}")]
    IllConditionedClustering { gap: f64, tol: f64 },
    #[error("dimension mismatch")]
    Dimension,
}

/// An element of GL(n,R)^1: real n x n matrix normalized to |det| = 1.
#[derive(Debug, Clone)]
pub struct GroupMatrix {
    mat: DMatrix<f64>,
}

impl GroupMatrix {
    /// Normalize an invertible matrix into GL(n,R)^1 by scaling away the
    /// determinant modulus.
    pub fn new(mat: DMatrix<f64>) -> Result<Self, ArchGeoError> {
        assert_eq!(mat.nrows(), mat.ncols());
        let det = mat.determinant();
        if det == 0.0 || !det.is_finite() {
            return Err(ArchGeoError::Singular);
        }
        let n = mat.nrows();
        let scale = det.abs().powf(-1.0 / n as f64);
        let normalized = &mat * scale;
        Ok(GroupMatrix { mat: normalized })
    }

    pub fn identity(n: usize) -> Self {
        GroupMatrix {
            mat: DMatrix::identity(n, n),
        }
    }

    pub fn from_diagonal(d: &[f64]) -> Result<Self, ArchGeoError> {
        GroupMatrix::new(DMatrix::from_diagonal(&DVector::from_row_slice(d)))
    }

    /// Build from row-major entries.
    pub fn from_rows(n: usize, entries: &[f64]) -> Result<Self, ArchGeoError> {
        if entries.len() != n * n {
            return Err(ArchGeoError::Dimension);
        }
        GroupMatrix::new(DMatrix::from_row_slice(n, n, entries))
    }

    pub fn n(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.mat
    }

    pub fn multiply(&self, other: &GroupMatrix) -> GroupMatrix {
        GroupMatrix {
            mat: &self.mat * &other.mat,
        }
    }

    pub fn inverse(&self) -> Result<GroupMatrix, ArchGeoError> {
        self.mat
            .clone()
            .try_inverse()
            .map(|m| GroupMatrix { mat: m })
            .ok_or(ArchGeoError::Singular)
    }
}

/// The Cartan projection: sorted logarithms of the singular values,
/// weakly decreasing and summing to zero. ||X(g)|| = 0 iff g is
/// orthogonal.
#[derive(Debug, Clone, PartialEq)]
pub struct CartanVector(pub Vec<f64>);

impl CartanVector {
    pub fn norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

pub fn cartan_x(g: &GroupMatrix) -> Result<CartanVector, ArchGeoError> {
    let svd = g.mat.clone().svd(false, false);
    let mut logs: Vec<f64> = svd
        .singular_values
        .iter()
        .map(|&s| if s <= 0.0 { f64::NEG_INFINITY } else { s.ln() })
        .collect();
    if logs.iter().any(|x| !x.is_finite()) {
        return Err(ArchGeoError::Singular);
    }
    logs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    // singular values of a |det|=1 matrix multiply to 1; project the
    // rounding remainder away
    let mean = logs.iter().sum::<f64>() / logs.len() as f64;
    for x in logs.iter_mut() {
        *x -= mean;
    }
    Ok(CartanVector(logs))
}

/// L(g) = log(tr(g g^T)/n) >= 0, with equality exactly on K = O(n).
pub fn ell(g: &GroupMatrix) -> f64 {
    let n = g.n() as f64;
    let tr = (g.matrix() * g.matrix().transpose()).trace();
    (tr / n).ln()
}

/// Iwasawa projection to the torus part: g = t u k with t positive
/// diagonal, u unipotent upper triangular, k orthogonal; returns log t
/// projected to trace zero.
pub fn iwasawa_h0(g: &GroupMatrix) -> Vec<f64> {
    // g g^T = (t u)(t u)^T; the upper-triangular factor b = t u is the
    // reverse-order Cholesky factor of g g^T
    let n = g.n();
    let mut s = g.matrix() * g.matrix().transpose();
    let mut diag = vec![0.0f64; n];
    for j in (0..n).rev() {
        let d = s[(j, j)].max(f64::MIN_POSITIVE).sqrt();
        diag[j] = d;
        for i in 0..j {
            s[(i, j)] /= d;
        }
        for i in 0..j {
            for k in 0..j {
                let v = s[(i, j)] * s[(k, j)];
                s[(i, k)] -= v;
            }
        }
    }
    let mut h: Vec<f64> = diag.iter().map(|d| d.ln()).collect();
    let mean = h.iter().sum::<f64>() / n as f64;
    for x in h.iter_mut() {
        *x -= mean;
    }
    h
}

/// |D^G(g)|: the Weyl discriminant prod over clustered-distinct
/// eigenvalue pairs of |1 - r_i / r_j|^{m_i m_j}. The clustering
/// tolerance is explicit; near-degenerate inputs are refused because the
/// map is discontinuous where the singularity type changes.
pub fn weyl_disc_real(g: &GroupMatrix, cluster_tol: f64) -> Result<f64, ArchGeoError> {
    let eigs = complex_eigenvalues(g.matrix());
    let mut reps: Vec<(Complex64, usize)> = Vec::new();
    for e in eigs.iter() {
        let mut found = false;
        for (r, m) in reps.iter_mut() {
            if (e - *r).norm() <= cluster_tol {
                *m += 1;
                found = true;
                break;
            }
        }
        if !found {
            reps.push((*e, 1));
        }
    }
    // refuse when distinct representatives sit uncomfortably close to the
    // clustering threshold
    for i in 0..reps.len() {
        for j in i + 1..reps.len() {
            let gap = (reps[i].0 - reps[j].0).norm();
            if gap <= 10.0 * cluster_tol {
                return Err(ArchGeoError::IllConditionedClustering {
                    gap,
                    tol: cluster_tol,
                });
            }
        }
    }
    let mut acc = 1.0f64;
    for i in 0..reps.len() {
        for j in 0..reps.len() {
            if i == j {
                continue;
            }
            let ratio = reps[i].0 / reps[j].0;
            acc *= (Complex64::new(1.0, 0.0) - ratio)
                .norm()
                .powi((reps[i].1 * reps[j].1) as i32);
        }
    }
    Ok(acc)
}

/// Default clustering tolerance: 1e-8 times the operator scale of g.
pub fn default_cluster_tol(g: &GroupMatrix) -> f64 {
    let scale = g.matrix().iter().map(|x| x.abs()).fold(0.0, f64::max);
    1e-8 * scale.max(1.0)
}

pub fn complex_eigenvalues(m: &DMatrix<f64>) -> Vec<Complex64> {
    let cm = m.map(|x| Complex64::new(x, 0.0));
    match cm.clone().eigenvalues() {
        Some(v) => v.iter().copied().collect(),
        None => {
            let schur = nalgebra::Schur::new(cm);
            schur.unpack().1.diagonal().iter().copied().collect()
        }
    }
}

/// Delta^-(gamma_s) = prod over ordered pairs i != j with r_i != r_j of
/// max(1, |1 - r_i/r_j|^{-1}); at least 1, permutation invariant, and
/// invariant under simultaneous inversion of all eigenvalues.
pub fn delta_minus(eigenvalues: &[Complex64]) -> f64 {
    let mut acc = 1.0f64;
    for (i, a) in eigenvalues.iter().enumerate() {
        for (j, b) in eigenvalues.iter().enumerate() {
            if i == j || a == b {
                continue;
            }
            let d = (Complex64::new(1.0, 0.0) - a / b).norm();
            if d > 0.0 && d < 1.0 {
                acc *= 1.0 / d;
            }
        }
    }
    acc
}

/// |g| = e^{||X(g)||}; at least 1, symmetric under inversion, and
/// submultiplicative.
pub fn group_norm(g: &GroupMatrix) -> Result<f64, ArchGeoError> {
    Ok(cartan_x(g)?.norm().exp())
}

/// Membership of a point in the convex hull of the Weyl (permutation)
/// orbit of x: for type A this is exactly the majorization criterion
/// (equal sums and dominated sorted partial sums), checked to tolerance.
pub fn in_permutohedron(point: &[f64], x: &[f64], tol: f64) -> bool {
    if point.len() != x.len() {
        return false;
    }
    let sum_p: f64 = point.iter().sum();
    let sum_x: f64 = x.iter().sum();
    if (sum_p - sum_x).abs() > tol {
        return false;
    }
    let mut ps = point.to_vec();
    let mut xs = x.to_vec();
    ps.sort_by(|a, b| b.partial_cmp(a).unwrap());
    xs.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut accp = 0.0;
    let mut accx = 0.0;
    for i in 0..ps.len() {
        accp += ps[i];
        accx += xs[i];
        if accp > accx + tol {
            return false;
        }
    }
    true
}

/// Seeded sampler of bounded elements of GL(n,R)^1 and of Haar-random
/// orthogonal matrices (QR of a Gaussian draw with sign fixing).
pub struct MatrixSampler {
    rng: ChaCha8Rng,
    n: usize,
    scale: f64,
}

impl MatrixSampler {
    pub fn new(n: usize, scale: f64, seed: u64) -> Self {
        MatrixSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            n,
            scale,
        }
    }

    pub fn next_matrix(&mut self) -> GroupMatrix {
        loop {
            let m = DMatrix::from_fn(self.n, self.n, |_, _| {
                self.rng.gen_range(-self.scale..self.scale)
            });
            if m.determinant().abs() > 1e-6 {
                return GroupMatrix::new(m).unwrap();
            }
        }
    }

    pub fn next_gaussian(&mut self) -> f64 {
        let u1: f64 = self.rng.gen_range(1e-12..1.0);
        let u2: f64 = self.rng.gen_range(0.0..std::f64::consts::TAU);
        (-2.0 * u1.ln()).sqrt() * u2.cos()
    }

    pub fn next_orthogonal(&mut self) -> GroupMatrix {
        let m = DMatrix::from_fn(self.n, self.n, |_, _| self.next_gaussian());
        let qr = m.qr();
        let mut q = qr.q();
        let r = qr.r();
        // sign fixing makes the draw Haar and the map deterministic
        for j in 0..self.n {
            if r[(j, j)] < 0.0 {
                for i in 0..self.n {
                    q[(i, j)] = -q[(i, j)];
                }
            }
        }
        GroupMatrix::new(q).unwrap()
    }
}
