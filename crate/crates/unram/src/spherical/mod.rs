//! Archimedean harmonic analysis on GL(n,R)^1: elementary spherical
//! functions by quadrature over K, the Harish-Chandra c-function, the
//! spherical Plancherel density |c|^{-2}, the Weyl main-term integral,
//! and an empirical audit of the uniform decay bound
//! |phi_lambda(g)| << (1 + ||lambda|| ||X(g)||)^{-1/2}.

mod gamma;

pub use gamma::gamma as complex_gamma;

use num::complex::Complex64;

use crate::archgeo::{cartan_x, iwasawa_h0, GroupMatrix, MatrixSampler};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SphericalError {
    #[error("spectral parameter must sum to zero, got {0}")]
    NotTraceless(f64),
    #[error("lambda is too close to a pole of the Gamma factors (distance {0:e})")]
    PoleProximity(f64),
    #[error("quadrature tolerance {target:e} unmet at node budget: achieved {achieved:e}")]
    ToleranceUnmet { target: f64, achieved: f64 },
    #[error("quadrature failed: {0}")]
    QuadratureFailed(String),
}

/// A point of i a^*: lambda = i * coords with sum(coords) = 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralParam {
    coords: Vec<f64>,
}

impl SpectralParam {
    pub fn new(coords: Vec<f64>) -> Result<Self, SphericalError> {
        let s: f64 = coords.iter().sum();
        if s.abs() > 1e-9 * (1.0 + coords.iter().map(|x| x.abs()).fold(0.0, f64::max)) {
            return Err(SphericalError::NotTraceless(s));
        }
        Ok(SpectralParam { coords })
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn norm(&self) -> f64 {
        self.coords.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn permuted(&self, perm: &[usize]) -> SpectralParam {
        SpectralParam {
            coords: perm.iter().map(|&i| self.coords[i]).collect(),
        }
    }
}

/// Quadrature plan for integrals over K = O(n).
#[derive(Debug, Clone)]
pub enum QuadratureSpec {
    /// Product-angle parametrization with the explicit Haar Jacobian;
    /// supported for n <= 3.
    ProductAngles { nodes: usize, tolerance: f64 },
    /// Haar-random orthogonal sampling (QR of Gaussian matrices with sign
    /// fixing), deterministic given the seed; any n.
    MonteCarlo {
        nodes: usize,
        seed: u64,
        tolerance: f64,
    },
}

impl QuadratureSpec {
    pub fn tolerance(&self) -> f64 {
        match self {
            QuadratureSpec::ProductAngles { tolerance, .. } => *tolerance,
            QuadratureSpec::MonteCarlo { tolerance, .. } => *tolerance,
        }
    }
}

/// rho = ((n-1)/2, (n-3)/2, ..., -(n-1)/2).
pub fn half_sum_positive_roots(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| (n as f64 - 1.0) / 2.0 - i as f64)
        .collect()
}

/// Integrand of the spherical function at a fixed k: e^{<i l + rho,
/// H_0(k g)>}.
fn spherical_integrand(l: &[f64], rho: &[f64], k: &GroupMatrix, g: &GroupMatrix) -> Complex64 {
    let h = iwasawa_h0(&k.multiply(g));
    let mut re = 0.0;
    let mut im = 0.0;
    for ((hv, rv), lv) in h.iter().zip(rho.iter()).zip(l.iter()) {
        re += rv * hv;
        im += lv * hv;
    }
    Complex64::new(re.exp(), 0.0) * Complex64::new(0.0, im).exp()
}

fn so2(theta: f64) -> GroupMatrix {
    GroupMatrix::new(nalgebra::DMatrix::from_row_slice(
        2,
        2,
        &[theta.cos(), -theta.sin(), theta.sin(), theta.cos()],
    ))
    .unwrap()
}

fn reflection2() -> GroupMatrix {
    GroupMatrix::new(nalgebra::DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])).unwrap()
}

fn so3_euler(alpha: f64, beta: f64, gamma_angle: f64) -> GroupMatrix {
    let rz = |t: f64| {
        nalgebra::DMatrix::from_row_slice(
            3,
            3,
            &[t.cos(), -t.sin(), 0.0, t.sin(), t.cos(), 0.0, 0.0, 0.0, 1.0],
        )
    };
    let ry = |t: f64| {
        nalgebra::DMatrix::from_row_slice(
            3,
            3,
            &[t.cos(), 0.0, t.sin(), 0.0, 1.0, 0.0, -t.sin(), 0.0, t.cos()],
        )
    };
    GroupMatrix::new(rz(alpha) * ry(beta) * rz(gamma_angle)).unwrap()
}

/// phi_lambda(g) = integral over K of e^{<lambda + rho, H_0(kg)>} dk,
/// with an error estimate from node doubling. Refuses when the estimate
/// misses the requested tolerance at the node budget.
pub fn spherical_phi(
    lambda: &SpectralParam,
    g: &GroupMatrix,
    spec: &QuadratureSpec,
) -> Result<(Complex64, f64), SphericalError> {
    let n = g.n();
    if lambda.rank() != n {
        return Err(SphericalError::QuadratureFailed(
            "rank mismatch between lambda and g".into(),
        ));
    }
    match spec {
        QuadratureSpec::ProductAngles { nodes, tolerance } => {
            if n > 3 {
                return Err(SphericalError::QuadratureFailed(
                    "product angles supported for n <= 3; use Monte Carlo".into(),
                ));
            }
            let coarse = product_angle_integral(lambda, g, *nodes);
            let fine = product_angle_integral(lambda, g, nodes * 2);
            let err = (fine - coarse).norm();
            if err > *tolerance {
                return Err(SphericalError::ToleranceUnmet {
                    target: *tolerance,
                    achieved: err,
                });
            }
            Ok((fine, err))
        }
        QuadratureSpec::MonteCarlo {
            nodes,
            seed,
            tolerance,
        } => {
            let rho = half_sum_positive_roots(n);
            let mut sampler = MatrixSampler::new(n, 1.0, *seed);
            let mut acc = Complex64::new(0.0, 0.0);
            let mut acc_half = Complex64::new(0.0, 0.0);
            for i in 0..*nodes {
                let k = sampler.next_orthogonal();
                let v = spherical_integrand(lambda.coords(), &rho, &k, g);
                acc += v;
                if i % 2 == 0 {
                    acc_half += v;
                }
            }
            let full = acc / *nodes as f64;
            let half = acc_half / ((*nodes).div_ceil(2)) as f64;
            let err = (full - half).norm();
            if err > *tolerance {
                return Err(SphericalError::ToleranceUnmet {
                    target: *tolerance,
                    achieved: err,
                });
            }
            Ok((full, err))
        }
    }
}

fn product_angle_integral(lambda: &SpectralParam, g: &GroupMatrix, nodes: usize) -> Complex64 {
    let n = g.n();
    let rho = half_sum_positive_roots(n);
    let l = lambda.coords();
    match n {
        2 => {
            // O(2): average the rotation component and the reflected one
            let mut acc = Complex64::new(0.0, 0.0);
            let refl = reflection2();
            for i in 0..nodes {
                let theta = std::f64::consts::TAU * i as f64 / nodes as f64;
                let k = so2(theta);
                acc += spherical_integrand(l, &rho, &k, g);
                acc += spherical_integrand(l, &rho, &refl.multiply(&k), g);
            }
            acc / (2.0 * nodes as f64)
        }
        3 => {
            // SO(3) Euler angles ZYZ with Haar density sin(beta)/(8 pi^2);
            // O(3) = SO(3) x {+-1} and -1 acts trivially on H_0
            let na = nodes;
            let nb = nodes / 2 + 1;
            let mut acc = Complex64::new(0.0, 0.0);
            let mut weight_total = 0.0;
            for ia in 0..na {
                let alpha = std::f64::consts::TAU * ia as f64 / na as f64;
                for ib in 0..nb {
                    // midpoint rule in beta keeps the weight positive
                    let beta = std::f64::consts::PI * (ib as f64 + 0.5) / nb as f64;
                    let w = beta.sin();
                    for ic in 0..na {
                        let gamma_angle = std::f64::consts::TAU * ic as f64 / na as f64;
                        let k = so3_euler(alpha, beta, gamma_angle);
                        acc += spherical_integrand(l, &rho, &k, g) * w;
                        weight_total += w;
                    }
                }
            }
            acc / weight_total
        }
        _ => unreachable!("guarded by caller"),
    }
}

/// Harish-Chandra c-function: pi^{|Phi+|/2} prod_{i<j}
/// Gamma(a/2) / Gamma((a+1)/2) with a = lambda_i - lambda_j, for a
/// complexified spectral parameter. Refuses near the Gamma poles.
pub fn c_function(lambda: &[Complex64]) -> Result<Complex64, SphericalError> {
    let n = lambda.len();
    let num_roots = n * (n - 1) / 2;
    let mut acc = Complex64::new(std::f64::consts::PI, 0.0).powf(num_roots as f64 / 2.0);
    for i in 0..n {
        for j in i + 1..n {
            let a = (lambda[i] - lambda[j]) / 2.0;
            // poles of Gamma(a) at non-positive integers
            let dist = if a.im.abs() < 0.25 && a.re < 0.25 {
                (a.re - a.re.round()).hypot(a.im)
            } else {
                1.0
            };
            if dist < 1e-8 {
                return Err(SphericalError::PoleProximity(dist));
            }
            acc *= complex_gamma(a) / complex_gamma(a + Complex64::new(0.5, 0.0));
        }
    }
    Ok(acc)
}

/// The spherical Plancherel density |c(i l)|^{-2} for a real sum-zero l.
pub fn plancherel_density(l: &[f64]) -> Result<f64, SphericalError> {
    let lam: Vec<Complex64> = l.iter().map(|&x| Complex64::new(0.0, x)).collect();
    let c = c_function(&lam)?;
    let ns = c.norm_sqr();
    if ns == 0.0 || !ns.is_finite() {
        return Err(SphericalError::QuadratureFailed(
            "c-function vanished or overflowed".into(),
        ));
    }
    Ok(1.0 / ns)
}

/// (2/|W|) integral over the ball of radius t*omega in i a^* of
/// |c(lambda)|^{-2}, with the global lattice-volume factor as an external
/// configuration constant (default 1). Walls are removable zeros of the
/// density and are skipped by construction of the grids.
pub fn weyl_main_term(
    omega: f64,
    t: f64,
    n: usize,
    volume_factor: f64,
) -> Result<f64, SphericalError> {
    let radius = t * omega;
    let w_order: f64 = (1..=n).map(|k| k as f64).product();
    let value = match n {
        2 => {
            // lambda = i nu (e1 - e2)/sqrt(2) * ... : parametrize by the
            // coordinate x along the unit sum-zero direction
            let m = 4001usize;
            let h = 2.0 * radius / (m - 1) as f64;
            let mut acc = 0.0;
            for i in 0..m {
                let x = -radius + i as f64 * h;
                let l = [x / 2f64.sqrt(), -x / 2f64.sqrt()];
                let d = plancherel_density(&l).unwrap_or(0.0);
                let w = if i == 0 || i == m - 1 { 0.5 } else { 1.0 };
                acc += d * w;
            }
            acc * h
        }
        3 => {
            // 2d polar grid on the sum-zero plane with orthonormal basis
            let e1 = [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0];
            let e2 = [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()];
            let nr = 400usize;
            let na = 96usize;
            let mut acc = 0.0;
            for ir in 0..nr {
                let r = radius * (ir as f64 + 0.5) / nr as f64;
                let dr = radius / nr as f64;
                for ia in 0..na {
                    let th = std::f64::consts::TAU * ia as f64 / na as f64;
                    let (c, s) = (th.cos(), th.sin());
                    let l = [
                        r * (c * e1[0] + s * e2[0]),
                        r * (c * e1[1] + s * e2[1]),
                        r * (c * e1[2] + s * e2[2]),
                    ];
                    let d = plancherel_density(&l).unwrap_or(0.0);
                    acc += d * r * dr * std::f64::consts::TAU / na as f64;
                }
            }
            acc
        }
        _ => {
            return Err(SphericalError::QuadratureFailed(
                "weyl_main_term implemented for n in {2, 3}".into(),
            ))
        }
    };
    Ok(2.0 / w_order * volume_factor * value)
}

/// Local growth exponent log2(I(2t) / I(t)).
pub fn weyl_growth_exponent(omega: f64, t: f64, n: usize) -> Result<f64, SphericalError> {
    let a = weyl_main_term(omega, t, n, 1.0)?;
    let b = weyl_main_term(omega, 2.0 * t, n, 1.0)?;
    Ok((b / a).log2())
}

/// One row of a decay audit: the weighted spherical value at (lambda, g).
#[derive(Debug, Clone)]
pub struct DecayRow {
    pub lambda_norm: f64,
    pub x_norm: f64,
    pub phi_abs: f64,
    pub phi_imag: f64,
    pub weighted: f64,
    pub quadrature_error: f64,
    pub excluded: bool,
}

#[derive(Debug, Clone)]
pub struct DecayReport {
    pub rows: Vec<DecayRow>,
    pub sup_weighted: f64,
    pub max_imag: f64,
    pub excluded_cells: usize,
}

/// Sweep a grid of (lambda, g) pairs and report
/// sup (1 + ||lambda|| ||X(g)||)^{1/2} |phi_lambda(g)|. Cells whose
/// quadrature fails are excluded and flagged, never silently dropped.
pub fn decay_audit(
    lambdas: &[SpectralParam],
    gs: &[GroupMatrix],
    spec: &QuadratureSpec,
) -> DecayReport {
    let mut rows = Vec::new();
    let mut sup = 0.0f64;
    let mut max_imag = 0.0f64;
    let mut excluded = 0usize;
    for lambda in lambdas {
        for g in gs {
            let x = cartan_x(g).map(|v| v.norm()).unwrap_or(f64::NAN);
            match spherical_phi(lambda, g, spec) {
                Ok((phi, err)) => {
                    let weighted = (1.0 + lambda.norm() * x).sqrt() * phi.norm();
                    sup = sup.max(weighted);
                    max_imag = max_imag.max(phi.im.abs());
                    rows.push(DecayRow {
                        lambda_norm: lambda.norm(),
                        x_norm: x,
                        phi_abs: phi.norm(),
                        phi_imag: phi.im,
                        weighted,
                        quadrature_error: err,
                        excluded: false,
                    });
                }
                Err(_) => {
                    excluded += 1;
                    rows.push(DecayRow {
                        lambda_norm: lambda.norm(),
                        x_norm: x,
                        phi_abs: f64::NAN,
                        phi_imag: f64::NAN,
                        weighted: f64::NAN,
                        quadrature_error: f64::NAN,
                        excluded: true,
                    });
                }
            }
        }
    }
    DecayReport {
        rows,
        sup_weighted: sup,
        max_imag,
        excluded_cells: excluded,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lam2(nu: f64) -> SpectralParam {
        SpectralParam::new(vec![nu / 2f64.sqrt(), -nu / 2f64.sqrt()]).unwrap()
    }

    #[test]
    fn c_function_at_one() {
        // n=2, alpha(lambda) = 1: pi^{1/2} Gamma(1/2)/Gamma(1) = pi
        let l = [Complex64::new(0.5, 0.0), Complex64::new(-0.5, 0.0)];
        let c = c_function(&l).unwrap();
        assert!((c.re - std::f64::consts::PI).abs() < 1e-10, "{c}");
        assert!(c.im.abs() < 1e-12);
    }

    #[test]
    fn c_function_pole_refusal() {
        let l = [Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)];
        assert!(matches!(
            c_function(&l),
            Err(SphericalError::PoleProximity(_))
        ));
    }

    #[test]
    fn density_weyl_invariance() {
        let l = [1.3, -0.4, -0.9];
        let perm = [-0.4, -0.9, 1.3];
        let a = plancherel_density(&l).unwrap();
        let b = plancherel_density(&perm).unwrap();
        assert!((a - b).abs() / a < 1e-10);
    }

    #[test]
    fn density_linear_growth_n2() {
        // |c(i nu)|^{-2} grows linearly: fitted exponent 1.00 +- 0.02
        let f = |nu: f64| plancherel_density(&[nu / 2f64.sqrt(), -nu / 2f64.sqrt()]).unwrap();
        let expo = (f(100.0) / f(10.0)).ln() / 10f64.ln();
        assert!((expo - 1.0).abs() < 0.02, "exponent {expo}");
    }

    #[test]
    fn phi_at_identity_is_one() {
        let spec = QuadratureSpec::ProductAngles {
            nodes: 64,
            tolerance: 1e-8,
        };
        for nu in [0.5, 2.0, 7.0] {
            let (v, _) = spherical_phi(&lam2(nu), &GroupMatrix::identity(2), &spec).unwrap();
            assert!((v.re - 1.0).abs() < 1e-10 && v.im.abs() < 1e-12, "nu={nu}");
        }
        // n = 3
        let spec3 = QuadratureSpec::ProductAngles {
            nodes: 16,
            tolerance: 1e-8,
        };
        let l3 = SpectralParam::new(vec![1.0, 0.5, -1.5]).unwrap();
        let (v, _) = spherical_phi(&l3, &GroupMatrix::identity(3), &spec3).unwrap();
        assert!((v.re - 1.0).abs() < 1e-9 && v.im.abs() < 1e-10);
    }

    #[test]
    fn phi_zero_parameter_in_unit_interval() {
        let spec = QuadratureSpec::ProductAngles {
            nodes: 256,
            tolerance: 1e-9,
        };
        let g = GroupMatrix::from_diagonal(&[std::f64::consts::E, 1.0 / std::f64::consts::E])
            .unwrap();
        let (v, _) = spherical_phi(&lam2(0.0), &g, &spec).unwrap();
        assert!(v.im.abs() < 1e-12);
        assert!(v.re > 0.0 && v.re < 1.0, "phi_0 = {}", v.re);
    }

    #[test]
    fn phi_bounded_by_one_and_weyl_invariant() {
        let spec = QuadratureSpec::ProductAngles {
            nodes: 512,
            tolerance: 1e-8,
        };
        let g = GroupMatrix::from_diagonal(&[2.0, 0.5]).unwrap();
        for nu in [1.0, 3.0, 9.5] {
            let (v, _) = spherical_phi(&lam2(nu), &g, &spec).unwrap();
            assert!(v.norm() <= 1.0 + 1e-9);
            let (w, _) = spherical_phi(&lam2(-nu), &g, &spec).unwrap();
            assert!((v - w).norm() < 1e-8, "Weyl invariance at nu={nu}");
        }
    }

    #[test]
    fn phi_monte_carlo_agrees() {
        let pa = QuadratureSpec::ProductAngles {
            nodes: 512,
            tolerance: 1e-8,
        };
        let mc = QuadratureSpec::MonteCarlo {
            nodes: 20000,
            seed: 42,
            tolerance: 0.05,
        };
        let g = GroupMatrix::from_diagonal(&[1.5, 1.0 / 1.5]).unwrap();
        let (a, _) = spherical_phi(&lam2(2.0), &g, &pa).unwrap();
        let (b, _) = spherical_phi(&lam2(2.0), &g, &mc).unwrap();
        assert!((a - b).norm() < 0.02, "{a} vs {b}");
    }

    #[test]
    fn tolerance_refusal() {
        let spec = QuadratureSpec::ProductAngles {
            nodes: 4,
            tolerance: 1e-14,
        };
        let g = GroupMatrix::from_diagonal(&[3.0, 1.0 / 3.0]).unwrap();
        assert!(matches!(
            spherical_phi(&lam2(8.0), &g, &spec),
            Err(SphericalError::ToleranceUnmet { .. })
        ));
    }

    #[test]
    fn weyl_exponent_n2() {
        let e = weyl_growth_exponent(1.0, 80.0, 2).unwrap();
        assert!((e - 2.0).abs() < 0.04, "exponent {e}");
    }
}
