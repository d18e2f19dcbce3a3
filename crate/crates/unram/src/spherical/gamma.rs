//! Complex Gamma function by the Lanczos approximation (g = 7, 9
//! coefficients), with the reflection formula for Re z < 1/2.

use num::complex::Complex64;

const G: f64 = 7.0;
const COEFFS: [f64; 9] = [
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
];

pub fn gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Gamma(z) Gamma(1-z) = pi / sin(pi z)
        let pi = std::f64::consts::PI;
        Complex64::new(pi, 0.0) / ((Complex64::new(pi, 0.0) * z).sin() * gamma(Complex64::new(1.0, 0.0) - z))
    } else {
        let z = z - Complex64::new(1.0, 0.0);
        let mut x = Complex64::new(COEFFS[0], 0.0);
        for (i, &c) in COEFFS.iter().enumerate().skip(1) {
            x += Complex64::new(c, 0.0) / (z + Complex64::new(i as f64, 0.0));
        }
        let t = z + Complex64::new(G + 0.5, 0.0);
        let sqrt_two_pi = (2.0 * std::f64::consts::PI).sqrt();
        Complex64::new(sqrt_two_pi, 0.0) * t.powc(z + Complex64::new(0.5, 0.0)) * (-t).exp() * x
    }
}
