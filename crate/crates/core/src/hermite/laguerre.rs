use std::f64::consts::PI;

use num_complex::Complex64;

use super::hermite_poly;
use crate::quadrature::gauss_hermite;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// `γ_k = (√π 2^k k!)^{1/2}`, the `L²` norm of `H_k e^{-t²/2}`.
pub fn gamma_norm(k: usize) -> f64 {
    (PI.sqrt() * 2f64.powi(k as i32) * factorial(k)).sqrt()
}

/// `A(H_j e^{-t²/2}, H_k e^{-t²/2})(x, y)` in closed form:
/// `L_jk(x/√2, y/√2) e^{-(x²+y²)/4} e^{ixy/2}` with
/// `L_jk(x, y) = √(π 2^{j+k}) j! k! Σ_m (x+iy)^{j-m} (-x+iy)^{k-m} / ((j-m)! (k-m)! m!)`.
pub fn laguerre_cross(j: usize, k: usize, x: f64, y: f64) -> Complex64 {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let (u, v) = (x * s, y * s);
    let zp = Complex64::new(u, v);
    let zm = Complex64::new(-u, v);
    let sum: Complex64 = (0..=j.min(k))
        .map(|m| {
            zp.powu((j - m) as u32) * zm.powu((k - m) as u32)
                / (factorial(j - m) * factorial(k - m) * factorial(m))
        })
        .sum();
    let l = (PI * 2f64.powi((j + k) as i32)).sqrt() * factorial(j) * factorial(k) * sum;
    l * (-(x * x + y * y) / 4.0).exp() * Complex64::new(0.0, x * y / 2.0).exp()
}

/// `∫ H_j(t) e^{-t²/2} H_k(t-x) e^{-(t-x)²/2} e^{iyt} dt` by an `nodes`-point
/// Gauss–Hermite rule after centring at `t = s + x/2`.
pub fn hermite_cross_quadrature(j: usize, k: usize, x: f64, y: f64, nodes: usize) -> Complex64 {
    let hj = hermite_poly::<Complex64>(j);
    let hk = hermite_poly::<Complex64>(k);
    let (s, w) = gauss_hermite(nodes);
    let half = x / 2.0;
    let sum: Complex64 = s
        .iter()
        .zip(&w)
        .map(|(&s, &w)| {
            let a = hj.eval(&Complex64::new(s + half, 0.0));
            let b = hk.eval(&Complex64::new(s - half, 0.0));
            a * b * Complex64::new(0.0, y * (s + half)).exp() * w
        })
        .sum();
    sum * (-x * x / 4.0).exp()
}

/// `|value - reference| / max(|reference|, 10⁻³ γ_j γ_k)`.
///
/// The floor keeps the ratio meaningful near zeros of the cross ambiguity
/// function; `γ_j γ_k` bounds its modulus.
pub fn laguerre_relative_error(j: usize, k: usize, value: Complex64, reference: Complex64) -> f64 {
    let floor = 1e-3 * gamma_norm(j) * gamma_norm(k);
    (value - reference).norm() / reference.norm().max(floor)
}
