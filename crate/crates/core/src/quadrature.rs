//! Numerical integration used as an independent reference: adaptive
//! Gauss–Kronrod on finite intervals and Gauss–Hermite rules.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One 15-point Kronrod panel; returns the estimate and its difference from
/// the embedded 7-point Gauss rule.
fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for i in 0..7 {
        let dx = h * XGK[i];
        let pair = f(c - dx) + f(c + dx);
        kronrod += pair * WGK[i];
        if i % 2 == 1 {
            gauss += pair * WG[i / 2];
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).norm())
}

/// Adaptive G7–K15 on `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Complex64 {
    fn recurse<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64, tol: f64, depth: u32) -> Complex64 {
        let (val, err) = gk15(f, a, b);
        if err <= tol || depth == 0 || (b - a) < 1e-13 {
            return val;
        }
        let m = 0.5 * (a + b);
        recurse(f, a, m, 0.5 * tol, depth - 1) + recurse(f, m, b, 0.5 * tol, depth - 1)
    }
    if b <= a {
        return Complex64::default();
    }
    recurse(&f, a, b, tol, 40)
}

/// Integrates over consecutive pieces of a sorted breakpoint list.
pub fn integrate_piecewise<F: Fn(f64) -> Complex64>(f: F, breaks: &[f64], tol: f64) -> Complex64 {
    let n = breaks.len().saturating_sub(1).max(1) as f64;
    breaks
        .windows(2)
        .map(|w| integrate(&f, w[0], w[1], tol / n))
        .sum()
}

/// Nodes and weights of the `n`-point rule for `∫ f(s) e^{-s²} ds`
/// (Golub–Welsch).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut jacobi = DMatrix::<f64>::zeros(n, n);
    for k in 1..n {
        let b = (k as f64 / 2.0).sqrt();
        jacobi[(k, k - 1)] = b;
        jacobi[(k - 1, k)] = b;
    }
    let eig = SymmetricEigen::new(jacobi);
    let mu0 = std::f64::consts::PI.sqrt();
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let v = eig.eigenvectors[(0, i)];
            (eig.eigenvalues[i], mu0 * v * v)
        })
        .collect();
    pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
    pairs.into_iter().unzip()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_polynomials_and_oscillation() {
        let v = integrate(|t| Complex64::new(t * t, 0.0), 0.0, 3.0, 1e-12);
        assert!((v.re - 9.0).abs() < 1e-12);
        let v = integrate(|t| Complex64::new(0.0, t).exp(), 0.0, 10.0, 1e-12);
        let exact = (Complex64::new(0.0, 10.0).exp() - 1.0) / Complex64::new(0.0, 1.0);
        assert!((v - exact).norm() < 1e-11);
    }

    #[test]
    fn hermite_rule_moments() {
        let (x, w) = gauss_hermite(40);
        let moment = |p: i32| x.iter().zip(&w).map(|(x, w)| w * x.powi(p)).sum::<f64>();
        let sqrt_pi = std::f64::consts::PI.sqrt();
        assert!((moment(0) - sqrt_pi).abs() < 1e-13);
        assert!(moment(1).abs() < 1e-13);
        assert!((moment(2) - sqrt_pi / 2.0).abs() < 1e-13);
        assert!((moment(4) - 3.0 * sqrt_pi / 4.0).abs() < 1e-12);
    }
}
