//! Complex scalar fields used throughout the crate.
//!
//! Every algorithm is written once against [`Scalar`]. Two families of
//! implementations exist:
//!
//! * exact fields, [`GaussianRational`] (`Q(i)`) and [`QSqrt2`] (`Q(i, √2)`),
//!   where arithmetic never rounds and equality is structural;
//! * floating point fields, `Complex<f64>` and `Complex<f32>`, where equality
//!   is taken relative to a [`Tolerance`] passed by the caller.

use std::fmt::Debug;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Complex rationals `p + q i` with `p, q ∈ Q`.
pub type GaussianRational = Complex<BigRational>;

/// Relative tolerance for float comparisons.
///
/// Two float scalars `x`, `y` compare equal when
/// `|x - y| <= tol * max(1, |x|, |y|)`. Exact scalars ignore it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance(pub f64);

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance(1e-9)
    }
}

impl Tolerance {
    pub fn value(self) -> f64 {
        self.0
    }

    /// The float comparison rule shared by every float scalar.
    pub fn close(self, x: Complex64, y: Complex64) -> bool {
        let scale = 1f64.max(x.norm()).max(y.norm());
        (x - y).norm() <= self.0 * scale
    }
}

/// A complex field element.
pub trait Scalar:
    Clone
    + Debug
    + PartialEq
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// True when arithmetic is exact and `==` is a decision procedure.
    const EXACT: bool;

    fn conj(&self) -> Self;

    /// `|x|²`, embedded back into the field.
    fn norm_sqr(&self) -> Self;

    fn from_i64(n: i64) -> Self;

    /// The rational `num / den` (panics on `den == 0`).
    fn from_ratio(num: i64, den: i64) -> Self;

    /// Embeds a pair of doubles. Exact fields convert the binary value exactly.
    fn from_f64_parts(re: f64, im: f64) -> Self;

    fn to_complex64(&self) -> Complex64;

    /// Equality under the field's notion of equality.
    fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool;

    fn is_negligible(&self, tol: Tolerance) -> bool {
        self.approx_eq(&Self::zero(), tol)
    }

    fn is_unimodular(&self, tol: Tolerance) -> bool {
        self.norm_sqr().approx_eq(&Self::one(), tol)
    }

    /// Integer power; negative exponents invert (the base must be nonzero).
    fn powi(&self, exp: i64) -> Self {
        let mut base = if exp < 0 {
            Self::one() / self.clone()
        } else {
            self.clone()
        };
        let mut e = exp.unsigned_abs();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            e >>= 1;
            if e > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }
}

macro_rules! impl_float_scalar {
    ($t:ty) => {
        impl Scalar for Complex<$t> {
            const EXACT: bool = false;

            fn conj(&self) -> Self {
                Complex::conj(self)
            }

            fn norm_sqr(&self) -> Self {
                Complex::new(Complex::norm_sqr(self), 0.0)
            }

            fn from_i64(n: i64) -> Self {
                Complex::new(n as $t, 0.0)
            }

            fn from_ratio(num: i64, den: i64) -> Self {
                assert!(den != 0, "zero denominator");
                Complex::new((num as f64 / den as f64) as $t, 0.0)
            }

            fn from_f64_parts(re: f64, im: f64) -> Self {
                Complex::new(re as $t, im as $t)
            }

            fn to_complex64(&self) -> Complex64 {
                Complex64::new(self.re as f64, self.im as f64)
            }

            fn approx_eq(&self, other: &Self, tol: Tolerance) -> bool {
                tol.close(self.to_complex64(), other.to_complex64())
            }
        }
    };
}

impl_float_scalar!(f64);
impl_float_scalar!(f32);

fn ratio_to_f64(r: &BigRational) -> f64 {
    r.to_f64().unwrap_or_else(|| {
        // numerator/denominator too large for a direct conversion
        let n = r.numer().to_f64().unwrap_or(f64::NAN);
        let d = r.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

fn ratio_from_f64(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite float")
}

impl Scalar for GaussianRational {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        Complex::new(self.re.clone(), -self.im.clone())
    }

    fn norm_sqr(&self) -> Self {
        Complex::new(
            &self.re * &self.re + &self.im * &self.im,
            BigRational::zero(),
        )
    }

    fn from_i64(n: i64) -> Self {
        Complex::new(BigRational::from_integer(BigInt::from(n)), BigRational::zero())
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        Complex::new(
            BigRational::new(BigInt::from(num), BigInt::from(den)),
            BigRational::zero(),
        )
    }

    fn from_f64_parts(re: f64, im: f64) -> Self {
        Complex::new(ratio_from_f64(re), ratio_from_f64(im))
    }

    fn to_complex64(&self) -> Complex64 {
        Complex64::new(ratio_to_f64(&self.re), ratio_to_f64(&self.im))
    }

    fn approx_eq(&self, other: &Self, _tol: Tolerance) -> bool {
        self == other
    }
}

/// Builds the Gaussian rational `re + im·i` from small integer fractions.
pub fn gaussian(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    Complex::new(
        BigRational::new(re.0.into(), re.1.into()),
        BigRational::new(im.0.into(), im.1.into()),
    )
}

/// Rational point on the unit circle, `((1 - t²) + 2t i) / (1 + t²)`.
///
/// Every unimodular Gaussian rational other than `-1` arises this way.
pub fn unit_from_tangent(t: &BigRational) -> GaussianRational {
    let one = BigRational::one();
    let t2 = t * t;
    let den = &one + &t2;
    Complex::new((&one - &t2) / &den, (t + t) / den)
}

/// Element `a + b√2` of `Q(i, √2)` with `a, b` Gaussian rationals.
///
/// Closed under the field operations, which lets Bargmann-side polynomial
/// algebra (coefficients carrying `2^{k/2}`) stay exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QSqrt2 {
    pub rational: GaussianRational,
    pub irrational: GaussianRational,
}

impl QSqrt2 {
    pub fn new(rational: GaussianRational, irrational: GaussianRational) -> Self {
        QSqrt2 {
            rational,
            irrational,
        }
    }

    pub fn sqrt2() -> Self {
        QSqrt2::new(GaussianRational::zero(), GaussianRational::one())
    }

    /// `2^{k/2}` as an exact element.
    pub fn pow_sqrt2(k: u32) -> Self {
        let half = BigInt::from(2).pow(k / 2);
        let c = Complex::new(BigRational::from_integer(half), BigRational::zero());
        if k.is_multiple_of(2) {
            QSqrt2::new(c, GaussianRational::zero())
        } else {
            QSqrt2::new(GaussianRational::zero(), c)
        }
    }

    fn two() -> GaussianRational {
        GaussianRational::from_i64(2)
    }
}

impl From<GaussianRational> for QSqrt2 {
    fn from(value: GaussianRational) -> Self {
        QSqrt2::new(value, GaussianRational::zero())
    }
}

impl Add for QSqrt2 {
    type Output = QSqrt2;
    fn add(self, rhs: QSqrt2) -> QSqrt2 {
        QSqrt2::new(self.rational + rhs.rational, self.irrational + rhs.irrational)
    }
}

impl Sub for QSqrt2 {
    type Output = QSqrt2;
    fn sub(self, rhs: QSqrt2) -> QSqrt2 {
        QSqrt2::new(self.rational - rhs.rational, self.irrational - rhs.irrational)
    }
}

impl Mul for QSqrt2 {
    type Output = QSqrt2;
    fn mul(self, rhs: QSqrt2) -> QSqrt2 {
        let rational = self.rational.clone() * rhs.rational.clone()
            + QSqrt2::two() * self.irrational.clone() * rhs.irrational.clone();
        let irrational = self.rational * rhs.irrational + self.irrational * rhs.rational;
        QSqrt2::new(rational, irrational)
    }
}

impl Div for QSqrt2 {
    type Output = QSqrt2;
    fn div(self, rhs: QSqrt2) -> QSqrt2 {
        // (a + b√2)^{-1} = (a - b√2) / (a² - 2b²); a² - 2b² ≠ 0 since √2 ∉ Q(i)
        let den = rhs.rational.clone() * rhs.rational.clone()
            - QSqrt2::two() * rhs.irrational.clone() * rhs.irrational.clone();
        assert!(!den.is_zero(), "division by zero in Q(i, √2)");
        let inv = QSqrt2::new(rhs.rational / den.clone(), -rhs.irrational / den);
        self * inv
    }
}

impl Neg for QSqrt2 {
    type Output = QSqrt2;
    fn neg(self) -> QSqrt2 {
        QSqrt2::new(-self.rational, -self.irrational)
    }
}

impl Zero for QSqrt2 {
    fn zero() -> Self {
        QSqrt2::new(GaussianRational::zero(), GaussianRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.irrational.is_zero()
    }
}

impl One for QSqrt2 {
    fn one() -> Self {
        QSqrt2::new(GaussianRational::one(), GaussianRational::zero())
    }
}

impl Scalar for QSqrt2 {
    const EXACT: bool = true;

    fn conj(&self) -> Self {
        QSqrt2::new(self.rational.conj(), self.irrational.conj())
    }

    fn norm_sqr(&self) -> Self {
        self.clone() * self.conj()
    }

    fn from_i64(n: i64) -> Self {
        GaussianRational::from_i64(n).into()
    }

    fn from_ratio(num: i64, den: i64) -> Self {
        GaussianRational::from_ratio(num, den).into()
    }

    fn from_f64_parts(re: f64, im: f64) -> Self {
        GaussianRational::from_f64_parts(re, im).into()
    }

    fn to_complex64(&self) -> Complex64 {
        self.rational.to_complex64() + self.irrational.to_complex64() * std::f64::consts::SQRT_2
    }

    fn approx_eq(&self, other: &Self, _tol: Tolerance) -> bool {
        self == other
    }
}

/// Fields containing `√2`, needed by the Bargmann map `H_k ↦ 2^{k/2} Z^k`.
pub trait HasSqrt2: Scalar {
    fn sqrt2() -> Self;
}

impl HasSqrt2 for QSqrt2 {
    fn sqrt2() -> Self {
        QSqrt2::sqrt2()
    }
}

impl HasSqrt2 for Complex<f64> {
    fn sqrt2() -> Self {
        Complex::new(std::f64::consts::SQRT_2, 0.0)
    }
}

impl HasSqrt2 for Complex<f32> {
    fn sqrt2() -> Self {
        Complex::new(std::f32::consts::SQRT_2, 0.0)
    }
}

/// Best rational approximation with denominator at most `max_den`
/// (continued fractions). Returns `None` when the approximation error exceeds
/// `max_err`.
pub fn rational_approximation(x: f64, max_den: i64, max_err: f64) -> Option<BigRational> {
    if !x.is_finite() {
        return None;
    }
    let (mut p0, mut q0, mut p1, mut q1) = (0i128, 1i128, 1i128, 0i128);
    let mut frac = x;
    for _ in 0..64 {
        let a = frac.floor();
        if a.abs() > 1e15 {
            break;
        }
        let ai = a as i128;
        let p2 = ai * p1 + p0;
        let q2 = ai * q1 + q0;
        if q2 > max_den as i128 {
            break;
        }
        p0 = p1;
        q0 = q1;
        p1 = p2;
        q1 = q2;
        let approx = p1 as f64 / q1 as f64;
        if (approx - x).abs() <= 1e-14 * x.abs().max(1.0) {
            break;
        }
        let rem = frac - a;
        if rem.abs() < 1e-300 {
            break;
        }
        frac = 1.0 / rem;
    }
    if q1 == 0 {
        return None;
    }
    let approx = p1 as f64 / q1 as f64;
    if (approx - x).abs() > max_err {
        return None;
    }
    Some(BigRational::new(BigInt::from(p1), BigInt::from(q1)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_tolerance_is_relative_above_one() {
        let tol = Tolerance(1e-9);
        let big = Complex64::new(1e6, 0.0);
        assert!(big.approx_eq(&(big + Complex64::new(1e-4, 0.0)), tol));
        assert!(!big.approx_eq(&(big + Complex64::new(1e-2, 0.0)), tol));
        let small = Complex64::new(1e-12, 0.0);
        assert!(small.approx_eq(&Complex64::zero(), tol));
    }

    #[test]
    fn gaussian_rational_is_exact() {
        let third = GaussianRational::from_ratio(1, 3);
        let sum = third.clone() + third.clone() + third;
        assert_eq!(sum, GaussianRational::one());
        let z = gaussian((1, 2), (3, 4));
        assert_eq!(z.clone() / z.clone(), GaussianRational::one());
        assert_eq!(z.powi(-2) * z.powi(2), GaussianRational::one());
    }

    #[test]
    fn unit_circle_parametrisation() {
        for (n, d) in [(0, 1), (1, 2), (-3, 7), (5, 1)] {
            let u = unit_from_tangent(&BigRational::new(n.into(), d.into()));
            assert_eq!(Scalar::norm_sqr(&u), GaussianRational::one());
        }
    }

    #[test]
    fn sqrt2_field_arithmetic() {
        let s = QSqrt2::sqrt2();
        assert_eq!(s.clone() * s.clone(), QSqrt2::from_i64(2));
        assert_eq!(QSqrt2::pow_sqrt2(3), s.clone() * s.clone() * s.clone());
        let x = QSqrt2::new(gaussian((1, 1), (2, 3)), gaussian((-1, 5), (1, 1)));
        assert_eq!(x.clone() / x.clone(), QSqrt2::one());
        let z = x.to_complex64();
        let expect = Complex64::new(1.0 - 0.2 * 2f64.sqrt(), 2.0 / 3.0 + 2f64.sqrt());
        assert!((z - expect).norm() < 1e-14);
    }

    #[test]
    fn exact_float_embedding() {
        let q = GaussianRational::from_f64_parts(0.375, -2.5);
        assert_eq!(q, gaussian((3, 8), (-5, 2)));
    }

    #[test]
    fn continued_fraction_recovers_small_fractions() {
        let r = rational_approximation(0.428_571_428_571_428_6, 1000, 1e-9).unwrap();
        assert_eq!(r, BigRational::new(3.into(), 7.into()));
        assert!(rational_approximation(std::f64::consts::PI, 10, 1e-9).is_none());
        assert_eq!(
            rational_approximation(-2.0, 10, 1e-12).unwrap(),
            BigRational::from_integer((-2).into())
        );
    }
}
