//! Random instances for experiments and test suites.

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;

use crate::ambiguity::HeisenbergElement;
use crate::lambda_sets::is_b3;
use crate::scalar::{unit_from_tangent, GaussianRational, Scalar};
use crate::seqcore::{Signal, SupportSet};

/// Integer signal of length `len` with entries in `[-bound, bound]` and
/// nonzero end points.
pub fn integer_signal<R: Rng>(rng: &mut R, len: usize, bound: i64) -> Signal<GaussianRational> {
    let mut v: Vec<i64> = (0..len).map(|_| rng.random_range(-bound..=bound)).collect();
    for i in [0, len - 1] {
        while v[i] == 0 {
            v[i] = rng.random_range(-bound..=bound);
        }
    }
    Signal::from_i64s(&v)
}

/// `p/q + (r/s) i` with numerators in `[-num, num]` and denominators in `[1, den]`.
pub fn gaussian_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> GaussianRational {
    let mut part = || {
        BigRational::new(
            BigInt::from(rng.random_range(-num..=num)),
            BigInt::from(rng.random_range(1..=den)),
        )
    };
    Complex::new(part(), part())
}

/// Nonzero Gaussian rational.
pub fn nonzero_gaussian_rational<R: Rng>(rng: &mut R, num: i64, den: i64) -> GaussianRational {
    loop {
        let z = gaussian_rational(rng, num, den);
        if !z.is_zero() {
            return z;
        }
    }
}

/// Gaussian-rational signal with nonzero end points.
pub fn rational_signal<R: Rng>(rng: &mut R, len: usize, num: i64, den: i64) -> Signal<GaussianRational> {
    let mut v: Vec<GaussianRational> = (0..len).map(|_| gaussian_rational(rng, num, den)).collect();
    v[0] = nonzero_gaussian_rational(rng, num, den);
    v[len - 1] = nonzero_gaussian_rational(rng, num, den);
    Signal::from_coeffs(v)
}

/// Rational point on the unit circle, `±1` included.
pub fn unit<R: Rng>(rng: &mut R) -> GaussianRational {
    if rng.random_ratio(1, 16) {
        return GaussianRational::from_i64(-1);
    }
    let t = BigRational::new(
        BigInt::from(rng.random_range(-12..=12)),
        BigInt::from(rng.random_range(1..=12)),
    );
    unit_from_tangent(&t)
}

/// Exact trivial transform with a random orientation and shift.
pub fn heisenberg<R: Rng>(rng: &mut R) -> HeisenbergElement<GaussianRational> {
    HeisenbergElement {
        phase: unit(rng),
        modulation: unit(rng),
        shift: rng.random_range(-5..=5),
        reflected: rng.random_bool(0.5),
    }
}

/// B₃ set of `size` elements drawn from `[0, max]`.
pub fn b3_set<R: Rng>(rng: &mut R, size: usize, max: i64) -> SupportSet {
    loop {
        let mut elems: Vec<i64> = Vec::with_capacity(size);
        let mut attempts = 0;
        while elems.len() < size && attempts < 100 * size {
            attempts += 1;
            let n = rng.random_range(0..=max);
            if elems.contains(&n) {
                continue;
            }
            elems.push(n);
            if !is_b3(&SupportSet::new(elems.iter().copied())).unwrap_or(false) {
                elems.pop();
            }
        }
        let set = SupportSet::new(elems);
        if set.len() == size {
            return set;
        }
    }
}

/// Signal supported exactly on `set`, with nonzero integer values.
pub fn signal_on<R: Rng>(rng: &mut R, set: &SupportSet, bound: i64) -> Signal<GaussianRational> {
    let lo = set.min().unwrap_or(0);
    let len = set.max().map_or(0, |hi| hi - lo + 1) as usize;
    let mut v = vec![GaussianRational::from_i64(0); len];
    for &n in set.elems() {
        let mut x = 0;
        while x == 0 {
            x = rng.random_range(-bound..=bound);
        }
        v[(n - lo) as usize] = GaussianRational::from_i64(x);
    }
    Signal::new(lo, v)
}
