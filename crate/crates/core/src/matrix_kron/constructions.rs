use crate::error::{Error, Result};
use crate::scalar::{Scalar, Tolerance};
use crate::seqcore::{normalize, Signal};

/// Output of [`interleave`].
#[derive(Clone, Debug, PartialEq)]
pub struct Interleaved<S> {
    pub a: Signal<S>,
    pub b: Signal<S>,
    /// `λ = 0` left trailing zeros that had to be stripped.
    pub renormalized: bool,
}

/// `a = (α₀, λα₀, α₁, λα₁, …)` and `b = (λ̄α₀, α₀, λ̄α₁, α₁, …)`, always
/// ambiguity partners and in general not trivially related.
pub fn interleave<S: Scalar>(alpha: &Signal<S>, lambda: &S) -> Result<Interleaved<S>> {
    alpha.ensure_normalized()?;
    let lbar = lambda.conj();
    let mut a = Vec::with_capacity(2 * alpha.coeffs().len());
    let mut b = Vec::with_capacity(2 * alpha.coeffs().len());
    for x in alpha.coeffs() {
        a.push(x.clone());
        a.push(lambda.clone() * x.clone());
        b.push(lbar.clone() * x.clone());
        b.push(x.clone());
    }
    let renormalized = lambda.is_zero();
    let a = normalize(&Signal::from_coeffs(a))?.0;
    let b = normalize(&Signal::from_coeffs(b))?.0;
    Ok(Interleaved { a, b, renormalized })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlipMode {
    /// `α_j + c β_j z^{3^j}`
    Modulate,
    /// `β_j + c α_j z^{3^j}`
    Swap,
}

/// Replacement of factor `index` in [`iterated_product`].
#[derive(Clone, Debug, PartialEq)]
pub struct Flip<S> {
    pub index: usize,
    pub mode: FlipMode,
    pub c: S,
}

/// Coefficients of `Π_j (α_j + β_j z^{3^j})` with the given factors replaced.
///
/// Every choice of flips produces an ambiguity partner of the unflipped
/// product. A later flip on the same index overrides an earlier one.
pub fn iterated_product<S: Scalar>(factors: &[(S, S)], flips: &[Flip<S>], tol: Tolerance) -> Result<Signal<S>> {
    if factors.is_empty() {
        return Err(Error::EmptySignal);
    }
    if factors.len() > 20 {
        return Err(Error::HypothesisViolated(format!(
            "{} factors give degree above 3^20",
            factors.len()
        )));
    }
    let mut fs = factors.to_vec();
    for f in flips {
        if f.index >= fs.len() {
            return Err(Error::HypothesisViolated(format!(
                "flip index {} out of range (J = {})",
                f.index,
                fs.len() - 1
            )));
        }
        if !f.c.is_unimodular(tol) {
            return Err(Error::NotUnimodular(format!("flip constant on factor {}", f.index)));
        }
        let (alpha, beta) = factors[f.index].clone();
        fs[f.index] = match f.mode {
            FlipMode::Modulate => (alpha, f.c.clone() * beta),
            FlipMode::Swap => (beta, f.c.clone() * alpha),
        };
    }
    let mut poly = vec![S::one()];
    let mut stride = 1usize;
    for (alpha, beta) in fs {
        let mut next = vec![S::zero(); poly.len() + stride];
        for (i, p) in poly.iter().enumerate() {
            next[i] = next[i].clone() + p.clone() * alpha.clone();
            next[i + stride] = next[i + stride].clone() + p.clone() * beta.clone();
        }
        poly = next;
        stride *= 3;
    }
    normalize(&Signal::from_coeffs(poly)).map(|(s, _)| s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ambiguity::{is_partner, is_trivial_partner};
    use crate::scalar::{gaussian, GaussianRational as Q};

    const EXACT: Tolerance = Tolerance(0.0);

    fn sig(v: &[i64]) -> Signal<Q> {
        Signal::from_i64s(v)
    }

    fn q(n: i64) -> Q {
        Q::from_i64(n)
    }

    #[test]
    fn interleave_examples() {
        let out = interleave(&sig(&[1, 1]), &q(2)).unwrap();
        assert_eq!((out.a.clone(), out.b.clone()), (sig(&[1, 2, 1, 2]), sig(&[2, 1, 2, 1])));
        assert!(is_partner(&out.a, &out.b, EXACT).unwrap());

        let out = interleave(&sig(&[1, 2]), &q(2)).unwrap();
        assert_eq!((out.a.clone(), out.b.clone()), (sig(&[1, 2, 2, 4]), sig(&[2, 1, 4, 2])));
        assert!(is_partner(&out.a, &out.b, EXACT).unwrap());
        assert!(is_trivial_partner(&out.a, &out.b, EXACT).unwrap().is_none());

        let out = interleave(&sig(&[1]), &q(1)).unwrap();
        assert_eq!(out.a, sig(&[1, 1]));
        assert_eq!(out.b, sig(&[1, 1]));
        assert!(!out.renormalized);
    }

    #[test]
    fn interleave_zero_lambda() {
        let out = interleave(&sig(&[1, 3]), &q(0)).unwrap();
        assert!(out.renormalized);
        assert_eq!(out.a, sig(&[1, 0, 3]));
        assert_eq!(out.b, sig(&[1, 0, 3]));
    }

    #[test]
    fn interleave_complex_lambda() {
        let out = interleave(&sig(&[2, -1, 3]), &gaussian((1, 2), (-3, 4))).unwrap();
        assert!(is_partner(&out.a, &out.b, EXACT).unwrap());
    }

    #[test]
    fn iterated_examples() {
        let f = [(q(1), q(2)), (q(1), q(2))];
        assert_eq!(iterated_product(&f, &[], EXACT).unwrap(), sig(&[1, 2, 0, 2, 4]));
        let swap = Flip { index: 1, mode: FlipMode::Swap, c: q(1) };
        assert_eq!(iterated_product(&f, &[swap], EXACT).unwrap(), sig(&[2, 4, 0, 1, 2]));
    }

    #[test]
    fn iterated_flips_are_partners() {
        let f = [(q(1), q(2)), (q(3), q(-1)), (q(2), gaussian((1, 1), (1, 1)))];
        let base = iterated_product(&f, &[], EXACT).unwrap();
        let flips = [
            Flip { index: 0, mode: FlipMode::Swap, c: gaussian((3, 5), (4, 5)) },
            Flip { index: 2, mode: FlipMode::Modulate, c: gaussian((0, 1), (1, 1)) },
        ];
        let other = iterated_product(&f, &flips, EXACT).unwrap();
        assert!(is_partner(&base, &other, EXACT).unwrap());
    }

    #[test]
    fn iterated_rejects_bad_constant() {
        let f = [(q(1), q(2))];
        let bad = Flip { index: 0, mode: FlipMode::Modulate, c: q(2) };
        assert!(matches!(iterated_product(&f, &[bad], EXACT), Err(Error::NotUnimodular(_))));
    }
}
