//! Integer polynomials in `t`, stored constant term first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new<T: Into<BigInt>>(coeffs: Vec<T>) -> Self {
        let mut p = IntPolynomial { coeffs: coeffs.into_iter().map(Into::into).collect() };
        p.trim();
        p
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![BigInt::one()] }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    fn leading(&self) -> &BigInt {
        self.coeffs.last().expect("leading coefficient of zero polynomial")
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Gcd of the coefficients, always nonnegative.
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Divides out the content and fixes the sign so the lowest-degree
    /// nonzero coefficient is positive. For polynomials with constant term
    /// that makes the constant term `+content`-free, as in `det(I - tA)`.
    pub fn normalized(&self) -> IntPolynomial {
        if self.is_zero() {
            return Self::zero();
        }
        let c = self.content();
        let mut coeffs: Vec<BigInt> = self.coeffs.iter().map(|x| x / &c).collect();
        let low = coeffs.iter().find(|x| !x.is_zero()).expect("nonzero polynomial");
        if low.is_negative() {
            for x in &mut coeffs {
                *x = -&*x;
            }
        }
        IntPolynomial::new(coeffs)
    }

    /// Pseudo-remainder of `self` by `d`: `lc(d)^k * self mod d` with integer arithmetic.
    pub fn pseudo_rem(&self, d: &IntPolynomial) -> IntPolynomial {
        assert!(!d.is_zero(), "pseudo-remainder by zero polynomial");
        let dd = d.coeffs.len() - 1;
        let lc = d.leading().clone();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            let lr = r.leading().clone();
            let shift = dr - dd;
            let mut next: Vec<BigInt> = r.coeffs.iter().map(|x| x * &lc).collect();
            for (k, c) in d.coeffs.iter().enumerate() {
                next[k + shift] -= &lr * c;
            }
            r = IntPolynomial::new(next);
        }
        r
    }

    /// Exact quotient `self / d` in `Z[t]`, or `None` if `d` does not divide
    /// `self` with integral quotient.
    pub fn div_exact(&self, d: &IntPolynomial) -> Option<IntPolynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero());
        }
        let dd = d.coeffs.len() - 1;
        let lc = d.leading();
        let mut r = self.clone();
        let ds = r.degree()?;
        if ds < dd {
            return None;
        }
        let mut q = vec![BigInt::zero(); ds - dd + 1];
        while let Some(dr) = r.degree() {
            if dr < dd {
                return None;
            }
            let (qc, rem) = r.leading().div_rem(lc);
            if !rem.is_zero() {
                return None;
            }
            let shift = dr - dd;
            let mut next = r.coeffs.clone();
            for (k, c) in d.coeffs.iter().enumerate() {
                next[k + shift] -= &qc * c;
            }
            q[shift] = qc;
            r = IntPolynomial::new(next);
        }
        Some(IntPolynomial::new(q))
    }

    /// True iff `self` divides `other` over the rationals.
    pub fn divides_over_q(&self, other: &IntPolynomial) -> bool {
        other.pseudo_rem(self).is_zero()
    }

    /// Greatest common divisor over the rationals, normalized.
    pub fn gcd(&self, other: &IntPolynomial) -> IntPolynomial {
        let (mut a, mut b) = (self.normalized(), other.normalized());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).normalized();
            a = b;
            b = r;
        }
        a.normalized()
    }

    /// Apply the linear recurrence encoded by `self` to `seq[0..]`, read as
    /// terms `s_1, s_2, ...`; returns the residual `sum_k c_k s_{n-k}` for
    /// every `n` from `deg + 1` through `seq.len()`.
    pub fn recurrence_residuals(&self, seq: &[BigInt]) -> Vec<BigInt> {
        let d = self.degree().unwrap_or(0);
        (d + 1..=seq.len()).map(|n| self.coeffs.iter().enumerate().map(|(k, c)| c * &seq[n - k - 1]).sum()).collect()
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "t")?,
                (1, false) => write!(f, "{mag}t")?,
                (_, true) => write!(f, "t^{k}")?,
                (_, false) => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// `det(I - t*a)` as an exact polynomial, via the Faddeev-LeVerrier recursion
/// (every division in it is exact over the integers).
pub fn char_poly_reciprocal(a: &IntMatrix) -> IntPolynomial {
    let n = a.dim();
    let a = a.to_rect();
    let mut coeffs = vec![BigInt::one()];
    let mut m = crate::matrix::RectMatrix::zeros(n, n);
    for k in 1..=n {
        // M_k = A M_{k-1} + d_{k-1} I
        let mut next = crate::matrix::mat_mul(&a, &m).expect("square");
        for i in 0..n {
            let v = next.get(i, i) + &coeffs[k - 1];
            next.set(i, i, v);
        }
        m = next;
        let am = crate::matrix::mat_mul(&a, &m).expect("square");
        let tr: BigInt = (0..n).map(|i| am.get(i, i)).sum();
        let (q, r) = tr.div_rem(&BigInt::from(k));
        debug_assert!(r.is_zero(), "Faddeev-LeVerrier division must be exact");
        coeffs.push(-q);
    }
    IntPolynomial::new(coeffs)
}

/// Least common multiple over the rationals, normalized to a primitive
/// integer polynomial whose lowest nonzero coefficient is positive.
pub fn poly_lcm(ps: &[IntPolynomial]) -> Result<IntPolynomial> {
    if ps.iter().any(IntPolynomial::is_zero) {
        return Err(Error::ZeroPolynomial);
    }
    let mut acc = IntPolynomial::one();
    for p in ps {
        let p = p.normalized();
        let g = acc.gcd(&p);
        let prod = acc.mul(&p);
        acc = prod.div_exact(&g).expect("primitive gcd divides the product in Z[t]").normalized();
    }
    Ok(acc)
}
