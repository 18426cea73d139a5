//! Exact rational arithmetic and truncated formal power series.
//!
//! Rationals are `num_rational::BigRational`, which keeps the denominator
//! positive and the fraction reduced after every operation. Power series are
//! eager, finite coefficient vectors with an explicit truncation order.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

pub use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("truncation orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },
    #[error("exp requires a zero constant term, got {0}")]
    NonzeroConstant(BigRational),
    #[error("rational power requires constant term 1, got {0}")]
    ConstantNotOne(BigRational),
    #[error("coefficient index {index} outside 0..={order}")]
    OutOfRange { index: usize, order: usize },
}

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `numer / denom` as a reduced rational. Panics on a zero denominator.
pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// Generalized binomial coefficient `C(top, k)` for rational `top`.
///
/// Falling factorial `top (top-1) ... (top-k+1) / k!`, reduced after each
/// factor. `C(top, 0) = 1`.
pub fn binomial(top: &BigRational, k: usize) -> BigRational {
    let mut acc = BigRational::one();
    for j in 0..k {
        let factor = top - rat(j as i64);
        acc = acc * factor / rat(j as i64 + 1);
    }
    acc
}

/// Binomial coefficient with a signed lower index; negative `k` gives zero.
pub fn binomial_signed(top: &BigRational, k: i64) -> BigRational {
    if k < 0 {
        BigRational::zero()
    } else {
        binomial(top, k as usize)
    }
}

/// Converts a rational with denominator one into a `BigInt`.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// Renders a rational as `p/q`, including `/1` for integers.
pub fn fraction_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Truncated power series `c_0 + c_1 t + ... + c_N t^N` over the rationals.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    coefficients: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coefficients: vec![BigRational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        Self::constant(BigRational::one(), order)
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coefficients[0] = c;
        s
    }

    /// Builds a series from leading coefficients. Missing entries are zero and
    /// entries beyond `order` are dropped.
    pub fn from_coefficients<I>(coefficients: I, order: usize) -> Self
    where
        I: IntoIterator<Item = BigRational>,
    {
        let mut s = Self::zero(order);
        for (slot, c) in s.coefficients.iter_mut().zip(coefficients) {
            *slot = c;
        }
        s
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_integers(coefficients: &[i64], order: usize) -> Self {
        Self::from_coefficients(coefficients.iter().map(|&c| rat(c)), order)
    }

    /// `c t^power`, or zero if `power` exceeds the order.
    pub fn monomial(c: BigRational, power: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if power <= order {
            s.coefficients[power] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Exact coefficient of `t^n`.
    pub fn coefficient(&self, n: usize) -> Result<&BigRational, SeriesError> {
        self.coefficients.get(n).ok_or(SeriesError::OutOfRange {
            index: n,
            order: self.order(),
        })
    }

    fn check_order(&self, other: &Self) -> Result<(), SeriesError> {
        if self.order() != other.order() {
            return Err(SeriesError::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        Ok(PowerSeries {
            coefficients: self
                .coefficients
                .iter()
                .zip(&other.coefficients)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coefficients: self.coefficients.iter().map(|a| a * c).collect(),
        }
    }

    /// Cauchy product truncated at the shared order.
    pub fn mul(&self, other: &Self) -> Result<Self, SeriesError> {
        self.check_order(other)?;
        let n = self.order();
        let mut out = Self::zero(n);
        for (i, a) in self.coefficients.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coefficients[..=n - i].iter().enumerate() {
                if !b.is_zero() {
                    out.coefficients[i + j] += a * b;
                }
            }
        }
        Ok(out)
    }

    /// Formal derivative, keeping the same order (top coefficient becomes 0).
    fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n);
        for k in 1..=n {
            out.coefficients[k - 1] = &self.coefficients[k] * rat(k as i64);
        }
        out
    }

    /// `exp(a)` for `a` with zero constant term.
    ///
    /// Uses `f' = a' f`, i.e. `k f_k = sum_{j=1..k} j a_j f_{k-j}`.
    pub fn exp(&self) -> Result<Self, SeriesError> {
        if !self.coefficients[0].is_zero() {
            return Err(SeriesError::NonzeroConstant(self.coefficients[0].clone()));
        }
        let n = self.order();
        let da = self.derivative();
        let mut f = Self::zero(n);
        f.coefficients[0] = BigRational::one();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                let aj = &da.coefficients[j - 1];
                if !aj.is_zero() {
                    acc += aj * &f.coefficients[k - j];
                }
            }
            f.coefficients[k] = acc / rat(k as i64);
        }
        Ok(f)
    }

    /// `self^exponent` for a series with constant term 1, via the binomial
    /// series `sum_k C(q, k) u^k` with `u = self - 1`.
    pub fn pow_rational(&self, exponent: &BigRational) -> Result<Self, SeriesError> {
        if !self.coefficients[0].is_one() {
            return Err(SeriesError::ConstantNotOne(self.coefficients[0].clone()));
        }
        let n = self.order();
        let mut u = self.clone();
        u.coefficients[0] = BigRational::zero();
        let mut out = Self::one(n);
        let mut u_pow = Self::one(n);
        for k in 1..=n {
            u_pow = u_pow.mul(&u)?;
            // u^k starts at t^k, so nothing past k = n survives truncation.
            let c = binomial(exponent, k);
            if !c.is_zero() {
                out = out.add(&u_pow.scale(&c))?;
            }
        }
        Ok(out)
    }

    /// Returns true when every coefficient is an integer.
    pub fn is_integral(&self) -> bool {
        self.coefficients.iter().all(|c| c.is_integer())
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c} t")?,
                _ => write!(f, "{c} t^{k}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        write!(f, " + O(t^{})", self.order() + 1)
    }
}
