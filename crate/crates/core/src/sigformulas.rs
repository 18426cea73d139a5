//! Signatures of G-symmetric products as exact cycle-index evaluations, plus
//! the closed forms they specialize to.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cycleindex::cycle_index_enumerated;
use crate::cyclepoly::CycleIndexPolynomial;
use crate::exactnum::{binomial, rat, BigRational, PowerSeries};
use crate::permgroups::PermutationGroup;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SignatureError {
    #[error("a punctured surface needs at least one puncture")]
    NoPunctures,
    #[error("signature evaluated to the non-integer {0}; this is a bug")]
    NonInteger(BigRational),
    #[error("precondition failed: {0}")]
    Precondition(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Closed,
    Punctured,
}

/// Closed `M_g` or punctured `M_{g,k}` orientable surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Surface {
    kind: SurfaceKind,
    genus: u32,
    punctures: u32,
}

impl Surface {
    pub fn closed(genus: u32) -> Self {
        Surface {
            kind: SurfaceKind::Closed,
            genus,
            punctures: 0,
        }
    }

    pub fn punctured(genus: u32, punctures: u32) -> Result<Self, SignatureError> {
        if punctures == 0 {
            return Err(SignatureError::NoPunctures);
        }
        Ok(Surface {
            kind: SurfaceKind::Punctured,
            genus,
            punctures,
        })
    }

    pub fn kind(&self) -> SurfaceKind {
        self.kind
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn punctures(&self) -> u32 {
        self.punctures
    }

    pub fn is_closed(&self) -> bool {
        self.kind == SurfaceKind::Closed
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.punctures as i64
    }

    /// Signature of the surface itself, zero in dimension 2.
    pub fn base_signature(&self) -> i64 {
        0
    }

    /// The value substituted for every even-indexed cycle-index variable:
    /// `2 - 2g` for closed surfaces, `-2g` for punctured ones.
    pub fn even_cycle_value(&self) -> i64 {
        match self.kind {
            SurfaceKind::Closed => 2 - 2 * self.genus as i64,
            SurfaceKind::Punctured => -2 * self.genus as i64,
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::Closed => write!(f, "closed:{}", self.genus),
            SurfaceKind::Punctured => write!(f, "punct:{}:{}", self.genus, self.punctures),
        }
    }
}

fn integral(q: BigRational) -> Result<BigRational, SignatureError> {
    if q.is_integer() {
        Ok(q)
    } else {
        Err(SignatureError::NonInteger(q))
    }
}

/// `Z(G; 0, v, 0, v, ...)` with `v` the surface's even-cycle value.
pub fn signature_from_index(
    z: &CycleIndexPolynomial,
    surface: &Surface,
) -> Result<BigRational, SignatureError> {
    integral(z.evaluate_alternating(&BigRational::zero(), &rat(surface.even_cycle_value())))
}

/// Signature of `M_g^m / G`: `Z(G; 0, 2-2g, 0, 2-2g, ...)`.
pub fn sign_sym_prod_closed(group: &PermutationGroup, genus: u32) -> Result<BigRational, SignatureError> {
    signature_from_index(&cycle_index_enumerated(group), &Surface::closed(genus))
}

/// Signature of `M_{g,k}^m / G`: `Z(G; 0, -2g, 0, -2g, ...)`. The number of
/// punctures does not enter.
pub fn sign_sym_prod_punctured(
    group: &PermutationGroup,
    genus: u32,
) -> Result<BigRational, SignatureError> {
    let surface = Surface::punctured(genus, 1)?;
    signature_from_index(&cycle_index_enumerated(group), &surface)
}

/// `Sign(SP^{2n}(M_{g,k})) = (-1)^n C(g, n)`.
pub fn sign_sym_power_punctured(n: u32, genus: u32) -> BigRational {
    let c = binomial(&rat(genus as i64), n as usize);
    if n % 2 == 0 {
        c
    } else {
        -c
    }
}

/// `(-1)^{p/2} C(C(2g, m)/2, p/2)` for `S_p ≀ S_m` with `p` even, `m` odd.
pub fn sign_wreath_punctured(p: u32, m: u32, genus: u32) -> Result<BigRational, SignatureError> {
    if p % 2 != 0 {
        return Err(SignatureError::Precondition(format!("p = {p} must be even")));
    }
    if m % 2 == 0 {
        return Err(SignatureError::Precondition(format!("m = {m} must be odd")));
    }
    let top = binomial(&rat(2 * genus as i64), m as usize) / rat(2);
    let half_p = (p / 2) as usize;
    let c = binomial(&top, half_p);
    integral(if half_p % 2 == 0 { c } else { -c })
}

/// `Z(G; τ, χ, τ, χ, ...)` for a closed oriented even-dimensional manifold
/// with signature `τ` and Euler characteristic `χ`. The inputs are taken as
/// given; no manifold is checked.
pub fn zagier_sign(group: &PermutationGroup, tau: &BigRational, chi: &BigRational) -> BigRational {
    zagier_sign_index(&cycle_index_enumerated(group), tau, chi)
}

pub fn zagier_sign_index(z: &CycleIndexPolynomial, tau: &BigRational, chi: &BigRational) -> BigRational {
    z.evaluate_alternating(tau, chi)
}

/// `[t^k] (1-t^2)^{(-1)^{m+1} C(-χ, m)/2} ((1+t)/(1-t))^{σ_m/2}` where
/// `σ_m = Sign(SP^m(M))` for the same manifold. Inherits the closed,
/// even-dimensional hypotheses of [`zagier_sign`].
pub fn hirzebruch_wreath(k: u32, m: u32, chi: &BigRational, sign_spm: &BigRational) -> BigRational {
    assert!(m >= 1, "inner degree must be positive");
    let order = k as usize;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let c = binomial(&-chi, m as usize);
    let first_exponent = if m % 2 == 1 { c } else { -c } * &half;
    let second_exponent = sign_spm * &half;

    let one_minus_t2 = PowerSeries::from_integers(&[1, 0, -1], order);
    let one_plus_t = PowerSeries::from_integers(&[1, 1], order);
    let one_minus_t = PowerSeries::from_integers(&[1, -1], order);
    let series = one_minus_t2
        .pow_rational(&first_exponent)
        .and_then(|a| a.mul(&one_plus_t.pow_rational(&second_exponent)?))
        .and_then(|a| a.mul(&one_minus_t.pow_rational(&-second_exponent)?))
        .expect("all bases have constant term 1 and share one order");
    series.coefficient(order).expect("order k").clone()
}
