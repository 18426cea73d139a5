//! Cycle-index polynomials: sparse rational combinations of cycle-type
//! monomials `x_1^{a_1} ... x_m^{a_m}`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Pow, Signed, Zero};
use thiserror::Error;

use crate::exactnum::{fraction_string, BigRational};
use crate::permgroups::CycleType;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CyclePolyError {
    #[error("variable x{0} has no assigned value")]
    UnboundVariable(usize),
    #[error("cycle type of degree {got} in a cycle index of degree {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("coefficient {0} is not positive")]
    NonPositiveCoefficient(BigRational),
}

/// `Z(G; x_1, ..., x_m)` as a map from cycle type to coefficient.
///
/// Terms are kept in the map's natural order; [`terms`](Self::terms) and the
/// `Display` impl use the canonical rendering order (descending
/// lexicographic on multiplicity vectors, so `x1^m` comes first).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleIndexPolynomial {
    degree: usize,
    terms: BTreeMap<CycleType, BigRational>,
}

impl CycleIndexPolynomial {
    /// Builds a cycle index, merging repeated cycle types. Every key must have
    /// degree `degree` and every merged coefficient must be positive.
    pub fn new<I>(degree: usize, terms: I) -> Result<Self, CyclePolyError>
    where
        I: IntoIterator<Item = (CycleType, BigRational)>,
    {
        let mut map: BTreeMap<CycleType, BigRational> = BTreeMap::new();
        for (ct, c) in terms {
            if ct.degree() != degree {
                return Err(CyclePolyError::DegreeMismatch {
                    expected: degree,
                    got: ct.degree(),
                });
            }
            *map.entry(ct).or_insert_with(BigRational::zero) += c;
        }
        if let Some(c) = map.values().find(|c| !c.is_positive()) {
            return Err(CyclePolyError::NonPositiveCoefficient(c.clone()));
        }
        Ok(CycleIndexPolynomial { degree, terms: map })
    }

    pub(crate) fn from_map(degree: usize, terms: BTreeMap<CycleType, BigRational>) -> Self {
        debug_assert!(terms.keys().all(|k| k.degree() == degree));
        CycleIndexPolynomial { degree, terms }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, ct: &CycleType) -> Option<&BigRational> {
        self.terms.get(ct)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (&CycleType, &BigRational)> {
        self.terms.iter().rev()
    }

    /// Sum of the coefficients (the value at all-ones).
    pub fn coefficient_sum(&self) -> BigRational {
        self.terms.values().fold(BigRational::zero(), |acc, c| acc + c)
    }

    /// Substitutes `x_k = assignment[k]` and sums exactly.
    pub fn evaluate(
        &self,
        assignment: &HashMap<usize, BigRational>,
    ) -> Result<BigRational, CyclePolyError> {
        self.evaluate_with(|k| {
            assignment
                .get(&k)
                .cloned()
                .ok_or(CyclePolyError::UnboundVariable(k))
        })
    }

    /// Substitutes `x_k = odd` for odd `k` and `x_k = even` for even `k`.
    pub fn evaluate_alternating(&self, odd: &BigRational, even: &BigRational) -> BigRational {
        self.evaluate_with(|k| Ok(if k % 2 == 1 { odd.clone() } else { even.clone() }))
            .expect("alternating assignment binds every variable")
    }

    fn evaluate_with<F>(&self, mut value: F) -> Result<BigRational, CyclePolyError>
    where
        F: FnMut(usize) -> Result<BigRational, CyclePolyError>,
    {
        let mut total = BigRational::zero();
        for (ct, c) in &self.terms {
            let mut term = c.clone();
            for (k, a) in ct.parts() {
                let x = value(k)?;
                term *= Pow::pow(x, a as u32);
            }
            total += term;
        }
        Ok(total)
    }
}

fn render_monomial(ct: &CycleType) -> String {
    ct.parts()
        .map(|(k, a)| {
            if a == 1 {
                format!("x{k}")
            } else {
                format!("x{k}^{a}")
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

impl fmt::Display for CycleIndexPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (ct, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            let mono = render_monomial(ct);
            if mono.is_empty() {
                write!(f, "{}", fraction_string(c))?;
            } else if c.is_one() {
                f.write_str(&mono)?;
            } else if c.is_integer() {
                write!(f, "{c} {mono}")?;
            } else {
                write!(f, "{} {mono}", fraction_string(c))?;
            }
        }
        Ok(())
    }
}
