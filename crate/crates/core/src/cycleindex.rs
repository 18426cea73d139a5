//! Cycle indices computed three ways: by summing over an enumerated group,
//! by closed forms for `S_n` and `C_n`, and by Pólya substitution for wreath
//! products `S_k ≀ H`.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::cyclepoly::CycleIndexPolynomial;
use crate::exactnum::{BigRational, PowerSeries};
use crate::parallel::Execution;
use crate::permgroups::{CycleType, PermutationGroup};

/// Default cap on intermediate terms during wreath substitution.
pub const DEFAULT_TERM_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CycleIndexError {
    #[error("wreath substitution needs positive degrees, got outer {outer} and inner {inner}")]
    DegreeMismatch { outer: usize, inner: usize },
    #[error("wreath substitution exceeded the term limit of {limit}")]
    TermLimit { limit: usize },
}

/// `(1/|G|) Σ_{π ∈ G} x^{type(π)}` by direct enumeration.
pub fn cycle_index_enumerated(group: &PermutationGroup) -> CycleIndexPolynomial {
    cycle_index_enumerated_with(group, Execution::default())
}

pub fn cycle_index_enumerated_with(
    group: &PermutationGroup,
    exec: Execution,
) -> CycleIndexPolynomial {
    let tally = exec.fold_reduce(
        group.elements(),
        HashMap::<CycleType, u64>::new,
        |mut acc, p| {
            *acc.entry(p.cycle_type()).or_insert(0) += 1;
            acc
        },
        |mut a, b| {
            for (ct, n) in b {
                *a.entry(ct).or_insert(0) += n;
            }
            a
        },
    );
    let order = BigInt::from(group.order());
    let terms = tally
        .into_iter()
        .map(|(ct, n)| (ct, BigRational::new(BigInt::from(n), order.clone())))
        .collect();
    CycleIndexPolynomial::from_map(group.degree(), terms)
}

/// Multiplicity vectors of all partitions of `n`, in lexicographic order.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(part: usize, remaining: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        // `part` runs 1..=n; current[part-1] is chosen here.
        if part > current.len() {
            if remaining == 0 {
                out.push(current.clone());
            }
            return;
        }
        for a in 0..=remaining / part {
            current[part - 1] = a;
            go(part + 1, remaining - a * part, current, out);
        }
        current[part - 1] = 0;
    }
    let mut out = Vec::new();
    go(1, n, &mut vec![0; n], &mut out);
    out
}

/// `Z(S_n)` from the partition closed form
/// `Σ_{1^{a_1}...n^{a_n} ⊢ n} x^a / Π_k k^{a_k} a_k!`.
pub fn cycle_index_symmetric(n: usize) -> CycleIndexPolynomial {
    let terms = partitions(n)
        .into_iter()
        .map(|a| {
            let mut denom = BigInt::one();
            for (i, &ak) in a.iter().enumerate() {
                let k = BigInt::from(i + 1);
                for j in 1..=ak {
                    denom *= &k * BigInt::from(j);
                }
            }
            (
                CycleType::new_unchecked(a),
                BigRational::new(BigInt::one(), denom),
            )
        })
        .collect();
    CycleIndexPolynomial::from_map(n, terms)
}

/// Euler's totient.
pub fn totient(n: usize) -> usize {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

/// `Z(C_n) = (1/n) Σ_{d | n} φ(d) x_d^{n/d}`.
pub fn cycle_index_cyclic(n: usize) -> CycleIndexPolynomial {
    assert!(n >= 1, "cyclic group needs at least one point");
    let terms = (1..=n)
        .filter(|d| n % d == 0)
        .map(|d| {
            let mut a = vec![0; n];
            a[d - 1] = n / d;
            (
                CycleType::new_unchecked(a),
                BigRational::new(BigInt::from(totient(d)), BigInt::from(n)),
            )
        })
        .collect();
    CycleIndexPolynomial::from_map(n, terms)
}

type Terms = BTreeMap<Vec<usize>, BigRational>;

fn multiply(a: &Terms, b: &Terms, limit: usize) -> Result<Terms, CycleIndexError> {
    let mut out = Terms::new();
    for (ea, ca) in a {
        for (eb, cb) in b {
            let e: Vec<usize> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
            *out.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            if out.len() > limit {
                return Err(CycleIndexError::TermLimit { limit });
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    Ok(out)
}

/// Pólya's substitution `Z(outer; Z(inner; x_i, x_2i, ...), ...)`.
///
/// The `i`-th outer variable is replaced by the inner index with every
/// `x_j` renamed to `x_{ij}`. The result lives on `k·m` points.
pub fn cycle_index_wreath(
    outer: &CycleIndexPolynomial,
    inner: &CycleIndexPolynomial,
) -> Result<CycleIndexPolynomial, CycleIndexError> {
    cycle_index_wreath_limited(outer, inner, DEFAULT_TERM_LIMIT)
}

pub fn cycle_index_wreath_limited(
    outer: &CycleIndexPolynomial,
    inner: &CycleIndexPolynomial,
    term_limit: usize,
) -> Result<CycleIndexPolynomial, CycleIndexError> {
    let (k, m) = (outer.degree(), inner.degree());
    if k == 0 || m == 0 {
        return Err(CycleIndexError::DegreeMismatch { outer: k, inner: m });
    }
    let degree = k * m;
    let reindexed: Vec<Terms> = (1..=k)
        .map(|i| {
            inner
                .terms()
                .map(|(ct, c)| {
                    let mut e = vec![0; degree];
                    for (j, b) in ct.parts() {
                        e[i * j - 1] += b;
                    }
                    (e, c.clone())
                })
                .collect()
        })
        .collect();

    let mut total = Terms::new();
    for (ct, c) in outer.terms() {
        let mut product: Terms = [(vec![0; degree], c.clone())].into();
        for (i, a) in ct.parts() {
            for _ in 0..a {
                product = multiply(&product, &reindexed[i - 1], term_limit)?;
            }
        }
        for (e, c) in product {
            *total.entry(e).or_insert_with(BigRational::zero) += c;
        }
        if total.len() > term_limit {
            return Err(CycleIndexError::TermLimit { limit: term_limit });
        }
    }
    let terms = total
        .into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| (CycleType::new_unchecked(e), c))
        .collect();
    Ok(CycleIndexPolynomial::from_map(degree, terms))
}

/// `[t^n] (1-t)^{-(α+β)/2} (1+t)^{(α-β)/2}`, which equals
/// `Z(S_n; α, β, α, β, ...)`.
pub fn z_sn_alternating_closed_form(n: usize, alpha: &BigRational, beta: &BigRational) -> BigRational {
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    let minus = PowerSeries::from_integers(&[1, -1], n)
        .pow_rational(&(-(alpha + beta) * &half))
        .expect("constant term is 1");
    let plus = PowerSeries::from_integers(&[1, 1], n)
        .pow_rational(&((alpha - beta) * &half))
        .expect("constant term is 1");
    minus
        .mul(&plus)
        .expect("same order")
        .coefficient(n)
        .expect("order n")
        .clone()
}
