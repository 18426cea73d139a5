//! Brute-force signature oracle built from the middle homology of `M^m`.
//!
//! A basis of `H_m(M^m; Q)` is given by words `w_1 ... w_m` over a homology
//! basis of the surface (`I`, `T`, `a_i`, `b_i` for closed surfaces; `a_i`,
//! `b_i` and hole classes `h_j` for punctured ones). Coordinate
//! permutations act on words with Koszul signs, the intersection form pairs
//! `w` only with its dual `w*`, and the g-signature of each permutation is
//! read off the spectral decomposition of the action. Averaging over a group
//! gives the signature of the quotient without touching cycle indices.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;

use nalgebra::DMatrix;
use num_complex::Complex64;
use thiserror::Error;

use crate::parallel::Execution;
use crate::permgroups::{Permutation, PermutationGroup};
use crate::sigformulas::{Surface, SurfaceKind};

pub const DEFAULT_TOLERANCE: f64 = 1e-9;
pub const DEFAULT_BASIS_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("word {0} contains a hole class, which has no dual")]
    NoDual(Word),
    #[error("middle basis has {size} words, above the cap of {cap}")]
    BasisCap { size: usize, cap: usize },
    #[error("permutation degree {got} does not match word length {expected}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("word length must be at least 1")]
    ZeroLength,
    #[error("numerical residual {residual:e} exceeds tolerance {tolerance:e}")]
    Numerical { residual: f64, tolerance: f64 },
    #[error("form matrix is {got}x{got}, action acts on {expected} vectors")]
    FormShape { expected: usize, got: usize },
}

/// One homology class of the surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HomologyLetter {
    /// Point class `I` in degree 0.
    Unit,
    /// Fundamental class `T` in degree 2.
    Fundamental,
    A(u16),
    B(u16),
    Hole(u16),
}

impl HomologyLetter {
    pub fn degree(self) -> u32 {
        match self {
            HomologyLetter::Unit => 0,
            HomologyLetter::Fundamental => 2,
            _ => 1,
        }
    }

    /// `a_i <-> b_i`, `I <-> T`; hole classes have no dual.
    pub fn dual(self) -> Option<Self> {
        match self {
            HomologyLetter::Unit => Some(HomologyLetter::Fundamental),
            HomologyLetter::Fundamental => Some(HomologyLetter::Unit),
            HomologyLetter::A(i) => Some(HomologyLetter::B(i)),
            HomologyLetter::B(i) => Some(HomologyLetter::A(i)),
            HomologyLetter::Hole(_) => None,
        }
    }

    /// Letters of the surface's homology basis, in basis order.
    pub fn alphabet(surface: &Surface) -> Vec<HomologyLetter> {
        let g = surface.genus() as u16;
        let mut out = Vec::new();
        if surface.is_closed() {
            out.extend([HomologyLetter::Unit, HomologyLetter::Fundamental]);
        }
        out.extend((1..=g).map(HomologyLetter::A));
        out.extend((1..=g).map(HomologyLetter::B));
        if surface.kind() == SurfaceKind::Punctured {
            out.extend((1..surface.punctures() as u16).map(HomologyLetter::Hole));
        }
        out
    }
}

impl fmt::Display for HomologyLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HomologyLetter::Unit => f.write_str("I"),
            HomologyLetter::Fundamental => f.write_str("T"),
            HomologyLetter::A(i) => write!(f, "a{i}"),
            HomologyLetter::B(i) => write!(f, "b{i}"),
            HomologyLetter::Hole(j) => write!(f, "h{j}"),
        }
    }
}

/// Cross product `w_1 × ... × w_m` of surface classes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<HomologyLetter>,
}

impl Word {
    pub fn new(letters: Vec<HomologyLetter>) -> Self {
        Word { letters }
    }

    pub fn letters(&self) -> &[HomologyLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn total_degree(&self) -> u32 {
        self.letters.iter().map(|l| l.degree()).sum()
    }

    /// Number of `a` and `b` letters.
    pub fn alpha_count(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| matches!(l, HomologyLetter::A(_) | HomologyLetter::B(_)))
            .count()
    }

    /// Number of `b` letters.
    pub fn beta_count(&self) -> usize {
        self.letters
            .iter()
            .filter(|l| matches!(l, HomologyLetter::B(_)))
            .count()
    }

    pub fn has_hole(&self) -> bool {
        self.letters
            .iter()
            .any(|l| matches!(l, HomologyLetter::Hole(_)))
    }

    pub fn dual(&self) -> Result<Word, OracleError> {
        self.letters
            .iter()
            .map(|l| l.dual())
            .collect::<Option<Vec<_>>>()
            .map(Word::new)
            .ok_or_else(|| OracleError::NoDual(self.clone()))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.letters {
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    pub word: Word,
    pub sign: i8,
}

/// All words of length `m` and total degree `m`, in lexicographic order.
pub fn build_middle_basis(surface: &Surface, m: usize, cap: usize) -> Result<Vec<Word>, OracleError> {
    if m == 0 {
        return Err(OracleError::ZeroLength);
    }
    let alphabet = HomologyLetter::alphabet(surface);
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn go(
        alphabet: &[HomologyLetter],
        m: usize,
        degree: u32,
        current: &mut Vec<HomologyLetter>,
        out: &mut Vec<Word>,
        cap: usize,
    ) -> Result<(), OracleError> {
        let remaining = (m - current.len()) as u32;
        if remaining == 0 {
            if degree == m as u32 {
                if out.len() == cap {
                    return Err(OracleError::BasisCap { size: cap + 1, cap });
                }
                out.push(Word::new(current.clone()));
            }
            return Ok(());
        }
        for &l in alphabet {
            let d = degree + l.degree();
            // The rest can add between 0 and 2 per letter.
            if d > m as u32 || d + 2 * (remaining - 1) < m as u32 {
                continue;
            }
            current.push(l);
            go(alphabet, m, d, current, out, cap)?;
            current.pop();
        }
        Ok(())
    }
    go(&alphabet, m, 0, &mut current, &mut out, cap)?;
    Ok(out)
}

/// Intersection number `B(w, w')` of two middle-dimensional words.
///
/// Zero unless `w' = w*`, in which case it is `(-1)^{C(α(w),2) + β(w)}`.
/// Words containing hole classes pair to zero with everything.
pub fn intersection_pairing(w: &Word, other: &Word) -> i64 {
    match w.dual() {
        Ok(d) if &d == other => {
            let alpha = w.alpha_count();
            let exponent = alpha * alpha.saturating_sub(1) / 2 + w.beta_count();
            if exponent % 2 == 0 {
                1
            } else {
                -1
            }
        }
        _ => 0,
    }
}

/// Coordinate permutation acting on a word: letter `i` moves to position
/// `π(i)`, with sign `Π (-1)^{deg w_i · deg w_j}` over inversions `i < j`,
/// `π(i) > π(j)`.
pub fn permutation_action(pi: &Permutation, w: &Word) -> Result<SignedWord, OracleError> {
    let m = w.len();
    if pi.degree() != m {
        return Err(OracleError::DegreeMismatch {
            expected: m,
            got: pi.degree(),
        });
    }
    let mut letters = vec![HomologyLetter::Unit; m];
    let mut odd = false;
    for i in 0..m {
        letters[pi.apply(i)] = w.letters[i];
        if w.letters[i].degree() % 2 == 1 {
            for j in i + 1..m {
                if pi.apply(i) > pi.apply(j) && w.letters[j].degree() % 2 == 1 {
                    odd = !odd;
                }
            }
        }
    }
    Ok(SignedWord {
        word: Word::new(letters),
        sign: if odd { -1 } else { 1 },
    })
}

/// A linear map sending basis vector `j` to `sign[j] · e_{target[j]}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPermutation {
    target: Vec<usize>,
    sign: Vec<i8>,
}

impl SignedPermutation {
    pub fn new(target: Vec<usize>, sign: Vec<i8>) -> Self {
        assert_eq!(target.len(), sign.len());
        SignedPermutation { target, sign }
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    pub fn to_matrix(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut a = DMatrix::zeros(n, n);
        for (j, (&t, &s)) in self.target.iter().zip(&self.sign).enumerate() {
            a[(t, j)] = s as f64;
        }
        a
    }

    /// Orbits `(start, ..., A^{L-1} start)` with cumulative signs, plus the
    /// sign picked up after a full turn.
    fn orbits(&self) -> Vec<Orbit> {
        let n = self.dim();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut points = Vec::new();
            let mut signs = Vec::new();
            let mut p = start;
            let mut s: i8 = 1;
            while !seen[p] {
                seen[p] = true;
                points.push(p);
                signs.push(s);
                s *= self.sign[p];
                p = self.target[p];
            }
            debug_assert_eq!(p, start);
            out.push(Orbit {
                points,
                signs,
                closing_sign: s,
            });
        }
        out
    }
}

struct Orbit {
    points: Vec<usize>,
    signs: Vec<i8>,
    closing_sign: i8,
}

/// `exp(2πi · numerator / denominator)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootOfUnity {
    pub numerator: usize,
    pub denominator: usize,
}

impl RootOfUnity {
    pub fn value(&self) -> Complex64 {
        Complex64::from_polar(1.0, 2.0 * PI * self.numerator as f64 / self.denominator as f64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e(2πi·{}/{})", self.numerator, self.denominator)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EigenContribution {
    pub eigenvalue: RootOfUnity,
    pub dimension: usize,
    /// Signature of the form restricted to the eigenspace.
    pub signature: i64,
}

/// `Σ_λ λ · Sign(V_λ, B_λ)` together with its spectral breakdown.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralSignature {
    pub value: Complex64,
    pub breakdown: Vec<EigenContribution>,
    pub residual: f64,
}

/// g-signature of a signed-permutation action preserving the hermitian
/// form `form` (`form[(p, q)] = B(e_p, e_q)`).
///
/// Eigenvectors come from the orbits: an orbit of length `L` and closing
/// sign `s` spans eigenvectors `Σ_j λ^{-j} A^j e` for the `L` roots of
/// `λ^L = s`. All eigenvalues are therefore `D`-th roots of unity with
/// `D = 2 · lcm(L)`, and grouping by the integer label is exact.
pub fn spectral_g_signature(
    action: &SignedPermutation,
    form: &DMatrix<Complex64>,
) -> Result<SpectralSignature, OracleError> {
    let n = action.dim();
    if form.nrows() != n || form.ncols() != n {
        return Err(OracleError::FormShape {
            expected: n,
            got: form.nrows(),
        });
    }
    let orbits = action.orbits();
    let denominator = 2 * orbits
        .iter()
        .fold(1, |acc, o| num_integer::lcm(acc, o.points.len()));

    // Sparse eigenvectors, grouped by eigenvalue label.
    let mut spaces: HashMap<usize, Vec<Vec<(usize, Complex64)>>> = HashMap::new();
    let mut residual: f64 = 0.0;
    for orbit in &orbits {
        let len = orbit.points.len();
        let step = denominator / len;
        for j in 0..len {
            let numerator = if orbit.closing_sign > 0 {
                step * j
            } else {
                step / 2 * (2 * j + 1)
            } % denominator;
            let lambda = RootOfUnity {
                numerator,
                denominator,
            }
            .value();
            let vector: Vec<(usize, Complex64)> = orbit
                .points
                .iter()
                .zip(&orbit.signs)
                .enumerate()
                .map(|(i, (&p, &s))| (p, lambda.powi(-(i as i32)) * s as f64))
                .collect();
            residual = residual.max(eigen_residual(action, &vector, lambda));
            spaces.entry(numerator).or_default().push(vector);
        }
    }

    let mut labels: Vec<usize> = spaces.keys().copied().collect();
    labels.sort_unstable();
    let mut value = Complex64::new(0.0, 0.0);
    let mut breakdown = Vec::new();
    for numerator in labels {
        let vectors = &spaces[&numerator];
        let d = vectors.len();
        let mut gram = DMatrix::<Complex64>::zeros(d, d);
        for (a, za) in vectors.iter().enumerate() {
            for (b, zb) in vectors.iter().enumerate() {
                let mut acc = Complex64::new(0.0, 0.0);
                for &(p, x) in za {
                    for &(q, y) in zb {
                        let h = form[(p, q)];
                        if h.re != 0.0 || h.im != 0.0 {
                            acc += x * h * y.conj();
                        }
                    }
                }
                gram[(a, b)] = acc;
            }
        }
        let (signature, r) = hermitian_signature(gram);
        residual = residual.max(r);
        let eigenvalue = RootOfUnity {
            numerator,
            denominator,
        };
        value += eigenvalue.value() * signature as f64;
        breakdown.push(EigenContribution {
            eigenvalue,
            dimension: d,
            signature,
        });
    }
    Ok(SpectralSignature {
        value,
        breakdown,
        residual,
    })
}

fn eigen_residual(action: &SignedPermutation, vector: &[(usize, Complex64)], lambda: Complex64) -> f64 {
    let mut image: HashMap<usize, Complex64> = HashMap::with_capacity(vector.len());
    for &(p, x) in vector {
        *image.entry(action.target[p]).or_default() += x * action.sign[p] as f64;
    }
    for &(p, x) in vector {
        *image.entry(p).or_default() -= lambda * x;
    }
    image.values().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Signature of a hermitian matrix, and a residual combining asymmetry and
/// the largest eigenvalue treated as zero (relative to the matrix scale).
fn hermitian_signature(gram: DMatrix<Complex64>) -> (i64, f64) {
    let asymmetry = (&gram - gram.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    let scale = gram.iter().map(|z| z.norm()).fold(1.0, f64::max);
    let h = (&gram + gram.adjoint()) * Complex64::new(0.5, 0.0);
    let eigenvalues = h.symmetric_eigenvalues();
    let zero_band = 1e-6 * scale;
    let mut signature = 0i64;
    let mut leak: f64 = 0.0;
    for &mu in eigenvalues.iter() {
        if mu > zero_band {
            signature += 1;
        } else if mu < -zero_band {
            signature -= 1;
        } else {
            leak = leak.max(mu.abs() / scale);
        }
    }
    (signature, asymmetry.max(leak))
}

/// Per-element result of the oracle.
#[derive(Debug, Clone, PartialEq)]
pub struct GSignatureReport {
    pub element: Permutation,
    pub value: Complex64,
    pub eigenvalue_breakdown: Vec<EigenContribution>,
    pub residual: f64,
}

/// Middle homology of `M^m` with its word basis, intersection form and
/// permutation action.
#[derive(Debug, Clone)]
pub struct MiddleHomology {
    surface: Surface,
    m: usize,
    basis: Vec<Word>,
    index: HashMap<Word, usize>,
}

impl MiddleHomology {
    pub fn new(surface: Surface, m: usize, cap: usize) -> Result<Self, OracleError> {
        let basis = build_middle_basis(&surface, m, cap)?;
        let index = basis.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        Ok(MiddleHomology {
            surface,
            m,
            basis,
            index,
        })
    }

    pub fn surface(&self) -> &Surface {
        &self.surface
    }

    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn basis(&self) -> &[Word] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        self.index.get(w).copied()
    }

    pub fn action(&self, pi: &Permutation) -> Result<SignedPermutation, OracleError> {
        let mut target = Vec::with_capacity(self.dim());
        let mut sign = Vec::with_capacity(self.dim());
        for w in &self.basis {
            let image = permutation_action(pi, w)?;
            target.push(self.index[&image.word]);
            sign.push(image.sign);
        }
        Ok(SignedPermutation::new(target, sign))
    }

    /// Real intersection matrix `B[(p, q)] = B(w_p, w_q)`.
    pub fn intersection_matrix(&self) -> DMatrix<f64> {
        let n = self.dim();
        let mut b = DMatrix::zeros(n, n);
        for (p, w) in self.basis.iter().enumerate() {
            if let Ok(d) = w.dual() {
                let q = self.index[&d];
                b[(p, q)] = intersection_pairing(w, &d) as f64;
            }
        }
        b
    }

    /// Hermitian extension: `B` for even `m`, `i·B` for odd `m`.
    pub fn hermitian_form(&self) -> DMatrix<Complex64> {
        let factor = if self.m % 2 == 0 {
            Complex64::new(1.0, 0.0)
        } else {
            Complex64::new(0.0, 1.0)
        };
        self.intersection_matrix().map(|x| factor * x)
    }

    pub fn g_signature(&self, pi: &Permutation, tolerance: f64) -> Result<GSignatureReport, OracleError> {
        self.g_signature_with_form(pi, &self.hermitian_form(), tolerance)
    }

    fn g_signature_with_form(
        &self,
        pi: &Permutation,
        form: &DMatrix<Complex64>,
        tolerance: f64,
    ) -> Result<GSignatureReport, OracleError> {
        let spectral = spectral_g_signature(&self.action(pi)?, form)?;
        if !(spectral.residual <= tolerance) {
            return Err(OracleError::Numerical {
                residual: spectral.residual,
                tolerance,
            });
        }
        Ok(GSignatureReport {
            element: pi.clone(),
            value: spectral.value,
            eigenvalue_breakdown: spectral.breakdown,
            residual: spectral.residual,
        })
    }

    /// `(1/|G|) Σ_g Sign(g, M^m)`, rounded after checking the imaginary part
    /// and the distance to the nearest integer.
    pub fn quotient_signature(
        &self,
        group: &PermutationGroup,
        tolerance: f64,
        exec: Execution,
    ) -> Result<OracleOutcome, OracleError> {
        if group.degree() != self.m {
            return Err(OracleError::DegreeMismatch {
                expected: self.m,
                got: group.degree(),
            });
        }
        let form = self.hermitian_form();
        let reports = exec.map(group.elements(), |pi| self.g_signature_with_form(pi, &form, tolerance));
        let mut total = Complex64::new(0.0, 0.0);
        let mut residual: f64 = 0.0;
        for r in reports {
            let r = r?;
            total += r.value;
            residual = residual.max(r.residual);
        }
        let average = total / group.order() as f64;
        let rounded = average.re.round();
        let miss = average.im.abs().max((average.re - rounded).abs());
        residual = residual.max(miss);
        if !(miss <= tolerance) {
            return Err(OracleError::Numerical { residual: miss, tolerance });
        }
        Ok(OracleOutcome {
            value: rounded as i64,
            average,
            residual,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleOutcome {
    pub value: i64,
    pub average: Complex64,
    pub residual: f64,
}

/// The `k`-cycle `C_k(x_1, ..., x_k) = (x_2, ..., x_k, x_1)` as a coordinate
/// permutation: the letter in slot `i` moves to slot `i - 1`.
pub fn cyclic_shift(k: usize) -> Permutation {
    Permutation::cycle_on(k, 0, k).inverse()
}

/// g-signature of `π` acting on `H_m(M^m)`.
pub fn g_signature(
    pi: &Permutation,
    surface: &Surface,
    m: usize,
    tolerance: f64,
) -> Result<GSignatureReport, OracleError> {
    if pi.degree() != m {
        return Err(OracleError::DegreeMismatch {
            expected: m,
            got: pi.degree(),
        });
    }
    MiddleHomology::new(*surface, m, DEFAULT_BASIS_CAP)?.g_signature(pi, tolerance)
}

/// `Π_k Sign(C_k, M^k)^{a_k}` over the cycle type of `π`.
pub fn product_formula_check(
    pi: &Permutation,
    surface: &Surface,
    tolerance: f64,
) -> Result<Complex64, OracleError> {
    let mut product = Complex64::new(1.0, 0.0);
    for (k, a) in pi.cycle_type().parts() {
        let factor = g_signature(&cyclic_shift(k), surface, k, tolerance)?.value;
        product *= factor.powi(a as i32);
    }
    Ok(product)
}

/// Signature of `M^m / G` computed from g-signatures alone.
pub fn quotient_signature_oracle(
    group: &PermutationGroup,
    surface: &Surface,
    tolerance: f64,
) -> Result<i64, OracleError> {
    quotient_signature_oracle_with(group, surface, tolerance, Execution::default()).map(|o| o.value)
}

pub fn quotient_signature_oracle_with(
    group: &PermutationGroup,
    surface: &Surface,
    tolerance: f64,
    exec: Execution,
) -> Result<OracleOutcome, OracleError> {
    MiddleHomology::new(*surface, group.degree(), DEFAULT_BASIS_CAP)?.quotient_signature(
        group,
        tolerance,
        exec,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permgroups::DEFAULT_ELEMENT_LIMIT as LIMIT;
    use HomologyLetter::*;

    fn word(letters: &[HomologyLetter]) -> Word {
        Word::new(letters.to_vec())
    }

    fn punct(g: u32) -> Surface {
        Surface::punctured(g, 1).unwrap()
    }

    fn binomial(n: usize, k: usize) -> usize {
        if k > n {
            return 0;
        }
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn basis_examples() {
        let b = build_middle_basis(&Surface::closed(1), 2, 100).unwrap();
        let rendered: Vec<String> = b.iter().map(|w| w.to_string()).collect();
        assert_eq!(rendered, ["IT", "TI", "a1a1", "a1b1", "b1a1", "b1b1"]);
        assert_eq!(build_middle_basis(&punct(1), 2, 100).unwrap().len(), 4);
        assert_eq!(build_middle_basis(&Surface::closed(2), 4, 1000).unwrap().len(), 454);
        let with_holes = build_middle_basis(&Surface::punctured(1, 3).unwrap(), 2, 100).unwrap();
        assert_eq!(with_holes.len(), 16);
        assert!(with_holes.iter().all(|w| w.total_degree() == 2));
    }

    #[test]
    fn basis_sizes_match_count() {
        for g in 0..=2usize {
            for m in 1..=4usize {
                let expected: usize = (0..=m / 2)
                    .map(|j| binomial(m, j) * binomial(m - j, j) * (2 * g).pow((m - 2 * j) as u32))
                    .sum();
                let b = build_middle_basis(&Surface::closed(g as u32), m, 10_000).unwrap();
                assert_eq!(b.len(), expected, "g={g} m={m}");
                assert!(b.windows(2).all(|w| w[0] < w[1]));
                for w in &b {
                    let units = w.letters().iter().filter(|l| **l == Unit).count();
                    let tops = w.letters().iter().filter(|l| **l == Fundamental).count();
                    assert_eq!(units, tops);
                }
            }
        }
    }

    #[test]
    fn basis_cap() {
        assert!(matches!(
            build_middle_basis(&Surface::closed(2), 4, 100),
            Err(OracleError::BasisCap { cap: 100, .. })
        ));
    }

    #[test]
    fn duals() {
        assert_eq!(word(&[A(1), B(1)]).dual().unwrap(), word(&[B(1), A(1)]));
        assert_eq!(word(&[Unit, Fundamental]).dual().unwrap(), word(&[Fundamental, Unit]));
        for w in build_middle_basis(&Surface::closed(2), 3, 1000).unwrap() {
            assert_eq!(w.dual().unwrap().dual().unwrap(), w);
        }
        assert!(matches!(
            word(&[A(1), Hole(1)]).dual(),
            Err(OracleError::NoDual(_))
        ));
    }

    #[test]
    fn pairing_examples() {
        assert_eq!(intersection_pairing(&word(&[Unit, Fundamental]), &word(&[Fundamental, Unit])), 1);
        assert_eq!(intersection_pairing(&word(&[A(1), A(1)]), &word(&[A(1), A(1)])), 0);
        assert_eq!(intersection_pairing(&word(&[A(1), Hole(1)]), &word(&[B(1), Hole(1)])), 0);
        // The alternating words a_i b_i ... a_i b_i pair to +1 with their duals.
        for n in 1..=3 {
            for i in 1..=2 {
                let w = Word::new([A(i), B(i)].repeat(n));
                assert_eq!(intersection_pairing(&w, &w.dual().unwrap()), 1, "{w}");
            }
        }
        // Otherwise the sign is (-1)^{C(alpha, 2) + beta}: a1a1 pairs to -1.
        assert_eq!(intersection_pairing(&word(&[A(1), A(1)]), &word(&[B(1), B(1)])), -1);
        assert_eq!(intersection_pairing(&word(&[B(1), B(1)]), &word(&[A(1), A(1)])), -1);
        assert_eq!(intersection_pairing(&word(&[A(1)]), &word(&[B(1)])), 1);
        assert_eq!(intersection_pairing(&word(&[B(1)]), &word(&[A(1)])), -1);
    }

    #[test]
    fn pairing_support_and_symmetry() {
        for surface in [Surface::closed(1), Surface::closed(2), punct(2), Surface::punctured(1, 2).unwrap()] {
            for m in 1..=4 {
                let basis = build_middle_basis(&surface, m, 1000).unwrap();
                for w in &basis {
                    for v in &basis {
                        let b = intersection_pairing(w, v);
                        if b != 0 {
                            assert_eq!(Some(v.clone()), w.dual().ok());
                        }
                        // Symmetric for even m, skew for odd m.
                        let sym = if m % 2 == 0 { 1 } else { -1 };
                        assert_eq!(intersection_pairing(v, w), sym * b);
                    }
                }
            }
        }
    }

    #[test]
    fn action_examples() {
        let w = word(&[A(1), B(1)]);
        let id = Permutation::identity(2);
        assert_eq!(permutation_action(&id, &w).unwrap(), SignedWord { word: w.clone(), sign: 1 });
        let swap = Permutation::parse("(1 2)", 2).unwrap();
        assert_eq!(
            permutation_action(&swap, &w).unwrap(),
            SignedWord { word: word(&[B(1), A(1)]), sign: -1 }
        );
        assert_eq!(
            permutation_action(&swap, &word(&[Unit, Fundamental])).unwrap(),
            SignedWord { word: word(&[Fundamental, Unit]), sign: 1 }
        );
        assert!(permutation_action(&swap, &word(&[A(1)])).is_err());
    }

    #[test]
    fn action_is_a_homomorphism() {
        let h = MiddleHomology::new(Surface::closed(1), 3, 1000).unwrap();
        let s3 = PermutationGroup::symmetric(3, LIMIT).unwrap();
        for p in s3.elements() {
            for q in s3.elements() {
                let pq = h.action(&p.compose(q)).unwrap().to_matrix();
                let prod = h.action(p).unwrap().to_matrix() * h.action(q).unwrap().to_matrix();
                assert_eq!(pq, prod);
            }
        }
    }

    #[test]
    fn action_preserves_form() {
        for surface in [Surface::closed(1), Surface::closed(2), punct(1), Surface::punctured(1, 2).unwrap()] {
            for m in 1..=4 {
                let h = MiddleHomology::new(surface, m, 1000).unwrap();
                let b = h.intersection_matrix();
                let sm = PermutationGroup::symmetric(m, LIMIT).unwrap();
                for pi in sm.elements() {
                    let a = h.action(pi).unwrap().to_matrix();
                    assert_eq!(a.transpose() * &b * &a, b, "{surface} m={m} pi={pi}");
                    let inv = h.action(&pi.inverse()).unwrap().to_matrix();
                    assert_eq!(&a * inv, DMatrix::identity(h.dim(), h.dim()));
                }
            }
        }
    }

    fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn cyclic_shift_signatures() {
        for g in 0..=2u32 {
            for k in 1..=4usize {
                let even = k % 2 == 0;
                let closed = g_signature(&cyclic_shift(k), &Surface::closed(g), k, 1e-9).unwrap();
                let expected = if even { 2.0 - 2.0 * g as f64 } else { 0.0 };
                assert!(close(closed.value, expected.into(), 1e-9), "closed g={g} k={k}: {}", closed.value);
                let open = g_signature(&cyclic_shift(k), &punct(g), k, 1e-9).unwrap();
                let expected = if even { -2.0 * g as f64 } else { 0.0 };
                assert!(close(open.value, expected.into(), 1e-9), "punct g={g} k={k}: {}", open.value);
            }
        }
    }

    #[test]
    fn identity_on_sphere_squared_is_hyperbolic() {
        let r = g_signature(&Permutation::identity(2), &Surface::closed(0), 2, 1e-9).unwrap();
        assert!(close(r.value, 0.0.into(), 1e-12));
        assert_eq!(r.eigenvalue_breakdown.len(), 1);
        assert_eq!(r.eigenvalue_breakdown[0].dimension, 2);
    }

    #[test]
    fn product_formula_examples() {
        let id = Permutation::identity(2);
        let direct = g_signature(&id, &Surface::closed(1), 2, 1e-9).unwrap().value;
        let product = product_formula_check(&id, &Surface::closed(1), 1e-9).unwrap();
        assert!(close(direct, product, 1e-9));
        assert!(close(product, 0.0.into(), 1e-9));

        let four = Permutation::parse("(1 2 3 4)", 4).unwrap();
        let v = product_formula_check(&four, &Surface::closed(2), 1e-9).unwrap();
        assert!(close(v, (-2.0).into(), 1e-9));

        let two_two = Permutation::parse("(1 2)(3 4)", 4).unwrap();
        for g in 0..=2u32 {
            let v = product_formula_check(&two_two, &Surface::closed(g), 1e-9).unwrap();
            let expected = (2.0 - 2.0 * g as f64).powi(2);
            assert!(close(v, expected.into(), 1e-9));
            let direct = g_signature(&two_two, &Surface::closed(g), 4, 1e-9).unwrap().value;
            assert!(close(direct, expected.into(), 1e-9));
        }
    }

    #[test]
    fn quotient_examples() {
        let s2 = PermutationGroup::symmetric(2, LIMIT).unwrap();
        assert_eq!(quotient_signature_oracle(&s2, &Surface::closed(1), 1e-9).unwrap(), 0);
        assert_eq!(quotient_signature_oracle(&s2, &punct(1), 1e-9).unwrap(), -1);
        let s3 = PermutationGroup::symmetric(3, LIMIT).unwrap();
        for g in 0..=2 {
            assert_eq!(quotient_signature_oracle(&s3, &Surface::closed(g), 1e-9).unwrap(), 0);
            assert_eq!(quotient_signature_oracle(&s3, &punct(g), 1e-9).unwrap(), 0);
        }
        assert_eq!(
            quotient_signature_oracle(&s2, &Surface::closed(1), 1e-9),
            quotient_signature_oracle_with(&s2, &Surface::closed(1), 1e-9, Execution::Sequential)
                .map(|o| o.value)
        );
    }

    #[test]
    fn holes_do_not_change_signatures() {
        let s2 = PermutationGroup::symmetric(2, LIMIT).unwrap();
        for k in 1..=3 {
            let s = Surface::punctured(1, k).unwrap();
            assert_eq!(quotient_signature_oracle(&s2, &s, 1e-9).unwrap(), -1);
        }
    }

    #[test]
    fn degree_mismatch() {
        let s3 = PermutationGroup::symmetric(3, LIMIT).unwrap();
        let h = MiddleHomology::new(Surface::closed(1), 2, 100).unwrap();
        assert!(matches!(
            h.quotient_signature(&s3, 1e-9, Execution::Sequential),
            Err(OracleError::DegreeMismatch { expected: 2, got: 3 })
        ));
    }

    #[test]
    fn cyclic_space_with_single_pairing() {
        // V has basis v0, ω v0, ..., ω^{2n-1} v0; ω shifts the basis and
        // B(ω^i v0, ω^j v0) = b exactly when j - i ≡ n (mod 2n).
        for n in 1..=4usize {
            for b in [1.0, -1.0, 3.0] {
                let dim = 2 * n;
                let action = SignedPermutation::new((0..dim).map(|i| (i + 1) % dim).collect(), vec![1; dim]);
                let form = DMatrix::from_fn(dim, dim, |i, j| {
                    if (j + dim - i) % dim == n {
                        Complex64::new(b, 0.0)
                    } else {
                        Complex64::new(0.0, 0.0)
                    }
                });
                let s = spectral_g_signature(&action, &form).unwrap();
                let expected = if n == 1 { 2.0 * b.signum() } else { 0.0 };
                assert!(close(s.value, expected.into(), 1e-9), "n={n} b={b}: {}", s.value);
                assert!(s.residual < 1e-9);
            }
        }
    }

    #[test]
    fn form_shape_is_checked() {
        let action = SignedPermutation::new(vec![0, 1], vec![1, 1]);
        let form = DMatrix::<Complex64>::zeros(3, 3);
        assert!(matches!(
            spectral_g_signature(&action, &form),
            Err(OracleError::FormShape { expected: 2, got: 3 })
        ));
    }
}
