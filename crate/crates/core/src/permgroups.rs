//! Permutations, cycle types, and explicitly enumerated permutation groups.
//!
//! Points are `1..=m` at the API boundary (cycle notation, display) and
//! `0..m` internally. Composition `p.compose(q)` is `p ∘ q`, i.e. apply `q`
//! first.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Default cap on the number of materialized group elements.
pub const DEFAULT_ELEMENT_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("malformed cycle notation: {0}")]
    Syntax(String),
    #[error("point {point} outside 1..={degree}")]
    OutOfRange { point: usize, degree: usize },
    #[error("point {0} repeated in cycle notation")]
    RepeatedPoint(usize),
    #[error("images do not form a bijection of 1..={0}")]
    NotBijection(usize),
    #[error("degree mismatch: expected {expected}, got {got}")]
    DegreeMismatch { expected: usize, got: usize },
    #[error("degree must be at least 1")]
    ZeroDegree,
    #[error("group closure exceeds the element limit of {limit}")]
    SizeLimit { limit: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree as u32).collect(),
        }
    }

    /// Builds from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self, GroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            let i = i as usize;
            if i >= n || seen[i] {
                return Err(GroupError::NotBijection(n));
            }
            seen[i] = true;
        }
        Ok(Permutation { images })
    }

    /// Builds from 1-based images, as in `[2, 3, 1]`.
    pub fn from_one_based(images: &[usize]) -> Result<Self, GroupError> {
        let shifted = images
            .iter()
            .map(|&i| {
                i.checked_sub(1)
                    .map(|v| v as u32)
                    .ok_or(GroupError::NotBijection(images.len()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_images(shifted)
    }

    /// The `k`-cycle `i -> i+1 (mod k)` on `offset+1 ..= offset+k` inside
    /// `degree` points.
    pub fn cycle_on(degree: usize, offset: usize, k: usize) -> Self {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        for j in 0..k {
            images[offset + j] = (offset + (j + 1) % k) as u32;
        }
        Permutation { images }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based images.
    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// 1-based images.
    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&i| i as usize + 1).collect()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn compose(&self, first: &Permutation) -> Permutation {
        debug_assert_eq!(self.degree(), first.degree());
        Permutation {
            images: first.images.iter().map(|&i| self.images[i as usize]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.degree()];
        for (i, &p) in self.images.iter().enumerate() {
            images[p as usize] = i as u32;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &p)| i as u32 == p)
    }

    /// Disjoint cycles (0-based), each starting at its smallest point, in
    /// increasing order of that point. Fixed points are included.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut p = start;
            while !seen[p] {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_type(&self) -> CycleType {
        let mut multiplicities = vec![0usize; self.degree()];
        for c in self.cycles() {
            multiplicities[c.len() - 1] += 1;
        }
        CycleType { multiplicities }
    }

    /// Order of the permutation: lcm of its cycle lengths.
    pub fn order(&self) -> usize {
        self.cycles()
            .iter()
            .fold(1, |acc, c| num_integer::lcm(acc, c.len()))
    }

    /// Parses disjoint-cycle notation such as `"(1 2 3)(4 5)"` or `"()"`.
    ///
    /// Juxtaposed cycles must be disjoint; unmentioned points are fixed.
    pub fn parse(text: &str, degree: usize) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut used = vec![false; degree];
        let mut rest = text.trim();
        if rest.is_empty() {
            return Err(GroupError::Syntax("empty input".into()));
        }
        while !rest.is_empty() {
            let body = rest
                .strip_prefix('(')
                .ok_or_else(|| GroupError::Syntax(format!("expected '(' at {rest:?}")))?;
            let close = body
                .find(')')
                .ok_or_else(|| GroupError::Syntax("unclosed '('".into()))?;
            let inner = &body[..close];
            if inner.contains('(') {
                return Err(GroupError::Syntax("nested '('".into()));
            }
            let mut points = Vec::new();
            for tok in inner.split_whitespace() {
                let point: usize = tok
                    .parse()
                    .map_err(|_| GroupError::Syntax(format!("not a positive integer: {tok:?}")))?;
                if point == 0 || point > degree {
                    return Err(GroupError::OutOfRange { point, degree });
                }
                if used[point - 1] {
                    return Err(GroupError::RepeatedPoint(point));
                }
                used[point - 1] = true;
                points.push(point - 1);
            }
            for (j, &p) in points.iter().enumerate() {
                images[p] = points[(j + 1) % points.len()] as u32;
            }
            rest = body[close + 1..].trim_start();
        }
        Ok(Permutation { images })
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (j, p) in c.iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Cycle structure `1^{a_1} 2^{a_2} ... m^{a_m}` of a permutation of `m`
/// points; `multiplicities[k-1] = a_k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleType {
    multiplicities: Vec<usize>,
}

impl CycleType {
    /// Validates `sum k a_k = m` where `m = multiplicities.len()`.
    pub fn new(multiplicities: Vec<usize>) -> Result<Self, GroupError> {
        let degree = multiplicities.len();
        let total: usize = multiplicities
            .iter()
            .enumerate()
            .map(|(i, a)| (i + 1) * a)
            .sum();
        if total != degree {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                got: total,
            });
        }
        Ok(CycleType { multiplicities })
    }

    pub(crate) fn new_unchecked(multiplicities: Vec<usize>) -> Self {
        debug_assert_eq!(
            multiplicities
                .iter()
                .enumerate()
                .map(|(i, a)| (i + 1) * a)
                .sum::<usize>(),
            multiplicities.len()
        );
        CycleType { multiplicities }
    }

    pub fn degree(&self) -> usize {
        self.multiplicities.len()
    }

    pub fn multiplicities(&self) -> &[usize] {
        &self.multiplicities
    }

    /// Number of `k`-cycles (`k` is 1-based).
    pub fn count(&self, k: usize) -> usize {
        self.multiplicities.get(k.wrapping_sub(1)).copied().unwrap_or(0)
    }

    /// `(k, a_k)` for every cycle length present.
    pub fn parts(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.multiplicities
            .iter()
            .enumerate()
            .filter(|(_, &a)| a > 0)
            .map(|(i, &a)| (i + 1, a))
    }
}

/// Finite permutation group with all elements materialized.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermutationGroup {
    /// Closes `generators` under composition, breadth first, and sorts the
    /// elements lexicographically by image sequence.
    pub fn generate(generators: Vec<Permutation>, limit: usize) -> Result<Self, GroupError> {
        let degree = generators
            .first()
            .map(Permutation::degree)
            .ok_or(GroupError::ZeroDegree)?;
        Self::generate_on(degree, generators, limit)
    }

    /// Like [`generate`](Self::generate) but with an explicit degree, so an
    /// empty generator list yields the trivial group.
    pub fn generate_on(
        degree: usize,
        generators: Vec<Permutation>,
        limit: usize,
    ) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(GroupError::DegreeMismatch {
                expected: degree,
                got: g.degree(),
            });
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = g.compose(&p);
                if !seen.contains(&q) {
                    if seen.len() >= limit {
                        return Err(GroupError::SizeLimit { limit });
                    }
                    seen.insert(q.clone());
                    queue.push_back(q);
                }
            }
        }
        let mut elements: Vec<_> = seen.into_iter().collect();
        elements.sort();
        Ok(PermutationGroup {
            degree,
            generators,
            elements,
        })
    }

    pub fn trivial(degree: usize) -> Result<Self, GroupError> {
        Self::generate_on(degree, Vec::new(), 1)
    }

    /// `S_n`, generated by `(1 2)` and `(1 2 ... n)`.
    pub fn symmetric(n: usize, limit: usize) -> Result<Self, GroupError> {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Permutation::cycle_on(n, 0, 2));
        }
        if n >= 3 {
            gens.push(Permutation::cycle_on(n, 0, n));
        }
        Self::generate_on(n, gens, limit)
    }

    /// `C_n`, generated by `(1 2 ... n)`.
    pub fn cyclic(n: usize, limit: usize) -> Result<Self, GroupError> {
        let gens = if n >= 2 {
            vec![Permutation::cycle_on(n, 0, n)]
        } else {
            Vec::new()
        };
        Self::generate_on(n, gens, limit)
    }

    /// `A_n`, generated by the 3-cycles `(1 2 i)`; trivial for `n <= 2`.
    pub fn alternating(n: usize, limit: usize) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::ZeroDegree);
        }
        let gens = (3..=n)
            .map(|i| {
                let mut images: Vec<u32> = (0..n as u32).collect();
                images[0] = 1;
                images[1] = (i - 1) as u32;
                images[i - 1] = 0;
                Permutation { images }
            })
            .collect();
        Self::generate_on(n, gens, limit)
    }

    /// `outer ≀ inner` on `k·m` points, where `outer` acts on `k` blocks and
    /// `inner` acts inside each block. Point `(b-1)·m + j` is point `j` of
    /// block `b`.
    pub fn wreath(
        outer: &PermutationGroup,
        inner: &PermutationGroup,
        limit: usize,
    ) -> Result<Self, GroupError> {
        let k = outer.degree();
        let m = inner.degree();
        let degree = k * m;
        let mut gens = Vec::new();
        for block in 0..k {
            for h in inner.generators() {
                let mut images: Vec<u32> = (0..degree as u32).collect();
                for j in 0..m {
                    images[block * m + j] = (block * m + h.apply(j)) as u32;
                }
                gens.push(Permutation { images });
            }
        }
        for q in outer.generators() {
            let mut images = vec![0u32; degree];
            for block in 0..k {
                for j in 0..m {
                    images[block * m + j] = (q.apply(block) * m + j) as u32;
                }
            }
            gens.push(Permutation { images });
        }
        Self::generate_on(degree, gens, limit)
    }

    /// `S_k ≀ inner`.
    pub fn wreath_symmetric(
        k: usize,
        inner: &PermutationGroup,
        limit: usize,
    ) -> Result<Self, GroupError> {
        if k == 0 {
            return Err(GroupError::ZeroDegree);
        }
        let outer = Self::symmetric(k, limit)?;
        Self::wreath(&outer, inner, limit)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.elements.binary_search(p).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const LIMIT: usize = DEFAULT_ELEMENT_LIMIT;

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn parse_examples() {
        let swap = Permutation::parse("(1 2)", 2).unwrap();
        assert_eq!(swap.one_based(), vec![2, 1]);
        assert!(Permutation::parse("()", 4).unwrap().is_identity());
        let p = Permutation::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.one_based(), vec![2, 3, 1, 5, 4]);
        assert_eq!(p.to_string(), "(1 2 3)(4 5)");
    }

    #[test]
    fn parse_errors() {
        assert_eq!(
            Permutation::parse("(1 2 1)", 3),
            Err(GroupError::RepeatedPoint(1))
        );
        assert_eq!(
            Permutation::parse("(1 2)(2 3)", 3),
            Err(GroupError::RepeatedPoint(2))
        );
        assert_eq!(
            Permutation::parse("(1 4)", 3),
            Err(GroupError::OutOfRange { point: 4, degree: 3 })
        );
        assert_eq!(
            Permutation::parse("(0 1)", 3),
            Err(GroupError::OutOfRange { point: 0, degree: 3 })
        );
        for bad in ["1 2", "(1 2", "(1 x)", "((1 2))", "", "(1 2) 3"] {
            assert!(
                matches!(Permutation::parse(bad, 3), Err(GroupError::Syntax(_))),
                "{bad:?}"
            );
        }
    }

    #[test]
    fn cycle_types() {
        let id = Permutation::identity(4);
        assert_eq!(id.cycle_type().multiplicities(), &[4, 0, 0, 0]);
        let p = Permutation::parse("(1 2 3)(4 5)", 5).unwrap();
        assert_eq!(p.cycle_type().multiplicities(), &[0, 1, 1, 0, 0]);
        let c6 = Permutation::cycle_on(6, 0, 6);
        assert_eq!(c6.cycle_type().count(6), 1);
        assert_eq!(c6.order(), 6);
        assert!(CycleType::new(vec![1, 1, 1]).is_err());
    }

    #[test]
    fn small_groups() {
        let trivial = PermutationGroup::generate(vec![Permutation::identity(3)], LIMIT).unwrap();
        assert_eq!(trivial.order(), 1);
        let s3 = PermutationGroup::generate(
            vec![
                Permutation::parse("(1 2)", 3).unwrap(),
                Permutation::parse("(1 2 3)", 3).unwrap(),
            ],
            LIMIT,
        )
        .unwrap();
        assert_eq!(s3.order(), 6);
        let c4 = PermutationGroup::generate(vec![Permutation::parse("(1 2 3 4)", 4).unwrap()], LIMIT)
            .unwrap();
        assert_eq!(c4.order(), 4);
    }

    #[test]
    fn named_families() {
        assert_eq!(PermutationGroup::symmetric(3, LIMIT).unwrap().order(), 6);
        assert_eq!(PermutationGroup::cyclic(5, LIMIT).unwrap().order(), 5);
        assert_eq!(PermutationGroup::alternating(4, LIMIT).unwrap().order(), 12);
        assert_eq!(PermutationGroup::alternating(1, LIMIT).unwrap().order(), 1);
        assert_eq!(PermutationGroup::symmetric(1, LIMIT).unwrap().order(), 1);
        for n in 1..=7 {
            assert_eq!(PermutationGroup::symmetric(n, LIMIT).unwrap().order(), factorial(n));
            assert_eq!(
                PermutationGroup::alternating(n, LIMIT).unwrap().order(),
                factorial(n).div_ceil(2).max(1)
            );
        }
    }

    #[test]
    fn size_limit_is_enforced() {
        assert_eq!(
            PermutationGroup::symmetric(5, 100),
            Err(GroupError::SizeLimit { limit: 100 })
        );
        assert_eq!(PermutationGroup::symmetric(5, 120).unwrap().order(), 120);
    }

    #[test]
    fn wreath_orders() {
        let s2 = PermutationGroup::symmetric(2, LIMIT).unwrap();
        let w = PermutationGroup::wreath_symmetric(2, &s2, LIMIT).unwrap();
        assert_eq!((w.degree(), w.order()), (4, 8));
        // Dihedral group of the square 1-2 / 3-4: it contains (1 3)(2 4) and (1 2).
        assert!(w.contains(&Permutation::parse("(1 3)(2 4)", 4).unwrap()));
        assert!(w.contains(&Permutation::parse("(1 3 2 4)", 4).unwrap()));
        assert!(!w.contains(&Permutation::parse("(1 3)", 4).unwrap()));

        let s3 = PermutationGroup::symmetric(3, LIMIT).unwrap();
        let w = PermutationGroup::wreath_symmetric(2, &s3, LIMIT).unwrap();
        assert_eq!((w.degree(), w.order()), (6, 72));

        let c3 = PermutationGroup::cyclic(3, LIMIT).unwrap();
        let one_block = PermutationGroup::wreath_symmetric(1, &c3, LIMIT).unwrap();
        assert_eq!(one_block.elements(), c3.elements());

        for (k, m) in [(2, 2), (2, 3), (3, 2), (2, 4), (3, 3)] {
            let inner = PermutationGroup::symmetric(m, LIMIT).unwrap();
            let w = PermutationGroup::wreath_symmetric(k, &inner, LIMIT).unwrap();
            assert_eq!(w.order(), factorial(m).pow(k as u32) * factorial(k), "k={k} m={m}");
        }
    }

    fn check_group_axioms(g: &PermutationGroup) {
        let n = g.degree();
        assert!(g.contains(&Permutation::identity(n)));
        assert_eq!(factorial(n) % g.order(), 0);
        for a in g.elements() {
            assert!(g.contains(&a.inverse()));
            for b in g.elements() {
                assert!(g.contains(&a.compose(b)));
            }
        }
    }

    #[test]
    fn enumerated_groups_are_closed() {
        let s2 = PermutationGroup::symmetric(2, LIMIT).unwrap();
        let groups = vec![
            PermutationGroup::symmetric(4, LIMIT).unwrap(),
            PermutationGroup::symmetric(5, LIMIT).unwrap(),
            PermutationGroup::alternating(5, LIMIT).unwrap(),
            PermutationGroup::cyclic(9, LIMIT).unwrap(),
            PermutationGroup::wreath_symmetric(2, &s2, LIMIT).unwrap(),
            PermutationGroup::wreath_symmetric(3, &s2, LIMIT).unwrap(),
        ];
        for g in &groups {
            check_group_axioms(g);
        }
    }

    #[test]
    fn cycle_type_is_conjugation_invariant() {
        let s2 = PermutationGroup::symmetric(2, LIMIT).unwrap();
        for g in [
            PermutationGroup::symmetric(4, LIMIT).unwrap(),
            PermutationGroup::wreath_symmetric(2, &s2, LIMIT).unwrap(),
            PermutationGroup::alternating(5, LIMIT).unwrap(),
        ] {
            for p in g.elements() {
                for s in g.elements() {
                    let conj = s.compose(p).compose(&s.inverse());
                    assert_eq!(conj.cycle_type(), p.cycle_type());
                }
            }
        }
    }

    #[test]
    fn elements_are_sorted() {
        let g = PermutationGroup::symmetric(4, LIMIT).unwrap();
        assert!(g.elements().windows(2).all(|w| w[0] < w[1]));
        assert!(g.elements()[0].is_identity());
    }
}
