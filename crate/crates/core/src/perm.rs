//! Permutations of `{1..N}`.
//!
//! A [`Permutation`] moves the entry at position `i` to position `p(i)`:
//! `(p·v)[p(i)] = v[i]`. Under this convention composition is a left action,
//! `(p∘q)·v = p·(q·v)`. Internally images are 0-based; text forms are 1-based.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

/// Sort direction for [`Permutation::sorting`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SortOrder {
    Ascending,
    Descending,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        if images.is_empty() {
            return Err(Error::InvalidPermutation("empty image list".into()));
        }
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n {
                return Err(Error::InvalidPermutation(format!(
                    "image {} out of range 1..{}",
                    x + 1,
                    n
                )));
            }
            if std::mem::replace(&mut seen[x], true) {
                return Err(Error::InvalidPermutation(format!(
                    "image {} repeated",
                    x + 1
                )));
            }
        }
        Ok(Permutation { images })
    }

    /// Builds a permutation from 1-based one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self> {
        let zero_based = images
            .iter()
            .map(|&x| {
                x.checked_sub(1)
                    .ok_or_else(|| Error::InvalidPermutation("image 0 in 1-based list".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_images(zero_based)
    }

    /// Builds a permutation from disjoint cycles given in 1-based notation.
    ///
    /// ```
    /// use permqm::perm::Permutation;
    /// let p = Permutation::from_cycles(5, &[&[1, 2], &[3, 4, 5]]).unwrap();
    /// assert_eq!(p.to_string(), "2 1 4 5 3");
    /// ```
    pub fn from_cycles(degree: usize, cycles: &[&[usize]]) -> Result<Self> {
        let mut images: Vec<usize> = (0..degree).collect();
        let mut touched = vec![false; degree];
        for cycle in cycles {
            for (j, &x) in cycle.iter().enumerate() {
                if x == 0 || x > degree {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry {x} out of range 1..{degree}"
                    )));
                }
                if std::mem::replace(&mut touched[x - 1], true) {
                    return Err(Error::InvalidPermutation(format!(
                        "cycle entry {x} repeated"
                    )));
                }
                images[x - 1] = cycle[(j + 1) % cycle.len()] - 1;
            }
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// 0-based image of 0-based point `i`.
    pub fn image(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| i == x)
    }

    /// `(self∘other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_degree(other.degree())?;
        Ok(Permutation {
            images: other.images.iter().map(|&j| self.images[j]).collect(),
        })
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x] = i;
        }
        Permutation { images: inv }
    }

    /// `self^t`, computed by rotating each cycle; cost is linear in the degree
    /// whatever the magnitude of `t`.
    pub fn power(&self, t: i64) -> Permutation {
        let mut images = vec![0; self.degree()];
        for cycle in self.cycles() {
            let len = cycle.len() as i64;
            let shift = t.rem_euclid(len) as usize;
            for (j, &x) in cycle.iter().enumerate() {
                images[x] = cycle[(j + shift) % cycle.len()];
            }
        }
        Permutation { images }
    }

    /// Disjoint cycles including fixed points, each starting at its least
    /// point, ordered by that point. Entries are 0-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut x = self.images[start];
            while x != start {
                seen[x] = true;
                cycle.push(x);
                x = self.images[x];
            }
            out.push(cycle);
        }
        out
    }

    pub fn cycle_lengths(&self) -> Vec<usize> {
        self.cycles().iter().map(Vec::len).collect()
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_lengths(self.cycle_lengths())
    }

    pub fn max_cycle_length(&self) -> usize {
        self.cycle_lengths().into_iter().max().unwrap_or(0)
    }

    /// Least common multiple of the cycle lengths. Unbounded: the order of an
    /// element of S_2000 does not fit in a machine word.
    pub fn order(&self) -> BigUint {
        self.cycle_type()
            .pairs()
            .iter()
            .fold(BigUint::one(), |acc, &(len, _)| {
                acc.lcm(&BigUint::from(len))
            })
    }

    /// +1 for even, -1 for odd permutations.
    pub fn sign(&self) -> i32 {
        let transpositions: usize = self.cycle_lengths().iter().map(|l| l - 1).sum();
        if transpositions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Applies the permutation to a slice: `out[p(i)] = v[i]`.
    pub fn apply<T: Clone>(&self, v: &[T]) -> Result<Vec<T>> {
        self.check_degree(v.len())?;
        let mut out = v.to_vec();
        for (i, x) in v.iter().enumerate() {
            out[self.images[i]] = x.clone();
        }
        Ok(out)
    }

    /// The permutation `R` with `R·v` sorted in `order`. Ties keep their
    /// original relative order, so the result is deterministic.
    ///
    /// ```
    /// use permqm::perm::{Permutation, SortOrder};
    /// let v = [3, 1, 2];
    /// let r = Permutation::sorting(&v, SortOrder::Ascending);
    /// assert_eq!(r.apply(&v).unwrap(), vec![1, 2, 3]);
    /// ```
    pub fn sorting<T: Ord>(v: &[T], order: SortOrder) -> Permutation {
        let mut idx: Vec<usize> = (0..v.len()).collect();
        match order {
            SortOrder::Ascending => idx.sort_by(|&a, &b| v[a].cmp(&v[b])),
            SortOrder::Descending => idx.sort_by(|&a, &b| v[b].cmp(&v[a])),
        }
        // idx[rank] = source position, so R(source) = rank.
        let mut images = vec![0; v.len()];
        for (rank, &src) in idx.iter().enumerate() {
            images[src] = rank;
        }
        Permutation { images }
    }

    /// Uniform sample from S_N (Fisher-Yates).
    pub fn random<R: Rng + ?Sized>(degree: usize, rng: &mut R) -> Result<Permutation> {
        if degree == 0 {
            return Err(Error::InvalidSize("degree must be at least 1".into()));
        }
        let mut images: Vec<usize> = (0..degree).collect();
        images.shuffle(rng);
        Ok(Permutation { images })
    }

    /// All of S_N in lexicographic order of one-line notation.
    pub fn all(degree: usize) -> AllPermutations {
        AllPermutations {
            next: Some((0..degree).collect()),
        }
    }

    fn check_degree(&self, other: usize) -> Result<()> {
        if self.degree() != other {
            return Err(Error::DegreeMismatch {
                left: self.degree(),
                right: other,
            });
        }
        Ok(())
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation[{self}]")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses whitespace-separated 1-based one-line notation, e.g. `"3 1 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>()
                    .map_err(|e| Error::Parse(format!("permutation image {tok:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_one_based(&images)
    }
}

/// Lexicographic enumeration of S_N; see [`Permutation::all`].
pub struct AllPermutations {
    next: Option<Vec<usize>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_lexicographic(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { images: current })
    }
}

fn next_lexicographic(a: &mut [usize]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let Some(i) = (0..a.len() - 1).rev().find(|&i| a[i] < a[i + 1]) else {
        return false;
    };
    let j = (i + 1..a.len()).rev().find(|&j| a[j] > a[i]).unwrap();
    a.swap(i, j);
    a[i + 1..].reverse();
    true
}

/// Multiset of cycle lengths as `(length, multiplicity)` pairs, longest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleType {
    pairs: Vec<(usize, usize)>,
}

impl CycleType {
    pub fn from_lengths(lengths: impl IntoIterator<Item = usize>) -> Self {
        let mut counts = std::collections::BTreeMap::new();
        for len in lengths {
            *counts.entry(len).or_insert(0) += 1;
        }
        CycleType {
            pairs: counts.into_iter().rev().collect(),
        }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn degree(&self) -> usize {
        self.pairs.iter().map(|(l, r)| l * r).sum()
    }

    pub fn max_length(&self) -> usize {
        self.pairs.first().map_or(0, |&(l, _)| l)
    }
}

impl fmt::Display for CycleType {
    /// `"3^1 2^1"`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (len, mult)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{len}^{mult}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_transpositions() {
        let p = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        let q = Permutation::from_cycles(3, &[&[2, 3]]).unwrap();
        let pq = p.compose(&q).unwrap();
        // (p∘q)(1)=2, (p∘q)(2)=3, (p∘q)(3)=1
        assert_eq!(pq, Permutation::from_cycles(3, &[&[1, 2, 3]]).unwrap());
        assert_eq!(Permutation::identity(3).compose(&p).unwrap(), p);
        assert!(p.compose(&p.inverse()).unwrap().is_identity());
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let err = Permutation::identity(3)
            .compose(&Permutation::identity(4))
            .unwrap_err();
        assert_eq!(err, Error::DegreeMismatch { left: 3, right: 4 });
    }

    #[test]
    fn powers() {
        let p = Permutation::from_cycles(5, &[&[1, 2], &[3, 4, 5]]).unwrap();
        assert!(p.power(0).is_identity());
        assert!(p.power(6).is_identity());
        assert_eq!(p.power(3), Permutation::from_cycles(5, &[&[1, 2]]).unwrap());
        assert_eq!(p.power(-1), p.inverse());
        let c = Permutation::from_cycles(7, &[&[1, 2, 3, 4, 5, 6, 7]]).unwrap();
        assert!(c.power(7).is_identity());
        assert_eq!(c.power(i64::MAX), c.power(i64::MAX.rem_euclid(7)));
    }

    #[test]
    fn cycle_types() {
        assert_eq!(Permutation::identity(5).cycle_type().to_string(), "1^5");
        let p = Permutation::from_cycles(5, &[&[1, 2], &[3, 4, 5]]).unwrap();
        assert_eq!(p.cycle_type().pairs(), &[(3, 1), (2, 1)]);
        let long: Vec<usize> = (1..=100).collect();
        let c = Permutation::from_cycles(100, &[&long]).unwrap();
        assert_eq!(c.cycle_type().pairs(), &[(100, 1)]);
        assert_eq!(perm("2 1 3").cycle_type().to_string(), "2^1 1^1");
    }

    #[test]
    fn orders() {
        assert_eq!(Permutation::identity(4).order(), BigUint::one());
        let p = Permutation::from_cycles(5, &[&[1, 2], &[3, 4, 5]]).unwrap();
        assert_eq!(p.order(), BigUint::from(6u32));
        let c = Permutation::from_cycles(9, &[&[1, 2, 3, 4, 5, 6, 7, 8, 9]]).unwrap();
        assert_eq!(c.order(), BigUint::from(9u32));
    }

    #[test]
    fn sorting_permutations() {
        assert!(Permutation::sorting(&[1, 2, 3], SortOrder::Ascending).is_identity());
        let v = [3, 1, 2];
        let r = Permutation::sorting(&v, SortOrder::Ascending);
        assert_eq!(r.apply(&v).unwrap(), vec![1, 2, 3]);
        assert!(Permutation::sorting(&[5, 5], SortOrder::Ascending).is_identity());
        assert!(Permutation::sorting(&[5, 5], SortOrder::Descending).is_identity());
        let d = Permutation::sorting(&[1, 4, 4, 2], SortOrder::Descending);
        assert_eq!(d.to_string(), "4 1 2 3");
    }

    #[test]
    fn apply_transposition() {
        let p = Permutation::from_cycles(3, &[&[1, 2]]).unwrap();
        assert_eq!(p.apply(&[7, 0, 3]).unwrap(), vec![0, 7, 3]);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(perm("3 1 2").to_string(), "3 1 2");
        assert!("1 1 2".parse::<Permutation>().is_err());
        assert!("0 1".parse::<Permutation>().is_err());
        assert!("1 x".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
    }

    #[test]
    fn enumeration_is_lexicographic_and_complete() {
        let all: Vec<_> = Permutation::all(4).collect();
        assert_eq!(all.len(), 24);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(Permutation::all(1).count(), 1);
    }

    #[test]
    fn signs() {
        assert_eq!(Permutation::identity(3).sign(), 1);
        assert_eq!(perm("2 1 3").sign(), -1);
        assert_eq!(perm("2 3 1").sign(), 1);
    }

    #[test]
    fn random_permutation_contract() {
        assert!(Permutation::random(0, &mut stream(1, 0)).is_err());
        assert!(Permutation::random(1, &mut stream(1, 0))
            .unwrap()
            .is_identity());
        let a = Permutation::random(50, &mut stream(9, 2)).unwrap();
        let b = Permutation::random(50, &mut stream(9, 2)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn random_permutation_is_uniform_on_s3() {
        // Each of the 6 elements has p = 1/6; sd of a count is sqrt(n p (1-p)).
        let draws = 60_000;
        let mut rng = stream(2024, 0);
        let mut counts = std::collections::HashMap::new();
        for _ in 0..draws {
            *counts
                .entry(Permutation::random(3, &mut rng).unwrap())
                .or_insert(0usize) += 1;
        }
        assert_eq!(counts.len(), 6);
        let expected = draws as f64 / 6.0;
        let sd = (draws as f64 * (1.0 / 6.0) * (5.0 / 6.0)).sqrt();
        for (p, c) in counts {
            assert!((c as f64 - expected).abs() <= 3.0 * sd, "{p}: {c}");
        }
    }

    fn arb_perm(n: usize) -> impl Strategy<Value = Permutation> {
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(|v| Permutation::from_images(v).unwrap())
    }

    fn arb_triple() -> impl Strategy<Value = (Permutation, Permutation, Permutation)> {
        (1usize..20).prop_flat_map(|n| (arb_perm(n), arb_perm(n), arb_perm(n)))
    }

    proptest! {
        #[test]
        fn composition_is_associative((p, q, r) in arb_triple()) {
            let left = p.compose(&q).unwrap().compose(&r).unwrap();
            let right = p.compose(&q.compose(&r).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn action_is_compatible_with_composition((p, q, _r) in arb_triple()) {
            let v: Vec<usize> = (0..p.degree()).map(|i| i * i + 3).collect();
            let lhs = p.compose(&q).unwrap().apply(&v).unwrap();
            let rhs = p.apply(&q.apply(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn power_of_order_is_identity(p in (1usize..40).prop_flat_map(arb_perm)) {
            let ord: u64 = p.order().try_into().unwrap();
            prop_assert!(p.power(ord as i64).is_identity());
            prop_assert_eq!(p.cycle_type().degree(), p.degree());
        }

        #[test]
        fn sorting_yields_monotone_sequences(v in prop::collection::vec(0u32..6, 1..30)) {
            let up = Permutation::sorting(&v, SortOrder::Ascending).apply(&v).unwrap();
            prop_assert!(up.windows(2).all(|w| w[0] <= w[1]));
            let down = Permutation::sorting(&v, SortOrder::Descending).apply(&v).unwrap();
            prop_assert!(down.windows(2).all(|w| w[0] >= w[1]));
        }
    }
}
