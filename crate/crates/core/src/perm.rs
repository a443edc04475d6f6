//! Permutations in one-line notation.
//!
//! Positions and values are 1-based at the API boundary. `w.at(i)` is w(i).
//! Right multiplication by a transposition `(i,j)` swaps the entries in
//! positions i and j; left multiplication swaps the values i and j.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest size for which Lehmer ranks fit in a `u64`.
pub const MAX_RANK_N: usize = 20;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Permutation {
    word: Vec<u8>,
}

/// The transposition (i,j) with 1 <= i < j.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transposition {
    i: usize,
    j: usize,
}

impl Transposition {
    pub fn new(i: usize, j: usize) -> Result<Self> {
        if i == 0 || i >= j {
            return Err(Error::InvalidTransposition(i, j));
        }
        Ok(Transposition { i, j })
    }

    pub(crate) const fn new_unchecked(i: usize, j: usize) -> Self {
        Transposition { i, j }
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// All transpositions of [n] in lexicographic order.
    pub fn all(n: usize) -> Vec<Transposition> {
        (1..=n)
            .flat_map(|i| (i + 1..=n).map(move |j| Transposition { i, j }))
            .collect()
    }
}

impl fmt::Display for Transposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i, self.j)
    }
}

impl Serialize for Transposition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl Permutation {
    /// Builds a permutation from its one-line word, checking it is a bijection
    /// of [n].
    pub fn from_word(word: Vec<u8>) -> Result<Self> {
        let n = word.len();
        if n > u8::MAX as usize {
            return Err(Error::InvalidPermutation(format!("{word:?}")));
        }
        let mut seen = vec![false; n + 1];
        for &x in &word {
            let x = x as usize;
            if x == 0 || x > n || seen[x] {
                return Err(Error::InvalidPermutation(format!("{word:?}")));
            }
            seen[x] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).collect(),
        }
    }

    /// The longest element w₀ = n (n-1) ... 1.
    pub fn longest(n: usize) -> Self {
        Permutation {
            word: (1..=n as u8).rev().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &[u8] {
        &self.word
    }

    /// w(i), 1-based. Panics when `i` is out of range.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.word[i - 1] as usize
    }

    /// w⁻¹(x), 1-based. Panics when `x` is out of range.
    pub fn position_of(&self, x: usize) -> usize {
        self.word
            .iter()
            .position(|&v| v as usize == x)
            .expect("value out of range")
            + 1
    }

    pub fn is_identity(&self) -> bool {
        self.word
            .iter()
            .enumerate()
            .all(|(i, &v)| v as usize == i + 1)
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.n()];
        for (i, &v) in self.word.iter().enumerate() {
            inv[v as usize - 1] = (i + 1) as u8;
        }
        Permutation { word: inv }
    }

    /// The composition `self ∘ other`, i.e. x ↦ self(other(x)).
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        self.check_size(other.n())?;
        Ok(Permutation {
            word: other
                .word
                .iter()
                .map(|&x| self.word[x as usize - 1])
                .collect(),
        })
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        inversions(&self.word)
    }

    /// w·(i,j): exchanges the entries in positions i and j.
    pub fn apply_transposition(&self, t: Transposition) -> Result<Permutation> {
        if t.j > self.n() {
            return Err(Error::OutOfRange {
                index: t.j,
                n: self.n(),
            });
        }
        Ok(self.swap_positions(t.i, t.j))
    }

    pub(crate) fn swap_positions(&self, i: usize, j: usize) -> Permutation {
        let mut word = self.word.clone();
        word.swap(i - 1, j - 1);
        Permutation { word }
    }

    /// (a,b)·w: exchanges the values a and b.
    pub fn swap_values(&self, a: usize, b: usize) -> Result<Permutation> {
        let n = self.n();
        for x in [a, b] {
            if x == 0 || x > n {
                return Err(Error::OutOfRange { index: x, n });
            }
        }
        let word = self
            .word
            .iter()
            .map(|&v| match v as usize {
                x if x == a => b as u8,
                x if x == b => a as u8,
                _ => v,
            })
            .collect();
        Ok(Permutation { word })
    }

    /// The set w[k] = {w(1), ..., w(k)}, sorted increasingly.
    pub fn prefix_set(&self, k: usize) -> Result<Vec<usize>> {
        if k == 0 || k > self.n() {
            return Err(Error::OutOfRange {
                index: k,
                n: self.n(),
            });
        }
        let mut set: Vec<usize> = self.word[..k].iter().map(|&v| v as usize).collect();
        set.sort_unstable();
        Ok(set)
    }

    /// Positions i in [n-1] with w(i) > w(i+1).
    pub fn descent_set(&self) -> Vec<usize> {
        self.word
            .windows(2)
            .enumerate()
            .filter(|(_, p)| p[0] > p[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    /// Lexicographically smallest increasing index tuple (1-based) whose
    /// values are order-isomorphic to `pattern`.
    pub fn contains_classical_pattern(&self, pattern: &Permutation) -> Option<Vec<usize>> {
        let k = pattern.n();
        if k > self.n() {
            return None;
        }
        let mut chosen = Vec::with_capacity(k);
        if self.extend_pattern(pattern, 0, &mut chosen) {
            Some(chosen.into_iter().map(|i| i + 1).collect())
        } else {
            None
        }
    }

    fn extend_pattern(&self, pattern: &Permutation, start: usize, chosen: &mut Vec<usize>) -> bool {
        let slot = chosen.len();
        if slot == pattern.n() {
            return true;
        }
        let remaining = pattern.n() - slot;
        for pos in start..=self.n() - remaining {
            let x = self.word[pos];
            let consistent = chosen
                .iter()
                .enumerate()
                .all(|(t, &q)| (self.word[q] < x) == (pattern.word[t] < pattern.word[slot]));
            if consistent {
                chosen.push(pos);
                if self.extend_pattern(pattern, pos + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    /// Rank of the permutation in lexicographic order (its Lehmer code read
    /// in the factorial number system).
    pub fn rank(&self) -> u64 {
        rank_of(&self.word)
    }

    pub fn unrank(n: usize, mut rank: u64) -> Result<Permutation> {
        if n > MAX_RANK_N || rank >= factorial(n) {
            return Err(Error::OutOfRange {
                index: rank as usize,
                n,
            });
        }
        let mut pool: Vec<u8> = (1..=n as u8).collect();
        let mut word = Vec::with_capacity(n);
        for i in (0..n).rev() {
            let f = factorial(i);
            let d = (rank / f) as usize;
            rank %= f;
            word.push(pool.remove(d));
        }
        Ok(Permutation { word })
    }

    /// All of S_n in lexicographic (rank) order.
    pub fn all(n: usize) -> AllPermutations {
        AllPermutations {
            next: Some((1..=n as u8).collect()),
        }
    }

    pub(crate) fn check_size(&self, other: usize) -> Result<()> {
        if self.n() == other {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.n(),
                found: other,
            })
        }
    }
}

pub(crate) fn inversions(word: &[u8]) -> usize {
    let mut count = 0;
    for (i, &a) in word.iter().enumerate() {
        count += word[i + 1..].iter().filter(|&&b| b < a).count();
    }
    count
}

pub(crate) fn rank_of(word: &[u8]) -> u64 {
    let n = word.len();
    let mut rank = 0u64;
    for (i, &a) in word.iter().enumerate() {
        let smaller_after = word[i + 1..].iter().filter(|&&b| b < a).count() as u64;
        rank = rank * (n - i) as u64 + smaller_after;
    }
    rank
}

pub fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// Lexicographic successor iterator over S_n.
pub struct AllPermutations {
    next: Option<Vec<u8>>,
}

impl Iterator for AllPermutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        if next_permutation(&mut succ) {
            self.next = Some(succ);
        }
        Some(Permutation { word: current })
    }
}

fn next_permutation(w: &mut [u8]) -> bool {
    let n = w.len();
    if n < 2 {
        return false;
    }
    let Some(i) = (0..n - 1).rev().find(|&i| w[i] < w[i + 1]) else {
        return false;
    };
    let j = (i + 1..n).rev().find(|&j| w[j] > w[i]).unwrap();
    w.swap(i, j);
    w[i + 1..].reverse();
    true
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &v in &self.word {
                write!(f, "{v}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.word.iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Accepts the comma-free form ("2134") for n <= 9 and the
    /// comma-separated form ("2,1,3,4") for any n.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidPermutation(s.to_string());
        let word: Vec<u8> = if s.contains(',') {
            s.split(',')
                .map(|p| p.trim().parse::<u8>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        } else {
            if s.is_empty() || s.len() > 9 {
                return Err(bad());
            }
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as u8).ok_or_else(bad))
                .collect::<Result<_>>()?
        };
        Permutation::from_word(word).map_err(|_| bad())
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn t(i: usize, j: usize) -> Transposition {
        Transposition::new(i, j).unwrap()
    }

    #[test]
    fn apply_transposition_examples() {
        assert_eq!(p("1234").apply_transposition(t(2, 4)).unwrap(), p("1432"));
        assert_eq!(p("2134").apply_transposition(t(3, 4)).unwrap(), p("2143"));
        assert!(p("123").apply_transposition(t(2, 4)).is_err());
        assert!(Transposition::new(3, 3).is_err());
        assert!(Transposition::new(0, 2).is_err());
    }

    #[test]
    fn transposition_is_an_involution_on_s4() {
        for w in Permutation::all(4) {
            for tr in Transposition::all(4) {
                let once = w.apply_transposition(tr).unwrap();
                assert_eq!(once.apply_transposition(tr).unwrap(), w);
            }
        }
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(p("2314").inverse(), p("3124"));
        assert_eq!(Permutation::identity(5).inverse(), Permutation::identity(5));
        assert_eq!(p("54321").inverse(), p("54321"));
    }

    #[test]
    fn length_examples() {
        assert_eq!(p("2143").length(), 2);
        for n in 1..=7 {
            assert_eq!(Permutation::longest(n).length(), n * (n - 1) / 2);
        }
        // pairs: (2,1),(3,1),(4,1),(6,5),(6,1),(5,1)
        assert_eq!(p("234651").length(), 6);
    }

    #[test]
    fn prefix_set_examples() {
        assert_eq!(p("2134").prefix_set(2).unwrap(), vec![1, 2]);
        assert_eq!(p("2134").prefix_set(1).unwrap(), vec![2]);
        assert_eq!(p("234651").prefix_set(4).unwrap(), vec![2, 3, 4, 6]);
        assert!(p("2134").prefix_set(0).is_err());
        assert!(p("2134").prefix_set(5).is_err());
    }

    #[test]
    fn descent_set_examples() {
        assert!(Permutation::identity(4).descent_set().is_empty());
        assert_eq!(p("2143").descent_set(), vec![1, 3]);
        assert_eq!(Permutation::longest(5).descent_set(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn classical_pattern_examples() {
        assert_eq!(
            p("2143").contains_classical_pattern(&p("2143")),
            Some(vec![1, 2, 3, 4])
        );
        assert!(p("4651273")
            .contains_classical_pattern(&p("1324"))
            .is_some());
        assert_eq!(p("1234").contains_classical_pattern(&p("21")), None);
        assert_eq!(p("12").contains_classical_pattern(&p("123")), None);
    }

    #[test]
    fn parse_and_display() {
        assert_eq!(p("2134").to_string(), "2134");
        assert_eq!(p("2,1,3,4"), p("2134"));
        let big: Permutation = "10,9,8,7,6,5,4,3,2,1".parse().unwrap();
        assert_eq!(big, Permutation::longest(10));
        assert_eq!(big.to_string(), "10,9,8,7,6,5,4,3,2,1");
        assert!("1123".parse::<Permutation>().is_err());
        assert!("1245".parse::<Permutation>().is_err());
        assert!("".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
        assert!("1234567890".parse::<Permutation>().is_err());
    }

    #[test]
    fn rank_order_matches_lexicographic_enumeration() {
        for n in 0..=6 {
            let all: Vec<_> = Permutation::all(n).collect();
            assert_eq!(all.len() as u64, factorial(n));
            for (r, w) in all.iter().enumerate() {
                assert_eq!(w.rank(), r as u64);
                assert_eq!(&Permutation::unrank(n, r as u64).unwrap(), w);
            }
            assert!(all.windows(2).all(|p| p[0] < p[1]));
        }
        assert!(Permutation::unrank(3, 6).is_err());
    }

    #[test]
    fn swap_values_is_left_multiplication() {
        let w = p("213654");
        let t = p("321456"); // the transposition (1,3) as a permutation
        assert_eq!(w.swap_values(1, 3).unwrap(), t.compose(&w).unwrap());
        assert_eq!(w.swap_values(1, 3).unwrap(), p("231654"));
    }
}
