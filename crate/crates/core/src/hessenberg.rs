//! Hessenberg functions, generators, and the corresponding-generator map.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::perm::{Permutation, Transposition};

/// A nondecreasing h: [n] → [n] with h(i) >= i.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HessenbergFunction {
    values: Vec<u8>,
}

impl HessenbergFunction {
    pub fn new(values: Vec<u8>) -> Result<Self> {
        let n = values.len();
        let bad = || Error::InvalidHessenberg(format!("{values:?}"));
        if n == 0 || n > u8::MAX as usize {
            return Err(bad());
        }
        let mut prev = 0;
        for (idx, &v) in values.iter().enumerate() {
            let v = v as usize;
            if v < idx + 1 || v > n || v < prev {
                return Err(bad());
            }
            prev = v;
        }
        Ok(HessenbergFunction { values })
    }

    /// h = (n, ..., n); Γ_h is the full Bruhat graph.
    pub fn full(n: usize) -> Self {
        HessenbergFunction {
            values: vec![n as u8; n],
        }
    }

    /// h = (1, 2, ..., n); Γ_h has no edges.
    pub fn diagonal(n: usize) -> Self {
        HessenbergFunction {
            values: (1..=n as u8).collect(),
        }
    }

    /// h = (2, 3, ..., n, n), the permutohedral case.
    pub fn permutohedral(n: usize) -> Self {
        HessenbergFunction {
            values: (1..=n).map(|i| (i + 1).min(n) as u8).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[u8] {
        &self.values
    }

    /// h(i), 1-based.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1] as usize
    }

    /// Whether i < j <= h(i).
    #[inline]
    pub fn admits(&self, i: usize, j: usize) -> bool {
        i < j && j <= self.at(i)
    }

    /// The transpositions (i,j) with i < j <= h(i), in lexicographic order.
    pub fn admissible(&self) -> Vec<Transposition> {
        (1..=self.n())
            .flat_map(|i| (i + 1..=self.at(i)).map(move |j| Transposition::new_unchecked(i, j)))
            .collect()
    }

    /// d_h = Σ (h(i) - i).
    pub fn dimension(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| v as usize - (i + 1))
            .sum()
    }

    pub fn is_full(&self) -> bool {
        self.values.iter().all(|&v| v as usize == self.n())
    }

    /// Restriction to [n-1] obtained by deleting vertex n from the
    /// incomparability graph.
    pub fn drop_last(&self) -> Option<HessenbergFunction> {
        let m = self.n().checked_sub(1).filter(|&m| m > 0)?;
        Some(HessenbergFunction {
            values: self.values[..m].iter().map(|&v| v.min(m as u8)).collect(),
        })
    }

    pub(crate) fn check_size(&self, w: &Permutation) -> Result<()> {
        if w.n() == self.n() {
            Ok(())
        } else {
            Err(Error::SizeMismatch {
                expected: self.n(),
                found: w.n(),
            })
        }
    }
}

/// All Hessenberg functions on [n] in lexicographic order.
pub fn enumerate_hessenberg(n: usize) -> Vec<HessenbergFunction> {
    fn go(n: usize, prefix: &mut Vec<u8>, out: &mut Vec<HessenbergFunction>) {
        let i = prefix.len() + 1;
        if i > n {
            out.push(HessenbergFunction {
                values: prefix.clone(),
            });
            return;
        }
        let lo = prefix.last().map_or(i, |&p| (p as usize).max(i));
        for v in lo..=n {
            prefix.push(v as u8);
            go(n, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(n, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

pub fn catalan(n: usize) -> u64 {
    // C(2n, n) / (n + 1), computed incrementally to stay exact
    let mut c = 1u64;
    for k in 0..n as u64 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

/// ℓ_h(w): inversions (i,j) of w with j <= h(i).
pub fn ell_h(w: &Permutation, h: &HessenbergFunction) -> Result<usize> {
    h.check_size(w)?;
    Ok(h.admissible()
        .iter()
        .filter(|t| w.at(t.i()) > w.at(t.j()))
        .count())
}

/// w is a generator for h iff w⁻¹(w(i)+1) <= h(i) whenever w(i) <= n-1.
pub fn is_generator(w: &Permutation, h: &HessenbergFunction) -> Result<bool> {
    h.check_size(w)?;
    Ok(generator_condition(w.word(), h))
}

pub(crate) fn generator_condition(word: &[u8], h: &HessenbergFunction) -> bool {
    let n = word.len();
    let mut pos = vec![0usize; n + 2];
    for (i, &v) in word.iter().enumerate() {
        pos[v as usize] = i + 1;
    }
    (1..n).all(|x| pos[x + 1] <= h.at(pos[x]))
}

/// All generators for h, in rank order.
pub fn generators(h: &HessenbergFunction) -> Vec<Permutation> {
    Permutation::all(h.n())
        .filter(|w| generator_condition(w.word(), h))
        .collect()
}

/// Bitmask recording, for each admissible pair (i,j) in lexicographic order,
/// whether w(i) < w(j). Two permutations share a key iff they satisfy the
/// same relative-order condition on admissible pairs.
pub(crate) fn relation_key(word: &[u8], admissible: &[Transposition]) -> u128 {
    let mut key = 0u128;
    for (bit, t) in admissible.iter().enumerate() {
        if word[t.i() - 1] < word[t.j() - 1] {
            key |= 1 << bit;
        }
    }
    key
}

/// The generator w̃ order-agreeing with w on every pair i < j <= h(i).
///
/// Reference implementation: filters every generator of h and requires
/// exactly one survivor.
pub fn corresponding_generator(w: &Permutation, h: &HessenbergFunction) -> Result<Permutation> {
    h.check_size(w)?;
    let adm = h.admissible();
    let key = relation_key(w.word(), &adm);
    let mut found = generators(h)
        .into_iter()
        .filter(|g| relation_key(g.word(), &adm) == key);
    let first = found.next();
    match (first, found.next()) {
        (Some(g), None) => Ok(g),
        (None, _) => Err(Error::Invariant(format!(
            "no corresponding generator for w = {w}, h = {h}"
        ))),
        (Some(a), Some(b)) => Err(Error::Invariant(format!(
            "corresponding generator for w = {w}, h = {h} is not unique ({a}, {b}, ...)"
        ))),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncomparabilityGraph {
    pub n: usize,
    /// Unordered pairs {i,j} stored as (i,j) with i < j, lexicographic.
    pub edges: Vec<(usize, usize)>,
}

pub fn incomparability_graph(h: &HessenbergFunction) -> IncomparabilityGraph {
    IncomparabilityGraph {
        n: h.n(),
        edges: h.admissible().iter().map(|t| (t.i(), t.j())).collect(),
    }
}

impl IncomparabilityGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph incomparability {\n");
        for v in 1..=self.n {
            let _ = writeln!(out, "  {v};");
        }
        for (i, j) in &self.edges {
            let _ = writeln!(out, "  {i} -- {j};");
        }
        out.push_str("}\n");
        out
    }
}

impl fmt::Display for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.values.iter().map(|v| v.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl fmt::Debug for HessenbergFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hessenberg{self}")
    }
}

impl FromStr for HessenbergFunction {
    type Err = Error;

    /// Accepts "3,3,4,4" and "(3,3,4,4)".
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .unwrap_or(trimmed);
        let bad = || Error::InvalidHessenberg(s.to_string());
        let values = inner
            .split(',')
            .map(|p| p.trim().parse::<u8>().map_err(|_| bad()))
            .collect::<Result<Vec<u8>>>()?;
        HessenbergFunction::new(values).map_err(|_| bad())
    }
}

impl Serialize for HessenbergFunction {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for HessenbergFunction {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
