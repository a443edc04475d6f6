//! Associated patterns: classical order patterns with extra index
//! constraints coming from a Hessenberg function.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::hessenberg::HessenbergFunction;
use crate::perm::Permutation;

/// Index constraint between two slots of an index tuple (0-based slots).
#[derive(Clone, Copy, Debug)]
enum Bound {
    /// idx[a] <= h(idx[b])
    AtMost(usize, usize),
    /// idx[a] > h(idx[b])
    Beyond(usize, usize),
}

use Bound::{AtMost, Beyond};

const FIVE: &[Bound] = &[
    AtMost(2, 0),
    Beyond(3, 0),
    AtMost(3, 1),
    Beyond(4, 1),
    AtMost(4, 2),
];

struct Spec {
    name: &'static str,
    /// the classical pattern, values 1..=len
    shape: &'static [u8],
    bounds: &'static [Bound],
}

const TABLE: [Spec; 11] = [
    Spec {
        name: "2143h",
        shape: &[2, 1, 4, 3],
        bounds: &[AtMost(3, 0)],
    },
    Spec {
        name: "1324h",
        shape: &[1, 3, 2, 4],
        bounds: &[AtMost(3, 1), AtMost(2, 0)],
    },
    Spec {
        name: "1243h",
        shape: &[1, 2, 4, 3],
        bounds: &[AtMost(3, 1), AtMost(1, 0), Beyond(3, 0)],
    },
    Spec {
        name: "2134h",
        shape: &[2, 1, 3, 4],
        bounds: &[AtMost(3, 2), AtMost(2, 0), Beyond(3, 0)],
    },
    Spec {
        name: "1423h",
        shape: &[1, 4, 2, 3],
        bounds: &[AtMost(3, 1), AtMost(2, 0), Beyond(3, 0)],
    },
    Spec {
        name: "2314h",
        shape: &[2, 3, 1, 4],
        bounds: &[AtMost(3, 1), AtMost(2, 0), Beyond(3, 0)],
    },
    Spec {
        name: "2413h",
        shape: &[2, 4, 1, 3],
        bounds: &[
            AtMost(1, 0),
            Beyond(2, 0),
            AtMost(2, 1),
            Beyond(3, 1),
            AtMost(3, 2),
        ],
    },
    Spec {
        name: "25314h",
        shape: &[2, 5, 3, 1, 4],
        bounds: FIVE,
    },
    Spec {
        name: "24315h",
        shape: &[2, 4, 3, 1, 5],
        bounds: FIVE,
    },
    Spec {
        name: "14325h",
        shape: &[1, 4, 3, 2, 5],
        bounds: FIVE,
    },
    Spec {
        name: "15324h",
        shape: &[1, 5, 3, 2, 4],
        bounds: FIVE,
    },
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AssociatedPatternId {
    P2143,
    P1324,
    P1243,
    P2134,
    P1423,
    P2314,
    P2413,
    P25314,
    P24315,
    P14325,
    P15324,
}

impl AssociatedPatternId {
    pub const ALL: [AssociatedPatternId; 11] = [
        Self::P2143,
        Self::P1324,
        Self::P1243,
        Self::P2134,
        Self::P1423,
        Self::P2314,
        Self::P2413,
        Self::P25314,
        Self::P24315,
        Self::P14325,
        Self::P15324,
    ];

    fn spec(self) -> &'static Spec {
        &TABLE[self as usize]
    }

    pub fn name(self) -> &'static str {
        self.spec().name
    }

    /// Number of indices in a witness.
    pub fn arity(self) -> usize {
        self.spec().shape.len()
    }

    /// The underlying classical pattern.
    pub fn classical(self) -> Permutation {
        Permutation::from_word(self.spec().shape.to_vec()).expect("table shapes are permutations")
    }
}

impl fmt::Display for AssociatedPatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for AssociatedPatternId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::UnknownPattern(s.to_string()))
    }
}

impl Serialize for AssociatedPatternId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

/// Named groups of associated patterns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PatternSet {
    /// 2143h, 1324h, 1243h, 2134h, 1423h, 2314h
    Six,
    /// the six plus 2413h; characterizes regularity for generators
    Generator7,
    /// the six plus 25314h
    Generator7Alt,
    /// the four five-index patterns
    Five,
    /// the six plus the four five-index patterns; characterizes regularity
    /// for arbitrary w
    General10,
}

impl PatternSet {
    pub fn members(self) -> &'static [AssociatedPatternId] {
        use AssociatedPatternId::*;
        match self {
            PatternSet::Six => &[P2143, P1324, P1243, P2134, P1423, P2314],
            PatternSet::Generator7 => &[P2143, P1324, P1243, P2134, P1423, P2314, P2413],
            PatternSet::Generator7Alt => &[P2143, P1324, P1243, P2134, P1423, P2314, P25314],
            PatternSet::Five => &[P25314, P24315, P14325, P15324],
            PatternSet::General10 => &[
                P2143, P1324, P1243, P2134, P1423, P2314, P25314, P24315, P14325, P15324,
            ],
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PatternSet::Six => "six",
            PatternSet::Generator7 => "generator7",
            PatternSet::Generator7Alt => "generator7-alt",
            PatternSet::Five => "five",
            PatternSet::General10 => "general10",
        }
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [
            PatternSet::Six,
            PatternSet::Generator7,
            PatternSet::Generator7Alt,
            PatternSet::Five,
            PatternSet::General10,
        ]
        .into_iter()
        .find(|p| p.name() == s.trim())
        .ok_or_else(|| Error::UnknownPattern(s.to_string()))
    }
}

/// 1-based indices at which an associated pattern occurs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PatternWitness {
    pub pattern: AssociatedPatternId,
    pub indices: Vec<usize>,
}

impl fmt::Display for PatternWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.indices.iter().map(|i| i.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn matches(spec: &Spec, word: &[u8], h: &HessenbergFunction, idx: &[usize]) -> bool {
    let bounds_hold = spec.bounds.iter().all(|b| match *b {
        AtMost(a, c) => idx[a] <= h.at(idx[c]),
        Beyond(a, c) => idx[a] > h.at(idx[c]),
    });
    if !bounds_hold {
        return false;
    }
    // same relative order as the shape
    (0..idx.len()).all(|x| {
        (x + 1..idx.len())
            .all(|y| (word[idx[x] - 1] < word[idx[y] - 1]) == (spec.shape[x] < spec.shape[y]))
    })
}

// Lexicographically first increasing tuple in [n] accepted by `accept`.
fn first_tuple(n: usize, k: usize, mut accept: impl FnMut(&[usize]) -> bool) -> Option<Vec<usize>> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        if accept(&idx) {
            return Some(idx);
        }
        let mut p = k;
        while p > 0 && idx[p - 1] == n - k + p {
            p -= 1;
        }
        if p == 0 {
            return None;
        }
        idx[p - 1] += 1;
        for q in p..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

/// The lexicographically smallest witness of `p` in w, if any.
pub fn find_pattern(
    w: &Permutation,
    h: &HessenbergFunction,
    p: AssociatedPatternId,
) -> Result<Option<PatternWitness>> {
    h.check_size(w)?;
    let spec = p.spec();
    Ok(first_tuple(w.n(), spec.shape.len(), |idx| {
        matches(spec, w.word(), h, idx)
    })
    .map(|indices| PatternWitness {
        pattern: p,
        indices,
    }))
}

pub fn contains(w: &Permutation, h: &HessenbergFunction, p: AssociatedPatternId) -> Result<bool> {
    Ok(find_pattern(w, h, p)?.is_some())
}

/// Whether w avoids every pattern in `set`; otherwise the first witness, in
/// the set's listed order.
pub fn avoids_all(
    w: &Permutation,
    h: &HessenbergFunction,
    set: PatternSet,
) -> Result<(bool, Option<PatternWitness>)> {
    for &p in set.members() {
        if let Some(found) = find_pattern(w, h, p)? {
            return Ok((false, Some(found)));
        }
    }
    Ok((true, None))
}

/// Every pattern in `set` contained in w, with its first witness.
pub fn all_witnesses(
    w: &Permutation,
    h: &HessenbergFunction,
    set: PatternSet,
) -> Result<Vec<PatternWitness>> {
    let mut out = Vec::new();
    for &p in set.members() {
        out.extend(find_pattern(w, h, p)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::enumerate_hessenberg;

    fn w(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn h(s: &str) -> HessenbergFunction {
        s.parse().unwrap()
    }

    #[test]
    fn names_round_trip() {
        for p in AssociatedPatternId::ALL {
            assert_eq!(p.name().parse::<AssociatedPatternId>().unwrap(), p);
            assert_eq!(p.name().trim_end_matches('h'), p.classical().to_string());
        }
        assert!("2143".parse::<AssociatedPatternId>().is_err());
        assert_eq!(PatternSet::Generator7.members().len(), 7);
        assert_eq!(PatternSet::General10.members().len(), 10);
    }

    #[test]
    fn spec_examples() {
        let found = find_pattern(&w("2134"), &h("3,3,4,4"), AssociatedPatternId::P2134)
            .unwrap()
            .unwrap();
        assert_eq!(found.indices, vec![1, 2, 3, 4]);
        assert_eq!(found.to_string(), "(1,2,3,4)");
        assert!(!contains(&w("2143"), &h("3,3,4,4"), AssociatedPatternId::P2143).unwrap());
        assert!(contains(&w("2143"), &h("4,4,4,4"), AssociatedPatternId::P2143).unwrap());
        let (ok, witness) = avoids_all(&w("2134"), &h("3,3,4,4"), PatternSet::Generator7).unwrap();
        assert!(!ok);
        assert_eq!(witness.unwrap().pattern, AssociatedPatternId::P2134);
    }

    #[test]
    fn longest_avoids_everything() {
        for n in 1..=6 {
            let w0 = Permutation::longest(n);
            for hh in enumerate_hessenberg(n) {
                assert!(avoids_all(&w0, &hh, PatternSet::General10).unwrap().0);
                assert!(avoids_all(&w0, &hh, PatternSet::Generator7).unwrap().0);
            }
        }
    }

    #[test]
    fn full_h_reduces_to_classical() {
        for n in 1..=6 {
            let full = HessenbergFunction::full(n);
            for x in Permutation::all(n) {
                let classical = x.contains_classical_pattern(&w("2143")).is_some()
                    || x.contains_classical_pattern(&w("1324")).is_some();
                assert_eq!(
                    !avoids_all(&x, &full, PatternSet::General10).unwrap().0,
                    classical
                );
            }
        }
    }

    #[test]
    fn witness_is_lexicographically_first() {
        let found = find_pattern(&w("214365"), &h("6,6,6,6,6,6"), AssociatedPatternId::P2143)
            .unwrap()
            .unwrap();
        assert_eq!(found.indices, vec![1, 2, 3, 4]);
        let found = find_pattern(&w("1243"), &h("2,4,4,4"), AssociatedPatternId::P1243)
            .unwrap()
            .unwrap();
        assert_eq!(found.indices, vec![1, 2, 3, 4]);
    }
}
