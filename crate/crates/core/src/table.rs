//! Precomputed tables over S_n for exhaustive sweeps.
//!
//! A [`SymmetricGroup`] is built once per n and then only read, so it can be
//! shared by reference across worker threads. Per-h data lives in
//! [`HContext`], which borrows the group.
//!
//! Upper sets here come from the transitive closure of length-increasing
//! transpositions, not from the tableau criterion in [`crate::order`]; the two
//! routes are cross-checked by the `P-tableau` verification.

use std::collections::HashMap;
use std::sync::OnceLock;

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::hessenberg::{generator_condition, relation_key, HessenbergFunction};
use crate::perm::{rank_of, Permutation, Transposition};

/// Largest n for which dense n! × n! bit tables are built.
pub const MAX_TABLE_N: usize = 7;

pub type Rank = u32;

pub struct SymmetricGroup {
    n: usize,
    perms: Vec<Permutation>,
    lengths: Vec<u8>,
    transpositions: Vec<Transposition>,
    /// step[r * T + t] = rank(perms[r] · transpositions[t])
    step: Vec<Rank>,
    /// ranks sorted by decreasing length
    by_length_desc: Vec<Rank>,
    upper: OnceLock<Vec<FixedBitSet>>,
}

impl SymmetricGroup {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_TABLE_N {
            return Err(Error::TooLarge(n));
        }
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        let lengths = perms.iter().map(|p| p.length() as u8).collect::<Vec<_>>();
        let transpositions = Transposition::all(n);
        let tn = transpositions.len();
        let mut step = vec![0; perms.len() * tn];
        let mut buf = vec![0u8; n];
        for (r, p) in perms.iter().enumerate() {
            for (ti, t) in transpositions.iter().enumerate() {
                buf.copy_from_slice(p.word());
                buf.swap(t.i() - 1, t.j() - 1);
                step[r * tn + ti] = rank_of(&buf) as Rank;
            }
        }
        let mut by_length_desc: Vec<Rank> = (0..perms.len() as Rank).collect();
        by_length_desc.sort_by_key(|&r| std::cmp::Reverse(lengths[r as usize]));
        Ok(SymmetricGroup {
            n,
            perms,
            lengths,
            transpositions,
            step,
            by_length_desc,
            upper: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, r: Rank) -> &Permutation {
        &self.perms[r as usize]
    }

    pub fn length(&self, r: Rank) -> usize {
        self.lengths[r as usize] as usize
    }

    pub fn rank(&self, p: &Permutation) -> Rank {
        p.rank() as Rank
    }

    pub fn transpositions(&self) -> &[Transposition] {
        &self.transpositions
    }

    pub fn transposition_index(&self, i: usize, j: usize) -> usize {
        // index of (i,j) in lexicographic order over pairs of [n]
        let n = self.n;
        (i - 1) * (2 * n - i) / 2 + (j - i - 1)
    }

    #[inline]
    pub fn step(&self, r: Rank, t: usize) -> Rank {
        self.step[r as usize * self.transpositions.len() + t]
    }

    pub fn identity(&self) -> Rank {
        0
    }

    pub fn longest(&self) -> Rank {
        (self.order() - 1) as Rank
    }

    /// Closure of each element under the given length-increasing steps.
    fn closure(&self, steps: &[usize], covers_only: bool) -> Vec<FixedBitSet> {
        let size = self.order();
        let mut sets = vec![FixedBitSet::with_capacity(size); size];
        for &r in &self.by_length_desc {
            let mut set = FixedBitSet::with_capacity(size);
            set.insert(r as usize);
            let len = self.length(r);
            for &t in steps {
                let s = self.step(r, t);
                let slen = self.length(s);
                if slen > len && (!covers_only || slen == len + 1) {
                    set.union_with(&sets[s as usize]);
                }
            }
            sets[r as usize] = set;
        }
        sets
    }

    /// Bruhat upper sets: `upper(r)` contains s iff perm(r) ⪯ perm(s).
    pub fn upper(&self, r: Rank) -> &FixedBitSet {
        &self.upper_sets()[r as usize]
    }

    fn upper_sets(&self) -> &Vec<FixedBitSet> {
        self.upper.get_or_init(|| {
            let all: Vec<usize> = (0..self.transpositions.len()).collect();
            self.closure(&all, false)
        })
    }

    /// Elements reachable by chains of length-one steps.
    pub fn cover_closure(&self, steps: &[usize]) -> Vec<FixedBitSet> {
        self.closure(steps, true)
    }

    pub fn step_closure(&self, steps: &[usize]) -> Vec<FixedBitSet> {
        self.closure(steps, false)
    }

    /// Rank of σ ∘ perm(r).
    pub fn left_multiply(&self, sigma: &Permutation, r: Rank) -> Rank {
        let word: Vec<u8> = self
            .perm(r)
            .word()
            .iter()
            .map(|&x| sigma.at(x as usize) as u8)
            .collect();
        rank_of(&word) as Rank
    }
}

/// Per-h tables: admissible steps, generators, w ↦ w̃, and h-reachability.
pub struct HContext<'g> {
    group: &'g SymmetricGroup,
    h: HessenbergFunction,
    admissible: Vec<usize>,
    generators: Vec<Rank>,
    is_generator: FixedBitSet,
    tilde: Vec<Option<Rank>>,
    /// pairs of generators sharing a relative-order key
    conflicts: Vec<(Rank, Rank)>,
    reach: OnceLock<Vec<FixedBitSet>>,
}

/// Γ_{w,h} in table form.
pub struct TableSubgraph {
    pub vertices: FixedBitSet,
    pub count: usize,
    pub min_degree: usize,
    pub max_degree: usize,
}

impl TableSubgraph {
    pub fn is_regular(&self) -> bool {
        self.min_degree == self.max_degree
    }
}

impl<'g> HContext<'g> {
    pub fn new(group: &'g SymmetricGroup, h: HessenbergFunction) -> Result<Self> {
        if h.n() != group.n() {
            return Err(Error::SizeMismatch {
                expected: group.n(),
                found: h.n(),
            });
        }
        let admissible: Vec<usize> = h
            .admissible()
            .iter()
            .map(|t| group.transposition_index(t.i(), t.j()))
            .collect();
        let adm_list = h.admissible();
        let mut is_generator = FixedBitSet::with_capacity(group.order());
        let mut generators = Vec::new();
        let mut by_key: HashMap<u128, Rank> = HashMap::new();
        let mut conflicts = Vec::new();
        for r in 0..group.order() as Rank {
            let word = group.perm(r).word();
            if generator_condition(word, &h) {
                is_generator.insert(r as usize);
                generators.push(r);
                let key = relation_key(word, &adm_list);
                if let Some(&prev) = by_key.get(&key) {
                    conflicts.push((prev, r));
                } else {
                    by_key.insert(key, r);
                }
            }
        }
        let tilde = (0..group.order() as Rank)
            .map(|r| {
                by_key
                    .get(&relation_key(group.perm(r).word(), &adm_list))
                    .copied()
            })
            .collect();
        Ok(HContext {
            group,
            h,
            admissible,
            generators,
            is_generator,
            tilde,
            conflicts,
            reach: OnceLock::new(),
        })
    }

    pub fn group(&self) -> &'g SymmetricGroup {
        self.group
    }

    pub fn h(&self) -> &HessenbergFunction {
        &self.h
    }

    /// Indices (into `group.transpositions()`) of the admissible pairs.
    pub fn admissible(&self) -> &[usize] {
        &self.admissible
    }

    pub fn generators(&self) -> &[Rank] {
        &self.generators
    }

    pub fn is_generator(&self, r: Rank) -> bool {
        self.is_generator.contains(r as usize)
    }

    /// w̃ for w = perm(r); `None` only if no generator matches.
    pub fn tilde(&self, r: Rank) -> Option<Rank> {
        self.tilde[r as usize]
    }

    pub fn generator_conflicts(&self) -> &[(Rank, Rank)] {
        &self.conflicts
    }

    /// `reach(r)` contains s iff perm(r) ⪯_h perm(s).
    pub fn reach(&self, r: Rank) -> &FixedBitSet {
        &self.reach_sets()[r as usize]
    }

    fn reach_sets(&self) -> &Vec<FixedBitSet> {
        self.reach
            .get_or_init(|| self.group.step_closure(&self.admissible))
    }

    pub fn cover_reach(&self) -> Vec<FixedBitSet> {
        self.group.cover_closure(&self.admissible)
    }

    /// σ = w ∘ w̃⁻¹, the left translation carrying Ω_{w̃,h} onto Ω_{w,h}.
    pub fn translation(&self, w: Rank) -> Option<Permutation> {
        let g = self.tilde(w)?;
        let w_perm = self.group.perm(w);
        let g_inv = self.group.perm(g).inverse();
        w_perm.compose(&g_inv).ok()
    }

    /// Ω_{w,h}^T as a bit set.
    pub fn fixed_points(&self, w: Rank) -> Option<FixedBitSet> {
        let g = self.tilde(w)?;
        if g == w {
            return Some(self.group.upper(w).clone());
        }
        let sigma = self.translation(w)?;
        let mut set = FixedBitSet::with_capacity(self.group.order());
        for u in self.group.upper(g).ones() {
            set.insert(self.group.left_multiply(&sigma, u as Rank) as usize);
        }
        Some(set)
    }

    /// Bit t set iff transposition t is admissible and u·t lies in `vertices`.
    #[inline]
    pub fn edge_mask(&self, vertices: &FixedBitSet, u: Rank) -> u64 {
        let mut mask = 0u64;
        for &t in &self.admissible {
            if vertices.contains(self.group.step(u, t) as usize) {
                mask |= 1 << t;
            }
        }
        mask
    }

    pub fn degree(&self, vertices: &FixedBitSet, u: Rank) -> usize {
        self.edge_mask(vertices, u).count_ones() as usize
    }

    pub fn subgraph_of(&self, vertices: FixedBitSet) -> TableSubgraph {
        let mut min_degree = usize::MAX;
        let mut max_degree = 0;
        let mut count = 0;
        for u in vertices.ones() {
            let d = self.degree(&vertices, u as Rank);
            min_degree = min_degree.min(d);
            max_degree = max_degree.max(d);
            count += 1;
        }
        TableSubgraph {
            vertices,
            count,
            min_degree,
            max_degree,
        }
    }

    pub fn subgraph(&self, w: Rank) -> Option<TableSubgraph> {
        Some(self.subgraph_of(self.fixed_points(w)?))
    }
}
