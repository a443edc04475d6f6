//! Well-organized permutations, the w̄ chain, and checks of the structural
//! statements used in the regularity induction.
//!
//! Each `check_*` function returns a [`Verdict`]. Stated assumptions on w
//! (generator, well-organized) are preconditions and produce an error when
//! they fail; "if ..." hypotheses inside a statement produce
//! [`Verdict::Vacuous`] instead.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gkm::{induced_subgraph, InducedSubgraph};
use crate::hessenberg::{is_generator, HessenbergFunction};
use crate::order::bruhat_interval;
use crate::patterns::{contains, AssociatedPatternId as P, PatternSet};
use crate::perm::{Permutation, Transposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    First,
    Second,
    Both,
    Neither,
}

impl Kind {
    pub fn is_first(self) -> bool {
        matches!(self, Kind::First | Kind::Both)
    }

    pub fn is_second(self) -> bool {
        matches!(self, Kind::Second | Kind::Both)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellOrgProfile {
    pub w: Permutation,
    /// y₀ < y₁ < ... < y_r
    pub y_values: Vec<usize>,
    pub is_well_organized: bool,
    pub kind: Kind,
    /// w̄₀, ..., w̄_r; present only when well-organized
    pub wbar_chain: Option<Vec<Permutation>>,
}

impl WellOrgProfile {
    pub fn r(&self) -> usize {
        self.y_values.len() - 1
    }

    /// w̄ = w̄_r.
    pub fn wbar(&self) -> Option<&Permutation> {
        self.wbar_chain.as_ref().and_then(|c| c.last())
    }

    /// Positions (a, b) with w̄_m = w̄_{m-1}(a,b), for 1 <= m <= r.
    pub fn chain_step(&self, m: usize) -> (usize, usize) {
        (
            self.w.position_of(self.y_values[m - 1]),
            self.w.position_of(self.y_values[m]),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail", rename_all = "lowercase")]
pub enum Verdict {
    Holds,
    Violated(String),
    /// a hypothesis the statement needs was not met; counted separately
    Skipped(String),
    /// the statement's "if" clause does not apply to this input
    Vacuous,
}

impl Verdict {
    fn from_checks(failures: Vec<String>) -> Verdict {
        if failures.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Violated(failures.join("; "))
        }
    }

    pub fn is_violation(&self) -> bool {
        matches!(self, Verdict::Violated(_))
    }
}

/// Y(w) = {w(i) : i >= w⁻¹(1), w(i) <= w(n)}, sorted.
pub fn y_values(w: &Permutation) -> Vec<usize> {
    let n = w.n();
    let last = w.at(n);
    let mut ys: Vec<usize> = (w.position_of(1)..=n)
        .map(|i| w.at(i))
        .filter(|&x| x <= last)
        .collect();
    ys.sort_unstable();
    ys
}

pub fn profile(w: &Permutation, h: &HessenbergFunction) -> Result<WellOrgProfile> {
    h.check_size(w)?;
    Ok(profile_of(w))
}

pub(crate) fn profile_of(w: &Permutation) -> WellOrgProfile {
    let n = w.n();
    let ys = y_values(w);
    let r = ys.len() - 1;
    let is_well_organized = ys
        .windows(2)
        .all(|p| w.position_of(p[0]) < w.position_of(p[1]));
    let kind = if is_well_organized {
        let first = ys.iter().enumerate().all(|(i, &y)| y == i + 1);
        let second = (0..=r).all(|i| w.at(n - i) == ys[r - i]);
        match (first, second) {
            (true, true) => Kind::Both,
            (true, false) => Kind::First,
            (false, true) => Kind::Second,
            (false, false) => Kind::Neither,
        }
    } else {
        Kind::Neither
    };
    let wbar_chain = is_well_organized.then(|| {
        let mut chain = vec![w.clone()];
        for &y in &ys[1..] {
            let next = chain
                .last()
                .unwrap()
                .swap_values(1, y)
                .expect("distinct values in range");
            chain.push(next);
        }
        chain
    });
    WellOrgProfile {
        w: w.clone(),
        y_values: ys,
        is_well_organized,
        kind,
        wbar_chain,
    }
}

/// w' on [n-1] and h' with w'(i) = w̄(i) - 1, h'(i) = min(h(i), n-1).
/// Requires w̄(n) = 1.
pub fn reduce_last(
    wbar: &Permutation,
    h: &HessenbergFunction,
) -> Result<(Permutation, HessenbergFunction)> {
    h.check_size(wbar)?;
    let n = wbar.n();
    if n < 2 || wbar.at(n) != 1 {
        return Err(Error::Precondition(format!("{wbar} does not end in 1")));
    }
    let word = wbar.word()[..n - 1].iter().map(|&x| x - 1).collect();
    let h2 = h.drop_last().expect("n >= 2");
    Ok((Permutation::from_word(word)?, h2))
}

fn require_generator(w: &Permutation, h: &HessenbergFunction) -> Result<()> {
    if !is_generator(w, h)? {
        return Err(Error::Precondition(format!(
            "{w} is not a generator for {h}"
        )));
    }
    Ok(())
}

fn require_well_organized_generator(
    w: &Permutation,
    h: &HessenbergFunction,
) -> Result<WellOrgProfile> {
    require_generator(w, h)?;
    let prof = profile_of(w);
    if !prof.is_well_organized {
        return Err(Error::Precondition(format!("{w} is not well-organized")));
    }
    Ok(prof)
}

fn avoids(w: &Permutation, h: &HessenbergFunction, ps: &[P]) -> Result<bool> {
    for &p in ps {
        if contains(w, h, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// w⁻¹(y_i) <= h(w⁻¹(y_{i-1})) for 1 <= i <= r.
pub fn check_lemma_y(w: &Permutation, h: &HessenbergFunction) -> Result<Verdict> {
    require_generator(w, h)?;
    let ys = y_values(w);
    let failures = ys
        .windows(2)
        .filter(|p| w.position_of(p[1]) > h.at(w.position_of(p[0])))
        .map(|p| format!("position of {} exceeds h at position of {}", p[1], p[0]))
        .collect();
    Ok(Verdict::from_checks(failures))
}

/// The three properties of w̄ for a well-organized generator w.
pub fn check_prop_wbar(w: &Permutation, h: &HessenbergFunction) -> Result<Verdict> {
    let prof = require_well_organized_generator(w, h)?;
    let wbar = prof.wbar().unwrap().clone();
    let w0 = Permutation::longest(w.n());
    let g = induced_subgraph(w, h)?;
    let lower = bruhat_interval(&wbar, &w0)?;
    check_prop_wbar_in(&prof, h, &g, lower.ranks())
}

/// As [`check_prop_wbar`], given Γ_{w,h} and the ranks of [w̄, w₀].
pub fn check_prop_wbar_in(
    prof: &WellOrgProfile,
    h: &HessenbergFunction,
    g: &InducedSubgraph,
    wbar_interval: &[u64],
) -> Result<Verdict> {
    let w = &prof.w;
    let n = w.n();
    let wbar = prof.wbar().unwrap();
    let mut failures = Vec::new();
    if !is_generator(wbar, h)? {
        failures.push(format!("w̄ = {wbar} is not a generator"));
    }
    let ending_in_one: Vec<u64> = g
        .vertices()
        .filter(|u| u.at(n) == 1)
        .map(|u| u.rank())
        .collect();
    if ending_in_one != wbar_interval {
        failures.push(format!(
            "[w̄, w0] has {} elements, {{u in [w, w0] : u(n) = 1}} has {}",
            wbar_interval.len(),
            ending_in_one.len()
        ));
    }
    if n >= 2 {
        let actual: Vec<usize> = g
            .edge_set(wbar)?
            .transpositions
            .iter()
            .filter(|t| t.j() == n)
            .map(|t| t.i())
            .collect();
        let mut expected: Vec<usize> = prof.y_values[..prof.r()]
            .iter()
            .map(|&y| w.position_of(y))
            .filter(|&p| h.at(p) == n)
            .collect();
        expected.sort_unstable();
        if actual != expected {
            failures.push(format!(
                "edges (i,n) at w̄: found i in {actual:?}, expected {expected:?}"
            ));
        }
    }
    Ok(Verdict::from_checks(failures))
}

/// φ along w̄_{m-1} → w̄_m is a bijection acting as the identity except
/// (p,b) ↦ (p,a) for p < w⁻¹(1); for the first kind the edge sets coincide.
pub fn check_prop_organized(w: &Permutation, h: &HessenbergFunction, m: usize) -> Result<Verdict> {
    let prof = require_well_organized_generator(w, h)?;
    let g = induced_subgraph(w, h)?;
    check_prop_organized_in(&prof, &g, m)
}

pub fn check_prop_organized_in(
    prof: &WellOrgProfile,
    g: &InducedSubgraph,
    m: usize,
) -> Result<Verdict> {
    let r = prof.r();
    if m == 0 || m > r {
        return Err(Error::Precondition(format!("m = {m} outside 1..={r}")));
    }
    let h = g.h();
    let chain = prof.wbar_chain.as_ref().unwrap();
    let (u, v) = (&chain[m - 1], &chain[m]);
    let (a, b) = prof.chain_step(m);
    let one = prof.w.position_of(1);
    let target = g.edge_set(v)?;
    for t in &target.transpositions {
        if t.j() == a && t.i() < one && h.at(t.i()) < b {
            return Ok(Verdict::Skipped(format!(
                "h({}) < {b} for {t} in E(w̄_{m})",
                t.i()
            )));
        }
    }
    let map = g.phi(u, v)?;
    let mut failures = Vec::new();
    if !map.is_injective() || !map.maps_into_target() || !map.is_surjective() {
        failures.push(format!("φ from {u} to {v} is not a bijection"));
    }
    for &(s, img) in &map.pairs {
        let expected = if s.j() == b && s.i() < one {
            Transposition::new(s.i(), a)?
        } else {
            s
        };
        if img != expected {
            failures.push(format!("φ sends {s} to {img}, expected {expected}"));
        }
    }
    if prof.kind.is_first() {
        let source = g.edge_set(u)?;
        if source.transpositions != target.transpositions {
            failures.push(format!("first kind but E(w̄_{}) != E(w̄_{m})", m - 1));
        }
    }
    Ok(Verdict::from_checks(failures))
}

/// A generator avoiding 1324h is well-organized.
pub fn check_lemma_1324(w: &Permutation, h: &HessenbergFunction) -> Result<Verdict> {
    require_generator(w, h)?;
    if contains(w, h, P::P1324)? {
        return Ok(Verdict::Vacuous);
    }
    Ok(if profile_of(w).is_well_organized {
        Verdict::Holds
    } else {
        Verdict::Violated(format!("{w} avoids 1324h but is not well-organized"))
    })
}

/// Kind classification of well-organized generators from h(w⁻¹(1)) and
/// pattern avoidance.
pub fn check_lemma_kind(w: &Permutation, h: &HessenbergFunction) -> Result<Verdict> {
    let prof = require_well_organized_generator(w, h)?;
    let n = w.n();
    let top = h.at(w.position_of(1));
    let mut applied = false;
    let mut failures = Vec::new();
    if top < n && avoids(w, h, &[P::P2134])? {
        applied = true;
        if !prof.kind.is_first() {
            failures.push("h(w⁻¹(1)) < n and avoids 2134h, but not of the first kind".into());
        }
        if avoids(w, h, &[P::P1243, P::P1423])? {
            for i in 1..=n {
                if h.at(i) == n && !prof.y_values.contains(&w.at(i)) {
                    failures.push(format!(
                        "h({i}) = n but w({i}) = {} is not in Y(w)",
                        w.at(i)
                    ));
                }
            }
        }
    }
    if top == n && avoids(w, h, &[P::P2143, P::P2134])? {
        applied = true;
        if prof.kind == Kind::Neither {
            failures.push("h(w⁻¹(1)) = n and avoids 2143h, 2134h, but of neither kind".into());
        }
    }
    if !applied {
        return Ok(Verdict::Vacuous);
    }
    Ok(Verdict::from_checks(failures))
}

/// For generators avoiding 2143h, 1324h, 2134h: |E(w)| = |E(w̄)| when 2314h is
/// also avoided, and the (i,n) edges at w₀ form the final block when 1243h
/// and 1423h are also avoided.
pub fn check_prop_size_e(w: &Permutation, h: &HessenbergFunction) -> Result<Verdict> {
    require_generator(w, h)?;
    let g = induced_subgraph(w, h)?;
    check_prop_size_e_in(w, &g)
}

pub fn check_prop_size_e_in(w: &Permutation, g: &InducedSubgraph) -> Result<Verdict> {
    let h = g.h();
    if !avoids(w, h, &[P::P2143, P::P1324, P::P2134])? {
        return Ok(Verdict::Vacuous);
    }
    let prof = profile_of(w);
    let Some(wbar) = prof.wbar() else {
        return Ok(Verdict::Violated(format!("{w} is not well-organized")));
    };
    let n = w.n();
    let part1 = avoids(w, h, &[P::P2314])?;
    let part2 = avoids(w, h, &[P::P1243, P::P1423])?;
    let mut failures = Vec::new();
    if part1 {
        let (dw, dbar) = (g.degree(w)?, g.degree(wbar)?);
        if dw != dbar {
            failures.push(format!("|E(w)| = {dw} but |E(w̄)| = {dbar}"));
        }
    }
    if part2 {
        let k = prof
            .y_values
            .iter()
            .filter(|&&y| h.at(w.position_of(y)) == n)
            .count();
        let actual: Vec<usize> = g
            .edge_set(&Permutation::longest(n))?
            .transpositions
            .iter()
            .filter(|t| t.j() == n)
            .map(|t| t.i())
            .collect();
        let expected: Vec<usize> = (n + 1 - k..n).collect();
        if actual != expected {
            failures.push(format!(
                "edges (i,n) at w0: found i in {actual:?}, expected {expected:?} (k = {k})"
            ));
        }
    }
    if !part1 && !part2 {
        return Ok(Verdict::Vacuous);
    }
    Ok(Verdict::from_checks(failures))
}

/// A generator avoiding the seven generator patterns passes that avoidance to w̄.
pub fn check_prop_chain_w(w: &Permutation, h: &HessenbergFunction) -> Result<Verdict> {
    require_generator(w, h)?;
    if !avoids(w, h, PatternSet::Generator7.members())? {
        return Ok(Verdict::Vacuous);
    }
    let prof = profile_of(w);
    let Some(wbar) = prof.wbar() else {
        return Ok(Verdict::Violated(format!("{w} is not well-organized")));
    };
    for &p in PatternSet::Generator7.members() {
        if contains(wbar, h, p)? {
            return Ok(Verdict::Violated(format!("w̄ = {wbar} contains {p}")));
        }
    }
    Ok(Verdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hessenberg::enumerate_hessenberg;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn hf(s: &str) -> HessenbergFunction {
        s.parse().unwrap()
    }

    #[test]
    fn worked_examples() {
        let h6 = HessenbergFunction::full(6);
        let prof = profile(&p("213654"), &h6).unwrap();
        assert_eq!(prof.y_values, vec![1, 3, 4]);
        assert!(prof.is_well_organized);
        assert_eq!(prof.kind, Kind::Neither);
        let chain: Vec<String> = prof
            .wbar_chain
            .unwrap()
            .iter()
            .map(|x| x.to_string())
            .collect();
        assert_eq!(chain, ["213654", "231654", "234651"]);
        assert_eq!(profile(&p("461523"), &h6).unwrap().kind, Kind::First);
        assert_eq!(profile(&p("426135"), &h6).unwrap().kind, Kind::Second);
        let top = profile(&Permutation::longest(5), &HessenbergFunction::full(5)).unwrap();
        assert_eq!(top.y_values, vec![1]);
        assert!(top.is_well_organized);
        assert_eq!(top.kind, Kind::Both);
    }

    #[test]
    fn chain_lengths_increase() {
        for w in Permutation::all(5) {
            if let Some(chain) = profile_of(&w).wbar_chain {
                assert!(chain.windows(2).all(|c| c[0].length() < c[1].length()));
                assert_eq!(chain.last().unwrap().at(5), 1);
            }
        }
    }

    #[test]
    fn converse_of_1324_lemma_fails() {
        let w = p("4651273");
        let h = HessenbergFunction::full(7);
        assert!(is_generator(&w, &h).unwrap());
        assert!(profile_of(&w).is_well_organized);
        assert!(contains(&w, &h, P::P1324).unwrap());
    }

    #[test]
    fn small_example_checks() {
        let (w, h) = (p("2134"), hf("3,3,4,4"));
        assert_eq!(y_values(&w), vec![1, 3, 4]);
        assert_eq!(check_lemma_y(&w, &h).unwrap(), Verdict::Holds);
        assert_eq!(check_prop_wbar(&w, &h).unwrap(), Verdict::Holds);
        assert_eq!(profile_of(&w).wbar().unwrap(), &p("2341"));
        assert!(check_lemma_y(&p("1324"), &h).is_err());
    }

    #[test]
    fn reduce_last_drops_vertex_n() {
        let (w2, h2) = reduce_last(&p("2341"), &hf("3,3,4,4")).unwrap();
        assert_eq!(w2, p("123"));
        assert_eq!(h2, hf("3,3,3"));
        assert!(reduce_last(&p("2314"), &hf("3,3,4,4")).is_err());
    }

    #[test]
    fn statements_hold_on_four() {
        for h in enumerate_hessenberg(4) {
            for w in Permutation::all(4) {
                if !is_generator(&w, &h).unwrap() {
                    continue;
                }
                assert!(!check_lemma_y(&w, &h).unwrap().is_violation());
                assert!(!check_lemma_1324(&w, &h).unwrap().is_violation());
                assert!(!check_prop_size_e(&w, &h).unwrap().is_violation());
                assert!(!check_prop_chain_w(&w, &h).unwrap().is_violation());
                let prof = profile_of(&w);
                if prof.is_well_organized {
                    assert!(!check_prop_wbar(&w, &h).unwrap().is_violation(), "{w} {h}");
                    assert!(!check_lemma_kind(&w, &h).unwrap().is_violation());
                    for m in 1..=prof.r() {
                        let v = check_prop_organized(&w, &h, m).unwrap();
                        assert!(!v.is_violation(), "{w} {h} {m}: {v:?}");
                    }
                }
            }
        }
    }
}
