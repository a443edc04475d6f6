//! Bruhat and h-Bruhat order: comparisons, intervals, and saturated chains.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::hessenberg::HessenbergFunction;
use crate::perm::{Permutation, Transposition};

/// u ⪯ v in Bruhat order, by the tableau criterion restricted to the
/// non-descents of v.
pub fn bruhat_leq(u: &Permutation, v: &Permutation) -> Result<bool> {
    u.check_size(v.n())?;
    let descents = v.descent_set();
    let n = u.n();
    Ok((1..n)
        .filter(|k| descents.binary_search(k).is_err())
        .all(|k| prefix_dominated(&u.word()[..k], &v.word()[..k])))
}

/// The tableau criterion checked at every k in [n].
pub fn bruhat_leq_all_prefixes(u: &Permutation, v: &Permutation) -> Result<bool> {
    u.check_size(v.n())?;
    Ok((1..=u.n()).all(|k| prefix_dominated(&u.word()[..k], &v.word()[..k])))
}

/// A↑ <= B↑ entrywise.
pub(crate) fn prefix_dominated(a: &[u8], b: &[u8]) -> bool {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// Compares u and v, which agree off `positions`, using only the entries on
/// those positions.
pub fn bruhat_compare_positions(
    u: &Permutation,
    v: &Permutation,
    positions: &[usize],
) -> Result<bool> {
    u.check_size(v.n())?;
    let mut sorted = positions.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if let Some(&bad) = sorted.iter().find(|&&p| p == 0 || p > u.n()) {
        return Err(Error::OutOfRange {
            index: bad,
            n: u.n(),
        });
    }
    for i in 1..=u.n() {
        if sorted.binary_search(&i).is_err() && u.at(i) != v.at(i) {
            return Err(Error::Precondition(format!(
                "{u} and {v} differ at position {i}, outside the given positions"
            )));
        }
    }
    let us: Vec<u8> = sorted.iter().map(|&p| u.at(p) as u8).collect();
    let vs: Vec<u8> = sorted.iter().map(|&p| v.at(p) as u8).collect();
    Ok((1..=sorted.len()).all(|j| prefix_dominated(&us[..j], &vs[..j])))
}

fn admissible_steps(n: usize, h: Option<&HessenbergFunction>) -> Vec<Transposition> {
    match h {
        Some(h) => h.admissible(),
        None => Transposition::all(n),
    }
}

fn check_h(u: &Permutation, h: &HessenbergFunction) -> Result<()> {
    h.check_size(u)
}

/// u ⪯_h v: v is reachable from u by length-increasing transpositions (i,j)
/// with j <= h(i).
pub fn h_bruhat_leq(u: &Permutation, v: &Permutation, h: &HessenbergFunction) -> Result<bool> {
    u.check_size(v.n())?;
    check_h(u, h)?;
    let target_len = v.length();
    let steps = h.admissible();
    let mut seen = HashSet::from([u.clone()]);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(x) = queue.pop_front() {
        if &x == v {
            return Ok(true);
        }
        for t in &steps {
            if x.at(t.i()) < x.at(t.j()) {
                let y = x.swap_positions(t.i(), t.j());
                if y.length() <= target_len && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    Ok(false)
}

/// A set of permutations bounded below and above, stored as sorted
/// Lehmer ranks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BruhatInterval {
    pub lo: Permutation,
    pub hi: Permutation,
    members: Vec<u64>,
}

impl BruhatInterval {
    pub(crate) fn from_members(lo: Permutation, hi: Permutation, mut members: Vec<u64>) -> Self {
        members.sort_unstable();
        members.dedup();
        BruhatInterval { lo, hi, members }
    }

    pub fn n(&self) -> usize {
        self.lo.n()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn ranks(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, u: &Permutation) -> bool {
        u.n() == self.n() && self.members.binary_search(&u.rank()).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = Permutation> + '_ {
        let n = self.n();
        self.members
            .iter()
            .map(move |&r| Permutation::unrank(n, r).expect("stored rank is valid"))
    }

    pub fn members(&self) -> Vec<Permutation> {
        self.iter().collect()
    }
}

/// Forward closure of `start` under length-increasing `steps`, keeping only
/// elements accepted by `keep`.
fn upward_closure(
    start: &Permutation,
    steps: &[Transposition],
    keep: impl Fn(&Permutation) -> bool,
) -> Vec<u64> {
    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start.clone()]);
    while let Some(x) = queue.pop_front() {
        for t in steps {
            if x.at(t.i()) < x.at(t.j()) {
                let y = x.swap_positions(t.i(), t.j());
                if !seen.contains(&y) && keep(&y) {
                    seen.insert(y.clone());
                    queue.push_back(y);
                }
            }
        }
    }
    seen.iter().map(Permutation::rank).collect()
}

/// [lo, hi] in Bruhat order; empty when lo ⋠ hi.
pub fn bruhat_interval(lo: &Permutation, hi: &Permutation) -> Result<BruhatInterval> {
    lo.check_size(hi.n())?;
    let members = if bruhat_leq(lo, hi)? {
        let steps = Transposition::all(lo.n());
        upward_closure(lo, &steps, |y| bruhat_leq(y, hi).unwrap_or(false))
    } else {
        Vec::new()
    };
    Ok(BruhatInterval::from_members(
        lo.clone(),
        hi.clone(),
        members,
    ))
}

/// [lo, hi]_h: forward h-reachable from lo intersected with backward
/// h-reachable from hi.
pub fn h_interval(
    lo: &Permutation,
    hi: &Permutation,
    h: &HessenbergFunction,
) -> Result<BruhatInterval> {
    lo.check_size(hi.n())?;
    check_h(lo, h)?;
    let steps = h.admissible();
    let (lo_len, hi_len) = (lo.length(), hi.length());
    let forward: HashSet<u64> = upward_closure(lo, &steps, |y| y.length() <= hi_len)
        .into_iter()
        .collect();
    // backward search: a length-decreasing step from x is a swap with x(i) > x(j)
    let mut seen = HashSet::from([hi.clone()]);
    let mut queue = VecDeque::from([hi.clone()]);
    while let Some(x) = queue.pop_front() {
        for t in &steps {
            if x.at(t.i()) > x.at(t.j()) {
                let y = x.swap_positions(t.i(), t.j());
                if y.length() >= lo_len && seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
    }
    let members = seen
        .iter()
        .map(Permutation::rank)
        .filter(|r| forward.contains(r))
        .collect();
    Ok(BruhatInterval::from_members(
        lo.clone(),
        hi.clone(),
        members,
    ))
}

/// A chain u = v₀ ≺ v₁ ≺ ... ≺ v_k = v in which every step is a single
/// (h-admissible, when `h` is given) transposition raising length by one.
/// Returns `None` when no such chain exists.
pub fn saturated_chain(
    u: &Permutation,
    v: &Permutation,
    h: Option<&HessenbergFunction>,
) -> Result<Option<Vec<Permutation>>> {
    u.check_size(v.n())?;
    let comparable = match h {
        Some(h) => h_bruhat_leq(u, v, h)?,
        None => bruhat_leq(u, v)?,
    };
    if !comparable {
        return Err(Error::NotComparable(u.to_string(), v.to_string()));
    }
    let steps = admissible_steps(u.n(), h);
    let target_len = v.length();
    let mut dead = HashSet::new();
    let mut chain = vec![u.clone()];
    if extend_chain(&mut chain, v, target_len, &steps, &mut dead) {
        Ok(Some(chain))
    } else {
        Ok(None)
    }
}

// Depth-first over cover steps; a prefix that fails is remembered so each
// intermediate element is explored once.
fn extend_chain(
    chain: &mut Vec<Permutation>,
    target: &Permutation,
    target_len: usize,
    steps: &[Transposition],
    dead: &mut HashSet<Permutation>,
) -> bool {
    let x = chain.last().unwrap().clone();
    if &x == target {
        return true;
    }
    let len = x.length();
    if len >= target_len {
        return false;
    }
    for t in steps {
        if x.at(t.i()) >= x.at(t.j()) {
            continue;
        }
        let y = x.swap_positions(t.i(), t.j());
        if y.length() != len + 1 || dead.contains(&y) {
            continue;
        }
        if !bruhat_leq(&y, target).unwrap_or(false) {
            continue;
        }
        chain.push(y.clone());
        if extend_chain(chain, target, target_len, steps, dead) {
            return true;
        }
        chain.pop();
        dead.insert(y);
    }
    false
}

/// Whether a saturated chain exists from u to v. Errors when u and v are not
/// comparable in the relevant order.
pub fn check_chain_property(
    u: &Permutation,
    v: &Permutation,
    h: Option<&HessenbergFunction>,
) -> Result<bool> {
    Ok(saturated_chain(u, v, h)?.is_some())
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
    fn bruhat_leq_examples() {
        assert!(bruhat_leq(&p("2134"), &p("2341")).unwrap());
        assert!(!bruhat_leq(&p("2143"), &p("1324")).unwrap());
        assert!(!bruhat_leq(&p("1324"), &p("2143")).unwrap());
        for w in Permutation::all(4) {
            assert!(bruhat_leq(&Permutation::identity(4), &w).unwrap());
            assert!(bruhat_leq(&w, &Permutation::longest(4)).unwrap());
        }
        assert!(bruhat_leq(&p("12"), &p("123")).is_err());
    }

    #[test]
    fn compare_positions_examples() {
        let u = p("2134");
        let v = p("3124");
        assert!(bruhat_compare_positions(&u, &v, &[1, 3]).unwrap());
        assert!(!bruhat_compare_positions(&v, &u, &[1, 3]).unwrap());
        assert!(bruhat_compare_positions(&u, &p("4321"), &[1, 3]).is_err());
    }

    #[test]
    fn compare_positions_matches_bruhat_leq_on_s5() {
        for u in Permutation::all(5) {
            for v in Permutation::all(5) {
                let diff: Vec<usize> = (1..=5).filter(|&i| u.at(i) != v.at(i)).collect();
                assert_eq!(
                    bruhat_compare_positions(&u, &v, &diff).unwrap(),
                    bruhat_leq(&u, &v).unwrap(),
                    "{u} {v}"
                );
            }
        }
    }

    #[test]
    fn h_bruhat_examples() {
        let h = hf("4,4,4,5,5");
        assert!(bruhat_leq(&p("54132"), &p("54231")).unwrap());
        assert!(!h_bruhat_leq(&p("54132"), &p("54231"), &h).unwrap());
        assert!(!h_bruhat_leq(&p("54231"), &p("54321"), &hf("2,3,3,5,5")).unwrap());
        let full = HessenbergFunction::full(4);
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                assert_eq!(
                    h_bruhat_leq(&u, &v, &full).unwrap(),
                    bruhat_leq(&u, &v).unwrap()
                );
            }
        }
    }

    #[test]
    fn h_bruhat_implies_bruhat_on_s4() {
        for h in enumerate_hessenberg(4) {
            for u in Permutation::all(4) {
                for v in Permutation::all(4) {
                    if h_bruhat_leq(&u, &v, &h).unwrap() {
                        assert!(bruhat_leq(&u, &v).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn interval_examples() {
        let iv = bruhat_interval(&p("2134"), &p("4321")).unwrap();
        assert_eq!(iv.len(), 18);
        assert!(iv.iter().all(|u| u.at(1) >= 2));
        let single = bruhat_interval(&p("2413"), &p("2413")).unwrap();
        assert_eq!(single.members(), vec![p("2413")]);
        let all = bruhat_interval(&Permutation::identity(4), &Permutation::longest(4)).unwrap();
        assert_eq!(all.len(), 24);
        assert!(bruhat_interval(&p("2143"), &p("1324")).unwrap().is_empty());
        assert!(iv.contains(&p("4321")) && !iv.contains(&p("1234")));
    }

    #[test]
    fn h_interval_examples() {
        let h = hf("3,3,4,4");
        let w = p("2134");
        let w0 = Permutation::longest(4);
        assert_eq!(
            h_interval(&w, &w0, &h).unwrap().ranks(),
            bruhat_interval(&w, &w0).unwrap().ranks()
        );
        assert_eq!(h_interval(&w, &w, &h).unwrap().members(), vec![w.clone()]);
        let full = HessenbergFunction::full(4);
        for u in Permutation::all(4) {
            for v in Permutation::all(4) {
                if bruhat_leq(&u, &v).unwrap() {
                    assert_eq!(
                        h_interval(&u, &v, &full).unwrap().ranks(),
                        bruhat_interval(&u, &v).unwrap().ranks()
                    );
                }
            }
        }
    }

    #[test]
    fn chain_property_small() {
        let u = p("2134");
        assert!(check_chain_property(&u, &u, None).unwrap());
        let chain = saturated_chain(&u, &Permutation::longest(4), None)
            .unwrap()
            .unwrap();
        assert_eq!(chain.len(), 6 - 1 + 1);
        assert!(check_chain_property(&p("2143"), &p("1324"), None).is_err());
        for h in enumerate_hessenberg(4) {
            for u in Permutation::all(4) {
                for v in Permutation::all(4) {
                    if h_bruhat_leq(&u, &v, &h).unwrap() {
                        let chain = saturated_chain(&u, &v, Some(&h)).unwrap().unwrap();
                        for pair in chain.windows(2) {
                            assert_eq!(pair[1].length(), pair[0].length() + 1);
                            let diff: Vec<usize> = (1..=4)
                                .filter(|&i| pair[0].at(i) != pair[1].at(i))
                                .collect();
                            assert_eq!(diff.len(), 2);
                            assert!(h.admits(diff[0], diff[1]));
                        }
                    }
                }
            }
        }
    }
}
