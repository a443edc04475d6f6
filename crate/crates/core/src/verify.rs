//! Exhaustive sweeps over (w, h) that check each registered statement and
//! search for counterexamples.
//!
//! Sweeps visit h in lexicographic order and, for each h, w in rank order.
//! Work is split by h across a rayon pool and merged back in sweep order, so
//! reports do not depend on the number of workers.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rand::seq::{IndexedRandom, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::gkm::{phi_image, InducedSubgraph};
use crate::hessenberg::{catalan, enumerate_hessenberg, HessenbergFunction};
use crate::order::{bruhat_compare_positions, bruhat_leq, bruhat_leq_all_prefixes};
use crate::patterns::{avoids_all, contains, AssociatedPatternId as P, PatternSet};
use crate::perm::{factorial, Permutation, Transposition};
use crate::table::{HContext, Rank, SymmetricGroup, MAX_TABLE_N};
use crate::wellorg::{self, Verdict};

/// Failures kept in a report; the total is always counted.
pub const MAX_STORED_FAILURES: usize = 200;

macro_rules! theorem_ids {
    ($($variant:ident => $name:literal, $about:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum TheoremId {
            $($variant,)*
        }

        impl TheoremId {
            pub const ALL: &'static [TheoremId] = &[$(TheoremId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $name,)*
                }
            }

            /// One-line statement of what is checked.
            pub fn about(self) -> &'static str {
                match self {
                    $(TheoremId::$variant => $about,)*
                }
            }
        }
    };
}

theorem_ids! {
    TInterval => "T-interval", "generator w: [w, w0]_h = [w, w0]";
    THchain => "T-hchain", "u <_h v implies a saturated chain of admissible cover steps";
    TChain => "T-chain", "u < v implies a saturated chain of cover steps";
    TIncreasing => "T-increasing", "generator w: degrees never drop along <_h inside the graph";
    TIrregular => "T-irregular", "generator containing a generator7 pattern: graph irregular";
    TRegular => "T-regular", "generator avoiding the generator7 patterns: graph regular";
    TMain => "T-main", "any w: graph regular iff w avoids the general10 patterns";
    TClassical => "T-classical", "h = (n,...,n): regular iff w avoids 2143 and 1324";
    TPermutohedral => "T-permutohedral", "h = (2,3,...,n,n): every graph regular, every w avoids general10";
    LHmax => "L-hmax", "generator w and w <=_h u imply u <=_h w0";
    LInjection => "L-injection", "phi along each edge u < v maps E(u) injectively into E(v)";
    LY => "L-y", "generator: position of y_i at most h(position of y_(i-1))";
    L1324 => "L-1324", "generator avoiding 1324h is well-organized";
    LKind => "L-kind", "well-organized generator: kind forced by h(w^-1(1)) and avoided patterns";
    L2413 => "L-2413", "generator avoiding 1243h, 2134h, 1423h: contains 2413h iff contains 25314h";
    LAllpatterns1 => "L-allpatterns-1", "each of the six base patterns: w contains it iff w~ does";
    LAllpatterns2 => "L-allpatterns-2", "w avoiding 1324h: w contains a five-index pattern iff w~ contains 25314h";
    PWbar => "P-wbar", "well-organized generator: wbar generator, [wbar, w0] = {u in [w, w0]: u(n) = 1}, (i,n) edges at wbar";
    POrganized => "P-organized", "phi along the wbar chain is a bijection of the stated form";
    PSizeE => "P-sizeE", "|E(w)| = |E(wbar)| and the (i,n) edges at w0";
    PChainw => "P-chainw", "generator avoiding generator7: wbar avoids generator7";
    PIso => "P-iso", "u -> w w~^-1 u is an isomorphism onto the graph of w";
    PTableau => "P-tableau", "tableau criterion agrees with the closure of length-increasing transpositions";
    PGenerator => "P-generator", "the corresponding generator exists, is unique, and agrees with w";
    R412 => "R-412", "generator: avoids generator7 iff avoids generator7-alt";
}

impl TheoremId {
    /// Statements that do not involve h are swept over S_n alone.
    pub fn is_h_free(self) -> bool {
        matches!(self, TheoremId::TChain | TheoremId::PTableau)
    }

    fn hessenberg_scope(self, n: usize) -> Vec<HessenbergFunction> {
        match self {
            TheoremId::TClassical => vec![HessenbergFunction::full(n)],
            TheoremId::TPermutohedral => vec![HessenbergFunction::permutohedral(n)],
            _ => enumerate_hessenberg(n),
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for TheoremId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Incomplete,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub w: String,
    pub h: Option<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub theorem_id: TheoremId,
    pub statement: &'static str,
    pub n: usize,
    /// (w, h) pairs visited; w alone for statements without h
    pub pairs_swept: u64,
    /// pairs inside the statement's hypotheses
    pub pairs_checked: u64,
    /// individual assertions evaluated
    pub checks: u64,
    pub failure_count: u64,
    pub failures: Vec<Failure>,
    pub skips: BTreeMap<String, u64>,
    pub complete: bool,
    pub status: Status,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// n! · Catalan(n), or n! for statements without h.
    pub fn expected_pairs(&self) -> u64 {
        let perms = factorial(self.n);
        match self.theorem_id {
            TheoremId::TClassical | TheoremId::TPermutohedral => perms,
            id if id.is_h_free() => perms,
            _ => perms * catalan(self.n),
        }
    }
}

#[derive(Clone, Debug)]
pub struct VerifyOptions {
    /// worker threads; 0 uses the rayon default, 1 runs serially
    pub jobs: usize,
    /// stop scheduling new work after this long and flag the report
    pub time_budget: Option<Duration>,
    /// restrict the sweep to one h
    pub hess: Option<HessenbergFunction>,
    /// restrict the sweep to one w
    pub perm: Option<Permutation>,
    /// random pairs per statement when n is beyond the table limit
    pub samples: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            jobs: 0,
            time_budget: None,
            hess: None,
            perm: None,
            samples: 10_000,
        }
    }
}

#[derive(Default)]
struct Tally {
    pairs_swept: u64,
    pairs_checked: u64,
    checks: u64,
    failure_count: u64,
    failures: Vec<Failure>,
    skips: BTreeMap<String, u64>,
    unfinished: bool,
}

impl Tally {
    fn check(
        &mut self,
        ok: bool,
        w: &Permutation,
        h: Option<&HessenbergFunction>,
        detail: impl FnOnce() -> String,
    ) {
        self.checks += 1;
        if !ok {
            self.fail(w, h, detail());
        }
    }

    fn fail(&mut self, w: &Permutation, h: Option<&HessenbergFunction>, detail: String) {
        self.failure_count += 1;
        if self.failures.len() < MAX_STORED_FAILURES {
            self.failures.push(Failure {
                w: w.to_string(),
                h: h.map(|h| h.to_string()),
                detail,
            });
        }
    }

    fn skip(&mut self, reason: &str) {
        *self.skips.entry(reason.to_string()).or_insert(0) += 1;
    }

    fn verdict(&mut self, v: Verdict, w: &Permutation, h: &HessenbergFunction, skip_reason: &str) {
        match v {
            Verdict::Holds => {
                self.pairs_checked += 1;
                self.checks += 1;
            }
            Verdict::Violated(detail) => {
                self.pairs_checked += 1;
                self.checks += 1;
                self.fail(w, Some(h), detail);
            }
            Verdict::Skipped(_) => self.skip(skip_reason),
            Verdict::Vacuous => {}
        }
    }

    fn merge(&mut self, other: Tally) {
        self.pairs_swept += other.pairs_swept;
        self.pairs_checked += other.pairs_checked;
        self.checks += other.checks;
        self.failure_count += other.failure_count;
        let room = MAX_STORED_FAILURES - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
        for (k, v) in other.skips {
            *self.skips.entry(k).or_insert(0) += v;
        }
        self.unfinished |= other.unfinished;
    }
}

fn run_pool<T: Send>(jobs: usize, work: impl FnOnce() -> T + Send) -> Result<T> {
    match jobs {
        0 => Ok(work()),
        _ => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(jobs)
                .build()
                .map_err(|e| Error::Invariant(format!("thread pool: {e}")))?;
            Ok(pool.install(work))
        }
    }
}

/// Runs `per_h` over the scope of h in sweep order and merges the results.
fn sweep_h<T: Send>(
    hs: &[HessenbergFunction],
    opts: &VerifyOptions,
    start: Instant,
    per_h: impl Fn(&HessenbergFunction) -> Result<T> + Sync,
) -> Result<Vec<Option<T>>> {
    let over_budget = || opts.time_budget.is_some_and(|b| start.elapsed() > b);
    let task = |h: &HessenbergFunction| -> Result<Option<T>> {
        if over_budget() {
            Ok(None)
        } else {
            per_h(h).map(Some)
        }
    };
    if opts.jobs == 1 {
        return hs.iter().map(task).collect();
    }
    run_pool(opts.jobs, || hs.par_iter().map(task).collect())?
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    if n > MAX_TABLE_N {
        return Err(Error::TooLarge(n));
    }
    Ok(())
}

fn hess_scope(id: TheoremId, n: usize, opts: &VerifyOptions) -> Result<Vec<HessenbergFunction>> {
    let scope = id.hessenberg_scope(n);
    match &opts.hess {
        None => Ok(scope),
        Some(h) => {
            if h.n() != n {
                return Err(Error::SizeMismatch {
                    expected: n,
                    found: h.n(),
                });
            }
            Ok(scope.into_iter().filter(|x| x == h).collect())
        }
    }
}

fn perm_scope(group: &SymmetricGroup, opts: &VerifyOptions) -> Result<Vec<Rank>> {
    match &opts.perm {
        None => Ok((0..group.order() as Rank).collect()),
        Some(w) => {
            if w.n() != group.n() {
                return Err(Error::SizeMismatch {
                    expected: group.n(),
                    found: w.n(),
                });
            }
            Ok(vec![group.rank(w)])
        }
    }
}

/// Runs one statement over every (w, h) in scope at size n.
pub fn verify_theorem(id: TheoremId, n: usize, opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let tally = if id == TheoremId::PTableau && n > MAX_TABLE_N {
        sampled_tableau(n, opts)?
    } else {
        check_n(n)?;
        let group = SymmetricGroup::new(n)?;
        let ws = perm_scope(&group, opts)?;
        if id.is_h_free() {
            h_free(id, &group, &ws, opts)?
        } else {
            let hs = hess_scope(id, n, opts)?;
            let parts = sweep_h(&hs, opts, start, |h| {
                let ctx = HContext::new(&group, h.clone())?;
                per_h(id, &ctx, &ws)
            })?;
            let mut tally = Tally::default();
            for part in parts {
                match part {
                    Some(t) => tally.merge(t),
                    None => tally.unfinished = true,
                }
            }
            tally
        }
    };
    let status = if tally.failure_count > 0 {
        Status::Fail
    } else if tally.unfinished {
        Status::Incomplete
    } else {
        Status::Pass
    };
    Ok(VerificationReport {
        theorem_id: id,
        statement: id.about(),
        n,
        pairs_swept: tally.pairs_swept,
        pairs_checked: tally.pairs_checked,
        checks: tally.checks,
        failure_count: tally.failure_count,
        failures: tally.failures,
        skips: tally.skips,
        complete: !tally.unfinished,
        status,
        wall_time: start.elapsed(),
    })
}

fn h_free(id: TheoremId, g: &SymmetricGroup, ws: &[Rank], opts: &VerifyOptions) -> Result<Tally> {
    let all: Vec<usize> = (0..g.transpositions().len()).collect();
    let covers = if id == TheoremId::TChain {
        g.cover_closure(&all)
    } else {
        Vec::new()
    };
    let row = |u: Rank| -> Tally {
        let mut t = Tally {
            pairs_swept: 1,
            pairs_checked: 1,
            ..Tally::default()
        };
        let up = g.perm(u);
        match id {
            TheoremId::TChain => {
                let missing = g.upper(u).difference(&covers[u as usize]).count();
                t.check(missing == 0, up, None, || {
                    format!("{missing} elements above u have no saturated chain")
                });
            }
            _ => {
                for v in 0..g.order() as Rank {
                    let vp = g.perm(v);
                    let closure = g.upper(u).contains(v as usize);
                    let tableau = bruhat_leq(up, vp).expect("same size");
                    let prefixes = bruhat_leq_all_prefixes(up, vp).expect("same size");
                    t.check(tableau == closure && prefixes == closure, up, None, || {
                        format!("v = {vp}: closure {closure}, tableau {tableau}, all prefixes {prefixes}")
                    });
                }
            }
        }
        t
    };
    let rows: Vec<Tally> = if opts.jobs == 1 {
        ws.iter().map(|&u| row(u)).collect()
    } else {
        run_pool(opts.jobs, || ws.par_iter().map(|&u| row(u)).collect())?
    };
    let mut tally = Tally::default();
    for r in rows {
        tally.merge(r);
    }
    Ok(tally)
}

/// Beyond the table limit: compare the three tableau-style tests on random
/// pairs, with v drawn both uniformly and as a random element above u.
fn sampled_tableau(n: usize, opts: &VerifyOptions) -> Result<Tally> {
    let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
    let mut tally = Tally::default();
    let transpositions = Transposition::all(n);
    for s in 0..opts.samples {
        let mut a: Vec<u8> = (1..=n as u8).collect();
        a.shuffle(&mut rng);
        let u = Permutation::from_word(a)?;
        let v = if s % 2 == 0 {
            let mut b: Vec<u8> = (1..=n as u8).collect();
            b.shuffle(&mut rng);
            Permutation::from_word(b)?
        } else {
            // walk upward by random length-increasing transpositions
            let mut x = u.clone();
            for _ in 0..n {
                let t = *transpositions.choose(&mut rng).expect("n >= 2");
                if x.at(t.i()) < x.at(t.j()) {
                    x = x.apply_transposition(t)?;
                }
            }
            x
        };
        tally.pairs_swept += 1;
        tally.pairs_checked += 1;
        let tableau = bruhat_leq(&u, &v)?;
        let prefixes = bruhat_leq_all_prefixes(&u, &v)?;
        let differ: Vec<usize> = (1..=n).filter(|&i| u.at(i) != v.at(i)).collect();
        let billey = bruhat_compare_positions(&u, &v, &differ)?;
        tally.check(tableau == prefixes && prefixes == billey, &u, None, || {
            format!(
                "v = {v}: tableau {tableau}, all prefixes {prefixes}, differing positions {billey}"
            )
        });
        if s % 2 == 1 {
            tally.check(tableau, &u, None, || {
                format!("{v} built above u but not comparable")
            });
        }
    }
    Ok(tally)
}

fn subgraph(ctx: &HContext, w: Rank, vertices: &FixedBitSet) -> InducedSubgraph {
    InducedSubgraph::from_ranks(
        ctx.group().perm(w).clone(),
        ctx.h().clone(),
        vertices.ones().map(|r| r as u64).collect(),
    )
}

/// Ranks x with x <=_h w0.
fn below_top(ctx: &HContext) -> FixedBitSet {
    let g = ctx.group();
    let top = g.longest() as usize;
    let mut set = FixedBitSet::with_capacity(g.order());
    for x in 0..g.order() {
        if ctx.reach(x as Rank).contains(top) {
            set.insert(x);
        }
    }
    set
}

fn mask_contains(g: &SymmetricGroup, mask: u64, t: Transposition) -> bool {
    mask & (1 << g.transposition_index(t.i(), t.j())) != 0
}

fn per_h(id: TheoremId, ctx: &HContext, ws: &[Rank]) -> Result<Tally> {
    let g = ctx.group();
    let h = ctx.h();
    let w0 = g.longest();
    let mut t = Tally::default();
    let below = matches!(id, TheoremId::TInterval | TheoremId::LHmax).then(|| below_top(ctx));
    let covers = (id == TheoremId::THchain).then(|| ctx.cover_reach());
    for &w in ws {
        t.pairs_swept += 1;
        let wp = g.perm(w);
        let generator = ctx.is_generator(w);
        match id {
            TheoremId::TInterval if generator => {
                t.pairs_checked += 1;
                let mut h_int = ctx.reach(w).clone();
                h_int.intersect_with(below.as_ref().unwrap());
                let plain = g.upper(w);
                t.check(&h_int == plain, wp, Some(h), || {
                    format!(
                        "[w,w0]_h has {} elements, [w,w0] has {}",
                        h_int.count_ones(..),
                        plain.count_ones(..)
                    )
                });
            }
            TheoremId::LHmax if generator => {
                t.pairs_checked += 1;
                let escaped = ctx.reach(w).difference(below.as_ref().unwrap()).count();
                t.check(escaped == 0, wp, Some(h), || {
                    format!("{escaped} elements above w in h-order are not below w0")
                });
            }
            TheoremId::THchain => {
                t.pairs_checked += 1;
                let missing = ctx
                    .reach(w)
                    .difference(&covers.as_ref().unwrap()[w as usize])
                    .count();
                t.check(missing == 0, wp, Some(h), || {
                    format!("{missing} elements above u in h-order have no saturated h-chain")
                });
            }
            TheoremId::TIncreasing if generator => {
                t.pairs_checked += 1;
                let vertices = g.upper(w);
                let deg = |u: Rank| ctx.degree(vertices, u);
                for u in vertices.ones() {
                    let u = u as Rank;
                    let du = deg(u);
                    for &s in ctx.admissible() {
                        let v = g.step(u, s);
                        if g.length(v) > g.length(u) && vertices.contains(v as usize) {
                            let dv = deg(v);
                            t.check(du <= dv, wp, Some(h), || {
                                format!("deg {} = {du} > deg {} = {dv}", g.perm(u), g.perm(v))
                            });
                        }
                    }
                }
                let (dw, dtop) = (deg(w), deg(w0));
                t.check(dw <= dtop, wp, Some(h), || {
                    format!("deg w = {dw} > deg w0 = {dtop}")
                });
            }
            TheoremId::LInjection if generator => {
                t.pairs_checked += 1;
                let vertices = g.upper(w);
                for u in vertices.ones() {
                    let u = u as Rank;
                    let mu = ctx.edge_mask(vertices, u);
                    let up = g.perm(u);
                    for &s in ctx.admissible() {
                        let v = g.step(u, s);
                        let step = g.transpositions()[s];
                        if mu & (1 << s) == 0 || up.at(step.i()) > up.at(step.j()) {
                            continue;
                        }
                        let mv = ctx.edge_mask(vertices, v);
                        let mut image = 0u64;
                        let mut injective = true;
                        let mut into = true;
                        for &e in ctx.admissible() {
                            if mu & (1 << e) == 0 {
                                continue;
                            }
                            let img = phi_image(g.transpositions()[e], step.i(), step.j(), |c| {
                                mask_contains(g, mu, c)
                            });
                            let bit = 1u64 << g.transposition_index(img.i(), img.j());
                            injective &= image & bit == 0;
                            into &= mv & bit != 0;
                            image |= bit;
                        }
                        t.check(injective && into, wp, Some(h), || {
                            format!(
                                "phi from {up} to {}: injective {injective}, into E(v) {into}",
                                g.perm(v)
                            )
                        });
                    }
                }
            }
            TheoremId::TIrregular | TheoremId::TRegular if generator => {
                let (avoids, witness) = avoids_all(wp, h, PatternSet::Generator7)?;
                if avoids == (id == TheoremId::TRegular) {
                    t.pairs_checked += 1;
                    let sub = ctx.subgraph(w).expect("generator");
                    t.check(sub.is_regular() == avoids, wp, Some(h), || match &witness {
                        Some(x) => format!(
                            "contains {} at {x} but degrees are all {}",
                            x.pattern, sub.min_degree
                        ),
                        None => format!(
                            "avoids generator7 but degrees range over {}..={}",
                            sub.min_degree, sub.max_degree
                        ),
                    });
                }
            }
            TheoremId::TMain => {
                t.pairs_checked += 1;
                let (avoids, witness) = avoids_all(wp, h, PatternSet::General10)?;
                let sub = ctx.subgraph(w).ok_or_else(|| no_tilde(wp, h))?;
                t.check(sub.is_regular() == avoids, wp, Some(h), || {
                    format!(
                        "regular {}, degrees {}..={}, first witness {}",
                        sub.is_regular(),
                        sub.min_degree,
                        sub.max_degree,
                        witness.map_or("none".into(), |x| format!("{} {x}", x.pattern))
                    )
                });
            }
            TheoremId::TClassical => {
                t.pairs_checked += 1;
                let classical = ["2143", "1324"].iter().any(|s| {
                    wp.contains_classical_pattern(&s.parse().expect("literal"))
                        .is_some()
                });
                let sub = ctx.subgraph(w).ok_or_else(|| no_tilde(wp, h))?;
                t.check(sub.is_regular() != classical, wp, Some(h), || {
                    format!(
                        "regular {} but classical containment {classical}",
                        sub.is_regular()
                    )
                });
                let (avoids, _) = avoids_all(wp, h, PatternSet::General10)?;
                t.check(avoids != classical, wp, Some(h), || {
                    "general10 avoidance differs from classical avoidance".into()
                });
            }
            TheoremId::TPermutohedral => {
                t.pairs_checked += 1;
                let sub = ctx.subgraph(w).ok_or_else(|| no_tilde(wp, h))?;
                t.check(sub.is_regular(), wp, Some(h), || {
                    format!("degrees {}..={}", sub.min_degree, sub.max_degree)
                });
                let (avoids, witness) = avoids_all(wp, h, PatternSet::General10)?;
                t.check(avoids, wp, Some(h), || format!("contains {:?}", witness));
            }
            TheoremId::PIso => {
                t.pairs_checked += 1;
                let tilde = ctx.tilde(w).ok_or_else(|| no_tilde(wp, h))?;
                let source = g.upper(tilde);
                let target = ctx.fixed_points(w).expect("tilde exists");
                t.check(
                    source.count_ones(..) == target.count_ones(..),
                    wp,
                    Some(h),
                    || {
                        format!(
                            "|fixed points| = {} but |[w~, w0]| = {}",
                            target.count_ones(..),
                            source.count_ones(..)
                        )
                    },
                );
                let sigma = ctx.translation(w).expect("tilde exists");
                let mut ok = true;
                for u in source.ones() {
                    let su = g.left_multiply(&sigma, u as Rank);
                    ok &= target.contains(su as usize);
                    for &s in ctx.admissible() {
                        let a = source.contains(g.step(u as Rank, s) as usize);
                        let b = target.contains(g.step(su, s) as usize);
                        ok &= a == b;
                    }
                }
                t.check(ok, wp, Some(h), || {
                    "translation does not preserve adjacency".into()
                });
            }
            TheoremId::PGenerator => {
                t.pairs_checked += 1;
                t.check(ctx.generator_conflicts().is_empty(), wp, Some(h), || {
                    format!("generators sharing a key: {:?}", ctx.generator_conflicts())
                });
                match ctx.tilde(w) {
                    None => t.fail(wp, Some(h), "no corresponding generator".into()),
                    Some(x) => {
                        let xp = g.perm(x);
                        let agree = h.admissible().iter().all(|s| {
                            (wp.at(s.i()) < wp.at(s.j())) == (xp.at(s.i()) < xp.at(s.j()))
                        });
                        t.check(ctx.is_generator(x) && agree, wp, Some(h), || {
                            format!("w~ = {xp} is not an order-agreeing generator")
                        });
                        if generator {
                            t.check(x == w, wp, Some(h), || format!("generator w has w~ = {xp}"));
                        }
                    }
                }
            }
            TheoremId::LY if generator => {
                t.verdict(wellorg::check_lemma_y(wp, h)?, wp, h, "");
            }
            TheoremId::L1324 if generator => {
                t.verdict(wellorg::check_lemma_1324(wp, h)?, wp, h, "");
            }
            TheoremId::LKind if generator => {
                if wellorg::profile(wp, h)?.is_well_organized {
                    t.verdict(wellorg::check_lemma_kind(wp, h)?, wp, h, "");
                }
            }
            TheoremId::PWbar if generator => {
                let prof = wellorg::profile(wp, h)?;
                if let Some(wbar) = prof.wbar() {
                    let sub = subgraph(ctx, w, g.upper(w));
                    let lower: Vec<u64> = g.upper(g.rank(wbar)).ones().map(|x| x as u64).collect();
                    let v = wellorg::check_prop_wbar_in(&prof, h, &sub, &lower)?;
                    t.verdict(v, wp, h, "");
                }
            }
            TheoremId::POrganized if generator => {
                let prof = wellorg::profile(wp, h)?;
                if prof.is_well_organized && prof.r() >= 1 {
                    let sub = subgraph(ctx, w, g.upper(w));
                    for m in 1..=prof.r() {
                        let v = wellorg::check_prop_organized_in(&prof, &sub, m)?;
                        t.verdict(v, wp, h, "hypothesis h(p) >= b fails on the chain step");
                    }
                }
            }
            TheoremId::PSizeE if generator => {
                let sub = subgraph(ctx, w, g.upper(w));
                t.verdict(wellorg::check_prop_size_e_in(wp, &sub)?, wp, h, "");
            }
            TheoremId::PChainw if generator => {
                t.verdict(wellorg::check_prop_chain_w(wp, h)?, wp, h, "");
            }
            TheoremId::L2413 if generator => {
                let hyp = [P::P1243, P::P2134, P::P1423];
                if avoids_list(wp, h, &hyp)? {
                    t.pairs_checked += 1;
                    let a = contains(wp, h, P::P2413)?;
                    let b = contains(wp, h, P::P25314)?;
                    t.check(a == b, wp, Some(h), || format!("2413h {a}, 25314h {b}"));
                }
            }
            TheoremId::LAllpatterns1 => {
                t.pairs_checked += 1;
                let tilde = g.perm(ctx.tilde(w).ok_or_else(|| no_tilde(wp, h))?);
                for &p in PatternSet::Six.members() {
                    let (a, b) = (contains(wp, h, p)?, contains(tilde, h, p)?);
                    t.check(a == b, wp, Some(h), || {
                        format!("{p}: w {a}, w~ = {tilde} {b}")
                    });
                }
            }
            TheoremId::LAllpatterns2 => {
                if !contains(wp, h, P::P1324)? {
                    t.pairs_checked += 1;
                    let tilde = g.perm(ctx.tilde(w).ok_or_else(|| no_tilde(wp, h))?);
                    let a = !avoids_list(wp, h, PatternSet::Five.members())?;
                    let b = contains(tilde, h, P::P25314)?;
                    t.check(a == b, wp, Some(h), || {
                        format!("five-index pattern in w {a}, 25314h in w~ = {tilde} {b}")
                    });
                }
            }
            TheoremId::R412 if generator => {
                t.pairs_checked += 1;
                let a = avoids_all(wp, h, PatternSet::Generator7)?.0;
                let b = avoids_all(wp, h, PatternSet::Generator7Alt)?.0;
                t.check(a == b, wp, Some(h), || {
                    format!("generator7 {a}, generator7-alt {b}")
                });
            }
            _ => {}
        }
    }
    Ok(t)
}

fn avoids_list(w: &Permutation, h: &HessenbergFunction, ps: &[P]) -> Result<bool> {
    for &p in ps {
        if contains(w, h, p)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn no_tilde(w: &Permutation, h: &HessenbergFunction) -> Error {
    Error::Invariant(format!("no corresponding generator for {w}, {h}"))
}

/// One line of a sweep: the graph of (w, h) against both pattern sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepRow {
    pub w: Permutation,
    pub h: HessenbergFunction,
    pub is_generator: bool,
    pub regular: bool,
    pub min_deg: usize,
    pub max_deg: usize,
    pub avoids_generator7: bool,
    pub avoids_general10: bool,
    /// first general10 witness, as "pattern(i,j,...)"
    pub first_witness: Option<String>,
}

impl SweepRow {
    pub const CSV_HEADER: &'static str =
        "w,h,is_generator,regular,min_deg,max_deg,avoided(B),avoided(C),first_witness";

    pub fn to_csv(&self) -> String {
        format!(
            "{},\"{}\",{},{},{},{},{},{},\"{}\"",
            self.w,
            self.h,
            self.is_generator,
            self.regular,
            self.min_deg,
            self.max_deg,
            self.avoids_generator7,
            self.avoids_general10,
            self.first_witness.as_deref().unwrap_or("")
        )
    }
}

/// Every (w, h) in scope with its regularity and pattern data.
pub fn sweep_rows(n: usize, opts: &VerifyOptions) -> Result<Vec<SweepRow>> {
    check_n(n)?;
    let group = SymmetricGroup::new(n)?;
    let ws = perm_scope(&group, opts)?;
    let hs = hess_scope(TheoremId::TMain, n, opts)?;
    let parts = sweep_h(&hs, opts, Instant::now(), |h| {
        let ctx = HContext::new(&group, h.clone())?;
        ws.iter()
            .map(|&w| {
                let wp = group.perm(w);
                let sub = ctx.subgraph(w).ok_or_else(|| no_tilde(wp, h))?;
                let (avoids_c, witness) = avoids_all(wp, h, PatternSet::General10)?;
                Ok(SweepRow {
                    w: wp.clone(),
                    h: h.clone(),
                    is_generator: ctx.is_generator(w),
                    regular: sub.is_regular(),
                    min_deg: sub.min_degree,
                    max_deg: sub.max_degree,
                    avoids_generator7: avoids_all(wp, h, PatternSet::Generator7)?.0,
                    avoids_general10: avoids_c,
                    first_witness: witness.map(|x| format!("{}{x}", x.pattern)),
                })
            })
            .collect::<Result<Vec<_>>>()
    })?;
    Ok(parts.into_iter().flatten().flatten().collect())
}

macro_rules! predicate_ids {
    ($($variant:ident => $name:literal, $about:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
        pub enum PredicateId {
            $($variant,)*
        }

        impl PredicateId {
            pub const ALL: &'static [PredicateId] = &[$(PredicateId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(PredicateId::$variant => $name,)*
                }
            }

            pub fn about(self) -> &'static str {
                match self {
                    $(PredicateId::$variant => $about,)*
                }
            }
        }
    };
}

predicate_ids! {
    MainEquivalence => "main-equivalence", "regular iff avoids general10";
    GeneratorEquivalence => "generator-equivalence", "generator: regular iff avoids generator7";
    IncreasingNongenerator => "increasing-nongenerator", "non-generator w: u <=_h v in the graph implies deg u <= deg v";
    UniqueGenerator => "unique-generator", "w~ exists and is unique";
    WellorgConverse => "wellorg-converse", "well-organized generator avoids 1324h";
}

impl fmt::Display for PredicateId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PredicateId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PredicateId::ALL
            .iter()
            .copied()
            .find(|p| p.name() == s.trim())
            .ok_or_else(|| Error::UnknownTheorem(s.to_string()))
    }
}

impl Serialize for PredicateId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub predicate: PredicateId,
    pub w: Permutation,
    pub h: HessenbergFunction,
    pub detail: String,
}

/// The first (w, h) in sweep order violating the predicate.
pub fn find_counterexample(
    predicate: PredicateId,
    n: usize,
    opts: &VerifyOptions,
) -> Result<Option<Counterexample>> {
    check_n(n)?;
    let group = SymmetricGroup::new(n)?;
    let ws = perm_scope(&group, opts)?;
    let hs = hess_scope(TheoremId::TMain, n, opts)?;
    let parts = sweep_h(&hs, opts, Instant::now(), |h| {
        let ctx = HContext::new(&group, h.clone())?;
        for &w in &ws {
            if let Some(detail) = violation(predicate, &ctx, w)? {
                return Ok(Some(Counterexample {
                    predicate,
                    w: group.perm(w).clone(),
                    h: h.clone(),
                    detail,
                }));
            }
        }
        Ok(None)
    })?;
    Ok(parts.into_iter().flatten().flatten().next())
}

fn violation(predicate: PredicateId, ctx: &HContext, w: Rank) -> Result<Option<String>> {
    let g = ctx.group();
    let h = ctx.h();
    let wp = g.perm(w);
    let generator = ctx.is_generator(w);
    Ok(match predicate {
        PredicateId::MainEquivalence | PredicateId::GeneratorEquivalence => {
            let set = if predicate == PredicateId::MainEquivalence {
                PatternSet::General10
            } else if generator {
                PatternSet::Generator7
            } else {
                return Ok(None);
            };
            let avoids = avoids_all(wp, h, set)?.0;
            let sub = ctx.subgraph(w).ok_or_else(|| no_tilde(wp, h))?;
            (sub.is_regular() != avoids).then(|| {
                format!(
                    "regular {}, avoids {} {avoids}",
                    sub.is_regular(),
                    set.name()
                )
            })
        }
        PredicateId::IncreasingNongenerator => {
            if generator {
                return Ok(None);
            }
            let vertices = ctx.fixed_points(w).ok_or_else(|| no_tilde(wp, h))?;
            let mut found = None;
            'outer: for u in vertices.ones() {
                let du = ctx.degree(&vertices, u as Rank);
                for v in ctx.reach(u as Rank).ones() {
                    if vertices.contains(v) {
                        let dv = ctx.degree(&vertices, v as Rank);
                        if du > dv {
                            found = Some(format!(
                                "{} <=_h {} but degrees {du} > {dv}",
                                g.perm(u as Rank),
                                g.perm(v as Rank)
                            ));
                            break 'outer;
                        }
                    }
                }
            }
            found
        }
        PredicateId::UniqueGenerator => {
            if ctx.tilde(w).is_none() {
                Some("no corresponding generator".into())
            } else if let Some(&(a, b)) = ctx.generator_conflicts().first() {
                Some(format!(
                    "generators {} and {} share a key",
                    g.perm(a),
                    g.perm(b)
                ))
            } else {
                None
            }
        }
        PredicateId::WellorgConverse => {
            if generator && wellorg::profile(wp, h)?.is_well_organized && contains(wp, h, P::P1324)?
            {
                Some("well-organized generator containing 1324h".into())
            } else {
                None
            }
        }
    })
}
