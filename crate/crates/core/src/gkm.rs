//! The graph Γ_h on S_n and its induced subgraphs Γ_{w,h}.

use std::collections::{BTreeMap, HashSet};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hessenberg::{corresponding_generator, is_generator, HessenbergFunction};
use crate::order::bruhat_interval;
use crate::perm::{Permutation, Transposition};

/// Γ_h: u and u(i,j) are adjacent whenever i < j <= h(i).
#[derive(Clone, Debug)]
pub struct GkmGraph {
    h: HessenbergFunction,
    admissible: Vec<Transposition>,
}

impl GkmGraph {
    pub fn new(h: HessenbergFunction) -> Self {
        let admissible = h.admissible();
        GkmGraph { h, admissible }
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn h(&self) -> &HessenbergFunction {
        &self.h
    }

    /// Every vertex has this many neighbors.
    pub fn degree(&self) -> usize {
        self.admissible.len()
    }

    pub fn neighbors(&self, u: &Permutation) -> Result<Vec<(Transposition, Permutation)>> {
        self.h.check_size(u)?;
        Ok(self
            .admissible
            .iter()
            .map(|&t| (t, u.swap_positions(t.i(), t.j())))
            .collect())
    }
}

pub fn gamma_h_neighbors(
    u: &Permutation,
    h: &HessenbergFunction,
) -> Result<Vec<(Transposition, Permutation)>> {
    h.check_size(u)?;
    GkmGraph::new(h.clone()).neighbors(u)
}

/// Ω_{w,h}^T as sorted ranks: [w, w₀] for a generator w, otherwise the left
/// translate σ·[w̃, w₀] with σ = w w̃⁻¹.
pub fn fixed_points(w: &Permutation, h: &HessenbergFunction) -> Result<Vec<Permutation>> {
    Ok(fixed_point_ranks(w, h)?
        .into_iter()
        .map(|r| Permutation::unrank(w.n(), r).expect("valid rank"))
        .collect())
}

fn fixed_point_ranks(w: &Permutation, h: &HessenbergFunction) -> Result<Vec<u64>> {
    h.check_size(w)?;
    let w0 = Permutation::longest(w.n());
    let tilde = corresponding_generator(w, h)?;
    let base = bruhat_interval(&tilde, &w0)?;
    if &tilde == w {
        return Ok(base.ranks().to_vec());
    }
    let sigma = w.compose(&tilde.inverse())?;
    let mut ranks: Vec<u64> = base
        .iter()
        .map(|u| sigma.compose(&u).expect("same size").rank())
        .collect();
    ranks.sort_unstable();
    Ok(ranks)
}

/// E_{w,h}(u): admissible (i,j) whose swap stays in the vertex set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeSet {
    pub at: Permutation,
    pub transpositions: Vec<Transposition>,
}

impl EdgeSet {
    pub fn len(&self) -> usize {
        self.transpositions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transpositions.is_empty()
    }

    pub fn contains(&self, t: Transposition) -> bool {
        self.transpositions.contains(&t)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Regularity {
    pub regular: bool,
    pub min_degree: usize,
    pub max_degree: usize,
}

/// Γ_{w,h}, the subgraph of Γ_h induced by Ω_{w,h}^T.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    w: Permutation,
    graph: GkmGraph,
    vertices: Vec<u64>,
}

pub fn induced_subgraph(w: &Permutation, h: &HessenbergFunction) -> Result<InducedSubgraph> {
    let vertices = fixed_point_ranks(w, h)?;
    Ok(InducedSubgraph {
        w: w.clone(),
        graph: GkmGraph::new(h.clone()),
        vertices,
    })
}

#[derive(Clone, Debug, Default)]
pub struct DotOptions {
    /// also draw the vertices of Γ_h outside Ω_{w,h}^T, grayed out
    pub show_excluded: bool,
}

impl InducedSubgraph {
    /// Wraps an already computed vertex set (sorted Lehmer ranks).
    pub(crate) fn from_ranks(w: Permutation, h: HessenbergFunction, vertices: Vec<u64>) -> Self {
        InducedSubgraph {
            w,
            graph: GkmGraph::new(h),
            vertices,
        }
    }

    pub fn base(&self) -> &Permutation {
        &self.w
    }

    pub fn h(&self) -> &HessenbergFunction {
        self.graph.h()
    }

    pub fn n(&self) -> usize {
        self.w.n()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn ranks(&self) -> &[u64] {
        &self.vertices
    }

    pub fn contains(&self, u: &Permutation) -> bool {
        u.n() == self.n() && self.contains_rank(u.rank())
    }

    fn contains_rank(&self, r: u64) -> bool {
        self.vertices.binary_search(&r).is_ok()
    }

    /// Vertices in rank order.
    pub fn vertices(&self) -> impl Iterator<Item = Permutation> + '_ {
        let n = self.n();
        self.vertices
            .iter()
            .map(move |&r| Permutation::unrank(n, r).expect("valid rank"))
    }

    fn edge_list(&self, u: &Permutation) -> Vec<Transposition> {
        self.graph
            .admissible
            .iter()
            .copied()
            .filter(|t| self.contains_rank(u.swap_positions(t.i(), t.j()).rank()))
            .collect()
    }

    pub fn edge_set(&self, u: &Permutation) -> Result<EdgeSet> {
        if !self.contains(u) {
            return Err(Error::NotFixedPoint(u.to_string()));
        }
        Ok(EdgeSet {
            at: u.clone(),
            transpositions: self.edge_list(u),
        })
    }

    pub fn degree(&self, u: &Permutation) -> Result<usize> {
        Ok(self.edge_set(u)?.len())
    }

    /// (vertex, degree) in rank order.
    pub fn degrees(&self) -> Vec<(Permutation, usize)> {
        self.vertices()
            .map(|u| {
                let d = self.edge_list(&u).len();
                (u, d)
            })
            .collect()
    }

    /// Number of vertices of each degree.
    pub fn degree_histogram(&self) -> BTreeMap<usize, usize> {
        let mut hist = BTreeMap::new();
        for (_, d) in self.degrees() {
            *hist.entry(d).or_insert(0) += 1;
        }
        hist
    }

    /// Undirected edges, each once, as (lower rank, higher rank, transposition).
    pub fn edges(&self) -> Vec<(Permutation, Permutation, Transposition)> {
        let mut out = Vec::new();
        for u in self.vertices() {
            for t in self.edge_list(&u) {
                let v = u.swap_positions(t.i(), t.j());
                if v.rank() > u.rank() {
                    out.push((u.clone(), v, t));
                }
            }
        }
        out
    }

    /// φ_uv computed inside this graph. The base is assumed to be a
    /// generator; [`phi`] checks that.
    pub fn phi(&self, u: &Permutation, v: &Permutation) -> Result<PhiMap> {
        let source = self.edge_set(u)?;
        let target = self.edge_set(v)?;
        let differ: Vec<usize> = (1..=u.n()).filter(|&i| u.at(i) != v.at(i)).collect();
        let &[a, b] = differ.as_slice() else {
            return Err(Error::Precondition(format!(
                "{v} is not obtained from {u} by one transposition"
            )));
        };
        let step = Transposition::new(a, b)?;
        if !source.contains(step) {
            return Err(Error::Precondition(format!(
                "{step} is not in E(u) for u = {u}"
            )));
        }
        if u.at(a) > u.at(b) {
            return Err(Error::Precondition(format!("{u} is not below {v}")));
        }
        let pairs = source
            .transpositions
            .iter()
            .map(|&t| (t, phi_image(t, a, b, |c| source.contains(c))))
            .collect();
        Ok(PhiMap {
            u: u.clone(),
            v: v.clone(),
            step,
            pairs,
            target: target.transpositions,
        })
    }

    pub fn to_dot(&self, opts: &DotOptions) -> String {
        let degrees = self.degrees();
        let max = degrees.iter().map(|&(_, d)| d).max().unwrap_or(0);
        let w0 = Permutation::longest(self.n());
        let mut out = String::new();
        let _ = writeln!(out, "graph \"gamma_{}_{}\" {{", self.w, self.h());
        let _ = writeln!(out, "  node [shape=ellipse];");
        let mut member_iter = degrees.iter().peekable();
        let all: Box<dyn Iterator<Item = Permutation>> = if opts.show_excluded {
            Box::new(Permutation::all(self.n()))
        } else {
            Box::new(self.vertices())
        };
        for u in all {
            let is_member = member_iter.peek().is_some_and(|(m, _)| m == &u);
            if !is_member {
                let _ = writeln!(
                    out,
                    "  \"{u}\" [label=\"{u}\", color=gray, fontcolor=gray, style=dashed];"
                );
                continue;
            }
            let (_, d) = member_iter.next().unwrap();
            let color = if *d < max { "red" } else { "black" };
            let mut attrs = format!("label=\"{u}\", degree={d}, color={color}");
            if u == self.w {
                attrs.push_str(", peripheries=2, xlabel=\"base\"");
            }
            if u == w0 {
                attrs.push_str(", shape=box");
            }
            let _ = writeln!(out, "  \"{u}\" [{attrs}];");
        }
        if opts.show_excluded {
            for u in Permutation::all(self.n()) {
                let inside = self.contains_rank(u.rank());
                for t in &self.graph.admissible {
                    let v = u.swap_positions(t.i(), t.j());
                    if v.rank() > u.rank() && !(inside && self.contains_rank(v.rank())) {
                        let _ = writeln!(
                            out,
                            "  \"{u}\" -- \"{v}\" [label=\"{t}\", color=gray, style=dashed];"
                        );
                    }
                }
            }
        }
        for (u, v, t) in self.edges() {
            let _ = writeln!(out, "  \"{u}\" -- \"{v}\" [label=\"{t}\"];");
        }
        out.push_str("}\n");
        out
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("vertex,rank,length,degree,edges\n");
        for u in self.vertices() {
            let edges: Vec<String> = self.edge_list(&u).iter().map(|t| t.to_string()).collect();
            let _ = writeln!(
                out,
                "{},{},{},{},\"{}\"",
                u,
                u.rank(),
                u.length(),
                edges.len(),
                edges.join(" ")
            );
        }
        out
    }
}

/// E_{w,h}(u) for u ∈ Ω_{w,h}^T.
pub fn edge_set(u: &Permutation, w: &Permutation, h: &HessenbergFunction) -> Result<EdgeSet> {
    h.check_size(u)?;
    induced_subgraph(w, h)?.edge_set(u)
}

pub fn is_regular(g: &InducedSubgraph) -> Result<Regularity> {
    let degrees = g.degrees();
    let min_degree = degrees
        .iter()
        .map(|&(_, d)| d)
        .min()
        .ok_or(Error::EmptyGraph)?;
    let max_degree = degrees
        .iter()
        .map(|&(_, d)| d)
        .max()
        .ok_or(Error::EmptyGraph)?;
    Ok(Regularity {
        regular: min_degree == max_degree,
        min_degree,
        max_degree,
    })
}

/// φ_uv : E_{w,h}(u) → E_{w,h}(v) for v = u(a,b), u(a) < u(b).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PhiMap {
    pub u: Permutation,
    pub v: Permutation,
    pub step: Transposition,
    pub pairs: Vec<(Transposition, Transposition)>,
    pub target: Vec<Transposition>,
}

impl PhiMap {
    pub fn apply(&self, t: Transposition) -> Option<Transposition> {
        self.pairs
            .iter()
            .find(|(s, _)| *s == t)
            .map(|&(_, img)| img)
    }

    pub fn is_injective(&self) -> bool {
        let images: HashSet<_> = self.pairs.iter().map(|&(_, img)| img).collect();
        images.len() == self.pairs.len()
    }

    pub fn maps_into_target(&self) -> bool {
        self.pairs.iter().all(|(_, img)| self.target.contains(img))
    }

    pub fn is_surjective(&self) -> bool {
        let images: HashSet<_> = self.pairs.iter().map(|&(_, img)| img).collect();
        self.target.iter().all(|t| images.contains(t))
    }
}

/// The three-case map on edge sets along the edge u → v = u(a,b).
pub fn phi(
    u: &Permutation,
    v: &Permutation,
    w: &Permutation,
    h: &HessenbergFunction,
) -> Result<PhiMap> {
    h.check_size(u)?;
    h.check_size(v)?;
    if !is_generator(w, h)? {
        return Err(Error::Precondition(format!(
            "{w} is not a generator for {h}"
        )));
    }
    induced_subgraph(w, h)?.phi(u, v)
}

/// Image of (i,j) under φ along the step (a,b); `in_source` tests membership
/// in E_{w,h}(u).
pub(crate) fn phi_image(
    t: Transposition,
    a: usize,
    b: usize,
    in_source: impl Fn(Transposition) -> bool,
) -> Transposition {
    let (i, j) = (t.i(), t.j());
    if i == a && j > b {
        let cand = Transposition::new_unchecked(b, j);
        if !in_source(cand) {
            return cand;
        }
    } else if i < a && j == b {
        let cand = Transposition::new_unchecked(i, a);
        if !in_source(cand) {
            return cand;
        }
    }
    t
}

/// Checks that u ↦ σu, σ = w w̃⁻¹, carries Γ_{w̃,h} isomorphically onto
/// Γ_{w,h}: a bijection on vertices preserving adjacency both ways.
pub fn isomorphism_check(w: &Permutation, h: &HessenbergFunction) -> Result<bool> {
    h.check_size(w)?;
    let tilde = corresponding_generator(w, h)?;
    let sigma = w.compose(&tilde.inverse())?;
    let source = induced_subgraph(&tilde, h)?;
    let target = induced_subgraph(w, h)?;
    if source.len() != target.len() {
        return Ok(false);
    }
    let mut image = HashSet::new();
    for u in source.vertices() {
        let su = sigma.compose(&u)?;
        if !target.contains(&su) || !image.insert(su.rank()) {
            return Ok(false);
        }
        for t in &source.graph.admissible {
            let ut = u.swap_positions(t.i(), t.j());
            let sut = su.swap_positions(t.i(), t.j());
            if source.contains(&ut) != target.contains(&sut) {
                return Ok(false);
            }
        }
    }
    Ok(true)
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

    fn ts(list: &[(usize, usize)]) -> Vec<Transposition> {
        list.iter()
            .map(|&(i, j)| Transposition::new(i, j).unwrap())
            .collect()
    }

    #[test]
    fn neighbors() {
        assert!(
            gamma_h_neighbors(&p("321"), &HessenbergFunction::diagonal(3))
                .unwrap()
                .is_empty()
        );
        let nb: Vec<String> = gamma_h_neighbors(&p("123"), &hf("3,3,3"))
            .unwrap()
            .into_iter()
            .map(|(_, v)| v.to_string())
            .collect();
        assert_eq!(nb, ["213", "321", "132"]);
        let nb: Vec<String> = gamma_h_neighbors(&p("123"), &hf("2,3,3"))
            .unwrap()
            .into_iter()
            .map(|(_, v)| v.to_string())
            .collect();
        assert_eq!(nb, ["213", "132"]);
    }

    #[test]
    fn graph_2134() {
        let h = hf("3,3,4,4");
        let g = induced_subgraph(&p("2134"), &h).unwrap();
        assert_eq!(g.len(), 18);
        let hist = g.degree_histogram();
        assert_eq!(hist.get(&3), Some(&12));
        assert_eq!(hist.get(&4), Some(&6));
        let reg = is_regular(&g).unwrap();
        assert!(!reg.regular);
        assert_eq!((reg.min_degree, reg.max_degree), (3, 4));
    }

    #[test]
    fn edge_set_examples() {
        let (w, h) = (p("2134"), hf("3,3,4,4"));
        assert_eq!(
            edge_set(&p("2314"), &w, &h).unwrap().transpositions,
            ts(&[(1, 2), (2, 3), (3, 4)])
        );
        assert_eq!(
            edge_set(&p("2341"), &w, &h).unwrap().transpositions,
            ts(&[(1, 2), (1, 3), (2, 3), (3, 4)])
        );
        assert_eq!(edge_set(&w, &w, &h).unwrap().len(), 3);
        assert!(matches!(
            edge_set(&p("1234"), &w, &h),
            Err(Error::NotFixedPoint(_))
        ));
    }

    #[test]
    fn phi_examples() {
        let (w, h) = (p("2134"), hf("3,3,4,4"));
        let m = phi(&p("3124"), &p("3214"), &w, &h).unwrap();
        assert_eq!(m.apply(ts(&[(1, 3)])[0]), Some(ts(&[(1, 2)])[0]));
        for t in ts(&[(2, 3), (3, 4)]) {
            assert_eq!(m.apply(t), Some(t));
        }
        assert!(m.is_injective() && m.maps_into_target());
        let m = phi(&p("2314"), &p("2341"), &w, &h).unwrap();
        assert!(m.pairs.iter().all(|(s, t)| s == t));
        assert!(!m.is_surjective());
        assert!(phi(&p("3214"), &p("3124"), &w, &h).is_err());
        assert!(phi(&p("3124"), &p("3214"), &p("1324"), &h).is_err());
    }

    #[test]
    fn non_generator_fixed_points() {
        let h = hf("3,3,4,4");
        let fp = fixed_points(&p("1324"), &h).unwrap();
        assert!(fp.contains(&p("4321")));
        assert!(!fp.contains(&p("1432")));
        assert_eq!(fp.len(), fixed_points(&p("1423"), &h).unwrap().len());
        assert!(isomorphism_check(&p("1324"), &h).unwrap());
        assert_eq!(fixed_points(&p("4321"), &h).unwrap(), vec![p("4321")]);
    }

    #[test]
    fn isomorphism_small() {
        for n in 1..=4 {
            for h in enumerate_hessenberg(n) {
                for w in Permutation::all(n) {
                    assert!(isomorphism_check(&w, &h).unwrap(), "{w} {h}");
                }
            }
        }
    }

    #[test]
    fn dot_is_deterministic() {
        let g = induced_subgraph(&p("2134"), &hf("3,3,4,4")).unwrap();
        let dot = g.to_dot(&DotOptions::default());
        assert_eq!(dot, g.to_dot(&DotOptions::default()));
        assert_eq!(dot.matches("color=red").count(), 12);
        let full = g.to_dot(&DotOptions {
            show_excluded: true,
        });
        assert!(full.matches("style=dashed];").count() >= 6);
        assert!(full.contains("\"1234\" [label=\"1234\", color=gray"));
    }
}
