//! Locality of and-net cycles via delocalizing triples, and the digraph
//! side: kernels, subdivisions and killing triples.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::andnet::AndNet;
use crate::error::{Error, Result};
use crate::graph::{elementary_circuits, Sign, SignedCycle, SignedDigraph, DEFAULT_CYCLE_CAP};
use crate::state::{mask_indices, State};

/// Largest digraph accepted by [`kernels`].
pub const KERNEL_VERTEX_LIMIT: usize = 24;

#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TripleKind {
    Internal,
    External,
}

/// `(i, j)` positive and `(i, k)` negative, both off the cycle, `j != k` on it.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Hash, Serialize)]
pub struct DelocalizingTriple {
    pub i: usize,
    pub j: usize,
    pub k: usize,
    pub kind: TripleKind,
}

impl DelocalizingTriple {
    pub fn is_internal(&self) -> bool {
        self.kind == TripleKind::Internal
    }
}

pub fn delocalizing_triples(g: &SignedDigraph, c: &SignedCycle) -> Result<Vec<DelocalizingTriple>> {
    if let Some((from, to)) = g.parallel_pair() {
        return Err(Error::NotSimple { from, to });
    }
    if !c.is_in(g) {
        return Err(Error::NotACycle(c.to_string()));
    }
    let on_cycle = |v: usize| c.contains_vertex(v);
    let mut out = Vec::new();
    for i in 0..g.vertex_count() {
        let off: Vec<_> = g
            .out_edges(i)
            .filter(|e| on_cycle(e.to) && !c.has_step(i, e.to))
            .collect();
        for p in off.iter().filter(|e| e.sign == Sign::Positive) {
            for q in off.iter().filter(|e| e.sign == Sign::Negative) {
                if p.to == q.to {
                    continue;
                }
                out.push(DelocalizingTriple {
                    i,
                    j: p.to,
                    k: q.to,
                    kind: if on_cycle(i) {
                        TripleKind::Internal
                    } else {
                        TripleKind::External
                    },
                });
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Locality of a cycle of an and-net's graph: local iff no delocalizing triple.
pub fn is_local_andnet_cycle(g: &SignedDigraph, c: &SignedCycle) -> Result<bool> {
    Ok(delocalizing_triples(g, c)?.is_empty())
}

/// Unsigned directed graph on `0..n`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct Digraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
}

impl Digraph {
    pub fn new(n: usize) -> Self {
        Digraph {
            n,
            arcs: BTreeSet::new(),
        }
    }

    pub fn from_arcs<I: IntoIterator<Item = (usize, usize)>>(n: usize, arcs: I) -> Result<Self> {
        let mut d = Digraph::new(n);
        for (u, v) in arcs {
            if !d.add_arc(u, v)? {
                return Err(Error::DuplicateEdge {
                    from: u.to_string(),
                    to: v.to_string(),
                });
            }
        }
        Ok(d)
    }

    /// Forgets signs; opposite parallel edges collapse to one arc.
    pub fn from_signed(g: &SignedDigraph) -> Self {
        Digraph {
            n: g.vertex_count(),
            arcs: g.edges().map(|e| (e.from, e.to)).collect(),
        }
    }

    pub fn add_arc(&mut self, u: usize, v: usize) -> Result<bool> {
        for x in [u, v] {
            if x >= self.n {
                return Err(Error::IndexOutOfRange { index: x, n: self.n });
            }
        }
        Ok(self.arcs.insert((u, v)))
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.arcs.contains(&(u, v))
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn successors(&self, u: usize) -> Vec<usize> {
        self.arcs.range((u, 0)..(u + 1, 0)).map(|&(_, v)| v).collect()
    }

    pub fn predecessors(&self, v: usize) -> Vec<usize> {
        self.arcs.iter().filter(|a| a.1 == v).map(|a| a.0).collect()
    }

    pub fn transpose(&self) -> Digraph {
        Digraph {
            n: self.n,
            arcs: self.arcs.iter().map(|&(u, v)| (v, u)).collect(),
        }
    }

    /// Elementary cycles, each starting at its smallest vertex, ordered by
    /// length then vertex sequence.
    pub fn cycles(&self) -> Result<Vec<Vec<usize>>> {
        let succ: Vec<Vec<usize>> = (0..self.n).map(|u| self.successors(u)).collect();
        let mut out = Vec::new();
        let mut overflow = false;
        elementary_circuits(self.n, &succ, &mut |c| {
            if out.len() >= DEFAULT_CYCLE_CAP {
                overflow = true;
                return false;
            }
            out.push(c.to_vec());
            true
        });
        if overflow {
            return Err(Error::CycleCapExceeded(DEFAULT_CYCLE_CAP));
        }
        out.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        Ok(out)
    }

    /// `# n=<int>` header, then one `u v` line per arc.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("# n={}\n", self.n);
        for (u, v) in &self.arcs {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut n = None;
        let mut arcs = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if let Some(rest) = line.strip_prefix('#') {
                if let Some(v) = rest.trim().strip_prefix("n=") {
                    let v = v.trim().parse::<usize>().map_err(|_| {
                        Error::Format(format!("line {}: bad vertex count {v:?}", lineno + 1))
                    })?;
                    n = Some(v);
                }
                continue;
            }
            if line.is_empty() {
                continue;
            }
            let parts: Vec<_> = line.split_whitespace().collect();
            let parsed: Vec<usize> = parts.iter().filter_map(|p| p.parse().ok()).collect();
            if parts.len() != 2 || parsed.len() != 2 {
                return Err(Error::Format(format!(
                    "line {}: expected \"u v\", found {line:?}",
                    lineno + 1
                )));
            }
            arcs.push((parsed[0], parsed[1]));
        }
        let n = n.ok_or_else(|| Error::Format("missing \"# n=<int>\" header".into()))?;
        Digraph::from_arcs(n, arcs)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for v in 0..self.n {
            writeln!(out, "  v{v};").unwrap();
        }
        for (u, v) in &self.arcs {
            writeln!(out, "  v{u} -> v{v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// All kernels (independent, absorbent vertex sets), each sorted, in
/// lexicographic order of their membership vectors from vertex 0.
///
/// Backtracks over vertices in index order. A vertex can join only if it is
/// independent of the current choice; once every successor of an excluded
/// vertex is decided, it must already point into the set.
pub fn kernels(d: &Digraph) -> Result<Vec<Vec<usize>>> {
    let n = d.vertex_count();
    if n > KERNEL_VERTEX_LIMIT {
        return Err(Error::DimensionGuard {
            n,
            limit: KERNEL_VERTEX_LIMIT,
        });
    }
    let succ: Vec<u32> = (0..n)
        .map(|u| d.successors(u).into_iter().fold(0, |m, v| m | 1 << v))
        .collect();
    let pred: Vec<u32> = (0..n)
        .map(|v| d.predecessors(v).into_iter().fold(0, |m, u| m | 1 << u))
        .collect();
    // settle[v]: vertices whose absorbence is decided once 0..=v are decided
    let mut settle = vec![Vec::new(); n];
    for u in 0..n {
        let last = (32 - succ[u].leading_zeros()) as usize;
        let last = last.saturating_sub(1).max(u);
        settle[last].push(u);
    }
    let mut out = Vec::new();
    kernel_search(0, 0, &succ, &pred, &settle, &mut out);
    Ok(out)
}

fn kernel_search(v: usize, chosen: u32, succ: &[u32], pred: &[u32], settle: &[Vec<usize>], out: &mut Vec<Vec<usize>>) {
    let n = succ.len();
    if v == n {
        out.push(mask_indices(chosen));
        return;
    }
    let settled = |set: u32| {
        settle[v]
            .iter()
            .all(|&u| set >> u & 1 == 1 || succ[u] & set != 0)
    };
    // exclude first so that results come out in lexicographic order of
    // membership vectors (0 before 1 at each vertex)
    if settled(chosen) {
        kernel_search(v + 1, chosen, succ, pred, settle, out);
    }
    let independent = (succ[v] | pred[v]) & (chosen | 1 << v) == 0;
    if independent {
        let with = chosen | 1 << v;
        if settled(with) {
            kernel_search(v + 1, with, succ, pred, settle, out);
        }
    }
}

/// Fixed points of a negative and-net from the kernels of the transpose of
/// its graph: `x_v = 1` exactly on the kernel. Ascending by word.
pub fn fixed_points_via_kernels(a: &AndNet) -> Result<Vec<State>> {
    if let Some(i) = (0..a.dim()).find(|&i| a.positive_mask(i) != 0) {
        return Err(Error::NotNegative(i));
    }
    let d = Digraph::from_signed(&a.to_signed_digraph()).transpose();
    let mut out: Vec<State> = kernels(&d)?
        .into_iter()
        .map(|k| State::from_indices(a.dim(), &k).expect("in range"))
        .collect();
    out.sort();
    Ok(out)
}

/// `w` is a subdivision of `(u, v)`: arcs `u -> w -> v`, `w` has in- and
/// out-degree 1, `w != u, v`, and `(u, v)` is not an arc.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Serialize)]
pub struct Subdivision {
    pub w: usize,
    pub u: usize,
    pub v: usize,
}

pub fn subdivisions(d: &Digraph) -> Vec<Subdivision> {
    let mut out = Vec::new();
    for w in 0..d.vertex_count() {
        let (p, s) = (d.predecessors(w), d.successors(w));
        if p.len() != 1 || s.len() != 1 {
            continue;
        }
        let (u, v) = (p[0], s[0]);
        if u != w && v != w && !d.has_arc(u, v) {
            out.push(Subdivision { w, u, v });
        }
    }
    out
}

/// `(u, v1, v2)` for a cycle: `v1 != v2` on the cycle, `(v1, u)` has a
/// subdivision and none of them lies on the cycle, `(v2, u)` is an arc off
/// the cycle. `w` is the smallest subdivision of `(v1, u)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, PartialOrd, Ord, Serialize)]
pub struct KillingTriple {
    pub u: usize,
    pub v1: usize,
    pub v2: usize,
    pub w: usize,
    pub internal: bool,
}

/// `cycle` is a vertex sequence closing on its first vertex.
pub fn killing_triples(d: &Digraph, cycle: &[usize]) -> Result<Vec<KillingTriple>> {
    let len = cycle.len();
    let steps: BTreeSet<(usize, usize)> = (0..len).map(|k| (cycle[k], cycle[(k + 1) % len])).collect();
    let on: BTreeSet<usize> = cycle.iter().copied().collect();
    if len == 0 || on.len() != len || steps.iter().any(|&(a, b)| !d.has_arc(a, b)) {
        return Err(Error::NotACycle(format!("{cycle:?}")));
    }
    let subs = subdivisions(d);
    let mut out = Vec::new();
    for u in 0..d.vertex_count() {
        for &v1 in &on {
            let ws: Vec<usize> = subs.iter().filter(|s| s.u == v1 && s.v == u).map(|s| s.w).collect();
            if ws.is_empty() || ws.iter().any(|w| on.contains(w)) {
                continue;
            }
            for &v2 in &on {
                if v2 == v1 || !d.has_arc(v2, u) || steps.contains(&(v2, u)) {
                    continue;
                }
                out.push(KillingTriple {
                    u,
                    v1,
                    v2,
                    w: ws[0],
                    internal: on.contains(&u),
                });
            }
        }
    }
    Ok(out)
}

/// Positive edges `(j, i)` of `a` in lexicographic order; the `r`-th one
/// is subdivided through vertex `n + r` by [`subdivide_positive_edges`].
pub fn positive_edges(a: &AndNet) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = (0..a.dim())
        .flat_map(|i| a.positive_inputs(i).into_iter().map(move |j| (j, i)))
        .collect();
    out.sort();
    out
}

/// Replaces every positive edge `(j, i)` by a fresh vertex `w` with
/// `N_w = {j}` and `w` a negative input of `f_i` in place of `j`.
pub fn subdivide_positive_edges(a: &AndNet) -> Result<AndNet> {
    let n = a.dim();
    let edges = positive_edges(a);
    let m = n + edges.len();
    let positive = vec![Vec::new(); m];
    let mut negative: Vec<Vec<usize>> = (0..n).map(|i| a.negative_inputs(i)).collect();
    negative.resize(m, Vec::new());
    for (r, &(j, i)) in edges.iter().enumerate() {
        let w = n + r;
        negative[w].push(j);
        negative[i].push(w);
    }
    AndNet::new(positive, negative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::andnet::{random_andnet, random_andnet_with};
    use crate::dynamics::fixed_points;
    use crate::interaction::{global_graph, is_local_cycle};

    fn seed_net() -> AndNet {
        let negative = (0..4).map(|i| vec![(i + 3) % 4, (i + 2) % 4]).collect();
        AndNet::new(vec![Vec::new(); 4], negative).unwrap()
    }

    /// Oracle: kernels by testing every subset.
    fn kernels_brute(d: &Digraph) -> Vec<Vec<usize>> {
        let n = d.vertex_count();
        let mut out = Vec::new();
        for set in 0u32..1 << n {
            let inside = |v: usize| set >> v & 1 == 1;
            let independent = d.arcs().all(|(u, v)| !(inside(u) && inside(v)));
            let absorbent = (0..n).all(|u| inside(u) || d.successors(u).into_iter().any(inside));
            if independent && absorbent {
                out.push(mask_indices(set));
            }
        }
        out.sort_by_key(|k| {
            let mut v = vec![0u8; n];
            for &i in k {
                v[i] = 1;
            }
            v
        });
        out
    }

    fn random_digraph(n: usize, seed: u64) -> Digraph {
        let a = random_andnet(n, seed, 0.3).unwrap();
        Digraph::from_signed(&a.to_signed_digraph())
    }

    #[test]
    fn seed_has_no_delocalizing_triple_on_its_negative_cycles() {
        let g = seed_net().to_signed_digraph();
        for i in 0..4 {
            let c = SignedCycle::uniform(vec![i, (i + 1) % 4, (i + 2) % 4], Sign::Negative).unwrap();
            assert!(delocalizing_triples(&g, &c).unwrap().is_empty());
            assert!(is_local_andnet_cycle(&g, &c).unwrap());
        }
    }

    #[test]
    fn chordless_hamiltonian_cycle_has_no_triple() {
        let g = SignedDigraph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5, Sign::Negative))).unwrap();
        let c = SignedCycle::uniform((0..5).collect(), Sign::Negative).unwrap();
        assert!(delocalizing_triples(&g, &c).unwrap().is_empty());
    }

    #[test]
    fn triple_classification() {
        // cycle 0 -> 1 -> 2 -> 0 with 3 sending + to 1 and - to 2,
        // and 0 sending + to 0 (a loop off the cycle) and - to 2 (a chord)
        let g = SignedDigraph::from_edges(
            4,
            [
                (0, 1, Sign::Negative),
                (1, 2, Sign::Negative),
                (2, 0, Sign::Negative),
                (3, 1, Sign::Positive),
                (3, 2, Sign::Negative),
                (0, 0, Sign::Positive),
                (0, 2, Sign::Negative),
            ],
        )
        .unwrap();
        let c = SignedCycle::uniform(vec![0, 1, 2], Sign::Negative).unwrap();
        let t = delocalizing_triples(&g, &c).unwrap();
        assert_eq!(
            t,
            vec![
                DelocalizingTriple { i: 0, j: 0, k: 2, kind: TripleKind::Internal },
                DelocalizingTriple { i: 3, j: 1, k: 2, kind: TripleKind::External },
            ]
        );
    }

    #[test]
    fn non_simple_graph_is_rejected() {
        let g = SignedDigraph::from_edges(1, [(0, 0, Sign::Positive), (0, 0, Sign::Negative)]).unwrap();
        let c = SignedCycle::uniform(vec![0], Sign::Positive).unwrap();
        assert!(matches!(delocalizing_triples(&g, &c), Err(Error::NotSimple { .. })));
    }

    #[test]
    fn triple_locality_agrees_with_witness_search() {
        for seed in 0..300 {
            let n = 2 + (seed % 4) as usize;
            let a = random_andnet(n, seed, 0.45).unwrap();
            let g = a.to_signed_digraph();
            let f = a.to_network();
            for c in g.cycles().unwrap() {
                let by_triples = is_local_andnet_cycle(&g, &c).unwrap();
                let by_witness = is_local_cycle(&f, &c).unwrap().is_some();
                assert_eq!(by_triples, by_witness, "seed {seed} cycle {c}");
            }
        }
    }

    #[test]
    fn fixed_point_free_andnets_have_a_negative_cycle_without_internal_triple() {
        let mut seen = 0;
        for seed in 0..2000 {
            let a = random_andnet_with(4, seed, 0.5, 0.3).unwrap();
            let f = a.to_network();
            if !fixed_points(&f).is_empty() {
                continue;
            }
            seen += 1;
            let g = global_graph(&f);
            let ok = g.cycles().unwrap().iter().any(|c| {
                c.sign() == Sign::Negative
                    && delocalizing_triples(&g, c).unwrap().iter().all(|t| !t.is_internal())
            });
            assert!(ok, "seed {seed}");
        }
        assert!(seen > 20);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(kernels(&Digraph::new(3)).unwrap(), vec![vec![0, 1, 2]]);
        let loop1 = Digraph::from_arcs(1, [(0, 0)]).unwrap();
        assert!(kernels(&loop1).unwrap().is_empty());
        let d = Digraph::from_signed(&seed_net().to_signed_digraph()).transpose();
        assert!(kernels(&d).unwrap().is_empty());
        assert!(matches!(kernels(&Digraph::new(25)), Err(Error::DimensionGuard { .. })));
    }

    #[test]
    fn kernels_match_subset_oracle() {
        for seed in 0..300 {
            let d = random_digraph(1 + (seed % 7) as usize, seed);
            assert_eq!(kernels(&d).unwrap(), kernels_brute(&d), "seed {seed}");
        }
    }

    #[test]
    fn kernel_bridge_to_fixed_points() {
        for seed in 0..300 {
            let a = random_andnet_with(1 + (seed % 6) as usize, seed, 0.4, 0.0).unwrap();
            assert_eq!(fixed_points_via_kernels(&a).unwrap(), fixed_points(&a.to_network()));
        }
        assert!(fixed_points_via_kernels(&seed_net()).unwrap().is_empty());
        let ones = AndNet::empty(3).unwrap();
        assert_eq!(
            fixed_points_via_kernels(&ones).unwrap(),
            vec!["111".parse::<State>().unwrap()]
        );
        let mixed = AndNet::new(vec![vec![1], vec![]], vec![vec![], vec![]]).unwrap();
        assert!(matches!(fixed_points_via_kernels(&mixed), Err(Error::NotNegative(0))));
    }

    #[test]
    fn subdivision_examples() {
        let path = Digraph::from_arcs(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(subdivisions(&path), vec![Subdivision { w: 1, u: 0, v: 2 }]);
        let complete = Digraph::from_arcs(3, (0..3).flat_map(|u| (0..3).map(move |v| (u, v)))).unwrap();
        assert!(subdivisions(&complete).is_empty());
    }

    #[test]
    fn killing_triple_definition_clauses() {
        // cycle 0 -> 1 -> 2 -> 0; 0 -> 3 -> 4 subdivides (0, 4); 1 -> 4 is an arc
        let d = Digraph::from_arcs(5, [(0, 1), (1, 2), (2, 0), (0, 3), (3, 4), (1, 4)]).unwrap();
        let t = killing_triples(&d, &[0, 1, 2]).unwrap();
        assert_eq!(t, vec![KillingTriple { u: 4, v1: 0, v2: 1, w: 3, internal: false }]);
        // a cycle through the only subdivision loses the triple
        let d2 = Digraph::from_arcs(4, [(0, 3), (3, 1), (1, 2), (2, 0), (2, 1)]).unwrap();
        assert!(subdivisions(&d2).iter().any(|s| s.w == 3));
        let none = Digraph::from_arcs(2, [(0, 1), (1, 0)]).unwrap();
        assert!(killing_triples(&none, &[0, 1]).unwrap().is_empty());
        assert!(killing_triples(&none, &[0, 0]).is_err());
    }

    #[test]
    fn subdivision_of_negative_andnet_is_identity() {
        let a = seed_net();
        assert_eq!(subdivide_positive_edges(&a).unwrap(), a);
    }

    #[test]
    fn subdivision_preserves_fixed_points() {
        for seed in 0..200 {
            let n = 1 + (seed % 4) as usize;
            let a = random_andnet(n, seed, 0.4).unwrap();
            let edges = positive_edges(&a);
            let s = subdivide_positive_edges(&a).unwrap();
            assert!(s.is_negative());
            let d = Digraph::from_signed(&s.to_signed_digraph());
            let subs = subdivisions(&d);
            assert!(subs.len() >= edges.len());
            for (r, &(j, i)) in edges.iter().enumerate() {
                assert!(subs.contains(&Subdivision { w: n + r, u: j, v: i }));
            }
            // each fixed point x extends by x_w = !x_j
            let fp: Vec<State> = fixed_points(&a.to_network());
            let extended: Vec<State> = fp
                .iter()
                .map(|x| {
                    let mut w = x.word();
                    for (r, &(j, _)) in edges.iter().enumerate() {
                        if !x.bit(j) {
                            w |= 1 << (n + r);
                        }
                    }
                    State::new(w, s.dim()).unwrap()
                })
                .collect();
            let mut got = fixed_points(&s.to_network());
            got.sort();
            let mut want = extended;
            want.sort();
            assert_eq!(got, want, "seed {seed}");
        }
    }

    #[test]
    fn edge_list_round_trip() {
        let d = random_digraph(6, 11);
        let text = d.to_edge_list();
        assert!(text.starts_with("# n=6\n"));
        assert_eq!(Digraph::parse_edge_list(&text).unwrap(), d);
        assert!(Digraph::parse_edge_list("0 1\n").is_err());
        assert!(Digraph::parse_edge_list("# n=2\n0 1 2\n").is_err());
        assert!(Digraph::parse_edge_list("# n=2\n0 5\n").is_err());
    }

    #[test]
    fn digraph_cycles_match_signed_enumeration() {
        let a = seed_net();
        let d = Digraph::from_signed(&a.to_signed_digraph());
        let c = d.cycles().unwrap();
        assert_eq!(c.len(), 7);
        assert_eq!(c[0], vec![0, 2]);
    }
}
