//! Signed directed graphs and their elementary cycles.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Default cap on the number of elementary cycles an enumeration may return.
pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Negative,
    #[serde(rename = "+")]
    Positive,
}

impl Sign {
    pub fn value(self) -> i8 {
        match self {
            Sign::Negative => -1,
            Sign::Positive => 1,
        }
    }

    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Negative
        } else {
            Sign::Positive
        }
    }

    pub fn product<I: IntoIterator<Item = Sign>>(signs: I) -> Sign {
        signs.into_iter().fold(Sign::Positive, |a, b| a * b)
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Negative => '-',
            Sign::Positive => '+',
        }
    }
}

impl std::ops::Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Positive
        } else {
            Sign::Negative
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct SignedEdge {
    pub from: usize,
    pub to: usize,
    pub sign: Sign,
}

/// Vertices `0..n` with signed edges. Two edges of opposite signs between the
/// same ordered pair are allowed; duplicate `(from, to, sign)` triples are not.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SignedDigraph {
    n: usize,
    edges: BTreeSet<SignedEdge>,
}

impl SignedDigraph {
    pub fn new(n: usize) -> Self {
        SignedDigraph {
            n,
            edges: BTreeSet::new(),
        }
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize, Sign)>>(n: usize, edges: I) -> Result<Self> {
        let mut g = SignedDigraph::new(n);
        for (from, to, sign) in edges {
            g.add_edge(from, to, sign)?;
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Returns `false` if the edge was already present.
    pub fn add_edge(&mut self, from: usize, to: usize, sign: Sign) -> Result<bool> {
        for v in [from, to] {
            if v >= self.n {
                return Err(Error::IndexOutOfRange { index: v, n: self.n });
            }
        }
        Ok(self.edges.insert(SignedEdge { from, to, sign }))
    }

    pub fn has_edge(&self, from: usize, to: usize, sign: Sign) -> bool {
        self.edges.contains(&SignedEdge { from, to, sign })
    }

    pub fn has_arc(&self, from: usize, to: usize) -> bool {
        self.has_edge(from, to, Sign::Negative) || self.has_edge(from, to, Sign::Positive)
    }

    pub fn signs(&self, from: usize, to: usize) -> Vec<Sign> {
        [Sign::Negative, Sign::Positive]
            .into_iter()
            .filter(|&s| self.has_edge(from, to, s))
            .collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = &SignedEdge> {
        self.edges.iter()
    }

    pub fn out_edges(&self, v: usize) -> impl Iterator<Item = &SignedEdge> {
        self.edges
            .range(
                SignedEdge { from: v, to: 0, sign: Sign::Negative }..=SignedEdge {
                    from: v,
                    to: usize::MAX,
                    sign: Sign::Positive,
                },
            )
    }

    /// Distinct out-neighbours, ascending.
    pub fn successors(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.out_edges(v).map(|e| e.to).collect();
        out.dedup();
        out
    }

    pub fn is_simple(&self) -> bool {
        self.parallel_pair().is_none()
    }

    pub(crate) fn parallel_pair(&self) -> Option<(usize, usize)> {
        self.edges
            .iter()
            .find(|e| e.sign == Sign::Negative && self.has_edge(e.from, e.to, Sign::Positive))
            .map(|e| (e.from, e.to))
    }

    pub fn transpose(&self) -> SignedDigraph {
        SignedDigraph {
            n: self.n,
            edges: self
                .edges
                .iter()
                .map(|e| SignedEdge { from: e.to, to: e.from, sign: e.sign })
                .collect(),
        }
    }

    /// Subgraph induced by `vertices`, relabelled `vertices[k] -> k`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> SignedDigraph {
        let mut g = SignedDigraph::new(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                for s in self.signs(u, v) {
                    g.edges.insert(SignedEdge { from: a, to: b, sign: s });
                }
            }
        }
        g
    }

    /// `true` when every edge of `self` is an edge of `other`.
    pub fn is_subgraph_of(&self, other: &SignedDigraph) -> bool {
        self.n == other.n && self.edges.is_subset(&other.edges)
    }

    /// Every signed elementary cycle, canonically rotated and ordered by
    /// `(length, vertex sequence, sign)`. Fails past `cap` cycles.
    pub fn cycles_capped(&self, cap: usize) -> Result<Vec<SignedCycle>> {
        let succ: Vec<Vec<usize>> = (0..self.n).map(|v| self.successors(v)).collect();
        let mut out = Vec::new();
        let mut err = None;
        elementary_circuits(self.n, &succ, &mut |circuit| {
            let choices: Vec<Vec<Sign>> = (0..circuit.len())
                .map(|k| self.signs(circuit[k], circuit[(k + 1) % circuit.len()]))
                .collect();
            let mut idx = vec![0usize; circuit.len()];
            loop {
                if out.len() >= cap {
                    err = Some(Error::CycleCapExceeded(cap));
                    return false;
                }
                let signs = idx.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
                out.push(SignedCycle {
                    vertices: circuit.to_vec(),
                    signs,
                });
                // odometer over the sign choices of parallel edges
                let mut k = 0;
                while k < idx.len() {
                    idx[k] += 1;
                    if idx[k] < choices[k].len() {
                        break;
                    }
                    idx[k] = 0;
                    k += 1;
                }
                if k == idx.len() {
                    return true;
                }
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        out.sort();
        Ok(out)
    }

    pub fn cycles(&self) -> Result<Vec<SignedCycle>> {
        self.cycles_capped(DEFAULT_CYCLE_CAP)
    }

    /// Graphviz rendering: positive edges solid `+`, negative edges dashed `−`.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = format!("digraph {name} {{\n");
        for v in 0..self.n {
            out.push_str(&format!("  v{v};\n"));
        }
        for e in &self.edges {
            match e.sign {
                Sign::Positive => out.push_str(&format!(
                    "  v{} -> v{} [label=\"+\", style=solid];\n",
                    e.from, e.to
                )),
                Sign::Negative => out.push_str(&format!(
                    "  v{} -> v{} [label=\"\u{2212}\", style=dashed, arrowhead=tee];\n",
                    e.from, e.to
                )),
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Enumerate all elementary cycles in a simple digraph.
pub fn enumerate_cycles(g: &SignedDigraph) -> Result<Vec<SignedCycle>> {
    g.cycles()
}

/// An elementary cycle with the sign of each step. `signs[k]` is the sign of
/// the edge `vertices[k] -> vertices[k + 1]` (wrapping around).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct SignedCycle {
    vertices: Vec<usize>,
    signs: Vec<Sign>,
}

impl SignedCycle {
    /// Builds a cycle and rotates it so that its smallest vertex comes first.
    pub fn new(vertices: Vec<usize>, signs: Vec<Sign>) -> Result<Self> {
        if vertices.is_empty() || vertices.len() != signs.len() {
            return Err(Error::NotACycle(format!("{vertices:?} / {signs:?}")));
        }
        let distinct: BTreeSet<_> = vertices.iter().collect();
        if distinct.len() != vertices.len() {
            return Err(Error::NotACycle(format!("repeated vertex in {vertices:?}")));
        }
        let start = (0..vertices.len())
            .min_by_key(|&k| vertices[k])
            .expect("non-empty");
        let mut v = vertices;
        let mut s = signs;
        v.rotate_left(start);
        s.rotate_left(start);
        Ok(SignedCycle { vertices: v, signs: s })
    }

    /// Uniform-sign cycle; handy for negative and-nets.
    pub fn uniform(vertices: Vec<usize>, sign: Sign) -> Result<Self> {
        let signs = vec![sign; vertices.len()];
        Self::new(vertices, signs)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn edge_signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Product of edge signs.
    pub fn sign(&self) -> Sign {
        Sign::product(self.signs.iter().copied())
    }

    pub fn edges(&self) -> impl Iterator<Item = SignedEdge> + '_ {
        let len = self.vertices.len();
        (0..len).map(move |k| SignedEdge {
            from: self.vertices[k],
            to: self.vertices[(k + 1) % len],
            sign: self.signs[k],
        })
    }

    pub fn contains_vertex(&self, v: usize) -> bool {
        self.vertices.contains(&v)
    }

    /// `true` when `(from, to)` is a step of the cycle (either sign).
    pub fn has_step(&self, from: usize, to: usize) -> bool {
        self.edges().any(|e| e.from == from && e.to == to)
    }

    /// Vertex set as a bit mask (vertices must be < 32).
    pub fn vertex_mask(&self) -> u32 {
        self.vertices.iter().fold(0, |m, &v| m | (1 << v))
    }

    pub fn is_in(&self, g: &SignedDigraph) -> bool {
        self.edges().all(|e| g.has_edge(e.from, e.to, e.sign))
    }

    /// Applies a vertex relabelling, keeping per-step signs.
    pub fn relabel(&self, map: impl Fn(usize) -> usize) -> Result<SignedCycle> {
        SignedCycle::new(self.vertices.iter().map(|&v| map(v)).collect(), self.signs.clone())
    }

    fn sort_key(&self) -> (usize, &[usize], Sign, &[Sign]) {
        (self.vertices.len(), &self.vertices, self.sign(), &self.signs)
    }
}

impl PartialOrd for SignedCycle {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SignedCycle {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}

impl fmt::Display for SignedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for e in self.edges() {
            write!(f, "{} {}", e.from, e.sign)?;
            f.write_str("> ")?;
        }
        write!(f, "{}) [{}]", self.vertices[0], self.sign())
    }
}

/// Johnson's algorithm over a digraph given by successor lists (self-loops
/// allowed, no parallel arcs). Each circuit starts at its smallest vertex.
/// The visitor returns `false` to stop the enumeration.
pub fn elementary_circuits(n: usize, succ: &[Vec<usize>], visit: &mut dyn FnMut(&[usize]) -> bool) {
    let mut search = Johnson {
        succ,
        blocked: vec![false; n],
        b: vec![Vec::new(); n],
        stack: Vec::new(),
        allowed: vec![false; n],
        stopped: false,
    };
    for s in 0..n {
        if search.stopped {
            return;
        }
        // restrict to vertices >= s within the strongly connected component of s
        let comp = scc_of(n, succ, s);
        if comp.is_empty() {
            continue;
        }
        for v in 0..n {
            search.allowed[v] = false;
        }
        for &v in &comp {
            search.allowed[v] = true;
            search.blocked[v] = false;
            search.b[v].clear();
        }
        search.circuit(s, s, visit);
    }
}

/// Vertices `>= s` in the strongly connected component of `s` within the
/// subgraph induced by `{s, s+1, ...}`; empty when that component has no
/// cycle through `s`.
fn scc_of(n: usize, succ: &[Vec<usize>], s: usize) -> Vec<usize> {
    let reach = |forward: bool| {
        let mut seen = vec![false; n];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            let nexts: Vec<usize> = if forward {
                succ[v].clone()
            } else {
                (s..n).filter(|&u| succ[u].contains(&v)).collect()
            };
            for w in nexts {
                if w >= s && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        seen
    };
    let fwd = reach(true);
    let bwd = reach(false);
    let comp: Vec<usize> = (s..n).filter(|&v| fwd[v] && bwd[v]).collect();
    let has_cycle = comp.len() > 1 || succ[s].contains(&s);
    if has_cycle {
        comp
    } else {
        Vec::new()
    }
}

struct Johnson<'a> {
    succ: &'a [Vec<usize>],
    blocked: Vec<bool>,
    b: Vec<Vec<usize>>,
    stack: Vec<usize>,
    allowed: Vec<bool>,
    stopped: bool,
}

impl Johnson<'_> {
    fn unblock(&mut self, u: usize) {
        let mut work = vec![u];
        while let Some(u) = work.pop() {
            if !self.blocked[u] {
                continue;
            }
            self.blocked[u] = false;
            work.extend(std::mem::take(&mut self.b[u]));
        }
    }

    fn circuit(&mut self, v: usize, s: usize, visit: &mut dyn FnMut(&[usize]) -> bool) -> bool {
        let mut found = false;
        self.stack.push(v);
        self.blocked[v] = true;
        for &w in self.succ[v].iter() {
            if self.stopped {
                break;
            }
            if !self.allowed[w] {
                continue;
            }
            if w == s {
                if !visit(&self.stack) {
                    self.stopped = true;
                }
                found = true;
            } else if !self.blocked[w] && self.circuit(w, s, visit) {
                found = true;
            }
        }
        if found {
            self.unblock(v);
        } else {
            for &w in self.succ[v].iter() {
                if self.allowed[w] && !self.b[w].contains(&v) {
                    self.b[w].push(v);
                }
            }
        }
        self.stack.pop();
        found
    }
}
