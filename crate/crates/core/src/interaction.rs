//! Discrete derivatives, Jacobians and signed interaction graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::dynamics::freedom_mask;
use crate::error::{Error, Result};
use crate::graph::{elementary_circuits, Sign, SignedCycle, SignedDigraph, DEFAULT_CYCLE_CAP};
use crate::network::BooleanNetwork;
use crate::state::{mask_indices, State};

/// `f_i(x) + f_i(x + e^j)`.
pub fn partial(f: &BooleanNetwork, i: usize, j: usize, x: &State) -> Result<bool> {
    f.check_state(x)?;
    f.check_index(i)?;
    f.check_index(j)?;
    Ok(partial_word(f, i, j, x.word()))
}

#[inline]
pub(crate) fn partial_word(f: &BooleanNetwork, i: usize, j: usize, x: u32) -> bool {
    ((f.image(x) ^ f.image(x ^ (1 << j))) >> i) & 1 == 1
}

/// `n x n` matrix over the two-element field; bit `j` of `rows[i]` is entry `(i, j)`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct JacobianMatrix {
    n: usize,
    rows: Vec<u32>,
}

impl JacobianMatrix {
    pub fn from_rows(n: usize, rows: Vec<u32>) -> Result<Self> {
        if rows.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: rows.len(),
            });
        }
        Ok(JacobianMatrix { n, rows })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        (self.rows[i] >> j) & 1 == 1
    }

    pub fn rows(&self) -> &[u32] {
        &self.rows
    }

    /// Rank by Gaussian elimination over the two-element field.
    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        let mut rank = 0;
        for col in 0..self.n {
            let Some(p) = (rank..self.n).find(|&r| (rows[r] >> col) & 1 == 1) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank];
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && (*row >> col) & 1 == 1 {
                    *row ^= pivot;
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn is_invertible(&self) -> bool {
        self.rank() == self.n
    }
}

impl fmt::Display for JacobianMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                f.write_str(if self.entry(i, j) { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn jacobian(f: &BooleanNetwork, x: &State) -> Result<JacobianMatrix> {
    f.check_state(x)?;
    Ok(jacobian_word(f, x.word()))
}

fn jacobian_word(f: &BooleanNetwork, x: u32) -> JacobianMatrix {
    let n = f.dim();
    let fx = f.image(x);
    let mut rows = vec![0u32; n];
    for j in 0..n {
        let diff = fx ^ f.image(x ^ (1 << j));
        for i in mask_indices(diff) {
            rows[i] |= 1 << j;
        }
    }
    JacobianMatrix { n, rows }
}

/// Edges `(j, i, sign)` of the local graph at state word `x`, sorted.
pub(crate) fn local_edges(f: &BooleanNetwork, x: u32) -> Vec<(usize, usize, Sign)> {
    let n = f.dim();
    let fx = f.image(x);
    let mut out = Vec::new();
    for j in 0..n {
        let diff = fx ^ f.image(x ^ (1 << j));
        let xj = (x >> j) & 1;
        for i in mask_indices(diff) {
            let sign = if xj == (fx >> i) & 1 {
                Sign::Positive
            } else {
                Sign::Negative
            };
            out.push((j, i, sign));
        }
    }
    out
}

/// Signed digraph with an edge `(j, i)` whenever `f_i` depends on `x_j` at `x`,
/// positive iff `x_j = f_i(x)`.
pub fn local_graph(f: &BooleanNetwork, x: &State) -> Result<SignedDigraph> {
    f.check_state(x)?;
    SignedDigraph::from_edges(f.dim(), local_edges(f, x.word()))
}

/// Union of all local graphs.
pub fn global_graph(f: &BooleanNetwork) -> SignedDigraph {
    let n = f.dim();
    // pos[j] / neg[j]: targets i of positive / negative edges (j, i)
    let (pos, neg) = (0..f.state_count() as u32)
        .into_par_iter()
        .fold(
            || (vec![0u32; n], vec![0u32; n]),
            |(mut pos, mut neg), x| {
                let fx = f.image(x);
                for j in 0..n {
                    let diff = fx ^ f.image(x ^ (1 << j));
                    let agree = if (x >> j) & 1 == 1 { fx } else { !fx };
                    pos[j] |= diff & agree;
                    neg[j] |= diff & !agree;
                }
                (pos, neg)
            },
        )
        .reduce(
            || (vec![0u32; n], vec![0u32; n]),
            |(mut p1, mut n1), (p2, n2)| {
                for j in 0..n {
                    p1[j] |= p2[j];
                    n1[j] |= n2[j];
                }
                (p1, n1)
            },
        );
    let mut g = SignedDigraph::new(n);
    for j in 0..n {
        for i in mask_indices(pos[j]) {
            g.add_edge(j, i, Sign::Positive).expect("in range");
        }
        for i in mask_indices(neg[j]) {
            g.add_edge(j, i, Sign::Negative).expect("in range");
        }
    }
    g
}

fn edge_in_local(f: &BooleanNetwork, x: u32, from: usize, to: usize, sign: Sign) -> bool {
    if !partial_word(f, to, from, x) {
        return false;
    }
    let agree = (x >> from) & 1 == (f.image(x) >> to) & 1;
    agree == (sign == Sign::Positive)
}

/// Smallest state `x` whose local graph contains every signed edge of `c`,
/// or `None` when the cycle is not local.
pub fn is_local_cycle(f: &BooleanNetwork, c: &SignedCycle) -> Result<Option<State>> {
    let g = global_graph(f);
    if !c.is_in(&g) {
        return Err(Error::NotACycle(format!("{c} is not a cycle of the global graph")));
    }
    let edges: Vec<_> = c.edges().collect();
    let hit = (0..f.state_count() as u32)
        .into_par_iter()
        .find_first(|&x| edges.iter().all(|e| edge_in_local(f, x, e.from, e.to, e.sign)));
    Ok(hit.map(|x| f.state(x)))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SignFilter {
    Positive,
    Negative,
    #[default]
    All,
}

impl SignFilter {
    pub fn accepts(self, s: Sign) -> bool {
        match self {
            SignFilter::All => true,
            SignFilter::Positive => s == Sign::Positive,
            SignFilter::Negative => s == Sign::Negative,
        }
    }
}

impl FromStr for SignFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pos" | "positive" | "+" => Ok(SignFilter::Positive),
            "neg" | "negative" | "-" => Ok(SignFilter::Negative),
            "all" => Ok(SignFilter::All),
            _ => Err(Error::Format(format!("unknown sign filter {s:?} (pos|neg|all)"))),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct LocalCycle {
    pub cycle: SignedCycle,
    pub witness: State,
}

/// Signed cycles of one local graph (local graphs are simple).
fn cycles_at(f: &BooleanNetwork, x: u32, filter: SignFilter, cap: usize) -> Result<Vec<SignedCycle>> {
    let n = f.dim();
    let edges = local_edges(f, x);
    let mut succ = vec![Vec::new(); n];
    let mut sign = BTreeMap::new();
    for &(j, i, s) in &edges {
        succ[j].push(i);
        sign.insert((j, i), s);
    }
    let mut out = Vec::new();
    let mut overflow = false;
    elementary_circuits(n, &succ, &mut |circuit| {
        let signs: Vec<Sign> = (0..circuit.len())
            .map(|k| sign[&(circuit[k], circuit[(k + 1) % circuit.len()])])
            .collect();
        if filter.accepts(Sign::product(signs.iter().copied())) {
            if out.len() >= cap {
                overflow = true;
                return false;
            }
            out.push(SignedCycle::new(circuit.to_vec(), signs).expect("elementary circuit"));
        }
        true
    });
    if overflow {
        return Err(Error::CycleCapExceeded(cap));
    }
    Ok(out)
}

/// Every signed cycle that is local, with its smallest witness state, in
/// canonical cycle order. Sweeps all states and enumerates each local graph.
pub fn local_cycles(f: &BooleanNetwork, filter: SignFilter) -> Result<Vec<LocalCycle>> {
    let merged = (0..f.state_count() as u32)
        .into_par_iter()
        .try_fold(BTreeMap::new, |mut acc: BTreeMap<SignedCycle, u32>, x| {
            for c in cycles_at(f, x, filter, DEFAULT_CYCLE_CAP)? {
                acc.entry(c).and_modify(|w| *w = (*w).min(x)).or_insert(x);
            }
            Ok::<_, Error>(acc)
        })
        .try_reduce(BTreeMap::new, |mut a, b| {
            for (c, x) in b {
                a.entry(c).and_modify(|w| *w = (*w).min(x)).or_insert(x);
            }
            Ok(a)
        })?;
    Ok(merged
        .into_iter()
        .map(|(cycle, x)| LocalCycle {
            cycle,
            witness: f.state(x),
        })
        .collect())
}

/// Cycles of the local graph at `x`, canonically ordered.
pub fn local_graph_cycles(f: &BooleanNetwork, x: &State) -> Result<Vec<SignedCycle>> {
    f.check_state(x)?;
    let mut out = cycles_at(f, x.word(), SignFilter::All, DEFAULT_CYCLE_CAP)?;
    out.sort();
    Ok(out)
}

/// Sign of a cycle of the local graph at `x` read off the degrees of
/// freedom: positive iff the cycle meets `freedom(x)` in an even number of
/// vertices.
pub fn cycle_sign_by_parity(f: &BooleanNetwork, x: &State, c: &SignedCycle) -> Result<Sign> {
    f.check_state(x)?;
    let w = x.word();
    if !c.edges().all(|e| e.from < f.dim() && e.to < f.dim() && partial_word(f, e.to, e.from, w)) {
        return Err(Error::NotACycle(format!("{c} is not a cycle of the local graph at {x}")));
    }
    let meet = (c.vertex_mask() & freedom_mask(f, w)).count_ones();
    Ok(Sign::from_parity(meet % 2 == 1))
}

/// A spanning set of vertex-disjoint cycles.
#[derive(Clone, PartialEq, Eq, Debug, PartialOrd, Ord, Serialize)]
pub struct Hooping {
    pub cycles: Vec<SignedCycle>,
}

impl Hooping {
    pub fn sign(&self) -> Sign {
        Sign::product(self.cycles.iter().map(|c| c.sign()))
    }
}

/// All hoopings of `g`; parallel edges of opposite signs give distinct
/// hoopings. Fails past `DEFAULT_CYCLE_CAP` results.
pub fn hoopings(g: &SignedDigraph) -> Result<Vec<Hooping>> {
    let n = g.vertex_count();
    let succ: Vec<Vec<usize>> = (0..n).map(|v| g.successors(v)).collect();
    let mut out = Vec::new();
    let mut next = vec![usize::MAX; n];
    let mut used = vec![false; n];
    permutation_covers(0, &succ, &mut next, &mut used, &mut |next| {
        expand_cover(g, next, &mut out)
    })?;
    out.sort();
    Ok(out)
}

/// Number of cycle covers of the underlying unsigned digraph.
pub fn cycle_cover_count(g: &SignedDigraph) -> Result<u64> {
    let n = g.vertex_count();
    let succ: Vec<Vec<usize>> = (0..n).map(|v| g.successors(v)).collect();
    let mut next = vec![usize::MAX; n];
    let mut used = vec![false; n];
    let mut count = 0u64;
    permutation_covers(0, &succ, &mut next, &mut used, &mut |_| {
        count += 1;
        Ok(())
    })?;
    Ok(count)
}

fn permutation_covers(
    v: usize,
    succ: &[Vec<usize>],
    next: &mut Vec<usize>,
    used: &mut Vec<bool>,
    visit: &mut dyn FnMut(&[usize]) -> Result<()>,
) -> Result<()> {
    if v == succ.len() {
        return visit(next);
    }
    for &w in &succ[v] {
        if used[w] {
            continue;
        }
        used[w] = true;
        next[v] = w;
        permutation_covers(v + 1, succ, next, used, visit)?;
        used[w] = false;
    }
    next[v] = usize::MAX;
    Ok(())
}

fn expand_cover(g: &SignedDigraph, next: &[usize], out: &mut Vec<Hooping>) -> Result<()> {
    let n = next.len();
    let mut seen = vec![false; n];
    let mut loops: Vec<Vec<usize>> = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut cyc = Vec::new();
        let mut v = s;
        while !seen[v] {
            seen[v] = true;
            cyc.push(v);
            v = next[v];
        }
        loops.push(cyc);
    }
    let mut partial: Vec<Vec<SignedCycle>> = vec![Vec::new()];
    for cyc in loops {
        let choices: Vec<Vec<Sign>> = (0..cyc.len())
            .map(|k| g.signs(cyc[k], cyc[(k + 1) % cyc.len()]))
            .collect();
        let mut variants: Vec<Vec<Sign>> = vec![Vec::new()];
        for ch in &choices {
            variants = variants
                .into_iter()
                .flat_map(|v| {
                    ch.iter().map(move |&s| {
                        let mut v = v.clone();
                        v.push(s);
                        v
                    })
                })
                .collect();
        }
        let cyc = &cyc;
        let variants = &variants;
        partial = partial
            .into_iter()
            .flat_map(|p| {
                variants.iter().map(move |signs| {
                    let mut p = p.clone();
                    p.push(SignedCycle::new(cyc.clone(), signs.clone()).expect("cover cycle"));
                    p
                })
            })
            .collect();
    }
    for mut cycles in partial {
        if out.len() >= DEFAULT_CYCLE_CAP {
            return Err(Error::CycleCapExceeded(DEFAULT_CYCLE_CAP));
        }
        cycles.sort();
        out.push(Hooping { cycles });
    }
    Ok(())
}

/// Invertibility of the Jacobian at `x` over the two-element field.
pub fn jacobian_invertible(f: &BooleanNetwork, x: &State) -> Result<bool> {
    Ok(jacobian(f, x)?.is_invertible())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::andnet::{random_andnet, AndNet};
    use crate::dynamics::{restrict_subcube, Subcube};
    use crate::expr::parse_network;
    use crate::network::random_network;
    use proptest::prelude::*;

    fn fig1() -> BooleanNetwork {
        parse_network("f0 = !x1 & x2\nf1 = !x2\nf2 = !x0 & x1").unwrap()
    }

    fn st(s: &str) -> State {
        s.parse().unwrap()
    }

    /// Oracle: Leibniz expansion of the determinant over GF(2), i.e. the
    /// parity of the number of permutations supported by the matrix.
    fn det_by_permutations(m: &JacobianMatrix) -> bool {
        fn go(m: &JacobianMatrix, row: usize, used: u32) -> u32 {
            if row == m.dim() {
                return 1;
            }
            (0..m.dim())
                .filter(|&c| used >> c & 1 == 0 && m.entry(row, c))
                .map(|c| go(m, row + 1, used | 1 << c))
                .sum()
        }
        go(m, 0, 0) % 2 == 1
    }

    #[test]
    fn partials_of_identity_and_constant() {
        let id = BooleanNetwork::identity(3).unwrap();
        let c = BooleanNetwork::constant(&st("101")).unwrap();
        for x in id.states() {
            for i in 0..3 {
                for j in 0..3 {
                    assert_eq!(partial(&id, i, j, &x).unwrap(), i == j);
                    assert!(!partial(&c, i, j, &x).unwrap());
                }
            }
            assert!(jacobian_invertible(&id, &x).unwrap());
            assert!(!jacobian_invertible(&c, &x).unwrap());
        }
    }

    #[test]
    fn fig1_jacobian_at_origin() {
        // f0 = !x1 & x2: at 000 flipping x2 turns f0 on; flipping x1 keeps it off
        // f1 = !x2: depends on x2 everywhere
        // f2 = !x0 & x1: at 000 flipping x1 turns f2 on
        let j = jacobian(&fig1(), &st("000")).unwrap();
        assert_eq!(j.rows(), &[0b100, 0b100, 0b010]);
        assert_eq!(j.to_string(), "001\n001\n010\n");
        assert!(!j.is_invertible());
    }

    #[test]
    fn local_graphs_of_identity_and_negation() {
        let id = BooleanNetwork::identity(4).unwrap();
        let neg = BooleanNetwork::negation(4).unwrap();
        for x in id.states() {
            let g = local_graph(&id, &x).unwrap();
            assert_eq!(g.edge_count(), 4);
            assert!((0..4).all(|i| g.has_edge(i, i, Sign::Positive)));
            let h = local_graph(&neg, &x).unwrap();
            assert!((0..4).all(|i| h.has_edge(i, i, Sign::Negative)));
        }
    }

    #[test]
    fn xor_has_both_signs_globally() {
        let f = parse_network("f0 = x0 ^ x1\nf1 = x1").unwrap();
        let g = global_graph(&f);
        assert_eq!(g.signs(1, 0), vec![Sign::Negative, Sign::Positive]);
        assert!(!g.is_simple());
        let c = BooleanNetwork::constant(&st("01")).unwrap();
        assert_eq!(global_graph(&c).edge_count(), 0);
    }

    #[test]
    fn global_graph_of_andnet_is_its_digraph() {
        for seed in 0..100 {
            let a = random_andnet(5, seed, 0.4).unwrap();
            let f = a.to_network();
            let d = a.to_signed_digraph();
            assert_eq!(global_graph(&f), d);
            for x in f.states() {
                assert!(local_graph(&f, &x).unwrap().is_subgraph_of(&d));
            }
        }
    }

    #[test]
    fn global_graph_is_union_of_local_graphs() {
        for seed in 0..50 {
            let f = random_network(4, seed).unwrap();
            let mut union = SignedDigraph::new(4);
            for x in f.states() {
                for e in local_graph(&f, &x).unwrap().edges() {
                    union.add_edge(e.from, e.to, e.sign).unwrap();
                }
            }
            assert_eq!(global_graph(&f), union);
        }
    }

    #[test]
    fn identity_positive_local_cycles() {
        let id = BooleanNetwork::identity(3).unwrap();
        let lc = local_cycles(&id, SignFilter::Positive).unwrap();
        assert_eq!(lc.len(), 3);
        assert!(lc.iter().all(|l| l.witness == State::zero(3) && l.cycle.len() == 1));
        assert!(local_cycles(&id, SignFilter::Negative).unwrap().is_empty());
    }

    #[test]
    fn fig1_local_cycles() {
        let f = fig1();
        let neg = local_cycles(&f, SignFilter::Negative).unwrap();
        assert!(!neg.is_empty());
        for l in &neg {
            assert_eq!(is_local_cycle(&f, &l.cycle).unwrap(), Some(l.witness));
        }
    }

    #[test]
    fn locality_witness_is_minimal() {
        for seed in 0..40 {
            let f = random_network(4, 500 + seed).unwrap();
            let all = local_cycles(&f, SignFilter::All).unwrap();
            for c in global_graph(&f).cycles().unwrap() {
                let w = is_local_cycle(&f, &c).unwrap();
                let brute = f.states().find(|x| c.is_in(&local_graph(&f, x).unwrap()));
                assert_eq!(w, brute);
                let listed = all.iter().find(|l| l.cycle == c).map(|l| l.witness);
                assert_eq!(listed, brute);
            }
        }
    }

    #[test]
    fn non_global_cycle_is_rejected() {
        let id = BooleanNetwork::identity(3).unwrap();
        let c = SignedCycle::uniform(vec![0, 1], Sign::Positive).unwrap();
        assert!(matches!(is_local_cycle(&id, &c), Err(Error::NotACycle(_))));
    }

    #[test]
    fn parity_of_a_free_loop() {
        let neg = BooleanNetwork::negation(2).unwrap();
        let c = SignedCycle::uniform(vec![0], Sign::Negative).unwrap();
        assert_eq!(cycle_sign_by_parity(&neg, &st("00"), &c).unwrap(), Sign::Negative);
    }

    #[test]
    fn parity_law_exhaustive_small() {
        for seed in 0..300 {
            let n = 1 + (seed % 4) as usize;
            let f = random_network(n, seed).unwrap();
            for x in f.states() {
                let fixed = f.eval(&x).unwrap() == x;
                for c in local_graph_cycles(&f, &x).unwrap() {
                    assert_eq!(cycle_sign_by_parity(&f, &x, &c).unwrap(), c.sign());
                    if fixed {
                        assert_eq!(c.sign(), Sign::Positive);
                    }
                }
            }
        }
    }

    #[test]
    fn hoopings_basic() {
        let id = BooleanNetwork::identity(3).unwrap();
        let h = hoopings(&local_graph(&id, &State::zero(3)).unwrap()).unwrap();
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].sign(), Sign::Positive);
        assert!(hoopings(&SignedDigraph::new(3)).unwrap().is_empty());
        // two parallel loops on one vertex: two hoopings of opposite signs
        let g = SignedDigraph::from_edges(1, [(0, 0, Sign::Positive), (0, 0, Sign::Negative)]).unwrap();
        let h = hoopings(&g).unwrap();
        assert_eq!(h.len(), 2);
        assert_eq!(h[0].sign(), Sign::Negative);
    }

    #[test]
    fn hooping_parity_matches_determinant() {
        for seed in 0..200 {
            let n = 1 + (seed % 5) as usize;
            let f = random_network(n, 9000 + seed).unwrap();
            for x in f.states() {
                let j = jacobian(&f, &x).unwrap();
                let g = local_graph(&f, &x).unwrap();
                let count = hoopings(&g).unwrap().len() as u64;
                assert_eq!(count, cycle_cover_count(&g).unwrap());
                assert_eq!(j.is_invertible(), count % 2 == 1);
                assert_eq!(j.is_invertible(), det_by_permutations(&j));
            }
        }
    }

    #[test]
    fn hoopings_are_disjoint_covers() {
        let a = AndNet::new(
            vec![vec![1], vec![2], vec![0]],
            vec![vec![2], vec![0], vec![1]],
        )
        .unwrap();
        let g = a.to_signed_digraph();
        for h in hoopings(&g).unwrap() {
            let mut mask = 0u32;
            for c in &h.cycles {
                assert_eq!(mask & c.vertex_mask(), 0);
                mask |= c.vertex_mask();
                assert!(c.is_in(&g));
            }
            assert_eq!(mask, 0b111);
        }
    }

    #[test]
    fn restriction_matches_induced_local_graph() {
        for seed in 0..30 {
            let f = random_network(5, 300 + seed).unwrap();
            let base = State::new(seed as u32 % 32, 5).unwrap();
            let free = [0, 2, 3];
            let kappa = Subcube::new(base, &free).unwrap();
            let r = restrict_subcube(&f, &kappa).unwrap();
            for local in 0..8u32 {
                let y = kappa.embed(local);
                let induced = local_graph(&f, &y).unwrap().induced_subgraph(&free);
                let lr = local_graph(&r, &State::new(local, 3).unwrap()).unwrap();
                assert_eq!(lr, induced);
            }
        }
    }

    proptest! {
        #[test]
        fn partial_is_symmetric_in_flip(seed in 0u64..10_000, x in 0u32..16, i in 0usize..4, j in 0usize..4) {
            let f = random_network(4, seed).unwrap();
            let s = State::new(x, 4).unwrap();
            let t = s.flip(j).unwrap();
            prop_assert_eq!(partial(&f, i, j, &s).unwrap(), partial(&f, i, j, &t).unwrap());
        }

        #[test]
        fn edge_signs_are_coherent(seed in 0u64..10_000, x in 0u32..16) {
            let f = random_network(4, seed).unwrap();
            let s = State::new(x, 4).unwrap();
            let fx = f.eval(&s).unwrap();
            let g = local_graph(&f, &s).unwrap();
            prop_assert!(g.is_simple());
            for e in g.edges() {
                prop_assert_eq!(e.sign == Sign::Positive, s.bit(e.from) == fx.bit(e.to));
            }
        }

        #[test]
        fn odd_freedom_and_invertible_forces_negative_cycle(seed in 0u64..10_000, x in 0u32..32) {
            let f = random_network(5, seed).unwrap();
            let s = State::new(x, 5).unwrap();
            let odd = freedom_mask(&f, x).count_ones() % 2 == 1;
            if odd && jacobian_invertible(&f, &s).unwrap() {
                let cycles = local_graph_cycles(&f, &s).unwrap();
                prop_assert!(cycles.iter().any(|c| c.sign() == Sign::Negative));
            }
        }
    }
}
