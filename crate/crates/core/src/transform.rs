//! Eliminating a variable by substitution, the expansion that delocalizes
//! chorded cycles of negative and-nets, and the "above" relation between
//! cycles of an expanded network and cycles of the original.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::andnet::AndNet;
use crate::error::{Error, Result};
use crate::graph::{SignedCycle, SignedDigraph};
use crate::interaction::{global_graph, partial_word};
use crate::network::BooleanNetwork;
use crate::state::{full_mask, State, HARD_MAX_DIM};

#[inline]
fn insert_bit(y: u32, k: usize, b: bool) -> u32 {
    let low = y & ((1u32 << k) - 1);
    let high = (y >> k) << (k + 1);
    low | high | ((b as u32) << k)
}

#[inline]
fn remove_bit(x: u32, k: usize) -> u32 {
    let low = x & ((1u32 << k) - 1);
    let high = (x >> (k + 1)) << k;
    low | high
}

/// Old index -> new index after deleting coordinate `k`.
pub fn renumbering(n: usize, k: usize) -> Vec<Option<usize>> {
    (0..n)
        .map(|i| match i.cmp(&k) {
            std::cmp::Ordering::Less => Some(i),
            std::cmp::Ordering::Equal => None,
            std::cmp::Ordering::Greater => Some(i - 1),
        })
        .collect()
}

fn check_reducible(f: &BooleanNetwork, k: usize) -> Result<()> {
    f.check_index(k)?;
    if (0..f.state_count() as u32).any(|x| partial_word(f, k, k, x)) {
        return Err(Error::LoopOnReducedVariable(k));
    }
    Ok(())
}

#[inline]
fn lift_word(f: &BooleanNetwork, k: usize, y: u32) -> u32 {
    let x0 = insert_bit(y, k, false);
    insert_bit(y, k, f.coordinate(k, x0))
}

/// Substitutes `f_k` for `x_k` and deletes coordinate `k`; the remaining
/// coordinates shift down by one past `k`.
pub fn reduce(f: &BooleanNetwork, k: usize) -> Result<BooleanNetwork> {
    check_reducible(f, k)?;
    let m = f.dim() - 1;
    let images = (0..1u32 << m)
        .map(|y| remove_bit(f.image(lift_word(f, k, y)), k))
        .collect();
    BooleanNetwork::from_images_unguarded(m, images)
}

/// `x'`: inserts `f_k(x, -)` at position `k`.
pub fn lift_state(f: &BooleanNetwork, k: usize, x: &State) -> Result<State> {
    check_reducible(f, k)?;
    if x.dim() + 1 != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim() - 1,
            found: x.dim(),
        });
    }
    Ok(f.state(lift_word(f, k, x.word())))
}

/// Deletes coordinate `k`.
pub fn project_state(x: &State, k: usize) -> Result<State> {
    if k >= x.dim() {
        return Err(Error::IndexOutOfRange { index: k, n: x.dim() });
    }
    State::new(remove_bit(x.word(), k), x.dim() - 1)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct JacobianIdentityFailure {
    pub x: State,
    pub i: usize,
    pub j: usize,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct JacobianIdentityReport {
    pub reduced: usize,
    pub checked: usize,
    pub counterexample: Option<JacobianIdentityFailure>,
}

impl JacobianIdentityReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks, for every reduced state `x` and reduced indices `i, j`,
/// `d_j f'_i(x) = d_j f_i(x') + d_j f_k(x') * d_k f_i(x' + e^j)`
/// where indices on the right are the original ones.
pub fn check_reduction_jacobian(f: &BooleanNetwork, k: usize) -> Result<JacobianIdentityReport> {
    let reduced = reduce(f, k)?;
    let m = reduced.dim();
    let orig = |i: usize| if i >= k { i + 1 } else { i };
    let mut checked = 0;
    for y in 0..1u32 << m {
        let xp = lift_word(f, k, y);
        for i in 0..m {
            for j in 0..m {
                checked += 1;
                let (oi, oj) = (orig(i), orig(j));
                let lhs = partial_word(&reduced, i, j, y);
                let rhs = partial_word(f, oi, oj, xp)
                    ^ (partial_word(f, k, oj, xp) & partial_word(f, oi, k, xp ^ (1 << oj)));
                if lhs != rhs {
                    return Ok(JacobianIdentityReport {
                        reduced: k,
                        checked,
                        counterexample: Some(JacobianIdentityFailure {
                            x: reduced.state(y),
                            i,
                            j,
                        }),
                    });
                }
            }
        }
    }
    Ok(JacobianIdentityReport {
        reduced: k,
        checked,
        counterexample: None,
    })
}

/// Random network whose coordinate `k` ignores `x_k`, hence reducible over `k`.
pub fn random_reducible_network(n: usize, k: usize, seed: u64) -> Result<BooleanNetwork> {
    if !(2..=HARD_MAX_DIM).contains(&n) {
        return Err(Error::InvalidDimension(n));
    }
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, n });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut images: Vec<u32> = (0..1usize << n).map(|_| rng.gen::<u32>() & full_mask(n)).collect();
    for x in 0..1u32 << n {
        if (x >> k) & 1 == 1 {
            let base = images[(x ^ (1 << k)) as usize];
            images[x as usize] = (images[x as usize] & !(1 << k)) | (base & (1 << k));
        }
    }
    BooleanNetwork::from_images(n, images)
}

/// One cycle's choice: a chord `(i, k)` and the cycle edge `(i, j)` leaving `i`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ChordChoice {
    pub cycle: SignedCycle,
    pub chord: (usize, usize),
    pub edge: (usize, usize),
}

/// A quasi-delocalizing function: one [`ChordChoice`] per cycle of the
/// chosen set, with no chord reused as a chosen cycle edge.
#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize)]
pub struct QuasiDelocalizing {
    pub choices: Vec<ChordChoice>,
}

impl QuasiDelocalizing {
    pub fn is_empty(&self) -> bool {
        self.choices.is_empty()
    }

    pub fn chord_of(&self, c: &SignedCycle) -> Option<(usize, usize)> {
        self.choices.iter().find(|ch| &ch.cycle == c).map(|ch| ch.chord)
    }

    pub fn edge_of(&self, c: &SignedCycle) -> Option<(usize, usize)> {
        self.choices.iter().find(|ch| &ch.cycle == c).map(|ch| ch.edge)
    }

    /// Validates against the graph of a negative and-net.
    pub fn validate(&self, a: &AndNet) -> Result<()> {
        if let Some(i) = (0..a.dim()).find(|&i| a.positive_mask(i) != 0) {
            return Err(Error::NotNegative(i));
        }
        let g = a.to_signed_digraph();
        let mut chords = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for ch in &self.choices {
            if !ch.cycle.is_in(&g) {
                return Err(Error::NotACycle(ch.cycle.to_string()));
            }
            let (i, k) = ch.chord;
            if !chord_candidates(&g, &ch.cycle).contains(&ch.chord) {
                return Err(Error::InvalidQuasiDelocalizing(format!(
                    "({i}, {k}) is not a chord of {}",
                    ch.cycle
                )));
            }
            if Some(ch.edge) != leaving_edge(&ch.cycle, i) {
                return Err(Error::InvalidQuasiDelocalizing(format!(
                    "{:?} is not the edge of {} leaving {i}",
                    ch.edge, ch.cycle
                )));
            }
            chords.insert(ch.chord);
            edges.insert(ch.edge);
        }
        if let Some(e) = chords.intersection(&edges).next() {
            return Err(Error::InvalidQuasiDelocalizing(format!(
                "{e:?} is both a chosen chord and a chosen cycle edge"
            )));
        }
        Ok(())
    }
}

fn leaving_edge(c: &SignedCycle, i: usize) -> Option<(usize, usize)> {
    c.edges().find(|e| e.from == i).map(|e| (e.from, e.to))
}

/// Chords `(i, k)` of `c` in lexicographic order: edges of `g` between two
/// distinct cycle vertices that are not steps of the cycle.
fn chord_candidates(g: &SignedDigraph, c: &SignedCycle) -> Vec<(usize, usize)> {
    let mut vs: Vec<usize> = c.vertices().to_vec();
    vs.sort_unstable();
    let mut out = Vec::new();
    for &i in &vs {
        for &k in &vs {
            if i != k && g.has_arc(i, k) && !c.has_step(i, k) {
                out.push((i, k));
            }
        }
    }
    out
}

fn qd_setup(a: &AndNet, cycles: &[SignedCycle]) -> Result<(Vec<SignedCycle>, Vec<Vec<((usize, usize), (usize, usize))>>)> {
    if let Some(i) = (0..a.dim()).find(|&i| a.positive_mask(i) != 0) {
        return Err(Error::NotNegative(i));
    }
    let g = a.to_signed_digraph();
    let mut s: Vec<SignedCycle> = cycles.to_vec();
    s.sort();
    s.dedup();
    let mut options = Vec::with_capacity(s.len());
    for c in &s {
        if !c.is_in(&g) {
            return Err(Error::NotACycle(c.to_string()));
        }
        options.push(
            chord_candidates(&g, c)
                .into_iter()
                .map(|ch| (ch, leaving_edge(c, ch.0).expect("chord starts on the cycle")))
                .collect(),
        );
    }
    Ok((s, options))
}

type Pair = ((usize, usize), (usize, usize));

fn qd_search(
    options: &[Vec<Pair>],
    depth: usize,
    chords: &mut BTreeMap<(usize, usize), usize>,
    edges: &mut BTreeMap<(usize, usize), usize>,
    picked: &mut Vec<Pair>,
    visit: &mut dyn FnMut(&[Pair]) -> bool,
) -> bool {
    if depth == options.len() {
        return visit(picked);
    }
    for &(chord, edge) in &options[depth] {
        if edges.contains_key(&chord) || chords.contains_key(&edge) {
            continue;
        }
        *chords.entry(chord).or_default() += 1;
        *edges.entry(edge).or_default() += 1;
        picked.push((chord, edge));
        let go_on = qd_search(options, depth + 1, chords, edges, picked, visit);
        picked.pop();
        for (map, key) in [(&mut *chords, chord), (&mut *edges, edge)] {
            let c = map.get_mut(&key).expect("counted");
            *c -= 1;
            if *c == 0 {
                map.remove(&key);
            }
        }
        if !go_on {
            return false;
        }
    }
    true
}

/// First quasi-delocalizing function for `cycles` found by backtracking
/// over cycles in canonical order and chords in lexicographic order.
pub fn find_quasi_delocalizing(a: &AndNet, cycles: &[SignedCycle]) -> Result<Option<QuasiDelocalizing>> {
    let (s, options) = qd_setup(a, cycles)?;
    let mut found = None;
    qd_search(&options, 0, &mut BTreeMap::new(), &mut BTreeMap::new(), &mut Vec::new(), &mut |picked| {
        found = Some(picked.to_vec());
        false
    });
    Ok(found.map(|picked| QuasiDelocalizing {
        choices: s
            .into_iter()
            .zip(picked)
            .map(|(cycle, (chord, edge))| ChordChoice { cycle, chord, edge })
            .collect(),
    }))
}

/// Every quasi-delocalizing function for `cycles`, up to `limit` of them.
pub fn all_quasi_delocalizing(a: &AndNet, cycles: &[SignedCycle], limit: usize) -> Result<Vec<QuasiDelocalizing>> {
    let (s, options) = qd_setup(a, cycles)?;
    let mut all = Vec::new();
    qd_search(&options, 0, &mut BTreeMap::new(), &mut BTreeMap::new(), &mut Vec::new(), &mut |picked| {
        all.push(QuasiDelocalizing {
            choices: s
                .iter()
                .cloned()
                .zip(picked.iter().copied())
                .map(|(cycle, (chord, edge))| ChordChoice { cycle, chord, edge })
                .collect(),
        });
        all.len() < limit
    });
    Ok(all)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Role {
    /// Splits a chosen cycle edge `(i, j)` into `(i, i')+`, `(i', j)-`.
    #[serde(rename = "i_prime")]
    IPrime,
    /// Adds `(i, i'')+`, `(i'', i')+`, `(i'', k)-` for a chosen chord `(i, k)`.
    #[serde(rename = "i_dprime")]
    IDoublePrime,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NewVertex {
    pub role: Role,
    /// The cycle edge for an `i'`, the chord for an `i''`.
    pub source_edge: (usize, usize),
    /// For an `i''`: the `i'` it feeds.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub feeds: Option<usize>,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct ExpansionTrace {
    pub original_dim: usize,
    pub new_vertices: BTreeMap<usize, NewVertex>,
    /// All `i'` vertices, then all `i''` vertices.
    pub creation_order: Vec<usize>,
}

impl ExpansionTrace {
    pub fn expanded_dim(&self) -> usize {
        self.original_dim + self.new_vertices.len()
    }

    pub fn is_new(&self, v: usize) -> bool {
        self.new_vertices.contains_key(&v)
    }

    /// Indices to pass to successive [`reduce`] calls so as to remove the
    /// new vertices in reverse creation order, accounting for renumbering.
    pub fn reduction_sequence(&self) -> Vec<usize> {
        let mut alive: Vec<usize> = (0..self.expanded_dim()).collect();
        let mut out = Vec::new();
        for &v in self.creation_order.iter().rev() {
            let pos = alive.iter().position(|&a| a == v).expect("vertex alive");
            out.push(pos);
            alive.remove(pos);
        }
        out
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn check(&self) -> Result<()> {
        let keys: Vec<usize> = self.new_vertices.keys().copied().collect();
        let expect: Vec<usize> = (self.original_dim..self.expanded_dim()).collect();
        let mut order = self.creation_order.clone();
        order.sort_unstable();
        if keys != expect || order != expect {
            return Err(Error::InconsistentTrace(format!(
                "new vertices {keys:?} / creation order {:?} for original dimension {}",
                self.creation_order, self.original_dim
            )));
        }
        Ok(())
    }
}

/// Two-step expansion of a negative and-net along a quasi-delocalizing
/// function. For the `r`-th distinct (chord, edge) pair in lexicographic
/// order, `i'' = n + 2r` and, unless its edge was already split, `i' = n + 2r + 1`.
pub fn expand_delocalize(a: &AndNet, chi: &QuasiDelocalizing) -> Result<(AndNet, ExpansionTrace)> {
    chi.validate(a)?;
    let n = a.dim();
    let pairs: BTreeSet<((usize, usize), (usize, usize))> =
        chi.choices.iter().map(|c| (c.chord, c.edge)).collect();
    let mut next = n;
    let mut prime_of: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut dprimes: Vec<(usize, (usize, usize), usize)> = Vec::new();
    for &(chord, edge) in &pairs {
        let dprime = next;
        next += 1;
        let prime = *prime_of.entry(edge).or_insert_with(|| {
            next += 1;
            next - 1
        });
        dprimes.push((dprime, chord, prime));
    }
    let m = next;
    if m > HARD_MAX_DIM {
        return Err(Error::InvalidDimension(m));
    }
    let mut positive = vec![0u32; m];
    let mut negative = vec![0u32; m];
    for i in 0..n {
        negative[i] = a.negative_mask(i);
    }
    let mut trace = ExpansionTrace {
        original_dim: n,
        new_vertices: BTreeMap::new(),
        creation_order: Vec::new(),
    };
    let mut primes: Vec<(&(usize, usize), &usize)> = prime_of.iter().collect();
    primes.sort_by_key(|&(_, &v)| v);
    for (&(i, j), &ip) in primes {
        negative[j] &= !(1 << i);
        negative[j] |= 1 << ip;
        positive[ip] |= 1 << i;
        trace.new_vertices.insert(
            ip,
            NewVertex {
                role: Role::IPrime,
                source_edge: (i, j),
                feeds: None,
            },
        );
        trace.creation_order.push(ip);
    }
    for &(idp, (i, k), ip) in &dprimes {
        positive[idp] |= 1 << i;
        positive[ip] |= 1 << idp;
        negative[k] |= 1 << idp;
        trace.new_vertices.insert(
            idp,
            NewVertex {
                role: Role::IDoublePrime,
                source_edge: (i, k),
                feeds: Some(ip),
            },
        );
        trace.creation_order.push(idp);
    }
    Ok((AndNet::from_masks(positive, negative)?, trace))
}

/// Vertex sequence of `c` with the trace's new vertices removed.
pub fn project_cycle(trace: &ExpansionTrace, c: &SignedCycle) -> Vec<usize> {
    c.vertices().iter().copied().filter(|&v| !trace.is_new(v)).collect()
}

/// Cycles of the expanded network's global graph lying above `c`: removing
/// the new vertices leaves exactly the vertex cycle of `c`.
pub fn cycles_above(
    g: &BooleanNetwork,
    f: &BooleanNetwork,
    trace: &ExpansionTrace,
    c: &SignedCycle,
) -> Result<Vec<SignedCycle>> {
    trace.check()?;
    if f.dim() != trace.original_dim || g.dim() != trace.expanded_dim() {
        return Err(Error::InconsistentTrace(format!(
            "dimensions {} -> {} do not match the trace ({} -> {})",
            f.dim(),
            g.dim(),
            trace.original_dim,
            trace.expanded_dim()
        )));
    }
    if !c.is_in(&global_graph(f)) {
        return Err(Error::NotACycle(c.to_string()));
    }
    let target = c.vertices();
    Ok(global_graph(g)
        .cycles()?
        .into_iter()
        .filter(|d| {
            let p = project_cycle(trace, d);
            // both sequences start at their smallest vertex, so equal cycles
            // compare equal as sequences
            p == target
        })
        .collect())
}
