//! Asynchronous dynamics: successors, fixed points, attractors and
//! attractive cycles, non-expansiveness, restriction to subcubes.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::network::BooleanNetwork;
use crate::state::{full_mask, mask_indices, State, StateRecord};

/// Degrees of freedom of `x`: coordinates with `f_i(x) != x_i`.
pub fn freedom(f: &BooleanNetwork, x: &State) -> Result<Vec<usize>> {
    f.check_state(x)?;
    Ok(mask_indices(freedom_mask(f, x.word())))
}

#[inline]
pub(crate) fn freedom_mask(f: &BooleanNetwork, x: u32) -> u32 {
    f.image(x) ^ x
}

pub fn async_successors(f: &BooleanNetwork, x: &State) -> Result<Vec<State>> {
    f.check_state(x)?;
    let w = x.word();
    Ok(mask_indices(freedom_mask(f, w))
        .into_iter()
        .map(|i| f.state(w ^ (1 << i)))
        .collect())
}

/// Every edge of the asynchronous state graph, ordered by source then flipped coordinate.
pub fn async_edges(f: &BooleanNetwork) -> Vec<(State, State)> {
    let mut out = Vec::new();
    for x in 0..f.state_count() as u32 {
        for i in mask_indices(freedom_mask(f, x)) {
            out.push((f.state(x), f.state(x ^ (1 << i))));
        }
    }
    out
}

/// Recovers `f` from its asynchronous graph: `f(x) = x + e^I` where `I`
/// collects the coordinates flipped by the edges leaving `x`.
pub fn from_async_graph(n: usize, edges: &[(State, State)]) -> Result<BooleanNetwork> {
    let mut images: Vec<u32> = (0..1u32 << n).collect();
    if n == 0 {
        return Err(Error::InvalidDimension(0));
    }
    let mut seen = BTreeSet::new();
    for (x, y) in edges {
        for s in [x, y] {
            if s.dim() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: s.dim(),
                });
            }
        }
        let diff = x.word() ^ y.word();
        if diff.count_ones() != 1 {
            return Err(Error::NotAHypercubeEdge {
                from: x.to_bitstring(),
                to: y.to_bitstring(),
            });
        }
        if !seen.insert((x.word(), y.word())) {
            return Err(Error::DuplicateEdge {
                from: x.to_bitstring(),
                to: y.to_bitstring(),
            });
        }
        images[x.word() as usize] ^= diff;
    }
    BooleanNetwork::from_images(n, images)
}

/// Fixed points, ascending by word.
pub fn fixed_points(f: &BooleanNetwork) -> Vec<State> {
    (0..f.state_count() as u32)
        .filter(|&x| f.image(x) == x)
        .map(|x| f.state(x))
        .collect()
}

/// A cycle of states; consecutive states (cyclically) differ in one coordinate.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct StateCycle {
    states: Vec<State>,
}

impl StateCycle {
    pub fn new(states: Vec<State>) -> Result<Self> {
        if states.is_empty() {
            return Err(Error::Format("empty state cycle".into()));
        }
        let distinct: BTreeSet<_> = states.iter().collect();
        if distinct.len() != states.len() {
            return Err(Error::Format("state cycle repeats a state".into()));
        }
        for k in 0..states.len() {
            let next = &states[(k + 1) % states.len()];
            if states.len() > 1 && states[k].hamming(next)? != 1 {
                return Err(Error::NotAHypercubeEdge {
                    from: states[k].to_bitstring(),
                    to: next.to_bitstring(),
                });
            }
        }
        Ok(StateCycle { states })
    }

    /// Rotates so that the smallest state word comes first.
    pub fn canonical(mut self) -> Self {
        let k = (0..self.states.len())
            .min_by_key(|&k| self.states[k])
            .unwrap_or(0);
        self.states.rotate_left(k);
        self
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Coordinate flipped when leaving position `k`.
    pub fn step_coordinate(&self, k: usize) -> usize {
        let next = &self.states[(k + 1) % self.states.len()];
        (self.states[k].word() ^ next.word()).trailing_zeros() as usize
    }

    /// Same cycle up to rotation.
    pub fn same_cycle(&self, other: &StateCycle) -> bool {
        self.clone().canonical() == other.clone().canonical()
    }
}

/// `true` iff `c` has length `2n` and the state `n` steps ahead of every
/// position is its antipode.
pub fn is_antipodal(c: &StateCycle) -> bool {
    let Some(first) = c.states.first() else {
        return false;
    };
    let n = first.dim();
    if n == 0 || c.len() != 2 * n {
        return false;
    }
    (0..c.len()).all(|k| c.states[(k + n) % c.len()] == c.states[k].antipode())
}

/// Cycles of the asynchronous graph on which every state has exactly one
/// degree of freedom, i.e. cycles of the synchronous dynamics moving one
/// coordinate at a time. Canonically rotated and sorted.
pub fn attractive_cycles(f: &BooleanNetwork) -> Vec<StateCycle> {
    const UNSEEN: u8 = 0;
    const ON_PATH: u8 = 1;
    const DONE: u8 = 2;
    let size = f.state_count();
    let deterministic = |x: u32| freedom_mask(f, x).count_ones() == 1;
    let mut mark = vec![UNSEEN; size];
    let mut out = Vec::new();
    let mut path: Vec<u32> = Vec::new();
    for start in 0..size as u32 {
        if mark[start as usize] != UNSEEN || !deterministic(start) {
            continue;
        }
        path.clear();
        let mut x = start;
        loop {
            match mark[x as usize] {
                ON_PATH => {
                    let pos = path.iter().position(|&p| p == x).expect("on path");
                    let states = path[pos..].iter().map(|&w| f.state(w)).collect();
                    out.push(StateCycle { states }.canonical());
                    break;
                }
                DONE => break,
                _ => {}
            }
            if !deterministic(x) {
                break;
            }
            mark[x as usize] = ON_PATH;
            path.push(x);
            x = f.image(x);
        }
        for &p in &path {
            mark[p as usize] = DONE;
        }
    }
    out.sort();
    out
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Attractor {
    pub states: Vec<State>,
    pub is_fixed_point: bool,
    pub is_cyclic: bool,
    pub is_attractive_cycle: bool,
    pub is_antipodal: bool,
}

impl Attractor {
    fn classify(f: &BooleanNetwork, mut words: Vec<u32>) -> Attractor {
        words.sort_unstable();
        let is_fixed_point = words.len() == 1;
        let is_attractive_cycle =
            !is_fixed_point && words.iter().all(|&x| freedom_mask(f, x).count_ones() == 1);
        let is_antipodal = is_attractive_cycle && {
            let mut seq = Vec::with_capacity(words.len());
            let mut x = words[0];
            for _ in 0..words.len() {
                seq.push(f.state(x));
                x = f.image(x);
            }
            is_antipodal(&StateCycle { states: seq })
        };
        Attractor {
            states: words.into_iter().map(|w| f.state(w)).collect(),
            is_fixed_point,
            is_cyclic: !is_fixed_point,
            is_attractive_cycle,
            is_antipodal,
        }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Members in cycle order starting from the smallest state; `None` unless
    /// this attractor is an attractive cycle.
    pub fn as_cycle(&self, f: &BooleanNetwork) -> Option<StateCycle> {
        if !self.is_attractive_cycle {
            return None;
        }
        let mut seq = Vec::with_capacity(self.states.len());
        let mut x = self.states[0];
        for _ in 0..self.states.len() {
            seq.push(x);
            x = f.eval(&x).ok()?;
        }
        Some(StateCycle { states: seq })
    }

    pub fn records(&self) -> Vec<StateRecord> {
        self.states.iter().map(StateRecord::from).collect()
    }
}

/// Terminal strongly connected components of the asynchronous graph,
/// ordered by smallest member.
///
/// Iterative Tarjan over all `2^n` states. Components complete in reverse
/// topological order, so when a component is popped every successor of its
/// members already carries a component id and terminality is a local check.
pub fn attractors(f: &BooleanNetwork) -> Vec<Attractor> {
    const UNVISITED: u32 = u32::MAX;
    const DONE: u32 = u32::MAX - 1;
    let size = f.state_count();
    let n = f.dim();
    // index[v]: DFS index while open, DONE once assigned to a component
    // low[v]: lowlink while open, component id once done
    let mut index = vec![UNVISITED; size];
    let mut low = vec![0u32; size];
    let mut stack: Vec<u32> = Vec::new();
    let mut frames: Vec<(u32, u8)> = Vec::new();
    let mut next_index = 0u32;
    let mut next_comp = 0u32;
    let mut out = Vec::new();

    for root in 0..size as u32 {
        if index[root as usize] != UNVISITED {
            continue;
        }
        frames.push((root, 0));
        index[root as usize] = next_index;
        low[root as usize] = next_index;
        next_index += 1;
        stack.push(root);

        while let Some(&mut (v, ref mut coord)) = frames.last_mut() {
            let free = freedom_mask(f, v);
            let mut descended = false;
            while (*coord as usize) < n {
                let i = *coord as usize;
                *coord += 1;
                if (free >> i) & 1 == 0 {
                    continue;
                }
                let w = v ^ (1 << i);
                let wi = index[w as usize];
                if wi == UNVISITED {
                    index[w as usize] = next_index;
                    low[w as usize] = next_index;
                    next_index += 1;
                    stack.push(w);
                    frames.push((w, 0));
                    descended = true;
                    break;
                } else if wi != DONE {
                    low[v as usize] = low[v as usize].min(wi);
                }
            }
            if descended {
                continue;
            }
            frames.pop();
            if let Some(&(parent, _)) = frames.last() {
                low[parent as usize] = low[parent as usize].min(low[v as usize]);
            }
            if low[v as usize] == index[v as usize] {
                let comp = next_comp;
                next_comp += 1;
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    index[w as usize] = DONE;
                    low[w as usize] = comp;
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                let terminal = members.iter().all(|&x| {
                    mask_indices(freedom_mask(f, x))
                        .into_iter()
                        .all(|i| low[(x ^ (1 << i)) as usize] == comp && index[(x ^ (1 << i)) as usize] == DONE)
                });
                if terminal {
                    out.push(Attractor::classify(f, members));
                }
            }
        }
    }
    out.sort_by_key(|a| a.states[0]);
    out
}

/// `d(f(x), f(y)) <= d(x, y)` for all `x, y`.
///
/// Checked on hypercube edges only: any two states are joined by a path of
/// `d(x, y)` unit steps, and the triangle inequality along the image of that
/// path bounds `d(f(x), f(y))` by the number of steps.
pub fn is_nonexpansive(f: &BooleanNetwork) -> bool {
    let n = f.dim();
    (0..f.state_count() as u32).all(|x| {
        (0..n).all(|i| (f.image(x) ^ f.image(x ^ (1 << i))).count_ones() <= 1)
    })
}

/// The subcube `base[free]`: states agreeing with `base` outside `free`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subcube {
    base: State,
    free: Vec<usize>,
}

impl Subcube {
    pub fn new(base: State, free: &[usize]) -> Result<Self> {
        let mut free = free.to_vec();
        free.sort_unstable();
        free.dedup();
        if let Some(&i) = free.iter().find(|&&i| i >= base.dim()) {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: base.dim(),
            });
        }
        Ok(Subcube { base, free })
    }

    pub fn base(&self) -> &State {
        &self.base
    }

    pub fn free(&self) -> &[usize] {
        &self.free
    }

    fn free_mask(&self) -> u32 {
        self.free.iter().fold(0, |m, &i| m | (1 << i))
    }

    pub fn contains(&self, y: &State) -> bool {
        y.dim() == self.base.dim() && (y.word() ^ self.base.word()) & !self.free_mask() == 0
    }

    /// Embeds a local word (bit `k` = coordinate `free[k]`) into the full cube.
    pub fn embed(&self, local: u32) -> State {
        let mut w = self.base.word() & !self.free_mask();
        for (k, &i) in self.free.iter().enumerate() {
            if (local >> k) & 1 == 1 {
                w |= 1 << i;
            }
        }
        State::from_word(w, self.base.dim())
    }

    pub fn project(&self, y: &State) -> u32 {
        self.free
            .iter()
            .enumerate()
            .fold(0, |m, (k, &i)| if y.bit(i) { m | (1 << k) } else { m })
    }
}

/// `f` restricted to `kappa`, as a network on the free coordinates (the
/// `k`-th free coordinate becomes coordinate `k`). A single point gives the
/// 0-dimensional network.
pub fn restrict_subcube(f: &BooleanNetwork, kappa: &Subcube) -> Result<BooleanNetwork> {
    f.check_state(&kappa.base)?;
    let m = kappa.free.len();
    let images = (0..1u32 << m)
        .map(|local| {
            let y = kappa.embed(local);
            let fy = State::from_word(f.image(y.word()), f.dim());
            kappa.project(&fy) & full_mask(m)
        })
        .collect();
    BooleanNetwork::from_images_unguarded(m, images)
}
