//! Named networks: the small worked examples, the 4-cycle seed and its
//! 12-dimensional expansion, the antipodal family and the trajectory network
//! built on the points `a^i, b^i, c^i, d^i`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::andnet::AndNet;
use crate::andnet_analysis::{subdivide_positive_edges, Digraph};
use crate::dynamics::StateCycle;
use crate::error::{Error, Result};
use crate::graph::{Sign, SignedCycle};
use crate::network::BooleanNetwork;
use crate::state::{full_mask, State};
use crate::transform::{expand_delocalize, find_quasi_delocalizing, ExpansionTrace, QuasiDelocalizing};

/// `f0 = !x1 & x2`, `f1 = !x2`, `f2 = !x0 & x1`.
pub fn fig1_andnet() -> AndNet {
    AndNet::new(vec![vec![2], vec![], vec![1]], vec![vec![1], vec![2], vec![0]]).expect("valid and-net")
}

pub fn fig1_network() -> BooleanNetwork {
    fig1_andnet().to_network()
}

/// Asynchronous transitions of [`fig1_network`], as drawn (coordinate 0 leftmost).
pub fn fig1_reference_transitions() -> Vec<(State, State)> {
    [
        ("100", "000"),
        ("000", "010"),
        ("001", "000"),
        ("111", "011"),
        ("111", "101"),
        ("111", "110"),
        ("100", "110"),
        ("110", "010"),
        ("010", "011"),
        ("011", "001"),
        ("001", "101"),
        ("101", "100"),
    ]
    .iter()
    .map(|(a, b)| (a.parse().expect("bitstring"), b.parse().expect("bitstring")))
    .collect()
}

/// `f0 = !x1`, `f1 = x0`, `f2 = x0 ^ x1`; reducing coordinate 2 creates an
/// attractive cycle.
pub fn reduction_example() -> BooleanNetwork {
    BooleanNetwork::from_fn(3, |x| {
        let b = |i: u32| (x >> i) & 1;
        (b(1) ^ 1) | b(0) << 1 | (b(0) ^ b(1)) << 2
    })
    .expect("dimension 3")
}

/// `f_i = x_{i-1}` (indices mod `n`).
pub fn single_positive_cycle(n: usize) -> Result<AndNet> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    AndNet::new((0..n).map(|i| vec![(i + n - 1) % n]).collect(), vec![vec![]; n])
}

/// `f_0 = !x_{n-1}` and `f_i = x_{i-1}` otherwise.
pub fn single_negative_cycle(n: usize) -> Result<AndNet> {
    if n == 0 {
        return Err(Error::InvalidDimension(n));
    }
    let mut pos: Vec<Vec<usize>> = (0..n).map(|i| vec![(i + n - 1) % n]).collect();
    let mut neg = vec![vec![]; n];
    pos[0].clear();
    neg[0].push(n - 1);
    AndNet::new(pos, neg)
}

/// The 4-dimensional negative and-net with `f_i = !x_{i-1} & !x_{i+2}`.
pub fn theorem_a_seed() -> AndNet {
    let negative = (0..4).map(|i| vec![(i + 3) % 4, (i + 2) % 4]).collect();
    AndNet::new(vec![vec![]; 4], negative).expect("valid and-net")
}

/// The attractive cycle of [`theorem_a_seed`], starting at `e^3`.
pub fn theorem_a_seed_attractive_cycle() -> StateCycle {
    let steps: [&[usize]; 8] = [&[3], &[2, 3], &[2], &[1, 2], &[1], &[0, 1], &[0], &[0, 3]];
    StateCycle::new(
        steps
            .iter()
            .map(|s| State::from_indices(4, s).expect("in range"))
            .collect(),
    )
    .expect("valid cycle")
}

pub fn negative_cycles(a: &AndNet) -> Result<Vec<SignedCycle>> {
    Ok(a.to_signed_digraph()
        .cycles()?
        .into_iter()
        .filter(|c| c.sign() == Sign::Negative)
        .collect())
}

#[derive(Clone, Debug)]
pub struct TheoremAConstruction {
    pub seed: AndNet,
    pub seed_negative_cycles: Vec<SignedCycle>,
    pub chi: QuasiDelocalizing,
    pub expanded: AndNet,
    pub trace: ExpansionTrace,
}

/// Expands [`theorem_a_seed`] along its quasi-delocalizing function.
pub fn theorem_a_construction() -> Result<TheoremAConstruction> {
    let seed = theorem_a_seed();
    let cycles = negative_cycles(&seed)?;
    let chi = find_quasi_delocalizing(&seed, &cycles)?
        .ok_or_else(|| Error::Construction("seed has no quasi-delocalizing function".into()))?;
    let (expanded, trace) = expand_delocalize(&seed, &chi)?;
    Ok(TheoremAConstruction {
        seed,
        seed_negative_cycles: cycles,
        chi,
        expanded,
        trace,
    })
}

/// 12-dimensional and-net with no fixed point and no local negative cycle.
pub fn theorem_a_counterexample() -> Result<AndNet> {
    Ok(theorem_a_construction()?.expanded)
}

/// The signed edges of the 12-dimensional counterexample as drawn.
pub fn theorem_a_reference_edges() -> Vec<(usize, usize, Sign)> {
    let pos = [
        (0, 5),
        (0, 4),
        (4, 5),
        (1, 7),
        (1, 6),
        (6, 7),
        (2, 9),
        (2, 8),
        (8, 9),
        (3, 11),
        (3, 10),
        (10, 11),
    ];
    let neg = [
        (5, 1),
        (7, 2),
        (9, 3),
        (11, 0),
        (4, 2),
        (6, 3),
        (8, 0),
        (10, 1),
        (0, 2),
        (1, 3),
        (2, 0),
        (3, 1),
    ];
    pos.iter()
        .map(|&(a, b)| (a, b, Sign::Positive))
        .chain(neg.iter().map(|&(a, b)| (a, b, Sign::Negative)))
        .collect()
}

/// Kernel-side form of the counterexample: the transpose of its graph with
/// every positive edge subdivided.
pub fn theorem_a_prime_digraph() -> Result<Digraph> {
    let g = theorem_a_counterexample()?;
    let sub = subdivide_positive_edges(&g)?;
    Ok(Digraph::from_signed(&sub.to_signed_digraph()).transpose())
}

fn check_trajectory_dim(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::Construction(format!("dimension {n} is below {min}")));
    }
    if n > crate::state::HARD_MAX_DIM {
        return Err(Error::DimensionGuard {
            n,
            limit: crate::state::HARD_MAX_DIM,
        });
    }
    Ok(())
}

/// `a^i = e^{0..i-1}` for `i < n`, `a^{n+i}` its antipode; `i` is taken mod `2n`.
pub fn trajectory_point(n: usize, i: i64) -> State {
    let i = i.rem_euclid(2 * n as i64) as usize;
    if i < n {
        State::from_word((1u32 << i) - 1, n)
    } else {
        State::from_word(full_mask(n) ^ ((1u32 << (i - n)) - 1), n)
    }
}

/// The `2n` points `a^0, ..., a^{2n-1}`, an antipodal cycle of the cube.
pub fn antipodal_cycle(n: usize) -> Result<StateCycle> {
    check_trajectory_dim(n, 2)?;
    StateCycle::new((0..2 * n as i64).map(|i| trajectory_point(n, i)).collect())
}

/// `a^i -> a^{i+1}` on the antipodal cycle, every other state fixed.
pub fn pure_antipodal_network(n: usize) -> Result<BooleanNetwork> {
    check_trajectory_dim(n, 2)?;
    let mut images: Vec<u32> = (0..1u32 << n).collect();
    for i in 0..2 * n as i64 {
        images[trajectory_point(n, i).word() as usize] = trajectory_point(n, i + 1).word();
    }
    BooleanNetwork::from_images_unguarded(n, images)
}

/// The antipodal cycle with every neighbour `x + e^j` (`j` not the step
/// coordinate at `x`) moved back towards `x`.
pub fn fully_padded_antipodal_network(n: usize) -> Result<BooleanNetwork> {
    let f = pure_antipodal_network(n)?;
    let on_cycle: BTreeSet<u32> = (0..2 * n as i64).map(|i| trajectory_point(n, i).word()).collect();
    let mut images = f.images().to_vec();
    let mut pull = vec![0u32; 1 << n];
    for &x in &on_cycle {
        let step = f.image(x) ^ x;
        for j in 0..n {
            let bit = 1u32 << j;
            if bit != step && !on_cycle.contains(&(x ^ bit)) {
                pull[(x ^ bit) as usize] |= bit;
            }
        }
    }
    for (y, &p) in pull.iter().enumerate() {
        if p != 0 {
            images[y] = y as u32 ^ p;
        }
    }
    BooleanNetwork::from_images_unguarded(n, images)
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize)]
pub enum Letter {
    A,
    B,
    C,
    D,
}

impl Letter {
    pub const ALL: [Letter; 4] = [Letter::A, Letter::B, Letter::C, Letter::D];

    pub fn symbol(self) -> char {
        match self {
            Letter::A => 'a',
            Letter::B => 'b',
            Letter::C => 'c',
            Letter::D => 'd',
        }
    }
}

/// A named point `letter^index`, index in `0..2n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash, Serialize)]
pub struct PointLabel {
    pub letter: Letter,
    pub index: usize,
}

impl std::fmt::Display for PointLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}^{}", self.letter.symbol(), self.index)
    }
}

/// Points of the trajectory network in dimension `n`:
/// `b^i = a^i + e^{i+1}`, `c^i = a^i + e^{i+2}`, `d^i = a^i + e^{i+2} + e^{i+3}`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TrajectoryAtlas {
    n: usize,
}

impl TrajectoryAtlas {
    pub fn new(n: usize) -> Result<Self> {
        check_trajectory_dim(n, 4)?;
        Ok(TrajectoryAtlas { n })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    fn e(&self, i: i64) -> u32 {
        1 << i.rem_euclid(self.n as i64)
    }

    pub fn a(&self, i: i64) -> State {
        trajectory_point(self.n, i)
    }

    pub fn b(&self, i: i64) -> State {
        State::from_word(self.a(i).word() ^ self.e(i + 1), self.n)
    }

    pub fn c(&self, i: i64) -> State {
        State::from_word(self.a(i).word() ^ self.e(i + 2), self.n)
    }

    pub fn d(&self, i: i64) -> State {
        State::from_word(self.a(i).word() ^ self.e(i + 2) ^ self.e(i + 3), self.n)
    }

    pub fn point(&self, letter: Letter, i: i64) -> State {
        match letter {
            Letter::A => self.a(i),
            Letter::B => self.b(i),
            Letter::C => self.c(i),
            Letter::D => self.d(i),
        }
    }

    pub fn label(&self, letter: Letter, i: i64) -> PointLabel {
        PointLabel {
            letter,
            index: i.rem_euclid(2 * self.n as i64) as usize,
        }
    }

    /// All `8n` labelled points.
    pub fn points(&self) -> Vec<(PointLabel, State)> {
        Letter::ALL
            .iter()
            .flat_map(|&l| (0..2 * self.n as i64).map(move |i| (l, i)))
            .map(|(l, i)| (self.label(l, i), self.point(l, i)))
            .collect()
    }

    /// Whether the `8n` points are pairwise distinct.
    pub fn all_distinct(&self) -> bool {
        let pts = self.points();
        pts.iter().map(|(_, s)| s.word()).collect::<BTreeSet<_>>().len() == pts.len()
    }

    /// Labels of the points within distance 1 of `x`.
    pub fn neighbourhood(&self, x: &State) -> BTreeSet<PointLabel> {
        self.points()
            .into_iter()
            .filter(|(_, s)| (s.word() ^ x.word()).count_ones() <= 1)
            .map(|(l, _)| l)
            .collect()
    }
}

/// `a^i -> a^{i+1}`, `b^i, c^i -> a^{i+3}`, `d^i -> a^{i+4} + e^{i+1}`,
/// every other state fixed. Fails if two rules claim the same state.
pub fn theorem_b_network(n: usize) -> Result<BooleanNetwork> {
    let atlas = TrajectoryAtlas::new(n)?;
    let mut images: Vec<u32> = (0..1u32 << n).collect();
    let mut claimed: Vec<Option<PointLabel>> = vec![None; 1 << n];
    for l in Letter::ALL {
        for i in 0..2 * n as i64 {
            let x = atlas.point(l, i).word() as usize;
            let label = atlas.label(l, i);
            if let Some(prev) = claimed[x] {
                return Err(Error::Construction(format!(
                    "points {prev} and {label} coincide in dimension {n}"
                )));
            }
            claimed[x] = Some(label);
            images[x] = match l {
                Letter::A => atlas.a(i + 1).word(),
                Letter::B | Letter::C => atlas.a(i + 3).word(),
                Letter::D => atlas.a(i + 4).word() ^ atlas.e(i + 1),
            };
        }
    }
    BooleanNetwork::from_images_unguarded(n, images)
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct NeighbourhoodCheck {
    pub point: PointLabel,
    pub expected: Vec<PointLabel>,
    pub computed: Vec<PointLabel>,
}

impl NeighbourhoodCheck {
    pub fn passed(&self) -> bool {
        self.expected == self.computed
    }
}

/// Compares the named points within distance 1 of `a^0, b^0, c^0, d^0`
/// against the expected lists.
pub fn verify_neighbor_lists(n: usize) -> Result<Vec<NeighbourhoodCheck>> {
    if n < 7 {
        return Err(Error::Construction(format!("neighbourhood lists need n >= 7, got {n}")));
    }
    let atlas = TrajectoryAtlas::new(n)?;
    let l = |letter, i| atlas.label(letter, i);
    use Letter::*;
    let mut d_list = vec![l(C, 0), l(D, 0)];
    if n == 7 {
        d_list.extend([l(D, -5), l(D, 5)]);
    }
    let expected = [
        (A, vec![l(A, -1), l(A, 0), l(A, 1), l(B, -2), l(B, 0), l(C, 0)]),
        (B, vec![l(A, 0), l(A, 2), l(B, 0), l(C, -1)]),
        (C, vec![l(A, 0), l(B, 1), l(C, 0), l(D, 0)]),
        (D, d_list),
    ];
    Ok(expected
        .into_iter()
        .map(|(letter, exp)| {
            let mut expected = exp;
            expected.sort();
            expected.dedup();
            NeighbourhoodCheck {
                point: l(letter, 0),
                expected,
                computed: atlas.neighbourhood(&atlas.point(letter, 0)).into_iter().collect(),
            }
        })
        .collect())
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum PaddingPattern {
    H,
    K,
    Both,
    Neither,
}

/// Which of the two padding subgraphs around `a^i` (cube coordinates
/// `i, i+1, i+2`) lies in the asynchronous graph of `f`. Requires
/// `f(a^j) = a^{j+1}` for `j <= i + 2`.
pub fn padding_pattern_check(f: &BooleanNetwork, i: usize) -> Result<PaddingPattern> {
    let n = f.dim();
    if i + 3 > n {
        return Err(Error::PrefixMissing(format!("position {i} needs n >= {}, got {n}", i + 3)));
    }
    let a = |j: usize| -> u32 { ((1u64 << j) - 1) as u32 };
    for j in 0..=i + 2 {
        if f.image(a(j)) != a(j + 1) {
            return Err(Error::PrefixMissing(format!(
                "f(a^{j}) = {} instead of {}",
                f.state(f.image(a(j))).to_bitstring(),
                f.state(a(j + 1)).to_bitstring()
            )));
        }
    }
    let base = a(i);
    let (e0, e1, e2) = (1u32 << i, 1u32 << (i + 1), 1u32 << (i + 2));
    let w = base | e1;
    let u = base | e2;
    let v = base | e1 | e2;
    let x = base | e0 | e2;
    let a3 = a(i + 3);
    let edge = |from: u32, to: u32| {
        let diff = from ^ to;
        diff.count_ones() == 1 && (f.image(from) ^ from) & diff != 0
    };
    let common = [(base, a(i + 1)), (a(i + 1), a(i + 2)), (a(i + 2), a3), (w, a(i + 2)), (x, a3)];
    if !common.iter().all(|&(p, q)| edge(p, q)) {
        return Ok(PaddingPattern::Neither);
    }
    let h = edge(v, a3);
    let k = edge(w, v) && edge(u, v) && edge(u, x);
    Ok(match (h, k) {
        (true, true) => PaddingPattern::Both,
        (true, false) => PaddingPattern::H,
        (false, true) => PaddingPattern::K,
        (false, false) => PaddingPattern::Neither,
    })
}
