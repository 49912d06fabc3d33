//! Isometries of the hypercube, `U(e^I) = U_0 + e^{sigma(I)}`, and
//! equivariance of networks under them.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedCycle};
use crate::interaction::{local_graph, local_graph_cycles};
use crate::network::BooleanNetwork;
use crate::state::State;

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Isometry {
    perm: Vec<usize>,
    offset: State,
}

impl Isometry {
    pub fn new(perm: Vec<usize>, offset: State) -> Result<Self> {
        let n = perm.len();
        if offset.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: offset.dim(),
            });
        }
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidIsometry(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        Ok(Isometry { perm, offset })
    }

    pub fn identity(n: usize) -> Self {
        Isometry {
            perm: (0..n).collect(),
            offset: State::zero(n),
        }
    }

    /// Cyclic shift of coordinates: coordinate `i` moves to `i + 1`.
    pub fn shift(n: usize) -> Self {
        Isometry {
            perm: (0..n).map(|i| (i + 1) % n).collect(),
            offset: State::zero(n),
        }
    }

    /// The shift followed by flipping coordinate 0; it has no fixed point.
    pub fn twist(n: usize) -> Self {
        Isometry {
            perm: (0..n).map(|i| (i + 1) % n).collect(),
            offset: State::from_word(1, n),
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn offset(&self) -> &State {
        &self.offset
    }

    pub(crate) fn permute_word(&self, w: u32) -> u32 {
        self.perm
            .iter()
            .enumerate()
            .fold(0, |m, (i, &p)| if (w >> i) & 1 == 1 { m | 1 << p } else { m })
    }

    pub(crate) fn apply_word(&self, w: u32) -> u32 {
        self.offset.word() ^ self.permute_word(w)
    }

    pub fn apply(&self, x: &State) -> Result<State> {
        if x.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: x.dim(),
            });
        }
        Ok(State::from_word(self.apply_word(x.word()), self.dim()))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Isometry) -> Result<Isometry> {
        if other.dim() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: other.dim(),
            });
        }
        let n = self.dim();
        Ok(Isometry {
            perm: (0..n).map(|i| self.perm[other.perm[i]]).collect(),
            offset: State::from_word(self.apply_word(other.offset.word()), n),
        })
    }

    pub fn inverse(&self) -> Isometry {
        let n = self.dim();
        let mut inv = vec![0; n];
        for (i, &p) in self.perm.iter().enumerate() {
            inv[p] = i;
        }
        let tmp = Isometry {
            perm: inv,
            offset: State::zero(n),
        };
        let offset = State::from_word(tmp.permute_word(self.offset.word()), n);
        Isometry { perm: tmp.perm, offset }
    }
}

pub fn shift_s(n: usize) -> Isometry {
    Isometry::shift(n)
}

pub fn twist_t(n: usize) -> Isometry {
    Isometry::twist(n)
}

pub fn isometry_apply(u: &Isometry, x: &State) -> Result<State> {
    u.apply(x)
}

pub fn isometry_compose(u: &Isometry, v: &Isometry) -> Result<Isometry> {
    u.compose(v)
}

/// Largest dimension accepted by [`verify_isometry_characterization`].
pub const ISOMETRY_SEARCH_LIMIT: usize = 4;

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct IsometryCensus {
    pub n: usize,
    /// Distance-preserving bijections found by exhaustive search.
    pub distance_preserving: usize,
    /// `n! * 2^n`.
    pub expected: usize,
    /// Every one of them is `x -> U_0 + e^{sigma(I)}` for some `sigma`, `U_0`.
    pub all_of_permutation_form: bool,
}

impl IsometryCensus {
    pub fn passed(&self) -> bool {
        self.all_of_permutation_form && self.distance_preserving == self.expected
    }
}

/// Enumerates every distance-preserving bijection of the `n`-cube by
/// backtracking (a partial map is extended only while it preserves all
/// pairwise distances) and checks each against the permutation form.
pub fn verify_isometry_characterization(n: usize) -> Result<IsometryCensus> {
    if n == 0 || n > ISOMETRY_SEARCH_LIMIT {
        return Err(Error::DimensionGuard {
            n,
            limit: ISOMETRY_SEARCH_LIMIT,
        });
    }
    let size = 1usize << n;
    let mut image = vec![0u32; size];
    let mut used = vec![false; size];
    let mut count = 0;
    let mut all_form = true;
    extend_isometry(0, &mut image, &mut used, &mut |img| {
        count += 1;
        all_form &= matches_permutation_form(n, img);
    });
    let expected = (1..=n).product::<usize>() << n;
    Ok(IsometryCensus {
        n,
        distance_preserving: count,
        expected,
        all_of_permutation_form: all_form,
    })
}

fn extend_isometry(x: usize, image: &mut [u32], used: &mut [bool], visit: &mut dyn FnMut(&[u32])) {
    if x == image.len() {
        visit(image);
        return;
    }
    for y in 0..image.len() {
        if used[y] {
            continue;
        }
        let ok = (0..x).all(|z| {
            ((x ^ z) as u32).count_ones() == (image[z] ^ y as u32).count_ones()
        });
        if !ok {
            continue;
        }
        used[y] = true;
        image[x] = y as u32;
        extend_isometry(x + 1, image, used, visit);
        used[y] = false;
    }
}

fn matches_permutation_form(n: usize, image: &[u32]) -> bool {
    let u0 = image[0];
    let mut perm = Vec::with_capacity(n);
    for i in 0..n {
        let moved = image[1 << i] ^ u0;
        if moved.count_ones() != 1 {
            return false;
        }
        perm.push(moved.trailing_zeros() as usize);
    }
    let Ok(u) = Isometry::new(perm, State::from_word(u0, n)) else {
        return false;
    };
    (0..image.len()).all(|x| u.apply_word(x as u32) == image[x])
}

/// `f ∘ U = U ∘ f`.
pub fn is_equivariant(f: &BooleanNetwork, u: &Isometry) -> Result<bool> {
    if u.dim() != f.dim() {
        return Err(Error::DimensionMismatch {
            expected: f.dim(),
            found: u.dim(),
        });
    }
    Ok((0..f.state_count() as u32).all(|x| f.image(u.apply_word(x)) == u.apply_word(f.image(x))))
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct EquivarianceCheck {
    pub x: State,
    pub image: State,
    /// `sigma` maps the arcs at `x` onto the arcs at `U(x)`.
    pub arcs_match: bool,
    /// Every cycle at `x` and its image under `sigma` have the same sign.
    pub cycle_signs_match: bool,
    pub cycles_checked: usize,
}

impl EquivarianceCheck {
    pub fn passed(&self) -> bool {
        self.arcs_match && self.cycle_signs_match
    }
}

/// Checks that `sigma` is an isomorphism from the local graph at `x` to the
/// local graph at `U(x)` (arcs, ignoring edge signs) under which every
/// cycle keeps its sign.
pub fn equivariance_isomorphism_check(f: &BooleanNetwork, u: &Isometry, x: &State) -> Result<EquivarianceCheck> {
    let y = u.apply(x)?;
    let gx = local_graph(f, x)?;
    let gy = local_graph(f, &y)?;
    let sigma = u.perm();
    let mapped: std::collections::BTreeSet<(usize, usize)> =
        gx.edges().map(|e| (sigma[e.from], sigma[e.to])).collect();
    let target: std::collections::BTreeSet<(usize, usize)> = gy.edges().map(|e| (e.from, e.to)).collect();
    let arcs_match = mapped == target;
    let cycles = local_graph_cycles(f, x)?;
    let mut cycle_signs_match = true;
    for c in &cycles {
        let verts: Vec<usize> = c.vertices().iter().map(|&v| sigma[v]).collect();
        let signs: Option<Vec<Sign>> = (0..verts.len())
            .map(|k| {
                let s = gy.signs(verts[k], verts[(k + 1) % verts.len()]);
                s.first().copied()
            })
            .collect();
        match signs {
            Some(signs) => {
                let image = SignedCycle::new(verts, signs)?;
                cycle_signs_match &= image.sign() == c.sign();
            }
            None => cycle_signs_match = false,
        }
    }
    Ok(EquivarianceCheck {
        x: *x,
        image: y,
        arcs_match,
        cycle_signs_match,
        cycles_checked: cycles.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_network;
    use proptest::prelude::*;

    /// Oracle: count distance-preserving permutations of all `2^n` points
    /// by plain enumeration of every bijection (Heap's algorithm).
    fn brute_isometry_count(n: usize) -> usize {
        let size = 1usize << n;
        let mut p: Vec<u32> = (0..size as u32).collect();
        let preserves = |p: &[u32]| {
            (0..size).all(|x| (0..size).all(|y| ((x ^ y) as u32).count_ones() == (p[x] ^ p[y]).count_ones()))
        };
        let mut count = preserves(&p) as usize;
        let mut c = vec![0usize; size];
        let mut i = 0;
        while i < size {
            if c[i] < i {
                if i % 2 == 0 {
                    p.swap(0, i);
                } else {
                    p.swap(c[i], i);
                }
                count += preserves(&p) as usize;
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        count
    }

    #[test]
    fn census_matches_bijection_oracle() {
        assert_eq!(brute_isometry_count(1), 2);
        assert_eq!(brute_isometry_count(2), 8);
        assert_eq!(brute_isometry_count(3), 48);
        for (n, count) in [(1, 2), (2, 8), (3, 48)] {
            let c = verify_isometry_characterization(n).unwrap();
            assert_eq!(c.distance_preserving, count);
            assert!(c.passed());
        }
        assert!(verify_isometry_characterization(5).is_err());
    }

    #[test]
    fn twist_moves_the_trajectory_forward() {
        let n = 7;
        let t = Isometry::twist(n);
        let a = |i: usize| -> State {
            if i < n {
                State::from_word((1u32 << i) - 1, n)
            } else {
                State::from_word((1u32 << (i - n)) - 1, n).antipode()
            }
        };
        for i in 0..2 * n {
            assert_eq!(t.apply(&a(i)).unwrap(), a((i + 1) % (2 * n)));
        }
        for x in 0..1u32 << n {
            assert_ne!(t.apply_word(x), x);
        }
    }

    #[test]
    fn identity_and_inverse() {
        let id = Isometry::identity(4);
        let u = Isometry::new(vec![2, 0, 3, 1], "1010".parse().unwrap()).unwrap();
        for x in 0..16u32 {
            let s = State::new(x, 4).unwrap();
            assert_eq!(id.apply(&s).unwrap(), s);
            assert_eq!(u.inverse().apply(&u.apply(&s).unwrap()).unwrap(), s);
        }
        assert!(Isometry::new(vec![0, 0], State::zero(2)).is_err());
    }

    #[test]
    fn equivariance_examples() {
        let id = BooleanNetwork::identity(3).unwrap();
        let t = Isometry::twist(3);
        assert!(is_equivariant(&id, &t).unwrap());
        let fig1 = parse_network("f0 = !x1 & x2\nf1 = !x2\nf2 = !x0 & x1").unwrap();
        assert!(!is_equivariant(&fig1, &t).unwrap());
        let neg = BooleanNetwork::negation(3).unwrap();
        for x in neg.states() {
            assert!(equivariance_isomorphism_check(&neg, &t, &x).unwrap().passed());
        }
    }

    proptest! {
        #[test]
        fn composition_agrees_with_application(
            p in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(),
            q in Just((0..4usize).collect::<Vec<_>>()).prop_shuffle(),
            a in 0u32..16, b in 0u32..16, x in 0u32..16,
        ) {
            let u = Isometry::new(p, State::new(a, 4).unwrap()).unwrap();
            let v = Isometry::new(q, State::new(b, 4).unwrap()).unwrap();
            let s = State::new(x, 4).unwrap();
            let uv = u.compose(&v).unwrap();
            prop_assert_eq!(uv.apply(&s).unwrap(), u.apply(&v.apply(&s).unwrap()).unwrap());
        }

        #[test]
        fn isometries_preserve_distance(
            p in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle(),
            a in 0u32..32, x in 0u32..32, y in 0u32..32,
        ) {
            let u = Isometry::new(p, State::new(a, 5).unwrap()).unwrap();
            let (sx, sy) = (State::new(x, 5).unwrap(), State::new(y, 5).unwrap());
            let d = sx.hamming(&sy).unwrap();
            prop_assert_eq!(u.apply(&sx).unwrap().hamming(&u.apply(&sy).unwrap()).unwrap(), d);
        }
    }
}
