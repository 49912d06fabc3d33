//! And-nets: every coordinate is a product of literals.
//!
//! `f_i(x) = prod_{j in P_i} x_j * prod_{j in N_i} (x_j + 1)`, the empty
//! product being 1. The `.anet` format lists one coordinate per line:
//!
//! ```text
//! 0: +2 -1
//! 1: -2
//! 2: +1 -0
//! ```

use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Sign, SignedDigraph};
use crate::network::BooleanNetwork;
use crate::state::{full_mask, mask_indices, HARD_MAX_DIM};

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct AndNet {
    n: usize,
    positive: Vec<u32>,
    negative: Vec<u32>,
}

impl AndNet {
    /// `positive[i]` and `negative[i]` are the input lists `P_i`, `N_i`.
    pub fn new(positive: Vec<Vec<usize>>, negative: Vec<Vec<usize>>) -> Result<Self> {
        let n = positive.len();
        if negative.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: negative.len(),
            });
        }
        let to_mask = |list: &[usize]| -> Result<u32> {
            let mut m = 0u32;
            for &j in list {
                if j >= n {
                    return Err(Error::IndexOutOfRange { index: j, n });
                }
                m |= 1 << j;
            }
            Ok(m)
        };
        let p = positive.iter().map(|l| to_mask(l)).collect::<Result<Vec<_>>>()?;
        let q = negative.iter().map(|l| to_mask(l)).collect::<Result<Vec<_>>>()?;
        Self::from_masks(p, q)
    }

    pub fn from_masks(positive: Vec<u32>, negative: Vec<u32>) -> Result<Self> {
        let n = positive.len();
        if n == 0 || n > HARD_MAX_DIM {
            return Err(Error::InvalidDimension(n));
        }
        if negative.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: negative.len(),
            });
        }
        for i in 0..n {
            if (positive[i] | negative[i]) & !full_mask(n) != 0 {
                return Err(Error::StrayBits {
                    word: (positive[i] | negative[i]) as u64,
                    n,
                });
            }
            let both = positive[i] & negative[i];
            if both != 0 {
                return Err(Error::OverlappingInputs {
                    coordinate: i,
                    variable: both.trailing_zeros() as usize,
                });
            }
        }
        Ok(AndNet { n, positive, negative })
    }

    /// All inputs empty: the constant all-ones network.
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_masks(vec![0; n], vec![0; n])
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn positive_mask(&self, i: usize) -> u32 {
        self.positive[i]
    }

    pub fn negative_mask(&self, i: usize) -> u32 {
        self.negative[i]
    }

    pub fn positive_inputs(&self, i: usize) -> Vec<usize> {
        mask_indices(self.positive[i])
    }

    pub fn negative_inputs(&self, i: usize) -> Vec<usize> {
        mask_indices(self.negative[i])
    }

    /// All `P_i` empty.
    pub fn is_negative(&self) -> bool {
        self.positive.iter().all(|&p| p == 0)
    }

    #[inline]
    pub fn eval_coordinate(&self, i: usize, x: u32) -> bool {
        x & self.positive[i] == self.positive[i] && x & self.negative[i] == 0
    }

    pub fn to_network(&self) -> BooleanNetwork {
        let n = self.n;
        BooleanNetwork::from_fn(n, |x| {
            (0..n).fold(0u32, |w, i| {
                if self.eval_coordinate(i, x) {
                    w | (1 << i)
                } else {
                    w
                }
            })
        })
        .expect("dimension validated at construction")
    }

    /// Recognises an and-net from its truth tables.
    pub fn from_network(f: &BooleanNetwork) -> Result<Self> {
        let n = f.dim();
        let mask = full_mask(n);
        let mut positive = vec![0u32; n];
        let mut negative = vec![0u32; n];
        for i in 0..n {
            let mut always_one = mask;
            let mut always_zero = mask;
            let mut ones = 0usize;
            for x in 0..1u32 << n {
                if f.coordinate(i, x) {
                    always_one &= x;
                    always_zero &= !x;
                    ones += 1;
                }
            }
            if ones == 0 {
                return Err(Error::NotAnAndNet(i));
            }
            let fixed = (always_one | always_zero).count_ones() as usize;
            // the ones form the subcube cut out by the fixed literals
            if ones != 1usize << (n - fixed) {
                return Err(Error::NotAnAndNet(i));
            }
            positive[i] = always_one;
            negative[i] = always_zero;
        }
        Self::from_masks(positive, negative)
    }

    /// The unique and-net whose global interaction graph is `g`.
    pub fn from_signed_digraph(g: &SignedDigraph) -> Result<Self> {
        if let Some((from, to)) = g.parallel_pair() {
            return Err(Error::NotSimple { from, to });
        }
        let n = g.vertex_count();
        let mut positive = vec![0u32; n];
        let mut negative = vec![0u32; n];
        for e in g.edges() {
            match e.sign {
                Sign::Positive => positive[e.to] |= 1 << e.from,
                Sign::Negative => negative[e.to] |= 1 << e.from,
            }
        }
        Self::from_masks(positive, negative)
    }

    /// Edge `(j, i)` for every input `j` of `f_i`, signed by the literal.
    pub fn to_signed_digraph(&self) -> SignedDigraph {
        let mut g = SignedDigraph::new(self.n);
        for i in 0..self.n {
            for j in mask_indices(self.positive[i]) {
                g.add_edge(j, i, Sign::Positive).expect("in range");
            }
            for j in mask_indices(self.negative[i]) {
                g.add_edge(j, i, Sign::Negative).expect("in range");
            }
        }
        g
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            write!(out, "{i}:").unwrap();
            for j in 0..self.n {
                if self.positive[i] >> j & 1 == 1 {
                    write!(out, " +{j}").unwrap();
                } else if self.negative[i] >> j & 1 == 1 {
                    write!(out, " -{j}").unwrap();
                }
            }
            out.push('\n');
        }
        out
    }

    /// Parses the `.anet` format. Blank lines and `#` comments are skipped;
    /// every coordinate `0..n` must appear exactly once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<Option<(Vec<usize>, Vec<usize>)>> = Vec::new();
        let bad = |line: usize, msg: &str| Error::Format(format!("line {line}: {msg}"));
        let mut max_ref = 0usize;
        for (k, raw) in text.lines().enumerate() {
            let line = k + 1;
            let t = raw.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let (head, rest) = t.split_once(':').ok_or_else(|| bad(line, "expected '<i>:'"))?;
            let i: usize = head.trim().parse().map_err(|_| bad(line, "invalid coordinate index"))?;
            let mut p = Vec::new();
            let mut q = Vec::new();
            for tok in rest.split_whitespace() {
                let (sign, num) = tok.split_at(1);
                let j: usize = num.parse().map_err(|_| bad(line, &format!("invalid input {tok:?}")))?;
                max_ref = max_ref.max(j + 1);
                match sign {
                    "+" => p.push(j),
                    "-" => q.push(j),
                    _ => return Err(bad(line, &format!("invalid input {tok:?}"))),
                }
            }
            if rows.len() <= i {
                rows.resize(i + 1, None);
            }
            if rows[i].is_some() {
                return Err(bad(line, &format!("coordinate {i} defined twice")));
            }
            rows[i] = Some((p, q));
        }
        if max_ref > rows.len() {
            return Err(Error::IndexOutOfRange {
                index: max_ref - 1,
                n: rows.len(),
            });
        }
        let mut positive = Vec::with_capacity(rows.len());
        let mut negative = Vec::with_capacity(rows.len());
        for (i, r) in rows.into_iter().enumerate() {
            let (p, q) = r.ok_or_else(|| Error::Format(format!("coordinate {i} is missing")))?;
            positive.push(p);
            negative.push(q);
        }
        Self::new(positive, negative)
    }
}

pub fn andnet_to_network(a: &AndNet) -> BooleanNetwork {
    a.to_network()
}

pub fn network_to_andnet(f: &BooleanNetwork) -> Result<AndNet> {
    AndNet::from_network(f)
}

pub fn andnet_from_signed_digraph(g: &SignedDigraph) -> Result<AndNet> {
    AndNet::from_signed_digraph(g)
}

/// Random and-net: every ordered pair `(j, i)` becomes an input of `f_i` with
/// probability `density`, positive or negative with equal odds.
pub fn random_andnet(n: usize, seed: u64, density: f64) -> Result<AndNet> {
    random_andnet_with(n, seed, density, 0.5)
}

/// Like [`random_andnet`] with an explicit probability that an input is positive.
pub fn random_andnet_with(n: usize, seed: u64, density: f64, positive_share: f64) -> Result<AndNet> {
    if n == 0 || n > HARD_MAX_DIM {
        return Err(Error::InvalidDimension(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let density = density.clamp(0.0, 1.0);
    let positive_share = positive_share.clamp(0.0, 1.0);
    let mut positive = vec![0u32; n];
    let mut negative = vec![0u32; n];
    for i in 0..n {
        for j in 0..n {
            if rng.gen_bool(density) {
                if rng.gen_bool(positive_share) {
                    positive[i] |= 1 << j;
                } else {
                    negative[i] |= 1 << j;
                }
            }
        }
    }
    AndNet::from_masks(positive, negative)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_network;

    fn fig1() -> AndNet {
        AndNet::new(vec![vec![2], vec![], vec![1]], vec![vec![1], vec![2], vec![0]]).unwrap()
    }

    #[test]
    fn empty_products_are_one() {
        let f = AndNet::empty(3).unwrap().to_network();
        assert!(f.images().iter().all(|&w| w == 0b111));
    }

    #[test]
    fn fig1_andnet_matches_parsed_expressions() {
        let parsed = parse_network("f0 = !x1 & x2\nf1 = !x2\nf2 = !x0 & x1").unwrap();
        assert_eq!(fig1().to_network(), parsed);
    }

    #[test]
    fn recognition_round_trip() {
        let a = fig1();
        assert_eq!(AndNet::from_network(&a.to_network()).unwrap(), a);
        for seed in 0..50 {
            let a = random_andnet(4, seed, 0.4).unwrap();
            assert_eq!(network_to_andnet(&andnet_to_network(&a)).unwrap(), a);
        }
    }

    #[test]
    fn xor_is_not_an_and_net() {
        let f = parse_network("f0 = x0 ^ x1\nf1 = 1").unwrap();
        assert!(matches!(network_to_andnet(&f), Err(Error::NotAnAndNet(0))));
        let f = parse_network("f0 = 0").unwrap();
        assert!(matches!(network_to_andnet(&f), Err(Error::NotAnAndNet(0))));
    }

    #[test]
    fn overlapping_inputs_rejected() {
        assert!(matches!(
            AndNet::new(vec![vec![0]], vec![vec![0]]),
            Err(Error::OverlappingInputs { .. })
        ));
    }

    #[test]
    fn from_signed_digraph() {
        let edgeless = SignedDigraph::new(3);
        assert_eq!(andnet_from_signed_digraph(&edgeless).unwrap(), AndNet::empty(3).unwrap());

        let mut seed = SignedDigraph::new(4);
        for i in 0..4 {
            seed.add_edge(i, (i + 1) % 4, Sign::Negative).unwrap();
            seed.add_edge(i, (i + 2) % 4, Sign::Negative).unwrap();
        }
        let a = andnet_from_signed_digraph(&seed).unwrap();
        for i in 0..4 {
            assert_eq!(a.negative_inputs(i), {
                let mut v = vec![(i + 3) % 4, (i + 2) % 4];
                v.sort();
                v
            });
        }
        assert_eq!(a.to_signed_digraph(), seed);

        let parallel = SignedDigraph::from_edges(2, [(0, 1, Sign::Positive), (0, 1, Sign::Negative)]).unwrap();
        assert!(matches!(
            andnet_from_signed_digraph(&parallel),
            Err(Error::NotSimple { from: 0, to: 1 })
        ));
    }

    #[test]
    fn anet_format_round_trip() {
        let text = "0: -1 +2\n1: -2\n2: -0 +1\n";
        let a = AndNet::parse(text).unwrap();
        assert_eq!(a, fig1());
        assert_eq!(a.render(), text);
        assert!(AndNet::parse("0: +1\n").is_err());
        assert!(AndNet::parse("0: *0\n").is_err());
    }

    #[test]
    fn random_andnet_properties() {
        assert_eq!(random_andnet(4, 3, 0.0).unwrap(), AndNet::empty(4).unwrap());
        assert_eq!(random_andnet(5, 8, 0.5).unwrap(), random_andnet(5, 8, 0.5).unwrap());
    }
}
