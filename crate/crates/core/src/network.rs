//! The central object: a map from the n-cube to itself.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::state::{full_mask, State, HARD_MAX_DIM};

/// A Boolean network `f : F_2^n -> F_2^n`.
///
/// Stored as the image word of every state, which is the same data as `n`
/// truth tables of `2^n` bits each (bit `i` of `images[x]` is `f_i(x)`).
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct BooleanNetwork {
    n: usize,
    images: Vec<u32>,
}

impl BooleanNetwork {
    pub fn from_images(n: usize, images: Vec<u32>) -> Result<Self> {
        if n == 0 || n > HARD_MAX_DIM {
            return Err(Error::InvalidDimension(n));
        }
        Self::from_images_unguarded(n, images)
    }

    /// Same as [`from_images`](Self::from_images) but also accepts the
    /// 0-dimensional network (the restriction to a single point).
    pub(crate) fn from_images_unguarded(n: usize, images: Vec<u32>) -> Result<Self> {
        if images.len() != 1usize << n {
            return Err(Error::Format(format!(
                "expected {} images, found {}",
                1usize << n,
                images.len()
            )));
        }
        let mask = full_mask(n);
        if let Some(&w) = images.iter().find(|&&w| w & !mask != 0) {
            return Err(Error::StrayBits { word: w as u64, n });
        }
        Ok(BooleanNetwork { n, images })
    }

    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Result<Self> {
        if n == 0 || n > HARD_MAX_DIM {
            return Err(Error::InvalidDimension(n));
        }
        let mask = full_mask(n);
        let images = (0..1u32 << n).map(|x| f(x) & mask).collect();
        Ok(BooleanNetwork { n, images })
    }

    /// Builds a network from per-coordinate truth tables (`tables[i][x] = f_i(x)`).
    pub fn from_tables(tables: &[Vec<bool>]) -> Result<Self> {
        let n = tables.len();
        if n == 0 || n > HARD_MAX_DIM {
            return Err(Error::InvalidDimension(n));
        }
        let size = 1usize << n;
        if let Some(t) = tables.iter().find(|t| t.len() != size) {
            return Err(Error::Format(format!(
                "truth table has {} entries, expected {size}",
                t.len()
            )));
        }
        let mut images = vec![0u32; size];
        for (i, t) in tables.iter().enumerate() {
            for (x, &v) in t.iter().enumerate() {
                if v {
                    images[x] |= 1 << i;
                }
            }
        }
        Ok(BooleanNetwork { n, images })
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::from_fn(n, |x| x)
    }

    pub fn constant(c: &State) -> Result<Self> {
        let w = c.word();
        Self::from_fn(c.dim(), move |_| w)
    }

    /// Global negation `x -> antipode(x)`.
    pub fn negation(n: usize) -> Result<Self> {
        Self::from_fn(n, |x| !x)
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn state_count(&self) -> usize {
        self.images.len()
    }

    /// Image word of state word `x`. Panics if `x >= 2^n`.
    #[inline]
    pub fn image(&self, x: u32) -> u32 {
        self.images[x as usize]
    }

    #[inline]
    pub fn coordinate(&self, i: usize, x: u32) -> bool {
        (self.images[x as usize] >> i) & 1 == 1
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    pub fn eval(&self, x: &State) -> Result<State> {
        self.check_state(x)?;
        Ok(State::from_word(self.image(x.word()), self.n))
    }

    pub fn table(&self, i: usize) -> Result<Vec<bool>> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(self.images.iter().map(|&w| (w >> i) & 1 == 1).collect())
    }

    pub(crate) fn check_state(&self, x: &State) -> Result<()> {
        if x.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: x.dim(),
            });
        }
        Ok(())
    }

    pub(crate) fn check_index(&self, i: usize) -> Result<()> {
        if i >= self.n {
            return Err(Error::IndexOutOfRange {
                index: i,
                n: self.n,
            });
        }
        Ok(())
    }

    pub(crate) fn state(&self, word: u32) -> State {
        State::from_word(word, self.n)
    }

    pub fn states(&self) -> impl Iterator<Item = State> + '_ {
        (0..self.images.len() as u32).map(move |w| State::from_word(w, self.n))
    }
}

/// Uniformly random network, deterministic in `seed`.
pub fn random_network(n: usize, seed: u64) -> Result<BooleanNetwork> {
    if n == 0 || n > HARD_MAX_DIM {
        return Err(Error::InvalidDimension(n));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mask = full_mask(n);
    let images = (0..1usize << n).map(|_| rng.gen::<u32>() & mask).collect();
    BooleanNetwork::from_images(n, images)
}
