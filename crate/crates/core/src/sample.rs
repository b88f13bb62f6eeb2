//! Seeded random evaluation points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hyperint_algebra::rat::int;
use hyperint_algebra::{RFunc, Rat};

pub struct Sampler {
    rng: ChaCha8Rng,
    range: i64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), range: 40 }
    }

    pub fn with_range(seed: u64, range: i64) -> Self {
        Sampler { rng: ChaCha8Rng::seed_from_u64(seed), range }
    }

    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(-self.range..=self.range)
    }

    pub fn point(&mut self, n: usize) -> Vec<Rat> {
        (0..n).map(|_| int(self.int())).collect()
    }

    /// A point where every function in `fs` is defined; widens the range on repeated failures.
    pub fn regular_point(&mut self, n: usize, fs: &[&RFunc<Rat>]) -> Vec<Rat> {
        for attempt in 0.. {
            let p = self.point(n);
            if fs.iter().all(|f| !f.den().eval(&p).is_zero_rat()) {
                return p;
            }
            if attempt % 50 == 49 {
                self.range *= 2;
            }
        }
        unreachable!()
    }
}

trait ZeroRat {
    fn is_zero_rat(&self) -> bool;
}

impl ZeroRat for Rat {
    fn is_zero_rat(&self) -> bool {
        hyperint_algebra::Field::is_zero(self)
    }
}
