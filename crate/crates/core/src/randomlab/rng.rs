use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::Result;

/// Identifier recorded in every experiment report.
pub const GENERATOR: &str = "chacha8-stream-per-block";

/// Trials per block. Block `j` draws from stream `j`, so results do not
/// depend on how blocks are scheduled across threads.
pub const BLOCK_SIZE: u64 = 4096;

/// A master seed and a stream index. Together with the draw index inside
/// the stream they determine every variate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RngSpec {
    pub seed: u64,
    pub stream: u64,
}

impl RngSpec {
    pub fn new(seed: u64) -> Self {
        RngSpec { seed, stream: 0 }
    }

    pub fn with_stream(self, stream: u64) -> Self {
        RngSpec { stream, ..self }
    }

    pub fn rng(&self) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(self.stream);
        rng
    }
}

/// Runs `trials` trials in blocks of [`BLOCK_SIZE`] on the rayon pool.
///
/// Each block starts from `init()`, runs `step` once per trial with its own
/// stream, and the block results are folded with `merge` in block order.
pub fn run_blocks<A, I, S, M>(seed: u64, trials: u64, init: I, step: S, mut merge: M) -> Result<A>
where
    A: Send,
    I: Fn() -> A + Sync,
    S: Fn(&mut ChaCha8Rng, &mut A) -> Result<()> + Sync,
    M: FnMut(&mut A, A),
{
    let blocks = trials.div_ceil(BLOCK_SIZE);
    let parts: Vec<A> = (0..blocks)
        .into_par_iter()
        .map(|j| {
            let mut rng = RngSpec::new(seed).with_stream(j).rng();
            let mut acc = init();
            let len = BLOCK_SIZE.min(trials - j * BLOCK_SIZE);
            for _ in 0..len {
                step(&mut rng, &mut acc)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = init();
    for p in parts {
        merge(&mut total, p);
    }
    Ok(total)
}
