//! Seeded, reproducible samplers for G(n1, n2, p) and G(n, q).
//!
//! Stream contract: trial `i` of master seed `s` draws from a xoshiro256**
//! generator whose state is produced by four successive SplitMix64 outputs
//! seeded with `s XOR (i * 0x9E3779B97F4A7C15)`. Potential edges are indexed
//! lexicographically (row-major over (u, w); over pairs u < v for the simple
//! model). For p <= 0.1 the sampler draws one uniform per *accepted* edge
//! plus one terminating draw, advancing by geometric skips
//! floor(log(1-U) / log(1-p)); for p > 0.1 it draws one uniform per
//! potential edge and includes the edge when U < p. Identical
//! (n1, n2, p, seed) therefore yields an identical edge set on every
//! platform.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, SimpleGraph};

/// Identifies one trial's private random stream.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub master_seed: u64,
    pub trial_index: u64,
}

impl SeedSpec {
    pub fn new(master_seed: u64, trial_index: u64) -> Self {
        Self {
            master_seed,
            trial_index,
        }
    }

    /// The trial's generator; a pure function of (master_seed, trial_index).
    pub fn rng(&self) -> Xoshiro256StarStar {
        let mixed = self.master_seed ^ self.trial_index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
        Xoshiro256StarStar::from_splitmix(mixed)
    }
}

/// SplitMix64, used only to expand a 64-bit seed into xoshiro state.
struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }
}

/// xoshiro256** 1.0.
#[derive(Debug, Clone)]
pub struct Xoshiro256StarStar {
    s: [u64; 4],
}

impl Xoshiro256StarStar {
    pub fn from_splitmix(seed: u64) -> Self {
        let mut sm = SplitMix64 { state: seed };
        Self {
            s: [sm.next(), sm.next(), sm.next(), sm.next()],
        }
    }

    pub fn next_u64(&mut self) -> u64 {
        let result = self.s[1].wrapping_mul(5).rotate_left(7).wrapping_mul(9);
        let t = self.s[1] << 17;
        self.s[2] ^= self.s[0];
        self.s[3] ^= self.s[1];
        self.s[1] ^= self.s[2];
        self.s[0] ^= self.s[3];
        self.s[2] ^= t;
        self.s[3] = self.s[3].rotate_left(45);
        result
    }

    /// Uniform in [0, 1) with 53 random bits.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform in 0..bound. Modulo bias is below bound / 2^64, far under
    /// the statistical tolerances used anywhere in this crate.
    pub fn next_below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::ProbabilityRange(p));
    }
    Ok(())
}

/// Threshold between geometric skip-sampling and per-edge Bernoulli draws.
const SKIP_SAMPLING_MAX_P: f64 = 0.1;

/// Samples G(n1, n2, p): each of the n1*n2 potential edges appears
/// independently with probability p.
///
/// ```
/// use bigenus::sampler::{sample_bipartite, SeedSpec};
///
/// let g = sample_bipartite(1000, 1000, 0.002, SeedSpec::new(7, 0)).unwrap();
/// let again = sample_bipartite(1000, 1000, 0.002, SeedSpec::new(7, 0)).unwrap();
/// assert_eq!(g, again); // same stream, same graph
/// ```
pub fn sample_bipartite(n1: usize, n2: usize, p: f64, seed: SeedSpec) -> Result<BipartiteGraph> {
    check_probability(p)?;
    let total = (n1 as u128) * (n2 as u128);
    if total > u64::MAX as u128 {
        return Err(Error::IndexOverflow { n1, n2 });
    }
    let total = total as u64;
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    if p == 0.0 || total == 0 {
        return Ok(BipartiteGraph::from_unique_edges(n1, n2, edges));
    }
    let decode = |idx: u64| ((idx / n2 as u64) as u32, (idx % n2 as u64) as u32);
    if p > SKIP_SAMPLING_MAX_P {
        for idx in 0..total {
            if rng.next_f64() < p {
                edges.push(decode(idx));
            }
        }
    } else {
        edges.reserve((p * total as f64 * 1.1) as usize + 16);
        let mut pos = 0u64;
        let log_q = (1.0 - p).ln();
        loop {
            let skip = geometric_skip(rng.next_f64(), log_q);
            if skip >= (total - pos) as f64 {
                break;
            }
            pos += skip as u64;
            edges.push(decode(pos));
            pos += 1;
            if pos == total {
                break;
            }
        }
    }
    Ok(BipartiteGraph::from_unique_edges(n1, n2, edges))
}

/// Samples the binomial graph G(n, q) over the C(n, 2) potential edges.
pub fn sample_binomial_graph(n: usize, q: f64, seed: SeedSpec) -> Result<SimpleGraph> {
    check_probability(q)?;
    let mut rng = seed.rng();
    let mut edges = Vec::new();
    if q == 0.0 || n < 2 {
        return Ok(SimpleGraph::from_unique_edges(n, edges));
    }
    if q > SKIP_SAMPLING_MAX_P {
        for u in 0..n as u32 {
            for v in (u + 1)..n as u32 {
                if rng.next_f64() < q {
                    edges.push((u, v));
                }
            }
        }
    } else {
        let log_q = (1.0 - q).ln();
        let total = (n as u64) * (n as u64 - 1) / 2;
        let mut pos = 0u64;
        // Cell at index `pos`, tracked as (row u, column v) so skips stay
        // in exact integer arithmetic.
        let mut u = 0u64;
        let mut v = 1u64;
        loop {
            let skip = geometric_skip(rng.next_f64(), log_q);
            if skip >= (total - pos) as f64 {
                break;
            }
            let mut skip = skip as u64;
            pos += skip + 1;
            let mut rem = n as u64 - v;
            while skip >= rem {
                skip -= rem;
                u += 1;
                v = u + 1;
                rem = n as u64 - v;
            }
            v += skip;
            edges.push((u as u32, v as u32));
            if pos == total {
                break;
            }
            v += 1;
            if v == n as u64 {
                u += 1;
                v = u + 1;
            }
        }
    }
    Ok(SimpleGraph::from_unique_edges(n, edges))
}

/// Number of misses before the next hit for success probability p,
/// where `log_q` = ln(1-p) and `u` is uniform in [0, 1).
fn geometric_skip(u: f64, log_q: f64) -> f64 {
    // 1-u is in (0, 1]; both logs are non-positive.
    ((1.0 - u).ln() / log_q).floor()
}
