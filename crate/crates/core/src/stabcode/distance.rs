//! Brute-force minimum distance: the smallest weight of a normalizer element
//! that acts nontrivially on the code space.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::pauli::{Pauli, PauliOperator};

use super::StabilizerCode;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Distance {
    Exact(usize),
    /// No nontrivial logical up to the searched weight.
    AtLeast(usize),
}

impl Distance {
    pub fn lower_bound(self) -> usize {
        match self {
            Distance::Exact(d) | Distance::AtLeast(d) => d,
        }
    }
}

impl fmt::Display for Distance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Distance::Exact(d) => write!(f, "{d}"),
            Distance::AtLeast(d) => write!(f, ">={d}"),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct DistanceConfig {
    /// Cap on the number of candidate Paulis examined.
    pub budget: u128,
}

impl Default for DistanceConfig {
    fn default() -> Self {
        Self { budget: 1_000_000_000 }
    }
}

const CHUNK: usize = 1024;

/// Candidates of weight `<= w_max` over an alphabet of `letters` symbols.
fn candidate_count(n: usize, w_max: usize, letters: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    let mut pow: u128 = 1;
    for w in 0..=w_max.min(n) {
        total = total.saturating_add(binom.saturating_mul(pow));
        binom = binom.saturating_mul((n - w) as u128) / (w as u128 + 1);
        pow = pow.saturating_mul(letters as u128);
    }
    total
}

/// Per-qubit, per-letter signature: anticommutation with every generator,
/// then with every logical X and Z. A product is a nontrivial logical iff
/// the XOR of its signatures is zero on the generator part and nonzero on
/// the logical part.
struct Signatures {
    words: usize,
    syndrome_bits: usize,
    /// table[q][letter] -> packed signature
    table: Vec<Vec<Vec<u64>>>,
}

impl Signatures {
    fn new(code: &StabilizerCode, letters: &[Pauli]) -> Self {
        let checks: Vec<&PauliOperator> =
            code.generators().iter().chain(code.logical_x()).chain(code.logical_z()).collect();
        let words = checks.len().div_ceil(64).max(1);
        let n = code.n();
        let table = (0..n)
            .map(|q| {
                letters
                    .iter()
                    .map(|&l| {
                        let p = PauliOperator::single(n, q, l).expect("in range");
                        let mut sig = vec![0u64; words];
                        for (i, c) in checks.iter().enumerate() {
                            if c.anticommutes_unchecked(&p) {
                                sig[i / 64] |= 1 << (i % 64);
                            }
                        }
                        sig
                    })
                    .collect()
            })
            .collect();
        Self { words, syndrome_bits: code.generators().len(), table }
    }

    fn is_nontrivial_logical(&self, sig: &[u64]) -> bool {
        let mut syndrome_zero = true;
        let mut logical_zero = true;
        for (w, &word) in sig.iter().enumerate() {
            let lo = w * 64;
            for b in 0..64 {
                if word >> b & 1 == 1 {
                    if lo + b < self.syndrome_bits {
                        syndrome_zero = false;
                    } else {
                        logical_zero = false;
                    }
                }
            }
        }
        syndrome_zero && !logical_zero
    }

    /// Depth-first over letter assignments on a fixed support.
    fn support_hits(&self, support: &[usize]) -> bool {
        let mut acc = vec![vec![0u64; self.words]; support.len() + 1];
        self.dfs(support, 0, &mut acc)
    }

    fn dfs(&self, support: &[usize], depth: usize, acc: &mut [Vec<u64>]) -> bool {
        if depth == support.len() {
            return self.is_nontrivial_logical(&acc[depth]);
        }
        for sig in &self.table[support[depth]] {
            let (head, tail) = acc.split_at_mut(depth + 1);
            for ((dst, src), s) in tail[0].iter_mut().zip(&head[depth]).zip(sig) {
                *dst = src ^ s;
            }
            if self.dfs(support, depth + 1, acc) {
                return true;
            }
        }
        false
    }
}

/// Minimum weight of a nontrivial logical, searching up to `w_max`.
pub fn distance(code: &StabilizerCode, w_max: usize) -> Result<Distance> {
    distance_with(code, w_max, &[Pauli::X, Pauli::Y, Pauli::Z], &DistanceConfig::default())
}

/// As [`distance`], restricted to Paulis whose nonidentity letters all come
/// from `letters`.
pub fn distance_with(
    code: &StabilizerCode,
    w_max: usize,
    letters: &[Pauli],
    config: &DistanceConfig,
) -> Result<Distance> {
    let n = code.n();
    let count = candidate_count(n, w_max, letters.len());
    if count > config.budget {
        return Err(Error::Budget { what: "distance candidates", count, budget: config.budget });
    }
    if code.k() == 0 {
        return Ok(Distance::AtLeast(w_max + 1));
    }
    let sigs = Signatures::new(code, letters);
    for w in 1..=w_max.min(n) {
        let mut supports = (0..n).combinations(w);
        loop {
            let chunk: Vec<Vec<usize>> = supports.by_ref().take(CHUNK).collect();
            if chunk.is_empty() {
                break;
            }
            if chunk.par_iter().any(|s| sigs.support_hits(s)) {
                return Ok(Distance::Exact(w));
            }
        }
    }
    Ok(Distance::AtLeast(w_max + 1))
}

/// Minimum weights of X-type and Z-type nontrivial logicals.
pub fn css_distances(code: &StabilizerCode, w_max: usize) -> Result<(Distance, Distance)> {
    let config = DistanceConfig::default();
    Ok((distance_with(code, w_max, &[Pauli::X], &config)?, distance_with(code, w_max, &[Pauli::Z], &config)?))
}
