//! Brute-force references for testing and the `verify` command.

use crate::Factor;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleConfig {
    /// Largest input the quadratic oracles accept without forcing.
    pub max_n: usize,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        Self {
            max_n: 100_000,
            seed: 0x1f2e_3d4c,
        }
    }
}

impl OracleConfig {
    pub fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    /// Uniform random string over `0..sigma`.
    pub fn random_text(&self, rng: &mut ChaCha8Rng, n: usize, sigma: u32) -> Vec<u32> {
        (0..n).map(|_| rng.gen_range(0..sigma)).collect()
    }

    /// Random string of length `n` over `0..sigma` built from random symbols
    /// and copies of earlier stretches (up to `max_copy` long), so that long
    /// repeats occur at every scale.
    pub fn repetitive_text(&self, rng: &mut ChaCha8Rng, n: usize, sigma: u32, max_copy: usize) -> Vec<u32> {
        let mut t = Vec::with_capacity(n);
        while t.len() < n {
            if t.len() < 2 || rng.gen_bool(0.3) {
                t.push(rng.gen_range(0..sigma));
                continue;
            }
            let len = rng.gen_range(1..=max_copy.max(1)).min(n - t.len());
            let src = rng.gen_range(0..t.len());
            for k in 0..len {
                t.push(t[src + k]);
            }
        }
        t
    }
}

/// Every string of length `len` over `0..sigma`, in lexicographic order.
pub fn all_strings(sigma: u32, len: usize) -> impl Iterator<Item = Vec<u32>> {
    let total = (sigma as u64).pow(len as u32);
    (0..total).map(move |mut k| {
        let mut s = vec![0u32; len];
        for slot in s.iter_mut().rev() {
            *slot = (k % sigma as u64) as u32;
            k /= sigma as u64;
        }
        s
    })
}

/// `z[p]` = longest common prefix of `pattern` and `text[p..]`, for every `p`.
fn match_lengths(pattern: &[u32], text: &[u32]) -> Vec<usize> {
    // Z-function over pattern · separator · text, with the separator modelled
    // as an index check.
    let m = pattern.len();
    let total = m + 1 + text.len();
    let at = |k: usize| -> Option<u32> {
        if k < m {
            Some(pattern[k])
        } else if k == m {
            None
        } else {
            Some(text[k - m - 1])
        }
    };
    let mut z = vec![0usize; total];
    let (mut l, mut r) = (0, 0);
    for k in 1..total {
        if k < r {
            z[k] = (r - k).min(z[k - l]);
        }
        while k + z[k] < total && at(z[k]).is_some() && at(z[k]) == at(k + z[k]) {
            z[k] += 1;
        }
        if k + z[k] > r {
            l = k;
            r = k + z[k];
        }
    }
    z[m + 1..].iter().map(|&v| v.min(m)).collect()
}

fn greedy(text: &[u32], rightmost: bool) -> Vec<Factor> {
    let mut out = Vec::new();
    let mut i = 0;
    while i < text.len() {
        let lens = match_lengths(&text[i..], text);
        let best = lens[..i].iter().copied().max().unwrap_or(0);
        if best == 0 {
            out.push(Factor::Literal(text[i]));
            i += 1;
            continue;
        }
        let src = if rightmost {
            (0..i).rev().find(|&p| lens[p] == best).unwrap()
        } else {
            (0..i).find(|&p| lens[p] == best).unwrap()
        };
        out.push(Factor::Reference { src: src + 1, len: best });
        i += best;
    }
    out
}

/// Greedy longest-previous-factor parse with leftmost sources.
pub fn oracle_lz(text: &[u32]) -> Vec<Factor> {
    greedy(text, false)
}

/// Same phrases as [`oracle_lz`], each with its largest valid source.
pub fn oracle_rightmost(text: &[u32]) -> Vec<Factor> {
    greedy(text, true)
}

/// Point with `x ∈ [x1, x2]` and the largest `y ≤ y2`, by linear scan.
pub fn oracle_range_pred(points: &[(usize, usize)], x1: usize, x2: usize, y2: usize) -> Option<(usize, usize)> {
    points
        .iter()
        .copied()
        .filter(|&(x, y)| x1 <= x && x <= x2 && y <= y2)
        .max_by_key(|&(_, y)| y)
}

/// Checks that every reference copies an earlier, matching substring.
pub fn valid_sources(text: &[u32], factors: &[Factor]) -> bool {
    let mut i = 1;
    for f in factors {
        if let Factor::Reference { src, len } = *f {
            if src == 0 || src >= i || i + len - 1 > text.len() {
                return false;
            }
            if (0..len).any(|k| text[src - 1 + k] != text[i - 1 + k]) {
                return false;
            }
        }
        i += f.len();
    }
    i == text.len() + 1
}
