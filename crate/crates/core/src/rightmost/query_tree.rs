//! Laminar family of factor SA intervals and the text-order scan over it.

use crate::{Error, Result};

const NONE: u32 = u32::MAX;

/// Distinct SA intervals in preorder (start ascending, end descending).
#[derive(Debug, Clone)]
pub struct QueryTree {
    starts: Vec<u32>,
    ends: Vec<u32>,
    parent: Vec<u32>,
    /// Preorder index one past the node's last descendant.
    subtree_end: Vec<u32>,
    /// `node_of[q]` = node of the `q`-th input interval.
    node_of: Vec<u32>,
}

impl QueryTree {
    /// Builds the tree over 1-based inclusive intervals within `1..=n`.
    pub fn build(intervals: &[(usize, usize)], n: usize) -> Result<Self> {
        for &(s, e) in intervals {
            Error::check_range(s, e, n)?;
        }
        let order = radix_order(intervals, n);
        let mut starts = Vec::with_capacity(order.len());
        let mut ends = Vec::with_capacity(order.len());
        let mut node_of = vec![NONE; intervals.len()];
        for &q in &order {
            let (s, e) = intervals[q as usize];
            if starts.last() != Some(&(s as u32)) || ends.last() != Some(&(e as u32)) {
                starts.push(s as u32);
                ends.push(e as u32);
            }
            node_of[q as usize] = starts.len() as u32 - 1;
        }
        let k = starts.len();
        let mut parent = vec![NONE; k];
        let mut subtree_end = vec![k as u32; k];
        let mut stack: Vec<u32> = Vec::new();
        for v in 0..k {
            while let Some(&top) = stack.last() {
                if ends[top as usize] < starts[v] {
                    subtree_end[top as usize] = v as u32;
                    stack.pop();
                } else {
                    break;
                }
            }
            if let Some(&top) = stack.last() {
                if ends[top as usize] < ends[v] {
                    return Err(Error::Domain(format!(
                        "intervals [{}, {}] and [{}, {}] overlap without nesting",
                        starts[top as usize], ends[top as usize], starts[v], ends[v]
                    )));
                }
                parent[v] = top;
            }
            stack.push(v as u32);
        }
        Ok(Self {
            starts,
            ends,
            parent,
            subtree_end,
            node_of,
        })
    }

    pub fn len(&self) -> usize {
        self.starts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.starts.is_empty()
    }

    /// Interval of node `v` (preorder index).
    pub fn interval(&self, v: usize) -> (usize, usize) {
        (self.starts[v] as usize, self.ends[v] as usize)
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        (self.parent[v] != NONE).then_some(self.parent[v] as usize)
    }

    pub fn node_of(&self, q: usize) -> usize {
        self.node_of[q] as usize
    }

    /// Every pair of nodes is nested or disjoint, and parents contain children.
    pub fn is_laminar(&self) -> bool {
        let k = self.len();
        (0..k).all(|v| match self.parent(v) {
            Some(p) => self.starts[p] <= self.starts[v] && self.ends[v] <= self.ends[p],
            None => true,
        }) && (0..k).all(|v| {
            (v + 1..self.subtree_end[v] as usize).all(|w| self.ends[w] <= self.ends[v])
                && (self.subtree_end[v] as usize..k).all(|w| self.starts[w] > self.ends[v])
        })
    }

    /// Nearest node containing each SA position `1..=n` (`None` if uncovered).
    pub fn nearest_marked(&self, n: usize) -> Vec<Option<usize>> {
        self.nma_raw(n).into_iter().map(|a| (a != NONE).then_some(a as usize)).collect()
    }

    fn nma_raw(&self, n: usize) -> Vec<u32> {
        let mut out = vec![NONE; n];
        let mut stack: Vec<u32> = Vec::new();
        let mut next = 0;
        for j in 1..=n as u32 {
            while stack.last().is_some_and(|&v| self.ends[v as usize] < j) {
                stack.pop();
            }
            while next < self.len() && self.starts[next] == j {
                stack.push(next as u32);
                next += 1;
            }
            out[j as usize - 1] = stack.last().copied().unwrap_or(NONE);
        }
        out
    }

    /// Scans text positions `1..=m` in order, given `isa[t - 1]` = SA position
    /// of suffix `t`. For each query `(start, q)` (sorted by `start`), returns
    /// the largest `t < start` whose suffix lies in the interval of input `q`,
    /// or 0. Also returns the final `p_α` per node.
    pub fn scan(&self, isa: &[u32], queries: &[(usize, usize)]) -> (Vec<usize>, Vec<u32>) {
        debug_assert!(queries.windows(2).all(|w| w[0].0 <= w[1].0));
        let nma = self.nma_raw(isa.len());
        let mut p = MaxTree::new(self.len());
        let mut out = vec![0; queries.len()];
        let mut qi = 0;
        for (t0, &j) in isa.iter().enumerate() {
            let t = t0 + 1;
            while qi < queries.len() && queries[qi].0 == t {
                let v = self.node_of(queries[qi].1);
                out[qi] = p.max(v, self.subtree_end[v] as usize) as usize;
                qi += 1;
            }
            let a = nma[j as usize - 1];
            if a != NONE {
                p.set(a as usize, t as u32);
            }
        }
        (out, p.leaves())
    }
}

/// Query indices sorted by (start ascending, end descending): two stable
/// counting-sort passes.
fn radix_order(intervals: &[(usize, usize)], n: usize) -> Vec<u32> {
    let pass = |order: &[u32], key: &dyn Fn(usize) -> usize| {
        let mut count = vec![0usize; n + 2];
        for &q in order {
            count[key(q as usize) + 1] += 1;
        }
        for k in 1..count.len() {
            count[k] += count[k - 1];
        }
        let mut out = vec![0u32; order.len()];
        for &q in order {
            let c = &mut count[key(q as usize)];
            out[*c] = q;
            *c += 1;
        }
        out
    };
    let ident: Vec<u32> = (0..intervals.len() as u32).collect();
    let by_end = pass(&ident, &|q| n - intervals[q].1);
    pass(&by_end, &|q| intervals[q].0)
}

/// Point-update, range-max over `0..k`.
struct MaxTree {
    k: usize,
    t: Vec<u32>,
}

impl MaxTree {
    fn new(k: usize) -> Self {
        Self { k, t: vec![0; 2 * k] }
    }

    fn set(&mut self, i: usize, v: u32) {
        let mut i = i + self.k;
        self.t[i] = v;
        while i > 1 {
            i /= 2;
            self.t[i] = self.t[2 * i].max(self.t[2 * i + 1]);
        }
    }

    /// Max over `[l, r)`.
    fn max(&self, l: usize, r: usize) -> u32 {
        let (mut l, mut r) = (l + self.k, r + self.k);
        let mut best = 0;
        while l < r {
            if l & 1 == 1 {
                best = best.max(self.t[l]);
                l += 1;
            }
            if r & 1 == 1 {
                r -= 1;
                best = best.max(self.t[r]);
            }
            l /= 2;
            r /= 2;
        }
        best
    }

    fn leaves(&self) -> Vec<u32> {
        self.t[self.k..].to_vec()
    }
}
