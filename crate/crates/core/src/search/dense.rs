//! Dense engine: every shape of a size gets a contiguous index (its rank)
//! and the whole adjacency is built once, for diameters and repeated
//! weighted searches.

use std::collections::VecDeque;
use std::time::Instant;

use rayon::prelude::*;

use super::{distance, quad_name, SearchReport};
use crate::error::{Error, Result};
use crate::rotation::PairName;
use crate::tree::{Label, LeafQuad, Shape, Tree, CATALAN};

/// Largest size the dense engine accepts without `force`.
pub const DENSE_LIMIT: usize = 12;

pub(crate) fn guard(n: usize, force: bool) -> Result<()> {
    if n > 20 || (!force && n > DENSE_LIMIT) {
        return Err(Error::Budget {
            n,
            limit: if force { 20 } else { DENSE_LIMIT },
        });
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct DenseGraph {
    n: usize,
    degree: usize,
    adj: Vec<u32>,
    /// Per edge: leaf indices `a, b, c, d` in 6-bit fields, sign in bit 24.
    moves: Vec<u32>,
}

fn pack(q: LeafQuad, positive: bool) -> u32 {
    q.a as u32 | (q.b as u32) << 6 | (q.c as u32) << 12 | (q.d as u32) << 18 | u32::from(positive) << 24
}

fn unpack(m: u32) -> (LeafQuad, bool) {
    let f = |k: u32| ((m >> (6 * k)) & 63) as u8;
    (
        LeafQuad {
            a: f(0),
            b: f(1),
            c: f(2),
            d: f(3),
        },
        m >> 24 & 1 == 1,
    )
}

impl DenseGraph {
    pub fn build(n: usize, force: bool) -> Result<Self> {
        guard(n, force)?;
        let count = CATALAN[n] as usize;
        let degree = n.saturating_sub(1);
        let rows: Vec<(Vec<u32>, Vec<u32>)> = (0..count as u64)
            .into_par_iter()
            .map(|r| {
                let s = Shape::unrank(r, n).expect("rank in range");
                let mut adj = Vec::with_capacity(degree);
                let mut moves = Vec::with_capacity(degree);
                s.for_each_named_neighbor(|mv, q, w| {
                    adj.push(w.rank() as u32);
                    moves.push(pack(q, mv.positive));
                });
                (adj, moves)
            })
            .collect();
        let mut adj = Vec::with_capacity(count * degree);
        let mut moves = Vec::with_capacity(count * degree);
        for (a, m) in rows {
            debug_assert_eq!(a.len(), degree);
            adj.extend(a);
            moves.extend(m);
        }
        Ok(DenseGraph { n, degree, adj, moves })
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        CATALAN[self.n] as usize
    }

    pub fn index(&self, t: &Tree) -> Result<u32> {
        if t.size() != self.n {
            return Err(Error::SizeMismatch(self.n, t.size()));
        }
        Ok(t.shape()?.rank() as u32)
    }

    pub fn shape(&self, v: u32) -> Shape {
        Shape::unrank(v as u64, self.n).expect("index in range")
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        let k = v as usize * self.degree;
        &self.adj[k..k + self.degree]
    }

    /// Breadth-first distances from `v` to every vertex.
    pub fn bfs(&self, v: u32) -> Vec<u8> {
        let mut dist = vec![u8::MAX; self.vertex_count()];
        dist[v as usize] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x as usize] + 1;
            for &y in self.neighbors(x) {
                if dist[y as usize] == u8::MAX {
                    dist[y as usize] = d;
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    fn zero_one(
        &self,
        src: u32,
        stop: Option<u32>,
        labels: &[Label],
        weigh: impl Fn(&PairName) -> bool,
    ) -> (Vec<u32>, Vec<u32>) {
        let count = self.vertex_count();
        let mut cost = vec![u32::MAX; count];
        let mut parent = vec![u32::MAX; count];
        let mut done = vec![false; count];
        cost[src as usize] = 0;
        let mut deque = VecDeque::from([src]);
        while let Some(v) = deque.pop_front() {
            if std::mem::replace(&mut done[v as usize], true) {
                continue;
            }
            if Some(v) == stop {
                break;
            }
            let cv = cost[v as usize];
            let k = v as usize * self.degree;
            for e in k..k + self.degree {
                let w = self.adj[e];
                let (q, positive) = unpack(self.moves[e]);
                let step = u32::from(weigh(&quad_name(q, positive, labels)));
                if cv + step < cost[w as usize] {
                    cost[w as usize] = cv + step;
                    parent[w as usize] = v;
                    if step == 0 {
                        deque.push_front(w);
                    } else {
                        deque.push_back(w);
                    }
                }
            }
        }
        (cost, parent)
    }

    /// 0/1 search from `src` to `dst` where a step costs 1 exactly when its
    /// name (with the given labels) satisfies `weigh`. Returns the cost and
    /// a minimizing vertex path.
    pub fn min_weight(
        &self,
        src: u32,
        dst: u32,
        labels: &[Label],
        weigh: impl Fn(&PairName) -> bool,
    ) -> (usize, Vec<u32>) {
        let (cost, parent) = self.zero_one(src, Some(dst), labels, weigh);
        let mut path = vec![dst];
        let mut at = dst;
        while at != src {
            at = parent[at as usize];
            path.push(at);
        }
        path.reverse();
        (cost[dst as usize] as usize, path)
    }

    /// Weighted distances from `src` to every vertex, weights as in
    /// [`DenseGraph::min_weight`].
    pub fn min_weights_from(&self, src: u32, labels: &[Label], weigh: impl Fn(&PairName) -> bool) -> Vec<u32> {
        self.zero_one(src, None, labels, weigh).0
    }

    /// Eccentricities of 64 sources at once: lane `k` of each word tracks
    /// the breadth-first search from `sources[k]`. Returns the largest
    /// eccentricity with one source/target pair realizing it.
    fn batch_eccentricity(&self, sources: &[u32]) -> (u32, u32, u32) {
        let count = self.vertex_count();
        let full = if sources.len() == 64 {
            u64::MAX
        } else {
            (1u64 << sources.len()) - 1
        };
        let mut seen = vec![0u64; count];
        let mut frontier = vec![0u64; count];
        let mut next = vec![0u64; count];
        for (k, &s) in sources.iter().enumerate() {
            seen[s as usize] |= 1 << k;
            frontier[s as usize] |= 1 << k;
        }
        let mut level = 0;
        let mut best = (0, sources[0], sources[0]);
        loop {
            let mut any = 0u64;
            for v in 0..count {
                let missing = !seen[v] & full;
                if missing == 0 {
                    next[v] = 0;
                    continue;
                }
                let mut acc = 0u64;
                for &w in self.neighbors(v as u32) {
                    acc |= frontier[w as usize];
                }
                let fresh = acc & missing;
                next[v] = fresh;
                any |= fresh;
            }
            if any == 0 {
                return best;
            }
            level += 1;
            let lane = any.trailing_zeros();
            let target = next.iter().position(|&x| x >> lane & 1 == 1).unwrap();
            best = (level, sources[lane as usize], target as u32);
            for v in 0..count {
                seen[v] |= next[v];
            }
            std::mem::swap(&mut frontier, &mut next);
        }
    }
}

/// `d(n)`: the largest rotation distance between two trees of size `n`,
/// with a geodesic between an extremal pair as witness. Sources are
/// restricted to one tree per mirror pair.
pub fn diameter(n: usize, force: bool) -> Result<SearchReport> {
    let start = Instant::now();
    let graph = DenseGraph::build(n, force)?;
    let count = graph.vertex_count() as u32;
    let sources: Vec<u32> = (0..count)
        .filter(|&r| graph.shape(r).mirror().rank() as u32 >= r)
        .collect();
    let (d, s, t) = sources
        .par_chunks(64)
        .map(|chunk| graph.batch_eccentricity(chunk))
        .reduce(|| (0, 0, 0), |a, b| if b.0 > a.0 { b } else { a });
    let labels: Vec<Label> = (1..=n as Label + 1).collect();
    let (ts, tt) = (
        graph.shape(s).to_tree_with_labels(&labels),
        graph.shape(t).to_tree_with_labels(&labels),
    );
    let path = distance(&ts, &tt)?.path;
    Ok(SearchReport {
        distance: d as usize,
        path,
        visited: sources.len() as u64 * count as u64,
        elapsed: start.elapsed(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_diameters() {
        let expected = [0, 0, 1, 2, 4, 5, 7, 9, 11];
        for (n, &d) in expected.iter().enumerate() {
            let r = diameter(n, false).unwrap();
            assert_eq!(r.distance, d, "n={n}");
            let path = r.path.unwrap();
            assert_eq!(path.len(), d + 1);
        }
    }

    #[test]
    fn batched_matches_single_source() {
        let g = DenseGraph::build(6, false).unwrap();
        let sources: Vec<u32> = (0..g.vertex_count() as u32).step_by(3).take(64).collect();
        let (d, s, t) = g.batch_eccentricity(&sources);
        let ecc = sources
            .iter()
            .map(|&s| *g.bfs(s).iter().max().unwrap() as u32)
            .max()
            .unwrap();
        assert_eq!(d, ecc);
        assert_eq!(g.bfs(s)[t as usize] as u32, d);
    }

    #[test]
    fn adjacency_is_symmetric() {
        let g = DenseGraph::build(7, false).unwrap();
        for v in 0..g.vertex_count() as u32 {
            for &w in g.neighbors(v) {
                assert!(g.neighbors(w).contains(&v));
            }
        }
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(DenseGraph::build(13, false), Err(Error::Budget { .. })));
        assert!(guard(13, true).is_ok());
    }
}
