//! Exact computations on the rotation graph: distances, diameters,
//! weighted distances such as `Dist_I`, geodesics and graph statistics.
//!
//! Single pairs are handled on the implicit graph of packed shapes; sweeps
//! over a whole size go through the dense engine in [`dense`].

pub mod dense;

use std::collections::{BTreeMap, VecDeque};
use std::time::{Duration, Instant};

use rustc_hash::{FxHashMap, FxHashSet};
use serde::{Serialize, Serializer};

use crate::collapse::{is_collapsing_name, LabelSet};
use crate::covering::Obligation;
use crate::error::{Error, Result};
use crate::rotation::{PairName, Sign};
use crate::tree::{Label, LeafQuad, Shape, Tree};

pub use dense::{diameter, DenseGraph, DENSE_LIMIT};

/// Outcome of a search: the distance (or diameter), an optional witness
/// path, how many vertices were touched and how long it took.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub distance: usize,
    #[serde(serialize_with = "ser_path")]
    pub path: Option<Vec<Tree>>,
    pub visited: u64,
    #[serde(rename = "millis", serialize_with = "ser_millis")]
    pub elapsed: Duration,
}

fn ser_path<S: Serializer>(p: &Option<Vec<Tree>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match p {
        None => s.serialize_none(),
        Some(p) => s.collect_seq(p.iter().map(|t| t.to_string())),
    }
}

fn ser_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

/// Sizes and labels must agree for two trees to be connected by rotations.
pub fn check_compatible(t: &Tree, u: &Tree) -> Result<()> {
    if t.size() != u.size() {
        return Err(Error::SizeMismatch(t.size(), u.size()));
    }
    if t.labels() != u.labels() {
        return Err(Error::LabelMismatch);
    }
    Ok(())
}

pub(crate) fn quad_name(q: LeafQuad, positive: bool, labels: &[Label]) -> PairName {
    let l = |i: u8| labels[i as usize];
    let sign = if positive { Sign::Positive } else { Sign::Negative };
    PairName::new(l(q.a), l(q.b), l(q.c), l(q.d), sign)
}

fn shapes_to_path(shapes: &[Shape], labels: &[Label]) -> Vec<Tree> {
    shapes.iter().map(|s| s.to_tree_with_labels(labels)).collect()
}

type Parents = FxHashMap<Shape, (Shape, u32)>;

fn trace(parents: &Parents, mut s: Shape) -> Vec<Shape> {
    let mut out = vec![s];
    while let Some(&(p, d)) = parents.get(&s) {
        if d == 0 {
            break;
        }
        out.push(p);
        s = p;
    }
    out
}

/// Exact rotation distance by bidirectional breadth-first search, with a
/// geodesic as witness.
pub fn distance(t: &Tree, u: &Tree) -> Result<SearchReport> {
    check_compatible(t, u)?;
    let start = Instant::now();
    let labels = t.labels();
    let (s, g) = (t.shape()?, u.shape()?);
    if s == g {
        return Ok(SearchReport {
            distance: 0,
            path: Some(vec![t.clone()]),
            visited: 1,
            elapsed: start.elapsed(),
        });
    }
    let mut side: [Parents; 2] = [Parents::default(), Parents::default()];
    side[0].insert(s, (s, 0));
    side[1].insert(g, (g, 0));
    let mut frontier = [vec![s], vec![g]];
    let mut depth = [0u32; 2];
    loop {
        let k = usize::from(frontier[1].len() < frontier[0].len());
        let (this, other) = if k == 0 {
            let (a, b) = side.split_at_mut(1);
            (&mut a[0], &b[0])
        } else {
            let (a, b) = side.split_at_mut(1);
            (&mut b[0], &a[0])
        };
        let d = depth[k] + 1;
        let mut next = Vec::new();
        let mut best: Option<(u32, Shape)> = None;
        for &v in &frontier[k] {
            v.for_each_neighbor(|_, w| {
                if this.contains_key(&w) {
                    return;
                }
                this.insert(w, (v, d));
                if let Some(&(_, dw)) = other.get(&w) {
                    if best.is_none_or(|(b, _)| d + dw < b) {
                        best = Some((d + dw, w));
                    }
                }
                next.push(w);
            });
        }
        depth[k] = d;
        frontier[k] = next;
        if let Some((dist, meet)) = best {
            let mut left = trace(&side[0], meet);
            left.reverse();
            let right = trace(&side[1], meet);
            left.extend_from_slice(&right[1..]);
            debug_assert_eq!(left.len() as u32, dist + 1);
            return Ok(SearchReport {
                distance: dist as usize,
                path: Some(shapes_to_path(&left, &labels)),
                visited: (side[0].len() + side[1].len()) as u64,
                elapsed: start.elapsed(),
            });
        }
        if frontier[k].is_empty() {
            return Err(Error::Inconsistent("rotation graph is disconnected".into()));
        }
    }
}

/// Minimum, over all rotation paths from `t` to `u`, of the number of steps
/// whose name satisfies `weigh`. Deque-based 0/1 search on the whole
/// component, so the minimizing path need not be a geodesic.
pub fn min_weight(t: &Tree, u: &Tree, weigh: impl Fn(&PairName) -> bool) -> Result<SearchReport> {
    check_compatible(t, u)?;
    let start = Instant::now();
    let labels = t.labels();
    let (s, g) = (t.shape()?, u.shape()?);
    let mut cost: FxHashMap<Shape, (u32, Shape)> = FxHashMap::default();
    let mut done: FxHashSet<Shape> = FxHashSet::default();
    cost.insert(s, (0, s));
    let mut deque = VecDeque::from([s]);
    while let Some(v) = deque.pop_front() {
        if !done.insert(v) {
            continue;
        }
        if v == g {
            break;
        }
        let cv = cost[&v].0;
        v.for_each_named_neighbor(|mv, quad, w| {
            let step = u32::from(weigh(&quad_name(quad, mv.positive, &labels)));
            let cw = cv + step;
            if cost.get(&w).is_none_or(|&(c, _)| cw < c) {
                cost.insert(w, (cw, v));
                if step == 0 {
                    deque.push_front(w);
                } else {
                    deque.push_back(w);
                }
            }
        });
    }
    let mut path = vec![g];
    let mut at = g;
    while at != s {
        at = cost[&at].1;
        path.push(at);
    }
    path.reverse();
    Ok(SearchReport {
        distance: cost[&g].0 as usize,
        path: Some(shapes_to_path(&path, &labels)),
        visited: cost.len() as u64,
        elapsed: start.elapsed(),
    })
}

/// `Dist_I`: the least number of `I`-collapsing steps on a path from `t` to
/// `u`, computed on the dense graph of their size.
pub fn dist_i(t: &Tree, u: &Tree, set: &LabelSet) -> Result<SearchReport> {
    check_compatible(t, u)?;
    let start = Instant::now();
    let graph = DenseGraph::build(t.size(), false)?;
    dist_i_on(&graph, t, u, set).map(|mut r| {
        r.elapsed = start.elapsed();
        r
    })
}

/// [`dist_i`] on a prebuilt graph.
pub fn dist_i_on(graph: &DenseGraph, t: &Tree, u: &Tree, set: &LabelSet) -> Result<SearchReport> {
    check_compatible(t, u)?;
    let start = Instant::now();
    let labels = t.labels();
    let (cost, path) = graph.min_weight(graph.index(t)?, graph.index(u)?, &labels, |name| {
        is_collapsing_name(name, set, &labels)
    });
    let path: Vec<Shape> = path.into_iter().map(|v| graph.shape(v)).collect();
    Ok(SearchReport {
        distance: cost,
        path: Some(shapes_to_path(&path, &labels)),
        visited: graph.vertex_count() as u64,
        elapsed: start.elapsed(),
    })
}

/// Least number of steps matching `obligation` on any path from `t` to `u`.
pub fn min_matching(t: &Tree, u: &Tree, obligation: &Obligation) -> Result<SearchReport> {
    min_weight(t, u, |name| obligation.matches(name))
}

/// Whether every rotation path from `t` to `u` has a step matching `obligation`.
pub fn unavoidable(t: &Tree, u: &Tree, obligation: &Obligation) -> Result<bool> {
    check_compatible(t, u)?;
    let labels = t.labels();
    let (s, g) = (t.shape()?, u.shape()?);
    let mut seen: FxHashSet<Shape> = FxHashSet::from_iter([s]);
    let mut queue = vec![s];
    while let Some(v) = queue.pop() {
        if v == g {
            return Ok(false);
        }
        v.for_each_named_neighbor(|mv, quad, w| {
            if !obligation.matches(&quad_name(quad, mv.positive, &labels)) && seen.insert(w) {
                queue.push(w);
            }
        });
    }
    Ok(true)
}

/// Every tree reachable from `t` through steps whose names avoid
/// `obligation`; a target outside it cannot be reached without a matching step.
pub fn avoiding_component(t: &Tree, obligation: &Obligation) -> Result<Vec<Tree>> {
    let labels = t.labels();
    let s = t.shape()?;
    let mut seen: FxHashSet<Shape> = FxHashSet::from_iter([s]);
    let mut order = vec![s];
    let mut k = 0;
    while k < order.len() {
        let v = order[k];
        k += 1;
        v.for_each_named_neighbor(|mv, quad, w| {
            if !obligation.matches(&quad_name(quad, mv.positive, &labels)) && seen.insert(w) {
                order.push(w);
            }
        });
    }
    Ok(shapes_to_path(&order, &labels))
}

/// Breadth-first distances from `root`, up to `radius`.
fn ball(root: Shape, radius: u32) -> FxHashMap<Shape, u32> {
    let mut dist = FxHashMap::from_iter([(root, 0)]);
    let mut frontier = vec![root];
    for d in 1..=radius {
        let mut next = Vec::new();
        for v in frontier {
            v.for_each_neighbor(|_, w| {
                if let std::collections::hash_map::Entry::Vacant(e) = dist.entry(w) {
                    e.insert(d);
                    next.push(w);
                }
            });
        }
        frontier = next;
    }
    dist
}

/// Shortest paths from `t` to `u`, at most `limit` of them, in preorder of
/// the rotations taken.
pub fn enumerate_geodesics(t: &Tree, u: &Tree, limit: usize) -> Result<Vec<Vec<Tree>>> {
    let d = distance(t, u)?.distance as u32;
    let labels = t.labels();
    let (s, g) = (t.shape()?, u.shape()?);
    let to_goal = ball(g, d);
    let mut out = Vec::new();
    let mut stack = vec![s];
    fn walk(stack: &mut Vec<Shape>, to_goal: &FxHashMap<Shape, u32>, limit: usize, out: &mut Vec<Vec<Shape>>) {
        if out.len() >= limit {
            return;
        }
        let v = *stack.last().unwrap();
        let dv = to_goal[&v];
        if dv == 0 {
            out.push(stack.clone());
            return;
        }
        for w in v.neighbors() {
            if to_goal.get(&w) == Some(&(dv - 1)) {
                stack.push(w);
                walk(stack, to_goal, limit, out);
                stack.pop();
            }
        }
    }
    if limit > 0 {
        walk(&mut stack, &to_goal, limit, &mut out);
    }
    Ok(out.iter().map(|p| shapes_to_path(p, &labels)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphStats {
    pub size: usize,
    pub vertices: u64,
    /// degree → number of vertices
    pub degrees: BTreeMap<usize, u64>,
}

/// Vertex count and degree histogram of the rotation graph of a size.
pub fn graph_stats(n: usize, force: bool) -> Result<GraphStats> {
    dense::guard(n, force)?;
    let mut degrees = BTreeMap::new();
    let mut vertices = 0;
    for s in Shape::all(n) {
        let mut deg = 0;
        s.for_each_neighbor(|_, _| deg += 1);
        *degrees.entry(deg).or_insert(0) += 1;
        vertices += 1;
    }
    Ok(GraphStats {
        size: n,
        vertices,
        degrees,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::{neighbors, path_names};

    fn sp(s: &str) -> Tree {
        Tree::spine(s).unwrap()
    }

    /// Plain BFS over labelled trees, independent of the packed engine.
    fn naive_distance(t: &Tree, u: &Tree) -> usize {
        let mut seen = std::collections::HashMap::from([(t.to_string(), 0)]);
        let mut queue = VecDeque::from([t.clone()]);
        while let Some(v) = queue.pop_front() {
            let d = seen[&v.to_string()];
            if &v == u {
                return d;
            }
            for (_, w) in neighbors(&v) {
                seen.entry(w.to_string()).or_insert_with(|| {
                    queue.push_back(w.clone());
                    d + 1
                });
            }
        }
        unreachable!()
    }

    #[test]
    fn distance_examples() {
        assert_eq!(distance(&sp("1100"), &sp("0011")).unwrap().distance, 4);
        assert_eq!(distance(&sp("1111"), &sp("0000")).unwrap().distance, 3);
        let t = sp("0101");
        let r = distance(&t, &t).unwrap();
        assert_eq!((r.distance, r.path.unwrap().len()), (0, 1));
    }

    #[test]
    fn distance_rejects_mismatch() {
        assert_eq!(distance(&sp("11"), &sp("111")).unwrap_err(), Error::SizeMismatch(2, 3));
        let t: Tree = "(1 (2 3))".parse().unwrap();
        let u: Tree = "((1 2) 4)".parse().unwrap();
        assert_eq!(distance(&t, &u).unwrap_err(), Error::LabelMismatch);
    }

    #[test]
    fn distance_matches_naive_bfs() {
        for n in 0..=5 {
            let all = Tree::all(n);
            for t in &all {
                for u in all.iter().step_by(3) {
                    let r = distance(t, u).unwrap();
                    assert_eq!(r.distance, naive_distance(t, u), "{t} {u}");
                    let path = r.path.unwrap();
                    assert_eq!(path.len(), r.distance + 1);
                    assert_eq!((&path[0], path.last().unwrap()), (t, u));
                    path_names(&path).unwrap();
                }
            }
        }
    }

    #[test]
    fn distance_keeps_labels() {
        let t: Tree = "(2 (4 (7 9)))".parse().unwrap();
        let u: Tree = "(((2 4) 7) 9)".parse().unwrap();
        let r = distance(&t, &u).unwrap();
        assert_eq!(r.distance, 2);
        assert_eq!(r.path.unwrap()[1].labels(), vec![2, 4, 7, 9]);
    }

    #[test]
    fn dist_i_examples() {
        let (t, u) = (sp("1100"), sp("0011"));
        assert_eq!(dist_i(&t, &u, &"4,5".parse().unwrap()).unwrap().distance, 2);
        assert_eq!(dist_i(&t, &u, &LabelSet::empty()).unwrap().distance, 0);
        let all = LabelSet::interval(1, 5);
        assert_eq!(dist_i(&t, &u, &all).unwrap().distance, 4);
    }

    #[test]
    fn dense_and_implicit_weights_agree() {
        let graph = DenseGraph::build(5, false).unwrap();
        let all = Tree::all(5);
        let set: LabelSet = "2,5".parse().unwrap();
        let labels = all[0].labels();
        for t in all.iter().step_by(4) {
            for u in all.iter().step_by(7) {
                let dense = dist_i_on(&graph, t, u, &set).unwrap().distance;
                let implicit = min_weight(t, u, |n| is_collapsing_name(n, &set, &labels)).unwrap();
                assert_eq!(dense, implicit.distance);
            }
        }
    }

    #[test]
    fn min_weight_path_is_consistent() {
        let (t, u) = (sp("11100"), sp("00111"));
        let set: LabelSet = "3,4".parse().unwrap();
        let r = dist_i(&t, &u, &set).unwrap();
        let path = r.path.unwrap();
        let labels = t.labels();
        let weight = path_names(&path)
            .unwrap()
            .iter()
            .filter(|n| is_collapsing_name(n, &set, &labels))
            .count();
        assert_eq!(weight, r.distance);
    }

    #[test]
    fn unavoidable_agrees_with_min_matching() {
        let (t, u) = (sp("1100"), sp("0011"));
        for ob in ["+(_,2,_,_)", "-(_,_,_,_)", "+(_,_,3,_) | -(_,_,_,5)", "+(1,2,2,3)"] {
            let ob: Obligation = ob.parse().unwrap();
            let count = min_matching(&t, &u, &ob).unwrap().distance;
            assert_eq!(unavoidable(&t, &u, &ob).unwrap(), count > 0, "{ob}");
        }
    }

    #[test]
    fn avoiding_component_decides_unavoidability() {
        let t = sp("1100");
        for ob in ["+(_,2,_,_)", "-(_,_,_,_)", "+(_,_,3,_) | -(_,_,_,5)"] {
            let ob: Obligation = ob.parse().unwrap();
            let comp = avoiding_component(&t, &ob).unwrap();
            for u in Tree::all(4) {
                assert_eq!(unavoidable(&t, &u, &ob).unwrap(), !comp.contains(&u), "{ob} {u}");
            }
        }
    }

    #[test]
    fn all_target_weights_match_single_target() {
        let g = DenseGraph::build(5, false).unwrap();
        let labels: Vec<Label> = (1..=6).collect();
        let set = LabelSet::interval(3, 4);
        let weigh = |n: &PairName| is_collapsing_name(n, &set, &labels);
        let all = g.min_weights_from(7, &labels, weigh);
        for v in 0..g.vertex_count() as u32 {
            assert_eq!(all[v as usize] as usize, g.min_weight(7, v, &labels, weigh).0);
        }
    }

    #[test]
    fn geodesics() {
        let t = sp("0101");
        assert_eq!(enumerate_geodesics(&t, &t, 10).unwrap(), vec![vec![t.clone()]]);
        let (t, u) = (sp("111"), sp("000"));
        let all = enumerate_geodesics(&t, &u, 100).unwrap();
        // the pentagon has two routes of length 2 and 3; only one is shortest
        assert_eq!(all.len(), 1);
        assert_eq!(all[0].len(), 3);
        let many = enumerate_geodesics(&sp("1100"), &sp("0011"), 3).unwrap();
        assert_eq!(many.len(), 3);
        assert!(many.iter().all(|p| p.len() == 5));
    }

    #[test]
    fn stats() {
        let s = graph_stats(4, false).unwrap();
        assert_eq!(s.vertices, 14);
        assert_eq!(s.degrees, BTreeMap::from([(3, 14)]));
        assert_eq!(graph_stats(10, false).unwrap().vertices, 16796);
    }
}
