//! Trees of size `n` as triangulations of an `(n+2)`-gon, with rotations
//! acting as diagonal flips.
//!
//! Vertices are `0..m`, the marked edge is the side `(0, m−1)`, and the
//! root triangle stands on it. The `i`-th leaf is the side `(i−1, i)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rotation::{RotationEdge, Sign};
use crate::tree::Tree;

pub type Diagonal = (usize, usize);

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangulation {
    m: usize,
    diagonals: BTreeSet<Diagonal>,
}

fn sorted((a, b): Diagonal) -> Diagonal {
    (a.min(b), a.max(b))
}

fn crosses((a, b): Diagonal, (c, d): Diagonal) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

impl Triangulation {
    /// Checks that the diagonals form a triangulation of the `m`-gon. The
    /// 2-gon (a single edge) is dual to the one-leaf tree.
    pub fn new(m: usize, diagonals: impl IntoIterator<Item = Diagonal>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidTriangulation(msg));
        if m < 2 {
            return bad(format!("a polygon needs at least 2 vertices, got {m}"));
        }
        let mut set = BTreeSet::new();
        for d in diagonals {
            let (a, b) = sorted(d);
            if b >= m || b - a < 2 || (a == 0 && b == m - 1) {
                return bad(format!("({a},{b}) is not a diagonal of the {m}-gon"));
            }
            if !set.insert((a, b)) {
                return bad(format!("({a},{b}) repeated"));
            }
        }
        if set.len() != m.saturating_sub(3) {
            return bad(format!("{} diagonals, expected {}", set.len(), m.saturating_sub(3)));
        }
        for &d in &set {
            if let Some(&e) = set.iter().find(|&&e| crosses(d, e)) {
                return bad(format!("{d:?} crosses {e:?}"));
            }
        }
        Ok(Triangulation { m, diagonals: set })
    }

    pub fn polygon_size(&self) -> usize {
        self.m
    }

    pub fn diagonals(&self) -> impl Iterator<Item = Diagonal> + '_ {
        self.diagonals.iter().copied()
    }

    pub fn contains(&self, d: Diagonal) -> bool {
        self.diagonals.contains(&sorted(d))
    }

    /// Sides and diagonals.
    fn is_edge(&self, d: Diagonal) -> bool {
        let (a, b) = sorted(d);
        b == a + 1 || (a == 0 && b == self.m - 1) || self.diagonals.contains(&(a, b))
    }

    /// Third vertex of the triangle standing on `(a, b)` strictly between them.
    fn apex_inside(&self, (a, b): Diagonal) -> Option<usize> {
        (a + 1..b).find(|&x| self.is_edge((a, x)) && self.is_edge((x, b)))
    }

    fn apex_outside(&self, (a, b): Diagonal) -> Option<usize> {
        (0..a)
            .chain(b + 1..self.m)
            .find(|&x| self.is_edge((a, x)) && self.is_edge((x, b)))
    }

    /// Replaces `d` by the other diagonal of the quadrilateral around it.
    pub fn flip(&self, d: Diagonal) -> Result<(Triangulation, Diagonal)> {
        let d = sorted(d);
        if !self.diagonals.contains(&d) {
            return Err(Error::InvalidTriangulation(format!("{d:?} is not a diagonal here")));
        }
        let x = self.apex_inside(d).expect("triangulated");
        let y = self.apex_outside(d).expect("triangulated");
        let new = sorted((x, y));
        let mut diagonals = self.diagonals.clone();
        diagonals.remove(&d);
        diagonals.insert(new);
        Ok((Triangulation { m: self.m, diagonals }, new))
    }

    /// Every triangulation one flip away, with the flipped diagonal.
    pub fn flips(&self) -> Vec<(Diagonal, Triangulation)> {
        self.diagonals()
            .map(|d| (d, self.flip(d).expect("own diagonal").0))
            .collect()
    }
}

impl fmt::Display for Triangulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={}; diag=", self.m)?;
        for (k, (a, b)) in self.diagonals.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

impl FromStr for Triangulation {
    type Err = Error;

    /// `m=6; diag=(0,2),(2,4),(4,0)`
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::parse(0, msg.to_string());
        let (m, diag) = s.split_once(';').ok_or_else(|| bad("expected `m=..; diag=..`"))?;
        let m: usize = m
            .trim()
            .strip_prefix("m=")
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| bad("expected m=<vertices>"))?;
        let diag = diag.trim().strip_prefix("diag=").ok_or_else(|| bad("expected diag="))?;
        let mut ds = Vec::new();
        for part in diag.split(')').map(str::trim).filter(|p| !p.is_empty()) {
            let inner = part
                .trim_start_matches(',')
                .trim()
                .strip_prefix('(')
                .ok_or_else(|| bad("expected (a,b)"))?;
            let (a, b) = inner.split_once(',').ok_or_else(|| bad("expected (a,b)"))?;
            let a = a.trim().parse().map_err(|_| bad("bad vertex"))?;
            let b = b.trim().parse().map_err(|_| bad("bad vertex"))?;
            ds.push((a, b));
        }
        Triangulation::new(m, ds)
    }
}

impl Serialize for Triangulation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// The triangulation dual to `t`: every non-root node spans a diagonal.
pub fn to_triangulation(t: &Tree) -> Triangulation {
    fn go(t: &Tree, lo: usize, root: bool, out: &mut BTreeSet<Diagonal>) -> usize {
        match t.children() {
            None => lo + 1,
            Some((l, r)) => {
                let k = go(l, lo, false, out);
                let hi = go(r, k, false, out);
                if !root {
                    out.insert((lo, hi));
                }
                hi
            }
        }
    }
    let mut diagonals = BTreeSet::new();
    go(t, 0, true, &mut diagonals);
    Triangulation {
        m: t.size() + 2,
        diagonals,
    }
}

/// Inverse of [`to_triangulation`], with default labels.
pub fn from_triangulation(tri: &Triangulation) -> Tree {
    fn go(tri: &Triangulation, lo: usize, hi: usize, next: &mut u32) -> Tree {
        if hi == lo + 1 {
            *next += 1;
            return Tree::leaf(*next - 1);
        }
        let k = tri.apex_inside((lo, hi)).expect("validated triangulation");
        let l = go(tri, lo, k, next);
        Tree::fork_unchecked(l, go(tri, k, hi, next))
    }
    go(tri, 0, tri.m - 1, &mut 1)
}

/// The diagonal a rotation removes from the dual triangulation.
pub fn diagonal_of(t: &Tree, edge: &RotationEdge) -> Option<Diagonal> {
    let mut lo = 0;
    let mut node = t;
    for &b in edge.address.bits() {
        let (l, r) = node.children()?;
        if b {
            lo += l.leaf_count();
            node = r;
        } else {
            node = l;
        }
    }
    let (l, r) = node.children()?;
    let span = match edge.sign {
        Sign::Positive => {
            r.children()?;
            (lo + l.leaf_count(), lo + node.leaf_count())
        }
        Sign::Negative => {
            l.children()?;
            (lo, lo + l.leaf_count())
        }
    };
    Some(span)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::neighbors;

    /// All triangulations of the polygon on `vs`, built independently by
    /// choosing the apex over the first side.
    fn triangulate(lo: usize, hi: usize) -> Vec<Vec<Diagonal>> {
        if hi - lo < 2 {
            return vec![vec![]];
        }
        let mut out = vec![];
        for k in lo + 1..hi {
            for a in triangulate(lo, k) {
                for b in triangulate(k, hi) {
                    let mut d = a.clone();
                    d.extend(&b);
                    if k - lo >= 2 {
                        d.push((lo, k));
                    }
                    if hi - k >= 2 {
                        d.push((k, hi));
                    }
                    out.push(d);
                }
            }
        }
        out
    }

    #[test]
    fn hexagon_has_fourteen() {
        let all = triangulate(0, 5);
        assert_eq!(all.len(), 14);
        for d in all {
            let tri = Triangulation::new(6, d).unwrap();
            assert_eq!(tri.flips().len(), 3);
        }
    }

    #[test]
    fn round_trip() {
        for n in 1..=7 {
            for t in Tree::all(n) {
                let tri = to_triangulation(&t);
                assert_eq!(tri.diagonals().count(), n - 1);
                Triangulation::new(tri.m, tri.diagonals()).unwrap();
                assert_eq!(from_triangulation(&tri), t);
            }
        }
        let t = Tree::spine("1").unwrap();
        assert_eq!(to_triangulation(&t).to_string(), "m=3; diag=");
    }

    #[test]
    fn text_form() {
        let tri: Triangulation = "m=6; diag=(0,2),(2,4),(4,0)".parse().unwrap();
        assert_eq!(tri.to_string(), "m=6; diag=(0,2),(0,4),(2,4)");
        assert!("m=6; diag=(0,3),(1,4),(0,4)".parse::<Triangulation>().is_err());
        assert!("m=6; diag=(0,2)".parse::<Triangulation>().is_err());
        assert!("m=6; diag=(0,5),(0,2),(0,3)".parse::<Triangulation>().is_err());
    }

    #[test]
    fn flips_are_involutions() {
        let tri: Triangulation = "m=7; diag=(0,2),(2,4),(4,6),(0,4)".parse().unwrap();
        for d in tri.diagonals() {
            let (next, new) = tri.flip(d).unwrap();
            assert_eq!(next.flip(new).unwrap().0, tri);
        }
        assert!(tri.flip((1, 3)).is_err());
    }

    #[test]
    fn rotations_are_flips() {
        for n in 1..=6 {
            for t in Tree::all(n) {
                let tri = to_triangulation(&t);
                let mut via_rotation: Vec<Triangulation> = neighbors(&t)
                    .iter()
                    .map(|(edge, u)| {
                        let d = diagonal_of(&t, edge).unwrap();
                        let flipped = tri.flip(d).unwrap().0;
                        assert_eq!(to_triangulation(u), flipped);
                        flipped
                    })
                    .collect();
                let mut via_flip: Vec<Triangulation> = tri.flips().into_iter().map(|(_, x)| x).collect();
                via_rotation.sort_by_key(|x| x.to_string());
                via_flip.sort_by_key(|x| x.to_string());
                assert_eq!(via_rotation, via_flip);
            }
        }
    }
}
