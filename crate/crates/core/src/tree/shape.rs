//! Packed tree shapes: the preorder balanced-parentheses word of a tree,
//! one bit per position, least significant bit first.
//!
//! A node is written `1 L 0 R`, a leaf is the empty word, so a shape of
//! size `n` occupies `2n` bits. Leaf `k` (0-based, left to right) sits just
//! before the `k`-th `0` of the word, which makes leaf indices of any
//! position a popcount away.

use std::fmt;

use super::{Label, Tree};
use crate::error::{Error, Result};

/// Largest size that fits the packed representation.
pub const MAX_PACKED_SIZE: usize = 32;

/// Catalan numbers `C_0 ..= C_32`.
pub const CATALAN: [u64; 33] = {
    let mut c = [0u64; 33];
    c[0] = 1;
    let mut n = 1;
    while n <= 32 {
        // C_n = C_{n-1} * 2(2n-1) / (n+1), exact in u128
        c[n] = ((c[n - 1] as u128 * (2 * (2 * n as u128 - 1))) / (n as u128 + 1)) as u64;
        n += 1;
    }
    c
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    code: u64,
    size: u8,
}

/// Which neighbour of a shape: node position in the word and direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShapeMove {
    pub position: u8,
    pub positive: bool,
}

/// Leaf indices `(a, b, c, d)` describing a rotation, 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LeafQuad {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
}

#[inline]
fn mask(lo: u32, hi: u32) -> u64 {
    // bits lo..=hi
    let upper = if hi >= 63 { u64::MAX } else { (1u64 << (hi + 1)) - 1 };
    upper & (u64::MAX << lo)
}

/// Matching positions and subtree extents of a shape.
struct Layout {
    len: u32,
    matching: [u8; 64],
    end: [u8; 64],
}

impl Layout {
    fn new(shape: Shape) -> Self {
        let len = 2 * shape.size as u32;
        let mut matching = [0u8; 64];
        let mut end = [0u8; 64];
        let mut stack = [0u8; 32];
        let mut top = 0;
        for p in 0..len {
            if shape.bit(p) {
                stack[top] = p as u8;
                top += 1;
            } else {
                top -= 1;
                matching[stack[top] as usize] = p as u8;
            }
        }
        for p in (0..len).rev() {
            if shape.bit(p) {
                let r = matching[p as usize] as u32 + 1;
                end[p as usize] = if r < len && shape.bit(r) {
                    end[r as usize]
                } else {
                    r as u8
                };
            }
        }
        Layout { len, matching, end }
    }
}

impl Shape {
    pub fn leaf() -> Self {
        Shape { code: 0, size: 0 }
    }

    /// Wraps a raw code; checks that it is a well-formed word of `2 * size` bits.
    pub fn from_code(code: u64, size: usize) -> Result<Self> {
        if size > MAX_PACKED_SIZE {
            return Err(Error::Precondition(format!(
                "packed shapes hold at most size {MAX_PACKED_SIZE}"
            )));
        }
        let len = 2 * size as u32;
        if len < 64 && code >> len != 0 {
            return Err(Error::parse(len as usize, "bits beyond the word length"));
        }
        let mut depth = 0i32;
        for p in 0..len {
            depth += if code >> p & 1 == 1 { 1 } else { -1 };
            if depth < 0 {
                return Err(Error::parse(p as usize, "unbalanced word"));
            }
        }
        if depth != 0 {
            return Err(Error::parse(len as usize, "unbalanced word"));
        }
        Ok(Shape { code, size: size as u8 })
    }

    pub fn code(self) -> u64 {
        self.code
    }

    pub fn size(self) -> usize {
        self.size as usize
    }

    #[inline]
    fn bit(self, p: u32) -> bool {
        self.code >> p & 1 == 1
    }

    /// Number of leaves strictly before word position `p`.
    #[inline]
    fn leaves_before(self, p: u32) -> u8 {
        let ones = if p == 0 {
            0
        } else {
            (self.code & mask(0, p - 1)).count_ones()
        };
        (p - ones) as u8
    }

    pub fn from_tree(tree: &Tree) -> Result<Self> {
        if tree.size() > MAX_PACKED_SIZE {
            return Err(Error::Precondition(format!(
                "packed shapes hold at most size {MAX_PACKED_SIZE}"
            )));
        }
        fn write(t: &Tree, pos: &mut u32, code: &mut u64) {
            if let Some((l, r)) = t.children() {
                *code |= 1 << *pos;
                *pos += 1;
                write(l, pos, code);
                *pos += 1;
                write(r, pos, code);
            }
        }
        let mut pos = 0;
        let mut code = 0;
        write(tree, &mut pos, &mut code);
        Ok(Shape {
            code,
            size: tree.size() as u8,
        })
    }

    /// Tree with default labels `1..=size+1`.
    pub fn to_tree(self) -> Tree {
        let labels: Vec<Label> = (1..=self.size as Label + 1).collect();
        self.to_tree_with_labels(&labels)
    }

    /// Tree whose leaves carry `labels` left to right; `labels.len()` must be `size + 1`.
    pub fn to_tree_with_labels(self, labels: &[Label]) -> Tree {
        assert_eq!(labels.len(), self.size() + 1, "label count must be size + 1");
        fn build(s: Shape, pos: &mut u32, leaf: &mut usize, labels: &[Label]) -> Tree {
            let len = 2 * s.size as u32;
            if *pos < len && s.bit(*pos) {
                *pos += 1;
                let l = build(s, pos, leaf, labels);
                *pos += 1;
                let r = build(s, pos, leaf, labels);
                Tree::fork_unchecked(l, r)
            } else {
                let t = Tree::leaf(labels[*leaf]);
                *leaf += 1;
                t
            }
        }
        let mut pos = 0;
        let mut leaf = 0;
        build(self, &mut pos, &mut leaf, labels)
    }

    /// All neighbours in preorder of the rotated node, `+` before `-`.
    pub fn for_each_neighbor(self, mut f: impl FnMut(ShapeMove, Shape)) {
        let lay = Layout::new(self);
        for s in 0..lay.len {
            if !self.bit(s) {
                continue;
            }
            let m = lay.matching[s as usize] as u32;
            if m + 1 < lay.len && self.bit(m + 1) {
                let field = self.code & mask(s + 1, m);
                let code = (self.code & !mask(s + 1, m + 1)) | (field << 1) | (1u64 << (s + 1));
                f(
                    ShapeMove {
                        position: s as u8,
                        positive: true,
                    },
                    Shape { code, size: self.size },
                );
            }
            if s + 1 < lay.len && self.bit(s + 1) {
                let m1 = lay.matching[s as usize + 1] as u32;
                let field = self.code & mask(s + 2, m1);
                let code = (self.code & !mask(s + 1, m1)) | (field >> 1) | (1u64 << m1);
                f(
                    ShapeMove {
                        position: s as u8,
                        positive: false,
                    },
                    Shape { code, size: self.size },
                );
            }
        }
    }

    pub fn neighbors(self) -> Vec<Shape> {
        let mut out = Vec::with_capacity(self.size());
        self.for_each_neighbor(|_, s| out.push(s));
        out
    }

    /// Neighbours together with the leaf indices naming each rotation.
    pub fn for_each_named_neighbor(self, mut f: impl FnMut(ShapeMove, LeafQuad, Shape)) {
        let lay = Layout::new(self);
        self.for_each_neighbor(|mv, next| {
            let s = mv.position as u32;
            let quad = if mv.positive {
                let m = lay.matching[s as usize] as u32;
                let m2 = lay.matching[m as usize + 1] as u32;
                LeafQuad {
                    a: self.leaves_before(s),
                    b: self.leaves_before(m + 1),
                    c: self.leaves_before(m2),
                    d: self.leaves_before(lay.end[s as usize] as u32),
                }
            } else {
                let m = lay.matching[s as usize] as u32;
                let m1 = lay.matching[s as usize + 1] as u32;
                LeafQuad {
                    a: self.leaves_before(s),
                    b: self.leaves_before(m1) + 1,
                    c: self.leaves_before(m),
                    d: self.leaves_before(lay.end[s as usize] as u32),
                }
            };
            f(mv, quad, next)
        });
    }

    /// Left-right mirror image.
    pub fn mirror(self) -> Shape {
        fn go(s: Shape, lay: &Layout, pos: u32, out: &mut u64, at: &mut u32) {
            // subtree rooted at `pos` (a node) is emitted as `1 mirror(R) 0 mirror(L)`
            let m = lay.matching[pos as usize] as u32;
            *out |= 1 << *at;
            *at += 1;
            if m + 1 < lay.len && s.bit(m + 1) {
                go(s, lay, m + 1, out, at);
            }
            *at += 1;
            if s.bit(pos + 1) && pos + 1 < m {
                go(s, lay, pos + 1, out, at);
            }
        }
        if self.size == 0 {
            return self;
        }
        let lay = Layout::new(self);
        let mut out = 0;
        let mut at = 0;
        go(self, &lay, 0, &mut out, &mut at);
        Shape {
            code: out,
            size: self.size,
        }
    }

    /// Index of the shape among all shapes of its size; shapes are ordered
    /// by left-subtree size, then left rank, then right rank.
    pub fn rank(self) -> u64 {
        fn go(lay: &Layout, pos: u32, size: usize) -> u64 {
            if size == 0 {
                return 0;
            }
            let m = lay.matching[pos as usize] as u32;
            let lsize = ((m - pos - 1) / 2) as usize;
            let rsize = size - 1 - lsize;
            let offset: u64 = (0..lsize).map(|j| CATALAN[j] * CATALAN[size - 1 - j]).sum();
            let lr = go(lay, pos + 1, lsize);
            let rr = go(lay, m + 1, rsize);
            offset + lr * CATALAN[rsize] + rr
        }
        let lay = Layout::new(self);
        go(&lay, 0, self.size())
    }

    pub fn unrank(rank: u64, size: usize) -> Result<Shape> {
        if size > MAX_PACKED_SIZE || rank >= CATALAN[size] {
            return Err(Error::Precondition(format!("rank {rank} out of range for size {size}")));
        }
        fn go(mut r: u64, size: usize, pos: u32, code: &mut u64) {
            if size == 0 {
                return;
            }
            let mut lsize = 0;
            loop {
                let block = CATALAN[lsize] * CATALAN[size - 1 - lsize];
                if r < block {
                    break;
                }
                r -= block;
                lsize += 1;
            }
            let rsize = size - 1 - lsize;
            *code |= 1 << pos;
            go(r / CATALAN[rsize], lsize, pos + 1, code);
            go(r % CATALAN[rsize], rsize, pos + 2 + 2 * lsize as u32, code);
        }
        let mut code = 0;
        go(rank, size, 0, &mut code);
        Ok(Shape { code, size: size as u8 })
    }

    /// Every shape of the given size, in rank order.
    pub fn all(size: usize) -> impl Iterator<Item = Shape> {
        assert!(size <= MAX_PACKED_SIZE);
        (0..CATALAN[size]).map(move |r| Shape::unrank(r, size).expect("rank in range"))
    }

    /// Length of the rightmost branch.
    pub fn right_height(self) -> usize {
        let lay = Layout::new(self);
        let mut h = 0;
        let mut pos = 0u32;
        while pos < lay.len && self.bit(pos) {
            h += 1;
            pos = lay.matching[pos as usize] as u32 + 1;
        }
        h
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in 0..2 * self.size as u32 {
            f.write_str(if self.bit(p) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::neighbors;

    #[test]
    fn catalan_table() {
        assert_eq!(&CATALAN[..8], &[1, 1, 2, 5, 14, 42, 132, 429]);
        assert_eq!(CATALAN[10], 16796);
        assert_eq!(CATALAN[11], 58786);
        assert_eq!(CATALAN[12], 208012);
    }

    #[test]
    fn rank_unrank_bijection() {
        for n in 0..=9 {
            let mut seen = std::collections::HashSet::new();
            for (r, s) in Shape::all(n).enumerate() {
                assert_eq!(s.rank(), r as u64);
                assert!(seen.insert(s.code()));
                assert_eq!(Shape::from_tree(&s.to_tree()).unwrap(), s);
            }
        }
    }

    #[test]
    fn packed_neighbors_agree_with_tree_rotations() {
        for n in 0..=7 {
            for s in Shape::all(n) {
                let t = s.to_tree();
                let expected: Vec<Shape> = neighbors(&t)
                    .into_iter()
                    .map(|(_, u)| Shape::from_tree(&u).unwrap())
                    .collect();
                assert_eq!(s.neighbors(), expected, "tree {t}");
            }
        }
    }

    #[test]
    fn packed_names_agree_with_tree_names() {
        use crate::rotation::pair_name;
        for n in 1..=7 {
            for s in Shape::all(n) {
                let t = s.to_tree();
                s.for_each_named_neighbor(|_, q, u| {
                    let name = pair_name(&t, &u.to_tree()).unwrap();
                    assert_eq!(
                        (name.a, name.b, name.c, name.d),
                        (q.a as u32 + 1, q.b as u32 + 1, q.c as u32 + 1, q.d as u32 + 1),
                        "{t} -> {}",
                        u.to_tree()
                    );
                });
            }
        }
    }

    #[test]
    fn mirror_and_right_height() {
        for n in 0..=8 {
            for s in Shape::all(n) {
                let t = s.to_tree();
                assert_eq!(s.mirror(), Shape::from_tree(&t.mirror()).unwrap());
                assert_eq!(s.right_height(), t.right_height());
            }
        }
    }

    #[test]
    fn rejects_malformed_codes() {
        assert!(Shape::from_code(0b10, 1).is_err());
        assert!(Shape::from_code(0b1, 1).is_ok());
        assert!(Shape::from_code(0b111, 1).is_err());
    }
}
