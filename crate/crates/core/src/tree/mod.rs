//! Rooted ordered binary trees with increasing leaf labels.
//!
//! Trees are immutable and share structure: every rewrite rebuilds only the
//! path from the root to the changed subtree.

mod address;
mod shape;
mod text;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

pub use address::Address;
pub use shape::{LeafQuad, Shape, ShapeMove, CATALAN, MAX_PACKED_SIZE};

use crate::error::{Error, Result};

pub type Label = u32;

#[derive(Clone, Eq)]
pub struct Tree(Arc<Node>);

#[derive(PartialEq, Eq, Hash)]
enum Node {
    Leaf(Label),
    Fork {
        left: Tree,
        right: Tree,
        size: usize,
        first: Label,
        last: Label,
    },
}

impl PartialEq for Tree {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Hash for Tree {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Tree {
    pub fn leaf(label: Label) -> Tree {
        Tree(Arc::new(Node::Leaf(label)))
    }

    /// `left ∨ right`; the labels of `left` must all be smaller than those of `right`.
    pub fn join(left: Tree, right: Tree) -> Result<Tree> {
        if left.last_label() >= right.first_label() {
            return Err(Error::LabelOrder {
                prev: left.last_label(),
                next: right.first_label(),
            });
        }
        Ok(Tree::fork_unchecked(left, right))
    }

    pub(crate) fn fork_unchecked(left: Tree, right: Tree) -> Tree {
        let size = left.size() + right.size() + 1;
        let first = left.first_label();
        let last = right.last_label();
        Tree(Arc::new(Node::Fork {
            left,
            right,
            size,
            first,
            last,
        }))
    }

    /// Right comb `Sp(1^n)` with default labels.
    pub fn right_comb(n: usize) -> Tree {
        Tree::from_spine(&vec![true; n])
    }

    /// Left comb `Sp(0^n)` with default labels.
    pub fn left_comb(n: usize) -> Tree {
        Tree::from_spine(&vec![false; n])
    }

    /// The thin tree with the given spine (`true` = 1), default labels.
    ///
    /// `Sp(0α) = Sp(α) ∨ •`, `Sp(1α) = • ∨ Sp(α)`, `Sp(0) = Sp(1) = • ∨ •`.
    pub fn from_spine(spine: &[bool]) -> Tree {
        fn build(spine: &[bool], next: &mut Label) -> Tree {
            match spine.split_first() {
                None => {
                    let t = Tree::leaf(*next);
                    *next += 1;
                    t
                }
                Some((_, [])) => {
                    let l = build(&[], next);
                    let r = build(&[], next);
                    Tree::fork_unchecked(l, r)
                }
                Some((false, rest)) => {
                    let l = build(rest, next);
                    let r = build(&[], next);
                    Tree::fork_unchecked(l, r)
                }
                Some((true, rest)) => {
                    let l = build(&[], next);
                    let r = build(rest, next);
                    Tree::fork_unchecked(l, r)
                }
            }
        }
        let mut next = 1;
        build(spine, &mut next)
    }

    /// Thin tree from a 0/1 string.
    pub fn spine(spine: &str) -> Result<Tree> {
        let bits = spine
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::parse(i, format!("unexpected {c:?} in spine"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Tree::from_spine(&bits))
    }

    /// The spine of a thin tree, choosing the variant ending in `0`; `None`
    /// when the tree is not thin.
    pub fn spine_of(&self) -> Option<String> {
        let mut out = String::new();
        let mut t = self;
        while let Some((l, r)) = t.children() {
            match (l.is_leaf(), r.is_leaf()) {
                (true, true) => {
                    out.push('0');
                    break;
                }
                (false, true) => {
                    out.push('0');
                    t = l;
                }
                (true, false) => {
                    out.push('1');
                    t = r;
                }
                (false, false) => return None,
            }
        }
        Some(out)
    }

    /// Number of internal nodes.
    pub fn size(&self) -> usize {
        match &*self.0 {
            Node::Leaf(_) => 0,
            Node::Fork { size, .. } => *size,
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.size() + 1
    }

    pub fn is_leaf(&self) -> bool {
        matches!(&*self.0, Node::Leaf(_))
    }

    /// The label of a single-leaf tree.
    pub fn label(&self) -> Option<Label> {
        match &*self.0 {
            Node::Leaf(l) => Some(*l),
            Node::Fork { .. } => None,
        }
    }

    pub fn children(&self) -> Option<(&Tree, &Tree)> {
        match &*self.0 {
            Node::Leaf(_) => None,
            Node::Fork { left, right, .. } => Some((left, right)),
        }
    }

    pub fn first_label(&self) -> Label {
        match &*self.0 {
            Node::Leaf(l) => *l,
            Node::Fork { first, .. } => *first,
        }
    }

    pub fn last_label(&self) -> Label {
        match &*self.0 {
            Node::Leaf(l) => *l,
            Node::Fork { last, .. } => *last,
        }
    }

    /// Leaf labels, left to right.
    pub fn labels(&self) -> Vec<Label> {
        let mut out = Vec::with_capacity(self.leaf_count());
        self.for_each_leaf(&mut |l| out.push(l));
        out
    }

    fn for_each_leaf(&self, f: &mut impl FnMut(Label)) {
        match &*self.0 {
            Node::Leaf(l) => f(*l),
            Node::Fork { left, right, .. } => {
                left.for_each_leaf(f);
                right.for_each_leaf(f);
            }
        }
    }

    pub fn contains_label(&self, label: Label) -> bool {
        self.leaf_address(label).is_ok()
    }

    pub fn has_default_labels(&self) -> bool {
        self.labels().iter().enumerate().all(|(i, l)| *l == i as Label + 1)
    }

    /// Same shape, labels replaced left to right; they must strictly increase.
    pub fn with_labels(&self, labels: &[Label]) -> Result<Tree> {
        if labels.len() != self.leaf_count() {
            return Err(Error::Precondition(format!(
                "{} labels supplied for {} leaves",
                labels.len(),
                self.leaf_count()
            )));
        }
        check_increasing(labels)?;
        fn go(t: &Tree, labels: &[Label], next: &mut usize) -> Tree {
            match t.children() {
                None => {
                    let l = Tree::leaf(labels[*next]);
                    *next += 1;
                    l
                }
                Some((l, r)) => {
                    let l = go(l, labels, next);
                    let r = go(r, labels, next);
                    Tree::fork_unchecked(l, r)
                }
            }
        }
        let mut next = 0;
        Ok(go(self, labels, &mut next))
    }

    pub fn with_default_labels(&self) -> Tree {
        let labels: Vec<Label> = (1..=self.leaf_count() as Label).collect();
        self.with_labels(&labels).expect("default labels increase")
    }

    /// The α-subtree, if α addresses a vertex.
    pub fn subtree_at(&self, address: &Address) -> Option<&Tree> {
        let mut t = self;
        for &bit in address.bits() {
            let (l, r) = t.children()?;
            t = if bit { r } else { l };
        }
        Some(t)
    }

    /// Replaces the α-subtree; the replacement must keep labels increasing.
    pub(crate) fn replace_at(&self, address: &[bool], with: Tree) -> Option<Tree> {
        match address.split_first() {
            None => Some(with),
            Some((&bit, rest)) => {
                let (l, r) = self.children()?;
                if bit {
                    let r = r.replace_at(rest, with)?;
                    Some(Tree::fork_unchecked(l.clone(), r))
                } else {
                    let l = l.replace_at(rest, with)?;
                    Some(Tree::fork_unchecked(l, r.clone()))
                }
            }
        }
    }

    /// `ad_T(label)`.
    pub fn leaf_address(&self, label: Label) -> Result<Address> {
        let mut addr = Address::root();
        let mut t = self;
        loop {
            match t.children() {
                None if t.label() == Some(label) => return Ok(addr),
                None => return Err(Error::UnknownLabel(label)),
                Some((l, r)) => {
                    if label <= l.last_label() {
                        addr.push(false);
                        t = l;
                    } else if label >= r.first_label() {
                        addr.push(true);
                        t = r;
                    } else {
                        return Err(Error::UnknownLabel(label));
                    }
                }
            }
        }
    }

    /// `(label, address)` for every leaf, left to right.
    pub fn leaf_addresses(&self) -> Vec<(Label, Address)> {
        fn go(t: &Tree, addr: &mut Address, out: &mut Vec<(Label, Address)>) {
            match t.children() {
                None => out.push((t.first_label(), addr.clone())),
                Some((l, r)) => {
                    addr.push(false);
                    go(l, addr, out);
                    addr.pop();
                    addr.push(true);
                    go(r, addr, out);
                    addr.pop();
                }
            }
        }
        let mut out = Vec::with_capacity(self.leaf_count());
        go(self, &mut Address::root(), &mut out);
        out
    }

    /// Internal nodes with their addresses, in preorder (lexicographic address order).
    pub fn internal_nodes(&self) -> Vec<(Address, &Tree)> {
        fn go<'a>(t: &'a Tree, addr: &mut Address, out: &mut Vec<(Address, &'a Tree)>) {
            if let Some((l, r)) = t.children() {
                out.push((addr.clone(), t));
                addr.push(false);
                go(l, addr, out);
                addr.pop();
                addr.push(true);
                go(r, addr, out);
                addr.pop();
            }
        }
        let mut out = Vec::with_capacity(self.size());
        go(self, &mut Address::root(), &mut out);
        out
    }

    /// Number of edges on the rightmost branch.
    pub fn right_height(&self) -> usize {
        let mut h = 0;
        let mut t = self;
        while let Some((_, r)) = t.children() {
            h += 1;
            t = r;
        }
        h
    }

    /// Left-right mirror image. A label `l` becomes `first + last - l`, so
    /// labels keep increasing and default labels are preserved.
    pub fn mirror(&self) -> Tree {
        let pivot = self.first_label() + self.last_label();
        fn go(t: &Tree, pivot: Label) -> Tree {
            match t.children() {
                None => Tree::leaf(pivot - t.first_label()),
                Some((l, r)) => Tree::fork_unchecked(go(r, pivot), go(l, pivot)),
            }
        }
        go(self, pivot)
    }

    /// Canonical preorder balanced-parentheses word (`1 L 0 R` per node),
    /// `2 * size` characters; labels are not encoded.
    pub fn encode(&self) -> String {
        fn go(t: &Tree, out: &mut String) {
            if let Some((l, r)) = t.children() {
                out.push('1');
                go(l, out);
                out.push('0');
                go(r, out);
            }
        }
        let mut out = String::with_capacity(2 * self.size());
        go(self, &mut out);
        out
    }

    /// Inverse of [`Tree::encode`], default labels.
    pub fn decode(bits: &str) -> Result<Tree> {
        let bytes = bits.as_bytes();
        fn go(bytes: &[u8], pos: &mut usize, next: &mut Label) -> Result<Tree> {
            match bytes.get(*pos) {
                Some(b'1') => {
                    *pos += 1;
                    let l = go(bytes, pos, next)?;
                    match bytes.get(*pos) {
                        Some(b'0') => *pos += 1,
                        _ => return Err(Error::parse(*pos, "expected 0 closing a node")),
                    }
                    let r = go(bytes, pos, next)?;
                    Ok(Tree::fork_unchecked(l, r))
                }
                Some(b'0') | None => {
                    let t = Tree::leaf(*next);
                    *next += 1;
                    Ok(t)
                }
                Some(_) => Err(Error::parse(*pos, "expected 0 or 1")),
            }
        }
        let mut pos = 0;
        let mut next = 1;
        let t = go(bytes, &mut pos, &mut next)?;
        if pos != bytes.len() {
            return Err(Error::parse(pos, "trailing characters after a complete tree"));
        }
        Ok(t)
    }

    /// Packed shape, for sizes up to [`MAX_PACKED_SIZE`].
    pub fn shape(&self) -> Result<Shape> {
        Shape::from_tree(self)
    }

    /// All trees of a size, default labels, in shape-rank order.
    pub fn all(size: usize) -> Vec<Tree> {
        Shape::all(size).map(Shape::to_tree).collect()
    }
}

pub(crate) fn check_increasing(labels: &[Label]) -> Result<()> {
    for w in labels.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::LabelOrder { prev: w[0], next: w[1] });
        }
    }
    Ok(())
}

impl fmt::Debug for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A tree or the empty tree `∅`, which is neutral for `∨`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedTree {
    Empty,
    Tree(Tree),
}

impl ExtendedTree {
    /// `-1` for the empty tree.
    pub fn size(&self) -> isize {
        match self {
            ExtendedTree::Empty => -1,
            ExtendedTree::Tree(t) => t.size() as isize,
        }
    }

    /// `∨` with `∅ ∨ T = T ∨ ∅ = T`.
    pub fn join(self, right: ExtendedTree) -> ExtendedTree {
        match (self, right) {
            (ExtendedTree::Empty, r) => r,
            (l, ExtendedTree::Empty) => l,
            (ExtendedTree::Tree(l), ExtendedTree::Tree(r)) => ExtendedTree::Tree(Tree::fork_unchecked(l, r)),
        }
    }

    pub fn as_tree(&self) -> Option<&Tree> {
        match self {
            ExtendedTree::Empty => None,
            ExtendedTree::Tree(t) => Some(t),
        }
    }

    pub fn into_tree(self) -> Option<Tree> {
        match self {
            ExtendedTree::Empty => None,
            ExtendedTree::Tree(t) => Some(t),
        }
    }
}

impl From<Tree> for ExtendedTree {
    fn from(t: Tree) -> Self {
        ExtendedTree::Tree(t)
    }
}

impl fmt::Display for ExtendedTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedTree::Empty => f.write_str("∅"),
            ExtendedTree::Tree(t) => t.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> Tree {
        Tree::spine(s).unwrap()
    }

    fn addr(s: &str) -> Address {
        s.parse().unwrap()
    }

    #[test]
    fn spine_examples() {
        let t = sp("100");
        let leaf = || Tree::leaf(0);
        // shape •∨((•∨•)∨•)
        let expected = Tree::fork_unchecked(
            leaf(),
            Tree::fork_unchecked(Tree::fork_unchecked(leaf(), leaf()), leaf()),
        );
        assert_eq!(t.encode(), expected.encode());
        assert_eq!(sp("101"), t);
        let single = sp("");
        assert_eq!(single.size(), 0);
        assert_eq!(single.label(), Some(1));
    }

    #[test]
    fn spine_size_and_round_trip() {
        for n in 0..=8usize {
            for bits in 0..(1u32 << n) {
                let spine: Vec<bool> = (0..n).map(|i| bits >> i & 1 == 1).collect();
                let t = Tree::from_spine(&spine);
                assert_eq!(t.size(), n);
                let back = t.spine_of().expect("thin");
                assert_eq!(sp(&back), t);
                // mirror maps Sp(a) to Sp(ā)
                let flipped: Vec<bool> = spine.iter().map(|b| !b).collect();
                assert_eq!(t.mirror(), Tree::from_spine(&flipped));
            }
        }
    }

    #[test]
    fn spine_of_rejects_non_thin() {
        let t: Tree = "((* *) (* *))".parse().unwrap();
        assert_eq!(t.spine_of(), None);
    }

    #[test]
    fn subtree_examples() {
        let t = sp("100");
        assert_eq!(t.subtree_at(&addr("10")).unwrap().encode(), "10");
        assert_eq!(t.subtree_at(&Address::root()), Some(&t));
        assert!(t.subtree_at(&addr("000")).is_none());
    }

    #[test]
    fn leaf_address_examples() {
        let t = sp("100");
        assert_eq!(t.leaf_address(1).unwrap(), addr("0"));
        assert_eq!(t.leaf_address(2).unwrap(), addr("100"));
        assert_eq!(t.leaf_address(3).unwrap(), addr("101"));
        assert_eq!(t.leaf_address(4).unwrap(), addr("11"));
        assert_eq!(Tree::leaf(1).leaf_address(1).unwrap(), Address::root());
        assert_eq!(t.leaf_address(9), Err(Error::UnknownLabel(9)));
    }

    #[test]
    fn leaf_addresses_are_incomparable_and_ordered() {
        for n in 0..=7 {
            for t in Tree::all(n) {
                let ads = t.leaf_addresses();
                for w in ads.windows(2) {
                    assert!(w[0].0 < w[1].0);
                    assert!(w[0].1 < w[1].1);
                }
                for (i, (_, a)) in ads.iter().enumerate() {
                    for (_, b) in &ads[i + 1..] {
                        assert!(!a.comparable(b));
                    }
                }
            }
        }
    }

    #[test]
    fn encode_examples() {
        assert_eq!(sp("0").encode(), "10");
        assert_eq!(Tree::leaf(1).encode(), "");
        for n in 0..=8 {
            for t in Tree::all(n) {
                assert_eq!(t.encode().len(), 2 * n);
                assert_eq!(Tree::decode(&t.encode()).unwrap(), t);
            }
        }
    }

    #[test]
    fn encode_is_injective_on_size_ten() {
        let codes: std::collections::HashSet<String> = Tree::all(10).iter().map(Tree::encode).collect();
        assert_eq!(codes.len(), 16796);
    }

    #[test]
    fn decode_rejects_malformed() {
        assert!(Tree::decode("1").is_err());
        assert!(Tree::decode("100").is_err());
        assert!(Tree::decode("1x").is_err());
        assert!(Tree::decode("01").is_err());
    }

    #[test]
    fn right_height_examples() {
        assert_eq!(Tree::right_comb(5).right_height(), 5);
        assert_eq!(sp("0000").right_height(), 1);
        assert_eq!(Tree::leaf(1).right_height(), 0);
    }

    #[test]
    fn mirror_is_an_involution() {
        for n in 0..=8 {
            for t in Tree::all(n) {
                assert_eq!(t.mirror().mirror(), t);
            }
        }
        let t = sp("100").with_labels(&[2, 5, 6, 9]).unwrap();
        assert_eq!(t.mirror().labels(), vec![2, 5, 6, 9]);
        assert_eq!(t.mirror().mirror(), t);
    }

    #[test]
    fn join_enforces_label_order() {
        assert!(Tree::join(Tree::leaf(2), Tree::leaf(1)).is_err());
        assert!(Tree::join(Tree::leaf(1), Tree::leaf(3)).is_ok());
    }

    #[test]
    fn extended_tree_neutral_element() {
        let t = ExtendedTree::Tree(sp("1"));
        assert_eq!(ExtendedTree::Empty.join(t.clone()), t);
        assert_eq!(t.clone().join(ExtendedTree::Empty), t);
        assert_eq!(ExtendedTree::Empty.size(), -1);
    }
}
