//! Thompson's group F as reduced tree pairs, the generators `A_α`, their
//! partial action on trees, and the words `χ_T`.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rotation::{rotate, RotationEdge, Sign};
use crate::tree::{Address, Tree};

/// `A_α` or `A_α⁻¹`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FLetter {
    pub address: Address,
    pub sign: Sign,
}

impl FLetter {
    pub fn new(address: Address, sign: Sign) -> Self {
        FLetter { address, sign }
    }

    pub fn pos(address: &str) -> Self {
        FLetter::new(address.parse().expect("address"), Sign::Positive)
    }

    pub fn neg(address: &str) -> Self {
        FLetter::new(address.parse().expect("address"), Sign::Negative)
    }

    pub fn inverse(&self) -> FLetter {
        FLetter::new(self.address.clone(), self.sign.flip())
    }

    /// `sh_1`: `A_α ↦ A_{1α}`.
    pub fn shifted(&self) -> FLetter {
        FLetter::new(
            Address::from_bits(std::iter::once(true).chain(self.address.bits().iter().copied())),
            self.sign,
        )
    }

    fn edge(&self) -> RotationEdge {
        RotationEdge::new(self.address.clone(), self.sign)
    }
}

impl fmt::Display for FLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let a: String = self.address.bits().iter().map(|&b| if b { '1' } else { '0' }).collect();
        let s = if self.sign.is_positive() { '+' } else { '-' };
        write!(f, "A[{a}]{s}")
    }
}

impl FromStr for FLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("expected a letter like A[10]+, found {s:?}"));
        let rest = s.trim().strip_prefix("A[").ok_or_else(bad)?;
        let (addr, sign) = rest.split_once(']').ok_or_else(bad)?;
        let address = Address::from_bits(
            addr.chars()
                .map(|c| match c {
                    '0' => Ok(false),
                    '1' => Ok(true),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<_>>>()?,
        );
        let sign = match sign {
            "+" | "" => Sign::Positive,
            "-" | "−" => Sign::Negative,
            _ => return Err(bad()),
        };
        Ok(FLetter { address, sign })
    }
}

/// A word in the letters `A_α^{±1}`, read left to right (`gh` is `g` then `h`).
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct FWord(pub Vec<FLetter>);

impl FWord {
    pub fn new(letters: Vec<FLetter>) -> Self {
        FWord(letters)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[FLetter] {
        &self.0
    }

    pub fn inverse(&self) -> FWord {
        FWord(self.0.iter().rev().map(FLetter::inverse).collect())
    }

    pub fn concat(&self, other: &FWord) -> FWord {
        FWord(self.0.iter().chain(&other.0).cloned().collect())
    }

    pub fn shifted(&self) -> FWord {
        FWord(self.0.iter().map(FLetter::shifted).collect())
    }

    /// Cancels adjacent `A_α A_α⁻¹` pairs.
    pub fn freely_reduced(&self) -> FWord {
        let mut out: Vec<FLetter> = Vec::with_capacity(self.len());
        for l in &self.0 {
            if out.last().is_some_and(|p| p.address == l.address && p.sign != l.sign) {
                out.pop();
            } else {
                out.push(l.clone());
            }
        }
        FWord(out)
    }
}

impl fmt::Display for FWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for FWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(FWord::default());
        }
        Ok(FWord(s.split_whitespace().map(str::parse).collect::<Result<_>>()?))
    }
}

impl Serialize for FWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An element of F as its reduced tree pair `(dom g, tar g)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FElement {
    pub dom: Tree,
    pub tar: Tree,
}

impl FElement {
    pub fn identity() -> Self {
        FElement {
            dom: Tree::leaf(1),
            tar: Tree::leaf(1),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.dom.size() == 0
    }
}

impl fmt::Display for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.dom, self.tar)
    }
}

/// Unlabelled tree whose leaves carry identities, so that a leaf can be
/// split consistently in two trees at once.
#[derive(Debug, Clone, PartialEq, Eq)]
enum Skel {
    Leaf(usize),
    Node(Box<Skel>, Box<Skel>),
}

impl Skel {
    fn from_tree(t: &Tree, next: &mut usize) -> Skel {
        match t.children() {
            None => {
                *next += 1;
                Skel::Leaf(*next - 1)
            }
            Some((l, r)) => {
                let l = Skel::from_tree(l, next);
                Skel::Node(Box::new(l), Box::new(Skel::from_tree(r, next)))
            }
        }
    }

    fn to_tree(&self) -> Tree {
        fn go(s: &Skel, next: &mut u32) -> Tree {
            match s {
                Skel::Leaf(_) => {
                    *next += 1;
                    Tree::leaf(*next - 1)
                }
                Skel::Node(l, r) => {
                    let l = go(l, next);
                    Tree::fork_unchecked(l, go(r, next))
                }
            }
        }
        go(self, &mut 1)
    }

    fn split(&mut self, id: usize, fresh: usize) -> bool {
        match self {
            Skel::Leaf(x) if *x == id => {
                *self = Skel::Node(Box::new(Skel::Leaf(id)), Box::new(Skel::Leaf(fresh)));
                true
            }
            Skel::Leaf(_) => false,
            Skel::Node(l, r) => l.split(id, fresh) || r.split(id, fresh),
        }
    }

    fn leaves(&self, out: &mut Vec<usize>) {
        match self {
            Skel::Leaf(x) => out.push(*x),
            Skel::Node(l, r) => {
                l.leaves(out);
                r.leaves(out);
            }
        }
    }

    fn at(&mut self, path: &[bool]) -> &mut Skel {
        match (path.split_first(), self) {
            (None, s) => s,
            (Some((&b, rest)), Skel::Node(l, r)) => if b { r } else { l }.at(rest),
            (Some(_), Skel::Leaf(_)) => unreachable!("path checked before descent"),
        }
    }

    /// First leaf met on `path`, or `None` if the path stays inside nodes.
    fn leaf_on(&self, path: &[bool]) -> Option<usize> {
        match (path.split_first(), self) {
            (_, Skel::Leaf(x)) => Some(*x),
            (None, _) => None,
            (Some((&b, rest)), Skel::Node(l, r)) => if b { r } else { l }.leaf_on(rest),
        }
    }
}

/// Prunes carets that sit over the same pair of leaves in both trees.
fn reduce_skel(mut dom: Skel, mut tar: Skel) -> (Skel, Skel) {
    // with matching leaf order, a common caret is two consecutive leaves
    // that are siblings in both trees
    fn carets(s: &Skel, out: &mut Vec<(usize, usize)>) {
        if let Skel::Node(l, r) = s {
            if let (Skel::Leaf(a), Skel::Leaf(b)) = (&**l, &**r) {
                out.push((*a, *b));
            }
            carets(l, out);
            carets(r, out);
        }
    }
    fn prune(s: &mut Skel, pair: (usize, usize)) -> bool {
        if let Skel::Node(l, r) = s {
            if **l == Skel::Leaf(pair.0) && **r == Skel::Leaf(pair.1) {
                *s = Skel::Leaf(pair.0);
                return true;
            }
            return prune(l, pair) || prune(r, pair);
        }
        false
    }
    loop {
        let (mut a, mut b) = (vec![], vec![]);
        carets(&dom, &mut a);
        carets(&tar, &mut b);
        match a.into_iter().find(|p| b.contains(p)) {
            Some(pair) => {
                prune(&mut dom, pair);
                prune(&mut tar, pair);
            }
            None => return (dom, tar),
        }
    }
}

/// The reduced pair representing `Φ(T, T′)`.
pub fn element_of(t: &Tree, u: &Tree) -> Result<FElement> {
    if t.size() != u.size() {
        return Err(Error::SizeMismatch(t.size(), u.size()));
    }
    let (dom, tar) = (Skel::from_tree(t, &mut 0), Skel::from_tree(u, &mut 0));
    let (dom, tar) = reduce_skel(dom, tar);
    Ok(FElement {
        dom: dom.to_tree(),
        tar: tar.to_tree(),
    })
}

/// Reduces an arbitrary pair of equal-size trees.
pub fn reduce(pair: &FElement) -> Result<FElement> {
    element_of(&pair.dom, &pair.tar)
}

/// `T · w`: each letter is a rotation at its address; `None` as soon as
/// one is undefined.
pub fn apply(t: &Tree, w: &FWord) -> Option<Tree> {
    let mut cur = t.clone();
    for l in w.letters() {
        cur = rotate(&cur, &l.edge())?;
    }
    Some(cur)
}

/// Grows `t` by as few carets as needed for `w` to act, and returns the
/// grown tree `T̂` with `T̂ · w`.
pub fn apply_with_extension(t: &Tree, w: &FWord) -> (Tree, Tree) {
    let mut next = 0;
    let mut orig = Skel::from_tree(t, &mut next);
    let mut cur = orig.clone();
    for l in w.letters() {
        let a = l.address.bits();
        // the letter needs nodes at α and at α1 (positive) or α0 (negative)
        let mut need = a.to_vec();
        need.push(l.sign.is_positive());
        while let Some(id) = cur.leaf_on(&need) {
            orig.split(id, next);
            cur.split(id, next);
            next += 1;
        }
        let node = cur.at(a);
        let old = std::mem::replace(node, Skel::Leaf(usize::MAX));
        *node = match (old, l.sign) {
            (Skel::Node(t1, r), Sign::Positive) => match *r {
                Skel::Node(t2, t3) => Skel::Node(Box::new(Skel::Node(t1, t2)), t3),
                _ => unreachable!(),
            },
            (Skel::Node(l, t3), Sign::Negative) => match *l {
                Skel::Node(t1, t2) => Skel::Node(t1, Box::new(Skel::Node(t2, t3))),
                _ => unreachable!(),
            },
            _ => unreachable!(),
        };
    }
    debug_assert!({
        let (mut x, mut y) = (vec![], vec![]);
        orig.leaves(&mut x);
        cur.leaves(&mut y);
        x == y
    });
    (orig.to_tree(), cur.to_tree())
}

/// The element a word represents.
pub fn element_of_word(w: &FWord) -> FElement {
    let (t, u) = apply_with_extension(&Tree::leaf(1), w);
    element_of(&t, &u).expect("extension keeps sizes equal")
}

/// Whether two words represent the same element of F. By freeness, the
/// reduced pairs obtained from the smallest extensions of a leaf decide it.
pub fn words_equivalent(w1: &FWord, w2: &FWord) -> bool {
    element_of_word(w1) == element_of_word(w2)
}

/// `χ_T`: the geodesic word from the right comb to `T`.
pub fn chi(t: &Tree) -> FWord {
    match t.children() {
        None => FWord::default(),
        Some((t0, t1)) => {
            let mut w = chi(t0).0;
            for i in (0..t0.right_height()).rev() {
                w.push(FLetter::new(Address::from_bits(vec![true; i]), Sign::Positive));
            }
            w.extend(chi(t1).shifted().0);
            FWord(w)
        }
    }
}

/// `I(w)`: the sum of the exponents of the letters `A_{1^i}`.
pub fn invariant_i(w: &FWord) -> i64 {
    w.letters()
        .iter()
        .filter(|l| l.address.is_all_ones())
        .map(|l| if l.sign.is_positive() { 1 } else { -1 })
        .sum()
}

/// One instance of a defining relation, as the two sides.
#[derive(Debug, Clone, Serialize)]
pub struct RelationInstance {
    pub relation: &'static str,
    pub lhs: FWord,
    pub rhs: FWord,
}

fn word(letters: &[(&Address, Sign)]) -> FWord {
    FWord(letters.iter().map(|(a, s)| FLetter::new((*a).clone(), *s)).collect())
}

fn addresses_up_to(max_len: usize) -> Vec<Address> {
    (0..=max_len)
        .flat_map(|len| {
            (0u32..1 << len).map(move |m| Address::from_bits((0..len).map(|k| m >> (len - 1 - k) & 1 == 1)))
        })
        .collect()
}

/// Every instance of the pentagon and quasi-commutation relations with
/// `|α|, |β| ≤ max_len`.
pub fn relation_instances(max_len: usize) -> Vec<RelationInstance> {
    use Sign::Positive as P;
    let addrs = addresses_up_to(max_len);
    let ad = |a: &Address, suffix: &[bool]| Address::from_bits(a.bits().iter().chain(suffix).copied());
    let mut out = Vec::new();
    for a in &addrs {
        out.push(RelationInstance {
            relation: "pentagon",
            lhs: word(&[(a, P), (a, P)]),
            rhs: word(&[(&ad(a, &[true]), P), (a, P), (&ad(a, &[false]), P)]),
        });
        for b in &addrs {
            for (relation, l, r) in [
                ("rel-0", vec![false], vec![false, false]),
                ("rel-10", vec![true, false], vec![false, true]),
                ("rel-11", vec![true, true], vec![true]),
            ] {
                let lb = ad(&ad(a, &l), b.bits());
                let rb = ad(&ad(a, &r), b.bits());
                out.push(RelationInstance {
                    relation,
                    lhs: word(&[(&lb, P), (a, P)]),
                    rhs: word(&[(a, P), (&rb, P)]),
                });
            }
            if a < b && !a.comparable(b) {
                out.push(RelationInstance {
                    relation: "commute",
                    lhs: word(&[(b, P), (a, P)]),
                    rhs: word(&[(a, P), (b, P)]),
                });
            }
        }
    }
    out
}

/// `A_α^{(p)} = A_{α1^{p−1}} ⋯ A_{α1} A_α`.
pub fn staircase(alpha: &Address, p: usize) -> FWord {
    FWord(
        (0..p)
            .rev()
            .map(|i| {
                FLetter::new(
                    Address::from_bits(alpha.bits().iter().copied().chain(std::iter::repeat_n(true, i))),
                    Sign::Positive,
                )
            })
            .collect(),
    )
}

/// The two equivalent words showing the positive monoid is not
/// quasi-isometrically embedded: a positive word of length `p(p+1)/2` and
/// a mixed one of length `3p − 2`.
pub fn positive_monoid_words(p: usize) -> (FWord, FWord) {
    assert!(p >= 1);
    let alt =
        |k: usize, tail: &[bool]| Address::from_bits((0..k).flat_map(|_| [false, true]).chain(tail.iter().copied()));
    let mut long = FWord::default();
    for k in 0..p {
        long = long.concat(&staircase(&alt(k, &[]), p - k));
    }
    let mut short = staircase(&Address::root(), p - 1);
    for k in 0..p - 1 {
        short.0.push(FLetter::new(alt(k, &[]), Sign::Positive));
        short.0.push(FLetter::new(alt(k, &[false]), Sign::Negative));
    }
    short.0.push(FLetter::new(alt(p - 1, &[]), Sign::Positive));
    (long, short)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> Tree {
        Tree::spine(s).unwrap()
    }

    fn w(s: &str) -> FWord {
        s.parse().unwrap()
    }

    #[test]
    fn letters_and_words_parse() {
        let x = w("A[10]+ A[]- A[1]+");
        assert_eq!(x.len(), 3);
        assert_eq!(x.to_string(), "A[10]+ A[]- A[1]+");
        assert_eq!(x.inverse().to_string(), "A[1]- A[]+ A[10]-");
        assert!("B[1]+".parse::<FWord>().is_err());
        assert!("A[12]+".parse::<FWord>().is_err());
    }

    #[test]
    fn generator_a() {
        let g = element_of(&sp("11"), &sp("00")).unwrap();
        assert_eq!((g.dom.clone(), g.tar.clone()), (sp("11"), sp("00")));
        assert_eq!(element_of_word(&w("A[]+")), g);
        assert!(element_of(&sp("0110"), &sp("0110")).unwrap().is_identity());
    }

    #[test]
    fn grown_pairs_reduce() {
        // split leaf 2 on both sides of (Sp 11, Sp 00)
        let t: Tree = "(* ((* *) *))".parse().unwrap();
        let u: Tree = "((* (* *)) *)".parse().unwrap();
        assert_eq!(element_of(&t, &u).unwrap(), element_of(&sp("11"), &sp("00")).unwrap());
    }

    #[test]
    fn action() {
        assert_eq!(apply(&sp("11"), &w("A[]+")), Some(sp("00")));
        assert_eq!(apply(&sp("11"), &FWord::default()), Some(sp("11")));
        assert_eq!(apply(&sp("00"), &w("A[]+")), None);
        let (t, u) = apply_with_extension(&Tree::leaf(1), &w("A[]+ A[0]+"));
        assert_eq!(apply(&t, &w("A[]+ A[0]+")), Some(u));
    }

    #[test]
    fn chi_builds_trees_from_the_comb() {
        assert!(chi(&Tree::right_comb(5)).is_empty());
        assert_eq!(chi(&sp("00")), w("A[]+"));
        for n in 0..=7 {
            for t in Tree::all(n) {
                let c = chi(&t);
                assert_eq!(c.len(), n - t.right_height());
                assert_eq!(invariant_i(&c), c.len() as i64);
                assert_eq!(apply(&Tree::right_comb(n), &c), Some(t));
            }
        }
    }

    #[test]
    fn relations_hold() {
        let inst = relation_instances(2);
        assert!(inst.iter().any(|r| r.relation == "commute"));
        for r in inst {
            assert!(
                words_equivalent(&r.lhs, &r.rhs),
                "{}: {} = {}",
                r.relation,
                r.lhs,
                r.rhs
            );
            assert_eq!(invariant_i(&r.lhs), invariant_i(&r.rhs));
        }
    }

    #[test]
    fn inequivalent_words_are_told_apart() {
        assert!(!words_equivalent(&w("A[]+"), &w("A[1]+")));
        assert!(!words_equivalent(&w("A[0]+ A[]+"), &w("A[]+ A[0]+")));
        assert!(words_equivalent(&w("A[0]+ A[1]+ A[1]- A[0]-"), &FWord::default()));
    }

    #[test]
    fn positive_monoid_example() {
        for p in 1..=4 {
            let (long, short) = positive_monoid_words(p);
            assert_eq!(long.len(), p * (p + 1) / 2);
            assert_eq!(short.len(), 3 * p - 2);
            assert!(words_equivalent(&long, &short), "p={p}");
            assert_eq!(invariant_i(&long), invariant_i(&short));
        }
    }
}
