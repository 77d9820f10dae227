//! Rotations: applying them by address, enumerating neighbours, and naming
//! base pairs by address and by leaf labels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{Address, Label, Tree};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }

    pub fn is_positive(self) -> bool {
        self == Sign::Positive
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Positive => "+",
            Sign::Negative => "-",
        })
    }
}

/// Position of a rotation: the address of the rotated subtree's root and
/// the direction. `+` turns `T1∨(T2∨T3)` into `(T1∨T2)∨T3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RotationEdge {
    pub address: Address,
    pub sign: Sign,
}

impl RotationEdge {
    pub fn new(address: Address, sign: Sign) -> Self {
        RotationEdge { address, sign }
    }

    pub fn inverse(&self) -> RotationEdge {
        RotationEdge {
            address: self.address.clone(),
            sign: self.sign.flip(),
        }
    }
}

impl fmt::Display for RotationEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.address, self.sign)
    }
}

impl FromStr for RotationEdge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, sign) = if let Some(b) = s.strip_suffix('+') {
            (b, Sign::Positive)
        } else if let Some(b) = s.strip_suffix('-') {
            (b, Sign::Negative)
        } else {
            return Err(Error::parse(s.len(), "edge must end with + or -"));
        };
        Ok(RotationEdge {
            address: body.parse()?,
            sign,
        })
    }
}

/// Leaf-label name `(a,b,c,d)±` of a base pair: `a` and `d` are the extreme
/// leaves of the rotated subtree, `b..=c` the leaves of the moved middle part.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairName {
    pub a: Label,
    pub b: Label,
    pub c: Label,
    pub d: Label,
    pub sign: Sign,
}

impl PairName {
    pub fn new(a: Label, b: Label, c: Label, d: Label, sign: Sign) -> Self {
        PairName { a, b, c, d, sign }
    }

    pub fn reversed(self) -> PairName {
        PairName {
            sign: self.sign.flip(),
            ..self
        }
    }

    pub fn coords(&self) -> [Label; 4] {
        [self.a, self.b, self.c, self.d]
    }
}

impl fmt::Display for PairName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{}){}", self.a, self.b, self.c, self.d, self.sign)
    }
}

impl FromStr for PairName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (body, sign) = if let Some(b) = s.strip_suffix('+') {
            (b, Sign::Positive)
        } else if let Some(b) = s.strip_suffix('-') {
            (b, Sign::Negative)
        } else {
            return Err(Error::parse(s.len(), "name must end with + or -"));
        };
        let inner = body
            .trim()
            .strip_prefix('(')
            .and_then(|b| b.strip_suffix(')'))
            .ok_or_else(|| Error::parse(0, "name must look like (a,b,c,d)+"))?;
        let parts = inner
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<Label>()
                    .map_err(|e| Error::parse(0, format!("bad label {p:?}: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        match parts[..] {
            [a, b, c, d] => Ok(PairName { a, b, c, d, sign }),
            _ => Err(Error::parse(0, "a name has four labels")),
        }
    }
}

/// The three parts `(T1, T2, T3)` involved in a rotation at `edge`, if the
/// pattern matches: `T1∨(T2∨T3)` for `+`, `(T1∨T2)∨T3` for `-`.
fn parts<'a>(t: &'a Tree, edge: &RotationEdge) -> Option<(&'a Tree, &'a Tree, &'a Tree)> {
    let sub = t.subtree_at(&edge.address)?;
    let (l, r) = sub.children()?;
    match edge.sign {
        Sign::Positive => {
            let (r0, r1) = r.children()?;
            Some((l, r0, r1))
        }
        Sign::Negative => {
            let (l0, l1) = l.children()?;
            Some((l0, l1, r))
        }
    }
}

/// Applies one rotation; `None` when the pattern does not occur at the address.
pub fn rotate(t: &Tree, edge: &RotationEdge) -> Option<Tree> {
    let (t1, t2, t3) = parts(t, edge)?;
    let replaced = match edge.sign {
        Sign::Positive => Tree::fork_unchecked(Tree::fork_unchecked(t1.clone(), t2.clone()), t3.clone()),
        Sign::Negative => Tree::fork_unchecked(t1.clone(), Tree::fork_unchecked(t2.clone(), t3.clone())),
    };
    t.replace_at(edge.address.bits(), replaced)
}

/// The name of the base pair obtained by rotating `t` at `edge`.
pub fn name_at(t: &Tree, edge: &RotationEdge) -> Option<PairName> {
    let (t1, t2, t3) = parts(t, edge)?;
    Some(PairName {
        a: t1.first_label(),
        b: t2.first_label(),
        c: t2.last_label(),
        d: t3.last_label(),
        sign: edge.sign,
    })
}

/// Every tree one rotation away, nodes in preorder, `+` before `-`.
pub fn neighbors(t: &Tree) -> Vec<(RotationEdge, Tree)> {
    let mut out = Vec::with_capacity(t.size().saturating_sub(1));
    for (addr, _) in t.internal_nodes() {
        for sign in [Sign::Positive, Sign::Negative] {
            let edge = RotationEdge::new(addr.clone(), sign);
            if let Some(u) = rotate(t, &edge) {
                out.push((edge, u));
            }
        }
    }
    out
}

/// The position of the base pair `(t, u)`, or `None` if the trees are not
/// one rotation apart.
pub fn pair_address(t: &Tree, u: &Tree) -> Option<RotationEdge> {
    let mut addr = Address::root();
    let (mut x, mut y) = (t, u);
    loop {
        let (xl, xr) = x.children()?;
        let (yl, yr) = y.children()?;
        if xl == yl {
            if xr == yr {
                return None;
            }
            addr.push(true);
            (x, y) = (xr, yr);
        } else if xr == yr {
            addr.push(false);
            (x, y) = (xl, yl);
        } else {
            for sign in [Sign::Positive, Sign::Negative] {
                let edge = RotationEdge::new(addr.clone(), sign);
                if rotate(x, &RotationEdge::new(Address::root(), sign)).as_ref() == Some(y) {
                    return Some(edge);
                }
            }
            return None;
        }
    }
}

/// The name of the base pair `(t, u)`.
pub fn pair_name(t: &Tree, u: &Tree) -> Option<PairName> {
    let edge = pair_address(t, u)?;
    name_at(t, &edge)
}

/// Checks that consecutive trees of a path are base pairs and returns the names.
pub fn path_names(path: &[Tree]) -> Result<Vec<PairName>> {
    path.windows(2)
        .enumerate()
        .map(|(i, w)| pair_name(&w[0], &w[1]).ok_or(Error::BrokenPath(i, i + 1)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> Tree {
        Tree::spine(s).unwrap()
    }

    fn edge(s: &str) -> RotationEdge {
        s.parse().unwrap()
    }

    /// The pair rotated at `10+` whose name is `(2,3,5,6)+`.
    fn example_pair() -> (Tree, Tree) {
        let t: Tree = "(* ((* ((* (* *)) *)) *))".parse().unwrap();
        let u = rotate(&t, &edge("10+")).unwrap();
        (t, u)
    }

    #[test]
    fn rotate_comb_at_root() {
        assert_eq!(rotate(&sp("11"), &edge("ε+")), Some(sp("00")));
        assert_eq!(rotate(&sp("00"), &edge("ε-")), Some(sp("11")));
        assert_eq!(rotate(&sp("00"), &edge("ε+")), None);
    }

    #[test]
    fn rotations_are_mutually_inverse() {
        for n in 0..=8 {
            for t in Tree::all(n) {
                for (e, u) in neighbors(&t) {
                    assert_eq!(rotate(&u, &e.inverse()).as_ref(), Some(&t));
                }
            }
        }
    }

    #[test]
    fn degree_is_size_minus_one() {
        assert!(neighbors(&Tree::leaf(1)).is_empty());
        assert_eq!(neighbors(&sp("100")).len(), 2);
        for n in 1..=8 {
            for t in Tree::all(n) {
                assert_eq!(neighbors(&t).len(), n - 1);
            }
        }
    }

    #[test]
    fn names_of_examples() {
        assert_eq!(
            pair_name(&sp("11"), &sp("00")),
            Some(PairName::new(1, 2, 2, 3, Sign::Positive))
        );
        let (t, u) = example_pair();
        assert_eq!(pair_address(&t, &u), Some(edge("10+")));
        assert_eq!(pair_name(&t, &u).unwrap().to_string(), "(2,3,5,6)+");
        assert_eq!(pair_name(&u, &t).unwrap().to_string(), "(2,3,5,6)-");
        assert_eq!(pair_name(&t, &t), None);
    }

    #[test]
    fn address_is_meet_of_extreme_leaves() {
        for n in 1..=8 {
            for t in Tree::all(n) {
                for (e, u) in neighbors(&t) {
                    assert_eq!(pair_address(&t, &u).as_ref(), Some(&e));
                    let name = pair_name(&t, &u).unwrap();
                    let meet = t.leaf_address(name.a).unwrap().meet(&t.leaf_address(name.d).unwrap());
                    assert_eq!(meet, e.address);
                    assert_eq!(pair_name(&u, &t), Some(name.reversed()));
                    assert!(name.a < name.b && name.b <= name.c && name.c < name.d);
                }
            }
        }
    }

    #[test]
    fn name_leaves_sit_at_extreme_addresses() {
        // a at α0^p, b at α10^p, c at α101^p, d at α1^p for positive pairs
        for n in 2..=7 {
            for t in Tree::all(n) {
                for (e, u) in neighbors(&t) {
                    if !e.sign.is_positive() {
                        continue;
                    }
                    let name = pair_name(&t, &u).unwrap();
                    let rel = |l: Label| -> Vec<bool> { t.leaf_address(l).unwrap().bits()[e.address.len()..].to_vec() };
                    let a = rel(name.a);
                    assert!(!a.is_empty() && a.iter().all(|b| !b));
                    let b = rel(name.b);
                    assert!(b[..2] == [true, false] && b[2..].iter().all(|x| !x));
                    let c = rel(name.c);
                    assert!(c[..2] == [true, false] && c[2..].iter().all(|x| *x));
                    let d = rel(name.d);
                    assert!(d.iter().all(|x| *x) && d.len() >= 2);
                }
            }
        }
    }

    #[test]
    fn text_forms() {
        assert_eq!(edge("10+").to_string(), "10+");
        assert_eq!(edge("ε-").to_string(), "ε-");
        assert!("10".parse::<RotationEdge>().is_err());
        let n: PairName = "(2,3,5,6)+".parse().unwrap();
        assert_eq!(n, PairName::new(2, 3, 5, 6, Sign::Positive));
        assert!("(2,3,5)+".parse::<PairName>().is_err());
    }

    #[test]
    fn path_names_detect_breaks() {
        let path = vec![sp("11"), sp("00"), sp("11")];
        assert_eq!(path_names(&path).unwrap().len(), 2);
        let broken = vec![sp("11"), sp("11")];
        assert_eq!(path_names(&broken), Err(Error::BrokenPath(0, 1)));
    }
}
