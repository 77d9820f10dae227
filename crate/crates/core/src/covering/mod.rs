//! Covering and co-covering relations between leaf labels, and how a single
//! rotation changes them.
//!
//! `i ◁ j` (i is covered by j) when some subtree has `i` as a non-final leaf
//! and `j` as its final leaf; `i` co-covers `j` when some subtree has `i` as
//! its initial leaf and `j` as a non-initial leaf.

mod pattern;
pub mod tables;

use std::collections::BTreeSet;

use serde::Serialize;

pub use pattern::{Constraint, NamePattern, Obligation};

use crate::error::{Error, Result};
use crate::rotation::{pair_name, path_names, Sign};
use crate::tree::{Address, Label, Tree};

fn addresses(t: &Tree, i: Label, j: Label) -> Result<(Address, Address)> {
    if i >= j {
        return Err(Error::Precondition(format!("expected i < j, got {i} and {j}")));
    }
    Ok((t.leaf_address(i)?, t.leaf_address(j)?))
}

/// `i ◁_T j`: some `γ` has `γ0 ⊑ ad(i)` and `ad(j) = γ1^p` with `p ≥ 1`.
pub fn covers(t: &Tree, i: Label, j: Label) -> Result<bool> {
    let (ai, aj) = addresses(t, i, j)?;
    Ok(covers_addr(&ai, &aj))
}

/// `i` co-covers `j`: some `γ` has `ad(i) = γ0^p` with `p ≥ 1` and `γ1 ⊑ ad(j)`.
pub fn cocovers(t: &Tree, i: Label, j: Label) -> Result<bool> {
    let (ai, aj) = addresses(t, i, j)?;
    Ok(cocovers_addr(&ai, &aj))
}

fn covers_addr(ai: &Address, aj: &Address) -> bool {
    let (bi, bj) = (ai.bits(), aj.bits());
    (1..=aj.trailing_ones()).any(|p| {
        let g = &bj[..bj.len() - p];
        bi.len() > g.len() && bi.starts_with(g) && !bi[g.len()]
    })
}

fn cocovers_addr(ai: &Address, aj: &Address) -> bool {
    let (bi, bj) = (ai.bits(), aj.bits());
    (1..=ai.trailing_zeros()).any(|p| {
        let g = &bi[..bi.len() - p];
        bj.len() > g.len() && bj.starts_with(g) && bj[g.len()]
    })
}

/// A covering or co-covering relation, as a sorted set of pairs `(i, j)`, `i < j`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CoveringRelation {
    pairs: BTreeSet<(Label, Label)>,
}

impl CoveringRelation {
    /// `◁_T`, read off the subtrees: every subtree's non-final labels are
    /// covered by its final label.
    pub fn covering(t: &Tree) -> Self {
        let mut pairs = BTreeSet::new();
        for (_, sub) in t.internal_nodes() {
            let labels = sub.labels();
            let (&last, rest) = labels.split_last().expect("internal node has leaves");
            pairs.extend(rest.iter().map(|&i| (i, last)));
        }
        CoveringRelation { pairs }
    }

    /// The co-covering relation of `t`.
    pub fn cocovering(t: &Tree) -> Self {
        let mut pairs = BTreeSet::new();
        for (_, sub) in t.internal_nodes() {
            let labels = sub.labels();
            let (&first, rest) = labels.split_first().expect("internal node has leaves");
            pairs.extend(rest.iter().map(|&j| (first, j)));
        }
        CoveringRelation { pairs }
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (Label, Label)>) -> Self {
        CoveringRelation {
            pairs: pairs.into_iter().collect(),
        }
    }

    pub fn contains(&self, i: Label, j: Label) -> bool {
        self.pairs.contains(&(i, j))
    }

    pub fn iter(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        self.pairs.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in `self` but not in `other`.
    pub fn difference(&self, other: &CoveringRelation) -> Vec<(Label, Label)> {
        self.pairs.difference(&other.pairs).copied().collect()
    }
}

/// Rebuilds the tree with the given leaf labels whose covering relation is `rel`.
///
/// The left subtree of a node spanning `first..=last` ends at the largest
/// label `j < last` covering `first`, or at `first` itself when there is none.
pub fn reconstruct(rel: &CoveringRelation, labels: &[Label]) -> Result<Tree> {
    if labels.is_empty() {
        return Err(Error::Precondition("no labels".into()));
    }
    crate::tree::check_increasing(labels)?;
    fn build(rel: &CoveringRelation, labels: &[Label]) -> Tree {
        if labels.len() == 1 {
            return Tree::leaf(labels[0]);
        }
        let first = labels[0];
        let split = (1..labels.len() - 1)
            .rev()
            .find(|&k| rel.contains(first, labels[k]))
            .unwrap_or(0);
        let l = build(rel, &labels[..=split]);
        let r = build(rel, &labels[split + 1..]);
        Tree::fork_unchecked(l, r)
    }
    let t = build(rel, labels);
    if &CoveringRelation::covering(&t) != rel {
        return Err(Error::Inconsistent(
            "relation is not the covering relation of any tree on these labels".into(),
        ));
    }
    Ok(t)
}

/// Coverings created and co-coverings destroyed by a positive rotation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoveringChange {
    pub added_coverings: Vec<(Label, Label)>,
    pub removed_cocoverings: Vec<(Label, Label)>,
}

/// The change predicted from the name `(a,b,c,d)+`: coverings `(i, c)` for
/// `a ≤ i < b` appear, co-coverings `(b, j)` for `c < j ≤ d` disappear.
pub fn covering_change(t: &Tree, u: &Tree) -> Result<CoveringChange> {
    let name = pair_name(t, u).ok_or(Error::NotBasePair)?;
    if name.sign != Sign::Positive {
        return Err(Error::NotPositive);
    }
    let labels = t.labels();
    Ok(CoveringChange {
        added_coverings: labels
            .iter()
            .filter(|&&i| name.a <= i && i < name.b)
            .map(|&i| (i, name.c))
            .collect(),
        removed_cocoverings: labels
            .iter()
            .filter(|&&j| name.c < j && j <= name.d)
            .map(|&j| (name.b, j))
            .collect(),
    })
}

/// The same change computed by comparing the relations of both trees.
pub fn observed_covering_change(t: &Tree, u: &Tree) -> CoveringChange {
    let (ct, cu) = (CoveringRelation::covering(t), CoveringRelation::covering(u));
    let (kt, ku) = (CoveringRelation::cocovering(t), CoveringRelation::cocovering(u));
    CoveringChange {
        added_coverings: cu.difference(&ct),
        removed_cocoverings: kt.difference(&ku),
    }
}

/// Outcome of checking obligations against one concrete path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    /// For each obligation, the index of the first path edge whose name matches.
    pub witnesses: Vec<Option<usize>>,
}

impl WitnessReport {
    pub fn all_satisfied(&self) -> bool {
        self.witnesses.iter().all(Option::is_some)
    }
}

/// For each obligation, finds the first edge of `path` whose name satisfies it.
pub fn lemma_witnesses(path: &[Tree], obligations: &[Obligation]) -> Result<WitnessReport> {
    let names = path_names(path)?;
    Ok(WitnessReport {
        witnesses: obligations
            .iter()
            .map(|ob| names.iter().position(|n| ob.matches(n)))
            .collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotation::neighbors;

    fn sp(s: &str) -> Tree {
        Tree::spine(s).unwrap()
    }

    /// Definition-level oracle: scan every subtree.
    fn covers_by_subtrees(t: &Tree, i: Label, j: Label) -> bool {
        t.internal_nodes().iter().any(|(_, s)| {
            let l = s.labels();
            l.last() == Some(&j) && l[..l.len() - 1].contains(&i)
        })
    }

    fn cocovers_by_subtrees(t: &Tree, i: Label, j: Label) -> bool {
        t.internal_nodes().iter().any(|(_, s)| {
            let l = s.labels();
            l[0] == i && l[1..].contains(&j)
        })
    }

    fn all_pairs(t: &Tree) -> Vec<(Label, Label)> {
        let l = t.labels();
        let mut out = vec![];
        for x in 0..l.len() {
            for y in x + 1..l.len() {
                out.push((l[x], l[y]));
            }
        }
        out
    }

    #[test]
    fn covering_examples() {
        let t = sp("100");
        let rel = CoveringRelation::covering(&t);
        assert_eq!(rel.iter().collect::<Vec<_>>(), vec![(1, 4), (2, 3), (2, 4), (3, 4)]);
        let k = CoveringRelation::cocovering(&sp("11"));
        assert_eq!(k.iter().collect::<Vec<_>>(), vec![(1, 2), (1, 3), (2, 3)]);
        for n in 1..=6 {
            for t in Tree::all(n) {
                for i in 1..=n as Label {
                    assert!(covers(&t, i, n as Label + 1).unwrap());
                }
            }
        }
    }

    #[test]
    fn address_criterion_matches_definition() {
        for n in 0..=7 {
            for t in Tree::all(n) {
                let (c, k) = (CoveringRelation::covering(&t), CoveringRelation::cocovering(&t));
                for (i, j) in all_pairs(&t) {
                    let cv = covers(&t, i, j).unwrap();
                    assert_eq!(cv, covers_by_subtrees(&t, i, j));
                    assert_eq!(cv, c.contains(i, j));
                    let kv = cocovers(&t, i, j).unwrap();
                    assert_eq!(kv, cocovers_by_subtrees(&t, i, j));
                    assert_eq!(kv, k.contains(i, j));
                }
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        let t = sp("10");
        assert!(covers(&t, 2, 2).is_err());
        assert!(covers(&t, 3, 1).is_err());
        assert_eq!(covers(&t, 1, 9), Err(Error::UnknownLabel(9)));
    }

    #[test]
    fn reconstruct_examples() {
        let t = sp("00");
        let rel = CoveringRelation::covering(&t);
        assert_eq!(reconstruct(&rel, &[1, 2, 3]).unwrap(), t);
        assert_eq!(reconstruct(&CoveringRelation::default(), &[7]).unwrap(), Tree::leaf(7));
        for n in 0..=7 {
            for t in Tree::all(n) {
                let rel = CoveringRelation::covering(&t);
                assert_eq!(reconstruct(&rel, &t.labels()).unwrap(), t);
            }
        }
        let bogus = CoveringRelation::from_pairs([(1, 2)]);
        assert!(matches!(reconstruct(&bogus, &[1, 2, 3]), Err(Error::Inconsistent(_))));
    }

    #[test]
    fn covering_change_examples() {
        let ch = covering_change(&sp("11"), &sp("00")).unwrap();
        assert_eq!(ch.added_coverings, vec![(1, 2)]);
        assert_eq!(ch.removed_cocoverings, vec![(2, 3)]);
        let t: Tree = "(* ((* ((* (* *)) *)) *))".parse().unwrap();
        let u: Tree = "(* (((* (* (* *))) *) *))".parse().unwrap();
        let ch = covering_change(&t, &u).unwrap();
        assert_eq!(ch.added_coverings, vec![(2, 5)]);
        assert_eq!(ch.removed_cocoverings, vec![(3, 6)]);
        assert_eq!(covering_change(&sp("00"), &sp("11")), Err(Error::NotPositive));
        assert_eq!(covering_change(&sp("00"), &sp("00")), Err(Error::NotBasePair));
    }

    #[test]
    fn covering_change_formula_is_exact() {
        for n in 1..=7 {
            for t in Tree::all(n) {
                for (e, u) in neighbors(&t) {
                    if e.sign == Sign::Positive {
                        assert_eq!(covering_change(&t, &u).unwrap(), observed_covering_change(&t, &u));
                    }
                }
            }
        }
    }

    #[test]
    fn empty_obligation_list_is_vacuous() {
        let report = lemma_witnesses(&[sp("11"), sp("00")], &[]).unwrap();
        assert!(report.all_satisfied());
    }
}
