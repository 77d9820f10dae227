//! Leaf collapsing: deleting the leaves whose labels lie in a set and
//! contracting what remains, and its effect on base pairs.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rotation::{pair_name, PairName};
use crate::tree::{ExtendedTree, Label, Tree};

/// A finite set of labels stored as sorted, disjoint, non-adjacent ranges.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LabelSet {
    runs: Vec<(Label, Label)>,
}

impl LabelSet {
    pub fn empty() -> Self {
        LabelSet::default()
    }

    /// `[lo, hi]`; empty when `lo > hi`.
    pub fn interval(lo: Label, hi: Label) -> Self {
        if lo > hi {
            LabelSet::empty()
        } else {
            LabelSet { runs: vec![(lo, hi)] }
        }
    }

    pub fn from_labels(labels: impl IntoIterator<Item = Label>) -> Self {
        let mut v: Vec<Label> = labels.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        let mut runs: Vec<(Label, Label)> = Vec::new();
        for x in v {
            match runs.last_mut() {
                Some((_, hi)) if *hi + 1 == x => *hi = x,
                _ => runs.push((x, x)),
            }
        }
        LabelSet { runs }
    }

    pub fn contains(&self, x: Label) -> bool {
        let idx = self.runs.partition_point(|&(_, hi)| hi < x);
        self.runs.get(idx).is_some_and(|&(lo, _)| lo <= x)
    }

    pub fn is_empty(&self) -> bool {
        self.runs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.runs.iter().map(|&(lo, hi)| (hi - lo + 1) as usize).sum()
    }

    /// Maximal runs of consecutive labels.
    pub fn runs(&self) -> &[(Label, Label)] {
        &self.runs
    }

    pub fn iter(&self) -> impl Iterator<Item = Label> + '_ {
        self.runs.iter().flat_map(|&(lo, hi)| lo..=hi)
    }

    pub fn union(&self, other: &LabelSet) -> LabelSet {
        LabelSet::from_labels(self.iter().chain(other.iter()))
    }

    pub fn intersects(&self, other: &LabelSet) -> bool {
        self.iter().any(|x| other.contains(x))
    }

    /// Labels in the set, as a bit mask (bit `l` for label `l`), when all are below 64.
    pub fn mask(&self) -> Option<u64> {
        let mut m = 0u64;
        for x in self.iter() {
            if x >= 64 {
                return None;
            }
            m |= 1 << x;
        }
        Some(m)
    }
}

impl fmt::Display for LabelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.runs.is_empty() {
            return f.write_str("∅");
        }
        for (k, &(lo, hi)) in self.runs.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            match hi - lo {
                0 => write!(f, "{lo}")?,
                1 => write!(f, "{lo},{hi}")?,
                _ => write!(f, "{lo}..{hi}")?,
            }
        }
        Ok(())
    }
}

impl FromStr for LabelSet {
    type Err = Error;

    /// Comma-separated labels and inclusive ranges, e.g. `2,3` or `4..7,9`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" || s == "{}" {
            return Ok(LabelSet::empty());
        }
        let s = s.strip_prefix('{').and_then(|r| r.strip_suffix('}')).unwrap_or(s);
        let mut labels = Vec::new();
        let mut offset = 0;
        for item in s.split(',') {
            let bad = |m: &str| Error::parse(offset, format!("{m} in {item:?}"));
            let t = item.trim();
            if let Some((lo, hi)) = t.split_once("..") {
                let lo: Label = lo.trim().parse().map_err(|_| bad("bad range start"))?;
                let hi: Label = hi.trim().parse().map_err(|_| bad("bad range end"))?;
                labels.extend(lo..=hi);
            } else {
                labels.push(t.parse().map_err(|_| bad("bad label"))?);
            }
            offset += item.len() + 1;
        }
        Ok(LabelSet::from_labels(labels))
    }
}

impl Serialize for LabelSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// `coll_I(T)`: the leaves labelled in `I` are removed, `∅ ∨ T = T ∨ ∅ = T`.
pub fn collapse(t: &ExtendedTree, set: &LabelSet) -> ExtendedTree {
    match t {
        ExtendedTree::Empty => ExtendedTree::Empty,
        ExtendedTree::Tree(t) => collapse_tree(t, set),
    }
}

pub fn collapse_tree(t: &Tree, set: &LabelSet) -> ExtendedTree {
    match t.children() {
        None if set.contains(t.first_label()) => ExtendedTree::Empty,
        None => ExtendedTree::Tree(t.clone()),
        Some((l, r)) => collapse_tree(l, set).join(collapse_tree(r, set)),
    }
}

/// Whether every label of `labels` lying in `[lo, hi]` belongs to `set`.
fn covered(set: &LabelSet, labels: &[Label], lo: Label, hi: Label) -> bool {
    labels.iter().filter(|&&l| lo <= l && l <= hi).all(|&l| set.contains(l))
}

/// The collapsing criterion on a name: `[a,b−1] ⊆ I` or `[b,c] ⊆ I` or
/// `[c+1,d] ⊆ I`, where the intervals range over the labels present.
pub fn is_collapsing_name(name: &PairName, set: &LabelSet, labels: &[Label]) -> bool {
    covered(set, labels, name.a, name.b - 1)
        || covered(set, labels, name.b, name.c)
        || covered(set, labels, name.c + 1, name.d)
}

/// Whether the base pair `(t, u)` collapses to a single tree under `set`.
pub fn is_collapsing_pair(t: &Tree, u: &Tree, set: &LabelSet) -> Result<bool> {
    let name = pair_name(t, u).ok_or(Error::NotBasePair)?;
    Ok(is_collapsing_name(&name, set, &t.labels()))
}

/// Name of the collapsed pair, or `None` when the pair is collapsing.
pub fn collapsed_name(name: &PairName, set: &LabelSet, labels: &[Label]) -> Option<PairName> {
    if is_collapsing_name(name, set, labels) {
        return None;
    }
    let kept = |lo: Label, hi: Label| {
        labels
            .iter()
            .copied()
            .filter(move |&l| lo <= l && l <= hi && !set.contains(l))
    };
    Some(PairName {
        a: kept(name.a, name.b - 1).min()?,
        b: kept(name.b, name.c).min()?,
        c: kept(name.b, name.c).max()?,
        d: kept(name.c + 1, name.d).max()?,
        sign: name.sign,
    })
}

/// `I` and `J` are strongly disjoint when no interval `[i, j]` with `i ∈ I`,
/// `j ∈ J` (either order) lies inside `I ∪ J`. Equivalently, the sets are
/// disjoint and no maximal run of `I ∪ J` meets both.
pub fn strongly_disjoint(i: &LabelSet, j: &LabelSet) -> bool {
    if i.intersects(j) {
        return false;
    }
    let both = i.union(j);
    both.runs().iter().all(|&(lo, hi)| {
        let in_i = (lo..=hi).any(|x| i.contains(x));
        let in_j = (lo..=hi).any(|x| j.contains(x));
        !(in_i && in_j)
    })
}
