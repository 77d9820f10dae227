//! Special-pair types used in the lower-bound arguments for the bicomb,
//! tricomb-core and multicomb-core trees, shipped as data.
//!
//! Every type is a family name, its parameter `a`, and the obligation a base
//! pair must satisfy to have that type.

use std::fmt;

use serde::Serialize;

use super::pattern::{Constraint as C, NamePattern, Obligation};
use crate::collapse::{is_collapsing_name, LabelSet};
use crate::rotation::{PairName, Sign};
use crate::tree::Label;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpecialType {
    pub family: &'static str,
    pub index: Label,
    pub obligation: Obligation,
}

impl SpecialType {
    fn new(family: &'static str, index: Label, patterns: Vec<NamePattern>) -> Self {
        SpecialType {
            family,
            index,
            obligation: Obligation::new(patterns),
        }
    }

    pub fn matches(&self, name: &PairName) -> bool {
        self.obligation.matches(name)
    }
}

impl fmt::Display for SpecialType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.family, self.index)
    }
}

fn plus(a: C, b: C, c: C, d: C) -> NamePattern {
    NamePattern::simple(Sign::Positive, a, b, c, d)
}

fn minus(a: C, b: C, c: C, d: C) -> NamePattern {
    NamePattern::simple(Sign::Negative, a, b, c, d)
}

/// Types I–IV for `Sp(1^p 0^q)` → `Sp(0^q 1^p)` with `p ≤ q`.
pub fn bicomb_types(p: Label, q: Label) -> Vec<SpecialType> {
    assert!(1 <= p && p <= q, "bicomb types need 1 <= p <= q");
    let n = p + q;
    let mut out = vec![];
    for a in 2..=p + 1 {
        out.push(SpecialType::new(
            "I",
            a,
            vec![
                plus(C::Any, C::Eq(a), C::Eq(p + 1), C::Any),
                minus(C::Any, C::Eq(a), C::Any, C::Eq(p + 1)),
            ],
        ));
    }
    for a in p + 2..=n {
        out.push(SpecialType::new(
            "II",
            a,
            vec![
                plus(C::Any, C::Eq(p + 1), C::Eq(a), C::Any),
                minus(C::Eq(p + 1), C::Any, C::Eq(a), C::Any),
            ],
        ));
    }
    for a in p + 2..=n {
        out.push(SpecialType::new(
            "III",
            a,
            vec![plus(C::Eq(1), C::Ne(p + 1), C::Eq(a), C::Any)],
        ));
    }
    for a in 2..=p {
        out.push(SpecialType::new(
            "IV",
            a,
            vec![plus(C::Any, C::Eq(a), C::Le(p), C::Any)],
        ));
    }
    out
}

/// Types for `Sp(1^p 0 1^p)` → `Sp((01)^p 0)`, size `2p + 1`; all are
/// `[p+2, 2p+1]`-collapsing.
pub fn tricomb_core_types(p: Label) -> Vec<SpecialType> {
    let nb = 2 * p + 1;
    let mut out = vec![];
    for a in p + 2..=2 * p {
        out.push(SpecialType::new("I", a, vec![plus(C::Any, C::Eq(a), C::Eq(a), C::Any)]));
        out.push(SpecialType::new(
            "II+",
            a,
            vec![plus(C::Any, C::Le(p + 1), C::Eq(a), C::Le(nb))],
        ));
        out.push(SpecialType::new(
            "II-",
            a,
            vec![minus(C::Le(p), C::Any, C::Ge(p + 1), C::Eq(a))],
        ));
        out.push(SpecialType::new(
            "III",
            a,
            vec![minus(C::Any, C::Eq(a + 1), C::Any, C::Eq(nb + 1))],
        ));
    }
    out
}

pub fn tricomb_core_set(p: Label) -> LabelSet {
    LabelSet::interval(p + 2, 2 * p + 1)
}

/// The eleven types for `Sp(1^p 0 1^p 0^p)` → `Sp(0 (10)^p 1^p)`, size
/// `n = 3p + 1`, with `q = 2p + 1`; all are `[p+2, n]`-collapsing.
pub fn multicomb_core_types(p: Label) -> Vec<SpecialType> {
    let n = 3 * p + 1;
    let q = 2 * p + 1;
    let mut out = vec![];
    for a in p + 2..=q {
        out.push(SpecialType::new(
            "I+",
            a,
            vec![plus(C::Any, C::Eq(a), C::Eq(q), C::Any)],
        ));
    }
    for a in p + 2..q {
        out.push(SpecialType::new(
            "I-",
            a,
            vec![minus(C::Any, C::Eq(a), C::Any, C::Eq(q))],
        ));
    }
    for a in q + 1..n {
        out.push(SpecialType::new(
            "II+",
            a,
            vec![plus(C::Any, C::Eq(q), C::Eq(a), C::Any)],
        ));
        out.push(SpecialType::new(
            "II-",
            a,
            vec![minus(C::Eq(q), C::Any, C::Eq(a), C::Any)],
        ));
    }
    for a in p + 2..q {
        out.push(SpecialType::new(
            "III+",
            a,
            vec![plus(C::Any, C::Eq(a), C::Lt(q), C::Any)],
        ));
    }
    for a in p + 2..=q {
        out.push(SpecialType::new(
            "III-",
            a,
            vec![minus(C::Any, C::Eq(a), C::Any, C::Eq(n + 1))],
        ));
    }
    for a in q + 1..n {
        out.push(SpecialType::new(
            "IV+",
            a,
            vec![NamePattern::new(
                Sign::Positive,
                [vec![C::Any], vec![C::Ge(p + 2), C::Ne(q)], vec![C::Eq(a)], vec![C::Any]],
            )],
        ));
    }
    for a in q + 1..n {
        out.push(SpecialType::new(
            "V+",
            a,
            vec![plus(C::Any, C::Le(p + 1), C::Eq(a), C::Le(n))],
        ));
        out.push(SpecialType::new(
            "V-",
            a,
            vec![minus(C::Any, C::Le(p + 1), C::Gt(p), C::Eq(a))],
        ));
        out.push(SpecialType::new(
            "VI+",
            a,
            vec![plus(C::Any, C::Eq(a + 1), C::Any, C::Eq(n + 1))],
        ));
        out.push(SpecialType::new(
            "VI-",
            a,
            vec![minus(C::Any, C::Eq(a + 1), C::Any, C::Eq(n + 1))],
        ));
    }
    out
}

/// `[p+2, 3p+1]`: the labels removed when the multicomb drops one level.
pub fn multicomb_core_set(p: Label) -> LabelSet {
    LabelSet::interval(p + 2, 3 * p + 1)
}

/// Every conceivable name on labels `1..=n+1`: `a < b ≤ c < d`, both signs.
pub fn all_names(n: Label) -> impl Iterator<Item = PairName> {
    let top = n + 1;
    (1..=top).flat_map(move |a| {
        (a + 1..=top).flat_map(move |b| {
            (b..=top).flat_map(move |c| {
                (c + 1..=top).flat_map(move |d| {
                    [Sign::Positive, Sign::Negative]
                        .into_iter()
                        .map(move |s| PairName::new(a, b, c, d, s))
                })
            })
        })
    })
}

/// Names over `1..=n+1` that match a type but are not collapsing for `set`.
pub fn non_collapsing_specials(types: &[SpecialType], set: &LabelSet, n: Label) -> Vec<(PairName, String)> {
    let labels: Vec<Label> = (1..=n + 1).collect();
    all_names(n)
        .flat_map(|name| {
            types
                .iter()
                .filter(move |t| t.matches(&name))
                .map(move |t| (name, t.to_string()))
        })
        .filter(|(name, _)| !is_collapsing_name(name, set, &labels))
        .collect()
}

/// Names over `1..=n+1` carrying two or more types, with those types.
pub fn type_overlaps(types: &[SpecialType], n: Label) -> Vec<(PairName, Vec<String>)> {
    all_names(n)
        .filter_map(|name| {
            let hits: Vec<String> = types
                .iter()
                .filter(|t| t.matches(&name))
                .map(ToString::to_string)
                .collect();
            (hits.len() > 1).then_some((name, hits))
        })
        .collect()
}

/// Whether an overlap is one of the two allowed for the multicomb-core types:
/// `IV+_a` with `VI+_b`, or `II-_a` with `VI-_b`.
pub fn is_allowed_multicomb_overlap(types: &[String]) -> bool {
    if types.len() != 2 {
        return false;
    }
    let fam = |s: &String| s.split('_').next().unwrap_or("").to_string();
    let mut f: Vec<String> = types.iter().map(fam).collect();
    f.sort();
    f == ["IV+", "VI+"] || f == ["II-", "VI-"]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bicomb_types_are_disjoint() {
        for p in 1..=4 {
            for q in p..=6 {
                let types = bicomb_types(p, q);
                assert!(type_overlaps(&types, p + q).is_empty(), "p={p} q={q}");
            }
        }
    }

    #[test]
    fn tricomb_core_types_collapse_and_are_disjoint() {
        for p in 2..=6 {
            let types = tricomb_core_types(p);
            let n = 2 * p + 1;
            assert!(non_collapsing_specials(&types, &tricomb_core_set(p), n).is_empty());
            assert!(type_overlaps(&types, n).is_empty(), "p={p}");
        }
    }

    #[test]
    fn multicomb_core_types_collapse_and_overlap_as_allowed() {
        for p in 1..=6 {
            let types = multicomb_core_types(p);
            let n = 3 * p + 1;
            assert!(
                non_collapsing_specials(&types, &multicomb_core_set(p), n).is_empty(),
                "p={p}"
            );
            for (name, hits) in type_overlaps(&types, n) {
                assert!(is_allowed_multicomb_overlap(&hits), "{name}: {hits:?}");
            }
        }
    }

    #[test]
    fn type_counts() {
        assert_eq!(bicomb_types(2, 2).len(), 2 + 1 + 1 + 1);
        // eleven families
        let fams: std::collections::BTreeSet<&str> = multicomb_core_types(3).iter().map(|t| t.family).collect();
        assert_eq!(fams.len(), 11);
    }
}
