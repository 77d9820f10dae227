use std::collections::{HashMap, VecDeque};

use proptest::prelude::*;

use rotdist::bounds::{all_bounds, comb_distance};
use rotdist::collapse::{collapse, collapse_tree};
use rotdist::covering::{reconstruct, CoveringRelation};
use rotdist::rotation::{neighbors, path_names};
use rotdist::search::{dist_i, distance, enumerate_geodesics};
use rotdist::thompson::{apply, chi};
use rotdist::tree::CATALAN;
use rotdist::triangulation::{from_triangulation, to_triangulation};
use rotdist::{ExtendedTree, LabelSet, Shape, Tree};

/// Plain BFS over `rotation::neighbors`, independent of both search engines.
fn oracle(t: &Tree, u: &Tree) -> usize {
    let mut seen = HashMap::from([(t.clone(), 0usize)]);
    let mut queue = VecDeque::from([t.clone()]);
    while let Some(x) = queue.pop_front() {
        let d = seen[&x];
        if x == *u {
            return d;
        }
        for (_, y) in neighbors(&x) {
            seen.entry(y.clone()).or_insert_with(|| {
                queue.push_back(y);
                d + 1
            });
        }
    }
    unreachable!("rotation graph is connected")
}

fn tree_of(n: usize) -> impl Strategy<Value = Tree> {
    (0..CATALAN[n]).prop_map(move |r| Shape::unrank(r, n).unwrap().to_tree())
}

fn pair(max: usize) -> impl Strategy<Value = (Tree, Tree)> {
    (1..=max).prop_flat_map(|n| (tree_of(n), tree_of(n)))
}

fn triple(max: usize) -> impl Strategy<Value = (Tree, Tree, Tree)> {
    (1..=max).prop_flat_map(|n| (tree_of(n), tree_of(n), tree_of(n)))
}

fn label_set(n: usize) -> impl Strategy<Value = LabelSet> {
    proptest::collection::vec(any::<bool>(), n + 1)
        .prop_map(|bits| LabelSet::from_labels(bits.iter().enumerate().filter(|(_, &b)| b).map(|(k, _)| k as u32 + 1)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn distance_matches_plain_bfs((t, u) in pair(7)) {
        let r = distance(&t, &u).unwrap();
        prop_assert_eq!(r.distance, oracle(&t, &u));
        let path = r.path.unwrap();
        prop_assert_eq!(path.len(), r.distance + 1);
        prop_assert_eq!(path_names(&path).unwrap().len(), r.distance);
    }

    #[test]
    fn distance_is_a_metric((a, b, c) in triple(9)) {
        let ab = distance(&a, &b).unwrap().distance;
        let ba = distance(&b, &a).unwrap().distance;
        let bc = distance(&b, &c).unwrap().distance;
        let ac = distance(&a, &c).unwrap().distance;
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(ab == 0, a == b);
        prop_assert!(ac <= ab + bc);
    }

    #[test]
    fn mirror_preserves_distance((t, u) in pair(9)) {
        prop_assert_eq!(
            distance(&t, &u).unwrap().distance,
            distance(&t.mirror(), &u.mirror()).unwrap().distance
        );
    }

    #[test]
    fn bounds_are_below_distance((t, u) in pair(9)) {
        let d = distance(&t, &u).unwrap().distance;
        let b = all_bounds(&t, &u).unwrap();
        prop_assert!(b.best <= d, "{:?} vs {}", b, d);
        let comb = Tree::right_comb(t.size());
        prop_assert_eq!(distance(&comb, &t).unwrap().distance, comb_distance(&t));
    }

    #[test]
    fn text_forms_round_trip(t in (0usize..=12).prop_flat_map(tree_of)) {
        prop_assert_eq!(t.to_string().parse::<Tree>().unwrap(), t.clone());
        prop_assert_eq!(Tree::decode(&t.encode()).unwrap(), t.clone());
        let s = t.shape().unwrap();
        prop_assert_eq!(Shape::unrank(s.rank(), t.size()).unwrap(), s);
        if let Some(sp) = t.spine_of() {
            prop_assert_eq!(Tree::spine(&sp).unwrap(), t.clone());
        }
    }

    #[test]
    fn triangulation_codec(t in (0usize..=10).prop_flat_map(tree_of)) {
        let tri = to_triangulation(&t);
        prop_assert_eq!(from_triangulation(&tri), t.clone());
        prop_assert_eq!(tri.flips().len(), t.size().saturating_sub(1));
        let text = tri.to_string();
        prop_assert_eq!(text.parse::<rotdist::triangulation::Triangulation>().unwrap(), tri);
    }

    #[test]
    fn covering_relation_determines_the_tree(t in (0usize..=10).prop_flat_map(tree_of)) {
        let rel = CoveringRelation::covering(&t);
        prop_assert_eq!(reconstruct(&rel, &t.labels()).unwrap(), t);
    }

    #[test]
    fn chi_words_connect_trees((t, u) in pair(10)) {
        let w = chi(&t).inverse().concat(&chi(&u));
        prop_assert_eq!(apply(&t, &w), Some(u));
    }

    #[test]
    fn collapses_compose(
        (t, i, j) in (1usize..=9).prop_flat_map(|n| (tree_of(n), label_set(n), label_set(n)))
    ) {
        let once = collapse_tree(&t, &i.union(&j));
        let twice = collapse(&collapse_tree(&t, &i), &j);
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn collapsing_distance_extremes((t, u) in pair(7)) {
        let d = distance(&t, &u).unwrap().distance;
        // no step collapses under the empty set; every step collapses under all labels
        prop_assert_eq!(dist_i(&t, &u, &LabelSet::empty()).unwrap().distance, 0);
        let all = LabelSet::interval(1, t.size() as u32 + 1);
        prop_assert_eq!(collapse_tree(&t, &all), ExtendedTree::Empty);
        prop_assert_eq!(dist_i(&t, &u, &all).unwrap().distance, d);
    }

    #[test]
    fn collapsing_distance_inequality(
        (t, u, i) in (1usize..=7).prop_flat_map(|n| (tree_of(n), tree_of(n), label_set(n)))
    ) {
        let d = distance(&t, &u).unwrap().distance;
        let di = dist_i(&t, &u, &i).unwrap().distance;
        let (ct, cu) = (collapse_tree(&t, &i), collapse_tree(&u, &i));
        let dc = match (ct.as_tree(), cu.as_tree()) {
            (Some(a), Some(b)) => oracle(a, b),
            _ => 0,
        };
        prop_assert!(dc + di <= d, "{} + {} > {}", dc, di, d);
    }
}

#[test]
fn geodesics_of_the_four_leaf_spines() {
    let t = Tree::spine("1100").unwrap();
    let u = Tree::spine("0011").unwrap();
    let all = enumerate_geodesics(&t, &u, 1000).unwrap();
    assert!(!all.is_empty());
    for p in &all {
        assert_eq!(p.len(), 5);
        assert_eq!(p.first(), Some(&t));
        assert_eq!(p.last(), Some(&u));
        path_names(p).unwrap();
    }
}
