//! Exhaustive and parametric checks of the covering, collapsing and
//! family results, grouped into named suites.
//!
//! Statements of the form "every path from T to T′ contains a pair of this
//! type" are decided exactly: the trees reachable from `T` through steps
//! avoiding the type are computed, and none of them may be a valid `T′`.

use std::time::{Duration, Instant};

use serde::{Serialize, Serializer};

use crate::bounds::{comb_distance, delta, invariant_bound, lattice_f};
use crate::collapse::{collapse, collapse_tree, collapsed_name, is_collapsing_name, strongly_disjoint, LabelSet};
use crate::covering::tables::{
    bicomb_types, multicomb_core_set, multicomb_core_types, non_collapsing_specials, tricomb_core_set,
    tricomb_core_types, type_overlaps, SpecialType,
};
use crate::covering::{covering_change, observed_covering_change, CoveringRelation, Obligation};
use crate::error::{Error, Result};
use crate::families::{
    bicomb, conjecture_pair, multicomb, multicomb_core, tricomb, tricomb_core, zigzag, zigzag_general, FamilyInstance,
};
use crate::rotation::{neighbors, pair_name, Sign};
use crate::search::{avoiding_component, dist_i, distance, min_matching, unavoidable, DenseGraph};
use crate::thompson::{apply, chi, invariant_i, positive_monoid_words, relation_instances, words_equivalent};
use crate::tree::{Address, ExtendedTree, Label, Shape, Tree, CATALAN};
use crate::triangulation::{diagonal_of, from_triangulation, to_triangulation};

/// Suite names with the default value of `max_size`.
pub const SUITES: &[(&str, usize)] = &[
    ("covering-lemmas", 7),
    ("covchange", 7),
    ("keylemma", 6),
    ("collpair", 6),
    ("distcoll", 6),
    ("thompson-relations", 3),
    ("catalan-degree", 10),
    ("codec", 6),
    ("bounds", 8),
    ("bicomb", 12),
    ("tricomb", 12),
    ("multicomb", 12),
    ("zigzag", 12),
    ("conjecture", 13),
];

/// One property, the number of instances examined and the first failing one.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub name: String,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl Check {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub max_size: usize,
    pub passed: bool,
    pub checks: Vec<Check>,
    #[serde(rename = "millis", serialize_with = "ser_millis")]
    pub elapsed: Duration,
}

fn ser_millis<S: Serializer>(d: &Duration, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u128(d.as_millis())
}

/// Runs a suite; `max_size` bounds the tree sizes (for `thompson-relations`,
/// the address lengths) and defaults per [`SUITES`].
pub fn run(suite: &str, max_size: Option<usize>) -> Result<SuiteReport> {
    let default = SUITES
        .iter()
        .find(|(s, _)| *s == suite)
        .map(|&(_, d)| d)
        .ok_or_else(|| Error::Precondition(format!("unknown suite {suite:?}")))?;
    let max = max_size.unwrap_or(default);
    let start = Instant::now();
    let checks = match suite {
        "covering-lemmas" => covering_lemmas(max),
        "covchange" => covchange(max),
        "keylemma" => keylemma(max),
        "collpair" => collpair(max),
        "distcoll" => distcoll(max)?,
        "thompson-relations" => thompson_relations(max),
        "catalan-degree" => catalan_degree(max)?,
        "codec" => codec(max)?,
        "bounds" => bounds(max)?,
        "bicomb" => bicomb_suite(max)?,
        "tricomb" => tricomb_suite(max)?,
        "multicomb" => multicomb_suite(max)?,
        "zigzag" => zigzag_suite(max)?,
        "conjecture" => conjecture_suite(max)?,
        _ => unreachable!(),
    };
    Ok(SuiteReport {
        suite: suite.to_string(),
        max_size: max,
        passed: checks.iter().all(Check::passed),
        checks,
        elapsed: start.elapsed(),
    })
}

struct Tally(Check);

impl Tally {
    fn new(name: impl Into<String>) -> Self {
        Tally(Check {
            name: name.into(),
            cases: 0,
            counterexample: None,
        })
    }

    fn case(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.0.cases += 1;
        if !ok && self.0.counterexample.is_none() {
            self.0.counterexample = Some(witness());
        }
    }

    fn done(self) -> Check {
        self.0
    }
}

/// Covering and co-covering of one tree, looked up by label.
struct Relations {
    cov: CoveringRelation,
    ccov: CoveringRelation,
}

impl Relations {
    fn of(t: &Tree) -> Self {
        Relations {
            cov: CoveringRelation::covering(t),
            ccov: CoveringRelation::cocovering(t),
        }
    }

    fn cov(&self, i: Label, j: Label) -> bool {
        i < j && self.cov.contains(i, j)
    }

    fn cove(&self, i: Label, j: Label) -> bool {
        i == j || self.cov(i, j)
    }

    fn ccov(&self, i: Label, j: Label) -> bool {
        i < j && self.ccov.contains(i, j)
    }

    fn ccove(&self, i: Label, j: Label) -> bool {
        i == j || self.ccov(i, j)
    }
}

fn ob(s: &str) -> Obligation {
    s.parse().expect("well-formed obligation")
}

fn top(n: usize) -> Label {
    n as Label + 1
}

fn covering_lemmas(max: usize) -> Vec<Check> {
    let mut trans = Tally::new("covering is transitive");
    let mut interval = Tally::new("labels covered by j form an interval ending at j-1");
    let mut excl = Tally::new("i covered by j excludes k co-covering l for i < k <= j < l");
    let mut ccover = Tally::new("for a covered by b: a = g01^p, a+1 co-covers b, a covers nothing in [a+1,b-1] agree");
    let mut namecov = Tally::new("base pair names bound coverings in both trees");
    let mut collcov = Tally::new("coverings outside I survive collapsing I");
    for n in 1..=max {
        let m = top(n);
        for t in Tree::all(n) {
            let r = Relations::of(&t);
            for (i, j) in r.cov.iter() {
                for k in j + 1..=m {
                    if r.cov(j, k) {
                        trans.case(r.cov(i, k), || format!("{t}: {i}<{j}<{k}"));
                    }
                }
            }
            for j in 2..=m {
                let covered: Vec<Label> = (1..j).filter(|&i| r.cov(i, j)).collect();
                let ok = covered
                    .last()
                    .is_none_or(|&hi| hi == j - 1 && covered.len() == (j - covered[0]) as usize);
                interval.case(ok, || format!("{t}: covered by {j}: {covered:?}"));
            }
            for i in 1..=m {
                for k in i + 1..=m {
                    for j in k..=m {
                        for l in j + 1..=m {
                            excl.case(!(r.cov(i, j) && r.ccov(k, l)), || format!("{t}: {i} {k} {j} {l}"));
                        }
                    }
                }
            }
            for (a, b) in r.cov.iter() {
                if b <= a + 1 {
                    continue;
                }
                let (ga, gb) = (t.leaf_address(a).unwrap(), t.leaf_address(b).unwrap());
                let g = ga.meet(&gb).len();
                let bits = ga.bits();
                let shape = bits.len() > g && !bits[g] && bits[g + 1..].iter().all(|&x| x);
                let next = r.ccov(a + 1, b);
                let none = (a + 1..b).all(|i| !r.cov(a, i));
                ccover.case(shape == next && next == none, || {
                    format!("{t}: a={a} b={b}: {shape} {next} {none}")
                });
            }
            for (_, u) in neighbors(&t) {
                let name = pair_name(&t, &u).expect("neighbors form base pairs");
                let (a, b, c, d) = (name.a, name.b, name.c, name.d);
                for (tree, rel) in [(&t, &r), (&u, &Relations::of(&u))] {
                    let ok = (a..=d).all(|i| rel.ccove(a, i) && rel.cove(i, d))
                        && (a..b).all(|i| rel.ccove(a, i) && rel.cove(i, b - 1))
                        && (b..=c).all(|i| rel.ccove(b, i) && rel.cove(i, c))
                        && (c + 1..=d).all(|i| rel.ccove(c + 1, i) && rel.cove(i, d));
                    namecov.case(ok, || format!("{tree} in pair {name}"));
                }
            }
            if n <= max.min(6) {
                for mask in 0u32..1 << m {
                    let set = LabelSet::from_labels((1..=m).filter(|&x| mask >> (x - 1) & 1 == 1));
                    let Some(c) = collapse_tree(&t, &set).into_tree() else {
                        continue;
                    };
                    let rc = Relations::of(&c);
                    let outside = |x: Label| !set.contains(x);
                    let ok = r.cov.iter().all(|(i, j)| !outside(i) || !outside(j) || rc.cov(i, j))
                        && r.ccov.iter().all(|(i, j)| !outside(i) || !outside(j) || rc.ccov(i, j));
                    collcov.case(ok, || format!("{t} with I={set}"));
                }
            }
        }
    }
    [trans, interval, excl, ccover, namecov, collcov]
        .into_iter()
        .map(Tally::done)
        .collect()
}

fn covchange(max: usize) -> Vec<Check> {
    let mut formula = Tally::new("covering change of a positive pair follows its name");
    for n in 1..=max {
        for t in Tree::all(n) {
            for (e, u) in neighbors(&t) {
                if e.sign == Sign::Positive {
                    let ok = covering_change(&t, &u).is_ok_and(|c| c == observed_covering_change(&t, &u));
                    formula.case(ok, || format!("{t} -> {u}"));
                }
            }
        }
    }
    vec![formula.done()]
}

/// A path statement: hypotheses on the source and on the target, and the
/// obligation every path between them must meet.
struct PathLemma<'a> {
    tally: Tally,
    source: Hypothesis<'a>,
    target: Hypothesis<'a>,
    obligation: Pattern<'a>,
}

type Hypothesis<'a> = Box<dyn Fn(&Relations, &[Label]) -> bool + 'a>;
type Pattern<'a> = Box<dyn Fn(&[Label]) -> String + 'a>;

fn keylemma(max: usize) -> Vec<Check> {
    // parameters: [i, j] or [i, k, j]
    let mut lemmas: Vec<(usize, PathLemma)> = vec![
        (
            2,
            PathLemma {
                tally: Tally::new("i not covered by j, then covered: some +(<=i,>i,j,_)"),
                source: Box::new(|r, x| !r.cov(x[0], x[1])),
                target: Box::new(|r, x| r.cov(x[0], x[1])),
                obligation: Box::new(|x| format!("+(<={i},>{i},={j},_)", i = x[0], j = x[1])),
            },
        ),
        (
            2,
            PathLemma {
                tally: Tally::new("i co-covers j, then not: some +(_,i,<j,>=j)"),
                source: Box::new(|r, x| r.ccov(x[0], x[1])),
                target: Box::new(|r, x| !r.ccov(x[0], x[1])),
                obligation: Box::new(|x| format!("+(_,={i},<{j},>={j})", i = x[0], j = x[1])),
            },
        ),
        (
            2,
            PathLemma {
                tally: Tally::new("i co-covers j, then i-1 covered by j-1: some +(_,i,<j,>=j)"),
                source: Box::new(|r, x| r.ccov(x[0], x[1])),
                target: Box::new(|r, x| x[0] > 1 && r.cov(x[0] - 1, x[1] - 1)),
                obligation: Box::new(|x| format!("+(_,={i},<{j},>={j})", i = x[0], j = x[1])),
            },
        ),
        (
            2,
            PathLemma {
                tally: Tally::new(
                    "i not covered by j, then covered with i+1 co-covering j: some +(_,i+1,j,_) or -(_,i+1,_,j)",
                ),
                source: Box::new(|r, x| !r.cov(x[0], x[1])),
                target: Box::new(|r, x| r.cov(x[0], x[1]) && r.ccove(x[0] + 1, x[1])),
                obligation: Box::new(|x| format!("+(_,={a},={j},_) | -(_,={a},_,={j})", a = x[0] + 1, j = x[1])),
            },
        ),
        (
            3,
            PathLemma {
                tally: Tally::new("as above with i < k < j: some +(<=i,(i,k],j,_) or -(<=i,(i,k],>=k,j)"),
                source: Box::new(|r, x| !r.cov(x[0], x[2])),
                target: Box::new(|r, x| r.cov(x[0], x[2]) && r.ccove(x[0] + 1, x[2])),
                obligation: Box::new(|x| {
                    let (i, k, j) = (x[0], x[1], x[2]);
                    format!("+(<={i},[{a}..{k}],={j},_) | -(<={i},[{a}..{k}],>={k},={j})", a = i + 1)
                }),
            },
        ),
        (
            2,
            PathLemma {
                tally: Tally::new(
                    "i co-covers j and i covers-or-equals j-1, then no co-covering: some +(_,i,j-1,_) or -(i,_,j-1,_)",
                ),
                source: Box::new(|r, x| r.ccov(x[0], x[1]) && r.cove(x[0], x[1] - 1)),
                target: Box::new(|r, x| !r.ccov(x[0], x[1])),
                obligation: Box::new(|x| format!("+(_,={i},={b},_) | -(={i},_,={b},_)", i = x[0], b = x[1] - 1)),
            },
        ),
    ];
    for n in 1..=max {
        let m = top(n);
        let trees = Tree::all(n);
        let rels: Vec<(u64, Relations)> = trees
            .iter()
            .map(|t| (t.shape().unwrap().rank(), Relations::of(t)))
            .collect();
        let mut by_rank: Vec<usize> = vec![0; trees.len()];
        for (k, (rank, _)) in rels.iter().enumerate() {
            by_rank[*rank as usize] = k;
        }
        for (arity, lemma) in lemmas.iter_mut() {
            let params: Vec<Vec<Label>> = if *arity == 2 {
                (1..=m).flat_map(|i| (i + 1..=m).map(move |j| vec![i, j])).collect()
            } else {
                (1..=m)
                    .flat_map(|i| (i + 1..=m).flat_map(move |k| (k + 1..=m).map(move |j| vec![i, k, j])))
                    .collect()
            };
            for (t, (_, rt)) in trees.iter().zip(&rels) {
                for x in &params {
                    if !(lemma.source)(rt, x) {
                        continue;
                    }
                    let obligation = ob(&(lemma.obligation)(x));
                    let comp = avoiding_component(t, &obligation).expect("packed size");
                    let bad = comp.iter().find(|u| {
                        let k = by_rank[u.shape().unwrap().rank() as usize];
                        (lemma.target)(&rels[k].1, x)
                    });
                    lemma.tally.case(bad.is_none(), || {
                        format!("{t} -> {} with {x:?} avoids {obligation}", bad.unwrap())
                    });
                }
            }
        }
    }
    lemmas.into_iter().map(|(_, l)| l.tally.done()).collect()
}

fn subsets(m: Label) -> impl Iterator<Item = LabelSet> {
    (0u32..1 << m).map(move |mask| LabelSet::from_labels((1..=m).filter(|&x| mask >> (x - 1) & 1 == 1)))
}

fn collpair(max: usize) -> Vec<Check> {
    let mut dichotomy = Tally::new("a collapsed base pair is diagonal exactly when the criterion holds");
    let mut name = Tally::new("otherwise it is a base pair with the predicted name");
    let mut compose = Tally::new("collapsing J then I equals collapsing I and J");
    for n in 1..=max {
        let m = top(n);
        let labels: Vec<Label> = (1..=m).collect();
        let sets: Vec<LabelSet> = subsets(m).collect();
        for t in Tree::all(n) {
            for (e, u) in neighbors(&t) {
                if e.sign != Sign::Positive {
                    continue;
                }
                let nm = pair_name(&t, &u).unwrap();
                for set in &sets {
                    let (ct, cu) = (collapse_tree(&t, set), collapse_tree(&u, set));
                    let crit = is_collapsing_name(&nm, set, &labels);
                    dichotomy.case(crit == (ct == cu), || format!("{t} -> {u}, I={set}"));
                    if !crit {
                        let got = ct.as_tree().zip(cu.as_tree()).and_then(|(a, b)| pair_name(a, b));
                        let want = collapsed_name(&nm, set, &labels);
                        name.case(got.is_some() && got == want, || {
                            format!("{t} -> {u}, I={set}: got {got:?}, want {want:?}")
                        });
                    }
                }
            }
            let whole = ExtendedTree::from(t.clone());
            for j in &sets {
                let cj = collapse(&whole, j);
                for i in &sets {
                    compose.case(collapse(&cj, i) == collapse(&whole, &i.union(j)), || {
                        format!("{t}, I={i}, J={j}")
                    });
                }
            }
        }
    }
    [dichotomy, name, compose].into_iter().map(Tally::done).collect()
}

/// All-pairs distances on the shapes of one size.
fn distance_table(n: usize) -> Result<(DenseGraph, Vec<Vec<u8>>)> {
    let g = DenseGraph::build(n, true)?;
    let table = (0..g.vertex_count() as u32).map(|v| g.bfs(v)).collect();
    Ok((g, table))
}

fn rank(t: &Tree) -> usize {
    t.shape().expect("packed size").rank() as usize
}

fn intervals(m: Label) -> Vec<LabelSet> {
    (1..=m)
        .flat_map(|lo| (lo..=m).map(move |hi| LabelSet::interval(lo, hi)))
        .collect()
}

fn distcoll(max: usize) -> Result<Vec<Check>> {
    let mut below = Tally::new("Dist_I <= dist");
    let mut single = Tally::new("dist(T,T') >= dist(coll_I T, coll_I T') + Dist_I(T,T'), I an interval");
    let mut double =
        Tally::new("dist(T,T') >= dist(coll_I T, coll_I T') + Dist_I(coll_J T, coll_J T'), I, J strongly disjoint");
    let tables: Vec<(DenseGraph, Vec<Vec<u8>>)> = (0..=max).map(distance_table).collect::<Result<_>>()?;
    let dist_of = |a: &Tree, b: &Tree| tables[a.size()].1[rank(a)][rank(b)] as u32;
    for n in 1..=max {
        let m = top(n);
        let labels: Vec<Label> = (1..=m).collect();
        let (g, table) = &tables[n];
        let trees: Vec<Tree> = (0..g.vertex_count() as u32)
            .map(|v| g.shape(v).to_tree_with_labels(&labels))
            .collect();
        let sets: Vec<LabelSet> = intervals(m).into_iter().filter(|s| s.len() < m as usize).collect();
        for set in &sets {
            let collapsed: Vec<Tree> = trees
                .iter()
                .map(|t| collapse_tree(t, set).into_tree().expect("I leaves a label"))
                .collect();
            for (s, t) in trees.iter().enumerate() {
                let w = g.min_weights_from(s as u32, &labels, |nm| is_collapsing_name(nm, set, &labels));
                for (v, u) in trees.iter().enumerate() {
                    let d = table[s][v] as u32;
                    below.case(w[v] <= d, || format!("{t}, {u}, I={set}"));
                    let dc = dist_of(&collapsed[s], &collapsed[v]);
                    single.case(d >= dc + w[v], || format!("{t}, {u}, I={set}: {d} < {dc} + {}", w[v]));
                }
            }
        }
        let pairs: Vec<(&LabelSet, &LabelSet)> = sets
            .iter()
            .flat_map(|i| sets.iter().map(move |j| (i, j)))
            .filter(|(i, j)| strongly_disjoint(i, j) && i.len() + j.len() < m as usize)
            .collect();
        for (i, j) in pairs {
            let coll_j: Vec<Tree> = trees.iter().map(|t| collapse_tree(t, j).into_tree().unwrap()).collect();
            let jl = coll_j[0].labels();
            let gj = &tables[coll_j[0].size()].0;
            for s in (0..trees.len()).step_by(5) {
                let w = gj.min_weights_from(rank(&coll_j[s]) as u32, &jl, |nm| is_collapsing_name(nm, i, &jl));
                let ci = collapse_tree(&trees[s], i).into_tree().unwrap();
                for v in 0..trees.len() {
                    let d = table[s][v] as u32;
                    let dc = dist_of(&ci, &collapse_tree(&trees[v], i).into_tree().unwrap());
                    let wi = w[rank(&coll_j[v])];
                    double.case(d >= dc + wi, || {
                        format!("{}, {}, I={i}, J={j}: {d} < {dc} + {wi}", trees[s], trees[v])
                    });
                }
            }
        }
    }
    Ok([below, single, double].into_iter().map(Tally::done).collect())
}

fn thompson_relations(max_len: usize) -> Vec<Check> {
    let mut equal = Tally::new("both sides of each relation instance are the same element");
    let mut inv = Tally::new("invariant I agrees on both sides");
    let mut action = Tally::new("both sides act alike on trees of size <= 5 where defined");
    let mut chi_check = Tally::new("chi(T) takes the right comb to T with length n - h_R(T)");
    let mut monoid = Tally::new("the two positive words of each staircase length are equivalent with equal I");
    let trees: Vec<Tree> = (1..=5).flat_map(Tree::all).collect();
    for r in relation_instances(max_len) {
        equal.case(words_equivalent(&r.lhs, &r.rhs), || {
            format!("{}: {} = {}", r.relation, r.lhs, r.rhs)
        });
        inv.case(invariant_i(&r.lhs) == invariant_i(&r.rhs), || {
            format!("{}: {} = {}", r.relation, r.lhs, r.rhs)
        });
        for t in &trees {
            if let (Some(a), Some(b)) = (apply(t, &r.lhs), apply(t, &r.rhs)) {
                action.case(a == b, || format!("{}: {} on {t}", r.relation, r.lhs));
            }
        }
    }
    for n in 0..=max_len + 4 {
        for t in Tree::all(n) {
            let c = chi(&t);
            let ok = c.len() == comb_distance(&t) && apply(&Tree::right_comb(n), &c).as_ref() == Some(&t);
            chi_check.case(ok, || format!("{t}: {c}"));
        }
    }
    for p in 1..=max_len + 1 {
        let (a, b) = positive_monoid_words(p);
        monoid.case(words_equivalent(&a, &b) && invariant_i(&a) == invariant_i(&b), || {
            format!("p={p}: {a} vs {b}")
        });
    }
    [equal, inv, action, chi_check, monoid]
        .into_iter()
        .map(Tally::done)
        .collect()
}

fn binomial_catalan(n: usize) -> u128 {
    let mut c: u128 = 1;
    for k in 0..n as u128 {
        c = c * (2 * n as u128 - k) / (k + 1);
    }
    c / (n as u128 + 1)
}

fn catalan_degree(max: usize) -> Result<Vec<Check>> {
    let mut count = Tally::new("number of trees of size n is the Catalan number");
    let mut degree = Tally::new("every tree of size n >= 1 has n - 1 distinct neighbors");
    for (n, &table) in CATALAN.iter().enumerate().take(max + 1) {
        let shapes: Vec<Shape> = Shape::all(n).collect();
        let want = binomial_catalan(n);
        count.case(shapes.len() as u128 == want && table as u128 == want, || {
            format!("n={n}: {} trees, Catalan {want}", shapes.len())
        });
        for s in shapes {
            let mut nb = s.neighbors();
            nb.sort_by_key(|x| x.rank());
            nb.dedup();
            degree.case(nb.len() == n.saturating_sub(1), || {
                format!("{}: {} neighbors", s.to_tree(), nb.len())
            });
        }
    }
    Ok(vec![count.done(), degree.done()])
}

fn codec(max: usize) -> Result<Vec<Check>> {
    let mut round = Tally::new("tree -> triangulation -> tree is the identity");
    let mut iso = Tally::new("rotations correspond to flips of the removed diagonal");
    let mut text = Tally::new("bracket text, bit encoding and rank round-trip");
    for n in 0..=max {
        for t in Tree::all(n) {
            let tri = to_triangulation(&t);
            round.case(from_triangulation(&tri) == t, || format!("{t}: {tri}"));
            let mut via_rotation: Vec<String> = Vec::new();
            for (e, u) in neighbors(&t) {
                let flipped = diagonal_of(&t, &e).and_then(|d| tri.flip(d).ok()).map(|x| x.0);
                iso.case(flipped.as_ref() == Some(&to_triangulation(&u)), || {
                    format!("{t} at {e}")
                });
                via_rotation.push(to_triangulation(&u).to_string());
            }
            let mut via_flip: Vec<String> = tri.flips().into_iter().map(|(_, x)| x.to_string()).collect();
            via_rotation.sort();
            via_flip.sort();
            iso.case(via_rotation == via_flip, || format!("{t}: neighbor sets differ"));
            let parsed: Option<Tree> = t.to_string().parse().ok();
            let decoded = Tree::decode(&t.encode()).ok();
            let unranked = Shape::unrank(rank(&t) as u64, n).ok().map(Shape::to_tree);
            text.case(
                parsed.as_ref() == Some(&t) && decoded.as_ref() == Some(&t) && unranked.as_ref() == Some(&t),
                || t.to_string(),
            );
        }
    }
    Ok(vec![round.done(), iso.done(), text.done()])
}

fn bounds(max: usize) -> Result<Vec<Check>> {
    let mut comb = Tally::new("dist(right comb, T) = n - h_R(T)");
    let mut delta_ok = Tally::new("delta bound <= dist");
    let mut f_ok = Tally::new("lattice bound f <= dist, both directions");
    let mut inv_ok = Tally::new("|I(w)| <= dist for w = chi(T)^-1 chi(T')");
    for n in 0..=max {
        let (g, table) = distance_table(n)?;
        let trees: Vec<Tree> = (0..g.vertex_count() as u32).map(|v| g.shape(v).to_tree()).collect();
        let comb_rank = rank(&Tree::right_comb(n));
        for (v, t) in trees.iter().enumerate() {
            comb.case(table[comb_rank][v] as usize == comb_distance(t), || t.to_string());
        }
        let addrs: Vec<Vec<Address>> = trees
            .iter()
            .map(|t| t.leaf_addresses().into_iter().map(|(_, a)| a).collect())
            .collect();
        let stairs: Vec<Vec<Option<(usize, usize)>>> = addrs
            .iter()
            .map(|a| a.iter().map(Address::as_ones_then_zeros).collect())
            .collect();
        let f_one = |s: usize, v: usize| {
            stairs[s]
                .iter()
                .zip(&addrs[v])
                .filter_map(|(pq, h)| pq.and_then(|(p, q)| lattice_f(p, q, h).ok()))
                .max()
                .unwrap_or(0)
        };
        for s in 0..trees.len() {
            for v in 0..trees.len() {
                let d = table[s][v] as usize;
                let db = addrs[s]
                    .iter()
                    .zip(&addrs[v])
                    .map(|(a, b)| delta(a, b))
                    .max()
                    .unwrap_or(0);
                delta_ok.case(db <= d, || format!("{} -> {}: {db} > {d}", trees[s], trees[v]));
                let fb = f_one(s, v).max(f_one(v, s));
                f_ok.case(fb <= d, || format!("{} -> {}: {fb} > {d}", trees[s], trees[v]));
                let ib = invariant_bound(&trees[s], &trees[v])?;
                inv_ok.case(ib <= d, || format!("{} -> {}: {ib} > {d}", trees[s], trees[v]));
            }
        }
    }
    Ok(vec![comb.done(), delta_ok.done(), f_ok.done(), inv_ok.done()])
}

fn exact_distance(tally: &mut Tally, f: &FamilyInstance) -> Result<usize> {
    let d = distance(&f.source, &f.target)?.distance;
    tally.case(d == f.bound, || {
        format!("{}: distance {d}, expected {}", f.name, f.bound)
    });
    Ok(d)
}

fn collapsed(t: &Tree, set: &LabelSet) -> Tree {
    collapse_tree(t, set)
        .into_tree()
        .expect("nonempty")
        .with_default_labels()
}

fn coherence(tally: &mut Tally, f: &FamilyInstance, set: &LabelSet, g: &FamilyInstance) {
    let ok = collapsed(&f.source, set) == g.source && collapsed(&f.target, set) == g.target;
    tally.case(ok, || {
        format!("collapsing {set} in {} does not give {}", f.name, g.name)
    });
}

fn of_type(types: &[SpecialType], family: &str, a: Label) -> Obligation {
    types
        .iter()
        .find(|t| t.family == family && t.index == a)
        .unwrap_or_else(|| panic!("type {family}_{a} exists"))
        .obligation
        .clone()
}

fn union(obs: impl IntoIterator<Item = Obligation>) -> Obligation {
    Obligation::new(obs.into_iter().flat_map(|o| o.patterns).collect())
}

fn all_types(types: &[SpecialType]) -> Obligation {
    union(types.iter().map(|t| t.obligation.clone()))
}

fn must_meet(tally: &mut Tally, f: &FamilyInstance, what: &str, o: &Obligation) -> Result<()> {
    let ok = unavoidable(&f.source, &f.target, o)?;
    tally.case(ok, || format!("{}: a path avoids {what} ({o})", f.name));
    Ok(())
}

fn bicomb_suite(max: usize) -> Result<Vec<Check>> {
    let mut exact = Tally::new("dist = p + q + min(p,q) - 2");
    let mut lattice = Tally::new("lattice bound f equals the formula");
    let mut disjoint = Tally::new("special types I-IV are disjoint");
    let mut single = Tally::new("every path meets each type I_a and II_b");
    let mut either = Tally::new("every path meets III_b for all b or IV_a for all a");
    let mut count = Tally::new("every path has at least 2p + q - 2 special pairs (p <= q)");
    for n in 2..=max {
        for p in 1..n {
            let q = n - p;
            let f = bicomb(p, q)?;
            exact_distance(&mut exact, &f)?;
            let fb = crate::bounds::f_bound(&f.source, &f.target)?;
            lattice.case(fb == f.bound, || format!("{}: f = {fb}", f.name));
            if p > q || n > max.min(10) {
                continue;
            }
            let (pl, ql) = (p as Label, q as Label);
            let types = bicomb_types(pl, ql);
            disjoint.case(type_overlaps(&types, pl + ql).is_empty(), || f.name.clone());
            for a in 2..=pl + 1 {
                must_meet(&mut single, &f, &format!("I_{a}"), &of_type(&types, "I", a))?;
            }
            for b in pl + 2..=pl + ql {
                must_meet(&mut single, &f, &format!("II_{b}"), &of_type(&types, "II", b))?;
            }
            for b in pl + 2..=pl + ql {
                for a in 2..=pl {
                    let o = union([of_type(&types, "III", b), of_type(&types, "IV", a)]);
                    must_meet(&mut either, &f, &format!("III_{b} or IV_{a}"), &o)?;
                }
            }
            let k = min_matching(&f.source, &f.target, &all_types(&types))?.distance;
            count.case(k + 2 >= 2 * p + q, || format!("{}: {k} special pairs", f.name));
        }
    }
    Ok([exact, lattice, disjoint, single, either, count]
        .into_iter()
        .map(Tally::done)
        .collect())
}

fn tricomb_suite(max: usize) -> Result<Vec<Check>> {
    let mut exact = Tally::new("dist = 5p - 4");
    let mut coh = Tally::new("collapsing I gives the bicomb, collapsing J the core");
    let mut chain = Tally::new("dist >= dist(coll_I) + Dist_I(coll_J) with I, J strongly disjoint");
    let mut core = Tally::new("core: Dist_[p+2,2p+1] = 2p - 2");
    let mut types_ok = Tally::new("core types are disjoint and [p+2,2p+1]-collapsing");
    let mut paths = Tally::new("core: every path meets I_a, and II+_a, II-_a or III_a");
    let mut count = Tally::new("core: every path has at least 2p - 2 special pairs");
    for p in 1.. {
        if 2 * p + 1 > max {
            break;
        }
        if 3 * p <= max {
            let f = tricomb(p)?;
            let d = exact_distance(&mut exact, &f)?;
            let (i, j) = (f.i.clone().unwrap(), f.j.clone().unwrap());
            coherence(&mut coh, &f, &i, &bicomb(p, p)?);
            coherence(&mut coh, &f, &j, &tricomb_core(p)?);
            let ci = distance(&collapsed(&f.source, &i), &collapsed(&f.target, &i))?.distance;
            let (sj, tj) = (
                collapse_tree(&f.source, &j).into_tree().unwrap(),
                collapse_tree(&f.target, &j).into_tree().unwrap(),
            );
            let w = dist_i(&sj, &tj, &i)?.distance;
            chain.case(strongly_disjoint(&i, &j) && d >= ci + w, || {
                format!("{}: {d} < {ci} + {w}", f.name)
            });
        }
        let c = tricomb_core(p)?;
        let pl = p as Label;
        let set = tricomb_core_set(pl);
        let w = dist_i(&c.source, &c.target, &set)?.distance;
        core.case(w == c.bound, || format!("{}: Dist_I = {w}", c.name));
        let types = tricomb_core_types(pl);
        let nb = 2 * pl + 1;
        types_ok.case(
            type_overlaps(&types, nb).is_empty() && non_collapsing_specials(&types, &set, nb).is_empty(),
            || c.name.clone(),
        );
        for a in pl + 2..=2 * pl {
            must_meet(&mut paths, &c, &format!("I_{a}"), &of_type(&types, "I", a))?;
            let o = union(["II+", "II-", "III"].map(|fam| of_type(&types, fam, a)));
            must_meet(&mut paths, &c, &format!("II+/II-/III_{a}"), &o)?;
        }
        let k = min_matching(&c.source, &c.target, &all_types(&types))?.distance;
        count.case(k + 2 >= 2 * p, || format!("{}: {k} special pairs", c.name));
    }
    Ok([exact, coh, chain, core, types_ok, paths, count]
        .into_iter()
        .map(Tally::done)
        .collect())
}

fn multicomb_suite(max: usize) -> Result<Vec<Check>> {
    let mut lower = Tally::new("dist >= 4mp - 3m - p + 1");
    let mut attained = Tally::new("dist = 4mp - 3m - p + 1");
    let mut coh = Tally::new("collapsing I gives level m - 1, collapsing J the core");
    let mut core = Tally::new("core: Dist_I = 4p - 3");
    let mut collapsing = Tally::new("core: every special pair is I-collapsing");
    let mut overlap_check = Tally::new("core: types overlap only as IV+/VI+ or II-/VI-");
    let mut meets_i_ii = Tally::new("core: every path meets I_a and II_a");
    let mut meets_iii_iv = Tally::new("core: every path meets III+_a for all a or IV_b for all b");
    let mut meets_v_vi = Tally::new("core: every path meets V_a, or both VI+_a and VI-_a");
    let mut meets_iii = Tally::new("core: paths to trees where q co-covers n+1 meet III_a");
    let mut count = Tally::new("core: every path has at least 4p - 3 special pairs");
    for m in 1..=max / 2 {
        for p in 1..=max / (2 * m) {
            let f = multicomb(m, p)?;
            let d = distance(&f.source, &f.target)?.distance;
            lower.case(d >= f.bound, || format!("{}: {d} < {}", f.name, f.bound));
            attained.case(d == f.bound, || format!("{}: {d} != {}", f.name, f.bound));
            if m >= 2 {
                coherence(&mut coh, &f, f.i.as_ref().unwrap(), &multicomb(m - 1, p)?);
                coherence(&mut coh, &f, f.j.as_ref().unwrap(), &multicomb_core(p)?);
            }
        }
    }
    for p in 1..=(max.saturating_sub(1)) / 3 {
        let c = multicomb_core(p)?;
        let pl = p as Label;
        let n = 3 * pl + 1;
        let q = 2 * pl + 1;
        let set = multicomb_core_set(pl);
        let w = dist_i(&c.source, &c.target, &set)?.distance;
        core.case(w == c.bound, || format!("{}: Dist_I = {w}", c.name));
        let types = multicomb_core_types(pl);
        let bad = non_collapsing_specials(&types, &set, n);
        collapsing.case(bad.is_empty(), || format!("{}: {:?}", c.name, bad.first()));
        let pairs = type_overlaps(&types, n);
        let stray = pairs
            .iter()
            .find(|(_, ts)| !crate::covering::tables::is_allowed_multicomb_overlap(ts));
        overlap_check.case(stray.is_none(), || format!("{}: {:?}", c.name, stray));
        let t = |fam: &str, a: Label| of_type(&types, fam, a);
        for a in pl + 2..=q {
            let o = if a < q {
                union([t("I+", a), t("I-", a)])
            } else {
                t("I+", a)
            };
            must_meet(&mut meets_i_ii, &c, &format!("I_{a}"), &o)?;
        }
        for a in q + 1..n {
            must_meet(
                &mut meets_i_ii,
                &c,
                &format!("II_{a}"),
                &union([t("II+", a), t("II-", a)]),
            )?;
        }
        for a in pl + 2..q {
            for b in q + 1..n {
                must_meet(
                    &mut meets_iii_iv,
                    &c,
                    &format!("III+_{a} or IV_{b}"),
                    &union([t("III+", a), t("IV+", b)]),
                )?;
            }
        }
        for a in q + 1..n {
            let v = [t("V+", a), t("V-", a)];
            must_meet(
                &mut meets_v_vi,
                &c,
                &format!("V_{a} or VI+_{a}"),
                &union(v.clone().into_iter().chain([t("VI+", a)])),
            )?;
            must_meet(
                &mut meets_v_vi,
                &c,
                &format!("V_{a} or VI-_{a}"),
                &union(v.into_iter().chain([t("VI-", a)])),
            )?;
        }
        for a in pl + 2..=q {
            let o = if a < q {
                union([t("III+", a), t("III-", a)])
            } else {
                t("III-", a)
            };
            let comp = avoiding_component(&c.source, &o)?;
            let bad = comp.iter().find(|u| Relations::of(u).ccov(q, n + 1));
            meets_iii.case(bad.is_none(), || {
                format!("{}: reaches {} avoiding III_{a}", c.name, bad.unwrap())
            });
        }
        let k = min_matching(&c.source, &c.target, &all_types(&types))?.distance;
        count.case(k + 3 >= 4 * p, || format!("{}: {k} special pairs", c.name));
    }
    Ok([
        lower,
        attained,
        coh,
        core,
        collapsing,
        overlap_check,
        meets_i_ii,
        meets_iii_iv,
        meets_v_vi,
        meets_iii,
        count,
    ]
    .into_iter()
    .map(Tally::done)
    .collect())
}

fn zigzag_suite(max: usize) -> Result<Vec<Check>> {
    let mut exact = Tally::new("dist = 3m + 1");
    let mut coh = Tally::new("collapsing I_m gives level m - 2, collapsing J_m gives level 2");
    let mut chain = Tally::new("dist >= dist(coll_I) + Dist_I(coll_J) with I_m, J_m strongly disjoint");
    let mut base = Tally::new("Dist_{I_2} at level 2 is 6");
    let mut general = Tally::new("generalized zigzag Dist_I values 6, 10");
    for m in 0..=(max.saturating_sub(2)) / 2 {
        let f = zigzag(m)?;
        let d = exact_distance(&mut exact, &f)?;
        if m >= 2 {
            let (i, j) = (f.i.clone().unwrap(), f.j.clone().unwrap());
            coherence(&mut coh, &f, &i, &zigzag(m - 2)?);
            coherence(&mut coh, &f, &j, &zigzag(2)?);
            let ci = distance(&collapsed(&f.source, &i), &collapsed(&f.target, &i))?.distance;
            let (sj, tj) = (
                collapse_tree(&f.source, &j).into_tree().unwrap(),
                collapse_tree(&f.target, &j).into_tree().unwrap(),
            );
            let w = dist_i(&sj, &tj, &i)?.distance;
            chain.case(strongly_disjoint(&i, &j) && d >= ci + w, || {
                format!("{}: {d} < {ci} + {w}", f.name)
            });
        }
        if m == 2 {
            let w = dist_i(&f.source, &f.target, f.i.as_ref().unwrap())?.distance;
            base.case(w == 6, || format!("Dist_I = {w}"));
        }
    }
    for p in 1..=2 {
        if 4 * p + 2 > max {
            break;
        }
        let g = zigzag_general(p)?;
        let w = dist_i(&g.source, &g.target, g.i.as_ref().unwrap())?.distance;
        general.case(w == g.bound, || format!("{}: Dist_I = {w}", g.name));
    }
    Ok([exact, coh, chain, base, general]
        .into_iter()
        .map(Tally::done)
        .collect())
}

fn conjecture_suite(max: usize) -> Result<Vec<Check>> {
    let mut exact = Tally::new("dist(T_n, T'_n) = 2n - 6 for n >= 11");
    for n in 11..=max {
        exact_distance(&mut exact, &conjecture_pair(n)?)?;
    }
    Ok(vec![exact.done()])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_passes(suite: &str, max: usize) {
        let r = run(suite, Some(max)).unwrap();
        for c in &r.checks {
            assert!(c.passed(), "{suite}: {} failed on {:?}", c.name, c.counterexample);
        }
        assert!(r.passed);
    }

    #[test]
    fn small_suites_pass() {
        for (suite, _) in SUITES {
            let max = match *suite {
                "thompson-relations" => 2,
                "conjecture" => 11,
                "bicomb" | "tricomb" | "multicomb" | "zigzag" => 8,
                _ => 4,
            };
            assert_passes(suite, max);
        }
    }

    #[test]
    fn checks_count_cases() {
        let r = run("catalan-degree", Some(4)).unwrap();
        assert_eq!(r.checks[0].cases, 5);
        assert_eq!(r.checks[1].cases, 1 + 1 + 2 + 5 + 14);
        assert!(run("nope", None).is_err());
    }

    #[test]
    fn failures_carry_a_reproducer() {
        let mut t = Tally::new("x");
        t.case(true, || unreachable!());
        t.case(false, || "first".into());
        t.case(false, || "second".into());
        let c = t.done();
        assert_eq!((c.cases, c.counterexample.as_deref()), (3, Some("first")));
    }
}
