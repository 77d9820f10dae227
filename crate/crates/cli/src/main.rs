//! `rotdist`: rotation distance between binary trees from the command line.

mod cache;
mod dot;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rotdist::bounds::all_bounds;
use rotdist::rotation::{pair_address, pair_name};
use rotdist::search;
use rotdist::thompson::{self, FWord};
use rotdist::{families, verify, LabelSet, SearchReport, Tree};

use cache::Cache;

const TREE_HELP: &str = "Trees are given as spines (0/1 strings such as 1100, read from the root \
down; 1 continues right, 0 continues left) or in bracket form, where a leaf is * or a label and a \
node is (L R), e.g. ((* *) *) or ((1 2) (3 4)). Unlabelled leaves are numbered 1, 2, ... from left \
to right.";

#[derive(Parser)]
#[command(name = "rotdist", version, about = "Rotation distance between binary trees", after_help = TREE_HELP)]
struct Cli {
    /// Print one JSON record instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// JSON-lines file caching search results.
    #[arg(long, global = true, env = "ROTDIST_CACHE", value_name = "PATH")]
    cache: Option<PathBuf>,

    /// Ignore the cache for this run.
    #[arg(long, global = true)]
    no_cache: bool,

    /// Worker threads for parallel searches (default: available parallelism).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact rotation distance between two trees.
    Dist {
        source: String,
        target: String,
        /// Print a geodesic with the position and name of every step.
        #[arg(long)]
        witness: bool,
    },
    /// Diameter d(n) of the rotation graph of size n.
    Diam {
        n: usize,
        /// Lift the memory guard on n.
        #[arg(long)]
        force: bool,
        #[arg(long)]
        witness: bool,
    },
    /// Lower bounds for dist(T, T') read off leaf addresses.
    Bound { source: String, target: String },
    /// Dist_I: fewest I-collapsing steps on a path between two trees.
    CollapseDist {
        source: String,
        target: String,
        /// Label set, e.g. `4,5` or `2..7,9`.
        #[arg(long)]
        labels: String,
        #[arg(long)]
        witness: bool,
    },
    /// Run a verification suite (or `all`); exits nonzero on any failure.
    Verify {
        suite: String,
        #[arg(long, value_name = "K")]
        max_size: Option<usize>,
    },
    /// Named families of tree pairs.
    #[command(subcommand)]
    Families(FamiliesCmd),
    /// The rotation graph of size n in DOT format.
    ExportDot {
        n: usize,
        /// Allow n above 8.
        #[arg(long)]
        force: bool,
    },
    /// Thompson's group F acting on trees.
    #[command(subcommand)]
    Thompson(ThompsonCmd),
}

#[derive(Subcommand)]
enum FamiliesCmd {
    /// List family names and their parameters.
    List,
    /// Build one member, e.g. `make bicomb 2 3`.
    Make { name: String, params: Vec<usize> },
}

#[derive(Subcommand)]
enum ThompsonCmd {
    /// Apply a word such as `A[]+ A[10]-` to a tree.
    Apply {
        tree: String,
        word: String,
        /// Grow the tree until the word acts.
        #[arg(long)]
        extend: bool,
    },
    /// The geodesic word from the right comb to a tree, with I(w).
    Chi { tree: String },
    /// Whether two words represent the same element of F.
    Equiv(EquivArgs),
}

#[derive(Args)]
struct EquivArgs {
    left: String,
    right: String,
}

type Failure = Box<dyn std::error::Error>;

fn tree_arg(what: &str, s: &str) -> Result<Tree, Failure> {
    s.parse::<Tree>().map_err(|e| format!("{what} {s:?}: {e}").into())
}

fn word_arg(s: &str) -> Result<FWord, Failure> {
    s.parse::<FWord>().map_err(|e| format!("word {s:?}: {e}").into())
}

struct Out {
    json: bool,
}

impl Out {
    fn emit(&self, record: &Value, text: impl FnOnce() -> String) {
        if self.json {
            println!("{record}");
        } else {
            let t = text();
            print!("{t}");
            if !t.ends_with('\n') {
                println!();
            }
        }
    }
}

fn search_record(query: &str, n: usize, r: &SearchReport) -> Value {
    let mut v = json!({
        "query": query,
        "n": n,
        "result": r.distance,
        "visited": r.visited,
        "millis": r.elapsed.as_millis() as u64,
    });
    if let Some(p) = &r.path {
        v["witness"] = json!(p.iter().map(ToString::to_string).collect::<Vec<_>>());
    }
    v
}

/// Cached search: a hit short-circuits `run` unless a witness is wanted and missing.
fn cached_search(
    cache: &Cache,
    query: &str,
    n: usize,
    witness: bool,
    run: impl FnOnce() -> rotdist::Result<SearchReport>,
) -> Result<Value, Failure> {
    let mut record = match cache.lookup(query, |v| !witness || v.get("witness").is_some()) {
        Some(hit) => hit,
        None => {
            let record = search_record(query, n, &run()?);
            cache.store(&record)?;
            record
        }
    };
    if !witness {
        if let Some(o) = record.as_object_mut() {
            o.remove("witness");
        }
    }
    Ok(record)
}

fn witness_text(record: &Value, set: Option<&LabelSet>) -> Result<String, Failure> {
    let Some(steps) = record.get("witness").and_then(Value::as_array) else {
        return Ok(String::new());
    };
    let path: Vec<Tree> = steps
        .iter()
        .map(|s| tree_arg("witness", s.as_str().unwrap_or("")))
        .collect::<Result<_, _>>()?;
    let mut out = String::new();
    for (k, t) in path.iter().enumerate() {
        if k > 0 {
            let prev = &path[k - 1];
            let edge = pair_address(prev, t).ok_or("witness is not a path")?;
            let name = pair_name(prev, t).ok_or("witness is not a path")?;
            let mark = match set {
                Some(s) if !rotdist::collapse::is_collapsing_pair(prev, t, s)? => "  *",
                _ => "",
            };
            out.push_str(&format!("   {edge} {name}{mark}\n"));
        }
        out.push_str(&format!("{t}\n"));
    }
    Ok(out)
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let cache = if cli.no_cache {
        Cache::disabled()
    } else {
        Cache::new(cli.cache)
    };
    let out = Out { json: cli.json };
    match cli.command {
        Command::Dist {
            source,
            target,
            witness,
        } => {
            let (t, u) = (tree_arg("source", &source)?, tree_arg("target", &target)?);
            search::check_compatible(&t, &u)?;
            let query = format!("dist {t} {u}");
            let rec = cached_search(&cache, &query, t.size(), witness, || search::distance(&t, &u))?;
            let text = format!("{}\n{}", rec["result"], witness_text(&rec, None)?);
            out.emit(&rec, || text);
        }
        Command::Diam { n, force, witness } => {
            let query = format!("diam {n}");
            let rec = cached_search(&cache, &query, n, witness, || search::diameter(n, force))?;
            let text = format!("{}\n{}", rec["result"], witness_text(&rec, None)?);
            out.emit(&rec, || text);
        }
        Command::Bound { source, target } => {
            let (t, u) = (tree_arg("source", &source)?, tree_arg("target", &target)?);
            let b = all_bounds(&t, &u)?;
            let rec = json!({
                "query": format!("bound {t} {u}"),
                "n": t.size(),
                "delta": b.delta,
                "lattice": b.lattice,
                "comb": b.comb,
                "invariant": b.invariant,
                "result": b.best,
            });
            out.emit(&rec, || {
                let mark = |v: usize| if v == b.best { "  <- max" } else { "" };
                let mut s = format!("delta      {}{}\n", b.delta, mark(b.delta));
                s += &format!("lattice    {}{}\n", b.lattice, mark(b.lattice));
                match b.comb {
                    Some(c) => s += &format!("comb       {c}{}  (exact)\n", mark(c)),
                    None => s += "comb       -\n",
                }
                s += &format!("invariant  {}{}\n", b.invariant, mark(b.invariant));
                s + &format!("max        {}\n", b.best)
            });
        }
        Command::CollapseDist {
            source,
            target,
            labels,
            witness,
        } => {
            let (t, u) = (tree_arg("source", &source)?, tree_arg("target", &target)?);
            let set: LabelSet = labels.parse().map_err(|e| format!("labels {labels:?}: {e}"))?;
            let query = format!("collapse-dist {t} {u} {set}");
            let rec = cached_search(&cache, &query, t.size(), witness, || search::dist_i(&t, &u, &set))?;
            let mut text = format!("{}\n", rec["result"]);
            if witness {
                text += &witness_text(&rec, Some(&set))?;
                text += "(* marks the steps that are not I-collapsing)\n";
            }
            out.emit(&rec, || text);
        }
        Command::Verify { suite, max_size } => {
            let names: Vec<&str> = if suite == "all" {
                verify::SUITES.iter().map(|(s, _)| *s).collect()
            } else {
                vec![suite.as_str()]
            };
            let mut ok = true;
            for name in names {
                let report = verify::run(name, max_size)?;
                ok &= report.passed;
                let mut rec = serde_json::to_value(&report)?;
                rec["query"] = json!(format!("verify {name} {}", report.max_size));
                out.emit(&rec, || {
                    let mut s = String::new();
                    for c in &report.checks {
                        match &c.counterexample {
                            None => s += &format!("PASS {} ({} cases)\n", c.name, c.cases),
                            Some(x) => s += &format!("FAIL {} ({} cases): {x}\n", c.name, c.cases),
                        }
                    }
                    let verdict = if report.passed { "pass" } else { "FAIL" };
                    s + &format!(
                        "{}: {verdict} at size <= {} in {} ms\n",
                        report.suite,
                        report.max_size,
                        report.elapsed.as_millis()
                    )
                });
            }
            if !ok {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Families(FamiliesCmd::List) => {
            let rec = json!({
                "query": "families list",
                "result": families::FAMILIES
                    .iter()
                    .map(|(n, p)| json!({"name": n, "params": p}))
                    .collect::<Vec<_>>(),
            });
            out.emit(&rec, || {
                families::FAMILIES
                    .iter()
                    .map(|(n, p)| format!("{n:16} {p}\n"))
                    .collect()
            });
        }
        Command::Families(FamiliesCmd::Make { name, params }) => {
            let f = families::make(&name, &params)?;
            let mut rec = serde_json::to_value(&f)?;
            rec["query"] = json!(format!(
                "families make {name} {}",
                params.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
            ));
            rec["n"] = json!(f.source.size());
            rec["source_spine"] = json!(f.source.spine_of());
            rec["target_spine"] = json!(f.target.spine_of());
            out.emit(&rec, || {
                let spine = |t: &Tree| t.spine_of().unwrap_or_else(|| "-".into());
                let set = |s: &Option<LabelSet>| s.as_ref().map_or("-".into(), ToString::to_string);
                format!(
                    "name    {}\nsize    {}\nsource  {}\n        spine {}\ntarget  {}\n        spine {}\nbound   {}{}\nI       {}\nJ       {}\n",
                    f.name,
                    f.source.size(),
                    f.source,
                    spine(&f.source),
                    f.target,
                    spine(&f.target),
                    f.bound,
                    if f.exact { " (exact)" } else { "" },
                    set(&f.i),
                    set(&f.j),
                )
            });
        }
        Command::ExportDot { n, force } => {
            if n > 8 && !force {
                return Err(format!("size {n} makes a very large graph; pass --force to export it").into());
            }
            let dot = dot::associahedron(n);
            let rec = json!({"query": format!("export-dot {n}"), "n": n, "result": dot});
            out.emit(&rec, || dot.clone());
        }
        Command::Thompson(ThompsonCmd::Apply { tree, word, extend }) => {
            let t = tree_arg("tree", &tree)?;
            let w = word_arg(&word)?;
            let (from, to) = if extend {
                let (a, b) = thompson::apply_with_extension(&t, &w);
                (a, Some(b))
            } else {
                (t.clone(), thompson::apply(&t, &w))
            };
            let rec = json!({
                "query": format!("thompson apply {t} {w}"),
                "n": from.size(),
                "tree": from.to_string(),
                "result": to.as_ref().map(ToString::to_string),
            });
            out.emit(&rec, || match &to {
                Some(u) if extend => format!("{from}\n{u}\n"),
                Some(u) => format!("{u}\n"),
                None => "undefined (try --extend)\n".into(),
            });
        }
        Command::Thompson(ThompsonCmd::Chi { tree }) => {
            let t = tree_arg("tree", &tree)?;
            let w = thompson::chi(&t);
            let rec = json!({
                "query": format!("thompson chi {t}"),
                "n": t.size(),
                "result": w.to_string(),
                "length": w.len(),
                "invariant": thompson::invariant_i(&w),
            });
            out.emit(&rec, || {
                format!("{w}\nlength {}  I {}\n", w.len(), thompson::invariant_i(&w))
            });
        }
        Command::Thompson(ThompsonCmd::Equiv(EquivArgs { left, right })) => {
            let (a, b) = (word_arg(&left)?, word_arg(&right)?);
            let same = thompson::words_equivalent(&a, &b);
            let (ia, ib) = (thompson::invariant_i(&a), thompson::invariant_i(&b));
            let rec = json!({
                "query": format!("thompson equiv {a} {b}"),
                "result": same,
                "invariant": [ia, ib],
            });
            out.emit(&rec, || format!("{same}\nI {ia} {ib}\n"));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
