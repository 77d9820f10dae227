//! The rotation graph of a size as a DOT digraph, edges oriented by
//! positive rotation and labelled with the position and name of the pair.

use std::collections::HashMap;
use std::fmt::Write;

use rotdist::rotation::{name_at, neighbors};
use rotdist::Tree;

pub fn associahedron(n: usize) -> String {
    let trees = Tree::all(n);
    let index: HashMap<&Tree, usize> = trees.iter().enumerate().map(|(k, t)| (t, k)).collect();
    let mut out = String::new();
    let _ = writeln!(out, "digraph K{n} {{");
    let _ = writeln!(out, "  node [shape=box, fontname=monospace];");
    for (k, t) in trees.iter().enumerate() {
        let _ = writeln!(out, "  t{k} [label=\"{t}\"];");
    }
    for (k, t) in trees.iter().enumerate() {
        for (edge, u) in neighbors(t) {
            if !edge.sign.is_positive() {
                continue;
            }
            let j = index[&u];
            let name = name_at(t, &edge).expect("edge applies");
            let _ = writeln!(out, "  t{k} -> t{j} [label=\"{edge} {name}\"];");
        }
    }
    out.push_str("}\n");
    out
}
