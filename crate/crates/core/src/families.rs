//! Named pairs of thin trees whose distance is known or bounded below,
//! with the label sets used to collapse them onto smaller members.

use serde::Serialize;

use crate::collapse::LabelSet;
use crate::error::{Error, Result};
use crate::tree::{Label, Tree};

#[derive(Debug, Clone, Serialize)]
pub struct FamilyInstance {
    pub name: String,
    #[serde(serialize_with = "as_text")]
    pub source: Tree,
    #[serde(serialize_with = "as_text")]
    pub target: Tree,
    /// Lower bound on `dist(source, target)`, or on `Dist_I` for the cores.
    pub bound: usize,
    /// Whether the bound is known to be attained.
    pub exact: bool,
    pub i: Option<LabelSet>,
    pub j: Option<LabelSet>,
}

fn as_text<S: serde::Serializer>(t: &Tree, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(t)
}

/// Family names accepted by [`make`], with their parameter names.
pub const FAMILIES: &[(&str, &str)] = &[
    ("bicomb", "p q"),
    ("lower32", "p"),
    ("tricomb", "p"),
    ("tricomb-core", "p"),
    ("multicomb", "m p"),
    ("multicomb-core", "p"),
    ("zigzag", "m"),
    ("zigzag-general", "p"),
    ("conjecture", "n"),
];

fn rep(s: &str, k: usize) -> String {
    s.repeat(k)
}

fn sp(s: &str) -> Tree {
    Tree::spine(s).expect("generated spine")
}

fn at_least(name: &str, v: usize, min: usize) -> Result<()> {
    if v < min {
        return Err(Error::Precondition(format!("{name} must be at least {min}, got {v}")));
    }
    Ok(())
}

fn instance(name: String, source: &str, target: &str, bound: usize, exact: bool) -> FamilyInstance {
    FamilyInstance {
        name,
        source: sp(source),
        target: sp(target),
        bound,
        exact,
        i: None,
        j: None,
    }
}

/// `Sp(1^p 0^q)` and `Sp(0^q 1^p)`: distance `p + q + min(p, q) − 2`.
pub fn bicomb(p: usize, q: usize) -> Result<FamilyInstance> {
    at_least("p", p, 1)?;
    at_least("q", q, 1)?;
    Ok(instance(
        format!("bicomb({p},{q})"),
        &(rep("1", p) + &rep("0", q)),
        &(rep("0", q) + &rep("1", p)),
        p + q + p.min(q) - 2,
        true,
    ))
}

/// `(T1 ∨ •) ∨ T2` with right combs of size `p − 1`, against `Sp((10)^p)`.
pub fn lower32(p: usize) -> Result<FamilyInstance> {
    at_least("p", p, 1)?;
    let half = |n: usize| if n == 0 { Tree::leaf(1) } else { Tree::right_comb(n) };
    let left = Tree::fork_unchecked(half(p - 1), Tree::leaf(1));
    let source = Tree::fork_unchecked(left, half(p - 1)).with_default_labels();
    Ok(FamilyInstance {
        name: format!("lower32({p})"),
        source,
        target: sp(&rep("10", p)),
        bound: 3 * p - 2,
        exact: false,
        i: None,
        j: None,
    })
}

/// `Sp(1^p 0^p 1^p)` and `Sp(0^p (10)^p)`: at least `5p − 4`. Collapsing
/// `I` gives `bicomb(p, p)`, collapsing `J` gives the tricomb core.
pub fn tricomb(p: usize) -> Result<FamilyInstance> {
    at_least("p", p, 1)?;
    let pl = p as Label;
    let mut f = instance(
        format!("tricomb({p})"),
        &(rep("1", p) + &rep("0", p) + &rep("1", p)),
        &(rep("0", p) + &rep("10", p)),
        5 * p - 4,
        p <= 4,
    );
    f.i = Some(LabelSet::interval(pl + 2, 2 * pl + 1));
    f.j = Some(LabelSet::interval(2 * pl + 3, 3 * pl + 1));
    Ok(f)
}

/// `Sp(1^p 0 1^p)` and `Sp((01)^p 0)`, with `Dist_I ≥ 2p − 2`.
pub fn tricomb_core(p: usize) -> Result<FamilyInstance> {
    at_least("p", p, 1)?;
    let pl = p as Label;
    let mut f = instance(
        format!("tricomb-core({p})"),
        &(rep("1", p) + "0" + &rep("1", p)),
        &(rep("01", p) + "0"),
        2 * p - 2,
        p <= 5,
    );
    f.i = Some(LabelSet::interval(pl + 2, 2 * pl + 1));
    Ok(f)
}

/// `Sp((1^p 0^p)^m)` and `Sp(0^p (10)^{(m−1)p} 1^p)`: at least
/// `4mp − 3m − p + 1`. Collapsing `I` gives `multicomb(m − 1, p)`,
/// collapsing `J` the multicomb core.
pub fn multicomb(m: usize, p: usize) -> Result<FamilyInstance> {
    at_least("m", m, 1)?;
    at_least("p", p, 1)?;
    let (ml, pl) = (m as Label, p as Label);
    let mut f = instance(
        format!("multicomb({m},{p})"),
        &rep(&(rep("1", p) + &rep("0", p)), m),
        &(rep("0", p) + &rep("10", (m - 1) * p) + &rep("1", p)),
        4 * m * p + 1 - 3 * m - p,
        m * p <= 6 && p <= 3,
    );
    if m >= 2 {
        f.i = Some(LabelSet::interval((ml - 1) * pl + 2, (ml + 1) * pl + 1));
        f.j = Some(LabelSet::interval(1, (ml - 2) * pl).union(&LabelSet::interval((ml + 1) * pl + 3, 2 * ml * pl + 1)));
    }
    Ok(f)
}

/// `Sp(1^p 0 1^p 0^p)` and `Sp(0 (10)^p 1^p)`, with `Dist_I ≥ 4p − 3`.
pub fn multicomb_core(p: usize) -> Result<FamilyInstance> {
    at_least("p", p, 1)?;
    let pl = p as Label;
    let mut f = instance(
        format!("multicomb-core({p})"),
        &(rep("1", p) + "0" + &rep("1", p) + &rep("0", p)),
        &("0".to_string() + &rep("10", p) + &rep("1", p)),
        4 * p - 3,
        p <= 3,
    );
    f.i = Some(LabelSet::interval(pl + 2, 3 * pl + 1));
    Ok(f)
}

/// `Sp(1 (10)^m 0)` and `Sp(0 (01)^m 1)`: distance `3m + 1`. Collapsing
/// `I` gives `zigzag(m − 2)`, collapsing `J` gives `zigzag(2)`.
pub fn zigzag(m: usize) -> Result<FamilyInstance> {
    let ml = m as Label;
    let mut f = instance(
        format!("zigzag({m})"),
        &("1".to_string() + &rep("10", m) + "0"),
        &("0".to_string() + &rep("01", m) + "1"),
        3 * m + 1,
        true,
    );
    if m >= 2 {
        f.i = Some(LabelSet::from_labels([ml, ml + 1, ml + 3, ml + 4]));
        f.j = Some(LabelSet::interval(1, ml - 2).union(&LabelSet::interval(ml + 6, 2 * ml + 3)));
    }
    Ok(f)
}

/// `Sp(1^p (10)^{p+1} 0^p)` and `Sp(0^p (01)^{p+1} 1^p)` with the set
/// `[p+1, 3p+3] ∖ {2p+2}`; the bound is the one known value of `Dist_I`.
pub fn zigzag_general(p: usize) -> Result<FamilyInstance> {
    at_least("p", p, 1)?;
    let pl = p as Label;
    let known = match p {
        1 => Some(6),
        2 => Some(10),
        _ => None,
    };
    let mut f = instance(
        format!("zigzag-general({p})"),
        &(rep("1", p) + &rep("10", p + 1) + &rep("0", p)),
        &(rep("0", p) + &rep("01", p + 1) + &rep("1", p)),
        known.unwrap_or(0),
        known.is_some(),
    );
    f.i = Some(LabelSet::from_labels(
        (pl + 1..=3 * pl + 3).filter(|&x| x != 2 * pl + 2),
    ));
    Ok(f)
}

/// The conjectured extremal pair of size `n`, with conjectured distance
/// `2n − 6`: `Sp(111 (01)^{p−3} 00)` against `Sp(000 (10)^{p−3} 11)` for
/// `n = 2p − 1`, and `Sp(111 (01)^{p−3} 000)` against `Sp(000 (10)^{p−3} 111)`
/// for `n = 2p`.
pub fn conjecture_pair(n: usize) -> Result<FamilyInstance> {
    at_least("n", n, 5)?;
    let p = n.div_ceil(2);
    let (s, t) = if n % 2 == 1 {
        (
            "111".to_string() + &rep("01", p - 3) + "00",
            "000".to_string() + &rep("10", p - 3) + "11",
        )
    } else {
        (
            "111".to_string() + &rep("01", p - 3) + "000",
            "000".to_string() + &rep("10", p - 3) + "111",
        )
    };
    Ok(instance(
        format!("conjecture({n})"),
        &s,
        &t,
        2 * n - 6,
        (11..=13).contains(&n),
    ))
}

/// Builds a family member from its name and parameters.
pub fn make(name: &str, params: &[usize]) -> Result<FamilyInstance> {
    let arity = FAMILIES
        .iter()
        .find(|(f, _)| *f == name)
        .map(|(_, ps)| ps.split_whitespace().count())
        .ok_or_else(|| Error::Precondition(format!("unknown family {name:?}")))?;
    if params.len() != arity {
        return Err(Error::Precondition(format!(
            "{name} takes {arity} parameter(s), got {}",
            params.len()
        )));
    }
    match name {
        "bicomb" => bicomb(params[0], params[1]),
        "lower32" => lower32(params[0]),
        "tricomb" => tricomb(params[0]),
        "tricomb-core" => tricomb_core(params[0]),
        "multicomb" => multicomb(params[0], params[1]),
        "multicomb-core" => multicomb_core(params[0]),
        "zigzag" => zigzag(params[0]),
        "zigzag-general" => zigzag_general(params[0]),
        "conjecture" => conjecture_pair(params[0]),
        _ => unreachable!(),
    }
}
