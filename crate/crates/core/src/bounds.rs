//! Closed-form lower bounds read off leaf addresses, and the exact
//! distance from the right comb.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search::check_compatible;
use crate::thompson::{chi, invariant_i};
use crate::tree::{Address, Tree};

/// `δ(γ, γ′)`: summed differences of the numbers of `0`s, of `1`s and of
/// factors `10`.
pub fn delta(g: &Address, h: &Address) -> usize {
    g.count_zeros().abs_diff(h.count_zeros())
        + g.count_ones().abs_diff(h.count_ones())
        + g.count_ten().abs_diff(h.count_ten())
}

/// `max_i δ(ad_T(i), ad_T′(i))` over all leaves.
pub fn delta_bound(t: &Tree, u: &Tree) -> Result<usize> {
    check_compatible(t, u)?;
    Ok(t.leaf_addresses()
        .iter()
        .zip(u.leaf_addresses())
        .map(|((_, g), (_, h))| delta(g, &h))
        .max()
        .unwrap_or(0))
}

/// Every address one special transformation away from `g`, in the form
/// rotations produce them: a letter doubled (`0 → 00`, `1 → 11`) or
/// undoubled, or one factor `10` and `01` exchanged.
pub fn special_moves(g: &Address) -> Vec<Address> {
    let bits = g.bits();
    let mut out = Vec::new();
    for k in 0..bits.len() {
        let mut v = bits.to_vec();
        v.insert(k, bits[k]);
        out.push(Address::from_bits(v));
        if k + 1 < bits.len() {
            let mut v = bits.to_vec();
            if bits[k] == bits[k + 1] {
                v.remove(k);
            } else {
                v.swap(k, k + 1);
            }
            out.push(Address::from_bits(v));
        }
    }
    out.sort();
    out.dedup();
    out
}

/// The staircase of an address: from `(0, #1)`, one step down per `1` and
/// one step right per `0`, ending at `(#0, 0)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LatticePath {
    /// Height of the `k`-th horizontal step, in order.
    pub heights: Vec<usize>,
    pub ones: usize,
    pub zeros: usize,
}

impl LatticePath {
    pub fn new(g: &Address) -> Self {
        let mut y = g.count_ones();
        let mut heights = Vec::new();
        for &b in g.bits() {
            if b {
                y -= 1;
            } else {
                heights.push(y);
            }
        }
        LatticePath {
            heights,
            ones: g.count_ones(),
            zeros: g.count_zeros(),
        }
    }

    /// `N`: unit squares between the path and the axes that touch an axis.
    pub fn squares_on_axes(&self) -> usize {
        match self.heights.split_first() {
            None => 0,
            Some((first, rest)) => first + rest.iter().filter(|&&h| h > 0).count(),
        }
    }

    /// Lowest point of the path on the vertical line `x`.
    fn floor_at(&self, x: usize) -> usize {
        self.heights.get(x).copied().unwrap_or(0)
    }

    /// `D`: grid distance from `(1, 1)` to the closed region above the path.
    pub fn distance_from_unit(&self) -> usize {
        (0..=self.zeros.max(1))
            .map(|x| x.abs_diff(1) + self.floor_at(x).max(1) - 1)
            .min()
            .unwrap_or(0)
    }
}

/// `f(p, q, γ) = (p − #1γ) + (q − #0γ) + N(γ) + D(γ)`.
pub fn lattice_f(p: usize, q: usize, g: &Address) -> Result<usize> {
    let path = LatticePath::new(g);
    if path.ones > p || path.zeros > q {
        return Err(Error::Precondition(format!(
            "address {g} has more than {p} ones or {q} zeros"
        )));
    }
    Ok((p - path.ones) + (q - path.zeros) + path.squares_on_axes() + path.distance_from_unit())
}

/// Largest `f(p, q, ad_T′(i))` over leaves with `ad_T(i) = 1^p 0^q`, in
/// both directions.
pub fn f_bound(t: &Tree, u: &Tree) -> Result<usize> {
    check_compatible(t, u)?;
    let one_way = |t: &Tree, u: &Tree| {
        t.leaf_addresses()
            .iter()
            .zip(u.leaf_addresses())
            .filter_map(|((_, g), (_, h))| {
                let (p, q) = g.as_ones_then_zeros()?;
                lattice_f(p, q, &h).ok()
            })
            .max()
            .unwrap_or(0)
    };
    Ok(one_way(t, u).max(one_way(u, t)))
}

/// Exact distance from the right comb of the same size: `n − h_R(T)`.
pub fn comb_distance(t: &Tree) -> usize {
    t.size() - t.right_height()
}

/// `|I(w)|` for `w = χ_T⁻¹ χ_T′`, a word representing `Φ(T, T′)`.
pub fn invariant_bound(t: &Tree, u: &Tree) -> Result<usize> {
    check_compatible(t, u)?;
    let w = chi(t).inverse().concat(&chi(u));
    Ok(invariant_i(&w).unsigned_abs() as usize)
}

/// The bounds that apply to a pair, for display.
#[derive(Debug, Clone, Serialize)]
pub struct BoundReport {
    pub delta: usize,
    pub lattice: usize,
    /// `Some` when one tree is the right comb.
    pub comb: Option<usize>,
    pub invariant: usize,
    pub best: usize,
}

pub fn all_bounds(t: &Tree, u: &Tree) -> Result<BoundReport> {
    let delta = delta_bound(t, u)?;
    let lattice = f_bound(t, u)?;
    let comb = if t.right_height() == t.size() {
        Some(comb_distance(u))
    } else if u.right_height() == u.size() {
        Some(comb_distance(t))
    } else {
        None
    };
    let invariant = invariant_bound(t, u)?;
    let best = delta.max(lattice).max(comb.unwrap_or(0)).max(invariant);
    Ok(BoundReport {
        delta,
        lattice,
        comb,
        invariant,
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ad(s: &str) -> Address {
        s.parse().unwrap()
    }

    fn sp(s: &str) -> Tree {
        Tree::spine(s).unwrap()
    }

    #[test]
    fn delta_examples() {
        assert_eq!(delta(&ad("01"), &ad("1010")), 4);
        assert_eq!(delta(&ad("0110"), &ad("0110")), 0);
        for p in 1..6 {
            let alt = ad(&"10".repeat(p));
            assert_eq!(delta(&ad("01"), &alt), 3 * p - 2);
        }
    }

    #[test]
    fn lattice_anchors() {
        let g = ad("101001001");
        let path = LatticePath::new(&g);
        assert_eq!(path.squares_on_axes(), 7);
        assert_eq!(path.distance_from_unit(), 1);
        assert_eq!(lattice_f(4, 7, &g).unwrap(), 10);
        for p in 0..5 {
            for q in 0..5 {
                let g = ad(&format!("{}{}", "1".repeat(p), "0".repeat(q)));
                assert_eq!(lattice_f(p, q, &g).unwrap(), 0, "p={p} q={q}");
            }
        }
        assert!(lattice_f(1, 7, &g).is_err());
    }

    #[test]
    fn bicomb_bound() {
        for p in 1..=5 {
            for q in 1..=5 {
                let t = sp(&format!("{}{}", "1".repeat(p), "0".repeat(q)));
                let u = sp(&format!("{}{}", "0".repeat(q), "1".repeat(p)));
                assert_eq!(f_bound(&t, &u).unwrap(), p + q + p.min(q) - 2, "p={p} q={q}");
            }
        }
    }

    #[test]
    fn comb_examples() {
        assert_eq!(comb_distance(&Tree::right_comb(6)), 0);
        assert_eq!(comb_distance(&sp("0000")), 3);
    }

    fn addresses(max_len: usize) -> Vec<Address> {
        (0..=max_len)
            .flat_map(|len| (0u32..1 << len).map(move |m| Address::from_bits((0..len).map(|k| m >> k & 1 == 1))))
            .collect()
    }

    #[test]
    fn special_moves_of_small_words() {
        let got: Vec<String> = special_moves(&ad("10")).iter().map(|a| a.to_string()).collect();
        assert_eq!(got, ["01", "100", "110"]);
        assert!(special_moves(&ad("")).is_empty());
    }

    #[test]
    fn delta_changes_by_at_most_one_per_special_move() {
        for g in addresses(7) {
            for h in special_moves(&g) {
                for r in [ad(""), ad("10"), ad("0110")] {
                    assert!(delta(&g, &r).abs_diff(delta(&h, &r)) <= 1, "{g} {h}");
                }
            }
        }
    }

    #[test]
    fn f_changes_by_at_most_one_per_special_move() {
        for g in addresses(8) {
            for h in special_moves(&g) {
                let p = g.count_ones().max(h.count_ones());
                let q = g.count_zeros().max(h.count_zeros());
                for (pp, qq) in [(p, q), (p + 1, q), (p, q + 2)] {
                    let (a, b) = (lattice_f(pp, qq, &g).unwrap(), lattice_f(pp, qq, &h).unwrap());
                    assert!(a.abs_diff(b) <= 1, "p={pp} q={qq} {g}:{a} {h}:{b}");
                }
            }
        }
    }
}
