//! Text forms of trees.
//!
//! Bracket form: a leaf is `*` (or `•`) or a decimal label, a node is
//! `(L R)`. Strings made only of `0` and `1` are read as spines.

use std::fmt;
use std::str::FromStr;

use super::{Label, Tree};
use crate::error::{Error, Result};

impl FromStr for Tree {
    type Err = Error;

    fn from_str(s: &str) -> Result<Tree> {
        let s = s.trim();
        let bracket = |c: char| matches!(c, '(' | ')' | '*' | '•') || c.is_whitespace();
        if s.chars().all(|c| c == '0' || c == '1')
            || (!s.chars().any(bracket) && !s.chars().all(|c| c.is_ascii_digit()))
        {
            return Tree::spine(s);
        }
        parse_bracket(s)
    }
}

enum Leaf {
    Anonymous,
    Labeled(Label),
}

enum Raw {
    Leaf(Leaf),
    Fork(Box<Raw>, Box<Raw>),
}

struct Parser {
    chars: Vec<(usize, char)>,
    at: usize,
}

impl Parser {
    fn skip_ws(&mut self) {
        while self.at < self.chars.len() && self.chars[self.at].1.is_whitespace() {
            self.at += 1;
        }
    }

    fn pos(&self) -> usize {
        self.chars
            .get(self.at)
            .map_or(self.chars.last().map_or(0, |(i, c)| i + c.len_utf8()), |(i, _)| *i)
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.at).map(|(_, c)| *c)
    }

    fn node(&mut self) -> Result<Raw> {
        match self.peek() {
            Some('(') => {
                self.at += 1;
                let l = self.node()?;
                let r = self.node()?;
                match self.peek() {
                    Some(')') => {
                        self.at += 1;
                        Ok(Raw::Fork(Box::new(l), Box::new(r)))
                    }
                    Some(c) => Err(Error::parse(self.pos(), format!("expected ')', found {c:?}"))),
                    None => Err(Error::parse(self.pos(), "expected ')', found end of input")),
                }
            }
            Some('*') | Some('•') => {
                self.at += 1;
                Ok(Raw::Leaf(Leaf::Anonymous))
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos();
                let mut value: u64 = 0;
                while let Some(d) = self.chars.get(self.at).and_then(|(_, c)| c.to_digit(10)) {
                    value = value * 10 + d as u64;
                    if value > Label::MAX as u64 {
                        return Err(Error::parse(start, "label too large"));
                    }
                    self.at += 1;
                }
                Ok(Raw::Leaf(Leaf::Labeled(value as Label)))
            }
            Some(c) => Err(Error::parse(self.pos(), format!("unexpected {c:?}"))),
            None => Err(Error::parse(self.pos(), "unexpected end of input")),
        }
    }
}

fn parse_bracket(s: &str) -> Result<Tree> {
    let mut p = Parser {
        chars: s.char_indices().collect(),
        at: 0,
    };
    let raw = p.node()?;
    if p.peek().is_some() {
        return Err(Error::parse(p.pos(), "trailing input after a complete tree"));
    }
    let mut leaves = Vec::new();
    collect(&raw, &mut leaves);
    let labeled = leaves.iter().filter(|l| matches!(l, Leaf::Labeled(_))).count();
    let labels: Vec<Label> = if labeled == 0 {
        (1..=leaves.len() as Label).collect()
    } else if labeled == leaves.len() {
        leaves
            .iter()
            .map(|l| match l {
                Leaf::Labeled(v) => *v,
                Leaf::Anonymous => unreachable!(),
            })
            .collect()
    } else {
        return Err(Error::parse(0, "either label every leaf or none"));
    };
    super::check_increasing(&labels)?;
    let mut next = 0;
    Ok(build(&raw, &labels, &mut next))
}

fn collect<'a>(raw: &'a Raw, out: &mut Vec<&'a Leaf>) {
    match raw {
        Raw::Leaf(l) => out.push(l),
        Raw::Fork(l, r) => {
            collect(l, out);
            collect(r, out);
        }
    }
}

fn build(raw: &Raw, labels: &[Label], next: &mut usize) -> Tree {
    match raw {
        Raw::Leaf(_) => {
            let t = Tree::leaf(labels[*next]);
            *next += 1;
            t
        }
        Raw::Fork(l, r) => {
            let l = build(l, labels, next);
            let r = build(r, labels, next);
            Tree::fork_unchecked(l, r)
        }
    }
}

/// Bracket form; leaves print as `*` when the labels are the default ones.
impl fmt::Display for Tree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(t: &Tree, anonymous: bool, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match t.children() {
                None if anonymous => f.write_str("*"),
                None => write!(f, "{}", t.first_label()),
                Some((l, r)) => {
                    f.write_str("(")?;
                    go(l, anonymous, f)?;
                    f.write_str(" ")?;
                    go(r, anonymous, f)?;
                    f.write_str(")")
                }
            }
        }
        go(self, self.has_default_labels(), f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bracket_round_trip() {
        for n in 0..=7 {
            for t in Tree::all(n) {
                let s = t.to_string();
                assert_eq!(s.parse::<Tree>().unwrap(), t, "{s}");
            }
        }
    }

    #[test]
    fn labeled_round_trip() {
        let t: Tree = "(2 ((5 6) 9))".parse().unwrap();
        assert_eq!(t.labels(), vec![2, 5, 6, 9]);
        assert_eq!(t.to_string(), "(2 ((5 6) 9))");
        assert_eq!(t.to_string().parse::<Tree>().unwrap(), t);
    }

    #[test]
    fn spines_are_detected() {
        let t: Tree = "100".parse().unwrap();
        assert_eq!(t.to_string(), "(* ((* *) *))");
        let leaf: Tree = "".parse().unwrap();
        assert_eq!(leaf.size(), 0);
        let bullet: Tree = "(• •)".parse().unwrap();
        assert_eq!(bullet, Tree::spine("0").unwrap());
    }

    #[test]
    fn parse_errors_carry_positions() {
        match "(* *".parse::<Tree>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 4),
            other => panic!("{other:?}"),
        }
        match "(* x)".parse::<Tree>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
        assert!("(* *) *".parse::<Tree>().is_err());
        assert!("(1 *)".parse::<Tree>().is_err());
        assert!(matches!(
            "(3 2)".parse::<Tree>(),
            Err(Error::LabelOrder { prev: 3, next: 2 })
        ));
    }
}
