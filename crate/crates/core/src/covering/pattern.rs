//! Name patterns such as `+(<=3,>3,=5,_)`.
//!
//! Each of the four coordinates carries a conjunction of atomic constraints
//! joined by `&`; an [`Obligation`] is a disjunction of patterns.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rotation::{PairName, Sign};
use crate::tree::Label;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Constraint {
    Any,
    Eq(Label),
    Le(Label),
    Lt(Label),
    Ge(Label),
    Gt(Label),
    Ne(Label),
    /// Inclusive range.
    Within(Label, Label),
}

impl Constraint {
    pub fn holds(self, x: Label) -> bool {
        match self {
            Constraint::Any => true,
            Constraint::Eq(k) => x == k,
            Constraint::Le(k) => x <= k,
            Constraint::Lt(k) => x < k,
            Constraint::Ge(k) => x >= k,
            Constraint::Gt(k) => x > k,
            Constraint::Ne(k) => x != k,
            Constraint::Within(lo, hi) => lo <= x && x <= hi,
        }
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Constraint::Any => f.write_str("_"),
            Constraint::Eq(k) => write!(f, "={k}"),
            Constraint::Le(k) => write!(f, "<={k}"),
            Constraint::Lt(k) => write!(f, "<{k}"),
            Constraint::Ge(k) => write!(f, ">={k}"),
            Constraint::Gt(k) => write!(f, ">{k}"),
            Constraint::Ne(k) => write!(f, "!={k}"),
            Constraint::Within(lo, hi) => write!(f, "[{lo}..{hi}]"),
        }
    }
}

fn number(s: &str) -> Result<Label> {
    s.trim()
        .parse()
        .map_err(|_| Error::parse(0, format!("expected a label, found {s:?}")))
}

impl FromStr for Constraint {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "_" || s == "..." || s == ".." {
            return Ok(Constraint::Any);
        }
        if let Some(inner) = s.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
            let (lo, hi) = inner
                .split_once("..")
                .ok_or_else(|| Error::parse(0, "range must look like [k1..k2]"))?;
            return Ok(Constraint::Within(number(lo)?, number(hi)?));
        }
        for (op, make) in [
            ("<=", Constraint::Le as fn(Label) -> Constraint),
            (">=", Constraint::Ge),
            ("!=", Constraint::Ne),
            ("<", Constraint::Lt),
            (">", Constraint::Gt),
            ("=", Constraint::Eq),
        ] {
            if let Some(rest) = s.strip_prefix(op) {
                return Ok(make(number(rest)?));
            }
        }
        Ok(Constraint::Eq(number(s)?))
    }
}

/// A sign and one conjunction of constraints per name coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NamePattern {
    pub sign: Sign,
    pub coords: [Vec<Constraint>; 4],
}

impl NamePattern {
    pub fn new(sign: Sign, coords: [Vec<Constraint>; 4]) -> Self {
        NamePattern { sign, coords }
    }

    /// Pattern with one constraint per coordinate.
    pub fn simple(sign: Sign, a: Constraint, b: Constraint, c: Constraint, d: Constraint) -> Self {
        NamePattern {
            sign,
            coords: [vec![a], vec![b], vec![c], vec![d]],
        }
    }

    pub fn matches(&self, name: &PairName) -> bool {
        name.sign == self.sign
            && self
                .coords
                .iter()
                .zip(name.coords())
                .all(|(cs, x)| cs.iter().all(|c| c.holds(x)))
    }
}

impl fmt::Display for NamePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.sign)?;
        for (k, cs) in self.coords.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if cs.is_empty() {
                f.write_str("_")?;
            }
            for (m, c) in cs.iter().enumerate() {
                if m > 0 {
                    f.write_str("&")?;
                }
                write!(f, "{c}")?;
            }
        }
        f.write_str(")")
    }
}

impl FromStr for NamePattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (sign, rest) = match s.chars().next() {
            Some('+') => (Sign::Positive, &s[1..]),
            Some('-') => (Sign::Negative, &s[1..]),
            Some('−') => (Sign::Negative, &s['−'.len_utf8()..]),
            _ => return Err(Error::parse(0, "pattern must start with + or -")),
        };
        let inner = rest
            .trim()
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse(1, "expected (c1,c2,c3,c4)"))?;
        let coords: Vec<Vec<Constraint>> = inner
            .split(',')
            .map(|part| part.split('&').map(str::parse).collect::<Result<Vec<_>>>())
            .collect::<Result<_>>()?;
        let coords: [Vec<Constraint>; 4] = coords
            .try_into()
            .map_err(|_| Error::parse(1, "a pattern has four coordinates"))?;
        Ok(NamePattern { sign, coords })
    }
}

impl Serialize for NamePattern {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// "A pair X or a pair Y": satisfied by a name matching any of the patterns.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Obligation {
    pub patterns: Vec<NamePattern>,
}

impl Obligation {
    pub fn new(patterns: Vec<NamePattern>) -> Self {
        Obligation { patterns }
    }

    pub fn matches(&self, name: &PairName) -> bool {
        self.patterns.iter().any(|p| p.matches(name))
    }
}

impl From<NamePattern> for Obligation {
    fn from(p: NamePattern) -> Self {
        Obligation { patterns: vec![p] }
    }
}

impl fmt::Display for Obligation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.patterns.iter().enumerate() {
            if k > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Obligation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(Obligation {
            patterns: s.split('|').map(str::parse).collect::<Result<_>>()?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn name(s: &str) -> PairName {
        s.parse().unwrap()
    }

    #[test]
    fn parse_and_match() {
        let p: NamePattern = "+(<=3,>3,=5,_)".parse().unwrap();
        assert!(p.matches(&name("(2,4,5,6)+")));
        assert!(!p.matches(&name("(2,4,5,6)-")));
        assert!(!p.matches(&name("(4,4,5,6)+")));
        assert_eq!(p.to_string(), "+(<=3,>3,=5,_)");
        let q: NamePattern = "+(..., >=4&!=7, 9, [1..3])".parse().unwrap();
        assert!(q.matches(&name("(1,5,9,3)+")));
        assert!(!q.matches(&name("(1,7,9,3)+")));
        assert_eq!(q.to_string(), "+(_,>=4&!=7,=9,[1..3])");
    }

    #[test]
    fn round_trip() {
        for s in ["-(=2,_,>=3,<9)", "+(!=1,[2..4],_,>7)"] {
            let p: NamePattern = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
    }

    #[test]
    fn obligations_are_disjunctions() {
        let ob: Obligation = "+(_,3,4,_) | -(_,3,_,4)".parse().unwrap();
        assert!(ob.matches(&name("(1,3,4,5)+")));
        assert!(ob.matches(&name("(1,3,3,4)-")));
        assert!(!ob.matches(&name("(1,3,3,5)-")));
    }

    #[test]
    fn rejects_malformed() {
        assert!("(1,2,3,4)".parse::<NamePattern>().is_err());
        assert!("+(1,2,3)".parse::<NamePattern>().is_err());
        assert!("+(1,2,3,x)".parse::<NamePattern>().is_err());
        assert!("+(1,[2..],3,4)".parse::<NamePattern>().is_err());
    }
}
