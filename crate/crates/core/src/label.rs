//! Branch labels: the names of branch values on the base surface.
//!
//! A label is either an exact Gaussian-rational coordinate, the point at
//! infinity, or a symbolic name.  Labels compare exactly (no floats), and the
//! canonical order is: finite coordinates by `(re, im)`, then `inf`, then
//! symbolic names alphabetically.

use std::cmp::Ordering;
use std::fmt;

use crate::gauss::GaussianRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum BranchLabel {
    Point(GaussianRational),
    Infinity,
    Named(String),
}

impl BranchLabel {
    pub fn integer(n: i64) -> Self {
        BranchLabel::Point(GaussianRational::from_integer(n))
    }

    pub fn named(name: impl Into<String>) -> Self {
        BranchLabel::Named(name.into())
    }

    fn rank(&self) -> u8 {
        match self {
            BranchLabel::Point(_) => 0,
            BranchLabel::Infinity => 1,
            BranchLabel::Named(_) => 2,
        }
    }
}

impl PartialOrd for BranchLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for BranchLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (BranchLabel::Point(a), BranchLabel::Point(b)) => a.lex_cmp(b),
            (BranchLabel::Named(a), BranchLabel::Named(b)) => a.cmp(b),
            _ => self.rank().cmp(&other.rank()),
        }
    }
}

impl fmt::Display for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BranchLabel::Point(z) => write!(f, "{z}"),
            BranchLabel::Infinity => write!(f, "inf"),
            BranchLabel::Named(name) => write!(f, "{name}"),
        }
    }
}

impl fmt::Debug for BranchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BranchLabel({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order() {
        let mut labels = [
            BranchLabel::named("mu"),
            BranchLabel::Infinity,
            BranchLabel::integer(1),
            BranchLabel::named("lambda"),
            BranchLabel::integer(-1),
            BranchLabel::integer(0),
        ];
        labels.sort();
        let shown: Vec<String> = labels.iter().map(ToString::to_string).collect();
        assert_eq!(shown, ["-1", "0", "1", "inf", "lambda", "mu"]);
    }
}
