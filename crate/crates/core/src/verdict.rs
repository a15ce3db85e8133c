//! Outcomes of identity checks.

use crate::qcoef::QHalfRational;

/// One coefficient comparison `lhs == rhs` at index `at`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Comparison<K> {
    pub at: K,
    pub lhs: QHalfRational,
    pub rhs: QHalfRational,
}

impl<K> Comparison<K> {
    pub fn new(at: K, lhs: QHalfRational, rhs: QHalfRational) -> Self {
        Comparison { at, lhs, rhs }
    }

    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<K> {
    Holds,
    Counterexample {
        at: K,
        lhs: QHalfRational,
        rhs: QHalfRational,
    },
}

impl<K> Verdict<K> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    /// The first failing comparison, in iteration order.
    pub fn from_comparisons<I: IntoIterator<Item = Comparison<K>>>(log: I) -> Self {
        log.into_iter()
            .find(|c| !c.holds())
            .map_or(Verdict::Holds, |c| Verdict::Counterexample {
                at: c.at,
                lhs: c.lhs,
                rhs: c.rhs,
            })
    }
}
