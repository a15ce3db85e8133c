//! Poincaré-series shadows of the rank stratification at a two-cycle.
//!
//! The stratum of `d` where the arrow `d` has rank `ell` is represented by
//! the unique fibre element `e` of `u` with `e_star = ell`; its series is the
//! motivic coefficient of the unlinked quiver at `e`.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mutations::{unlink, MutationKind, MutationResult};
use crate::qcoef::QHalfRational;
use crate::quiver::{DimVector, Quiver, TwoCyclePointer};
use crate::series::{
    coefficient_a, series_a, series_comparisons, substitute_vertex, TruncationPolicy,
};
use crate::verdict::{Comparison, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StratumIndex {
    pub d: DimVector,
    pub ell: u32,
}

/// Which ideal filtration: `Right` bounds `ell` by `d_v1 - p`, `Left` by `d_v0 - p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Right,
    Left,
}

fn require_unlink(u: &MutationResult) -> Result<usize> {
    match (u.kind, u.new_vertex) {
        (MutationKind::Unlink, Some(star)) => Ok(star),
        _ => Err(Error::Precondition(
            "strata are indexed through an unlinking".into(),
        )),
    }
}

impl StratumIndex {
    pub fn new(u: &MutationResult, d: DimVector, ell: u32) -> Result<Self> {
        require_unlink(u)?;
        if d.len() != u.source_vertex_count {
            return Err(Error::Precondition(
                "dimension vector is not on the source quiver".into(),
            ));
        }
        let idx = StratumIndex { d, ell };
        idx.check(u)?;
        Ok(idx)
    }

    /// `ū(e) = (u(e), e_star)`.
    pub fn of_fibre_element(u: &MutationResult, e: &DimVector) -> Result<Self> {
        let star = require_unlink(u)?;
        Ok(StratumIndex {
            d: u.dim_map_u(e)?,
            ell: e.entries()[star],
        })
    }

    fn bounds(&self, u: &MutationResult) -> (u32, u32) {
        (self.d.entries()[u.pair.v0], self.d.entries()[u.pair.v1])
    }

    fn check(&self, u: &MutationResult) -> Result<()> {
        let (a, b) = self.bounds(u);
        if self.ell > a.min(b) {
            return Err(Error::Precondition(format!(
                "rank {} exceeds min({a}, {b})",
                self.ell
            )));
        }
        Ok(())
    }

    /// The fibre element `e` with `e_star = ell`.
    pub fn fibre_element(&self, u: &MutationResult) -> Result<DimVector> {
        require_unlink(u)?;
        self.check(u)?;
        let mut e = self.d.entries().to_vec();
        e[u.pair.v0] -= self.ell;
        e[u.pair.v1] -= self.ell;
        e.push(self.ell);
        Ok(DimVector(e))
    }
}

/// `d_v0 d_v1 - (d_v0 + d_v1 - ell) ell`.
pub fn stratum_codim(u: &MutationResult, idx: &StratumIndex) -> Result<u64> {
    require_unlink(u)?;
    idx.check(u)?;
    let (a, b) = idx.bounds(u);
    let (a, b, l) = (a as u64, b as u64, idx.ell as u64);
    Ok(a * b - (a + b - l) * l)
}

pub fn stratum_series(u: &MutationResult, idx: &StratumIndex) -> Result<QHalfRational> {
    let e = idx.fibre_element(u)?;
    Ok(coefficient_a(&u.quiver, &e))
}

/// Per-point comparison of `A_Q(d)` with the sum of its stratum series.
pub fn unlinking_comparisons(
    q: &Quiver,
    tc: &TwoCyclePointer,
    policy: &TruncationPolicy,
) -> Result<Vec<Comparison<DimVector>>> {
    let u = unlink(q, tc)?;
    if policy.vertex_count() != q.vertex_count() {
        return Err(Error::Precondition(
            "truncation policy does not match the quiver".into(),
        ));
    }
    policy
        .region()
        .into_par_iter()
        .map(|d| {
            let rhs = u
                .fibre_u(&d)?
                .iter()
                .map(|e| coefficient_a(&u.quiver, e))
                .sum();
            let lhs = coefficient_a(q, &d);
            Ok(Comparison::new(d, lhs, rhs))
        })
        .collect()
}

pub fn check_unlinking_identity(
    q: &Quiver,
    tc: &TwoCyclePointer,
    policy: &TruncationPolicy,
) -> Result<Verdict<DimVector>> {
    Ok(Verdict::from_comparisons(unlinking_comparisons(
        q, tc, policy,
    )?))
}

/// The same identity at series level: `A_{Q^U}` with `x_star -> x_v0 x_v1`
/// against `A_Q`.
pub fn unlinking_substitution_comparisons(
    q: &Quiver,
    tc: &TwoCyclePointer,
    policy: &TruncationPolicy,
) -> Result<Vec<Comparison<DimVector>>> {
    let u = unlink(q, tc)?;
    let star = u.new_vertex.expect("unlinking creates a vertex");
    let target = std::sync::Arc::new(q.clone());
    let lifted = series_a(
        std::sync::Arc::new(u.quiver.clone()),
        u.extend_policy(policy)?,
    )?;
    let image = q.unit(tc.v0).add(&q.unit(tc.v1));
    let pushed = substitute_vertex(
        &lifted,
        &u.quiver.vertices()[star],
        &image,
        0,
        target.clone(),
        policy.clone(),
    )?;
    series_comparisons(&pushed, &series_a(target, policy.clone())?)
}

/// Sum of stratum series over `ell <= d_v1 - p` (right) or `d_v0 - p` (left).
pub fn ideal_filtration_series(
    u: &MutationResult,
    d: &DimVector,
    p: u32,
    side: Side,
) -> Result<QHalfRational> {
    let top = filtration_top(u, d, p, side)?;
    let Some(top) = top else {
        return Ok(QHalfRational::zero());
    };
    (0..=top)
        .map(|ell| stratum_series(u, &StratumIndex { d: d.clone(), ell }))
        .sum()
}

fn filtration_top(u: &MutationResult, d: &DimVector, p: u32, side: Side) -> Result<Option<u32>> {
    require_unlink(u)?;
    if d.len() != u.source_vertex_count {
        return Err(Error::Precondition(
            "dimension vector is not on the source quiver".into(),
        ));
    }
    let (a, b) = (d.entries()[u.pair.v0], d.entries()[u.pair.v1]);
    let bound = match side {
        Side::Right => b,
        Side::Left => a,
    };
    Ok(bound.checked_sub(p).map(|t| t.min(a.min(b))))
}

/// `F(p) - F(p+1)` against the stratum at `ell = bound - p` (or 0 when that
/// rank does not occur), for `p = 0 ..= bound + 1`.
pub fn telescoping_comparisons(
    u: &MutationResult,
    d: &DimVector,
    side: Side,
) -> Result<Vec<Comparison<u32>>> {
    filtration_top(u, d, 0, side)?;
    let bound = match side {
        Side::Right => d.entries()[u.pair.v1],
        Side::Left => d.entries()[u.pair.v0],
    };
    let series: Vec<QHalfRational> = (0..=bound + 2)
        .map(|p| ideal_filtration_series(u, d, p, side))
        .collect::<Result<_>>()?;
    let min = d.entries()[u.pair.v0].min(d.entries()[u.pair.v1]);
    (0..=bound + 1)
        .map(|p| {
            let lhs = &series[p as usize] - &series[p as usize + 1];
            let ell = bound - p.min(bound);
            let rhs = if p <= bound && ell <= min {
                stratum_series(u, &StratumIndex { d: d.clone(), ell })?
            } else {
                QHalfRational::zero()
            };
            Ok(Comparison::new(p, lhs, rhs))
        })
        .collect()
}

/// `(-s)^{-chi_Q(d,d)}` times the stratum series; expands in even powers
/// with non-negative coefficients.
pub fn normalized_stratum_series(
    u: &MutationResult,
    source: &Quiver,
    idx: &StratumIndex,
) -> Result<QHalfRational> {
    let chi = source.euler_form(&idx.d, &idx.d)?;
    Ok(&QHalfRational::neg_s_pow(-chi) * &stratum_series(u, idx)?)
}
