//! Series of stably framed moduli on `Q^T` and `Q^TU`, the Grassmannian
//! complex, and the linking identity.
//!
//! `k`-framed series vanish (rather than erroring) when the framed space is
//! empty, so sums over `k` are always total.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::mutations::{add_twocycle, link, unlink, MutationKind, MutationResult};
use crate::qcoef::{inverse_poch_product, QHalfRational};
use crate::quiver::{DimVector, Quiver, VertexPairPointer};
use crate::series::{
    coefficient_a, series_a, series_comparisons, substitute_vertex, TruncationPolicy,
};
use crate::verdict::{Comparison, Verdict};

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FramedIndex {
    pub d: DimVector,
    pub k: u32,
}

/// Equivariant Poincaré series of `Gr_{n,m}`: `1/((q;q)_m (q;q)_{n-m})`.
pub fn grass_series(n: u32, m: u32) -> Result<QHalfRational> {
    if m > n {
        return Err(Error::Domain(format!("Gr_{{{n},{m}}} needs m <= n")));
    }
    Ok(inverse_poch_product([m, n - m]))
}

/// `sum_{m=0}^n s^{-m} (-s)^{m^2} grass_series(n, m)`.
pub fn grass_euler_characteristic(n: u32) -> QHalfRational {
    (0..=n)
        .map(|m| {
            let m64 = m as i64;
            &QHalfRational::neg_s_pow(m64 * m64).shift(-m64) * &grass_series(n, m).expect("m <= n")
        })
        .sum()
}

pub fn check_grass_acyclicity(n: u32) -> Result<Verdict<u32>> {
    if n == 0 {
        return Err(Error::Precondition(
            "the complex is acyclic only for n >= 1".into(),
        ));
    }
    Ok(Verdict::from_comparisons([Comparison::new(
        n,
        grass_euler_characteristic(n),
        QHalfRational::zero(),
    )]))
}

fn require(res: &MutationResult, kind: MutationKind) -> Result<()> {
    if res.kind != kind {
        return Err(Error::Precondition(format!(
            "expected a {kind:?} result, got {:?}",
            res.kind
        )));
    }
    Ok(())
}

/// `(-s)^{chi_T(d,d)+k^2} / ((q;q)_k prod_i (q;q)_{(d - k(e0+e1))_i})`, or 0
/// when `d_v0 < k` or `d_v1 < k`.
pub fn framed_t_series(t: &MutationResult, idx: &FramedIndex) -> Result<QHalfRational> {
    require(t, MutationKind::TwoCycle)?;
    t.quiver.check_dim(&idx.d)?;
    let (v0, v1) = (t.pair.v0, t.pair.v1);
    let mut rest = idx.d.entries().to_vec();
    if rest[v0] < idx.k || rest[v1] < idx.k {
        return Ok(QHalfRational::zero());
    }
    rest[v0] -= idx.k;
    rest[v1] -= idx.k;
    let chi = t.quiver.euler_form_unchecked(&idx.d, &idx.d);
    let k = idx.k as i64;
    Ok(&QHalfRational::neg_s_pow(chi + k * k)
        * &inverse_poch_product(std::iter::once(idx.k).chain(rest)))
}

/// `(-s)^{chi_TU(e,e)+k^2} grass_series(e_star, k) prod_{i != star} 1/(q;q)_{e_i}`,
/// or 0 when `k > e_star`.
pub fn framed_tu_series(tu: &MutationResult, e: &DimVector, k: u32) -> Result<QHalfRational> {
    require(tu, MutationKind::Unlink)?;
    let star = tu.new_vertex.expect("unlinking creates a vertex");
    tu.quiver.check_dim(e)?;
    let es = e.entries()[star];
    if k > es {
        return Ok(QHalfRational::zero());
    }
    let chi = tu.quiver.euler_form_unchecked(e, e);
    let k64 = k as i64;
    let others = e
        .entries()
        .iter()
        .enumerate()
        .filter(|&(i, _)| i != star)
        .map(|(_, &x)| x);
    Ok(
        &(&QHalfRational::neg_s_pow(chi + k64 * k64) * &grass_series(es, k)?)
            * &inverse_poch_product(others),
    )
}

/// `framed_T(d,k)` against the sum of `framed_TU(e,k)` over the fibre of `d`.
pub fn framed_decomposition_comparison(
    t: &MutationResult,
    tu: &MutationResult,
    idx: &FramedIndex,
) -> Result<Comparison<FramedIndex>> {
    let lhs = framed_t_series(t, idx)?;
    let rhs = tu
        .fibre_u(&idx.d)?
        .iter()
        .map(|e| framed_tu_series(tu, e, idx.k))
        .sum::<Result<QHalfRational>>()?;
    Ok(Comparison::new(idx.clone(), lhs, rhs))
}

pub fn check_framed_decomposition(
    t: &MutationResult,
    tu: &MutationResult,
    idx: &FramedIndex,
) -> Result<Verdict<FramedIndex>> {
    Ok(Verdict::from_comparisons([
        framed_decomposition_comparison(t, tu, idx)?,
    ]))
}

/// `E = sum_{k=0}^{e_star} s^{-k} framed_TU(e,k)`.
pub fn complex_euler(tu: &MutationResult, e: &DimVector) -> Result<QHalfRational> {
    let star = tu
        .new_vertex
        .ok_or_else(|| Error::Precondition("expected an unlinking".into()))?;
    tu.quiver.check_dim(e)?;
    (0..=e.entries()[star])
        .map(|k| Ok(framed_tu_series(tu, e, k)?.shift(-(k as i64))))
        .sum()
}

/// `E` against 0 when `e_star > 0`, and against `A_base(d)` at `e = (d, 0)`.
pub fn complex_euler_comparison(
    tu: &MutationResult,
    e: &DimVector,
    base: &Quiver,
) -> Result<Comparison<DimVector>> {
    let star = tu
        .new_vertex
        .ok_or_else(|| Error::Precondition("expected an unlinking".into()))?;
    if base.vertex_count() + 1 != tu.quiver.vertex_count() || star != base.vertex_count() {
        return Err(Error::Precondition(format!(
            "`{}` is not the base of `{}`",
            base.name(),
            tu.quiver.name()
        )));
    }
    let lhs = complex_euler(tu, e)?;
    let rhs = if e.entries()[star] > 0 {
        QHalfRational::zero()
    } else {
        coefficient_a(base, &DimVector(e.entries()[..star].to_vec()))
    };
    Ok(Comparison::new(e.clone(), lhs, rhs))
}

pub fn check_complex_euler(
    tu: &MutationResult,
    e: &DimVector,
    base: &Quiver,
) -> Result<Verdict<DimVector>> {
    Ok(Verdict::from_comparisons([complex_euler_comparison(
        tu, e, base,
    )?]))
}

/// `A_{Q^L}((d', k))` against `framed_T(d' + k(e0+e1), k)`.
pub fn linked_framed_comparison(
    l: &MutationResult,
    t: &MutationResult,
    d_prime: &DimVector,
    k: u32,
) -> Result<Comparison<FramedIndex>> {
    require(l, MutationKind::Link)?;
    if l.pair != t.pair || l.source_vertex_count != t.quiver.vertex_count() {
        return Err(Error::Precondition(
            "linking and two-cycle results disagree".into(),
        ));
    }
    t.quiver.check_dim(d_prime)?;
    let mut on_l = d_prime.entries().to_vec();
    on_l.push(k);
    let mut d = d_prime.entries().to_vec();
    d[t.pair.v0] += k;
    d[t.pair.v1] += k;
    let idx = FramedIndex { d: DimVector(d), k };
    let lhs = coefficient_a(&l.quiver, &DimVector(on_l));
    let rhs = framed_t_series(t, &idx)?;
    Ok(Comparison::new(idx, lhs, rhs))
}

/// Both routes to the linking identity, one comparison per region point.
#[derive(Debug, Clone)]
pub struct LinkingCheck {
    /// `A_{Q^L}` with `x_square -> s^{-1} x_v0 x_v1`, against `A_Q`.
    pub substitution: Vec<Comparison<DimVector>>,
    /// The substituted coefficient against `sum_{e, k} s^{-k} framed_TU(e, k)`.
    pub framed_route: Vec<Comparison<DimVector>>,
}

impl LinkingCheck {
    pub fn verdict(&self) -> Verdict<DimVector> {
        Verdict::from_comparisons(
            self.substitution
                .iter()
                .chain(&self.framed_route)
                .cloned()
                .collect::<Vec<_>>(),
        )
    }
}

pub fn linking_identity(
    q: &Quiver,
    p: &VertexPairPointer,
    policy: &TruncationPolicy,
) -> Result<LinkingCheck> {
    let l = link(q, p)?;
    let square = l.new_vertex.expect("linking creates a vertex");
    let target = Arc::new(q.clone());
    let lifted = series_a(Arc::new(l.quiver.clone()), l.extend_policy(policy)?)?;
    let image = q.unit(p.v0).add(&q.unit(p.v1));
    let pushed = substitute_vertex(
        &lifted,
        &l.quiver.vertices()[square],
        &image,
        -1,
        target.clone(),
        policy.clone(),
    )?;
    let substitution = series_comparisons(&pushed, &series_a(target, policy.clone())?)?;

    let t = add_twocycle(q, p)?;
    let tu = unlink(
        &t.quiver,
        &t.distinguished
            .expect("two-cycle construction records its cycle"),
    )?;
    let framed_route = substitution
        .par_iter()
        .map(|c| {
            let d = &c.at;
            let top = d.entries()[p.v0].min(d.entries()[p.v1]);
            let mut sum = QHalfRational::zero();
            for e in tu.fibre_u(d)? {
                for k in 0..=top {
                    sum = &sum + &framed_tu_series(&tu, &e, k)?.shift(-(k as i64));
                }
            }
            Ok(Comparison::new(d.clone(), c.lhs.clone(), sum))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(LinkingCheck {
        substitution,
        framed_route,
    })
}

pub fn check_linking_identity(
    q: &Quiver,
    p: &VertexPairPointer,
    policy: &TruncationPolicy,
) -> Result<Verdict<DimVector>> {
    Ok(linking_identity(q, p, policy)?.verdict())
}

/// `(-s)^{-(chi_T(d,d)+k^2)} framed_T(d,k)`.
pub fn normalized_framed_t(t: &MutationResult, idx: &FramedIndex) -> Result<QHalfRational> {
    let chi = t.quiver.euler_form(&idx.d, &idx.d)?;
    let k = idx.k as i64;
    Ok(&QHalfRational::neg_s_pow(-(chi + k * k)) * &framed_t_series(t, idx)?)
}

/// `(-s)^{-(chi_TU(e,e)+k^2)} framed_TU(e,k)`.
pub fn normalized_framed_tu(tu: &MutationResult, e: &DimVector, k: u32) -> Result<QHalfRational> {
    let chi = tu.quiver.euler_form(e, e)?;
    let k64 = k as i64;
    Ok(&QHalfRational::neg_s_pow(-(chi + k64 * k64)) * &framed_tu_series(tu, e, k)?)
}
