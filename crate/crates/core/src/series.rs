//! Truncated generating series over [`QHalfRational`] coefficients.
//!
//! A [`MotivicSeries`] stores one coefficient for every dimension vector in
//! the region of its [`TruncationPolicy`], zeros included, keyed in
//! lexicographic vertex order.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qcoef::{inverse_poch_product, QHalfRational};
use crate::quiver::{DimVector, Quiver};
use crate::verdict::{Comparison, Verdict};

/// Weighted-degree truncation: `d` is kept iff `sum_i weight_i * d_i <= bound`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncationPolicy {
    weights: Vec<u32>,
    bound: u32,
}

impl TruncationPolicy {
    /// Unit weights on every vertex.
    pub fn uniform(q: &Quiver, bound: u32) -> Self {
        TruncationPolicy {
            weights: vec![1; q.vertex_count()],
            bound,
        }
    }

    /// Unit weights except for the listed vertices.
    pub fn with_weights<'a, I>(q: &Quiver, overrides: I, bound: u32) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut weights = vec![1; q.vertex_count()];
        for (id, w) in overrides {
            let i = q
                .vertex(id)
                .ok_or_else(|| Error::Precondition(format!("unknown vertex `{id}` in weights")))?;
            if w == 0 {
                return Err(Error::Precondition(format!(
                    "weight of `{id}` must be positive"
                )));
            }
            weights[i] = w;
        }
        Ok(TruncationPolicy { weights, bound })
    }

    /// Weights in vertex order.
    pub fn from_weights(weights: Vec<u32>, bound: u32) -> Result<Self> {
        if weights.contains(&0) {
            return Err(Error::Precondition(
                "truncation weights must be positive".into(),
            ));
        }
        Ok(TruncationPolicy { weights, bound })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn vertex_count(&self) -> usize {
        self.weights.len()
    }

    /// Appends a vertex of weight `w`.
    pub fn extended(&self, w: u32) -> Self {
        let mut weights = self.weights.clone();
        weights.push(w);
        TruncationPolicy {
            weights,
            bound: self.bound,
        }
    }

    pub fn weighted_degree(&self, d: &DimVector) -> u64 {
        self.weights
            .iter()
            .zip(d.entries())
            .map(|(&w, &x)| w as u64 * x as u64)
            .sum()
    }

    pub fn contains(&self, d: &DimVector) -> bool {
        d.len() == self.weights.len() && self.weighted_degree(d) <= self.bound as u64
    }

    /// Every dimension vector of the region, in lexicographic order.
    pub fn region(&self) -> Vec<DimVector> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; self.weights.len()];
        self.fill(0, self.bound, &mut cur, &mut out);
        out
    }

    fn fill(&self, i: usize, budget: u32, cur: &mut Vec<u32>, out: &mut Vec<DimVector>) {
        if i == self.weights.len() {
            out.push(DimVector(cur.clone()));
            return;
        }
        let w = self.weights[i];
        for x in 0..=budget / w {
            cur[i] = x;
            self.fill(i + 1, budget - x * w, cur, out);
        }
        cur[i] = 0;
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MotivicSeries {
    quiver: Arc<Quiver>,
    policy: TruncationPolicy,
    coefficients: BTreeMap<DimVector, QHalfRational>,
}

impl MotivicSeries {
    /// Evaluates `f` on every region point (in parallel) and assembles the series.
    pub fn from_fn<F>(quiver: Arc<Quiver>, policy: TruncationPolicy, f: F) -> Result<Self>
    where
        F: Fn(&DimVector) -> QHalfRational + Sync,
    {
        check_policy(&quiver, &policy)?;
        let coefficients = policy
            .region()
            .into_par_iter()
            .map(|d| {
                let c = f(&d);
                (d, c)
            })
            .collect::<Vec<_>>()
            .into_iter()
            .collect();
        Ok(MotivicSeries {
            quiver,
            policy,
            coefficients,
        })
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn policy(&self) -> &TruncationPolicy {
        &self.policy
    }

    pub fn len(&self) -> usize {
        self.coefficients.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coefficients.is_empty()
    }

    pub fn get(&self, d: &DimVector) -> Option<&QHalfRational> {
        self.coefficients.get(d)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&DimVector, &QHalfRational)> {
        self.coefficients.iter()
    }

    /// Replaces one coefficient; `d` must lie in the region.
    pub fn set(&mut self, d: &DimVector, c: QHalfRational) -> Result<()> {
        match self.coefficients.get_mut(d) {
            Some(slot) => {
                *slot = c;
                Ok(())
            }
            None => Err(Error::InvalidDimVector(format!(
                "{} is outside the truncation region",
                self.quiver.format_dim(d)
            ))),
        }
    }

    pub fn add(&self, other: &MotivicSeries) -> Result<MotivicSeries> {
        self.check_comparable(other)?;
        let coefficients = self
            .coefficients
            .iter()
            .map(|(d, c)| (d.clone(), c + &other.coefficients[d]))
            .collect();
        Ok(MotivicSeries {
            quiver: self.quiver.clone(),
            policy: self.policy.clone(),
            coefficients,
        })
    }

    fn check_comparable(&self, other: &MotivicSeries) -> Result<()> {
        if self.quiver.vertices() != other.quiver.vertices() {
            return Err(Error::Incomparable(
                "series live on different vertex sets".into(),
            ));
        }
        if self.policy != other.policy {
            return Err(Error::Incomparable("truncation policies differ".into()));
        }
        Ok(())
    }

    /// Moves the series to an isomorphic quiver, renaming vertices by `mapping`.
    pub fn relabel(&self, target: Arc<Quiver>, mapping: &HashMap<String, String>) -> Result<Self> {
        let n = self.quiver.vertex_count();
        if target.vertex_count() != n {
            return Err(Error::Precondition(
                "relabeling needs equally many vertices".into(),
            ));
        }
        let mut perm = vec![usize::MAX; n];
        for (i, v) in self.quiver.vertices().iter().enumerate() {
            let image = mapping
                .get(v)
                .ok_or_else(|| Error::Precondition(format!("vertex `{v}` has no image")))?;
            let j = target
                .vertex(image)
                .ok_or_else(|| Error::Precondition(format!("`{image}` is not a target vertex")))?;
            perm[i] = j;
        }
        let mut seen = vec![false; n];
        for &j in &perm {
            if std::mem::replace(&mut seen[j], true) {
                return Err(Error::Precondition("relabeling is not a bijection".into()));
            }
        }
        let permute = |d: &DimVector| {
            let mut out = vec![0u32; n];
            for (i, &x) in d.entries().iter().enumerate() {
                out[perm[i]] = x;
            }
            DimVector(out)
        };
        let weights = permute(&DimVector(self.policy.weights.clone())).0;
        Ok(MotivicSeries {
            quiver: target,
            policy: TruncationPolicy {
                weights,
                bound: self.policy.bound,
            },
            coefficients: self
                .coefficients
                .iter()
                .map(|(d, c)| (permute(d), c.clone()))
                .collect(),
        })
    }

    /// One line per region point: `<vertex:count,...>\t<coefficient>`.
    pub fn dump(&self) -> String {
        let mut out = String::new();
        for (d, c) in &self.coefficients {
            out.push_str(&self.quiver.format_dim(d));
            out.push('\t');
            out.push_str(&c.to_string());
            out.push('\n');
        }
        out
    }

    /// Parses a [`dump`](Self::dump); the lines must cover the region exactly.
    pub fn parse_dump(quiver: Arc<Quiver>, policy: TruncationPolicy, text: &str) -> Result<Self> {
        check_policy(&quiver, &policy)?;
        let mut coefficients = BTreeMap::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let semantic = |message: String| Error::Semantic {
                line: lineno + 1,
                message,
            };
            let (d, c) = line
                .split_once('\t')
                .ok_or_else(|| semantic("expected `<dimension>\\t<coefficient>`".into()))?;
            let d = quiver.parse_dim(d).map_err(|e| semantic(e.to_string()))?;
            let c: QHalfRational = c.parse().map_err(|e: Error| semantic(e.to_string()))?;
            if !policy.contains(&d) {
                return Err(semantic(format!(
                    "{} is outside the region",
                    quiver.format_dim(&d)
                )));
            }
            if coefficients.insert(d, c).is_some() {
                return Err(semantic("duplicate dimension vector".into()));
            }
        }
        if let Some(missing) = policy
            .region()
            .into_iter()
            .find(|d| !coefficients.contains_key(d))
        {
            return Err(Error::Coverage(format!(
                "dump has no entry for {}",
                quiver.format_dim(&missing)
            )));
        }
        Ok(MotivicSeries {
            quiver,
            policy,
            coefficients,
        })
    }
}

fn check_policy(q: &Quiver, policy: &TruncationPolicy) -> Result<()> {
    if policy.vertex_count() != q.vertex_count() {
        return Err(Error::Precondition(format!(
            "truncation policy has {} weights but `{}` has {} vertices",
            policy.vertex_count(),
            q.name(),
            q.vertex_count()
        )));
    }
    Ok(())
}

/// Coefficient of `x^d` in the motivic series:
/// `(-s)^{chi(d,d)} / prod_i (q;q)_{d_i}`.
pub fn coefficient_a(q: &Quiver, d: &DimVector) -> QHalfRational {
    let chi = q.euler_form_unchecked(d, d);
    &QHalfRational::neg_s_pow(chi) * &inverse_poch_product(d.entries().iter().copied())
}

pub fn series_a(q: Arc<Quiver>, policy: TruncationPolicy) -> Result<MotivicSeries> {
    let quiver = q.clone();
    MotivicSeries::from_fn(q, policy, move |d| coefficient_a(&quiver, d))
}

/// Coefficient of `y^d` in the adjacency-matrix series, with `s` standing in
/// for its variable `t`: `(-s)^{sum_ij C_ij d_i d_j} / prod_i (q;q)_{d_i}`.
pub fn coefficient_p(q: &Quiver, d: &DimVector) -> QHalfRational {
    let e = d.entries();
    let exponent: i64 = q
        .arrows()
        .iter()
        .map(|a| e[a.source] as i64 * e[a.target] as i64)
        .sum();
    &QHalfRational::neg_s_pow(exponent) * &inverse_poch_product(e.iter().copied())
}

pub fn series_p(q: Arc<Quiver>, policy: TruncationPolicy) -> Result<MotivicSeries> {
    let quiver = q.clone();
    MotivicSeries::from_fn(q, policy, move |d| coefficient_p(&quiver, d))
}

/// Per-coefficient comparison of `A_Q(x, q)` with `P^Q(q^{-1/2} x, q^{-1/2})`.
pub fn lemma21_comparisons(
    q: &Quiver,
    policy: &TruncationPolicy,
) -> Result<Vec<Comparison<DimVector>>> {
    if !q.is_symmetric() {
        return Err(Error::Precondition(format!(
            "`{}` is not symmetric; the adjacency series is only compared for symmetric quivers",
            q.name()
        )));
    }
    check_policy(q, policy)?;
    Ok(policy
        .region()
        .into_par_iter()
        .map(|d| {
            let lhs = coefficient_a(q, &d);
            let rhs = coefficient_p(q, &d)
                .invert_variable()
                .shift(-(d.total() as i64));
            Comparison::new(d, lhs, rhs)
        })
        .collect())
}

pub fn check_lemma21(q: &Quiver, policy: &TruncationPolicy) -> Result<Verdict<DimVector>> {
    Ok(Verdict::from_comparisons(lemma21_comparisons(q, policy)?))
}

/// The substitution `x_v -> s^{shift} * x^{image}`, re-truncated to `policy`
/// on `target`.
///
/// Vertices of the source other than `v` are matched to target vertices by
/// id. Every target coefficient is the finite sum over its preimages; if a
/// preimage lies outside the source region the result is undetermined and a
/// coverage error is returned.
pub fn substitute_vertex(
    series: &MotivicSeries,
    v: &str,
    image: &DimVector,
    s_shift: i64,
    target: Arc<Quiver>,
    policy: TruncationPolicy,
) -> Result<MotivicSeries> {
    let src = series.quiver();
    let vi = src
        .vertex(v)
        .ok_or_else(|| Error::Precondition(format!("`{v}` is not a vertex of `{}`", src.name())))?;
    target.check_dim(image)?;
    if image.is_zero() {
        return Err(Error::Precondition(
            "substitution image must be nonzero".into(),
        ));
    }
    check_policy(&target, &policy)?;
    let mut embed = vec![usize::MAX; src.vertex_count()];
    let mut covered = vec![false; target.vertex_count()];
    for (i, id) in src.vertices().iter().enumerate() {
        if i == vi {
            continue;
        }
        let j = target.vertex(id).ok_or_else(|| {
            Error::Precondition(format!("vertex `{id}` is missing from `{}`", target.name()))
        })?;
        embed[i] = j;
        covered[j] = true;
    }

    let coefficient = |t: &DimVector| -> Result<QHalfRational> {
        let mut sum = QHalfRational::zero();
        let mut k = 0u32;
        while let Some(rest) = t.checked_sub(&image.scaled(k)) {
            let reachable = rest
                .entries()
                .iter()
                .zip(&covered)
                .all(|(&x, &c)| c || x == 0);
            if reachable {
                let d = DimVector(
                    (0..src.vertex_count())
                        .map(|i| if i == vi { k } else { rest.entries()[embed[i]] })
                        .collect(),
                );
                let c = series.get(&d).ok_or_else(|| {
                    Error::Coverage(format!(
                        "{} of `{}` is needed for {} of `{}`",
                        src.format_dim(&d),
                        src.name(),
                        target.format_dim(t),
                        target.name()
                    ))
                })?;
                if !c.is_zero() {
                    sum = &sum + &c.shift(k as i64 * s_shift);
                }
            }
            k += 1;
        }
        Ok(sum)
    };

    let coefficients = policy
        .region()
        .into_par_iter()
        .map(|t| coefficient(&t).map(|c| (t, c)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .collect();
    Ok(MotivicSeries {
        quiver: target,
        policy,
        coefficients,
    })
}

/// Pointwise comparison; the first mismatch in key order is reported.
pub fn series_eq(a: &MotivicSeries, b: &MotivicSeries) -> Result<Verdict<DimVector>> {
    Ok(Verdict::from_comparisons(series_comparisons(a, b)?))
}

pub fn series_comparisons(
    a: &MotivicSeries,
    b: &MotivicSeries,
) -> Result<Vec<Comparison<DimVector>>> {
    a.check_comparable(b)?;
    Ok(a.iter()
        .map(|(d, c)| Comparison::new(d.clone(), c.clone(), b.coefficients[d].clone()))
        .collect())
}
