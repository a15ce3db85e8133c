//! Unlinking, linking and two-cycle constructions.
//!
//! Generated vertices are named `star`, `star2`, ... (unlinking) and
//! `square`, `square2`, ... (linking), taking the first name for which every
//! generated label is fresh. For a source arrow `a` and new vertex `v` the
//! copy with target redirected to `v` is `a_v`, with source redirected `a^v`,
//! with both redirected `a^v_v`. The source quiver's vertices keep their
//! indices; the new vertex is appended last.

use crate::error::{Error, Result};
use crate::quiver::{DimVector, Quiver, TwoCyclePointer, VertexPairPointer};
use crate::series::TruncationPolicy;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MutationKind {
    Unlink,
    Link,
    TwoCycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationResult {
    pub kind: MutationKind,
    pub quiver: Quiver,
    /// The created vertex (absent for the two-cycle construction).
    pub new_vertex: Option<usize>,
    /// The created two-cycle, for linking and the two-cycle construction.
    pub distinguished: Option<TwoCyclePointer>,
    /// Source arrow label -> generated labels, in source arrow order.
    pub label_map: Vec<(String, Vec<String>)>,
    /// The pair of vertices the construction acts on.
    pub pair: VertexPairPointer,
    pub source_vertex_count: usize,
}

impl MutationResult {
    /// `<source-label> -> <generated labels comma-joined>`, one line per source arrow.
    pub fn label_map_text(&self) -> String {
        self.label_map
            .iter()
            .map(|(src, gen)| format!("{src} -> {}\n", gen.join(",")))
            .collect()
    }

    /// The policy on the mutated quiver; a created vertex weighs as much as
    /// the two vertices it merges.
    pub fn extend_policy(&self, policy: &TruncationPolicy) -> Result<TruncationPolicy> {
        if policy.vertex_count() != self.source_vertex_count {
            return Err(Error::Precondition(
                "truncation policy does not match the source quiver".into(),
            ));
        }
        Ok(match self.new_vertex {
            Some(_) => {
                let w = policy.weights();
                policy.extended(w[self.pair.v0] + w[self.pair.v1])
            }
            None => policy.clone(),
        })
    }

    fn require_unlink(&self) -> Result<usize> {
        match (self.kind, self.new_vertex) {
            (MutationKind::Unlink, Some(star)) => Ok(star),
            _ => Err(Error::Domain("dimension maps need an unlinking".into())),
        }
    }

    /// `u(e)`: adds `e_star` to both distinguished vertices and drops `star`.
    pub fn dim_map_u(&self, e: &DimVector) -> Result<DimVector> {
        let star = self.require_unlink()?;
        if e.len() != self.quiver.vertex_count() {
            return Err(Error::Domain(format!(
                "dimension vector has {} entries, `{}` has {} vertices",
                e.len(),
                self.quiver.name(),
                self.quiver.vertex_count()
            )));
        }
        let es = e.entries()[star];
        let mut d = e.entries()[..self.source_vertex_count].to_vec();
        d[self.pair.v0] += es;
        d[self.pair.v1] += es;
        Ok(DimVector(d))
    }

    /// All `e` with `u(e) = d`, ordered by ascending `e_star`.
    pub fn fibre_u(&self, d: &DimVector) -> Result<Vec<DimVector>> {
        self.require_unlink()?;
        if d.len() != self.source_vertex_count {
            return Err(Error::Domain(
                "dimension vector is not on the source quiver".into(),
            ));
        }
        let (a, b) = (d.entries()[self.pair.v0], d.entries()[self.pair.v1]);
        Ok((0..=a.min(b))
            .map(|ell| {
                let mut e = d.entries().to_vec();
                e[self.pair.v0] -= ell;
                e[self.pair.v1] -= ell;
                e.push(ell);
                DimVector(e)
            })
            .collect())
    }
}

fn candidates(base: &str) -> impl Iterator<Item = String> + '_ {
    std::iter::once(base.to_string()).chain((2..).map(move |n| format!("{base}{n}")))
}

fn copy_vertices(src: &Quiver, name: String) -> Quiver {
    let mut q = Quiver::new(name);
    for v in src.vertices() {
        q.add_vertex(v).expect("source vertices are distinct");
    }
    q
}

/// Removes the two-cycle `(c, d)` and adds a vertex `star` carrying the
/// decorated copies of every arrow touching the pair; `c` leaves the loop
/// `c^star_star`.
pub fn unlink(q: &Quiver, tc: &TwoCyclePointer) -> Result<MutationResult> {
    tc.validate(q)?;
    let pair = tc.pair();
    for name in candidates("star").filter(|n| !q.has_vertex(n)) {
        let mut out = copy_vertices(q, format!("{}_U", q.name()));
        let star = out.add_vertex(&name)?;
        let mut label_map = Vec::with_capacity(q.arrows().len());
        let mut fresh = true;
        for (ai, a) in q.arrows().iter().enumerate() {
            let l = &a.label;
            let copies: Vec<(String, usize, usize)> = if ai == tc.d {
                Vec::new()
            } else if ai == tc.c {
                vec![(format!("{l}^{name}_{name}"), star, star)]
            } else {
                match (pair.contains(a.source), pair.contains(a.target)) {
                    (false, false) => vec![(l.clone(), a.source, a.target)],
                    (false, true) => vec![
                        (l.clone(), a.source, a.target),
                        (format!("{l}_{name}"), a.source, star),
                    ],
                    (true, false) => vec![
                        (l.clone(), a.source, a.target),
                        (format!("{l}^{name}"), star, a.target),
                    ],
                    (true, true) => vec![
                        (l.clone(), a.source, a.target),
                        (format!("{l}^{name}"), star, a.target),
                        (format!("{l}_{name}"), a.source, star),
                        (format!("{l}^{name}_{name}"), star, star),
                    ],
                }
            };
            let mut labels = Vec::with_capacity(copies.len());
            for (label, s, t) in copies {
                if out.add_arrow_by_index(&label, s, t).is_err() {
                    fresh = false;
                    break;
                }
                labels.push(label);
            }
            if !fresh {
                break;
            }
            label_map.push((l.clone(), labels));
        }
        if fresh {
            return Ok(MutationResult {
                kind: MutationKind::Unlink,
                quiver: out,
                new_vertex: Some(star),
                distinguished: None,
                label_map,
                pair,
                source_vertex_count: q.vertex_count(),
            });
        }
    }
    unreachable!("vertex name candidates are unbounded")
}

/// Adds a vertex `square`, a two-cycle `alpha_square: v0 -> v1`,
/// `beta_square: v1 -> v0`, and decorated copies of every arrow touching the
/// pair.
pub fn link(q: &Quiver, p: &VertexPairPointer) -> Result<MutationResult> {
    p.validate(q)?;
    for name in candidates("square").filter(|n| !q.has_vertex(n)) {
        let mut out = copy_vertices(q, format!("{}_L", q.name()));
        let sq = out.add_vertex(&name)?;
        let Ok(alpha) = out.add_arrow_by_index(&format!("alpha_{name}"), p.v0, p.v1) else {
            continue;
        };
        let Ok(beta) = out.add_arrow_by_index(&format!("beta_{name}"), p.v1, p.v0) else {
            continue;
        };
        let mut label_map = Vec::with_capacity(q.arrows().len());
        let mut fresh = true;
        for a in q.arrows() {
            let l = &a.label;
            let copies: Vec<(String, usize, usize)> =
                match (p.contains(a.source), p.contains(a.target)) {
                    (false, false) => vec![(l.clone(), a.source, a.target)],
                    (true, false) => vec![
                        (l.clone(), a.source, a.target),
                        (format!("{l}^{name}"), sq, a.target),
                    ],
                    (false, true) => vec![
                        (l.clone(), a.source, a.target),
                        (format!("{l}_{name}"), a.source, sq),
                    ],
                    (true, true) => vec![
                        (l.clone(), a.source, a.target),
                        (format!("{l}^{name}"), sq, a.target),
                        (format!("{l}_{name}"), a.source, sq),
                        (format!("{l}^{name}_{name}"), sq, sq),
                    ],
                };
            let mut labels = Vec::with_capacity(copies.len());
            for (label, s, t) in copies {
                if out.add_arrow_by_index(&label, s, t).is_err() {
                    fresh = false;
                    break;
                }
                labels.push(label);
            }
            if !fresh {
                break;
            }
            label_map.push((l.clone(), labels));
        }
        if fresh {
            return Ok(MutationResult {
                kind: MutationKind::Link,
                quiver: out,
                new_vertex: Some(sq),
                distinguished: Some(TwoCyclePointer {
                    c: alpha,
                    d: beta,
                    v0: p.v0,
                    v1: p.v1,
                }),
                label_map,
                pair: *p,
                source_vertex_count: q.vertex_count(),
            });
        }
    }
    unreachable!("vertex name candidates are unbounded")
}

/// Adds a two-cycle `c: v0 -> v1`, `d: v1 -> v0` (labels `c_2`/`d_2`, ... if
/// taken) and nothing else.
pub fn add_twocycle(q: &Quiver, p: &VertexPairPointer) -> Result<MutationResult> {
    p.validate(q)?;
    let (c, d) = (1..)
        .map(|n| {
            if n == 1 {
                ("c".to_string(), "d".to_string())
            } else {
                (format!("c_{n}"), format!("d_{n}"))
            }
        })
        .find(|(c, d)| !q.has_arrow(c) && !q.has_arrow(d))
        .expect("label candidates are unbounded");
    let mut out = copy_vertices(q, format!("{}_T", q.name()));
    let mut label_map = Vec::with_capacity(q.arrows().len());
    for a in q.arrows() {
        out.add_arrow_by_index(&a.label, a.source, a.target)?;
        label_map.push((a.label.clone(), vec![a.label.clone()]));
    }
    let ci = out.add_arrow_by_index(&c, p.v0, p.v1)?;
    let di = out.add_arrow_by_index(&d, p.v1, p.v0)?;
    Ok(MutationResult {
        kind: MutationKind::TwoCycle,
        quiver: out,
        new_vertex: None,
        distinguished: Some(TwoCyclePointer {
            c: ci,
            d: di,
            v0: p.v0,
            v1: p.v1,
        }),
        label_map,
        pair: *p,
        source_vertex_count: q.vertex_count(),
    })
}

/// `Q^T` followed by unlinking at its new two-cycle.
pub fn twocycle_then_unlink(
    q: &Quiver,
    p: &VertexPairPointer,
) -> Result<(MutationResult, MutationResult)> {
    let t = add_twocycle(q, p)?;
    let tc = t
        .distinguished
        .expect("two-cycle construction records its cycle");
    let tu = unlink(&t.quiver, &tc)?;
    Ok((t, tu))
}

/// `Q^L` followed by unlinking at `(alpha, beta)`.
pub fn link_then_unlink(
    q: &Quiver,
    p: &VertexPairPointer,
) -> Result<(MutationResult, MutationResult)> {
    let l = link(q, p)?;
    let tc = l.distinguished.expect("linking records its cycle");
    let lu = unlink(&l.quiver, &tc)?;
    Ok((l, lu))
}
