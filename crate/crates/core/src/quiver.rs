//! Quivers, dimension vectors and the Euler pairing.
//!
//! Vertices and arrows carry opaque string identifiers. Internally every
//! vertex is addressed by its position in the vertex list, which also fixes
//! the row/column order of the adjacency matrix and the order of dimension
//! vector entries.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: usize,
    pub target: usize,
}

/// A finite quiver; loops and parallel arrows are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Quiver {
    name: String,
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    vertex_index: HashMap<String, usize>,
    arrow_index: HashMap<String, usize>,
}

impl Quiver {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            vertices: Vec::new(),
            arrows: Vec::new(),
            vertex_index: HashMap::new(),
            arrow_index: HashMap::new(),
        }
    }

    /// Builds a quiver from vertex ids and `(label, source, target)` triples.
    pub fn from_parts<V, A>(name: &str, vertices: V, arrows: A) -> Result<Self>
    where
        V: IntoIterator,
        V::Item: AsRef<str>,
        A: IntoIterator<Item = (String, String, String)>,
    {
        let mut q = Quiver::new(name);
        for v in vertices {
            q.add_vertex(v.as_ref())?;
        }
        for (label, s, t) in arrows {
            q.add_arrow(&label, &s, &t)?;
        }
        Ok(q)
    }

    pub fn add_vertex(&mut self, id: &str) -> Result<usize> {
        if self.vertex_index.contains_key(id) {
            return Err(Error::InvalidQuiver(format!("duplicate vertex `{id}`")));
        }
        let idx = self.vertices.len();
        self.vertices.push(id.to_string());
        self.vertex_index.insert(id.to_string(), idx);
        Ok(idx)
    }

    pub fn add_arrow(&mut self, label: &str, source: &str, target: &str) -> Result<usize> {
        let s = self.require_vertex(source)?;
        let t = self.require_vertex(target)?;
        self.add_arrow_by_index(label, s, t)
    }

    pub fn add_arrow_by_index(
        &mut self,
        label: &str,
        source: usize,
        target: usize,
    ) -> Result<usize> {
        if source >= self.vertices.len() || target >= self.vertices.len() {
            return Err(Error::InvalidQuiver(format!(
                "arrow `{label}` has an endpoint outside the vertex list"
            )));
        }
        if self.arrow_index.contains_key(label) {
            return Err(Error::InvalidQuiver(format!(
                "duplicate arrow label `{label}`"
            )));
        }
        let idx = self.arrows.len();
        self.arrows.push(Arrow {
            label: label.to_string(),
            source,
            target,
        });
        self.arrow_index.insert(label.to_string(), idx);
        Ok(idx)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, id: &str) -> Option<usize> {
        self.vertex_index.get(id).copied()
    }

    pub fn arrow(&self, label: &str) -> Option<usize> {
        self.arrow_index.get(label).copied()
    }

    pub fn has_vertex(&self, id: &str) -> bool {
        self.vertex_index.contains_key(id)
    }

    pub fn has_arrow(&self, label: &str) -> bool {
        self.arrow_index.contains_key(label)
    }

    fn require_vertex(&self, id: &str) -> Result<usize> {
        self.vertex(id)
            .ok_or_else(|| Error::InvalidQuiver(format!("unknown vertex `{id}`")))
    }

    /// Entry `(i, j)` counts the arrows `i -> j`.
    pub fn adjacency_matrix(&self) -> Vec<Vec<u64>> {
        let n = self.vertices.len();
        let mut m = vec![vec![0u64; n]; n];
        for a in &self.arrows {
            m[a.source][a.target] += 1;
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        let m = self.adjacency_matrix();
        let n = m.len();
        (0..n).all(|i| (0..n).all(|j| m[i][j] == m[j][i]))
    }

    /// The Euler pairing `sum_i d1_i d2_i - sum_{a: i -> j} d1_j d2_i`.
    pub fn euler_form(&self, d1: &DimVector, d2: &DimVector) -> Result<i64> {
        self.check_dim(d1)?;
        self.check_dim(d2)?;
        Ok(self.euler_form_unchecked(d1, d2))
    }

    pub(crate) fn euler_form_unchecked(&self, d1: &DimVector, d2: &DimVector) -> i64 {
        let diag: i64 =
            d1.0.iter()
                .zip(&d2.0)
                .map(|(&a, &b)| a as i64 * b as i64)
                .sum();
        let arrows: i64 = self
            .arrows
            .iter()
            .map(|a| d1.0[a.target] as i64 * d2.0[a.source] as i64)
            .sum();
        diag - arrows
    }

    /// Dimension of the moduli stack of representations, `-euler_form(d, d)`.
    pub fn moduli_dim(&self, d: &DimVector) -> Result<i64> {
        Ok(-self.euler_form(d, d)?)
    }

    pub fn check_dim(&self, d: &DimVector) -> Result<()> {
        if d.0.len() != self.vertices.len() {
            return Err(Error::InvalidDimVector(format!(
                "expected {} entries for quiver `{}`, got {}",
                self.vertices.len(),
                self.name,
                d.0.len()
            )));
        }
        Ok(())
    }

    /// Dimension vector from `(vertex, count)` pairs; absent vertices are zero.
    pub fn dim<'a, I>(&self, entries: I) -> Result<DimVector>
    where
        I: IntoIterator<Item = (&'a str, u32)>,
    {
        let mut v = vec![0u32; self.vertices.len()];
        for (id, n) in entries {
            let idx = self.vertex(id).ok_or_else(|| {
                Error::InvalidDimVector(format!("unknown vertex `{id}` in quiver `{}`", self.name))
            })?;
            v[idx] = n;
        }
        Ok(DimVector(v))
    }

    pub fn zero_dim(&self) -> DimVector {
        DimVector::zero(self.vertices.len())
    }

    /// The unit vector `e_i`.
    pub fn unit(&self, i: usize) -> DimVector {
        let mut v = self.zero_dim();
        v.0[i] = 1;
        v
    }

    /// Renders `d` as comma-joined `vertex:count` in vertex order.
    pub fn format_dim(&self, d: &DimVector) -> String {
        self.vertices
            .iter()
            .zip(&d.0)
            .map(|(v, n)| format!("{v}:{n}"))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Parses the `vertex:count` rendering; absent vertices are zero.
    pub fn parse_dim(&self, text: &str) -> Result<DimVector> {
        let mut v = vec![0u32; self.vertices.len()];
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (id, n) = part.rsplit_once(':').ok_or_else(|| {
                Error::InvalidDimVector(format!("expected `vertex:count`, got `{part}`"))
            })?;
            let n: u32 = n
                .parse()
                .map_err(|_| Error::InvalidDimVector(format!("bad count in `{part}`")))?;
            let idx = self
                .vertex(id)
                .ok_or_else(|| Error::InvalidDimVector(format!("unknown vertex `{id}`")))?;
            v[idx] = n;
        }
        Ok(DimVector(v))
    }
}

/// Dimension vector, one non-negative entry per vertex in quiver order.
///
/// The derived ordering is lexicographic in vertex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DimVector(pub Vec<u32>);

impl DimVector {
    pub fn zero(n: usize) -> Self {
        DimVector(vec![0; n])
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn scaled(&self, k: u32) -> DimVector {
        DimVector(self.0.iter().map(|a| a * k).collect())
    }

    /// Componentwise difference, `None` if any entry would be negative.
    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(DimVector)
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A distinguished two-cycle `c: v0 -> v1`, `d: v1 -> v0` (arrow indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoCyclePointer {
    pub c: usize,
    pub d: usize,
    pub v0: usize,
    pub v1: usize,
}

impl TwoCyclePointer {
    /// Resolves the pointer from arrow labels; the vertices are read off `c`.
    pub fn from_labels(q: &Quiver, c: &str, d: &str) -> Result<Self> {
        let ci = q.arrow(c).ok_or_else(|| {
            Error::Precondition(format!("`{c}` is not an arrow of `{}`", q.name()))
        })?;
        let di = q.arrow(d).ok_or_else(|| {
            Error::Precondition(format!("`{d}` is not an arrow of `{}`", q.name()))
        })?;
        let ptr = TwoCyclePointer {
            c: ci,
            d: di,
            v0: q.arrows()[ci].source,
            v1: q.arrows()[ci].target,
        };
        ptr.validate(q)?;
        Ok(ptr)
    }

    pub fn validate(&self, q: &Quiver) -> Result<()> {
        let arrows = q.arrows();
        let n = q.vertex_count();
        if self.c >= arrows.len() || self.d >= arrows.len() || self.v0 >= n || self.v1 >= n {
            return Err(Error::Precondition("two-cycle pointer out of range".into()));
        }
        if self.v0 == self.v1 {
            return Err(Error::Precondition(
                "two-cycle must join two distinct vertices".into(),
            ));
        }
        let (c, d) = (&arrows[self.c], &arrows[self.d]);
        if (c.source, c.target) != (self.v0, self.v1) || (d.source, d.target) != (self.v1, self.v0)
        {
            return Err(Error::Precondition(format!(
                "arrows `{}` and `{}` do not form a two-cycle",
                c.label, d.label
            )));
        }
        Ok(())
    }

    pub fn pair(&self) -> VertexPairPointer {
        VertexPairPointer {
            v0: self.v0,
            v1: self.v1,
        }
    }
}

/// A distinguished ordered pair of distinct vertices (indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexPairPointer {
    pub v0: usize,
    pub v1: usize,
}

impl VertexPairPointer {
    pub fn from_ids(q: &Quiver, v0: &str, v1: &str) -> Result<Self> {
        let a = q.vertex(v0).ok_or_else(|| {
            Error::Precondition(format!("`{v0}` is not a vertex of `{}`", q.name()))
        })?;
        let b = q.vertex(v1).ok_or_else(|| {
            Error::Precondition(format!("`{v1}` is not a vertex of `{}`", q.name()))
        })?;
        let p = VertexPairPointer { v0: a, v1: b };
        p.validate(q)?;
        Ok(p)
    }

    pub fn validate(&self, q: &Quiver) -> Result<()> {
        if self.v0 >= q.vertex_count() || self.v1 >= q.vertex_count() {
            return Err(Error::Precondition("vertex pair out of range".into()));
        }
        if self.v0 == self.v1 {
            return Err(Error::Precondition("vertex pair must be distinct".into()));
        }
        Ok(())
    }

    pub fn contains(&self, i: usize) -> bool {
        i == self.v0 || i == self.v1
    }
}
