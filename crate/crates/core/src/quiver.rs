//! Cluster quivers stored as signed, skew-symmetric exchange matrices.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexId(pub u32);

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Grid position `(row, col)`.
pub type Position = (usize, usize);

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: VertexId,
    pub pos: Option<Position>,
    pub frozen: bool,
}

/// A quiver without loops or 2-cycles.
///
/// `b(u, v)` is the number of arrows `u -> v` minus the number `v -> u`.
/// Arrows between two frozen vertices are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<Vertex>,
    index: BTreeMap<VertexId, usize>,
    b: Vec<i64>,
}

/// Wire format: `{"vertices":[{"id","pos","frozen"}], "arrows":[[u,v,m]]}`, `m > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<(VertexId, VertexId, i64)>,
}

impl Quiver {
    pub fn new(vertices: Vec<Vertex>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id, i).is_some() {
                return Err(Error::DuplicateVertex(v.id));
            }
        }
        let n = vertices.len();
        Ok(Self {
            vertices,
            index,
            b: vec![0; n * n],
        })
    }

    fn idx(&self, v: VertexId) -> Result<usize> {
        self.index.get(&v).copied().ok_or(Error::UnknownVertex(v))
    }

    fn entry(&self, i: usize, j: usize) -> i64 {
        self.b[i * self.vertices.len() + j]
    }

    fn set_entry(&mut self, i: usize, j: usize, m: i64) {
        let n = self.vertices.len();
        self.b[i * n + j] = m;
        self.b[j * n + i] = -m;
    }

    /// Adds `m` arrows `u -> v` (negative `m` adds arrows `v -> u`), cancelling
    /// against existing opposite arrows. Ignored between two frozen vertices.
    pub fn add_arrows(&mut self, u: VertexId, v: VertexId, m: i64) -> Result<()> {
        let (i, j) = (self.idx(u)?, self.idx(v)?);
        if i == j {
            return Err(Error::Malformed(format!("loop at vertex {u}")));
        }
        if self.vertices[i].frozen && self.vertices[j].frozen {
            return Ok(());
        }
        let cur = self.entry(i, j);
        self.set_entry(i, j, cur + m);
        Ok(())
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> Result<&Vertex> {
        Ok(&self.vertices[self.idx(v)?])
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.index.contains_key(&v)
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn is_frozen(&self, v: VertexId) -> Result<bool> {
        Ok(self.vertex(v)?.frozen)
    }

    pub fn mutable_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().filter(|v| !v.frozen).map(|v| v.id)
    }

    pub fn id_at(&self, pos: Position) -> Option<VertexId> {
        self.vertices.iter().find(|v| v.pos == Some(pos)).map(|v| v.id)
    }

    /// Signed arrow count `u -> v`; 0 for unknown vertices.
    pub fn b(&self, u: VertexId, v: VertexId) -> i64 {
        match (self.index.get(&u), self.index.get(&v)) {
            (Some(&i), Some(&j)) => self.entry(i, j),
            _ => 0,
        }
    }

    /// All arrows as `(source, target, multiplicity)` with positive
    /// multiplicity, ordered by source then target id.
    pub fn arrows(&self) -> Vec<(VertexId, VertexId, i64)> {
        let mut out = Vec::new();
        for (&u, &i) in &self.index {
            for (&v, &j) in &self.index {
                let m = self.entry(i, j);
                if m > 0 {
                    out.push((u, v, m));
                }
            }
        }
        out
    }

    /// In-neighbours of `v` with multiplicities.
    pub fn in_arrows(&self, v: VertexId) -> Result<Vec<(VertexId, i64)>> {
        let j = self.idx(v)?;
        Ok(self
            .index
            .iter()
            .filter_map(|(&u, &i)| {
                let m = self.entry(i, j);
                (m > 0).then_some((u, m))
            })
            .collect())
    }

    /// Out-neighbours of `v` with multiplicities.
    pub fn out_arrows(&self, v: VertexId) -> Result<Vec<(VertexId, i64)>> {
        let i = self.idx(v)?;
        Ok(self
            .index
            .iter()
            .filter_map(|(&u, &j)| {
                let m = self.entry(i, j);
                (m > 0).then_some((u, m))
            })
            .collect())
    }

    pub fn max_multiplicity(&self) -> i64 {
        self.b.iter().map(|m| m.abs()).max().unwrap_or(0)
    }

    fn check_mutable(&self, v: VertexId) -> Result<usize> {
        let k = self.idx(v)?;
        if self.vertices[k].frozen {
            return Err(Error::FrozenVertex(v));
        }
        Ok(k)
    }

    /// Quiver mutation at a mutable vertex.
    pub fn mutate(&self, v: VertexId) -> Result<Quiver> {
        let k = self.check_mutable(v)?;
        let n = self.vertices.len();
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                let m = if i == k || j == k {
                    -self.entry(i, j)
                } else {
                    let (bik, bkj) = (self.entry(i, k), self.entry(k, j));
                    // i -> k -> j adds bik*bkj arrows i -> j; the reverse path removes them.
                    let through = if bik > 0 && bkj > 0 {
                        bik * bkj
                    } else if bik < 0 && bkj < 0 {
                        -(bik * bkj)
                    } else {
                        0
                    };
                    self.entry(i, j) + through
                };
                out.b[i * n + j] = m;
            }
        }
        for i in 0..n {
            for j in 0..n {
                if out.vertices[i].frozen && out.vertices[j].frozen {
                    out.b[i * n + j] = 0;
                }
            }
        }
        Ok(out)
    }

    /// Cluster X-coordinate at `v`: exponent `b(u, v)` for every neighbour `u`.
    pub fn x_coordinate(&self, v: VertexId) -> Result<Monomial<VertexId>> {
        let k = self.check_mutable(v)?;
        Ok(self
            .index
            .iter()
            .map(|(&u, &i)| (u, self.entry(i, k)))
            .collect())
    }

    /// The same quiver with every arrow reversed.
    pub fn reversed(&self) -> Quiver {
        let mut out = self.clone();
        out.b.iter_mut().for_each(|m| *m = -*m);
        out
    }

    /// Arrows whose endpoints are both mutable.
    pub fn mutable_arrows(&self) -> Vec<(VertexId, VertexId, i64)> {
        self.arrows()
            .into_iter()
            .filter(|(u, v, _)| !self.vertices[self.index[u]].frozen && !self.vertices[self.index[v]].frozen)
            .collect()
    }

    pub fn to_json(&self) -> QuiverJson {
        QuiverJson {
            vertices: self.vertices.clone(),
            arrows: self.arrows(),
        }
    }

    pub fn from_json(json: &QuiverJson) -> Result<Self> {
        let mut q = Quiver::new(json.vertices.clone())?;
        let mut seen = std::collections::BTreeSet::new();
        for &(u, v, m) in &json.arrows {
            if m <= 0 {
                return Err(Error::Malformed(format!("arrow {u}->{v} has multiplicity {m}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(Error::Malformed(format!("vertex pair ({u},{v}) listed twice")));
            }
            let (fu, fv) = (q.is_frozen(u)?, q.is_frozen(v)?);
            if fu && fv {
                return Err(Error::Malformed(format!("arrow {u}->{v} joins two frozen vertices")));
            }
            q.add_arrows(u, v, m)?;
        }
        Ok(q)
    }

    /// Graphviz rendering. Frozen vertices are boxed; vertices with a grid
    /// position are pinned at `(col, -row)`; one edge per unit multiplicity.
    pub fn to_dot(&self, label: impl Fn(VertexId) -> Option<String>) -> String {
        let mut s = String::from("digraph quiver {\n  node [shape=ellipse];\n");
        for v in &self.vertices {
            let mut attrs = Vec::new();
            let text = match (label(v.id), v.pos) {
                (Some(l), Some((r, c))) => format!("{l}\\n({r},{c})"),
                (Some(l), None) => l,
                (None, Some((r, c))) => format!("{} ({r},{c})", v.id),
                (None, None) => v.id.to_string(),
            };
            attrs.push(format!("label=\"{text}\""));
            if v.frozen {
                attrs.push("shape=box".to_string());
            }
            if let Some((r, c)) = v.pos {
                attrs.push(format!("pos=\"{},{}!\"", 2 * c, -2 * r as i64));
            }
            let _ = writeln!(s, "  v{} [{}];", v.id, attrs.join(", "));
        }
        for (u, v, m) in self.arrows() {
            for _ in 0..m {
                let _ = writeln!(s, "  v{u} -> v{v};");
            }
        }
        s.push_str("}\n");
        s
    }
}
