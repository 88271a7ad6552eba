//! Seeds of the Grassmannian cluster algebra `C[Gr(k,n)]`.
//!
//! Vertices live on the rectangular grid of the initial seed: `(0,0)` plus
//! `(a,b)` for `a in [n-k]`, `b in [k]`. Mutable vertices are numbered
//! column-major, `id(i,j) = (j-1)(n-k-1) + i`; frozen ids follow.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{sort_sign, RationalMatrix, Scalar};
use crate::quiver::{Position, Quiver, Vertex, VertexId};
use crate::tableaux::{dominance_compare, Dominance, Tableau};

/// Vertex numbering for the `Gr(k,n)` grid.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Grid {
    pub k: usize,
    pub n: usize,
}

impl Grid {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k < 2 || k + 2 > n {
            return Err(Error::InvalidParameters {
                k,
                n,
                reason: "need 2 <= k <= n-2".into(),
            });
        }
        Ok(Self { k, n })
    }

    pub fn mutable_rows(&self) -> usize {
        self.n - self.k - 1
    }

    pub fn mutable_cols(&self) -> usize {
        self.k - 1
    }

    pub fn mutable_count(&self) -> usize {
        self.mutable_rows() * self.mutable_cols()
    }

    pub fn is_vertex(&self, (a, b): Position) -> bool {
        (a, b) == (0, 0) || ((1..=self.n - self.k).contains(&a) && (1..=self.k).contains(&b))
    }

    pub fn is_frozen(&self, (a, b): Position) -> bool {
        (a, b) == (0, 0) || b == self.k || a == self.n - self.k
    }

    pub fn id(&self, pos: Position) -> Option<VertexId> {
        if !self.is_vertex(pos) {
            return None;
        }
        let (a, b) = pos;
        let rows = self.mutable_rows();
        let m = self.mutable_count();
        let id = if pos == (0, 0) {
            0
        } else if !self.is_frozen(pos) {
            (b - 1) * rows + a
        } else if b == self.k && a < self.n - self.k {
            m + a
        } else {
            m + rows + b
        };
        Some(VertexId(id as u32))
    }

    pub fn position(&self, id: VertexId) -> Option<Position> {
        let id = id.0 as usize;
        let rows = self.mutable_rows();
        let m = self.mutable_count();
        match id {
            0 => Some((0, 0)),
            i if i <= m => Some(((i - 1) % rows + 1, (i - 1) / rows + 1)),
            i if i <= m + rows => Some((i - m, self.k)),
            i if i <= m + rows + self.k => Some((self.n - self.k, i - m - rows)),
            _ => None,
        }
    }

    pub fn positions(&self) -> Vec<Position> {
        let mut out = vec![(0, 0)];
        for b in 1..=self.k {
            for a in 1..=self.n - self.k {
                out.push((a, b));
            }
        }
        out.sort_by_key(|&p| self.id(p).map(|v| v.0));
        out
    }
}

/// Label of the initial seed at `(a,b)`: the column
/// `{1..k-b} ∪ {k-b+a+1..k+a}`; `(0,0)` carries `{1..k}`.
pub fn initial_label(a: usize, b: usize, k: usize, n: usize) -> Result<Tableau> {
    let grid = Grid::new(k, n)?;
    if !grid.is_vertex((a, b)) {
        return Err(Error::PositionOutOfRange(a, b));
    }
    let entries: Vec<u32> = if (a, b) == (0, 0) {
        (1..=k as u32).collect()
    } else {
        (1..=k - b).chain(k - b + a + 1..=k + a).map(|e| e as u32).collect()
    };
    Tableau::column(&entries)
}

/// One mutation step: `new * old = Π in + Π out`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExchangeRecord {
    pub vertex: VertexId,
    pub old_label: Tableau,
    pub new_label: Tableau,
    pub in_labels: Vec<Tableau>,
    pub out_labels: Vec<Tableau>,
}

impl ExchangeRecord {
    /// Every label in the record, old and new first.
    pub fn labels(&self) -> impl Iterator<Item = &Tableau> {
        [&self.old_label, &self.new_label]
            .into_iter()
            .chain(&self.in_labels)
            .chain(&self.out_labels)
    }

    pub fn is_single_column(&self) -> bool {
        self.labels().all(Tableau::is_single_column)
    }

    /// Evaluates `(new*old, Π in + Π out)` with a caller-supplied value for
    /// each single-column label.
    pub fn evaluate<S: Scalar>(&self, mut value: impl FnMut(&[u32]) -> Result<S>) -> Result<(S, S)> {
        let mut eval = |t: &Tableau| -> Result<S> {
            let col = t.single_column().ok_or(Error::MultiColumn)?;
            value(&col)
        };
        let lhs = eval(&self.new_label)? * eval(&self.old_label)?;
        let mut prod_in = S::one();
        for t in &self.in_labels {
            prod_in = prod_in * eval(t)?;
        }
        let mut prod_out = S::one();
        for t in &self.out_labels {
            prod_out = prod_out * eval(t)?;
        }
        Ok((lhs, prod_in + prod_out))
    }

    /// Column index sets (1-based) of every single-column label.
    pub fn plucker_indices(&self) -> Result<Vec<Vec<u32>>> {
        self.labels()
            .map(|t| t.single_column().ok_or(Error::MultiColumn))
            .collect()
    }
}

/// A quiver with a tableau on every vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Seed {
    k: usize,
    n: usize,
    quiver: Quiver,
    labels: BTreeMap<VertexId, Tableau>,
}

/// Wire format: `{"k","n","vertices":[{"id","pos","frozen","label"}],"arrows":[[u,v,m]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub k: usize,
    pub n: usize,
    pub vertices: Vec<SeedVertexJson>,
    pub arrows: Vec<(VertexId, VertexId, i64)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedVertexJson {
    pub id: VertexId,
    pub pos: Option<Position>,
    pub frozen: bool,
    pub label: Tableau,
}

/// The rectangular initial seed of `C[Gr(k,n)]`.
pub fn initial_seed(k: usize, n: usize) -> Result<Seed> {
    let grid = Grid::new(k, n)?;
    let positions = grid.positions();
    let vertices = positions
        .iter()
        .map(|&p| Vertex {
            id: grid.id(p).expect("grid position"),
            pos: Some(p),
            frozen: grid.is_frozen(p),
        })
        .collect();
    let mut quiver = Quiver::new(vertices)?;
    let id = |p: Position| grid.id(p).expect("grid position");
    let nk = n - k;
    quiver.add_arrows(id((0, 0)), id((1, 1)), 1)?;
    for b in 1..=k {
        for a in 2..=nk {
            quiver.add_arrows(id((a - 1, b)), id((a, b)), 1)?;
        }
    }
    for a in 1..=nk {
        for b in 2..=k {
            quiver.add_arrows(id((a, b - 1)), id((a, b)), 1)?;
        }
    }
    for a in 1..nk {
        for b in 1..k {
            quiver.add_arrows(id((a + 1, b + 1)), id((a, b)), 1)?;
        }
    }
    let labels = positions
        .iter()
        .map(|&(a, b)| Ok((id((a, b)), initial_label(a, b, k, n)?)))
        .collect::<Result<_>>()?;
    Ok(Seed { k, n, quiver, labels })
}

impl Seed {
    pub fn new(k: usize, n: usize, quiver: Quiver, labels: BTreeMap<VertexId, Tableau>) -> Result<Self> {
        for v in quiver.vertices() {
            let t = labels
                .get(&v.id)
                .ok_or_else(|| Error::Malformed(format!("vertex {} has no label", v.id)))?;
            if t.k() != k || t.max_entry() as usize > n {
                return Err(Error::Malformed(format!("label {t} at vertex {} is not in SSYT({k},[{n}])", v.id)));
            }
        }
        if labels.len() != quiver.len() {
            return Err(Error::Malformed("labels for unknown vertices".into()));
        }
        Ok(Self { k, n, quiver, labels })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn labels(&self) -> &BTreeMap<VertexId, Tableau> {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> Result<&Tableau> {
        self.labels.get(&v).ok_or(Error::UnknownVertex(v))
    }

    pub fn id_at(&self, pos: Position) -> Result<VertexId> {
        self.quiver
            .id_at(pos)
            .ok_or(Error::PositionOutOfRange(pos.0, pos.1))
    }

    pub fn label_at(&self, pos: Position) -> Result<&Tableau> {
        self.label(self.id_at(pos)?)
    }

    /// Replaces one label, keeping the quiver.
    pub fn with_label(&self, v: VertexId, label: Tableau) -> Result<Seed> {
        let mut labels = self.labels.clone();
        labels.insert(v, label);
        Seed::new(self.k, self.n, self.quiver.clone(), labels)
    }

    /// Seed mutation. The new label is `max(∪ in, ∪ out) / old` in the
    /// dominance order.
    pub fn mutate(&self, v: VertexId) -> Result<(Seed, ExchangeRecord)> {
        let quiver = self.quiver.mutate(v)?;
        let expand = |arrows: Vec<(VertexId, i64)>| -> Vec<Tableau> {
            arrows
                .into_iter()
                .flat_map(|(u, m)| std::iter::repeat_n(self.labels[&u].clone(), m as usize))
                .collect()
        };
        let in_labels = expand(self.quiver.in_arrows(v)?);
        let out_labels = expand(self.quiver.out_arrows(v)?);
        let u_in = Tableau::union_all(self.k, &in_labels)?;
        let u_out = Tableau::union_all(self.k, &out_labels)?;
        let larger = match dominance_compare(&u_in, &u_out) {
            Ok(Dominance::LessEq) | Ok(Dominance::Equal) => u_out,
            Ok(Dominance::GreaterEq) => u_in,
            Ok(Dominance::Incomparable) | Err(Error::ShapeMismatch) => return Err(Error::Incomparable(v)),
            Err(e) => return Err(e),
        };
        let old_label = self.labels[&v].clone();
        let new_label = larger.quotient(&old_label)?;
        let mut labels = self.labels.clone();
        labels.insert(v, new_label.clone());
        let record = ExchangeRecord {
            vertex: v,
            old_label,
            new_label,
            in_labels,
            out_labels,
        };
        Ok((
            Seed {
                k: self.k,
                n: self.n,
                quiver,
                labels,
            },
            record,
        ))
    }

    /// Left-to-right mutation along `sequence`, returning every exchange.
    pub fn apply_sequence(&self, sequence: &[VertexId]) -> Result<(Seed, Vec<ExchangeRecord>)> {
        let mut seed = self.clone();
        let mut records = Vec::with_capacity(sequence.len());
        for (step, &v) in sequence.iter().enumerate() {
            let (next, rec) = seed.mutate(v).map_err(|e| Error::Step {
                step,
                vertex: v,
                source: Box::new(e),
            })?;
            seed = next;
            records.push(rec);
        }
        Ok((seed, records))
    }

    pub fn all_single_column(&self) -> bool {
        self.labels.values().all(Tableau::is_single_column)
    }

    pub fn to_json(&self) -> SeedJson {
        SeedJson {
            k: self.k,
            n: self.n,
            vertices: self
                .quiver
                .vertices()
                .iter()
                .map(|v| SeedVertexJson {
                    id: v.id,
                    pos: v.pos,
                    frozen: v.frozen,
                    label: self.labels[&v.id].clone(),
                })
                .collect(),
            arrows: self.quiver.arrows(),
        }
    }

    pub fn from_json(json: &SeedJson) -> Result<Seed> {
        let quiver = Quiver::from_json(&crate::quiver::QuiverJson {
            vertices: json
                .vertices
                .iter()
                .map(|v| Vertex {
                    id: v.id,
                    pos: v.pos,
                    frozen: v.frozen,
                })
                .collect(),
            arrows: json.arrows.clone(),
        })?;
        let labels = json.vertices.iter().map(|v| (v.id, v.label.clone())).collect();
        Seed::new(json.k, json.n, quiver, labels)
    }

    pub fn to_dot(&self) -> String {
        self.quiver.to_dot(|v| self.labels.get(&v).map(ToString::to_string))
    }
}

/// Pluecker coordinate: the minor of `m` on the given 1-based columns.
/// Repeated indices give 0; an unsorted tuple picks up the sign of its
/// sorting permutation.
pub fn plucker_eval<S: Scalar>(m: &crate::linalg::Matrix<S>, idx: &[u32]) -> Result<S> {
    if idx.len() != m.rows() {
        return Err(Error::Arity {
            expected: m.rows(),
            got: idx.len(),
        });
    }
    if let Some(&bad) = idx.iter().find(|&&i| i == 0 || i as usize > m.cols()) {
        return Err(Error::Malformed(format!("column index {bad} outside [1,{}]", m.cols())));
    }
    let Some(sign) = sort_sign(idx) else {
        return Ok(S::zero());
    };
    let mut sorted: Vec<usize> = idx.iter().map(|&i| i as usize - 1).collect();
    sorted.sort_unstable();
    let det = m.minor(&sorted);
    Ok(if sign < 0 { -det } else { det })
}

/// Exact check of the exchange relation of `rec` at the point `m`.
pub fn verify_exchange(rec: &ExchangeRecord, m: &RationalMatrix) -> Result<bool> {
    let (lhs, rhs) = rec.evaluate(|idx| plucker_eval(m, idx))?;
    Ok(lhs == rhs)
}

/// Random `k x n` integer matrix with entries in `[-9, 9]`, resampled until
/// every listed Pluecker coordinate is nonzero.
pub fn random_trial_matrix<R: Rng + ?Sized>(
    rng: &mut R,
    k: usize,
    n: usize,
    required: &[Vec<u32>],
    max_attempts: usize,
) -> Result<RationalMatrix> {
    for _ in 0..max_attempts {
        let m = RationalMatrix::from_fn(k, n, |_, _| BigRational::from_i64(rng.random_range(-9..=9)));
        let mut ok = true;
        for idx in required {
            if plucker_eval(&m, idx)?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(m);
        }
    }
    Err(Error::SamplingFailed(max_attempts))
}

/// Checks every record on `trials` random integer matrices shared across
/// records. Returns `(record index, trial)` for each failing relation.
pub fn check_exchanges<R: Rng + ?Sized>(
    records: &[ExchangeRecord],
    k: usize,
    n: usize,
    trials: usize,
    rng: &mut R,
) -> Result<Vec<(usize, usize)>> {
    let mut required = std::collections::BTreeSet::new();
    for rec in records {
        required.extend(rec.plucker_indices()?);
    }
    let required: Vec<_> = required.into_iter().collect();
    let mut failures = Vec::new();
    for trial in 0..trials {
        let m = random_trial_matrix(rng, k, n, &required, 1000)?;
        for (i, rec) in records.iter().enumerate() {
            if !verify_exchange(rec, &m)? {
                failures.push((i, trial));
            }
        }
    }
    Ok(failures)
}

/// True when the matrix has a nonzero maximal minor.
pub fn is_full_rank(m: &RationalMatrix) -> bool {
    let k = m.rows();
    let n = m.cols();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if !m.minor(&idx).is_zero() {
            return true;
        }
        // Next k-subset in lexicographic order.
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return false;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Identity-pattern point: columns `1..k` form the identity matrix.
pub fn identity_pattern(k: usize, n: usize) -> RationalMatrix {
    RationalMatrix::from_fn(k, n, |r, c| {
        if r == c {
            BigRational::one()
        } else {
            BigRational::zero()
        }
    })
}
