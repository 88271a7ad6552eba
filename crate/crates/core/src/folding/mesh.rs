//! Shape checks on folded quivers and exchange relations.

use std::collections::BTreeMap;

use crate::quiver::{Position, Quiver, VertexId};
use crate::seeds::ExchangeRecord;
use crate::tableaux::Tableau;

fn mutable_positions(q: &Quiver) -> BTreeMap<Position, VertexId> {
    q.vertices()
        .iter()
        .filter(|v| !v.frozen)
        .filter_map(|v| v.pos.map(|p| (p, v.id)))
        .collect()
}

/// Mutable arrows join grid neighbours with multiplicity one, every unit cell
/// is an oriented 4-cycle, and neighbouring cells have opposite orientations.
pub fn is_square_mesh(q: &Quiver) -> bool {
    let grid = mutable_positions(q);
    let Some(rows) = grid.keys().map(|p| p.0).max() else {
        return true;
    };
    let cols = grid.keys().map(|p| p.1).max().unwrap_or(0);
    let pos_of: BTreeMap<VertexId, Position> = grid.iter().map(|(&p, &v)| (v, p)).collect();
    for (u, v, m) in q.mutable_arrows() {
        let (Some(&pu), Some(&pv)) = (pos_of.get(&u), pos_of.get(&v)) else {
            return false;
        };
        if m != 1 || pu.0.abs_diff(pv.0) + pu.1.abs_diff(pv.1) != 1 {
            return false;
        }
    }
    let mut reference = None;
    for i in 1..rows {
        for j in 1..cols {
            let cell = [(i, j), (i + 1, j), (i + 1, j + 1), (i, j + 1)];
            let Some(ids) = cell.iter().map(|p| grid.get(p).copied()).collect::<Option<Vec<_>>>() else {
                return false;
            };
            let around = |step: usize| (0..4).all(|t| q.b(ids[t], ids[(t + step) % 4]) == 1);
            let orientation = match (around(1), around(3)) {
                (true, false) => true,
                (false, true) => false,
                _ => return false,
            };
            let normalized = orientation ^ ((i + j) % 2 == 0);
            match reference {
                None => reference = Some(normalized),
                Some(r) if r != normalized => return false,
                _ => {}
            }
        }
    }
    true
}

/// `(i, j) ↦ (i, cols + 1 - j)` preserves the mutable subquiver.
pub fn has_column_reflection_symmetry(q: &Quiver) -> bool {
    let grid = mutable_positions(q);
    let cols = grid.keys().map(|p| p.1).max().unwrap_or(0);
    let mirror = |p: Position| grid.get(&(p.0, cols + 1 - p.1)).copied();
    grid.iter().all(|(&pu, &u)| {
        grid.iter().all(|(&pv, &v)| match (mirror(pu), mirror(pv)) {
            (Some(mu), Some(mv)) => q.b(u, v) == q.b(mu, mv),
            _ => false,
        })
    })
}

fn interval(start: i64, end: i64, n: i64) -> impl Iterator<Item = u32> {
    (start..=end).map(move |x| ((x - 1).rem_euclid(n) + 1) as u32)
}

fn two_interval_set(a: i64, b: i64, c: i64, d: i64, n: i64, k: usize) -> Option<Vec<u32>> {
    let mut v: Vec<u32> = interval(a, b, n).chain(interval(c, d, n)).collect();
    v.sort_unstable();
    v.dedup();
    (v.len() == k).then_some(v)
}

fn sorted_pair(mut p: [Vec<u32>; 2]) -> [Vec<u32>; 2] {
    p.sort();
    p
}

/// Whether the record is the three-term relation
/// `P_{[a,b]∪[c,d]} P_{[a+1,b+1]∪[c+1,d+1]}
///   = P_{[a+1,b+1]∪[c,d]} P_{[a,b]∪[c+1,d+1]} + P_{[a,b+1]∪[c+1,d]} P_{[a+1,b]∪[c,d+1]}`
/// for some cyclic intervals.
pub fn is_three_term_plucker(rec: &ExchangeRecord, n: usize) -> bool {
    let Ok(labels) = rec.plucker_indices() else {
        return false;
    };
    if rec.in_labels.len() != 2 || rec.out_labels.len() != 2 {
        return false;
    }
    let k = labels[0].len();
    let col = |t: &Tableau| t.single_column().expect("checked above");
    let exchanged = sorted_pair([col(&rec.old_label), col(&rec.new_label)]);
    let ins = sorted_pair([col(&rec.in_labels[0]), col(&rec.in_labels[1])]);
    let outs = sorted_pair([col(&rec.out_labels[0]), col(&rec.out_labels[1])]);
    let nn = n as i64;
    for a in 1..=nn {
        for c in 1..=nn {
            for len1 in 1..k as i64 {
                let b = a + len1 - 1;
                let d = c + (k as i64 - len1) - 1;
                let sets = [
                    two_interval_set(a, b, c, d, nn, k),
                    two_interval_set(a + 1, b + 1, c + 1, d + 1, nn, k),
                    two_interval_set(a + 1, b + 1, c, d, nn, k),
                    two_interval_set(a, b, c + 1, d + 1, nn, k),
                    two_interval_set(a, b + 1, c + 1, d, nn, k),
                    two_interval_set(a + 1, b, c, d + 1, nn, k),
                ];
                let Some([x, y, p, q, r, s]) = sets.into_iter().collect::<Option<Vec<_>>>().map(|v| {
                    <[Vec<u32>; 6]>::try_from(v).expect("six sets")
                }) else {
                    continue;
                };
                if sorted_pair([x, y]) != exchanged {
                    continue;
                }
                let first = sorted_pair([p, q]);
                let second = sorted_pair([r, s]);
                if (first == ins && second == outs) || (first == outs && second == ins) {
                    return true;
                }
            }
        }
    }
    false
}
