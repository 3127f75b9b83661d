//! Integer chord indices, parity projections and the Carter surface genus.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::diagrams::{ChordDiagram, ChordId, ChordKind, FlatDiagram, GaussDiagram, Role};
use crate::error::{Error, Result};
use crate::poly::LaurentPoly;
use crate::smoothing::smooth1;

/// Index of `c`: after the 1-smoothing at `c`, the signed count of mixed
/// chords whose over endpoint lies on `K1` minus the signed count of those
/// whose over endpoint lies on `K2`.
pub fn ind(d: &GaussDiagram, c: ChordId) -> Result<i64> {
    let link = smooth1(d, c)?.link;
    let locs = link.locate();
    Ok(link
        .chord_kinds()
        .into_iter()
        .filter(|(_, k)| *k == ChordKind::Mixed)
        .map(|(e, _)| {
            let w = link.sign(e).expect("signed").value();
            if locs[&e].over.comp == 0 {
                w
            } else {
                -w
            }
        })
        .sum())
}

/// Indices of every chord.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexReport {
    pub indices: BTreeMap<u32, i64>,
    pub sum: i64,
    pub abs_sum: i64,
}

pub fn index_report(d: &GaussDiagram) -> IndexReport {
    let indices: BTreeMap<u32, i64> =
        d.chords().into_iter().map(|c| (c.0, ind(d, c).expect("chord exists"))).collect();
    IndexReport {
        sum: indices.values().sum(),
        abs_sum: indices.values().map(|v| v.abs()).sum(),
        indices,
    }
}

fn all_indices(d: &GaussDiagram) -> BTreeMap<ChordId, i64> {
    d.chords().into_iter().map(|c| (c, ind(d, c).expect("chord exists"))).collect()
}

/// Index of a flat crossing: the index of `c` in the positive lift.
pub fn ind_flat(f: &FlatDiagram, c: ChordId) -> Result<i64> {
    ind(&f.positive_lift(), c)
}

/// Sign of the index of a flat crossing.
pub fn flat_sign(f: &FlatDiagram, c: ChordId) -> Result<i64> {
    Ok(ind_flat(f, c)?.signum())
}

pub fn flat_indices(f: &FlatDiagram) -> BTreeMap<ChordId, i64> {
    all_indices(&f.positive_lift())
}

/// `P(t) = Σ_c t^Ind(c) - t^-Ind(c)` over the flat crossings.
pub fn index_polynomial(f: &FlatDiagram) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for i in flat_indices(f).into_values() {
        p.add_term(1, i, 0);
        p.add_term(-1, -i, 0);
    }
    p
}

/// Removes every chord whose index is not a multiple of `n`; for `n = 0`
/// keeps exactly the chords of index zero. Indices are those of `d`.
pub fn project(d: &GaussDiagram, n: u64) -> GaussDiagram {
    let drop: Vec<ChordId> = all_indices(d)
        .into_iter()
        .filter(|(_, i)| if n == 0 { *i != 0 } else { i.unsigned_abs() % n != 0 })
        .map(|(c, _)| c)
        .collect();
    let slots = d.slots().iter().filter(|e| !drop.contains(&e.chord)).copied().collect();
    let signs = d.signs().iter().filter(|(c, _)| !drop.contains(c)).map(|(c, s)| (*c, *s)).collect();
    GaussDiagram::new(slots, signs).expect("subdiagram of a valid diagram")
}

/// Index of an index-zero chord inside the projection to index-zero chords.
pub fn ind0(d: &GaussDiagram, c: ChordId) -> Result<i64> {
    let i = ind(d, c)?;
    if i != 0 {
        return Err(Error::NonzeroIndex { chord: c, index: i });
    }
    ind(&project(d, 0), c)
}

/// Genus of the closed surface obtained by thickening the flat diagram's
/// 4-valent graph and capping its boundary circles.
pub fn carter_genus(f: &FlatDiagram) -> usize {
    let (n, m) = vertex_and_boundary_counts(f);
    if n == 0 {
        return 0;
    }
    (2 + n - m) / 2
}

/// Number of crossings and number of boundary circles of the thickened graph.
/// Half-edges: `2i` leaves slot `i`, `2i + 1` enters slot `i`. At each
/// crossing the counterclockwise order is tail-out, head-out, tail-in,
/// head-in.
pub fn vertex_and_boundary_counts(f: &FlatDiagram) -> (usize, usize) {
    let slots = f.slots();
    let len = slots.len();
    if len == 0 {
        return (0, 1);
    }
    let out = |i: usize| 2 * i;
    let inn = |i: usize| 2 * i + 1;
    // edge partner: out(i) <-> in(i+1)
    let alpha = |h: usize| {
        let i = h / 2;
        if h % 2 == 0 {
            inn((i + 1) % len)
        } else {
            out((i + len - 1) % len)
        }
    };
    let locs = f.locate();
    let mut sigma = vec![0; 2 * len];
    for l in locs.values() {
        let (t, h) = (l.get(Role::Over).idx, l.get(Role::Under).idx);
        let ring = [out(t), out(h), inn(t), inn(h)];
        for k in 0..4 {
            sigma[ring[k]] = ring[(k + 1) % 4];
        }
    }
    let mut seen = vec![false; 2 * len];
    let mut faces = 0;
    for start in 0..2 * len {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut h = start;
        while !seen[h] {
            seen[h] = true;
            h = sigma[alpha(h)];
        }
    }
    (locs.len(), faces)
}
