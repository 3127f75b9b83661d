//! The two resolutions of a crossing on Gauss diagrams.
//!
//! For a chord `c` the circle splits into two arcs. The over arc runs from
//! the over (tail) endpoint of `c` to its under (head) endpoint; the under
//! arc runs back. Smoothing against the orientation (the 0-smoothing) keeps
//! one circle and reverses one arc; smoothing along it (the 1-smoothing)
//! turns the two arcs into two circles.

use std::collections::{BTreeMap, BTreeSet};

use crate::diagrams::{
    ChordDiagram, ChordId, Endpoint, FlatDiagram, FlatLinkDiagram, GaussDiagram, Role,
    VirtualLinkDiagram,
};
use crate::error::{Error, Result};

/// The two arcs of a single-circle diagram cut open at both endpoints of `c`,
/// each in its original direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arcs {
    /// From the over (tail) endpoint to the under (head) endpoint.
    pub over_arc: Vec<Endpoint>,
    /// From the under (head) endpoint back to the over (tail) endpoint.
    pub under_arc: Vec<Endpoint>,
}

pub fn arcs(slots: &[Endpoint], c: ChordId) -> Result<Arcs> {
    let pos = |role| slots.iter().position(|e| *e == Endpoint { chord: c, role });
    let (o, u) = match (pos(Role::Over), pos(Role::Under)) {
        (Some(o), Some(u)) => (o, u),
        _ => return Err(Error::UnknownChord(c)),
    };
    let n = slots.len();
    let run = |from: usize, to: usize| {
        let mut out = Vec::new();
        let mut i = (from + 1) % n;
        while i != to {
            out.push(slots[i]);
            i = (i + 1) % n;
        }
        out
    };
    Ok(Arcs { over_arc: run(o, u), under_arc: run(u, o) })
}

fn chords_of(seq: &[Endpoint]) -> BTreeMap<ChordId, usize> {
    let mut m = BTreeMap::new();
    for e in seq {
        *m.entry(e.chord).or_insert(0) += 1;
    }
    m
}

/// Chords with exactly one endpoint in `seq`.
fn half_in(seq: &[Endpoint]) -> BTreeSet<ChordId> {
    chords_of(seq).into_iter().filter(|(_, n)| *n == 1).map(|(c, _)| c).collect()
}

/// Result of a 1-smoothing of a virtual knot diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OneSmoothing {
    /// Component 0 is `K1`, the over arc; component 1 is `K2`, the under arc.
    pub link: VirtualLinkDiagram,
}

/// 1-smoothing at `c`. `K1` is the over arc whatever the sign of `c`.
pub fn smooth1(d: &GaussDiagram, c: ChordId) -> Result<OneSmoothing> {
    if d.sign(c).is_none() {
        return Err(Error::UnknownChord(c));
    }
    let Arcs { over_arc, under_arc } = arcs(d.slots(), c)?;
    let mut signs = d.signs().clone();
    signs.remove(&c);
    Ok(OneSmoothing { link: VirtualLinkDiagram::new(over_arc, under_arc, signs)? })
}

/// 0-smoothing at `c`: the under arc in its own direction followed by the
/// over arc reversed. Chords with exactly one endpoint on the over arc change
/// sign; roles are kept. The result is an unoriented knot; the returned
/// diagram carries the orientation starting along the under arc.
pub fn smooth0(d: &GaussDiagram, c: ChordId) -> Result<GaussDiagram> {
    smooth0_reversing(d, c, Role::Over)
}

/// 0-smoothing that reverses the over arc (`Role::Over`) or the under arc
/// (`Role::Under`). The two results are reverses of each other.
pub fn smooth0_reversing(d: &GaussDiagram, c: ChordId, reversed: Role) -> Result<GaussDiagram> {
    if d.sign(c).is_none() {
        return Err(Error::UnknownChord(c));
    }
    let Arcs { over_arc, under_arc } = arcs(d.slots(), c)?;
    let (keep, mut rev) = match reversed {
        Role::Over => (under_arc, over_arc),
        Role::Under => (over_arc, under_arc),
    };
    let flipped = half_in(&rev);
    rev.reverse();
    let mut slots = keep;
    slots.extend(rev);
    let signs = d
        .signs()
        .iter()
        .filter(|(x, _)| **x != c)
        .map(|(x, s)| (*x, if flipped.contains(x) { s.flip() } else { *s }))
        .collect();
    GaussDiagram::new(slots, signs)
}

/// The sign of a flat crossing used to orient its 0-smoothing.
fn flat_sign_of(f: &FlatDiagram, c: ChordId) -> Result<i64> {
    Ok(crate::indices::ind_flat(f, c)?.signum())
}

/// Flat 0-smoothing at `c`, oriented. For a chord of nonnegative flat sign
/// the over (tail-to-head) arc is reversed and the result runs along the
/// under arc; for a negative chord the roles of the arcs swap. Chords with
/// exactly one endpoint on the reversed arc have tail and head exchanged.
pub fn smooth0_flat(f: &FlatDiagram, c: ChordId) -> Result<FlatDiagram> {
    let reversed = if flat_sign_of(f, c)? >= 0 { Role::Over } else { Role::Under };
    smooth0_flat_reversing(f, c, reversed)
}

/// Flat 0-smoothing reversing the chosen arc.
pub fn smooth0_flat_reversing(f: &FlatDiagram, c: ChordId, reversed: Role) -> Result<FlatDiagram> {
    let Arcs { over_arc, under_arc } = arcs(f.slots(), c)?;
    let (keep, mut rev) = match reversed {
        Role::Over => (under_arc, over_arc),
        Role::Under => (over_arc, under_arc),
    };
    let swapped = half_in(&rev);
    rev.reverse();
    let mut slots = keep;
    slots.extend(rev);
    for e in slots.iter_mut().filter(|e| swapped.contains(&e.chord)) {
        e.role = e.role.flip();
    }
    FlatDiagram::new(slots, true)
}

/// Flat 1-smoothing at `c`: the over arc and the under arc become the two
/// circles of an unordered oriented flat link.
pub fn smooth1_flat(f: &FlatDiagram, c: ChordId) -> Result<FlatLinkDiagram> {
    let Arcs { over_arc, under_arc } = arcs(f.slots(), c)?;
    FlatLinkDiagram::new(over_arc, under_arc, false)
}
