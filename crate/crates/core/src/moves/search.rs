//! Canonical codes, bounded simplification, fingerprints and equivalence.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use super::{
    apply_move, crossing_gap_pairs, deletions, find_move, r2_insertions, r3_moves,
    MoveApplication,
};
use crate::diagrams::{
    ChordDiagram, ChordId, DiagramKind, Endpoint, FlatDiagram, FlatLinkDiagram, GaussDiagram, Role,
    Sign,
};
use crate::poly::LaurentPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    Oriented,
    Unoriented,
}

impl Orientation {
    pub fn of<D: ChordDiagram>(d: &D) -> Self {
        if d.is_oriented() {
            Orientation::Oriented
        } else {
            Orientation::Unoriented
        }
    }
}

/// Token sequence of a normalized code. Tokens order by role (over first),
/// then label, then sign (positive first); the circle separator sorts last.
pub type CanonKey = Vec<u32>;

const SEP: u32 = u32::MAX;
const ROLE_BIT: u32 = 1 << 31;
const LABEL_MASK: u32 = (1 << 30) - 1;

fn token(role: Role, label: u32, sign: Option<Sign>) -> u32 {
    let r = if role == Role::Under { ROLE_BIT } else { 0 };
    let s = (sign == Some(Sign::Neg)) as u32;
    r | label << 1 | s
}

/// Result of canonicalization: the minimal key, the chord labels it uses, and
/// whether the minimum was reached after reversing or swapping circles.
#[derive(Clone, Debug)]
pub struct CanonForm {
    pub key: CanonKey,
    pub labels: BTreeMap<ChordId, u32>,
    pub reversed: bool,
    pub swapped: bool,
}

struct Encoder {
    labels: Vec<u32>,
    buf: Vec<u32>,
}

impl Encoder {
    /// Encodes the circles starting at the given rotations. Returns false as
    /// soon as the encoding exceeds `best`.
    fn encode(
        &mut self,
        comps: &[&[Endpoint]],
        rots: &[usize],
        signs: &BTreeMap<ChordId, Sign>,
        signed: bool,
        best: Option<&[u32]>,
    ) -> bool {
        self.labels.iter_mut().for_each(|l| *l = 0);
        self.buf.clear();
        let mut next = 0;
        let mut tight = best.is_some();
        for (k, seq) in comps.iter().enumerate() {
            let mut push = |tok: u32, buf: &mut Vec<u32>| -> bool {
                if tight {
                    let b = best.unwrap()[buf.len()];
                    if tok > b {
                        return false;
                    }
                    if tok < b {
                        tight = false;
                    }
                }
                buf.push(tok);
                true
            };
            if k > 0 && !push(SEP, &mut self.buf) {
                return false;
            }
            let n = seq.len();
            for i in 0..n {
                let e = seq[(i + rots[k]) % n];
                let slot = &mut self.labels[e.chord.0 as usize];
                if *slot == 0 {
                    next += 1;
                    *slot = next;
                }
                let sign = if signed { signs.get(&e.chord).copied() } else { None };
                if !push(token(e.role, *slot, sign), &mut self.buf) {
                    return false;
                }
            }
        }
        !tight || best.is_none() || self.buf.len() < best.unwrap().len()
    }
}

pub fn canonical_form<D: ChordDiagram>(d: &D, mode: Orientation) -> CanonForm {
    let orig = d.components();
    let mut enc = Encoder { labels: vec![0; d.max_chord() as usize + 1], buf: Vec::new() };
    let mut best: Option<(CanonKey, bool, bool, Vec<usize>)> = None;
    let reversals: &[bool] = match mode {
        Orientation::Oriented => &[false],
        Orientation::Unoriented => &[false, true],
    };
    let swaps: &[bool] = if d.unordered() && orig.len() == 2 { &[false, true] } else { &[false] };
    for &rev in reversals {
        let owned: Vec<Vec<Endpoint>> = orig
            .iter()
            .map(|s| if rev { s.iter().rev().copied().collect() } else { s.clone() })
            .collect();
        for &swap in swaps {
            let mut comps: Vec<&[Endpoint]> = owned.iter().map(Vec::as_slice).collect();
            if swap {
                comps.swap(0, 1);
            }
            let mut rots = vec![0; comps.len()];
            loop {
                let better = enc.encode(
                    &comps,
                    &rots,
                    d.signs(),
                    D::SIGNED,
                    best.as_ref().map(|b| b.0.as_slice()),
                );
                if better && best.as_ref().map_or(true, |b| enc.buf < b.0) {
                    best = Some((enc.buf.clone(), rev, swap, rots.clone()));
                }
                // advance the rotation odometer
                let mut k = 0;
                loop {
                    if k == comps.len() {
                        break;
                    }
                    rots[k] += 1;
                    if rots[k] < comps[k].len() {
                        break;
                    }
                    rots[k] = 0;
                    k += 1;
                }
                if k == comps.len() {
                    break;
                }
            }
        }
    }
    let (key, reversed, swapped, rots) = best.expect("at least one candidate");
    // recover the labels of the winning candidate
    let owned: Vec<Vec<Endpoint>> = orig
        .iter()
        .map(|s| if reversed { s.iter().rev().copied().collect() } else { s.clone() })
        .collect();
    let mut comps: Vec<&[Endpoint]> = owned.iter().map(Vec::as_slice).collect();
    if swapped {
        comps.swap(0, 1);
    }
    let mut labels = BTreeMap::new();
    for (k, seq) in comps.iter().enumerate() {
        for i in 0..seq.len() {
            let c = seq[(i + rots[k]) % seq.len()].chord;
            let next = labels.len() as u32 + 1;
            labels.entry(c).or_insert(next);
        }
    }
    CanonForm { key, labels, reversed, swapped }
}

pub(crate) fn canonical_key<D: ChordDiagram>(d: &D, mode: Orientation) -> CanonKey {
    canonical_form(d, mode).key
}

pub(crate) fn decode_key(key: &[u32], signed: bool) -> String {
    let mut s = String::new();
    for &tok in key {
        if tok == SEP {
            s.push('|');
            continue;
        }
        s.push(if tok & ROLE_BIT != 0 { 'U' } else { 'O' });
        s.push_str(&((tok >> 1) & LABEL_MASK).to_string());
        if signed {
            s.push(if tok & 1 == 1 { '-' } else { '+' });
        }
    }
    s
}

/// The least normalized code over basepoint rotations; in unoriented mode
/// also over reversal; for unordered links also over swapping the circles.
pub fn canonical_code<D: ChordDiagram>(d: &D, mode: Orientation) -> String {
    decode_key(&canonical_key(d, mode), D::SIGNED)
}

/// Search limits. `max_nodes` bounds the number of expanded states in each
/// search phase; `max_extra` bounds how far insertions may climb above the
/// smallest chord count found so far.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: usize,
    pub max_extra: usize,
}

impl Budget {
    pub const DEFAULT_NODES: usize = 20_000;
    pub const DEFAULT_EXTRA: usize = 2;

    pub fn new(max_nodes: usize, max_extra: usize) -> Self {
        Budget { max_nodes, max_extra }
    }
}

impl Default for Budget {
    /// Default limits; `VK_BUDGET_NODES` overrides the node limit.
    fn default() -> Self {
        let max_nodes = std::env::var("VK_BUDGET_NODES")
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(Self::DEFAULT_NODES);
        Budget { max_nodes, max_extra: Self::DEFAULT_EXTRA }
    }
}

/// Outcome of [`simplify`]: the reduced diagram, the moves leading to it from
/// the input, and whether both search phases finished within budget.
#[derive(Clone, Debug)]
pub struct Simplified<D> {
    pub diagram: D,
    pub code: String,
    pub path: Vec<MoveApplication>,
    pub nodes: usize,
    pub complete: bool,
}

struct Search<D> {
    arena: Vec<(D, Option<(usize, MoveApplication)>)>,
    mode: Orientation,
}

struct PhaseResult {
    best: usize,
    best_key: CanonKey,
    nodes: usize,
    complete: bool,
}

impl<D: ChordDiagram> Search<D> {
    fn path_to(&self, mut idx: usize) -> Vec<MoveApplication> {
        let mut path = Vec::new();
        while let Some((parent, m)) = &self.arena[idx].1 {
            path.push(m.clone());
            idx = *parent;
        }
        path.reverse();
        path
    }

    /// Best-first search from `start` ordered by (chord count, key). Without
    /// `extra` only deletions and R3 moves are used; with it, R2 insertions
    /// next to existing crossings are allowed while the count stays within
    /// `extra` of the best found.
    fn phase(&mut self, start: usize, max_nodes: usize, extra: Option<usize>) -> PhaseResult {
        let start_key = canonical_key(&self.arena[start].0, self.mode);
        let start_count = self.arena[start].0.chord_count();
        let mut seen: HashSet<CanonKey> = HashSet::new();
        seen.insert(start_key.clone());
        let mut heap = BinaryHeap::new();
        heap.push(Reverse((start_count, start_key.clone(), start)));
        let mut best = (start_count, start_key, start);
        let mut nodes = 0;
        let mut complete = true;
        while let Some(Reverse((count, _, idx))) = heap.pop() {
            if best.0 == 0 {
                break;
            }
            if let Some(extra) = extra {
                if count > best.0 + extra {
                    continue;
                }
            }
            if nodes >= max_nodes {
                complete = false;
                break;
            }
            nodes += 1;
            let d = self.arena[idx].0.clone();
            let mut moves = deletions(&d);
            moves.extend(r3_moves(&d));
            if let Some(extra) = extra {
                if count + 2 <= best.0 + extra {
                    let ids = (ChordId(d.max_chord() + 1), ChordId(d.max_chord() + 2));
                    for gp in crossing_gap_pairs(&d) {
                        moves.extend(r2_insertions(&d, gp, ids));
                    }
                }
            }
            for m in moves {
                let e = apply_move(&d, &m).expect("enumerated moves apply");
                let key = canonical_key(&e, self.mode);
                if seen.contains(&key) {
                    continue;
                }
                seen.insert(key.clone());
                let n = e.chord_count();
                self.arena.push((e, Some((idx, m))));
                let new_idx = self.arena.len() - 1;
                if (n, &key) < (best.0, &best.1) {
                    best = (n, key.clone(), new_idx);
                }
                heap.push(Reverse((n, key, new_idx)));
            }
        }
        PhaseResult { best: best.2, best_key: best.1, nodes, complete }
    }
}

fn monotone<D: ChordDiagram>(d: &D, mode: Orientation, budget: Budget) -> (Search<D>, PhaseResult) {
    let mut s = Search { arena: vec![(d.clone(), None)], mode };
    let r = s.phase(0, budget.max_nodes, None);
    (s, r)
}

fn run_search<D: ChordDiagram>(d: &D, mode: Orientation, budget: Budget) -> Simplified<D> {
    let (mut s, p1) = monotone(d, mode, budget);
    let mut result = p1;
    let mut nodes = result.nodes;
    let mut complete = result.complete;
    if budget.max_extra > 0 && s.arena[result.best].0.chord_count() > 0 {
        let p2 = s.phase(result.best, budget.max_nodes, Some(budget.max_extra));
        nodes += p2.nodes;
        complete &= p2.complete;
        result = p2;
    }
    let diagram = s.arena[result.best].0.clone();
    Simplified {
        code: decode_key(&result.best_key, D::SIGNED),
        path: s.path_to(result.best),
        diagram,
        nodes,
        complete,
    }
}

/// Reduces `d` by Reidemeister moves within `budget`. First explores all
/// chord-count-nonincreasing moves, then allows bounded R2 insertions from
/// the best diagram found. Among the smallest diagrams seen, returns the one
/// with the least canonical code. Flat diagrams flagged unoriented are
/// compared up to reversal.
pub fn simplify<D: ChordDiagram>(d: &D, budget: Budget) -> Simplified<D> {
    run_search(d, Orientation::of(d), budget)
}

/// Per-class invariants used to separate classes that the search could not
/// identify.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "type")]
pub enum InvariantTuple {
    /// Oriented flat knot: flat writhe and `P(t) = Σ t^Ind(c) - t^-Ind(c)`.
    Knot { writhe: i64, index_poly: String },
    /// Unoriented flat knot: `|w|` and the smaller of `P(t)` and `-P(t)`.
    UnorientedKnot { abs_writhe: i64, index_poly: String },
    /// Flat link: flat linking number and the index polynomials of the two
    /// circles with all mixed chords removed.
    Link { lk: u64, component_polys: [String; 2] },
    /// Virtual knot: writhe polynomial.
    Virtual { writhe_poly: String },
}

impl fmt::Display for InvariantTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvariantTuple::Knot { writhe, index_poly } => {
                write!(f, "flat_writhe = {writhe}, P = {index_poly}")
            }
            InvariantTuple::UnorientedKnot { abs_writhe, index_poly } => {
                write!(f, "|flat_writhe| = {abs_writhe}, ±P = {index_poly}")
            }
            InvariantTuple::Link { lk, component_polys } => write!(
                f,
                "lk = {lk}, P1 = {}, P2 = {}",
                component_polys[0], component_polys[1]
            ),
            InvariantTuple::Virtual { writhe_poly } => write!(f, "W = {writhe_poly}"),
        }
    }
}

impl InvariantTuple {
    /// Names the first entry where two tuples differ.
    pub fn difference(&self, other: &Self) -> Option<String> {
        use InvariantTuple::*;
        let d = |name: &str, a: &dyn fmt::Display, b: &dyn fmt::Display| {
            Some(format!("{name}: {a} vs {b}"))
        };
        match (self, other) {
            (Knot { writhe: w1, index_poly: p1 }, Knot { writhe: w2, index_poly: p2 }) => {
                if w1 != w2 {
                    d("flat_writhe", w1, w2)
                } else if p1 != p2 {
                    d("P", p1, p2)
                } else {
                    None
                }
            }
            (
                UnorientedKnot { abs_writhe: w1, index_poly: p1 },
                UnorientedKnot { abs_writhe: w2, index_poly: p2 },
            ) => {
                if w1 != w2 {
                    d("|flat_writhe|", w1, w2)
                } else if p1 != p2 {
                    d("±P", p1, p2)
                } else {
                    None
                }
            }
            (Link { lk: l1, component_polys: c1 }, Link { lk: l2, component_polys: c2 }) => {
                if l1 != l2 {
                    d("lk", l1, l2)
                } else if c1 != c2 {
                    d("component P", &format!("{c1:?}"), &format!("{c2:?}"))
                } else {
                    None
                }
            }
            (Virtual { writhe_poly: a }, Virtual { writhe_poly: b }) => {
                if a != b {
                    d("W", a, b)
                } else {
                    None
                }
            }
            (a, b) if a != b => d("kind", a, b),
            _ => None,
        }
    }
}

/// Diagram types that have a fingerprint.
pub trait Fingerprintable: ChordDiagram + PartialEq {
    fn invariant_tuple(&self, mode: Orientation) -> InvariantTuple;
}

fn smaller_sign(p: LaurentPoly) -> LaurentPoly {
    let n = -&p;
    if n < p {
        n
    } else {
        p
    }
}

impl Fingerprintable for FlatDiagram {
    fn invariant_tuple(&self, mode: Orientation) -> InvariantTuple {
        let w = crate::invariants::flat_writhe(self);
        let p = crate::indices::index_polynomial(self);
        match mode {
            Orientation::Oriented => InvariantTuple::Knot { writhe: w, index_poly: p.to_string() },
            Orientation::Unoriented => InvariantTuple::UnorientedKnot {
                abs_writhe: w.abs(),
                index_poly: smaller_sign(p).to_string(),
            },
        }
    }
}

impl Fingerprintable for FlatLinkDiagram {
    fn invariant_tuple(&self, mode: Orientation) -> InvariantTuple {
        let lk = crate::invariants::flat_linking_number(self);
        let polys = [0, 1].map(|k| crate::indices::index_polynomial(&self.component_knot(k)));
        let arrange = |mut ps: [LaurentPoly; 2]| {
            if !self.ordered {
                ps.sort();
            }
            ps
        };
        let mut best = arrange(polys.clone());
        if mode == Orientation::Unoriented {
            best = best.min(arrange(polys.map(|p| -p)));
        }
        InvariantTuple::Link { lk, component_polys: best.map(|p| p.to_string()) }
    }
}

impl Fingerprintable for GaussDiagram {
    fn invariant_tuple(&self, mode: Orientation) -> InvariantTuple {
        let w = crate::invariants::writhe_polynomial(self);
        let w = match mode {
            Orientation::Oriented => w,
            Orientation::Unoriented => w.clone().min(w.invert_t()),
        };
        InvariantTuple::Virtual { writhe_poly: w.to_string() }
    }
}

/// Computable stand-in for an equivalence class: the reduced canonical code
/// plus class invariants. Two fingerprints are equal when their reduced codes
/// agree; differing invariants prove the classes distinct.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Fingerprint {
    pub kind: DiagramKind,
    pub mode: Orientation,
    pub reduced_code: String,
    pub reduced_chords: usize,
    pub invariants: InvariantTuple,
    pub complete: bool,
}

impl Fingerprint {
    fn sort_key(&self) -> (DiagramKind, Orientation, &str) {
        (self.kind, self.mode, &self.reduced_code)
    }
}

impl PartialEq for Fingerprint {
    fn eq(&self, other: &Self) -> bool {
        self.sort_key() == other.sort_key()
    }
}
impl Eq for Fingerprint {}

impl PartialOrd for Fingerprint {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Fingerprint {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.sort_key().cmp(&other.sort_key())
    }
}
impl Hash for Fingerprint {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.sort_key().hash(state);
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] ({})", self.reduced_code, self.invariants)
    }
}

type CacheKey = (DiagramKind, Orientation, Budget, CanonKey);

/// Reduced key, chord count and completeness, per input class.
type Reduction = (CanonKey, usize, bool);

fn reduction_cache() -> &'static Mutex<HashMap<CacheKey, Reduction>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Reduction>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn second_phase_cache() -> &'static Mutex<HashMap<CacheKey, Reduction>> {
    static CACHE: OnceLock<Mutex<HashMap<CacheKey, Reduction>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

fn cached_reduction<D: ChordDiagram>(d: &D, mode: Orientation, budget: Budget) -> Reduction {
    let key = (D::KIND, mode, budget, canonical_key(d, mode));
    if let Some(r) = reduction_cache().lock().unwrap().get(&key) {
        return r.clone();
    }
    let (mut s, p1) = monotone(d, mode, budget);
    let mono_count = s.arena[p1.best].0.chord_count();
    let result = if budget.max_extra == 0 || mono_count == 0 {
        (p1.best_key.clone(), mono_count, p1.complete)
    } else {
        let key2 = (D::KIND, mode, budget, p1.best_key.clone());
        let cached = second_phase_cache().lock().unwrap().get(&key2).cloned();
        let (k, n, c) = match cached {
            Some(r) => r,
            None => {
                let p2 = s.phase(p1.best, budget.max_nodes, Some(budget.max_extra));
                let r = (p2.best_key.clone(), s.arena[p2.best].0.chord_count(), p2.complete);
                second_phase_cache().lock().unwrap().insert(key2, r.clone());
                r
            }
        };
        (k, n, c && p1.complete)
    };
    reduction_cache().lock().unwrap().insert(key, result.clone());
    result
}

/// Fingerprint of the class of `d` in the given orientation mode.
pub fn fingerprint<D: Fingerprintable>(d: &D, mode: Orientation, budget: Budget) -> Fingerprint {
    let (key, reduced_chords, complete) = cached_reduction(d, mode, budget);
    Fingerprint {
        kind: D::KIND,
        mode,
        reduced_code: decode_key(&key, D::SIGNED),
        reduced_chords,
        invariants: d.invariant_tuple(mode),
        complete,
    }
}

/// Outcome of an equivalence test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    /// Replaying the moves turns the first diagram into the second, up to
    /// chord labels (and reversal in unoriented mode).
    Equal(Vec<MoveApplication>),
    /// An invariant that differs.
    Distinct(String),
    /// The search budget ran out.
    Unknown,
}

fn relabel<D: ChordDiagram>(d: &D, map: &BTreeMap<ChordId, ChordId>, reverse: bool) -> D {
    let comps = d
        .components()
        .iter()
        .map(|s| {
            let mut v: Vec<Endpoint> =
                s.iter().map(|e| Endpoint { chord: map[&e.chord], role: e.role }).collect();
            if reverse {
                v.reverse();
            }
            v
        })
        .collect();
    let signs = d.signs().iter().map(|(c, s)| (map[c], *s)).collect();
    d.with_parts(comps, signs)
}

fn replay<D: ChordDiagram>(d: &D, path: &[MoveApplication]) -> Vec<D> {
    let mut out = vec![d.clone()];
    for m in path {
        let next = apply_move(out.last().unwrap(), m).expect("search paths replay");
        out.push(next);
    }
    out
}

/// Decides whether `a` and `b` represent the same class, within budget.
pub fn equivalent<D: Fingerprintable>(a: &D, b: &D, mode: Orientation, budget: Budget) -> Verdict {
    let (ia, ib) = (a.invariant_tuple(mode), b.invariant_tuple(mode));
    if let Some(diff) = ia.difference(&ib) {
        return Verdict::Distinct(diff);
    }
    let sa = run_search(a, mode, budget);
    let sb = run_search(b, mode, budget);
    let fa = canonical_form(&sa.diagram, mode);
    let fb = canonical_form(&sb.diagram, mode);
    if fa.key != fb.key {
        return Verdict::Unknown;
    }
    let states_a = replay(a, &sa.path);
    let states_b = replay(b, &sb.path);
    let by_label: BTreeMap<u32, ChordId> = fa.labels.iter().map(|(c, l)| (*l, *c)).collect();
    let mut map: BTreeMap<ChordId, ChordId> =
        fb.labels.iter().map(|(c, l)| (*c, by_label[l])).collect();
    let mut fresh = states_a.iter().chain(&states_b).map(|d| d.max_chord()).max().unwrap_or(0);
    for d in &states_b {
        for c in d.chords() {
            map.entry(c).or_insert_with(|| {
                fresh += 1;
                ChordId(fresh)
            });
        }
    }
    let reversed = fa.reversed != fb.reversed;
    let moved: Vec<D> = states_b.iter().map(|d| relabel(d, &map, reversed)).collect();
    if moved.last() != Some(&sa.diagram) {
        return Verdict::Unknown;
    }
    let mut witness = sa.path.clone();
    for i in (1..moved.len()).rev() {
        match find_move(&moved[i], &moved[i - 1]) {
            Some(m) => witness.push(m),
            None => return Verdict::Unknown,
        }
    }
    Verdict::Equal(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagrams::lattice_diagram;
    use crate::moves::{all_gaps, r1_insertions};

    fn flat(s: &str) -> FlatDiagram {
        FlatDiagram::parse(s).unwrap()
    }

    #[test]
    fn canonical_codes() {
        let a = GaussDiagram::parse("O1+O2+U1+U2+").unwrap();
        let b = GaussDiagram::parse("O2+O1+U2+U1+").unwrap();
        assert_eq!(canonical_code(&a, Orientation::Oriented), canonical_code(&b, Orientation::Oriented));
        let d = GaussDiagram::parse("O1+U2-O3+U1+O2-U3+").unwrap();
        let code = canonical_code(&d, Orientation::Oriented);
        let rotated = GaussDiagram::parse("U3+O1+U2-O3+U1+O2-").unwrap();
        assert_eq!(canonical_code(&rotated, Orientation::Oriented), code);
        assert_eq!(
            canonical_code(&d, Orientation::Unoriented),
            canonical_code(&d.reverse(), Orientation::Unoriented)
        );
        assert_eq!(canonical_code(&lattice_diagram(1, 1).unwrap(), Orientation::Oriented), "O1O2U1U2");
        assert_eq!(canonical_code(&GaussDiagram::unknot(), Orientation::Oriented), "");
        assert_eq!(canonical_code(&FlatLinkDiagram::trivial(), Orientation::Oriented), "|");
        let l = FlatLinkDiagram::parse("U1|O1").unwrap();
        assert_eq!(canonical_code(&l, Orientation::Oriented), "O1|U1");
    }

    #[test]
    fn canonical_form_labels_reproduce_key() {
        let d = flat("O1U2O3U1O2U3");
        let f = canonical_form(&d, Orientation::Unoriented);
        assert_eq!(f.labels.len(), 3);
        assert_eq!(decode_key(&f.key, false), canonical_code(&d, Orientation::Unoriented));
    }

    #[test]
    fn unknot_insertions_reduce() {
        let u = GaussDiagram::unknot();
        let mut d = u.clone();
        for (i, g) in [0usize, 1, 2].iter().enumerate() {
            let gaps = all_gaps(&d);
            let gap = gaps[g % gaps.len()];
            let m = r1_insertions(&d, gap, ChordId(i as u32 + 1))[i % 4].clone();
            d = apply_move(&d, &m).unwrap();
        }
        let s = simplify(&d, Budget::new(2000, 2));
        assert_eq!(s.diagram.chord_count(), 0);
        assert_eq!(replay(&d, &s.path).last().unwrap().chord_count(), 0);
    }

    #[test]
    fn two_chord_flat_knot_is_trivial() {
        let f = lattice_diagram(1, 1).unwrap();
        assert_eq!(simplify(&f, Budget::new(2000, 2)).diagram.chord_count(), 0);
    }

    #[test]
    fn lattice_two_one_stays_at_three() {
        let f = lattice_diagram(2, 1).unwrap();
        let s = simplify(&f, Budget::new(2000, 2));
        assert_eq!(s.diagram.chord_count(), 3);
    }

    #[test]
    fn fingerprints_basic() {
        let b = Budget::default();
        let u = fingerprint(&FlatDiagram::unknot(), Orientation::Oriented, b);
        assert_eq!(u.reduced_code, "");
        assert_eq!(u.reduced_chords, 0);
        assert_eq!(u.invariants, InvariantTuple::Knot { writhe: 0, index_poly: "0".into() });
        let h = fingerprint(&FlatLinkDiagram::parse("O1|U1").unwrap(), Orientation::Oriented, b);
        assert!(matches!(h.invariants, InvariantTuple::Link { lk: 1, .. }));
        for (p, q) in [(2, 1), (1, 3), (3, 2)] {
            let f = fingerprint(&lattice_diagram(p, q).unwrap(), Orientation::Oriented, b);
            let InvariantTuple::Knot { writhe, .. } = f.invariants else { panic!() };
            assert_eq!(writhe, q as i64 - p as i64);
        }
    }

    #[test]
    fn verdicts() {
        let b = Budget::new(2000, 2);
        let l21 = lattice_diagram(2, 1).unwrap();
        assert_eq!(equivalent(&l21, &l21, Orientation::Oriented, b), Verdict::Equal(vec![]));
        assert!(matches!(
            equivalent(&FlatDiagram::unknot(), &l21, Orientation::Oriented, b),
            Verdict::Distinct(_)
        ));
        let l11 = lattice_diagram(1, 1).unwrap();
        let v = equivalent(&l11, &l11.reverse(), Orientation::Oriented, b);
        assert!(!matches!(v, Verdict::Distinct(_)));
        if let Verdict::Equal(w) = v {
            let end = replay(&l11, &w).pop().unwrap();
            assert_eq!(
                canonical_code(&end, Orientation::Oriented),
                canonical_code(&l11.reverse(), Orientation::Oriented)
            );
        }
    }
}
