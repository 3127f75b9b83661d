//! Reidemeister moves on Gauss diagrams.
//!
//! Signed diagrams use the oriented moves. Flat diagrams use their images
//! under forgetting signs: a flat move is legal when some choice of crossing
//! signs turns it into a legal signed move, where a positive crossing has its
//! tail on top and a negative crossing its head on top.

pub mod r3;
mod search;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::diagrams::{ChordDiagram, ChordId, Endpoint, Loc, Role, Sign};
use crate::error::{Error, Result};

pub use search::{
    canonical_code, canonical_form, equivalent, fingerprint, simplify, Budget, CanonForm,
    Fingerprint, Fingerprintable, InvariantTuple, Orientation, Simplified, Verdict,
};

/// A position between two consecutive slots: right after a given endpoint, or
/// the single gap of an empty circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gap {
    After(Endpoint),
    Empty(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    R1Delete,
    R1Insert,
    R2Delete,
    R2Insert,
    R3,
}

impl MoveKind {
    fn name(self) -> &'static str {
        match self {
            MoveKind::R1Delete => "R1-delete",
            MoveKind::R1Insert => "R1-insert",
            MoveKind::R2Delete => "R2-delete",
            MoveKind::R2Insert => "R2-insert",
            MoveKind::R3 => "R3",
        }
    }

    pub fn chord_delta(self) -> i64 {
        match self {
            MoveKind::R1Delete => -1,
            MoveKind::R1Insert => 1,
            MoveKind::R2Delete => -2,
            MoveKind::R2Insert => 2,
            MoveKind::R3 => 0,
        }
    }
}

/// Shape of an inserted configuration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    Plain,
    /// First inserted endpoint has `role`; the chord gets `sign` (signed only).
    R1 { role: Role, sign: Option<Sign> },
    /// The first inserted pair starts with the first chord's `role` endpoint.
    /// In signed diagrams both endpoints of that pair share the role, and the
    /// first chord gets `sign` while the second gets the opposite sign. In
    /// flat diagrams the pair holds one tail and one head. The second pair
    /// meets the chords in the same order when `parallel`.
    R2 { role: Role, parallel: bool, sign: Option<Sign> },
}

/// One Reidemeister move at a concrete site. Deletions and R3 name the chords
/// involved; insertions name their gaps and the ids of the new chords.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MoveApplication {
    pub kind: MoveKind,
    pub variant: Variant,
    pub chords: Vec<ChordId>,
    pub gaps: Vec<Gap>,
}

impl MoveApplication {
    fn on_chords(kind: MoveKind, mut chords: Vec<ChordId>) -> Self {
        chords.sort();
        MoveApplication { kind, variant: Variant::Plain, chords, gaps: Vec::new() }
    }

    pub fn r1_delete(c: ChordId) -> Self {
        Self::on_chords(MoveKind::R1Delete, vec![c])
    }

    pub fn r2_delete(c: ChordId, d: ChordId) -> Self {
        Self::on_chords(MoveKind::R2Delete, vec![c, d])
    }

    pub fn r3(a: ChordId, b: ChordId, c: ChordId) -> Self {
        Self::on_chords(MoveKind::R3, vec![a, b, c])
    }

    /// An R3 move at the triangle whose three swapped slot pairs follow the
    /// given gaps. Three chords can bound two triangles at once.
    pub fn r3_at(chords: [ChordId; 3], mut gaps: Vec<Gap>) -> Self {
        gaps.sort();
        MoveApplication { gaps, ..Self::on_chords(MoveKind::R3, chords.to_vec()) }
    }

    pub fn r1_insert(gap: Gap, new: ChordId, role: Role, sign: Option<Sign>) -> Self {
        MoveApplication {
            kind: MoveKind::R1Insert,
            variant: Variant::R1 { role, sign },
            chords: vec![new],
            gaps: vec![gap],
        }
    }

    pub fn r2_insert(
        gaps: (Gap, Gap),
        new: (ChordId, ChordId),
        role: Role,
        parallel: bool,
        sign: Option<Sign>,
    ) -> Self {
        MoveApplication {
            kind: MoveKind::R2Insert,
            variant: Variant::R2 { role, parallel, sign },
            chords: vec![new.0, new.1],
            gaps: vec![gaps.0, gaps.1],
        }
    }
}

fn write_endpoint(f: &mut fmt::Formatter<'_>, e: &Endpoint) -> fmt::Result {
    write!(f, "{}{}", e.role.letter(), e.chord)
}

fn write_sign(f: &mut fmt::Formatter<'_>, s: Option<Sign>) -> fmt::Result {
    match s {
        Some(s) => write!(f, "{}", s.symbol()),
        None => Ok(()),
    }
}

impl fmt::Display for MoveApplication {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ", self.kind.name())?;
        match self.variant {
            Variant::Plain => f.write_str("-")?,
            Variant::R1 { role, sign } => {
                write!(f, "{}", role.letter())?;
                write_sign(f, sign)?;
            }
            Variant::R2 { role, parallel, sign } => {
                write!(f, "{}{}", role.letter(), if parallel { "par" } else { "anti" })?;
                write_sign(f, sign)?;
            }
        }
        f.write_str(" @")?;
        for (i, g) in self.gaps.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            match g {
                Gap::After(e) => write_endpoint(f, e)?,
                Gap::Empty(k) => write!(f, "e{k}")?,
            }
        }
        if !self.gaps.is_empty() {
            f.write_str(">")?;
        }
        let ids: Vec<String> = self.chords.iter().map(|c| c.to_string()).collect();
        f.write_str(&ids.join(","))
    }
}

fn bad(text: &str) -> Error {
    Error::BadMoveRecord(text.to_string())
}

fn parse_role(c: char) -> Option<Role> {
    match c {
        'O' => Some(Role::Over),
        'U' => Some(Role::Under),
        _ => None,
    }
}

fn parse_sign(s: &str) -> Option<Option<Sign>> {
    match s {
        "" => Some(None),
        "+" => Some(Some(Sign::Pos)),
        "-" => Some(Some(Sign::Neg)),
        _ => None,
    }
}

fn parse_gap(s: &str) -> Option<Gap> {
    let mut chars = s.chars();
    let head = chars.next()?;
    let rest: u32 = chars.as_str().parse().ok()?;
    if head == 'e' {
        return Some(Gap::Empty(rest as usize));
    }
    Some(Gap::After(Endpoint { chord: ChordId(rest), role: parse_role(head)? }))
}

impl FromStr for MoveApplication {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let parts: Vec<&str> = text.split_whitespace().collect();
        let [kind, variant, site] = parts[..] else {
            return Err(bad(text));
        };
        let kind = match kind {
            "R1-delete" => MoveKind::R1Delete,
            "R1-insert" => MoveKind::R1Insert,
            "R2-delete" => MoveKind::R2Delete,
            "R2-insert" => MoveKind::R2Insert,
            "R3" => MoveKind::R3,
            _ => return Err(bad(text)),
        };
        let site = site.strip_prefix('@').ok_or_else(|| bad(text))?;
        let (gaps, ids) = match site.split_once('>') {
            Some((g, ids)) => (g.split(',').map(parse_gap).collect::<Option<Vec<_>>>(), ids),
            None => (Some(Vec::new()), site),
        };
        let gaps = gaps.ok_or_else(|| bad(text))?;
        let chords = ids
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.parse().map(ChordId))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| bad(text))?;
        let variant = if variant == "-" {
            Variant::Plain
        } else {
            let role = parse_role(variant.chars().next().unwrap()).ok_or_else(|| bad(text))?;
            let rest = &variant[1..];
            if let Some(s) = rest.strip_prefix("par") {
                Variant::R2 { role, parallel: true, sign: parse_sign(s).ok_or_else(|| bad(text))? }
            } else if let Some(s) = rest.strip_prefix("anti") {
                Variant::R2 { role, parallel: false, sign: parse_sign(s).ok_or_else(|| bad(text))? }
            } else {
                Variant::R1 { role, sign: parse_sign(rest).ok_or_else(|| bad(text))? }
            }
        };
        let shape_ok = match kind {
            MoveKind::R1Delete => chords.len() == 1 && gaps.is_empty() && variant == Variant::Plain,
            MoveKind::R2Delete => chords.len() == 2 && gaps.is_empty() && variant == Variant::Plain,
            MoveKind::R3 => {
                chords.len() == 3 && (gaps.is_empty() || gaps.len() == 3) && variant == Variant::Plain
            }
            MoveKind::R1Insert => {
                chords.len() == 1 && gaps.len() == 1 && matches!(variant, Variant::R1 { .. })
            }
            MoveKind::R2Insert => {
                chords.len() == 2 && gaps.len() == 2 && matches!(variant, Variant::R2 { .. })
            }
        };
        if !shape_ok {
            return Err(bad(text));
        }
        let mut m = MoveApplication { kind, variant, chords, gaps };
        if m.gaps.is_empty() || kind == MoveKind::R3 {
            m.chords.sort();
            m.gaps.sort();
        }
        Ok(m)
    }
}

/// Parses a newline-separated witness.
pub fn parse_witness(text: &str) -> Result<Vec<MoveApplication>> {
    text.lines().filter(|l| !l.trim().is_empty()).map(str::parse).collect()
}

pub fn format_witness(moves: &[MoveApplication]) -> String {
    moves.iter().map(|m| format!("{m}\n")).collect()
}

/// Insertion sites to include in [`enumerate_moves`].
#[derive(Clone, Debug, Default)]
pub struct InsertionRequest {
    pub r1_gaps: Vec<Gap>,
    pub r2_gap_pairs: Vec<(Gap, Gap)>,
}

/// An adjacent slot pair `(comp, first, second)` in traversal order.
type Pair = (usize, usize, usize);

fn adjacent_pairs(comps: &[Vec<Endpoint>]) -> Vec<Pair> {
    let mut out = Vec::new();
    for (k, seq) in comps.iter().enumerate() {
        if seq.len() < 2 {
            continue;
        }
        for i in 0..seq.len() {
            let j = (i + 1) % seq.len();
            if seq[i].chord != seq[j].chord {
                out.push((k, i, j));
            }
        }
    }
    out
}

fn at(comps: &[Vec<Endpoint>], k: usize, i: usize) -> Endpoint {
    comps[k][i]
}

fn adjacent(comps: &[Vec<Endpoint>], a: Loc, b: Loc) -> bool {
    if a.comp != b.comp {
        return false;
    }
    let n = comps[a.comp].len();
    (a.idx + 1) % n == b.idx || (b.idx + 1) % n == a.idx
}

fn r2_legal<D: ChordDiagram>(d: &D, p: Pair, q: Pair) -> bool {
    let comps = d.components();
    let (p0, p1) = (at(comps, p.0, p.1), at(comps, p.0, p.2));
    let (q0, q1) = (at(comps, q.0, q.1), at(comps, q.0, q.2));
    let chords: BTreeSet<ChordId> = [p0.chord, p1.chord].into();
    if chords != [q0.chord, q1.chord].into() {
        return false;
    }
    let role_in = |a: Endpoint, b: Endpoint, c: ChordId| if a.chord == c { a.role } else { b.role };
    if [p0.chord, p1.chord].iter().any(|c| role_in(p0, p1, *c) == role_in(q0, q1, *c)) {
        return false;
    }
    if D::SIGNED {
        p0.role == p1.role && d.sign(p0.chord) != d.sign(p1.chord)
    } else {
        p0.role != p1.role
    }
}

fn find_r2_site<D: ChordDiagram>(d: &D, c: ChordId, e: ChordId) -> Option<(Pair, Pair)> {
    let comps = d.components();
    let pairs: Vec<Pair> = adjacent_pairs(comps)
        .into_iter()
        .filter(|p| {
            let s: BTreeSet<ChordId> = [at(comps, p.0, p.1).chord, at(comps, p.0, p.2).chord].into();
            s == [c, e].into()
        })
        .collect();
    for (i, p) in pairs.iter().enumerate() {
        for q in &pairs[i + 1..] {
            if r2_legal(d, *p, *q) {
                return Some((*p, *q));
            }
        }
    }
    None
}

/// The three strands of an R3 site, each as an ordered slot pair.
type Triangle = [Pair; 3];

fn triangles(comps: &[Vec<Endpoint>]) -> Vec<([ChordId; 3], Triangle)> {
    let pairs = adjacent_pairs(comps);
    let chord_pair = |p: &Pair| {
        let (a, b) = (at(comps, p.0, p.1).chord, at(comps, p.0, p.2).chord);
        (a.min(b), a.max(b))
    };
    let mut out = Vec::new();
    for i in 0..pairs.len() {
        let (a, b) = chord_pair(&pairs[i]);
        for j in (i + 1)..pairs.len() {
            let (c1, c2) = chord_pair(&pairs[j]);
            let shared = [c1, c2].iter().filter(|x| **x == a || **x == b).count();
            if shared != 1 {
                continue;
            }
            for k in (j + 1)..pairs.len() {
                let (e1, e2) = chord_pair(&pairs[k]);
                let mut all = vec![a, b, c1, c2, e1, e2];
                all.sort();
                all.dedup();
                if all.len() != 3 {
                    continue;
                }
                let sets = [(a, b), (c1, c2), (e1, e2)];
                if sets[0] == sets[1] || sets[0] == sets[2] || sets[1] == sets[2] {
                    continue;
                }
                let mut slots = BTreeSet::new();
                for p in [pairs[i], pairs[j], pairs[k]] {
                    slots.insert((p.0, p.1));
                    slots.insert((p.0, p.2));
                }
                if slots.len() != 6 {
                    continue;
                }
                out.push(([all[0], all[1], all[2]], [pairs[i], pairs[j], pairs[k]]));
            }
        }
    }
    out
}

/// Descriptor of a triangle given which endpoints count as over-crossings.
fn r3_descriptor(
    comps: &[Vec<Endpoint>],
    tri: &Triangle,
    is_over: &dyn Fn(Endpoint) -> bool,
    positive: &dyn Fn(ChordId) -> bool,
) -> Option<r3::Descriptor> {
    let mut strands = [None, None, None];
    for p in tri {
        let (a, b) = (at(comps, p.0, p.1), at(comps, p.0, p.2));
        let overs = is_over(a) as usize + is_over(b) as usize;
        let slot = &mut strands[2 - overs];
        if slot.is_some() {
            return None;
        }
        *slot = Some((a.chord, b.chord));
    }
    let [t, m, b] = strands.map(|s| s.expect("pattern checked"));
    let common = |u: (ChordId, ChordId), v: (ChordId, ChordId)| {
        if u.0 == v.0 || u.0 == v.1 {
            u.0
        } else {
            u.1
        }
    };
    let x = common(t, m);
    let y = common(t, b);
    let z = common(m, b);
    let order = (t.0 == x) as u8 | ((m.0 == x) as u8) << 1 | ((b.0 == y) as u8) << 2;
    let signs = positive(x) as u8 | (positive(y) as u8) << 1 | (positive(z) as u8) << 2;
    Some(r3::Descriptor { order, signs })
}

fn r3_legal<D: ChordDiagram>(d: &D, chords: [ChordId; 3], tri: &Triangle) -> bool {
    let comps = d.components();
    if D::SIGNED {
        let is_over = |e: Endpoint| e.role == Role::Over;
        let positive = |c: ChordId| d.sign(c) == Some(Sign::Pos);
        return r3_descriptor(comps, tri, &is_over, &positive).is_some_and(r3::is_legal);
    }
    (0..8u8).any(|lift| {
        let positive = |c: ChordId| {
            let i = chords.iter().position(|x| *x == c).unwrap();
            lift >> i & 1 == 1
        };
        let is_over = |e: Endpoint| (e.role == Role::Over) == positive(e.chord);
        r3_descriptor(comps, tri, &is_over, &positive).is_some_and(r3::is_legal)
    })
}

/// Gaps naming the slot pairs of a triangle, sorted.
fn triangle_gaps(comps: &[Vec<Endpoint>], tri: &Triangle) -> Vec<Gap> {
    let mut gaps: Vec<Gap> = tri.iter().map(|p| Gap::After(at(comps, p.0, p.1))).collect();
    gaps.sort();
    gaps
}

/// The legal triangle on `chords`, restricted to the one named by `gaps`
/// unless `gaps` is empty.
fn find_r3_site<D: ChordDiagram>(d: &D, chords: &[ChordId], gaps: &[Gap]) -> Option<Triangle> {
    let mut want = chords.to_vec();
    want.sort();
    let comps = d.components();
    triangles(comps)
        .into_iter()
        .find(|(cs, tri)| {
            cs[..] == want[..]
                && (gaps.is_empty() || triangle_gaps(comps, tri) == gaps)
                && r3_legal(d, *cs, tri)
        })
        .map(|(_, tri)| tri)
}

/// All R1 and R2 deletions.
pub fn deletions<D: ChordDiagram>(d: &D) -> Vec<MoveApplication> {
    let comps = d.components();
    let locs = d.locate();
    let mut out: Vec<MoveApplication> = locs
        .iter()
        .filter(|(_, l)| adjacent(comps, l.over, l.under))
        .map(|(c, _)| MoveApplication::r1_delete(*c))
        .collect();
    let mut seen = BTreeSet::new();
    let pairs = adjacent_pairs(comps);
    for (i, p) in pairs.iter().enumerate() {
        for q in &pairs[i + 1..] {
            if r2_legal(d, *p, *q) {
                let (a, b) = (at(comps, p.0, p.1).chord, at(comps, p.0, p.2).chord);
                if seen.insert((a.min(b), a.max(b))) {
                    out.push(MoveApplication::r2_delete(a, b));
                }
            }
        }
    }
    out
}

/// All legal R3 moves, one per triangle.
pub fn r3_moves<D: ChordDiagram>(d: &D) -> Vec<MoveApplication> {
    let comps = d.components();
    triangles(comps)
        .into_iter()
        .filter(|(cs, tri)| r3_legal(d, *cs, tri))
        .map(|(cs, tri)| MoveApplication::r3_at(cs, triangle_gaps(comps, &tri)))
        .collect()
}

fn r1_variants(signed: bool) -> Vec<(Role, Option<Sign>)> {
    let signs: Vec<Option<Sign>> =
        if signed { vec![Some(Sign::Pos), Some(Sign::Neg)] } else { vec![None] };
    [Role::Over, Role::Under]
        .into_iter()
        .flat_map(|r| signs.iter().map(move |s| (r, *s)))
        .collect()
}

fn r2_variants(signed: bool) -> Vec<(Role, bool, Option<Sign>)> {
    r1_variants(signed)
        .into_iter()
        .flat_map(|(r, s)| [(r, true, s), (r, false, s)])
        .collect()
}

/// The R1 insertions of a fresh chord `new` at `gap`.
pub fn r1_insertions<D: ChordDiagram>(_d: &D, gap: Gap, new: ChordId) -> Vec<MoveApplication> {
    r1_variants(D::SIGNED)
        .into_iter()
        .map(|(r, s)| MoveApplication::r1_insert(gap, new, r, s))
        .collect()
}

/// The R2 insertions of fresh chords `new` at the gap pair `gaps`.
pub fn r2_insertions<D: ChordDiagram>(
    _d: &D,
    gaps: (Gap, Gap),
    new: (ChordId, ChordId),
) -> Vec<MoveApplication> {
    r2_variants(D::SIGNED)
        .into_iter()
        .map(|(r, p, s)| MoveApplication::r2_insert(gaps, new, r, p, s))
        .collect()
}

/// Every gap of the diagram.
pub fn all_gaps<D: ChordDiagram>(d: &D) -> Vec<Gap> {
    let mut out = Vec::new();
    for (k, seq) in d.components().iter().enumerate() {
        if seq.is_empty() {
            out.push(Gap::Empty(k));
        }
        out.extend(seq.iter().map(|e| Gap::After(*e)));
    }
    out
}

/// Deletions, R3 moves, and insertions at the requested gaps. New chords get
/// the smallest ids above the current largest id.
pub fn enumerate_moves<D: ChordDiagram>(d: &D, req: &InsertionRequest) -> Vec<MoveApplication> {
    let mut out = deletions(d);
    out.extend(r3_moves(d));
    let next = ChordId(d.max_chord() + 1);
    let next2 = ChordId(d.max_chord() + 2);
    for g in &req.r1_gaps {
        out.extend(r1_insertions(d, *g, next));
    }
    for gp in &req.r2_gap_pairs {
        out.extend(r2_insertions(d, *gp, (next, next2)));
    }
    out
}

fn resolve_gap<D: ChordDiagram>(d: &D, g: Gap) -> Result<(usize, usize)> {
    let comps = d.components();
    let gaps = comps.iter().map(|s| s.len().max(1)).sum();
    match g {
        Gap::Empty(k) if k < comps.len() && comps[k].is_empty() => Ok((k, 0)),
        Gap::After(e) => comps
            .iter()
            .enumerate()
            .find_map(|(k, s)| s.iter().position(|x| *x == e).map(|i| (k, i + 1)))
            .ok_or(Error::InapplicableMove(format!("no gap after {}{}", e.role.letter(), e.chord))),
        Gap::Empty(k) => Err(Error::GapOutOfRange { gap: k, gaps }),
    }
}

fn remove_chords<D: ChordDiagram>(d: &D, chords: &[ChordId]) -> D {
    let comps = d
        .components()
        .iter()
        .map(|s| s.iter().filter(|e| !chords.contains(&e.chord)).copied().collect())
        .collect();
    let mut signs = d.signs().clone();
    for c in chords {
        signs.remove(c);
    }
    d.with_parts(comps, signs)
}

fn ensure_fresh<D: ChordDiagram>(d: &D, ids: &[ChordId]) -> Result<()> {
    for (i, c) in ids.iter().enumerate() {
        if d.contains(*c) {
            return Err(Error::ChordExists(*c));
        }
        if ids[..i].contains(c) {
            return Err(Error::DuplicateChord(*c));
        }
    }
    Ok(())
}

fn check_sign<D: ChordDiagram>(sign: Option<Sign>) -> Result<()> {
    if sign.is_some() != D::SIGNED {
        return Err(Error::BadMoveRecord("sign data does not match the diagram kind".into()));
    }
    Ok(())
}

/// Inserts each block at its position. Blocks sharing a position end up in
/// descending order of their rank.
fn insert_blocks(
    comps: &mut [Vec<Endpoint>],
    mut blocks: Vec<((usize, usize), usize, Vec<Endpoint>)>,
) {
    // Insert from the back so earlier positions stay valid.
    blocks.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
    for ((k, i), _, items) in blocks {
        comps[k].splice(i..i, items);
    }
}

pub fn apply_move<D: ChordDiagram>(d: &D, m: &MoveApplication) -> Result<D> {
    let stale = || Error::InapplicableMove(m.to_string());
    match m.kind {
        MoveKind::R1Delete => {
            let c = m.chords[0];
            let l = *d.locate().get(&c).ok_or(Error::UnknownChord(c))?;
            if !adjacent(d.components(), l.over, l.under) {
                return Err(stale());
            }
            Ok(remove_chords(d, &[c]))
        }
        MoveKind::R2Delete => {
            for c in &m.chords {
                if !d.contains(*c) {
                    return Err(Error::UnknownChord(*c));
                }
            }
            find_r2_site(d, m.chords[0], m.chords[1]).ok_or_else(stale)?;
            Ok(remove_chords(d, &m.chords))
        }
        MoveKind::R3 => {
            for c in &m.chords {
                if !d.contains(*c) {
                    return Err(Error::UnknownChord(*c));
                }
            }
            let tri = find_r3_site(d, &m.chords, &m.gaps).ok_or_else(stale)?;
            let mut comps = d.components().to_vec();
            for (k, i, j) in tri {
                comps[k].swap(i, j);
            }
            Ok(d.with_parts(comps, d.signs().clone()))
        }
        MoveKind::R1Insert => {
            let Variant::R1 { role, sign } = m.variant else { return Err(stale()) };
            check_sign::<D>(sign)?;
            let c = m.chords[0];
            ensure_fresh(d, &[c])?;
            let pos = resolve_gap(d, m.gaps[0])?;
            let mut comps = d.components().to_vec();
            let items = vec![Endpoint { chord: c, role }, Endpoint { chord: c, role: role.flip() }];
            insert_blocks(&mut comps, vec![(pos, 0, items)]);
            let mut signs = d.signs().clone();
            if let Some(s) = sign {
                signs.insert(c, s);
            }
            Ok(d.with_parts(comps, signs))
        }
        MoveKind::R2Insert => {
            let Variant::R2 { role, parallel, sign } = m.variant else { return Err(stale()) };
            check_sign::<D>(sign)?;
            let (c, e) = (m.chords[0], m.chords[1]);
            ensure_fresh(d, &[c, e])?;
            let px = resolve_gap(d, m.gaps[0])?;
            let py = resolve_gap(d, m.gaps[1])?;
            let r2 = if D::SIGNED { role } else { role.flip() };
            let x = vec![Endpoint { chord: c, role }, Endpoint { chord: e, role: r2 }];
            let (yc, ye) = (Endpoint { chord: c, role: role.flip() }, Endpoint { chord: e, role: r2.flip() });
            let y = if parallel { vec![yc, ye] } else { vec![ye, yc] };
            let mut comps = d.components().to_vec();
            insert_blocks(&mut comps, vec![(px, 1, x), (py, 0, y)]);
            let mut signs = d.signs().clone();
            if let Some(s) = sign {
                signs.insert(c, s);
                signs.insert(e, s.flip());
            }
            Ok(d.with_parts(comps, signs))
        }
    }
}

/// A single move turning `from` into `to` (equal up to basepoints), if any.
/// Inserted chords take the ids that `to` has and `from` lacks.
pub fn find_move<D: ChordDiagram + PartialEq>(from: &D, to: &D) -> Option<MoveApplication> {
    let new: Vec<ChordId> = to.chords().into_iter().filter(|c| !from.contains(*c)).collect();
    let candidates: Vec<MoveApplication> = match new.len() {
        0 => enumerate_moves(from, &InsertionRequest::default()),
        1 => all_gaps(from)
            .into_iter()
            .flat_map(|g| r1_insertions(from, g, new[0]))
            .collect(),
        2 => {
            let gaps = all_gaps(from);
            let mut out = Vec::new();
            for gx in &gaps {
                for gy in &gaps {
                    out.extend(r2_insertions(from, (*gx, *gy), (new[0], new[1])));
                    out.extend(r2_insertions(from, (*gx, *gy), (new[1], new[0])));
                }
            }
            out
        }
        _ => return None,
    };
    candidates
        .into_iter()
        .find(|m| apply_move(from, m).is_ok_and(|r| r == *to))
}

/// A single move undoing `m`, which was applied to `before`.
pub fn inverse_move<D: ChordDiagram + PartialEq>(
    before: &D,
    m: &MoveApplication,
) -> Result<MoveApplication> {
    let after = apply_move(before, m)?;
    find_move(&after, before).ok_or_else(|| Error::InapplicableMove(m.to_string()))
}

/// Gap pairs around the two endpoints of each chord; R2 insertions there
/// push one strand across another next to an existing crossing.
pub fn crossing_gap_pairs<D: ChordDiagram>(d: &D) -> Vec<(Gap, Gap)> {
    let comps = d.components();
    let before = |l: Loc| {
        let n = comps[l.comp].len();
        Gap::After(comps[l.comp][(l.idx + n - 1) % n])
    };
    let after = |l: Loc| Gap::After(comps[l.comp][l.idx]);
    let mut out = Vec::new();
    for l in d.locate().values() {
        for g1 in [before(l.over), after(l.over)] {
            for g2 in [before(l.under), after(l.under)] {
                out.push((g1, g2));
                out.push((g2, g1));
            }
        }
    }
    out
}
