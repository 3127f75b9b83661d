//! Gauss diagrams of virtual knots, flat knots and two-component links.
//!
//! Every diagram is a list of circles, each a cyclic sequence of chord
//! endpoints. A chord joins exactly two endpoints: one with role
//! [`Role::Over`] and one with role [`Role::Under`]. In flat diagrams the same
//! two roles are read as tail and head of the chord's arrow; the tail is the
//! over-crossing endpoint of the positive resolution of the flat crossing.
//!
//! Slot 0 of each circle is its basepoint. Equality ignores basepoints.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, ParseErrorKind, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ChordId(pub u32);

impl fmt::Display for ChordId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Endpoint role. For flat diagrams `Over` is the tail and `Under` the head.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Over,
    Under,
}

impl Role {
    pub fn flip(self) -> Role {
        match self {
            Role::Over => Role::Under,
            Role::Under => Role::Over,
        }
    }

    pub(crate) fn letter(self) -> char {
        match self {
            Role::Over => 'O',
            Role::Under => 'U',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn of(value: i64) -> Option<Sign> {
        match value.signum() {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }

    pub(crate) fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Endpoint {
    pub chord: ChordId,
    pub role: Role,
}

impl Endpoint {
    pub fn new(chord: u32, role: Role) -> Self {
        Endpoint { chord: ChordId(chord), role }
    }

    pub fn over(chord: u32) -> Self {
        Self::new(chord, Role::Over)
    }

    pub fn under(chord: u32) -> Self {
        Self::new(chord, Role::Under)
    }
}

/// Position of an endpoint: circle index and slot index within the circle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Loc {
    pub comp: usize,
    pub idx: usize,
}

/// Over (tail) and under (head) locations of one chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChordLocs {
    pub over: Loc,
    pub under: Loc,
}

impl ChordLocs {
    pub fn get(&self, role: Role) -> Loc {
        match role {
            Role::Over => self.over,
            Role::Under => self.under,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DiagramKind {
    VirtualKnot,
    FlatKnot,
    FlatLink,
    VirtualLink,
}

/// Shared surface of all chord-diagram types.
pub trait ChordDiagram: Clone + fmt::Debug + fmt::Display + Send + Sync + 'static {
    const KIND: DiagramKind;
    const SIGNED: bool;

    fn components(&self) -> &[Vec<Endpoint>];

    /// Chord signs; empty for flat diagrams.
    fn signs(&self) -> &BTreeMap<ChordId, Sign>;

    /// Rebuilds a diagram of the same type and flags from raw parts. The caller
    /// guarantees the parts are valid.
    fn with_parts(&self, comps: Vec<Vec<Endpoint>>, signs: BTreeMap<ChordId, Sign>) -> Self;

    /// Whether the circles may be swapped without changing the diagram.
    fn unordered(&self) -> bool {
        false
    }

    /// Whether the diagram carries an orientation that equivalence must respect.
    fn is_oriented(&self) -> bool {
        true
    }

    fn sign(&self, c: ChordId) -> Option<Sign> {
        self.signs().get(&c).copied()
    }

    fn chord_count(&self) -> usize {
        self.components().iter().map(Vec::len).sum::<usize>() / 2
    }

    fn chords(&self) -> Vec<ChordId> {
        let mut v: Vec<ChordId> = self
            .components()
            .iter()
            .flatten()
            .filter(|e| e.role == Role::Over)
            .map(|e| e.chord)
            .collect();
        v.sort();
        v
    }

    fn contains(&self, c: ChordId) -> bool {
        self.components().iter().flatten().any(|e| e.chord == c)
    }

    fn locate(&self) -> BTreeMap<ChordId, ChordLocs> {
        locate(self.components())
    }

    fn max_chord(&self) -> u32 {
        self.components().iter().flatten().map(|e| e.chord.0).max().unwrap_or(0)
    }
}

pub(crate) fn locate(comps: &[Vec<Endpoint>]) -> BTreeMap<ChordId, ChordLocs> {
    let mut over = BTreeMap::new();
    let mut under = BTreeMap::new();
    for (comp, seq) in comps.iter().enumerate() {
        for (idx, e) in seq.iter().enumerate() {
            let loc = Loc { comp, idx };
            match e.role {
                Role::Over => over.insert(e.chord, loc),
                Role::Under => under.insert(e.chord, loc),
            };
        }
    }
    over.into_iter()
        .map(|(c, o)| (c, ChordLocs { over: o, under: under[&c] }))
        .collect()
}

fn validate(
    comps: &[Vec<Endpoint>],
    signs: Option<&BTreeMap<ChordId, Sign>>,
) -> Result<()> {
    let mut seen: BTreeMap<ChordId, (usize, usize)> = BTreeMap::new();
    for e in comps.iter().flatten() {
        let entry = seen.entry(e.chord).or_default();
        match e.role {
            Role::Over => entry.0 += 1,
            Role::Under => entry.1 += 1,
        }
    }
    for (c, (o, u)) in &seen {
        if (*o, *u) != (1, 1) {
            return Err(Error::InvalidDiagram(format!(
                "chord {c} has {o} over and {u} under endpoints"
            )));
        }
    }
    if let Some(signs) = signs {
        if signs.len() != seen.len() || signs.keys().any(|c| !seen.contains_key(c)) {
            return Err(Error::InvalidDiagram("every chord needs exactly one sign".into()));
        }
    }
    Ok(())
}

pub(crate) fn rotated(seq: &[Endpoint], k: usize) -> Vec<Endpoint> {
    if seq.is_empty() {
        return Vec::new();
    }
    let k = k % seq.len();
    seq[k..].iter().chain(&seq[..k]).copied().collect()
}

pub(crate) fn cyclic_eq(a: &[Endpoint], b: &[Endpoint]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|k| (0..a.len()).all(|i| a[(i + k) % a.len()] == b[i]))
}

fn comps_eq(a: &[Vec<Endpoint>], b: &[Vec<Endpoint>], unordered: bool) -> bool {
    let straight = a.len() == b.len() && a.iter().zip(b).all(|(x, y)| cyclic_eq(x, y));
    straight
        || (unordered
            && a.len() == 2
            && b.len() == 2
            && cyclic_eq(&a[0], &b[1])
            && cyclic_eq(&a[1], &b[0]))
}

/// Normalized text: labels renumbered by first appearance from the basepoint.
pub(crate) fn write_code(
    f: &mut fmt::Formatter<'_>,
    comps: &[Vec<Endpoint>],
    signs: &BTreeMap<ChordId, Sign>,
    signed: bool,
) -> fmt::Result {
    let mut labels: BTreeMap<ChordId, u32> = BTreeMap::new();
    for (i, comp) in comps.iter().enumerate() {
        if i > 0 {
            f.write_str("|")?;
        }
        for e in comp {
            let next = labels.len() as u32 + 1;
            let label = *labels.entry(e.chord).or_insert(next);
            write!(f, "{}{}", e.role.letter(), label)?;
            if signed {
                write!(f, "{}", signs[&e.chord].symbol())?;
            }
        }
    }
    Ok(())
}

/// Oriented virtual knot diagram (one circle, signed chords).
#[derive(Clone, Debug)]
pub struct GaussDiagram {
    comps: Vec<Vec<Endpoint>>,
    signs: BTreeMap<ChordId, Sign>,
}

impl GaussDiagram {
    pub fn new(slots: Vec<Endpoint>, signs: BTreeMap<ChordId, Sign>) -> Result<Self> {
        let comps = vec![slots];
        validate(&comps, Some(&signs))?;
        Ok(GaussDiagram { comps, signs })
    }

    pub fn unknot() -> Self {
        GaussDiagram { comps: vec![Vec::new()], signs: BTreeMap::new() }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (comps, signs) = parse_code(text, true, 1)?;
        Ok(GaussDiagram { comps, signs })
    }

    pub fn slots(&self) -> &[Endpoint] {
        &self.comps[0]
    }

    pub fn writhe(&self) -> i64 {
        self.signs.values().map(|s| s.value()).sum()
    }

    pub fn reverse(&self) -> Self {
        let mut d = self.clone();
        d.comps[0].reverse();
        d
    }

    /// Switches every crossing: roles swap and signs flip.
    pub fn mirror(&self) -> Self {
        let comps = vec![self.comps[0]
            .iter()
            .map(|e| Endpoint { chord: e.chord, role: e.role.flip() })
            .collect()];
        let signs = self.signs.iter().map(|(c, s)| (*c, s.flip())).collect();
        GaussDiagram { comps, signs }
    }

    pub fn switch_crossing(&self, c: ChordId) -> Result<Self> {
        let mut d = self.virtualize(c)?;
        let s = d.signs.get_mut(&c).expect("chord present");
        *s = s.flip();
        Ok(d)
    }

    /// Reverses the arrow of chord `c` and keeps its sign.
    pub fn virtualize(&self, c: ChordId) -> Result<Self> {
        if !self.signs.contains_key(&c) {
            return Err(Error::UnknownChord(c));
        }
        let mut d = self.clone();
        for e in d.comps[0].iter_mut().filter(|e| e.chord == c) {
            e.role = e.role.flip();
        }
        Ok(d)
    }

    /// Number of gaps available for splicing: one per slot, or one for the
    /// empty diagram.
    pub fn gap_count(&self) -> usize {
        self.comps[0].len().max(1)
    }

    /// Splices `other`, opened at its gap `other_gap`, into gap `gap` of self.
    /// Gap `g` sits immediately before slot `g`. Chords of `other` are
    /// relabeled above the largest label of `self`.
    pub fn connected_sum(&self, gap: usize, other: &GaussDiagram, other_gap: usize) -> Result<Self> {
        if gap >= self.gap_count() {
            return Err(Error::GapOutOfRange { gap, gaps: self.gap_count() });
        }
        if other_gap >= other.gap_count() {
            return Err(Error::GapOutOfRange { gap: other_gap, gaps: other.gap_count() });
        }
        let offset = self.max_chord();
        let shift = |c: ChordId| ChordId(c.0 + offset);
        let inserted: Vec<Endpoint> = rotated(other.slots(), other_gap)
            .into_iter()
            .map(|e| Endpoint { chord: shift(e.chord), role: e.role })
            .collect();
        let mut slots = self.slots()[..gap].to_vec();
        slots.extend(inserted);
        slots.extend_from_slice(&self.slots()[gap..]);
        let mut signs = self.signs.clone();
        signs.extend(other.signs.iter().map(|(c, s)| (shift(*c), *s)));
        GaussDiagram::new(slots, signs)
    }

    /// The flat diagram underlying this one. A positive chord keeps its
    /// arrow; a negative chord's arrow is reversed, since the positive
    /// resolution of that flat crossing has the other strand on top.
    pub fn shadow(&self) -> FlatDiagram {
        FlatDiagram {
            comps: vec![shadow_seq(&self.comps[0], &self.signs)],
            oriented: true,
        }
    }

    /// Shadow of this diagram when it is viewed as unoriented.
    pub fn unoriented_shadow(&self) -> FlatDiagram {
        FlatDiagram { oriented: false, ..self.shadow() }
    }
}

pub(crate) fn shadow_seq(seq: &[Endpoint], signs: &BTreeMap<ChordId, Sign>) -> Vec<Endpoint> {
    seq.iter()
        .map(|e| match signs[&e.chord] {
            Sign::Pos => *e,
            Sign::Neg => Endpoint { chord: e.chord, role: e.role.flip() },
        })
        .collect()
}

impl PartialEq for GaussDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs && comps_eq(&self.comps, &other.comps, false)
    }
}
impl Eq for GaussDiagram {}

impl fmt::Display for GaussDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_code(f, &self.comps, &self.signs, true)
    }
}

impl ChordDiagram for GaussDiagram {
    const KIND: DiagramKind = DiagramKind::VirtualKnot;
    const SIGNED: bool = true;

    fn components(&self) -> &[Vec<Endpoint>] {
        &self.comps
    }
    fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        &self.signs
    }
    fn with_parts(&self, comps: Vec<Vec<Endpoint>>, signs: BTreeMap<ChordId, Sign>) -> Self {
        debug_assert_eq!(comps.len(), 1);
        GaussDiagram { comps, signs }
    }
}

/// Flat virtual knot diagram: directed, unsigned chords on one circle.
#[derive(Clone, Debug)]
pub struct FlatDiagram {
    comps: Vec<Vec<Endpoint>>,
    pub oriented: bool,
}

impl FlatDiagram {
    pub fn new(slots: Vec<Endpoint>, oriented: bool) -> Result<Self> {
        let comps = vec![slots];
        validate(&comps, None)?;
        Ok(FlatDiagram { comps, oriented })
    }

    pub fn unknot() -> Self {
        FlatDiagram { comps: vec![Vec::new()], oriented: true }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (comps, _) = parse_code(text, false, 1)?;
        Ok(FlatDiagram { comps, oriented: true })
    }

    pub fn slots(&self) -> &[Endpoint] {
        &self.comps[0]
    }

    pub fn reverse(&self) -> Self {
        let mut d = self.clone();
        d.comps[0].reverse();
        d
    }

    pub fn with_orientation(mut self, oriented: bool) -> Self {
        self.oriented = oriented;
        self
    }

    /// Every flat crossing becomes a positive crossing with the tail on top.
    pub fn positive_lift(&self) -> GaussDiagram {
        let signs = self.chords().into_iter().map(|c| (c, Sign::Pos)).collect();
        GaussDiagram { comps: self.comps.clone(), signs }
    }
}

impl PartialEq for FlatDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.oriented == other.oriented && comps_eq(&self.comps, &other.comps, false)
    }
}
impl Eq for FlatDiagram {}

impl fmt::Display for FlatDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_code(f, &self.comps, &BTreeMap::new(), false)
    }
}

impl ChordDiagram for FlatDiagram {
    const KIND: DiagramKind = DiagramKind::FlatKnot;
    const SIGNED: bool = false;

    fn components(&self) -> &[Vec<Endpoint>] {
        &self.comps
    }
    fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        empty_signs()
    }
    fn with_parts(&self, comps: Vec<Vec<Endpoint>>, _signs: BTreeMap<ChordId, Sign>) -> Self {
        debug_assert_eq!(comps.len(), 1);
        FlatDiagram { comps, oriented: self.oriented }
    }
    fn is_oriented(&self) -> bool {
        self.oriented
    }
}

fn empty_signs() -> &'static BTreeMap<ChordId, Sign> {
    static EMPTY: BTreeMap<ChordId, Sign> = BTreeMap::new();
    &EMPTY
}

/// Which circles a chord's endpoints lie on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChordKind {
    Intra(usize),
    Mixed,
}

pub(crate) fn chord_kind(locs: &ChordLocs) -> ChordKind {
    if locs.over.comp == locs.under.comp {
        ChordKind::Intra(locs.over.comp)
    } else {
        ChordKind::Mixed
    }
}

/// Two-component flat virtual link.
#[derive(Clone, Debug)]
pub struct FlatLinkDiagram {
    comps: Vec<Vec<Endpoint>>,
    pub ordered: bool,
}

impl FlatLinkDiagram {
    pub fn new(first: Vec<Endpoint>, second: Vec<Endpoint>, ordered: bool) -> Result<Self> {
        let comps = vec![first, second];
        validate(&comps, None)?;
        Ok(FlatLinkDiagram { comps, ordered })
    }

    /// Unordered link, as produced by 1-smoothings.
    pub fn parse(text: &str) -> Result<Self> {
        let (comps, _) = parse_code(text, false, 2)?;
        Ok(FlatLinkDiagram { comps, ordered: false })
    }

    /// Split union of a flat knot with a crossingless circle.
    pub fn with_trivial_component(knot: &FlatDiagram) -> Self {
        FlatLinkDiagram { comps: vec![knot.slots().to_vec(), Vec::new()], ordered: false }
    }

    pub fn trivial() -> Self {
        FlatLinkDiagram { comps: vec![Vec::new(), Vec::new()], ordered: false }
    }

    pub fn reverse(&self) -> Self {
        let mut d = self.clone();
        d.comps.iter_mut().for_each(|c| c.reverse());
        d
    }

    pub fn with_ordered(mut self, ordered: bool) -> Self {
        self.ordered = ordered;
        self
    }

    pub fn chord_kinds(&self) -> BTreeMap<ChordId, ChordKind> {
        self.locate().iter().map(|(c, l)| (*c, chord_kind(l))).collect()
    }

    /// Component `k` alone, with every chord to the other component removed.
    pub fn component_knot(&self, k: usize) -> FlatDiagram {
        let kinds = self.chord_kinds();
        let slots = self.comps[k]
            .iter()
            .filter(|e| kinds[&e.chord] == ChordKind::Intra(k))
            .copied()
            .collect();
        FlatDiagram { comps: vec![slots], oriented: true }
    }
}

impl PartialEq for FlatLinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.ordered == other.ordered && comps_eq(&self.comps, &other.comps, !self.ordered)
    }
}
impl Eq for FlatLinkDiagram {}

impl fmt::Display for FlatLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_code(f, &self.comps, &BTreeMap::new(), false)
    }
}

impl ChordDiagram for FlatLinkDiagram {
    const KIND: DiagramKind = DiagramKind::FlatLink;
    const SIGNED: bool = false;

    fn components(&self) -> &[Vec<Endpoint>] {
        &self.comps
    }
    fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        empty_signs()
    }
    fn with_parts(&self, comps: Vec<Vec<Endpoint>>, _signs: BTreeMap<ChordId, Sign>) -> Self {
        debug_assert_eq!(comps.len(), 2);
        FlatLinkDiagram { comps, ordered: self.ordered }
    }
    fn unordered(&self) -> bool {
        !self.ordered
    }
}

/// Oriented two-component virtual link; component 0 is `K1`, component 1 is `K2`.
#[derive(Clone, Debug)]
pub struct VirtualLinkDiagram {
    comps: Vec<Vec<Endpoint>>,
    signs: BTreeMap<ChordId, Sign>,
}

impl VirtualLinkDiagram {
    pub fn new(
        first: Vec<Endpoint>,
        second: Vec<Endpoint>,
        signs: BTreeMap<ChordId, Sign>,
    ) -> Result<Self> {
        let comps = vec![first, second];
        validate(&comps, Some(&signs))?;
        Ok(VirtualLinkDiagram { comps, signs })
    }

    pub fn parse(text: &str) -> Result<Self> {
        let (comps, signs) = parse_code(text, true, 2)?;
        Ok(VirtualLinkDiagram { comps, signs })
    }

    pub fn chord_kinds(&self) -> BTreeMap<ChordId, ChordKind> {
        self.locate().iter().map(|(c, l)| (*c, chord_kind(l))).collect()
    }

    /// Forgets crossing information; the result is unordered.
    pub fn shadow(&self) -> FlatLinkDiagram {
        FlatLinkDiagram {
            comps: self.comps.iter().map(|c| shadow_seq(c, &self.signs)).collect(),
            ordered: false,
        }
    }

    pub fn writhe(&self) -> i64 {
        self.signs.values().map(|s| s.value()).sum()
    }
}

impl PartialEq for VirtualLinkDiagram {
    fn eq(&self, other: &Self) -> bool {
        self.signs == other.signs && comps_eq(&self.comps, &other.comps, false)
    }
}
impl Eq for VirtualLinkDiagram {}

impl fmt::Display for VirtualLinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_code(f, &self.comps, &self.signs, true)
    }
}

impl ChordDiagram for VirtualLinkDiagram {
    const KIND: DiagramKind = DiagramKind::VirtualLink;
    const SIGNED: bool = true;

    fn components(&self) -> &[Vec<Endpoint>] {
        &self.comps
    }
    fn signs(&self) -> &BTreeMap<ChordId, Sign> {
        &self.signs
    }
    fn with_parts(&self, comps: Vec<Vec<Endpoint>>, signs: BTreeMap<ChordId, Sign>) -> Self {
        debug_assert_eq!(comps.len(), 2);
        VirtualLinkDiagram { comps, signs }
    }
}

/// The lattice flat diagram with `p` horizontal chords (tails on the left)
/// and `q` vertical chords (tails on top). Horizontal chords are labeled
/// `1..=p` top to bottom, vertical chords `p+1..=p+q` left to right.
pub fn lattice_diagram(p: usize, q: usize) -> Result<FlatDiagram> {
    if p == 0 || q == 0 {
        return Err(Error::BadLattice { p, q });
    }
    let h = |i: usize| i as u32;
    let v = |j: usize| (p + j) as u32;
    let mut slots = Vec::with_capacity(2 * (p + q));
    slots.extend((1..=p).map(|i| Endpoint::over(h(i))));
    slots.extend((1..=q).map(|j| Endpoint::under(v(j))));
    slots.extend((1..=p).rev().map(|i| Endpoint::under(h(i))));
    slots.extend((1..=q).rev().map(|j| Endpoint::over(v(j))));
    FlatDiagram::new(slots, true)
}

/// A parsed diagram of whichever kind was requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AnyDiagram {
    Virtual(GaussDiagram),
    Flat(FlatDiagram),
    FlatLink(FlatLinkDiagram),
}

impl fmt::Display for AnyDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnyDiagram::Virtual(d) => d.fmt(f),
            AnyDiagram::Flat(d) => d.fmt(f),
            AnyDiagram::FlatLink(d) => d.fmt(f),
        }
    }
}

pub fn parse_gauss_code(text: &str, kind: DiagramKind) -> Result<AnyDiagram> {
    Ok(match kind {
        DiagramKind::VirtualKnot => AnyDiagram::Virtual(GaussDiagram::parse(text)?),
        DiagramKind::FlatKnot => AnyDiagram::Flat(FlatDiagram::parse(text)?),
        DiagramKind::FlatLink => AnyDiagram::FlatLink(FlatLinkDiagram::parse(text)?),
        DiagramKind::VirtualLink => {
            return Err(Error::InvalidDiagram("virtual links have no text kind".into()))
        }
    })
}

type Parsed = (Vec<Vec<Endpoint>>, BTreeMap<ChordId, Sign>);

fn parse_code(text: &str, signed: bool, ncomps: usize) -> Result<Parsed, ParseError> {
    let err = |pos, kind| ParseError { pos, kind };
    let bytes = text.as_bytes();
    let mut comps: Vec<Vec<Endpoint>> = vec![Vec::new()];
    // label -> (count, first position, roles seen, sign)
    let mut info: BTreeMap<u32, (usize, usize, Vec<Role>, Option<Sign>)> = BTreeMap::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
            continue;
        }
        if c == '|' {
            if ncomps < 2 {
                return Err(err(i, ParseErrorKind::UnexpectedSeparator));
            }
            comps.push(Vec::new());
            i += 1;
            continue;
        }
        let role = match c {
            'O' => Role::Over,
            'U' => Role::Under,
            _ => return Err(err(i, ParseErrorKind::UnexpectedChar(text[i..].chars().next().unwrap()))),
        };
        let start = i;
        i += 1;
        let digits = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        if digits == i {
            return Err(err(digits, ParseErrorKind::ExpectedLabel));
        }
        let label: u32 = text[digits..i]
            .parse()
            .map_err(|_| err(digits, ParseErrorKind::LabelOverflow))?;
        if label == 0 {
            return Err(err(digits, ParseErrorKind::ZeroLabel));
        }
        let sign = match bytes.get(i) {
            Some(b'+') | Some(b'-') if !signed => {
                return Err(err(i, ParseErrorKind::SignInFlatCode));
            }
            Some(b'+') => {
                i += 1;
                Some(Sign::Pos)
            }
            Some(b'-') => {
                i += 1;
                Some(Sign::Neg)
            }
            _ if signed => return Err(err(i, ParseErrorKind::MissingSign)),
            _ => None,
        };
        let entry = info.entry(label).or_insert((0, start, Vec::new(), sign));
        entry.0 += 1;
        if entry.2.contains(&role) {
            return Err(err(start, ParseErrorKind::RepeatedRole { label }));
        }
        entry.2.push(role);
        if entry.3 != sign {
            return Err(err(start, ParseErrorKind::ConflictingSigns { label }));
        }
        comps.last_mut().unwrap().push(Endpoint { chord: ChordId(label), role });
    }
    if comps.len() != ncomps {
        return Err(err(text.len(), ParseErrorKind::ComponentCount(comps.len())));
    }
    for (label, (count, pos, _, _)) in &info {
        if *count != 2 {
            return Err(err(*pos, ParseErrorKind::Occurrences { label: *label, count: *count }));
        }
    }
    let signs = info
        .iter()
        .filter_map(|(l, (_, _, _, s))| s.map(|s| (ChordId(*l), s)))
        .collect();
    Ok((comps, signs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vt() -> GaussDiagram {
        GaussDiagram::parse("O1+O2+U1+U2+").unwrap()
    }

    #[test]
    fn parse_and_serialize() {
        assert_eq!(GaussDiagram::parse("").unwrap().chord_count(), 0);
        assert_eq!(GaussDiagram::unknot().to_string(), "");
        assert_eq!(GaussDiagram::parse("O2+U2+").unwrap().to_string(), "O1+U1+");
        assert_eq!(FlatLinkDiagram::parse("O1|U1").unwrap().to_string(), "O1|U1");
        assert_eq!(GaussDiagram::parse(" O1+ O2+\tU1+U2+ ").unwrap().to_string(), "O1+O2+U1+U2+");
        let d = vt();
        assert_eq!(d.chord_count(), 2);
        assert!(d.signs().values().all(|s| *s == Sign::Pos));
        assert_eq!(FlatLinkDiagram::parse("|").unwrap().chord_count(), 0);
    }

    #[test]
    fn parse_errors() {
        let kind = |t: &str, signed: bool, n: usize| parse_code(t, signed, n).unwrap_err().kind;
        assert_eq!(kind("O1+U1+O1+", true, 1), ParseErrorKind::RepeatedRole { label: 1 });
        assert_eq!(kind("O1+U2+", true, 1), ParseErrorKind::Occurrences { label: 1, count: 1 });
        assert_eq!(kind("O1+U1-", true, 1), ParseErrorKind::ConflictingSigns { label: 1 });
        assert_eq!(kind("O1+U1+", false, 1), ParseErrorKind::SignInFlatCode);
        assert_eq!(kind("O1U1", true, 1), ParseErrorKind::MissingSign);
        assert_eq!(kind("O1O1", false, 1), ParseErrorKind::RepeatedRole { label: 1 });
        assert_eq!(kind("O1U1", false, 2), ParseErrorKind::ComponentCount(1));
        assert_eq!(kind("O1|U1|", false, 2), ParseErrorKind::ComponentCount(3));
        assert_eq!(kind("O1|U1", false, 1), ParseErrorKind::UnexpectedSeparator);
        assert_eq!(kind("X1", false, 1), ParseErrorKind::UnexpectedChar('X'));
        assert_eq!(kind("O0U0", false, 1), ParseErrorKind::ZeroLabel);
        assert_eq!(kind("OU", false, 1), ParseErrorKind::ExpectedLabel);
        let e = parse_code("O1+U1+ O2+", true, 1).unwrap_err();
        assert_eq!(e.pos, 7);
    }

    #[test]
    fn involutions() {
        let d = GaussDiagram::parse("O1+U2-O3+U1+O2-U3+").unwrap();
        assert_eq!(d.reverse().reverse(), d);
        assert_eq!(d.mirror().mirror(), d);
        for c in d.chords() {
            assert_eq!(d.switch_crossing(c).unwrap().switch_crossing(c).unwrap(), d);
            assert_eq!(d.virtualize(c).unwrap().virtualize(c).unwrap(), d);
            assert_eq!(d.virtualize(c).unwrap().writhe(), d.writhe());
            assert_eq!((d.writhe() - d.switch_crossing(c).unwrap().writhe()).abs(), 2);
        }
        let all = d.chords().into_iter().fold(d.clone(), |acc, c| acc.switch_crossing(c).unwrap());
        assert_eq!(all, d.mirror());
        assert_eq!(d.mirror().writhe(), -d.writhe());
        assert_eq!(GaussDiagram::unknot().reverse(), GaussDiagram::unknot());
        assert_eq!(GaussDiagram::unknot().mirror(), GaussDiagram::unknot());
        assert_eq!(d.switch_crossing(ChordId(9)), Err(Error::UnknownChord(ChordId(9))));
        assert_eq!(d.virtualize(ChordId(9)), Err(Error::UnknownChord(ChordId(9))));
    }

    #[test]
    fn reverse_of_virtual_trefoil() {
        let r = vt().reverse();
        assert_eq!(
            r.slots(),
            &[Endpoint::under(2), Endpoint::under(1), Endpoint::over(2), Endpoint::over(1)]
        );
        assert_eq!(r.writhe(), 2);
    }

    #[test]
    fn equality_ignores_basepoint() {
        let a = GaussDiagram::parse("O1+O2+U1+U2+").unwrap();
        let b = GaussDiagram::parse("U2+O1+O2+U1+").unwrap();
        assert_eq!(a, b);
        let l1 = FlatLinkDiagram::parse("O1O2|U1U2").unwrap();
        let l2 = FlatLinkDiagram::parse("U2U1|O2O1").unwrap();
        assert_eq!(l1, l2);
    }

    #[test]
    fn writhe_values() {
        assert_eq!(GaussDiagram::unknot().writhe(), 0);
        assert_eq!(vt().writhe(), 2);
    }

    #[test]
    fn connected_sum_basics() {
        let d = GaussDiagram::parse("O1+U2-O3+U1+O2-U3+").unwrap();
        for g in 0..d.gap_count() {
            assert_eq!(d.connected_sum(g, &GaussDiagram::unknot(), 0).unwrap(), d);
            assert_eq!(GaussDiagram::unknot().connected_sum(0, &d, g).unwrap().chord_count(), 3);
        }
        let s = vt().connected_sum(1, &d, 2).unwrap();
        assert_eq!(s.chord_count(), 5);
        assert_eq!(s.writhe(), vt().writhe() + d.writhe());
        assert!(matches!(d.connected_sum(6, &d, 0), Err(Error::GapOutOfRange { .. })));
        assert!(matches!(d.connected_sum(0, &d, 7), Err(Error::GapOutOfRange { .. })));
    }

    #[test]
    fn shadow_and_lift() {
        assert_eq!(GaussDiagram::unknot().shadow(), FlatDiagram::unknot());
        let f = lattice_diagram(2, 1).unwrap();
        let lift = f.positive_lift();
        assert!(lift.signs().values().all(|s| *s == Sign::Pos));
        assert_eq!(lift.shadow(), f);
        assert_eq!(FlatDiagram::unknot().positive_lift(), GaussDiagram::unknot());
        let d = GaussDiagram::parse("O1+U2-O3+U1+O2-U3+").unwrap();
        assert_eq!(d.reverse().shadow(), d.shadow().reverse());
        assert_eq!(d.mirror().shadow(), d.shadow());
        for c in d.chords() {
            assert_eq!(d.switch_crossing(c).unwrap().shadow(), d.shadow());
        }
    }

    #[test]
    fn lattice_shape() {
        assert!(matches!(lattice_diagram(0, 1), Err(Error::BadLattice { .. })));
        assert_eq!(lattice_diagram(1, 1).unwrap().to_string(), "O1U2U1O2");
        assert_eq!(lattice_diagram(2, 1).unwrap().chord_count(), 3);
        for p in 1..=4 {
            for q in 1..=4 {
                let f = lattice_diagram(p, q).unwrap();
                let locs = f.locate();
                let mut crossings = 0;
                for a in 1..=(p + q) as u32 {
                    for b in (a + 1)..=(p + q) as u32 {
                        let cross = crosses(&locs[&ChordId(a)], &locs[&ChordId(b)], f.slots().len());
                        let expected = (a as usize <= p) != (b as usize <= p);
                        assert_eq!(cross, expected, "p={p} q={q} a={a} b={b}");
                        crossings += cross as usize;
                    }
                }
                assert_eq!(crossings, p * q);
                // reversing the orientation transposes the lattice
                assert_eq!(
                    crate::moves::canonical_code(&f.reverse(), crate::moves::Orientation::Oriented),
                    crate::moves::canonical_code(
                        &lattice_diagram(q, p).unwrap(),
                        crate::moves::Orientation::Oriented
                    )
                );
            }
        }
    }

    fn crosses(a: &ChordLocs, b: &ChordLocs, _len: usize) -> bool {
        let (a0, a1) = (a.over.idx.min(a.under.idx), a.over.idx.max(a.under.idx));
        let inside = |i: usize| a0 < i && i < a1;
        inside(b.over.idx) != inside(b.under.idx)
    }
}
