//! Randomized checks of the chord index axioms for the flat-knot and
//! flat-link valued indices, and of move invariance for every invariant.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{
    ChordDiagram, ChordId, Endpoint, FlatDiagram, FlatLinkDiagram, GaussDiagram, Sign,
};
use crate::error::Result;
use crate::generate::{random_flat, random_gauss, random_move, random_move_of_kind, random_r3_site, Rng64};
use crate::indices::index_polynomial;
use crate::invariants::{
    dwrithe, flat_module_invariant, flat_writhe, lkn_polynomial, wp0_polynomial,
    writhe_polynomial, F_invariant, L_invariant, SmoothingMode, Weight,
};
use crate::moves::{apply_move, fingerprint, Budget, Fingerprintable, MoveKind, Orientation};
use crate::smoothing::{smooth0, smooth1};

/// Deliberate defects used to check that the audit can fail.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sabotage {
    #[default]
    None,
    /// Reads every negative crossing as positive when forming shadows.
    SignFlip,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AuditConfig {
    pub trials: u64,
    pub seed: u64,
    pub budget: Budget,
    pub max_chords: usize,
    pub sabotage: Sabotage,
}

impl AuditConfig {
    pub fn new(trials: u64, seed: u64, budget: Budget) -> Self {
        AuditConfig { trials, seed, budget, max_chords: 6, sabotage: Sabotage::None }
    }
}

/// Independent generator for trial `i`.
fn trial_rng(seed: u64, i: u64) -> Rng64 {
    let mut r = Rng64::seed_from_u64(seed);
    r.set_stream(i);
    r
}

/// The flat-knot index of `c`: the unoriented shadow of the 0-smoothing.
pub fn knot_index(d: &GaussDiagram, c: ChordId, sabotage: Sabotage) -> Result<FlatDiagram> {
    Ok(shadowed(&smooth0(d, c)?, sabotage).with_orientation(false))
}

/// The flat-link index of `c`: the shadow of the 1-smoothing.
pub fn link_index(d: &GaussDiagram, c: ChordId, sabotage: Sabotage) -> Result<FlatLinkDiagram> {
    let link = smooth1(d, c)?.link;
    let link = match sabotage {
        Sabotage::None => link,
        Sabotage::SignFlip => link.with_parts(link.components().to_vec(), all_positive(link.signs())),
    };
    Ok(link.shadow())
}

fn all_positive(signs: &BTreeMap<ChordId, Sign>) -> BTreeMap<ChordId, Sign> {
    signs.keys().map(|c| (*c, Sign::Pos)).collect()
}

fn shadowed(d: &GaussDiagram, sabotage: Sabotage) -> FlatDiagram {
    match sabotage {
        Sabotage::None => d.shadow(),
        Sabotage::SignFlip => d.with_parts(d.components().to_vec(), all_positive(d.signs())).shadow(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Outcome {
    Same,
    Different,
    Unresolved,
}

fn compare<D: Fingerprintable>(a: &D, b: &D, mode: Orientation, budget: Budget) -> Outcome {
    if a.invariant_tuple(mode).difference(&b.invariant_tuple(mode)).is_some() {
        return Outcome::Different;
    }
    if fingerprint(a, mode, budget) == fingerprint(b, mode, budget) {
        Outcome::Same
    } else {
        Outcome::Unresolved
    }
}

/// Counters of one axiom clause.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClauseStats {
    pub trials: u64,
    pub knot_checks: u64,
    pub knot_violations: u64,
    pub link_checks: u64,
    pub link_violations: u64,
    /// Comparisons whose classes the search could neither identify nor
    /// separate.
    pub unresolved: u64,
}

impl ClauseStats {
    fn merge(mut self, o: ClauseStats) -> ClauseStats {
        self.trials += o.trials;
        self.knot_checks += o.knot_checks;
        self.knot_violations += o.knot_violations;
        self.link_checks += o.link_checks;
        self.link_violations += o.link_violations;
        self.unresolved += o.unresolved;
        self
    }

    pub fn violations(&self) -> u64 {
        self.knot_violations + self.link_violations
    }

    fn record(&mut self, link: bool, o: Outcome) {
        let (checks, violations) = if link {
            (&mut self.link_checks, &mut self.link_violations)
        } else {
            (&mut self.knot_checks, &mut self.knot_violations)
        };
        *checks += 1;
        match o {
            Outcome::Same => {}
            Outcome::Different => *violations += 1,
            Outcome::Unresolved => self.unresolved += 1,
        }
    }
}

pub const CLAUSE_NAMES: [&str; 5] = [
    "R1 crossing has the fixed index",
    "R2 crossings share an index",
    "R3 crossings keep their indices",
    "virtual R3 keeps the index",
    "uninvolved crossings keep their indices",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub trials: u64,
    pub seed: u64,
    pub clauses: [ClauseStats; 5],
}

impl AxiomReport {
    pub fn violations(&self) -> u64 {
        self.clauses.iter().map(|c| c.violations()).sum()
    }

    pub fn unresolved(&self) -> u64 {
        self.clauses.iter().map(|c| c.unresolved).sum()
    }
}

struct Checker {
    budget: Budget,
    sabotage: Sabotage,
}

impl Checker {
    /// Compares the indices of `c` in `d` and `c2` in `e`.
    fn same_indices(
        &self,
        st: &mut ClauseStats,
        d: &GaussDiagram,
        c: ChordId,
        e: &GaussDiagram,
        c2: ChordId,
    ) -> Result<()> {
        let (ka, kb) = (knot_index(d, c, self.sabotage)?, knot_index(e, c2, self.sabotage)?);
        st.record(false, compare(&ka, &kb, Orientation::Unoriented, self.budget));
        let (la, lb) = (link_index(d, c, self.sabotage)?, link_index(e, c2, self.sabotage)?);
        st.record(true, compare(&la, &lb, Orientation::Oriented, self.budget));
        Ok(())
    }

    /// Clause 1: the index of the R1 crossing is the shadow of the knot, or
    /// its split union with a circle.
    fn r1(&self, st: &mut ClauseStats, d: &GaussDiagram, rng: &mut Rng64) -> Result<()> {
        let del = random_move_of_kind(d, MoveKind::R1Delete, rng);
        let m = match del {
            Some(m) if rng.gen() => m,
            _ => random_move_of_kind(d, MoveKind::R1Insert, rng).expect("a gap exists"),
        };
        let e = apply_move(d, &m)?;
        let with = if m.kind == MoveKind::R1Delete { d } else { &e };
        let c = m.chords[0];
        let base = with.shadow();
        let k = knot_index(with, c, self.sabotage)?;
        st.record(false, compare(&k, &base.clone().with_orientation(false), Orientation::Unoriented, self.budget));
        let l = link_index(with, c, self.sabotage)?;
        let split = FlatLinkDiagram::with_trivial_component(&base);
        st.record(true, compare(&l, &split, Orientation::Oriented, self.budget));
        Ok(())
    }

    /// Clause 2: both R2 crossings have the same index.
    fn r2(&self, st: &mut ClauseStats, d: &GaussDiagram, rng: &mut Rng64) -> Result<()> {
        let del = random_move_of_kind(d, MoveKind::R2Delete, rng);
        let m = match del {
            Some(m) if rng.gen() => m,
            _ => random_move_of_kind(d, MoveKind::R2Insert, rng).expect("a gap exists"),
        };
        let e = apply_move(d, &m)?;
        let with = if m.kind == MoveKind::R2Delete { d } else { &e };
        self.same_indices(st, with, m.chords[0], with, m.chords[1])
    }

    /// Clause 3: each R3 crossing keeps its index.
    fn r3(&self, st: &mut ClauseStats, d: &GaussDiagram, max: usize, rng: &mut Rng64) -> Result<()> {
        let (d, m) = match random_move_of_kind(d, MoveKind::R3, rng) {
            Some(m) => (d.clone(), m),
            None => random_r3_site(max, rng),
        };
        let e = apply_move(&d, &m)?;
        for c in &m.chords {
            self.same_indices(st, &d, *c, &e, *c)?;
        }
        Ok(())
    }

    /// Clause 4: a virtual R3 leaves the Gauss diagram unchanged, so the
    /// check is that indices only depend on the diagram, not on the
    /// basepoint or chord names.
    fn virtual_r3(&self, st: &mut ClauseStats, d: &GaussDiagram, rng: &mut Rng64) -> Result<()> {
        let chords = d.chords();
        let mut names = chords.clone();
        names.shuffle(rng);
        let rename: BTreeMap<ChordId, ChordId> = chords.iter().copied().zip(names).collect();
        let slots = d.slots();
        let shift = if slots.is_empty() { 0 } else { rng.gen_range(0..slots.len()) };
        let moved: Vec<Endpoint> = slots[shift..]
            .iter()
            .chain(&slots[..shift])
            .map(|e| Endpoint { chord: rename[&e.chord], role: e.role })
            .collect();
        let signs = d.signs().iter().map(|(c, s)| (rename[c], *s)).collect();
        let e = GaussDiagram::new(moved, signs)?;
        for c in chords {
            self.same_indices(st, d, c, &e, rename[&c])?;
        }
        Ok(())
    }

    /// Clause 5: chords outside a random move keep their indices.
    fn uninvolved(&self, st: &mut ClauseStats, d: &GaussDiagram, rng: &mut Rng64) -> Result<()> {
        let m = random_move(d, rng);
        let e = apply_move(d, &m)?;
        for c in d.chords().into_iter().filter(|c| !m.chords.contains(c)) {
            self.same_indices(st, d, c, &e, c)?;
        }
        Ok(())
    }
}

/// Runs `trials` audit trials; trial `i` checks one clause, chosen at random,
/// for both indices.
pub fn axiom_audit(cfg: &AuditConfig) -> Result<AxiomReport> {
    let checker = Checker { budget: cfg.budget, sabotage: cfg.sabotage };
    let per_trial: Vec<(usize, ClauseStats)> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed, i);
            let clause = rng.gen_range(0..5);
            let n = rng.gen_range(0..=cfg.max_chords);
            let d = random_gauss(n, &mut rng);
            let mut st = ClauseStats { trials: 1, ..Default::default() };
            match clause {
                0 => checker.r1(&mut st, &d, &mut rng)?,
                1 => checker.r2(&mut st, &d, &mut rng)?,
                2 => checker.r3(&mut st, &d, cfg.max_chords, &mut rng)?,
                3 => checker.virtual_r3(&mut st, &d, &mut rng)?,
                _ => checker.uninvolved(&mut st, &d, &mut rng)?,
            }
            Ok((clause, st))
        })
        .collect::<Result<_>>()?;
    let mut clauses = [ClauseStats::default(); 5];
    for (k, st) in per_trial {
        clauses[k] = clauses[k].merge(st);
    }
    Ok(AxiomReport { trials: cfg.trials, seed: cfg.seed, clauses })
}

/// Checks and violations of one invariant in the move-invariance suite.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceStats {
    pub checks: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub trials: u64,
    pub seed: u64,
    pub invariants: BTreeMap<String, InvarianceStats>,
}

impl InvarianceReport {
    pub fn violations(&self) -> u64 {
        self.invariants.values().map(|s| s.violations).sum()
    }
}

/// Each trial applies a random signed move to a random diagram and a random
/// flat move to a random flat diagram, and compares every invariant before
/// and after.
pub fn move_invariance(cfg: &AuditConfig) -> Result<InvarianceReport> {
    let b = cfg.budget;
    let per_trial: Vec<Vec<(&'static str, bool)>> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg.seed ^ 0x5eed_0f_1a7, i);
            let n = rng.gen_range(0..=cfg.max_chords);
            let d = random_gauss(n, &mut rng);
            let e = apply_move(&d, &random_move(&d, &mut rng))?;
            let mut out = vec![
                ("W", writhe_polynomial(&d) == writhe_polynomial(&e)),
                ("wp0", wp0_polynomial(&d) == wp0_polynomial(&e)),
            ];
            for (name, k) in [("dwrithe1", 1), ("dwrithe2", 2), ("dwrithe3", 3)] {
                out.push((name, dwrithe(&d, k)? == dwrithe(&e, k)?));
            }
            for (name, k) in [("L^1", 1), ("L^2", 2)] {
                out.push((name, lkn_polynomial(&d, k)? == lkn_polynomial(&e, k)?));
            }
            out.push(("F", F_invariant(&d, b)? == F_invariant(&e, b)?));
            out.push(("L", L_invariant(&d, b)? == L_invariant(&e, b)?));

            let n = rng.gen_range(0..=cfg.max_chords);
            let f = random_flat(n, &mut rng);
            let g = apply_move(&f, &random_move(&f, &mut rng))?;
            out.push(("flat_writhe", flat_writhe(&f) == flat_writhe(&g)));
            out.push(("P", index_polynomial(&f) == index_polynomial(&g)));
            for (name, w, m) in [
                ("flat F sign", Weight::Sign, SmoothingMode::Knot),
                ("flat F index", Weight::Index, SmoothingMode::Knot),
                ("flat L sign", Weight::Sign, SmoothingMode::Link),
                ("flat L index", Weight::Index, SmoothingMode::Link),
            ] {
                out.push((name, flat_module_invariant(&f, w, m, b)? == flat_module_invariant(&g, w, m, b)?));
            }
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut invariants: BTreeMap<String, InvarianceStats> = BTreeMap::new();
    for (name, ok) in per_trial.into_iter().flatten() {
        let s = invariants.entry(name.to_string()).or_default();
        s.checks += 1;
        s.violations += u64::from(!ok);
    }
    Ok(InvarianceReport { trials: cfg.trials, seed: cfg.seed, invariants })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_audit_is_clean_and_counts_add_up() {
        let cfg = AuditConfig::new(200, 11, Budget::default());
        let r = axiom_audit(&cfg).unwrap();
        assert_eq!(r.clauses.iter().map(|c| c.trials).sum::<u64>(), 200);
        assert_eq!(r.violations(), 0, "{r:?}");
    }

    #[test]
    fn sabotage_is_detected() {
        let cfg = AuditConfig { sabotage: Sabotage::SignFlip, ..AuditConfig::new(300, 11, Budget::default()) };
        assert!(axiom_audit(&cfg).unwrap().violations() > 0);
    }

    #[test]
    fn small_invariance_run_is_clean() {
        let r = move_invariance(&AuditConfig::new(100, 5, Budget::default())).unwrap();
        assert_eq!(r.violations(), 0, "{r:?}");
        assert_eq!(r.invariants["W"].checks, 100);
    }
}
