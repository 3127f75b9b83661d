//! Seeded random diagrams and random legal moves.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::diagrams::{ChordDiagram, ChordId, Endpoint, FlatDiagram, GaussDiagram, Role, Sign};
use crate::moves::{
    all_gaps, apply_move, deletions, r1_insertions, r2_insertions, r3_moves, MoveApplication,
    MoveKind,
};

/// The generator used everywhere randomness is needed.
pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random sequence of `n` chords: every pairing of the `2n`
/// slots and every choice of roles is equally likely.
fn random_slots(n: usize, rng: &mut impl Rng) -> Vec<Endpoint> {
    let mut ids: Vec<u32> = (1..=n as u32).flat_map(|c| [c, c]).collect();
    ids.shuffle(rng);
    let first_role: Vec<Role> =
        (0..n).map(|_| if rng.gen() { Role::Over } else { Role::Under }).collect();
    let mut seen = vec![false; n + 1];
    ids.into_iter()
        .map(|c| {
            let role = first_role[c as usize - 1];
            let role = if seen[c as usize] { role.flip() } else { role };
            seen[c as usize] = true;
            Endpoint { chord: ChordId(c), role }
        })
        .collect()
}

/// A uniformly random signed diagram with `n` chords.
pub fn random_gauss(n: usize, rng: &mut impl Rng) -> GaussDiagram {
    let slots = random_slots(n, rng);
    let signs: BTreeMap<ChordId, Sign> = (1..=n as u32)
        .map(|c| (ChordId(c), if rng.gen() { Sign::Pos } else { Sign::Neg }))
        .collect();
    GaussDiagram::new(slots, signs).expect("well-formed by construction")
}

/// A uniformly random oriented flat diagram with `n` chords.
pub fn random_flat(n: usize, rng: &mut impl Rng) -> FlatDiagram {
    FlatDiagram::new(random_slots(n, rng), true).expect("well-formed by construction")
}

/// A random legal move. The kind is drawn uniformly from the kinds that
/// apply; insertions use uniformly random gaps and variants.
pub fn random_move<D: ChordDiagram>(d: &D, rng: &mut impl Rng) -> MoveApplication {
    let dels = deletions(d);
    let (r1d, r2d): (Vec<_>, Vec<_>) = dels.into_iter().partition(|m| m.kind == MoveKind::R1Delete);
    let r3 = r3_moves(d);
    let mut kinds = vec![MoveKind::R1Insert, MoveKind::R2Insert];
    for (list, kind) in [(&r1d, MoveKind::R1Delete), (&r2d, MoveKind::R2Delete), (&r3, MoveKind::R3)] {
        if !list.is_empty() {
            kinds.push(kind);
        }
    }
    let gaps = all_gaps(d);
    let next = ChordId(d.max_chord() + 1);
    let pick = |list: &[MoveApplication], rng: &mut dyn rand::RngCore| {
        list.choose(rng).expect("nonempty").clone()
    };
    match *kinds.choose(rng).expect("nonempty") {
        MoveKind::R1Delete => pick(&r1d, rng),
        MoveKind::R2Delete => pick(&r2d, rng),
        MoveKind::R3 => pick(&r3, rng),
        MoveKind::R1Insert => {
            let g = *gaps.choose(rng).expect("a diagram has a gap");
            pick(&r1_insertions(d, g, next), rng)
        }
        MoveKind::R2Insert => {
            let g1 = *gaps.choose(rng).expect("a diagram has a gap");
            let g2 = *gaps.choose(rng).expect("a diagram has a gap");
            pick(&r2_insertions(d, (g1, g2), (next, ChordId(next.0 + 1))), rng)
        }
    }
}

/// A random move of the given kind, if one applies.
pub fn random_move_of_kind<D: ChordDiagram>(
    d: &D,
    kind: MoveKind,
    rng: &mut impl Rng,
) -> Option<MoveApplication> {
    let gaps = all_gaps(d);
    let next = ChordId(d.max_chord() + 1);
    let list: Vec<MoveApplication> = match kind {
        MoveKind::R1Delete | MoveKind::R2Delete => {
            deletions(d).into_iter().filter(|m| m.kind == kind).collect()
        }
        MoveKind::R3 => r3_moves(d),
        MoveKind::R1Insert => r1_insertions(d, *gaps.choose(rng)?, next),
        MoveKind::R2Insert => {
            let pair = (*gaps.choose(rng)?, *gaps.choose(rng)?);
            r2_insertions(d, pair, (next, ChordId(next.0 + 1)))
        }
    };
    list.choose(rng).cloned()
}

/// A random diagram with between `min` and `max` chords together with a
/// random move applied to it.
pub fn random_moved_pair(
    min: usize,
    max: usize,
    rng: &mut impl Rng,
) -> (GaussDiagram, MoveApplication, GaussDiagram) {
    let n = rng.gen_range(min..=max);
    let d = random_gauss(n, rng);
    let m = random_move(&d, rng);
    let e = apply_move(&d, &m).expect("generated moves apply");
    (d, m, e)
}

/// A random signed diagram with between 3 and `max` chords that admits an R3
/// move, with one such move. Diagrams are drawn by rejection.
pub fn random_r3_site(max: usize, rng: &mut impl Rng) -> (GaussDiagram, MoveApplication) {
    loop {
        let n = rng.gen_range(3..=max.max(3));
        let d = random_gauss(n, rng);
        if let Some(m) = r3_moves(&d).choose(rng) {
            return (d.clone(), m.clone());
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::moves::find_move;

    #[test]
    fn deterministic_for_a_seed() {
        let a = random_gauss(5, &mut rng(42));
        let b = random_gauss(5, &mut rng(42));
        assert_eq!(a.to_string(), b.to_string());
        assert_eq!(a.chord_count(), 5);
        assert_eq!(random_flat(0, &mut rng(1)), FlatDiagram::unknot());
    }

    #[test]
    fn random_moves_apply_and_invert() {
        let mut r = rng(7);
        for _ in 0..200 {
            let (d, m, e) = random_moved_pair(0, 4, &mut r);
            assert_eq!(e.chord_count() as i64, d.chord_count() as i64 + m.kind.chord_delta());
            assert!(find_move(&e, &d).is_some(), "{d} {m}");
        }
    }

    #[test]
    fn r3_sites_exist() {
        let mut r = rng(3);
        for _ in 0..20 {
            let (d, m) = random_r3_site(5, &mut r);
            assert_eq!(m.kind, MoveKind::R3);
            assert!(apply_move(&d, &m).is_ok());
        }
    }
}
