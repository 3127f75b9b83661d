//! Randomized properties checked against direct computations.

use proptest::prelude::*;

use vknot::generate::{random_flat, random_gauss, random_move, rng};
use vknot::indices::{flat_indices, ind, project};
use vknot::invariants::{lkn_polynomial, writhe_polynomial, F_invariant, L_invariant};
use vknot::moves::{apply_move, canonical_code, inverse_move, Budget, Orientation};
use vknot::{lattice_diagram, ChordDiagram, ChordId, Endpoint, GaussDiagram, Role};

fn diagram(max: usize) -> impl Strategy<Value = GaussDiagram> {
    (0..=max, any::<u64>()).prop_map(|(n, seed)| random_gauss(n, &mut rng(seed)))
}

/// Index of `c` read off the circle: every chord with exactly one endpoint
/// strictly between the tail and the head of `c` contributes its sign when
/// its own tail lies there and minus its sign otherwise.
fn index_oracle(slots: &[Endpoint], signs: impl Fn(ChordId) -> i64, c: ChordId) -> i64 {
    let n = slots.len();
    let at = |e: Endpoint| slots.iter().position(|&s| s == e).expect("endpoint present");
    let (tail, head) = (at(Endpoint { chord: c, role: Role::Over }), at(Endpoint { chord: c, role: Role::Under }));
    let inside = |i: usize| (i + n - tail) % n < (head + n - tail) % n && i != tail;
    let mut total = 0;
    for e in slots.iter().filter(|e| e.role == Role::Over && e.chord != c) {
        let t = at(*e);
        let h = at(Endpoint { chord: e.chord, role: Role::Under });
        if inside(t) != inside(h) {
            total += if inside(t) { signs(e.chord) } else { -signs(e.chord) };
        }
    }
    total
}

#[test]
fn oracle_matches_lattice_values() {
    let lift = lattice_diagram(2, 1).unwrap().positive_lift();
    let got: Vec<i64> = (1..=3).map(|c| index_oracle(lift.slots(), |_| 1, ChordId(c))).collect();
    assert_eq!(got, vec![-1, -1, 2]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn index_matches_oracle(d in diagram(6)) {
        for c in d.chords() {
            let expected = index_oracle(d.slots(), |e| d.sign(e).unwrap().value(), c);
            prop_assert_eq!(ind(&d, c).unwrap(), expected);
        }
    }

    #[test]
    fn flat_index_matches_oracle(n in 0usize..=6, seed in any::<u64>()) {
        let f = random_flat(n, &mut rng(seed));
        for (c, i) in flat_indices(&f) {
            prop_assert_eq!(i, index_oracle(f.slots(), |_| 1, c));
        }
    }

    #[test]
    fn canonical_code_ignores_basepoint_and_labels(d in diagram(6), k in 0usize..12) {
        let code = canonical_code(&d, Orientation::Oriented);
        let mut slots = d.slots().to_vec();
        if !slots.is_empty() {
            let len = slots.len();
            slots.rotate_left(k % len);
        }
        let rotated = GaussDiagram::new(slots, d.signs().clone()).unwrap();
        prop_assert_eq!(canonical_code(&rotated, Orientation::Oriented), code.clone());
        let reparsed = GaussDiagram::parse(&d.to_string()).unwrap();
        prop_assert_eq!(canonical_code(&reparsed, Orientation::Oriented), code);
    }

    #[test]
    fn moves_have_inverses(d in diagram(5), seed in any::<u64>()) {
        let m = random_move(&d, &mut rng(seed));
        let inv = inverse_move(&d, &m).unwrap();
        let after = apply_move(&d, &m).unwrap();
        prop_assert_eq!(apply_move(&after, &inv).unwrap(), d);
    }

    #[test]
    fn writhe_polynomial_identities(d in diagram(6)) {
        let w = writhe_polynomial(&d);
        prop_assert_eq!(w.eval_at_one(), 0);
        for n in 1..=3 {
            prop_assert_eq!(lkn_polynomial(&d, n).unwrap().at_l_one(), w.clone());
        }
    }

    #[test]
    fn reversal_negates_and_switching_elsewhere_preserves_index(d in diagram(6)) {
        let r = d.reverse();
        for c in d.chords() {
            let i = ind(&d, c).unwrap();
            prop_assert_eq!(ind(&r, c).unwrap(), -i);
            for e in d.chords().into_iter().filter(|&e| e != c) {
                prop_assert_eq!(ind(&d.switch_crossing(e).unwrap(), c).unwrap(), i);
            }
        }
    }

    #[test]
    fn projection_keeps_divisible_chords(d in diagram(6), n in 0u64..4) {
        prop_assert_eq!(project(&d, 1), d.clone());
        let p = project(&d, n);
        for c in d.chords() {
            let i = ind(&d, c).unwrap();
            let keep = if n == 0 { i == 0 } else { i % n as i64 == 0 };
            prop_assert_eq!(p.chords().contains(&c), keep);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn module_symmetries(d in diagram(4)) {
        let budget = Budget::default();
        let f = F_invariant(&d, budget).unwrap();
        prop_assert_eq!(f.coefficient_sum(), 0);
        prop_assert_eq!(F_invariant(&d.mirror(), budget).unwrap(), f.negate());
        prop_assert_eq!(F_invariant(&d.reverse(), budget).unwrap(), f);
        let l = L_invariant(&d, budget).unwrap();
        prop_assert_eq!(L_invariant(&d.mirror(), budget).unwrap(), l.negate());
        prop_assert_eq!(L_invariant(&d.reverse(), budget).unwrap(), l.reverse_classes().unwrap());
    }
}
