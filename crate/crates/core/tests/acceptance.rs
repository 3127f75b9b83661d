//! Acceptance criteria. Each criterion prints one PASS or FAIL line; the
//! process exits with a failure status if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::Rng;

use vknot::audit::{axiom_audit, knot_index, link_index, move_invariance, AuditConfig, Sabotage};
use vknot::census::diagrams_with;
use vknot::generate::{random_flat, random_gauss, random_r3_site, rng};
use vknot::indices::{carter_genus, flat_indices, ind, ind0, vertex_and_boundary_counts};
use vknot::invariants::{
    apply_flat_operator, finite_type_defect, flat_linking_number, flat_module_invariant, flat_writhe,
    wp0_polynomial, writhe_polynomial, DefectTarget, SmoothingMode, Weight, F_invariant, L_invariant,
};
use vknot::module::{ModuleElement, ModuleTag, Representative};
use vknot::moves::{apply_move, fingerprint, Budget, Orientation};
use vknot::smoothing::smooth1_flat;
use vknot::{lattice_diagram, ChordDiagram, ChordId, FlatDiagram, FlatLinkDiagram, GaussDiagram};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err(e: vknot::Error) -> String {
    e.to_string()
}

fn gauss(code: &str) -> GaussDiagram {
    GaussDiagram::parse(code).expect("fixture codes parse")
}

fn element(tag: ModuleTag, budget: Budget, terms: Vec<(i64, Representative)>) -> Result<ModuleElement, String> {
    let mut e = ModuleElement::zero(tag, budget);
    for (c, rep) in terms {
        e.add_diagram(c, rep).map_err(err)?;
    }
    Ok(e)
}

fn lattice(p: usize, q: usize) -> FlatDiagram {
    lattice_diagram(p, q).expect("positive lattice sizes")
}

fn lattice_calibration() -> Outcome {
    for p in 1..=4 {
        for q in 1..=4 {
            let f = lattice(p, q);
            let lift = f.positive_lift();
            for c in 1..=(p + q) as u32 {
                let expected = if c as usize <= p { -(q as i64) } else { p as i64 };
                let got = ind(&lift, ChordId(c)).map_err(err)?;
                ensure!(got == expected, "lattice({p},{q}) chord {c}: ind {got}, expected {expected}");
            }
            ensure!(flat_writhe(&f) == q as i64 - p as i64, "lattice({p},{q}) flat writhe {}", flat_writhe(&f));
        }
    }
    Ok("16 lattices, all chord indices and flat writhes exact".into())
}

fn lattice_two_one_links() -> Outcome {
    let budget = Budget::default();
    let f = lattice(2, 1);
    let lift = f.positive_lift();
    let (a, b, c) = (ChordId(3), ChordId(1), ChordId(2));
    let indices: Vec<i64> = [a, b, c].iter().map(|&x| ind(&lift, x)).collect::<Result<_, _>>().map_err(err)?;
    ensure!(indices == vec![2, -1, -1], "indices {indices:?}");
    let la = smooth1_flat(&f, a).map_err(err)?;
    let lb = smooth1_flat(&f, b).map_err(err)?;
    let lc = smooth1_flat(&f, c).map_err(err)?;
    ensure!(flat_linking_number(&la) == 2, "lk(L_a) = {}", flat_linking_number(&la));
    ensure!(flat_linking_number(&lb) == 1, "lk(L_b) = {}", flat_linking_number(&lb));
    let key = |l: &FlatLinkDiagram| ModuleTag::M2.key(&Representative::Link(l.clone()), budget).map_err(err);
    ensure!(key(&lb)? == key(&lc)?, "L_b and L_c differ");
    let by_index = flat_module_invariant(&f, Weight::Index, SmoothingMode::Link, budget).map_err(err)?;
    let expected = element(
        ModuleTag::M2,
        budget,
        vec![(2, Representative::Link(la.clone())), (-2, Representative::Link(lb.clone()))],
    )?;
    ensure!(by_index == expected, "index-weighted link invariant {by_index}");
    let by_sign = flat_module_invariant(&f, Weight::Sign, SmoothingMode::Link, budget).map_err(err)?;
    let expected = element(ModuleTag::M2, budget, vec![(1, Representative::Link(la)), (-2, Representative::Link(lb))])?;
    ensure!(by_sign == expected, "sign-weighted link invariant {by_sign}");
    ensure!(by_sign.l1_norm() == 3, "coefficient norm {}", by_sign.l1_norm());
    Ok(format!("index-weighted {by_index}; sign-weighted {by_sign}"))
}

/// Expected sign-weighted knot invariant of lattice(n, 1), as coefficients on
/// lattice classes and the unknot.
fn lattice_closed_form(n: usize) -> Vec<(i64, Option<(usize, usize)>)> {
    let k = n / 2;
    let mut terms = Vec::new();
    if n % 2 == 0 {
        for i in 2..=k {
            terms.push((-1, Some((2 * i - 1, 1))));
            terms.push((-1, Some((1, 2 * i - 1))));
        }
        terms.push((-1, None));
    } else {
        for i in 1..=k {
            terms.push((-1, Some((2 * i, 1))));
            terms.push((-1, Some((1, 2 * i))));
        }
    }
    terms
}

fn lattice_knot_closed_form() -> Outcome {
    let budget = Budget::default();
    let mut notes = Vec::new();
    for n in 3..=5 {
        let value = flat_module_invariant(&lattice(n, 1), Weight::Sign, SmoothingMode::Knot, budget).map_err(err)?;
        let terms = lattice_closed_form(n)
            .into_iter()
            .map(|(c, shape)| {
                let knot = shape.map_or_else(FlatDiagram::unknot, |(p, q)| lattice(p, q));
                (c, Representative::Knot(knot))
            })
            .collect();
        let expected = element(ModuleTag::M1, budget, terms)?;
        ensure!(value == expected, "n = {n}: got {value}, expected {expected}");
        let squared = apply_flat_operator(&value).map_err(err)?;
        ensure!(squared.is_zero(), "n = {n}: operator squared gives {squared}");
        notes.push(format!("n={n}: {} terms", value.len()));
    }
    Ok(format!("{}; squared operator vanishes", notes.join(", ")))
}

fn virtual_trefoil_links() -> Outcome {
    let budget = Budget::default();
    let hopf = FlatLinkDiagram::parse("O1|U1").map_err(err)?;
    ensure!(flat_linking_number(&hopf) == 1, "lk(Hopf) = {}", flat_linking_number(&hopf));
    let value = L_invariant(&gauss("O1+O2+U1+U2+"), budget).map_err(err)?;
    let expected = element(
        ModuleTag::M2,
        budget,
        vec![(2, Representative::Link(hopf)), (-2, Representative::Link(FlatLinkDiagram::trivial()))],
    )?;
    ensure!(value == expected, "got {value}");
    Ok(format!("L = {value}"))
}

fn classical_vanishing() -> Outcome {
    let budget = Budget::default();
    for code in ["O1+U2+O3+U1+O2+U3+", "U1+O2-U3-O1+U4+O3-U2-O4+"] {
        let d = gauss(code);
        ensure!(carter_genus(&d.shadow()) == 0, "{code} is not classical");
        ensure!(writhe_polynomial(&d).is_zero(), "{code}: W = {}", writhe_polynomial(&d));
        ensure!(wp0_polynomial(&d).is_zero(), "{code}: wp0 = {}", wp0_polynomial(&d));
        let f = F_invariant(&d, budget).map_err(err)?;
        ensure!(f.is_zero(), "{code}: F = {f}");
        let l = L_invariant(&d, budget).map_err(err)?;
        ensure!(l.is_zero(), "{code}: L = {l}");
    }
    let mut count = 0;
    for n in 0..=2 {
        for d in diagrams_with(n) {
            let f = F_invariant(&d, budget).map_err(err)?;
            ensure!(f.is_zero(), "{d}: F = {f}");
            count += 1;
        }
    }
    Ok(format!("trefoil and figure-eight vanish; F = 0 on all {count} diagrams with at most 2 chords"))
}

fn move_invariance_suite() -> Outcome {
    let start = Instant::now();
    let report = move_invariance(&AuditConfig::new(10_000, 2024, Budget::default())).map_err(err)?;
    let checks: u64 = report.invariants.values().map(|s| s.checks).sum();
    ensure!(report.violations() == 0, "{} violations: {:?}", report.violations(), report.invariants);
    ensure!(start.elapsed().as_secs() <= 300, "took {:?}", start.elapsed());
    Ok(format!("{} trials, {} invariant checks, 0 violations in {:.1?}", report.trials, checks, start.elapsed()))
}

fn axiom_suite() -> Outcome {
    let report = axiom_audit(&AuditConfig::new(10_000, 2024, Budget::default())).map_err(err)?;
    ensure!(report.violations() == 0, "{} violations: {:?}", report.violations(), report.clauses);
    let checks: u64 = report.clauses.iter().map(|c| c.knot_checks + c.link_checks).sum();
    Ok(format!(
        "{} trials, {} index comparisons, 0 violations, {} unresolved",
        report.trials,
        checks,
        report.unresolved()
    ))
}

fn degree_one() -> Outcome {
    let budget = Budget::default();
    let mut r = rng(8);
    for trial in 0..1000 {
        let n = r.gen_range(2..=5);
        let d = random_gauss(n, &mut r);
        let chords: Vec<ChordId> = d.chords();
        let pair: Vec<ChordId> = chords.choose_multiple(&mut r, 2).copied().collect();
        for target in [DefectTarget::F, DefectTarget::L] {
            let defect = finite_type_defect(&d, &pair, target, budget).map_err(err)?;
            ensure!(defect.is_zero(), "trial {trial}: {d} at {pair:?}, {target:?} defect {defect}");
        }
    }
    let vt = gauss("O1+O2+U1+U2+");
    for c in [ChordId(1), ChordId(2)] {
        let defect = finite_type_defect(&vt, &[c], DefectTarget::L, budget).map_err(err)?;
        ensure!(!defect.is_zero(), "one-chord defect at {c} vanishes");
    }
    let one = finite_type_defect(&vt, &[ChordId(1)], DefectTarget::L, budget).map_err(err)?;
    Ok(format!("1000 two-chord defects vanish; one-chord L defect on the virtual trefoil is {one}"))
}

fn r3_relation() -> Outcome {
    let mut r = rng(9);
    for trial in 0..1000 {
        let (d, m) = random_r3_site(6, &mut r);
        let e = apply_move(&d, &m).map_err(err)?;
        for g in [&d, &e] {
            let i: Vec<i64> = m.chords.iter().map(|&c| ind(g, c)).collect::<Result<_, _>>().map_err(err)?;
            let holds = i[0] == i[1] + i[2] || i[1] == i[0] + i[2] || i[2] == i[0] + i[1];
            ensure!(holds, "trial {trial}: {g} chords {:?} indices {i:?}", m.chords);
        }
    }
    Ok("1000 sites, relation holds before and after each move".into())
}

fn total_index_vanishes() -> Outcome {
    let mut r = rng(10);
    for trial in 0..1000 {
        let n = r.gen_range(0..=8);
        let f = random_flat(n, &mut r);
        let total: i64 = flat_indices(&f).values().sum();
        ensure!(total == 0, "trial {trial}: {f} has total index {total}");
    }
    Ok("1000 random flat diagrams with up to 8 chords".into())
}

fn genus_regression() -> Outcome {
    let trefoil = gauss("O1+U2+O3+U1+O2+U3+").shadow();
    let (n, m) = vertex_and_boundary_counts(&trefoil);
    ensure!((n, m) == (3, 5), "trefoil counts {n}, {m}");
    ensure!(carter_genus(&trefoil) == 0, "trefoil genus {}", carter_genus(&trefoil));
    let lattice_genus = carter_genus(&lattice(1, 1));
    ensure!(lattice_genus == 1, "lattice(1,1) genus {lattice_genus}");
    let alternative = (m as i64 - n as i64) / 2 + 1;
    ensure!(alternative != 0, "alternative form agrees on the trefoil");
    Ok(format!("trefoil: n=3, m=5, genus 0 (the form (m-n)/2+1 would give {alternative}); lattice(1,1): genus 1"))
}

/// A diagram and a chord `c` such that virtualizing `c` changes its
/// zero-projection index while leaving the smoothing classes at `c`
/// unchanged.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Witness {
    code: String,
    c: u32,
}

const WITNESS: (&str, u32) = ("O1+O2+O3+O4+U1+U3+U4+U2+", 3);

/// Whether virtualizing `v` keeps `Ind(c) = 0`, changes `Ind0(c)`, and leaves
/// the classes of both smoothings at `c` provably unchanged. `None` means the
/// smoothing classes could be neither identified nor separated.
fn virtualization_changes_ind0(
    d: &GaussDiagram,
    c: ChordId,
    v: ChordId,
    budget: Budget,
) -> Result<Option<bool>, String> {
    let e = d.virtualize(v).map_err(err)?;
    if ind(d, c).map_err(err)? != 0 || ind(&e, c).map_err(err)? != 0 {
        return Ok(Some(false));
    }
    if ind0(d, c).map_err(err)? == ind0(&e, c).map_err(err)? {
        return Ok(Some(false));
    }
    let knots = [d, &e].map(|g| knot_index(g, c, Sabotage::None).map(|k| fingerprint(&k, Orientation::Unoriented, budget)));
    let links = [d, &e].map(|g| {
        link_index(g, c, Sabotage::None).map(|l| fingerprint(&l.with_ordered(false), Orientation::Oriented, budget))
    });
    let [k0, k1] = knots;
    let [l0, l1] = links;
    let (k0, k1, l0, l1) = (k0.map_err(err)?, k1.map_err(err)?, l0.map_err(err)?, l1.map_err(err)?);
    if k0.invariants != k1.invariants || l0.invariants != l1.invariants {
        return Ok(Some(false));
    }
    if k0 == k1 && l0 == l1 {
        return Ok(Some(true));
    }
    Ok(None)
}

fn virtualization_phenomenon() -> Outcome {
    let budget = Budget::default();
    let mut found = None;
    'search: for n in 1..=5 {
        for d in diagrams_with(n) {
            for c in d.chords() {
                if virtualization_changes_ind0(&d, c, c, budget)? == Some(true) {
                    found = Some(Witness { code: d.to_string(), c: c.0 });
                    break 'search;
                }
            }
        }
    }
    let found = found.ok_or("no witness among diagrams with at most 5 chords")?;
    let frozen = Witness { code: WITNESS.0.into(), c: WITNESS.1 };
    ensure!(found == frozen, "search found {found:?}, fixture is {frozen:?}");
    let d = gauss(&frozen.code);
    let c = ChordId(frozen.c);
    ensure!(virtualization_changes_ind0(&d, c, c, budget)? == Some(true), "fixture no longer a witness");
    let e = d.virtualize(c).map_err(err)?;

    let (mut other_found, mut other_undecided) = (0, 0);
    for n in 2..=5 {
        for d in diagrams_with(n) {
            let chords = d.chords();
            for &c in &chords {
                for &v in chords.iter().filter(|&&v| v != c) {
                    match virtualization_changes_ind0(&d, c, v, budget)? {
                        Some(true) => other_found += 1,
                        Some(false) => {}
                        None => other_undecided += 1,
                    }
                }
            }
        }
    }
    Ok(format!(
        "{} at c={}: ind0 {} -> {} under virtualization at c; virtualizing a different chord: {} witnesses, {} undecided",
        frozen.code,
        frozen.c,
        ind0(&d, c).map_err(err)?,
        ind0(&e, c).map_err(err)?,
        other_found,
        other_undecided
    ))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 12] = [
        ("lattice calibration", lattice_calibration),
        ("lattice(2,1) link invariants", lattice_two_one_links),
        ("lattice(n,1) knot invariant closed form", lattice_knot_closed_form),
        ("virtual trefoil link invariant", virtual_trefoil_links),
        ("classical vanishing", classical_vanishing),
        ("move invariance", move_invariance_suite),
        ("chord index axioms", axiom_suite),
        ("finite type degree one", degree_one),
        ("R3 index relation", r3_relation),
        ("total flat index", total_index_vanishes),
        ("genus regression", genus_regression),
        ("virtualization phenomenon", virtualization_phenomenon),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            Err(p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_else(|| "panic".into()))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failures} failed", criteria.len() - failures);
    if failures > 0 {
        std::process::exit(1);
    }
}
