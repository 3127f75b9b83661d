//! Polynomial- and module-valued invariants built from chord indices and
//! smoothings.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diagrams::{ChordDiagram, ChordId, ChordKind, FlatDiagram, FlatLinkDiagram, GaussDiagram, Role};
use crate::error::{Error, Result};
use crate::indices::{flat_indices, ind, ind0, project};
use crate::module::{ModuleElement, ModuleTag, Representative};
use crate::moves::Budget;
use crate::poly::LaurentPoly;
use crate::smoothing::{smooth0, smooth0_flat, smooth1, smooth1_flat};

/// `W(t) = Σ_c w(c) t^Ind(c) - w(K)`.
pub fn writhe_polynomial(d: &GaussDiagram) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for c in d.chords() {
        let w = d.sign(c).expect("signed").value();
        p.add_term(w, ind(d, c).expect("chord exists"), 0);
    }
    p.add_term(-d.writhe(), 0, 0);
    p
}

/// The `n`-th dwrithe `a_n - a_-n`, where `a_k` is the coefficient of `t^k`
/// in the writhe polynomial.
pub fn dwrithe(d: &GaussDiagram, n: i64) -> Result<i64> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    Ok(dwrithe_of(&writhe_polynomial(d), n))
}

fn dwrithe_of(w: &LaurentPoly, n: i64) -> i64 {
    w.coeff(n) - w.coeff(-n)
}

/// `L^n(t, l) = Σ_c w(c) t^Ind(c) l^|dwrithe_n(K_c)| - w(K) l^|dwrithe_n(K)|`
/// with `K_c` the 0-smoothing at `c`.
pub fn lkn_polynomial(d: &GaussDiagram, n: i64) -> Result<LaurentPoly> {
    if n == 0 {
        return Err(Error::ZeroIndex);
    }
    let mut p = LaurentPoly::zero_tl();
    for c in d.chords() {
        let w = d.sign(c).expect("signed").value();
        let kc = smooth0(d, c)?;
        let e = dwrithe(&kc, n)?.abs();
        p.add_term(w, ind(d, c)?, e);
    }
    p.add_term(-d.writhe(), 0, dwrithe(d, n)?.abs());
    Ok(p)
}

/// `Σ_{Ind(c)=0} w(c) (t^Ind0(c) - 1)`.
pub fn wp0_polynomial(d: &GaussDiagram) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    for c in d.chords() {
        if ind(d, c).expect("chord exists") != 0 {
            continue;
        }
        let w = d.sign(c).expect("signed").value();
        p.add_term(w, ind0(d, c).expect("index zero"), 0);
        p.add_term(-w, 0, 0);
    }
    p
}

/// Writhe polynomial of the projection to index-zero chords.
pub fn wp0_via_projection(d: &GaussDiagram) -> LaurentPoly {
    writhe_polynomial(&project(d, 0))
}

/// `|#(mixed chords with tail on circle 1) - #(mixed chords with tail on circle 2)|`.
pub fn flat_linking_number(l: &FlatLinkDiagram) -> u64 {
    let locs = l.locate();
    let total: i64 = l
        .chord_kinds()
        .into_iter()
        .filter(|(_, k)| *k == ChordKind::Mixed)
        .map(|(c, _)| if locs[&c].get(Role::Over).comp == 0 { 1 } else { -1 })
        .sum();
    total.unsigned_abs()
}

/// Sum of the flat signs.
pub fn flat_writhe(f: &FlatDiagram) -> i64 {
    flat_indices(f).values().map(|i| i.signum()).sum()
}

fn collect(
    tag: ModuleTag,
    budget: Budget,
    terms: Vec<(i64, Representative)>,
) -> Result<ModuleElement> {
    let keyed: Vec<_> = terms
        .into_par_iter()
        .filter(|(c, _)| *c != 0)
        .map(|(c, rep)| tag.key(&rep, budget).map(|k| (k, c, rep)))
        .collect::<Result<_>>()?;
    let mut out = ModuleElement::zero(tag, budget);
    for (key, c, rep) in keyed {
        let mut single = ModuleElement::zero(tag, budget);
        single.insert_keyed(key, c, rep);
        out = out.add(&single)?;
    }
    Ok(out)
}

/// `Σ_c w(c) [shadow of K_c] - w(K) [shadow of K]` in unoriented flat knots.
#[allow(non_snake_case)]
pub fn F_invariant(d: &GaussDiagram, budget: Budget) -> Result<ModuleElement> {
    let mut terms = Vec::new();
    for c in d.chords() {
        let w = d.sign(c).expect("signed").value();
        let kc = smooth0(d, c)?.unoriented_shadow();
        terms.push((w, Representative::Knot(kc)));
    }
    terms.push((-d.writhe(), Representative::Knot(d.unoriented_shadow())));
    collect(ModuleTag::M1u, budget, terms)
}

/// `Σ_c w(c) [shadow of L_c] - w(K) [shadow of K ⊔ unknot]` in flat links.
#[allow(non_snake_case)]
pub fn L_invariant(d: &GaussDiagram, budget: Budget) -> Result<ModuleElement> {
    let mut terms = Vec::new();
    for c in d.chords() {
        let w = d.sign(c).expect("signed").value();
        let lc = smooth1(d, c)?.link.shadow();
        terms.push((w, Representative::Link(lc)));
    }
    let base = FlatLinkDiagram::with_trivial_component(&d.shadow());
    terms.push((-d.writhe(), Representative::Link(base)));
    collect(ModuleTag::M2, budget, terms)
}

/// Chord weights for [`flat_module_invariant`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Weight {
    Sign,
    Index,
}

/// Smoothing used by [`flat_module_invariant`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SmoothingMode {
    /// Oriented 0-smoothings, in oriented flat knots.
    Knot,
    /// 1-smoothings, in oriented flat links.
    Link,
}

/// `Σ_c weight(c) [smoothing at c]` for a flat knot, with weight the flat sign
/// or the index of `c`.
pub fn flat_module_invariant(
    f: &FlatDiagram,
    weight: Weight,
    mode: SmoothingMode,
    budget: Budget,
) -> Result<ModuleElement> {
    let f = f.clone().with_orientation(true);
    let indices = flat_indices(&f);
    let mut terms = Vec::new();
    for (c, i) in indices {
        let w = match weight {
            Weight::Sign => i.signum(),
            Weight::Index => i,
        };
        if w == 0 {
            continue;
        }
        let rep = match mode {
            SmoothingMode::Knot => Representative::Knot(smooth0_flat(&f, c)?),
            SmoothingMode::Link => Representative::Link(smooth1_flat(&f, c)?),
        };
        terms.push((w, rep));
    }
    let tag = match mode {
        SmoothingMode::Knot => ModuleTag::M1,
        SmoothingMode::Link => ModuleTag::M2,
    };
    collect(tag, budget, terms)
}

/// Applies the sign-weighted knot-mode operator to every class of an element
/// of the oriented flat knot module, extended linearly.
pub fn apply_flat_operator(e: &ModuleElement) -> Result<ModuleElement> {
    let budget = e.budget();
    e.map_linear(ModuleTag::M1, |rep| match rep {
        Representative::Knot(k) => flat_module_invariant(k, Weight::Sign, SmoothingMode::Knot, budget),
        Representative::Link(_) => Err(Error::ModuleMismatch("expected flat knots".into())),
    })
}

/// Which invariant [`finite_type_defect`] differentiates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DefectTarget {
    F,
    L,
}

fn evaluate(d: &GaussDiagram, inv: DefectTarget, budget: Budget) -> Result<ModuleElement> {
    match inv {
        DefectTarget::F => F_invariant(d, budget),
        DefectTarget::L => L_invariant(d, budget),
    }
}

/// Sets `c` to the given sign, switching it if necessary.
fn with_sign(d: &GaussDiagram, c: ChordId, positive: bool) -> Result<GaussDiagram> {
    let s = d.sign(c).ok_or(Error::UnknownChord(c))?;
    if (s == crate::diagrams::Sign::Pos) == positive {
        Ok(d.clone())
    } else {
        d.switch_crossing(c)
    }
}

/// First or second difference of `inv` across crossing changes at the listed
/// chords: `inv(K+) - inv(K-)`, or `inv(K++) - inv(K+-) - inv(K-+) + inv(K--)`.
pub fn finite_type_defect(
    d: &GaussDiagram,
    chords: &[ChordId],
    inv: DefectTarget,
    budget: Budget,
) -> Result<ModuleElement> {
    for c in chords {
        if !d.contains(*c) {
            return Err(Error::UnknownChord(*c));
        }
    }
    match chords {
        [c] => {
            let plus = evaluate(&with_sign(d, *c, true)?, inv, budget)?;
            let minus = evaluate(&with_sign(d, *c, false)?, inv, budget)?;
            plus.sub(&minus)
        }
        [a, b] if a == b => Err(Error::DuplicateChord(*a)),
        [a, b] => {
            let mut total: Option<ModuleElement> = None;
            for (sa, sb) in [(true, true), (true, false), (false, true), (false, false)] {
                let k = with_sign(&with_sign(d, *a, sa)?, *b, sb)?;
                let v = evaluate(&k, inv, budget)?;
                let v = if sa == sb { v } else { v.negate() };
                total = Some(match total {
                    None => v,
                    Some(t) => t.add(&v)?,
                });
            }
            Ok(total.expect("four terms"))
        }
        _ => Err(Error::ChordListLength(chords.len())),
    }
}
