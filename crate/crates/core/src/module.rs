//! Free integer modules on flat classes.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::diagrams::{FlatDiagram, FlatLinkDiagram};
use crate::error::{Error, Result};
use crate::moves::{fingerprint, Budget, Fingerprint, Orientation};

/// Which module an element lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ModuleTag {
    /// Unoriented flat knots.
    M1u,
    /// Oriented flat knots.
    M1,
    /// Oriented two-component flat links.
    M2,
}

/// A diagram standing for a basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Representative {
    Knot(FlatDiagram),
    Link(FlatLinkDiagram),
}

impl fmt::Display for Representative {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Representative::Knot(d) => d.fmt(f),
            Representative::Link(d) => d.fmt(f),
        }
    }
}

impl ModuleTag {
    /// Fingerprint of a representative in this module.
    pub fn key(self, rep: &Representative, budget: Budget) -> Result<Fingerprint> {
        match (self, rep) {
            (ModuleTag::M1u, Representative::Knot(d)) => {
                Ok(fingerprint(d, Orientation::Unoriented, budget))
            }
            (ModuleTag::M1, Representative::Knot(d)) => {
                Ok(fingerprint(d, Orientation::Oriented, budget))
            }
            (ModuleTag::M2, Representative::Link(d)) => {
                Ok(fingerprint(&d.clone().with_ordered(false), Orientation::Oriented, budget))
            }
            (tag, rep) => Err(Error::ModuleMismatch(format!("{rep} is not a basis element of {tag:?}"))),
        }
    }
}

/// A finite integer combination of flat classes. Keys are fingerprints
/// computed under one budget; each key keeps one representative diagram.
#[derive(Clone, Debug)]
pub struct ModuleElement {
    tag: ModuleTag,
    budget: Budget,
    terms: BTreeMap<Fingerprint, (i64, Representative)>,
}

impl PartialEq for ModuleElement {
    fn eq(&self, other: &Self) -> bool {
        self.tag == other.tag
            && self.budget == other.budget
            && self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((k1, (c1, _)), (k2, (c2, _)))| {
                k1 == k2 && c1 == c2
            })
    }
}
impl Eq for ModuleElement {}

impl ModuleElement {
    pub fn zero(tag: ModuleTag, budget: Budget) -> Self {
        ModuleElement { tag, budget, terms: BTreeMap::new() }
    }

    pub fn tag(&self) -> ModuleTag {
        self.tag
    }

    pub fn budget(&self) -> Budget {
        self.budget
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `coeff` times the class of `rep`.
    pub fn add_diagram(&mut self, coeff: i64, rep: Representative) -> Result<()> {
        let key = self.tag.key(&rep, self.budget)?;
        self.insert_keyed(key, coeff, rep);
        Ok(())
    }

    pub(crate) fn insert_keyed(&mut self, key: Fingerprint, coeff: i64, rep: Representative) {
        if coeff == 0 {
            return;
        }
        let entry = self.terms.entry(key.clone()).or_insert((0, rep));
        entry.0 += coeff;
        if entry.0 == 0 {
            self.terms.remove(&key);
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.tag != other.tag {
            return Err(Error::ModuleMismatch(format!("{:?} vs {:?}", self.tag, other.tag)));
        }
        if self.budget != other.budget {
            return Err(Error::ModuleMismatch("elements computed under different budgets".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (k, (c, rep)) in &other.terms {
            out.insert_keyed(k.clone(), *c, rep.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        self.scalar(-1)
    }

    pub fn scalar(&self, k: i64) -> Self {
        let mut out = Self::zero(self.tag, self.budget);
        if k != 0 {
            for (key, (c, rep)) in &self.terms {
                out.terms.insert(key.clone(), (c * k, rep.clone()));
            }
        }
        out
    }

    pub fn coefficient_sum(&self) -> i64 {
        self.terms.values().map(|(c, _)| c).sum()
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> i64 {
        self.terms.values().map(|(c, _)| c.abs()).sum()
    }

    pub fn coefficient(&self, key: &Fingerprint) -> i64 {
        self.terms.get(key).map_or(0, |(c, _)| *c)
    }

    /// Coefficient of the class of `rep`.
    pub fn coefficient_of(&self, rep: &Representative) -> Result<i64> {
        Ok(self.coefficient(&self.tag.key(rep, self.budget)?))
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Fingerprint, i64, &Representative)> {
        self.terms.iter().map(|(k, (c, r))| (k, *c, r))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Coefficients in key order.
    pub fn coefficients(&self) -> Vec<i64> {
        self.terms.values().map(|(c, _)| *c).collect()
    }

    /// Replaces every class by its reverse.
    pub fn reverse_classes(&self) -> Result<Self> {
        self.map_linear(self.tag, |rep| {
            let rev = match rep {
                Representative::Knot(d) => Representative::Knot(d.reverse()),
                Representative::Link(d) => Representative::Link(d.reverse()),
            };
            let mut e = ModuleElement::zero(self.tag, self.budget);
            e.add_diagram(1, rev)?;
            Ok(e)
        })
    }

    /// Extends `f`, given on basis elements, linearly.
    pub fn map_linear(
        &self,
        tag: ModuleTag,
        f: impl Fn(&Representative) -> Result<ModuleElement>,
    ) -> Result<Self> {
        let mut out = Self::zero(tag, self.budget);
        for (c, rep) in self.terms.values() {
            out = out.add(&f(rep)?.scalar(*c))?;
        }
        Ok(out)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (key, (c, _))) in self.terms.iter().enumerate() {
            match (i, *c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "[{}]", key.reduced_code)?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic() {
        let b = Budget::default();
        let mut a = ModuleElement::zero(ModuleTag::M2, b);
        a.add_diagram(2, Representative::Link(FlatLinkDiagram::parse("O1|U1").unwrap())).unwrap();
        a.add_diagram(-2, Representative::Link(FlatLinkDiagram::trivial())).unwrap();
        assert_eq!(a.to_string(), "2*[O1|U1] - 2*[|]");
        assert_eq!(a.coefficient_sum(), 0);
        assert!(a.add(&a.negate()).unwrap().is_zero());
        assert_eq!(a.scalar(0), ModuleElement::zero(ModuleTag::M2, b));
        let other = ModuleElement::zero(ModuleTag::M1, b);
        assert!(a.add(&other).is_err());
        let other_budget = ModuleElement::zero(ModuleTag::M2, Budget::new(5, 0));
        assert!(a.add(&other_budget).is_err());
        assert!(a.clone().add_diagram(1, Representative::Knot(FlatDiagram::unknot())).is_err());
    }
}
