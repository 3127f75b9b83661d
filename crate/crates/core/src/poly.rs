//! Exact integer Laurent polynomials in `t` or in `t` and `l`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A Laurent polynomial with integer coefficients. Terms are keyed by the
/// exponent pair `(t, l)`; single-variable polynomials keep `l = 0`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    uses_l: bool,
    terms: BTreeMap<(i64, i64), i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// The zero polynomial in `t` and `l`.
    pub fn zero_tl() -> Self {
        LaurentPoly { uses_l: true, terms: BTreeMap::new() }
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    /// `c * t^a`.
    pub fn monomial(c: i64, a: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(c, a, 0);
        p
    }

    /// `c * t^a * l^b`.
    pub fn monomial_tl(c: i64, a: i64, b: i64) -> Self {
        let mut p = Self::zero_tl();
        p.add_term(c, a, b);
        p
    }

    pub fn uses_l(&self) -> bool {
        self.uses_l
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: i64, a: i64, b: i64) {
        if b != 0 {
            self.uses_l = true;
        }
        let entry = self.terms.entry((a, b)).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.terms.remove(&(a, b));
        }
    }

    /// Coefficient of `t^a` (summed over all powers of `l`).
    pub fn coeff(&self, a: i64) -> i64 {
        self.terms.iter().filter(|((x, _), _)| *x == a).map(|(_, c)| c).sum()
    }

    pub fn coeff_tl(&self, a: i64, b: i64) -> i64 {
        self.terms.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.terms.iter().map(|(k, v)| (*k, *v))
    }

    /// Value at `t = 1, l = 1`.
    pub fn eval_at_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Substitutes `l = 1`, giving a polynomial in `t`.
    pub fn at_l_one(&self) -> Self {
        let mut p = Self::zero();
        for ((a, _), c) in &self.terms {
            p.add_term(*c, *a, 0);
        }
        p
    }

    /// Substitutes `t -> t^-1`.
    pub fn invert_t(&self) -> Self {
        let mut p = LaurentPoly { uses_l: self.uses_l, terms: BTreeMap::new() };
        for ((a, b), c) in &self.terms {
            p.add_term(*c, -a, *b);
        }
        p
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut p = LaurentPoly { uses_l: self.uses_l, terms: BTreeMap::new() };
        if k != 0 {
            for (e, c) in &self.terms {
                p.terms.insert(*e, c * k);
            }
        }
        p
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> i64 {
        self.terms.values().map(|c| c.abs()).sum()
    }
}

fn power(f: &mut fmt::Formatter<'_>, var: char, e: i64, first: &mut bool) -> fmt::Result {
    if e == 0 {
        return Ok(());
    }
    if !*first {
        f.write_str("*")?;
    }
    *first = false;
    if e == 1 {
        write!(f, "{var}")
    } else {
        write!(f, "{var}^{e}")
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, ((a, b), c)) in self.terms.iter().enumerate() {
            match (i, *c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            let constant = *a == 0 && *b == 0;
            let mut first = true;
            if constant || mag != 1 {
                write!(f, "{mag}")?;
                first = false;
            }
            power(f, 't', *a, &mut first)?;
            power(f, 'l', *b, &mut first)?;
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = self.clone();
        p.uses_l |= rhs.uses_l;
        for ((a, b), c) in &rhs.terms {
            p.add_term(*c, *a, *b);
        }
        p
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(-1)
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut p = LaurentPoly { uses_l: self.uses_l || rhs.uses_l, terms: BTreeMap::new() };
        for ((a1, b1), c1) in &self.terms {
            for ((a2, b2), c2) in &rhs.terms {
                p.add_term(c1 * c2, a1 + a2, b1 + b2);
            }
        }
        p
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}
