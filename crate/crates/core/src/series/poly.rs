use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{ExponentVector, Rational, SeriesError, VariableId};

/// A finite sparse Laurent polynomial with exact rational coefficients.
///
/// Zero coefficients are never stored, so structural equality is value
/// equality.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    terms: BTreeMap<ExponentVector, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::monomial(ExponentVector::one(), c)
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(Rational::from_integer(n.into()))
    }

    pub fn monomial(m: ExponentVector, c: Rational) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(m, c);
        p
    }

    /// `var^exp` with coefficient one.
    pub fn var_pow(var: VariableId, exp: i64) -> Self {
        Self::monomial(ExponentVector::var(var, exp), Rational::one())
    }

    pub fn var(var: VariableId) -> Self {
        Self::var_pow(var, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (ExponentVector, Rational)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    /// Adds `c * m` in place, removing the entry if it cancels.
    pub fn add_term(&mut self, m: ExponentVector, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExponentVector, &Rational)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (ExponentVector, Rational)> {
        self.terms.into_iter()
    }

    pub fn coeff(&self, m: &ExponentVector) -> Rational {
        self.terms.get(m).cloned().unwrap_or_else(Rational::zero)
    }

    /// The constant coefficient if the polynomial has no other terms.
    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self.terms.get(&ExponentVector::one()).cloned(),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<VariableId> {
        self.terms.keys().flat_map(|m| m.variables().cloned()).collect()
    }

    pub fn contains_var(&self, var: &VariableId) -> bool {
        self.terms.keys().any(|m| m.exponent(var) != 0)
    }

    pub fn max_exponent(&self, var: &VariableId) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(var)).max()
    }

    pub fn min_exponent(&self, var: &VariableId) -> Option<i64> {
        self.terms.keys().map(|m| m.exponent(var)).min()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &ExponentVector, c: &Rational) -> Result<Self, SeriesError> {
        if c.is_zero() {
            return Ok(LaurentPoly::zero());
        }
        let mut terms = BTreeMap::new();
        for (k, x) in &self.terms {
            terms.insert(k.checked_mul(m)?, x * c);
        }
        Ok(LaurentPoly { terms })
    }

    pub fn try_mul(&self, other: &LaurentPoly) -> Result<Self, SeriesError> {
        self.try_mul_filtered(other, |_| true)
    }

    /// Product keeping only the monomials accepted by `keep`. Filtering
    /// during the product is the same as filtering afterwards.
    pub fn try_mul_filtered(
        &self,
        other: &LaurentPoly,
        keep: impl Fn(&ExponentVector) -> bool,
    ) -> Result<Self, SeriesError> {
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &large.terms {
                let m = ma.checked_mul(mb)?;
                if keep(&m) {
                    out.add_term(m, ca * cb);
                }
            }
        }
        Ok(out)
    }

    pub fn try_pow(&self, n: u32) -> Result<Self, SeriesError> {
        let mut acc = LaurentPoly::one();
        for _ in 0..n {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn filter(&self, keep: impl Fn(&ExponentVector, &Rational) -> bool) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, c)| keep(m, c))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Replaces the variable `from` by `to` throughout.
    pub fn rename(&self, from: &VariableId, to: &VariableId) -> Result<Self, SeriesError> {
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.rename(from, to)?, c.clone());
        }
        Ok(out)
    }

    /// Groups terms by their exponent of `var`; each group has `var` removed.
    pub fn group_by_exponent(&self, var: &VariableId) -> BTreeMap<i64, LaurentPoly> {
        let mut groups: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            groups
                .entry(m.exponent(var))
                .or_default()
                .add_term(m.without(var), c.clone());
        }
        groups
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

/// Panics on exponent overflow; use [`LaurentPoly::try_mul`] to handle it.
impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("exponent overflow")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Prints `2*u1^-3*u2^-2 - 1/3*g*u1^-2`; the zero polynomial prints as `0`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}

/// A free graded commutative ring on named generators, optionally truncated
/// above a total degree.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BaseRing {
    degrees: BTreeMap<VariableId, i64>,
    degree_cap: Option<i64>,
}

impl BaseRing {
    pub fn new(generators: impl IntoIterator<Item = (VariableId, i64)>, degree_cap: Option<i64>) -> Self {
        BaseRing {
            degrees: generators.into_iter().collect(),
            degree_cap,
        }
    }

    pub fn degree_cap(&self) -> Option<i64> {
        self.degree_cap
    }

    pub fn generator_degree(&self, var: &VariableId) -> Option<i64> {
        self.degrees.get(var).copied()
    }

    /// Graded degree of the base part of a monomial; undeclared variables
    /// count as degree zero.
    pub fn degree(&self, m: &ExponentVector) -> i64 {
        m.iter()
            .filter_map(|(v, e)| self.degrees.get(v).map(|d| d * e))
            .sum()
    }

    /// Drops every term whose base degree exceeds the cap.
    pub fn truncate(&self, p: LaurentPoly) -> LaurentPoly {
        match self.degree_cap {
            None => p,
            Some(cap) => LaurentPoly::from_terms(p.into_terms().filter(|(m, _)| self.degree(m) <= cap)),
        }
    }
}
