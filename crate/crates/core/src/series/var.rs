use std::fmt;
use std::sync::Arc;

use super::SeriesError;

/// Role of a formal variable. The declaration order is the primary sort key
/// for variables, so tower variables always come first in printed monomials.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarKind {
    /// The generating-function variables `u_1..u_k` (and the reserved pivot).
    Tower,
    /// Extra variables attached to a level.
    Aux,
    /// Tautological classes `c_1..c_k`; only the stepwise oracle uses them.
    Taut,
    /// Generators of the base coefficient ring.
    Base,
}

/// A named formal variable. Ordered by `(kind, level, name)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VariableId {
    kind: VarKind,
    level: u32,
    name: Arc<str>,
}

impl VariableId {
    pub fn new(kind: VarKind, level: u32, name: impl AsRef<str>) -> Self {
        VariableId {
            kind,
            level,
            name: Arc::from(name.as_ref()),
        }
    }

    /// `u_i`, the generating variable of level `i`.
    pub fn tower(level: u32) -> Self {
        Self::new(VarKind::Tower, level, format!("u{level}"))
    }

    /// The reserved variable in which every `Q` factor is written.
    pub fn pivot() -> Self {
        Self::new(VarKind::Tower, 0, "u")
    }

    /// `c_i`, the tautological class of level `i`.
    pub fn taut(level: u32) -> Self {
        Self::new(VarKind::Taut, level, format!("c{level}"))
    }

    pub fn aux(name: impl AsRef<str>, level: u32) -> Self {
        Self::new(VarKind::Aux, level, name)
    }

    pub fn base(name: impl AsRef<str>) -> Self {
        Self::new(VarKind::Base, 0, name)
    }

    pub fn kind(&self) -> VarKind {
        self.kind
    }

    pub fn level(&self) -> u32 {
        self.level
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn is_base(&self) -> bool {
        self.kind == VarKind::Base
    }
}

impl fmt::Debug for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

impl fmt::Display for VariableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name)
    }
}

/// A Laurent monomial: a sorted list of `(variable, exponent)` pairs with no
/// zero exponents.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ExponentVector {
    entries: Vec<(VariableId, i64)>,
}

impl ExponentVector {
    /// The empty monomial `1`.
    pub fn one() -> Self {
        ExponentVector::default()
    }

    pub fn var(var: VariableId, exp: i64) -> Self {
        Self::from_pairs([(var, exp)])
    }

    /// Builds a canonical monomial; repeated variables have their exponents
    /// summed. Panics on exponent overflow.
    pub fn from_pairs(pairs: impl IntoIterator<Item = (VariableId, i64)>) -> Self {
        Self::try_from_pairs(pairs).expect("exponent overflow")
    }

    pub fn try_from_pairs(pairs: impl IntoIterator<Item = (VariableId, i64)>) -> Result<Self, SeriesError> {
        let mut entries: Vec<(VariableId, i64)> = pairs.into_iter().collect();
        entries.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(VariableId, i64)> = Vec::with_capacity(entries.len());
        for (v, e) in entries {
            match out.last_mut() {
                Some((last, acc)) if *last == v => {
                    *acc = acc.checked_add(e).ok_or(SeriesError::ExponentOverflow)?;
                }
                _ => out.push((v, e)),
            }
        }
        out.retain(|(_, e)| *e != 0);
        Ok(ExponentVector { entries: out })
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn exponent(&self, var: &VariableId) -> i64 {
        self.entries
            .binary_search_by(|(v, _)| v.cmp(var))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&VariableId, i64)> + '_ {
        self.entries.iter().map(|(v, e)| (v, *e))
    }

    pub fn variables(&self) -> impl Iterator<Item = &VariableId> + '_ {
        self.entries.iter().map(|(v, _)| v)
    }

    pub fn checked_mul(&self, other: &ExponentVector) -> Result<ExponentVector, SeriesError> {
        // Merge of two sorted lists.
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let e = a[i].1.checked_add(b[j].1).ok_or(SeriesError::ExponentOverflow)?;
                    if e != 0 {
                        out.push((a[i].0.clone(), e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Ok(ExponentVector { entries: out })
    }

    pub fn checked_inverse(&self) -> Result<ExponentVector, SeriesError> {
        let entries = self
            .entries
            .iter()
            .map(|(v, e)| {
                e.checked_neg()
                    .map(|n| (v.clone(), n))
                    .ok_or(SeriesError::ExponentOverflow)
            })
            .collect::<Result<_, _>>()?;
        Ok(ExponentVector { entries })
    }

    /// Splits into the part over variables selected by `pred` and the rest.
    pub fn split(&self, pred: impl Fn(&VariableId) -> bool) -> (ExponentVector, ExponentVector) {
        let (inside, outside): (Vec<_>, Vec<_>) = self.entries.iter().cloned().partition(|(v, _)| pred(v));
        (
            ExponentVector { entries: inside },
            ExponentVector { entries: outside },
        )
    }

    pub fn without(&self, var: &VariableId) -> ExponentVector {
        self.split(|v| v == var).1
    }

    /// Sum of exponents over the variables selected by `pred`.
    pub fn degree_where(&self, pred: impl Fn(&VariableId) -> bool) -> i64 {
        self.entries
            .iter()
            .filter(|(v, _)| pred(v))
            .map(|(_, e)| *e)
            .sum()
    }

    pub fn rename(&self, from: &VariableId, to: &VariableId) -> Result<ExponentVector, SeriesError> {
        Self::try_from_pairs(self.entries.iter().map(|(v, e)| {
            if v == from {
                (to.clone(), *e)
            } else {
                (v.clone(), *e)
            }
        }))
    }
}

impl fmt::Debug for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return f.write_str("1");
        }
        for (i, (v, e)) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_drops_zero_exponents() {
        let u = VariableId::tower(1);
        let m = ExponentVector::from_pairs([(u.clone(), 2), (u.clone(), -2)]);
        assert!(m.is_one());
        assert_eq!(m, ExponentVector::one());
    }

    #[test]
    fn variable_order_is_kind_then_level_then_name() {
        let mut vars = [
            VariableId::base("a"),
            VariableId::taut(1),
            VariableId::aux("v", 1),
            VariableId::tower(2),
            VariableId::tower(1),
        ];
        vars.sort();
        let names: Vec<_> = vars.iter().map(|v| v.name().to_string()).collect();
        assert_eq!(names, ["u1", "u2", "v", "c1", "a"]);
    }

    #[test]
    fn multiplication_merges_and_cancels() {
        let (u, v) = (VariableId::tower(1), VariableId::tower(2));
        let a = ExponentVector::from_pairs([(u.clone(), -1), (v.clone(), 3)]);
        let b = ExponentVector::from_pairs([(u.clone(), 1), (v.clone(), -1)]);
        let p = a.checked_mul(&b).unwrap();
        assert_eq!(p, ExponentVector::var(v, 2));
        assert_eq!(p.to_string(), "u2^2");
    }

    #[test]
    fn overflow_is_an_error() {
        let u = VariableId::tower(1);
        let a = ExponentVector::var(u.clone(), i64::MAX);
        let b = ExponentVector::var(u, 1);
        assert_eq!(a.checked_mul(&b), Err(SeriesError::ExponentOverflow));
    }
}
