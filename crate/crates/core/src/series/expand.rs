//! The expansion and truncation primitives the tower formulas are built
//! from. Every expansion takes an explicit order and states which of its
//! coefficients are exact.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{ExponentVector, LaurentPoly, Rational, RationalFunction1V, SeriesError, VariableId};

/// `alpha (alpha - 1) ... (alpha - beta + 1) / beta!`, for any integer `alpha`.
pub fn binomial_general(alpha: i64, beta: u32) -> Rational {
    let mut acc = Rational::one();
    for i in 0..i64::from(beta) {
        let factor = BigInt::from(alpha) - BigInt::from(i);
        if factor.is_zero() {
            return Rational::zero();
        }
        acc = acc * Rational::from_integer(factor) / Rational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// Expands `f` in descending powers of its variable, keeping exactly the
/// terms whose exponent is at least `min_exponent`. All returned
/// coefficients are exact.
pub fn descending_expand(f: &RationalFunction1V, min_exponent: i64) -> Result<LaurentPoly, SeriesError> {
    let var = f.var();
    let den = f.denominator();
    let lead_exp = f.lead().0.exponent(var);
    let (inv_m, inv_c) = f.lead_inverse()?;
    let mut remainder = f.numerator().clone();
    let mut quotient = LaurentPoly::zero();
    while let Some(top) = remainder.max_exponent(var) {
        if top - lead_exp < min_exponent {
            break;
        }
        let head = remainder.filter(|m, _| m.exponent(var) == top);
        let step = head.mul_monomial(&inv_m, &inv_c)?;
        remainder = &remainder - &step.try_mul(den)?;
        debug_assert!(remainder.max_exponent(var).is_none_or(|e| e < top));
        quotient = quotient + step;
    }
    Ok(quotient)
}

/// Expands `q(pivot + shift)` in non-negative powers of the variables of
/// `shift`, dropping every monomial of total shift-degree above
/// `degree_cap`. The result is exact up to that degree.
pub fn shift_expand(
    q: &LaurentPoly,
    pivot: &VariableId,
    shift: &LaurentPoly,
    degree_cap: u32,
) -> Result<LaurentPoly, SeriesError> {
    let shift_vars = shift.variables();
    if shift_vars.contains(pivot) {
        return Err(SeriesError::ShiftContainsPivot);
    }
    for (m, _) in shift.terms() {
        if m.iter().any(|(_, e)| e < 0) {
            return Err(SeriesError::NegativeShiftExponent);
        }
        if m.is_one() {
            return Err(SeriesError::ShiftConstantTerm);
        }
    }
    if let Some(v) = q.variables().intersection(&shift_vars).next() {
        return Err(SeriesError::ShiftVariableInSeries(v.to_string()));
    }
    if shift.is_zero() {
        return Ok(q.clone());
    }

    let cap = i64::from(degree_cap);
    let in_shift = |m: &ExponentVector| m.degree_where(|v| shift_vars.contains(v));
    let mut powers = vec![LaurentPoly::one()];
    for _ in 0..degree_cap {
        let next = powers
            .last()
            .expect("nonempty")
            .try_mul_filtered(shift, |m| in_shift(m) <= cap)?;
        powers.push(next);
    }

    let mut out = LaurentPoly::zero();
    for (m, r) in q.terms() {
        let alpha = m.exponent(pivot);
        let rest = m.without(pivot);
        for (beta, power) in powers.iter().enumerate() {
            let b = binomial_general(alpha, beta as u32);
            if b.is_zero() {
                // alpha >= 0 and beta > alpha: all further terms vanish.
                break;
            }
            let e = alpha
                .checked_sub(beta as i64)
                .ok_or(SeriesError::ExponentOverflow)?;
            let mono = rest.checked_mul(&ExponentVector::var(pivot.clone(), e))?;
            out = out + power.mul_monomial(&mono, &(r * b))?;
        }
    }
    Ok(out)
}

/// `sum_{n=0..degree_cap} inner^n outer^(-n-1)`, the truncated expansion of
/// `1 / (outer - inner)` in non-negative powers of `inner`.
pub fn geometric_expand(
    outer: &VariableId,
    inner: &VariableId,
    degree_cap: u32,
) -> Result<LaurentPoly, SeriesError> {
    if outer == inner {
        return Err(SeriesError::SameVariable);
    }
    Ok(LaurentPoly::from_terms((0..=i64::from(degree_cap)).map(|n| {
        (
            ExponentVector::from_pairs([(inner.clone(), n), (outer.clone(), -n - 1)]),
            Rational::one(),
        )
    })))
}

/// Keeps the terms in which every variable of `filter` has a strictly
/// negative exponent. A variable missing from a monomial fails the test.
pub fn negative_part(s: &LaurentPoly, filter: &BTreeSet<VariableId>) -> LaurentPoly {
    s.filter(|m, _| filter.iter().all(|v| m.exponent(v) < 0))
}

/// The coefficient of the monomial `m` in the variables `over`, as a
/// polynomial in the remaining variables.
pub fn coefficient_of(
    s: &LaurentPoly,
    m: &ExponentVector,
    over: &BTreeSet<VariableId>,
) -> Result<LaurentPoly, SeriesError> {
    if let Some(v) = m.variables().find(|v| !over.contains(*v)) {
        return Err(SeriesError::ForeignVariable(v.to_string()));
    }
    let mut out = LaurentPoly::zero();
    for (t, c) in s.terms() {
        let (inside, rest) = t.split(|v| over.contains(v));
        if inside == *m {
            out.add_term(rest, c.clone());
        }
    }
    Ok(out)
}
