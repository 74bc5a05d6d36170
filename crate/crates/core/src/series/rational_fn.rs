use num_traits::Zero;

use super::{ExponentVector, LaurentPoly, Rational, SeriesError, VariableId};

/// `numerator / denominator` in one formal variable, with coefficients that
/// may involve base generators.
///
/// The denominator's leading term in `var` must be a rational times a base
/// monomial, which makes the expansion in descending powers of `var` unique.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction1V {
    var: VariableId,
    numerator: LaurentPoly,
    denominator: LaurentPoly,
    lead: (ExponentVector, Rational),
}

impl RationalFunction1V {
    pub fn new(
        var: VariableId,
        numerator: LaurentPoly,
        denominator: LaurentPoly,
    ) -> Result<Self, SeriesError> {
        if denominator.is_zero() {
            return Err(SeriesError::ZeroDenominator);
        }
        for p in [&numerator, &denominator] {
            if let Some(bad) = p.variables().into_iter().find(|v| *v != var && !v.is_base()) {
                return Err(SeriesError::NotUnivariate {
                    var: var.to_string(),
                    found: bad.to_string(),
                });
            }
        }
        let top = denominator.max_exponent(&var).expect("nonzero denominator");
        let lead = {
            let mut leading = denominator.terms().filter(|(m, _)| m.exponent(&var) == top);
            let (m, c) = leading.next().expect("top exponent is attained");
            if leading.next().is_some() {
                return Err(SeriesError::NonMonomialLeadingCoefficient);
            }
            (m.clone(), c.clone())
        };
        Ok(RationalFunction1V {
            var,
            numerator,
            denominator,
            lead,
        })
    }

    /// A Laurent polynomial viewed as a rational function with denominator 1.
    pub fn polynomial(var: VariableId, numerator: LaurentPoly) -> Result<Self, SeriesError> {
        Self::new(var, numerator, LaurentPoly::one())
    }

    /// `c * var^exp`.
    pub fn monomial(var: VariableId, exp: i64, c: Rational) -> Result<Self, SeriesError> {
        let num = LaurentPoly::monomial(ExponentVector::var(var.clone(), exp), c);
        Self::polynomial(var, num)
    }

    pub fn var(&self) -> &VariableId {
        &self.var
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.numerator
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.denominator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Highest exponent of `var` in the descending expansion, or `None` for
    /// the zero function.
    pub fn top_degree(&self) -> Option<i64> {
        let n = self.numerator.max_exponent(&self.var)?;
        Some(n - self.lead.0.exponent(&self.var))
    }

    /// True when the expansion terminates and has no negative powers of `var`.
    pub fn is_polynomial(&self) -> bool {
        self.denominator.len() == 1
            && self
                .numerator
                .min_exponent(&self.var)
                .is_none_or(|lo| lo >= self.lead.0.exponent(&self.var))
    }

    /// Substitutes a rename of the variable, keeping everything else.
    pub fn with_var(&self, var: VariableId) -> Result<Self, SeriesError> {
        Self::new(
            var.clone(),
            self.numerator.rename(&self.var, &var)?,
            self.denominator.rename(&self.var, &var)?,
        )
    }

    pub(crate) fn lead(&self) -> &(ExponentVector, Rational) {
        &self.lead
    }

    /// Returns `true` when both functions describe the same quotient.
    pub fn same_value(&self, other: &RationalFunction1V) -> bool {
        self.var == other.var
            && (&self.numerator * &other.denominator) == (&other.numerator * &self.denominator)
    }

    pub(crate) fn lead_inverse(&self) -> Result<(ExponentVector, Rational), SeriesError> {
        let (m, c) = &self.lead;
        debug_assert!(!c.is_zero());
        Ok((m.checked_inverse()?, c.recip()))
    }
}
