use crate::series::{
    coefficient_of, descending_expand, negative_part, shift_expand, ExponentVector, LaurentPoly, Rational,
    VariableId,
};

use num_traits::One;

use super::{TowerError, TowerSpec, TruncationRequest};

/// `s(pi^i, u) = prod_f Q_f(u + sum_j m_f^j c_j)` as a Laurent polynomial in
/// the pivot `u` and the tautological classes `c_1..c_{i-1}`.
///
/// Exact, in every `c`-degree, for pivot exponents `>= min_exponent`; lower
/// pivot exponents are dropped. A term of pivot exponent `e` has `c`-degree
/// at most `D - e`, where `D` is the sum of the factors' top degrees.
pub fn individual_segre(
    spec: &TowerSpec,
    level: usize,
    min_exponent: i64,
) -> Result<LaurentPoly, TowerError> {
    if level == 0 || level > spec.k() {
        return Err(TowerError::LevelOutOfRange { level, k: spec.k() });
    }
    super::validate_tower(spec).map_err(TowerError::Invalid)?;
    let pivot = VariableId::pivot();
    let ring = spec.base_ring();
    let factors = &spec.level(level).factors;
    let tops: Vec<i64> = factors
        .iter()
        .map(|f| f.q.top_degree().expect("validated: nonzero numerator"))
        .collect();
    let total: i64 = tops.iter().sum();
    let cap = u32::try_from((total - min_exponent).max(0)).expect("cap fits in u32");

    let mut out = LaurentPoly::one();
    for (n, f) in factors.iter().enumerate() {
        let q = descending_expand(&f.q, min_exponent - (total - tops[n]))?;
        let shifted = shift_expand(&q, &pivot, &f.shift(VariableId::taut), cap)?;
        let floor = min_exponent - tops[n + 1..].iter().sum::<i64>();
        out = ring.truncate(out.try_mul_filtered(&shifted, |m| m.exponent(&pivot) >= floor)?);
    }
    Ok(out)
}

/// The Segre series of the tower inside the request window, by pushing the
/// integrand `prod_i 1/(u_i - c_i) prod_{u in A_i} 1/(u - c_i)` forward one
/// level at a time: `c_j^g * P` maps to `P` times the coefficient of
/// `u^{-g-1}` in `s(pi^j, u)`.
///
/// Shares no code path with [`super::closed_formula_segre`] beyond the
/// series kernel.
pub fn stepwise_pushforward(spec: &TowerSpec, req: &TruncationRequest) -> Result<LaurentPoly, TowerError> {
    req.check(spec)?;
    let ring = spec.base_ring();
    let filter = spec.series_vars();
    let pivot = VariableId::pivot();
    let over_pivot = [pivot.clone()].into_iter().collect();

    // Only monomials with c_i-degree up to the window can reach it, and the
    // push-forward never changes u-exponents.
    let mut integrand = LaurentPoly::one();
    for i in 1..=spec.k() {
        let c = VariableId::taut(i as u32);
        integrand = integrand.try_mul(&inverse_difference(
            &VariableId::tower(i as u32),
            &c,
            req.tower_orders[i - 1],
        ))?;
        for name in &spec.level(i).aux {
            let v = VariableId::aux(name, i as u32);
            integrand = integrand.try_mul(&inverse_difference(&v, &c, req.aux_order(name)))?;
        }
    }

    let mut current = ring.truncate(integrand);
    for j in (1..=spec.k()).rev() {
        let c = VariableId::taut(j as u32);
        let groups = current.group_by_exponent(&c);
        let Some(&top) = groups.keys().next_back() else {
            return Ok(LaurentPoly::zero());
        };
        let segre = individual_segre(spec, j, -top - 1)?;
        let mut next = LaurentPoly::zero();
        for (gamma, rest) in groups {
            let target = ExponentVector::var(pivot.clone(), -gamma - 1);
            let pushed = coefficient_of(&segre, &target, &over_pivot)?;
            next = next + rest.try_mul(&pushed)?;
        }
        current = ring.truncate(negative_part(&next, &filter));
    }
    Ok(current)
}

/// `sum_{n=0..order} c^n u^{-n-1}`.
fn inverse_difference(u: &VariableId, c: &VariableId, order: u32) -> LaurentPoly {
    LaurentPoly::from_terms((0..=i64::from(order)).map(|n| {
        (
            ExponentVector::from_pairs([(c.clone(), n), (u.clone(), -n - 1)]),
            Rational::one(),
        )
    }))
}
