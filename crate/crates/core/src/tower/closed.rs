use crate::series::{
    descending_expand, geometric_expand, negative_part, shift_expand, LaurentPoly, VariableId,
};

use super::plan::{plan, LevelPlan};
use super::{TowerError, TowerSpec, TruncationRequest};

/// The Segre series of the tower inside the request window, from the closed
/// formula: the negative part of the product over all levels of the shifted
/// factors `Q(u_i + sum_j m^j u_j)` and the geometric factors `1/(u - u_i)`.
///
/// The result holds exactly the monomials of the window and every
/// coefficient is exact.
pub fn closed_formula_segre(spec: &TowerSpec, req: &TruncationRequest) -> Result<LaurentPoly, TowerError> {
    req.check(spec)?;
    let plans = plan(spec, req);
    let ring = spec.base_ring();
    let mut acc = LaurentPoly::one();
    for i in (1..=spec.k()).rev() {
        let p = &plans[i - 1];
        let ui = VariableId::tower(i as u32);
        let mut level = level_factors(spec, i, p, true)?;
        // Aux and higher-level contributions only raise the u_i exponent.
        level = level.filter(|m, _| m.exponent(&ui) <= -1);
        for name in &spec.level(i).aux {
            let v = VariableId::aux(name, i as u32);
            level = level.try_mul(&geometric_expand(&v, &ui, req.aux_order(name))?)?;
        }

        let a = i64::from(req.tower_orders[i - 1]);
        let aux: Vec<_> = spec
            .level(i)
            .aux
            .iter()
            .map(|n| (VariableId::aux(n, i as u32), i64::from(req.aux_order(n))))
            .collect();
        let lower: Vec<_> = (1..i)
            .map(|j| (VariableId::tower(j as u32), plans[j - 1].incoming))
            .collect();
        acc = acc.try_mul_filtered(&level, |m| {
            let e = m.exponent(&ui);
            (-a - 1..=-1).contains(&e)
                && aux.iter().all(|(v, b)| (-b - 1..=-1).contains(&m.exponent(v)))
                && lower.iter().all(|(v, cap)| m.exponent(v) <= *cap)
        })?;
        acc = ring.truncate(acc);
    }
    Ok(negative_part(&acc, &spec.series_vars()))
}

/// The closed-formula product before the negative part is taken, with the
/// same expansion orders as [`closed_formula_segre`] but no window
/// restriction. Coefficients of window monomials are exact; others are
/// whatever the truncated expansions produce.
pub fn closed_formula_product(spec: &TowerSpec, req: &TruncationRequest) -> Result<LaurentPoly, TowerError> {
    req.check(spec)?;
    let plans = plan(spec, req);
    let ring = spec.base_ring();
    let mut acc = LaurentPoly::one();
    for i in (1..=spec.k()).rev() {
        let ui = VariableId::tower(i as u32);
        let mut level = level_factors(spec, i, &plans[i - 1], false)?;
        for name in &spec.level(i).aux {
            let v = VariableId::aux(name, i as u32);
            level = level.try_mul(&geometric_expand(&v, &ui, req.aux_order(name))?)?;
        }
        acc = ring.truncate(acc.try_mul(&level)?);
    }
    Ok(acc)
}

/// `prod_f Q_f(u_i + sum_j m_f^j u_j)`, expanded per the plan. With `prune`
/// set, terms that cannot reach the window are dropped along the way.
fn level_factors(spec: &TowerSpec, i: usize, p: &LevelPlan, prune: bool) -> Result<LaurentPoly, TowerError> {
    let pivot = VariableId::pivot();
    let ui = VariableId::tower(i as u32);
    let ring = spec.base_ring();
    let cap = i64::from(p.shift_cap);
    let lower_degree = |m: &crate::series::ExponentVector| {
        m.degree_where(|v| v.kind() == crate::series::VarKind::Tower && v.level() < i as u32 && v.level() > 0)
    };
    let mut out = LaurentPoly::one();
    for (n, f) in spec.level(i).factors.iter().enumerate() {
        let q = descending_expand(&f.q, p.floors[n])?;
        let shift = f.shift(VariableId::tower);
        let shifted = shift_expand(&q, &pivot, &shift, p.shift_cap)?.rename(&pivot, &ui)?;
        out = if prune {
            let floor = p.partial_floor(n);
            out.try_mul_filtered(&shifted, |m| m.exponent(&ui) >= floor && lower_degree(m) <= cap)?
        } else {
            out.try_mul(&shifted)?
        };
        out = ring.truncate(out);
    }
    Ok(out)
}
