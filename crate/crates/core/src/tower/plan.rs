//! Expansion orders for the closed formula.
//!
//! Fix a target monomial with `u_i`-exponent `t_i >= -a_i - 1` and aux
//! exponents `-b_u - 1`. A term of the level-`i` factor `Q_f(u_i + shift)`
//! has pivot exponent `e_f = alpha - beta` with `alpha <= d_f` (the top
//! degree of `Q_f`) and shift degree `beta`. The `u_i` exponent of a
//! product term is `sum_f e_f + sum_u n_u + p_i`, where `n_u <= b_u` comes
//! from the geometric factors of level `i` and `p_i >= 0` is the shift degree
//! landed on `u_i` by higher levels. Hence a term reaching the window has
//!
//! ```text
//! sum_f beta_f <= D_i + a_i + 1 + B_i + P_i
//! e_f          >= -a_i - 1 - B_i - P_i - (D_i - d_f)
//! ```
//!
//! with `D_i = sum_f d_f`, `B_i = sum_u b_u` and `P_i` the sum of the bounds
//! of the levels above. The bounds are necessary conditions, so truncating
//! at or beyond them is exact inside the window.

use super::{TowerSpec, TruncationRequest};

#[derive(Clone, Debug)]
pub(crate) struct LevelPlan {
    /// Shift-degree order actually used for this level's factors.
    pub shift_cap: u32,
    /// Upper bound on the positive degree higher levels put on `u_i`.
    pub incoming: i64,
    /// Lower bound on `sum_f e_f`.
    pub pivot_floor: i64,
    /// `d_f` per factor.
    pub tops: Vec<i64>,
    /// Lowest `alpha` needed from each factor's descending expansion.
    pub floors: Vec<i64>,
}

impl LevelPlan {
    /// Lower bound on the pivot exponent of the product of factors
    /// `0..=done`, given that the remaining factors contribute at most their
    /// top degrees.
    pub fn partial_floor(&self, done: usize) -> i64 {
        self.pivot_floor - self.tops[done + 1..].iter().sum::<i64>()
    }
}

/// Per-level plans, indexed by `level - 1`. Assumes a checked request.
pub(crate) fn plan(spec: &TowerSpec, req: &TruncationRequest) -> Vec<LevelPlan> {
    let k = spec.k();
    let mut plans: Vec<Option<LevelPlan>> = vec![None; k];
    let mut incoming_natural: i64 = 0;
    let mut incoming_effective: i64 = 0;
    let floor_cap = i64::from(req.degree_cap.unwrap_or(0));
    for i in (1..=k).rev() {
        let level = spec.level(i);
        let tops: Vec<i64> = level
            .factors
            .iter()
            .map(|f| f.q.top_degree().expect("validated: nonzero numerator"))
            .collect();
        let top_total: i64 = tops.iter().sum();
        let a = i64::from(req.tower_orders[i - 1]);
        let b: i64 = level.aux.iter().map(|n| i64::from(req.aux_order(n))).sum();

        let twisted: Vec<_> = level
            .factors
            .iter()
            .zip(&tops)
            .filter(|(f, _)| f.is_twisted())
            .collect();
        let natural = if twisted.is_empty() {
            0
        } else {
            let bound = (top_total + a + 1 + b + incoming_natural).max(0);
            // Polynomial factors have beta <= alpha <= d_f.
            if twisted.iter().all(|(f, _)| f.q.is_polynomial()) {
                bound.min(twisted.iter().map(|(_, &d)| d.max(0)).sum())
            } else {
                bound
            }
        };
        let effective = if twisted.is_empty() {
            0
        } else {
            natural.max(floor_cap)
        };

        let pivot_floor = -a - 1 - b - incoming_natural;
        let floors = tops.iter().map(|d| pivot_floor - (top_total - d)).collect();
        plans[i - 1] = Some(LevelPlan {
            shift_cap: u32::try_from(effective).expect("cap fits in u32"),
            incoming: incoming_effective,
            pivot_floor,
            tops,
            floors,
        });
        incoming_natural += natural;
        incoming_effective += effective;
    }
    plans
        .into_iter()
        .map(|p| p.expect("every level planned"))
        .collect()
}
