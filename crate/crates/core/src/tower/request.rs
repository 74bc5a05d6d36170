use std::collections::BTreeMap;

use super::{validate_tower, TowerError, TowerSpec};

/// Coefficient window of a Segre-series computation.
///
/// The coefficient of `u_i^{-a-1}` is wanted for `a <= tower_orders[i-1]`
/// and of `u^{-b-1}` for `b <= aux_orders[u]`; aux variables not listed get
/// order zero. `degree_cap` raises the shift-expansion order above the
/// derived bound; it never changes a coefficient inside the window.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TruncationRequest {
    pub tower_orders: Vec<u32>,
    pub aux_orders: BTreeMap<String, u32>,
    pub degree_cap: Option<u32>,
}

impl TruncationRequest {
    pub fn new(tower_orders: Vec<u32>, aux_orders: BTreeMap<String, u32>) -> Self {
        TruncationRequest {
            tower_orders,
            aux_orders,
            degree_cap: None,
        }
    }

    /// The same order for every tower variable and every aux variable.
    pub fn uniform(spec: &TowerSpec, tower_order: u32, aux_order: u32) -> Self {
        Self::new(
            vec![tower_order; spec.k()],
            spec.aux_vars()
                .into_iter()
                .map(|v| (v.name().to_string(), aux_order))
                .collect(),
        )
    }

    pub fn with_degree_cap(mut self, cap: u32) -> Self {
        self.degree_cap = Some(cap);
        self
    }

    pub fn aux_order(&self, name: &str) -> u32 {
        self.aux_orders.get(name).copied().unwrap_or(0)
    }

    /// The window-based expansion order:
    /// `sum_i (a_i + 1) + sum_u (b_u + 1)` plus the largest per-level total
    /// of positive numerator degrees.
    pub fn derived_degree_cap(&self, spec: &TowerSpec) -> u32 {
        let window: u32 = self.tower_orders.iter().map(|a| a + 1).sum::<u32>()
            + spec
                .aux_vars()
                .iter()
                .map(|v| self.aux_order(v.name()) + 1)
                .sum::<u32>();
        let numerators = spec
            .levels
            .iter()
            .map(|l| {
                l.factors
                    .iter()
                    .filter_map(|f| f.q.numerator().max_exponent(f.q.var()))
                    .map(|e| e.max(0) as u32)
                    .sum::<u32>()
            })
            .max()
            .unwrap_or(0);
        window + numerators
    }

    /// Validates both the tower and the request against it.
    pub(crate) fn check(&self, spec: &TowerSpec) -> Result<(), TowerError> {
        validate_tower(spec).map_err(TowerError::Invalid)?;
        if self.tower_orders.len() != spec.k() {
            return Err(TowerError::WindowLength {
                expected: spec.k(),
                found: self.tower_orders.len(),
            });
        }
        let aux = spec.aux_vars();
        if let Some(name) = self
            .aux_orders
            .keys()
            .find(|n| !aux.iter().any(|v| v.name() == n.as_str()))
        {
            return Err(TowerError::UnknownAux(name.clone()));
        }
        if let Some(requested) = self.degree_cap {
            let derived = self.derived_degree_cap(spec);
            if requested < derived {
                return Err(TowerError::DegreeCapBelowDerived { requested, derived });
            }
        }
        Ok(())
    }
}
