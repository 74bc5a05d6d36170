//! Projective towers whose individual Segre series are products of shifted
//! one-variable factors, and two ways of computing the Segre series of the
//! whole tower: the closed formula ([`closed_formula_segre`]) and explicit
//! level-by-level push-forward ([`stepwise_pushforward`]).

mod closed;
mod plan;
mod request;
mod stepwise;
mod validate;

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::series::{
    coefficient_of, descending_expand, BaseRing, ExponentVector, LaurentPoly, Rational, RationalFunction1V,
    SeriesError, VariableId,
};

pub use closed::{closed_formula_product, closed_formula_segre};
pub use request::TruncationRequest;
pub use stepwise::{individual_segre, stepwise_pushforward};
pub use validate::{validate_tower, ValidationReport, Violation};

/// One factor `Q(u + m^1 c_1 + ... + m^{i-1} c_{i-1})` of an individual
/// Segre series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TowerFactor {
    /// Twist vector; entry `j` multiplies `c_{j+1}`.
    pub m: Vec<i64>,
    /// `Q`, written in [`VariableId::pivot`].
    pub q: RationalFunction1V,
}

impl TowerFactor {
    pub fn new(m: Vec<i64>, q: RationalFunction1V) -> Self {
        TowerFactor { m, q }
    }

    /// Factor `c * u^exp` with the given twist.
    pub fn monomial(m: Vec<i64>, exp: i64, c: Rational) -> Result<Self, SeriesError> {
        Ok(TowerFactor::new(
            m,
            RationalFunction1V::monomial(VariableId::pivot(), exp, c)?,
        ))
    }

    /// The inverse Chern polynomial of a bundle of the given rank.
    pub fn bundle(m: Vec<i64>, rank: i64, chern: &[LaurentPoly]) -> Result<Self, TowerError> {
        Ok(TowerFactor::new(m, inverse_chern_polynomial(rank, chern)?))
    }

    pub fn is_twisted(&self) -> bool {
        self.m.iter().any(|&x| x != 0)
    }

    /// `sum_j m^j * var(j)` over the lower levels.
    pub(crate) fn shift(&self, var: impl Fn(u32) -> VariableId) -> LaurentPoly {
        LaurentPoly::from_terms(self.m.iter().enumerate().map(|(j, &x)| {
            (
                ExponentVector::var(var(j as u32 + 1), 1),
                Rational::from_integer(x.into()),
            )
        }))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowerLevel {
    pub factors: Vec<TowerFactor>,
    /// Names of the extra variables attached to this level.
    pub aux: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseGenerator {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TowerSpec {
    /// Level `i` is `levels[i - 1]`.
    pub levels: Vec<TowerLevel>,
    pub base_generators: Vec<BaseGenerator>,
    pub base_degree_cap: Option<i64>,
}

impl TowerSpec {
    pub fn k(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, i: usize) -> &TowerLevel {
        &self.levels[i - 1]
    }

    pub fn base_ring(&self) -> BaseRing {
        BaseRing::new(
            self.base_generators
                .iter()
                .map(|g| (VariableId::base(&g.name), g.degree)),
            self.base_degree_cap,
        )
    }

    pub fn tower_vars(&self) -> Vec<VariableId> {
        (1..=self.k() as u32).map(VariableId::tower).collect()
    }

    /// All aux variables, in level order.
    pub fn aux_vars(&self) -> Vec<VariableId> {
        self.levels
            .iter()
            .enumerate()
            .flat_map(|(i, l)| l.aux.iter().map(move |name| VariableId::aux(name, i as u32 + 1)))
            .collect()
    }

    /// Tower and aux variables: the variables the negative part filters on.
    pub fn series_vars(&self) -> BTreeSet<VariableId> {
        self.tower_vars().into_iter().chain(self.aux_vars()).collect()
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum TowerError {
    #[error("invalid tower: {0}")]
    Invalid(ValidationReport),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error("truncation window has {found} tower orders, tower has {expected} levels")]
    WindowLength { expected: usize, found: usize },
    #[error("truncation window names unknown aux variable {0}")]
    UnknownAux(String),
    #[error("degree cap {requested} is below the derived bound {derived}")]
    DegreeCapBelowDerived { requested: u32, derived: u32 },
    #[error("level {level} is outside 1..={k}")]
    LevelOutOfRange { level: usize, k: usize },
    #[error("rank must be non-negative, got {0}")]
    NegativeRank(i64),
    #[error("{found} Chern classes given for a bundle of rank {rank}")]
    TooManyChernClasses { rank: i64, found: usize },
}

/// `pi_*(prod c_i^{a_i} prod_u c_{level(u)}^{b_u})`, read off the closed
/// formula as the coefficient of `prod u_i^{-a_i-1} prod u^{-b_u-1}`.
/// Aux variables missing from `b` get exponent zero.
pub fn pushforward_monomial(
    spec: &TowerSpec,
    a: &[u32],
    b: &BTreeMap<String, u32>,
) -> Result<LaurentPoly, TowerError> {
    let req = TruncationRequest::new(a.to_vec(), b.clone());
    let series = closed_formula_segre(spec, &req)?;
    let target = ExponentVector::from_pairs(
        spec.tower_vars()
            .into_iter()
            .zip(a)
            .map(|(v, &e)| (v, -i64::from(e) - 1))
            .chain(spec.aux_vars().into_iter().map(|v| {
                let e = b.get(v.name()).copied().unwrap_or(0);
                (v, -i64::from(e) - 1)
            })),
    );
    Ok(coefficient_of(&series, &target, &spec.series_vars())?)
}

/// `1 / c(V, u)` with `c(V, u) = u^rank + c_1 u^{rank-1} + ... + c_rank`.
/// Missing trailing Chern classes are zero.
pub fn inverse_chern_polynomial(rank: i64, chern: &[LaurentPoly]) -> Result<RationalFunction1V, TowerError> {
    if rank < 0 {
        return Err(TowerError::NegativeRank(rank));
    }
    if chern.len() as i64 > rank {
        return Err(TowerError::TooManyChernClasses {
            rank,
            found: chern.len(),
        });
    }
    let u = VariableId::pivot();
    let mut den = LaurentPoly::var_pow(u.clone(), rank);
    for (k, c) in chern.iter().enumerate() {
        let k = k as i64 + 1;
        den = den + c.try_mul(&LaurentPoly::var_pow(u.clone(), rank - k))?;
    }
    Ok(RationalFunction1V::new(u, LaurentPoly::one(), den)?)
}

/// The inverse Chern polynomial together with its descending expansion down
/// to `min_exponent`.
pub fn inverse_chern_series(
    rank: i64,
    chern: &[LaurentPoly],
    min_exponent: i64,
) -> Result<(RationalFunction1V, LaurentPoly), TowerError> {
    let f = inverse_chern_polynomial(rank, chern)?;
    let expansion = descending_expand(&f, min_exponent)?;
    Ok((f, expansion))
}
