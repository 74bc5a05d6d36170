//! JSON tower descriptions.
//!
//! ```json
//! {
//!   "k": 1,
//!   "base_generators": [{"name": "g", "degree": 1}],
//!   "levels": [
//!     {"factors": [{"m": [], "q_num": [[0, 1, 1]], "q_den": [[2, 1, 1], [1, 1, 1, {"g": 1}]]}],
//!      "aux": ["v"]}
//!   ]
//! }
//! ```
//!
//! A term `[exp, num, den]` stands for `num/den * u^exp`; an optional fourth
//! element maps base generator names to exponents. `q_den` defaults to `1`.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use segre_core::series::{ExponentVector, LaurentPoly, Rational, RationalFunction1V, VariableId};
use segre_core::tower::{
    validate_tower, BaseGenerator, TowerFactor, TowerLevel, TowerSpec, ValidationReport, Violation,
};

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerSpecFile {
    pub k: usize,
    #[serde(default)]
    pub base_generators: Vec<GeneratorEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base_degree_cap: Option<i64>,
    pub levels: Vec<LevelEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LevelEntry {
    pub factors: Vec<FactorEntry>,
    #[serde(default)]
    pub aux: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FactorEntry {
    #[serde(default)]
    pub m: Vec<i64>,
    pub q_num: Vec<Term>,
    #[serde(default = "unit")]
    pub q_den: Vec<Term>,
}

fn unit() -> Vec<Term> {
    vec![Term::Plain(0, 1, 1)]
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Term {
    Plain(i64, i64, i64),
    WithBase(i64, i64, i64, BTreeMap<String, i64>),
}

impl Term {
    fn parts(&self) -> (i64, i64, i64, Option<&BTreeMap<String, i64>>) {
        match self {
            Term::Plain(e, n, d) => (*e, *n, *d, None),
            Term::WithBase(e, n, d, base) => (*e, *n, *d, Some(base)),
        }
    }
}

impl TowerSpecFile {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    /// Builds and validates the tower. Every problem found is reported with
    /// its level and field.
    pub fn to_spec(&self) -> Result<TowerSpec, CliError> {
        let mut violations = vec![];
        if self.k != self.levels.len() {
            violations.push(Violation {
                level: None,
                field: "k".into(),
                message: format!("k is {} but {} levels are given", self.k, self.levels.len()),
            });
        }
        let mut levels = vec![];
        for (i, level) in self.levels.iter().enumerate() {
            let at = i + 1;
            let mut factors = vec![];
            for (j, f) in level.factors.iter().enumerate() {
                let num = poly(&f.q_num, at, &format!("factors[{j}].q_num"), &mut violations);
                let den = poly(&f.q_den, at, &format!("factors[{j}].q_den"), &mut violations);
                let (Some(num), Some(den)) = (num, den) else {
                    continue;
                };
                match RationalFunction1V::new(VariableId::pivot(), num, den) {
                    Ok(q) => factors.push(TowerFactor::new(f.m.clone(), q)),
                    Err(e) => violations.push(Violation {
                        level: Some(at),
                        field: format!("factors[{j}].q_den"),
                        message: e.to_string(),
                    }),
                }
            }
            levels.push(TowerLevel {
                factors,
                aux: level.aux.clone(),
            });
        }
        if !violations.is_empty() {
            return Err(CliError::Invalid(ValidationReport { violations }));
        }
        let spec = TowerSpec {
            levels,
            base_generators: self
                .base_generators
                .iter()
                .map(|g| BaseGenerator {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
            base_degree_cap: self.base_degree_cap,
        };
        validate_tower(&spec).map_err(CliError::Invalid)?;
        Ok(spec)
    }

    /// Fails only when a coefficient does not fit in `i64`.
    pub fn from_spec(spec: &TowerSpec) -> Result<Self, CliError> {
        let levels = spec
            .levels
            .iter()
            .map(|level| {
                let factors = level
                    .factors
                    .iter()
                    .map(|f| {
                        Ok(FactorEntry {
                            m: f.m.clone(),
                            q_num: terms(f.q.numerator())?,
                            q_den: terms(f.q.denominator())?,
                        })
                    })
                    .collect::<Result<_, CliError>>()?;
                Ok(LevelEntry {
                    factors,
                    aux: level.aux.clone(),
                })
            })
            .collect::<Result<_, CliError>>()?;
        Ok(TowerSpecFile {
            k: spec.k(),
            base_generators: spec
                .base_generators
                .iter()
                .map(|g| GeneratorEntry {
                    name: g.name.clone(),
                    degree: g.degree,
                })
                .collect(),
            base_degree_cap: spec.base_degree_cap,
            levels,
        })
    }
}

fn poly(terms: &[Term], level: usize, field: &str, violations: &mut Vec<Violation>) -> Option<LaurentPoly> {
    let mut out = LaurentPoly::zero();
    let mut ok = true;
    for (t, term) in terms.iter().enumerate() {
        let (exp, num, den, base) = term.parts();
        let mut fail = |message: String| {
            violations.push(Violation {
                level: Some(level),
                field: format!("{field}[{t}]"),
                message,
            });
        };
        if den == 0 {
            fail("zero denominator".into());
            ok = false;
            continue;
        }
        let pairs = std::iter::once((VariableId::pivot(), exp)).chain(
            base.into_iter()
                .flatten()
                .map(|(name, &e)| (VariableId::base(name), e)),
        );
        match ExponentVector::try_from_pairs(pairs) {
            Ok(m) => {
                out = out + LaurentPoly::monomial(m, Rational::new(num.into(), den.into()));
            }
            Err(e) => {
                fail(e.to_string());
                ok = false;
            }
        }
    }
    ok.then_some(out)
}

fn terms(p: &LaurentPoly) -> Result<Vec<Term>, CliError> {
    let pivot = VariableId::pivot();
    p.terms()
        .map(|(m, c)| {
            let exp = m.exponent(&pivot);
            let (Some(num), Some(den)) = (c.numer().to_i64(), c.denom().to_i64()) else {
                return Err(CliError::CoefficientTooLarge(c.to_string()));
            };
            let base: BTreeMap<String, i64> = m
                .without(&pivot)
                .iter()
                .map(|(v, e)| (v.name().to_string(), e))
                .collect();
            Ok(if base.is_empty() {
                Term::Plain(exp, num, den)
            } else {
                Term::WithBase(exp, num, den, base)
            })
        })
        .collect()
}
