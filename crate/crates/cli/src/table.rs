use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use segre_core::series::{LaurentPoly, VariableId};

use crate::CliError;

/// Coefficients of a series, one row per exponent tuple of the chosen
/// variables, sorted lexicographically.
///
/// A value is the coefficient in the remaining (base) variables: a rational
/// printed as `n` or `num/den`, or a base polynomial such as `-g + 1/2*h`.
///
/// The text form has a header line and one tab-separated line per row:
///
/// ```text
/// u1  u2  value
/// -3  -2  1
/// -2  -3  -1
/// ```
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultTable {
    pub variables: Vec<String>,
    pub rows: Vec<TableRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub exponents: Vec<i64>,
    pub value: String,
}

impl ResultTable {
    pub fn from_series(series: &LaurentPoly, columns: &[VariableId]) -> Self {
        let set: BTreeSet<&VariableId> = columns.iter().collect();
        let mut grouped: BTreeMap<Vec<i64>, LaurentPoly> = BTreeMap::new();
        for (m, c) in series.terms() {
            let (_, rest) = m.split(|v| set.contains(v));
            let key = columns.iter().map(|v| m.exponent(v)).collect();
            grouped.entry(key).or_default().add_term(rest, c.clone());
        }
        ResultTable {
            variables: columns.iter().map(|v| v.name().to_string()).collect(),
            rows: grouped
                .into_iter()
                .filter(|(_, p)| !p.is_zero())
                .map(|(exponents, p)| TableRow {
                    exponents,
                    value: p.to_string(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        let bad = |line: usize, why: &str| CliError::Table(format!("line {line}: {why}"));
        let mut lines = text.lines();
        let header: Vec<&str> = lines
            .next()
            .ok_or_else(|| bad(1, "missing header"))?
            .split('\t')
            .collect();
        let Some((&"value", names)) = header.split_last() else {
            return Err(bad(1, "header must end with `value`"));
        };
        let variables: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let mut rows = vec![];
        for (n, line) in lines.enumerate() {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != variables.len() + 1 {
                return Err(bad(n + 2, "wrong number of columns"));
            }
            let (value, exps) = fields.split_last().expect("at least one field");
            let exponents = exps
                .iter()
                .map(|e| {
                    e.parse::<i64>()
                        .map_err(|_| bad(n + 2, "exponent is not an integer"))
                })
                .collect::<Result<_, _>>()?;
            rows.push(TableRow {
                exponents,
                value: value.to_string(),
            });
        }
        Ok(ResultTable { variables, rows })
    }
}

impl fmt::Display for ResultTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.variables {
            write!(f, "{v}\t")?;
        }
        writeln!(f, "value")?;
        for row in &self.rows {
            for e in &row.exponents {
                write!(f, "{e}\t")?;
            }
            writeln!(f, "{}", row.value)?;
        }
        Ok(())
    }
}
