use std::collections::BTreeSet;
use std::fmt;

use crate::series::VariableId;

use super::TowerSpec;

/// One broken invariant. `level` is `None` for tower-wide fields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub level: Option<usize>,
    pub field: String,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.level {
            Some(l) => write!(f, "level {l}, {}: {}", self.field, self.message),
            None => write!(f, "{}: {}", self.field, self.message),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn mentions_level(&self, level: usize) -> bool {
        self.violations.iter().any(|v| v.level == Some(level))
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

fn is_reserved(name: &str) -> bool {
    let numbered = |prefix: char| {
        name.strip_prefix(prefix)
            .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|b| b.is_ascii_digit()))
    };
    name == "u" || numbered('u') || numbered('c')
}

fn valid_identifier(name: &str) -> bool {
    let mut chars = name.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Checks every structural invariant of a tower and reports all violations.
pub fn validate_tower(spec: &TowerSpec) -> Result<(), ValidationReport> {
    let mut violations = Vec::new();
    let mut push = |level: Option<usize>, field: String, message: String| {
        violations.push(Violation {
            level,
            field,
            message,
        })
    };

    let mut base_names = BTreeSet::new();
    for (n, g) in spec.base_generators.iter().enumerate() {
        let field = format!("base_generators[{n}]");
        if !valid_identifier(&g.name) {
            push(None, field.clone(), format!("invalid name {:?}", g.name));
        } else if is_reserved(&g.name) {
            push(None, field.clone(), format!("name {:?} is reserved", g.name));
        }
        if !base_names.insert(g.name.clone()) {
            push(None, field.clone(), format!("duplicate name {:?}", g.name));
        }
        if g.degree < 1 {
            push(None, field, format!("degree must be positive, got {}", g.degree));
        }
    }

    let pivot = VariableId::pivot();
    let mut aux_names = BTreeSet::new();
    for (idx, level) in spec.levels.iter().enumerate() {
        let i = idx + 1;
        if level.factors.is_empty() {
            push(Some(i), "factors".into(), "factor list is empty".into());
        }
        for (n, f) in level.factors.iter().enumerate() {
            if f.m.len() != i - 1 {
                push(
                    Some(i),
                    format!("factors[{n}].m"),
                    format!("twist vector has length {}, expected {}", f.m.len(), i - 1),
                );
            }
            if *f.q.var() != pivot {
                push(
                    Some(i),
                    format!("factors[{n}].q"),
                    format!("written in {} instead of the pivot u", f.q.var()),
                );
            }
            if f.q.is_zero() {
                push(Some(i), format!("factors[{n}].q"), "numerator is zero".into());
            }
            let vars =
                f.q.numerator()
                    .variables()
                    .into_iter()
                    .chain(f.q.denominator().variables());
            for v in vars.filter(|v| *v != pivot) {
                if !v.is_base() || !base_names.contains(v.name()) {
                    push(
                        Some(i),
                        format!("factors[{n}].q"),
                        format!("coefficient uses undeclared base generator {v}"),
                    );
                }
            }
        }
        for name in &level.aux {
            if !valid_identifier(name) || is_reserved(name) {
                push(
                    Some(i),
                    "aux".into(),
                    format!("invalid or reserved name {name:?}"),
                );
            }
            if base_names.contains(name) {
                push(
                    Some(i),
                    "aux".into(),
                    format!("{name:?} is also a base generator"),
                );
            }
            if !aux_names.insert(name.clone()) {
                push(Some(i), "aux".into(), format!("duplicate aux variable {name:?}"));
            }
        }
    }

    if violations.is_empty() {
        Ok(())
    } else {
        Err(ValidationReport { violations })
    }
}
