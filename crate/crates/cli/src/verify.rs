use std::collections::BTreeSet;
use std::io::Write;

use itertools::Itertools;
use num_traits::One;

use segre_core::corpus::{random_corpus, CorpusParams};
use segre_core::flag::{
    dimension, flag_integral, flag_tower, localization_integral, vandermonde_integral, FlagError,
};
use segre_core::series::{LaurentPoly, Rational};
use segre_core::tower::{closed_formula_segre, stepwise_pushforward, TowerSpec, TruncationRequest};

use crate::spec_file::TowerSpecFile;
use crate::CliError;

pub const MAX_K_CEILING: usize = 4;
/// Random towers never exceed this many levels.
const CORPUS_MAX_K: usize = 3;

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub max_k: usize,
    pub seed: u64,
    pub trials: usize,
    /// Number of random towers compared closed vs stepwise.
    pub corpus_size: usize,
    /// Adds one to the first Vandermonde value, to exercise the failure path.
    pub perturb_vandermonde: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            max_k: 3,
            seed: 7,
            trials: 3,
            corpus_size: 50,
            perturb_vandermonde: false,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VerifySummary {
    pub passed: usize,
    pub failed: usize,
}

impl VerifySummary {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }

    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

/// Runs the flag-integral triple agreement for `k <= max_k` and the closed vs
/// stepwise comparison on flag towers and a seeded random corpus. Output
/// depends only on the configuration.
pub fn run_verify(config: &VerifyConfig, out: &mut dyn Write) -> Result<VerifySummary, CliError> {
    if config.max_k > MAX_K_CEILING {
        return Err(CliError::Usage(format!(
            "--max-k {} exceeds the ceiling {MAX_K_CEILING}",
            config.max_k
        )));
    }
    writeln!(
        out,
        "verify: max_k={} seed={} trials={} corpus={}",
        config.max_k, config.seed, config.trials, config.corpus_size
    )?;
    let mut summary = VerifySummary::default();

    if config.max_k == 0 {
        let spec = TowerSpec::default();
        let req = TruncationRequest::default();
        let closed = closed_formula_segre(&spec, &req)?;
        let step = stepwise_pushforward(&spec, &req)?;
        let ok = closed == step && closed == LaurentPoly::one();
        writeln!(out, "tower k=0: closed={closed} stepwise={step} {}", status(ok))?;
        summary.record(ok);
    }

    let mut perturb = config.perturb_vandermonde;
    let mut case = 0u64;
    for k in 1..=config.max_k {
        let dim = dimension(k) as u32;
        let tuples = (0..k)
            .map(|_| 0..=k as u32)
            .multi_cartesian_product()
            .filter(|a| a.iter().sum::<u32>() == dim);
        for a in tuples {
            let seed = config.seed.wrapping_mul(1000).wrapping_add(case);
            case += 1;
            let closed = flag_integral(k, &a)?;
            let mut vandermonde = vandermonde_integral(k, &a)?;
            if std::mem::take(&mut perturb) {
                vandermonde += Rational::one();
            }
            let label = format!("flag k={k} a=({})", a.iter().join(","));
            let localized = match localization_integral(k, &a, config.trials, seed) {
                Ok(v) => v.to_string(),
                Err(e @ FlagError::TrialMismatch { .. }) => e.to_string(),
                Err(e) => return Err(e.into()),
            };
            let ok = closed == vandermonde && closed.to_string() == localized;
            writeln!(
                out,
                "{label}: closed={closed} vandermonde={vandermonde} localization={localized} (seed {seed}) {}",
                status(ok)
            )?;
            summary.record(ok);
        }
    }

    for k in 1..=config.max_k {
        let spec = flag_tower(k)?;
        let req = TruncationRequest::uniform(&spec, k as u32, 0);
        let ok = compare(&spec, &req, &format!("flag tower k={k}"), out)?;
        summary.record(ok);
    }

    if config.max_k > 0 {
        let params = CorpusParams {
            max_k: config.max_k.min(CORPUS_MAX_K),
            ..Default::default()
        };
        for c in random_corpus(&params, config.seed, config.corpus_size) {
            let ok = compare(
                &c.spec,
                &c.request,
                &format!("random tower seed={} k={}", c.seed, c.spec.k()),
                out,
            )?;
            summary.record(ok);
        }
    }

    writeln!(
        out,
        "summary: {} passed, {} failed",
        summary.passed, summary.failed
    )?;
    Ok(summary)
}

fn status(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn compare(
    spec: &TowerSpec,
    req: &TruncationRequest,
    label: &str,
    out: &mut dyn Write,
) -> Result<bool, CliError> {
    let closed = closed_formula_segre(spec, req)?;
    let step = stepwise_pushforward(spec, req)?;
    let ok = closed == step;
    writeln!(out, "{label}: {} coefficients {}", closed.len(), status(ok))?;
    if !ok {
        let json = serde_json::to_string(&TowerSpecFile::from_spec(spec)?)?;
        writeln!(out, "  spec: {json}")?;
        writeln!(out, "  window: {:?} aux {:?}", req.tower_orders, req.aux_orders)?;
        let monomials: BTreeSet<_> = closed
            .terms()
            .chain(step.terms())
            .map(|(m, _)| m.clone())
            .collect();
        for m in monomials {
            let (a, b) = (closed.coeff(&m), step.coeff(&m));
            if a != b {
                writeln!(out, "  {m}: closed={a} stepwise={b}")?;
            }
        }
    }
    Ok(ok)
}
