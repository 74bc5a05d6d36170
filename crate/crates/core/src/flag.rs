//! The complete flag variety of `C^{k+1}` as a tower of projective bundles
//! over a point, with two independent ways of integrating monomials in its
//! tautological classes.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::series::{ExponentVector, LaurentPoly, Rational, SeriesError, VariableId};
use crate::tower::{pushforward_monomial, TowerError, TowerFactor, TowerLevel, TowerSpec};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FlagError {
    #[error("flag varieties need k >= 1, got {0}")]
    InvalidK(usize),
    #[error("expected {expected} exponents, got {found}")]
    Arity { expected: usize, found: usize },
    #[error("localization needs at least one trial")]
    NoTrials,
    #[error("localization trials disagree: {first} vs {other} (seed {seed})")]
    TrialMismatch {
        first: Box<Rational>,
        other: Box<Rational>,
        seed: u64,
    },
    #[error("push-forward did not reduce to a rational number: {0}")]
    NotRational(LaurentPoly),
    #[error(transparent)]
    Tower(#[from] TowerError),
}

impl From<SeriesError> for FlagError {
    fn from(e: SeriesError) -> Self {
        FlagError::Tower(e.into())
    }
}

/// Level `i` has the factor `1/u^{k+1}` and, for each `j < i`, the factor
/// `u` twisted by `-e_j`, so `s(pi^i, u) = (u - c_1)...(u - c_{i-1}) / u^{k+1}`.
pub fn flag_tower(k: usize) -> Result<TowerSpec, FlagError> {
    if k < 1 {
        return Err(FlagError::InvalidK(k));
    }
    let one = Rational::one();
    let levels = (1..=k)
        .map(|i| {
            let mut factors = vec![TowerFactor::monomial(
                vec![0; i - 1],
                -(k as i64) - 1,
                one.clone(),
            )?];
            for j in 0..i - 1 {
                let mut m = vec![0; i - 1];
                m[j] = -1;
                factors.push(TowerFactor::monomial(m, 1, one.clone())?);
            }
            Ok(TowerLevel { factors, aux: vec![] })
        })
        .collect::<Result<_, SeriesError>>()?;
    Ok(TowerSpec {
        levels,
        ..Default::default()
    })
}

pub fn dimension(k: usize) -> usize {
    k * (k + 1) / 2
}

fn check_arity(k: usize, a: &[u32]) -> Result<(), FlagError> {
    if k < 1 {
        return Err(FlagError::InvalidK(k));
    }
    if a.len() != k {
        return Err(FlagError::Arity {
            expected: k,
            found: a.len(),
        });
    }
    Ok(())
}

/// `prod_{1 <= i < j <= k} (u_j - u_i)`, expanded.
pub fn vandermonde(k: usize) -> LaurentPoly {
    let mut p = LaurentPoly::one();
    for (i, j) in (1..=k as u32).tuple_combinations() {
        p = &p * &(LaurentPoly::var(VariableId::tower(j)) - LaurentPoly::var(VariableId::tower(i)));
    }
    p
}

/// `(u_1...u_k)^{-k-1} prod_{i<j} (u_j - u_i)`.
pub fn flag_segre_series(k: usize) -> LaurentPoly {
    let shift = ExponentVector::from_pairs((1..=k as u32).map(|i| (VariableId::tower(i), -(k as i64) - 1)));
    vandermonde(k)
        .mul_monomial(&shift, &Rational::one())
        .expect("small exponents")
}

/// The coefficient of `prod u_i^{k - a_i}` in the Vandermonde product.
pub fn vandermonde_integral(k: usize, a: &[u32]) -> Result<Rational, FlagError> {
    check_arity(k, a)?;
    if a.iter().any(|&x| x as usize > k) {
        return Ok(Rational::zero());
    }
    let target = ExponentVector::from_pairs(
        a.iter()
            .enumerate()
            .map(|(i, &x)| (VariableId::tower(i as u32 + 1), k as i64 - i64::from(x))),
    );
    Ok(vandermonde(k).coeff(&target))
}

/// `int_F c_1^{a_1} ... c_k^{a_k}` through the closed formula on
/// [`flag_tower`].
pub fn flag_integral(k: usize, a: &[u32]) -> Result<Rational, FlagError> {
    check_arity(k, a)?;
    let value = pushforward_monomial(&flag_tower(k)?, a, &BTreeMap::new())?;
    value.as_constant().ok_or(FlagError::NotRational(value))
}

/// Torus-fixed-point evaluation of `int_F prod c_i^{a_i}` at random
/// distinct rational weights `t_1..t_{k+1}`:
///
/// ```text
/// sum_{w in S_{k+1}} prod_i t_{w(k+2-i)}^{a_i} / prod_{p<q} (t_{w(q)} - t_{w(p)})
/// ```
///
/// Every trial uses fresh weights from a generator seeded with `seed`; all
/// trials must return the same value.
pub fn localization_integral(k: usize, a: &[u32], trials: usize, seed: u64) -> Result<Rational, FlagError> {
    check_arity(k, a)?;
    if trials == 0 {
        return Err(FlagError::NoTrials);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut first: Option<Rational> = None;
    for _ in 0..trials {
        let t = draw_weights(&mut rng, k + 1);
        let value = fixed_point_sum(&t, a);
        match &first {
            None => first = Some(value),
            Some(f) if *f != value => {
                return Err(FlagError::TrialMismatch {
                    first: Box::new(f.clone()),
                    other: Box::new(value),
                    seed,
                })
            }
            Some(_) => {}
        }
    }
    Ok(first.expect("at least one trial"))
}

/// Distinct nonzero rationals with numerators and denominators bounded by 10^3.
fn draw_weights(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    let mut t: Vec<Rational> = Vec::with_capacity(n);
    while t.len() < n {
        let num: i64 = rng.gen_range(-1000..=1000);
        let den: i64 = rng.gen_range(1..=1000);
        let x = Rational::new(num.into(), den.into());
        if !x.is_zero() && !t.contains(&x) {
            t.push(x);
        }
    }
    t
}

fn fixed_point_sum(t: &[Rational], a: &[u32]) -> Rational {
    let n = t.len();
    let k = n - 1;
    let top = a.iter().copied().max().unwrap_or(0) as usize;
    let powers: Vec<Vec<Rational>> = t
        .iter()
        .map(|x| {
            std::iter::successors(Some(Rational::one()), |p| Some(p * x))
                .take(top + 1)
                .collect()
        })
        .collect();
    let diff: Vec<Vec<Rational>> = t.iter().map(|p| t.iter().map(|q| q - p).collect()).collect();
    let mut sum = Rational::zero();
    for w in (0..n).permutations(n) {
        let mut num = Rational::one();
        for (i, &e) in a.iter().enumerate() {
            // c_{i+1} restricts to t_{w(k+1-i)}, 1-based.
            num *= &powers[w[k - i]][e as usize];
        }
        let mut den = Rational::one();
        for (p, q) in (0..n).tuple_combinations() {
            den *= &diff[w[p]][w[q]];
        }
        sum += num / den;
    }
    sum
}
