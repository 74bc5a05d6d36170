//! Seeded random towers for cross-checking the closed formula against the
//! stepwise push-forward.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::series::{ExponentVector, LaurentPoly, Rational, RationalFunction1V, VariableId};
use crate::tower::{BaseGenerator, TowerFactor, TowerLevel, TowerSpec, TruncationRequest};

/// Shape limits for [`random_tower`].
#[derive(Clone, Debug)]
pub struct CorpusParams {
    pub max_k: usize,
    pub max_factors: usize,
    /// Twist entries are drawn from `-twist..=twist`.
    pub twist: i64,
    /// Numerator and denominator exponents are drawn from `-support..=support`.
    pub support: i64,
    pub max_aux: usize,
    /// Window orders are drawn from `0..=max_order`.
    pub max_order: u32,
    pub max_aux_order: u32,
    /// Probability that the tower has a base generator `g` in its factors.
    pub base_probability: f64,
}

impl Default for CorpusParams {
    fn default() -> Self {
        CorpusParams {
            max_k: 3,
            max_factors: 3,
            twist: 2,
            support: 3,
            max_aux: 2,
            max_order: 2,
            max_aux_order: 1,
            base_probability: 0.3,
        }
    }
}

/// A seeded tower together with a request window.
#[derive(Clone, Debug)]
pub struct CorpusCase {
    pub seed: u64,
    pub spec: TowerSpec,
    pub request: TruncationRequest,
}

pub fn random_case(params: &CorpusParams, seed: u64) -> CorpusCase {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let spec = random_tower(&mut rng, params);
    let request = random_request(&mut rng, &spec, params);
    CorpusCase { seed, spec, request }
}

/// `count` cases with seeds derived from `seed`.
pub fn random_corpus(params: &CorpusParams, seed: u64, count: usize) -> Vec<CorpusCase> {
    (0..count as u64)
        .map(|n| random_case(params, seed.wrapping_mul(1_000_003).wrapping_add(n)))
        .collect()
}

fn nonzero_small(rng: &mut impl Rng) -> Rational {
    let n = *[-3i64, -2, -1, 1, 2, 3].choose(rng).expect("nonempty");
    let d = rng.gen_range(1i64..=2);
    Rational::new(n.into(), d.into())
}

/// One or two terms with distinct exponents; every coefficient except the
/// leading one may carry a power of `g`.
fn random_support_poly(rng: &mut impl Rng, support: i64, with_base: bool) -> LaurentPoly {
    let u = VariableId::pivot();
    let n_terms = rng.gen_range(1..=2usize);
    let mut exps: Vec<i64> = (-support..=support).collect();
    exps.shuffle(rng);
    let mut exps: Vec<i64> = exps.into_iter().take(n_terms).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    let mut p = LaurentPoly::zero();
    for (idx, e) in exps.into_iter().enumerate() {
        let mut pairs = vec![(u.clone(), e)];
        if with_base && idx > 0 && rng.gen_bool(0.5) {
            pairs.push((VariableId::base("g"), 1));
        }
        p.add_term(ExponentVector::from_pairs(pairs), nonzero_small(rng));
    }
    p
}

pub fn random_tower(rng: &mut impl Rng, params: &CorpusParams) -> TowerSpec {
    let k = rng.gen_range(1..=params.max_k);
    let with_base = rng.gen_bool(params.base_probability);
    let mut aux_counter = 0;
    let levels = (1..=k)
        .map(|i| {
            let n_factors = rng.gen_range(1..=params.max_factors);
            let factors = (0..n_factors)
                .map(|_| {
                    let m = (1..i)
                        .map(|_| rng.gen_range(-params.twist..=params.twist))
                        .collect();
                    let num = random_support_poly(rng, params.support, with_base);
                    let den = random_support_poly(rng, params.support, with_base);
                    let q = RationalFunction1V::new(VariableId::pivot(), num, den)
                        .expect("leading denominator term is a monomial");
                    TowerFactor::new(m, q)
                })
                .collect();
            let n_aux = rng.gen_range(0..=params.max_aux);
            let aux = (0..n_aux)
                .map(|_| {
                    aux_counter += 1;
                    format!("v{aux_counter}")
                })
                .collect();
            TowerLevel { factors, aux }
        })
        .collect();
    TowerSpec {
        levels,
        base_generators: if with_base {
            vec![BaseGenerator {
                name: "g".into(),
                degree: 1,
            }]
        } else {
            vec![]
        },
        base_degree_cap: None,
    }
}

pub fn random_request(rng: &mut impl Rng, spec: &TowerSpec, params: &CorpusParams) -> TruncationRequest {
    let tower_orders = (0..spec.k())
        .map(|_| rng.gen_range(0..=params.max_order))
        .collect();
    let aux_orders: BTreeMap<String, u32> = spec
        .aux_vars()
        .into_iter()
        .map(|v| (v.name().to_string(), rng.gen_range(0..=params.max_aux_order)))
        .collect();
    TruncationRequest::new(tower_orders, aux_orders)
}
