use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use segre_core::corpus::{random_corpus, CorpusParams};
use segre_core::flag::flag_tower;
use segre_core::series::{
    coefficient_of, ExponentVector, LaurentPoly, Rational, RationalFunction1V, VariableId,
};
use segre_core::tower::{
    closed_formula_segre, individual_segre, pushforward_monomial, stepwise_pushforward, BaseGenerator,
    TowerError, TowerFactor, TowerLevel, TowerSpec, TruncationRequest,
};

fn r(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

fn u(i: u32) -> VariableId {
    VariableId::tower(i)
}

fn mono(pairs: &[(VariableId, i64)]) -> ExponentVector {
    ExponentVector::from_pairs(pairs.iter().cloned())
}

fn inverse_power(m: Vec<i64>, r_: i64) -> TowerFactor {
    TowerFactor::monomial(m, -r_, r(1)).unwrap()
}

fn one_level(factor: TowerFactor, aux: &[&str]) -> TowerSpec {
    TowerSpec {
        levels: vec![TowerLevel {
            factors: vec![factor],
            aux: aux.iter().map(|s| s.to_string()).collect(),
        }],
        ..Default::default()
    }
}

fn g() -> LaurentPoly {
    LaurentPoly::var(VariableId::base("g"))
}

/// P(O + L) over a base with c_1(L) = g, then the same over that.
fn bundle_tower() -> TowerSpec {
    let level1 = TowerFactor::bundle(vec![], 2, &[g()]).unwrap();
    let level2a = TowerFactor::bundle(vec![0], 1, &[]).unwrap();
    let level2b = TowerFactor::bundle(vec![1], 1, &[g()]).unwrap();
    TowerSpec {
        levels: vec![
            TowerLevel {
                factors: vec![level1],
                aux: vec!["v".into()],
            },
            TowerLevel {
                factors: vec![level2a, level2b],
                aux: vec![],
            },
        ],
        base_generators: vec![BaseGenerator {
            name: "g".into(),
            degree: 1,
        }],
        base_degree_cap: None,
    }
}

#[test]
fn individual_segre_of_trivial_step() {
    let spec = one_level(inverse_power(vec![], 1), &[]);
    assert_eq!(
        individual_segre(&spec, 1, -8).unwrap(),
        LaurentPoly::var_pow(VariableId::pivot(), -1)
    );
    assert!(matches!(
        individual_segre(&spec, 2, 0),
        Err(TowerError::LevelOutOfRange { level: 2, k: 1 })
    ));
}

#[test]
fn closed_formula_flag_k2() {
    let spec = flag_tower(2).unwrap();
    let got = closed_formula_segre(&spec, &TruncationRequest::uniform(&spec, 3, 0)).unwrap();
    let expected = LaurentPoly::monomial(mono(&[(u(1), -3), (u(2), -2)]), r(1))
        - LaurentPoly::monomial(mono(&[(u(1), -2), (u(2), -3)]), r(1));
    assert_eq!(got, expected);
}

#[test]
fn closed_formula_trivial_bundle() {
    for rank in 1..=4 {
        let spec = one_level(inverse_power(vec![], rank), &[]);
        let got = closed_formula_segre(&spec, &TruncationRequest::uniform(&spec, 5, 0)).unwrap();
        assert_eq!(got, LaurentPoly::var_pow(u(1), -rank));
    }
}

#[test]
fn closed_formula_with_aux_variable() {
    // pi_*(1/(u_1 - c) 1/(v - c)) on P^1: only c^1 integrates to 1.
    let spec = one_level(inverse_power(vec![], 2), &["v"]);
    let req = TruncationRequest::new(vec![3], [("v".to_string(), 2)].into());
    let closed = closed_formula_segre(&spec, &req).unwrap();
    let oracle = stepwise_pushforward(&spec, &req).unwrap();
    assert_eq!(closed, oracle);
    let v = VariableId::aux("v", 1);
    let over = spec.series_vars();
    let at = |a: i64, b: i64| coefficient_of(&closed, &mono(&[(u(1), a), (v.clone(), b)]), &over).unwrap();
    assert_eq!(at(-2, -1), LaurentPoly::one());
    assert_eq!(at(-1, -2), LaurentPoly::one());
    assert!(at(-3, -1).is_zero());
    assert_eq!(closed.len(), 2);
}

#[test]
fn stepwise_flag_k1_is_projective_line() {
    let spec = flag_tower(1).unwrap();
    let got = stepwise_pushforward(&spec, &TruncationRequest::uniform(&spec, 4, 0)).unwrap();
    assert_eq!(got, LaurentPoly::var_pow(u(1), -2));
}

#[test]
fn stepwise_twisted_line_regression() {
    // Level 1: P^1 over a point. Level 2: Q(u + c_1) = 1/(u + c_1).
    // pi^2_*(c_2) = [u^-2] 1/(u + c_1) = -c_1, then pi^1_*(-c_1) = -1.
    let spec = TowerSpec {
        levels: vec![
            TowerLevel {
                factors: vec![inverse_power(vec![], 2)],
                aux: vec![],
            },
            TowerLevel {
                factors: vec![inverse_power(vec![1], 1)],
                aux: vec![],
            },
        ],
        ..Default::default()
    };
    let req = TruncationRequest::uniform(&spec, 2, 0);
    let step = stepwise_pushforward(&spec, &req).unwrap();
    assert_eq!(step.coeff(&mono(&[(u(1), -1), (u(2), -2)])), r(-1));
    assert_eq!(step, closed_formula_segre(&spec, &req).unwrap());
}

#[test]
fn pushforward_monomials_on_flag_k2() {
    let spec = flag_tower(2).unwrap();
    let none = BTreeMap::new();
    assert_eq!(
        pushforward_monomial(&spec, &[2, 1], &none).unwrap(),
        LaurentPoly::one()
    );
    assert_eq!(
        pushforward_monomial(&spec, &[1, 2], &none).unwrap(),
        LaurentPoly::from_int(-1)
    );
    assert!(pushforward_monomial(&spec, &[3, 0], &none).unwrap().is_zero());
}

#[test]
fn pushforward_on_bundle_tower() {
    // On P(O + L): pi_*(c) = 1 and pi_*(c^2) = -c_1(L) = -g.
    let spec = bundle_tower();
    let level1 = TowerSpec {
        levels: vec![TowerLevel {
            factors: spec.levels[0].factors.clone(),
            aux: vec![],
        }],
        ..spec.clone()
    };
    let none = BTreeMap::new();
    assert_eq!(
        pushforward_monomial(&level1, &[1], &none).unwrap(),
        LaurentPoly::one()
    );
    assert_eq!(pushforward_monomial(&level1, &[2], &none).unwrap(), -g());
    assert!(pushforward_monomial(&level1, &[0], &none).unwrap().is_zero());

    let req = TruncationRequest::uniform(&spec, 3, 2);
    assert_eq!(
        closed_formula_segre(&spec, &req).unwrap(),
        stepwise_pushforward(&spec, &req).unwrap()
    );
}

#[test]
fn empty_tower_has_segre_series_one() {
    let spec = TowerSpec::default();
    let req = TruncationRequest::default();
    assert_eq!(closed_formula_segre(&spec, &req).unwrap(), LaurentPoly::one());
    assert_eq!(stepwise_pushforward(&spec, &req).unwrap(), LaurentPoly::one());
}

#[test]
fn request_errors() {
    let spec = flag_tower(2).unwrap();
    assert!(matches!(
        closed_formula_segre(&spec, &TruncationRequest::new(vec![1], BTreeMap::new())),
        Err(TowerError::WindowLength {
            expected: 2,
            found: 1
        })
    ));
    assert!(matches!(
        closed_formula_segre(
            &spec,
            &TruncationRequest::new(vec![1, 1], [("w".to_string(), 1)].into())
        ),
        Err(TowerError::UnknownAux(_))
    ));
    let req = TruncationRequest::uniform(&spec, 2, 0);
    let derived = req.derived_degree_cap(&spec);
    assert!(matches!(
        closed_formula_segre(&spec, &req.clone().with_degree_cap(derived - 1)),
        Err(TowerError::DegreeCapBelowDerived { .. })
    ));
    assert!(closed_formula_segre(&spec, &req.with_degree_cap(derived)).is_ok());
}

#[test]
fn invalid_tower_is_rejected() {
    let mut spec = flag_tower(2).unwrap();
    spec.levels[1].factors[0].m.clear();
    let err = closed_formula_segre(&spec, &TruncationRequest::uniform(&spec, 1, 0)).unwrap_err();
    match err {
        TowerError::Invalid(report) => assert!(report.mentions_level(2)),
        other => panic!("unexpected {other:?}"),
    }
}

fn small_corpus(seed: u64, count: usize) -> Vec<segre_core::corpus::CorpusCase> {
    let params = CorpusParams {
        max_order: 2,
        ..Default::default()
    };
    random_corpus(&params, seed, count)
}

#[test]
fn closed_matches_stepwise_on_random_towers() {
    for case in small_corpus(2024, 40) {
        let closed = closed_formula_segre(&case.spec, &case.request).unwrap();
        let step = stepwise_pushforward(&case.spec, &case.request).unwrap();
        assert_eq!(closed, step, "seed {}", case.seed);
    }
}

#[test]
fn outputs_have_strictly_negative_series_exponents() {
    for case in small_corpus(5, 30) {
        let closed = closed_formula_segre(&case.spec, &case.request).unwrap();
        let vars = case.spec.series_vars();
        for (m, _) in closed.terms() {
            assert!(vars.iter().all(|v| m.exponent(v) < 0), "seed {}: {m}", case.seed);
        }
    }
}

#[test]
fn enlarging_window_keeps_old_coefficients() {
    for case in small_corpus(99, 25) {
        let small = closed_formula_segre(&case.spec, &case.request).unwrap();
        let mut bigger = case.request.clone();
        for a in &mut bigger.tower_orders {
            *a += 1;
        }
        for b in bigger.aux_orders.values_mut() {
            *b += 1;
        }
        let large = closed_formula_segre(&case.spec, &bigger).unwrap();
        let orders = &case.request;
        let restricted = large.filter(|m, _| {
            case.spec
                .tower_vars()
                .iter()
                .zip(&orders.tower_orders)
                .all(|(v, &a)| m.exponent(v) >= -i64::from(a) - 1)
                && case
                    .spec
                    .aux_vars()
                    .iter()
                    .all(|v| m.exponent(v) >= -i64::from(orders.aux_order(v.name())) - 1)
        });
        assert_eq!(restricted, small, "seed {}", case.seed);
    }
}

#[test]
fn raising_degree_cap_changes_nothing() {
    for case in small_corpus(31, 25) {
        let base = closed_formula_segre(&case.spec, &case.request).unwrap();
        let cap = case.request.derived_degree_cap(&case.spec);
        let raised = case.request.clone().with_degree_cap(cap + 3);
        assert_eq!(
            closed_formula_segre(&case.spec, &raised).unwrap(),
            base,
            "seed {}",
            case.seed
        );
    }
}

#[test]
fn factor_order_does_not_matter() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for case in small_corpus(77, 25) {
        let base = closed_formula_segre(&case.spec, &case.request).unwrap();
        let mut shuffled = case.spec.clone();
        for level in &mut shuffled.levels {
            level.factors.shuffle(&mut rng);
        }
        assert_eq!(closed_formula_segre(&shuffled, &case.request).unwrap(), base);
        assert_eq!(stepwise_pushforward(&shuffled, &case.request).unwrap(), base);
    }
}

#[test]
fn towers_over_a_point_vanish_outside_forced_degree() {
    // Monomial factors c * u^d: a coefficient of prod u_i^{-a_i-1} prod u^{-b-1}
    // can only be nonzero when sum a + sum b = -sum d - k.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        use rand::Rng;
        let k = rng.gen_range(1..=3usize);
        let levels: Vec<TowerLevel> = (1..=k)
            .map(|i| TowerLevel {
                factors: (0..rng.gen_range(1..=3))
                    .map(|_| {
                        let m = (1..i).map(|_| rng.gen_range(-2..=2)).collect();
                        TowerFactor::monomial(m, rng.gen_range(-3..=1), r(rng.gen_range(1..=3))).unwrap()
                    })
                    .collect(),
                aux: if rng.gen_bool(0.5) {
                    vec![format!("v{i}")]
                } else {
                    vec![]
                },
            })
            .collect();
        let spec = TowerSpec {
            levels,
            ..Default::default()
        };
        let total_top: i64 = spec
            .levels
            .iter()
            .flat_map(|l| &l.factors)
            .map(|f| f.q.top_degree().unwrap())
            .sum();
        let req = TruncationRequest::uniform(&spec, 3, 1);
        let series = closed_formula_segre(&spec, &req).unwrap();
        assert_eq!(series, stepwise_pushforward(&spec, &req).unwrap());
        for (m, _) in series.terms() {
            let degree_sum: i64 = spec.series_vars().iter().map(|v| -m.exponent(v) - 1).sum();
            assert_eq!(degree_sum, -total_top - k as i64, "{spec:?}");
        }
    }
}

#[test]
fn bundle_tower_coefficients_are_homogeneous() {
    // With deg g = 1 and every factor homogeneous, the base degree of each
    // coefficient is forced by the monomial it multiplies.
    let spec = bundle_tower();
    let req = TruncationRequest::uniform(&spec, 3, 2);
    let series = closed_formula_segre(&spec, &req).unwrap();
    assert!(!series.is_zero());
    let ring = spec.base_ring();
    let total_top = -2 - 1 - 1;
    for (m, _) in series.terms() {
        let window: i64 = spec.series_vars().iter().map(|v| -m.exponent(v) - 1).sum();
        assert_eq!(ring.degree(m), window + total_top + spec.k() as i64, "{m}");
    }
}

#[test]
fn base_degree_cap_matches_truncated_result() {
    let mut spec = bundle_tower();
    let req = TruncationRequest::uniform(&spec, 3, 2);
    let full = closed_formula_segre(&spec, &req).unwrap();
    spec.base_degree_cap = Some(1);
    let capped = closed_formula_segre(&spec, &req).unwrap();
    let ring = spec.base_ring();
    assert_eq!(capped, full.filter(|m, _| ring.degree(m) <= 1));
    assert_eq!(capped, stepwise_pushforward(&spec, &req).unwrap());
    assert!(capped.len() < full.len());
}

#[test]
fn rational_function_factor_with_base_denominator() {
    // Q = 1/(u^2 + g u): a rank-2 bundle with c_1 = g, c_2 = 0, given directly.
    let pivot = VariableId::pivot();
    let den = LaurentPoly::var_pow(pivot.clone(), 2) + &g() * &LaurentPoly::var(pivot.clone());
    let q = RationalFunction1V::new(pivot, LaurentPoly::one(), den).unwrap();
    let mut spec = bundle_tower();
    spec.levels[0].factors = vec![TowerFactor::new(vec![], q)];
    let req = TruncationRequest::uniform(&spec, 3, 1);
    assert_eq!(
        closed_formula_segre(&spec, &req).unwrap(),
        closed_formula_segre(&bundle_tower(), &req).unwrap()
    );
}
