// SPDX-License-Identifier: Apache-2.0

//! Faithfulness, the `rho` and swap transforms, the `P`/`Q` partition and
//! the determinant factorization.

mod common;

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use wdg_core::diagrams::{diagram_from_input, is_special, odd_sequence, PartitionInput};
use wdg_core::faithful::{
    apply_rho, apply_swap, closed_form_count, factor_determinant, faithfulize, is_faithful, levels,
    offending_roots, pq_partition, Levels,
};
use wdg_core::gram::{det_integer_gram, CoefficientRing, GradedSystem, LambdaAssignment};
use wdg_core::lambda_construct::construct_raw;
use wdg_core::root_system::{LieType, Root};
use wdg_core::Error;

use common::{odd_bcd, random_lambda};

fn graded(t: LieType, n: usize, mu: &[u32], nu: &[u32]) -> GradedSystem {
    let input = PartitionInput::new(t, n, mu.to_vec(), nu.to_vec(), None).unwrap();
    GradedSystem::new(diagram_from_input(&input).unwrap()).unwrap()
}

fn levels_of(gs: &GradedSystem) -> Levels {
    let d = gs.diagram();
    levels(d, &odd_sequence(d).unwrap())
}

fn many_level_cases(max_rank: usize) -> Vec<(PartitionInput, GradedSystem)> {
    odd_bcd(max_rank)
        .into_iter()
        .filter(|(_, gs)| levels_of(gs).k() >= 3)
        .collect()
}

fn wide_root_case() -> (PartitionInput, GradedSystem, Root) {
    for (input, gs) in many_level_cases(7) {
        let lv = levels_of(&gs);
        for r in gs.phi2() {
            if !offending_roots(&lv, &LambdaAssignment::indicator([r.clone()])).is_empty() {
                return (input, gs, r);
            }
        }
    }
    panic!("no diagram with a wide root in Phi_(d,2)");
}

fn special_case() -> GradedSystem {
    many_level_cases(7)
        .into_iter()
        .find(|(i, _)| is_special(i).unwrap())
        .expect("a special diagram with three levels")
        .1
}

fn abs_det(gs: &GradedSystem, lam: &LambdaAssignment) -> num_bigint::BigInt {
    det_integer_gram(gs, lam).unwrap().abs()
}

#[test]
fn zero_lambda_is_faithful() {
    let gs = graded(LieType::C, 5, &[3], &[2]);
    assert!(is_faithful(&gs, &LambdaAssignment::zero(CoefficientRing::Integers)).unwrap());
}

#[test]
fn faithfulness_needs_three_levels() {
    let gs = graded(LieType::C, 2, &[1], &[1]);
    let lam = LambdaAssignment::zero(CoefficientRing::Integers);
    assert!(matches!(
        is_faithful(&gs, &lam),
        Err(Error::Precondition(_))
    ));
    let a = graded(LieType::A, 2, &[2, 1], &[]);
    assert!(matches!(is_faithful(&a, &lam), Err(Error::Precondition(_))));
}

#[test]
fn a_single_wide_root_is_not_faithful() {
    let (input, gs, wide) = wide_root_case();
    let lam = LambdaAssignment::indicator([wide]);
    assert!(!is_faithful(&gs, &lam).unwrap(), "{input}");
    assert_eq!(offending_roots(&levels_of(&gs), &lam).len(), 1);
}

#[test]
fn constructed_lambda_on_special_type_c_is_faithful_with_unit_blocks() {
    let mut seen = 0;
    for (input, gs) in many_level_cases(7) {
        if input.lie_type != LieType::C || !is_special(&input).unwrap() {
            continue;
        }
        seen += 1;
        let lam = construct_raw(&gs).unwrap();
        assert!(is_faithful(&gs, &lam).unwrap(), "{input}");
        let f = factor_determinant(&gs, &lam).unwrap();
        assert!(f.identity_holds, "{input}");
        for d in &f.block_dets {
            assert_eq!(d.as_ref().map(|x| x.abs()), Some(1.into()), "{input}");
        }
    }
    assert!(seen > 0);
}

#[test]
fn rho_with_zero_gamma_is_the_identity() {
    let gs = graded(LieType::C, 5, &[3], &[2]);
    let lv = levels_of(&gs);
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let lam = random_lambda(&gs, 5, &mut rng);
    let (lo, hi) = (lv.i(2), lv.i(3) - 1);
    if lo < hi {
        assert_eq!(
            apply_rho(&gs, &lam, 2, lo, hi, 0).unwrap().values(),
            lam.values()
        );
    }
}

#[test]
fn rho_and_swap_preserve_the_determinant() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut checked = 0;
    for (input, gs) in many_level_cases(7) {
        let lv = levels_of(&gs);
        for l in 1..lv.k() {
            let (lo, hi) = (lv.i(l), lv.i(l + 1) - 1);
            if lo >= hi {
                continue;
            }
            for _ in 0..5 {
                let lam = random_lambda(&gs, 5, &mut rng);
                let before = abs_det(&gs, &lam);
                let s = rng.gen_range(lo..=hi);
                let t = loop {
                    let t = rng.gen_range(lo..=hi);
                    if t != s {
                        break t;
                    }
                };
                let gamma = rng.gen_range(-3..=3);
                let r = apply_rho(&gs, &lam, l, s, t, gamma).unwrap();
                assert_eq!(abs_det(&gs, &r), before, "{input} rho l={l} s={s} t={t}");
                let w = apply_swap(&gs, &lam, l, s, t).unwrap();
                assert_eq!(abs_det(&gs, &w), before, "{input} swap l={l} s={s} t={t}");
                checked += 1;
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn rho_rejects_indices_outside_a_block() {
    let gs = graded(LieType::C, 5, &[3], &[2]);
    let lam = LambdaAssignment::zero(CoefficientRing::Integers);
    assert!(matches!(
        apply_rho(&gs, &lam, 0, 1, 2, 1),
        Err(Error::Precondition(_))
    ));
    assert!(matches!(
        apply_swap(&gs, &lam, 1, 1, 1),
        Err(Error::Precondition(_))
    ));
}

#[test]
fn faithfulize_returns_faithful_input_unchanged() {
    let gs = special_case();
    let lam = construct_raw(&gs).unwrap();
    assert!(is_faithful(&gs, &lam).unwrap());
    assert_eq!(faithfulize(&gs, &lam).unwrap().values(), lam.values());
}

#[test]
fn faithfulize_random_lambda_preserves_absolute_determinant() {
    for (input, gs) in many_level_cases(7) {
        let mut rng = ChaCha8Rng::seed_from_u64(input.rank as u64 * 31 + input.mu.len() as u64);
        for _ in 0..20 {
            let lam = random_lambda(&gs, 5, &mut rng);
            let f = faithfulize(&gs, &lam).unwrap();
            assert!(is_faithful(&gs, &f).unwrap(), "{input}");
            assert_eq!(abs_det(&gs, &f), abs_det(&gs, &lam), "{input}");
        }
    }
}

#[test]
fn single_offender_with_zero_partner_needs_one_swap() {
    let (input, gs, wide) = wide_root_case();
    let lv = levels_of(&gs);
    let lam = LambdaAssignment::indicator([wide]);
    let (l, s, big_t) = offending_roots(&lv, &lam)[0];
    let t_prime = s + lv.i(l + 1) - lv.i(l - 1);
    let swapped = apply_swap(&gs, &lam, l + 1, big_t - 1, t_prime - 1).unwrap();
    assert!(is_faithful(&gs, &swapped).unwrap(), "{input}");
    assert_eq!(faithfulize(&gs, &lam).unwrap().values(), swapped.values());
}

#[test]
fn faithfulize_over_gf2_clears_offenders() {
    for (input, gs) in many_level_cases(6) {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..10 {
            let lam = random_lambda(&gs, 1, &mut rng).to_gf2();
            let f = faithfulize(&gs, &lam).unwrap();
            assert!(is_faithful(&gs, &f).unwrap(), "{input}");
        }
    }
}

#[test]
fn pq_partition_matches_closed_form_counts() {
    for (input, gs) in many_level_cases(7) {
        let lv = levels_of(&gs);
        let part = pq_partition(&gs).unwrap();
        assert_eq!(part.q_sets[0], part.y_sets[0], "{input}");
        for l in 1..part.p_sets.len() + 1 {
            let (p, q) = (&part.p_sets[l - 1], &part.q_sets[l - 1]);
            assert_eq!(p.len(), q.len(), "{input} level {l}");
            assert_eq!(
                p.len() as i64,
                closed_form_count(&lv, l),
                "{input} level {l}"
            );
            if l < part.q_sets.len() {
                let mut union: Vec<usize> = p.iter().chain(&part.q_sets[l]).copied().collect();
                union.sort_unstable();
                let mut y = part.y_sets[l].clone();
                y.sort_unstable();
                assert_eq!(union, y, "{input} level {l}");
            }
        }
    }
}

#[test]
fn two_level_partition_is_trivial() {
    let (input, gs) = odd_bcd(5)
        .into_iter()
        .find(|(_, gs)| levels_of(gs).k() == 2)
        .expect("a two-level diagram");
    let part = pq_partition(&gs).unwrap();
    assert!(part.p_sets.iter().all(Vec::is_empty), "{input}");
    assert_eq!(part.q_sets[0], part.y_sets[0]);
}

#[test]
fn zero_lambda_factorizes_trivially() {
    let gs = graded(LieType::B, 5, &[4], &[3]);
    let f = factor_determinant(&gs, &LambdaAssignment::zero(CoefficientRing::Integers)).unwrap();
    assert!(f.gram_det.is_zero());
    assert!(f.identity_holds);
}

#[test]
fn random_faithful_lambda_factorizes() {
    for (input, gs) in many_level_cases(7) {
        let mut rng = ChaCha8Rng::seed_from_u64(input.rank as u64);
        for _ in 0..10 {
            let lam = faithfulize(&gs, &random_lambda(&gs, 5, &mut rng)).unwrap();
            let f = factor_determinant(&gs, &lam).unwrap();
            assert!(f.identity_holds, "{input}: {f:?}");
        }
    }
}

#[test]
fn factorization_rejects_unfaithful_lambda() {
    let (_, gs, wide) = wide_root_case();
    let lam = LambdaAssignment::indicator([wide]);
    assert!(matches!(
        factor_determinant(&gs, &lam),
        Err(Error::Precondition(_))
    ));
}
