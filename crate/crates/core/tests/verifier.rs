// SPDX-License-Identifier: Apache-2.0

//! The verifier on small ranks and its randomized components.

mod common;

use wdg_core::diagrams::{diagram_from_input, is_special};
use wdg_core::gram::{is_unimodular, GradedSystem};
use wdg_core::root_system::LieType;
use wdg_core::verifier::{
    exhaustive_gf2, schwartz_zippel_zero, search_unimodular, stable_hash, verify_theorem,
    DegeneracyMethod, SzVerdict, VerifyConfig,
};
use wdg_core::Error;

use common::inputs;

#[test]
fn fnv1a_reference_values() {
    assert_eq!(stable_hash(""), 0xcbf2_9ce4_8422_2325);
    assert_eq!(stable_hash("a"), 0xaf63_dc4c_8601_ec8c);
    assert_eq!(stable_hash("foobar"), 0x8594_4171_f739_67e8);
}

#[test]
fn theorem_holds_for_every_type_up_to_rank_four() {
    let cfg = VerifyConfig::default();
    for t in LieType::ALL {
        for n in t.min_rank()..=4 {
            let verdicts = verify_theorem(t, n, &cfg).unwrap();
            assert!(!verdicts.is_empty());
            for v in &verdicts {
                assert!(v.passed, "{t}{n}: {v:?}");
                if v.special {
                    assert_eq!(v.construction_unimodular, Some(true));
                    assert_eq!(v.degeneracy_method, DegeneracyMethod::NotApplicable);
                } else {
                    assert_eq!(v.degenerate_always, Some(true));
                }
            }
        }
    }
}

#[test]
fn verification_is_deterministic() {
    let cfg = VerifyConfig {
        exhaustive_cap: 0,
        ..VerifyConfig::default()
    };
    let strip = |mut v: Vec<wdg_core::verifier::Verdict>| {
        for x in &mut v {
            x.runtime_ms = None;
        }
        serde_json::to_string(&v).unwrap()
    };
    let a = strip(verify_theorem(LieType::C, 5, &cfg).unwrap());
    let b = strip(verify_theorem(LieType::C, 5, &cfg).unwrap());
    assert_eq!(a, b);
}

#[test]
fn exhaustive_and_randomized_checks_agree() {
    for t in [LieType::B, LieType::C, LieType::D] {
        for input in inputs(t, 2..=5) {
            let gs = GradedSystem::new(diagram_from_input(&input).unwrap()).unwrap();
            if gs.phi2_indices().len() > 16 {
                continue;
            }
            let always = exhaustive_gf2(&gs, 16).unwrap();
            let sz = schwartz_zippel_zero(&gs, 32, 16, 7, stable_hash(&input.to_string())).unwrap();
            match sz {
                SzVerdict::IdenticallyZero { .. } => assert!(always, "{input}"),
                SzVerdict::NonzeroWitness { .. } => assert!(!always, "{input}"),
                SzVerdict::Inconclusive => panic!("{input}: inconclusive"),
            }
            assert_eq!(always, !is_special(&input).unwrap(), "{input}");
        }
    }
}

#[test]
fn exhaustive_check_respects_its_cap() {
    let input = inputs(LieType::C, 6..=6)
        .into_iter()
        .find(|i| {
            let gs = GradedSystem::new(diagram_from_input(i).unwrap()).unwrap();
            gs.phi2_indices().len() > 3
        })
        .unwrap();
    let gs = GradedSystem::new(diagram_from_input(&input).unwrap()).unwrap();
    assert!(matches!(
        exhaustive_gf2(&gs, 3),
        Err(Error::CapExceeded { .. })
    ));
}

#[test]
fn search_finds_witnesses_on_special_odd_inputs() {
    for input in inputs(LieType::C, 2..=4) {
        let gs = GradedSystem::new(diagram_from_input(&input).unwrap()).unwrap();
        if !gs.diagram().is_odd() || gs.phi2_indices().len() > 14 {
            continue;
        }
        let found = search_unimodular(&gs, 14).unwrap();
        assert_eq!(found.is_some(), is_special(&input).unwrap(), "{input}");
        if let Some(lam) = found {
            assert!(is_unimodular(&gs, &lam).unwrap(), "{input}");
        }
    }
}
