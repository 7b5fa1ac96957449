//! Property suites for the algebraic laws: group actions, the direction
//! group, reversal-closure under conjugation and lifting, and realignment of
//! randomly chosen patches.

use proptest::prelude::*;
use std::collections::BTreeSet;

use dirtile::alignment::{apply_reversal, EdgeReversal};
use dirtile::dihedral::{DihedralElement, EdgeReversalCode};
use dirtile::mgon::{orbit_of, MGonCategory};
use dirtile::patch::{CoxeterParams, TilingPatch};
use dirtile::reversal::{enumerate_maximal, is_reversal_closed};
use dirtile::schema;

fn arb_code(m: usize) -> impl Strategy<Value = EdgeReversalCode> {
    prop::collection::vec(prop_oneof![Just(1i8), Just(-1i8)], m)
        .prop_map(|v| EdgeReversalCode::new(v).unwrap())
}

fn arb_element(m: usize) -> impl Strategy<Value = DihedralElement> {
    (0..m as isize, any::<bool>()).prop_map(move |(rot, flip)| DihedralElement::new(m, rot, flip))
}

fn arb_m() -> impl Strategy<Value = usize> {
    3usize..=10
}

proptest! {
    #[test]
    fn code_action_is_a_group_action(
        (m, a, b, d) in arb_m().prop_flat_map(|m| {
            (Just(m), arb_element(m), arb_element(m), arb_code(m))
        })
    ) {
        let ab = a.compose(&b).unwrap();
        prop_assert_eq!(
            ab.act_on_code(&d).unwrap(),
            a.act_on_code(&b.act_on_code(&d).unwrap()).unwrap()
        );
        prop_assert_eq!(DihedralElement::identity(m).act_on_code(&d).unwrap(), d);
    }
}

proptest! {
    #[test]
    fn code_action_is_a_bijection(m in arb_m(), rot in 0isize..10, flip in any::<bool>()) {
        let s = DihedralElement::new(m, rot, flip);
        let mut images = BTreeSet::new();
        for bits in 0..1u32 << m.min(6) {
            let code = EdgeReversalCode::new(
                (0..m).map(|i| if bits >> (i % 6) & 1 == 1 { -1 } else { 1 }).collect(),
            ).unwrap();
            images.insert(s.act_on_code(&code).unwrap());
        }
        // Injective on the sampled set.
        let mut originals = BTreeSet::new();
        for bits in 0..1u32 << m.min(6) {
            originals.insert(EdgeReversalCode::new(
                (0..m).map(|i| if bits >> (i % 6) & 1 == 1 { -1 } else { 1 }).collect(),
            ).unwrap());
        }
        prop_assert_eq!(images.len(), originals.len());
    }

    #[test]
    fn triple_products_are_equivariant(m in 3usize..=8, bits in any::<[u8; 4]>()) {
        let code_from = |b: u8| EdgeReversalCode::new(
            (0..m).map(|i| if b >> (i % 8) & 1 == 1 { -1 } else { 1 }).collect()
        ).unwrap();
        let (d, d1, d2) = (code_from(bits[0]), code_from(bits[1]), code_from(bits[2]));
        let s = DihedralElement::new(m, bits[3] as isize, bits[3] & 0x80 != 0);
        let lhs = s.act_on_code(&d.product(&d1).unwrap().product(&d2).unwrap()).unwrap();
        let rhs = s.act_on_code(&d).unwrap()
            .product(&s.act_on_code(&d1).unwrap()).unwrap()
            .product(&s.act_on_code(&d2).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn orbits_and_canonical_forms(m in arb_m(), bits in any::<u16>()) {
        let code = EdgeReversalCode::new(
            (0..m).map(|i| if bits >> (i % 16) & 1 == 1 { -1 } else { 1 }).collect(),
        ).unwrap();
        let orbit = orbit_of(&code);
        prop_assert_eq!((2 * m) % orbit.len(), 0, "orbit size divides 2m");
        let cat = MGonCategory::new(code).unwrap();
        let canon = cat.canonical_form();
        for member in &orbit {
            prop_assert_eq!(
                MGonCategory::new(member.clone()).unwrap().canonical_form(),
                canon.clone()
            );
        }
        prop_assert!(canon <= *orbit.iter().next().unwrap());
    }

    #[test]
    fn pairs_with_identity_are_reversal_closed(m in arb_m(), rot in 0isize..10, flip in any::<bool>(), bits in any::<u16>()) {
        let code = EdgeReversalCode::new(
            (0..m).map(|i| if bits >> (i % 16) & 1 == 1 { -1 } else { 1 }).collect(),
        ).unwrap();
        let s = DihedralElement::new(m, rot, flip);
        let set: BTreeSet<_> = [DihedralElement::identity(m), s].into_iter().collect();
        prop_assert!(is_reversal_closed(&code, &set).unwrap());
    }

    #[test]
    fn conjugation_carries_maximal_subsets(m in 3usize..=6, bits in any::<u8>(), rot in 0isize..6, flip in any::<bool>()) {
        let code = EdgeReversalCode::new(
            (0..m).map(|i| if bits >> (i % 8) & 1 == 1 { -1 } else { 1 }).collect(),
        ).unwrap();
        let s = DihedralElement::new(m, rot, flip);
        for gamma in enumerate_maximal(&code).unwrap() {
            let conj = gamma.conjugate(&s).unwrap();
            prop_assert!(is_reversal_closed(conj.delta(), conj.elements()).unwrap());
            prop_assert_eq!(conj.len(), gamma.len());
        }
    }

    #[test]
    fn lifts_stay_reversal_closed(m in 3usize..=5, bits in any::<u8>(), k in 2usize..=3) {
        let code = EdgeReversalCode::new(
            (0..m).map(|i| if bits >> (i % 8) & 1 == 1 { -1 } else { 1 }).collect(),
        ).unwrap();
        for gamma in enumerate_maximal(&code).unwrap() {
            let rep = gamma.lift_repeat(k).unwrap();
            prop_assert!(is_reversal_closed(rep.delta(), rep.elements()).unwrap());
            prop_assert_eq!(rep.len(), k * gamma.len());
            let st = gamma.lift_stretch(k).unwrap();
            prop_assert!(is_reversal_closed(st.delta(), st.elements()).unwrap());
            prop_assert_eq!(st.len(), gamma.len());
        }
    }
}

fn arb_params() -> impl Strategy<Value = (usize, usize)> {
    prop_oneof![
        Just((4usize, 4usize)),
        Just((3, 6)),
        Just((5, 4)),
        Just((3, 8)),
        Just((6, 4)),
        Just((4, 6)),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn built_patches_validate_and_round_trip((m, n) in arb_params(), bits in any::<u8>(), radius in 0usize..=2) {
        let code = EdgeReversalCode::new(
            (0..m).map(|i| if bits >> (i % 8) & 1 == 1 { -1 } else { 1 }).collect(),
        ).unwrap();
        let patch = TilingPatch::build_reflective(
            CoxeterParams::new(m, n).unwrap(),
            MGonCategory::new(code).unwrap(),
            radius,
        ).unwrap();
        prop_assert!(patch.validate().is_empty());
        let doc = schema::patch_to_doc(&patch);
        let text = schema::to_json_string(&doc);
        let parsed: schema::PatchDoc = serde_json::from_str(&text).unwrap();
        let reloaded = schema::patch_from_doc(&parsed).unwrap();
        prop_assert_eq!(&reloaded, &patch);
        prop_assert_eq!(schema::to_json_string(&schema::patch_to_doc(&reloaded)), text);
    }

    #[test]
    fn uniform_reversals_realign((m, n) in arb_params(), base_bits in any::<u8>(), target_bits in any::<u8>(), rot in 0isize..8, flip in any::<bool>()) {
        let code_from = |b: u8| EdgeReversalCode::new(
            (0..m).map(|i| if b >> (i % 8) & 1 == 1 { -1 } else { 1 }).collect()
        ).unwrap();
        let base = MGonCategory::new(code_from(base_bits)).unwrap();
        let target = MGonCategory::new(code_from(target_bits)).unwrap();
        let sigma = DihedralElement::new(m, rot, flip);
        let patch = TilingPatch::build_reflective(
            CoxeterParams::new(m, n).unwrap(),
            base.clone(),
            1,
        ).unwrap();
        // A tuple of the restricted set, constant over the patch.
        let tuple = base.code()
            .product(&sigma.act_on_code(target.code()).unwrap())
            .unwrap();
        let tau = EdgeReversal::uniform(&patch, &tuple).unwrap();
        let (out, sigmas) = apply_reversal(&patch, &tau, &target).unwrap();
        prop_assert!(out.validate().is_empty(), "{:?}", out.validate().violations);
        for (&tile, chosen) in &sigmas {
            // The chosen element reproduces the tuple, and is the least such.
            let reproduced = base.code()
                .product(&chosen.act_on_code(target.code()).unwrap())
                .unwrap();
            prop_assert_eq!(&reproduced, &tau.tile_tuple(&patch, tile).unwrap());
        }
    }
}
