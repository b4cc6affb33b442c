use hirzebruch::collections::{
    apply_group_element, apply_word, is_exceptional_collection, mutate, orbit_search,
    standard_collection, BraidLetter, BraidWord, Collection4, GroupElement,
};
use hirzebruch::k0::{
    bundle_representative, enumerate_exceptional_classes, euler_form, exceptional_class_from_slope,
    is_numerically_exceptional, EnumerationBox,
};
use hirzebruch::tower::{
    check_table_consistency, f0_class, f_i_class, restriction_profile, tower_entry, TowerKind,
};
use hirzebruch::twist::SphericalClass;
use hirzebruch::{DivisorClass, K0Class, SurfaceParams};
use proptest::prelude::*;
use proptest::sample::select;

const F2: SurfaceParams = SurfaceParams::F2;

fn exceptional_f2() -> impl Strategy<Value = K0Class> {
    let pool = enumerate_exceptional_classes(F2, &EnumerationBox::symmetric((1, 9), 6));
    select(pool)
}

fn word(max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec(0..6usize, 0..=max_len)
        .prop_map(|ix| ix.into_iter().map(|k| BraidLetter::all()[k]).collect())
}

fn orbit_member() -> impl Strategy<Value = Collection4> {
    word(8).prop_map(|w| apply_word(F2, &standard_collection(), &w).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn slope_solutions_are_exceptional(n in 0u32..6, r in 1i64..12, x in -15i64..15, y in -15i64..15) {
        let s = SurfaceParams::new(n);
        if let Ok(v) = exceptional_class_from_slope(s, r, DivisorClass::new(x, y)) {
            prop_assert!(is_numerically_exceptional(s, v));
            prop_assert_eq!(euler_form(s, v, v), Ok(1));
        }
    }

    #[test]
    fn bundle_representative_is_positive(v in exceptional_f2(), negate in any::<bool>()) {
        let v = if negate { -v } else { v };
        let b = bundle_representative(F2, v).unwrap();
        prop_assert!(b.rank > 0);
        prop_assert_eq!(euler_form(F2, b, b), Ok(1));
    }

    #[test]
    fn enumeration_stays_in_box(n in 0u32..5, lo in -4i64..4, w in 0i64..4, radius in 0i64..5) {
        let s = SurfaceParams::new(n);
        let b = EnumerationBox { rank: (lo, lo + w), x: (-radius, radius), y: (-radius, radius), ch2_x2: Some((-40, 40)) };
        for v in enumerate_exceptional_classes(s, &b) {
            prop_assert!(b.contains(&v));
            prop_assert!(v.satisfies_parity(s));
            prop_assert_eq!(euler_form(s, v, v), Ok(1));
        }
    }

    #[test]
    fn tower_twist_consistency(v in exceptional_f2(), i in 0i64..12) {
        let p = restriction_profile(v).unwrap();
        let a = SphericalClass::new(p.b0 + i - 1);
        let fi = f_i_class(v, i).unwrap();
        prop_assert_eq!(a.inverse_twist(fi).unwrap(), tower_entry(v, i).unwrap().total);
        prop_assert_eq!(a.twist(fi).unwrap(), tower_entry(v, i - 1).unwrap().total);
    }

    #[test]
    fn tower_total_is_invariant(v in exceptional_f2(), i in -30i64..30) {
        prop_assert_eq!(tower_entry(v, i).unwrap().total, v);
    }

    #[test]
    fn free_part_restriction_degree(v in exceptional_f2()) {
        let p = restriction_profile(v).unwrap();
        let f0 = f0_class(v).unwrap();
        prop_assert_eq!(f0.rank, p.rank);
        prop_assert_eq!(F2.intersect(f0.c1, DivisorClass::C), p.b0 * p.s + (p.b0 + 1) * (p.rank - p.s));
    }

    #[test]
    fn ext_table_never_errors_on_towers(v in exceptional_f2(), i in 0i64..12) {
        if tower_entry(v, i).unwrap().kind == TowerKind::SheafWithTorsion {
            prop_assert_eq!(check_table_consistency(v, i), Ok(()));
        }
    }

    #[test]
    fn multiplicities_drive_the_kind(v in exceptional_f2(), i in -12i64..12) {
        let p = restriction_profile(v).unwrap();
        let r = p.r(i);
        prop_assert_eq!(p.r(i + 1) - r, p.rank);
        prop_assert_eq!(r > 0, i >= 1 || (i == 0 && p.s < p.rank));
        prop_assert_eq!(r < 0, i <= -1);
        let kind = tower_entry(v, i).unwrap().kind;
        let expected = if r > 0 {
            TowerKind::SheafWithTorsion
        } else if i >= -1 {
            TowerKind::Bundle
        } else {
            TowerKind::Complex
        };
        prop_assert_eq!(kind, expected);
    }

    #[test]
    fn mutations_preserve_exceptionality(w in word(8)) {
        let mut c = standard_collection();
        for l in &w.letters {
            c = mutate(F2, &c, l.position(), l.sign()).unwrap();
            prop_assert!(is_exceptional_collection(F2, &c));
        }
    }

    #[test]
    fn left_right_mutations_invert(c in orbit_member(), k in 1u8..=3) {
        prop_assert_eq!(mutate(F2, &mutate(F2, &c, k, 1).unwrap(), k, -1).unwrap(), c);
        prop_assert_eq!(mutate(F2, &mutate(F2, &c, k, -1).unwrap(), k, 1).unwrap(), c);
    }

    #[test]
    fn words_invert(w in word(8)) {
        let c = standard_collection();
        let there = apply_word(F2, &c, &w).unwrap();
        prop_assert_eq!(apply_word(F2, &there, &w.inverse()).unwrap(), c);
    }

    #[test]
    fn canonical_signs_ignore_negation(c in orbit_member(), signs in prop::array::uniform4(0u8..2)) {
        let g = GroupElement { signs, word: BraidWord::default() };
        let flipped = apply_group_element(F2, &c, &g).unwrap();
        prop_assert_eq!(flipped.canonical_signs(), c.canonical_signs());
        prop_assert_eq!(c.canonical_signs().canonical_signs(), c.canonical_signs());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn search_certificates_reapply(w in word(4), signs in prop::array::uniform4(0u8..2)) {
        let std = standard_collection();
        let src = apply_group_element(F2, &std, &GroupElement { signs, word: w }).unwrap();
        let g = orbit_search(F2, &src, &std, 4).unwrap();
        // Re-apply one letter at a time rather than through the search.
        let mut c = src;
        for l in &g.word.letters {
            c = mutate(F2, &c, l.position(), l.sign()).unwrap();
        }
        for (v, s) in c.classes.iter_mut().zip(g.signs) {
            if s == 1 {
                *v = -*v;
            }
        }
        prop_assert_eq!(c, std);
    }
}
