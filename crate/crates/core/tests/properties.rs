use proptest::prelude::*;

use slicings::nilp::{nilp_to_slicing, slicing_to_nilp, NilpTriple};
use slicings::perm::{children_baxter, is_baxter, Permutation};
use slicings::polyomino::{children, is_member, BaxterSlicing};
use slicings::series::{Poly2, TruncatedSeries};
use slicings::RuleId;

/// Walks the Bax tree from the root, taking child `i mod #children` at each step.
fn walk(choices: &[usize]) -> BaxterSlicing {
    let mut s = BaxterSlicing::unit();
    for &i in choices {
        let kids = children(&s, RuleId::Bax).unwrap();
        s = kids[i % kids.len()].clone();
    }
    s
}

proptest! {
    #[test]
    fn slicing_encodings_round_trip(choices in prop::collection::vec(0usize..64, 0..12)) {
        let s = walk(&choices);
        prop_assert_eq!(s.size() as usize, choices.len() + 1);
        prop_assert_eq!(&BaxterSlicing::from_blocks(s.blocks()).unwrap(), &s);
        prop_assert_eq!(&BaxterSlicing::from_json(&s.to_json()).unwrap(), &s);
        let t = slicing_to_nilp(&s);
        prop_assert!(t.validate().is_ok());
        prop_assert_eq!(&NilpTriple::from_json(&t.to_json()).unwrap(), &t);
        prop_assert_eq!(&nilp_to_slicing(&t).unwrap(), &s);
    }

    #[test]
    fn families_are_nested(choices in prop::collection::vec(0usize..64, 0..12), m in 0u64..4) {
        let s = walk(&choices);
        if is_member(&s, RuleId::RowRestricted(m + 1)) {
            prop_assert!(is_member(&s, RuleId::Skinny(m)));
        }
        if is_member(&s, RuleId::Skinny(m)) {
            prop_assert!(is_member(&s, RuleId::Skinny(m + 1)));
        }
    }

    #[test]
    fn baxter_growth_stays_baxter(choices in prop::collection::vec(0usize..64, 0..9)) {
        let mut p = Permutation::identity(1);
        for &i in &choices {
            let kids = children_baxter(&p);
            p = kids[i % kids.len()].clone();
        }
        prop_assert!(is_baxter(&p));
        prop_assert_eq!(p.len(), choices.len() + 1);
        prop_assert_eq!(&p.to_string().parse::<Permutation>().unwrap(), &p);
    }

    #[test]
    fn series_inverse(c in prop::collection::vec(-20i64..20, 1..8), c0 in 1i64..5) {
        let mut coeffs = c.clone();
        coeffs[0] = c0;
        let s = TruncatedSeries::from_integers(coeffs, 7);
        let prod = &s * &s.inverse().unwrap();
        prop_assert_eq!(prod, TruncatedSeries::one(7));
    }

    #[test]
    fn poly_text_round_trip(terms in prop::collection::vec((-9i64..9, 0u32..4, 0u32..4), 0..6)) {
        let p = Poly2::from_terms(&terms);
        if !p.is_zero() {
            prop_assert_eq!(p.to_string().parse::<Poly2>().unwrap(), p);
        }
    }
}
