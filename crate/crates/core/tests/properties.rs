use pgonal::algebra::AlgebraElement;
use pgonal::covers::{genus_closed_forms, genus_table_by_oracle, CoverParams};
use pgonal::galois::build_closure_model;
use pgonal::isogeny::character_idempotent;
use pgonal::monodromy::find_monodromy;
use pgonal::reptheory::NCharacter;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn oracle_matches_closed_forms(p in prop::sample::select(vec![3usize, 5]), beta in 3usize..=12) {
        let model = build_closure_model(p).unwrap();
        let datum = find_monodromy(&model, beta).unwrap();
        let oracle = genus_table_by_oracle(&model, &datum).unwrap();
        let closed = genus_closed_forms(&CoverParams::new(p, beta).unwrap(), model.m()).unwrap();
        prop_assert_eq!(oracle, closed);
    }

    #[test]
    fn character_idempotents_are_orthogonal(a in 0u32..16, b in 0u32..16) {
        let model = build_closure_model(5).unwrap();
        let ea = character_idempotent(&model, NCharacter { functional: a });
        let eb = character_idempotent(&model, NCharacter { functional: b });
        let prod = ea.product(&eb).unwrap();
        if a == b {
            prop_assert_eq!(prod, ea);
        } else {
            prop_assert!(prod.is_zero());
        }
    }

    #[test]
    fn conjugating_the_tuple_preserves_genera(beta in 3usize..=6, g in 0usize..80) {
        let model = build_closure_model(5).unwrap();
        let group = model.group();
        let datum = find_monodromy(&model, beta).unwrap();
        let conj: Vec<usize> = datum.tuple().iter().map(|&x| group.conjugate(x, g)).collect();
        let moved = pgonal::monodromy::MonodromyDatum::new(group.clone(), 5, beta, conj);
        prop_assert_eq!(
            genus_table_by_oracle(&model, &datum).unwrap(),
            genus_table_by_oracle(&model, &moved).unwrap()
        );
    }
}

#[test]
fn subgroup_sum_squares() {
    let model = build_closure_model(3).unwrap();
    for sub in [model.n(), model.cyclic(), model.h()] {
        let s = AlgebraElement::subgroup_sum(sub);
        assert_eq!(s.product(&s).unwrap(), s.scale_int(sub.order() as i64));
    }
}
