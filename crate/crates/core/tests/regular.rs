use proptest::prelude::*;
use skewbrace::hgs::{
    brace_to_regular, is_regular, normalized_by, regular_to_brace, InducedSetting,
};
use skewbrace::{enumerate_braces, stock, FiniteGroup, SkewBrace};

fn braces_on(g: &FiniteGroup) -> Vec<SkewBrace> {
    enumerate_braces(g, None, None)
        .unwrap()
        .braces()
        .cloned()
        .collect()
}

#[test]
fn correspondence_round_trips_up_to_order_8() {
    for (_, g) in stock::groups_up_to_8() {
        let lambda = g.left_regular_perms();
        for b in braces_on(&g) {
            let s = brace_to_regular(&b);
            assert!(is_regular(&s));
            assert!(normalized_by(&s, &lambda));
            assert_eq!(regular_to_brace(&s, &g).unwrap(), b);
            assert_eq!(brace_to_regular(&regular_to_brace(&s, &g).unwrap()), s);
        }
    }
}

#[test]
fn psi_is_a_homomorphism() {
    for f in stock::factorizations().iter().filter(|f| f.circ.n() <= 12) {
        let setting = InducedSetting::new(&f.circ, &f.a, &f.b).unwrap();
        for a_brace in braces_on(&setting.a_circ()) {
            let m = setting.psi().backward_set(&brace_to_regular(&a_brace));
            assert_eq!(m.order(), a_brace.n());
            for x in m.elements() {
                for y in m.elements() {
                    let psi = setting.psi();
                    assert_eq!(
                        psi.forward(&x.compose(y)),
                        psi.forward(x).compose(&psi.forward(y))
                    );
                    assert_eq!(psi.backward(&psi.forward(x)), *x);
                }
            }
        }
    }
}

fn factorization_and_braces() -> impl Strategy<Value = (usize, usize, usize)> {
    let sizes: Vec<(usize, usize)> = stock::factorizations()
        .iter()
        .filter(|f| f.circ.n() <= 12)
        .map(|f| {
            let s = InducedSetting::new(&f.circ, &f.a, &f.b).unwrap();
            (braces_on(&s.a_circ()).len(), braces_on(&s.b_circ()).len())
        })
        .collect();
    (0..sizes.len()).prop_flat_map(move |i| (Just(i), 0..sizes[i].0, 0..sizes[i].1))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn induced_structures((fi, ai, bi) in factorization_and_braces()) {
        let facts: Vec<_> = stock::factorizations().into_iter().filter(|f| f.circ.n() <= 12).collect();
        let f = &facts[fi];
        let setting = InducedSetting::new(&f.circ, &f.a, &f.b).unwrap();
        let a_brace = braces_on(&setting.a_circ()).swap_remove(ai);
        let b_brace = braces_on(&setting.b_circ()).swap_remove(bi);
        let m = setting.psi().backward_set(&brace_to_regular(&a_brace));
        let n = brace_to_regular(&b_brace);

        let transfer = setting.check_normalization_transfer(&m);
        prop_assert!(transfer.agrees());
        prop_assert!(skewbrace::hgs::check_action_on_dot(&a_brace, setting.phi()).agrees());

        if transfer.lhs {
            let induced = setting.induce(&m, &n).unwrap();
            prop_assert!(is_regular(&induced));
            prop_assert!(normalized_by(&induced, &f.circ.left_regular_perms()));
            prop_assert!(setting.induced_equals_sdp(&a_brace, &b_brace).unwrap());
        } else {
            prop_assert!(setting.induce(&m, &n).is_err());
        }
    }
}

#[test]
fn rho_bar_is_regular_and_normalized_on_split_braces() {
    let mut checked = 0;
    for f in stock::factorizations().iter().filter(|f| f.circ.n() <= 12) {
        let setting = InducedSetting::new(&f.circ, &f.a, &f.b).unwrap();
        for b in braces_on(&f.circ) {
            if !skewbrace::sdp::is_internal_sdp(&b, &f.a, &f.b) {
                assert!(setting.rho_bar(&b).is_err());
                continue;
            }
            let rb = setting.rho_bar(&b).unwrap();
            assert!(is_regular(&rb.group));
            assert!(normalized_by(&rb.group, &setting.space().lambda_all()));
            checked += 1;
        }
    }
    assert!(checked > 0);
}
