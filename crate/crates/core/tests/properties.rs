use std::sync::Arc;

use proptest::prelude::*;

use pbw_core::corpus;
use pbw_core::fincat::{
    coequalizer, enumerate_functors, natural_iso_search, validate_functor, validate_nat_trans,
    Direction, FinCategory, FunctorData, Mor, Obj,
};
use pbw_core::finset::oracle::{brute_force_congruence, is_congruence};
use pbw_core::finset::{
    catalogue, check_algebra, congruence_closure, enumerate_algebras, is_algebra_map, quotient,
    FinAlgebra,
};
use pbw_core::monad::{em_category, enumerate_monads};

fn small_categories() -> Vec<Arc<FinCategory>> {
    vec![
        corpus::terminal(),
        corpus::arrow(),
        corpus::chain3(),
        corpus::z2(),
        corpus::idempotent(),
        corpus::left_zero(),
        Arc::new(FinCategory::poset("V", &["l", "r", "t"], |a, b| {
            a == b || b == 2
        })),
    ]
}

fn category() -> impl Strategy<Value = Arc<FinCategory>> {
    prop::sample::select(small_categories())
}

/// Every pair of tables, filtered by the validator.
fn naive_functor_count(src: &Arc<FinCategory>, tgt: &Arc<FinCategory>) -> usize {
    let (so, sm) = (src.object_count(), src.morphism_count());
    let (to, tm) = (tgt.object_count(), tgt.morphism_count());
    let mut count = 0;
    for oc in 0..to.pow(so as u32) {
        let obj_map: Vec<Obj> = (0..so).map(|i| Obj(oc / to.pow(i as u32) % to)).collect();
        for mc in 0..tm.pow(sm as u32) {
            let mor_map: Vec<Mor> = (0..sm).map(|i| Mor(mc / tm.pow(i as u32) % tm)).collect();
            let f = FunctorData::new(src.clone(), tgt.clone(), obj_map.clone(), mor_map).unwrap();
            if validate_functor(&f).is_valid() {
                count += 1;
            }
        }
    }
    count
}

/// A catalogue monad, an algebra for it on at most five points, and seed
/// pairs in its carrier.
fn algebra_with_seeds() -> impl Strategy<Value = (FinAlgebra, Vec<(usize, usize)>)> {
    let algebras: Vec<FinAlgebra> = catalogue()
        .iter()
        .flat_map(|m| (1..=5).flat_map(move |n| enumerate_algebras(m, n).unwrap()))
        .collect();
    prop::sample::select(algebras).prop_flat_map(|a| {
        let n = a.carrier();
        (Just(a), prop::collection::vec((0..n, 0..n), 0..3))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn functor_enumeration_matches_generate_and_filter(src in category(), tgt in category()) {
        prop_assume!(src.morphism_count() <= 4 && tgt.morphism_count() <= 4);
        let found: Vec<_> = enumerate_functors(&src, &tgt).collect();
        for f in &found {
            prop_assert!(validate_functor(f).is_valid());
        }
        prop_assert_eq!(found.len(), naive_functor_count(&src, &tgt));
    }

    #[test]
    fn functor_composition_is_associative_with_units(a in category(), b in category(), c in category(), seed in any::<prop::sample::Index>()) {
        let fs: Vec<_> = enumerate_functors(&a, &b).collect();
        let gs: Vec<_> = enumerate_functors(&b, &c).collect();
        prop_assume!(!fs.is_empty() && !gs.is_empty());
        let f = seed.get(&fs);
        let g = seed.get(&gs);
        let gf = g.after(f).unwrap();
        prop_assert!(validate_functor(&gf).is_valid());
        prop_assert_eq!(&gf.after(&FunctorData::identity(a.clone())).unwrap(), &gf);
        prop_assert_eq!(&FunctorData::identity(c.clone()).after(&gf).unwrap(), &gf);
    }

    #[test]
    fn iso_search_returns_invertible_natural_transformations(a in category(), b in category(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let fs: Vec<_> = enumerate_functors(&a, &b).collect();
        prop_assume!(!fs.is_empty());
        if let Some(t) = natural_iso_search(i.get(&fs), j.get(&fs)) {
            prop_assert!(validate_nat_trans(&t).is_valid());
            for o in a.objects() {
                prop_assert!(b.is_iso(t.at(o)));
            }
        }
    }

    #[test]
    fn em_adjunctions_satisfy_their_invariants(c in category(), i in any::<prop::sample::Index>()) {
        let monads = enumerate_monads(&c);
        let m = i.get(&monads);
        let em = em_category(m).unwrap();
        prop_assert!(pbw_core::fincat::validate_adjunction(&em.adj).is_valid());
        prop_assert_eq!(&em.pi.after(&em.rho).unwrap(), &m.endo);
        prop_assert_eq!(em.algebras(), &pbw_core::monad::enumerate_algebras(m)[..]);
    }

    #[test]
    fn coequalizers_coequalize_and_factor_uniquely(c in category(), i in any::<prop::sample::Index>(), j in any::<prop::sample::Index>()) {
        let mors: Vec<Mor> = c.morphisms().collect();
        let (f, g) = (*i.get(&mors), *j.get(&mors));
        prop_assume!(c.dom(f) == c.dom(g) && c.cod(f) == c.cod(g));
        if let Some((q, e)) = coequalizer(&c, f, g).unwrap() {
            prop_assert_eq!(c.comp(e, f), c.comp(e, g));
            prop_assert_eq!(c.cod(e), q);
            for z in c.objects() {
                for &h in c.hom(c.cod(f), z) {
                    if c.comp(h, f) == c.comp(h, g) {
                        let through: Vec<_> = c.hom(q, z).iter().filter(|&&k| c.comp(k, e) == h).collect();
                        prop_assert_eq!(through.len(), 1);
                    }
                }
            }
        }
    }
}

#[test]
fn mate_round_trips_are_identities() {
    for (name, adj) in corpus::corpus_adjunctions() {
        let (d, c) = (adj.lower().clone(), adj.upper().clone());
        for a in d.objects() {
            for b in c.objects() {
                for &g in c.hom(adj.left.obj(a), b) {
                    let f = adj.transpose(Direction::Right, a, g).unwrap();
                    assert_eq!(adj.transpose(Direction::Left, b, f).unwrap(), g, "{name}");
                }
                for &f in d.hom(a, adj.right.obj(b)) {
                    let g = adj.transpose(Direction::Left, b, f).unwrap();
                    assert_eq!(adj.transpose(Direction::Right, a, g).unwrap(), f, "{name}");
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn congruence_closure_matches_partition_search((a, seeds) in algebra_with_seeds()) {
        let closure = congruence_closure(&a, &seeds);
        prop_assert_eq!(&closure, &brute_force_congruence(&a, &seeds).unwrap());
        prop_assert!(is_congruence(&a, &closure).unwrap());
        let q = quotient(&a, &closure);
        // T²(carrier) is beyond the enumeration bound for powerset on five points
        if q.carrier() < 5 {
            prop_assert!(check_algebra(&q).unwrap().is_valid());
        }
        prop_assert!(is_algebra_map(&a, &q, &closure.projection()).unwrap());
    }
}
