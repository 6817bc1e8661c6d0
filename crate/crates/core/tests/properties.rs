use std::sync::Arc;

use proptest::prelude::*;

use spectra::bits::{self, Mask};
use spectra::bridge;
use spectra::caps::Caps;
use spectra::maps::{enumerate_continuous_maps, ContinuousMap};
use spectra::oracle::{components_by_splitting, zmod_primes_by_divisors};
use spectra::reflection::{apply_f, check_unit};
use spectra::report::claims;
use spectra::ring::{product, zmod};
use spectra::sober::{
    alpha_unit_into, check_closed_set_bijection, check_sober, components_of_t, soberify,
};
use spectra::topology::{default_labels, FiniteSpace};

fn space(max_points: usize) -> impl Strategy<Value = FiniteSpace> {
    (1..=max_points).prop_flat_map(|n| {
        prop::collection::vec(0..=bits::full(n), 0..=n + 1).prop_map(move |subbasis| {
            FiniteSpace::from_subbasis(default_labels(n), subbasis).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn components_agree_with_splitting(x in space(7)) {
        prop_assert!(components_by_splitting(&x).same_blocks(&x.connected_components()));
    }

    #[test]
    fn clopens_are_unions_of_components(x in space(7)) {
        let components = x.connected_components();
        for c in x.clopens() {
            prop_assert!(components.is_saturated(c));
        }
        prop_assert_eq!(x.is_profinite_finite(), x.is_discrete());
    }

    #[test]
    fn component_topologies_nest(x in space(7)) {
        let x = Arc::new(x);
        let quotient = x.quotient_topology(&x.connected_components()).unwrap();
        let (generated, projection) = x.clopen_generated_component_space();
        prop_assert!(generated.opens().iter().all(|&o| quotient.is_open(o)));
        prop_assert!(generated.is_discrete());
        prop_assert!(projection.is_surjective());
        prop_assert!(check_unit(&x).pass);
    }

    #[test]
    fn soberification_claims(x in space(6)) {
        let x = Arc::new(x);
        let t = soberify(&x);
        prop_assert!(check_closed_set_bijection(&t, "x").pass);
        prop_assert!(check_sober(&t.space, claims::SOBER_III, "x").pass);
        prop_assert!(alpha_unit_into(&t).is_ok());
        let families = components_of_t(&t).unwrap();
        prop_assert_eq!(families.len(), x.connected_components().len());
        // t(t(X)) ≅ t(X)
        let tt = soberify(&t.space);
        prop_assert_eq!(tt.points.len(), t.points.len());
    }

    #[test]
    fn composites_of_continuous_maps_are_continuous(x in space(3), y in space(3)) {
        let (x, y) = (Arc::new(x), Arc::new(y));
        let caps = Caps::default();
        let forward = enumerate_continuous_maps(&x, &y, caps.maps).unwrap();
        let back = enumerate_continuous_maps(&y, &x, caps.maps).unwrap();
        for f in forward.iter().take(8) {
            for g in back.iter().take(8) {
                let gf = f.then(g).unwrap();
                prop_assert!(ContinuousMap::new(x.clone(), x.clone(), gf.images().to_vec()).is_ok());
            }
        }
        let fx = apply_f(&x);
        prop_assert_eq!(fx.image.len(), x.connected_components().len());
    }

    #[test]
    fn zmod_structure(n in 2usize..=64) {
        let r = zmod(n, &Caps::default()).unwrap();
        let primes = zmod_primes_by_divisors(n).len();
        prop_assert_eq!(r.prime_ideals().len(), primes);
        prop_assert_eq!(r.idempotents().len(), 1 << primes);
        prop_assert_eq!(r.max_regular_ideals().len(), primes);
        // Spec of ℤ/n is discrete, one component per prime
        let components = bridge::components_via_max_regular(&r).unwrap();
        prop_assert_eq!(components.len(), primes);
        prop_assert!(components.iter().all(|(_, c): &(_, Mask)| c.count_ones() == 1));
    }

    #[test]
    fn product_rings_pass_bridge_checks(a in 2usize..=8, b in 2usize..=8) {
        let caps = Caps::default();
        let r = product(&zmod(a, &caps).unwrap(), &zmod(b, &caps).unwrap(), &caps).unwrap();
        for report in [
            bridge::check_max_reg(&r),
            bridge::check_eta_bijective(&r),
            bridge::check_goodlem(&r),
            bridge::check_coarser(&r),
            bridge::check_mrprofinite(&r),
        ] {
            prop_assert!(report.pass, "{:?}", report);
        }
    }
}
