//! Invariants as properties over seeded random models and spaces.

use esp_core::checks::{lattice_laws, space_laws, spectrum_laws, Battery};
use esp_core::lattice::{
    close, enumerate_by_filter, satisfies, Kind, Lattice, DEFAULT_INDEC_LIMIT,
};
use esp_core::random::{random_model, random_space, RandomConfig};
use esp_core::spectrum::build_spectrum;
use esp_core::{CategoryModel, Obj, PointSet, Subcat, Support};
use proptest::prelude::*;

const LIMIT: usize = DEFAULT_INDEC_LIMIT;

fn model(seed: u64) -> CategoryModel {
    random_model(seed, &RandomConfig::default())
}

fn small_model(seed: u64) -> CategoryModel {
    let cfg = RandomConfig {
        max_indecs: 5,
        ..RandomConfig::default()
    };
    random_model(seed, &cfg)
}

fn kinds(m: &CategoryModel) -> Vec<Kind> {
    Kind::ALL
        .into_iter()
        .filter(|k| !k.needs_tensor() || m.tensor_table().is_some())
        .collect()
}

fn assert_battery(b: &Battery) -> Result<(), TestCaseError> {
    let failed: Vec<String> = b
        .failures()
        .map(|l| format!("{}: {}", l.id, l.detail.clone().unwrap_or_default()))
        .collect();
    prop_assert!(failed.is_empty(), "{failed:?}");
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn closure_is_a_closure_operator(seed in any::<u64>(), bits in any::<u64>(), extra in 0usize..8) {
        let m = model(seed);
        let s = Subcat::from_bits(bits & m.full().bits());
        let mut t = s;
        t.insert(extra % m.len());
        for kind in kinds(&m) {
            let c = close(&m, s, kind).unwrap();
            prop_assert!(s.is_subset(c));
            prop_assert_eq!(close(&m, c, kind).unwrap(), c);
            prop_assert!(c.is_subset(close(&m, t, kind).unwrap()));
            prop_assert!(satisfies(&m, c, kind).unwrap());
        }
    }

    #[test]
    fn enumeration_equals_subset_filter(seed in any::<u64>()) {
        let m = model(seed);
        for kind in kinds(&m) {
            let fast = Lattice::new(&m).enumerate(kind).unwrap();
            let oracle = enumerate_by_filter(&m, kind, LIMIT).unwrap();
            prop_assert!(fast.same_members(&oracle), "{kind}");
        }
    }

    #[test]
    fn enumerated_families_are_intersection_closed(seed in any::<u64>()) {
        let m = model(seed);
        for kind in kinds(&m) {
            let f = Lattice::new(&m).enumerate(kind).unwrap();
            prop_assert!(f.contains(m.full()));
            for a in f.iter() {
                for b in f.iter() {
                    prop_assert!(f.contains(a.intersection(b)), "{kind}");
                }
            }
        }
    }

    #[test]
    fn lattice_battery_holds(seed in any::<u64>()) {
        let m = model(seed);
        let mut b = Battery::new();
        lattice_laws(&mut b, &m, LIMIT, seed).unwrap();
        assert_battery(&b)?;
    }

    #[test]
    fn space_battery_holds(seed in any::<u64>()) {
        let mut b = Battery::new();
        space_laws(&mut b, &random_space(seed, 10)).unwrap();
        assert_battery(&b)?;
    }

    #[test]
    fn hochster_dual_is_an_involution(seed in any::<u64>()) {
        let s = random_space(seed, 10);
        if s.is_spectral() {
            let d = s.hochster_dual().unwrap();
            let back = d.hochster_dual().unwrap();
            prop_assert_eq!(back.point_closures(), s.point_closures());
            for x in 0..s.len() {
                prop_assert_eq!(d.up(x), s.point_closure(x));
            }
        }
    }

    #[test]
    fn closure_is_union_of_point_closures(seed in any::<u64>(), bits in any::<u64>()) {
        let s = random_space(seed, 10);
        let n = s.len();
        let set = PointSet::from_indices(n, (0..n).filter(|&x| bits >> x & 1 == 1));
        let expected = set.iter().fold(s.empty_set(), |acc, x| acc.union(s.point_closure(x)));
        prop_assert_eq!(s.closure(&set), expected);
        prop_assert_eq!(s.interior(&set).complement(), s.closure(&set.complement()));
    }

    #[test]
    fn spectrum_battery_holds(seed in any::<u64>()) {
        let m = small_model(seed);
        let mut b = Battery::new();
        for kind in kinds(&m) {
            let f = Lattice::new(&m).enumerate(kind).unwrap();
            spectrum_laws(&mut b, &build_spectrum(&m, &f).unwrap(), seed).unwrap();
        }
        let l = Lattice::new(&m);
        spectrum_laws(&mut b, &build_spectrum(&m, &l.matsui_primes().unwrap()).unwrap(), seed).unwrap();
        if m.tensor_table().is_some() {
            spectrum_laws(&mut b, &build_spectrum(&m, &l.balmer_primes().unwrap()).unwrap(), seed).unwrap();
        }
        assert_battery(&b)?;
    }

    #[test]
    fn supports_are_additive(seed in any::<u64>(), a in prop::collection::vec((0usize..8, 1u32..3), 0..4),
                             b in prop::collection::vec((0usize..8, 1u32..3), 0..4)) {
        let m = small_model(seed);
        let n = m.len();
        let e = Obj::from_counts(a.into_iter().map(|(i, k)| (i % n, k)));
        let f = Obj::from_counts(b.into_iter().map(|(i, k)| (i % n, k)));
        let thick = Lattice::new(&m).enumerate(Kind::Thick).unwrap();
        let spec = build_spectrum(&m, &thick).unwrap();
        prop_assert!(spec.supp(&Obj::zero()).unwrap().is_empty());
        prop_assert_eq!(spec.supp(&e.direct_sum(&f)).unwrap(), spec.supp(&e).unwrap().union(&spec.supp(&f).unwrap()));
        let taut = Support::tautological(&spec);
        prop_assert_eq!(taut.sigma(&e).unwrap(), spec.supp(&e).unwrap());
    }

    #[test]
    fn tensor_is_commutative_and_associative(seed in any::<u64>()) {
        let m = model(seed);
        if let Some(t) = m.tensor_table() {
            let n = m.len();
            for a in 0..n {
                for b in 0..n {
                    prop_assert_eq!(t.product(a, b), t.product(b, a));
                    for c in 0..n {
                        let left = t.tensor(t.product(a, b), &Obj::indec(c));
                        let right = t.tensor(&Obj::indec(a), t.product(b, c));
                        prop_assert_eq!(left, right);
                    }
                }
                prop_assert_eq!(t.tensor(t.unit(), &Obj::indec(a)), Obj::indec(a));
            }
        }
    }

    #[test]
    fn model_documents_round_trip(seed in any::<u64>()) {
        let m = model(seed);
        let text = serde_json::to_string(&m.to_doc()).unwrap();
        let back = CategoryModel::from_json(&text).unwrap();
        prop_assert_eq!(back.hash(), m.hash());
        prop_assert_eq!(back, m);
    }
}
