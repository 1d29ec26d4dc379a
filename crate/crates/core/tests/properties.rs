use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use starlike_core::bracket::{chi_poly, collapse_to_kauffman, v_st};
use starlike_core::complex::Diff;
use starlike_core::homology::{cohomology_table, homology_table};
use starlike_core::moves::{apply_move, sites};
use starlike_core::random::{random_diagram, random_label_order};
use starlike_core::{parse_diagram, LinkDiagram};

fn diagram(seed: u64, max: usize) -> LinkDiagram {
    random_diagram(&mut ChaCha8Rng::seed_from_u64(seed), max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn json_round_trip(seed in any::<u64>()) {
        let d = diagram(seed, 8);
        prop_assert_eq!(parse_diagram(&d.to_json_string()).unwrap(), d);
    }

    #[test]
    fn mirror_is_an_involution_and_negates_writhe(seed in any::<u64>()) {
        let d = diagram(seed, 8);
        prop_assert_eq!(d.mirror().mirror(), d.clone());
        prop_assert_eq!(d.mirror().writhe(), -d.writhe());
    }

    #[test]
    fn canonical_key_ignores_labels(seed in any::<u64>()) {
        let d = diagram(seed, 8);
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
        let p = d.with_label_order(random_label_order(&mut rng, d.num_crossings())).unwrap();
        prop_assert_eq!(p.canonical_key(), d.canonical_key());
    }

    #[test]
    fn every_site_preserves_v_st(seed in any::<u64>(), pick in any::<prop::sample::Index>()) {
        let d = diagram(seed, 5);
        let all = sites(&d);
        let m = all[pick.index(all.len())];
        let e = apply_move(&d, &m).unwrap();
        prop_assert_eq!(v_st(&e, 12).unwrap(), v_st(&d, 12).unwrap(), "{:?}", m);
    }

    #[test]
    fn mirror_negates_the_classical_variable(seed in any::<u64>()) {
        let d = diagram(seed, 7);
        let k = collapse_to_kauffman(&chi_poly(&v_st(&d, 12).unwrap()));
        let km = collapse_to_kauffman(&chi_poly(&v_st(&d.mirror(), 12).unwrap()));
        let flipped = starlike_core::Laurent::from_terms(k.terms().map(|(e, c)| (-e, c)));
        prop_assert_eq!(km, flipped);
    }

    #[test]
    fn homology_is_dual_to_mirror_cohomology_in_rank(seed in any::<u64>()) {
        let d = diagram(seed, 5);
        let h = homology_table(&d, Diff::D, 12).unwrap();
        let c = cohomology_table(&d.mirror(), 12).unwrap().negated();
        let ranks = |t: &starlike_core::homology::HomologyTable| -> Vec<((i32, i32, i32), usize)> {
            t.0.iter().filter(|(_, g)| g.rank > 0).map(|(&k, g)| (k, g.rank)).collect()
        };
        prop_assert_eq!(ranks(&h), ranks(&c));
    }
}
