mod common;

use std::collections::{BTreeMap, BTreeSet};

use common::{involutions_avoiding, to_perm, P3412, P4321};
use fineinv::census::{
    appendix_listing, enumerate_involutions, reconcile, run_census, run_census_parallel,
    CensusQuery, GroupBy, GroupKey,
};
use fineinv::fine_structure::FineClass;
use fineinv::perm::{perm, Permutation};
use fineinv::series::gf::{gf_delta_i4321, NamedSeries};
use fineinv::series::rat;

fn q(n: usize, avoid: &[&str], by: GroupBy) -> CensusQuery {
    CensusQuery::new(n, avoid.iter().map(|s| perm(s)).collect(), by).unwrap()
}

fn fixed_split(n: usize) -> BTreeMap<usize, usize> {
    let mut out = BTreeMap::new();
    for p in appendix_listing(n).unwrap() {
        *out.entry(p.fixed_point_count()).or_default() += 1;
    }
    out
}

#[test]
fn path_generation_matches_filtering_all_involutions() {
    let cases: [(&[&str], &[&[usize]]); 6] = [
        (&["4321"], &[P4321]),
        (&["3412"], &[P3412]),
        (&["4321", "312"], &[P4321, &[3, 1, 2]]),
        (&["3412", "213"], &[P3412, &[2, 1, 3]]),
        (&["4321", "3412"], &[P4321, P3412]),
        (&["2143"], &[&[2, 1, 4, 3]]),
    ];
    for n in 1..=10 {
        for (avoid, pats) in cases {
            let got: BTreeSet<Vec<usize>> = enumerate_involutions(&q(n, avoid, GroupBy::None))
                .map(|p| p.values().to_vec())
                .collect();
            let expected: BTreeSet<Vec<usize>> =
                involutions_avoiding(n, pats).into_iter().collect();
            assert_eq!(got, expected, "n={n} avoid={avoid:?}");
        }
    }
}

#[test]
fn classification_buckets_match_oracle_simplicity() {
    for n in 4..=10 {
        let r = run_census_parallel(&q(n, &["4321"], GroupBy::FineClass));
        let simples = involutions_avoiding(n, &[P4321])
            .iter()
            .filter(|v| common::is_simple(v))
            .count() as u64;
        assert_eq!(
            r.count(GroupKey::Class(FineClass::Simple)),
            simples,
            "n={n}"
        );
        assert_eq!(r.buckets.values().sum::<u64>(), r.total);
    }
}

#[test]
fn sharded_census_is_deterministic() {
    for by in [GroupBy::FineClass, GroupBy::FineClassAndFixedPoints] {
        let query = q(11, &["4321"], by);
        let seq = run_census(&query);
        assert_eq!(run_census_parallel(&query), seq);
        assert_eq!(run_census_parallel(&query), seq);
    }
}

#[test]
fn simple_listings_for_lengths_five_to_seven() {
    assert_eq!(
        appendix_listing(5).unwrap(),
        ["35142", "42513"].map(perm).to_vec()
    );
    assert_eq!(
        appendix_listing(6).unwrap(),
        ["351624", "426153", "463152", "526413"].map(perm).to_vec()
    );
    let mut seven = [
        "4261735", "4631725", "3614725", "3617524", "3517264", "5274163",
    ]
    .map(perm)
    .to_vec();
    seven.sort();
    assert_eq!(appendix_listing(7).unwrap(), seven);
}

#[test]
fn simple_listing_fixed_point_splits_and_known_members() {
    assert_eq!(fixed_split(8), BTreeMap::from([(0, 1), (2, 14)]));
    assert_eq!(fixed_split(9), BTreeMap::from([(1, 13), (3, 18)]));
    assert_eq!(fixed_split(10), BTreeMap::from([(0, 3), (2, 54), (4, 10)]));
    let printed: [(usize, &[&str]); 3] = [
        (8, &["35172846", "52741836", "62748135"]),
        (
            9,
            &[
                "426183957",
                "526813947",
                "468152937",
                "527419386",
                "628491735",
                "627491385",
            ],
        ),
        (
            10,
            &[
                "5274193(10)68",
                "6274913(10)58",
                "6279513(10)48",
                "529416(10)837",
                "6284(10)17395",
            ],
        ),
    ];
    for (n, list) in printed {
        let all: BTreeSet<Permutation> = appendix_listing(n).unwrap().into_iter().collect();
        for s in list {
            assert!(all.contains(&perm(s)), "{s} missing from length {n}");
        }
    }
}

#[test]
fn inflations_of_simples_agree_with_series_difference() {
    let delta = gf_delta_i4321(12).unwrap();
    for n in 1..=12 {
        let r = run_census_parallel(&q(n, &["4321"], GroupBy::FineClass));
        assert_eq!(
            rat(r.count(GroupKey::Class(FineClass::InflationOfSimple)) as i64),
            delta.coeff(n),
            "n={n}"
        );
    }
}

#[test]
fn fixed_point_keys_share_the_parity_of_the_length() {
    for n in 1..=10 {
        for avoid in [&["4321"][..], &["3412"]] {
            let r = run_census(&q(n, avoid, GroupBy::FixedPoints));
            for key in r.buckets.keys() {
                let GroupKey::Fixed(k) = key else {
                    panic!("{key:?}")
                };
                assert_eq!(k % 2, n % 2);
            }
        }
    }
}

#[test]
fn every_named_series_reconciles_with_the_census() {
    for name in NamedSeries::ALL {
        let report = reconcile(name, 10).unwrap();
        assert!(report.all_pass(), "{name}\n{}", report.to_text());
        assert!(!report.rows.is_empty());
    }
}

#[test]
fn three_fixed_point_simples_of_length_nine() {
    let r = run_census_parallel(&q(9, &["4321"], GroupBy::FineClassAndFixedPoints));
    assert_eq!(r.count(GroupKey::ClassFixed(FineClass::Simple, 3)), 18);
    assert!(r.witnesses[&GroupKey::ClassFixed(FineClass::Simple, 3)]
        .contains(&to_perm(&[5, 2, 7, 4, 1, 9, 3, 8, 6])));
}
