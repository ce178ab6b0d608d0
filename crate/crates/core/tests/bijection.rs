mod common;

use std::collections::BTreeSet;

use common::{all_involutions, contains, to_perm, P321, P3412, P4321};
use fineinv::motzkin::{
    enumerate_paths, involution_of_path, path_of_involution, validate_path, LabelledMotzkinPath,
    PathClass, Step,
};
use fineinv::perm::Permutation;
use proptest::prelude::*;

fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for slot in 0..n {
            let mut q = p.clone();
            q.insert(slot, n);
            out.push(q);
        }
    }
    out
}

#[test]
fn every_involution_round_trips_through_its_path() {
    for n in 1..=10 {
        for v in all_involutions(n) {
            let p = to_perm(&v);
            let path = path_of_involution(&p).unwrap();
            assert_eq!(path.len(), n);
            assert_eq!(involution_of_path(&path), p, "{p}");
        }
    }
}

#[test]
fn every_labelled_path_round_trips_through_its_involution() {
    for n in 1..=8 {
        let mut seen = BTreeSet::new();
        for path in enumerate_paths(n, PathClass::All) {
            assert_eq!(
                validate_path(path.steps(), path.labels()).as_ref(),
                Ok(&path)
            );
            let p = involution_of_path(&path);
            assert!(p.is_involution());
            assert_eq!(path_of_involution(&p).unwrap(), path);
            assert!(seen.insert(p.values().to_vec()));
        }
        let expected: BTreeSet<Vec<usize>> = all_involutions(n).into_iter().collect();
        assert_eq!(seen, expected, "n={n}");
    }
}

#[test]
fn labels_count_nesting_transpositions() {
    for n in 2..=9 {
        for v in all_involutions(n) {
            let mut pairs: Vec<(usize, usize)> = (1..=n)
                .filter(|&i| v[i - 1] > i)
                .map(|i| (i, v[i - 1]))
                .collect();
            pairs.sort_by_key(|&(_, big)| big);
            let expected: Vec<usize> = pairs
                .iter()
                .map(|&(m, big)| 1 + pairs.iter().filter(|&&(m2, b2)| m2 < m && b2 > big).count())
                .collect();
            let path = path_of_involution(&to_perm(&v)).unwrap();
            assert_eq!(path.labels(), expected.as_slice(), "{v:?}");
        }
    }
}

#[test]
fn labellings_characterize_avoidance_classes() {
    for n in 1..=10 {
        for v in all_involutions(n) {
            let path = path_of_involution(&to_perm(&v)).unwrap();
            assert_eq!(!contains(&v, P4321), path.is_unitary(), "{v:?}");
            assert_eq!(!contains(&v, P3412), path.is_maximal(), "{v:?}");
            let flat_fixed = path
                .steps()
                .iter()
                .zip(path.heights())
                .all(|(&s, h)| s != Step::Horizontal || h == 0);
            assert_eq!(
                !contains(&v, P321),
                path.is_unitary() && flat_fixed,
                "{v:?}"
            );
        }
    }
}

#[test]
fn irreducible_paths_are_connected_involutions() {
    for n in 1..=10 {
        for v in all_involutions(n) {
            let mut max = 0;
            let splits = (0..n - 1).any(|i| {
                max = max.max(v[i]);
                max == i + 1
            });
            let path = path_of_involution(&to_perm(&v)).unwrap();
            assert_eq!(path.is_irreducible(), !splits, "{v:?}");
        }
    }
}

#[test]
fn reverse_complement_mirrors_unitary_paths() {
    for n in 1..=10 {
        for v in common::involutions_avoiding(n, &[P4321]) {
            let p = to_perm(&v);
            let path = path_of_involution(&p).unwrap();
            let mirrored: Vec<Step> = path
                .steps()
                .iter()
                .rev()
                .map(|s| match s {
                    Step::Up => Step::Down,
                    Step::Down => Step::Up,
                    Step::Horizontal => Step::Horizontal,
                })
                .collect();
            let rc = path_of_involution(&p.reverse_complement()).unwrap();
            assert_eq!(rc, LabelledMotzkinPath::unitary(mirrored).unwrap(), "{p}");
            assert_eq!(path.reflect(), rc);
        }
    }
}

#[test]
fn pattern_search_matches_combination_oracle() {
    let patterns: Vec<Vec<usize>> = all_permutations(3)
        .into_iter()
        .chain(all_permutations(4))
        .collect();
    for n in 1..=8 {
        for v in all_permutations(n) {
            let p = to_perm(&v);
            for pat in &patterns {
                assert_eq!(
                    p.contains_pattern(&to_perm(pat)),
                    contains(&v, pat),
                    "{v:?} {pat:?}"
                );
            }
        }
    }
}

#[test]
fn path_counts_are_involution_counts() {
    // Σ over Motzkin paths of Π heights of down steps, independently of labels.
    fn weighted(n: usize) -> u64 {
        let mut row = vec![0u64; n + 2];
        row[0] = 1;
        for _ in 0..n {
            let mut next = vec![0u64; n + 2];
            for h in 0..=n {
                if row[h] == 0 {
                    continue;
                }
                next[h + 1] += row[h];
                next[h] += row[h];
                if h > 0 {
                    next[h - 1] += row[h] * h as u64;
                }
            }
            row = next;
        }
        row[0]
    }
    for n in 1..=8 {
        assert_eq!(
            enumerate_paths(n, PathClass::All).count() as u64,
            weighted(n)
        );
        assert_eq!(weighted(n), all_involutions(n).len() as u64);
    }
}

proptest! {
    #[test]
    fn permutation_text_round_trips(v in (1usize..14).prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())) {
        let p = Permutation::new(v).unwrap();
        prop_assert_eq!(p.to_compact().parse::<Permutation>().unwrap(), p.clone());
        prop_assert_eq!(p.to_spaced().parse::<Permutation>().unwrap(), p.clone());
        prop_assert_eq!(p.reverse_complement().reverse_complement(), p.clone());
        prop_assert_eq!(p.inverse().inverse(), p);
    }

    #[test]
    fn path_text_round_trips(seed in 0usize..2000, n in 1usize..9) {
        let paths: Vec<_> = enumerate_paths(n, PathClass::All).collect();
        let path = &paths[seed % paths.len()];
        prop_assert_eq!(&path.to_string().parse::<LabelledMotzkinPath>().unwrap(), path);
    }
}
