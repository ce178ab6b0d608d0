//! Brute-force oracles that share no code with the library.
#![allow(dead_code)]

use fineinv::perm::Permutation;

/// All involutions of `1..=n` as one-line vectors, by pairing the smallest
/// unplaced point with itself or with a later unplaced point.
pub fn all_involutions(n: usize) -> Vec<Vec<usize>> {
    fn go(v: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = v.iter().position(|&x| x == 0) else {
            out.push(v.clone());
            return;
        };
        v[i] = i + 1;
        go(v, out);
        v[i] = 0;
        for j in i + 1..v.len() {
            if v[j] == 0 {
                v[i] = j + 1;
                v[j] = i + 1;
                go(v, out);
                v[i] = 0;
                v[j] = 0;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![0; n], &mut out);
    out
}

/// Whether some `k`-subset of positions of `p` is order-isomorphic to `pat`.
pub fn contains(p: &[usize], pat: &[usize]) -> bool {
    let k = pat.len();
    let n = p.len();
    if k > n {
        return false;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        let ok = (0..k).all(|a| (0..k).all(|b| (p[idx[a]] < p[idx[b]]) == (pat[a] < pat[b])));
        if ok {
            return true;
        }
        let mut i = k;
        loop {
            if i == 0 {
                return false;
            }
            i -= 1;
            if idx[i] < n - k + i {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

pub fn avoids(p: &[usize], pats: &[&[usize]]) -> bool {
    pats.iter().all(|pat| !contains(p, pat))
}

pub fn involutions_avoiding(n: usize, pats: &[&[usize]]) -> Vec<Vec<usize>> {
    all_involutions(n)
        .into_iter()
        .filter(|p| avoids(p, pats))
        .collect()
}

/// Length at least 4 and no window of length `2..n` whose values form a range.
pub fn is_simple(p: &[usize]) -> bool {
    let n = p.len();
    if n < 4 {
        return false;
    }
    for len in 2..n {
        for lo in 0..=n - len {
            let w = &p[lo..lo + len];
            let min = *w.iter().min().unwrap();
            let max = *w.iter().max().unwrap();
            if max - min + 1 == len {
                return false;
            }
        }
    }
    true
}

pub fn to_perm(v: &[usize]) -> Permutation {
    Permutation::new(v.to_vec()).unwrap()
}

pub const P4321: &[usize] = &[4, 3, 2, 1];
pub const P3412: &[usize] = &[3, 4, 1, 2];
pub const P321: &[usize] = &[3, 2, 1];
