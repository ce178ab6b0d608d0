//! Permutations in one-line notation, involutions and their cycle structure,
//! classical pattern containment and the reverse-complement map.
//!
//! Everything here is 1-indexed: `values()[i - 1]` is `π(i)`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("not a bijection on 1..{n}: {detail}")]
    NotABijection { n: usize, detail: String },
    #[error("empty permutation")]
    Empty,
    #[error("permutation {0} is not an involution")]
    NotAnInvolution(Permutation),
    #[error("cannot parse permutation: {0}")]
    Parse(String),
}

/// A permutation of `1..=n`, `n >= 1`, in one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    values: Vec<usize>,
}

impl Permutation {
    /// Validates `values` as a bijection on `1..=values.len()`.
    pub fn new(values: Vec<usize>) -> Result<Self, PermError> {
        let n = values.len();
        if n == 0 {
            return Err(PermError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &v in &values {
            if v == 0 || v > n {
                return Err(PermError::NotABijection {
                    n,
                    detail: format!("value {v} out of range"),
                });
            }
            if seen[v] {
                return Err(PermError::NotABijection {
                    n,
                    detail: format!("value {v} repeated"),
                });
            }
            seen[v] = true;
        }
        Ok(Permutation { values })
    }

    /// Caller guarantees `values` is a bijection on `1..=n`.
    pub(crate) fn from_vec_unchecked(values: Vec<usize>) -> Self {
        debug_assert!(Permutation::new(values.clone()).is_ok());
        Permutation { values }
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1, "identity of length 0");
        Permutation {
            values: (1..=n).collect(),
        }
    }

    /// Relative order of an arbitrary sequence of distinct integers.
    pub fn standardize(seq: &[usize]) -> Result<Self, PermError> {
        let mut idx: Vec<usize> = (0..seq.len()).collect();
        idx.sort_by_key(|&i| seq[i]);
        let mut values = vec![0; seq.len()];
        for (rank, &i) in idx.iter().enumerate() {
            values[i] = rank + 1;
        }
        if idx.windows(2).any(|w| seq[w[0]] == seq[w[1]]) {
            return Err(PermError::NotABijection {
                n: seq.len(),
                detail: "repeated entries cannot be standardized".into(),
            });
        }
        Permutation::new(values)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    /// Always false: the empty permutation is never constructed.
    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `π(i)` for `1 <= i <= n`.
    pub fn at(&self, i: usize) -> usize {
        self.values[i - 1]
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.len()];
        for (i, &v) in self.values.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Permutation { values: inv }
    }

    pub fn is_involution(&self) -> bool {
        self.values
            .iter()
            .enumerate()
            .all(|(i, &v)| self.values[v - 1] == i + 1)
    }

    pub fn fixed_point_count(&self) -> usize {
        self.values
            .iter()
            .enumerate()
            .filter(|&(i, &v)| v == i + 1)
            .count()
    }

    pub fn cycle_decomposition(&self) -> Result<CycleDecomposition, PermError> {
        if !self.is_involution() {
            return Err(PermError::NotAnInvolution(self.clone()));
        }
        let mut transpositions = Vec::new();
        let mut fixed_points = Vec::new();
        for (i, &v) in self.values.iter().enumerate() {
            let pos = i + 1;
            if v == pos {
                fixed_points.push(pos);
            } else if pos < v {
                transpositions.push((pos, v));
            }
        }
        Ok(CycleDecomposition {
            n: self.len(),
            transpositions,
            fixed_points,
        })
    }

    /// `q(i) = n + 1 - p(n + 1 - i)`.
    pub fn reverse_complement(&self) -> Permutation {
        let n = self.len();
        Permutation {
            values: self.values.iter().rev().map(|&v| n + 1 - v).collect(),
        }
    }

    pub fn position_roles(&self) -> Vec<PositionRole> {
        self.values
            .iter()
            .enumerate()
            .map(|(i, &v)| PositionRole::of(i + 1, v))
            .collect()
    }

    /// True when some subsequence is order-isomorphic to `pattern`.
    ///
    /// Exhaustive search over index subsets, pruned as soon as a partial
    /// choice stops being order-isomorphic to the matching pattern prefix.
    pub fn contains_pattern(&self, pattern: &Permutation) -> bool {
        let k = pattern.len();
        if k > self.len() {
            return false;
        }
        let mut chosen = Vec::with_capacity(k);
        self.extend_match(pattern.values(), 0, &mut chosen)
    }

    fn extend_match(&self, pattern: &[usize], start: usize, chosen: &mut Vec<usize>) -> bool {
        let j = chosen.len();
        if j == pattern.len() {
            return true;
        }
        let remaining = pattern.len() - j;
        for idx in start..=self.len() - remaining {
            let v = self.values[idx];
            let consistent = chosen
                .iter()
                .zip(pattern)
                .all(|(&c, &pv)| (c < v) == (pv < pattern[j]));
            if consistent {
                chosen.push(v);
                if self.extend_match(pattern, idx + 1, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }

    pub fn avoids_all<'a, I>(&self, patterns: I) -> bool
    where
        I: IntoIterator<Item = &'a Permutation>,
    {
        patterns.into_iter().all(|pat| !self.contains_pattern(pat))
    }

    /// Space-separated one-line form, the emitter used everywhere.
    pub fn to_spaced(&self) -> String {
        self.values
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Contiguous digits for `n <= 9`, parenthesised multi-digit entries above.
    pub fn to_compact(&self) -> String {
        self.values
            .iter()
            .map(|&v| {
                if v < 10 {
                    v.to_string()
                } else {
                    format!("({v})")
                }
            })
            .collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_spaced())
    }
}

/// Accepts `"4 6 8 1"`, `"4,6,8,1"`, `"4681"` and `"529416(10)837"`.
impl FromStr for Permutation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(PermError::Empty);
        }
        let separated = s.contains(|c: char| c.is_whitespace() || c == ',');
        let mut values = Vec::new();
        if separated {
            for tok in s.split(|c: char| c.is_whitespace() || c == ',') {
                if tok.is_empty() {
                    continue;
                }
                values.push(
                    tok.parse::<usize>()
                        .map_err(|_| PermError::Parse(format!("bad entry {tok:?}")))?,
                );
            }
        } else {
            let mut chars = s.chars();
            while let Some(c) = chars.next() {
                if c == '(' {
                    let inner: String = chars.by_ref().take_while(|&c| c != ')').collect();
                    values.push(
                        inner
                            .parse::<usize>()
                            .map_err(|_| PermError::Parse(format!("bad entry ({inner})")))?,
                    );
                } else if let Some(d) = c.to_digit(10) {
                    values.push(d as usize);
                } else {
                    return Err(PermError::Parse(format!("unexpected character {c:?}")));
                }
            }
        }
        Permutation::new(values)
    }
}

/// Transpositions `(m_i, M_i)` with `m_i < M_i`, sorted by `m_i`, plus fixed points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleDecomposition {
    pub n: usize,
    pub transpositions: Vec<(usize, usize)>,
    pub fixed_points: Vec<usize>,
}

impl CycleDecomposition {
    pub fn to_permutation(&self) -> Result<Permutation, PermError> {
        let mut values = vec![0; self.n];
        let mut put = |pos: usize, v: usize| -> Result<(), PermError> {
            if pos == 0 || pos > self.n || values[pos - 1] != 0 {
                return Err(PermError::NotABijection {
                    n: self.n,
                    detail: format!("position {pos} missing or covered twice"),
                });
            }
            values[pos - 1] = v;
            Ok(())
        };
        for &(m, big) in &self.transpositions {
            put(m, big)?;
            put(big, m)?;
        }
        for &f in &self.fixed_points {
            put(f, f)?;
        }
        Permutation::new(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PositionRole {
    Excedance,
    Deficiency,
    Fixed,
}

impl PositionRole {
    fn of(pos: usize, value: usize) -> Self {
        match value.cmp(&pos) {
            std::cmp::Ordering::Greater => PositionRole::Excedance,
            std::cmp::Ordering::Less => PositionRole::Deficiency,
            std::cmp::Ordering::Equal => PositionRole::Fixed,
        }
    }

    pub fn letter(self) -> char {
        match self {
            PositionRole::Excedance => 'E',
            PositionRole::Deficiency => 'D',
            PositionRole::Fixed => 'F',
        }
    }
}

/// Shorthand used heavily in tests and the census: panics on bad input.
pub fn perm(s: &str) -> Permutation {
    s.parse()
        .unwrap_or_else(|e| panic!("bad permutation literal {s:?}: {e}"))
}

/// All involutions of length `n` in lexicographic order, by direct
/// recursion on the smallest unmatched point (independent of the path bijection).
pub fn involutions(n: usize) -> Vec<Permutation> {
    fn go(values: &mut Vec<usize>, out: &mut Vec<Permutation>) {
        let Some(i) = values.iter().position(|&v| v == 0) else {
            out.push(Permutation::from_vec_unchecked(values.clone()));
            return;
        };
        values[i] = i + 1;
        go(values, out);
        values[i] = 0;
        for j in i + 1..values.len() {
            if values[j] == 0 {
                values[i] = j + 1;
                values[j] = i + 1;
                go(values, out);
                values[i] = 0;
                values[j] = 0;
            }
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        go(&mut vec![0; n], &mut out);
        out.sort();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction() {
        assert_eq!(perm("1").len(), 1);
        assert_eq!(perm("468152937").len(), 9);
        assert!(matches!(
            Permutation::new(vec![1, 1, 3]),
            Err(PermError::NotABijection { .. })
        ));
        assert!(matches!(Permutation::new(vec![]), Err(PermError::Empty)));
        assert!(Permutation::new(vec![0, 1]).is_err());
    }

    #[test]
    fn parsing_forms() {
        let a: Permutation = "4 6 8 1 5 2 9 3 7".parse().unwrap();
        assert_eq!(a, perm("468152937"));
        let b: Permutation = "5274193(10)68".parse().unwrap();
        assert_eq!(b.values(), &[5, 2, 7, 4, 1, 9, 3, 10, 6, 8]);
        assert_eq!(b.to_compact(), "5274193(10)68");
        assert_eq!(b.to_string(), "5 2 7 4 1 9 3 10 6 8");
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn involution_check() {
        assert!(Permutation::identity(5).is_involution());
        assert!(perm("468152937").is_involution());
        assert!(!perm("2314").is_involution());
    }

    #[test]
    fn cycles() {
        let c = perm("468152937").cycle_decomposition().unwrap();
        assert_eq!(c.transpositions, vec![(1, 4), (2, 6), (3, 8), (7, 9)]);
        assert_eq!(c.fixed_points, vec![5]);
        let c = Permutation::identity(3).cycle_decomposition().unwrap();
        assert!(c.transpositions.is_empty());
        assert_eq!(c.fixed_points, vec![1, 2, 3]);
        let c = perm("932857641").cycle_decomposition().unwrap();
        assert_eq!(c.transpositions, vec![(1, 9), (2, 3), (4, 8), (6, 7)]);
        assert_eq!(c.fixed_points, vec![5]);
        assert!(matches!(
            perm("2314").cycle_decomposition(),
            Err(PermError::NotAnInvolution(_))
        ));
    }

    #[test]
    fn patterns() {
        assert!(perm("932857641").contains_pattern(&perm("4321")));
        assert!(!perm("468152937").contains_pattern(&perm("4321")));
        assert!(!perm("1").contains_pattern(&perm("12")));
        assert!(perm("21").avoids_all(&[perm("4321"), perm("132")]));
        assert!(perm("35142").avoids_all(&[perm("4321")]));
        assert!(!perm("3412").avoids_all(&[perm("3412")]));
    }

    #[test]
    fn rc() {
        assert_eq!(perm("468152937").reverse_complement(), perm("371859246"));
        assert_eq!(perm("628951734").reverse_complement(), perm("673951284"));
        assert_eq!(
            Permutation::identity(6).reverse_complement(),
            Permutation::identity(6)
        );
    }

    #[test]
    fn roles() {
        let letters: String = perm("468152937")
            .position_roles()
            .into_iter()
            .map(PositionRole::letter)
            .collect();
        assert_eq!(letters, "EEEDFDEDD");
        assert!(Permutation::identity(4)
            .position_roles()
            .iter()
            .all(|&r| r == PositionRole::Fixed));
        let letters: String = perm("21")
            .position_roles()
            .into_iter()
            .map(PositionRole::letter)
            .collect();
        assert_eq!(letters, "ED");
    }

    #[test]
    fn involution_counts() {
        let counts: Vec<usize> = (1..=8).map(|n| involutions(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 4, 10, 26, 76, 232, 764]);
    }
}
