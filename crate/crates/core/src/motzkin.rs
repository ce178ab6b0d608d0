//! Labelled Motzkin paths and their bijection with involutions.
//!
//! An involution of length `n` maps to a path of `n` steps: a fixed point is a
//! horizontal step, the smaller element of a transposition an up step, and the
//! larger element a down step. The down step closing the pair `(m, M)` carries
//! the label `1 + #{(m', M') : m' < m, M' > M}`, which always lies in `1..=h`
//! for `h` the height at which the down step starts.
//!
//! Decoding reads the path left to right keeping the up-step positions that
//! are still open; a down step labelled `λ` closes the `λ`-th smallest one.
//! Unitary labels therefore close the oldest open step and maximal labels the
//! most recent one.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::perm::{PermError, Permutation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    Up,
    Horizontal,
    Down,
}

impl Step {
    pub fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Horizontal => 'H',
            Step::Down => 'D',
        }
    }

    fn delta(self) -> isize {
        match self {
            Step::Up => 1,
            Step::Horizontal => 0,
            Step::Down => -1,
        }
    }

    fn mirrored(self) -> Step {
        match self {
            Step::Up => Step::Down,
            Step::Horizontal => Step::Horizontal,
            Step::Down => Step::Up,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PathError {
    #[error("empty path")]
    Empty,
    #[error("path goes below the axis at step {step}")]
    NegativeHeight { step: usize },
    #[error("path ends at height {height}, not 0")]
    NonzeroFinalHeight { height: usize },
    #[error("label {label} on down step {down} is outside 1..={height}")]
    LabelOutOfRange {
        down: usize,
        label: usize,
        height: usize,
    },
    #[error("{labels} labels given for {downs} down steps")]
    LabelCountMismatch { downs: usize, labels: usize },
    #[error("cannot parse path: {0}")]
    Parse(String),
    #[error(transparent)]
    Perm(#[from] PermError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LabellingKind {
    Unitary,
    Maximal,
    Other,
}

/// Which labellings `enumerate_paths` emits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathClass {
    Unitary,
    Maximal,
    All,
}

/// A Motzkin path with one label per down step, stored in down-step order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LabelledMotzkinPath {
    steps: Vec<Step>,
    labels: Vec<usize>,
}

impl LabelledMotzkinPath {
    pub fn new(steps: Vec<Step>, labels: Vec<usize>) -> Result<Self, PathError> {
        if steps.is_empty() {
            return Err(PathError::Empty);
        }
        let downs = down_heights(&steps)?;
        if downs.len() != labels.len() {
            return Err(PathError::LabelCountMismatch {
                downs: downs.len(),
                labels: labels.len(),
            });
        }
        for (down, (&label, &height)) in labels.iter().zip(&downs).enumerate() {
            if label < 1 || label > height {
                return Err(PathError::LabelOutOfRange {
                    down,
                    label,
                    height,
                });
            }
        }
        Ok(LabelledMotzkinPath { steps, labels })
    }

    /// Path with every down step labelled 1.
    pub fn unitary(steps: Vec<Step>) -> Result<Self, PathError> {
        let downs = steps.iter().filter(|&&s| s == Step::Down).count();
        LabelledMotzkinPath::new(steps, vec![1; downs])
    }

    /// Path with every down step labelled by its starting height.
    pub fn maximal(steps: Vec<Step>) -> Result<Self, PathError> {
        if steps.is_empty() {
            return Err(PathError::Empty);
        }
        let labels = down_heights(&steps)?;
        LabelledMotzkinPath::new(steps, labels)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Height after each step; `heights()[i]` is the height after step `i + 1`.
    pub fn heights(&self) -> Vec<usize> {
        let mut h = 0usize;
        self.steps
            .iter()
            .map(|&s| {
                h = (h as isize + s.delta()) as usize;
                h
            })
            .collect()
    }

    /// Starting height of each down step, in down-step order.
    pub fn down_heights(&self) -> Vec<usize> {
        down_heights(&self.steps).expect("validated path")
    }

    pub fn is_unitary(&self) -> bool {
        self.labels.iter().all(|&l| l == 1)
    }

    pub fn is_maximal(&self) -> bool {
        self.labels == self.down_heights()
    }

    /// `Unitary` wins when a path is both unitary and maximal (every down step
    /// at height 1); use [`is_maximal`](Self::is_maximal) to test maximality alone.
    pub fn labelling_kind(&self) -> LabellingKind {
        if self.is_unitary() {
            LabellingKind::Unitary
        } else if self.is_maximal() {
            LabellingKind::Maximal
        } else {
            LabellingKind::Other
        }
    }

    /// Touches the axis only at its two endpoints.
    pub fn is_irreducible(&self) -> bool {
        let h = self.heights();
        h[..h.len() - 1].iter().all(|&x| x >= 1)
    }

    /// Mirror image: steps reversed with up and down exchanged. Labels are
    /// those of the reverse-complement of the encoded involution.
    pub fn reflect(&self) -> LabelledMotzkinPath {
        let rc = involution_of_path(self).reverse_complement();
        let reflected = path_of_involution(&rc).expect("reverse-complement of an involution");
        debug_assert!(reflected.steps.iter().copied().eq(self
            .steps
            .iter()
            .rev()
            .map(|s| s.mirrored())));
        reflected
    }

    /// Multi-line ASCII picture, highest row first.
    pub fn draw(&self) -> String {
        let top = self.heights().into_iter().max().unwrap_or(0);
        let rows = top + 1;
        let mut grid = vec![vec![' '; self.len()]; rows];
        let mut h = 0usize;
        for (col, &s) in self.steps.iter().enumerate() {
            match s {
                Step::Up => {
                    grid[h][col] = '/';
                    h += 1;
                }
                Step::Down => {
                    h -= 1;
                    grid[h][col] = '\\';
                }
                Step::Horizontal => grid[h][col] = '_',
            }
        }
        let lines: Vec<String> = grid
            .iter()
            .rev()
            .map(|row| row.iter().collect::<String>().trim_end().to_string())
            .skip_while(|line| line.is_empty())
            .collect();
        lines.join("\n")
    }
}

fn down_heights(steps: &[Step]) -> Result<Vec<usize>, PathError> {
    let mut h: isize = 0;
    let mut downs = Vec::new();
    for (i, &s) in steps.iter().enumerate() {
        if s == Step::Down {
            downs.push(h as usize);
        }
        h += s.delta();
        if h < 0 {
            return Err(PathError::NegativeHeight { step: i + 1 });
        }
    }
    if h != 0 {
        return Err(PathError::NonzeroFinalHeight { height: h as usize });
    }
    Ok(downs)
}

/// Build and validate a path from steps and down-step labels.
pub fn validate_path(steps: &[Step], labels: &[usize]) -> Result<LabelledMotzkinPath, PathError> {
    LabelledMotzkinPath::new(steps.to_vec(), labels.to_vec())
}

/// Letters only when unitary, e.g. `UUUDHDUDD`; otherwise every down step
/// carries its label, e.g. `UUD[2]UHUD[3]D[2]D[1]`.
impl fmt::Display for LabelledMotzkinPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show_labels = !self.is_unitary();
        let mut labels = self.labels.iter();
        for &s in &self.steps {
            write!(f, "{}", s.letter())?;
            if s == Step::Down && show_labels {
                write!(f, "[{}]", labels.next().expect("one label per down step"))?;
            }
        }
        Ok(())
    }
}

/// Parses the display format. A down step without a bracket is labelled 1.
impl FromStr for LabelledMotzkinPath {
    type Err = PathError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut steps = Vec::new();
        let mut labels = Vec::new();
        let mut chars = s.trim().chars().peekable();
        while let Some(c) = chars.next() {
            match c.to_ascii_uppercase() {
                'U' => steps.push(Step::Up),
                'H' => steps.push(Step::Horizontal),
                'D' => {
                    steps.push(Step::Down);
                    if chars.peek() == Some(&'[') {
                        chars.next();
                        let inner: String = chars.by_ref().take_while(|&c| c != ']').collect();
                        let label = inner
                            .trim()
                            .parse::<usize>()
                            .map_err(|_| PathError::Parse(format!("bad label [{inner}]")))?;
                        labels.push(label);
                    } else {
                        labels.push(1);
                    }
                }
                c if c.is_whitespace() => {}
                other => return Err(PathError::Parse(format!("unexpected character {other:?}"))),
            }
        }
        LabelledMotzkinPath::new(steps, labels)
    }
}

/// Labelled path of an involution.
pub fn path_of_involution(p: &Permutation) -> Result<LabelledMotzkinPath, PathError> {
    if !p.is_involution() {
        return Err(PermError::NotAnInvolution(p.clone()).into());
    }
    let mut steps = Vec::with_capacity(p.len());
    let mut labels = Vec::new();
    let mut open: Vec<usize> = Vec::new();
    for (i, &v) in p.values().iter().enumerate() {
        let pos = i + 1;
        if v == pos {
            steps.push(Step::Horizontal);
        } else if pos < v {
            steps.push(Step::Up);
            open.push(pos);
        } else {
            steps.push(Step::Down);
            let rank = open
                .iter()
                .position(|&o| o == v)
                .expect("partner opened earlier");
            open.remove(rank);
            labels.push(rank + 1);
        }
    }
    Ok(LabelledMotzkinPath { steps, labels })
}

/// Inverse of [`path_of_involution`].
pub fn involution_of_path(path: &LabelledMotzkinPath) -> Permutation {
    let mut values = vec![0; path.len()];
    let mut open: Vec<usize> = Vec::new();
    let mut labels = path.labels.iter();
    for (i, &s) in path.steps.iter().enumerate() {
        let pos = i + 1;
        match s {
            Step::Horizontal => values[i] = pos,
            Step::Up => open.push(pos),
            Step::Down => {
                let label = *labels.next().expect("one label per down step");
                let partner = open.remove(label - 1);
                values[i] = partner;
                values[partner - 1] = pos;
            }
        }
    }
    Permutation::from_vec_unchecked(values)
}

/// Motzkin step sequences of a fixed length in lexicographic order with
/// `U < H < D`, optionally restricted to those extending a fixed prefix.
#[derive(Debug, Clone)]
pub struct MotzkinWords {
    n: usize,
    frozen: usize,
    current: Option<Vec<Step>>,
}

impl MotzkinWords {
    pub fn new(n: usize) -> Self {
        MotzkinWords::with_prefix(n, &[])
    }

    /// Words of length `n` starting with `prefix`; empty if none exist.
    pub fn with_prefix(n: usize, prefix: &[Step]) -> Self {
        let mut current = None;
        if n >= 1 && prefix.len() <= n {
            let mut h: isize = 0;
            let mut ok = true;
            for &s in prefix {
                h += s.delta();
                ok &= h >= 0;
            }
            if ok && (h as usize) <= n - prefix.len() {
                let mut word = prefix.to_vec();
                fill_smallest(&mut word, h as usize, n);
                current = Some(word);
            }
        }
        MotzkinWords {
            n,
            frozen: prefix.len(),
            current,
        }
    }
}

/// Extend `word` (currently at height `h`) to length `n` with the
/// lexicographically smallest valid completion.
fn fill_smallest(word: &mut Vec<Step>, mut h: usize, n: usize) {
    while word.len() < n {
        let remaining = n - word.len();
        if h + 1 < remaining {
            word.push(Step::Up);
            h += 1;
        } else if h < remaining {
            word.push(Step::Horizontal);
        } else {
            word.push(Step::Down);
            h -= 1;
        }
    }
}

impl Iterator for MotzkinWords {
    type Item = Vec<Step>;

    fn next(&mut self) -> Option<Vec<Step>> {
        let out = self.current.take()?;
        let mut heights = Vec::with_capacity(self.n + 1);
        heights.push(0isize);
        for &s in &out {
            heights.push(heights.last().unwrap() + s.delta());
        }
        // Rightmost position that can be bumped to a larger step.
        for i in (self.frozen..self.n).rev() {
            let before = heights[i];
            let remaining = (self.n - i - 1) as isize;
            let candidates: &[Step] = match out[i] {
                Step::Up => &[Step::Horizontal, Step::Down],
                Step::Horizontal => &[Step::Down],
                Step::Down => &[],
            };
            for &c in candidates {
                let h = before + c.delta();
                if h >= 0 && h <= remaining {
                    let mut word = out[..i].to_vec();
                    word.push(c);
                    fill_smallest(&mut word, h as usize, self.n);
                    self.current = Some(word);
                    return Some(out);
                }
            }
        }
        Some(out)
    }
}

/// All labellings of `steps` allowed by `class`, labels ascending lexicographically.
pub fn labellings(steps: &[Step], class: PathClass) -> Vec<LabelledMotzkinPath> {
    let heights = match down_heights(steps) {
        Ok(h) => h,
        Err(_) => return Vec::new(),
    };
    match class {
        PathClass::Unitary => vec![LabelledMotzkinPath {
            steps: steps.to_vec(),
            labels: vec![1; heights.len()],
        }],
        PathClass::Maximal => vec![LabelledMotzkinPath {
            steps: steps.to_vec(),
            labels: heights,
        }],
        PathClass::All => {
            let mut out = Vec::new();
            let mut labels = vec![1; heights.len()];
            loop {
                out.push(LabelledMotzkinPath {
                    steps: steps.to_vec(),
                    labels: labels.clone(),
                });
                // Odometer, last label fastest.
                let mut i = labels.len();
                loop {
                    if i == 0 {
                        return out;
                    }
                    i -= 1;
                    if labels[i] < heights[i] {
                        labels[i] += 1;
                        labels[i + 1..].iter_mut().for_each(|l| *l = 1);
                        break;
                    }
                }
            }
        }
    }
}

/// Every labelled path of length `n` in `class`, ordered by steps then labels.
pub fn enumerate_paths(n: usize, class: PathClass) -> impl Iterator<Item = LabelledMotzkinPath> {
    enumerate_paths_with_prefix(n, &[], class)
}

pub fn enumerate_paths_with_prefix(
    n: usize,
    prefix: &[Step],
    class: PathClass,
) -> impl Iterator<Item = LabelledMotzkinPath> {
    MotzkinWords::with_prefix(n, prefix).flat_map(move |w| labellings(&w, class))
}

/// Valid step prefixes of length `min(depth, n)` that extend to a Motzkin
/// path of length `n`, in lexicographic order. Enumerating each prefix in
/// turn and concatenating reproduces [`enumerate_paths`] exactly.
pub fn shard_prefixes(n: usize, depth: usize) -> Vec<Vec<Step>> {
    let depth = depth.min(n);
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(depth);
    fn go(prefix: &mut Vec<Step>, h: usize, depth: usize, n: usize, out: &mut Vec<Vec<Step>>) {
        if prefix.len() == depth {
            out.push(prefix.clone());
            return;
        }
        for s in [Step::Up, Step::Horizontal, Step::Down] {
            let nh = h as isize + s.delta();
            if nh < 0 || nh as usize > n - prefix.len() - 1 {
                continue;
            }
            prefix.push(s);
            go(prefix, nh as usize, depth, n, out);
            prefix.pop();
        }
    }
    go(&mut prefix, 0, depth, n, &mut out);
    out
}
