use std::fmt;
use std::str::FromStr;

use super::{FiniteSemigroup, Result, SemigroupError};

/// Default cap on the order of constructed tables.
pub const DEFAULT_TABLE_CAP: usize = 4096;

/// The small semigroups used throughout as skeletons, bases and test pools.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedSemigroup {
    Trivial,
    Cyclic(usize),
    LeftZero(usize),
    /// `({0,1}, ∨)`.
    Semilattice2,
    /// `{e, p, q}` with `e` neutral and `p`, `q` left zeros.
    FlipFlopLeft,
    /// All self-maps of `{0..n}` under "apply left factor first"; `n <= 3`.
    FullTransformations(usize),
}

impl NamedSemigroup {
    pub fn build(&self) -> Result<FiniteSemigroup> {
        match *self {
            NamedSemigroup::Trivial => FiniteSemigroup::from_flat(1, vec![0], Some(vec!["1".into()])),
            NamedSemigroup::Cyclic(n) => {
                if n == 0 {
                    return Err(SemigroupError::Empty);
                }
                let table = (0..n * n).map(|k| (k / n + k % n) % n).collect();
                FiniteSemigroup::from_flat(n, table, Some((0..n).map(|a| a.to_string()).collect()))
            }
            NamedSemigroup::LeftZero(n) => {
                if n == 0 {
                    return Err(SemigroupError::Empty);
                }
                let table = (0..n * n).map(|k| k / n).collect();
                FiniteSemigroup::from_flat(n, table, Some((0..n).map(|a| a.to_string()).collect()))
            }
            NamedSemigroup::Semilattice2 => {
                FiniteSemigroup::from_flat(2, vec![0, 1, 1, 1], Some(vec!["0".into(), "1".into()]))
            }
            NamedSemigroup::FlipFlopLeft => FiniteSemigroup::from_flat(
                3,
                vec![0, 1, 2, 1, 1, 1, 2, 2, 2],
                Some(vec!["e".into(), "p".into(), "q".into()]),
            ),
            NamedSemigroup::FullTransformations(n) => full_transformations(n),
        }
    }
}

fn full_transformations(n: usize) -> Result<FiniteSemigroup> {
    if n == 0 {
        return Err(SemigroupError::Empty);
    }
    if n > 3 {
        return Err(SemigroupError::CapExceeded { order: n, cap: 3 });
    }
    let order = n.pow(n as u32);
    let decode = |mut id: usize| -> Vec<usize> {
        (0..n)
            .map(|_| {
                let d = id % n;
                id /= n;
                d
            })
            .collect()
    };
    let encode = |f: &[usize]| f.iter().rev().fold(0, |acc, &d| acc * n + d);
    let maps: Vec<Vec<usize>> = (0..order).map(decode).collect();
    let mut table = Vec::with_capacity(order * order);
    for f in &maps {
        for g in &maps {
            let fg: Vec<usize> = f.iter().map(|&i| g[i]).collect();
            table.push(encode(&fg));
        }
    }
    let labels = maps
        .iter()
        .map(|f| f.iter().map(|d| d.to_string()).collect::<String>())
        .collect();
    FiniteSemigroup::from_flat(order, table, Some(labels))
}

impl fmt::Display for NamedSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NamedSemigroup::Trivial => write!(f, "trivial"),
            NamedSemigroup::Cyclic(n) => write!(f, "cyclic({n})"),
            NamedSemigroup::LeftZero(n) => write!(f, "left_zero({n})"),
            NamedSemigroup::Semilattice2 => write!(f, "semilattice2"),
            NamedSemigroup::FlipFlopLeft => write!(f, "flip_flop_left"),
            NamedSemigroup::FullTransformations(n) => write!(f, "full_transformations({n})"),
        }
    }
}

impl FromStr for NamedSemigroup {
    type Err = SemigroupError;

    /// Parses `trivial`, `cyclic(n)`, `left_zero(n)`, `semilattice2`,
    /// `flip_flop_left` and `full_transformations(n)`.
    fn from_str(s: &str) -> Result<Self> {
        let unknown = || SemigroupError::UnknownName(s.to_string());
        let s = s.trim();
        let (name, param) = match s.find('(') {
            Some(open) => {
                let inner = s[open + 1..].strip_suffix(')').ok_or_else(unknown)?;
                let n: usize = inner.trim().parse().map_err(|_| unknown())?;
                (&s[..open], Some(n))
            }
            None => (s, None),
        };
        match (name, param) {
            ("trivial", None) => Ok(NamedSemigroup::Trivial),
            ("semilattice2", None) => Ok(NamedSemigroup::Semilattice2),
            ("flip_flop_left", None) => Ok(NamedSemigroup::FlipFlopLeft),
            ("cyclic", Some(n)) => Ok(NamedSemigroup::Cyclic(n)),
            ("left_zero", Some(n)) => Ok(NamedSemigroup::LeftZero(n)),
            ("full_transformations", Some(n)) => Ok(NamedSemigroup::FullTransformations(n)),
            _ => Err(unknown()),
        }
    }
}

/// Words of length at most `max_len` over `generators` letters, plus an
/// absorbing zero. Products longer than `max_len` collapse to the zero.
///
/// Ids run by length, then lexicographically; the zero is last.
pub fn rees_truncated_free(generators: usize, max_len: usize, cap: usize) -> Result<FiniteSemigroup> {
    if generators == 0 || max_len == 0 {
        return Err(SemigroupError::Empty);
    }
    // offsets[l] = id of the first word of length l (l >= 1)
    let mut offsets = vec![0usize; max_len + 2];
    let mut powers = vec![1usize; max_len + 1];
    for l in 1..=max_len {
        powers[l] = powers[l - 1]
            .checked_mul(generators)
            .filter(|&p| p <= cap)
            .ok_or(SemigroupError::CapExceeded { order: usize::MAX, cap })?;
        offsets[l + 1] = offsets[l] + powers[l];
    }
    let zero = offsets[max_len + 1];
    let order = zero + 1;
    if order > cap {
        return Err(SemigroupError::CapExceeded { order, cap });
    }
    let mut length = vec![0usize; order];
    let mut value = vec![0usize; order];
    for l in 1..=max_len {
        for v in 0..powers[l] {
            length[offsets[l] + v] = l;
            value[offsets[l] + v] = v;
        }
    }
    let mut table = vec![zero; order * order];
    for u in 0..zero {
        for w in 0..zero {
            let l = length[u] + length[w];
            if l <= max_len {
                table[u * order + w] = offsets[l] + value[u] * powers[length[w]] + value[w];
            }
        }
    }
    let letter = |i: usize| -> String {
        if generators <= 26 {
            ((b'a' + i as u8) as char).to_string()
        } else {
            format!("x{i}.")
        }
    };
    let mut labels = Vec::with_capacity(order);
    for id in 0..zero {
        let (l, mut v) = (length[id], value[id]);
        let mut letters = Vec::with_capacity(l);
        for _ in 0..l {
            letters.push(letter(v % generators));
            v /= generators;
        }
        letters.reverse();
        labels.push(letters.concat());
    }
    labels.push("θ".into());
    FiniteSemigroup::from_flat(order, table, Some(labels))
}
