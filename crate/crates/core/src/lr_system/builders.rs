use super::{LrSystem, Result, SystemData, SystemError};
use crate::semigroup::{FiniteSemigroup, NamedSemigroup};

/// The systems constructed directly from semigroup data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CanonicalSystem {
    /// Every index set empty.
    Empty(FiniteSemigroup),
    /// Every index set a singleton.
    Singleton(FiniteSemigroup),
    /// `act[x][a] = x·a` with `(x·a)·b = x·(ab)`.
    LeftAction {
        skeleton: FiniteSemigroup,
        points: usize,
        act: Vec<Vec<usize>>,
    },
    /// `left[a][x] = a\x`, `right[x][a] = x/a`.
    TwoSidedAction {
        skeleton: FiniteSemigroup,
        points: usize,
        left: Vec<Vec<usize>>,
        right: Vec<Vec<usize>>,
    },
    LzeroExample,
    FlipflopExample,
}

impl CanonicalSystem {
    pub fn build(&self) -> Result<LrSystem> {
        match self {
            CanonicalSystem::Empty(s) => Ok(LrSystem::empty(s)),
            CanonicalSystem::Singleton(s) => Ok(LrSystem::singleton(s)),
            CanonicalSystem::LeftAction { skeleton, points, act } => LrSystem::left_action(skeleton, *points, act),
            CanonicalSystem::TwoSidedAction {
                skeleton,
                points,
                left,
                right,
            } => LrSystem::two_sided_action(skeleton, *points, left, right),
            CanonicalSystem::LzeroExample => Ok(LrSystem::lzero_example()),
            CanonicalSystem::FlipflopExample => Ok(LrSystem::flipflop_example()),
        }
    }
}

fn check_table(name: &str, table: &[Vec<usize>], rows: usize, cols: usize, bound: usize) -> Result<()> {
    if table.len() != rows {
        return Err(SystemError::InvalidAction(format!(
            "{name} has {} rows, expected {rows}",
            table.len()
        )));
    }
    for (r, row) in table.iter().enumerate() {
        if row.len() != cols {
            return Err(SystemError::InvalidAction(format!(
                "{name} row {r} has {} entries, expected {cols}",
                row.len()
            )));
        }
        if let Some(&v) = row.iter().find(|&&v| v >= bound) {
            return Err(SystemError::InvalidAction(format!(
                "{name} row {r} contains {v}, outside 0..{bound}"
            )));
        }
    }
    Ok(())
}

impl LrSystem {
    pub fn empty(s: &FiniteSemigroup) -> LrSystem {
        SystemData::from_fn(s.clone(), vec![0; s.order()], |_, _| (vec![], vec![]))
            .and_then(SystemData::validate)
            .expect("empty system is valid")
    }

    pub fn singleton(s: &FiniteSemigroup) -> LrSystem {
        SystemData::from_fn(s.clone(), vec![1; s.order()], |_, _| (vec![0], vec![0]))
            .and_then(SystemData::validate)
            .expect("singleton system is valid")
    }

    /// `I[s] = X`, `λ[a,b] = id_X`, `ρ[a,b] = _·a`.
    pub fn left_action(s: &FiniteSemigroup, points: usize, act: &[Vec<usize>]) -> Result<LrSystem> {
        check_table("action", act, points, s.order(), points)?;
        for x in 0..points {
            for a in s.elements() {
                for b in s.elements() {
                    if act[act[x][a]][b] != act[x][s.mul(a, b)] {
                        return Err(SystemError::InvalidAction(format!("({x}·{a})·{b} != {x}·({a}{b})")));
                    }
                }
            }
        }
        let identity: Vec<usize> = (0..points).collect();
        SystemData::from_fn(s.clone(), vec![points; s.order()], |a, _| {
            (identity.clone(), (0..points).map(|x| act[x][a]).collect())
        })?
        .validate()
    }

    /// `I[s] = X`, `λ[a,b] = _/b`, `ρ[a,b] = a\_`, for a two-sided action with
    /// `a\(b\x) = (ba)\x`, `(x/a)/b = x/(ba)` and `(a\x)/b = a\(x/b)`.
    pub fn two_sided_action(
        s: &FiniteSemigroup,
        points: usize,
        left: &[Vec<usize>],
        right: &[Vec<usize>],
    ) -> Result<LrSystem> {
        check_table("left action", left, s.order(), points, points)?;
        check_table("right action", right, points, s.order(), points)?;
        for x in 0..points {
            for a in s.elements() {
                for b in s.elements() {
                    let ba = s.mul(b, a);
                    if left[a][left[b][x]] != left[ba][x] {
                        return Err(SystemError::InvalidAction(format!("{a}\\({b}\\{x}) != ({b}{a})\\{x}")));
                    }
                    if right[right[x][a]][b] != right[x][ba] {
                        return Err(SystemError::InvalidAction(format!("({x}/{a})/{b} != {x}/({b}{a})")));
                    }
                    if right[left[a][x]][b] != left[a][right[x][b]] {
                        return Err(SystemError::InvalidAction(format!("({a}\\{x})/{b} != {a}\\({x}/{b})")));
                    }
                }
            }
        }
        SystemData::from_fn(s.clone(), vec![points; s.order()], |a, b| {
            (
                (0..points).map(|x| right[x][b]).collect(),
                (0..points).map(|x| left[a][x]).collect(),
            )
        })?
        .validate()
    }

    /// Over the trivial semigroup: `I = {0,1}`, `λ = id`, `ρ` constant `0`.
    pub fn lzero_example() -> LrSystem {
        let trivial = NamedSemigroup::Trivial.build().expect("trivial semigroup");
        LrSystem::new(trivial, vec![2], vec![vec![0, 1]], vec![vec![0, 0]]).expect("left-zero example is valid")
    }

    /// Over `({0,1}, ∨)`: `I[0] = {0}`, `I[1] = {0,1}`,
    /// `λ[1,0] = ρ[0,1] = λ[1,1] = id`, `ρ[1,1]` constant `0`; every other map
    /// lands in `I[0]`.
    pub fn flipflop_example() -> LrSystem {
        let join = NamedSemigroup::Semilattice2.build().expect("semilattice");
        let lambda = vec![vec![0], vec![0, 0], vec![0, 1], vec![0, 1]];
        let rho = vec![vec![0], vec![0, 1], vec![0, 0], vec![0, 0]];
        LrSystem::new(join, vec![1, 2], lambda, rho).expect("flip-flop example is valid")
    }
}
