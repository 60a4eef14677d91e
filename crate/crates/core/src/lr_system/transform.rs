use std::fmt;

use super::{LrSystem, Result, SystemError};
use crate::semigroup::Homomorphism;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// A failing square at `(a, b)`, evaluated at `index ∈ I'[h(ab)]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SquareViolation {
    pub side: Side,
    pub a: usize,
    pub b: usize,
    pub index: usize,
}

impl fmt::Display for SquareViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let side = match self.side {
            Side::Left => "left",
            Side::Right => "right",
        };
        write!(f, "{side} square at a={}, b={}, i={}", self.a, self.b, self.index)
    }
}

/// A transformation `𝒮' -> 𝒮`: a homomorphism `h: S -> S'` together with
/// maps `t[a]: I'[h(a)] -> I[a]` such that
/// `t[a] ∘ λ'[h(a),h(b)] = λ[a,b] ∘ t[ab]` and
/// `t[b] ∘ ρ'[h(a),h(b)] = ρ[a,b] ∘ t[ab]`.
///
/// It induces `H^[𝒮'] -> H^[𝒮]` by `(x, a) ↦ (x ∘ t[a], h(a))`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transformation {
    source: LrSystem,
    target: LrSystem,
    hom: Homomorphism,
    index_maps: Vec<Vec<usize>>,
}

impl Transformation {
    /// Checks arities and both squares.
    pub fn new(source: LrSystem, target: LrSystem, hom: Homomorphism, index_maps: Vec<Vec<usize>>) -> Result<Self> {
        let t = Self::new_unchecked(source, target, hom, index_maps)?;
        let violations = t.violations();
        if violations.is_empty() {
            Ok(t)
        } else {
            Err(SystemError::SquareViolation(violations))
        }
    }

    /// Checks arities only; the squares may fail.
    pub fn new_unchecked(
        source: LrSystem,
        target: LrSystem,
        hom: Homomorphism,
        index_maps: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if hom.source() != target.skeleton() || hom.target() != source.skeleton() {
            return Err(SystemError::Mismatch(
                "skeleton homomorphism must run from the target skeleton to the source skeleton".into(),
            ));
        }
        if index_maps.len() != target.skeleton().order() {
            return Err(SystemError::ArityMismatch(format!(
                "{} index maps for a skeleton of order {}",
                index_maps.len(),
                target.skeleton().order()
            )));
        }
        for (a, map) in index_maps.iter().enumerate() {
            let len = source.index_size(hom.apply(a));
            if map.len() != len {
                return Err(SystemError::ArityMismatch(format!(
                    "t[{a}] has length {}, expected |I'[h({a})]| = {len}",
                    map.len()
                )));
            }
            let bound = target.index_size(a);
            if let Some((index, &value)) = map.iter().enumerate().find(|(_, &v)| v >= bound) {
                return Err(SystemError::OutOfRange {
                    map: "t",
                    a,
                    b: a,
                    index,
                    value,
                    bound,
                });
            }
        }
        Ok(Self {
            source,
            target,
            hom,
            index_maps,
        })
    }

    pub fn identity(system: &LrSystem) -> Self {
        let maps = system.index_sizes().iter().map(|&k| (0..k).collect()).collect();
        Self {
            source: system.clone(),
            target: system.clone(),
            hom: Homomorphism::identity(system.skeleton()),
            index_maps: maps,
        }
    }

    pub fn source(&self) -> &LrSystem {
        &self.source
    }

    pub fn target(&self) -> &LrSystem {
        &self.target
    }

    pub fn hom(&self) -> &Homomorphism {
        &self.hom
    }

    pub fn index_map(&self, a: usize) -> &[usize] {
        &self.index_maps[a]
    }

    pub fn index_maps(&self) -> &[Vec<usize>] {
        &self.index_maps
    }

    /// Every failing square, left before right at each `(a, b)`.
    pub fn violations(&self) -> Vec<SquareViolation> {
        let (src, tgt, h) = (&self.source, &self.target, &self.hom);
        let s = tgt.skeleton();
        let mut out = Vec::new();
        for a in s.elements() {
            for b in s.elements() {
                let ab = s.mul(a, b);
                let (ha, hb) = (h.apply(a), h.apply(b));
                let t_ab = &self.index_maps[ab];
                for (i, &ti) in t_ab.iter().enumerate() {
                    if self.index_maps[a][src.lambda(ha, hb)[i]] != tgt.lambda(a, b)[ti] {
                        out.push(SquareViolation {
                            side: Side::Left,
                            a,
                            b,
                            index: i,
                        });
                    }
                    if self.index_maps[b][src.rho(ha, hb)[i]] != tgt.rho(a, b)[ti] {
                        out.push(SquareViolation {
                            side: Side::Right,
                            a,
                            b,
                            index: i,
                        });
                    }
                }
            }
        }
        out
    }

    pub fn is_valid(&self) -> bool {
        self.violations().is_empty()
    }

    /// `self: 𝒮1 -> 𝒮2` followed by `next: 𝒮2 -> 𝒮3`. The skeleton map is
    /// `h1 ∘ h2` and `t[c] = t2[c] ∘ t1[h2(c)]`.
    pub fn compose(&self, next: &Transformation) -> Result<Transformation> {
        if self.target != next.source {
            return Err(SystemError::Mismatch(
                "target of the first transformation is not the source of the second".into(),
            ));
        }
        let hom = next.hom.then(&self.hom)?;
        let index_maps = next
            .index_maps
            .iter()
            .enumerate()
            .map(|(c, t2)| self.index_maps[next.hom.apply(c)].iter().map(|&i| t2[i]).collect())
            .collect();
        Ok(Transformation {
            source: self.source.clone(),
            target: next.target.clone(),
            hom,
            index_maps,
        })
    }
}
