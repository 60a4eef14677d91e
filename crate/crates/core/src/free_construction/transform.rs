use super::{word_products, FreeError, FreeOfSystem, Result};
use crate::lr_system::Side;

/// Outcome of the checks run by [`free_transformation`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct FreeTransformationReport {
    /// `t[s] = id` for every letter.
    pub letters_identity: bool,
    /// (word, v, j) instances where both coordinate formulas were evaluated.
    pub coordinates_checked: usize,
    /// Instances where the two formulas disagree.
    pub coordinate_mismatches: Vec<(usize, usize, usize)>,
    /// (word, v) whose image is not a chain of `I[w]`.
    pub chain_failures: Vec<(usize, usize)>,
    pub squares_checked: usize,
    /// (u, v, side, index) with `|uv| <= L`.
    pub square_violations: Vec<(usize, usize, Side, usize)>,
}

impl FreeTransformationReport {
    pub fn passes(&self) -> bool {
        self.letters_identity
            && self.coordinate_mismatches.is_empty()
            && self.chain_failures.is_empty()
            && self.square_violations.is_empty()
    }
}

/// The transformation `𝐭: 𝒮¹ -> ℱ(𝒮¹)`: `h(w) = ⊗w` and
/// `t[w]: I[⊗w] -> I[w]` with coordinates
///
/// * `v_1 = λ[s_1, ⊗(s_2⋯s_n)](v)`
/// * `v_j = ρ[⊗(s_1⋯s_{j-1}), s_j] ∘ λ[⊗(s_1⋯s_j), ⊗(s_{j+1}⋯s_n)](v)`
/// * `v_n = ρ[⊗(s_1⋯s_{n-1}), s_n](v)`
///
/// and `t[ε]` constant. Defined on words only; `θ` has no image.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeTransformation {
    hom: Vec<usize>,
    index_maps: Vec<Vec<usize>>,
    report: FreeTransformationReport,
}

impl FreeTransformation {
    /// `⊗w` as an element of `S¹`.
    pub fn hom(&self, word: usize) -> usize {
        self.hom[word]
    }

    /// `t[w]` as indices into `I[w]`.
    pub fn index_map(&self, word: usize) -> &[usize] {
        &self.index_maps[word]
    }

    pub fn report(&self) -> &FreeTransformationReport {
        &self.report
    }

    pub fn is_valid(&self) -> bool {
        self.report.passes()
    }
}

pub fn free_transformation(fos: &FreeOfSystem) -> Result<FreeTransformation> {
    let (ext, free) = (&fos.extended, &fos.free);
    let s1 = ext.skeleton();
    let unit = s1.order() - 1;
    let monoid = free.monoid();
    let hom = word_products(monoid, s1, unit);
    let mut report = FreeTransformationReport::default();
    let mut index_maps = Vec::with_capacity(monoid.len());

    for (w, &hw) in hom.iter().enumerate() {
        let word = monoid.word(w);
        let k = word.len();
        let target = ext.index_size(hw);
        if k == 0 {
            if free.index_size(w) == 0 && target > 0 {
                return Err(FreeError::Check("I[ε] is empty".into()));
            }
            index_maps.push(vec![0; target]);
            continue;
        }
        // prefix[j] = ⊗(s_1⋯s_j), suffix[j] = ⊗(s_{j+1}⋯s_k)
        let mut prefix = vec![unit; k + 1];
        for j in 0..k {
            prefix[j + 1] = s1.mul(prefix[j], word[j]);
        }
        let mut suffix = vec![unit; k + 1];
        for j in (0..k).rev() {
            suffix[j] = s1.mul(word[j], suffix[j + 1]);
        }
        let mut map = Vec::with_capacity(target);
        for v in 0..target {
            let mut seq = Vec::with_capacity(k);
            for j in 1..=k {
                let defined = if j == 1 {
                    ext.lambda(word[0], suffix[1])[v]
                } else if j == k {
                    ext.rho(prefix[k - 1], word[k - 1])[v]
                } else {
                    ext.rho(prefix[j - 1], word[j - 1])[ext.lambda(prefix[j], suffix[j])[v]]
                };
                let alternate = ext.lambda(word[j - 1], suffix[j])[ext.rho(prefix[j - 1], suffix[j - 1])[v]];
                report.coordinates_checked += 1;
                if defined != alternate {
                    report.coordinate_mismatches.push((w, v, j));
                }
                seq.push(defined);
            }
            match free.sequence_index(w, &seq) {
                Some(i) => map.push(i),
                None => {
                    report.chain_failures.push((w, v));
                    map.push(0);
                }
            }
        }
        index_maps.push(map);
    }

    report.letters_identity = (0..monoid.generators()).all(|x| {
        let w = monoid.letter(x);
        index_maps[w].iter().enumerate().all(|(i, &j)| i == j)
    });

    let sys = free.system();
    for u in 0..monoid.len() {
        for v in 0..monoid.len() {
            let Some(w) = monoid.concat(u, v) else { continue };
            let (hu, hv) = (hom[u], hom[v]);
            let (lam1, rho1) = (ext.lambda(hu, hv), ext.rho(hu, hv));
            let (lam_f, rho_f) = (sys.lambda(u, v), sys.rho(u, v));
            for i in 0..index_maps[w].len() {
                report.squares_checked += 1;
                let tw = index_maps[w][i];
                if index_maps[u][lam1[i]] != lam_f[tw] {
                    report.square_violations.push((u, v, Side::Left, i));
                }
                if index_maps[v][rho1[i]] != rho_f[tw] {
                    report.square_violations.push((u, v, Side::Right, i));
                }
            }
        }
    }

    Ok(FreeTransformation {
        hom,
        index_maps,
        report,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::free_construction::free_of_system_default;
    use crate::lr_system::LrSystem;

    #[test]
    fn flipflop_transformation() {
        let ff = LrSystem::flipflop_example();
        let fos = free_of_system_default(&ff).unwrap();
        let t = free_transformation(&fos).unwrap();
        assert!(t.is_valid(), "{:?}", t.report());
        assert!(t.report().squares_checked > 0);
        let m = fos.free.monoid();
        assert_eq!(t.hom(0), 2);
        assert_eq!(t.index_map(0), &[0]);
        // w = 11: t[w](v) = (λ[1,1](v), ρ[1,1](v)) for v ∈ I[1]
        let w = m.id_of(&[1, 1]).unwrap();
        assert_eq!(t.hom(w), 1);
        for v in 0..2 {
            let seq = &fos.free.sequences(w)[t.index_map(w)[v]];
            assert_eq!(seq, &vec![ff.lambda(1, 1)[v], ff.rho(1, 1)[v]]);
        }
    }

    #[test]
    fn lzero_transformation() {
        let fos = free_of_system_default(&LrSystem::lzero_example()).unwrap();
        assert!(free_transformation(&fos).unwrap().is_valid());
    }
}
