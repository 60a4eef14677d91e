use std::collections::BTreeSet;

use super::{free_of_system, free_transformation, FreeTransformationReport, Result};
use crate::lr_product::{build_product, induced_hom, ProductElement};
use crate::lr_system::LrSystem;
use crate::semigroup::FiniteSemigroup;

/// Outcome of [`verify_divide`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivideReport {
    /// Elements of `H^[ℱ]` over words, `θ` excluded.
    pub free_order: usize,
    /// `|H^[𝒮¹]|`.
    pub target_order: usize,
    /// Pairs `(p, q)` with `|u| + |v| <= L`.
    pub pairs_checked: usize,
    pub hom_failures: usize,
    /// First failing pair, as element ids of the free product.
    pub first_failure: Option<(usize, usize)>,
    /// Images of the elements over `ε` and the letters cover `H^[𝒮¹]`.
    /// Not checked for the even freer variant.
    pub surjective: Option<bool>,
    /// `H^[𝒮] -> H^[𝒮¹]`, induced by the restriction, is injective.
    pub embedding_injective: bool,
    pub transformation: FreeTransformationReport,
}

impl DivideReport {
    pub fn passes(&self) -> bool {
        self.hom_failures == 0
            && self.surjective != Some(false)
            && self.embedding_injective
            && self.transformation.passes()
    }
}

/// Checks that `H^t: H^[ℱ] -> H^[𝒮¹]` is a surjective homomorphism on the
/// truncated product and that `H^[𝒮]` embeds in `H^[𝒮¹]`.
pub fn verify_divide(
    sys: &LrSystem,
    h: &FiniteSemigroup,
    max_len: usize,
    even_freer: bool,
    cap: usize,
) -> Result<DivideReport> {
    let fos = free_of_system(sys, max_len, even_freer, cap)?;
    let t = free_transformation(&fos)?;
    let monoid = fos.free.monoid();
    let zero = fos.free.zero();
    let free_product = build_product(fos.free.system(), h, cap)?;
    let target = build_product(&fos.extended, h, cap)?;

    let image: Vec<Option<usize>> = free_product
        .elements()
        .map(|p| {
            if p.a == zero {
                return Ok(None);
            }
            let x = t.index_map(p.a).iter().map(|&j| p.x[j]).collect();
            target.index_of(&ProductElement::new(t.hom(p.a), x)).map(Some)
        })
        .collect::<std::result::Result<_, _>>()?;

    let len_of = |id: usize| {
        let w = free_product.skeleton_of(id);
        (w != zero).then(|| monoid.word_len(w))
    };
    let mut pairs_checked = 0;
    let mut hom_failures = 0;
    let mut first_failure = None;
    for p in 0..free_product.order() {
        let Some(lp) = len_of(p) else { continue };
        for q in 0..free_product.order() {
            match len_of(q) {
                Some(lq) if lp + lq <= max_len => {}
                _ => continue,
            }
            pairs_checked += 1;
            let lhs = image[free_product.mul(p, q)];
            let rhs = target.mul(image[p].expect("word"), image[q].expect("word"));
            if lhs != Some(rhs) {
                hom_failures += 1;
                first_failure.get_or_insert((p, q));
            }
        }
    }

    let covered: BTreeSet<usize> = (0..free_product.order())
        .filter(|&p| len_of(p).is_some_and(|l| l <= 1))
        .filter_map(|p| image[p])
        .collect();
    let surjective = (!even_freer).then_some(covered.len() == target.order());

    let n = sys.skeleton().order();
    let (_, restriction) = fos.extended.restrict(&(0..n).collect::<Vec<_>>())?;
    let embedding_injective = induced_hom(&restriction, h, cap)?.is_injective();

    Ok(DivideReport {
        free_order: image.iter().flatten().count(),
        target_order: target.order(),
        pairs_checked,
        hom_failures,
        first_failure,
        surjective,
        embedding_injective,
        transformation: t.report().clone(),
    })
}
