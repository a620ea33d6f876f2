//! Morphisms of trifactorised groups, the brace maps they induce on `K`,
//! and lifting of brace maps back to tuples.

use crate::brace::{is_brace_hom, BraceMap, SkewBrace};
use crate::config::Bounds;
use crate::group::Elem;
use crate::hom::GroupMap;
use crate::subgroup::SubgroupSet;
use crate::trifact::{
    associated_brace, derivation, generalised_trifact, recover_eta, EtaDatum, Factor, TrifactError,
    TrifactorisedGroup,
};

/// A group homomorphism `G1 -> G2` mapping `K1, H1, E1` into `K2, H2, E2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrifactMorphism {
    pub map: GroupMap,
}

impl TrifactMorphism {
    pub fn is_injective(&self) -> bool {
        self.map.is_injective()
    }

    pub fn is_surjective(&self) -> bool {
        self.map.is_surjective()
    }

    pub fn kernel(&self) -> SubgroupSet {
        self.map.kernel()
    }
}

/// Certifies `images` as a morphism `t1 -> t2`, then checks
/// `σ2 ∘ f|H1 = f|K1 ∘ σ1`.
pub fn is_trifact_morphism(
    images: Vec<Elem>,
    t1: &TrifactorisedGroup,
    t2: &TrifactorisedGroup,
    bounds: &Bounds,
) -> Result<TrifactMorphism, TrifactError> {
    let map = GroupMap::certify_if_small(t1.group(), t2.group(), images, bounds)?;
    for which in [Factor::K, Factor::H, Factor::E] {
        if !map.image_of(t1.factor(which)).is_subset(t2.factor(which)) {
            return Err(TrifactError::ContainmentFails(which));
        }
    }
    let s1 = derivation(t1);
    let s2 = derivation(t2);
    for (h, k) in s1.pairs() {
        assert_eq!(
            s2.apply(map.apply(h)),
            map.apply(k),
            "morphism does not commute with σ at {h}"
        );
    }
    Ok(TrifactMorphism { map })
}

/// `f|K1` as a map between the associated braces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedBraceHom {
    pub map: BraceMap,
    pub monomorphism: bool,
    pub epimorphism: bool,
}

pub fn induced_brace_hom(
    f: &TrifactMorphism,
    t1: &TrifactorisedGroup,
    t2: &TrifactorisedGroup,
    bounds: &Bounds,
) -> Result<InducedBraceHom, TrifactError> {
    let b1 = associated_brace(t1, bounds)?;
    let b2 = associated_brace(t2, bounds)?;
    let images: Vec<Elem> = (0..b1.order())
        .map(|i| {
            t2.brace_index(f.map.apply(t1.k_element(i)))
                .expect("f(K1) <= K2")
        })
        .collect();
    let map = is_brace_hom(&images, &b1, &b2).expect("restriction to K is a brace homomorphism");
    Ok(InducedBraceHom {
        monomorphism: map.is_injective(),
        epimorphism: map.is_surjective(),
        map,
    })
}

/// Extends a brace map between the associated braces of `t1` and `t2` to
/// `k η1(c) ↦ f(k) η2(f(c))`. This is possible exactly when
/// `f(ker η1) ≤ ker η2`; otherwise the first offending element is returned.
pub fn lift_brace_hom(
    f: &[Elem],
    t1: &TrifactorisedGroup,
    t2: &TrifactorisedGroup,
    bounds: &Bounds,
) -> Result<TrifactMorphism, TrifactError> {
    let eta1 = recover_eta(t1, bounds)?;
    let eta2 = recover_eta(t2, bounds)?;
    lift_with(f, t1, t2, &eta1, &eta2, bounds)
}

pub(crate) fn lift_with(
    f: &[Elem],
    t1: &TrifactorisedGroup,
    t2: &TrifactorisedGroup,
    eta1: &EtaDatum,
    eta2: &EtaDatum,
    bounds: &Bounds,
) -> Result<TrifactMorphism, TrifactError> {
    is_brace_hom(f, &eta1.brace, &eta2.brace).map_err(TrifactError::BraceMapInvalid)?;
    if let Some(c) = eta1.kernel.iter().find(|&c| !eta2.kernel.contains(f[c])) {
        return Err(TrifactError::ObstructionWitness(c));
    }
    // one preimage under η1 for every element of E1
    let g1 = t1.group();
    let mut pre = vec![usize::MAX; g1.order()];
    for (c, &e) in eta1.images.iter().enumerate() {
        if pre[e] == usize::MAX {
            pre[e] = c;
        }
    }
    let g2 = t2.group();
    let images: Vec<Elem> = g1
        .elements()
        .map(|g| {
            let (k, e) = t1.decompose(g);
            let fk = t2.k_element(f[t1.brace_index(k).expect("k in K")]);
            g2.mul(fk, eta2.images[f[pre[e]]])
        })
        .collect();
    is_trifact_morphism(images, t1, t2, bounds)
}

/// Rebuilds `t` from its associated brace and `ker η`, returning the rebuilt
/// tuple and an isomorphism to `t` that is the identity on brace indices of `K`.
pub fn reconstruct(
    t: &TrifactorisedGroup,
    bounds: &Bounds,
) -> Result<(TrifactorisedGroup, TrifactMorphism), TrifactError> {
    let eta = recover_eta(t, bounds)?;
    let rebuilt = generalised_trifact(&eta.brace, &eta.kernel, bounds)?;
    let id: Vec<Elem> = (0..eta.brace.order()).collect();
    let iso = lift_brace_hom(&id, &rebuilt, t, bounds)?;
    assert!(
        iso.map.is_bijective(),
        "reconstruction is not an isomorphism"
    );
    Ok((rebuilt, iso))
}

/// Identity brace map on `brace`, the usual input for lifting between two
/// tuples of the same brace.
pub fn identity_images(brace: &SkewBrace) -> Vec<Elem> {
    (0..brace.order()).collect()
}
