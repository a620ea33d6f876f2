//! Trifactorised groups `(G, K, H, E)` and the constructions linking them to
//! braces.
//!
//! Brace elements of the brace carried by a tuple are numbered by position
//! in the sorted member list of `K`. The large, small and generalised
//! constructions put `K` at indices `k * |E|` of a semidirect product, so the
//! brace element `i` is the group element `i * |E|` and the associated brace
//! of a constructed tuple has the original tables verbatim.

use std::fmt;

use thiserror::Error;

use crate::brace::{ker_lambda, lambda_map, BraceError, SkewBrace};
use crate::config::Bounds;
use crate::group::{Elem, FiniteGroup, GroupError};
use crate::hom::{quotient_group, semidirect_product, GroupMap};
use crate::subgroup::{
    intersection, is_normal, is_subgroup, normality_witness, subgroup_as_group, SubgroupSet,
};

/// One of the three distinguished subgroups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    K,
    H,
    E,
}

impl fmt::Display for Factor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Factor::K => "K",
            Factor::H => "H",
            Factor::E => "E",
        })
    }
}

/// A pair of distinguished subgroups, used for products and intersections.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Pair {
    KE,
    KH,
    HE,
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Pair::KE => "KE",
            Pair::KH => "KH",
            Pair::HE => "HE",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrifactError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Brace(#[from] BraceError),
    #[error("{0} is not a subgroup of G")]
    NotSubgroup(Factor),
    #[error("K is not normal in G: {by} conjugates {member} out of K")]
    KNotNormal { member: Elem, by: Elem },
    #[error("G != {0}")]
    FactorisationFails(Pair),
    #[error("intersection of {0} is not trivial")]
    IntersectionNontrivial(Pair),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("kernel is not contained in ker λ (element {0})")]
    KernelNotInKerLambda(Elem),
    #[error("f({0}) is not contained in the target {0}")]
    ContainmentFails(Factor),
    #[error("obstruction: {0} lies in the source kernel but its image does not lie in the target kernel")]
    ObstructionWitness(Elem),
    #[error("brace map does not match the associated braces: {0}")]
    BraceMapInvalid(BraceError),
    #[error("subset is not contained in K")]
    NotSubsetOfK,
    #[error("subset is not contained in H")]
    NotSubsetOfH,
    #[error("subset is not contained in E")]
    NotContainedInE,
    #[error("subset is not a subbrace")]
    NotASubbrace,
    #[error("subset is not a subgroup of G")]
    NotASubgroup,
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("normal subgroup does not give a trifactorised quotient")]
    NotAdmissible,
    #[error("kernels are not nested")]
    KernelsNotNested,
}

impl TrifactError {
    pub fn is_bound(&self) -> bool {
        match self {
            TrifactError::Group(e) => e.is_bound(),
            TrifactError::Brace(e) | TrifactError::BraceMapInvalid(e) => e.is_bound(),
            _ => false,
        }
    }
}

/// The brace a tuple was built from, with `N = ker η`.
#[derive(Clone, Debug)]
pub struct Provenance {
    pub brace: SkewBrace,
    /// Kernel of `η`, as brace indices.
    pub kernel: SubgroupSet,
}

/// A certified trifactorised group.
#[derive(Clone, Debug)]
pub struct TrifactorisedGroup {
    group: FiniteGroup,
    k: SubgroupSet,
    h: SubgroupSet,
    e: SubgroupSet,
    k_mask: Vec<bool>,
    /// `g -> (k_g, e_g)` when `|G|` is under the cache bound.
    cache: Option<Vec<(u32, u32)>>,
    provenance: Option<Provenance>,
}

/// Certifies `(G, K, H, E)`. Conditions are checked in a fixed order and the
/// first failure is reported: subgroups, normality of `K`, the three
/// factorisations, then `H ∩ E` and `K ∩ E`.
pub fn validate_trifact(
    group: FiniteGroup,
    k: SubgroupSet,
    h: SubgroupSet,
    e: SubgroupSet,
    bounds: &Bounds,
) -> Result<TrifactorisedGroup, TrifactError> {
    for (s, which) in [(&k, Factor::K), (&h, Factor::H), (&e, Factor::E)] {
        s.check_in(&group)?;
        if !is_subgroup(&group, s) {
            return Err(TrifactError::NotSubgroup(which));
        }
    }
    if let Some((member, by)) = normality_witness(&group, &k) {
        return Err(TrifactError::KNotNormal { member, by });
    }
    let n = group.order();
    // |XY| = |X||Y| / |X ∩ Y| for subgroups
    let product_size =
        |x: &SubgroupSet, y: &SubgroupSet| x.len() * y.len() / intersection(x, y).len();
    for (x, y, pair) in [(&k, &e, Pair::KE), (&k, &h, Pair::KH), (&h, &e, Pair::HE)] {
        if product_size(x, y) != n {
            return Err(TrifactError::FactorisationFails(pair));
        }
    }
    if !intersection(&h, &e).is_trivial() {
        return Err(TrifactError::IntersectionNontrivial(Pair::HE));
    }
    if !intersection(&k, &e).is_trivial() {
        return Err(TrifactError::IntersectionNontrivial(Pair::KE));
    }
    let k_mask = k.mask(n);
    let cache = (n <= bounds.decomposition_cache).then(|| {
        let mut c = vec![(0u32, 0u32); n];
        for x in k.iter() {
            for y in e.iter() {
                c[group.mul(x, y)] = (x as u32, y as u32);
            }
        }
        c
    });
    Ok(TrifactorisedGroup {
        group,
        k,
        h,
        e,
        k_mask,
        cache,
        provenance: None,
    })
}

impl TrifactorisedGroup {
    pub(crate) fn with_provenance(mut self, brace: SkewBrace, kernel: SubgroupSet) -> Self {
        self.provenance = Some(Provenance { brace, kernel });
        self
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    pub fn k(&self) -> &SubgroupSet {
        &self.k
    }

    pub fn h(&self) -> &SubgroupSet {
        &self.h
    }

    pub fn e(&self) -> &SubgroupSet {
        &self.e
    }

    pub fn factor(&self, which: Factor) -> &SubgroupSet {
        match which {
            Factor::K => &self.k,
            Factor::H => &self.h,
            Factor::E => &self.e,
        }
    }

    pub fn provenance(&self) -> Option<&Provenance> {
        self.provenance.as_ref()
    }

    pub fn in_k(&self, g: Elem) -> bool {
        self.k_mask[g]
    }

    /// The unique `(k_g, e_g)` with `g = k_g e_g`.
    pub fn decompose(&self, g: Elem) -> (Elem, Elem) {
        if let Some(c) = &self.cache {
            let (k, e) = c[g];
            return (k as usize, e as usize);
        }
        for e in self.e.iter() {
            let k = self.group.mul(g, self.group.inv(e));
            if self.k_mask[k] {
                return (k, e);
            }
        }
        unreachable!("G = KE for a certified tuple")
    }

    /// Brace index of a member of `K`.
    pub fn brace_index(&self, k: Elem) -> Option<usize> {
        self.k.position(k)
    }

    /// Member of `K` carrying brace index `i`.
    pub fn k_element(&self, i: usize) -> Elem {
        self.k.members()[i]
    }

    /// `Cent_E(K)`.
    pub fn centralizer_e_of_k(&self) -> SubgroupSet {
        self.e
            .iter()
            .filter(|&x| {
                self.k
                    .iter()
                    .all(|y| self.group.mul(x, y) == self.group.mul(y, x))
            })
            .collect()
    }
}

/// The bijective derivation `σ: H -> K`, `h ↦ k_h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationMap {
    /// `σ(h)` for `h` in sorted order of `H`.
    forward: Vec<Elem>,
    /// `σ⁻¹(k)` for `k` in sorted order of `K`.
    backward: Vec<Elem>,
    h_members: Vec<Elem>,
}

impl DerivationMap {
    pub fn apply(&self, h: Elem) -> Elem {
        let i = self.h_members.binary_search(&h).expect("element of H");
        self.forward[i]
    }

    /// `σ⁻¹` of the member of `K` with brace index `i`.
    pub fn inverse_of_index(&self, i: usize) -> Elem {
        self.backward[i]
    }

    /// Pairs `(h, σ(h))` in sorted order of `h`.
    pub fn pairs(&self) -> impl Iterator<Item = (Elem, Elem)> + '_ {
        self.h_members
            .iter()
            .copied()
            .zip(self.forward.iter().copied())
    }
}

/// Computes `σ` and certifies it is bijective and satisfies
/// `σ(h1 h2) = σ(h1) · e_{h1} σ(h2) e_{h1}⁻¹`.
pub fn derivation(t: &TrifactorisedGroup) -> DerivationMap {
    let g = &t.group;
    let h_members = t.h.members().to_vec();
    let forward: Vec<Elem> = h_members.iter().map(|&h| t.decompose(h).0).collect();
    let mut backward = vec![usize::MAX; t.k.len()];
    for (&h, &k) in h_members.iter().zip(&forward) {
        let i = t.brace_index(k).expect("k_h lies in K");
        assert_eq!(backward[i], usize::MAX, "σ is not injective");
        backward[i] = h;
    }
    assert!(
        backward.iter().all(|&h| h != usize::MAX),
        "σ is not surjective"
    );
    let map = DerivationMap {
        forward,
        backward,
        h_members,
    };
    for (h1, s1) in map.pairs() {
        let e1 = t.decompose(h1).1;
        for (h2, s2) in map.pairs() {
            let lhs = map.apply(g.mul(h1, h2));
            let rhs = g.mul(s1, g.conj(e1, s2));
            assert_eq!(lhs, rhs, "cocycle identity fails at ({h1}, {h2})");
        }
    }
    map
}

/// The brace on `K`: `+` is the product of `K` and
/// `k1 ⊡ k2 = k1 · e k2 e⁻¹` with `e = e_{σ⁻¹(k1)}`.
pub fn associated_brace(
    t: &TrifactorisedGroup,
    bounds: &Bounds,
) -> Result<SkewBrace, TrifactError> {
    let g = &t.group;
    let sigma = derivation(t);
    let ks = t.k.members();
    let n = ks.len();
    let pos = |x: Elem| t.brace_index(x).expect("element of K");
    let e_of: Vec<Elem> = (0..n)
        .map(|i| t.decompose(sigma.inverse_of_index(i)).1)
        .collect();
    let add = FiniteGroup::from_fn(n, bounds, |a, b| pos(g.mul(ks[a], ks[b])))?;
    let mul = FiniteGroup::from_fn(n, bounds, |a, b| pos(g.mul(ks[a], g.conj(e_of[a], ks[b]))))?;
    let brace = SkewBrace::from_groups(add, mul).expect("associated tables satisfy the brace law");
    // (K, ⊡) ≅ H through σ⁻¹
    for a in 0..n {
        for b in 0..n {
            assert_eq!(
                sigma.inverse_of_index(brace.prod(a, b)),
                g.mul(sigma.inverse_of_index(a), sigma.inverse_of_index(b))
            );
        }
    }
    Ok(brace)
}

/// `η = π_E|_H ∘ σ⁻¹` on the associated brace.
#[derive(Clone, Debug)]
pub struct EtaDatum {
    pub brace: SkewBrace,
    /// `η(c)` as an element of `G` lying in `E`, indexed by brace element.
    pub images: Vec<Elem>,
    /// `ker η` as brace indices; corresponds to `K ∩ H`.
    pub kernel: SubgroupSet,
    /// `E` on positions of its sorted member list.
    pub e_group: FiniteGroup,
    /// `η` as an epimorphism from the multiplicative group onto `e_group`.
    pub hom: GroupMap,
}

pub fn recover_eta(t: &TrifactorisedGroup, bounds: &Bounds) -> Result<EtaDatum, TrifactError> {
    let brace = associated_brace(t, bounds)?;
    let sigma = derivation(t);
    let images: Vec<Elem> = (0..brace.order())
        .map(|i| t.decompose(sigma.inverse_of_index(i)).1)
        .collect();
    let kernel: SubgroupSet = (0..brace.order()).filter(|&i| images[i] == 0).collect();
    let k_cap_h: SubgroupSet = intersection(&t.k, &t.h)
        .iter()
        .map(|x| t.brace_index(x).unwrap())
        .collect();
    assert_eq!(kernel, k_cap_h, "ker η differs from K ∩ H");
    let e_group = subgroup_as_group(&t.group, &t.e, bounds)?;
    let positions = images
        .iter()
        .map(|&x| t.e.position(x).expect("image in E"))
        .collect();
    let hom = GroupMap::certify(brace.mul_group(), &e_group, positions)?;
    assert!(hom.is_surjective(), "η is not onto E");
    Ok(EtaDatum {
        brace,
        images,
        kernel,
        e_group,
        hom,
    })
}

/// `[K](C/N)` with `C/N` acting through `λ̄`, `H = {(δ(c), η(c))}`.
pub fn generalised_trifact(
    brace: &SkewBrace,
    kernel: &SubgroupSet,
    bounds: &Bounds,
) -> Result<TrifactorisedGroup, TrifactError> {
    kernel.check_in(brace.mul_group())?;
    if !is_subgroup(brace.mul_group(), kernel) || !is_normal(brace.mul_group(), kernel) {
        return Err(TrifactError::NotNormal);
    }
    let lam = lambda_map(brace);
    if let Some(x) = kernel
        .iter()
        .find(|&x| lam.perm(x).iter().enumerate().any(|(i, &y)| i != y))
    {
        return Err(TrifactError::KernelNotInKerLambda(x));
    }
    let q = quotient_group(brace.mul_group(), kernel, bounds)?;
    let actions: Vec<Vec<Elem>> = q
        .representatives
        .iter()
        .map(|&r| lam.perm(r).to_vec())
        .collect();
    let sd = semidirect_product(brace.add_group(), &q.group, &actions, bounds)?;
    let m = q.group.order();
    let h: SubgroupSet = (0..brace.order())
        .map(|c| c * m + q.projection.apply(c))
        .collect();
    let t = validate_trifact(sd.group, sd.base, h, sd.actor, bounds)?;
    Ok(t.with_provenance(brace.clone(), kernel.clone()))
}

/// `L(B) = [K]C` through `λ`, `H = {(δ(c), c)}`.
pub fn large_trifact(
    brace: &SkewBrace,
    bounds: &Bounds,
) -> Result<TrifactorisedGroup, TrifactError> {
    generalised_trifact(brace, &SubgroupSet::trivial(), bounds)
}

/// `S(B) = [K]λ(C)` inside the holomorph, `H = {(a, λ_a)}`. For a brace
/// with trivial `λ` this is `(K, K, K, 1)` on the additive group itself.
pub fn small_trifact(
    brace: &SkewBrace,
    bounds: &Bounds,
) -> Result<TrifactorisedGroup, TrifactError> {
    let kernel = ker_lambda(brace);
    let lam = lambda_map(brace);
    if lam.is_trivial() {
        let whole = SubgroupSet::whole(brace.add_group());
        let t = validate_trifact(
            brace.add_group().clone(),
            whole.clone(),
            whole,
            SubgroupSet::trivial(),
            bounds,
        )?;
        return Ok(t.with_provenance(brace.clone(), kernel));
    }
    let image = lam.image(bounds);
    let sd = semidirect_product(brace.add_group(), &image.group, &image.perms, bounds)?;
    let m = image.group.order();
    let h: SubgroupSet = (0..brace.order())
        .map(|a| a * m + image.hom.apply(a))
        .collect();
    let t = validate_trifact(sd.group, sd.base, h, sd.actor, bounds)?;
    Ok(t.with_provenance(brace.clone(), kernel))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::subgroup::generated_subgroup;

    fn b() -> Bounds {
        Bounds::default()
    }

    /// The D12 tuple: x = index 2, y = index 1.
    fn d12_tuple() -> TrifactorisedGroup {
        let g = catalog::dihedral(6);
        let (x, y) = (2, 1);
        let x2 = g.mul(x, x);
        let x3y = g.mul(g.pow(x, 3), y);
        let k = generated_subgroup(&g, &[x]).unwrap();
        let h = generated_subgroup(&g, &[x2, x3y]).unwrap();
        let e = generated_subgroup(&g, &[y]).unwrap();
        validate_trifact(g, k, h, e, &b()).unwrap()
    }

    #[test]
    fn trivial_small_form_validates() {
        for (_, g) in catalog::small_groups() {
            let whole = SubgroupSet::whole(&g);
            let t =
                validate_trifact(g, whole.clone(), whole, SubgroupSet::trivial(), &b()).unwrap();
            let brace = associated_brace(&t, &b()).unwrap();
            assert!(brace.is_trivial());
            let sigma = derivation(&t);
            assert!(sigma.pairs().all(|(h, k)| h == k));
            assert_eq!(recover_eta(&t, &b()).unwrap().kernel.len(), t.order());
        }
    }

    #[test]
    fn whole_group_as_h_and_e_fails_on_h_cap_e() {
        let g = catalog::symmetric(3).group;
        let k = SubgroupSet::new([0, 3, 4]);
        assert!(is_normal(&g, &k));
        let whole = SubgroupSet::whole(&g);
        let err = validate_trifact(g, k, whole.clone(), whole, &b()).unwrap_err();
        assert_eq!(err, TrifactError::IntersectionNontrivial(Pair::HE));
    }

    #[test]
    fn d12_tuple_is_valid_with_s3_brace() {
        let t = d12_tuple();
        assert_eq!(t.h().len(), 6);
        assert!(!subgroup_as_group(t.group(), t.h(), &b())
            .unwrap()
            .is_abelian());
        let brace = associated_brace(&t, &b()).unwrap();
        assert!(brace.add_group().is_abelian());
        assert!(brace.add_group().element_orders().contains(&6));
        assert!(!brace.mul_group().is_abelian());
        assert!(t.centralizer_e_of_k().is_trivial());
    }

    #[test]
    fn large_of_trivial_c2() {
        let brace = SkewBrace::trivial(&catalog::cyclic(2));
        let t = large_trifact(&brace, &b()).unwrap();
        assert_eq!(t.order(), 4);
        assert!(t.group().is_abelian());
        assert_eq!(t.h().members(), &[0, 3]);
        assert!(intersection(t.k(), t.h()).is_trivial());
        let sigma = derivation(&t);
        assert_eq!(sigma.apply(3), 2);
    }

    #[test]
    fn constructions_round_trip_on_small_corpus() {
        for (_, g) in catalog::small_groups().into_iter().take(7) {
            for brace in [
                SkewBrace::trivial(&g),
                SkewBrace::opposite(&g, &b()).unwrap(),
            ] {
                let large = large_trifact(&brace, &b()).unwrap();
                assert_eq!(large.order(), brace.order() * brace.order());
                assert!(associated_brace(&large, &b()).unwrap().same_tables(&brace));
                assert!(recover_eta(&large, &b()).unwrap().kernel.is_trivial());
                let small = small_trifact(&brace, &b()).unwrap();
                assert!(associated_brace(&small, &b()).unwrap().same_tables(&brace));
                assert_eq!(
                    recover_eta(&small, &b()).unwrap().kernel,
                    ker_lambda(&brace)
                );
                assert!(small.centralizer_e_of_k().is_trivial());
            }
        }
    }

    #[test]
    fn small_of_trivial_brace_is_the_additive_group() {
        let g = catalog::klein_four();
        let t = small_trifact(&SkewBrace::trivial(&g), &b()).unwrap();
        assert!(t.group().same_table(&g));
        assert_eq!(t.k().len(), 4);
        assert_eq!(t.h(), t.k());
        assert!(t.e().is_trivial());
    }

    #[test]
    fn generalised_v4_by_x() {
        let g = catalog::klein_four();
        let brace = SkewBrace::trivial(&g);
        let n = SubgroupSet::new([0, 1]);
        let t = generalised_trifact(&brace, &n, &b()).unwrap();
        assert_eq!(t.order(), 8);
        assert_eq!(intersection(t.k(), t.h()).len(), 2);
        let sigma = derivation(&t);
        assert_eq!(sigma.pairs().count(), 4);
        let large = large_trifact(&brace, &b()).unwrap();
        let zero = generalised_trifact(&brace, &SubgroupSet::trivial(), &b()).unwrap();
        assert!(zero.group().same_table(large.group()));
        assert_eq!(zero.h(), large.h());
    }

    #[test]
    fn generalised_rejects_bad_kernels() {
        let s3 = catalog::symmetric(3).group;
        let opp = SkewBrace::opposite(&s3, &b()).unwrap();
        let a3 = SubgroupSet::new([0, 3, 4]);
        assert!(is_normal(&s3, &a3));
        assert!(matches!(
            generalised_trifact(&opp, &a3, &b()),
            Err(TrifactError::KernelNotInKerLambda(_))
        ));
        let t = SubgroupSet::new([0, 1]);
        assert_eq!(
            generalised_trifact(&opp, &t, &b()).unwrap_err(),
            TrifactError::NotNormal
        );
    }
}
