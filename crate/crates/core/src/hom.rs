//! Homomorphisms, quotients and semidirect products.

use crate::config::Bounds;
use crate::group::{Elem, FiniteGroup, GroupError};
use crate::subgroup::{normality_witness, SubgroupSet};

/// An element map between two groups, certified to be a homomorphism.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupMap {
    images: Vec<Elem>,
    target_order: usize,
}

impl GroupMap {
    /// Certifies `images` as a homomorphism `source -> target`.
    pub fn certify(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: Vec<Elem>,
    ) -> Result<Self, GroupError> {
        if images.len() != source.order() {
            return Err(GroupError::MapLength {
                len: images.len(),
                expected: source.order(),
            });
        }
        for &y in &images {
            target.check_index(y)?;
        }
        if images[0] != 0 {
            return Err(GroupError::NotHomomorphism(0, 0));
        }
        for a in source.elements() {
            for b in source.elements() {
                if images[source.mul(a, b)] != target.mul(images[a], images[b]) {
                    return Err(GroupError::NotHomomorphism(a, b));
                }
            }
        }
        Ok(GroupMap {
            images,
            target_order: target.order(),
        })
    }

    /// Wraps images already known to form a homomorphism.
    pub(crate) fn trusted(images: Vec<Elem>, target_order: usize) -> Self {
        GroupMap {
            images,
            target_order,
        }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupMap {
            images: group.elements().collect(),
            target_order: group.order(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn source_order(&self) -> usize {
        self.images.len()
    }

    pub fn target_order(&self) -> usize {
        self.target_order
    }

    pub fn kernel(&self) -> SubgroupSet {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &y)| y == 0)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn image(&self) -> SubgroupSet {
        self.images.iter().copied().collect()
    }

    pub fn image_of(&self, s: &SubgroupSet) -> SubgroupSet {
        s.iter().map(|x| self.images[x]).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image().len() == self.images.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().len() == self.target_order
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &GroupMap) -> GroupMap {
        GroupMap {
            images: self.images.iter().map(|&y| other.images[y]).collect(),
            target_order: other.target_order,
        }
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> Option<GroupMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.images.len()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Some(GroupMap {
            images: inv,
            target_order: self.images.len(),
        })
    }
}

/// `G/N` on canonical coset representatives.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// Certified epimorphism `G -> G/N` with kernel `N`.
    pub projection: GroupMap,
    /// Least element of each coset, indexed by quotient element.
    pub representatives: Vec<Elem>,
}

/// Quotient by a normal subgroup. Cosets are numbered in increasing order of
/// their least member, so the coset of the identity is `0`.
pub fn quotient_group(
    group: &FiniteGroup,
    normal: &SubgroupSet,
    bounds: &Bounds,
) -> Result<Quotient, GroupError> {
    normal.check_in(group)?;
    if !crate::subgroup::is_subgroup(group, normal) {
        return Err(GroupError::NotSubgroup);
    }
    if let Some((member, by)) = normality_witness(group, normal) {
        return Err(GroupError::NotNormal { member, by });
    }
    let n = group.order();
    let mut coset = vec![usize::MAX; n];
    let mut reps = Vec::with_capacity(n / normal.len());
    for x in group.elements() {
        if coset[x] != usize::MAX {
            continue;
        }
        let c = reps.len();
        reps.push(x);
        for s in normal.iter() {
            coset[group.mul(x, s)] = c;
        }
    }
    let m = reps.len();
    let qbounds = Bounds {
        dense_table: bounds.dense_table.max(m),
        ..bounds.clone()
    };
    let quotient = FiniteGroup::from_fn(m, &qbounds, |a, b| coset[group.mul(reps[a], reps[b])])?;
    let projection = GroupMap::certify_if_small(group, &quotient, coset, bounds)?;
    Ok(Quotient {
        group: quotient,
        projection,
        representatives: reps,
    })
}

impl GroupMap {
    /// Full certification when `|source|^2` is affordable, otherwise a check
    /// over random pairs and generators of the source.
    pub(crate) fn certify_if_small(
        source: &FiniteGroup,
        target: &FiniteGroup,
        images: Vec<Elem>,
        bounds: &Bounds,
    ) -> Result<Self, GroupError> {
        if source.order() <= bounds.dense_table {
            return GroupMap::certify(source, target, images);
        }
        let gens = crate::search::generating_set(source);
        for &g in &gens {
            for x in source.elements() {
                if images[source.mul(x, g)] != target.mul(images[x], images[g]) {
                    return Err(GroupError::NotHomomorphism(x, g));
                }
            }
        }
        // right multiplication by generators reaches every product, so the
        // check above already certifies the homomorphism
        Ok(GroupMap::trusted(images, target.order()))
    }
}

/// A semidirect product with its two canonical embedded factors.
#[derive(Clone, Debug)]
pub struct Semidirect {
    pub group: FiniteGroup,
    /// `{(k, 0)}`, i.e. indices `k * |E|`.
    pub base: SubgroupSet,
    /// `{(0, e)}`, i.e. indices `e`.
    pub actor: SubgroupSet,
}

/// `[base]actor` where `action[e]` is the automorphism of `base` induced by
/// actor element `e`.
pub fn semidirect_product(
    base: &FiniteGroup,
    actor: &FiniteGroup,
    action: &[Vec<Elem>],
    bounds: &Bounds,
) -> Result<Semidirect, GroupError> {
    let (n, m) = (base.order(), actor.order());
    if action.len() != m {
        return Err(GroupError::MapLength {
            len: action.len(),
            expected: m,
        });
    }
    for (e, perm) in action.iter().enumerate() {
        if perm.len() != n || perm.iter().any(|&x| x >= n) {
            return Err(GroupError::ActionNotAutomorphism(e));
        }
        let mut hit = vec![false; n];
        for &x in perm {
            hit[x] = true;
        }
        if hit.iter().any(|&h| !h) {
            return Err(GroupError::ActionNotAutomorphism(e));
        }
        for a in 0..n {
            for b in 0..n {
                if perm[base.mul(a, b)] != base.mul(perm[a], perm[b]) {
                    return Err(GroupError::ActionNotAutomorphism(e));
                }
            }
        }
    }
    let gens = crate::search::generating_set(actor);
    if action[0].iter().enumerate().any(|(i, &x)| i != x) {
        return Err(GroupError::ActionNotHomomorphism(0, 0));
    }
    // action(e g) = action(e) ∘ action(g) for all e and generators g suffices
    for e in 0..m {
        for &g in &gens {
            let eg = actor.mul(e, g);
            if (0..n).any(|k| action[eg][k] != action[e][action[g][k]]) {
                return Err(GroupError::ActionNotHomomorphism(e, g));
            }
        }
    }
    let flat: Vec<u32> = action
        .iter()
        .flat_map(|p| p.iter().map(|&x| x as u32))
        .collect();
    let group = FiniteGroup::semidirect_unchecked(base.clone(), actor.clone(), flat);
    group.verify_associativity(bounds)?;
    Ok(Semidirect {
        base: (0..n).map(|k| k * m).collect(),
        actor: (0..m).collect(),
        group,
    })
}
