//! Subsets and subgroups of a [`FiniteGroup`], stored as sorted index lists.

use std::collections::{BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::config::Bounds;
use crate::group::{Elem, FiniteGroup, GroupError};

/// A strictly sorted list of element indices.
///
/// The same type carries plain subsets (set products, images) and
/// subgroups; subgroup-ness is a property checked with [`is_subgroup`].
/// The derived ordering is lexicographic on the member lists, which is the
/// canonical order used for every list of subgroups in this crate.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubgroupSet(Vec<Elem>);

impl SubgroupSet {
    pub fn new(members: impl IntoIterator<Item = Elem>) -> Self {
        let mut v: Vec<Elem> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        SubgroupSet(v)
    }

    pub fn trivial() -> Self {
        SubgroupSet(vec![0])
    }

    pub fn whole(group: &FiniteGroup) -> Self {
        SubgroupSet(group.elements().collect())
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        SubgroupSet(
            mask.iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| i)
                .collect(),
        )
    }

    pub fn members(&self) -> &[Elem] {
        &self.0
    }

    pub fn into_members(self) -> Vec<Elem> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.0 == [0]
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.0.iter().all(|&x| other.contains(x))
    }

    /// Position of `x` in the sorted member list.
    pub fn position(&self, x: Elem) -> Option<usize> {
        self.0.binary_search(&x).ok()
    }

    pub fn mask(&self, order: usize) -> Vec<bool> {
        let mut m = vec![false; order];
        for &x in &self.0 {
            m[x] = true;
        }
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.0.iter().copied()
    }

    pub(crate) fn check_in(&self, group: &FiniteGroup) -> Result<(), GroupError> {
        match self.0.last() {
            Some(&x) if x >= group.order() => Err(GroupError::IndexOutOfRange {
                index: x,
                order: group.order(),
            }),
            _ => Ok(()),
        }
    }
}

impl FromIterator<Elem> for SubgroupSet {
    fn from_iter<I: IntoIterator<Item = Elem>>(iter: I) -> Self {
        SubgroupSet::new(iter)
    }
}

/// Closure of `start` (assumed to contain 0 or be empty) under right
/// multiplication by `gens`; returns the membership mask and member list.
pub(crate) fn close(group: &FiniteGroup, start: &[Elem], gens: &[Elem]) -> (Vec<bool>, Vec<Elem>) {
    let mut seen = vec![false; group.order()];
    let mut list = Vec::with_capacity(start.len().max(1));
    seen[0] = true;
    list.push(0);
    for &s in start {
        if !seen[s] {
            seen[s] = true;
            list.push(s);
        }
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        i += 1;
        for &g in gens {
            let y = group.mul(x, g);
            if !seen[y] {
                seen[y] = true;
                list.push(y);
            }
        }
    }
    (seen, list)
}

/// Least subgroup containing `gens`.
pub fn generated_subgroup(group: &FiniteGroup, gens: &[Elem]) -> Result<SubgroupSet, GroupError> {
    for &g in gens {
        group.check_index(g)?;
    }
    let (mask, _) = close(group, &[], gens);
    Ok(SubgroupSet::from_mask(&mask))
}

/// The set `{a b : a in A, b in B}`.
pub fn product_set(group: &FiniteGroup, a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    let mut mask = vec![false; group.order()];
    for x in a.iter() {
        for y in b.iter() {
            mask[group.mul(x, y)] = true;
        }
    }
    SubgroupSet::from_mask(&mask)
}

pub fn intersection(a: &SubgroupSet, b: &SubgroupSet) -> SubgroupSet {
    SubgroupSet(a.iter().filter(|&x| b.contains(x)).collect())
}

/// `{x^-1 : x in S}`.
pub fn inverse_set(group: &FiniteGroup, s: &SubgroupSet) -> SubgroupSet {
    s.iter().map(|x| group.inv(x)).collect()
}

pub fn is_subgroup(group: &FiniteGroup, s: &SubgroupSet) -> bool {
    if !s.contains(0) || s.check_in(group).is_err() {
        return false;
    }
    let mask = s.mask(group.order());
    s.iter()
        .all(|x| mask[group.inv(x)] && s.iter().all(|y| mask[group.mul(x, y)]))
}

/// True iff `g s g^-1` lies in `S` for every `g` and `s`.
pub fn is_normal(group: &FiniteGroup, s: &SubgroupSet) -> bool {
    normality_witness(group, s).is_none()
}

/// A pair `(member, by)` with `by member by^-1` outside `S`, if any.
pub fn normality_witness(group: &FiniteGroup, s: &SubgroupSet) -> Option<(Elem, Elem)> {
    let mask = s.mask(group.order());
    for g in group.elements() {
        for x in s.iter() {
            if !mask[group.conj(g, x)] {
                return Some((x, g));
            }
        }
    }
    None
}

/// `{g : g S g^-1 = S}`.
pub fn normalizer(group: &FiniteGroup, s: &SubgroupSet) -> SubgroupSet {
    let mask = s.mask(group.order());
    group
        .elements()
        .filter(|&g| s.iter().all(|x| mask[group.conj(g, x)]))
        .collect()
}

/// Elements of `within` commuting with every element of `s`.
pub fn centralizer_in(group: &FiniteGroup, within: &SubgroupSet, s: &SubgroupSet) -> SubgroupSet {
    within
        .iter()
        .filter(|&g| s.iter().all(|x| group.mul(g, x) == group.mul(x, g)))
        .collect()
}

/// Smallest normal subgroup containing `s`.
pub fn normal_closure(group: &FiniteGroup, s: &SubgroupSet) -> SubgroupSet {
    let gens: Vec<Elem> = group
        .elements()
        .flat_map(|g| s.iter().map(move |x| (g, x)))
        .map(|(g, x)| group.conj(g, x))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let (mask, _) = close(group, &[], &gens);
    SubgroupSet::from_mask(&mask)
}

/// Everything `subgroup_calculus` reports about a pair of subsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupCalculus {
    pub product: SubgroupSet,
    pub intersection: SubgroupSet,
    pub product_is_subgroup: bool,
    /// Normal closure of the subgroup generated by `A` and `B`.
    pub normal_closure: SubgroupSet,
}

pub fn subgroup_calculus(
    group: &FiniteGroup,
    a: &SubgroupSet,
    b: &SubgroupSet,
) -> Result<SubgroupCalculus, GroupError> {
    a.check_in(group)?;
    b.check_in(group)?;
    let product = product_set(group, a, b);
    let product_is_subgroup = is_subgroup(group, &product);
    let joined: SubgroupSet = a.iter().chain(b.iter()).collect();
    Ok(SubgroupCalculus {
        intersection: intersection(a, b),
        normal_closure: normal_closure(group, &joined),
        product,
        product_is_subgroup,
    })
}

/// Conjugacy classes, each sorted, listed by least member.
pub fn conjugacy_classes(group: &FiniteGroup) -> Vec<Vec<Elem>> {
    let mut seen = vec![false; group.order()];
    let mut classes = Vec::new();
    for x in group.elements() {
        if seen[x] {
            continue;
        }
        let class: BTreeSet<Elem> = group.elements().map(|g| group.conj(g, x)).collect();
        for &y in &class {
            seen[y] = true;
        }
        classes.push(class.into_iter().collect());
    }
    classes
}

/// Every normal subgroup, in canonical (lexicographic) order.
///
/// Normal subgroups are unions of conjugacy classes; starting from the
/// trivial subgroup, each known normal subgroup is joined with one more
/// class at a time, which reaches every normal subgroup.
pub fn normal_subgroups(
    group: &FiniteGroup,
    bounds: &Bounds,
) -> Result<Vec<SubgroupSet>, GroupError> {
    if group.order() > bounds.normal_subgroups {
        return Err(GroupError::SearchBoundExceeded {
            what: "normal subgroup",
            order: group.order(),
            bound: bounds.normal_subgroups,
        });
    }
    let classes = conjugacy_classes(group);
    Ok(join_closure(group, &classes))
}

/// Every subgroup, in canonical order, by joining cyclic subgroups.
pub fn all_subgroups(group: &FiniteGroup, bounds: &Bounds) -> Result<Vec<SubgroupSet>, GroupError> {
    if group.order() > bounds.subgroups {
        return Err(GroupError::SearchBoundExceeded {
            what: "subgroup lattice",
            order: group.order(),
            bound: bounds.subgroups,
        });
    }
    // one generator per cyclic subgroup
    let mut cyclic_seen = HashSet::new();
    let mut gens = Vec::new();
    for x in group.elements().skip(1) {
        let c = generated_subgroup(group, &[x]).expect("index in range");
        if cyclic_seen.insert(c) {
            gens.push(vec![x]);
        }
    }
    Ok(join_closure(group, &gens))
}

/// Closure of `{1}` under joining with the subgroups generated by each
/// generator block in `blocks`.
fn join_closure(group: &FiniteGroup, blocks: &[Vec<Elem>]) -> Vec<SubgroupSet> {
    let n = group.order();
    // each found subgroup keeps a short generating list
    let mut found: HashSet<SubgroupSet> = HashSet::new();
    let mut queue: Vec<(SubgroupSet, Vec<Elem>)> = Vec::new();
    let trivial = SubgroupSet::trivial();
    found.insert(trivial.clone());
    queue.push((trivial, Vec::new()));
    let mut i = 0;
    while i < queue.len() {
        let (members, gens) = queue[i].clone();
        i += 1;
        if members.len() == n {
            continue;
        }
        let mask = members.mask(n);
        for block in blocks {
            if block.iter().all(|&x| mask[x]) {
                continue;
            }
            let mut new_gens = gens.clone();
            new_gens.extend(block.iter().copied().filter(|&x| !mask[x]));
            let (m, list) = close(group, members.members(), &new_gens);
            // `close` only multiplies on the right, which is enough since the
            // start set is a subgroup already contained in the result
            debug_assert_eq!(m.iter().filter(|&&b| b).count(), list.len());
            let s = SubgroupSet::from_mask(&m);
            if found.insert(s.clone()) {
                queue.push((s, new_gens));
            }
        }
    }
    let mut out: Vec<SubgroupSet> = found.into_iter().collect();
    out.sort();
    out
}

/// A subgroup as a group in its own right, indexed by position in the
/// sorted member list.
pub fn subgroup_as_group(
    group: &FiniteGroup,
    s: &SubgroupSet,
    bounds: &Bounds,
) -> Result<FiniteGroup, GroupError> {
    s.check_in(group)?;
    if !is_subgroup(group, s) {
        return Err(GroupError::NotSubgroup);
    }
    let m = s.members();
    FiniteGroup::from_fn(m.len(), bounds, |a, b| {
        s.position(group.mul(m[a], m[b])).expect("closed")
    })
}

/// Image of a set under an element map.
pub fn image_set(images: &[Elem], s: &SubgroupSet) -> SubgroupSet {
    s.iter().map(|x| images[x]).collect()
}
