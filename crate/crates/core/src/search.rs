//! Backtracking searches for automorphisms and subgroup-preserving
//! isomorphisms.
//!
//! Both searches pick a generating set of the source, then assign images to
//! the generators one at a time. After every assignment the partial map is
//! propagated over the subgroup generated so far; a conflict, a collision,
//! or a mismatch in element order or subgroup membership prunes the branch.

use crate::config::Bounds;
use crate::group::{Elem, FiniteGroup, GroupError};
use crate::hom::GroupMap;
use crate::subgroup::{close, SubgroupSet};

const UNSET: usize = usize::MAX;

/// Greedy generating set: repeatedly add the element whose join with the
/// current subgroup is largest, ties broken by least index.
pub fn generating_set(group: &FiniteGroup) -> Vec<Elem> {
    let n = group.order();
    let mut gens: Vec<Elem> = Vec::new();
    let (mut mask, mut members) = close(group, &[], &gens);
    while members.len() < n {
        let mut best = (0, UNSET, Vec::new(), Vec::new());
        for x in group.elements() {
            if mask[x] {
                continue;
            }
            let mut trial = gens.clone();
            trial.push(x);
            let (m, l) = close(group, &members, &trial);
            if l.len() > best.0 {
                best = (l.len(), x, m, l);
                if best.0 == n {
                    break;
                }
            }
        }
        gens.push(best.1);
        mask = best.2;
        members = best.3;
    }
    gens
}

/// Outcome of a constrained isomorphism search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoOutcome {
    Found(GroupMap),
    /// The search tree was exhausted; `nodes` is the number of generator
    /// assignments tried, kept as an audit token.
    Exhausted {
        nodes: u64,
    },
}

impl IsoOutcome {
    pub fn map(&self) -> Option<&GroupMap> {
        match self {
            IsoOutcome::Found(m) => Some(m),
            IsoOutcome::Exhausted { .. } => None,
        }
    }
}

struct Search<'a> {
    src: &'a FiniteGroup,
    dst: &'a FiniteGroup,
    gens: Vec<Elem>,
    src_sig: Vec<u64>,
    dst_sig: Vec<u64>,
    candidates: Vec<Vec<Elem>>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(
        src: &'a FiniteGroup,
        dst: &'a FiniteGroup,
        pairs: &[(&SubgroupSet, &SubgroupSet)],
    ) -> Self {
        let signature = |g: &FiniteGroup, side: usize| -> Vec<u64> {
            let masks: Vec<Vec<bool>> = pairs
                .iter()
                .map(|p| if side == 0 { p.0 } else { p.1 }.mask(g.order()))
                .collect();
            g.elements()
                .map(|x| {
                    let bits = masks
                        .iter()
                        .enumerate()
                        .fold(0u64, |acc, (i, m)| acc | ((m[x] as u64) << i));
                    ((g.element_order(x) as u64) << 32) | bits
                })
                .collect()
        };
        let src_sig = signature(src, 0);
        let dst_sig = signature(dst, 1);
        let gens = generating_set(src);
        let candidates = gens
            .iter()
            .map(|&g| {
                dst.elements()
                    .filter(|&y| dst_sig[y] == src_sig[g])
                    .collect()
            })
            .collect();
        Search {
            src,
            dst,
            gens,
            src_sig,
            dst_sig,
            candidates,
            nodes: 0,
        }
    }

    fn signatures_match(&self) -> bool {
        let mut a = self.src_sig.clone();
        let mut b = self.dst_sig.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// Propagates the images of the first `assigned.len()` generators over
    /// the subgroup they generate. Returns the partial map if consistent.
    fn propagate(&self, assigned: &[Elem]) -> Option<Vec<Elem>> {
        let mut map = vec![UNSET; self.src.order()];
        let mut used = vec![false; self.dst.order()];
        map[0] = 0;
        used[0] = true;
        let mut queue = vec![0];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            i += 1;
            for (gi, &g) in self.gens[..assigned.len()].iter().enumerate() {
                let y = self.src.mul(x, g);
                let img = self.dst.mul(map[x], assigned[gi]);
                if map[y] == UNSET {
                    if used[img] || self.src_sig[y] != self.dst_sig[img] {
                        return None;
                    }
                    map[y] = img;
                    used[img] = true;
                    queue.push(y);
                } else if map[y] != img {
                    return None;
                }
            }
        }
        Some(map)
    }

    fn run(&mut self, stop_at_first: bool, out: &mut Vec<GroupMap>) {
        let mut assigned = Vec::with_capacity(self.gens.len());
        self.descend(&mut assigned, stop_at_first, out);
    }

    fn descend(
        &mut self,
        assigned: &mut Vec<Elem>,
        stop_at_first: bool,
        out: &mut Vec<GroupMap>,
    ) -> bool {
        let level = assigned.len();
        for ci in 0..self.candidates[level].len() {
            let y = self.candidates[level][ci];
            self.nodes += 1;
            assigned.push(y);
            if let Some(map) = self.propagate(assigned) {
                if level + 1 == self.gens.len() {
                    // the generators reach every element, so `map` is total
                    out.push(GroupMap::trusted(map, self.dst.order()));
                    if stop_at_first {
                        assigned.pop();
                        return true;
                    }
                } else if self.descend(assigned, stop_at_first, out) && stop_at_first {
                    assigned.pop();
                    return true;
                }
            }
            assigned.pop();
        }
        false
    }
}

/// All automorphisms of `group`, identity first, in lexicographic order of
/// the images of the greedy generating set.
pub fn automorphisms(group: &FiniteGroup, bounds: &Bounds) -> Result<Vec<GroupMap>, GroupError> {
    if group.order() > bounds.automorphism {
        return Err(GroupError::SearchBoundExceeded {
            what: "automorphism",
            order: group.order(),
            bound: bounds.automorphism,
        });
    }
    if group.order() == 1 {
        return Ok(vec![GroupMap::identity(group)]);
    }
    let mut search = Search::new(group, group, &[]);
    let mut out = Vec::new();
    search.run(false, &mut out);
    out.sort_by(|a, b| a.images().cmp(b.images()));
    Ok(out)
}

/// An isomorphism `f: g1 -> g2` with `f(S1) = S2` for every pair, or a
/// certified exhaustion of the search tree.
pub fn constrained_isomorphism(
    g1: &FiniteGroup,
    g2: &FiniteGroup,
    pairs: &[(&SubgroupSet, &SubgroupSet)],
    bounds: &Bounds,
) -> Result<IsoOutcome, GroupError> {
    let order = g1.order().max(g2.order());
    if order > bounds.isomorphism {
        return Err(GroupError::SearchBoundExceeded {
            what: "isomorphism",
            order,
            bound: bounds.isomorphism,
        });
    }
    if g1.order() != g2.order() || pairs.iter().any(|(a, b)| a.len() != b.len()) {
        return Ok(IsoOutcome::Exhausted { nodes: 0 });
    }
    for (a, b) in pairs {
        a.check_in(g1)?;
        b.check_in(g2)?;
    }
    if pairs.len() > 32 {
        return Err(GroupError::SearchBoundExceeded {
            what: "subgroup pair",
            order: pairs.len(),
            bound: 32,
        });
    }
    if g1.order() == 1 {
        return Ok(IsoOutcome::Found(GroupMap::identity(g1)));
    }
    let mut search = Search::new(g1, g2, pairs);
    if !search.signatures_match() {
        return Ok(IsoOutcome::Exhausted { nodes: 0 });
    }
    let mut out = Vec::new();
    search.run(true, &mut out);
    Ok(match out.pop() {
        Some(m) => IsoOutcome::Found(m),
        None => IsoOutcome::Exhausted {
            nodes: search.nodes,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::subgroup::generated_subgroup;

    fn b() -> Bounds {
        Bounds::default()
    }

    /// Brute force over all bijections fixing 0.
    fn brute_force_automorphism_count(g: &FiniteGroup) -> usize {
        fn rec(g: &FiniteGroup, map: &mut Vec<usize>, used: &mut Vec<bool>, count: &mut usize) {
            let n = g.order();
            if map.len() == n {
                let ok = (0..n).all(|a| (0..n).all(|c| map[g.mul(a, c)] == g.mul(map[a], map[c])));
                *count += ok as usize;
                return;
            }
            for y in 0..n {
                if !used[y] {
                    used[y] = true;
                    map.push(y);
                    rec(g, map, used, count);
                    map.pop();
                    used[y] = false;
                }
            }
        }
        let mut used = vec![false; g.order()];
        used[0] = true;
        let mut count = 0;
        rec(g, &mut vec![0], &mut used, &mut count);
        count
    }

    #[test]
    fn automorphism_counts_agree_with_brute_force() {
        for g in [
            catalog::cyclic(2),
            catalog::klein_four(),
            catalog::cyclic(6),
            catalog::symmetric(3).group,
        ] {
            let auts = automorphisms(&g, &b()).unwrap();
            assert_eq!(auts.len(), brute_force_automorphism_count(&g));
        }
        assert_eq!(automorphisms(&catalog::cyclic(2), &b()).unwrap().len(), 1);
        assert_eq!(
            automorphisms(&catalog::klein_four(), &b()).unwrap().len(),
            6
        );
    }

    #[test]
    fn automorphism_counts_of_order_eight() {
        assert_eq!(
            automorphisms(&catalog::elementary_abelian_2(3), &b())
                .unwrap()
                .len(),
            168
        );
        assert_eq!(
            automorphisms(&catalog::quaternion(), &b()).unwrap().len(),
            24
        );
        assert_eq!(automorphisms(&catalog::dihedral(4), &b()).unwrap().len(), 8);
        assert_eq!(automorphisms(&catalog::cyclic(8), &b()).unwrap().len(), 4);
    }

    #[test]
    fn a5_has_120_automorphisms_and_60_inner() {
        let a5 = catalog::alternating(5).group;
        let auts = automorphisms(&a5, &b()).unwrap();
        assert_eq!(auts.len(), 120);
        let inner: std::collections::BTreeSet<Vec<Elem>> = a5
            .elements()
            .map(|g| a5.elements().map(|x| a5.conj(g, x)).collect())
            .collect();
        assert_eq!(inner.len(), 60);
        assert!(inner
            .iter()
            .all(|m| auts.iter().any(|a| a.images() == m.as_slice())));
    }

    #[test]
    fn automorphisms_are_closed_under_composition() {
        let auts = automorphisms(&catalog::dihedral(4), &b()).unwrap();
        for f in &auts {
            for g in &auts {
                assert!(auts.contains(&f.then(g)));
            }
            assert!(auts.contains(&f.inverse().unwrap()));
        }
    }

    #[test]
    fn identity_found_for_equal_pairs() {
        let d8 = catalog::dihedral(4);
        let s = generated_subgroup(&d8, &[1]).unwrap();
        let out = constrained_isomorphism(&d8, &d8, &[(&s, &s)], &b()).unwrap();
        let f = out.map().unwrap();
        assert!(f.image_of(&s) == s);
    }

    #[test]
    fn order_mismatch_is_exhausted_immediately() {
        let out = constrained_isomorphism(&catalog::klein_four(), &catalog::cyclic(2), &[], &b())
            .unwrap();
        assert_eq!(out, IsoOutcome::Exhausted { nodes: 0 });
    }

    #[test]
    fn non_isomorphic_groups_exhaust() {
        let out = constrained_isomorphism(&catalog::cyclic(4), &catalog::klein_four(), &[], &b())
            .unwrap();
        assert!(out.map().is_none());
        let out = constrained_isomorphism(&catalog::dihedral(4), &catalog::quaternion(), &[], &b())
            .unwrap();
        assert!(out.map().is_none());
    }

    #[test]
    fn subgroup_constraint_separates() {
        // in D8, the centre <x^2> and a reflection subgroup are both order 2
        // but not related by any automorphism
        let d8 = catalog::dihedral(4);
        let centre = generated_subgroup(&d8, &[d8.mul(2, 2)]).unwrap();
        let refl = generated_subgroup(&d8, &[1]).unwrap();
        let out = constrained_isomorphism(&d8, &d8, &[(&centre, &refl)], &b()).unwrap();
        assert!(out.map().is_none());
    }

    #[test]
    fn search_bound() {
        let small = Bounds {
            isomorphism: 4,
            automorphism: 4,
            ..Bounds::default()
        };
        assert!(
            constrained_isomorphism(&catalog::cyclic(6), &catalog::cyclic(6), &[], &small).is_err()
        );
        assert!(automorphisms(&catalog::cyclic(6), &small).is_err());
    }

    #[test]
    fn symmetric_result_inverts() {
        let g1 = catalog::direct_product(&catalog::cyclic(2), &catalog::cyclic(4));
        let g2 = catalog::direct_product(&catalog::cyclic(4), &catalog::cyclic(2));
        let f = constrained_isomorphism(&g1, &g2, &[], &b())
            .unwrap()
            .map()
            .unwrap()
            .clone();
        let inv = f.inverse().unwrap();
        assert!(GroupMap::certify(&g2, &g1, inv.images().to_vec()).is_ok());
    }
}
