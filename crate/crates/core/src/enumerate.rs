//! All braces with a given additive group, read off from the regular
//! subgroups of the holomorph `Hol(K) = [K]Aut(K)`.

use std::collections::HashMap;

use crate::brace::{BraceError, SkewBrace};
use crate::config::Bounds;
use crate::group::{Elem, FiniteGroup, GroupError};
use crate::hom::semidirect_product;
use crate::search::automorphisms;

/// `Hol(K)` with the automorphism behind each actor index.
#[derive(Clone, Debug)]
pub struct Holomorph {
    pub group: FiniteGroup,
    /// `auts[α]` is the automorphism with actor index `α`; index 0 is the identity.
    pub auts: Vec<Vec<Elem>>,
}

pub fn holomorph(k: &FiniteGroup, bounds: &Bounds) -> Result<Holomorph, GroupError> {
    let auts: Vec<Vec<Elem>> = automorphisms(k, bounds)?
        .into_iter()
        .map(|f| f.images().to_vec())
        .collect();
    let index: HashMap<&[Elem], usize> = auts
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let compose = |p: &[Elem], q: &[Elem]| -> Vec<Elem> { q.iter().map(|&x| p[x]).collect() };
    let actor = FiniteGroup::from_fn(auts.len(), bounds, |a, b| {
        index[compose(&auts[a], &auts[b]).as_slice()]
    })?;
    let sd = semidirect_product(k, &actor, &auts, bounds)?;
    Ok(Holomorph {
        group: sd.group,
        auts,
    })
}

/// Every brace with additive group `k`, one per regular subgroup of
/// `Hol(k)`, sorted by multiplication table.
pub fn enumerate_braces(k: &FiniteGroup, bounds: &Bounds) -> Result<Vec<SkewBrace>, BraceError> {
    let n = k.order();
    if n > bounds.enumeration {
        return Err(GroupError::SearchBoundExceeded {
            what: "brace enumeration",
            order: n,
            bound: bounds.enumeration,
        }
        .into());
    }
    let hol = holomorph(k, bounds)?;
    let mut found = Vec::new();
    let mut search = RegularSearch {
        hol: &hol,
        n,
        m: hol.auts.len(),
        found: &mut found,
    };
    let mut phi = vec![usize::MAX; n];
    phi[0] = 0;
    search.descend(&phi, &mut Vec::new());
    let mut braces = Vec::with_capacity(found.len());
    let mut seen = std::collections::BTreeSet::new();
    for phi in found {
        let mul = FiniteGroup::from_fn(n, bounds, |a, b| k.mul(a, hol.auts[phi[a]][b]))
            .map_err(BraceError::MulNotGroup)?;
        let brace = SkewBrace::from_groups(k.clone(), mul)?;
        if seen.insert(brace.mul_group().rows()) {
            braces.push(brace);
        }
    }
    braces.sort_by_cached_key(|b| b.mul_group().rows());
    Ok(braces)
}

struct RegularSearch<'a> {
    hol: &'a Holomorph,
    n: usize,
    m: usize,
    found: &'a mut Vec<Vec<usize>>,
}

impl RegularSearch<'_> {
    /// `phi[k]` is the automorphism paired with `k` in the subgroup built so
    /// far, or `usize::MAX` when `k` is not yet covered.
    fn descend(&mut self, phi: &[usize], gens: &mut Vec<Elem>) {
        let Some(k) = phi.iter().position(|&a| a == usize::MAX) else {
            self.found.push(phi.to_vec());
            return;
        };
        for alpha in 0..self.m {
            gens.push(k * self.m + alpha);
            if let Some(next) = self.close(gens) {
                self.descend(&next, gens);
            }
            gens.pop();
        }
    }

    /// Closes `gens`, failing as soon as two elements share a `K`
    /// coordinate, which would break regularity.
    fn close(&self, gens: &[Elem]) -> Option<Vec<usize>> {
        let g = &self.hol.group;
        let mut phi = vec![usize::MAX; self.n];
        phi[0] = 0;
        let mut list = vec![0];
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            i += 1;
            for &s in gens {
                let y = g.mul(x, s);
                let (k, a) = (y / self.m, y % self.m);
                match phi[k] {
                    usize::MAX => {
                        phi[k] = a;
                        list.push(y);
                    }
                    b if b == a => {}
                    _ => return None,
                }
            }
        }
        Some(phi)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brace::lambda_map;
    use crate::catalog;

    #[test]
    fn counts_for_prime_orders() {
        let b = Bounds::default();
        assert_eq!(enumerate_braces(&catalog::cyclic(2), &b).unwrap().len(), 1);
        assert_eq!(enumerate_braces(&catalog::cyclic(3), &b).unwrap().len(), 1);
        assert_eq!(enumerate_braces(&catalog::cyclic(5), &b).unwrap().len(), 1);
    }

    #[test]
    fn c4_contains_the_trivial_brace() {
        let b = Bounds::default();
        let braces = enumerate_braces(&catalog::cyclic(4), &b).unwrap();
        assert!(braces.iter().any(|br| br.is_trivial()));
        for br in &braces {
            let lam = lambda_map(br);
            for a in 0..4 {
                for x in 0..4 {
                    assert_eq!(br.prod(a, x), br.sum(a, lam.perm(a)[x]));
                }
            }
        }
    }

    #[test]
    fn holomorph_orders() {
        let b = Bounds::default();
        assert_eq!(holomorph(&catalog::cyclic(3), &b).unwrap().group.order(), 6);
        assert_eq!(
            holomorph(&catalog::klein_four(), &b).unwrap().group.order(),
            24
        );
    }

    #[test]
    fn bound_is_enforced() {
        let b = Bounds {
            enumeration: 4,
            ..Bounds::default()
        };
        assert!(matches!(
            enumerate_braces(&catalog::cyclic(5), &b),
            Err(BraceError::Group(GroupError::SearchBoundExceeded { .. }))
        ));
    }
}
