//! Isomorphism classes of the trifactorised groups attached to one brace:
//! the set Ω of admissible kernels, the action of `Aut(B)` on it, and the
//! orbit/class correspondence.

use crate::brace::{brace_automorphisms, ker_lambda, BraceMap, SkewBrace};
use crate::config::Bounds;
use crate::morphism::{lift_brace_hom, TrifactMorphism};
use crate::search::{constrained_isomorphism, IsoOutcome};
use crate::subgroup::{intersection, normal_subgroups, SubgroupSet};
use crate::trifact::{generalised_trifact, recover_eta, TrifactError, TrifactorisedGroup};

/// `Ω = {N ⊴ C : N ≤ ker λ}` in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaSet {
    pub members: Vec<SubgroupSet>,
    pub ker_lambda: SubgroupSet,
}

pub fn omega(brace: &SkewBrace, bounds: &Bounds) -> Result<OmegaSet, TrifactError> {
    let kernel = ker_lambda(brace);
    let members = normal_subgroups(brace.mul_group(), bounds)?
        .into_iter()
        .filter(|n| n.is_subset(&kernel))
        .collect();
    Ok(OmegaSet {
        members,
        ker_lambda: kernel,
    })
}

/// Orbits of `Aut(B)` on Ω acting by `f • N = f(N)`.
#[derive(Clone, Debug)]
pub struct OrbitPartition {
    pub omega: OmegaSet,
    pub automorphisms: Vec<BraceMap>,
    /// Indices into `omega.members`, each orbit sorted; orbits ordered by
    /// their least member.
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    /// Least member of each orbit.
    pub fn representatives(&self) -> impl Iterator<Item = &SubgroupSet> + '_ {
        self.orbits.iter().map(|o| &self.omega.members[o[0]])
    }
}

pub fn aut_orbits(brace: &SkewBrace, bounds: &Bounds) -> Result<OrbitPartition, TrifactError> {
    let omega = omega(brace, bounds)?;
    let automorphisms = brace_automorphisms(brace, bounds)?;
    let mut orbit_of = vec![usize::MAX; omega.members.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for i in 0..omega.members.len() {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        let mut orbit = Vec::new();
        for f in &automorphisms {
            let image = f.image_of(&omega.members[i]);
            let j = omega
                .members
                .binary_search(&image)
                .expect("Ω is Aut(B)-stable");
            if orbit_of[j] == usize::MAX {
                orbit_of[j] = orbits.len();
                orbit.push(j);
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    Ok(OrbitPartition {
        omega,
        automorphisms,
        orbits,
    })
}

/// Whether two tuples are isomorphic by a group isomorphism mapping `K`,
/// `H` and `E` onto their counterparts.
pub fn tuples_isomorphic(
    t1: &TrifactorisedGroup,
    t2: &TrifactorisedGroup,
    bounds: &Bounds,
) -> Result<IsoOutcome, TrifactError> {
    let pairs = [(t1.k(), t2.k()), (t1.h(), t2.h()), (t1.e(), t2.e())];
    Ok(constrained_isomorphism(
        t1.group(),
        t2.group(),
        &pairs,
        bounds,
    )?)
}

/// One isomorphism class, built from an orbit.
#[derive(Clone, Debug)]
pub struct IsoClass {
    pub representative: SubgroupSet,
    pub tuple: TrifactorisedGroup,
    /// Every kernel in the orbit with an explicit isomorphism from the
    /// representative's tuple, lifted from a brace automorphism.
    pub members: Vec<(SubgroupSet, TrifactMorphism)>,
}

/// Non-isomorphism certificate for two class representatives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairCertificate {
    pub classes: (usize, usize),
    /// `Exhausted` on success; a `Found` map would contradict the orbit criterion.
    pub outcome: IsoOutcome,
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub orbits: OrbitPartition,
    pub classes: Vec<IsoClass>,
    /// Present when certification was requested.
    pub certificates: Option<Vec<PairCertificate>>,
}

impl Classification {
    /// All pairwise searches exhausted (true when certification was skipped).
    pub fn certified_distinct(&self) -> bool {
        self.certificates.as_ref().is_none_or(|c| {
            c.iter()
                .all(|p| matches!(p.outcome, IsoOutcome::Exhausted { .. }))
        })
    }
}

/// One tuple per orbit; each orbit member gets an explicit isomorphism
/// lifted from an automorphism. With `certify`, class representatives are
/// also shown pairwise non-isomorphic by exhaustive search.
pub fn iso_classes(
    brace: &SkewBrace,
    certify: bool,
    bounds: &Bounds,
) -> Result<Classification, TrifactError> {
    let orbits = aut_orbits(brace, bounds)?;
    let mut classes = Vec::with_capacity(orbits.orbits.len());
    for orbit in &orbits.orbits {
        let rep = orbits.omega.members[orbit[0]].clone();
        let tuple = generalised_trifact(brace, &rep, bounds)?;
        let mut members = Vec::with_capacity(orbit.len());
        for &j in orbit {
            let target_kernel = &orbits.omega.members[j];
            let f = orbits
                .automorphisms
                .iter()
                .find(|f| &f.image_of(&rep) == target_kernel)
                .expect("orbit member is an image of the representative");
            let target = generalised_trifact(brace, target_kernel, bounds)?;
            let iso = lift_brace_hom(f.images(), &tuple, &target, bounds)?;
            assert!(
                iso.map.is_bijective(),
                "lift of an automorphism with f(N) = M is an isomorphism"
            );
            members.push((target_kernel.clone(), iso));
        }
        classes.push(IsoClass {
            representative: rep,
            tuple,
            members,
        });
    }
    let certificates = if certify {
        let mut out = Vec::new();
        for i in 0..classes.len() {
            for j in i + 1..classes.len() {
                let outcome = tuples_isomorphic(&classes[i].tuple, &classes[j].tuple, bounds)?;
                out.push(PairCertificate {
                    classes: (i, j),
                    outcome,
                });
            }
        }
        Some(out)
    } else {
        None
    };
    Ok(Classification {
        orbits,
        classes,
        certificates,
    })
}

/// Partitions tuples into isomorphism classes by exhaustive search;
/// returns the class index of each tuple.
pub fn partition_by_isomorphism(
    tuples: &[TrifactorisedGroup],
    bounds: &Bounds,
) -> Result<Vec<usize>, TrifactError> {
    let mut reps: Vec<usize> = Vec::new();
    let mut class = Vec::with_capacity(tuples.len());
    for (i, t) in tuples.iter().enumerate() {
        let mut found = None;
        for (c, &r) in reps.iter().enumerate() {
            if tuples_isomorphic(&tuples[r], t, bounds)?.map().is_some() {
                found = Some(c);
                break;
            }
        }
        class.push(found.unwrap_or_else(|| {
            reps.push(i);
            reps.len() - 1
        }));
    }
    Ok(class)
}

/// Which of the two extreme members of the family a tuple is.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KindReport {
    /// `K ∩ H = 1`.
    pub large: bool,
    /// `ker η = ker λ`.
    pub small: bool,
    /// `Cent_E(K) = 1`, equivalent to `small`.
    pub centralizer_trivial: bool,
    pub kernel: SubgroupSet,
    pub ker_lambda: SubgroupSet,
}

impl KindReport {
    pub fn label(&self) -> &'static str {
        match (self.large, self.small) {
            (true, true) => "large+small",
            (true, false) => "large",
            (false, true) => "small",
            (false, false) => "intermediate",
        }
    }
}

pub fn identify_kind(t: &TrifactorisedGroup, bounds: &Bounds) -> Result<KindReport, TrifactError> {
    let eta = recover_eta(t, bounds)?;
    let kl = ker_lambda(&eta.brace);
    Ok(KindReport {
        large: intersection(t.k(), t.h()).is_trivial(),
        small: eta.kernel == kl,
        centralizer_trivial: t.centralizer_e_of_k().is_trivial(),
        kernel: eta.kernel,
        ker_lambda: kl,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::trifact::{large_trifact, small_trifact};

    fn b() -> Bounds {
        Bounds::default()
    }

    #[test]
    fn omega_examples() {
        assert_eq!(
            omega(&SkewBrace::trivial(&catalog::cyclic(2)), &b())
                .unwrap()
                .members
                .len(),
            2
        );
        assert_eq!(
            omega(&SkewBrace::trivial(&catalog::klein_four()), &b())
                .unwrap()
                .members
                .len(),
            5
        );
        let opp = SkewBrace::opposite(&catalog::symmetric(3).group, &b()).unwrap();
        assert_eq!(
            omega(&opp, &b()).unwrap().members,
            vec![SubgroupSet::trivial()]
        );
    }

    #[test]
    fn orbit_counts() {
        let count = |g| {
            aut_orbits(&SkewBrace::trivial(&g), &b())
                .unwrap()
                .orbits
                .len()
        };
        assert_eq!(count(catalog::cyclic(2)), 2);
        assert_eq!(count(catalog::klein_four()), 3);
        assert_eq!(count(catalog::cyclic(4)), 3);
    }

    #[test]
    fn v4_classes() {
        let brace = SkewBrace::trivial(&catalog::klein_four());
        let c = iso_classes(&brace, true, &b()).unwrap();
        let mut orders: Vec<usize> = c.classes.iter().map(|k| k.tuple.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![4, 8, 16]);
        assert!(c.certified_distinct());
        let eight = c.classes.iter().find(|k| k.tuple.order() == 8).unwrap();
        assert_eq!(eight.members.len(), 3);
    }

    #[test]
    fn kinds() {
        let v4 = catalog::klein_four();
        let brace = SkewBrace::trivial(&v4);
        let large = identify_kind(&large_trifact(&brace, &b()).unwrap(), &b()).unwrap();
        assert_eq!(large.label(), "large");
        let small = identify_kind(&small_trifact(&brace, &b()).unwrap(), &b()).unwrap();
        assert_eq!(small.label(), "small");
        let mid = generalised_trifact(&brace, &SubgroupSet::new([0, 1]), &b()).unwrap();
        assert_eq!(identify_kind(&mid, &b()).unwrap().label(), "intermediate");
        let opp = SkewBrace::opposite(&catalog::symmetric(3).group, &b()).unwrap();
        let both = identify_kind(&large_trifact(&opp, &b()).unwrap(), &b()).unwrap();
        assert_eq!(both.label(), "large+small");
    }
}
