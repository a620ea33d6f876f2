//! Substructures of a brace seen inside an associated trifactorised group:
//! images and preimages under `σ`, the group-side characterisations of
//! subbraces and ideals, and trifactorised subgroups.

use std::collections::BTreeSet;

use crate::brace::{classify_substructure, SkewBrace, SubLabel, SubstructureClass};
use crate::config::Bounds;
use crate::group::{Elem, FiniteGroup};
use crate::subgroup::{
    all_subgroups, intersection, inverse_set, is_normal, normality_witness, normalizer,
    product_set, subgroup_as_group, SubgroupSet,
};
use crate::trifact::{
    associated_brace, derivation, recover_eta, validate_trifact, TrifactError, TrifactorisedGroup,
};

fn check_subset(s: &SubgroupSet, of: &SubgroupSet, err: TrifactError) -> Result<(), TrifactError> {
    if s.is_subset(of) {
        Ok(())
    } else {
        Err(err)
    }
}

/// `σ⁻¹(L) = LE ∩ H`.
pub fn sigma_preimage(
    t: &TrifactorisedGroup,
    l: &SubgroupSet,
) -> Result<SubgroupSet, TrifactError> {
    check_subset(l, t.k(), TrifactError::NotSubsetOfK)?;
    Ok(intersection(&product_set(t.group(), l, t.e()), t.h()))
}

/// `σ(S) = SE ∩ K`.
pub fn sigma_image(t: &TrifactorisedGroup, s: &SubgroupSet) -> Result<SubgroupSet, TrifactError> {
    check_subset(s, t.h(), TrifactError::NotSubsetOfH)?;
    Ok(intersection(&product_set(t.group(), s, t.e()), t.k()))
}

/// `π_E(σ⁻¹(L)) = L⁻¹H ∩ E`.
pub fn pi_e_of_preimage(
    t: &TrifactorisedGroup,
    l: &SubgroupSet,
) -> Result<SubgroupSet, TrifactError> {
    check_subset(l, t.k(), TrifactError::NotSubsetOfK)?;
    let linv = inverse_set(t.group(), l);
    Ok(intersection(&product_set(t.group(), &linv, t.h()), t.e()))
}

/// Why a condition failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Witness {
    /// The identity or some required element is missing.
    Missing(Elem),
    /// `a b` leaves the set.
    Product(Elem, Elem),
    /// `by member by⁻¹` leaves the set.
    Conjugate { member: Elem, by: Elem },
    /// The condition was decided at brace level.
    BraceLabel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Condition {
    pub name: &'static str,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl Condition {
    fn from(name: &'static str, w: Option<Witness>) -> Self {
        Condition {
            name,
            holds: w.is_none(),
            witness: w,
        }
    }
}

fn subgroup_witness(g: &FiniteGroup, s: &SubgroupSet) -> Option<Witness> {
    if !s.contains(0) {
        return Some(Witness::Missing(0));
    }
    let mask = s.mask(g.order());
    for a in s.iter() {
        for b in s.iter() {
            if !mask[g.mul(a, b)] {
                return Some(Witness::Product(a, b));
            }
        }
    }
    None
}

fn normal_witness(g: &FiniteGroup, s: &SubgroupSet) -> Option<Witness> {
    subgroup_witness(g, s)
        .or_else(|| normality_witness(g, s).map(|(member, by)| Witness::Conjugate { member, by }))
}

/// Normality of `s` inside the subgroup `within`.
fn normal_in_witness(g: &FiniteGroup, s: &SubgroupSet, within: &SubgroupSet) -> Option<Witness> {
    subgroup_witness(g, s).or_else(|| {
        let mask = s.mask(g.order());
        within.iter().find_map(|by| {
            s.iter()
                .find(|&x| !mask[g.conj(by, x)])
                .map(|member| Witness::Conjugate { member, by })
        })
    })
}

fn subset_witness(s: &SubgroupSet, of: &SubgroupSet) -> Option<Witness> {
    s.iter().find(|&x| !of.contains(x)).map(Witness::Missing)
}

/// Every group-side condition for one subset `L` of `K`, grouped by the
/// brace notion it characterises: subbrace, left ideal, strong left ideal,
/// ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubstructureReport {
    pub l: SubgroupSet,
    pub brace_label: SubstructureClass,
    pub subbrace: Vec<Condition>,
    pub left_ideal: Vec<Condition>,
    pub strong_left_ideal: Vec<Condition>,
    pub ideal: Vec<Condition>,
}

impl SubstructureReport {
    pub fn levels(&self) -> [(SubLabel, &[Condition]); 4] {
        [
            (SubLabel::Subbrace, &self.subbrace),
            (SubLabel::LeftIdeal, &self.left_ideal),
            (SubLabel::StrongLeftIdeal, &self.strong_left_ideal),
            (SubLabel::Ideal, &self.ideal),
        ]
    }

    /// Conditions disagreeing with the first condition of their level.
    pub fn discrepancies(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        for (_, conds) in self.levels() {
            let expected = conds[0].holds;
            out.extend(conds.iter().filter(|c| c.holds != expected).map(|c| c.name));
        }
        out
    }

    /// Finest level whose conditions all hold.
    pub fn group_label(&self) -> SubLabel {
        let mut label = SubLabel::NotSubgroup;
        for (l, conds) in self.levels() {
            if conds.iter().all(|c| c.holds) {
                label = l;
            } else {
                break;
            }
        }
        label
    }
}

/// A tuple together with its associated brace, for repeated substructure
/// queries.
pub struct SubstructureContext<'a> {
    pub tuple: &'a TrifactorisedGroup,
    pub brace: SkewBrace,
}

impl<'a> SubstructureContext<'a> {
    pub fn new(tuple: &'a TrifactorisedGroup, bounds: &Bounds) -> Result<Self, TrifactError> {
        Ok(SubstructureContext {
            tuple,
            brace: associated_brace(tuple, bounds)?,
        })
    }

    /// Brace indices of a subset of `K`.
    pub fn to_brace(&self, l: &SubgroupSet) -> SubgroupSet {
        l.iter()
            .map(|x| self.tuple.brace_index(x).expect("element of K"))
            .collect()
    }

    /// Members of `K` for a set of brace indices.
    pub fn to_group(&self, l: &SubgroupSet) -> SubgroupSet {
        l.iter().map(|i| self.tuple.k_element(i)).collect()
    }

    /// Evaluates every condition without short-circuiting.
    pub fn classify(&self, l: &SubgroupSet) -> Result<SubstructureReport, TrifactError> {
        let t = self.tuple;
        check_subset(l, t.k(), TrifactError::NotSubsetOfK)?;
        let g = t.group();
        let brace_label = classify_substructure(&self.brace, &self.to_brace(l));
        let by_label = |name, level| {
            Condition::from(
                name,
                (brace_label.label < level).then_some(Witness::BraceLabel),
            )
        };
        let le = product_set(g, l, t.e());
        let lh = product_set(g, l, t.h());
        let le_h = intersection(&le, t.h());
        let le_lh = intersection(&le, &lh);
        let l_sub = subgroup_witness(g, l);

        let subbrace = vec![
            by_label("(L,+,·) is a subbrace", SubLabel::Subbrace),
            Condition::from(
                "L ≤ K and LE∩H ≤ H",
                l_sub.or_else(|| subgroup_witness(g, &le_h)),
            ),
            Condition::from(
                "L ≤ K and LE∩H ≤ N_G(L)",
                l_sub
                    .or_else(|| subgroup_witness(g, &le_h))
                    .or_else(|| subset_witness(&le_h, &normalizer(g, l))),
            ),
            Condition::from("LE∩LH ≤ G", subgroup_witness(g, &le_lh)),
        ];
        let left_ideal = vec![
            by_label("L is a left ideal", SubLabel::LeftIdeal),
            Condition::from(
                "L ≤ K and E ≤ N_G(L)",
                l_sub.or_else(|| subset_witness(t.e(), &normalizer(g, l))),
            ),
            Condition::from("LE ≤ G", subgroup_witness(g, &le)),
        ];
        let strong_left_ideal = vec![
            by_label("L is a strong left ideal", SubLabel::StrongLeftIdeal),
            Condition::from("L ⊴ G", normal_witness(g, l)),
        ];
        let ideal = vec![
            by_label("L is an ideal", SubLabel::Ideal),
            Condition::from(
                "L ⊴ G and LE∩H ⊴ H",
                normal_witness(g, l).or_else(|| normal_in_witness(g, &le_h, t.h())),
            ),
            Condition::from("LE∩LH ⊴ G", normal_witness(g, &le_lh)),
        ];
        Ok(SubstructureReport {
            l: l.clone(),
            brace_label,
            subbrace,
            left_ideal,
            strong_left_ideal,
            ideal,
        })
    }
}

pub fn classify_substructure_trifact(
    t: &TrifactorisedGroup,
    l: &SubgroupSet,
    bounds: &Bounds,
) -> Result<SubstructureReport, TrifactError> {
    SubstructureContext::new(t, bounds)?.classify(l)
}

/// A tuple living on a subgroup of a larger ambient group, re-indexed by
/// position: `ambient.members()[i]` is the element behind index `i`.
#[derive(Clone, Debug)]
pub struct SubTuple {
    pub tuple: TrifactorisedGroup,
    pub ambient: SubgroupSet,
}

fn sub_tuple(
    t: &TrifactorisedGroup,
    s: &SubgroupSet,
    k: &SubgroupSet,
    h: &SubgroupSet,
    e: &SubgroupSet,
    bounds: &Bounds,
) -> Result<SubTuple, TrifactError> {
    let group = subgroup_as_group(t.group(), s, bounds)?;
    let pos = |x: &SubgroupSet| -> SubgroupSet {
        x.iter().map(|y| s.position(y).expect("inside T")).collect()
    };
    let tuple = validate_trifact(group, pos(k), pos(h), pos(e), bounds)?;
    Ok(SubTuple {
        tuple,
        ambient: s.clone(),
    })
}

/// `(LE∩LH, L, LE∩H, LH∩E)` for a subbrace `L ⊆ K`. The result carries the
/// restricted brace and `ker η ∩ L` as provenance.
pub fn subbrace_trifact(
    t: &TrifactorisedGroup,
    l: &SubgroupSet,
    bounds: &Bounds,
) -> Result<SubTuple, TrifactError> {
    check_subset(l, t.k(), TrifactError::NotSubsetOfK)?;
    let eta = recover_eta(t, bounds)?;
    let lb: SubgroupSet = l.iter().map(|x| t.brace_index(x).unwrap()).collect();
    if classify_substructure(&eta.brace, &lb).label < SubLabel::Subbrace {
        return Err(TrifactError::NotASubbrace);
    }
    let g = t.group();
    let le = product_set(g, l, t.e());
    let lh = product_set(g, l, t.h());
    let ambient = intersection(&le, &lh);
    let sub = sub_tuple(
        t,
        &ambient,
        l,
        &intersection(&le, t.h()),
        &intersection(&lh, t.e()),
        bounds,
    )?;
    let restricted = eta.brace.restrict(&lb, bounds)?;
    let kernel: SubgroupSet = intersection(&eta.kernel, &lb)
        .iter()
        .map(|i| lb.position(i).expect("inside L"))
        .collect();
    Ok(SubTuple {
        tuple: sub.tuple.with_provenance(restricted, kernel),
        ambient,
    })
}

/// Decides whether `S ≤ G` satisfies `S = (S∩K)E ∩ (S∩K)H`; when it does,
/// returns `(S, S∩K, S∩H, S∩E)` certified, after checking that its
/// derivation is the restriction of `σ`.
pub fn is_trifact_subgroup(
    t: &TrifactorisedGroup,
    s: &SubgroupSet,
    bounds: &Bounds,
) -> Result<Option<SubTuple>, TrifactError> {
    s.check_in(t.group())?;
    if subgroup_witness(t.group(), s).is_some() {
        return Err(TrifactError::NotASubgroup);
    }
    let g = t.group();
    let sk = intersection(s, t.k());
    let rebuilt = intersection(&product_set(g, &sk, t.e()), &product_set(g, &sk, t.h()));
    if &rebuilt != s {
        return Ok(None);
    }
    let sub = sub_tuple(
        t,
        s,
        &sk,
        &intersection(s, t.h()),
        &intersection(s, t.e()),
        bounds,
    )?;
    let sigma = derivation(t);
    let local = derivation(&sub.tuple);
    for (h, k) in local.pairs() {
        assert_eq!(
            s.members()[k],
            sigma.apply(s.members()[h]),
            "sub-derivation is not a restriction of σ"
        );
    }
    Ok(Some(sub))
}

/// One subbrace and its trifactorised subgroup `LH ∩ LE`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectionPair {
    /// Subbrace as a subset of `K`.
    pub l: SubgroupSet,
    pub subgroup: SubgroupSet,
    pub ideal: bool,
    pub normal: bool,
}

#[derive(Clone, Debug)]
pub struct SubbraceBijection {
    pub pairs: Vec<BijectionPair>,
    /// Number of trifactorised subgroups found by scanning every subgroup of `G`.
    pub trifact_subgroups: usize,
    /// `L ↦ LH∩LE` hits every trifactorised subgroup exactly once.
    pub bijective: bool,
    /// Ideals go exactly to the normal trifactorised subgroups.
    pub ideals_match: bool,
}

pub fn subbrace_bijection(
    t: &TrifactorisedGroup,
    bounds: &Bounds,
) -> Result<SubbraceBijection, TrifactError> {
    let ctx = SubstructureContext::new(t, bounds)?;
    let g = t.group();
    let mut pairs = Vec::new();
    for lb in all_subgroups(ctx.brace.add_group(), bounds)? {
        let class = classify_substructure(&ctx.brace, &lb);
        if class.label < SubLabel::Subbrace {
            continue;
        }
        let l = ctx.to_group(&lb);
        let subgroup = intersection(&product_set(g, &l, t.h()), &product_set(g, &l, t.e()));
        let normal = is_normal(g, &subgroup);
        pairs.push(BijectionPair {
            l,
            subgroup,
            ideal: class.label == SubLabel::Ideal,
            normal,
        });
    }
    let mut trifact = BTreeSet::new();
    for s in all_subgroups(g, bounds)? {
        if is_trifact_subgroup(t, &s, bounds)?.is_some() {
            trifact.insert(s);
        }
    }
    let images: BTreeSet<SubgroupSet> = pairs.iter().map(|p| p.subgroup.clone()).collect();
    let bijective = images.len() == pairs.len() && images == trifact;
    let ideals_match = pairs.iter().all(|p| p.ideal == p.normal);
    Ok(SubbraceBijection {
        pairs,
        trifact_subgroups: trifact.len(),
        bijective,
        ideals_match,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::trifact::{generalised_trifact, large_trifact};

    fn b() -> Bounds {
        Bounds::default()
    }

    #[test]
    fn sigma_sets_match_elementwise_sigma() {
        let brace = SkewBrace::opposite(&catalog::symmetric(3).group, &b()).unwrap();
        let t = large_trifact(&brace, &b()).unwrap();
        let sigma = derivation(&t);
        for (h, k) in sigma.pairs() {
            assert_eq!(
                sigma_image(&t, &SubgroupSet::new([h])).unwrap().members(),
                &[k]
            );
            assert_eq!(
                sigma_preimage(&t, &SubgroupSet::new([k]))
                    .unwrap()
                    .members(),
                &[h]
            );
        }
        assert_eq!(&sigma_preimage(&t, t.k()).unwrap(), t.h());
        assert_eq!(&sigma_image(&t, t.h()).unwrap(), t.k());
        assert_eq!(&pi_e_of_preimage(&t, t.k()).unwrap(), t.e());
        assert!(pi_e_of_preimage(&t, &SubgroupSet::trivial())
            .unwrap()
            .is_trivial());
        assert_eq!(
            sigma_preimage(&t, t.e()).unwrap_err(),
            TrifactError::NotSubsetOfK
        );
    }

    #[test]
    fn s3_trivial_brace_levels() {
        let s3 = catalog::symmetric(3).group;
        let t = large_trifact(&SkewBrace::trivial(&s3), &b()).unwrap();
        let ctx = SubstructureContext::new(&t, &b()).unwrap();
        let a3 = ctx.to_group(&SubgroupSet::new([0, 3, 4]));
        let r = ctx.classify(&a3).unwrap();
        assert!(r.discrepancies().is_empty());
        assert_eq!(r.group_label(), SubLabel::Ideal);
        let two = ctx.to_group(&SubgroupSet::new([0, 1]));
        let r = ctx.classify(&two).unwrap();
        assert!(r.discrepancies().is_empty());
        assert_eq!(r.group_label(), SubLabel::LeftIdeal);
        assert_eq!(r.brace_label.label, SubLabel::LeftIdeal);
        let r = ctx.classify(&SubgroupSet::trivial()).unwrap();
        assert_eq!(r.group_label(), SubLabel::Ideal);
    }

    #[test]
    fn subbrace_tuples() {
        let v4 = catalog::klein_four();
        let brace = SkewBrace::trivial(&v4);
        let t = generalised_trifact(&brace, &SubgroupSet::new([0, 1]), &b()).unwrap();
        let whole = subbrace_trifact(&t, t.k(), &b()).unwrap();
        assert_eq!(whole.ambient.len(), t.order());
        let zero = subbrace_trifact(&t, &SubgroupSet::trivial(), &b()).unwrap();
        assert_eq!(zero.tuple.order(), 1);
        // y = 2 in V4
        let l = SubgroupSet::new([t.k_element(0), t.k_element(2)]);
        let sub = subbrace_trifact(&t, &l, &b()).unwrap();
        assert_eq!(sub.tuple.order(), 4);
        let assoc = associated_brace(&sub.tuple, &b()).unwrap();
        assert!(assoc.is_trivial());
        assert!(assoc.same_tables(&brace.restrict(&SubgroupSet::new([0, 2]), &b()).unwrap()));
        let p = sub.tuple.provenance().unwrap();
        assert_eq!(p.kernel, recover_eta(&sub.tuple, &b()).unwrap().kernel);
    }

    #[test]
    fn trifact_subgroup_examples() {
        let brace = SkewBrace::trivial(&catalog::cyclic(3));
        let t = large_trifact(&brace, &b()).unwrap();
        let whole = SubgroupSet::whole(t.group());
        assert!(is_trifact_subgroup(&t, &whole, &b()).unwrap().is_some());
        assert!(is_trifact_subgroup(&t, t.k(), &b()).unwrap().is_none());
        assert!(is_trifact_subgroup(&t, t.e(), &b()).unwrap().is_none());
    }

    #[test]
    fn bijection_counts() {
        for (g, expected) in [
            (catalog::cyclic(2), 2),
            (catalog::klein_four(), 5),
            (catalog::symmetric(3).group, 6),
        ] {
            let t = large_trifact(&SkewBrace::trivial(&g), &b()).unwrap();
            let bij = subbrace_bijection(&t, &b()).unwrap();
            assert_eq!(bij.pairs.len(), expected);
            assert!(bij.bijective && bij.ideals_match);
        }
    }
}
