//! Quotients of trifactorised groups by normal subgroups, their relation to
//! brace quotients, and the epimorphisms between tuples of one brace.

use crate::brace::{brace_quotient, is_brace_hom, BraceQuotient, SkewBrace, SubLabel};
use crate::config::Bounds;
use crate::group::Elem;
use crate::hom::quotient_group;
use crate::morphism::{identity_images, is_trifact_morphism, lift_brace_hom, TrifactMorphism};
use crate::subgroup::{image_set, intersection, is_normal, is_subgroup, product_set, SubgroupSet};
use crate::trifact::{
    associated_brace, derivation, generalised_trifact, recover_eta, small_trifact,
    validate_trifact, TrifactError, TrifactorisedGroup,
};

/// The three equivalent conditions for `G/T` to be trifactorised:
/// (1) the quotient tuple is trifactorised, (2) `T = (T∩K)(T∩E) = (T∩H)(T∩E)`,
/// (3) `T = ((T∩K)H ∩ (T∩K)E)(T∩E)`.
#[derive(Clone, Debug)]
pub struct QuotientReport {
    pub tn: SubgroupSet,
    pub cond1: bool,
    pub cond2: bool,
    pub cond3: bool,
    pub quotient: Option<TrifactorisedGroup>,
    /// `G -> G/T` on least coset representatives.
    pub projection: Vec<Elem>,
}

impl QuotientReport {
    pub fn consistent(&self) -> bool {
        self.cond1 == self.cond2
            && self.cond2 == self.cond3
            && self.quotient.is_some() == self.cond1
    }
}

/// Evaluates all three conditions unconditionally.
pub fn quotient_admissible(
    t: &TrifactorisedGroup,
    tn: &SubgroupSet,
    bounds: &Bounds,
) -> Result<QuotientReport, TrifactError> {
    let g = t.group();
    tn.check_in(g)?;
    if !is_subgroup(g, tn) || !is_normal(g, tn) {
        return Err(TrifactError::NotNormal);
    }
    let q = quotient_group(g, tn, bounds)?;
    let proj = q.projection.images().to_vec();
    let quotient = validate_trifact(
        q.group,
        image_set(&proj, t.k()),
        image_set(&proj, t.h()),
        image_set(&proj, t.e()),
        bounds,
    )
    .ok();
    let tk = intersection(tn, t.k());
    let th = intersection(tn, t.h());
    let te = intersection(tn, t.e());
    let cond2 = &product_set(g, &tk, &te) == tn && &product_set(g, &th, &te) == tn;
    let inner = intersection(&product_set(g, &tk, t.h()), &product_set(g, &tk, t.e()));
    let cond3 = &product_set(g, &inner, &te) == tn;
    Ok(QuotientReport {
        tn: tn.clone(),
        cond1: quotient.is_some(),
        cond2,
        cond3,
        quotient,
        projection: proj,
    })
}

/// A quotient tuple with its certified projection.
#[derive(Clone, Debug)]
pub struct QuotientTuple {
    pub tuple: TrifactorisedGroup,
    pub projection: TrifactMorphism,
}

/// `(G/T, KT/T, HT/T, ET/T)` with the projection certified as a morphism,
/// the induced derivation `σ̄(hT) = σ(h)T` checked, and the kernel
/// factorisation `T = ((T∩K)H ∩ (T∩K)E)(T∩E)` asserted.
pub fn quotient_trifact(
    t: &TrifactorisedGroup,
    tn: &SubgroupSet,
    bounds: &Bounds,
) -> Result<QuotientTuple, TrifactError> {
    let report = quotient_admissible(t, tn, bounds)?;
    let Some(tuple) = report.quotient else {
        return Err(TrifactError::NotAdmissible);
    };
    let projection = is_trifact_morphism(report.projection, t, &tuple, bounds)?;
    let sigma = derivation(t);
    let sigma_bar = derivation(&tuple);
    for (h, k) in sigma.pairs() {
        assert_eq!(
            sigma_bar.apply(projection.map.apply(h)),
            projection.map.apply(k)
        );
    }
    let ker = projection.kernel();
    assert_eq!(&ker, tn);
    let g = t.group();
    let kk = intersection(&ker, t.k());
    let inner = intersection(&product_set(g, &kk, t.h()), &product_set(g, &kk, t.e()));
    assert_eq!(product_set(g, &inner, &intersection(&ker, t.e())), ker);
    Ok(QuotientTuple { tuple, projection })
}

/// The brace map `K -> K̄` read through the projection, on brace indices.
fn k_correspondence(t: &TrifactorisedGroup, q: &QuotientTuple) -> Vec<Elem> {
    (0..t.k().len())
        .map(|i| {
            q.tuple
                .brace_index(q.projection.map.apply(t.k_element(i)))
                .expect("image of K is K̄")
        })
        .collect()
}

/// Quotient by the normal trifactorised subgroup attached to an ideal.
#[derive(Clone, Debug)]
pub struct IdealQuotient {
    pub quotient: QuotientTuple,
    pub brace_quotient: BraceQuotient,
    /// `B/I -> ` associated brace of the quotient tuple, on brace indices.
    pub correspondence: Vec<Elem>,
    /// The correspondence is a bijective brace homomorphism.
    pub tables_match: bool,
    /// For a large source tuple: whether `K̄ ∩ H̄ = 1`.
    pub stays_large: Option<bool>,
}

/// Quotient by `T = LH ∩ LE` for the ideal `I` (brace indices) with
/// `L ⊆ K` its copy in `K`.
pub fn ideal_quotient_tuple(
    t: &TrifactorisedGroup,
    ideal: &SubgroupSet,
    bounds: &Bounds,
) -> Result<IdealQuotient, TrifactError> {
    let brace = associated_brace(t, bounds)?;
    ideal.check_in(brace.add_group())?;
    if crate::brace::classify_substructure(&brace, ideal).label != SubLabel::Ideal {
        return Err(TrifactError::NotAnIdeal);
    }
    let g = t.group();
    let l: SubgroupSet = ideal.iter().map(|i| t.k_element(i)).collect();
    let tn = intersection(&product_set(g, &l, t.h()), &product_set(g, &l, t.e()));
    let quotient = quotient_trifact(t, &tn, bounds)?;
    let bq = brace_quotient(&brace, ideal, bounds)?;
    let through_k = k_correspondence(t, &quotient);
    let correspondence: Vec<Elem> = bq.representatives.iter().map(|&r| through_k[r]).collect();
    let qbrace = associated_brace(&quotient.tuple, bounds)?;
    let tables_match = is_brace_hom(&correspondence, &bq.brace, &qbrace)
        .map(|m| m.is_injective() && m.is_surjective())
        .unwrap_or(false);
    let stays_large = intersection(t.k(), t.h())
        .is_trivial()
        .then(|| intersection(quotient.tuple.k(), quotient.tuple.h()).is_trivial());
    Ok(IdealQuotient {
        quotient,
        brace_quotient: bq,
        correspondence,
        tables_match,
        stays_large,
    })
}

/// Whether `Cent_Ē(K̄) = 1` still holds after quotienting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CentralizerCheck {
    pub holds: bool,
    pub centralizer_order: usize,
}

pub fn small_not_preserved_check(
    t: &TrifactorisedGroup,
    tn: &SubgroupSet,
    bounds: &Bounds,
) -> Result<CentralizerCheck, TrifactError> {
    let q = quotient_trifact(t, tn, bounds)?;
    let c = q.tuple.centralizer_e_of_k();
    Ok(CentralizerCheck {
        holds: c.is_trivial(),
        centralizer_order: c.len(),
    })
}

/// Quotient by a normal subgroup inside `E`.
#[derive(Clone, Debug)]
pub struct EQuotient {
    pub quotient: QuotientTuple,
    /// `{c : η(c) ∈ T}` on brace indices of the source tuple.
    pub kernel: SubgroupSet,
    /// `K -> K̄` is a bijective brace homomorphism between the associated braces.
    pub same_brace: bool,
    /// `ker η̄` of the quotient, carried back through the correspondence.
    pub recovered_kernel: SubgroupSet,
}

pub fn quotient_by_e_normal(
    t: &TrifactorisedGroup,
    tn: &SubgroupSet,
    bounds: &Bounds,
) -> Result<EQuotient, TrifactError> {
    tn.check_in(t.group())?;
    if !tn.is_subset(t.e()) {
        return Err(TrifactError::NotContainedInE);
    }
    let eta = recover_eta(t, bounds)?;
    let quotient = quotient_trifact(t, tn, bounds)?;
    let corr = k_correspondence(t, &quotient);
    let qeta = recover_eta(&quotient.tuple, bounds)?;
    let same_brace = is_brace_hom(&corr, &eta.brace, &qeta.brace)
        .map(|m| m.is_injective() && m.is_surjective())
        .unwrap_or(false);
    let kernel: SubgroupSet = (0..eta.brace.order())
        .filter(|&c| tn.contains(eta.images[c]))
        .collect();
    let recovered_kernel: SubgroupSet = (0..eta.brace.order())
        .filter(|&c| qeta.kernel.contains(corr[c]))
        .collect();
    let tuple = quotient
        .tuple
        .clone()
        .with_provenance(qeta.brace, qeta.kernel);
    Ok(EQuotient {
        quotient: QuotientTuple {
            tuple,
            projection: quotient.projection,
        },
        kernel,
        same_brace,
        recovered_kernel,
    })
}

/// An epimorphism between two tuples of one brace.
#[derive(Clone, Debug)]
pub struct ChainStep {
    pub morphism: TrifactMorphism,
    pub kernel: SubgroupSet,
    pub kernel_in_e: bool,
}

/// `k η1(c) ↦ k η2(c)` from `t1` onto `t2`, two tuples whose associated
/// braces coincide. Fails with `KernelsNotNested` when `ker η1 ⊄ ker η2`.
pub fn epimorphism_between(
    t1: &TrifactorisedGroup,
    t2: &TrifactorisedGroup,
    bounds: &Bounds,
) -> Result<ChainStep, TrifactError> {
    let brace = associated_brace(t1, bounds)?;
    let f = match lift_brace_hom(&identity_images(&brace), t1, t2, bounds) {
        Err(TrifactError::ObstructionWitness(_)) => return Err(TrifactError::KernelsNotNested),
        other => other?,
    };
    assert!(f.is_surjective(), "lift of the identity is onto");
    let kernel = f.kernel();
    let kernel_in_e = kernel.is_subset(t1.e());
    Ok(ChainStep {
        morphism: f,
        kernel,
        kernel_in_e,
    })
}

/// Tuples and epimorphism for `N1 ≤ N2` in Ω.
#[derive(Clone, Debug)]
pub struct QuotientChain {
    pub source: TrifactorisedGroup,
    pub target: TrifactorisedGroup,
    pub step: ChainStep,
}

pub fn quotient_chain(
    brace: &SkewBrace,
    n1: &SubgroupSet,
    n2: &SubgroupSet,
    bounds: &Bounds,
) -> Result<QuotientChain, TrifactError> {
    if !n1.is_subset(n2) {
        return Err(TrifactError::KernelsNotNested);
    }
    let source = generalised_trifact(brace, n1, bounds)?;
    let target = generalised_trifact(brace, n2, bounds)?;
    let step = epimorphism_between(&source, &target, bounds)?;
    Ok(QuotientChain {
        source,
        target,
        step,
    })
}

/// `L(B) -> generalised(B, N) -> S(B)`.
#[derive(Clone, Debug)]
pub struct SqlChain {
    pub from_large: ChainStep,
    pub to_small: ChainStep,
}

pub fn sql_chain(
    brace: &SkewBrace,
    n: &SubgroupSet,
    bounds: &Bounds,
) -> Result<SqlChain, TrifactError> {
    let large = generalised_trifact(brace, &SubgroupSet::trivial(), bounds)?;
    let mid = generalised_trifact(brace, n, bounds)?;
    let small = small_trifact(brace, bounds)?;
    Ok(SqlChain {
        from_large: epimorphism_between(&large, &mid, bounds)?,
        to_small: epimorphism_between(&mid, &small, bounds)?,
    })
}
