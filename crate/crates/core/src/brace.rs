//! Skew left braces: two group structures `+` and `·` on one index set,
//! tied by `a(b + c) = ab - a + ac`.
//!
//! The identity map from the multiplicative to the additive group is never
//! stored: both tables live on the same indices, so it is the identity on
//! indices wherever it is needed.

use bitflags::bitflags;
use thiserror::Error;

use crate::config::Bounds;
use crate::group::{Elem, FiniteGroup, GroupError};
use crate::hom::{quotient_group, GroupMap};
use crate::search::automorphisms;
use crate::subgroup::{is_normal, is_subgroup, SubgroupSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BraceError {
    #[error("additive table is not a group: {0}")]
    AddNotGroup(GroupError),
    #[error("multiplicative table is not a group: {0}")]
    MulNotGroup(GroupError),
    #[error("tables have different orders ({add} and {mul})")]
    OrderMismatch { add: usize, mul: usize },
    #[error("multiplicative identity is {0}, not the additive identity 0")]
    IdentityMismatch(Elem),
    #[error("brace law fails: {a}({b} + {c}) != {a}{b} - {a} + {a}{c}")]
    BraceLawViolated { a: Elem, b: Elem, c: Elem },
    #[error("map has {len} images, expected {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("image {0} is out of range")]
    ImageOutOfRange(Elem),
    #[error("f({0} + {1}) != f({0}) + f({1})")]
    NotAdditiveHom(Elem, Elem),
    #[error("f({0}{1}) != f({0})f({1})")]
    NotMultiplicativeHom(Elem, Elem),
    #[error("subset is not an ideal")]
    NotAnIdeal,
    #[error("subset is not a subbrace")]
    NotASubbrace,
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl BraceError {
    pub fn is_bound(&self) -> bool {
        match self {
            BraceError::AddNotGroup(e) | BraceError::MulNotGroup(e) | BraceError::Group(e) => {
                e.is_bound()
            }
            _ => false,
        }
    }
}

/// A certified skew left brace on `0..order`.
#[derive(Clone, Debug)]
pub struct SkewBrace {
    add: FiniteGroup,
    mul: FiniteGroup,
}

impl SkewBrace {
    /// Certifies two groups on the same index set as a brace.
    pub fn from_groups(add: FiniteGroup, mul: FiniteGroup) -> Result<Self, BraceError> {
        if add.order() != mul.order() {
            return Err(BraceError::OrderMismatch {
                add: add.order(),
                mul: mul.order(),
            });
        }
        let n = add.order();
        for a in 0..n {
            let neg_a = add.inv(a);
            for b in 0..n {
                let ab_neg_a = add.mul(mul.mul(a, b), neg_a);
                for c in 0..n {
                    let lhs = mul.mul(a, add.mul(b, c));
                    let rhs = add.mul(ab_neg_a, mul.mul(a, c));
                    if lhs != rhs {
                        return Err(BraceError::BraceLawViolated { a, b, c });
                    }
                }
            }
        }
        Ok(SkewBrace { add, mul })
    }

    /// The brace whose two operations coincide.
    pub fn trivial(group: &FiniteGroup) -> Self {
        SkewBrace {
            add: group.clone(),
            mul: group.clone(),
        }
    }

    /// The brace with `a · b = b + a`.
    pub fn opposite(group: &FiniteGroup, bounds: &Bounds) -> Result<Self, BraceError> {
        let mul = FiniteGroup::from_fn(group.order(), bounds, |a, b| group.mul(b, a))
            .map_err(BraceError::MulNotGroup)?;
        SkewBrace::from_groups(group.clone(), mul)
    }

    pub fn order(&self) -> usize {
        self.add.order()
    }

    /// The additive group `K = (B, +)`.
    pub fn add_group(&self) -> &FiniteGroup {
        &self.add
    }

    /// The multiplicative group `C = (B, ·)`.
    pub fn mul_group(&self) -> &FiniteGroup {
        &self.mul
    }

    #[inline]
    pub fn sum(&self, a: Elem, b: Elem) -> Elem {
        self.add.mul(a, b)
    }

    #[inline]
    pub fn prod(&self, a: Elem, b: Elem) -> Elem {
        self.mul.mul(a, b)
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        self.add.inv(a)
    }

    /// `λ_a(b) = -a + ab`.
    #[inline]
    pub fn lambda(&self, a: Elem, b: Elem) -> Elem {
        self.sum(self.neg(a), self.prod(a, b))
    }

    pub fn is_trivial(&self) -> bool {
        self.add.same_table(&self.mul)
    }

    pub fn same_tables(&self, other: &SkewBrace) -> bool {
        self.add.same_table(&other.add) && self.mul.same_table(&other.mul)
    }

    /// The sub-brace on `L`, re-indexed by position in the sorted list.
    pub fn restrict(&self, l: &SubgroupSet, bounds: &Bounds) -> Result<SkewBrace, BraceError> {
        let class = classify_substructure(self, l);
        if !class
            .flags
            .contains(SubFlags::ADD_SUBGROUP | SubFlags::MUL_SUBGROUP)
        {
            return Err(BraceError::NotASubbrace);
        }
        let pos = |x: Elem| l.position(x).expect("closed subset");
        let m = l.members();
        let add = FiniteGroup::from_fn(m.len(), bounds, |a, b| pos(self.sum(m[a], m[b])))?;
        let mul = FiniteGroup::from_fn(m.len(), bounds, |a, b| pos(self.prod(m[a], m[b])))?;
        SkewBrace::from_groups(add, mul)
    }
}

/// Certifies two raw tables as a brace.
pub fn validate_brace(
    add_rows: &[Vec<usize>],
    mul_rows: &[Vec<usize>],
    bounds: &Bounds,
) -> Result<SkewBrace, BraceError> {
    if add_rows.len() != mul_rows.len() {
        return Err(BraceError::OrderMismatch {
            add: add_rows.len(),
            mul: mul_rows.len(),
        });
    }
    let add = FiniteGroup::from_rows(add_rows, bounds).map_err(BraceError::AddNotGroup)?;
    let mul = match FiniteGroup::from_rows(mul_rows, bounds) {
        Ok(g) => g,
        Err(GroupError::NoIdentity) => {
            // a group with another identity element is a labelling problem
            let n = mul_rows.len();
            let other =
                (1..n).find(|&e| (0..n).all(|x| mul_rows[e][x] == x && mul_rows[x][e] == x));
            return Err(match other {
                Some(e) => BraceError::IdentityMismatch(e),
                None => BraceError::MulNotGroup(GroupError::NoIdentity),
            });
        }
        Err(e) => return Err(BraceError::MulNotGroup(e)),
    };
    SkewBrace::from_groups(add, mul)
}

/// The permutations `λ_a` for every `a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaMap {
    perms: Vec<Vec<Elem>>,
}

/// The image of `λ` as a permutation group, with `λ` as a homomorphism
/// onto it.
#[derive(Clone, Debug)]
pub struct LambdaImage {
    /// Distinct permutations in order of first appearance; index 0 is the identity.
    pub perms: Vec<Vec<Elem>>,
    pub group: FiniteGroup,
    /// `λ` as a map from the multiplicative group onto `group`.
    pub hom: GroupMap,
}

impl LambdaMap {
    pub fn perm(&self, a: Elem) -> &[Elem] {
        &self.perms[a]
    }

    pub fn perms(&self) -> &[Vec<Elem>] {
        &self.perms
    }

    pub fn is_trivial(&self) -> bool {
        self.perms
            .iter()
            .all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
    }

    pub fn image(&self, bounds: &Bounds) -> LambdaImage {
        let mut distinct: Vec<Vec<Elem>> = Vec::new();
        let mut index_of = std::collections::HashMap::new();
        let mut images = Vec::with_capacity(self.perms.len());
        for p in &self.perms {
            let next = distinct.len();
            let i = *index_of.entry(p.clone()).or_insert_with(|| {
                distinct.push(p.clone());
                next
            });
            images.push(i);
        }
        let compose = |p: &[Elem], q: &[Elem]| -> Vec<Elem> { q.iter().map(|&x| p[x]).collect() };
        let m = distinct.len();
        let group = FiniteGroup::from_fn(m, bounds, |a, b| {
            index_of[&compose(&distinct[a], &distinct[b])]
        })
        .expect("image of a homomorphism is a group");
        let hom = GroupMap::trusted(images, m);
        LambdaImage {
            perms: distinct,
            group,
            hom,
        }
    }
}

/// Computes `λ` and certifies that each `λ_a` is an additive automorphism
/// and that `λ_{ab} = λ_a ∘ λ_b`.
pub fn lambda_map(brace: &SkewBrace) -> LambdaMap {
    let n = brace.order();
    let perms: Vec<Vec<Elem>> = (0..n)
        .map(|a| (0..n).map(|b| brace.lambda(a, b)).collect())
        .collect();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                assert_eq!(
                    perms[a][brace.sum(b, c)],
                    brace.sum(perms[a][b], perms[a][c]),
                    "λ_{a} is not additive"
                );
            }
            let ab = brace.prod(a, b);
            assert!(
                (0..n).all(|c| perms[ab][c] == perms[a][perms[b][c]]),
                "λ is not multiplicative at ({a}, {b})"
            );
            assert_eq!(brace.prod(a, b), brace.sum(a, perms[a][b]));
        }
    }
    LambdaMap { perms }
}

/// `{a : λ_a = id}`, a normal subgroup of the multiplicative group.
pub fn ker_lambda(brace: &SkewBrace) -> SubgroupSet {
    let lam = lambda_map(brace);
    let ker: SubgroupSet = (0..brace.order())
        .filter(|&a| lam.perm(a).iter().enumerate().all(|(i, &x)| i == x))
        .collect();
    debug_assert!(is_normal(brace.mul_group(), &ker));
    ker
}

/// A map between braces preserving both operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraceMap {
    images: Vec<Elem>,
    target_order: usize,
}

impl BraceMap {
    pub fn identity(brace: &SkewBrace) -> Self {
        BraceMap {
            images: (0..brace.order()).collect(),
            target_order: brace.order(),
        }
    }

    #[inline]
    pub fn apply(&self, x: Elem) -> Elem {
        self.images[x]
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn image_of(&self, s: &SubgroupSet) -> SubgroupSet {
        s.iter().map(|x| self.images[x]).collect()
    }

    pub fn kernel(&self) -> SubgroupSet {
        self.images
            .iter()
            .enumerate()
            .filter(|(_, &y)| y == 0)
            .map(|(x, _)| x)
            .collect()
    }

    pub fn is_injective(&self) -> bool {
        self.image_of(&SubgroupSet::new(0..self.images.len())).len() == self.images.len()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_of(&SubgroupSet::new(0..self.images.len())).len() == self.target_order
    }
}

/// Certifies `images` as a brace homomorphism `b1 -> b2`.
pub fn is_brace_hom(
    images: &[Elem],
    b1: &SkewBrace,
    b2: &SkewBrace,
) -> Result<BraceMap, BraceError> {
    if images.len() != b1.order() {
        return Err(BraceError::MapLength {
            len: images.len(),
            expected: b1.order(),
        });
    }
    if let Some(&y) = images.iter().find(|&&y| y >= b2.order()) {
        return Err(BraceError::ImageOutOfRange(y));
    }
    for a in 0..b1.order() {
        for b in 0..b1.order() {
            if images[b1.sum(a, b)] != b2.sum(images[a], images[b]) {
                return Err(BraceError::NotAdditiveHom(a, b));
            }
        }
    }
    for a in 0..b1.order() {
        for b in 0..b1.order() {
            if images[b1.prod(a, b)] != b2.prod(images[a], images[b]) {
                return Err(BraceError::NotMultiplicativeHom(a, b));
            }
        }
    }
    Ok(BraceMap {
        images: images.to_vec(),
        target_order: b2.order(),
    })
}

/// Every automorphism of the brace: additive automorphisms that also
/// preserve the multiplication.
pub fn brace_automorphisms(
    brace: &SkewBrace,
    bounds: &Bounds,
) -> Result<Vec<BraceMap>, BraceError> {
    let n = brace.order();
    let kernel = ker_lambda(brace);
    let mut out = Vec::new();
    for f in automorphisms(brace.add_group(), bounds)? {
        let img = f.images();
        if (0..n).all(|a| (0..n).all(|b| img[brace.prod(a, b)] == brace.prod(img[a], img[b]))) {
            let map = BraceMap {
                images: img.to_vec(),
                target_order: n,
            };
            assert_eq!(
                map.image_of(&kernel),
                kernel,
                "brace automorphism moved ker λ"
            );
            out.push(map);
        }
    }
    Ok(out)
}

bitflags! {
    /// Independent facts about a subset `L` of a brace.
    #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
    pub struct SubFlags: u8 {
        const ADD_SUBGROUP = 1;
        const MUL_SUBGROUP = 1 << 1;
        const LAMBDA_INVARIANT = 1 << 2;
        const ADD_NORMAL = 1 << 3;
        const MUL_NORMAL = 1 << 4;
    }
}

/// Cumulative substructure labels, coarsest first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SubLabel {
    NotSubgroup,
    Subbrace,
    LeftIdeal,
    StrongLeftIdeal,
    Ideal,
}

impl SubLabel {
    pub fn name(self) -> &'static str {
        match self {
            SubLabel::NotSubgroup => "not-subbrace",
            SubLabel::Subbrace => "subbrace",
            SubLabel::LeftIdeal => "left-ideal",
            SubLabel::StrongLeftIdeal => "strong-left-ideal",
            SubLabel::Ideal => "ideal",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubstructureClass {
    pub label: SubLabel,
    pub flags: SubFlags,
}

impl SubstructureClass {
    pub fn is_at_least(&self, label: SubLabel) -> bool {
        self.label >= label
    }
}

/// Finest label of `L`:
/// subbrace = subgroup of both groups; left ideal = additive subgroup with
/// `λ_a(L) = L` for all `a`; strong left ideal = left ideal normal in `+`;
/// ideal = strong left ideal normal in `·`.
pub fn classify_substructure(brace: &SkewBrace, l: &SubgroupSet) -> SubstructureClass {
    let n = brace.order();
    let mut flags = SubFlags::empty();
    if l.check_in(brace.add_group()).is_err() || l.is_empty() {
        return SubstructureClass {
            label: SubLabel::NotSubgroup,
            flags,
        };
    }
    if is_subgroup(brace.add_group(), l) {
        flags |= SubFlags::ADD_SUBGROUP;
        if is_normal(brace.add_group(), l) {
            flags |= SubFlags::ADD_NORMAL;
        }
    }
    if is_subgroup(brace.mul_group(), l) {
        flags |= SubFlags::MUL_SUBGROUP;
        if is_normal(brace.mul_group(), l) {
            flags |= SubFlags::MUL_NORMAL;
        }
    }
    let mask = l.mask(n);
    if (0..n).all(|a| l.iter().all(|x| mask[brace.lambda(a, x)])) {
        flags |= SubFlags::LAMBDA_INVARIANT;
    }
    let label =
        if !flags.contains(SubFlags::ADD_SUBGROUP) || !flags.contains(SubFlags::MUL_SUBGROUP) {
            SubLabel::NotSubgroup
        } else if !flags.contains(SubFlags::LAMBDA_INVARIANT) {
            SubLabel::Subbrace
        } else if !flags.contains(SubFlags::ADD_NORMAL) {
            SubLabel::LeftIdeal
        } else if !flags.contains(SubFlags::MUL_NORMAL) {
            SubLabel::StrongLeftIdeal
        } else {
            SubLabel::Ideal
        };
    SubstructureClass { label, flags }
}

/// `B/I` with its projection.
#[derive(Clone, Debug)]
pub struct BraceQuotient {
    pub brace: SkewBrace,
    pub projection: BraceMap,
    /// Least member of each additive coset.
    pub representatives: Vec<Elem>,
}

/// Quotient of a brace by an ideal, on additive cosets numbered by their
/// least member.
pub fn brace_quotient(
    brace: &SkewBrace,
    ideal: &SubgroupSet,
    bounds: &Bounds,
) -> Result<BraceQuotient, BraceError> {
    if classify_substructure(brace, ideal).label != SubLabel::Ideal {
        return Err(BraceError::NotAnIdeal);
    }
    let q = quotient_group(brace.add_group(), ideal, bounds)?;
    let proj = q.projection.images().to_vec();
    let reps = q.representatives.clone();
    let mul = FiniteGroup::from_fn(reps.len(), bounds, |a, b| {
        proj[brace.prod(reps[a], reps[b])]
    })
    .map_err(BraceError::MulNotGroup)?;
    let quotient = SkewBrace::from_groups(q.group, mul)?;
    let projection = is_brace_hom(&proj, brace, &quotient)?;
    Ok(BraceQuotient {
        brace: quotient,
        projection,
        representatives: reps,
    })
}
