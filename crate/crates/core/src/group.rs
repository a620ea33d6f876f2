//! Finite groups on the index set `0..order` with `0` as identity.
//!
//! A group is either a dense Cayley table or a semidirect product `[K]E`
//! whose elements `(k, e)` are encoded as `k * |E| + e` and multiplied on
//! the fly by `(k1, e1)(k2, e2) = (k1 * act(e1)(k2), e1 * e2)`.

use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::Bounds;

/// Index of a group element.
pub type Elem = usize;

/// Number of random triples sampled when a group is too large for a full
/// associativity check.
const ASSOCIATIVITY_SAMPLES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("a group needs at least one element")]
    Empty,
    #[error("table row {row} has {len} entries, expected {order}")]
    Shape {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("not closed: {a} * {b} = {value} is outside 0..{order}")]
    NotClosed {
        a: Elem,
        b: Elem,
        value: usize,
        order: usize,
    },
    #[error("element 0 is not a two-sided identity")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    NoInverse(Elem),
    #[error("not associative: ({a} * {b}) * {c} != {a} * ({b} * {c})")]
    NonAssociative { a: Elem, b: Elem, c: Elem },
    #[error("index {index} is out of range for a group of order {order}")]
    IndexOutOfRange { index: usize, order: usize },
    #[error("set is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal: conjugating {member} by {by} leaves it")]
    NotNormal { member: Elem, by: Elem },
    #[error("action of actor element {0} is not an automorphism of the base")]
    ActionNotAutomorphism(Elem),
    #[error("action is not a homomorphism at actor elements ({0}, {1})")]
    ActionNotHomomorphism(Elem, Elem),
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(Elem, Elem),
    #[error("map has {len} images, expected {expected}")]
    MapLength { len: usize, expected: usize },
    #[error("{what} search on a group of order {order} exceeds the bound {bound}")]
    SearchBoundExceeded {
        what: &'static str,
        order: usize,
        bound: usize,
    },
    #[error("order {order} exceeds the dense table bound {bound}")]
    TooLargeForTable { order: usize, bound: usize },
}

impl GroupError {
    /// True when a configured size bound, not the input, caused the failure.
    pub fn is_bound(&self) -> bool {
        matches!(
            self,
            GroupError::SearchBoundExceeded { .. } | GroupError::TooLargeForTable { .. }
        )
    }
}

/// The data of a semidirect product `[base]actor`.
#[derive(Clone)]
pub struct SemidirectData {
    base: FiniteGroup,
    actor: FiniteGroup,
    /// `action[e * |base| + k]` is the image of `k` under actor element `e`.
    action: Vec<u32>,
}

impl SemidirectData {
    pub fn base(&self) -> &FiniteGroup {
        &self.base
    }

    pub fn actor(&self) -> &FiniteGroup {
        &self.actor
    }

    #[inline]
    pub fn act(&self, e: Elem, k: Elem) -> Elem {
        self.action[e * self.base.order + k] as usize
    }

    /// The permutation of the base induced by actor element `e`.
    pub fn action_of(&self, e: Elem) -> Vec<Elem> {
        let n = self.base.order;
        self.action[e * n..(e + 1) * n]
            .iter()
            .map(|&x| x as usize)
            .collect()
    }
}

#[derive(Clone)]
pub enum Realization {
    /// Row-major `order x order` table.
    Table(Arc<Vec<u32>>),
    Semidirect(Arc<SemidirectData>),
}

/// A certified finite group.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    realization: Realization,
    inverse: Arc<Vec<u32>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.realization {
            Realization::Table(_) => write!(f, "FiniteGroup(table, order {})", self.order),
            Realization::Semidirect(sd) => write!(
                f,
                "FiniteGroup(semidirect [{}]{}, order {})",
                sd.base.order, sd.actor.order, self.order
            ),
        }
    }
}

impl FiniteGroup {
    /// Certifies a Cayley table given as rows.
    pub fn from_rows(rows: &[Vec<usize>], bounds: &Bounds) -> Result<Self, GroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > bounds.dense_table {
            return Err(GroupError::TooLargeForTable {
                order: n,
                bound: bounds.dense_table,
            });
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GroupError::Shape {
                    row,
                    len: r.len(),
                    order: n,
                });
            }
            for (b, &v) in r.iter().enumerate() {
                if v >= n {
                    return Err(GroupError::NotClosed {
                        a: row,
                        b,
                        value: v,
                        order: n,
                    });
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(n, flat, bounds)
    }

    /// Certifies a table given by a product function on `0..order`.
    pub fn from_fn(
        order: usize,
        bounds: &Bounds,
        mut product: impl FnMut(Elem, Elem) -> Elem,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > bounds.dense_table {
            return Err(GroupError::TooLargeForTable {
                order,
                bound: bounds.dense_table,
            });
        }
        let mut flat = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let v = product(a, b);
                if v >= order {
                    return Err(GroupError::NotClosed {
                        a,
                        b,
                        value: v,
                        order,
                    });
                }
                flat.push(v as u32);
            }
        }
        Self::from_flat(order, flat, bounds)
    }

    fn from_flat(order: usize, flat: Vec<u32>, bounds: &Bounds) -> Result<Self, GroupError> {
        let violations = audit_table(order, &flat, bounds);
        if let Some(first) = violations.into_iter().next() {
            return Err(first);
        }
        let inverse = table_inverses(order, &flat).expect("audited table has inverses");
        Ok(FiniteGroup {
            order,
            realization: Realization::Table(Arc::new(flat)),
            inverse: Arc::new(inverse),
        })
    }

    /// The trivial group.
    pub fn trivial() -> Self {
        FiniteGroup {
            order: 1,
            realization: Realization::Table(Arc::new(vec![0])),
            inverse: Arc::new(vec![0]),
        }
    }

    /// Builds `[base]actor` from a flat action array; certification of the
    /// action is done by [`crate::hom::semidirect_product`].
    pub(crate) fn semidirect_unchecked(
        base: FiniteGroup,
        actor: FiniteGroup,
        action: Vec<u32>,
    ) -> Self {
        let (n, m) = (base.order, actor.order);
        let data = SemidirectData {
            base,
            actor,
            action,
        };
        let mut inverse = vec![0u32; n * m];
        for k in 0..n {
            for e in 0..m {
                let ei = data.actor.inv(e);
                let ki = data.act(ei, data.base.inv(k));
                inverse[k * m + e] = (ki * m + ei) as u32;
            }
        }
        FiniteGroup {
            order: n * m,
            realization: Realization::Semidirect(Arc::new(data)),
            inverse: Arc::new(inverse),
        }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn identity(&self) -> Elem {
        0
    }

    pub fn realization(&self) -> &Realization {
        &self.realization
    }

    pub fn semidirect(&self) -> Option<&SemidirectData> {
        match &self.realization {
            Realization::Semidirect(sd) => Some(sd),
            Realization::Table(_) => None,
        }
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.realization {
            Realization::Table(t) => t[a * self.order + b] as usize,
            Realization::Semidirect(sd) => {
                let m = sd.actor.order;
                let (k1, e1) = (a / m, a % m);
                let (k2, e2) = (b / m, b % m);
                sd.base.mul(k1, sd.act(e1, k2)) * m + sd.actor.mul(e1, e2)
            }
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a] as usize
    }

    /// `g a g^-1`.
    #[inline]
    pub fn conj(&self, g: Elem, a: Elem) -> Elem {
        self.mul(self.mul(g, a), self.inv(g))
    }

    pub fn pow(&self, a: Elem, mut exp: usize) -> Elem {
        let (mut acc, mut base) = (0, a);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: Elem) -> usize {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn element_orders(&self) -> Vec<usize> {
        self.elements().map(|a| self.element_order(a)).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Dense rows of the multiplication table.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.elements()
            .map(|a| self.elements().map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// True when both groups multiply identically on the same index set.
    pub fn same_table(&self, other: &FiniteGroup) -> bool {
        self.order == other.order
            && self
                .elements()
                .all(|a| self.elements().all(|b| self.mul(a, b) == other.mul(a, b)))
    }

    pub(crate) fn check_index(&self, index: usize) -> Result<(), GroupError> {
        if index < self.order {
            Ok(())
        } else {
            Err(GroupError::IndexOutOfRange {
                index,
                order: self.order,
            })
        }
    }

    /// Re-checks associativity through the realization: full check up to the
    /// bound, otherwise Light's test over a generating set plus seeded sampling.
    pub fn verify_associativity(&self, bounds: &Bounds) -> Result<(), GroupError> {
        let n = self.order;
        if n <= bounds.associativity {
            return full_associativity(n, |a, b| self.mul(a, b));
        }
        if let Realization::Table(_) = self.realization {
            let gens = naive_generators(n, |a, b| self.mul(a, b));
            light_test(n, &gens, |a, b| self.mul(a, b))?;
        }
        sampled_associativity(n, |a, b| self.mul(a, b))
    }
}

/// Lists every violated group axiom of a flat table, one witness each.
pub fn audit_table(order: usize, flat: &[u32], bounds: &Bounds) -> Vec<GroupError> {
    let mut out = Vec::new();
    if order == 0 {
        out.push(GroupError::Empty);
        return out;
    }
    if flat.len() != order * order {
        out.push(GroupError::Shape {
            row: flat.len() / order,
            len: flat.len() % order,
            order,
        });
        return out;
    }
    if let Some(i) = flat.iter().position(|&v| v as usize >= order) {
        out.push(GroupError::NotClosed {
            a: i / order,
            b: i % order,
            value: flat[i] as usize,
            order,
        });
        return out;
    }
    let mul = |a: usize, b: usize| flat[a * order + b] as usize;
    if (0..order).any(|x| mul(0, x) != x || mul(x, 0) != x) {
        out.push(GroupError::NoIdentity);
    }
    if let Err(x) = table_inverses(order, flat) {
        out.push(GroupError::NoInverse(x));
    }
    let assoc = if order <= bounds.associativity {
        full_associativity(order, mul)
    } else {
        let gens = naive_generators(order, mul);
        light_test(order, &gens, mul).and_then(|_| sampled_associativity(order, mul))
    };
    if let Err(e) = assoc {
        out.push(e);
    }
    out
}

fn table_inverses(order: usize, flat: &[u32]) -> Result<Vec<u32>, Elem> {
    let mut inv = vec![0u32; order];
    for a in 0..order {
        let row = &flat[a * order..(a + 1) * order];
        match (0..order).find(|&b| row[b] == 0 && flat[b * order + a] == 0) {
            Some(b) => inv[a] = b as u32,
            None => return Err(a),
        }
    }
    Ok(inv)
}

fn full_associativity(n: usize, mul: impl Fn(Elem, Elem) -> Elem) -> Result<(), GroupError> {
    for a in 0..n {
        for b in 0..n {
            let ab = mul(a, b);
            for c in 0..n {
                if mul(ab, c) != mul(a, mul(b, c)) {
                    return Err(GroupError::NonAssociative { a, b, c });
                }
            }
        }
    }
    Ok(())
}

fn sampled_associativity(n: usize, mul: impl Fn(Elem, Elem) -> Elem) -> Result<(), GroupError> {
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..ASSOCIATIVITY_SAMPLES {
        let (a, b, c) = (
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..n),
        );
        if mul(mul(a, b), c) != mul(a, mul(b, c)) {
            return Err(GroupError::NonAssociative { a, b, c });
        }
    }
    Ok(())
}

/// Light's test: `(x g) y = x (g y)` for all `x, y` and generators `g`.
fn light_test(n: usize, gens: &[Elem], mul: impl Fn(Elem, Elem) -> Elem) -> Result<(), GroupError> {
    for &g in gens {
        for x in 0..n {
            let xg = mul(x, g);
            for y in 0..n {
                if mul(xg, y) != mul(x, mul(g, y)) {
                    return Err(GroupError::NonAssociative { a: x, b: g, c: y });
                }
            }
        }
    }
    Ok(())
}

/// Generators whose right-multiplication closure from `0` reaches everything.
fn naive_generators(n: usize, mul: impl Fn(Elem, Elem) -> Elem) -> Vec<Elem> {
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut reached = vec![0];
    let mut gens: Vec<Elem> = Vec::new();
    for x in 0..n {
        if seen[x] {
            continue;
        }
        gens.push(x);
        // recompute the right-multiplication closure with the new generator
        let mut i = 0;
        let mut frontier = reached.clone();
        while i < frontier.len() {
            let y = frontier[i];
            i += 1;
            for &g in &gens {
                let z = mul(y, g);
                if !seen[z] {
                    seen[z] = true;
                    reached.push(z);
                    frontier.push(z);
                }
            }
        }
    }
    gens
}
