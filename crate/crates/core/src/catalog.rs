//! Small named groups used throughout the tests, examples and CLI.

use std::collections::{BTreeSet, HashMap};

use crate::config::Bounds;
use crate::group::{Elem, FiniteGroup};

/// A permutation group together with the permutation behind each index.
///
/// Permutations act on `0..degree` and compose right to left:
/// `(p q)(i) = p(q(i))`. Elements are indexed in lexicographic order of
/// their images, so the identity is index 0.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub group: FiniteGroup,
    pub perms: Vec<Vec<usize>>,
}

impl PermGroup {
    pub fn index_of(&self, perm: &[usize]) -> Option<Elem> {
        self.perms.iter().position(|p| p == perm)
    }
}

pub fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    q.iter().map(|&i| p[i]).collect()
}

/// The group generated by `gens` acting on `0..degree`.
pub fn perm_group(degree: usize, gens: &[Vec<usize>]) -> PermGroup {
    let identity: Vec<usize> = (0..degree).collect();
    let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
    all.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in gens {
            let q = compose(&p, g);
            if all.insert(q.clone()) {
                frontier.push(q);
            }
        }
    }
    let perms: Vec<Vec<usize>> = all.into_iter().collect();
    let index: HashMap<&[usize], usize> = perms
        .iter()
        .enumerate()
        .map(|(i, p)| (p.as_slice(), i))
        .collect();
    let bounds = Bounds {
        dense_table: perms.len().max(1),
        ..Bounds::default()
    };
    let group = FiniteGroup::from_fn(perms.len(), &bounds, |a, b| {
        index[compose(&perms[a], &perms[b]).as_slice()]
    })
    .expect("permutation composition is a group");
    PermGroup { group, perms }
}

fn small_bounds(order: usize) -> Bounds {
    Bounds {
        dense_table: order.max(Bounds::default().dense_table),
        ..Bounds::default()
    }
}

/// `C_n` with `i * j = (i + j) mod n`.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n > 0, "cyclic group of order 0");
    FiniteGroup::from_fn(n, &small_bounds(n), |a, b| (a + b) % n).expect("cyclic group")
}

/// `C_2^k` with bitwise xor.
pub fn elementary_abelian_2(k: u32) -> FiniteGroup {
    let n = 1usize << k;
    FiniteGroup::from_fn(n, &small_bounds(n), |a, b| a ^ b).expect("elementary abelian group")
}

/// `C_2 x C_2` as xor on `0..4`; `1` and `2` are the two generators.
pub fn klein_four() -> FiniteGroup {
    elementary_abelian_2(2)
}

/// `A x B` with `(a, b)` encoded as `a * |B| + b`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> FiniteGroup {
    let m = b.order();
    let n = a.order() * m;
    FiniteGroup::from_fn(n, &small_bounds(n), |x, y| {
        a.mul(x / m, y / m) * m + b.mul(x % m, y % m)
    })
    .expect("direct product of groups")
}

/// Dihedral group of order `2m` as `[C_m]C_2`: `x^i y^j` is `2i + j`,
/// with `y x y^-1 = x^-1`.
pub fn dihedral(m: usize) -> FiniteGroup {
    let n = 2 * m;
    FiniteGroup::from_fn(n, &small_bounds(n), |a, b| {
        let (i1, j1) = (a / 2, a % 2);
        let (i2, j2) = (b / 2, b % 2);
        let i = if j1 == 0 {
            (i1 + i2) % m
        } else {
            (i1 + m - i2) % m
        };
        i * 2 + (j1 ^ j2)
    })
    .expect("dihedral group")
}

/// Quaternion group: index `2u + s` is `(-1)^s u` for `u` in `1, i, j, k`.
pub fn quaternion() -> FiniteGroup {
    // unit products as (sign, unit)
    const UNIT: [[(usize, usize); 4]; 4] = [
        [(0, 0), (0, 1), (0, 2), (0, 3)],
        [(0, 1), (1, 0), (0, 3), (1, 2)],
        [(0, 2), (1, 3), (1, 0), (0, 1)],
        [(0, 3), (0, 2), (1, 1), (1, 0)],
    ];
    FiniteGroup::from_fn(8, &Bounds::default(), |a, b| {
        let (s, u) = UNIT[a / 2][b / 2];
        u * 2 + (s ^ (a % 2) ^ (b % 2))
    })
    .expect("quaternion group")
}

pub fn symmetric(degree: usize) -> PermGroup {
    let mut gens = Vec::new();
    if degree >= 2 {
        let mut t: Vec<usize> = (0..degree).collect();
        t.swap(0, 1);
        gens.push(t);
        gens.push((0..degree).map(|i| (i + 1) % degree).collect());
    }
    perm_group(degree, &gens)
}

/// Alternating group, generated by the 3-cycles `(0 1 i)`.
pub fn alternating(degree: usize) -> PermGroup {
    let gens: Vec<Vec<usize>> = (2..degree)
        .map(|i| {
            let mut p: Vec<usize> = (0..degree).collect();
            p[0] = 1;
            p[1] = i;
            p[i] = 0;
            p
        })
        .collect();
    perm_group(degree, &gens)
}

/// The groups of order at most 8 used as the brace corpus, with names.
pub fn small_groups() -> Vec<(&'static str, FiniteGroup)> {
    vec![
        ("C2", cyclic(2)),
        ("C3", cyclic(3)),
        ("C4", cyclic(4)),
        ("V4", klein_four()),
        ("C5", cyclic(5)),
        ("C6", cyclic(6)),
        ("S3", symmetric(3).group),
        ("C7", cyclic(7)),
        ("C8", cyclic(8)),
        ("C4xC2", direct_product(&cyclic(4), &cyclic(2))),
        ("C2^3", elementary_abelian_2(3)),
        ("D8", dihedral(4)),
        ("Q8", quaternion()),
    ]
}

/// Looks up a catalog group by name (`C<n>`, `V4`, `S<n>`, `A<n>`, `D<2m>`,
/// `Q8`, `C2^<k>`, `C<a>xC<b>`).
pub fn by_name(name: &str) -> Option<FiniteGroup> {
    let parse = |s: &str| s.parse::<usize>().ok().filter(|&n| n > 0);
    if name == "V4" {
        return Some(klein_four());
    }
    if name == "Q8" {
        return Some(quaternion());
    }
    if let Some(k) = name.strip_prefix("C2^") {
        return k
            .parse::<u32>()
            .ok()
            .filter(|&k| k <= 10)
            .map(elementary_abelian_2);
    }
    if let Some((a, b)) = name.split_once('x') {
        let (a, b) = (by_name(a)?, by_name(b)?);
        return (a.order() * b.order() <= 2048).then(|| direct_product(&a, &b));
    }
    let (head, tail) = name.split_at(1.min(name.len()));
    let n = parse(tail)?;
    match head {
        "C" if n <= 2048 => Some(cyclic(n)),
        "S" if n <= 6 => Some(symmetric(n).group),
        "A" if n <= 6 => Some(alternating(n).group),
        "D" if n % 2 == 0 && n <= 2048 => Some(dihedral(n / 2)),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(symmetric(3).group.order(), 6);
        assert_eq!(alternating(5).group.order(), 60);
        assert_eq!(quaternion().order(), 8);
        assert_eq!(dihedral(6).order(), 12);
        assert!(!quaternion().is_abelian());
        assert!(!dihedral(4).is_abelian());
    }

    #[test]
    fn s3_table_matches_permutation_composition() {
        // independent check: recompose every pair of permutations by hand
        let s3 = symmetric(3);
        assert_eq!(s3.perms.len(), 6);
        for a in 0..6 {
            for b in 0..6 {
                let p = &s3.perms[a];
                let q = &s3.perms[b];
                let expected: Vec<usize> = (0..3).map(|i| p[q[i]]).collect();
                assert_eq!(s3.perms[s3.group.mul(a, b)], expected);
            }
        }
    }

    #[test]
    fn quaternion_relations() {
        let q = quaternion();
        let (minus_one, i, j, k) = (1, 2, 4, 6);
        assert_eq!(q.mul(i, i), minus_one);
        assert_eq!(q.mul(j, j), minus_one);
        assert_eq!(q.mul(k, k), minus_one);
        assert_eq!(q.mul(q.mul(i, j), k), minus_one);
        assert_eq!(q.element_orders().iter().filter(|&&o| o == 4).count(), 6);
    }

    #[test]
    fn names_resolve() {
        assert_eq!(by_name("C4xC2").unwrap().order(), 8);
        assert_eq!(by_name("D12").unwrap().order(), 12);
        assert_eq!(by_name("A5").unwrap().order(), 60);
        assert!(by_name("X9").is_none());
        assert!(by_name("").is_none());
    }
}
