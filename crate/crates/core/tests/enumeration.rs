use std::collections::BTreeSet;

use trifact::catalog;
use trifact::enumerate::enumerate_braces;
use trifact::Bounds;

/// Every multiplication table on `0..n` with identity 0 that makes a group
/// and satisfies the brace law over `add`, by exhaustive filtering.
fn oracle(add: &[Vec<usize>]) -> BTreeSet<Vec<Vec<usize>>> {
    let n = add.len();
    let neg = |a: usize| (0..n).find(|&x| add[a][x] == 0).unwrap();
    let cells = (n - 1) * (n - 1);
    let mut out = BTreeSet::new();
    let mut digits = vec![0usize; cells];
    'outer: loop {
        let mut t = vec![vec![0; n]; n];
        t[0] = (0..n).collect();
        for (i, row) in t.iter_mut().enumerate() {
            row[0] = i;
        }
        for (c, &d) in digits.iter().enumerate() {
            t[1 + c / (n - 1)][1 + c % (n - 1)] = d;
        }
        let latin = (0..n).all(|i| {
            (0..n).collect::<BTreeSet<_>>() == t[i].iter().copied().collect()
                && (0..n).collect::<BTreeSet<_>>() == (0..n).map(|j| t[j][i]).collect()
        });
        let assoc =
            || (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[t[a][b]][c] == t[a][t[b][c]])));
        let law = || {
            (0..n).all(|a| {
                (0..n)
                    .all(|b| (0..n).all(|c| t[a][add[b][c]] == add[add[t[a][b]][neg(a)]][t[a][c]]))
            })
        };
        if latin && assoc() && law() {
            out.insert(t);
        }
        for d in digits.iter_mut() {
            *d += 1;
            if *d < n {
                continue 'outer;
            }
            *d = 0;
        }
        break;
    }
    out
}

#[test]
fn enumeration_matches_table_filter_up_to_order_four() {
    let b = Bounds::default();
    for g in [
        catalog::cyclic(2),
        catalog::cyclic(3),
        catalog::cyclic(4),
        catalog::klein_four(),
    ] {
        let found: BTreeSet<Vec<Vec<usize>>> = enumerate_braces(&g, &b)
            .unwrap()
            .iter()
            .map(|br| br.mul_group().rows())
            .collect();
        assert_eq!(found, oracle(&g.rows()), "order {}", g.order());
    }
}

#[test]
fn corpus_counts() {
    let b = Bounds::default();
    let counts: Vec<(&str, usize)> = catalog::small_groups()
        .into_iter()
        .map(|(name, g)| (name, enumerate_braces(&g, &b).unwrap().len()))
        .collect();
    // primes admit only the trivial brace
    for name in ["C2", "C3", "C5", "C7"] {
        assert_eq!(counts.iter().find(|c| c.0 == name).unwrap().1, 1);
    }
    let total: usize = counts.iter().map(|c| c.1).sum();
    assert_eq!(total, 334);
}

#[test]
fn every_enumerated_brace_has_the_input_addition() {
    let b = Bounds::default();
    let g = catalog::symmetric(3).group;
    for br in enumerate_braces(&g, &b).unwrap() {
        assert!(br.add_group().same_table(&g));
    }
}

#[test]
fn enumeration_bound_is_reported() {
    let b = Bounds {
        enumeration: 4,
        ..Bounds::default()
    };
    assert!(enumerate_braces(&catalog::cyclic(5), &b).is_err());
}
