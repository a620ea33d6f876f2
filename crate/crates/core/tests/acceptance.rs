//! Acceptance suite. Runs without the libtest harness so that the
//! PASS/FAIL line of every criterion is always printed.

use std::process::ExitCode;
use std::time::Instant;

use trifact::brace::{classify_substructure, is_brace_hom, ker_lambda, SubLabel};
use trifact::catalog;
use trifact::classify::{
    aut_orbits, identify_kind, iso_classes, omega, partition_by_isomorphism, tuples_isomorphic,
};
use trifact::enumerate::enumerate_braces;
use trifact::morphism::{is_trifact_morphism, lift_brace_hom};
use trifact::quotients::{
    ideal_quotient_tuple, quotient_admissible, quotient_trifact, small_not_preserved_check,
    sql_chain,
};
use trifact::subgroup::{all_subgroups, generated_subgroup, intersection, normal_subgroups};
use trifact::substructure::SubstructureContext;
use trifact::trifact::{
    associated_brace, generalised_trifact, large_trifact, small_trifact, validate_trifact,
    TrifactError, TrifactorisedGroup,
};
use trifact::{Bounds, SkewBrace, SubgroupSet};

type Outcome = Result<String, String>;

struct Entry {
    group: &'static str,
    brace: SkewBrace,
    omega: Vec<SubgroupSet>,
    tuples: Vec<TrifactorisedGroup>,
}

fn corpus(b: &Bounds) -> Vec<Entry> {
    let mut out = Vec::new();
    for (name, g) in catalog::small_groups() {
        for brace in enumerate_braces(&g, b).expect("enumeration within bounds") {
            let omega = omega(&brace, b).expect("Ω").members;
            let tuples = omega
                .iter()
                .map(|n| generalised_trifact(&brace, n, b).expect("tuple"))
                .collect();
            out.push(Entry {
                group: name,
                brace,
                omega,
                tuples,
            });
        }
    }
    out
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn c1_round_trip(corpus: &[Entry], b: &Bounds) -> Outcome {
    let mut checked = 0;
    for (i, e) in corpus.iter().enumerate() {
        for (n, t) in e.omega.iter().zip(&e.tuples) {
            let back = associated_brace(t, b).map_err(|x| x.to_string())?;
            ensure(back.same_tables(&e.brace), || {
                format!(
                    "{} brace {i}, N = {:?}: tables differ",
                    e.group,
                    n.members()
                )
            })?;
            checked += 1;
        }
    }
    Ok(format!("{} braces, {checked} tuples", corpus.len()))
}

fn c2_classification(corpus: &[Entry], b: &Bounds) -> Outcome {
    let mut classes = 0;
    for (i, e) in corpus.iter().enumerate() {
        let orbits = aut_orbits(&e.brace, b)
            .map_err(|x| x.to_string())?
            .orbits
            .len();
        let by_search = partition_by_isomorphism(&e.tuples, b).map_err(|x| x.to_string())?;
        let found = by_search.iter().max().map_or(0, |m| m + 1);
        ensure(found == orbits, || {
            format!("{} brace {i}: {orbits} orbits, {found} classes", e.group)
        })?;
        let c = iso_classes(&e.brace, true, b).map_err(|x| x.to_string())?;
        ensure(c.certified_distinct(), || {
            format!(
                "{} brace {i}: representatives not certified distinct",
                e.group
            )
        })?;
        classes += found;
    }
    Ok(format!("{} braces, {classes} classes", corpus.len()))
}

fn c3_klein_example(b: &Bounds) -> Outcome {
    let brace = SkewBrace::trivial(&catalog::klein_four());
    let c = iso_classes(&brace, true, b).map_err(|x| x.to_string())?;
    ensure(c.orbits.omega.members.len() == 5, || "|Ω| ≠ 5".into())?;
    ensure(c.orbits.orbits.len() == 3, || "orbit count ≠ 3".into())?;
    let mut orders: Vec<usize> = c.classes.iter().map(|k| k.tuple.order()).collect();
    orders.sort_unstable();
    ensure(orders == [4, 8, 16], || format!("class orders {orders:?}"))?;
    ensure(c.certified_distinct(), || {
        "classes not certified distinct".into()
    })?;
    let (nx, ny) = (SubgroupSet::new([0, 1]), SubgroupSet::new([0, 2]));
    let tx = generalised_trifact(&brace, &nx, b).map_err(|x| x.to_string())?;
    let ty = generalised_trifact(&brace, &ny, b).map_err(|x| x.to_string())?;
    ensure(
        tx.provenance().unwrap().kernel != ty.provenance().unwrap().kernel,
        || "kernels coincide".into(),
    )?;
    let outcome = tuples_isomorphic(&tx, &ty, b).map_err(|x| x.to_string())?;
    let map = outcome
        .map()
        .ok_or("no isomorphism between the order-8 tuples")?;
    let iso = is_trifact_morphism(map.images().to_vec(), &tx, &ty, b).map_err(|x| x.to_string())?;
    ensure(iso.is_injective() && iso.is_surjective(), || {
        "found map is not bijective".into()
    })?;
    Ok(format!(
        "|Ω| = 5, orders {orders:?}, explicit order-8 isomorphism"
    ))
}

fn c4_alternating_example(b: &Bounds) -> Outcome {
    let a5 = catalog::alternating(5);
    let b1 = SkewBrace::trivial(&catalog::cyclic(2));
    let b2 = SkewBrace::opposite(&a5.group, b).map_err(|x| x.to_string())?;
    let target = a5
        .index_of(&[1, 0, 3, 2, 4])
        .ok_or("(1,2)(3,4) not in A5")?;
    let f = is_brace_hom(&[0, target], &b1, &b2).map_err(|x| x.to_string())?;
    let (l1, l2) = (
        large_trifact(&b1, b).map_err(|x| x.to_string())?,
        large_trifact(&b2, b).map_err(|x| x.to_string())?,
    );
    let lifted =
        lift_brace_hom(f.images(), &l1, &l2, b).map_err(|x| format!("large lift failed: {x}"))?;
    ensure(lifted.is_injective(), || {
        "large lift is not injective".into()
    })?;
    let (s1, s2) = (
        small_trifact(&b1, b).map_err(|x| x.to_string())?,
        small_trifact(&b2, b).map_err(|x| x.to_string())?,
    );
    ensure(s2.order() == 3600 && s2.e().len() == 60, || {
        format!("|S(B2)| = {}, |E2| = {}", s2.order(), s2.e().len())
    })?;
    ensure(ker_lambda(&b2).is_trivial(), || {
        "ker λ2 is not trivial".into()
    })?;
    match lift_brace_hom(f.images(), &s1, &s2, b) {
        Err(TrifactError::ObstructionWitness(c)) => {
            ensure(ker_lambda(&b1).contains(c) && f.apply(c) != 0, || {
                format!("witness {c} is not an obstruction")
            })?;
            Ok(format!(
                "large lift ok, small lift obstructed at {c}, |S(B2)| = 3600, |E2| = 60"
            ))
        }
        Err(e) => Err(format!("small lift: unexpected error {e}")),
        Ok(_) => Err("small lift unexpectedly succeeded".into()),
    }
}

fn c5_substructures(corpus: &[Entry], b: &Bounds) -> Outcome {
    let mut checked = 0;
    for (i, e) in corpus.iter().enumerate() {
        let subgroups = all_subgroups(e.brace.add_group(), b).map_err(|x| x.to_string())?;
        for t in &e.tuples {
            let ctx = SubstructureContext::new(t, b).map_err(|x| x.to_string())?;
            for l in &subgroups {
                let r = ctx.classify(&ctx.to_group(l)).map_err(|x| x.to_string())?;
                let bad = r.discrepancies();
                ensure(bad.is_empty(), || {
                    format!("{} brace {i}, L = {:?}: {bad:?}", e.group, l.members())
                })?;
                ensure(r.group_label() == r.brace_label.label, || {
                    format!(
                        "{} brace {i}, L = {:?}: group level {:?}, brace level {:?}",
                        e.group,
                        l.members(),
                        r.group_label(),
                        r.brace_label.label
                    )
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} (tuple, L) pairs, zero discrepancies"))
}

fn c6_quotients(corpus: &[Entry], b: &Bounds) -> Outcome {
    let (mut normals, mut ideals) = (0, 0);
    for (i, e) in corpus.iter().enumerate() {
        let brace_ideals: Vec<SubgroupSet> = all_subgroups(e.brace.add_group(), b)
            .map_err(|x| x.to_string())?
            .into_iter()
            .filter(|l| classify_substructure(&e.brace, l).label == SubLabel::Ideal)
            .collect();
        for t in e.tuples.iter().filter(|t| t.order() <= 96) {
            for tn in normal_subgroups(t.group(), b).map_err(|x| x.to_string())? {
                let r = quotient_admissible(t, &tn, b).map_err(|x| x.to_string())?;
                ensure(r.consistent(), || {
                    format!(
                        "{} brace {i}, T = {:?}: conditions {} {} {}",
                        e.group,
                        tn.members(),
                        r.cond1,
                        r.cond2,
                        r.cond3
                    )
                })?;
                normals += 1;
            }
            for ideal in &brace_ideals {
                let q = ideal_quotient_tuple(t, ideal, b).map_err(|x| x.to_string())?;
                ensure(q.tables_match, || {
                    format!(
                        "{} brace {i}, I = {:?}: quotient braces differ",
                        e.group,
                        ideal.members()
                    )
                })?;
                ensure(q.stays_large != Some(false), || {
                    format!(
                        "{} brace {i}, I = {:?}: large quotient not large",
                        e.group,
                        ideal.members()
                    )
                })?;
                ideals += 1;
            }
        }
    }
    Ok(format!(
        "{normals} normal subgroups, {ideals} ideal quotients"
    ))
}

fn c7_dihedral_example(b: &Bounds) -> Outcome {
    let g = catalog::dihedral(6);
    let (x, y) = (2, 1);
    let k = generated_subgroup(&g, &[x]).map_err(|e| e.to_string())?;
    let h =
        generated_subgroup(&g, &[g.mul(x, x), g.mul(g.pow(x, 3), y)]).map_err(|e| e.to_string())?;
    let e = generated_subgroup(&g, &[y]).map_err(|e| e.to_string())?;
    ensure(k.len() == 6 && h.len() == 6 && e.len() == 2, || {
        "factor orders".into()
    })?;
    let t = validate_trifact(g.clone(), k, h, e, b).map_err(|e| e.to_string())?;
    ensure(t.centralizer_e_of_k().is_trivial(), || {
        "Cent_E(K) ≠ 1".into()
    })?;
    ensure(
        identify_kind(&t, b).map_err(|e| e.to_string())?.small,
        || "tuple is not small".into(),
    )?;
    let tn = generated_subgroup(&g, &[g.mul(x, x)]).map_err(|e| e.to_string())?;
    let r = quotient_admissible(&t, &tn, b).map_err(|e| e.to_string())?;
    ensure(r.cond1 && r.consistent(), || {
        "⟨x²⟩ is not admissible".into()
    })?;
    let q = quotient_trifact(&t, &tn, b).map_err(|e| e.to_string())?;
    ensure(q.tuple.order() == 4, || {
        format!("quotient order {}", q.tuple.order())
    })?;
    ensure(q.tuple.group().is_abelian(), || {
        "quotient is not abelian".into()
    })?;
    let c = small_not_preserved_check(&t, &tn, b).map_err(|e| e.to_string())?;
    ensure(!c.holds && c.centralizer_order == 2, || {
        format!("|Cent_Ē(K̄)| = {}", c.centralizer_order)
    })?;
    Ok("small, admissible, order 4, abelian, |Cent_Ē(K̄)| = 2".into())
}

fn c8_sql_chain(corpus: &[Entry], b: &Bounds) -> Outcome {
    let mut chains = 0;
    for (i, e) in corpus.iter().enumerate() {
        for n in &e.omega {
            let c = sql_chain(&e.brace, n, b)
                .map_err(|x| format!("{} brace {i}, N = {:?}: {x}", e.group, n.members()))?;
            for (name, step) in [("L -> G_N", &c.from_large), ("G_N -> S", &c.to_small)] {
                ensure(step.morphism.is_surjective() && step.kernel_in_e, || {
                    format!(
                        "{} brace {i}, N = {:?}: {name} kernel {:?} not in E",
                        e.group,
                        n.members(),
                        step.kernel.members()
                    )
                })?;
            }
            chains += 1;
        }
    }
    Ok(format!("{chains} chains"))
}

fn sanity(corpus: &[Entry], b: &Bounds) {
    let total: usize = corpus.len();
    assert_eq!(total, 334, "corpus size");
    for e in corpus.iter().take(3) {
        let large = large_trifact(&e.brace, b).unwrap();
        assert!(intersection(large.k(), large.h()).is_trivial());
    }
}

fn main() -> ExitCode {
    let b = Bounds::default();
    let start = Instant::now();
    let corpus = corpus(&b);
    sanity(&corpus, &b);
    println!(
        "corpus: {} braces on 13 groups of order at most 8 ({:.1?})",
        corpus.len(),
        start.elapsed()
    );
    let criteria: [(&str, &dyn Fn() -> Outcome); 8] = [
        ("round-trip object equivalence", &|| {
            c1_round_trip(&corpus, &b)
        }),
        ("orbits equal isomorphism classes", &|| {
            c2_classification(&corpus, &b)
        }),
        ("Klein four example", &|| c3_klein_example(&b)),
        ("C2 to A5 lifting example", &|| c4_alternating_example(&b)),
        ("substructure equivalences", &|| {
            c5_substructures(&corpus, &b)
        }),
        ("quotient conditions", &|| c6_quotients(&corpus, &b)),
        ("D12 quotient example", &|| c7_dihedral_example(&b)),
        ("large to generalised to small chain", &|| {
            c8_sql_chain(&corpus, &b)
        }),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t0 = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(run))
            .unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(detail) => println!(
                "criterion {}: PASS  {name}: {detail} ({:.1?})",
                i + 1,
                t0.elapsed()
            ),
            Err(why) => {
                failed += 1;
                println!(
                    "criterion {}: FAIL  {name}: {why} ({:.1?})",
                    i + 1,
                    t0.elapsed()
                );
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
