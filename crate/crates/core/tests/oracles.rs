//! Cross-checks against the brute-force oracles in `common`. Every value
//! frozen here was first computed by subset or permutation exhaustion, then
//! compared with the library's answer.

mod common;

use common::*;
use deckrank_core::canon::{automorphism_count, canonical_form};
use deckrank_core::certify::{build_k_matrix, deck_sequence};
use deckrank_core::covers::{self, GraphSequence};
use deckrank_core::enumerate::{enumerate_classes, psi, ClassSpec, Predicate};
use deckrank_core::graph::{Graph, Kind};
use deckrank_core::recon::{census, partition_by_deck};
use num_bigint::BigUint;
use std::collections::BTreeSet;

fn all_spec(kind: Kind, n: usize) -> ClassSpec {
    ClassSpec::new(kind, n, Predicate::All)
}

fn every_labeled(kind: Kind, n: usize) -> Vec<Graph> {
    let slots = kind.slot_count(n);
    (0..1u128 << slots)
        .map(|bits| Graph::from_edge_bits(kind, n, bits).unwrap())
        .collect()
}

#[test]
fn canonical_form_minimizes_over_all_orderings() {
    for n in 0..=5 {
        for g in every_labeled(Kind::Undirected, n) {
            assert_eq!(labeled_string(&canonical_form(&g)), canon_string(&g));
        }
    }
    for n in 0..=3 {
        for g in every_labeled(Kind::Directed, n) {
            assert_eq!(labeled_string(&canonical_form(&g)), canon_string(&g));
        }
    }
}

#[test]
fn automorphism_counts_match_permutation_check() {
    assert_eq!(aut_count(&k3()), 6);
    assert_eq!(aut_count(&p3()), 2);
    assert_eq!(aut_count(&c4()), 8);
    for (kind, max_n) in [(Kind::Undirected, 5), (Kind::Directed, 3)] {
        for n in 0..=max_n {
            for g in enumerate_classes(&all_spec(kind, n), false).unwrap() {
                assert_eq!(automorphism_count(&g), aut_count(&g), "{g:?}");
            }
        }
    }
}

#[test]
fn class_counts_match_exhaustive_grouping() {
    let psi_u = [1usize, 1, 2, 4, 11, 34];
    for (n, &expect) in psi_u.iter().enumerate() {
        let reps = enumerate_classes(&all_spec(Kind::Undirected, n), false).unwrap();
        let oracle = enumerate(Kind::Undirected, n);
        assert_eq!(oracle.len(), expect);
        assert_eq!(reps.len(), expect);
        let ours: BTreeSet<String> = reps.iter().map(canon_string).collect();
        let theirs: BTreeSet<String> = oracle.iter().map(canon_string).collect();
        assert_eq!(ours, theirs);
    }
    let psi_d = [1usize, 1, 3, 16];
    for (n, &expect) in psi_d.iter().enumerate() {
        let reps = enumerate_classes(&all_spec(Kind::Directed, n), false).unwrap();
        let oracle = enumerate(Kind::Directed, n);
        assert_eq!(oracle.len(), expect);
        assert_eq!(reps.len(), expect);
        let ours: BTreeSet<String> = reps.iter().map(canon_string).collect();
        let theirs: BTreeSet<String> = oracle.iter().map(canon_string).collect();
        assert_eq!(ours, theirs);
    }
}

/// Burnside-free completeness check for the sizes too big to regroup from
/// scratch: representatives must be pairwise non-isomorphic and their orbit
/// sizes n!/|Aut| must sum to the number of labeled graphs.
#[test]
fn labeled_count_identity_validates_larger_enumerations() {
    for (kind, n, classes) in [(Kind::Undirected, 6, 156), (Kind::Directed, 4, 218)] {
        let reps = enumerate_classes(&all_spec(kind, n), false).unwrap();
        assert_eq!(reps.len(), classes);
        let strings: BTreeSet<String> = reps.iter().map(canon_string).collect();
        assert_eq!(strings.len(), classes, "two representatives are isomorphic");
        let factorial: u64 = (1..=n as u64).product();
        let labeled: u64 = reps.iter().map(|g| factorial / aut_count(g)).sum();
        assert_eq!(labeled, 1 << kind.slot_count(n));
        assert_eq!(psi(&all_spec(kind, n), false).unwrap(), classes);
    }
}

#[test]
fn vertex_deleted_cards_match_direct_construction() {
    let mut reps = enumerate_classes(&all_spec(Kind::Undirected, 4), false).unwrap();
    reps.extend(enumerate_classes(&all_spec(Kind::Directed, 3), false).unwrap());
    for g in &reps {
        for v in 0..g.n() {
            assert_eq!(
                canon_string(&g.vertex_deleted(v)),
                canon_string(&vertex_deleted(g, v))
            );
        }
    }
}

#[test]
fn digraph_census_on_three_vertices_by_hand() {
    let reps = enumerate(Kind::Directed, 3);
    assert_eq!(reps.len(), 16);
    let mut by_deck: std::collections::BTreeMap<Vec<String>, usize> = Default::default();
    for g in &reps {
        *by_deck.entry(deck_strings(g)).or_insert(0) += 1;
    }
    assert_eq!(by_deck.len(), 10);
    let mut sizes: Vec<usize> = by_deck.values().copied().collect();
    sizes.sort();
    assert_eq!(sizes, [1, 1, 1, 1, 1, 1, 2, 2, 3, 3]);

    let c = census(&all_spec(Kind::Directed, 3), false).unwrap();
    assert_eq!((c.psi, c.d, c.alpha), (16, 10, 6));

    let partition =
        partition_by_deck(&enumerate_classes(&all_spec(Kind::Directed, 3), false).unwrap())
            .unwrap();
    let mut ours: Vec<usize> = partition.classes.iter().map(|c| c.members.len()).collect();
    ours.sort();
    assert_eq!(ours, sizes);
}

#[test]
fn undirected_decks_determine_the_graph_up_to_six_vertices() {
    for n in 3..=6 {
        let reps = enumerate_classes(&all_spec(Kind::Undirected, n), false).unwrap();
        let decks: BTreeSet<Vec<String>> = reps.iter().map(deck_strings).collect();
        assert_eq!(decks.len(), reps.len(), "deck collision at n = {n}");
        let c = census(&all_spec(Kind::Undirected, n), false).unwrap();
        assert_eq!((c.psi, c.d, c.alpha), (reps.len(), reps.len(), 0));
    }
}

#[test]
fn subgraph_counts_match_subset_enumeration() {
    assert_eq!(subgraph_count(&k2(), &k3()), 3);
    assert_eq!(subgraph_count(&p3(), &k3()), 3);
    assert_eq!(subgraph_count(&p3(), &c4()), 4);

    let mut fs = Vec::new();
    for n in 1..=3 {
        fs.extend(enumerate_classes(&all_spec(Kind::Undirected, n), false).unwrap());
    }
    let mut hosts = Vec::new();
    for n in 1..=4 {
        hosts.extend(enumerate_classes(&all_spec(Kind::Undirected, n), false).unwrap());
    }
    for n in 1..=2 {
        fs.extend(enumerate_classes(&all_spec(Kind::Directed, n), false).unwrap());
    }
    hosts.extend(enumerate_classes(&all_spec(Kind::Directed, 3), false).unwrap());

    for f in &fs {
        for host in hosts.iter().filter(|h| h.kind() == f.kind()) {
            assert_eq!(
                covers::subgraph_count(f, host).unwrap(),
                BigUint::from(subgraph_count(f, host)),
                "s({}, {})",
                labeled_string(f),
                labeled_string(host)
            );
        }
    }
}

#[test]
fn embedded_copies_match_subset_enumeration() {
    let digon = dir(2, &[(0, 1), (1, 0)]);
    let arc = dir(2, &[(0, 1)]);
    let pairs = [
        (k2(), p3()),
        (k2(), k3()),
        (p3(), c4()),
        (p3(), und(4, &[(0, 1), (1, 2), (2, 3)])),
        (arc, digon),
    ];
    for (f, host) in &pairs {
        let ours: BTreeSet<(u16, u128)> = covers::embedded_subgraphs(f, host)
            .unwrap()
            .into_iter()
            .map(|e| (e.vmask, e.emask))
            .collect();
        let oracle: BTreeSet<(u16, u128)> = copies(f, host).into_iter().collect();
        assert_eq!(ours, oracle);
    }
}

#[test]
fn cover_counts_match_tuple_enumeration() {
    // frozen examples first
    let freeze = [
        (vec![p3(), p3()], c4(), 4u64),
        (vec![k2(), k2()], p3(), 2),
        (vec![p3(), p3()], k3(), 6),
        (vec![k2(), k2(), k2()], k3(), 6),
        (vec![k2(), k2(), k2()], p3(), 6),
    ];
    for (items, host, expect) in freeze {
        let seq = GraphSequence::new(items.clone()).unwrap();
        assert_eq!(covers::cover_count(&seq, &host).unwrap(), BigUint::from(expect));
        assert_eq!(cover_count(&items, &host, false), expect);
    }
    let seq = GraphSequence::new(vec![p3(), p3()]).unwrap();
    assert_eq!(
        covers::nonoverlapping_cover_count(&seq, &k3()).unwrap(),
        BigUint::from(0u32)
    );
    assert_eq!(cover_count(&[p3(), p3()], &k3(), true), 0);

    // grid: pairs over the small undirected pool against every host on <= 4
    // vertices, both plain and non-overlapping
    let pool = [k1(), k2(), p3(), k3()];
    let mut hosts = Vec::new();
    for n in 1..=4 {
        hosts.extend(enumerate_classes(&all_spec(Kind::Undirected, n), false).unwrap());
    }
    for a in 0..pool.len() {
        for b in a..pool.len() {
            let items = vec![pool[a], pool[b]];
            let seq = GraphSequence::new(items.clone()).unwrap();
            for host in &hosts {
                let plain = cover_count(&items, host, false);
                let nonov = cover_count(&items, host, true);
                assert_eq!(
                    covers::cover_count(&seq, host).unwrap(),
                    BigUint::from(plain)
                );
                assert_eq!(
                    covers::nonoverlapping_cover_count(&seq, host).unwrap(),
                    BigUint::from(nonov)
                );
                // length two with proper-subgraph items: equal vertex masks
                // would have to span the host, so the counts agree
                if pool[a].n() < host.n() && pool[b].n() < host.n() {
                    assert_eq!(plain, nonov);
                }
            }
        }
    }

    // a taste of length three, including a digraph host
    let digon = dir(2, &[(0, 1), (1, 0)]);
    let arc = dir(2, &[(0, 1)]);
    let cycle3 = dir(3, &[(0, 1), (1, 2), (2, 0)]);
    let items = vec![arc, arc, digon];
    let seq = GraphSequence::new(items.clone()).unwrap();
    for host in enumerate_classes(&all_spec(Kind::Directed, 3), false).unwrap() {
        assert_eq!(
            covers::cover_count(&seq, &host).unwrap(),
            BigUint::from(cover_count(&items, &host, false))
        );
    }
    let items = vec![arc, arc, arc];
    let seq = GraphSequence::new(items.clone()).unwrap();
    assert_eq!(
        covers::cover_count(&seq, &cycle3).unwrap(),
        BigUint::from(cover_count(&items, &cycle3, false))
    );
}

/// kocay_sum restricts the product expansion to classes on v(g) vertices;
/// the remainder is the terms over smaller classes, so
/// kocay_sum = prod_i s(F_i, g) - sum over smaller X of c(F, X) s(X, g).
#[test]
fn kocay_sum_is_the_full_size_part_of_the_product() {
    let reps3 = enumerate_classes(&all_spec(Kind::Undirected, 3), false).unwrap();
    let mut smaller = Vec::new();
    for t in 1..3 {
        smaller.extend(enumerate(Kind::Undirected, t));
    }
    let pool = [k1(), k2()];
    for a in 0..pool.len() {
        for b in a..pool.len() {
            let items = vec![pool[a], pool[b]];
            let seq = GraphSequence::new(items.clone()).unwrap();
            for g in &reps3 {
                let product = subgraph_count(&pool[a], g) * subgraph_count(&pool[b], g);
                let tail: u64 = smaller
                    .iter()
                    .map(|x| cover_count(&items, x, false) * subgraph_count(x, g))
                    .sum();
                assert_eq!(
                    covers::kocay_sum(&seq, g, &reps3).unwrap(),
                    BigUint::from(product - tail)
                );
            }
        }
    }
}

#[test]
fn kernel_witness_entries_are_count_differences() {
    let reps = enumerate_classes(&all_spec(Kind::Directed, 3), false).unwrap();
    let cycle = dir(3, &[(0, 1), (1, 2), (2, 0)]);
    let tt = dir(3, &[(0, 1), (0, 2), (1, 2)]);
    let w = covers::kernel_witness(&cycle, &tt, &reps).unwrap();
    for (h, wi) in reps.iter().zip(&w) {
        let diff = subgraph_count(h, &cycle) as i64 - subgraph_count(h, &tt) as i64;
        assert_eq!(wi, &num_bigint::BigInt::from(diff));
    }
}

#[test]
fn k_matrix_entries_are_nonoverlapping_deck_covers() {
    for (kind, n) in [(Kind::Undirected, 3), (Kind::Directed, 3)] {
        let reps = enumerate_classes(&all_spec(kind, n), false).unwrap();
        let partition = partition_by_deck(&reps).unwrap();
        let (k, order) = build_k_matrix(&partition).unwrap();
        let ordered: Vec<Graph> = order
            .iter()
            .map(|&i| partition.classes[i].members[0].to_graph())
            .collect();
        for (i, gi) in ordered.iter().enumerate() {
            let cards: Vec<Graph> = deck_sequence(gi).items().to_vec();
            for (j, gj) in ordered.iter().enumerate() {
                let expect = cover_count(&cards, gj, true);
                assert_eq!(
                    k.get(i, j),
                    &num_bigint::BigInt::from(expect),
                    "K[{i}][{j}] for {kind:?}"
                );
            }
        }
    }
}
