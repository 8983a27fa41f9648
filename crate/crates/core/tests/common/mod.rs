//! Brute-force oracles: small, slow, and deliberately ignorant of the
//! library's search strategies. Everything here works by exhausting
//! permutations or subsets directly.

#![allow(dead_code)]

use deckrank_core::graph::{Graph, Kind};

pub fn und(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(Kind::Undirected, n, edges).unwrap()
}

pub fn dir(n: usize, edges: &[(usize, usize)]) -> Graph {
    Graph::from_edges(Kind::Directed, n, edges).unwrap()
}

pub fn k1() -> Graph {
    und(1, &[])
}

pub fn k2() -> Graph {
    und(2, &[(0, 1)])
}

pub fn p3() -> Graph {
    und(3, &[(0, 1), (1, 2)])
}

pub fn k3() -> Graph {
    und(3, &[(0, 1), (1, 2), (0, 2)])
}

pub fn c4() -> Graph {
    und(4, &[(0, 1), (1, 2), (2, 3), (0, 3)])
}

/// All orderings of 0..n.
pub fn orders(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    let shorter = orders(n - 1);
    for tail in shorter {
        for pos in 0..=tail.len() {
            let mut longer = tail.clone();
            longer.insert(pos, n - 1);
            out.push(longer);
        }
    }
    out
}

/// Minimal row-major adjacency bit string over every vertex ordering,
/// prefixed with the vertex count so strings of different sizes never
/// collide.
pub fn canon_string(g: &Graph) -> String {
    let n = g.n();
    let mut best: Option<String> = None;
    for order in orders(n) {
        let mut s = String::with_capacity(n * n + 4);
        for &i in &order {
            for &j in &order {
                s.push(if g.has_arc(i, j) { '1' } else { '0' });
            }
        }
        if best.as_ref().map_or(true, |b| s < *b) {
            best = Some(s);
        }
    }
    format!("{n}:{}", best.unwrap_or_default())
}

/// Row-major bit string in the graph's own labeling, same format as
/// `canon_string` minus the minimization.
pub fn labeled_string(g: &Graph) -> String {
    let n = g.n();
    let mut s = String::with_capacity(n * n + 4);
    for i in 0..n {
        for j in 0..n {
            s.push(if g.has_arc(i, j) { '1' } else { '0' });
        }
    }
    format!("{n}:{s}")
}

pub fn iso(g: &Graph, h: &Graph) -> bool {
    g.kind() == h.kind() && canon_string(g) == canon_string(h)
}

/// Automorphisms by direct permutation check.
pub fn aut_count(g: &Graph) -> u64 {
    let n = g.n();
    orders(n)
        .into_iter()
        .filter(|p| {
            (0..n).all(|i| (0..n).all(|j| g.has_arc(i, j) == g.has_arc(p[i], p[j])))
        })
        .count() as u64
}

pub fn vertex_deleted(g: &Graph, v: usize) -> Graph {
    let keep: Vec<usize> = (0..g.n()).filter(|&u| u != v).collect();
    let mut edges = Vec::new();
    for (a, &i) in keep.iter().enumerate() {
        for (b, &j) in keep.iter().enumerate() {
            if g.kind() == Kind::Undirected && a >= b {
                continue;
            }
            if a != b && g.has_arc(i, j) {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(g.kind(), g.n() - 1, &edges).unwrap()
}

pub fn deck_strings(g: &Graph) -> Vec<String> {
    let mut cards: Vec<String> = (0..g.n())
        .map(|v| canon_string(&vertex_deleted(g, v)))
        .collect();
    cards.sort();
    cards
}

/// One representative per isomorphism class, by exhausting every labeled
/// graph; the representative is the lexicographically first edge mask.
pub fn enumerate(kind: Kind, n: usize) -> Vec<Graph> {
    let slots = kind.slot_count(n);
    let mut seen: std::collections::BTreeMap<String, Graph> = Default::default();
    for bits in 0..(1u128 << slots) {
        let g = Graph::from_edge_bits(kind, n, bits).unwrap();
        seen.entry(canon_string(&g)).or_insert(g);
    }
    seen.into_values().collect()
}

/// Every embedded copy of `f` in `host` as a (vertex mask, edge mask) pair,
/// found by testing all subsets.
pub fn copies(f: &Graph, host: &Graph) -> Vec<(u16, u128)> {
    let n = host.n();
    let k = f.n();
    if k > n {
        return Vec::new();
    }
    let slots = host.kind().slots(n);
    let host_bits = host.edge_bits();
    let mut out = Vec::new();
    for vmask in 0..1u32 << n {
        if vmask.count_ones() as usize != k {
            continue;
        }
        // edge slots available inside the vertex set
        let inside: Vec<usize> = slots
            .iter()
            .enumerate()
            .filter(|(idx, &(a, b))| {
                host_bits >> idx & 1 == 1 && vmask >> a & 1 == 1 && vmask >> b & 1 == 1
            })
            .map(|(idx, _)| idx)
            .collect();
        for pick in 0..1u64 << inside.len() {
            let mut emask = 0u128;
            for (t, &idx) in inside.iter().enumerate() {
                if pick >> t & 1 == 1 {
                    emask |= 1 << idx;
                }
            }
            let verts: Vec<usize> = (0..n).filter(|&v| vmask >> v & 1 == 1).collect();
            let mut edges = Vec::new();
            for (idx, &(a, b)) in slots.iter().enumerate() {
                if emask >> idx & 1 == 1 {
                    let a = verts.iter().position(|&v| v == a).unwrap();
                    let b = verts.iter().position(|&v| v == b).unwrap();
                    edges.push((a, b));
                }
            }
            let sub = Graph::from_edges(host.kind(), k, &edges).unwrap();
            if iso(&sub, f) {
                out.push((vmask as u16, emask));
            }
        }
    }
    out
}

pub fn subgraph_count(f: &Graph, host: &Graph) -> u64 {
    copies(f, host).len() as u64
}

/// Ordered tuples of copies covering all vertices and edges of the host.
pub fn cover_count(items: &[Graph], host: &Graph, distinct_vmasks: bool) -> u64 {
    let n = host.n();
    let full_v: u16 = if n == 0 { 0 } else { (1 << n) - 1 };
    let full_e = host.edge_bits();
    if items.is_empty() {
        return (n == 0) as u64;
    }
    let lists: Vec<Vec<(u16, u128)>> = items.iter().map(|f| copies(f, host)).collect();
    if lists.iter().any(|l| l.is_empty()) {
        return 0;
    }
    let mut count = 0u64;
    let mut chosen: Vec<usize> = vec![0; items.len()];
    loop {
        let picks: Vec<(u16, u128)> = chosen
            .iter()
            .enumerate()
            .map(|(i, &c)| lists[i][c])
            .collect();
        let distinct = !distinct_vmasks
            || (0..picks.len()).all(|a| (0..a).all(|b| picks[a].0 != picks[b].0));
        if distinct {
            let (mut cv, mut ce) = (0u16, 0u128);
            for &(vm, em) in &picks {
                cv |= vm;
                ce |= em;
            }
            if cv == full_v && ce == full_e {
                count += 1;
            }
        }
        // odometer over the per-item copy lists
        let mut i = 0;
        loop {
            if i == chosen.len() {
                return count;
            }
            chosen[i] += 1;
            if chosen[i] < lists[i].len() {
                break;
            }
            chosen[i] = 0;
            i += 1;
        }
    }
}
