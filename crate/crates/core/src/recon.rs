//! Decks, the deck-equivalence partition, and deck legitimacy.

use std::collections::HashMap;

use serde::Serialize;

use crate::canon::{canonical_key, CanonicalKey};
use crate::covers::has_embedding;
use crate::enumerate::{enumerate_classes, ClassSpec};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{Graph, Kind};

/// A deck: the multiset of canonical card keys, kept sorted.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Deck(Vec<CanonicalKey>);

impl Deck {
    pub fn cards(&self) -> &[CanonicalKey] {
        &self.0
    }
}

/// The deck of `g`: one card per vertex, each a vertex-deleted subgraph.
pub fn deck(g: &Graph) -> Deck {
    assert!(g.n() >= 1, "decks need at least one vertex");
    let mut cards: Vec<CanonicalKey> = (0..g.n())
        .map(|v| canonical_key(&g.vertex_deleted(v)))
        .collect();
    cards.sort();
    Deck(cards)
}

#[derive(Clone, Debug)]
pub struct ReconClass {
    /// Canonical keys of the members, sorted; the first is the class
    /// representative.
    pub members: Vec<CanonicalKey>,
    pub deck: Deck,
}

#[derive(Clone, Debug)]
pub struct ReconPartition {
    pub kind: Kind,
    pub n: usize,
    pub classes: Vec<ReconClass>,
}

impl ReconPartition {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    pub fn representatives(&self) -> Vec<Graph> {
        self.classes.iter().map(|c| c.members[0].to_graph()).collect()
    }
}

/// Groups pairwise non-isomorphic graphs by deck. Classes and members are
/// sorted by canonical key.
pub fn partition_by_deck(reps: &[Graph]) -> Result<ReconPartition> {
    let first = reps.first().ok_or_else(|| {
        Error::InvalidArgument("cannot partition an empty list of graphs".into())
    })?;
    let (kind, n) = (first.kind(), first.n());
    if n == 0 {
        return Err(Error::InvalidArgument(
            "decks are undefined on zero vertices".into(),
        ));
    }
    for g in reps {
        if g.kind() != kind {
            return Err(Error::KindMismatch {
                expected: kind,
                got: g.kind(),
            });
        }
        if g.n() != n {
            return Err(Error::InvalidArgument(format!(
                "mixed vertex counts {} and {n} in one partition",
                g.n()
            )));
        }
    }
    let decked = exec::par_map(reps, |g| (deck(g), canonical_key(g)));
    let mut by_deck: HashMap<Deck, Vec<CanonicalKey>> = HashMap::new();
    for (d, key) in decked {
        by_deck.entry(d).or_default().push(key);
    }
    let mut classes: Vec<ReconClass> = by_deck
        .into_iter()
        .map(|(deck, mut members)| {
            members.sort();
            members.dedup();
            ReconClass { members, deck }
        })
        .collect();
    classes.sort_by(|a, b| a.members[0].cmp(&b.members[0]));
    Ok(ReconPartition { kind, n, classes })
}

/// psi = isomorphism classes, d = distinct decks, alpha = psi - d.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct Census {
    pub psi: usize,
    pub d: usize,
    pub alpha: usize,
}

pub fn census(spec: &ClassSpec, slow: bool) -> Result<Census> {
    if spec.n == 0 {
        return Err(Error::InvalidArgument(
            "census needs at least one vertex".into(),
        ));
    }
    let reps = enumerate_classes(spec, slow)?;
    let partition = partition_by_deck(&reps)?;
    let psi = reps.len();
    let d = partition.class_count();
    Ok(Census {
        psi,
        d,
        alpha: psi - d,
    })
}

/// Subgraph counts of proper-size subgraphs agree across deck-equal graphs.
/// Used as a property check; `f` must be smaller than `g` and the decks must
/// match.
pub fn kelly_check(f: &Graph, g: &Graph, h: &Graph) -> Result<bool> {
    if f.kind() != g.kind() || g.kind() != h.kind() {
        return Err(Error::KindMismatch {
            expected: g.kind(),
            got: if f.kind() != g.kind() { f.kind() } else { h.kind() },
        });
    }
    if f.n() >= g.n() {
        return Err(Error::InvalidArgument(
            "kelly_check needs v(f) < v(g)".into(),
        ));
    }
    if g.n() != h.n() || deck(g) != deck(h) {
        return Err(Error::InvalidArgument(
            "kelly_check needs deck-equal graphs".into(),
        ));
    }
    Ok(crate::covers::subgraph_count(f, g)? == crate::covers::subgraph_count(f, h)?)
}

/// Card-embedding order: true iff some bijection of vertex indices sends
/// every card of `gi` to a subgraph of the matching card of `gj`. Decided by
/// maximum bipartite matching on card compatibility.
pub fn class_leq(gi: &Graph, gj: &Graph) -> Result<bool> {
    if gi.kind() != gj.kind() {
        return Err(Error::KindMismatch {
            expected: gi.kind(),
            got: gj.kind(),
        });
    }
    if gi.n() != gj.n() || gi.n() == 0 {
        return Err(Error::InvalidArgument(
            "class_leq compares graphs on the same positive vertex count".into(),
        ));
    }
    let n = gi.n();
    let cards_i: Vec<Graph> = (0..n).map(|v| gi.vertex_deleted(v)).collect();
    let cards_j: Vec<Graph> = (0..n).map(|v| gj.vertex_deleted(v)).collect();
    let mut compat = vec![vec![false; n]; n];
    for (v, ci) in cards_i.iter().enumerate() {
        for (w, cj) in cards_j.iter().enumerate() {
            compat[v][w] = has_embedding(ci, cj);
        }
    }
    Ok(perfect_matching(&compat))
}

fn perfect_matching(compat: &[Vec<bool>]) -> bool {
    let n = compat.len();
    let mut matched = vec![usize::MAX; n];
    fn augment(v: usize, compat: &[Vec<bool>], seen: &mut [bool], matched: &mut [usize]) -> bool {
        for w in 0..compat.len() {
            if compat[v][w] && !seen[w] {
                seen[w] = true;
                if matched[w] == usize::MAX
                    || augment(matched[w], compat, seen, matched)
                {
                    matched[w] = v;
                    return true;
                }
            }
        }
        false
    }
    for v in 0..n {
        let mut seen = vec![false; n];
        if !augment(v, compat, &mut seen, &mut matched) {
            return false;
        }
    }
    true
}

/// Searches the ambient class for a graph whose deck equals the given cards.
/// Returns the canonical representative of the first match in key order.
pub fn is_legitimate_deck(
    cards: &[Graph],
    spec: &ClassSpec,
    slow: bool,
) -> Result<Option<Graph>> {
    let n = spec.n;
    if cards.len() != n || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "expected {n} cards, got {}",
            cards.len()
        )));
    }
    for c in cards {
        if c.kind() != spec.kind {
            return Err(Error::KindMismatch {
                expected: spec.kind,
                got: c.kind(),
            });
        }
        if c.n() != n - 1 {
            return Err(Error::InvalidArgument(format!(
                "cards must have {} vertices, got {}",
                n - 1,
                c.n()
            )));
        }
    }
    let mut want: Vec<CanonicalKey> = cards.iter().map(canonical_key).collect();
    want.sort();
    let want = Deck(want);
    let reps = enumerate_classes(spec, slow)?;
    let hits = exec::par_map(&reps, |g| deck(g) == want);
    Ok(reps
        .into_iter()
        .zip(hits)
        .find(|(_, hit)| *hit)
        .map(|(g, _)| g))
}
