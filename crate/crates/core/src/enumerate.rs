//! Exhaustive enumeration of isomorphism classes at fixed vertex count.
//!
//! Streams every labelled edge bitmask, filters by the predicate on the
//! labelled graph (predicates are isomorphism-invariant, so this is sound),
//! canonicalizes and deduplicates. The stream is chunked across workers and
//! merged into one ordered set, so the result is sorted by [`CanonicalKey`]
//! and independent of scheduling.

use crate::canon::{canonical_key, CanonicalKey};
use crate::error::{Error, Result};
use crate::exec;
use crate::graph::{Graph, Kind};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Predicate {
    All,
    Connected,
}

impl Predicate {
    pub fn name(self) -> &'static str {
        match self {
            Predicate::All => "all",
            Predicate::Connected => "connected",
        }
    }

    fn accepts(self, g: &Graph) -> bool {
        match self {
            Predicate::All => true,
            Predicate::Connected => g.is_connected(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClassSpec {
    pub kind: Kind,
    pub n: usize,
    pub predicate: Predicate,
}

impl ClassSpec {
    pub fn new(kind: Kind, n: usize, predicate: Predicate) -> Self {
        ClassSpec { kind, n, predicate }
    }
}

/// Hard ceilings for exhaustive enumeration; the largest undirected size is
/// additionally gated behind `slow` because it walks 2^21 labelled graphs.
const MAX_UNDIRECTED: usize = 7;
const MAX_DIRECTED: usize = 5;
const FAST_UNDIRECTED: usize = 6;

fn check_budget(kind: Kind, n: usize, slow: bool) -> Result<()> {
    let (max, fast) = match kind {
        Kind::Undirected => (MAX_UNDIRECTED, FAST_UNDIRECTED),
        Kind::Directed => (MAX_DIRECTED, MAX_DIRECTED),
    };
    if n > max {
        return Err(Error::BudgetExceeded { kind, n, hint: "" });
    }
    if n > fast && !slow {
        return Err(Error::BudgetExceeded {
            kind,
            n,
            hint: "; pass the slow flag to allow it",
        });
    }
    Ok(())
}

/// All isomorphism classes of the spec, as canonical representatives sorted
/// by key.
pub fn enumerate_classes(spec: &ClassSpec, slow: bool) -> Result<Vec<Graph>> {
    check_budget(spec.kind, spec.n, slow)?;
    let keys = enumerate_keys(spec);
    Ok(keys.into_iter().map(|k| k.to_graph()).collect())
}

pub fn psi(spec: &ClassSpec, slow: bool) -> Result<usize> {
    check_budget(spec.kind, spec.n, slow)?;
    Ok(enumerate_keys(spec).len())
}

fn enumerate_keys(spec: &ClassSpec) -> Vec<CanonicalKey> {
    let kind = spec.kind;
    let n = spec.n;
    let predicate = spec.predicate;
    let total = 1u64 << kind.slot_count(n);
    let set = exec::collect_over_masks(total, move |mask| {
        let g = Graph::from_edge_bits(kind, n, mask as u128).expect("mask in range");
        predicate.accepts(&g).then(|| canonical_key(&g))
    });
    set.into_iter().collect()
}
