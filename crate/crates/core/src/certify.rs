//! Cover-count matrices over families of sequences, the deck-sequence
//! matrix K, full-rank certificate search, and the end-to-end checks.

use std::collections::{BTreeSet, BinaryHeap, HashMap};
use std::time::Instant;

use itertools::Itertools;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canon::{canonical_key, CanonicalKey};
use crate::covers::{
    cover_count, has_embedding, nonoverlapping_cover_count, subgraph_count, GraphSequence,
};
use crate::enumerate::{enumerate_classes, ClassSpec, Predicate};
use crate::error::{Error, Result};
use crate::exec::par_map;
use crate::g6;
use crate::graph::{Graph, Kind};
use crate::linalg::ExactMatrix;
use crate::recon::{class_leq, deck, partition_by_deck, ReconPartition};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FamilySource {
    File,
    DeckSequences,
    Search,
}

/// A family of pairwise inequivalent sequences; duplicates by normalized
/// key are dropped on insert, first occurrence wins.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    source: FamilySource,
    kind: Option<Kind>,
    sequences: Vec<GraphSequence>,
    seen: BTreeSet<Vec<CanonicalKey>>,
}

impl FamilySpec {
    pub fn new(source: FamilySource) -> Self {
        FamilySpec {
            source,
            kind: None,
            sequences: Vec::new(),
            seen: BTreeSet::new(),
        }
    }

    pub fn source(&self) -> FamilySource {
        self.source
    }

    pub fn kind(&self) -> Option<Kind> {
        self.kind
    }

    pub fn sequences(&self) -> &[GraphSequence] {
        &self.sequences
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    /// Adds a sequence; returns false when an equivalent one is present.
    pub fn push(&mut self, seq: GraphSequence) -> Result<bool> {
        match (self.kind, seq.kind()) {
            (Some(have), Some(new)) if have != new => {
                return Err(Error::KindMismatch {
                    expected: have,
                    got: new,
                })
            }
            (None, Some(new)) => self.kind = Some(new),
            _ => {}
        }
        if !self.seen.insert(seq.normalized_key().to_vec()) {
            return Ok(false);
        }
        self.sequences.push(seq);
        Ok(true)
    }

    /// Parses the family file format: one sequence per line as
    /// comma-separated graph6/digraph6 tokens; blank lines and lines
    /// starting with '#' are skipped.
    pub fn from_lines(text: &str) -> Result<FamilySpec> {
        let mut family = FamilySpec::new(FamilySource::File);
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let items = line
                .split(',')
                .map(|tok| g6::decode(tok.trim()))
                .collect::<Result<Vec<Graph>>>()?;
            family.push(GraphSequence::new(items)?)?;
        }
        Ok(family)
    }
}

fn sorted_class_reps(class_reps: &[Graph]) -> Result<Vec<(CanonicalKey, Graph)>> {
    let first = class_reps
        .first()
        .ok_or_else(|| Error::InvalidArgument("empty class".into()))?;
    let (kind, n) = (first.kind(), first.n());
    let mut reps = Vec::with_capacity(class_reps.len());
    for g in class_reps {
        if g.kind() != kind {
            return Err(Error::KindMismatch {
                expected: kind,
                got: g.kind(),
            });
        }
        if g.n() != n {
            return Err(Error::InvalidArgument(format!(
                "mixed vertex counts {} and {n} in one class",
                g.n()
            )));
        }
        reps.push((canonical_key(g), *g));
    }
    reps.sort_by(|a, b| a.0.cmp(&b.0));
    for pair in reps.windows(2) {
        if pair[0].0 == pair[1].0 {
            return Err(Error::InvalidArgument(
                "class representatives must be pairwise non-isomorphic".into(),
            ));
        }
    }
    Ok(reps)
}

/// M over (family, class): entry (i, j) = c(F_i, H_j). Rows keep family
/// order; columns are the class in canonical key order.
pub fn build_matrix(family: &FamilySpec, class_reps: &[Graph]) -> Result<ExactMatrix> {
    let reps = sorted_class_reps(class_reps)?;
    let (kind, n) = (reps[0].1.kind(), reps[0].1.n());
    for seq in family.sequences() {
        if let Some(k) = seq.kind() {
            if k != kind {
                return Err(Error::KindMismatch {
                    expected: kind,
                    got: k,
                });
            }
        }
        if let Some(f) = seq.items().iter().find(|f| f.n() >= n) {
            return Err(Error::InvalidArgument(format!(
                "family item on {} vertices does not fit a class on {n}",
                f.n()
            )));
        }
    }
    let hosts: Vec<Graph> = reps.iter().map(|(_, g)| *g).collect();
    let data = par_map(family.sequences(), |seq| {
        hosts
            .iter()
            .map(|h| cover_count(seq, h).expect("kinds checked").into())
            .collect::<Vec<BigInt>>()
    });
    let row_labels = family.sequences().iter().map(|s| s.key_string()).collect();
    let col_labels = reps
        .iter()
        .map(|(key, _)| g6::encode(&key.to_graph()))
        .collect();
    ExactMatrix::from_rows(data, row_labels, col_labels)
}

/// The deck of `g` as a sequence, cards in canonical key order.
pub fn deck_sequence(g: &Graph) -> GraphSequence {
    let items: Vec<Graph> = deck(g).cards().iter().map(|k| k.to_graph()).collect();
    GraphSequence::new(items).expect("cards share the kind")
}

/// K over a deck partition: square, rows are deck sequences of the class
/// representatives, entries c*(deck(G_i), G_j), rows and columns in a
/// linear extension of the class order (canonical key breaks ties). Also
/// returns the chosen class order as indices into `partition.classes`.
pub fn build_k_matrix(partition: &ReconPartition) -> Result<(ExactMatrix, Vec<usize>)> {
    let reps = partition.representatives();
    let d = reps.len();
    let leq = par_map(&(0..d * d).collect::<Vec<usize>>(), |&idx| {
        let (i, j) = (idx / d, idx % d);
        i != j && class_leq(&reps[i], &reps[j]).expect("uniform partition")
    });
    for i in 0..d {
        for j in i + 1..d {
            if leq[i * d + j] && leq[j * d + i] {
                return Err(Error::OrderViolation(format!(
                    "distinct deck classes {} and {} compare below each other",
                    g6::encode(&reps[i]),
                    g6::encode(&reps[j])
                )));
            }
        }
    }
    // Kahn's algorithm; the ready set pops the minimal canonical key first
    let mut indegree = vec![0usize; d];
    for i in 0..d {
        for j in 0..d {
            if leq[i * d + j] {
                indegree[j] += 1;
            }
        }
    }
    let mut ready: BinaryHeap<std::cmp::Reverse<(CanonicalKey, usize)>> = (0..d)
        .filter(|&j| indegree[j] == 0)
        .map(|j| std::cmp::Reverse((canonical_key(&reps[j]), j)))
        .collect();
    let mut order = Vec::with_capacity(d);
    while let Some(std::cmp::Reverse((_, i))) = ready.pop() {
        order.push(i);
        for j in 0..d {
            if leq[i * d + j] {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    ready.push(std::cmp::Reverse((canonical_key(&reps[j]), j)));
                }
            }
        }
    }
    if order.len() != d {
        return Err(Error::OrderViolation(
            "class order contains a cycle".into(),
        ));
    }
    let ordered: Vec<Graph> = order.iter().map(|&i| reps[i]).collect();
    let rows = par_map(&ordered, |gi| {
        let seq = deck_sequence(gi);
        let row: Vec<BigInt> = ordered
            .iter()
            .map(|gj| {
                nonoverlapping_cover_count(&seq, gj)
                    .expect("uniform partition")
                    .into()
            })
            .collect();
        (seq.key_string(), row)
    });
    let (row_labels, data): (Vec<String>, Vec<Vec<BigInt>>) = rows.into_iter().unzip();
    let col_labels = ordered.iter().map(g6::encode).collect();
    let matrix = ExactMatrix::from_rows(data, row_labels, col_labels)?;
    Ok((matrix, order))
}

/// Incremental integer row space in echelon form. Rows are reduced with
/// cross-multiplication and divided by their content, so entries stay small
/// while membership tests remain exact.
struct RowSpace {
    cols: usize,
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl RowSpace {
    fn new(cols: usize) -> Self {
        RowSpace {
            cols,
            rows: Vec::new(),
        }
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }

    fn normalize(row: &mut [BigInt]) {
        let mut content = BigInt::zero();
        for x in row.iter() {
            content = content.gcd(x);
            if content.is_one() {
                return;
            }
        }
        if content.is_zero() || content.is_one() {
            return;
        }
        for x in row.iter_mut() {
            *x = &*x / &content;
        }
    }

    /// Returns true when the row enlarged the span.
    fn try_insert(&mut self, mut row: Vec<BigInt>) -> bool {
        debug_assert_eq!(row.len(), self.cols);
        for (pivot_col, basis) in &self.rows {
            if row[*pivot_col].is_zero() {
                continue;
            }
            let a = basis[*pivot_col].clone();
            let b = row[*pivot_col].clone();
            for (x, y) in row.iter_mut().zip(basis) {
                *x = &a * &*x - &b * y;
            }
            Self::normalize(&mut row);
        }
        let Some(pivot_col) = row.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        self.rows.push((pivot_col, row));
        self.rows.sort_by_key(|r| r.0);
        true
    }
}

#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Longest candidate sequence drawn from the subgraph pool.
    pub max_len: usize,
    /// Append the deck sequence of every class member to the candidates.
    pub include_deck_sequences: bool,
    /// Shuffle candidates with the seed instead of keeping sorted order.
    pub shuffle: bool,
    /// Cap on candidates examined; None tries them all.
    pub max_candidates: Option<usize>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_len: 3,
            include_deck_sequences: true,
            shuffle: false,
            max_candidates: None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub kind: String,
    pub n: usize,
    pub seed: u64,
    pub columns: usize,
    /// Normalized keys of the accepted sequences, in acceptance order.
    pub family: Vec<String>,
    /// Rank after each accepted sequence; strictly increasing.
    pub rank_trace: Vec<usize>,
    pub best_rank: usize,
    pub candidates_tried: usize,
    pub certified: bool,
    #[serde(skip)]
    pub family_spec: FamilySpec,
}

/// Greedy full-rank search over the class: candidates are multisets of
/// length 2..=max_len from the pool of proper subgraphs of class members,
/// then deck sequences. A sequence is kept iff it raises the rank. Stops
/// at rank = |class| (a reconstructibility certificate) or when candidates
/// run out.
pub fn search_full_rank(
    class_reps: &[Graph],
    budget: &SearchBudget,
    seed: u64,
) -> Result<SearchOutcome> {
    let reps = sorted_class_reps(class_reps)?;
    let (kind, n) = (reps[0].1.kind(), reps[0].1.n());
    let hosts: Vec<Graph> = reps.iter().map(|(_, g)| *g).collect();
    let mut pool: Vec<Graph> = Vec::new();
    for t in 1..n {
        let spec = ClassSpec::new(kind, t, Predicate::All);
        for f in enumerate_classes(&spec, false)? {
            if hosts.iter().any(|h| has_embedding(&f, h)) {
                pool.push(f);
            }
        }
    }
    let mut candidates: Vec<GraphSequence> = Vec::new();
    let mut seen: BTreeSet<Vec<CanonicalKey>> = BTreeSet::new();
    for len in 2..=budget.max_len {
        for combo in (0..pool.len()).combinations_with_replacement(len) {
            let seq = GraphSequence::new(combo.iter().map(|&i| pool[i]).collect())?;
            if seen.insert(seq.normalized_key().to_vec()) {
                candidates.push(seq);
            }
        }
    }
    if budget.include_deck_sequences {
        for (_, g) in &reps {
            let seq = deck_sequence(g);
            if seen.insert(seq.normalized_key().to_vec()) {
                candidates.push(seq);
            }
        }
    }
    if budget.shuffle {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        candidates.shuffle(&mut rng);
    }
    if let Some(cap) = budget.max_candidates {
        candidates.truncate(cap);
    }

    let columns = hosts.len();
    let mut space = RowSpace::new(columns);
    let mut family = FamilySpec::new(FamilySource::Search);
    let mut accepted_keys = Vec::new();
    let mut rank_trace = Vec::new();
    let mut tried = 0usize;
    // rows come out of the pool in deterministic chunks; acceptance is
    // sequential, so the outcome never depends on the worker count
    const CHUNK: usize = 64;
    'outer: for chunk in candidates.chunks(CHUNK) {
        let rows = par_map(chunk, |seq| {
            hosts
                .iter()
                .map(|h| cover_count(seq, h).expect("kinds checked").into())
                .collect::<Vec<BigInt>>()
        });
        for (seq, row) in chunk.iter().zip(rows) {
            tried += 1;
            if space.try_insert(row) {
                accepted_keys.push(seq.key_string());
                rank_trace.push(space.rank());
                family.push(seq.clone())?;
            }
            if space.rank() == columns {
                break 'outer;
            }
        }
    }
    let best_rank = space.rank();
    Ok(SearchOutcome {
        kind: kind.name().into(),
        n,
        seed,
        columns,
        family: accepted_keys,
        rank_trace,
        best_rank,
        candidates_tried: tried,
        certified: best_rank == columns,
        family_spec: family,
    })
}

fn all_members(partition: &ReconPartition) -> Vec<Graph> {
    let mut keys: Vec<CanonicalKey> = partition
        .classes
        .iter()
        .flat_map(|c| c.members.iter().copied())
        .collect();
    keys.sort();
    keys.into_iter().map(|k| k.to_graph()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub kind: String,
    pub n: usize,
    pub seed: u64,
    pub classes: usize,
    pub deck_classes: usize,
    pub trials: usize,
    pub sequences_checked: usize,
    pub max_rank: usize,
    pub rank_bound_holds: bool,
    pub kocay_sums_constant: bool,
    pub kocay_checks: usize,
    pub witnesses: usize,
    pub witnesses_annihilated: bool,
    pub ok: bool,
}

/// Random-family check of the rank bound: sample families, assert
/// rank(M) <= number of deck classes, Kocay sums constant on every class,
/// and every kernel witness annihilated by every sampled matrix.
pub fn verify_theorem1(
    partition: &ReconPartition,
    trials: usize,
    seed: u64,
) -> Result<Theorem1Report> {
    if trials == 0 {
        return Err(Error::InvalidArgument("zero trials prove nothing".into()));
    }
    let members = all_members(partition);
    let (kind, n) = (partition.kind, partition.n);
    let d = partition.class_count();
    let mut pool: Vec<Graph> = Vec::new();
    for t in 1..n {
        let spec = ClassSpec::new(kind, t, Predicate::All);
        for f in enumerate_classes(&spec, false)? {
            if members.iter().any(|h| has_embedding(&f, h)) {
                pool.push(f);
            }
        }
    }
    if pool.is_empty() {
        return Err(Error::InvalidArgument(
            "no proper subgraphs to sample sequences from".into(),
        ));
    }
    // column c of svecs is the subgraph-count vector of member c
    let member_index: HashMap<CanonicalKey, usize> = members
        .iter()
        .enumerate()
        .map(|(i, g)| (canonical_key(g), i))
        .collect();
    let svecs = par_map(&members, |g| {
        members
            .iter()
            .map(|h| BigInt::from(subgraph_count(h, g).expect("uniform kind")))
            .collect::<Vec<BigInt>>()
    });
    let mut witnesses: Vec<Vec<BigInt>> = Vec::new();
    for class in &partition.classes {
        let base = member_index[&class.members[0]];
        for other in &class.members[1..] {
            let oth = member_index[other];
            let w: Vec<BigInt> = (0..members.len())
                .map(|r| &svecs[oth][r] - &svecs[base][r])
                .collect();
            witnesses.push(w);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut max_rank = 0usize;
    let mut sequences_checked = 0usize;
    let mut kocay_checks = 0usize;
    let mut kocay_ok = true;
    let mut witnesses_ok = true;
    let mut rank_ok = true;
    for _ in 0..trials {
        let mut family = FamilySpec::new(FamilySource::Search);
        let nseq = rng.random_range(1..=3);
        for _ in 0..nseq {
            let len = rng.random_range(1..=3);
            let items: Vec<Graph> = (0..len)
                .map(|_| pool[rng.random_range(0..pool.len())])
                .collect();
            family.push(GraphSequence::new(items)?)?;
        }
        let m = build_matrix(&family, &members)?;
        let rank = m.rank();
        max_rank = max_rank.max(rank);
        if rank > d {
            rank_ok = false;
        }
        sequences_checked += family.len();
        for r in 0..m.rows() {
            for class in &partition.classes {
                if class.members.len() < 2 {
                    continue;
                }
                kocay_checks += 1;
                let dot = |c: usize| -> BigInt {
                    m.row(r)
                        .iter()
                        .zip(&svecs[c])
                        .map(|(a, b)| a * b)
                        .sum()
                };
                let base = dot(member_index[&class.members[0]]);
                if class.members[1..]
                    .iter()
                    .any(|k| dot(member_index[k]) != base)
                {
                    kocay_ok = false;
                }
            }
        }
        for w in &witnesses {
            if m.matvec(w)?.iter().any(|x| !x.is_zero()) {
                witnesses_ok = false;
            }
        }
    }
    let ok = rank_ok && kocay_ok && witnesses_ok;
    Ok(Theorem1Report {
        kind: kind.name().into(),
        n,
        seed,
        classes: members.len(),
        deck_classes: d,
        trials,
        sequences_checked,
        max_rank,
        rank_bound_holds: rank_ok,
        kocay_sums_constant: kocay_ok,
        kocay_checks,
        witnesses: witnesses.len(),
        witnesses_annihilated: witnesses_ok,
        ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct Theorem2Report {
    pub kind: String,
    pub n: usize,
    pub deck_classes: usize,
    pub k_upper_triangular: bool,
    pub k_diagonal_positive: bool,
    pub k_rank: usize,
    pub k_full_rank: bool,
    pub deck_family_rank: usize,
    pub stacked_rank: usize,
    pub rows_in_span: bool,
    pub ok: bool,
}

/// Structural check of the deck-sequence construction: K upper-triangular
/// with positive diagonal and full rank, and every row of K inside the row
/// space of the plain cover-count matrix of the same family.
pub fn verify_theorem2(partition: &ReconPartition) -> Result<Theorem2Report> {
    let (k, order) = build_k_matrix(partition)?;
    let d = partition.class_count();
    let mut upper = true;
    let mut diag_positive = true;
    for i in 0..d {
        if k.get(i, i) <= &BigInt::zero() {
            diag_positive = false;
        }
        for j in 0..i {
            if !k.get(i, j).is_zero() {
                upper = false;
            }
        }
    }
    let k_rank = k.rank();
    // plain cover counts of the same deck sequences over the same columns
    let reps = partition.representatives();
    let ordered: Vec<Graph> = order.iter().map(|&i| reps[i]).collect();
    let rows = par_map(&ordered, |gi| {
        let seq = deck_sequence(gi);
        let row: Vec<BigInt> = ordered
            .iter()
            .map(|gj| cover_count(&seq, gj).expect("uniform partition").into())
            .collect();
        (seq.key_string(), row)
    });
    let (row_labels, data): (Vec<String>, Vec<Vec<BigInt>>) = rows.into_iter().unzip();
    let m = ExactMatrix::from_rows(data, row_labels, k.col_labels().to_vec())?;
    let deck_family_rank = m.rank();
    let stacked_rank = m.stacked(&k)?.rank();
    let rows_in_span = stacked_rank == deck_family_rank;
    let ok = upper && diag_positive && k_rank == d && rows_in_span;
    Ok(Theorem2Report {
        kind: partition.kind.name().into(),
        n: partition.n,
        deck_classes: d,
        k_upper_triangular: upper,
        k_diagonal_positive: diag_positive,
        k_rank,
        k_full_rank: k_rank == d,
        deck_family_rank,
        stacked_rank,
        rows_in_span,
        ok,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyTimings {
    pub enumerate_ms: u64,
    pub partition_ms: u64,
    pub search_ms: u64,
    pub theorem1_ms: u64,
    pub theorem2_ms: u64,
}

#[derive(Clone, Debug)]
pub struct CertifyOptions {
    pub budget: SearchBudget,
    pub trials: usize,
    pub seed: u64,
    pub slow: bool,
    /// Elapsed times are opt-in so that default reports stay byte-identical
    /// across runs and worker counts.
    pub timings: bool,
}

impl Default for CertifyOptions {
    fn default() -> Self {
        CertifyOptions {
            budget: SearchBudget::default(),
            trials: 100,
            seed: crate::DEFAULT_SEED,
            slow: false,
            timings: false,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CertifyReport {
    pub kind: String,
    pub n: usize,
    pub predicate: String,
    pub seed: u64,
    pub psi: usize,
    pub deck_classes: usize,
    pub alpha: usize,
    pub search: SearchOutcome,
    pub theorem1: Theorem1Report,
    pub theorem2: Theorem2Report,
    /// True when both theorem checks pass and the search reached the best
    /// possible rank, the number of deck classes.
    pub ok: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings_ms: Option<CertifyTimings>,
}

/// End-to-end pipeline for one class: enumerate, partition by deck, search
/// for a full-rank certificate, and run both theorem-level verifications.
pub fn certify(spec: &ClassSpec, options: &CertifyOptions) -> Result<CertifyReport> {
    let t0 = Instant::now();
    let reps = enumerate_classes(spec, options.slow)?;
    let t1 = Instant::now();
    let partition = partition_by_deck(&reps)?;
    let t2 = Instant::now();
    let search = search_full_rank(&reps, &options.budget, options.seed)?;
    let t3 = Instant::now();
    let theorem1 = verify_theorem1(&partition, options.trials, options.seed)?;
    let t4 = Instant::now();
    let theorem2 = verify_theorem2(&partition)?;
    let t5 = Instant::now();
    let d = partition.class_count();
    let ok = theorem1.ok && theorem2.ok && search.best_rank == d;
    let timings_ms = options.timings.then(|| CertifyTimings {
        enumerate_ms: (t1 - t0).as_millis() as u64,
        partition_ms: (t2 - t1).as_millis() as u64,
        search_ms: (t3 - t2).as_millis() as u64,
        theorem1_ms: (t4 - t3).as_millis() as u64,
        theorem2_ms: (t5 - t4).as_millis() as u64,
    });
    Ok(CertifyReport {
        kind: spec.kind.name().into(),
        n: spec.n,
        predicate: spec.predicate.name().into(),
        seed: options.seed,
        psi: reps.len(),
        deck_classes: d,
        alpha: reps.len() - d,
        search,
        theorem1,
        theorem2,
        ok,
        timings_ms,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn und(n: usize, edges: &[(usize, usize)]) -> Graph {
        Graph::from_edges(Kind::Undirected, n, edges).unwrap()
    }

    fn classes(kind: Kind, n: usize, predicate: Predicate) -> Vec<Graph> {
        enumerate_classes(&ClassSpec::new(kind, n, predicate), false).unwrap()
    }

    #[test]
    fn matrix_row_for_a_pair_of_edges() {
        let k2 = und(2, &[(0, 1)]);
        let mut family = FamilySpec::new(FamilySource::File);
        family
            .push(GraphSequence::new(vec![k2, k2]).unwrap())
            .unwrap();
        let m = build_matrix(&family, &classes(Kind::Undirected, 3, Predicate::All)).unwrap();
        assert_eq!(m.rows(), 1);
        assert_eq!(m.cols(), 4);
        let row: Vec<i64> = (0..4)
            .map(|c| i64::try_from(m.get(0, c)).unwrap())
            .collect();
        assert_eq!(row, vec![0, 0, 2, 0]);
    }

    #[test]
    fn single_item_sequences_give_zero_rows() {
        let mut family = FamilySpec::new(FamilySource::File);
        family
            .push(GraphSequence::new(vec![und(2, &[(0, 1)])]).unwrap())
            .unwrap();
        let m = build_matrix(&family, &classes(Kind::Undirected, 3, Predicate::All)).unwrap();
        assert!(m.row(0).iter().all(|x| x.is_zero()));
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn empty_family_gives_empty_matrix() {
        let family = FamilySpec::new(FamilySource::File);
        let m = build_matrix(&family, &classes(Kind::Undirected, 3, Predicate::All)).unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 4));
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn oversized_family_items_are_rejected() {
        let mut family = FamilySpec::new(FamilySource::File);
        family
            .push(GraphSequence::new(vec![und(3, &[(0, 1)])]).unwrap())
            .unwrap();
        assert!(build_matrix(&family, &classes(Kind::Undirected, 3, Predicate::All)).is_err());
    }

    #[test]
    fn family_deduplicates_equivalent_sequences() {
        let k2 = und(2, &[(0, 1)]);
        let e1 = und(1, &[]);
        let mut family = FamilySpec::new(FamilySource::File);
        assert!(family
            .push(GraphSequence::new(vec![k2, e1]).unwrap())
            .unwrap());
        assert!(!family
            .push(GraphSequence::new(vec![e1, k2]).unwrap())
            .unwrap());
        assert_eq!(family.len(), 1);
    }

    #[test]
    fn family_file_round_trip() {
        let text = "# pairs\nA_,A_\n\nA_,Bw\n";
        let family = FamilySpec::from_lines(text).unwrap();
        assert_eq!(family.len(), 2);
        assert_eq!(family.sequences()[0].key_string(), "A_,A_");
        assert!(FamilySpec::from_lines("A_,&A_\n").is_err());
        assert!(FamilySpec::from_lines("A_,zz\n").is_err());
    }

    #[test]
    fn k_matrix_on_three_vertex_graphs() {
        let reps = classes(Kind::Undirected, 3, Predicate::All);
        let partition = partition_by_deck(&reps).unwrap();
        let (k, order) = build_k_matrix(&partition).unwrap();
        assert_eq!((k.rows(), k.cols()), (4, 4));
        assert_eq!(order.len(), 4);
        for i in 0..4 {
            assert!(k.get(i, i) > &BigInt::zero());
            for j in 0..i {
                assert!(k.get(i, j).is_zero());
            }
        }
        assert_eq!(k.rank(), 4);
        // three distinct two-vertex card placements in any order: 3!
        assert_eq!(k.get(0, 0), &BigInt::from(6));
    }

    #[test]
    fn search_certifies_connected_four_vertex_graphs() {
        let reps = classes(Kind::Undirected, 4, Predicate::Connected);
        assert_eq!(reps.len(), 6);
        let outcome = search_full_rank(&reps, &SearchBudget::default(), 42).unwrap();
        assert!(outcome.certified);
        assert_eq!(outcome.best_rank, 6);
        assert_eq!(outcome.rank_trace.last(), Some(&6));
        assert_eq!(outcome.family.len(), outcome.rank_trace.len());
        // trace is strictly increasing
        assert!(outcome.rank_trace.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn search_on_three_vertex_digraphs_tops_out_at_deck_count() {
        let reps = classes(Kind::Directed, 3, Predicate::All);
        let partition = partition_by_deck(&reps).unwrap();
        let outcome = search_full_rank(&reps, &SearchBudget::default(), 42).unwrap();
        assert!(!outcome.certified);
        assert_eq!(outcome.best_rank, partition.class_count());
        assert_eq!(outcome.best_rank, 10);
    }

    #[test]
    fn search_handles_a_singleton_class() {
        let k3 = und(3, &[(0, 1), (1, 2), (0, 2)]);
        let outcome = search_full_rank(&[k3], &SearchBudget::default(), 42).unwrap();
        assert!(outcome.certified);
        assert_eq!(outcome.best_rank, 1);
    }

    #[test]
    fn theorem1_on_three_vertex_digraphs() {
        let reps = classes(Kind::Directed, 3, Predicate::All);
        let partition = partition_by_deck(&reps).unwrap();
        let report = verify_theorem1(&partition, 20, 42).unwrap();
        assert!(report.ok);
        assert_eq!(report.classes, 16);
        assert_eq!(report.deck_classes, 10);
        // one witness per non-first member: two size-3 and two size-2 classes
        assert_eq!(report.witnesses, 6);
        assert!(report.max_rank <= 10);
        assert!(report.kocay_checks > 0);
    }

    #[test]
    fn theorem2_on_small_classes() {
        for (kind, n, d) in [
            (Kind::Undirected, 3, 4),
            (Kind::Undirected, 4, 11),
            (Kind::Directed, 3, 10),
        ] {
            let reps = classes(kind, n, Predicate::All);
            let partition = partition_by_deck(&reps).unwrap();
            let report = verify_theorem2(&partition).unwrap();
            assert!(report.ok, "{kind:?} n={n}");
            assert_eq!(report.k_rank, d);
            assert!(report.k_upper_triangular);
            assert!(report.k_diagonal_positive);
            assert!(report.rows_in_span);
        }
    }

    #[test]
    fn certify_report_round_trip() {
        let spec = ClassSpec::new(Kind::Undirected, 3, Predicate::All);
        let report = certify(&spec, &CertifyOptions::default()).unwrap();
        assert!(report.ok);
        assert_eq!(report.psi, 4);
        assert_eq!(report.deck_classes, 4);
        assert_eq!(report.alpha, 0);
        assert!(report.search.certified);
        let json = serde_json::to_string(&report).unwrap();
        assert!(!json.contains("timings"));
        let timed = certify(
            &spec,
            &CertifyOptions {
                timings: true,
                ..CertifyOptions::default()
            },
        )
        .unwrap();
        assert!(serde_json::to_string(&timed).unwrap().contains("timings_ms"));
    }

    #[test]
    fn row_space_rank_matches_bareiss() {
        let rows: Vec<Vec<BigInt>> = vec![
            vec![2.into(), 4.into(), 6.into()],
            vec![1.into(), 2.into(), 3.into()],
            vec![0.into(), 1.into(), 1.into()],
            vec![3.into(), 7.into(), 10.into()],
        ];
        let mut space = RowSpace::new(3);
        let mut accepted = 0;
        for row in &rows {
            if space.try_insert(row.clone()) {
                accepted += 1;
            }
        }
        let m = ExactMatrix::from_rows(
            rows,
            vec!["a".into(), "b".into(), "c".into(), "d".into()],
            vec!["x".into(), "y".into(), "z".into()],
        )
        .unwrap();
        assert_eq!(accepted, m.rank());
        assert_eq!(space.rank(), 2);
    }
}
