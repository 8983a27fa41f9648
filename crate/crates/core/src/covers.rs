//! Subgraph and cover counting for sequences of graphs.
//!
//! A subgraph of a host is a pair (vertex mask, edge mask); isolated vertices
//! distinguish subgraphs. A sequence (F_1, ..., F_m) covers a host G when
//! embedded copies S_i of the F_i jointly exhaust the vertices and edges of
//! G. The non-overlapping variant additionally requires pairwise distinct
//! vertex sets. All counts are exact arbitrary-precision integers.

use std::collections::{BTreeSet, HashMap};
use std::sync::OnceLock;

use itertools::Itertools;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::canon::{automorphism_count, canonical_key, CanonicalKey};
use crate::enumerate::{enumerate_classes, ClassSpec, Predicate};
use crate::error::{Error, Result};
use crate::g6;
use crate::graph::{Graph, Kind, MAX_VERTICES};

/// One embedded copy: vertex mask plus edge mask in the host's slot order.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct EmbeddedSubgraph {
    pub host_n: u8,
    pub vmask: u16,
    pub emask: u128,
}

fn check_kinds(expected: Kind, got: Kind) -> Result<()> {
    if expected != got {
        return Err(Error::KindMismatch { expected, got });
    }
    Ok(())
}

/// Walks every injective edge-preserving map of `f` into `host` in vertex
/// order. Non-edges of `f` are unconstrained: images are subgraphs, not
/// induced subgraphs.
fn walk_embeddings(f: &Graph, host: &Graph, emit: &mut impl FnMut(&[usize])) {
    let nf = f.n();
    let nh = host.n();
    if nf > nh {
        return;
    }
    fn rec(
        f: &Graph,
        host: &Graph,
        map: &mut [usize; MAX_VERTICES],
        used: u16,
        i: usize,
        emit: &mut impl FnMut(&[usize]),
    ) {
        let nf = f.n();
        if i == nf {
            emit(&map[..nf]);
            return;
        }
        'cand: for w in 0..host.n() {
            if used >> w & 1 == 1 {
                continue;
            }
            for j in 0..i {
                if (f.has_arc(i, j) && !host.has_arc(w, map[j]))
                    || (f.has_arc(j, i) && !host.has_arc(map[j], w))
                {
                    continue 'cand;
                }
            }
            map[i] = w;
            rec(f, host, map, used | 1 << w, i + 1, emit);
        }
    }
    let mut map = [0usize; MAX_VERTICES];
    rec(f, host, &mut map, 0, 0, emit);
}

fn host_slot_table(host: &Graph) -> [[usize; MAX_VERTICES]; MAX_VERTICES] {
    let mut table = [[usize::MAX; MAX_VERTICES]; MAX_VERTICES];
    for (idx, &(u, v)) in host.kind().slots(host.n()).iter().enumerate() {
        table[u][v] = idx;
        if host.kind() == Kind::Undirected {
            table[v][u] = idx;
        }
    }
    table
}

/// All distinct embedded copies of `f` in `host`, sorted by (vmask, emask).
pub fn embedded_subgraphs(f: &Graph, host: &Graph) -> Result<Vec<EmbeddedSubgraph>> {
    check_kinds(host.kind(), f.kind())?;
    Ok(embedded_pairs(f, host)
        .into_iter()
        .map(|(vmask, emask)| EmbeddedSubgraph {
            host_n: host.n() as u8,
            vmask,
            emask,
        })
        .collect())
}

fn embedded_pairs(f: &Graph, host: &Graph) -> Vec<(u16, u128)> {
    let slot = host_slot_table(host);
    let fedges: Vec<(usize, usize)> = f
        .kind()
        .slots(f.n())
        .into_iter()
        .filter(|&(a, b)| f.has_arc(a, b))
        .collect();
    let mut set = BTreeSet::new();
    walk_embeddings(f, host, &mut |map| {
        let mut vmask = 0u16;
        for &w in map {
            vmask |= 1 << w;
        }
        let mut emask = 0u128;
        for &(a, b) in &fedges {
            emask |= 1 << slot[map[a]][map[b]];
        }
        set.insert((vmask, emask));
    });
    set.into_iter().collect()
}

pub(crate) fn embedding_count(f: &Graph, host: &Graph) -> u64 {
    let mut count = 0u64;
    walk_embeddings(f, host, &mut |_| count += 1);
    count
}

pub(crate) fn has_embedding(f: &Graph, host: &Graph) -> bool {
    debug_assert_eq!(f.kind(), host.kind());
    if f.n() > host.n() {
        return false;
    }
    fn rec(f: &Graph, host: &Graph, map: &mut [usize; MAX_VERTICES], used: u16, i: usize) -> bool {
        if i == f.n() {
            return true;
        }
        'cand: for w in 0..host.n() {
            if used >> w & 1 == 1 {
                continue;
            }
            for j in 0..i {
                if (f.has_arc(i, j) && !host.has_arc(w, map[j]))
                    || (f.has_arc(j, i) && !host.has_arc(map[j], w))
                {
                    continue 'cand;
                }
            }
            map[i] = w;
            if rec(f, host, map, used | 1 << w, i + 1) {
                return true;
            }
        }
        false
    }
    rec(f, host, &mut [0usize; MAX_VERTICES], 0, 0)
}

/// s(f, host): the number of subgraphs of `host` isomorphic to `f`. Computed
/// as embeddings divided by the automorphism count; the image-set route is
/// cross-checked in debug builds.
pub fn subgraph_count(f: &Graph, host: &Graph) -> Result<BigUint> {
    check_kinds(host.kind(), f.kind())?;
    let embeddings = embedding_count(f, host);
    let aut = automorphism_count(f);
    debug_assert_eq!(embeddings % aut, 0);
    let s = embeddings / aut;
    debug_assert_eq!(s as usize, embedded_pairs(f, host).len());
    Ok(BigUint::from(s))
}

/// A sequence of same-kind graphs with its normalized key: the multiset of
/// canonical member keys. Order of items never affects any count.
#[derive(Clone, Debug)]
pub struct GraphSequence {
    kind: Option<Kind>,
    items: Vec<Graph>,
    norm: Vec<CanonicalKey>,
}

impl GraphSequence {
    pub fn new(items: Vec<Graph>) -> Result<Self> {
        let kind = match items.first() {
            None => None,
            Some(first) => {
                let k = first.kind();
                for g in &items {
                    check_kinds(k, g.kind())?;
                }
                Some(k)
            }
        };
        let mut norm: Vec<CanonicalKey> = items.iter().map(canonical_key).collect();
        norm.sort();
        Ok(GraphSequence { kind, items, norm })
    }

    pub fn empty() -> Self {
        GraphSequence {
            kind: None,
            items: Vec::new(),
            norm: Vec::new(),
        }
    }

    pub fn items(&self) -> &[Graph] {
        &self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn kind(&self) -> Option<Kind> {
        self.kind
    }

    pub fn normalized_key(&self) -> &[CanonicalKey] {
        &self.norm
    }

    /// Canonical text form: sorted member tokens, comma separated. This
    /// matches the sequence-file format accepted by the CLI.
    pub fn key_string(&self) -> String {
        self.norm
            .iter()
            .map(|k| g6::encode(&k.to_graph()))
            .join(",")
    }
}

impl PartialEq for GraphSequence {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.norm == other.norm
    }
}

impl Eq for GraphSequence {}

impl PartialOrd for GraphSequence {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GraphSequence {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.norm.len(), &self.norm).cmp(&(other.norm.len(), &other.norm))
    }
}

impl std::hash::Hash for GraphSequence {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.kind.hash(state);
        self.norm.hash(state);
    }
}

const TT_ENTRY_BYTES: usize = 64;
const TT_DEFAULT_BYTES: usize = 64 << 20;

fn tt_max_entries() -> usize {
    static CAP: OnceLock<usize> = OnceLock::new();
    *CAP.get_or_init(|| {
        let bytes = std::env::var("DECKRANK_TT_MAX_BYTES")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .unwrap_or(TT_DEFAULT_BYTES);
        bytes / TT_ENTRY_BYTES
    })
}

struct CoverContext {
    lists: Vec<Vec<(u16, u128)>>,
    full_v: u16,
    full_e: u128,
    /// Union of masks over items i.. ; a state that cannot reach full
    /// coverage any more is cut immediately.
    suffix_v: Vec<u16>,
    suffix_e: Vec<u128>,
}

impl CoverContext {
    fn new(seq: &GraphSequence, g: &Graph) -> Self {
        let lists: Vec<Vec<(u16, u128)>> = seq
            .items()
            .iter()
            .map(|f| embedded_pairs(f, g))
            .collect();
        let m = lists.len();
        let mut suffix_v = vec![0u16; m + 1];
        let mut suffix_e = vec![0u128; m + 1];
        for i in (0..m).rev() {
            let (mut v, mut e) = (suffix_v[i + 1], suffix_e[i + 1]);
            for &(vm, em) in &lists[i] {
                v |= vm;
                e |= em;
            }
            suffix_v[i] = v;
            suffix_e[i] = e;
        }
        let n = g.n();
        CoverContext {
            lists,
            full_v: if n == 0 { 0 } else { (1 << n) - 1 },
            full_e: g.edge_bits(),
            suffix_v,
            suffix_e,
        }
    }

    fn pruned(&self, i: usize, cv: u16, ce: u128) -> bool {
        (cv | self.suffix_v[i]) != self.full_v || (ce | self.suffix_e[i]) != self.full_e
    }
}

/// c(seq, g): ordered tuples of embedded copies covering every vertex and
/// edge of `g`. The empty sequence covers exactly the empty graph.
pub fn cover_count(seq: &GraphSequence, g: &Graph) -> Result<BigUint> {
    if seq.is_empty() {
        return Ok(if g.n() == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    check_kinds(g.kind(), seq.kind().expect("nonempty"))?;
    let ctx = CoverContext::new(seq, g);
    let n = g.n();
    let slots = g.kind().slot_count(n);
    // transposition table over (item index, covered vertices, covered edges)
    let mut memo = if n + slots <= 24 {
        Some(HashMap::<u64, BigUint>::new())
    } else {
        None
    };
    fn rec(
        ctx: &CoverContext,
        i: usize,
        cv: u16,
        ce: u128,
        key_shift: (usize, usize),
        memo: &mut Option<HashMap<u64, BigUint>>,
    ) -> BigUint {
        if i == ctx.lists.len() {
            return if cv == ctx.full_v && ce == ctx.full_e {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        if ctx.pruned(i, cv, ce) {
            return BigUint::zero();
        }
        let key = (i as u64) << (key_shift.0 + key_shift.1)
            | (cv as u64) << key_shift.1
            | ce as u64;
        if let Some(m) = memo.as_ref() {
            if let Some(hit) = m.get(&key) {
                return hit.clone();
            }
        }
        let mut total = BigUint::zero();
        for &(vm, em) in &ctx.lists[i] {
            total += rec(ctx, i + 1, cv | vm, ce | em, key_shift, memo);
        }
        if let Some(m) = memo.as_mut() {
            if m.len() < tt_max_entries() {
                m.insert(key, total.clone());
            }
        }
        total
    }
    Ok(rec(&ctx, 0, 0, 0, (n, slots), &mut memo))
}

/// c*(seq, g): covers whose copies carry pairwise distinct vertex sets.
/// Coincides with `cover_count` at length two.
pub fn nonoverlapping_cover_count(seq: &GraphSequence, g: &Graph) -> Result<BigUint> {
    if seq.is_empty() {
        return Ok(if g.n() == 0 {
            BigUint::one()
        } else {
            BigUint::zero()
        });
    }
    check_kinds(g.kind(), seq.kind().expect("nonempty"))?;
    let ctx = CoverContext::new(seq, g);
    fn rec(ctx: &CoverContext, i: usize, cv: u16, ce: u128, used: &mut Vec<u16>) -> BigUint {
        if i == ctx.lists.len() {
            return if cv == ctx.full_v && ce == ctx.full_e {
                BigUint::one()
            } else {
                BigUint::zero()
            };
        }
        if ctx.pruned(i, cv, ce) {
            return BigUint::zero();
        }
        let mut total = BigUint::zero();
        for &(vm, em) in &ctx.lists[i] {
            if used.contains(&vm) {
                continue;
            }
            used.push(vm);
            total += rec(ctx, i + 1, cv | vm, ce | em, used);
            used.pop();
        }
        total
    }
    Ok(rec(&ctx, 0, 0, 0, &mut Vec::with_capacity(seq.len())))
}

fn factorial(k: usize) -> BigUint {
    (1..=k).map(BigUint::from).product()
}

/// 1 / (product of multiplicity factorials) over the multiset of member
/// classes; always in lowest terms.
pub fn gamma(seq: &GraphSequence) -> BigRational {
    let mut denom = BigUint::one();
    let norm = seq.normalized_key();
    let mut run = 0usize;
    for i in 0..norm.len() {
        run += 1;
        if i + 1 == norm.len() || norm[i + 1] != norm[i] {
            denom *= factorial(run);
            run = 0;
        }
    }
    BigRational::new(BigInt::one(), BigInt::from(denom))
}

/// The reconstructible combination: sum over the class of c(seq, H) s(H, g).
pub fn kocay_sum(seq: &GraphSequence, g: &Graph, class_reps: &[Graph]) -> Result<BigUint> {
    for f in seq.items() {
        check_kinds(g.kind(), f.kind())?;
        if f.n() >= g.n() {
            return Err(Error::InvalidArgument(format!(
                "sequence item on {} vertices is not smaller than the target on {}",
                f.n(),
                g.n()
            )));
        }
    }
    let mut total = BigUint::zero();
    for h in class_reps {
        check_kinds(g.kind(), h.kind())?;
        if h.n() != g.n() {
            return Err(Error::InvalidArgument(
                "class representatives must match the target vertex count".into(),
            ));
        }
        total += cover_count(seq, h)? * subgraph_count(h, g)?;
    }
    Ok(total)
}

/// Checks the product identity: prod_i s(F_i, g) equals the sum over all
/// classes X on at most v(g) vertices of c(seq, X) s(X, g).
pub fn verify_eq1(seq: &GraphSequence, g: &Graph) -> Result<bool> {
    if let Some(k) = seq.kind() {
        check_kinds(g.kind(), k)?;
    }
    let mut lhs = BigUint::one();
    for f in seq.items() {
        lhs *= subgraph_count(f, g)?;
    }
    let sum_v: usize = seq.items().iter().map(|f| f.n()).sum();
    let sum_e: usize = seq.items().iter().map(|f| f.edge_count()).sum();
    let max_v = seq.items().iter().map(|f| f.n()).max().unwrap_or(0);
    let max_e = seq.items().iter().map(|f| f.edge_count()).max().unwrap_or(0);
    let mut rhs = BigUint::zero();
    for t in 0..=g.n() {
        if t < max_v || t > sum_v {
            continue;
        }
        let spec = ClassSpec::new(g.kind(), t, Predicate::All);
        for x in enumerate_classes(&spec, false)? {
            let e = x.edge_count();
            if e < max_e || e > sum_e {
                continue;
            }
            let c = cover_count(seq, &x)?;
            if c.is_zero() {
                continue;
            }
            rhs += c * subgraph_count(&x, g)?;
        }
    }
    Ok(lhs == rhs)
}

fn distinct_relabellings(g: &Graph) -> Vec<u128> {
    let n = g.n();
    let mut set = BTreeSet::new();
    for perm in (0..n).permutations(n) {
        set.insert(g.relabel(&perm).edge_bits());
    }
    if n == 0 {
        set.insert(0);
    }
    set.into_iter().collect()
}

/// Expands c(seq, g) through shorter non-overlapping covers and checks
/// exact-rational equality. `seq` must have length at least two with every
/// item on exactly v(g) - 1 vertices.
pub fn verify_recurrence(seq: &GraphSequence, g: &Graph) -> Result<bool> {
    let ell = seq.len();
    if ell < 2 || ell > g.n() {
        return Err(Error::InvalidArgument(format!(
            "sequence length {ell} must lie in 2..=v(g)"
        )));
    }
    check_kinds(g.kind(), seq.kind().expect("nonempty"))?;
    let m = g.n() - 1;
    for f in seq.items() {
        if f.n() != m {
            return Err(Error::InvalidArgument(format!(
                "recurrence items must have exactly {m} vertices, got {}",
                f.n()
            )));
        }
    }
    let kind = g.kind();

    // candidate block graphs: unions of relabelled items over a fixed
    // m-vertex set, one bitmask per item of the block
    let variants: Vec<Vec<u128>> = seq.items().iter().map(distinct_relabellings).collect();
    let mut block_cands: HashMap<u16, Vec<Graph>> = HashMap::new();
    let mut pool_keys: BTreeSet<CanonicalKey> = BTreeSet::new();
    for block in 1u16..1 << ell {
        let members: Vec<usize> = (0..ell).filter(|&i| block >> i & 1 == 1).collect();
        let mut unions: BTreeSet<u128> = BTreeSet::new();
        fn build(
            variants: &[Vec<u128>],
            members: &[usize],
            i: usize,
            acc: u128,
            unions: &mut BTreeSet<u128>,
        ) {
            if i == members.len() {
                unions.insert(acc);
                return;
            }
            for &bits in &variants[members[i]] {
                build(variants, members, i + 1, acc | bits, unions);
            }
        }
        build(&variants, &members, 0, 0, &mut unions);
        let mut keys: BTreeSet<CanonicalKey> = BTreeSet::new();
        for bits in unions {
            let h = Graph::from_edge_bits(kind, m, bits)?;
            keys.insert(canonical_key(&h));
        }
        pool_keys.extend(keys.iter().copied());
        block_cands.insert(block, keys.into_iter().map(|k| k.to_graph()).collect());
    }
    let pool: Vec<Graph> = pool_keys.into_iter().map(|k| k.to_graph()).collect();

    // c(F restricted to block, H) for every block mask and pool member
    let mut c_memo: HashMap<(u16, usize), BigUint> = HashMap::new();
    for (&block, cands) in &block_cands {
        let members: Vec<Graph> = (0..ell)
            .filter(|&i| block >> i & 1 == 1)
            .map(|i| seq.items()[i])
            .collect();
        let sub = GraphSequence::new(members)?;
        for (idx, h) in pool.iter().enumerate() {
            // only candidates generated for this block can have nonzero c
            let value = if cands.iter().any(|c| canonical_key(c) == canonical_key(h)) {
                cover_count(&sub, h)?
            } else {
                BigUint::zero()
            };
            c_memo.insert((block, idx), value);
        }
    }

    let mut rhs = BigRational::zero();
    for k in 2..=ell {
        for combo in (0..pool.len()).combinations_with_replacement(k) {
            let h_seq = GraphSequence::new(combo.iter().map(|&i| pool[i]).collect())?;
            let cstar = nonoverlapping_cover_count(&h_seq, g)?;
            if cstar.is_zero() {
                continue;
            }
            // sum over onto maps of items to the k blocks
            let mut inner = BigUint::zero();
            let total = (k as u64).pow(ell as u32);
            'assign: for code in 0..total {
                let mut digits = [0usize; 16];
                let mut rem = code;
                let mut hit = 0u16;
                for d in digits.iter_mut().take(ell) {
                    *d = (rem % k as u64) as usize;
                    hit |= 1 << *d;
                    rem /= k as u64;
                }
                if hit != (1 << k) - 1 {
                    continue;
                }
                let mut product = BigUint::one();
                for (i, &pool_idx) in combo.iter().enumerate() {
                    let mut block = 0u16;
                    for (t, &d) in digits.iter().enumerate().take(ell) {
                        if d == i {
                            block |= 1 << t;
                        }
                    }
                    let c = &c_memo[&(block, pool_idx)];
                    if c.is_zero() {
                        continue 'assign;
                    }
                    product *= c;
                }
                inner += product;
            }
            if inner.is_zero() {
                continue;
            }
            rhs += gamma(&h_seq)
                * BigRational::from(BigInt::from(cstar))
                * BigRational::from(BigInt::from(inner));
        }
    }
    let lhs = BigRational::from(BigInt::from(cover_count(seq, g)?));
    Ok(lhs == rhs)
}

/// Difference of subgraph-count vectors of two deck-equal graphs over the
/// class columns; a kernel vector of every cover-count matrix on the class.
pub fn kernel_witness(
    g_ij: &Graph,
    g_i1: &Graph,
    class_reps: &[Graph],
) -> Result<Vec<BigInt>> {
    check_kinds(g_i1.kind(), g_ij.kind())?;
    if g_ij.n() != g_i1.n() {
        return Err(Error::InvalidArgument(
            "kernel witnesses need graphs on the same vertex count".into(),
        ));
    }
    class_reps
        .iter()
        .map(|h| {
            check_kinds(g_ij.kind(), h.kind())?;
            let a = BigInt::from(subgraph_count(h, g_ij)?);
            let b = BigInt::from(subgraph_count(h, g_i1)?);
            Ok(a - b)
        })
        .collect()
}
