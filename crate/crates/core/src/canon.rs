//! Canonical forms under vertex relabelling.
//!
//! The canonical form of a graph is the relabelling whose adjacency matrix,
//! read as a row-major bit-string, is lexicographically minimal over all n!
//! permutations. The search below never enumerates permutations blindly: it
//! assigns positions left to right and keeps the unplaced vertices in an
//! ordered partition. Placing vertex v splits every cell into non-neighbours
//! of v followed by neighbours of v, which is forced for minimality, so after
//! each placement the next matrix row is fully determined and can be compared
//! against the best string found so far.

use crate::error::{Error, Result};
use crate::graph::{Graph, Kind, MAX_VERTICES};

pub const KEY_BYTES: usize = (MAX_VERTICES * MAX_VERTICES + 7) / 8;

/// Total order on isomorphism classes: (kind, n, canonical bit-string).
/// This order fixes column order, deck order and representative choice
/// everywhere downstream.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct CanonicalKey {
    kind: Kind,
    n: u8,
    bytes: [u8; KEY_BYTES],
}

impl CanonicalKey {
    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// The used prefix of the packed row-major bit-string.
    pub fn as_bytes(&self) -> &[u8] {
        &self.bytes[..(self.n() * self.n()).div_ceil(8)]
    }

    /// Decodes the canonical representative.
    pub fn to_graph(&self) -> Graph {
        let n = self.n();
        let mut rows = [0u16; MAX_VERTICES];
        for i in 0..n {
            for j in 0..n {
                let bit = i * n + j;
                if self.bytes[bit / 8] >> (7 - bit % 8) & 1 == 1 {
                    rows[i] |= 1 << j;
                }
            }
        }
        Graph::from_rows(self.kind, n, rows)
    }
}

pub fn canonical_key(g: &Graph) -> CanonicalKey {
    let c = canonical_form(g);
    let n = c.n();
    let mut bytes = [0u8; KEY_BYTES];
    for i in 0..n {
        for j in 0..n {
            if c.has_arc(i, j) {
                let bit = i * n + j;
                bytes[bit / 8] |= 1 << (7 - bit % 8);
            }
        }
    }
    CanonicalKey {
        kind: g.kind(),
        n: n as u8,
        bytes,
    }
}

/// The lexicographically minimal relabelling of `g`.
pub fn canonical_form(g: &Graph) -> Graph {
    let n = g.n();
    if n <= 1 {
        return *g;
    }
    let mut search = Search {
        g,
        n,
        vorder: [0; MAX_VERTICES],
        best: None,
    };
    let mut order: Vec<u8> = (0..n as u8).collect();
    order.sort_by_key(|&v| (g.out_degree(v as usize), g.in_degree(v as usize), v));
    search.vorder[..n].copy_from_slice(&order);

    let cells = Cells::single((1 << n) - 1);
    let mut perm = [0u8; MAX_VERTICES];
    let mut rows = [0u16; MAX_VERTICES];
    search.place(0, &mut perm, &cells, &mut rows);

    let best = search.best.expect("search visits at least one leaf");
    // row k holds column j at bit (n-1-j); unpack into adjacency rows
    let mut rows = [0u16; MAX_VERTICES];
    for (k, row) in best.iter().enumerate().take(n) {
        for j in 0..n {
            if row >> (n - 1 - j) & 1 == 1 {
                rows[k] |= 1 << j;
            }
        }
    }
    Graph::from_rows(g.kind(), n, rows)
}

#[derive(Clone, Copy)]
struct Cells {
    masks: [u16; MAX_VERTICES],
    len: usize,
}

impl Cells {
    fn single(mask: u16) -> Self {
        let mut c = Cells {
            masks: [0; MAX_VERTICES],
            len: 1,
        };
        c.masks[0] = mask;
        c
    }

    fn push(&mut self, mask: u16) {
        self.masks[self.len] = mask;
        self.len += 1;
    }
}

struct Search<'a> {
    g: &'a Graph,
    n: usize,
    vorder: [u8; MAX_VERTICES],
    best: Option<[u16; MAX_VERTICES]>,
}

impl Search<'_> {
    /// Compares the candidate prefix rows[0..k] + row against the current
    /// best. Recomputed per candidate because best may change after every
    /// recursive call; a cached flag would go stale.
    fn beats_best(&self, rows: &[u16; MAX_VERTICES], k: usize, row: u16) -> bool {
        let Some(best) = &self.best else {
            return true;
        };
        for j in 0..k {
            match rows[j].cmp(&best[j]) {
                std::cmp::Ordering::Less => return true,
                std::cmp::Ordering::Greater => return false,
                std::cmp::Ordering::Equal => {}
            }
        }
        row <= best[k]
    }

    fn place(
        &mut self,
        k: usize,
        perm: &mut [u8; MAX_VERTICES],
        cells: &Cells,
        rows: &mut [u16; MAX_VERTICES],
    ) {
        let n = self.n;
        if k == n {
            match &self.best {
                Some(best) if rows[..n] >= best[..n] => {}
                _ => self.best = Some(*rows),
            }
            return;
        }
        let first = cells.masks[0];
        let vorder = self.vorder;
        for &v in &vorder[..n] {
            if first >> v & 1 == 0 {
                continue;
            }
            let v = v as usize;
            let nbr = self.g.out_mask(v);
            let mut row: u16 = 0;
            for (j, &p) in perm.iter().enumerate().take(k) {
                if nbr >> p & 1 == 1 {
                    row |= 1 << (n - 1 - j);
                }
            }
            // split every cell into non-neighbours then neighbours of v;
            // each part occupies a contiguous column block, so the rest of
            // row k is already determined
            let mut ncells = Cells {
                masks: [0; MAX_VERTICES],
                len: 0,
            };
            let mut col = k + 1;
            for idx in 0..cells.len {
                let m = if idx == 0 {
                    cells.masks[0] & !(1 << v)
                } else {
                    cells.masks[idx]
                };
                if m == 0 {
                    continue;
                }
                let zeros = m & !nbr;
                let ones = m & nbr;
                if zeros != 0 {
                    ncells.push(zeros);
                    col += zeros.count_ones() as usize;
                }
                if ones != 0 {
                    ncells.push(ones);
                    let s = ones.count_ones() as usize;
                    row |= (((1u32 << s) - 1) as u16) << (n - col - s);
                    col += s;
                }
            }
            if !self.beats_best(rows, k, row) {
                continue;
            }
            rows[k] = row;
            perm[k] = v as u8;
            self.place(k + 1, perm, &ncells, rows);
        }
    }
}

/// Isomorphism test; graphs of different kinds cannot be compared.
pub fn is_isomorphic(g: &Graph, h: &Graph) -> Result<bool> {
    if g.kind() != h.kind() {
        return Err(Error::KindMismatch {
            expected: g.kind(),
            got: h.kind(),
        });
    }
    Ok(canonical_key(g) == canonical_key(h))
}

/// Order of the automorphism group, by backtracking over degree-compatible
/// vertex maps.
pub fn automorphism_count(g: &Graph) -> u64 {
    let n = g.n();
    if n <= 1 {
        return 1;
    }
    let mut inv = [(0usize, 0usize); MAX_VERTICES];
    for v in 0..n {
        inv[v] = (g.out_degree(v), g.in_degree(v));
    }
    fn rec(
        g: &Graph,
        inv: &[(usize, usize); MAX_VERTICES],
        perm: &mut [usize; MAX_VERTICES],
        used: u16,
        k: usize,
    ) -> u64 {
        let n = g.n();
        if k == n {
            return 1;
        }
        let mut total = 0;
        'cand: for w in 0..n {
            if used >> w & 1 == 1 || inv[w] != inv[k] {
                continue;
            }
            for j in 0..k {
                if g.has_arc(k, j) != g.has_arc(w, perm[j])
                    || g.has_arc(j, k) != g.has_arc(perm[j], w)
                {
                    continue 'cand;
                }
            }
            perm[k] = w;
            total += rec(g, inv, perm, used | 1 << w, k + 1);
        }
        total
    }
    let mut perm = [0usize; MAX_VERTICES];
    rec(g, &inv, &mut perm, 0, 0)
}
