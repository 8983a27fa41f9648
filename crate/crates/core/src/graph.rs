//! Small labelled graphs and digraphs stored as adjacency bit-matrices.
//!
//! Vertices are `0..n` with `n` at most [`MAX_VERTICES`]. Row `u` is a bitmask
//! of the out-neighbours of `u`; undirected graphs keep the matrix symmetric.
//! Loops and multi-edges are rejected at construction.

use crate::error::{Error, Result};

pub const MAX_VERTICES: usize = 10;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Kind {
    Undirected,
    Directed,
}

impl Kind {
    /// Number of edge slots on `n` vertices: unordered pairs for graphs,
    /// ordered pairs for digraphs.
    pub fn slot_count(self, n: usize) -> usize {
        match self {
            Kind::Undirected => n * n.saturating_sub(1) / 2,
            Kind::Directed => n * n.saturating_sub(1),
        }
    }

    /// The format name, as used by the CLI and in reports.
    pub fn name(self) -> &'static str {
        match self {
            Kind::Undirected => "graph",
            Kind::Directed => "digraph",
        }
    }

    /// The frozen slot order: undirected pairs (i, j) with i < j in
    /// lexicographic order, directed ordered pairs (i, j) with i != j in
    /// lexicographic order. Edge bitmasks are indexed by this order.
    pub fn slots(self, n: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(if n == 0 { 0 } else { self.slot_count(n) });
        match self {
            Kind::Undirected => {
                for i in 0..n {
                    for j in i + 1..n {
                        out.push((i, j));
                    }
                }
            }
            Kind::Directed => {
                for i in 0..n {
                    for j in 0..n {
                        if i != j {
                            out.push((i, j));
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    kind: Kind,
    n: u8,
    rows: [u16; MAX_VERTICES],
}

impl Graph {
    pub fn empty(kind: Kind, n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices {
                n,
                max: MAX_VERTICES,
            });
        }
        Ok(Graph {
            kind,
            n: n as u8,
            rows: [0; MAX_VERTICES],
        })
    }

    pub fn from_edges(kind: Kind, n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(kind, n)?;
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Builds a graph from an edge bitmask over the frozen slot order.
    pub fn from_edge_bits(kind: Kind, n: usize, bits: u128) -> Result<Self> {
        let mut g = Graph::empty(kind, n)?;
        let slots = kind.slots(n);
        if bits >> slots.len() != 0 {
            return Err(Error::InvalidArgument(format!(
                "edge bitmask has bits beyond the {} slots of a {kind:?} graph on {n} vertices",
                slots.len()
            )));
        }
        for (idx, &(u, v)) in slots.iter().enumerate() {
            if bits >> idx & 1 == 1 {
                g.set_arc(u, v);
                if kind == Kind::Undirected {
                    g.set_arc(v, u);
                }
            }
        }
        Ok(g)
    }

    pub(crate) fn from_rows(kind: Kind, n: usize, rows: [u16; MAX_VERTICES]) -> Self {
        let g = Graph {
            kind,
            n: n as u8,
            rows,
        };
        debug_assert!(g.well_formed());
        g
    }

    fn well_formed(&self) -> bool {
        let n = self.n();
        let range = if n == 0 { 0 } else { (1u16 << n) - 1 };
        for u in 0..MAX_VERTICES {
            let row = self.rows[u];
            if u >= n && row != 0 {
                return false;
            }
            if row & !range != 0 || (u < n && row >> u & 1 == 1) {
                return false;
            }
        }
        if self.kind == Kind::Undirected {
            for u in 0..n {
                for v in 0..n {
                    if self.has_arc(u, v) != self.has_arc(v, u) {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::InvalidArgument(format!(
                "edge ({u}, {v}) out of range for {n} vertices"
            )));
        }
        if u == v {
            return Err(Error::InvalidArgument(format!("loop at vertex {u}")));
        }
        if self.has_arc(u, v) {
            return Err(Error::InvalidArgument(format!(
                "duplicate edge ({u}, {v})"
            )));
        }
        self.set_arc(u, v);
        if self.kind == Kind::Undirected {
            self.set_arc(v, u);
        }
        Ok(())
    }

    fn set_arc(&mut self, u: usize, v: usize) {
        self.rows[u] |= 1 << v;
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        self.rows[u] >> v & 1 == 1
    }

    /// Out-neighbour bitmask of `u` (all neighbours for undirected graphs).
    pub fn out_mask(&self, u: usize) -> u16 {
        self.rows[u]
    }

    pub fn in_mask(&self, u: usize) -> u16 {
        let mut m = 0;
        for v in 0..self.n() {
            if self.has_arc(v, u) {
                m |= 1 << v;
            }
        }
        m
    }

    pub fn out_degree(&self, u: usize) -> usize {
        self.rows[u].count_ones() as usize
    }

    pub fn in_degree(&self, u: usize) -> usize {
        self.in_mask(u).count_ones() as usize
    }

    /// Edge count: unordered pairs for graphs, arcs for digraphs.
    pub fn edge_count(&self) -> usize {
        let bits: usize = (0..self.n()).map(|u| self.out_degree(u)).sum();
        match self.kind {
            Kind::Undirected => bits / 2,
            Kind::Directed => bits,
        }
    }

    /// Edge bitmask over the frozen slot order.
    pub fn edge_bits(&self) -> u128 {
        let mut bits = 0u128;
        for (idx, &(u, v)) in self.kind.slots(self.n()).iter().enumerate() {
            if self.has_arc(u, v) {
                bits |= 1 << idx;
            }
        }
        bits
    }

    /// Deletes vertex `v` and relabels the rest preserving order.
    pub fn vertex_deleted(&self, v: usize) -> Graph {
        let n = self.n();
        assert!(v < n, "vertex {v} out of range for {n} vertices");
        let low = if v == 0 { 0 } else { (1u16 << v) - 1 };
        let mut rows = [0u16; MAX_VERTICES];
        let mut w = 0;
        for u in 0..n {
            if u == v {
                continue;
            }
            let r = self.rows[u];
            rows[w] = (r & low) | ((r >> (v + 1)) << v);
            w += 1;
        }
        Graph::from_rows(self.kind, n - 1, rows)
    }

    /// Extracts the subgraph (vmask, emask) relabelled order-preserving.
    /// `emask` is indexed by this graph's slot order and must select edges
    /// with both ends inside `vmask`.
    pub fn extract_subgraph(&self, vmask: u16, emask: u128) -> Graph {
        let n = self.n();
        let mut map = [usize::MAX; MAX_VERTICES];
        let mut k = 0;
        for u in 0..n {
            if vmask >> u & 1 == 1 {
                map[u] = k;
                k += 1;
            }
        }
        let mut rows = [0u16; MAX_VERTICES];
        for (idx, &(u, v)) in self.kind.slots(n).iter().enumerate() {
            if emask >> idx & 1 == 1 {
                debug_assert!(vmask >> u & 1 == 1 && vmask >> v & 1 == 1);
                rows[map[u]] |= 1 << map[v];
                if self.kind == Kind::Undirected {
                    rows[map[v]] |= 1 << map[u];
                }
            }
        }
        Graph::from_rows(self.kind, k, rows)
    }

    /// Relabels vertices: `perm[old] = new`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let n = self.n();
        assert_eq!(perm.len(), n);
        let mut rows = [0u16; MAX_VERTICES];
        for u in 0..n {
            for v in 0..n {
                if self.has_arc(u, v) {
                    rows[perm[u]] |= 1 << perm[v];
                }
            }
        }
        Graph::from_rows(self.kind, n, rows)
    }

    /// Connectivity; weak connectivity for digraphs. Graphs on at most one
    /// vertex count as connected.
    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        let mut sym = [0u16; MAX_VERTICES];
        for u in 0..n {
            sym[u] |= self.rows[u];
            for v in 0..n {
                if self.has_arc(u, v) {
                    sym[v] |= 1 << u;
                }
            }
        }
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0;
            let mut f = frontier;
            while f != 0 {
                let u = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= sym[u] & !seen;
            }
            seen |= next;
            frontier = next;
        }
        seen == (1 << n) - 1
    }
}
