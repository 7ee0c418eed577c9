//! The descent order on maximal chains.
//!
//! A polygon move replaces the middle element of a height-2 subinterval at a
//! descent by the ascending re-traversal — on a graded lattice of flats this
//! is exactly the T move of [`crate::descent_path`]. [`DescentOrder`] is the
//! transitive closure of these moves, a partial order whose minimum is the
//! ascending chain; its Hasse diagram is computed by transitive reduction and
//! can be compared edge-for-edge against the lexicographic orientation.

use std::collections::VecDeque;

use crate::chain_graph::GlexGraph;
use crate::descent_path::apply_t;
use crate::labeling::{label_sequence, AtomOrder, MaximalChain};
use crate::lattice::FlatsLattice;
use crate::{Caps, Error};

/// All single polygon moves available from `chain`, as (rank, result).
pub fn polygon_moves(
    lattice: &FlatsLattice,
    ord: &AtomOrder,
    chain: &MaximalChain,
) -> Vec<(usize, MaximalChain)> {
    label_sequence(lattice, ord, chain)
        .descents(ord)
        .into_iter()
        .map(|rank| {
            let moved = apply_t(lattice, ord, chain, rank).expect("descents admit the T move");
            (rank, moved)
        })
        .collect()
}

/// Fixed-width bitset rows over the chain indices.
fn words(len: usize) -> usize {
    len.div_ceil(64)
}

fn get(row: &[u64], i: usize) -> bool {
    row[i / 64] & (1 << (i % 64)) != 0
}

fn set(row: &mut [u64], i: usize) {
    row[i / 64] |= 1 << (i % 64);
}

/// The partial order generated by polygon moves; `a ≤ b` when a is reachable
/// from b, so the ascending chain is the minimum.
#[derive(Clone, Debug)]
pub struct DescentOrder {
    chains: Vec<MaximalChain>,
    moves: Vec<Vec<usize>>,
    /// reach[u] = vertices reachable from u by moves, including u.
    reach: Vec<Vec<u64>>,
}

impl DescentOrder {
    pub fn build(lattice: &FlatsLattice, ord: &AtomOrder, caps: &Caps) -> Result<DescentOrder, Error> {
        // The move targets coincide with the lexicographic orientation's
        // edges; reuse its chain enumeration and move computation.
        let glex = GlexGraph::build(lattice, ord, caps)?;
        let chains = glex.chains().to_vec();
        let moves: Vec<Vec<usize>> = (0..glex.len())
            .map(|u| glex.edges(u).iter().map(|e| e.to).collect())
            .collect();
        let n = chains.len();
        let mut reach = Vec::with_capacity(n);
        for start in 0..n {
            let mut row = vec![0u64; words(n)];
            set(&mut row, start);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &moves[u] {
                    if !get(&row, v) {
                        set(&mut row, v);
                        queue.push_back(v);
                    }
                }
            }
            reach.push(row);
        }
        for a in 0..n {
            for b in a + 1..n {
                if get(&reach[a], b) && get(&reach[b], a) {
                    return Err(Error::NotAntisymmetric {
                        a: chains[a].render(lattice),
                        b: chains[b].render(lattice),
                    });
                }
            }
        }
        Ok(DescentOrder { chains, moves, reach })
    }

    pub fn len(&self) -> usize {
        self.chains.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chains.is_empty()
    }

    pub fn chains(&self) -> &[MaximalChain] {
        &self.chains
    }

    pub fn chain(&self, i: usize) -> &MaximalChain {
        &self.chains[i]
    }

    pub fn index_of(&self, chain: &MaximalChain) -> Option<usize> {
        self.chains.iter().position(|c| c == chain)
    }

    /// a ≤ b: a is reachable from b by polygon moves (reflexive).
    pub fn le(&self, a: usize, b: usize) -> bool {
        get(&self.reach[b], a)
    }

    /// Elements with no strictly smaller element (no available move).
    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.moves[u].is_empty()).collect()
    }

    /// Cover pairs (upper, lower) of the Hasse diagram: b ⋗ a with nothing
    /// strictly between, found by transitive reduction of the closure.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for b in 0..n {
            'candidates: for a in 0..n {
                if a == b || !get(&self.reach[b], a) {
                    continue;
                }
                for c in 0..n {
                    if c != a && c != b && get(&self.reach[b], c) && get(&self.reach[c], a) {
                        continue 'candidates;
                    }
                }
                edges.push((b, a));
            }
        }
        edges.sort_unstable();
        edges
    }

    /// Compare the Hasse diagram with a lexicographic orientation built over
    /// the same lattice and order (both use the canonical chain numbering).
    pub fn compare_glex(&self, glex: &GlexGraph) -> GlexComparison {
        assert_eq!(self.len(), glex.len(), "graphs must be over the same chains");
        let hasse = self.hasse_edges();
        let glex_edges = glex.edge_pairs();
        let missing_from_hasse: Vec<(usize, usize)> =
            glex_edges.iter().copied().filter(|e| !hasse.contains(e)).collect();
        let missing_from_glex: Vec<(usize, usize)> =
            hasse.iter().copied().filter(|e| !glex_edges.contains(e)).collect();
        GlexComparison { hasse_edges: hasse, glex_edges, missing_from_hasse, missing_from_glex }
    }

    /// Hasse diagram in DOT, upper chain above lower.
    pub fn dot(&self, lattice: &FlatsLattice) -> String {
        let mut out = String::from(
            "digraph descent_order {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n",
        );
        for (i, chain) in self.chains.iter().enumerate() {
            out.push_str(&format!("  c{i} [label=\"{}\"];\n", chain.render(lattice)));
        }
        for (upper, lower) in self.hasse_edges() {
            out.push_str(&format!("  c{lower} -> c{upper};\n"));
        }
        out.push_str("}\n");
        out
    }
}

/// Edge-for-edge comparison of Hasse(descent order) with the orientation.
#[derive(Clone, Debug)]
pub struct GlexComparison {
    pub hasse_edges: Vec<(usize, usize)>,
    pub glex_edges: Vec<(usize, usize)>,
    pub missing_from_hasse: Vec<(usize, usize)>,
    pub missing_from_glex: Vec<(usize, usize)>,
}

impl GlexComparison {
    pub fn equal(&self) -> bool {
        self.missing_from_hasse.is_empty() && self.missing_from_glex.is_empty()
    }
}
