//! Graph and matrix representations of binary words.
//!
//! A word `⋆a₁…a_k` becomes a perfect matching on flavored nodes: every
//! letter owns an input and an output node in its own slice, the output of
//! each letter is linked to the input of its successor, and the `⋆` cell
//! closes the cycle through its two distinguished nodes `S` (start, the
//! output side of `⋆`) and `E` (end, the input side). The first letter sits
//! in slice `k` and the scanning descends to slice 1, as in the source
//! figures. The matrix form stores the same matching as eight `(k+1)×(k+1)`
//! 0/1 blocks arranged in a symmetric 6×6 block layout.

use crate::words::{BinaryWord, Bit};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

/// The six node flavors: input/output doors of the two letters plus the two
/// doors of the `⋆` cell (`S = ⋆o`, `E = ⋆i`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NodeFlavor {
    ZeroOut,
    ZeroIn,
    OneOut,
    OneIn,
    S,
    E,
}

impl NodeFlavor {
    /// Basis order of the 6-dimensional component: `(0o, 0i, 1o, 1i, S, E)`.
    pub const ALL: [NodeFlavor; 6] = [
        NodeFlavor::ZeroOut,
        NodeFlavor::ZeroIn,
        NodeFlavor::OneOut,
        NodeFlavor::OneIn,
        NodeFlavor::S,
        NodeFlavor::E,
    ];

    pub fn index(self) -> usize {
        match self {
            NodeFlavor::ZeroOut => 0,
            NodeFlavor::ZeroIn => 1,
            NodeFlavor::OneOut => 2,
            NodeFlavor::OneIn => 3,
            NodeFlavor::S => 4,
            NodeFlavor::E => 5,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            NodeFlavor::ZeroOut => "0o",
            NodeFlavor::ZeroIn => "0i",
            NodeFlavor::OneOut => "1o",
            NodeFlavor::OneIn => "1i",
            NodeFlavor::S => "S",
            NodeFlavor::E => "E",
        }
    }

    /// Output door of a letter. `S` plays that role for `⋆`.
    pub fn out_door(bit: Option<Bit>) -> NodeFlavor {
        match bit {
            Some(Bit::Zero) => NodeFlavor::ZeroOut,
            Some(Bit::One) => NodeFlavor::OneOut,
            None => NodeFlavor::S,
        }
    }

    /// Input door of a letter. `E` plays that role for `⋆`.
    pub fn in_door(bit: Option<Bit>) -> NodeFlavor {
        match bit {
            Some(Bit::Zero) => NodeFlavor::ZeroIn,
            Some(Bit::One) => NodeFlavor::OneIn,
            None => NodeFlavor::E,
        }
    }

    pub fn is_output(self) -> bool {
        matches!(self, NodeFlavor::ZeroOut | NodeFlavor::OneOut | NodeFlavor::S)
    }
}

/// A flavored node in a slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphNode {
    pub flavor: NodeFlavor,
    pub slice: usize,
}

impl GraphNode {
    pub fn new(flavor: NodeFlavor, slice: usize) -> Self {
        GraphNode { flavor, slice }
    }
}

/// The axiom-link matching of a word: an involutive partial pairing on
/// `6(k+1)` nodes with `k + 1` edges for `k >= 1` and one edge for `k = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerGraph {
    k: usize,
    partner: BTreeMap<GraphNode, GraphNode>,
}

impl IntegerGraph {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Edges as normalized (min, max) pairs.
    pub fn edges(&self) -> Vec<(GraphNode, GraphNode)> {
        self.partner
            .iter()
            .filter(|(a, b)| a <= b)
            .map(|(a, b)| (*a, *b))
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn contains_edge(&self, a: GraphNode, b: GraphNode) -> bool {
        self.partner.get(&a) == Some(&b)
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph integer {\n");
        for (a, b) in self.edges() {
            let _ = writeln!(
                s,
                "  \"{}_{}\" -- \"{}_{}\";",
                a.flavor.label(),
                a.slice,
                b.flavor.label(),
                b.slice
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Builds the slice graph of a word. The first letter is entered from
/// `(S,0)` at slice `k`, each letter's output is linked to its successor's
/// input one slice below, and the last letter (slice 1) exits to `(E,0)`.
/// The empty list is the single edge `(S,0) – (E,0)`.
pub fn build_graph(word: &BinaryWord) -> IntegerGraph {
    let k = word.len();
    let mut partner = BTreeMap::new();
    let mut link = |a: GraphNode, b: GraphNode| {
        partner.insert(a, b);
        partner.insert(b, a);
    };
    if k == 0 {
        link(
            GraphNode::new(NodeFlavor::S, 0),
            GraphNode::new(NodeFlavor::E, 0),
        );
        return IntegerGraph { k, partner };
    }
    link(
        GraphNode::new(NodeFlavor::S, 0),
        GraphNode::new(NodeFlavor::in_door(Some(word.bit(1))), k),
    );
    for t in 1..k {
        link(
            GraphNode::new(NodeFlavor::out_door(Some(word.bit(t))), k + 1 - t),
            GraphNode::new(NodeFlavor::in_door(Some(word.bit(t + 1))), k - t),
        );
    }
    link(
        GraphNode::new(NodeFlavor::out_door(Some(word.bit(k))), 1),
        GraphNode::new(NodeFlavor::E, 0),
    );
    IntegerGraph { k, partner }
}

/// The matching partner of `node`, or `None` when the node is untouched by
/// the matching. A partial involution with domain size `2(k+1)` for `k >= 1`.
pub fn integer_action(graph: &IntegerGraph, node: GraphNode) -> Option<GraphNode> {
    debug_assert!(node.slice <= graph.k);
    graph.partner.get(&node).copied()
}

/// A sparse 0/1 table indexed by slices.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseTable {
    entries: Vec<(usize, usize)>,
}

impl SparseTable {
    pub fn new(mut entries: Vec<(usize, usize)>) -> Self {
        entries.sort_unstable();
        entries.dedup();
        SparseTable { entries }
    }

    pub fn entries(&self) -> &[(usize, usize)] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn contains(&self, r: usize, c: usize) -> bool {
        self.entries.binary_search(&(r, c)).is_ok()
    }

    pub fn transpose(&self) -> SparseTable {
        SparseTable::new(self.entries.iter().map(|&(r, c)| (c, r)).collect())
    }

    pub fn union(&self, other: &SparseTable) -> SparseTable {
        let mut e = self.entries.clone();
        e.extend_from_slice(&other.entries);
        SparseTable::new(e)
    }

    fn remove(&mut self, r: usize, c: usize) -> bool {
        if let Ok(i) = self.entries.binary_search(&(r, c)) {
            self.entries.remove(i);
            true
        } else {
            false
        }
    }

    fn insert(&mut self, r: usize, c: usize) {
        if let Err(i) = self.entries.binary_search(&(r, c)) {
            self.entries.insert(i, (r, c));
        }
    }
}

/// Exact integer-valued product of 0/1 tables, so that repeated entries are
/// visible (a product of partial permutation tables must stay 0/1).
fn multiply_counting(a: &BTreeMap<(usize, usize), u64>, b: &SparseTable) -> BTreeMap<(usize, usize), u64> {
    let mut out = BTreeMap::new();
    for (&(ar, ac), &av) in a {
        for &(br, bc) in b.entries() {
            if ac == br {
                *out.entry((ar, bc)).or_insert(0) += av;
            }
        }
    }
    out
}

/// Which of the eight stored blocks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Block {
    L(Bit, Bit),
    S(Bit),
    E(Bit),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MatrixError {
    #[error("the matricial representation excludes the empty list (k = 0)")]
    EmptyWord,
}

/// The 6×6 block matrix of a word: eight sparse `(k+1)×(k+1)` 0/1 blocks.
/// The adjoint blocks of the layout are derived as transposes, never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    word: BinaryWord,
    l: [[SparseTable; 2]; 2],
    s: [SparseTable; 2],
    e: [SparseTable; 2],
}

fn bit_idx(b: Bit) -> usize {
    match b {
        Bit::Zero => 0,
        Bit::One => 1,
    }
}

impl IntegerMatrix {
    pub fn k(&self) -> usize {
        self.word.len()
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn block(&self, which: Block) -> &SparseTable {
        match which {
            Block::L(u, v) => &self.l[bit_idx(u)][bit_idx(v)],
            Block::S(v) => &self.s[bit_idx(v)],
            Block::E(u) => &self.e[bit_idx(u)],
        }
    }

    pub fn block_mut(&mut self, which: Block) -> &mut SparseTable {
        match which {
            Block::L(u, v) => &mut self.l[bit_idx(u)][bit_idx(v)],
            Block::S(v) => &mut self.s[bit_idx(v)],
            Block::E(u) => &mut self.e[bit_idx(u)],
        }
    }

    /// Clears one entry of a block; used by mutation tests.
    pub fn clear_entry(&mut self, which: Block, r: usize, c: usize) -> bool {
        self.block_mut(which).remove(r, c)
    }

    /// Sets one entry of a block; used by mutation tests.
    pub fn set_entry(&mut self, which: Block, r: usize, c: usize) {
        self.block_mut(which).insert(r, c);
    }

    /// The full `6(k+1)`-square matrix, flavor-major: index
    /// `flavor.index() * (k+1) + slice`.
    pub fn assemble(&self) -> Vec<Vec<u8>> {
        let k = self.k();
        let dim = 6 * (k + 1);
        let mut m = vec![vec![0u8; dim]; dim];
        let idx = |f: NodeFlavor, s: usize| f.index() * (k + 1) + s;
        let mut put = |f1: NodeFlavor, s1: usize, f2: NodeFlavor, s2: usize| {
            m[idx(f1, s1)][idx(f2, s2)] = 1;
            m[idx(f2, s2)][idx(f1, s1)] = 1;
        };
        for u in [Bit::Zero, Bit::One] {
            for v in [Bit::Zero, Bit::One] {
                // (l_uv)_{a,b} = 1 iff the output door of v in slice a is
                // linked to the input door of u in slice b
                for &(a, b) in self.l[bit_idx(u)][bit_idx(v)].entries() {
                    put(
                        NodeFlavor::out_door(Some(v)),
                        a,
                        NodeFlavor::in_door(Some(u)),
                        b,
                    );
                }
            }
            for &(z, t) in self.s[bit_idx(u)].entries() {
                put(NodeFlavor::S, z, NodeFlavor::in_door(Some(u)), t);
            }
            for &(z, t) in self.e[bit_idx(u)].entries() {
                put(NodeFlavor::E, z, NodeFlavor::out_door(Some(u)), t);
            }
        }
        m
    }

    /// Coordinate triples `(row, col, 1)` of the assembled matrix.
    pub fn coordinate_triples(&self) -> Vec<(usize, usize)> {
        let m = self.assemble();
        let mut out = Vec::new();
        for (r, row) in m.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if v != 0 {
                    out.push((r, c));
                }
            }
        }
        out
    }
}

/// Reads the blocks off the slice graph:
/// `(l_uv)_{a,b} = 1` iff there is an edge `(vo,a)–(ui,b)`,
/// `(s_v)_{0,t} = 1` iff `(S,0)–(vi,t)`, and
/// `(e_u)_{0,t} = 1` iff `(uo,t)–(E,0)`.
pub fn build_matrix(word: &BinaryWord) -> Result<IntegerMatrix, MatrixError> {
    if word.is_empty() {
        return Err(MatrixError::EmptyWord);
    }
    let graph = build_graph(word);
    let mut m = IntegerMatrix {
        word: word.clone(),
        l: Default::default(),
        s: Default::default(),
        e: Default::default(),
    };
    for (a, b) in graph.edges() {
        let (out_node, in_node) = if a.flavor.is_output() { (a, b) } else { (b, a) };
        match (out_node.flavor, in_node.flavor) {
            (NodeFlavor::S, f) => {
                let v = match f {
                    NodeFlavor::ZeroIn => Bit::Zero,
                    NodeFlavor::OneIn => Bit::One,
                    NodeFlavor::E => continue, // k = 0 never reaches here
                    _ => unreachable!("S links only to input doors"),
                };
                m.s[bit_idx(v)].entries.push((0, in_node.slice));
            }
            (f, NodeFlavor::E) => {
                let u = match f {
                    NodeFlavor::ZeroOut => Bit::Zero,
                    NodeFlavor::OneOut => Bit::One,
                    _ => unreachable!("E links only to output doors"),
                };
                m.e[bit_idx(u)].entries.push((0, out_node.slice));
            }
            (vo, ui) => {
                let v = if vo == NodeFlavor::ZeroOut { Bit::Zero } else { Bit::One };
                let u = if ui == NodeFlavor::ZeroIn { Bit::Zero } else { Bit::One };
                m.l[bit_idx(u)][bit_idx(v)]
                    .entries
                    .push((out_node.slice, in_node.slice));
            }
        }
    }
    for table in m
        .l
        .iter_mut()
        .flatten()
        .chain(m.s.iter_mut())
        .chain(m.e.iter_mut())
    {
        table.entries.sort_unstable();
    }
    Ok(m)
}

/// Verifies the representation equations against the word.
///
/// (1) Every block must equal its sandwich `Σ_i π_{i+1} · block · π_i` over
/// the index set recomputed from the word (letter pairs for the `l` blocks,
/// the first letter for `s`, the last for `e`, with `π_{k+1} = π_0`), i.e.
/// carry no entry outside the slots the word allows.
/// (2) The product `(e₀+e₁) (Σ l_uv*)^{k-1} (s₀+s₁)*`, with the blocks
/// oriented along the scanning direction, must equal `π₀` as an exact 0/1
/// table.
pub fn check_representation(m: &IntegerMatrix) -> bool {
    let k = m.k();
    if k == 0 {
        return false;
    }
    let word = &m.word;

    // (1) support equations
    let sandwich = |table: &SparseTable, allowed: &[(usize, usize)]| -> bool {
        table.entries().iter().all(|e| allowed.contains(e))
    };
    for u in [Bit::Zero, Bit::One] {
        for v in [Bit::Zero, Bit::One] {
            // pair (a_i, a_{i+1}) = (v, u) sits between slices k-i and k+1-i
            let allowed: Vec<(usize, usize)> = (1..k)
                .filter(|&i| word.bit(i) == v && word.bit(i + 1) == u)
                .map(|i| (k + 1 - i, k - i))
                .collect();
            if !sandwich(m.block(Block::L(u, v)), &allowed) {
                return false;
            }
        }
        let s_allowed: Vec<(usize, usize)> =
            if word.bit(1) == u { vec![(0, k)] } else { vec![] };
        if !sandwich(m.block(Block::S(u)), &s_allowed) {
            return false;
        }
        let e_allowed: Vec<(usize, usize)> =
            if word.bit(k) == u { vec![(0, 1)] } else { vec![] };
        if !sandwich(m.block(Block::E(u)), &e_allowed) {
            return false;
        }
    }

    // (2) the π₀ product
    let e_sum = m.block(Block::E(Bit::Zero)).union(m.block(Block::E(Bit::One)));
    let mut l_sum = SparseTable::default();
    for u in [Bit::Zero, Bit::One] {
        for v in [Bit::Zero, Bit::One] {
            l_sum = l_sum.union(m.block(Block::L(u, v)));
        }
    }
    let l_dir = l_sum.transpose();
    let s_dir = m
        .block(Block::S(Bit::Zero))
        .union(m.block(Block::S(Bit::One)))
        .transpose();

    let mut product: BTreeMap<(usize, usize), u64> =
        e_sum.entries().iter().map(|&e| (e, 1)).collect();
    for _ in 0..k.saturating_sub(1) {
        product = multiply_counting(&product, &l_dir);
    }
    product = multiply_counting(&product, &s_dir);
    product == BTreeMap::from([((0usize, 0usize), 1u64)])
}
