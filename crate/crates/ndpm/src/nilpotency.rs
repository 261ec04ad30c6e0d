//! Nilpotency of the product `Φ(N_n ⊗ 1)` over the finite basis.
//!
//! All coefficients of a positive observation are strictly positive and the
//! word's matrix is 0/1, so no cancellation can occur in powers of the
//! product: the product is nilpotent exactly when the directed graph
//! "basis vector → basis vectors with nonzero coefficient in its image"
//! is acyclic. [`is_nilpotent`] decides that by a memoized three-color
//! depth-first sweep over every basis vector, on a compiled integer-index
//! representation; [`is_nilpotent_matrix`] is the independent oracle: it
//! materializes the whole successor structure through the reference
//! vector-level semantics and runs a topological elimination instead.

use crate::algebra::Coeff;
use crate::integer::{build_graph, IntegerGraph, NodeFlavor};
use crate::machine::{run, Machine, PseudoConfig, Verdict};
use crate::observation::{
    apply_integer, apply_observation, BasisVector, M6Part, Observation, SlotWrite,
    StateBasisElement, Summand,
};
use crate::perm::Permutation;
use crate::words::{BinaryWord, Symbol};
use std::collections::VecDeque;
use thiserror::Error;

pub const DEFAULT_CAP: u64 = 5_000_000;

const MAX_ARITY: usize = 8; // position slots per vector (p + 1)

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CapacityError {
    #[error("basis has {dimension} vectors, over the cap of {cap}")]
    TooLarge { dimension: u128, cap: u64 },
    #[error("{arity} position slots exceed the supported {MAX_ARITY}")]
    TooManyPointers { arity: usize },
}

/// `D = 6 · (k+1)^{p+1} · (p+1)! · 6^p · |Q ∪ B|`, the number of distinct
/// basis vectors for `p` pointers, word length `k`, and the given control
/// count.
pub fn basis_dimension(p: usize, k: usize, n_controls: usize) -> u128 {
    let perm_count: usize = (1..=p + 1).product();
    let mut dimension = 6u128;
    for _ in 0..p + 1 {
        dimension *= (k + 1) as u128;
    }
    dimension *= perm_count as u128;
    for _ in 0..p {
        dimension *= 6u128;
    }
    dimension * n_controls as u128
}

/// Everything needed to run the basis dynamics of one `(observation, word)`
/// pair, with the successor map compiled down to integer arithmetic.
pub struct ProductDynamics {
    word: BinaryWord,
    graph: IntegerGraph,
    observation: Observation,
    p: usize,
    k: usize,
    n_controls: usize,
    perm_count: usize,
    dimension: u128,
    // matching partner per (flavor, slice), as (flavor index, slice)
    partner: Vec<Option<(u8, u16)>>,
    // σ rank -> σ⁻¹(0)
    sigma_inv0: Vec<u8>,
    // compiled summands grouped by source control index
    by_control: Vec<Vec<CompiledSummand>>,
}

struct CompiledSummand {
    source_mask: u8,
    diagonal: bool,
    targets: Vec<u8>,
    // σ rank -> rank of (perm ∘ σ)
    perm_table: Vec<u32>,
    // per memory slot: required symbol value (0/1/2) or 3 for any
    conds: Vec<u8>,
    to_control: u16,
    write: CompiledWrite,
}

#[derive(Clone, Copy)]
enum CompiledWrite {
    None,
    FromSource(u8),
    Fixed(u8, u8),
}

fn value_code(s: Symbol) -> u8 {
    match s {
        Symbol::Zero => 0,
        Symbol::One => 1,
        Symbol::Star => 2,
    }
}

const FLAVOR_VALUE_CODE: [u8; 6] = [0, 0, 1, 1, 2, 2];

impl ProductDynamics {
    pub fn new(observation: Observation, word: BinaryWord) -> Result<ProductDynamics, CapacityError> {
        let p = observation.pointer_count();
        let arity = p + 1;
        if arity > MAX_ARITY {
            return Err(CapacityError::TooManyPointers { arity });
        }
        let k = word.len();
        let n_controls = observation.space().control_count();
        let dimension = basis_dimension(p, k, n_controls);
        let graph = build_graph(&word);

        let mut partner = vec![None; 6 * (k + 1)];
        for f in NodeFlavor::ALL {
            for s in 0..=k {
                if let Some(q) =
                    crate::integer::integer_action(&graph, crate::integer::GraphNode::new(f, s))
                {
                    partner[f.index() * (k + 1) + s] = Some((q.flavor.index() as u8, q.slice as u16));
                }
            }
        }

        let perm_count: usize = (1..=arity).product();
        let perms: Vec<Permutation> =
            (0..perm_count).map(|r| Permutation::unrank(arity, r)).collect();
        let sigma_inv0: Vec<u8> = perms.iter().map(|s| s.inverse().apply(0)).collect();

        let mut by_control: Vec<Vec<CompiledSummand>> = (0..n_controls).map(|_| Vec::new()).collect();
        for s in observation.summands() {
            let compiled = compile_summand(s, &perms, observation.space());
            by_control[observation.space().control_index(s.from)].push(compiled);
        }

        Ok(ProductDynamics {
            word,
            graph,
            observation,
            p,
            k,
            n_controls,
            perm_count,
            dimension,
            partner,
            sigma_inv0,
            by_control,
        })
    }

    pub fn word(&self) -> &BinaryWord {
        &self.word
    }

    pub fn graph(&self) -> &IntegerGraph {
        &self.graph
    }

    pub fn observation(&self) -> &Observation {
        &self.observation
    }

    /// `D`, the number of distinct basis vectors.
    pub fn dimension(&self) -> u128 {
        self.dimension
    }

    pub fn encode(&self, v: &BasisVector) -> u64 {
        debug_assert_eq!(v.positions.len(), self.p + 1);
        let mut idx = v.pi.index() as u64;
        for &pos in &v.positions {
            idx = idx * (self.k as u64 + 1) + pos as u64;
        }
        idx = idx * self.perm_count as u64 + v.sigma.rank() as u64;
        for &slot in &v.state.slots {
            idx = idx * 6 + slot.index() as u64;
        }
        idx * self.n_controls as u64
            + self.observation.space().control_index(v.state.control) as u64
    }

    pub fn decode(&self, mut idx: u64) -> BasisVector {
        let control = self.observation.space().control_at((idx % self.n_controls as u64) as usize);
        idx /= self.n_controls as u64;
        let mut slots = vec![NodeFlavor::ZeroOut; self.p];
        for i in (0..self.p).rev() {
            slots[i] = NodeFlavor::ALL[(idx % 6) as usize];
            idx /= 6;
        }
        let sigma = Permutation::unrank(self.p + 1, (idx % self.perm_count as u64) as usize);
        idx /= self.perm_count as u64;
        let mut positions = vec![0u16; self.p + 1];
        for i in (0..self.p + 1).rev() {
            positions[i] = (idx % (self.k as u64 + 1)) as u16;
            idx /= self.k as u64 + 1;
        }
        let pi = NodeFlavor::ALL[idx as usize];
        BasisVector { pi, positions, sigma, state: StateBasisElement { slots, control } }
    }

    /// Successor indices of `idx` in the nonzero pattern of the product
    /// (word first, observation second), coefficients dropped.
    fn successors_into(&self, idx: u64, scratch: &mut Digits, out: &mut Vec<u64>) {
        out.clear();
        self.split(idx, scratch);
        // integer first: act on position slot σ⁻¹(0)
        let active = self.sigma_inv0[scratch.sigma as usize] as usize;
        let pos = scratch.positions[active] as usize;
        let Some((new_pi, new_pos)) = self.partner[scratch.pi as usize * (self.k + 1) + pos]
        else {
            return;
        };
        scratch.pi = new_pi;
        scratch.positions[active] = new_pos;
        // observation second
        for s in &self.by_control[scratch.control as usize] {
            if !s.diagonal && s.source_mask & (1 << scratch.pi) == 0 {
                continue;
            }
            let mut ok = true;
            for (i, &cond) in s.conds.iter().enumerate() {
                if cond != 3 && FLAVOR_VALUE_CODE[scratch.slots[i] as usize] != cond {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let new_sigma = s.perm_table[scratch.sigma as usize];
            let (write_slot, write_flavor) = match s.write {
                CompiledWrite::None => (usize::MAX, 0),
                CompiledWrite::FromSource(j) => (j as usize - 1, scratch.pi),
                CompiledWrite::Fixed(j, f) => (j as usize - 1, f),
            };
            let targets: &[u8] = if s.diagonal {
                std::slice::from_ref(&scratch.pi)
            } else {
                &s.targets
            };
            for &target in targets {
                let mut d = Digits {
                    pi: target,
                    positions: scratch.positions,
                    sigma: new_sigma,
                    slots: scratch.slots,
                    control: s.to_control,
                };
                if write_slot != usize::MAX {
                    d.slots[write_slot] = write_flavor;
                }
                out.push(self.join(&d));
            }
        }
    }

    fn split(&self, mut idx: u64, d: &mut Digits) {
        d.control = (idx % self.n_controls as u64) as u16;
        idx /= self.n_controls as u64;
        for i in (0..self.p).rev() {
            d.slots[i] = (idx % 6) as u8;
            idx /= 6;
        }
        d.sigma = (idx % self.perm_count as u64) as u32;
        idx /= self.perm_count as u64;
        for i in (0..self.p + 1).rev() {
            d.positions[i] = (idx % (self.k as u64 + 1)) as u16;
            idx /= self.k as u64 + 1;
        }
        d.pi = idx as u8;
    }

    fn join(&self, d: &Digits) -> u64 {
        let mut idx = d.pi as u64;
        for i in 0..self.p + 1 {
            idx = idx * (self.k as u64 + 1) + d.positions[i] as u64;
        }
        idx = idx * self.perm_count as u64 + d.sigma as u64;
        for i in 0..self.p {
            idx = idx * 6 + d.slots[i] as u64;
        }
        idx * self.n_controls as u64 + d.control as u64
    }
}

#[derive(Clone, Copy)]
struct Digits {
    pi: u8,
    positions: [u16; MAX_ARITY],
    sigma: u32,
    slots: [u8; MAX_ARITY],
    control: u16,
}

impl Digits {
    fn zero() -> Digits {
        Digits { pi: 0, positions: [0; MAX_ARITY], sigma: 0, slots: [0; MAX_ARITY], control: 0 }
    }
}

fn compile_summand(
    s: &Summand,
    perms: &[Permutation],
    space: &crate::observation::StateSpace,
) -> CompiledSummand {
    let (source_mask, targets, diagonal) = match &s.m6 {
        M6Part::Diagonal => (0u8, Vec::new(), true),
        M6Part::Cartesian { sources, targets } => {
            let mask = sources.iter().fold(0u8, |m, f| m | 1 << f.index());
            (mask, targets.iter().map(|f| f.index() as u8).collect(), false)
        }
    };
    CompiledSummand {
        source_mask,
        diagonal,
        targets,
        perm_table: perms.iter().map(|sig| s.perm.compose(sig).rank() as u32).collect(),
        conds: s.slot_conds.iter().map(|c| c.map_or(3, value_code)).collect(),
        to_control: space.control_index(s.to) as u16,
        write: match s.write {
            SlotWrite::None => CompiledWrite::None,
            SlotWrite::FromSource(j) => CompiledWrite::FromSource(j),
            SlotWrite::Fixed(j, f) => CompiledWrite::Fixed(j, f.index() as u8),
        },
    }
}

/// One application of the product to a basis vector, through the reference
/// vector-level semantics: the word acts first; if its matching misses, the
/// result is empty, otherwise the observation fires.
pub fn step_product(dyn_: &ProductDynamics, v: &BasisVector) -> Vec<(Coeff, BasisVector)> {
    match apply_integer(&dyn_.graph, v) {
        None => Vec::new(),
        Some(w) => apply_observation(&dyn_.observation, &w),
    }
}

/// Outcome of a nilpotency decision.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NilpotencyReport {
    pub nilpotent: bool,
    /// Least `d` with `(Φ(N ⊗ 1))^d = 0`; present when nilpotent.
    pub degree: Option<u64>,
    /// A concrete cycle of basis vectors; present when not nilpotent.
    pub cycle: Option<Vec<BasisVector>>,
    pub dimension: u128,
}

fn check_cap(dimension: u128, cap: u64) -> Result<usize, CapacityError> {
    if dimension > cap as u128 {
        return Err(CapacityError::TooLarge { dimension, cap });
    }
    Ok(dimension as usize)
}

/// Decides nilpotency by acyclicity of the nonzero-successor digraph:
/// coefficients are strictly positive, so powers cannot cancel and
/// `(Φ(N⊗1))^d = 0` iff no path of `d` edges exists. Every basis vector is
/// taken as a start; the three-color traversal memoizes across starts, so
/// the total work is linear in the edges. When nilpotent, the degree is one
/// more than the longest path; otherwise a concrete cycle is returned.
pub fn is_nilpotent(dyn_: &ProductDynamics, cap: u64) -> Result<NilpotencyReport, CapacityError> {
    let d = check_cap(dyn_.dimension(), cap)?;
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; d];
    let mut longest = vec![0u32; d];
    let mut scratch = Digits::zero();
    let mut succ_buf: Vec<u64> = Vec::new();
    // DFS stack of (node, next child position); successor lists are cheap
    // to recompute, which keeps frames constant-size on deep chains
    let mut stack: Vec<(u64, u32)> = Vec::new();
    let mut max_path = 0u64;

    for root in 0..d as u64 {
        if color[root as usize] != WHITE {
            continue;
        }
        color[root as usize] = GRAY;
        stack.push((root, 0));
        while let Some(&(node, pos)) = stack.last() {
            dyn_.successors_into(node, &mut scratch, &mut succ_buf);
            if (pos as usize) < succ_buf.len() {
                let child = succ_buf[pos as usize];
                stack.last_mut().unwrap().1 += 1;
                match color[child as usize] {
                    GRAY => {
                        // back edge: the stack from `child` onward is a cycle
                        let start = stack.iter().position(|&(n, _)| n == child).unwrap();
                        let cycle = stack[start..].iter().map(|&(n, _)| dyn_.decode(n)).collect();
                        return Ok(NilpotencyReport {
                            nilpotent: false,
                            degree: None,
                            cycle: Some(cycle),
                            dimension: dyn_.dimension(),
                        });
                    }
                    WHITE => {
                        color[child as usize] = GRAY;
                        stack.push((child, 0));
                    }
                    _ => {}
                }
            } else {
                let best = succ_buf
                    .iter()
                    .map(|&c| longest[c as usize] + 1)
                    .max()
                    .unwrap_or(0);
                longest[node as usize] = best;
                color[node as usize] = BLACK;
                max_path = max_path.max(best as u64);
                stack.pop();
            }
        }
    }

    Ok(NilpotencyReport {
        nilpotent: true,
        degree: Some(max_path + 1),
        cycle: None,
        dimension: dyn_.dimension(),
    })
}

/// Independent oracle: materializes the complete successor structure over
/// every basis vector using the reference vector semantics (exact rational
/// weights, dropped only after checking positivity), then decides
/// acyclicity by topological elimination.
pub fn is_nilpotent_matrix(dyn_: &ProductDynamics, cap: u64) -> Result<bool, CapacityError> {
    let d = check_cap(dyn_.dimension(), cap)?;
    // CSR successor structure
    let mut offsets = vec![0u32; d + 1];
    let mut edges: Vec<u32> = Vec::new();
    for idx in 0..d as u64 {
        let v = dyn_.decode(idx);
        for (coeff, w) in step_product(dyn_, &v) {
            assert!(coeff > Coeff::default(), "positive observations only");
            edges.push(dyn_.encode(&w) as u32);
        }
        offsets[idx as usize + 1] = edges.len() as u32;
    }
    // Kahn elimination
    let mut indegree = vec![0u32; d];
    for &e in &edges {
        indegree[e as usize] += 1;
    }
    let mut queue: VecDeque<u32> = (0..d as u32).filter(|&v| indegree[v as usize] == 0).collect();
    let mut removed = 0usize;
    while let Some(v) = queue.pop_front() {
        removed += 1;
        let lo = offsets[v as usize] as usize;
        let hi = offsets[v as usize + 1] as usize;
        for &w in &edges[lo..hi] {
            indegree[w as usize] -= 1;
            if indegree[w as usize] == 0 {
                queue.push_back(w);
            }
        }
    }
    Ok(removed == d)
}

/// Confirms a nilpotency verdict by repeated boolean sparse squaring:
/// the pattern of `(Φ(N⊗1))^D` must vanish iff the product is nilpotent.
/// Only for small instances.
pub fn power_vanishes(dyn_: &ProductDynamics, cap: u64) -> Result<bool, CapacityError> {
    let d = check_cap(dyn_.dimension(), cap)?;
    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(d);
    for idx in 0..d as u64 {
        let v = dyn_.decode(idx);
        let mut row: Vec<u32> = step_product(dyn_, &v)
            .into_iter()
            .map(|(_, w)| dyn_.encode(&w) as u32)
            .collect();
        row.sort_unstable();
        row.dedup();
        rows.push(row);
    }
    let mut power = 1u128;
    let mut current = rows;
    while power < dyn_.dimension() {
        if current.iter().all(|r| r.is_empty()) {
            return Ok(true);
        }
        // square the boolean pattern
        let mut next: Vec<Vec<u32>> = Vec::with_capacity(d);
        for r in 0..d {
            let mut row: Vec<u32> = current[r]
                .iter()
                .flat_map(|&m| current[m as usize].iter().copied())
                .collect();
            row.sort_unstable();
            row.dedup();
            next.push(row);
        }
        current = next;
        power *= 2;
    }
    Ok(current.iter().all(|r| r.is_empty()))
}

/// Simulator-versus-operator comparison for one `(machine, c, word)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossvalReport {
    pub verdict: Verdict,
    pub nilpotent: bool,
    pub degree: Option<u64>,
    pub dimension: u128,
    /// Simulator accepts iff the product is nilpotent.
    pub consistent: bool,
    /// Degree within the basis dimension whenever nilpotent.
    pub degree_bounded: bool,
}

#[derive(Debug, Error)]
pub enum CrossvalError {
    #[error(transparent)]
    Encode(#[from] crate::observation::EncodeError),
    #[error(transparent)]
    Capacity(#[from] CapacityError),
}

/// Runs the simulator and the nilpotency decision side by side. The machine
/// must be one-movement and halt from every configuration on the word.
pub fn crossval(
    machine: &Machine,
    c: &PseudoConfig,
    word: &BinaryWord,
    cap: u64,
) -> Result<CrossvalReport, CrossvalError> {
    let verdict = run(machine, c, word).verdict;
    let obs = crate::observation::encode_machine(machine, c)?;
    let dynamics = ProductDynamics::new(obs, word.clone())?;
    let report = is_nilpotent(&dynamics, cap)?;
    let consistent = (verdict == Verdict::Accept) == report.nilpotent;
    let degree_bounded = report
        .degree
        .map_or(!report.nilpotent, |deg| (deg as u128) <= report.dimension);
    Ok(CrossvalReport {
        verdict,
        nilpotent: report.nilpotent,
        degree: report.degree,
        dimension: report.dimension,
        consistent,
        degree_bounded,
    })
}
