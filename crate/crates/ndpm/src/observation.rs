//! Observations: matrices over the nonnegative group algebra of
//! permutations of `{0,…,p}`, tensored with the state algebra
//! `M₆(C)^⊗p ⊗ M_s(C)`, and the encoding of a one-movement machine as one.
//!
//! A basis vector `(π, a₀,…,a_p; σ; e)` carries the shared 6-flavor leg,
//! `p+1` tape positions, a permutation, and a state-basis element (memory
//! flavors plus control). The word acts first, always on position slot
//! `σ⁻¹(0)`, through its matching; the observation then fires every summand
//! whose premise matches. A machine transition becomes the two-beat
//! sequence `m` then `l`: `m` twists `σ` by `τ_{0,j}` so the matching's
//! next application moves pointer `j`'s node, sprays the departure doors
//! (the matching keeps the real one and kills the rest), and hands control
//! to the transition's own intermediate state; `l` reads the arrival door
//! into memory slot `j`, twists `σ` back, and resprays the flavor leg onto
//! the parking doors `{S, 0i, 1i}` so the off-beat application of the word
//! on slot `σ⁻¹(0)` always finds a matched node. Accept encodes as zero.
//! Reject hands control to a rewind loop that drags every pointer back to
//! `⋆` and restarts the machine in the chosen pseudo-configuration, which
//! keeps the product alive exactly when some branch genuinely rejects.

use crate::algebra::{Coeff, GroupAlgebraElement};
use crate::integer::{integer_action, GraphNode, IntegerGraph, NodeFlavor};
use crate::machine::{Machine, Outcome, PseudoConfig, StateId};
use crate::perm::Permutation;
use crate::words::Symbol;
use num_traits::One;
use std::collections::BTreeMap;
use std::fmt;
use thiserror::Error;

/// Flavors a pointer can park on between machine steps; exactly one of
/// them is matched at any position of any word.
pub const PARK_FLAVORS: [NodeFlavor; 3] =
    [NodeFlavor::S, NodeFlavor::ZeroIn, NodeFlavor::OneIn];

const OUT_FLAVORS: [NodeFlavor; 3] =
    [NodeFlavor::ZeroOut, NodeFlavor::OneOut, NodeFlavor::S];
const IN_FLAVORS: [NodeFlavor; 3] =
    [NodeFlavor::ZeroIn, NodeFlavor::OneIn, NodeFlavor::E];

/// The `[out]` constant: all-ones rows at the output flavors `0o, 1o, s`.
pub fn out_matrix() -> [[u8; 6]; 6] {
    let mut m = [[0u8; 6]; 6];
    for f in OUT_FLAVORS {
        m[f.index()] = [1; 6];
    }
    m
}

/// The `[in]` constant: all-ones rows at the input flavors `0i, 1i, e`.
pub fn in_matrix() -> [[u8; 6]; 6] {
    let mut m = [[0u8; 6]; 6];
    for f in IN_FLAVORS {
        m[f.index()] = [1; 6];
    }
    m
}

/// The symbol value a memory flavor stands for, forgetting the direction.
pub fn flavor_value(f: NodeFlavor) -> Symbol {
    match f {
        NodeFlavor::ZeroOut | NodeFlavor::ZeroIn => Symbol::Zero,
        NodeFlavor::OneOut | NodeFlavor::OneIn => Symbol::One,
        NodeFlavor::S | NodeFlavor::E => Symbol::Star,
    }
}

/// The output-flavored image of a pseudo-configuration symbol.
pub fn symbol_out_flavor(s: Symbol) -> NodeFlavor {
    match s {
        Symbol::Zero => NodeFlavor::ZeroOut,
        Symbol::One => NodeFlavor::OneOut,
        Symbol::Star => NodeFlavor::S,
    }
}

/// Control component of the state algebra basis: the machine states `Q`
/// plus the bookkeeping set `B` (one intermediate state per moving
/// transition and the rewind pair per pointer).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Control {
    Machine(StateId),
    Move(u32),
    Back(u8),
    MoveBack(u8),
}

/// Shape of the state algebra: dimension bookkeeping for `Q ∪ B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StateSpace {
    p: usize,
    state_names: Vec<String>,
    move_transitions: Vec<u32>,
}

impl StateSpace {
    pub fn for_machine(machine: &Machine) -> Result<StateSpace, EncodeError> {
        let mut move_transitions = Vec::new();
        for (i, t) in machine.transitions().iter().enumerate() {
            if let Outcome::Move { .. } = t.outcome {
                let count = t.moving_pointers().len();
                if count != 1 {
                    return Err(EncodeError::NotOneMove { index: i, count });
                }
                move_transitions.push(i as u32);
            }
        }
        Ok(StateSpace {
            p: machine.pointers(),
            state_names: machine.states().to_vec(),
            move_transitions,
        })
    }

    /// A free-standing state space, for observations built by hand rather
    /// than encoded from a machine.
    pub fn synthetic(p: usize, n_states: usize, n_moves: usize) -> StateSpace {
        StateSpace {
            p,
            state_names: (0..n_states).map(|i| format!("s{i}")).collect(),
            move_transitions: (0..n_moves as u32).collect(),
        }
    }

    pub fn pointer_count(&self) -> usize {
        self.p
    }

    /// `|Q ∪ B|`.
    pub fn control_count(&self) -> usize {
        self.state_names.len() + self.move_transitions.len() + 2 * self.p
    }

    pub fn control_index(&self, c: Control) -> usize {
        let q = self.state_names.len();
        let m = self.move_transitions.len();
        match c {
            Control::Machine(s) => s as usize,
            Control::Move(t) => {
                q + self
                    .move_transitions
                    .iter()
                    .position(|&x| x == t)
                    .expect("unknown move transition")
            }
            Control::Back(j) => q + m + (j as usize - 1),
            Control::MoveBack(j) => q + m + self.p + (j as usize - 1),
        }
    }

    pub fn control_at(&self, index: usize) -> Control {
        let q = self.state_names.len();
        let m = self.move_transitions.len();
        if index < q {
            Control::Machine(index as StateId)
        } else if index < q + m {
            Control::Move(self.move_transitions[index - q])
        } else if index < q + m + self.p {
            Control::Back((index - q - m + 1) as u8)
        } else {
            Control::MoveBack((index - q - m - self.p + 1) as u8)
        }
    }

    pub fn control_label(&self, c: Control) -> String {
        match c {
            Control::Machine(s) => self.state_names[s as usize].clone(),
            Control::Move(t) => format!("mv:{t}"),
            Control::Back(j) => format!("back:{j}"),
            Control::MoveBack(j) => format!("move-back:{j}"),
        }
    }
}

/// A state-algebra basis element: one memory flavor per pointer plus the
/// control. The state algebra has dimension `6^p · |Q ∪ B|`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateBasisElement {
    pub slots: Vec<NodeFlavor>,
    pub control: Control,
}

/// A basis vector of the finite product space.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BasisVector {
    pub pi: NodeFlavor,
    pub positions: Vec<u16>,
    pub sigma: Permutation,
    pub state: StateBasisElement,
}

/// The flavor-leg action of a summand.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum M6Part {
    /// Every (target, source) pair: fires on any listed source and branches
    /// to every listed target.
    Cartesian { sources: Vec<NodeFlavor>, targets: Vec<NodeFlavor> },
    /// The identity matrix.
    Diagonal,
}

impl M6Part {
    fn targets_for(&self, pi: NodeFlavor) -> &[NodeFlavor] {
        match self {
            M6Part::Cartesian { sources, targets } => {
                if sources.contains(&pi) {
                    targets
                } else {
                    &[]
                }
            }
            M6Part::Diagonal => std::slice::from_ref(flavor_singleton(pi)),
        }
    }
}

fn flavor_singleton(f: NodeFlavor) -> &'static NodeFlavor {
    match f {
        NodeFlavor::ZeroOut => &NodeFlavor::ZeroOut,
        NodeFlavor::ZeroIn => &NodeFlavor::ZeroIn,
        NodeFlavor::OneOut => &NodeFlavor::OneOut,
        NodeFlavor::OneIn => &NodeFlavor::OneIn,
        NodeFlavor::S => &NodeFlavor::S,
        NodeFlavor::E => &NodeFlavor::E,
    }
}

/// Memory-slot effect of a summand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SlotWrite {
    None,
    /// Slot `j` takes the flavor the summand fired on.
    FromSource(u8),
    Fixed(u8, NodeFlavor),
}

/// One operator term `u ⊗ λ(ν) ⊗ w` of an observation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub label: String,
    pub m6: M6Part,
    pub perm: Permutation,
    pub coeff: Coeff,
    /// Premise filter on memory slots, by symbol value (`π_{b·}` style).
    pub slot_conds: Vec<Option<Symbol>>,
    pub from: Control,
    pub to: Control,
    pub write: SlotWrite,
}

/// A square matrix over the group algebra, indexed by (flavor × state
/// basis), stored as a sum of structured terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    p: usize,
    space: StateSpace,
    summands: Vec<Summand>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EncodeError {
    #[error("transition {index} moves {count} pointers; the encoding needs exactly one per transition")]
    NotOneMove { index: usize, count: usize },
}

impl Observation {
    pub fn new(p: usize, space: StateSpace, summands: Vec<Summand>) -> Self {
        Observation { p, space, summands }
    }

    pub fn pointer_count(&self) -> usize {
        self.p
    }

    pub fn space(&self) -> &StateSpace {
        &self.space
    }

    pub fn summands(&self) -> &[Summand] {
        &self.summands
    }

    /// Membership in the boolean class: every coefficient exactly 1.
    pub fn is_boolean(&self) -> bool {
        self.summands.iter().all(|s| s.coeff.is_one())
    }

    /// The observation with every coefficient multiplied by `c > 0`.
    pub fn scaled(&self, c: &Coeff) -> Observation {
        let mut out = self.clone();
        for s in &mut out.summands {
            s.coeff = &s.coeff * c;
        }
        out
    }

    /// One line per flavor-leg entry of every summand, deterministic order.
    pub fn dump_lines(&self) -> Vec<String> {
        let mut lines = Vec::new();
        for s in &self.summands {
            let conds: Vec<String> = s
                .slot_conds
                .iter()
                .map(|c| c.map(|sym| sym.to_string()).unwrap_or_else(|| "*".into()))
                .collect();
            let writes: Vec<String> = (1..=self.p as u8)
                .map(|j| match s.write {
                    SlotWrite::FromSource(w) if w == j => "<src".into(),
                    SlotWrite::Fixed(w, f) if w == j => format!("<{}", f.label()),
                    _ => "_".into(),
                })
                .collect();
            let pairs: Vec<(NodeFlavor, NodeFlavor)> = match &s.m6 {
                M6Part::Diagonal => NodeFlavor::ALL.iter().map(|&f| (f, f)).collect(),
                M6Part::Cartesian { sources, targets } => sources
                    .iter()
                    .flat_map(|&src| targets.iter().map(move |&tgt| (tgt, src)))
                    .collect(),
            };
            for (tgt, src) in pairs {
                lines.push(format!(
                    "{}: ({}, [{}], {}) -> ({}, [{}], {})  {}  {}",
                    s.label,
                    src.label(),
                    conds.join(" "),
                    self.space.control_label(s.from),
                    tgt.label(),
                    writes.join(" "),
                    self.space.control_label(s.to),
                    s.perm,
                    s.coeff,
                ));
            }
        }
        lines
    }
}

impl fmt::Display for Observation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.dump_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Direction of the single move of a one-movement transition.
fn move_direction(machine: &Machine, t_idx: usize) -> (u8, bool) {
    if let Outcome::Move { instrs, .. } = &machine.transitions()[t_idx].outcome {
        for ins in instrs {
            match ins {
                crate::machine::Instruction::Forward(j) => return (*j, true),
                crate::machine::Instruction::Backward(j) => return (*j, false),
                crate::machine::Instruction::Stay(_) => {}
            }
        }
    }
    unreachable!("caller checked the transition moves exactly one pointer")
}

/// Encodes one transition of a one-movement machine as its operator
/// summands: the pointer-selection term `m` and one landing term `l` per
/// symbol. Accept transitions encode as zero (no summands); reject
/// transitions are handled by `encode_machine`'s rewind machinery.
pub fn encode_transition(
    machine: &Machine,
    t_idx: usize,
) -> Result<Vec<Summand>, EncodeError> {
    let t = &machine.transitions()[t_idx];
    let tau_size = machine.pointers() + 1;
    match &t.outcome {
        Outcome::Accept => Ok(Vec::new()),
        Outcome::Reject => Ok(vec![Summand {
            label: format!("rej[{t_idx}]"),
            m6: M6Part::Diagonal,
            perm: Permutation::identity(tau_size),
            coeff: Coeff::one(),
            slot_conds: t.reads.iter().map(|&s| Some(s)).collect(),
            from: Control::Machine(t.from),
            to: Control::Back(1),
            write: SlotWrite::None,
        }]),
        Outcome::Move { to, .. } => {
            let count = t.moving_pointers().len();
            if count != 1 {
                return Err(EncodeError::NotOneMove { index: t_idx, count });
            }
            let (j, forward) = move_direction(machine, t_idx);
            let tau = Permutation::transposition(tau_size, 0, j);
            let mut out = Vec::with_capacity(4);
            // departure spray: the matching keeps the pointer's real door
            out.push(Summand {
                label: format!("m[{t_idx}]"),
                m6: M6Part::Cartesian {
                    sources: NodeFlavor::ALL.to_vec(),
                    targets: if forward { OUT_FLAVORS.to_vec() } else { IN_FLAVORS.to_vec() },
                },
                perm: tau.clone(),
                coeff: Coeff::one(),
                slot_conds: t.reads.iter().map(|&s| Some(s)).collect(),
                from: Control::Machine(t.from),
                to: Control::Move(t_idx as u32),
                write: SlotWrite::None,
            });
            for b in [Symbol::Zero, Symbol::One, Symbol::Star] {
                let arrival = match (b, forward) {
                    (Symbol::Zero, true) => NodeFlavor::ZeroIn,
                    (Symbol::One, true) => NodeFlavor::OneIn,
                    (Symbol::Star, true) => NodeFlavor::E,
                    (Symbol::Zero, false) => NodeFlavor::ZeroOut,
                    (Symbol::One, false) => NodeFlavor::OneOut,
                    (Symbol::Star, false) => NodeFlavor::S,
                };
                out.push(Summand {
                    label: format!("l[{t_idx},{b}]"),
                    m6: M6Part::Cartesian {
                        sources: vec![arrival],
                        targets: PARK_FLAVORS.to_vec(),
                    },
                    perm: tau.clone(),
                    coeff: Coeff::one(),
                    slot_conds: vec![None; machine.pointers()],
                    from: Control::Move(t_idx as u32),
                    to: Control::Machine(*to),
                    write: SlotWrite::FromSource(j),
                });
            }
            Ok(out)
        }
    }
}

/// Encodes a one-movement machine with its distinguished
/// pseudo-configuration `c` as the sum of all transition encodings plus the
/// rewind loop `Σ_j (rm_j + rr_j + rc_j)` that reject premises enter at
/// `back_1`. The result is boolean: every coefficient is 1.
pub fn encode_machine(machine: &Machine, c: &PseudoConfig) -> Result<Observation, EncodeError> {
    let p = machine.pointers();
    let space = StateSpace::for_machine(machine)?;
    let tau_size = p + 1;
    let mut summands = Vec::new();
    for t_idx in 0..machine.transitions().len() {
        summands.extend(encode_transition(machine, t_idx)?);
    }
    for j in 1..=p as u8 {
        let tau = Permutation::transposition(tau_size, 0, j);
        summands.push(Summand {
            label: format!("rm[{j}]"),
            m6: M6Part::Cartesian {
                sources: NodeFlavor::ALL.to_vec(),
                targets: IN_FLAVORS.to_vec(),
            },
            perm: tau.clone(),
            coeff: Coeff::one(),
            slot_conds: vec![None; p],
            from: Control::Back(j),
            to: Control::MoveBack(j),
            write: SlotWrite::None,
        });
        summands.push(Summand {
            label: format!("rr[{j}]"),
            m6: M6Part::Cartesian {
                sources: vec![NodeFlavor::ZeroOut, NodeFlavor::OneOut],
                targets: PARK_FLAVORS.to_vec(),
            },
            perm: tau.clone(),
            coeff: Coeff::one(),
            slot_conds: vec![None; p],
            from: Control::MoveBack(j),
            to: Control::Back(j),
            write: SlotWrite::FromSource(j),
        });
        let to = if (j as usize) < p {
            Control::Back(j + 1)
        } else {
            Control::Machine(c.state)
        };
        summands.push(Summand {
            label: format!("rc[{j}]"),
            m6: M6Part::Cartesian {
                sources: vec![NodeFlavor::S],
                targets: PARK_FLAVORS.to_vec(),
            },
            perm: tau,
            coeff: Coeff::one(),
            slot_conds: vec![None; p],
            from: Control::MoveBack(j),
            to,
            write: SlotWrite::Fixed(j, symbol_out_flavor(c.slots[j as usize - 1])),
        });
    }
    Ok(Observation::new(p, space, summands))
}

/// Left translation: each term `(ν, α)` sends `σ` to `ν∘σ` with weight `α`.
pub fn apply_group_element(
    g: &GroupAlgebraElement,
    v: &BasisVector,
) -> Vec<(Coeff, BasisVector)> {
    g.terms()
        .map(|(nu, alpha)| {
            let mut w = v.clone();
            w.sigma = nu.compose(&v.sigma);
            (alpha.clone(), w)
        })
        .collect()
}

/// Acts the word's matching on the pair `(π, a_{σ⁻¹(0)})`: the unique
/// partner if the node is matched, nothing otherwise.
pub fn apply_integer(graph: &IntegerGraph, v: &BasisVector) -> Option<BasisVector> {
    let slot = v.sigma.inverse().apply(0) as usize;
    let node = GraphNode::new(v.pi, v.positions[slot] as usize);
    let partner = integer_action(graph, node)?;
    let mut w = v.clone();
    w.pi = partner.flavor;
    w.positions[slot] = partner.slice as u16;
    Some(w)
}

/// Fires every summand whose premise matches `v`; duplicate targets merge
/// by coefficient addition.
pub fn apply_observation(obs: &Observation, v: &BasisVector) -> Vec<(Coeff, BasisVector)> {
    debug_assert_eq!(v.positions.len(), obs.p + 1);
    let mut acc: BTreeMap<BasisVector, Coeff> = BTreeMap::new();
    for s in &obs.summands {
        if s.from != v.state.control {
            continue;
        }
        let premise_ok = s
            .slot_conds
            .iter()
            .zip(&v.state.slots)
            .all(|(cond, &slot)| cond.is_none_or(|sym| flavor_value(slot) == sym));
        if !premise_ok {
            continue;
        }
        for &target in s.m6.targets_for(v.pi) {
            let mut w = v.clone();
            w.pi = target;
            w.sigma = s.perm.compose(&v.sigma);
            w.state.control = s.to;
            match s.write {
                SlotWrite::None => {}
                SlotWrite::FromSource(j) => w.state.slots[j as usize - 1] = v.pi,
                SlotWrite::Fixed(j, f) => w.state.slots[j as usize - 1] = f,
            }
            let entry = acc.entry(w).or_insert_with(|| Coeff::one() - Coeff::one());
            *entry += &s.coeff;
        }
    }
    acc.into_iter().map(|(v, c)| (c, v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::integer::build_graph;
    use crate::machine::{Instruction, Transition};
    use crate::words::parse_word;

    fn sym(c: char) -> Symbol {
        match c {
            '0' => Symbol::Zero,
            '1' => Symbol::One,
            _ => Symbol::Star,
        }
    }

    fn slots(s: &str) -> Vec<Symbol> {
        s.chars().map(sym).collect()
    }

    #[test]
    fn out_and_in_are_complementary() {
        let out = out_matrix();
        let inn = in_matrix();
        assert_eq!(out[NodeFlavor::ZeroOut.index()], [1; 6]);
        assert_eq!(inn[NodeFlavor::ZeroOut.index()], [0; 6]);
        for r in 0..6 {
            for c in 0..6 {
                assert_eq!(out[r][c] + inn[r][c], 1);
            }
        }
    }

    fn one_pointer_machine(extra: Vec<Transition>) -> Machine {
        let mut ts = vec![Transition {
            reads: slots("⋆"),
            from: 0,
            outcome: Outcome::Move { instrs: vec![Instruction::Forward(1)], to: 1 },
        }];
        ts.extend(extra);
        Machine::new(1, vec!["q0".into(), "q1".into()], ts).unwrap()
    }

    #[test]
    fn accept_encodes_to_zero_summands() {
        let m = one_pointer_machine(vec![Transition {
            reads: slots("1"),
            from: 1,
            outcome: Outcome::Accept,
        }]);
        assert_eq!(encode_transition(&m, 1).unwrap().len(), 0);
    }

    #[test]
    fn forward_transition_yields_four_summands_with_out_spray() {
        // the departure spray of a forward move covers the output doors:
        // the matching then carries the pointer to the next input door,
        // which is what the landing terms project on
        let m = one_pointer_machine(vec![]);
        let ss = encode_transition(&m, 0).unwrap();
        assert_eq!(ss.len(), 4);
        match &ss[0].m6 {
            M6Part::Cartesian { targets, .. } => {
                assert_eq!(targets.as_slice(), &OUT_FLAVORS);
            }
            other => panic!("unexpected {other:?}"),
        }
        for l in &ss[1..] {
            match &l.m6 {
                M6Part::Cartesian { sources, .. } => {
                    assert!(matches!(
                        sources.as_slice(),
                        [NodeFlavor::ZeroIn] | [NodeFlavor::OneIn] | [NodeFlavor::E]
                    ));
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn backward_landing_terms_project_output_flavors() {
        let m = Machine::new(
            1,
            vec!["q0".into()],
            vec![Transition {
                reads: slots("⋆"),
                from: 0,
                outcome: Outcome::Move { instrs: vec![Instruction::Backward(1)], to: 0 },
            }],
        )
        .unwrap();
        let ss = encode_transition(&m, 0).unwrap();
        for l in &ss[1..] {
            match &l.m6 {
                M6Part::Cartesian { sources, .. } => {
                    assert!(matches!(
                        sources.as_slice(),
                        [NodeFlavor::ZeroOut] | [NodeFlavor::OneOut] | [NodeFlavor::S]
                    ));
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn multi_move_transition_is_rejected() {
        let m = Machine::new(
            2,
            vec!["q0".into()],
            vec![Transition {
                reads: slots("⋆⋆"),
                from: 0,
                outcome: Outcome::Move {
                    instrs: vec![Instruction::Forward(1), Instruction::Forward(2)],
                    to: 0,
                },
            }],
        )
        .unwrap();
        assert_eq!(
            encode_transition(&m, 0),
            Err(EncodeError::NotOneMove { index: 0, count: 2 })
        );
    }

    #[test]
    fn stay_only_transition_is_rejected() {
        // a transition that moves nothing has no word application to pair
        // with; the normalizer fuses these away before encoding
        let m = Machine::new(
            1,
            vec!["q0".into(), "q1".into()],
            vec![Transition {
                reads: slots("⋆"),
                from: 0,
                outcome: Outcome::Move { instrs: vec![Instruction::Stay(1)], to: 1 },
            }],
        )
        .unwrap();
        let c = PseudoConfig::new(slots("⋆"), 0);
        assert_eq!(
            encode_machine(&m, &c),
            Err(EncodeError::NotOneMove { index: 0, count: 0 })
        );
    }

    #[test]
    fn empty_relation_machine_encodes_to_the_rewind_loop_only() {
        let m = Machine::new(1, vec!["q0".into()], vec![]).unwrap();
        let c = PseudoConfig::new(slots("⋆"), 0);
        let obs = encode_machine(&m, &c).unwrap();
        assert_eq!(obs.summands().len(), 3); // rm, rr, rc for the one pointer
        assert!(obs.is_boolean());
    }

    #[test]
    fn summand_count_is_linear_in_transitions() {
        // 4 per moving transition, 3p for the rewind loop, 1 per reject premise
        let m = one_pointer_machine(vec![Transition {
            reads: slots("0"),
            from: 1,
            outcome: Outcome::Reject,
        }]);
        let c = PseudoConfig::new(slots("⋆"), 0);
        let obs = encode_machine(&m, &c).unwrap();
        assert_eq!(obs.summands().len(), 4 + 3 + 1);
    }

    #[test]
    fn reject_premises_map_to_back_one() {
        let m = one_pointer_machine(vec![Transition {
            reads: slots("0"),
            from: 1,
            outcome: Outcome::Reject,
        }]);
        let ss = encode_transition(&m, 1).unwrap();
        assert_eq!(ss.len(), 1);
        assert_eq!(ss[0].from, Control::Machine(1));
        assert_eq!(ss[0].to, Control::Back(1));
        assert!(ss[0].perm.is_identity());
    }

    fn vector(
        pi: NodeFlavor,
        positions: Vec<u16>,
        sigma: Permutation,
        mem: Vec<NodeFlavor>,
        control: Control,
    ) -> BasisVector {
        BasisVector { pi, positions, sigma, state: StateBasisElement { slots: mem, control } }
    }

    #[test]
    fn group_element_translates_sigma_on_the_left() {
        let t = Permutation::transposition(2, 0, 1);
        let g = GroupAlgebraElement::unit(t.clone());
        let v = vector(
            NodeFlavor::S,
            vec![0, 0],
            Permutation::identity(2),
            vec![NodeFlavor::S],
            Control::Machine(0),
        );
        let out = apply_group_element(&g, &v);
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].1.sigma, t.clone());
        // applying the same transposition twice restores σ
        let back = apply_group_element(&g, &out[0].1);
        assert_eq!(back[0].1.sigma, v.sigma);
    }

    #[test]
    fn identity_element_is_neutral() {
        let g = GroupAlgebraElement::unit(Permutation::identity(2));
        let v = vector(
            NodeFlavor::E,
            vec![1, 0],
            Permutation::identity(2),
            vec![NodeFlavor::ZeroIn],
            Control::Machine(0),
        );
        let out = apply_group_element(&g, &v);
        assert_eq!(out, vec![(Coeff::one(), v)]);
    }

    #[test]
    fn two_term_element_branches() {
        let g = GroupAlgebraElement::unit(Permutation::transposition(3, 0, 1))
            .add(&GroupAlgebraElement::unit(Permutation::transposition(3, 0, 2)));
        let v = vector(
            NodeFlavor::S,
            vec![0, 0, 0],
            Permutation::identity(3),
            vec![NodeFlavor::S, NodeFlavor::S],
            Control::Machine(0),
        );
        assert_eq!(apply_group_element(&g, &v).len(), 2);
    }

    #[test]
    fn integer_acts_on_the_twisted_slot() {
        let word = parse_word("0").unwrap();
        let graph = build_graph(&word);
        // σ = id: slot 0 is active; (S, 0) pairs with (0i, 1)
        let v = vector(
            NodeFlavor::S,
            vec![0, 0],
            Permutation::identity(2),
            vec![NodeFlavor::S],
            Control::Machine(0),
        );
        let w = apply_integer(&graph, &v).unwrap();
        assert_eq!(w.pi, NodeFlavor::ZeroIn);
        assert_eq!(w.positions, vec![1, 0]);

        // unmatched node: nothing
        let dead = vector(
            NodeFlavor::OneOut,
            vec![1, 0],
            Permutation::identity(2),
            vec![NodeFlavor::S],
            Control::Machine(0),
        );
        assert!(apply_integer(&graph, &dead).is_none());

        // σ = τ₀₁: slot 1 is the acted one
        let v = vector(
            NodeFlavor::S,
            vec![1, 0],
            Permutation::transposition(2, 0, 1),
            vec![NodeFlavor::S],
            Control::Machine(0),
        );
        let w = apply_integer(&graph, &v).unwrap();
        assert_eq!(w.positions, vec![1, 1]);
        assert_eq!(w.pi, NodeFlavor::ZeroIn);
    }

    #[test]
    fn integer_action_is_involutive_on_vectors() {
        let word = parse_word("10").unwrap();
        let graph = build_graph(&word);
        let v = vector(
            NodeFlavor::S,
            vec![0, 2],
            Permutation::identity(2),
            vec![NodeFlavor::OneIn],
            Control::Machine(0),
        );
        let w = apply_integer(&graph, &v).unwrap();
        assert_eq!(apply_integer(&graph, &w), Some(v));
    }

    #[test]
    fn zero_observation_fires_nothing() {
        let m = Machine::new(1, vec!["q0".into()], vec![]).unwrap();
        let space = StateSpace::for_machine(&m).unwrap();
        let obs = Observation::new(1, space, Vec::new());
        let v = vector(
            NodeFlavor::S,
            vec![0, 0],
            Permutation::identity(2),
            vec![NodeFlavor::S],
            Control::Machine(0),
        );
        assert!(apply_observation(&obs, &v).is_empty());
    }

    #[test]
    fn rewind_only_observation_ignores_machine_states_without_reject() {
        let m = Machine::new(1, vec!["q0".into()], vec![]).unwrap();
        let c = PseudoConfig::new(slots("⋆"), 0);
        let obs = encode_machine(&m, &c).unwrap();
        let v = vector(
            NodeFlavor::S,
            vec![0, 0],
            Permutation::identity(2),
            vec![NodeFlavor::S],
            Control::Machine(0),
        );
        assert!(apply_observation(&obs, &v).is_empty());
    }

    #[test]
    fn m_summand_twists_sigma_and_moves_control() {
        let m = one_pointer_machine(vec![]);
        let c = PseudoConfig::new(slots("⋆"), 0);
        let obs = encode_machine(&m, &c).unwrap();
        let v = vector(
            NodeFlavor::OneIn,
            vec![1, 0],
            Permutation::identity(2),
            vec![NodeFlavor::S],
            Control::Machine(0),
        );
        let out = apply_observation(&obs, &v);
        // the premise (⋆, q0) matches since the memory slot holds S (value ⋆)
        assert_eq!(out.len(), 3, "departure spray over the out doors");
        for (coeff, w) in &out {
            assert!(coeff.is_one());
            assert_eq!(w.sigma, Permutation::transposition(2, 0, 1));
            assert_eq!(w.state.control, Control::Move(0));
        }
    }

    #[test]
    fn premise_filter_blocks_mismatched_slots() {
        let m = one_pointer_machine(vec![]);
        let c = PseudoConfig::new(slots("⋆"), 0);
        let obs = encode_machine(&m, &c).unwrap();
        // memory slot reads 1, premise wants ⋆
        let v = vector(
            NodeFlavor::OneIn,
            vec![1, 0],
            Permutation::identity(2),
            vec![NodeFlavor::OneIn],
            Control::Machine(0),
        );
        assert!(apply_observation(&obs, &v).is_empty());
    }

    #[test]
    fn coefficients_multiply_and_merge() {
        let m = one_pointer_machine(vec![]);
        let c = PseudoConfig::new(slots("⋆"), 0);
        let obs = encode_machine(&m, &c).unwrap().scaled(&crate::algebra::coeff(3, 2));
        assert!(!obs.is_boolean());
        let v = vector(
            NodeFlavor::OneIn,
            vec![1, 0],
            Permutation::identity(2),
            vec![NodeFlavor::S],
            Control::Machine(0),
        );
        for (coeff, _) in apply_observation(&obs, &v) {
            assert_eq!(coeff, crate::algebra::coeff(3, 2));
        }
    }
}
