//! Non-deterministic pointer machines: p read-only pointers on a circular
//! tape, a finite state set, and a transition relation. Acceptance is
//! universal (every branch must halt in accept) while a single branch
//! reaching reject rejects the input. A premise the relation does not cover
//! accepts by default.

use crate::words::{BinaryWord, Symbol};
use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt;
use thiserror::Error;

pub type StateId = u16;

/// One pointer instruction. The index is 1-based and must address the
/// pointer whose slot it occupies in a transition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Instruction {
    Forward(u8),
    Backward(u8),
    Stay(u8),
}

impl Instruction {
    pub fn pointer(self) -> u8 {
        match self {
            Instruction::Forward(j) | Instruction::Backward(j) | Instruction::Stay(j) => j,
        }
    }

    pub fn is_move(self) -> bool {
        !matches!(self, Instruction::Stay(_))
    }
}

impl fmt::Display for Instruction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Instruction::Forward(j) => write!(f, "+{j}"),
            Instruction::Backward(j) => write!(f, "-{j}"),
            Instruction::Stay(j) => write!(f, ".{j}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Outcome {
    Move { instrs: Vec<Instruction>, to: StateId },
    Accept,
    Reject,
}

/// A fully expanded transition: concrete premise symbols, no wildcards.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Transition {
    pub reads: Vec<Symbol>,
    pub from: StateId,
    pub outcome: Outcome,
}

impl Transition {
    /// Indices (1-based) of the pointers this transition moves.
    pub fn moving_pointers(&self) -> Vec<u8> {
        match &self.outcome {
            Outcome::Move { instrs, .. } => instrs
                .iter()
                .filter(|i| i.is_move())
                .map(|i| i.pointer())
                .collect(),
            _ => Vec::new(),
        }
    }
}

/// Premise symbol patterns as written in machine files: a concrete symbol,
/// the `0/1` shorthand, or the `*` wildcard.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReadPattern {
    Exact(Symbol),
    ZeroOne,
    Any,
}

impl ReadPattern {
    pub fn symbols(self) -> &'static [Symbol] {
        match self {
            ReadPattern::Exact(Symbol::Zero) => &[Symbol::Zero],
            ReadPattern::Exact(Symbol::One) => &[Symbol::One],
            ReadPattern::Exact(Symbol::Star) => &[Symbol::Star],
            ReadPattern::ZeroOne => &[Symbol::Zero, Symbol::One],
            ReadPattern::Any => &Symbol::ALL,
        }
    }
}

/// A transition whose premise may still contain wildcards.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternTransition {
    pub reads: Vec<ReadPattern>,
    pub from: StateId,
    pub outcome: Outcome,
}

/// Expands `*` to the three symbols and `0/1` to two, taking the Cartesian
/// product over wildcard positions.
pub fn expand_shorthands(pattern: &PatternTransition) -> Vec<Transition> {
    let mut premises: Vec<Vec<Symbol>> = vec![Vec::new()];
    for rp in &pattern.reads {
        let mut next = Vec::with_capacity(premises.len() * rp.symbols().len());
        for prefix in &premises {
            for &s in rp.symbols() {
                let mut reads = prefix.clone();
                reads.push(s);
                next.push(reads);
            }
        }
        premises = next;
    }
    premises
        .into_iter()
        .map(|reads| Transition {
            reads,
            from: pattern.from,
            outcome: pattern.outcome.clone(),
        })
        .collect()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MachineError {
    #[error("machine must have at least one pointer")]
    NoPointers,
    #[error("transition {index} reads {got} symbols, machine has {expected} pointers")]
    PremiseArity { index: usize, got: usize, expected: usize },
    #[error("transition {index} instruction slot {slot} addresses pointer {got}, expected {expected}")]
    InstructionIndex { index: usize, slot: usize, got: u8, expected: u8 },
    #[error("transition {index} refers to unknown state id {state}")]
    UnknownState { index: usize, state: StateId },
    #[error("duplicate state name {0:?}")]
    DuplicateState(String),
}

/// A pointer machine `M = (Q, →)` with `p` pointers. Transitions are kept
/// fully expanded and indexed by premise.
#[derive(Debug, Clone)]
pub struct Machine {
    p: usize,
    states: Vec<String>,
    transitions: Vec<Transition>,
    by_premise: HashMap<(Vec<Symbol>, StateId), Vec<u32>>,
}

impl Machine {
    pub fn new(
        p: usize,
        states: Vec<String>,
        transitions: Vec<Transition>,
    ) -> Result<Machine, MachineError> {
        if p == 0 {
            return Err(MachineError::NoPointers);
        }
        {
            let mut seen = std::collections::HashSet::new();
            for s in &states {
                if !seen.insert(s.clone()) {
                    return Err(MachineError::DuplicateState(s.clone()));
                }
            }
        }
        let n_states = states.len() as StateId;
        let mut dedup = std::collections::HashSet::new();
        let mut kept = Vec::with_capacity(transitions.len());
        for (index, t) in transitions.into_iter().enumerate() {
            if t.reads.len() != p {
                return Err(MachineError::PremiseArity { index, got: t.reads.len(), expected: p });
            }
            if t.from >= n_states {
                return Err(MachineError::UnknownState { index, state: t.from });
            }
            if let Outcome::Move { instrs, to } = &t.outcome {
                if instrs.len() != p {
                    return Err(MachineError::PremiseArity { index, got: instrs.len(), expected: p });
                }
                for (slot, ins) in instrs.iter().enumerate() {
                    let expected = (slot + 1) as u8;
                    if ins.pointer() != expected {
                        return Err(MachineError::InstructionIndex {
                            index,
                            slot,
                            got: ins.pointer(),
                            expected,
                        });
                    }
                }
                if *to >= n_states {
                    return Err(MachineError::UnknownState { index, state: *to });
                }
            }
            if dedup.insert(t.clone()) {
                kept.push(t);
            }
        }
        let mut by_premise: HashMap<(Vec<Symbol>, StateId), Vec<u32>> = HashMap::new();
        for (i, t) in kept.iter().enumerate() {
            by_premise
                .entry((t.reads.clone(), t.from))
                .or_default()
                .push(i as u32);
        }
        Ok(Machine { p, states, transitions: kept, by_premise })
    }

    pub fn pointers(&self) -> usize {
        self.p
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn state_id(&self, name: &str) -> Option<StateId> {
        self.states.iter().position(|s| s == name).map(|i| i as StateId)
    }

    pub fn state_name(&self, id: StateId) -> &str {
        &self.states[id as usize]
    }

    pub fn transitions(&self) -> &[Transition] {
        &self.transitions
    }

    pub fn matching_transitions(&self, slots: &[Symbol], state: StateId) -> &[u32] {
        self.by_premise
            .get(&(slots.to_vec(), state))
            .map(|v| v.as_slice())
            .unwrap_or(&[])
    }

    /// Every pseudo-configuration `(slots, state)` of the machine.
    pub fn all_pseudo_configs(&self) -> Vec<PseudoConfig> {
        let mut slot_vecs: Vec<Vec<Symbol>> = vec![Vec::new()];
        for _ in 0..self.p {
            let mut next = Vec::with_capacity(slot_vecs.len() * 3);
            for prefix in &slot_vecs {
                for &s in &Symbol::ALL {
                    let mut v = prefix.clone();
                    v.push(s);
                    next.push(v);
                }
            }
            slot_vecs = next;
        }
        let mut out = Vec::new();
        for state in 0..self.states.len() as StateId {
            for slots in &slot_vecs {
                out.push(PseudoConfig { slots: slots.clone(), state });
            }
        }
        out
    }
}

/// A partial snapshot: last-read symbols and control state, no positions.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PseudoConfig {
    pub slots: Vec<Symbol>,
    pub state: StateId,
}

impl PseudoConfig {
    pub fn new(slots: Vec<Symbol>, state: StateId) -> Self {
        PseudoConfig { slots, state }
    }
}

/// A full runtime snapshot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Configuration {
    pub positions: Vec<u16>,
    pub slots: Vec<Symbol>,
    pub state: StateId,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StepOutcome {
    Next(Configuration),
    Accept,
    Reject,
}

/// All outcomes the relation offers from `config`; the single outcome is
/// `Accept` when no transition matches. Slots are overwritten with the
/// symbol under the new position only for pointers that moved.
pub fn step(machine: &Machine, word: &BinaryWord, config: &Configuration) -> Vec<StepOutcome> {
    let matches = machine.matching_transitions(&config.slots, config.state);
    if matches.is_empty() {
        return vec![StepOutcome::Accept];
    }
    let modulus = (word.len() + 1) as u16;
    let mut out = Vec::with_capacity(matches.len());
    for &ti in matches {
        match &machine.transitions()[ti as usize].outcome {
            Outcome::Accept => out.push(StepOutcome::Accept),
            Outcome::Reject => out.push(StepOutcome::Reject),
            Outcome::Move { instrs, to } => {
                let mut positions = config.positions.clone();
                let mut slots = config.slots.clone();
                for (i, ins) in instrs.iter().enumerate() {
                    let new_pos = match ins {
                        Instruction::Stay(_) => continue,
                        Instruction::Forward(_) => (positions[i] + 1) % modulus,
                        Instruction::Backward(_) => (positions[i] + modulus - 1) % modulus,
                    };
                    positions[i] = new_pos;
                    slots[i] = word.symbol_at(new_pos as usize);
                }
                out.push(StepOutcome::Next(Configuration { positions, slots, state: *to }));
            }
        }
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Accept,
    Reject,
    Diverge,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Accept => write!(f, "ACCEPT"),
            Verdict::Reject => write!(f, "REJECT"),
            Verdict::Diverge => write!(f, "DIVERGE"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunStats {
    /// Distinct configurations explored.
    pub configurations: usize,
    /// Accept/reject leaves encountered while expanding.
    pub leaf_branches: usize,
    /// Longest distance from the start configuration that was reached.
    pub max_depth: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RunResult {
    pub verdict: Verdict,
    pub stats: RunStats,
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum ConfigKey {
    Packed(u128),
    Boxed(Box<[u16]>),
}

struct ConfigCodec {
    pos_bits: u32,
    packable: bool,
}

impl ConfigCodec {
    fn new(p: usize, k: usize) -> ConfigCodec {
        let pos_bits = 16 - ((k + 1) as u16).leading_zeros().min(15);
        let total = p as u32 * (pos_bits + 2) + 16;
        ConfigCodec { pos_bits, packable: total <= 128 }
    }

    fn key(&self, c: &Configuration) -> ConfigKey {
        if !self.packable {
            let mut v: Vec<u16> = c.positions.clone();
            v.extend(c.slots.iter().map(|s| *s as u16));
            v.push(c.state);
            return ConfigKey::Boxed(v.into_boxed_slice());
        }
        let mut acc: u128 = c.state as u128;
        let mut shift = 16u32;
        for (i, &pos) in c.positions.iter().enumerate() {
            acc |= (pos as u128) << shift;
            shift += self.pos_bits;
            acc |= (c.slots[i] as u128) << shift;
            shift += 2;
        }
        ConfigKey::Packed(acc)
    }
}

/// Explores the branch tree of `M_c(word)` starting with all pointers on
/// `⋆`. The configuration space is finite and outcomes depend only on the
/// configuration, so the tree is analyzed as a graph: REJECT as soon as any
/// reachable configuration offers a reject outcome, otherwise ACCEPT when
/// the reachable graph is acyclic and DIVERGE when it can loop.
pub fn run(machine: &Machine, c: &PseudoConfig, word: &BinaryWord) -> RunResult {
    debug_assert_eq!(c.slots.len(), machine.pointers());
    let codec = ConfigCodec::new(machine.pointers(), word.len());
    let start = Configuration {
        positions: vec![0; machine.pointers()],
        slots: c.slots.clone(),
        state: c.state,
    };

    let mut ids: HashMap<ConfigKey, u32> = HashMap::new();
    let mut configs: Vec<Configuration> = Vec::new();
    let mut succs: Vec<Vec<u32>> = Vec::new();
    let mut depth_of: Vec<usize> = Vec::new();
    let mut leaf_branches = 0usize;
    let mut max_depth = 0usize;

    ids.insert(codec.key(&start), 0);
    configs.push(start);
    succs.push(Vec::new());
    depth_of.push(0);

    let mut queue = std::collections::VecDeque::from([0u32]);
    while let Some(id) = queue.pop_front() {
        let config = configs[id as usize].clone();
        let depth = depth_of[id as usize];
        for outcome in step(machine, word, &config) {
            match outcome {
                StepOutcome::Accept => leaf_branches += 1,
                StepOutcome::Reject => {
                    leaf_branches += 1;
                    return RunResult {
                        verdict: Verdict::Reject,
                        stats: RunStats {
                            configurations: configs.len(),
                            leaf_branches,
                            max_depth: max_depth.max(depth + 1),
                        },
                    };
                }
                StepOutcome::Next(next) => {
                    let key = codec.key(&next);
                    let next_id = match ids.entry(key) {
                        Entry::Occupied(e) => *e.get(),
                        Entry::Vacant(e) => {
                            let nid = configs.len() as u32;
                            e.insert(nid);
                            configs.push(next);
                            succs.push(Vec::new());
                            depth_of.push(depth + 1);
                            max_depth = max_depth.max(depth + 1);
                            queue.push_back(nid);
                            nid
                        }
                    };
                    succs[id as usize].push(next_id);
                }
            }
        }
    }

    // no reject anywhere reachable: a cycle means an infinite branch
    let verdict = if has_cycle(&succs) { Verdict::Diverge } else { Verdict::Accept };
    RunResult {
        verdict,
        stats: RunStats { configurations: configs.len(), leaf_branches, max_depth },
    }
}

/// Iterative three-color cycle detection.
fn has_cycle(succs: &[Vec<u32>]) -> bool {
    const WHITE: u8 = 0;
    const GRAY: u8 = 1;
    const BLACK: u8 = 2;
    let mut color = vec![WHITE; succs.len()];
    let mut stack: Vec<(u32, usize)> = Vec::new();
    for root in 0..succs.len() as u32 {
        if color[root as usize] != WHITE {
            continue;
        }
        color[root as usize] = GRAY;
        stack.push((root, 0));
        while let Some(&mut (node, ref mut next)) = stack.last_mut() {
            if *next < succs[node as usize].len() {
                let child = succs[node as usize][*next];
                *next += 1;
                match color[child as usize] {
                    GRAY => return true,
                    WHITE => {
                        color[child as usize] = GRAY;
                        stack.push((child, 0));
                    }
                    _ => {}
                }
            } else {
                color[node as usize] = BLACK;
                stack.pop();
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
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
    fn shorthand_star_expands_to_three() {
        let pt = PatternTransition {
            reads: vec![ReadPattern::Any, ReadPattern::Exact(Symbol::Zero)],
            from: 0,
            outcome: Outcome::Accept,
        };
        let ts = expand_shorthands(&pt);
        assert_eq!(ts.len(), 3);
        let premises: Vec<_> = ts.iter().map(|t| t.reads.clone()).collect();
        assert!(premises.contains(&vec![Symbol::Zero, Symbol::Zero]));
        assert!(premises.contains(&vec![Symbol::One, Symbol::Zero]));
        assert!(premises.contains(&vec![Symbol::Star, Symbol::Zero]));
    }

    #[test]
    fn shorthand_double_star_expands_to_nine() {
        let pt = PatternTransition {
            reads: vec![ReadPattern::Any, ReadPattern::Any],
            from: 0,
            outcome: Outcome::Accept,
        };
        assert_eq!(expand_shorthands(&pt).len(), 9);
    }

    #[test]
    fn shorthand_zero_one_expands_to_two() {
        let pt = PatternTransition {
            reads: vec![ReadPattern::ZeroOne, ReadPattern::Exact(Symbol::Star)],
            from: 0,
            outcome: Outcome::Reject,
        };
        assert_eq!(expand_shorthands(&pt).len(), 2);
    }

    #[test]
    fn empty_relation_accepts() {
        let m = Machine::new(1, vec!["q0".into()], vec![]).unwrap();
        let word = parse_word("101").unwrap();
        let config = Configuration { positions: vec![0], slots: slots("⋆"), state: 0 };
        assert_eq!(step(&m, &word, &config), vec![StepOutcome::Accept]);
        let r = run(&m, &PseudoConfig::new(slots("⋆"), 0), &word);
        assert_eq!(r.verdict, Verdict::Accept);
    }

    #[test]
    fn forward_step_updates_slot_and_state() {
        let m = Machine::new(
            1,
            vec!["q0".into(), "q1".into()],
            vec![Transition {
                reads: slots("⋆"),
                from: 0,
                outcome: Outcome::Move { instrs: vec![Instruction::Forward(1)], to: 1 },
            }],
        )
        .unwrap();
        let word = parse_word("10").unwrap();
        let config = Configuration { positions: vec![0], slots: slots("⋆"), state: 0 };
        let out = step(&m, &word, &config);
        assert_eq!(
            out,
            vec![StepOutcome::Next(Configuration {
                positions: vec![1],
                slots: slots("1"),
                state: 1,
            })]
        );
    }

    #[test]
    fn stay_keeps_stale_slot() {
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
        let word = parse_word("10").unwrap();
        // pretend the pointer sits on a '1' while its slot still says ⋆
        let config = Configuration { positions: vec![1], slots: slots("⋆"), state: 0 };
        let out = step(&m, &word, &config);
        assert_eq!(
            out,
            vec![StepOutcome::Next(Configuration {
                positions: vec![1],
                slots: slots("⋆"),
                state: 1,
            })]
        );
    }

    #[test]
    fn stay_self_loop_diverges() {
        let m = Machine::new(
            1,
            vec!["q0".into()],
            vec![Transition {
                reads: slots("⋆"),
                from: 0,
                outcome: Outcome::Move { instrs: vec![Instruction::Stay(1)], to: 0 },
            }],
        )
        .unwrap();
        let word = parse_word("1").unwrap();
        let r = run(&m, &PseudoConfig::new(slots("⋆"), 0), &word);
        assert_eq!(r.verdict, Verdict::Diverge);
    }

    #[test]
    fn reject_dominates_loops() {
        // one branch loops, the other rejects
        let m = Machine::new(
            1,
            vec!["q0".into()],
            vec![
                Transition {
                    reads: slots("⋆"),
                    from: 0,
                    outcome: Outcome::Move { instrs: vec![Instruction::Stay(1)], to: 0 },
                },
                Transition { reads: slots("⋆"), from: 0, outcome: Outcome::Reject },
            ],
        )
        .unwrap();
        let word = parse_word("1").unwrap();
        let r = run(&m, &PseudoConfig::new(slots("⋆"), 0), &word);
        assert_eq!(r.verdict, Verdict::Reject);
    }

    #[test]
    fn accept_transition_never_flips_accept_to_reject() {
        let base = Machine::new(
            1,
            vec!["q0".into(), "q1".into()],
            vec![Transition {
                reads: slots("⋆"),
                from: 0,
                outcome: Outcome::Move { instrs: vec![Instruction::Forward(1)], to: 1 },
            }],
        )
        .unwrap();
        let with_accept = Machine::new(
            1,
            vec!["q0".into(), "q1".into()],
            vec![
                Transition {
                    reads: slots("⋆"),
                    from: 0,
                    outcome: Outcome::Move { instrs: vec![Instruction::Forward(1)], to: 1 },
                },
                Transition { reads: slots("1"), from: 1, outcome: Outcome::Accept },
            ],
        )
        .unwrap();
        for text in ["", "0", "1", "10", "011"] {
            let word = parse_word(text).unwrap();
            let c = PseudoConfig::new(slots("⋆"), 0);
            let a = run(&base, &c, &word).verdict;
            let b = run(&with_accept, &c, &word).verdict;
            if a == Verdict::Accept {
                assert_eq!(b, Verdict::Accept, "word {text:?}");
            }
        }
    }

    #[test]
    fn backward_from_star_wraps_to_last_position() {
        let m = Machine::new(
            1,
            vec!["q0".into(), "q1".into()],
            vec![Transition {
                reads: slots("⋆"),
                from: 0,
                outcome: Outcome::Move { instrs: vec![Instruction::Backward(1)], to: 1 },
            }],
        )
        .unwrap();
        let word = parse_word("10").unwrap();
        let config = Configuration { positions: vec![0], slots: slots("⋆"), state: 0 };
        let out = step(&m, &word, &config);
        assert_eq!(
            out,
            vec![StepOutcome::Next(Configuration {
                positions: vec![2],
                slots: slots("0"),
                state: 1,
            })]
        );
    }

    #[test]
    fn instruction_slot_mismatch_is_rejected() {
        let err = Machine::new(
            2,
            vec!["q0".into()],
            vec![Transition {
                reads: slots("⋆⋆"),
                from: 0,
                outcome: Outcome::Move {
                    instrs: vec![Instruction::Forward(2), Instruction::Stay(2)],
                    to: 0,
                },
            }],
        )
        .unwrap_err();
        assert_eq!(
            err,
            MachineError::InstructionIndex { index: 0, slot: 0, got: 2, expected: 1 }
        );
    }
}
