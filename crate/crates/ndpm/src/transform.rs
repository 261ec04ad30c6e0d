//! Machine transformations: one-movement normalization, the clock transform
//! that forces every run to halt, and the position-equality sensing routine.

use crate::machine::{
    expand_shorthands, Instruction, Machine, MachineError, Outcome, PatternTransition,
    PseudoConfig, ReadPattern, StateId, Transition,
};
use crate::words::Symbol;
use std::collections::{HashSet, VecDeque};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("clock transform needs {hands} clock pointers; expansion would exceed {cap} transitions")]
    ClockTooLarge { hands: usize, cap: usize },
    #[error(transparent)]
    Machine(#[from] MachineError),
}

/// Mapping from pseudo-configurations of the input machine to those of the
/// transformed machine. Normalization keeps state ids; the clock transform
/// appends `⋆`-initialized slots for the clock hands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PseudoMap {
    extra_star_slots: usize,
}

impl PseudoMap {
    pub fn map(&self, c: &PseudoConfig) -> PseudoConfig {
        let mut slots = c.slots.clone();
        slots.extend(std::iter::repeat_n(Symbol::Star, self.extra_star_slots));
        PseudoConfig::new(slots, c.state)
    }
}

fn stay_instrs(p: usize) -> Vec<Instruction> {
    (1..=p as u8).map(Instruction::Stay).collect()
}

fn fresh_name(taken: &HashSet<String>, base: &str) -> String {
    if !taken.contains(base) {
        return base.to_string();
    }
    let mut i = 1;
    loop {
        let candidate = format!("{base}'{i}");
        if !taken.contains(&candidate) {
            return candidate;
        }
        i += 1;
    }
}

/// Rewrites the machine so that every transition moves exactly one pointer.
///
/// Multi-move transitions become chains through fresh intermediate states,
/// executing their moves in ascending pointer order; the intermediate
/// premises are wildcards since fresh states are reachable only mid-chain.
/// Transitions that move nothing are removed by state fusion: their
/// premise inherits the outcomes reachable through chains of such
/// transitions (the slots cannot change along the chain, so the fused
/// relation agrees with the original wherever the original halts).
pub fn one_move_normalize(machine: &Machine) -> (Machine, PseudoMap) {
    let p = machine.pointers();

    // stay-only fusion closure per premise, in first-occurrence order
    let mut fused: Vec<Transition> = Vec::new();
    let mut premises: Vec<(Vec<Symbol>, StateId)> = Vec::new();
    let mut seen_premises: HashSet<(Vec<Symbol>, StateId)> = HashSet::new();
    for t in machine.transitions() {
        let key = (t.reads.clone(), t.from);
        if seen_premises.insert(key.clone()) {
            premises.push(key);
        }
    }
    for (reads, from) in premises {
        let mut seen = HashSet::from([from]);
        let mut queue = VecDeque::from([from]);
        while let Some(q) = queue.pop_front() {
            for &ti in machine.matching_transitions(&reads, q) {
                let t = &machine.transitions()[ti as usize];
                match &t.outcome {
                    Outcome::Move { instrs, to } if instrs.iter().all(|i| !i.is_move()) => {
                        if seen.insert(*to) {
                            queue.push_back(*to);
                        }
                    }
                    outcome => fused.push(Transition {
                        reads: reads.clone(),
                        from,
                        outcome: outcome.clone(),
                    }),
                }
            }
        }
    }

    // decompose multi-move transitions
    let mut states: Vec<String> = machine.states().to_vec();
    let mut taken: HashSet<String> = states.iter().cloned().collect();
    let mut out: Vec<Transition> = Vec::new();
    for (ti, t) in fused.iter().enumerate() {
        let (instrs, to) = match &t.outcome {
            Outcome::Move { instrs, to } => (instrs, *to),
            _ => {
                out.push(t.clone());
                continue;
            }
        };
        let moving: Vec<usize> = instrs
            .iter()
            .enumerate()
            .filter(|(_, i)| i.is_move())
            .map(|(slot, _)| slot)
            .collect();
        if moving.len() <= 1 {
            out.push(t.clone());
            continue;
        }
        let single = |slot: usize| -> Vec<Instruction> {
            let mut v = stay_instrs(p);
            v[slot] = instrs[slot];
            v
        };
        let mut from = t.from;
        let mut reads_pattern: Option<Vec<Symbol>> = Some(t.reads.clone());
        for (step, &slot) in moving.iter().enumerate() {
            let last = step + 1 == moving.len();
            let next = if last {
                to
            } else {
                let name = fresh_name(&taken, &format!("{}~{}.{}", machine.state_name(t.from), ti, step));
                taken.insert(name.clone());
                states.push(name);
                (states.len() - 1) as StateId
            };
            match reads_pattern.take() {
                Some(reads) => out.push(Transition {
                    reads,
                    from,
                    outcome: Outcome::Move { instrs: single(slot), to: next },
                }),
                None => {
                    // mid-chain premises are wildcards: the fresh state is
                    // only entered from the previous leg
                    out.extend(expand_shorthands(&PatternTransition {
                        reads: vec![ReadPattern::Any; p],
                        from,
                        outcome: Outcome::Move { instrs: single(slot), to: next },
                    }));
                }
            }
            from = next;
        }
    }

    let machine = Machine::new(p, states, out).expect("normalization preserves validity");
    (machine, PseudoMap { extra_star_slots: 0 })
}

fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

const CLOCK_EXPANSION_CAP: usize = 5_000_000;

/// Adds `d + 1` clock pointers, `d = p + ⌈log₂(3^p·|Q|)⌉`, so that
/// `(k+1)^p·3^p·|Q| ≤ (k+1)^d` for every `k ≥ 1`. The hands tick like a
/// lazy counter: the first advances while no hand reads `⋆`, a hand reading
/// `⋆` advances together with its carry neighbor, and the machine rejects
/// when the last hand comes back to `⋆`, which takes more transitions
/// than any halting run of the original. Hand patterns not covered by those
/// cases also reject. Verdicts on halting runs are unchanged and no run of
/// the result can loop on words of length `k ≥ 1`.
pub fn make_acyclic(machine: &Machine) -> Result<(Machine, PseudoMap), TransformError> {
    let p = machine.pointers();
    let configs = 3usize
        .checked_pow(p as u32)
        .and_then(|x| x.checked_mul(machine.states().len()))
        .unwrap_or(usize::MAX);
    let d = p + ceil_log2(configs);
    let hands = d + 1;
    let p_new = p + hands;

    let combos = 3usize.checked_pow(hands as u32).unwrap_or(usize::MAX);
    let estimated = machine.transitions().len().saturating_mul(combos);
    if estimated > CLOCK_EXPANSION_CAP {
        return Err(TransformError::ClockTooLarge { hands, cap: CLOCK_EXPANSION_CAP });
    }

    // classify every hand-symbol combination once
    enum ClockCase {
        AllStar,
        NoStar,
        SingleStar(usize),
        Reject,
    }
    let mut combo_table: Vec<(Vec<Symbol>, ClockCase)> = Vec::with_capacity(combos);
    let mut combo = vec![0usize; hands];
    loop {
        let symbols: Vec<Symbol> = combo.iter().map(|&c| Symbol::ALL[c]).collect();
        let stars: Vec<usize> = symbols
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == Symbol::Star)
            .map(|(i, _)| i)
            .collect();
        let case = match stars.as_slice() {
            [] => ClockCase::NoStar,
            _ if stars.len() == hands => ClockCase::AllStar,
            [h] if *h + 1 < hands => ClockCase::SingleStar(*h),
            _ => ClockCase::Reject,
        };
        combo_table.push((symbols, case));
        // odometer over {0,1,2}^hands
        let mut i = 0;
        loop {
            if i == hands {
                break;
            }
            combo[i] += 1;
            if combo[i] < 3 {
                break;
            }
            combo[i] = 0;
            i += 1;
        }
        if i == hands {
            break;
        }
    }

    let mut out: Vec<Transition> = Vec::new();
    for t in machine.transitions() {
        match &t.outcome {
            // halting outcomes fire whatever the clock reads
            Outcome::Accept | Outcome::Reject => {
                for (hand_syms, _) in &combo_table {
                    let mut reads = t.reads.clone();
                    reads.extend_from_slice(hand_syms);
                    out.push(Transition { reads, from: t.from, outcome: t.outcome.clone() });
                }
            }
            Outcome::Move { instrs, to } => {
                for (hand_syms, case) in &combo_table {
                    let mut reads = t.reads.clone();
                    reads.extend_from_slice(hand_syms);
                    let mut hand_instrs: Vec<Option<bool>> = vec![None; hands]; // Some(true) = advance
                    let outcome = match case {
                        ClockCase::AllStar => {
                            hand_instrs.iter_mut().for_each(|h| *h = Some(true));
                            None
                        }
                        ClockCase::NoStar => {
                            hand_instrs[0] = Some(true);
                            None
                        }
                        ClockCase::SingleStar(h) => {
                            hand_instrs[*h] = Some(true);
                            hand_instrs[*h + 1] = Some(true);
                            None
                        }
                        ClockCase::Reject => Some(Outcome::Reject),
                    };
                    let outcome = outcome.unwrap_or_else(|| {
                        let mut all: Vec<Instruction> = instrs.clone();
                        for (h, advance) in hand_instrs.iter().enumerate() {
                            let j = (p + h + 1) as u8;
                            all.push(match advance {
                                Some(true) => Instruction::Forward(j),
                                _ => Instruction::Stay(j),
                            });
                        }
                        Outcome::Move { instrs: all, to: *to }
                    });
                    out.push(Transition { reads, from: t.from, outcome });
                }
            }
        }
    }

    let machine = Machine::new(p_new, machine.states().to_vec(), out)?;
    Ok((machine, PseudoMap { extra_star_slots: hands }))
}

/// An incrementally built machine, used to assemble fragments.
pub struct MachineBuilder {
    p: usize,
    states: Vec<String>,
    patterns: Vec<PatternTransition>,
}

impl MachineBuilder {
    pub fn new(p: usize) -> Self {
        MachineBuilder { p, states: Vec::new(), patterns: Vec::new() }
    }

    /// Returns the id of `name`, adding the state if new.
    pub fn state(&mut self, name: &str) -> StateId {
        if let Some(i) = self.states.iter().position(|s| s == name) {
            return i as StateId;
        }
        self.states.push(name.to_string());
        (self.states.len() - 1) as StateId
    }

    pub fn pattern(&mut self, reads: Vec<ReadPattern>, from: StateId, outcome: Outcome) {
        self.patterns.push(PatternTransition { reads, from, outcome });
    }

    /// Premise with `Any` everywhere except the listed positions (1-based).
    pub fn reads_where(&self, fixed: &[(u8, ReadPattern)]) -> Vec<ReadPattern> {
        let mut v = vec![ReadPattern::Any; self.p];
        for &(j, rp) in fixed {
            v[j as usize - 1] = rp;
        }
        v
    }

    /// Instructions with `Stay` everywhere except the listed ones (1-based,
    /// `true` = forward).
    pub fn instrs_where(&self, moves: &[(u8, bool)]) -> Vec<Instruction> {
        let mut v = stay_instrs(self.p);
        for &(j, fwd) in moves {
            v[j as usize - 1] =
                if fwd { Instruction::Forward(j) } else { Instruction::Backward(j) };
        }
        v
    }

    pub fn build(self) -> Result<Machine, MachineError> {
        let transitions = self.patterns.iter().flat_map(expand_shorthands).collect();
        Machine::new(self.p, self.states, transitions)
    }
}

/// Wires the position-equality routine into `builder`: from `entry`, drive
/// `j1` and `j2` backward and `j3` forward in lockstep until one of them
/// reads `⋆`, record whether they got there together, then walk everything
/// back until `j3` is on `⋆` again and hand over to `ret_equal` or
/// `ret_unequal`. Positions of all three pointers are restored on exit;
/// their slots end up holding the true symbols under them. `j3` must be on
/// `⋆` when `entry` is reached.
pub fn sensing_equal_routine(
    builder: &mut MachineBuilder,
    j1: u8,
    j2: u8,
    j3: u8,
    entry: StateId,
    ret_equal: StateId,
    ret_unequal: StateId,
) {
    assert!(j3 != j1 && j3 != j2 && j1 != j2);
    let walk = builder.state("sense.walk");
    let back_eq = builder.state("sense.back.eq");
    let back_ne = builder.state("sense.back.ne");

    let outward = |b: &MachineBuilder| b.instrs_where(&[(j1, false), (j2, false), (j3, true)]);
    let inward = |b: &MachineBuilder| b.instrs_where(&[(j1, true), (j2, true), (j3, false)]);

    // the entry move is unconditional: slots may be stale before it
    let any = builder.reads_where(&[]);
    let out_instrs = outward(builder);
    builder.pattern(any, entry, Outcome::Move { instrs: out_instrs, to: walk });

    let both_bits =
        builder.reads_where(&[(j1, ReadPattern::ZeroOne), (j2, ReadPattern::ZeroOne)]);
    let out_instrs = outward(builder);
    builder.pattern(both_bits, walk, Outcome::Move { instrs: out_instrs, to: walk });

    for (r1, r2, target) in [
        (ReadPattern::Exact(Symbol::Star), ReadPattern::Exact(Symbol::Star), back_eq),
        (ReadPattern::Exact(Symbol::Star), ReadPattern::ZeroOne, back_ne),
        (ReadPattern::ZeroOne, ReadPattern::Exact(Symbol::Star), back_ne),
    ] {
        let reads = builder.reads_where(&[(j1, r1), (j2, r2)]);
        let in_instrs = inward(builder);
        builder.pattern(reads, walk, Outcome::Move { instrs: in_instrs, to: target });
    }

    for (back, ret) in [(back_eq, ret_equal), (back_ne, ret_unequal)] {
        let reads = builder.reads_where(&[(j3, ReadPattern::ZeroOne)]);
        let in_instrs = inward(builder);
        builder.pattern(reads, back, Outcome::Move { instrs: in_instrs, to: back });
        let reads = builder.reads_where(&[(j3, ReadPattern::Exact(Symbol::Star))]);
        let p = builder.p;
        builder.pattern(reads, back, Outcome::Move { instrs: stay_instrs(p), to: ret });
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::machine::{run, step, Configuration, StepOutcome, Verdict};
    use crate::words::{parse_word, BinaryWord};

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

    fn all_words_up_to(k: usize) -> Vec<BinaryWord> {
        (0..=k).flat_map(BinaryWord::all_of_len).collect()
    }

    fn verdicts_agree(a: &Machine, b: &Machine, map: &PseudoMap, max_k: usize, halting_only: bool) {
        for c in a.all_pseudo_configs() {
            for word in all_words_up_to(max_k) {
                let va = run(a, &c, &word).verdict;
                if halting_only && va == Verdict::Diverge {
                    continue;
                }
                let vb = run(b, &map.map(&c), &word).verdict;
                assert_eq!(va, vb, "pseudo {c:?} word {word}");
            }
        }
    }

    #[test]
    fn double_move_becomes_two_leg_chain() {
        let m = Machine::new(
            2,
            vec!["q0".into(), "q1".into()],
            vec![Transition {
                reads: slots("⋆⋆"),
                from: 0,
                outcome: Outcome::Move {
                    instrs: vec![Instruction::Forward(1), Instruction::Forward(2)],
                    to: 1,
                },
            }],
        )
        .unwrap();
        let (n, map) = one_move_normalize(&m);
        assert_eq!(n.states().len(), 3, "one fresh state");
        // first leg keeps the premise, second leg is a 3^2 wildcard fan
        assert_eq!(n.transitions().len(), 1 + 9);
        assert!(n
            .transitions()
            .iter()
            .all(|t| t.moving_pointers().len() <= 1));
        verdicts_agree(&m, &n, &map, 3, false);
    }

    #[test]
    fn normalized_machine_is_a_fixpoint() {
        let m = Machine::new(
            1,
            vec!["q0".into(), "q1".into()],
            vec![
                Transition {
                    reads: slots("⋆"),
                    from: 0,
                    outcome: Outcome::Move { instrs: vec![Instruction::Forward(1)], to: 1 },
                },
                Transition { reads: slots("0"), from: 1, outcome: Outcome::Reject },
            ],
        )
        .unwrap();
        let (n, _) = one_move_normalize(&m);
        assert_eq!(n.states().len(), m.states().len());
        assert_eq!(n.transitions().len(), m.transitions().len());
    }

    #[test]
    fn stay_only_transitions_are_fused_away() {
        // (⋆,q0) -stay-> q1, and q1 rejects on ⋆
        let m = Machine::new(
            1,
            vec!["q0".into(), "q1".into()],
            vec![
                Transition {
                    reads: slots("⋆"),
                    from: 0,
                    outcome: Outcome::Move { instrs: vec![Instruction::Stay(1)], to: 1 },
                },
                Transition { reads: slots("⋆"), from: 1, outcome: Outcome::Reject },
            ],
        )
        .unwrap();
        let (n, map) = one_move_normalize(&m);
        assert!(n
            .transitions()
            .iter()
            .all(|t| !matches!(&t.outcome, Outcome::Move { instrs, .. }
                               if instrs.iter().all(|i| !i.is_move()))));
        verdicts_agree(&m, &n, &map, 2, true);
    }

    fn diverging_machine() -> Machine {
        Machine::new(
            1,
            vec!["q0".into()],
            vec![Transition {
                reads: slots("⋆"),
                from: 0,
                outcome: Outcome::Move { instrs: vec![Instruction::Stay(1)], to: 0 },
            }],
        )
        .unwrap()
    }

    #[test]
    fn clock_turns_divergence_into_reject() {
        let m = diverging_machine();
        let (t, map) = make_acyclic(&m).unwrap();
        let c = PseudoConfig::new(slots("⋆"), 0);
        let word = parse_word("1").unwrap();
        assert_eq!(run(&m, &c, &word).verdict, Verdict::Diverge);
        assert_eq!(run(&t, &map.map(&c), &word).verdict, Verdict::Reject);
    }

    #[test]
    fn clock_preserves_halting_verdicts_and_never_diverges() {
        let m = Machine::new(
            1,
            vec!["q0".into(), "q1".into()],
            vec![
                Transition {
                    reads: slots("⋆"),
                    from: 0,
                    outcome: Outcome::Move { instrs: vec![Instruction::Forward(1)], to: 1 },
                },
                Transition { reads: slots("0"), from: 1, outcome: Outcome::Reject },
            ],
        )
        .unwrap();
        let (t, map) = make_acyclic(&m).unwrap();
        verdicts_agree(&m, &t, &map, 3, true);
        for c in m.all_pseudo_configs() {
            for word in (1..=3).flat_map(BinaryWord::all_of_len) {
                let v = run(&t, &map.map(&c), &word).verdict;
                assert_ne!(v, Verdict::Diverge, "pseudo {c:?} word {word}");
            }
        }
    }

    /// Follows the unique branch until the machine reaches `stop_a` or
    /// `stop_b`; panics on nondeterminism or a halt on the way.
    fn drive(
        machine: &Machine,
        word: &BinaryWord,
        mut config: Configuration,
        stops: [StateId; 2],
    ) -> Configuration {
        for _ in 0..10_000 {
            if stops.contains(&config.state) {
                return config;
            }
            let outs = step(machine, word, &config);
            assert_eq!(outs.len(), 1, "routine must be deterministic");
            match outs.into_iter().next().unwrap() {
                StepOutcome::Next(c) => config = c,
                other => panic!("routine halted early: {other:?}"),
            }
        }
        panic!("routine did not reach a return state");
    }

    fn sensing_harness() -> (Machine, StateId, StateId, StateId) {
        let mut b = MachineBuilder::new(3);
        let entry = b.state("start");
        let eq = b.state("eq");
        let ne = b.state("ne");
        sensing_equal_routine(&mut b, 1, 2, 3, entry, eq, ne);
        let m = b.build().unwrap();
        (m, entry, eq, ne)
    }

    #[test]
    fn sensing_detects_equal_positions_and_restores_them() {
        let (m, entry, eq, _ne) = sensing_harness();
        let word = parse_word("101").unwrap();
        let start = Configuration {
            positions: vec![2, 2, 0],
            slots: slots("⋆⋆⋆"),
            state: entry,
        };
        let end = drive(&m, &word, start, [eq, m.states().len() as StateId - 1]);
        assert_eq!(m.state_name(end.state), "eq");
        assert_eq!(end.positions, vec![2, 2, 0]);
    }

    #[test]
    fn sensing_detects_unequal_positions_and_restores_them() {
        let (m, entry, eq, ne) = sensing_harness();
        let word = parse_word("101").unwrap();
        let start = Configuration {
            positions: vec![1, 2, 0],
            slots: slots("⋆⋆⋆"),
            state: entry,
        };
        let end = drive(&m, &word, start, [eq, ne]);
        assert_eq!(m.state_name(end.state), "ne");
        assert_eq!(end.positions, vec![1, 2, 0]);
    }

    #[test]
    fn sensing_handles_both_pointers_on_star() {
        let (m, entry, eq, ne) = sensing_harness();
        let word = parse_word("1").unwrap();
        let start = Configuration {
            positions: vec![0, 0, 0],
            slots: slots("⋆⋆⋆"),
            state: entry,
        };
        let end = drive(&m, &word, start, [eq, ne]);
        assert_eq!(m.state_name(end.state), "eq");
        assert_eq!(end.positions, vec![0, 0, 0]);
    }

    #[test]
    fn sensing_fragment_survives_normalization() {
        // the routine's hand-off transition is stay-only; fusion must keep
        // all verdicts on halting runs (the routine always halts)
        let (m, _, _, _) = sensing_harness();
        let (n, map) = one_move_normalize(&m);
        assert!(n.transitions().iter().all(|t| match &t.outcome {
            Outcome::Move { instrs, .. } =>
                instrs.iter().filter(|i| i.is_move()).count() == 1,
            _ => true,
        }));
        verdicts_agree(&m, &n, &map, 2, true);
    }

    mod random_machines {
        use super::*;
        use proptest::prelude::*;

        fn arb_symbol() -> impl Strategy<Value = Symbol> {
            prop_oneof![Just(Symbol::Zero), Just(Symbol::One), Just(Symbol::Star)]
        }

        fn arb_transition(p: usize, n_states: u16) -> impl Strategy<Value = Transition> {
            (
                proptest::collection::vec(arb_symbol(), p),
                0..n_states,
                proptest::collection::vec(-1i8..=1, p),
                0..n_states,
                0..10u8,
            )
                .prop_map(move |(reads, from, moves, to, kind)| {
                    let outcome = match kind {
                        0..=6 => Outcome::Move {
                            instrs: moves
                                .iter()
                                .enumerate()
                                .map(|(i, &m)| {
                                    let j = (i + 1) as u8;
                                    match m {
                                        1 => Instruction::Forward(j),
                                        -1 => Instruction::Backward(j),
                                        _ => Instruction::Stay(j),
                                    }
                                })
                                .collect(),
                            to,
                        },
                        7 | 8 => Outcome::Accept,
                        _ => Outcome::Reject,
                    };
                    Transition { reads, from, outcome }
                })
        }

        fn arb_machine(p: usize, n_states: u16) -> impl Strategy<Value = Machine> {
            proptest::collection::vec(arb_transition(p, n_states), 0..6).prop_map(move |ts| {
                let states = (0..n_states).map(|i| format!("q{i}")).collect();
                Machine::new(p, states, ts).unwrap()
            })
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn normalization_yields_single_moves_and_keeps_halting_verdicts(
                m in arb_machine(2, 3)
            ) {
                let (n, map) = one_move_normalize(&m);
                for t in n.transitions() {
                    if let Outcome::Move { instrs, .. } = &t.outcome {
                        prop_assert_eq!(instrs.iter().filter(|i| i.is_move()).count(), 1);
                    }
                }
                for c in m.all_pseudo_configs() {
                    for word in all_words_up_to(2) {
                        let va = run(&m, &c, &word).verdict;
                        if va == Verdict::Diverge {
                            continue;
                        }
                        prop_assert_eq!(run(&n, &map.map(&c), &word).verdict, va);
                    }
                }
            }

            #[test]
            fn clock_transform_halts_everything(m in arb_machine(1, 2)) {
                let (t, map) = make_acyclic(&m).unwrap();
                for c in m.all_pseudo_configs() {
                    for word in (1..=2).flat_map(BinaryWord::all_of_len) {
                        let original = run(&m, &c, &word).verdict;
                        let transformed = run(&t, &map.map(&c), &word).verdict;
                        prop_assert_ne!(transformed, Verdict::Diverge);
                        if original != Verdict::Diverge {
                            prop_assert_eq!(transformed, original);
                        } else {
                            prop_assert_eq!(transformed, Verdict::Reject);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn sensing_exhaustive_on_short_words() {
        let (m, entry, eq, ne) = sensing_harness();
        for word in all_words_up_to(3) {
            let k = word.len() as u16;
            for x in 0..=k {
                for y in 0..=k {
                    let start = Configuration {
                        positions: vec![x, y, 0],
                        slots: slots("⋆⋆⋆"),
                        state: entry,
                    };
                    let end = drive(&m, &word, start, [eq, ne]);
                    assert_eq!(
                        m.state_name(end.state),
                        if x == y { "eq" } else { "ne" },
                        "x={x} y={y} word={word}"
                    );
                    assert_eq!(end.positions, vec![x, y, 0]);
                }
            }
        }
    }
}
