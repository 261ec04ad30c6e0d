//! The cross-validation batteries behind the `suite` subcommand and the
//! acceptance tests. Each battery checks one property of the build, prints
//! nothing itself, and reports pass/fail with a short detail line.

use crate::integer::{build_graph, build_matrix, check_representation, GraphNode, NodeFlavor};
use crate::machine::{
    expand_shorthands, run, Instruction, Machine, Outcome, PatternTransition, PseudoConfig,
    ReadPattern, Transition, Verdict,
};
use crate::nilpotency::{
    crossval, is_nilpotent, is_nilpotent_matrix, ProductDynamics, DEFAULT_CAP,
};
use crate::observation::{encode_machine, M6Part, Observation, SlotWrite, StateSpace, Summand};
use crate::perm::Permutation;
use crate::stconn::{decide_stconn, reach_oracle, DirectedGraph};
use crate::transform::make_acyclic;
use crate::words::{BinaryWord, Symbol};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::time::Instant;

#[derive(Debug, Clone)]
pub struct BatteryResult {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub seconds: f64,
}

fn finish(name: &'static str, start: Instant, passed: bool, detail: String) -> BatteryResult {
    BatteryResult { name, passed, detail, seconds: start.elapsed().as_secs_f64() }
}

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

fn all_words(k_max: usize) -> Vec<BinaryWord> {
    (0..=k_max).flat_map(BinaryWord::all_of_len).collect()
}

/// Battery 1: every word with 1 ≤ k ≤ 8 satisfies the representation
/// equations; the assembled matrix is symmetric and a matching; matrix
/// entries agree with the slice graph.
#[allow(clippy::needless_range_loop)]
pub fn battery_representation() -> BatteryResult {
    let start = Instant::now();
    let mut checked = 0usize;
    for k in 1..=8usize {
        for word in BinaryWord::all_of_len(k) {
            let m = match build_matrix(&word) {
                Ok(m) => m,
                Err(e) => return finish("representation", start, false, format!("{word}: {e}")),
            };
            if !check_representation(&m) {
                return finish(
                    "representation",
                    start,
                    false,
                    format!("representation equations fail for {word}"),
                );
            }
            let a = m.assemble();
            let dim = a.len();
            for r in 0..dim {
                let row_sum: u32 = a[r].iter().map(|&x| x as u32).sum();
                if row_sum > 1 {
                    return finish(
                        "representation",
                        start,
                        false,
                        format!("row {r} of {word} has {row_sum} entries"),
                    );
                }
                for c in 0..dim {
                    if a[r][c] != a[c][r] {
                        return finish(
                            "representation",
                            start,
                            false,
                            format!("asymmetry at ({r},{c}) for {word}"),
                        );
                    }
                }
            }
            let g = build_graph(&word);
            if g.edge_count() != k + 1 {
                return finish(
                    "representation",
                    start,
                    false,
                    format!("{word}: {} edges, expected {}", g.edge_count(), k + 1),
                );
            }
            let idx = |n: GraphNode| n.flavor.index() * (k + 1) + n.slice;
            for (x, y) in g.edges() {
                if a[idx(x)][idx(y)] != 1 {
                    return finish(
                        "representation",
                        start,
                        false,
                        format!("{word}: edge {x:?}–{y:?} missing from the matrix"),
                    );
                }
            }
            checked += 1;
        }
    }
    finish("representation", start, true, format!("{checked} words, k = 1..8"))
}

/// Battery 2: the slice graphs of `⋆`, `⋆0`, `⋆110`, `⋆11010` match the
/// printed figures edge for edge.
pub fn battery_figures() -> BatteryResult {
    let start = Instant::now();
    let node = |label: &str, slice: usize| {
        let flavor = NodeFlavor::ALL.into_iter().find(|f| f.label() == label).unwrap();
        GraphNode::new(flavor, slice)
    };
    let cases: Vec<(&str, Vec<(GraphNode, GraphNode)>)> = vec![
        ("", vec![(node("S", 0), node("E", 0))]),
        ("0", vec![(node("0o", 1), node("E", 0)), (node("S", 0), node("0i", 1))]),
        (
            "110",
            vec![
                (node("0o", 1), node("E", 0)),
                (node("0i", 1), node("1o", 2)),
                (node("1i", 2), node("1o", 3)),
                (node("S", 0), node("1i", 3)),
            ],
        ),
        (
            "11010",
            vec![
                (node("0o", 1), node("E", 0)),
                (node("0i", 1), node("1o", 2)),
                (node("1i", 2), node("0o", 3)),
                (node("0i", 3), node("1o", 4)),
                (node("1i", 4), node("1o", 5)),
                (node("S", 0), node("1i", 5)),
            ],
        ),
    ];
    for (text, expected) in cases {
        let word = crate::words::parse_word(text).unwrap();
        let g = build_graph(&word);
        let mut want: Vec<_> = expected
            .into_iter()
            .map(|(a, b)| (a.min(b), a.max(b)))
            .collect();
        want.sort();
        if g.edges() != want {
            return finish(
                "figures",
                start,
                false,
                format!("⋆{text}: got {:?}, want {want:?}", g.edges()),
            );
        }
    }
    finish("figures", start, true, "4 printed graphs reproduced".into())
}

/// Battery 3: the connectivity machine agrees with breadth-first
/// reachability on every graph with n ≤ 3 and on random graphs with
/// n ∈ {4,5,6}, and never loops.
pub fn battery_stconn() -> BatteryResult {
    let start = Instant::now();
    let mut checked = 0usize;
    let verify = |g: &DirectedGraph| -> Result<(), String> {
        let r = decide_stconn(g);
        if r.verdict == Verdict::Diverge {
            return Err(format!("divergence on {:?}", g.adjacency));
        }
        if (r.verdict == Verdict::Accept) != !reach_oracle(g) {
            return Err(format!(
                "disagreement on {:?}: verdict {} oracle {}",
                g.adjacency,
                r.verdict,
                reach_oracle(g)
            ));
        }
        Ok(())
    };
    for n in [2usize, 3] {
        for mask in 0u32..1 << (n * n) {
            let adjacency: Vec<Vec<bool>> = (0..n)
                .map(|i| (0..n).map(|j| mask >> (n * i + j) & 1 == 1).collect())
                .collect();
            let g = DirectedGraph::new(adjacency).unwrap();
            if let Err(e) = verify(&g) {
                return finish("stconn", start, false, e);
            }
            checked += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x57C0);
    for _ in 0..200 {
        let n = rng.random_range(4..=6);
        let adjacency: Vec<Vec<bool>> =
            (0..n).map(|_| (0..n).map(|_| rng.random_bool(0.3)).collect()).collect();
        let g = DirectedGraph::new(adjacency).unwrap();
        if let Err(e) = verify(&g) {
            return finish("stconn", start, false, e);
        }
        checked += 1;
    }
    finish("stconn", start, true, format!("{checked} graphs (16 + 512 + 200 random)"))
}

/// Deliberately looping machines for the clock battery.
pub fn looping_machines() -> Vec<(&'static str, Machine)> {
    let pat = |reads: Vec<ReadPattern>, moves: Vec<i8>, from: u16, to: u16| -> Vec<Transition> {
        let instrs = moves
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
            .collect();
        expand_shorthands(&PatternTransition {
            reads,
            from,
            outcome: Outcome::Move { instrs, to },
        })
    };
    use ReadPattern::{Any, Exact};
    let star = Exact(Symbol::Star);

    vec![
        (
            "stay-self-loop",
            Machine::new(1, vec!["q0".into()], pat(vec![star], vec![0], 0, 0)).unwrap(),
        ),
        (
            "forward-loop",
            Machine::new(1, vec!["q0".into()], pat(vec![Any], vec![1], 0, 0)).unwrap(),
        ),
        (
            "stay-ping-pong",
            Machine::new(1, vec!["q0".into(), "q1".into()], {
                let mut t = pat(vec![star], vec![0], 0, 1);
                t.extend(pat(vec![star], vec![0], 1, 0));
                t
            })
            .unwrap(),
        ),
        (
            "backward-loop",
            Machine::new(1, vec!["q0".into()], pat(vec![Any], vec![-1], 0, 0)).unwrap(),
        ),
        (
            "double-move-loop",
            Machine::new(2, vec!["q0".into()], pat(vec![Any, Any], vec![1, 1], 0, 0)).unwrap(),
        ),
    ]
}

/// Battery 4: the clock transform turns every divergence (k ≥ 1) into a
/// rejection and leaves halting verdicts unchanged (k ≤ 3, every
/// pseudo-configuration).
pub fn battery_clock() -> BatteryResult {
    let start = Instant::now();
    let mut diverging_pairs = 0usize;
    let mut halting_pairs = 0usize;
    for (name, machine) in looping_machines() {
        let (clocked, map) = match make_acyclic(&machine) {
            Ok(x) => x,
            Err(e) => return finish("clock", start, false, format!("{name}: {e}")),
        };
        let mut saw_divergence = false;
        for c in machine.all_pseudo_configs() {
            for word in all_words(3) {
                let original = run(&machine, &c, &word).verdict;
                if original == Verdict::Diverge {
                    saw_divergence = true;
                    if word.is_empty() {
                        continue; // a one-cell tape cannot drive the clock
                    }
                    let transformed = run(&clocked, &map.map(&c), &word).verdict;
                    if transformed != Verdict::Reject {
                        return finish(
                            "clock",
                            start,
                            false,
                            format!("{name}: {c:?} on {word} diverged, transform gave {transformed}"),
                        );
                    }
                    diverging_pairs += 1;
                } else {
                    let transformed = run(&clocked, &map.map(&c), &word).verdict;
                    if transformed != original {
                        return finish(
                            "clock",
                            start,
                            false,
                            format!("{name}: {c:?} on {word}: {original} became {transformed}"),
                        );
                    }
                    halting_pairs += 1;
                }
            }
        }
        if !saw_divergence {
            return finish("clock", start, false, format!("{name} never diverged"));
        }
    }
    finish(
        "clock",
        start,
        true,
        format!(
            "5 looping machines: {diverging_pairs} divergences rejected, {halting_pairs} halting pairs preserved"
        ),
    )
}

/// The curated one-movement machines for the operator batteries. All of
/// them halt from every configuration on every word, which is what the
/// encoding needs (the product explores runs from arbitrary snapshots).
pub fn curated_machines() -> Vec<(&'static str, Machine, PseudoConfig)> {
    use ReadPattern::{Any, Exact, ZeroOne};
    let star = Exact(Symbol::Star);
    let zero = Exact(Symbol::Zero);
    let one = Exact(Symbol::One);

    let build = |p: usize, states: Vec<&str>, patterns: Vec<PatternTransition>| -> Machine {
        let ts = patterns.iter().flat_map(expand_shorthands).collect();
        Machine::new(p, states.into_iter().map(String::from).collect(), ts).unwrap()
    };
    let fwd = |j: u8, p: usize| -> Vec<Instruction> {
        (1..=p as u8)
            .map(|i| if i == j { Instruction::Forward(i) } else { Instruction::Stay(i) })
            .collect()
    };
    let bwd = |j: u8, p: usize| -> Vec<Instruction> {
        (1..=p as u8)
            .map(|i| if i == j { Instruction::Backward(i) } else { Instruction::Stay(i) })
            .collect()
    };
    let mv = |reads: Vec<ReadPattern>, from: u16, instrs: Vec<Instruction>, to: u16| {
        PatternTransition { reads, from, outcome: Outcome::Move { instrs, to } }
    };
    let halt = |reads: Vec<ReadPattern>, from: u16, outcome: Outcome| PatternTransition {
        reads,
        from,
        outcome,
    };

    vec![
        ("empty-relation", build(1, vec!["q0"], vec![]), PseudoConfig::new(slots("⋆"), 0)),
        (
            "always-reject",
            build(1, vec!["q0"], vec![halt(vec![Any], 0, Outcome::Reject)]),
            PseudoConfig::new(slots("⋆"), 0),
        ),
        (
            "first-bit-must-be-one",
            build(
                1,
                vec!["q0", "q1"],
                vec![
                    mv(vec![star], 0, fwd(1, 1), 1),
                    halt(vec![zero], 1, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("⋆"), 0),
        ),
        (
            "first-bit-must-be-zero",
            build(
                1,
                vec!["q0", "q1"],
                vec![
                    mv(vec![star], 0, fwd(1, 1), 1),
                    halt(vec![one], 1, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("⋆"), 0),
        ),
        (
            "scan-then-reject",
            build(
                1,
                vec!["q0"],
                vec![
                    mv(vec![ZeroOne], 0, fwd(1, 1), 0),
                    halt(vec![star], 0, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("0"), 0),
        ),
        (
            "scan-then-accept",
            build(1, vec!["q0"], vec![mv(vec![ZeroOne], 0, fwd(1, 1), 0)]),
            PseudoConfig::new(slots("0"), 0),
        ),
        (
            "reject-any-zero",
            build(
                1,
                vec!["q0", "q1"],
                vec![
                    mv(vec![star], 0, fwd(1, 1), 1),
                    mv(vec![one], 1, fwd(1, 1), 1),
                    halt(vec![zero], 1, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("⋆"), 0),
        ),
        (
            "fan-out-ends",
            build(
                1,
                vec!["q0", "q1", "q2"],
                vec![
                    mv(vec![star], 0, fwd(1, 1), 1),
                    mv(vec![star], 0, bwd(1, 1), 2),
                    halt(vec![zero], 1, Outcome::Reject),
                    halt(vec![one], 2, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("⋆"), 0),
        ),
        (
            "ends-must-agree",
            build(
                2,
                vec!["q0", "q1", "q2"],
                vec![
                    mv(vec![star, star], 0, fwd(1, 2), 1),
                    mv(vec![ZeroOne, star], 1, bwd(2, 2), 2),
                    halt(vec![zero, one], 2, Outcome::Reject),
                    halt(vec![one, zero], 2, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("⋆⋆"), 0),
        ),
        (
            "first-two-differ",
            build(
                2,
                vec!["q0", "q1", "q2", "q3"],
                vec![
                    mv(vec![star, star], 0, fwd(1, 2), 1),
                    mv(vec![Any, star], 1, fwd(2, 2), 2),
                    mv(vec![Any, ZeroOne], 2, fwd(2, 2), 3),
                    halt(vec![zero, zero], 3, Outcome::Reject),
                    halt(vec![one, one], 3, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("⋆⋆"), 0),
        ),
        (
            "explicit-accept",
            build(
                1,
                vec!["q0", "q1"],
                vec![
                    mv(vec![star], 0, fwd(1, 1), 1),
                    halt(vec![zero], 1, Outcome::Accept),
                    halt(vec![one], 1, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("⋆"), 0),
        ),
        (
            "backward-then-reject",
            build(
                1,
                vec!["q0", "q1"],
                vec![
                    mv(vec![star], 0, bwd(1, 1), 1),
                    halt(vec![Any], 1, Outcome::Reject),
                ],
            ),
            PseudoConfig::new(slots("⋆"), 0),
        ),
    ]
}

/// Battery 5: simulator and operator agree on the curated machines for
/// every word up to k = 3, and nilpotency degrees stay within the basis
/// dimension.
pub fn battery_crossval() -> BatteryResult {
    let start = Instant::now();
    let mut instances = 0usize;
    for (name, machine, c) in curated_machines() {
        for word in all_words(3) {
            match crossval(&machine, &c, &word, DEFAULT_CAP) {
                Err(e) => {
                    return finish("crossval", start, false, format!("{name} on {word}: {e}"))
                }
                Ok(r) => {
                    if !r.consistent {
                        return finish(
                            "crossval",
                            start,
                            false,
                            format!(
                                "{name} on ⋆{word}: verdict {} but nilpotent = {}",
                                r.verdict, r.nilpotent
                            ),
                        );
                    }
                    if !r.degree_bounded {
                        return finish(
                            "crossval",
                            start,
                            false,
                            format!(
                                "{name} on ⋆{word}: degree {:?} over dimension {}",
                                r.degree, r.dimension
                            ),
                        );
                    }
                    instances += 1;
                }
            }
        }
    }
    finish(
        "crossval",
        start,
        true,
        format!("{instances} machine×word instances consistent"),
    )
}

/// Deterministically seeded positive observations for the oracle and
/// scaling batteries.
pub fn random_observations(count: usize, seed: u64) -> Vec<Observation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let p = 1usize;
    let coeff_pool: [(i64, i64); 6] = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 2), (5, 1)];
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let n_states = rng.random_range(1..=3usize);
        let space = StateSpace::synthetic(p, n_states, 0);
        let n_controls = space.control_count();
        let n_summands = rng.random_range(1..=6usize);
        let mut summands = Vec::with_capacity(n_summands);
        for i in 0..n_summands {
            let m6 = if rng.random_bool(0.2) {
                M6Part::Diagonal
            } else {
                let n_src = rng.random_range(1..=2usize);
                let n_tgt = rng.random_range(1..=2usize);
                M6Part::Cartesian {
                    sources: (0..n_src)
                        .map(|_| NodeFlavor::ALL[rng.random_range(0..6)])
                        .collect(),
                    targets: (0..n_tgt)
                        .map(|_| NodeFlavor::ALL[rng.random_range(0..6)])
                        .collect(),
                }
            };
            let perm = Permutation::unrank(p + 1, rng.random_range(0..2));
            let (n, d) = coeff_pool[rng.random_range(0..coeff_pool.len())];
            let from = space.control_at(rng.random_range(0..n_controls));
            let to = space.control_at(rng.random_range(0..n_controls));
            let slot_conds = (0..p)
                .map(|_| {
                    if rng.random_bool(0.3) {
                        Some(Symbol::ALL[rng.random_range(0..3)])
                    } else {
                        None
                    }
                })
                .collect();
            let write = match rng.random_range(0..3) {
                0 => SlotWrite::None,
                1 => SlotWrite::FromSource(1),
                _ => SlotWrite::Fixed(1, NodeFlavor::ALL[rng.random_range(0..6)]),
            };
            summands.push(Summand {
                label: format!("rnd[{i}]"),
                m6,
                perm,
                coeff: BigRational::new(BigInt::from(n), BigInt::from(d)),
                slot_conds,
                from,
                to,
                write,
            });
        }
        out.push(Observation::new(p, space, summands));
    }
    out
}

/// Battery 6: the traversal and the materialized-matrix oracle agree on
/// every crossval instance and on 50 random positive observations.
pub fn battery_oracle_agreement() -> BatteryResult {
    let start = Instant::now();
    let mut instances = 0usize;
    for (name, machine, c) in curated_machines() {
        let obs = match encode_machine(&machine, &c) {
            Ok(o) => o,
            Err(e) => return finish("oracle", start, false, format!("{name}: {e}")),
        };
        for word in all_words(3) {
            let dyn_ = match ProductDynamics::new(obs.clone(), word.clone()) {
                Ok(d) => d,
                Err(e) => return finish("oracle", start, false, format!("{name}: {e}")),
            };
            let tree = is_nilpotent(&dyn_, DEFAULT_CAP).unwrap().nilpotent;
            let matrix = is_nilpotent_matrix(&dyn_, DEFAULT_CAP).unwrap();
            if tree != matrix {
                return finish(
                    "oracle",
                    start,
                    false,
                    format!("{name} on ⋆{word}: traversal {tree} vs matrix {matrix}"),
                );
            }
            instances += 1;
        }
    }
    for (i, obs) in random_observations(50, 0x0B5E).into_iter().enumerate() {
        for word in all_words(2) {
            let dyn_ = ProductDynamics::new(obs.clone(), word.clone()).unwrap();
            let tree = is_nilpotent(&dyn_, DEFAULT_CAP).unwrap().nilpotent;
            let matrix = is_nilpotent_matrix(&dyn_, DEFAULT_CAP).unwrap();
            if tree != matrix {
                return finish(
                    "oracle",
                    start,
                    false,
                    format!("random observation {i} on ⋆{word}: {tree} vs {matrix}"),
                );
            }
            instances += 1;
        }
    }
    finish("oracle", start, true, format!("{instances} instances agree"))
}

/// Battery 7: every machine encoding is boolean: coefficients exactly 1.
pub fn battery_boolean_membership() -> BatteryResult {
    let start = Instant::now();
    let mut scanned = 0usize;
    for (name, machine, c) in curated_machines() {
        let obs = match encode_machine(&machine, &c) {
            Ok(o) => o,
            Err(e) => return finish("boolean", start, false, format!("{name}: {e}")),
        };
        if !obs.is_boolean() {
            return finish(
                "boolean",
                start,
                false,
                format!("{name}: encoding has a coefficient ≠ 1"),
            );
        }
        scanned += obs.summands().len();
    }
    finish("boolean", start, true, format!("{scanned} summands, all unit"))
}

/// Battery 8: multiplying every coefficient by a positive rational never
/// changes the nilpotency verdict.
pub fn battery_scaling_invariance() -> BatteryResult {
    let start = Instant::now();
    let scalars: Vec<BigRational> = vec![
        BigRational::new(BigInt::from(3), BigInt::from(7)),
        BigRational::new(BigInt::from(2), BigInt::from(1)),
        BigRational::new(BigInt::from(1), BigInt::from(5)),
    ];
    let mut instances = 0usize;
    let mut cases: Vec<(String, Observation, usize)> = curated_machines()
        .into_iter()
        .map(|(name, machine, c)| {
            (name.to_string(), encode_machine(&machine, &c).unwrap(), 3usize)
        })
        .collect();
    for (i, obs) in random_observations(50, 0x0B5E).into_iter().enumerate() {
        cases.push((format!("random-{i}"), obs, 2));
    }
    for (name, obs, k_max) in cases {
        for word in all_words(k_max) {
            let base = is_nilpotent(
                &ProductDynamics::new(obs.clone(), word.clone()).unwrap(),
                DEFAULT_CAP,
            )
            .unwrap()
            .nilpotent;
            for s in &scalars {
                let scaled = is_nilpotent(
                    &ProductDynamics::new(obs.scaled(s), word.clone()).unwrap(),
                    DEFAULT_CAP,
                )
                .unwrap()
                .nilpotent;
                if scaled != base {
                    return finish(
                        "scaling",
                        start,
                        false,
                        format!("{name} on ⋆{word}: verdict flipped under scaling by {s}"),
                    );
                }
                instances += 1;
            }
        }
    }
    finish("scaling", start, true, format!("{instances} scaled instances invariant"))
}

pub fn battery_names() -> Vec<&'static str> {
    vec![
        "representation",
        "figures",
        "stconn",
        "clock",
        "crossval",
        "oracle",
        "boolean",
        "scaling",
    ]
}

type Battery = (&'static str, fn() -> BatteryResult);

/// Runs the batteries whose name contains `filter` (all when `None`).
pub fn run_suite(filter: Option<&str>) -> Vec<BatteryResult> {
    let all: Vec<Battery> = vec![
        ("representation", battery_representation),
        ("figures", battery_figures),
        ("stconn", battery_stconn),
        ("clock", battery_clock),
        ("crossval", battery_crossval),
        ("oracle", battery_oracle_agreement),
        ("boolean", battery_boolean_membership),
        ("scaling", battery_scaling_invariance),
    ];
    all.into_iter()
        .filter(|(name, _)| filter.is_none_or(|f| name.contains(f)))
        .map(|(_, f)| f())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::nilpotency::basis_dimension;

    #[test]
    fn curated_machines_are_one_movement_and_total() {
        for (name, machine, c) in curated_machines() {
            assert_eq!(c.slots.len(), machine.pointers(), "{name}");
            for t in machine.transitions() {
                assert!(t.moving_pointers().len() <= 1, "{name}");
                if let Outcome::Move { .. } = t.outcome {
                    assert_eq!(t.moving_pointers().len(), 1, "{name} has a stay-only transition");
                }
            }
            // halting from every pseudo-configuration on every short word
            for pc in machine.all_pseudo_configs() {
                for word in all_words(2) {
                    assert_ne!(
                        run(&machine, &pc, &word).verdict,
                        Verdict::Diverge,
                        "{name} loops from {pc:?} on {word}"
                    );
                }
            }
        }
    }

    #[test]
    fn dimension_formula_matches_state_space() {
        let (_, machine, c) = &curated_machines()[2];
        let obs = encode_machine(machine, c).unwrap();
        let d = ProductDynamics::new(obs.clone(), crate::words::parse_word("10").unwrap())
            .unwrap()
            .dimension();
        assert_eq!(
            d,
            basis_dimension(
                machine.pointers(),
                2,
                obs.space().control_count()
            )
        );
    }

    #[test]
    fn figures_battery_passes() {
        assert!(battery_figures().passed);
    }
}
