//! The four-pointer machine deciding "no directed path from node 1 to node
//! n" on adjacency-encoded graphs, plus a breadth-first reachability oracle
//! to validate it against.
//!
//! The transition table is transcribed from its published form with three
//! repairs, listed in `REPAIRS.md` at the repository root.

use crate::machine::{
    expand_shorthands, run, Machine, Outcome, PatternTransition, PseudoConfig, ReadPattern,
    RunResult,
};
use crate::words::{encode_graph, BinaryWord, Symbol};
use thiserror::Error;

/// A directed graph given by its adjacency table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    pub n: usize,
    pub adjacency: Vec<Vec<bool>>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphParseError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("graph must have at least one node")]
    Empty,
}

impl DirectedGraph {
    pub fn new(adjacency: Vec<Vec<bool>>) -> Result<Self, GraphParseError> {
        let n = adjacency.len();
        if n == 0 {
            return Err(GraphParseError::Empty);
        }
        for (i, row) in adjacency.iter().enumerate() {
            if row.len() != n {
                return Err(GraphParseError::Malformed {
                    line: i + 2,
                    message: format!("row has {} entries, expected {n}", row.len()),
                });
            }
        }
        Ok(DirectedGraph { n, adjacency })
    }

    /// Parses the text format: first line `n`, then `n` lines of `n`
    /// space-separated 0/1 entries.
    pub fn parse(text: &str) -> Result<Self, GraphParseError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (lno, first) = lines.next().ok_or(GraphParseError::Empty)?;
        let n: usize = first.trim().parse().map_err(|_| GraphParseError::Malformed {
            line: lno + 1,
            message: format!("expected node count, got {:?}", first.trim()),
        })?;
        if n == 0 {
            return Err(GraphParseError::Empty);
        }
        let mut adjacency = Vec::with_capacity(n);
        for _ in 0..n {
            let (lno, row_text) = lines.next().ok_or(GraphParseError::Malformed {
                line: lno + 1,
                message: format!("expected {n} adjacency rows"),
            })?;
            let mut row = Vec::with_capacity(n);
            for tok in row_text.split_whitespace() {
                match tok {
                    "0" => row.push(false),
                    "1" => row.push(true),
                    other => {
                        return Err(GraphParseError::Malformed {
                            line: lno + 1,
                            message: format!("expected 0 or 1, got {other:?}"),
                        })
                    }
                }
            }
            if row.len() != n {
                return Err(GraphParseError::Malformed {
                    line: lno + 1,
                    message: format!("row has {} entries, expected {n}", row.len()),
                });
            }
            adjacency.push(row);
        }
        DirectedGraph::new(adjacency)
    }

    pub fn encode(&self) -> BinaryWord {
        encode_graph(&self.adjacency).expect("n >= 1 by construction")
    }
}

/// True iff a directed path leads from node 1 to node n.
pub fn reach_oracle(g: &DirectedGraph) -> bool {
    let mut seen = vec![false; g.n];
    let mut queue = std::collections::VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        if v == g.n - 1 {
            return true;
        }
        for (w, &edge) in g.adjacency[v].iter().enumerate() {
            if edge && !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    false
}

const P1: u8 = 1;
const P2: u8 = 2;
const P3: u8 = 3;
const P4: u8 = 4;

/// The published transition table, shorthand-expanded, with the repairs of
/// `REPAIRS.md` applied: rule 8's unindexed stay instruction reads `.2`,
/// rule 13 fires only while the path-length counter reads `0`, and rule 15
/// parks the column tracker on position 1 instead of 0.
pub fn stconn_machine() -> Machine {
    build_stconn_machine(true)
}

/// The table as printed (modulo rule 8, whose missing index admits only one
/// reading). Kept as a regression witness: without the rule 13 and 15
/// repairs the machine loops on cyclic graphs and misses paths after the
/// first hop. See `REPAIRS.md`.
pub fn stconn_machine_as_printed() -> Machine {
    build_stconn_machine(false)
}

fn build_stconn_machine(repaired: bool) -> Machine {
    use ReadPattern::{Any, Exact, ZeroOne};
    let zero = Exact(Symbol::Zero);
    let one = Exact(Symbol::One);
    let star = Exact(Symbol::Star);

    let names = [
        "Init",
        "out.edge?",
        "no.edge",
        "p3.next.node",
        "reading.sep.bit",
        "edge.found",
        "rewind.p2.p4",
        "rewind.p2",
        "exchange.p2.p3",
        "get.p3.to.start",
    ];
    let id = |name: &str| names.iter().position(|n| *n == name).unwrap() as u16;

    let reads = |s1: ReadPattern, s2: ReadPattern, s3: ReadPattern, s4: ReadPattern| {
        vec![s1, s2, s3, s4]
    };
    // +j / -j / .j by 1-based pointer, as a full instruction vector
    let mv = |moves: [i8; 4], to: &str| -> Outcome {
        let instrs = moves
            .iter()
            .zip([P1, P2, P3, P4])
            .map(|(&m, j)| match m {
                1 => crate::machine::Instruction::Forward(j),
                -1 => crate::machine::Instruction::Backward(j),
                _ => crate::machine::Instruction::Stay(j),
            })
            .collect();
        Outcome::Move { instrs, to: id(to) }
    };

    let rules = vec![
        // 1
        PatternTransition {
            reads: reads(star, star, star, star),
            from: id("Init"),
            outcome: mv([1, 1, 1, 1], "Init"),
        },
        // 2
        PatternTransition {
            reads: reads(Any, zero, Any, Any),
            from: id("Init"),
            outcome: mv([0, 1, 1, 0], "Init"),
        },
        // 3
        PatternTransition {
            reads: reads(Any, one, Any, Any),
            from: id("Init"),
            outcome: mv([0, 1, 0, 0], "out.edge?"),
        },
        // 4
        PatternTransition {
            reads: reads(Any, zero, Any, Any),
            from: id("out.edge?"),
            outcome: mv([0, 1, 0, 1], "no.edge"),
        },
        // 5
        PatternTransition {
            reads: reads(Any, zero, Any, Any),
            from: id("no.edge"),
            outcome: mv([0, 0, 1, 0], "p3.next.node"),
        },
        // 6
        PatternTransition {
            reads: reads(Any, one, Any, Any),
            from: id("no.edge"),
            outcome: Outcome::Accept,
        },
        // 7
        PatternTransition {
            reads: reads(Any, Any, Any, Any),
            from: id("p3.next.node"),
            outcome: mv([0, 0, 1, 0], "reading.sep.bit"),
        },
        // 8 (repaired instruction slot for p2)
        PatternTransition {
            reads: reads(Any, Any, zero, Any),
            from: id("reading.sep.bit"),
            outcome: mv([0, 0, 1, 0], "p3.next.node"),
        },
        // 9
        PatternTransition {
            reads: reads(Any, Any, one, Any),
            from: id("reading.sep.bit"),
            outcome: mv([0, 1, 0, 0], "out.edge?"),
        },
        // 10, the nondeterministic fan-out
        PatternTransition {
            reads: reads(Any, one, Any, Any),
            from: id("out.edge?"),
            outcome: mv([0, 1, 0, 1], "no.edge"),
        },
        PatternTransition {
            reads: reads(Any, one, Any, Any),
            from: id("out.edge?"),
            outcome: mv([1, 0, 0, 1], "edge.found"),
        },
        // 11
        PatternTransition {
            reads: reads(Any, Any, Any, one),
            from: id("edge.found"),
            outcome: Outcome::Reject,
        },
        // 12
        PatternTransition {
            reads: reads(one, Any, Any, zero),
            from: id("edge.found"),
            outcome: Outcome::Accept,
        },
        // 13 (repaired premise: continue only while the counter reads 0)
        PatternTransition {
            reads: reads(if repaired { zero } else { Any }, Any, Any, zero),
            from: id("edge.found"),
            outcome: mv([0, -1, 0, -1], "rewind.p2.p4"),
        },
        // 14
        PatternTransition {
            reads: reads(Any, Any, Any, ZeroOne),
            from: id("rewind.p2.p4"),
            outcome: mv([0, -1, 0, -1], "rewind.p2.p4"),
        },
        // 15 (repaired: p4 steps back to position 1)
        PatternTransition {
            reads: reads(Any, Any, Any, star),
            from: id("rewind.p2.p4"),
            outcome: mv([0, -1, 0, if repaired { 1 } else { 0 }], "rewind.p2"),
        },
        // 16
        PatternTransition {
            reads: reads(Any, ZeroOne, Any, Any),
            from: id("rewind.p2"),
            outcome: mv([0, -1, 0, 0], "rewind.p2"),
        },
        // 17
        PatternTransition {
            reads: reads(Any, star, Any, Any),
            from: id("rewind.p2"),
            outcome: mv([0, 1, -1, 0], "exchange.p2.p3"),
        },
        // 18
        PatternTransition {
            reads: reads(Any, Any, ZeroOne, Any),
            from: id("exchange.p2.p3"),
            outcome: mv([0, 1, -1, 0], "exchange.p2.p3"),
        },
        // 19
        PatternTransition {
            reads: reads(Any, Any, star, Any),
            from: id("exchange.p2.p3"),
            outcome: mv([0, 0, 1, 0], "get.p3.to.start"),
        },
        // 20
        PatternTransition {
            reads: reads(Any, Any, zero, Any),
            from: id("get.p3.to.start"),
            outcome: mv([0, 0, 1, 0], "get.p3.to.start"),
        },
        // 21
        PatternTransition {
            reads: reads(Any, Any, one, Any),
            from: id("get.p3.to.start"),
            outcome: mv([0, 1, 0, 0], "out.edge?"),
        },
    ];

    let transitions = rules.iter().flat_map(expand_shorthands).collect();
    Machine::new(4, names.iter().map(|s| s.to_string()).collect(), transitions)
        .expect("the transcribed table is well-formed")
}

/// The machine's distinguished initial pseudo-configuration.
pub fn stconn_initial(machine: &Machine) -> PseudoConfig {
    PseudoConfig::new(vec![Symbol::Star; 4], machine.state_id("Init").unwrap())
}

/// Runs the machine on the encoded graph; ACCEPT means "no path from 1 to n".
pub fn decide_stconn(g: &DirectedGraph) -> RunResult {
    let machine = stconn_machine();
    run(&machine, &stconn_initial(&machine), &g.encode())
}
