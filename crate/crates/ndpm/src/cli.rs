//! Command-line front end. Primary results go to stdout as JSON with
//! stable key order; diagnostics go to stderr. Exit codes: 0 on
//! success/consistency, 1 on an inconsistency or failed property, 2 on
//! usage or parse errors.

use crate::format::{parse_machine, parse_pseudo_config, MachineFile};
use crate::machine::{run, step, Configuration, Machine, PseudoConfig, StepOutcome, Verdict};
use crate::nilpotency::{
    crossval, is_nilpotent, is_nilpotent_matrix, ProductDynamics, DEFAULT_CAP,
};
use crate::observation::encode_machine;
use crate::stconn::{reach_oracle, stconn_initial, stconn_machine, DirectedGraph};
use crate::suite::run_suite;
use crate::words::parse_word;
use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::path::PathBuf;

pub const CAP_ENV: &str = "NDPM_NILPOTENCY_CAP";

#[derive(Parser)]
#[command(name = "ndpm", about = "Pointer machines and their nilpotency-based operator encoding")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct MachineInput {
    /// Machine file.
    machine: PathBuf,
    /// Input word over {0,1}; the circular start symbol is implicit.
    #[arg(long, default_value = "")]
    word: String,
    /// Initial pseudo-configuration `sym,…;state` (overrides the file's
    /// `initial:` line).
    #[arg(long)]
    pseudo: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Run a machine on a word and report the verdict.
    Run {
        #[command(flatten)]
        input: MachineInput,
        /// Print the explored configuration graph to stderr.
        #[arg(long)]
        trace: bool,
    },
    /// Decide "no path from node 1 to node n" and compare with the oracle.
    Stconn {
        /// Graph file: first line n, then n rows of n 0/1 entries.
        graph: PathBuf,
    },
    /// Dump the block matrix of a word as coordinate triples.
    Matrix {
        /// The word, as a 0/1 string.
        word: String,
        /// Emit the slice graph as DOT instead.
        #[arg(long)]
        dot: bool,
    },
    /// Dump the operator encoding of a machine.
    Encode {
        #[command(flatten)]
        input: MachineInput,
    },
    /// Decide nilpotency of the machine's encoding against a word.
    Nilpotency {
        #[command(flatten)]
        input: MachineInput,
        /// tree | matrix | both
        #[arg(long, default_value = "tree")]
        method: String,
        /// Basis-size cap (also settable via NDPM_NILPOTENCY_CAP).
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run the simulator and the nilpotency decision side by side.
    Crossval {
        #[command(flatten)]
        input: MachineInput,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Run the cross-validation batteries.
    Suite {
        /// Only batteries whose name contains this string.
        #[arg(long)]
        filter: Option<String>,
    },
}

fn fail(code: i32, message: impl AsRef<str>) -> i32 {
    eprintln!("ndpm: {}", message.as_ref());
    code
}

fn cap_from(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(CAP_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_CAP)
}

fn load_machine(path: &PathBuf) -> Result<MachineFile, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("{}: {e}", path.display()))?;
    parse_machine(&path.display().to_string(), &text).map_err(|e| e.to_string())
}

fn resolve_pseudo(
    mf: &MachineFile,
    flag: &Option<String>,
) -> Result<PseudoConfig, String> {
    if let Some(text) = flag {
        return parse_pseudo_config(text, &mf.machine).map_err(|e| format!("--pseudo: {e}"));
    }
    mf.initial
        .clone()
        .ok_or_else(|| "no `initial:` line in the machine file; pass --pseudo".to_string())
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("serializable"));
}

fn verdict_str(v: Verdict) -> &'static str {
    match v {
        Verdict::Accept => "ACCEPT",
        Verdict::Reject => "REJECT",
        Verdict::Diverge => "DIVERGE",
    }
}

fn trace_run(machine: &Machine, c: &PseudoConfig, word: &crate::words::BinaryWord) {
    const LIMIT: usize = 1000;
    let mut ids: HashMap<Configuration, usize> = HashMap::new();
    let start = Configuration {
        positions: vec![0; machine.pointers()],
        slots: c.slots.clone(),
        state: c.state,
    };
    ids.insert(start.clone(), 0);
    let mut queue = std::collections::VecDeque::from([start]);
    while let Some(config) = queue.pop_front() {
        let id = ids[&config];
        if id >= LIMIT {
            eprintln!("… trace truncated at {LIMIT} configurations");
            break;
        }
        let mut rendered: Vec<String> = Vec::new();
        for outcome in step(machine, word, &config) {
            match outcome {
                StepOutcome::Accept => rendered.push("accept".into()),
                StepOutcome::Reject => rendered.push("reject".into()),
                StepOutcome::Next(next) => {
                    let next_id = match ids.get(&next) {
                        Some(&i) => i,
                        None => {
                            let i = ids.len();
                            ids.insert(next.clone(), i);
                            queue.push_back(next.clone());
                            i
                        }
                    };
                    rendered.push(format!("#{next_id}"));
                }
            }
        }
        let slots: String = config.slots.iter().map(|s| s.as_char()).collect();
        eprintln!(
            "#{id} {} pos={:?} slots={slots} -> {}",
            machine.state_name(config.state),
            config.positions,
            rendered.join(" | ")
        );
    }
}

pub fn main() -> i32 {
    let cli = Cli::parse();
    match cli.command {
        Command::Run { input, trace } => {
            let mf = match load_machine(&input.machine) {
                Ok(m) => m,
                Err(e) => return fail(2, e),
            };
            let word = match parse_word(&input.word) {
                Ok(w) => w,
                Err(e) => return fail(2, e.to_string()),
            };
            let pseudo = match resolve_pseudo(&mf, &input.pseudo) {
                Ok(c) => c,
                Err(e) => return fail(2, e),
            };
            if trace {
                trace_run(&mf.machine, &pseudo, &word);
            }
            let r = run(&mf.machine, &pseudo, &word);
            print_json(&json!({
                "verdict": verdict_str(r.verdict),
                "configurations": r.stats.configurations,
                "leaf_branches": r.stats.leaf_branches,
                "max_depth": r.stats.max_depth,
            }));
            0
        }
        Command::Stconn { graph } => {
            let text = match std::fs::read_to_string(&graph) {
                Ok(t) => t,
                Err(e) => return fail(2, format!("{}: {e}", graph.display())),
            };
            let g = match DirectedGraph::parse(&text) {
                Ok(g) => g,
                Err(e) => return fail(2, format!("{}: {e}", graph.display())),
            };
            let machine = stconn_machine();
            let r = run(&machine, &stconn_initial(&machine), &g.encode());
            let oracle = reach_oracle(&g);
            let agree = (r.verdict == Verdict::Accept) == !oracle && r.verdict != Verdict::Diverge;
            print_json(&json!({
                "verdict": verdict_str(r.verdict),
                "oracle": oracle,
                "agree": agree,
            }));
            if agree {
                0
            } else {
                1
            }
        }
        Command::Matrix { word, dot } => {
            let w = match parse_word(&word) {
                Ok(w) => w,
                Err(e) => return fail(2, e.to_string()),
            };
            if dot {
                print!("{}", crate::integer::build_graph(&w).to_dot());
                return 0;
            }
            match crate::integer::build_matrix(&w) {
                Err(e) => fail(2, e.to_string()),
                Ok(m) => {
                    for (r, c) in m.coordinate_triples() {
                        println!("{r} {c} 1");
                    }
                    0
                }
            }
        }
        Command::Encode { input } => {
            let mf = match load_machine(&input.machine) {
                Ok(m) => m,
                Err(e) => return fail(2, e),
            };
            let pseudo = match resolve_pseudo(&mf, &input.pseudo) {
                Ok(c) => c,
                Err(e) => return fail(2, e),
            };
            match encode_machine(&mf.machine, &pseudo) {
                Err(e) => fail(2, e.to_string()),
                Ok(obs) => {
                    for line in obs.dump_lines() {
                        println!("{line}");
                    }
                    0
                }
            }
        }
        Command::Nilpotency { input, method, cap } => {
            let mf = match load_machine(&input.machine) {
                Ok(m) => m,
                Err(e) => return fail(2, e),
            };
            let word = match parse_word(&input.word) {
                Ok(w) => w,
                Err(e) => return fail(2, e.to_string()),
            };
            let pseudo = match resolve_pseudo(&mf, &input.pseudo) {
                Ok(c) => c,
                Err(e) => return fail(2, e),
            };
            let obs = match encode_machine(&mf.machine, &pseudo) {
                Ok(o) => o,
                Err(e) => return fail(2, e.to_string()),
            };
            let dynamics = match ProductDynamics::new(obs, word) {
                Ok(d) => d,
                Err(e) => return fail(1, e.to_string()),
            };
            let cap = cap_from(cap);
            let mut out = serde_json::Map::new();
            out.insert("method".into(), json!(method));
            out.insert("basis_size".into(), json!(dynamics.dimension().to_string()));
            let tree = match method.as_str() {
                "tree" | "both" => match is_nilpotent(&dynamics, cap) {
                    Ok(r) => Some(r),
                    Err(e) => return fail(1, e.to_string()),
                },
                "matrix" => None,
                other => return fail(2, format!("unknown method {other:?}")),
            };
            let matrix = match method.as_str() {
                "matrix" | "both" => match is_nilpotent_matrix(&dynamics, cap) {
                    Ok(b) => Some(b),
                    Err(e) => return fail(1, e.to_string()),
                },
                _ => None,
            };
            let nilpotent = tree.as_ref().map(|r| r.nilpotent).or(matrix).unwrap();
            out.insert("nilpotent".into(), json!(nilpotent));
            if let Some(r) = &tree {
                if let Some(deg) = r.degree {
                    out.insert("degree".into(), json!(deg));
                }
                if let Some(cycle) = &r.cycle {
                    let rendered: Vec<String> = cycle
                        .iter()
                        .map(|v| {
                            let mem: Vec<&str> =
                                v.state.slots.iter().map(|f| f.label()).collect();
                            format!(
                                "(π={}, a={:?}, σ={}, mem=[{}], ctrl={})",
                                v.pi.label(),
                                v.positions,
                                v.sigma,
                                mem.join(" "),
                                dynamics.observation().space().control_label(v.state.control),
                            )
                        })
                        .collect();
                    out.insert("cycle".into(), json!(rendered));
                }
            }
            if let (Some(t), Some(m)) = (tree.as_ref().map(|r| r.nilpotent), matrix) {
                out.insert("methods_agree".into(), json!(t == m));
                if t != m {
                    print_json(&Value::Object(out));
                    return 1;
                }
            }
            print_json(&Value::Object(out));
            0
        }
        Command::Crossval { input, cap } => {
            let mf = match load_machine(&input.machine) {
                Ok(m) => m,
                Err(e) => return fail(2, e),
            };
            let word = match parse_word(&input.word) {
                Ok(w) => w,
                Err(e) => return fail(2, e.to_string()),
            };
            let pseudo = match resolve_pseudo(&mf, &input.pseudo) {
                Ok(c) => c,
                Err(e) => return fail(2, e),
            };
            match crossval(&mf.machine, &pseudo, &word, cap_from(cap)) {
                Err(e) => fail(1, e.to_string()),
                Ok(r) => {
                    print_json(&json!({
                        "verdict": verdict_str(r.verdict),
                        "nilpotent": r.nilpotent,
                        "degree": r.degree,
                        "dimension": r.dimension.to_string(),
                        "consistent": r.consistent,
                        "degree_bounded": r.degree_bounded,
                    }));
                    if r.consistent && r.degree_bounded {
                        0
                    } else {
                        1
                    }
                }
            }
        }
        Command::Suite { filter } => {
            let results = run_suite(filter.as_deref());
            if results.is_empty() {
                return fail(2, "no battery matches the filter");
            }
            let mut all_passed = true;
            for r in &results {
                println!(
                    "{:<16} {}  ({:.2}s)  {}",
                    r.name,
                    if r.passed { "pass" } else { "FAIL" },
                    r.seconds,
                    r.detail
                );
                all_passed &= r.passed;
            }
            if all_passed {
                0
            } else {
                1
            }
        }
    }
}
