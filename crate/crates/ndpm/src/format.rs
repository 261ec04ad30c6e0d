//! Text format for pointer machines.
//!
//! ```text
//! pointers: 2
//! states: q0 q1
//! initial: ⋆,⋆;q0
//! ⋆ ⋆ q0 -> +1 .2 q1
//! 0 * q1 -> reject
//! 0/1 ⋆ q1 -> -1 .2 q0
//! ```
//!
//! Premise tokens are `0`, `1`, `⋆`, the wildcard `*`, or `0/1`;
//! instructions are `+j`, `-j`, `.j`. Wildcards are expanded on load. The
//! optional `initial:` line names the distinguished pseudo-configuration;
//! its symbols must be concrete.

use crate::machine::{
    expand_shorthands, Instruction, Machine, MachineError, Outcome, PatternTransition,
    PseudoConfig, ReadPattern,
};
use crate::words::Symbol;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("{file}:{line}: {message} (token {token:?})")]
    Syntax { file: String, line: usize, token: String, message: String },
    #[error("{file}: {source}")]
    Machine { file: String, source: MachineError },
    #[error("{file}: missing `pointers:` line")]
    MissingPointers { file: String },
    #[error("{file}: missing `states:` line")]
    MissingStates { file: String },
}

/// A parsed machine file: the (shorthand-expanded) machine and the optional
/// distinguished initial pseudo-configuration.
#[derive(Debug, Clone)]
pub struct MachineFile {
    pub machine: Machine,
    pub initial: Option<PseudoConfig>,
}

fn syntax(file: &str, line: usize, token: &str, message: &str) -> ParseError {
    ParseError::Syntax {
        file: file.to_string(),
        line,
        token: token.to_string(),
        message: message.to_string(),
    }
}

fn parse_read_pattern(tok: &str) -> Option<ReadPattern> {
    match tok {
        "0" => Some(ReadPattern::Exact(Symbol::Zero)),
        "1" => Some(ReadPattern::Exact(Symbol::One)),
        "⋆" => Some(ReadPattern::Exact(Symbol::Star)),
        "*" => Some(ReadPattern::Any),
        "0/1" => Some(ReadPattern::ZeroOne),
        _ => None,
    }
}

fn parse_instruction(tok: &str, slot: usize) -> Option<Instruction> {
    let (head, idx) = tok.split_at(1);
    let j: u8 = idx.parse().ok()?;
    if j as usize != slot + 1 {
        return None;
    }
    match head {
        "+" => Some(Instruction::Forward(j)),
        "-" => Some(Instruction::Backward(j)),
        "." => Some(Instruction::Stay(j)),
        _ => None,
    }
}

/// Parses the `sym,sym,…;state` pseudo-configuration syntax. Wildcards are
/// forbidden: an initial pseudo-configuration is concrete by definition.
pub fn parse_pseudo_config(text: &str, machine: &Machine) -> Result<PseudoConfig, String> {
    let (syms, state_name) = text
        .split_once(';')
        .ok_or_else(|| format!("expected `sym,…;state`, got {text:?}"))?;
    let mut slots = Vec::new();
    for tok in syms.split(',') {
        let s = match tok.trim() {
            "0" => Symbol::Zero,
            "1" => Symbol::One,
            "⋆" => Symbol::Star,
            "*" => return Err("wildcard `*` is not allowed in a pseudo-configuration".into()),
            other => return Err(format!("unknown symbol {other:?}")),
        };
        slots.push(s);
    }
    if slots.len() != machine.pointers() {
        return Err(format!(
            "pseudo-configuration has {} symbols, machine has {} pointers",
            slots.len(),
            machine.pointers()
        ));
    }
    let state = machine
        .state_id(state_name.trim())
        .ok_or_else(|| format!("unknown state {:?}", state_name.trim()))?;
    Ok(PseudoConfig::new(slots, state))
}

/// Parses a machine file, expanding shorthands.
pub fn parse_machine(file: &str, text: &str) -> Result<MachineFile, ParseError> {
    let mut pointers: Option<usize> = None;
    let mut states: Option<Vec<String>> = None;
    let mut initial_line: Option<(usize, String)> = None;
    let mut patterns: Vec<PatternTransition> = Vec::new();
    // resolved lazily once the states line is known
    let state_id = |states: &[String], name: &str, line: usize| -> Result<u16, ParseError> {
        states
            .iter()
            .position(|s| s == name)
            .map(|i| i as u16)
            .ok_or_else(|| syntax(file, line, name, "unknown state"))
    };

    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("pointers:") {
            pointers = Some(
                rest.trim()
                    .parse()
                    .map_err(|_| syntax(file, line, rest.trim(), "expected a pointer count"))?,
            );
            continue;
        }
        if let Some(rest) = content.strip_prefix("states:") {
            states = Some(rest.split_whitespace().map(|s| s.to_string()).collect());
            continue;
        }
        if let Some(rest) = content.strip_prefix("initial:") {
            initial_line = Some((line, rest.trim().to_string()));
            continue;
        }
        let p = pointers.ok_or_else(|| ParseError::MissingPointers { file: file.into() })?;
        let state_names = states
            .as_ref()
            .ok_or_else(|| ParseError::MissingStates { file: file.into() })?;

        let (lhs, rhs) = content
            .split_once("->")
            .ok_or_else(|| syntax(file, line, content, "expected `->` in transition"))?;
        let lhs_toks: Vec<&str> = lhs.split_whitespace().collect();
        if lhs_toks.len() != p + 1 {
            return Err(syntax(file, line, lhs.trim(), "premise must list p symbols and a state"));
        }
        let mut reads = Vec::with_capacity(p);
        for tok in &lhs_toks[..p] {
            reads.push(
                parse_read_pattern(tok)
                    .ok_or_else(|| syntax(file, line, tok, "unknown premise symbol"))?,
            );
        }
        let from = state_id(state_names, lhs_toks[p], line)?;

        let rhs_toks: Vec<&str> = rhs.split_whitespace().collect();
        let outcome = match rhs_toks.as_slice() {
            ["accept"] => Outcome::Accept,
            ["reject"] => Outcome::Reject,
            toks if toks.len() == p + 1 => {
                let mut instrs = Vec::with_capacity(p);
                for (slot, tok) in toks[..p].iter().enumerate() {
                    instrs.push(parse_instruction(tok, slot).ok_or_else(|| {
                        syntax(file, line, tok, "expected `+j`, `-j` or `.j` for this slot")
                    })?);
                }
                let to = state_id(state_names, toks[p], line)?;
                Outcome::Move { instrs, to }
            }
            _ => {
                return Err(syntax(
                    file,
                    line,
                    rhs.trim(),
                    "expected `accept`, `reject`, or p instructions and a state",
                ))
            }
        };
        patterns.push(PatternTransition { reads, from, outcome });
    }

    let p = pointers.ok_or_else(|| ParseError::MissingPointers { file: file.into() })?;
    let state_names = states.ok_or_else(|| ParseError::MissingStates { file: file.into() })?;
    let transitions = patterns.iter().flat_map(expand_shorthands).collect();
    let machine = Machine::new(p, state_names, transitions)
        .map_err(|source| ParseError::Machine { file: file.into(), source })?;
    let initial = match initial_line {
        None => None,
        Some((line, text)) => Some(
            parse_pseudo_config(&text, &machine)
                .map_err(|m| syntax(file, line, &text, &m))?,
        ),
    };
    Ok(MachineFile { machine, initial })
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# reject words whose first letter is 0
pointers: 1
states: q0 q1
initial: ⋆;q0
⋆ q0 -> +1 q1
0 q1 -> reject
";

    #[test]
    fn parses_and_expands() {
        let mf = parse_machine("sample", SAMPLE).unwrap();
        assert_eq!(mf.machine.pointers(), 1);
        assert_eq!(mf.machine.transitions().len(), 2);
        let init = mf.initial.unwrap();
        assert_eq!(init.slots, vec![Symbol::Star]);
        assert_eq!(mf.machine.state_name(init.state), "q0");
    }

    #[test]
    fn wildcards_expand_on_load() {
        let text = "pointers: 2\nstates: a\n* 0/1 a -> accept\n";
        let mf = parse_machine("w", text).unwrap();
        assert_eq!(mf.machine.transitions().len(), 6);
    }

    #[test]
    fn reports_line_and_token() {
        let text = "pointers: 1\nstates: a\n0 a -> ?1 a\n";
        let err = parse_machine("bad", text).unwrap_err();
        match err {
            ParseError::Syntax { line, token, .. } => {
                assert_eq!(line, 3);
                assert_eq!(token, "?1");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn pseudo_config_rejects_wildcards() {
        let mf = parse_machine("s", "pointers: 1\nstates: a\n").unwrap();
        assert!(parse_pseudo_config("*;a", &mf.machine).is_err());
        assert!(parse_pseudo_config("1;a", &mf.machine).is_ok());
    }
}
