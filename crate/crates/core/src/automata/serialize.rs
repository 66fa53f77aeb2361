//! JSON documents and Graphviz DOT for explicit machines.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

use super::{Fsa, Pda, SaAction, StackAutomaton, Symbol};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateDoc {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TransitionDoc {
    pub from: usize,
    /// `null` for a silent move.
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub top: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub at_top: Option<bool>,
    pub to: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub push: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub action: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MachineDoc {
    #[serde(rename = "type")]
    pub kind: &'static str,
    pub id: String,
    pub symbols: Vec<String>,
    pub states: Vec<StateDoc>,
    pub initial: usize,
    pub accepting: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stack_alphabet: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub deterministic: Option<bool>,
    pub transitions: Vec<TransitionDoc>,
}

fn states(n: usize, labels: &[String]) -> Vec<StateDoc> {
    (0..n).map(|id| StateDoc { id, label: labels.get(id).cloned() }).collect()
}

fn stack_str(g: &[u8]) -> String {
    g.iter().map(|&c| c as char).collect()
}

pub trait Exportable {
    fn to_doc(&self, id: &str) -> MachineDoc;
}

impl<S: Symbol> Exportable for Fsa<S> {
    fn to_doc(&self, id: &str) -> MachineDoc {
        let transitions = self
            .transitions
            .iter()
            .flat_map(|((q, a), ts)| {
                ts.iter().map(move |&t| TransitionDoc { from: *q, input: Some(a.render()), top: None, at_top: None, to: t, push: None, action: None })
            })
            .collect();
        MachineDoc {
            kind: "fsa",
            id: id.to_string(),
            symbols: self.alphabet.iter().map(Symbol::render).collect(),
            states: states(self.num_states, &self.labels),
            initial: self.initial,
            accepting: self.accepting.iter().copied().collect(),
            stack_alphabet: None,
            deterministic: Some(self.is_deterministic()),
            transitions,
        }
    }
}

impl<S: Symbol> Exportable for Pda<S> {
    fn to_doc(&self, id: &str) -> MachineDoc {
        let transitions = self
            .transitions
            .iter()
            .flat_map(|((q, a, top), ts)| {
                ts.iter().map(move |(t, push)| TransitionDoc {
                    from: *q,
                    input: a.map(|a| a.render()),
                    top: top.map(|g| (g as char).to_string()),
                    at_top: None,
                    to: *t,
                    push: Some(stack_str(push)),
                    action: None,
                })
            })
            .collect();
        MachineDoc {
            kind: "pda",
            id: id.to_string(),
            symbols: self.alphabet.iter().map(Symbol::render).collect(),
            states: states(self.num_states, &self.labels),
            initial: self.initial,
            accepting: self.accepting.iter().copied().collect(),
            stack_alphabet: Some(self.stack_alphabet.iter().map(|&g| (g as char).to_string()).collect()),
            deterministic: Some(self.deterministic),
            transitions,
        }
    }
}

fn action_str(a: &SaAction) -> String {
    match a {
        SaAction::Push(g) => format!("push {}", *g as char),
        SaAction::Pop => "pop".into(),
        SaAction::Up => "up".into(),
        SaAction::Down => "down".into(),
        SaAction::Stay => "stay".into(),
    }
}

impl<S: Symbol> Exportable for StackAutomaton<S> {
    fn to_doc(&self, id: &str) -> MachineDoc {
        let transitions = self
            .transitions
            .iter()
            .flat_map(|((q, a, under, at_top), ts)| {
                ts.iter().map(move |(t, act)| TransitionDoc {
                    from: *q,
                    input: a.map(|a| a.render()),
                    top: under.map(|g| (g as char).to_string()),
                    at_top: Some(*at_top),
                    to: *t,
                    push: None,
                    action: Some(action_str(act)),
                })
            })
            .collect();
        MachineDoc {
            kind: "sa",
            id: id.to_string(),
            symbols: self.alphabet.iter().map(Symbol::render).collect(),
            states: states(self.num_states, &self.labels),
            initial: self.initial,
            accepting: self.accepting.iter().copied().collect(),
            stack_alphabet: Some(self.stack_alphabet.iter().map(|&g| (g as char).to_string()).collect()),
            deterministic: None,
            transitions,
        }
    }
}

pub fn to_json(doc: &MachineDoc) -> String {
    serde_json::to_string_pretty(doc).expect("machine documents always serialize")
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

pub fn to_dot(doc: &MachineDoc) -> String {
    let mut edges: BTreeMap<(usize, usize), Vec<String>> = BTreeMap::new();
    for t in &doc.transitions {
        let mut label = t.input.clone().unwrap_or_else(|| "ε".into());
        if let Some(top) = &t.top {
            let _ = write!(label, ",{top}");
        }
        if let Some(true) = t.at_top {
            label.push('^');
        }
        if let Some(p) = &t.push {
            let _ = write!(label, "/{p}");
        }
        if let Some(a) = &t.action {
            let _ = write!(label, "/{a}");
        }
        edges.entry((t.from, t.to)).or_default().push(label);
    }
    let mut out = String::new();
    let _ = writeln!(out, "digraph \"{}\" {{", dot_escape(&doc.id));
    out.push_str("  rankdir=LR;\n  __start [shape=point];\n");
    for s in &doc.states {
        let shape = if doc.accepting.contains(&s.id) { "doublecircle" } else { "circle" };
        let _ = writeln!(out, "  q{} [shape={shape}, label=\"{}\"];", s.id, s.id);
    }
    let _ = writeln!(out, "  __start -> q{};", doc.initial);
    for ((a, b), labels) in &edges {
        let _ = writeln!(out, "  q{a} -> q{b} [label=\"{}\"];", dot_escape(&labels.join(" | ")));
    }
    out.push_str("}\n");
    out
}
