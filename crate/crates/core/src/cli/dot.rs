use std::fmt::Write;

use super::document::Document;
use crate::engine::SuccinctAutomaton;
use crate::monad::Monad;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// A target of one transition: plain edges to states, or edges through an
/// intermediate conjunction node.
enum Target {
    States(Vec<(usize, String)>),
    Conjunctions(Vec<Vec<(usize, bool)>>),
}

struct Graph {
    out: String,
    squares: usize,
}

impl Graph {
    fn new(labels: Vec<String>, accepting: Vec<bool>) -> Self {
        let mut out = String::from("digraph automaton {\n  rankdir=LR;\n  start [shape=point];\n");
        for (q, (label, acc)) in labels.iter().zip(accepting).enumerate() {
            let shape = if acc { "doublecircle" } else { "circle" };
            let _ = writeln!(out, "  s{q} [shape={shape}, label={}];", quote(label));
        }
        Graph { out, squares: 0 }
    }

    fn edges(&mut self, from: &str, label: &str, target: Target) {
        match target {
            Target::States(ts) => {
                for (q, weight) in ts {
                    let label = if weight.is_empty() {
                        label.to_string()
                    } else {
                        format!("{label}, {weight}")
                    };
                    let _ = writeln!(self.out, "  {from} -> s{q} [label={}];", quote(&label));
                }
            }
            Target::Conjunctions(clauses) => {
                for clause in clauses {
                    if let [(q, true)] = clause.as_slice() {
                        let _ = writeln!(self.out, "  {from} -> s{q} [label={}];", quote(label));
                        continue;
                    }
                    let sq = format!("c{}", self.squares);
                    self.squares += 1;
                    let _ = writeln!(
                        self.out,
                        "  {sq} [shape=square, style=filled, fillcolor=black, width=0.12, label=\"\"];"
                    );
                    let _ = writeln!(self.out, "  {from} -> {sq} [label={}];", quote(label));
                    for (q, positive) in clause {
                        let style = if positive {
                            ""
                        } else {
                            " [style=dashed, arrowhead=odot]"
                        };
                        let _ = writeln!(self.out, "  {sq} -> s{q}{style};");
                    }
                }
            }
        }
    }

    fn finish(mut self) -> String {
        self.out.push_str("}\n");
        self.out
    }
}

fn succinct<M: Monad>(
    s: &SuccinctAutomaton<M>,
    label: impl Fn(usize) -> String,
    accepting: impl Fn(usize) -> bool,
    target: impl Fn(&M::Elem) -> Target,
) -> String {
    let names = s.names();
    let mut g = Graph::new(
        (0..names.len()).map(&label).collect(),
        (0..names.len()).map(&accepting).collect(),
    );
    g.edges("start", "", target(s.initial()));
    for (q, row) in s.transitions().iter().enumerate() {
        for (a, u) in row.iter().enumerate() {
            g.edges(&format!("s{q}"), s.alphabet().symbol(a), target(u));
        }
    }
    g.finish()
}

/// Graphviz rendering. Conjunctions of alternating and CABA formulas are
/// drawn as small filled squares; negated CABA literals use dashed edges.
pub fn to_dot(doc: &Document) -> String {
    match doc {
        Document::Moore(m) => {
            let names = m.names();
            let accepting: Vec<bool> = m
                .outputs()
                .iter()
                .map(|o| o.to_string() == "true")
                .collect();
            let labels = names
                .iter()
                .zip(m.outputs())
                .map(|(n, o)| match o.to_string().as_str() {
                    "true" | "false" => n.clone(),
                    t => format!("{n} / {t}"),
                })
                .collect();
            let mut g = Graph::new(labels, accepting);
            g.edges(
                "start",
                "",
                Target::States(vec![(m.initial(), String::new())]),
            );
            for (q, row) in m.transitions().iter().enumerate() {
                for (a, &t) in row.iter().enumerate() {
                    g.edges(
                        &format!("s{q}"),
                        m.alphabet().symbol(a),
                        Target::States(vec![(t, String::new())]),
                    );
                }
            }
            g.finish()
        }
        Document::Powerset(s) => succinct(
            s,
            |q| s.names()[q].clone(),
            |q| *s.output(q),
            |u| Target::States(u.iter().map(|&x| (x, String::new())).collect()),
        ),
        Document::Alternating(s) => succinct(
            s,
            |q| s.names()[q].clone(),
            |q| *s.output(q),
            |u| {
                Target::Conjunctions(
                    u.clause_lists()
                        .into_iter()
                        .map(|c| c.into_iter().map(|x| (x, true)).collect())
                        .collect(),
                )
            },
        ),
        Document::Caba(s) => succinct(
            s,
            |q| s.names()[q].clone(),
            |q| *s.output(q),
            |u| {
                let n = s.len();
                Target::Conjunctions(
                    u.valuations()
                        .iter()
                        .map(|&v| (0..n).map(|x| (x, v >> x & 1 == 1)).collect())
                        .collect(),
                )
            },
        ),
        Document::Group(s) => {
            let group = s.monad().group();
            succinct(
                s,
                |q| format!("{} / {}", s.names()[q], group.outputs()[*s.output(q)]),
                |_| false,
                |u| Target::States(vec![(u.x, group.names()[u.g].clone())]),
            )
        }
        Document::Weighted(s) => succinct(
            s,
            |q| format!("{} / {}", s.names()[q], s.output(q)),
            |_| false,
            |u| Target::States(u.terms().map(|(x, c)| (x, c.to_string())).collect()),
        ),
    }
}
