use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::engine::{SuccinctAutomaton, WeightedAutomaton};
use crate::error::{Error, Result};
use crate::field::{Field, Scalar, VecElem, VectorMonad};
use crate::monad::Monad;
use crate::moore::{Alphabet, MooreMachine};
use crate::set_monads::{
    Alternating, Antichain, Caba, CabaElem, FiniteGroup, GroupElem, GroupMonad, Powerset,
};

/// Output of a deterministic machine as written in a document.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Token {
    Bool(bool),
    Text(String),
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Bool(b) => write!(f, "{b}"),
            Token::Text(t) => f.write_str(t),
        }
    }
}

impl Token {
    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Bool(b) => Ok(Token::Bool(*b)),
            Value::String(s) => Ok(Token::Text(s.clone())),
            Value::Number(n) => Ok(Token::Text(n.to_string())),
            other => Err(Error::input(format!("`{other}` is not an output value"))),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Token::Bool(b) => Value::Bool(*b),
            Token::Text(t) => Value::String(t.clone()),
        }
    }
}

/// A parsed automaton document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Moore(MooreMachine<Token>),
    Powerset(SuccinctAutomaton<Powerset>),
    Alternating(SuccinctAutomaton<Alternating>),
    Caba(SuccinctAutomaton<Caba>),
    Group(SuccinctAutomaton<GroupMonad>),
    Weighted(WeightedAutomaton),
}

#[derive(Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    monad: Option<String>,
    alphabet: Vec<String>,
    states: Vec<String>,
    initial: Value,
    output: Vec<Value>,
    transitions: Vec<Vec<Value>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    field: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    group: Option<GroupDocument>,
}

/// A finite group, either as a full table or as generating permutations of
/// some finite domain. Actions are keyed by element (or generator) name and
/// give the image of every alphabet symbol / output, by position.
#[derive(Clone, Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDocument {
    pub alphabet: Vec<String>,
    pub outputs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutations: Option<BTreeMap<String, Vec<usize>>>,
    pub alphabet_action: BTreeMap<String, Vec<usize>>,
    pub output_action: BTreeMap<String, Vec<usize>>,
}

impl GroupDocument {
    pub fn parse(text: &str) -> Result<FiniteGroup> {
        let doc: GroupDocument =
            serde_json::from_str(text).map_err(|e| Error::input(format!("group document: {e}")))?;
        doc.build()
    }

    pub fn build(&self) -> Result<FiniteGroup> {
        let action = |map: &BTreeMap<String, Vec<usize>>, name: &str, what: &str| {
            map.get(name)
                .cloned()
                .ok_or_else(|| Error::input(format!("no {what} action given for `{name}`")))
        };
        match (&self.elements, &self.table, &self.permutations) {
            (Some(names), Some(table), None) => {
                let alpha = names
                    .iter()
                    .map(|n| action(&self.alphabet_action, n, "alphabet"))
                    .collect::<Result<_>>()?;
                let out = names
                    .iter()
                    .map(|n| action(&self.output_action, n, "output"))
                    .collect::<Result<_>>()?;
                FiniteGroup::from_table(
                    names.clone(),
                    table.clone(),
                    self.alphabet.clone(),
                    alpha,
                    self.outputs.clone(),
                    out,
                )
            }
            (None, None, Some(perms)) => {
                let gens = perms
                    .iter()
                    .map(|(n, p)| {
                        Ok((
                            n.clone(),
                            p.clone(),
                            action(&self.alphabet_action, n, "alphabet")?,
                            action(&self.output_action, n, "output")?,
                        ))
                    })
                    .collect::<Result<_>>()?;
                FiniteGroup::from_generators(self.alphabet.clone(), self.outputs.clone(), gens)
            }
            _ => Err(Error::input(
                "a group needs either `elements` with `table`, or `permutations`",
            )),
        }
    }

    /// The table form of a group.
    pub fn of(group: &FiniteGroup) -> Self {
        let names = group.names();
        let alpha = group.alphabet().len();
        let outs = group.outputs().len();
        GroupDocument {
            alphabet: group.alphabet().to_vec(),
            outputs: group.outputs().to_vec(),
            elements: Some(names.to_vec()),
            table: Some(group.table().to_vec()),
            permutations: None,
            alphabet_action: (0..names.len())
                .map(|g| {
                    (
                        names[g].clone(),
                        (0..alpha).map(|a| group.act_symbol(g, a)).collect(),
                    )
                })
                .collect(),
            output_action: (0..names.len())
                .map(|g| {
                    (
                        names[g].clone(),
                        (0..outs).map(|o| group.act_output(g, o)).collect(),
                    )
                })
                .collect(),
        }
    }
}

fn bad(what: impl fmt::Display) -> Error {
    Error::input(what.to_string())
}

/// Resolves a state reference given as a name or an index.
fn state_ref(v: &Value, names: &[String]) -> Result<usize> {
    match v {
        Value::String(s) => names
            .iter()
            .position(|n| n == s)
            .ok_or_else(|| bad(format!("unknown state `{s}`"))),
        Value::Number(n) => n
            .as_u64()
            .map(|i| i as usize)
            .filter(|&i| i < names.len())
            .ok_or_else(|| bad(format!("state index {n} out of range"))),
        other => Err(bad(format!("`{other}` is not a state reference"))),
    }
}

fn array<'a>(v: &'a Value, what: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| bad(format!("{what} must be a list, found `{v}`")))
}

/// Encodes and decodes configurations of one monad.
trait Codec: Monad {
    fn decode(&self, v: &Value, names: &[String]) -> Result<Self::Elem>;
    fn encode(&self, u: &Self::Elem, names: &[String]) -> Value;
    fn decode_out(&self, v: &Value) -> Result<Self::Out>;
    fn encode_out(&self, o: &Self::Out) -> Value;
}

impl Codec for Powerset {
    fn decode(&self, v: &Value, names: &[String]) -> Result<Vec<usize>> {
        let mut set = array(v, "a powerset configuration")?
            .iter()
            .map(|x| state_ref(x, names))
            .collect::<Result<Vec<_>>>()?;
        set.sort_unstable();
        set.dedup();
        Ok(set)
    }

    fn encode(&self, u: &Vec<usize>, _names: &[String]) -> Value {
        json!(u)
    }

    fn decode_out(&self, v: &Value) -> Result<bool> {
        v.as_bool()
            .ok_or_else(|| bad(format!("output `{v}` must be a boolean")))
    }

    fn encode_out(&self, o: &bool) -> Value {
        json!(o)
    }
}

fn clauses(v: &Value, names: &[String]) -> Result<Vec<Vec<usize>>> {
    array(v, "a formula")?
        .iter()
        .map(|c| {
            array(c, "a clause")?
                .iter()
                .map(|x| state_ref(x, names))
                .collect()
        })
        .collect()
}

impl Codec for Alternating {
    fn decode(&self, v: &Value, names: &[String]) -> Result<Antichain> {
        if names.len() > 64 {
            return Err(bad("alternating automata hold at most 64 states"));
        }
        let masks = clauses(v, names)?
            .into_iter()
            .map(|c| c.iter().fold(0u64, |m, &x| m | 1 << x));
        Ok(Antichain::from_clauses(masks))
    }

    fn encode(&self, u: &Antichain, names: &[String]) -> Value {
        Value::Array(
            u.clause_lists()
                .into_iter()
                .map(|c| json!(c.iter().map(|&x| &names[x]).collect::<Vec<_>>()))
                .collect(),
        )
    }

    fn decode_out(&self, v: &Value) -> Result<bool> {
        Powerset.decode_out(v)
    }

    fn encode_out(&self, o: &bool) -> Value {
        json!(o)
    }
}

impl Codec for Caba {
    /// Each valuation lists every state once, as `q` or `!q`.
    fn decode(&self, v: &Value, names: &[String]) -> Result<CabaElem> {
        let mut vals = Vec::new();
        for clause in array(v, "a CABA formula")? {
            let lits = array(clause, "a valuation")?;
            let mut seen = vec![false; names.len()];
            let mut mask = 0u64;
            for lit in lits {
                let text = lit
                    .as_str()
                    .ok_or_else(|| bad(format!("literal `{lit}` must be a state name")))?;
                let (negated, name) = match text.strip_prefix('!') {
                    Some(n) => (true, n),
                    None => (false, text),
                };
                let x = state_ref(&json!(name), names)?;
                if std::mem::replace(&mut seen[x], true) {
                    return Err(bad(format!("valuation mentions `{name}` twice")));
                }
                if !negated {
                    mask |= 1 << x;
                }
            }
            if let Some(x) = seen.iter().position(|s| !s) {
                return Err(bad(format!(
                    "valuation {clause} must mention every state; `{}` is missing",
                    names[x]
                )));
            }
            vals.push(mask);
        }
        CabaElem::new(names.len(), vals)
    }

    fn encode(&self, u: &CabaElem, names: &[String]) -> Value {
        Value::Array(
            u.valuations()
                .iter()
                .map(|&v| {
                    json!((0..names.len())
                        .map(|x| if v >> x & 1 == 1 {
                            names[x].clone()
                        } else {
                            format!("!{}", names[x])
                        })
                        .collect::<Vec<_>>())
                })
                .collect(),
        )
    }

    fn decode_out(&self, v: &Value) -> Result<bool> {
        Powerset.decode_out(v)
    }

    fn encode_out(&self, o: &bool) -> Value {
        json!(o)
    }
}

impl Codec for GroupMonad {
    /// `[group element, state]`.
    fn decode(&self, v: &Value, names: &[String]) -> Result<GroupElem> {
        let pair = array(v, "a group configuration")?;
        let [g, x] = pair.as_slice() else {
            return Err(bad(format!(
                "group configuration `{v}` must be [element, state]"
            )));
        };
        let group = self.group();
        let g = match g {
            Value::String(s) => group.index_of(s),
            Value::Number(n) => n
                .as_u64()
                .map(|i| i as usize)
                .filter(|&i| i < group.order()),
            _ => None,
        }
        .ok_or_else(|| bad(format!("unknown group element `{g}`")))?;
        Ok(GroupElem {
            g,
            x: state_ref(x, names)?,
        })
    }

    fn encode(&self, u: &GroupElem, _names: &[String]) -> Value {
        json!([self.group().names()[u.g], u.x])
    }

    fn decode_out(&self, v: &Value) -> Result<usize> {
        let token = Token::from_json(v)?.to_string();
        self.group()
            .output_index(&token)
            .ok_or_else(|| bad(format!("output `{token}` is not acted on by the group")))
    }

    fn encode_out(&self, o: &usize) -> Value {
        json!(self.group().outputs()[*o])
    }
}

fn scalar(field: Field, v: &Value) -> Result<Scalar> {
    match v {
        Value::String(s) => field.parse_scalar(s),
        Value::Number(n) => field.parse_scalar(&n.to_string()),
        other => Err(bad(format!("`{other}` is not a scalar"))),
    }
}

impl Codec for VectorMonad {
    /// `{state: coefficient}`.
    fn decode(&self, v: &Value, names: &[String]) -> Result<VecElem> {
        let map = v.as_object().ok_or_else(|| {
            bad(format!(
                "a weighted configuration must be a map, found `{v}`"
            ))
        })?;
        let terms = map
            .iter()
            .map(|(k, c)| Ok((state_ref(&json!(k), names)?, scalar(self.field(), c)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(VecElem::from_terms(terms))
    }

    fn encode(&self, u: &VecElem, names: &[String]) -> Value {
        Value::Object(
            u.terms()
                .map(|(x, c)| (names[x].clone(), json!(c.to_string())))
                .collect(),
        )
    }

    fn decode_out(&self, v: &Value) -> Result<Scalar> {
        scalar(self.field(), v)
    }

    fn encode_out(&self, o: &Scalar) -> Value {
        json!(o.to_string())
    }
}

/// One key per line; lists of lists (transition rows, group tables) and
/// nested objects get one entry per line, everything else stays compact.
fn layout(value: &Value) -> String {
    fn block(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Object(map) if !map.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in map.iter().enumerate() {
                    out.push_str(&format!("{pad}{}: ", Value::String(k.clone())));
                    block(x, indent + 1, out);
                    out.push_str(if i + 1 < map.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            Value::Array(items)
                if items.iter().any(|x| x.is_array() || x.is_object()) && indent < 2 =>
            {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&x.to_string());
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            other => out.push_str(&other.to_string()),
        }
    }
    let mut out = String::new();
    block(value, 0, &mut out);
    out.push('\n');
    out
}

fn check_names(names: &[String]) -> Result<()> {
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(bad(format!("state name `{n}` is used twice")));
        }
    }
    Ok(())
}

fn decode_succinct<M: Codec>(
    monad: M,
    raw: &RawDocument,
    alphabet: Alphabet,
) -> Result<SuccinctAutomaton<M>> {
    let names = &raw.states;
    let initial = monad.decode(&raw.initial, names)?;
    let output = raw
        .output
        .iter()
        .map(|v| monad.decode_out(v))
        .collect::<Result<Vec<_>>>()?;
    let trans = raw
        .transitions
        .iter()
        .map(|row| row.iter().map(|v| monad.decode(v, names)).collect())
        .collect::<Result<Vec<_>>>()?;
    SuccinctAutomaton::new(monad, alphabet, names.clone(), initial, output, trans)
}

fn encode_succinct<M: Codec>(s: &SuccinctAutomaton<M>) -> RawDocument {
    let m = s.monad();
    let names = s.names();
    RawDocument {
        kind: "succinct".into(),
        monad: Some(m.name().into()),
        alphabet: s.alphabet().symbols().to_vec(),
        states: names.to_vec(),
        initial: m.encode(s.initial(), names),
        output: s.outputs().iter().map(|o| m.encode_out(o)).collect(),
        transitions: s
            .transitions()
            .iter()
            .map(|row| row.iter().map(|u| m.encode(u, names)).collect())
            .collect(),
        field: None,
        group: None,
    }
}

impl Document {
    pub fn parse(text: &str) -> Result<Self> {
        let raw: RawDocument =
            serde_json::from_str(text).map_err(|e| bad(format!("automaton document: {e}")))?;
        check_names(&raw.states)?;
        let alphabet = Alphabet::new(raw.alphabet.iter().cloned())?;
        let kind = raw.kind.as_str();
        let monad = raw.monad.as_deref();
        if raw.field.is_some() && !(kind == "weighted" || monad == Some("vector")) {
            return Err(bad("`field` is only allowed on weighted documents"));
        }
        if raw.group.is_some() && monad != Some("group") {
            return Err(bad("`group` is only allowed on group documents"));
        }
        match (kind, monad) {
            ("moore", None) => {
                let names = &raw.states;
                let initial = state_ref(&raw.initial, names)?;
                let output = raw
                    .output
                    .iter()
                    .map(Token::from_json)
                    .collect::<Result<_>>()?;
                let trans = raw
                    .transitions
                    .iter()
                    .map(|row| row.iter().map(|v| state_ref(v, names)).collect())
                    .collect::<Result<_>>()?;
                Ok(Document::Moore(MooreMachine::new(
                    alphabet,
                    names.clone(),
                    initial,
                    output,
                    trans,
                )?))
            }
            ("succinct", Some("powerset")) => Ok(Document::Powerset(decode_succinct(
                Powerset, &raw, alphabet,
            )?)),
            ("succinct", Some("alternating")) => Ok(Document::Alternating(decode_succinct(
                Alternating,
                &raw,
                alphabet,
            )?)),
            ("succinct", Some("caba")) => {
                Ok(Document::Caba(decode_succinct(Caba, &raw, alphabet)?))
            }
            ("succinct", Some("group")) => {
                let group = raw
                    .group
                    .as_ref()
                    .ok_or_else(|| bad("group documents need an inline `group`"))?
                    .build()?
                    .aligned_to(&alphabet)?;
                Ok(Document::Group(decode_succinct(
                    GroupMonad::new(group),
                    &raw,
                    alphabet,
                )?))
            }
            ("weighted", None) | ("succinct", Some("vector")) => {
                let field = Field::parse(raw.field.as_deref().unwrap_or("rational"))?;
                Ok(Document::Weighted(decode_succinct(
                    VectorMonad::new(field),
                    &raw,
                    alphabet,
                )?))
            }
            ("moore", Some(m)) => Err(bad(format!("moore documents take no monad, found `{m}`"))),
            ("succinct", None) => Err(bad("succinct documents need a `monad`")),
            ("succinct", Some(m)) => Err(bad(format!("unknown monad `{m}`"))),
            (k, _) => Err(bad(format!("unknown document kind `{k}`"))),
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let raw = match self {
            Document::Moore(m) => RawDocument {
                kind: "moore".into(),
                monad: None,
                alphabet: m.alphabet().symbols().to_vec(),
                states: m.names().to_vec(),
                initial: json!(m.initial()),
                output: m.outputs().iter().map(Token::to_json).collect(),
                transitions: m
                    .transitions()
                    .iter()
                    .map(|row| row.iter().map(|&t| json!(t)).collect())
                    .collect(),
                field: None,
                group: None,
            },
            Document::Powerset(s) => encode_succinct(s),
            Document::Alternating(s) => encode_succinct(s),
            Document::Caba(s) => encode_succinct(s),
            Document::Group(s) => RawDocument {
                group: Some(GroupDocument::of(s.monad().group())),
                ..encode_succinct(s)
            },
            Document::Weighted(s) => RawDocument {
                kind: "weighted".into(),
                monad: None,
                field: Some(s.monad().field().spec()),
                ..encode_succinct(s)
            },
        };
        layout(&serde_json::to_value(raw).expect("documents serialize"))
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            Document::Moore(m) => m.alphabet(),
            Document::Powerset(s) => s.alphabet(),
            Document::Alternating(s) => s.alphabet(),
            Document::Caba(s) => s.alphabet(),
            Document::Group(s) => s.alphabet(),
            Document::Weighted(s) => s.alphabet(),
        }
    }

    pub fn state_count(&self) -> usize {
        match self {
            Document::Moore(m) => m.len(),
            Document::Powerset(s) => s.len(),
            Document::Alternating(s) => s.len(),
            Document::Caba(s) => s.len(),
            Document::Group(s) => s.len(),
            Document::Weighted(s) => s.len(),
        }
    }

    /// `moore`, `weighted`, or the monad of a succinct document.
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Moore(_) => "moore",
            Document::Powerset(_) => "powerset",
            Document::Alternating(_) => "alternating",
            Document::Caba(_) => "caba",
            Document::Group(_) => "group",
            Document::Weighted(_) => "weighted",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn caba_valuations_must_be_full() {
        let text = r#"{"kind":"succinct","monad":"caba","alphabet":["a"],"states":["p","q"],
            "initial":[["p"]],"output":[false,true],"transitions":[[[]],[[]]]}"#;
        let err = Document::parse(text).unwrap_err();
        assert!(
            err.to_string().contains("must mention every state"),
            "{err}"
        );
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"kind":"moore","alphabet":["a"],"states":["p"],"initial":0,
            "output":[true],"transitions":[[0]],"extra":1}"#;
        assert!(Document::parse(text).is_err());
    }

    #[test]
    fn moore_round_trip() {
        let text = r#"{"kind":"moore","alphabet":["a","b"],"states":["p","q"],"initial":"q",
            "output":[true, 3],"transitions":[[0,"q"],[1,0]]}"#;
        let doc = Document::parse(text).unwrap();
        let printed = doc.to_json();
        assert_eq!(Document::parse(&printed).unwrap(), doc);
        assert_eq!(Document::parse(&printed).unwrap().to_json(), printed);
        assert!(printed.find("\"alphabet\"").unwrap() < printed.find("\"initial\"").unwrap());
    }
}
