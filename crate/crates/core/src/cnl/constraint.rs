//! Inter-argument constraint sentences: flagging, parsing and lowering to
//! `anyOf` implications.
//!
//! ```text
//! start    ::= only when cond "."?
//! only     ::= "only" ("used" | "effective" | "compatible" | "significant" | "available" | "applies")?
//! when     ::= "when" | "if" | "with" | "in" | "for"
//! cond     ::= atom | cond ("and" | "or") cond
//! atom     ::= NAME compare seq | "the"? seq NAME ("is" "used")?
//! seq      ::= val (("," val)* ","? ("and" | "or") val)?
//! compare  ::= "==" | "=" | ">" | "<" | ">=" | "<=" | "is" "set" "to" | "is"
//! val      ::= NUMBER | NAME | QUOTED
//!
//! start2   ::= "the"? (NAME seq | seq NAME) ("support" | "supports") "only" seq NAME? "."?
//! ```
//!
//! `and` binds tighter than `or`. Among complete parses the first one found
//! in production order is kept.

use indexmap::IndexMap;
use regex::Regex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::lexer::{tokenize, Token, TokenKind};
use crate::literal::{Literal, LiteralValue};
use crate::numpydoc::ArgDoc;
use crate::text::sentences;

pub const DEFAULT_TRIGGERS: [&str; 4] = [
    r"(?i)\bonly\b",
    r"Only used when",
    r"only supported by",
    r"support only",
];

/// Longer candidate sentences are not parsed; they become placeholders.
const MAX_TOKENS: usize = 48;

const ONLY_VERBS: [&str; 6] = [
    "used",
    "effective",
    "compatible",
    "significant",
    "available",
    "applies",
];
const WHEN_WORDS: [&str; 5] = ["when", "if", "with", "in", "for"];

#[derive(Debug, Clone)]
pub struct TriggerSet {
    patterns: Vec<Regex>,
}

impl TriggerSet {
    pub fn new<S: AsRef<str>>(patterns: &[S]) -> Result<Self, regex::Error> {
        let patterns = patterns
            .iter()
            .map(|p| Regex::new(p.as_ref()))
            .collect::<Result<_, _>>()?;
        Ok(TriggerSet { patterns })
    }

    /// The first pattern matching `sentence`.
    pub fn matching(&self, sentence: &str) -> Option<&str> {
        self.patterns
            .iter()
            .find(|r| r.is_match(sentence))
            .map(Regex::as_str)
    }
}

impl Default for TriggerSet {
    fn default() -> Self {
        TriggerSet::new(&DEFAULT_TRIGGERS).expect("built-in triggers compile")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateSentence {
    pub owner_arg: String,
    pub text: String,
    pub matched_trigger: String,
}

pub fn flag_candidates(arg: &ArgDoc, triggers: &TriggerSet) -> Vec<CandidateSentence> {
    sentences(&arg.long_desc)
        .into_iter()
        .filter_map(|s| {
            let trig = triggers.matching(&s)?.to_string();
            Some(CandidateSentence {
                owner_arg: arg.name.clone(),
                text: s,
                matched_trigger: trig,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Compare {
    EqEq,
    Eq,
    Gt,
    Lt,
    Ge,
    Le,
    IsSetTo,
    Is,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cond {
    Atom {
        name: String,
        compare: Compare,
        values: Vec<Literal>,
    },
    SeqAtom {
        values: Vec<Literal>,
        name: String,
    },
    And(Box<Cond>, Box<Cond>),
    Or(Box<Cond>, Box<Cond>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintAst {
    OnlyWhen {
        only_verb: Option<String>,
        when_word: String,
        cond: Cond,
    },
    /// `<NAME> <premise> support(s) only <conclusion> [<target>]`.
    SupportsOnly {
        name: String,
        premise: Vec<Literal>,
        conclusion: Vec<Literal>,
        target_hint: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GrammarForm {
    OnlyWhen,
    /// The `start2` extension production.
    SupportsOnly,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "reason", content = "detail", rename_all = "kebab-case")]
pub enum TodoReason {
    ParseFailure,
    UnknownName(String),
    UnloweredCompare,
    NoOwnerDefault,
    AmbiguousTarget,
}

impl std::fmt::Display for TodoReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TodoReason::ParseFailure => {
                f.write_str("sentence does not match the constraint grammar")
            }
            TodoReason::UnknownName(n) => write!(f, "unknown argument name `{n}`"),
            TodoReason::UnloweredCompare => f.write_str("comparison has no schema counterpart"),
            TodoReason::NoOwnerDefault => f.write_str("owner argument has no usable default"),
            TodoReason::AmbiguousTarget => f.write_str("cannot tell which argument is restricted"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ConstraintOutcome {
    Lowered { schema: Value, grammar: GrammarForm },
    Todo { reason: TodoReason },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintResult {
    pub candidate: CandidateSentence,
    pub outcome: ConstraintOutcome,
}

impl ConstraintResult {
    /// The fragment placed in the schema's `allOf`.
    pub fn fragment(&self) -> Value {
        match &self.outcome {
            ConstraintOutcome::Lowered { schema, .. } => schema.clone(),
            ConstraintOutcome::Todo { .. } => todo_fragment(&self.candidate.text),
        }
    }

    pub fn is_lowered(&self) -> bool {
        matches!(self.outcome, ConstraintOutcome::Lowered { .. })
    }
}

pub fn todo_fragment(sentence: &str) -> Value {
    json!({ "description": format!("TODO: {sentence}") })
}

/// What the lowering needs to know about each documented argument.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ParamInfo {
    /// Lowered type fragment.
    pub fragment: Value,
    pub default: Option<Value>,
}

pub type ParamContext = IndexMap<String, ParamInfo>;

// ---------------------------------------------------------------------------
// parsing

type Alts<T> = Vec<(T, usize)>;

struct Parser<'a> {
    toks: &'a [Token],
}

impl Parser<'_> {
    fn kw(&self, p: usize, w: &str) -> Option<usize> {
        self.toks.get(p).filter(|t| t.is_word(w)).map(|_| p + 1)
    }

    fn punct(&self, p: usize, s: &str) -> Option<usize> {
        self.toks.get(p).filter(|t| t.is_punct(s)).map(|_| p + 1)
    }

    fn name(&self, p: usize) -> Option<(String, usize)> {
        let t = self.toks.get(p).filter(|t| t.kind == TokenKind::Word)?;
        let ident = t
            .text
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
            && t.text.chars().all(|c| c.is_alphanumeric() || c == '_');
        ident.then(|| (t.text.clone(), p + 1))
    }

    fn val(&self, p: usize) -> Option<(Literal, usize)> {
        let t = self.toks.get(p)?;
        let lit = match t.kind {
            TokenKind::Punct => return None,
            TokenKind::Quoted => Literal::str(t.text.clone()),
            TokenKind::Number => Literal::decode(&t.text),
            TokenKind::Word => {
                let l = Literal::decode(&t.text);
                if l.value == LiteralValue::Other {
                    Literal::str(t.text.clone())
                } else {
                    l
                }
            }
        };
        if lit.value == LiteralValue::Other {
            return None;
        }
        Some((lit, p + 1))
    }

    fn seq(&self, p: usize) -> Alts<Vec<Literal>> {
        let Some((v0, p1)) = self.val(p) else {
            return Vec::new();
        };
        let mut out = vec![(vec![v0.clone()], p1)];
        let mut states = vec![(vec![v0], p1)];
        loop {
            let (vals, q) = states.last().unwrap().clone();
            match self.punct(q, ",").and_then(|c| self.val(c)) {
                Some((v, r)) => {
                    let mut next = vals;
                    next.push(v);
                    states.push((next, r));
                }
                None => break,
            }
        }
        for (vals, q) in states {
            let positions = [Some(q), self.punct(q, ",")];
            for r in positions.into_iter().flatten() {
                for conj in ["and", "or"] {
                    if let Some((v, s)) = self.kw(r, conj).and_then(|c| self.val(c)) {
                        let mut all = vals.clone();
                        all.push(v);
                        out.push((all, s));
                    }
                }
            }
        }
        out
    }

    fn compare(&self, p: usize) -> Alts<Compare> {
        let mut out = Vec::new();
        for (s, c) in [
            ("==", Compare::EqEq),
            ("=", Compare::Eq),
            (">", Compare::Gt),
            ("<", Compare::Lt),
            (">=", Compare::Ge),
            ("<=", Compare::Le),
        ] {
            if let Some(q) = self.punct(p, s) {
                out.push((c, q));
            }
        }
        if let Some(q) = self.kw(p, "is") {
            if let Some(r) = self.kw(q, "set").and_then(|r| self.kw(r, "to")) {
                out.push((Compare::IsSetTo, r));
            }
            out.push((Compare::Is, q));
        }
        out
    }

    fn atom(&self, p: usize) -> Alts<Cond> {
        let mut out = Vec::new();
        if let Some((name, q)) = self.name(p) {
            for (compare, r) in self.compare(q) {
                for (values, s) in self.seq(r) {
                    out.push((
                        Cond::Atom {
                            name: name.clone(),
                            compare,
                            values,
                        },
                        s,
                    ));
                }
            }
        }
        let starts = [self.kw(p, "the"), Some(p)];
        for q in starts.into_iter().flatten() {
            for (values, r) in self.seq(q) {
                if let Some((name, s)) = self.name(r) {
                    let cond = Cond::SeqAtom {
                        values: values.clone(),
                        name,
                    };
                    if let Some(u) = self.kw(s, "is").and_then(|t| self.kw(t, "used")) {
                        out.push((cond.clone(), u));
                    }
                    out.push((cond, s));
                }
            }
        }
        out
    }

    /// Atom chains joined by connectives; `true` marks `and`.
    fn chain(&self, p: usize) -> Alts<(Vec<Cond>, Vec<bool>)> {
        let mut out = Vec::new();
        for (a, q) in self.atom(p) {
            out.push(((vec![a.clone()], Vec::new()), q));
            for (is_and, word) in [(true, "and"), (false, "or")] {
                if let Some(r) = self.kw(q, word) {
                    for ((mut atoms, mut conj), s) in self.chain(r) {
                        atoms.insert(0, a.clone());
                        conj.insert(0, is_and);
                        out.push(((atoms, conj), s));
                    }
                }
            }
        }
        out
    }

    fn cond(&self, p: usize) -> Alts<Cond> {
        self.chain(p)
            .into_iter()
            .map(|((atoms, conj), q)| {
                let mut groups: Vec<Cond> = Vec::new();
                let mut atoms = atoms.into_iter();
                let mut cur = atoms.next().unwrap();
                for (a, is_and) in atoms.zip(conj) {
                    if is_and {
                        cur = Cond::And(Box::new(cur), Box::new(a));
                    } else {
                        groups.push(cur);
                        cur = a;
                    }
                }
                groups.push(cur);
                let c = groups
                    .into_iter()
                    .reduce(|l, r| Cond::Or(Box::new(l), Box::new(r)))
                    .unwrap();
                (c, q)
            })
            .collect()
    }

    fn at_end(&self, p: usize) -> bool {
        self.punct(p, ".").unwrap_or(p) == self.toks.len()
    }

    fn start(&self) -> Option<ConstraintAst> {
        let q = self.kw(0, "only")?;
        let mut onlys = Vec::new();
        if let Some(v) = ONLY_VERBS.iter().find(|v| self.kw(q, v).is_some()) {
            onlys.push((Some(v.to_string()), q + 1));
        }
        onlys.push((None, q));
        for (only_verb, q) in onlys {
            let Some(when) = WHEN_WORDS.iter().find(|w| self.kw(q, w).is_some()) else {
                continue;
            };
            for (cond, r) in self.cond(q + 1) {
                if self.at_end(r) {
                    return Some(ConstraintAst::OnlyWhen {
                        only_verb,
                        when_word: when.to_string(),
                        cond,
                    });
                }
            }
        }
        None
    }

    fn start2(&self) -> Option<ConstraintAst> {
        let starts = [self.kw(0, "the"), Some(0)];
        let mut heads: Vec<((String, Vec<Literal>), usize)> = Vec::new();
        for p in starts.into_iter().flatten() {
            if let Some((name, q)) = self.name(p) {
                heads.extend(self.seq(q).into_iter().map(|(s, r)| ((name.clone(), s), r)));
            }
            for (s, q) in self.seq(p) {
                if let Some((name, r)) = self.name(q) {
                    heads.push(((name, s), r));
                }
            }
        }
        for ((name, premise), p) in heads {
            let Some(q) = self.kw(p, "support").or_else(|| self.kw(p, "supports")) else {
                continue;
            };
            let Some(q) = self.kw(q, "only") else {
                continue;
            };
            for (conclusion, r) in self.seq(q) {
                let mut tails = Vec::new();
                if let Some((hint, s)) = self.name(r) {
                    tails.push((Some(hint), s));
                }
                tails.push((None, r));
                for (target_hint, s) in tails {
                    if self.at_end(s) {
                        return Some(ConstraintAst::SupportsOnly {
                            name,
                            premise,
                            conclusion,
                            target_hint,
                        });
                    }
                }
            }
        }
        None
    }
}

/// Parses a candidate sentence. `None` when neither start production matches.
pub fn parse_constraint(sentence: &str) -> Option<ConstraintAst> {
    let toks = tokenize(sentence);
    if toks.is_empty() || toks.len() > MAX_TOKENS {
        return None;
    }
    let p = Parser { toks: &toks };
    p.start().or_else(|| p.start2())
}

// ---------------------------------------------------------------------------
// lowering

/// Maps a possibly plural or differently-cased name to a documented argument.
pub fn resolve_name(name: &str, ctx: &ParamContext) -> Option<String> {
    let lower = name.to_lowercase();
    let mut forms = vec![name.to_string(), lower.clone()];
    if let Some(stem) = lower.strip_suffix("ies") {
        forms.push(format!("{stem}y"));
    }
    if let Some(stem) = lower.strip_suffix("es") {
        forms.push(stem.to_string());
    }
    if let Some(stem) = lower.strip_suffix('s') {
        forms.push(stem.to_string());
    }
    forms.into_iter().find_map(|f| {
        ctx.keys()
            .find(|k| **k == f || k.to_lowercase() == f)
            .cloned()
    })
}

fn literal_json(l: &Literal) -> Value {
    l.to_json().unwrap_or(Value::Null)
}

fn enum_values(fragment: &Value) -> Vec<Value> {
    let mut out = Vec::new();
    if let Some(Value::Array(e)) = fragment.get("enum") {
        out.extend(e.iter().cloned());
    }
    if let Some(Value::Array(members)) = fragment.get("anyOf") {
        for m in members {
            out.extend(enum_values(m));
        }
    }
    out
}

fn object_with(name: &str, schema: Value) -> Value {
    let mut props = Map::new();
    props.insert(name.to_string(), schema);
    json!({"type": "object", "properties": props})
}

fn lower_cond(cond: &Cond, ctx: &ParamContext) -> Result<Value, TodoReason> {
    match cond {
        Cond::Atom {
            name,
            compare,
            values,
        } => {
            let arg =
                resolve_name(name, ctx).ok_or_else(|| TodoReason::UnknownName(name.clone()))?;
            let schema = match compare {
                Compare::Eq | Compare::EqEq | Compare::Is | Compare::IsSetTo => {
                    json!({"enum": values.iter().map(literal_json).collect::<Vec<_>>()})
                }
                Compare::Gt | Compare::Lt | Compare::Ge | Compare::Le => {
                    let [v] = values.as_slice() else {
                        return Err(TodoReason::UnloweredCompare);
                    };
                    let n = match v.to_json() {
                        Some(n @ Value::Number(_)) => n,
                        _ => return Err(TodoReason::UnloweredCompare),
                    };
                    match compare {
                        Compare::Gt => json!({"minimum": n, "exclusiveMinimum": true}),
                        Compare::Ge => json!({"minimum": n}),
                        Compare::Lt => json!({"maximum": n, "exclusiveMaximum": true}),
                        _ => json!({"maximum": n}),
                    }
                }
            };
            Ok(object_with(&arg, schema))
        }
        Cond::SeqAtom { values, name } => {
            let arg =
                resolve_name(name, ctx).ok_or_else(|| TodoReason::UnknownName(name.clone()))?;
            Ok(object_with(
                &arg,
                json!({"enum": values.iter().map(literal_json).collect::<Vec<_>>()}),
            ))
        }
        Cond::And(l, r) => {
            Ok(json!({"type": "object", "allOf": [lower_cond(l, ctx)?, lower_cond(r, ctx)?]}))
        }
        Cond::Or(l, r) => {
            Ok(json!({"type": "object", "anyOf": [lower_cond(l, ctx)?, lower_cond(r, ctx)?]}))
        }
    }
}

/// Sentence text used as the constraint description: quotes and backticks
/// removed, whitespace collapsed.
pub fn constraint_description(sentence: &str) -> String {
    let stripped: String = sentence
        .chars()
        .filter(|c| !matches!(c, '\'' | '"' | '`'))
        .collect();
    stripped.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Lowers a parsed sentence owned by `owner` to `{"description", "anyOf": [¬premise, conclusion]}`.
pub fn lower_constraint(
    owner: &str,
    sentence: &str,
    ast: &ConstraintAst,
    ctx: &ParamContext,
) -> Result<Value, TodoReason> {
    let (premise_false, conclusion) = match ast {
        ConstraintAst::OnlyWhen { cond, .. } => {
            let default = ctx
                .get(owner)
                .and_then(|p| p.default.clone())
                .ok_or(TodoReason::NoOwnerDefault)?;
            (
                object_with(owner, json!({"enum": [default]})),
                lower_cond(cond, ctx)?,
            )
        }
        ConstraintAst::SupportsOnly {
            name,
            premise,
            conclusion,
            target_hint,
        } => {
            let subject =
                resolve_name(name, ctx).ok_or_else(|| TodoReason::UnknownName(name.clone()))?;
            let concl: Vec<Value> = conclusion.iter().map(literal_json).collect();
            let hinted = target_hint
                .as_deref()
                .and_then(|h| resolve_name(h, ctx))
                .filter(|t| *t != subject);
            let target = match hinted {
                Some(t) => t,
                None if ctx.contains_key(owner) && owner != subject => owner.to_string(),
                None => {
                    let mut hits = ctx.iter().filter(|(k, info)| {
                        **k != subject && {
                            let e = enum_values(&info.fragment);
                            concl.iter().all(|v| e.contains(v))
                        }
                    });
                    match (hits.next(), hits.next()) {
                        (Some((k, _)), None) => k.clone(),
                        _ => return Err(TodoReason::AmbiguousTarget),
                    }
                }
            };
            let prem: Vec<Value> = premise.iter().map(literal_json).collect();
            (
                object_with(&subject, json!({"not": {"enum": prem}})),
                object_with(&target, json!({ "enum": concl })),
            )
        }
    };
    Ok(json!({
        "description": constraint_description(sentence),
        "anyOf": [premise_false, conclusion],
    }))
}

/// Parses and lowers one flagged sentence; never fails.
pub fn mine_constraint(candidate: CandidateSentence, ctx: &ParamContext) -> ConstraintResult {
    let outcome = match parse_constraint(&candidate.text) {
        None => ConstraintOutcome::Todo {
            reason: TodoReason::ParseFailure,
        },
        Some(ast) => {
            let grammar = match ast {
                ConstraintAst::OnlyWhen { .. } => GrammarForm::OnlyWhen,
                ConstraintAst::SupportsOnly { .. } => GrammarForm::SupportsOnly,
            };
            match lower_constraint(&candidate.owner_arg, &candidate.text, &ast, ctx) {
                Ok(schema) => ConstraintOutcome::Lowered { schema, grammar },
                Err(reason) => ConstraintOutcome::Todo { reason },
            }
        }
    };
    ConstraintResult { candidate, outcome }
}
