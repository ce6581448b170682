//! Per-argument type grammar: parsing a `short_desc` into a [`TypeExpr`] and
//! lowering it to a JSON Schema fragment.
//!
//! ```text
//! start    ::= seq optional default ("." | ",")?
//! seq      ::= (type ","?)+ ("or" type)?
//! type     ::= prim | obj | array | enum
//! optional ::= (", optional")?
//! default  ::= ","? ("default" ("=" | ":")? val
//!            | "(" "default" ("=" | ":")? val ")"
//!            | val "by" "default"
//!            | "or" val "(" "default" ")")?
//! obj      ::= "object" | WORD "instance" | "returns an instance of self"
//! array    ::= atype shape?
//! atype    ::= "list" | "array" | "tuple" | "array_like" | "array-like"
//!            | "numpy" "array" | "sparse" "matrix" | "scipy.sparse" | "scipy" "sparse"
//!            | "{"? atype ("or" | ",") atype "}"?
//! shape    ::= ","? "of"? ("shape" | "size")? "="? vtuple ("or" shape)?
//! enum     ::= "{" val (","? "or"? ("an" | "a")? val)* "}"
//!            | ("string" | "str") ","? enum
//!            | "["? val ("|" val)+ "]"?
//!            | QUOTED (("," "or"? | "or") QUOTED)*
//! vtuple   ::= ("(" | "[") val ("," val)* ","? ("]" | ")") | "None"
//! ```
//!
//! Alternatives are tried in the order above; the longest match wins and ties
//! go to the earlier alternative.

use serde_json::{json, Map, Value};

use super::lexer::{Token, TokenKind};
use crate::literal::{Literal, LiteralValue};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PrimKind {
    Integer,
    Number,
    Boolean,
    String,
    None,
    /// Documented as ignored; lowered like `None`.
    Ignored,
    Callable,
    Dict,
    TypeObject,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ObjKind {
    Object,
    /// `<Name> instance`.
    Instance(String),
    /// `returns an instance of self`.
    SelfInstance,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Dim {
    Number(String),
    Name(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Shape {
    Dims(Vec<Dim>),
    None,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TypeExpr {
    Prim(PrimKind),
    Obj(ObjKind),
    Array {
        atype: Vec<String>,
        shapes: Vec<Shape>,
    },
    Enum(Vec<Literal>),
    AnyOf(Vec<TypeExpr>),
}

impl TypeExpr {
    /// Builds an `AnyOf`, flattening nested ones; a single member is returned
    /// unchanged.
    pub fn any_of(members: Vec<TypeExpr>) -> TypeExpr {
        let mut flat = Vec::new();
        for m in members {
            match m {
                TypeExpr::AnyOf(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            TypeExpr::AnyOf(flat)
        }
    }

    /// True when the expression mentions the `Ignored` pseudo-type.
    pub fn mentions_ignored(&self) -> bool {
        match self {
            TypeExpr::Prim(PrimKind::Ignored) => true,
            TypeExpr::AnyOf(m) => m.iter().any(TypeExpr::mentions_ignored),
            _ => false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParsedShortDesc {
    pub types: TypeExpr,
    pub optional_flag: bool,
    pub default: Option<Literal>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParseFailure {
    /// Number of tokens in the longest prefix any production accepted.
    pub consumed: usize,
    /// Char span of the first token that could not be consumed; `None` when
    /// input ran out (or was empty).
    pub span: Option<(usize, usize)>,
    /// A default phrase found at the end of the line, if any.
    pub recovered_default: Option<Literal>,
}

impl std::fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.span {
            Some((a, b)) => write!(f, "no type production matches at chars {a}..{b}"),
            None => write!(f, "unexpected end of type description"),
        }
    }
}

type Step<T> = Option<(T, usize)>;

struct Parser<'a> {
    toks: &'a [Token],
}

fn val_literal(t: &Token) -> Option<Literal> {
    match t.kind {
        TokenKind::Quoted => Some(Literal::str(t.text.clone())),
        TokenKind::Number => {
            let l = Literal::decode(&t.text);
            (l.value != LiteralValue::Other).then_some(l)
        }
        TokenKind::Word => {
            let l = Literal::decode(&t.text);
            if l.value == LiteralValue::Other {
                Some(Literal::str(t.text.clone()))
            } else {
                Some(l)
            }
        }
        TokenKind::Punct => None,
    }
}

const ATYPES: [&str; 6] = [
    "list",
    "array",
    "tuple",
    "array_like",
    "array-like",
    "scipy.sparse",
];
const ATYPE_PAIRS: [(&str, &str); 3] = [
    ("numpy", "array"),
    ("sparse", "matrix"),
    ("scipy", "sparse"),
];

impl<'a> Parser<'a> {
    fn new(toks: &'a [Token]) -> Self {
        Parser { toks }
    }

    fn kw(&self, p: usize, w: &str) -> Option<usize> {
        self.toks.get(p).filter(|t| t.is_word(w)).map(|_| p + 1)
    }

    fn kws(&self, p: usize, ws: &[&str]) -> Option<usize> {
        ws.iter().try_fold(p, |q, w| self.kw(q, w))
    }

    fn punct(&self, p: usize, s: &str) -> Option<usize> {
        self.toks.get(p).filter(|t| t.is_punct(s)).map(|_| p + 1)
    }

    fn opt_punct(&self, p: usize, s: &str) -> usize {
        self.punct(p, s).unwrap_or(p)
    }

    fn val(&self, p: usize) -> Step<Literal> {
        let lit = val_literal(self.toks.get(p)?)?;
        Some((lit, p + 1))
    }

    fn quoted(&self, p: usize) -> Step<Literal> {
        let t = self.toks.get(p).filter(|t| t.kind == TokenKind::Quoted)?;
        Some((Literal::str(t.text.clone()), p + 1))
    }

    /// Longest of several candidate results; ties keep the first.
    fn longest<T>(cands: impl IntoIterator<Item = Step<T>>) -> Step<T> {
        let mut best: Step<T> = None;
        for c in cands.into_iter().flatten() {
            if best.as_ref().is_none_or(|b| c.1 > b.1) {
                best = Some(c);
            }
        }
        best
    }

    fn prim(&self, p: usize) -> Step<TypeExpr> {
        let t = self.toks.get(p).filter(|t| t.kind == TokenKind::Word)?;
        let kind = match t.text.to_ascii_lowercase().as_str() {
            "int" | "integer" => PrimKind::Integer,
            "float" | "double" => PrimKind::Number,
            "bool" | "boolean" => PrimKind::Boolean,
            "str" | "string" => PrimKind::String,
            "none" => PrimKind::None,
            "ignored" => PrimKind::Ignored,
            "callable" => PrimKind::Callable,
            "dict" => PrimKind::Dict,
            "type" => PrimKind::TypeObject,
            _ => return None,
        };
        Some((TypeExpr::Prim(kind), p + 1))
    }

    fn obj(&self, p: usize) -> Step<TypeExpr> {
        let object = self
            .kw(p, "object")
            .map(|q| (TypeExpr::Obj(ObjKind::Object), q));
        let instance = self
            .toks
            .get(p)
            .filter(|t| t.kind == TokenKind::Word)
            .and_then(|t| {
                let q = self.kw(p + 1, "instance")?;
                Some((TypeExpr::Obj(ObjKind::Instance(t.text.clone())), q))
            });
        let this = self
            .kws(p, &["returns", "an", "instance", "of", "self"])
            .map(|q| (TypeExpr::Obj(ObjKind::SelfInstance), q));
        Self::longest([object, instance, this])
    }

    fn atype_primary(&self, p: usize) -> Step<String> {
        let single = ATYPES
            .iter()
            .find_map(|a| self.kw(p, a).map(|q| (self.toks[p].text.clone(), q)));
        let pair = ATYPE_PAIRS.iter().find_map(|(a, b)| {
            let q = self.kws(p, &[a, b])?;
            Some((
                format!("{} {}", self.toks[p].text, self.toks[p + 1].text),
                q,
            ))
        });
        Self::longest([single, pair])
    }

    fn atype(&self, p: usize) -> Step<Vec<String>> {
        let brace = self.punct(p, "{");
        let start = brace.unwrap_or(p);
        let (first, mut q) = self.atype_primary(start)?;
        let mut names = vec![first];
        loop {
            let sep = self.kw(q, "or").or_else(|| self.punct(q, ","));
            match sep.and_then(|s| self.atype_primary(s)) {
                Some((n, r)) => {
                    names.push(n);
                    q = r;
                }
                None => break,
            }
        }
        if brace.is_some() {
            q = self.opt_punct(q, "}");
        }
        Some((names, q))
    }

    fn vtuple(&self, p: usize) -> Step<Shape> {
        if let Some(q) = self.kw(p, "none") {
            return Some((Shape::None, q));
        }
        let open = self.punct(p, "(").or_else(|| self.punct(p, "["))?;
        let mut dims = Vec::new();
        let dim = |q: usize| -> Step<Dim> {
            let t = self.toks.get(q)?;
            let d = match t.kind {
                TokenKind::Number => Dim::Number(t.text.clone()),
                TokenKind::Word | TokenKind::Quoted => Dim::Name(t.text.clone()),
                TokenKind::Punct => return None,
            };
            Some((d, q + 1))
        };
        let (d, mut q) = dim(open)?;
        dims.push(d);
        while let Some((d, r)) = self.punct(q, ",").and_then(&dim) {
            dims.push(d);
            q = r;
        }
        q = self.opt_punct(q, ",");
        let q = self.punct(q, ")").or_else(|| self.punct(q, "]"))?;
        Some((Shape::Dims(dims), q))
    }

    fn shape(&self, p: usize) -> Step<Vec<Shape>> {
        let mut q = self.opt_punct(p, ",");
        q = self.kw(q, "of").unwrap_or(q);
        q = self
            .kw(q, "shape")
            .or_else(|| self.kw(q, "size"))
            .unwrap_or(q);
        q = self.opt_punct(q, "=");
        let (s, q) = self.vtuple(q)?;
        let mut shapes = vec![s];
        if let Some((more, r)) = self.kw(q, "or").and_then(|o| self.shape(o)) {
            shapes.extend(more);
            return Some((shapes, r));
        }
        Some((shapes, q))
    }

    fn array(&self, p: usize) -> Step<TypeExpr> {
        let (atype, q) = self.atype(p)?;
        let (shapes, q) = match self.shape(q) {
            Some((s, r)) => (s, r),
            None => (Vec::new(), q),
        };
        Some((TypeExpr::Array { atype, shapes }, q))
    }

    fn enum_brace(&self, p: usize) -> Step<Vec<Literal>> {
        let q = self.punct(p, "{")?;
        let (v, mut q) = self.val(q)?;
        let mut vals = vec![v];
        loop {
            let mut r = self.opt_punct(q, ",");
            r = self.kw(r, "or").unwrap_or(r);
            r = self.kw(r, "an").or_else(|| self.kw(r, "a")).unwrap_or(r);
            match self.val(r) {
                Some((v, s)) => {
                    vals.push(v);
                    q = s;
                }
                None => break,
            }
        }
        let q = self.punct(q, "}")?;
        Some((vals, q))
    }

    fn enum_pipe(&self, p: usize) -> Step<Vec<Literal>> {
        let bracket = self.punct(p, "[");
        let (v, mut q) = self.val(bracket.unwrap_or(p))?;
        let mut vals = vec![v];
        while let Some((v, r)) = self.punct(q, "|").and_then(|b| self.val(b)) {
            vals.push(v);
            q = r;
        }
        if vals.len() < 2 {
            return None;
        }
        Some((vals, self.opt_punct(q, "]")))
    }

    fn enum_quoted(&self, p: usize) -> Step<Vec<Literal>> {
        let (v, mut q) = self.quoted(p)?;
        let mut vals = vec![v];
        loop {
            let next = self
                .punct(q, ",")
                .and_then(|c| {
                    self.kw(c, "or")
                        .and_then(|o| self.quoted(o))
                        .or_else(|| self.quoted(c))
                })
                .or_else(|| self.kw(q, "or").and_then(|o| self.quoted(o)));
            match next {
                Some((v, r)) => {
                    vals.push(v);
                    q = r;
                }
                None => break,
            }
        }
        Some((vals, q))
    }

    fn enum_(&self, p: usize) -> Step<Vec<Literal>> {
        let str_prefixed = self
            .kw(p, "string")
            .or_else(|| self.kw(p, "str"))
            .and_then(|q| {
                let q = self.opt_punct(q, ",");
                self.enum_(q)
            });
        Self::longest([
            self.enum_brace(p),
            str_prefixed,
            self.enum_pipe(p),
            self.enum_quoted(p),
        ])
    }

    fn type_(&self, p: usize) -> Step<TypeExpr> {
        let enum_ = self.enum_(p).map(|(v, q)| (TypeExpr::Enum(v), q));
        Self::longest([self.prim(p), self.obj(p), self.array(p), enum_])
    }

    /// All ways `seq` can end, longest first.
    fn seq(&self, p: usize) -> Vec<(Vec<TypeExpr>, usize)> {
        let mut cands = Vec::new();
        let Some((t, mut q)) = self.type_(p) else {
            return cands;
        };
        let mut types = vec![t];
        loop {
            let after_comma = self.opt_punct(q, ",");
            cands.push((types.clone(), q));
            if after_comma != q {
                cands.push((types.clone(), after_comma));
            }
            for at in [q, after_comma] {
                if let Some((t2, r)) = self.kw(at, "or").and_then(|o| self.type_(o)) {
                    let mut with_or = types.clone();
                    with_or.push(t2);
                    cands.push((with_or, r));
                }
            }
            match self.type_(after_comma) {
                Some((t, r)) if r > after_comma => {
                    types.push(t);
                    q = r;
                }
                _ => break,
            }
        }
        cands.sort_by_key(|c| std::cmp::Reverse(c.1));
        cands.dedup_by(|a, b| a.1 == b.1);
        cands
    }

    fn optional(&self, p: usize) -> Option<usize> {
        self.punct(p, ",").and_then(|q| self.kw(q, "optional"))
    }

    fn default_value(&self, p: usize) -> Step<Literal> {
        let p = self.opt_punct(p, ",");
        let plain = self.kw(p, "default").and_then(|q| {
            let q = self
                .punct(q, "=")
                .or_else(|| self.punct(q, ":"))
                .unwrap_or(q);
            self.val(q)
        });
        let paren = self.punct(p, "(").and_then(|q| {
            let q = self.kw(q, "default")?;
            let q = self
                .punct(q, "=")
                .or_else(|| self.punct(q, ":"))
                .unwrap_or(q);
            let (v, q) = self.val(q)?;
            Some((v, self.punct(q, ")")?))
        });
        let by = self
            .val(p)
            .and_then(|(v, q)| Some((v, self.kws(q, &["by", "default"])?)));
        let or = self.kw(p, "or").and_then(|q| {
            let (v, q) = self.val(q)?;
            let q = self.punct(q, "(")?;
            let q = self.kw(q, "default")?;
            Some((v, self.punct(q, ")")?))
        });
        Self::longest([plain, paren, by, or])
    }

    fn at_end(&self, p: usize) -> bool {
        let q = self
            .punct(p, ".")
            .or_else(|| self.punct(p, ","))
            .unwrap_or(p);
        q == self.toks.len()
    }

    /// Parses the whole input, or reports the longest accepted prefix.
    fn start(&self) -> Result<ParsedShortDesc, usize> {
        let mut reach = 0;
        for (types, p) in self.seq(0) {
            let opts = [self.optional(p).map(|q| (true, q)), Some((false, p))];
            for (optional_flag, q) in opts.into_iter().flatten() {
                let defaults = [
                    self.default_value(q).map(|(d, r)| (Some(d), r)),
                    Some((None, q)),
                ];
                for (default, r) in defaults.into_iter().flatten() {
                    reach = reach.max(r);
                    if self.at_end(r) {
                        return Ok(ParsedShortDesc {
                            types: TypeExpr::any_of(types),
                            optional_flag,
                            default,
                        });
                    }
                }
            }
        }
        Err(reach)
    }

    fn recover_default(&self) -> Option<Literal> {
        (0..self.toks.len()).find_map(|i| {
            let (d, r) = self.default_value(i)?;
            self.at_end(r).then_some(d)
        })
    }
}

/// Parses a tokenized short description.
pub fn parse_short_desc(tokens: &[Token]) -> Result<ParsedShortDesc, ParseFailure> {
    let parser = Parser::new(tokens);
    parser.start().map_err(|consumed| {
        let recovered_default = parser.recover_default();
        ParseFailure {
            consumed,
            span: tokens.get(consumed).map(|t| t.span),
            recovered_default,
        }
    })
}

/// Convenience wrapper: tokenize then parse.
pub fn parse_type_text(short_desc: &str) -> Result<ParsedShortDesc, ParseFailure> {
    parse_short_desc(&super::lexer::tokenize(short_desc))
}

// ---------------------------------------------------------------------------
// lowering

pub(crate) fn json_equal(a: &Value, b: &Value) -> bool {
    match (a, b) {
        (Value::Number(x), Value::Number(y)) => match (x.as_i64(), y.as_i64()) {
            (Some(i), Some(j)) => i == j,
            _ => x.as_f64() == y.as_f64(),
        },
        (Value::Array(x), Value::Array(y)) => {
            x.len() == y.len() && x.iter().zip(y).all(|(a, b)| json_equal(a, b))
        }
        (Value::Object(x), Value::Object(y)) => {
            x.len() == y.len()
                && x.iter()
                    .all(|(k, v)| y.get(k).is_some_and(|w| json_equal(v, w)))
        }
        _ => a == b,
    }
}

fn push_unique(out: &mut Vec<Value>, v: Value) {
    if !out.iter().any(|x| json_equal(x, &v)) {
        out.push(v);
    }
}

fn lower_dim(d: &Dim) -> Value {
    match d {
        Dim::Number(n) => match Literal::decode(n).to_json() {
            Some(v @ Value::Number(_)) => v,
            _ => Value::String(n.clone()),
        },
        Dim::Name(n) => Value::String(n.clone()),
    }
}

/// Lowers a type expression to a JSON Schema fragment.
pub fn lower_type_expr(t: &TypeExpr) -> Value {
    match t {
        TypeExpr::Prim(k) => match k {
            PrimKind::Integer => json!({"type": "integer"}),
            PrimKind::Number => json!({"type": "number"}),
            PrimKind::Boolean => json!({"type": "boolean"}),
            PrimKind::String => json!({"type": "string"}),
            PrimKind::None | PrimKind::Ignored => json!({"enum": [null]}),
            PrimKind::Callable => json!({"laleType": "callable"}),
            PrimKind::Dict => json!({"type": "object"}),
            PrimKind::TypeObject => json!({"laleType": "type"}),
        },
        TypeExpr::Obj(_) => json!({"laleType": "Any"}),
        TypeExpr::Array { atype, shapes } => {
            let mut meta = Map::new();
            meta.insert("atype".into(), json!(atype));
            if !shapes.is_empty() {
                let s: Vec<Value> = shapes
                    .iter()
                    .map(|s| match s {
                        Shape::None => Value::Null,
                        Shape::Dims(d) => Value::Array(d.iter().map(lower_dim).collect()),
                    })
                    .collect();
                meta.insert("shape".into(), Value::Array(s));
            }
            json!({"type": "array", "laleArray": meta})
        }
        TypeExpr::Enum(vals) => {
            let mut out = Vec::new();
            for v in vals {
                push_unique(&mut out, v.to_json().unwrap_or(Value::Null));
            }
            json!({ "enum": out })
        }
        TypeExpr::AnyOf(members) => {
            let mut out = Vec::new();
            for m in members {
                push_unique(&mut out, lower_type_expr(m));
            }
            if out.len() == 1 {
                out.pop().unwrap()
            } else {
                json!({ "anyOf": out })
            }
        }
    }
}

/// Lowers a parsed short description: the type fragment plus `description`
/// and `default` when given.
pub fn lower_type(p: &ParsedShortDesc, description: Option<&str>) -> Value {
    let mut frag = Map::new();
    if let Some(d) = description {
        frag.insert("description".into(), Value::String(d.to_string()));
    }
    if let Value::Object(m) = lower_type_expr(&p.types) {
        frag.extend(m);
    }
    if let Some(d) = &p.default {
        frag.insert("default".into(), d.to_json().unwrap_or(Value::Null));
    }
    Value::Object(frag)
}
