//! Static extraction of operator classes from Python source text.
//!
//! The scanner groups physical lines into logical lines (respecting string
//! literals, comments, bracket nesting and backslash continuations) and then
//! tracks indentation to find top-level `class` blocks, their methods, and the
//! leading string literal of each body. Nothing is ever evaluated.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;

use indexmap::IndexMap;
use thiserror::Error;

use crate::literal::Literal;

/// Methods whose docstrings are collected.
pub const METHODS_OF_INTEREST: [&str; 4] = ["__init__", "fit", "predict", "transform"];

#[derive(Debug, Clone)]
pub struct SourceFile {
    pub path: PathBuf,
    pub text: String,
}

impl SourceFile {
    pub fn new(path: impl Into<PathBuf>, text: impl Into<String>) -> Self {
        SourceFile {
            path: path.into(),
            text: text.into(),
        }
    }
}

/// Constructor parameters in signature order. `None` means the parameter has
/// no default; a default that is not a plain literal decodes to
/// [`crate::LiteralValue::Other`].
pub type CtorDefaults = IndexMap<String, Option<Literal>>;

#[derive(Debug, Clone, PartialEq)]
pub struct ClassDoc {
    pub class_name: String,
    pub line: usize,
    pub class_docstring: Option<String>,
    /// Present methods among [`METHODS_OF_INTEREST`]; value is the docstring if any.
    pub method_docstrings: BTreeMap<String, Option<String>>,
    pub ctor_defaults: CtorDefaults,
    /// True when an `__init__` definition was found.
    pub has_init: bool,
    /// Non-fatal notes, e.g. skipped `*args` parameters.
    pub notes: Vec<String>,
}

impl ClassDoc {
    pub fn method_doc(&self, name: &str) -> Option<&str> {
        self.method_docstrings.get(name).and_then(|d| d.as_deref())
    }

    pub fn has_method(&self, name: &str) -> bool {
        self.method_docstrings.contains_key(name)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MalformedKind {
    #[error("unterminated string literal")]
    UnterminatedString,
    #[error("inconsistent indentation")]
    InconsistentIndent,
    #[error("unbalanced brackets")]
    UnbalancedBrackets,
}

/// A class (or module region) that could not be scanned.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct MalformedSource {
    pub path: PathBuf,
    pub class_name: Option<String>,
    pub line: usize,
    pub kind: MalformedKind,
}

impl fmt::Display for MalformedSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.path.display(), self.line, self.kind)?;
        if let Some(c) = &self.class_name {
            write!(f, " in class {c}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed signature: {0}")]
pub struct MalformedSignature(pub String);

#[derive(Debug, Clone, Default, PartialEq)]
pub struct ScanOutput {
    pub classes: Vec<ClassDoc>,
    pub errors: Vec<MalformedSource>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Signature {
    pub params: CtorDefaults,
    /// Parameters skipped on purpose (`*args`, `/`, `...`), with the reason.
    pub skipped: Vec<String>,
}

// ---------------------------------------------------------------------------
// logical lines

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct StrTok {
    /// Byte range of the whole token within `LogicalLine::text`, prefix included.
    start: usize,
    end: usize,
    body_start: usize,
    body_end: usize,
}

#[derive(Debug, Clone)]
struct LogicalLine {
    indent: usize,
    line_no: usize,
    /// Source text with comments removed; strings kept verbatim.
    text: String,
    strings: Vec<StrTok>,
}

#[derive(Debug)]
struct LexFailure {
    line_no: usize,
    kind: MalformedKind,
}

type LineResult = Result<LogicalLine, LexFailure>;

fn starts_block_keyword(line: &str) -> bool {
    ["class", "def", "async"].iter().any(|kw| {
        line.strip_prefix(kw)
            .is_some_and(|rest| rest.starts_with([' ', '\t']))
    })
}

fn measure_indent(line: &str) -> usize {
    let mut col = 0;
    for c in line.chars() {
        match c {
            ' ' => col += 1,
            '\t' => col = (col / 8 + 1) * 8,
            '\x0c' => col = 0,
            _ => break,
        }
    }
    col
}

fn logical_lines(text: &str) -> Vec<LineResult> {
    let lines: Vec<&str> = text.split_inclusive('\n').collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let first = lines[i];
        let body = first.trim_start_matches([' ', '\t', '\x0c']);
        if body.trim().is_empty() || body.starts_with('#') {
            i += 1;
            continue;
        }
        let indent = measure_indent(first);
        match read_logical(&lines, i) {
            Ok((line, next)) => {
                out.push(Ok(LogicalLine {
                    indent,
                    line_no: i + 1,
                    text: line.0,
                    strings: line.1,
                }));
                i = next;
            }
            Err((kind, resume)) => {
                out.push(Err(LexFailure {
                    line_no: i + 1,
                    kind,
                }));
                i = resume;
            }
        }
    }
    out
}

struct OpenString {
    quote: char,
    triple: bool,
    tok_start: usize,
    body_start: usize,
}

/// Reads one logical line starting at physical line `start`. On failure
/// returns the index of the next line at which scanning can resume.
#[allow(clippy::type_complexity)]
fn read_logical(
    lines: &[&str],
    start: usize,
) -> Result<((String, Vec<StrTok>), usize), (MalformedKind, usize)> {
    let resync = || {
        (start + 1..lines.len())
            .find(|&j| starts_block_keyword(lines[j]) || lines[j].starts_with('@'))
            .unwrap_or(lines.len())
    };
    let mut text = String::new();
    let mut strings = Vec::new();
    let mut depth: i32 = 0;
    let mut open: Option<OpenString> = None;
    let mut idx = start;
    let mut seg: &str = lines[start].trim_start_matches([' ', '\t', '\x0c']);
    loop {
        let chars: Vec<char> = seg.chars().collect();
        let at = |k: usize| chars.get(k).copied();
        let mut continued = false;
        let mut k = 0;
        while k < chars.len() {
            let c = chars[k];
            if let Some(os) = &open {
                if c == '\\' {
                    text.push(c);
                    if let Some(n) = at(k + 1) {
                        text.push(n);
                    }
                    k += 2;
                    continue;
                }
                if c == os.quote && (!os.triple || (at(k + 1) == Some(c) && at(k + 2) == Some(c))) {
                    let body_end = text.len();
                    let n = if os.triple { 3 } else { 1 };
                    text.extend(std::iter::repeat_n(c, n));
                    strings.push(StrTok {
                        start: os.tok_start,
                        end: text.len(),
                        body_start: os.body_start,
                        body_end,
                    });
                    open = None;
                    k += n;
                    continue;
                }
                if c == '\n' && !os.triple {
                    return Err((MalformedKind::UnterminatedString, resync()));
                }
                text.push(c);
                k += 1;
                continue;
            }
            match c {
                '#' => break,
                '\'' | '"' => {
                    let triple = at(k + 1) == Some(c) && at(k + 2) == Some(c);
                    let prefix_len = text
                        .chars()
                        .rev()
                        .take_while(|p| p.is_ascii_alphabetic())
                        .count();
                    let tok_start = if prefix_len <= 2 {
                        text.len() - prefix_len
                    } else {
                        text.len()
                    };
                    let n = if triple { 3 } else { 1 };
                    text.extend(std::iter::repeat_n(c, n));
                    open = Some(OpenString {
                        quote: c,
                        triple,
                        tok_start,
                        body_start: text.len(),
                    });
                    k += n;
                    continue;
                }
                '\\' if chars[k + 1..].iter().all(|&x| x == '\n' || x == '\r') => {
                    text.push(' ');
                    continued = true;
                    break;
                }
                '(' | '[' | '{' => depth += 1,
                ')' | ']' | '}' => depth = (depth - 1).max(0),
                _ => {}
            }
            match c {
                '\n' | '\r' => {
                    if depth > 0 {
                        text.push(' ');
                    }
                }
                _ => text.push(c),
            }
            k += 1;
        }
        idx += 1;
        if open.is_none() && !continued && depth == 0 {
            return Ok(((text.trim_end().to_string(), strings), idx));
        }
        if idx >= lines.len() {
            let kind = if open.is_some() {
                MalformedKind::UnterminatedString
            } else {
                MalformedKind::UnbalancedBrackets
            };
            return Err((kind, resync()));
        }
        if open.is_none() && depth > 0 && starts_block_keyword(lines[idx]) {
            return Err((MalformedKind::UnbalancedBrackets, idx));
        }
        seg = lines[idx];
    }
}

impl LogicalLine {
    /// The concatenated bodies when the line consists solely of string literals.
    fn string_statement(&self) -> Option<String> {
        if self.strings.is_empty() {
            return None;
        }
        let mut pos = 0;
        let mut body = String::new();
        for s in &self.strings {
            let gap = &self.text[pos..s.start];
            if !gap.trim().is_empty() {
                return None;
            }
            let prefix = &self.text[s.start..s.body_start];
            if prefix
                .chars()
                .filter(|c| c.is_ascii_alphabetic())
                .any(|c| matches!(c.to_ascii_lowercase(), 'b'))
            {
                return None;
            }
            body.push_str(&self.text[s.body_start..s.body_end]);
            pos = s.end;
        }
        let tail = self.text[pos..].trim();
        if !(tail.is_empty() || tail == ";") {
            return None;
        }
        Some(body)
    }

    /// Byte offset of the `:` closing a compound-statement header, if any.
    fn header_colon(&self) -> Option<usize> {
        let mut depth = 0i32;
        let bytes = self.text.as_bytes();
        let mut i = 0;
        while i < bytes.len() {
            if let Some(s) = self.strings.iter().find(|s| s.start == i) {
                i = s.end;
                continue;
            }
            match bytes[i] {
                b'(' | b'[' | b'{' => depth += 1,
                b')' | b']' | b'}' => depth -= 1,
                b':' if depth == 0 => return Some(i),
                _ => {}
            }
            i += 1;
        }
        None
    }

    fn inline_body(&self) -> bool {
        self.header_colon()
            .is_some_and(|c| !self.text[c + 1..].trim().is_empty())
    }
}

/// Removes the common leading indentation of a docstring body, following the
/// conventions of Python's `inspect.cleandoc`.
pub fn clean_docstring(body: &str) -> String {
    let expanded = body.replace('\t', "        ");
    let lines: Vec<&str> = expanded.split('\n').collect();
    let margin = lines
        .iter()
        .skip(1)
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.len() - l.trim_start().len())
        .min()
        .unwrap_or(0);
    let mut out: Vec<String> = Vec::with_capacity(lines.len());
    for (i, l) in lines.iter().enumerate() {
        if i == 0 {
            out.push(l.trim_start().to_string());
        } else if l.len() >= margin {
            out.push(l[margin..].to_string());
        } else {
            out.push(l.trim_start().to_string());
        }
    }
    while out.first().is_some_and(|l| l.trim().is_empty()) {
        out.remove(0);
    }
    while out.last().is_some_and(|l| l.trim().is_empty()) {
        out.pop();
    }
    out.join("\n")
}

fn identifier_after(text: &str, keyword: &str) -> Option<String> {
    let rest = text.strip_prefix(keyword)?.trim_start();
    let name: String = rest
        .chars()
        .take_while(|c| c.is_alphanumeric() || *c == '_')
        .collect();
    let valid = name
        .chars()
        .next()
        .is_some_and(|c| c.is_alphabetic() || c == '_');
    valid.then_some(name)
}

fn def_name(text: &str) -> Option<String> {
    let t = text
        .strip_prefix("async")
        .map(str::trim_start)
        .unwrap_or(text);
    identifier_after(t, "def")
}

/// The parenthesized parameter list of a `def` header, strings respected.
fn param_list(line: &LogicalLine) -> Option<&str> {
    let open = line.text.find('(')?;
    let bytes = line.text.as_bytes();
    let mut depth = 0i32;
    let mut i = open;
    while i < bytes.len() {
        if let Some(s) = line.strings.iter().find(|s| s.start <= i && i < s.end) {
            i = s.end;
            continue;
        }
        match bytes[i] {
            b'(' | b'[' | b'{' => depth += 1,
            b')' | b']' | b'}' => {
                depth -= 1;
                if depth == 0 {
                    return Some(&line.text[open..=i]);
                }
            }
            _ => {}
        }
        i += 1;
    }
    None
}

struct ClassBuilder {
    doc: ClassDoc,
    body_indent: Option<usize>,
    awaiting_class_doc: bool,
    pending_method: Option<String>,
    broken: bool,
}

/// Extracts one [`ClassDoc`] per top-level class statement.
///
/// Classes that cannot be scanned are reported in [`ScanOutput::errors`]; for
/// every input, `classes.len() + errors_with_class_name` equals the number of
/// top-level classes the scanner could delimit.
pub fn scan_source(src: &SourceFile) -> ScanOutput {
    let mut out = ScanOutput::default();
    let mut current: Option<ClassBuilder> = None;

    let finish = |cb: Option<ClassBuilder>, out: &mut ScanOutput| {
        if let Some(cb) = cb {
            if !cb.broken {
                out.classes.push(cb.doc);
            }
        }
    };

    for item in logical_lines(&src.text) {
        let line = match item {
            Ok(l) => l,
            Err(fail) => {
                let owner = current
                    .take()
                    .filter(|cb| !cb.broken)
                    .map(|cb| cb.doc.class_name)
                    .or_else(|| {
                        let raw = src.text.split_inclusive('\n').nth(fail.line_no - 1)?;
                        identifier_after(raw.trim_end(), "class")
                    });
                out.errors.push(MalformedSource {
                    path: src.path.clone(),
                    class_name: owner,
                    line: fail.line_no,
                    kind: fail.kind,
                });
                continue;
            }
        };

        if line.indent == 0 {
            finish(current.take(), &mut out);
            if let Some(name) = identifier_after(&line.text, "class") {
                let doc = ClassDoc {
                    class_name: name,
                    line: line.line_no,
                    class_docstring: None,
                    method_docstrings: BTreeMap::new(),
                    ctor_defaults: IndexMap::new(),
                    has_init: false,
                    notes: Vec::new(),
                };
                if line.inline_body() {
                    // `class A: pass` has no body lines to scan.
                    out.classes.push(doc);
                } else {
                    current = Some(ClassBuilder {
                        doc,
                        body_indent: None,
                        awaiting_class_doc: true,
                        pending_method: None,
                        broken: false,
                    });
                }
            }
            continue;
        }

        let Some(cb) = current.as_mut() else { continue };
        if cb.broken {
            continue;
        }
        let body_indent = *cb.body_indent.get_or_insert(line.indent);
        if line.indent < body_indent {
            cb.broken = true;
            out.errors.push(MalformedSource {
                path: src.path.clone(),
                class_name: Some(cb.doc.class_name.clone()),
                line: line.line_no,
                kind: MalformedKind::InconsistentIndent,
            });
            continue;
        }
        if cb.awaiting_class_doc {
            cb.awaiting_class_doc = false;
            if let Some(body) = line.string_statement() {
                cb.doc.class_docstring = Some(clean_docstring(&body));
                continue;
            }
        }
        if line.indent > body_indent {
            if let Some(method) = cb.pending_method.take() {
                if let Some(body) = line.string_statement() {
                    cb.doc
                        .method_docstrings
                        .insert(method, Some(clean_docstring(&body)));
                }
            }
            continue;
        }
        cb.pending_method = None;
        let Some(name) = def_name(&line.text) else {
            continue;
        };
        if !METHODS_OF_INTEREST.contains(&name.as_str())
            || cb.doc.method_docstrings.contains_key(&name)
        {
            continue;
        }
        cb.doc.method_docstrings.insert(name.clone(), None);
        if !line.inline_body() {
            cb.pending_method = Some(name.clone());
        }
        if name == "__init__" {
            cb.doc.has_init = true;
            match param_list(&line).map(parse_ctor_signature) {
                Some(Ok(sig)) => {
                    cb.doc.ctor_defaults = sig.params;
                    cb.doc.notes.extend(sig.skipped);
                }
                Some(Err(e)) => cb.doc.notes.push(e.to_string()),
                None => cb.doc.notes.push("missing parameter list".into()),
            }
        }
    }
    finish(current, &mut out);
    out
}

/// Splits `s` on top-level commas, respecting brackets and string literals.
fn split_top_level(s: &str) -> Result<Vec<&str>, MalformedSignature> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut quote: Option<char> = None;
    let mut escaped = false;
    let mut last = 0;
    for (i, c) in s.char_indices() {
        if let Some(q) = quote {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == q {
                quote = None;
            }
            continue;
        }
        match c {
            '\'' | '"' => quote = Some(c),
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => {
                depth -= 1;
                if depth < 0 {
                    return Err(MalformedSignature(format!("unexpected `{c}`")));
                }
            }
            ',' if depth == 0 => {
                parts.push(&s[last..i]);
                last = i + 1;
            }
            _ => {}
        }
    }
    if depth != 0 {
        return Err(MalformedSignature("unbalanced brackets".into()));
    }
    if quote.is_some() {
        return Err(MalformedSignature("unterminated string".into()));
    }
    parts.push(&s[last..]);
    Ok(parts)
}

fn find_top_level(s: &str, target: char) -> Option<usize> {
    let mut depth = 0i32;
    let mut quote: Option<char> = None;
    let mut escaped = false;
    let bytes = s.as_bytes();
    for (i, c) in s.char_indices() {
        if let Some(q) = quote {
            if escaped {
                escaped = false;
            } else if c == '\\' {
                escaped = true;
            } else if c == q {
                quote = None;
            }
            continue;
        }
        match c {
            '\'' | '"' => quote = Some(c),
            '(' | '[' | '{' => depth += 1,
            ')' | ']' | '}' => depth -= 1,
            c if c == target && depth == 0 => {
                if target == '=' {
                    let prev = i.checked_sub(1).map(|p| bytes[p]);
                    let next = bytes.get(i + 1).copied();
                    if matches!(prev, Some(b'=' | b'!' | b'<' | b'>')) || next == Some(b'=') {
                        continue;
                    }
                }
                return Some(i);
            }
            _ => {}
        }
    }
    None
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_')
}

/// Parses a parenthesized parameter list such as `(self, a=1, *, b='x')`.
pub fn parse_ctor_signature(params: &str) -> Result<Signature, MalformedSignature> {
    let trimmed = params.trim();
    let inner = trimmed
        .strip_prefix('(')
        .and_then(|t| t.strip_suffix(')'))
        .ok_or_else(|| MalformedSignature("expected a parenthesized parameter list".into()))?;
    let mut sig = Signature::default();
    for (idx, part) in split_top_level(inner)?.into_iter().enumerate() {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        if idx == 0 && part == "self" {
            continue;
        }
        if part == "*" || part == "/" || part == "..." || part.starts_with('*') {
            sig.skipped.push(format!("skipped parameter `{part}`"));
            continue;
        }
        let (head, default) = match find_top_level(part, '=') {
            Some(eq) => (&part[..eq], Some(Literal::decode(&part[eq + 1..]))),
            None => (part, None),
        };
        let name = match find_top_level(head, ':') {
            Some(colon) => head[..colon].trim(),
            None => head.trim(),
        };
        if !is_identifier(name) {
            sig.skipped
                .push(format!("skipped unrecognized parameter `{part}`"));
            continue;
        }
        if sig.params.contains_key(name) {
            sig.skipped.push(format!("duplicate parameter `{name}`"));
            continue;
        }
        sig.params.insert(name.to_string(), default);
    }
    Ok(sig)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::literal::LiteralValue;
    use proptest::prelude::*;

    const LOGISTIC: &str = include_str!("../../../fixtures/sklearn/linear_model/logistic.py");

    fn scan(text: &str) -> ScanOutput {
        scan_source(&SourceFile::new("t.py", text))
    }

    #[test]
    fn logistic_regression_fixture() {
        let out = scan(LOGISTIC);
        assert!(out.errors.is_empty(), "{:?}", out.errors);
        assert_eq!(out.classes.len(), 1);
        let c = &out.classes[0];
        assert_eq!(c.class_name, "LogisticRegression");
        assert!(c
            .class_docstring
            .as_deref()
            .unwrap()
            .starts_with("Logistic Regression classifier."));
        let keys: Vec<_> = c.ctor_defaults.keys().cloned().collect();
        assert_eq!(keys, ["solver", "penalty", "C"]);
        assert_eq!(
            c.ctor_defaults["solver"].as_ref().unwrap().value,
            LiteralValue::Str("warn".into())
        );
        assert_eq!(
            c.ctor_defaults["penalty"].as_ref().unwrap().value,
            LiteralValue::Str("l2".into())
        );
        assert_eq!(
            c.ctor_defaults["C"].as_ref().unwrap().value,
            LiteralValue::Float(1.0)
        );
    }

    #[test]
    fn empty_class() {
        let out = scan("class A:\n    pass\n");
        assert_eq!(out.classes.len(), 1);
        assert_eq!(out.classes[0].class_name, "A");
        assert_eq!(out.classes[0].class_docstring, None);
        assert!(out.classes[0].ctor_defaults.is_empty());
    }

    #[test]
    fn inline_class_body() {
        let out = scan("class A: pass\nclass B:\n    'doc'\n");
        let names: Vec<_> = out.classes.iter().map(|c| c.class_name.as_str()).collect();
        assert_eq!(names, ["A", "B"]);
        assert_eq!(out.classes[1].class_docstring.as_deref(), Some("doc"));
    }

    #[test]
    fn non_literal_default_is_not_evaluated() {
        let out = scan("class A:\n    def __init__(self, x=f(3)):\n        pass\n");
        let x = out.classes[0].ctor_defaults["x"].as_ref().unwrap();
        assert_eq!(x.value, LiteralValue::Other);
        assert_eq!(x.raw, "f(3)");
    }

    #[test]
    fn signature_examples() {
        let sig = parse_ctor_signature("(self, solver='warn', penalty='l2', C=1.0)").unwrap();
        assert_eq!(sig.params.len(), 3);
        assert_eq!(
            sig.params["C"].as_ref().unwrap().value,
            LiteralValue::Float(1.0)
        );

        assert!(parse_ctor_signature("(self)").unwrap().params.is_empty());

        let sig = parse_ctor_signature("(self, a=(1,2), b='x,y')").unwrap();
        let a = sig.params["a"].as_ref().unwrap();
        assert_eq!(a.value, LiteralValue::Other);
        assert_eq!(a.raw, "(1,2)");
        assert_eq!(
            sig.params["b"].as_ref().unwrap().value,
            LiteralValue::Str("x,y".into())
        );
    }

    #[test]
    fn signature_markers_are_skipped() {
        let sig =
            parse_ctor_signature("(self, a, /, b: int = 2, *args, c=None, **kwargs)").unwrap();
        let keys: Vec<_> = sig.params.keys().cloned().collect();
        assert_eq!(keys, ["a", "b", "c"]);
        assert_eq!(sig.params["a"], None);
        assert_eq!(
            sig.params["b"].as_ref().unwrap().value,
            LiteralValue::Int(2)
        );
        assert_eq!(sig.skipped.len(), 3);
        let sig = parse_ctor_signature("(self, *, a=1)").unwrap();
        assert_eq!(sig.params.len(), 1);
    }

    #[test]
    fn signature_unbalanced() {
        assert!(parse_ctor_signature("(self, a=(1, b=2)").is_err());
        assert!(parse_ctor_signature("(self, a=[1)").is_err());
    }

    #[test]
    fn decorated_and_nested_classes() {
        let src = "@dataclass\nclass A:\n    \"\"\"A doc.\"\"\"\n    class Inner:\n        \"\"\"inner\"\"\"\n        def fit(self):\n            'no'\n    def fit(self, X):\n        \"\"\"Fit.\"\"\"\n";
        let out = scan(src);
        assert_eq!(out.classes.len(), 1);
        let a = &out.classes[0];
        assert_eq!(a.class_docstring.as_deref(), Some("A doc."));
        assert_eq!(a.method_doc("fit"), Some("Fit."));
    }

    #[test]
    fn method_without_docstring_is_recorded_as_absent() {
        let out = scan("class A:\n    def predict(self, X):\n        return X\n");
        assert!(out.classes[0].has_method("predict"));
        assert_eq!(out.classes[0].method_doc("predict"), None);
    }

    #[test]
    fn strings_and_comments_do_not_confuse_the_scanner() {
        let src = "x = '''\nclass Fake:\n'''\n# class Commented:\nclass Real:  # trailing\n    r\"\"\"Raw \\d doc.\"\"\"\n    def __init__(self, a='#', b=\"(\"):\n        pass\n";
        let out = scan(src);
        let names: Vec<_> = out.classes.iter().map(|c| c.class_name.as_str()).collect();
        assert_eq!(names, ["Real"]);
        assert_eq!(
            out.classes[0].class_docstring.as_deref(),
            Some("Raw \\d doc.")
        );
        assert_eq!(
            out.classes[0].ctor_defaults["b"].as_ref().unwrap().value,
            LiteralValue::Str("(".into())
        );
    }

    #[test]
    fn backslash_continuations_in_docstring_are_preserved() {
        let src = "class A:\n    \"\"\"Doc.\n\n    x : int, \\\n        optional\n    \"\"\"\n";
        let out = scan(src);
        assert!(out.classes[0]
            .class_docstring
            .as_deref()
            .unwrap()
            .contains("int, \\\n"));
    }

    #[test]
    fn multiline_signature() {
        let src = "class A:\n    def __init__(self,\n                 a=1,  # comment, with comma\n                 b='x'):\n        \"\"\"Init doc.\"\"\"\n";
        let out = scan(src);
        let c = &out.classes[0];
        assert_eq!(c.ctor_defaults.len(), 2);
        assert_eq!(c.method_doc("__init__"), Some("Init doc."));
    }

    #[test]
    fn unterminated_string_is_reported_per_class() {
        let src =
            "class Bad:\n    \"\"\"never closed\n    def f(self): pass\nclass Good:\n    'ok'\n";
        let out = scan(src);
        assert_eq!(out.errors.len(), 1);
        assert_eq!(out.errors[0].class_name.as_deref(), Some("Bad"));
        assert_eq!(out.errors[0].kind, MalformedKind::UnterminatedString);
        let names: Vec<_> = out.classes.iter().map(|c| c.class_name.as_str()).collect();
        assert_eq!(names, ["Good"]);
    }

    #[test]
    fn inconsistent_indentation_is_reported() {
        let src = "class Bad:\n        'doc'\n        x = 1\n    y = 2\nclass Good:\n    pass\n";
        let out = scan(src);
        assert_eq!(out.errors.len(), 1);
        assert_eq!(out.errors[0].kind, MalformedKind::InconsistentIndent);
        assert_eq!(out.classes.len(), 1);
        assert_eq!(out.classes[0].class_name, "Good");
    }

    #[test]
    fn unbalanced_bracket_does_not_swallow_following_classes() {
        let src = "class Bad:\n    def __init__(self, a=(1,\n        pass\nclass Good:\n    pass\n";
        let out = scan(src);
        assert_eq!(out.errors.len(), 1);
        assert_eq!(out.errors[0].kind, MalformedKind::UnbalancedBrackets);
        assert_eq!(out.classes.len(), 1);
        assert_eq!(out.classes[0].class_name, "Good");
    }

    #[test]
    fn clean_docstring_matches_cleandoc() {
        assert_eq!(
            clean_docstring("Title.\n\n    Body\n      more\n    "),
            "Title.\n\nBody\n  more"
        );
        assert_eq!(clean_docstring("\n    Starts late.\n    "), "Starts late.");
    }

    fn count_top_level_classes(src: &str) -> usize {
        src.lines()
            .filter(|l| starts_block_keyword(l) && l.starts_with("class"))
            .count()
    }

    proptest! {
        #[test]
        fn scanning_is_idempotent_and_total(s in "\\PC{0,200}") {
            let a = scan(&s);
            let b = scan(&s);
            prop_assert_eq!(a, b);
        }

        #[test]
        fn every_class_is_accounted_for(
            names in proptest::collection::vec("[A-Z][a-z]{0,6}", 1..6),
            docs in proptest::collection::vec(proptest::option::of("[a-z ]{0,10}"), 6),
        ) {
            let mut src = String::new();
            for (i, n) in names.iter().enumerate() {
                src.push_str(&format!("class {n}(Base):\n"));
                match &docs[i] {
                    Some(d) => src.push_str(&format!("    \"\"\"{d}\"\"\"\n    def fit(self, X, y=None):\n        return self\n")),
                    None => src.push_str("    pass\n"),
                }
            }
            let out = scan(&src);
            prop_assert_eq!(out.classes.len() + out.errors.len(), count_top_level_classes(&src));
            prop_assert_eq!(out.classes.len(), names.len());
        }
    }
}
