//! Tokenizer shared by the type and constraint grammars.

use std::sync::OnceLock;

use regex::Regex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Number,
    Punct,
    /// A quoted string; `text` holds the contents without quotes.
    Quoted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Char offsets `[start, end)` into the input.
    pub span: (usize, usize),
}

impl Token {
    pub fn is_word(&self, w: &str) -> bool {
        self.kind == TokenKind::Word && self.text.eq_ignore_ascii_case(w)
    }

    pub fn is_punct(&self, p: &str) -> bool {
        self.kind == TokenKind::Punct && self.text == p
    }
}

const TWO_CHAR_PUNCT: [&str; 4] = ["==", ">=", "<=", "!="];
const ONE_CHAR_PUNCT: &str = "{}()[],:=|.<>";

fn number_re() -> &'static Regex {
    static RE: OnceLock<Regex> = OnceLock::new();
    RE.get_or_init(|| Regex::new(r"^[+-]?(?:\d[\d_]*(?:\.\d+)?|\.\d+)(?:[eE][+-]?\d+)?").unwrap())
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

/// Splits text into WORD, NUMBER, PUNCT and QUOTED tokens. Backslashes,
/// backticks, apostrophes and unterminated quotes are dropped.
pub fn tokenize(input: &str) -> Vec<Token> {
    let chars: Vec<char> = input.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '\\' || c == '`' {
            i += 1;
            continue;
        }
        if c == '\'' || c == '"' {
            let apostrophe = i > 0 && chars[i - 1].is_alphanumeric();
            let close = chars[i + 1..]
                .iter()
                .position(|&d| d == c)
                .map(|p| i + 1 + p);
            match close {
                Some(end) if !apostrophe => {
                    out.push(Token {
                        kind: TokenKind::Quoted,
                        text: chars[i + 1..end].iter().collect(),
                        span: (i, end + 1),
                    });
                    i = end + 1;
                }
                _ => i += 1,
            }
            continue;
        }

        let prev_is_operand =
            i > 0 && (is_word_char(chars[i - 1]) || matches!(chars[i - 1], ')' | ']'));
        let starts_number = c.is_ascii_digit()
            || (c == '.' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit()))
            || (matches!(c, '-' | '+')
                && !prev_is_operand
                && chars
                    .get(i + 1)
                    .is_some_and(|d| d.is_ascii_digit() || *d == '.'));
        if starts_number {
            let rest: String = chars[i..].iter().collect();
            if let Some(m) = number_re().find(&rest) {
                let len = m.as_str().chars().count();
                let next = chars.get(i + len);
                if !next.is_some_and(|&d| is_word_char(d)) {
                    out.push(Token {
                        kind: TokenKind::Number,
                        text: m.as_str().to_string(),
                        span: (i, i + len),
                    });
                    i += len;
                    continue;
                }
            }
        }

        if is_word_char(c) {
            let start = i;
            while i < chars.len() {
                // `-` and `.` only join two word runs
                if is_word_char(chars[i])
                    || matches!(chars[i], '-' | '.')
                        && chars.get(i + 1).is_some_and(|&d| is_word_char(d))
                {
                    i += 1;
                } else {
                    break;
                }
            }
            out.push(Token {
                kind: TokenKind::Word,
                text: chars[start..i].iter().collect(),
                span: (start, i),
            });
            continue;
        }

        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        if TWO_CHAR_PUNCT.contains(&two.as_str()) {
            out.push(Token {
                kind: TokenKind::Punct,
                text: two,
                span: (i, i + 2),
            });
            i += 2;
            continue;
        }
        let kind = if ONE_CHAR_PUNCT.contains(c) {
            TokenKind::Punct
        } else {
            TokenKind::Word
        };
        out.push(Token {
            kind,
            text: c.to_string(),
            span: (i, i + 1),
        });
        i += 1;
    }
    out
}
