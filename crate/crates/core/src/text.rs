//! Sentence splitting for long descriptions.

fn bullet_body(line: &str) -> Option<&str> {
    let t = line.trim_start();
    ["- ", "* ", "+ "]
        .iter()
        .find_map(|b| t.strip_prefix(b))
        .or_else(|| (t == "-" || t == "*").then_some(""))
}

fn collapse_ws(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Splits a paragraph (already joined onto one line) at `.` followed by
/// whitespace and an uppercase letter, or at the end of text.
fn split_paragraph(text: &str, out: &mut Vec<String>) {
    let chars: Vec<char> = text.chars().collect();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        if chars[i] == '.' {
            let mut j = i + 1;
            while j < chars.len() && chars[j].is_whitespace() {
                j += 1;
            }
            let boundary = j == chars.len() || (j > i + 1 && chars[j].is_uppercase());
            if boundary {
                let s: String = chars[start..=i].iter().collect();
                let s = collapse_ws(&s);
                if !s.is_empty() {
                    out.push(s);
                }
                start = j;
                i = j;
                continue;
            }
        }
        i += 1;
    }
    if start < chars.len() {
        let s = collapse_ws(&chars[start..].iter().collect::<String>());
        if !s.is_empty() {
            out.push(s);
        }
    }
}

/// Candidate sentences of a long description. Bullet items and blank-line
/// separated paragraphs always start a new sentence; bullet markers are
/// dropped.
pub fn sentences(long_desc: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut para = String::new();
    for line in long_desc.lines() {
        if line.trim().is_empty() {
            split_paragraph(&para, &mut out);
            para.clear();
            continue;
        }
        let body = match bullet_body(line) {
            Some(b) => {
                split_paragraph(&para, &mut out);
                para.clear();
                b
            }
            None => line.trim(),
        };
        if !para.is_empty() {
            para.push(' ');
        }
        para.push_str(body);
    }
    split_paragraph(&para, &mut out);
    out
}

/// The first sentence of a long description, cut at the first `;` and
/// ending in a period. `None` if the description is empty.
pub fn first_sentence(long_desc: &str) -> Option<String> {
    let first = sentences(long_desc).into_iter().next()?;
    let cut = match first.find(';') {
        Some(i) => first[..i].trim_end().to_string(),
        None => first,
    };
    let mut s = cut.trim_end_matches([',', ':', ';']).trim_end().to_string();
    if s.is_empty() {
        return None;
    }
    if !s.ends_with(['.', '?', '!']) {
        s.push('.');
    }
    Some(s)
}
