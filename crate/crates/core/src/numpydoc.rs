//! Numpydoc section splitting and per-argument entry parsing.

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Parameters,
    Returns,
    Attributes,
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Section {
    pub kind: SectionKind,
    /// Header text as written; empty for the implicit summary section.
    pub heading: String,
    /// Body lines between this header's underline and the next header.
    pub lines: Vec<String>,
}

/// One `(name, short_desc, long_desc)` triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgDoc {
    pub name: String,
    pub short_desc: String,
    pub long_desc: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("malformed entry `{header}`: {reason}")]
pub struct MalformedEntry {
    pub header: String,
    pub reason: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParsedEntries {
    pub args: Vec<ArgDoc>,
    pub errors: Vec<MalformedEntry>,
}

fn is_underline(line: &str) -> bool {
    let t = line.trim();
    t.len() >= 3 && t.bytes().all(|b| b == b'-')
}

fn indent_of(line: &str) -> usize {
    line.len() - line.trim_start().len()
}

pub(crate) fn expand_tabs(s: &str) -> String {
    s.replace('\t', "    ")
}

/// Splits a docstring at numpydoc section headers (a title line followed by
/// a line of at least three dashes).
pub fn split_sections(docstring: &str) -> Vec<Section> {
    let text = expand_tabs(docstring);
    let lines: Vec<&str> = if text.is_empty() {
        Vec::new()
    } else {
        text.split('\n').collect()
    };
    let mut sections = vec![Section {
        kind: SectionKind::Other,
        heading: String::new(),
        lines: Vec::new(),
    }];
    let mut i = 0;
    while i < lines.len() {
        let line = lines[i];
        let is_header = !line.trim().is_empty()
            && !is_underline(line)
            && lines.get(i + 1).is_some_and(|next| is_underline(next));
        if is_header {
            let heading = line.trim().to_string();
            let kind = match heading.as_str() {
                "Parameters" => SectionKind::Parameters,
                "Returns" => SectionKind::Returns,
                "Attributes" => SectionKind::Attributes,
                _ => SectionKind::Other,
            };
            sections.push(Section {
                kind,
                heading,
                lines: Vec::new(),
            });
            i += 2;
            continue;
        }
        sections.last_mut().unwrap().lines.push(line.to_string());
        i += 1;
    }
    sections
}

/// Finds the first section of the given kind.
pub fn find_section(sections: &[Section], kind: SectionKind) -> Option<&Section> {
    sections.iter().find(|s| s.kind == kind)
}

fn valid_name(name: &str) -> bool {
    let body = name.trim_start_matches('*');
    !body.is_empty()
        && name.len() - body.len() <= 2
        && body
            .chars()
            .next()
            .is_some_and(|c| c.is_alphabetic() || c == '_')
        && body.chars().all(|c| c.is_alphanumeric() || c == '_')
}

fn dedent_block(lines: &[String]) -> String {
    let margin = lines
        .iter()
        .filter(|l| !l.trim().is_empty())
        .map(|l| indent_of(l))
        .min()
        .unwrap_or(0);
    let mut out: Vec<&str> = lines
        .iter()
        .map(|l| {
            if l.len() >= margin {
                l[margin..].trim_end()
            } else {
                l.trim()
            }
        })
        .collect();
    while out.first().is_some_and(|l| l.is_empty()) {
        out.remove(0);
    }
    while out.last().is_some_and(|l| l.is_empty()) {
        out.pop();
    }
    out.join("\n")
}

/// Parses the entries of a Parameters (or Returns) section.
pub fn parse_parameters(section: &Section) -> ParsedEntries {
    let lines = &section.lines;
    let base = lines
        .iter()
        .filter(|l| !l.trim().is_empty())
        .map(|l| indent_of(l))
        .min()
        .unwrap_or(0);

    let mut out = ParsedEntries::default();
    let mut seen = HashSet::new();
    let mut i = 0;
    // Skip anything before the first entry header.
    while i < lines.len() && (lines[i].trim().is_empty() || indent_of(&lines[i]) != base) {
        i += 1;
    }
    while i < lines.len() {
        let mut header = lines[i].trim().to_string();
        i += 1;
        while header.ends_with('\\') && i < lines.len() {
            header.pop();
            let next = lines[i].trim();
            header = format!("{} {}", header.trim_end(), next);
            i += 1;
        }
        let start = i;
        while i < lines.len() && (lines[i].trim().is_empty() || indent_of(&lines[i]) > base) {
            i += 1;
        }
        let long_desc = dedent_block(&lines[start..i]);

        let Some(colon) = header.find(':') else {
            out.errors.push(MalformedEntry {
                header,
                reason: "missing `:`".into(),
            });
            continue;
        };
        let name = header[..colon].trim();
        if !valid_name(name) {
            out.errors.push(MalformedEntry {
                reason: format!("invalid name `{name}`"),
                header,
            });
            continue;
        }
        if !seen.insert(name.to_string()) {
            out.errors.push(MalformedEntry {
                reason: format!("duplicate entry `{name}`"),
                header,
            });
            continue;
        }
        out.args.push(ArgDoc {
            name: name.to_string(),
            short_desc: header[colon + 1..].trim().to_string(),
            long_desc,
        });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const LOGISTIC_DOC: &str = "Logistic Regression classifier.\n\nParameters\n------\n\nsolver : str, {'linear', 'sag', 'lbfgs'}, \\\n          optional (default='linear').\n  Algorithm for optimization.\n  - Solvers 'sag' and 'lbfgs' support only l2.\n\npenalty : str, 'l1' or 'l2', default: 'l2'\n  Norm used in the penalization. \n  The 'sag' and 'lbfgs' solvers support \n  only l2 penalties.\n\nC : float, default: 1.0\n  Inverse regularization strength; \n  must be a positive float. \n  Like in support vector machines, smaller\n  values specify stronger regularization";

    #[test]
    fn logistic_sections_and_entries() {
        let sections = split_sections(LOGISTIC_DOC);
        let kinds: Vec<_> = sections.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, [SectionKind::Other, SectionKind::Parameters]);
        let parsed = parse_parameters(&sections[1]);
        assert!(parsed.errors.is_empty());
        let names: Vec<_> = parsed.args.iter().map(|a| a.name.as_str()).collect();
        assert_eq!(names, ["solver", "penalty", "C"]);
        assert_eq!(
            parsed.args[0].short_desc,
            "str, {'linear', 'sag', 'lbfgs'}, optional (default='linear')."
        );
        assert_eq!(
            parsed.args[0].long_desc,
            "Algorithm for optimization.\n- Solvers 'sag' and 'lbfgs' support only l2."
        );
        assert_eq!(
            parsed.args[1].short_desc,
            "str, 'l1' or 'l2', default: 'l2'"
        );
        assert_eq!(parsed.args[2].short_desc, "float, default: 1.0");
    }

    #[test]
    fn empty_docstring() {
        let s = split_sections("");
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].kind, SectionKind::Other);
        assert!(s[0].lines.is_empty());
    }

    #[test]
    fn returns_only() {
        let s = split_sections("Returns\n-------\nself : object");
        let kinds: Vec<_> = s.iter().map(|s| s.kind).collect();
        assert_eq!(kinds, [SectionKind::Other, SectionKind::Returns]);
        let e = parse_parameters(&s[1]);
        assert_eq!(e.args[0].name, "self");
        assert_eq!(e.args[0].short_desc, "object");
    }

    #[test]
    fn entry_without_body() {
        let s = split_sections("Parameters\n----------\nx : int\ny : float\n");
        let e = parse_parameters(&s[1]);
        assert_eq!(e.args.len(), 2);
        assert_eq!(e.args[0].long_desc, "");
    }

    #[test]
    fn continuation_is_joined() {
        let s = split_sections(
            "Parameters\n----------\nmax_features: int, float, string or None, optional \\\n  (default=None)\n    The number of features.\n",
        );
        let e = parse_parameters(&s[1]);
        assert_eq!(e.args[0].name, "max_features");
        assert_eq!(
            e.args[0].short_desc,
            "int, float, string or None, optional (default=None)"
        );
        assert_eq!(e.args[0].long_desc, "The number of features.");
    }

    #[test]
    fn malformed_entries_do_not_affect_others() {
        let s = split_sections(
            "Parameters\n----------\nalpha\n    no colon\nbeta : int\n    ok\nthe thing : str\nbeta : float\n",
        );
        let e = parse_parameters(&s[1]);
        assert_eq!(e.args.len(), 1);
        assert_eq!(e.args[0].name, "beta");
        assert_eq!(e.errors.len(), 3);
        assert!(e.errors[2].reason.contains("duplicate"));
    }

    #[test]
    fn unknown_sections_are_other_and_case_sensitive() {
        let s = split_sections(
            "Summary.\n\nparameters\n----------\nx : int\n\nNotes\n-----\nSome notes.",
        );
        let kinds: Vec<_> = s.iter().map(|s| s.kind).collect();
        assert_eq!(
            kinds,
            [SectionKind::Other, SectionKind::Other, SectionKind::Other]
        );
        assert_eq!(s[2].heading, "Notes");
    }

    #[test]
    fn tabs_are_expanded() {
        let s = split_sections("Parameters\n----------\nx : int\n\tBody.\n");
        let e = parse_parameters(&s[1]);
        assert_eq!(e.args[0].long_desc, "Body.");
    }

    proptest! {
        #[test]
        fn concatenated_bodies_reconstruct_the_docstring(
            parts in proptest::collection::vec(
                prop_oneof![
                    "[a-z ]{0,12}".prop_map(|s| s),
                    Just("Parameters\n----------".to_string()),
                    Just("Returns\n-------".to_string()),
                    Just("    x : int".to_string()),
                    Just("---".to_string()),
                ],
                0..12,
            )
        ) {
            let doc = parts.join("\n");
            let sections = split_sections(&doc);
            let rebuilt: Vec<String> = sections.iter().flat_map(|s| s.lines.clone()).collect();
            // Remove consumed header/underline pairs from the original.
            let lines: Vec<&str> = if doc.is_empty() { vec![] } else { doc.split('\n').collect() };
            let mut expected = Vec::new();
            let mut i = 0;
            while i < lines.len() {
                if !lines[i].trim().is_empty() && !is_underline(lines[i]) && lines.get(i + 1).is_some_and(|n| is_underline(n)) {
                    i += 2;
                    continue;
                }
                expected.push(lines[i].to_string());
                i += 1;
            }
            prop_assert_eq!(rebuilt, expected);
        }

        #[test]
        fn parse_parameters_is_total(body in "\\PC{0,200}") {
            let section = Section { kind: SectionKind::Parameters, heading: "Parameters".into(), lines: body.split('\n').map(str::to_string).collect() };
            let parsed = parse_parameters(&section);
            let mut names = HashSet::new();
            for a in &parsed.args {
                prop_assert!(!a.name.contains(char::is_whitespace));
                prop_assert!(names.insert(a.name.clone()));
            }
        }
    }
}
