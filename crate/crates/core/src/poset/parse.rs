use std::collections::HashMap;
use std::fmt::Write as _;

use super::Poset;
use crate::error::{Error, Result};

const HEADER: &str = "poset v1";

/// Parses the line-oriented `poset v1` format.
///
/// ```text
/// poset v1
/// elem 0
/// elem a
/// le 0 a    # 0 <= a
/// ```
///
/// `#` starts a comment and blank lines are ignored. The header must be the
/// first line of the file.
pub fn parse_poset(text: &str) -> Result<Poset> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));

    match lines.next() {
        Some((_, first)) if strip_comment(first).trim() == HEADER => {}
        Some((line, _)) => return Err(Error::Syntax { line, message: format!("expected header `{HEADER}`") }),
        None => return Err(Error::Syntax { line: 1, message: "empty file".into() }),
    }

    let mut names: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut pairs = Vec::new();

    for (line, raw) in lines {
        let content = strip_comment(raw);
        let tokens: Vec<&str> = content.split_whitespace().collect();
        match tokens.as_slice() {
            [] => {}
            ["elem", name] => {
                if index.contains_key(*name) {
                    return Err(Error::DuplicateElement { line, name: name.to_string() });
                }
                index.insert(name.to_string(), names.len());
                names.push(name.to_string());
            }
            ["le", a, b] => {
                let lookup = |name: &str| {
                    index.get(name).copied().ok_or_else(|| Error::UnknownName { line, name: name.to_string() })
                };
                pairs.push((lookup(a)?, lookup(b)?));
            }
            ["elem", ..] => return Err(Error::Syntax { line, message: "`elem` takes exactly one name".into() }),
            ["le", ..] => return Err(Error::Syntax { line, message: "`le` takes exactly two names".into() }),
            [other, ..] => return Err(Error::Syntax { line, message: format!("unknown directive `{other}`") }),
        }
    }

    if names.is_empty() {
        return Err(Error::Syntax { line: 1, message: "no elements declared".into() });
    }

    Poset::from_pairs(names, pairs)
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
}

pub(super) fn write_poset(poset: &Poset) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for name in poset.names() {
        let _ = writeln!(out, "elem {name}");
    }
    for (a, b) in poset.covers() {
        let _ = writeln!(out, "le {} {}", poset.name(a), poset.name(b));
    }
    out
}
