//! Line-oriented model files.
//!
//! ```text
//! model K4
//! elements 0 a a*
//! zero 0
//! star 0:0 a:a* a*:a
//! table
//! {0} {a} {a*}
//! {a} {a} {0,a,a*}
//! {a*} {0,a,a*} {a*}
//! ```
//!
//! Instead of (or as well as) `table`, a `triples` block lists one `a b c`
//! per line and ends with `end`. When both are given they must agree.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{ModelError, ModelStructure};

fn syntax<T>(line: usize, message: impl Into<String>) -> Result<T, ModelError> {
    Err(ModelError::Syntax {
        line,
        message: message.into(),
    })
}

pub fn parse_model(text: &str) -> Result<ModelStructure, ModelError> {
    let mut name = None;
    let mut elements: Option<Vec<String>> = None;
    let mut zero = None;
    let mut star_pairs: Option<Vec<(String, String)>> = None;
    let mut from_table: Option<BTreeSet<(usize, usize, usize)>> = None;
    let mut from_triples: Option<BTreeSet<(usize, usize, usize)>> = None;

    let mut lines = text
        .lines()
        .enumerate()
        .map(|(n, l)| (n + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let index_of =
        |els: &Option<Vec<String>>, name: &str, line: usize| -> Result<usize, ModelError> {
            let Some(els) = els else {
                return syntax(line, "'elements' must come first");
            };
            match els.iter().position(|e| e == name) {
                Some(i) => Ok(i),
                None => syntax(line, format!("unknown element '{name}'")),
            }
        };

    while let Some((n, line)) = lines.next() {
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match key {
            "model" => name = Some(rest.to_string()),
            "elements" => elements = Some(rest.split_whitespace().map(String::from).collect()),
            "zero" => zero = Some(index_of(&elements, rest, n)?),
            "star" => {
                let mut pairs = Vec::new();
                for w in rest.split_whitespace() {
                    let Some((a, b)) = w.split_once(':') else {
                        return syntax(n, format!("star entry '{w}' needs the form x:y"));
                    };
                    pairs.push((a.to_string(), b.to_string()));
                }
                star_pairs = Some(pairs);
            }
            "table" => {
                let Some(els) = &elements else {
                    return syntax(n, "'elements' must come first");
                };
                let mut set = BTreeSet::new();
                for x in 0..els.len() {
                    let Some((rn, row)) = lines.next() else {
                        return syntax(n, "table is missing rows");
                    };
                    let cells = split_cells(row).ok_or(ModelError::Syntax {
                        line: rn,
                        message: "table row must be a list of {..} cells".into(),
                    })?;
                    if cells.len() != els.len() {
                        return syntax(rn, format!("table row needs {} cells", els.len()));
                    }
                    for (y, cell) in cells.iter().enumerate() {
                        for z in cell.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                            set.insert((x, y, index_of(&elements, z, rn)?));
                        }
                    }
                }
                from_table = Some(set);
            }
            "triples" => {
                let mut set = BTreeSet::new();
                loop {
                    let Some((tn, t)) = lines.next() else {
                        return syntax(n, "triples block needs 'end'");
                    };
                    if t == "end" {
                        break;
                    }
                    let w: Vec<&str> = t.split_whitespace().collect();
                    if w.len() != 3 {
                        return syntax(tn, "triple needs three elements");
                    }
                    set.insert((
                        index_of(&elements, w[0], tn)?,
                        index_of(&elements, w[1], tn)?,
                        index_of(&elements, w[2], tn)?,
                    ));
                }
                from_triples = Some(set);
            }
            _ => return syntax(n, format!("unknown directive '{key}'")),
        }
    }

    let elements = elements.ok_or(ModelError::Syntax {
        line: 0,
        message: "missing 'elements'".into(),
    })?;
    let zero = zero.ok_or(ModelError::Syntax {
        line: 0,
        message: "missing 'zero'".into(),
    })?;
    let pairs = star_pairs.ok_or(ModelError::Syntax {
        line: 0,
        message: "missing 'star'".into(),
    })?;
    let mut star = vec![usize::MAX; elements.len()];
    for (a, b) in &pairs {
        let (Some(i), Some(j)) = (
            elements.iter().position(|e| e == a),
            elements.iter().position(|e| e == b),
        ) else {
            return Err(ModelError::Invalid(format!(
                "star entry {a}:{b} names an unknown element"
            )));
        };
        star[i] = j;
    }
    if star.contains(&usize::MAX) {
        return Err(ModelError::Invalid("star is not total".into()));
    }
    let triples = match (from_table, from_triples) {
        (Some(t), Some(r)) if t != r => {
            return Err(ModelError::Invalid("table and triples disagree".into()));
        }
        (Some(t), _) => t,
        (None, Some(r)) => r,
        (None, None) => {
            return Err(ModelError::Invalid(
                "need a table or a triples block".into(),
            ))
        }
    };
    ModelStructure::new(
        name.unwrap_or_else(|| "unnamed".into()),
        elements,
        zero,
        star,
        triples,
    )
}

fn split_cells(row: &str) -> Option<Vec<&str>> {
    let mut out = Vec::new();
    let mut rest = row.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('{')?;
        let close = body.find('}')?;
        out.push(&body[..close]);
        rest = body[close + 1..].trim_start();
    }
    Some(out)
}

/// Prints the table form.
pub fn print_model(m: &ModelStructure) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "model {}", m.name());
    let _ = writeln!(out, "elements {}", m.elements().join(" "));
    let _ = writeln!(out, "zero {}", m.elements()[m.zero()]);
    let star: Vec<String> = (0..m.size())
        .map(|i| format!("{}:{}", m.elements()[i], m.elements()[m.star(i)]))
        .collect();
    let _ = writeln!(out, "star {}", star.join(" "));
    out.push_str("table\n");
    for row in m.fusion_table() {
        let cells: Vec<String> = row.iter().map(|&s| m.format_set(s)).collect();
        let _ = writeln!(out, "{}", cells.join(" "));
    }
    out
}
