//! Plain-text Cayley table files.
//!
//! Format: line 1 holds the order `n`; the next `n` lines hold `n`
//! space-separated element indices each (row-major table); optional trailing
//! lines `label <k> <name>` attach display names. Lines starting with `#`
//! and blank lines are ignored. The identity need not be at index 0 in the
//! file; normalization relocates it.

use super::{Group, GroupError};
use std::path::Path;

pub fn parse_table_str(text: &str) -> Result<Group, GroupError> {
    let mut rows: Vec<Vec<usize>> = Vec::new();
    let mut order: Option<usize> = None;
    let mut labels: Vec<(usize, String)> = Vec::new();

    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |msg: String| GroupError::Parse { line: lineno + 1, msg };
        match order {
            None => {
                let n: usize = line
                    .parse()
                    .map_err(|_| parse_err(format!("expected order, got {line:?}")))?;
                order = Some(n);
            }
            Some(n) if rows.len() < n => {
                let row: Result<Vec<usize>, _> =
                    line.split_whitespace().map(str::parse::<usize>).collect();
                let row = row.map_err(|_| parse_err("bad table row".into()))?;
                if row.len() != n {
                    return Err(parse_err(format!("expected {n} entries, got {}", row.len())));
                }
                rows.push(row);
            }
            Some(n) => {
                let mut parts = line.splitn(3, char::is_whitespace);
                match (parts.next(), parts.next(), parts.next()) {
                    (Some("label"), Some(k), Some(name)) => {
                        let k: usize = k
                            .parse()
                            .map_err(|_| parse_err("bad label index".into()))?;
                        if k >= n {
                            return Err(parse_err(format!("label index {k} out of range")));
                        }
                        labels.push((k, name.trim().to_string()));
                    }
                    _ => return Err(parse_err(format!("unexpected trailing line {line:?}"))),
                }
            }
        }
    }

    let n = order.ok_or(GroupError::EmptyTable)?;
    if rows.len() != n {
        return Err(GroupError::Parse {
            line: 0,
            msg: format!("expected {n} table rows, got {}", rows.len()),
        });
    }
    let (mut group, map) = Group::from_cayley_table_mapped(&rows)?;
    if !labels.is_empty() {
        let mut named: Vec<String> =
            (0..n).map(|i| if i == 0 { "e".into() } else { format!("g{i}") }).collect();
        for (old_idx, name) in labels {
            named[map[old_idx]] = name;
        }
        group.set_labels(named)?;
    }
    Ok(group)
}

pub fn read_table_file(path: &Path) -> Result<Group, GroupError> {
    let text = std::fs::read_to_string(path).map_err(|e| GroupError::Io(e.to_string()))?;
    parse_table_str(&text)
}

pub fn table_file_string(g: &Group) -> String {
    let n = g.order();
    let mut out = String::new();
    out.push_str(&format!("{n}\n"));
    for a in 0..n {
        let row: Vec<String> = (0..n).map(|b| g.mul(a, b).to_string()).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    if g.labels().is_some() {
        for k in 0..n {
            out.push_str(&format!("label {k} {}\n", g.label(k)));
        }
    }
    out
}

pub fn write_table_file(g: &Group, path: &Path) -> Result<(), GroupError> {
    std::fs::write(path, table_file_string(g)).map_err(|e| GroupError::Io(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{dicyclic, symmetric};

    #[test]
    fn roundtrip_s3() {
        let s3 = symmetric(3).unwrap();
        let text = table_file_string(&s3);
        let back = parse_table_str(&text).unwrap();
        assert_eq!(back, s3);
    }

    #[test]
    fn roundtrip_without_labels() {
        let q8 = dicyclic(2).unwrap();
        let mut text = String::new();
        text.push_str("8\n");
        for a in 0..8 {
            let row: Vec<String> = (0..8).map(|b| q8.mul(a, b).to_string()).collect();
            text.push_str(&row.join(" "));
            text.push('\n');
        }
        let back = parse_table_str(&text).unwrap();
        assert_eq!(back.order(), 8);
        assert_eq!(back.fingerprint(), q8.fingerprint());
    }

    #[test]
    fn identity_not_first_in_file() {
        // C3 with identity written at index 2.
        let text = "3\n1 2 0\n2 0 1\n0 1 2\n";
        let g = parse_table_str(text).unwrap();
        assert_eq!(g.mul(0, 1), 1);
        assert_eq!(g.mul(1, 2), 0);
    }

    #[test]
    fn reports_parse_errors_with_line() {
        let err = parse_table_str("2\n0 1\n1 zero\n").unwrap_err();
        assert!(matches!(err, GroupError::Parse { line: 3, .. }));
        let err = parse_table_str("not-a-number\n").unwrap_err();
        assert!(matches!(err, GroupError::Parse { line: 1, .. }));
    }

    #[test]
    fn comments_and_blank_lines_skipped() {
        let text = "# a demo group\n\n2\n0 1\n1 0\n# done\n";
        assert_eq!(parse_table_str(text).unwrap().order(), 2);
    }
}
