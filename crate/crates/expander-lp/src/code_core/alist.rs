//! The alist interchange format for parity-check structures.
//!
//! Layout, all ASCII with LF line endings:
//! ```text
//! n m
//! max_col_degree max_row_degree
//! d_1 .. d_n            (variable degrees)
//! e_1 .. e_m            (check degrees)
//! n lines: 1-indexed checks of each variable, zero-padded to max_col
//! m lines: 1-indexed variables of each check, zero-padded to max_row
//! ```
//! `write_alist` emits adjacency sorted ascending; `parse_alist` accepts
//! any order and normalizes, so parse ∘ write is the identity.

use thiserror::Error;

use super::graph::{build_graph_nonuniform, GraphError, TannerGraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlistError {
    #[error("line {line}: expected {expected} fields, found {found}")]
    FieldCount {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}: {text:?} is not a nonnegative integer")]
    BadInteger { line: usize, text: String },
    #[error("file ends at line {line}, expected {expected} lines")]
    UnexpectedEnd { line: usize, expected: usize },
    #[error("line {line}: trailing content after the adjacency lists")]
    TrailingContent { line: usize },
    #[error("header dimension must be positive")]
    EmptyDimensions,
    #[error("line {line}: declared degree {declared} exceeds max degree {max}")]
    DegreeAboveMax {
        line: usize,
        declared: usize,
        max: usize,
    },
    #[error("line {line}: expected {declared} entries then zero padding")]
    PaddingViolation { line: usize, declared: usize },
    #[error("line {line}: index {index} out of range (limit {limit})")]
    EntryOutOfRange {
        line: usize,
        index: usize,
        limit: usize,
    },
    #[error("line {line}: index {index} listed twice")]
    DuplicateEntry { line: usize, index: usize },
    #[error("line {line}: max degree {declared} does not match largest list length {actual}")]
    MaxDegreeMismatch {
        line: usize,
        declared: usize,
        actual: usize,
    },
    #[error("variable and check lists disagree on edge ({variable}, {check}) (1-indexed)")]
    InconsistentAdjacency { variable: usize, check: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Lines<'a> {
    rest: std::str::Lines<'a>,
    line_no: usize,
}

impl<'a> Lines<'a> {
    fn next_fields(&mut self, expected: usize, total: usize) -> Result<Vec<usize>, AlistError> {
        let line = self.rest.next().ok_or(AlistError::UnexpectedEnd {
            line: self.line_no,
            expected: total,
        })?;
        self.line_no += 1;
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != expected {
            return Err(AlistError::FieldCount {
                line: self.line_no,
                expected,
                found: fields.len(),
            });
        }
        fields
            .into_iter()
            .map(|f| {
                f.parse().map_err(|_| AlistError::BadInteger {
                    line: self.line_no,
                    text: f.to_string(),
                })
            })
            .collect()
    }
}

pub fn parse_alist(text: &str) -> Result<TannerGraph, AlistError> {
    let mut lines = Lines {
        rest: text.lines(),
        line_no: 0,
    };
    let header = lines.next_fields(2, 4)?;
    let (n, m) = (header[0], header[1]);
    if n == 0 || m == 0 {
        return Err(AlistError::EmptyDimensions);
    }
    // Saturate: n and m are still unvalidated header fields here, and
    // total only feeds error messages.
    let total = 4usize.saturating_add(n).saturating_add(m);
    let maxima = lines.next_fields(2, total)?;
    let (max_col, max_row) = (maxima[0], maxima[1]);
    let col_degrees = lines.next_fields(n, total)?;
    let row_degrees = lines.next_fields(m, total)?;

    let col_lists = read_adjacency(&mut lines, &col_degrees, max_col, m, total)?;
    let row_lists = read_adjacency(&mut lines, &row_degrees, max_row, n, total)?;

    for (extra, line) in lines.rest.enumerate() {
        if !line.trim().is_empty() {
            return Err(AlistError::TrailingContent {
                line: lines.line_no + extra + 1,
            });
        }
    }

    check_max_degree(&col_degrees, max_col, 3)?;
    check_max_degree(&row_degrees, max_row, 4)?;

    // The two adjacency sections must describe the same edge set.
    for (variable, checks) in col_lists.iter().enumerate() {
        for &check in checks {
            if !row_lists[check].contains(&variable) {
                return Err(AlistError::InconsistentAdjacency {
                    variable: variable + 1,
                    check: check + 1,
                });
            }
        }
    }
    let col_edges: usize = col_lists.iter().map(Vec::len).sum();
    let row_edges: usize = row_lists.iter().map(Vec::len).sum();
    if col_edges != row_edges {
        // Same count plus one-sided containment above means equality;
        // a mismatch can only be an extra row-side edge.
        for (check, variables) in row_lists.iter().enumerate() {
            for &variable in variables {
                if !col_lists[variable].contains(&check) {
                    return Err(AlistError::InconsistentAdjacency {
                        variable: variable + 1,
                        check: check + 1,
                    });
                }
            }
        }
    }

    let mut edges = Vec::with_capacity(col_edges);
    for (variable, checks) in col_lists.iter().enumerate() {
        for &check in checks {
            edges.push((variable, check));
        }
    }
    Ok(build_graph_nonuniform(n, m, &edges)?)
}

fn read_adjacency(
    lines: &mut Lines,
    degrees: &[usize],
    max_degree: usize,
    entry_limit: usize,
    total: usize,
) -> Result<Vec<Vec<usize>>, AlistError> {
    let mut lists = Vec::with_capacity(degrees.len());
    for &declared in degrees {
        if declared > max_degree {
            return Err(AlistError::DegreeAboveMax {
                line: lines.line_no + 1,
                declared,
                max: max_degree,
            });
        }
        let fields = lines.next_fields(max_degree, total)?;
        let line = lines.line_no;
        // Real entries first, zeros after; entries are 1-indexed.
        let mut list = Vec::with_capacity(declared);
        for (pos, &field) in fields.iter().enumerate() {
            if pos < declared {
                if field == 0 || field > entry_limit {
                    if field == 0 {
                        return Err(AlistError::PaddingViolation { line, declared });
                    }
                    return Err(AlistError::EntryOutOfRange {
                        line,
                        index: field,
                        limit: entry_limit,
                    });
                }
                if list.contains(&(field - 1)) {
                    return Err(AlistError::DuplicateEntry { line, index: field });
                }
                list.push(field - 1);
            } else if field != 0 {
                return Err(AlistError::PaddingViolation { line, declared });
            }
        }
        lists.push(list);
    }
    Ok(lists)
}

fn check_max_degree(degrees: &[usize], declared: usize, line: usize) -> Result<(), AlistError> {
    let actual = degrees.iter().copied().max().unwrap_or(0);
    if actual != declared {
        return Err(AlistError::MaxDegreeMismatch {
            line,
            declared,
            actual,
        });
    }
    Ok(())
}

pub fn write_alist(g: &TannerGraph) -> String {
    let n = g.n();
    let m = g.m();
    let max_col = (0..n).map(|v| g.var_degree(v)).max().unwrap_or(0);
    let max_row = (0..m).map(|c| g.check_degree(c)).max().unwrap_or(0);
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", n, m));
    out.push_str(&format!("{} {}\n", max_col, max_row));
    push_numbers(&mut out, (0..n).map(|v| g.var_degree(v)));
    push_numbers(&mut out, (0..m).map(|c| g.check_degree(c)));
    for variable in 0..n {
        push_padded(&mut out, g.var_checks(variable), max_col);
    }
    for check in 0..m {
        push_padded(&mut out, g.check_vars(check), max_row);
    }
    out
}

fn push_numbers(out: &mut String, numbers: impl Iterator<Item = usize>) {
    let mut first = true;
    for number in numbers {
        if !first {
            out.push(' ');
        }
        out.push_str(&number.to_string());
        first = false;
    }
    out.push('\n');
}

fn push_padded(out: &mut String, entries: &[usize], width: usize) {
    push_numbers(
        out,
        entries
            .iter()
            .map(|&e| e + 1)
            .chain(std::iter::repeat(0).take(width - entries.len())),
    );
}

#[cfg(test)]
mod tests {
    use super::super::graph::{build_graph, generate_regular};
    use super::*;

    fn cycle3() -> TannerGraph {
        build_graph(3, 3, &[(0, 0), (0, 1), (1, 1), (1, 2), (2, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn writes_expected_bytes() {
        let text = write_alist(&cycle3());
        assert_eq!(
            text,
            "3 3\n2 2\n2 2 2\n2 2 2\n1 2\n2 3\n1 3\n1 3\n1 2\n2 3\n"
        );
    }

    #[test]
    fn round_trips_known_and_generated_graphs() {
        let g = cycle3();
        assert_eq!(parse_alist(&write_alist(&g)).unwrap(), g);
        for seed in 0..8 {
            let g = generate_regular(11, 7, 3, seed).unwrap();
            assert_eq!(parse_alist(&write_alist(&g)).unwrap(), g, "seed {seed}");
        }
    }

    #[test]
    fn parses_hand_written_single_check_code() {
        let text = "2 1\n1 2\n1 1\n2\n1\n1\n1 2\n";
        let g = parse_alist(text).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.m(), 1);
        assert_eq!(g.check_vars(0), &[0, 1]);
        assert_eq!(g.left_degree(), Some(1));
    }

    #[test]
    fn rejects_wrong_list_count() {
        // Header claims n=3 but four column lists appear: the fourth is
        // read as a check list and the remainder comes up short.
        let good = write_alist(&cycle3());
        let mut lines: Vec<&str> = good.lines().collect();
        lines.insert(7, "1 2");
        let bad = lines.join("\n");
        assert!(parse_alist(&bad).is_err());
    }

    #[test]
    fn rejects_malformed_headers_and_fields() {
        assert!(matches!(
            parse_alist("3\n"),
            Err(AlistError::FieldCount { line: 1, .. })
        ));
        assert!(matches!(
            parse_alist("a b\n"),
            Err(AlistError::BadInteger { .. })
        ));
        assert!(matches!(
            parse_alist("0 2\n1 1\n"),
            Err(AlistError::EmptyDimensions)
        ));
        assert!(matches!(parse_alist(""), Err(AlistError::UnexpectedEnd { .. })));
        // Dimensions near usize::MAX must not overflow the line budget.
        let huge = format!("{max} {max}\n", max = usize::MAX);
        assert!(matches!(
            parse_alist(&huge),
            Err(AlistError::UnexpectedEnd { .. })
        ));
    }

    #[test]
    fn rejects_inconsistent_sections() {
        // Variable 1 claims check 2, but check 2's list omits it.
        let text = "2 2\n1 1\n1 1\n1 1\n1\n2\n1\n1\n";
        assert!(matches!(
            parse_alist(text),
            Err(AlistError::InconsistentAdjacency { .. })
        ));
    }

    #[test]
    fn rejects_bad_padding_and_ranges() {
        let mut text = write_alist(&cycle3());
        text = text.replacen("1 2\n2 3\n1 3\n", "1 0\n2 3\n1 3\n", 1);
        assert!(matches!(
            parse_alist(&text),
            Err(AlistError::PaddingViolation { .. })
        ));
        let text = write_alist(&cycle3()).replacen("1 2\n2 3\n1 3\n", "1 9\n2 3\n1 3\n", 1);
        assert!(matches!(
            parse_alist(&text),
            Err(AlistError::EntryOutOfRange { .. })
        ));
        let text = "2 1\n2 2\n1 1\n2\n1 0\n1 0\n1 2\n";
        assert!(matches!(
            parse_alist(text),
            Err(AlistError::MaxDegreeMismatch { .. })
        ));
    }

    #[test]
    fn rejects_trailing_content_but_allows_blank_tail() {
        let good = write_alist(&cycle3());
        assert!(parse_alist(&format!("{good}\n\n")).is_ok());
        assert!(matches!(
            parse_alist(&format!("{good}7\n")),
            Err(AlistError::TrailingContent { .. })
        ));
    }

    #[test]
    fn normalizes_unsorted_entries() {
        let text = "2 1\n1 2\n1 1\n2\n1\n1\n2 1\n";
        let g = parse_alist(text).unwrap();
        assert_eq!(g.check_vars(0), &[0, 1]);
    }
}
