//! Plain-text instance files.
//!
//! ```text
//! MCTSP <directed|undirected> <n> <k>
//! <k blocks of n lines, each with n nonnegative integers>
//! ```
//!
//! Row `i`, column `j` of block `c` is the weight of edge `i -> j` under
//! criterion `c`. Diagonal entries must be zero and undirected blocks must be
//! symmetric. Blank lines and lines starting with `#` are ignored; the writer
//! separates blocks with one blank line.

use std::fmt::Write as _;

use thiserror::Error;

use crate::cover::CycleCover;
use crate::instance::{Direction, Instance};

/// A diagnostic pointing at a 1-based line and column of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(1-based column, token)` pairs.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_count(line: usize, (col, tok): (usize, &str), what: &str) -> Result<usize, ParseError> {
    tok.parse::<usize>()
        .map_err(|_| err(line, col, format!("expected {what}, found `{tok}`")))
}

pub fn parse_instance(text: &str) -> Result<Instance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| {
            let t = l.trim();
            !t.is_empty() && !t.starts_with('#')
        });

    let (hl, header) = lines.next().ok_or_else(|| err(1, 1, "empty file; expected `MCTSP` header"))?;
    let ht = tokens(header);
    if ht.first().map(|t| t.1) != Some("MCTSP") {
        let col = ht.first().map_or(1, |t| t.0);
        return Err(err(hl, col, "expected header `MCTSP <directed|undirected> <n> <k>`"));
    }
    if ht.len() != 4 {
        return Err(err(hl, 1, format!("header needs 4 fields, found {}", ht.len())));
    }
    let direction = match ht[1].1 {
        "directed" => Direction::Directed,
        "undirected" => Direction::Undirected,
        other => {
            return Err(err(
                hl,
                ht[1].0,
                format!("unknown direction `{other}` (expected `directed` or `undirected`)"),
            ))
        }
    };
    let n = parse_count(hl, ht[2], "vertex count")?;
    let k = parse_count(hl, ht[3], "criterion count")?;
    if n < direction.min_vertices() {
        return Err(err(
            hl,
            ht[2].0,
            format!("{direction} instances need n >= {}", direction.min_vertices()),
        ));
    }
    if k == 0 {
        return Err(err(hl, ht[3].0, "need at least one criterion"));
    }

    let mut matrices = vec![vec![vec![0u64; n]; n]; k];
    // (line, column) of each entry, for symmetry diagnostics
    let mut pos = vec![vec![(0usize, 0usize); n]; n];
    let mut last_line = hl;
    for (c, m) in matrices.iter_mut().enumerate() {
        for (i, row) in m.iter_mut().enumerate() {
            let (ln, line) = lines.next().ok_or_else(|| {
                err(
                    last_line + 1,
                    1,
                    format!("unexpected end of file: block {} needs {n} rows, found {i}", c + 1),
                )
            })?;
            last_line = ln;
            let toks = tokens(line);
            if toks.len() != n {
                return Err(err(ln, 1, format!("expected {n} entries, found {}", toks.len())));
            }
            for (j, &(col, tok)) in toks.iter().enumerate() {
                if tok.starts_with('-') {
                    return Err(err(ln, col, format!("negative entry `{tok}`")));
                }
                let w = tok
                    .parse::<u64>()
                    .map_err(|_| err(ln, col, format!("expected a nonnegative integer, found `{tok}`")))?;
                if i == j && w != 0 {
                    return Err(err(ln, col, format!("diagonal entry must be 0, found {w}")));
                }
                row[j] = w;
                pos[i][j] = (ln, col);
            }
        }
        if direction == Direction::Undirected {
            for i in 0..n {
                for j in i + 1..n {
                    if m[i][j] != m[j][i] {
                        let (ln, col) = pos[j][i];
                        return Err(err(
                            ln,
                            col,
                            format!(
                                "block {} is not symmetric: entry ({j},{i}) = {} but ({i},{j}) = {}",
                                c + 1,
                                m[j][i],
                                m[i][j]
                            ),
                        ));
                    }
                }
            }
        }
    }
    if let Some((ln, line)) = lines.next() {
        return Err(err(ln, tokens(line).first().map_or(1, |t| t.0), "trailing data after the last block"));
    }
    Instance::new(direction, matrices).map_err(|e| err(hl, 1, e.to_string()))
}

pub fn write_instance(inst: &Instance) -> String {
    let n = inst.n();
    let mut s = String::new();
    let _ = writeln!(s, "MCTSP {} {} {}", inst.direction(), n, inst.k());
    for c in 0..inst.k() {
        if c > 0 {
            s.push('\n');
        }
        for i in 0..n {
            let row: Vec<String> = (0..n).map(|j| inst.weight(c, i, j).to_string()).collect();
            s.push_str(&row.join(" "));
            s.push('\n');
        }
    }
    s
}

/// Parses a cover file: a header `COVER <n>` followed by one line per cycle
/// listing its vertices in order. The direction comes from the instance the
/// cover belongs to.
pub fn parse_cover(text: &str, direction: Direction) -> crate::error::Result<CycleCover> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
    let (hline, header) = lines.next().ok_or_else(|| err(1, 1, "missing `COVER <n>` header"))?;
    let toks = tokens(header);
    if toks.first().map(|t| t.1) != Some("COVER") {
        let col = toks.first().map_or(1, |t| t.0);
        return Err(err(hline, col, "expected `COVER`").into());
    }
    let n_tok = *toks.get(1).ok_or_else(|| err(hline, header.len() + 1, "missing vertex count"))?;
    let n = parse_count(hline, n_tok, "a vertex count")?;
    if let Some(&(col, tok)) = toks.get(2) {
        return Err(err(hline, col, format!("unexpected `{tok}` after the header")).into());
    }
    let mut cycles = Vec::new();
    for (line, l) in lines {
        let cycle = tokens(l)
            .into_iter()
            .map(|t| parse_count(line, t, "a vertex"))
            .collect::<Result<Vec<_>, _>>()?;
        cycles.push(cycle);
    }
    CycleCover::new(direction, n, cycles)
}

pub fn write_cover(cover: &CycleCover) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "COVER {}", cover.n());
    for c in cover.cycles() {
        let line: Vec<String> = c.iter().map(|v| v.to_string()).collect();
        let _ = writeln!(s, "{}", line.join(" "));
    }
    s
}
