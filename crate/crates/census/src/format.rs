//! Text formats for tournaments and undirected graphs.
//!
//! Matrix format: line 1 is `n`, then `n` lines of `n` characters from
//! `{0,1}`; character `j` of line `i` is `1` iff `i → j`. Edge-list format:
//! line 1 is `n`, then one line `u v` per edge `u → v`, covering every pair
//! exactly once. The two are told apart by the second line, which contains
//! whitespace only in the edge-list form. Line endings are LF; the final
//! newline is optional.

use std::fmt::Write as _;

use thiserror::Error;
use tourney::bits;
use tourney::undirected::UndirectedGraph;
use tourney::{Tournament, MAX_VERTICES};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("not a tournament: {0}")]
    NotATournament(String),
    #[error("not a simple undirected graph: {0}")]
    NotAGraph(String),
    #[error("{got} vertices exceed the limit of {limit}")]
    TooLarge { limit: usize, got: usize },
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        message: message.into(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TextFormat {
    Matrix,
    EdgeList,
}

/// Splits into lines, allowing one trailing newline and rejecting CR.
fn lines(text: &str) -> Result<Vec<&str>, FormatError> {
    let body = text.strip_suffix('\n').unwrap_or(text);
    let lines: Vec<&str> = body.split('\n').collect();
    if let Some(i) = lines.iter().position(|l| l.contains('\r')) {
        return Err(syntax(i + 1, "carriage return; line endings must be LF"));
    }
    Ok(lines)
}

fn header(lines: &[&str]) -> Result<usize, FormatError> {
    let first = lines.first().copied().unwrap_or("");
    let n: usize = first
        .parse()
        .map_err(|_| syntax(1, format!("expected vertex count, found {first:?}")))?;
    if n == 0 {
        return Err(syntax(1, "a tournament needs at least one vertex"));
    }
    if n > MAX_VERTICES {
        return Err(FormatError::TooLarge {
            limit: MAX_VERTICES,
            got: n,
        });
    }
    Ok(n)
}

pub fn detect_format(text: &str) -> TextFormat {
    match text.split('\n').nth(1) {
        Some(second) if second.trim_end_matches('\r').contains(char::is_whitespace) => {
            TextFormat::EdgeList
        }
        Some(second) if !second.is_empty() => TextFormat::Matrix,
        _ => TextFormat::EdgeList,
    }
}

/// Parses either format.
pub fn parse_tournament(text: &str) -> Result<Tournament, FormatError> {
    match detect_format(text) {
        TextFormat::Matrix => parse_matrix(text),
        TextFormat::EdgeList => parse_edge_list(text),
    }
}

/// Bit rows of an `n × n` 0/1 matrix, `words_for(n)` words per row.
fn parse_rows(lines: &[&str], n: usize) -> Result<Vec<u64>, FormatError> {
    if lines.len() != n + 1 {
        return Err(syntax(
            lines.len().min(n + 1) + 1,
            format!("expected {n} matrix rows, found {}", lines.len() - 1),
        ));
    }
    let words = bits::words_for(n);
    let mut rows = vec![0u64; n * words];
    for (i, line) in lines[1..].iter().enumerate() {
        if line.len() != n {
            return Err(syntax(i + 2, format!("expected {n} characters, found {}", line.len())));
        }
        let row = &mut rows[i * words..(i + 1) * words];
        for (j, c) in line.bytes().enumerate() {
            match c {
                b'0' => {}
                b'1' => bits::set(row, j),
                _ => return Err(syntax(i + 2, format!("column {}: expected 0 or 1", j + 1))),
            }
        }
    }
    Ok(rows)
}

pub fn parse_matrix(text: &str) -> Result<Tournament, FormatError> {
    let lines = lines(text)?;
    let n = header(&lines)?;
    let rows = parse_rows(&lines, n)?;
    let words = bits::words_for(n);
    let a = |i: usize, j: usize| bits::get(&rows[i * words..(i + 1) * words], j);
    for i in 0..n {
        if a(i, i) {
            return Err(FormatError::NotATournament(format!("self-loop at vertex {i}")));
        }
        for j in i + 1..n {
            if a(i, j) == a(j, i) {
                let what = if a(i, j) { "both directions" } else { "no edge" };
                return Err(FormatError::NotATournament(format!("{what} between {i} and {j}")));
            }
        }
    }
    Ok(Tournament::from_fn(n, a))
}

pub fn parse_edge_list(text: &str) -> Result<Tournament, FormatError> {
    let lines = lines(text)?;
    let n = header(&lines)?;
    let words = bits::words_for(n);
    // forward[i] holds j when i → j was listed; either direction marks the pair.
    let mut forward = vec![0u64; n * words];
    let mut listed = 0usize;
    for (i, line) in lines.iter().enumerate().skip(1) {
        let mut parts = line.split_whitespace();
        let mut vertex = || -> Result<usize, FormatError> {
            let tok = parts.next().ok_or_else(|| syntax(i + 1, "expected \"u v\""))?;
            let v: usize = tok
                .parse()
                .map_err(|_| syntax(i + 1, format!("bad vertex {tok:?}")))?;
            if v >= n {
                return Err(syntax(i + 1, format!("vertex {v} out of range")));
            }
            Ok(v)
        };
        let (u, v) = (vertex()?, vertex()?);
        if parts.next().is_some() {
            return Err(syntax(i + 1, "trailing characters"));
        }
        if u == v {
            return Err(FormatError::NotATournament(format!("self-loop at vertex {u}")));
        }
        let row = |x: usize| x * words..(x + 1) * words;
        if bits::get(&forward[row(u)], v) || bits::get(&forward[row(v)], u) {
            return Err(FormatError::NotATournament(format!("pair {{{u}, {v}}} listed twice")));
        }
        bits::set(&mut forward[row(u)], v);
        listed += 1;
    }
    let has = |u: usize, v: usize| bits::get(&forward[u * words..(u + 1) * words], v);
    if listed != n * (n - 1) / 2 {
        let (u, v) = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| !has(u, v) && !has(v, u))
            .expect("a pair is missing");
        return Err(FormatError::NotATournament(format!("no edge between {u} and {v}")));
    }
    Ok(Tournament::from_fn(n, has))
}

pub fn write_matrix(g: &Tournament) -> String {
    let n = g.n();
    let mut s = String::with_capacity((n + 1) * (n + 1) + 8);
    writeln!(s, "{n}").unwrap();
    for i in 0..n {
        s.extend((0..n).map(|j| if g.has_edge(i, j) { '1' } else { '0' }));
        s.push('\n');
    }
    s
}

/// Edges in row-major order of the tail.
pub fn write_edge_list(g: &Tournament) -> String {
    let mut s = String::new();
    writeln!(s, "{}", g.n()).unwrap();
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").unwrap();
    }
    s
}

pub fn write(g: &Tournament, format: TextFormat) -> String {
    match format {
        TextFormat::Matrix => write_matrix(g),
        TextFormat::EdgeList => write_edge_list(g),
    }
}

/// Symmetric 0/1 matrix with a zero diagonal, in the matrix layout.
pub fn parse_undirected(text: &str) -> Result<UndirectedGraph, FormatError> {
    let lines = lines(text)?;
    let n = header(&lines)?;
    let rows = parse_rows(&lines, n)?;
    let words = bits::words_for(n);
    let a = |i: usize, j: usize| bits::get(&rows[i * words..(i + 1) * words], j);
    for i in 0..n {
        if a(i, i) {
            return Err(FormatError::NotAGraph(format!("self-loop at vertex {i}")));
        }
        for j in i + 1..n {
            if a(i, j) != a(j, i) {
                return Err(FormatError::NotAGraph(format!("asymmetric entry at ({i}, {j})")));
            }
        }
    }
    Ok(UndirectedGraph::from_fn(n, a))
}

pub fn write_undirected(g: &UndirectedGraph) -> String {
    let n = g.n();
    let mut s = String::new();
    writeln!(s, "{n}").unwrap();
    for i in 0..n {
        s.extend((0..n).map(|j| if i != j && g.has_edge(i, j) { '1' } else { '0' }));
        s.push('\n');
    }
    s
}
