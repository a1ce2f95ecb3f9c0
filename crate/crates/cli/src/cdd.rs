//! Reader and writer for the cdd `.ine` / `.ext` polyhedron formats.
//!
//! An H-representation row `b a_1 .. a_n` stands for `b + <a, x> >= 0`; a
//! V-representation row `1 v_1 .. v_n` is the point `v`. Rays (leading `0` in
//! a V row) are not polytope input and are rejected.

use std::fmt;

use num::{One, Signed, Zero};
use polysum::scalar::format_rational;
use polysum::{parse_rational, HalfSpace, Polytope, Rational, Vector};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Representation {
    H,
    V,
}

impl Representation {
    fn keyword(self) -> &'static str {
        match self {
            Representation::H => "H-representation",
            Representation::V => "V-representation",
        }
    }
}

impl fmt::Display for Representation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Representation::H => "H",
            Representation::V => "V",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NumberType {
    Integer,
    Rational,
    Real,
}

impl NumberType {
    fn name(self) -> &'static str {
        match self {
            NumberType::Integer => "integer",
            NumberType::Rational => "rational",
            NumberType::Real => "real",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CddError {
    #[error("line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("line {line}: rays and lines are not supported in polytope input")]
    RayNotSupported { line: usize },
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> CddError {
    CddError::Parse { line, column, message: message.into() }
}

/// Parsed contents of a cdd file. `rows` keep the leading homogenizing
/// column, so each row has `dim + 1` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyhedronFile {
    pub representation: Representation,
    pub dim: usize,
    pub rows: Vec<Vec<Rational>>,
    /// Zero-based indices of rows declared as equations.
    pub linearity: Vec<usize>,
    pub number_type: NumberType,
}

/// Whitespace-separated tokens with their one-based column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (col, (i, ch)) in line.char_indices().enumerate() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some((col + 1, i)),
            (true, Some((c, s))) => {
                out.push((c, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some((c, s)) = start {
        out.push((c, &line[s..]));
    }
    out
}

fn parse_count(line: usize, (column, text): (usize, &str), what: &str) -> Result<usize, CddError> {
    text.parse::<usize>()
        .map_err(|_| parse_error(line, column, format!("expected {what}, found `{text}`")))
}

pub fn parse_file(text: &str) -> Result<PolyhedronFile, CddError> {
    let lines: Vec<&str> = text.lines().collect();
    let eof_line = lines.len().max(1);
    let mut cursor = 0;

    // Free-form preamble up to `begin`; only the representation keyword and
    // `linearity` are interpreted. cdd assumes H when no keyword is given.
    let mut representation = None;
    let mut linearity_decl = None;
    loop {
        let Some(line) = lines.get(cursor) else {
            return Err(parse_error(eof_line, 1, "missing `begin`"));
        };
        cursor += 1;
        let t = line.trim();
        if t == "begin" {
            break;
        }
        if t == "H-representation" {
            representation = Some(Representation::H);
        } else if t == "V-representation" {
            representation = Some(Representation::V);
        } else if t.starts_with("linearity") {
            linearity_decl = Some((cursor, *line));
        }
    }
    let representation = representation.unwrap_or(Representation::H);

    while lines.get(cursor).is_some_and(|l| l.trim().is_empty()) {
        cursor += 1;
    }
    let header_no = cursor + 1;
    let header = lines.get(cursor).ok_or_else(|| parse_error(eof_line, 1, "missing size line"))?;
    cursor += 1;
    let toks = tokens(header);
    if toks.len() != 3 {
        return Err(parse_error(header_no, 1, "expected `rows columns number-type`"));
    }
    let m = parse_count(header_no, toks[0], "row count")?;
    let d = parse_count(header_no, toks[1], "column count")?;
    if d < 2 {
        return Err(parse_error(header_no, toks[1].0, "need at least two columns"));
    }
    let number_type = match toks[2].1 {
        "integer" => NumberType::Integer,
        "rational" => NumberType::Rational,
        "real" => NumberType::Real,
        other => {
            return Err(parse_error(header_no, toks[2].0, format!("unknown number type `{other}`")));
        }
    };

    let mut rows = Vec::with_capacity(m);
    let mut row_lines = Vec::with_capacity(m);
    while rows.len() < m {
        let line_no = cursor + 1;
        let Some(line) = lines.get(cursor) else {
            return Err(parse_error(eof_line, 1, format!("expected {m} rows, found {}", rows.len())));
        };
        cursor += 1;
        let toks = tokens(line);
        if toks.is_empty() {
            continue;
        }
        if toks[0].1 == "end" {
            return Err(parse_error(line_no, toks[0].0, format!("expected {m} rows, found {}", rows.len())));
        }
        if toks.len() != d {
            return Err(parse_error(line_no, 1, format!("expected {d} entries, found {}", toks.len())));
        }
        let mut row = Vec::with_capacity(d);
        for (column, tok) in toks {
            let value = parse_rational(tok)
                .map_err(|_| parse_error(line_no, column, format!("invalid number `{tok}`")))?;
            if number_type == NumberType::Integer && !value.is_integer() {
                return Err(parse_error(line_no, column, format!("`{tok}` is not an integer")));
            }
            row.push(value);
        }
        rows.push(row);
        row_lines.push(line_no);
    }

    loop {
        let line_no = cursor + 1;
        let Some(line) = lines.get(cursor) else {
            return Err(parse_error(eof_line, 1, "missing `end`"));
        };
        cursor += 1;
        match line.trim() {
            "" => continue,
            "end" => break,
            _ => return Err(parse_error(line_no, 1, format!("expected `end` after {m} rows"))),
        }
    }

    let linearity = match linearity_decl {
        None => Vec::new(),
        Some((line_no, line)) => parse_linearity(line_no, line, m)?,
    };

    if representation == Representation::V {
        if let Some(&first) = linearity.first() {
            return Err(CddError::RayNotSupported { line: row_lines[first] });
        }
        for (row, &line_no) in rows.iter().zip(&row_lines) {
            if row[0].is_zero() {
                return Err(CddError::RayNotSupported { line: line_no });
            }
            if !row[0].is_one() {
                return Err(parse_error(line_no, 1, "V rows must start with 0 or 1"));
            }
        }
    }

    Ok(PolyhedronFile { representation, dim: d - 1, rows, linearity, number_type })
}

fn parse_linearity(line_no: usize, line: &str, m: usize) -> Result<Vec<usize>, CddError> {
    let toks = tokens(line);
    let count = match toks.get(1) {
        Some(&t) => parse_count(line_no, t, "linearity count")?,
        None => return Err(parse_error(line_no, 1, "missing linearity count")),
    };
    if toks.len() != count + 2 {
        return Err(parse_error(line_no, 1, format!("expected {count} linearity indices")));
    }
    let mut out = Vec::with_capacity(count);
    for &(column, text) in &toks[2..] {
        let k = parse_count(line_no, (column, text), "row index")?;
        if k == 0 || k > m {
            return Err(parse_error(line_no, column, format!("row index {k} out of range 1..={m}")));
        }
        out.push(k - 1);
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Items paired with the index of the file row they came from.
pub type RowTagged<T> = Vec<(usize, T)>;

impl PolyhedronFile {
    /// Half-spaces of an H file, each tagged with its row index. Equations
    /// contribute two opposite half-spaces. Rows with a zero normal are
    /// returned separately as `(row, satisfiable)`.
    pub fn halfspaces(&self) -> (RowTagged<HalfSpace>, RowTagged<bool>) {
        let mut out = Vec::new();
        let mut trivial = Vec::new();
        for (k, row) in self.rows.iter().enumerate() {
            let offset = row[0].clone();
            let normal = -&Vector::new(row[1..].to_vec());
            let equation = self.linearity.binary_search(&k).is_ok();
            match HalfSpace::new(normal.clone(), offset.clone()) {
                Ok(h) => {
                    out.push((k, h));
                    if equation {
                        out.push((k, HalfSpace::new(-&normal, -offset).expect("nonzero normal")));
                    }
                }
                Err(_) => {
                    let ok = if equation { offset.is_zero() } else { !offset.is_negative() };
                    trivial.push((k, ok));
                }
            }
        }
        (out, trivial)
    }

    /// Points of a V file, in row order.
    pub fn points(&self) -> Vec<Vector> {
        self.rows.iter().map(|r| Vector::new(r[1..].to_vec())).collect()
    }

    pub fn to_polytope(&self) -> polysum::Result<Polytope> {
        match self.representation {
            Representation::V => Polytope::from_vertices(self.dim, &self.points()),
            Representation::H => {
                let (halfspaces, trivial) = self.halfspaces();
                if trivial.iter().any(|&(_, ok)| !ok) {
                    return Err(polysum::Error::Empty);
                }
                let hs: Vec<HalfSpace> = halfspaces.into_iter().map(|(_, h)| h).collect();
                Polytope::from_halfspaces(self.dim, &hs)
            }
        }
    }

    /// Canonical file for `p`: rows sorted, integer type whenever possible.
    pub fn from_polytope(p: &Polytope, representation: Representation) -> Self {
        let mut rows: Vec<Vec<Rational>> = match representation {
            Representation::H => p
                .facets()
                .iter()
                .map(|h| std::iter::once(h.offset().clone()).chain(h.normal().coords().iter().map(|c| -c)).collect())
                .collect(),
            Representation::V => p
                .vertices()
                .iter()
                .map(|v| std::iter::once(Rational::one()).chain(v.coords().iter().cloned()).collect())
                .collect(),
        };
        rows.sort();
        let number_type = if rows.iter().flatten().all(|x| x.is_integer()) {
            NumberType::Integer
        } else {
            NumberType::Rational
        };
        PolyhedronFile { representation, dim: p.dim(), rows, linearity: Vec::new(), number_type }
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(self.representation.keyword());
        out.push('\n');
        if !self.linearity.is_empty() {
            let idx: Vec<String> = self.linearity.iter().map(|k| (k + 1).to_string()).collect();
            out.push_str(&format!("linearity {} {}\n", idx.len(), idx.join(" ")));
        }
        out.push_str("begin\n");
        out.push_str(&format!("{} {} {}\n", self.rows.len(), self.dim + 1, self.number_type.name()));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(format_rational).collect();
            out.push_str(&cells.join(" "));
            out.push('\n');
        }
        out.push_str("end\n");
        out
    }
}

pub fn write_file(p: &Polytope, representation: Representation) -> String {
    PolyhedronFile::from_polytope(p, representation).to_text()
}
