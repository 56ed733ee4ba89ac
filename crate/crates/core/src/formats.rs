//! Plain-text formats. Every file starts with a `<KIND> v1` header and a
//! `key=value` line; blank lines and lines starting with `#` are ignored.
//!
//! Group elements are comma-joined exponent tuples (`2`, `1,0,1`). The
//! trivial group is written `group=1` and its only element `0`.

use std::fmt::Write as _;

use thiserror::Error;

use crate::algebra::{fraction_string, parse_rational, CycNum, Matrix, RootOrder};
use crate::constructions::{AlternatingForm, ConstructionError, GhMatrix, LatinSquare, SkewProduct};
use crate::covers::{ArcMatrix, CoverError, CoverGraph};
use crate::graph::Graph;
use crate::groups::{AbelianGroup, Element, GroupError};
use crate::lines::{Gram, LineSet, LinesError, SeidelKind, SeidelMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("unexpected end of input: {0}")]
    Truncated(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Cover(#[from] CoverError),
    #[error(transparent)]
    Lines(#[from] LinesError),
    #[error(transparent)]
    Construction(#[from] ConstructionError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.trim()))
                .filter(|(_, l)| !l.is_empty() && !l.starts_with('#')),
        );
        Lines { inner: it.peekable() }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), FormatError> {
        self.inner.next().ok_or_else(|| FormatError::Truncated(what.to_string()))
    }

    fn header(&mut self, kind: &str) -> Result<(), FormatError> {
        let (line, text) = self.next("header")?;
        let expected = format!("{kind} v1");
        if text != expected {
            return Err(syntax(line, format!("expected header {expected:?}, found {text:?}")));
        }
        Ok(())
    }

    /// Parses `k1=v1 k2=v2 ...` with exactly the given keys, in order.
    fn fields(&mut self, keys: &[&str]) -> Result<(usize, Vec<&'a str>), FormatError> {
        let (line, text) = self.next("parameter line")?;
        let parts: Vec<&str> = text.split_whitespace().collect();
        if parts.len() != keys.len() {
            return Err(syntax(line, format!("expected fields {}", keys.join(" "))));
        }
        let mut values = Vec::new();
        for (part, key) in parts.iter().zip(keys) {
            match part.split_once('=') {
                Some((k, v)) if k == *key => values.push(v),
                _ => return Err(syntax(line, format!("expected {key}=..., found {part:?}"))),
            }
        }
        Ok((line, values))
    }

    fn row(&mut self, len: usize, what: &str) -> Result<(usize, Vec<&'a str>), FormatError> {
        let (line, text) = self.next(what)?;
        let cells: Vec<&str> = text.split_whitespace().collect();
        if cells.len() != len {
            return Err(syntax(line, format!("expected {len} entries, found {}", cells.len())));
        }
        Ok((line, cells))
    }

    fn finish(&mut self) -> Result<(), FormatError> {
        match self.inner.next() {
            Some((line, text)) => Err(syntax(line, format!("trailing content {text:?}"))),
            None => Ok(()),
        }
    }
}

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

fn number<T: std::str::FromStr>(line: usize, s: &str, what: &str) -> Result<T, FormatError> {
    s.parse().map_err(|_| syntax(line, format!("invalid {what} {s:?}")))
}

fn parse_group(line: usize, s: &str) -> Result<AbelianGroup, FormatError> {
    if s == "1" {
        return Ok(AbelianGroup::trivial());
    }
    let orders = s.split(',').map(|d| number(line, d, "group order")).collect::<Result<Vec<u32>, _>>()?;
    AbelianGroup::new(orders).map_err(|e| syntax(line, e.to_string()))
}

fn group_string(group: &AbelianGroup) -> String {
    if group.is_trivial() {
        return "1".into();
    }
    group.orders().iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_element(line: usize, group: &AbelianGroup, s: &str) -> Result<Element, FormatError> {
    if group.is_trivial() {
        return if s == "0" { Ok(Vec::new()) } else { Err(syntax(line, format!("trivial group element must be 0, found {s:?}"))) };
    }
    let g = s.split(',').map(|x| number(line, x, "exponent")).collect::<Result<Vec<u32>, _>>()?;
    if !group.contains(&g) {
        return Err(syntax(line, format!("{s:?} is not an element of {group}")));
    }
    Ok(g)
}

fn element_string(g: &[u32]) -> String {
    if g.is_empty() {
        return "0".into();
    }
    g.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
}

fn parse_size(line: usize, s: &str) -> Result<usize, FormatError> {
    let n: usize = number(line, s, "size")?;
    if n == 0 {
        return Err(syntax(line, "size must be positive"));
    }
    Ok(n)
}

pub fn parse_cover(text: &str) -> Result<ArcMatrix, FormatError> {
    let mut lines = Lines::new(text);
    lines.header("DRACKN-COVER")?;
    let (line, v) = lines.fields(&["n", "group"])?;
    let n = parse_size(line, v[0])?;
    let group = parse_group(line, v[1])?;
    let mut rows = Vec::with_capacity(n);
    for u in 0..n {
        let (line, cells) = lines.row(n, "cover row")?;
        let row = cells
            .iter()
            .enumerate()
            .map(|(v, cell)| match (*cell, u == v) {
                (".", true) => Ok(None),
                (_, true) => Err(syntax(line, "diagonal entries must be '.'")),
                (".", false) => Err(syntax(line, "'.' off the diagonal")),
                (cell, false) => parse_element(line, &group, cell).map(Some),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    lines.finish()?;
    Ok(ArcMatrix::new(&group, rows)?)
}

pub fn emit_cover(f: &ArcMatrix) -> String {
    let n = f.n();
    let mut out = format!("DRACKN-COVER v1\nn={n} group={}\n", group_string(f.group()));
    for u in 0..n {
        let row: Vec<String> = (0..n)
            .map(|v| if u == v { ".".to_string() } else { element_string(f.entry(u, v)) })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

pub fn parse_seidel(text: &str) -> Result<SeidelMatrix, FormatError> {
    let mut lines = Lines::new(text);
    lines.header("SEIDEL")?;
    let (line, v) = lines.fields(&["n", "r"])?;
    let n = parse_size(line, v[0])?;
    let kind = if v[1] == "generic" {
        SeidelKind::Generic
    } else {
        let r: u32 = number(line, v[1], "root order")?;
        SeidelKind::Roots(RootOrder::new(r).map_err(|_| syntax(line, format!("r={r} is not prime")))?)
    };
    let order = match kind {
        SeidelKind::Roots(order) => order,
        SeidelKind::Generic => RootOrder::new(2).expect("2 is prime"),
    };
    let mut entries = Vec::with_capacity(n * n);
    for u in 0..n {
        let (line, cells) = lines.row(n, "Seidel row")?;
        for (v, cell) in cells.iter().enumerate() {
            let x = match (*cell, u == v, kind) {
                (".", true, _) => CycNum::zero(order),
                (_, true, _) => return Err(syntax(line, "diagonal entries must be '.'")),
                (cell, false, SeidelKind::Roots(_)) => {
                    CycNum::root_power(order, number::<i64>(line, cell, "exponent")?)
                }
                (cell, false, SeidelKind::Generic) => CycNum::from_rational(
                    order,
                    parse_rational(cell).ok_or_else(|| syntax(line, format!("invalid rational {cell:?}")))?,
                ),
            };
            entries.push(x);
        }
    }
    lines.finish()?;
    let matrix = Matrix::from_fn(n, n, |u, v| entries[u * n + v].clone());
    Ok(SeidelMatrix::new(kind, matrix)?)
}

/// Emits a Seidel matrix. Entries are exponents of `ζ_r`, or exact
/// rationals for `r=generic`. Fails when an entry is not a root of unity of
/// the declared order.
pub fn emit_seidel(s: &SeidelMatrix) -> Result<String, FormatError> {
    let n = s.n();
    let r = match s.kind() {
        SeidelKind::Roots(order) => order.to_string(),
        SeidelKind::Generic => "generic".to_string(),
    };
    let mut out = format!("SEIDEL v1\nn={n} r={r}\n");
    for u in 0..n {
        let mut row = Vec::with_capacity(n);
        for v in 0..n {
            let x = s.matrix().get(u, v);
            row.push(if u == v {
                ".".to_string()
            } else {
                match s.kind() {
                    SeidelKind::Roots(_) => x
                        .root_exponent()
                        .ok_or(LinesError::EntryNotRoot { u: u + 1, v: v + 1 })?
                        .to_string(),
                    SeidelKind::Generic => x.as_rational().expect("generic entries are rational").to_string(),
                }
            });
        }
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    Ok(out)
}

pub fn parse_gh(text: &str) -> Result<GhMatrix, FormatError> {
    let mut lines = Lines::new(text);
    lines.header("GH")?;
    let (line, v) = lines.fields(&["n", "group"])?;
    let n = parse_size(line, v[0])?;
    let group = parse_group(line, v[1])?;
    let mut rows = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, cells) = lines.row(n, "GH row")?;
        rows.push(cells.iter().map(|c| parse_element(line, &group, c)).collect::<Result<Vec<_>, _>>()?);
    }
    lines.finish()?;
    Ok(GhMatrix::new(&group, rows)?)
}

pub fn emit_gh(h: &GhMatrix) -> String {
    let n = h.n();
    let mut out = format!("GH v1\nn={n} group={}\n", group_string(h.group()));
    for u in 0..n {
        let row: Vec<String> = (0..n).map(|v| element_string(h.entry(u, v))).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn int_rows(lines: &mut Lines<'_>, count: usize, len: usize, what: &str) -> Result<Vec<Vec<u32>>, FormatError> {
    (0..count)
        .map(|_| {
            let (line, cells) = lines.row(len, what)?;
            cells.iter().map(|c| number(line, c, "entry")).collect()
        })
        .collect()
}

fn push_rows(out: &mut String, rows: &[Vec<u32>]) {
    for row in rows {
        let cells: Vec<String> = row.iter().map(u32::to_string).collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
}

/// `FORM v1`, `p=<p> m=<m> s=<s>`, then the `s` component matrices, each
/// `m` rows of `m` entries mod `p`.
pub fn parse_form(text: &str) -> Result<AlternatingForm, FormatError> {
    let mut lines = Lines::new(text);
    lines.header("FORM")?;
    let (line, v) = lines.fields(&["p", "m", "s"])?;
    let p: u32 = number(line, v[0], "p")?;
    let m = parse_size(line, v[1])?;
    let s = parse_size(line, v[2])?;
    let matrices = (0..s).map(|_| int_rows(&mut lines, m, m, "form row")).collect::<Result<Vec<_>, _>>()?;
    lines.finish()?;
    Ok(AlternatingForm::new(p, m, matrices)?)
}

pub fn emit_form(form: &AlternatingForm) -> String {
    let mut out = format!("FORM v1\np={} m={} s={}\n", form.p(), form.m(), form.s());
    for (k, mat) in form.matrices().iter().enumerate() {
        if k > 0 {
            out.push('\n');
        }
        push_rows(&mut out, mat);
    }
    out
}

/// `SKEW v1`, `t=<t> d=<d>`, then the `|V| x |V|` product table with
/// elements of `GF(2^{td})` as bit masks.
pub fn parse_skew(text: &str) -> Result<SkewProduct, FormatError> {
    let mut lines = Lines::new(text);
    lines.header("SKEW")?;
    let (line, v) = lines.fields(&["t", "d"])?;
    let t: u32 = number(line, v[0], "t")?;
    let d: u32 = number(line, v[1], "d")?;
    if t == 0 || d == 0 || t * d > 10 {
        return Err(syntax(line, "product tables need 1 <= t*d <= 10"));
    }
    let size = 1usize << (t * d);
    let table = int_rows(&mut lines, size, size, "skew row")?.concat();
    lines.finish()?;
    Ok(SkewProduct::from_table(t, d, table)?)
}

pub fn emit_skew(product: &SkewProduct) -> String {
    let size = product.size() as u32;
    let mut out = format!("SKEW v1\nt={} d={}\n", product.t(), product.d());
    let rows: Vec<Vec<u32>> = (0..size).map(|x| (0..size).map(|y| product.apply(x, y)).collect()).collect();
    push_rows(&mut out, &rows);
    out
}

/// `LATIN v1`, `t=<t>`, then `2^t` rows of subfield indices.
pub fn parse_latin(text: &str) -> Result<LatinSquare, FormatError> {
    let mut lines = Lines::new(text);
    lines.header("LATIN")?;
    let (line, v) = lines.fields(&["t"])?;
    let t: u32 = number(line, v[0], "t")?;
    if t == 0 || t > 16 {
        return Err(syntax(line, "need 1 <= t <= 16"));
    }
    let q = 1usize << t;
    let entries = int_rows(&mut lines, q, q, "latin row")?;
    lines.finish()?;
    Ok(LatinSquare::new(t, entries)?)
}

pub fn emit_latin(square: &LatinSquare) -> String {
    let mut out = format!("LATIN v1\nt={}\n", square.t());
    push_rows(&mut out, square.entries());
    out
}

/// `ADJACENCY v1`, `v=<vertices> r=<fibre size>`, then `v` rows of `0`/`1`.
/// Fibres are consecutive blocks of `r` vertices.
pub fn parse_adjacency(text: &str) -> Result<CoverGraph, FormatError> {
    let mut lines = Lines::new(text);
    lines.header("ADJACENCY")?;
    let (line, v) = lines.fields(&["v", "r"])?;
    let size = parse_size(line, v[0])?;
    let r = parse_size(line, v[1])?;
    if size % r != 0 {
        return Err(syntax(line, format!("r={r} does not divide v={size}")));
    }
    let mut rows = Vec::with_capacity(size);
    for _ in 0..size {
        let (line, cells) = lines.row(size, "adjacency row")?;
        let row = cells
            .iter()
            .map(|c| match *c {
                "0" => Ok(0u8),
                "1" => Ok(1u8),
                other => Err(syntax(line, format!("adjacency entries are 0 or 1, found {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows.push(row);
    }
    lines.finish()?;
    let graph = Graph::from_adjacency(&rows)
        .ok_or_else(|| FormatError::Invalid("adjacency matrix must be symmetric with zero diagonal".into()))?;
    let fibres = (0..size / r).map(|u| (u * r..(u + 1) * r).collect()).collect();
    Ok(CoverGraph::new(graph, fibres)?)
}

/// Emits a cover graph with its vertices reordered fibre by fibre.
pub fn emit_adjacency(cover: &CoverGraph) -> String {
    let order: Vec<usize> = cover.fibres().concat();
    let graph = cover.graph();
    let mut out = format!("ADJACENCY v1\nv={} r={}\n", order.len(), cover.r());
    for &x in &order {
        let row: Vec<&str> = order.iter().map(|&y| if graph.adjacent(x, y) { "1" } else { "0" }).collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}

fn coefficient_list(x: &CycNum) -> String {
    x.coeffs().iter().map(fraction_string).collect::<Vec<_>>().join(" ")
}

/// `GRAM v1` with a `n= d= alpha_sq= r=` line (plus `radicand=` for entries
/// in `Q(ζ_r, √e)`), then one line per entry `u v: a0/b0 a1/b1 ...` giving
/// coefficients in the basis `1, ζ_r, ..., ζ_r^{r-2}`. Extended entries
/// `a + b√e` list `a`'s coefficients, then `|`, then `b`'s.
pub fn emit_gram(lines: &LineSet) -> String {
    let mut out = String::from("GRAM v1\n");
    let header = |r: RootOrder| format!("n={} d={} alpha_sq={} r={r}", lines.n(), lines.d(), lines.alpha_sq());
    match lines.gram() {
        Gram::Cyclotomic(g) => {
            let _ = writeln!(out, "{}", header(g.get(0, 0).order()));
            for u in 0..g.rows() {
                for v in 0..g.cols() {
                    let _ = writeln!(out, "{} {}: {}", u + 1, v + 1, coefficient_list(g.get(u, v)));
                }
            }
        }
        Gram::Extended(g) => {
            let first = g.get(0, 0);
            let _ = writeln!(out, "{} radicand={}", header(first.order()), first.radicand());
            for u in 0..g.rows() {
                for v in 0..g.cols() {
                    let x = g.get(u, v);
                    let _ = writeln!(
                        out,
                        "{} {}: {} | {}",
                        u + 1,
                        v + 1,
                        coefficient_list(x.rational_part()),
                        coefficient_list(x.surd_part())
                    );
                }
            }
        }
    }
    out
}
