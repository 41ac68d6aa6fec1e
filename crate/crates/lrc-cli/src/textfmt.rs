//! Line-oriented text formats for fields, matrices, codes, and grids.
//!
//! Every format round-trips bit-exactly: rendering a parsed value reproduces
//! the canonical input bytes, so files can be diffed, pinned in tests, and
//! fed back into other subcommands.
//!
//! - Field header: `q=<p>^<m> mod=<e>` where `e` encodes the modulus
//!   polynomial in base-p digits, constant term least significant.
//! - Matrix: field header, then `<rows> <cols>`, then one line per row of
//!   space-separated element encodings.
//! - Code file: a matrix block (the parity-check matrix) plus a trailing
//!   `n=<n> k=<k>` line, cross-checked against the matrix.
//! - Evaluation grid: field header, then `l` lines of `r + 1` encodings.

use anyhow::{anyhow, bail, Context, Result};
use lrc_core::code::LinearCode;
use lrc_core::gf::Field;
use lrc_core::matrix::GfMatrix;

/// `q=<p>^<m> mod=<modulus encoding>` for a field.
pub fn field_header(field: &Field) -> String {
    format!(
        "q={}^{} mod={}",
        field.characteristic(),
        field.degree(),
        field.modulus_encoding()
    )
}

/// Parse a field header line produced by [`field_header`].
pub fn parse_field_header(line: &str) -> Result<Field> {
    let mut parts = line.split_whitespace();
    let q_part = parts.next().ok_or_else(|| anyhow!("empty field header"))?;
    let mod_part = parts
        .next()
        .ok_or_else(|| anyhow!("field header {line:?} is missing mod=<encoding>"))?;
    if let Some(extra) = parts.next() {
        bail!("field header has trailing token {extra:?}");
    }
    let order = q_part
        .strip_prefix("q=")
        .ok_or_else(|| anyhow!("field header must start with q=<p>^<m>, got {q_part:?}"))?;
    let (p_str, m_str) = order
        .split_once('^')
        .ok_or_else(|| anyhow!("field order must be <p>^<m>, got {order:?}"))?;
    let p: u64 = p_str.parse().with_context(|| format!("bad characteristic {p_str:?}"))?;
    let m: usize = m_str.parse().with_context(|| format!("bad extension degree {m_str:?}"))?;
    let enc_str = mod_part
        .strip_prefix("mod=")
        .ok_or_else(|| anyhow!("expected mod=<encoding>, got {mod_part:?}"))?;
    let enc: u64 = enc_str.parse().with_context(|| format!("bad modulus encoding {enc_str:?}"))?;
    if p < 2 {
        bail!("characteristic must be at least 2, got {p}");
    }
    let mut digits = Vec::with_capacity(m + 1);
    let mut rest = enc;
    for _ in 0..=m {
        digits.push(rest % p);
        rest /= p;
    }
    if rest != 0 {
        bail!("modulus encoding {enc} has degree above {m} over characteristic {p}");
    }
    Field::with_modulus(p, m, &digits).map_err(|e| anyhow!("bad field header {line:?}: {e}"))
}

fn join<T: core::fmt::Display>(items: &[T]) -> String {
    items.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" ")
}

/// Render a matrix block: header, dimensions, rows.
pub fn render_matrix(m: &GfMatrix) -> String {
    let mut out = String::new();
    out.push_str(&field_header(m.field()));
    out.push('\n');
    out.push_str(&format!("{} {}\n", m.rows(), m.cols()));
    for r in 0..m.rows() {
        out.push_str(&join(m.row(r)));
        out.push('\n');
    }
    out
}

/// Render a code file: parity-check matrix block plus `n=<n> k=<k>`.
pub fn render_code(code: &LinearCode) -> String {
    format!("{}n={} k={}\n", render_matrix(code.pcm()), code.n(), code.k())
}

/// Render an evaluation-grid file: field header plus one line per group.
pub fn render_alphas(field: &Field, grid: &[Vec<u64>]) -> String {
    let mut out = String::new();
    out.push_str(&field_header(field));
    out.push('\n');
    for row in grid {
        out.push_str(&join(row));
        out.push('\n');
    }
    out
}

/// Sequential reader over the non-empty trimmed lines of a text blob.
struct Cursor<'a> {
    lines: Vec<&'a str>,
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: text.lines().map(str::trim).filter(|l| !l.is_empty()).collect(),
            pos: 0,
        }
    }

    fn next(&mut self, what: &str) -> Result<&'a str> {
        let line = self
            .lines
            .get(self.pos)
            .copied()
            .ok_or_else(|| anyhow!("unexpected end of input: expected {what}"))?;
        self.pos += 1;
        Ok(line)
    }

    fn remaining(&self) -> usize {
        self.lines.len() - self.pos
    }

    fn finish(&self, what: &str) -> Result<()> {
        if self.pos < self.lines.len() {
            bail!("trailing content after {what}: {:?}", self.lines[self.pos]);
        }
        Ok(())
    }
}

fn parse_row(field: &Field, line: &str, want: usize, what: &str) -> Result<Vec<u64>> {
    let mut row = Vec::with_capacity(want);
    for tok in line.split_whitespace() {
        let v: u64 = tok.parse().with_context(|| format!("{what}: bad element {tok:?}"))?;
        if v >= field.size() {
            bail!("{what}: element {v} is outside GF({})", field.size());
        }
        row.push(v);
    }
    if row.len() != want {
        bail!("{what}: expected {want} entries, found {}", row.len());
    }
    Ok(row)
}

fn parse_matrix_at(cur: &mut Cursor) -> Result<GfMatrix> {
    let field = parse_field_header(cur.next("a field header")?)?;
    let dims = cur.next("matrix dimensions")?;
    let mut it = dims.split_whitespace();
    let rows: usize = it
        .next()
        .ok_or_else(|| anyhow!("missing matrix dimensions"))?
        .parse()
        .with_context(|| format!("bad row count in {dims:?}"))?;
    let cols: usize = it
        .next()
        .ok_or_else(|| anyhow!("dimension line {dims:?} is missing the column count"))?
        .parse()
        .with_context(|| format!("bad column count in {dims:?}"))?;
    if let Some(extra) = it.next() {
        bail!("dimension line has trailing token {extra:?}");
    }
    if cols == 0 {
        bail!("matrix must have at least one column");
    }
    if rows == 0 {
        return Ok(GfMatrix::zeros(&field, 0, cols));
    }
    let mut data = Vec::with_capacity(rows);
    for i in 0..rows {
        let line = cur.next("a matrix row")?;
        data.push(parse_row(&field, line, cols, &format!("matrix row {i}"))?);
    }
    GfMatrix::from_rows(&field, &data).map_err(|e| anyhow!("bad matrix: {e}"))
}

/// Parse a complete matrix block; rejects trailing content.
pub fn parse_matrix(text: &str) -> Result<GfMatrix> {
    let mut cur = Cursor::new(text);
    let m = parse_matrix_at(&mut cur)?;
    cur.finish("the matrix")?;
    Ok(m)
}

/// Parse a code file; the trailer must match the matrix's derived (n, k).
pub fn parse_code(text: &str) -> Result<LinearCode> {
    let mut cur = Cursor::new(text);
    let pcm = parse_matrix_at(&mut cur)?;
    let trailer = cur.next("the n=<n> k=<k> trailer")?;
    cur.finish("the code trailer")?;
    let mut it = trailer.split_whitespace();
    let n_tok = it.next().unwrap_or_default();
    let k_tok = it.next().ok_or_else(|| anyhow!("trailer {trailer:?} must be n=<n> k=<k>"))?;
    if let Some(extra) = it.next() {
        bail!("trailer has trailing token {extra:?}");
    }
    let n: usize = n_tok
        .strip_prefix("n=")
        .ok_or_else(|| anyhow!("trailer must start with n=<n>, got {n_tok:?}"))?
        .parse()
        .with_context(|| format!("bad block length in {n_tok:?}"))?;
    let k: usize = k_tok
        .strip_prefix("k=")
        .ok_or_else(|| anyhow!("trailer must end with k=<k>, got {k_tok:?}"))?
        .parse()
        .with_context(|| format!("bad dimension in {k_tok:?}"))?;
    let code = LinearCode::from_pcm(pcm).map_err(|e| anyhow!("bad parity-check matrix: {e}"))?;
    if code.n() != n || code.k() != k {
        bail!(
            "trailer says n={n} k={k}, but the matrix yields n={} k={}",
            code.n(),
            code.k()
        );
    }
    Ok(code)
}

/// Parse an evaluation-grid file into its field and rows.
pub fn parse_alphas(text: &str) -> Result<(Field, Vec<Vec<u64>>)> {
    let mut cur = Cursor::new(text);
    let field = parse_field_header(cur.next("a field header")?)?;
    if cur.remaining() == 0 {
        bail!("evaluation grid has no rows");
    }
    let width = cur.lines[cur.pos].split_whitespace().count();
    if width == 0 {
        bail!("evaluation grid rows must be non-empty");
    }
    let mut grid = Vec::with_capacity(cur.remaining());
    for i in 0..cur.remaining() {
        let line = cur.lines[cur.pos + i];
        grid.push(parse_row(&field, line, width, &format!("grid row {i}"))?);
    }
    Ok((field, grid))
}
