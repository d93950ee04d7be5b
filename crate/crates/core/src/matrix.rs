//! `2 x m` generator matrices and their plain-text file format.
//!
//! The text format is four lines:
//!
//! ```text
//! modulus 4
//! rows 2 cols 9
//! 1 0 1 1 2 1 2 0 2
//! 0 1 1 3 1 2 0 2 2
//! ```
//!
//! [`GeneratorMatrix::to_text`] always emits exactly this layout with a
//! trailing newline, and parsing that output gives back an equal matrix.

use std::fmt;
use std::ops::Range;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ring::RingSpec;

/// Named column blocks of a canonically built matrix, in layout order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Block {
    I2,
    U,
    DStar,
    D,
    A,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockSpan {
    pub block: Block,
    pub columns: Range<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorMatrix {
    ring: RingSpec,
    rows: [Vec<u64>; 2],
    layout: Option<Vec<BlockSpan>>,
}

impl GeneratorMatrix {
    /// A matrix from its two rows. Entries must already be reduced residues.
    ///
    /// The all-zero matrix is accepted; it generates the zero code.
    pub fn new(ring: RingSpec, row1: Vec<u64>, row2: Vec<u64>) -> Result<Self> {
        if row1.len() != row2.len() {
            return Err(Error::Shape(format!(
                "rows have different lengths {} and {}",
                row1.len(),
                row2.len()
            )));
        }
        for &x in row1.iter().chain(&row2) {
            ring.element(x)?;
        }
        Ok(Self {
            ring,
            rows: [row1, row2],
            layout: None,
        })
    }

    pub fn from_columns(ring: RingSpec, columns: &[(u64, u64)]) -> Result<Self> {
        let (row1, row2) = columns.iter().copied().unzip();
        Self::new(ring, row1, row2)
    }

    pub(crate) fn with_layout(mut self, layout: Vec<BlockSpan>) -> Self {
        debug_assert_eq!(
            layout.last().map_or(0, |s| s.columns.end),
            self.len(),
            "layout must cover every column"
        );
        self.layout = Some(layout);
        self
    }

    pub fn ring(&self) -> &RingSpec {
        &self.ring
    }

    pub fn row1(&self) -> &[u64] {
        &self.rows[0]
    }

    pub fn row2(&self) -> &[u64] {
        &self.rows[1]
    }

    /// Number of columns `m`.
    pub fn len(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn column(&self, i: usize) -> (u64, u64) {
        (self.rows[0][i], self.rows[1][i])
    }

    pub fn columns(&self) -> impl Iterator<Item = (u64, u64)> + '_ {
        self.rows[0]
            .iter()
            .copied()
            .zip(self.rows[1].iter().copied())
    }

    pub fn layout(&self) -> Option<&[BlockSpan]> {
        self.layout.as_deref()
    }

    /// Columns of one named block, if the matrix carries a layout.
    pub fn block(&self, block: Block) -> Option<Vec<(u64, u64)>> {
        let span = self.layout()?.iter().find(|s| s.block == block)?;
        Some(span.columns.clone().map(|i| self.column(i)).collect())
    }

    /// The codeword `c1 * row1 + c2 * row2`.
    pub fn combine(&self, c1: u64, c2: u64) -> Vec<u64> {
        combine_rows(&self.ring, &self.rows[0], &self.rows[1], c1, c2)
    }

    /// Multiplies column `i` by `scalars[i]`. The layout is kept, since
    /// scaling never moves a column.
    pub fn scale_columns(&self, scalars: &[u64]) -> Result<Self> {
        if scalars.len() != self.len() {
            return Err(Error::Shape(format!(
                "{} scalars for {} columns",
                scalars.len(),
                self.len()
            )));
        }
        let r = &self.ring;
        let scale = |row: &[u64]| -> Vec<u64> {
            row.iter()
                .zip(scalars)
                .map(|(&x, &s)| r.mul(x, s))
                .collect()
        };
        Ok(Self {
            ring: self.ring.clone(),
            rows: [scale(&self.rows[0]), scale(&self.rows[1])],
            layout: self.layout.clone(),
        })
    }

    pub fn to_text(&self) -> String {
        let join = |row: &[u64]| row.iter().map(u64::to_string).collect::<Vec<_>>().join(" ");
        format!(
            "modulus {}\nrows 2 cols {}\n{}\n{}\n",
            self.ring.modulus(),
            self.len(),
            join(&self.rows[0]),
            join(&self.rows[1])
        )
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
        let mut next = |what: &str| {
            lines.next().ok_or_else(|| Error::Parse {
                line: 0,
                message: format!("missing {what} line"),
            })
        };

        let (ln, header) = next("modulus")?;
        let modulus = match header.split_whitespace().collect::<Vec<_>>()[..] {
            ["modulus", m] => parse_int(ln, m)?,
            _ => return Err(parse_error(ln, "expected `modulus M`")),
        };
        let ring = RingSpec::new(modulus)?;

        let (ln, shape) = next("shape")?;
        let cols = match shape.split_whitespace().collect::<Vec<_>>()[..] {
            ["rows", "2", "cols", m] => parse_int(ln, m)? as usize,
            ["rows", r, "cols", _] => {
                return Err(parse_error(ln, &format!("expected 2 rows, found {r}")))
            }
            _ => return Err(parse_error(ln, "expected `rows 2 cols m`")),
        };

        let mut rows = Vec::with_capacity(2);
        for _ in 0..2 {
            let (ln, line) = next("matrix row")?;
            let row = line
                .split_whitespace()
                .map(|tok| {
                    let v = parse_int(ln, tok)?;
                    ring.element(v).map_err(|e| parse_error(ln, &e.to_string()))
                })
                .collect::<Result<Vec<_>>>()?;
            if row.len() != cols {
                return Err(parse_error(
                    ln,
                    &format!("expected {cols} entries, found {}", row.len()),
                ));
            }
            rows.push(row);
        }
        if let Some((ln, extra)) = lines.find(|(_, l)| !l.is_empty()) {
            return Err(parse_error(
                ln,
                &format!("unexpected trailing content `{extra}`"),
            ));
        }
        let row2 = rows.pop().unwrap();
        let row1 = rows.pop().unwrap();
        Self::new(ring, row1, row2)
    }
}

impl fmt::Display for GeneratorMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

pub(crate) fn combine_rows(
    ring: &RingSpec,
    row1: &[u64],
    row2: &[u64],
    c1: u64,
    c2: u64,
) -> Vec<u64> {
    row1.iter()
        .zip(row2)
        .map(|(&a, &b)| ring.add(ring.mul(c1, a), ring.mul(c2, b)))
        .collect()
}

fn parse_error(line: usize, message: &str) -> Error {
    Error::Parse {
        line,
        message: message.to_string(),
    }
}

fn parse_int(line: usize, tok: &str) -> Result<u64> {
    tok.parse()
        .map_err(|_| parse_error(line, &format!("`{tok}` is not a non-negative integer")))
}
