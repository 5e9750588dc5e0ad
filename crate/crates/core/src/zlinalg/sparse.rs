use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Sparse integer matrix; zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct SparseIntMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), BigInt>,
}

impl fmt::Debug for SparseIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "SparseIntMatrix({}x{}, {} nonzeros)",
            self.rows,
            self.cols,
            self.entries.len()
        )
    }
}

impl SparseIntMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        SparseIntMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn from_dense<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Self {
        let mut m = SparseIntMatrix::new(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "row {i} has wrong length");
            for (j, v) in r.iter().enumerate() {
                m.set(i, j, v.clone().into());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, r: usize, c: usize) -> BigInt {
        self.entries.get(&(r, c)).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, r: usize, c: usize, v: BigInt) {
        assert!(
            r < self.rows && c < self.cols,
            "entry ({r},{c}) out of range"
        );
        if v.is_zero() {
            self.entries.remove(&(r, c));
        } else {
            self.entries.insert((r, c), v);
        }
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &BigInt) {
        let cur = self.get(r, c);
        self.set(r, c, cur + v);
    }

    /// Appends a row given as `(col, value)` pairs; repeated columns add up.
    pub fn push_row(&mut self, row: &[(usize, BigInt)]) {
        let r = self.rows;
        self.rows += 1;
        for (c, v) in row {
            self.add_to(r, *c, v);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &BigInt)> {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    /// Rows as sparse `(col, value)` lists.
    pub fn row_lists(&self) -> Vec<Vec<(usize, BigInt)>> {
        let mut out = vec![Vec::new(); self.rows];
        for (&(r, c), v) in &self.entries {
            out[r].push((c, v.clone()));
        }
        out
    }

    pub fn to_dense(&self) -> Vec<Vec<BigInt>> {
        let mut out = vec![vec![BigInt::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn transpose(&self) -> Self {
        SparseIntMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self
                .entries
                .iter()
                .map(|(&(r, c), v)| ((c, r), v.clone()))
                .collect(),
        }
    }

    /// Parses the text format: `rows cols`, then one `r c value` line per
    /// nonzero entry. Blank lines and `#` comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let syntax = |line: usize, message: String| Error::Syntax {
            location: format!("line {line}"),
            message,
        };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| syntax(1, "missing \"rows cols\" header".into()))?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(syntax(
                hl,
                format!("expected \"rows cols\", found \"{header}\""),
            ));
        }
        let parse_usize = |s: &str, line: usize, what: &str| {
            s.parse::<usize>().map_err(|_| {
                syntax(
                    line,
                    format!("{what} must be a nonnegative integer, found \"{s}\""),
                )
            })
        };
        let rows = parse_usize(dims[0], hl, "rows")?;
        let cols = parse_usize(dims[1], hl, "cols")?;
        let mut m = SparseIntMatrix::new(rows, cols);
        for (ln, l) in lines {
            let parts: Vec<&str> = l.split_whitespace().collect();
            if parts.len() != 3 {
                return Err(syntax(ln, format!("expected \"r c value\", found \"{l}\"")));
            }
            let r = parse_usize(parts[0], ln, "row index")?;
            let c = parse_usize(parts[1], ln, "column index")?;
            let v: BigInt = parts[2].parse().map_err(|_| {
                syntax(
                    ln,
                    format!("value must be an integer, found \"{}\"", parts[2]),
                )
            })?;
            if r >= rows || c >= cols {
                return Err(syntax(
                    ln,
                    format!("entry ({r},{c}) outside a {rows}x{cols} matrix"),
                ));
            }
            if m.entries.contains_key(&(r, c)) {
                return Err(syntax(ln, format!("duplicate entry ({r},{c})")));
            }
            m.set(r, c, v);
        }
        Ok(m)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{} {}\n", self.rows, self.cols);
        for (&(r, c), v) in &self.entries {
            s.push_str(&format!("{r} {c} {v}\n"));
        }
        s
    }
}
