//! Dense matrices over GF(q²) with exact elimination.

use std::fmt;

use thiserror::Error;

use crate::field::{Field, FieldElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("expected {expected} entries for a {rows}x{cols} matrix, got {got}")]
    BadShape {
        rows: usize,
        cols: usize,
        expected: usize,
        got: usize,
    },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: String, right: String },
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
}

#[derive(Clone, PartialEq, Eq)]
pub struct FieldMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<FieldElement>,
    field: Field,
}

impl fmt::Debug for FieldMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:?} {}x{} [", self.field, self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<_> = self.row(r).iter().map(|x| x.index()).collect();
            writeln!(f, "  {row:?}")?;
        }
        write!(f, "]")
    }
}

impl FieldMatrix {
    pub fn new(
        field: &Field,
        rows: usize,
        cols: usize,
        entries: Vec<FieldElement>,
    ) -> Result<Self, LinalgError> {
        if entries.len() != rows * cols {
            return Err(LinalgError::BadShape {
                rows,
                cols,
                expected: rows * cols,
                got: entries.len(),
            });
        }
        Ok(FieldMatrix {
            rows,
            cols,
            entries,
            field: field.clone(),
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<FieldElement>]) -> Result<Self, LinalgError> {
        let cols = rows.first().map_or(0, Vec::len);
        let entries: Vec<_> = rows.iter().flatten().copied().collect();
        Self::new(field, rows.len(), cols, entries)
    }

    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        FieldMatrix {
            rows,
            cols,
            entries: vec![FieldElement::ZERO; rows * cols],
            field: field.clone(),
        }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, FieldElement::ONE);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn entries(&self) -> &[FieldElement] {
        &self.entries
    }

    pub fn get(&self, r: usize, c: usize) -> FieldElement {
        self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, x: FieldElement) {
        self.entries[r * self.cols + c] = x;
    }

    pub fn row(&self, r: usize) -> &[FieldElement] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn scale_row(&mut self, r: usize, s: FieldElement) {
        let f = self.field.clone();
        for x in &mut self.entries[r * self.cols..(r + 1) * self.cols] {
            *x = f.mul(*x, s);
        }
    }

    pub fn transpose(&self) -> FieldMatrix {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    /// M†: entrywise Frobenius, then transpose.
    pub fn conjugate_transpose(&self) -> FieldMatrix {
        let mut out = Self::zeros(&self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.field.frobenius(self.get(r, c)));
            }
        }
        out
    }

    pub fn select_columns(&self, cols: &[usize]) -> FieldMatrix {
        let mut entries = Vec::with_capacity(self.rows * cols.len());
        for r in 0..self.rows {
            entries.extend(cols.iter().map(|&c| self.get(r, c)));
        }
        FieldMatrix {
            rows: self.rows,
            cols: cols.len(),
            entries,
            field: self.field.clone(),
        }
    }

    pub fn multiply(&self, other: &FieldMatrix) -> Result<FieldMatrix, LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("{}x{}", other.rows, other.cols),
            });
        }
        let f = &self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for c in 0..other.cols {
                let acc = f.sum((0..self.cols).map(|i| f.mul(self.get(r, i), other.get(i, c))));
                out.set(r, c, acc);
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("vector of length {}", v.len()),
            });
        }
        let f = &self.field;
        Ok((0..self.rows)
            .map(|r| f.sum(self.row(r).iter().zip(v).map(|(&a, &b)| f.mul(a, b))))
            .collect())
    }

    /// Exact rank by fraction-free elimination. The pivot is the first row
    /// with a nonzero entry in the current column.
    pub fn rank(&self) -> usize {
        let f = &self.field;
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            if rank == m.rows {
                break;
            }
            let Some(pivot) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(rank, pivot);
            let p = m.get(rank, col);
            for r in rank + 1..m.rows {
                let e = m.get(r, col);
                if e.is_zero() {
                    continue;
                }
                // row_r <- p * row_r - e * row_pivot
                for c in col..m.cols {
                    let v = f.sub(f.mul(p, m.get(r, c)), f.mul(e, m.get(rank, c)));
                    m.set(r, c, v);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Reduced row echelon form; returns the pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(pivot) = (row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(row, pivot);
            let inv = f.inv(self.get(row, col)).expect("pivot is nonzero");
            self.scale_row(row, inv);
            for r in 0..self.rows {
                let e = self.get(r, col);
                if r == row || e.is_zero() {
                    continue;
                }
                for c in col..self.cols {
                    let v = f.sub(self.get(r, c), f.mul(e, self.get(row, c)));
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    /// Unique solution of `self · x = rhs` for square nonsingular `self`.
    pub fn solve(&self, rhs: &[FieldElement]) -> Result<Vec<FieldElement>, LinalgError> {
        if self.rows != self.cols {
            return Err(LinalgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        if rhs.len() != self.rows {
            return Err(LinalgError::DimensionMismatch {
                left: format!("{}x{}", self.rows, self.cols),
                right: format!("vector of length {}", rhs.len()),
            });
        }
        let n = self.rows;
        let mut aug = Self::zeros(&self.field, n, n + 1);
        for (r, &y) in rhs.iter().enumerate() {
            for c in 0..n {
                aug.set(r, c, self.get(r, c));
            }
            aug.set(r, n, y);
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(LinalgError::Singular);
        }
        Ok((0..n).map(|r| aug.get(r, n)).collect())
    }

    /// Basis of the right null space {x : self · x = 0}.
    pub fn null_space(&self) -> Vec<Vec<FieldElement>> {
        let f = &self.field;
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&fc| {
                let mut v = vec![FieldElement::ZERO; m.cols];
                v[fc] = FieldElement::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = f.neg(m.get(r, fc));
                }
                v
            })
            .collect()
    }
}

/// Square matrix with entry (i, j) = nodes[j]^i.
pub fn vandermonde(field: &Field, nodes: &[FieldElement]) -> FieldMatrix {
    let n = nodes.len();
    let mut m = FieldMatrix::zeros(field, n, n);
    for (j, &x) in nodes.iter().enumerate() {
        let mut acc = FieldElement::ONE;
        for i in 0..n {
            m.set(i, j, acc);
            acc = field.mul(acc, x);
        }
    }
    m
}
