//! Exact integer matrices and fraction-free rank computation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Dense matrix over the integers with row and column labels. Labels ride
/// along for CSV emission; they never influence arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
    row_labels: Vec<String>,
    col_labels: Vec<String>,
}

impl ExactMatrix {
    pub fn from_rows(
        data: Vec<Vec<BigInt>>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
    ) -> Result<Self> {
        let rows = data.len();
        let cols = col_labels.len();
        if row_labels.len() != rows {
            return Err(Error::InvalidArgument(format!(
                "{} row labels for {} rows",
                row_labels.len(),
                rows
            )));
        }
        for row in &data {
            if row.len() != cols {
                return Err(Error::InvalidArgument(format!(
                    "row of width {} in a matrix with {} columns",
                    row.len(),
                    cols
                )));
            }
        }
        Ok(ExactMatrix {
            rows,
            cols,
            data: data.into_iter().flatten().collect(),
            row_labels,
            col_labels,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &BigInt {
        &self.data[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn matvec(&self, x: &[BigInt]) -> Result<Vec<BigInt>> {
        if x.len() != self.cols {
            return Err(Error::InvalidArgument(format!(
                "vector of length {} against {} columns",
                x.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|r| self.row(r).iter().zip(x).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn transpose(&self) -> ExactMatrix {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        ExactMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Vertical concatenation; column labels must agree.
    pub fn stacked(&self, below: &ExactMatrix) -> Result<ExactMatrix> {
        if self.col_labels != below.col_labels {
            return Err(Error::InvalidArgument(
                "stacked matrices need identical column labels".into(),
            ));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&below.data);
        let mut row_labels = self.row_labels.clone();
        row_labels.extend_from_slice(&below.row_labels);
        Ok(ExactMatrix {
            rows: self.rows + below.rows,
            cols: self.cols,
            data,
            row_labels,
            col_labels: self.col_labels.clone(),
        })
    }

    /// Rank by Bareiss fraction-free elimination. Every intermediate entry
    /// is an exact minor of the input, so the division at each step is
    /// exact; the debug_assert pins that down.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut prev = BigInt::one();
        let mut rank = 0usize;
        let mut col = 0usize;
        while rank < self.rows && col < self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                col += 1;
                continue;
            };
            a.swap(rank, pivot);
            for r in rank + 1..self.rows {
                for c in col + 1..self.cols {
                    let num = &a[rank][col] * &a[r][c] - &a[r][col] * &a[rank][c];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "fraction-free step must divide exactly");
                    a[r][c] = q;
                }
                a[r][col] = BigInt::zero();
            }
            prev = a[rank][col].clone();
            rank += 1;
            col += 1;
        }
        rank
    }

    /// CSV with a leading label column. The first header cell and every row
    /// label are quoted because sequence keys contain commas.
    pub fn to_csv(&self) -> String {
        fn quote(s: &str) -> String {
            format!("\"{}\"", s.replace('"', "\"\""))
        }
        let mut out = String::new();
        out.push_str(&quote("sequence"));
        for label in &self.col_labels {
            out.push(',');
            out.push_str(label);
        }
        out.push('\n');
        for r in 0..self.rows {
            out.push_str(&quote(&self.row_labels[r]));
            for c in 0..self.cols {
                out.push(',');
                out.push_str(&self.get(r, c).to_string());
            }
            out.push('\n');
        }
        out
    }

    /// Plain aligned text, for terminals.
    pub fn to_text(&self) -> String {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|r| (0..self.cols).map(|c| self.get(r, c).to_string()).collect())
            .collect();
        let label_width = self.row_labels.iter().map(|l| l.len()).max().unwrap_or(0);
        let widths: Vec<usize> = (0..self.cols)
            .map(|c| {
                cells
                    .iter()
                    .map(|row| row[c].len())
                    .chain(std::iter::once(self.col_labels[c].len()))
                    .max()
                    .unwrap_or(1)
            })
            .collect();
        let mut out = String::new();
        out.push_str(&" ".repeat(label_width));
        for (c, label) in self.col_labels.iter().enumerate() {
            out.push_str(&format!("  {label:>width$}", width = widths[c]));
        }
        out.push('\n');
        for r in 0..self.rows {
            out.push_str(&format!("{:<label_width$}", self.row_labels[r]));
            for (c, cell) in cells[r].iter().enumerate() {
                out.push_str(&format!("  {cell:>width$}", width = widths[c]));
            }
            out.push('\n');
        }
        out
    }
}
