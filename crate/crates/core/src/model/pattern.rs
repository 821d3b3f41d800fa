use alloc::collections::BTreeSet;

use super::ModelError;

/// Zero/nonzero structure of a matrix. Only the positions of the free
/// (nonzero) entries are stored; there are no numeric values.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct SparsityPattern {
    rows: usize,
    cols: usize,
    nonzeros: BTreeSet<(usize, usize)>,
}

impl SparsityPattern {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparsityPattern {
            rows,
            cols,
            nonzeros: BTreeSet::new(),
        }
    }

    pub fn from_entries<I>(rows: usize, cols: usize, entries: I) -> Result<Self, ModelError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut p = SparsityPattern::zeros(rows, cols);
        for (r, c) in entries {
            p.insert(r, c)?;
        }
        Ok(p)
    }

    pub fn insert(&mut self, row: usize, col: usize) -> Result<(), ModelError> {
        if row >= self.rows || col >= self.cols {
            return Err(ModelError::EntryOutOfRange {
                row,
                col,
                rows: self.rows,
                cols: self.cols,
            });
        }
        self.nonzeros.insert((row, col));
        Ok(())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn contains(&self, row: usize, col: usize) -> bool {
        self.nonzeros.contains(&(row, col))
    }

    pub fn nnz(&self) -> usize {
        self.nonzeros.len()
    }

    pub fn is_zero(&self) -> bool {
        self.nonzeros.is_empty()
    }

    /// Nonzero positions in row-major order.
    pub fn nonzeros(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nonzeros.iter().copied()
    }

    pub fn transpose(&self) -> SparsityPattern {
        SparsityPattern {
            rows: self.cols,
            cols: self.rows,
            nonzeros: self.nonzeros.iter().map(|&(r, c)| (c, r)).collect(),
        }
    }
}
