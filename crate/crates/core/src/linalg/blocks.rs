//! Sparse vectors and linear maps that split into independent diagonal
//! blocks. Every homogeneous map between graded spaces decomposes this way,
//! so kernels, ranks and solves are done one block at a time.

use std::collections::HashMap;
use std::hash::Hash;
use std::sync::OnceLock;

use super::field::{Field, FieldElem};
use super::matrix::Matrix;

/// Sorted `(index, nonzero value)` pairs.
pub type SparseVec = Vec<(usize, FieldElem)>;

/// Accumulates a sparse linear combination.
#[derive(Default)]
pub struct SparseAcc {
    map: HashMap<usize, FieldElem>,
}

impl SparseAcc {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, i: usize, v: FieldElem) {
        if v.is_zero() {
            return;
        }
        match self.map.get_mut(&i) {
            Some(x) => *x += &v,
            None => {
                self.map.insert(i, v);
            }
        }
    }

    pub fn add_scaled(&mut self, v: &SparseVec, c: &FieldElem) {
        if c.is_zero() {
            return;
        }
        for (i, x) in v {
            self.add(*i, x * c);
        }
    }

    pub fn finish(self) -> SparseVec {
        let mut out: SparseVec = self.map.into_iter().filter(|(_, v)| !v.is_zero()).collect();
        out.sort_unstable_by_key(|(i, _)| *i);
        out
    }
}

pub fn sparse_from_dense(v: &[FieldElem]) -> SparseVec {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn sparse_to_dense(field: Field, v: &SparseVec, len: usize) -> Vec<FieldElem> {
    let mut out = vec![field.zero(); len];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

pub fn sparse_scale(v: &SparseVec, c: &FieldElem) -> SparseVec {
    if c.is_zero() {
        return Vec::new();
    }
    v.iter().map(|(i, x)| (*i, x * c)).collect()
}

pub fn sparse_add(a: &SparseVec, b: &SparseVec) -> SparseVec {
    let mut acc = SparseAcc::new();
    for (i, x) in a.iter().chain(b) {
        acc.add(*i, x.clone());
    }
    acc.finish()
}

struct Block {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

struct Factor {
    /// Reduced row echelon form of the block (rank rows kept).
    rref: Matrix,
    /// Row transformation with `transform · block = full rref`.
    transform: Matrix,
    pivots: Vec<usize>,
}

/// A linear map given by sparse columns, together with a partition of rows and
/// columns into blocks such that every column only touches rows of its own block.
pub struct BlockMap {
    field: Field,
    nrows: usize,
    row_block: Vec<usize>,
    row_local: Vec<usize>,
    col_block: Vec<usize>,
    col_local: Vec<usize>,
    blocks: Vec<Block>,
    columns: Vec<SparseVec>,
    factors: Vec<OnceLock<Factor>>,
}

const NO_BLOCK: usize = usize::MAX;

impl std::fmt::Debug for BlockMap {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("BlockMap")
            .field("rows", &self.nrows)
            .field("cols", &self.columns.len())
            .field("blocks", &self.blocks.len())
            .finish()
    }
}

impl BlockMap {
    /// `row_keys[i]` / `col_keys[j]` label the block of each row / column.
    pub fn new<K: Hash + Eq + Clone>(
        field: Field,
        row_keys: &[K],
        col_keys: &[K],
        columns: Vec<SparseVec>,
    ) -> Self {
        assert_eq!(col_keys.len(), columns.len());
        let mut ids: HashMap<K, usize> = HashMap::new();
        let mut blocks: Vec<Block> = Vec::new();
        let mut intern = |k: &K, blocks: &mut Vec<Block>| -> usize {
            *ids.entry(k.clone()).or_insert_with(|| {
                blocks.push(Block { rows: Vec::new(), cols: Vec::new() });
                blocks.len() - 1
            })
        };
        let mut row_block = Vec::with_capacity(row_keys.len());
        let mut row_local = Vec::with_capacity(row_keys.len());
        for (i, k) in row_keys.iter().enumerate() {
            let b = intern(k, &mut blocks);
            row_local.push(blocks[b].rows.len());
            blocks[b].rows.push(i);
            row_block.push(b);
        }
        let mut col_block = Vec::with_capacity(col_keys.len());
        let mut col_local = Vec::with_capacity(col_keys.len());
        for (j, k) in col_keys.iter().enumerate() {
            let b = intern(k, &mut blocks);
            col_local.push(blocks[b].cols.len());
            blocks[b].cols.push(j);
            col_block.push(b);
        }
        for (j, c) in columns.iter().enumerate() {
            for (i, _) in c {
                debug_assert_eq!(row_block[*i], col_block[j], "column {j} leaves its block");
            }
        }
        let factors = (0..blocks.len()).map(|_| OnceLock::new()).collect();
        BlockMap {
            field,
            nrows: row_keys.len(),
            row_block,
            row_local,
            col_block,
            col_local,
            blocks,
            columns,
            factors,
        }
    }

    /// Columns are assumed homogeneous; each column's block is taken from its
    /// first nonzero row. Zero columns get their own singleton blocks.
    pub fn from_homogeneous_columns<K: Hash + Eq + Clone>(
        field: Field,
        row_keys: &[K],
        columns: Vec<SparseVec>,
    ) -> Self {
        let col_keys: Vec<Option<K>> =
            columns.iter().map(|c| c.first().map(|(i, _)| row_keys[*i].clone())).collect();
        let rk: Vec<Option<K>> = row_keys.iter().cloned().map(Some).collect();
        BlockMap::new(field, &rk, &col_keys, columns)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Largest block, as (rows, cols).
    pub fn largest_block(&self) -> (usize, usize) {
        self.blocks.iter().map(|b| (b.rows.len(), b.cols.len())).max_by_key(|(r, c)| r * c).unwrap_or((0, 0))
    }

    fn factor(&self, b: usize) -> &Factor {
        self.factors[b].get_or_init(|| {
            let block = &self.blocks[b];
            let m = block.rows.len();
            let n = block.cols.len();
            let mut aug = Matrix::zeros(self.field, m, n + m);
            for (lj, &j) in block.cols.iter().enumerate() {
                for (i, v) in &self.columns[j] {
                    aug[(self.row_local[*i], lj)] = v.clone();
                }
            }
            for i in 0..m {
                aug[(i, n + i)] = self.field.one();
            }
            let pivots = aug.eliminate(n);
            let all_rows: Vec<usize> = (0..m).collect();
            let rank_rows: Vec<usize> = (0..pivots.len()).collect();
            let rref = aug.submatrix(&rank_rows, &(0..n).collect::<Vec<_>>());
            let transform = aug.submatrix(&all_rows, &(n..n + m).collect::<Vec<_>>());
            Factor { rref, transform, pivots }
        })
    }

    pub fn rank(&self) -> usize {
        (0..self.blocks.len()).map(|b| self.factor(b).pivots.len()).sum()
    }

    /// Basis of the kernel; every vector is supported in a single block.
    pub fn kernel(&self) -> Vec<SparseVec> {
        let mut out = Vec::new();
        for (b, block) in self.blocks.iter().enumerate() {
            if block.cols.is_empty() {
                continue;
            }
            let f = self.factor(b);
            for lf in 0..block.cols.len() {
                if f.pivots.contains(&lf) {
                    continue;
                }
                let mut v: SparseVec = vec![(block.cols[lf], self.field.one())];
                for (row, &pc) in f.pivots.iter().enumerate() {
                    let x = &f.rref[(row, lf)];
                    if !x.is_zero() {
                        v.push((block.cols[pc], -x));
                    }
                }
                v.sort_unstable_by_key(|(i, _)| *i);
                out.push(v);
            }
        }
        out
    }

    /// Indices of columns forming a basis of the image, chosen greedily in
    /// column order within each block.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut out: Vec<usize> = Vec::new();
        for (b, block) in self.blocks.iter().enumerate() {
            if block.cols.is_empty() || block.rows.is_empty() {
                continue;
            }
            out.extend(self.factor(b).pivots.iter().map(|&lp| block.cols[lp]));
        }
        out.sort_unstable();
        out
    }

    pub fn apply(&self, x: &SparseVec) -> SparseVec {
        let mut acc = SparseAcc::new();
        for (j, c) in x {
            acc.add_scaled(&self.columns[*j], c);
        }
        acc.finish()
    }

    /// Some `x` with `self·x = w`, or `None` when `w` is not in the image.
    pub fn solve(&self, w: &SparseVec) -> Option<SparseVec> {
        let mut per_block: HashMap<usize, Vec<(usize, &FieldElem)>> = HashMap::new();
        for (i, v) in w {
            let b = self.row_block[*i];
            if b == NO_BLOCK {
                return None;
            }
            per_block.entry(b).or_default().push((self.row_local[*i], v));
        }
        let mut out: SparseVec = Vec::new();
        for (b, entries) in per_block {
            let f = self.factor(b);
            let block = &self.blocks[b];
            let m = block.rows.len();
            let mut rhs = vec![self.field.zero(); m];
            for (li, v) in entries {
                rhs[li] = v.clone();
            }
            let y = f.transform.mul_vec(&rhs);
            if y[f.pivots.len()..].iter().any(|v| !v.is_zero()) {
                return None;
            }
            for (row, &pc) in f.pivots.iter().enumerate() {
                if !y[row].is_zero() {
                    out.push((block.cols[pc], y[row].clone()));
                }
            }
        }
        out.sort_unstable_by_key(|(i, _)| *i);
        Some(out)
    }

    pub fn solve_dense(&self, w: &[FieldElem]) -> Option<SparseVec> {
        self.solve(&sparse_from_dense(w))
    }

    /// Block id of a column; used when splitting spaces by degree.
    pub fn column_block(&self, j: usize) -> usize {
        self.col_block[j]
    }

    pub fn column_local(&self, j: usize) -> usize {
        self.col_local[j]
    }
}
