//! Sparse matrices over exact fields: ranks, kernels, images, quotients,
//! Kronecker products.
//!
//! Matrices are stored column-major (column `j` is the image of the `j`-th
//! basis vector), which matches how chain operators are built from structure
//! constants. Elimination uses Markowitz-style pivoting on fewest-nonzero
//! rows; chain-space matrices are very sparse and fill-in dominates cost.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::scalar::{ExactScalar, Field};

/// A sparse vector: sorted `(index, non-zero scalar)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SparseVec(pub Vec<(usize, ExactScalar)>);

impl SparseVec {
    pub fn zero() -> SparseVec {
        SparseVec(Vec::new())
    }

    pub fn unit(index: usize, field: Field) -> SparseVec {
        SparseVec(vec![(index, field.one())])
    }

    pub fn from_entries(entries: Vec<(usize, ExactScalar)>) -> SparseVec {
        let mut map: BTreeMap<usize, ExactScalar> = BTreeMap::new();
        for (i, c) in entries {
            match map.remove(&i) {
                Some(prev) => {
                    let s = prev.add(&c);
                    if !s.is_zero() {
                        map.insert(i, s);
                    }
                }
                None => {
                    if !c.is_zero() {
                        map.insert(i, c);
                    }
                }
            }
        }
        SparseVec(map.into_iter().collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.0.len()
    }

    pub fn get(&self, index: usize) -> Option<&ExactScalar> {
        self.0
            .binary_search_by_key(&index, |(i, _)| *i)
            .ok()
            .map(|k| &self.0[k].1)
    }

    pub fn scale(&self, c: &ExactScalar) -> SparseVec {
        if c.is_zero() {
            return SparseVec::zero();
        }
        SparseVec(self.0.iter().map(|(i, x)| (*i, x.mul(c))).collect())
    }

    /// `self + c * other`, merged in one pass.
    pub fn add_scaled(&self, other: &SparseVec, c: &ExactScalar) -> SparseVec {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut a, mut b) = (0usize, 0usize);
        while a < self.0.len() || b < other.0.len() {
            match (self.0.get(a), other.0.get(b)) {
                (Some((i, x)), Some((j, y))) => {
                    if i < j {
                        out.push((*i, x.clone()));
                        a += 1;
                    } else if j < i {
                        let v = y.mul(c);
                        if !v.is_zero() {
                            out.push((*j, v));
                        }
                        b += 1;
                    } else {
                        let v = x.add(&y.mul(c));
                        if !v.is_zero() {
                            out.push((*i, v));
                        }
                        a += 1;
                        b += 1;
                    }
                }
                (Some((i, x)), None) => {
                    out.push((*i, x.clone()));
                    a += 1;
                }
                (None, Some((j, y))) => {
                    let v = y.mul(c);
                    if !v.is_zero() {
                        out.push((*j, v));
                    }
                    b += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        SparseVec(out)
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        if other.is_zero() {
            return self.clone();
        }
        let one = match other.0.first() {
            Some((_, c)) => c.field().one(),
            None => return self.clone(),
        };
        self.add_scaled(other, &one)
    }

    /// Kronecker of two coordinate vectors: index `i` in a space of dimension
    /// `left_dim` paired with index `j` maps to `i * right_dim + j`.
    pub fn tensor(&self, other: &SparseVec, right_dim: usize) -> SparseVec {
        let mut out = Vec::with_capacity(self.0.len() * other.0.len());
        for (i, x) in &self.0 {
            for (j, y) in &other.0 {
                out.push((i * right_dim + j, x.mul(y)));
            }
        }
        SparseVec(out)
    }

    pub fn iter(&self) -> impl Iterator<Item = &(usize, ExactScalar)> {
        self.0.iter()
    }
}

/// A sparse matrix over a single exact field, stored by columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    pub rows: usize,
    pub cols: usize,
    pub field: Field,
    columns: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> SparseMatrix {
        SparseMatrix {
            rows,
            cols,
            field,
            columns: vec![SparseVec::zero(); cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> SparseMatrix {
        let mut m = SparseMatrix::zero(n, n, field);
        for j in 0..n {
            m.columns[j] = SparseVec::unit(j, field);
        }
        m
    }

    /// Build from the images of the source basis vectors.
    pub fn from_columns(rows: usize, field: Field, columns: Vec<SparseVec>) -> Result<SparseMatrix> {
        for col in &columns {
            for (i, c) in &col.0 {
                if *i >= rows {
                    return Err(Error::shape(format!("row index {i} out of range {rows}")));
                }
                c.field().unify(field)?;
            }
        }
        Ok(SparseMatrix {
            rows,
            cols: columns.len(),
            field,
            columns,
        })
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        field: Field,
        mut f: impl FnMut(usize) -> SparseVec,
    ) -> Result<SparseMatrix> {
        SparseMatrix::from_columns(rows, field, (0..cols).map(|j| f(j)).collect())
    }

    /// Build from `(row, col, value)` triples; rejects mixed-field entries.
    pub fn from_entries(
        rows: usize,
        cols: usize,
        field: Field,
        entries: Vec<(usize, usize, ExactScalar)>,
    ) -> Result<SparseMatrix> {
        let mut per_col: Vec<Vec<(usize, ExactScalar)>> = vec![Vec::new(); cols];
        for (r, c, v) in entries {
            if r >= rows || c >= cols {
                return Err(Error::shape(format!("entry ({r},{c}) out of range")));
            }
            v.field().unify(field)?;
            per_col[c].push((r, v));
        }
        Ok(SparseMatrix {
            rows,
            cols,
            field,
            columns: per_col.into_iter().map(SparseVec::from_entries).collect(),
        })
    }

    pub fn column(&self, j: usize) -> &SparseVec {
        &self.columns[j]
    }

    pub fn set_column(&mut self, j: usize, v: SparseVec) {
        self.columns[j] = v;
    }

    pub fn get(&self, r: usize, c: usize) -> ExactScalar {
        self.columns[c]
            .get(r)
            .cloned()
            .unwrap_or_else(|| self.field.zero())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.nnz()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && self.columns.iter().enumerate().all(|(j, col)| {
                col.0.len() == 1 && col.0[0].0 == j && col.0[0].1.is_one()
            })
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &ExactScalar)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(j, col)| col.0.iter().map(move |(i, c)| (*i, j, c)))
    }

    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, ExactScalar> = BTreeMap::new();
        for (j, c) in &v.0 {
            debug_assert!(*j < self.cols, "vector index out of range");
            for (i, a) in &self.columns[*j].0 {
                let term = a.mul(c);
                match acc.remove(i) {
                    Some(prev) => {
                        let s = prev.add(&term);
                        if !s.is_zero() {
                            acc.insert(*i, s);
                        }
                    }
                    None => {
                        if !term.is_zero() {
                            acc.insert(*i, term);
                        }
                    }
                }
            }
        }
        SparseVec(acc.into_iter().collect())
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.field.unify(other.field)?;
        if self.cols != other.rows {
            return Err(Error::shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let cols = other.columns.iter().map(|c| self.apply(c)).collect();
        SparseMatrix::from_columns(self.rows, self.field, cols)
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.field.unify(other.field)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::shape("matrix addition shape mismatch"));
        }
        let cols = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| a.add(b))
            .collect();
        SparseMatrix::from_columns(self.rows, self.field, cols)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.add(&other.scale(&self.field.integer(-1)))
    }

    pub fn scale(&self, c: &ExactScalar) -> SparseMatrix {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            columns: self.columns.iter().map(|col| col.scale(c)).collect(),
        }
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols: Vec<Vec<(usize, ExactScalar)>> = vec![Vec::new(); self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, c) in &col.0 {
                cols[*i].push((j, c.clone()));
            }
        }
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            columns: cols.into_iter().map(SparseVec).collect(),
        }
    }

    /// Kronecker product with row-major leg ordering: basis vector
    /// `i ⊗ j` of the source has index `i * other.cols + j`.
    pub fn tensor(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.field.unify(other.field)?;
        let rows = self.rows * other.rows;
        let mut cols = Vec::with_capacity(self.cols * other.cols);
        for a in &self.columns {
            for b in &other.columns {
                cols.push(a.tensor(b, other.rows));
            }
        }
        SparseMatrix::from_columns(rows, self.field, cols)
    }

    pub fn pow(&self, e: usize) -> Result<SparseMatrix> {
        if self.rows != self.cols {
            return Err(Error::shape("power of a non-square matrix"));
        }
        let mut acc = SparseMatrix::identity(self.rows, self.field);
        for _ in 0..e {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Stack vertically: `[self; other]` (self on top).
    pub fn stack(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.field.unify(other.field)?;
        if self.cols != other.cols {
            return Err(Error::shape("vertical stack needs equal column counts"));
        }
        let cols = self
            .columns
            .iter()
            .zip(&other.columns)
            .map(|(a, b)| {
                let mut v = a.0.clone();
                v.extend(b.0.iter().map(|(i, c)| (i + self.rows, c.clone())));
                SparseVec(v)
            })
            .collect();
        SparseMatrix::from_columns(self.rows + other.rows, self.field, cols)
    }

    /// Two-sided inverse of a square matrix, `None` if singular.
    pub fn solve_inverse(&self) -> Option<SparseMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        // kernel of [A | -I] stacked as one matrix with 2n columns gives the
        // solutions of A x = e_j; assemble dense Gauss instead (n is small
        // wherever this is called)
        let mut a: Vec<Vec<ExactScalar>> = (0..n)
            .map(|r| (0..n).map(|c| self.get(r, c)).collect())
            .collect();
        let mut inv: Vec<Vec<ExactScalar>> = (0..n)
            .map(|r| {
                (0..n)
                    .map(|c| {
                        if r == c {
                            self.field.one()
                        } else {
                            self.field.zero()
                        }
                    })
                    .collect()
            })
            .collect();
        for col in 0..n {
            let p = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, p);
            inv.swap(col, p);
            let scale = a[col][col].inv().ok()?;
            for c in 0..n {
                a[col][c] = a[col][c].mul(&scale);
                inv[col][c] = inv[col][c].mul(&scale);
            }
            for r in 0..n {
                if r != col && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in 0..n {
                        let t = a[col][c].mul(&f);
                        a[r][c] = a[r][c].sub(&t);
                        let t = inv[col][c].mul(&f);
                        inv[r][c] = inv[r][c].sub(&t);
                    }
                }
            }
        }
        let entries = inv
            .into_iter()
            .enumerate()
            .flat_map(|(r, row)| {
                row.into_iter()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .map(move |(c, v)| (r, c, v))
            })
            .collect();
        SparseMatrix::from_entries(n, n, self.field, entries).ok()
    }

    pub fn rank(&self) -> usize {
        Eliminator::new(self, false).run().rank
    }

    /// A basis of the null space `{x : Ax = 0}`, in reduced echelon form.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        Eliminator::new(self, true).run().kernel
    }

    pub fn kernel(&self) -> Subspace {
        Subspace::from_vectors(self.cols, self.field, self.kernel_basis())
    }

    pub fn image(&self) -> Subspace {
        Subspace::from_vectors(self.rows, self.field, self.columns.clone())
    }
}

/// Sparse Gaussian elimination by column operations.
///
/// Pivots are chosen on fewest-nonzero rows (ties broken by fewest-nonzero
/// column, then by index) so that the pivot order and the result are
/// deterministic and fill-in stays low on the near-monomial matrices that
/// chain operators produce.
struct Eliminator {
    cols: Vec<SparseVec>,
    /// Kernel tracking tails: tails[j] expresses work column j in the
    /// original columns.
    tails: Option<Vec<SparseVec>>,
    /// For each row, the set of active columns with a nonzero in it.
    row_cols: Vec<std::collections::BTreeSet<usize>>,
    /// Active rows bucketed by nonzero count (clamped), for pivot selection.
    buckets: Vec<std::collections::BTreeSet<usize>>,
    active_col: Vec<bool>,
    active_row: Vec<bool>,
}

struct EliminationOutcome {
    rank: usize,
    kernel: Vec<SparseVec>,
}

const BUCKET_CLAMP: usize = 32;

impl Eliminator {
    fn new(m: &SparseMatrix, track_kernel: bool) -> Eliminator {
        let mut row_cols = vec![std::collections::BTreeSet::new(); m.rows];
        for (j, col) in m.columns.iter().enumerate() {
            for (i, _) in &col.0 {
                row_cols[*i].insert(j);
            }
        }
        let mut buckets = vec![std::collections::BTreeSet::new(); BUCKET_CLAMP + 1];
        for (r, cols) in row_cols.iter().enumerate() {
            if !cols.is_empty() {
                buckets[cols.len().min(BUCKET_CLAMP)].insert(r);
            }
        }
        Eliminator {
            cols: m.columns.clone(),
            tails: track_kernel.then(|| {
                (0..m.cols)
                    .map(|j| SparseVec::unit(j, m.field))
                    .collect()
            }),
            row_cols,
            buckets,
            active_col: vec![true; m.cols],
            active_row: vec![true; m.rows],
        }
    }

    fn rebucket(&mut self, row: usize, old_count: usize, new_count: usize) {
        let ob = old_count.min(BUCKET_CLAMP);
        let nb = new_count.min(BUCKET_CLAMP);
        if old_count > 0 {
            self.buckets[ob].remove(&row);
        }
        if new_count > 0 && self.active_row[row] {
            self.buckets[nb].insert(row);
        }
    }

    fn run(mut self) -> EliminationOutcome {
        let mut rank = 0;
        loop {
            let Some((prow, pcol)) = self.pick_pivot() else {
                break;
            };
            rank += 1;
            self.eliminate(prow, pcol);
        }
        let kernel = match self.tails {
            None => Vec::new(),
            Some(tails) => {
                let mut ker: Vec<SparseVec> = (0..self.cols.len())
                    .filter(|&j| self.active_col[j] && self.cols[j].is_zero())
                    .map(|j| tails[j].clone())
                    .collect();
                reduce_to_rref(&mut ker);
                ker
            }
        };
        EliminationOutcome { rank, kernel }
    }

    fn pick_pivot(&self) -> Option<(usize, usize)> {
        let bucket = self.buckets.iter().find(|b| !b.is_empty())?;
        let mut best: Option<(usize, usize, usize, usize)> = None;
        // the first bucket may be clamped; just take its first row and pick
        // the sparsest column in that row
        let r = *bucket.first().expect("nonempty bucket");
        let rn = self.row_cols[r].len();
        for &c in &self.row_cols[r] {
            let cn = self.cols[c].nnz();
            let cand = (rn, cn, r, c);
            best = match best {
                None => Some(cand),
                Some(b) => Some(if cand < b { cand } else { b }),
            };
            if cn == 1 {
                break;
            }
        }
        best.map(|(_, _, r, c)| (r, c))
    }

    fn eliminate(&mut self, prow: usize, pcol: usize) {
        let pivot_val = self.cols[pcol]
            .get(prow)
            .expect("pivot entry must exist")
            .clone();
        let pivot_inv = pivot_val.inv().expect("pivot is nonzero");
        let targets: Vec<usize> = self.row_cols[prow]
            .iter()
            .copied()
            .filter(|&c| c != pcol)
            .collect();
        let pivot_col = self.cols[pcol].clone();
        let pivot_tail = self.tails.as_ref().map(|t| t[pcol].clone());
        for c in targets {
            let factor = self.cols[c]
                .get(prow)
                .expect("row index lists this column")
                .mul(&pivot_inv)
                .neg();
            let old = std::mem::take(&mut self.cols[c]);
            let new = old.add_scaled(&pivot_col, &factor);
            // update row incidence for changed rows
            let mut a = 0usize;
            let mut b = 0usize;
            while a < old.0.len() || b < new.0.len() {
                let (removed, inserted) = match (old.0.get(a), new.0.get(b)) {
                    (Some((i, _)), Some((j, _))) if i == j => {
                        a += 1;
                        b += 1;
                        (None, None)
                    }
                    (Some((i, _)), Some((j, _))) if i < j => {
                        a += 1;
                        (Some(*i), None)
                    }
                    (Some(_), Some((j, _))) => {
                        b += 1;
                        (None, Some(*j))
                    }
                    (Some((i, _)), None) => {
                        a += 1;
                        (Some(*i), None)
                    }
                    (None, Some((j, _))) => {
                        b += 1;
                        (None, Some(*j))
                    }
                    (None, None) => unreachable!(),
                };
                if let Some(i) = removed {
                    let oc = self.row_cols[i].len();
                    self.row_cols[i].remove(&c);
                    self.rebucket(i, oc, oc - 1);
                }
                if let Some(j) = inserted {
                    let oc = self.row_cols[j].len();
                    self.row_cols[j].insert(c);
                    self.rebucket(j, oc, oc + 1);
                }
            }
            self.cols[c] = new;
            if let (Some(tails), Some(ptail)) = (self.tails.as_mut(), pivot_tail.as_ref()) {
                tails[c] = tails[c].add_scaled(ptail, &factor);
            }
        }
        // retire the pivot row and column
        self.active_row[prow] = false;
        self.active_col[pcol] = false;
        let old_count = self.row_cols[prow].len();
        self.rebucket(prow, old_count, 0);
        let col_rows: Vec<usize> = self.cols[pcol].0.iter().map(|(i, _)| *i).collect();
        for i in col_rows {
            if i == prow {
                continue;
            }
            let oc = self.row_cols[i].len();
            if self.row_cols[i].remove(&pcol) {
                self.rebucket(i, oc, oc - 1);
            }
        }
        self.row_cols[prow].clear();
    }
}

/// Dimension of the quotient of `k^ambient_dim` by the span of the given
/// vectors: `ambient_dim - rank(span)`.
pub fn quotient_dim(
    ambient_dim: usize,
    spanning_vectors: &[SparseVec],
    field: Field,
) -> Result<usize> {
    for v in spanning_vectors {
        for (i, c) in v.iter() {
            if *i >= ambient_dim {
                return Err(Error::shape(format!(
                    "spanning vector index {i} outside ambient dimension {ambient_dim}"
                )));
            }
            c.field().unify(field)?;
        }
    }
    Ok(ambient_dim - Subspace::from_vectors(ambient_dim, field, spanning_vectors.to_vec()).dim())
}

/// Bring a spanning set into reduced echelon form in place (each vector has a
/// unit pivot entry that is zero in every other vector; pivots increasing).
pub fn reduce_to_rref(vectors: &mut Vec<SparseVec>) {
    let mut basis: Vec<SparseVec> = Vec::new();
    let work = std::mem::take(vectors);
    for mut v in work {
        // reduce against current basis
        for b in &basis {
            let pivot = b.0[0].0;
            if let Some(c) = v.get(pivot) {
                let factor = c.neg();
                v = v.add_scaled(b, &factor);
            }
        }
        if v.is_zero() {
            continue;
        }
        let lead = v.0[0].1.clone();
        let v = v.scale(&lead.inv().expect("leading entry nonzero"));
        let pivot = v.0[0].0;
        // back-substitute into the existing basis
        for b in basis.iter_mut() {
            if let Some(c) = b.get(pivot) {
                let factor = c.neg();
                *b = b.add_scaled(&v, &factor);
            }
        }
        basis.push(v);
        basis.sort_by_key(|b| b.0[0].0);
    }
    *vectors = basis;
}

/// A subspace of `k^n` given by a reduced-echelon basis.
#[derive(Debug, Clone)]
pub struct Subspace {
    pub ambient_dim: usize,
    pub field: Field,
    basis: Vec<SparseVec>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn from_vectors(ambient_dim: usize, field: Field, mut vectors: Vec<SparseVec>) -> Subspace {
        reduce_to_rref(&mut vectors);
        let pivots = vectors.iter().map(|v| v.0[0].0).collect();
        Subspace {
            ambient_dim,
            field,
            basis: vectors,
            pivots,
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[SparseVec] {
        &self.basis
    }

    pub fn basis_vector(&self, j: usize) -> &SparseVec {
        &self.basis[j]
    }

    /// Basis vectors as the columns of an inclusion matrix `k^dim -> k^n`.
    pub fn inclusion_matrix(&self) -> SparseMatrix {
        SparseMatrix::from_columns(self.ambient_dim, self.field, self.basis.clone())
            .expect("basis vectors live in the ambient space")
    }

    /// Reduce `v` by the basis; returns (coordinates, remainder).
    pub fn reduce(&self, v: &SparseVec) -> (SparseVec, SparseVec) {
        let mut coords = Vec::new();
        let mut rem = v.clone();
        for (j, b) in self.basis.iter().enumerate() {
            let pivot = self.pivots[j];
            if let Some(c) = rem.get(pivot) {
                let c = c.clone();
                rem = rem.add_scaled(b, &c.neg());
                coords.push((j, c));
            }
        }
        (SparseVec::from_entries(coords), rem)
    }

    pub fn contains(&self, v: &SparseVec) -> bool {
        self.reduce(v).1.is_zero()
    }

    /// Coordinates of `v` in the basis; `None` if `v` is not in the subspace.
    pub fn coordinates(&self, v: &SparseVec) -> Option<SparseVec> {
        let (coords, rem) = self.reduce(v);
        rem.is_zero().then_some(coords)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn dense_rank(m: &SparseMatrix) -> usize {
        // straightforward dense row-echelon elimination, no pivoting tricks
        let mut a: Vec<Vec<ExactScalar>> = (0..m.rows)
            .map(|r| (0..m.cols).map(|c| m.get(r, c)).collect())
            .collect();
        let mut rank = 0;
        let mut row = 0;
        for col in 0..m.cols {
            let Some(p) = (row..m.rows).find(|&r| !a[r][col].is_zero()) else {
                continue;
            };
            a.swap(row, p);
            let inv = a[row][col].inv().unwrap();
            for c in col..m.cols {
                a[row][c] = a[row][c].mul(&inv);
            }
            for r in 0..m.rows {
                if r != row && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    for c in col..m.cols {
                        let t = a[row][c].mul(&f);
                        a[r][c] = a[r][c].sub(&t);
                    }
                }
            }
            row += 1;
            rank += 1;
            if row == m.rows {
                break;
            }
        }
        rank
    }

    fn random_matrix(rows: usize, cols: usize, field: Field, seed: u64) -> SparseMatrix {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut entries = Vec::new();
        for r in 0..rows {
            for c in 0..cols {
                if rng.gen_bool(0.6) {
                    entries.push((r, c, field.integer(rng.gen_range(-4..5))));
                }
            }
        }
        SparseMatrix::from_entries(rows, cols, field, entries).unwrap()
    }

    #[test]
    fn rank_trivial_cases() {
        let z = SparseMatrix::zero(3, 3, Field::Rational);
        assert_eq!(z.rank(), 0);
        for n in 1..5 {
            assert_eq!(SparseMatrix::identity(n, Field::Rational).rank(), n);
        }
    }

    #[test]
    fn rank_matches_dense_oracle_f5() {
        let f = Field::prime(5).unwrap();
        for seed in 0..10 {
            let m = random_matrix(6, 6, f, seed);
            assert_eq!(m.rank(), dense_rank(&m), "seed {seed}");
        }
    }

    #[test]
    fn kernel_vectors_annihilate() {
        for seed in 0..8 {
            let m = random_matrix(5, 8, Field::Rational, 100 + seed);
            let ker = m.kernel_basis();
            assert_eq!(ker.len(), 8 - m.rank());
            for v in &ker {
                assert!(m.apply(v).is_zero());
            }
        }
    }

    #[test]
    fn kernel_of_identity_and_zero() {
        assert!(SparseMatrix::identity(4, Field::Rational)
            .kernel_basis()
            .is_empty());
        let z = SparseMatrix::zero(3, 4, Field::Rational);
        assert_eq!(z.kernel_basis().len(), 4);
    }

    #[test]
    fn tensor_of_identities() {
        let a = SparseMatrix::identity(2, Field::Rational);
        let b = SparseMatrix::identity(3, Field::Rational);
        assert!(a.tensor(&b).unwrap().is_identity());
    }

    #[test]
    fn tensor_on_basis_vectors() {
        let f = Field::Rational;
        let a = random_matrix(3, 2, f, 7);
        let b = random_matrix(2, 4, f, 8);
        let t = a.tensor(&b).unwrap();
        for i in 0..2 {
            for j in 0..4 {
                let e = SparseVec::unit(i * 4 + j, f);
                let lhs = t.apply(&e);
                let rhs = a
                    .apply(&SparseVec::unit(i, f))
                    .tensor(&b.apply(&SparseVec::unit(j, f)), 2);
                assert_eq!(lhs, SparseVec::from_entries(rhs.0));
            }
        }
    }

    #[test]
    fn tensor_rank_multiplicative() {
        for seed in 0..5 {
            let a = random_matrix(4, 3, Field::Rational, 20 + seed);
            let b = random_matrix(3, 4, Field::Rational, 40 + seed);
            let t = a.tensor(&b).unwrap();
            assert_eq!(t.rank(), dense_rank(&a) * dense_rank(&b));
        }
    }

    #[test]
    fn mixed_field_matrix_rejected() {
        let entries = vec![
            (0, 0, Field::Rational.one()),
            (1, 1, Field::Prime(5).one()),
        ];
        assert!(SparseMatrix::from_entries(2, 2, Field::Rational, entries).is_err());
        let a = SparseMatrix::identity(2, Field::Rational);
        let b = SparseMatrix::identity(2, Field::prime(5).unwrap());
        assert!(a.tensor(&b).is_err());
        assert!(a.mul(&b).is_err());
    }

    #[test]
    fn quotient_dimension_examples() {
        let f = Field::Rational;
        assert_eq!(quotient_dim(4, &[], f).unwrap(), 4);
        let full: Vec<SparseVec> = (0..3).map(|i| SparseVec::unit(i, f)).collect();
        assert_eq!(quotient_dim(3, &full, f).unwrap(), 0);
        let rel = SparseVec::from_entries(vec![(0, f.one()), (1, f.integer(-1))]);
        assert_eq!(quotient_dim(3, &[rel], f).unwrap(), 2);
        // dimension mismatch is rejected
        let bad = SparseVec::unit(5, f);
        assert!(quotient_dim(3, &[bad], f).is_err());
    }

    #[test]
    fn subspace_coordinates() {
        let f = Field::Rational;
        let v1 = SparseVec::from_entries(vec![(0, f.one()), (1, f.integer(-1))]);
        let sub = Subspace::from_vectors(3, f, vec![v1.clone()]);
        assert_eq!(sub.dim(), 1);
        assert!(sub.contains(&v1.scale(&f.integer(3))));
        assert!(!sub.contains(&SparseVec::unit(2, f)));
        assert_eq!(3 - sub.dim(), 2); // quotient dimension of spec example
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]

        #[test]
        fn rank_equals_transpose_rank(seed in 0u64..500, rows in 1usize..7, cols in 1usize..7) {
            let m = random_matrix(rows, cols, Field::Rational, seed);
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_nullity(seed in 0u64..500, rows in 1usize..7, cols in 1usize..7) {
            let m = random_matrix(rows, cols, Field::prime(7).unwrap(), seed);
            prop_assert_eq!(m.cols, m.rank() + m.kernel_basis().len());
        }
    }
}
