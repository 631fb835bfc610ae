//! Dense matrices over the Novikov field and their ranks.

use super::{CoeffError, Novikov};

/// Dense row-major matrix of Novikov elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NovMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Novikov>,
}

/// Rank together with a flag telling whether truncation could hide further pivots.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RankInfo {
    pub rank: usize,
    pub certified: bool,
}

impl NovMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        NovMatrix { rows, cols, data: vec![Novikov::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Novikov::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Novikov>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        NovMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Novikov {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Novikov) {
        self.data[r * self.cols + c] = v;
    }

    pub fn add_at(&mut self, r: usize, c: usize, v: &Novikov) {
        let i = r * self.cols + c;
        self.data[i] = self.data[i].add(v);
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Novikov)> {
        self.data.iter().enumerate().map(move |(i, v)| (i / self.cols, i % self.cols, v))
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(Novikov::is_exact)
    }

    /// True when every entry is the exact zero.
    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Novikov::is_zero)
    }

    /// True when no entry has a known term.
    pub fn is_zero_to_precision(&self) -> bool {
        self.data.iter().all(Novikov::is_zero_to_precision)
    }

    pub fn mul(&self, other: &NovMatrix) -> Result<NovMatrix, CoeffError> {
        if self.cols != other.rows {
            return Err(CoeffError::DimensionMismatch);
        }
        let mut out = NovMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_at(i, j, &a.mul(b));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &NovMatrix) -> Result<NovMatrix, CoeffError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(CoeffError::DimensionMismatch);
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect();
        Ok(NovMatrix { rows: self.rows, cols: self.cols, data })
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn block(a: &NovMatrix, b: &NovMatrix, c: &NovMatrix, d: &NovMatrix) -> Result<NovMatrix, CoeffError> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(CoeffError::DimensionMismatch);
        }
        let rows = a.rows + c.rows;
        let cols = a.cols + b.cols;
        let mut out = NovMatrix::zeros(rows, cols);
        for (src, r0, c0) in [(a, 0, 0), (b, 0, a.cols), (c, a.rows, 0), (d, a.rows, a.cols)] {
            for (i, j, v) in src.entries() {
                out.set(r0 + i, c0 + j, v.clone());
            }
        }
        Ok(out)
    }

    /// Sub-matrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> NovMatrix {
        let mut out = NovMatrix::zeros(rows.len(), cols.len());
        for (i, &r) in rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate() {
                out.set(i, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Replaces each entry by its parity at `T = 1`.
    pub fn specialize_at_one(&self) -> Vec<Vec<bool>> {
        (0..self.rows).map(|i| (0..self.cols).map(|j| self.get(i, j).specialize_at_one()).collect()).collect()
    }

    fn row_vec(&self, r: usize) -> Vec<Novikov> {
        self.data[r * self.cols..(r + 1) * self.cols].to_vec()
    }
}

/// Rank over the fraction field by fraction-free elimination; entries must be exact.
pub fn rank_over_lambda(m: &NovMatrix) -> Result<usize, CoeffError> {
    if !m.is_exact() {
        return Err(CoeffError::TruncatedEntry);
    }
    let mut a: Vec<Vec<Novikov>> = (0..m.rows).map(|r| m.row_vec(r)).collect();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = Novikov::one();
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        let pivot = a[rank][c].clone();
        for r in rank + 1..rows {
            let factor = a[r][c].clone();
            for j in c + 1..cols {
                let num = pivot.mul(&a[r][j]).add(&factor.mul(&a[rank][j]));
                a[r][j] = num.exact_div(&prev)?;
            }
            a[r][c] = Novikov::zero();
        }
        // Entries left of the pivot column in lower rows are zero; keep them consistent.
        prev = pivot;
        rank += 1;
    }
    Ok(rank)
}

/// Rank of a possibly truncated matrix by valuation-pivoted elimination.
///
/// `certified` is false when some residual entry is `O(T^n)` with no known term,
/// in which case the true rank may be larger.
pub fn rank_with_precision(m: &NovMatrix) -> RankInfo {
    if m.is_exact() {
        let rank = rank_over_lambda(m).expect("exact matrix");
        return RankInfo { rank, certified: true };
    }
    let mut a: Vec<Vec<Novikov>> = (0..m.rows).map(|r| m.row_vec(r)).collect();
    let mut live_rows: Vec<usize> = (0..m.rows).collect();
    let mut live_cols: Vec<usize> = (0..m.cols).collect();
    let mut rank = 0;
    loop {
        let mut best: Option<(usize, usize)> = None;
        for &r in &live_rows {
            for &c in &live_cols {
                if let Some(v) = a[r][c].valuation() {
                    let better = match best {
                        None => true,
                        Some((br, bc)) => v < a[br][bc].valuation().expect("pivot has a term"),
                    };
                    if better {
                        best = Some((r, c));
                    }
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        let pivot = a[pr][pc].clone();
        for &r in &live_rows {
            if r == pr {
                continue;
            }
            let factor = a[r][pc].clone();
            if factor.is_zero() {
                continue;
            }
            for &c in &live_cols {
                a[r][c] = pivot.mul(&a[r][c]).add(&factor.mul(&a[pr][c]));
            }
        }
        live_rows.retain(|&r| r != pr);
        live_cols.retain(|&c| c != pc);
        rank += 1;
    }
    let certified = live_rows.iter().all(|&r| live_cols.iter().all(|&c| a[r][c].is_zero()));
    RankInfo { rank, certified }
}
