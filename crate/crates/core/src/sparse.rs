//! Sparse parity-check matrices and LDPC codes over GF(2).

use crate::bits::BitVector;
use crate::error::{Error, Result};
use sha2::{Digest, Sha256};

/// An `r x n` sparse binary matrix stored by row and column adjacency.
///
/// Both adjacency lists are kept sorted so that iteration order, and hence
/// decoder tie-breaking, is deterministic. The two lists always describe the
/// same edge set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SparseParityCheck {
    n: usize,
    r: usize,
    rows: Vec<Vec<u32>>,
    cols: Vec<Vec<u32>>,
}

impl SparseParityCheck {
    /// Builds a matrix from per-row column indices.
    ///
    /// Validates `r < n`, index ranges and the no-duplicate-edge rule.
    pub fn from_rows(n: usize, row_cols: Vec<Vec<u32>>) -> Result<Self> {
        let r = row_cols.len();
        if r >= n {
            return Err(Error::InvalidMatrix(format!(
                "need r < n, got r={r}, n={n}"
            )));
        }
        let mut rows = row_cols;
        let mut cols: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (j, row) in rows.iter_mut().enumerate() {
            row.sort_unstable();
            if row.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidMatrix(format!("duplicate edge in row {j}")));
            }
            if let Some(&last) = row.last() {
                if last as usize >= n {
                    return Err(Error::InvalidMatrix(format!(
                        "column index {last} out of range in row {j}"
                    )));
                }
            }
            for &c in row.iter() {
                cols[c as usize].push(j as u32);
            }
        }
        Ok(SparseParityCheck { n, r, rows, cols })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// Sorted column indices of row `j`.
    pub fn row(&self, j: usize) -> &[u32] {
        &self.rows[j]
    }

    /// Sorted row indices of column `i`.
    pub fn col(&self, i: usize) -> &[u32] {
        &self.cols[i]
    }

    pub fn row_weight(&self, j: usize) -> usize {
        self.rows[j].len()
    }

    pub fn col_weight(&self, i: usize) -> usize {
        self.cols[i].len()
    }

    pub fn max_row_weight(&self) -> usize {
        self.rows.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_col_weight(&self) -> usize {
        self.cols.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Total number of ones.
    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Computes `H x` over GF(2); the result has one bit per row.
    pub fn syndrome(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.n {
            return Err(Error::LengthMismatch {
                expected: self.n,
                got: x.len(),
            });
        }
        let mut s = BitVector::zeros(self.r);
        for (j, row) in self.rows.iter().enumerate() {
            let mut parity = false;
            for &c in row {
                parity ^= x.get(c as usize);
            }
            if parity {
                s.set(j, true);
            }
        }
        Ok(s)
    }
}

/// A parity-check matrix plus the structural metadata the schemes rely on.
///
/// `triangular` marks that the rightmost `r x r` block is lower triangular
/// (row `j`'s last entry sits in column `k + j`), which enables systematic
/// encoding by back-substitution. `permutation`, when present, maps internal
/// column `j` to external coordinate `permutation[j]`; all operations accept
/// and produce externally-ordered vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdpcCode {
    h: SparseParityCheck,
    triangular: bool,
    permutation: Option<Vec<u32>>,
}

impl LdpcCode {
    /// Wraps a matrix with no structural claims.
    pub fn new(h: SparseParityCheck) -> Self {
        LdpcCode {
            h,
            triangular: false,
            permutation: None,
        }
    }

    /// Wraps a matrix whose right `r x r` block is lower triangular.
    ///
    /// Checks that each row `j` ends exactly at column `k + j`.
    pub fn new_triangular(h: SparseParityCheck) -> Result<Self> {
        let k = h.n() - h.r();
        for j in 0..h.r() {
            match h.row(j).last() {
                Some(&last) if last as usize == k + j => {}
                _ => {
                    return Err(Error::InvalidMatrix(format!(
                        "row {j} does not end at the diagonal column {}",
                        k + j
                    )))
                }
            }
        }
        Ok(LdpcCode {
            h,
            triangular: true,
            permutation: None,
        })
    }

    /// Attaches a column permutation: internal column `j` corresponds to
    /// external coordinate `permutation[j]`.
    pub fn with_permutation(mut self, permutation: Vec<u32>) -> Result<Self> {
        if permutation.len() != self.h.n() {
            return Err(Error::LengthMismatch {
                expected: self.h.n(),
                got: permutation.len(),
            });
        }
        let mut seen = vec![false; permutation.len()];
        for &p in &permutation {
            let p = p as usize;
            if p >= seen.len() || seen[p] {
                return Err(Error::InvalidParameter(
                    "permutation is not a bijection".into(),
                ));
            }
            seen[p] = true;
        }
        self.permutation = Some(permutation);
        Ok(self)
    }

    pub fn h(&self) -> &SparseParityCheck {
        &self.h
    }

    pub fn n(&self) -> usize {
        self.h.n()
    }

    pub fn r(&self) -> usize {
        self.h.r()
    }

    pub fn k(&self) -> usize {
        self.h.n() - self.h.r()
    }

    pub fn is_triangular(&self) -> bool {
        self.triangular
    }

    pub fn permutation(&self) -> Option<&[u32]> {
        self.permutation.as_deref()
    }

    /// Reorders an external vector into internal column order.
    pub(crate) fn internalize(&self, x: &BitVector) -> BitVector {
        match &self.permutation {
            None => x.clone(),
            Some(perm) => {
                let mut out = BitVector::zeros(x.len());
                for (j, &p) in perm.iter().enumerate() {
                    if x.get(p as usize) {
                        out.set(j, true);
                    }
                }
                out
            }
        }
    }

    /// Reorders an internal vector back to external coordinates.
    pub(crate) fn externalize(&self, x: &BitVector) -> BitVector {
        match &self.permutation {
            None => x.clone(),
            Some(perm) => {
                let mut out = BitVector::zeros(x.len());
                for (j, &p) in perm.iter().enumerate() {
                    if x.get(j) {
                        out.set(p as usize, true);
                    }
                }
                out
            }
        }
    }

    /// Syndrome of an externally-ordered vector.
    pub fn syndrome(&self, x: &BitVector) -> Result<BitVector> {
        if x.len() != self.n() {
            return Err(Error::LengthMismatch {
                expected: self.n(),
                got: x.len(),
            });
        }
        self.h.syndrome(&self.internalize(x))
    }

    /// Content-derived identifier, stable across runs and platforms.
    pub fn content_id(&self) -> String {
        let mut hasher = Sha256::new();
        hasher.update(crate::alist::alist_write(&self.h).as_bytes());
        hasher.update([self.triangular as u8]);
        if let Some(perm) = &self.permutation {
            for &p in perm {
                hasher.update(p.to_be_bytes());
            }
        }
        hex::encode(&hasher.finalize()[..8])
    }
}

/// Systematic encoding over a lower-triangular code.
///
/// The internal codeword carries `info` in its first `k` positions; each
/// parity bit is the XOR of the earlier entries of its row, solved in row
/// order. The returned codeword is externally ordered and always satisfies
/// `H c = 0`.
pub fn encode_systematic(code: &LdpcCode, info: &BitVector) -> Result<BitVector> {
    if !code.is_triangular() {
        return Err(Error::NotTriangular);
    }
    let k = code.k();
    if info.len() != k {
        return Err(Error::LengthMismatch {
            expected: k,
            got: info.len(),
        });
    }
    let mut c = BitVector::zeros(code.n());
    for i in 0..k {
        if info.get(i) {
            c.set(i, true);
        }
    }
    for j in 0..code.r() {
        let row = code.h().row(j);
        let mut parity = false;
        // last entry of the row is the diagonal column k + j
        for &col in &row[..row.len() - 1] {
            parity ^= c.get(col as usize);
        }
        if parity {
            c.set(k + j, true);
        }
    }
    Ok(code.externalize(&c))
}
