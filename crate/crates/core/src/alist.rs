//! The alist text format for sparse parity-check matrices.
//!
//! Layout (all indices 1-based, entries space-separated):
//!
//! ```text
//! n r
//! max_col_weight max_row_weight
//! <n column weights>
//! <r row weights>
//! <n lines: row indices per column, zero-padded to max_col_weight>
//! <r lines: column indices per row, zero-padded to max_row_weight>
//! ```

use crate::error::{Error, Result};
use crate::sparse::SparseParityCheck;

/// Serializes a matrix to alist text (trailing newline included).
pub fn alist_write(h: &SparseParityCheck) -> String {
    let n = h.n();
    let r = h.r();
    let wc = h.max_col_weight();
    let wr = h.max_row_weight();
    let mut out = String::new();
    out.push_str(&format!("{} {}\n", n, r));
    out.push_str(&format!("{} {}\n", wc, wr));
    let col_weights: Vec<String> = (0..n).map(|i| h.col_weight(i).to_string()).collect();
    out.push_str(&col_weights.join(" "));
    out.push('\n');
    let row_weights: Vec<String> = (0..r).map(|j| h.row_weight(j).to_string()).collect();
    out.push_str(&row_weights.join(" "));
    out.push('\n');
    for i in 0..n {
        let mut entries: Vec<String> = h.col(i).iter().map(|&j| (j + 1).to_string()).collect();
        entries.resize(wc, "0".to_string());
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    for j in 0..r {
        let mut entries: Vec<String> = h.row(j).iter().map(|&c| (c + 1).to_string()).collect();
        entries.resize(wr, "0".to_string());
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out
}

/// Parses alist text, checking that the row and column sections agree.
///
/// Lines are positional; a zero-weight section produces an empty line.
pub fn alist_read(text: &str) -> Result<SparseParityCheck> {
    let mut lines = text.lines();
    let mut next_line = |what: &str| -> Result<Vec<usize>> {
        let line = lines
            .next()
            .ok_or_else(|| Error::AlistParse(format!("missing {what} line")))?;
        line.split_whitespace()
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::AlistParse(format!("bad integer {t:?} in {what} line")))
            })
            .collect()
    };

    let header = next_line("size")?;
    if header.len() != 2 {
        return Err(Error::AlistParse("size line must hold n and r".into()));
    }
    let (n, r) = (header[0], header[1]);
    if r >= n || n == 0 {
        return Err(Error::AlistParse(format!("invalid dimensions n={n}, r={r}")));
    }
    let maxw = next_line("max-weight")?;
    if maxw.len() != 2 {
        return Err(Error::AlistParse("max-weight line must hold two values".into()));
    }
    let (wc, wr) = (maxw[0], maxw[1]);

    let col_weights = next_line("column-weight")?;
    if col_weights.len() != n {
        return Err(Error::AlistParse(format!(
            "expected {n} column weights, got {}",
            col_weights.len()
        )));
    }
    let row_weights = next_line("row-weight")?;
    if row_weights.len() != r {
        return Err(Error::AlistParse(format!(
            "expected {r} row weights, got {}",
            row_weights.len()
        )));
    }

    let mut cols: Vec<Vec<u32>> = Vec::with_capacity(n);
    for (i, &declared) in col_weights.iter().enumerate() {
        let entries = next_line("column adjacency")?;
        if entries.len() != wc {
            return Err(Error::AlistParse(format!(
                "column {i}: expected {wc} entries, got {}",
                entries.len()
            )));
        }
        let mut adj = Vec::new();
        for &e in &entries {
            if e == 0 {
                continue;
            }
            if e > r {
                return Err(Error::AlistParse(format!(
                    "column {i}: row index {e} out of range"
                )));
            }
            adj.push((e - 1) as u32);
        }
        if adj.len() != declared {
            return Err(Error::AlistParse(format!(
                "column {i}: weight {} disagrees with declared {declared}",
                adj.len()
            )));
        }
        adj.sort_unstable();
        cols.push(adj);
    }

    let mut rows: Vec<Vec<u32>> = Vec::with_capacity(r);
    for (j, &declared) in row_weights.iter().enumerate() {
        let entries = next_line("row adjacency")?;
        if entries.len() != wr {
            return Err(Error::AlistParse(format!(
                "row {j}: expected {wr} entries, got {}",
                entries.len()
            )));
        }
        let mut adj = Vec::new();
        for &e in &entries {
            if e == 0 {
                continue;
            }
            if e > n {
                return Err(Error::AlistParse(format!(
                    "row {j}: column index {e} out of range"
                )));
            }
            adj.push((e - 1) as u32);
        }
        if adj.len() != declared {
            return Err(Error::AlistParse(format!(
                "row {j}: weight {} disagrees with declared {declared}",
                adj.len()
            )));
        }
        adj.sort_unstable();
        rows.push(adj);
    }

    let h = SparseParityCheck::from_rows(n, rows)?;
    for (i, col) in cols.iter().enumerate() {
        if h.col(i) != col.as_slice() {
            return Err(Error::AlistParse(format!(
                "column section disagrees with row section at column {i}"
            )));
        }
    }
    Ok(h)
}
