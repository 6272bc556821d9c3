//! Shared fixtures for unit tests.

use crate::bits::BitVector;
use crate::peg::{peg_construct, PegConfig};
use crate::sparse::{LdpcCode, SparseParityCheck};
use rand::prelude::*;

/// Random sparse matrix with column weight `wc` (or `r` if smaller).
pub(crate) fn random_matrix(
    n: usize,
    r: usize,
    wc: usize,
    rng: &mut impl Rng,
) -> SparseParityCheck {
    let mut rows = vec![Vec::new(); r];
    for col in 0..n {
        let mut picks: Vec<u32> = (0..r as u32).collect();
        picks.shuffle(rng);
        for &j in picks.iter().take(wc.min(r)) {
            rows[j as usize].push(col as u32);
        }
    }
    SparseParityCheck::from_rows(n, rows).unwrap()
}

/// Random lower-triangular code: forced diagonal plus `extra` edges below it
/// per row.
pub(crate) fn random_triangular_code(
    n: usize,
    r: usize,
    extra: usize,
    rng: &mut impl Rng,
) -> LdpcCode {
    let k = n - r;
    let mut rows: Vec<Vec<u32>> = (0..r).map(|j| vec![(k + j) as u32]).collect();
    for (j, row) in rows.iter_mut().enumerate() {
        let avail: Vec<u32> = (0..(k + j) as u32).collect();
        for &c in avail.choose_multiple(rng, extra.min(avail.len())) {
            row.push(c);
        }
    }
    LdpcCode::new_triangular(SparseParityCheck::from_rows(n, rows).unwrap()).unwrap()
}

/// A mid-size triangular PEG code for decoder and protocol tests.
pub(crate) fn small_peg_code() -> LdpcCode {
    peg_construct(&PegConfig {
        n: 240,
        r: 200,
        dv: 3,
        lower_triangular: true,
        seed: 1,
    })
    .unwrap()
}

/// Standard (7,4) Hamming parity check: column `i` holds the binary
/// expansion of `i + 1`, row 0 being the least significant bit.
pub(crate) fn hamming74() -> LdpcCode {
    let mut rows = vec![Vec::new(); 3];
    for col in 0u32..7 {
        let v = col + 1;
        for (bit, row) in rows.iter_mut().enumerate() {
            if v & (1 << bit) != 0 {
                row.push(col);
            }
        }
    }
    LdpcCode::new(SparseParityCheck::from_rows(7, rows).unwrap())
}

/// Random error pattern with independent per-bit flip probability.
pub(crate) fn random_error(n: usize, p: f64, rng: &mut impl Rng) -> BitVector {
    let mut e = BitVector::zeros(n);
    for i in 0..n {
        if rng.gen_bool(p) {
            e.set(i, true);
        }
    }
    e
}
