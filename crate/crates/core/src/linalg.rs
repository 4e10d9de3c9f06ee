//! Row reduction over the prime field GF(p).

use alloc::vec::Vec;

/// Rank of a list of vectors over GF(p). The vectors are consumed.
pub fn rank(mut rows: Vec<Vec<u32>>, p: u32) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..width {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    let sub = (f as u64 * y as u64 % p as u64) as u32;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

/// Incrementally maintained row-echelon basis, used to test independence
/// one vector at a time.
#[derive(Clone, Debug)]
pub struct Echelon {
    p: u32,
    rows: Vec<(usize, Vec<u32>)>,
}

impl Echelon {
    pub fn new(p: u32) -> Self {
        Self { p, rows: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn reduce(&self, mut v: Vec<u32>) -> Vec<u32> {
        let p = self.p;
        for (col, row) in &self.rows {
            let f = v[*col];
            if f != 0 {
                for (x, r) in v.iter_mut().zip(row) {
                    let sub = (f as u64 * *r as u64 % p as u64) as u32;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        v
    }

    /// Whether `v` lies in the span of the vectors inserted so far.
    pub fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    /// Insert `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: Vec<u32>) -> bool {
        let p = self.p;
        let mut v = self.reduce(v);
        let Some(col) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(v[col], p);
        for x in v.iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[col];
            if f != 0 {
                for (x, r) in row.iter_mut().zip(&v) {
                    let sub = (f as u64 * *r as u64 % p as u64) as u32;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        self.rows.push((col, v));
        true
    }
}

/// Coefficients `λ` with `Σ λ_j cols[j] = target` over GF(p), if any.
pub fn solve(cols: &[Vec<u32>], target: &[u32], p: u32) -> Option<Vec<u32>> {
    let (h, w) = (target.len(), cols.len());
    // Augmented rows: one per coordinate.
    let mut rows: Vec<Vec<u32>> =
        (0..h).map(|r| cols.iter().map(|c| c[r]).chain(core::iter::once(target[r])).collect()).collect();
    let mut pivots = Vec::new();
    let mut rank = 0;
    for col in 0..w {
        let Some(pivot) = (rank..h).find(|&r| rows[r][col] != 0) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = inv_mod(rows[rank][col], p);
        for x in rows[rank].iter_mut() {
            *x = (*x as u64 * inv as u64 % p as u64) as u32;
        }
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row[col] != 0 {
                let f = row[col];
                for (x, &y) in row.iter_mut().zip(&pivot_row).skip(col) {
                    let sub = (f as u64 * y as u64 % p as u64) as u32;
                    *x = (*x + p - sub) % p;
                }
            }
        }
        pivots.push(col);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| r[w] != 0) {
        return None;
    }
    let mut out = alloc::vec![0; w];
    for (r, &col) in pivots.iter().enumerate() {
        out[col] = rows[r][w];
    }
    Some(out)
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    pow_mod(a, p - 2, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u32, p: u32) -> u32 {
    let (mut base, mut acc) = (a as u64 % p as u64, 1u64);
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    acc as u32
}
